//! Burmeister `.cxt` context files.
//!
//! ```text
//! B
//! <optional name>
//! m
//! k
//!
//! object names (m lines)
//! attribute names (k lines)
//! m rows of k characters, `X` or `x` for incidence, `.` otherwise
//! ```

use crate::context::FormalContext;
use crate::error::{Error, Result};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn read_cxt(text: &str) -> Result<FormalContext> {
    let lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();
    let mut pos = 0;
    let line_no = |p: usize| p + 1;

    if lines.first().map(|l| l.trim()) != Some("B") {
        return Err(parse_err(1, 1, "expected header line `B`"));
    }
    pos += 1;

    let skip_blank = |pos: &mut usize| {
        while *pos < lines.len() && lines[*pos].trim().is_empty() {
            *pos += 1;
        }
    };

    // Optional name line: the first nonblank line that is not a number.
    skip_blank(&mut pos);
    if pos < lines.len() && lines[pos].trim().parse::<usize>().is_err() {
        pos += 1;
        skip_blank(&mut pos);
    }
    let read_count = |pos: &mut usize, what: &str| -> Result<usize> {
        skip_blank(pos);
        let Some(l) = lines.get(*pos) else {
            return Err(parse_err(line_no(*pos), 1, format!("missing {what}")));
        };
        let v = l.trim().parse::<usize>().map_err(|_| {
            parse_err(
                line_no(*pos),
                1,
                format!("{what} is not a nonnegative integer: {l:?}"),
            )
        })?;
        *pos += 1;
        Ok(v)
    };
    let m = read_count(&mut pos, "object count")?;
    let k = read_count(&mut pos, "attribute count")?;
    skip_blank(&mut pos);

    let take_names = |pos: &mut usize, count: usize, what: &str| -> Result<Vec<String>> {
        let mut names = Vec::with_capacity(count);
        for _ in 0..count {
            let Some(l) = lines.get(*pos) else {
                return Err(parse_err(line_no(*pos), 1, format!("missing {what} name")));
            };
            names.push(l.trim().to_string());
            *pos += 1;
        }
        Ok(names)
    };
    let objects = take_names(&mut pos, m, "object")?;
    let attributes = take_names(&mut pos, k, "attribute")?;

    let mut incidence = Vec::with_capacity(m);
    for r in 0..m {
        let Some(l) = lines.get(pos) else {
            return Err(parse_err(
                line_no(pos),
                1,
                format!("missing incidence row {}", r + 1),
            ));
        };
        let l = l.trim();
        let mut row = Vec::with_capacity(k);
        for (c, ch) in l.chars().enumerate() {
            match ch {
                'X' | 'x' => row.push(true),
                '.' => row.push(false),
                other => {
                    return Err(parse_err(
                        line_no(pos),
                        c + 1,
                        format!("unexpected character {other:?}"),
                    ))
                }
            }
        }
        if row.len() != k {
            return Err(parse_err(
                line_no(pos),
                row.len() + 1,
                format!("row has {} entries, expected {k}", row.len()),
            ));
        }
        incidence.push(row);
        pos += 1;
    }
    if let Some(extra) = lines[pos..].iter().position(|l| !l.trim().is_empty()) {
        return Err(parse_err(
            line_no(pos + extra),
            1,
            "trailing content after incidence rows",
        ));
    }
    FormalContext::new(objects, attributes, incidence)
}

pub fn write_cxt(c: &FormalContext) -> String {
    let mut out = format!("B\n\n{}\n{}\n\n", c.num_objects(), c.num_attributes());
    for name in c.objects.iter().chain(&c.attributes) {
        out.push_str(name);
        out.push('\n');
    }
    for row in c.incidence() {
        out.extend(row.iter().map(|&b| if b { 'X' } else { '.' }));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "B\n\n2\n3\n\nduck\nfrog\nflies\nswims\nlegs\nXXX\n.XX\n";

    #[test]
    fn reads_sample() {
        let c = read_cxt(SAMPLE).unwrap();
        assert_eq!(c.objects, vec!["duck", "frog"]);
        assert_eq!(c.attributes, vec!["flies", "swims", "legs"]);
        assert!(c.incident(0, 0) && !c.incident(1, 0) && c.incident(1, 2));
    }

    #[test]
    fn round_trip() {
        let c = read_cxt(SAMPLE).unwrap();
        assert_eq!(read_cxt(&write_cxt(&c)).unwrap(), c);
        assert_eq!(write_cxt(&c), SAMPLE);
    }

    #[test]
    fn accepts_name_line() {
        let c = read_cxt("B\nanimals\n1\n1\n\na\nb\nX\n").unwrap();
        assert!(c.incident(0, 0));
    }

    #[test]
    fn reports_positions() {
        let err = read_cxt("B\n\n1\n2\n\na\nb\nc\nX?\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 9,
                column: 2,
                message: "unexpected character '?'".into()
            }
        );
        let err = read_cxt("Q\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = read_cxt("B\n\n1\n2\n\na\nb\nc\nX\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 9,
                column: 2,
                ..
            }
        ));
        let err = read_cxt("B\n\n2\n1\n\na\nb\nc\nX\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 10, .. }));
    }
}
