//! Small finite orders given by an explicit `≤` table: covering relation,
//! bounds, completeness test, isomorphism search and DOT emission.

use std::fmt::Write as _;

/// A finite order presented by its `≤` table. No axioms are enforced here;
/// callers construct it from data that is already known to be a partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderTable {
    leq: Vec<Vec<bool>>,
}

impl OrderTable {
    pub fn new(leq: Vec<Vec<bool>>) -> Self {
        OrderTable { leq }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        OrderTable {
            leq: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Pairs `(i, j)` with `i < j` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let between = (0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]);
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Least upper bound of `items` if one exists (the bottom for an empty slice).
    pub fn join(&self, items: &[usize]) -> Option<usize> {
        let ub: Vec<usize> = (0..self.len())
            .filter(|&u| items.iter().all(|&x| self.leq[x][u]))
            .collect();
        ub.iter()
            .copied()
            .find(|&u| ub.iter().all(|&v| self.leq[u][v]))
    }

    /// Greatest lower bound of `items` if one exists (the top for an empty slice).
    pub fn meet(&self, items: &[usize]) -> Option<usize> {
        let lb: Vec<usize> = (0..self.len())
            .filter(|&l| items.iter().all(|&x| self.leq[l][x]))
            .collect();
        lb.iter()
            .copied()
            .find(|&l| lb.iter().all(|&v| self.leq[v][l]))
    }

    /// A finite order is a complete lattice iff it is nonempty, bounded and
    /// every pair has a join and a meet.
    pub fn is_complete_lattice(&self) -> bool {
        let n = self.len();
        if n == 0 || self.join(&[]).is_none() || self.meet(&[]).is_none() {
            return false;
        }
        (0..n).all(|i| (i..n).all(|j| self.join(&[i, j]).is_some() && self.meet(&[i, j]).is_some()))
    }

    /// An order isomorphism `self → other`, if one exists.
    pub fn isomorphism(&self, other: &OrderTable) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig = |t: &OrderTable, i: usize| {
            let down = (0..n).filter(|&k| t.leq[k][i]).count();
            let up = (0..n).filter(|&k| t.leq[i][k]).count();
            (down, up)
        };
        let sa: Vec<_> = (0..n).map(|i| sig(self, i)).collect();
        let sb: Vec<_> = (0..n).map(|i| sig(other, i)).collect();
        let (mut ca, mut cb) = (sa.clone(), sb.clone());
        ca.sort();
        cb.sort();
        if ca != cb {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_iso(other, &sa, &sb, 0, &mut map, &mut used)
            .then_some(map)
    }

    fn extend_iso(
        &self,
        other: &OrderTable,
        sa: &[(usize, usize)],
        sb: &[(usize, usize)],
        i: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = self.len();
        if i == n {
            return true;
        }
        for c in 0..n {
            if used[c] || sa[i] != sb[c] {
                continue;
            }
            let consistent = (0..i).all(|k| {
                self.leq[k][i] == other.leq[map[k]][c] && self.leq[i][k] == other.leq[c][map[k]]
            });
            if !consistent {
                continue;
            }
            map[i] = c;
            used[c] = true;
            if self.extend_iso(other, sa, sb, i + 1, map, used) {
                return true;
            }
            used[c] = false;
        }
        map[i] = usize::MAX;
        false
    }

    /// Hasse diagram in DOT, one node per element, edges along covers.
    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {name} {{");
        let _ = writeln!(out, "  rankdir=BT;");
        for i in 0..self.len() {
            let label = labels.get(i).cloned().unwrap_or_else(|| i.to_string());
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for (i, j) in self.covers() {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> OrderTable {
        OrderTable::from_fn(n, |i, j| i <= j)
    }

    #[test]
    fn chain_covers_and_bounds() {
        let c = chain(3);
        assert_eq!(c.covers(), vec![(0, 1), (1, 2)]);
        assert_eq!(c.join(&[0, 2]), Some(2));
        assert_eq!(c.meet(&[]), Some(2));
        assert!(c.is_complete_lattice());
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let a = OrderTable::from_fn(2, |i, j| i == j);
        assert!(!a.is_complete_lattice());
        assert_eq!(a.join(&[0, 1]), None);
    }

    #[test]
    fn iso_search() {
        let diamond = OrderTable::from_fn(4, |i, j| i == j || i == 0 || j == 3);
        let relabeled = OrderTable::from_fn(4, |i, j| i == j || i == 3 || j == 0);
        let iso = diamond.isomorphism(&relabeled).unwrap();
        assert_eq!(iso[0], 3);
        assert_eq!(iso[3], 0);
        assert!(diamond.isomorphism(&chain(4)).is_none());
    }

    #[test]
    fn dot_has_cover_edges() {
        let dot = chain(2).to_dot("L", &[]);
        assert!(dot.contains("n0 -> n1;"));
    }
}
