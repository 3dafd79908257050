//! Finite Set-valued category theory: categories, presheaves, profunctors,
//! Kan extensions, the induced monads and their algebras, and extensions.

pub mod algebra;
pub mod category;
pub mod diagram;
pub mod extension;
pub mod kan;
pub mod monad;
pub mod natural;
pub mod present;
pub mod presheaf;
pub mod profunctor;
pub mod yoneda;

pub use algebra::Algebra;
pub use category::FinCategory;
pub use diagram::{diagram_postsheaf, diagram_presheaf, liminf_cat, limsup_cat, FinFunctor};
pub use extension::{ExtensionMatrix, LooseReading, TightReading};
pub use kan::{phi_lower, phi_upper, Ctx, Extension};
pub use monad::{Level, PresheafMonad, Side};
pub use natural::{Budget, NatTrans};
pub use presheaf::{Postsheaf, Presheaf};
pub use profunctor::Profunctor;
pub use yoneda::{matrix_yoneda_check, YonedaReport};
