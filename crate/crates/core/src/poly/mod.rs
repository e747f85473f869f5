//! Exact univariate polynomials over the rationals, polynomial matrices,
//! Smith forms and real-root isolation.

mod polymat;
mod polynomial;
pub mod roots;
mod smith;

pub use polymat::{polymat_det, PolyMatrix};
pub use polynomial::Polynomial;
pub use roots::{real_roots, RealRoot, RootLocation};
pub use smith::{smith_form, SmithForm};
