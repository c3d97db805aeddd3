//! Alexander-polynomial obstructions to component-preserving amphicheirality
//! of algebraically split links.

pub mod families;
pub mod index_set;
pub mod laurent;
pub mod linkdata;
pub mod obstruction;
pub mod report;

pub use index_set::IndexSet;
