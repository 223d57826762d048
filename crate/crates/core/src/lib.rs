pub mod arith;
pub mod enumerate;
pub mod equality;
pub mod forcing;
pub mod formula;
pub mod names;
pub mod pca;
pub mod realize;
pub mod realizers;
pub mod syntax;
pub mod tri;
pub mod types;

pub use tri::{Reason, TriState};
