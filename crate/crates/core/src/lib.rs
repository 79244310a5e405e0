//! Exact computations in concrete pre-abelian categories.

pub mod category;
pub mod instances;
pub mod linalg;
pub mod oracle;
pub mod checker;
pub mod exact;
pub mod seqspace;
pub mod corpus;
pub mod fixtures;
