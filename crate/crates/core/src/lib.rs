//! Reader-aware compressive multi-document summarization.

pub mod assembler;
pub mod baseline;
pub mod corpus;
pub mod expressiveness;
pub mod mentions;
pub mod optimizer;
pub mod pipeline;
pub mod rouge;
pub mod salience;
pub mod text;
pub mod treebank;
