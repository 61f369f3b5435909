pub mod dp;
pub mod error;
pub mod formats;
pub mod generators;
pub mod graph;
pub mod intermezzo;
pub mod order;
pub mod ordering;
pub mod recognition;
pub mod reductions;
pub mod symbols;
