pub mod bench;
pub mod generate;
pub mod measure;
pub mod pairwise;
pub mod sweep;
