pub mod rings;
pub mod diagram;
pub mod skein;
pub mod characters;
pub mod poisson;
pub mod invariants;
pub mod format;
