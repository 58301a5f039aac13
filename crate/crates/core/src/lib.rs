//! Computational group theory for the Galois cover of a degenerated surface.
pub mod assets;
pub mod graph;
pub mod kstar;
pub mod presentation;
pub mod report;
pub mod semi;
pub mod verify;
pub mod word;
pub mod zmodule;
