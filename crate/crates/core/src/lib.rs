//! Code smell detection, refactoring sequencing and package restructuring
//! for a Java-like source subset.

pub mod code_model;
pub mod metrics;
pub mod smells;
pub mod ordering;
pub mod planner;
pub mod remod;
pub mod cli;
