pub mod catalog;
pub mod cli;
pub mod dmsa;
pub mod liealg;
pub mod matkernel;
pub mod ncpoly;
pub mod par;
pub mod repfile;
pub mod repgraph;
pub mod unitary;
