//! File formats, threads and the command line around [`licrit_core`].

pub mod cli;
pub mod descriptor;
pub mod output;
pub mod threads;
pub mod zerofile;

pub use licrit_core;
