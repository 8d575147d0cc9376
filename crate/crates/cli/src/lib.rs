//! `zprimdec`: read an ideal description file, run one command, print
//! text or JSON.

pub mod file;
mod run;

pub use file::{parse, Domain, IdealFile, NamedIdeal, ParseError};
pub use run::{execute, main_with, Args, CliError, Command};
