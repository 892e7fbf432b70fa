//! Script language and runner for `nomrel`.

pub mod ast;
pub mod parse;
pub mod report;
pub mod run;

pub use parse::{parse, SyntaxError};
pub use report::{Outcome, Report};
pub use run::{run_text, Runner};
