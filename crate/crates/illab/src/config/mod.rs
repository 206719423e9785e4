//! Configuration surfaces: the ε-expression grammar for point families
//! and the sectioned config-file format.

mod expr;
mod file;

pub use expr::{parse_expr, Expr};
pub use file::{scenario_from_config, ConfigDoc, Section};
