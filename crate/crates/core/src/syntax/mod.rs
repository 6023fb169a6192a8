//! Text format for programs (`.inet` files) and configurations.

mod lexer;
mod parser;
mod render;

pub use parser::{parse_configuration, parse_program, Declaration, Program};
pub use render::{
    render_configuration, render_configuration_with, render_equation_with, render_program, render_rule, render_rules,
    render_term, render_term_with, render_trace, NameTable, TraceFormat,
};
