//! Tangle expressions: syntax, typing, and the arc diagrams used to count
//! colorings directly.

mod ast;
pub mod catalog;
mod coloring;
mod diagram;
mod parser;
mod presentation;

pub use ast::{ArityError, ExprKind, Generator, TangleExpr};
pub use coloring::{
    count_colorings, enumerate_colorings, enumerate_colorings_with_budget, Coloring, ColoringError,
    DEFAULT_BUDGET,
};
pub use diagram::{compile_diagram, ArcDiagram, ArcId, Crossing, Sign};
pub use parser::{parse, ParseError};
pub use presentation::{extract_presentation, QuandlePresentation};
