pub mod dot;
pub mod graph6;

pub use dot::emit_dot;
pub use graph6::{emit_graph6, emit_graph6_string, parse_graph6, Graph6Error};
