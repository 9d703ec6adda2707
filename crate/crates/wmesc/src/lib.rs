//! Text formats, benchmark harness and command-line front end for
//! [`wmesc_core`].

pub mod bench;
pub mod format;

pub use format::{
    format_outcome, format_packing, format_weight, parse_instance, parse_packing, serialize_instance,
    serialize_packing, ParseError, ParseErrorKind,
};
