//! Text formats: group specifications and JSON cube documents.
//!
//! Group grammar, whitespace-insensitive:
//!
//! ```text
//! spec    := "perm" INT ":" perm ("," perm)* | "table" ":" row (";" row)* | expr
//! expr    := factor ("x" factor)*          left-associative direct product
//! factor  := atom ("^" INT)?
//! atom    := NAME INT? | "(" expr ")"      library lookup, case-insensitive
//! perm    := cycle+                        cycles compose right to left
//! cycle   := "(" INT* ")"
//! ```
//!
//! `Z 4`, `z4` and `C4` all name the cyclic group of order 4.

mod cube_doc;
mod group_spec;

use std::fmt;

pub use cube_doc::{cube_to_document, parse_cube, parse_cube_value, parse_subset, subset_key, CubeDocument, ElementRef};
pub use group_spec::{parse_element, parse_group, table_spec};

/// Position is 1-based; `expected` says what the parser was looking for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    /// Where in a cube document the offending text sits.
    pub context: Option<String>,
}

impl ParseError {
    pub(crate) fn at(line: usize, column: usize, expected: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            expected: expected.into(),
            context: None,
        }
    }

    pub(crate) fn within(mut self, context: impl Into<String>) -> Self {
        self.context.get_or_insert_with(|| context.into());
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = &self.context {
            write!(f, "{c}: ")?;
        }
        write!(f, "line {}, column {}: expected {}", self.line, self.column, self.expected)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("parse error at {0}")]
    Parse(ParseError),
    /// Well-formed input describing an invalid object, or a resource cap.
    #[error("{context}: {source}")]
    Validation {
        context: String,
        #[source]
        source: crate::Error,
    },
}

impl DslError {
    pub(crate) fn validation(context: impl Into<String>, source: crate::Error) -> Self {
        DslError::Validation {
            context: context.into(),
            source,
        }
    }

    pub fn is_resource_cap(&self) -> bool {
        matches!(self, DslError::Validation { source, .. } if source.is_resource_cap())
    }
}

impl From<ParseError> for DslError {
    fn from(e: ParseError) -> Self {
        DslError::Parse(e)
    }
}

pub type DslResult<T> = std::result::Result<T, DslError>;
