use std::fmt;

use gerst_core::error::Error;

use crate::spec::{ParseError, Tok};

/// Why a run stopped before producing a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Usage(String),
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    Shape {
        block: String,
        message: String,
    },
    Resource(String),
    /// A structure given as input fails one of its axioms.
    Math(String),
}

impl Failure {
    pub fn at(t: &Tok, message: impl Into<String>) -> Self {
        Failure::Parse {
            line: t.line,
            col: t.col,
            message: message.into(),
        }
    }

    pub fn shape(block: impl Into<String>, message: impl Into<String>) -> Self {
        Failure::Shape {
            block: block.into(),
            message: message.into(),
        }
    }

    /// Wraps an error from the core library, keeping `context` as a prefix.
    pub fn core(context: &str, e: Error) -> Self {
        match e {
            Error::Resource(m) => Failure::Resource(format!("{context}: {m}")),
            Error::Shape(m) | Error::BaseMismatch(m) => Failure::shape(context, m),
            e @ (Error::Axiom { .. }
            | Error::NotExact(_)
            | Error::NoSolution(_)
            | Error::Equivariance(_)) => Failure::Math(format!("{context}: {e}")),
            e => Failure::Usage(format!("{context}: {e}")),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Parse { .. } => "parse",
            Failure::Shape { .. } => "shape",
            Failure::Resource(_) => "resource",
            Failure::Math(_) => "math",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Math(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Resource(m) | Failure::Math(m) => f.write_str(m),
            Failure::Parse { line, col, message } => {
                write!(f, "line {line}, column {col}: {message}")
            }
            Failure::Shape { block, message } => write!(f, "block `{block}`: {message}"),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse {
            line: e.line,
            col: e.col,
            message: e.message,
        }
    }
}
