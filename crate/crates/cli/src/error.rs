use crate::dsl::ast::Span;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("syntax error at {span}: {message}")]
    Syntax { span: Span, message: String },
    #[error("type error at {}: {message}", spans(.first, .second))]
    Type {
        message: String,
        first: Span,
        second: Option<Span>,
    },
    #[error("unbound name `{name}` at {span}")]
    Unbound { name: String, span: Span },
    #[error("{0}")]
    Usage(String),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Core(#[from] gradal_core::Error),
}

fn spans(first: &Span, second: &Option<Span>) -> String {
    match second {
        Some(s) => format!("{first} and {s}"),
        None => first.to_string(),
    }
}

impl CliError {
    pub fn type_error(message: impl Into<String>, first: Span, second: Option<Span>) -> CliError {
        CliError::Type {
            message: message.into(),
            first,
            second,
        }
    }

    /// 2 for malformed input, 3 for violated mathematical hypotheses. Failed
    /// checks exit 4 through `Output::status`.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. }
            | CliError::Type { .. }
            | CliError::Unbound { .. }
            | CliError::Usage(_)
            | CliError::Io(_)
            | CliError::Core(gradal_core::Error::UnknownCheckId(_)) => 2,
            CliError::Core(_) => 3,
        }
    }
}
