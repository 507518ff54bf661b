//! Token stream for LaTeX math fragments.

use serde::Serialize;

use crate::textspan::CharSpan;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenKind {
    Identifier,
    Number,
    Operator,
    Relation,
    Command,
    OpenGroup,
    CloseGroup,
    SubscriptMarker,
    SuperscriptMarker,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MathToken {
    pub kind: TokenKind,
    /// Exact source lexeme, e.g. `x`, `3.5`, `\leq`.
    pub text: String,
    /// Character offset of the lexeme in the source fragment.
    pub offset: usize,
}

impl MathToken {
    pub fn span(&self) -> CharSpan {
        CharSpan::new(self.offset, self.offset + self.text.chars().count())
    }
}
