//! Tokenizer for math-mode LaTeX fragments.

use super::token::{MathToken, TokenKind};
use super::ParseError;

/// Greek letters and letter-like symbols; these lex as identifiers.
const GREEK_AND_LETTERLIKE: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "epsilon", "varepsilon", "zeta", "eta", "theta",
    "vartheta", "iota", "kappa", "lambda", "mu", "nu", "xi", "pi", "varpi", "rho", "varrho",
    "sigma", "varsigma", "tau", "upsilon", "phi", "varphi", "chi", "psi", "omega", "Gamma",
    "Delta", "Theta", "Lambda", "Xi", "Pi", "Sigma", "Upsilon", "Phi", "Psi", "Omega", "ell",
    "hbar", "imath", "jmath", "wp",
];

/// Relation commands; these lex as relation tokens.
const RELATION_COMMANDS: &[&str] = &[
    "leq", "le", "geq", "ge", "neq", "ne", "in", "subset", "subseteq", "equiv", "sim",
];

/// Binary-operator commands.
const OPERATOR_COMMANDS: &[&str] = &["cdot", "times", "div", "pm", "mp", "setminus", "cup", "cap"];

/// Spacing commands carry no content; the parser skips them.
pub(crate) const SPACING_COMMANDS: &[&str] = &[",", ";", "!", " ", "quad", "qquad", "\\"];

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphabetic() || c.is_alphabetic()
}

/// Tokenize a math-mode fragment (no surrounding `$` delimiters).
///
/// Concatenating the lexemes in order reproduces the input modulo
/// whitespace. Unknown commands become command tokens, never errors.
/// Unbalanced braces are rejected with the offset of the first
/// unmatched brace.
pub fn tokenize_latex(src: &str) -> Result<Vec<MathToken>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut tokens = Vec::new();
    let mut open_braces: Vec<usize> = Vec::new();
    let mut i = 0;

    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let offset = i;
        match c {
            '{' => {
                open_braces.push(offset);
                tokens.push(tok(TokenKind::OpenGroup, "{", offset));
                i += 1;
            }
            '}' => {
                if open_braces.pop().is_none() {
                    return Err(ParseError::new("unmatched closing brace", offset));
                }
                tokens.push(tok(TokenKind::CloseGroup, "}", offset));
                i += 1;
            }
            '_' => {
                tokens.push(tok(TokenKind::SubscriptMarker, "_", offset));
                i += 1;
            }
            '^' => {
                tokens.push(tok(TokenKind::SuperscriptMarker, "^", offset));
                i += 1;
            }
            '=' | '<' | '>' => {
                tokens.push(tok(TokenKind::Relation, &c.to_string(), offset));
                i += 1;
            }
            '\\' => {
                let mut j = i + 1;
                if j < chars.len() && !chars[j].is_ascii_alphabetic() {
                    // single-character escape such as \{ \| \,
                    j += 1;
                } else {
                    while j < chars.len() && chars[j].is_ascii_alphabetic() {
                        j += 1;
                    }
                }
                let text: String = chars[i..j].iter().collect();
                let name = &text[1..];
                let kind = if GREEK_AND_LETTERLIKE.contains(&name) {
                    TokenKind::Identifier
                } else if RELATION_COMMANDS.contains(&name) {
                    TokenKind::Relation
                } else if OPERATOR_COMMANDS.contains(&name) {
                    TokenKind::Operator
                } else {
                    TokenKind::Command
                };
                tokens.push(tok(kind, &text, offset));
                i = j;
            }
            d if d.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j + 1 < chars.len() && chars[j] == '.' && chars[j + 1].is_ascii_digit() {
                    j += 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                let text: String = chars[i..j].iter().collect();
                tokens.push(tok(TokenKind::Number, &text, offset));
                i = j;
            }
            a if is_ident_char(a) => {
                // Single-letter identifiers: a run of letters is a
                // juxtaposition of identifiers, not one name.
                tokens.push(tok(TokenKind::Identifier, &a.to_string(), offset));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '!' | ',' | '.' | ';' | '(' | ')' | '[' | ']' | '|'
            | '&' | '\'' | ':' => {
                tokens.push(tok(TokenKind::Operator, &c.to_string(), offset));
                i += 1;
            }
            other => {
                return Err(ParseError::new(
                    format!("unexpected character '{other}'"),
                    offset,
                ));
            }
        }
    }

    if let Some(&first_open) = open_braces.first() {
        return Err(ParseError::new("unmatched opening brace", first_open));
    }
    Ok(tokens)
}

fn tok(kind: TokenKind, text: &str, offset: usize) -> MathToken {
    MathToken {
        kind,
        text: text.to_string(),
        offset,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<(TokenKind, String)> {
        tokenize_latex(src)
            .unwrap()
            .into_iter()
            .map(|t| (t.kind, t.text))
            .collect()
    }

    #[test]
    fn lexes_simple_sum() {
        assert_eq!(
            kinds("x+3"),
            vec![
                (TokenKind::Identifier, "x".into()),
                (TokenKind::Operator, "+".into()),
                (TokenKind::Number, "3".into()),
            ]
        );
    }

    #[test]
    fn empty_input_yields_no_tokens() {
        assert!(tokenize_latex("").unwrap().is_empty());
    }

    #[test]
    fn lexes_fraction_groups() {
        assert_eq!(
            kinds("\\frac{a}{b}"),
            vec![
                (TokenKind::Command, "\\frac".into()),
                (TokenKind::OpenGroup, "{".into()),
                (TokenKind::Identifier, "a".into()),
                (TokenKind::CloseGroup, "}".into()),
                (TokenKind::OpenGroup, "{".into()),
                (TokenKind::Identifier, "b".into()),
                (TokenKind::CloseGroup, "}".into()),
            ]
        );
    }

    #[test]
    fn offsets_increase_and_lexemes_reconstruct_source() {
        let src = " \\frac{a}{ b } + x_1^2 \\leq 1.50 ";
        let toks = tokenize_latex(src).unwrap();
        let mut prev = None;
        for t in &toks {
            if let Some(p) = prev {
                assert!(t.offset > p, "offsets must strictly increase");
            }
            prev = Some(t.offset);
        }
        let rebuilt: String = toks.iter().map(|t| t.text.as_str()).collect();
        let stripped: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        assert_eq!(rebuilt, stripped);
    }

    #[test]
    fn unmatched_open_brace_reports_first_offset() {
        let err = tokenize_latex("a{b{c}").unwrap_err();
        assert_eq!(err.offset, 1);
    }

    #[test]
    fn unmatched_close_brace_reports_offset() {
        let err = tokenize_latex("ab}").unwrap_err();
        assert_eq!(err.offset, 2);
    }

    #[test]
    fn number_does_not_swallow_sentence_period() {
        assert_eq!(
            kinds("1."),
            vec![
                (TokenKind::Number, "1".into()),
                (TokenKind::Operator, ".".into()),
            ]
        );
        assert_eq!(kinds("1.5")[0].1, "1.5");
    }

    #[test]
    fn classifies_commands() {
        assert_eq!(kinds("\\phi")[0].0, TokenKind::Identifier);
        assert_eq!(kinds("\\leq")[0].0, TokenKind::Relation);
        assert_eq!(kinds("\\cdot")[0].0, TokenKind::Operator);
        assert_eq!(kinds("\\unknowncmd")[0].0, TokenKind::Command);
    }
}
