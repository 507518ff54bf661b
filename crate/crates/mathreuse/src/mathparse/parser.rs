//! Recursive-descent parser for math fragments.
//!
//! Precedence, tightest first: scripts, function application and postfix
//! operators; multiplication (explicit or juxtaposition) and division;
//! addition and subtraction; relators; separator-joined sequences.

use super::ast::{Expr, ExprKind, Fence, FenceKind, Relator};
use super::lexer::{tokenize_latex, SPACING_COMMANDS};
use super::token::{MathToken, TokenKind};
use super::ParseError;
use crate::textspan::CharSpan;

/// Commands that take one following argument, like `\sin x`.
const FUNCTION_COMMANDS: &[&str] = &[
    "sin", "cos", "tan", "cot", "sec", "csc", "arcsin", "arccos", "arctan", "sinh", "cosh",
    "tanh", "coth", "log", "ln", "lg", "exp", "det", "dim", "ker", "deg", "gcd",
];

/// Commands that stand alone and take scripts, like `\sum_{i=1}^{n}`.
const BIG_OP_COMMANDS: &[&str] = &[
    "sum", "prod", "int", "oint", "lim", "sup", "inf", "min", "max", "bigcup", "bigcap",
];

fn open_fence(text: &str) -> Option<(FenceKind, &'static str)> {
    Some(match text {
        "(" => (FenceKind::Paren, ")"),
        "[" => (FenceKind::Bracket, "]"),
        "\\langle" => (FenceKind::Angle, "\\rangle"),
        "\\lvert" => (FenceKind::Abs, "\\rvert"),
        "\\lVert" => (FenceKind::Norm, "\\rVert"),
        "\\{" => (FenceKind::Brace, "\\}"),
        "|" => (FenceKind::Abs, "|"),
        "\\|" => (FenceKind::Norm, "\\|"),
        _ => return None,
    })
}

fn is_close_fence(text: &str) -> bool {
    matches!(
        text,
        ")" | "]" | "\\rangle" | "\\rvert" | "\\rVert" | "\\}" | "\\right"
    )
}

fn is_separator(text: &str) -> bool {
    matches!(text, "," | ";" | "." | "&" | "\\\\" | ":")
}

/// Parse a math-mode LaTeX fragment into an expression tree.
pub fn parse_math(src: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize_latex(src)?;
    parse_formula(&tokens, src.chars().count())
}

/// Parse a token stream produced by [`tokenize_latex`].
pub fn parse_formula(tokens: &[MathToken], src_len: usize) -> Result<Expr, ParseError> {
    let significant: Vec<MathToken> = tokens
        .iter()
        .filter(|t| !(t.kind == TokenKind::Command && SPACING_COMMANDS.contains(&&t.text[1..])))
        .cloned()
        .collect();
    if significant.is_empty() {
        return Err(ParseError::new("empty formula", 0));
    }
    let mut p = Parser {
        tokens: significant,
        pos: 0,
        src_len,
    };
    let expr = p.parse_sequence(None)?;
    if let Some(t) = p.peek() {
        return Err(ParseError::new(
            format!("unexpected trailing '{}'", t.text),
            t.offset,
        ));
    }
    Ok(expr)
}

struct Parser {
    tokens: Vec<MathToken>,
    pos: usize,
    src_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&MathToken> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> MathToken {
        let t = self.tokens[self.pos].clone();
        self.pos += 1;
        t
    }

    fn at_end_offset(&self) -> usize {
        self.src_len
    }

    fn err_here(&self, msg: impl Into<String>) -> ParseError {
        let offset = self.peek().map(|t| t.offset).unwrap_or(self.at_end_offset());
        ParseError::new(msg, offset)
    }

    fn at_close(&self, close: Option<&str>) -> bool {
        match (self.peek(), close) {
            (None, _) => true,
            (Some(t), Some(c)) => {
                t.text == c
                    || (c == "}" && t.kind == TokenKind::CloseGroup)
                    || t.text == "\\right"
            }
            (Some(_), None) => false,
        }
    }

    /// Separator-joined items until `close` (or end of input). A single
    /// item with no separators is returned unwrapped.
    fn parse_sequence(&mut self, close: Option<&str>) -> Result<Expr, ParseError> {
        let mut children = Vec::new();
        let mut separators = Vec::new();
        loop {
            if self.at_close(close) {
                break;
            }
            let item = self.parse_relation()?;
            children.push(item);
            match self.peek() {
                Some(t) if t.kind == TokenKind::Operator && is_separator(&t.text) => {
                    let sep = self.bump();
                    separators.push(sep.text);
                }
                _ => break,
            }
        }
        if children.is_empty() {
            return Err(self.err_here("empty formula"));
        }
        if children.len() == 1 && separators.is_empty() {
            return Ok(children.pop().unwrap());
        }
        let span = CharSpan::new(
            children.first().unwrap().span.start,
            children
                .last()
                .unwrap()
                .span
                .end
                .max(children.first().unwrap().span.start),
        );
        Ok(Expr::new(
            ExprKind::Sequence {
                children,
                separators,
            },
            span,
        ))
    }

    fn parse_relation(&mut self) -> Result<Expr, ParseError> {
        let first = self.parse_additive()?;
        let mut children = vec![first];
        let mut relators = Vec::new();
        while let Some(t) = self.peek() {
            if t.kind != TokenKind::Relation {
                break;
            }
            let tok = self.bump();
            let relator = Relator::from_lexeme(&tok.text)
                .ok_or_else(|| ParseError::new(format!("unknown relator '{}'", tok.text), tok.offset))?;
            relators.push(relator);
            children.push(self.parse_additive()?);
        }
        if relators.is_empty() {
            return Ok(children.pop().unwrap());
        }
        let span = CharSpan::new(children[0].span.start, children.last().unwrap().span.end);
        Ok(Expr::new(ExprKind::Relation { relators, children }, span))
    }

    fn parse_additive(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_multiplicative()?;
        while let Some(t) = self.peek() {
            if t.kind == TokenKind::Operator && (t.text == "+" || t.text == "-") {
                let op = self.bump().text;
                let rhs = self.parse_multiplicative()?;
                let span = lhs.span.hull(&rhs.span);
                lhs = Expr::new(
                    ExprKind::OpApply {
                        op,
                        children: vec![lhs, rhs],
                    },
                    span,
                );
            } else {
                break;
            }
        }
        Ok(lhs)
    }

    fn parse_multiplicative(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_unary()?;
        loop {
            let Some(t) = self.peek() else { break };
            let explicit = t.kind == TokenKind::Operator
                && matches!(t.text.as_str(), "*" | "/" | "\\cdot" | "\\times" | "\\div");
            if explicit {
                let op = self.bump().text;
                let rhs = self.parse_unary()?;
                let span = lhs.span.hull(&rhs.span);
                lhs = Expr::new(
                    ExprKind::OpApply {
                        op,
                        children: vec![lhs, rhs],
                    },
                    span,
                );
                continue;
            }
            if self.starts_atom() {
                let rhs = self.parse_postfix()?;
                let span = lhs.span.hull(&rhs.span);
                lhs = Expr::new(
                    ExprKind::OpApply {
                        op: String::new(),
                        children: vec![lhs, rhs],
                    },
                    span,
                );
                continue;
            }
            break;
        }
        Ok(lhs)
    }

    /// True when the next token can begin an atom (juxtaposition site).
    fn starts_atom(&self) -> bool {
        match self.peek() {
            None => false,
            Some(t) => match t.kind {
                TokenKind::Identifier | TokenKind::Number | TokenKind::OpenGroup => true,
                TokenKind::Command => !is_close_fence(&t.text),
                TokenKind::Operator => matches!(t.text.as_str(), "(" | "[" | "|"),
                _ => false,
            },
        }
    }

    fn parse_unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(t) = self.peek() {
            if t.kind == TokenKind::Operator && t.text == "-" {
                let start = self.bump().offset;
                let inner = self.parse_unary()?;
                let span = CharSpan::new(start, inner.span.end);
                return Ok(Expr::new(
                    ExprKind::OpApply {
                        op: "neg".to_string(),
                        children: vec![inner],
                    },
                    span,
                ));
            }
            if t.kind == TokenKind::Operator && t.text == "+" {
                self.bump();
                return self.parse_unary();
            }
        }
        self.parse_postfix()
    }

    fn parse_postfix(&mut self) -> Result<Expr, ParseError> {
        let mut node = self.parse_atom()?;
        loop {
            let Some(t) = self.peek() else { break };
            match (t.kind, t.text.as_str()) {
                (TokenKind::SubscriptMarker, _) => {
                    self.bump();
                    let arg = self.parse_script_arg()?;
                    node = attach_script(node, Some(arg), None)
                        .map_err(|m| self.err_here(m))?;
                }
                (TokenKind::SuperscriptMarker, _) => {
                    self.bump();
                    let arg = self.parse_script_arg()?;
                    node = attach_script(node, None, Some(arg))
                        .map_err(|m| self.err_here(m))?;
                }
                (TokenKind::Operator, "!") => {
                    let tok = self.bump();
                    let span = CharSpan::new(node.span.start, tok.offset + 1);
                    node = Expr::new(
                        ExprKind::OpApply {
                            op: "!".to_string(),
                            children: vec![node],
                        },
                        span,
                    );
                }
                (TokenKind::Operator, "'") => {
                    let tok = self.bump();
                    let span = CharSpan::new(node.span.start, tok.offset + 1);
                    node = Expr::new(
                        ExprKind::OpApply {
                            op: "'".to_string(),
                            children: vec![node],
                        },
                        span,
                    );
                }
                (TokenKind::Operator, "(") if is_applicable_head(&node) => {
                    self.bump();
                    let mut args = Vec::new();
                    if !self.at_close(Some(")")) {
                        loop {
                            args.push(self.parse_relation()?);
                            match self.peek() {
                                Some(t) if t.text == "," => {
                                    self.bump();
                                }
                                _ => break,
                            }
                        }
                    }
                    let close = self.expect_close(")")?;
                    let span = CharSpan::new(node.span.start, close.offset + 1);
                    node = Expr::new(
                        ExprKind::FuncApply {
                            head: Box::new(node),
                            args,
                        },
                        span,
                    );
                }
                _ => break,
            }
        }
        Ok(node)
    }

    fn expect_close(&mut self, text: &str) -> Result<MathToken, ParseError> {
        match self.peek() {
            Some(t) if t.text == text || (text == "}" && t.kind == TokenKind::CloseGroup) => {
                Ok(self.bump())
            }
            _ => Err(self.err_here(format!("expected '{text}'"))),
        }
    }

    fn parse_script_arg(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::OpenGroup => {
                self.bump();
                let inner = self.parse_sequence(Some("}"))?;
                self.expect_close("}")?;
                Ok(inner)
            }
            _ => self.parse_atom(),
        }
    }

    /// `{...}` argument of a command; the braces are command syntax, not a
    /// grouping fence.
    fn parse_braced_arg(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::OpenGroup => {
                self.bump();
                let inner = self.parse_sequence(Some("}"))?;
                self.expect_close("}")?;
                Ok(inner)
            }
            _ => self.parse_atom(),
        }
    }

    fn parse_fenced(
        &mut self,
        kind: FenceKind,
        open_lexeme: String,
        close_text: &str,
        close_lexeme_override: Option<String>,
        start: usize,
    ) -> Result<Expr, ParseError> {
        let inner = self.parse_sequence(Some(close_text))?;
        let close_tok = match self.peek() {
            Some(t) if t.text == close_text || (close_text == "}" && t.kind == TokenKind::CloseGroup) => {
                self.bump()
            }
            _ => {
                return Err(ParseError::new(
                    format!("unclosed '{open_lexeme}', expected '{close_text}'"),
                    start,
                ))
            }
        };
        let end = close_tok.offset + close_tok.text.chars().count();
        let close_lexeme = close_lexeme_override.unwrap_or(close_tok.text);
        let fence = Fence {
            kind,
            open: open_lexeme,
            close: close_lexeme,
        };
        Ok(attach_fence(inner, fence, CharSpan::new(start, end)))
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseError> {
        let Some(t) = self.peek().cloned() else {
            return Err(ParseError::new("dangling operator at end of input", self.at_end_offset()));
        };
        match t.kind {
            TokenKind::Identifier => {
                self.bump();
                Ok(Expr::ident(&t.text, t.span()))
            }
            TokenKind::Number => {
                self.bump();
                Ok(Expr::number(&t.text, t.span()))
            }
            TokenKind::OpenGroup => {
                self.bump();
                self.parse_fenced(FenceKind::Brace, "{".into(), "}", None, t.offset)
            }
            TokenKind::Operator => {
                if let Some((kind, close)) = open_fence(&t.text) {
                    self.bump();
                    self.parse_fenced(kind, t.text.clone(), close, None, t.offset)
                } else {
                    Err(ParseError::new(
                        format!("unexpected '{}'", t.text),
                        t.offset,
                    ))
                }
            }
            TokenKind::Command => self.parse_command_atom(),
            TokenKind::Relation | TokenKind::CloseGroup => Err(ParseError::new(
                format!("unexpected '{}'", t.text),
                t.offset,
            )),
            TokenKind::SubscriptMarker | TokenKind::SuperscriptMarker => Err(ParseError::new(
                "script without a base",
                t.offset,
            )),
        }
    }

    fn parse_command_atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.bump();
        let name = &t.text[1..];
        let start = t.offset;

        if let Some((kind, close)) = open_fence(&t.text) {
            return self.parse_fenced(kind, t.text.clone(), close, None, start);
        }
        if t.text == "\\left" {
            let delim = self
                .peek()
                .cloned()
                .ok_or_else(|| ParseError::new("\\left without a delimiter", start))?;
            let (kind, _) = open_fence(&delim.text)
                .ok_or_else(|| ParseError::new(format!("unsupported \\left delimiter '{}'", delim.text), delim.offset))?;
            self.bump();
            let inner = self.parse_sequence(Some("\\right"))?;
            let right = self.expect_close("\\right")?;
            let close_delim = self
                .peek()
                .cloned()
                .ok_or_else(|| ParseError::new("\\right without a delimiter", right.offset))?;
            self.bump();
            let end = close_delim.offset + close_delim.text.chars().count();
            let fence = Fence {
                kind,
                open: format!("\\left{}", delim.text),
                close: format!("\\right{}", close_delim.text),
            };
            return Ok(attach_fence(inner, fence, CharSpan::new(start, end)));
        }

        match name {
            "frac" => {
                let num = self.parse_braced_arg()?;
                let den = self.parse_braced_arg()?;
                let span = CharSpan::new(start, den.span.end.max(start));
                Ok(Expr::new(
                    ExprKind::OpApply {
                        op: "\\frac".to_string(),
                        children: vec![num, den],
                    },
                    span,
                ))
            }
            "sqrt" => {
                // plain root: children = [radicand]; indexed root: [index, radicand]
                let mut children = Vec::new();
                if let Some(nt) = self.peek() {
                    if nt.kind == TokenKind::Operator && nt.text == "[" {
                        self.bump();
                        let index = self.parse_sequence(Some("]"))?;
                        self.expect_close("]")?;
                        children.push(index);
                    }
                }
                let radicand = self.parse_braced_arg()?;
                let end = radicand.span.end.max(start);
                children.push(radicand);
                Ok(Expr::new(
                    ExprKind::OpApply {
                        op: "\\sqrt".to_string(),
                        children,
                    },
                    CharSpan::new(start, end),
                ))
            }
            _ if FUNCTION_COMMANDS.contains(&name) => {
                let arg = self.parse_postfix()?;
                let span = CharSpan::new(start, arg.span.end);
                Ok(Expr::new(
                    ExprKind::OpApply {
                        op: t.text.clone(),
                        children: vec![arg],
                    },
                    span,
                ))
            }
            _ if BIG_OP_COMMANDS.contains(&name) => Ok(Expr::new(
                ExprKind::OpApply {
                    op: t.text.clone(),
                    children: vec![],
                },
                t.span(),
            )),
            _ => {
                // unknown command: opaque operator over its braced groups
                let mut children = Vec::new();
                let mut end = start + t.text.chars().count();
                while let Some(nt) = self.peek() {
                    if nt.kind != TokenKind::OpenGroup {
                        break;
                    }
                    let open = self.bump();
                    let inner = self.parse_sequence(Some("}"))?;
                    let close = self.expect_close("}")?;
                    end = close.offset + 1;
                    let _ = open;
                    children.push(inner);
                }
                Ok(Expr::new(
                    ExprKind::OpApply {
                        op: t.text.clone(),
                        children,
                    },
                    CharSpan::new(start, end),
                ))
            }
        }
    }
}

fn is_applicable_head(node: &Expr) -> bool {
    match &node.kind {
        ExprKind::Identifier(_) => node.fence.is_none(),
        ExprKind::Scripted { base, .. } => {
            node.fence.is_none() && matches!(base.kind, ExprKind::Identifier(_))
        }
        _ => false,
    }
}

fn attach_script(node: Expr, sub: Option<Expr>, sup: Option<Expr>) -> Result<Expr, String> {
    let add_end = sub
        .as_ref()
        .or(sup.as_ref())
        .map(|e| e.span.end)
        .unwrap_or(node.span.end);
    let span = CharSpan::new(node.span.start, add_end.max(node.span.end));
    match node.kind {
        ExprKind::Scripted {
            base,
            sub: old_sub,
            sup: old_sup,
        } if node.fence.is_none() => {
            let new_sub = match (old_sub, sub) {
                (None, s) => s.map(Box::new),
                (Some(s), None) => Some(s),
                (Some(_), Some(_)) => return Err("double subscript".to_string()),
            };
            let new_sup = match (old_sup, sup) {
                (None, s) => s.map(Box::new),
                (Some(s), None) => Some(s),
                (Some(_), Some(_)) => return Err("double superscript".to_string()),
            };
            Ok(Expr::new(
                ExprKind::Scripted {
                    base,
                    sub: new_sub,
                    sup: new_sup,
                },
                span,
            ))
        }
        _ => Ok(Expr::new(
            ExprKind::Scripted {
                base: Box::new(node),
                sub: sub.map(Box::new),
                sup: sup.map(Box::new),
            },
            span,
        )),
    }
}

/// Attach a fence to `inner`, wrapping in a transparent sequence when the
/// node already carries one.
fn attach_fence(inner: Expr, fence: Fence, span: CharSpan) -> Expr {
    if inner.fence.is_none() {
        let mut e = inner;
        e.fence = Some(fence);
        e.span = span;
        e
    } else {
        let mut wrapper = Expr::new(
            ExprKind::Sequence {
                children: vec![inner],
                separators: vec![],
            },
            span,
        );
        wrapper.fence = Some(fence);
        wrapper
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(src: &str) -> Expr {
        parse_math(src).unwrap_or_else(|e| panic!("parse {src:?}: {e}"))
    }

    #[test]
    fn statement_with_sum_and_zero() {
        let e = parse("a+2=0");
        let ExprKind::Relation { relators, children } = &e.kind else {
            panic!("expected relation, got {e:?}");
        };
        assert_eq!(relators, &[Relator::Eq]);
        assert_eq!(children.len(), 2);
        let ExprKind::OpApply { op, children: add } = &children[0].kind else {
            panic!("expected sum");
        };
        assert_eq!(op, "+");
        assert_eq!(add[0].kind_name(), "Identifier");
        assert_eq!(children[1], Expr::number("0", CharSpan::new(4, 5)));
    }

    #[test]
    fn inequality_statement() {
        let e = parse("x \\leq 1");
        let ExprKind::Relation { relators, children } = &e.kind else {
            panic!("expected relation");
        };
        assert_eq!(relators, &[Relator::Leq]);
        assert_eq!(children[0], Expr::ident("x", CharSpan::new(0, 1)));
        assert_eq!(children[1], Expr::number("1", CharSpan::new(7, 8)));
    }

    #[test]
    fn function_application() {
        let e = parse("f(x)");
        let ExprKind::FuncApply { head, args } = &e.kind else {
            panic!("expected application, got {e:?}");
        };
        assert_eq!(**head, Expr::ident("f", CharSpan::new(0, 1)));
        assert_eq!(args.len(), 1);
        assert_eq!(args[0], Expr::ident("x", CharSpan::new(2, 3)));
    }

    #[test]
    fn relation_chain_is_one_node() {
        let e = parse("a=b=c");
        let ExprKind::Relation { relators, children } = &e.kind else {
            panic!("expected relation");
        };
        assert_eq!(relators.len(), 2);
        assert_eq!(children.len(), 3);
    }

    #[test]
    fn dangling_operator_is_an_error_with_offset() {
        let err = parse_math("a+").unwrap_err();
        assert_eq!(err.offset, 2);
        let err = parse_math("").unwrap_err();
        assert_eq!(err.offset, 0);
    }

    #[test]
    fn juxtaposition_parses_left_associated() {
        let e = parse("ma");
        let ExprKind::OpApply { op, children } = &e.kind else {
            panic!("expected juxtaposition");
        };
        assert_eq!(op, "");
        assert_eq!(children.len(), 2);
    }

    #[test]
    fn scripts_bind_tighter_than_application_args() {
        let e = parse("x_1^2");
        let ExprKind::Scripted { base, sub, sup } = &e.kind else {
            panic!("expected scripted node");
        };
        assert_eq!(**base, Expr::ident("x", CharSpan::new(0, 1)));
        assert!(sub.is_some() && sup.is_some());
    }

    #[test]
    fn trailing_sentence_punctuation_is_kept() {
        let e = parse("F=ma.");
        let ExprKind::Sequence { children, separators } = &e.kind else {
            panic!("expected sequence wrapper, got {e:?}");
        };
        assert_eq!(children.len(), 1);
        assert_eq!(separators, &[".".to_string()]);
        assert!(children[0].is_relation());
    }

    #[test]
    fn angle_fences_with_commas() {
        let e = parse("\\langle x+y , x+y \\rangle");
        assert_eq!(e.fence.as_ref().unwrap().kind, FenceKind::Angle);
        let ExprKind::Sequence { children, .. } = &e.kind else {
            panic!("expected fenced sequence");
        };
        assert_eq!(children.len(), 2);
        assert_eq!(children[0], children[1]);
    }

    #[test]
    fn unknown_command_becomes_opaque_operator() {
        let e = parse("\\foo{x}{y} + 1");
        let ExprKind::OpApply { op, children } = &e.kind else {
            panic!()
        };
        assert_eq!(op, "+");
        let ExprKind::OpApply { op: cmd, children: args } = &children[0].kind else {
            panic!("expected opaque command, got {:?}", children[0]);
        };
        assert_eq!(cmd, "\\foo");
        assert_eq!(args.len(), 2);
    }

    #[test]
    fn norm_and_power() {
        let e = parse("\\lVert x \\rVert^2");
        let ExprKind::Scripted { base, sup, .. } = &e.kind else {
            panic!("expected scripted norm, got {e:?}");
        };
        assert_eq!(base.fence.as_ref().unwrap().kind, FenceKind::Norm);
        assert!(sup.is_some());
    }

    impl Expr {
        fn kind_name(&self) -> &'static str {
            match self.kind {
                ExprKind::Identifier(_) => "Identifier",
                ExprKind::Number(_) => "Number",
                ExprKind::Relation { .. } => "Relation",
                ExprKind::OpApply { .. } => "OpApply",
                ExprKind::FuncApply { .. } => "FuncApply",
                ExprKind::Scripted { .. } => "Scripted",
                ExprKind::Sequence { .. } => "Sequence",
            }
        }
    }
}
