//! Expression trees for parsed formulae.

use serde::{Deserialize, Serialize};

use crate::textspan::CharSpan;

/// Binary relation symbols that can join maximal expressions into a
/// mathematical statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relator {
    Eq,
    Neq,
    Lt,
    Gt,
    Leq,
    Geq,
    In,
    Subset,
    SubsetEq,
    Equiv,
    Sim,
}

impl Relator {
    pub fn from_lexeme(text: &str) -> Option<Relator> {
        Some(match text {
            "=" => Relator::Eq,
            "<" => Relator::Lt,
            ">" => Relator::Gt,
            "\\leq" | "\\le" => Relator::Leq,
            "\\geq" | "\\ge" => Relator::Geq,
            "\\neq" | "\\ne" => Relator::Neq,
            "\\in" => Relator::In,
            "\\subset" => Relator::Subset,
            "\\subseteq" => Relator::SubsetEq,
            "\\equiv" => Relator::Equiv,
            "\\sim" => Relator::Sim,
            _ => return None,
        })
    }

    pub fn latex(&self) -> &'static str {
        match self {
            Relator::Eq => "=",
            Relator::Neq => "\\neq",
            Relator::Lt => "<",
            Relator::Gt => ">",
            Relator::Leq => "\\leq",
            Relator::Geq => "\\geq",
            Relator::In => "\\in",
            Relator::Subset => "\\subset",
            Relator::SubsetEq => "\\subseteq",
            Relator::Equiv => "\\equiv",
            Relator::Sim => "\\sim",
        }
    }

    /// Relator obtained by swapping the operands, when one exists.
    /// Symmetric relators mirror to themselves; `∈`, `⊂`, `⊆` have no
    /// mirror in this vocabulary.
    pub fn mirror(&self) -> Option<Relator> {
        Some(match self {
            Relator::Eq => Relator::Eq,
            Relator::Neq => Relator::Neq,
            Relator::Equiv => Relator::Equiv,
            Relator::Sim => Relator::Sim,
            Relator::Lt => Relator::Gt,
            Relator::Gt => Relator::Lt,
            Relator::Leq => Relator::Geq,
            Relator::Geq => Relator::Leq,
            Relator::In | Relator::Subset | Relator::SubsetEq => return None,
        })
    }
}

/// Fence kind for delimited constructs. Parentheses, braces and brackets
/// are grouping; angle brackets, absolute values and norms are semantic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FenceKind {
    Paren,
    Brace,
    Bracket,
    Angle,
    Abs,
    Norm,
}

impl FenceKind {
    pub fn is_grouping(&self) -> bool {
        matches!(self, FenceKind::Paren | FenceKind::Brace | FenceKind::Bracket)
    }

    pub fn default_lexemes(&self) -> (&'static str, &'static str) {
        match self {
            FenceKind::Paren => ("(", ")"),
            FenceKind::Brace => ("{", "}"),
            FenceKind::Bracket => ("[", "]"),
            FenceKind::Angle => ("\\langle", "\\rangle"),
            FenceKind::Abs => ("\\lvert", "\\rvert"),
            FenceKind::Norm => ("\\lVert", "\\rVert"),
        }
    }
}

/// Surrounding delimiters of a node, with the exact source lexemes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fence {
    pub kind: FenceKind,
    pub open: String,
    pub close: String,
}

impl Fence {
    pub fn of(kind: FenceKind) -> Fence {
        let (open, close) = kind.default_lexemes();
        Fence {
            kind,
            open: open.to_string(),
            close: close.to_string(),
        }
    }
}

// Fences compare by kind: `(a)` and `\left(a\right)` are the same structure.
impl PartialEq for Fence {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}
impl Eq for Fence {}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Expr {
    pub kind: ExprKind,
    /// Character interval in the source this node was parsed from.
    /// Synthetic nodes produced by rewrites keep template spans; they are
    /// only meaningful relative to the string the node was parsed from.
    pub span: CharSpan,
    pub fence: Option<Fence>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum ExprKind {
    Identifier(String),
    Number(String),
    /// Relation chain: `children.len() == relators.len() + 1`. Chains such
    /// as `a = b = c` are a single node with two relators.
    Relation {
        relators: Vec<Relator>,
        children: Vec<Expr>,
    },
    /// Operator application. `op` is the source lexeme (`+`, `-`, `/`,
    /// `\frac`, `\sin`, an unknown command, ...). Juxtaposition
    /// multiplication uses the empty string. `neg` is unary minus.
    OpApply {
        op: String,
        children: Vec<Expr>,
    },
    /// `head(arg, ...)` where the head is an identifier-like expression.
    FuncApply {
        head: Box<Expr>,
        args: Vec<Expr>,
    },
    Scripted {
        base: Box<Expr>,
        sub: Option<Box<Expr>>,
        sup: Option<Box<Expr>>,
    },
    /// Separator-joined list; at top level also carries trailing sentence
    /// punctuation that appears inside math (`F=ma.`). `separators` has
    /// either `children.len() - 1` or `children.len()` entries, the latter
    /// when trailing punctuation is present.
    Sequence {
        children: Vec<Expr>,
        separators: Vec<String>,
    },
}

impl Expr {
    pub fn new(kind: ExprKind, span: CharSpan) -> Expr {
        Expr {
            kind,
            span,
            fence: None,
        }
    }

    pub fn ident(name: &str, span: CharSpan) -> Expr {
        Expr::new(ExprKind::Identifier(name.to_string()), span)
    }

    pub fn number(lit: &str, span: CharSpan) -> Expr {
        Expr::new(ExprKind::Number(lit.to_string()), span)
    }

    pub fn is_relation(&self) -> bool {
        matches!(self.kind, ExprKind::Relation { .. })
    }

    /// Immediate children in source order.
    pub fn children(&self) -> Vec<&Expr> {
        match &self.kind {
            ExprKind::Identifier(_) | ExprKind::Number(_) => vec![],
            ExprKind::Relation { children, .. } => children.iter().collect(),
            ExprKind::OpApply { children, .. } => children.iter().collect(),
            ExprKind::FuncApply { head, args } => {
                let mut v = vec![head.as_ref()];
                v.extend(args.iter());
                v
            }
            ExprKind::Scripted { base, sub, sup } => {
                let mut v = vec![base.as_ref()];
                if let Some(s) = sub {
                    v.push(s.as_ref());
                }
                if let Some(s) = sup {
                    v.push(s.as_ref());
                }
                v
            }
            ExprKind::Sequence { children, .. } => children.iter().collect(),
        }
    }

    pub fn for_each_node<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        for c in self.children() {
            c.for_each_node(f);
        }
    }

    pub fn node_count(&self) -> usize {
        let mut n = 0;
        self.for_each_node(&mut |_| n += 1);
        n
    }

    pub fn contains_relation(&self) -> bool {
        let mut found = false;
        self.for_each_node(&mut |e| found |= e.is_relation());
        found
    }
}

// Structural equality: spans are ignored, fences compare by kind.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        if self.fence != other.fence {
            return false;
        }
        match (&self.kind, &other.kind) {
            (ExprKind::Identifier(a), ExprKind::Identifier(b)) => a == b,
            (ExprKind::Number(a), ExprKind::Number(b)) => a == b,
            (
                ExprKind::Relation {
                    relators: r1,
                    children: c1,
                },
                ExprKind::Relation {
                    relators: r2,
                    children: c2,
                },
            ) => r1 == r2 && c1 == c2,
            (
                ExprKind::OpApply { op: o1, children: c1 },
                ExprKind::OpApply { op: o2, children: c2 },
            ) => o1 == o2 && c1 == c2,
            (
                ExprKind::FuncApply { head: h1, args: a1 },
                ExprKind::FuncApply { head: h2, args: a2 },
            ) => h1 == h2 && a1 == a2,
            (
                ExprKind::Scripted {
                    base: b1,
                    sub: s1,
                    sup: p1,
                },
                ExprKind::Scripted {
                    base: b2,
                    sub: s2,
                    sup: p2,
                },
            ) => b1 == b2 && s1 == s2 && p1 == p2,
            (
                ExprKind::Sequence {
                    children: c1,
                    separators: s1,
                },
                ExprKind::Sequence {
                    children: c2,
                    separators: s2,
                },
            ) => c1 == c2 && s1 == s2,
            _ => false,
        }
    }
}
impl Eq for Expr {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_is_an_involution() {
        for r in [
            Relator::Eq,
            Relator::Neq,
            Relator::Lt,
            Relator::Gt,
            Relator::Leq,
            Relator::Geq,
            Relator::Equiv,
            Relator::Sim,
        ] {
            assert_eq!(r.mirror().unwrap().mirror().unwrap(), r);
        }
        assert_eq!(Relator::Eq.mirror(), Some(Relator::Eq));
        assert_eq!(Relator::Leq.mirror(), Some(Relator::Geq));
        assert_eq!(Relator::Lt.mirror(), Some(Relator::Gt));
        assert_eq!(Relator::In.mirror(), None);
    }

    #[test]
    fn equality_ignores_spans() {
        let a = Expr::ident("x", CharSpan::new(0, 1));
        let b = Expr::ident("x", CharSpan::new(5, 6));
        assert_eq!(a, b);
        let c = Expr::ident("y", CharSpan::new(0, 1));
        assert_ne!(a, c);
    }
}
