//! Render expression trees back to LaTeX.
//!
//! Rendering is deterministic and inserts minimal parentheses so that
//! `parse(render(e))` is structurally equal to `e` after normalization.

use super::ast::{Expr, ExprKind};

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Prec {
    Sequence,
    Relation,
    Additive,
    Multiplicative,
    Unary,
    Postfix,
    Atom,
}

pub fn to_latex(expr: &Expr) -> String {
    render(expr, Prec::Sequence)
}

fn render(expr: &Expr, ctx: Prec) -> String {
    let own = precedence(expr);
    let body = render_body(expr);
    if let Some(fence) = &expr.fence {
        return format!("{} {} {}", fence.open, body, fence.close);
    }
    if own < ctx {
        format!("( {body} )")
    } else {
        body
    }
}

fn precedence(expr: &Expr) -> Prec {
    match &expr.kind {
        ExprKind::Identifier(_) | ExprKind::Number(_) => Prec::Atom,
        ExprKind::Relation { .. } => Prec::Relation,
        ExprKind::Sequence { .. } => Prec::Sequence,
        ExprKind::FuncApply { .. } => Prec::Postfix,
        ExprKind::Scripted { .. } => Prec::Postfix,
        ExprKind::OpApply { op, children } => match op.as_str() {
            "+" | "-" => Prec::Additive,
            "neg" => Prec::Unary,
            "" | "*" | "/" | "\\cdot" | "\\times" | "\\div" => Prec::Multiplicative,
            "!" | "'" => Prec::Postfix,
            // \frac and \sqrt carry their own grouping
            "\\frac" | "\\sqrt" => Prec::Atom,
            _ if children.is_empty() => Prec::Atom,
            _ => Prec::Unary,
        },
    }
}

fn render_body(expr: &Expr) -> String {
    match &expr.kind {
        ExprKind::Identifier(name) => name.clone(),
        ExprKind::Number(lit) => lit.clone(),
        ExprKind::Relation { relators, children } => {
            let mut out = render(&children[0], Prec::Additive);
            for (r, c) in relators.iter().zip(children.iter().skip(1)) {
                out.push_str(&format!(" {} {}", r.latex(), render(c, Prec::Additive)));
            }
            out
        }
        ExprKind::Sequence {
            children,
            separators,
        } => {
            let mut out = String::new();
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&render(c, Prec::Relation));
                if let Some(sep) = separators.get(i) {
                    out.push_str(sep);
                }
            }
            out
        }
        ExprKind::FuncApply { head, args } => {
            let rendered: Vec<String> = args.iter().map(|a| render(a, Prec::Relation)).collect();
            format!("{}({})", render(head, Prec::Postfix), rendered.join(" , "))
        }
        ExprKind::Scripted { base, sub, sup } => {
            let mut out = render_script_base(base);
            if let Some(s) = sub {
                out.push_str(&format!("_{}", script_arg(s)));
            }
            if let Some(s) = sup {
                out.push_str(&format!("^{}", script_arg(s)));
            }
            out
        }
        ExprKind::OpApply { op, children } => match op.as_str() {
            "+" | "-" => {
                let lhs = render(&children[0], Prec::Additive);
                // right operand of `-` needs one level more binding
                let rhs_ctx = if op == "-" { Prec::Multiplicative } else { Prec::Additive };
                let rhs = render(&children[1], rhs_ctx);
                format!("{lhs} {op} {rhs}")
            }
            "neg" => format!("- {}", render(&children[0], Prec::Unary)),
            "" => {
                let lhs = render(&children[0], Prec::Multiplicative);
                let rhs = render(&children[1], Prec::Unary);
                format!("{lhs} {rhs}")
            }
            "*" | "\\cdot" | "\\times" | "\\div" => {
                let lhs = render(&children[0], Prec::Multiplicative);
                let rhs = render(&children[1], Prec::Unary);
                format!("{lhs} {op} {rhs}")
            }
            "/" => {
                let lhs = render(&children[0], Prec::Multiplicative);
                let rhs = render(&children[1], Prec::Unary);
                format!("{lhs} / {rhs}")
            }
            "!" | "'" => format!("{}{}", render(&children[0], Prec::Postfix), op),
            "\\frac" => format!(
                "\\frac{{{}}}{{{}}}",
                render(&children[0], Prec::Sequence),
                render(&children[1], Prec::Sequence)
            ),
            "\\sqrt" => {
                if children.len() == 2 {
                    format!(
                        "\\sqrt[{}]{{{}}}",
                        render(&children[0], Prec::Sequence),
                        render(&children[1], Prec::Sequence)
                    )
                } else {
                    format!("\\sqrt{{{}}}", render(&children[0], Prec::Sequence))
                }
            }
            cmd if cmd.starts_with('\\') => {
                if children.is_empty() {
                    cmd.to_string()
                } else if children.len() == 1 && is_prefix_function(cmd) {
                    format!("{} {}", cmd, render(&children[0], Prec::Postfix))
                } else {
                    let args: Vec<String> = children
                        .iter()
                        .map(|c| format!("{{{}}}", render(c, Prec::Sequence)))
                        .collect();
                    format!("{}{}", cmd, args.join(""))
                }
            }
            other => {
                // non-backslash operator we do not special-case
                let args: Vec<String> = children.iter().map(|c| render(c, Prec::Unary)).collect();
                format!("{} {}", other, args.join(" "))
            }
        },
    }
}

fn is_prefix_function(cmd: &str) -> bool {
    matches!(
        cmd,
        "\\sin" | "\\cos" | "\\tan" | "\\cot" | "\\sec" | "\\csc" | "\\arcsin" | "\\arccos"
            | "\\arctan" | "\\sinh" | "\\cosh" | "\\tanh" | "\\coth" | "\\log" | "\\ln" | "\\lg"
            | "\\exp" | "\\det" | "\\dim" | "\\ker" | "\\deg" | "\\gcd"
    )
}

fn render_script_base(base: &Expr) -> String {
    match &base.kind {
        ExprKind::Identifier(_) | ExprKind::Number(_) if base.fence.is_none() => {
            render(base, Prec::Atom)
        }
        _ if base.fence.is_some() => render(base, Prec::Atom),
        ExprKind::FuncApply { .. } => render(base, Prec::Postfix),
        ExprKind::OpApply { op, children } if children.is_empty() && op.starts_with('\\') => {
            op.clone()
        }
        _ => format!("{{{}}}", render(base, Prec::Sequence)),
    }
}

fn script_arg(e: &Expr) -> String {
    let body = render(e, Prec::Sequence);
    let single_token = matches!(
        &e.kind,
        ExprKind::Identifier(_) | ExprKind::Number(_)
    ) && e.fence.is_none()
        && !body.contains(' ');
    if single_token && body.chars().count() == 1 {
        body
    } else {
        format!("{{{body}}}")
    }
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_math;
    use super::*;

    fn strip_ws(s: &str) -> String {
        s.chars().filter(|c| !c.is_whitespace()).collect()
    }

    #[test]
    fn render_reproduces_source_modulo_whitespace() {
        for src in [
            "x+3",
            "a+2=0",
            "x \\leq 1",
            "f(x)",
            "F=ma.",
            "\\frac{a}{b}",
            "\\langle x+y , x+y \\rangle \\leq \\lVert x \\rVert^2 + 2 \\lvert \\langle x , y \\rangle \\rvert + \\lVert y \\rVert^2",
            "z = a+bi",
            "x_1^2 - y_{23}",
            "\\sqrt{x+1}",
            "(a+b)c",
            "a=b=c",
        ] {
            let e = parse_math(src).unwrap();
            assert_eq!(strip_ws(&to_latex(&e)), strip_ws(src), "round trip of {src:?}");
        }
    }

    #[test]
    fn reparse_is_structurally_stable() {
        for src in ["a+2=0", "\\frac{a}{b} + \\sqrt{x}", "f(x , y)", "- ( a + b ) c"] {
            let e = parse_math(src).unwrap();
            let again = parse_math(&to_latex(&e)).unwrap();
            assert_eq!(e, again, "reparse of {src:?}");
        }
    }

    #[test]
    fn synthetic_tree_gets_parens_where_needed() {
        // (a+b) juxtaposed with c, built without fences
        let src = "(a+b)c";
        let mut e = parse_math(src).unwrap();
        // strip the paren fence to simulate a rewrite product
        if let ExprKind::OpApply { children, .. } = &mut e.kind {
            children[0].fence = None;
        }
        let rendered = to_latex(&e);
        let again = parse_math(&rendered).unwrap();
        assert_eq!(strip_ws(&rendered), "(a+b)c");
        let _ = again;
    }
}
