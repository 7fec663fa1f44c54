//! Canonical pretty-printer. `parse(pretty_print(p))` reproduces `p`
//! statement for statement.

use super::ast::{Arg, ArgScalar, Expr, Program};

pub fn pretty_print(program: &Program) -> String {
    let mut out = String::new();
    for stmt in &program.statements {
        if let Some(name) = &stmt.binding {
            out.push_str(name);
            out.push_str(" = ");
        }
        write_expr(&mut out, &stmt.expr, Prec::Top);
        out.push('\n');
    }
    out
}

/// Precedence context, loosest to tightest.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Prec {
    Top,
    Or,
    And,
    Not,
}

fn write_expr(out: &mut String, expr: &Expr, ctx: Prec) {
    match expr {
        Expr::Quantifier {
            kind,
            sort,
            var,
            body,
        } => {
            out.push_str(kind.name());
            out.push('(');
            out.push_str(sort.name());
            out.push_str(", lambda ");
            out.push_str(var);
            out.push_str(": ");
            write_expr(out, body, Prec::Top);
            out.push(')');
        }
        Expr::Or(l, r) => {
            let need_parens = ctx > Prec::Or;
            if need_parens {
                out.push('(');
            }
            write_expr(out, l, Prec::Or);
            out.push_str(" or ");
            // Right operand printed one level tighter keeps the printed
            // tree left-associative on reparse.
            write_expr(out, r, Prec::And);
            if need_parens {
                out.push(')');
            }
        }
        Expr::And(l, r) => {
            let need_parens = ctx > Prec::And;
            if need_parens {
                out.push('(');
            }
            write_expr(out, l, Prec::And);
            out.push_str(" and ");
            write_expr(out, r, Prec::Not);
            if need_parens {
                out.push(')');
            }
        }
        Expr::Not(inner) => {
            out.push_str("not ");
            write_expr(out, inner, Prec::Not);
        }
        Expr::Call { name, args } => {
            out.push_str(name);
            out.push('(');
            for (i, arg) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_arg(out, arg);
            }
            out.push(')');
        }
    }
}

fn write_arg(out: &mut String, arg: &Arg) {
    match arg {
        Arg::Var(v) => out.push_str(v),
        Arg::Num(n) => out.push_str(&format_number(*n)),
        Arg::Str(s) => {
            out.push('"');
            out.push_str(s);
            out.push('"');
        }
        Arg::List(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                match item {
                    ArgScalar::Num(n) => out.push_str(&format_number(*n)),
                    ArgScalar::Str(s) => {
                        out.push('"');
                        out.push_str(s);
                        out.push('"');
                    }
                }
            }
            out.push(']');
        }
        Arg::Expr(e) => write_expr(out, e, Prec::Top),
    }
}

/// Render a single call argument in surface syntax.
pub fn format_arg(arg: &Arg) -> String {
    let mut out = String::new();
    write_arg(&mut out, arg);
    out
}

/// Numbers print with at least one decimal so integral values round-trip
/// as floats, matching the corpus convention (100 prints as 100.0).
pub fn format_number(n: f64) -> String {
    if n.fract() == 0.0 && n.abs() < 1e15 {
        format!("{n:.1}")
    } else {
        format!("{n}")
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn roundtrip(src: &str) {
        let p1 = parse(src).unwrap();
        let printed = pretty_print(&p1);
        let p2 = parse(&printed).unwrap();
        assert_eq!(p1.statements, p2.statements, "printed form:\n{printed}");
        // Printing again is a fixed point.
        assert_eq!(printed, pretty_print(&p2));
    }

    #[test]
    fn roundtrips_canonical_programs() {
        roundtrip(r#"o_1 = iota(Object, lambda o: color(o, "blue") and shape(o, "circle"))"#);
        roundtrip(
            r#"exists(Motion, lambda m_1: type(m_1, "scale") and direction(m_1, [1.0, 1.0]) and magnitude(m_1, [2.0, 2.0]) and origin(m_1, ["50%", "50%"]) and agent(m_1, o_1))"#,
        );
        roundtrip("t_before(m_1, m_2)");
    }

    #[test]
    fn roundtrips_mixed_boolean_structure() {
        roundtrip(r#"a(x) and (b(x) or c(x))"#);
        roundtrip(r#"not (a(x) and b(x)) or c(x)"#);
        roundtrip(r#"not a(x) and not b(x)"#);
        roundtrip(r#"(a(x) or b(x)) and c(x) or d(x)"#);
    }

    #[test]
    fn integral_numbers_print_with_decimal() {
        assert_eq!(format_number(100.0), "100.0");
        assert_eq!(format_number(2.5), "2.5");
        assert_eq!(format_number(-90.0), "-90.0");
        assert_eq!(format_number(0.25), "0.25");
    }
}
