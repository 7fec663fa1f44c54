//! Recursive-descent parser for MoVer programs.

use super::ast::{Arg, ArgScalar, Expr, Program, QuantKind, SortName, Span, Statement};
use super::lexer::{tokenize, Token, TokenKind};
use super::resolve::LangError;

pub fn parse(source: &str) -> Result<Program, LangError> {
    let tokens = tokenize(source)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        source,
    };
    let mut statements = Vec::new();
    while !parser.at_eof() {
        statements.push(parser.statement()?);
    }
    Ok(Program {
        statements,
        source: source.to_string(),
    })
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    source: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_kind(&self, ahead: usize) -> Option<&TokenKind> {
        self.tokens.get(self.pos + ahead).map(|t| &t.kind)
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek().kind, TokenKind::Eof)
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if !matches!(t.kind, TokenKind::Eof) {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> LangError {
        let t = self.peek();
        LangError::Syntax {
            line: t.line,
            col: t.col,
            message: format!("expected {expected}, found {}", t.kind.describe()),
        }
    }

    fn expect(&mut self, kind: &TokenKind, expected: &str) -> Result<Token, LangError> {
        if &self.peek().kind == kind {
            Ok(self.advance())
        } else {
            Err(self.error(expected))
        }
    }

    fn expect_ident(&mut self, expected: &str) -> Result<(String, Token), LangError> {
        match self.peek().kind.clone() {
            TokenKind::Ident(name) => {
                let tok = self.advance();
                Ok((name, tok))
            }
            _ => Err(self.error(expected)),
        }
    }

    fn statement(&mut self) -> Result<Statement, LangError> {
        let start_tok = self.peek().clone();
        // Lookahead for `IDENT =`.
        let binding = match (&self.peek().kind, self.peek_kind(1)) {
            (TokenKind::Ident(name), Some(TokenKind::Assign)) => {
                let name = name.clone();
                self.advance();
                self.advance();
                Some(name)
            }
            _ => None,
        };
        let expr = self.expr()?;
        let end = self.prev_end_offset();
        Ok(Statement {
            binding,
            expr,
            span: Span {
                start: start_tok.offset,
                end,
                line: start_tok.line,
                col: start_tok.col,
            },
        })
    }

    fn prev_end_offset(&self) -> usize {
        // Offset just past the previously consumed token.
        if self.pos == 0 {
            return 0;
        }
        let prev = &self.tokens[self.pos - 1];
        match &prev.kind {
            TokenKind::Ident(s) => prev.offset + s.len(),
            TokenKind::Str(s) => prev.offset + s.len() + 2,
            TokenKind::Number(_) => {
                // Scan forward from the token offset over number characters.
                let bytes = self.source.as_bytes();
                let mut end = prev.offset;
                if end < bytes.len() && bytes[end] == b'-' {
                    end += 1;
                }
                while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
                    end += 1;
                }
                end
            }
            TokenKind::Eof => prev.offset,
            _ => prev.offset + 1,
        }
    }

    fn expr(&mut self) -> Result<Expr, LangError> {
        if let TokenKind::Ident(name) = &self.peek().kind {
            if matches!(name.as_str(), "iota" | "exists" | "all")
                && matches!(self.peek_kind(1), Some(TokenKind::LParen))
            {
                return self.quantifier();
            }
        }
        self.or_expr()
    }

    fn quantifier(&mut self) -> Result<Expr, LangError> {
        let (kw, _) = self.expect_ident("quantifier keyword")?;
        let kind = match kw.as_str() {
            "iota" => QuantKind::Iota,
            "exists" => QuantKind::Exists,
            "all" => QuantKind::All,
            _ => unreachable!("caller checked the keyword"),
        };
        self.expect(&TokenKind::LParen, "'('")?;
        let (sort_name, sort_tok) = self.expect_ident("sort name Object or Motion")?;
        let sort = match sort_name.as_str() {
            "Object" => SortName::Object,
            "Motion" => SortName::Motion,
            other => {
                return Err(LangError::Syntax {
                    line: sort_tok.line,
                    col: sort_tok.col,
                    message: format!("expected sort Object or Motion, found {other:?}"),
                })
            }
        };
        self.expect(&TokenKind::Comma, "','")?;
        let (lambda_kw, lambda_tok) = self.expect_ident("'lambda'")?;
        if lambda_kw != "lambda" {
            return Err(LangError::Syntax {
                line: lambda_tok.line,
                col: lambda_tok.col,
                message: format!("expected 'lambda', found {lambda_kw:?}"),
            });
        }
        let (var, _) = self.expect_ident("lambda parameter name")?;
        self.expect(&TokenKind::Colon, "':'")?;
        let body = self.or_expr()?;
        self.expect(&TokenKind::RParen, "')'")?;
        Ok(Expr::Quantifier {
            kind,
            sort,
            var,
            body: Box::new(body),
        })
    }

    fn or_expr(&mut self) -> Result<Expr, LangError> {
        let mut left = self.and_expr()?;
        while self.peek_keyword("or") {
            self.advance();
            let right = self.and_expr()?;
            left = Expr::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn and_expr(&mut self) -> Result<Expr, LangError> {
        let mut left = self.unary()?;
        while self.peek_keyword("and") {
            self.advance();
            let right = self.unary()?;
            left = Expr::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if s == kw)
    }

    fn unary(&mut self) -> Result<Expr, LangError> {
        if self.peek_keyword("not") {
            self.advance();
            let inner = self.unary()?;
            return Ok(Expr::Not(Box::new(inner)));
        }
        if matches!(self.peek().kind, TokenKind::LParen) {
            self.advance();
            let inner = self.or_expr()?;
            self.expect(&TokenKind::RParen, "')'")?;
            return Ok(inner);
        }
        if let TokenKind::Ident(name) = &self.peek().kind {
            if matches!(name.as_str(), "iota" | "exists" | "all")
                && matches!(self.peek_kind(1), Some(TokenKind::LParen))
            {
                // Quantifiers are not boolean atoms; they appear only at
                // statement level or as call arguments.
                let t = self.peek();
                return Err(LangError::Syntax {
                    line: t.line,
                    col: t.col,
                    message: "quantifier cannot appear inside a boolean expression".into(),
                });
            }
            if matches!(self.peek_kind(1), Some(TokenKind::LParen)) {
                return self.call();
            }
        }
        Err(self.error("predicate call, 'not', or '('"))
    }

    fn call(&mut self) -> Result<Expr, LangError> {
        let (name, _) = self.expect_ident("predicate name")?;
        self.expect(&TokenKind::LParen, "'('")?;
        let mut args = Vec::new();
        if !matches!(self.peek().kind, TokenKind::RParen) {
            loop {
                args.push(self.arg()?);
                if matches!(self.peek().kind, TokenKind::Comma) {
                    self.advance();
                } else {
                    break;
                }
            }
        }
        self.expect(&TokenKind::RParen, "')'")?;
        Ok(Expr::Call { name, args })
    }

    fn arg(&mut self) -> Result<Arg, LangError> {
        match self.peek().kind.clone() {
            TokenKind::Number(n) => {
                self.advance();
                Ok(Arg::Num(n))
            }
            TokenKind::Str(s) => {
                self.advance();
                Ok(Arg::Str(s))
            }
            TokenKind::LBracket => {
                self.advance();
                let mut items = Vec::new();
                if !matches!(self.peek().kind, TokenKind::RBracket) {
                    loop {
                        match self.peek().kind.clone() {
                            TokenKind::Number(n) => {
                                self.advance();
                                items.push(ArgScalar::Num(n));
                            }
                            TokenKind::Str(s) => {
                                self.advance();
                                items.push(ArgScalar::Str(s));
                            }
                            _ => return Err(self.error("number or string inside list")),
                        }
                        if matches!(self.peek().kind, TokenKind::Comma) {
                            self.advance();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(&TokenKind::RBracket, "']'")?;
                Ok(Arg::List(items))
            }
            TokenKind::Ident(name) => {
                if matches!(name.as_str(), "iota" | "exists" | "all")
                    && matches!(self.peek_kind(1), Some(TokenKind::LParen))
                {
                    return Ok(Arg::Expr(self.quantifier()?));
                }
                if matches!(self.peek_kind(1), Some(TokenKind::LParen)) {
                    return Ok(Arg::Expr(self.call()?));
                }
                self.advance();
                Ok(Arg::Var(name))
            }
            _ => Err(self.error("argument")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binding_with_two_predicates() {
        let p = parse(r#"o_1 = iota(Object, lambda o: color(o, "blue") and shape(o, "circle"))"#)
            .unwrap();
        assert_eq!(p.statements.len(), 1);
        let stmt = &p.statements[0];
        assert_eq!(stmt.binding.as_deref(), Some("o_1"));
        match &stmt.expr {
            Expr::Quantifier { kind, sort, var, body } => {
                assert_eq!(*kind, QuantKind::Iota);
                assert_eq!(*sort, SortName::Object);
                assert_eq!(var, "o");
                assert!(matches!(**body, Expr::And(_, _)));
            }
            other => panic!("unexpected expr {other:?}"),
        }
    }

    #[test]
    fn bare_exists_with_list_literal() {
        let p = parse(
            r#"exists(Motion, lambda m_1: type(m_1, "scale") and direction(m_1, [1.0, 1.0]))"#,
        )
        .unwrap();
        assert_eq!(p.statements.len(), 1);
        assert!(p.statements[0].binding.is_none());
    }

    #[test]
    fn nested_quantifier_as_argument() {
        let p = parse(r#"agent(m_1, iota(Object, lambda o: shape(o, "square")))"#).unwrap();
        match &p.statements[0].expr {
            Expr::Call { name, args } => {
                assert_eq!(name, "agent");
                assert!(matches!(args[1], Arg::Expr(Expr::Quantifier { .. })));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let p = parse("# leading comment\n\nt_before(m_1, m_2) # trailing\n").unwrap();
        assert_eq!(p.statements.len(), 1);
        assert_eq!(p.statement_source(0), "t_before(m_1, m_2)");
    }

    #[test]
    fn precedence_not_binds_tighter_than_and_than_or() {
        let p = parse(r#"not a(x) and b(x) or c(x)"#).unwrap();
        // ((not a) and b) or c
        match &p.statements[0].expr {
            Expr::Or(l, r) => {
                assert!(matches!(**r, Expr::Call { .. }));
                match &**l {
                    Expr::And(al, ar) => {
                        assert!(matches!(**al, Expr::Not(_)));
                        assert!(matches!(**ar, Expr::Call { .. }));
                    }
                    other => panic!("unexpected {other:?}"),
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn negative_numbers_and_percent_strings() {
        let p = parse(r#"direction(m, [-1.0, 0.0]) origin(m, ["50%", "50%"])"#).unwrap();
        assert_eq!(p.statements.len(), 2);
        match &p.statements[0].expr {
            Expr::Call { args, .. } => match &args[1] {
                Arg::List(items) => assert_eq!(items[0], ArgScalar::Num(-1.0)),
                other => panic!("unexpected {other:?}"),
            },
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse("t_before(m_1,,)").unwrap_err();
        match err {
            LangError::Syntax { line, col, .. } => {
                assert_eq!(line, 1);
                assert!(col > 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
