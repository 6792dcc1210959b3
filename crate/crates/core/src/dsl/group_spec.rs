use std::sync::Arc;

use super::{DslError, DslResult, ParseError};
use crate::group::FinGroup;
use crate::hom::direct_product;
use crate::library;
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(usize),
    Times,
    Caret,
    LParen,
    RParen,
    Colon,
    Comma,
    Semi,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(s) => format!("'{s}'"),
            Tok::Int(n) => format!("'{n}'"),
            Tok::Times => "'x'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Colon => "':'".into(),
            Tok::Comma => "','".into(),
            Tok::Semi => "';'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out: Vec<Token> = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: l0, column: c0 });
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            let n = s.parse().map_err(|_| ParseError::at(l0, c0, "an integer that fits in usize"))?;
            col += k - start;
            push(&mut out, Tok::Int(n));
            continue;
        }
        // an 'x' right after an operand is the product sign, so "Z2xZ4" reads as Z2 x Z4
        let after_operand = matches!(
            out.last().map(|t| &t.tok),
            Some(Tok::Int(_)) | Some(Tok::Name(_)) | Some(Tok::RParen)
        );
        if (c == 'x' || c == 'X' || c == '×') && after_operand {
            col += 1;
            k += 1;
            push(&mut out, Tok::Times);
            continue;
        }
        if c.is_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphabetic() {
                k += 1;
            }
            if k == start {
                return Err(ParseError::at(l0, c0, "an ASCII letter"));
            }
            col += k - start;
            push(&mut out, Tok::Name(chars[start..k].iter().collect()));
            continue;
        }
        let tok = match c {
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            _ => return Err(ParseError::at(l0, c0, format!("a group expression, found '{c}'"))),
        };
        push(&mut out, tok);
        col += 1;
        k += 1;
    }
    out.push(Token { tok: Tok::End, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        let t = self.peek();
        Err(ParseError::at(t.line, t.column, format!("{expected}, found {}", t.tok.describe())))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            self.fail(what)
        }
    }

    fn int(&mut self, what: &str) -> Result<usize, ParseError> {
        match self.peek().tok {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail(what),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.peek().tok == Tok::End {
            Ok(())
        } else {
            self.fail("end of input or 'x'")
        }
    }
}

fn validation(t: &Token, e: crate::Error) -> DslError {
    DslError::validation(format!("line {}, column {}", t.line, t.column), e)
}

/// Parses a group specification; see the module docs for the grammar.
pub fn parse_group(text: &str) -> DslResult<Arc<FinGroup>> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let head = p.peek().clone();
    let next_is_colon = |p: &Parser, k: usize| p.toks.get(k).is_some_and(|t| t.tok == Tok::Colon);
    if let Tok::Name(n) = &head.tok {
        let n = n.to_ascii_lowercase();
        if n == "perm" {
            p.bump();
            return parse_perm_spec(&mut p);
        }
        if n == "table" && next_is_colon(&p, 1) {
            p.bump();
            p.bump();
            return parse_table(&mut p, &head);
        }
    }
    let g = expr(&mut p)?;
    p.finish()?;
    Ok(g)
}

fn expr(p: &mut Parser) -> DslResult<Arc<FinGroup>> {
    let mut acc = factor(p)?;
    while p.peek().tok == Tok::Times {
        let t = p.bump();
        let rhs = factor(p)?;
        acc = product(&acc, &rhs).map_err(|e| validation(&t, e))?;
    }
    Ok(acc)
}

fn product(a: &Arc<FinGroup>, b: &Arc<FinGroup>) -> crate::Result<Arc<FinGroup>> {
    let label = format!("{} x {}", wrap(a.label()), wrap(b.label()));
    Ok(direct_product(a, b)?.group.with_label(label))
}

fn wrap(label: &str) -> String {
    if label.contains(' ') {
        format!("({label})")
    } else {
        label.to_string()
    }
}

fn factor(p: &mut Parser) -> DslResult<Arc<FinGroup>> {
    let base = atom(p)?;
    if p.peek().tok != Tok::Caret {
        return Ok(base);
    }
    let t = p.bump();
    let k = p.int("an exponent")?;
    if k == 0 {
        return Ok(FinGroup::trivial());
    }
    let mut acc = Arc::clone(&base);
    for _ in 1..k {
        acc = product(&acc, &base).map_err(|e| validation(&t, e))?;
    }
    Ok(acc.with_label(format!("{}^{k}", wrap(base.label()))))
}

fn atom(p: &mut Parser) -> DslResult<Arc<FinGroup>> {
    let t = p.peek().clone();
    match &t.tok {
        Tok::LParen => {
            p.bump();
            let g = expr(p)?;
            p.expect(Tok::RParen, "')' closing the group expression")?;
            Ok(g)
        }
        Tok::Name(name) => {
            p.bump();
            let key = match p.peek().tok {
                Tok::Int(n) => {
                    p.bump();
                    format!("{name}{n}")
                }
                _ => name.clone(),
            };
            library::lookup(&key).map_err(|e| {
                if e.is_resource_cap() {
                    validation(&t, e)
                } else {
                    ParseError::at(t.line, t.column, format!("a library group name, found '{key}'")).into()
                }
            })
        }
        _ => Ok(p.fail("a group name or '('")?),
    }
}

fn parse_perm_spec(p: &mut Parser) -> DslResult<Arc<FinGroup>> {
    let deg_tok = p.peek().clone();
    let degree = p.int("the permutation degree")?;
    if degree == 0 {
        return Err(ParseError::at(deg_tok.line, deg_tok.column, "a positive degree").into());
    }
    p.expect(Tok::Colon, "':' after the degree")?;
    let mut gens = Vec::new();
    if p.peek().tok != Tok::End {
        loop {
            gens.push(perm(p, degree)?);
            if p.peek().tok != Tok::Comma {
                break;
            }
            p.bump();
        }
    }
    p.finish()?;
    FinGroup::from_permutation_generators(degree, &gens).map_err(|e| validation(&deg_tok, e))
}

/// One or more cycles, the rightmost acting first.
fn perm(p: &mut Parser, degree: usize) -> DslResult<Perm> {
    let start = p.peek().clone();
    let mut cycles = Vec::new();
    while p.peek().tok == Tok::LParen {
        let open = p.bump();
        let mut cycle = Vec::new();
        loop {
            match p.peek().tok {
                Tok::Int(x) => {
                    let t = p.bump();
                    if x >= degree {
                        return Err(ParseError::at(t.line, t.column, format!("a point below {degree}")).into());
                    }
                    cycle.push(x);
                }
                Tok::Comma => {
                    p.bump();
                }
                Tok::RParen => {
                    p.bump();
                    break;
                }
                _ => {
                    let t = p.peek();
                    return Err(ParseError::at(
                        t.line,
                        t.column,
                        format!(
                            "')' closing the cycle opened at line {}, column {}, found {}",
                            open.line,
                            open.column,
                            t.tok.describe()
                        ),
                    )
                    .into());
                }
            }
        }
        cycles.push(cycle);
    }
    if cycles.is_empty() {
        return Ok(p.fail("a cycle '('")?);
    }
    Perm::from_cycles(degree, &cycles).map_err(|e| validation(&start, e))
}

fn parse_table(p: &mut Parser, head: &Token) -> DslResult<Arc<FinGroup>> {
    let mut rows = vec![Vec::new()];
    loop {
        match p.peek().tok {
            Tok::Int(x) => {
                p.bump();
                rows.last_mut().expect("nonempty").push(x);
            }
            Tok::Semi => {
                p.bump();
                rows.push(Vec::new());
            }
            Tok::End => break,
            _ => return Ok(p.fail("a table entry or ';'")?),
        }
    }
    if rows.last().is_some_and(|r| r.is_empty()) && rows.len() > 1 {
        rows.pop();
    }
    FinGroup::from_table("table", rows).map_err(|e| validation(head, e))
}

/// A `table:` spec that [`parse_group`] reads back to the same element ids.
pub fn table_spec(g: &FinGroup) -> String {
    let rows: Vec<String> = g
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    format!("table: {}", rows.join("; "))
}

/// An element of `g`: an id, or a cycle product when `g` is a permutation group.
pub fn parse_element(g: &FinGroup, text: &str) -> DslResult<usize> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let t = p.peek().clone();
    let x = match t.tok {
        Tok::Int(x) => {
            p.bump();
            x
        }
        Tok::LParen => {
            let perms = g.perms().ok_or_else(|| {
                ParseError::at(t.line, t.column, "an element id (the group is not a permutation group)")
            })?;
            let degree = perms[0].degree();
            let q = perm(&mut p, degree)?;
            g.find_perm(&q)
                .ok_or_else(|| ParseError::at(t.line, t.column, format!("a member of the group, {q} is not")))?
        }
        _ => return Ok(p.fail("an element id or a cycle product")?),
    };
    p.finish()?;
    if x >= g.order() {
        return Err(ParseError::at(t.line, t.column, format!("an element id below {}", g.order())).into());
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;

    fn parse_err(text: &str) -> ParseError {
        match parse_group(text) {
            Err(DslError::Parse(e)) => e,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn library_names() {
        assert_eq!(parse_group("Z 4").unwrap().order(), 4);
        assert_eq!(parse_group("z4").unwrap().order(), 4);
        assert_eq!(parse_group("q8").unwrap().order(), 8);
        assert_eq!(parse_group("dic3").unwrap().order(), 12);
        assert_eq!(parse_group("KLEIN").unwrap().order(), 4);
        assert!(are_isomorphic(&parse_group("d4").unwrap(), &library::dihedral(4).unwrap()).unwrap());
    }

    #[test]
    fn products_and_powers() {
        let g = parse_group("Z2 x S3").unwrap();
        assert_eq!(g.order(), 12);
        assert!(!g.is_abelian());
        assert_eq!(parse_group("Z2xZ4").unwrap().order(), 8);
        assert_eq!(parse_group("Z2^3").unwrap().order(), 8);
        assert_eq!(parse_group("(Z2 x Z2)^2").unwrap().order(), 16);
        assert_eq!(parse_group("Z2 x Z3 x Z2").unwrap().order(), 12);
        assert!(are_isomorphic(&parse_group("Z2 x Z3").unwrap(), &library::cyclic(6).unwrap()).unwrap());
    }

    #[test]
    fn permutation_specs() {
        let s3 = parse_group("perm 3: (0 1 2), (0 1)").unwrap();
        assert!(are_isomorphic(&s3, &library::symmetric(3).unwrap()).unwrap());
        let z4 = parse_group("perm 4: (0 1 2 3)").unwrap();
        assert_eq!(z4.order(), 4);
        // non-disjoint cycles compose right to left: (0 1)(1 2) = (0 1 2)
        let z3 = parse_group("perm 3: (0 1)(1 2)").unwrap();
        assert_eq!(z3.order(), 3);
        let p = z3.perm(z3.generators()[0]).unwrap().clone();
        assert_eq!(p, Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap());
    }

    #[test]
    fn tables_round_trip() {
        let d4 = library::dihedral(4).unwrap();
        let g = parse_group(&table_spec(&d4)).unwrap();
        assert_eq!(g.rows(), d4.rows());
        assert_eq!(parse_group("table: 0 1; 1 0").unwrap().order(), 2);
        assert!(matches!(
            parse_group("table: 0 1; 0 1"),
            Err(DslError::Validation { .. })
        ));
    }

    #[test]
    fn diagnostics() {
        let e = parse_err("perm 3: (0 1");
        assert_eq!((e.line, e.column), (1, 13));
        assert!(e.expected.contains("closing the cycle opened at line 1, column 9"), "{}", e.expected);
        let e = parse_err("Z2 x\n  Foo");
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.expected.contains("library group name"));
        let e = parse_err("Z2 x");
        assert!(e.expected.contains("group name"));
        let e = parse_err("(Z2 x Z3");
        assert!(e.expected.contains("')'"));
        let e = parse_err("perm 3: (0 5)");
        assert_eq!(e.column, 12);
        assert!(parse_group("S12").unwrap_err().is_resource_cap());
    }

    #[test]
    fn caps_are_validation_errors() {
        let e = parse_group("Z16 x Z16 x Z4").unwrap_err();
        assert!(e.is_resource_cap(), "{e}");
    }

    #[test]
    fn elements() {
        let s3 = parse_group("perm 3: (0 1 2), (0 1)").unwrap();
        let x = parse_element(&s3, "(0 2 1)").unwrap();
        assert_eq!(s3.element_order(x), 3);
        assert_eq!(parse_element(&s3, "0").unwrap(), 0);
        assert!(parse_element(&s3, "9").is_err());
        assert!(parse_element(&library::cyclic(3).unwrap(), "(0 1)").is_err());
    }
}
