//! The expression grammar and its recursive-descent parser.
//!
//! ```text
//! element := ['-'] term (('+'|'-') term)*
//! term    := [coef '*'] word
//! word    := wfactor | wfactor '_(' nat ')' word
//! wfactor := atom | '(' word ')'
//! atom    := ident | 'D' ident | 'D^' nat ident
//! coef    := rational | parameter | '(' poly ')'
//! poly    := ['-'] pterm (('+'|'-') pterm)*
//! pterm   := pfactor ('*' pfactor)*
//! pfactor := (rational | parameter | '(' poly ')') ['^' nat]
//! ```
//!
//! Unparenthesized chains associate to the right, so `v_(0) v_(1) D^2 y`
//! is the right-normed word v_(0)(v_(1)(D^2 y)).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::action::{Context, NormalizedWord, RawWord};
use crate::coeff::Coefficient;
use crate::element::Element;
use crate::error::{Error, ParseError};
use crate::monomial::{AlgebraMonomial, ModuleMonomial};
use crate::symbols::SymbolTable;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    SubscriptOpen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Nat(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::SubscriptOpen => write!(f, "`_(`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '_' => {
                if bytes.get(i + 1) == Some(&b'(') {
                    toks.push((i, Tok::SubscriptOpen));
                    i += 2;
                } else {
                    return Err(ParseError::new(i, "`_`", &["`_(`"]));
                }
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((start, Tok::Nat(text[start..i].to_string())));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                i += 1;
                loop {
                    match bytes.get(i) {
                        Some(b) if b.is_ascii_alphanumeric() => i += 1,
                        Some(b'_') => {
                            // an underscore stays inside the identifier only
                            // when followed by an alphanumeric; `v_(0)` lexes
                            // as `v` then `_(`.
                            if bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric()) {
                                i += 2;
                            } else {
                                break;
                            }
                        }
                        _ => break,
                    }
                }
                toks.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => {
                return Err(ParseError::new(
                    i,
                    format!("`{c}`"),
                    &["identifier", "number", "operator"],
                ))
            }
        }
    }
    Ok(toks)
}

/// A parsed expression: terms with extracted sign-folded coefficients, each
/// lowered to a bracketed raw word. Term order is the textual order.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpressionAst {
    pub terms: Vec<(Coefficient, RawWord)>,
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    table: &'a SymbolTable,
    parameters: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn found(&self) -> String {
        self.toks
            .get(self.pos)
            .map_or("end of input".to_string(), |(_, t)| t.to_string())
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(ParseError::new(self.offset(), self.found(), &[expected]))
        }
    }

    fn err(&self, expected: &[&str]) -> ParseError {
        ParseError::new(self.offset(), self.found(), expected)
    }

    fn nat_string(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Nat(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(&["number"])),
        }
    }

    fn nat_u32(&mut self) -> Result<u32, ParseError> {
        let offset = self.offset();
        let s = self.nat_string()?;
        s.parse::<u32>()
            .map_err(|_| ParseError::new(offset, format!("`{s}`"), &["number below 2^32"]))
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let num = self.nat_string()?;
        let num = BigInt::from_str(&num).expect("digit string");
        if self.eat(&Tok::Slash) {
            let offset = self.offset();
            let den = self.nat_string()?;
            let den = BigInt::from_str(&den).expect("digit string");
            if den.is_zero() {
                return Err(ParseError::new(offset, "`0`", &["nonzero denominator"]));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn is_parameter(&self, name: &str) -> bool {
        self.parameters.iter().any(|p| p == name)
    }

    fn pfactor(&mut self) -> Result<Coefficient, ParseError> {
        let base = match self.peek().cloned() {
            Some(Tok::Nat(_)) => Coefficient::from_rational(self.rational()?),
            Some(Tok::Ident(name)) if self.is_parameter(&name) => {
                self.pos += 1;
                Coefficient::parameter(&name)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.poly()?;
                self.expect(Tok::RParen, "`)`")?;
                inner
            }
            _ => return Err(self.err(&["rational", "parameter", "`(`"])),
        };
        if self.eat(&Tok::Caret) {
            let e = self.nat_u32()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn pterm(&mut self) -> Result<Coefficient, ParseError> {
        let mut acc = self.pfactor()?;
        while self.eat(&Tok::Star) {
            acc = acc.mul_ref(&self.pfactor()?);
        }
        Ok(acc)
    }

    fn poly(&mut self) -> Result<Coefficient, ParseError> {
        let mut negative = self.eat(&Tok::Minus);
        let mut acc = Coefficient::zero();
        loop {
            let t = self.pterm()?;
            acc = if negative { acc.sub_ref(&t) } else { acc.add_ref(&t) };
            if self.eat(&Tok::Plus) {
                negative = false;
            } else if self.eat(&Tok::Minus) {
                negative = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn coef_atom(&mut self) -> Result<Coefficient, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Nat(_)) => Ok(Coefficient::from_rational(self.rational()?)),
            Some(Tok::Ident(name)) if self.is_parameter(&name) => {
                self.pos += 1;
                Ok(Coefficient::parameter(&name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.poly()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.err(&["rational", "parameter", "`(`"])),
        }
    }

    fn atom(&mut self) -> Result<RawWord, ParseError> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) if name == "D" => {
                self.pos += 1;
                let d_degree = if self.eat(&Tok::Caret) { self.nat_u32()? } else { 1 };
                let offset = self.offset();
                match self.peek().cloned() {
                    Some(Tok::Ident(name)) if name != "D" => {
                        let symbol = self.table.resolve(&name).ok_or_else(|| {
                            ParseError::new(offset, format!("`{name}`"), &["generator"])
                        })?;
                        self.pos += 1;
                        Ok(RawWord::Atom { d_degree, symbol })
                    }
                    _ => Err(self.err(&["generator"])),
                }
            }
            Some(Tok::Ident(name)) => {
                let symbol = self
                    .table
                    .resolve(&name)
                    .ok_or_else(|| ParseError::new(offset, format!("`{name}`"), &["generator"]))?;
                self.pos += 1;
                Ok(RawWord::Atom {
                    d_degree: 0,
                    symbol,
                })
            }
            _ => Err(self.err(&["generator", "`D`", "`(`"])),
        }
    }

    /// A parenthesized group may hold a whole linear combination; products
    /// against it distribute bilinearly, so every parse still lowers to
    /// plain (coefficient, word-tree) terms.
    fn wfactor(&mut self) -> Result<WordSum, ParseError> {
        if self.eat(&Tok::LParen) {
            let inner = self.element_sum()?;
            self.expect(Tok::RParen, "`)`")?;
            Ok(inner)
        } else {
            Ok(vec![(Coefficient::one(), self.atom()?)])
        }
    }

    fn word(&mut self) -> Result<WordSum, ParseError> {
        let first = self.wfactor()?;
        if self.eat(&Tok::SubscriptOpen) {
            let n = self.nat_u32()?;
            self.expect(Tok::RParen, "`)`")?;
            let rest = self.word()?;
            let mut out = Vec::with_capacity(first.len() * rest.len());
            for (c1, w1) in &first {
                for (c2, w2) in &rest {
                    out.push((
                        c1.mul_ref(c2),
                        RawWord::Product {
                            left: Box::new(w1.clone()),
                            n,
                            right: Box::new(w2.clone()),
                        },
                    ));
                }
            }
            Ok(out)
        } else {
            Ok(first)
        }
    }

    fn term(&mut self) -> Result<WordSum, ParseError> {
        let save = self.pos;
        if let Ok(c) = self.coef_atom() {
            if self.eat(&Tok::Star) {
                let mut sum = self.word()?;
                for (k, _) in sum.iter_mut() {
                    *k = k.mul_ref(&c);
                }
                return Ok(sum);
            }
        }
        self.pos = save;
        self.word()
    }

    fn element_sum(&mut self) -> Result<WordSum, ParseError> {
        let mut terms = Vec::new();
        let mut negative = self.eat(&Tok::Minus);
        loop {
            let mut sum = self.term()?;
            if negative {
                for (k, _) in sum.iter_mut() {
                    *k = k.neg_ref();
                }
            }
            terms.extend(sum);
            if self.eat(&Tok::Plus) {
                negative = false;
            } else if self.eat(&Tok::Minus) {
                negative = true;
            } else {
                return Ok(terms);
            }
        }
    }

    fn element(&mut self) -> Result<ExpressionAst, ParseError> {
        Ok(ExpressionAst {
            terms: self.element_sum()?,
        })
    }
}

type WordSum = Vec<(Coefficient, RawWord)>;

/// Parses an expression against the symbol table and the declared
/// parameters. The literal `0` denotes the empty sum.
pub fn parse_expression(
    text: &str,
    table: &SymbolTable,
    parameters: &[String],
) -> Result<ExpressionAst, ParseError> {
    let toks = lex(text)?;
    if let [(_, Tok::Nat(s))] = toks.as_slice() {
        if s == "0" {
            return Ok(ExpressionAst { terms: Vec::new() });
        }
    }
    let mut parser = Parser {
        end: text.len(),
        toks,
        pos: 0,
        table,
        parameters,
    };
    let ast = parser.element()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err(&["`+`", "`-`", "end of input"]));
    }
    Ok(ast)
}

/// Lowers a parsed expression to a normalized element. All terms must lie
/// in the same universe; the empty sum lowers to the zero module element.
pub fn lower(ast: &ExpressionAst, ctx: &Context) -> Result<NormalizedWord, Error> {
    let mut acc: Option<NormalizedWord> = None;
    for (c, w) in &ast.terms {
        let part = ctx.normalize(w)?;
        acc = Some(match (acc, part) {
            (None, NormalizedWord::Module(f)) => NormalizedWord::Module(f.scaled(c)),
            (None, NormalizedWord::Algebra(g)) => NormalizedWord::Algebra(g.scaled(c)),
            (Some(NormalizedWord::Module(mut t)), NormalizedWord::Module(f)) => {
                t.add_scaled(&f, c);
                NormalizedWord::Module(t)
            }
            (Some(NormalizedWord::Algebra(mut t)), NormalizedWord::Algebra(g)) => {
                t.add_scaled(&g, c);
                NormalizedWord::Algebra(t)
            }
            _ => {
                return Err(Error::MalformedWord(
                    "expression mixes module and algebra terms".into(),
                ))
            }
        });
    }
    Ok(acc.unwrap_or(NormalizedWord::Module(Element::zero())))
}

pub fn parse_module_element(
    text: &str,
    ctx: &Context,
    parameters: &[String],
) -> Result<Element<ModuleMonomial>, Error> {
    let ast = parse_expression(text, ctx.symbols(), parameters)?;
    match lower(&ast, ctx)? {
        NormalizedWord::Module(f) => Ok(f),
        NormalizedWord::Algebra(_) => Err(Error::MalformedWord(
            "expected a module expression".into(),
        )),
    }
}

pub fn parse_algebra_element(
    text: &str,
    ctx: &Context,
    parameters: &[String],
) -> Result<Element<AlgebraMonomial>, Error> {
    let ast = parse_expression(text, ctx.symbols(), parameters)?;
    if ast.terms.is_empty() {
        return Ok(Element::zero());
    }
    match lower(&ast, ctx)? {
        NormalizedWord::Algebra(g) => Ok(g),
        NormalizedWord::Module(_) => Err(Error::MalformedWord(
            "expected an algebra expression".into(),
        )),
    }
}

/// Parses and normalizes, returning whichever universe the expression
/// belongs to.
pub fn parse_any_element(
    text: &str,
    ctx: &Context,
    parameters: &[String],
) -> Result<NormalizedWord, Error> {
    let ast = parse_expression(text, ctx.symbols(), parameters)?;
    lower(&ast, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::LocalityMap;

    fn ctx() -> Context {
        let table = SymbolTable::new(vec!["v".into()], vec!["y".into()]).unwrap();
        Context::new(table, LocalityMap::uniform(2).unwrap())
    }

    #[test]
    fn chains_associate_to_the_right() {
        let c = ctx();
        let e = parse_module_element("v_(0) v_(1) D^2 y", &c, &[]).unwrap();
        assert_eq!(e.len(), 1);
        let u = e.leading().unwrap().0;
        assert_eq!(u.chain().to_vec(), vec![(crate::symbols::AlgGen(0), 0), (crate::symbols::AlgGen(0), 1)]);
        assert_eq!(u.d_degree(), 2);
    }

    #[test]
    fn grouped_products_fold_through_the_action() {
        let c = ctx();
        let grouped = parse_module_element("(v_(1) v)_(2) y", &c, &[]).unwrap();
        assert!(grouped.is_zero());
    }

    #[test]
    fn signs_and_coefficients_fold_into_terms() {
        let c = ctx();
        let params = vec!["alpha".to_string()];
        let ast = parse_expression("v_(0) y - D y - alpha*y", c.symbols(), &params).unwrap();
        assert_eq!(ast.terms.len(), 3);
        assert!(ast.terms[1].0.as_rational().unwrap() == num_rational::BigRational::from_integer((-1).into()));
        assert_eq!(ast.terms[2].0, Coefficient::parameter("alpha").neg_ref());
        let e = parse_module_element("- 3/2 * D y + (1 - alpha)*y", &c, &params).unwrap();
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn errors_carry_offsets_and_expected_tokens() {
        let c = ctx();
        // unknown generator
        let err = parse_expression("w_(0) y", c.symbols(), &[]).unwrap_err();
        assert_eq!(err.offset, 0);
        assert!(err.expected.contains(&"generator".to_string()));
        // unclosed subscript
        let err = parse_expression("v_(0 y", c.symbols(), &[]).unwrap_err();
        assert_eq!(err.offset, 5);
        // trailing garbage
        let err = parse_expression("y )", c.symbols(), &[]).unwrap_err();
        assert_eq!(err.offset, 2);
        // oversized exponent
        assert!(parse_expression("D^99999999999 y", c.symbols(), &[]).is_err());
        // undeclared parameter used as a coefficient
        assert!(parse_expression("alpha * y", c.symbols(), &[]).is_err());
        // zero denominator
        assert!(parse_expression("1/0 * y", c.symbols(), &[]).is_err());
    }

    #[test]
    fn zero_literal_is_the_empty_sum() {
        let c = ctx();
        let e = parse_module_element("0", &c, &[]).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn mixed_universes_are_rejected() {
        let c = ctx();
        assert!(matches!(
            parse_any_element("v + y", &c, &[]),
            Err(Error::MalformedWord(_))
        ));
        assert!(matches!(
            parse_module_element("v_(1) v", &c, &[]),
            Err(Error::MalformedWord(_))
        ));
    }
}
