//! Deterministic textual rendering of words, elements, weights and raw
//! expressions. Every emitted form reparses under the expression grammar.

use num_traits::{One, Signed};

use crate::action::RawWord;
use crate::coeff::Coefficient;
use crate::element::Element;
use crate::monomial::{AlgebraMonomial, Generator, ModuleMonomial, Word};
use crate::parse::ExpressionAst;
use crate::symbols::{AlgGen, ModGen, Symbol, SymbolTable};

/// Tail symbols that can be named through the table.
pub trait TailName: Generator {
    fn name(self, table: &SymbolTable) -> &str;
}

impl TailName for AlgGen {
    fn name(self, table: &SymbolTable) -> &str {
        table.algebra_name(self)
    }
}

impl TailName for ModGen {
    fn name(self, table: &SymbolTable) -> &str {
        table.module_name(self)
    }
}

pub fn render_word<T: TailName>(u: &Word<T>, table: &SymbolTable) -> String {
    let mut out = String::new();
    for &(b, n) in u.chain() {
        out.push_str(table.algebra_name(b));
        out.push_str(&format!("_({}) ", n));
    }
    match u.d_degree() {
        0 => {}
        1 => out.push_str("D "),
        d => out.push_str(&format!("D^{} ", d)),
    }
    out.push_str(u.tail().name(table));
    out
}

pub fn render_module_monomial(u: &ModuleMonomial, table: &SymbolTable) -> String {
    render_word(u, table)
}

pub fn render_algebra_monomial(a: &AlgebraMonomial, table: &SymbolTable) -> String {
    render_word(a, table)
}

/// Canonical weight rendering "(k+1; b1,n1; ...; y,i)".
pub fn render_weight<T: TailName>(u: &Word<T>, table: &SymbolTable) -> String {
    let mut out = format!("({}", u.length());
    for &(b, n) in u.chain() {
        out.push_str(&format!("; {},{}", table.algebra_name(b), n));
    }
    out.push_str(&format!("; {},{})", u.tail().name(table), u.d_degree()));
    out
}

/// Splits a coefficient into an extracted sign and the body text used in a
/// rendered term. Pure rationals and plain parameters stay bare; anything
/// else is parenthesized so the output reparses.
fn term_body(c: &Coefficient, word: &str) -> (bool, String) {
    if let Some(r) = c.as_rational() {
        let neg = r.is_negative();
        let mag = r.abs();
        if mag.is_one() {
            return (neg, word.to_string());
        }
        return (neg, format!("{} * {}", mag, word));
    }
    if let Some(p) = c.as_plain_parameter() {
        return (false, format!("{} * {}", p, word));
    }
    let negated = c.neg_ref();
    if let Some(p) = negated.as_plain_parameter() {
        return (true, format!("{} * {}", p, word));
    }
    (false, format!("({}) * {}", c, word))
}

fn render_terms(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (neg, body)) in parts.into_iter().enumerate() {
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

pub fn render_element<T: TailName>(e: &Element<Word<T>>, table: &SymbolTable) -> String {
    render_terms(
        e.iter_desc()
            .map(|(m, c)| term_body(c, &render_word(m, table)))
            .collect(),
    )
}

pub fn render_module_element(e: &Element<ModuleMonomial>, table: &SymbolTable) -> String {
    render_element(e, table)
}

pub fn render_algebra_element(e: &Element<AlgebraMonomial>, table: &SymbolTable) -> String {
    render_element(e, table)
}

pub fn render_raw_word(w: &RawWord, table: &SymbolTable) -> String {
    match w {
        RawWord::Atom { d_degree, symbol } => {
            let name = match symbol {
                Symbol::Algebra(b) => table.algebra_name(*b),
                Symbol::Module(y) => table.module_name(*y),
            };
            match d_degree {
                0 => name.to_string(),
                1 => format!("D {}", name),
                d => format!("D^{} {}", d, name),
            }
        }
        RawWord::Product { left, n, right } => {
            let left_str = match **left {
                RawWord::Atom { .. } => render_raw_word(left, table),
                RawWord::Product { .. } => format!("({})", render_raw_word(left, table)),
            };
            format!("{}_({}) {}", left_str, n, render_raw_word(right, table))
        }
    }
}

pub fn render_expression(ast: &ExpressionAst, table: &SymbolTable) -> String {
    render_terms(
        ast.terms
            .iter()
            .map(|(c, w)| term_body(c, &render_raw_word(w, table)))
            .collect(),
    )
}
