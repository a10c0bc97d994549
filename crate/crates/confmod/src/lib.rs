//! Symbolic kernel for modules over free associative conformal algebras:
//! normalization of arbitrary bracketed words onto the canonical
//! right-normed basis, verification of rewriting bases through the three
//! composition types, and enumeration of normal-form bases, over exact
//! rational (optionally parametric) coefficients.

pub mod action;
pub mod axioms;
pub mod cli;
pub mod coeff;
pub mod display;
pub mod element;
mod error;
pub mod gsb;
pub mod monomial;
pub mod parse;
pub mod presets;
pub mod report;
pub mod symbols;

pub use crate::action::{Context, NormalizedWord, RawWord};
pub use crate::coeff::Coefficient;
pub use crate::element::Element;
pub use crate::error::{Error, ParseError};
pub use crate::gsb::{AlgebraRelation, Presentation};
pub use crate::monomial::{AlgebraMonomial, ModuleMonomial, Weight, Word};
pub use crate::parse::{parse_expression, ExpressionAst};
pub use crate::symbols::{AlgGen, LocalityMap, ModGen, Symbol, SymbolTable};
