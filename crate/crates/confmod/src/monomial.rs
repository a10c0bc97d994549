//! The two monomial universes and their weight-lexicographic well ordering.
//!
//! A module monomial is a right-normed word b1_(n1)...bk_(nk) D^i y; an
//! algebra monomial is the mirror with an algebra generator in the tail.
//! Words compare by weight (|u|, b1, n1, ..., bk, nk, tail, i) read
//! lexicographically, so length dominates and the D-degree breaks ties last.

use std::cmp::Ordering;

use crate::symbols::{AlgGen, ModGen};

/// A generator symbol usable as a word tail.
pub trait Generator: Copy + Ord + std::hash::Hash {
    fn index(self) -> u32;
}

impl Generator for AlgGen {
    fn index(self) -> u32 {
        self.0
    }
}

impl Generator for ModGen {
    fn index(self) -> u32 {
        self.0
    }
}

/// A right-normed basis word with chain pairs (b_j, n_j), a D-power on the
/// tail, and the tail generator itself.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word<T> {
    chain: Vec<(AlgGen, u32)>,
    d_degree: u32,
    tail: T,
}

/// A basis word of the free module (tail is a module generator).
pub type ModuleMonomial = Word<ModGen>;

/// A basis word of the free algebra (tail is an algebra generator).
pub type AlgebraMonomial = Word<AlgGen>;

impl<T: Generator> Word<T> {
    pub fn new(chain: Vec<(AlgGen, u32)>, d_degree: u32, tail: T) -> Self {
        Word {
            chain,
            d_degree,
            tail,
        }
    }

    /// The bare generator as a word of length 1.
    pub fn atom(tail: T) -> Self {
        Word::new(Vec::new(), 0, tail)
    }

    /// D^d applied to a bare generator.
    pub fn d_atom(d_degree: u32, tail: T) -> Self {
        Word::new(Vec::new(), d_degree, tail)
    }

    /// Word length |u| = k + 1.
    pub fn length(&self) -> usize {
        self.chain.len() + 1
    }

    pub fn chain(&self) -> &[(AlgGen, u32)] {
        &self.chain
    }

    pub fn d_degree(&self) -> u32 {
        self.d_degree
    }

    pub fn tail(&self) -> T {
        self.tail
    }

    /// D-free means no D-power anywhere; for a basis word only the tail
    /// carries D.
    pub fn is_d_free(&self) -> bool {
        self.d_degree == 0
    }

    pub fn prepend(&self, b: AlgGen, n: u32) -> Self {
        let mut chain = Vec::with_capacity(self.chain.len() + 1);
        chain.push((b, n));
        chain.extend_from_slice(&self.chain);
        Word::new(chain, self.d_degree, self.tail)
    }

    /// Raise the tail D-degree by `i` (the word written u D^i).
    pub fn raised(&self, i: u32) -> Self {
        Word::new(self.chain.clone(), self.d_degree + i, self.tail)
    }

    pub fn with_d_degree(&self, d_degree: u32) -> Self {
        Word::new(self.chain.clone(), d_degree, self.tail)
    }

    pub fn with_exponent(&self, pos: usize, n: u32) -> Self {
        let mut chain = self.chain.clone();
        chain[pos].1 = n;
        Word::new(chain, self.d_degree, self.tail)
    }

    /// Split off the leading letter: `u = b1_(n1) [u1]`.
    pub fn split_head(&self) -> Option<((AlgGen, u32), Word<T>)> {
        let (&head, rest) = self.chain.split_first()?;
        Some((head, Word::new(rest.to_vec(), self.d_degree, self.tail)))
    }

    /// Prefix chain pairs prepended to this word.
    pub fn with_prefix(&self, prefix: &[(AlgGen, u32)]) -> Self {
        let mut chain = Vec::with_capacity(prefix.len() + self.chain.len());
        chain.extend_from_slice(prefix);
        chain.extend_from_slice(&self.chain);
        Word::new(chain, self.d_degree, self.tail)
    }
}

impl<T: Generator> Ord for Word<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.chain
            .len()
            .cmp(&other.chain.len())
            .then_with(|| self.chain.cmp(&other.chain))
            .then_with(|| self.tail.cmp(&other.tail))
            .then_with(|| self.d_degree.cmp(&other.d_degree))
    }
}

impl<T: Generator> PartialOrd for Word<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The weight tuple (|u|, b1, n1, ..., bk, nk, tail, i) with generators
/// encoded by table index. Lexicographic comparison of weights agrees with
/// `Word::cmp`, and `of` is injective on each universe.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Weight {
    pub length: u32,
    pub pairs: Vec<(u32, u32)>,
    pub tail: u32,
    pub d_degree: u32,
}

impl Weight {
    pub fn of<T: Generator>(u: &Word<T>) -> Weight {
        Weight {
            length: u.length() as u32,
            pairs: u.chain.iter().map(|&(b, n)| (b.index(), n)).collect(),
            tail: u.tail.index(),
            d_degree: u.d_degree,
        }
    }
}

/// Weight of a module monomial.
pub fn weight(u: &ModuleMonomial) -> Weight {
    Weight::of(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> AlgGen {
        AlgGen(0)
    }
    fn y() -> ModGen {
        ModGen(0)
    }

    #[test]
    fn weight_reads_off_the_word() {
        // y
        assert_eq!(
            Weight::of(&ModuleMonomial::atom(y())),
            Weight { length: 1, pairs: vec![], tail: 0, d_degree: 0 }
        );
        // v_(0) y
        let u = ModuleMonomial::atom(y()).prepend(v(), 0);
        assert_eq!(
            Weight::of(&u),
            Weight { length: 2, pairs: vec![(0, 0)], tail: 0, d_degree: 0 }
        );
        // v_(1) v_(0) D^2 y
        let u = ModuleMonomial::d_atom(2, y()).prepend(v(), 0).prepend(v(), 1);
        assert_eq!(
            Weight::of(&u),
            Weight { length: 3, pairs: vec![(0, 1), (0, 0)], tail: 0, d_degree: 2 }
        );
    }

    #[test]
    fn length_dominates_the_order() {
        // D^5 y < v_(0) y
        let d5y = ModuleMonomial::d_atom(5, y());
        let v0y = ModuleMonomial::atom(y()).prepend(v(), 0);
        assert!(d5y < v0y);
        // y == y
        assert_eq!(
            ModuleMonomial::atom(y()).cmp(&ModuleMonomial::atom(y())),
            Ordering::Equal
        );
        // D y > y: same tail, D-degree decides last
        assert!(ModuleMonomial::d_atom(1, y()) > ModuleMonomial::atom(y()));
    }

    #[test]
    fn weight_comparison_matches_word_comparison() {
        let words = [
            ModuleMonomial::atom(y()),
            ModuleMonomial::d_atom(3, y()),
            ModuleMonomial::atom(y()).prepend(v(), 1),
            ModuleMonomial::d_atom(1, y()).prepend(v(), 0),
            ModuleMonomial::atom(y()).prepend(v(), 0).prepend(v(), 1),
        ];
        for a in &words {
            for b in &words {
                assert_eq!(a.cmp(b), Weight::of(a).cmp(&Weight::of(b)));
            }
        }
    }
}
