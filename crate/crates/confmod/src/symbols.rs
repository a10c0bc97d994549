//! Symbol tables and locality data: the generator sets of the acting
//! algebra and of the module, with the pairwise and uniform locality bounds.

use std::collections::BTreeMap;

use crate::error::Error;

/// Generator of the acting algebra, identified by declaration index.
/// Declaration order defines the total order used by the monomial ordering.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AlgGen(pub u32);

/// Generator of the module, identified by declaration index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ModGen(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Symbol {
    Algebra(AlgGen),
    Module(ModGen),
}

/// The generator names. Names are unique across both lists and must be
/// valid identifiers of the expression grammar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTable {
    algebra: Vec<String>,
    module: Vec<String>,
}

fn valid_name(name: &str) -> bool {
    if name == "D" || name.is_empty() || name.ends_with('_') {
        return false;
    }
    let mut chars = name.chars();
    let first = chars.next().unwrap();
    first.is_ascii_alphabetic()
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl SymbolTable {
    pub fn new(algebra: Vec<String>, module: Vec<String>) -> Result<Self, Error> {
        let mut seen = std::collections::BTreeSet::new();
        for name in algebra.iter().chain(module.iter()) {
            if !valid_name(name) {
                return Err(Error::InvalidPresentation(format!(
                    "`{name}` is not a valid generator name"
                )));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::InvalidPresentation(format!(
                    "generator `{name}` declared twice"
                )));
            }
        }
        if module.is_empty() {
            return Err(Error::InvalidPresentation(
                "at least one module generator is required".into(),
            ));
        }
        Ok(SymbolTable { algebra, module })
    }

    pub fn resolve(&self, name: &str) -> Option<Symbol> {
        if let Some(i) = self.algebra.iter().position(|n| n == name) {
            return Some(Symbol::Algebra(AlgGen(i as u32)));
        }
        self.module
            .iter()
            .position(|n| n == name)
            .map(|i| Symbol::Module(ModGen(i as u32)))
    }

    pub fn algebra_name(&self, g: AlgGen) -> &str {
        &self.algebra[g.0 as usize]
    }

    pub fn module_name(&self, g: ModGen) -> &str {
        &self.module[g.0 as usize]
    }

    pub fn algebra_gens(&self) -> impl Iterator<Item = AlgGen> + '_ {
        (0..self.algebra.len() as u32).map(AlgGen)
    }

    pub fn module_gens(&self) -> impl Iterator<Item = ModGen> + '_ {
        (0..self.module.len() as u32).map(ModGen)
    }

    pub fn algebra_len(&self) -> usize {
        self.algebra.len()
    }

    pub fn module_len(&self) -> usize {
        self.module.len()
    }
}

/// Pairwise locality orders N(b,b') and N(b,y) together with the uniform
/// bound N required by the basis-checking engine. Every pairwise value is
/// at most the uniform bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityMap {
    uniform: u32,
    algebra_pairs: BTreeMap<(AlgGen, AlgGen), u32>,
    module_pairs: BTreeMap<(AlgGen, ModGen), u32>,
}

impl LocalityMap {
    /// One bound for every pair.
    pub fn uniform(n: u32) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidPresentation(
                "uniform locality bound must be at least 1".into(),
            ));
        }
        Ok(LocalityMap {
            uniform: n,
            algebra_pairs: BTreeMap::new(),
            module_pairs: BTreeMap::new(),
        })
    }

    pub fn with_pairs(
        uniform: u32,
        algebra_pairs: BTreeMap<(AlgGen, AlgGen), u32>,
        module_pairs: BTreeMap<(AlgGen, ModGen), u32>,
    ) -> Result<Self, Error> {
        if uniform == 0 {
            return Err(Error::InvalidPresentation(
                "uniform locality bound must be at least 1".into(),
            ));
        }
        for v in algebra_pairs.values().chain(module_pairs.values()) {
            if *v > uniform {
                return Err(Error::InvalidPresentation(format!(
                    "pairwise locality {v} exceeds the uniform bound {uniform}"
                )));
            }
        }
        Ok(LocalityMap {
            uniform,
            algebra_pairs,
            module_pairs,
        })
    }

    /// The uniform bound N.
    pub fn bound(&self) -> u32 {
        self.uniform
    }

    pub fn algebra_pair(&self, a: AlgGen, b: AlgGen) -> u32 {
        self.algebra_pairs.get(&(a, b)).copied().unwrap_or(self.uniform)
    }

    pub fn module_pair(&self, a: AlgGen, y: ModGen) -> u32 {
        self.module_pairs.get(&(a, y)).copied().unwrap_or(self.uniform)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(SymbolTable::new(vec!["v".into()], vec!["v".into()]).is_err());
        assert!(SymbolTable::new(vec!["D".into()], vec!["y".into()]).is_err());
        assert!(SymbolTable::new(vec!["a_".into()], vec!["y".into()]).is_err());
        assert!(SymbolTable::new(vec!["1a".into()], vec!["y".into()]).is_err());
        let t = SymbolTable::new(vec!["a_1".into(), "v".into()], vec!["y".into()]).unwrap();
        assert_eq!(t.resolve("a_1"), Some(Symbol::Algebra(AlgGen(0))));
        assert_eq!(t.resolve("y"), Some(Symbol::Module(ModGen(0))));
        assert_eq!(t.resolve("zz"), None);
    }

    #[test]
    fn locality_defaults_to_uniform() {
        let m = LocalityMap::uniform(2).unwrap();
        assert_eq!(m.algebra_pair(AlgGen(0), AlgGen(1)), 2);
        assert_eq!(m.module_pair(AlgGen(0), ModGen(0)), 2);
        assert!(LocalityMap::uniform(0).is_err());
        let mut pairs = BTreeMap::new();
        pairs.insert((AlgGen(0), AlgGen(0)), 3);
        assert!(LocalityMap::with_pairs(2, pairs, BTreeMap::new()).is_err());
    }
}
