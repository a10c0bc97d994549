//! Finite formal sums of basis monomials with exact coefficients. No zero
//! coefficient is ever stored; the zero element is the empty sum and
//! iteration order is the monomial order.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::coeff::Coefficient;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element<M> {
    terms: BTreeMap<M, Coefficient>,
}

impl<M: Ord + Clone> Default for Element<M> {
    fn default() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }
}

impl<M: Ord + Clone> Element<M> {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn monomial(m: M) -> Self {
        Self::term(m, Coefficient::one())
    }

    pub fn term(m: M, c: Coefficient) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &M) -> Option<&Coefficient> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: M, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add_ref(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.neg_ref());
        }
    }

    /// self += k * other, pruning zeros at every combination step.
    pub fn add_scaled(&mut self, other: &Self, k: &Coefficient) {
        if k.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.mul_ref(k));
        }
    }

    pub fn scaled(&self, k: &Coefficient) -> Self {
        let mut out = Element::zero();
        out.add_scaled(self, k);
        out
    }

    /// Maximal monomial under the weight order, with its coefficient.
    pub fn leading(&self) -> Option<(&M, &Coefficient)> {
        self.terms.iter().next_back()
    }

    /// Leading term of a nonzero element.
    pub fn leading_term(&self) -> Result<(&M, &Coefficient), Error> {
        self.leading().ok_or(Error::ZeroElement)
    }

    /// Ascending monomial order.
    pub fn iter(&self) -> impl Iterator<Item = (&M, &Coefficient)> {
        self.terms.iter()
    }

    /// Descending monomial order (the deterministic display order).
    pub fn iter_desc(&self) -> impl Iterator<Item = (&M, &Coefficient)> {
        self.terms.iter().rev()
    }

    /// Leading coefficient exactly the rational 1.
    pub fn is_monic(&self) -> bool {
        self.leading()
            .is_some_and(|(_, c)| c.as_rational().is_some_and(|r| num_traits::One::is_one(&r)))
    }

    /// Divide by the leading coefficient, which must be a nonzero rational.
    pub fn into_monic(self) -> Result<Self, Error> {
        let lc = {
            let (_, c) = self.leading_term()?;
            c.as_rational().ok_or_else(|| {
                Error::NonMonicRelation("leading coefficient is not rational".into())
            })?
        };
        let inv = num_traits::Inv::inv(lc);
        let mut out = Element::zero();
        for (m, c) in self.terms {
            out.add_term(m, c.mul_rational(&inv));
        }
        Ok(out)
    }
}

impl<M: Ord + Clone> Add for Element<M> {
    type Output = Element<M>;
    fn add(mut self, other: Element<M>) -> Element<M> {
        self.add_assign(&other);
        self
    }
}

impl<M: Ord + Clone> Sub for Element<M> {
    type Output = Element<M>;
    fn sub(mut self, other: Element<M>) -> Element<M> {
        self.sub_assign(&other);
        self
    }
}

impl<M: Ord + Clone> Neg for Element<M> {
    type Output = Element<M>;
    fn neg(self) -> Element<M> {
        let mut out = Element::zero();
        for (m, c) in self.terms {
            out.add_term(m, c.neg_ref());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::ModuleMonomial;
    use crate::symbols::{AlgGen, ModGen};

    #[test]
    fn zero_pruning_and_leading() {
        let y = ModuleMonomial::atom(ModGen(0));
        let v0y = y.prepend(AlgGen(0), 0);
        let mut e = Element::zero();
        e.add_term(y.clone(), Coefficient::from_int(3));
        e.add_term(v0y.clone(), Coefficient::one());
        e.add_term(y.clone(), Coefficient::from_int(-3));
        assert_eq!(e.len(), 1);
        assert_eq!(e.leading().unwrap().0, &v0y);
        assert!(e.is_monic());
        assert!(Element::<ModuleMonomial>::zero().leading_term().is_err());
    }

    #[test]
    fn monic_division() {
        let y = ModuleMonomial::atom(ModGen(0));
        let e = Element::term(y.clone(), Coefficient::from_int(-2));
        let m = e.into_monic().unwrap();
        assert_eq!(m, Element::monomial(y));
        let p = Element::term(
            ModuleMonomial::atom(ModGen(0)),
            Coefficient::parameter("alpha"),
        );
        assert!(p.into_monic().is_err());
    }
}
