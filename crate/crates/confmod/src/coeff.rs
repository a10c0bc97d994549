//! Exact coefficients: multivariate polynomials over the rationals in a
//! finite set of commuting parameters. The empty parameter set gives plain
//! rationals. No floating point anywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponents of a parameter monomial such as `alpha^2`, keyed by name.
pub type ParamPowers = BTreeMap<String, u32>;

/// A normalized polynomial: sorted monomials, no zero terms, reduced
/// fractions. The zero polynomial is the empty map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coefficient {
    terms: BTreeMap<ParamPowers, BigRational>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::default()
    }

    pub fn one() -> Self {
        Coefficient::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(ParamPowers::new(), r);
        }
        Coefficient { terms }
    }

    pub fn parameter(name: &str) -> Self {
        let mut powers = ParamPowers::new();
        powers.insert(name.to_string(), 1);
        let mut terms = BTreeMap::new();
        terms.insert(powers, BigRational::one());
        Coefficient { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a plain rational when no parameter occurs; zero is `0`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (powers, r) = self.terms.iter().next().unwrap();
                powers.is_empty().then(|| r.clone())
            }
            _ => None,
        }
    }

    /// `Some(name)` when the value is exactly one parameter to the first power.
    pub fn as_plain_parameter(&self) -> Option<&str> {
        if self.terms.len() != 1 {
            return None;
        }
        let (powers, r) = self.terms.iter().next().unwrap();
        if powers.len() == 1 && r.is_one() {
            let (name, exp) = powers.iter().next().unwrap();
            if *exp == 1 {
                return Some(name);
            }
        }
        None
    }

    /// Parameter names occurring in the polynomial.
    pub fn parameters(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().flat_map(|p| p.keys().map(String::as_str))
    }

    pub(crate) fn add_term(&mut self, powers: ParamPowers, r: BigRational) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(powers) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += r;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, r) in &other.terms {
            out.add_term(p.clone(), r.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, r) in &other.terms {
            out.add_term(p.clone(), -r.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> Self {
        Coefficient {
            terms: self.terms.iter().map(|(p, r)| (p.clone(), -r.clone())).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Coefficient::zero();
        for (pa, ra) in &self.terms {
            for (pb, rb) in &other.terms {
                let mut powers = pa.clone();
                for (name, e) in pb {
                    *powers.entry(name.clone()).or_insert(0) += e;
                }
                out.add_term(powers, ra * rb);
            }
        }
        out
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Coefficient::zero();
        }
        Coefficient {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Coefficient::one();
        for _ in 0..e {
            out = out.mul_ref(self);
        }
        out
    }

    /// Substitute a rational value for one parameter.
    pub fn substitute(&self, name: &str, value: &BigRational) -> Self {
        let mut out = Coefficient::zero();
        for (p, r) in &self.terms {
            match p.get(name) {
                None => out.add_term(p.clone(), r.clone()),
                Some(&e) => {
                    let mut powers = p.clone();
                    powers.remove(name);
                    let mut scaled = r.clone();
                    for _ in 0..e {
                        scaled *= value;
                    }
                    out.add_term(powers, scaled);
                }
            }
        }
        out
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, other: Coefficient) -> Coefficient {
        self.add_ref(&other)
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, other: Coefficient) -> Coefficient {
        self.sub_ref(&other)
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, other: Coefficient) -> Coefficient {
        self.mul_ref(&other)
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        self.neg_ref()
    }
}

/// Renders in the deterministic descending monomial order, e.g.
/// `2*alpha^2 - alpha + 1/2`. Reparses under the coefficient grammar.
impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (powers, r)) in self.terms.iter().rev().enumerate() {
            let neg = r.is_negative();
            let mag = r.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut wrote = false;
            if !mag.is_one() || powers.is_empty() {
                write!(f, "{}", mag)?;
                wrote = true;
            }
            for (name, e) in powers {
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "{}", name)?;
                if *e > 1 {
                    write!(f, "^{}", e)?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

/// Falling factorial n·(n-1)···(n-k+1); equals n!/(n-k)! and is 1 for k = 0.
pub fn falling(n: u32, k: u32) -> BigInt {
    debug_assert!(k <= n);
    let mut out = BigInt::one();
    for s in 0..k {
        out *= BigInt::from(n - s);
    }
    out
}

/// Binomial coefficient; zero when k > n.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_basics() {
        let a = Coefficient::parameter("alpha");
        let two = Coefficient::from_int(2);
        let p = a.clone().mul_ref(&a).add_ref(&two.mul_ref(&a)); // alpha^2 + 2 alpha
        assert_eq!(p.to_string(), "alpha^2 + 2*alpha");
        assert_eq!(p.sub_ref(&p), Coefficient::zero());
        assert!(Coefficient::from_ratio(2, 4).as_rational().unwrap()
            == BigRational::new(BigInt::from(1), BigInt::from(2)));
    }

    #[test]
    fn substitute_specializes() {
        let a = Coefficient::parameter("alpha");
        let p = a.mul_ref(&a).sub_ref(&a); // alpha^2 - alpha
        let at0 = p.substitute("alpha", &BigRational::zero());
        let at1 = p.substitute("alpha", &BigRational::one());
        assert!(at0.is_zero());
        assert!(at1.is_zero());
        let at2 = p.substitute("alpha", &BigRational::from_integer(BigInt::from(2)));
        assert_eq!(at2, Coefficient::from_int(2));
    }

    #[test]
    fn display_plain_forms() {
        assert_eq!(Coefficient::from_int(-2).to_string(), "-2");
        assert_eq!(Coefficient::from_ratio(1, 2).to_string(), "1/2");
        assert_eq!(Coefficient::parameter("alpha").to_string(), "alpha");
        assert_eq!(Coefficient::zero().to_string(), "0");
    }

    #[test]
    fn falling_and_binomial() {
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(5, 0), BigInt::one());
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
    }
}
