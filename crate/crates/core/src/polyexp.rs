//! Generalized polynomials `Σ c · ξ^{χm} · m^δ` with exact cyclotomic
//! coefficients, in one or two integer variables.
//!
//! These carry the coefficient side of the localization map and the
//! two-boundary power-sum expansions: for level N = 1 every character χ is
//! trivial and the types degenerate to ordinary polynomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclo::{CycloNum, Rat};

/// One-variable generalized polynomial: terms (χ, δ) → coefficient,
/// representing Σ c · ξ^{χ·m} · m^δ. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyExp {
    level: u64,
    terms: BTreeMap<(u64, u32), CycloNum>,
}

impl PolyExp {
    pub fn zero(level: u64) -> Self {
        PolyExp {
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(level: u64) -> Self {
        Self::monomial(level, 0, 0, CycloNum::one(level))
    }

    pub fn constant(level: u64, c: CycloNum) -> Self {
        Self::monomial(level, 0, 0, c)
    }

    pub fn monomial(level: u64, chi: u64, delta: u32, c: CycloNum) -> Self {
        let mut p = Self::zero(level);
        p.add_term(chi, delta, c);
        p
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, u32, &CycloNum)> {
        self.terms.iter().map(|(&(chi, d), c)| (chi, d, c))
    }

    pub fn coeff(&self, chi: u64, delta: u32) -> CycloNum {
        self.terms
            .get(&(chi % self.level.max(1), delta))
            .cloned()
            .unwrap_or_else(|| CycloNum::zero(self.level))
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|&(_, d)| d).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, chi: u64, delta: u32, c: CycloNum) {
        if c.is_zero() {
            return;
        }
        let key = (chi % self.level.max(1), delta);
        let entry = self
            .terms
            .entry(key)
            .or_insert_with(|| CycloNum::zero(self.level));
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level);
        let mut out = self.clone();
        for (chi, d, c) in other.terms() {
            out.add_term(chi, d, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&CycloNum::from_i64(self.level, -1)))
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        let mut out = Self::zero(self.level);
        if c.is_zero() {
            return out;
        }
        for (chi, d, a) in self.terms() {
            out.add_term(chi, d, a * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level);
        let mut out = Self::zero(self.level);
        for (chi1, d1, c1) in self.terms() {
            for (chi2, d2, c2) in other.terms() {
                out.add_term(chi1 + chi2, d1 + d2, c1 * c2);
            }
        }
        out
    }

    /// Substitutes m -> m + shift (exact binomial expansion; the character
    /// part contributes the constant ξ^{χ·shift}).
    pub fn compose_shift(&self, shift: i64) -> Self {
        if shift == 0 {
            return self.clone();
        }
        let mut out = Self::zero(self.level);
        for (chi, d, c) in self.terms() {
            let root = CycloNum::root(self.level, chi as i64 * shift);
            for k in 0..=d {
                let bin = crate::bernoulli::binomial_i64(d as i64, (d - k) as u64);
                let pow = Rat::from_integer(bin * num_bigint::BigInt::from(shift).pow(d - k));
                out.add_term(chi, k, (c * &root).scale(&pow));
            }
        }
        out
    }

    /// Exact evaluation at a non-negative integer argument.
    pub fn eval(&self, m: i64) -> CycloNum {
        let mut acc = CycloNum::zero(self.level);
        for (chi, d, c) in self.terms() {
            let root = CycloNum::root(self.level, chi as i64 * m);
            let pow = Rat::from_integer(num_bigint::BigInt::from(m).pow(d));
            acc += &(c * &root).scale(&pow);
        }
        acc
    }
}

impl fmt::Debug for PolyExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (chi, d, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if chi != 0 {
                write!(f, "·ξ^({chi}m)")?;
            }
            if d == 1 {
                write!(f, "·m")?;
            } else if d > 1 {
                write!(f, "·m^{d}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Two-variable generalized polynomial in boundary variables (lo, hi):
/// terms ((χ, δ), (χ', δ')) → coefficient, representing
/// Σ c · ξ^{χ·lo} lo^δ · ξ^{χ'·hi} hi^δ'.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyExp2 {
    level: u64,
    terms: BTreeMap<((u64, u32), (u64, u32)), CycloNum>,
}

impl PolyExp2 {
    pub fn zero(level: u64) -> Self {
        PolyExp2 {
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[allow(clippy::type_complexity)]
    pub fn terms(&self) -> impl Iterator<Item = ((u64, u32), (u64, u32), &CycloNum)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn add_term(&mut self, lo: (u64, u32), hi: (u64, u32), c: CycloNum) {
        if c.is_zero() {
            return;
        }
        let n = self.level.max(1);
        let key = ((lo.0 % n, lo.1), (hi.0 % n, hi.1));
        let entry = self
            .terms
            .entry(key)
            .or_insert_with(|| CycloNum::zero(self.level));
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level);
        let mut out = self.clone();
        for (lo, hi, c) in other.terms() {
            out.add_term(lo, hi, c.clone());
        }
        out
    }

    /// Largest δ + δ' over all stored terms.
    pub fn max_total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|&((_, d), (_, d2))| d + d2)
            .max()
            .unwrap_or(0)
    }

    /// Exact evaluation at integer boundaries, lo possibly negative
    /// (the block sums are evaluated at shifted boundaries such as -1).
    pub fn eval(&self, lo: i64, hi: i64) -> CycloNum {
        let mut acc = CycloNum::zero(self.level);
        for ((chi, d), (chi2, d2), c) in self.terms() {
            let root = CycloNum::root(self.level, chi as i64 * lo + chi2 as i64 * hi);
            let pow = Rat::from_integer(
                num_bigint::BigInt::from(lo).pow(d) * num_bigint::BigInt::from(hi).pow(d2),
            );
            acc += &(c * &root).scale(&pow);
        }
        acc
    }

    /// Views a one-variable polynomial as depending on `lo` only.
    pub fn from_lo(p: &PolyExp) -> Self {
        let mut out = Self::zero(p.level());
        for (chi, d, c) in p.terms() {
            out.add_term((chi, d), (0, 0), c.clone());
        }
        out
    }

    /// Views a one-variable polynomial as depending on `hi` only.
    pub fn from_hi(p: &PolyExp) -> Self {
        let mut out = Self::zero(p.level());
        for (chi, d, c) in p.terms() {
            out.add_term((0, 0), (chi, d), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level);
        let mut out = Self::zero(self.level);
        for (lo1, hi1, c1) in self.terms() {
            for (lo2, hi2, c2) in other.terms() {
                out.add_term(
                    (lo1.0 + lo2.0, lo1.1 + lo2.1),
                    (hi1.0 + hi2.0, hi1.1 + hi2.1),
                    c1 * c2,
                );
            }
        }
        out
    }
}

impl fmt::Debug for PolyExp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((chi, d), (chi2, d2), c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if chi != 0 {
                write!(f, "·ξ^({chi}·lo)")?;
            }
            if d > 0 {
                write!(f, "·lo^{d}")?;
            }
            if chi2 != 0 {
                write!(f, "·ξ^({chi2}·hi)")?;
            }
            if d2 > 0 {
                write!(f, "·hi^{d2}")?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat_i64;

    fn c(level: u64, n: i64) -> CycloNum {
        CycloNum::from_i64(level, n)
    }

    #[test]
    fn shift_matches_direct_evaluation() {
        // p(m) = 3 m^2 + ξ^m · m over N = 4
        let mut p = PolyExp::zero(4);
        p.add_term(0, 2, c(4, 3));
        p.add_term(1, 1, CycloNum::one(4));
        let q = p.compose_shift(-1);
        for m in 0..10 {
            assert_eq!(q.eval(m), p.eval(m - 1), "m={m}");
        }
    }

    #[test]
    fn mul_and_eval() {
        let mut a = PolyExp::zero(2);
        a.add_term(1, 1, c(2, 2)); // 2·(-1)^m·m
        let mut b = PolyExp::zero(2);
        b.add_term(1, 0, c(2, 1)); // (-1)^m
        let ab = a.mul(&b);
        // (-1)^{2m} = 1, so ab = 2m
        assert_eq!(ab.eval(7), c(2, 14));
        assert_eq!(ab.coeff(0, 1), c(2, 2));
    }

    #[test]
    fn zero_terms_are_not_stored() {
        let mut a = PolyExp::zero(1);
        a.add_term(0, 3, c(1, 5));
        a.add_term(0, 3, c(1, -5));
        assert!(a.is_zero());
    }

    #[test]
    fn two_variable_eval() {
        let mut b = PolyExp2::zero(1);
        b.add_term((0, 1), (0, 2), c(1, 1)); // lo·hi^2
        b.add_term((0, 0), (0, 0), c(1, -7));
        assert_eq!(b.eval(-1, 3), c(1, -9 - 7));
    }

    #[test]
    fn eval_at_zero_power_zero_base() {
        // m^0 at m = 0 must count as 1 (empty product).
        let p = PolyExp::one(1);
        assert_eq!(p.eval(0), c(1, 1));
    }
}
