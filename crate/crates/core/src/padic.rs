//! Precision-tracked p-adic numbers and Teichmüller lifts.
//!
//! A nonzero number is stored as `p^val * unit + O(p^prec)` where `unit`
//! is a p-adic unit kept modulo `p^(prec-val)`; a number whose digits are
//! all unknown is stored as `O(p^prec)` with no valuation. Arithmetic
//! propagates the minimum justified absolute precision: addition takes the
//! min of the inputs, multiplication the valuation-shifted min, and
//! division by `p^k` lowers absolute precision by `k`.
//!
//! Roots of unity of order N | p-1 are embedded through the Teichmüller
//! character: the chosen representative of ξ_N^j is the Hensel lift of
//! `g^{j(p-1)/N} mod p`, where `g` is the smallest primitive root mod p.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

use crate::cyclo::{CycloNum, Rat};
use crate::error::Error;
use crate::Result;

#[derive(Clone, PartialEq, Eq)]
pub struct PadicNum {
    p: u64,
    /// None encodes O(p^prec): zero to working precision.
    val: Option<i64>,
    /// Unit part, reduced mod p^(prec - val); nonzero mod p when val is set.
    unit: BigUint,
    /// Absolute precision: the value is known modulo p^prec.
    prec: i64,
}

fn pow_p(p: u64, k: i64) -> BigUint {
    assert!(k >= 0, "negative p-power modulus");
    BigUint::from(p).pow(k as u32)
}

fn mod_inverse(a: &BigUint, modulus: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(modulus.clone());
    let e = a.extended_gcd(&m);
    if !e.gcd.is_one() {
        return None;
    }
    let x = e.x.mod_floor(&m);
    x.to_biguint()
}

impl PadicNum {
    pub fn zero(p: u64, prec: i64) -> Self {
        PadicNum {
            p,
            val: None,
            unit: BigUint::zero(),
            prec,
        }
    }

    pub fn one(p: u64, prec: i64) -> Self {
        Self::from_bigint(p, &BigInt::one(), prec)
    }

    pub fn from_u64(p: u64, x: u64, prec: i64) -> Self {
        Self::from_bigint(p, &BigInt::from(x), prec)
    }

    pub fn from_bigint(p: u64, x: &BigInt, prec: i64) -> Self {
        if x.is_zero() {
            return Self::zero(p, prec);
        }
        let pb = BigInt::from(p);
        let mut v: i64 = 0;
        let mut rest = x.clone();
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            v += 1;
            if v >= prec {
                return Self::zero(p, prec);
            }
        }
        let window = prec - v;
        let modulus = pow_p(p, window);
        let unit = rest.mod_floor(&BigInt::from(modulus.clone()));
        PadicNum {
            p,
            val: Some(v),
            unit: unit.to_biguint().unwrap(),
            prec,
        }
    }

    /// Embeds an exact rational at absolute precision `prec`.
    pub fn from_rat(p: u64, r: &Rat, prec: i64) -> Self {
        if r.is_zero() {
            return Self::zero(p, prec);
        }
        let pb = BigInt::from(p);
        let mut num = r.numer().clone();
        let mut den = r.denom().clone();
        let mut v: i64 = 0;
        while (&num % &pb).is_zero() {
            num /= &pb;
            v += 1;
        }
        while (&den % &pb).is_zero() {
            den /= &pb;
            v -= 1;
        }
        if v >= prec {
            return Self::zero(p, prec);
        }
        let window = prec - v;
        let modulus = pow_p(p, window);
        let nu = num.mod_floor(&BigInt::from(modulus.clone())).to_biguint().unwrap();
        let du = den.mod_floor(&BigInt::from(modulus.clone())).to_biguint().unwrap();
        let inv = mod_inverse(&du, &modulus).expect("denominator is a p-adic unit here");
        PadicNum {
            p,
            val: Some(v),
            unit: (nu * inv) % &modulus,
            prec,
        }
    }

    /// Embeds an element of Q(ξ_N) by sending ξ_N to its Teichmüller
    /// representative. Requires N | p-1 (or N = 1).
    pub fn from_cyclo(p: u64, c: &CycloNum, prec: i64) -> Result<Self> {
        let n = c.level();
        if n == 1 {
            return Ok(Self::from_rat(p, &c.coeffs()[0], prec));
        }
        let xi = teichmuller(p, n, 1, prec)?;
        let mut acc = Self::zero(p, prec);
        let mut power = Self::one(p, prec);
        for coeff in c.coeffs() {
            acc = &acc + &(&power * &Self::from_rat(p, coeff, prec));
            power = &power * &xi;
        }
        Ok(acc)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Valuation when at least one digit is known; None means O(p^prec).
    pub fn valuation(&self) -> Option<i64> {
        self.val
    }

    pub fn is_zero_at_precision(&self) -> bool {
        self.val.is_none()
    }

    fn normalized(p: u64, val: i64, unit: BigUint, prec: i64) -> Self {
        if unit.is_zero() || val >= prec {
            return Self::zero(p, prec);
        }
        let pb = BigUint::from(p);
        let mut v = val;
        let mut u = unit;
        while (&u % &pb).is_zero() {
            u /= &pb;
            v += 1;
            if v >= prec {
                return Self::zero(p, prec);
            }
        }
        let modulus = pow_p(p, prec - v);
        PadicNum {
            p,
            val: Some(v),
            unit: u % modulus,
            prec,
        }
    }

    /// Lowers the absolute precision (raising it is never justified).
    pub fn truncate(&self, prec: i64) -> Self {
        assert!(prec <= self.prec, "cannot raise precision by truncation");
        match self.val {
            None => Self::zero(self.p, prec),
            Some(v) => Self::normalized(self.p, v, self.unit.clone(), prec),
        }
    }

    /// The represented residue as an integer in [0, p^k), only meaningful
    /// when the valuation is >= 0. k = min(prec, requested).
    pub fn residue(&self, k: i64) -> Option<BigUint> {
        let k = k.min(self.prec);
        match self.val {
            None => Some(BigUint::zero()),
            Some(v) if v >= 0 => {
                if v >= k {
                    return Some(BigUint::zero());
                }
                let m = pow_p(self.p, k);
                Some((pow_p(self.p, v) * &self.unit) % m)
            }
            Some(_) => None,
        }
    }

    pub fn mul_p_power(&self, k: i64) -> Self {
        match self.val {
            None => Self::zero(self.p, self.prec + k),
            Some(v) => PadicNum {
                p: self.p,
                val: Some(v + k),
                unit: self.unit.clone(),
                prec: self.prec + k,
            },
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let Some(v) = self.val else {
            return Err(Error::DivisionByZero);
        };
        let window = self.prec - v;
        let modulus = pow_p(self.p, window);
        let inv = mod_inverse(&self.unit, &modulus).ok_or(Error::DivisionByZero)?;
        // (p^v u)^{-1} = p^{-v} u^{-1}, known modulo p^{window - v}.
        Ok(PadicNum {
            p: self.p,
            val: Some(-v),
            unit: inv,
            prec: window - v,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.p, self.prec);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True when the two numbers agree modulo p^k.
    pub fn congruent(&self, other: &Self, k: i64) -> bool {
        assert_eq!(self.p, other.p);
        let k = k.min(self.prec).min(other.prec);
        let diff = self - other;
        match diff.val {
            None => diff.prec >= k,
            Some(v) => v >= k,
        }
    }

    /// Largest k <= cap such that self ≡ other mod p^k.
    pub fn agreement(&self, other: &Self, cap: i64) -> i64 {
        let cap = cap.min(self.prec).min(other.prec);
        let diff = self - other;
        match diff.val {
            None => cap,
            Some(v) => v.min(cap).max(0),
        }
    }

    /// Renders as an explicit digit string `d0 + d1·p + ... + O(p^prec)`,
    /// scaled by p^val when the valuation is negative.
    pub fn digits(&self) -> String {
        match self.val {
            None => format!("O({}^{})", self.p, self.prec),
            Some(v) => {
                let mut terms = Vec::new();
                let mut u = self.unit.clone();
                let pb = BigUint::from(self.p);
                let mut k = v;
                while !u.is_zero() && k < self.prec {
                    let d = (&u % &pb).to_u64().unwrap();
                    if d != 0 {
                        let term = match k {
                            0 => format!("{d}"),
                            1 => format!("{d}·{}", self.p),
                            _ => format!("{d}·{}^{k}", self.p),
                        };
                        terms.push(term);
                    }
                    u /= &pb;
                    k += 1;
                }
                if terms.is_empty() {
                    terms.push("0".to_string());
                }
                format!("{} + O({}^{})", terms.join(" + "), self.p, self.prec)
            }
        }
    }
}

impl std::ops::Add for &PadicNum {
    type Output = PadicNum;
    fn add(self, rhs: &PadicNum) -> PadicNum {
        assert_eq!(self.p, rhs.p, "prime mismatch");
        let prec = self.prec.min(rhs.prec);
        match (self.val, rhs.val) {
            (None, None) => PadicNum::zero(self.p, prec),
            (None, Some(_)) => rhs.truncate(prec),
            (Some(_), None) => self.truncate(prec),
            (Some(va), Some(vb)) => {
                let v0 = va.min(vb);
                if v0 >= prec {
                    return PadicNum::zero(self.p, prec);
                }
                let window = prec - v0;
                let modulus = pow_p(self.p, window);
                let a = (pow_p(self.p, va - v0) * &self.unit) % &modulus;
                let b = (pow_p(self.p, vb - v0) * &rhs.unit) % &modulus;
                PadicNum::normalized(self.p, v0, (a + b) % &modulus, prec)
            }
        }
    }
}

impl std::ops::Neg for &PadicNum {
    type Output = PadicNum;
    fn neg(self) -> PadicNum {
        match self.val {
            None => self.clone(),
            Some(v) => {
                let modulus = pow_p(self.p, self.prec - v);
                PadicNum {
                    p: self.p,
                    val: Some(v),
                    unit: (&modulus - &self.unit) % &modulus,
                    prec: self.prec,
                }
            }
        }
    }
}

impl std::ops::Sub for &PadicNum {
    type Output = PadicNum;
    fn sub(self, rhs: &PadicNum) -> PadicNum {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &PadicNum {
    type Output = PadicNum;
    fn mul(self, rhs: &PadicNum) -> PadicNum {
        assert_eq!(self.p, rhs.p, "prime mismatch");
        match (self.val, rhs.val) {
            (Some(va), Some(vb)) => {
                // a = p^va ua + O(p^Ma), b = p^vb ub + O(p^Mb)
                // ab = p^(va+vb) ua ub + O(p^min(Ma+vb, Mb+va))
                let prec = (self.prec + vb).min(rhs.prec + va);
                let v = va + vb;
                if v >= prec {
                    return PadicNum::zero(self.p, prec);
                }
                let modulus = pow_p(self.p, prec - v);
                PadicNum::normalized(self.p, v, (&self.unit * &rhs.unit) % modulus, prec)
            }
            // O(p^Ma) * (p^vb ub + O(p^Mb)) = O(p^(Ma+vb))
            (None, Some(vb)) => PadicNum::zero(self.p, self.prec + vb),
            (Some(va), None) => PadicNum::zero(self.p, rhs.prec + va),
            (None, None) => PadicNum::zero(self.p, self.prec.min(rhs.prec)),
        }
    }
}

impl fmt::Debug for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digits())
    }
}

impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digits())
    }
}

fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest primitive root modulo the prime p.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = factorize(p - 1);
    'outer: for g in 2..p {
        for q in &factors {
            let e = (p - 1) / q;
            let r = BigUint::from(g).modpow(&BigUint::from(e), &BigUint::from(p));
            if r.is_one() {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("no primitive root found for prime {p}")
}

/// The Teichmüller representative of ξ_N^j in Z_p, to absolute precision
/// `prec`: the unique root of x^N = 1 congruent to g^{j(p-1)/N} mod p,
/// where g is the smallest primitive root mod p. Requires N | p-1.
pub fn teichmuller(p: u64, n: u64, j: i64, prec: i64) -> Result<PadicNum> {
    if n == 0 || (n > 1 && (p - 1) % n != 0) {
        return Err(Error::UnsupportedLevel { n, p });
    }
    let jr = j.rem_euclid(n as i64) as u64;
    if n == 1 || jr == 0 {
        return Ok(PadicNum::one(p, prec));
    }
    let g = primitive_root(p);
    let exp = jr * ((p - 1) / n);
    let mut x = BigUint::from(g).modpow(&BigUint::from(exp), &BigUint::from(p));
    // Newton iteration on f(x) = x^N - 1; each step doubles the precision.
    let nn = BigUint::from(n);
    let mut k: i64 = 1;
    while k < prec {
        k = (2 * k).min(prec);
        let modulus = pow_p(p, k);
        let xn = x.modpow(&nn, &modulus);
        let f = (&xn + &modulus - BigUint::one()) % &modulus;
        let df = (&nn * x.modpow(&(&nn - BigUint::one()), &modulus)) % &modulus;
        let inv = mod_inverse(&df, &modulus).expect("f'(x) is a unit since p does not divide N");
        x = (&x + &modulus - (f * inv) % &modulus) % &modulus;
    }
    Ok(PadicNum::from_bigint(p, &BigInt::from(x), prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat_frac;

    #[test]
    fn basic_arithmetic() {
        let p = 5;
        let a = PadicNum::from_u64(p, 7, 10);
        let b = PadicNum::from_u64(p, 18, 10);
        assert_eq!((&a + &b).residue(10), PadicNum::from_u64(p, 25, 10).residue(10));
        assert_eq!((&a * &b).residue(10), PadicNum::from_u64(p, 126, 10).residue(10));
        let d = &a - &a;
        assert!(d.is_zero_at_precision());
    }

    #[test]
    fn precision_rules() {
        let p = 5;
        let a = PadicNum::from_u64(p, 7, 4);
        let b = PadicNum::from_u64(p, 3, 7);
        assert_eq!((&a + &b).precision(), 4);
        // v(10) = 1, so the product is known mod 5^(4+1)
        let c = PadicNum::from_u64(p, 10, 7);
        assert_eq!((&a * &c).precision(), 5);
        // division by p lowers absolute precision by 1
        let half = c.div(&PadicNum::from_u64(p, 5, 7)).unwrap();
        assert_eq!(half.precision(), 6);
        assert_eq!(half.residue(1).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn precision_contract_vs_high_precision_recompute() {
        // Deterministic grid: recompute at higher precision and compare residues.
        let p = 5;
        for (x, mx) in [(6i64, 4i64), (35, 5), (50, 6), (123, 7)] {
            for (y, my) in [(9i64, 5i64), (20, 6), (625, 8)] {
                let a = PadicNum::from_bigint(p, &BigInt::from(x), mx);
                let b = PadicNum::from_bigint(p, &BigInt::from(y), my);
                let hi_a = PadicNum::from_bigint(p, &BigInt::from(x), 20);
                let hi_b = PadicNum::from_bigint(p, &BigInt::from(y), 20);
                let s = &a + &b;
                let s_hi = &hi_a + &hi_b;
                assert_eq!(s.precision(), mx.min(my));
                assert!(s_hi.congruent(&s, s.precision()));
                let m = &a * &b;
                let m_hi = &hi_a * &hi_b;
                assert!(m_hi.congruent(&m, m.precision()));
            }
        }
    }

    #[test]
    fn rational_embedding() {
        let p = 5;
        let r = rat_frac(-1, 2);
        let x = PadicNum::from_rat(p, &r, 4);
        // -1/2 = (5^4 - 1)/2 = 312 mod 625
        assert_eq!(x.residue(4).unwrap(), BigUint::from(312u32));
        let two = PadicNum::from_u64(p, 2, 4);
        let sum = &(&x * &two) + &PadicNum::one(p, 4);
        assert!(sum.is_zero_at_precision());
    }

    #[test]
    fn teichmuller_examples() {
        // N=1: the only root is 1.
        let t = teichmuller(5, 1, 0, 4).unwrap();
        assert_eq!(t.residue(4).unwrap(), BigUint::one());
        // N=2, j=1: -1 = 624 mod 5^4.
        let t = teichmuller(5, 2, 1, 4).unwrap();
        assert_eq!(t.residue(4).unwrap(), BigUint::from(624u32));
        // N=4: fourth roots of unity mod 5^3.
        for j in 0..4 {
            let t = teichmuller(5, 4, j, 3).unwrap();
            let one = PadicNum::one(5, 3);
            assert!(t.pow(4).congruent(&one, 3), "j={j}");
        }
        // Unsupported pairing.
        assert!(matches!(
            teichmuller(5, 3, 1, 3),
            Err(Error::UnsupportedLevel { n: 3, p: 5 })
        ));
    }

    #[test]
    fn teichmuller_is_frobenius_fixed() {
        for (p, n, m) in [(5u64, 4u64, 6i64), (7, 2, 5), (13, 4, 5), (7, 6, 6)] {
            for j in 0..n as i64 {
                let t = teichmuller(p, n, j, m).unwrap();
                let tp = t.pow(p);
                assert!(tp.congruent(&t, m), "p={p} N={n} j={j}");
            }
        }
    }

    #[test]
    fn teichmuller_multiplicative() {
        let (p, n, m) = (13u64, 4u64, 6i64);
        for j in 0..4 {
            for k in 0..4 {
                let a = teichmuller(p, n, j, m).unwrap();
                let b = teichmuller(p, n, k, m).unwrap();
                let c = teichmuller(p, n, j + k, m).unwrap();
                assert!((&a * &b).congruent(&c, m));
            }
        }
    }

    #[test]
    fn cyclo_embedding_respects_relations() {
        // ξ_4^2 + 1 = 0 maps to 0.
        let c = CycloNum::root(4, 2);
        let x = PadicNum::from_cyclo(5, &c, 6).unwrap();
        let sum = &x + &PadicNum::one(5, 6);
        assert!(sum.is_zero_at_precision());
    }
}
