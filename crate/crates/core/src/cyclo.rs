//! The cyclotomic field Q(ξ_N) in the power basis of Q[x]/(Φ_N(x)).
//!
//! Elements are length-φ(N) coefficient vectors of exact rationals. All
//! divisions performed by the calculus are by monomials ξ^j, which are
//! units, so working in the true field (mod the cyclotomic polynomial
//! rather than mod x^N - 1) loses nothing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Error;
use crate::Result;

/// Exact rational number. `num_rational::BigRational` keeps the fraction
/// reduced with a positive denominator, which is exactly the invariant the
/// calculus needs.
pub type Rat = BigRational;

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Coefficients of the N-th cyclotomic polynomial, constant term first.
///
/// Computed by dividing x^N - 1 by the cyclotomic polynomials of the
/// proper divisors; exact integer arithmetic throughout.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = poly_exact_div_int(&num, &phi_d);
        }
    }
    num
}

/// Rational-coefficient copy of Φ_N, memoized per level.
fn modulus(level: u64) -> Arc<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<Rat>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(level)
        .or_insert_with(|| {
            Arc::new(
                cyclotomic_poly(level)
                    .into_iter()
                    .map(Rat::from_integer)
                    .collect(),
            )
        })
        .clone()
}

fn poly_exact_div_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn].clone();
    assert!(lead.is_one());
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        quot[k] = c.clone();
        for i in 0..=dn {
            rem[k + i] -= &c * &den[i];
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact poly division");
    quot
}

/// Element of Q(ξ_N), stored as coefficients of 1, ξ, ..., ξ^{φ(N)-1}.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloNum {
    level: u64,
    coeffs: Vec<Rat>,
}

impl CycloNum {
    pub fn zero(level: u64) -> Self {
        let phi = euler_phi(level) as usize;
        CycloNum {
            level,
            coeffs: vec![Rat::zero(); phi],
        }
    }

    pub fn one(level: u64) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[0] = Rat::one();
        z
    }

    pub fn from_rat(level: u64, r: Rat) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[0] = r;
        z
    }

    pub fn from_i64(level: u64, n: i64) -> Self {
        Self::from_rat(level, rat_i64(n))
    }

    /// ξ_N^j as a field element (reduces x^j mod Φ_N).
    pub fn root(level: u64, j: i64) -> Self {
        let n = level as i64;
        let j = j.rem_euclid(n) as usize;
        let mut poly = vec![Rat::zero(); j + 1];
        poly[j] = Rat::one();
        Self::reduce(level, poly)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Some(r) when the element lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn reduce(level: u64, mut poly: Vec<Rat>) -> Self {
        let modulus = modulus(level);
        let deg = modulus.len() - 1;
        while poly.len() > deg {
            let k = poly.len() - 1;
            let c = poly[k].clone();
            if !c.is_zero() {
                for i in 0..=deg {
                    let t = &c * &modulus[i];
                    poly[k - deg + i] -= t;
                }
            }
            poly.pop();
        }
        poly.resize(deg, Rat::zero());
        CycloNum {
            level,
            coeffs: poly,
        }
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CycloNum {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.level);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// Q[x] against Φ_N.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rat() {
            return Ok(Self::from_rat(self.level, r.recip()));
        }
        // Invariants: r0 = t0 * a (mod Φ), r1 = t1 * a (mod Φ).
        let mut r0 = modulus(self.level).as_ref().clone();
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut t0: Vec<Rat> = vec![];
        let mut t1: Vec<Rat> = vec![Rat::one()];
        while poly_deg(&r1) > 0 {
            let (q, rem) = poly_divmod(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = t2;
        }
        if r1.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let c = r1[0].recip();
        let inv_poly: Vec<Rat> = t1.iter().map(|x| x * &c).collect();
        Ok(Self::reduce(self.level, inv_poly))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        Ok(self * &other.inv()?)
    }
}

fn trim(p: &mut Vec<Rat>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_deg(p: &[Rat]) -> isize {
    p.len() as isize - 1
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dn = den.len() - 1;
    if rem.len() <= dn {
        return (vec![], rem);
    }
    let lead = den[dn].clone();
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![Rat::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = &rem[k + dn] / &lead;
        quot[k] = c.clone();
        for i in 0..=dn {
            let t = &c * &den[i];
            rem[k + i] -= t;
        }
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        assert_eq!(self.level, rhs.level, "level mismatch");
        CycloNum {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        assert_eq!(self.level, rhs.level, "level mismatch");
        CycloNum {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        assert_eq!(self.level, rhs.level, "level mismatch");
        let prod = poly_mul(&self.coeffs, &rhs.coeffs);
        CycloNum::reduce(self.level, prod)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: CycloNum) -> CycloNum {
        &self + &rhs
    }
}

impl Sub for CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: CycloNum) -> CycloNum {
        &self - &rhs
    }
}

impl Mul for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: CycloNum) -> CycloNum {
        &self * &rhs
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        assert_eq!(self.level, rhs.level, "level mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        assert_eq!(self.level, rhs.level, "level mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl MulAssign<&CycloNum> for CycloNum {
    fn mul_assign(&mut self, rhs: &CycloNum) {
        *self = &*self * rhs;
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a.is_one() {
                        write!(f, "ξ")?;
                    } else {
                        write!(f, "{a}·ξ")?;
                    }
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        let phi = |n| {
            cyclotomic_poly(n)
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        assert_eq!(phi(1), "-1,1");
        assert_eq!(phi(2), "1,1");
        assert_eq!(phi(3), "1,1,1");
        assert_eq!(phi(4), "1,0,1");
        assert_eq!(phi(6), "1,-1,1");
        assert_eq!(phi(12), "1,0,-1,0,1");
    }

    #[test]
    fn embed_roots() {
        assert!(CycloNum::root(1, 0).is_one());
        assert_eq!(CycloNum::root(2, 1), CycloNum::from_i64(2, -1));
        // ξ_4^2 = -1 after reduction mod x^2 + 1
        let i = CycloNum::root(4, 1);
        assert_eq!(&i * &i, CycloNum::root(4, 2));
        assert_eq!(&i * &i, CycloNum::from_i64(4, -1));
    }

    #[test]
    fn roots_are_multiplicative() {
        for n in [1u64, 2, 3, 4, 6, 5] {
            for j in 0..n as i64 {
                for k in 0..n as i64 {
                    let a = CycloNum::root(n, j);
                    let b = CycloNum::root(n, k);
                    assert_eq!(&a * &b, CycloNum::root(n, j + k), "N={n} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn root_order() {
        for n in [1u64, 2, 3, 4, 6] {
            let xi = CycloNum::root(n, 1);
            assert!(xi.pow(n).is_one(), "ξ_{n}^{n} != 1");
        }
    }

    #[test]
    fn inverse_of_units() {
        for n in [2u64, 3, 4, 6] {
            for j in 0..n as i64 {
                let a = CycloNum::root(n, j);
                let inv = a.inv().unwrap();
                assert!((&a * &inv).is_one());
                assert_eq!(inv, CycloNum::root(n, -j));
            }
        }
        // a generic element
        let a = &CycloNum::root(6, 1).scale(&rat_frac(3, 2)) + &CycloNum::from_i64(6, 7);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn field_axioms_randomized() {
        // Deterministic LCG; 200 triples per level.
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state
        };
        for n in [1u64, 2, 3, 4, 6] {
            let phi = euler_phi(n) as usize;
            let mut rand_elt = |next: &mut dyn FnMut() -> u64| {
                let mut c = CycloNum::zero(n);
                for i in 0..phi {
                    let num = (next() % 19) as i64 - 9;
                    let den = (next() % 7) as i64 + 1;
                    c.coeffs[i] = rat_frac(num, den);
                }
                c
            };
            for _ in 0..200 {
                let a = rand_elt(&mut next);
                let b = rand_elt(&mut next);
                let c = rand_elt(&mut next);
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert_eq!(&a * &b, &b * &a);
                if !a.is_zero() {
                    let inv = a.inv().unwrap();
                    assert!((&a * &inv).is_one());
                }
            }
        }
    }

    #[test]
    fn level_mismatch_is_reported() {
        let a = CycloNum::one(2);
        let b = CycloNum::one(3);
        assert!(matches!(a.div(&b), Err(Error::LevelMismatch(2, 3))));
    }
}
