//! Bernoulli numbers in the convention B_1 = -1/2, with a persistent cache.
//!
//! The convention is forced by the Faulhaber expansion used everywhere in
//! this crate: with B_1 = -1/2 the closed form of `Σ_{k=0}^{m-1} k^l`
//! reproduces the literal sum exactly.
//!
//! Values are computed once per process by the standard recurrence
//! `Σ_{k=0}^{n} C(n+1,k) B_k = 0` and mirrored to `bernoulli.json` in the
//! cache directory (`PMZV_CACHE_DIR`, falling back to `$HOME/.cache/pmzv`,
//! falling back to the system temp dir). The file maps decimal indices to
//! "num/den" strings and is rewritten atomically whenever it is extended.
//! Reads are concurrent; extensions are serialized by a single writer lock.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use crate::cyclo::Rat;

static TABLE: OnceLock<RwLock<Vec<Rat>>> = OnceLock::new();

/// B_l with B_0 = 1, B_1 = -1/2, B_{2k+1} = 0 for k >= 1.
pub fn bernoulli(l: usize) -> Rat {
    let table = TABLE.get_or_init(|| RwLock::new(load_cache()));
    {
        let guard = table.read().unwrap();
        if l < guard.len() {
            return guard[l].clone();
        }
    }
    let mut guard = table.write().unwrap();
    if l >= guard.len() {
        extend_to(&mut guard, l);
        persist_cache(&guard);
    }
    guard[l].clone()
}

/// Binomial coefficient C(n, k) for n of any sign, k >= 0:
/// `C(n, k) = n (n-1) ... (n-k+1) / k!`.
pub fn binomial(n: &BigInt, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    // Always exact: the product of k consecutive integers is divisible by k!.
    num / den
}

pub fn binomial_i64(n: i64, k: u64) -> BigInt {
    binomial(&BigInt::from(n), k)
}

fn extend_to(table: &mut Vec<Rat>, l: usize) {
    if table.is_empty() {
        table.push(Rat::one());
    }
    while table.len() <= l {
        let n = table.len(); // computing B_n
        if n % 2 == 1 && n > 1 {
            table.push(Rat::zero());
            continue;
        }
        let mut acc = Rat::zero();
        for (k, b) in table.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            acc += Rat::from_integer(binomial_i64(n as i64 + 1, k as u64)) * b;
        }
        let coeff = Rat::from_integer(BigInt::from(n as i64 + 1));
        table.push(-acc / coeff);
    }
}

fn cache_path() -> Option<PathBuf> {
    let dir = std::env::var_os("PMZV_CACHE_DIR")
        .map(PathBuf::from)
        .or_else(|| {
            std::env::var_os("HOME").map(|h| {
                let mut p = PathBuf::from(h);
                p.push(".cache");
                p.push("pmzv");
                p
            })
        })
        .unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir).ok()?;
    Some(dir.join("bernoulli.json"))
}

fn load_cache() -> Vec<Rat> {
    let Some(path) = cache_path() else {
        return Vec::new();
    };
    let Ok(text) = std::fs::read_to_string(&path) else {
        return Vec::new();
    };
    let Ok(map) = serde_json::from_str::<BTreeMap<String, String>>(&text) else {
        return Vec::new();
    };
    // Accept only a dense prefix 0..k; anything else is recomputed lazily.
    let mut out = Vec::new();
    for i in 0.. {
        match map.get(&i.to_string()).and_then(|s| parse_rat(s)) {
            Some(r) => out.push(r),
            None => break,
        }
    }
    // Distrust a cache whose first entries are wrong (e.g. stale format).
    if !out.is_empty() && (!out[0].is_one()) {
        return Vec::new();
    }
    out
}

fn persist_cache(table: &[Rat]) {
    let Some(path) = cache_path() else { return };
    let map: BTreeMap<String, String> = table
        .iter()
        .enumerate()
        .map(|(i, r)| (i.to_string(), format!("{}/{}", r.numer(), r.denom())))
        .collect();
    let Ok(json) = serde_json::to_string_pretty(&map) else {
        return;
    };
    let tmp = path.with_extension("json.tmp");
    let ok = std::fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(json.as_bytes()))
        .is_ok();
    if ok {
        let _ = std::fs::rename(&tmp, &path);
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    let (num, den) = s.split_once('/')?;
    Some(Rat::new(
        BigInt::from_str(num.trim()).ok()?,
        BigInt::from_str(den.trim()).ok()?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{rat_frac, rat_i64};

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), rat_i64(1));
        assert_eq!(bernoulli(1), rat_frac(-1, 2));
        assert_eq!(bernoulli(2), rat_frac(1, 6));
        assert_eq!(bernoulli(4), rat_frac(-1, 30));
        assert_eq!(bernoulli(12), rat_frac(-691, 2730));
    }

    #[test]
    fn odd_values_vanish() {
        for k in 1..=10 {
            assert!(bernoulli(2 * k + 1).is_zero(), "B_{} != 0", 2 * k + 1);
        }
    }

    /// Independent oracle: B_1 = -1/2 is forced by Σ_{k=0}^{m-1} k = m(m-1)/2,
    /// and more generally the whole table must reproduce literal power sums
    /// through the Faulhaber closed form Σ_{k=0}^{m-1} k^l
    /// = (1/(l+1)) Σ_{δ=1}^{l+1} C(l+1,δ) B_{l+1-δ} m^δ.
    #[test]
    fn faulhaber_reproduces_power_sums() {
        for l in 0usize..=12 {
            for m in 1i64..=30 {
                let literal: Rat = (0..m).map(|k| rat_i64(k).pow(l as i32)).sum();
                let mut closed = Rat::zero();
                for delta in 1..=(l + 1) {
                    closed += Rat::from_integer(binomial_i64(l as i64 + 1, delta as u64))
                        * bernoulli(l + 1 - delta)
                        * rat_i64(m).pow(delta as i32);
                }
                closed /= rat_i64(l as i64 + 1);
                assert_eq!(literal, closed, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn binomial_negative_upper() {
        // C(-n, l) = (-1)^l C(n+l-1, l)
        assert_eq!(binomial_i64(-2, 3), BigInt::from(-4));
        assert_eq!(binomial_i64(-1, 5), BigInt::from(-1));
        assert_eq!(binomial_i64(3, 2), BigInt::from(3));
        assert_eq!(binomial_i64(3, 5), BigInt::from(0));
    }
}
