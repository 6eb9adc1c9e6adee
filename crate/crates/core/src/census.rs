//! Exact counts of topological types and of Schottky subgroup classes.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::signature::ConformalSignature;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CensusError {
    #[error("search space of {size} tuples exceeds the limit")]
    SearchSpaceTooLarge { size: f64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub n: u64,
    pub g: u64,
    #[serde(with = "big_count")]
    pub count: BigUint,
    pub signatures: Vec<ConformalSignature>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Z2ExtRecord {
    pub g: u64,
    pub tuples: Vec<[u64; 6]>,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaCheck {
    #[serde(with = "big_count")]
    pub value: BigUint,
    pub agrees_with_enumeration: bool,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Divisors `≥ 2` of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    (2..=n).filter(|d| n % d == 0).collect()
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Nondecreasing order lists over `ds` whose contributions `n - n/d` sum to
/// `budget`.
fn elliptic_lists(n: u64, ds: &[u64], budget: u64) -> Vec<Vec<u64>> {
    fn rec(n: u64, ds: &[u64], from: usize, budget: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if budget == 0 {
            out.push(cur.clone());
            return;
        }
        for (i, &d) in ds.iter().enumerate().skip(from) {
            let w = n - n / d;
            if w <= budget {
                cur.push(d);
                rec(n, ds, i, budget - w, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, ds, 0, budget, &mut Vec::new(), &mut out);
    out
}

/// Multisets of size `m` over `ds`, as nondecreasing lists.
fn multisets(ds: &[u64], m: usize) -> Vec<Vec<u64>> {
    fn rec(ds: &[u64], from: usize, left: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..ds.len() {
            cur.push(ds[i]);
            rec(ds, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(ds, 0, m, &mut Vec::new(), &mut out);
    out
}

fn gcd_ok(n: u64, orders: &[u64]) -> bool {
    orders.iter().fold(0u64, |g, &d| g.gcd(&(n / d))) == 1
}

/// Elliptic budget `g - 1 - n(s - 1)` for `s = m + a`, if nonnegative.
fn budget(n: u64, g: u64, s: u64) -> Option<u64> {
    (g + n).checked_sub(1 + n * s)
}

fn sort_key(s: &ConformalSignature) -> (usize, usize, usize, Vec<u64>, Vec<u64>) {
    (s.m, s.a, s.b, s.elliptic_orders.clone(), s.abelian_orders.clone())
}

pub fn admissible_signatures(n: u64, g: u64) -> CensusRecord {
    assert!(n >= 2 && g >= 2, "need n, g >= 2");
    let ds = divisors(n);
    let mut out = Vec::new();
    let max_s = (g + n - 1) / n;
    for s in 0..=max_s {
        let Some(r) = budget(n, g, s) else { continue };
        let lists = elliptic_lists(n, &ds, r);
        for m in 0..=s as usize {
            let a = s as usize - m;
            let abelian = multisets(&ds, m);
            for ell in &lists {
                if s == 0 && !gcd_ok(n, ell) {
                    continue;
                }
                for abel in &abelian {
                    let sig = ConformalSignature::new(n, a, ell.clone(), abel.clone()).expect("valid by construction");
                    debug_assert_eq!(sig.rank(), g as i64);
                    out.push(sig);
                }
            }
        }
    }
    out.sort_by_key(sort_key);
    CensusRecord { n, g, count: BigUint::from(out.len()), signatures: out }
}

pub fn count_types(n: u64, g: u64) -> BigUint {
    admissible_signatures(n, g).count
}

/// `M_m(n)`: multisets of size `m` over the divisors `≥ 2` of `n`.
pub fn multiset_count(n: u64, m: u64) -> BigUint {
    let psi = divisors(n).len() as u64;
    binomial(m + psi - 1, m)
}

/// `N(n, g; m)`: tuples `(a, b, n_1, ..., n_b)` for a fixed `m`.
pub fn count_fixed_m(n: u64, g: u64, m: u64) -> BigUint {
    let ds = divisors(n);
    let mut total = BigUint::zero();
    let max_s = (g + n - 1) / n;
    for s in m..=max_s {
        let Some(r) = budget(n, g, s) else { continue };
        let lists = elliptic_lists(n, &ds, r);
        let c = if s == 0 { lists.iter().filter(|l| gcd_ok(n, l)).count() } else { lists.len() };
        total += BigUint::from(c);
    }
    total
}

pub fn count_via_decomposition(n: u64, g: u64) -> BigUint {
    let mut total = count_fixed_m(n, g, 0);
    for m in 1..=(g + n - 1) / n {
        total += multiset_count(n, m) * count_fixed_m(n, g, m);
    }
    total
}

pub fn closed_n2(g: u64) -> BigUint {
    let k = (g + 1) / 2;
    BigUint::from((1 + k) * (2 + k) / 2)
}

pub fn closed_n3(g: u64) -> BigUint {
    let k = (g + 2) / 3;
    let v = match (g % 2 == 0, k % 2 == 0) {
        (true, true) => (k + 2) * (k + 2) / 4,
        (true, false) => (k + 1) * (k + 1) / 4,
        (false, true) => k * (k + 2) / 4,
        (false, false) => (k + 1) * (k + 3) / 4,
    };
    BigUint::from(v)
}

/// Triples `(m, a, b)` for a prime `p`.
pub fn prime_signatures(p: u64, g: u64) -> Result<Vec<(u64, u64, u64)>, CensusError> {
    if !is_prime(p) {
        return Err(CensusError::NotPrime(p));
    }
    let mut out = Vec::new();
    for s in 0..=(g + p - 1) / p {
        let Some(r) = budget(p, g, s) else { continue };
        if r % (p - 1) != 0 {
            continue;
        }
        let b = r / (p - 1);
        if s == 0 && b == 0 {
            continue;
        }
        for m in 0..=s {
            out.push((m, s - m, b));
        }
    }
    out.sort();
    Ok(out)
}

/// Closed-form class count `M(b, m)`; `1` for `p = 2`.
pub fn subgroup_classes(p: u64, b: u64, m: u64) -> Result<BigUint, CensusError> {
    if !is_prime(p) {
        return Err(CensusError::NotPrime(p));
    }
    if p == 2 {
        return Ok(BigUint::one());
    }
    let h = (p - 3) / 2;
    Ok(binomial(b + h, h) * binomial(m + h, h))
}

/// Orbits of unit tuples under block permutations and coordinatewise
/// negation, optionally also under a common unit factor.
pub fn subgroup_classes_bruteforce(p: u64, b: u64, m: u64, include_global_units: bool) -> Result<u64, CensusError> {
    if !is_prime(p) {
        return Err(CensusError::NotPrime(p));
    }
    let len = (b + m) as usize;
    let size = ((p - 1) as f64).powi(len as i32);
    if size > 1e7 {
        return Err(CensusError::SearchSpaceTooLarge { size });
    }
    let canonical = |t: &[u64]| {
        let mut v: Vec<u64> = t.iter().map(|&x| x.min(p - x)).collect();
        v[..b as usize].sort_unstable();
        v[b as usize..].sort_unstable();
        v
    };
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut t = vec![1u64; len];
    loop {
        let key = if include_global_units {
            (1..p).map(|u| canonical(&t.iter().map(|&x| x * u % p).collect::<Vec<_>>())).min().unwrap()
        } else {
            canonical(&t)
        };
        seen.insert(key);
        let mut i = 0;
        loop {
            if i == len {
                return Ok(seen.len() as u64);
            }
            t[i] += 1;
            if t[i] < p {
                break;
            }
            t[i] = 1;
            i += 1;
        }
    }
}

pub fn prime_actions_count(p: u64, g: u64) -> Result<BigUint, CensusError> {
    let mut total = BigUint::zero();
    for (m, _, b) in prime_signatures(p, g)? {
        total += subgroup_classes(p, b, m)?;
    }
    Ok(total)
}

/// Rank of the extended Z_2 signature `(a_1, ..., a_6)`.
pub fn z2_rank(t: &[u64; 6]) -> i64 {
    (4 * t[0] + 2 * t[1] + 3 * t[2] + 4 * t[3] + 4 * t[4] + 4 * t[5]) as i64 - 3
}

pub fn extended_z2_signatures(g: u64) -> Z2ExtRecord {
    let target = g + 3;
    let mut tuples = Vec::new();
    for a1 in 0..=target / 4 {
        for a3 in 0..=(target - 4 * a1) / 3 {
            let r1 = target - 4 * a1 - 3 * a3;
            for a4 in 0..=r1 / 4 {
                for a5 in 0..=(r1 - 4 * a4) / 4 {
                    for a6 in 0..=(r1 - 4 * a4 - 4 * a5) / 4 {
                        let r = r1 - 4 * (a4 + a5 + a6);
                        if r % 2 != 0 {
                            continue;
                        }
                        let t = [a1, r / 2, a3, a4, a5, a6];
                        if a1 + a3 + a5 + a6 > 0 {
                            tuples.push(t);
                        }
                    }
                }
            }
        }
    }
    tuples.sort();
    let count = tuples.len();
    Z2ExtRecord { g, tuples, count }
}

/// `Σ n(d)` over `(a, b, c, d)` with `g + 3 = 4a + 2b + 3c + 4d` and
/// `c ≥ 1` whenever `a = 0`.
pub fn extended_z2_count_formula(g: u64) -> FormulaCheck {
    let target = g + 3;
    let mut value = BigUint::zero();
    for a in 0..=target / 4 {
        for c in 0..=(target - 4 * a) / 3 {
            if a == 0 && c == 0 {
                continue;
            }
            let r = target - 4 * a - 3 * c;
            for d in 0..=r / 4 {
                if (r - 4 * d) % 2 == 0 {
                    value += BigUint::from((d + 1) * (d + 2) / 2);
                }
            }
        }
    }
    let agrees = value == BigUint::from(extended_z2_signatures(g).count);
    FormulaCheck { value, agrees_with_enumeration: agrees }
}

/// Serializes a `BigUint` as a JSON number when it fits in `u64` and as a
/// decimal string otherwise.
pub mod big_count {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        match u64::try_from(v) {
            Ok(x) => s.serialize_u64(x),
            Err(_) => s.serialize_str(&v.to_string()),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(u64),
        Big(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Small(x) => Ok(BigUint::from(x)),
            Repr::Big(text) => text.parse().map_err(D::Error::custom),
        }
    }
}

pub fn census_csv(rec: &CensusRecord) -> String {
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(";");
    let mut out = String::from("n,g,m,a,b,elliptic_orders,abelian_orders\n");
    for s in &rec.signatures {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            rec.n,
            rec.g,
            s.m,
            s.a,
            s.b,
            join(&s.elliptic_orders),
            join(&s.abelian_orders)
        ));
    }
    out
}

pub fn z2_csv(rec: &Z2ExtRecord) -> String {
    let mut out = String::from("g,a1,a2,a3,a4,a5,a6\n");
    for t in &rec.tuples {
        out.push_str(&format!("{},{},{},{},{},{},{}\n", rec.g, t[0], t[1], t[2], t[3], t[4], t[5]));
    }
    out
}
