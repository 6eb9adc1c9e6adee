//! Surjections onto `Z_N` with torsion-free, orientation-preserving kernel,
//! and the rank of that kernel.

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::signature::{
    euler_characteristic, torsion_classes, AnySignature, ConformalSignature, ExtendedSignature, FactorKind,
    Presentation, SignatureError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EpiError {
    #[error("gcd of n/n_j is {gcd}, not 1")]
    GcdConditionFailed { gcd: u64 },
    #[error("no orientation-reversing factor")]
    ConditionOneFailed,
    #[error("gcd of 2n/r is {gcd}, not 1")]
    ConditionTwoFailed { gcd: u64 },
    #[error("a + b + c + e must be positive")]
    HalfTurnConditionFailed,
    #[error("expected {expected} real Schottky ranks, each at least 1")]
    InvalidRanks { expected: usize },
    #[error("search space too large: {generators} generators, modulus {modulus}")]
    SearchSpaceTooLarge { generators: usize, modulus: u64 },
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

/// A homomorphism to `Z_N`, written additively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Epimorphism {
    pub modulus: u64,
    pub generators: Vec<String>,
    pub exponents: Vec<u64>,
    /// Orientation character: true for orientation-reversing generators.
    pub reversing: Vec<bool>,
}

impl Epimorphism {
    pub fn new(presentation: &Presentation, modulus: u64, exponents: Vec<u64>) -> Self {
        assert_eq!(exponents.len(), presentation.generator_count());
        Epimorphism {
            modulus,
            generators: presentation.generators.clone(),
            exponents: exponents.into_iter().map(|e| e % modulus).collect(),
            reversing: presentation.reversing.clone(),
        }
    }

    /// Image of a word `±(i + 1)`.
    pub fn apply(&self, word: &[i32]) -> u64 {
        let n = self.modulus as i64;
        let s: i64 = word
            .iter()
            .map(|&l| {
                let e = self.exponents[(l.unsigned_abs() - 1) as usize] as i64;
                if l > 0 {
                    e
                } else {
                    -e
                }
            })
            .sum();
        s.rem_euclid(n) as u64
    }

    pub fn order_of(&self, e: u64) -> u64 {
        self.modulus / e.gcd(&self.modulus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    /// Every relator maps to 0.
    pub homomorphism: bool,
    pub surjective: bool,
    pub torsion_free: bool,
    /// Extended case only.
    pub orientation_ok: Option<bool>,
    pub rank: Option<i64>,
}

impl KernelReport {
    pub fn passes(&self) -> bool {
        self.homomorphism && self.surjective && self.torsion_free && self.orientation_ok.unwrap_or(true)
    }
}

pub fn build_conformal_epi(sig: &ConformalSignature) -> Result<Epimorphism, EpiError> {
    sig.validate()?;
    let n = sig.n;
    if sig.m + sig.a == 0 && sig.elliptic_gcd() != 1 {
        return Err(EpiError::GcdConditionFailed { gcd: sig.elliptic_gcd() });
    }
    let p = sig.presentation();
    let mut exps = Vec::new();
    let mut free_done = sig.a == 0 && sig.m == 0;
    // Generator order follows the factor list: (T_k, F_k) pairs, then A_j, then E_j.
    let mut lox = Vec::new();
    for (i, name) in p.generators.iter().enumerate() {
        let e = match name.chars().next() {
            Some('F') => n / sig.abelian_orders[index(name)],
            Some('E') => n / sig.elliptic_orders[index(name)],
            _ => {
                lox.push(i);
                0
            }
        };
        exps.push(e);
    }
    // Φ(A_1) = 1 when a > 0, otherwise Φ(T_1) = 1.
    let pick = if sig.a > 0 { "A1" } else { "T1" };
    for &i in &lox {
        if !free_done && p.generators[i] == pick {
            exps[i] = 1 % n;
            free_done = true;
        }
    }
    Ok(Epimorphism::new(&p, n, exps))
}

/// Zero-based index from a name like `E3`.
fn index(name: &str) -> usize {
    name[1..].parse::<usize>().expect("generator index") - 1
}

pub fn build_extended_epi(esig: &ExtendedSignature) -> Result<Epimorphism, EpiError> {
    esig.validate()?;
    if !esig.condition_one() {
        return Err(EpiError::ConditionOneFailed);
    }
    if !esig.condition_two() {
        return Err(EpiError::ConditionTwoFailed { gcd: esig.torsion_gcd() });
    }
    let n = esig.n;
    let big = 2 * n;
    let kinds = esig.factor_kinds();
    let loxodromic_carries = esig.glides == 0 && esig.t6 == 0 && !esig.t8.iter().any(|r| r.gamma > 0);
    let mut lox_done = !loxodromic_carries;
    let mut x_done = false;
    let mut exps = Vec::new();
    for kind in &kinds {
        match kind {
            FactorKind::GlideCyclic => exps.push(1),
            FactorKind::LoxodromicCyclic => {
                exps.push(if lox_done { 0 } else { 2 % big });
                lox_done = true;
            }
            FactorKind::EllipticCyclic { k } => exps.push(big / k),
            FactorKind::PseudoEllipticCyclic { order } => exps.push(big / order),
            FactorKind::LoxEllAbelian { k } => {
                exps.extend([if lox_done { 0 } else { 2 % big }, big / k]);
                lox_done = true;
            }
            FactorKind::LoxPseudoSwap { order } => exps.extend([0, big / order]),
            FactorKind::GlideHalfTurn => exps.extend([1, n]),
            FactorKind::ReflectionCyclic => exps.push(n),
            FactorKind::RealSchottkyReflection { gamma, orders } => {
                exps.push(n);
                for _ in 0..*gamma {
                    exps.push(if x_done { 0 } else { n + 1 });
                    x_done = true;
                }
                exps.extend(orders.iter().map(|k| big / k));
            }
        }
    }
    Ok(Epimorphism::new(&esig.presentation(), big, exps))
}

fn kinds_of(sig: &AnySignature) -> Vec<FactorKind> {
    sig.factor_kinds()
}

/// Checks a homomorphism against the signature; the rank is filled when
/// every flag holds.
pub fn verify_epi(sig: &AnySignature, phi: &Epimorphism) -> KernelReport {
    let mut report = check_flags(sig, phi);
    if report.passes() {
        report.rank = Some(kernel_rank_euler(sig));
    }
    report
}

fn check_flags(sig: &AnySignature, phi: &Epimorphism) -> KernelReport {
    let p = sig.presentation();
    let kinds = kinds_of(sig);
    let homomorphism = phi.exponents.len() == p.generator_count() && p.relators.iter().all(|r| phi.apply(r) == 0);
    if !homomorphism {
        return KernelReport {
            homomorphism,
            surjective: false,
            torsion_free: false,
            orientation_ok: sig.is_extended().then_some(false),
            rank: None,
        };
    }
    let surjective = phi.exponents.iter().fold(phi.modulus, |g, &e| g.gcd(&e)) == 1;
    let torsion_free = torsion_classes(&kinds).iter().all(|(w, k)| phi.order_of(phi.apply(w)) == *k);
    let orientation_ok =
        sig.is_extended().then(|| phi.exponents.iter().zip(&phi.reversing).all(|(e, &rev)| (e % 2 == 1) == rev));
    KernelReport { homomorphism, surjective, torsion_free, orientation_ok, rank: None }
}

/// Exhaustive search for an admissible homomorphism.
pub fn exists_epi_bruteforce(sig: &AnySignature, cap: u64) -> Result<bool, EpiError> {
    let p = sig.presentation();
    let kinds = kinds_of(sig);
    let n = match sig {
        AnySignature::Conformal(s) => s.n,
        AnySignature::Extended(s) => s.n,
    };
    let modulus = if sig.is_extended() { 2 * n } else { n };
    let r = p.generator_count();
    if r > 8 || n > cap {
        return Err(EpiError::SearchSpaceTooLarge { generators: r, modulus });
    }
    // Single-letter torsion classes and parity cut down each generator's
    // candidates; the full check runs on every surviving tuple.
    let mut required_order = vec![None; r];
    for (w, k) in torsion_classes(&kinds) {
        if w.len() == 1 {
            required_order[(w[0].unsigned_abs() - 1) as usize] = Some(k);
        }
    }
    let candidates: Vec<Vec<u64>> = (0..r)
        .map(|i| {
            (0..modulus)
                .filter(|&e| required_order[i].map_or(true, |k| modulus / e.gcd(&modulus) == k))
                .filter(|&e| !sig.is_extended() || (e % 2 == 1) == p.reversing[i])
                .collect()
        })
        .collect();
    let space: f64 = candidates.iter().map(|c| c.len() as f64).product();
    if space > 5e7 {
        return Err(EpiError::SearchSpaceTooLarge { generators: r, modulus });
    }
    if candidates.iter().any(Vec::is_empty) {
        return Ok(false);
    }
    let mut pick = vec![0usize; r];
    loop {
        let exps: Vec<u64> = pick.iter().enumerate().map(|(i, &j)| candidates[i][j]).collect();
        let phi = Epimorphism::new(&p, modulus, exps);
        if check_flags(sig, &phi).passes() {
            return Ok(true);
        }
        let mut i = 0;
        loop {
            if i == r {
                return Ok(false);
            }
            pick[i] += 1;
            if pick[i] < candidates[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// `g = n(m + a - 1) + 1 + Σ (n/n_j)(n_j - 1)`.
pub fn kernel_rank(sig: &ConformalSignature) -> i64 {
    sig.rank()
}

/// `g = 1 - N χ(K)` with `χ` the Euler characteristic of the free product.
pub fn kernel_rank_euler(sig: &AnySignature) -> i64 {
    let (kinds, modulus) = match sig {
        AnySignature::Conformal(s) => (s.factor_kinds(), s.n),
        AnySignature::Extended(s) => (s.factor_kinds(), 2 * s.n),
    };
    let g = Ratio::from_integer(1) - euler_characteristic(&kinds) * Ratio::from_integer(modulus as i64);
    assert!(g.is_integer(), "non-integral rank {g}");
    g.to_integer()
}

/// Reidemeister–Schreier for the kernel followed by Tietze elimination.
pub fn kernel_rank_schreier(sig: &AnySignature, phi: &Epimorphism) -> i64 {
    let p = sig.presentation();
    schreier_rank(&p, phi).0
}

/// Rank and the relators left over after elimination (empty when the
/// kernel is visibly free).
pub fn schreier_rank(p: &Presentation, phi: &Epimorphism) -> (i64, Vec<Vec<i32>>) {
    let n = phi.modulus as usize;
    let r = p.generator_count();
    let step = |c: usize, i: usize, forward: bool| {
        let e = phi.exponents[i] as usize % n;
        if forward {
            (c + e) % n
        } else {
            (c + n - e) % n
        }
    };
    // Spanning tree by breadth-first search from the trivial coset.
    let mut seen = vec![false; n];
    let mut tree = vec![vec![false; r]; n];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(c) = queue.pop_front() {
        for i in 0..r {
            let t = step(c, i, true);
            if !seen[t] {
                seen[t] = true;
                tree[c][i] = true;
                queue.push_back(t);
            }
        }
        for i in 0..r {
            let s = step(c, i, false);
            if !seen[s] {
                seen[s] = true;
                tree[s][i] = true;
                queue.push_back(s);
            }
        }
    }
    let mut symbol = vec![vec![0i32; r]; n];
    let mut count = 0i32;
    for c in 0..n {
        for i in 0..r {
            if !tree[c][i] {
                count += 1;
                symbol[c][i] = count;
            }
        }
    }
    let mut relators = Vec::new();
    for rel in &p.relators {
        for start in 0..n {
            let mut x = start;
            let mut word = Vec::new();
            for &l in rel {
                let i = (l.unsigned_abs() - 1) as usize;
                if l > 0 {
                    if symbol[x][i] != 0 {
                        word.push(symbol[x][i]);
                    }
                    x = step(x, i, true);
                } else {
                    x = step(x, i, false);
                    if symbol[x][i] != 0 {
                        word.push(-symbol[x][i]);
                    }
                }
            }
            debug_assert_eq!(x, start);
            let word = cyclic_reduce(free_reduce(word));
            if !word.is_empty() {
                relators.push(word);
            }
        }
    }
    let eliminated = tietze(&mut relators);
    (count as i64 - eliminated as i64, relators)
}

/// Repeatedly solves the first relator having a letter that occurs exactly
/// once, substituting into the rest. Returns the number of eliminations.
fn tietze(relators: &mut Vec<Vec<i32>>) -> usize {
    let mut eliminated = 0;
    'outer: loop {
        for idx in 0..relators.len() {
            let rel = &relators[idx];
            let mut counts: std::collections::BTreeMap<u32, usize> = Default::default();
            for &l in rel {
                *counts.entry(l.unsigned_abs()).or_insert(0) += 1;
            }
            let Some(pos) = rel.iter().position(|l| counts[&l.unsigned_abs()] == 1) else {
                continue;
            };
            let x = rel[pos];
            // rel rotated to x·w, so x = w^{-1}.
            let w: Vec<i32> = rel[pos + 1..].iter().chain(&rel[..pos]).copied().collect();
            let mut value = invert(&w);
            let target = x.unsigned_abs() as i32;
            if x < 0 {
                value = invert(&value);
            }
            relators.remove(idx);
            let inverse_value = invert(&value);
            for other in relators.iter_mut() {
                let mut out = Vec::with_capacity(other.len());
                for &l in other.iter() {
                    if l == target {
                        out.extend(&value);
                    } else if l == -target {
                        out.extend(&inverse_value);
                    } else {
                        out.push(l);
                    }
                }
                *other = cyclic_reduce(free_reduce(out));
            }
            relators.retain(|r| !r.is_empty());
            eliminated += 1;
            continue 'outer;
        }
        return eliminated;
    }
}

fn invert(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|l| -l).collect()
}

pub fn free_reduce(w: Vec<i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn cyclic_reduce(mut w: Vec<i32>) -> Vec<i32> {
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w.truncate(hi);
    w.drain(..lo);
    w
}

/// Rank of the orientation-preserving half of an extended Schottky group
/// built from `a` reflections, `b` imaginary reflections, `c` glides, `d`
/// loxodromics and `e` real Schottky groups of ranks `gammas`.
pub fn rank_extended_schottky(a: u64, b: u64, c: u64, d: u64, e: u64, gammas: &[u64]) -> Result<i64, EpiError> {
    if a + b + c + e == 0 {
        return Err(EpiError::HalfTurnConditionFailed);
    }
    if gammas.len() as u64 != e || gammas.iter().any(|&g| g == 0) {
        return Err(EpiError::InvalidRanks { expected: e as usize });
    }
    let sum: u64 = gammas.iter().sum();
    Ok((a + b + 2 * c + 2 * d + e + sum) as i64 - 1)
}
