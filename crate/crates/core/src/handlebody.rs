//! Fixed-point loci and quotient orbifolds of the periodic handlebody map
//! induced by a (extended) Z_n-Schottky group.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::signature::{check_pseudo_order, ConformalSignature, ExtendedSignature, FactorKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HandlebodyError {
    #[error("inadmissible signature: {0}")]
    InadmissibleSignature(String),
    #[error("parity violation: {0}")]
    ParityViolation(String),
}

/// Components of the fixed-point set of `τ^power`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedLocusEntry {
    pub power: u64,
    pub arcs: u64,
    pub loops: u64,
    pub points: u64,
    pub discs: u64,
    pub surfaces: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedLocusReport {
    /// Order of `τ`.
    pub order: u64,
    /// Entries sorted by power; powers without components are omitted.
    pub entries: Vec<FixedLocusEntry>,
}

impl FixedLocusReport {
    fn from_map(order: u64, map: BTreeMap<u64, FixedLocusEntry>) -> Self {
        FixedLocusReport { order, entries: map.into_values().collect() }
    }

    /// Componentwise sum over all powers.
    pub fn totals(&self) -> FixedLocusEntry {
        self.entries.iter().fold(FixedLocusEntry::default(), |mut acc, e| {
            acc.arcs += e.arcs;
            acc.loops += e.loops;
            acc.points += e.points;
            acc.discs += e.discs;
            acc.surfaces += e.surfaces;
            acc
        })
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldSignature {
    pub orientable: bool,
    /// Genus, or the number of cross-caps when non-orientable.
    pub genus: u64,
    pub cone_orders: Vec<u64>,
    pub boundary_components: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDescriptor {
    pub handlebody_genus: u64,
    pub conical_arcs: u64,
    pub conical_loops: u64,
    pub note: String,
}

fn entry(map: &mut BTreeMap<u64, FixedLocusEntry>, power: u64) -> &mut FixedLocusEntry {
    map.entry(power).or_insert_with(|| FixedLocusEntry { power, ..Default::default() })
}

/// `Σ n/n_j` arcs, fixed by `τ^{n/n_j}`, and `Σ n/l_k` loops, fixed by `τ^{n/l_k}`.
pub fn fixed_locus_conformal(sig: &ConformalSignature) -> Result<FixedLocusReport, HandlebodyError> {
    sig.check_admissible().map_err(|e| HandlebodyError::InadmissibleSignature(e.to_string()))?;
    let n = sig.n;
    let mut map = BTreeMap::new();
    for &k in &sig.elliptic_orders {
        entry(&mut map, n / k).arcs += n / k;
    }
    for &l in &sig.abelian_orders {
        entry(&mut map, n / l).loops += n / l;
    }
    Ok(FixedLocusReport::from_map(n, map))
}

pub fn quotient_descriptor(sig: &ConformalSignature) -> Result<QuotientDescriptor, HandlebodyError> {
    sig.check_admissible().map_err(|e| HandlebodyError::InadmissibleSignature(e.to_string()))?;
    Ok(QuotientDescriptor {
        handlebody_genus: (sig.a + sig.m) as u64,
        conical_arcs: sig.b as u64,
        conical_loops: sig.m as u64,
        note: format!(
            "genus a + m = {} (the boundary orbifold has genus m + a); the count b + m = {} is not used",
            sig.a + sig.m,
            sig.b + sig.m
        ),
    })
}

/// Boundary orbifold `Ω/K`: genus `m + a` with cone orders `n_j, n_j`.
pub fn boundary_orbifold(sig: &ConformalSignature) -> OrbifoldSignature {
    let mut cones: Vec<u64> = sig.elliptic_orders.iter().flat_map(|&k| [k, k]).collect();
    cones.sort_unstable();
    OrbifoldSignature { orientable: true, genus: (sig.m + sig.a) as u64, cone_orders: cones, boundary_components: 0 }
}

/// Riemann–Hurwitz for `S -> Ω/K` of degree `n`; returns both sides of
/// `2g - 2 = n(2γ - 2 + Σ (1 - 1/c))`.
pub fn riemann_hurwitz_sides(sig: &ConformalSignature) -> (Ratio<i64>, Ratio<i64>) {
    let orb = boundary_orbifold(sig);
    let n = sig.n as i64;
    let cones: Ratio<i64> = orb.cone_orders.iter().map(|&c| Ratio::new(c as i64 - 1, c as i64)).sum();
    let rhs = Ratio::from_integer(n) * (Ratio::from_integer(2 * orb.genus as i64 - 2) + cones);
    (Ratio::from_integer(2 * sig.rank() - 2), rhs)
}

/// Fixed components of the powers of an anticonformal `τ` of order `2n`,
/// summed factor by factor. Only the arithmetic rules and the presence of a
/// reversing factor are checked; the gcd condition is not needed for the
/// per-factor counts.
pub fn fixed_locus_extended(esig: &ExtendedSignature) -> Result<FixedLocusReport, HandlebodyError> {
    esig.validate().map_err(|e| HandlebodyError::InadmissibleSignature(e.to_string()))?;
    if !esig.condition_one() {
        return Err(HandlebodyError::InadmissibleSignature("no orientation-reversing factor".into()));
    }
    let n = esig.n;
    let two_n = 2 * n;
    let mut map = BTreeMap::new();
    for kind in esig.factor_kinds() {
        match kind {
            FactorKind::GlideCyclic | FactorKind::LoxodromicCyclic => {}
            FactorKind::EllipticCyclic { k } => entry(&mut map, two_n / k).arcs += two_n / k,
            FactorKind::LoxEllAbelian { k } => entry(&mut map, two_n / k).loops += two_n / k,
            FactorKind::PseudoEllipticCyclic { order } => {
                let d = order / 2;
                if d == 1 {
                    entry(&mut map, n).points += n;
                } else {
                    entry(&mut map, two_n / d).arcs += n / d;
                    entry(&mut map, n / d).points += n / d;
                }
            }
            FactorKind::LoxPseudoSwap { order } => {
                let d = order / 2;
                if d == 1 {
                    entry(&mut map, n).points += two_n;
                } else {
                    entry(&mut map, two_n / d).loops += two_n / d;
                    entry(&mut map, n / d).points += two_n / d;
                }
            }
            FactorKind::GlideHalfTurn => entry(&mut map, n).loops += n,
            FactorKind::ReflectionCyclic => entry(&mut map, n).discs += n,
            FactorKind::RealSchottkyReflection { .. } => entry(&mut map, n).surfaces += n,
        }
    }
    Ok(FixedLocusReport::from_map(two_n, map))
}

/// Input of the odd-order example without T6, T7 or T8 factors. `l` are
/// the T2 orders and `r` the halves of the T3 orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddExample {
    pub n: u64,
    pub a1: u64,
    pub a4: u64,
    pub a5: u64,
    pub l: Vec<u64>,
    pub r: Vec<u64>,
}

impl OddExample {
    pub fn validate(&self) -> Result<(), HandlebodyError> {
        if self.n % 2 == 0 {
            return Err(HandlebodyError::ParityViolation(format!("n = {} must be odd", self.n)));
        }
        if self.n == 1 && self.a4 > 0 {
            return Err(HandlebodyError::ParityViolation("T4 factors need n > 1".into()));
        }
        for &l in &self.l {
            if l < 2 || self.n % l != 0 {
                return Err(HandlebodyError::ParityViolation(format!("order {l} must divide n = {}", self.n)));
            }
        }
        for &r in &self.r {
            check_pseudo_order(2 * r, self.n).map_err(|e| HandlebodyError::ParityViolation(e.to_string()))?;
        }
        Ok(())
    }

    fn cross_caps(&self) -> u64 {
        2 * self.a1 + self.r.len() as u64 + 2 * self.a4 + 2 * self.a5
    }

    /// The same group as an extended signature (T1 factors taken as glides,
    /// T5 factors of order 2).
    pub fn to_signature(&self) -> ExtendedSignature {
        let mut s = ExtendedSignature {
            n: self.n,
            glides: self.a1 as usize,
            t2: self.l.clone(),
            t3: self.r.iter().map(|r| 2 * r).collect(),
            t4: vec![self.n; self.a4 as usize],
            t5: vec![2; self.a5 as usize],
            ..Default::default()
        };
        s.canonicalize();
        s
    }
}

/// `g = n(2a_1 + a_3 + 2a_4 + 2a_5 - 2 + 2Σ(1 - 1/l_j) + Σ(1 - 1/r_t)) + 1`.
pub fn extended_example_genus(ex: &OddExample) -> Result<i64, HandlebodyError> {
    ex.validate()?;
    let one = Ratio::from_integer(1i64);
    let mut s = Ratio::from_integer(ex.cross_caps() as i64 - 2);
    for &l in &ex.l {
        s += Ratio::from_integer(2) * (one - Ratio::new(1, l as i64));
    }
    for &r in &ex.r {
        s += one - Ratio::new(1, r as i64);
    }
    let g = Ratio::from_integer(ex.n as i64) * s + one;
    Ok(g.to_integer())
}

/// The genus recomputed from the orientable double `O^+` via Riemann–Hurwitz
/// for `f = τ²` of order `n`.
pub fn double_cover_genus(ex: &OddExample) -> Result<i64, HandlebodyError> {
    let dbl = orbifold_signatures_ext(ex)?.1;
    let cones: Ratio<i64> = dbl.cone_orders.iter().map(|&c| Ratio::new(c as i64 - 1, c as i64)).sum();
    let chi = Ratio::from_integer(2 * dbl.genus as i64 - 2) + cones;
    let two_g_minus_two = Ratio::from_integer(ex.n as i64) * chi;
    Ok(((two_g_minus_two + Ratio::from_integer(2)) / Ratio::from_integer(2)).to_integer())
}

/// Klein orbifold `Ω/K` and its orientable double `Ω/K^+`.
pub fn orbifold_signatures_ext(ex: &OddExample) -> Result<(OrbifoldSignature, OrbifoldSignature), HandlebodyError> {
    ex.validate()?;
    let mut l = ex.l.clone();
    l.sort_unstable();
    let mut r = ex.r.clone();
    r.sort_unstable();
    let mut klein_cones: Vec<u64> = l.iter().flat_map(|&x| [x, x]).collect();
    klein_cones.extend(&r);
    let mut double_cones: Vec<u64> = l.iter().flat_map(|&x| [x; 4]).collect();
    double_cones.extend(r.iter().flat_map(|&x| [x, x]));
    let caps = ex.cross_caps();
    let klein = OrbifoldSignature { orientable: false, genus: caps, cone_orders: klein_cones, boundary_components: 0 };
    let double = OrbifoldSignature {
        orientable: true,
        genus: caps.saturating_sub(1),
        cone_orders: double_cones,
        boundary_components: 0,
    };
    Ok((klein, double))
}
