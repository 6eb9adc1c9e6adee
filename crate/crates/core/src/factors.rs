//! Factories for the elementary groups, delivered in a localized position.
//!
//! Every factor is first written down in a standard position (fixed points
//! at `0` and `∞`, or the real line for restricted T8), together with the
//! envelope: closed regions whose union is the complement of an open
//! fundamental domain. A point of that fundamental domain (the pole) is then
//! sent to `∞` and the result is scaled into the requested disc.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::moebius::{make_elliptic, ComplexPoint, Disc, MoebiusError, Region, TransformMap};
use crate::signature::{check_pseudo_order, FactorKind};

pub use crate::signature::FactorKind as Kind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FactorError {
    #[error("factor kind not allowed for n = {n}: {reason}")]
    InvalidKindForParity { n: u64, reason: &'static str },
    #[error("order {order} not allowed for n = {n}")]
    OrderNotDividing { order: u64, n: u64 },
    #[error("localization radius must be positive")]
    InvalidRadius,
    #[error(transparent)]
    Geometry(#[from] MoebiusError),
}

/// Multiplier data for standard positions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorParams {
    /// Loxodromic multiplier `λ > 1`.
    pub lambda: f64,
    /// Modulus `μ > 0` of the pseudo-elliptic `e^{iπ/d} μ / conj(z)`.
    pub mu: f64,
}

impl Default for FactorParams {
    fn default() -> Self {
        FactorParams { lambda: 9.0, mu: 1.0 }
    }
}

/// An elementary group in localized position.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorGroup {
    pub kind: FactorKind,
    /// Local generator names (`A`, `T`, `F`, ...) with their maps.
    pub generators: Vec<(String, TransformMap)>,
    /// Envelope: closed regions covering the complement of the fundamental domain.
    pub core: Vec<Region>,
    /// Nontrivial finite-order elements as `(local word, map)`.
    pub torsion_elements: Vec<(Vec<i32>, TransformMap)>,
    pub localization: (ComplexPoint, f64),
    /// Map from standard position to the localized position.
    pub conjugator: TransformMap,
    /// A point in the open fundamental domain.
    pub interior_witness: ComplexPoint,
}

/// One element of a factor with its normal-form word and length.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalElement {
    pub word: Vec<i32>,
    pub length: usize,
    pub map: TransformMap,
}

struct Standard {
    generators: Vec<TransformMap>,
    regions: Vec<Region>,
    pole: Option<Complex64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Checks the arithmetic side conditions of `kind` for the modulus `n`.
pub fn check_kind(kind: &FactorKind, n: u64) -> Result<(), FactorError> {
    let divides = |k: u64| {
        if k >= 2 && n % k == 0 {
            Ok(())
        } else {
            Err(FactorError::OrderNotDividing { order: k, n })
        }
    };
    match kind {
        FactorKind::LoxodromicCyclic | FactorKind::GlideCyclic => Ok(()),
        FactorKind::EllipticCyclic { k } | FactorKind::LoxEllAbelian { k } => divides(*k),
        FactorKind::PseudoEllipticCyclic { order } | FactorKind::LoxPseudoSwap { order } => {
            check_pseudo_order(*order, n).map_err(|_| FactorError::OrderNotDividing { order: *order, n })
        }
        FactorKind::GlideHalfTurn => {
            if n % 2 == 0 {
                Ok(())
            } else {
                Err(FactorError::InvalidKindForParity { n, reason: "glide with half-turn needs n even" })
            }
        }
        FactorKind::ReflectionCyclic => {
            if n % 2 == 1 {
                Ok(())
            } else {
                Err(FactorError::InvalidKindForParity { n, reason: "reflection factors need n odd" })
            }
        }
        FactorKind::RealSchottkyReflection { gamma, orders } => {
            if n % 2 == 0 {
                return Err(FactorError::InvalidKindForParity { n, reason: "reflection factors need n odd" });
            }
            if *gamma == 0 && orders.is_empty() {
                return Err(FactorError::InvalidKindForParity { n, reason: "empty real factor" });
            }
            orders.iter().try_for_each(|&k| divides(k))
        }
    }
}

/// Builds `kind` localized in the disc `(center, radius)`. A center at `∞`
/// returns the standard position unchanged.
pub fn build_factor(
    kind: &FactorKind,
    n: u64,
    center: ComplexPoint,
    radius: f64,
    params: FactorParams,
) -> Result<FactorGroup, FactorError> {
    check_kind(kind, n)?;
    if !(radius > 0.0) {
        return Err(FactorError::InvalidRadius);
    }
    let std = standard_position(kind, params)?;
    let conjugator = match center {
        ComplexPoint::Infinity => TransformMap::identity(),
        ComplexPoint::Finite(target) => localizer(&std, target, radius)?,
    };
    let generators: Vec<(String, TransformMap)> = kind
        .letters()
        .iter()
        .zip(&std.generators)
        .map(|((name, _), g)| (name.to_string(), g.conjugate_by(&conjugator)))
        .collect();
    let core: Vec<Region> = std.regions.iter().map(|r| r.transform(&conjugator)).collect();
    let interior_witness = match std.pole {
        Some(p) => conjugator.apply(ComplexPoint::Finite(p)),
        None => conjugator.apply(ComplexPoint::Infinity),
    };
    let maps: Vec<TransformMap> = generators.iter().map(|(_, g)| *g).collect();
    let torsion_elements = torsion_words(kind).into_iter().map(|w| (w.clone(), evaluate(&maps, &w))).collect();
    let localization = match center {
        ComplexPoint::Infinity => (ComplexPoint::Infinity, f64::INFINITY),
        finite => (finite, radius),
    };
    Ok(FactorGroup { kind: kind.clone(), generators, core, torsion_elements, localization, conjugator, interior_witness })
}

/// `affine ∘ (w -> 1/(w - pole))`, with the affine part fitting the envelope
/// into `0.9 radius` around `target`.
fn localizer(std: &Standard, target: Complex64, radius: f64) -> Result<TransformMap, FactorError> {
    let inversion = match std.pole {
        Some(p) => TransformMap::conformal(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), -p)?,
        None => TransformMap::identity(),
    };
    let mut discs = Vec::new();
    for r in &std.regions {
        let image = r.transform(&inversion);
        let (center, rad) = image.bounding_circle().ok_or(MoebiusError::DegenerateCircle)?;
        discs.push((center, rad));
    }
    let (center, rad) = crate::moebius::region_enclosing(&discs);
    let scale = 0.9 * radius / rad;
    let affine = TransformMap::conformal(c(scale, 0.0), target - center * scale, c(0.0, 0.0), c(1.0, 0.0))?;
    Ok(affine.compose(&inversion))
}

fn standard_position(kind: &FactorKind, params: FactorParams) -> Result<Standard, FactorError> {
    let lam = params.lambda;
    let s = lam.sqrt();
    let zero = c(0.0, 0.0);
    let d_in = |r: f64| Region::Disc(Disc::from_center_radius(zero, r));
    let d_out = |r: f64| Region::Disc(Disc::exterior(zero, r));
    let rotation = |k: u64| TransformMap::scaling(Complex64::from_polar(1.0, 2.0 * PI / k as f64));
    let sector = |k: u64| Region::sector(0.0, PI - PI / k as f64);
    let pseudo = |order: u64| {
        let d = order / 2;
        TransformMap::anticonformal(zero, Complex64::from_polar(params.mu, PI / d as f64), c(1.0, 0.0), zero)
    };
    let out = match kind {
        FactorKind::LoxodromicCyclic => Standard {
            generators: vec![TransformMap::scaling(c(lam, 0.0))],
            regions: vec![d_in(1.0 / s), d_out(s)],
            pole: Some(c(-1.0, 0.0)),
        },
        FactorKind::GlideCyclic => Standard {
            generators: vec![TransformMap::glide_scaling(c(lam, 0.0))],
            regions: vec![d_in(1.0 / s), d_out(s)],
            pole: Some(c(-1.0, 0.0)),
        },
        FactorKind::EllipticCyclic { k } => {
            Standard { generators: vec![rotation(*k)], regions: vec![sector(*k)], pole: Some(c(-1.0, 0.0)) }
        }
        FactorKind::LoxEllAbelian { k } => Standard {
            generators: vec![TransformMap::scaling(c(lam, 0.0)), rotation(*k)],
            regions: vec![d_in(1.0 / s), d_out(s), sector(*k)],
            pole: Some(c(-1.0, 0.0)),
        },
        FactorKind::PseudoEllipticCyclic { order } => {
            let d = order / 2;
            let mut regions = vec![d_in(params.mu)];
            if d >= 2 {
                regions.push(sector(d));
            }
            Standard { generators: vec![pseudo(*order)?], regions, pole: Some(c(-3.0 * params.mu, 0.0)) }
        }
        FactorKind::LoxPseudoSwap { order } => {
            let d = order / 2;
            let mut regions = vec![d_in(params.mu), d_out(params.mu * s)];
            if d >= 2 {
                regions.push(sector(d));
            }
            Standard {
                generators: vec![TransformMap::scaling(c(lam, 0.0)), pseudo(*order)?],
                regions,
                pole: Some(c(-params.mu * s.sqrt(), 0.0)),
            }
        }
        FactorKind::GlideHalfTurn => Standard {
            generators: vec![TransformMap::glide_scaling(c(lam, 0.0)), TransformMap::scaling(c(-1.0, 0.0))],
            regions: vec![d_in(1.0 / s), d_out(s), Region::Disc(Disc::half_plane(zero, c(1.0, 0.0)))],
            pole: Some(c(-1.0, 0.0)),
        },
        FactorKind::ReflectionCyclic => Standard {
            generators: vec![TransformMap::anticonformal(zero, c(1.0, 0.0), c(1.0, 0.0), zero)?],
            regions: vec![d_in(1.0)],
            pole: None,
        },
        FactorKind::RealSchottkyReflection { gamma, orders } => real_factor(*gamma, orders)?,
    };
    Ok(out)
}

/// Reflection in the real line together with real pairings of unit discs
/// (centers spaced by 3) and real elliptics whose lenses have unit width.
fn real_factor(gamma: u64, orders: &[u64]) -> Result<Standard, FactorError> {
    let mut generators = vec![TransformMap::conjugation()];
    let mut regions = vec![Region::Disc(Disc::half_plane(c(0.0, 0.0), c(0.0, -1.0)))];
    let mut slot = 0.0;
    for _ in 0..gamma {
        let (x1, x2) = (slot, slot + 3.0);
        slot += 6.0;
        // z -> x2 - 1/(z - x1): real, preserves the upper half-plane, and sends
        // the outside of |z - x1| <= 1 onto |z - x2| <= 1.
        generators.push(TransformMap::conformal(c(x2, 0.0), c(-1.0 - x1 * x2, 0.0), c(1.0, 0.0), c(-x1, 0.0))?);
        regions.push(Region::Disc(Disc::from_center_radius(c(x1, 0.0), 1.0)));
        regions.push(Region::Disc(Disc::from_center_radius(c(x2, 0.0), 1.0)));
    }
    for &k in orders {
        let x = slot;
        slot += 3.0;
        let t = PI / k as f64;
        let h = (t / 2.0).tan();
        generators.push(make_elliptic(ComplexPoint::new(x, h), ComplexPoint::new(x, -h), k as u32)?);
        let offset = h / t.tan();
        let rad = h / t.sin();
        let mut parts = vec![Disc::from_center_radius(c(x - offset, 0.0), rad)];
        if offset.abs() > 1e-12 {
            parts.push(Disc::from_center_radius(c(x + offset, 0.0), rad));
        }
        regions.push(Region::lens(parts, ComplexPoint::new(x, 0.0)));
    }
    let mid = (slot - 3.0) / 2.0;
    Ok(Standard { generators, regions, pole: Some(c(mid, 2.0)) })
}

/// Nontrivial finite-order elements (class representatives for T5 and T8
/// beyond the finite subgroups) as local words.
fn torsion_words(kind: &FactorKind) -> Vec<Vec<i32>> {
    let powers = |g: i32, k: u64| (1..k).map(move |s| vec![g; s as usize]);
    match kind {
        FactorKind::LoxodromicCyclic | FactorKind::GlideCyclic => vec![],
        FactorKind::EllipticCyclic { k } => powers(1, *k).collect(),
        FactorKind::PseudoEllipticCyclic { order } => powers(1, *order).collect(),
        FactorKind::LoxEllAbelian { k } => powers(2, *k).collect(),
        FactorKind::LoxPseudoSwap { order } => {
            let mut v: Vec<Vec<i32>> = powers(2, *order).collect();
            v.extend((1..*order).step_by(2).map(|s| {
                let mut w = vec![1];
                w.extend(vec![2; s as usize]);
                w
            }));
            v
        }
        FactorKind::GlideHalfTurn => vec![vec![2]],
        FactorKind::ReflectionCyclic => vec![vec![1]],
        FactorKind::RealSchottkyReflection { gamma, orders } => {
            let mut v = vec![vec![1]];
            let first_y = 2 + *gamma as i32;
            for (i, &k) in orders.iter().enumerate() {
                let y = first_y + i as i32;
                for s in 1..k {
                    v.push(vec![y; s as usize]);
                }
                for s in 0..k {
                    let mut w = vec![1];
                    w.extend(vec![y; s as usize]);
                    if s > 0 {
                        v.push(w);
                    }
                }
            }
            v
        }
    }
}

/// Evaluates a word `±(i + 1)` over the given generator maps.
pub fn evaluate(generators: &[TransformMap], word: &[i32]) -> TransformMap {
    word.iter().fold(TransformMap::identity(), |acc, &l| {
        let g = generators[(l.unsigned_abs() - 1) as usize];
        acc.compose(&if l > 0 { g } else { g.inverse() })
    })
}

/// `g^e` as a word.
fn power_word(g: i32, e: i64) -> Vec<i32> {
    vec![if e >= 0 { g } else { -g }; e.unsigned_abs() as usize]
}

/// Minimal-length exponent representative of `s` modulo `k`.
fn balanced(s: u64, k: u64) -> i64 {
    if 2 * s <= k {
        s as i64
    } else {
        s as i64 - k as i64
    }
}

impl FactorGroup {
    pub fn maps(&self) -> Vec<TransformMap> {
        self.generators.iter().map(|(_, g)| *g).collect()
    }

    /// Generators conjugated back to standard position.
    pub fn standard_generators(&self) -> Vec<TransformMap> {
        let back = self.conjugator.inverse();
        self.maps().iter().map(|g| g.conjugate_by(&back)).collect()
    }

    /// Defining relations as local words.
    pub fn relations(&self) -> Vec<Vec<i32>> {
        let (mut p, r) = self.kind.relators();
        p.extend(r);
        p
    }

    /// Largest deviation from the identity over the defining relations,
    /// relative to the squared size of the generator matrices.
    pub fn relation_residual(&self) -> f64 {
        let maps = self.maps();
        let scale = maps.iter().map(|g| g.norm() * g.norm()).fold(1.0, f64::max);
        self.relations()
            .iter()
            .map(|w| evaluate(&maps, w).distance(&TransformMap::identity()) / scale)
            .fold(0.0, f64::max)
    }

    /// Whether `z` lies in the envelope.
    pub fn envelope_contains(&self, z: ComplexPoint, slack: f64) -> bool {
        self.core.iter().any(|r| r.contains(z, slack))
    }

    /// Signed distance to the envelope union (positive inside).
    pub fn envelope_distance(&self, z: Complex64) -> f64 {
        self.core.iter().map(|r| r.signed_distance(z)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Boundary samples of the fundamental domain, i.e. of the envelope union.
    pub fn envelope_boundary(&self, per_arc: usize) -> Vec<Complex64> {
        let mut out = Vec::new();
        for (i, r) in self.core.iter().enumerate() {
            for z in r.boundary_samples(per_arc) {
                let buried = self.core.iter().enumerate().any(|(j, s)| j != i && s.signed_distance(z) > 1e-12);
                if !buried {
                    out.push(z);
                }
            }
        }
        out
    }

    /// Whether `g` sends the fundamental domain into the envelope, judged on
    /// the interior witness and on boundary samples.
    pub fn absorbs(&self, g: &TransformMap, per_arc: usize, slack: f64) -> bool {
        if !self.envelope_contains(g.apply(self.interior_witness), -slack) {
            return false;
        }
        self.envelope_boundary(per_arc).into_iter().all(|z| self.envelope_contains(g.apply(z.into()), slack))
    }

    /// Maps that must absorb the fundamental domain: generators, their
    /// inverses, and the torsion elements.
    pub fn absorbing_maps(&self) -> Vec<TransformMap> {
        let mut out: Vec<TransformMap> = Vec::new();
        for g in self.maps() {
            out.push(g);
            out.push(g.inverse());
        }
        out.extend(self.torsion_elements.iter().map(|(_, g)| *g));
        out
    }

    /// All nontrivial elements of normal-form length at most `max_len`.
    pub fn local_elements(&self, max_len: usize) -> Vec<LocalElement> {
        let maps = self.maps();
        let make = |word: Vec<i32>, length: usize| LocalElement { map: evaluate(&maps, &word), word, length };
        let cyclic_inf = |g: i32| {
            (1..=max_len as i64).flat_map(move |j| [j, -j]).map(move |e| (power_word(g, e), e.unsigned_abs() as usize))
        };
        let cyclic_fin = |g: i32, k: u64| {
            (1..k).map(move |s| {
                let e = balanced(s, k);
                (power_word(g, e), e.unsigned_abs() as usize)
            })
        };
        let mut out = Vec::new();
        match &self.kind {
            FactorKind::LoxodromicCyclic | FactorKind::GlideCyclic => {
                out.extend(cyclic_inf(1).map(|(w, l)| make(w, l)));
            }
            FactorKind::EllipticCyclic { k } | FactorKind::PseudoEllipticCyclic { order: k } => {
                out.extend(cyclic_fin(1, *k).filter(|(_, l)| *l <= max_len).map(|(w, l)| make(w, l)));
            }
            FactorKind::ReflectionCyclic => {
                if max_len >= 1 {
                    out.push(make(vec![1], 1));
                }
            }
            FactorKind::LoxEllAbelian { k } | FactorKind::LoxPseudoSwap { order: k } => {
                out.extend(product_elements(cyclic_inf(1).collect(), cyclic_fin(2, *k).collect(), max_len, &make));
            }
            FactorKind::GlideHalfTurn => {
                out.extend(product_elements(cyclic_inf(1).collect(), vec![(vec![2], 1)], max_len, &make));
            }
            FactorKind::RealSchottkyReflection { gamma, orders } => {
                let mut pieces: Vec<Vec<(Vec<i32>, usize)>> = Vec::new();
                for j in 0..*gamma as i32 {
                    pieces.push(cyclic_inf(2 + j).collect());
                }
                let first_y = 2 + *gamma as i32;
                for (i, &k) in orders.iter().enumerate() {
                    pieces.push(cyclic_fin(first_y + i as i32, k).collect());
                }
                let inner = free_product_words(&pieces, max_len);
                if max_len >= 1 {
                    out.push(make(vec![1], 1));
                }
                for (w, l) in inner {
                    if l + 1 <= max_len {
                        let mut rw = vec![1];
                        rw.extend(&w);
                        out.push(make(rw, l + 1));
                    }
                    out.push(make(w, l));
                }
            }
        }
        out
    }

    /// Growth series `1 + Σ c_l t^l` of the factor, truncated at `max_len`.
    pub fn growth_series(&self, max_len: usize) -> Vec<i128> {
        kind_growth_series(&self.kind, max_len)
    }
}

/// Elements `x^j y^s` of a direct product, `(j, s) ≠ (0, 0)`.
fn product_elements(
    xs: Vec<(Vec<i32>, usize)>,
    ys: Vec<(Vec<i32>, usize)>,
    max_len: usize,
    make: &dyn Fn(Vec<i32>, usize) -> LocalElement,
) -> Vec<LocalElement> {
    let mut out = Vec::new();
    let with_identity = |v: Vec<(Vec<i32>, usize)>| {
        let mut all = vec![(Vec::new(), 0)];
        all.extend(v);
        all
    };
    for (wx, lx) in with_identity(xs) {
        for (wy, ly) in with_identity(ys.clone()) {
            let l = lx + ly;
            if l == 0 || l > max_len {
                continue;
            }
            let mut w = wx.clone();
            w.extend(&wy);
            out.push(make(w, l));
        }
    }
    out
}

/// Alternating products of nontrivial pieces from distinct consecutive
/// factors, total length at most `max_len`.
pub fn free_product_words(pieces: &[Vec<(Vec<i32>, usize)>], max_len: usize) -> Vec<(Vec<i32>, usize)> {
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<i32>, usize, Option<usize>)> = vec![(Vec::new(), 0, None)];
    while let Some((word, len, last)) = stack.pop() {
        if len > 0 {
            out.push((word.clone(), len));
        }
        for (f, elems) in pieces.iter().enumerate() {
            if Some(f) == last {
                continue;
            }
            for (w, l) in elems {
                if len + l <= max_len {
                    let mut next = word.clone();
                    next.extend(w);
                    stack.push((next, len + l, Some(f)));
                }
            }
        }
    }
    out
}

/// Growth series of a factor kind.
pub fn kind_growth_series(kind: &FactorKind, max_len: usize) -> Vec<i128> {
    let infinite = || {
        let mut s = vec![0i128; max_len + 1];
        s[0] = 1;
        for c in s.iter_mut().skip(1) {
            *c = 2;
        }
        s
    };
    let finite = |k: u64| {
        let mut s = vec![0i128; max_len + 1];
        s[0] = 1;
        for j in 1..k {
            let l = balanced(j, k).unsigned_abs() as usize;
            if l <= max_len {
                s[l] += 1;
            }
        }
        s
    };
    match kind {
        FactorKind::LoxodromicCyclic | FactorKind::GlideCyclic => infinite(),
        FactorKind::EllipticCyclic { k } | FactorKind::PseudoEllipticCyclic { order: k } => finite(*k),
        FactorKind::ReflectionCyclic => finite(2),
        FactorKind::LoxEllAbelian { k } | FactorKind::LoxPseudoSwap { order: k } => {
            series_mul(&infinite(), &finite(*k), max_len)
        }
        FactorKind::GlideHalfTurn => series_mul(&infinite(), &finite(2), max_len),
        FactorKind::RealSchottkyReflection { gamma, orders } => {
            let mut pieces: Vec<Vec<i128>> = (0..*gamma).map(|_| infinite()).collect();
            pieces.extend(orders.iter().map(|&k| finite(k)));
            series_mul(&finite(2), &free_product_series(&pieces, max_len), max_len)
        }
    }
}

pub fn series_mul(x: &[i128], y: &[i128], max_len: usize) -> Vec<i128> {
    let mut out = vec![0i128; max_len + 1];
    for (i, a) in x.iter().enumerate().take(max_len + 1) {
        for (j, b) in y.iter().enumerate().take(max_len + 1 - i) {
            out[i + j] += a * b;
        }
    }
    out
}

/// Inverse of a power series with constant term 1.
pub fn series_inv(x: &[i128], max_len: usize) -> Vec<i128> {
    assert_eq!(x[0], 1);
    let mut out = vec![0i128; max_len + 1];
    out[0] = 1;
    for l in 1..=max_len {
        let s: i128 = (1..=l).map(|i| x.get(i).copied().unwrap_or(0) * out[l - i]).sum();
        out[l] = -s;
    }
    out
}

/// Growth series of a free product: `1/f = Σ 1/f_i - (r - 1)`.
pub fn free_product_series(pieces: &[Vec<i128>], max_len: usize) -> Vec<i128> {
    if pieces.is_empty() {
        let mut one = vec![0i128; max_len + 1];
        one[0] = 1;
        return one;
    }
    let mut acc = vec![0i128; max_len + 1];
    for p in pieces {
        for (a, b) in acc.iter_mut().zip(series_inv(p, max_len)) {
            *a += b;
        }
    }
    acc[0] -= pieces.len() as i128 - 1;
    series_inv(&acc, max_len)
}

/// `factor_envelope`: the envelope regions of a factor.
pub fn factor_envelope(f: &FactorGroup) -> Vec<Region> {
    f.core.clone()
}

/// `enumerate_torsion`: the nontrivial finite-order elements of a factor.
pub fn enumerate_torsion(f: &FactorGroup) -> Vec<(Vec<i32>, TransformMap)> {
    f.torsion_elements.clone()
}
