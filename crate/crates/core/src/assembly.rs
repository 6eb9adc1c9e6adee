//! Free-product assembly of localized factors, with a sampled combination
//! certificate, word enumeration, a parabolic audit and limit-set sampling.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factors::{build_factor, free_product_series, kind_growth_series, FactorError, FactorGroup, FactorParams};
use crate::handlebody::{boundary_orbifold, OrbifoldSignature};
use crate::moebius::{classify, fixed_points, ComplexPoint, GeneralizedCircle, MapClass, TransformMap};
use crate::signature::{AnySignature, ConformalSignature, FactorKind, Presentation};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AssemblyError {
    #[error("inadmissible signature: {0}")]
    InadmissibleSignature(String),
    #[error("could not place factors: {0}")]
    PlacementFailure(String),
    #[error("certificate failed at step {step}: {detail}")]
    CertificateFailure { step: usize, detail: String },
    #[error("parabolic suspect: {word}")]
    ParabolicSuspect { word: String },
    #[error(transparent)]
    Factor(#[from] FactorError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub spacing: f64,
    pub radius: f64,
}

impl Default for Layout {
    fn default() -> Self {
        Layout { spacing: 4.0, radius: 1.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assembly {
    pub factors: Vec<FactorGroup>,
    pub centers: Vec<ComplexPoint>,
    /// `Σ_t` for the steps `t = 1, ..., r - 1`.
    pub separators: Vec<GeneralizedCircle>,
    pub presentation: Presentation,
    /// Global generator table, in presentation order.
    pub generators: Vec<(String, TransformMap)>,
    /// Index of the first global generator of each factor.
    pub offsets: Vec<usize>,
    pub layout: Layout,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepReport {
    pub step: usize,
    pub samples: usize,
    /// Smallest clearance in the containment checks (a) and (b).
    pub separation_margin: f64,
    /// Smallest depth of the images in check (c); `f64::MIN` when an image
    /// passes through infinity.
    pub absorption_margin: f64,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub steps: Vec<StepReport>,
    pub samples_per_arc: usize,
    pub margin: f64,
    /// `None` when there are no steps.
    pub worst_separation: Option<f64>,
    pub worst_absorption: Option<f64>,
    pub passed: bool,
}

impl Certificate {
    /// Worst clearance of the containment checks (a) and (b). The depth of
    /// the absorbed images is reported separately; it is bounded by the
    /// envelope size rather than by the spacing.
    pub fn worst_margin(&self) -> Option<f64> {
        self.worst_separation
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParabolicAudit {
    pub checked: usize,
    pub torsion_matches: usize,
    pub suspects: Vec<String>,
}

/// Builds the factors of `sig` on the real axis at `0, spacing, 2 spacing, ...`.
pub fn assemble(sig: &AnySignature, layout: Layout) -> Result<Assembly, AssemblyError> {
    sig.check_admissible().map_err(|e| AssemblyError::InadmissibleSignature(e.to_string()))?;
    let n = match sig {
        AnySignature::Conformal(s) => s.n,
        AnySignature::Extended(s) => s.n,
    };
    if !(layout.radius > 0.0 && layout.spacing > 0.0) {
        return Err(AssemblyError::PlacementFailure("spacing and radius must be positive".into()));
    }
    let mut spacing = layout.spacing;
    let mut attempts = 0;
    while spacing - 2.0 * layout.radius < 0.1 * layout.radius {
        attempts += 1;
        if attempts >= 3 {
            return Err(AssemblyError::PlacementFailure(format!(
                "spacing {spacing} still too small for radius {} after doubling",
                layout.radius
            )));
        }
        spacing *= 2.0;
    }
    let kinds = sig.factor_kinds();
    let mut factors = Vec::new();
    for (i, kind) in kinds.iter().enumerate() {
        let center = ComplexPoint::new(i as f64 * spacing, 0.0);
        factors.push(build_factor(kind, n, center, layout.radius, FactorParams::default())?);
    }
    Ok(from_factors(factors, Layout { spacing, radius: layout.radius }))
}

/// Wraps already localized factors without any placement checks.
pub fn from_factors(factors: Vec<FactorGroup>, layout: Layout) -> Assembly {
    let kinds: Vec<FactorKind> = factors.iter().map(|f| f.kind.clone()).collect();
    let presentation = Presentation::extended(&kinds);
    let centers: Vec<ComplexPoint> = factors.iter().map(|f| f.localization.0).collect();
    let mut separators = Vec::new();
    for t in 1..centers.len() {
        let c = centers[t].finite().expect("localized factor");
        let gap = centers[..t]
            .iter()
            .filter_map(|p| p.finite())
            .map(|p| (p - c).norm())
            .fold(f64::INFINITY, f64::min);
        separators.push(GeneralizedCircle::from_center_radius(c, gap / 2.0));
    }
    let mut generators = Vec::new();
    let mut offsets = Vec::new();
    for f in &factors {
        offsets.push(generators.len());
        generators.extend(f.generators.iter().cloned());
    }
    for (i, name) in presentation.generators.iter().enumerate() {
        generators[i].0 = name.clone();
    }
    Assembly { factors, centers, separators, presentation, generators, offsets, layout }
}

fn circle_data(c: &GeneralizedCircle) -> (Complex64, f64) {
    (c.center().expect("round separator"), c.radius().expect("round separator"))
}

/// Runs the sampled combination checks for every step.
pub fn certify(asm: &Assembly, samples_per_arc: usize, margin: f64) -> Certificate {
    let mut steps = Vec::new();
    for (idx, sigma) in asm.separators.iter().enumerate() {
        steps.push(check_step(asm, idx + 1, sigma, samples_per_arc, margin));
    }
    let worst_separation = steps.iter().map(|s| s.separation_margin).reduce(f64::min);
    let worst_absorption = steps.iter().map(|s| s.absorption_margin).reduce(f64::min);
    let passed = steps.iter().all(|s| s.passed);
    Certificate { steps, samples_per_arc, margin, worst_separation, worst_absorption, passed }
}

/// Like [`certify`], but fails on the first failing step.
pub fn verify(asm: &Assembly, samples_per_arc: usize, margin: f64) -> Result<Certificate, AssemblyError> {
    let cert = certify(asm, samples_per_arc, margin);
    if let Some(bad) = cert.steps.iter().find(|s| !s.passed) {
        return Err(AssemblyError::CertificateFailure {
            step: bad.step,
            detail: bad.detail.clone().unwrap_or_default(),
        });
    }
    Ok(cert)
}

fn check_step(asm: &Assembly, step: usize, sigma: &GeneralizedCircle, samples: usize, margin: f64) -> StepReport {
    let (c, rho) = circle_data(sigma);
    let ring = sigma.sample(samples);
    let mut count = 0usize;
    let mut separation = f64::INFINITY;
    let mut detail: Option<String> = None;
    let note = |d: &mut Option<String>, msg: String| {
        if d.is_none() {
            *d = Some(msg);
        }
    };
    // (a) The closed inner disc of Σ avoids every accumulated envelope part.
    for (fi, f) in asm.factors[..step].iter().enumerate() {
        for region in &f.core {
            for part in region.parts() {
                for &z in &ring {
                    count += 1;
                    let clearance = -part.signed_distance(z);
                    separation = separation.min(clearance);
                    if clearance <= margin {
                        note(&mut detail, format!("(a) sample {z} of the separator meets factor {fi}"));
                    }
                }
                for z in part.boundary().sample(samples) {
                    count += 1;
                    let clearance = (z - c).norm() - rho;
                    separation = separation.min(clearance);
                    if clearance <= margin {
                        note(&mut detail, format!("(a) envelope point {z} of factor {fi} inside the separator"));
                    }
                }
            }
        }
    }
    // (b) The closed outer side of Σ avoids the new factor's envelope.
    let new = &asm.factors[step];
    for region in &new.core {
        for part in region.parts() {
            for &z in &ring {
                count += 1;
                let clearance = -part.signed_distance(z);
                separation = separation.min(clearance);
                if clearance <= margin {
                    note(&mut detail, format!("(b) sample {z} of the separator meets the new factor"));
                }
            }
            for z in part.boundary().sample(samples) {
                count += 1;
                let clearance = rho - (z - c).norm();
                separation = separation.min(clearance);
                if clearance <= margin {
                    note(&mut detail, format!("(b) envelope point {z} of the new factor outside the separator"));
                }
            }
        }
    }
    // (c) Every generator, inverse and torsion element of the new factor
    // sends the outer side of Σ into the new factor's envelope.
    let mut absorption = f64::INFINITY;
    let mut probes: Vec<ComplexPoint> = ring.iter().map(|&z| ComplexPoint::Finite(z)).collect();
    for s in [1.5, 3.0, 10.0] {
        probes.extend((0..16).map(|j| ComplexPoint::Finite(c + Complex64::from_polar(rho * s, TAU * j as f64 / 16.0))));
    }
    probes.push(ComplexPoint::Infinity);
    for g in new.absorbing_maps() {
        match g.inverse().apply(ComplexPoint::Infinity) {
            ComplexPoint::Finite(p) if (p - c).norm() < rho => {}
            pole => {
                absorption = f64::MIN;
                note(&mut detail, format!("(c) an element sends the outer side through infinity (pole {pole})"));
                continue;
            }
        }
        for &z in &probes {
            count += 1;
            let depth = match g.apply(z) {
                ComplexPoint::Finite(w) => new.envelope_distance(w),
                ComplexPoint::Infinity => f64::MIN,
            };
            absorption = absorption.min(depth);
            if !(depth > margin) {
                note(&mut detail, format!("(c) image of {z} lies outside the envelope (depth {depth:e})"));
            }
        }
    }
    StepReport {
        step,
        samples: count,
        separation_margin: separation,
        absorption_margin: absorption,
        passed: detail.is_none(),
        detail,
    }
}

/// Pieces of one factor in global letters: `(word, length, map)`.
fn factor_pieces(asm: &Assembly, fi: usize, max_len: usize) -> Vec<(Vec<i32>, usize, TransformMap)> {
    let off = asm.offsets[fi] as i32;
    asm.factors[fi]
        .local_elements(max_len)
        .into_iter()
        .map(|e| (e.word.iter().map(|&l| l.signum() * (l.abs() + off)).collect(), e.length, e.map))
        .collect()
}

/// All nontrivial elements of normal-form length at most `max_len`, sorted
/// by length and then by word.
pub fn words(asm: &Assembly, max_len: usize) -> Vec<(Vec<i32>, TransformMap)> {
    assert!(max_len <= 12, "word length capped at 12");
    let pieces: Vec<_> = (0..asm.factors.len()).map(|fi| factor_pieces(asm, fi, max_len)).collect();
    let mut out: Vec<(Vec<i32>, usize, TransformMap)> = Vec::new();
    let mut stack: Vec<(Vec<i32>, usize, Option<usize>, TransformMap)> =
        vec![(Vec::new(), 0, None, TransformMap::identity())];
    while let Some((word, len, last, map)) = stack.pop() {
        if len > 0 {
            out.push((word.clone(), len, map));
        }
        for (fi, elems) in pieces.iter().enumerate() {
            if Some(fi) == last {
                continue;
            }
            for (w, l, g) in elems {
                if len + l <= max_len {
                    let mut next = word.clone();
                    next.extend(w);
                    stack.push((next, len + l, Some(fi), map.compose(g)));
                }
            }
        }
    }
    out.sort_by(|x, y| (x.1, &x.0).cmp(&(y.1, &y.0)));
    out.into_iter().map(|(w, _, g)| (w, g)).collect()
}

/// Number of nontrivial elements of length at most `max_len`, from the
/// growth series of the free product.
pub fn word_count(kinds: &[FactorKind], max_len: usize) -> i128 {
    let series: Vec<Vec<i128>> = kinds.iter().map(|k| kind_growth_series(k, max_len)).collect();
    free_product_series(&series, max_len)[1..].iter().sum()
}

/// Squared traces `(2 cos(π s/k))²` of the torsion of the factors.
fn torsion_traces(asm: &Assembly) -> Vec<f64> {
    let mut out = Vec::new();
    for f in &asm.factors {
        for (_, g) in &f.torsion_elements {
            if !g.is_reversing() {
                out.push(g.trace_sq().re);
            }
        }
    }
    out
}

pub fn audit_no_parabolic(asm: &Assembly, max_len: usize, eps: f64) -> ParabolicAudit {
    let traces = torsion_traces(asm);
    let mut audit = ParabolicAudit { checked: 0, torsion_matches: 0, suspects: Vec::new() };
    for (w, g) in words(asm, max_len) {
        if g.is_reversing() {
            continue;
        }
        audit.checked += 1;
        let t2 = g.trace_sq();
        if (t2 - Complex64::new(4.0, 0.0)).norm() > eps {
            if traces.iter().any(|&t| (t2 - Complex64::new(t, 0.0)).norm() <= eps) {
                audit.torsion_matches += 1;
            }
            continue;
        }
        audit.suspects.push(asm.presentation.word_to_string(&w));
    }
    audit
}

pub fn check_no_parabolic(asm: &Assembly, max_len: usize, eps: f64) -> Result<ParabolicAudit, AssemblyError> {
    let audit = audit_no_parabolic(asm, max_len, eps);
    match audit.suspects.first() {
        Some(w) => Err(AssemblyError::ParabolicSuspect { word: w.clone() }),
        None => Ok(audit),
    }
}

/// Attracting fixed point of a loxodromic map. Products of long words that
/// are finite order in exact arithmetic (squares of conjugated reflections)
/// carry rounding of order `scale² · eps`, so the loxodromic test is relative.
fn attracting_fixed_point(g: &TransformMap, scale: f64) -> Option<ComplexPoint> {
    let noise = 1e-8 * scale.powi(2).max(1.0);
    if (g.trace_sq() - Complex64::new(4.0, 0.0)).norm() <= noise {
        return None;
    }
    if !matches!(classify(g), Ok(MapClass::Loxodromic { .. })) {
        return None;
    }
    let [a, _, c, d] = g.entries();
    let pts = fixed_points(g).ok()?;
    pts.points().iter().copied().find(|p| match p {
        ComplexPoint::Finite(z) => (c * z + d).norm() > 1.0,
        ComplexPoint::Infinity => c.norm() < 1e-15 * g.norm() && a.norm() > d.norm(),
    })
}

/// Attracting fixed points of the loxodromic words (squares of reversing
/// words) up to length `depth`, deduplicated in the chordal metric.
pub fn limit_points(asm: &Assembly, depth: usize) -> Vec<ComplexPoint> {
    const TOL: f64 = 1e-9;
    let mut out: Vec<ComplexPoint> = Vec::new();
    // Cells of width 2 TOL in the first coordinate on the Riemann sphere.
    let mut cells: std::collections::HashMap<i64, Vec<usize>> = Default::default();
    for (_, g) in words(asm, depth) {
        let h = if g.is_reversing() { g.compose(&g) } else { g };
        let Some(p) = attracting_fixed_point(&h, g.norm()) else { continue };
        let x = match p {
            ComplexPoint::Finite(z) => 2.0 * z.re / (1.0 + z.norm_sqr()),
            ComplexPoint::Infinity => 0.0,
        };
        let cell = (x / (2.0 * TOL)).floor() as i64;
        let seen = (cell - 1..=cell + 1)
            .filter_map(|c| cells.get(&c))
            .flatten()
            .any(|&i| out[i].chordal_distance(p) < TOL);
        if !seen {
            cells.entry(cell).or_default().push(out.len());
            out.push(p);
        }
    }
    out
}

/// Whether `z` lies in the union of the factor envelopes dilated by `slack`.
pub fn in_envelope_union(asm: &Assembly, z: ComplexPoint, slack: f64) -> bool {
    asm.factors.iter().any(|f| f.envelope_contains(z, slack))
}

pub fn quotient_orbifold_signature(sig: &ConformalSignature) -> Result<OrbifoldSignature, AssemblyError> {
    sig.check_admissible().map_err(|e| AssemblyError::InadmissibleSignature(e.to_string()))?;
    Ok(boundary_orbifold(sig))
}

/// `re,im` rows; points at infinity are skipped and counted.
pub fn limit_set_csv(points: &[ComplexPoint]) -> (String, usize) {
    let mut out = String::from("re,im\n");
    let mut infinite = 0;
    for p in points {
        match p {
            ComplexPoint::Finite(z) => {
                let _ = writeln!(out, "{:.16e},{:.16e}", z.re, z.im);
            }
            ComplexPoint::Infinity => infinite += 1,
        }
    }
    (out, infinite)
}

/// `curve_id,re,im` samples of the envelope boundary, one curve per region.
pub fn fundamental_domain_csv(asm: &Assembly, per_arc: usize) -> String {
    let mut out = String::from("curve_id,re,im\n");
    let mut id = 0;
    for f in &asm.factors {
        for region in &f.core {
            for z in region.boundary_samples(per_arc) {
                if !in_other_region(f, region, z) {
                    let _ = writeln!(out, "{id},{:.16e},{:.16e}", z.re, z.im);
                }
            }
            id += 1;
        }
    }
    out
}

fn in_other_region(f: &FactorGroup, region: &crate::moebius::Region, z: Complex64) -> bool {
    f.core.iter().any(|r| r != region && r.signed_distance(z) > 1e-12)
}

/// Largest entrywise distance below which two words count as equal.
pub const FAITHFUL_TOL: f64 = 1e-6;

/// Pairs of words whose matrices agree within `tol` (up to sign).
pub fn coincident_words(list: &[(Vec<i32>, TransformMap)], tol: f64) -> Vec<(Vec<i32>, Vec<i32>)> {
    // Matrices within `tol` have norms within `tol`. The sum of squared
    // entries is sign invariant and moves by at most 4 tol (2 N + tol).
    let key = |g: &TransformMap| g.entries().iter().map(|x| x * x).sum::<Complex64>().re;
    let mut keyed: Vec<(f64, f64, usize)> =
        list.iter().enumerate().map(|(i, (_, g))| (g.norm(), key(g), i)).collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = Vec::new();
    for i in 0..keyed.len() {
        let (ni, ki, a) = keyed[i];
        for &(nj, kj, b) in &keyed[i + 1..] {
            if nj - ni > tol {
                break;
            }
            if (kj - ki).abs() <= 4.0 * tol * (2.0 * nj + tol) && list[a].1.distance(&list[b].1) <= tol {
                out.push((list[a].0.clone(), list[b].0.clone()));
            }
        }
    }
    out
}
