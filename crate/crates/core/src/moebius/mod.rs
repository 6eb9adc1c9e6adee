//! Möbius and extended Möbius transformations of the Riemann sphere.
//!
//! A [`TransformMap`] is a determinant-one complex 2x2 matrix together with
//! an orientation flag. Orientation-reversing maps act as
//! `z -> (a conj(z) + b) / (c conj(z) + d)`.

mod circle;
mod region;

pub use circle::{Disc, GeneralizedCircle};
pub use region::Region;
pub(crate) use region::enclosing as region_enclosing;

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tolerance;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MoebiusError {
    #[error("matrix is singular (determinant {0:e})")]
    Singular(f64),
    #[error("trace square {0} lies within the parabolic ambiguity band")]
    NumericallyAmbiguous(Complex64),
    #[error("the identity has no isolated fixed-point set")]
    IdentityInput,
    #[error("fixed points coincide")]
    CoincidentFixedPoints,
    #[error("discs overlap, touch, or are nested")]
    OverlappingDiscs,
    #[error("degenerate generalized circle")]
    DegenerateCircle,
}

/// A point of the extended complex plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ComplexPoint {
    Finite(Complex64),
    Infinity,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexPoint::Finite(Complex64::new(re, im))
    }

    pub fn real(re: f64) -> Self {
        ComplexPoint::Finite(Complex64::new(re, 0.0))
    }

    pub fn finite(self) -> Option<Complex64> {
        match self {
            ComplexPoint::Finite(z) => Some(z),
            ComplexPoint::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ComplexPoint::Infinity)
    }

    pub fn conj(self) -> Self {
        match self {
            ComplexPoint::Finite(z) => ComplexPoint::Finite(z.conj()),
            ComplexPoint::Infinity => ComplexPoint::Infinity,
        }
    }

    /// Chordal distance on the unit-diameter Riemann sphere; bounded by 1.
    pub fn chordal_distance(self, other: ComplexPoint) -> f64 {
        match (self, other) {
            (ComplexPoint::Infinity, ComplexPoint::Infinity) => 0.0,
            (ComplexPoint::Finite(z), ComplexPoint::Infinity)
            | (ComplexPoint::Infinity, ComplexPoint::Finite(z)) => 1.0 / (1.0 + z.norm_sqr()).sqrt(),
            (ComplexPoint::Finite(z), ComplexPoint::Finite(w)) => {
                (z - w).norm() / ((1.0 + z.norm_sqr()).sqrt() * (1.0 + w.norm_sqr()).sqrt())
            }
        }
    }

    pub fn approx_eq(self, other: ComplexPoint, tol: f64) -> bool {
        self.chordal_distance(other) < tol
    }
}

impl From<Complex64> for ComplexPoint {
    fn from(z: Complex64) -> Self {
        ComplexPoint::Finite(z)
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexPoint::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
            ComplexPoint::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl Orientation {
    pub fn is_reversing(self) -> bool {
        self == Orientation::Reversing
    }

    fn combine(self, other: Orientation) -> Orientation {
        if self == other {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        }
    }
}

/// A conformal or anticonformal automorphism of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    orientation: Orientation,
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl TransformMap {
    /// Builds the map from raw entries, normalizing the determinant to one.
    pub fn new(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        orientation: Orientation,
    ) -> Result<Self, MoebiusError> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if !(det.norm() > 1e-300) || det.norm() <= 1e-14 * scale * scale {
            return Err(MoebiusError::Singular(det.norm()));
        }
        let k = det.sqrt().inv();
        Ok(TransformMap { a: a * k, b: b * k, c: c * k, d: d * k, orientation })
    }

    pub fn conformal(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, MoebiusError> {
        Self::new(a, b, c, d, Orientation::Preserving)
    }

    pub fn anticonformal(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, MoebiusError> {
        Self::new(a, b, c, d, Orientation::Reversing)
    }

    pub fn identity() -> Self {
        let one = c64(1.0, 0.0);
        let zero = c64(0.0, 0.0);
        TransformMap { a: one, b: zero, c: zero, d: one, orientation: Orientation::Preserving }
    }

    /// Complex conjugation `z -> conj(z)`.
    pub fn conjugation() -> Self {
        TransformMap { orientation: Orientation::Reversing, ..Self::identity() }
    }

    /// `z -> k z` for nonzero `k`.
    pub fn scaling(k: Complex64) -> Self {
        Self::conformal(k, c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)).expect("nonzero scale")
    }

    /// `z -> z + t`.
    pub fn translation(t: Complex64) -> Self {
        Self::conformal(c64(1.0, 0.0), t, c64(0.0, 0.0), c64(1.0, 0.0)).expect("unimodular")
    }

    /// `z -> k conj(z)` for nonzero `k`.
    pub fn glide_scaling(k: Complex64) -> Self {
        Self::anticonformal(k, c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)).expect("nonzero scale")
    }

    /// Reflection in a generalized circle.
    pub fn reflection(circle: &GeneralizedCircle) -> Self {
        let (a, b, c) = circle.coefficients();
        Self::anticonformal(-b, c64(-c, 0.0), c64(a, 0.0), b.conj()).expect("nondegenerate circle")
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn is_reversing(&self) -> bool {
        self.orientation.is_reversing()
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn trace_sq(&self) -> Complex64 {
        let t = self.trace();
        t * t
    }

    /// Entrywise max-norm of the matrix.
    pub fn norm(&self) -> f64 {
        self.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn apply(&self, z: ComplexPoint) -> ComplexPoint {
        let w = if self.is_reversing() { z.conj() } else { z };
        match w {
            ComplexPoint::Infinity => {
                if self.c == c64(0.0, 0.0) {
                    ComplexPoint::Infinity
                } else {
                    ComplexPoint::Finite(self.a / self.c)
                }
            }
            ComplexPoint::Finite(w) => {
                let den = self.c * w + self.d;
                if den == c64(0.0, 0.0) {
                    ComplexPoint::Infinity
                } else {
                    ComplexPoint::Finite((self.a * w + self.b) / den)
                }
            }
        }
    }

    /// Applies the map to a finite point, returning `None` at the pole.
    pub fn apply_finite(&self, z: Complex64) -> Option<Complex64> {
        self.apply(ComplexPoint::Finite(z)).finite()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &TransformMap) -> TransformMap {
        let g = if self.is_reversing() { other.conj_entries() } else { *other };
        let f = self;
        let a = f.a * g.a + f.b * g.c;
        let b = f.a * g.b + f.b * g.d;
        let c = f.c * g.a + f.d * g.c;
        let d = f.c * g.b + f.d * g.d;
        let orientation = f.orientation.combine(other.orientation);
        // The product is unimodular up to rounding; renormalize without the
        // conditioning check, which large words legitimately fail.
        let det = a * d - b * c;
        let k = if det.norm() > 0.0 { det.sqrt().inv() } else { c64(1.0, 0.0) };
        TransformMap { a: a * k, b: b * k, c: c * k, d: d * k, orientation }
    }

    fn conj_entries(&self) -> TransformMap {
        TransformMap {
            a: self.a.conj(),
            b: self.b.conj(),
            c: self.c.conj(),
            d: self.d.conj(),
            orientation: self.orientation,
        }
    }

    pub fn inverse(&self) -> TransformMap {
        let inv = TransformMap { a: self.d, b: -self.b, c: -self.c, d: self.a, orientation: self.orientation };
        if self.is_reversing() {
            inv.conj_entries()
        } else {
            inv
        }
    }

    pub fn pow(&self, k: i64) -> TransformMap {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut result = TransformMap::identity();
        let mut acc = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&acc);
            }
            acc = acc.compose(&acc);
            e >>= 1;
        }
        result
    }

    /// `h ∘ self ∘ h^{-1}`.
    pub fn conjugate_by(&self, h: &TransformMap) -> TransformMap {
        h.compose(self).compose(&h.inverse())
    }

    /// Distance between matrices up to sign; infinite when orientations differ.
    pub fn distance(&self, other: &TransformMap) -> f64 {
        if self.orientation != other.orientation {
            return f64::INFINITY;
        }
        let x = self.entries();
        let y = other.entries();
        let plus = (0..4).map(|i| (x[i] - y[i]).norm()).fold(0.0, f64::max);
        let minus = (0..4).map(|i| (x[i] + y[i]).norm()).fold(0.0, f64::max);
        plus.min(minus)
    }

    pub fn approx_eq(&self, other: &TransformMap, tol: f64) -> bool {
        self.distance(other) < tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&TransformMap::identity(), tol)
    }
}

impl Mul for TransformMap {
    type Output = TransformMap;

    fn mul(self, rhs: TransformMap) -> TransformMap {
        self.compose(&rhs)
    }
}

impl fmt::Display for TransformMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = if self.is_reversing() { "conj(z)" } else { "z" };
        write!(f, "({})*{var} + ({}) / ({})*{var} + ({})", self.a, self.b, self.c, self.d)
    }
}

/// `f ∘ g`.
pub fn compose(f: &TransformMap, g: &TransformMap) -> TransformMap {
    f.compose(g)
}

/// Conjugacy class of a (extended) Möbius transformation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum MapClass {
    Identity,
    Elliptic { order: Option<u32> },
    Parabolic,
    Loxodromic { multiplier: Complex64 },
    Reflection,
    ImaginaryReflection,
    PseudoElliptic { order: Option<u32> },
    GlideReflection,
    PseudoParabolic,
}

impl MapClass {
    /// Order of the element when it is finite and known.
    pub fn order(&self) -> Option<u32> {
        match self {
            MapClass::Identity => Some(1),
            MapClass::Elliptic { order } | MapClass::PseudoElliptic { order } => *order,
            MapClass::Reflection | MapClass::ImaginaryReflection => Some(2),
            _ => None,
        }
    }

    /// Same class up to the loxodromic multiplier.
    pub fn same_kind(&self, other: &MapClass) -> bool {
        match (self, other) {
            (MapClass::Loxodromic { .. }, MapClass::Loxodromic { .. }) => true,
            _ => self == other,
        }
    }
}

pub fn classify(f: &TransformMap) -> Result<MapClass, MoebiusError> {
    classify_with(f, tolerance::DEFAULT_N_MAX)
}

/// Classifies `f`, snapping elliptic rotation angles to orders `<= 2 n_max`.
pub fn classify_with(f: &TransformMap, n_max: u32) -> Result<MapClass, MoebiusError> {
    if !f.is_reversing() {
        return classify_conformal(f, n_max);
    }
    let square = f.compose(f);
    match classify_conformal(&square, n_max)? {
        MapClass::Identity => {
            // f∘f has raw matrix M conj(M) = ±I; the sign separates the two involutions.
            let [a, b, c, _] = f.entries();
            let [_, _, _, d] = f.entries();
            let p00 = a * a.conj() + b * c.conj();
            let p11 = c * b.conj() + d * d.conj();
            let sign = (p00 + p11).re;
            if sign > 0.0 {
                Ok(MapClass::Reflection)
            } else {
                Ok(MapClass::ImaginaryReflection)
            }
        }
        MapClass::Elliptic { order } => Ok(MapClass::PseudoElliptic { order: order.map(|k| 2 * k) }),
        MapClass::Loxodromic { .. } => Ok(MapClass::GlideReflection),
        MapClass::Parabolic => Ok(MapClass::PseudoParabolic),
        other => unreachable!("square of a map classified as {other:?}"),
    }
}

fn classify_conformal(f: &TransformMap, n_max: u32) -> Result<MapClass, MoebiusError> {
    if f.is_identity(tolerance::MATRIX_EQ) {
        return Ok(MapClass::Identity);
    }
    let t = f.trace_sq();
    let off = (t - c64(4.0, 0.0)).norm();
    if off <= tolerance::PARABOLIC_EXACT {
        return Ok(MapClass::Parabolic);
    }
    if off < tolerance::PARABOLIC_BAND {
        return Err(MoebiusError::NumericallyAmbiguous(t));
    }
    let real = t.im.abs() <= 1e-9 * t.norm().max(1.0);
    if real && t.re > -1e-9 && t.re < 4.0 {
        let cos_theta = (t.re / 2.0 - 1.0).clamp(-1.0, 1.0);
        let theta = cos_theta.acos();
        return Ok(MapClass::Elliptic { order: snap_order(theta, n_max) });
    }
    let tr = f.trace();
    let root = (t - c64(4.0, 0.0)).sqrt();
    let l1 = (tr + root) / 2.0;
    let l2 = (tr - root) / 2.0;
    let big = if l1.norm() >= l2.norm() { l1 } else { l2 };
    Ok(MapClass::Loxodromic { multiplier: big * big })
}

/// Finds the order `k` with `theta ≈ 2πs/k`, `gcd(s, k) = 1`, `k <= 2 n_max`.
fn snap_order(theta: f64, n_max: u32) -> Option<u32> {
    let two_pi = std::f64::consts::TAU;
    for k in 2..=2 * n_max.max(1) {
        for s in 1..=k / 2 {
            if s.gcd(&k) != 1 {
                continue;
            }
            if (theta - two_pi * s as f64 / k as f64).abs() < tolerance::ORDER_SNAP {
                return Some(k);
            }
        }
    }
    None
}

/// Fixed-point set of a non-identity map.
#[derive(Clone, Debug, PartialEq)]
pub enum FixedSet {
    Points(Vec<ComplexPoint>),
    Circle(GeneralizedCircle),
}

impl FixedSet {
    pub fn points(&self) -> &[ComplexPoint] {
        match self {
            FixedSet::Points(p) => p,
            FixedSet::Circle(_) => &[],
        }
    }
}

pub fn fixed_points(f: &TransformMap) -> Result<FixedSet, MoebiusError> {
    if f.is_identity(tolerance::MATRIX_EQ) {
        return Err(MoebiusError::IdentityInput);
    }
    if !f.is_reversing() {
        return Ok(FixedSet::Points(conformal_fixed_points(f)));
    }
    match classify(f) {
        Ok(MapClass::Reflection) => Ok(FixedSet::Circle(reflection_circle(f)?)),
        Ok(MapClass::ImaginaryReflection) => Ok(FixedSet::Points(Vec::new())),
        _ => {
            let square = f.compose(f);
            if square.is_identity(tolerance::MATRIX_EQ) {
                return Ok(FixedSet::Points(Vec::new()));
            }
            let pts = conformal_fixed_points(&square)
                .into_iter()
                .filter(|p| f.apply(*p).approx_eq(*p, tolerance::FIXED_POINT))
                .collect();
            Ok(FixedSet::Points(pts))
        }
    }
}

fn conformal_fixed_points(f: &TransformMap) -> Vec<ComplexPoint> {
    let [a, b, c, d] = f.entries();
    let scale = f.norm();
    if c.norm() <= 1e-15 * scale {
        if (d - a).norm() <= 1e-13 * scale {
            return vec![ComplexPoint::Infinity];
        }
        return vec![ComplexPoint::Finite(b / (d - a)), ComplexPoint::Infinity];
    }
    let disc = f.trace_sq() - c64(4.0, 0.0);
    if disc.norm() <= tolerance::PARABOLIC_EXACT {
        return vec![ComplexPoint::Finite((a - d) / (c * 2.0))];
    }
    let root = disc.sqrt();
    vec![
        ComplexPoint::Finite((a - d + root) / (c * 2.0)),
        ComplexPoint::Finite((a - d - root) / (c * 2.0)),
    ]
}

/// Recovers the fixed circle of a reflection from its matrix
/// `t [[-B, -C], [A, conj(B)]]` with `t` purely imaginary.
fn reflection_circle(f: &TransformMap) -> Result<GeneralizedCircle, MoebiusError> {
    let i = c64(0.0, 1.0);
    let [a, b, c, d] = f.entries().map(|z| z * i);
    let coeff_b = (-a + d.conj()) / 2.0;
    GeneralizedCircle::new(c.re, coeff_b, -b.re)
}

/// Transports a generalized circle (keeping its sign) through `f`.
pub fn image_circle(f: &TransformMap, circle: &GeneralizedCircle) -> GeneralizedCircle {
    circle.transform(f)
}

/// Elliptic map of order `k` fixing `p` and `q`, rotating by `2π/k` about `p`.
pub fn make_elliptic(p: ComplexPoint, q: ComplexPoint, k: u32) -> Result<TransformMap, MoebiusError> {
    if p.approx_eq(q, 1e-12) {
        return Err(MoebiusError::CoincidentFixedPoints);
    }
    let chart = chart_to_zero_infinity(p, q)?;
    let half = std::f64::consts::PI / k as f64;
    let rotation = TransformMap::conformal(
        Complex64::from_polar(1.0, half),
        c64(0.0, 0.0),
        c64(0.0, 0.0),
        Complex64::from_polar(1.0, -half),
    )?;
    Ok(rotation.conjugate_by(&chart.inverse()))
}

/// A Möbius map sending `p -> 0` and `q -> ∞`.
pub fn chart_to_zero_infinity(p: ComplexPoint, q: ComplexPoint) -> Result<TransformMap, MoebiusError> {
    let one = c64(1.0, 0.0);
    let zero = c64(0.0, 0.0);
    match (p, q) {
        (ComplexPoint::Finite(p), ComplexPoint::Finite(q)) => TransformMap::conformal(one, -p, one, -q),
        (ComplexPoint::Finite(p), ComplexPoint::Infinity) => TransformMap::conformal(one, -p, zero, one),
        (ComplexPoint::Infinity, ComplexPoint::Finite(q)) => TransformMap::conformal(zero, one, one, -q),
        (ComplexPoint::Infinity, ComplexPoint::Infinity) => Err(MoebiusError::CoincidentFixedPoints),
    }
}

/// Loxodromic map sending `∂d1` onto `∂d2` and the complement of `d1` onto
/// `d2`: the reflection in `∂d2` after the reflection that swaps the circles.
pub fn make_loxodromic_pairing(d1: &Disc, d2: &Disc) -> Result<TransformMap, MoebiusError> {
    if !d1.is_disjoint_from(d2) {
        return Err(MoebiusError::OverlappingDiscs);
    }
    let r1 = TransformMap::reflection(d1.boundary());
    let r2 = TransformMap::reflection(d2.boundary());
    // The limit points of the pencil spanned by the two circles are the
    // fixed points of r2∘r1; in a chart sending them to 0 and ∞ the circles
    // are concentric.
    let pts = conformal_fixed_points(&r2.compose(&r1));
    if pts.len() != 2 {
        return Err(MoebiusError::OverlappingDiscs);
    }
    let chart = chart_to_zero_infinity(pts[0], pts[1])?;
    let radius = |d: &Disc| match chart.apply(ComplexPoint::Finite(d.boundary().sample(1)[0])) {
        ComplexPoint::Finite(w) => Ok(w.norm()),
        ComplexPoint::Infinity => Err(MoebiusError::DegenerateCircle),
    };
    let k = radius(d1)? * radius(d2)?;
    let swap = TransformMap::anticonformal(c64(0.0, 0.0), c64(k, 0.0), c64(1.0, 0.0), c64(0.0, 0.0))?;
    let mid = swap.conjugate_by(&chart.inverse());
    Ok(r2.compose(&mid))
}

/// Witness check that `f` maps `∂d1` onto `∂d2` and the complement of `d1`
/// into `d2`.
pub fn is_valid_pairing(f: &TransformMap, d1: &Disc, d2: &Disc, samples: usize) -> bool {
    let on_boundary = d1.boundary().sample(samples).into_iter().all(|z| match f.apply(z.into()) {
        ComplexPoint::Finite(w) => d2.signed_distance(w).abs() < 1e-7 * (1.0 + w.norm()),
        ComplexPoint::Infinity => d2.boundary().coefficients().0.abs() < 1e-12,
    });
    let outside = d1.complement().witness();
    let inside = d2.strictly_contains(f.apply(outside), 0.0);
    on_boundary && inside && matches!(classify(f), Ok(MapClass::Loxodromic { .. }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn z(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    #[test]
    fn glide_square_is_conformal() {
        let f = TransformMap::glide_scaling(c64(2.0, 0.0));
        let sq = compose(&f, &f);
        assert!(!sq.is_reversing());
        assert!(sq.approx_eq(&TransformMap::scaling(c64(4.0, 0.0)), 1e-12));
        let fourth = f.pow(4);
        assert!(fourth.approx_eq(&TransformMap::scaling(c64(16.0, 0.0)), 1e-12));
    }

    #[test]
    fn identity_law() {
        let g = TransformMap::conformal(c64(1.0, 2.0), c64(0.5, 0.0), c64(-1.0, 1.0), c64(3.0, 0.0)).unwrap();
        assert!(compose(&TransformMap::identity(), &g).approx_eq(&g, 1e-12));
        assert!(compose(&g, &g.inverse()).is_identity(1e-12));
        let h = TransformMap::anticonformal(c64(0.0, 1.0), c64(2.0, 0.0), c64(1.0, 0.0), c64(1.0, 1.0)).unwrap();
        assert!(compose(&h, &h.inverse()).is_identity(1e-12));
        assert!(compose(&h.inverse(), &h).is_identity(1e-12));
    }

    #[test]
    fn compose_is_pointwise() {
        let f = TransformMap::anticonformal(c64(1.0, 1.0), c64(2.0, 0.0), c64(0.3, 0.0), c64(1.0, -1.0)).unwrap();
        let g = TransformMap::anticonformal(c64(0.2, 1.0), c64(0.0, 1.0), c64(1.0, 0.0), c64(2.0, 0.0)).unwrap();
        let p = z(0.3, -0.7);
        let lhs = compose(&f, &g).apply(p);
        let rhs = f.apply(g.apply(p));
        assert!(lhs.approx_eq(rhs, 1e-12));
    }

    #[test]
    fn rotation_of_order_five() {
        let f = TransformMap::scaling(Complex64::from_polar(1.0, 2.0 * PI / 5.0));
        assert_eq!(classify(&f).unwrap(), MapClass::Elliptic { order: Some(5) });
    }

    #[test]
    fn pseudo_elliptic_order_six() {
        let d = 3.0;
        let b = TransformMap::anticonformal(c64(0.0, 0.0), Complex64::from_polar(1.0, PI / d), c64(1.0, 0.0), c64(0.0, 0.0))
            .unwrap();
        assert_eq!(classify(&b).unwrap(), MapClass::PseudoElliptic { order: Some(6) });
        assert!(b.pow(6).is_identity(1e-9));
        assert!(!b.pow(3).is_identity(1e-6));
        let sq = b.compose(&b);
        assert!(sq.approx_eq(&TransformMap::scaling(Complex64::from_polar(1.0, 2.0 * PI / 3.0)), 1e-12));
    }

    #[test]
    fn involutions() {
        let antipodal = TransformMap::anticonformal(c64(0.0, 0.0), c64(-1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)).unwrap();
        assert_eq!(classify(&antipodal).unwrap(), MapClass::ImaginaryReflection);
        assert_eq!(fixed_points(&antipodal).unwrap(), FixedSet::Points(vec![]));
        let unit = TransformMap::reflection(&GeneralizedCircle::from_center_radius(c64(0.0, 0.0), 1.0));
        assert_eq!(classify(&unit).unwrap(), MapClass::Reflection);
        match fixed_points(&unit).unwrap() {
            FixedSet::Circle(c) => {
                assert!(c.approx_eq_set(&GeneralizedCircle::from_center_radius(c64(0.0, 0.0), 1.0), 1e-12))
            }
            other => panic!("expected circle, got {other:?}"),
        }
        assert_eq!(classify(&TransformMap::conjugation()).unwrap(), MapClass::Reflection);
        assert_eq!(classify(&TransformMap::glide_scaling(c64(2.0, 0.0))).unwrap(), MapClass::GlideReflection);
    }

    #[test]
    fn parabolic_and_ambiguous() {
        let t = TransformMap::translation(c64(1.0, 0.0));
        assert_eq!(classify(&t).unwrap(), MapClass::Parabolic);
        assert_eq!(fixed_points(&t).unwrap(), FixedSet::Points(vec![ComplexPoint::Infinity]));
        // trace^2 = 4 - 4e-10: inside the band
        let eps = 1e-10;
        let theta = (1.0 - eps / 2.0 - 1.0f64).acos();
        let _ = theta;
        let half = ((4.0 - 4.0 * eps) as f64).sqrt() / 2.0;
        let s = (1.0 - half * half).sqrt();
        let near = TransformMap::conformal(c64(half, s), c64(0.0, 0.0), c64(0.0, 0.0), c64(half, -s)).unwrap();
        assert!(matches!(classify(&near), Err(MoebiusError::NumericallyAmbiguous(_))));
        let glide_par = TransformMap::anticonformal(c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)).unwrap();
        assert_eq!(classify(&glide_par).unwrap(), MapClass::PseudoParabolic);
    }

    #[test]
    fn fixed_point_examples() {
        let lox = TransformMap::scaling(c64(3.0, 0.0));
        let pts = fixed_points(&lox).unwrap();
        assert_eq!(pts.points().len(), 2);
        assert!(pts.points().iter().any(|p| p.approx_eq(z(0.0, 0.0), 1e-12)));
        assert!(pts.points().contains(&ComplexPoint::Infinity));
        let inv = TransformMap::conformal(c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)).unwrap();
        let pts = fixed_points(&inv).unwrap();
        assert!(pts.points().iter().any(|p| p.approx_eq(z(1.0, 0.0), 1e-12)));
        assert!(pts.points().iter().any(|p| p.approx_eq(z(-1.0, 0.0), 1e-12)));
        assert!(matches!(fixed_points(&TransformMap::identity()), Err(MoebiusError::IdentityInput)));
        let glide = TransformMap::glide_scaling(c64(5.0, 0.0));
        let pts = fixed_points(&glide).unwrap();
        assert_eq!(pts.points().len(), 2);
    }

    #[test]
    fn elliptic_factory() {
        let e = make_elliptic(z(0.0, 0.0), ComplexPoint::Infinity, 4).unwrap();
        assert!(e.approx_eq(&TransformMap::scaling(c64(0.0, 1.0)), 1e-12));
        let half_turn = make_elliptic(z(1.0, 0.0), z(-1.0, 0.0), 2).unwrap();
        let inv = TransformMap::conformal(c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)).unwrap();
        assert!(half_turn.approx_eq(&inv, 1e-12));
        assert!(half_turn.compose(&half_turn).is_identity(1e-12));
        let e7 = make_elliptic(z(0.3, 0.1), z(-2.0, 1.0), 7).unwrap();
        assert_eq!(classify(&e7).unwrap(), MapClass::Elliptic { order: Some(7) });
        assert!(e7.pow(7).is_identity(1e-9));
        assert!(e7.apply(z(0.3, 0.1)).approx_eq(z(0.3, 0.1), 1e-12));
        assert!(matches!(make_elliptic(z(1.0, 0.0), z(1.0, 0.0), 3), Err(MoebiusError::CoincidentFixedPoints)));
    }

    #[test]
    fn pairing_factory() {
        let lambda = 9.0;
        let d1 = Disc::from_center_radius(c64(0.0, 0.0), 1.0);
        let d2 = Disc::from_center_radius(c64(0.0, 0.0), lambda).complement();
        let a = make_loxodromic_pairing(&d1, &d2).unwrap();
        assert!(is_valid_pairing(&a, &d1, &d2, 64));
        assert!(a.approx_eq(&TransformMap::scaling(c64(lambda, 0.0)), 1e-12));
        assert!(is_valid_pairing(&TransformMap::scaling(c64(lambda, 0.0)), &d1, &d2, 64));

        let e1 = Disc::from_center_radius(c64(-2.0, 0.0), 0.5);
        let e2 = Disc::from_center_radius(c64(3.0, 1.0), 0.7);
        let b = make_loxodromic_pairing(&e1, &e2).unwrap();
        assert!(is_valid_pairing(&b, &e1, &e2, 128));

        let known = TransformMap::conformal(c64(2.0, 1.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0)).unwrap();
        let src = Disc::from_center_radius(c64(10.0, 0.0), 0.25);
        let dst = src.complement().transform(&known);
        assert!(is_valid_pairing(&known, &src, &dst.complement().complement(), 64) || is_valid_pairing(&known, &src, &dst, 64));

        let t1 = Disc::from_center_radius(c64(0.0, 0.0), 1.0);
        let t2 = Disc::from_center_radius(c64(2.0, 0.0), 1.0);
        assert!(matches!(make_loxodromic_pairing(&t1, &t2), Err(MoebiusError::OverlappingDiscs)));
    }

    #[test]
    fn image_circle_examples() {
        let unit = GeneralizedCircle::from_center_radius(c64(0.0, 0.0), 1.0);
        let doubled = image_circle(&TransformMap::scaling(c64(2.0, 0.0)), &unit);
        assert!(doubled.approx_eq_set(&GeneralizedCircle::from_center_radius(c64(0.0, 0.0), 2.0), 1e-12));
        let inv = TransformMap::conformal(c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)).unwrap();
        assert!(image_circle(&inv, &unit).approx_eq_set(&unit, 1e-12));

        // Oracle: transport three points and fit the circle through them.
        let rot = TransformMap::scaling(Complex64::from_polar(1.0, 2.0 * PI / 3.0));
        let c = GeneralizedCircle::from_center_radius(c64(3.0, 0.0), 1.0);
        let pts: Vec<Complex64> = [c64(4.0, 0.0), c64(3.0, 1.0), c64(2.0, 0.0)]
            .iter()
            .map(|p| rot.apply_finite(*p).unwrap())
            .collect();
        let oracle = GeneralizedCircle::through_points(pts[0], pts[1], pts[2]).unwrap();
        let expected = GeneralizedCircle::from_center_radius(Complex64::from_polar(3.0, 2.0 * PI / 3.0), 1.0);
        assert!(oracle.approx_eq_set(&expected, 1e-9));
        assert!(image_circle(&rot, &c).approx_eq_set(&expected, 1e-9));
    }
}
