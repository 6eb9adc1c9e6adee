use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ComplexPoint, MoebiusError, TransformMap};

/// A circle or line `A|z|^2 + conj(B) z + B conj(z) + C = 0`.
///
/// The coefficients are only ever rescaled by positive factors, so the sign
/// of the quadratic form `q(z)` is meaningful: `q < 0` is one side of the
/// circle and `q > 0` the other.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneralizedCircle {
    a: f64,
    b: Complex64,
    c: f64,
}

impl GeneralizedCircle {
    pub fn new(a: f64, b: Complex64, c: f64) -> Result<Self, MoebiusError> {
        let scale = a.abs().max(b.norm()).max(c.abs());
        if !scale.is_finite() || scale == 0.0 {
            return Err(MoebiusError::DegenerateCircle);
        }
        let (a, b, c) = (a / scale, b / scale, c / scale);
        if b.norm_sqr() - a * c <= 1e-14 {
            return Err(MoebiusError::DegenerateCircle);
        }
        Ok(GeneralizedCircle { a, b, c })
    }

    /// Circle `|z - center| = radius`, with `q < 0` inside.
    pub fn from_center_radius(center: Complex64, radius: f64) -> Self {
        Self::new(1.0, -center, center.norm_sqr() - radius * radius).expect("positive radius")
    }

    /// Line through `p` with `q < 0` on the side the unit-free `normal` points to.
    pub fn line(p: Complex64, normal: Complex64) -> Self {
        let b = -normal;
        let c = 2.0 * (normal.conj() * p).re;
        Self::new(0.0, b, c).expect("nonzero normal")
    }

    /// The circle through three distinct finite points.
    pub fn through_points(p: Complex64, q: Complex64, r: Complex64) -> Result<Self, MoebiusError> {
        // Solve A|z|^2 + 2 Re(conj(B) z) + C = 0 for the three points.
        let rows = [p, q, r].map(|z| [z.norm_sqr(), 2.0 * z.re, 2.0 * z.im, 1.0]);
        // Null vector of a 3x4 system via cofactors.
        let minor = |skip: usize| {
            let cols: Vec<usize> = (0..4).filter(|&j| j != skip).collect();
            let m = |i: usize, j: usize| rows[i][cols[j]];
            m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        };
        let v: Vec<f64> = (0..4).map(|j| if j % 2 == 0 { minor(j) } else { -minor(j) }).collect();
        Self::new(v[0], Complex64::new(v[1], v[2]), v[3])
    }

    pub fn coefficients(&self) -> (f64, Complex64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn is_line(&self) -> bool {
        self.a.abs() <= 1e-14
    }

    /// `|B|^2 - AC`, positive for a nondegenerate circle.
    pub fn discriminant(&self) -> f64 {
        self.b.norm_sqr() - self.a * self.c
    }

    pub fn center(&self) -> Option<Complex64> {
        (!self.is_line()).then(|| -self.b / self.a)
    }

    pub fn radius(&self) -> Option<f64> {
        (!self.is_line()).then(|| self.discriminant().sqrt() / self.a.abs())
    }

    pub fn eval(&self, z: Complex64) -> f64 {
        self.a * z.norm_sqr() + 2.0 * (self.b.conj() * z).re + self.c
    }

    /// Signed Euclidean distance to the circle, positive where `q < 0`.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        if self.is_line() {
            return -self.eval(z) / (2.0 * self.b.norm());
        }
        let center = -self.b / self.a;
        let r = self.discriminant().sqrt() / self.a.abs();
        let d = (z - center).norm();
        if self.a > 0.0 {
            r - d
        } else {
            d - r
        }
    }

    /// Whether `∞` lies on the `q < 0` side (a line counts as passing through it).
    pub fn infinity_side(&self) -> f64 {
        -self.a
    }

    pub fn negated(&self) -> Self {
        GeneralizedCircle { a: -self.a, b: -self.b, c: -self.c }
    }

    /// Image under `f`, keeping the side: the `q < 0` side maps to the `q < 0` side.
    pub fn transform(&self, f: &TransformMap) -> Self {
        let (a, b, c) = if f.is_reversing() { (self.a, self.b.conj(), self.c) } else { (self.a, self.b, self.c) };
        // H' = N^H H N with N the inverse matrix [[d, -b], [-c, a]].
        let [ma, mb, mc, md] = f.entries();
        let (na, nb, nc, nd) = (md, -mb, -mc, ma);
        let h = [[Complex64::new(a, 0.0), b], [b.conj(), Complex64::new(c, 0.0)]];
        let n = [[na, nb], [nc, nd]];
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    for l in 0..2 {
                        s += n[k][i].conj() * h[k][l] * n[l][j];
                    }
                }
                *cell = s;
            }
        }
        Self::new(out[0][0].re, out[0][1], out[1][1].re).expect("image of a nondegenerate circle")
    }

    /// Equality of the point sets, ignoring the side.
    pub fn approx_eq_set(&self, other: &GeneralizedCircle, tol: f64) -> bool {
        self.coefficient_distance(other) < tol || self.coefficient_distance(&other.negated()) < tol
    }

    /// Max-norm distance of the normalized coefficient vectors.
    pub fn coefficient_distance(&self, other: &GeneralizedCircle) -> f64 {
        (self.a - other.a).abs().max((self.b - other.b).norm()).max((self.c - other.c).abs())
    }

    /// Signed inversive distance; two discs `q <= 0` are disjoint iff it exceeds 1.
    pub fn inversive_distance(&self, other: &GeneralizedCircle) -> f64 {
        let num = self.a * other.c + other.a * self.c - 2.0 * (self.b * other.b.conj()).re;
        num / (2.0 * (self.discriminant() * other.discriminant()).sqrt())
    }

    /// Evenly spaced points. Lines are sampled through the stereographic
    /// parametrization, so the samples accumulate towards `∞`.
    pub fn sample(&self, count: usize) -> Vec<Complex64> {
        let count = count.max(1);
        if self.is_line() {
            let normal = -self.b / self.b.norm();
            let foot = normal * (self.c / (2.0 * self.b.norm()));
            let dir = normal * Complex64::new(0.0, 1.0);
            return (0..count)
                .map(|i| {
                    let t = std::f64::consts::PI * ((i as f64 + 0.5) / count as f64 - 0.5);
                    foot + dir * t.tan()
                })
                .collect();
        }
        let center = -self.b / self.a;
        let r = self.discriminant().sqrt() / self.a.abs();
        (0..count)
            .map(|i| center + Complex64::from_polar(r, std::f64::consts::TAU * i as f64 / count as f64))
            .collect()
    }
}

/// A closed generalized disc `{q <= 0}` with a stored interior witness.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disc {
    boundary: GeneralizedCircle,
    witness: ComplexPoint,
}

impl Disc {
    pub fn new(boundary: GeneralizedCircle) -> Self {
        let witness = interior_point(&boundary);
        Disc { boundary, witness }
    }

    pub fn from_center_radius(center: Complex64, radius: f64) -> Self {
        Self::new(GeneralizedCircle::from_center_radius(center, radius))
    }

    /// Exterior `{|z - center| >= radius}` including `∞`.
    pub fn exterior(center: Complex64, radius: f64) -> Self {
        Self::from_center_radius(center, radius).complement()
    }

    /// Closed half-plane through `p` whose inward normal is `normal`.
    pub fn half_plane(p: Complex64, normal: Complex64) -> Self {
        Self::new(GeneralizedCircle::line(p, normal))
    }

    pub fn boundary(&self) -> &GeneralizedCircle {
        &self.boundary
    }

    pub fn witness(&self) -> ComplexPoint {
        self.witness
    }

    /// The closure of the complement.
    pub fn complement(&self) -> Self {
        Self::new(self.boundary.negated())
    }

    pub fn transform(&self, f: &TransformMap) -> Self {
        Disc { boundary: self.boundary.transform(f), witness: f.apply(self.witness) }
    }

    pub fn is_bounded(&self) -> bool {
        self.boundary.a > 1e-14
    }

    /// Positive inside, negative outside, in Euclidean distance to the boundary.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        self.boundary.signed_distance(z)
    }

    pub fn contains(&self, z: ComplexPoint, slack: f64) -> bool {
        match z {
            ComplexPoint::Finite(z) => self.signed_distance(z) >= -slack,
            ComplexPoint::Infinity => self.boundary.infinity_side() >= 0.0,
        }
    }

    pub fn strictly_contains(&self, z: ComplexPoint, margin: f64) -> bool {
        match z {
            ComplexPoint::Finite(z) => self.signed_distance(z) > margin,
            ComplexPoint::Infinity => self.boundary.infinity_side() > 0.0,
        }
    }

    /// Closed discs are disjoint iff the signed inversive distance exceeds 1.
    pub fn is_disjoint_from(&self, other: &Disc) -> bool {
        self.boundary.inversive_distance(&other.boundary) > 1.0 + 1e-12
    }
}

fn interior_point(circle: &GeneralizedCircle) -> ComplexPoint {
    let (a, b, _) = circle.coefficients();
    if circle.is_line() {
        // foot of the perpendicular from the origin, pushed inward by one unit
        let normal = -b / b.norm();
        let foot = normal * (circle.c / (2.0 * b.norm()));
        return ComplexPoint::Finite(foot + normal);
    }
    let center = -b / a;
    if a > 0.0 {
        ComplexPoint::Finite(center)
    } else {
        ComplexPoint::Infinity
    }
}
