use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ComplexPoint, Disc, TransformMap};

/// A closed region of the sphere: a generalized disc, or a fat lens given as
/// the union of the (one or two) discs bounded by its arcs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Region {
    Disc(Disc),
    Lens { parts: Vec<Disc>, witness: ComplexPoint },
}

impl Region {
    /// The sector `|arg(w) - direction| <= half_width` between 0 and `∞`,
    /// for `half_width` in `[π/2, π)`.
    pub fn sector(direction: f64, half_width: f64) -> Region {
        use std::f64::consts::FRAC_PI_2;
        assert!((FRAC_PI_2 - 1e-12..std::f64::consts::PI).contains(&half_width));
        let origin = Complex64::new(0.0, 0.0);
        let n1 = Complex64::from_polar(1.0, direction - half_width + FRAC_PI_2);
        let n2 = Complex64::from_polar(1.0, direction + half_width - FRAC_PI_2);
        let mut parts = vec![Disc::half_plane(origin, n1)];
        if (n1 - n2).norm() > 1e-12 {
            parts.push(Disc::half_plane(origin, n2));
        }
        let witness = ComplexPoint::Finite(Complex64::from_polar(1.0, direction));
        Region::Lens { parts, witness }
    }

    pub fn lens(parts: Vec<Disc>, witness: ComplexPoint) -> Region {
        Region::Lens { parts, witness }
    }

    pub fn parts(&self) -> Vec<Disc> {
        match self {
            Region::Disc(d) => vec![*d],
            Region::Lens { parts, .. } => parts.clone(),
        }
    }

    pub fn witness(&self) -> ComplexPoint {
        match self {
            Region::Disc(d) => d.witness(),
            Region::Lens { witness, .. } => *witness,
        }
    }

    pub fn transform(&self, f: &TransformMap) -> Region {
        match self {
            Region::Disc(d) => Region::Disc(d.transform(f)),
            Region::Lens { parts, witness } => Region::Lens {
                parts: parts.iter().map(|d| d.transform(f)).collect(),
                witness: f.apply(*witness),
            },
        }
    }

    /// Positive inside; the maximum over the parts.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        match self {
            Region::Disc(d) => d.signed_distance(z),
            Region::Lens { parts, .. } => parts.iter().map(|d| d.signed_distance(z)).fold(f64::NEG_INFINITY, f64::max),
        }
    }

    pub fn contains(&self, z: ComplexPoint, slack: f64) -> bool {
        self.parts().iter().any(|d| d.contains(z, slack))
    }

    pub fn strictly_contains(&self, z: ComplexPoint, margin: f64) -> bool {
        self.parts().iter().any(|d| d.strictly_contains(z, margin))
    }

    pub fn is_bounded(&self) -> bool {
        self.parts().iter().all(Disc::is_bounded)
    }

    /// Points on the boundary of the region: samples of each bounding circle
    /// that are not interior to another part.
    pub fn boundary_samples(&self, per_arc: usize) -> Vec<Complex64> {
        let parts = self.parts();
        let mut out = Vec::new();
        for (i, d) in parts.iter().enumerate() {
            for z in d.boundary().sample(per_arc) {
                let buried = parts.iter().enumerate().any(|(j, e)| j != i && e.signed_distance(z) > 1e-12);
                if !buried {
                    out.push(z);
                }
            }
        }
        out
    }

    /// Center and radius of a round disc containing the region, when bounded.
    pub fn bounding_circle(&self) -> Option<(Complex64, f64)> {
        let discs: Vec<(Complex64, f64)> = self
            .parts()
            .iter()
            .map(|d| Some((d.boundary().center()?, d.boundary().radius()?)))
            .collect::<Option<_>>()?;
        if !self.is_bounded() {
            return None;
        }
        Some(enclosing(&discs))
    }
}

/// A (not necessarily minimal) disc containing all the given discs.
pub(crate) fn enclosing(discs: &[(Complex64, f64)]) -> (Complex64, f64) {
    let (mut lo_re, mut hi_re, mut lo_im, mut hi_im) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for (c, r) in discs {
        lo_re = lo_re.min(c.re - r);
        hi_re = hi_re.max(c.re + r);
        lo_im = lo_im.min(c.im - r);
        hi_im = hi_im.max(c.im + r);
    }
    let center = Complex64::new((lo_re + hi_re) / 2.0, (lo_im + hi_im) / 2.0);
    let radius = discs.iter().map(|(c, r)| (c - center).norm() + r).fold(0.0, f64::max);
    (center, radius)
}
