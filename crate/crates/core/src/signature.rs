//! Conformal and extended signatures, their text grammar, and the abstract
//! free-product presentations they name.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("malformed signature: {0}")]
    Parse(String),
    #[error("order {order} is not a divisor of {n} that is at least 2")]
    OrderNotDividing { order: u64, n: u64 },
    #[error("pseudo-elliptic order {0} must be 2d with d | n and 2d not dividing n")]
    PseudoOrder(u64),
    #[error("{0}")]
    Parity(String),
    #[error("inadmissible signature: {0}")]
    Inadmissible(String),
}

/// The data `(m, a, b, n_1..n_b, l_1..l_m)` of a Z_n-Schottky group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConformalSignature {
    pub n: u64,
    pub m: usize,
    pub a: usize,
    pub b: usize,
    pub elliptic_orders: Vec<u64>,
    pub abelian_orders: Vec<u64>,
}

impl ConformalSignature {
    /// Builds a signature, sorting the order lists.
    pub fn new(n: u64, a: usize, mut elliptic_orders: Vec<u64>, mut abelian_orders: Vec<u64>) -> Result<Self, SignatureError> {
        elliptic_orders.sort_unstable();
        abelian_orders.sort_unstable();
        let sig = ConformalSignature {
            n,
            m: abelian_orders.len(),
            a,
            b: elliptic_orders.len(),
            elliptic_orders,
            abelian_orders,
        };
        sig.validate()?;
        Ok(sig)
    }

    /// Sortedness, counts and divisibility; says nothing about admissibility.
    pub fn validate(&self) -> Result<(), SignatureError> {
        if self.n < 2 {
            return Err(SignatureError::Parse(format!("n = {} must be at least 2", self.n)));
        }
        if self.b != self.elliptic_orders.len() || self.m != self.abelian_orders.len() {
            return Err(SignatureError::Parse("counts disagree with order lists".into()));
        }
        for list in [&self.elliptic_orders, &self.abelian_orders] {
            if list.windows(2).any(|w| w[0] > w[1]) {
                return Err(SignatureError::Parse("orders must be ascending".into()));
            }
            for &k in list.iter() {
                check_divisor(k, self.n)?;
            }
        }
        Ok(())
    }

    pub fn gamma(&self) -> usize {
        self.a + self.m
    }

    /// Admissibility: `m + a > 0`, or `gcd(n/n_j) = 1`.
    pub fn is_admissible(&self) -> bool {
        self.validate().is_ok() && (self.m + self.a > 0 || self.elliptic_gcd() == 1)
    }

    /// `gcd(n/n_1, ..., n/n_b)`, zero for `b = 0`.
    pub fn elliptic_gcd(&self) -> u64 {
        self.elliptic_orders.iter().fold(0, |g, &k| g.gcd(&(self.n / k)))
    }

    pub fn check_admissible(&self) -> Result<(), SignatureError> {
        self.validate()?;
        if self.m + self.a == 0 {
            if self.b == 0 {
                return Err(SignatureError::Inadmissible("empty signature".into()));
            }
            let g = self.elliptic_gcd();
            if g != 1 {
                return Err(SignatureError::Inadmissible(format!("m = a = 0 and gcd(n/n_j) = {g}")));
            }
        }
        Ok(())
    }

    /// `n(m + a - 1) + 1 + Σ (n/n_j)(n_j - 1)`, as a signed integer.
    pub fn rank(&self) -> i64 {
        let n = self.n as i64;
        let base = n * (self.m as i64 + self.a as i64 - 1) + 1;
        base + self.elliptic_orders.iter().map(|&k| (n / k as i64) * (k as i64 - 1)).sum::<i64>()
    }

    /// Parses `m=<int>,a=<int>,b=<k1;k2;...>,l=<k1;...>`.
    pub fn parse(n: u64, text: &str) -> Result<Self, SignatureError> {
        let mut m = None;
        let mut a = None;
        let mut b = None;
        let mut l = None;
        for (key, value) in key_values(text)? {
            let slot = match key.as_str() {
                "m" => &mut m,
                "a" => &mut a,
                "b" => &mut b,
                "l" => &mut l,
                other => return Err(SignatureError::Parse(format!("unknown key {other:?}"))),
            };
            if slot.replace(value).is_some() {
                return Err(SignatureError::Parse(format!("repeated key {key:?}")));
            }
        }
        let m: usize = parse_count(m.as_deref().unwrap_or("0"))?;
        let a: usize = parse_count(a.as_deref().unwrap_or("0"))?;
        let elliptic = parse_orders(b.as_deref().unwrap_or(""))?;
        let abelian = parse_orders(l.as_deref().unwrap_or(""))?;
        if abelian.len() != m {
            return Err(SignatureError::Parse(format!("m = {m} but {} abelian orders given", abelian.len())));
        }
        if elliptic.windows(2).any(|w| w[0] > w[1]) || abelian.windows(2).any(|w| w[0] > w[1]) {
            return Err(SignatureError::Parse("orders must be ascending".into()));
        }
        Self::new(n, a, elliptic, abelian)
    }

    /// Canonical factor list: `m` abelian, then `a` loxodromic, then `b` elliptic.
    pub fn factor_kinds(&self) -> Vec<FactorKind> {
        let mut out = Vec::new();
        out.extend(self.abelian_orders.iter().map(|&k| FactorKind::LoxEllAbelian { k }));
        out.extend((0..self.a).map(|_| FactorKind::LoxodromicCyclic));
        out.extend(self.elliptic_orders.iter().map(|&k| FactorKind::EllipticCyclic { k }));
        out
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::conformal(&self.factor_kinds())
    }
}

impl fmt::Display for ConformalSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={},a={},b={},l={}", self.m, self.a, join(&self.elliptic_orders), join(&self.abelian_orders))
    }
}

/// One restricted (T8) factor: reflection plus a real Schottky-type group of
/// free rank `gamma` with elliptic cone orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RealFactor {
    pub gamma: u64,
    pub orders: Vec<u64>,
}

/// Multiset of extended elementary factors for an extended Z_n-Schottky group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtendedSignature {
    pub n: u64,
    /// T1 factors generated by a glide-reflection.
    pub glides: usize,
    /// T1 factors generated by a loxodromic transformation.
    pub loxodromics: usize,
    pub t2: Vec<u64>,
    /// Orders `2d` of the T3 pseudo-elliptic generators.
    pub t3: Vec<u64>,
    pub t4: Vec<u64>,
    /// Orders `2d` of the T5 pseudo-elliptic generators.
    pub t5: Vec<u64>,
    pub t6: usize,
    pub t7: usize,
    pub t8: Vec<RealFactor>,
}

impl ExtendedSignature {
    pub fn canonicalize(&mut self) {
        self.t2.sort_unstable();
        self.t3.sort_unstable();
        self.t4.sort_unstable();
        self.t5.sort_unstable();
        for r in &mut self.t8 {
            r.orders.sort_unstable();
        }
        self.t8.sort();
    }

    /// Arithmetic side conditions on every factor.
    pub fn validate(&self) -> Result<(), SignatureError> {
        let n = self.n;
        if n < 1 {
            return Err(SignatureError::Parse("n must be positive".into()));
        }
        for &k in self.t2.iter().chain(&self.t4) {
            check_divisor(k, n)?;
        }
        for &o in self.t3.iter().chain(&self.t5) {
            check_pseudo_order(o, n)?;
        }
        if self.t6 > 0 && n % 2 == 1 {
            return Err(SignatureError::Parity("T6 factors need n even".into()));
        }
        if (self.t7 > 0 || !self.t8.is_empty()) && n % 2 == 0 {
            return Err(SignatureError::Parity("T7 and T8 factors need n odd".into()));
        }
        for r in &self.t8 {
            if r.gamma == 0 && r.orders.is_empty() {
                return Err(SignatureError::Parse("a T8 factor needs gamma > 0 or a cone order".into()));
            }
            for &k in &r.orders {
                check_divisor(k, n)?;
            }
        }
        Ok(())
    }

    /// Condition (1): some orientation-reversing factor is present.
    pub fn condition_one(&self) -> bool {
        self.glides + self.t3.len() + self.t5.len() + self.t6 + self.t7 + self.t8.len() > 0
    }

    /// True when surjectivity is automatic: glide or loxodromic T1, T4 (its
    /// loxodromic may carry any even value), T6, or a T8 factor containing
    /// glide-reflections.
    pub fn has_free_generator(&self) -> bool {
        self.glides + self.loxodromics + self.t4.len() + self.t6 > 0 || self.t8.iter().any(|r| r.gamma > 0)
    }

    /// gcd of `2n/r` over all elliptic and pseudo-elliptic orders `r`.
    pub fn torsion_gcd(&self) -> u64 {
        let two_n = 2 * self.n;
        let mut orders: Vec<u64> = Vec::new();
        orders.extend(&self.t2);
        orders.extend(&self.t3);
        orders.extend(&self.t4);
        orders.extend(&self.t5);
        orders.extend(std::iter::repeat(2).take(self.t7));
        for r in &self.t8 {
            orders.push(2);
            orders.extend(&r.orders);
        }
        orders.iter().fold(0, |g, &r| g.gcd(&(two_n / r)))
    }

    /// Condition (2): a free generator is present, or the torsion gcd is 1.
    pub fn condition_two(&self) -> bool {
        self.has_free_generator() || self.torsion_gcd() == 1
    }

    pub fn check_admissible(&self) -> Result<(), SignatureError> {
        self.validate()?;
        if !self.condition_one() {
            return Err(SignatureError::Inadmissible("no orientation-reversing factor (condition 1)".into()));
        }
        if !self.condition_two() {
            return Err(SignatureError::Inadmissible(format!(
                "gcd of 2n/r is {} (condition 2)",
                self.torsion_gcd()
            )));
        }
        Ok(())
    }

    pub fn is_admissible(&self) -> bool {
        self.check_admissible().is_ok()
    }

    /// Canonical factor list: glides, loxodromics, T2, T3, T4, T5, T6, T7, T8.
    pub fn factor_kinds(&self) -> Vec<FactorKind> {
        let mut out = Vec::new();
        out.extend((0..self.glides).map(|_| FactorKind::GlideCyclic));
        out.extend((0..self.loxodromics).map(|_| FactorKind::LoxodromicCyclic));
        out.extend(self.t2.iter().map(|&k| FactorKind::EllipticCyclic { k }));
        out.extend(self.t3.iter().map(|&order| FactorKind::PseudoEllipticCyclic { order }));
        out.extend(self.t4.iter().map(|&k| FactorKind::LoxEllAbelian { k }));
        out.extend(self.t5.iter().map(|&order| FactorKind::LoxPseudoSwap { order }));
        out.extend((0..self.t6).map(|_| FactorKind::GlideHalfTurn));
        out.extend((0..self.t7).map(|_| FactorKind::ReflectionCyclic));
        out.extend(
            self.t8
                .iter()
                .map(|r| FactorKind::RealSchottkyReflection { gamma: r.gamma, orders: r.orders.clone() }),
        );
        out
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::extended(&self.factor_kinds())
    }

    /// The extended Z_2 signature `(a_1, ..., a_6)` as a factor multiset.
    pub fn from_z2_tuple(t: [usize; 6]) -> Self {
        ExtendedSignature {
            n: 2,
            glides: t[0],
            t2: vec![2; t[1]],
            t3: vec![4; t[2]],
            t4: vec![2; t[3]],
            t5: vec![4; t[4]],
            t6: t[5],
            ..Default::default()
        }
    }

    /// Parses `ext:n=<int>,T1=<c>,T2=<k;...>,...,T8=<γ:orders|...>`; the
    /// optional key `T1L=<c>` counts loxodromic T1 factors.
    pub fn parse(text: &str) -> Result<Self, SignatureError> {
        let body = text
            .strip_prefix("ext:")
            .ok_or_else(|| SignatureError::Parse("extended signatures start with \"ext:\"".into()))?;
        let mut sig = ExtendedSignature::default();
        let mut seen = Vec::new();
        for (key, value) in key_values(body)? {
            if seen.contains(&key) {
                return Err(SignatureError::Parse(format!("repeated key {key:?}")));
            }
            match key.as_str() {
                "n" => sig.n = parse_count(&value)? as u64,
                "T1" => sig.glides = parse_count(&value)?,
                "T1L" => sig.loxodromics = parse_count(&value)?,
                "T2" => sig.t2 = parse_orders(&value)?,
                "T3" => sig.t3 = parse_orders(&value)?,
                "T4" => sig.t4 = parse_orders(&value)?,
                "T5" => sig.t5 = parse_orders(&value)?,
                "T6" => sig.t6 = parse_count(&value)?,
                "T7" => sig.t7 = parse_count(&value)?,
                "T8" => sig.t8 = parse_real_factors(&value)?,
                other => return Err(SignatureError::Parse(format!("unknown key {other:?}"))),
            }
            seen.push(key);
        }
        if !seen.iter().any(|k| k == "n") {
            return Err(SignatureError::Parse("missing n".into()));
        }
        sig.canonicalize();
        sig.validate()?;
        Ok(sig)
    }
}

impl fmt::Display for ExtendedSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ext:n={},T1={},T2={},T3={},T4={},T5={},T6={},T7={},T8={}",
            self.n,
            self.glides,
            join(&self.t2),
            join(&self.t3),
            join(&self.t4),
            join(&self.t5),
            self.t6,
            self.t7,
            self.t8.iter().map(|r| format!("{}:{}", r.gamma, join(&r.orders))).collect::<Vec<_>>().join("|")
        )?;
        if self.loxodromics > 0 {
            write!(f, ",T1L={}", self.loxodromics)?;
        }
        Ok(())
    }
}

/// Either kind of signature, as accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnySignature {
    Conformal(ConformalSignature),
    Extended(ExtendedSignature),
}

impl AnySignature {
    pub fn parse(n: u64, text: &str) -> Result<Self, SignatureError> {
        if text.starts_with("ext:") {
            let sig = ExtendedSignature::parse(text)?;
            if sig.n != n {
                return Err(SignatureError::Parse(format!("--n {n} disagrees with n={} in the signature", sig.n)));
            }
            Ok(AnySignature::Extended(sig))
        } else {
            Ok(AnySignature::Conformal(ConformalSignature::parse(n, text)?))
        }
    }

    pub fn factor_kinds(&self) -> Vec<FactorKind> {
        match self {
            AnySignature::Conformal(s) => s.factor_kinds(),
            AnySignature::Extended(s) => s.factor_kinds(),
        }
    }

    pub fn presentation(&self) -> Presentation {
        match self {
            AnySignature::Conformal(s) => s.presentation(),
            AnySignature::Extended(s) => s.presentation(),
        }
    }

    pub fn check_admissible(&self) -> Result<(), SignatureError> {
        match self {
            AnySignature::Conformal(s) => s.check_admissible(),
            AnySignature::Extended(s) => s.check_admissible(),
        }
    }

    pub fn is_extended(&self) -> bool {
        matches!(self, AnySignature::Extended(_))
    }
}

fn check_divisor(k: u64, n: u64) -> Result<(), SignatureError> {
    if k < 2 || n % k != 0 {
        return Err(SignatureError::OrderNotDividing { order: k, n });
    }
    Ok(())
}

/// `order = 2d` with `d | n` and `2d ∤ n`, i.e. `n/d` odd.
pub fn check_pseudo_order(order: u64, n: u64) -> Result<(), SignatureError> {
    if order < 2 || order % 2 != 0 {
        return Err(SignatureError::PseudoOrder(order));
    }
    let d = order / 2;
    if n % d != 0 || n % order == 0 {
        return Err(SignatureError::PseudoOrder(order));
    }
    Ok(())
}

fn key_values(text: &str) -> Result<Vec<(String, String)>, SignatureError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| SignatureError::Parse(format!("expected key=value, got {item:?}")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn parse_count(s: &str) -> Result<usize, SignatureError> {
    s.parse().map_err(|_| SignatureError::Parse(format!("expected a nonnegative integer, got {s:?}")))
}

/// Semicolon-separated orders; an empty value or a lone `0` is the empty list.
fn parse_orders(s: &str) -> Result<Vec<u64>, SignatureError> {
    if s.is_empty() || s == "0" {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|t| t.trim().parse().map_err(|_| SignatureError::Parse(format!("bad order {t:?}"))))
        .collect()
}

fn parse_real_factors(s: &str) -> Result<Vec<RealFactor>, SignatureError> {
    if s.is_empty() || s == "0" {
        return Ok(Vec::new());
    }
    s.split('|')
        .map(|item| {
            let (g, orders) = item.split_once(':').unwrap_or((item, ""));
            Ok(RealFactor { gamma: parse_count(g)? as u64, orders: parse_orders(orders)? })
        })
        .collect()
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

/// The elementary factor types.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorKind {
    /// Conformal T1+ / extended T1 loxodromic.
    LoxodromicCyclic,
    /// T2, elliptic of order `k`.
    EllipticCyclic { k: u64 },
    /// T4, loxodromic commuting with an elliptic of order `k`.
    LoxEllAbelian { k: u64 },
    /// T1, glide-reflection.
    GlideCyclic,
    /// T3, pseudo-elliptic of order `order = 2d`.
    PseudoEllipticCyclic { order: u64 },
    /// T5, loxodromic inverted by a pseudo-elliptic of order `order = 2d`.
    LoxPseudoSwap { order: u64 },
    /// T6, glide-reflection commuting with a half-turn.
    GlideHalfTurn,
    /// T7, reflection.
    ReflectionCyclic,
    /// Restricted T8.
    RealSchottkyReflection { gamma: u64, orders: Vec<u64> },
}

impl FactorKind {
    /// Generator letters with their orientation (true = reversing).
    pub fn letters(&self) -> Vec<(&'static str, bool)> {
        match self {
            FactorKind::LoxodromicCyclic => vec![("A", false)],
            FactorKind::EllipticCyclic { .. } => vec![("E", false)],
            FactorKind::LoxEllAbelian { .. } => vec![("T", false), ("F", false)],
            FactorKind::GlideCyclic => vec![("G", true)],
            FactorKind::PseudoEllipticCyclic { .. } => vec![("P", true)],
            FactorKind::LoxPseudoSwap { .. } => vec![("L", false), ("Q", true)],
            FactorKind::GlideHalfTurn => vec![("H", true), ("K", false)],
            FactorKind::ReflectionCyclic => vec![("R", true)],
            FactorKind::RealSchottkyReflection { gamma, orders } => {
                let mut v = vec![("S", true)];
                v.extend((0..*gamma).map(|_| ("X", false)));
                v.extend(orders.iter().map(|_| ("Y", false)));
                v
            }
        }
    }

    pub fn generator_count(&self) -> usize {
        self.letters().len()
    }

    pub fn is_extended_only(&self) -> bool {
        self.letters().iter().any(|(_, rev)| *rev)
    }

    /// Power relators, then the remaining relators, in local generator
    /// indices (letter `±(i + 1)`).
    pub fn relators(&self) -> (Vec<Vec<i32>>, Vec<Vec<i32>>) {
        let power = |g: i32, k: u64| vec![g; k as usize];
        match self {
            FactorKind::LoxodromicCyclic | FactorKind::GlideCyclic => (vec![], vec![]),
            FactorKind::EllipticCyclic { k } => (vec![power(1, *k)], vec![]),
            FactorKind::PseudoEllipticCyclic { order } => (vec![power(1, *order)], vec![]),
            FactorKind::LoxEllAbelian { k } => (vec![power(2, *k)], vec![vec![1, 2, -1, -2]]),
            FactorKind::LoxPseudoSwap { order } => (vec![power(2, *order)], vec![vec![-2, 1, 2, 1]]),
            FactorKind::GlideHalfTurn => (vec![power(2, 2)], vec![vec![1, 2, -1, -2]]),
            FactorKind::ReflectionCyclic => (vec![power(1, 2)], vec![]),
            FactorKind::RealSchottkyReflection { gamma, orders } => {
                let mut powers = vec![power(1, 2)];
                let mut rest = Vec::new();
                let first_y = 2 + *gamma as i32;
                for (i, &k) in orders.iter().enumerate() {
                    powers.push(power(first_y + i as i32, k));
                }
                for g in 2..first_y + orders.len() as i32 {
                    rest.push(vec![1, g, -1, -g]);
                }
                (powers, rest)
            }
        }
    }

    /// Representatives of the conjugacy classes of maximal finite cyclic
    /// subgroups, with their orders, in local letters.
    pub fn torsion_classes(&self) -> Vec<(Vec<i32>, u64)> {
        match self {
            FactorKind::LoxodromicCyclic | FactorKind::GlideCyclic => vec![],
            FactorKind::EllipticCyclic { k } => vec![(vec![1], *k)],
            FactorKind::PseudoEllipticCyclic { order } => vec![(vec![1], *order)],
            FactorKind::LoxEllAbelian { k } => vec![(vec![2], *k)],
            FactorKind::LoxPseudoSwap { order } => vec![(vec![2], *order), (vec![1, 2], *order)],
            FactorKind::GlideHalfTurn => vec![(vec![2], 2)],
            FactorKind::ReflectionCyclic => vec![(vec![1], 2)],
            FactorKind::RealSchottkyReflection { gamma, orders } => {
                let mut v = vec![(vec![1], 2)];
                let first_y = 2 + *gamma as i32;
                for (i, &k) in orders.iter().enumerate() {
                    let y = first_y + i as i32;
                    v.push((vec![y], k));
                    v.push((vec![1, y], k.lcm(&2)));
                }
                v
            }
        }
    }

    /// Euler characteristic of the factor.
    pub fn euler_characteristic(&self) -> Ratio<i64> {
        let inv = |k: u64| Ratio::new(1, k as i64);
        match self {
            FactorKind::LoxodromicCyclic
            | FactorKind::GlideCyclic
            | FactorKind::LoxEllAbelian { .. }
            | FactorKind::LoxPseudoSwap { .. }
            | FactorKind::GlideHalfTurn => Ratio::from_integer(0),
            FactorKind::EllipticCyclic { k } => inv(*k),
            FactorKind::PseudoEllipticCyclic { order } => inv(*order),
            FactorKind::ReflectionCyclic => inv(2),
            FactorKind::RealSchottkyReflection { gamma, orders } => {
                let pieces = *gamma as i64 + orders.len() as i64;
                let chi_f = orders.iter().map(|&k| inv(k)).sum::<Ratio<i64>>() - Ratio::from_integer(pieces - 1);
                chi_f / 2
            }
        }
    }
}

/// A finitely presented group with generator orientations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub reversing: Vec<bool>,
    /// Factor index of each generator.
    pub factor_of: Vec<usize>,
    /// Letters `±(i + 1)`.
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    /// Conformal naming `T_k, F_k, A_j, E_j`, numbered per letter.
    pub fn conformal(kinds: &[FactorKind]) -> Self {
        Self::build(kinds)
    }

    /// Extended naming with the letters of [`FactorKind::letters`].
    pub fn extended(kinds: &[FactorKind]) -> Self {
        Self::build(kinds)
    }

    fn build(kinds: &[FactorKind]) -> Self {
        let mut generators = Vec::new();
        let mut reversing = Vec::new();
        let mut factor_of = Vec::new();
        let mut counters: std::collections::HashMap<&str, usize> = Default::default();
        let mut offsets = Vec::new();
        for (f, kind) in kinds.iter().enumerate() {
            offsets.push(generators.len() as i32);
            for (letter, rev) in kind.letters() {
                let c = counters.entry(letter).or_insert(0);
                *c += 1;
                generators.push(format!("{letter}{c}"));
                reversing.push(rev);
                factor_of.push(f);
            }
        }
        let shift = |w: &Vec<i32>, off: i32| w.iter().map(|&l| l.signum() * (l.abs() + off)).collect::<Vec<_>>();
        let mut powers = Vec::new();
        let mut others = Vec::new();
        for (kind, &off) in kinds.iter().zip(&offsets) {
            let (p, r) = kind.relators();
            powers.extend(p.iter().map(|w| shift(w, off)));
            others.extend(r.iter().map(|w| shift(w, off)));
        }
        powers.extend(others);
        Presentation { generators, reversing, factor_of, relators: powers }
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn word_to_string(&self, word: &[i32]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < word.len() {
            let l = word[i];
            let mut j = i;
            while j < word.len() && word[j] == l {
                j += 1;
            }
            let e = (j - i) as i64 * l.signum() as i64;
            out.push_str(&self.generators[(l.unsigned_abs() - 1) as usize]);
            if e != 1 {
                out.push_str(&format!("^{e}"));
            }
            i = j;
        }
        out
    }
}

/// Torsion class representatives of a factor list, in global letters.
pub fn torsion_classes(kinds: &[FactorKind]) -> Vec<(Vec<i32>, u64)> {
    let mut out = Vec::new();
    let mut off = 0i32;
    for kind in kinds {
        for (w, k) in kind.torsion_classes() {
            out.push((w.iter().map(|&l| l.signum() * (l.abs() + off)).collect(), k));
        }
        off += kind.generator_count() as i32;
    }
    out
}

/// Euler characteristic of the free product of the factors.
pub fn euler_characteristic(kinds: &[FactorKind]) -> Ratio<i64> {
    let sum: Ratio<i64> = kinds.iter().map(FactorKind::euler_characteristic).sum();
    sum - Ratio::from_integer(kinds.len() as i64 - 1)
}
