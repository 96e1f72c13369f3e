//! Point configurations in the plane, Coble factors |ijk| and |i1…i6|, and covariant structures.

mod experiments;
mod naruki;

pub use experiments::{
    covariant_vector, degree5_explicit_check, genericity_check, normal_form, proportional, random_generic_config,
    random_projective_transform, separation_experiment, transform_experiment, weyl_factor_transform_check,
    CovariantVector, Degree5Report, ExperimentReport, GenericityReport,
};
pub use naruki::{
    naruki_check_against, naruki_config, naruki_identities, naruki_printed_table, naruki_table, naruki_table_check,
    naruki_value, NarukiReport,
};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;
use serde_json::{json, Value};
use thiserror::Error;

use crate::poly::{format_rational, parse_rational, poly_determinant, PolyError, PolyRing, Polynomial, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("repeated index in a Coble factor")]
    RepeatedIndex,
    #[error("index {0} is out of range")]
    Index(usize),
    #[error("point {0} is zero")]
    ZeroPoint(usize),
    #[error("points {0} and {1} coincide")]
    RepeatedPoint(usize, usize),
    #[error("structure needs {expected} points, configuration has {found}")]
    Size { expected: usize, found: usize },
    #[error("degree {0} is outside 2..=5")]
    Degree(i64),
    #[error("invalid structure: {0}")]
    Structure(String),
    #[error("malformed input: {0}")]
    Input(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Scalars of a configuration, read off its ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarKind {
    Rational,
    Polynomial,
    Laurent,
}

/// Projective points given by coordinate representatives over an exact ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    ring: Arc<PolyRing>,
    points: Vec<[Polynomial; 3]>,
}

pub fn rational_ring() -> Arc<PolyRing> {
    PolyRing::new::<&str>(&[], false)
}

impl PointConfig {
    pub fn new(ring: &Arc<PolyRing>, points: Vec<[Polynomial; 3]>) -> Result<PointConfig, ConfigError> {
        for (i, p) in points.iter().enumerate() {
            if p.iter().all(|c| c.is_zero()) {
                return Err(ConfigError::ZeroPoint(i + 1));
            }
            for c in p {
                if c.ring().as_ref() != ring.as_ref() {
                    return Err(PolyError::RingMismatch.into());
                }
            }
        }
        Ok(PointConfig { ring: ring.clone(), points })
    }

    /// Rational points; proportional representatives are rejected.
    pub fn rational(points: &[[Rational; 3]]) -> Result<PointConfig, ConfigError> {
        let ring = rational_ring();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let (p, q) = (&points[i], &points[j]);
                let cross = [
                    &p[1] * &q[2] - &p[2] * &q[1],
                    &p[2] * &q[0] - &p[0] * &q[2],
                    &p[0] * &q[1] - &p[1] * &q[0],
                ];
                let nonzero_p = p.iter().any(|c| *c != Rational::from_integer(0.into()));
                if nonzero_p && cross.iter().all(|c| *c == Rational::from_integer(0.into())) {
                    return Err(ConfigError::RepeatedPoint(i + 1, j + 1));
                }
            }
        }
        let pts = points.iter().map(|p| p.clone().map(|c| Polynomial::constant(&ring, c))).collect();
        PointConfig::new(&ring, pts)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn points(&self) -> &[[Polynomial; 3]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn scalar_kind(&self) -> ScalarKind {
        if self.ring.laurent {
            ScalarKind::Laurent
        } else if self.ring.nvars() == 0 {
            ScalarKind::Rational
        } else {
            ScalarKind::Polynomial
        }
    }

    /// Rational coordinates, when the scalars are rational.
    pub fn rational_points(&self) -> Option<Vec<[Rational; 3]>> {
        if self.scalar_kind() != ScalarKind::Rational {
            return None;
        }
        Some(self.points.iter().map(|p| p.clone().map(|c| c.constant_term())).collect())
    }

    /// `{points: [[num, num, num], ...]}` with rationals as strings "p/q" or integers.
    pub fn from_json(v: &Value) -> Result<PointConfig, ConfigError> {
        let bad = |m: &str| ConfigError::Input(m.to_string());
        let pts = v.get("points").and_then(Value::as_array).ok_or_else(|| bad("missing points array"))?;
        let mut out = Vec::new();
        for p in pts {
            let coords = p.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("each point needs 3 coordinates"))?;
            let mut q: Vec<Rational> = Vec::new();
            for c in coords {
                let s = match c {
                    Value::String(s) => s.clone(),
                    Value::Number(n) if n.is_i64() => n.to_string(),
                    _ => return Err(bad("coordinates must be integers or \"p/q\" strings")),
                };
                q.push(parse_rational(&s)?);
            }
            out.push([q[0].clone(), q[1].clone(), q[2].clone()]);
        }
        PointConfig::rational(&out)
    }

    pub fn to_json(&self) -> Value {
        match self.rational_points() {
            Some(pts) => json!({
                "points": pts.iter().map(|p| p.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>()
            }),
            None => json!({
                "points": self.points.iter().map(|p| p.iter().map(|c| c.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>()
            }),
        }
    }

    fn point(&self, i: usize) -> Result<&[Polynomial; 3], ConfigError> {
        if i == 0 || i > self.points.len() {
            return Err(ConfigError::Index(i));
        }
        Ok(&self.points[i - 1])
    }
}

fn distinct(idx: &[usize]) -> bool {
    idx.iter().all_unique()
}

/// 3×3 determinant with rows p_i, p_j, p_k (1-based, in the given order).
pub fn det3(c: &PointConfig, i: usize, j: usize, k: usize) -> Result<Polynomial, ConfigError> {
    if !distinct(&[i, j, k]) {
        return Err(ConfigError::RepeatedIndex);
    }
    let (a, b, d) = (c.point(i)?, c.point(j)?, c.point(k)?);
    let minor = |x: usize, y: usize| &(&b[x] * &d[y]) - &(&b[y] * &d[x]);
    Ok(&(&(&a[0] * &minor(1, 2)) - &(&a[1] * &minor(0, 2))) + &(&a[2] * &minor(0, 1)))
}

/// Quadratic monomials in the fixed order x², y², z², yz, zx, xy.
pub fn squared_row(p: &[Polynomial; 3]) -> Vec<Polynomial> {
    let [x, y, z] = p;
    vec![x * x, y * y, z * z, y * z, z * x, x * y]
}

/// 6×6 determinant of the squared-coordinate rows, in the given order.
pub fn det6(c: &PointConfig, idx: [usize; 6]) -> Result<Polynomial, ConfigError> {
    if !distinct(&idx) {
        return Err(ConfigError::RepeatedIndex);
    }
    let rows: Vec<Vec<Polynomial>> = idx.iter().map(|&i| c.point(i).map(squared_row)).collect::<Result<_, _>>()?;
    Ok(poly_determinant(&rows))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Triple([usize; 3]),
    Six([usize; 6]),
}

impl Factor {
    pub fn indices(&self) -> &[usize] {
        match self {
            Factor::Triple(t) => t,
            Factor::Six(s) => s,
        }
    }

    pub fn evaluate(&self, c: &PointConfig) -> Result<Polynomial, ConfigError> {
        match self {
            Factor::Triple([i, j, k]) => det3(c, *i, *j, *k),
            Factor::Six(s) => det6(c, *s),
        }
    }

    fn sorted(&self) -> Factor {
        match self {
            Factor::Triple(t) => {
                let mut t = *t;
                t.sort_unstable();
                Factor::Triple(t)
            }
            Factor::Six(s) => {
                let mut s = *s;
                s.sort_unstable();
                Factor::Six(s)
            }
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "|{s}|")
    }
}

/// A product of Coble factors for 9 − d points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CovariantStructure {
    pub d: usize,
    pub factors: Vec<Factor>,
}

impl CovariantStructure {
    pub fn new(d: usize, factors: Vec<Factor>) -> Result<CovariantStructure, ConfigError> {
        let s = CovariantStructure { d, factors };
        s.validate()?;
        Ok(s)
    }

    pub fn npoints(&self) -> usize {
        9 - self.d
    }

    /// (number of |ijk|, number of |i1…i6|).
    pub fn shape(&self) -> (usize, usize) {
        let t = self.factors.iter().filter(|f| matches!(f, Factor::Triple(_))).count();
        (t, self.factors.len() - t)
    }

    /// Number of factors containing each unordered pair.
    pub fn pair_multiplicity(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for f in &self.factors {
            for (a, b) in f.indices().iter().copied().sorted().tuple_combinations() {
                *m.entry((a, b)).or_insert(0) += 1;
            }
        }
        m
    }

    /// Index-weight, det-weight and pair-coverage rules.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let n = self.npoints();
        if !(2..=5).contains(&self.d) {
            return Err(ConfigError::Degree(self.d as i64));
        }
        let mut weight = vec![0usize; n + 1];
        let mut det_weight = 0;
        for f in &self.factors {
            if !distinct(f.indices()) {
                return Err(ConfigError::RepeatedIndex);
            }
            let w = match f {
                Factor::Triple(_) => 1,
                Factor::Six(_) => 2,
            };
            det_weight += if w == 1 { 1 } else { 4 };
            for &i in f.indices() {
                if i == 0 || i > n {
                    return Err(ConfigError::Index(i));
                }
                weight[i] += w;
            }
        }
        if weight[1..].iter().any(|&w| w != 3) {
            return Err(ConfigError::Structure("every index must have weight 3".into()));
        }
        if det_weight != n {
            return Err(ConfigError::Structure(format!("determinant weight {det_weight} != {n}")));
        }
        let pairs = self.pair_multiplicity();
        if pairs.len() != n * (n - 1) / 2 {
            return Err(ConfigError::Structure("some pair of indices is not covered".into()));
        }
        Ok(())
    }

    pub fn has_distinct_factors(&self) -> bool {
        let c = self.canonical();
        c.factors.windows(2).all(|w| w[0] != w[1])
    }

    /// Same factors with sorted indices, in sorted order.
    pub fn canonical(&self) -> CovariantStructure {
        let mut factors: Vec<Factor> = self.factors.iter().map(Factor::sorted).collect();
        factors.sort();
        CovariantStructure { d: self.d, factors }
    }

    pub fn parse(d: usize, s: &str) -> Result<CovariantStructure, ConfigError> {
        let bad = || ConfigError::Input(format!("cannot parse structure {s:?}"));
        let mut factors = Vec::new();
        for part in s.split('|').map(str::trim).filter(|p| !p.is_empty()) {
            let idx: Vec<usize> =
                part.chars().map(|c| c.to_digit(10).map(|x| x as usize)).collect::<Option<_>>().ok_or_else(bad)?;
            factors.push(match idx.len() {
                3 => Factor::Triple([idx[0], idx[1], idx[2]]),
                6 => Factor::Six([idx[0], idx[1], idx[2], idx[3], idx[4], idx[5]]),
                _ => return Err(bad()),
            });
        }
        CovariantStructure::new(d, factors)
    }
}

impl fmt::Display for CovariantStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.factors {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for CovariantStructure {
    type Err = ConfigError;

    /// The degree is read off the largest index.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let n = s.chars().filter_map(|c| c.to_digit(10)).max().unwrap_or(0) as usize;
        if !(4..=7).contains(&n) {
            return Err(ConfigError::Input(format!("cannot infer the number of points of {s:?}")));
        }
        CovariantStructure::parse(9 - n, s)
    }
}

/// Structures for degree d with pairwise distinct factors, canonically ordered.
pub fn enumerate_structures(d: i64) -> Result<Vec<CovariantStructure>, ConfigError> {
    Ok(enumerate_rule_structures(d)?.into_iter().filter(CovariantStructure::has_distinct_factors).collect())
}

/// Every factor multiset obeying the weight and coverage rules, repeated factors allowed.
pub fn enumerate_rule_structures(d: i64) -> Result<Vec<CovariantStructure>, ConfigError> {
    if !(2..=5).contains(&d) {
        return Err(ConfigError::Degree(d));
    }
    let n = (9 - d) as usize;
    let triples: Vec<[usize; 3]> = (1..=n).tuple_combinations().map(|(a, b, c)| [a, b, c]).collect();
    let sixes: Vec<[usize; 6]> = (1..=n).combinations(6).map(|v| [v[0], v[1], v[2], v[3], v[4], v[5]]).collect();
    let mut out = Vec::new();
    for nsix in 0..=n / 4 {
        if 4 * nsix > n {
            break;
        }
        let ntriple = n - 4 * nsix;
        for six_choice in sixes.iter().combinations_with_replacement(nsix) {
            let mut weight = vec![0usize; n + 1];
            for s in &six_choice {
                for &i in s.iter() {
                    weight[i] += 2;
                }
            }
            if weight.iter().any(|&w| w > 3) {
                continue;
            }
            let base: Vec<Factor> = six_choice.iter().map(|s| Factor::Six(**s)).collect();
            let mut chosen = Vec::new();
            fill_triples(d as usize, &triples, 0, ntriple, &mut weight, &mut chosen, &base, &mut out);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn fill_triples(
    d: usize,
    triples: &[[usize; 3]],
    start: usize,
    left: usize,
    weight: &mut [usize],
    chosen: &mut Vec<[usize; 3]>,
    base: &[Factor],
    out: &mut Vec<CovariantStructure>,
) {
    if left == 0 {
        let mut factors = base.to_vec();
        factors.extend(chosen.iter().map(|t| Factor::Triple(*t)));
        let s = CovariantStructure { d, factors }.canonical();
        if s.validate().is_ok() {
            out.push(s);
        }
        return;
    }
    for (k, t) in triples.iter().enumerate().skip(start) {
        if t.iter().any(|&i| weight[i] >= 3) {
            continue;
        }
        for &i in t {
            weight[i] += 1;
        }
        chosen.push(*t);
        fill_triples(d, triples, k, left - 1, weight, chosen, base, out);
        chosen.pop();
        for &i in t {
            weight[i] -= 1;
        }
    }
}

/// Product of the factors evaluated on the configuration.
pub fn evaluate(c: &PointConfig, s: &CovariantStructure) -> Result<Polynomial, ConfigError> {
    if c.len() != s.npoints() {
        return Err(ConfigError::Size { expected: s.npoints(), found: c.len() });
    }
    let mut acc = Polynomial::one(c.ring());
    for f in &s.factors {
        acc = &acc * &f.evaluate(c)?;
    }
    Ok(acc)
}

/// Symbolic points p_i = (x_i, y_i, z_i) in a fresh polynomial ring, one per index in `symbolic`,
/// with the standard frame used for the indices in `frame`.
pub fn frame_with_symbolic(frame: &[[i64; 3]], symbolic: usize) -> PointConfig {
    let names: Vec<String> =
        (0..symbolic).flat_map(|k| ["x", "y", "z"].map(|v| format!("{v}{}", frame.len() + k + 1))).collect();
    let ring = PolyRing::new(&names, false);
    let mut pts: Vec<[Polynomial; 3]> =
        frame.iter().map(|p| p.map(|c| Polynomial::from_int(&ring, c))).collect();
    for k in 0..symbolic {
        pts.push([0, 1, 2].map(|j| Polynomial::var(&ring, 3 * k + j)));
    }
    PointConfig::new(&ring, pts).expect("frame points are nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn ipts(v: &[[i64; 3]]) -> PointConfig {
        PointConfig::rational(&v.iter().map(|p| p.map(int)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn standard_frame_det() {
        let c = ipts(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(det3(&c, 1, 2, 3).unwrap().constant_term(), int(1));
        assert!(det3(&c, 1, 1, 2).is_err());
    }

    #[test]
    fn collinear_and_conic() {
        let c = ipts(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]);
        assert!(det3(&c, 1, 2, 3).unwrap().is_zero());
        // six points on x² + y² − z² = 0
        let c = ipts(&[[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1], [3, 4, 5], [4, 3, 5]]);
        assert!(det6(&c, [1, 2, 3, 4, 5, 6]).unwrap().is_zero());
    }

    #[test]
    fn structure_counts() {
        let counts: Vec<usize> = [5, 4, 3, 2].iter().map(|&d| enumerate_structures(d).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 12, 40, 135]);
        let s5 = enumerate_structures(5).unwrap();
        assert_eq!(s5[0].to_string(), "|123||124||134||234|");
    }

    #[test]
    fn repeated_factor_structures() {
        let counts: Vec<usize> = [5, 4, 3, 2].iter().map(|&d| enumerate_rule_structures(d).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 22, 40, 135]);
        let extra: Vec<_> = enumerate_rule_structures(4).unwrap().into_iter().filter(|s| !s.has_distinct_factors()).collect();
        assert_eq!(extra.len(), 10);
        assert!(extra.iter().any(|s| s.to_string() == "|123||123||145||245||345|"));
    }

    #[test]
    fn parse_roundtrip() {
        let s: CovariantStructure = "|123||456||123456|".parse().unwrap();
        assert_eq!(s.d, 3);
        assert_eq!(s.shape(), (2, 1));
        assert!("|123||456|".parse::<CovariantStructure>().is_err());
    }

    #[test]
    fn repeated_points_rejected() {
        let r = PointConfig::rational(&[[int(1), int(2), int(3)], [int(2), int(4), int(6)]]);
        assert_eq!(r, Err(ConfigError::RepeatedPoint(1, 2)));
    }
}
