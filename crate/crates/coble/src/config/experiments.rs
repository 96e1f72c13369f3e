use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{format_rational, int, inverse, rank, solve, PolyRing, Polynomial, RatMatrix, Rational};

use super::{
    det3, det6, enumerate_structures, evaluate, frame_with_symbolic, ConfigError, CovariantStructure, PointConfig,
};

#[derive(Clone, Debug)]
pub struct Degree5Report {
    pub evaluations: Vec<(String, Polynomial)>,
    pub span: usize,
    pub basis_rank: usize,
    pub all_in_basis_span: bool,
    pub worked_product: Polynomial,
    /// Equals z0z1z2 − z0z2², the product of the displayed factor values.
    pub worked_matches: bool,
    /// Equals the displayed result z0z1z2 − z1²z2.
    pub printed_matches: bool,
    pub frame_dets: bool,
}

impl Degree5Report {
    pub fn passed(&self) -> bool {
        self.evaluations.len() == 12
            && self.span == 6
            && self.basis_rank == 6
            && self.all_in_basis_span
            && self.worked_matches
            && self.frame_dets
    }
}

/// The 12 degree-4 covariants on p1..p4 = standard frame and p5 = (z0, z1, z2).
pub fn degree5_explicit_check() -> Result<Degree5Report, ConfigError> {
    let ring = PolyRing::new(&["z0", "z1", "z2"], false);
    let z = |i: usize| Polynomial::var(&ring, i);
    let frame = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];
    let mut pts: Vec<[Polynomial; 3]> = frame.iter().map(|p| p.map(|c| Polynomial::from_int(&ring, c))).collect();
    pts.push([z(0), z(1), z(2)]);
    let c = PointConfig::new(&ring, pts)?;
    let mut evaluations = Vec::new();
    for s in enumerate_structures(4)? {
        evaluations.push((s.to_string(), evaluate(&c, &s)?));
    }
    let z012 = &(&z(0) * &z(1)) * &z(2);
    let mut basis = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                basis.push(&z012 - &(&(&z(i) * &z(i)) * &z(j)));
            }
        }
    }
    let polys: Vec<Polynomial> = evaluations.iter().map(|(_, p)| p.clone()).collect();
    let span = crate::poly::span_dimension(&polys)?;
    let basis_rank = crate::poly::span_dimension(&basis)?;
    let mut joint = basis.clone();
    joint.extend(polys.iter().cloned());
    let all_in_basis_span = crate::poly::span_dimension(&joint)? == basis_rank;
    let worked = CovariantStructure::parse(4, "|415||152||523||234||341|")?;
    let worked_product = evaluate(&c, &worked)?;
    let worked_matches = worked_product == &z012 - &(&(&z(2) * &z(2)) * &z(0));
    let printed_matches = worked_product == &z012 - &(&(&z(1) * &z(1)) * &z(2));
    let frame_dets = det3(&c, 1, 2, 5)? == z(2) && det3(&c, 1, 4, 5)? == &z(2) - &z(1);
    Ok(Degree5Report {
        evaluations,
        span,
        basis_rank,
        all_in_basis_span,
        worked_product,
        worked_matches,
        printed_matches,
        frame_dets,
    })
}

/// Conversion identities for the Cremona substitution a′_1 = a2a3, a′_2 = a3a1, a′_3 = a1a2, a′_k = a_k².
pub fn weyl_factor_transform_check() -> Result<Vec<(String, bool)>, ConfigError> {
    let frame = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let old = frame_with_symbolic(&frame, 4);
    let ring = old.ring().clone();
    let pts = old.points().to_vec();
    let mut primed: Vec<[Polynomial; 3]> = pts[..3].to_vec();
    for p in &pts[3..] {
        let [x, y, z] = p;
        primed.push([y * z, z * x, x * y]);
    }
    let new = PointConfig::new(&ring, primed)?;
    let coord = |k: usize, j: usize| pts[k - 1][j].clone();
    let x1x2 = |k: usize| &coord(k, 0) * &coord(k, 1);
    let x1x2x3 = |k: usize| &x1x2(k) * &coord(k, 2);
    let d3 = |c: &PointConfig, i, j, k| det3(c, i, j, k);
    let mut out = Vec::new();
    out.push(("|123|' = |123| = 1".to_string(), d3(&new, 1, 2, 3)? == d3(&old, 1, 2, 3)? && d3(&old, 1, 2, 3)? == Polynomial::one(&ring)));
    let lhs = d3(&new, 1, 2, 4)?;
    out.push((
        "|12k|' = x1x2(a_k) = |23k||31k|".to_string(),
        lhs == x1x2(4) && lhs == &d3(&old, 2, 3, 4)? * &d3(&old, 3, 1, 4)?,
    ));
    out.push((
        "|1jk|' = -x1(a_j)x1(a_k)|1jk|".to_string(),
        d3(&new, 1, 4, 5)? == -&(&(&coord(4, 0) * &coord(5, 0)) * &d3(&old, 1, 4, 5)?),
    ));
    out.push(("|ijk|' = |123ijk|".to_string(), d3(&new, 4, 5, 6)? == det6(&old, [1, 2, 3, 4, 5, 6])?));
    out.push((
        "|123ijk|' = x1x2x3(a_i)x1x2x3(a_j)x1x2x3(a_k)|ijk|".to_string(),
        det6(&new, [1, 2, 3, 4, 5, 6])? == &(&(&x1x2x3(4) * &x1x2x3(5)) * &x1x2x3(6)) * &d3(&old, 4, 5, 6)?,
    ));
    out.push((
        "|12ijkl|' = x1x2(a_i)x1x2(a_j)x1x2(a_k)x1x2(a_l)|12ijkl|".to_string(),
        det6(&new, [1, 2, 4, 5, 6, 7])?
            == &(&(&(&x1x2(4) * &x1x2(5)) * &x1x2(6)) * &x1x2(7)) * &det6(&old, [1, 2, 4, 5, 6, 7])?,
    ));
    // covariant level on six points
    let old6 = PointConfig::new(&ring, old.points()[..6].to_vec())?;
    let new6 = PointConfig::new(&ring, new.points()[..6].to_vec())?;
    let delta = &(&x1x2x3(4) * &x1x2x3(5)) * &x1x2x3(6);
    let ev = |c: &PointConfig, s: &str| CovariantStructure::parse(3, s).and_then(|s| evaluate(c, &s));
    let lhs = ev(&new6, "|134||234||356||456||512||612|")?;
    let rhs = &delta * &ev(&old6, "|124||356||123456|")?;
    out.push(("|134|'|234|'|356|'|456|'|512|'|612|' = δ|124||356||123456|".to_string(), lhs == rhs));
    let lhs = ev(&new6, "|123||456||123456|")?;
    let rhs = &delta * &ev(&old6, "|123||456||123456|")?;
    out.push(("|123|'|456|'|123456|' = δ|123||456||123456|".to_string(), lhs == rhs));
    let image_is_covariant = {
        let structures = enumerate_structures(3)?;
        let mut ok = true;
        let old_vals: Vec<Polynomial> =
            structures.iter().map(|s| evaluate(&old6, s)).collect::<Result<_, _>>()?;
        for s in &structures {
            let v = evaluate(&new6, s)?;
            let q = v.exact_divide(&delta);
            ok &= q.is_some_and(|q| old_vals.iter().any(|o| *o == q || *o == -&q));
        }
        ok
    };
    out.push(("every d=3 covariant maps to δ times a covariant".to_string(), image_is_covariant));
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenericityReport {
    pub collinear: Vec<[usize; 3]>,
    pub conconic: Vec<[usize; 6]>,
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        self.collinear.is_empty() && self.conconic.is_empty()
    }
}

pub fn genericity_check(c: &PointConfig) -> Result<GenericityReport, ConfigError> {
    use itertools::Itertools;
    let n = c.len();
    let mut rep = GenericityReport::default();
    for t in (1..=n).combinations(3) {
        if det3(c, t[0], t[1], t[2])?.is_zero() {
            rep.collinear.push([t[0], t[1], t[2]]);
        }
    }
    for s in (1..=n).combinations(6) {
        let idx = [s[0], s[1], s[2], s[3], s[4], s[5]];
        if det6(c, idx)?.is_zero() {
            rep.conconic.push(idx);
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovariantVector {
    pub structures: Vec<CovariantStructure>,
    pub values: Vec<Rational>,
    pub all_zero: bool,
}

impl CovariantVector {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "structures": self.structures.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "values": self.values.iter().map(format_rational).collect::<Vec<_>>(),
            "all_zero": self.all_zero,
        })
    }
}

/// Values of all structures on a rational configuration of 9 − d points.
pub fn covariant_vector(c: &PointConfig, d: i64) -> Result<CovariantVector, ConfigError> {
    if !(2..=5).contains(&d) {
        return Err(ConfigError::Degree(d));
    }
    if c.len() != (9 - d) as usize {
        return Err(ConfigError::Size { expected: (9 - d) as usize, found: c.len() });
    }
    let structures = enumerate_structures(d)?;
    let values: Vec<Rational> =
        structures.iter().map(|s| evaluate(c, s).map(|p| p.constant_term())).collect::<Result<_, _>>()?;
    let all_zero = values.iter().all(|v| *v == int(0));
    Ok(CovariantVector { structures, values, all_zero })
}

/// Equality as points of projective space; two zero vectors count as proportional.
pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let zero = int(0);
    let Some(k) = a.iter().position(|x| *x != zero) else { return b.iter().all(|x| *x == zero) };
    if b[k] == zero {
        return false;
    }
    let ratio = &b[k] / &a[k];
    a.iter().zip(b).all(|(x, y)| &(x * &ratio) == y)
}

/// Coordinates of points 5.. after moving p1..p4 to the standard frame, each scaled to a leading 1.
pub fn normal_form(points: &[[Rational; 3]]) -> Option<Vec<[Rational; 3]>> {
    if points.len() < 4 {
        return None;
    }
    let cols: RatMatrix = (0..3).map(|r| (0..3).map(|c| points[c][r].clone()).collect()).collect();
    let rhs: RatMatrix = (0..3).map(|r| vec![points[3][r].clone()]).collect();
    let lam = solve(&cols, &rhs).ok()?;
    if lam.iter().any(|l| l[0] == int(0)) {
        return None;
    }
    let a: RatMatrix = (0..3).map(|r| (0..3).map(|c| &cols[r][c] * &lam[c][0]).collect()).collect();
    let ai = inverse(&a).ok()?;
    let mut out = Vec::new();
    for p in &points[4..] {
        let v: Vec<Rational> = (0..3).map(|r| (0..3).map(|c| &ai[r][c] * &p[c]).sum()).collect();
        let k = v.iter().position(|x| *x != int(0))?;
        let s = v[k].clone();
        out.push([&v[0] / &s, &v[1] / &s, &v[2] / &s]);
    }
    Some(out)
}

fn random_point(rng: &mut ChaCha8Rng) -> [Rational; 3] {
    [0, 1, 2].map(|_| int(rng.gen_range(-12..=12)))
}

/// A configuration of `n` rational points with no three collinear and no six on a conic.
pub fn random_generic_config(rng: &mut ChaCha8Rng, n: usize) -> PointConfig {
    loop {
        let pts: Vec<[Rational; 3]> = (0..n).map(|_| random_point(rng)).collect();
        let Ok(c) = PointConfig::rational(&pts) else { continue };
        if genericity_check(&c).map(|r| r.is_generic()).unwrap_or(false) {
            return c;
        }
    }
}

/// An invertible integer 3×3 matrix.
pub fn random_projective_transform(rng: &mut ChaCha8Rng) -> RatMatrix {
    loop {
        let m: RatMatrix = (0..3).map(|_| (0..3).map(|_| int(rng.gen_range(-5..=5))).collect()).collect();
        if rank(&m) == 3 {
            return m;
        }
    }
}

fn transform(c: &PointConfig, g: &RatMatrix) -> Result<PointConfig, ConfigError> {
    let pts = c.rational_points().ok_or_else(|| ConfigError::Input("configuration is not rational".into()))?;
    let moved: Vec<[Rational; 3]> =
        pts.iter().map(|p| [0, 1, 2].map(|r| (0..3).map(|k| &g[r][k] * &p[k]).sum())).collect();
    PointConfig::rational(&moved)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentReport {
    pub d: i64,
    pub trials: usize,
    pub successes: usize,
    /// Sampling evidence, not a proof.
    pub evidence_only: bool,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.trials > 0 && self.successes == self.trials
    }
}

/// Projectively inequivalent generic pairs give non-proportional covariant vectors.
pub fn separation_experiment(d: i64, pairs: usize, seed: u64) -> Result<ExperimentReport, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = (9 - d) as usize;
    let mut successes = 0;
    let mut trials = 0;
    while trials < pairs {
        let a = random_generic_config(&mut rng, n);
        let b = random_generic_config(&mut rng, n);
        let (na, nb) = (normal_form(&a.rational_points().unwrap()), normal_form(&b.rational_points().unwrap()));
        if na.is_none() || na == nb {
            continue;
        }
        trials += 1;
        let (va, vb) = (covariant_vector(&a, d)?, covariant_vector(&b, d)?);
        if !va.all_zero && !vb.all_zero && !proportional(&va.values, &vb.values) {
            successes += 1;
        }
    }
    Ok(ExperimentReport { d, trials, successes, evidence_only: true })
}

/// Covariant vectors are proportional under random projective transformations, with factor det(g)^{9-d}.
pub fn transform_experiment(d: i64, count: usize, seed: u64) -> Result<ExperimentReport, ConfigError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = (9 - d) as usize;
    let mut successes = 0;
    for _ in 0..count {
        let c = random_generic_config(&mut rng, n);
        let g = random_projective_transform(&mut rng);
        let det = crate::poly::determinant(&g);
        let moved = transform(&c, &g)?;
        let (va, vb) = (covariant_vector(&c, d)?, covariant_vector(&moved, d)?);
        let mut scale = int(1);
        for _ in 0..n {
            scale = &scale * &det;
        }
        if va.values.iter().zip(&vb.values).all(|(x, y)| &(x * &scale) == y) && !va.all_zero {
            successes += 1;
        }
    }
    Ok(ExperimentReport { d, trials: count, successes, evidence_only: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proportionality() {
        assert!(proportional(&[int(1), int(2)], &[int(-3), int(-6)]));
        assert!(!proportional(&[int(1), int(2)], &[int(1), int(3)]));
        assert!(!proportional(&[int(0), int(2)], &[int(1), int(2)]));
    }

    #[test]
    fn normal_form_of_frame() {
        let pts = vec![
            [int(1), int(0), int(0)],
            [int(0), int(1), int(0)],
            [int(0), int(0), int(1)],
            [int(1), int(1), int(1)],
            [int(2), int(3), int(5)],
        ];
        assert_eq!(normal_form(&pts).unwrap(), vec![[int(1), crate::poly::rat(3, 2), crate::poly::rat(5, 2)]]);
    }
}
