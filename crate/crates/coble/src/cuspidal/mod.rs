//! Points p(t) = (1, t, t³) on the cuspidal cubic u²w = v³, and what Coble factors become there.

mod fields;

pub use fields::{
    d5_field_check, d5_fields, derive_vector_field_x, distribution_rank_check, e6_field_check, elementary_symmetric,
    field_coordinates, gradient_field, invariant_field_basis, invariant_polynomial_basis, is_euler_multiple, lie_bracket,
    proportional_modulo_euler, pushforward, quadratic_form_matrix, reynolds_average, x_hat, D5FieldReport, E6FieldReport, PolyVectorField, RankReport,
    XDerivation,
};

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::config::{
    det3, enumerate_rule_structures, enumerate_structures, ConfigError, CovariantStructure, Factor, PointConfig,
};
use crate::covariants::{coble_space, CovariantError, RootChart};
use crate::lattice::LatticeError;
use crate::poly::{int, poly_determinant, PolyError, PolyRing, Polynomial, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CuspidalError {
    #[error("degree {0} is outside 2..=5")]
    Degree(i64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Covariant(#[from] CovariantError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// p(t) = [1 : t : t³] in the (u, v, w) frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspidalPoint {
    pub t: Polynomial,
}

impl CuspidalPoint {
    pub fn new(t: Polynomial) -> CuspidalPoint {
        CuspidalPoint { t }
    }

    pub fn coordinates(&self) -> [Polynomial; 3] {
        [Polynomial::one(self.t.ring()), self.t.clone(), self.t.pow(3)]
    }

    pub fn on_curve(&self) -> bool {
        let [u, v, w] = self.coordinates();
        (&(&(&u * &u) * &w) - &v.pow(3)).is_zero()
    }
}

/// The configuration p(t_1), …, p(t_n).
pub fn cuspidal_config(ts: &[Polynomial]) -> Result<PointConfig, CuspidalError> {
    let ring = ts.first().ok_or_else(|| CuspidalError::Precondition("no parameters".into()))?.ring().clone();
    let pts = ts.iter().map(|t| CuspidalPoint::new(t.clone()).coordinates()).collect();
    Ok(PointConfig::new(&ring, pts)?)
}

/// Δ(x_1, …, x_k) = ∏_{a<b} (x_a − x_b).
pub fn vandermonde(xs: &[Polynomial]) -> Polynomial {
    let ring = xs[0].ring();
    let mut acc = Polynomial::one(ring);
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            acc = &acc * &(&xs[a] - &xs[b]);
        }
    }
    acc
}

fn sign_of(lhs: &Polynomial, rhs: &Polynomial) -> Option<i32> {
    if lhs == rhs {
        Some(1)
    } else if *lhs == -rhs {
        Some(-1)
    } else {
        None
    }
}

/// A polynomial identity with the sign it holds with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub sign: i32,
    pub holds: bool,
}

impl IdentityCheck {
    fn from(name: &str, lhs: &Polynomial, rhs: &Polynomial) -> IdentityCheck {
        match sign_of(lhs, rhs) {
            Some(sign) => IdentityCheck { name: name.into(), sign, holds: true },
            None => IdentityCheck { name: name.into(), sign: 0, holds: false },
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "sign": self.sign, "holds": self.holds})
    }
}

fn t_ring(n: usize) -> (Arc<PolyRing>, Vec<Polynomial>) {
    let r = PolyRing::t_vars(n);
    let ts = (0..n).map(|i| Polynomial::var(&r, i)).collect();
    (r, ts)
}

fn sum(ts: &[Polynomial]) -> Polynomial {
    ts.iter().fold(Polynomial::zero(ts[0].ring()), |acc, t| &acc + t)
}

/// det[(1, t_a, t_a³)] = Δ(t_i, t_j, t_k)·(−t_i − t_j − t_k).
pub fn det3_identity() -> IdentityCheck {
    let (_, ts) = t_ring(3);
    let c = cuspidal_config(&ts).expect("nonzero points");
    let lhs = det3(&c, 1, 2, 3).expect("distinct indices");
    let rhs = &vandermonde(&ts) * &(-&sum(&ts));
    IdentityCheck::from("det3 = Δ(t)·(−Σt)", &lhs, &rhs)
}

/// Rows (u², uv, uw, v², vw, w²) at (1, t, t³).
pub fn cusp_squared_row(t: &Polynomial) -> Vec<Polynomial> {
    let one = Polynomial::one(t.ring());
    vec![one, t.clone(), t.pow(3), t.pow(2), t.pow(4), t.pow(6)]
}

/// 6×6 determinant of squared rows = ±(Σt)·Δ(t), with the sign recorded.
pub fn det6_identity() -> IdentityCheck {
    let (_, ts) = t_ring(6);
    let m: Vec<Vec<Polynomial>> = ts.iter().map(cusp_squared_row).collect();
    let lhs = poly_determinant(&m);
    let rhs = &sum(&ts) * &vandermonde(&ts);
    IdentityCheck::from("det6 = (Σt)·Δ(t)", &lhs, &rhs)
}

/// Exponent of t in the restriction of u^a v^b w^c to the curve.
pub fn restriction_degree(a: u32, b: u32, c: u32) -> Result<u32, CuspidalError> {
    if a + b + c != 3 {
        return Err(CuspidalError::Precondition(format!("u^{a}v^{b}w^{c} is not cubic")));
    }
    Ok(b + 3 * c)
}

/// All ten cubic monomials and their restriction degrees.
pub fn restriction_table() -> Vec<([u32; 3], u32)> {
    let mut out = Vec::new();
    for a in (0..=3).rev() {
        for b in (0..=3 - a).rev() {
            let c = 3 - a - b;
            out.push(([a, b, c], b + 3 * c));
        }
    }
    out
}

/// Root dictionary of one structure: h_ijk for |ijk|, the root with form −Σ_{six} t for a six,
/// and (k − 1) copies of h_ab for each pair met by k factors.
pub fn structure_roots(rc: &RootChart, s: &CovariantStructure) -> Result<Vec<usize>, CuspidalError> {
    let n = rc.chart.n();
    if s.npoints() != n {
        return Err(ConfigError::Size { expected: n, found: s.npoints() }.into());
    }
    let ring = rc.chart.ring();
    let form_of = |coeffs: &[(usize, i64)]| {
        let mut v = vec![int(0); n];
        for &(i, c) in coeffs {
            v[i - 1] = int(c);
        }
        let p = Polynomial::linear(ring, &v);
        rc.root_of_form(&p).ok_or_else(|| CuspidalError::Precondition(format!("{p} is not a root form")))
    };
    let mut roots = Vec::new();
    for f in &s.factors {
        let idx: Vec<(usize, i64)> = f.indices().iter().map(|&i| (i, -1)).collect();
        roots.push(form_of(&idx)?);
    }
    for ((a, b), k) in s.pair_multiplicity() {
        for _ in 1..k {
            roots.push(form_of(&[(a, 1), (b, -1)])?);
        }
    }
    Ok(roots)
}

/// Outcome of comparing one structure on the cusp with its root product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovariantIdentity {
    pub structure: String,
    pub roots: Vec<usize>,
    pub factor_signs: Vec<i32>,
    /// Overall sign in product = sign·Δ(t_1..t_n)·∏ root forms.
    pub sign: i32,
    /// Whether the full product was expanded symbolically; otherwise checked at sample points.
    pub symbolic: bool,
    pub holds: bool,
}

impl CovariantIdentity {
    pub fn to_json(&self, rc: &RootChart) -> Value {
        json!({
            "structure": self.structure,
            "roots": self.roots.iter().map(|&r| rc.rs.label(r).to_string()).collect::<Vec<_>>(),
            "sign": self.sign,
            "symbolic": self.symbolic,
            "holds": self.holds,
        })
    }
}

/// Symbolic factor identities, cached by factor.
pub struct CuspidalSetting {
    pub rc: RootChart,
    config: PointConfig,
    ts: Vec<Polynomial>,
    cache: Mutex<BTreeMap<Factor, (Option<i32>, Polynomial)>>,
}

impl CuspidalSetting {
    pub fn new(d: i64) -> Result<CuspidalSetting, CuspidalError> {
        if !(2..=5).contains(&d) {
            return Err(CuspidalError::Degree(d));
        }
        let rc = RootChart::new(d)?;
        let ts: Vec<Polynomial> = (1..=rc.chart.n()).map(|i| rc.chart.t(i)).collect();
        let config = cuspidal_config(&ts)?;
        Ok(CuspidalSetting { rc, config, ts, cache: Mutex::new(BTreeMap::new()) })
    }

    /// Sign with which factor = Δ(its t's)·(−Σ its t's), or `None` if that fails.
    pub fn factor_sign(&self, f: &Factor) -> Result<Option<i32>, CuspidalError> {
        Ok(self.factor_entry(f)?.0)
    }

    fn factor_entry(&self, f: &Factor) -> Result<(Option<i32>, Polynomial), CuspidalError> {
        if let Some(e) = self.cache.lock().expect("cache lock").get(f) {
            return Ok(e.clone());
        }
        let idx = f.indices();
        let sub: Vec<Polynomial> = idx.iter().map(|&i| self.ts[i - 1].clone()).collect();
        let lhs = f.evaluate(&self.config)?;
        let rhs = &vandermonde(&sub) * &(-&sum(&sub));
        let e = (sign_of(&lhs, &rhs), lhs);
        self.cache.lock().expect("cache lock").insert(f.clone(), e.clone());
        Ok(e)
    }

    /// Sign ε with ∏_f Δ(f) = ε·∏_{a<b}(t_a − t_b)^{mult(a,b)}, from the order of indices in each factor.
    fn ordering_sign(s: &CovariantStructure) -> i32 {
        let mut sign = 1;
        for f in &s.factors {
            let idx = f.indices();
            for a in 0..idx.len() {
                for b in a + 1..idx.len() {
                    if idx[a] > idx[b] {
                        sign = -sign;
                    }
                }
            }
        }
        sign
    }

    pub fn check(&self, s: &CovariantStructure, samples: usize) -> Result<CovariantIdentity, CuspidalError> {
        let roots = structure_roots(&self.rc, s)?;
        let mut factor_signs = Vec::new();
        let mut factors_ok = true;
        for f in &s.factors {
            match self.factor_sign(f)? {
                Some(x) => factor_signs.push(x),
                None => {
                    factors_ok = false;
                    factor_signs.push(0);
                }
            }
        }
        let sign = factor_signs.iter().product::<i32>() * Self::ordering_sign(s);
        let symbolic = self.rc.chart.n() <= 5;
        let product_ok = if !factors_ok {
            false
        } else if symbolic {
            let lhs = crate::config::evaluate(&self.config, s)?;
            let rhs = (&vandermonde(&self.ts) * &self.rc.product(&roots)).scale(&int(sign as i64));
            lhs == rhs
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ roots.len() as u64);
            let mut ok = true;
            for _ in 0..samples {
                let pt: Vec<Rational> = (0..self.ts.len()).map(|_| int(rng.gen_range(-40..=40))).collect();
                let mut lhs = int(1);
                for f in &s.factors {
                    lhs *= self.factor_entry(f)?.1.evaluate(&pt);
                }
                let mut rhs = int(sign as i64);
                for a in 0..pt.len() {
                    for b in a + 1..pt.len() {
                        rhs *= &pt[a] - &pt[b];
                    }
                }
                for &r in &roots {
                    rhs *= self.rc.form(r).evaluate(&pt);
                }
                ok &= lhs == rhs;
            }
            ok
        };
        Ok(CovariantIdentity {
            structure: s.to_string(),
            roots,
            factor_signs,
            sign,
            symbolic,
            holds: factors_ok && product_ok,
        })
    }
}

/// Single-structure check at degree d.
pub fn covariant_identity_check(d: i64, s: &CovariantStructure) -> Result<CovariantIdentity, CuspidalError> {
    if s.d as i64 != d {
        return Err(ConfigError::Size { expected: (9 - d) as usize, found: s.npoints() }.into());
    }
    CuspidalSetting::new(d)?.check(s, 3)
}

/// All structures of degree d against the covariants built from root subsystems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySweep {
    pub d: usize,
    pub structures: usize,
    pub identities_hold: usize,
    /// Structures whose root multiset is the factor multiset of some covariant.
    pub matched: usize,
    pub covariants: usize,
    /// Matching is one-to-one and onto.
    pub bijective: bool,
    pub failures: Vec<String>,
    /// Rule-only structures with a repeated factor, and how many of them hit a covariant.
    pub repeated_factor_structures: usize,
    pub repeated_factor_matches: usize,
    pub identities: Vec<CovariantIdentity>,
}

impl IdentitySweep {
    pub fn passed(&self) -> bool {
        self.identities_hold == self.structures && self.matched == self.structures && self.bijective
    }

    pub fn to_json(&self, rc: &RootChart) -> Value {
        json!({
            "d": self.d,
            "structures": self.structures,
            "identities_hold": self.identities_hold,
            "matched": self.matched,
            "covariants": self.covariants,
            "bijective": self.bijective,
            "failures": self.failures,
            "repeated_factor_structures": self.repeated_factor_structures,
            "repeated_factor_matches": self.repeated_factor_matches,
            "identities": self.identities.iter().map(|i| i.to_json(rc)).collect::<Vec<_>>(),
        })
    }
}

pub fn covariant_identity_sweep(d: i64) -> Result<(CuspidalSetting, IdentitySweep), CuspidalError> {
    let setting = CuspidalSetting::new(d)?;
    let rc = &setting.rc;
    let space = coble_space(rc)?;
    let keys: BTreeMap<Vec<usize>, usize> =
        space.covariants.iter().enumerate().map(|(i, c)| (rc.multiset_key(&c.factors), i)).collect();
    let structures = enumerate_structures(d)?;
    let identities: Vec<CovariantIdentity> =
        structures.par_iter().map(|s| setting.check(s, 3)).collect::<Result<_, _>>()?;
    let mut hit = BTreeSet::new();
    let mut matched = 0;
    let mut failures = Vec::new();
    for id in &identities {
        match keys.get(&rc.multiset_key(&id.roots)) {
            Some(&i) => {
                matched += 1;
                hit.insert(i);
            }
            None => failures.push(format!("{}: no covariant with this root multiset", id.structure)),
        }
        if !id.holds {
            failures.push(format!("{}: cusp identity fails", id.structure));
        }
    }
    let mut repeated = 0;
    let mut repeated_matches = 0;
    for s in enumerate_rule_structures(d)?.iter().filter(|s| !s.has_distinct_factors()) {
        repeated += 1;
        if keys.contains_key(&rc.multiset_key(&structure_roots(rc, s)?)) {
            repeated_matches += 1;
        }
    }
    let sweep = IdentitySweep {
        d: d as usize,
        structures: structures.len(),
        identities_hold: identities.iter().filter(|i| i.holds).count(),
        matched,
        covariants: keys.len(),
        bijective: matched == structures.len() && hit.len() == keys.len() && keys.len() == structures.len(),
        failures,
        repeated_factor_structures: repeated,
        repeated_factor_matches: repeated_matches,
        identities,
    };
    Ok((setting, sweep))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossRatioReport {
    pub slopes: bool,
    pub differences_factor: bool,
    pub numerator: bool,
    pub denominator: bool,
    pub numeric: bool,
    pub degenerate: bool,
}

impl CrossRatioReport {
    pub fn passed(&self) -> bool {
        self.slopes && self.differences_factor && self.numerator && self.denominator && self.numeric && self.degenerate
    }
}

/// (a, b; c, d) = (a − d)(b − c) / ((a − c)(b − d)).
pub fn cross_ratio(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Option<Rational> {
    let den = (a - c) * (b - d);
    if den == int(0) {
        return None;
    }
    Some((a - d) * (b - c) / den)
}

/// Cross ratio of the lines p1p2, p1p3, p1p4, p1p5 through the slopes t_j² + t_j t_1 + t_1²,
/// against r(h25 h125 h34 h134) / r(h35 h135 h24 h124).
pub fn cross_ratio_check() -> Result<CrossRatioReport, CuspidalError> {
    let rc = RootChart::new(4)?;
    let t = |i: usize| rc.chart.t(i);
    let slope = |j: usize| &(&t(j).pow(2) + &(&t(j) * &t(1))) + &t(1).pow(2);
    let slopes = (2..=5).all(|j| (&t(j).pow(3) - &t(1).pow(3)).exact_divide(&(&t(j) - &t(1))) == Some(slope(j)));
    let mut differences_factor = true;
    for i in 2..=5 {
        for j in i + 1..=5 {
            differences_factor &= &slope(j) - &slope(i) == &(&t(j) - &t(i)) * &(&(&t(j) + &t(i)) + &t(1));
        }
    }
    let num = rc.product(&rc.named_all(&["h25", "h125", "h34", "h134"])?);
    let den = rc.product(&rc.named_all(&["h35", "h135", "h24", "h124"])?);
    let numerator = num == &(&slope(2) - &slope(5)) * &(&slope(3) - &slope(4));
    let denominator = den == &(&slope(3) - &slope(5)) * &(&slope(2) - &slope(4));
    let pt: Vec<Rational> = [0, 1, 2, 3, 5].iter().map(|&x| int(x)).collect();
    let s: Vec<Rational> = (1..=5).map(|j| slope(j).evaluate(&pt)).collect();
    let cr = cross_ratio(&s[1], &s[2], &s[3], &s[4]);
    let numeric = cr.is_some() && cr == Some(num.evaluate(&pt) / den.evaluate(&pt));
    let mut images: Vec<Polynomial> = (1..=5).map(t).collect();
    images[2] = t(2);
    let degenerate = num.substitute(&images) == den.substitute(&images) && !num.substitute(&images).is_zero();
    Ok(CrossRatioReport { slopes, differences_factor, numerator, denominator, numeric, degenerate })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_points_lie_on_curve() {
        let (_, ts) = t_ring(2);
        assert!(CuspidalPoint::new(ts[0].clone()).on_curve());
        assert!(CuspidalPoint::new(&ts[0] * &ts[1]).on_curve());
    }

    #[test]
    fn determinant_identities() {
        let d3 = det3_identity();
        assert!(d3.holds);
        assert_eq!(d3.sign, 1);
        let d6 = det6_identity();
        assert!(d6.holds);
        assert_eq!(d6.sign, 1);
    }

    #[test]
    fn det3_numeric_and_degenerate() {
        let (_, ts) = t_ring(3);
        let c = cuspidal_config(&ts).unwrap();
        let v = det3(&c, 1, 2, 3).unwrap();
        assert_eq!(v.evaluate(&[int(0), int(1), int(2)]), int(6));
        assert_eq!(v.evaluate(&[int(4), int(4), int(-1)]), int(0));
    }

    #[test]
    fn restriction_degrees() {
        assert_eq!(restriction_degree(3, 0, 0).unwrap(), 0);
        assert_eq!(restriction_degree(1, 1, 1).unwrap(), 4);
        assert_eq!(restriction_degree(2, 0, 1).unwrap(), 3);
        assert_eq!(restriction_degree(0, 3, 0).unwrap(), 3);
        assert!(restriction_degree(1, 1, 0).is_err());
        let degs: BTreeSet<u32> = restriction_table().iter().map(|x| x.1).collect();
        assert_eq!(degs.into_iter().collect::<Vec<_>>(), vec![0, 1, 2, 3, 4, 5, 6, 7, 9]);
        assert_eq!(restriction_table().iter().filter(|x| x.1 == 3).count(), 2);
    }

    fn labels(rc: &RootChart, roots: &[usize]) -> Vec<String> {
        let mut v: Vec<String> = rc.multiset_key(roots).iter().map(|&r| rc.rs.label(r).to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn worked_dictionary_entries() {
        let s = CovariantStructure::parse(2, "|123456||127||347||567|").unwrap();
        let id = covariant_identity_check(2, &s).unwrap();
        assert!(id.holds);
        let rc = RootChart::new(2).unwrap();
        let mut want: Vec<String> =
            ["h12", "h34", "h56", "h127", "h347", "h567", "h7"].iter().map(|s| s.to_string()).collect();
        want.sort();
        assert_eq!(labels(&rc, &id.roots), want);

        let s = CovariantStructure::parse(3, "|123456||123||456|").unwrap();
        let id = covariant_identity_check(3, &s).unwrap();
        assert!(id.holds);
        let rc = RootChart::new(3).unwrap();
        let sys = rc.rs.subsystem_named(&["h12", "h23", "h45", "h56", "h123", "h"]).unwrap();
        let pos: Vec<usize> = rc.rs.positive_part(sys.mask).iter().collect();
        assert_eq!(rc.multiset_key(&id.roots), rc.multiset_key(&pos));

        let s = CovariantStructure::parse(5, "|123||234||341||412|").unwrap();
        let id = covariant_identity_check(5, &s).unwrap();
        assert!(id.holds && id.symbolic);
        let rc = RootChart::new(5).unwrap();
        let all: Vec<usize> = rc.rs.positive_part(rc.rs.all_mask()).iter().collect();
        assert_eq!(rc.multiset_key(&id.roots), rc.multiset_key(&all));
    }

    #[test]
    fn small_sweeps() {
        for d in [5, 4] {
            let (_, sweep) = covariant_identity_sweep(d).unwrap();
            assert!(sweep.passed(), "{:?}", sweep.failures);
        }
    }

    #[test]
    fn cross_ratio_identity() {
        assert!(cross_ratio_check().unwrap().passed());
    }
}
