//! Coble covariants as products of root forms, for marked Del Pezzo surfaces of degree 2..5.

mod cross;
mod relations;
mod zero_locus;

pub use cross::{
    cross, cross_of_4a1, cross_quintic_quotient, d5_plane_decomposition, fixed_d5, verify_cross_sum, CrossSumReport,
    PlaneDecomposition,
};
pub use relations::{
    central_action_check, d3_restriction_quintics, d4_relation_sweep, type_ab_split, verify_ab_relation,
    verify_d4_relation, verify_s3_annihilation, D4Sweep, QuinticOrbitReport,
};
pub use zero_locus::{nonsaturated_a7, zero_locus_check, ZeroLocusReport};

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::lattice::{CartanType, LatticeError, RootMask, RootSubsystem, RootSystem};
use crate::poly::{
    commutant_dimension, independent_rows, monomials_of_degree, rank, solve, PolyError, Polynomial, RatMatrix,
    Rational, SpanCoordinates, TChart,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CovariantError {
    #[error("degree {0} is outside 2..=5")]
    Degree(i64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("exact division failed")]
    Division,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Root system of Λ_{1,9-d} together with its t-chart and the root forms indexed like the roots.
#[derive(Clone, Debug)]
pub struct RootChart {
    pub rs: RootSystem,
    pub chart: TChart,
    forms: Vec<Polynomial>,
    by_form: BTreeMap<Polynomial, usize>,
}

impl RootChart {
    pub fn new(d: i64) -> Result<RootChart, CovariantError> {
        let rs = RootSystem::for_degree(d)?;
        let chart = TChart::new(*rs.lattice());
        let forms: Vec<Polynomial> = rs.roots().iter().map(|r| chart.root_form(r)).collect();
        let by_form = forms.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        Ok(RootChart { rs, chart, forms, by_form })
    }

    pub fn d(&self) -> usize {
        self.rs.lattice().d()
    }

    pub fn form(&self, i: usize) -> &Polynomial {
        &self.forms[i]
    }

    /// Root index whose form is exactly `p`.
    pub fn root_of_form(&self, p: &Polynomial) -> Option<usize> {
        self.by_form.get(p).copied()
    }

    pub fn product(&self, roots: &[usize]) -> Polynomial {
        let mut acc = Polynomial::one(self.chart.ring());
        for &i in roots {
            acc = &acc * &self.forms[i];
        }
        acc
    }

    /// Δ(S⁺) without sign normalization.
    pub fn delta(&self, m: RootMask) -> Polynomial {
        let pos: Vec<usize> = self.rs.positive_part(m).iter().collect();
        self.product(&pos)
    }

    /// Image of a root product under the reflection in root `s`.
    pub fn reflect_product(&self, s: usize, roots: &[usize]) -> Polynomial {
        let img: Vec<usize> = roots.iter().map(|&r| self.rs.reflect(s, r)).collect();
        self.product(&img)
    }

    pub fn named(&self, s: &str) -> Result<usize, CovariantError> {
        Ok(self.rs.named(s)?)
    }

    pub fn named_all(&self, names: &[&str]) -> Result<Vec<usize>, CovariantError> {
        names.iter().map(|s| self.named(s)).collect()
    }

    /// Sorted positive representatives, the sign-free key of a root product.
    pub fn multiset_key(&self, roots: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = roots.iter().map(|&r| self.rs.positive_index(r)).collect();
        v.sort_unstable();
        v
    }

    pub fn subsystems(&self, t: &str) -> Result<Vec<RootSubsystem>, CovariantError> {
        let t: CartanType = t.parse()?;
        Ok(self.rs.enumerate_subsystems(&t))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Subsystem(RootSubsystem),
    /// Word in the simple reflections applied to the seed.
    Orbit(Vec<usize>),
}

/// A covariant with `poly` equal to the product of the forms of `factors`, sign-canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covariant {
    pub poly: Polynomial,
    pub factors: Vec<usize>,
    pub provenance: Provenance,
}

impl Covariant {
    fn from_roots(rc: &RootChart, mut factors: Vec<usize>, provenance: Provenance) -> Result<Covariant, CovariantError> {
        let p = rc.product(&factors);
        let (poly, flipped) = p.canonical_sign_with_flag()?;
        if flipped {
            factors[0] = rc.rs.negate(factors[0]);
        }
        Ok(Covariant { poly, factors, provenance })
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn to_json(&self, rc: &RootChart) -> Value {
        let factors: Vec<String> = self.factors.iter().map(|&i| rc.rs.root(i).to_string()).collect();
        let prov = match &self.provenance {
            Provenance::Subsystem(s) => json!({
                "subsystem": s.cartan_type.to_string(),
                "positive_roots": s.positive_roots.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            }),
            Provenance::Orbit(w) => json!({ "word": w }),
        };
        json!({ "poly": self.poly.to_json(), "factors": factors, "provenance": prov })
    }
}

pub fn covariant_degree(d: i64) -> usize {
    (d * (9 - d) / 2) as usize
}

/// Canonically signed discriminant of a subsystem.
pub fn discriminant(rc: &RootChart, s: &RootSubsystem) -> Result<Polynomial, CovariantError> {
    Ok(rc.delta(s.mask).canonical_sign()?)
}

/// ε_1..ε_5 on the D5 chart, solved from ε_i − ε_{i+1} = h_{i,i+1} and ε_4 + ε_5 = h_123.
pub fn epsilon_forms(rc: &RootChart) -> Result<Vec<Polynomial>, CovariantError> {
    if rc.d() != 4 {
        return Err(CovariantError::Precondition("ε-forms live on the D5 chart".into()));
    }
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    let mut a: RatMatrix = vec![vec![zero.clone(); 5]; 5];
    let mut rhs: RatMatrix = Vec::new();
    let names = ["h12", "h23", "h34", "h45", "h123"];
    for (row, name) in names.iter().enumerate() {
        if row < 4 {
            a[row][row] = one.clone();
            a[row][row + 1] = -one.clone();
        } else {
            a[row][3] = one.clone();
            a[row][4] = one.clone();
        }
        let f = rc.form(rc.named(name)?);
        rhs.push((0..5).map(|j| f.coefficient(&crate::poly::Monomial::var(5, j))).collect());
    }
    let sol = solve(&a, &rhs)?;
    Ok(sol.iter().map(|row| Polynomial::linear(rc.chart.ring(), row)).collect())
}

/// Roots of the D5 seed ∏_{i∈ℤ/5}(ε_i² − ε_{i+1}²), each ε_i ± ε_{i+1} as a root index.
pub fn d4_seed_roots(rc: &RootChart) -> Result<Vec<usize>, CovariantError> {
    let eps = epsilon_forms(rc)?;
    let mut roots = Vec::new();
    for i in 0..5 {
        let j = (i + 1) % 5;
        for f in [&eps[i] - &eps[j], &eps[i] + &eps[j]] {
            let r = rc
                .root_of_form(&f)
                .ok_or_else(|| CovariantError::Precondition(format!("ε-form {f} is not a root form")))?;
            roots.push(r);
        }
    }
    let mut seed = Polynomial::one(rc.chart.ring());
    for i in 0..5 {
        let j = (i + 1) % 5;
        seed = &seed * &(&eps[i].pow(2) - &eps[j].pow(2));
    }
    if rc.product(&roots) != seed {
        return Err(CovariantError::Precondition("seed does not factor through the dictionary".into()));
    }
    Ok(roots)
}

/// Coble covariants with a chosen basis of their span.
#[derive(Clone, Debug)]
pub struct CobleSpace {
    pub d: usize,
    pub degree: usize,
    pub covariants: Vec<Covariant>,
    pub basis: Vec<usize>,
    pub dimension: usize,
}

pub fn coble_basis(d: i64) -> Result<(RootChart, CobleSpace), CovariantError> {
    if !(2..=5).contains(&d) {
        return Err(CovariantError::Degree(d));
    }
    let rc = RootChart::new(d)?;
    let space = coble_space(&rc)?;
    Ok((rc, space))
}

pub fn coble_space(rc: &RootChart) -> Result<CobleSpace, CovariantError> {
    let d = rc.d() as i64;
    let mut covs: Vec<Covariant> = Vec::new();
    match d {
        5 | 3 | 2 => {
            let t = match d {
                5 => "A4",
                3 => "3A2",
                _ => "7A1",
            };
            for s in rc.subsystems(t)? {
                let pos: Vec<usize> = rc.rs.positive_part(s.mask).iter().collect();
                covs.push(Covariant::from_roots(rc, pos, Provenance::Subsystem(s))?);
            }
        }
        4 => {
            let seed = d4_seed_roots(rc)?;
            let simple = rc.rs.simple().to_vec();
            let mut seen: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
            seen.insert(rc.multiset_key(&seed), Vec::new());
            let mut frontier = vec![(seed.clone(), Vec::<usize>::new())];
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for (roots, word) in &frontier {
                    for (g, &s) in simple.iter().enumerate() {
                        let img: Vec<usize> = roots.iter().map(|&r| rc.rs.reflect(s, r)).collect();
                        let key = rc.multiset_key(&img);
                        if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(key) {
                            let mut w = vec![g];
                            w.extend_from_slice(word);
                            e.insert(w.clone());
                            next.push((img, w));
                        }
                    }
                }
                frontier = next;
            }
            for (key, word) in seen {
                covs.push(Covariant::from_roots(rc, key, Provenance::Orbit(word))?);
            }
        }
        _ => return Err(CovariantError::Degree(d)),
    }
    let before = covs.len();
    covs.sort_by(|a, b| a.poly.cmp(&b.poly));
    covs.dedup_by(|a, b| a.poly == b.poly);
    if covs.len() != before {
        return Err(CovariantError::Precondition("distinct provenances gave proportional covariants".into()));
    }
    let degree = covariant_degree(d);
    let rows = coefficient_rows(rc, &covs.iter().map(|c| c.poly.clone()).collect::<Vec<_>>(), degree);
    let basis = independent_rows(&rows);
    let dimension = rank(&rows);
    if basis.len() != dimension {
        return Err(CovariantError::Precondition("basis selection disagrees with rank".into()));
    }
    Ok(CobleSpace { d: d as usize, degree, covariants: covs, basis, dimension })
}

/// Coefficient vectors in the full monomial basis of the given degree.
pub fn coefficient_rows(rc: &RootChart, polys: &[Polynomial], degree: usize) -> Vec<Vec<Rational>> {
    let mons = monomials_of_degree(rc.chart.n(), degree as u32);
    polys.iter().map(|p| p.coefficient_vector(&mons)).collect()
}

impl CobleSpace {
    pub fn polys(&self) -> Vec<Polynomial> {
        self.covariants.iter().map(|c| c.poly.clone()).collect()
    }

    /// Matrices of the simple reflections on the selected basis (column j = image of basis vector j).
    pub fn representation(&self, rc: &RootChart) -> Result<Vec<RatMatrix>, CovariantError> {
        let basis: Vec<&Covariant> = self.basis.iter().map(|&i| &self.covariants[i]).collect();
        let rows = coefficient_rows(rc, &basis.iter().map(|c| c.poly.clone()).collect::<Vec<_>>(), self.degree);
        let solver = SpanCoordinates::new(&rows)?;
        let k = basis.len();
        let mut gens = Vec::new();
        for &s in rc.rs.simple() {
            let mut m = vec![vec![Rational::from_integer(0.into()); k]; k];
            for (j, b) in basis.iter().enumerate() {
                let img = rc.reflect_product(s, &b.factors);
                let row = coefficient_rows(rc, &[img], self.degree).pop().unwrap();
                let c = solver
                    .coordinates(&row)
                    .ok_or_else(|| CovariantError::Precondition("span is not reflection-stable".into()))?;
                for (i, x) in c.into_iter().enumerate() {
                    m[i][j] = x;
                }
            }
            gens.push(m);
        }
        Ok(gens)
    }

    /// True iff every simple reflection permutes the covariants up to sign.
    pub fn is_orbit_stable(&self, rc: &RootChart) -> bool {
        let keys: std::collections::BTreeSet<Vec<usize>> =
            self.covariants.iter().map(|c| rc.multiset_key(&c.factors)).collect();
        self.covariants.iter().all(|c| {
            rc.rs.simple().iter().all(|&s| {
                let img: Vec<usize> = c.factors.iter().map(|&r| rc.rs.reflect(s, r)).collect();
                keys.contains(&rc.multiset_key(&img))
            })
        })
    }

    pub fn to_json(&self, rc: &RootChart) -> Value {
        json!({
            "d": self.d,
            "degree": self.degree,
            "count": self.covariants.len(),
            "dimension": self.dimension,
            "basis": self.basis,
            "covariants": self.covariants.iter().map(|c| c.to_json(rc)).collect::<Vec<_>>(),
        })
    }
}

/// Commutant dimension of the Weyl action on the span.
pub fn commutant_of_span(rc: &RootChart, space: &CobleSpace) -> Result<usize, CovariantError> {
    let gens = space.representation(rc)?;
    Ok(commutant_dimension(&gens)?)
}

/// Commutant dimension for d ∈ {2,3,4}; irreducible iff it is 1.
pub fn irreducibility_check(d: i64) -> Result<(usize, bool), CovariantError> {
    if !(2..=4).contains(&d) {
        return Err(CovariantError::Degree(d));
    }
    let (rc, space) = coble_basis(d)?;
    let c = commutant_of_span(&rc, &space)?;
    Ok((c, c == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_of_a1() {
        let rc = RootChart::new(3).unwrap();
        let s = rc.rs.subsystem_named(&["h12"]).unwrap();
        assert_eq!(discriminant(&rc, &s).unwrap(), &rc.chart.t(1) - &rc.chart.t(2));
    }

    #[test]
    fn epsilon_dictionary() {
        let rc = RootChart::new(4).unwrap();
        let eps = epsilon_forms(&rc).unwrap();
        assert_eq!(&eps[0] - &eps[2], rc.form(rc.named("h13").unwrap()).clone());
        assert_eq!(&eps[0] + &eps[1], rc.form(rc.named("h345").unwrap()).clone());
        assert_eq!(d4_seed_roots(&rc).unwrap().len(), 10);
    }

    #[test]
    fn small_spaces() {
        let (rc, s5) = coble_basis(5).unwrap();
        assert_eq!((s5.covariants.len(), s5.dimension, s5.degree), (1, 1, 10));
        assert!(s5.is_orbit_stable(&rc));
        let (rc, s4) = coble_basis(4).unwrap();
        assert_eq!((s4.covariants.len(), s4.dimension, s4.degree), (12, 6, 10));
        assert!(s4.is_orbit_stable(&rc));
        assert!(coble_basis(6).is_err());
    }
}
