use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::poly::{
    coordinates, determinant, int, inverse, kernel, mat_mul, monomials_of_degree, rank, rat, solve, LinearSubstitution,
    Monomial, PolyRing, Polynomial, RatMatrix, Rational, TChart,
};

use super::CuspidalError;

/// Σ_i X_i ∂/∂t_i with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    ring: Arc<PolyRing>,
    coeffs: Vec<Polynomial>,
}

impl PolyVectorField {
    pub fn new(ring: &Arc<PolyRing>, coeffs: Vec<Polynomial>) -> Result<PolyVectorField, CuspidalError> {
        if coeffs.len() != ring.nvars() {
            return Err(CuspidalError::Precondition(format!(
                "{} coefficients for {} variables",
                coeffs.len(),
                ring.nvars()
            )));
        }
        for c in &coeffs {
            if c.ring() != ring {
                return Err(crate::poly::PolyError::RingMismatch.into());
            }
        }
        Ok(PolyVectorField { ring: ring.clone(), coeffs })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> PolyVectorField {
        PolyVectorField { ring: ring.clone(), coeffs: vec![Polynomial::zero(ring); ring.nvars()] }
    }

    /// Σ t_i ∂/∂t_i.
    pub fn euler(ring: &Arc<PolyRing>) -> PolyVectorField {
        PolyVectorField { ring: ring.clone(), coeffs: (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect() }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// Common degree of the coefficients, if homogeneous and nonzero.
    pub fn coefficient_degree(&self) -> Option<i64> {
        let mut deg = None;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            if !c.is_homogeneous() {
                return None;
            }
            match deg {
                None => deg = c.degree(),
                Some(d) if Some(d) != c.degree() => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn scale(&self, c: &Rational) -> PolyVectorField {
        self.map(|p| p.scale(c))
    }

    pub fn times(&self, f: &Polynomial) -> PolyVectorField {
        self.map(|p| p * f)
    }

    fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyVectorField {
        PolyVectorField { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn zip(&self, o: &PolyVectorField, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> PolyVectorField {
        PolyVectorField { ring: self.ring.clone(), coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, o: &PolyVectorField) -> PolyVectorField {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &PolyVectorField) -> PolyVectorField {
        self.zip(o, |a, b| a - b)
    }

    /// X(f) = Σ X_i ∂f/∂t_i.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&self.ring);
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &(c * &f.derivative(i));
        }
        acc
    }

    pub fn evaluate(&self, point: &[Rational]) -> Vec<Rational> {
        self.coeffs.iter().map(|c| c.evaluate(point)).collect()
    }

    /// Coefficients over (component, monomial of the given degree), component-major.
    pub fn coefficient_vector(&self, degree: u32) -> Vec<Rational> {
        let mons = monomials_of_degree(self.n(), degree);
        self.coeffs.iter().flat_map(|c| c.coefficient_vector(&mons)).collect()
    }

    pub fn from_vector(ring: &Arc<PolyRing>, degree: u32, v: &[Rational]) -> PolyVectorField {
        let mons = monomials_of_degree(ring.nvars(), degree);
        let coeffs = v
            .chunks(mons.len())
            .map(|chunk| {
                let terms: Vec<_> = mons.iter().cloned().zip(chunk.iter().cloned()).filter(|(_, c)| *c != int(0)).collect();
                Polynomial::from_terms(ring, terms).expect("monomials match the ring")
            })
            .collect();
        PolyVectorField { ring: ring.clone(), coeffs }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "variables": (1..=self.n()).map(|i| format!("t{i}")).collect::<Vec<_>>(),
            "coefficients": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// [X, Y]_i = Σ_j X_j ∂_j Y_i − Y_j ∂_j X_i.
pub fn lie_bracket(x: &PolyVectorField, y: &PolyVectorField) -> PolyVectorField {
    let coeffs = (0..x.n()).map(|i| &x.apply(&y.coeffs[i]) - &y.apply(&x.coeffs[i])).collect();
    PolyVectorField { ring: x.ring.clone(), coeffs }
}

/// The field t ↦ M·X(M⁻¹t) for the substitution t_i ↦ Σ_j M_ij t_j; X is invariant iff this returns X.
pub fn pushforward(x: &PolyVectorField, sub: &LinearSubstitution) -> Result<PolyVectorField, CuspidalError> {
    let inv = sub.inverse()?;
    let moved: Vec<Polynomial> = x.coeffs.iter().map(|c| inv.apply(c)).collect();
    let m = sub.matrix();
    let coeffs = (0..x.n())
        .map(|i| {
            let mut acc = Polynomial::zero(&x.ring);
            for (j, p) in moved.iter().enumerate() {
                if m[i][j] != int(0) {
                    acc = &acc + &p.scale(&m[i][j]);
                }
            }
            acc
        })
        .collect();
    Ok(PolyVectorField { ring: x.ring.clone(), coeffs })
}

/// e_k(xs).
pub fn elementary_symmetric(xs: &[Polynomial], k: usize) -> Polynomial {
    let ring = xs[0].ring();
    let mut e = vec![Polynomial::zero(ring); k + 1];
    e[0] = Polynomial::one(ring);
    for x in xs {
        for j in (1..=k).rev() {
            e[j] = &e[j] + &(&e[j - 1] * x);
        }
    }
    e[k].clone()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XDerivation {
    /// (a2, c1, a1, a0, b1, b0) with c2 = 1 as σ-polynomials.
    pub coefficients: Vec<(String, Polynomial)>,
    pub vanishes_at_roots: bool,
    pub unique: bool,
    pub numeric_solve_agrees: bool,
    pub homogeneous_degree: Option<i64>,
}

impl XDerivation {
    pub fn passed(&self) -> bool {
        self.vanishes_at_roots && self.unique && self.numeric_solve_agrees && self.homogeneous_degree == Some(4)
    }
}

fn sigmas(ts: &[Polynomial]) -> Vec<Polynomial> {
    (0..=ts.len()).map(|k| elementary_symmetric(ts, k)).collect()
}

/// Solves 2c2t⁶ + 3a2t⁵ + 2c1t⁴ + 3a1t³ + 3a0t² − b1t − b0 = 0 at t_1..t_6 with c2 = 1,
/// and builds X̂ = Σ (a0 + a1t_i + c1t_i² + a2t_i³ + t_i⁴) ∂/∂t_i.
pub fn derive_vector_field_x() -> Result<(PolyVectorField, XDerivation), CuspidalError> {
    let chart = TChart::for_degree(3)?;
    let ring = chart.ring().clone();
    let ts: Vec<Polynomial> = (1..=6).map(|i| chart.t(i)).collect();
    let s = sigmas(&ts);
    // 2∏(t − t_i) = Σ_k 2(−1)^k σ_k t^{6−k}; match coefficients of the sextic
    let sign = |k: usize| if k.is_multiple_of(2) { int(2) } else { int(-2) };
    let a2 = s[1].scale(&(sign(1) / int(3)));
    let c1 = s[2].scale(&(sign(2) / int(2)));
    let a1 = s[3].scale(&(sign(3) / int(3)));
    let a0 = s[4].scale(&(sign(4) / int(3)));
    let b1 = s[5].scale(&(sign(5) / int(-1)));
    let b0 = s[6].scale(&(sign(6) / int(-1)));
    let unknowns = [&a2, &c1, &a1, &a0, &b1, &b0];
    let weights = [int(3), int(2), int(3), int(3), int(-1), int(-1)];
    let powers = [5u32, 4, 3, 2, 1, 0];
    let sextic_at = |t: &Polynomial| {
        let mut acc = t.pow(6).scale(&int(2));
        for ((u, w), &p) in unknowns.iter().zip(&weights).zip(&powers) {
            acc = &acc + &(&t.pow(p) * u).scale(w);
        }
        acc
    };
    let vanishes_at_roots = ts.iter().all(|t| sextic_at(t).is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pt: Vec<Rational> = (0..6).map(|_| int(rng.gen_range(-30..=30))).collect();
    let m: RatMatrix = pt
        .iter()
        .map(|t| powers.iter().zip(&weights).map(|(&p, w)| w * t.pow(p as i32)).collect())
        .collect();
    let unique = determinant(&m) != int(0);
    let rhs: RatMatrix = pt.iter().map(|t| vec![-(int(2) * t.pow(6))]).collect();
    let numeric_solve_agrees =
        unique && solve(&m, &rhs).is_ok_and(|x| x.iter().zip(&unknowns).all(|(row, u)| row[0] == u.evaluate(&pt)));
    let coeffs: Vec<Polynomial> = ts
        .iter()
        .map(|t| &(&(&(&a0 + &(&a1 * t)) + &(&c1 * &t.pow(2))) + &(&a2 * &t.pow(3))) + &t.pow(4))
        .collect();
    let x = PolyVectorField::new(&ring, coeffs)?;
    let names = ["a2", "c1", "a1", "a0", "b1", "b0"];
    let report = XDerivation {
        coefficients: names.iter().zip(unknowns).map(|(n, u)| (n.to_string(), u.clone())).collect(),
        vanishes_at_roots,
        unique,
        numeric_solve_agrees,
        homogeneous_degree: x.coefficient_degree(),
    };
    Ok((x, report))
}

fn x_field(ts: &[Polynomial], s: &[Polynomial], shift: usize) -> Vec<Polynomial> {
    let two3 = rat(2, 3);
    ts.iter()
        .map(|t| {
            let terms = [
                s[4 - shift].scale(&two3),
                (&s[3 - shift] * t).scale(&-two3.clone()),
                &s[2 - shift] * &t.pow(2),
                (&s[1 - shift] * &t.pow(3)).scale(&-two3.clone()),
                if shift == 0 { t.pow(4) } else { Polynomial::zero(t.ring()) },
            ];
            terms.iter().fold(Polynomial::zero(t.ring()), |acc, x| &acc + x)
        })
        .collect()
}

/// Σ (⅔σ4 − ⅔σ3t_i + σ2t_i² − ⅔σ1t_i³ + t_i⁴) ∂/∂t_i on the E6 chart.
pub fn x_hat() -> Result<PolyVectorField, CuspidalError> {
    let chart = TChart::for_degree(3)?;
    let ts: Vec<Polynomial> = (1..=6).map(|i| chart.t(i)).collect();
    PolyVectorField::new(chart.ring(), x_field(&ts, &sigmas(&ts), 0))
}

/// (X̂2, X̂3) on the D5 chart.
pub fn d5_fields() -> Result<(PolyVectorField, PolyVectorField), CuspidalError> {
    let chart = TChart::for_degree(4)?;
    let ts: Vec<Polynomial> = (1..=5).map(|i| chart.t(i)).collect();
    let mut s = sigmas(&ts);
    s.push(Polynomial::zero(chart.ring()));
    // X̂2 uses σ_{k−1} in place of σ_k and ends at −⅔t³
    let mut s_shift = vec![Polynomial::one(chart.ring())];
    s_shift.extend(s.iter().cloned());
    let x2: Vec<Polynomial> = ts
        .iter()
        .map(|t| {
            let two3 = rat(2, 3);
            let terms = [
                s[3].scale(&two3),
                (&s[2] * t).scale(&-two3.clone()),
                &s[1] * &t.pow(2),
                t.pow(3).scale(&-two3),
            ];
            terms.iter().fold(Polynomial::zero(t.ring()), |acc, x| &acc + x)
        })
        .collect();
    let x3 = x_field(&ts, &s, 0);
    Ok((PolyVectorField::new(chart.ring(), x2)?, PolyVectorField::new(chart.ring(), x3)?))
}

/// X̂ restricted to its first five components equals X̂3 + t6·X̂2.
fn specialization_holds() -> Result<bool, CuspidalError> {
    let x = x_hat()?;
    let (x2, x3) = d5_fields()?;
    let ring6 = x.ring().clone();
    let map = [0, 1, 2, 3, 4];
    let t6 = Polynomial::var(&ring6, 5);
    Ok((0..5).all(|i| {
        let rhs = &x3.coeffs[i].embed(&ring6, &map) + &(&t6 * &x2.coeffs[i].embed(&ring6, &map));
        x.coeffs[i] == rhs
    }))
}

/// Orbit sums under permutations of the variables, as coefficient vectors over `monomials_of_degree`.
fn symmetric_polynomial_vectors(n: usize, degree: u32) -> Vec<Vec<Rational>> {
    let mons = monomials_of_degree(n, degree);
    let mut groups: BTreeMap<Vec<i32>, Vec<usize>> = BTreeMap::new();
    for (k, m) in mons.iter().enumerate() {
        let mut key: Vec<i32> = m.0.to_vec();
        key.sort_unstable();
        groups.entry(key).or_default().push(k);
    }
    groups
        .values()
        .map(|idx| {
            let mut v = vec![int(0); mons.len()];
            for &k in idx {
                v[k] = int(1);
            }
            v
        })
        .collect()
}

fn symmetric_field_vectors(n: usize, degree: u32) -> Vec<Vec<Rational>> {
    let mons = monomials_of_degree(n, degree);
    let mut groups: BTreeMap<(i32, Vec<i32>), Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        for (k, m) in mons.iter().enumerate() {
            let mut rest: Vec<i32> = (0..n).filter(|&j| j != i).map(|j| m.0[j]).collect();
            rest.sort_unstable();
            groups.entry((m.0[i], rest)).or_default().push(i * mons.len() + k);
        }
    }
    groups
        .values()
        .map(|idx| {
            let mut v = vec![int(0); n * mons.len()];
            for &k in idx {
                v[k] = int(1);
            }
            v
        })
        .collect()
}

/// Combinations of `basis` fixed by every operator, where `defect(v)` is op(v) − v for each op, stacked.
fn fixed_combinations(
    basis: &[Vec<Rational>],
    defect: impl Fn(&[Rational]) -> Vec<Vec<Rational>>,
) -> Vec<Vec<Rational>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let cols: Vec<Vec<Vec<Rational>>> = basis.iter().map(|v| defect(v)).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for op in 0..cols[0].len() {
        for r in 0..cols[0][op].len() {
            let row: Vec<Rational> = cols.iter().map(|c| c[op][r].clone()).collect();
            if row.iter().any(|x| *x != int(0)) {
                rows.push(row);
            }
        }
    }
    kernel(&rows, basis.len())
        .iter()
        .map(|combo| {
            let mut v = vec![int(0); basis[0].len()];
            for (c, b) in combo.iter().zip(basis) {
                if *c != int(0) {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += c * y;
                    }
                }
            }
            v
        })
        .collect()
}

/// Basis of the W-invariant polynomials of a given degree on the chart of Λ_{1,9−d}.
pub fn invariant_polynomial_basis(d: i64, degree: u32) -> Result<Vec<Polynomial>, CuspidalError> {
    if degree > 8 {
        return Err(CuspidalError::Precondition(format!("degree {degree} > 8")));
    }
    let chart = TChart::for_degree(d)?;
    let ring = chart.ring().clone();
    let mons = monomials_of_degree(chart.n(), degree);
    let to_poly = |v: &[Rational]| {
        let terms: Vec<_> = mons.iter().cloned().zip(v.iter().cloned()).filter(|(_, c)| *c != int(0)).collect();
        Polynomial::from_terms(&ring, terms).expect("monomials match the ring")
    };
    let subs = chart.simple_substitutions();
    let basis = symmetric_polynomial_vectors(chart.n(), degree);
    let fixed = fixed_combinations(&basis, |v| {
        let p = to_poly(v);
        subs.iter().map(|s| (&s.apply(&p) - &p).coefficient_vector(&mons)).collect()
    });
    Ok(fixed.iter().map(|v| to_poly(v)).collect())
}

/// Basis of W-invariant vector fields with coefficients of the given degree.
pub fn invariant_field_basis(d: i64, coeff_degree: u32) -> Result<Vec<PolyVectorField>, CuspidalError> {
    let chart = TChart::for_degree(d)?;
    let ring = chart.ring().clone();
    let subs = chart.simple_substitutions();
    let basis = symmetric_field_vectors(chart.n(), coeff_degree);
    let fixed = fixed_combinations(&basis, |v| {
        let x = PolyVectorField::from_vector(&ring, coeff_degree, v);
        subs.iter()
            .map(|s| pushforward(&x, s).expect("reflections invert").sub(&x).coefficient_vector(coeff_degree))
            .collect()
    });
    Ok(fixed.iter().map(|v| PolyVectorField::from_vector(&ring, coeff_degree, v)).collect())
}

/// Group average of `p` over W, enumerated as matrices; refuses groups larger than W(E6).
pub fn reynolds_average(d: i64, p: &Polynomial) -> Result<(usize, Polynomial), CuspidalError> {
    if d < 3 {
        return Err(CuspidalError::Precondition("group too large for explicit averaging".into()));
    }
    let chart = TChart::for_degree(d)?;
    let gens: Vec<RatMatrix> = chart.simple_substitutions().iter().map(|s| s.matrix().clone()).collect();
    let id = crate::poly::identity(chart.n());
    let mut seen: HashSet<RatMatrix> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(g) = queue.pop_front() {
        for s in &gens {
            let h = mat_mul(&g, s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    let order = seen.len();
    let mut acc = Polynomial::zero(chart.ring());
    for g in &seen {
        acc = &acc + &LinearSubstitution::new(chart.ring(), g.clone()).apply(p);
    }
    Ok((order, acc.scale(&(int(1) / int(order as i64)))))
}

/// Symmetric B with f2 = tᵀBt.
pub fn quadratic_form_matrix(f2: &Polynomial) -> Result<RatMatrix, CuspidalError> {
    let n = f2.ring().nvars();
    if !f2.is_homogeneous() || f2.degree() != Some(2) {
        return Err(CuspidalError::Precondition("not a quadratic form".into()));
    }
    let mut b = vec![vec![int(0); n]; n];
    for i in 0..n {
        for j in 0..n {
            let m = Monomial::var(n, i).mul(&Monomial::var(n, j));
            let c = f2.coefficient(&m);
            b[i][j] = if i == j { c } else { c / int(2) };
        }
    }
    Ok(b)
}

/// (∇f)_i = Σ_j (B⁻¹)_ij ∂f/∂t_j with B the matrix of f2.
pub fn gradient_field(f: &Polynomial, f2: &Polynomial) -> Result<PolyVectorField, CuspidalError> {
    let b = quadratic_form_matrix(f2)?;
    let binv = inverse(&b).map_err(|_| CuspidalError::Precondition("degenerate quadratic form".into()))?;
    let n = b.len();
    let partials: Vec<Polynomial> = (0..n).map(|j| f.derivative(j)).collect();
    let coeffs = (0..n)
        .map(|i| {
            (0..n).fold(Polynomial::zero(f.ring()), |acc, j| {
                if binv[i][j] == int(0) {
                    acc
                } else {
                    &acc + &partials[j].scale(&binv[i][j])
                }
            })
        })
        .collect();
    PolyVectorField::new(f.ring(), coeffs)
}

/// Coordinates of `target` in the span of homogeneous fields of one coefficient degree.
pub fn field_coordinates(target: &PolyVectorField, basis: &[PolyVectorField]) -> Option<Vec<Rational>> {
    let deg = target.coefficient_degree()? as u32;
    let rows: Vec<Vec<Rational>> = basis.iter().map(|b| b.coefficient_vector(deg)).collect();
    coordinates(&rows, &target.coefficient_vector(deg))
}

fn fixed_by_all(x: &PolyVectorField, subs: &[LinearSubstitution]) -> bool {
    subs.iter().all(|s| pushforward(x, s).is_ok_and(|y| y == *x))
}

/// Y is a polynomial multiple of the Euler field.
pub fn is_euler_multiple(y: &PolyVectorField) -> bool {
    let c = &y.coeffs;
    let t: Vec<Polynomial> = (0..y.n()).map(|i| Polynomial::var(&y.ring, i)).collect();
    (0..c.len()).all(|i| (i + 1..c.len()).all(|j| (&c[i] * &t[j] - &c[j] * &t[i]).is_zero()))
}

/// X − c·Y = g·E for a rational c and polynomial g.
pub fn proportional_modulo_euler(x: &PolyVectorField, y: &PolyVectorField) -> Option<(Rational, Polynomial)> {
    let deg = x.coefficient_degree()? as u32;
    let ring = x.ring.clone();
    let e = PolyVectorField::euler(&ring);
    let mons = monomials_of_degree(x.n(), deg - 1);
    let mut basis = vec![y.clone()];
    basis.extend(mons.iter().map(|m| e.times(&Polynomial::monomial(&ring, m.clone(), int(1)))));
    let c = field_coordinates(x, &basis)?;
    let terms: Vec<_> = mons.into_iter().zip(c[1..].iter().cloned()).filter(|(_, v)| *v != int(0)).collect();
    Some((c[0].clone(), Polynomial::from_terms(&ring, terms).ok()?))
}

fn sample_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..n).map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=5))).collect()).collect()
}

fn pointwise_rank(fields: &[&PolyVectorField], pt: &[Rational]) -> usize {
    let rows: Vec<Vec<Rational>> = fields.iter().map(|f| f.evaluate(pt)).collect();
    rank(&rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E6FieldReport {
    pub derivation: XDerivation,
    pub formula_matches: bool,
    /// X̂ itself fixed by the six simple reflections.
    pub strictly_invariant: bool,
    /// Each reflection moves X̂ by a multiple of the Euler field.
    pub invariant_modulo_euler: bool,
    pub invariant_quadratics: usize,
    pub invariant_quintics: usize,
    pub invariant_fields: usize,
    /// X̂ = c·∇f5.
    pub gradient_coefficient: Option<Rational>,
    /// X̂ = c·∇f5 + g·E.
    pub gradient_modulo_euler: Option<(Rational, Polynomial)>,
    pub euler_bracket: bool,
}

impl E6FieldReport {
    /// Statements that hold on P(h): everything up to Euler multiples.
    pub fn passed(&self) -> bool {
        self.derivation.passed()
            && self.formula_matches
            && self.invariant_modulo_euler
            && self.invariant_quadratics == 1
            && self.invariant_quintics == 1
            && self.invariant_fields == 1
            && self.gradient_modulo_euler.is_some()
            && self.euler_bracket
    }

    /// Literal invariance and proportionality of the field on h.
    pub fn strict_passed(&self) -> bool {
        self.passed() && self.strictly_invariant && self.gradient_coefficient.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "derivation": self.derivation.coefficients.iter().map(|(n, p)| (n.clone(), p.to_string())).collect::<BTreeMap<_, _>>(),
            "derivation_passed": self.derivation.passed(),
            "formula_matches": self.formula_matches,
            "strictly_invariant": self.strictly_invariant,
            "invariant_modulo_euler": self.invariant_modulo_euler,
            "invariant_dimensions": {"f2": self.invariant_quadratics, "f5": self.invariant_quintics, "fields": self.invariant_fields},
            "gradient_coefficient": self.gradient_coefficient.as_ref().map(|c| c.to_string()),
            "gradient_modulo_euler": self.gradient_modulo_euler.as_ref().map(|(c, g)| json!({"c": c.to_string(), "euler_multiplier": g.to_string()})),
            "euler_bracket": self.euler_bracket,
        })
    }
}

pub fn e6_field_check() -> Result<E6FieldReport, CuspidalError> {
    let (derived, derivation) = derive_vector_field_x()?;
    let x = x_hat()?;
    let chart = TChart::for_degree(3)?;
    let subs = chart.simple_substitutions();
    let f2 = invariant_polynomial_basis(3, 2)?;
    let f5 = invariant_polynomial_basis(3, 5)?;
    let fields = invariant_field_basis(3, 4)?;
    let grad = match (f2.first(), f5.first()) {
        (Some(q), Some(f)) => Some(gradient_field(f, q)?),
        _ => None,
    };
    let euler = PolyVectorField::euler(chart.ring());
    let mut invariant_modulo_euler = true;
    for s in &subs {
        invariant_modulo_euler &= is_euler_multiple(&pushforward(&x, s)?.sub(&x));
    }
    Ok(E6FieldReport {
        derivation,
        formula_matches: derived == x,
        strictly_invariant: fixed_by_all(&x, &subs),
        invariant_modulo_euler,
        invariant_quadratics: f2.len(),
        invariant_quintics: f5.len(),
        invariant_fields: fields.len(),
        gradient_coefficient: grad.as_ref().and_then(|g| field_coordinates(&x, std::slice::from_ref(g))).map(|c| c[0].clone()),
        gradient_modulo_euler: grad.as_ref().and_then(|g| proportional_modulo_euler(&x, g)),
        euler_bracket: lie_bracket(&euler, &x) == x.scale(&int(3)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D5FieldReport {
    pub specialization: bool,
    pub x2_fixed: bool,
    pub x3_fixed: bool,
    pub x2_fixed_modulo_euler: bool,
    /// Each reflection moves X̂3 into span{X̂3, X̂2, E} at every sample point.
    pub x3_fixed_modulo_plane: bool,
    pub invariant_fields_degree2: usize,
    pub invariant_fields_degree3: usize,
    /// X̂3 = c·∇f5.
    pub x3_coefficient: Option<Rational>,
    /// X̂2 = a·∇f4 + b·f2·Euler.
    pub x2_coefficients: Option<(Rational, Rational)>,
    /// span{X̂2, X̂3, E} = span{∇f4, ∇f5, E} at every sample point.
    pub same_distribution: bool,
    pub rank: RankReport,
}

impl D5FieldReport {
    /// Statements about the plane distribution on P(h).
    pub fn passed(&self) -> bool {
        self.specialization
            && self.x2_fixed_modulo_euler
            && self.x3_fixed_modulo_plane
            && self.invariant_fields_degree2 == 2
            && self.invariant_fields_degree3 == 1
            && self.same_distribution
            && self.rank.passed()
    }

    /// Literal invariance and decomposition of the two fields on h.
    pub fn strict_passed(&self) -> bool {
        self.passed()
            && self.x2_fixed
            && self.x3_fixed
            && self.x3_coefficient.is_some()
            && self.x2_coefficients.is_some()
            && self.rank.strict_passed()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "specialization": self.specialization,
            "x2_fixed": self.x2_fixed,
            "x3_fixed": self.x3_fixed,
            "x2_fixed_modulo_euler": self.x2_fixed_modulo_euler,
            "x3_fixed_modulo_plane": self.x3_fixed_modulo_plane,
            "invariant_fields": {"degree2": self.invariant_fields_degree2, "degree3": self.invariant_fields_degree3},
            "x3_coefficient": self.x3_coefficient.as_ref().map(|c| c.to_string()),
            "x2_coefficients": self.x2_coefficients.as_ref().map(|(a, b)| [a.to_string(), b.to_string()]),
            "same_distribution": self.same_distribution,
            "rank": self.rank.to_json(),
        })
    }
}

pub fn d5_field_check(samples: usize, seed: u64) -> Result<D5FieldReport, CuspidalError> {
    let chart = TChart::for_degree(4)?;
    let subs = chart.simple_substitutions();
    let (x2, x3) = d5_fields()?;
    let f2 = invariant_polynomial_basis(4, 2)?;
    let q = f2.first().ok_or_else(|| CuspidalError::Precondition("no invariant quadratic".into()))?;
    let f4 = invariant_polynomial_basis(4, 4)?;
    let f5 = invariant_polynomial_basis(4, 5)?;
    let q2 = q.pow(2);
    let f4 = f4
        .iter()
        .find(|g| crate::poly::span_dimension(&[q2.clone(), (*g).clone()]).ok() == Some(2))
        .ok_or_else(|| CuspidalError::Precondition("no quartic invariant besides f2²".into()))?;
    let f5 = f5.first().ok_or_else(|| CuspidalError::Precondition("no invariant quintic".into()))?;
    let euler = PolyVectorField::euler(chart.ring());
    let g4 = gradient_field(f4, q)?;
    let g5 = gradient_field(f5, q)?;
    let x2_coefficients =
        field_coordinates(&x2, &[g4.clone(), euler.times(q)]).map(|c| (c[0].clone(), c[1].clone()));
    let x3_coefficient = field_coordinates(&x3, std::slice::from_ref(&g5)).map(|c| c[0].clone());
    let mut x2_fixed_modulo_euler = true;
    let mut moved_x3 = Vec::new();
    for s in &subs {
        x2_fixed_modulo_euler &= is_euler_multiple(&pushforward(&x2, s)?.sub(&x2));
        moved_x3.push(pushforward(&x3, s)?);
    }
    let points = sample_points(chart.n(), samples, seed ^ 0x5eed);
    let x3_fixed_modulo_plane = points.iter().all(|p| {
        let base = pointwise_rank(&[&x2, &x3, &euler], p);
        moved_x3.iter().all(|y| pointwise_rank(&[&x2, &x3, &euler, y], p) == base)
    });
    let same_distribution = points.iter().all(|p| {
        let a = pointwise_rank(&[&x2, &x3, &euler], p);
        a == 3 && pointwise_rank(&[&g4, &g5, &euler], p) == 3 && pointwise_rank(&[&x2, &x3, &euler, &g4, &g5], p) == 3
    });
    Ok(D5FieldReport {
        specialization: specialization_holds()?,
        x2_fixed: fixed_by_all(&x2, &subs),
        x3_fixed: fixed_by_all(&x3, &subs),
        x2_fixed_modulo_euler,
        x3_fixed_modulo_plane,
        invariant_fields_degree2: invariant_field_basis(4, 3)?.len(),
        invariant_fields_degree3: invariant_field_basis(4, 4)?.len(),
        x3_coefficient,
        x2_coefficients,
        same_distribution,
        rank: distribution_rank_check(&x2, &x3, samples, seed),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub points: usize,
    pub rejected: usize,
    /// rank{X(p), Y(p), [X, Y](p)}.
    pub ranks: Vec<usize>,
    /// rank{X(p), Y(p), E(p), [X, Y](p)}.
    pub ranks_with_euler: Vec<usize>,
    pub bracket_nonzero: bool,
}

impl RankReport {
    /// The plane distribution spanned by X, Y and E is involutive at every sample.
    pub fn passed(&self) -> bool {
        self.points > 0 && self.ranks_with_euler.len() == self.points && self.ranks_with_euler.iter().all(|&r| r <= 3)
    }

    /// [X, Y] in span{X, Y} at every sample.
    pub fn strict_passed(&self) -> bool {
        self.points > 0 && self.ranks.len() == self.points && self.ranks.iter().all(|&r| r <= 2)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "points": self.points,
            "rejected": self.rejected,
            "ranks": self.ranks,
            "ranks_with_euler": self.ranks_with_euler,
            "bracket_nonzero": self.bracket_nonzero,
        })
    }
}

fn minors_vanish(a: &[Rational], b: &[Rational]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] - &a[j] * &b[i] == int(0) {
                return true;
            }
        }
    }
    false
}

/// Ranks at seeded rational points where no 2×2 minor of (X(p), Y(p)) vanishes.
pub fn distribution_rank_check(x: &PolyVectorField, y: &PolyVectorField, count: usize, seed: u64) -> RankReport {
    let bracket = lie_bracket(x, y);
    let euler = PolyVectorField::euler(&x.ring);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = Vec::new();
    let mut ranks_with_euler = Vec::new();
    let mut rejected = 0;
    while ranks.len() < count && rejected < 100 * count.max(1) {
        let pt: Vec<Rational> = (0..x.n()).map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=5))).collect();
        let (a, b) = (x.evaluate(&pt), y.evaluate(&pt));
        if minors_vanish(&a, &b) {
            rejected += 1;
            continue;
        }
        let c = bracket.evaluate(&pt);
        ranks.push(rank(&[a.clone(), b.clone(), c.clone()]));
        ranks_with_euler.push(rank(&[a, b, euler.evaluate(&pt), c]));
    }
    RankReport { points: ranks.len(), rejected, ranks, ranks_with_euler, bracket_nonzero: !bracket.is_zero() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_is_natural() {
        let chart = TChart::for_degree(3).unwrap();
        let e = PolyVectorField::euler(chart.ring());
        for s in chart.simple_substitutions() {
            assert_eq!(pushforward(&e, &s).unwrap(), e);
        }
        assert!(lie_bracket(&e, &e).is_zero());
    }

    #[test]
    fn gradient_of_f2_is_twice_euler() {
        let f2 = invariant_polynomial_basis(3, 2).unwrap();
        assert_eq!(f2.len(), 1);
        let g = gradient_field(&f2[0], &f2[0]).unwrap();
        assert_eq!(g, PolyVectorField::euler(f2[0].ring()).scale(&int(2)));
    }

    #[test]
    fn invariant_dimensions() {
        assert_eq!(invariant_polynomial_basis(3, 5).unwrap().len(), 1);
        assert_eq!(invariant_polynomial_basis(4, 3).unwrap().len(), 0);
        assert_eq!(invariant_polynomial_basis(4, 4).unwrap().len(), 2);
        assert!(invariant_polynomial_basis(4, 9).is_err());
    }

    #[test]
    fn reynolds_matches_kernel_on_e6_quadratics() {
        let f2 = invariant_polynomial_basis(3, 2).unwrap();
        let chart = TChart::for_degree(3).unwrap();
        let (order, avg) = reynolds_average(3, &chart.t(1).pow(2)).unwrap();
        assert_eq!(order, 51840);
        assert!(!avg.is_zero());
        assert_eq!(crate::poly::span_dimension(&[avg, f2[0].clone()]).unwrap(), 1);
    }

    #[test]
    fn x_derivation() {
        let (x, rep) = derive_vector_field_x().unwrap();
        assert!(rep.passed());
        assert_eq!(x, x_hat().unwrap());
    }

    #[test]
    fn bracket_of_field_with_itself() {
        let (x2, _) = d5_fields().unwrap();
        assert!(lie_bracket(&x2, &x2).is_zero());
    }

    #[test]
    fn e6_field_up_to_euler() {
        let rep = e6_field_check().unwrap();
        assert!(rep.passed());
        assert!(!rep.strictly_invariant);
        assert_eq!(rep.gradient_coefficient, None);
        let (c, g) = rep.gradient_modulo_euler.unwrap();
        assert_eq!(c, rat(11, 9));
        // g = σ1³/27 + p3/9
        let chart = TChart::for_degree(3).unwrap();
        let ts: Vec<Polynomial> = (1..=6).map(|i| chart.t(i)).collect();
        let s1 = elementary_symmetric(&ts, 1);
        let p3 = ts.iter().fold(Polynomial::zero(chart.ring()), |a, t| &a + &t.pow(3));
        assert_eq!(g, &s1.pow(3).scale(&rat(1, 27)) + &p3.scale(&rat(1, 9)));
    }

    #[test]
    fn d5_distribution() {
        let rep = d5_field_check(8, 3).unwrap();
        assert!(rep.passed());
        assert!(!rep.x2_fixed && !rep.x3_fixed);
        assert!(rep.x3_coefficient.is_none() && rep.x2_coefficients.is_none());
        assert!(rep.rank.ranks.iter().all(|&r| r == 3));
    }
}
