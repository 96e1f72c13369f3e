use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::{PolyError, Rational};

/// Variable names plus the Laurent flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub vars: Vec<String>,
    pub laurent: bool,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], laurent: bool) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            laurent,
        })
    }

    /// Ring in `t1..tn`.
    pub fn t_vars(n: usize) -> Arc<PolyRing> {
        let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
        Self::new(&names, false)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.terms.iter().rev().cmp(other.terms.iter().rev())
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn from_int(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), Rational::one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "exponent arity mismatch");
        assert!(ring.laurent || m.is_nonnegative(), "negative exponent in a polynomial ring");
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear(ring: &Arc<PolyRing>, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(ring);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(ring.nvars(), i), c.clone());
            }
        }
        p
    }

    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            if m.nvars() != ring.nvars() {
                return Err(PolyError::Arity { expected: ring.nvars(), got: m.nvars() });
            }
            if !ring.laurent && !m.is_nonnegative() {
                return Err(PolyError::NegativeExponent);
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    pub fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.same_ring(other) {
            return Ok(());
        }
        if self.ring.laurent != other.ring.laurent {
            Err(PolyError::LaurentMix)
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e == 0))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Maximum total degree, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        let mut out = Self::zero(&self.ring);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.mul(m), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p` or `-p`, whichever has positive leading coefficient.
    pub fn canonical_sign(&self) -> Result<Polynomial, PolyError> {
        Ok(self.canonical_sign_with_flag()?.0)
    }

    /// Canonical representative and whether a sign flip was applied.
    pub fn canonical_sign_with_flag(&self) -> Result<(Polynomial, bool), PolyError> {
        match self.leading_term() {
            None => Err(PolyError::Zero),
            Some((_, c)) if c.is_negative() => Ok((-self, true)),
            Some(_) => Ok((self.clone(), false)),
        }
    }

    /// Exact quotient `self / q`, or `None` if `q` does not divide `self`.
    pub fn exact_divide(&self, q: &Polynomial) -> Option<Polynomial> {
        self.check_ring(q).ok()?;
        if q.is_zero() {
            return None;
        }
        if self.ring.laurent {
            return self.laurent_divide(q);
        }
        let (lm, lc) = q.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut r = self.clone();
        let mut quot = Self::zero(&self.ring);
        while let Some((rm, rc)) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let m = rm.div(&lm, false)?;
            let c = rc / &lc;
            r = &r - &q.mul_monomial(&m, &c);
            quot.add_term(m, c);
        }
        Some(quot)
    }

    fn laurent_divide(&self, q: &Polynomial) -> Option<Polynomial> {
        let n = self.ring.nvars();
        let plain = PolyRing::new(&self.ring.vars, false);
        let shift_p = min_exponents(self);
        let shift_q = min_exponents(q);
        let to_plain = |p: &Polynomial, s: &Monomial| -> Polynomial {
            let mut out = Polynomial::zero(&plain);
            for (m, c) in &p.terms {
                out.terms.insert(m.div(s, true).unwrap(), c.clone());
            }
            out
        };
        let pp = to_plain(self, &shift_p);
        let qq = to_plain(q, &shift_q);
        let quot = pp.exact_divide(&qq)?;
        let shift = Monomial(
            (0..n).map(|i| shift_p.0[i] - shift_q.0[i]).collect(),
        );
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in quot.terms {
            out.terms.insert(m.mul(&shift), c);
        }
        Some(out)
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Rename variables: variable `i` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone())).collect(),
        }
    }

    /// Move into `target`, where variable `i` of this ring becomes `map[i]` of the target.
    pub fn embed(&self, target: &Arc<PolyRing>, map: &[usize]) -> Polynomial {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(target.nvars());
            for (i, &x) in m.0.iter().enumerate() {
                e.0[map[i]] += x;
            }
            out.add_term(e, c.clone());
        }
        out
    }

    /// Substitute `images[i]` for variable `i`; images live in a common ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut cache: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(&p.ring)]).collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                assert!(e >= 0, "substitution into Laurent exponents is not supported");
                let e = e as usize;
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                if e > 0 {
                    term = &term * &cache[i][e];
                }
            }
            out = &out + &term;
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e >= 0 {
                    v *= num_traits::pow(point[i].clone(), e as usize);
                } else {
                    v /= num_traits::pow(point[i].clone(), (-e) as usize);
                }
            }
            acc += v;
        }
        acc
    }

    /// Coefficients along an ordered monomial list.
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Vec<Rational> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                serde_json::json!({
                    "e": m.0.iter().collect::<Vec<_>>(),
                    "c": [c.numer().to_string(), c.denom().to_string()],
                })
            })
            .collect();
        serde_json::json!({ "vars": self.ring.vars, "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value, laurent: bool) -> Result<Polynomial, PolyError> {
        let bad = |s: &str| PolyError::Json(s.to_string());
        let vars: Vec<String> = v
            .get("vars")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("missing vars"))?
            .iter()
            .map(|x| x.as_str().map(str::to_string).ok_or_else(|| bad("var name")))
            .collect::<Result<_, _>>()?;
        let ring = PolyRing::new(&vars, laurent);
        let mut terms = Vec::new();
        for t in v.get("terms").and_then(|x| x.as_array()).ok_or_else(|| bad("missing terms"))? {
            let e: Vec<i32> = t
                .get("e")
                .and_then(|x| x.as_array())
                .ok_or_else(|| bad("exponents"))?
                .iter()
                .map(|x| x.as_i64().map(|y| y as i32).ok_or_else(|| bad("exponent")))
                .collect::<Result<_, _>>()?;
            let c = t.get("c").and_then(|x| x.as_array()).ok_or_else(|| bad("coefficient"))?;
            if c.len() != 2 {
                return Err(bad("coefficient pair"));
            }
            let parse = |x: &serde_json::Value| -> Result<BigInt, PolyError> {
                x.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("integer string"))
            };
            let den = parse(&c[1])?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            terms.push((Monomial::from_slice(&e), Rational::new(parse(&c[0])?, den)));
        }
        Polynomial::from_terms(&ring, terms)
    }
}

fn min_exponents(p: &Polynomial) -> Monomial {
    let n = p.ring.nvars();
    let mut out = Monomial::one(n);
    let mut first = true;
    for m in p.terms.keys() {
        for i in 0..n {
            if first || m.0[i] < out.0[i] {
                out.0[i] = m.0[i];
            }
        }
        first = false;
    }
    out
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs).expect("polynomial ring mismatch");
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs).expect("polynomial ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs).expect("polynomial ring mismatch");
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Product of a list of polynomials in one ring.
pub fn product<'a>(ring: &Arc<PolyRing>, factors: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
    let mut acc = Polynomial::one(ring);
    for f in factors {
        acc = &acc * f;
    }
    acc
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut parts = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.ring.vars[i].clone()),
                    _ => parts.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            if parts.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", parts.join("*"))?;
            } else {
                write!(f, "{}*{}", a, parts.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    fn ring2() -> Arc<PolyRing> {
        PolyRing::t_vars(2)
    }

    #[test]
    fn difference_of_squares_divides() {
        let r = ring2();
        let t1 = Polynomial::var(&r, 0);
        let t2 = Polynomial::var(&r, 1);
        let p = &(&t1 * &t1) - &(&t2 * &t2);
        let q = &t1 - &t2;
        assert_eq!(p.exact_divide(&q).unwrap(), &t1 + &t2);
        assert!(t1.exact_divide(&t2).is_none());
    }

    #[test]
    fn canonical_sign_examples() {
        let r = ring2();
        let t1 = Polynomial::var(&r, 0);
        let t2 = Polynomial::var(&r, 1);
        let m = -&(&t1 * &t2);
        assert_eq!(m.canonical_sign().unwrap(), &t1 * &t2);
        let d = &t1 - &t2;
        assert_eq!(d.canonical_sign().unwrap(), d);
        assert!(Polynomial::zero(&r).canonical_sign().is_err());
    }

    #[test]
    fn laurent_division_by_monomial_content() {
        let r = PolyRing::new(&["b", "a"], true);
        let b = Polynomial::var(&r, 0);
        let a = Polynomial::var(&r, 1);
        let p = &(&b - &a) * &a;
        let q = &b - &a;
        assert_eq!(p.exact_divide(&q).unwrap(), a.clone());
        let inv_b = Polynomial::monomial(&r, Monomial::from_slice(&[-1, 0]), rat(1, 1));
        assert_eq!(a.exact_divide(&b).unwrap(), &a * &inv_b);
    }

    #[test]
    fn json_round_trip() {
        let r = ring2();
        let p = &Polynomial::var(&r, 0).scale(&rat(-3, 7)) + &Polynomial::from_int(&r, 5);
        let back = Polynomial::from_json(&p.to_json(), false).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn mixing_laurent_and_plain_is_an_error() {
        let a = Polynomial::var(&PolyRing::new(&["x"], false), 0);
        let b = Polynomial::var(&PolyRing::new(&["x"], true), 0);
        assert_eq!(a.check_ring(&b), Err(PolyError::LaurentMix));
    }
}
