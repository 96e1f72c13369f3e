use std::collections::BTreeMap;
use std::sync::Arc;

use crate::poly::{Monomial, PolyRing, Polynomial, Rational};

use super::{det3, det6, enumerate_structures, evaluate, ConfigError, CovariantStructure, PointConfig};

fn b_ring() -> Arc<PolyRing> {
    PolyRing::new(&["b0", "b1", "b2", "al0", "al1", "al2"], true)
}

fn delta_ring() -> Arc<PolyRing> {
    PolyRing::new(&["al0", "al1", "al2", "delta"], true)
}

/// p0 = [0:1:a0], p1 = [a1:0:1], p2 = [1:a2:0] and q_i likewise with b_i, where a_i = α_i b_i.
/// Labels (p0, p1, p2, q0, q1, q2) = (1, …, 6).
pub fn naruki_config() -> PointConfig {
    let r = b_ring();
    let b = |i: usize| Polynomial::var(&r, i);
    let a = |i: usize| &Polynomial::var(&r, 3 + i) * &b(i);
    let z = Polynomial::zero(&r);
    let o = Polynomial::one(&r);
    let pts = vec![
        [z.clone(), o.clone(), a(0)],
        [a(1), z.clone(), o.clone()],
        [o.clone(), a(2), z.clone()],
        [z.clone(), o.clone(), b(0)],
        [b(1), z.clone(), o.clone()],
        [o.clone(), b(2), z],
    ];
    PointConfig::new(&r, pts).expect("Naruki points are nonzero")
}

/// The displayed determinant identities of the Naruki configuration.
pub fn naruki_identities() -> Result<Vec<(String, bool)>, ConfigError> {
    let c = naruki_config();
    let r = c.ring().clone();
    let b = |i: usize| Polynomial::var(&r, i % 3);
    let a = |i: usize| &Polynomial::var(&r, 3 + i % 3) * &b(i);
    let one = Polynomial::one(&r);
    let p = |i: usize| i % 3 + 1;
    let q = |i: usize| i % 3 + 4;
    let mut out = Vec::new();
    let a012 = &(&a(0) * &a(1)) * &a(2);
    out.push(("|p0p1p2| = a0a1a2 + 1".to_string(), det3(&c, 1, 2, 3)? == &a012 + &one));
    for i in 0..3 {
        let next = det3(&c, p(i), q(i), p(i + 1))? == &(&b(i) - &a(i)) * &a(i + 1);
        out.push((format!("|p{i}q{i}p{}| = (b{i} - a{i})a{}", (i + 1) % 3, (i + 1) % 3), next));
        let prev = det3(&c, p(i), q(i), p(i + 2))? == &b(i) - &a(i);
        out.push((format!("|p{i}q{i}p{}| = b{i} - a{i}", (i + 2) % 3), prev));
    }
    let d6 = det6(&c, [1, 2, 3, 4, 5, 6])?;
    let b012 = &(&b(0) * &b(1)) * &b(2);
    let expect = &(&(&(&b(0) - &a(0)) * &(&b(1) - &a(1))) * &(&b(2) - &a(2))) * &(&one - &(&a012 * &b012));
    out.push(("|p0p1p2q0q1q2| = ±(b0-a0)(b1-a1)(b2-a2)(1-a0a1a2b0b1b2)".to_string(), d6 == expect || d6 == -&expect));
    Ok(out)
}

/// The 40 expressions in α0, α1, α2, δ, keyed by family label.
pub fn naruki_table() -> Vec<(String, Polynomial)> {
    table_with_family2_delta_power(3)
}

/// The table with family 2 carrying δ² as displayed, instead of the evaluated δ³.
pub fn naruki_printed_table() -> Vec<(String, Polynomial)> {
    table_with_family2_delta_power(2)
}

fn table_with_family2_delta_power(k: u32) -> Vec<(String, Polynomial)> {
    let r = delta_ring();
    let al = |i: usize| Polynomial::var(&r, i % 3);
    let dl = Polynomial::var(&r, 3);
    let one = Polynomial::one(&r);
    let om = |p: Polynomial| &one - &p;
    let prod = |v: Vec<Polynomial>| v.iter().fold(one.clone(), |acc, x| &acc * x);
    let a012 = prod(vec![al(0), al(1), al(2)]);
    let d2 = &dl * &dl;
    let dk = dl.pow(k);
    let mut t: Vec<(String, Polynomial)> = Vec::new();
    t.push(("1".into(), prod(vec![dl.clone(), om(al(0)), om(al(1)), om(al(2))])));
    t.push(("2".into(), prod(vec![a012.clone(), dk, om(al(0)), om(al(1)), om(al(2))])));
    t.push(("3".into(), prod(vec![om(&al(0) * &dl), om(&al(1) * &dl), om(&al(2) * &dl)])));
    t.push(("4".into(), prod(vec![a012.clone(), dl.clone(), om(&al(0) * &dl), om(&al(1) * &dl), om(&al(2) * &dl)])));
    let pair = |i: usize, j: usize| prod(vec![al(i), al(j), dl.clone()]);
    t.push(("5".into(), prod(vec![om(pair(0, 1)), om(pair(1, 2)), om(pair(2, 0))])));
    t.push(("6".into(), prod(vec![dl.clone(), om(pair(0, 1)), om(pair(1, 2)), om(pair(2, 0))])));
    for i in 0..3 {
        let (m, p) = (i + 2, i + 1);
        t.push((format!("7_{i}"), prod(vec![om(&al(m) * &dl), om(&al(p) * &dl), om(&a012 * &dl)])));
        t.push((format!("8_{i}"), prod(vec![al(i), dl.clone(), om(al(m)), om(al(p)), om(&a012 * &d2)])));
        t.push((format!("9_{i}"), prod(vec![dl.clone(), om(al(m)), om(al(p)), om(&a012 * &d2)])));
        t.push((
            format!("10_{i}"),
            prod(vec![al(m), al(p), dl.clone(), om(dl.clone()), om(pair(i, m)), om(pair(i, p))]),
        ));
        t.push((format!("11_{i}"), prod(vec![om(dl.clone()), om(pair(i, p)), om(pair(i, m))])));
        t.push((format!("12_{i}"), prod(vec![al(i), dl.clone(), om(&al(p) * &dl), om(&al(m) * &dl), om(&a012 * &dl)])));
    }
    t.push(("13".into(), prod(vec![om(dl.clone()), om(&a012 * &dl), om(&a012 * &d2)])));
    for i in 0..3 {
        let (m, p) = (i + 2, i + 1);
        t.push((format!("14_{i}"), prod(vec![al(m), al(p), dl.clone(), om(dl.clone()), om(al(i)), om(&al(i) * &dl)])));
        t.push((format!("15_{i}"), prod(vec![om(&al(i) * &dl), om(pair(m, p)), om(&a012 * &d2)])));
        t.push((format!("16_{i}"), prod(vec![dl.clone(), om(al(i)), om(pair(m, p)), om(&a012 * &dl)])));
    }
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
        t.push((format!("17_{i}{j}{k}"), prod(vec![al(i), dl.clone(), om(al(j)), om(&al(k) * &dl), om(pair(j, k))])));
    }
    t
}

/// Rewrite a b-balanced polynomial through b0b1b2 = −δ; `None` if some monomial is unbalanced.
fn to_delta(p: &Polynomial, target: &Arc<PolyRing>) -> Option<Polynomial> {
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        let e = &m.0;
        if e[0] != e[1] || e[1] != e[2] {
            return None;
        }
        let k = e[0];
        let c: Rational = if k.rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
        terms.push((Monomial::from_slice(&[e[3], e[4], e[5], k]), c));
    }
    Polynomial::from_terms(target, terms).ok()
}

#[derive(Clone, Debug, Default)]
pub struct NarukiReport {
    pub evaluated: usize,
    pub division_failures: Vec<String>,
    pub residual_b: Vec<String>,
    /// Structure and the table entry it matches up to sign.
    pub assignments: Vec<(String, String)>,
    pub unmatched_structures: Vec<String>,
    pub unmatched_entries: Vec<String>,
    /// Worked examples: structure, computed expression, matching table entry.
    pub worked: Vec<(String, String, Option<String>)>,
}

impl NarukiReport {
    pub fn passed(&self) -> bool {
        self.evaluated == 40
            && self.division_failures.is_empty()
            && self.residual_b.is_empty()
            && self.assignments.len() == 40
            && self.unmatched_structures.is_empty()
            && self.unmatched_entries.is_empty()
            && self.worked.iter().all(|w| w.2.is_some())
    }
}

/// Value of a structure after dividing by (b0−a0)(b1−a1)(b2−a2) and substituting δ.
pub fn naruki_value(s: &CovariantStructure) -> Result<Option<Polynomial>, ConfigError> {
    let c = naruki_config();
    let r = c.ring().clone();
    let v = evaluate(&c, s)?;
    let mut q = v;
    for i in 0..3 {
        let b = Polynomial::var(&r, i);
        let a = &Polynomial::var(&r, 3 + i) * &b;
        match q.exact_divide(&(&b - &a)) {
            Some(x) => q = x,
            None => return Ok(None),
        }
    }
    Ok(to_delta(&q, &delta_ring()))
}

pub fn naruki_table_check() -> Result<NarukiReport, ConfigError> {
    naruki_check_against(&naruki_table())
}

/// Match the 40 evaluated structures against a table of (label, expression).
pub fn naruki_check_against(table: &[(String, Polynomial)]) -> Result<NarukiReport, ConfigError> {
    let structures = enumerate_structures(3)?;
    let mut by_poly: BTreeMap<Polynomial, Vec<String>> = BTreeMap::new();
    for (name, p) in table {
        by_poly.entry(p.canonical_sign()?).or_default().push(name.clone());
    }
    let mut used: BTreeMap<String, bool> = table.iter().map(|(n, _)| (n.clone(), false)).collect();
    let mut rep = NarukiReport::default();
    let c = naruki_config();
    let r = c.ring().clone();
    for s in &structures {
        rep.evaluated += 1;
        let v = evaluate(&c, s)?;
        let mut q = Some(v);
        for i in 0..3 {
            let b = Polynomial::var(&r, i);
            let a = &Polynomial::var(&r, 3 + i) * &b;
            q = q.and_then(|x| x.exact_divide(&(&b - &a)));
        }
        let Some(q) = q else {
            rep.division_failures.push(s.to_string());
            continue;
        };
        let Some(p) = to_delta(&q, &delta_ring()) else {
            rep.residual_b.push(s.to_string());
            continue;
        };
        let key = p.canonical_sign()?;
        let hit = by_poly.get(&key).and_then(|names| names.iter().find(|n| !used[*n]).cloned());
        match hit {
            Some(n) => {
                used.insert(n.clone(), true);
                rep.assignments.push((s.to_string(), n));
            }
            None => rep.unmatched_structures.push(format!("{s} -> {p}")),
        }
    }
    rep.unmatched_entries = used.iter().filter(|(_, u)| !**u).map(|(n, _)| n.clone()).collect();
    for text in ["|123456||142||536|", "|142||146||256||236||153||453|"] {
        let s = CovariantStructure::parse(3, text)?;
        let v = naruki_value(&s)?;
        let name = v.as_ref().and_then(|p| p.canonical_sign().ok()).and_then(|k| by_poly.get(&k)).map(|n| n.join("/"));
        rep.worked.push((text.to_string(), v.map(|p| p.to_string()).unwrap_or_else(|| "-".into()), name));
    }
    Ok(rep)
}
