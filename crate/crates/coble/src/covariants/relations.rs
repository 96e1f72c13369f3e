use std::collections::BTreeSet;

use itertools::Itertools;

use crate::lattice::{s7_orbit_split, weyl_orbit, RootMask};
use crate::poly::{rank, LinearSubstitution, Polynomial};

use super::{coefficient_rows, epsilon_forms, CobleSpace, Covariant, CovariantError, Provenance, RootChart};

/// f = s(f) + s′(f) for the 4A1 discriminant f and reflections in roots `s`, `s2`.
pub fn verify_d4_relation(rc: &RootChart, s_o: RootMask, s: usize, s2: usize) -> bool {
    let pos: Vec<usize> = rc.rs.positive_part(s_o).iter().collect();
    let f = rc.product(&pos);
    f == &rc.reflect_product(s, &pos) + &rc.reflect_product(s2, &pos)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct D4Sweep {
    pub d4_count: usize,
    pub four_a1_count: usize,
    pub noncommuting_checked: usize,
    pub noncommuting_failures: usize,
    pub commuting_checked: usize,
    pub commuting_holds: usize,
    pub planes_of_rank_two: usize,
}

impl D4Sweep {
    pub fn passed(&self) -> bool {
        self.d4_count > 0
            && self.four_a1_count == 3 * self.d4_count
            && self.noncommuting_failures == 0
            && self.commuting_holds == 0
            && self.planes_of_rank_two == self.d4_count
    }
}

/// Every D4, every 4A1 inside it, every pair of reflections of W(S) − W(S_o).
pub fn d4_relation_sweep(rc: &RootChart) -> Result<D4Sweep, CovariantError> {
    let mut out = D4Sweep::default();
    let four_a1 = "4A1".parse()?;
    for d4 in rc.subsystems("D4")? {
        out.d4_count += 1;
        let mut discs = Vec::new();
        for s_o in rc.rs.enumerate_subsystems_in(&four_a1, d4.mask) {
            out.four_a1_count += 1;
            let outside: Vec<usize> =
                rc.rs.positive_part(d4.mask).iter().filter(|&r| !s_o.mask.contains(r)).collect();
            for (a, b) in outside.iter().tuple_combinations() {
                let holds = verify_d4_relation(rc, s_o.mask, *a, *b);
                if rc.rs.pairing(*a, *b) != 0 {
                    out.noncommuting_checked += 1;
                    out.noncommuting_failures += usize::from(!holds);
                } else {
                    out.commuting_checked += 1;
                    out.commuting_holds += usize::from(holds);
                }
            }
            discs.push(rc.delta(s_o.mask));
        }
        if rank(&coefficient_rows(rc, &discs, 4)) == 2 {
            out.planes_of_rank_two += 1;
        }
    }
    Ok(out)
}

/// Type (A) and type (B) covariants of E7, split by S7-orbit.
pub fn type_ab_split(rc: &RootChart, space: &CobleSpace) -> Result<(Vec<Covariant>, Vec<Covariant>), CovariantError> {
    let systems: Vec<_> = space
        .covariants
        .iter()
        .filter_map(|c| match &c.provenance {
            Provenance::Subsystem(s) => Some(s.clone()),
            Provenance::Orbit(_) => None,
        })
        .collect();
    let split = s7_orbit_split(&rc.rs, &systems)?;
    let pick = |list: &[crate::lattice::RootSubsystem]| -> Vec<Covariant> {
        space
            .covariants
            .iter()
            .filter(|c| matches!(&c.provenance, Provenance::Subsystem(s) if list.contains(s)))
            .cloned()
            .collect()
    };
    Ok((pick(&split.type_a), pick(&split.type_b)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbReport {
    pub holds: bool,
    pub identity_control_holds: bool,
    /// h127h347h567 times both sides: type (A) covariant = B − (34)B with both terms type (B).
    pub difference_of_type_b: bool,
}

fn transposition(n: usize, i: usize, j: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(i - 1, j - 1);
    p
}

/// h7h12h34h56 = (1 − (34)) h246h235h145h136 on the E7 chart.
pub fn verify_ab_relation(rc: &RootChart, type_b: &[Covariant]) -> Result<AbReport, CovariantError> {
    if rc.d() != 2 {
        return Err(CovariantError::Precondition("the (AB) relation lives on the E7 chart".into()));
    }
    let n = rc.chart.n();
    let swap = transposition(n, 3, 4);
    let lhs = rc.product(&rc.named_all(&["h7", "h12", "h34", "h56"])?);
    let g = rc.product(&rc.named_all(&["h246", "h235", "h145", "h136"])?);
    let holds = lhs == &g - &g.permute_vars(&swap);
    let identity_control_holds = lhs.is_zero();
    let extra = rc.product(&rc.named_all(&["h127", "h347", "h567"])?);
    let a = &lhs * &extra;
    let b1 = &g * &extra;
    let b2 = b1.permute_vars(&swap);
    let b_polys: BTreeSet<Polynomial> = type_b.iter().map(|c| c.poly.clone()).collect();
    let in_b = |p: &Polynomial| p.canonical_sign().map(|q| b_polys.contains(&q)).unwrap_or(false);
    let a_canon = a.canonical_sign()?;
    let a_known = rc.product(&rc.named_all(&["h7", "h12", "h34", "h56", "h127", "h347", "h567"])?).canonical_sign()?;
    let difference_of_type_b = a == &b1 - &b2 && in_b(&b1) && in_b(&b2) && a_canon == a_known;
    Ok(AbReport { holds, identity_control_holds, difference_of_type_b })
}

/// Σ_{w ∈ S(i,j,k)} sign(w)·w(G) = 0, with w permuting t_i, t_j, t_k (1-based).
pub fn verify_s3_annihilation(g: &Polynomial, ijk: [usize; 3]) -> bool {
    let n = g.ring().nvars();
    let mut sum = Polynomial::zero(g.ring());
    for p in (0..3).permutations(3) {
        let inversions = (0..3).tuple_combinations().filter(|&(a, b)| p[a] > p[b]).count();
        let mut perm: Vec<usize> = (0..n).collect();
        for a in 0..3 {
            perm[ijk[a] - 1] = ijk[p[a]] - 1;
        }
        let img = g.permute_vars(&perm);
        sum = if inversions % 2 == 0 { &sum + &img } else { &sum - &img };
    }
    sum.is_zero()
}

/// t ↦ −t sends every covariant to its negative.
pub fn central_action_check(rc: &RootChart, space: &CobleSpace) -> bool {
    let neg = LinearSubstitution::negation(rc.chart.ring());
    space.covariants.iter().all(|c| neg.apply(&c.poly) == -&c.poly)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuinticOrbitReport {
    pub family1: usize,
    pub family2: usize,
    pub orbit_size: usize,
    pub all_in_orbit: bool,
    pub canonical_distinct: bool,
}

/// Both quintic families on the D5 ε-chart lie in a single W(D5)-orbit.
pub fn d3_restriction_quintics(rc: &RootChart) -> Result<QuinticOrbitReport, CovariantError> {
    let eps = epsilon_forms(rc)?;
    let minus = |a: usize, b: usize| &eps[a] - &eps[b];
    let plus = |a: usize, b: usize| &eps[a] + &eps[b];
    let lookup = |forms: Vec<Polynomial>| -> Result<Vec<usize>, CovariantError> {
        forms
            .iter()
            .map(|f| rc.root_of_form(f).ok_or_else(|| CovariantError::Precondition(format!("{f} is not a root form"))))
            .collect()
    };
    let mut fam1: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut fam2: BTreeSet<Vec<usize>> = BTreeSet::new();
    for p in (0..5).permutations(5) {
        let (i, j, k, l, m) = (p[0], p[1], p[2], p[3], p[4]);
        let f1 = lookup(vec![minus(i, j), minus(j, k), minus(i, k), minus(l, m), plus(l, m)])?;
        let f2 = lookup(vec![minus(i, j), plus(j, k), plus(i, k), minus(l, m), plus(l, m)])?;
        fam1.insert(rc.multiset_key(&f1));
        fam2.insert(rc.multiset_key(&f2));
    }
    let seed = lookup(vec![minus(0, 1), minus(1, 2), minus(0, 2), minus(3, 4), plus(3, 4)])?;
    let simple = rc.rs.simple().to_vec();
    let orbit = weyl_orbit(rc.multiset_key(&seed), simple.len(), |g, key: &Vec<usize>| {
        let img: Vec<usize> = key.iter().map(|&r| rc.rs.reflect(simple[g], r)).collect();
        rc.multiset_key(&img)
    });
    let orbit_set: BTreeSet<Vec<usize>> = orbit.iter().cloned().collect();
    let all_in_orbit = fam1.iter().chain(fam2.iter()).all(|k| orbit_set.contains(k));
    let canon: BTreeSet<Polynomial> =
        orbit.iter().map(|k| rc.product(k).canonical_sign()).collect::<Result<_, _>>()?;
    Ok(QuinticOrbitReport {
        family1: fam1.len(),
        family2: fam2.len(),
        orbit_size: orbit.len(),
        all_in_orbit,
        canonical_distinct: canon.len() == orbit.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_negative_control() {
        let rc = RootChart::new(2).unwrap();
        let f = rc.form(rc.named("h12").unwrap()).clone();
        assert!(verify_s3_annihilation(&f, [1, 2, 3]));
        let g = &rc.chart.t(1).pow(2) * &rc.chart.t(2);
        assert!(!verify_s3_annihilation(&g, [1, 2, 3]));
    }

    #[test]
    fn d4_relation_on_d5() {
        let rc = RootChart::new(4).unwrap();
        let sweep = d4_relation_sweep(&rc).unwrap();
        assert_eq!(sweep.d4_count, 5);
        assert!(sweep.passed(), "{sweep:?}");
    }
}
