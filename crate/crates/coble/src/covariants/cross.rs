use crate::lattice::{CartanType, RootMask, RootSubsystem};
use crate::poly::{rank, Polynomial};

use super::{coefficient_rows, CovariantError, RootChart};

/// (1 − s_α)Δ(S⁺) for a 3A2-system S and a root α meeting every summand non-orthogonally.
pub fn cross(rc: &RootChart, s: &RootSubsystem, alpha: usize) -> Result<Polynomial, CovariantError> {
    if s.cartan_type != "3A2".parse::<CartanType>()? {
        return Err(CovariantError::Precondition(format!("{} is not of type 3A2", s.cartan_type)));
    }
    let comps = rc.rs.components(s.mask);
    for c in &comps {
        if c.iter().all(|r| rc.rs.pairing(alpha, r) == 0) {
            return Err(CovariantError::Precondition("α is orthogonal to a summand".into()));
        }
    }
    let orth = s.mask.intersect(rc.rs.orthogonal_mask(alpha));
    let three_a1 = orth.len() == 6
        && rc.rs.cartan_type_of(orth) == "3A1".parse()?
        && comps.iter().all(|c| !c.intersect(orth).is_empty());
    if !three_a1 {
        return Err(CovariantError::Precondition("roots of S orthogonal to α do not form a transversal 3A1".into()));
    }
    let pos: Vec<usize> = rc.rs.positive_part(s.mask).iter().collect();
    Ok(&rc.product(&pos) - &rc.reflect_product(alpha, &pos))
}

/// Divide by the four root forms one at a time and check W(D4)-invariance of the quotient.
pub fn cross_quintic_quotient(
    rc: &RootChart,
    cross: &Polynomial,
    roots: [usize; 4],
) -> Result<(Polynomial, bool), CovariantError> {
    for a in 0..4 {
        for b in a + 1..4 {
            if rc.rs.pairing(roots[a], roots[b]) != 0 {
                return Err(CovariantError::Precondition("divisor roots are not pairwise orthogonal".into()));
            }
        }
    }
    let mut q = cross.clone();
    for &r in &roots {
        q = q.exact_divide(rc.form(r)).ok_or(CovariantError::Division)?;
    }
    let d4 = rc.rs.roots_in_span(&roots);
    let invariant = rc.rs.simple_of(d4).iter().all(|&s| {
        let sub = rc.chart.reflection_substitution(rc.rs.root(s));
        sub.apply(&q) == q
    });
    Ok((q, invariant))
}

/// The cross attached to a 4A1-subsystem, with a flag recording that all four choices of α agree up to sign.
pub fn cross_of_4a1(
    rc: &RootChart,
    systems_3a2: &[RootSubsystem],
    four: RootMask,
) -> Result<(Polynomial, bool), CovariantError> {
    let pos: Vec<usize> = rc.rs.positive_part(four).iter().collect();
    if pos.len() != 4 {
        return Err(CovariantError::Precondition("not a 4A1-subsystem".into()));
    }
    let mut crosses = Vec::new();
    for (k, &alpha) in pos.iter().enumerate() {
        let triple: Vec<usize> = pos.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &r)| r).collect();
        let s = systems_3a2
            .iter()
            .find(|s| triple.iter().all(|&r| s.mask.contains(r)))
            .ok_or_else(|| CovariantError::Precondition("no 3A2 contains the divisor triple".into()))?;
        crosses.push(cross(rc, s, alpha)?.canonical_sign()?);
    }
    let agree = crosses.iter().all(|c| *c == crosses[0]);
    Ok((crosses.swap_remove(0), agree))
}

/// The D5-subsystem of E6 fixing e6.
pub fn fixed_d5(rc: &RootChart) -> RootMask {
    let n = rc.rs.lattice().n();
    let mut m = RootMask::default();
    for (i, r) in rc.rs.roots().iter().enumerate() {
        if r.coords()[n] == 0 {
            m.insert(i);
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct CrossSumReport {
    pub intersection_type: CartanType,
    /// The three roots β_i completing S ∩ R_o to a 4A1 inside R_o.
    pub reflections: Vec<usize>,
    pub holds: bool,
}

/// 2Δ(S⁺) = Σ_i (1 − s_{β_i})Δ(S⁺) with β_i built from S ∩ R_o.
pub fn verify_cross_sum(rc: &RootChart, s: &RootSubsystem, r_o: RootMask) -> Result<CrossSumReport, CovariantError> {
    let inter = s.mask.intersect(r_o);
    let t = rc.rs.cartan_type_of(inter);
    if t != "2A1+A2".parse()? {
        return Err(CovariantError::Precondition(format!("S ∩ R_o has type {t}")));
    }
    let comps = rc.rs.components(inter);
    let a1: Vec<usize> = comps
        .iter()
        .filter(|c| c.len() == 2)
        .map(|c| rc.rs.positive_part(*c).iter().next().unwrap())
        .collect();
    let a2 = comps.iter().find(|c| c.len() == 6).unwrap();
    let mut betas = Vec::new();
    for rho in rc.rs.positive_part(*a2).iter() {
        let mut perp = r_o;
        for &g in a1.iter().chain(std::iter::once(&rho)) {
            perp = perp.intersect(rc.rs.orthogonal_mask(g));
        }
        let pos: Vec<usize> = rc.rs.positive_part(perp).iter().collect();
        if pos.len() != 1 {
            return Err(CovariantError::Precondition("3A1 does not extend uniquely to a 4A1 in R_o".into()));
        }
        betas.push(pos[0]);
    }
    let pos: Vec<usize> = rc.rs.positive_part(s.mask).iter().collect();
    let delta = rc.product(&pos);
    let mut sum = Polynomial::zero(rc.chart.ring());
    for &b in &betas {
        sum = &sum + &(&delta - &rc.reflect_product(b, &pos));
    }
    let two = Polynomial::from_int(rc.chart.ring(), 2);
    Ok(CrossSumReport { intersection_type: t, reflections: betas, holds: &two * &delta == sum })
}

#[derive(Clone, Debug)]
pub struct PlaneDecomposition {
    /// Per D4 of R_o: its three crosses.
    pub planes: Vec<Vec<Polynomial>>,
    pub plane_ranks: Vec<usize>,
    /// Per plane: whether some signed sum of its three crosses vanishes.
    pub signed_sums_vanish: Vec<bool>,
    pub pairwise_ranks: Vec<usize>,
    pub four_plane_ranks: Vec<usize>,
    pub total_rank: usize,
    pub four_choices_agree: bool,
}

impl PlaneDecomposition {
    pub fn is_direct_sum(&self) -> bool {
        self.planes.len() == 5
            && self.plane_ranks.iter().all(|&r| r == 2)
            && self.signed_sums_vanish.iter().all(|&b| b)
            && self.pairwise_ranks.iter().all(|&r| r == 4)
            && self.four_plane_ranks.iter().all(|&r| r == 8)
            && self.total_rank == 10
    }
}

pub fn d5_plane_decomposition(rc: &RootChart, r_o: RootMask) -> Result<PlaneDecomposition, CovariantError> {
    if rc.rs.cartan_type_of(r_o) != "D5".parse()? {
        return Err(CovariantError::Precondition("R_o is not of type D5".into()));
    }
    let systems = rc.subsystems("3A2")?;
    let d4s = rc.rs.enumerate_subsystems_in(&"D4".parse()?, r_o);
    let mut planes = Vec::new();
    let mut agree = true;
    for d4 in &d4s {
        let mut plane = Vec::new();
        for four in rc.rs.enumerate_subsystems_in(&"4A1".parse()?, d4.mask) {
            let (c, ok) = cross_of_4a1(rc, &systems, four.mask)?;
            agree &= ok;
            plane.push(c);
        }
        planes.push(plane);
    }
    let rk = |ps: Vec<&Polynomial>| rank(&coefficient_rows(rc, &ps.into_iter().cloned().collect::<Vec<_>>(), 9));
    let plane_ranks = planes.iter().map(|p| rk(p.iter().collect())).collect();
    let signed_sums_vanish = planes
        .iter()
        .map(|p| {
            p.len() == 3
                && [(1, 1), (1, -1), (-1, 1), (-1, -1)].iter().any(|&(a, b)| {
                    let s = &(&p[0] + &p[1].scale(&crate::poly::int(a))) + &p[2].scale(&crate::poly::int(b));
                    s.is_zero()
                })
        })
        .collect();
    let mut pairwise_ranks = Vec::new();
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            pairwise_ranks.push(rk(planes[i].iter().chain(planes[j].iter()).collect()));
        }
    }
    let four_plane_ranks = (0..planes.len())
        .map(|skip| rk(planes.iter().enumerate().filter(|&(i, _)| i != skip).flat_map(|(_, p)| p.iter()).collect()))
        .collect();
    let total_rank = rk(planes.iter().flatten().collect());
    Ok(PlaneDecomposition {
        planes,
        plane_ranks,
        signed_sums_vanish,
        pairwise_ranks,
        four_plane_ranks,
        total_rank,
        four_choices_agree: agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_rejects_root_of_s() {
        let rc = RootChart::new(3).unwrap();
        let s = rc.rs.subsystem_named(&["h12", "h134", "h34", "h356", "h56", "h125"]).unwrap();
        assert!(cross(&rc, &s, rc.named("h12").unwrap()).is_err());
    }

    #[test]
    fn fixed_d5_has_type_d5() {
        let rc = RootChart::new(3).unwrap();
        let m = fixed_d5(&rc);
        assert_eq!(rc.rs.cartan_type_of(m), "D5".parse().unwrap());
    }
}
