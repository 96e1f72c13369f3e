use std::collections::BTreeSet;

use itertools::Itertools;

use super::{LatticeError, RootMask, RootSubsystem, RootSystem};

/// Breadth-first closure of `seed` under `ngens` generators; returned sorted.
pub fn weyl_orbit<T: Ord + Clone>(seed: T, ngens: usize, action: impl Fn(usize, &T) -> T) -> Vec<T> {
    let mut seen: BTreeSet<T> = BTreeSet::new();
    seen.insert(seed.clone());
    let mut frontier = vec![seed];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in 0..ngens {
                let y = action(g, x);
                if !seen.contains(&y) {
                    seen.insert(y.clone());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

impl RootSystem {
    /// Orbit of a root set under the simple reflections.
    pub fn mask_orbit(&self, seed: RootMask) -> Vec<RootMask> {
        let simple = self.simple().to_vec();
        weyl_orbit(seed, simple.len(), |g, m| self.reflect_mask(simple[g], *m))
    }

    pub fn subsystem_orbit(&self, s: &RootSubsystem) -> Vec<RootSubsystem> {
        let mut v: Vec<RootSubsystem> = self.mask_orbit(s.mask).into_iter().map(|m| self.subsystem(m)).collect();
        v.sort();
        v
    }

    /// Image of a root set under the coordinate permutation `perm` of (e1..en), 0-based.
    pub fn permute_mask(&self, perm: &[usize], m: RootMask) -> RootMask {
        let mut out = RootMask::default();
        for i in m.iter() {
            let c = self.root(i).coords();
            let mut v = c.to_vec();
            for (k, &p) in perm.iter().enumerate() {
                v[p + 1] = c[k + 1];
            }
            out.insert(self.index_of_vector(&super::LatticeVector(v)).expect("permutations preserve roots"));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct S7Split {
    pub type_a: Vec<RootSubsystem>,
    pub type_b: Vec<RootSubsystem>,
}

/// Split the 7A1 systems of E7 into the two orbits of the permutation group of (e1..e7).
pub fn s7_orbit_split(rs: &RootSystem, systems: &[RootSubsystem]) -> Result<S7Split, LatticeError> {
    let n = rs.lattice().n();
    let transpositions: Vec<usize> = (1..n).map(|i| rs.named(&format!("h{}{}", i, i + 1)).unwrap()).collect();
    let all: BTreeSet<RootMask> = systems.iter().map(|s| s.mask).collect();
    let mut remaining = all.clone();
    let mut orbits: Vec<Vec<RootMask>> = Vec::new();
    while let Some(&seed) = remaining.iter().next() {
        let orbit = weyl_orbit(seed, transpositions.len(), |g, m| rs.reflect_mask(transpositions[g], *m));
        for m in &orbit {
            if !all.contains(m) {
                return Err(LatticeError::NotPermutationClosed);
            }
            remaining.remove(m);
        }
        orbits.push(orbit);
    }
    let type_a = rs.named_mask(&["h7", "h12", "h34", "h56", "h127", "h347", "h567"])?;
    let type_b = rs.named_mask(&["h123", "h145", "h167", "h256", "h247", "h357", "h346"])?;
    let pick = |rep: RootMask| -> Vec<RootSubsystem> {
        let sym = rs.symmetrize(rep);
        orbits
            .iter()
            .find(|o| o.contains(&sym))
            .map(|o| o.iter().map(|m| rs.subsystem(*m)).collect())
            .unwrap_or_default()
    };
    let a = pick(type_a);
    let b = pick(type_b);
    if a.len() + b.len() != systems.len() {
        return Err(LatticeError::NotPermutationClosed);
    }
    Ok(S7Split { type_a: a, type_b: b })
}

/// Number of coordinate permutations of (e1..en) fixing a root set.
pub fn permutation_stabilizer_order(rs: &RootSystem, m: RootMask) -> usize {
    let n = rs.lattice().n();
    (0..n).permutations(n).filter(|p| rs.permute_mask(p, m) == m).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_of_root_is_all_roots() {
        let rs = RootSystem::for_degree(4).unwrap();
        let mut m = RootMask::default();
        m.insert(0);
        assert_eq!(rs.mask_orbit(m).len(), rs.len());
    }

    #[test]
    fn orbit_of_integers_mod_five() {
        let o = weyl_orbit(0u32, 1, |_, x| (x + 2) % 5);
        assert_eq!(o, vec![0, 1, 2, 3, 4]);
    }
}
