use std::collections::HashSet;
use std::fmt;

use super::{CartanType, Component, LatticeError, Root, RootMask, RootSystem};

/// A reflection-closed set of roots with its type and canonical positive half.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootSubsystem {
    pub mask: RootMask,
    pub roots: Vec<Root>,
    pub positive_roots: Vec<Root>,
    pub cartan_type: CartanType,
}

impl PartialOrd for RootSubsystem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootSubsystem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.roots.cmp(&other.roots)
    }
}

impl fmt::Display for RootSubsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pos: Vec<String> = self.positive_roots.iter().map(|r| r.to_string()).collect();
        write!(f, "{} <{}>", self.cartan_type, pos.join(", "))
    }
}

impl RootSubsystem {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn meets(&self, other: &RootSubsystem) -> bool {
        !self.mask.intersect(other.mask).is_empty()
    }
}

impl RootSystem {
    pub fn cartan_type_of(&self, m: RootMask) -> CartanType {
        let simple = self.simple_of(m);
        let adj: Vec<Vec<usize>> = simple
            .iter()
            .map(|&a| {
                simple
                    .iter()
                    .enumerate()
                    .filter(|&(_, &b)| b != a && self.pairing(a, b) != 0)
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        let t = CartanType::from_graph(&adj).expect("root subsystems have Dynkin diagrams");
        debug_assert_eq!(t.root_count(), m.len());
        t
    }

    /// Irreducible components of a reflection-closed mask, ordered by their smallest root index.
    pub fn components(&self, m: RootMask) -> Vec<RootMask> {
        let mut left = m;
        let mut out = Vec::new();
        while let Some(start) = left.iter().next() {
            let mut comp = RootMask::default();
            comp.insert(start);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in left.iter() {
                    if !comp.contains(j) && self.pairing(i, j) != 0 {
                        comp.insert(j);
                        stack.push(j);
                    }
                }
            }
            left = RootMask(left.0 & !comp.0);
            out.push(comp);
        }
        out
    }

    /// Wrap a reflection-closed mask.
    pub fn subsystem(&self, m: RootMask) -> RootSubsystem {
        let roots = self.roots_of(m);
        let positive_roots = self.roots_of(self.positive_part(m));
        RootSubsystem { mask: m, roots, positive_roots, cartan_type: self.cartan_type_of(m) }
    }

    pub fn subsystem_from_generators(&self, gens: &[Root]) -> Result<RootSubsystem, LatticeError> {
        let m = self.mask_of(gens)?;
        Ok(self.subsystem(self.closure(m)))
    }

    pub fn subsystem_named(&self, names: &[&str]) -> Result<RootSubsystem, LatticeError> {
        Ok(self.subsystem(self.closure(self.named_mask(names)?)))
    }

    pub fn subsystem_from_roots(&self, roots: &[Root]) -> Result<RootSubsystem, LatticeError> {
        let m = self.mask_of(roots)?;
        if self.closure(m) != m {
            return Err(LatticeError::NotARoot("root list is not reflection closed".into()));
        }
        Ok(self.subsystem(m))
    }

    pub fn perp(&self, s: &RootSubsystem) -> RootSubsystem {
        self.subsystem(self.perp_mask(s.mask))
    }

    pub fn is_special_a5(&self, s: &RootSubsystem) -> Result<bool, LatticeError> {
        let a5: CartanType = "A5".parse().unwrap();
        if s.cartan_type != a5 {
            return Err(LatticeError::TypeMismatch { expected: a5.to_string(), found: s.cartan_type.to_string() });
        }
        Ok(self.perp(s).cartan_type == "A2".parse().unwrap())
    }

    fn plus_one_mask(&self, i: usize) -> RootMask {
        let mut m = RootMask::default();
        for j in 0..self.len() {
            if self.pairing(i, j) == 1 {
                m.insert(j);
            }
        }
        m
    }

    /// Orbit of `gens` under the reflections in `gens`.
    fn generated(&self, gens: &[usize]) -> RootMask {
        let mut set = RootMask::default();
        let mut queue = Vec::new();
        for &g in gens {
            set.insert(g);
            queue.push(g);
        }
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            k += 1;
            for &g in gens {
                let y = self.reflect(g, x);
                if !set.contains(y) {
                    set.insert(y);
                    queue.push(y);
                }
            }
        }
        set
    }

    /// Irreducible subsystems of one type inside `ambient`, found by embedding its Dynkin diagram.
    pub fn enumerate_irreducible(&self, comp: Component, ambient: RootMask) -> Vec<RootMask> {
        let r = comp.rank;
        let mut adjacent = vec![vec![false; r]; r];
        for (a, b) in comp.dynkin_edges() {
            adjacent[a][b] = true;
            adjacent[b][a] = true;
        }
        let pos = self.positive_part(ambient);
        let plus: Vec<RootMask> = (0..self.len()).map(|i| self.plus_one_mask(i)).collect();
        let mut found: HashSet<RootMask> = HashSet::new();
        let mut tuple = Vec::with_capacity(r);
        fn rec(
            rs: &RootSystem,
            k: usize,
            r: usize,
            adjacent: &[Vec<bool>],
            pos: RootMask,
            plus: &[RootMask],
            tuple: &mut Vec<usize>,
            found: &mut HashSet<RootMask>,
        ) {
            if k == r {
                let m = rs.generated(tuple);
                found.insert(m);
                return;
            }
            let mut cand = pos;
            for (a, &x) in tuple.iter().enumerate() {
                cand = cand.intersect(if adjacent[a][k] { plus[x] } else { rs.orthogonal_mask(x) });
            }
            for y in cand.iter() {
                tuple.push(y);
                rec(rs, k + 1, r, adjacent, pos, plus, tuple, found);
                tuple.pop();
            }
        }
        rec(self, 0, r, &adjacent, pos, &plus, &mut tuple, &mut found);
        let mut out: Vec<RootMask> = found.into_iter().collect();
        out.sort_by_key(|m| self.roots_of(*m));
        out
    }

    /// All subsystems of exactly the given type inside `ambient`, canonically ordered.
    pub fn enumerate_subsystems_in(&self, t: &CartanType, ambient: RootMask) -> Vec<RootSubsystem> {
        let mut comps: Vec<Component> = t.components().to_vec();
        comps.sort_by(|a, b| b.cmp(a));
        let mut lists: Vec<Vec<RootMask>> = Vec::new();
        let mut cache: Vec<(Component, usize)> = Vec::new();
        for c in &comps {
            if let Some(&(_, k)) = cache.iter().find(|(cc, _)| cc == c) {
                lists.push(lists[k].clone());
            } else {
                cache.push((*c, lists.len()));
                lists.push(self.enumerate_irreducible(*c, ambient));
            }
        }
        let mut out = Vec::new();
        fn rec(
            rs: &RootSystem,
            k: usize,
            comps: &[Component],
            lists: &[Vec<RootMask>],
            start: usize,
            union: RootMask,
            perp: RootMask,
            out: &mut Vec<RootMask>,
        ) {
            if k == comps.len() {
                out.push(union);
                return;
            }
            let from = if k > 0 && comps[k] == comps[k - 1] { start } else { 0 };
            for (idx, c) in lists[k].iter().enumerate().skip(from) {
                if !c.is_subset(perp) {
                    continue;
                }
                rec(rs, k + 1, comps, lists, idx + 1, union.union(*c), perp.intersect(rs.perp_mask(*c)), out);
            }
        }
        rec(self, 0, &comps, &lists, 0, RootMask::default(), self.all_mask(), &mut out);
        let mut subs: Vec<RootSubsystem> = out.into_iter().map(|m| self.subsystem(m)).collect();
        subs.sort();
        subs.dedup();
        subs
    }

    pub fn enumerate_subsystems(&self, t: &CartanType) -> Vec<RootSubsystem> {
        self.enumerate_subsystems_in(t, self.all_mask())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    #[test]
    fn subsystem_types_from_generators() {
        let rs = RootSystem::for_degree(3).unwrap();
        assert_eq!(rs.subsystem_named(&["h12", "h134"]).unwrap().cartan_type, ct("A2"));
        assert_eq!(rs.subsystem_named(&["h12", "h34", "h56", "h135"]).unwrap().cartan_type, ct("D4"));
        assert_eq!(rs.subsystem_named(&["h12"]).unwrap().cartan_type, ct("A1"));
        assert_eq!(rs.cartan_type_of(rs.all_mask()), ct("E6"));
        let rs7 = RootSystem::for_degree(2).unwrap();
        assert_eq!(rs7.cartan_type_of(rs7.all_mask()), ct("E7"));
    }

    #[test]
    fn small_counts() {
        let rs = RootSystem::for_degree(3).unwrap();
        assert_eq!(rs.enumerate_subsystems(&ct("3A2")).len(), 40);
        assert_eq!(rs.enumerate_subsystems(&ct("A1")).len(), 36);
        assert_eq!(rs.enumerate_subsystems(&ct("D5")).len(), 27);
        let d4 = rs.subsystem_named(&["h12", "h34", "h56", "h135"]).unwrap();
        assert_eq!(rs.enumerate_subsystems_in(&ct("4A1"), d4.mask).len(), 3);
    }

    #[test]
    fn perp_examples() {
        let rs = RootSystem::for_degree(3).unwrap();
        let s = rs.subsystem_named(&["h12", "h34", "h56"]).unwrap();
        let p = rs.perp(&s);
        assert_eq!(p.positive_roots, vec![rs.lattice().root_named("h").unwrap()]);
    }
}
