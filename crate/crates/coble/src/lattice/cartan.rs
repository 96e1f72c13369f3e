use std::fmt;
use std::str::FromStr;

use super::LatticeError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
}

impl Component {
    pub fn new(family: Family, rank: usize) -> Result<Component, LatticeError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(Component { family, rank })
        } else {
            Err(LatticeError::UnsupportedType(format!("{family:?}{rank}")))
        }
    }

    pub fn root_count(&self) -> usize {
        let r = self.rank;
        match (self.family, r) {
            (Family::A, _) => r * (r + 1),
            (Family::D, _) => 2 * r * (r - 1),
            (Family::E, 6) => 72,
            (Family::E, 7) => 126,
            _ => 240,
        }
    }

    /// Dynkin edges with nodes 0..rank, ordered so every node after the first touches an earlier one.
    pub fn dynkin_edges(&self) -> Vec<(usize, usize)> {
        let r = self.rank;
        match self.family {
            Family::A => (1..r).map(|i| (i - 1, i)).collect(),
            Family::D => {
                let mut e: Vec<(usize, usize)> = (1..r - 1).map(|i| (i - 1, i)).collect();
                e.push((r - 3, r - 1));
                e
            }
            Family::E => {
                // chain 0-1-2-3-..., node r-1 hangs off node 2
                let mut e: Vec<(usize, usize)> = (1..r - 1).map(|i| (i - 1, i)).collect();
                e.push((2, r - 1));
                e
            }
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Multiset of irreducible components, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CartanType {
    components: Vec<Component>,
}

impl CartanType {
    pub fn new(mut components: Vec<Component>) -> CartanType {
        components.sort();
        CartanType { components }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn root_count(&self) -> usize {
        self.components.iter().map(|c| c.root_count()).sum()
    }

    /// Classify a simply laced diagram from its adjacency lists.
    pub fn from_graph(adj: &[Vec<usize>]) -> Result<CartanType, LatticeError> {
        let n = adj.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut nodes = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < nodes.len() {
                for &t in &adj[nodes[k]] {
                    if !seen[t] {
                        seen[t] = true;
                        nodes.push(t);
                    }
                }
                k += 1;
            }
            comps.push(classify_tree(adj, &nodes)?);
        }
        Ok(CartanType::new(comps))
    }
}

fn classify_tree(adj: &[Vec<usize>], nodes: &[usize]) -> Result<Component, LatticeError> {
    let r = nodes.len();
    let edges: usize = nodes.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    let bad = || LatticeError::UnsupportedType(format!("non-Dynkin graph on {r} nodes"));
    if edges != r - 1 {
        return Err(bad());
    }
    let branch: Vec<usize> = nodes.iter().copied().filter(|&v| adj[v].len() > 2).collect();
    match branch.as_slice() {
        [] => Component::new(Family::A, r),
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*b, start, 1);
                    loop {
                        let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
                        match next.as_slice() {
                            [] => return len,
                            [x] => {
                                prev = cur;
                                cur = *x;
                                len += 1;
                            }
                            _ => return usize::MAX,
                        }
                    }
                })
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, _] => Component::new(Family::D, r),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Component::new(Family::E, r),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.components.len() {
            let c = self.components[i];
            let mut k = 1;
            while i + k < self.components.len() && self.components[i + k] == c {
                k += 1;
            }
            parts.push(if k == 1 { c.to_string() } else { format!("{k}{c}") });
            i += k;
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for CartanType {
    type Err = LatticeError;

    /// Accepts forms like `3A2`, `7A1`, `2A1+A2`, `A1+D4`, `E6`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::UnsupportedType(s.to_string());
        let mut comps = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let pos = part.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(bad)?;
            let mult: usize = if pos == 0 { 1 } else { part[..pos].parse().map_err(|_| bad())? };
            let family = match &part[pos..pos + 1] {
                "A" => Family::A,
                "D" => Family::D,
                "E" => Family::E,
                _ => return Err(bad()),
            };
            let rank: usize = part[pos + 1..].parse().map_err(|_| bad())?;
            let c = Component::new(family, rank).map_err(|_| bad())?;
            if mult == 0 {
                return Err(bad());
            }
            comps.extend(std::iter::repeat_n(c, mult));
        }
        Ok(CartanType::new(comps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["3A2", "7A1", "2A1+A2", "A1+D4", "E6", "D5", "A5"] {
            assert_eq!(s.parse::<CartanType>().unwrap().to_string(), s);
        }
        assert_eq!("A2+2A1".parse::<CartanType>().unwrap().to_string(), "2A1+A2");
        assert!("B3".parse::<CartanType>().is_err());
        assert!("D3".parse::<CartanType>().is_err());
    }

    #[test]
    fn diagrams_classify_back() {
        for s in ["A5", "D4", "D5", "E6", "E7", "E8"] {
            let t: CartanType = s.parse().unwrap();
            let c = t.components()[0];
            let mut adj = vec![Vec::new(); c.rank];
            for (a, b) in c.dynkin_edges() {
                adj[a].push(b);
                adj[b].push(a);
            }
            assert_eq!(CartanType::from_graph(&adj).unwrap(), t);
        }
    }
}
