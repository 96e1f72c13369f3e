use rayon::prelude::*;

use crate::lattice::{RootLabel, RootMask, RootSubsystem};

use super::{CovariantError, RootChart};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroLocusReport {
    pub covariant_systems: usize,
    /// Subsystem families swept, with their sizes.
    pub targets: Vec<(String, usize)>,
    pub disjoint_pairs: usize,
    pub witness_disjoint: bool,
}

impl ZeroLocusReport {
    pub fn passed(&self) -> bool {
        self.disjoint_pairs == 0 && self.witness_disjoint
    }
}

/// Roots h_ij and h_i of E7: the nonsaturated A7.
pub fn nonsaturated_a7(rc: &RootChart) -> RootMask {
    let mut m = RootMask::default();
    for i in 0..rc.rs.len() {
        if matches!(rc.rs.label(i), RootLabel::Hij(..) | RootLabel::Hi(..)) {
            m.insert(i);
        }
    }
    m
}

fn count_disjoint(systems: &[RootSubsystem], targets: &[RootMask]) -> usize {
    systems
        .par_iter()
        .map(|s| targets.iter().filter(|t| s.mask.intersect(**t).is_empty()).count())
        .sum()
}

/// d = 3: every 3A2 meets every A3, and a 3A2 misses a 2A2+A1. d = 2: every 7A1 meets every D4 and every special A5.
pub fn zero_locus_check(d: i64) -> Result<ZeroLocusReport, CovariantError> {
    let rc = RootChart::new(d)?;
    match d {
        3 => {
            let systems = rc.subsystems("3A2")?;
            let a3: Vec<RootMask> = rc.subsystems("A3")?.iter().map(|s| s.mask).collect();
            let w1 = rc.rs.subsystem_named(&["h12", "h23", "h45", "h56", "h123", "h"])?;
            let w2 = rc.rs.subsystem_named(&["h16", "h125", "h34", "h136", "h25"])?;
            let witness_disjoint = w1.cartan_type == "3A2".parse()?
                && w2.cartan_type == "2A2+A1".parse()?
                && !w1.meets(&w2);
            Ok(ZeroLocusReport {
                covariant_systems: systems.len(),
                targets: vec![("A3".into(), a3.len())],
                disjoint_pairs: count_disjoint(&systems, &a3),
                witness_disjoint,
            })
        }
        2 => {
            let systems = rc.subsystems("7A1")?;
            let d4: Vec<RootMask> = rc.subsystems("D4")?.iter().map(|s| s.mask).collect();
            let mut a5 = Vec::new();
            for s in rc.subsystems("A5")? {
                if rc.rs.is_special_a5(&s)? {
                    a5.push(s.mask);
                }
            }
            let mut targets = d4.clone();
            targets.extend_from_slice(&a5);
            let a7 = nonsaturated_a7(&rc);
            let w = rc.rs.subsystem_named(&["h123", "h145", "h167", "h256", "h247", "h357", "h346"])?;
            let witness_disjoint = w.cartan_type == "7A1".parse()?
                && rc.rs.closure(a7) == a7
                && rc.rs.cartan_type_of(a7) == "A7".parse()?
                && w.mask.intersect(a7).is_empty();
            Ok(ZeroLocusReport {
                covariant_systems: systems.len(),
                targets: vec![("D4".into(), d4.len()), ("special A5".into(), a5.len())],
                disjoint_pairs: count_disjoint(&systems, &targets),
                witness_disjoint,
            })
        }
        _ => Err(CovariantError::Degree(d)),
    }
}
