//! Acceptance criteria 1 to 12. Prints one line per criterion and exits nonzero on any unexpected result.
//!
//! Criteria 9, 10 and 11 state facts that do not hold as written. For those the literal statement is
//! reported as FAIL and must fail in exactly the documented way; a second line reports the corrected
//! statement, which must pass.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;

use coble::config::{
    degree5_explicit_check, enumerate_structures, naruki_check_against, naruki_printed_table, naruki_table_check,
    separation_experiment, transform_experiment,
};
use coble::covariants::{central_action_check, coble_basis, irreducibility_check, type_ab_split, RootChart};
use coble::cuspidal::{covariant_identity_sweep, cross_ratio_check, d5_field_check, e6_field_check};
use coble::lattice::{weyl_orbit, CartanType, RootMask, RootSystem};
use coble::suites::{run_suite, SuiteOptions};

struct Line {
    label: String,
    ok: bool,
    detail: String,
}

struct Outcome {
    lines: Vec<Line>,
    /// Lines that are expected to report FAIL.
    expected_fail: BTreeSet<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { lines: Vec::new(), expected_fail: BTreeSet::new() }
    }

    fn line(&mut self, label: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.lines.push(Line { label: label.into(), ok, detail: detail.into() });
    }

    fn known_failure(&mut self, label: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let label = label.into();
        self.expected_fail.insert(label.clone());
        self.line(label, ok, detail);
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

/// Brute-force count of norm −2 vectors orthogonal to the canonical class in Λ_{1,n}.
fn brute_force_roots(n: usize) -> usize {
    let range = -3i64..=3;
    let mut count = 0;
    for a in range.clone() {
        for b in (0..n).map(|_| range.clone()).multi_cartesian_product() {
            let norm = a * a - b.iter().map(|x| x * x).sum::<i64>();
            let dot_k = -3 * a + b.iter().sum::<i64>();
            if norm == -2 && dot_k == 0 {
                count += 1;
            }
        }
    }
    count
}

fn criterion1() -> Outcome {
    let mut o = Outcome::new();
    let mut details = Vec::new();
    let mut ok = true;
    for (d, expect) in [(5, 20), (4, 40), (3, 72), (2, 126)] {
        let (rs, t) = timed(|| RootSystem::for_degree(d).unwrap());
        let oracle = brute_force_roots((9 - d) as usize);
        ok &= rs.len() == expect && oracle == expect && t < Duration::from_secs(1);
        details.push(format!("n={}: {} ({:.0?})", 9 - d, rs.len(), t));
    }
    o.line("1  root counts 20/40/72/126", ok, details.join(", "));
    o
}

fn count(rs: &RootSystem, t: &str) -> usize {
    rs.enumerate_subsystems(&t.parse::<CartanType>().unwrap()).len()
}

fn criterion2() -> Outcome {
    let mut o = Outcome::new();
    let e6 = RootSystem::for_degree(3).unwrap();
    let e7 = RootSystem::for_degree(2).unwrap();
    let d5 = RootSystem::for_degree(4).unwrap();
    let a2 = count(&e6, "3A2");
    let (sys7, t7) = timed(|| e7.enumerate_subsystems(&"7A1".parse().unwrap()));
    let split = coble::lattice::s7_orbit_split(&e7, &sys7).unwrap();
    let d4s = d5.enumerate_subsystems(&"D4".parse().unwrap());
    let four: Vec<usize> =
        d4s.iter().map(|s| d5.enumerate_subsystems_in(&"4A1".parse().unwrap(), s.mask).len()).collect();
    let mixed = count(&d5, "2A1+A2");
    let ok = a2 == 40
        && sys7.len() == 135
        && (split.type_a.len(), split.type_b.len()) == (105, 30)
        && four.iter().all(|&k| k == 3)
        && d4s.len() == 5
        && mixed == 40
        && t7 < Duration::from_secs(180);
    o.line(
        "2  subsystem counts",
        ok,
        format!(
            "3A2 {a2}, 7A1 {} = {}+{} ({:.1?}), 4A1 per D4 {:?}, D4 {}, 2A1+A2 {mixed}",
            sys7.len(),
            split.type_a.len(),
            split.type_b.len(),
            t7,
            four,
            d4s.len()
        ),
    );
    o
}

/// Sizes of the orbits of the permutations of e1..en on the given masks.
fn permutation_orbits(rs: &RootSystem, masks: &[RootMask]) -> Vec<Vec<RootMask>> {
    let n = rs.lattice().n();
    let trans: Vec<usize> = (1..n).map(|i| rs.named(&format!("h{}{}", i, i + 1)).unwrap()).collect();
    let mut remaining: BTreeSet<RootMask> = masks.iter().copied().collect();
    let mut orbits = Vec::new();
    while let Some(&seed) = remaining.iter().next() {
        let orbit = weyl_orbit(seed, trans.len(), |g, m| rs.reflect_mask(trans[g], *m));
        for m in &orbit {
            remaining.remove(m);
        }
        orbits.push(orbit);
    }
    orbits
}

fn sextic_factors(structure: &str) -> usize {
    structure.split('|').filter(|s| s.len() == 6).count()
}

fn criterion3() -> Outcome {
    let mut o = Outcome::new();
    let mut ok = true;
    let mut details = Vec::new();
    for (d, expect) in [(5, 1), (4, 12), (3, 40), (2, 135)] {
        let (rc, space) = coble_basis(d).unwrap();
        let structures = enumerate_structures(d).unwrap();
        let (_, sweep) = covariant_identity_sweep(d).unwrap();
        let agree = sweep.passed() && sweep.matched == expect && sweep.covariants == expect;
        ok &= space.covariants.len() == expect && structures.len() == expect && agree;
        let mut extra = String::new();
        if d <= 3 {
            // Class of each covariant under (a): its permutation orbit. Under (b): its number of sextic factors.
            let masks: Vec<RootMask> = space
                .covariants
                .iter()
                .map(|c| {
                    let mut m = RootMask::default();
                    for &r in &c.factors {
                        m.insert(r);
                        m.insert(rc.rs.negate(r));
                    }
                    m
                })
                .collect();
            let orbits = permutation_orbits(&rc.rs, &masks);
            let orbit_of: BTreeMap<RootMask, usize> =
                orbits.iter().enumerate().flat_map(|(k, o)| o.iter().map(move |m| (*m, k))).collect();
            let key_to_mask: BTreeMap<Vec<usize>, RootMask> =
                space.covariants.iter().zip(&masks).map(|(c, m)| (rc.multiset_key(&c.factors), *m)).collect();
            let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
            for id in &sweep.identities {
                if let Some(m) = key_to_mask.get(&rc.multiset_key(&id.roots)) {
                    pairs.insert((orbit_of[m], sextic_factors(&id.structure)));
                }
            }
            let mut a_sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
            a_sizes.sort();
            let mut b_sizes: BTreeMap<usize, usize> = BTreeMap::new();
            for s in &structures {
                *b_sizes.entry(s.shape().1).or_default() += 1;
            }
            let mut b_sorted: Vec<usize> = b_sizes.values().copied().collect();
            b_sorted.sort();
            let want = if d == 3 { vec![10, 30] } else { vec![30, 105] };
            // The class correspondence is a bijection.
            let consistent = pairs.len() == orbits.len()
                && pairs.iter().map(|p| p.0).all_unique()
                && pairs.iter().map(|p| p.1).all_unique();
            ok &= a_sizes == want && b_sorted == want && consistent;
            if d == 2 {
                let (a, b) = type_ab_split(&rc, &space).unwrap();
                ok &= (a.len(), b.len()) == (105, 30);
            }
            extra = format!(" split {a_sizes:?}");
        }
        details.push(format!("d={d}: {expect}{extra}"));
    }
    o.line("3  covariant counts, by subsystems and by structures, matched factor-for-factor", ok, details.join(", "));
    o
}

fn criterion4_5() -> Outcome {
    let mut o = Outcome::new();
    let mut dims = Vec::new();
    let mut degrees = Vec::new();
    let (mut ok4, mut ok5) = (true, true);
    for (d, dim, degree) in [(5, 1, 10), (4, 6, 10), (3, 10, 9), (2, 15, 7)] {
        let ((_, space), t) = timed(|| coble_basis(d).unwrap());
        ok4 &= space.dimension == dim && t < Duration::from_secs(180);
        ok5 &= degree == d * (9 - d) / 2
            && space.covariants.iter().all(|c| c.poly.is_homogeneous() && c.poly.degree() == Some(degree));
        dims.push(format!("d={d}: {} ({:.1?})", space.dimension, t));
        degrees.push(format!("{degree}×{}", space.covariants.len()));
    }
    o.line("4  span dimensions 1/6/10/15", ok4, dims.join(", "));
    o.line("5  degree ½d(9−d) = 10/10/9/7 on every covariant", ok5, degrees.join(", "));
    o
}

fn suite_line(o: &mut Outcome, label: &str, suites: &[&str]) {
    let opts = SuiteOptions::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for s in suites {
        let r = run_suite(s, &opts).unwrap();
        ok &= r.passed();
        parts.push(format!("{s} {}/{}", r.count(coble::report::Status::Pass), r.checks.len()));
    }
    o.line(label, ok, parts.join(", "));
}

fn criterion6() -> Outcome {
    let mut o = Outcome::new();
    suite_line(
        &mut o,
        "6  exact identity suite",
        &["det-identities", "ab", "d4", "s3", "crosssum", "quintic", "weyl-transform"],
    );
    o
}

fn criterion7() -> Outcome {
    let mut o = Outcome::new();
    suite_line(&mut o, "7  zero-locus intersection sweeps and disjointness witnesses", &["z6", "fixpart"]);
    o
}

fn criterion8() -> Outcome {
    let mut o = Outcome::new();
    let (c3, _) = irreducibility_check(3).unwrap();
    let (c2, _) = irreducibility_check(2).unwrap();
    let (rc, space) = coble_basis(2).unwrap();
    let central = central_action_check(&rc, &space);
    let rc3 = RootChart::new(3).unwrap();
    let dec = coble::covariants::d5_plane_decomposition(&rc3, coble::covariants::fixed_d5(&rc3)).unwrap();
    let ok = c3 == 1 && c2 == 1 && central && dec.is_direct_sum() && dec.signed_sums_vanish.iter().all(|&b| b);
    o.line(
        "8  commutants, central action, five-plane decomposition",
        ok,
        format!("commutant E6 {c3}, E7 {c2}, t↦−t negates: {central}, total rank {}", dec.total_rank),
    );
    o
}

fn criterion9() -> Outcome {
    let mut o = Outcome::new();
    let e6 = e6_field_check().unwrap();
    let d5 = d5_field_check(20, SuiteOptions::default().seed).unwrap();
    let literal = e6.strict_passed() && d5.strict_passed();
    // Expected shape of the failure: every literal claim fails, every corrected one holds.
    let documented = !e6.strictly_invariant
        && e6.gradient_coefficient.is_none()
        && !d5.x2_fixed
        && !d5.x3_fixed
        && d5.x3_coefficient.is_none()
        && d5.x2_coefficients.is_none()
        && d5.rank.ranks.iter().all(|&r| r == 3)
        && d5.rank.points == 20;
    o.known_failure(
        "9  vector fields as stated",
        literal,
        format!(
            "X̂ fixed {}, X̂ ∈ ℚ∇f5 {}, X̂2/X̂3 fixed {}/{}, ranks {:?}; failure as documented: {documented}",
            e6.strictly_invariant,
            e6.gradient_coefficient.is_some(),
            d5.x2_fixed,
            d5.x3_fixed,
            d5.rank.ranks.iter().collect::<BTreeSet<_>>()
        ),
    );
    let gm = e6.gradient_modulo_euler.as_ref().map(|(c, g)| format!("{c}·∇f5 + g·E, deg g = {}", g.degree().unwrap_or(-1)));
    o.line(
        "9' vector fields modulo the Euler field",
        e6.passed() && d5.passed() && documented,
        format!(
            "X̂ = {}, invariant fields dim {}/{}/{}, rank with E ≤ 3 at {} points",
            gm.unwrap_or_default(),
            e6.invariant_fields,
            d5.invariant_fields_degree2,
            d5.invariant_fields_degree3,
            d5.rank.points
        ),
    );
    o
}

fn criterion10() -> Outcome {
    let mut o = Outcome::new();
    let printed = naruki_check_against(&naruki_printed_table()).unwrap();
    let documented = printed.assignments.len() == 39
        && printed.unmatched_entries == ["2"]
        && printed.unmatched_structures.len() == 1
        && printed.division_failures.is_empty();
    o.known_failure(
        "10 Naruki table as printed",
        printed.passed(),
        format!(
            "{}/40 matched, unmatched entry {:?}; failure as documented: {documented}",
            printed.assignments.len(),
            printed.unmatched_entries
        ),
    );
    let fixed = naruki_table_check().unwrap();
    o.line(
        "10' Naruki table with δ³ in family 2",
        fixed.passed() && documented && fixed.worked.iter().all(|w| w.2.is_some()),
        format!("{}/40 matched, worked examples {:?}", fixed.assignments.len(), fixed.worked.iter().map(|w| w.2.clone()).collect::<Vec<_>>()),
    );
    o
}

fn criterion11() -> Outcome {
    let mut o = Outcome::new();
    let r = degree5_explicit_check().unwrap();
    let span_ok = r.evaluations.len() == 12 && r.span == 6 && r.basis_rank == 6 && r.all_in_basis_span;
    o.known_failure(
        "11 degree-5 span and worked product as printed",
        span_ok && r.printed_matches,
        format!("span {}, worked product {}", r.span, r.worked_product),
    );
    o.line(
        "11' degree-5 span and worked product z0z1z2 − z0z2²",
        span_ok && r.worked_matches && !r.printed_matches && r.frame_dets,
        format!("basis rank {}, all 12 in span {}", r.basis_rank, r.all_in_basis_span),
    );
    o
}

fn criterion12() -> Outcome {
    let mut o = Outcome::new();
    let cr = cross_ratio_check().unwrap();
    let mut ok = cr.passed();
    let mut parts = vec![format!("cross-ratio {}", cr.passed())];
    for d in [3, 2] {
        let s = separation_experiment(d, 10, 7).unwrap();
        let t = transform_experiment(d, 10, 8).unwrap();
        ok &= s.passed() && t.passed() && s.trials == 10 && t.trials == 10 && s.evidence_only && t.evidence_only;
        parts.push(format!("d={d}: separated {}/{}, proportional {}/{}", s.successes, s.trials, t.successes, t.trials));
    }
    o.line("12 cross-ratio and sampling experiments (evidence)", ok, parts.join(", "));
    o
}

fn main() -> ExitCode {
    let criteria: Vec<fn() -> Outcome> = vec![
        criterion1,
        criterion2,
        criterion3,
        criterion4_5,
        criterion6,
        criterion7,
        criterion8,
        criterion9,
        criterion10,
        criterion11,
        criterion12,
    ];
    let outcomes: Vec<Outcome> = criteria.par_iter().map(|f| f()).collect();
    let mut unexpected = 0;
    for o in &outcomes {
        for l in &o.lines {
            let expected_fail = o.expected_fail.contains(&l.label);
            let tag = match (l.ok, expected_fail) {
                (true, false) => "PASS",
                (false, true) => "FAIL (known)",
                (false, false) => "FAIL",
                (true, true) => "PASS (unexpected)",
            };
            if l.ok == expected_fail {
                unexpected += 1;
            }
            println!("criterion {}: {tag} [{}]", l.label, l.detail);
        }
    }
    if unexpected == 0 {
        println!("acceptance: all criteria behave as documented");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
