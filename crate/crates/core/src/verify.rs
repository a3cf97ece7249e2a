//! Exhaustive self-check over all of `S_L` for small `L`.
//!
//! The detectors are compared against literal quadratic scans of their
//! definitions, and the counts against plain enumeration.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::anomaly::{all_b_anomalies, bounded_to_theater, has_b_anomaly, theater_to_bounded, theater_violation};
use crate::counting::{count_bounded_cycles, sample_bounded, Lexicographic};
use crate::foata::{cycle_decomposition, cycle_head_of, foata_forward, foata_inverse, max_cycle_length};
use crate::perm::{Permutation, TextStyle};
use crate::theater_sim::{exhaustive_full_occupancy, trace_to_time_permutation};

/// Largest `L` the dynamics checks are run at.
pub const DYNAMICS_MAX: usize = 6;
pub const DEFAULT_MAX_LENGTH: usize = 6;
pub const VERIFY_CAP: usize = 9;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub range: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub max_length: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{tag} {} [{}]", c.name, c.range)?;
            if let Some(ce) = &c.counterexample {
                write!(f, " counterexample: {ce}")?;
            }
            writeln!(f)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// `a_{i+1} … a_{i+b}` is a b-anomaly iff some `a_j`, `j ≤ i`, exceeds all
/// of it. Straight from the definition.
pub fn naive_anomaly_starts(word: &[u32], b: usize) -> Vec<usize> {
    let n = word.len();
    (1..n)
        .filter(|&i| i + b <= n)
        .filter(|&i| (0..i).any(|j| (i..i + b).all(|k| word[j] > word[k])))
        .collect()
}

/// Smallest `(i, j)` with `j + b < i` and `s(j+k) > s(i)` for `1 ≤ k ≤ b`,
/// 1-based `i`, 0-based-offset `j`.
pub fn naive_theater_violation(word: &[u32], b: usize) -> Option<(usize, usize)> {
    let n = word.len();
    for i in 1..=n {
        for j in 0..i {
            if j + b < i && (1..=b).all(|k| word[j + k - 1] > word[i - 1]) {
                return Some((i, j));
            }
        }
    }
    None
}

struct Check {
    name: &'static str,
    range: String,
    failure: Option<String>,
}

impl Check {
    fn new(name: &'static str, range: String) -> Self {
        Check { name, range, failure: None }
    }

    fn expect(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult { name: self.name, range: self.range, passed: self.failure.is_none(), counterexample: self.failure }
    }
}

fn all_perms(max_len: usize) -> impl Iterator<Item = Permutation> {
    (1..=max_len).flat_map(Lexicographic::new)
}

/// Runs every property for all `L ≤ max_len` (dynamics for
/// `L ≤ min(max_len, 6)`).
pub fn run_suite(max_len: usize) -> VerifyReport {
    let upto = format!("L <= {max_len}");
    let all_b = format!("L <= {max_len}, 1 <= b <= L");
    let mut checks = Vec::new();

    let mut involutions = Check::new("rotate180 and complement are involutions", upto.clone());
    let mut rot_rev = Check::new("rotate180 = complement of reverse", upto.clone());
    let mut inverse = Check::new("invert is an involution", upto.clone());
    let mut text = Check::new("text round trip", upto.clone());
    let mut foata_rt = Check::new("Foata round trip", upto.clone());
    let mut heads = Check::new("prefix maxima are cycle heads", upto.clone());
    let mut canonical = Check::new("canonical cycle form", upto.clone());
    let mut lengths = Check::new("cycle type invariant under inversion", upto.clone());
    for p in all_perms(max_len) {
        let ps = || p.to_string();
        involutions.expect(p.rotate180().rotate180() == p && p.complement().complement() == p, ps);
        rot_rev.expect(p.rotate180() == p.reverse().complement(), ps);
        inverse.expect(p.invert().invert() == p && p.invert().word().iter().enumerate().all(|(i, &q)| p.apply(q as usize) as usize == i + 1), ps);
        let round = |style| p.to_text(style).parse::<Permutation>().ok() == Some(p.clone());
        text.expect(round(TextStyle::Comma) && round(TextStyle::Compact), ps);
        let w = foata_forward(&p);
        foata_rt.expect(foata_inverse(&w) == p && foata_forward(&foata_inverse(&p)) == p, ps);
        let pre = foata_inverse(&p);
        let dec = cycle_decomposition(&pre);
        heads.expect(
            (1..=p.len()).all(|k| {
                let letter = p.apply(k);
                let head = dec.cycles().iter().find(|c| c.elements().contains(&letter)).map(|c| c.head());
                cycle_head_of(&p, k).ok() == head
            }),
            ps,
        );
        let dec = cycle_decomposition(&p);
        canonical.expect(
            dec.cycles().windows(2).all(|c| c[0].head() < c[1].head())
                && dec.cycles().iter().all(|c| c.elements().iter().all(|&x| x <= c.head()))
                && dec.to_permutation() == p,
            ps,
        );
        lengths.expect(dec.cycle_type() == cycle_decomposition(&p.invert()).cycle_type(), ps);
    }
    checks.extend([involutions, rot_rev, inverse, text, foata_rt, heads, canonical, lengths].map(Check::finish));

    let mut prop = Check::new("long cycle iff b-anomaly in Foata image", all_b.clone());
    let mut duality = Check::new("b-anomaly iff rotation is not theater-admissible", all_b.clone());
    let mut nesting = Check::new("b-anomaly implies shorter anomalies", all_b.clone());
    let mut soundness = Check::new("witnesses re-verify", all_b.clone());
    let mut kernel = Check::new("fast detectors agree with naive scans", all_b.clone());
    let mut bijection = Check::new("bounded_to_theater is a bijection onto the admissible set", all_b.clone());
    let mut identity = Check::new("four counts agree", all_b.clone());
    for len in 1..=max_len {
        for b in 1..=len {
            let mut bounded_image = BTreeSet::new();
            let mut admissible = BTreeSet::new();
            let (mut n_bounded, mut n_adm, mut n_free) = (0u64, 0u64, 0u64);
            for p in Lexicographic::new(len) {
                let ps = || format!("{p} b={b}");
                let anomaly = has_b_anomaly(&p, b).unwrap();
                let violation = theater_violation(&p, b).unwrap();
                let long = max_cycle_length(&p) > b;
                prop.expect(long == has_b_anomaly(&foata_forward(&p), b).unwrap(), ps);
                duality.expect(anomaly == theater_violation(&p.rotate180(), b).unwrap().is_some(), ps);
                if anomaly {
                    nesting.expect((1..=b).all(|c| has_b_anomaly(&p, c).unwrap()), ps);
                }

                let witnesses = all_b_anomalies(&p, b).unwrap();
                let word = p.word();
                soundness.expect(
                    witnesses.iter().all(|w| {
                        let block = &word[w.block_start..w.block_start + b];
                        let below = |x: u32| block.iter().all(|&y| x > y);
                        w.blocker_position >= 1
                            && w.blocker_position <= w.block_start
                            && word[w.blocker_position - 1] == w.blocker_value
                            && block == w.block_letters.as_slice()
                            && below(w.blocker_value)
                            && word[..w.block_start].iter().filter(|&&x| below(x)).all(|&x| x <= w.blocker_value)
                    }) && violation.as_ref().is_none_or(|v| {
                        v.block_start + b < v.victim_position
                            && word[v.block_start..v.block_start + b].iter().all(|&x| x > word[v.victim_position - 1])
                    }),
                    ps,
                );
                let starts: Vec<usize> = witnesses.iter().map(|w| w.block_start).collect();
                kernel.expect(
                    starts == naive_anomaly_starts(word, b)
                        && violation.map(|v| (v.victim_position, v.block_start)) == naive_theater_violation(word, b),
                    ps,
                );

                if !long {
                    n_bounded += 1;
                    bounded_image.insert(bounded_to_theater(&p));
                    bijection.expect(theater_to_bounded(&bounded_to_theater(&p)) == p, ps);
                }
                if !anomaly {
                    n_free += 1;
                }
                if theater_violation(&p, b).unwrap().is_none() {
                    n_adm += 1;
                    admissible.insert(p.clone());
                }
            }
            bijection.expect(bounded_image == admissible, || format!("image differs at L={len} b={b}"));
            let rec: BigUint = count_bounded_cycles(len, b).unwrap();
            identity.expect(
                [n_bounded, n_adm, n_free].iter().all(|&n| BigUint::from(n) == rec),
                || format!("L={len} b={b}: recurrence {rec}, bounded {n_bounded}, admissible {n_adm}, anomaly-free {n_free}"),
            );
        }
    }
    checks.extend([prop, duality, nesting, soundness, kernel, bijection, identity].map(Check::finish));

    let mut rows = Check::new("boundary rows and monotonicity", format!("L <= {}", max_len + 4));
    for len in 0..=max_len + 4 {
        let d = |b| count_bounded_cycles::<BigUint>(len, b).unwrap();
        let fact: BigUint = (1..=len as u64).product();
        rows.expect(d(1) == BigUint::from(1u32), || format!("D_{len}^(1) = {}", d(1)));
        for b in 1..=len + 1 {
            if b >= len {
                rows.expect(d(b) == fact, || format!("D_{len}^({b}) != {len}!"));
            }
            rows.expect((d(b) < d(b + 1)) == (b < len), || format!("monotonicity at L={len} b={b}"));
        }
    }
    checks.push(rows.finish());

    let dyn_max = max_len.min(DYNAMICS_MAX);
    let mut dynamics = Check::new("seating dynamics reproduce the admissible set", format!("L <= {dyn_max}, 1 <= b <= L"));
    for len in 1..=dyn_max {
        for b in 1..=len {
            let traces = exhaustive_full_occupancy(len, b).unwrap();
            let from_dynamics: BTreeSet<Permutation> =
                traces.iter().map(|t| trace_to_time_permutation(t).unwrap().complement()).collect();
            let admissible: BTreeSet<Permutation> =
                Lexicographic::new(len).filter(|p| theater_violation(p, b).unwrap().is_none()).collect();
            let rec: BigUint = count_bounded_cycles(len, b).unwrap();
            dynamics.expect(
                from_dynamics == admissible
                    && BigUint::from(traces.len()) == rec
                    && traces.iter().all(|t| t.is_valid(len, b)),
                || format!("L={len} b={b}"),
            );
        }
    }
    checks.push(dynamics.finish());

    let mut sampler = Check::new("sampler stays in class and covers it", "L = 4, b = 2, seeds 0..2000".into());
    let mut seen = BTreeSet::new();
    for seed in 0..2000 {
        let p = sample_bounded(4, 2, seed).unwrap();
        sampler.expect(max_cycle_length(&p) <= 2, || format!("seed {seed} gave {p}"));
        seen.insert(p);
    }
    sampler.expect(seen.len() == 10, || format!("only {} of 10 involutions drawn", seen.len()));
    checks.push(sampler.finish());

    VerifyReport { max_length: max_len, checks }
}
