//! Seating dynamics of the theater model.
//!
//! Spectators enter from the left of seat 1 and walk right; nobody can walk
//! past a run of `b` or more consecutive occupied seats. Each spectator takes
//! one reachable empty seat. A run ends either with every seat taken or with
//! a spectator who cannot reach any empty seat.

use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::counting::{sampler_rng, SAMPLER_RNG};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest row explored exhaustively.
pub const EXHAUSTIVE_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeatingState {
    occupancy: Vec<bool>,
    time: usize,
}

impl SeatingState {
    pub fn empty(len: usize) -> Self {
        SeatingState { occupancy: vec![false; len], time: 0 }
    }

    pub fn from_occupancy(occupancy: Vec<bool>) -> Self {
        let time = occupancy.iter().filter(|&&o| o).count();
        SeatingState { occupancy, time }
    }

    pub fn occupancy(&self) -> &[bool] {
        &self.occupancy
    }

    /// Spectators seated so far.
    pub fn time(&self) -> usize {
        self.time
    }

    pub fn len(&self) -> usize {
        self.occupancy.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupancy.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.time == self.occupancy.len()
    }

    /// Occupies the 1-based `seat`, which must be empty.
    fn seat(&mut self, seat: usize) {
        debug_assert!(!self.occupancy[seat - 1]);
        self.occupancy[seat - 1] = true;
        self.time += 1;
    }

    fn unseat(&mut self, seat: usize) {
        self.occupancy[seat - 1] = false;
        self.time -= 1;
    }
}

/// Empty seats (1-based, increasing) not hidden behind a run of at least `b`
/// occupied seats.
pub fn reachable_seats(state: &SeatingState, b: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut run = 0;
    for (idx, &taken) in state.occupancy.iter().enumerate() {
        if taken {
            run += 1;
            if run >= b {
                break;
            }
        } else {
            run = 0;
            out.push(idx + 1);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Full,
    Jammed,
}

/// Seats chosen at each time step, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SeatingTrace {
    pub choices: Vec<u32>,
    pub outcome: Outcome,
}

impl SeatingTrace {
    /// The seat order read as a permutation word; only for full traces.
    pub fn seat_order(&self) -> Result<Permutation> {
        if self.outcome != Outcome::Full {
            return Err(Error::TraceNotFull);
        }
        Ok(Permutation::from_word_unchecked(self.choices.clone()))
    }

    /// Replays the trace and checks that every choice was reachable and the
    /// outcome label is right.
    pub fn is_valid(&self, len: usize, b: usize) -> bool {
        let mut state = SeatingState::empty(len);
        for &c in &self.choices {
            let c = c as usize;
            if c == 0 || c > len || !reachable_seats(&state, b).contains(&c) {
                return false;
            }
            state.seat(c);
        }
        let stuck = reachable_seats(&state, b).is_empty();
        match self.outcome {
            Outcome::Full => state.is_full(),
            Outcome::Jammed => stuck && !state.is_full(),
        }
    }
}

/// `s(i)` = time step at which seat `i` was taken.
pub fn trace_to_time_permutation(trace: &SeatingTrace) -> Result<Permutation> {
    Ok(trace.seat_order()?.invert())
}

fn check(len: usize, b: usize) -> Result<()> {
    if b == 0 {
        return Err(Error::InvalidBlockLength);
    }
    if len == 0 {
        return Err(Error::InvalidLength);
    }
    Ok(())
}

fn explore(state: &mut SeatingState, b: usize, choices: &mut Vec<u32>, out: &mut Vec<SeatingTrace>) {
    if state.is_full() {
        out.push(SeatingTrace { choices: choices.clone(), outcome: Outcome::Full });
        return;
    }
    for seat in reachable_seats(state, b) {
        state.seat(seat);
        choices.push(seat as u32);
        explore(state, b, choices, out);
        choices.pop();
        state.unseat(seat);
    }
}

/// Every choice sequence that fills the row, sorted by seat order.
/// First-choice branches are explored in parallel.
pub fn exhaustive_full_occupancy(len: usize, b: usize) -> Result<Vec<SeatingTrace>> {
    check(len, b)?;
    if len > EXHAUSTIVE_CAP {
        return Err(Error::Infeasible { length: len, cap: EXHAUSTIVE_CAP });
    }
    let first = reachable_seats(&SeatingState::empty(len), b);
    let branches: Vec<Vec<SeatingTrace>> = first
        .into_par_iter()
        .map(|seat| {
            let mut state = SeatingState::empty(len);
            state.seat(seat);
            let mut out = Vec::new();
            explore(&mut state, b, &mut vec![seat as u32], &mut out);
            out
        })
        .collect();
    let mut traces: Vec<SeatingTrace> = branches.into_iter().flatten().collect();
    traces.sort();
    traces.dedup();
    Ok(traces)
}

/// How a spectator picks among reachable seats.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SeatPolicy {
    #[default]
    UniformReachable,
}

impl SeatPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            SeatPolicy::UniformReachable => "uniform_reachable",
        }
    }
}

impl Serialize for SeatPolicy {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One run driven by `rng`.
pub fn simulate_with<R: Rng + ?Sized>(len: usize, b: usize, policy: SeatPolicy, rng: &mut R) -> Result<SeatingTrace> {
    check(len, b)?;
    let mut state = SeatingState::empty(len);
    let mut choices = Vec::with_capacity(len);
    while !state.is_full() {
        let reachable = reachable_seats(&state, b);
        if reachable.is_empty() {
            return Ok(SeatingTrace { choices, outcome: Outcome::Jammed });
        }
        let seat = match policy {
            SeatPolicy::UniformReachable => reachable[rng.gen_range(0..reachable.len())],
        };
        state.seat(seat);
        choices.push(seat as u32);
    }
    Ok(SeatingTrace { choices, outcome: Outcome::Full })
}

/// One run, reproducible from `seed`.
pub fn simulate_random(len: usize, b: usize, seed: u64, policy: SeatPolicy) -> Result<SeatingTrace> {
    simulate_with(len, b, policy, &mut sampler_rng(seed))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloSummary {
    #[serde(rename = "L")]
    pub len: usize,
    pub b: usize,
    pub trials: u64,
    pub full: u64,
    pub full_rate: f64,
    pub mean_seated_fraction: f64,
    pub seed: u64,
    pub policy: SeatPolicy,
    pub rng: &'static str,
}

/// Runs `trials` independent simulations; trial `t` uses seed `seed + t`
/// (wrapping).
pub fn monte_carlo(len: usize, b: usize, seed: u64, trials: u64, policy: SeatPolicy) -> Result<MonteCarloSummary> {
    check(len, b)?;
    let seated: Vec<(bool, usize)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let trace = simulate_random(len, b, seed.wrapping_add(t), policy).expect("arguments checked");
            (trace.outcome == Outcome::Full, trace.choices.len())
        })
        .collect();
    let full = seated.iter().filter(|(f, _)| *f).count() as u64;
    let total_seated: usize = seated.iter().map(|&(_, n)| n).sum();
    let denom = trials.max(1) as f64;
    Ok(MonteCarloSummary {
        len,
        b,
        trials,
        full,
        full_rate: full as f64 / denom,
        mean_seated_fraction: total_seated as f64 / (denom * len as f64),
        seed,
        policy,
        rng: SAMPLER_RNG,
    })
}
