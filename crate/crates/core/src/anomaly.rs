//! b-anomalies, theater admissibility and the composed bijection between
//! permutations with short cycles and theater-admissible permutations.
//!
//! Both detectors run in `O(L)` per query: a monotone deque gives the
//! extremum of every width-`b` window, and a running prefix extremum is
//! compared against it.

use std::collections::VecDeque;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::foata::{foata_forward, foata_inverse};
use crate::perm::Permutation;

/// A block `a_{i+1} … a_{i+b}` together with the largest earlier letter
/// exceeding all of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnomalyWitness {
    /// `i`: the number of letters before the block.
    pub block_start: usize,
    pub b: usize,
    pub block_letters: Vec<u32>,
    /// 1-based position `h` of the blocker, `h ≤ i`.
    pub blocker_position: usize,
    pub blocker_value: u32,
}

impl AnomalyWitness {
    /// 1-based position of the first block letter.
    pub fn first_position(&self) -> usize {
        self.block_start + 1
    }

    pub fn last_position(&self) -> usize {
        self.block_start + self.b
    }
}

impl Serialize for AnomalyWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AnomalyWitness", 7)?;
        st.serialize_field("block_start", &self.block_start)?;
        st.serialize_field("b", &self.b)?;
        st.serialize_field("block_first", &self.first_position())?;
        st.serialize_field("block_last", &self.last_position())?;
        st.serialize_field("block_letters", &self.block_letters)?;
        st.serialize_field("blocker_position", &self.blocker_position)?;
        st.serialize_field("blocker_value", &self.blocker_value)?;
        st.end()
    }
}

/// Positions `j+1 … j+b`, all holding letters larger than `s(i)`, with
/// `j + b < i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheaterViolation {
    pub block_start: usize,
    pub b: usize,
    pub block_letters: Vec<u32>,
    /// 1-based victim position `i`.
    pub victim_position: usize,
    pub victim_value: u32,
}

impl TheaterViolation {
    pub fn first_position(&self) -> usize {
        self.block_start + 1
    }

    pub fn last_position(&self) -> usize {
        self.block_start + self.b
    }
}

impl Serialize for TheaterViolation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TheaterViolation", 7)?;
        st.serialize_field("block_start", &self.block_start)?;
        st.serialize_field("b", &self.b)?;
        st.serialize_field("block_first", &self.first_position())?;
        st.serialize_field("block_last", &self.last_position())?;
        st.serialize_field("block_letters", &self.block_letters)?;
        st.serialize_field("victim_position", &self.victim_position)?;
        st.serialize_field("victim_value", &self.victim_value)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnomalyMode {
    /// One representative witness, see [`find_b_anomaly`].
    Single,
    All,
}

/// Extremum of every width-`width` window of `word`, indexed by window
/// start. `keeps(a, b)` is true when `a` dominates `b`; a strict `>` gives
/// maxima, a strict `<` minima.
fn window_extrema(word: &[u32], width: usize, keeps: impl Fn(u32, u32) -> bool) -> Vec<u32> {
    if width == 0 || width > word.len() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(word.len() - width + 1);
    let mut deque: VecDeque<usize> = VecDeque::with_capacity(width);
    for (idx, &v) in word.iter().enumerate() {
        while deque.back().is_some_and(|&k| !keeps(word[k], v)) {
            deque.pop_back();
        }
        deque.push_back(idx);
        if idx + 1 >= width {
            let start = idx + 1 - width;
            while deque.front().is_some_and(|&k| k < start) {
                deque.pop_front();
            }
            out.push(word[*deque.front().expect("window is nonempty")]);
        }
    }
    out
}

fn check_b(b: usize) -> Result<()> {
    if b == 0 {
        Err(Error::InvalidBlockLength)
    } else {
        Ok(())
    }
}

/// A located anomaly before its letters are copied out.
#[derive(Clone, Copy)]
struct Hit {
    start: usize,
    block_max: u32,
    blocker_position: usize,
    blocker_value: u32,
}

impl Hit {
    fn witness(self, word: &[u32], b: usize) -> AnomalyWitness {
        AnomalyWitness {
            block_start: self.start,
            b,
            block_letters: word[self.start..self.start + b].to_vec(),
            blocker_position: self.blocker_position,
            blocker_value: self.blocker_value,
        }
    }
}

/// Lazily yields every b-anomaly of `word` in order of block start. The
/// blocker is the prefix maximum, which is the largest element of the set
/// of earlier letters exceeding the block.
fn hits(word: &[u32], b: usize) -> impl Iterator<Item = Hit> + '_ {
    let maxima = window_extrema(word, b, |a, c| a > c);
    let mut prefix_max = 0u32;
    let mut prefix_pos = 0usize;
    // The window starting at 0-based index t has exactly t letters in front.
    (1..maxima.len()).filter_map(move |t| {
        if word[t - 1] > prefix_max {
            prefix_max = word[t - 1];
            prefix_pos = t;
        }
        (prefix_max > maxima[t]).then_some(Hit {
            start: t,
            block_max: maxima[t],
            blocker_position: prefix_pos,
            blocker_value: prefix_max,
        })
    })
}

/// In [`AnomalyMode::Single`] returns at most one witness: the block whose
/// largest letter is smallest. Letters are distinct, so the choice is unique.
/// [`AnomalyMode::All`] lists every block start admitting a witness.
pub fn find_b_anomaly(w: &Permutation, b: usize, mode: AnomalyMode) -> Result<Vec<AnomalyWitness>> {
    check_b(b)?;
    let word = w.word();
    Ok(match mode {
        AnomalyMode::Single => hits(word, b)
            .min_by_key(|h| h.block_max)
            .map(|h| h.witness(word, b))
            .into_iter()
            .collect(),
        AnomalyMode::All => hits(word, b).map(|h| h.witness(word, b)).collect(),
    })
}

/// The witness reported by [`AnomalyMode::Single`], if any.
pub fn b_anomaly_witness(w: &Permutation, b: usize) -> Result<Option<AnomalyWitness>> {
    Ok(find_b_anomaly(w, b, AnomalyMode::Single)?.pop())
}

/// The b-anomaly with the smallest block start, if any.
pub fn leftmost_b_anomaly(w: &Permutation, b: usize) -> Result<Option<AnomalyWitness>> {
    check_b(b)?;
    Ok(hits(w.word(), b).next().map(|h| h.witness(w.word(), b)))
}

/// Block starts `i` of every b-anomaly, without materializing witnesses.
pub fn anomaly_block_starts(w: &Permutation, b: usize) -> Result<Vec<usize>> {
    check_b(b)?;
    Ok(hits(w.word(), b).map(|h| h.start).collect())
}

pub fn all_b_anomalies(w: &Permutation, b: usize) -> Result<Vec<AnomalyWitness>> {
    find_b_anomaly(w, b, AnomalyMode::All)
}

pub fn has_b_anomaly(w: &Permutation, b: usize) -> Result<bool> {
    check_b(b)?;
    Ok(hits(w.word(), b).next().is_some())
}

/// The violation with the smallest victim position, ties broken by the
/// smallest block start.
pub fn theater_violation(s: &Permutation, b: usize) -> Result<Option<TheaterViolation>> {
    check_b(b)?;
    let word = s.word();
    let minima = window_extrema(word, b, |a, c| a < c);
    // best = max of the window minima over windows ending before the victim.
    let mut best = 0u32;
    for victim in b..word.len() {
        best = best.max(minima[victim - b]);
        if best > word[victim] {
            let target = word[victim];
            let j = minima[..=victim - b]
                .iter()
                .position(|&m| m > target)
                .expect("some window exceeds the victim");
            return Ok(Some(TheaterViolation {
                block_start: j,
                b,
                block_letters: word[j..j + b].to_vec(),
                victim_position: victim + 1,
                victim_value: target,
            }));
        }
    }
    Ok(None)
}

pub fn is_theater_admissible(s: &Permutation, b: usize) -> Result<bool> {
    Ok(theater_violation(s, b)?.is_none())
}

/// Which way to run the composed bijection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    ToTheater,
    ToBounded,
}

/// `rotate180(F(s))`. Sends permutations whose cycles all have length at
/// most `b` onto the theater-admissible permutations for `b`, for every `b`.
pub fn bounded_to_theater(s: &Permutation) -> Permutation {
    foata_forward(s).rotate180()
}

/// Inverse of [`bounded_to_theater`].
pub fn theater_to_bounded(s: &Permutation) -> Permutation {
    foata_inverse(&s.rotate180())
}

pub fn biject(s: &Permutation, direction: Direction) -> Permutation {
    match direction {
        Direction::ToTheater => bounded_to_theater(s),
        Direction::ToBounded => theater_to_bounded(s),
    }
}
