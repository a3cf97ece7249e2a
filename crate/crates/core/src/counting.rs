//! Counting, exhaustive enumeration and uniform sampling for the three
//! permutation classes that share the cardinality `D_L^(b)`.
//!
//! The count of permutations of `L` elements whose cycles all have length at
//! most `b` satisfies
//!
//! ```text
//! D_0 = 1,   D_L = Σ_{k=1}^{min(b, L)} (L−1)(L−2)⋯(L−k+1) · D_{L−k}
//! ```
//!
//! obtained by choosing the length `k` of the cycle through `L` and its
//! `k − 1` other members in order. The table is generic over the integer
//! type; fixed-width types report [`Error::Overflow`] instead of wrapping.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive, One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::anomaly::{has_b_anomaly, is_theater_admissible};
use crate::error::{Error, Result};
use crate::foata::max_cycle_length;
use crate::perm::Permutation;

/// Exact unsigned integers usable as counts.
pub trait CountScalar: Clone + Zero + One + CheckedAdd + CheckedMul + FromPrimitive + fmt::Display {}

impl<T> CountScalar for T where T: Clone + Zero + One + CheckedAdd + CheckedMul + FromPrimitive + fmt::Display {}

/// Memoized `(L, b) → D_L^(b)`.
///
/// Lookups extend the memo through `&mut self`, so a table belongs to one
/// thread at a time; wrap it in a lock to share it.
#[derive(Clone, Debug, Default)]
pub struct CountTable<T> {
    rows: BTreeMap<usize, Vec<T>>,
}

impl<T: CountScalar> CountTable<T> {
    pub fn new() -> Self {
        CountTable { rows: BTreeMap::new() }
    }

    /// `D_0^(b) … D_len^(b)`.
    pub fn row(&mut self, len: usize, b: usize) -> Result<&[T]> {
        if b == 0 {
            return Err(Error::InvalidBlockLength);
        }
        let row = self.rows.entry(b).or_insert_with(|| vec![T::one()]);
        while row.len() <= len {
            let m = row.len();
            let mut total = T::zero();
            // coef = (m−1)(m−2)⋯(m−k+1)
            let mut coef = T::one();
            for k in 1..=b.min(m) {
                if k > 1 {
                    let factor = T::from_usize(m - k + 1).ok_or(Error::Overflow)?;
                    coef = coef.checked_mul(&factor).ok_or(Error::Overflow)?;
                }
                let term = coef.checked_mul(&row[m - k]).ok_or(Error::Overflow)?;
                total = total.checked_add(&term).ok_or(Error::Overflow)?;
            }
            row.push(total);
        }
        Ok(&row[..=len])
    }

    pub fn get(&mut self, len: usize, b: usize) -> Result<T> {
        Ok(self.row(len, b)?[len].clone())
    }
}

/// Number of permutations of `len` elements with every cycle of length at
/// most `b`.
pub fn count_bounded_cycles<T: CountScalar>(len: usize, b: usize) -> Result<T> {
    CountTable::<T>::new().get(len, b)
}

/// The three classes counted by `D_L^(b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PermClass {
    /// Every cycle has length at most `b`.
    BoundedCycles,
    /// No `b` consecutive positions, all before some position `i`, hold
    /// letters exceeding `s(i)`.
    TheaterAdmissible,
    /// No b-anomaly.
    AnomalyFree,
}

impl PermClass {
    pub const ALL: [PermClass; 3] =
        [PermClass::BoundedCycles, PermClass::TheaterAdmissible, PermClass::AnomalyFree];

    pub fn as_str(self) -> &'static str {
        match self {
            PermClass::BoundedCycles => "bounded-cycles",
            PermClass::TheaterAdmissible => "theater-admissible",
            PermClass::AnomalyFree => "anomaly-free",
        }
    }

    /// Membership test. `b` must be at least 1.
    pub fn contains(self, p: &Permutation, b: usize) -> Result<bool> {
        match self {
            PermClass::BoundedCycles => {
                if b == 0 {
                    return Err(Error::InvalidBlockLength);
                }
                Ok(max_cycle_length(p) <= b)
            }
            PermClass::TheaterAdmissible => is_theater_admissible(p, b),
            PermClass::AnomalyFree => Ok(!has_b_anomaly(p, b)?),
        }
    }
}

impl fmt::Display for PermClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PermClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.replace('_', "-").as_str() {
            "bounded-cycles" | "bounded" => Ok(PermClass::BoundedCycles),
            "theater-admissible" | "theater" | "admissible" => Ok(PermClass::TheaterAdmissible),
            "anomaly-free" => Ok(PermClass::AnomalyFree),
            other => Err(format!("unknown class '{other}'")),
        }
    }
}

/// Default largest `L` accepted for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 9;
/// No cap can be raised past this.
pub const HARD_ENUMERATION_CAP: usize = 12;

/// All permutations of `1..=len` in lexicographic order of the word.
#[derive(Clone, Debug)]
pub struct Lexicographic {
    next: Option<Vec<u32>>,
}

impl Lexicographic {
    pub fn new(len: usize) -> Self {
        Lexicographic { next: Some((1..=len as u32).collect()) }
    }
}

impl Iterator for Lexicographic {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if let Some(pivot) = succ.windows(2).rposition(|w| w[0] < w[1]) {
            let swap = succ.iter().rposition(|&v| v > succ[pivot]).expect("pivot has a larger suffix letter");
            succ.swap(pivot, swap);
            succ[pivot + 1..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation::from_word_unchecked(current))
    }
}

/// Lazy stream of the members of a class, in lexicographic order.
pub struct ClassMembers {
    inner: Lexicographic,
    class: PermClass,
    b: usize,
}

impl Iterator for ClassMembers {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let (class, b) = (self.class, self.b);
        self.inner.by_ref().find(|p| class.contains(p, b).expect("b validated on construction"))
    }
}

/// Streams the class members of size `len` by filtering all `len!` words.
/// Refuses `len` above `cap` (itself clamped to [`HARD_ENUMERATION_CAP`]).
pub fn enumerate_class_capped(len: usize, b: usize, class: PermClass, cap: usize) -> Result<ClassMembers> {
    if b == 0 {
        return Err(Error::InvalidBlockLength);
    }
    if len == 0 {
        return Err(Error::InvalidLength);
    }
    let cap = cap.min(HARD_ENUMERATION_CAP);
    if len > cap {
        return Err(Error::Infeasible { length: len, cap });
    }
    Ok(ClassMembers { inner: Lexicographic::new(len), class, b })
}

pub fn enumerate_class(len: usize, b: usize, class: PermClass) -> Result<ClassMembers> {
    enumerate_class_capped(len, b, class, DEFAULT_ENUMERATION_CAP)
}

pub fn count_class_brute_capped(len: usize, b: usize, class: PermClass, cap: usize) -> Result<BigUint> {
    Ok(BigUint::from(enumerate_class_capped(len, b, class, cap)?.count()))
}

/// Size of a class by exhaustive enumeration.
pub fn count_class_brute(len: usize, b: usize, class: PermClass) -> Result<BigUint> {
    count_class_brute_capped(len, b, class, DEFAULT_ENUMERATION_CAP)
}

/// Identifier of the generator behind [`sampler_rng`].
pub const SAMPLER_RNG: &str = "chacha8";

/// The seeded generator used by the sampler and the simulator.
pub fn sampler_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform sampler over permutations with every cycle of length at most
/// `b`.
///
/// The cycle through the largest remaining element has length `k` with
/// probability `(m−1)!/(m−k)! · D_{m−k} / D_m`; its other `k − 1` members are
/// an ordered draw without replacement, and the rest is sampled recursively.
#[derive(Clone, Debug)]
pub struct BoundedCycleSampler {
    len: usize,
    b: usize,
    counts: Vec<BigUint>,
}

impl BoundedCycleSampler {
    pub fn new(len: usize, b: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidLength);
        }
        let counts = CountTable::<BigUint>::new().row(len, b)?.to_vec();
        Ok(BoundedCycleSampler { len, b, counts })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut word = vec![0u32; self.len];
        // Kept sorted so the largest remaining element is last.
        let mut remaining: Vec<u32> = (1..=self.len as u32).collect();
        while let Some(top) = remaining.pop() {
            let m = remaining.len() + 1;
            let mut ticket = rng.gen_biguint_below(&self.counts[m]);
            let mut coef = BigUint::one();
            let mut cycle_len = 1;
            for k in 1..=self.b.min(m) {
                if k > 1 {
                    coef *= (m - k + 1) as u64;
                }
                let weight = &coef * &self.counts[m - k];
                if ticket < weight {
                    cycle_len = k;
                    break;
                }
                ticket -= weight;
            }
            let mut prev = top;
            for _ in 1..cycle_len {
                let next = remaining.remove(rng.gen_range(0..remaining.len()));
                word[prev as usize - 1] = next;
                prev = next;
            }
            word[prev as usize - 1] = top;
        }
        Permutation::from_word_unchecked(word)
    }
}

/// One uniform draw from `{s ∈ S_len : max cycle length ≤ b}`, reproducible
/// from `seed`.
pub fn sample_bounded(len: usize, b: usize, seed: u64) -> Result<Permutation> {
    Ok(BoundedCycleSampler::new(len, b)?.sample(&mut sampler_rng(seed)))
}
