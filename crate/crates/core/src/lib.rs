//! Permutation combinatorics around the Foata correspondence and the
//! theater model.
//!
//! A permutation whose cycles all have length at most `b` is sent by
//! [`bounded_to_theater`] (the Foata map followed by a 180° rotation of the
//! point diagram) to a theater-admissible permutation for the same `b`, and
//! [`theater_to_bounded`] undoes it. The [`counting`] and [`theater_sim`]
//! modules provide independent brute-force and dynamical checks of the
//! shared cardinality `D_L^(b)`.

pub mod anomaly;
pub mod cli;
pub mod counting;
pub mod error;
pub mod foata;
pub mod perm;
pub mod theater_sim;
pub mod verify;

pub use anomaly::{
    all_b_anomalies, anomaly_block_starts, b_anomaly_witness, biject, bounded_to_theater, find_b_anomaly, has_b_anomaly,
    is_theater_admissible, leftmost_b_anomaly, theater_to_bounded, theater_violation, AnomalyMode,
    AnomalyWitness, Direction, TheaterViolation,
};
pub use counting::{
    count_bounded_cycles, count_class_brute, enumerate_class, sample_bounded, BoundedCycleSampler,
    CountScalar, CountTable, PermClass,
};
pub use error::{Error, ParseError, Result};
pub use foata::{
    cycle_decomposition, cycle_head_of, foata_forward, foata_inverse, max_cycle_length, Cycle,
    CycleDecomposition,
};
pub use perm::{parse_permutation, DiagramFormat, Permutation, PointDiagram, TextStyle};
pub use theater_sim::{
    exhaustive_full_occupancy, reachable_seats, simulate_random, trace_to_time_permutation,
    Outcome, SeatPolicy, SeatingState, SeatingTrace,
};

/// Arbitrary-precision count, never overflows.
pub type BigCount = num_bigint::BigUint;
/// Memo of `D_L^(b)` in arbitrary precision.
pub type BigCountTable = CountTable<BigCount>;
/// Memo of `D_L^(b)` in 64 bits; exact up to `L = 20`.
pub type U64CountTable = CountTable<u64>;
/// Memo of `D_L^(b)` in 128 bits; exact up to `L = 34`.
pub type U128CountTable = CountTable<u128>;
