//! Brute-force oracles written directly from the definitions. None of them
//! call into the library's kernels.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

/// Every word over `1..=n` with distinct letters, by recursive insertion.
pub fn all_words(n: usize) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u32 + 1);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Length of the orbit of `x` under repeated application.
fn orbit_len(word: &[u32], x: u32) -> usize {
    let mut y = word[x as usize - 1];
    let mut len = 1;
    while y != x {
        y = word[y as usize - 1];
        len += 1;
    }
    len
}

pub fn max_cycle(word: &[u32]) -> usize {
    (1..=word.len() as u32).map(|x| orbit_len(word, x)).max().unwrap_or(0)
}

/// Blocks `a_{i+1} … a_{i+b}` with some `a_j > max(block)`, `1 ≤ j ≤ i`.
pub fn is_anomaly_block(word: &[u32], b: usize, i: usize) -> bool {
    if i == 0 || i + b > word.len() {
        return false;
    }
    let block_max = word[i..i + b].iter().copied().max().unwrap();
    word[..i].iter().any(|&a| a > block_max)
}

pub fn anomaly_starts(word: &[u32], b: usize) -> Vec<usize> {
    (0..word.len()).filter(|&i| is_anomaly_block(word, b, i)).collect()
}

/// No `j, i` with `j + b < i` and `s(j+k) > s(i)` for all `1 ≤ k ≤ b`.
pub fn theater_admissible(word: &[u32], b: usize) -> bool {
    let n = word.len();
    for i in 1..=n {
        for j in 0..n {
            if j + b < i && (1..=b).all(|k| word[j + k - 1] > word[i - 1]) {
                return false;
            }
        }
    }
    true
}

/// `F(s)` assembled by hand: trace each cycle, start it at its maximum,
/// sort by maximum, concatenate.
pub fn foata_by_hand(word: &[u32]) -> Vec<u32> {
    let n = word.len();
    let mut seen = vec![false; n];
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    for x in 1..=n as u32 {
        if seen[x as usize - 1] {
            continue;
        }
        let mut cyc = vec![x];
        seen[x as usize - 1] = true;
        let mut y = word[x as usize - 1];
        while y != x {
            seen[y as usize - 1] = true;
            cyc.push(y);
            y = word[y as usize - 1];
        }
        let top = cyc.iter().position(|&v| v == *cyc.iter().max().unwrap()).unwrap();
        cyc.rotate_left(top);
        cycles.push(cyc);
    }
    cycles.sort_by_key(|c| c[0]);
    cycles.concat()
}

pub fn rotate_by_hand(word: &[u32]) -> Vec<u32> {
    let n = word.len() as u32;
    (1..=n).map(|i| n + 1 - word[(n + 1 - i) as usize - 1]).collect()
}

/// Seat orders that fill the row when nobody may pass `b` consecutive
/// occupied seats, found by replaying every ordering.
pub fn full_seat_orders(n: usize, b: usize) -> Vec<Vec<u32>> {
    all_words(n)
        .into_iter()
        .filter(|order| {
            let mut taken = vec![false; n];
            for &seat in order {
                let seat = seat as usize;
                // Blocked if seats 1..seat-1 contain b consecutive taken seats.
                let mut run = 0;
                for &t in &taken[..seat - 1] {
                    run = if t { run + 1 } else { 0 };
                    if run >= b {
                        return false;
                    }
                }
                taken[seat - 1] = true;
            }
            true
        })
        .collect()
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_theater"))
}

pub fn run_cli(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn theater")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}
