//! Canonical cycle decomposition and the Foata correspondence.
//!
//! Every cycle is written starting from its largest element (the cycle
//! head) and the cycles are listed by increasing head. Concatenating them
//! gives `F(s)`. The heads of the preimage are exactly the left-to-right
//! maxima of `F(s)`, which is how the inverse is computed.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, ParseError, Result};
use crate::perm::Permutation;

/// A cycle written head first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Cycle {
    elements: Vec<u32>,
}

impl Cycle {
    /// Rotates `elements` so the maximum comes first. `elements` must be
    /// nonempty.
    fn head_first(mut elements: Vec<u32>) -> Cycle {
        let pos = elements
            .iter()
            .enumerate()
            .max_by_key(|&(_, &v)| v)
            .map(|(i, _)| i)
            .expect("cycle is nonempty");
        elements.rotate_left(pos);
        Cycle { elements }
    }

    pub fn head(&self) -> u32 {
        self.elements[0]
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Canonical cycle decomposition, fixed points included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CycleDecomposition {
    cycles: Vec<Cycle>,
}

impl CycleDecomposition {
    pub fn of(p: &Permutation) -> CycleDecomposition {
        let n = p.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        // Starting from the largest unseen element visits heads in
        // decreasing order.
        for start in (1..=n).rev() {
            if seen[start - 1] {
                continue;
            }
            let mut elements = Vec::new();
            let mut x = start;
            while !seen[x - 1] {
                seen[x - 1] = true;
                elements.push(x as u32);
                x = p.apply(x) as usize;
            }
            cycles.push(Cycle { elements });
        }
        cycles.reverse();
        CycleDecomposition { cycles }
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    /// Total number of elements `L`.
    pub fn size(&self) -> usize {
        self.cycles.iter().map(Cycle::len).sum()
    }

    pub fn max_cycle_length(&self) -> usize {
        self.cycles.iter().map(Cycle::len).max().unwrap_or(0)
    }

    /// Cycle lengths sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles.iter().map(Cycle::len).collect();
        lens.sort_unstable();
        lens
    }

    /// Rebuilds `s` from its cycles.
    pub fn to_permutation(&self) -> Permutation {
        let mut word = vec![0u32; self.size()];
        for c in &self.cycles {
            let e = &c.elements;
            for (k, &x) in e.iter().enumerate() {
                word[x as usize - 1] = e[(k + 1) % e.len()];
            }
        }
        Permutation::from_word_unchecked(word)
    }

    /// The cycles concatenated with the brackets removed, i.e. `F(s)`.
    pub fn flatten(&self) -> Permutation {
        Permutation::from_word_unchecked(
            self.cycles.iter().flat_map(|c| c.elements.iter().copied()).collect(),
        )
    }

    /// Cuts `w` immediately before each left-to-right maximum.
    pub fn split_at_records(w: &Permutation) -> CycleDecomposition {
        let mut cycles: Vec<Cycle> = Vec::new();
        let mut best = 0;
        for &a in w.word() {
            if a > best {
                best = a;
                cycles.push(Cycle { elements: vec![a] });
            } else {
                cycles.last_mut().expect("first letter is a record").elements.push(a);
            }
        }
        CycleDecomposition { cycles }
    }

    /// Compact rendering such as `[52][764][8][913]`, available when `L ≤ 9`.
    pub fn to_compact(&self) -> Option<String> {
        if self.size() > 9 {
            return None;
        }
        let mut out = String::new();
        for c in &self.cycles {
            out.push('[');
            out.extend(c.elements.iter().map(|&v| char::from(b'0' + v as u8)));
            out.push(']');
        }
        Some(out)
    }
}

/// `[5 2][7 6 4][8][9 1 3]`
impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            f.write_str("[")?;
            for (k, v) in c.elements.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// Accepts cycles in any rotation and order and canonicalizes them. The
/// compact digit form `[52][764][8][913]` is read only when no group contains
/// a separator and the total number of letters is at most 9.
impl FromStr for CycleDecomposition {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let text = s.trim();
        if text.is_empty() {
            return Err(ParseError::Empty);
        }
        let mut groups: Vec<&str> = Vec::new();
        let mut rest = text;
        let mut offset = 0;
        while !rest.is_empty() {
            let trimmed = rest.trim_start();
            offset += rest.len() - trimmed.len();
            rest = trimmed;
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('[') {
                return Err(ParseError::CycleSyntax { position: offset + 1, reason: "expected '['" });
            }
            let close = rest.find(']').ok_or(ParseError::CycleSyntax {
                position: offset + 1,
                reason: "unclosed '['",
            })?;
            let inner = &rest[1..close];
            if inner.contains('[') {
                return Err(ParseError::CycleSyntax { position: offset + 1, reason: "nested '['" });
            }
            if inner.trim().is_empty() {
                return Err(ParseError::CycleSyntax { position: offset + 1, reason: "empty cycle" });
            }
            groups.push(inner);
            offset += close + 1;
            rest = &rest[close + 1..];
        }

        let separated = groups.iter().any(|g| g.trim().contains(|c: char| c == ',' || c.is_whitespace()));
        let raw: Vec<Vec<String>> = if separated {
            groups
                .iter()
                .map(|g| {
                    let g = g.trim();
                    if g.contains(',') {
                        g.split(',').map(|t| t.trim().to_string()).collect()
                    } else {
                        g.split_whitespace().map(str::to_string).collect()
                    }
                })
                .collect()
        } else {
            let total: usize = groups.iter().map(|g| g.trim().chars().count()).sum();
            let multi_digit = groups.iter().any(|g| g.trim().chars().count() > 1);
            if multi_digit && total > 9 {
                return Err(ParseError::CompactTooLong { len: total });
            }
            if multi_digit {
                groups.iter().map(|g| g.trim().chars().map(String::from).collect()).collect()
            } else {
                groups.iter().map(|g| vec![g.trim().to_string()]).collect()
            }
        };

        let size: usize = raw.iter().map(Vec::len).sum();
        let mut seen = vec![false; size];
        let mut cycles = Vec::with_capacity(raw.len());
        let mut position = 0;
        for group in raw {
            let mut elements = Vec::with_capacity(group.len());
            for tok in group {
                position += 1;
                if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(ParseError::NotAnInteger { position, token: tok });
                }
                let v: u64 = tok
                    .parse()
                    .map_err(|_| ParseError::NotAnInteger { position, token: tok.clone() })?;
                if v == 0 || v > size as u64 {
                    return Err(ParseError::OutOfRange { position, value: v, size });
                }
                if std::mem::replace(&mut seen[v as usize - 1], true) {
                    return Err(ParseError::Duplicate { position, value: v });
                }
                elements.push(v as u32);
            }
            cycles.push(Cycle::head_first(elements));
        }
        cycles.sort_by_key(Cycle::head);
        Ok(CycleDecomposition { cycles })
    }
}

pub fn cycle_decomposition(p: &Permutation) -> CycleDecomposition {
    CycleDecomposition::of(p)
}

/// `F(s)`: canonical cycles of `s`, brackets removed.
pub fn foata_forward(p: &Permutation) -> Permutation {
    CycleDecomposition::of(p).flatten()
}

/// The unique `s` with `foata_forward(s) == w`.
pub fn foata_inverse(w: &Permutation) -> Permutation {
    CycleDecomposition::split_at_records(w).to_permutation()
}

pub fn max_cycle_length(p: &Permutation) -> usize {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut best = 0;
    for start in 1..=n {
        let mut len = 0;
        let mut x = start;
        while !seen[x - 1] {
            seen[x - 1] = true;
            len += 1;
            x = p.apply(x) as usize;
        }
        best = best.max(len);
    }
    best
}

/// Largest letter of `w` at or left of the 1-based `position`. This is the
/// head of the cycle containing `w(position)` in `foata_inverse(w)`.
pub fn cycle_head_of(w: &Permutation, position: usize) -> Result<u32> {
    if position == 0 || position > w.len() {
        return Err(Error::PositionOutOfRange { position, size: w.len() });
    }
    Ok(w.word()[..position].iter().copied().max().expect("nonempty prefix"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn running_example() {
        let s = p("359724681");
        let dec = cycle_decomposition(&s);
        assert_eq!(dec.to_string(), "[5 2][7 6 4][8][9 1 3]");
        assert_eq!(dec.to_compact().unwrap(), "[52][764][8][913]");
        assert_eq!(foata_forward(&s), p("527648913"));
        assert_eq!(foata_inverse(&p("527648913")), s);
        assert_eq!(max_cycle_length(&s), 3);
        assert_eq!(dec.cycle_type(), vec![1, 2, 3, 3]);
    }

    #[test]
    fn small_cases() {
        assert_eq!(cycle_decomposition(&p("231")).to_string(), "[3 1 2]");
        assert_eq!(cycle_decomposition(&Permutation::identity(3)).to_string(), "[1][2][3]");
        assert_eq!(foata_forward(&p("321")), p("231"));
        assert_eq!(foata_inverse(&p("231")), p("321"));
        assert_eq!(foata_forward(&Permutation::identity(6)), Permutation::identity(6));
        assert_eq!(foata_inverse(&Permutation::identity(6)), Permutation::identity(6));
        assert_eq!(max_cycle_length(&p("231")), 3);
        assert_eq!(max_cycle_length(&Permutation::identity(4)), 1);
    }

    #[test]
    fn cycle_heads_from_prefix_maxima() {
        let w = p("527648913");
        assert_eq!(cycle_head_of(&w, 8), Ok(9));
        assert_eq!(cycle_head_of(&w, 2), Ok(5));
        for k in 1..=5 {
            assert_eq!(cycle_head_of(&Permutation::identity(5), k), Ok(k as u32));
        }
        assert_eq!(cycle_head_of(&w, 0), Err(Error::PositionOutOfRange { position: 0, size: 9 }));
        assert_eq!(cycle_head_of(&w, 10), Err(Error::PositionOutOfRange { position: 10, size: 9 }));
    }

    #[test]
    fn parse_cycle_notation() {
        let canonical: CycleDecomposition = "[5 2][7 6 4][8][9 1 3]".parse().unwrap();
        assert_eq!(canonical.to_permutation(), p("359724681"));
        let compact: CycleDecomposition = "[52][764][8][913]".parse().unwrap();
        assert_eq!(compact, canonical);
        let scrambled: CycleDecomposition = "[1 3 9][2 5][4 7 6][8]".parse().unwrap();
        assert_eq!(scrambled, canonical);
        let big: CycleDecomposition = "[10 1][2][3][4][5][6][7][8][9]".parse().unwrap();
        assert_eq!(big.size(), 10);
        assert_eq!(big.cycles()[8].elements(), &[10, 1]);

        assert!(matches!("".parse::<CycleDecomposition>(), Err(ParseError::Empty)));
        assert!(matches!("[1 2".parse::<CycleDecomposition>(), Err(ParseError::CycleSyntax { .. })));
        assert!(matches!("1 2".parse::<CycleDecomposition>(), Err(ParseError::CycleSyntax { .. })));
        assert!(matches!("[]".parse::<CycleDecomposition>(), Err(ParseError::CycleSyntax { .. })));
        assert!(matches!(
            "[1 2][2]".parse::<CycleDecomposition>(),
            Err(ParseError::Duplicate { position: 3, value: 2 })
        ));
        assert!(matches!(
            "[1 4][2]".parse::<CycleDecomposition>(),
            Err(ParseError::OutOfRange { value: 4, .. })
        ));
        assert!(matches!(
            "[12345][67890][1]".parse::<CycleDecomposition>(),
            Err(ParseError::CompactTooLong { len: 11 })
        ));
    }

    #[test]
    fn json_form_is_nested_arrays() {
        let dec = cycle_decomposition(&p("359724681"));
        assert_eq!(serde_json::to_string(&dec).unwrap(), "[[5,2],[7,6,4],[8],[9,1,3]]");
    }
}
