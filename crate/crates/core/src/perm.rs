//! One-line permutations of `1..=L`, their text forms and the involutions
//! used by the bijection.
//!
//! Positions and values are 1-based on every public surface.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// A permutation `s` of `1..=L` stored as the word `s(1) s(2) … s(L)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "PermutationJson", into = "PermutationJson")]
pub struct Permutation {
    word: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PermutationJson {
    size: usize,
    word: Vec<u32>,
}

impl From<Permutation> for PermutationJson {
    fn from(p: Permutation) -> Self {
        PermutationJson { size: p.len(), word: p.word }
    }
}

impl TryFrom<PermutationJson> for Permutation {
    type Error = ParseError;

    fn try_from(json: PermutationJson) -> Result<Self, ParseError> {
        if json.size != json.word.len() {
            return Err(ParseError::OutOfRange {
                position: json.word.len().min(json.size) + 1,
                value: json.size as u64,
                size: json.word.len(),
            });
        }
        Permutation::from_word(json.word)
    }
}

/// Text style for [`Permutation::to_text`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TextStyle {
    /// `3,5,9,7`
    Comma,
    /// `3597`; only representable when every letter is a single digit.
    Compact,
}

impl Permutation {
    /// Validates `word` as a permutation of `1..=word.len()`.
    pub fn from_word(word: Vec<u32>) -> Result<Self, ParseError> {
        if word.is_empty() {
            return Err(ParseError::Empty);
        }
        let n = word.len();
        let mut seen = vec![false; n];
        for (idx, &v) in word.iter().enumerate() {
            if v == 0 || v as usize > n {
                return Err(ParseError::OutOfRange { position: idx + 1, value: v as u64, size: n });
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(ParseError::Duplicate { position: idx + 1, value: v as u64 });
            }
        }
        Ok(Permutation { word })
    }

    /// Caller guarantees `word` is a permutation of `1..=word.len()`.
    pub(crate) fn from_word_unchecked(word: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_word(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn identity(len: usize) -> Self {
        Permutation { word: (1..=len as u32).collect() }
    }

    /// The size `L`.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn into_word(self) -> Vec<u32> {
        self.word
    }

    /// `s(i)` for 1-based `i`. Panics when `i` is outside `1..=L`.
    pub fn apply(&self, i: usize) -> u32 {
        self.word[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// The inverse permutation `q` with `q(s(i)) = i`.
    pub fn invert(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { word: inv }
    }

    /// `s̃(i) = L + 1 − s(L + 1 − i)`: the point diagram turned by 180°.
    pub fn rotate180(&self) -> Permutation {
        let top = self.len() as u32 + 1;
        Permutation { word: self.word.iter().rev().map(|&v| top - v).collect() }
    }

    /// Value complement `c(i) = L + 1 − s(i)`.
    pub fn complement(&self) -> Permutation {
        let top = self.len() as u32 + 1;
        Permutation { word: self.word.iter().map(|&v| top - v).collect() }
    }

    /// The word read right to left.
    pub fn reverse(&self) -> Permutation {
        Permutation { word: self.word.iter().rev().copied().collect() }
    }

    pub fn to_text(&self, style: TextStyle) -> String {
        match style {
            TextStyle::Compact if self.len() <= 9 => {
                self.word.iter().map(|&v| char::from(b'0' + v as u8)).collect()
            }
            _ => self.to_string(),
        }
    }

    /// Compact digits when `L ≤ 9`, otherwise comma separated.
    pub fn to_short_text(&self) -> String {
        self.to_text(TextStyle::Compact)
    }

    pub fn point_diagram(&self) -> PointDiagram {
        PointDiagram {
            points: self.word.iter().enumerate().map(|(i, &v)| (i as u32 + 1, v)).collect(),
        }
    }

    pub fn render(&self, format: DiagramFormat) -> String {
        self.point_diagram().render(format)
    }
}

/// Comma-separated form, e.g. `3,5,9,7,2,4,6,8,1`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_permutation(s).map(|(p, _)| p)
    }
}

/// Parses comma/whitespace separated integers, or a compact digit string
/// such as `359724681`. Also reports which of the two forms was used.
pub fn parse_permutation(text: &str) -> Result<(Permutation, TextStyle), ParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseError::Empty);
    }
    let separated = text.contains(|c: char| c == ',' || c.is_whitespace());
    if !separated {
        let chars: Vec<char> = text.chars().collect();
        if chars.len() > 1 {
            if let Some(pos) = chars.iter().position(|c| !c.is_ascii_digit()) {
                return Err(ParseError::NotAnInteger {
                    position: pos + 1,
                    token: chars[pos].to_string(),
                });
            }
            if chars.len() > 9 {
                return Err(ParseError::CompactTooLong { len: chars.len() });
            }
            let word = chars.iter().map(|&c| c as u32 - '0' as u32).collect();
            return Permutation::from_word(word).map(|p| (p, TextStyle::Compact));
        }
    }
    let tokens: Vec<&str> = if text.contains(',') {
        text.split(',').map(str::trim).collect()
    } else {
        text.split_whitespace().collect()
    };
    let mut word = Vec::with_capacity(tokens.len());
    for (idx, tok) in tokens.iter().enumerate() {
        let not_int = || ParseError::NotAnInteger { position: idx + 1, token: tok.to_string() };
        if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
            return Err(not_int());
        }
        let v: u64 = tok.parse().map_err(|_| not_int())?;
        if v == 0 || v > tokens.len() as u64 {
            return Err(ParseError::OutOfRange { position: idx + 1, value: v, size: tokens.len() });
        }
        word.push(v as u32);
    }
    let style = if separated { TextStyle::Comma } else { TextStyle::Compact };
    Permutation::from_word(word).map(|p| (p, style))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramFormat {
    Ascii,
    Svg,
}

/// The graph `{(i, s(i))}` of a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointDiagram {
    pub points: Vec<(u32, u32)>,
}

impl PointDiagram {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn render(&self, format: DiagramFormat) -> String {
        match format {
            DiagramFormat::Ascii => self.to_ascii(),
            DiagramFormat::Svg => self.to_svg(),
        }
    }

    /// `L` rows, top row is value `L`; one `*` per column.
    pub fn to_ascii(&self) -> String {
        let n = self.len();
        let w = n.to_string().len();
        let mut out = String::new();
        for y in (1..=n as u32).rev() {
            let _ = write!(out, "{y:>w$} |");
            for &(_, v) in &self.points {
                let mark = if v == y { '*' } else { '.' };
                let _ = write!(out, "{:>w$}", mark, w = w + 1);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{:>w$} +{}", "", "-".repeat(n * (w + 1)));
        let _ = write!(out, "{:>w$}  ", "");
        for x in 1..=n {
            let _ = write!(out, "{x:>w$}", w = w + 1);
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
        out
    }

    /// Standalone SVG; ordinates grow upward.
    pub fn to_svg(&self) -> String {
        const CELL: u32 = 40;
        const MARGIN: u32 = 40;
        let n = self.len() as u32;
        let size = 2 * MARGIN + n * CELL;
        let cx = |i: u32| MARGIN + (i - 1) * CELL + CELL / 2;
        let cy = |v: u32| MARGIN + (n - v) * CELL + CELL / 2;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let _ = writeln!(out, r#"  <rect width="{size}" height="{size}" fill="white"/>"#);
        let _ = writeln!(out, r##"  <g stroke="#cccccc" stroke-width="1">"##);
        for k in 0..=n {
            let off = MARGIN + k * CELL;
            let end = MARGIN + n * CELL;
            let _ = writeln!(out, r#"    <line x1="{off}" y1="{MARGIN}" x2="{off}" y2="{end}"/>"#);
            let _ = writeln!(out, r#"    <line x1="{MARGIN}" y1="{off}" x2="{end}" y2="{off}"/>"#);
        }
        out.push_str("  </g>\n");
        let _ = writeln!(
            out,
            r#"  <g font-family="sans-serif" font-size="14" text-anchor="middle" fill="black">"#
        );
        for k in 1..=n {
            let _ = writeln!(
                out,
                r#"    <text x="{}" y="{}">{k}</text>"#,
                cx(k),
                MARGIN + n * CELL + 25
            );
            let _ = writeln!(out, r#"    <text x="{}" y="{}">{k}</text>"#, MARGIN - 15, cy(k) + 5);
        }
        out.push_str("  </g>\n");
        let _ = writeln!(out, r#"  <g fill="black">"#);
        for &(i, v) in &self.points {
            let _ = writeln!(out, r#"    <circle cx="{}" cy="{}" r="8"/>"#, cx(i), cy(v));
        }
        out.push_str("  </g>\n</svg>\n");
        out
    }
}
