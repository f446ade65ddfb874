//! Twist words: named cycles, positive twist sequences, and the word
//! generators for the extended involutions.
//!
//! Cycle families, per copy `j` of a configuration:
//!
//! * `C[j,m]` — horizontal chain curves, `1 ≤ m ≤ 2h_j + 1`;
//! * `B[j,p]` — the central arm curves `1 ≤ p ≤ k_j`, plus the derived curve
//!   `B[j,0]`;
//! * `T[j]`, `X[j]` — the junction curves between copies `j` and `j+1`.
//!
//! A [`TwistWord`] is an ordered sequence of letters with exponents `±1`; the
//! leftmost letter is applied last (composition right to left), matching the
//! convention in which the generator words are written.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::config::SurfaceSpec;

/// Symbolic name of a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CycleId {
    /// Horizontal chain curve `c^j_m`.
    C { copy: u32, pos: u32 },
    /// Central arm curve `b^j_p` (`p = 0` is the derived conjugate curve).
    B { copy: u32, arm: u32 },
    /// Junction curve `x_j`.
    X { junction: u32 },
    /// Junction chain curve `t_j`, shared end of the chains of copies `j`
    /// and `j+1`.
    T { junction: u32 },
}

impl fmt::Display for CycleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleId::C { copy, pos } => write!(f, "C[{copy},{pos}]"),
            CycleId::B { copy, arm } => write!(f, "B[{copy},{arm}]"),
            CycleId::X { junction } => write!(f, "X[{junction}]"),
            CycleId::T { junction } => write!(f, "T[{junction}]"),
        }
    }
}

/// One letter of a twist word: a cycle with exponent `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub id: CycleId,
    pub inverse: bool,
}

impl Letter {
    pub fn positive(id: CycleId) -> Self {
        Letter { id, inverse: false }
    }

    pub fn inverse(id: CycleId) -> Self {
        Letter { id, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { id: self.id, inverse: !self.inverse }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// Ordered twist sequence; leftmost letter applied last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct TwistWord {
    letters: Vec<Letter>,
}

impl TwistWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        TwistWord { letters }
    }

    pub fn empty() -> Self {
        TwistWord::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        TwistWord { letters }
    }

    /// The word followed by itself.
    pub fn squared(&self) -> TwistWord {
        self.concat(self)
    }

    /// Formal inverse: reversed order, flipped exponents.
    pub fn inverted(&self) -> TwistWord {
        TwistWord { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    /// Rotate left by `n`: conjugation of the group element, same fibration.
    pub fn rotated(&self, n: usize) -> TwistWord {
        if self.letters.is_empty() {
            return self.clone();
        }
        let n = n % self.letters.len();
        let mut letters = self.letters[n..].to_vec();
        letters.extend_from_slice(&self.letters[..n]);
        TwistWord { letters }
    }

    pub fn all_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid configuration: {0}")]
    InvalidSpec(String),
    #[error("split index {i} out of range 0..={h}")]
    SplitOutOfRange { i: u32, h: u32 },
}

fn require_valid(spec: &SurfaceSpec) -> Result<(), WordError> {
    let report = crate::config::validate_spec(spec);
    if report.is_valid() {
        Ok(())
    } else {
        Err(WordError::InvalidSpec(report.to_string()))
    }
}

fn c(copy: u32, pos: u32) -> Letter {
    Letter::positive(CycleId::C { copy, pos })
}

fn b(copy: u32, arm: u32) -> Letter {
    Letter::positive(CycleId::B { copy, arm })
}

/// Group ranges for one copy. `extended` selects the alternate inventory, in
/// which the left groups reach `c_1` and the right groups reach `c_{2h+1}`
/// on every copy, not just the outer ones.
struct CopyGroups {
    copy: u32,
    split: u32,  // i_j
    chain_top: u32, // 2 h_j + 1
    arm: u32,    // k_j
    left_to_one: bool,
    right_to_top: bool,
}

impl CopyGroups {
    fn new(spec: &SurfaceSpec, j: usize, extended: bool) -> Self {
        let copy = spec.copy(j);
        let n = spec.copy_count();
        CopyGroups {
            copy: j as u32,
            split: copy.split_index(),
            chain_top: 2 * copy.horizontal_genus() + 1,
            arm: copy.vertical_genus,
            left_to_one: extended || j == 1,
            right_to_top: extended || j == n,
        }
    }

    /// `l_i`: inward left product, `c_{2i} … c_2` (down to `c_1` on the first
    /// copy).
    fn left_inward(&self) -> Vec<Letter> {
        let lo = if self.left_to_one { 1 } else { 2 };
        (lo..=2 * self.split).rev().map(|m| c(self.copy, m)).collect()
    }

    /// `l_o`: outward left product, reverse of `l_i`.
    fn left_outward(&self) -> Vec<Letter> {
        let mut v = self.left_inward();
        v.reverse();
        v
    }

    /// `r_i`: inward right product, `c_{2i+2} … c_{2h}` (up to `c_{2h+1}` on
    /// the last copy).
    fn right_inward(&self) -> Vec<Letter> {
        let hi = if self.right_to_top { self.chain_top } else { self.chain_top - 1 };
        (2 * self.split + 2..=hi).map(|m| c(self.copy, m)).collect()
    }

    /// `r_o`: outward right product, reverse of `r_i`.
    fn right_outward(&self) -> Vec<Letter> {
        let mut v = self.right_inward();
        v.reverse();
        v
    }

    /// `m`: the middle product `b_1 … b_k c_{2i+1}`; for `k = 0` just the
    /// central chain curve.
    fn middle(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = (1..=self.arm).map(|p| b(self.copy, p)).collect();
        v.push(c(self.copy, 2 * self.split + 1));
        v
    }

    /// `Y_i = r_i l_i`.
    fn y_inward(&self) -> Vec<Letter> {
        let mut v = self.right_inward();
        v.extend(self.left_inward());
        v
    }

    /// `Y_o = r_o l_o m`.
    fn y_outward(&self) -> Vec<Letter> {
        let mut v = self.right_outward();
        v.extend(self.left_outward());
        v.extend(self.middle());
        v
    }
}

fn theta_word_with(spec: &SurfaceSpec, extended: bool) -> Result<TwistWord, WordError> {
    require_valid(spec)?;
    let n = spec.copy_count();
    let groups: Vec<CopyGroups> =
        (1..=n).map(|j| CopyGroups::new(spec, j, extended)).collect();
    let mut letters = Vec::new();
    // Y^n_i, then the product terms for j = n down to 2, each
    // Y^{j-1}_i X_{j-1} b^j_0 Y^j_o, then the closing b^1_0 Y^1_o.
    letters.extend(groups[n - 1].y_inward());
    for j in (2..=n).rev() {
        letters.extend(groups[j - 2].y_inward());
        let junction = (j - 1) as u32;
        letters.push(Letter::positive(CycleId::X { junction }));
        letters.push(Letter::positive(CycleId::T { junction }));
        letters.push(b(j as u32, 0));
        letters.extend(groups[j - 1].y_outward());
    }
    letters.push(b(1, 0));
    letters.extend(groups[0].y_outward());
    Ok(TwistWord::new(letters))
}

/// The positive twist word for the involution of a configuration.
///
/// For a single copy this is the simple-case word
/// `r_i l_i b_0 r_o l_o b_1…b_k c_{2i+1}`; for `n` copies the per-copy words
/// are chained through the junction letters `x_j t_j`. Length is always
/// `4h + k + 2`.
pub fn theta_word(spec: &SurfaceSpec) -> Result<TwistWord, WordError> {
    theta_word_with(spec, false)
}

/// The alternate form of the involution word, for copies glued along
/// two-holed tori: every copy's left groups extend to `c_1` and right groups
/// to `c_{2h+1}`. Identical to [`theta_word`] when `n = 1`; for `n` copies
/// the length grows by `4(n-1)`.
pub fn theta_word_alternate(spec: &SurfaceSpec) -> Result<TwistWord, WordError> {
    theta_word_with(spec, true)
}

/// Positive twist word for the hyperelliptic involution on a closed genus-`h`
/// surface, split at chain index `i`:
/// `c_{2i+2}…c_{2h+1} c_{2i}…c_1 b_0 c_{2h+1}…c_{2i+2} c_1…c_{2i} c_{2i+1}`.
/// Length `4h + 2`.
pub fn hyperelliptic_word(h: u32, i: u32) -> Result<TwistWord, WordError> {
    if i > h {
        return Err(WordError::SplitOutOfRange { i, h });
    }
    let spec = SurfaceSpec::new(vec![crate::config::CopySpec::new(i, 0, h - i)]);
    theta_word(&spec)
}

/// Twist counts for a configuration: `(len θ, singular fibers of θ²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub theta_len: usize,
    pub squared_len: usize,
}

/// Generate θ and cross-check the closed-form counts `4h + k + 2` and
/// `8h + 2k + 4` against the actual word.
pub fn count_report(spec: &SurfaceSpec) -> Result<CountReport, WordError> {
    let word = theta_word(spec)?;
    let h = spec.horizontal_genus() as usize;
    let k = spec.vertical_genus() as usize;
    let report = CountReport { theta_len: word.len(), squared_len: word.squared().len() };
    debug_assert_eq!(report.theta_len, 4 * h + k + 2);
    debug_assert_eq!(report.squared_len, 8 * h + 2 * k + 4);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_spec;

    fn word_str(w: &TwistWord) -> String {
        w.to_string()
    }

    #[test]
    fn simple_case_with_arm() {
        // i = 0, h = 1, k = 2
        let w = theta_word(&parse_spec("(0 2 1)").unwrap()).unwrap();
        assert_eq!(
            word_str(&w),
            "C[1,2] C[1,3] B[1,0] C[1,3] C[1,2] B[1,1] B[1,2] C[1,1]"
        );
        assert_eq!(w.len(), 8);
        assert!(w.all_positive());
    }

    #[test]
    fn simple_case_hyperelliptic() {
        let w = theta_word(&parse_spec("(0 0 1)").unwrap()).unwrap();
        assert_eq!(word_str(&w), "C[1,2] C[1,3] B[1,0] C[1,3] C[1,2] C[1,1]");
        assert_eq!(w.len(), 6); // 4·1 + 0 + 2
    }

    #[test]
    fn two_copy_word() {
        let spec = parse_spec("(0 2 1,1 2 0)").unwrap();
        let w = theta_word(&spec).unwrap();
        assert_eq!(w.len(), 14); // 4·2 + 4 + 2
        assert_eq!(
            word_str(&w),
            "C[2,2] C[1,2] X[1] T[1] B[2,0] C[2,2] B[2,1] B[2,2] C[2,3] \
             B[1,0] C[1,2] B[1,1] B[1,2] C[1,1]"
        );
    }

    #[test]
    fn word_length_law() {
        for s in [
            "(0 2 1)",
            "(0 2 1,1 2 0)",
            "(1 4 1,1 2 1,1 6 2)",
            "(2 6 1,1 2 2,2 2 1,2 4 0)",
            "(0 0 1)",
            "(3 4 2,1 4 2)",
        ] {
            let spec = parse_spec(s).unwrap();
            let (h, k) =
                (spec.horizontal_genus() as usize, spec.vertical_genus() as usize);
            let w = theta_word(&spec).unwrap();
            assert_eq!(w.len(), 4 * h + k + 2, "{s}");
            assert_eq!(w.squared().len(), 8 * h + 2 * k + 4, "{s}");
            assert!(w.all_positive(), "{s}");
        }
    }

    #[test]
    fn squared_letter_counts() {
        let spec = parse_spec("(0 2 1,1 2 0)").unwrap();
        assert_eq!(count_report(&spec).unwrap().squared_len, 28);
        let spec = parse_spec("(1 4 1,1 2 1,1 6 2)").unwrap();
        assert_eq!(count_report(&spec).unwrap().squared_len, 84);
        let spec = parse_spec("(0 0 1)").unwrap();
        assert_eq!(count_report(&spec).unwrap().squared_len, 12);
    }

    #[test]
    fn letter_multiplicities() {
        // every chain letter twice except the central one; b_0 once per copy;
        // each arm letter once; junction letters once
        let spec = parse_spec("(1 4 1,1 2 1,1 6 2)").unwrap();
        let w = theta_word(&spec).unwrap();
        let mut counts = std::collections::BTreeMap::new();
        for l in w.letters() {
            *counts.entry(l.id).or_insert(0u32) += 1;
        }
        for (j, copy) in spec.copies().iter().enumerate() {
            let j = (j + 1) as u32;
            let mid = 2 * copy.split_index() + 1;
            let top = 2 * copy.horizontal_genus() + 1;
            for m in 1..=top {
                let expected = if m == mid {
                    1
                } else if (m == 1 && j > 1) || (m == top && j < 3) {
                    // junction-aliased ends are emitted as T letters
                    0
                } else {
                    2
                };
                assert_eq!(
                    counts.get(&CycleId::C { copy: j, pos: m }).copied().unwrap_or(0),
                    expected,
                    "copy {j} chain {m}"
                );
            }
            assert_eq!(counts[&CycleId::B { copy: j, arm: 0 }], 1);
            for p in 1..=copy.vertical_genus {
                assert_eq!(counts[&CycleId::B { copy: j, arm: p }], 1);
            }
        }
        for junction in 1..=2 {
            assert_eq!(counts[&CycleId::X { junction }], 1);
            assert_eq!(counts[&CycleId::T { junction }], 1);
        }
    }

    #[test]
    fn alternate_matches_main_for_single_copy() {
        for s in ["(0 2 1)", "(1 4 2)", "(0 0 1)"] {
            let spec = parse_spec(s).unwrap();
            assert_eq!(theta_word(&spec).unwrap(), theta_word_alternate(&spec).unwrap());
        }
    }

    #[test]
    fn alternate_adds_four_letters_per_junction() {
        let spec = parse_spec("(0 2 1,1 2 0)").unwrap();
        let main = theta_word(&spec).unwrap();
        let alt = theta_word_alternate(&spec).unwrap();
        assert_eq!(alt.len(), main.len() + 4);

        let spec = parse_spec("(1 4 1,1 2 1,1 6 2)").unwrap();
        let main = theta_word(&spec).unwrap();
        let alt = theta_word_alternate(&spec).unwrap();
        assert_eq!(alt.len(), main.len() + 8);
    }

    #[test]
    fn alternate_extends_group_ranges_at_junctions() {
        // the alternate word emits the chain-end letters on both sides of a
        // junction, inward and outward
        let spec = parse_spec("(0 2 1,1 2 0)").unwrap();
        let alt = theta_word_alternate(&spec).unwrap();
        let count = |id: CycleId| alt.letters().iter().filter(|l| l.id == id).count();
        assert_eq!(count(CycleId::C { copy: 1, pos: 3 }), 2);
        assert_eq!(count(CycleId::C { copy: 2, pos: 1 }), 2);
        assert_eq!(count(CycleId::T { junction: 1 }), 1);
        assert_eq!(count(CycleId::X { junction: 1 }), 1);
    }

    #[test]
    fn hyperelliptic_words() {
        let w = hyperelliptic_word(1, 0).unwrap();
        assert_eq!(word_str(&w), "C[1,2] C[1,3] B[1,0] C[1,3] C[1,2] C[1,1]");
        assert_eq!(hyperelliptic_word(3, 1).unwrap().len(), 14);
        assert!(hyperelliptic_word(2, 3).is_err());
        // matches the generator word of the corresponding (i, 0, h-i) spec
        for h in 1..=4u32 {
            for i in 0..=h {
                let spec = SurfaceSpec::new(vec![crate::config::CopySpec::new(i, 0, h - i)]);
                assert_eq!(
                    hyperelliptic_word(h, i).unwrap(),
                    theta_word(&spec).unwrap()
                );
            }
        }
    }

    #[test]
    fn square_is_concatenation() {
        let w = theta_word(&parse_spec("(0 2 1)").unwrap()).unwrap();
        let sq = w.squared();
        assert_eq!(sq.len(), 2 * w.len());
        assert_eq!(&sq.letters()[..w.len()], w.letters());
        assert_eq!(&sq.letters()[w.len()..], w.letters());
    }

    #[test]
    fn invalid_spec_rejected() {
        let spec = SurfaceSpec::new(vec![
            crate::config::CopySpec::new(1, 2, 1),
            crate::config::CopySpec::new(0, 2, 0),
        ]);
        assert!(theta_word(&spec).is_err());
    }
}
