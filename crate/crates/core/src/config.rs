//! Surface configuration strings and genus bookkeeping.
//!
//! A configuration lists, copy by copy, the left genus `l_j`, the vertical
//! genus `k_j` (always even) and the right genus `r_j`:
//!
//! ```text
//! (l k r,l k r,...)
//! ```
//!
//! Fields are separated by one or more spaces, copies by commas, and the
//! surrounding parentheses are required. Derived bookkeeping: `h_j = l_j +
//! r_j`, the chain split index `i_j = l_j`, `h = Σ h_j`, `k = Σ k_j`, and the
//! total genus `g = h + k`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// One glued copy: `(left genus, vertical genus, right genus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CopySpec {
    pub left_genus: u32,
    pub vertical_genus: u32,
    pub right_genus: u32,
}

impl CopySpec {
    pub fn new(left_genus: u32, vertical_genus: u32, right_genus: u32) -> Self {
        CopySpec { left_genus, vertical_genus, right_genus }
    }

    /// Horizontal genus `h_j = l_j + r_j`.
    pub fn horizontal_genus(&self) -> u32 {
        self.left_genus + self.right_genus
    }

    /// Chain split index `i_j = l_j`: the central chain curve of this copy is
    /// `c_{2i_j+1}`, between the left and right handle blocks.
    pub fn split_index(&self) -> u32 {
        self.left_genus
    }
}

/// An ordered list of copies; the whole surface configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceSpec {
    copies: Vec<CopySpec>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Invalid(ValidationReport),
}

/// Outcome of structural validation: violations (fatal) plus notes
/// (informational, e.g. which copies take the `k = 0` word variant).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "valid")?;
        } else {
            write!(f, "{}", self.violations.join("; "))?;
        }
        for note in &self.notes {
            write!(f, " [{note}]")?;
        }
        Ok(())
    }
}

impl SurfaceSpec {
    /// Assemble a spec without validating; see [`validate_spec`].
    pub fn new(copies: Vec<CopySpec>) -> Self {
        SurfaceSpec { copies }
    }

    pub fn copies(&self) -> &[CopySpec] {
        &self.copies
    }

    pub fn copy_count(&self) -> usize {
        self.copies.len()
    }

    pub fn copy(&self, j: usize) -> &CopySpec {
        &self.copies[j - 1]
    }

    /// Horizontal genus `h = Σ (l_j + r_j)`.
    pub fn horizontal_genus(&self) -> u32 {
        self.copies.iter().map(CopySpec::horizontal_genus).sum()
    }

    /// Vertical genus `k = Σ k_j`.
    pub fn vertical_genus(&self) -> u32 {
        self.copies.iter().map(|c| c.vertical_genus).sum()
    }

    /// Total genus `g = h + k`.
    pub fn total_genus(&self) -> u32 {
        self.horizontal_genus() + self.vertical_genus()
    }

    /// Canonical configuration string (single spaces, no padding).
    pub fn canonical_string(&self) -> String {
        let body = self
            .copies
            .iter()
            .map(|c| format!("{} {} {}", c.left_genus, c.vertical_genus, c.right_genus))
            .collect::<Vec<_>>()
            .join(",");
        format!("({body})")
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// Per-copy and total genus bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusSummary {
    pub copies: usize,
    /// `(h_j, i_j, k_j)` per copy.
    pub per_copy: Vec<(u32, u32, u32)>,
    pub horizontal: u32,
    pub vertical: u32,
    pub total: u32,
}

/// Parse a configuration string, then validate it.
pub fn parse_spec(text: &str) -> Result<SurfaceSpec, SpecError> {
    let spec = parse_syntax(text)?;
    let report = validate_spec(&spec);
    if report.is_valid() {
        Ok(spec)
    } else {
        Err(SpecError::Invalid(report))
    }
}

fn parse_syntax(text: &str) -> Result<SurfaceSpec, SpecError> {
    let bytes = text.as_bytes();
    let err = |pos: usize, msg: &str| SpecError::Parse { pos, msg: msg.to_string() };
    let mut pos = 0;
    if bytes.first() != Some(&b'(') {
        return Err(err(0, "expected '('"));
    }
    pos += 1;
    let mut copies = Vec::new();
    loop {
        let mut triple = [0u32; 3];
        for (f, slot) in triple.iter_mut().enumerate() {
            if f > 0 {
                if bytes.get(pos) != Some(&b' ') {
                    return Err(err(pos, "expected space between fields"));
                }
                while bytes.get(pos) == Some(&b' ') {
                    pos += 1;
                }
            }
            let start = pos;
            while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
                pos += 1;
            }
            if pos == start {
                return Err(err(start, "expected a nonnegative integer"));
            }
            *slot = text[start..pos]
                .parse::<u32>()
                .map_err(|_| err(start, "integer out of range"))?;
        }
        copies.push(CopySpec::new(triple[0], triple[1], triple[2]));
        match bytes.get(pos) {
            Some(b',') => pos += 1,
            Some(b')') => {
                pos += 1;
                break;
            }
            _ => return Err(err(pos, "expected ',' or ')'")),
        }
    }
    if pos != bytes.len() {
        return Err(err(pos, "trailing input after ')'"));
    }
    Ok(SurfaceSpec::new(copies))
}

/// Structural validation. Empty violation list iff all invariants hold:
///
/// * at least one copy;
/// * every `k_j` even (`k_j = 0` selects the hyperelliptic word variant for
///   that copy, noted);
/// * `l_j ≥ 1` for every copy except possibly the first, `r_j ≥ 1` for every
///   copy except possibly the last (inner copies need chain room on both
///   sides of their central curve);
/// * `h_j = l_j + r_j ≥ 1` for every copy — a copy with no horizontal
///   handles has a degenerate chain and admits no cycle catalog.
pub fn validate_spec(spec: &SurfaceSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = spec.copy_count();
    if n == 0 {
        report.violations.push("configuration must contain at least one copy".to_string());
        return report;
    }
    for (idx, c) in spec.copies().iter().enumerate() {
        let j = idx + 1;
        if c.vertical_genus % 2 != 0 {
            report
                .violations
                .push(format!("copy {j}: vertical genus must be even (got {})", c.vertical_genus));
        }
        if j > 1 && c.left_genus == 0 {
            report.violations.push(format!(
                "copy {j}: left genus must be ≥ 1 for every copy except the first"
            ));
        }
        if j < n && c.right_genus == 0 {
            report.violations.push(format!(
                "copy {j}: right genus must be ≥ 1 for every copy except the last"
            ));
        }
        if c.horizontal_genus() == 0 {
            report.violations.push(format!("copy {j}: horizontal genus l + r must be ≥ 1"));
        }
        if c.vertical_genus == 0 {
            report.notes.push(format!("copy {j}: k = 0, hyperelliptic word variant"));
        }
    }
    report
}

/// Genus bookkeeping for a valid spec.
pub fn genus_summary(spec: &SurfaceSpec) -> GenusSummary {
    GenusSummary {
        copies: spec.copy_count(),
        per_copy: spec
            .copies()
            .iter()
            .map(|c| (c.horizontal_genus(), c.split_index(), c.vertical_genus))
            .collect(),
        horizontal: spec.horizontal_genus(),
        vertical: spec.vertical_genus(),
        total: spec.total_genus(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reference_inputs() {
        let spec = parse_spec("(1 4 1,1 2 1,1 6 2)").unwrap();
        assert_eq!(
            spec.copies(),
            &[CopySpec::new(1, 4, 1), CopySpec::new(1, 2, 1), CopySpec::new(1, 6, 2)]
        );
        let spec = parse_spec("(2 6 1,1 2 2,2 2 1,2 4 0)").unwrap();
        assert_eq!(spec.copy_count(), 4);
        assert_eq!(spec.copy(4).right_genus, 0);
    }

    #[test]
    fn rejects_odd_vertical_genus() {
        let err = parse_spec("(0 3 1)").unwrap_err();
        match err {
            SpecError::Invalid(report) => {
                assert!(report.violations[0].contains("vertical genus must be even"));
            }
            other => panic!("expected validation failure, got {other:?}"),
        }
    }

    #[test]
    fn parse_error_positions() {
        assert!(matches!(parse_spec("0 2 1"), Err(SpecError::Parse { pos: 0, .. })));
        assert!(matches!(parse_spec("(0 2 1"), Err(SpecError::Parse { pos: 6, .. })));
        assert!(matches!(parse_spec("(0 2 1) "), Err(SpecError::Parse { pos: 7, .. })));
        assert!(matches!(parse_spec("(0-2 1)"), Err(SpecError::Parse { .. })));
        assert!(matches!(parse_spec("(0 2 1,)"), Err(SpecError::Parse { .. })));
    }

    #[test]
    fn multiple_spaces_allowed_between_fields() {
        let spec = parse_spec("(0  2   1)").unwrap();
        assert_eq!(spec.copies(), &[CopySpec::new(0, 2, 1)]);
        assert_eq!(spec.canonical_string(), "(0 2 1)");
    }

    #[test]
    fn canonical_round_trip() {
        for s in ["(0 2 1,1 2 0)", "(1 4 1,1 2 1,1 6 2)", "(0 0 1)"] {
            let spec = parse_spec(s).unwrap();
            assert_eq!(spec.canonical_string(), s);
            assert_eq!(parse_spec(&spec.canonical_string()).unwrap(), spec);
        }
    }

    #[test]
    fn genus_bookkeeping() {
        let spec = parse_spec("(0 2 1,1 2 0)").unwrap();
        let g = genus_summary(&spec);
        assert_eq!((g.horizontal, g.vertical, g.total), (2, 4, 6));

        let spec = parse_spec("(3 4 2,1 4 2)").unwrap();
        let g = genus_summary(&spec);
        assert_eq!((g.horizontal, g.vertical, g.total), (8, 8, 16));

        let spec = parse_spec("(0 0 1)").unwrap();
        let g = genus_summary(&spec);
        assert_eq!((g.horizontal, g.vertical, g.total), (1, 0, 1));
        assert_eq!(g.per_copy, vec![(1, 0, 0)]);
    }

    #[test]
    fn total_genus_is_h_plus_k() {
        for s in ["(0 2 1,1 2 0)", "(2 2 1,1 2 2,1 4 1)", "(0 0 1)", "(3 4 2,1 4 2)"] {
            let spec = parse_spec(s).unwrap();
            assert_eq!(spec.total_genus(), spec.horizontal_genus() + spec.vertical_genus());
        }
    }

    #[test]
    fn inner_copy_positivity() {
        let spec = SurfaceSpec::new(vec![CopySpec::new(1, 2, 1), CopySpec::new(0, 2, 1)]);
        let report = validate_spec(&spec);
        assert!(!report.is_valid());
        assert!(report.violations[0].contains("copy 2"));
        assert!(report.violations[0].contains("left genus"));

        assert!(validate_spec(&parse_spec("(0 2 1,1 2 0)").unwrap()).is_valid());
    }

    #[test]
    fn k_zero_copies_are_flagged() {
        let report = validate_spec(&parse_spec("(0 0 1)").unwrap());
        assert!(report.is_valid());
        assert!(report.notes[0].contains("k = 0"));
    }

    #[test]
    fn degenerate_horizontal_genus_rejected() {
        let spec = SurfaceSpec::new(vec![CopySpec::new(0, 2, 0)]);
        let report = validate_spec(&spec);
        assert!(!report.is_valid());
        assert!(report.violations[0].contains("horizontal genus"));
    }
}
