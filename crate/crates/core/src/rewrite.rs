//! A relation calculus over twist words: braid and commutation moves,
//! cancellation of inverse pairs, and expansion/collapse of the derived
//! conjugate letter `B[j,0]`, with symplectic-image equivalence checking.
//!
//! Every move preserves the symplectic image of the word; [`replay_script`]
//! asserts this after each step. Image equality is a necessary condition for
//! equality in the mapping class group, not a sufficient one — scripts that
//! also replay through the relations give the strongest check available
//! here.

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{CatalogError, CurveCatalog};
use crate::homology::{self, SymplecticMatrix};
use crate::words::{CycleId, Letter, TwistWord};

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("parse error at token {index}: {msg}")]
    Parse { index: usize, msg: String },
    #[error("move {kind:?} not applicable at position {pos}: {msg}")]
    Inapplicable { kind: MoveKind, pos: usize, msg: String },
    #[error("script error on line {line}: {msg}")]
    Script { line: usize, msg: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Homology(#[from] homology::HomologyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MoveKind {
    /// `x y x → y x y` on adjacent chain indices (and the mixed-exponent
    /// variants derived from the same relation).
    Braid,
    /// Swap two letters whose classes have vanishing intersection and whose
    /// chain indices differ by at least two.
    Commute,
    /// Delete an adjacent `g g⁻¹` or `g⁻¹ g` pair.
    Cancel,
    /// Replace `B[j,0]` by its defining conjugate chain word.
    ConjExpand,
    /// Recognize the conjugate chain word and collapse it back to `B[j,0]`.
    ConjCollapse,
}

/// One rewrite step: a move kind at a 0-based word position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RewriteMove {
    pub kind: MoveKind,
    pub pos: usize,
}

impl RewriteMove {
    pub fn new(kind: MoveKind, pos: usize) -> Self {
        RewriteMove { kind, pos }
    }
}

/// Parse a word in the serialization grammar: letters `C[j,m]`, `B[j,p]`,
/// `X[j]`, `T[j]` with optional `^-1`, separated by whitespace. Bare
/// simple-case names (`c3`, `b0`, `x1`, `t1`) resolve to copy 1 / junction
/// indices.
pub fn parse_word(text: &str) -> Result<TwistWord, RewriteError> {
    let mut letters = Vec::new();
    for (index, token) in text.split_whitespace().enumerate() {
        let err = |msg: &str| RewriteError::Parse { index, msg: msg.to_string() };
        let (body, inverse) = match token.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (token, false),
        };
        let id = parse_cycle_id(body).ok_or_else(|| err("unknown letter"))?;
        match id {
            CycleId::C { pos: 0, .. } => return Err(err("chain indices start at 1")),
            CycleId::C { copy: 0, .. } | CycleId::B { copy: 0, .. } => {
                return Err(err("copy indices start at 1"))
            }
            CycleId::X { junction: 0 } | CycleId::T { junction: 0 } => {
                return Err(err("junction indices start at 1"))
            }
            _ => {}
        }
        letters.push(Letter { id, inverse });
    }
    Ok(TwistWord::new(letters))
}

fn parse_cycle_id(body: &str) -> Option<CycleId> {
    if let Some(rest) = body.strip_suffix(']') {
        let (family, args) = rest.split_once('[')?;
        let nums: Vec<u32> =
            args.split(',').map(|s| s.trim().parse::<u32>().ok()).collect::<Option<_>>()?;
        return match (family, nums.as_slice()) {
            ("C", [copy, pos]) => Some(CycleId::C { copy: *copy, pos: *pos }),
            ("B", [copy, arm]) => Some(CycleId::B { copy: *copy, arm: *arm }),
            ("X", [junction]) => Some(CycleId::X { junction: *junction }),
            ("T", [junction]) => Some(CycleId::T { junction: *junction }),
            _ => None,
        };
    }
    let (head, tail) = body.split_at(1);
    let n: u32 = tail.parse().ok()?;
    match head {
        "c" => Some(CycleId::C { copy: 1, pos: n }),
        "b" => Some(CycleId::B { copy: 1, arm: n }),
        "x" => Some(CycleId::X { junction: n }),
        "t" => Some(CycleId::T { junction: n }),
        _ => None,
    }
}

/// Chain position of a letter, for braid/commute side conditions.
fn chain_index(id: &CycleId) -> Option<(u32, u32)> {
    match *id {
        CycleId::C { copy, pos } => Some((copy, pos)),
        _ => None,
    }
}

/// The defining conjugate word of `B[j,0]`: the chain twists of copy `j`
/// applied to the chain top, `c_1 … c_{2h} c_{2h+1} c_{2h}⁻¹ … c_1⁻¹`.
pub fn conjugate_expansion(catalog: &CurveCatalog, copy: u32) -> Vec<Letter> {
    let h = catalog.spec().copy(copy as usize).horizontal_genus();
    let mut letters = Vec::with_capacity(4 * h as usize + 1);
    for m in 1..=2 * h + 1 {
        letters.push(Letter::positive(CycleId::C { copy, pos: m }));
    }
    for m in (1..=2 * h).rev() {
        letters.push(Letter::inverse(CycleId::C { copy, pos: m }));
    }
    letters
}

/// Apply a single move. Moves preserve the symplectic image (checked by the
/// replay machinery and the randomized soundness tests).
pub fn apply_move(
    word: &TwistWord,
    mv: RewriteMove,
    catalog: &CurveCatalog,
) -> Result<TwistWord, RewriteError> {
    let letters = word.letters();
    let fail = |msg: &str| RewriteError::Inapplicable {
        kind: mv.kind,
        pos: mv.pos,
        msg: msg.to_string(),
    };
    match mv.kind {
        MoveKind::Braid => {
            if mv.pos + 3 > letters.len() {
                return Err(fail("needs three letters"));
            }
            let [a, b, c] = [letters[mv.pos], letters[mv.pos + 1], letters[mv.pos + 2]];
            if a.id != c.id || a.id == b.id {
                return Err(fail("window is not x·y·x shaped"));
            }
            let (Some((ca, ia)), Some((cb, ib))) = (chain_index(&a.id), chain_index(&b.id))
            else {
                return Err(fail("braid applies to chain letters"));
            };
            if ca != cb || ia.abs_diff(ib) != 1 {
                return Err(fail("chain indices must be adjacent"));
            }
            // x y x = y x y and the variants obtained by decorating with
            // inverses on the outer letter pair
            let (e1, e2, e3) = match (a.inverse, b.inverse, c.inverse) {
                (false, false, false) => (false, false, false),
                (false, false, true) => (true, false, false),
                (true, false, false) => (false, false, true),
                (true, true, true) => (true, true, true),
                (false, true, true) => (true, true, false),
                (true, true, false) => (false, true, true),
                // x y⁻¹ x and x⁻¹ y x⁻¹ are not consequences of the relation
                (false, true, false) | (true, false, true) => {
                    return Err(fail("exponent pattern not derivable from the braid relation"))
                }
            };
            let mut out = letters.to_vec();
            out[mv.pos] = Letter { id: b.id, inverse: e1 };
            out[mv.pos + 1] = Letter { id: a.id, inverse: e2 };
            out[mv.pos + 2] = Letter { id: b.id, inverse: e3 };
            Ok(TwistWord::new(out))
        }
        MoveKind::Commute => {
            if mv.pos + 2 > letters.len() {
                return Err(fail("needs two letters"));
            }
            let (a, b) = (letters[mv.pos], letters[mv.pos + 1]);
            let omega =
                homology::symplectic_form(catalog.resolve(&a.id)?, catalog.resolve(&b.id)?)?;
            if omega != crate::Int::from(0) {
                return Err(fail("classes intersect"));
            }
            if let (Some((ca, ia)), Some((cb, ib))) = (chain_index(&a.id), chain_index(&b.id)) {
                if ca == cb && ia.abs_diff(ib) < 2 {
                    return Err(fail("chain indices too close"));
                }
            }
            let mut out = letters.to_vec();
            out.swap(mv.pos, mv.pos + 1);
            Ok(TwistWord::new(out))
        }
        MoveKind::Cancel => {
            if mv.pos + 2 > letters.len() {
                return Err(fail("needs two letters"));
            }
            let (a, b) = (letters[mv.pos], letters[mv.pos + 1]);
            if a.id != b.id || a.inverse == b.inverse {
                return Err(fail("letters are not an inverse pair"));
            }
            let mut out = letters.to_vec();
            out.drain(mv.pos..mv.pos + 2);
            Ok(TwistWord::new(out))
        }
        MoveKind::ConjExpand => {
            if mv.pos >= letters.len() {
                return Err(fail("position out of range"));
            }
            let l = letters[mv.pos];
            let CycleId::B { copy, arm: 0 } = l.id else {
                return Err(fail("only B[j,0] expands"));
            };
            let mut expansion = conjugate_expansion(catalog, copy);
            if l.inverse {
                expansion.reverse();
                for e in &mut expansion {
                    *e = e.inverted();
                }
            }
            let mut out = letters.to_vec();
            out.splice(mv.pos..mv.pos + 1, expansion);
            Ok(TwistWord::new(out))
        }
        MoveKind::ConjCollapse => {
            for copy in 1..=catalog.spec().copy_count() as u32 {
                for inverse in [false, true] {
                    let mut expansion = conjugate_expansion(catalog, copy);
                    if inverse {
                        expansion.reverse();
                        for e in &mut expansion {
                            *e = e.inverted();
                        }
                    }
                    let end = mv.pos + expansion.len();
                    if end <= letters.len() && letters[mv.pos..end] == expansion[..] {
                        let mut out = letters.to_vec();
                        out.splice(
                            mv.pos..end,
                            [Letter { id: CycleId::B { copy, arm: 0 }, inverse }],
                        );
                        return Ok(TwistWord::new(out));
                    }
                }
            }
            Err(fail("no conjugate expansion matches here"))
        }
    }
}

/// Symplectic image of a word, inverse transvections for inverse letters.
pub fn word_matrix(
    word: &TwistWord,
    catalog: &CurveCatalog,
) -> Result<SymplecticMatrix, RewriteError> {
    let rank = catalog.rank();
    let mut acc = crate::linalg::Matrix::identity(rank);
    for l in word.letters() {
        let class = catalog.resolve(&l.id)?;
        if class.is_zero() {
            return Err(RewriteError::Homology(homology::HomologyError::ZeroClass));
        }
        acc = acc.mul(&homology::transvection_power(class, l.inverse));
    }
    Ok(SymplecticMatrix::new(acc)?)
}

/// `Ψ(w1) = Ψ(w2)`: necessary, not sufficient, for equality of the mapping
/// classes.
pub fn sp_equivalent(
    w1: &TwistWord,
    w2: &TwistWord,
    catalog: &CurveCatalog,
) -> Result<bool, RewriteError> {
    Ok(word_matrix(w1, catalog)? == word_matrix(w2, catalog)?)
}

/// A rewrite script: initial word, ordered moves, expected final word.
#[derive(Debug, Clone, PartialEq)]
pub struct RewriteScript {
    pub initial: TwistWord,
    pub moves: Vec<RewriteMove>,
    pub expected: TwistWord,
}

/// Line-oriented script format: `init: <word>`, `move: <kind> <pos>`,
/// `expect: <word>`; `#` starts a comment line.
pub fn parse_script(text: &str) -> Result<RewriteScript, RewriteError> {
    let mut initial = None;
    let mut moves = Vec::new();
    let mut expected = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: &str| RewriteError::Script { line: lineno + 1, msg: msg.to_string() };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(':').ok_or_else(|| err("expected 'key: value'"))?;
        let rest = rest.trim();
        match key.trim() {
            "init" => initial = Some(parse_word(rest)?),
            "expect" => expected = Some(parse_word(rest)?),
            "move" => {
                let mut parts = rest.split_whitespace();
                let kind = match parts.next() {
                    Some("braid") => MoveKind::Braid,
                    Some("commute") => MoveKind::Commute,
                    Some("cancel") => MoveKind::Cancel,
                    Some("conj_expand") => MoveKind::ConjExpand,
                    Some("conj_collapse") => MoveKind::ConjCollapse,
                    _ => return Err(err("unknown move kind")),
                };
                let pos: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("move needs a position"))?;
                moves.push(RewriteMove::new(kind, pos));
            }
            other => return Err(err(&format!("unknown key '{other}'"))),
        }
    }
    Ok(RewriteScript {
        initial: initial.ok_or(RewriteError::Script { line: 0, msg: "missing init".into() })?,
        moves,
        expected: expected
            .ok_or(RewriteError::Script { line: 0, msg: "missing expect".into() })?,
    })
}

/// Result of replaying a script: applicability and image preservation are
/// asserted at every step, then the final word is compared.
#[derive(Debug, Clone, Serialize)]
pub struct ReplayReport {
    pub steps: usize,
    pub succeeded: bool,
    pub failing_step: Option<usize>,
    pub message: String,
}

pub fn replay_script(
    script: &RewriteScript,
    catalog: &CurveCatalog,
) -> Result<ReplayReport, RewriteError> {
    let mut word = script.initial.clone();
    let image = word_matrix(&word, catalog)?;
    for (step, mv) in script.moves.iter().enumerate() {
        word = match apply_move(&word, *mv, catalog) {
            Ok(w) => w,
            Err(e) => {
                return Ok(ReplayReport {
                    steps: step,
                    succeeded: false,
                    failing_step: Some(step),
                    message: format!("move {step} inapplicable: {e}"),
                })
            }
        };
        if word_matrix(&word, catalog)? != image {
            return Ok(ReplayReport {
                steps: step + 1,
                succeeded: false,
                failing_step: Some(step),
                message: format!("move {step} changed the symplectic image"),
            });
        }
    }
    if word != script.expected {
        return Ok(ReplayReport {
            steps: script.moves.len(),
            succeeded: false,
            failing_step: None,
            message: format!("final word mismatch: got {word}"),
        });
    }
    Ok(ReplayReport {
        steps: script.moves.len(),
        succeeded: true,
        failing_step: None,
        message: "ok".to_string(),
    })
}

/// Built-in reduction of the `hyperelliptic_word(h, i)` to its standard
/// form: expand `b0`, cancel the expansion tail against the outward left
/// group, braid the conjugate cascade into an inverse prefix, commute the
/// inward left group out of the way and cancel the prefix against the
/// inward right group. Endpoint:
/// `c_{2i}…c_1 c_1…c_{2h+1} c_{2h+1}…c_{2i+2} c_{2i+1}`.
pub fn corollary_script(h: u32, i: u32) -> RewriteScript {
    assert!(i <= h, "split index out of range");
    let initial = crate::words::hyperelliptic_word(h, i).expect("valid parameters");
    let mut moves: Vec<RewriteMove> = Vec::new();

    // simulate the letter motions on a shadow word to emit exact positions
    #[derive(Clone, Copy, PartialEq, Debug)]
    enum L {
        C(u32, bool),
        B0,
    }
    let mut w: Vec<L> = Vec::new();
    for m in (2 * i + 2)..=(2 * h + 1) {
        w.push(L::C(m, false));
    }
    for m in (1..=2 * i).rev() {
        w.push(L::C(m, false));
    }
    w.push(L::B0);
    for m in ((2 * i + 2)..=(2 * h + 1)).rev() {
        w.push(L::C(m, false));
    }
    for m in 1..=2 * i {
        w.push(L::C(m, false));
    }
    w.push(L::C(2 * i + 1, false));

    let mut push = |kind: MoveKind, pos: usize, w: &mut Vec<L>, moves: &mut Vec<RewriteMove>| {
        moves.push(RewriteMove::new(kind, pos));
        match kind {
            MoveKind::ConjExpand => {
                assert_eq!(w[pos], L::B0);
                let mut exp = Vec::new();
                for m in 1..=2 * h + 1 {
                    exp.push(L::C(m, false));
                }
                for m in (1..=2 * h).rev() {
                    exp.push(L::C(m, true));
                }
                w.splice(pos..pos + 1, exp);
            }
            MoveKind::Commute => w.swap(pos, pos + 1),
            MoveKind::Cancel => {
                w.drain(pos..pos + 2);
            }
            MoveKind::Braid => {
                let (L::C(ia, ea), L::C(ib, eb), L::C(_, ec)) = (w[pos], w[pos + 1], w[pos + 2])
                else {
                    panic!("braid window");
                };
                assert!(!ea && !eb && ec);
                w[pos] = L::C(ib, true);
                w[pos + 1] = L::C(ia, false);
                w[pos + 2] = L::C(ib, false);
            }
            MoveKind::ConjCollapse => unreachable!(),
        }
    };

    let b0_pos = w.iter().position(|&l| l == L::B0).unwrap();
    push(MoveKind::ConjExpand, b0_pos, &mut w, &mut moves);

    // cancel the expansion tail against l_o = c_1…c_{2i}, innermost pair
    // (c_1) first
    for m in 1..=2 * i {
        loop {
            let pos = w.iter().position(|&l| l == L::C(m, true)).unwrap();
            match w[pos + 1] {
                L::C(mm, false) if mm == m => {
                    push(MoveKind::Cancel, pos, &mut w, &mut moves);
                    break;
                }
                _ => push(MoveKind::Commute, pos, &mut w, &mut moves),
            }
        }
    }

    // braid cascade: c_1…c_{2h+1} c_{2h}⁻¹…c_{2i+1}⁻¹ becomes
    // c_{2h+1}⁻¹…c_{2i+2}⁻¹ c_1…c_{2h+1}
    for m in ((2 * i + 1)..=2 * h).rev() {
        loop {
            let pos = w.iter().position(|&l| l == L::C(m, true)).unwrap();
            if pos >= 2 && w[pos - 2] == L::C(m, false) && w[pos - 1] == L::C(m + 1, false) {
                push(MoveKind::Braid, pos - 2, &mut w, &mut moves);
                break;
            }
            push(MoveKind::Commute, pos - 1, &mut w, &mut moves);
        }
        loop {
            let pos = w.iter().position(|&l| l == L::C(m + 1, true)).unwrap();
            if pos == 0 {
                break;
            }
            match w[pos - 1] {
                L::C(mm, false) if mm.abs_diff(m + 1) >= 2 => {
                    push(MoveKind::Commute, pos - 1, &mut w, &mut moves)
                }
                _ => break,
            }
        }
    }

    // move the inward left group past the inverse prefix, then cancel the
    // prefix against the inward right group
    for m in (1..=2 * i).rev() {
        loop {
            let pos = w.iter().position(|&l| l == L::C(m, false)).unwrap();
            if pos == 0 {
                break;
            }
            match w[pos - 1] {
                L::C(mm, true) if mm >= 2 * i + 2 => {
                    push(MoveKind::Commute, pos - 1, &mut w, &mut moves)
                }
                _ => break,
            }
        }
    }
    for m in ((2 * i + 2)..=(2 * h + 1)).rev() {
        loop {
            let pos = w.iter().position(|&l| l == L::C(m, false)).unwrap();
            match w[pos + 1] {
                L::C(mm, true) if mm == m => {
                    push(MoveKind::Cancel, pos, &mut w, &mut moves);
                    break;
                }
                _ => push(MoveKind::Commute, pos, &mut w, &mut moves),
            }
        }
    }

    let mut expected = Vec::new();
    for m in (1..=2 * i).rev() {
        expected.push(Letter::positive(CycleId::C { copy: 1, pos: m }));
    }
    for m in 1..=(2 * h + 1) {
        expected.push(Letter::positive(CycleId::C { copy: 1, pos: m }));
    }
    for m in ((2 * i + 2)..=(2 * h + 1)).rev() {
        expected.push(Letter::positive(CycleId::C { copy: 1, pos: m }));
    }
    expected.push(Letter::positive(CycleId::C { copy: 1, pos: 2 * i + 1 }));
    let expected = TwistWord::new(expected);

    let simulated: Vec<Letter> = w
        .iter()
        .map(|&l| match l {
            L::C(m, inv) => Letter { id: CycleId::C { copy: 1, pos: m }, inverse: inv },
            L::B0 => Letter::positive(CycleId::B { copy: 1, arm: 0 }),
        })
        .collect();
    debug_assert_eq!(TwistWord::new(simulated), expected, "script generator drifted");

    RewriteScript { initial, moves, expected }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_catalog;
    use crate::config::{CopySpec, SurfaceSpec};

    fn k0_catalog(h: u32, i: u32) -> CurveCatalog {
        let spec = SurfaceSpec::new(vec![CopySpec::new(i, 0, h - i)]);
        build_catalog(&spec).expect("hyperelliptic catalog")
    }

    #[test]
    fn parse_word_grammar() {
        let w = parse_word("c2 c3 b0 c3 c2 c1").unwrap();
        assert_eq!(w.len(), 6);
        assert!(w.all_positive());
        assert_eq!(w.to_string(), "C[1,2] C[1,3] B[1,0] C[1,3] C[1,2] C[1,1]");

        let w = parse_word("c1^-1 c1").unwrap();
        assert!(w.letters()[0].inverse && !w.letters()[1].inverse);

        assert!(matches!(parse_word("c0"), Err(RewriteError::Parse { .. })));
        assert!(matches!(parse_word("q7"), Err(RewriteError::Parse { .. })));
        assert!(parse_word("C[2,3] B[1,0] X[1] T[1]^-1").is_ok());
    }

    #[test]
    fn braid_move() {
        let catalog = k0_catalog(1, 0);
        let w = parse_word("c1 c2 c1").unwrap();
        let out = apply_move(&w, RewriteMove::new(MoveKind::Braid, 0), &catalog).unwrap();
        assert_eq!(out, parse_word("c2 c1 c2").unwrap());
        assert!(sp_equivalent(&w, &out, &catalog).unwrap());
    }

    #[test]
    fn braid_mixed_exponent() {
        let catalog = k0_catalog(2, 0);
        let w = parse_word("c1 c2 c1^-1").unwrap();
        let out = apply_move(&w, RewriteMove::new(MoveKind::Braid, 0), &catalog).unwrap();
        assert_eq!(out, parse_word("c2^-1 c1 c2").unwrap());
        assert!(sp_equivalent(&w, &out, &catalog).unwrap());
    }

    #[test]
    fn commute_move() {
        let catalog = k0_catalog(2, 0);
        let w = parse_word("c1 c3").unwrap();
        let out = apply_move(&w, RewriteMove::new(MoveKind::Commute, 0), &catalog).unwrap();
        assert_eq!(out, parse_word("c3 c1").unwrap());
        let w = parse_word("c1 c2").unwrap();
        assert!(apply_move(&w, RewriteMove::new(MoveKind::Commute, 0), &catalog).is_err());
    }

    #[test]
    fn cancel_and_conjugate_moves() {
        let catalog = k0_catalog(2, 0);
        let w = parse_word("c1^-1 c1").unwrap();
        let out = apply_move(&w, RewriteMove::new(MoveKind::Cancel, 0), &catalog).unwrap();
        assert!(out.is_empty());

        let w = parse_word("b0").unwrap();
        let out = apply_move(&w, RewriteMove::new(MoveKind::ConjExpand, 0), &catalog).unwrap();
        assert_eq!(out, parse_word("c1 c2 c3 c4 c5 c4^-1 c3^-1 c2^-1 c1^-1").unwrap());
        assert!(sp_equivalent(&w, &out, &catalog).unwrap());
        let back = apply_move(&out, RewriteMove::new(MoveKind::ConjCollapse, 0), &catalog).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn corollary_script_replays() {
        for (h, i) in [(1, 0), (1, 1), (2, 0), (2, 1), (3, 1), (3, 3)] {
            let catalog = k0_catalog(h, i);
            let script = corollary_script(h, i);
            let report = replay_script(&script, &catalog).unwrap();
            assert!(report.succeeded, "(h={h}, i={i}): {}", report.message);
            let m = word_matrix(&script.expected, &catalog).unwrap();
            assert!(m.is_minus_identity(), "(h={h}, i={i})");
        }
    }

    #[test]
    fn corollary_endpoint_equivalent_to_standard_word() {
        let catalog = k0_catalog(1, 0);
        let word = parse_word("c2 c3 b0 c3 c2 c1").unwrap();
        let standard = parse_word("c1 c2 c3 c3 c2 c1").unwrap();
        assert!(sp_equivalent(&word, &standard, &catalog).unwrap());
        assert!(
            !sp_equivalent(&parse_word("c1").unwrap(), &parse_word("c2").unwrap(), &catalog)
                .unwrap()
        );
    }

    #[test]
    fn script_format_round_trip() {
        let text = "# demo\ninit: c1 c2 c1\nmove: braid 0\nexpect: c2 c1 c2\n";
        let script = parse_script(text).unwrap();
        assert_eq!(script.moves, vec![RewriteMove::new(MoveKind::Braid, 0)]);
        let catalog = k0_catalog(1, 0);
        assert!(replay_script(&script, &catalog).unwrap().succeeded);
    }

    #[test]
    fn inapplicable_moves_reported() {
        let catalog = k0_catalog(1, 0);
        let script = parse_script("init: c1 c2\nmove: commute 0\nexpect: c2 c1\n").unwrap();
        let report = replay_script(&script, &catalog).unwrap();
        assert!(!report.succeeded);
        assert_eq!(report.failing_step, Some(0));
    }

    #[test]
    fn random_moves_preserve_image() {
        let catalog = k0_catalog(3, 1);
        let base = crate::words::hyperelliptic_word(3, 1).unwrap();
        let mut rng = crate::meyer::SplitMix64::new(42);
        let mut word = base.clone();
        let mut trials = 0;
        let mut applied = 0;
        while trials < 1000 {
            trials += 1;
            let pos = rng.below(word.len().max(1) as u64) as usize;
            let kind = match rng.below(4) {
                0 => MoveKind::Braid,
                1 => MoveKind::Commute,
                2 => MoveKind::Cancel,
                _ => MoveKind::ConjExpand,
            };
            if let Ok(next) = apply_move(&word, RewriteMove::new(kind, pos), &catalog) {
                assert!(sp_equivalent(&word, &next, &catalog).unwrap());
                applied += 1;
                word = if next.len() > 60 { base.clone() } else { next };
            }
        }
        assert!(applied > 50, "too few applicable moves sampled: {applied}");
    }
}
