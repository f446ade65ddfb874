//! The curve catalog: a homology class for every named cycle of a
//! configuration, constructed by a deterministic constrained search and
//! pinned by homological oracles.
//!
//! Ambient lattice: rank `2g = 2(h + k)`, one symplectic pair per unit of
//! genus, laid out copy by copy — horizontal pairs `(u^j_m, v^j_m)` for
//! `m = 1..h_j`, then vertical pairs for the copy's arm genus `k_j`. The
//! involution acts as `-I` on the sublattice spanned by the cycle classes,
//! which has rank `2h + k`; the complementary `k` directions are fixed and
//! never touched by any class (this is why the span rank is strictly less
//! than `2g` whenever `k > 0`).
//!
//! Chain classes are the standard ones: `[c_{2m}] = v_m`,
//! `[c_{2m+1}] = u_m + u_{m+1}`, with the junction curve `t_j` carrying
//! `u^j_{h_j} + u^{j+1}_1` — gauge rigidity of chains pins these. The arm
//! classes `b^j_p`, the anchors `b^j_0` (for `k_j > 0` or multi-copy words)
//! and the junction curves `x_j` are not determined by intersection data
//! alone; they are found by a depth-first search over the word equation
//! `Ψ(θ) = -I|span`, peeling one unknown letter at a time from the
//! conjugated residual, whose rank bounds the number of remaining letters.
//! The candidate order is fixed, so rebuilding a catalog is deterministic.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};


use thiserror::Error;

use crate::config::{validate_spec, SurfaceSpec};
use crate::homology::{self, HomologyClass};
use crate::words::{theta_word, CycleId, TwistWord};
use crate::Int;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unresolvable cycle {0} in this catalog")]
    Unresolvable(CycleId),
    #[error("invalid configuration: {0}")]
    InvalidSpec(String),
    #[error("catalog underdetermined: {0}")]
    Underdetermined(String),
    #[error("catalog file error: {0}")]
    File(String),
    #[error(transparent)]
    Homology(#[from] homology::HomologyError),
}

/// Coordinate layout of the ambient lattice for one configuration.
#[derive(Debug, Clone)]
pub struct BasisLayout {
    copies: usize,
    horiz_base: Vec<usize>,
    horiz_count: Vec<usize>,
    vert_base: Vec<usize>,
    vert_count: Vec<usize>,
    rank: usize,
}

impl BasisLayout {
    pub fn new(spec: &SurfaceSpec) -> Self {
        let n = spec.copy_count();
        let mut horiz_base = Vec::with_capacity(n);
        let mut horiz_count = Vec::with_capacity(n);
        let mut vert_base = Vec::with_capacity(n);
        let mut vert_count = Vec::with_capacity(n);
        let mut next = 0usize;
        for c in spec.copies() {
            let h = c.horizontal_genus() as usize;
            let k = c.vertical_genus as usize;
            horiz_base.push(next);
            horiz_count.push(h);
            next += 2 * h;
            vert_base.push(next);
            vert_count.push(k);
            next += 2 * k;
        }
        BasisLayout { copies: n, horiz_base, horiz_count, vert_base, vert_count, rank: next }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    /// Coordinate of `u^j_m`; 1-based `j` and `m`.
    pub fn u(&self, j: usize, m: usize) -> usize {
        debug_assert!(m >= 1 && m <= self.horiz_count[j - 1]);
        self.horiz_base[j - 1] + 2 * (m - 1)
    }

    pub fn v(&self, j: usize, m: usize) -> usize {
        self.u(j, m) + 1
    }

    /// Base coordinate of copy `j`'s vertical block (`2 k_j` coordinates;
    /// the search uses the first `k_j` of them — the active half).
    pub fn vertical_base(&self, j: usize) -> usize {
        self.vert_base[j - 1]
    }

    pub fn vertical_count(&self, j: usize) -> usize {
        self.vert_count[j - 1]
    }

    /// Coordinate window owned by copies `j-1 ..= j+1` plus their junctions;
    /// classes of copy-local cycles live inside it.
    fn window(&self, j: usize) -> Vec<usize> {
        let lo = j.saturating_sub(1).max(1);
        let hi = (j + 1).min(self.copies);
        let mut coords = Vec::new();
        for c in lo..=hi {
            let hb = self.horiz_base[c - 1];
            coords.extend(hb..hb + 2 * self.horiz_count[c - 1]);
            let vb = self.vert_base[c - 1];
            coords.extend(vb..vb + self.vert_count[c - 1]); // active half
        }
        coords
    }
}

/// The assignment `CycleId → HomologyClass` for one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveCatalog {
    spec: SurfaceSpec,
    rank: usize,
    classes: BTreeMap<CycleId, HomologyClass>,
    convention: String,
}

impl CurveCatalog {
    pub fn from_classes(
        spec: SurfaceSpec,
        rank: usize,
        classes: BTreeMap<CycleId, HomologyClass>,
        convention: String,
    ) -> Self {
        CurveCatalog { spec, rank, classes, convention }
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn convention(&self) -> &str {
        &self.convention
    }

    pub fn classes(&self) -> &BTreeMap<CycleId, HomologyClass> {
        &self.classes
    }

    /// Canonical name of a cycle: junction-aliased chain ends resolve to the
    /// shared `T[j]` entry.
    pub fn canonical(&self, id: &CycleId) -> CycleId {
        let n = self.spec.copy_count() as u32;
        match *id {
            CycleId::C { copy, pos: 1 } if copy >= 2 => CycleId::T { junction: copy - 1 },
            CycleId::C { copy, pos }
                if copy < n && pos == 2 * self.spec.copy(copy as usize).horizontal_genus() + 1 =>
            {
                CycleId::T { junction: copy }
            }
            other => other,
        }
    }

    pub fn resolve(&self, id: &CycleId) -> Result<&HomologyClass, CatalogError> {
        let canonical = self.canonical(id);
        self.classes.get(&canonical).ok_or(CatalogError::Unresolvable(*id))
    }

    /// Content fingerprint: a small hash of the record lines.
    pub fn fingerprint(&self) -> String {
        let mut acc: u64 = 0xcbf29ce484222325;
        let mut mix = |bytes: &[u8]| {
            for &b in bytes {
                acc ^= u64::from(b);
                acc = acc.wrapping_mul(0x100000001b3);
            }
        };
        mix(self.spec.canonical_string().as_bytes());
        for (id, class) in &self.classes {
            mix(id.to_string().as_bytes());
            for c in class.coords() {
                mix(c.to_string().as_bytes());
            }
        }
        format!("{acc:016x}")
    }
}

// ---------------------------------------------------------------------------
// deterministic constrained search (fast integer kernels)
// ---------------------------------------------------------------------------

mod search {
    pub(super) type Vi = Vec<i64>;
    /// dense square matrix as columns
    pub(super) type Mi = Vec<Vi>;

    pub(super) fn omega(u: &[i64], v: &[i64]) -> i64 {
        (0..u.len() / 2)
            .map(|m| u[2 * m] * v[2 * m + 1] - u[2 * m + 1] * v[2 * m])
            .sum()
    }

    pub(super) fn transvect(x: &mut [i64], v: &[i64], inv: bool) {
        let c = omega(x, v);
        if c != 0 {
            for (a, b) in x.iter_mut().zip(v) {
                *a += if inv { -c * b } else { c * b };
            }
        }
    }

    pub(super) fn tcols(rank: usize, v: &[i64], inv: bool) -> Mi {
        (0..rank)
            .map(|j| {
                let mut x: Vi = (0..rank).map(|i| i64::from(i == j)).collect();
                transvect(&mut x, v, inv);
                x
            })
            .collect()
    }

    pub(super) fn mat_mul(a: &Mi, b: &Mi) -> Mi {
        let rank = a.len();
        (0..rank)
            .map(|j| {
                let mut out = vec![0i64; rank];
                for k in 0..rank {
                    if b[j][k] != 0 {
                        for i in 0..rank {
                            out[i] += a[k][i] * b[j][k];
                        }
                    }
                }
                out
            })
            .collect()
    }

    pub(super) fn identity(rank: usize) -> Mi {
        (0..rank).map(|j| (0..rank).map(|i| i64::from(i == j)).collect()).collect()
    }

    pub(super) fn minus_identity(rank: usize) -> Mi {
        (0..rank).map(|j| (0..rank).map(|i| -i64::from(i == j)).collect()).collect()
    }

    /// integer column-span basis (fraction-free elimination)
    pub(super) fn col_span_basis(m: &Mi) -> Vec<Vi> {
        let mut basis: Vec<Vi> = Vec::new();
        for col in m {
            let mut v = col.clone();
            for b in &basis {
                let lead = b.iter().position(|&x| x != 0).unwrap();
                if v[lead] != 0 {
                    let l = num_integer::lcm(v[lead].abs(), b[lead].abs());
                    let (fv, fb) = (l / v[lead], l / b[lead]);
                    for i in 0..v.len() {
                        v[i] = v[i] * fv - b[i] * fb;
                    }
                }
            }
            let g = v.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x.abs()));
            if g > 0 {
                basis.push(v.iter().map(|&x| x / g).collect());
                basis.sort_by_key(|b| b.iter().position(|&x| x != 0).unwrap());
            }
        }
        basis
    }

    /// basis of { v in colspan(m) : v supported on `window` }
    pub(super) fn span_window_basis(m: &Mi, window: &[usize]) -> Vec<Vi> {
        let basis = col_span_basis(m);
        if basis.is_empty() {
            return basis;
        }
        let dim = basis[0].len();
        let outside: Vec<usize> = (0..dim).filter(|i| !window.contains(i)).collect();
        // eliminate outside coordinates by integer row operations
        let mut rows = basis;
        let mut result: Vec<Vi> = Vec::new();
        for &c in &outside {
            let mut pivot: Option<usize> = None;
            for (r, row) in rows.iter().enumerate() {
                if row[c] != 0 {
                    pivot = Some(r);
                    break;
                }
            }
            if let Some(p) = pivot {
                let prow = rows[p].clone();
                for (r, row) in rows.iter_mut().enumerate() {
                    if r != p && row[c] != 0 {
                        let l = num_integer::lcm(row[c].abs(), prow[c].abs());
                        let (fr, fp) = (l / row[c], l / prow[c]);
                        for i in 0..dim {
                            row[i] = row[i] * fr - prow[i] * fp;
                        }
                        let g = row.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x.abs()));
                        if g > 1 {
                            for x in row.iter_mut() {
                                *x /= g;
                            }
                        }
                    }
                }
                rows.remove(p);
            }
        }
        for row in rows {
            if row.iter().enumerate().all(|(i, &x)| x == 0 || window.contains(&i)) {
                if row.iter().any(|&x| x != 0) {
                    result.push(row);
                }
            }
        }
        result
    }

    pub(super) fn diff_of(k: &Mi) -> Mi {
        let rank = k.len();
        let mut d = k.clone();
        for j in 0..rank {
            d[j][j] -= 1;
        }
        d
    }

    /// if K = I + s²·x₀(Jx₀)ᵀ, return x = s·x₀
    pub(super) fn as_transvection(k: &Mi) -> Option<Vi> {
        let rank = k.len();
        let n = diff_of(k);
        let j0 = (0..rank).find(|&j| n[j].iter().any(|&v| v != 0))?;
        let col = &n[j0];
        let g = col.iter().fold(0i64, |acc, &v| num_integer::gcd(acc, v.abs()));
        let x0: Vi = col.iter().map(|&v| v / g).collect();
        let lead = x0.iter().position(|&v| v != 0).unwrap();
        let mut w = vec![0i64; rank];
        for j in 0..rank {
            if n[j][lead] % x0[lead] != 0 {
                return None;
            }
            let f = n[j][lead] / x0[lead];
            if (0..rank).any(|i| n[j][i] != f * x0[i]) {
                return None;
            }
            w[j] = f;
        }
        let jx0: Vi = {
            let mut out = vec![0i64; rank];
            for m in 0..rank / 2 {
                out[2 * m] = x0[2 * m + 1];
                out[2 * m + 1] = -x0[2 * m];
            }
            out
        };
        let lead2 = jx0.iter().position(|&v| v != 0)?;
        if w[lead2] == 0 || w[lead2] % jx0[lead2] != 0 {
            return None;
        }
        let s2 = w[lead2] / jx0[lead2];
        if s2 <= 0 {
            return None;
        }
        let s = (s2 as f64).sqrt().round() as i64;
        if s * s != s2 || (0..rank).any(|i| w[i] != s2 * jx0[i]) {
            return None;
        }
        Some(x0.iter().map(|&v| v * s).collect())
    }

    /// One unknown letter of the word equation, with the coordinate window
    /// its class must live in.
    pub(super) struct Slot {
        pub window: Vec<usize>,
    }

    /// Solve K₀ T_{u₁} K₁ ⋯ T_{u_m} K_m = G for the unknown classes u_i.
    ///
    /// Depth-first, leftmost slot first. Candidates for slot i are small
    /// integer combinations of a column-span basis of `W_i - I`, where
    /// `W_i = A⁻¹ G (K_i ⋯ K_m)⁻¹` is the residual written as a product of
    /// m−i+1 conjugated transvections; its rank bounds the remaining letter
    /// count, which prunes hard. The last slot is recovered exactly.
    pub(super) struct Solver<'a> {
        pub rank: usize,
        pub known_inv_suffix: Vec<Mi>, // (K_i ⋯ K_m)⁻¹ for each slot index i (1-based), plus final
        pub knowns: &'a [Mi],          // K_0 .. K_m
        pub slots: &'a [Slot],
        pub goal: Mi,
        pub budget: i64,
        pub max_candidates: usize,
        pub max_depth_seen: usize,
        pub debug: bool,
        /// solve the inverted equation (letters appear as inverse
        /// transvections, unknowns right-to-left)
        pub inverted: bool,
    }

    impl<'a> Solver<'a> {
        pub(super) fn solve(&mut self) -> Option<Vec<Vi>> {
            let prefix = self.knowns[0].clone();
            let mut assigned = Vec::new();
            self.dfs(&prefix, 0, &mut assigned)
        }

        fn dfs(&mut self, prefix: &Mi, slot: usize, assigned: &mut Vec<Vi>) -> Option<Vec<Vi>> {
            if self.budget <= 0 {
                return None;
            }
            self.budget -= 1;
            if slot > self.max_depth_seen {
                self.max_depth_seen = slot;
            }
            let m = self.slots.len();
            let rank = self.rank;
            let prefix_inv = invert_product(prefix, rank)?;
            // W = prefix⁻¹ · G · (K_{slot+1} ⋯ K_m)⁻¹
            let w = mat_mul(&mat_mul(&prefix_inv, &self.goal), &self.known_inv_suffix[slot + 1]);
            let remaining = m - slot;
            let diff = diff_of(&w);
            let basis = col_span_basis(&diff);
            if basis.len() > remaining {
                return None;
            }
            if remaining == 1 {
                // exact recovery (inverted mode peels inverse transvections)
                let target = if self.inverted { invert_product(&w, rank)? } else { w.clone() };
                let x = as_transvection(&target)?;
                if !in_window(&x, &self.slots[slot].window) {
                    return None;
                }
                assigned.push(x);
                return Some(assigned.clone());
            }
            if basis.is_empty() {
                return None; // would need zero classes for the rest
            }
            // candidate classes: small combos of up to three basis vectors,
            // filtered by the slot's coordinate window, ordered by size
            if self.debug && slot <= 1 {
                eprintln!("slot {slot}: residual span {} remaining {remaining}", basis.len());
            }
            let d = basis.len().min(3);
            let mut cands: Vec<Vi> = Vec::new();
            let mut seen = std::collections::BTreeSet::new();
            let mut coeff = vec![-2i64; d];
            loop {
                let cand: Vi =
                    (0..rank).map(|i| (0..d).map(|a| coeff[a] * basis[a][i]).sum()).collect();
                if cand.iter().any(|&x| x != 0) {
                    let g = cand.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x.abs()));
                    let prim: Vi = cand.iter().map(|&x| x / g).collect();
                    let canon: Vi =
                        if prim.iter().find(|&&x| x != 0).map(|&x| x < 0).unwrap_or(false) {
                            prim.iter().map(|&x| -x).collect()
                        } else {
                            prim
                        };
                    if in_window(&canon, &self.slots[slot].window) && seen.insert(canon.clone()) {
                        cands.push(canon);
                    }
                }
                let mut pos = 0;
                loop {
                    if pos == d {
                        coeff.clear();
                        break;
                    }
                    coeff[pos] += 1;
                    if coeff[pos] <= 2 {
                        break;
                    }
                    coeff[pos] = -2;
                    pos += 1;
                }
                if coeff.is_empty() {
                    break;
                }
            }
            cands.sort_by_key(|c| c.iter().map(|&x| x.abs()).sum::<i64>());
            cands.truncate(self.max_candidates);
            for cand in cands {
                for scale in 1..=2i64 {
                    let cls: Vi = cand.iter().map(|&x| x * scale).collect();
                    // descend: new prefix = prefix · T_cls^{±1} · K_{slot+1}
                    let next_prefix = mat_mul(
                        &mat_mul(prefix, &tcols(rank, &cls, self.inverted)),
                        &self.knowns[slot + 1],
                    );
                    assigned.push(cls);
                    if let Some(sol) = self.dfs(&next_prefix, slot + 1, assigned) {
                        return Some(sol);
                    }
                    assigned.pop();
                    if self.budget <= 0 {
                        return None;
                    }
                }
            }
            None
        }
    }

    fn in_window(v: &[i64], window: &[usize]) -> bool {
        v.iter().enumerate().all(|(i, &x)| x == 0 || window.contains(&i))
    }

    /// exact inverse of an integer symplectic matrix: M⁻¹ = -J Mᵀ J
    pub(super) fn invert_product(m: &Mi, rank: usize) -> Option<Mi> {
        // Jᵀ x pairs; entries stay integral for symplectic matrices
        let j = |x: &Vi| -> Vi {
            let mut out = vec![0i64; rank];
            for p in 0..rank / 2 {
                out[2 * p] = x[2 * p + 1];
                out[2 * p + 1] = -x[2 * p];
            }
            out
        };
        // M⁻¹ = -J Mᵀ J: build columns
        let neg_j_mt_j: Mi = (0..rank)
            .map(|col| {
                // e_col -> J e_col, then Mᵀ, then -J
                let je: Vi = {
                    let mut e = vec![0i64; rank];
                    e[col] = 1;
                    j(&e)
                };
                // Mᵀ je: entry i = row i of Mᵀ · je = column i of M · je
                let mt: Vi = (0..rank).map(|i| {
                    (0..rank).map(|r| m[i][r] * je[r]).sum()
                }).collect();
                let jm = j(&mt);
                jm.iter().map(|&x| -x).collect()
            })
            .collect();
        Some(neg_j_mt_j)
    }
}

// ---------------------------------------------------------------------------
// builder
// ---------------------------------------------------------------------------

/// The standard chain class for copy `j`, chain position `pos`
/// (`1 ≤ pos ≤ 2h_j + 1`), junction ends shared via `t`-classes.
fn chain_class(layout: &BasisLayout, spec: &SurfaceSpec, j: usize, pos: usize) -> Vec<i64> {
    let h = spec.copy(j).horizontal_genus() as usize;
    let n = spec.copy_count();
    let mut v = vec![0i64; layout.rank()];
    if pos % 2 == 0 {
        v[layout.v(j, pos / 2)] = 1;
        return v;
    }
    let m = pos / 2;
    // u_m + u_{m+1} with the convention u_0 = previous copy's top end and
    // u_{h+1} = next copy's first handle (junction sharing)
    if m >= 1 {
        v[layout.u(j, m)] = 1;
    } else if j > 1 {
        // pos = 1 on an inner copy is the junction class t_{j-1}
        let hp = spec.copy(j - 1).horizontal_genus() as usize;
        v[layout.u(j - 1, hp)] = 1;
    }
    if m + 1 <= h {
        v[layout.u(j, m + 1)] = 1;
    } else if j < n {
        // pos = 2h+1 on a non-last copy is the junction class t_j
        v[layout.u(j + 1, 1)] = 1;
    }
    v
}

fn to_class(v: &[i64]) -> HomologyClass {
    HomologyClass::from_i64(v)
}

/// The conjugation image `T_{chain_1} ∘ … ∘ T_{chain_{2h}} (chain_{2h+1})`,
/// rightmost twist applied first.
pub fn derive_b0(
    catalog_chain: &[HomologyClass],
) -> Result<HomologyClass, homology::HomologyError> {
    let top = catalog_chain.len() - 1;
    let mut x = catalog_chain[top].clone();
    for v in catalog_chain[..top].iter().rev() {
        let t = homology::transvection(v)?;
        x = t.apply(&x);
    }
    Ok(x)
}

/// Build and validate the catalog for a configuration.
///
/// Chain classes are fixed; the anchors, arms and junction classes come from
/// the deterministic word-equation search. For a single copy with `k = 0`
/// the anchor is the chain conjugation image and nothing is searched.
pub fn build_catalog(spec: &SurfaceSpec) -> Result<CurveCatalog, CatalogError> {
    let report = validate_spec(spec);
    if !report.is_valid() {
        return Err(CatalogError::InvalidSpec(report.to_string()));
    }
    let layout = BasisLayout::new(spec);
    let rank = layout.rank();
    let n = spec.copy_count();
    let word = theta_word(spec).map_err(|e| CatalogError::InvalidSpec(e.to_string()))?;

    let mut classes: BTreeMap<CycleId, HomologyClass> = BTreeMap::new();

    // chain classes, canonical names (T for junction-shared ends)
    for j in 1..=n {
        let h = spec.copy(j).horizontal_genus();
        for pos in 1..=2 * h + 1 {
            let id = CycleId::C { copy: j as u32, pos };
            let canonical = if pos == 1 && j >= 2 {
                continue; // alias of T[j-1]
            } else if pos == 2 * h + 1 && j < n {
                CycleId::T { junction: j as u32 }
            } else {
                id
            };
            classes.insert(canonical, to_class(&chain_class(&layout, spec, j, pos as usize)));
        }
    }

    // single copy, no arm: the anchor is the derived conjugation image
    if n == 1 && spec.copy(1).vertical_genus == 0 {
        let h = spec.copy(1).horizontal_genus();
        let chain: Vec<HomologyClass> = (1..=2 * h + 1)
            .map(|pos| to_class(&chain_class(&layout, spec, 1, pos as usize)))
            .collect();
        classes.insert(CycleId::B { copy: 1, arm: 0 }, derive_b0(&chain)?);
        let catalog = CurveCatalog::from_classes(
            spec.clone(),
            rank,
            classes,
            "chain=standard anchors=conjugation search=v1".to_string(),
        );
        verify_involution(&catalog, &word)?;
        return Ok(catalog);
    }

    // otherwise: unknown letters are the junction classes, anchors, and arms
    let mut knowns: Vec<search::Mi> = Vec::new();
    let mut slots: Vec<search::Slot> = Vec::new();
    let mut slot_ids: Vec<CycleId> = Vec::new();
    let mut acc = search::identity(rank);
    let resolve_known = |id: &CycleId| -> Option<Vec<i64>> {
        match *id {
            CycleId::C { copy, pos } => {
                Some(chain_class(&layout, spec, copy as usize, pos as usize))
            }
            CycleId::T { junction } => {
                let j = junction as usize;
                let h = spec.copy(j).horizontal_genus();
                Some(chain_class(&layout, spec, j, (2 * h + 1) as usize))
            }
            _ => None,
        }
    };
    for letter in word.letters() {
        if let Some(v) = resolve_known(&letter.id) {
            acc = search::mat_mul(&acc, &search::tcols(rank, &v, false));
        } else {
            knowns.push(acc);
            acc = search::identity(rank);
            let window = match letter.id {
                CycleId::B { copy, .. } => layout.window(copy as usize),
                CycleId::X { junction } => {
                    let mut w = layout.window(junction as usize);
                    w.extend(layout.window(junction as usize + 1));
                    w.sort_unstable();
                    w.dedup();
                    w
                }
                _ => unreachable!("chain letters are known"),
            };
            slots.push(search::Slot { window });
            slot_ids.push(letter.id);
        }
    }
    knowns.push(acc);

    // solve the inverted equation: K_m⁻¹ T_{u_m}⁻¹ ⋯ T_{u_1}⁻¹ K_0⁻¹ = G⁻¹ = G,
    // so the rightmost unknowns of the word (copy 1's small-window letters)
    // are peeled first
    let mut knowns: Vec<search::Mi> = knowns
        .iter()
        .rev()
        .map(|k| {
            search::invert_product(k, rank)
                .ok_or_else(|| CatalogError::Underdetermined("singular known block".into()))
        })
        .collect::<Result<_, _>>()?;
    let _ = &mut knowns;
    let mut slots: Vec<search::Slot> = {
        slots.reverse();
        slots
    };
    let _ = &mut slots;
    slot_ids.reverse();
    let m = slots.len();
    let mut known_inv_suffix = vec![search::identity(rank); m + 2];
    for i in (0..=m).rev() {
        let ki_inv = search::invert_product(&knowns[i], rank)
            .ok_or_else(|| CatalogError::Underdetermined("singular known block".into()))?;
        // (K_i ⋯ K_m)⁻¹ = (K_{i+1} ⋯ K_m)⁻¹ · K_i⁻¹
        known_inv_suffix[i] = search::mat_mul(&known_inv_suffix[i + 1].clone(), &ki_inv);
    }

    // target: -I on the class span (horizontal blocks and the active half
    // of each vertical block), +I on the untouched directions
    let goal = {
        let mut g = search::minus_identity(rank);
        for j in 1..=n {
            let base = layout.vertical_base(j);
            let k = layout.vertical_count(j);
            for c in base + k..base + 2 * k {
                g[c][c] = 1;
            }
        }
        g
    };
    let mut solver = search::Solver {
        rank,
        known_inv_suffix,
        knowns: &knowns,
        slots: &slots,
        goal,
        budget: 2_000_000,
        max_candidates: 600,
        max_depth_seen: 0,
        debug: std::env::var("TWISTFORGE_DEBUG_SEARCH").is_ok(),
        inverted: true,
    };
    let solution = solver.solve().ok_or_else(|| {
        CatalogError::Underdetermined(format!(
            "word-equation search exhausted for {} (deepest slot {} of {})",
            spec.canonical_string(),
            solver.max_depth_seen,
            slots.len(),
        ))
    })?;

    for (id, cls) in slot_ids.iter().zip(&solution) {
        classes.insert(*id, to_class(cls));
    }

    let catalog = CurveCatalog::from_classes(
        spec.clone(),
        rank,
        classes,
        "chain=standard anchors=searched search=v1".to_string(),
    );
    verify_involution(&catalog, &word)?;
    Ok(catalog)
}

/// Hard oracle run at build time: `Ψ(θ)² = I`, `Ψ(θ) ≠ I`, and `Ψ(θ) = -I`
/// exactly when `k = 0`.
fn verify_involution(catalog: &CurveCatalog, word: &TwistWord) -> Result<(), CatalogError> {
    let psi = crate::rewrite::word_matrix(word, catalog)
        .map_err(|e| CatalogError::Underdetermined(format!("word evaluation failed: {e}")))?;
    if !psi.is_involution() || psi.is_identity() {
        return Err(CatalogError::Underdetermined(
            "constructed classes do not give an involution".into(),
        ));
    }
    if catalog.spec().vertical_genus() == 0 && !psi.is_minus_identity() {
        return Err(CatalogError::Underdetermined(
            "k = 0 word must act as minus identity".into(),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// validation report
// ---------------------------------------------------------------------------

/// Outcome of one named catalog check.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CatalogCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CatalogReport {
    pub checks: Vec<CatalogCheck>,
}

impl CatalogReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl std::fmt::Display for CatalogReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Golden signature fixtures: the bundled reference configurations and their
/// exact `σ` values, in listed order.
pub const GOLDEN_SIGNATURES: [(&str, i64); 12] = [
    ("(0 2 1,1 2 0)", -12),
    ("(0 4 1,1 2 0)", -12),
    ("(0 2 1,1 4 0)", -12),
    ("(0 4 1,1 4 0)", -12),
    ("(1 2 1,1 4 0)", -16),
    ("(0 2 1,1 4 1)", -16),
    ("(0 2 2,1 4 0)", -16),
    ("(0 2 1,1 2 1,1 2 0)", -20),
    ("(0 2 1,1 2 1,1 2 2,1 2 1)", -36),
    ("(2 2 1,1 2 2,1 4 1)", -36),
    ("(3 4 2,1 4 2)", -36),
    ("(1 4 1,1 2 1,1 6 2)", -32),
];

/// Validate a catalog: intersection patterns, nonzero classes, span rank,
/// the involution law, the anchor convention for `k = 0` single copies, and
/// the golden signature when the spec is a fixture entry.
pub fn validate_catalog(catalog: &CurveCatalog) -> Result<CatalogReport, CatalogError> {
    let spec = catalog.spec();
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(CatalogCheck { name: name.to_string(), passed, detail });
    };

    // (1) chain intersection pattern per copy, junction ends included
    let mut gram_ok = true;
    let mut gram_detail = String::new();
    for j in 1..=spec.copy_count() {
        let h = spec.copy(j).horizontal_genus();
        let chain: Vec<&HomologyClass> = (1..=2 * h + 1)
            .map(|pos| catalog.resolve(&CycleId::C { copy: j as u32, pos }).unwrap())
            .collect();
        for a in 0..chain.len() {
            for b in (a + 1)..chain.len() {
                let w = homology::symplectic_form(chain[a], chain[b])?;
                let expect_adjacent = b == a + 1;
                let ok = if expect_adjacent { w.abs() == Int::from(1) } else { w.is_zero() };
                if !ok {
                    gram_ok = false;
                    let _ = write!(
                        gram_detail,
                        "copy {j}: |ω(c{}, c{})| = {} ",
                        a + 1,
                        b + 1,
                        w
                    );
                }
            }
        }
    }
    push("chain-pattern", gram_ok, if gram_ok { "chain Gram pattern holds".into() } else { gram_detail });

    // (2) all classes nonzero
    let zero = catalog.classes().iter().find(|(_, c)| c.is_zero());
    push(
        "nonzero-classes",
        zero.is_none(),
        match zero {
            None => "all classes nonzero".into(),
            Some((id, _)) => format!("zero class at {id}"),
        },
    );

    // (3) involution law
    let word = theta_word(spec).map_err(|e| CatalogError::InvalidSpec(e.to_string()))?;
    match crate::rewrite::word_matrix(&word, catalog) {
        Ok(psi) => {
            let inv = psi.is_involution() && !psi.is_identity();
            push("involution", inv, format!("Ψ(θ)² = I: {}", inv));
            if spec.vertical_genus() == 0 {
                let minus = psi.is_minus_identity();
                push("hyperelliptic-action", minus, format!("Ψ(θ) = -I: {minus}"));
            }
        }
        Err(e) => push("involution", false, format!("word evaluation failed: {e}")),
    }

    // (4) span rank: equals 2h + k, strictly less than 2g when k > 0
    let span_rank = class_span_rank(catalog);
    let expected = (2 * spec.horizontal_genus() + spec.vertical_genus()) as usize;
    push(
        "span-rank",
        span_rank == expected,
        format!("rank {span_rank}, expected {expected} (ambient {})", catalog.rank()),
    );

    // (5) anchor convention: for a single k = 0 copy the anchor is the chain
    // conjugation image
    if spec.copy_count() == 1 && spec.copy(1).vertical_genus == 0 {
        let h = spec.copy(1).horizontal_genus();
        let chain: Vec<HomologyClass> = (1..=2 * h + 1)
            .map(|pos| catalog.resolve(&CycleId::C { copy: 1, pos }).unwrap().clone())
            .collect();
        let derived = derive_b0(&chain)?;
        let stored = catalog.resolve(&CycleId::B { copy: 1, arm: 0 })?;
        let ok = *stored == derived || *stored == derived.neg();
        push("anchor-conjugation", ok, format!("derived anchor matches: {ok}"));
    }

    // (6) golden signature when the spec is a fixture entry
    if let Some((_, sigma)) =
        GOLDEN_SIGNATURES.iter().find(|(s, _)| *s == spec.canonical_string())
    {
        let flags = crate::meyer::ConventionFlags::calibrated();
        match crate::meyer::fibration_signature(&word.squared(), catalog, &flags) {
            Ok(computed) => push(
                "golden-signature",
                computed == *sigma,
                format!("σ = {computed}, reference {sigma}"),
            ),
            Err(e) => push("golden-signature", false, format!("signature failed: {e}")),
        }
    }

    Ok(CatalogReport { checks })
}

/// Rank of the integer span of all catalog classes.
pub fn class_span_rank(catalog: &CurveCatalog) -> usize {
    let cols: Vec<Vec<i64>> = catalog
        .classes()
        .values()
        .map(|c| {
            c.coords()
                .iter()
                .map(|x| {
                    // classes produced by the builder are i64-sized
                    x.to_string().parse::<i64>().unwrap_or(0)
                })
                .collect()
        })
        .collect();
    search::col_span_basis(&cols).len()
}

// ---------------------------------------------------------------------------
// persistence
// ---------------------------------------------------------------------------

/// Serialize a catalog to the line-oriented text format:
/// header `version=1`, `spec=...`, `rank=...`, `flags=...`; one record per
/// cycle `C j m: a1 a2 ... a2G`; comments start with `#`.
pub fn save_catalog(catalog: &CurveCatalog) -> String {
    let mut out = String::new();
    out.push_str("# curve catalog\n");
    out.push_str("version=1\n");
    let _ = writeln!(out, "spec={}", catalog.spec().canonical_string());
    let _ = writeln!(out, "rank={}", catalog.rank());
    let _ = writeln!(out, "flags={}", catalog.convention());
    for (id, class) in catalog.classes() {
        let (fam, j, idx) = match *id {
            CycleId::C { copy, pos } => ("C", copy, pos),
            CycleId::B { copy, arm } => ("B", copy, arm),
            CycleId::X { junction } => ("X", junction, 0),
            CycleId::T { junction } => ("T", junction, 0),
        };
        let coords: Vec<String> = class.coords().iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "{fam} {j} {idx}: {}", coords.join(" "));
    }
    out
}

/// Parse a catalog file; revalidation is the caller's business (the CLI
/// records the validation status on load).
pub fn load_catalog(text: &str) -> Result<CurveCatalog, CatalogError> {
    let mut version = None;
    let mut spec: Option<SurfaceSpec> = None;
    let mut rank: Option<usize> = None;
    let mut flags = String::new();
    let mut classes = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err =
            |msg: String| CatalogError::File(format!("line {}: {}", lineno + 1, msg));
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(v) = line.strip_prefix("version=") {
            version = Some(v.trim().to_string());
            continue;
        }
        if let Some(s) = line.strip_prefix("spec=") {
            spec = Some(
                crate::config::parse_spec(s.trim())
                    .map_err(|e| err(format!("bad spec: {e}")))?,
            );
            continue;
        }
        if let Some(r) = line.strip_prefix("rank=") {
            let r: usize = r.trim().parse().map_err(|_| err("bad rank".into()))?;
            if r % 2 != 0 {
                return Err(err(format!("ambient rank must be even, got {r}")));
            }
            rank = Some(r);
            continue;
        }
        if let Some(f) = line.strip_prefix("flags=") {
            flags = f.trim().to_string();
            continue;
        }
        // record line: `F j idx: coords`
        let (head, coords) = line.split_once(':').ok_or_else(|| err("expected record".into()))?;
        let mut parts = head.split_whitespace();
        let fam = parts.next().ok_or_else(|| err("missing family".into()))?;
        let j: u32 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err("missing copy index".into()))?;
        let idx: u32 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err("missing position index".into()))?;
        let id = match fam {
            "C" => CycleId::C { copy: j, pos: idx },
            "B" => CycleId::B { copy: j, arm: idx },
            "X" => CycleId::X { junction: j },
            "T" => CycleId::T { junction: j },
            other => return Err(err(format!("unknown family {other}"))),
        };
        let coords: Vec<Int> = coords
            .split_whitespace()
            .map(|s| s.parse::<Int>().map_err(|_| err(format!("bad coordinate {s}"))))
            .collect::<Result<_, _>>()?;
        let expected_rank = rank.ok_or_else(|| err("record before rank header".into()))?;
        if coords.len() != expected_rank {
            return Err(err(format!(
                "record has {} coordinates, rank is {expected_rank}",
                coords.len()
            )));
        }
        classes.insert(id, HomologyClass::new(coords)?);
    }
    match version.as_deref() {
        Some("1") => {}
        Some(v) => return Err(CatalogError::File(format!("unsupported version {v}"))),
        None => return Err(CatalogError::File("missing version header".into())),
    }
    let spec = spec.ok_or_else(|| CatalogError::File("missing spec header".into()))?;
    let rank = rank.ok_or_else(|| CatalogError::File("missing rank header".into()))?;
    Ok(CurveCatalog::from_classes(spec, rank, classes, flags))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_spec;

    #[test]
    fn k0_single_copy_catalog() {
        let spec = parse_spec("(0 0 1)").unwrap();
        let catalog = build_catalog(&spec).unwrap();
        // chain classes e1, e2, e1 and the derived anchor e2
        let c1 = catalog.resolve(&CycleId::C { copy: 1, pos: 1 }).unwrap();
        let c3 = catalog.resolve(&CycleId::C { copy: 1, pos: 3 }).unwrap();
        assert_eq!(c1, c3);
        let b0 = catalog.resolve(&CycleId::B { copy: 1, arm: 0 }).unwrap();
        assert_eq!(b0, catalog.resolve(&CycleId::C { copy: 1, pos: 2 }).unwrap());
        let report = validate_catalog(&catalog).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn derived_anchor_genus_two() {
        // chain u1, v1, u1+u2, v2, u2 gives anchor v2 - v1
        let spec = parse_spec("(1 0 1)").unwrap();
        let catalog = build_catalog(&spec).unwrap();
        let b0 = catalog.resolve(&CycleId::B { copy: 1, arm: 0 }).unwrap();
        assert_eq!(b0, &HomologyClass::from_i64(&[0, -1, 0, 1]));
    }

    #[test]
    fn single_copy_with_arm() {
        let spec = parse_spec("(0 2 1)").unwrap();
        let catalog = build_catalog(&spec).unwrap();
        let report = validate_catalog(&catalog).unwrap();
        assert!(report.all_passed(), "{report}");
        assert_eq!(class_span_rank(&catalog), 4);
        assert_eq!(catalog.rank(), 6);
    }

    #[test]
    fn build_is_deterministic() {
        let spec = parse_spec("(0 2 1)").unwrap();
        let a = build_catalog(&spec).unwrap();
        let b = build_catalog(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(save_catalog(&a), save_catalog(&b));
    }

    #[test]
    fn save_load_round_trip() {
        let spec = parse_spec("(0 2 1)").unwrap();
        let catalog = build_catalog(&spec).unwrap();
        let text = save_catalog(&catalog);
        let loaded = load_catalog(&text).unwrap();
        assert_eq!(catalog, loaded);
    }

    #[test]
    fn load_rejects_odd_rank() {
        let text = "version=1\nspec=(0 0 1)\nrank=3\n";
        assert!(matches!(load_catalog(text), Err(CatalogError::File(_))));
    }

    #[test]
    fn load_keeps_broken_catalog_for_validation() {
        let spec = parse_spec("(0 0 1)").unwrap();
        let catalog = build_catalog(&spec).unwrap();
        let mut text = save_catalog(&catalog);
        // corrupt one coordinate: loading succeeds, validation fails
        text = text.replace("C 1 2: 0 1", "C 1 2: 1 1");
        let loaded = load_catalog(&text).unwrap();
        let report = validate_catalog(&loaded).unwrap();
        assert!(!report.all_passed());
    }

    #[test]
    fn sign_flip_leaves_word_matrix_unchanged() {
        let spec = parse_spec("(0 2 1)").unwrap();
        let catalog = build_catalog(&spec).unwrap();
        let word = theta_word(&spec).unwrap();
        let base = crate::rewrite::word_matrix(&word, &catalog).unwrap();
        let mut rng = crate::meyer::SplitMix64::new(5);
        for _ in 0..10 {
            let ids: Vec<CycleId> = catalog.classes().keys().copied().collect();
            let pick = ids[rng.below(ids.len() as u64) as usize];
            let mut classes = catalog.classes().clone();
            classes.insert(pick, classes[&pick].neg());
            let flipped = CurveCatalog::from_classes(
                spec.clone(),
                catalog.rank(),
                classes,
                catalog.convention().to_string(),
            );
            assert_eq!(crate::rewrite::word_matrix(&word, &flipped).unwrap(), base);
        }
    }
}
