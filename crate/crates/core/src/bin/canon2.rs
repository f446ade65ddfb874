//! General single-copy catalog solver.
//!
//! Gauge: standard chain in the horizontal block, vertical corrections on
//! chain positions >= 3, b0 a free small vector. The arm classes are
//! recovered from the residual K = P^{-1} (-I) S^{-1} via the decomposition
//! (K - I) J = sum of b_p b_p^T (PSD, rank <= k), which also forces the arms
//! to be pairwise symplectically orthogonal.

use rayon::prelude::*;
use twistforge_core::config::parse_spec;
use twistforge_core::homology::HomologyClass;
use twistforge_core::meyer::{fibration_signature_classes, ConventionFlags};
use twistforge_core::words::{theta_word, CycleId};

type V = Vec<i64>;
type M = Vec<V>; // columns

fn omega(u: &[i64], v: &[i64]) -> i64 {
    (0..u.len() / 2)
        .map(|m| u[2 * m] * v[2 * m + 1] - u[2 * m + 1] * v[2 * m])
        .sum()
}

fn tcols(rank: usize, v: &[i64], inv: bool) -> M {
    (0..rank)
        .map(|j| {
            let mut x: V = (0..rank).map(|i| i64::from(i == j)).collect();
            let c = omega(&x, v);
            if c != 0 {
                for (a, b) in x.iter_mut().zip(v) {
                    *a += if inv { -c * b } else { c * b };
                }
            }
            x
        })
        .collect()
}

fn mat_mul(a: &M, b: &M) -> M {
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

fn identity(rank: usize) -> M {
    (0..rank).map(|j| (0..rank).map(|i| i64::from(i == j)).collect()).collect()
}

/// G = (K - I) * J  (as a dense row-major symmetric candidate)
fn residual_gram(k: &M) -> Vec<Vec<i64>> {
    let rank = k.len();
    // F := K - I, columns; G := F * J, so G_col_j = F * (J e_j)
    // J e_{2m} = -e_{2m+1}? With pairs (e_{2m}, e_{2m+1}), omega(e_{2m}, e_{2m+1}) = 1:
    // J as matrix with (Jv)_i giving omega(e_i, v): col action below computes F*J directly.
    let mut f = vec![vec![0i64; rank]; rank]; // rows
    for j in 0..rank {
        for i in 0..rank {
            f[i][j] = k[j][i] - i64::from(i == j);
        }
    }
    // J matrix: J[2m][2m+1] = 1, J[2m+1][2m] = -1 (row, col)
    let mut g = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            // (F J)_{ij} = sum_l F_{il} J_{lj}; J_{lj} nonzero for l = j^pair
            let (l, s) = if j % 2 == 0 { (j + 1, -1) } else { (j - 1, 1) };
            g[i][j] = s * f[i][l];
        }
    }
    g
}

fn is_symmetric(g: &[Vec<i64>]) -> bool {
    let n = g.len();
    (0..n).all(|i| (i + 1..n).all(|j| g[i][j] == g[j][i]))
}

/// integer row-reduce to find the rank and a saturated basis of the column span
fn col_span_basis(m: &M) -> Vec<V> {
    let rank = m.len();
    let mut cols: Vec<V> = (0..rank).map(|j| m[j].clone()).collect();
    // gaussian elimination over Q but keeping integer vectors (divide by gcd)
    let mut basis: Vec<V> = Vec::new();
    for col in cols.iter_mut() {
        let mut v = col.clone();
        for b in &basis {
            // eliminate leading coordinate of b from v
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
            let v: V = v.iter().map(|&x| x / g).collect();
            basis.push(v);
            basis.sort_by_key(|b| b.iter().position(|&x| x != 0).unwrap());
        }
    }
    basis
}

fn mat_rank(m: &M) -> usize {
    col_span_basis(m).len()
}

/// peel K into `terms` positive transvections, classes drawn from small
/// integer combinations of the span of K - I.
fn peel(
    rank: usize,
    kmat: &M,
    terms: usize,
    out: &mut Vec<V>,
    results: &mut Vec<Vec<V>>,
    budget: &mut i64,
) {
    if results.len() >= 16 || *budget <= 0 {
        return;
    }
    *budget -= 1;
    let mut diff = kmat.clone();
    for j in 0..rank {
        diff[j][j] -= 1;
    }
    let r = mat_rank(&diff);
    if r > terms - out.len() {
        return;
    }
    if out.len() == terms {
        if r == 0 {
            results.push(out.clone());
        }
        return;
    }
    if r == 0 {
        return; // identity reached too early: remaining arms would be zero
    }
    let basis = col_span_basis(&diff);
    let d = basis.len().min(3);
    // enumerate small combos of up to three basis vectors
    let mut seen = std::collections::BTreeSet::new();
    let mut coeff = vec![0i64; d];
    loop {
        // odometer over -2..=2
        let cand: V = (0..rank)
            .map(|i| (0..d).map(|a| coeff[a] * basis[a][i]).sum())
            .collect();
        if cand.iter().any(|&x| x != 0) {
            let g = cand.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x.abs()));
            let prim: V = cand.iter().map(|&x| x / g).collect();
            let canon = if prim.iter().find(|&&x| x != 0).map(|&x| x < 0).unwrap_or(false) {
                prim.iter().map(|&x| -x).collect::<V>()
            } else {
                prim.clone()
            };
            if seen.insert(canon.clone()) {
                for scale in 1..=2i64 {
                    let b: V = canon.iter().map(|&x| x * scale).collect();
                    let kprime = mat_mul(&tcols(rank, &b, true), kmat);
                    let mut dprime = kprime.clone();
                    for j in 0..rank {
                        dprime[j][j] -= 1;
                    }
                    if mat_rank(&dprime) < r || r <= terms - out.len() - 1 {
                        if mat_rank(&dprime) <= terms - out.len() - 1 {
                            out.push(b.clone());
                            peel(rank, &kprime, terms, out, results, budget);
                            out.pop();
                        }
                    }
                }
            }
        }
        // advance
        let mut pos = 0;
        loop {
            if pos == d {
                return;
            }
            coeff[pos] += 1;
            if coeff[pos] <= 2 {
                break;
            }
            coeff[pos] = -2;
            pos += 1;
        }
    }
}

#[allow(dead_code)]
fn decompose_psd(g: &[Vec<i64>], terms: usize, out: &mut Vec<V>, results: &mut Vec<Vec<V>>) {
    let n = g.len();
    let zero = g.iter().all(|row| row.iter().all(|&x| x == 0));
    if out.len() == terms {
        if zero && results.len() < 64 {
            results.push(out.clone());
        }
        return;
    }
    if zero {
        return; // remaining terms would need zero classes
    }
    if results.len() >= 64 {
        return;
    }
    // candidate b: b_i^2 <= g_ii; pick the first index with g_ii > 0 and
    // require b at that index nonzero positive (canonical sign)
    let lead = (0..n).find(|&i| g[i][i] > 0);
    let Some(lead) = lead else { return };
    // enumerate b with b[lead] in 1..=sqrt(g[lead][lead]), b[i]^2 <= g[i][i]
    let bounds: Vec<i64> = (0..n).map(|i| (0..).take_while(|&b| b * b <= g[i][i]).last().unwrap_or(0)).collect();
    let mut cand: V = vec![0; n];
    fn rec(
        i: usize,
        n: usize,
        lead: usize,
        bounds: &[i64],
        g: &[Vec<i64>],
        cand: &mut V,
        terms: usize,
        out: &mut Vec<V>,
        results: &mut Vec<Vec<V>>,
    ) {
        if results.len() >= 64 {
            return;
        }
        if i == n {
            // subtract and recurse
            let mut g2 = g.to_owned();
            for a in 0..n {
                for b in 0..n {
                    g2[a][b] -= cand[a] * cand[b];
                }
            }
            // PSD necessary: diagonal nonnegative and 2x2 minors of diag-pairs
            if g2.iter().enumerate().all(|(a, row)| row[a] >= 0) {
                out.push(cand.clone());
                decompose_psd(&g2, terms, out, results);
                out.pop();
            }
            return;
        }
        let lo = if i == lead { 1 } else { -bounds[i] };
        let hi = bounds[i];
        for v in lo..=hi {
            if i < lead && v != 0 {
                continue; // entries before the pivot must vanish? no: keep general
            }
            cand[i] = v;
            rec(i + 1, n, lead, bounds, g, cand, terms, out, results);
            cand[i] = 0;
        }
    }
    rec(0, n, lead, &bounds, g, &mut cand, terms, out, results);
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let spec_str = args.first().map(String::as_str).unwrap_or("(0 2 1)");
    let corr_box: i64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let b0_box: i64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);
    let max_print: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(12);

    let spec = parse_spec(spec_str).unwrap();
    assert_eq!(spec.copy_count(), 1);
    let copy = spec.copy(1);
    let h = copy.horizontal_genus() as usize;
    let k = copy.vertical_genus as usize;
    let rank = 2 * h + k;
    let word = theta_word(&spec).unwrap();
    println!("canon2 {spec_str}: h={h} k={k} rank={rank} word {word}");

    // standard horizontal chain classes (positions 1..=2h+1) in coords
    // u_m = e_{2m-2}, v_m = e_{2m-1} (0-based), vertical block = last k coords
    let chain_std: Vec<V> = (1..=2 * h + 1)
        .map(|pos| {
            let mut v = vec![0i64; rank];
            if pos % 2 == 0 {
                v[2 * (pos / 2 - 1) + 1] = 1;
            } else {
                let m = pos / 2;
                if m >= 1 {
                    v[2 * (m - 1)] = 1;
                }
                if m + 1 <= h {
                    v[2 * m] = 1;
                }
            }
            v
        })
        .collect();
    let vert_base = 2 * h;

    // enumerate vertical corrections on odd chain positions >= 3 plus the
    // middle position (if distinct), over the correction box
    let mid_pos = 2 * copy.split_index() as usize + 1;
    let mut corrected_positions: Vec<usize> = (3..=2 * h + 1).step_by(2).collect();
    if !corrected_positions.contains(&mid_pos) && mid_pos >= 3 {
        corrected_positions.push(mid_pos);
    }
    // for h = 1 this is just [3]
    corrected_positions.sort_unstable();
    corrected_positions.dedup();
    println!("corrections on chain positions {corrected_positions:?}, box ±{corr_box}; b0 box ±{b0_box}");

    fn gen(dim: usize, lo: i64, hi: i64) -> Vec<V> {
        let mut out = vec![vec![]];
        for _ in 0..dim {
            let mut next = Vec::new();
            for v in &out {
                for c in lo..=hi {
                    let mut w = v.clone();
                    w.push(c);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
    let corr_cands = gen(k * corrected_positions.len(), -corr_box, corr_box);
    // split b0 enumeration: horizontal entries capped at ±1, vertical at ±b0_box
    let b0_cands: Vec<V> = {
        let horiz = gen(2 * h, -1, 1);
        let vert = gen(k, -b0_box, b0_box);
        let mut out = Vec::new();
        for hpart in &horiz {
            for vpart in &vert {
                let mut v = hpart.clone();
                v.extend_from_slice(vpart);
                if v.iter().any(|&x| x != 0) {
                    out.push(v);
                }
            }
        }
        out
    };
    println!("{} correction tuples x {} b0 candidates", corr_cands.len(), b0_cands.len());

    let letters: Vec<CycleId> = word.letters().iter().map(|l| l.id).collect();
    let arm_range = {
        let first = letters
            .iter()
            .position(|id| matches!(id, CycleId::B { arm, .. } if *arm > 0))
            .unwrap();
        (first, first + k)
    };
    let flags = ConventionFlags::calibrated();
    let minus_i: M = (0..rank)
        .map(|j| (0..rank).map(|i| if i == j { -1 } else { 0 }).collect())
        .collect();

    let results: Vec<String> = corr_cands
        .par_iter()
        .flat_map_iter(|corr| {
            let mut local: Vec<String> = Vec::new();
            let mut chain = chain_std.clone();
            for (ci, &pos) in corrected_positions.iter().enumerate() {
                for d in 0..k {
                    chain[pos - 1][vert_base + d] += corr[ci * k + d];
                }
            }
            for b0 in &b0_cands {
                // resolve chain letters; arms unknown
                let resolve = |id: &CycleId| -> Option<&V> {
                    match *id {
                        CycleId::C { pos, .. } => Some(&chain[(pos - 1) as usize]),
                        CycleId::B { arm: 0, .. } => Some(b0),
                        _ => None,
                    }
                };
                // prefix P (letters before arm block), suffix S (after)
                let mut pinv = identity(rank);
                for id in letters[..arm_range.0].iter().rev() {
                    pinv = mat_mul(&pinv, &tcols(rank, resolve(id).unwrap(), true));
                }
                let mut sinv = identity(rank);
                for id in letters[arm_range.1..].iter().rev() {
                    sinv = mat_mul(&sinv, &tcols(rank, resolve(id).unwrap(), true));
                }
                let kmat = mat_mul(&mat_mul(&pinv, &minus_i), &sinv);
                // quick necessary test: rank(K - I) <= k
                let mut diff = kmat.clone();
                for j in 0..rank {
                    diff[j][j] -= 1;
                }
                if mat_rank(&diff) > k {
                    continue;
                }
                let mut out = Vec::new();
                let mut decomps = Vec::new();
                let mut budget = 20_000i64;
                peel(rank, &kmat, k, &mut out, &mut decomps, &mut budget);
                for arms in decomps {
                    // verify product equals K (commutation can fail if omega != 0)
                    let mut prod = identity(rank);
                    for b in &arms {
                        prod = mat_mul(&prod, &tcols(rank, b, false));
                    }
                    if prod != kmat {
                        continue;
                    }
                    // full word check + sigma
                    let resolved: Vec<V> = letters
                        .iter()
                        .map(|id| match *id {
                            CycleId::B { arm, .. } if arm > 0 => arms[(arm - 1) as usize].clone(),
                            ref other => resolve(other).unwrap().clone(),
                        })
                        .collect();
                    let mut wcols = identity(rank);
                    for v in &resolved {
                        wcols = mat_mul(&wcols, &tcols(rank, v, false));
                    }
                    if wcols != minus_i {
                        continue;
                    }
                    let sq: Vec<HomologyClass> = resolved
                        .iter()
                        .chain(resolved.iter())
                        .map(|v| HomologyClass::from_i64(v))
                        .collect();
                    let sigma = fibration_signature_classes(&sq, &flags).ok();
                    let complexity: i64 = corr.iter().map(|v| v.abs()).sum::<i64>()
                        + b0.iter().map(|v| v.abs()).sum::<i64>()
                        + arms.iter().flat_map(|a| a.iter().map(|v| v.abs())).sum::<i64>();
                    local.push(format!(
                        "{complexity:3} corr={corr:?} b0={b0:?} arms={arms:?} sigma={sigma:?}"
                    ));
                }
            }
            local
        })
        .collect();
    let mut sorted = results;
    sorted.sort();
    println!("solutions: {}", sorted.len());
    for line in sorted.iter().take(max_print) {
        println!("{line}");
    }
}
