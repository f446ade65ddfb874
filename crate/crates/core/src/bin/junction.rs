//! Two-copy junction solver for the golden case (0 2 1,1 2 0).
//!
//! Ambient rank 2g = 12, coordinates per copy: (u1,v1 | w1,z1) for copy 1,
//! (u2,v2 | w2,z2) for copy 2 — laid out as u1 v1 u2 v2 w1 z1 w2 z2 ... here
//! we use: 0:u1 1:v1 2:u2 3:v2 4:w1 5:z1 6:w2 7:z2 (rank 8 span model; the
//! ambient +1 block is irrelevant and omitted). Chain: c11=u1, c12=v1,
//! t1=u1+u2 (+corr), c22=v2, c23=u2 (+corr). Unknowns: x1 (list), b10, b20
//! (boxes), arms peeled.

use rayon::prelude::*;
use twistforge_core::config::parse_spec;
use twistforge_core::homology::HomologyClass;
use twistforge_core::meyer::{fibration_signature_classes, ConventionFlags};
use twistforge_core::words::{theta_word, CycleId};

type V = Vec<i64>;
type M = Vec<V>;

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

fn col_span_basis(m: &M) -> Vec<V> {
    let mut basis: Vec<V> = Vec::new();
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
            let v: V = v.iter().map(|&x| x / g).collect();
            basis.push(v);
            basis.sort_by_key(|b| b.iter().position(|&x| x != 0).unwrap());
        }
    }
    basis
}

fn diff_of(k: &M) -> M {
    let rank = k.len();
    let mut d = k.clone();
    for j in 0..rank {
        d[j][j] -= 1;
    }
    d
}

fn mat_rank(m: &M) -> usize {
    col_span_basis(m).len()
}

fn peel(rank: usize, kmat: &M, terms: usize, out: &mut Vec<V>, results: &mut Vec<Vec<V>>, budget: &mut i64) {
    if results.len() >= 8 || *budget <= 0 {
        return;
    }
    *budget -= 1;
    let diff = diff_of(kmat);
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
        return;
    }
    let basis = col_span_basis(&diff);
    let d = basis.len().min(3);
    let mut seen = std::collections::BTreeSet::new();
    let mut coeff = vec![-2i64; d];
    loop {
        let cand: V = (0..rank).map(|i| (0..d).map(|a| coeff[a] * basis[a][i]).sum()).collect();
        if cand.iter().any(|&x| x != 0) {
            let g = cand.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x.abs()));
            let prim: V = cand.iter().map(|&x| x / g).collect();
            let canon: V = if prim.iter().find(|&&x| x != 0).map(|&x| x < 0).unwrap_or(false) {
                prim.iter().map(|&x| -x).collect()
            } else {
                prim
            };
            if seen.insert(canon.clone()) {
                for scale in 1..=2i64 {
                    let b: V = canon.iter().map(|&x| x * scale).collect();
                    let kprime = mat_mul(&tcols(rank, &b, true), kmat);
                    if mat_rank(&diff_of(&kprime)) <= terms - out.len() - 1 {
                        out.push(b.clone());
                        peel(rank, &kprime, terms, out, results, budget);
                        out.pop();
                    }
                }
            }
        }
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

fn main() {
    let rank = 8usize; // span model: u1 v1 u2 v2 w1 z1 w2 z2
    let spec = parse_spec("(0 2 1,1 2 0)").unwrap();
    let word = theta_word(&spec).unwrap();
    let letters: Vec<CycleId> = word.letters().iter().map(|l| l.id).collect();
    println!("junction: word {word}");
    let flags = ConventionFlags::calibrated();

    let e = |i: usize| -> V {
        let mut v = vec![0i64; rank];
        v[i] = 1;
        v
    };
    let (u1, v1, u2, v2) = (e(0), e(1), e(2), e(3));
    let mk = |base: &V, add: &[(usize, i64)]| -> V {
        let mut v = base.clone();
        for &(i, c) in add {
            v[i] += c;
        }
        v
    };
    let t1_base = mk(&u1, &[(2, 1)]); // u1 + u2

    // x1 candidates: small vectors built from u's, v's and vertical entries
    let mut x1s: Vec<V> = Vec::new();
    for uc1 in -1i64..=1 {
        for vc1 in -1i64..=1 {
            for uc2 in -1i64..=1 {
                for vc2 in -1i64..=1 {
                    for wv in gen(4, -1, 1) {
                        let mut v = vec![uc1, vc1, uc2, vc2];
                        v.extend_from_slice(&wv);
                        if v.iter().any(|&x| x != 0) {
                            x1s.push(v);
                        }
                    }
                }
            }
        }
    }
    println!("{} x1 candidates", x1s.len());

    let args: Vec<String> = std::env::args().skip(1).collect();
    let corr_r: i64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(0);
    let b0_r: i64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    // per-copy vertical corrections on the middle chain positions and t1
    let corr_opts: Vec<V> = gen(2, -corr_r, corr_r);
    // b0 shapes: -(v_j) + vertical
    let vert_box: Vec<V> = gen(2, -b0_r, b0_r);

    let minus_i: M = (0..rank).map(|j| (0..rank).map(|i| if i == j { -1 } else { 0 }).collect()).collect();

    // enumerate: corr_mid1 (vertical on c11 in w1z1), corr_t (vertical on t1),
    // corr_mid2 (vertical on c23 in w2z2), b10 = -(v1)+vert1, b20 = -(v2)+vert2
    let mut jobs: Vec<(V, V, V)> = Vec::new();
    for cm1 in &corr_opts {
        for ct in &corr_opts {
            for cm2 in &corr_opts {
                jobs.push((cm1.clone(), ct.clone(), cm2.clone()));
            }
        }
    }
    println!("{} correction jobs", jobs.len());

    let solutions: Vec<String> = jobs
        .par_iter()
        .flat_map_iter(|(cm1, ct, cm2)| {
            let mut local: Vec<String> = Vec::new();
            let c11 = mk(&u1, &[(4, cm1[0]), (5, cm1[1])]);
            let t1 = mk(&t1_base, &[(4, ct[0]), (5, ct[1])]);
            let c23 = mk(&u2, &[(6, cm2[0]), (7, cm2[1])]);
            let c12 = v1.clone();
            let c22 = v2.clone();
            for bv1 in &vert_box {
                let b10 = {
                    let mut v = vec![0i64; rank];
                    v[1] = -1;
                    v[4] += bv1[0];
                    v[5] += bv1[1];
                    v
                };
                for bv2 in &vert_box {
                    let b20 = {
                        let mut v = vec![0i64; rank];
                        v[3] = -1;
                        v[6] += bv2[0];
                        v[7] += bv2[1];
                        v
                    };
                    for x1 in &x1s {
                        // W = T(c22) T(c12) T(x1) T(t1) T(b20) T(c22) A2 T(c23)
                        //     T(b10) T(c12) A1 T(c11) = -I
                        // solve A2 then A1 by nested peeling
                        let pre = [
                            tcols(rank, &c22, false),
                            tcols(rank, &c12, false),
                            tcols(rank, x1, false),
                            tcols(rank, &t1, false),
                            tcols(rank, &b20, false),
                            tcols(rank, &c22, false),
                        ];
                        let mut p = identity(rank);
                        for t in &pre {
                            p = mat_mul(&p, t);
                        }
                        // C := P^{-1} (-I) = A2 Q A1 R where Q = T(c23) T(b10) T(c12), R = T(c11)
                        let pinv = {
                            let prei = [
                                tcols(rank, &c22, true),
                                tcols(rank, &b20, true),
                                tcols(rank, &t1, true),
                                tcols(rank, x1, true),
                                tcols(rank, &c12, true),
                                tcols(rank, &c22, true),
                            ];
                            let mut acc = identity(rank);
                            for t in &prei {
                                acc = mat_mul(&acc, t);
                            }
                            acc
                        };
                        let c = mat_mul(&pinv, &minus_i);
                        let q = {
                            let mut acc = identity(rank);
                            acc = mat_mul(&acc, &tcols(rank, &c23, false));
                            acc = mat_mul(&acc, &tcols(rank, &b10, false));
                            acc = mat_mul(&acc, &tcols(rank, &c12, false));
                            acc
                        };
                        let qinv = {
                            let mut acc = identity(rank);
                            acc = mat_mul(&acc, &tcols(rank, &c12, true));
                            acc = mat_mul(&acc, &tcols(rank, &b10, true));
                            acc = mat_mul(&acc, &tcols(rank, &c23, true));
                            acc
                        };
                        let rinv = tcols(rank, &c11, true);
                        // A2 = C R^{-1} (Q A1)^{-1}: peel A2 from K2 := C Rinv Qinv-ish
                        // Instead: A2 Q A1 = C Rinv =: D. Try candidates for A2 via peel on
                        // D Qinv (approx if A1 small) — use exact: enumerate A2 by peel on
                        // D Qinv with rank filter, then A1 = Q^{-1} A2^{-1} D must peel.
                        let d = mat_mul(&c, &rinv);
                        let dq = mat_mul(&d, &qinv);
                        // necessary: rank(A2 Q A1 Q^{-1} - I) <= 2 + 2(conjugated)
                        if mat_rank(&diff_of(&dq)) > 4 {
                            continue;
                        }
                        let mut out = Vec::new();
                        let mut a2s = Vec::new();
                        let mut budget = 4000i64;
                        peel_partial(rank, &dq, 2, &mut out, &mut a2s, &mut budget);
                        for a2 in &a2s {
                            let mut a2m = identity(rank);
                            for b in a2 {
                                a2m = mat_mul(&a2m, &tcols(rank, b, false));
                            }
                            let a2i = {
                                let mut acc = identity(rank);
                                for b in a2.iter().rev() {
                                    acc = mat_mul(&acc, &tcols(rank, b, true));
                                }
                                acc
                            };
                            // A1 = Q^{-1} A2^{-1} D
                            let a1m = mat_mul(&qinv, &mat_mul(&a2i, &d));
                            let mut out1 = Vec::new();
                            let mut a1s = Vec::new();
                            let mut budget1 = 2000i64;
                            peel(rank, &a1m, 2, &mut out1, &mut a1s, &mut budget1);
                            for a1 in &a1s {
                                // full verification
                                let resolve = |id: &CycleId| -> V {
                                    match *id {
                                        CycleId::C { copy: 1, pos: 1 } => c11.clone(),
                                        CycleId::C { copy: 1, pos: 2 } => c12.clone(),
                                        CycleId::C { copy: 2, pos: 2 } => c22.clone(),
                                        CycleId::C { copy: 2, pos: 3 } => c23.clone(),
                                        CycleId::T { .. } => t1.clone(),
                                        CycleId::X { .. } => x1.clone(),
                                        CycleId::B { copy: 1, arm: 0 } => b10.clone(),
                                        CycleId::B { copy: 2, arm: 0 } => b20.clone(),
                                        CycleId::B { copy: 1, arm } => a1[(arm - 1) as usize].clone(),
                                        CycleId::B { copy: 2, arm } => a2[(arm - 1) as usize].clone(),
                                        _ => unreachable!(),
                                    }
                                };
                                let resolved: Vec<V> = letters.iter().map(|id| resolve(id)).collect();
                                let mut w = identity(rank);
                                for v in &resolved {
                                    w = mat_mul(&w, &tcols(rank, v, false));
                                }
                                if w != minus_i {
                                    continue;
                                }
                                let sq: Vec<HomologyClass> = resolved
                                    .iter()
                                    .chain(resolved.iter())
                                    .map(|v| HomologyClass::from_i64(v))
                                    .collect();
                                let sigma = fibration_signature_classes(&sq, &flags).ok();
                                if sigma == Some(-12) {
                                    let cx: i64 = x1.iter().map(|v| v.abs()).sum();
                                    local.push(format!(
                                        "{cx:2} x1={x1:?} cm1={cm1:?} ct={ct:?} cm2={cm2:?} b10={b10:?} b20={b20:?} a1={a1:?} a2={a2:?}"
                                    ));
                                    if local.len() >= 4 {
                                        return local;
                                    }
                                }
                            }
                        }
                    }
                }
            }
            local
        })
        .collect();
    let mut sorted = solutions;
    sorted.sort();
    println!("junction solutions: {}", sorted.len());
    for s in sorted.iter().take(30) {
        println!("{s}");
    }
}

/// peel variant that allows the residual to remain nontrivial (partial);
/// collects arm tuples whose transvections reduce the rank appropriately.
fn peel_partial(rank: usize, kmat: &M, terms: usize, out: &mut Vec<V>, results: &mut Vec<Vec<V>>, budget: &mut i64) {
    if results.len() >= 48 || *budget <= 0 {
        return;
    }
    *budget -= 1;
    if out.len() == terms {
        results.push(out.clone());
        return;
    }
    let diff = diff_of(kmat);
    let basis = col_span_basis(&diff);
    if basis.is_empty() {
        return;
    }
    let d = basis.len().min(3);
    let mut seen = std::collections::BTreeSet::new();
    let mut coeff = vec![-2i64; d];
    loop {
        let cand: V = (0..rank).map(|i| (0..d).map(|a| coeff[a] * basis[a][i]).sum()).collect();
        if cand.iter().any(|&x| x != 0) {
            let g = cand.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x.abs()));
            let prim: V = cand.iter().map(|&x| x / g).collect();
            let canon: V = if prim.iter().find(|&&x| x != 0).map(|&x| x < 0).unwrap_or(false) {
                prim.iter().map(|&x| -x).collect()
            } else {
                prim
            };
            if seen.insert(canon.clone()) {
                for scale in 1..=2i64 {
                    let b: V = canon.iter().map(|&x| x * scale).collect();
                    let kprime = mat_mul(&tcols(rank, &b, true), kmat);
                    out.push(b.clone());
                    peel_partial(rank, &kprime, terms, out, results, budget);
                    out.pop();
                }
            }
        }
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
