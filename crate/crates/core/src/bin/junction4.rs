//! Transplantation test on (0 2 1,1 2 0): embed single-copy solutions for
//! each copy (with end-class substitution variants), then recover x1 exactly
//! from the rank-1 residual. Oracle: word = -I and sigma(theta^2) = -12.

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

fn as_transvection(k: &M) -> Option<V> {
    let rank = k.len();
    let mut n: Vec<V> = k.clone();
    for j in 0..rank {
        n[j][j] -= 1;
    }
    let j0 = (0..rank).find(|&j| n[j].iter().any(|&v| v != 0))?;
    let col = n[j0].clone();
    let g = col.iter().fold(0i64, |acc, &v| num_integer::gcd(acc, v.abs()));
    let x0: V = col.iter().map(|&v| v / g).collect();
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
    let jx0: V = {
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
    let s = (s2 as f64).sqrt() as i64;
    if s * s != s2 || (0..rank).any(|i| w[i] != s2 * jx0[i]) {
        return None;
    }
    Some(x0.iter().map(|&v| v * s).collect())
}

/// single-copy solutions for (l 2 r) with h = 1 in local coords
/// (u, v, w, z): tuples (b0, arm1, arm2); chain is standard u, v, u.
fn local_solutions() -> Vec<(V, V, V)> {
    // from the discovery runs (corrections zero, b0 = -v + vertical):
    vec![
        // b0, b1, b2
        (vec![0, -1, -1, -1], vec![1, 0, -1, 1], vec![1, 0, -2, 0]),
        (vec![0, -1, -1, -1], vec![1, 0, 0, 2], vec![1, 0, -1, 1]),
        (vec![0, -1, -1, 0], vec![1, 0, 0, 2], vec![1, 0, -1, 2]),
        (vec![0, -1, -1, 0], vec![1, 0, 1, 2], vec![1, 0, 0, 2]),
        (vec![0, -1, 0, -1], vec![1, 0, -2, 1], vec![1, 0, -2, -1]),
        (vec![0, -1, -1, 1], vec![1, 0, 0, 1], vec![1, 0, -1, -1]),
    ]
}

fn main() {
    let rank = 8usize; // u1 v1 u2 v2 w1 z1 w2 z2
    let spec = parse_spec("(0 2 1,1 2 0)").unwrap();
    let word = theta_word(&spec).unwrap();
    println!("word {word}");
    let flags = ConventionFlags::calibrated();
    let e = |i: usize| -> V {
        let mut v = vec![0i64; rank];
        v[i] = 1;
        v
    };
    let add = |a: &V, b: &V| -> V { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let t1 = add(&e(0), &e(2)); // u1 + u2

    // embed copy 1 (0 2 1): local (u, v, w, z) -> u ∈ {u1, t1}, v -> v1, w,z -> w1,z1
    // embed copy 2 (1 2 0): local u -> {u2, t1}, v -> v2, w,z -> w2,z2
    let embed = |local: &V, uvec: &V, vidx: usize, wbase: usize| -> V {
        let mut out = vec![0i64; rank];
        for i in 0..rank {
            out[i] += local[0] * uvec[i];
        }
        out[vidx] += local[1];
        out[wbase] += local[2];
        out[wbase + 1] += local[3];
        out
    };

    let sols = local_solutions();
    let minus_i: M =
        (0..rank).map(|j| (0..rank).map(|i| if i == j { -1 } else { 0 }).collect()).collect();
    let mut found = 0;
    for (s1idx, s1) in sols.iter().enumerate() {
        for u1sub in 0..2 {
            // which vector plays "u" in copy 1's classes
            let uv1 = if u1sub == 0 { e(0) } else { t1.clone() };
            let b10 = embed(&s1.0, &uv1, 1, 4);
            let b11 = embed(&s1.1, &uv1, 1, 4);
            let b12 = embed(&s1.2, &uv1, 1, 4);
            for (s2idx, s2) in sols.iter().enumerate() {
                for u2sub in 0..2 {
                    let uv2 = if u2sub == 0 { e(2) } else { t1.clone() };
                    let b20 = embed(&s2.0, &uv2, 3, 6);
                    let b21 = embed(&s2.1, &uv2, 3, 6);
                    let b22 = embed(&s2.2, &uv2, 3, 6);
                    // chain classes
                    let c11 = e(0);
                    let c12 = e(1);
                    let c22 = e(3);
                    let c23 = e(2);
                    // resolve all letters except X1; then solve X1 exactly:
                    // W = P T(x1) S with P = T(c22)T(c12), S = rest
                    let p_inv = mat_mul(&tcols(rank, &c12, true), &identity(rank));
                    let p_inv = mat_mul(&p_inv, &tcols(rank, &c22, true));
                    // order: P = T(c22)·T(c12) so P^{-1} = T(c12)^{-1}·T(c22)^{-1}
                    let s_seq: Vec<&V> = vec![
                        &t1, &b20, &c22, &b21, &b22, &c23, &b10, &c12, &b11, &b12, &c11,
                    ];
                    let s_inv = {
                        let mut acc = identity(rank);
                        for v in s_seq.iter().rev() {
                            acc = mat_mul(&acc, &tcols(rank, v, true));
                        }
                        acc
                    };
                    let kx = mat_mul(&mat_mul(&p_inv, &minus_i), &s_inv);
                    if let Some(x1) = as_transvection(&kx) {
                        // verify the full word and sigma
                        let resolve = |id: &CycleId| -> V {
                            match *id {
                                CycleId::C { copy: 1, pos: 1 } => c11.clone(),
                                CycleId::C { copy: 1, pos: 2 } => c12.clone(),
                                CycleId::C { copy: 2, pos: 2 } => c22.clone(),
                                CycleId::C { copy: 2, pos: 3 } => c23.clone(),
                                CycleId::T { .. } => t1.clone(),
                                CycleId::X { .. } => x1.clone(),
                                CycleId::B { copy: 1, arm: 0 } => b10.clone(),
                                CycleId::B { copy: 1, arm: 1 } => b11.clone(),
                                CycleId::B { copy: 1, arm: 2 } => b12.clone(),
                                CycleId::B { copy: 2, arm: 0 } => b20.clone(),
                                CycleId::B { copy: 2, arm: 1 } => b21.clone(),
                                CycleId::B { copy: 2, arm: 2 } => b22.clone(),
                                _ => unreachable!(),
                            }
                        };
                        let resolved: Vec<V> = word.letters().iter().map(|l| resolve(&l.id)).collect();
                        let mut wmat = identity(rank);
                        for v in &resolved {
                            wmat = mat_mul(&wmat, &tcols(rank, v, false));
                        }
                        if wmat != minus_i {
                            continue;
                        }
                        let sq: Vec<HomologyClass> = resolved
                            .iter()
                            .chain(resolved.iter())
                            .map(|v| HomologyClass::from_i64(v))
                            .collect();
                        let sigma = fibration_signature_classes(&sq, &flags).ok();
                        println!(
                            "TRANSPLANT s1={s1idx} u1sub={u1sub} s2={s2idx} u2sub={u2sub} x1={x1:?} sigma={sigma:?}"
                        );
                        found += 1;
                    }
                }
            }
        }
    }
    println!("junction4 solutions: {found}");
}
