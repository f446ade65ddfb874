//! k=0 two-copy junction: free b0 classes (small boxes), x1 recovered
//! exactly from the rank-1 residual.

use rayon::prelude::*;
use twistforge_core::config::parse_spec;
use twistforge_core::words::theta_word;

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

/// if K = I + x (Jx)^T for some integer x, return it (canonical sign)
fn as_transvection(k: &M) -> Option<V> {
    let rank = k.len();
    // N = K - I must be rank one: N = x * w^T with w = Jx
    let mut n: Vec<V> = k.clone();
    for j in 0..rank {
        n[j][j] -= 1;
    }
    // find a nonzero column
    let j0 = (0..rank).find(|&j| n[j].iter().any(|&v| v != 0))?;
    let col = n[j0].clone();
    let g = col.iter().fold(0i64, |acc, &v| num_integer::gcd(acc, v.abs()));
    let x0: V = col.iter().map(|&v| v / g).collect();
    // every column must be a multiple of x0
    let mut w = vec![0i64; rank];
    for j in 0..rank {
        // n[j] = w_j * x0
        let lead = x0.iter().position(|&v| v != 0).unwrap();
        if n[j][lead] % x0[lead] != 0 {
            return None;
        }
        let f = n[j][lead] / x0[lead];
        if (0..rank).any(|i| n[j][i] != f * x0[i]) {
            return None;
        }
        w[j] = f;
    }
    // need w = s^2 * (J x0) for integer s, then x = s*x0
    let jx0: V = {
        let mut out = vec![0i64; rank];
        for m in 0..rank / 2 {
            // (Jv)_i = omega(e_i, v)
            out[2 * m] = x0[2 * m + 1];
            out[2 * m + 1] = -x0[2 * m];
        }
        out
    };
    let lead = jx0.iter().position(|&v| v != 0)?;
    if w[lead] == 0 || w[lead] % jx0[lead] != 0 {
        return None;
    }
    let s2 = w[lead] / jx0[lead];
    if s2 <= 0 {
        return None;
    }
    let s = (s2 as f64).sqrt() as i64;
    if s * s != s2 {
        return None;
    }
    if (0..rank).any(|i| w[i] != s2 * jx0[i]) {
        return None;
    }
    Some(x0.iter().map(|&v| v * s).collect())
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
    let rank = 8usize;
    let spec = parse_spec("(1 0 1,1 0 1)").unwrap();
    let word = theta_word(&spec).unwrap();
    println!("word {word}");
    let e = |i: usize| -> V {
        let mut v = vec![0i64; rank];
        v[i] = 1;
        v
    };
    let add = |a: &V, b: &V| -> V { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let t1 = add(&e(2), &e(4));
    let chain1: Vec<V> = vec![e(0), e(1), add(&e(0), &e(2)), e(3), t1.clone()];
    let chain2: Vec<V> = vec![t1.clone(), e(5), add(&e(4), &e(6)), e(7), e(6)];

    // word: C24 C25 C22 C14 C12 C11 X1 T1 B20 C25 C24 C22 C23 B10 C14 C11 C12 C13
    let a_mat = {
        let seq = [&chain2[3], &chain2[4], &chain2[1], &chain1[3], &chain1[1], &chain1[0]];
        let mut acc = tcols(rank, seq[0], false);
        for v in &seq[1..] {
            acc = mat_mul(&acc, &tcols(rank, v, false));
        }
        acc
    };
    let a_inv = {
        let seq = [&chain1[0], &chain1[1], &chain1[3], &chain2[1], &chain2[4], &chain2[3]];
        let mut acc = tcols(rank, seq[0], true);
        for v in &seq[1..] {
            acc = mat_mul(&acc, &tcols(rank, v, true));
        }
        acc
    };
    let _ = a_mat;
    let minus_i: M =
        (0..rank).map(|j| (0..rank).map(|i| if i == j { -1 } else { 0 }).collect()).collect();
    let c0 = mat_mul(&a_inv, &minus_i);
    // P2 = T(c25) T(c24) T(c22) T(c23); P3 = T(c14) T(c11) T(c12) T(c13)
    let p2_inv = {
        let seq = [&chain2[2], &chain2[1], &chain2[3], &chain2[4]];
        let mut acc = tcols(rank, seq[0], true);
        for v in &seq[1..] {
            acc = mat_mul(&acc, &tcols(rank, v, true));
        }
        acc
    };
    let p3_inv = {
        let seq = [&chain1[2], &chain1[1], &chain1[0], &chain1[3]];
        let mut acc = tcols(rank, seq[0], true);
        for v in &seq[1..] {
            acc = mat_mul(&acc, &tcols(rank, v, true));
        }
        acc
    };
    let t1_inv = tcols(rank, &t1, true);

    let b_cands: Vec<V> = gen(rank, -1, 1).into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    println!("{} candidates for each b0", b_cands.len());

    let found: Vec<String> = b_cands
        .par_iter()
        .flat_map_iter(|b10| {
            let mut local = Vec::new();
            let c1 = mat_mul(&mat_mul(&c0, &p3_inv), &tcols(rank, b10, true));
            let c1 = mat_mul(&c1, &p2_inv);
            for b20 in &b_cands {
                let kx = mat_mul(&mat_mul(&c1, &tcols(rank, b20, true)), &t1_inv);
                if let Some(x1) = as_transvection(&kx) {
                    local.push(format!("b10={b10:?} b20={b20:?} x1={x1:?}"));
                    if local.len() > 3 {
                        return local;
                    }
                }
            }
            local
        })
        .collect();
    println!("junction3 solutions: {}", found.len());
    for f in found.iter().take(30) {
        println!("{f}");
    }
}
