//! Development search for the curve catalog class patterns.

use rayon::prelude::*;
use twistforge_core::config::parse_spec;
use twistforge_core::homology::HomologyClass;
use twistforge_core::meyer::{fibration_signature_classes, ConventionFlags};
use twistforge_core::words::{hyperelliptic_word, theta_word, CycleId};

type Vecs = Vec<i64>;

fn gram_omega(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut acc = 0;
    for (a, &xa) in x.iter().enumerate() {
        if xa != 0 {
            for (b, &yb) in y.iter().enumerate() {
                if yb != 0 {
                    acc += xa * g[a][b] * yb;
                }
            }
        }
    }
    acc
}

fn gram_transvect(g: &[Vec<i64>], x: &mut [i64], v: &[i64]) {
    let c = gram_omega(g, x, v);
    if c != 0 {
        for (a, b) in x.iter_mut().zip(v) {
            *a += c * b;
        }
    }
}

fn is_identity(cols: &[Vecs]) -> bool {
    cols.iter()
        .enumerate()
        .all(|(j, col)| col.iter().enumerate().all(|(i, &x)| x == i64::from(i == j)))
}

fn is_minus_identity(cols: &[Vecs]) -> bool {
    cols.iter()
        .enumerate()
        .all(|(j, col)| col.iter().enumerate().all(|(i, &x)| x == -i64::from(i == j)))
}

fn square_is_identity(cols: &[Vecs]) -> bool {
    let rank = cols.len();
    (0..rank).all(|j| {
        let once = &cols[j];
        (0..rank).all(|i| {
            let twice: i64 = (0..rank).map(|k| cols[k][i] * once[k]).sum();
            twice == i64::from(i == j)
        })
    })
}

fn word_cols(g: &[Vec<i64>], resolved: &[Vecs]) -> Vec<Vecs> {
    let dim = g.len();
    (0..dim)
        .map(|j| {
            let mut x: Vecs = (0..dim).map(|i| i64::from(i == j)).collect();
            for v in resolved.iter().rev() {
                gram_transvect(g, &mut x, v);
            }
            x
        })
        .collect()
}

fn unit(dim: usize, a: usize) -> Vecs {
    let mut v = vec![0i64; dim];
    v[a] = 1;
    v
}

// standard-form helpers for plain coordinate vectors
fn std_omega(u: &[i64], v: &[i64]) -> i64 {
    let mut acc = 0;
    for m in 0..u.len() / 2 {
        acc += u[2 * m] * v[2 * m + 1] - u[2 * m + 1] * v[2 * m];
    }
    acc
}

fn std_transvect(x: &mut [i64], v: &[i64]) {
    let c = std_omega(x, v);
    if c != 0 {
        for (a, b) in x.iter_mut().zip(v) {
            *a += c * b;
        }
    }
}

fn std_chain(h: usize, rank: usize) -> Vec<Vecs> {
    let mut chain = Vec::new();
    for pos in 1..=2 * h + 1 {
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
        chain.push(v);
    }
    chain
}

fn derive_b0_std(chain: &[Vecs]) -> Vecs {
    let top = chain.len() - 1;
    let mut x = chain[top].clone();
    for v in chain[..top].iter().rev() {
        std_transvect(&mut x, v);
    }
    x
}

fn mode_k0() {
    for h in 1..=4usize {
        for i in 0..=h {
            let rank = 2 * h;
            let chain = std_chain(h, rank);
            let b0 = derive_b0_std(&chain);
            let word = hyperelliptic_word(h as u32, i as u32).unwrap();
            let resolved: Vec<Vecs> = word
                .letters()
                .iter()
                .map(|l| match l.id {
                    CycleId::C { pos, .. } => chain[(pos - 1) as usize].clone(),
                    CycleId::B { arm: 0, .. } => b0.clone(),
                    _ => unreachable!(),
                })
                .collect();
            let cols: Vec<Vecs> = (0..rank)
                .map(|j| {
                    let mut x = unit(rank, j);
                    for v in resolved.iter().rev() {
                        std_transvect(&mut x, v);
                    }
                    x
                })
                .collect();
            println!("h={h} i={i}: minus identity = {}", is_minus_identity(&cols));
        }
    }
}

/// Abstract Gram search for the (0 2 1) copy. Formal model: class directions
/// e_1..e_5 = (c1, c2, c3, b1, b2) completed by dual directions f_1..f_5, so
/// the form is nondegenerate and M² = I here implies M² = I in every
/// realization with this intersection pattern.
fn mode_gram(range: i64, rev_word: bool, rev_b0: bool) {
    let spec = parse_spec("(0 2 1)").unwrap();
    let word = theta_word(&spec).unwrap();
    let letters: Vec<CycleId> = word.letters().iter().map(|l| l.id).collect();
    let nc = 5usize;
    let dim = 2 * nc;
    let mut count = 0usize;
    let vals: Vec<i64> = (-range..=range).collect();
    let idx = [(0usize, 3usize), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    let nv = vals.len();
    let total = nv.pow(7);
    for code in 0..total {
        let mut rem = code;
        let mut g = vec![vec![0i64; dim]; dim];
        g[0][1] = 1;
        g[1][0] = -1;
        g[1][2] = 1;
        g[2][1] = -1;
        for &(a, b) in &idx {
            let v = vals[rem % nv];
            rem /= nv;
            g[a][b] = v;
            g[b][a] = -v;
        }
        for a in 0..nc {
            g[nc + a][a] = 1;
            g[a][nc + a] = -1;
        }
        let b0 = {
            let mut x = unit(dim, 2);
            if rev_b0 {
                gram_transvect(&g, &mut x, &unit(dim, 0));
                gram_transvect(&g, &mut x, &unit(dim, 1));
            } else {
                gram_transvect(&g, &mut x, &unit(dim, 1));
                gram_transvect(&g, &mut x, &unit(dim, 0));
            }
            x
        };
        let mut resolved: Vec<Vecs> = letters
            .iter()
            .map(|id| match *id {
                CycleId::C { pos, .. } => unit(dim, (pos - 1) as usize),
                CycleId::B { arm: 0, .. } => b0.clone(),
                CycleId::B { arm, .. } => unit(dim, 2 + arm as usize),
                _ => unreachable!(),
            })
            .collect();
        if rev_word {
            resolved.reverse();
        }
        let cols = word_cols(&g, &resolved);
        if square_is_identity(&cols) && !is_identity(&cols) {
            count += 1;
            if count <= 60 {
                let pat: Vec<i64> = idx.iter().map(|&(a, b)| g[a][b]).collect();
                println!(
                    "GRAM c1b1={} c1b2={} c2b1={} c2b2={} c3b1={} c3b2={} b1b2={} b0={:?}",
                    pat[0], pat[1], pat[2], pat[3], pat[4], pat[5], pat[6], b0
                );
            }
        }
    }
    println!("gram solutions: {count}");
}

/// Like mode_gram but with b2 = s·b1 imposed (4 independent classes).
fn mode_gram_paired(range: i64) {
    let spec = parse_spec("(0 2 1)").unwrap();
    let word = theta_word(&spec).unwrap();
    let letters: Vec<CycleId> = word.letters().iter().map(|l| l.id).collect();
    let nc = 4usize;
    let dim = 2 * nc;
    let vals: Vec<i64> = (-range..=range).collect();
    let nv = vals.len();
    let mut count = 0;
    for s in [1i64, -1] {
        for code in 0..nv.pow(3) {
            let mut rem = code;
            let mut g = vec![vec![0i64; dim]; dim];
            g[0][1] = 1;
            g[1][0] = -1;
            g[1][2] = 1;
            g[2][1] = -1;
            for a in 0..3 {
                let v = vals[rem % nv];
                rem /= nv;
                g[a][3] = v;
                g[3][a] = -v;
            }
            for a in 0..nc {
                g[nc + a][a] = 1;
                g[a][nc + a] = -1;
            }
            let b0 = {
                let mut x = unit(dim, 2);
                gram_transvect(&g, &mut x, &unit(dim, 1));
                gram_transvect(&g, &mut x, &unit(dim, 0));
                x
            };
            let b2: Vecs = unit(dim, 3).iter().map(|&x| s * x).collect();
            let resolved: Vec<Vecs> = letters
                .iter()
                .map(|id| match *id {
                    CycleId::C { pos, .. } => unit(dim, (pos - 1) as usize),
                    CycleId::B { arm: 0, .. } => b0.clone(),
                    CycleId::B { arm: 1, .. } => unit(dim, 3),
                    CycleId::B { arm: 2, .. } => b2.clone(),
                    _ => unreachable!(),
                })
                .collect();
            let cols = word_cols(&g, &resolved);
            if square_is_identity(&cols) && !is_identity(&cols) {
                count += 1;
                println!(
                    "PAIRED s={s} c1b1={} c2b1={} c3b1={} b0={:?}",
                    g[0][3], g[1][3], g[2][3], b0
                );
            }
        }
    }
    println!("paired gram solutions: {count}");
}

#[allow(dead_code)]
fn sigma_check(letters: &[CycleId], resolve: &dyn Fn(&CycleId) -> Vecs) {
    let flags = ConventionFlags::calibrated();
    let sq: Vec<HomologyClass> = letters
        .iter()
        .chain(letters.iter())
        .map(|id| HomologyClass::from_i64(&resolve(id)))
        .collect();
    let sigma = fibration_signature_classes(&sq, &flags);
    println!("sigma = {sigma:?}");
}


/// Ground truth probe: the 4-letter genus-2 word W = x0 x1 x2 x3 with
/// W² = I, W ≠ I. Enumerate all classes with coefficients in {-1,0,1},
/// report Gram patterns and σ(W²).
fn mode_probe4() {
    let rank = 4usize;
    let mut vecs: Vec<Vecs> = Vec::new();
    fn gen(dim: usize, lo: i64, hi: i64) -> Vec<Vecs> {
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
    for v in gen(rank, -1, 1) {
        if v.iter().any(|&x| x != 0) {
            vecs.push(v);
        }
    }
    let n = vecs.len();
    println!("probe4: {n} candidate classes");
    let flags = ConventionFlags::calibrated();
    let mut count = 0usize;
    // canonical gauge: x3 = e1 (first basis vector); x2 with ω(x2, x3) arbitrary
    let e1 = vec![1, 0, 0, 0];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (x0, x1, x2) = (&vecs[a], &vecs[b], &vecs[c]);
                // evaluate W on basis
                let word = [x0.clone(), x1.clone(), x2.clone(), e1.clone()];
                let cols: Vec<Vecs> = (0..rank)
                    .map(|j| {
                        let mut x = unit(rank, j);
                        for v in word.iter().rev() {
                            std_transvect(&mut x, v);
                        }
                        x
                    })
                    .collect();
                if square_is_identity(&cols) && !is_identity(&cols) {
                    let sq: Vec<HomologyClass> = word
                        .iter()
                        .chain(word.iter())
                        .map(|v| HomologyClass::from_i64(v))
                        .collect();
                    let sigma = fibration_signature_classes(&sq, &flags).ok();
                    if sigma == Some(-4) {
                        count += 1;
                        if count <= 30 {
                            println!(
                                "W2=I: x0={x0:?} x1={x1:?} x2={x2:?} x3=[1,0,0,0]                                  w01={} w02={} w03={} w12={} w13={} w23={} sigma=-4",
                                std_omega(x0, x1),
                                std_omega(x0, x2),
                                std_omega(x0, &e1),
                                std_omega(x1, x2),
                                std_omega(x1, &e1),
                                std_omega(x2, &e1),
                            );
                        }
                    }
                }
            }
        }
    }
    println!("probe4 solutions with sigma=-4: {count}");
}


/// Gram search with b0 as an independent class: formal directions
/// (c1, c2, c3, b0, b1, b2) + duals. Chain entries fixed, 12 unknowns.
fn mode_gram_b0(range_b0: i64, range_b: i64) {
    let spec = parse_spec("(0 2 1)").unwrap();
    let word = theta_word(&spec).unwrap();
    let letters: Vec<CycleId> = word.letters().iter().map(|l| l.id).collect();
    let nc = 6usize;
    let dim = 2 * nc;
    let mut count = 0usize;
    // unknown pairs: (c,b0): 3, (c,b1),(c,b2): 6, (b0,b1),(b0,b2),(b1,b2): 3
    let b0_pairs = [(0usize, 3usize), (1, 3), (2, 3), (3, 4), (3, 5)];
    let b_pairs = [(0usize, 4usize), (0, 5), (1, 4), (1, 5), (2, 4), (2, 5), (4, 5)];
    let b0_vals: Vec<i64> = (-range_b0..=range_b0).collect();
    let b_vals: Vec<i64> = (-range_b..=range_b).collect();
    let (n0, nb) = (b0_vals.len(), b_vals.len());
    let total0 = n0.pow(b0_pairs.len() as u32);
    let totalb = nb.pow(b_pairs.len() as u32);
    println!("searching {} x {} patterns", total0, totalb);
    for code0 in 0..total0 {
        let mut g0 = vec![vec![0i64; dim]; dim];
        g0[0][1] = 1;
        g0[1][0] = -1;
        g0[1][2] = 1;
        g0[2][1] = -1;
        let mut rem = code0;
        for &(a, b) in &b0_pairs {
            let v = b0_vals[rem % n0];
            rem /= n0;
            g0[a][b] = v;
            g0[b][a] = -v;
        }
        for a in 0..nc {
            g0[nc + a][a] = 1;
            g0[a][nc + a] = -1;
        }
        for codeb in 0..totalb {
            let mut g = g0.clone();
            let mut rem = codeb;
            for &(a, b) in &b_pairs {
                let v = b_vals[rem % nb];
                rem /= nb;
                g[a][b] = v;
                g[b][a] = -v;
            }
            let resolved: Vec<Vecs> = letters
                .iter()
                .map(|id| match *id {
                    CycleId::C { pos, .. } => unit(dim, (pos - 1) as usize),
                    CycleId::B { arm, .. } => unit(dim, 3 + arm as usize),
                    _ => unreachable!(),
                })
                .collect();
            let cols = word_cols(&g, &resolved);
            if square_is_identity(&cols) && !is_identity(&cols) {
                count += 1;
                if count <= 80 {
                    let p0: Vec<i64> = b0_pairs.iter().map(|&(a, b)| g[a][b]).collect();
                    let pb: Vec<i64> = b_pairs.iter().map(|&(a, b)| g[a][b]).collect();
                    println!(
                        "GRAMB0 b0c: ({},{},{}) b0b: ({},{}) | c1b1={} c1b2={} c2b1={} c2b2={} c3b1={} c3b2={} b1b2={}",
                        p0[0], p0[1], p0[2], p0[3], p0[4],
                        pb[0], pb[2], pb[4], pb[1], pb[3], pb[5], pb[6]
                    );
                }
            }
        }
    }
    println!("gram-b0 solutions: {count}");
}


/// Solve mode for (0 2 1): fix the target involution M0 = -I on (u1,v1) and
/// the swap (w1,z1)<->(w2,z2); chain classes constrained to the (-1)-eigenspace,
/// b0 free in it; then T_b1 T_b2 = K is solved with b2 = M0 b1.
fn mode_solve() {
    let rank = 6usize;
    // M0 columns
    let m0: Vec<Vecs> = vec![
        vec![-1, 0, 0, 0, 0, 0],
        vec![0, -1, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, 0, 1],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 0],
    ];
    let apply_m0 = |x: &[i64]| -> Vecs {
        let mut out = vec![0i64; rank];
        for (j, col) in m0.iter().enumerate() {
            if x[j] != 0 {
                for i in 0..rank {
                    out[i] += col[i] * x[j];
                }
            }
        }
        out
    };
    // E- basis: u1, v1, dw = w1 - w2, dz = z1 - z2
    let eminus = |a: i64, b: i64, c: i64, d: i64| -> Vecs { vec![a, b, c, -0 + 0 + 0, 0, 0]
    };
    let _ = eminus;
    let mk = |a: i64, b: i64, cw: i64, cz: i64| -> Vecs { vec![a, b, cw, cz, -cw, -cz] };
    let c1 = mk(1, 0, 0, 0);
    let spec = parse_spec("(0 2 1)").unwrap();
    let word = theta_word(&spec).unwrap();
    let letters: Vec<CycleId> = word.letters().iter().map(|l| l.id).collect();
    let flags = ConventionFlags::calibrated();

    let mat_mul = |a: &[Vecs], b: &[Vecs]| -> Vec<Vecs> {
        // columns of a*b where a,b are column lists
        (0..rank)
            .map(|j| {
                let mut out = vec![0i64; rank];
                for kk in 0..rank {
                    if b[j][kk] != 0 {
                        for i in 0..rank {
                            out[i] += a[kk][i] * b[j][kk];
                        }
                    }
                }
                out
            })
            .collect()
    };
    let transvection_cols = |v: &[i64], inv: bool| -> Vec<Vecs> {
        (0..rank)
            .map(|j| {
                let mut x: Vecs = (0..rank).map(|i| i64::from(i == j)).collect();
                let c = std_omega(&x, v);
                if c != 0 {
                    for (a, b) in x.iter_mut().zip(v) {
                        *a += if inv { -c * b } else { c * b };
                    }
                }
                x
            })
            .collect()
    };
    let mut found = 0usize;
    let r = 2i64;
    for e2w in -1i64..=1 {
        for e2z in -1i64..=1 {
            let c2 = mk(0, 1, e2w, e2z);
            for s3 in [1i64, -1] {
                for e3w in -r..=r {
                    for e3z in -r..=r {
                        let c3 = mk(s3, 0, e3w, e3z);
                        if std_omega(&c2, &c3).abs() != 1 {
                            continue;
                        }
                        for b0u in -r..=r {
                            for b0v in -r..=r {
                                for b0w in -r..=r {
                                    for b0z in -r..=r {
                                        let b0 = mk(b0u, b0v, b0w, b0z);
                                        if b0.iter().all(|&x| x == 0) {
                                            continue;
                                        }
                                        // K = (T_c2 T_c3 T_b0 T_c3 T_c2)^-1 M0 T_c1^-1
                                        let a_cols = [
                                            transvection_cols(&c2, true),
                                            transvection_cols(&c3, true),
                                            transvection_cols(&b0, true),
                                            transvection_cols(&c3, true),
                                            transvection_cols(&c2, true),
                                        ];
                                        // inverse of product = product of inverses reversed
                                        let mut k = m0.clone();
                                        // left-multiply by inverses in order c2,c3,b0,c3,c2 reversed:
                                        // (T2 T3 T0 T3 T2)^{-1} = T2i T3i T0i T3i T2i applied...
                                        // careful: (ABCDE)^{-1} = E^{-1}D^{-1}C^{-1}B^{-1}A^{-1}
                                        // we want P^{-1} * M0 * T_c1^{-1}
                                        let t1i = transvection_cols(&c1, true);
                                        k = mat_mul(&k, &t1i);
                                        // P = T_c2 T_c3 T_b0 T_c3 T_c2 (left to right = application order rightmost first)
                                        // P^{-1} = T_c2^{-1} T_c3^{-1} T_b0^{-1} T_c3^{-1} T_c2^{-1} reversed:
                                        let pinv = {
                                            let mut acc: Vec<Vecs> = (0..rank)
                                                .map(|j| (0..rank).map(|i| i64::from(i == j)).collect())
                                                .collect();
                                            for t in a_cols.iter().rev() {
                                                acc = mat_mul(&acc, t);
                                            }
                                            acc
                                        };
                                        let _ = &pinv;
                                        let k = mat_mul(&pinv, &k);
                                        // candidates for b1 from the column space of K - I
                                        let mut diffs: Vec<Vecs> = Vec::new();
                                        for j in 0..rank {
                                            let mut d = k[j].clone();
                                            d[j] -= 1;
                                            if d.iter().any(|&x| x != 0) {
                                                diffs.push(d);
                                            }
                                        }
                                        if diffs.is_empty() {
                                            continue;
                                        }
                                        // try small combos of the first two independent diffs
                                        let x = diffs[0].clone();
                                        let y = diffs.get(1).cloned().unwrap_or_else(|| vec![0; rank]);
                                        let mut tried = std::collections::BTreeSet::new();
                                        for s in -3i64..=3 {
                                            for t in -3i64..=3 {
                                                let cand: Vecs = (0..rank)
                                                    .map(|i| s * x[i] + t * y[i])
                                                    .collect();
                                                if cand.iter().all(|&v| v == 0) {
                                                    continue;
                                                }
                                                // primitivize
                                                let g = cand.iter().fold(0i64, |acc, &v| {
                                                    num_integer::gcd(acc, v.abs())
                                                });
                                                let cand: Vecs =
                                                    cand.iter().map(|&v| v / g).collect();
                                                if !tried.insert(cand.clone()) {
                                                    continue;
                                                }
                                                for scale in 1..=2i64 {
                                                    let b1: Vecs = cand
                                                        .iter()
                                                        .map(|&v| v * scale)
                                                        .collect();
                                                    let b2 = apply_m0(&b1);
                                                    let tb1 = transvection_cols(&b1, false);
                                                    let tb2 = transvection_cols(&b2, false);
                                                    let prod = mat_mul(&tb1, &tb2);
                                                    if prod == k {
                                                        // verify full word + sigma
                                                        let resolve = |id: &CycleId| -> Vecs {
                                                            match *id {
                                                                CycleId::C { pos: 1, .. } => c1.clone(),
                                                                CycleId::C { pos: 2, .. } => c2.clone(),
                                                                CycleId::C { pos: 3, .. } => c3.clone(),
                                                                CycleId::B { arm: 0, .. } => b0.clone(),
                                                                CycleId::B { arm: 1, .. } => b1.clone(),
                                                                CycleId::B { arm: 2, .. } => b2.clone(),
                                                                _ => unreachable!(),
                                                            }
                                                        };
                                                        let resolved: Vec<Vecs> = letters
                                                            .iter()
                                                            .map(|id| resolve(id))
                                                            .collect();
                                                        let cols: Vec<Vecs> = (0..rank)
                                                            .map(|j| {
                                                                let mut xx = unit(rank, j);
                                                                for v in resolved.iter().rev() {
                                                                    std_transvect(&mut xx, v);
                                                                }
                                                                xx
                                                            })
                                                            .collect();
                                                        if square_is_identity(&cols)
                                                            && !is_identity(&cols)
                                                        {
                                                            let sq: Vec<HomologyClass> = resolved
                                                                .iter()
                                                                .chain(resolved.iter())
                                                                .map(|v| HomologyClass::from_i64(v))
                                                                .collect();
                                                            let sigma = fibration_signature_classes(
                                                                &sq, &flags,
                                                            );
                                                            println!(
                                                                "SOLVE c2={c2:?} c3={c3:?} b0={b0:?} b1={b1:?} b2={b2:?} sigma={sigma:?}"
                                                            );
                                                            found += 1;
                                                            if found > 40 {
                                                                return;
                                                            }
                                                        }
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    println!("solve mode total: {found}");
}


/// Screen word variants: insert the arm letters (b1 b2) into each gap of the
/// k=0 skeleton [c2 c3 b0 c3 c2 c1], with b0 an independent class. Formal
/// Gram search (independent classes + duals), entries in {-1,0,1}.
fn mode_variants() {
    let skeleton = ["c2", "c3", "b0", "c3", "c2", "c1"];
    let nc = 6usize; // c1 c2 c3 b0 b1 b2
    let dim = 2 * nc;
    let class_index = |name: &str| -> usize {
        match name {
            "c1" => 0,
            "c2" => 1,
            "c3" => 2,
            "b0" => 3,
            "b1" => 4,
            "b2" => 5,
            _ => unreachable!(),
        }
    };
    let b0_pairs = [(0usize, 3usize), (1, 3), (2, 3), (3, 4), (3, 5)];
    let b_pairs = [(0usize, 4usize), (0, 5), (1, 4), (1, 5), (2, 4), (2, 5), (4, 5)];
    for gap in 0..=skeleton.len() {
        let mut word: Vec<usize> = Vec::new();
        for (idx, s) in skeleton.iter().enumerate() {
            if idx == gap {
                word.push(4);
                word.push(5);
            }
            word.push(class_index(s));
        }
        if gap == skeleton.len() {
            word.push(4);
            word.push(5);
        }
        let mut count = 0usize;
        let mut sample = String::new();
        let n0 = 3usize.pow(b0_pairs.len() as u32);
        let nb = 3usize.pow(b_pairs.len() as u32);
        for code0 in 0..n0 {
            let mut g0 = vec![vec![0i64; dim]; dim];
            g0[0][1] = 1;
            g0[1][0] = -1;
            g0[1][2] = 1;
            g0[2][1] = -1;
            let mut rem = code0;
            for &(a, b) in &b0_pairs {
                let v = (rem % 3) as i64 - 1;
                rem /= 3;
                g0[a][b] = v;
                g0[b][a] = -v;
            }
            for a in 0..nc {
                g0[nc + a][a] = 1;
                g0[a][nc + a] = -1;
            }
            for codeb in 0..nb {
                let mut g = g0.clone();
                let mut rem = codeb;
                for &(a, b) in &b_pairs {
                    let v = (rem % 3) as i64 - 1;
                    rem /= 3;
                    g[a][b] = v;
                    g[b][a] = -v;
                }
                let resolved: Vec<Vecs> = word.iter().map(|&ci| unit(dim, ci)).collect();
                let cols = word_cols(&g, &resolved);
                if square_is_identity(&cols) && !is_identity(&cols) {
                    if count == 0 {
                        let p0: Vec<i64> = b0_pairs.iter().map(|&(a, b)| g[a][b]).collect();
                        let pb: Vec<i64> = b_pairs.iter().map(|&(a, b)| g[a][b]).collect();
                        sample = format!("b0-row {p0:?} b-rows {pb:?}");
                    }
                    count += 1;
                }
            }
        }
        println!("gap {gap}: solutions {count}   {sample}");
    }
}


/// Parallel wide Gram search with independent b0: all 12 unknown pairings in
/// {-range..range}.
fn mode_gram_wide(range: i64) {
    let spec = parse_spec("(0 2 1)").unwrap();
    let word = theta_word(&spec).unwrap();
    let letters: Vec<CycleId> = word.letters().iter().map(|l| l.id).collect();
    let nc = 6usize;
    let dim = 2 * nc;
    let pairs: [(usize, usize); 12] = [
        (0, 3), (1, 3), (2, 3), (3, 4), (3, 5),
        (0, 4), (0, 5), (1, 4), (1, 5), (2, 4), (2, 5), (4, 5),
    ];
    let nv = (2 * range + 1) as usize;
    let total: u64 = (nv as u64).pow(12);
    println!("wide search over {total} patterns");
    let found: Vec<Vec<i64>> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut rem = code;
            let mut g = vec![vec![0i64; dim]; dim];
            g[0][1] = 1;
            g[1][0] = -1;
            g[1][2] = 1;
            g[2][1] = -1;
            let mut pat = Vec::with_capacity(12);
            for &(a, b) in &pairs {
                let v = (rem % nv as u64) as i64 - range;
                rem /= nv as u64;
                g[a][b] = v;
                g[b][a] = -v;
                pat.push(v);
            }
            for a in 0..nc {
                g[nc + a][a] = 1;
                g[a][nc + a] = -1;
            }
            let resolved: Vec<Vecs> = letters
                .iter()
                .map(|id| match *id {
                    CycleId::C { pos, .. } => unit(dim, (pos - 1) as usize),
                    CycleId::B { arm, .. } => unit(dim, 3 + arm as usize),
                    _ => unreachable!(),
                })
                .collect();
            let cols = word_cols(&g, &resolved);
            if square_is_identity(&cols) && !is_identity(&cols) {
                Some(pat)
            } else {
                None
            }
        })
        .collect();
    for pat in found.iter().take(60) {
        println!("WIDE {pat:?}");
    }
    println!("wide solutions: {}", found.len());
}


/// mode_solve variant: chain in the (-1)-eigenlattice, b0 ranging over pure
/// (+1)-eigenvectors (b0 = (0,0,p,q,p,q)) or over all small vectors,
/// b2 = M0 b1 solved from the residual equation.
fn mode_solve2(b0_mode: &str) {
    let rank = 6usize;
    let m0: Vec<Vecs> = vec![
        vec![-1, 0, 0, 0, 0, 0],
        vec![0, -1, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, 0, 1],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 0],
    ];
    let apply_m0 = |x: &[i64]| -> Vecs {
        let mut out = vec![0i64; rank];
        for (j, col) in m0.iter().enumerate() {
            if x[j] != 0 {
                for i in 0..rank {
                    out[i] += col[i] * x[j];
                }
            }
        }
        out
    };
    let mk = |a: i64, b: i64, cw: i64, cz: i64| -> Vecs { vec![a, b, cw, cz, -cw, -cz] };
    let c1 = mk(1, 0, 0, 0);
    let spec = parse_spec("(0 2 1)").unwrap();
    let word = theta_word(&spec).unwrap();
    let letters: Vec<CycleId> = word.letters().iter().map(|l| l.id).collect();
    let flags = ConventionFlags::calibrated();
    let mat_mul = |a: &[Vecs], b: &[Vecs]| -> Vec<Vecs> {
        (0..rank)
            .map(|j| {
                let mut out = vec![0i64; rank];
                for kk in 0..rank {
                    if b[j][kk] != 0 {
                        for i in 0..rank {
                            out[i] += a[kk][i] * b[j][kk];
                        }
                    }
                }
                out
            })
            .collect()
    };
    let transvection_cols = |v: &[i64], inv: bool| -> Vec<Vecs> {
        (0..rank)
            .map(|j| {
                let mut x: Vecs = (0..rank).map(|i| i64::from(i == j)).collect();
                let c = std_omega(&x, v);
                if c != 0 {
                    for (a, b) in x.iter_mut().zip(v) {
                        *a += if inv { -c * b } else { c * b };
                    }
                }
                x
            })
            .collect()
    };
    // b0 candidate list
    let mut b0s: Vec<Vecs> = Vec::new();
    match b0_mode {
        "eplus" => {
            for p in -3i64..=3 {
                for q in -3i64..=3 {
                    if p != 0 || q != 0 {
                        b0s.push(vec![0, 0, p, q, p, q]);
                    }
                }
            }
        }
        "mixed" => {
            // E+ part plus small u,v components
            for a in -1i64..=1 {
                for b in -1i64..=1 {
                    for p in -2i64..=2 {
                        for q in -2i64..=2 {
                            let v = vec![a, b, p, q, p, q];
                            if v.iter().any(|&x| x != 0) {
                                b0s.push(v);
                            }
                        }
                    }
                }
            }
        }
        _ => {
            // full small box
            fn gen(dim: usize, lo: i64, hi: i64) -> Vec<Vecs> {
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
            for v in gen(6, -1, 1) {
                if v.iter().any(|&x| x != 0) {
                    b0s.push(v);
                }
            }
        }
    }
    println!("solve2 b0_mode={b0_mode}: {} b0 candidates", b0s.len());
    let mut found = 0usize;
    for e2w in -1i64..=1 {
        for e2z in -1i64..=1 {
            let c2 = mk(0, 1, e2w, e2z);
            for s3 in [1i64, -1] {
                for e3w in -2i64..=2 {
                    for e3z in -2i64..=2 {
                        let c3 = mk(s3, 0, e3w, e3z);
                        if std_omega(&c2, &c3).abs() != 1 {
                            continue;
                        }
                        for b0 in &b0s {
                            let a_cols = [
                                transvection_cols(&c2, true),
                                transvection_cols(&c3, true),
                                transvection_cols(b0, true),
                                transvection_cols(&c3, true),
                                transvection_cols(&c2, true),
                            ];
                            let t1i = transvection_cols(&c1, true);
                            let mut k = mat_mul(&m0, &t1i);
                            let pinv = {
                                let mut acc: Vec<Vecs> = (0..rank)
                                    .map(|j| (0..rank).map(|i| i64::from(i == j)).collect())
                                    .collect();
                                for t in a_cols.iter().rev() {
                                    acc = mat_mul(&acc, t);
                                }
                                acc
                            };
                            k = mat_mul(&pinv, &k);
                            let mut diffs: Vec<Vecs> = Vec::new();
                            for j in 0..rank {
                                let mut d = k[j].clone();
                                d[j] -= 1;
                                if d.iter().any(|&x| x != 0) {
                                    diffs.push(d);
                                }
                            }
                            if diffs.is_empty() {
                                continue;
                            }
                            let x = diffs[0].clone();
                            let y = diffs.get(1).cloned().unwrap_or_else(|| vec![0; rank]);
                            let mut tried = std::collections::BTreeSet::new();
                            for s in -3i64..=3 {
                                for t in -3i64..=3 {
                                    let cand: Vecs =
                                        (0..rank).map(|i| s * x[i] + t * y[i]).collect();
                                    if cand.iter().all(|&v| v == 0) {
                                        continue;
                                    }
                                    let gg = cand
                                        .iter()
                                        .fold(0i64, |acc, &v| num_integer::gcd(acc, v.abs()));
                                    let cand: Vecs = cand.iter().map(|&v| v / gg).collect();
                                    if !tried.insert(cand.clone()) {
                                        continue;
                                    }
                                    for scale in 1..=2i64 {
                                        let b1: Vecs = cand.iter().map(|&v| v * scale).collect();
                                        let b2 = apply_m0(&b1);
                                        let tb1 = transvection_cols(&b1, false);
                                        let tb2 = transvection_cols(&b2, false);
                                        let prod = mat_mul(&tb1, &tb2);
                                        if prod == k {
                                            let resolve = |id: &CycleId| -> Vecs {
                                                match *id {
                                                    CycleId::C { pos: 1, .. } => c1.clone(),
                                                    CycleId::C { pos: 2, .. } => c2.clone(),
                                                    CycleId::C { pos: 3, .. } => c3.clone(),
                                                    CycleId::B { arm: 0, .. } => b0.clone(),
                                                    CycleId::B { arm: 1, .. } => b1.clone(),
                                                    CycleId::B { arm: 2, .. } => b2.clone(),
                                                    _ => unreachable!(),
                                                }
                                            };
                                            let resolved: Vec<Vecs> =
                                                letters.iter().map(|id| resolve(id)).collect();
                                            let cols: Vec<Vecs> = (0..rank)
                                                .map(|j| {
                                                    let mut xx = unit(rank, j);
                                                    for v in resolved.iter().rev() {
                                                        std_transvect(&mut xx, v);
                                                    }
                                                    xx
                                                })
                                                .collect();
                                            if square_is_identity(&cols) && !is_identity(&cols) {
                                                let sq: Vec<HomologyClass> = resolved
                                                    .iter()
                                                    .chain(resolved.iter())
                                                    .map(|v| HomologyClass::from_i64(v))
                                                    .collect();
                                                let sigma =
                                                    fibration_signature_classes(&sq, &flags);
                                                println!(
                                                    "SOLVE2 c2={c2:?} c3={c3:?} b0={b0:?} b1={b1:?} b2={b2:?} sigma={sigma:?}"
                                                );
                                                found += 1;
                                                if found > 30 {
                                                    return;
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    println!("solve2 total: {found}");
}


/// Ladder pairing hypothesis for (0 2 1): θ flips the b-ladder, so
/// [b2] = M0·[b0] and [b1] is an eigenvector; chain in the (-1)-eigenspace.
fn mode_solve3() {
    let rank = 6usize;
    let m0: Vec<Vecs> = vec![
        vec![-1, 0, 0, 0, 0, 0],
        vec![0, -1, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, 0, 1],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 0],
    ];
    let apply_m0 = |x: &[i64]| -> Vecs {
        let mut out = vec![0i64; rank];
        for (j, col) in m0.iter().enumerate() {
            if x[j] != 0 {
                for i in 0..rank {
                    out[i] += col[i] * x[j];
                }
            }
        }
        out
    };
    let mk = |a: i64, b: i64, cw: i64, cz: i64| -> Vecs { vec![a, b, cw, cz, -cw, -cz] };
    let c1 = mk(1, 0, 0, 0);
    let spec = parse_spec("(0 2 1)").unwrap();
    let word = theta_word(&spec).unwrap();
    let letters: Vec<CycleId> = word.letters().iter().map(|l| l.id).collect();
    let flags = ConventionFlags::calibrated();
    // b0 candidates: full box ±1
    fn gen(dim: usize, lo: i64, hi: i64) -> Vec<Vecs> {
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
    let b0s: Vec<Vecs> = gen(6, -1, 1).into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    // b1 candidates: E- (±2) and E+ (±3)
    let mut b1s: Vec<Vecs> = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for cw in -2i64..=2 {
                for cz in -2i64..=2 {
                    let v = mk(a, b, cw, cz);
                    if v.iter().any(|&x| x != 0) {
                        b1s.push(v);
                    }
                }
            }
        }
    }
    for p in -3i64..=3 {
        for q in -3i64..=3 {
            if p != 0 || q != 0 {
                b1s.push(vec![0, 0, p, q, p, q]);
            }
        }
    }
    println!("solve3: {} b0 x {} b1 candidates", b0s.len(), b1s.len());
    let mut chains: Vec<(Vecs, Vecs)> = Vec::new();
    for e2w in -1i64..=1 {
        for e2z in -1i64..=1 {
            let c2 = mk(0, 1, e2w, e2z);
            for s3 in [1i64, -1] {
                for e3w in -2i64..=2 {
                    for e3z in -2i64..=2 {
                        let c3 = mk(s3, 0, e3w, e3z);
                        if std_omega(&c2, &c3).abs() == 1 {
                            chains.push((c2.clone(), c3));
                        }
                    }
                }
            }
        }
    }
    println!("{} chain variants", chains.len());
    let found: Vec<String> = chains
        .par_iter()
        .flat_map_iter(|(c2, c3)| {
            let mut local = Vec::new();
            for b0 in &b0s {
                let b2 = apply_m0(b0);
                for b1 in &b1s {
                    let resolve = |id: &CycleId| -> &Vecs {
                        match *id {
                            CycleId::C { pos: 1, .. } => &c1,
                            CycleId::C { pos: 2, .. } => c2,
                            CycleId::C { pos: 3, .. } => c3,
                            CycleId::B { arm: 0, .. } => b0,
                            CycleId::B { arm: 1, .. } => b1,
                            CycleId::B { arm: 2, .. } => &b2,
                            _ => unreachable!(),
                        }
                    };
                    let resolved: Vec<&Vecs> = letters.iter().map(|id| resolve(id)).collect();
                    // quick check: apply word twice to a couple of probe vectors first
                    let mut ok = true;
                    for probe in 0..rank {
                        let mut x = unit(rank, probe);
                        for v in resolved.iter().rev() {
                            std_transvect(&mut x, v);
                        }
                        for v in resolved.iter().rev() {
                            std_transvect(&mut x, v);
                        }
                        if x != unit(rank, probe) {
                            ok = false;
                            break;
                        }
                    }
                    if !ok {
                        continue;
                    }
                    // confirm not identity
                    let mut nontrivial = false;
                    for probe in 0..rank {
                        let mut x = unit(rank, probe);
                        for v in resolved.iter().rev() {
                            std_transvect(&mut x, v);
                        }
                        if x != unit(rank, probe) {
                            nontrivial = true;
                            break;
                        }
                    }
                    if !nontrivial {
                        continue;
                    }
                    let sq: Vec<HomologyClass> = resolved
                        .iter()
                        .chain(resolved.iter())
                        .map(|v| HomologyClass::from_i64(v))
                        .collect();
                    let sigma = fibration_signature_classes(&sq, &flags);
                    local.push(format!(
                        "SOLVE3 c2={c2:?} c3={c3:?} b0={b0:?} b1={b1:?} b2={b2:?} sigma={sigma:?}"
                    ));
                    if local.len() > 5 {
                        return local;
                    }
                }
            }
            local
        })
        .collect();
    for line in found.iter().take(40) {
        println!("{line}");
    }
    println!("solve3 total: {}", found.len());
}


/// Fully general residual solve: target W in {swap, diag} normal form; chain
/// in E-(W); b0 over a small full box; (b1, b2) both solved from K = A^-1 W T_c1^-1.
fn mode_solve4(target: &str) {
    let rank = 6usize;
    let m0: Vec<Vecs> = if target == "diag" {
        vec![
            vec![-1, 0, 0, 0, 0, 0],
            vec![0, -1, 0, 0, 0, 0],
            vec![0, 0, -1, 0, 0, 0],
            vec![0, 0, 0, -1, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 1],
        ]
    } else {
        vec![
            vec![-1, 0, 0, 0, 0, 0],
            vec![0, -1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 1],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0],
        ]
    };
    // E-(M0) parametrization of chain corrections
    let mk: Box<dyn Fn(i64, i64, i64, i64) -> Vecs> = if target == "diag" {
        Box::new(|a: i64, b: i64, c: i64, d: i64| vec![a, b, c, d, 0, 0])
    } else {
        Box::new(|a: i64, b: i64, cw: i64, cz: i64| vec![a, b, cw, cz, -cw, -cz])
    };
    let c1 = mk(1, 0, 0, 0);
    let spec = parse_spec("(0 2 1)").unwrap();
    let word = theta_word(&spec).unwrap();
    let letters: Vec<CycleId> = word.letters().iter().map(|l| l.id).collect();
    let flags = ConventionFlags::calibrated();
    let mat_mul = |a: &[Vecs], b: &[Vecs]| -> Vec<Vecs> {
        (0..rank)
            .map(|j| {
                let mut out = vec![0i64; rank];
                for kk in 0..rank {
                    if b[j][kk] != 0 {
                        for i in 0..rank {
                            out[i] += a[kk][i] * b[j][kk];
                        }
                    }
                }
                out
            })
            .collect()
    };
    let transvection_cols = |v: &[i64], inv: bool| -> Vec<Vecs> {
        (0..rank)
            .map(|j| {
                let mut x: Vecs = (0..rank).map(|i| i64::from(i == j)).collect();
                let c = std_omega(&x, v);
                if c != 0 {
                    for (a, b) in x.iter_mut().zip(v) {
                        *a += if inv { -c * b } else { c * b };
                    }
                }
                x
            })
            .collect()
    };
    fn gen(dim: usize, lo: i64, hi: i64) -> Vec<Vecs> {
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
    let b0s: Vec<Vecs> = gen(6, -1, 1).into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    let mut chains: Vec<(Vecs, Vecs)> = Vec::new();
    for e2a in -1i64..=1 {
        for e2b in -1i64..=1 {
            let c2 = mk(0, 1, e2a, e2b);
            for s3 in [1i64, -1] {
                for e3a in -2i64..=2 {
                    for e3b in -2i64..=2 {
                        let c3 = mk(s3, 0, e3a, e3b);
                        if std_omega(&c2, &c3).abs() == 1 {
                            chains.push((c2.clone(), c3));
                        }
                    }
                }
            }
        }
    }
    println!("solve4 target={target}: {} chains x {} b0", chains.len(), b0s.len());
    let found: Vec<String> = chains
        .par_iter()
        .flat_map_iter(|(c2, c3)| {
            let mut local: Vec<String> = Vec::new();
            let t1i = transvection_cols(&c1, true);
            for b0 in &b0s {
                let a_cols = [
                    transvection_cols(c2, true),
                    transvection_cols(c3, true),
                    transvection_cols(b0, true),
                    transvection_cols(c3, true),
                    transvection_cols(c2, true),
                ];
                let mut k = mat_mul(&m0, &t1i);
                let pinv = {
                    let mut acc: Vec<Vecs> = (0..rank)
                        .map(|j| (0..rank).map(|i| i64::from(i == j)).collect())
                        .collect();
                    for t in a_cols.iter().rev() {
                        acc = mat_mul(&acc, t);
                    }
                    acc
                };
                k = mat_mul(&pinv, &k);
                let mut diffs: Vec<Vecs> = Vec::new();
                for j in 0..rank {
                    let mut d = k[j].clone();
                    d[j] -= 1;
                    if d.iter().any(|&x| x != 0) {
                        diffs.push(d);
                    }
                }
                if diffs.is_empty() || diffs.len() > 6 {
                    continue;
                }
                // candidate vectors from small combos of first two diffs
                let x = diffs[0].clone();
                let y2 = diffs.get(1).cloned().unwrap_or_else(|| vec![0; rank]);
                let mut cands: Vec<Vecs> = Vec::new();
                let mut seen = std::collections::BTreeSet::new();
                for s in -3i64..=3 {
                    for t in -3i64..=3 {
                        let c: Vecs = (0..rank).map(|i| s * x[i] + t * y2[i]).collect();
                        if c.iter().all(|&v| v == 0) {
                            continue;
                        }
                        let g = c.iter().fold(0i64, |acc, &v| num_integer::gcd(acc, v.abs()));
                        let c: Vecs = c.iter().map(|&v| v / g).collect();
                        if seen.insert(c.clone()) {
                            for scale in 1..=2 {
                                cands.push(c.iter().map(|&v| v * scale).collect());
                            }
                        }
                    }
                }
                for b1 in &cands {
                    for b2 in &cands {
                        let tb1 = transvection_cols(b1, false);
                        let tb2 = transvection_cols(b2, false);
                        if mat_mul(&tb1, &tb2) == k {
                            let resolve = |id: &CycleId| -> &Vecs {
                                match *id {
                                    CycleId::C { pos: 1, .. } => &c1,
                                    CycleId::C { pos: 2, .. } => c2,
                                    CycleId::C { pos: 3, .. } => c3,
                                    CycleId::B { arm: 0, .. } => b0,
                                    CycleId::B { arm: 1, .. } => b1,
                                    CycleId::B { arm: 2, .. } => b2,
                                    _ => unreachable!(),
                                }
                            };
                            let resolved: Vec<&Vecs> = letters.iter().map(|id| resolve(id)).collect();
                            let sq: Vec<HomologyClass> = resolved
                                .iter()
                                .chain(resolved.iter())
                                .map(|v| HomologyClass::from_i64(v))
                                .collect();
                            let sigma = fibration_signature_classes(&sq, &flags);
                            local.push(format!(
                                "SOLVE4 c2={c2:?} c3={c3:?} b0={b0:?} b1={b1:?} b2={b2:?} sigma={sigma:?}"
                            ));
                            if local.len() > 8 {
                                return local;
                            }
                        }
                    }
                }
            }
            local
        })
        .collect();
    for line in found.iter().take(40) {
        println!("{line}");
    }
    println!("solve4 total: {}", found.len());
}


/// Canonical rank-4 solve for a single k=2 copy: classes in Z^4, gauge
/// c1 = e1, c2 = e2, target word = -I. Works for any (l 2 r) with h = 1.
fn mode_canon(spec_str: &str) {
    let rank = 4usize;
    let spec = parse_spec(spec_str).unwrap();
    let word = theta_word(&spec).unwrap();
    let letters: Vec<CycleId> = word.letters().iter().map(|l| l.id).collect();
    println!("canon {spec_str}: word {word}");
    let flags = ConventionFlags::calibrated();
    let c1 = vec![1i64, 0, 0, 0];
    let mat_mul = |a: &[Vecs], b: &[Vecs]| -> Vec<Vecs> {
        (0..rank)
            .map(|j| {
                let mut out = vec![0i64; rank];
                for kk in 0..rank {
                    if b[j][kk] != 0 {
                        for i in 0..rank {
                            out[i] += a[kk][i] * b[j][kk];
                        }
                    }
                }
                out
            })
            .collect()
    };
    let transvection_cols = |v: &[i64], inv: bool| -> Vec<Vecs> {
        (0..rank)
            .map(|j| {
                let mut x: Vecs = (0..rank).map(|i| i64::from(i == j)).collect();
                let c = std_omega(&x, v);
                if c != 0 {
                    for (a, b) in x.iter_mut().zip(v) {
                        *a += if inv { -c * b } else { c * b };
                    }
                }
                x
            })
            .collect()
    };
    let minus_i: Vec<Vecs> = (0..rank)
        .map(|j| (0..rank).map(|i| if i == j { -1i64 } else { 0 }).collect())
        .collect();
    fn gen(dim: usize, lo: i64, hi: i64) -> Vec<Vecs> {
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
    let b0s: Vec<Vecs> = gen(4, -2, 2).into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    let c2 = vec![0i64, 1, 0, 0];
    let mut count = 0usize;
    let mut samples: Vec<String> = Vec::new();
    for s3 in [1i64, -1] {
        for y1 in -3i64..=3 {
            for y2 in -3i64..=3 {
                let c3 = vec![s3, 0, y1, y2];
                // chain gram: w(c2,c3) = -s3 = ±1 ok; w(c1,c3) = 0 ok
                for b0 in &b0s {
                    // K = (T_c2 T_c3 T_b0 T_c3 T_c2)^{-1} (-I) T_last^{-1}
                    // word is  [.. prefix .., B1, B2, last-letter]; identify prefix/suffix from letters
                    // general: word = P ++ [b1, b2, last]; compute P with current assignment
                    let resolve_chain = |id: &CycleId| -> Option<&Vecs> {
                        match *id {
                            CycleId::C { pos: 1, .. } => Some(&c1),
                            CycleId::C { pos: 2, .. } => Some(&c2),
                            CycleId::C { pos: 3, .. } => Some(&c3),
                            CycleId::B { arm: 0, .. } => Some(b0),
                            _ => None,
                        }
                    };
                    // positions of b1, b2 in the word
                    let arm_pos: Vec<usize> = letters
                        .iter()
                        .enumerate()
                        .filter(|(_, id)| matches!(id, CycleId::B { arm, .. } if *arm > 0))
                        .map(|(i, _)| i)
                        .collect();
                    assert_eq!(arm_pos.len(), 2);
                    assert_eq!(arm_pos[1], arm_pos[0] + 1);
                    // W = L * T_b1 T_b2 * R where L = prefix, R = suffix
                    let ident: Vec<Vecs> = (0..rank)
                        .map(|j| (0..rank).map(|i| i64::from(i == j)).collect())
                        .collect();
                    let mut lmat = ident.clone();
                    for id in &letters[..arm_pos[0]] {
                        lmat = mat_mul(&lmat, &transvection_cols(resolve_chain(id).unwrap(), false));
                    }
                    let mut rmat = ident.clone();
                    for id in &letters[arm_pos[1] + 1..] {
                        rmat = mat_mul(&rmat, &transvection_cols(resolve_chain(id).unwrap(), false));
                    }
                    // T_b1 T_b2 = L^{-1} (-I) R^{-1}
                    let linv = {
                        let mut acc = ident.clone();
                        for id in letters[..arm_pos[0]].iter().rev() {
                            acc = mat_mul(&acc, &transvection_cols(resolve_chain(id).unwrap(), true));
                        }
                        acc
                    };
                    let rinv = {
                        let mut acc = ident.clone();
                        for id in letters[arm_pos[1] + 1..].iter().rev() {
                            acc = mat_mul(&acc, &transvection_cols(resolve_chain(id).unwrap(), true));
                        }
                        acc
                    };
                    let k = mat_mul(&mat_mul(&linv, &minus_i), &rinv);
                    let mut diffs: Vec<Vecs> = Vec::new();
                    for j in 0..rank {
                        let mut d = k[j].clone();
                        d[j] -= 1;
                        if d.iter().any(|&x| x != 0) {
                            diffs.push(d);
                        }
                    }
                    if diffs.is_empty() {
                        continue;
                    }
                    let x = diffs[0].clone();
                    let y = diffs.get(1).cloned().unwrap_or_else(|| vec![0; rank]);
                    let mut cands: Vec<Vecs> = Vec::new();
                    let mut seen = std::collections::BTreeSet::new();
                    for s in -3i64..=3 {
                        for t in -3i64..=3 {
                            let c: Vecs = (0..rank).map(|i| s * x[i] + t * y[i]).collect();
                            if c.iter().all(|&v| v == 0) {
                                continue;
                            }
                            let g = c.iter().fold(0i64, |acc, &v| num_integer::gcd(acc, v.abs()));
                            let c: Vecs = c.iter().map(|&v| v / g).collect();
                            if seen.insert(c.clone()) {
                                for scale in 1..=2 {
                                    cands.push(c.iter().map(|&v| v * scale).collect());
                                }
                            }
                        }
                    }
                    for b1 in &cands {
                        for b2 in &cands {
                            let tb1 = transvection_cols(b1, false);
                            let tb2 = transvection_cols(b2, false);
                            if mat_mul(&tb1, &tb2) == k {
                                count += 1;
                                if samples.len() < 200 {
                                    let full_resolve = |id: &CycleId| -> Vecs {
                                        match *id {
                                            CycleId::B { arm: 1, .. } => b1.clone(),
                                            CycleId::B { arm: 2, .. } => b2.clone(),
                                            other => resolve_chain(&other).unwrap().clone(),
                                        }
                                    };
                                    let resolved: Vec<Vecs> =
                                        letters.iter().map(|id| full_resolve(id)).collect();
                                    let sq: Vec<HomologyClass> = resolved
                                        .iter()
                                        .chain(resolved.iter())
                                        .map(|v| HomologyClass::from_i64(v))
                                        .collect();
                                    let sigma = fibration_signature_classes(&sq, &flags);
                                    let complexity: i64 = c3.iter().map(|v| v.abs()).sum::<i64>()
                                        + b0.iter().map(|v| v.abs()).sum::<i64>()
                                        + b1.iter().map(|v| v.abs()).sum::<i64>()
                                        + b2.iter().map(|v| v.abs()).sum::<i64>();
                                    samples.push(format!(
                                        "{complexity:2} c3={c3:?} b0={b0:?} b1={b1:?} b2={b2:?} sigma={sigma:?}"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    samples.sort();
    for s in samples.iter().take(30) {
        println!("{s}");
    }
    println!("canon total: {count}");
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mode = args.first().map(String::as_str).unwrap_or("k0");
    match mode {
        "k0" => mode_k0(),
        "gram" => {
            let r = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
            let rw = args.get(2).map(|s| s == "1").unwrap_or(false);
            let rb = args.get(3).map(|s| s == "1").unwrap_or(false);
            mode_gram(r, rw, rb);
        }
        "probe4" => mode_probe4(),
        "solve" => mode_solve(),
        "solve3" => mode_solve3(),
        "canon" => {
            let m = args.get(1).map(String::as_str).unwrap_or("(0 2 1)").to_string();
            mode_canon(&m);
        }
        "solve4" => {
            let m = args.get(1).map(String::as_str).unwrap_or("swap").to_string();
            mode_solve4(&m);
        }
        "solve2" => {
            let m = args.get(1).map(String::as_str).unwrap_or("eplus").to_string();
            mode_solve2(&m);
        }
        "variants" => mode_variants(),
        "wide" => {
            let r = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
            mode_gram_wide(r);
        }
        "gram-b0" => {
            let r0 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1);
            let rb = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);
            mode_gram_b0(r0, rb);
        }
        "gram-paired" => {
            let r = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
            mode_gram_paired(r);
        }
        other => eprintln!("unknown mode {other}"),
    }
}
