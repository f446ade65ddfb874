//! Junction discovery on the k=0 two-copy case (1 0 1,1 0 1): all classes
//! are pinned (standard chains, shared junction end t1 = u2 + u3, derived
//! b0s); only x1 is unknown. The word must evaluate to -I on rank 8.

use twistforge_core::config::parse_spec;
use twistforge_core::words::{theta_word, CycleId};

type V = Vec<i64>;

fn omega(u: &[i64], v: &[i64]) -> i64 {
    (0..u.len() / 2)
        .map(|m| u[2 * m] * v[2 * m + 1] - u[2 * m + 1] * v[2 * m])
        .sum()
}

fn transvect(x: &mut [i64], v: &[i64]) {
    let c = omega(x, v);
    if c != 0 {
        for (a, b) in x.iter_mut().zip(v) {
            *a += c * b;
        }
    }
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
    // copy 1 horizontal pairs (u1,v1)=(e0,e1), (u2,v2)=(e2,e3);
    // copy 2: (u3,v3)=(e4,e5), (u4,v4)=(e6,e7)
    let add = |a: &V, b: &V| -> V { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let t1 = add(&e(2), &e(4)); // u2 + u3
    let chain1: Vec<V> = vec![e(0), e(1), add(&e(0), &e(2)), e(3), t1.clone()];
    let chain2: Vec<V> = vec![t1.clone(), e(5), add(&e(4), &e(6)), e(7), e(6)];
    let derive_b0 = |chain: &[V]| -> V {
        let mut x = chain[chain.len() - 1].clone();
        for v in chain[..chain.len() - 1].iter().rev() {
            transvect(&mut x, v);
        }
        x
    };
    let b10 = derive_b0(&chain1);
    let b20 = derive_b0(&chain2);
    println!("b10 = {b10:?}  b20 = {b20:?}");

    let mut found = 0;
    // enumerate x1 over a +-2 box (coefficients beyond that are implausible)
    let mut x1 = vec![-3i64; rank];
    'outer: loop {
        if x1.iter().any(|&c| c != 0) {
            let resolve = |id: &CycleId| -> &V {
                match *id {
                    CycleId::C { copy: 1, pos } => &chain1[(pos - 1) as usize],
                    CycleId::C { copy: 2, pos } => &chain2[(pos - 1) as usize],
                    CycleId::T { .. } => &t1,
                    CycleId::X { .. } => &x1,
                    CycleId::B { copy: 1, arm: 0 } => &b10,
                    CycleId::B { copy: 2, arm: 0 } => &b20,
                    _ => unreachable!(),
                }
            };
            let ok = (0..rank).all(|j| {
                let mut x: V = (0..rank).map(|i| i64::from(i == j)).collect();
                for l in word.letters().iter().rev() {
                    transvect(&mut x, resolve(&l.id));
                }
                x.iter().enumerate().all(|(i, &v)| v == -i64::from(i == j))
            });
            if ok {
                println!("X1 = {x1:?}");
                found += 1;
                if found > 40 {
                    break 'outer;
                }
            }
        }
        let mut pos = 0;
        loop {
            if pos == rank {
                break 'outer;
            }
            x1[pos] += 1;
            if x1[pos] <= 3 {
                break;
            }
            x1[pos] = -2;
            pos += 1;
        }
    }
    println!("junction2 solutions: {found}");
}
