//! Independent oracles: a second, deliberately naive implementation of the
//! quantities the library computes.

#![allow(dead_code)]

use std::collections::HashMap;

use fpp_core::{EquationCorpus, NumberFieldElement};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

pub type Exps = [u8; 10];

/// g7 phase exponent of each variable.
pub const WEIGHTS: [u32; 10] = [0, 6, 5, 3, 1, 2, 4, 1, 2, 4];

pub fn weight(e: &Exps) -> u32 {
    e.iter().zip(WEIGHTS).map(|(&k, w)| k as u32 * w).sum::<u32>() % 7
}

/// Every exponent vector of total degree `d`, in lexicographic order.
pub fn monomials(d: u8) -> Vec<Exps> {
    let mut out = Vec::new();
    let mut cur = [0u8; 10];
    fn go(i: usize, left: u8, cur: &mut Exps, out: &mut Vec<Exps>) {
        if i == 9 {
            cur[9] = left;
            out.push(*cur);
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            go(i + 1, left - k, cur, out);
        }
    }
    go(0, d, &mut cur, &mut out);
    out
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn big_mod(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().unwrap()
}

/// `a + b t` with `t -> r`, computed straight from numerators and denominators.
pub fn reduce(c: &NumberFieldElement, p: u64, r: u64) -> u64 {
    let part = |q: &num_rational::BigRational| {
        big_mod(q.numer(), p) * pow_mod(big_mod(q.denom(), p), p - 2, p) % p
    };
    (part(c.rational_part()) + part(c.theta_part()) * r) % p
}

pub fn reduced_corpus(c: &EquationCorpus, p: u64, r: u64) -> Vec<Vec<(Exps, u64)>> {
    c.polynomials()
        .map(|f| {
            f.terms()
                .map(|(m, v)| (*m.exponents(), reduce(v, p, r)))
                .filter(|&(_, v)| v != 0)
                .collect()
        })
        .collect()
}

/// Textbook Gauss-Jordan rank over F_p.
pub fn dense_rank(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the degree-`d` multiplication matrix, split into g7-weight classes
/// (the matrix is block diagonal because every equation is weight homogeneous).
pub fn multiplication_rank(polys: &[Vec<(Exps, u64)>], d: u8, p: u64) -> usize {
    let cols = monomials(d);
    let mut class_cols: Vec<HashMap<Exps, usize>> = vec![HashMap::new(); 7];
    for m in &cols {
        let w = weight(m) as usize;
        let n = class_cols[w].len();
        class_cols[w].insert(*m, n);
    }
    let mut class_rows: Vec<Vec<Vec<u64>>> = vec![Vec::new(); 7];
    for f in polys {
        if f.is_empty() {
            continue;
        }
        for s in monomials(d - 3) {
            let prod = |e: &Exps| -> Exps { std::array::from_fn(|i| e[i] + s[i]) };
            let w = weight(&prod(&f[0].0)) as usize;
            let mut row = vec![0u64; class_cols[w].len()];
            for (e, v) in f {
                let m = prod(e);
                assert_eq!(weight(&m) as usize, w, "equation is not weight homogeneous");
                row[class_cols[w][&m]] = *v;
            }
            class_rows[w].push(row);
        }
    }
    class_rows.into_iter().map(|rows| dense_rank(rows, p)).sum()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All `r` with `r^2 = -7 mod p`, by exhaustive search.
pub fn roots_of_minus_seven(p: u64) -> Vec<u64> {
    (0..p).filter(|r| (r * r + 7) % p == 0).collect()
}

/// `U_i -> U_{s(i)}` on exponent vectors.
pub fn g3_exponents(e: &Exps) -> Exps {
    const SOURCE: [usize; 10] = [0, 2, 3, 1, 5, 6, 4, 8, 9, 7];
    let mut out = [0u8; 10];
    for i in 0..10 {
        out[SOURCE[i]] += e[i];
    }
    out
}
