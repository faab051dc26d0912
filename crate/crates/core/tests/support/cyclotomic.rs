//! Exact linear algebra over power bases of `Q(zeta_{p^m})`.
//!
//! Computes the dimension of the space of tuples `(e_1, ..., e_r)` with
//! `e_i` in `Q(zeta_{p^i})`, `conj(e_i) = -e_i` and `Tr(e_{i+1}) = e_i`,
//! as (number of unknowns) - rank.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Q = BigRational;

fn phi(p: u64, m: u32) -> usize {
    (p.pow(m - 1) * (p - 1)) as usize
}

/// Coordinates of `x^k` modulo `Phi_{p^m}(x) = sum_{j<p} x^{j p^{m-1}}`.
fn power_coords(p: u64, m: u32, k: u64) -> Vec<Q> {
    let n = p.pow(m) as usize;
    let deg = phi(p, m);
    let step = p.pow(m - 1) as usize;
    let mut poly = vec![Q::zero(); n];
    poly[(k as usize) % n] = Q::one();
    // x^n = 1, so exponents stay below n; reduce degrees >= deg
    for e in (deg..n).rev() {
        let c = poly[e].clone();
        if c.is_zero() {
            continue;
        }
        poly[e] = Q::zero();
        let base = e - deg;
        for j in 0..(p as usize - 1) {
            poly[base + j * step] -= c.clone();
        }
    }
    poly.truncate(deg);
    poly
}

/// Matrix (rows = output coords) of `zeta -> zeta^a` on the power basis.
fn automorphism(p: u64, m: u32, a: u64) -> Vec<Vec<Q>> {
    let deg = phi(p, m);
    let n = p.pow(m);
    let mut mat = vec![vec![Q::zero(); deg]; deg];
    for k in 0..deg as u64 {
        let col = power_coords(p, m, (a * k) % n);
        for (row, v) in col.into_iter().enumerate() {
            mat[row][k as usize] = v;
        }
    }
    mat
}

/// Matrix of the inclusion `Q(zeta_{p^m}) -> Q(zeta_{p^{m+1}})`,
/// `zeta_{p^m} -> zeta_{p^{m+1}}^p`.
fn inclusion(p: u64, m: u32) -> Vec<Vec<Q>> {
    let (small, big) = (phi(p, m), phi(p, m + 1));
    let mut mat = vec![vec![Q::zero(); small]; big];
    for k in 0..small as u64 {
        let col = power_coords(p, m + 1, p * k);
        for (row, v) in col.into_iter().enumerate() {
            mat[row][k as usize] = v;
        }
    }
    mat
}

/// Relative trace `Q(zeta_{p^{m+1}}) -> Q(zeta_{p^m})`, valued in the big
/// field: the sum of `sigma_a` over `a = 1 mod p^m`.
fn relative_trace(p: u64, m: u32) -> Vec<Vec<Q>> {
    let big = phi(p, m + 1);
    let modulus = p.pow(m + 1);
    let mut acc = vec![vec![Q::zero(); big]; big];
    let mut a = 1u64;
    while a < modulus {
        let sigma = automorphism(p, m + 1, a);
        for (r, row) in sigma.into_iter().enumerate() {
            for (c, v) in row.into_iter().enumerate() {
                acc[r][c] += v;
            }
        }
        a += p.pow(m);
    }
    acc
}

fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for v in rows[rank].iter_mut() {
            *v *= inv.clone();
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot_row = rows[rank].clone();
                for (v, pv) in rows[r].iter_mut().zip(pivot_row) {
                    *v -= f.clone() * pv;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension over `Q` of the trace-compatible purely imaginary tuples.
pub fn center_dim_oracle(p: u64, r: u32) -> usize {
    let offsets: Vec<usize> = (1..=r).scan(0, |acc, m| {
        let o = *acc;
        *acc += phi(p, m);
        Some(o)
    })
    .collect();
    let unknowns: usize = (1..=r).map(|m| phi(p, m)).sum();
    let mut rows: Vec<Vec<Q>> = Vec::new();

    for m in 1..=r {
        let off = offsets[m as usize - 1];
        let conj = automorphism(p, m, p.pow(m) - 1);
        for (i, crow) in conj.into_iter().enumerate() {
            let mut row = vec![Q::zero(); unknowns];
            for (j, v) in crow.into_iter().enumerate() {
                row[off + j] = v;
            }
            row[off + i] += Q::one();
            rows.push(row);
        }
    }

    for m in 1..r {
        let (off_small, off_big) = (offsets[m as usize - 1], offsets[m as usize]);
        let tr = relative_trace(p, m);
        let inc = inclusion(p, m);
        for (i, trow) in tr.into_iter().enumerate() {
            let mut row = vec![Q::zero(); unknowns];
            for (j, v) in trow.into_iter().enumerate() {
                row[off_big + j] = v;
            }
            for (j, v) in inc[i].iter().enumerate() {
                row[off_small + j] -= v.clone();
            }
            rows.push(row);
        }
    }
    unknowns - rank(rows)
}

/// `Tr_{Q(zeta_p)/Q}(zeta_p)`, which is `-1`.
pub fn absolute_trace_of_zeta(p: u64) -> BigInt {
    let mut total = Q::zero();
    for a in 1..p {
        total += automorphism(p, 1, a)[0][1].clone();
    }
    assert!(total.is_integer());
    total.to_integer()
}
