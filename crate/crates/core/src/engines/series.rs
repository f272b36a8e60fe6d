//! The three arctangent series in integer fixed point.
//!
//! Each function takes `x = p/q > 0` and a working scale `w` and returns an
//! approximation of `arctan(x)·10^w`. All divisions truncate; the callers
//! carry guard digits that absorb the accumulated truncation error.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::exactnum::pow10;

/// `true` when `p/q · 10^w < 2^-8`, i.e. the whole value is below one unit
/// at the working scale.
pub(super) fn negligible(p: &BigUint, q: &BigUint, w: u32) -> bool {
    let w_bits = (w as u64 * 3322) / 1000 + 1;
    q.bits() > p.bits() + w_bits + 8
}

/// Maclaurin series, alternating, ratio `x²` between consecutive powers.
pub(super) fn maclaurin(p: &BigUint, q: &BigUint, w: u32) -> BigInt {
    let mut t = p * pow10(w) / q;
    let p2 = p * p;
    let q2 = q * q;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !t.is_zero() {
        let term = BigInt::from(&t / (2 * k + 1));
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        t = t * &p2 / &q2;
        k += 1;
    }
    sum
}

/// Euler's series: `T_0 = x/(1+x²)`, `T_m = T_{m−1}·w·2m/(2m+1)` with
/// `w = x²/(1+x²)`; all terms positive, tail bounded by `T_m/(1−w)`.
pub(super) fn euler(p: &BigUint, q: &BigUint, w: u32) -> BigInt {
    let p2 = p * p;
    let q2 = q * q;
    let s = &p2 + &q2;
    let mut t = p * q * pow10(w) / &s;
    let mut sum = BigUint::zero();
    let mut m = 0u64;
    loop {
        if &t * &s < q2 {
            break;
        }
        sum += &t;
        m += 1;
        t = t * &p2 * (2 * m) / (&s * (2 * m + 1));
    }
    BigInt::from(sum)
}

/// Stop test shared by both forms of the iteration-based series: the tail
/// from term `m` on is below one unit once
/// `bound·(p²+4q²) < (2m−1)·4q²·|v|`, compared here in squares.
fn iter_tail_done(bound: &BigInt, m: u64, p2: &BigInt, q2x4: &BigInt, mag2: &BigInt) -> bool {
    let lhs = bound * (p2 + q2x4);
    let rhs = q2x4 * BigInt::from(2 * m - 1);
    &lhs * &lhs < &rhs * &rhs * mag2
}

/// Iteration-based series with the `(g, h)` recurrences carried exactly.
///
/// With `x = p/q` the scaled pair `V_m = p^(2m−1)·(g_m + i·h_m)` stays a
/// Gaussian integer: `V_1 = 2q + i·p` and
/// `V_m = (p² − 4q² − 4pq·i)·V_{m−1}`.
pub(super) fn iter_exact(p: &BigUint, q: &BigUint, w: u32) -> BigInt {
    let (p, q) = (BigInt::from(p.clone()), BigInt::from(q.clone()));
    let scale = BigInt::from(pow10(w));
    let p2 = &p * &p;
    let q2x4: BigInt = &q * &q * 4;
    let mu_re = &p2 - &q2x4;
    let mu_im = -(&p * &q) * 4;
    let (mut g, mut h) = (&q * 2, p.clone());
    let mut pw = p.clone();
    let mut sum = BigInt::zero();
    let mut m = 1u64;
    loop {
        let mag2 = &g * &g + &h * &h;
        let bound = &scale * &pw * 2;
        if iter_tail_done(&bound, m, &p2, &q2x4, &mag2) {
            break;
        }
        sum += &bound * &g / (&mag2 * BigInt::from(2 * m - 1));
        let ng = &g * &mu_re - &h * &mu_im;
        let nh = &g * &mu_im + &h * &mu_re;
        g = ng;
        h = nh;
        pw *= &p2;
        m += 1;
    }
    sum
}

/// Iteration-based series with `g` and `h` held at scale `w`. Both grow
/// like `|x/2|^−(2m−1)`, so truncation loses nothing that matters.
pub(super) fn iter_fixed(p: &BigUint, q: &BigUint, w: u32) -> BigInt {
    let (p, q) = (BigInt::from(p.clone()), BigInt::from(q.clone()));
    let scale = BigInt::from(pow10(w));
    let p2 = &p * &p;
    let q2x4: BigInt = &q * &q * 4;
    let damp = &p2 - &q2x4;
    let cross = &p * &q * 4;
    let mut g = &q * &scale * 2 / &p;
    let mut h = scale.clone();
    let bound = &scale * &scale * 2;
    let mut sum = BigInt::zero();
    let mut m = 1u64;
    loop {
        let mag2 = &g * &g + &h * &h;
        if iter_tail_done(&bound, m, &p2, &q2x4, &mag2) {
            break;
        }
        sum += &bound * &g / (&mag2 * BigInt::from(2 * m - 1));
        let ng = (&g * &damp + &h * &cross) / &p2;
        let nh = (&h * &damp - &g * &cross) / &p2;
        g = ng;
        h = nh;
        m += 1;
    }
    sum
}
