use super::{Poly, Ring};

/// `[n]_q = 1 + q + ... + q^(n-1)`; `[0]_q = 0`.
pub fn q_int<C: Ring>(n: u32) -> Poly<C> {
    Poly::from_terms((0..n).map(|d| (d, 0, C::one())))
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial<C: Ring>(n: u32) -> Poly<C> {
    (1..=n).map(q_int::<C>).product()
}

/// Gaussian binomial coefficient, built row by row from
/// `[n, k] = [n-1, k-1] + q^k [n-1, k]`. With `square` the result is in `q^2`.
/// Returns zero when `k > n`.
pub fn gauss_binomial<C: Ring>(n: u32, k: u32, square: bool) -> Poly<C> {
    if k > n {
        return Poly::zero();
    }
    let k = k as usize;
    // row[j] holds [i, j] for the current i
    let mut row: Vec<Poly<C>> = vec![Poly::zero(); k + 1];
    row[0] = Poly::one();
    for i in 1..=n as usize {
        for j in (1..=k.min(i)).rev() {
            let shifted = row[j].shift(j as u32, 0);
            row[j] = &row[j - 1] + &shifted;
        }
    }
    let out = row.swap_remove(k);
    if square {
        out.subst_q_squared()
    } else {
        out
    }
}

/// The two-variable refinement `[k]_{q,t}` of `[k]_q`:
/// even `k` gives `(q^(k-2) + q^(k-4) + ... + 1) t`, odd `k` gives
/// `q^(k-1) + (q^(k-3) + ... + 1) t`, and `[0]_{q,t} = 0`.
pub fn qt_int<C: Ring>(k: u32) -> Poly<C> {
    let mut p = Poly::zero();
    if k == 0 {
        return p;
    }
    let top = if k % 2 == 1 {
        p.add_term(k - 1, 0, C::one());
        k - 1
    } else {
        k
    };
    // t-part: q^0, q^2, ..., q^(top-2)
    let mut d = 0;
    while d + 2 <= top {
        p.add_term(d, 1, C::one());
        d += 2;
    }
    p
}
