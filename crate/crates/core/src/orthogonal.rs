//! Sign-reversing involutions behind the orthogonality of the two
//! (q,t)-Stirling triangles, and the verification sweep around them.
//!
//! Columns are addressed by their right-to-left label inside the
//! involutions: on a board of length `m` absolute column `j` has label
//! `m - j`, and the column labelled `l` holds `l` squares.

use rayon::prelude::*;
use serde::Serialize;

use crate::qtpoly::{Poly, Ring};
use crate::rgwords::{enumerate_allowable, RGWord};
use crate::rookboards::{enumerate_allowable_rooks, RookPlacement};
use crate::stirlingnum::{StirlingTable, TableKind};
use crate::verify::{Check, Report};
use crate::{Error, Result};

/// An element of `C(n, m)`: a placement in `AR_{n, n-k}` and a word in `A(k, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PairC {
    pub k: usize,
    pub t: RookPlacement,
    pub w: RGWord,
}

/// An element of `D(n, m)`: a word in `A(n, k)` and a placement in `AR_{k, k-m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PairD {
    pub k: usize,
    pub w: RGWord,
    pub t: RookPlacement,
}

fn sign_of(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

impl PairC {
    pub fn sign(&self) -> i64 {
        sign_of(self.t.num_rooks())
    }

    /// `(-1)^{n-k} wt_rook(T) wt'(w)`.
    pub fn weight<C: Ring>(&self) -> Result<Poly<C>> {
        let w = self.t.wt_rook::<C>()? * self.w.wt_prime::<C>()?;
        Ok(if self.sign() < 0 { -w } else { w })
    }

    /// Whether the pair lies in `C(n, m)`.
    pub fn is_member(&self, n: usize, m: usize) -> bool {
        self.t.board_len() == n
            && self.t.num_rooks() + self.k == n
            && self.t.is_allowable()
            && self.w.len() == self.k
            && self.w.max_letter() == m
            && self.w.is_allowable()
    }
}

impl PairD {
    pub fn sign(&self) -> i64 {
        sign_of(self.t.num_rooks())
    }

    /// `(-1)^{k-m} wt'(w) wt_rook(T)`.
    pub fn weight<C: Ring>(&self) -> Result<Poly<C>> {
        let w = self.w.wt_prime::<C>()? * self.t.wt_rook::<C>()?;
        Ok(if self.sign() < 0 { -w } else { w })
    }

    /// Whether the pair lies in `D(n, m)`.
    pub fn is_member(&self, n: usize, m: usize) -> bool {
        self.w.len() == n
            && self.w.max_letter() == self.k
            && self.w.is_allowable()
            && self.t.board_len() == self.k
            && self.k >= m
            && self.t.num_rooks() == self.k - m
            && self.t.is_allowable()
    }
}

/// Every element of `C(n, m)`, ordered by `k`, then placement, then word.
pub fn enumerate_c(n: usize, m: usize) -> Result<Vec<PairC>> {
    let mut out = Vec::new();
    for k in m..=n {
        let words = enumerate_allowable(k, m)?;
        for t in enumerate_allowable_rooks(n, n - k)? {
            for w in &words {
                out.push(PairC { k, t: t.clone(), w: w.clone() });
            }
        }
    }
    Ok(out)
}

/// Every element of `D(n, m)`, ordered by `k`, then word, then placement.
pub fn enumerate_d(n: usize, m: usize) -> Result<Vec<PairD>> {
    let mut out = Vec::new();
    for k in m..=n {
        let boards = enumerate_allowable_rooks(k, k - m)?;
        for w in enumerate_allowable(n, k)? {
            for t in &boards {
                out.push(PairD { k, w: w.clone(), t: t.clone() });
            }
        }
    }
    Ok(out)
}

fn check_domain(n: usize, m: usize) -> Result<()> {
    if n <= m {
        return Err(Error::InvolutionDomain(format!(
            "needs n > m, got n = {n}, m = {m}"
        )));
    }
    Ok(())
}

/// 0-based position of the first letter that already occurred.
fn first_repeat(w: &[u8]) -> Option<usize> {
    let mut seen = vec![false; 256];
    w.iter().position(|&x| std::mem::replace(&mut seen[x as usize], true))
}

/// 0-based position of the last letter that already occurred.
fn last_repeat(w: &[u8]) -> Option<usize> {
    let mut seen = vec![false; 256];
    let mut last = None;
    for (i, &x) in w.iter().enumerate() {
        if std::mem::replace(&mut seen[x as usize], true) {
            last = Some(i);
        }
    }
    last
}

/// The involution on `C(n, m)`.
///
/// `l1` is the label of the rightmost rook and `l2` the letter just before the
/// first repeated letter (`12..l2` is then a prefix); a missing rook or repeat
/// makes the value infinite. When `l1 <= l2` the rook is removed and the letter
/// `rb + 1` (`rb` = squares below it) is inserted right after the letter `l1`;
/// otherwise the repeat is deleted and becomes a rook in column `l2`.
pub fn involution_phi(p: &PairC, n: usize, m: usize) -> Result<PairC> {
    check_domain(n, m)?;
    if !p.is_member(n, m) {
        return Err(Error::InvolutionDomain(format!("{p:?} is not in C({n},{m})")));
    }
    let t = &p.t;
    let letters = p.w.letters();
    let rightmost = t.rooks().last().copied();
    let l1 = rightmost.map(|(_, j)| t.label_of_column(j));
    let l2 = first_repeat(letters);
    let remove_rook = match (l1, l2) {
        (Some(l1), Some(l2)) => l1 <= l2,
        (Some(_), None) => true,
        (None, _) => false,
    };
    if remove_rook {
        let (l1, (i, j)) = (l1.unwrap(), rightmost.unwrap());
        let rb = t.below_square(i, j);
        let mut w = letters.to_vec();
        w.insert(l1, (rb + 1) as u8);
        return Ok(PairC { k: p.k + 1, t: t.with_row(j, 0), w: RGWord::new(w)? });
    }
    let Some(l2) = l2 else {
        return Err(Error::InvolutionDomain(format!("{p:?} has neither rooks nor repeats")));
    };
    let r = letters[l2] as usize;
    let mut w = letters.to_vec();
    w.remove(l2);
    let row = l2 - (r - 1);
    Ok(PairC { k: p.k - 1, t: t.with_row(t.column_of_label(l2), row), w: RGWord::new(w)? })
}

/// The involution on `D(n, m)`.
///
/// `l1` is the largest letter before the last repeated letter `r1` (0 without
/// repeats) and `l2` the label of the leftmost rook (0 without rooks). When
/// `l1 > l2` the repeat becomes the new letter `l1 + 1` (later letters shift up)
/// and a rook with `r1 - 1` squares below appears in column `l1` of a board one
/// longer; otherwise the rook in column `l2` turns back into a repeated letter
/// and that column is removed.
pub fn involution_psi(p: &PairD, n: usize, m: usize) -> Result<PairD> {
    check_domain(n, m)?;
    if !p.is_member(n, m) {
        return Err(Error::InvolutionDomain(format!("{p:?} is not in D({n},{m})")));
    }
    let t = &p.t;
    let letters = p.w.letters();
    let k = p.k;
    let repeat = last_repeat(letters);
    let l1 = repeat.map_or(0, |i| *letters[..i].iter().max().unwrap() as usize);
    let leftmost = t.rooks().first().copied();
    let l2 = leftmost.map_or(0, |(_, j)| t.label_of_column(j));
    if l1 == 0 && l2 == 0 {
        return Err(Error::InvolutionDomain(format!("{p:?} has neither rooks nor repeats")));
    }
    if l1 > l2 {
        let i = repeat.unwrap();
        let r1 = letters[i] as usize;
        let mut w = letters.to_vec();
        w[i] = (l1 + 1) as u8;
        for x in &mut w[i + 1..] {
            *x += 1;
        }
        // the new board gains an empty column on the left; labels are unchanged
        let mut rows = vec![0u8];
        rows.extend_from_slice(t.rows());
        let grown = RookPlacement::from_rows(k + 1, rows);
        let j = grown.column_of_label(l1);
        let row = l1 - (r1 - 1);
        Ok(PairD { k: k + 1, w: RGWord::new(w)?, t: grown.with_row(j, row) })
    } else {
        let (i, j) = leftmost.unwrap();
        let r2 = i - 1;
        let target = (l2 + 1) as u8;
        let pos = letters
            .iter()
            .position(|&x| x == target)
            .ok_or_else(|| Error::InvolutionDomain(format!("{p:?} lacks the letter {target}")))?;
        let mut w = letters.to_vec();
        w[pos] = (l2 - r2) as u8;
        for x in &mut w[pos + 1..] {
            *x -= 1;
        }
        // drop the column labelled l2; everything to its left is empty
        let rows: Vec<u8> = t.rows()[j..].to_vec();
        let mut shrunk = vec![0u8; (k - 1).saturating_sub(1)];
        let offset = shrunk.len() - rows.len();
        shrunk[offset..].copy_from_slice(&rows);
        Ok(PairD { k: k - 1, w: RGWord::new(w)?, t: RookPlacement::from_rows(k - 1, shrunk) })
    }
}

/// Orbit statistics of one involution on one `(n, m)` cell.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InvolutionStats {
    pub n: usize,
    pub m: usize,
    pub elements: usize,
    pub orbits: usize,
    pub signed_weight_zero: bool,
    pub failures: Vec<String>,
}

fn check_involution<P, F>(n: usize, m: usize, elements: &[P], apply: F) -> InvolutionStats
where
    P: Clone + PartialEq + std::fmt::Debug,
    F: Fn(&P) -> Result<P>,
    P: Weighted,
{
    let mut stats = InvolutionStats { n, m, elements: elements.len(), ..Default::default() };
    let mut total: Poly<num_bigint::BigInt> = Poly::zero();
    for p in elements {
        let wt = match p.weight_big() {
            Ok(w) => w,
            Err(e) => {
                stats.failures.push(format!("{p:?}: {e}"));
                continue;
            }
        };
        total += &wt;
        let image = match apply(p) {
            Ok(x) => x,
            Err(e) => {
                stats.failures.push(format!("{p:?}: {e}"));
                continue;
            }
        };
        if image == *p {
            stats.failures.push(format!("{p:?} is fixed"));
            continue;
        }
        if !image.member(n, m) || image.k().abs_diff(p.k()) != 1 {
            stats.failures.push(format!("{p:?} maps outside the set: {image:?}"));
            continue;
        }
        match image.weight_big() {
            Ok(w) if w == -wt.clone() => {}
            Ok(w) => stats.failures.push(format!("{p:?}: weight {wt} maps to {w}")),
            Err(e) => stats.failures.push(format!("{image:?}: {e}")),
        }
        match apply(&image) {
            Ok(back) if back == *p => {}
            Ok(back) => stats.failures.push(format!("{p:?} -> {image:?} -> {back:?}")),
            Err(e) => stats.failures.push(format!("{image:?}: {e}")),
        }
    }
    stats.orbits = elements.len() / 2;
    stats.signed_weight_zero = total.is_zero();
    if elements.len() % 2 == 1 {
        stats.failures.push(format!("odd number of elements: {}", elements.len()));
    }
    stats
}

/// Common surface of [`PairC`] and [`PairD`] for the sweep.
pub trait Weighted {
    fn k(&self) -> usize;
    fn member(&self, n: usize, m: usize) -> bool;
    fn weight_big(&self) -> Result<Poly<num_bigint::BigInt>>;
}

impl Weighted for PairC {
    fn k(&self) -> usize {
        self.k
    }
    fn member(&self, n: usize, m: usize) -> bool {
        self.is_member(n, m)
    }
    fn weight_big(&self) -> Result<Poly<num_bigint::BigInt>> {
        self.weight()
    }
}

impl Weighted for PairD {
    fn k(&self) -> usize {
        self.k
    }
    fn member(&self, n: usize, m: usize) -> bool {
        self.is_member(n, m)
    }
    fn weight_big(&self) -> Result<Poly<num_bigint::BigInt>> {
        self.weight()
    }
}

/// Exhaustive check of `φ` on `C(n, m)`.
pub fn check_phi(n: usize, m: usize) -> Result<InvolutionStats> {
    let elements = enumerate_c(n, m)?;
    Ok(check_involution(n, m, &elements, |p| involution_phi(p, n, m)))
}

/// Exhaustive check of `ψ` on `D(n, m)`.
pub fn check_psi(n: usize, m: usize) -> Result<InvolutionStats> {
    let elements = enumerate_d(n, m)?;
    Ok(check_involution(n, m, &elements, |p| involution_psi(p, n, m)))
}

/// Largest `n` for which the involutions are checked exhaustively.
pub const BIJECTIVE_N_MAX: usize = 7;

/// Both triangle products against the identity for `n <= n_max`, then the
/// involutions on every `C(n, m)` and `D(n, m)` with `m < n <= min(n_max, 7)`.
pub fn verify_orthogonality(n_max: usize) -> Report {
    let mut report = Report::new("orthogonality");
    let s1 = StirlingTable::<num_bigint::BigInt>::build(TableKind::FirstQtSigned, n_max);
    let s2 = StirlingTable::<num_bigint::BigInt>::build(TableKind::SecondQt, n_max);
    let cells: Vec<(usize, usize)> = (0..=n_max).flat_map(|n| (0..=n).map(move |m| (n, m))).collect();
    let table_checks: Vec<Vec<Check>> = cells
        .par_iter()
        .map(|&(n, m)| {
            let delta = if n == m { Poly::one() } else { Poly::zero() };
            let first: Poly<_> = (m..=n).map(|k| &s1.get(n, k) * &s2.get(k, m)).sum();
            let second: Poly<_> = (m..=n).map(|k| &s2.get(n, k) * &s1.get(k, m)).sum();
            vec![
                Check::expect_eq(
                    format!("sum_k s_qt[{n},k] S_qt[k,{m}] = delta"),
                    "orthogonality, first by second",
                    &first,
                    &delta,
                ),
                Check::expect_eq(
                    format!("sum_k S_qt[{n},k] s_qt[k,{m}] = delta"),
                    "orthogonality, second by first",
                    &second,
                    &delta,
                ),
            ]
        })
        .collect();
    for c in table_checks.into_iter().flatten() {
        report.push(c);
    }
    let top = n_max.min(BIJECTIVE_N_MAX);
    let bij: Vec<(usize, usize)> = (1..=top).flat_map(|n| (0..n).map(move |m| (n, m))).collect();
    let results: Vec<Vec<Check>> = bij
        .par_iter()
        .map(|&(n, m)| {
            [("phi", "C", check_phi(n, m)), ("psi", "D", check_psi(n, m))]
                .into_iter()
                .map(|(name, set, res)| involution_check(name, set, n, m, res))
                .collect()
        })
        .collect();
    for c in results.into_iter().flatten() {
        report.push(c);
    }
    report
}

fn involution_check(name: &str, set: &str, n: usize, m: usize, res: Result<InvolutionStats>) -> Check {
    let label = format!("{name} on {set}({n},{m})");
    let reference = "fixed-point-free weight-negating involution";
    match res {
        Err(e) => Check::fail(label, reference, e.to_string()),
        Ok(s) if s.failures.is_empty() && s.signed_weight_zero => Check::pass_with(
            label,
            reference,
            format!("{} elements, {} orbits of size 2", s.elements, s.orbits),
        ),
        Ok(s) => Check::fail(
            label,
            reference,
            format!(
                "signed weight zero: {}; {}",
                s.signed_weight_zero,
                s.failures.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
            ),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> RGWord {
        s.parse().unwrap()
    }

    #[test]
    fn phi_moves_between_two_known_states() {
        // rooks in the columns labelled 3 (top row) and 2 (bottom)
        let t = RookPlacement::new(5, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(t.label_of_column(3), 2);
        let p = PairC { k: 3, t, w: w("121") };
        assert!(p.is_member(5, 2));
        let q = involution_phi(&p, 5, 2).unwrap();
        assert_eq!(q.w, w("1211"));
        assert_eq!(q.t, RookPlacement::new(5, &[(1, 2)]).unwrap());
        assert_eq!(involution_phi(&q, 5, 2).unwrap(), p);
    }

    #[test]
    fn psi_examples() {
        let t = RookPlacement::new(5, &[(1, 4), (2, 3)]).unwrap();
        let p = PairD { k: 5, w: w("12345"), t };
        assert!(p.is_member(5, 3));
        let q = involution_psi(&p, 5, 3).unwrap();
        assert_eq!(q.w, w("12134"));
        assert_eq!(q.t, RookPlacement::new(4, &[(1, 3)]).unwrap());
        assert_eq!(involution_psi(&q, 5, 3).unwrap(), p);

        let p = PairD { k: 3, w: w("11213"), t: RookPlacement::empty(3) };
        let q = involution_psi(&p, 5, 3).unwrap();
        assert_eq!(q.w, w("11234"));
        assert_eq!(q.t, RookPlacement::new(4, &[(2, 2)]).unwrap());
        assert_eq!(involution_psi(&q, 5, 3).unwrap(), p);
    }

    #[test]
    fn rejects_equal_parameters() {
        let p = PairC { k: 2, t: RookPlacement::empty(2), w: w("12") };
        assert!(matches!(involution_phi(&p, 2, 2), Err(Error::InvolutionDomain(_))));
        let d = PairD { k: 2, w: w("12"), t: RookPlacement::empty(2) };
        assert!(matches!(involution_psi(&d, 2, 2), Err(Error::InvolutionDomain(_))));
    }

    #[test]
    fn exhaustive_small_cells() {
        for (n, m) in [(6, 2), (5, 2), (4, 0), (3, 1)] {
            let s = check_phi(n, m).unwrap();
            assert!(s.failures.is_empty() && s.signed_weight_zero, "{s:?}");
            let s = check_psi(n, m).unwrap();
            assert!(s.failures.is_empty() && s.signed_weight_zero, "{s:?}");
        }
    }

    #[test]
    fn c_weights_match_the_triangles() {
        // the signed weight of C(n,m) splits by k into s_qt[n,k] S_qt[k,m]
        let s1 = StirlingTable::<num_bigint::BigInt>::build(TableKind::FirstQtSigned, 6);
        let s2 = StirlingTable::<num_bigint::BigInt>::build(TableKind::SecondQt, 6);
        for k in 2..=6 {
            let total: Poly<num_bigint::BigInt> = enumerate_c(6, 2)
                .unwrap()
                .iter()
                .filter(|p| p.k == k)
                .map(|p| p.weight().unwrap())
                .sum();
            assert_eq!(total, &s1.get(6, k) * &s2.get(k, 2));
        }
    }

    #[test]
    fn full_report_passes() {
        let r = verify_orthogonality(6);
        assert!(r.all_passed(), "{}", r.to_text());
    }
}
