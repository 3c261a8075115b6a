//! Boundary maps on the Stirling posets, the chain complexes they support,
//! and integer homology through Smith normal form.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::posets::{match_poset, GradedPoset, Payload, PosetKind};
use crate::qtpoly::{Poly, Ring};
use crate::rgwords::RGWord;
use crate::rookboards::RookPlacement;
use crate::{Error, Result};

/// Coefficient rings Smith normal form can run over.
pub trait IntegerRing: Ring + Integer + Signed {}

impl<T: Ring + Integer + Signed> IntegerRing for T {}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: IntegerRing> IntMatrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<C>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &C {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: C) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::<C>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// Appends the given columns on the right.
    pub fn hstack(&self, extra: &[Vec<C>]) -> Self {
        let cols = self.cols + extra.len();
        let mut out = IntMatrix::zeros(self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for (e, col) in extra.iter().enumerate() {
                out.set(r, self.cols + e, col[r].clone());
            }
        }
        out
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn triples(&self) -> Vec<(usize, usize, C)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    out.push((r, c, v.clone()));
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] -= f * row[src]`
    fn row_axpy(&mut self, dst: usize, src: usize, f: &C) {
        for c in 0..self.cols {
            let s = self.get(src, c);
            if !s.is_zero() {
                let v = self.get(dst, c).clone() - f.clone() * s.clone();
                self.set(dst, c, v);
            }
        }
    }

    /// `col[dst] -= f * col[src]`
    fn col_axpy(&mut self, dst: usize, src: usize, f: &C) {
        for r in 0..self.rows {
            let s = self.get(r, src);
            if !s.is_zero() {
                let v = self.get(r, dst).clone() - f.clone() * s.clone();
                self.set(r, dst, v);
            }
        }
    }

    /// Nonzero diagonal of the Smith normal form, each dividing the next.
    pub fn smith_diagonal(&self) -> Vec<C> {
        let mut a = self.clone();
        let mut diag = Vec::new();
        let mut t = 0;
        while t < a.rows.min(a.cols) {
            // smallest nonzero entry in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for r in t..a.rows {
                for c in t..a.cols {
                    let v = a.get(r, c);
                    if !v.is_zero() && best.map_or(true, |(br, bc)| v.abs() < a.get(br, bc).abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((br, bc)) = best else { break };
            a.swap_rows(t, br);
            a.swap_cols(t, bc);
            loop {
                let p = a.get(t, t).clone();
                let mut dirty = false;
                for r in t + 1..a.rows {
                    if !a.get(r, t).is_zero() {
                        let f = a.get(r, t).div_floor(&p);
                        a.row_axpy(r, t, &f);
                        dirty |= !a.get(r, t).is_zero();
                    }
                }
                for c in t + 1..a.cols {
                    if !a.get(t, c).is_zero() {
                        let f = a.get(t, c).div_floor(&p);
                        a.col_axpy(c, t, &f);
                        dirty |= !a.get(t, c).is_zero();
                    }
                }
                if dirty {
                    a.move_min_to_pivot(t);
                    continue;
                }
                // the pivot must divide the rest of the block
                let bad = (t + 1..a.rows)
                    .flat_map(|r| (t + 1..a.cols).map(move |c| (r, c)))
                    .find(|&(r, c)| !a.get(r, c).is_multiple_of(&p));
                match bad {
                    Some((r, _)) => {
                        a.row_axpy(t, r, &-C::one());
                        a.move_min_to_pivot(t);
                    }
                    None => break,
                }
            }
            diag.push(a.get(t, t).abs());
            t += 1;
        }
        diag
    }

    /// Brings the smallest nonzero entry of row `t` and column `t` to `(t, t)`.
    fn move_min_to_pivot(&mut self, t: usize) {
        let mut best = (t, t);
        for r in t..self.rows {
            let v = self.get(r, t);
            if !v.is_zero() && (self.get(best.0, best.1).is_zero() || v.abs() < self.get(best.0, best.1).abs()) {
                best = (r, t);
            }
        }
        for c in t..self.cols {
            let v = self.get(t, c);
            if !v.is_zero() && (self.get(best.0, best.1).is_zero() || v.abs() < self.get(best.0, best.1).abs()) {
                best = (t, c);
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
    }

    pub fn rank(&self) -> usize {
        self.smith_diagonal().len()
    }
}

/// Signed formal sum of poset payloads.
pub type FormalSum<P> = Vec<(P, i64)>;

/// Positions (0-based) of repeated even letters, i.e. every occurrence of an
/// even value after its first.
pub fn repeated_even_positions(w: &RGWord) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    w.letters()
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x % 2 == 0 && !seen.insert(x))
        .map(|(i, _)| i)
        .collect()
}

/// `∂w = sum_j (-1)^(j-1) w^{(i_j)}`, lowering the `j`-th repeated even letter.
pub fn boundary_pi(w: &RGWord) -> FormalSum<RGWord> {
    repeated_even_positions(w)
        .into_iter()
        .enumerate()
        .map(|(j, i)| {
            let mut letters = w.letters().to_vec();
            letters[i] -= 1;
            (RGWord::new(letters).expect("lowered word is restricted growth"), sign(j))
        })
        .collect()
}

/// `∂T = sum_i (-1)^(i-1) T_{r_i}`, moving the `i`-th unshaded rook down one.
pub fn boundary_gamma(t: &RookPlacement) -> FormalSum<RookPlacement> {
    t.rooks()
        .into_iter()
        .filter(|&(i, j)| !t.is_shaded(i, j))
        .enumerate()
        .map(|(idx, (i, j))| {
            let moved = RookPlacement::new(
                t.board_len(),
                &t.rooks()
                    .into_iter()
                    .map(|(r, c)| if c == j { (i + 1, c) } else { (r, c) })
                    .collect::<Vec<_>>(),
            )
            .expect("square below an unshaded rook exists");
            (moved, sign(idx))
        })
        .collect()
}

fn sign(j: usize) -> i64 {
    if j % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Boundary of a poset payload.
pub fn boundary(p: &Payload) -> FormalSum<Payload> {
    match p {
        Payload::Word(w) => boundary_pi(w).into_iter().map(|(x, s)| (Payload::Word(x), s)).collect(),
        Payload::Rooks(t) => boundary_gamma(t).into_iter().map(|(x, s)| (Payload::Rooks(x), s)).collect(),
    }
}

/// `∂∂p` with cancellation; empty when the boundary squares to zero at `p`.
pub fn boundary_squared(p: &Payload) -> BTreeMap<Payload, i64> {
    let mut acc: BTreeMap<Payload, i64> = BTreeMap::new();
    for (x, s) in boundary(p) {
        for (y, u) in boundary(&x) {
            *acc.entry(y).or_insert(0) += s * u;
        }
    }
    acc.retain(|_, v| *v != 0);
    acc
}

/// Chain groups indexed by rank with boundary matrices
/// `∂_i : C_i -> C_{i-1}` (rows rank `i-1`, columns rank `i`).
#[derive(Clone, Debug)]
pub struct ChainComplex<C> {
    kind: PosetKind,
    layers: Vec<Vec<usize>>,
    boundaries: Vec<IntMatrix<C>>,
}

impl<C: IntegerRing> ChainComplex<C> {
    pub fn kind(&self) -> PosetKind {
        self.kind
    }

    /// Handles of rank `i`, in the order used for matrix rows and columns.
    pub fn layer(&self, i: usize) -> &[usize] {
        &self.layers[i]
    }

    pub fn top_rank(&self) -> usize {
        self.layers.len() - 1
    }

    /// `∂_i`; `∂_0` is the `0 x |C_0|` matrix.
    pub fn boundary_matrix(&self, i: usize) -> &IntMatrix<C> {
        &self.boundaries[i]
    }

    /// `(rows, cols)` of `∂_1 .. ∂_top`.
    pub fn matrix_shapes(&self) -> Vec<(usize, usize)> {
        self.boundaries[1..].iter().map(|m| (m.rows(), m.cols())).collect()
    }
}

/// Assembles the boundary matrices after checking `∂∂ = 0` element by element
/// and confirming every term is strictly below its source.
pub fn build_complex<C: IntegerRing>(poset: &GradedPoset) -> Result<ChainComplex<C>> {
    let layers = poset.rank_layers();
    let mut position = vec![0; poset.len()];
    for layer in &layers {
        for (idx, &h) in layer.iter().enumerate() {
            position[h] = idx;
        }
    }
    let mut boundaries = vec![IntMatrix::<C>::zeros(0, layers[0].len())];
    for i in 1..layers.len() {
        boundaries.push(IntMatrix::zeros(layers[i - 1].len(), layers[i].len()));
    }
    for h in 0..poset.len() {
        let p = poset.payload(h);
        let sq = boundary_squared(p);
        if !sq.is_empty() {
            return Err(Error::BoundaryNotNilpotent(p.to_string()));
        }
        let r = poset.rank(h);
        for (x, s) in boundary(p) {
            let g = poset
                .handle(&x)
                .filter(|&g| poset.rank(g) + 1 == r && poset.covers(g, h))
                .ok_or_else(|| Error::BoundaryNotNilpotent(format!("{p}: term {x} is not covered by it")))?;
            let m = &mut boundaries[r];
            let v = m.get(position[g], position[h]).clone() + C::from_i64(s).unwrap();
            m.set(position[g], position[h], v);
        }
    }
    for i in 2..boundaries.len() {
        if !boundaries[i - 1].mul(&boundaries[i]).is_zero() {
            return Err(Error::BoundaryNotNilpotent(format!("matrices at rank {i}")));
        }
    }
    Ok(ChainComplex { kind: poset.kind(), layers, boundaries })
}

/// Homology of a [`ChainComplex`] together with the check of the claimed basis
/// (the unmatched elements of the Morse matching).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult<C> {
    /// `dim H_i` by rank.
    pub dims: Vec<usize>,
    /// Invariant factors `> 1` by rank.
    pub torsion: Vec<Vec<C>>,
    /// Claimed generators by rank.
    pub basis: Vec<Vec<usize>>,
    /// Every claimed generator has zero boundary.
    pub basis_are_cycles: bool,
    /// Claimed generators stay independent modulo boundaries and their number
    /// equals the dimension in every rank.
    pub basis_independent: bool,
}

impl<C: IntegerRing> HomologyResult<C> {
    pub fn poincare<D: Ring>(&self) -> Poly<D> {
        let mut p = Poly::zero();
        for (i, &d) in self.dims.iter().enumerate() {
            p.add_term(i as u32, 0, D::from_usize(d).unwrap());
        }
        p
    }

    pub fn torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    pub fn concentrated_in_even_ranks(&self) -> bool {
        self.dims.iter().enumerate().all(|(i, &d)| i % 2 == 0 || d == 0)
    }
}

pub fn homology<C: IntegerRing>(poset: &GradedPoset, complex: &ChainComplex<C>) -> Result<HomologyResult<C>> {
    let top = complex.top_rank();
    let diags: Vec<Vec<C>> = (0..=top).map(|i| complex.boundary_matrix(i).smith_diagonal()).collect();
    let rank = |i: usize| if i <= top { diags[i].len() } else { 0 };
    let matching = match_poset(poset)?;
    let mut dims = Vec::new();
    let mut torsion = Vec::new();
    let mut basis = vec![Vec::new(); top + 1];
    for h in matching.unmatched() {
        basis[poset.rank(h)].push(h);
    }
    let mut cycles = true;
    let mut independent = true;
    for i in 0..=top {
        let n_i = complex.layer(i).len();
        let dim = n_i - rank(i) - rank(i + 1);
        dims.push(dim);
        torsion.push(if i < top {
            diags[i + 1].iter().filter(|d| !d.is_one()).cloned().collect()
        } else {
            Vec::new()
        });
        let columns: Vec<Vec<C>> = basis[i]
            .iter()
            .map(|&h| {
                complex
                    .layer(i)
                    .iter()
                    .map(|&g| if g == h { C::one() } else { C::zero() })
                    .collect()
            })
            .collect();
        let d_i = complex.boundary_matrix(i);
        for &h in &basis[i] {
            let col = complex.layer(i).iter().position(|&g| g == h).unwrap();
            if (0..d_i.rows()).any(|r| !d_i.get(r, col).is_zero()) {
                cycles = false;
            }
        }
        // rank rises by at most one per appended column, so reaching
        // rank(∂_{i+1}) + |basis| means every generator raised it
        let image = if i < top {
            complex.boundary_matrix(i + 1).clone()
        } else {
            IntMatrix::zeros(n_i, 0)
        };
        let augmented = image.hstack(&columns);
        if augmented.rank() != rank(i + 1) + columns.len() || columns.len() != dim {
            independent = false;
        }
    }
    Ok(HomologyResult { dims, torsion, basis, basis_are_cycles: cycles, basis_independent: independent })
}

#[derive(Serialize)]
struct JsonRank {
    rank: usize,
    elements: usize,
    dim: usize,
    invariant_factors: Vec<String>,
    basis: Vec<String>,
}

#[derive(Serialize)]
struct JsonMatrix {
    rank: usize,
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

#[derive(Serialize)]
struct JsonHomology {
    poset: String,
    ranks: Vec<JsonRank>,
    torsion_free: bool,
    basis_are_cycles: bool,
    basis_independent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrices: Option<Vec<JsonMatrix>>,
}

/// JSON report; with `with_matrices` the boundary matrices are included as
/// `(row, col, value)` triples.
pub fn homology_json<C: IntegerRing>(
    poset: &GradedPoset,
    complex: &ChainComplex<C>,
    result: &HomologyResult<C>,
    with_matrices: bool,
) -> String {
    let doc = JsonHomology {
        poset: poset.kind().to_string(),
        ranks: (0..result.dims.len())
            .map(|i| JsonRank {
                rank: i,
                elements: complex.layer(i).len(),
                dim: result.dims[i],
                invariant_factors: result.torsion[i].iter().map(ToString::to_string).collect(),
                basis: result.basis[i].iter().map(|&h| poset.payload(h).to_string()).collect(),
            })
            .collect(),
        torsion_free: result.torsion_free(),
        basis_are_cycles: result.basis_are_cycles,
        basis_independent: result.basis_independent,
        matrices: with_matrices.then(|| {
            (1..=complex.top_rank())
                .map(|i| {
                    let m = complex.boundary_matrix(i);
                    JsonMatrix {
                        rank: i,
                        rows: m.rows(),
                        cols: m.cols(),
                        entries: m.triples().into_iter().map(|(r, c, v)| (r, c, v.to_string())).collect(),
                    }
                })
                .collect()
        }),
    };
    serde_json::to_string_pretty(&doc).expect("homology serializes")
}

/// Plain-text summary, one line per rank.
pub fn homology_text<C: IntegerRing>(poset: &GradedPoset, complex: &ChainComplex<C>, result: &HomologyResult<C>) -> String {
    let mut out = format!("{}\n", poset.kind());
    for i in 0..result.dims.len() {
        let basis: Vec<String> = result.basis[i].iter().map(|&h| poset.payload(h).to_string()).collect();
        out.push_str(&format!(
            "H_{i}: rank {} ({} cells){}{}\n",
            result.dims[i],
            complex.layer(i).len(),
            if result.torsion[i].is_empty() {
                String::new()
            } else {
                format!(", torsion {:?}", result.torsion[i].iter().map(ToString::to_string).collect::<Vec<_>>())
            },
            if basis.is_empty() { String::new() } else { format!(", basis {}", basis.join(" ")) }
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::posets::{build_gamma, build_pi};
    use crate::rookboards::enumerate_rooks;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn w(s: &str) -> RGWord {
        s.parse().unwrap()
    }

    #[test]
    fn boundary_of_the_worked_word() {
        let d = boundary_pi(&w("122344"));
        assert_eq!(d, vec![(w("121344"), 1), (w("122343"), -1)]);
        assert!(boundary_squared(&Payload::Word(w("122344"))).is_empty());
        assert!(boundary_pi(&w("12131")).is_empty());
    }

    #[test]
    fn boundary_of_placements() {
        let shaded = RookPlacement::new(5, &[(1, 2), (2, 3)]).unwrap();
        assert!(boundary_gamma(&shaded).is_empty());
        let single = RookPlacement::new(5, &[(1, 1)]).unwrap();
        assert_eq!(boundary_gamma(&single), vec![(RookPlacement::new(5, &[(2, 1)]).unwrap(), 1)]);
        for t in (0..=5).flat_map(|n| enumerate_rooks(6, n).unwrap()) {
            assert!(boundary_squared(&Payload::Rooks(t.clone())).is_empty(), "{t}");
        }
    }

    #[test]
    fn smith_normal_form_small() {
        let m = IntMatrix::<BigInt>::from_rows(&[
            vec![2.into(), 4.into(), 4.into()],
            vec![(-6).into(), 6.into(), 12.into()],
            vec![10.into(), (-4).into(), (-16).into()],
        ]);
        let d: Vec<i64> = m.smith_diagonal().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
        let z = IntMatrix::<i64>::zeros(3, 2);
        assert!(z.smith_diagonal().is_empty());
        let e = IntMatrix::<i64>::zeros(0, 4);
        assert_eq!(e.rank(), 0);
    }

    fn det2(a: i64, b: i64, c: i64, d: i64) -> i64 {
        (a * d - b * c).abs()
    }

    proptest! {
        #[test]
        fn smith_of_two_by_two(a in -30i64..30, b in -30i64..30, c in -30i64..30, d in -30i64..30) {
            let m = IntMatrix::<i64>::from_rows(&[vec![a, b], vec![c, d]]);
            let diag = m.smith_diagonal();
            let g = [a, b, c, d].iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            let det = det2(a, b, c, d);
            match diag.len() {
                0 => prop_assert_eq!(g, 0),
                1 => { prop_assert_eq!(det, 0); prop_assert_eq!(diag[0], g); }
                _ => { prop_assert_eq!(diag[0], g); prop_assert_eq!(diag[0] * diag[1], det); }
            }
        }
    }

    #[test]
    fn pi_five_three() {
        let p = build_pi(5, 3).unwrap();
        let c = build_complex::<BigInt>(&p).unwrap();
        assert_eq!(c.matrix_shapes(), vec![(6, 8), (8, 7), (7, 3), (3, 1)]);
        let h = homology(&p, &c).unwrap();
        assert_eq!(h.dims, vec![1, 0, 1, 0, 1]);
        assert!(h.torsion_free() && h.basis_are_cycles && h.basis_independent);
        let json: serde_json::Value = serde_json::from_str(&homology_json(&p, &c, &h, true)).unwrap();
        assert_eq!(json["ranks"][4]["basis"][0], "12333");
    }

    #[test]
    fn gamma_four_two() {
        let p = build_gamma(4, 2).unwrap();
        let c = build_complex::<BigInt>(&p).unwrap();
        assert_eq!(c.matrix_shapes(), vec![(3, 4), (4, 3), (3, 1)]);
        let h = homology(&p, &c).unwrap();
        assert_eq!(h.dims, vec![0, 0, 1, 0]);
        assert!(h.basis_independent);
    }

    #[test]
    fn point_complex() {
        let p = build_pi(4, 4).unwrap();
        let c = build_complex::<i64>(&p).unwrap();
        assert!(c.matrix_shapes().is_empty());
        assert_eq!(homology(&p, &c).unwrap().dims, vec![1]);
    }
}
