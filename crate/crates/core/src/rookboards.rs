//! Staircase boards with alternating antidiagonal shading and the rook
//! placements on them.
//!
//! Coordinates are `(row, column)`, both 1-based, row 1 at the top. A board of
//! length `m` has columns `1..m-1` and square `(i, j)` exists iff `i + j <= m`,
//! so column `j` holds `m - j` squares. Squares on the lowest antidiagonal
//! (`i + j = m`) are shaded and shading alternates upwards, which makes a rook
//! shaded exactly when the number of squares below it is even.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::qtpoly::{Poly, Ring};
use crate::{Error, Result, DEFAULT_MAX_N};

/// Whether square `(i, j)` of a length-`m` board is shaded.
pub fn is_shaded(m: usize, i: usize, j: usize) -> bool {
    (m - i - j) % 2 == 0
}

/// Rooks on a staircase board of length `m`, at most one per column.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RookPlacement {
    m: usize,
    // rows[j - 1] is the row of the rook in column j, 0 when the column is empty
    rows: Vec<u8>,
}

impl RookPlacement {
    pub fn empty(m: usize) -> Self {
        RookPlacement {
            m,
            rows: vec![0; m.saturating_sub(1)],
        }
    }

    /// Builds a placement from `(row, column)` pairs.
    pub fn new(m: usize, rooks: &[(usize, usize)]) -> Result<Self> {
        let mut p = RookPlacement::empty(m);
        for &(i, j) in rooks {
            if i == 0 || j == 0 || i + j > m {
                return Err(Error::InvalidPlacement(format!(
                    "square ({i},{j}) is not on the length-{m} board"
                )));
            }
            if p.rows[j - 1] != 0 {
                return Err(Error::InvalidPlacement(format!(
                    "two rooks in column {j}"
                )));
            }
            p.rows[j - 1] = i as u8;
        }
        Ok(p)
    }

    pub(crate) fn from_rows(m: usize, rows: Vec<u8>) -> Self {
        debug_assert_eq!(rows.len(), m.saturating_sub(1));
        RookPlacement { m, rows }
    }

    /// Board length.
    pub fn board_len(&self) -> usize {
        self.m
    }

    pub fn num_columns(&self) -> usize {
        self.rows.len()
    }

    pub fn num_rooks(&self) -> usize {
        self.rows.iter().filter(|&&r| r != 0).count()
    }

    /// Row of the rook in column `j`, if any.
    pub fn rook_in_column(&self, j: usize) -> Option<usize> {
        match self.rows[j - 1] {
            0 => None,
            r => Some(r as usize),
        }
    }

    /// Rooks as `(row, column)` sorted by column.
    pub fn rooks(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != 0)
            .map(|(j, &r)| (r as usize, j + 1))
            .collect()
    }

    pub(crate) fn rows(&self) -> &[u8] {
        &self.rows
    }

    /// Squares strictly south of the rook at `(i, j)`.
    pub fn below_square(&self, i: usize, j: usize) -> usize {
        self.m - i - j
    }

    pub fn is_shaded(&self, i: usize, j: usize) -> bool {
        is_shaded(self.m, i, j)
    }

    /// Total number of squares south of the rooks.
    pub fn below(&self) -> usize {
        self.rooks().iter().map(|&(i, j)| self.below_square(i, j)).sum()
    }

    /// Number of rooks not in the first row.
    pub fn nrow(&self) -> usize {
        self.rows.iter().filter(|&&r| r > 1).count()
    }

    /// Every rook sits on a shaded square.
    pub fn is_allowable(&self) -> bool {
        self.rooks().iter().all(|&(i, j)| self.is_shaded(i, j))
    }

    /// `q^below(T)`.
    pub fn q_weight<C: Ring>(&self) -> Poly<C> {
        Poly::q_pow(self.below() as u32)
    }

    /// `q^below(T) t^nrow(T)` on an allowable placement, `t` standing for `1 + q`.
    pub fn wt_rook<C: Ring>(&self) -> Result<Poly<C>> {
        if !self.is_allowable() {
            return Err(Error::NotAllowable(format!("placement {}", self.to_json())));
        }
        Ok(Poly::qt_pow(self.below() as u32, self.nrow() as u32))
    }

    /// `w_j` = one plus the squares below the column-`j` rook, 0 for an empty
    /// column; columns read left to right.
    pub fn rook_word(&self) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .map(|(j, &r)| match r {
                0 => 0,
                r => self.below_square(r as usize, j + 1) + 1,
            })
            .collect()
    }

    /// Right-to-left label of absolute column `j`. The column labelled `l`
    /// holds exactly `l` squares.
    pub fn label_of_column(&self, j: usize) -> usize {
        self.m - j
    }

    pub fn column_of_label(&self, label: usize) -> usize {
        self.m - label
    }

    /// Same placement with the rook in column `j` moved to `row` (0 removes it).
    pub(crate) fn with_row(&self, j: usize, row: usize) -> Self {
        let mut rows = self.rows.clone();
        rows[j - 1] = row as u8;
        RookPlacement { m: self.m, rows }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("placement serializes")
    }

    /// Compact single-line label, e.g. `5:2.1,1.2,1.3` (board length, then
    /// row.column per rook); `4:-` for the empty placement.
    pub fn label(&self) -> String {
        let rooks = self.rooks();
        if rooks.is_empty() {
            return format!("{}:-", self.m);
        }
        let parts: Vec<String> = rooks.iter().map(|(i, j)| format!("{i}.{j}")).collect();
        format!("{}:{}", self.m, parts.join(","))
    }

    /// ASCII grid: `R` rook, `#` shaded, `.` unshaded; one line per row.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 1..self.m {
            for j in 1..=self.m - i {
                let c = if self.rows[j - 1] as usize == i {
                    'R'
                } else if self.is_shaded(i, j) {
                    '#'
                } else {
                    '.'
                };
                out.push(c);
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for RookPlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Serialize, Deserialize)]
struct JsonPlacement {
    m: usize,
    rooks: Vec<[usize; 2]>,
}

/// `{"m":M,"rooks":[[i,j],...]}` sorted by column.
impl Serialize for RookPlacement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonPlacement {
            m: self.m,
            rooks: self.rooks().into_iter().map(|(i, j)| [i, j]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RookPlacement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = JsonPlacement::deserialize(d)?;
        let rooks: Vec<(usize, usize)> = raw.rooks.iter().map(|r| (r[0], r[1])).collect();
        RookPlacement::new(raw.m, &rooks).map_err(serde::de::Error::custom)
    }
}

/// All placements of `n` rooks on the length-`m` board (`R_{m,n}`).
pub fn enumerate_rooks(m: usize, n: usize) -> Result<Vec<RookPlacement>> {
    enumerate_rooks_with(m, n, DEFAULT_MAX_N, false)
}

/// The placements with every rook shaded (`AR_{m,n}`).
pub fn enumerate_allowable_rooks(m: usize, n: usize) -> Result<Vec<RookPlacement>> {
    enumerate_rooks_with(m, n, DEFAULT_MAX_N, true)
}

/// Ordered by sorted column set (lexicographic), then by rows within the
/// columns, ascending.
pub fn enumerate_rooks_with(
    m: usize,
    n: usize,
    max_m: usize,
    allowable_only: bool,
) -> Result<Vec<RookPlacement>> {
    if m > max_m {
        return Err(Error::BoundExceeded {
            what: "board length",
            requested: m,
            limit: max_m,
        });
    }
    let cols = m.saturating_sub(1);
    if n > cols {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n);
    for_each_combination(1, cols, n, &mut chosen, &mut |set| {
        let mut rows = vec![0u8; cols];
        place(m, set, 0, allowable_only, &mut rows, &mut out);
    });
    Ok(out)
}

fn for_each_combination(
    start: usize,
    cols: usize,
    need: usize,
    chosen: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if need == 0 {
        f(chosen);
        return;
    }
    for j in start..=cols {
        if cols - j + 1 < need {
            break;
        }
        chosen.push(j);
        for_each_combination(j + 1, cols, need - 1, chosen, f);
        chosen.pop();
    }
}

fn place(
    m: usize,
    cols: &[usize],
    idx: usize,
    allowable_only: bool,
    rows: &mut Vec<u8>,
    out: &mut Vec<RookPlacement>,
) {
    if idx == cols.len() {
        out.push(RookPlacement {
            m,
            rows: rows.clone(),
        });
        return;
    }
    let j = cols[idx];
    for i in 1..=m - j {
        if allowable_only && !is_shaded(m, i, j) {
            continue;
        }
        rows[j - 1] = i as u8;
        place(m, cols, idx + 1, allowable_only, rows, out);
    }
    rows[j - 1] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Poly<BigInt>;

    /// Placements by trying every row assignment per column, independent of
    /// the column-subset generator.
    fn brute_force(m: usize, n: usize) -> Vec<RookPlacement> {
        let cols = m.saturating_sub(1);
        let mut all = vec![RookPlacement::empty(m)];
        for j in 1..=cols {
            let mut next = Vec::new();
            for p in &all {
                next.push(p.clone());
                for i in 1..=m - j {
                    next.push(p.with_row(j, i));
                }
            }
            all = next;
        }
        all.retain(|p| p.num_rooks() == n);
        all.sort();
        all
    }

    #[test]
    fn enumerate_rooks_examples() {
        assert_eq!(brute_force(4, 2).len(), 11);
        assert_eq!(enumerate_rooks(4, 2).unwrap().len(), 11);
        for m in 0..6 {
            assert_eq!(enumerate_rooks(m, 0).unwrap(), vec![RookPlacement::empty(m)]);
        }
        let sum: P = enumerate_rooks(4, 2).unwrap().iter().map(|t| t.q_weight()).sum();
        assert_eq!(sum, P::from_q_coeffs(&[3, 4, 3, 1]));
        assert!(enumerate_rooks(4, 4).unwrap().is_empty());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for m in 0..=7 {
            for n in 0..m.max(1) {
                let mut got = enumerate_rooks(m, n).unwrap();
                got.sort();
                assert_eq!(got, brute_force(m, n), "m={m} n={n}");
                let mut allowed = enumerate_allowable_rooks(m, n).unwrap();
                allowed.sort();
                let expected: Vec<_> = brute_force(m, n)
                    .into_iter()
                    .filter(RookPlacement::is_allowable)
                    .collect();
                assert_eq!(allowed, expected);
            }
        }
    }

    #[test]
    fn enumeration_order_is_by_columns_then_rows() {
        let got = enumerate_rooks(4, 2).unwrap();
        let keys: Vec<Vec<(usize, usize)>> = got
            .iter()
            .map(|t| t.rooks().into_iter().map(|(i, j)| (j, i)).collect())
            .collect();
        let mut sorted_cols = keys.clone();
        sorted_cols.sort_by(|a, b| {
            let ca: Vec<usize> = a.iter().map(|x| x.0).collect();
            let cb: Vec<usize> = b.iter().map(|x| x.0).collect();
            ca.cmp(&cb).then(a.cmp(b))
        });
        assert_eq!(keys, sorted_cols);
    }

    #[test]
    fn allowable_examples() {
        assert_eq!(enumerate_allowable_rooks(4, 2).unwrap().len(), 5);
        assert_eq!(enumerate_allowable_rooks(5, 2).unwrap().len(), 13);
        assert_eq!(enumerate_allowable_rooks(5, 3).unwrap().len(), 12);
        assert_eq!(
            enumerate_allowable_rooks(6, 0).unwrap(),
            vec![RookPlacement::empty(6)]
        );
    }

    #[test]
    fn small_board_weights() {
        let mut weights: Vec<P> = enumerate_allowable_rooks(4, 2)
            .unwrap()
            .iter()
            .map(|t| t.wt_rook::<BigInt>().unwrap().subst_t_with_one_plus_q())
            .collect();
        let one_q = P::from_q_coeffs(&[1, 1]);
        let mut expected = vec![
            P::q_pow(2),
            &P::q_pow(2) * &one_q,
            one_q.pow(2),
            one_q.clone(),
            one_q.clone(),
        ];
        weights.sort_by_key(|p| p.to_string());
        expected.sort_by_key(|p| p.to_string());
        assert_eq!(weights, expected);
    }

    #[test]
    fn below_and_nrow() {
        let empty = RookPlacement::empty(5);
        assert_eq!((empty.below(), empty.nrow()), (0, 0));
        let top_right = RookPlacement::new(5, &[(1, 4)]).unwrap();
        assert_eq!(top_right.below(), 0);
        assert!(RookPlacement::new(4, &[(2, 2), (1, 2)]).is_err());
        assert!(RookPlacement::new(4, &[(3, 2)]).is_err());
        let unshaded = RookPlacement::new(4, &[(1, 2)]).unwrap();
        assert!(matches!(unshaded.wt_rook::<BigInt>(), Err(Error::NotAllowable(_))));
    }

    #[test]
    fn shading_matches_below_parity() {
        for m in 2..9 {
            for p in enumerate_rooks(m, 1).unwrap() {
                for (i, j) in p.rooks() {
                    assert_eq!(p.is_shaded(i, j), p.below_square(i, j) % 2 == 0);
                }
            }
        }
    }

    #[test]
    fn rook_words() {
        let fig8 = RookPlacement::new(5, &[(2, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(fig8.rook_word(), vec![3, 3, 2, 0]);
        assert_eq!(RookPlacement::empty(6).rook_word(), vec![0; 5]);
        let bottom = RookPlacement::new(5, &[(4, 1)]).unwrap();
        assert_eq!(bottom.rook_word(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn json_and_render() {
        let p = RookPlacement::new(4, &[(1, 3), (3, 1)]).unwrap();
        assert_eq!(p.to_json(), r#"{"m":4,"rooks":[[3,1],[1,3]]}"#);
        let back: RookPlacement = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<RookPlacement>(r#"{"m":3,"rooks":[[3,1]]}"#).is_err());
        assert_eq!(p.render(), "#.R\n.#\nR\n");
        assert_eq!(p.label(), "4:3.1,1.3");
    }
}
