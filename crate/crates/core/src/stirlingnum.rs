//! q- and (q,t)-Stirling numbers of both kinds, the allowable counts, and the
//! generating-polynomial identities relating them to falling factorials.
//!
//! Every table is built bottom-up to an explicit `n_max`.

use std::fmt::Write as _;

use crate::qtpoly::{q_int, qt_int, Poly, Ring};
use crate::rgwords::{enumerate_allowable, RGWord};
use crate::verify::{Check, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableKind {
    /// `S_q[n,k]`
    SecondQ,
    /// unsigned `c_q[n,k]`
    FirstQ,
    /// `S_{q,t}[n,k]`
    SecondQt,
    /// signed `s_{q,t}[n,k]`
    FirstQtSigned,
}

impl TableKind {
    pub fn symbol(self) -> &'static str {
        match self {
            TableKind::SecondQ => "S_q",
            TableKind::FirstQ => "c_q",
            TableKind::SecondQt => "S_qt",
            TableKind::FirstQtSigned => "s_qt",
        }
    }
}

/// Lower-triangular table of polynomial Stirling numbers for `0 <= k <= n <= n_max`.
#[derive(Clone, Debug)]
pub struct StirlingTable<C> {
    kind: TableKind,
    rows: Vec<Vec<Poly<C>>>,
}

impl<C: Ring> StirlingTable<C> {
    pub fn build(kind: TableKind, n_max: usize) -> Self {
        let mut rows: Vec<Vec<Poly<C>>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![Poly::one()]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let get = |k: usize| prev.get(k).cloned().unwrap_or_else(Poly::zero);
            let mut row = vec![Poly::zero(); n + 1];
            for (k, cell) in row.iter_mut().enumerate().skip(1) {
                let (factor, sign) = match kind {
                    TableKind::SecondQ => (q_int::<C>(k as u32), false),
                    TableKind::FirstQ => (q_int::<C>(n as u32 - 1), false),
                    TableKind::SecondQt => (qt_int::<C>(k as u32), false),
                    TableKind::FirstQtSigned => (qt_int::<C>(n as u32 - 1), true),
                };
                let tail = &factor * &get(k);
                *cell = if sign { &get(k - 1) - &tail } else { &get(k - 1) + &tail };
            }
            rows.push(row);
        }
        StirlingTable { kind, rows }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Entry `(n, k)`; zero above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> Poly<C> {
        assert!(n <= self.n_max(), "n = {n} beyond table bound {}", self.n_max());
        self.rows[n].get(k).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn row(&self, n: usize) -> &[Poly<C>] {
        &self.rows[n]
    }

    /// Applies `t -> 1 + q` to every entry.
    pub fn specialize_t(&self) -> Self {
        StirlingTable {
            kind: self.kind,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(Poly::subst_t_with_one_plus_q).collect())
                .collect(),
        }
    }

    /// CSV with row = n, column = k, empty cells above the diagonal.
    pub fn to_csv(&self) -> String {
        let n_max = self.n_max();
        let mut out = String::from("n\\k");
        for k in 0..=n_max {
            write!(out, ",{k}").unwrap();
        }
        out.push('\n');
        for n in 0..=n_max {
            write!(out, "{n}").unwrap();
            for k in 0..=n_max {
                if k <= n {
                    write!(out, ",{}", self.get(n, k)).unwrap();
                } else {
                    out.push(',');
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn stirling2_q<C: Ring>(n: usize, k: usize) -> Poly<C> {
    StirlingTable::build(TableKind::SecondQ, n).get(n, k)
}

pub fn stirling1_q<C: Ring>(n: usize, k: usize) -> Poly<C> {
    StirlingTable::build(TableKind::FirstQ, n).get(n, k)
}

pub fn stirling2_qt<C: Ring>(n: usize, k: usize) -> Poly<C> {
    StirlingTable::build(TableKind::SecondQt, n).get(n, k)
}

pub fn stirling1_qt_signed<C: Ring>(n: usize, k: usize) -> Poly<C> {
    StirlingTable::build(TableKind::FirstQtSigned, n).get(n, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountKind {
    /// `a(n,k)`, allowable Stirling numbers of the second kind
    AllowableSecond,
    /// `d(n,k)`, allowable Stirling numbers of the first kind
    AllowableFirst,
    /// classical `S(n,k)`
    ClassicalSecond,
    /// classical unsigned `c(n,k)`
    ClassicalFirst,
}

/// Integer triangle for `0 <= k <= n <= n_max`.
#[derive(Clone, Debug)]
pub struct CountTable<C> {
    kind: CountKind,
    rows: Vec<Vec<C>>,
}

impl<C: Ring> CountTable<C> {
    pub fn build(kind: CountKind, n_max: usize) -> Self {
        let mut rows: Vec<Vec<C>> = vec![vec![C::one()]];
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let get = |k: usize| prev.get(k).cloned().unwrap_or_else(C::zero);
            let mut row = vec![C::zero(); n + 1];
            for (k, cell) in row.iter_mut().enumerate().skip(1) {
                let mult = match kind {
                    CountKind::AllowableSecond => k.div_ceil(2),
                    CountKind::AllowableFirst => (n - 1).div_ceil(2),
                    CountKind::ClassicalSecond => k,
                    CountKind::ClassicalFirst => n - 1,
                };
                *cell = get(k - 1) + C::from_usize(mult).unwrap() * get(k);
            }
            rows.push(row);
        }
        CountTable { kind, rows }
    }

    pub fn kind(&self) -> CountKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> C {
        self.rows[n].get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn row_sum(&self, n: usize) -> C {
        self.rows[n].iter().fold(C::zero(), |a, b| a + b.clone())
    }

    /// The triangle with two trailing summary columns.
    pub fn to_csv(&self) -> String {
        let n_max = self.n_max();
        let (extra1, extra2) = match self.kind {
            CountKind::AllowableSecond => ("a(n)", "b(n)"),
            CountKind::AllowableFirst => ("r(n)", "n!"),
            CountKind::ClassicalSecond => ("b(n)", "a(n)"),
            CountKind::ClassicalFirst => ("n!", "r(n)"),
        };
        let mut out = String::from("n\\k");
        for k in 0..=n_max {
            write!(out, ",{k}").unwrap();
        }
        writeln!(out, ",{extra1},{extra2}").unwrap();
        for n in 0..=n_max {
            write!(out, "{n}").unwrap();
            for k in 0..=n_max {
                if k <= n {
                    write!(out, ",{}", self.get(n, k)).unwrap();
                } else {
                    out.push(',');
                }
            }
            let second: C = match self.kind {
                CountKind::AllowableSecond => classical_bell(n),
                CountKind::AllowableFirst => factorial(n),
                CountKind::ClassicalSecond => allowable_bell(n),
                CountKind::ClassicalFirst => rowsum_first(n),
            };
            writeln!(out, ",{},{}", self.row_sum(n), second).unwrap();
        }
        out
    }
}

/// `a(n,k) = |A(n,k)|`.
pub fn allowable_count_second<C: Ring>(n: usize, k: usize) -> C {
    CountTable::build(CountKind::AllowableSecond, n).get(n, k)
}

/// `a(n) = sum_k a(n,k)`.
pub fn allowable_bell<C: Ring>(n: usize) -> C {
    CountTable::build(CountKind::AllowableSecond, n).row_sum(n)
}

/// `d(n,k) = |AR_{n,n-k}|`.
pub fn allowable_count_first<C: Ring>(n: usize, k: usize) -> C {
    CountTable::build(CountKind::AllowableFirst, n).get(n, k)
}

/// `r(n) = sum_k d(n,k)`.
pub fn rowsum_first<C: Ring>(n: usize) -> C {
    CountTable::build(CountKind::AllowableFirst, n).row_sum(n)
}

/// Bell number `b(n)`.
pub fn classical_bell<C: Ring>(n: usize) -> C {
    CountTable::build(CountKind::ClassicalSecond, n).row_sum(n)
}

pub fn factorial<C: Ring>(n: usize) -> C {
    (1..=n).fold(C::one(), |acc, i| acc * C::from_usize(i).unwrap())
}

/// Polynomial in `x` with [`Poly`] coefficients, stored densely, lowest
/// degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoly<C> {
    coeffs: Vec<Poly<C>>,
}

impl<C: Ring> XPoly<C> {
    pub fn from_coeffs(mut coeffs: Vec<Poly<C>>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn one() -> Self {
        XPoly::from_coeffs(vec![Poly::one()])
    }

    /// `x^n`.
    pub fn x_pow(n: usize) -> Self {
        let mut c = vec![Poly::zero(); n + 1];
        c[n] = Poly::one();
        XPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Poly<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Poly<C> {
        self.coeffs.get(i).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `self * (x - root)`.
    pub fn mul_linear(&self, root: &Poly<C>) -> Self {
        let mut out = vec![Poly::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= &(c * root);
        }
        XPoly::from_coeffs(out)
    }

    pub fn scale(&self, s: &Poly<C>) -> Self {
        XPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        XPoly::from_coeffs((0..len).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly<C>) -> Poly<C>) -> Self {
        XPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

/// `(x)_{k,q,t} = prod_{m=0}^{k-1} (x - [m]_{q,t})`.
pub fn falling_factorial_qt<C: Ring>(k: usize) -> XPoly<C> {
    (0..k).fold(XPoly::one(), |acc, m| acc.mul_linear(&qt_int(m as u32)))
}

/// `(x)_{k,q} = prod_{m=0}^{k-1} (x - [m]_q)`.
pub fn falling_factorial_q<C: Ring>(k: usize) -> XPoly<C> {
    (0..k).fold(XPoly::one(), |acc, m| acc.mul_linear(&q_int(m as u32)))
}

/// Index of the first coefficient where two x-polynomials disagree.
fn first_mismatch<C: Ring>(a: &XPoly<C>, b: &XPoly<C>) -> Option<usize> {
    let len = a.coeffs.len().max(b.coeffs.len());
    (0..len).find(|&i| a.coeff(i) != b.coeff(i))
}

/// Checks, for every `n <= n_max`, that
/// `(x)_{n,q,t} = sum_k s_{q,t}[n,k] x^k` and
/// `x^n = sum_k S_{q,t}[n,k] (x)_{k,q,t}`, plus the `t -> 1+q` versions
/// against independently built `S_q` and the specialized `s_{q,t}`.
pub fn verify_generating_identities<C: Ring>(n_max: usize) -> Report {
    let s_first = StirlingTable::<C>::build(TableKind::FirstQtSigned, n_max);
    let s_second = StirlingTable::<C>::build(TableKind::SecondQt, n_max);
    let q_first = s_first.specialize_t();
    let q_second = StirlingTable::<C>::build(TableKind::SecondQ, n_max);
    let falling_qt: Vec<XPoly<C>> = (0..=n_max).map(falling_factorial_qt).collect();
    let falling_q: Vec<XPoly<C>> = (0..=n_max).map(falling_factorial_q).collect();

    let mut report = Report::new("identities");
    for n in 0..=n_max {
        let lhs = XPoly::from_coeffs(s_first.row(n).to_vec());
        report.push(identity_check(
            format!("(x)_{{{n},q,t}} = sum_k s_qt[{n},k] x^k"),
            "generating polynomial, first kind, (q,t)",
            &falling_qt[n],
            &lhs,
        ));
        let rhs = (0..=n).fold(XPoly::from_coeffs(vec![]), |acc, k| {
            acc.add(&falling_qt[k].scale(&s_second.get(n, k)))
        });
        report.push(identity_check(
            format!("x^{n} = sum_k S_qt[{n},k] (x)_{{k,q,t}}"),
            "generating polynomial, second kind, (q,t)",
            &XPoly::x_pow(n),
            &rhs,
        ));
        let lhs_q = XPoly::from_coeffs(q_first.row(n).to_vec());
        report.push(identity_check(
            format!("(x)_{{{n},q}} = sum_k s_q[{n},k] x^k"),
            "generating polynomial, first kind, q (Carlitz)",
            &falling_q[n],
            &lhs_q,
        ));
        let rhs_q = (0..=n).fold(XPoly::from_coeffs(vec![]), |acc, k| {
            acc.add(&falling_q[k].scale(&q_second.get(n, k)))
        });
        report.push(identity_check(
            format!("x^{n} = sum_k S_q[{n},k] (x)_{{k,q}}"),
            "generating polynomial, second kind, q (Carlitz)",
            &XPoly::x_pow(n),
            &rhs_q,
        ));
    }
    report
}

fn identity_check<C: Ring>(name: String, reference: &str, a: &XPoly<C>, b: &XPoly<C>) -> Check {
    match first_mismatch(a, b) {
        None => Check::pass(name, reference),
        Some(i) => Check::fail(
            name,
            reference,
            format!("coefficient of x^{i}: {} vs {}", a.coeff(i), b.coeff(i)),
        ),
    }
}

/// `q^a (1+q)^b` written the way the tables print allowable weights.
pub fn format_q_one_plus_q(a: u32, b: u32) -> String {
    let qpart = match a {
        0 => String::new(),
        1 => "q".to_string(),
        a => format!("q^{a}"),
    };
    let tpart = match b {
        0 => String::new(),
        1 => "(1+q)".to_string(),
        b => format!("(1+q)^{b}"),
    };
    match (qpart.is_empty(), tpart.is_empty()) {
        (true, true) => "1".to_string(),
        (false, true) => qpart,
        (true, false) => tpart,
        (false, false) => format!("{qpart}{tpart}"),
    }
}

/// Allowable words with their `wt'` for every `1 <= k <= n <= n_max`, one per
/// line as `n,k,word,weight`.
pub fn allowable_words_csv(n_max: usize) -> crate::Result<String> {
    let mut out = String::from("n,k,word,weight\n");
    for n in 1..=n_max {
        for k in 1..=n {
            for w in enumerate_allowable(n, k)? {
                writeln!(out, "{n},{k},{w},{}", format_q_one_plus_q(w.stat_a(), w.stat_b()))
                    .unwrap();
            }
        }
    }
    Ok(out)
}

/// RG-words with their partitions and weights for every `1 <= k <= n <= n_max`,
/// as `n,k,partition,word,weight`.
pub fn rg_words_csv(n_max: usize) -> crate::Result<String> {
    let mut out = String::from("n,k,partition,word,weight\n");
    for n in 1..=n_max {
        for k in 1..=n {
            for w in crate::rgwords::enumerate_rg(n, k)? {
                writeln!(
                    out,
                    "{n},{k},{},{w},{}",
                    w.to_partition(),
                    format_q_one_plus_q(w.stat_a(), 0)
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}

/// Sum of `wt'` over `A(n,k)`, kept in `(q, t)` form.
pub fn allowable_weight_sum<C: Ring>(n: usize, k: usize) -> crate::Result<Poly<C>> {
    enumerate_allowable(n, k)?
        .iter()
        .map(RGWord::wt_prime)
        .sum::<crate::Result<Poly<C>>>()
}
