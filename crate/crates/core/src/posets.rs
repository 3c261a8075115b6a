//! Graded posets, the two Stirling poset instances, their Morse matchings,
//! acyclicity checking, and Boolean interval decompositions.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::qtpoly::{gauss_binomial, Poly, Ring};
use crate::rgwords::{enumerate_rg_with, RGWord};
use crate::rookboards::{enumerate_rooks_with, RookPlacement};
use crate::stirlingnum::{CountKind, CountTable};
use crate::{Error, Result, DEFAULT_MAX_ELEMENTS, DEFAULT_MAX_N};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Payload {
    Word(RGWord),
    Rooks(RookPlacement),
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Word(w) => write!(f, "{w}"),
            Payload::Rooks(t) => write!(f, "{t}"),
        }
    }
}

impl Payload {
    pub fn as_word(&self) -> Option<&RGWord> {
        match self {
            Payload::Word(w) => Some(w),
            Payload::Rooks(_) => None,
        }
    }

    pub fn as_rooks(&self) -> Option<&RookPlacement> {
        match self {
            Payload::Rooks(t) => Some(t),
            Payload::Word(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PosetKind {
    /// `Π(n, k)` on RG-words.
    Pi { n: usize, k: usize },
    /// `Γ(m, n)` on rook placements.
    Gamma { m: usize, n: usize },
}

impl fmt::Display for PosetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetKind::Pi { n, k } => write!(f, "Pi({n},{k})"),
            PosetKind::Gamma { m, n } => write!(f, "Gamma({m},{n})"),
        }
    }
}

/// A finite graded poset given by its cover relations. Handles are dense
/// indices in enumeration order.
#[derive(Clone, Debug)]
pub struct GradedPoset {
    kind: PosetKind,
    payloads: Vec<Payload>,
    ranks: Vec<usize>,
    index: HashMap<Payload, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl GradedPoset {
    fn from_payloads(
        kind: PosetKind,
        payloads: Vec<Payload>,
        ranks: Vec<usize>,
        successors: impl Fn(&Payload) -> Vec<Payload>,
    ) -> Self {
        let index: HashMap<Payload, usize> =
            payloads.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut up = vec![Vec::new(); payloads.len()];
        let mut down = vec![Vec::new(); payloads.len()];
        for (x, p) in payloads.iter().enumerate() {
            for s in successors(p) {
                if let Some(&y) = index.get(&s) {
                    up[x].push(y);
                    down[y].push(x);
                }
            }
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        GradedPoset { kind, payloads, ranks, index, up, down }
    }

    pub fn kind(&self) -> PosetKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.payloads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.payloads.is_empty()
    }

    pub fn payload(&self, h: usize) -> &Payload {
        &self.payloads[h]
    }

    pub fn payloads(&self) -> &[Payload] {
        &self.payloads
    }

    pub fn rank(&self, h: usize) -> usize {
        self.ranks[h]
    }

    pub fn handle(&self, p: &Payload) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Elements covering `h`.
    pub fn upper_covers(&self, h: usize) -> &[usize] {
        &self.up[h]
    }

    /// Elements covered by `h`.
    pub fn lower_covers(&self, h: usize) -> &[usize] {
        &self.down[h]
    }

    pub fn covers(&self, lower: usize, upper: usize) -> bool {
        self.up[lower].binary_search(&upper).is_ok()
    }

    /// All `(lower, upper)` cover pairs.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
            .collect()
    }

    pub fn max_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    /// Handles of each rank, in handle order.
    pub fn rank_layers(&self) -> Vec<Vec<usize>> {
        let mut layers = vec![Vec::new(); self.max_rank() + 1];
        for (h, &r) in self.ranks.iter().enumerate() {
            layers[r].push(h);
        }
        layers
    }

    /// `sum_x q^rank(x)`.
    pub fn rank_genfn<C: Ring>(&self) -> Poly<C> {
        let mut p = Poly::zero();
        for &r in &self.ranks {
            p.add_term(r as u32, 0, C::one());
        }
        p
    }

    /// Every cover raises rank by exactly one.
    pub fn is_graded(&self) -> bool {
        self.cover_pairs()
            .iter()
            .all(|&(x, y)| self.ranks[y] == self.ranks[x] + 1)
    }

    /// Handles in the closed interval `[bottom, top]`, sorted.
    pub fn interval(&self, bottom: usize, top: usize) -> Vec<usize> {
        let above = self.reach(bottom, &self.up, |r| r <= self.ranks[top]);
        let below = self.reach(top, &self.down, |r| r >= self.ranks[bottom]);
        let mut out: Vec<usize> = above.intersection(&below).copied().collect();
        out.sort_unstable();
        out
    }

    fn reach(&self, start: usize, adj: &[Vec<usize>], keep: impl Fn(usize) -> bool) -> HashSet<usize> {
        let mut seen = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if keep(self.ranks[y]) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }
}

fn element_ceiling() -> usize {
    std::env::var("QTSTIRLING_MAX_ELEMENTS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_ELEMENTS)
}

fn check_size(count: i128, limit: usize) -> Result<()> {
    if count > limit as i128 {
        return Err(Error::BoundExceeded {
            what: "poset size",
            requested: usize::try_from(count).unwrap_or(usize::MAX),
            limit,
        });
    }
    Ok(())
}

/// `Π(n, k)` with the element ceiling taken from `QTSTIRLING_MAX_ELEMENTS`
/// (default [`DEFAULT_MAX_ELEMENTS`]).
pub fn build_pi(n: usize, k: usize) -> Result<GradedPoset> {
    build_pi_with(n, k, element_ceiling())
}

pub fn build_pi_with(n: usize, k: usize, max_elements: usize) -> Result<GradedPoset> {
    if n > DEFAULT_MAX_N {
        return Err(Error::BoundExceeded { what: "word length", requested: n, limit: DEFAULT_MAX_N });
    }
    check_size(CountTable::<i128>::build(CountKind::ClassicalSecond, n).get(n, k), max_elements)?;
    let words = enumerate_rg_with(n, k, DEFAULT_MAX_N, false)?;
    let ranks = words.iter().map(|w| w.stat_a() as usize).collect();
    let payloads = words.into_iter().map(Payload::Word).collect();
    Ok(GradedPoset::from_payloads(PosetKind::Pi { n, k }, payloads, ranks, |p| {
        let w = p.as_word().expect("word payload");
        (0..w.len())
            .filter_map(|i| {
                let mut letters = w.letters().to_vec();
                letters[i] += 1;
                RGWord::new(letters).ok().map(Payload::Word)
            })
            .collect()
    }))
}

/// `Γ(m, n)` with the same ceiling as [`build_pi`].
pub fn build_gamma(m: usize, n: usize) -> Result<GradedPoset> {
    build_gamma_with(m, n, element_ceiling())
}

pub fn build_gamma_with(m: usize, n: usize, max_elements: usize) -> Result<GradedPoset> {
    if m > DEFAULT_MAX_N {
        return Err(Error::BoundExceeded { what: "board length", requested: m, limit: DEFAULT_MAX_N });
    }
    if n < m {
        check_size(
            CountTable::<i128>::build(CountKind::ClassicalFirst, m).get(m, m - n),
            max_elements,
        )?;
    }
    let placements = enumerate_rooks_with(m, n, DEFAULT_MAX_N, false)?;
    let ranks = placements.iter().map(RookPlacement::below).collect();
    let payloads = placements.into_iter().map(Payload::Rooks).collect();
    Ok(GradedPoset::from_payloads(PosetKind::Gamma { m, n }, payloads, ranks, |p| {
        let t = p.as_rooks().expect("placement payload");
        let mut out = Vec::new();
        for (i, j) in t.rooks() {
            if j > 1 && t.rook_in_column(j - 1).is_none() {
                out.push(Payload::Rooks(t.with_row(j, 0).with_row(j - 1, i)));
            }
            if i > 1 {
                out.push(Payload::Rooks(t.with_row(j, i - 1)));
            }
        }
        out
    }))
}

/// A set of disjoint cover pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
    mate: Vec<Option<usize>>,
}

impl Matching {
    /// Validates that every pair is a cover and no handle is used twice.
    pub fn from_pairs(poset: &GradedPoset, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut mate = vec![None; poset.len()];
        for &(lo, hi) in &pairs {
            if lo >= poset.len() || hi >= poset.len() || !poset.covers(lo, hi) {
                return Err(Error::InvalidMatching(format!(
                    "({lo}, {hi}) is not a cover pair"
                )));
            }
            for h in [lo, hi] {
                if mate[h].is_some() {
                    return Err(Error::InvalidMatching(format!(
                        "{} is matched twice",
                        poset.payload(h)
                    )));
                }
            }
            mate[lo] = Some(hi);
            mate[hi] = Some(lo);
        }
        let mut pairs = pairs;
        pairs.sort_unstable();
        Ok(Matching { pairs, mate })
    }

    /// `(lower, upper)` pairs sorted by lower handle.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn mate(&self, h: usize) -> Option<usize> {
        self.mate[h]
    }

    pub fn is_matched(&self, h: usize) -> bool {
        self.mate[h].is_some()
    }

    /// Unmatched (critical) handles, ascending.
    pub fn unmatched(&self) -> Vec<usize> {
        (0..self.mate.len()).filter(|&h| self.mate[h].is_none()).collect()
    }
}

fn matching_from_partner(
    poset: &GradedPoset,
    partner: impl Fn(&Payload) -> Option<Payload>,
) -> Result<Matching> {
    let mut pairs = Vec::new();
    for h in 0..poset.len() {
        let Some(p) = partner(poset.payload(h)) else { continue };
        let g = poset.handle(&p).ok_or_else(|| {
            Error::InvalidMatching(format!("partner {p} of {} is not in the poset", poset.payload(h)))
        })?;
        let back = partner(&p);
        if back.as_ref() != Some(poset.payload(h)) {
            return Err(Error::InvalidMatching(format!(
                "partner rule is not symmetric at {}",
                poset.payload(h)
            )));
        }
        if poset.rank(h) < poset.rank(g) {
            pairs.push((h, g));
        }
    }
    Matching::from_pairs(poset, pairs)
}

/// Partner of `w` in the matching on `Π(n, k)`, if any.
pub fn pi_partner(w: &RGWord) -> Option<RGWord> {
    let l = w.letters();
    let i = (1..l.len()).find(|&i| l[i - 1] > l[i] || (l[i - 1] == l[i] && l[i] % 2 == 0))?;
    Some(if l[i] % 2 == 0 {
        w.with_letter(i, l[i] - 1)
    } else {
        w.with_letter(i, l[i] + 1)
    })
}

/// Partner of `t` in the matching on `Γ(m, n)`, if any.
pub fn gamma_partner(t: &RookPlacement) -> Option<RookPlacement> {
    let (i, j) = t
        .rooks()
        .into_iter()
        .find(|&(i, j)| !(i == 1 && t.is_shaded(i, j)))?;
    Some(if t.is_shaded(i, j) {
        t.with_row(j, i - 1)
    } else {
        t.with_row(j, i + 1)
    })
}

pub fn match_pi(poset: &GradedPoset) -> Result<Matching> {
    matching_from_partner(poset, |p| {
        pi_partner(p.as_word().expect("word payload")).map(Payload::Word)
    })
}

pub fn match_gamma(poset: &GradedPoset) -> Result<Matching> {
    matching_from_partner(poset, |p| {
        gamma_partner(p.as_rooks().expect("placement payload")).map(Payload::Rooks)
    })
}

/// Matching for whichever Stirling poset this is.
pub fn match_poset(poset: &GradedPoset) -> Result<Matching> {
    match poset.kind() {
        PosetKind::Pi { .. } => match_pi(poset),
        PosetKind::Gamma { .. } => match_gamma(poset),
    }
}

/// Outcome of [`check_acyclic`]; `cycle` lists handles along a directed cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityResult {
    pub acyclic: bool,
    pub cycle: Option<Vec<usize>>,
}

/// Looks for a directed cycle in the Hasse diagram with matched edges
/// pointing up and all other covers pointing down.
pub fn check_acyclic(poset: &GradedPoset, matching: &Matching) -> AcyclicityResult {
    let n = poset.len();
    let successors = |x: usize| -> Vec<usize> {
        let mut out: Vec<usize> = poset
            .lower_covers(x)
            .iter()
            .copied()
            .filter(|&y| matching.mate(x) != Some(y))
            .collect();
        if let Some(y) = matching.mate(x) {
            if poset.covers(x, y) {
                out.push(y);
            }
        }
        out
    };
    // 0 white, 1 grey, 2 black
    let mut color = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if color[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(root, successors(root), 0)];
        color[root] = 1;
        while let Some((x, succ, pos)) = stack.last_mut() {
            if *pos == succ.len() {
                color[*x] = 2;
                stack.pop();
                continue;
            }
            let y = succ[*pos];
            *pos += 1;
            let x = *x;
            match color[y] {
                0 => {
                    color[y] = 1;
                    parent[y] = x;
                    stack.push((y, successors(y), 0));
                }
                1 => {
                    let mut cycle = vec![x];
                    let mut z = x;
                    while z != y {
                        z = parent[z];
                        cycle.push(z);
                    }
                    cycle.reverse();
                    return AcyclicityResult { acyclic: false, cycle: Some(cycle) };
                }
                _ => {}
            }
        }
    }
    AcyclicityResult { acyclic: true, cycle: None }
}

/// `sum q^rank` over the unmatched elements.
pub fn unmatched_genfn<C: Ring>(poset: &GradedPoset, matching: &Matching) -> Poly<C> {
    let mut p = Poly::zero();
    for h in matching.unmatched() {
        p.add_term(poset.rank(h) as u32, 0, C::one());
    }
    p
}

/// Closed form for the unmatched elements of `Π(n, k)`:
/// `[n - 1 - floor(k/2), floor((k-1)/2)]` in `q^2`.
pub fn pi_unmatched_closed_form<C: Ring>(n: usize, k: usize) -> Poly<C> {
    if k == 0 || k > n {
        return Poly::zero();
    }
    gauss_binomial((n - 1 - k / 2) as u32, ((k - 1) / 2) as u32, true)
}

/// Closed form for the unmatched elements of `Γ(m, n)`:
/// `q^{n(n-1)} [floor(m/2), n]` in `q^2`.
pub fn gamma_unmatched_closed_form<C: Ring>(m: usize, n: usize) -> Poly<C> {
    gauss_binomial::<C>((m / 2) as u32, n as u32, true).shift((n * n.saturating_sub(1)) as u32, 0)
}

/// Number of unmatched words summed over every `Π(n, k)`, `1 <= k <= n`.
pub fn fibonacci_unmatched_total(n: usize) -> Result<usize> {
    let mut total = 0;
    for k in 1..=n {
        let poset = build_pi(n, k)?;
        total += match_pi(&poset)?.unmatched().len();
    }
    Ok(total)
}

/// `F_n` with `F_0 = F_1 = 1`.
pub fn fibonacci(n: usize) -> u128 {
    let (mut a, mut b) = (1u128, 1u128);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

/// A Boolean interval `[base, top]` of dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanInterval {
    pub base: usize,
    pub top: usize,
    pub dim: usize,
    /// Every element of the interval, ascending.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanDecomposition {
    pub intervals: Vec<BooleanInterval>,
}

impl BooleanDecomposition {
    /// `sum over bases of q^rank(base) t^dim`.
    pub fn weight<C: Ring>(&self, poset: &GradedPoset) -> Poly<C> {
        let mut p = Poly::zero();
        for iv in &self.intervals {
            p.add_term(poset.rank(iv.base) as u32, iv.dim as u32, C::one());
        }
        p
    }

    /// Handle to interval index.
    pub fn owner(&self, poset_len: usize) -> Vec<usize> {
        let mut owner = vec![usize::MAX; poset_len];
        for (idx, iv) in self.intervals.iter().enumerate() {
            for &h in &iv.members {
                owner[h] = idx;
            }
        }
        owner
    }
}

/// Builds the Boolean interval generated from `base` by raising any subset of
/// `moves`, verifying its structure against the poset.
fn boolean_interval<T>(
    poset: &GradedPoset,
    base: usize,
    moves: &[T],
    apply: impl Fn(&Payload, &[&T]) -> Payload,
    project: impl Fn(&Payload) -> Payload,
) -> Result<BooleanInterval> {
    let dim = moves.len();
    let mut by_mask = Vec::with_capacity(1 << dim);
    for mask in 0..(1usize << dim) {
        let chosen: Vec<&T> = (0..dim).filter(|b| mask >> b & 1 == 1).map(|b| &moves[b]).collect();
        let p = apply(poset.payload(base), &chosen);
        let h = poset.handle(&p).ok_or_else(|| {
            Error::InvalidDecomposition(format!("{p} is not in {}", poset.kind()))
        })?;
        if poset.rank(h) != poset.rank(base) + chosen.len() {
            return Err(Error::InvalidDecomposition(format!("{p} has the wrong rank")));
        }
        if project(&p) != *poset.payload(base) {
            return Err(Error::InvalidDecomposition(format!(
                "{p} does not project to {}",
                poset.payload(base)
            )));
        }
        by_mask.push(h);
    }
    for mask in 0..(1usize << dim) {
        for b in 0..dim {
            if mask >> b & 1 == 0 && !poset.covers(by_mask[mask], by_mask[mask | 1 << b]) {
                return Err(Error::InvalidDecomposition(format!(
                    "{} is not covered by {}",
                    poset.payload(by_mask[mask]),
                    poset.payload(by_mask[mask | 1 << b])
                )));
            }
        }
    }
    let top = by_mask[(1 << dim) - 1];
    let mut members = by_mask.clone();
    members.sort_unstable();
    members.dedup();
    if members.len() != 1 << dim || poset.interval(base, top) != members {
        return Err(Error::InvalidDecomposition(format!(
            "[{}, {}] is not a Boolean algebra of rank {dim}",
            poset.payload(base),
            poset.payload(top)
        )));
    }
    Ok(BooleanInterval { base, top, dim, members })
}

fn finish_decomposition(poset: &GradedPoset, intervals: Vec<BooleanInterval>) -> Result<BooleanDecomposition> {
    let mut seen = vec![false; poset.len()];
    for iv in &intervals {
        for &h in &iv.members {
            if std::mem::replace(&mut seen[h], true) {
                return Err(Error::InvalidDecomposition(format!(
                    "{} lies in two intervals",
                    poset.payload(h)
                )));
            }
        }
    }
    if let Some(h) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidDecomposition(format!(
            "{} is not covered",
            poset.payload(h)
        )));
    }
    Ok(BooleanDecomposition { intervals })
}

/// Positions `i` (0-based) with an earlier letter larger than `w_i`.
pub fn inversion_positions(w: &RGWord) -> Vec<usize> {
    let maxima = w.prefix_maxima();
    (1..w.len()).filter(|&i| maxima[i - 1] > w.letters()[i]).collect()
}

/// The allowable word whose interval contains `w`: every repeated even
/// letter is lowered by one, except the first occurrence of each even value.
pub fn project_pi(w: &RGWord) -> RGWord {
    let mut seen = HashSet::new();
    let letters = w
        .letters()
        .iter()
        .map(|&x| if x % 2 == 0 && !seen.insert(x) { x - 1 } else { x })
        .collect();
    RGWord::from_valid(letters)
}

/// Every unshaded rook moved down one square.
pub fn project_gamma(t: &RookPlacement) -> RookPlacement {
    t.rooks()
        .into_iter()
        .filter(|&(i, j)| !t.is_shaded(i, j))
        .fold(t.clone(), |acc, (i, j)| acc.with_row(j, i + 1))
}

/// Intervals `[w, α(w)]` over the allowable words, `α` raising every
/// inversion position.
pub fn decompose_pi(poset: &GradedPoset) -> Result<BooleanDecomposition> {
    let mut intervals = Vec::new();
    for h in 0..poset.len() {
        let w = poset.payload(h).as_word().expect("word payload");
        if !w.is_allowable() {
            continue;
        }
        let inv = inversion_positions(w);
        intervals.push(boolean_interval(
            poset,
            h,
            &inv,
            |p, chosen| {
                let w = p.as_word().expect("word payload");
                let mut letters = w.letters().to_vec();
                for &&i in chosen {
                    letters[i] += 1;
                }
                Payload::Word(RGWord::from_valid(letters))
            },
            |p| Payload::Word(project_pi(p.as_word().expect("word payload"))),
        )?);
    }
    finish_decomposition(poset, intervals)
}

/// Intervals `[T, α(T)]` over the allowable placements, `α` raising every
/// rook outside the first row.
pub fn decompose_gamma(poset: &GradedPoset) -> Result<BooleanDecomposition> {
    let mut intervals = Vec::new();
    for h in 0..poset.len() {
        let t = poset.payload(h).as_rooks().expect("placement payload");
        if !t.is_allowable() {
            continue;
        }
        let lifts: Vec<(usize, usize)> = t.rooks().into_iter().filter(|&(i, _)| i > 1).collect();
        intervals.push(boolean_interval(
            poset,
            h,
            &lifts,
            |p, chosen| {
                let t = p.as_rooks().expect("placement payload");
                let moved = chosen.iter().fold(t.clone(), |acc, &&(i, j)| acc.with_row(j, i - 1));
                Payload::Rooks(moved)
            },
            |p| Payload::Rooks(project_gamma(p.as_rooks().expect("placement payload"))),
        )?);
    }
    finish_decomposition(poset, intervals)
}

pub fn decompose_poset(poset: &GradedPoset) -> Result<BooleanDecomposition> {
    match poset.kind() {
        PosetKind::Pi { .. } => decompose_pi(poset),
        PosetKind::Gamma { .. } => decompose_gamma(poset),
    }
}

/// Graphviz rendering. Covers are drawn from the upper to the lower element;
/// matched covers are bold red and point upward. With a decomposition each
/// interval becomes a cluster.
pub fn to_dot(
    poset: &GradedPoset,
    matching: Option<&Matching>,
    decomposition: Option<&BooleanDecomposition>,
) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", poset.kind()).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    let node = |h: usize| format!("  n{h} [label=\"{}\"];", poset.payload(h));
    match decomposition {
        Some(d) => {
            for (idx, iv) in d.intervals.iter().enumerate() {
                writeln!(out, "  subgraph cluster_{idx} {{").unwrap();
                writeln!(out, "    label=\"B{}\";", iv.dim).unwrap();
                for &h in &iv.members {
                    writeln!(out, "  {}", node(h)).unwrap();
                }
                writeln!(out, "  }}").unwrap();
            }
        }
        None => {
            for h in 0..poset.len() {
                writeln!(out, "{}", node(h)).unwrap();
            }
        }
    }
    for layer in poset.rank_layers() {
        if layer.len() > 1 {
            let ids: Vec<String> = layer.iter().map(|h| format!("n{h}")).collect();
            writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
        }
    }
    for (lo, hi) in poset.cover_pairs() {
        if matching.is_some_and(|m| m.mate(lo) == Some(hi)) {
            writeln!(out, "  n{lo} -> n{hi} [color=red, penwidth=2.5];").unwrap();
        } else {
            writeln!(out, "  n{hi} -> n{lo} [dir=none];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct JsonElement {
    handle: usize,
    label: String,
    rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    mate: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    interval: Option<usize>,
}

#[derive(Serialize)]
struct JsonInterval {
    base: usize,
    top: usize,
    dim: usize,
}

#[derive(Serialize)]
struct JsonPoset {
    poset: String,
    elements: Vec<JsonElement>,
    covers: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matching: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    acyclic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    intervals: Option<Vec<JsonInterval>>,
}

/// JSON rendering with the same optional layers as [`to_dot`].
pub fn to_json(
    poset: &GradedPoset,
    matching: Option<&Matching>,
    decomposition: Option<&BooleanDecomposition>,
) -> String {
    let owner = decomposition.map(|d| d.owner(poset.len()));
    let doc = JsonPoset {
        poset: poset.kind().to_string(),
        elements: (0..poset.len())
            .map(|h| JsonElement {
                handle: h,
                label: poset.payload(h).to_string(),
                rank: poset.rank(h),
                mate: matching.and_then(|m| m.mate(h)),
                interval: owner.as_ref().map(|o| o[h]),
            })
            .collect(),
        covers: poset.cover_pairs(),
        matching: matching.map(|m| m.pairs().to_vec()),
        acyclic: matching.map(|m| check_acyclic(poset, m).acyclic),
        intervals: decomposition.map(|d| {
            d.intervals
                .iter()
                .map(|iv| JsonInterval { base: iv.base, top: iv.top, dim: iv.dim })
                .collect()
        }),
    };
    serde_json::to_string_pretty(&doc).expect("poset serializes")
}
