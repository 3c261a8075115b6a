//! Verification suites: each check carries a name, a short description of
//! the identity or property it confirms, and a pass/fail outcome.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::homology::{build_complex, homology};
use crate::orthogonal::verify_orthogonality;
use crate::posets::{
    build_gamma, build_pi, check_acyclic, decompose_gamma, decompose_pi, fibonacci,
    gamma_unmatched_closed_form, match_gamma, match_pi, pi_unmatched_closed_form, unmatched_genfn,
    BooleanDecomposition, GradedPoset, Matching,
};
use crate::qtpoly::{q_int, qt_int, Poly};
use crate::rgwords::{enumerate_allowable, enumerate_rg};
use crate::rookboards::{enumerate_allowable_rooks, enumerate_rooks};
use crate::stirlingnum::{
    verify_generating_identities, CountKind, CountTable, StirlingTable, TableKind,
};

type P = Poly<BigInt>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub reference: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn pass(name: impl Into<String>, reference: &str) -> Self {
        Check::pass_with(name, reference, String::new())
    }

    pub fn pass_with(name: impl Into<String>, reference: &str, detail: String) -> Self {
        Check { suite: String::new(), name: name.into(), reference: reference.into(), passed: true, detail }
    }

    pub fn fail(name: impl Into<String>, reference: &str, detail: String) -> Self {
        Check { suite: String::new(), name: name.into(), reference: reference.into(), passed: false, detail }
    }

    pub fn from_bool(name: impl Into<String>, reference: &str, ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Check::pass(name, reference)
        } else {
            Check::fail(name, reference, detail())
        }
    }

    pub fn expect_eq<T: PartialEq + fmt::Display>(name: impl Into<String>, reference: &str, got: &T, want: &T) -> Self {
        Check::from_bool(name, reference, got == want, || format!("got {got}, expected {want}"))
    }
}

/// Ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    suite: String,
    checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn suite(&self) -> &str {
        &self.suite
    }

    pub fn push(&mut self, mut check: Check) {
        if check.suite.is_empty() {
            check.suite = self.suite.clone();
        }
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// One line per check, then a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {}: {} ({})",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite,
                c.name,
                c.reference
            ));
            if !c.detail.is_empty() {
                out.push_str(&format!(" -- {}", c.detail));
            }
            out.push('\n');
        }
        let failed = self.failures().len();
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            self.suite,
            self.checks.len(),
            failed
        ));
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            suite: &'a str,
            passed: bool,
            total: usize,
            failed: usize,
            checks: &'a [Check],
        }
        serde_json::to_string_pretty(&Doc {
            suite: &self.suite,
            passed: self.all_passed(),
            total: self.checks.len(),
            failed: self.failures().len(),
            checks: &self.checks,
        })
        .expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Statistics,
    Posets,
    Homology,
    Orthogonality,
    Identities,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Statistics => "statistics",
            Suite::Posets => "posets",
            Suite::Homology => "homology",
            Suite::Orthogonality => "orthogonality",
            Suite::Identities => "identities",
            Suite::All => "all",
        }
    }

    pub fn default_n_max(self) -> usize {
        match self {
            Suite::Statistics => 9,
            Suite::Orthogonality | Suite::Identities => 8,
            Suite::Posets | Suite::Homology | Suite::All => 7,
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        Ok(match s {
            "statistics" => Suite::Statistics,
            "posets" => Suite::Posets,
            "homology" => Suite::Homology,
            "orthogonality" => Suite::Orthogonality,
            "identities" => Suite::Identities,
            "all" => Suite::All,
            other => return Err(crate::Error::Parse(format!("unknown suite {other}"))),
        })
    }
}

pub fn run_suite(suite: Suite, n_max: usize) -> Report {
    match suite {
        Suite::Statistics => verify_statistics(n_max),
        Suite::Posets => verify_posets(n_max),
        Suite::Homology => verify_homology(n_max),
        Suite::Orthogonality => verify_orthogonality(n_max),
        Suite::Identities => verify_identities(n_max),
        Suite::All => {
            let mut report = Report::new("all");
            for s in [
                Suite::Statistics,
                Suite::Identities,
                Suite::Posets,
                Suite::Homology,
                Suite::Orthogonality,
            ] {
                report.extend(run_suite(s, n_max));
            }
            report
        }
    }
}

fn cells(n_max: usize) -> Vec<(usize, usize)> {
    (1..=n_max).flat_map(|n| (1..=n).map(move |k| (n, k))).collect()
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Enumeration sums against the recurrences for `1 <= k <= n <= n_max`, the
/// allowable counts, the `t -> 1+q` specializations and the `q = -1` values.
pub fn verify_statistics(n_max: usize) -> Report {
    let s2q = StirlingTable::<BigInt>::build(TableKind::SecondQ, n_max);
    let c1q = StirlingTable::<BigInt>::build(TableKind::FirstQ, n_max);
    let s2qt = StirlingTable::<BigInt>::build(TableKind::SecondQt, n_max);
    let s1qt = StirlingTable::<BigInt>::build(TableKind::FirstQtSigned, n_max);
    let a = CountTable::<BigInt>::build(CountKind::AllowableSecond, n_max);
    let d = CountTable::<BigInt>::build(CountKind::AllowableFirst, n_max);

    let per_cell: Vec<Vec<Check>> = cells(n_max)
        .par_iter()
        .map(|&(n, k)| {
            let mut out = Vec::new();
            let words = enumerate_rg(n, k).expect("within bounds");
            let allowable = enumerate_allowable(n, k).expect("within bounds");
            let placements = enumerate_rooks(n, n - k).expect("within bounds");
            let allowable_rooks = enumerate_allowable_rooks(n, n - k).expect("within bounds");

            let wt_sum: P = words.iter().map(|w| w.wt()).sum();
            out.push(Check::expect_eq(
                format!("sum wt over R({n},{k}) = S_q[{n},{k}]"),
                "RG-word weight generating function",
                &wt_sum,
                &s2q.get(n, k),
            ));
            let wtp_sum: P = allowable.iter().map(|w| w.wt_prime().expect("allowable")).sum();
            out.push(Check::expect_eq(
                format!("sum wt' over A({n},{k}) = S_qt[{n},{k}]"),
                "allowable-word (q,t) generating function",
                &wtp_sum,
                &s2qt.get(n, k),
            ));
            out.push(Check::expect_eq(
                format!("S_qt[{n},{k}] at t=1+q = S_q[{n},{k}]"),
                "(q,t) specialization, second kind",
                &s2qt.get(n, k).subst_t_with_one_plus_q(),
                &s2q.get(n, k),
            ));
            let rook_sum: P = placements.iter().map(|t| t.q_weight()).sum();
            out.push(Check::expect_eq(
                format!("sum q^below over R_{{{n},{}}} = c_q[{n},{k}]", n - k),
                "rook placement generating function",
                &rook_sum,
                &c1q.get(n, k),
            ));
            let signed: P = allowable_rooks.iter().map(|t| t.wt_rook().expect("allowable")).sum();
            let signed = if (n - k) % 2 == 1 { -signed } else { signed };
            out.push(Check::expect_eq(
                format!("signed sum wt over AR_{{{n},{}}} = s_qt[{n},{k}]", n - k),
                "allowable rook (q,t) generating function",
                &signed,
                &s1qt.get(n, k),
            ));
            out.push(Check::expect_eq(
                format!("s_qt[{n},{k}] at t=1+q = (-1)^(n-k) c_q[{n},{k}]"),
                "(q,t) specialization, first kind",
                &s1qt.get(n, k).subst_t_with_one_plus_q(),
                &if (n - k) % 2 == 1 { -c1q.get(n, k) } else { c1q.get(n, k) },
            ));
            out.push(Check::expect_eq(
                format!("|A({n},{k})| = a({n},{k})"),
                "allowable count recurrence, second kind",
                &BigInt::from(allowable.len()),
                &a.get(n, k),
            ));
            out.push(Check::expect_eq(
                format!("|AR_{{{n},{}}}| = d({n},{k})", n - k),
                "allowable count recurrence, first kind",
                &BigInt::from(allowable_rooks.len()),
                &d.get(n, k),
            ));
            let increasing = allowable.iter().filter(|w| w.is_weakly_increasing()).count();
            out.push(Check::expect_eq(
                format!("S_q[{n},{k}] at q=-1"),
                "q = -1 counts weakly increasing allowable words",
                &s2q.get(n, k).eval(-1, 0),
                &BigInt::from(increasing),
            ));
            out.push(Check::expect_eq(
                format!("c_q[{n},{k}] at q=-1"),
                "q = -1 gives binomial(floor(n/2), n-k)",
                &c1q.get(n, k).eval(-1, 0),
                &BigInt::from(binomial(n / 2, n - k)),
            ));
            out
        })
        .collect();

    let mut report = Report::new("statistics");
    for c in per_cell.into_iter().flatten() {
        report.push(c);
    }
    for n in 0..=n_max {
        report.push(Check::expect_eq(
            format!("r({n}) = d({}, 1)", n + 2),
            "row sums of d are a shifted first column",
            &d.row_sum(n),
            &CountTable::<BigInt>::build(CountKind::AllowableFirst, n + 2).get(n + 2, 1),
        ));
    }
    report
}

/// `[k]_{q,t}` against `[k]_q`, and the falling-factorial identities.
pub fn verify_identities(n_max: usize) -> Report {
    let mut report = Report::new("identities");
    for k in 0..=30 {
        report.push(Check::expect_eq(
            format!("[{k}]_qt at t=1+q = [{k}]_q"),
            "(q,t)-integers specialize to q-integers",
            &qt_int::<BigInt>(k).subst_t_with_one_plus_q(),
            &q_int::<BigInt>(k),
        ));
    }
    report.extend(verify_generating_identities::<BigInt>(n_max));
    report
}

struct Instance {
    label: String,
    poset: GradedPoset,
    matching: Matching,
    decomposition: crate::Result<BooleanDecomposition>,
}

fn pi_instances(n_max: usize) -> Vec<crate::Result<Instance>> {
    cells(n_max)
        .par_iter()
        .map(|&(n, k)| {
            let poset = build_pi(n, k)?;
            let matching = match_pi(&poset)?;
            let decomposition = decompose_pi(&poset);
            Ok(Instance { label: format!("Pi({n},{k})"), poset, matching, decomposition })
        })
        .collect()
}

fn gamma_cells(n_max: usize) -> Vec<(usize, usize)> {
    (1..=n_max).flat_map(|m| (0..m).map(move |n| (m, n))).collect()
}

fn gamma_instances(n_max: usize) -> Vec<crate::Result<Instance>> {
    gamma_cells(n_max)
        .par_iter()
        .map(|&(m, n)| {
            let poset = build_gamma(m, n)?;
            let matching = match_gamma(&poset)?;
            let decomposition = decompose_gamma(&poset);
            Ok(Instance { label: format!("Gamma({m},{n})"), poset, matching, decomposition })
        })
        .collect()
}

fn instance_checks(inst: &Instance, expected_rank: &P, expected_unmatched: &P, top_rank: usize, qt_weight: &P) -> Vec<Check> {
    let Instance { label, poset, matching, decomposition } = inst;
    let mut out = Vec::new();
    out.push(Check::from_bool(format!("{label} graded"), "covers raise rank by one", poset.is_graded(), String::new));
    out.push(Check::expect_eq(
        format!("{label} rank generating function"),
        "rank generating function is the q-Stirling number",
        &poset.rank_genfn::<BigInt>(),
        expected_rank,
    ));
    out.push(Check::expect_eq(
        format!("{label} top rank"),
        "rank of the poset",
        &poset.max_rank(),
        &top_rank,
    ));
    let acyc = check_acyclic(poset, matching);
    out.push(Check::from_bool(format!("{label} matching acyclic"), "acyclic Morse matching", acyc.acyclic, || {
        let cycle: Vec<String> = acyc.cycle.clone().unwrap_or_default().iter().map(|&h| poset.payload(h).to_string()).collect();
        format!("cycle {}", cycle.join(" -> "))
    }));
    let unmatched = unmatched_genfn::<BigInt>(poset, matching);
    out.push(Check::expect_eq(
        format!("{label} unmatched generating function"),
        "unmatched elements counted by a q^2-binomial",
        &unmatched,
        expected_unmatched,
    ));
    out.push(Check::from_bool(
        format!("{label} unmatched in even ranks"),
        "critical cells share rank parity",
        matching.unmatched().iter().all(|&h| poset.rank(h) % 2 == 0),
        String::new,
    ));
    match decomposition {
        Err(e) => out.push(Check::fail(format!("{label} Boolean decomposition"), "Boolean interval decomposition", e.to_string())),
        Ok(d) => {
            out.push(Check::pass(format!("{label} Boolean decomposition"), "Boolean interval decomposition"));
            out.push(Check::expect_eq(
                format!("{label} decomposition (q,t) weight"),
                "bases weighted by q^rank t^dim give the (q,t)-Stirling number",
                &d.weight::<BigInt>(poset),
                qt_weight,
            ));
            out.push(Check::expect_eq(
                format!("{label} decomposition q weight"),
                "bases weighted by q^rank (1+q)^dim give the q-Stirling number",
                &d.weight::<BigInt>(poset).subst_t_with_one_plus_q(),
                expected_rank,
            ));
            let only_base_allowable = d.intervals.iter().all(|iv| {
                iv.members.iter().all(|&h| {
                    let allowable = match poset.payload(h) {
                        crate::posets::Payload::Word(w) => w.is_allowable(),
                        crate::posets::Payload::Rooks(t) => t.is_allowable(),
                    };
                    allowable == (h == iv.base)
                })
            });
            out.push(Check::from_bool(
                format!("{label} only bases allowable"),
                "each interval has exactly one allowable element",
                only_base_allowable,
                String::new,
            ));
            let consistent = d.intervals.iter().all(|iv| {
                if iv.dim == 0 {
                    !matching.is_matched(iv.base)
                } else {
                    iv.members.iter().all(|&h| matching.is_matched(h))
                }
            });
            out.push(Check::from_bool(
                format!("{label} matching refines decomposition"),
                "B_0 intervals are exactly the critical cells",
                consistent,
                String::new,
            ));
        }
    }
    out
}

/// Matchings, acyclicity, unmatched closed forms and Boolean decompositions
/// for every `Π(n, k)` and `Γ(m, n)` with `n, m <= n_max`.
pub fn verify_posets(n_max: usize) -> Report {
    let mut report = Report::new("posets");
    let s2q = StirlingTable::<BigInt>::build(TableKind::SecondQ, n_max);
    let c1q = StirlingTable::<BigInt>::build(TableKind::FirstQ, n_max);
    let s2qt = StirlingTable::<BigInt>::build(TableKind::SecondQt, n_max);
    let s1qt = StirlingTable::<BigInt>::build(TableKind::FirstQtSigned, n_max);

    let mut unmatched_per_n = vec![0usize; n_max + 1];
    for (inst, &(n, k)) in pi_instances(n_max).into_iter().zip(cells(n_max).iter()) {
        let inst = match inst {
            Ok(i) => i,
            Err(e) => {
                report.push(Check::fail(format!("Pi({n},{k})"), "build poset", e.to_string()));
                continue;
            }
        };
        unmatched_per_n[n] += inst.matching.unmatched().len();
        for c in instance_checks(&inst, &s2q.get(n, k), &pi_unmatched_closed_form(n, k), (n - k) * (k - 1), &s2qt.get(n, k)) {
            report.push(c);
        }
        let expected: Vec<usize> = (0..inst.poset.len())
            .filter(|&h| {
                let w = inst.poset.payload(h).as_word().unwrap();
                w.is_weakly_increasing() && w.is_allowable()
            })
            .collect();
        report.push(Check::from_bool(
            format!("Pi({n},{k}) unmatched words"),
            "critical words are weakly increasing with no repeated even letter",
            inst.matching.unmatched() == expected,
            String::new,
        ));
    }
    for (n, &total) in unmatched_per_n.iter().enumerate().skip(1) {
        report.push(Check::expect_eq(
            format!("sum_k |U({n},k)| = F_{n}"),
            "critical words counted by Fibonacci numbers",
            &(total as u128),
            &fibonacci(n),
        ));
    }

    for (inst, &(m, n)) in gamma_instances(n_max).into_iter().zip(gamma_cells(n_max).iter()) {
        let inst = match inst {
            Ok(i) => i,
            Err(e) => {
                report.push(Check::fail(format!("Gamma({m},{n})"), "build poset", e.to_string()));
                continue;
            }
        };
        let k = m - n;
        let signed = if n % 2 == 1 { -s1qt.get(m, k) } else { s1qt.get(m, k) };
        let top = (m - 1) * n - n * (n + 1) / 2;
        for c in instance_checks(&inst, &c1q.get(m, k), &gamma_unmatched_closed_form(m, n), top, &signed) {
            report.push(c);
        }
        let expected: Vec<usize> = (0..inst.poset.len())
            .filter(|&h| {
                let t = inst.poset.payload(h).as_rooks().unwrap();
                t.rooks().iter().all(|&(i, j)| i == 1 && t.is_shaded(i, j))
            })
            .collect();
        report.push(Check::from_bool(
            format!("Gamma({m},{n}) unmatched placements"),
            "critical placements use shaded first-row squares only",
            inst.matching.unmatched() == expected,
            String::new,
        ));
    }
    report
}

/// `∂∂ = 0`, Smith normal form homology against the closed forms and the
/// critical cells, torsion, parity, and the claimed bases.
pub fn verify_homology(n_max: usize) -> Report {
    let mut report = Report::new("homology");
    let mut jobs: Vec<(String, bool, usize, usize)> = cells(n_max)
        .into_iter()
        .map(|(n, k)| (format!("Pi({n},{k})"), true, n, k))
        .collect();
    jobs.extend(gamma_cells(n_max).into_iter().map(|(m, n)| (format!("Gamma({m},{n})"), false, m, n)));
    let results: Vec<Vec<Check>> = jobs
        .par_iter()
        .map(|(label, is_pi, a, b)| {
            let (poset, expected) = if *is_pi {
                (build_pi(*a, *b), pi_unmatched_closed_form::<BigInt>(*a, *b))
            } else {
                (build_gamma(*a, *b), gamma_unmatched_closed_form::<BigInt>(*a, *b))
            };
            let poset = match poset {
                Ok(p) => p,
                Err(e) => return vec![Check::fail(label.clone(), "build poset", e.to_string())],
            };
            homology_checks(label, &poset, &expected)
        })
        .collect();
    for c in results.into_iter().flatten() {
        report.push(c);
    }
    report
}

fn homology_checks(label: &str, poset: &GradedPoset, expected: &P) -> Vec<Check> {
    let complex = match build_complex::<BigInt>(poset) {
        Ok(c) => c,
        Err(e) => return vec![Check::fail(format!("{label} boundary squares to zero"), "boundary map", e.to_string())],
    };
    let mut out = vec![Check::pass(format!("{label} boundary squares to zero"), "boundary map")];
    let result = match homology(poset, &complex) {
        Ok(r) => r,
        Err(e) => return vec![Check::fail(format!("{label} homology"), "Smith normal form", e.to_string())],
    };
    let matching = match poset.kind() {
        crate::posets::PosetKind::Pi { .. } => match_pi(poset),
        crate::posets::PosetKind::Gamma { .. } => match_gamma(poset),
    };
    out.push(Check::expect_eq(
        format!("{label} homology ranks"),
        "Betti numbers given by a q^2-binomial",
        &result.poincare::<BigInt>(),
        expected,
    ));
    if let Ok(matching) = matching {
        out.push(Check::expect_eq(
            format!("{label} homology ranks = critical cells"),
            "Morse inequalities are equalities",
            &result.poincare::<BigInt>(),
            &unmatched_genfn::<BigInt>(poset, &matching),
        ));
    }
    out.push(Check::from_bool(format!("{label} torsion free"), "no invariant factors above one", result.torsion_free(), || {
        format!("{:?}", result.torsion)
    }));
    out.push(Check::from_bool(
        format!("{label} homology in even ranks"),
        "homology concentrated in even degrees",
        result.concentrated_in_even_ranks(),
        || format!("{:?}", result.dims),
    ));
    out.push(Check::from_bool(
        format!("{label} basis cycles"),
        "critical cells have zero boundary",
        result.basis_are_cycles,
        String::new,
    ));
    out.push(Check::from_bool(
        format!("{label} basis independent"),
        "critical cells independent modulo boundaries",
        result.basis_independent,
        String::new,
    ));
    out
}
