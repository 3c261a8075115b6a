//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qt_stirling::homology::{build_complex, homology};
use qt_stirling::orthogonal::verify_orthogonality;
use qt_stirling::posets::{build_pi, decompose_pi, match_pi, unmatched_genfn};
use qt_stirling::qtpoly::{q_int, qt_int};
use qt_stirling::rgwords::enumerate_allowable;
use qt_stirling::rookboards::{enumerate_allowable_rooks, RookPlacement};
use qt_stirling::stirlingnum::{
    falling_factorial_qt, verify_generating_identities, CountKind, CountTable, StirlingTable,
    TableKind, XPoly,
};
use qt_stirling::verify::{verify_homology, verify_posets, verify_statistics, Report};
use qt_stirling::{BiPoly, BigInt};

const EXPECTED_A: [&str; 11] = [
    "1|1|1",
    "0 1|1|1",
    "0 1 1|2|2",
    "0 1 2 1|4|5",
    "0 1 3 4 1|9|15",
    "0 1 4 11 6 1|23|52",
    "0 1 5 26 23 9 1|65|203",
    "0 1 6 57 72 50 12 1|199|877",
    "0 1 7 120 201 222 86 16 1|654|4140",
    "0 1 8 247 522 867 480 150 20 1|2296|21147",
    "0 1 9 502 1291 3123 2307 1080 230 25 1|8569|115975",
];

const EXPECTED_D: [&str; 11] = [
    "1|1|1",
    "0 1|1|1",
    "0 1 1|2|2",
    "0 1 2 1|4|6",
    "0 2 5 4 1|12|24",
    "0 4 12 13 6 1|36|120",
    "0 12 40 51 31 9 1|144|720",
    "0 36 132 193 144 58 12 1|576|5040",
    "0 144 564 904 769 376 106 16 1|2880|40320",
    "0 576 2400 4180 3980 2273 800 170 20 1|14400|362880",
    "0 2880 12576 23300 24080 15345 6273 1650 270 25 1|86400|3628800",
];

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, notes: Vec::new() }
    }

    fn expect(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(what.into());
        }
    }

    fn absorb(&mut self, report: &Report, keep: impl Fn(&str) -> bool) -> usize {
        let mut n = 0;
        for c in report.checks().iter().filter(|c| keep(&c.name)) {
            n += 1;
            self.expect(c.passed, format!("{}: {}", c.name, c.detail));
        }
        n
    }
}

fn p(coeffs: &[i64]) -> BiPoly {
    BiPoly::from_q_coeffs(coeffs)
}

fn one_plus_q() -> BiPoly {
    p(&[1, 1])
}

fn table_rows(kind: CountKind) -> Vec<String> {
    let table = CountTable::<BigInt>::build(kind, 10);
    table
        .to_csv()
        .lines()
        .skip(1)
        .map(|line| {
            let cells: Vec<&str> = line.split(',').skip(1).collect();
            let (tri, extra) = cells.split_at(11);
            let tri: Vec<&str> = tri.iter().copied().filter(|c| !c.is_empty()).collect();
            format!("{}|{}", tri.join(" "), extra.join("|"))
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let s = StirlingTable::<BigInt>::build(TableKind::SecondQ, 4);
    o.expect(s.get(4, 2) == p(&[3, 3, 1]), format!("S_q[4,2] = {}", s.get(4, 2)));
    for (kind, expected, name) in [
        (CountKind::AllowableSecond, EXPECTED_A, "a"),
        (CountKind::AllowableFirst, EXPECTED_D, "d"),
    ] {
        let rows = table_rows(kind);
        o.expect(rows.len() == 11, format!("table {name} has {} rows", rows.len()));
        for (n, (got, want)) in rows.iter().zip(expected).enumerate() {
            o.expect(got == want, format!("table {name} row {n}: {got} vs {want}"));
        }
    }
    let a = CountTable::<BigInt>::build(CountKind::AllowableSecond, 10);
    let d = CountTable::<BigInt>::build(CountKind::AllowableFirst, 10);
    o.expect(a.get(10, 5) == BigInt::from(3123), "a(10,5)");
    o.expect(d.get(10, 4) == BigInt::from(24080), "d(10,4)");
    o.expect(d.row_sum(10) == BigInt::from(86400), "r(10)");
    let cells: usize = (0..=10).map(|n| n + 1).sum();
    o.expect(cells == 66, "66 entries");
    o
}

fn criterion_2(report: &Report) -> Outcome {
    let mut o = Outcome::new();
    let n = o.absorb(report, |_| true);
    o.expect(n > 400, format!("only {n} checks ran"));
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let s53 = StirlingTable::<BigInt>::build(TableKind::SecondQ, 5).get(5, 3);
    o.expect(s53 == p(&[6, 8, 7, 3, 1]), format!("S_q[5,3] = {s53}"));

    let pi53 = build_pi(5, 3).unwrap();
    let m53 = match_pi(&pi53).unwrap();
    let unmatched: Vec<String> = m53.unmatched().iter().map(|&h| pi53.payload(h).to_string()).collect();
    o.expect(unmatched == ["11123", "11233", "12333"], format!("unmatched {unmatched:?}"));
    o.expect(unmatched_genfn::<BigInt>(&pi53, &m53) == p(&[1, 0, 1, 0, 1]), "unmatched gen fn of Pi(5,3)");

    let pi52 = build_pi(5, 2).unwrap();
    let weight52 = decompose_pi(&pi52).unwrap().weight::<BigInt>(&pi52).subst_t_with_one_plus_q();
    let t = one_plus_q();
    let want52 = BiPoly::one() + t.clone() + t.pow(2) + t.pow(3);
    o.expect(weight52 == want52, "decomposition weight of Pi(5,2)");

    let weight53 = decompose_pi(&pi53).unwrap().weight::<BigInt>(&pi53).subst_t_with_one_plus_q();
    let q2 = BiPoly::q_pow(2);
    let want53 = BiPoly::one()
        + BiPoly::from_int(2) * t.clone()
        + BiPoly::from_int(3) * t.pow(2)
        + q2.clone()
        + BiPoly::from_int(3) * (&q2 * &t)
        + BiPoly::q_pow(4);
    o.expect(weight53 == want53, "decomposition weight of Pi(5,3)");

    let c42 = StirlingTable::<BigInt>::build(TableKind::FirstQ, 4).get(4, 2);
    o.expect(c42 == p(&[3, 4, 3, 1]), format!("c_q[4,2] = {c42}"));
    let mut weights: Vec<String> = enumerate_allowable_rooks(4, 2)
        .unwrap()
        .iter()
        .map(|t| t.wt_rook::<BigInt>().unwrap().subst_t_with_one_plus_q().to_string())
        .collect();
    let mut want: Vec<String> = [q2.clone(), &q2 * &t, t.pow(2), t.clone(), t.clone()]
        .iter()
        .map(ToString::to_string)
        .collect();
    weights.sort();
    want.sort();
    o.expect(weights == want, format!("allowable placement weights {weights:?}"));

    let fig8 = RookPlacement::new(5, &[(2, 1), (1, 2), (1, 3)]).unwrap();
    o.expect(fig8.rook_word() == vec![3, 3, 2, 0], format!("rook word {:?}", fig8.rook_word()));
    o
}

fn criterion_4_5(posets: &Report, decompositions: bool) -> Outcome {
    let mut o = Outcome::new();
    let is_decomposition = |name: &str| name.contains("decomposition") || name.contains("only bases");
    let n = o.absorb(posets, |name| is_decomposition(name) == decompositions);
    o.expect(n > 100, format!("only {n} checks ran"));
    let has = |needle: &str| posets.checks().iter().any(|c| c.name.contains(needle));
    if decompositions {
        o.expect(has("Pi(7,4) Boolean decomposition"), "Pi(7,4) missing");
        o.expect(has("Gamma(7,3) Boolean decomposition"), "Gamma(7,3) missing");
    } else {
        o.expect(has("Pi(7,4) matching acyclic"), "Pi(7,4) missing");
        o.expect(has("Gamma(7,6) matching acyclic"), "Gamma(7,6) missing");
        o.expect(has("sum_k |U(7,k)| = F_7"), "Fibonacci check missing");
    }
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let report = verify_homology(7);
    let n = o.absorb(&report, |_| true);
    o.expect(n > 300, format!("only {n} checks ran"));
    let pi = build_pi(5, 3).unwrap();
    let h = homology(&pi, &build_complex::<BigInt>(&pi).unwrap()).unwrap();
    o.expect(h.dims == [1, 0, 1, 0, 1], format!("Pi(5,3) dims {:?}", h.dims));
    o
}

fn criterion_7(statistics: &Report) -> Outcome {
    let mut o = Outcome::new();
    for k in 0..=30 {
        o.expect(
            qt_int::<BigInt>(k).subst_t_with_one_plus_q() == q_int::<BigInt>(k),
            format!("[{k}]_qt"),
        );
    }
    let in_range = |name: &str| {
        (name.contains("S_qt") || name.contains("s_qt") || name.contains("wt'"))
            && name
                .split(|c: char| !c.is_ascii_digit())
                .find(|s| !s.is_empty())
                .and_then(|s| s.parse::<usize>().ok())
                .is_some_and(|n| n <= 8)
    };
    let n = o.absorb(statistics, in_range);
    o.expect(n > 100, format!("only {n} (q,t) enumeration checks"));
    let ids = verify_generating_identities::<BigInt>(8);
    o.absorb(&ids, |_| true);
    o.expect(ids.checks().len() == 36, "identity count");
    // spot check against a hand expansion: (x)_3 = x^3 - (1+t)x^2 + t x
    let x3 = XPoly::from_coeffs(vec![
        BiPoly::zero(),
        BiPoly::t(),
        -(BiPoly::one() + BiPoly::t()),
        BiPoly::one(),
    ]);
    o.expect(falling_factorial_qt::<BigInt>(3) == x3, "(x)_3");
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let report = verify_orthogonality(8);
    let n = o.absorb(&report, |_| true);
    let delta = report.checks().iter().filter(|c| c.name.contains("delta")).count();
    let involutions = report.checks().iter().filter(|c| c.name.starts_with("phi") || c.name.starts_with("psi")).count();
    o.expect(delta == 2 * 45, format!("{delta} delta checks"));
    o.expect(involutions == 2 * 28, format!("{involutions} involution checks"));
    o.expect(n == delta + involutions, "unexpected checks");
    o
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Words `1^{a_1} 2^{a_2} ... k^{a_k}` of length `n` with every even block
/// of size one, counted by brute force over the block sizes.
fn weakly_increasing_allowable(n: usize, k: usize) -> u64 {
    fn go(i: usize, k: usize, left: usize) -> u64 {
        if i > k {
            return u64::from(left == 0);
        }
        if i % 2 == 0 {
            return if left >= 1 { go(i + 1, k, left - 1) } else { 0 };
        }
        (1..=left).map(|a| go(i + 1, k, left - a)).sum()
    }
    go(1, k, n)
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    let s = StirlingTable::<BigInt>::build(TableKind::SecondQ, 10);
    let c = StirlingTable::<BigInt>::build(TableKind::FirstQ, 10);
    for n in 1..=10 {
        for k in 1..=n {
            let want = weakly_increasing_allowable(n, k);
            let listed = enumerate_allowable(n, k).unwrap().iter().filter(|w| w.is_weakly_increasing()).count();
            o.expect(want == listed as u64, format!("weakly increasing count ({n},{k})"));
            o.expect(s.get(n, k).eval(-1, 0) == BigInt::from(want), format!("S_q[{n},{k}](-1)"));
            let b = binomial((n / 2) as u64, (n - k) as u64);
            o.expect(c.get(n, k).eval(-1, 0) == BigInt::from(b), format!("c_q[{n},{k}](-1)"));
        }
    }
    o
}

fn main() -> ExitCode {
    let mut all_ok = true;
    let mut report = |id: &str, desc: &str, limit: Option<Duration>, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            outcome.expect(elapsed < limit, format!("took {elapsed:?}, limit {limit:?}"));
        }
        all_ok &= outcome.ok;
        println!(
            "criterion {id}: {} {desc} ({:.2?})",
            if outcome.ok { "PASS" } else { "FAIL" },
            elapsed
        );
        for note in outcome.notes.iter().take(10) {
            println!("    {note}");
        }
    };

    report("1", "table reproduction", Some(Duration::from_secs(1)), &mut criterion_1);

    let mut statistics = None;
    report("2", "enumeration sums equal recurrences, n <= 9", Some(Duration::from_secs(30)), &mut || {
        let r = verify_statistics(9);
        let o = criterion_2(&r);
        statistics = Some(r);
        o
    });
    report("3", "worked examples", None, &mut criterion_3);

    let mut posets = None;
    report("4", "Morse matchings, n <= 7", Some(Duration::from_secs(60)), &mut || {
        let r = verify_posets(7);
        let o = criterion_4_5(&r, false);
        posets = Some(r);
        o
    });
    let posets = posets.unwrap();
    report("5", "Boolean decompositions, n <= 7", None, &mut || criterion_4_5(&posets, true));
    report("6", "homology, n <= 7", Some(Duration::from_secs(120)), &mut criterion_6);
    let statistics = statistics.unwrap();
    report("7", "(q,t) layer", None, &mut || criterion_7(&statistics));
    report("8", "orthogonality, n <= 8", Some(Duration::from_secs(120)), &mut criterion_8);
    report("9", "q = -1 evaluations, n <= 10", None, &mut criterion_9);

    if all_ok {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
