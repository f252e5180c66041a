//! Acceptance gate: one test per criterion, numbered. Each prints a PASS line
//! with its measured runtime, or fails with a message carrying the numbers.
//!
//! Criteria 3 and 4 pin printed closed-form values that the exact lattice
//! count refutes. Those tests state the printed value faithfully and are
//! expected to fail: the failure text is the finding. Everything else passes.

use std::time::{Duration, Instant};

use num_bigint::BigUint;

use fuzzcount::{run_verify, VerifyOptions};
use fuzzcount_core::formulas::{eval_formula, EvalOptions, FamilyId, Validity};
use fuzzcount_core::{
    canonicalize, count_chains_dp, enumerate_subgroups, fuzzy_subgroup_count, parse_spec,
    realize_spec, CountMethod, Error, Group, Limits,
};

fn wide_limits() -> Limits {
    Limits {
        max_order: 1024,
        ..Limits::default()
    }
}

/// Exact count, both methods cross-checked.
fn oracle(spec: &str) -> BigUint {
    let g = realize_spec(spec, &wide_limits()).expect(spec);
    fuzzy_subgroup_count(&g, CountMethod::Both, &wide_limits())
        .expect(spec)
        .h
}

/// Closed-form value, default reading, panicking if there is none.
fn formula(family: FamilyId, p: Option<u64>, n: i64) -> BigUint {
    eval_formula(family, p, n, &EvalOptions::default())
        .unwrap()
        .value
        .unwrap_or_else(|| panic!("{family} has no value at n={n}"))
}

fn budget(criterion: u32, started: Instant, limit: Duration) -> Duration {
    let elapsed = started.elapsed();
    assert!(
        elapsed < limit,
        "[criterion {criterion}] FAIL: runtime {elapsed:?} exceeded the {limit:?} budget"
    );
    elapsed
}

#[test]
fn criterion_01_cyclic_law() {
    let started = Instant::now();
    for (p, max_n) in [(2u64, 8i64), (3, 4), (5, 4)] {
        for n in 0..=max_n {
            let spec = format!("C{}", p.pow(n as u32));
            let got = oracle(&spec);
            let want = BigUint::from(2u32).pow(n as u32);
            assert_eq!(
                got, want,
                "[criterion 1] FAIL: h({spec}) = {got}, cyclic law says 2^{n} = {want}"
            );
            assert_eq!(
                formula(FamilyId::Cyclic, Some(p), n),
                want,
                "[criterion 1] FAIL: CYCLIC({p},{n}) formula drifted from 2^n"
            );
        }
    }
    let t = budget(1, started, Duration::from_secs(5));
    eprintln!("[criterion 1] PASS: h(C_{{p^n}}) = 2^n for p=2 n=0..8, p=3,5 n=0..4 ({t:?})");
}

#[test]
fn criterion_02_rank2_law() {
    let started = Instant::now();
    for (p, ns) in [(2u64, 2..=6i64), (3, 2..=4), (5, 2..=3)] {
        for n in ns {
            let spec = format!("C{} x C{}", p, p.pow(n as u32 - 1));
            let got = oracle(&spec);
            let want = formula(FamilyId::Rank2, Some(p), n);
            // the closed form, written out: 2^{n-1} [2 + (n-1) p]
            let by_hand =
                BigUint::from(2u32).pow(n as u32 - 1) * BigUint::from(2 + (n as u64 - 1) * p);
            assert_eq!(want, by_hand, "[criterion 2] FAIL: RANK2 formula drifted");
            assert_eq!(
                got, want,
                "[criterion 2] FAIL: h({spec}) = {got} but the rank-2 closed form gives {want}"
            );
        }
    }
    let t = budget(2, started, Duration::from_secs(30));
    eprintln!("[criterion 2] PASS: rank-2 closed form matches the lattice count ({t:?})");
}

#[test]
fn criterion_03_z4_chain_closed_form() {
    let started = Instant::now();

    // printed values reproduced by formula evaluation at n = 5..8
    for (n, printed) in [(5i64, 1536u64), (6, 4096), (7, 10496), (8, 26112)] {
        let v = formula(FamilyId::Z4Chain, None, n);
        assert_eq!(
            v,
            BigUint::from(printed),
            "[criterion 3] FAIL: Z4_CHAIN({n}) evaluated to {v}, printed value is {printed}"
        );
    }

    // the closed form checked against the exact count at n = 2..5
    let mut wrong = Vec::new();
    for n in 2i64..=5 {
        let spec = format!("C4 x C{}", 1u64 << n);
        let claimed = formula(FamilyId::Z4Chain, None, n);
        let exact = oracle(&spec);
        if claimed != exact {
            wrong.push(format!(
                "n={n}: printed closed form gives {claimed}, exact lattice count of {spec} is {exact}"
            ));
        }
    }
    let t = started.elapsed();
    assert!(
        wrong.is_empty(),
        "[criterion 3] FAIL: the printed closed form 2^n(n^2+5n-2) does not count chains of \
         C4 x C_{{2^n}}: {}",
        wrong.join("; ")
    );
    eprintln!("[criterion 3] PASS: Z4 chain closed form agrees with the lattice count ({t:?})");
}

#[test]
fn criterion_04_z8_chain_values() {
    let started = Instant::now();
    let mut wrong = Vec::new();
    for (spec, printed) in [("C8 x C8", 864u64), ("C8 x C16", 3200)] {
        let exact = oracle(spec);
        if exact != BigUint::from(printed) {
            wrong.push(format!(
                "printed value h({spec}) = {printed}, exact lattice count is {exact}"
            ));
        }
    }
    let t = budget(4, started, Duration::from_secs(60));
    assert!(
        wrong.is_empty(),
        "[criterion 4] FAIL: direct substitution into the printed Z8 chain formula does not \
         match the exact counts: {}",
        wrong.join("; ")
    );
    eprintln!("[criterion 4] PASS: Z8 chain values match the lattice count ({t:?})");
}

#[test]
fn criterion_05_rank3_smallest_instances() {
    let started = Instant::now();
    let c2 = oracle("C2 x C2 x C2");
    assert_eq!(
        c2,
        BigUint::from(72u32),
        "[criterion 5] FAIL: h(C2 x C2 x C2) = {c2}, expected 72"
    );
    assert_eq!(
        formula(FamilyId::Rank3, Some(2), 1),
        BigUint::from(72u32),
        "[criterion 5] FAIL: RANK3(2,1) does not give 72"
    );

    let c3 = oracle("C3 x C3 x C3");
    assert_eq!(
        c3,
        BigUint::from(158u32),
        "[criterion 5] FAIL: h(C3 x C3 x C3) = {c3}, expected 158"
    );
    assert_eq!(
        formula(FamilyId::Rank3, Some(3), 1),
        BigUint::from(158u32),
        "[criterion 5] FAIL: RANK3(3,1) does not give 158"
    );
    assert_eq!(
        formula(FamilyId::Rank3P3, None, 1),
        BigUint::from(158u32),
        "[criterion 5] FAIL: RANK3_P3(1) does not give 158"
    );
    let t = started.elapsed();
    eprintln!("[criterion 5] PASS: h = 72 and 158 on the smallest rank-3 groups ({t:?})");
}

#[test]
fn criterion_06_dihedral_c2_values() {
    let started = Instant::now();
    for (spec, n, want) in [("D16 x C2", 4i64, 2272u64), ("D32 x C2", 5, 11200)] {
        let got = oracle(spec);
        assert_eq!(
            got,
            BigUint::from(want),
            "[criterion 6] FAIL: h({spec}) = {got}, expected {want}"
        );
        assert_eq!(
            formula(FamilyId::D2nC2, None, n),
            BigUint::from(want),
            "[criterion 6] FAIL: D2N_C2({n}) does not give {want}"
        );
    }
    let t = budget(6, started, Duration::from_secs(60));
    eprintln!("[criterion 6] PASS: D2N_C2 closed form verified at orders 32 and 64 ({t:?})");
}

#[test]
fn criterion_07_d8_c4_verdict_recorded() {
    let started = Instant::now();
    let report = run_verify(&VerifyOptions {
        corpus: vec!["D8 x C4".into()],
        max_order: 64,
        ..VerifyOptions::default()
    })
    .expect("[criterion 7] FAIL: verify run did not complete");

    let entry = &report.entries[0];
    let check = entry
        .checks
        .iter()
        .find(|c| c.family == "D2N_C4" && c.n == 3)
        .expect("[criterion 7] FAIL: no D2N_C4 check recorded for D8 x C4");
    assert_eq!(
        check.formula_value.as_deref(),
        Some("1460"),
        "[criterion 7] FAIL: printed formula value for D8 x C4 should evaluate to 1460"
    );
    assert!(
        check.formula_vs_oracle.is_some(),
        "[criterion 7] FAIL: formula-vs-oracle verdict missing"
    );
    // the recorded verdict, for the record: the lattice count is 2432
    assert_eq!(
        entry.h.as_deref(),
        Some("2432"),
        "[criterion 7] FAIL: exact count of D8 x C4 drifted"
    );
    assert_eq!(check.formula_vs_oracle, Some(false));
    let t = budget(7, started, Duration::from_secs(60));
    eprintln!(
        "[criterion 7] PASS: D8 x C4 comparison recorded (formula 1460 vs exact 2432) ({t:?})"
    );
}

#[test]
fn criterion_08_d8_chain_table_scan() {
    let started = Instant::now();
    let report = run_verify(&VerifyOptions {
        corpus: vec!["D8 x C8".into(), "D8 x C16".into(), "D8 x C32".into()],
        max_order: 128,
        ..VerifyOptions::default()
    })
    .expect("[criterion 8] FAIL: verify run did not complete");

    let check_for = |m: i64| {
        report
            .entries
            .iter()
            .flat_map(|e| e.checks.iter())
            .find(|c| c.family == "D8_C2M" && c.n == m)
            .unwrap_or_else(|| panic!("[criterion 8] FAIL: no D8_C2M check at m={m}"))
    };

    // (a) formula matches the printed table at m = 3 and m = 5
    for (m, printed) in [(3i64, "5376"), (5, "21506")] {
        let c = check_for(m);
        assert_eq!(
            c.formula_value.as_deref(),
            Some(printed),
            "[criterion 8] FAIL: D8_C2M({m}) does not give the printed {printed}"
        );
        assert_eq!(
            c.fixtures[0].matches_formula,
            Some(true),
            "[criterion 8] FAIL: printed table at m={m} not matched by the formula"
        );
    }

    // (b) the m = 4 row disagrees with itself in print: 10744 vs 10728
    let m4 = check_for(4);
    assert_eq!(m4.formula_value.as_deref(), Some("10744"));
    assert_eq!(m4.fixtures[0].value, "10728");
    assert_eq!(
        m4.fixtures[0].matches_formula,
        Some(false),
        "[criterion 8] FAIL: the 10744 vs 10728 mismatch at m=4 was not recorded"
    );

    // oracle verdicts attached at m = 3 and m = 4 (orders 64 and 128)
    for m in [3i64, 4] {
        assert!(
            check_for(m).formula_vs_oracle.is_some(),
            "[criterion 8] FAIL: oracle verdict missing at m={m}"
        );
    }
    assert_eq!(
        check_for(5).formula_vs_oracle,
        None,
        "[criterion 8] FAIL: m=5 is order 256 and must be skipped at max order 128"
    );
    let t = budget(8, started, Duration::from_secs(600));
    eprintln!(
        "[criterion 8] PASS: table scan m=3..5 records the m=4 print discrepancy ({t:?})"
    );
}

#[test]
fn criterion_09_d16_c16_adjudication() {
    let started = Instant::now();
    let report = run_verify(&VerifyOptions {
        corpus: vec!["D16 x C16".into()],
        max_order: 256,
        ..VerifyOptions::default()
    })
    .expect("[criterion 9] FAIL: verify run did not complete");

    let entry = &report.entries[0];
    let exact = entry
        .h
        .as_deref()
        .expect("[criterion 9] FAIL: no exact count for D16 x C16");
    assert_eq!(
        exact, "315904",
        "[criterion 9] FAIL: exact lattice count of D16 x C16 drifted from 315904"
    );

    let check = entry
        .checks
        .iter()
        .find(|c| c.family == "D16_C2N" && c.n == 4)
        .expect("[criterion 9] FAIL: no D16_C2N check recorded");

    // all three printed values, each with a recorded match flag
    assert_eq!(
        check.formula_value.as_deref(),
        Some("21528"),
        "[criterion 9] FAIL: printed closed form at n=4 should evaluate to 21528"
    );
    assert_eq!(
        check.formula_vs_oracle,
        Some(false),
        "[criterion 9] FAIL: flag missing or wrong for the evaluated closed form 21528"
    );
    for printed in ["20200", "61384"] {
        let fx = check
            .fixtures
            .iter()
            .find(|f| f.value == printed)
            .unwrap_or_else(|| {
                panic!("[criterion 9] FAIL: printed value {printed} missing from the record")
            });
        assert_eq!(
            fx.matches_oracle,
            Some(false),
            "[criterion 9] FAIL: flag missing or wrong for printed value {printed}"
        );
    }
    let t = budget(9, started, Duration::from_secs(1800));
    eprintln!(
        "[criterion 9] PASS: D16 x C16 adjudicated: exact 315904; printed 61384, 20200, 21528 \
         all differ, flags recorded ({t:?})"
    );
}

#[test]
fn criterion_10_method_equivalence() {
    let started = Instant::now();
    let corpus = fuzzcount::preset("paper-tables").unwrap();
    let mut checked = 0;
    for spec in &corpus {
        let expr = parse_spec(spec).unwrap();
        if expr.total_order() > 128 {
            continue;
        }
        // Both methods, compared inside the engine; disagreement is an error
        let g = realize_spec(spec, &wide_limits()).unwrap();
        let out = fuzzy_subgroup_count(&g, CountMethod::Both, &wide_limits())
            .unwrap_or_else(|e| panic!("[criterion 10] FAIL on {spec}: {e}"));
        assert!(out.dp_ms.is_some() && out.ie_ms.is_some());
        checked += 1;
    }
    assert!(
        checked >= 25,
        "[criterion 10] FAIL: only {checked} corpus groups of order <= 128"
    );
    let t = started.elapsed();
    eprintln!(
        "[criterion 10] PASS: DP and inclusion-exclusion agree on {checked} groups ({t:?})"
    );
}

/// Subsets of the carrier closed under multiplication, as bitmasks.
fn subgroup_masks(g: &Group) -> Vec<u32> {
    let n = g.order();
    let mut out = Vec::new();
    'mask: for mask in 0u32..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        for a in 0..n {
            for b in 0..n {
                if mask >> a & 1 == 1 && mask >> b & 1 == 1 && mask >> g.mul(a, b) & 1 == 0 {
                    continue 'mask;
                }
            }
        }
        out.push(mask);
    }
    out
}

/// Chains counted one by one, no shared state between branches.
fn chains_one_by_one(subgroups: &[u32], top: u32) -> u64 {
    let mut total = 1;
    for &s in subgroups {
        if s != top && s & top == s {
            total += chains_one_by_one(subgroups, s);
        }
    }
    total
}

#[test]
fn criterion_11_brute_force_equivalence() {
    let started = Instant::now();
    let products = [
        "C2 x C2",
        "C2 x C4",
        "C2 x C8",
        "C3 x C3",
        "C4 x C4",
        "C2 x C2 x C2",
        "C2 x C2 x C4",
        "C2 x C2 x C2 x C2",
        "C2 x C6",
        "D4",
        "D6",
        "D8",
        "D10",
        "D12",
        "D14",
        "D16",
        "D4 x C2",
        "D8 x C2",
        "D4 x C4",
    ];
    let specs: Vec<String> = (1..=16)
        .map(|n| format!("C{n}"))
        .chain(products.iter().map(|s| s.to_string()))
        .collect();

    for spec in &specs {
        let g = realize_spec(spec, &wide_limits()).unwrap();
        assert!(g.order() <= 16);
        let lattice = enumerate_subgroups(&g, &wide_limits()).unwrap();
        let masks = subgroup_masks(&g);
        assert_eq!(
            masks.len(),
            lattice.len(),
            "[criterion 11] FAIL: subgroup enumeration differs from subset filter on {spec}"
        );
        let dp = count_chains_dp(&lattice)[lattice.len() - 1].clone();
        let exhaustive = chains_one_by_one(&masks, (1u32 << g.order()) - 1);
        assert_eq!(
            dp,
            BigUint::from(exhaustive),
            "[criterion 11] FAIL: DP count differs from exhaustive chain enumeration on {spec}"
        );
    }
    let t = started.elapsed();
    eprintln!(
        "[criterion 11] PASS: DP equals exhaustive chain enumeration on {} groups of order <= 16 ({t:?})",
        specs.len()
    );
}

#[test]
fn criterion_12_parity_and_base_properties() {
    let started = Instant::now();
    assert_eq!(
        oracle("C1"),
        BigUint::from(1u32),
        "[criterion 12] FAIL: h(trivial) must be 1"
    );

    let two = BigUint::from(2u32);
    for spec in fuzzcount::preset("paper-tables").unwrap() {
        if spec == "C1" {
            continue;
        }
        let h = oracle(&spec);
        assert_eq!(
            &h % &two,
            BigUint::from(0u32),
            "[criterion 12] FAIL: h({spec}) = {h} is odd"
        );
    }

    // the division by 3 in the Z8 chain closed form is always exact
    for n in 3i64..=12 {
        match eval_formula(FamilyId::Z8Chain, None, n, &EvalOptions::default()) {
            Ok(r) => assert!(
                r.value.is_some() && r.validity == Validity::Ok,
                "[criterion 12] FAIL: Z8_CHAIN({n}) produced no in-range value"
            ),
            Err(Error::NonExactDivision { .. }) => {
                panic!("[criterion 12] FAIL: Z8_CHAIN divisibility assertion fired at n={n}")
            }
            Err(e) => panic!("[criterion 12] FAIL: Z8_CHAIN({n}): {e}"),
        }
    }
    let t = started.elapsed();
    eprintln!("[criterion 12] PASS: base value, parity, and exact division hold ({t:?})");
}

#[test]
fn criterion_13_parser() {
    let started = Instant::now();

    // round trip: canonical form is a fixed point of parse . canonicalize
    for (input, canonical) in [
        ("c2xc8", "C8 x C2"),
        ("Z2^3", "C2 x C2 x C2"),
        ("d16 X c4", "D16 x C4"),
        ("C1 x C1", "C1"),
        ("Z3 x z9 x Z3", "C9 x C3 x C3"),
    ] {
        let canon = canonicalize(&parse_spec(input).unwrap());
        assert_eq!(
            canon, canonical,
            "[criterion 13] FAIL: {input} canonicalized to {canon}"
        );
        let again = canonicalize(&parse_spec(&canon).unwrap());
        assert_eq!(again, canon, "[criterion 13] FAIL: canonical form unstable");
    }

    // error positions point at the offending token
    for (input, pos) in [("C4 y C2", 3), ("Q8", 0), ("C4 x SD16", 5), ("D7", 0)] {
        match parse_spec(input) {
            Err(Error::Parse { pos: got, .. }) => assert_eq!(
                got, pos,
                "[criterion 13] FAIL: error for {input:?} at position {got}, expected {pos}"
            ),
            other => panic!("[criterion 13] FAIL: {input:?} gave {other:?}"),
        }
    }

    // 10000 deterministic fuzz cases: never panic, Ok or Err both fine
    let alphabet: &[u8] = b"CZDQSczd0123456789xX^ ()*-";
    let mut state = 0x243f6a8885a308d3u64;
    let mut rng = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for _ in 0..10_000 {
        let len = (rng() % 24) as usize;
        let s: String = (0..len)
            .map(|_| alphabet[(rng() % alphabet.len() as u64) as usize] as char)
            .collect();
        let _ = parse_spec(&s);
    }
    let t = started.elapsed();
    eprintln!("[criterion 13] PASS: round trip, error positions, 10000-case fuzz ({t:?})");
}
