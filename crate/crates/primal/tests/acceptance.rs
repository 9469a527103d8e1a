//! Acceptance gate. Prints one line per criterion and exits non-zero when
//! any outcome differs from the recorded expectation.
//!
//! Criteria 5 and 9 are recorded as failing: the image of a primal along a
//! non-surjective map is not always a primal (one point into two points,
//! `{∅}` maps to `{∅}`, and `{1} ∩ {2} = ∅` with neither factor present).
//! They are still evaluated in full so a change in either direction shows up.

use std::process::Command;
use std::time::{Duration, Instant};

use primal_core::verify::{verify_property_with, Quantifier};
use primal_core::{
    closure_table, diamond, diamond_naive, enumerate_primals, enumerate_topologies,
    exhaustive_primal_scan, kuratowski_audit, preimage_family, primal_topology, tau_star_from_base,
    tau_star_from_membership, FiniteTopology, PointMap, Primal, PrimalSpace, PropertyId, ScopeCaps,
    Sequential, SetFamily, SubsetCode, Universe, Verdict,
};

const KNOWN_FAILING: [u32; 2] = [5, 9];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn u(n: usize) -> Universe {
    Universe::new(n).unwrap()
}

fn fam(n: usize, bits: &[&str]) -> SetFamily {
    let x = u(n);
    SetFamily::from_codes(x, bits.iter().map(|b| x.parse(b).unwrap())).unwrap()
}

fn space(n: usize, opens: &[&str], primal: &[&str]) -> PrimalSpace {
    PrimalSpace::new(
        FiniteTopology::new(fam(n, opens)).unwrap(),
        Primal::new(fam(n, primal)).unwrap(),
    )
    .unwrap()
}

fn all_spaces(n: usize) -> Vec<PrimalSpace> {
    let mut out = Vec::new();
    for t in enumerate_topologies(u(n)).unwrap() {
        for p in enumerate_primals(u(n)) {
            out.push(PrimalSpace::new(t.clone(), p).unwrap());
        }
    }
    out
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_primal"))
        .args(args)
        .output()
        .expect("run primal");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn timed<T>(limit: Duration, f: impl FnOnce() -> T) -> (T, Duration, bool) {
    let start = Instant::now();
    let value = f();
    let took = start.elapsed();
    (value, took, took < limit)
}

fn census() -> Outcome {
    let (code, text) = cli(&["enumerate", "primals", "--n", "2"]);
    let listed: Vec<&str> = text.lines().filter(|l| l.starts_with("PRIMAL ")).collect();
    let expected = [
        "PRIMAL {}",
        "PRIMAL {00, 10}",
        "PRIMAL {00, 01}",
        "PRIMAL {00, 10, 01}",
    ];
    let (sizes, took, fast) = timed(Duration::from_secs(1), || {
        (1..=4)
            .map(|n| {
                let a = enumerate_primals(u(n));
                let b = exhaustive_primal_scan(u(n)).unwrap();
                (a == b).then_some(a.len())
            })
            .collect::<Vec<_>>()
    });
    let sizes_ok = sizes == [Some(2), Some(4), Some(8), Some(16)];
    Outcome {
        pass: code == 0 && listed == expected && sizes_ok && fast,
        detail: format!(
            "cli listing {:?}, sizes {:?}, {:?}",
            listed == expected,
            sizes,
            took
        ),
    }
}

fn diamond_examples() -> Outcome {
    let ((below, meet, join), took, fast) = timed(Duration::from_secs(1), || {
        let s = space(
            3,
            &["000", "100", "010", "110", "111"],
            &["000", "100", "010", "110"],
        );
        let a = u(3).parse("110").unwrap();
        let below = (diamond(a, &s), diamond_naive(a, &s));
        let s = space(
            3,
            &["000", "111"],
            &["000", "100", "010", "001", "110", "101"],
        );
        let (a, b) = (u(3).parse("010").unwrap(), u(3).parse("001").unwrap());
        (below, diamond(a, &s) & diamond(b, &s), diamond(a & b, &s))
    });
    let pass = below == (SubsetCode::EMPTY, SubsetCode::EMPTY)
        && meet == u(3).full()
        && join == SubsetCode::EMPTY
        && fast;
    Outcome {
        pass,
        detail: format!(
            "A^⋄={} ; A^⋄∩B^⋄={} (A∩B)^⋄={}, {:?}",
            u(3).format(below.0),
            u(3).format(meet),
            u(3).format(join),
            took
        ),
    }
}

fn documented_discrepancy() -> Outcome {
    let (code, text) = cli(&["replicate-paper"]);
    let mismatches: Vec<&str> = text.lines().filter(|l| l.ends_with(" MISMATCH")).collect();
    let discrete_ok = mismatches.len() == 1
        && mismatches[0] == "EXAMPLE diamond-discrete-singleton EXPECTED 111 COMPUTED 001 MISMATCH";
    let inclusion_ok = text.lines().any(|l| {
        l.starts_with("EXAMPLE diamond-discrete-singleton-inclusion ") && l.ends_with(" MATCH")
    });
    Outcome {
        pass: code == 0 && discrete_ok && inclusion_ok,
        detail: format!(
            "{} mismatch(es), inclusion verified {}, exit {}",
            mismatches.len(),
            inclusion_ok,
            code
        ),
    }
}

fn kuratowski() -> Outcome {
    let ((count, good), took, fast) = timed(Duration::from_secs(5), || {
        let spaces = all_spaces(3);
        let good = spaces
            .iter()
            .filter(|s| kuratowski_audit(&closure_table(s)).is_closure_operator())
            .count();
        (spaces.len(), good)
    });
    Outcome {
        pass: count == 232 && good == 232 && fast,
        detail: format!("{}/{} spaces, {:?}", good, count, took),
    }
}

fn theorem_suite() -> Outcome {
    let caps = ScopeCaps::default();
    let (reports, took, fast) = timed(Duration::from_secs(60), || {
        PropertyId::ALL
            .iter()
            .map(|&id| verify_property_with(id, 3, &caps, &Sequential).unwrap())
            .collect::<Vec<_>>()
    });
    let off: Vec<String> = reports
        .iter()
        .filter(|r| match r.property.quantifier() {
            Quantifier::Universal => r.verdict != Verdict::Holds || r.failure_count != 0,
            Quantifier::Existential => r.verdict != Verdict::CounterexampleFoundAsExpected,
        })
        .map(|r| format!("{} {} ({} failing)", r.property, r.verdict, r.failure_count))
        .collect();
    Outcome {
        pass: off.is_empty() && fast,
        detail: format!(
            "{} properties, off: [{}], {:?}",
            reports.len(),
            off.join(", "),
            took
        ),
    }
}

fn two_routes() -> Outcome {
    let mut spaces = 0;
    let mut disagreements = 0;
    for n in 1..=3 {
        for s in all_spaces(n) {
            spaces += 1;
            let fixed = primal_topology(&s);
            if &tau_star_from_membership(&s) != fixed.opens()
                || &tau_star_from_base(&s) != fixed.opens()
            {
                disagreements += 1;
            }
        }
    }
    Outcome {
        pass: disagreements == 0,
        detail: format!("{} spaces, {} disagreements", spaces, disagreements),
    }
}

fn fast_path() -> Outcome {
    let mut small = 0u64;
    let mut bad = 0u64;
    for n in 1..=3 {
        for s in all_spaces(n) {
            for a in s.universe().subsets() {
                small += 1;
                bad += (diamond(a, &s) != diamond_naive(a, &s)) as u64;
            }
        }
    }
    let mut pairs = 0u64;
    let mut decisions = 0u64;
    for s in all_spaces(4) {
        for a in s.universe().subsets() {
            pairs += 1;
            decisions += 4;
            bad += (diamond(a, &s) != diamond_naive(a, &s)) as u64;
        }
    }
    Outcome {
        pass: bad == 0 && decisions >= 100_000,
        detail: format!(
            "n<=3 {} pairs; n=4 exhaustive {} pairs = {} point decisions; {} disagreements",
            small, pairs, decisions, bad
        ),
    }
}

fn topology_counts() -> Outcome {
    let (counts, took, fast) = timed(Duration::from_secs(10), || {
        (1..=4)
            .map(|n| enumerate_topologies(u(n)).unwrap().len())
            .collect::<Vec<_>>()
    });
    Outcome {
        pass: counts == [1, 4, 29, 355] && fast,
        detail: format!("{:?}, {:?}", counts, took),
    }
}

fn pushforward() -> Outcome {
    let report =
        verify_property_with(PropertyId::T3_11, 3, &ScopeCaps::default(), &Sequential).unwrap();
    let constant = PointMap::new(u(2), u(2), &[0, 0]).unwrap();
    let back = preimage_family(&constant, &Primal::new(fam(2, &["00", "10"])).unwrap()).unwrap();
    let preimage_ok = back.family == fam(2, &["00", "11"]) && !back.is_primal();
    let first = report
        .failures
        .first()
        .map(|w| w.to_string())
        .unwrap_or_default();
    Outcome {
        pass: report.verdict == Verdict::Holds && preimage_ok,
        detail: format!(
            "images {} of {} not primal (first: {}); preimage {} reproduced {}",
            report.failure_count, report.checked, first, back.family, preimage_ok
        ),
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "primal census", census),
        (2, "diamond examples", diamond_examples),
        (3, "documented discrepancy", documented_discrepancy),
        (4, "Kuratowski audit at n=3", kuratowski),
        (5, "theorem suite at n<=3", theorem_suite),
        (6, "tau-star route agreement", two_routes),
        (7, "fast-path equivalence", fast_path),
        (8, "topology enumeration counts", topology_counts),
        (9, "pushforward and preimage", pushforward),
    ];
    let mut surprises = Vec::new();
    for (k, name, run) in criteria {
        let o = run();
        let known = KNOWN_FAILING.contains(&k);
        let tag = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {} {}: {} : {}", k, tag, name, o.detail);
        if o.pass == known {
            surprises.push(k);
        }
    }
    if !surprises.is_empty() {
        eprintln!("unexpected outcome for criteria {:?}", surprises);
        std::process::exit(1);
    }
}
