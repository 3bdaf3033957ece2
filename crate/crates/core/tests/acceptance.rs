//! The ten acceptance criteria. Prints one line per criterion and exits
//! nonzero if any fails.

use std::time::{Duration, Instant};

use serde_json::Value;

use ringlab_core::axioms::{verify_axioms_with, AXIOM_CAP};
use ringlab_core::constructors::{
    augmentation_ideal, gf, group_ring, k_s, m_n_s, matrix, product, zmod, GroupTable,
};
use ringlab_core::invariants::{delta, delta_u_exponent, jacobson, units};
use ringlab_core::predicates::{
    is_n_delta_u, is_pi_regular, is_reduced, is_regular, is_strongly_regular, is_unit_regular,
    satisfies_power_identity,
};
use ringlab_core::ring::{Elem, FiniteRing};
use ringlab_core::subring::semisimple_decomposition;
use ringlab_core::theorems::{
    default_corpus, run_suite, Corpus, Report, Status, SuiteOptions, FLAGGED_DISCREPANCY,
};

/// Sampled triples per ring above the exhaustive axiom cap.
const AXIOM_SAMPLE_BUDGET: usize = 20_000;
const SUITE_BUDGET: Duration = Duration::from_secs(300);

type Outcome = Result<String, String>;

/// Best of five timings. Every round builds fresh rings, so no cached
/// subsets carry over between rounds.
fn best_of<T>(f: impl Fn() -> T) -> (T, Duration) {
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..5 {
        let t = Instant::now();
        let v = f();
        best = best.min(t.elapsed());
        last = Some(v);
    }
    (last.expect("five rounds"), best)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ndu(r: &FiniteRing, n: u64) -> bool {
    is_n_delta_u(r, n).unwrap().value
}

fn results<'a>(report: &'a Report, id: &str) -> Vec<&'a ringlab_core::theorems::CheckResult> {
    report.results.iter().filter(|r| r.check_id == id).collect()
}

/// Fails on any counterexample or error among the given checks.
fn clean(report: &Report, ids: &[&str]) -> Result<usize, String> {
    let mut n = 0;
    for id in ids {
        let rs = results(report, id);
        ensure(!rs.is_empty(), format!("{id} applied to no ring"))?;
        for r in &rs {
            if matches!(r.status, Status::Fail | Status::Error) {
                return Err(format!("{id} on {}: {}", r.ring, r.witness.clone().unwrap_or_default()));
            }
        }
        n += rs.len();
    }
    Ok(n)
}

fn criterion_1() -> Outcome {
    let ((two_delta, two_in_delta), dt) = best_of(|| {
        let z6 = zmod(6).unwrap();
        (is_n_delta_u(&z6, 2).unwrap().value, delta(&z6).unwrap().contains(z6.int(2)))
    });
    ensure(two_delta, "Zmod(6) is not 2-ΔU")?;
    ensure(!two_in_delta, "2 lies in Δ(Zmod(6))")?;
    ensure(dt < Duration::from_millis(1), format!("took {dt:?}"))?;
    Ok(format!("Zmod(6) is 2-ΔU, 2 not in Δ ({dt:?})"))
}

fn criterion_2() -> Outcome {
    let ((u, e, odd), dt) = best_of(|| {
        let m = matrix(2, &zmod(2).unwrap()).unwrap();
        let odd: Vec<bool> = [1, 3, 5].iter().map(|&n| ndu(&m, n)).collect();
        (units(&m).unwrap().to_vec(), delta_u_exponent(&m).unwrap(), odd)
    });
    // The six invertible matrices as row-major bits a b c d, listed in the
    // order they are displayed: I, [01;10], [01;11], [10;11], [11;01], [11;10].
    let mut listed: Vec<Elem> = vec![0b1001, 0b0110, 0b0111, 0b1011, 0b1101, 0b1110];
    listed.sort();
    // Independent oracle: nonzero determinant over Z2.
    let det: Vec<Elem> = (0..16u32)
        .filter(|x| ((x >> 3) & (x & 1)) ^ ((x >> 2) & 1 & (x >> 1)) == 1)
        .collect();
    ensure(u == listed && u == det, format!("units {u:?}"))?;
    ensure(e.n_min == 6, format!("least exponent {}", e.n_min))?;
    ensure(odd.iter().all(|v| !v), "some odd exponent holds")?;
    ensure(dt < Duration::from_millis(10), format!("took {dt:?}"))?;
    Ok(format!("6 units as listed, least exponent 6, not 1/3/5-ΔU ({dt:?})"))
}

fn criterion_3() -> Outcome {
    let fields = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)];
    let (mismatch, dt) = best_of(|| {
        let mut mismatch = None;
        for (p, k) in fields {
            let f = gf(p, k).unwrap();
            let q = p.pow(k) as u64;
            for n in 1..=12u64 {
                if ndu(&f, n) != (n % (q - 1) == 0) {
                    mismatch.get_or_insert((q, n));
                }
            }
        }
        mismatch
    });
    if let Some((q, n)) = mismatch {
        return Err(format!("GF({q}) at n = {n}"));
    }
    let cases = fields.len() * 12;
    ensure(dt < Duration::from_secs(1), format!("took {dt:?}"))?;
    Ok(format!("{cases} field cases match (q-1) | n ({dt:?})"))
}

fn criterion_4(report: &Report, elapsed: Duration) -> Outcome {
    let n = clean(report, &["T2.7"])?;
    let capped = results(report, "T2.7")
        .iter()
        .filter(|r| r.params["notes"]["ideals complete"] == Value::Bool(false))
        .count();
    ensure(elapsed < SUITE_BUDGET, format!("full suite took {elapsed:?}"))?;
    Ok(format!(
        "T2.7 holds on {n} rings ({capped} with a capped ideal list); full suite {:.1} s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_5(report: &Report) -> Outcome {
    let n = clean(report, &["T2.13", "C2.14"])?;
    let f4 = gf(2, 2).unwrap();
    let z4 = zmod(4).unwrap();
    let v = |r: &FiniteRing| {
        let d = ndu(r, 3);
        [
            d && is_regular(r).unwrap().value,
            d && is_reduced(r).unwrap().value && is_pi_regular(r).unwrap().value,
            d && is_strongly_regular(r).unwrap().value,
            d && is_unit_regular(r).unwrap().value,
            satisfies_power_identity(r, 4).unwrap().value,
        ]
    };
    ensure(v(&f4).iter().all(|&b| b), "GF(4) misses a clause at n = 2")?;
    ensure(v(&z4).iter().all(|&b| !b), "Zmod(4) satisfies a clause at n = 2")?;
    Ok(format!("{n} results clean; GF(4) positive and Zmod(4) negative at n = 2"))
}

fn criterion_6(report: &Report) -> Outcome {
    let ids = [
        "P3.3", "P3.4a", "P3.4b", "C3.5", "C3.7", "C3.8", "C3.9", "C3.10", "C3.11", "C3.12",
        "P3.6", "P3.14",
    ];
    let n = clean(report, &ids)?;
    let z4 = zmod(4).unwrap();
    ensure(ndu(&k_s(&z4, 2).unwrap(), 2), "Ks(Zmod(4), #2) is not 2-ΔU")?;
    let mut identities = 0;
    for m in [4u64, 8] {
        let r = zmod(m).unwrap();
        for s in r.elements() {
            let lhs = m_n_s(2, &r, s).unwrap();
            let rhs = k_s(&r, r.mul(s, s)).unwrap();
            ensure(lhs.tables_equal(&rhs), format!("Mns(2, Zmod({m}), #{s}) differs from Ks"))?;
            identities += 1;
        }
    }
    Ok(format!("{n} transfer results clean; Ks(Zmod(4), #2) 2-ΔU; {identities} table identities"))
}

fn criterion_7(report: &Report) -> Outcome {
    let n = clean(report, &["GR1", "GR2", "L4.14"])?;
    let z4c2 = group_ring(&zmod(4).unwrap(), &GroupTable::cyclic(2).unwrap()).unwrap();
    let aug = augmentation_ideal(&z4c2).unwrap();
    ensure(aug.is_subset_of(jacobson(&z4c2).unwrap()), "augmentation ideal outside J")?;
    ensure(ndu(&z4c2, 2), "Zmod(4)[C2] is not 2-ΔU")?;
    let f2c3 = group_ring(&zmod(2).unwrap(), &GroupTable::cyclic(3).unwrap()).unwrap();
    ensure(ndu(&f2c3, 3) && !ndu(&f2c3, 2), "GF(2)[C3] exponents")?;
    let mut sizes: Vec<usize> = semisimple_decomposition(&f2c3).unwrap().iter().map(|c| c.size()).collect();
    sizes.sort();
    ensure(sizes == [2, 4], format!("components {sizes:?}"))?;
    let oracle = product(&[zmod(2).unwrap(), gf(2, 2).unwrap()]).unwrap();
    for k in 1..=12 {
        ensure(ndu(&f2c3, k) == ndu(&oracle, k), format!("GF(2)[C3] and GF(2) x GF(4) differ at {k}"))?;
    }
    Ok(format!("{n} group-ring results clean; Zmod(4)[C2] and GF(2)[C3] facts hold"))
}

fn criterion_8(report: &Report, corpus: &Corpus) -> Outcome {
    let n = clean(report, &["DELTA-AX"])?;
    ensure(n == corpus.rings.len(), format!("DELTA-AX ran on {n} of {} rings", corpus.rings.len()))?;
    let triv = results(report, "DELTA-AX")
        .iter()
        .filter(|r| r.ring.starts_with("Triv("))
        .count();
    Ok(format!("Δ identities hold on all {n} rings, including {triv} trivial extensions"))
}

fn criterion_9(report: &Report) -> Outcome {
    let rs = results(report, "P2.SL");
    let z6 = rs.iter().find(|r| r.ring == "Zmod(6)").ok_or("Zmod(6) missing")?;
    ensure(z6.status == Status::Flagged, "Zmod(6) not flagged")?;
    let w = &z6.witness.as_ref().ok_or("no witness")?["instance"];
    ensure(
        w["n"] == 2 && w["divisor (q-1) | n"] == true && w["divisor (q-1) | (2n-1)"] == false && w["is (2n-1)-ΔU"] == false,
        format!("Zmod(6) witness {w}"),
    )?;
    // Flagged exactly when R/J is a product of fields, one of order at least 3.
    for r in &rs {
        let comps = r.params["notes"]["components"].as_array().ok_or("no components")?;
        let fields = comps.iter().all(|c| c["field"] == true);
        let big = comps.iter().any(|c| c["size"].as_u64().unwrap_or(0) >= 3);
        let expect = if fields && big { Status::Flagged } else { Status::Pass };
        ensure(r.status == expect, format!("P2.SL on {} is {:?}", r.ring, r.status))?;
    }
    let json = report.to_json();
    ensure(json.contains(FLAGGED_DISCREPANCY), "report lacks the marker")?;
    let fails = report.failures().count() + report.errors().count();
    ensure(fails == 0, format!("{fails} counterexamples or errors in the suite"))?;
    let flagged = report.flagged().count();
    ensure(report.flagged().all(|r| r.check_id == "P2.SL"), "flag outside P2.SL")?;
    Ok(format!("Zmod(6) flagged; {flagged} flags, all P2.SL; no other discrepancy"))
}

fn criterion_10(report: &Report, corpus: &Corpus, first_json: &str) -> Outcome {
    let mut sampled = 0;
    for item in &corpus.rings {
        let rep = verify_axioms_with(&item.ring, AXIOM_CAP, AXIOM_SAMPLE_BUDGET);
        ensure(rep.passed(), format!("axioms fail on {}: {:?}", item.text, rep.violations))?;
        sampled += usize::from(item.ring.size() > AXIOM_CAP);
    }
    let n = clean(report, &["P2.17"])?;
    let again = default_corpus();
    let second = run_suite(&again, &SuiteOptions::default()).map_err(|e| e.to_string())?.to_json();
    ensure(first_json == second, "two suite runs differ")?;
    Ok(format!(
        "axioms hold on {} rings ({sampled} sampled); P2.17 clean on {n}; two runs byte-identical ({} bytes)",
        corpus.rings.len(),
        first_json.len()
    ))
}

fn main() {
    // The timed criteria run before the suite loads the machine.
    let early = [criterion_1(), criterion_2(), criterion_3()];
    let [c1, c2, c3] = early;
    let t = Instant::now();
    let corpus = default_corpus();
    let report = run_suite(&corpus, &SuiteOptions::default()).expect("suite runs");
    let json = report.to_json();
    let elapsed = t.elapsed();

    let outcomes: Vec<(&str, Outcome)> = vec![
        ("Zmod(6) facts", c1),
        ("M2(Z2) facts", c2),
        ("field sweep", c3),
        ("radical quotients", criterion_4(&report, elapsed)),
        ("x^(2n) = x equivalences", criterion_5(&report)),
        ("extension transfers", criterion_6(&report)),
        ("group rings", criterion_7(&report)),
        ("Δ identities", criterion_8(&report, &corpus)),
        ("semilocal discrepancy", criterion_9(&report)),
        ("property tier", criterion_10(&report, &corpus, &json)),
    ];
    let mut failed = 0;
    for (i, (name, o)) in outcomes.iter().enumerate() {
        match o {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
