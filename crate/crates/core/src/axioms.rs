//! Exhaustive (or seeded-sampled) verification of the ring axioms.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ring::{Elem, FiniteRing};

/// Rings up to this size have every triple checked.
pub const AXIOM_CAP: usize = 128;
/// Seed of the triple sampler used above the cap.
pub const AXIOM_SEED: u64 = 0xA5A5;
/// Number of sampled triples above the cap.
pub const AXIOM_SAMPLES: usize = 1_000_000;
/// Rings up to this size have every pair checked for the binary laws.
pub const PAIR_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum Coverage {
    Exhaustive,
    Sampled { seed: u64, samples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub size: usize,
    pub coverage: Coverage,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the ring axioms with the default cap and sample budget.
pub fn verify_axioms(ring: &FiniteRing) -> AxiomReport {
    verify_axioms_with(ring, AXIOM_CAP, AXIOM_SAMPLES)
}

/// Unary laws are checked on every element and additive commutativity on
/// every pair up to [`PAIR_CAP`]; the ternary laws (associativity,
/// distributivity) on every triple up to `cap`. Above the caps, `samples`
/// pairs or triples are drawn with [`AXIOM_SEED`].
pub fn verify_axioms_with(ring: &FiniteRing, cap: usize, samples: usize) -> AxiomReport {
    let n = ring.size();
    let mut violations = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut record = |axiom: &'static str, witness: Vec<Elem>| {
        if seen.insert(axiom) {
            violations.push(Violation { axiom, witness });
        }
    };

    if n > 1 && ring.one() == ring.zero() {
        record("one-ne-zero", vec![]);
    }
    for a in ring.elements() {
        if ring.add(a, ring.zero()) != a {
            record("additive-identity", vec![a]);
        }
        if ring.add(a, ring.neg(a)) != ring.zero() {
            record("additive-inverse", vec![a]);
        }
        if ring.mul(a, ring.one()) != a || ring.mul(ring.one(), a) != a {
            record("multiplicative-identity", vec![a]);
        }
        if n <= PAIR_CAP {
            for b in ring.elements() {
                if ring.add(a, b) != ring.add(b, a) {
                    record("additive-commutativity", vec![a, b]);
                }
            }
        }
    }
    if n > PAIR_CAP {
        let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SEED);
        for _ in 0..samples {
            let a = rng.gen_range(0..n) as Elem;
            let b = rng.gen_range(0..n) as Elem;
            if ring.add(a, b) != ring.add(b, a) {
                record("additive-commutativity", vec![a, b]);
            }
        }
    }

    let mut triple = |a: Elem, b: Elem, c: Elem| {
        if ring.add(ring.add(a, b), c) != ring.add(a, ring.add(b, c)) {
            record("additive-associativity", vec![a, b, c]);
        }
        if ring.mul(ring.mul(a, b), c) != ring.mul(a, ring.mul(b, c)) {
            record("multiplicative-associativity", vec![a, b, c]);
        }
        if ring.mul(a, ring.add(b, c)) != ring.add(ring.mul(a, b), ring.mul(a, c)) {
            record("left-distributivity", vec![a, b, c]);
        }
        if ring.mul(ring.add(a, b), c) != ring.add(ring.mul(a, c), ring.mul(b, c)) {
            record("right-distributivity", vec![a, b, c]);
        }
    };

    let coverage = if n <= cap {
        for a in ring.elements() {
            for b in ring.elements() {
                for c in ring.elements() {
                    triple(a, b, c);
                }
            }
        }
        Coverage::Exhaustive
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SEED);
        for _ in 0..samples {
            let a = rng.gen_range(0..n) as Elem;
            let b = rng.gen_range(0..n) as Elem;
            let c = rng.gen_range(0..n) as Elem;
            triple(a, b, c);
        }
        Coverage::Sampled {
            seed: AXIOM_SEED,
            samples,
        }
    };

    AxiomReport {
        size: n,
        coverage,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::zmod;
    use crate::ring::RingBackend;
    use std::any::Any;

    /// Z/4 with one multiplication entry corrupted.
    struct Patched;

    impl RingBackend for Patched {
        fn size(&self) -> usize {
            4
        }
        fn add(&self, a: Elem, b: Elem) -> Elem {
            (a + b) % 4
        }
        fn mul(&self, a: Elem, b: Elem) -> Elem {
            if (a, b) == (2, 3) {
                0
            } else {
                (a * b) % 4
            }
        }
        fn neg(&self, a: Elem) -> Elem {
            (4 - a) % 4
        }
        fn one(&self) -> Elem {
            1
        }
        fn label(&self, a: Elem) -> String {
            a.to_string()
        }
        fn as_any(&self) -> &dyn Any {
            self
        }
    }

    #[test]
    fn zmod6_passes() {
        let r = zmod(6).unwrap();
        let report = verify_axioms(&r);
        assert!(report.passed());
        assert_eq!(report.coverage, Coverage::Exhaustive);
    }

    #[test]
    fn patched_table_reports_associativity_triple() {
        let r = FiniteRing::new(Patched, "patched");
        let report = verify_axioms(&r);
        let assoc = report
            .violations
            .iter()
            .find(|v| v.axiom == "multiplicative-associativity")
            .expect("associativity must fail");
        let [a, b, c] = assoc.witness[..] else {
            panic!("expected a triple")
        };
        assert_ne!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
    }

    #[test]
    fn sampling_is_recorded() {
        let r = zmod(6).unwrap();
        let report = verify_axioms_with(&r, 2, 1000);
        assert_eq!(
            report.coverage,
            Coverage::Sampled {
                seed: AXIOM_SEED,
                samples: 1000
            }
        );
        assert!(report.passed());
    }
}
