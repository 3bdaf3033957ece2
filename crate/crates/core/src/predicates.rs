//! Decision procedures for the ring classes, each a direct scan of its
//! definition. Universally quantified predicates carry a failing witness.

use serde::Serialize;

use crate::error::{Result, RingError};
use crate::ideal::quotient;
use crate::invariants::{center, delta, idempotents, jacobson, nilpotents, prime_radical, units};
use crate::ring::{Elem, FiniteRing, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateResult {
    pub name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param: Option<u64>,
    pub value: bool,
    /// Element ids showing why a universal statement fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Elem>>,
}

impl PredicateResult {
    fn universal(name: &'static str, param: Option<u64>, failure: Option<Vec<Elem>>) -> Self {
        PredicateResult {
            name,
            param,
            value: failure.is_none(),
            witness: failure,
        }
    }
}

fn first_failure(
    elems: impl IntoIterator<Item = Elem>,
    ok: impl Fn(Elem) -> bool,
) -> Option<Vec<Elem>> {
    elems.into_iter().find(|&a| !ok(a)).map(|a| vec![a])
}

fn require_param(name: &str, n: u64, min: u64) -> Result<()> {
    if n < min {
        Err(RingError::InvalidArgument(format!("{name} needs a parameter >= {min}, got {n}")))
    } else {
        Ok(())
    }
}

/// `u^n - 1` lies in `target` for every unit `u`.
fn units_power_in(
    ring: &FiniteRing,
    name: &'static str,
    n: u64,
    target: &Subset,
) -> Result<PredicateResult> {
    require_param(name, n, 1)?;
    let u = units(ring)?;
    let fail = first_failure(u.iter(), |v| target.contains(ring.sub(ring.pow(v, n), ring.one())));
    Ok(PredicateResult::universal(name, Some(n), fail))
}

/// n-ΔU: `u^n - 1 ∈ Δ(R)` for each unit `u`.
pub fn is_n_delta_u(ring: &FiniteRing, n: u64) -> Result<PredicateResult> {
    units_power_in(ring, "n-delta-u", n, delta(ring)?)
}

/// ΔU: `U(R) = 1 + Δ(R)`.
pub fn is_delta_u(ring: &FiniteRing) -> Result<PredicateResult> {
    let (u, d) = (units(ring)?, delta(ring)?);
    if let Some(a) = d.iter().find(|&a| !u.contains(ring.add(ring.one(), a))) {
        return Err(RingError::EngineBug(format!(
            "1 + #{a} is not a unit although #{a} is in Δ"
        )));
    }
    let fail = first_failure(u.iter(), |v| d.contains(ring.sub(v, ring.one())));
    Ok(PredicateResult::universal("delta-u", None, fail))
}

/// n-UJ: `u^n - 1 ∈ J(R)`.
pub fn is_n_uj(ring: &FiniteRing, n: u64) -> Result<PredicateResult> {
    units_power_in(ring, "n-uj", n, jacobson(ring)?)
}

/// n-UU: `u^n - 1` nilpotent.
pub fn is_n_uu(ring: &FiniteRing, n: u64) -> Result<PredicateResult> {
    units_power_in(ring, "n-uu", n, nilpotents(ring))
}

/// Every element is an idempotent plus a unit.
pub fn is_clean(ring: &FiniteRing) -> Result<PredicateResult> {
    let (u, id) = (units(ring)?, idempotents(ring));
    let fail = first_failure(ring.elements(), |a| id.iter().any(|e| u.contains(ring.sub(a, e))));
    Ok(PredicateResult::universal("clean", None, fail))
}

/// `aR` as a subset.
pub fn right_principal(ring: &FiniteRing, a: Elem) -> Subset {
    ring.subset_from(ring.elements().map(|x| ring.mul(a, x)))
}

/// For each `a` some idempotent `e ∈ aR` has `1 - e ∈ (1 - a)R`.
pub fn is_exchange(ring: &FiniteRing) -> Result<PredicateResult> {
    let id = idempotents(ring);
    let fail = first_failure(ring.elements(), |a| {
        let ar = right_principal(ring, a);
        let br = right_principal(ring, ring.one_minus(a));
        id.iter().any(|e| ar.contains(e) && br.contains(ring.one_minus(e)))
    });
    Ok(PredicateResult::universal("exchange", None, fail))
}

/// Von Neumann regular: `axa = a` for some `x`.
pub fn is_regular(ring: &FiniteRing) -> Result<PredicateResult> {
    let fail = first_failure(ring.elements(), |a| {
        ring.elements().any(|x| ring.mul(ring.mul(a, x), a) == a)
    });
    Ok(PredicateResult::universal("regular", None, fail))
}

/// `a ∈ a²R` for every `a`.
pub fn is_strongly_regular(ring: &FiniteRing) -> Result<PredicateResult> {
    let fail = first_failure(ring.elements(), |a| {
        let a2 = ring.mul(a, a);
        ring.elements().any(|x| ring.mul(a2, x) == a)
    });
    Ok(PredicateResult::universal("strongly-regular", None, fail))
}

/// `aua = a` for some unit `u`.
pub fn is_unit_regular(ring: &FiniteRing) -> Result<PredicateResult> {
    let u = units(ring)?;
    let fail = first_failure(ring.elements(), |a| {
        u.iter().any(|v| ring.mul(ring.mul(a, v), a) == a)
    });
    Ok(PredicateResult::universal("unit-regular", None, fail))
}

/// Distinct powers `a, a^2, ...` up to the first repetition.
fn distinct_powers(ring: &FiniteRing, a: Elem) -> Vec<Elem> {
    let mut seen = ring.empty_subset();
    let mut out = Vec::new();
    let mut x = a;
    while seen.insert(x) {
        out.push(x);
        x = ring.mul(x, a);
    }
    out
}

/// `a^n ∈ a^n R a^n` for some `n >= 1`. The condition depends only on the
/// power itself, so the distinct powers are all that need testing.
pub fn is_pi_regular(ring: &FiniteRing) -> Result<PredicateResult> {
    let fail = first_failure(ring.elements(), |a| {
        distinct_powers(ring, a)
            .into_iter()
            .any(|p| ring.elements().any(|x| ring.mul(ring.mul(p, x), p) == p))
    });
    Ok(PredicateResult::universal("pi-regular", None, fail))
}

/// `a^n ∈ a^(n+1) R` for some `n >= 1`.
pub fn is_strongly_pi_regular(ring: &FiniteRing) -> Result<PredicateResult> {
    let fail = first_failure(ring.elements(), |a| {
        distinct_powers(ring, a).into_iter().any(|p| {
            let next = ring.mul(p, a);
            ring.elements().any(|x| ring.mul(next, x) == p)
        })
    });
    Ok(PredicateResult::universal("strongly-pi-regular", None, fail))
}

/// `R/J(R)` regular and idempotents lift modulo `J(R)`. A failing witness is
/// a representative of the offending coset.
pub fn is_semiregular(ring: &FiniteRing) -> Result<PredicateResult> {
    let j = jacobson(ring)?;
    let (q, proj) = quotient(ring, j)?;
    let regular = is_regular(&q)?;
    let rep = |c: Elem| ring.elements().find(|&a| proj.apply(a) == c).expect("projection is onto");
    if let Some(w) = regular.witness {
        return Ok(PredicateResult::universal("semiregular", None, Some(vec![rep(w[0])])));
    }
    let lifted = proj.image(idempotents(ring));
    let fail = first_failure(idempotents(&q).iter(), |c| lifted.contains(c)).map(|w| vec![rep(w[0])]);
    Ok(PredicateResult::universal("semiregular", None, fail))
}

/// No nonzero nilpotents.
pub fn is_reduced(ring: &FiniteRing) -> Result<PredicateResult> {
    let fail = nilpotents(ring).iter().find(|&a| a != 0).map(|a| vec![a]);
    Ok(PredicateResult::universal("reduced", None, fail))
}

/// Every idempotent is central.
pub fn is_abelian(ring: &FiniteRing) -> Result<PredicateResult> {
    let c = center(ring);
    let fail = first_failure(idempotents(ring).iter(), |e| c.contains(e));
    Ok(PredicateResult::universal("abelian", None, fail))
}

/// The prime radical consists exactly of the nilpotent elements.
pub fn is_2_primal(ring: &FiniteRing) -> Result<PredicateResult> {
    let p = prime_radical(ring)?;
    let n = nilpotents(ring);
    let fail = n.difference(&p).iter().next().map(|a| vec![a]);
    if !p.is_subset_of(n) {
        return Err(RingError::EngineBug("prime radical is not nil".into()));
    }
    Ok(PredicateResult::universal("2-primal", None, fail))
}

/// `ab = 1` implies `ba = 1`.
pub fn is_dedekind_finite(ring: &FiniteRing) -> Result<PredicateResult> {
    let one = ring.one();
    let fail = ring.elements().find_map(|a| {
        ring.elements()
            .find(|&b| ring.mul(a, b) == one && ring.mul(b, a) != one)
            .map(|b| vec![a, b])
    });
    Ok(PredicateResult::universal("dedekind-finite", None, fail))
}

/// `x^m = x` for all `x`.
pub fn satisfies_power_identity(ring: &FiniteRing, m: u64) -> Result<PredicateResult> {
    require_param("power-identity", m, 2)?;
    let fail = first_failure(ring.elements(), |x| ring.pow(x, m) == x);
    Ok(PredicateResult::universal("power-identity", Some(m), fail))
}

/// Every nonzero principal right ideal `aR` contains a nonzero idempotent;
/// since every nonzero right ideal contains one of these, this decides the
/// statement for all right ideals.
pub fn right_ideals_have_idempotents(ring: &FiniteRing) -> Result<PredicateResult> {
    let id = idempotents(ring);
    let fail = first_failure(ring.elements().filter(|&a| a != 0), |a| {
        right_principal(ring, a).iter().any(|e| e != 0 && id.contains(e))
    });
    Ok(PredicateResult::universal("right-ideals-have-idempotents", None, fail))
}

/// Every unit of `R/I` is the image of a unit of `R`. The witness is a
/// representative of a unit coset with no unit in it.
pub fn units_lift(ring: &FiniteRing, ideal: &Subset) -> Result<PredicateResult> {
    let (q, proj) = quotient(ring, ideal)?;
    let lifted = proj.image(units(ring)?);
    let fail = first_failure(units(&q)?.iter(), |c| lifted.contains(c)).map(|w| {
        vec![ring.elements().find(|&a| proj.apply(a) == w[0]).expect("projection is onto")]
    });
    Ok(PredicateResult::universal("units-lift", None, fail))
}

/// Commutative with every nonzero element a unit.
pub fn is_field(ring: &FiniteRing) -> Result<PredicateResult> {
    let u = units(ring)?;
    let fail = first_failure(ring.elements().filter(|&a| a != 0), |a| u.contains(a));
    let value = fail.is_none() && ring.is_commutative() && !ring.is_degenerate();
    Ok(PredicateResult {
        name: "field",
        param: None,
        value,
        witness: fail,
    })
}

pub fn is_commutative(ring: &FiniteRing) -> Result<PredicateResult> {
    let fail = ring.elements().find_map(|a| {
        ring.elements()
            .find(|&b| ring.mul(a, b) != ring.mul(b, a))
            .map(|b| vec![a, b])
    });
    Ok(PredicateResult::universal("commutative", None, fail))
}

/// A registered predicate name.
#[derive(Debug, Clone, Copy)]
pub struct PredicateInfo {
    pub name: &'static str,
    /// Whether an integer parameter is required, and its least value.
    pub param_min: Option<u64>,
    pub summary: &'static str,
}

pub const PREDICATES: &[PredicateInfo] = &[
    PredicateInfo { name: "n-delta-u", param_min: Some(1), summary: "u^n - 1 in Delta(R) for every unit u" },
    PredicateInfo { name: "delta-u", param_min: None, summary: "U(R) = 1 + Delta(R)" },
    PredicateInfo { name: "n-uj", param_min: Some(1), summary: "u^n - 1 in J(R) for every unit u" },
    PredicateInfo { name: "n-uu", param_min: Some(1), summary: "u^n - 1 nilpotent for every unit u" },
    PredicateInfo { name: "clean", param_min: None, summary: "every element is idempotent + unit" },
    PredicateInfo { name: "exchange", param_min: None, summary: "e = e^2 in aR with 1 - e in (1 - a)R" },
    PredicateInfo { name: "regular", param_min: None, summary: "axa = a for some x" },
    PredicateInfo { name: "strongly-regular", param_min: None, summary: "a in a^2 R" },
    PredicateInfo { name: "unit-regular", param_min: None, summary: "aua = a for some unit u" },
    PredicateInfo { name: "pi-regular", param_min: None, summary: "a^n in a^n R a^n for some n" },
    PredicateInfo { name: "strongly-pi-regular", param_min: None, summary: "a^n in a^(n+1) R for some n" },
    PredicateInfo { name: "semiregular", param_min: None, summary: "R/J regular, idempotents lift" },
    PredicateInfo { name: "reduced", param_min: None, summary: "no nonzero nilpotents" },
    PredicateInfo { name: "abelian", param_min: None, summary: "idempotents are central" },
    PredicateInfo { name: "2-primal", param_min: None, summary: "prime radical = nilpotents" },
    PredicateInfo { name: "dedekind-finite", param_min: None, summary: "ab = 1 implies ba = 1" },
    PredicateInfo { name: "power-identity", param_min: Some(2), summary: "x^m = x for all x" },
    PredicateInfo { name: "right-ideals-have-idempotents", param_min: None, summary: "nonzero right ideals contain nonzero idempotents" },
    PredicateInfo { name: "field", param_min: None, summary: "commutative, nonzero elements invertible" },
    PredicateInfo { name: "commutative", param_min: None, summary: "ab = ba" },
];

/// Looks a predicate up; `_` and `-` are interchangeable in names.
pub fn lookup(name: &str) -> Option<&'static PredicateInfo> {
    let norm = name.replace('_', "-");
    PREDICATES.iter().find(|p| p.name == norm)
}

/// Evaluates a registered predicate by name.
pub fn evaluate(ring: &FiniteRing, name: &str, param: Option<u64>) -> Result<PredicateResult> {
    let info = lookup(name)
        .ok_or_else(|| RingError::InvalidArgument(format!("unknown predicate {name}")))?;
    let n = match (info.param_min, param) {
        (Some(_), Some(n)) => n,
        (Some(_), None) => {
            return Err(RingError::InvalidArgument(format!("{} needs a parameter", info.name)))
        }
        (None, Some(_)) => {
            return Err(RingError::InvalidArgument(format!("{} takes no parameter", info.name)))
        }
        (None, None) => 0,
    };
    match info.name {
        "n-delta-u" => is_n_delta_u(ring, n),
        "delta-u" => is_delta_u(ring),
        "n-uj" => is_n_uj(ring, n),
        "n-uu" => is_n_uu(ring, n),
        "clean" => is_clean(ring),
        "exchange" => is_exchange(ring),
        "regular" => is_regular(ring),
        "strongly-regular" => is_strongly_regular(ring),
        "unit-regular" => is_unit_regular(ring),
        "pi-regular" => is_pi_regular(ring),
        "strongly-pi-regular" => is_strongly_pi_regular(ring),
        "semiregular" => is_semiregular(ring),
        "reduced" => is_reduced(ring),
        "abelian" => is_abelian(ring),
        "2-primal" => is_2_primal(ring),
        "dedekind-finite" => is_dedekind_finite(ring),
        "power-identity" => satisfies_power_identity(ring, n),
        "right-ideals-have-idempotents" => right_ideals_have_idempotents(ring),
        "field" => is_field(ring),
        "commutative" => is_commutative(ring),
        other => unreachable!("registered predicate {other} has no evaluator"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{gf, group_ring, matrix, product, upper_triangular, zmod, GroupTable};

    fn z(n: u64) -> FiniteRing {
        zmod(n).unwrap()
    }

    fn m2() -> FiniteRing {
        matrix(2, &z(2)).unwrap()
    }

    #[test]
    fn n_delta_u_examples() {
        assert!(is_n_delta_u(&z(6), 2).unwrap().value);
        let r = is_n_delta_u(&m2(), 3).unwrap();
        assert!(!r.value);
        // The witness has order 2 (a transvection): u^3 - 1 = u - 1 != 0.
        let u = r.witness.unwrap()[0];
        assert_eq!(m2().pow(u, 2), m2().one());
        assert!(is_n_delta_u(&gf(2, 2).unwrap(), 3).unwrap().value);
        assert!(is_n_delta_u(&m2(), 6).unwrap().value);
        assert!(is_n_delta_u(&z(6), 0).is_err());
    }

    #[test]
    fn delta_u_examples() {
        assert!(is_delta_u(&z(4)).unwrap().value);
        let r = is_delta_u(&z(6)).unwrap();
        assert_eq!(r.witness, Some(vec![5]));
        assert!(is_delta_u(&z(2)).unwrap().value);
        for ring in [z(4), z(6), z(9), m2()] {
            assert_eq!(is_delta_u(&ring).unwrap().value, is_n_delta_u(&ring, 1).unwrap().value);
        }
    }

    #[test]
    fn uj_uu() {
        assert!(is_n_uj(&z(6), 2).unwrap().value);
        assert!(is_n_uu(&gf(2, 2).unwrap(), 3).unwrap().value);
        let rg = group_ring(&z(2), &GroupTable::cyclic(3).unwrap()).unwrap();
        assert!(!is_n_uj(&rg, 2).unwrap().value);
    }

    #[test]
    fn clean_and_exchange() {
        for r in [z(4), z(6), m2(), upper_triangular(2, &z(3)).unwrap()] {
            assert!(is_clean(&r).unwrap().value);
            assert!(is_exchange(&r).unwrap().value);
        }
    }

    #[test]
    fn regularity() {
        let f = gf(3, 2).unwrap();
        assert!(is_regular(&f).unwrap().value);
        assert!(is_strongly_regular(&f).unwrap().value);
        assert!(is_unit_regular(&f).unwrap().value);
        for p in [is_regular(&z(4)), is_strongly_regular(&z(4)), is_unit_regular(&z(4))] {
            assert_eq!(p.unwrap().witness, Some(vec![2]));
        }
        assert!(is_regular(&m2()).unwrap().value);
        let s = is_strongly_regular(&m2()).unwrap();
        assert!(!s.value);
        // Idempotents pass; the first failure is a square-zero matrix.
        let w = s.witness.unwrap()[0];
        assert_eq!(m2().mul(w, w), 0);
    }

    #[test]
    fn pi_regularity_always_holds() {
        for r in [z(8), z(12), m2(), upper_triangular(2, &z(2)).unwrap()] {
            assert!(is_pi_regular(&r).unwrap().value);
            assert!(is_strongly_pi_regular(&r).unwrap().value);
            assert!(is_semiregular(&r).unwrap().value);
            assert!(is_dedekind_finite(&r).unwrap().value);
        }
    }

    #[test]
    fn structural_predicates() {
        assert!(is_reduced(&z(6)).unwrap().value);
        assert!(!is_reduced(&z(4)).unwrap().value);
        let a = is_abelian(&m2()).unwrap();
        assert!(!a.value);
        let e = a.witness.unwrap()[0];
        assert_eq!(m2().mul(e, e), e);
        assert!(is_2_primal(&z(8)).unwrap().value);
        assert!(!is_2_primal(&m2()).unwrap().value);
    }

    #[test]
    fn power_identity() {
        let b = product(&[z(2), z(2), z(2)]).unwrap();
        assert!(satisfies_power_identity(&b, 2).unwrap().value);
        assert!(satisfies_power_identity(&gf(2, 2).unwrap(), 4).unwrap().value);
        assert_eq!(satisfies_power_identity(&z(4), 4).unwrap().witness, Some(vec![2]));
        assert!(satisfies_power_identity(&z(4), 1).is_err());
    }

    #[test]
    fn right_ideals() {
        assert!(right_ideals_have_idempotents(&gf(5, 1).unwrap()).unwrap().value);
        assert_eq!(right_ideals_have_idempotents(&z(4)).unwrap().witness, Some(vec![2]));
        assert!(right_ideals_have_idempotents(&m2()).unwrap().value);
    }

    #[test]
    fn lifting_units() {
        let r = z(4);
        assert!(units_lift(&r, jacobson(&r).unwrap()).unwrap().value);
        let z6 = z(6);
        assert!(units_lift(&z6, &z6.subset_from([0, 3])).unwrap().value);
        let rg = group_ring(&z(2), &GroupTable::cyclic(2).unwrap()).unwrap();
        let aug = crate::constructors::augmentation_ideal(&rg).unwrap();
        assert!(units_lift(&rg, &aug).unwrap().value);
        // Finite rings are semilocal, so units lift modulo every ideal.
        let z15 = z(15);
        assert!(units_lift(&z15, &z15.subset_from([0, 5, 10])).unwrap().value);
    }

    #[test]
    fn registry() {
        assert!(lookup("n_delta_u").is_some());
        assert!(lookup("strongly-pi-regular").is_some());
        assert!(lookup("nope").is_none());
        assert!(evaluate(&z(6), "n-delta-u", Some(2)).unwrap().value);
        assert!(evaluate(&z(6), "n-delta-u", None).is_err());
        assert!(evaluate(&z(6), "reduced", Some(2)).is_err());
        assert!(evaluate(&z(6), "field", None).is_ok_and(|r| !r.value));
        for p in PREDICATES {
            let param = p.param_min.map(|m| m.max(2));
            assert!(evaluate(&z(4), p.name, param).is_ok(), "{}", p.name);
        }
    }
}
