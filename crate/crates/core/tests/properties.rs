use proptest::prelude::*;

use ringlab_core::axioms::verify_axioms_with;
use ringlab_core::expr::{eval_str, parse_ring_expr};
use ringlab_core::invariants::{delta, delta_u_exponent, delta_via_unit_subring, jacobson, units};
use ringlab_core::predicates::is_n_delta_u;
use ringlab_core::ring::FiniteRing;

fn small_ring() -> impl Strategy<Value = String> {
    let base = prop_oneof![
        (2u64..=12).prop_map(|n| format!("Zmod({n})")),
        prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]).prop_map(|q| format!("GF({q})")),
    ];
    base.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("Prod({a}, {b})")),
            inner.clone().prop_map(|a| format!("UT(2, {a})")),
            inner.clone().prop_map(|a| format!("Triv({a})")),
            (inner.clone(), 2u64..=3).prop_map(|(a, k)| format!("PolyQ({a}, id, {k})")),
            inner.clone().prop_map(|a| format!("GrpRing({a}, C(2))")),
        ]
    })
}

/// Expressions whose ring stays small enough for exhaustive checks.
fn ring_under(cap: usize) -> impl Strategy<Value = (String, FiniteRing)> {
    small_ring().prop_filter_map("ring too large", move |text| {
        let (_, r) = eval_str(&text).ok()?;
        (r.size() <= cap).then_some((text, r))
    })
}

fn ndu(r: &FiniteRing, n: u64) -> bool {
    is_n_delta_u(r, n).unwrap().value
}

fn primes_of(m: u64) -> Vec<u64> {
    (2..=m).filter(|p| m % p == 0 && (2..*p).all(|d| p % d != 0)).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructed_rings_satisfy_axioms((text, r) in ring_under(64)) {
        let rep = verify_axioms_with(&r, 64, 0);
        prop_assert!(rep.passed(), "{text}: {:?}", rep.violations);
    }

    #[test]
    fn valid_exponents_closed_under_multiples((text, r) in ring_under(256), n in 1u64..=12, k in 2u64..=5) {
        if ndu(&r, n) {
            prop_assert!(ndu(&r, k * n), "{text} is {n}-ΔU but not {}-ΔU", k * n);
        }
    }

    #[test]
    fn least_exponent_is_least((text, r) in ring_under(256)) {
        let e = delta_u_exponent(&r).unwrap();
        prop_assert!(ndu(&r, e.n_min), "{text}");
        for n in 1..e.n_min {
            prop_assert!(!ndu(&r, n), "{text} is {n}-ΔU below {}", e.n_min);
        }
        prop_assert_eq!(e.lcm % e.n_min, 0);
    }

    #[test]
    fn delta_routes_agree((text, r) in ring_under(256)) {
        let d = delta(&r).unwrap();
        prop_assert_eq!(&delta_via_unit_subring(&r).unwrap(), d, "{}", text);
        prop_assert!(jacobson(&r).unwrap().is_subset_of(d));
        // 1 + Δ consists of units.
        let u = units(&r).unwrap();
        for x in d.iter() {
            prop_assert!(u.contains(r.add(r.one(), x)));
        }
    }

    #[test]
    fn products_split(a in 2u64..=16, b in 2u64..=16, n in 1u64..=10) {
        let (_, p) = eval_str(&format!("Prod(Zmod({a}), Zmod({b}))")).unwrap();
        let (_, ra) = eval_str(&format!("Zmod({a})")).unwrap();
        let (_, rb) = eval_str(&format!("Zmod({b})")).unwrap();
        prop_assert_eq!(ndu(&p, n), ndu(&ra, n) && ndu(&rb, n));
    }

    #[test]
    fn integers_mod_m_match_arithmetic(m in 2u64..=60, n in 1u64..=12) {
        // Δ(Z/m) = J(Z/m) = rad(m)Z/m: u^n - 1 must vanish mod every prime divisor.
        let (_, r) = eval_str(&format!("Zmod({m})")).unwrap();
        let ps = primes_of(m);
        let expect = (1..m)
            .filter(|&u| gcd(u, m) == 1)
            .all(|u| ps.iter().all(|&p| (1..=n).fold(1, |acc, _| acc * u % p) == 1 % p));
        prop_assert_eq!(ndu(&r, n), expect);
    }

    #[test]
    fn printed_expressions_reparse(text in small_ring()) {
        let e = parse_ring_expr(&text).unwrap();
        let printed = e.to_string();
        prop_assert_eq!(&printed, &text);
        prop_assert_eq!(parse_ring_expr(&printed).unwrap(), e);
    }

    #[test]
    fn finite_fields_follow_divisibility(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32]), n in 1u64..=40) {
        let (_, f) = eval_str(&format!("GF({q})")).unwrap();
        prop_assert_eq!(ndu(&f, n), n % (q - 1) == 0);
    }
}
