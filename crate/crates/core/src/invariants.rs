//! Distinguished subsets and numeric invariants, each computed from its
//! definition and cross-checked against an independent route where one exists.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Result, RingError};
use crate::ideal::{all_ideals, quotient, ring_generators, IDEAL_CAP};
use crate::ring::{Elem, FiniteRing, Subset};
use crate::subring::unit_subring;

/// Rings up to this size also run the quadratic cross-checks.
const CROSS_CHECK_CAP: usize = 256;

/// Units together with their inverses and multiplicative orders.
#[derive(Debug, Clone)]
pub struct UnitData {
    pub set: Subset,
    /// `inverse[a]` for units, `Elem::MAX` otherwise.
    pub inverse: Vec<Elem>,
    /// Multiplicative order for units, `0` otherwise.
    pub order: Vec<u64>,
}

/// Order of `a` if some power of `a` is `1`. Powers of a non-unit are
/// eventually periodic without ever reaching `1`; Brent's cycle search stops
/// on the first repeat.
fn power_order(ring: &FiniteRing, a: Elem) -> Option<u64> {
    let one = ring.one();
    let mut tortoise = a;
    let mut hare = a;
    let mut k: u64 = 1;
    let (mut power, mut lam) = (1u64, 0u64);
    loop {
        if hare == one {
            return Some(k);
        }
        if power == lam {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = ring.mul(hare, a);
        k += 1;
        lam += 1;
        if hare == tortoise && hare != one {
            return None;
        }
    }
}

fn compute_units(ring: &FiniteRing) -> Result<UnitData> {
    let n = ring.size();
    let mut set = ring.empty_subset();
    let mut inverse = vec![Elem::MAX; n];
    let mut order = vec![0u64; n];
    if ring.is_degenerate() {
        set.insert(0);
        inverse[0] = 0;
        order[0] = 1;
        return Ok(UnitData { set, inverse, order });
    }
    for a in ring.elements() {
        if let Some(k) = power_order(ring, a) {
            let inv = ring.pow(a, k - 1);
            if ring.mul(a, inv) != ring.one() || ring.mul(inv, a) != ring.one() {
                return Err(RingError::EngineBug(format!("inverse of #{a} is not two-sided")));
            }
            set.insert(a);
            inverse[a as usize] = inv;
            order[a as usize] = k;
        }
    }
    if n <= CROSS_CHECK_CAP {
        // Definition: left multiplication by a unit is a bijection.
        for a in ring.elements() {
            let mut seen = ring.empty_subset();
            for x in ring.elements() {
                seen.insert(ring.mul(a, x));
            }
            if (seen.len() == n) != set.contains(a) {
                return Err(RingError::EngineBug(format!(
                    "unit test for #{a} disagrees with left bijectivity"
                )));
            }
        }
    }
    Ok(UnitData { set, inverse, order })
}

pub fn unit_data(ring: &FiniteRing) -> Result<&UnitData> {
    ring.cache()
        .units
        .get_or_init(|| compute_units(ring))
        .as_ref()
        .map_err(Clone::clone)
}

/// `U(R)`.
pub fn units(ring: &FiniteRing) -> Result<&Subset> {
    Ok(&unit_data(ring)?.set)
}

/// Multiplicative order of each unit.
pub fn unit_orders(ring: &FiniteRing) -> Result<BTreeMap<Elem, u64>> {
    let d = unit_data(ring)?;
    Ok(d.set.iter().map(|u| (u, d.order[u as usize])).collect())
}

/// `{r : 1 - f(x, r) is a unit for every x in xs}`.
fn quasi_regular(
    ring: &FiniteRing,
    u: &Subset,
    xs: &[Elem],
    f: impl Fn(Elem, Elem) -> Elem,
) -> Subset {
    ring.subset_where(|r| xs.iter().all(|&x| u.contains(ring.one_minus(f(x, r)))))
}

fn compute_jacobson(ring: &FiniteRing) -> Result<Subset> {
    let u = units(ring)?;
    let all: Vec<Elem> = ring.elements().collect();
    let left = quasi_regular(ring, u, &all, |a, r| ring.mul(a, r));
    let right = quasi_regular(ring, u, &all, |a, r| ring.mul(r, a));
    if left != right {
        return Err(RingError::EngineBug(format!(
            "left and right quasi-regular radicals differ on {}",
            ring.provenance()
        )));
    }
    Ok(left)
}

/// `J(R) = {r : 1 - ar is a unit for all a}`, cross-checked against `1 - ra`.
pub fn jacobson(ring: &FiniteRing) -> Result<&Subset> {
    ring.cache()
        .jacobson
        .get_or_init(|| compute_jacobson(ring))
        .as_ref()
        .map_err(Clone::clone)
}

fn compute_delta(ring: &FiniteRing) -> Result<Subset> {
    let u = units(ring)?;
    let us = u.to_vec();
    let d = quasi_regular(ring, u, &us, |v, a| ring.mul(v, a));
    let d_right = quasi_regular(ring, u, &us, |v, a| ring.mul(a, v));
    if d != d_right {
        return Err(RingError::EngineBug(format!(
            "1 - ua and 1 - au give different sets on {}",
            ring.provenance()
        )));
    }
    let via_subring = delta_via_unit_subring(ring)?;
    if d != via_subring {
        return Err(RingError::EngineBug(format!(
            "definitional set differs from J of the unit subring on {}",
            ring.provenance()
        )));
    }
    Ok(d)
}

/// `Δ(R)` as the image of `J(T)`, `T` the subring generated by the units.
pub fn delta_via_unit_subring(ring: &FiniteRing) -> Result<Subset> {
    let t = unit_subring(ring)?;
    if t.sub.size() == ring.size() {
        return Ok(jacobson(ring)?.clone());
    }
    Ok(t.image(jacobson(&t.sub)?))
}

/// `Δ(R) = {a : 1 - ua is a unit for every unit u}`.
pub fn delta(ring: &FiniteRing) -> Result<&Subset> {
    ring.cache()
        .delta
        .get_or_init(|| compute_delta(ring))
        .as_ref()
        .map_err(Clone::clone)
}

/// Least `m` with `2^m >= size`: any nilpotent element then has `a^(2^m) = 0`.
fn nil_squarings(size: usize) -> u32 {
    usize::BITS - (size.max(1) - 1).leading_zeros()
}

pub fn is_nilpotent(ring: &FiniteRing, a: Elem) -> bool {
    let mut x = a;
    for _ in 0..nil_squarings(ring.size()) {
        if x == ring.zero() {
            return true;
        }
        x = ring.mul(x, x);
    }
    x == ring.zero()
}

/// `Nil(R)`.
pub fn nilpotents(ring: &FiniteRing) -> &Subset {
    ring.cache()
        .nilpotents
        .get_or_init(|| ring.subset_where(|a| is_nilpotent(ring, a)))
}

/// `Id(R)`.
pub fn idempotents(ring: &FiniteRing) -> &Subset {
    ring.cache()
        .idempotents
        .get_or_init(|| ring.subset_where(|a| ring.mul(a, a) == a))
}

/// `C(R)`; commuting with a generating set is enough.
pub fn center(ring: &FiniteRing) -> &Subset {
    ring.cache().center.get_or_init(|| {
        let gens = ring_generators(ring);
        ring.subset_where(|a| gens.iter().all(|&g| ring.mul(a, g) == ring.mul(g, a)))
    })
}

/// Literal intersection of all prime ideals; `P` is prime when `R/P` is a
/// prime ring (`aRb = 0` forces `a = 0` or `b = 0`).
pub fn prime_ideal_intersection(ring: &FiniteRing) -> Result<Subset> {
    let mut acc = ring.full_subset();
    for p in all_ideals(ring)? {
        if p.len() == ring.size() {
            continue;
        }
        let (q, _) = quotient(ring, &p)?;
        let nonzero: Vec<Elem> = q.elements().filter(|&x| x != 0).collect();
        let prime = nonzero.iter().all(|&a| {
            nonzero
                .iter()
                .all(|&b| q.elements().any(|r| q.mul(q.mul(a, r), b) != 0))
        });
        if prime {
            acc = acc.intersection(&p);
        }
    }
    Ok(acc)
}

/// Prime radical. A finite ring is artinian, so it equals `J(R)`; for rings
/// within the ideal cap the prime-ideal intersection is computed as well and
/// must agree.
pub fn prime_radical(ring: &FiniteRing) -> Result<Subset> {
    let j = jacobson(ring)?.clone();
    if ring.size() <= IDEAL_CAP {
        let oracle = prime_ideal_intersection(ring)?;
        if oracle != j {
            return Err(RingError::EngineBug(format!(
                "prime-ideal intersection differs from J on {}",
                ring.provenance()
            )));
        }
    }
    Ok(j)
}

/// Exponents `n` with `u^n - 1` in `Δ(R)` for every unit `u`, up to the lcm
/// `L` of the unit orders (`u^L = 1`, so `L` always qualifies).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaUExponent {
    pub n_min: u64,
    pub lcm: u64,
    pub valid: Vec<u64>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn delta_u_exponent(ring: &FiniteRing) -> Result<DeltaUExponent> {
    let d = delta(ring)?;
    let data = unit_data(ring)?;
    // good[u][k]: u^k - 1 in Δ, for k modulo ord(u).
    let mut good: Vec<(u64, Vec<bool>)> = Vec::new();
    let mut l = 1u64;
    for u in data.set.iter() {
        let ord = data.order[u as usize];
        l = lcm(l, ord);
        let mut row = Vec::with_capacity(ord as usize);
        let mut x = ring.one();
        for _ in 0..ord {
            row.push(d.contains(ring.sub(x, ring.one())));
            x = ring.mul(x, u);
        }
        good.push((ord, row));
    }
    let valid: Vec<u64> = (1..=l)
        .filter(|&n| good.iter().all(|(ord, row)| row[(n % ord) as usize]))
        .collect();
    let n_min = *valid
        .first()
        .ok_or_else(|| RingError::EngineBug("lcm of unit orders is not a valid exponent".into()))?;
    Ok(DeltaUExponent {
        n_min,
        lcm: l,
        valid,
    })
}

/// All invariants of one ring.
#[derive(Debug, Clone)]
pub struct InvariantBundle {
    pub units: Subset,
    pub idempotents: Subset,
    pub nilpotents: Subset,
    pub center: Subset,
    pub jacobson: Subset,
    pub delta: Subset,
    pub prime_radical: Subset,
    pub unit_orders: BTreeMap<Elem, u64>,
    pub delta_u_exponent: DeltaUExponent,
}

impl InvariantBundle {
    pub fn compute(ring: &FiniteRing) -> Result<Self> {
        Ok(InvariantBundle {
            units: units(ring)?.clone(),
            idempotents: idempotents(ring).clone(),
            nilpotents: nilpotents(ring).clone(),
            center: center(ring).clone(),
            jacobson: jacobson(ring)?.clone(),
            delta: delta(ring)?.clone(),
            prime_radical: prime_radical(ring)?,
            unit_orders: unit_orders(ring)?,
            delta_u_exponent: delta_u_exponent(ring)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{gf, group_ring, matrix, product, upper_triangular, zmod, GroupTable};
    use crate::ideal::is_ideal;

    fn z(n: u64) -> FiniteRing {
        zmod(n).unwrap()
    }

    fn gcd_oracle(a: u64, b: u64) -> u64 {
        (1..=a.max(b)).filter(|d| a % d == 0 && b % d == 0).max().unwrap()
    }

    #[test]
    fn zmod_units_match_gcd() {
        for n in 2..=30u64 {
            let r = z(n);
            let expect: Vec<Elem> = (0..n).filter(|&a| gcd_oracle(a, n) == 1).map(|a| a as Elem).collect();
            assert_eq!(units(&r).unwrap().to_vec(), expect, "Z{n}");
        }
    }

    #[test]
    fn m2f2_units_and_orders() {
        let m = matrix(2, &z(2)).unwrap();
        // The six invertible 0/1 matrices, row-major bits a b c d.
        let expect: Vec<Elem> = vec![0b0110, 0b0111, 0b1001, 0b1011, 0b1101, 0b1110];
        assert_eq!(units(&m).unwrap().to_vec(), expect);
        let mut orders: Vec<u64> = unit_orders(&m).unwrap().into_values().collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
        assert_eq!(center(&m).to_vec(), vec![0, 9]);
        assert_eq!(delta(&m).unwrap().to_vec(), vec![0]);
        assert!(is_ideal(&m, delta(&m).unwrap()).unwrap());
        let e = delta_u_exponent(&m).unwrap();
        assert_eq!((e.n_min, e.lcm, e.valid.clone()), (6, 6, vec![6]));
    }

    #[test]
    fn zmod_radicals() {
        let r4 = z(4);
        assert_eq!(jacobson(&r4).unwrap().to_vec(), vec![0, 2]);
        assert_eq!(delta(&r4).unwrap().to_vec(), vec![0, 2]);
        assert_eq!(nilpotents(&r4).to_vec(), vec![0, 2]);
        assert_eq!(prime_radical(&r4).unwrap().to_vec(), vec![0, 2]);
        assert_eq!(delta_u_exponent(&r4).unwrap().n_min, 1);

        let r6 = z(6);
        assert_eq!(delta(&r6).unwrap().to_vec(), vec![0]);
        assert!(!delta(&r6).unwrap().contains(2));
        assert_eq!(idempotents(&r6).to_vec(), vec![0, 1, 3, 4]);
        assert_eq!(delta_u_exponent(&r6).unwrap().n_min, 2);
        assert_eq!(unit_orders(&r6).unwrap().into_values().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn fields_have_trivial_radicals() {
        for (p, k) in [(2, 2), (3, 2), (2, 3)] {
            let f = gf(p, k).unwrap();
            assert_eq!(jacobson(&f).unwrap().len(), 1);
            assert_eq!(delta(&f).unwrap().len(), 1);
            assert_eq!(prime_radical(&f).unwrap().len(), 1);
            assert_eq!(units(&f).unwrap().len(), f.size() - 1);
        }
    }

    #[test]
    fn upper_triangular_radical() {
        let t = upper_triangular(2, &z(2)).unwrap();
        // [[0, b], [0, 0]]: coordinates (a, b, c) -> 4a + 2b + c.
        assert_eq!(jacobson(&t).unwrap().to_vec(), vec![0, 2]);
    }

    #[test]
    fn group_ring_prime_radical() {
        let rg = group_ring(&z(2), &GroupTable::cyclic(2).unwrap()).unwrap();
        assert_eq!(prime_radical(&rg).unwrap().to_vec(), vec![0, 3]);
    }

    #[test]
    fn radical_inside_delta() {
        let t = upper_triangular(2, &z(2)).unwrap();
        let d = delta(&t).unwrap();
        let u = units(&t).unwrap();
        assert!(jacobson(&t).unwrap().is_subset_of(d));
        assert!(d.iter().all(|a| u.contains(t.one_minus(a))));
    }

    #[test]
    fn product_invariants_split() {
        let (a, b) = (z(4), z(3));
        let p = product(&[a.clone(), b.clone()]).unwrap();
        let split = |x: Elem| (x / 3, x % 3);
        for x in p.elements() {
            let (s, t) = split(x);
            assert_eq!(units(&p).unwrap().contains(x), units(&a).unwrap().contains(s) && units(&b).unwrap().contains(t));
            assert_eq!(delta(&p).unwrap().contains(x), delta(&a).unwrap().contains(s) && delta(&b).unwrap().contains(t));
        }
    }

    #[test]
    fn nil_squarings_bound() {
        assert_eq!(nil_squarings(1), 0);
        assert_eq!(nil_squarings(2), 1);
        assert_eq!(nil_squarings(4), 2);
        assert_eq!(nil_squarings(5), 3);
        let r = z(64);
        assert_eq!(nilpotents(&r).len(), 32);
    }
}
