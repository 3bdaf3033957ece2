//! Two-sided ideals, quotients and the additive-span machinery behind them.

use std::any::Any;
use std::collections::HashSet;

use crate::error::{Result, RingError};
use crate::ring::{Elem, FiniteRing, RingBackend, RingHom, Subset};

/// Ideal enumeration refuses rings larger than this.
pub const IDEAL_CAP: usize = 256;

/// An additive subgroup grown one generator at a time.
pub(crate) struct AdditiveSpan<'r> {
    ring: &'r FiniteRing,
    pub set: Subset,
    members: Vec<Elem>,
}

impl<'r> AdditiveSpan<'r> {
    pub fn new(ring: &'r FiniteRing) -> Self {
        let mut set = ring.empty_subset();
        set.insert(ring.zero());
        AdditiveSpan {
            ring,
            set,
            members: vec![ring.zero()],
        }
    }

    pub fn from_subgroup(ring: &'r FiniteRing, group: &Subset) -> Self {
        AdditiveSpan {
            ring,
            set: group.clone(),
            members: group.to_vec(),
        }
    }

    /// Adds `x` to the subgroup; returns false when it was already inside.
    pub fn absorb(&mut self, x: Elem) -> bool {
        if self.set.contains(x) {
            return false;
        }
        let old = self.members.clone();
        let mut multiple = x;
        // H + <x> is the union of the cosets H + kx, k = 0..t-1, where t is
        // the least positive k with kx in H.
        while !self.set.contains(multiple) {
            for &h in &old {
                let y = self.ring.add(h, multiple);
                if self.set.insert(y) {
                    self.members.push(y);
                }
            }
            multiple = self.ring.add(multiple, x);
        }
        true
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }
}

/// Greedy generating set of `ring` as a unital ring (cached).
pub fn ring_generators(ring: &FiniteRing) -> &[Elem] {
    ring.cache().generators.get_or_init(|| {
        let mut builder = crate::subring::SubringBuilder::new(ring);
        builder.add(ring.one());
        let mut gens = Vec::new();
        for a in ring.elements() {
            if builder.len() == ring.size() {
                break;
            }
            if !builder.contains(a) {
                gens.push(a);
                builder.add(a);
            }
        }
        gens
    })
}

/// Greedy generating set of the additive group.
pub fn additive_generators(ring: &FiniteRing) -> Vec<Elem> {
    let mut span = AdditiveSpan::new(ring);
    let mut gens = Vec::new();
    for a in ring.elements() {
        if span.len() == ring.size() {
            break;
        }
        if span.absorb(a) {
            gens.push(a);
        }
    }
    gens
}

fn is_additive_subgroup(ring: &FiniteRing, s: &Subset) -> bool {
    s.contains(ring.zero())
        && s.iter().all(|a| {
            s.contains(ring.neg(a)) && s.iter().all(|b| s.contains(ring.add(a, b)))
        })
}

/// True iff `s` is an additive subgroup closed under multiplication by `R`
/// on both sides.
pub fn is_ideal(ring: &FiniteRing, s: &Subset) -> Result<bool> {
    s.ensure_in(ring)?;
    if !is_additive_subgroup(ring, s) {
        return Ok(false);
    }
    let gens = ring_generators(ring);
    Ok(s.iter().all(|a| {
        gens.iter()
            .all(|&g| s.contains(ring.mul(g, a)) && s.contains(ring.mul(a, g)))
    }))
}

/// Smallest two-sided ideal containing `gens`.
pub fn ideal_generated(ring: &FiniteRing, gens: &[Elem]) -> Subset {
    closure(ring, AdditiveSpan::new(ring), gens)
}

fn closure(ring: &FiniteRing, mut span: AdditiveSpan<'_>, seeds: &[Elem]) -> Subset {
    let rgens = ring_generators(ring);
    let mut queue: Vec<Elem> = seeds.to_vec();
    while let Some(x) = queue.pop() {
        if span.absorb(x) {
            // Multiplying additive generators by ring generators suffices,
            // by distributivity.
            for &g in rgens {
                queue.push(ring.mul(g, x));
                queue.push(ring.mul(x, g));
            }
        }
    }
    span.set
}

/// `I + J` for ideals `I`, `J`.
pub fn ideal_sum(ring: &FiniteRing, i: &Subset, j: &Subset) -> Subset {
    let mut span = AdditiveSpan::from_subgroup(ring, i);
    for x in j.iter() {
        span.absorb(x);
    }
    span.set
}

/// Product ideal `IJ`: the ideal generated by all products `ij`.
pub fn ideal_product(ring: &FiniteRing, i: &Subset, j: &Subset) -> Subset {
    let mut products = Vec::new();
    let mut seen = ring.empty_subset();
    for a in i.iter() {
        for b in j.iter() {
            let p = ring.mul(a, b);
            if seen.insert(p) {
                products.push(p);
            }
        }
    }
    ideal_generated(ring, &products)
}

/// Every two-sided ideal, sorted by size and then by membership.
pub fn all_ideals(ring: &FiniteRing) -> Result<Vec<Subset>> {
    if ring.size() > IDEAL_CAP {
        return Err(RingError::CapExceeded {
            what: "all_ideals",
            size: ring.size(),
            cap: IDEAL_CAP,
        });
    }
    let mut seen: HashSet<Subset> = HashSet::new();
    let mut list: Vec<Subset> = Vec::new();
    for a in ring.elements() {
        let p = ideal_generated(ring, &[a]);
        if seen.insert(p.clone()) {
            list.push(p);
        }
    }
    // Close under pairwise sums.
    let mut frontier = 0;
    while frontier < list.len() {
        let end = list.len();
        for i in frontier..end {
            for j in 0..i {
                let s = ideal_sum(ring, &list[i], &list[j]);
                if seen.insert(s.clone()) {
                    list.push(s);
                }
            }
        }
        frontier = end;
    }
    list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.to_vec().cmp(&b.to_vec())));
    Ok(list)
}

/// Backend of `R / I`: cosets indexed in order of their least member.
pub struct QuotientBackend {
    parent: FiniteRing,
    reps: Vec<Elem>,
    class_of: Vec<Elem>,
    one: Elem,
}

impl QuotientBackend {
    pub fn parent(&self) -> &FiniteRing {
        &self.parent
    }

    pub fn representative(&self, coset: Elem) -> Elem {
        self.reps[coset as usize]
    }

    pub fn class_of(&self, a: Elem) -> Elem {
        self.class_of[a as usize]
    }
}

impl RingBackend for QuotientBackend {
    fn size(&self) -> usize {
        self.reps.len()
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.class_of[self
            .parent
            .add(self.reps[a as usize], self.reps[b as usize]) as usize]
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.class_of[self
            .parent
            .mul(self.reps[a as usize], self.reps[b as usize]) as usize]
    }
    fn neg(&self, a: Elem) -> Elem {
        self.class_of[self.parent.neg(self.reps[a as usize]) as usize]
    }
    fn one(&self) -> Elem {
        self.one
    }
    fn label(&self, a: Elem) -> String {
        format!("[{}]", self.parent.label(self.reps[a as usize]))
    }
    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// Coset ring `R / I` with its canonical projection.
pub fn quotient(ring: &FiniteRing, ideal: &Subset) -> Result<(FiniteRing, RingHom)> {
    quotient_named(ring, ideal, None)
}

pub(crate) fn quotient_named(
    ring: &FiniteRing,
    ideal: &Subset,
    name: Option<String>,
) -> Result<(FiniteRing, RingHom)> {
    if !is_ideal(ring, ideal)? {
        return Err(RingError::NotAnIdeal);
    }
    let members = ideal.to_vec();
    let mut class_of = vec![Elem::MAX; ring.size()];
    let mut reps = Vec::new();
    for a in ring.elements() {
        if class_of[a as usize] != Elem::MAX {
            continue;
        }
        let c = reps.len() as Elem;
        reps.push(a);
        for &i in &members {
            class_of[ring.add(a, i) as usize] = c;
        }
    }
    let one = class_of[ring.one() as usize];
    let provenance = name.unwrap_or_else(|| {
        format!("{} / <ideal of size {}>", ring.provenance(), members.len())
    });
    let q = FiniteRing::new(
        QuotientBackend {
            parent: ring.clone(),
            reps,
            class_of: class_of.clone(),
            one,
        },
        provenance,
    );
    let proj = RingHom::new(ring.clone(), q.clone(), class_of)?;
    debug_assert!(proj.is_surjective());
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_based_hom_check() {
        let big = zmod(2048).unwrap();
        let two = zmod(2).unwrap();
        assert_eq!(additive_generators(&big), vec![1]);
        let good: Vec<Elem> = big.elements().map(|x| x % 2).collect();
        assert!(RingHom::new(big.clone(), two.clone(), good.clone()).is_ok());
        let mut bad = good;
        bad[6] = 1;
        assert!(RingHom::new(big.clone(), two, bad).is_err());
        let (q, proj) = quotient(&big, &ideal_generated(&big, &[4])).unwrap();
        assert_eq!(q.size(), 4);
        assert!(proj.is_surjective());
    }
    use crate::constructors::{matrix, product, upper_triangular, zmod};
    use crate::invariants::idempotents;

    #[test]
    fn zmod4_ideals() {
        let r = zmod(4).unwrap();
        assert!(is_ideal(&r, &r.subset_from([0, 2])).unwrap());
        assert!(!is_ideal(&r, &r.subset_from([0, 1])).unwrap());
        assert_eq!(ideal_generated(&r, &[2]).to_vec(), vec![0, 2]);
        assert_eq!(all_ideals(&r).unwrap().len(), 3);
    }

    #[test]
    fn unit_generates_everything() {
        for n in [2, 6, 9] {
            let r = zmod(n).unwrap();
            assert_eq!(ideal_generated(&r, &[r.one()]).len(), r.size());
        }
    }

    #[test]
    fn zmod6_has_four_ideals() {
        let r = zmod(6).unwrap();
        let ideals: Vec<Vec<Elem>> = all_ideals(&r).unwrap().iter().map(|s| s.to_vec()).collect();
        assert_eq!(
            ideals,
            vec![vec![0], vec![0, 3], vec![0, 2, 4], vec![0, 1, 2, 3, 4, 5]]
        );
    }

    #[test]
    fn m2f2_is_simple() {
        let m = matrix(2, &zmod(2).unwrap()).unwrap();
        // E11 = [[1,0],[0,0]] has id 8 in row-major base-2 order.
        assert_eq!(m.label(8), "[[1, 0], [0, 0]]");
        assert_eq!(ideal_generated(&m, &[8]).len(), 16);
        assert!(is_ideal(&m, &m.subset_from([0])).unwrap());
    }

    #[test]
    fn mismatched_subset_is_rejected() {
        let a = zmod(4).unwrap();
        let b = zmod(4).unwrap();
        assert_eq!(
            is_ideal(&a, &b.subset_from([0])),
            Err(RingError::RingMismatch)
        );
    }

    #[test]
    fn quotients() {
        let r = zmod(4).unwrap();
        let (q, p) = quotient(&r, &r.subset_from([0, 2])).unwrap();
        assert_eq!(q.size(), 2);
        assert!(p.is_surjective());
        assert_eq!(q.add(q.one(), q.one()), q.zero());

        let r6 = zmod(6).unwrap();
        let (q, _) = quotient(&r6, &r6.subset_from([0, 3])).unwrap();
        assert_eq!(q.size(), 3);
        assert_eq!(q.int(3), q.zero());
        assert_ne!(q.int(2), q.zero());

        let ut = upper_triangular(2, &zmod(2).unwrap()).unwrap();
        let strict = ut.subset_where(|a| ut.label(a).starts_with("[[0, ") && ut.label(a).ends_with(", 0]]"));
        assert_eq!(strict.len(), 2);
        let (q, _) = quotient(&ut, &strict).unwrap();
        assert_eq!(q.size(), 4);
        // Z2 x Z2: four idempotents, two of them the diagonal units (1,0), (0,1).
        assert_eq!(idempotents(&q).len(), 4);

        assert!(matches!(
            quotient(&r, &r.subset_from([0, 1])),
            Err(RingError::NotAnIdeal)
        ));
    }

    #[test]
    fn sum_and_product_of_ideals() {
        let r = product(&[zmod(4).unwrap(), zmod(2).unwrap()]).unwrap();
        let ideals = all_ideals(&r).unwrap();
        for i in &ideals {
            for j in &ideals {
                assert!(ideals.contains(&ideal_sum(&r, i, j)));
                assert!(ideals.contains(&i.intersection(j)));
                assert!(ideal_product(&r, i, j).is_subset_of(&i.intersection(j)));
            }
        }
    }
}
