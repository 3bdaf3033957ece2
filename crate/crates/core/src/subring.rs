//! Subrings, corner rings and the semisimple decomposition.

use std::any::Any;
use std::collections::HashSet;

use crate::error::{Result, RingError};
use crate::ideal::AdditiveSpan;
use crate::invariants::{center, idempotents, jacobson, units};
use crate::ring::{Elem, FiniteRing, RingBackend, Subset};

/// Unital subring enumeration refuses rings larger than this.
pub const SUBRING_CAP: usize = 16;

/// Grows the subring (closed under +, −, ·) generated by the elements added.
pub(crate) struct SubringBuilder<'r> {
    ring: &'r FiniteRing,
    span: AdditiveSpan<'r>,
    basis: Vec<Elem>,
}

impl<'r> SubringBuilder<'r> {
    pub fn new(ring: &'r FiniteRing) -> Self {
        SubringBuilder {
            ring,
            span: AdditiveSpan::new(ring),
            basis: Vec::new(),
        }
    }

    pub fn add(&mut self, x: Elem) {
        let mut queue = vec![x];
        while let Some(y) = queue.pop() {
            if self.span.absorb(y) {
                // The span of a set closed under pairwise products is a subring.
                self.basis.push(y);
                for &b in &self.basis {
                    queue.push(self.ring.mul(b, y));
                    queue.push(self.ring.mul(y, b));
                }
            }
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.span.set.contains(x)
    }

    pub fn len(&self) -> usize {
        self.span.len()
    }

    pub fn into_subset(self) -> Subset {
        self.span.set
    }
}

/// Subring generated by `gens` together with `1`.
pub fn subring_generated(ring: &FiniteRing, gens: &[Elem]) -> Subset {
    let mut b = SubringBuilder::new(ring);
    b.add(ring.one());
    for &g in gens {
        b.add(g);
    }
    b.into_subset()
}

/// Backend for a subset of a parent ring closed under the parent's
/// operations, with its own identity (the parent's `1` for subrings, `e` for
/// corners). Elements keep the parent's order.
pub struct SubsetBackend {
    parent: FiniteRing,
    elems: Vec<Elem>,
    index: Vec<Elem>,
    one: Elem,
}

impl SubsetBackend {
    pub fn parent(&self) -> &FiniteRing {
        &self.parent
    }

    /// Parent id of a sub-ring element.
    pub fn embed(&self, a: Elem) -> Elem {
        self.elems[a as usize]
    }

    /// Sub-ring id of a parent element, if it belongs to the subset.
    pub fn locate(&self, a: Elem) -> Option<Elem> {
        let i = self.index[a as usize];
        (i != Elem::MAX).then_some(i)
    }
}

impl RingBackend for SubsetBackend {
    fn size(&self) -> usize {
        self.elems.len()
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.index[self.parent.add(self.elems[a as usize], self.elems[b as usize]) as usize]
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.index[self.parent.mul(self.elems[a as usize], self.elems[b as usize]) as usize]
    }
    fn neg(&self, a: Elem) -> Elem {
        self.index[self.parent.neg(self.elems[a as usize]) as usize]
    }
    fn one(&self) -> Elem {
        self.one
    }
    fn label(&self, a: Elem) -> String {
        self.parent.label(self.elems[a as usize])
    }
    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// Inclusion of a subring into its parent.
#[derive(Debug, Clone)]
pub struct Inclusion {
    pub sub: FiniteRing,
    pub parent: FiniteRing,
}

impl Inclusion {
    fn backend(&self) -> &SubsetBackend {
        self.sub
            .backend_as::<SubsetBackend>()
            .expect("inclusion built from a subset backend")
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.backend().embed(a)
    }

    /// Image in the parent of a subset of the subring.
    pub fn image(&self, s: &Subset) -> Subset {
        assert!(s.belongs_to(&self.sub));
        self.parent.subset_from(s.iter().map(|a| self.apply(a)))
    }

    /// Parent subset occupied by the subring.
    pub fn range(&self) -> Subset {
        self.image(&self.sub.full_subset())
    }
}

/// Materializes a closed subset as a ring with identity `one`.
fn ring_on_subset(parent: &FiniteRing, set: &Subset, one: Elem, name: String) -> FiniteRing {
    let elems = set.to_vec();
    let mut index = vec![Elem::MAX; parent.size()];
    for (i, &e) in elems.iter().enumerate() {
        index[e as usize] = i as Elem;
    }
    let one = index[one as usize];
    FiniteRing::new(
        SubsetBackend {
            parent: parent.clone(),
            elems,
            index,
            one,
        },
        name,
    )
}

/// The unital subring on `set`, which must contain `1` and be closed.
pub fn subring_on(parent: &FiniteRing, set: &Subset, name: String) -> Result<Inclusion> {
    set.ensure_in(parent)?;
    let closed = set.contains(parent.one())
        && set.contains(parent.zero())
        && set.iter().all(|a| {
            set.contains(parent.neg(a))
                && set
                    .iter()
                    .all(|b| set.contains(parent.add(a, b)) && set.contains(parent.mul(a, b)))
        });
    if !closed {
        return Err(RingError::InvalidArgument(
            "subset is not a unital subring".into(),
        ));
    }
    Ok(Inclusion {
        sub: ring_on_subset(parent, set, parent.one(), name),
        parent: parent.clone(),
    })
}

/// Corner ring `eRe` with identity `e`.
pub fn corner(ring: &FiniteRing, e: Elem) -> Result<FiniteRing> {
    let e = ring.check_elem(e as u64)?;
    if ring.mul(e, e) != e {
        return Err(RingError::NotIdempotent(e));
    }
    let set = ring.subset_from(ring.elements().map(|x| ring.mul(ring.mul(e, x), e)));
    Ok(ring_on_subset(
        ring,
        &set,
        e,
        format!("Corner({}, #{e})", ring.provenance()),
    ))
}

/// Smallest unital subring containing every unit.
pub fn unit_subring(ring: &FiniteRing) -> Result<Inclusion> {
    let u = units(ring)?;
    let mut b = SubringBuilder::new(ring);
    for x in u.iter() {
        b.add(x);
    }
    let set = b.into_subset();
    Ok(Inclusion {
        sub: ring_on_subset(
            ring,
            &set,
            ring.one(),
            format!("UnitSubring({})", ring.provenance()),
        ),
        parent: ring.clone(),
    })
}

/// Every unital subring, as the join-closure of the subrings `<1, a>`.
pub fn unital_subrings(ring: &FiniteRing, cap: usize) -> Result<Vec<Inclusion>> {
    if ring.size() > cap {
        return Err(RingError::CapExceeded {
            what: "unital_subrings",
            size: ring.size(),
            cap,
        });
    }
    let mut seen: HashSet<Subset> = HashSet::new();
    let mut list: Vec<Subset> = Vec::new();
    for a in ring.elements() {
        let s = subring_generated(ring, &[a]);
        if seen.insert(s.clone()) {
            list.push(s);
        }
    }
    let mut frontier = 0;
    while frontier < list.len() {
        let end = list.len();
        for i in frontier..end {
            for j in 0..i {
                let mut b = SubringBuilder::new(ring);
                b.add(ring.one());
                for x in list[i].iter().chain(list[j].iter()) {
                    b.add(x);
                }
                let s = b.into_subset();
                if seen.insert(s.clone()) {
                    list.push(s);
                }
            }
        }
        frontier = end;
    }
    list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.to_vec().cmp(&b.to_vec())));
    Ok(list
        .iter()
        .enumerate()
        .map(|(k, s)| Inclusion {
            sub: ring_on_subset(
                ring,
                s,
                ring.one(),
                format!("Subring{k}({})", ring.provenance()),
            ),
            parent: ring.clone(),
        })
        .collect())
}

/// Central subring `C(R)` as a ring.
pub fn center_ring(ring: &FiniteRing) -> Inclusion {
    let c = center(ring);
    Inclusion {
        sub: ring_on_subset(ring, c, ring.one(), format!("Center({})", ring.provenance())),
        parent: ring.clone(),
    }
}

/// Nonzero central idempotents that are minimal under `f <= e  <=>  fe = f`.
pub fn primitive_central_idempotents(ring: &FiniteRing) -> Vec<Elem> {
    let central: Vec<Elem> = idempotents(ring)
        .intersection(center(ring))
        .iter()
        .filter(|&e| e != ring.zero())
        .collect();
    central
        .iter()
        .copied()
        .filter(|&e| {
            !central
                .iter()
                .any(|&f| f != e && ring.mul(f, e) == f)
        })
        .collect()
}

/// Splits a ring with `J = 0` into its blocks `e_i S e_i`.
pub fn semisimple_decomposition(ring: &FiniteRing) -> Result<Vec<FiniteRing>> {
    if jacobson(ring)?.len() != 1 {
        return Err(RingError::NotSemisimple);
    }
    primitive_central_idempotents(ring)
        .into_iter()
        .map(|e| corner(ring, e))
        .collect()
}
