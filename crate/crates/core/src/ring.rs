//! The finite-ring abstraction.
//!
//! Every ring exposes its elements as dense ids `0..size`, with id `0` the
//! additive identity. Operations come from a [`RingBackend`]; rings small
//! enough are materialized into flat tables at construction time, larger ones
//! are evaluated structurally through the backend on every call.

use std::any::Any;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Result, RingError};

/// Canonical element id.
pub type Elem = u32;

/// Rings up to this size get full addition and multiplication tables.
pub const TABLE_CAP: usize = 1024;

/// Constructors refuse to build rings with more elements than this.
pub const SIZE_LIMIT: u128 = 1 << 20;

/// Homomorphism checks test every pair of elements up to this source size.
pub const HOM_PAIR_CAP: usize = 1024;

/// Structural description of a finite ring. Implementations must use id `0`
/// for the zero element.
pub trait RingBackend: Send + Sync + 'static {
    fn size(&self) -> usize;
    fn add(&self, a: Elem, b: Elem) -> Elem;
    fn mul(&self, a: Elem, b: Elem) -> Elem;
    fn neg(&self, a: Elem) -> Elem;
    fn one(&self) -> Elem;
    fn label(&self, a: Elem) -> String;
    fn as_any(&self) -> &dyn Any;
}

#[derive(Clone)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

/// Lazily computed distinguished subsets, filled in by [`crate::invariants`].
#[derive(Default)]
pub(crate) struct Cache {
    pub units: OnceLock<Result<crate::invariants::UnitData>>,
    pub jacobson: OnceLock<Result<Subset>>,
    pub delta: OnceLock<Result<Subset>>,
    pub nilpotents: OnceLock<Subset>,
    pub idempotents: OnceLock<Subset>,
    pub center: OnceLock<Subset>,
    pub generators: OnceLock<Vec<Elem>>,
}

struct Inner {
    id: u64,
    size: usize,
    one: Elem,
    backend: Arc<dyn RingBackend>,
    tables: Option<Arc<Tables>>,
    provenance: String,
    degenerate: bool,
    cache: Cache,
}

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// An immutable finite unital ring. Cloning is cheap (shared handle).
#[derive(Clone)]
pub struct FiniteRing(Arc<Inner>);

impl FiniteRing {
    /// Wraps a backend, materializing tables when `size <= TABLE_CAP`.
    pub fn new(backend: impl RingBackend, provenance: impl Into<String>) -> Self {
        Self::from_arc(Arc::new(backend), provenance.into())
    }

    fn from_arc(backend: Arc<dyn RingBackend>, provenance: String) -> Self {
        let size = backend.size();
        let one = backend.one();
        let tables = (size <= TABLE_CAP).then(|| {
            let mut add = Vec::with_capacity(size * size);
            let mut mul = Vec::with_capacity(size * size);
            for a in 0..size as Elem {
                for b in 0..size as Elem {
                    add.push(backend.add(a, b) as u16);
                    mul.push(backend.mul(a, b) as u16);
                }
            }
            let neg = (0..size as Elem).map(|a| backend.neg(a) as u16).collect();
            Arc::new(Tables { add, mul, neg })
        });
        FiniteRing(Arc::new(Inner {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            size,
            one,
            degenerate: size == 1,
            backend,
            tables,
            provenance,
            cache: Cache::default(),
        }))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.0.size
    }

    /// Process-unique identity of this ring value.
    pub fn id(&self) -> u64 {
        self.0.id
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.0.one
    }

    /// True for the zero ring, which only arises as a corner or quotient edge case.
    pub fn is_degenerate(&self) -> bool {
        self.0.degenerate
    }

    pub fn provenance(&self) -> &str {
        &self.0.provenance
    }

    /// Same ring under a new provenance string (fresh identity and caches).
    pub fn with_provenance(&self, provenance: impl Into<String>) -> FiniteRing {
        FiniteRing(Arc::new(Inner {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            size: self.0.size,
            one: self.0.one,
            degenerate: self.0.degenerate,
            backend: self.0.backend.clone(),
            tables: self.0.tables.clone(),
            provenance: provenance.into(),
            cache: Cache::default(),
        }))
    }

    pub fn backend(&self) -> &dyn RingBackend {
        self.0.backend.as_ref()
    }

    /// Downcasts the backend, e.g. to recover group-ring structure.
    pub fn backend_as<T: 'static>(&self) -> Option<&T> {
        self.0.backend.as_any().downcast_ref::<T>()
    }

    pub fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }

    pub(crate) fn cache(&self) -> &Cache {
        &self.0.cache
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => t.add[a as usize * self.0.size + b as usize] as Elem,
            None => self.0.backend.add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => t.mul[a as usize * self.0.size + b as usize] as Elem,
            None => self.0.backend.mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => t.neg[a as usize] as Elem,
            None => self.0.backend.neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `1 - a`
    #[inline]
    pub fn one_minus(&self, a: Elem) -> Elem {
        self.sub(self.one(), a)
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `k · a` for an integer `k >= 0`.
    pub fn scalar(&self, k: u64, a: Elem) -> Elem {
        let mut acc = self.zero();
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// The image of the integer `k` in the ring.
    pub fn int(&self, k: u64) -> Elem {
        self.scalar(k, self.one())
    }

    /// Additive order of `1`.
    pub fn characteristic(&self) -> u64 {
        let mut x = self.one();
        let mut k = 1;
        while x != self.zero() {
            x = self.add(x, self.one());
            k += 1;
        }
        k
    }

    pub fn label(&self, a: Elem) -> String {
        self.0.backend.label(a)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.size as Elem
    }

    pub fn check_elem(&self, a: u64) -> Result<Elem> {
        if (a as usize) < self.size() {
            Ok(a as Elem)
        } else {
            Err(RingError::ElementOutOfRange {
                id: a,
                size: self.size(),
            })
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn empty_subset(&self) -> Subset {
        Subset {
            ring: self.id(),
            bits: FixedBitSet::with_capacity(self.size()),
        }
    }

    pub fn full_subset(&self) -> Subset {
        let mut s = self.empty_subset();
        s.bits.insert_range(..);
        s
    }

    pub fn subset_from(&self, elems: impl IntoIterator<Item = Elem>) -> Subset {
        let mut s = self.empty_subset();
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn subset_where(&self, pred: impl Fn(Elem) -> bool) -> Subset {
        self.subset_from(self.elements().filter(|&a| pred(a)))
    }

    /// Element-for-element equality of the operation tables.
    pub fn tables_equal(&self, other: &FiniteRing) -> bool {
        self.size() == other.size()
            && self.one() == other.one()
            && self.elements().all(|a| {
                self.neg(a) == other.neg(a)
                    && self.elements().all(|b| {
                        self.add(a, b) == other.add(a, b) && self.mul(a, b) == other.mul(a, b)
                    })
            })
    }
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("provenance", &self.0.provenance)
            .field("size", &self.0.size)
            .finish()
    }
}

/// A set of element ids of one specific ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    ring: u64,
    bits: FixedBitSet,
}

impl Subset {
    pub fn ring_id(&self) -> u64 {
        self.ring
    }

    pub fn belongs_to(&self, ring: &FiniteRing) -> bool {
        self.ring == ring.id() && self.bits.len() == ring.size()
    }

    pub(crate) fn ensure_in(&self, ring: &FiniteRing) -> Result<()> {
        if self.belongs_to(ring) {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        self.bits.contains(a as usize)
    }

    #[inline]
    pub fn insert(&mut self, a: Elem) -> bool {
        !self.bits.put(a as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.ones().map(|i| i as Elem)
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    fn same_ring(&self, other: &Subset) {
        assert_eq!(
            self.ring, other.ring,
            "subsets of different rings must not be combined"
        );
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.same_ring(other);
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.same_ring(other);
        let mut s = self.clone();
        s.bits.intersect_with(&other.bits);
        s
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.same_ring(other);
        let mut s = self.clone();
        s.bits.union_with(&other.bits);
        s
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        self.same_ring(other);
        let mut s = self.clone();
        s.bits.difference_with(&other.bits);
        s
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A verified unital ring homomorphism.
#[derive(Clone)]
pub struct RingHom {
    pub source: FiniteRing,
    pub target: FiniteRing,
    map: Vec<Elem>,
    surjective: bool,
}

impl RingHom {
    /// Builds the map and checks that it preserves 0, 1, + and ·.
    ///
    /// Up to [`HOM_PAIR_CAP`] source elements every pair is tested. Above it
    /// the laws are tested for all `a` against additive generators (for +)
    /// and ring generators (for ·), which implies them for every pair.
    pub fn new(source: FiniteRing, target: FiniteRing, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(RingError::NotAHomomorphism(format!(
                "map has {} entries, source has {} elements",
                map.len(),
                source.size()
            )));
        }
        if map.iter().any(|&m| m as usize >= target.size()) {
            return Err(RingError::NotAHomomorphism("image out of range".into()));
        }
        if map[0] != target.zero() || map[source.one() as usize] != target.one() {
            return Err(RingError::NotAHomomorphism("0 or 1 not preserved".into()));
        }
        let (add_with, mul_with): (Vec<Elem>, Vec<Elem>) = if source.size() <= HOM_PAIR_CAP {
            (source.elements().collect(), source.elements().collect())
        } else {
            (
                crate::ideal::additive_generators(&source),
                crate::ideal::ring_generators(&source).to_vec(),
            )
        };
        for a in source.elements() {
            let fa = map[a as usize];
            for &b in &add_with {
                if map[source.add(a, b) as usize] != target.add(fa, map[b as usize]) {
                    return Err(RingError::NotAHomomorphism(format!(
                        "f(#{a} + #{b}) != f(#{a}) + f(#{b})"
                    )));
                }
            }
            for &b in &mul_with {
                if map[source.mul(a, b) as usize] != target.mul(fa, map[b as usize]) {
                    return Err(RingError::NotAHomomorphism(format!(
                        "f(#{a} * #{b}) != f(#{a}) * f(#{b})"
                    )));
                }
            }
        }
        let mut hit = target.empty_subset();
        for &m in &map {
            hit.insert(m);
        }
        let surjective = hit.len() == target.size();
        Ok(RingHom {
            source,
            target,
            map,
            surjective,
        })
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a as usize]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn kernel(&self) -> Subset {
        self.source
            .subset_where(|a| self.map[a as usize] == self.target.zero())
    }

    /// Preimage of a subset of the target.
    pub fn preimage(&self, s: &Subset) -> Subset {
        assert!(s.belongs_to(&self.target));
        self.source.subset_where(|a| s.contains(self.map[a as usize]))
    }

    /// Image of a subset of the source.
    pub fn image(&self, s: &Subset) -> Subset {
        assert!(s.belongs_to(&self.source));
        self.target.subset_from(s.iter().map(|a| self.map[a as usize]))
    }
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingHom")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("surjective", &self.surjective)
            .finish()
    }
}
