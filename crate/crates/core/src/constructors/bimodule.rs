use std::sync::Arc;

use super::{build, Comp, Kind};
use crate::error::{Result, RingError};
use crate::ring::{Elem, FiniteRing};

/// How a bimodule was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BimoduleKind {
    /// `R` acting on itself by multiplication.
    Regular,
    Zero,
    /// `M ⊕ N` over `A × B` for an `(A, B)`-bimodule `M` and a `(B, A)`-bimodule `N`.
    MoritaSum,
    /// User-supplied operation tables.
    Table,
}

enum Repr {
    Regular,
    Zero,
    Sum {
        m: Arc<Bimodule>,
        n: Arc<Bimodule>,
    },
    Table {
        add: Vec<Elem>,
        neg: Vec<Elem>,
        lact: Vec<Elem>,
        ract: Vec<Elem>,
    },
}

/// An `(R, S)`-bimodule: an abelian group with commuting left `R`- and
/// right `S`-actions. Element `0` is the zero of the module.
pub struct Bimodule {
    left: FiniteRing,
    right: FiniteRing,
    size: usize,
    repr: Repr,
}

fn same_ring(a: &FiniteRing, b: &FiniteRing) -> bool {
    a.id() == b.id() || a.tables_equal(b)
}

impl Bimodule {
    /// `R` as an `(R, R)`-bimodule.
    pub fn regular(r: &FiniteRing) -> Self {
        Bimodule {
            left: r.clone(),
            right: r.clone(),
            size: r.size(),
            repr: Repr::Regular,
        }
    }

    pub fn zero(left: &FiniteRing, right: &FiniteRing) -> Self {
        Bimodule {
            left: left.clone(),
            right: right.clone(),
            size: 1,
            repr: Repr::Zero,
        }
    }

    /// `M ⊕ N` as an `(A × B, A × B)`-bimodule, with
    /// `(a, b)(m, n) = (am, bn)` and `(m, n)(a, b) = (mb, na)`.
    /// `ab` must be the product ring of `M`'s left and right rings.
    pub fn morita_sum(ab: &FiniteRing, m: Arc<Bimodule>, n: Arc<Bimodule>) -> Result<Self> {
        if !same_ring(&m.left, &n.right) || !same_ring(&m.right, &n.left) {
            return Err(RingError::BimoduleAxiom(
                "M must be an (A, B)-bimodule and N a (B, A)-bimodule".into(),
            ));
        }
        if ab.size() != m.left.size() * m.right.size() {
            return Err(RingError::BimoduleAxiom(
                "acting ring is not A x B".into(),
            ));
        }
        Ok(Bimodule {
            left: ab.clone(),
            right: ab.clone(),
            size: m.size * n.size,
            repr: Repr::Sum { m, n },
        })
    }

    /// A bimodule from explicit tables: `add` and `ract` are row-major over
    /// `size` columns, `lact[r * size + m] = r·m`, `ract[m * |S| + s] = m·s`.
    /// Every axiom is checked exhaustively.
    pub fn from_tables(
        left: &FiniteRing,
        right: &FiniteRing,
        size: usize,
        add: Vec<Elem>,
        neg: Vec<Elem>,
        lact: Vec<Elem>,
        ract: Vec<Elem>,
    ) -> Result<Self> {
        let shape_ok = size >= 1
            && add.len() == size * size
            && neg.len() == size
            && lact.len() == left.size() * size
            && ract.len() == size * right.size()
            && add.iter().chain(&neg).chain(&lact).chain(&ract).all(|&x| (x as usize) < size);
        if !shape_ok {
            return Err(RingError::BimoduleAxiom("table shapes do not match".into()));
        }
        let m = Bimodule {
            left: left.clone(),
            right: right.clone(),
            size,
            repr: Repr::Table {
                add,
                neg,
                lact,
                ract,
            },
        };
        m.verify()?;
        Ok(m)
    }

    pub fn kind(&self) -> BimoduleKind {
        match self.repr {
            Repr::Regular => BimoduleKind::Regular,
            Repr::Zero => BimoduleKind::Zero,
            Repr::Sum { .. } => BimoduleKind::MoritaSum,
            Repr::Table { .. } => BimoduleKind::Table,
        }
    }

    pub fn left_ring(&self) -> &FiniteRing {
        &self.left
    }

    pub fn right_ring(&self) -> &FiniteRing {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn split(&self, x: Elem, n: &Bimodule) -> (Elem, Elem) {
        (x / n.size as Elem, x % n.size as Elem)
    }

    fn join(&self, a: Elem, b: Elem, n: &Bimodule) -> Elem {
        a * n.size as Elem + b
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        match &self.repr {
            Repr::Regular => self.left.add(x, y),
            Repr::Zero => 0,
            Repr::Sum { m, n } => {
                let (x1, x2) = self.split(x, n);
                let (y1, y2) = self.split(y, n);
                self.join(m.add(x1, y1), n.add(x2, y2), n)
            }
            Repr::Table { add, .. } => add[x as usize * self.size + y as usize],
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        match &self.repr {
            Repr::Regular => self.left.neg(x),
            Repr::Zero => 0,
            Repr::Sum { m, n } => {
                let (x1, x2) = self.split(x, n);
                self.join(m.neg(x1), n.neg(x2), n)
            }
            Repr::Table { neg, .. } => neg[x as usize],
        }
    }

    /// `r · x` for `r` in the left ring.
    #[inline]
    pub fn lact(&self, r: Elem, x: Elem) -> Elem {
        match &self.repr {
            Repr::Regular => self.left.mul(r, x),
            Repr::Zero => 0,
            Repr::Sum { m, n } => {
                // Product-ring ids are `a * |B| + b`.
                let bsize = m.right.size() as Elem;
                let (a, b) = (r / bsize, r % bsize);
                let (x1, x2) = self.split(x, n);
                self.join(m.lact(a, x1), n.lact(b, x2), n)
            }
            Repr::Table { lact, .. } => lact[r as usize * self.size + x as usize],
        }
    }

    /// `x · s` for `s` in the right ring.
    #[inline]
    pub fn ract(&self, x: Elem, s: Elem) -> Elem {
        match &self.repr {
            Repr::Regular => self.left.mul(x, s),
            Repr::Zero => 0,
            Repr::Sum { m, n } => {
                let bsize = m.right.size() as Elem;
                let (a, b) = (s / bsize, s % bsize);
                let (x1, x2) = self.split(x, n);
                self.join(m.ract(x1, b), n.ract(x2, a), n)
            }
            Repr::Table { ract, .. } => ract[x as usize * self.right.size() + s as usize],
        }
    }

    pub fn label(&self, x: Elem) -> String {
        match &self.repr {
            Repr::Regular => self.left.label(x),
            Repr::Zero => "0".into(),
            Repr::Sum { m, n } => {
                let (x1, x2) = self.split(x, n);
                format!("({}, {})", m.label(x1), n.label(x2))
            }
            Repr::Table { .. } => format!("m{x}"),
        }
    }

    /// Exhaustive check of the bimodule axioms.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: String| Err(RingError::BimoduleAxiom(what));
        let (r, s) = (&self.left, &self.right);
        let n = self.size as Elem;
        for x in 0..n {
            if self.add(x, 0) != x || self.add(x, self.neg(x)) != 0 {
                return fail(format!("additive identity or inverse at m{x}"));
            }
            if self.lact(r.one(), x) != x || self.ract(x, s.one()) != x {
                return fail(format!("identity does not act trivially on m{x}"));
            }
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) {
                    return fail(format!("addition not commutative at (m{x}, m{y})"));
                }
                for z in 0..n {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return fail(format!("addition not associative at (m{x}, m{y}, m{z})"));
                    }
                }
                for a in r.elements() {
                    if self.lact(a, self.add(x, y)) != self.add(self.lact(a, x), self.lact(a, y)) {
                        return fail(format!("left action not additive at (#{a}, m{x}, m{y})"));
                    }
                }
                for b in s.elements() {
                    if self.ract(self.add(x, y), b) != self.add(self.ract(x, b), self.ract(y, b)) {
                        return fail(format!("right action not additive at (m{x}, m{y}, #{b})"));
                    }
                }
            }
            for a in r.elements() {
                for a2 in r.elements() {
                    if self.lact(r.add(a, a2), x) != self.add(self.lact(a, x), self.lact(a2, x))
                        || self.lact(r.mul(a, a2), x) != self.lact(a, self.lact(a2, x))
                    {
                        return fail(format!("left action fails at (#{a}, #{a2}, m{x})"));
                    }
                }
                for b in s.elements() {
                    if self.ract(self.lact(a, x), b) != self.lact(a, self.ract(x, b)) {
                        return fail(format!("(rm)s != r(ms) at (#{a}, m{x}, #{b})"));
                    }
                }
            }
            for b in s.elements() {
                for b2 in s.elements() {
                    if self.ract(x, s.add(b, b2)) != self.add(self.ract(x, b), self.ract(x, b2))
                        || self.ract(x, s.mul(b, b2)) != self.ract(self.ract(x, b), b2)
                    {
                        return fail(format!("right action fails at (m{x}, #{b}, #{b2})"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn require_over(m: &Bimodule, left: &FiniteRing, right: &FiniteRing) -> Result<()> {
    if same_ring(&m.left, left) && same_ring(&m.right, right) {
        Ok(())
    } else {
        Err(RingError::BimoduleAxiom(format!(
            "bimodule is over ({}, {}), expected ({}, {})",
            m.left.provenance(),
            m.right.provenance(),
            left.provenance(),
            right.provenance()
        )))
    }
}

fn module_name(m: &Bimodule) -> String {
    match m.kind() {
        BimoduleKind::Regular => m.left.provenance().to_string(),
        BimoduleKind::Zero => "0".into(),
        BimoduleKind::MoritaSum => "M+N".into(),
        BimoduleKind::Table => format!("M[{}]", m.size),
    }
}

/// Trivial extension `T(R, M)`: pairs `(r, m)` with `(r, m)(s, n) = (rs, rn + ms)`.
pub fn trivial_extension(r: &FiniteRing, m: &Arc<Bimodule>) -> Result<FiniteRing> {
    require_over(m, r, r)?;
    build(
        vec![Comp::Ring(r.clone()), Comp::Module(m.clone())],
        Kind::Trivial,
        &[r.one(), 0],
        format!("Triv({}, {})", r.provenance(), module_name(m)),
    )
}

/// `T(R, R)`.
pub fn trivial_extension_regular(r: &FiniteRing) -> Result<FiniteRing> {
    Ok(trivial_extension(r, &Arc::new(Bimodule::regular(r)))?
        .with_provenance(format!("Triv({})", r.provenance())))
}

/// `DT(R, M)`: quadruples `(a, m, b, n)` multiplied as
/// `(a1a2, a1m2 + m1a2, a1b2 + b1a2, a1n2 + m1b2 + b1m2 + n1a2)`.
pub fn dt(r: &FiniteRing, m: &Arc<Bimodule>) -> Result<FiniteRing> {
    require_over(m, r, r)?;
    let name = if m.kind() == BimoduleKind::Regular {
        format!("DT({})", r.provenance())
    } else {
        format!("DT({}, {})", r.provenance(), module_name(m))
    };
    build(
        vec![
            Comp::Ring(r.clone()),
            Comp::Module(m.clone()),
            Comp::Ring(r.clone()),
            Comp::Module(m.clone()),
        ],
        Kind::DoubleTrivial,
        &[r.one(), 0, 0, 0],
        name,
    )
}

/// Formal triangular matrix ring `[[R, M], [0, S]]`; coordinates `(r, m, s)`.
pub fn formal_triangular(r: &FiniteRing, s: &FiniteRing, m: &Arc<Bimodule>) -> Result<FiniteRing> {
    require_over(m, r, s)?;
    build(
        vec![Comp::Ring(r.clone()), Comp::Module(m.clone()), Comp::Ring(s.clone())],
        Kind::FormalTriangular,
        &[r.one(), 0, s.one()],
        format!("FTri({}, {}, {})", r.provenance(), s.provenance(), module_name(m)),
    )
}

/// Morita context `[[A, M], [N, B]]` with both pairings zero; coordinates `(a, m, n, b)`.
pub fn trivial_morita(
    a: &FiniteRing,
    b: &FiniteRing,
    m: &Arc<Bimodule>,
    n: &Arc<Bimodule>,
) -> Result<FiniteRing> {
    require_over(m, a, b)?;
    require_over(n, b, a)?;
    build(
        vec![
            Comp::Ring(a.clone()),
            Comp::Module(m.clone()),
            Comp::Module(n.clone()),
            Comp::Ring(b.clone()),
        ],
        Kind::TrivialMorita,
        &[a.one(), 0, 0, b.one()],
        format!(
            "TrivMorita({}, {}, {}, {})",
            a.provenance(),
            b.provenance(),
            module_name(m),
            module_name(n)
        ),
    )
}
