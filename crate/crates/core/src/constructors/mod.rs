//! Builders for every ring construction the engine supports.
//!
//! Composite rings are tuples of component elements. A tuple is encoded in
//! mixed radix with the first component most significant, so ids follow the
//! lexicographic order of the tuples (row-major for matrices).

mod basic;
mod bimodule;
mod group;
mod matrix;
mod skew;

use std::any::Any;
use std::sync::Arc;

pub use basic::{gf, product, zmod, GfBackend, ZmodBackend};
pub use bimodule::{
    dt, formal_triangular, trivial_extension, trivial_extension_regular, trivial_morita,
    Bimodule, BimoduleKind,
};
pub use group::{augmentation_ideal, augmentation_map, group_ring, group_ring_parts, GroupTable};
pub use matrix::{k_s, m_n_s, m_n_s_exponent, matrix, upper_triangular};
pub use skew::{
    endomorphism_by_name, endomorphisms, poly_quot, skew_triangular, Endomorphism, ENDO_CAP,
};

use crate::error::{Result, RingError};
use crate::ring::{Elem, FiniteRing, RingBackend, SIZE_LIMIT};

const MAX_COMPONENTS: usize = 32;

/// Precomputed digits are kept for rings up to this many `size * arity` cells.
const DIGIT_TABLE_CELLS: usize = 1 << 22;

pub(crate) fn checked_size(parts: impl IntoIterator<Item = usize>) -> Result<usize> {
    let mut total: u128 = 1;
    for p in parts {
        total = total.saturating_mul(p as u128);
        if total > SIZE_LIMIT {
            return Err(RingError::SizeOverflow(total));
        }
    }
    Ok(total as usize)
}

/// Mixed-radix tuple encoding.
pub(crate) struct Layout {
    radices: Vec<u32>,
    strides: Vec<u32>,
    size: usize,
    digits: Option<Vec<u32>>,
}

impl Layout {
    fn new(radices: Vec<u32>) -> Result<Self> {
        if radices.len() > MAX_COMPONENTS {
            return Err(RingError::InvalidArgument(format!(
                "{} tuple components (max {MAX_COMPONENTS})",
                radices.len()
            )));
        }
        let size = checked_size(radices.iter().map(|&r| r as usize))?;
        let mut strides = vec![1u32; radices.len()];
        for i in (0..radices.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * radices[i + 1];
        }
        let mut layout = Layout {
            radices,
            strides,
            size,
            digits: None,
        };
        let k = layout.radices.len();
        if size * k <= DIGIT_TABLE_CELLS {
            let mut digits = vec![0u32; size * k];
            for a in 0..size {
                layout.decode_slow(a as Elem, &mut digits[a * k..(a + 1) * k]);
            }
            layout.digits = Some(digits);
        }
        Ok(layout)
    }

    fn arity(&self) -> usize {
        self.radices.len()
    }

    fn decode_slow(&self, mut a: Elem, out: &mut [u32]) {
        for i in (0..self.radices.len()).rev() {
            out[i] = a % self.radices[i];
            a /= self.radices[i];
        }
    }

    #[inline]
    fn decode(&self, a: Elem, out: &mut [u32]) {
        let k = self.arity();
        match &self.digits {
            Some(d) => out[..k].copy_from_slice(&d[a as usize * k..(a as usize + 1) * k]),
            None => self.decode_slow(a, out),
        }
    }

    #[inline]
    fn encode(&self, d: &[u32]) -> Elem {
        d.iter()
            .zip(&self.strides)
            .map(|(&x, &s)| x * s)
            .sum()
    }
}

/// One coordinate of a tuple ring: a ring or a bimodule.
#[derive(Clone)]
pub(crate) enum Comp {
    Ring(FiniteRing),
    Module(Arc<Bimodule>),
}

impl Comp {
    fn size(&self) -> usize {
        match self {
            Comp::Ring(r) => r.size(),
            Comp::Module(m) => m.size(),
        }
    }
    #[inline]
    fn add(&self, a: Elem, b: Elem) -> Elem {
        match self {
            Comp::Ring(r) => r.add(a, b),
            Comp::Module(m) => m.add(a, b),
        }
    }
    #[inline]
    fn neg(&self, a: Elem) -> Elem {
        match self {
            Comp::Ring(r) => r.neg(a),
            Comp::Module(m) => m.neg(a),
        }
    }
    fn label(&self, a: Elem) -> String {
        match self {
            Comp::Ring(r) => r.label(a),
            Comp::Module(m) => m.label(a),
        }
    }
}

/// Multiplication rule of a tuple ring.
pub(crate) enum Kind {
    Product,
    Matrix { k: usize },
    UpperTriangular { k: usize, pos: Vec<Vec<usize>> },
    Skew { k: usize, alpha_pows: Vec<Vec<Elem>> },
    Trivial,
    DoubleTrivial,
    GroupRing { group: GroupTable },
    FormalTriangular,
    Ks { s: Elem },
    Mns { k: usize, s_pows: [Elem; 3] },
    TrivialMorita,
}

/// Backend shared by every tuple-encoded construction.
pub struct StructBackend {
    layout: Layout,
    comps: Vec<Comp>,
    kind: Kind,
    one: Elem,
}

impl StructBackend {
    fn build(comps: Vec<Comp>, kind: Kind, one_digits: &[u32]) -> Result<Self> {
        let layout = Layout::new(comps.iter().map(|c| c.size() as u32).collect())?;
        let one = layout.encode(one_digits);
        Ok(StructBackend {
            layout,
            comps,
            kind,
            one,
        })
    }

    fn ring(&self, i: usize) -> &FiniteRing {
        match &self.comps[i] {
            Comp::Ring(r) => r,
            Comp::Module(_) => unreachable!("component {i} is a module"),
        }
    }

    fn module(&self, i: usize) -> &Bimodule {
        match &self.comps[i] {
            Comp::Module(m) => m,
            Comp::Ring(_) => unreachable!("component {i} is a ring"),
        }
    }

    /// Decoded coordinates of an element.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut d = vec![0; self.layout.arity()];
        self.layout.decode(a, &mut d);
        d
    }

    pub fn encode(&self, digits: &[u32]) -> Elem {
        self.layout.encode(digits)
    }

    pub(crate) fn group(&self) -> Option<(&FiniteRing, &GroupTable)> {
        match &self.kind {
            Kind::GroupRing { group } => Some((self.ring(0), group)),
            _ => None,
        }
    }

    fn mul_digits(&self, a: &[u32], b: &[u32], c: &mut [u32]) {
        match &self.kind {
            Kind::Product => {
                for i in 0..self.comps.len() {
                    c[i] = self.ring(i).mul(a[i], b[i]);
                }
            }
            Kind::Matrix { k } => matrix::mul_full(self.ring(0), *k, a, b, c),
            Kind::UpperTriangular { k, pos } => matrix::mul_upper(self.ring(0), *k, pos, a, b, c),
            Kind::Mns { k, s_pows } => matrix::mul_mns(self.ring(0), *k, s_pows, a, b, c),
            Kind::Ks { s } => matrix::mul_ks(self.ring(0), *s, a, b, c),
            Kind::Skew { k, alpha_pows } => skew::mul_skew(self.ring(0), *k, alpha_pows, a, b, c),
            Kind::GroupRing { group } => group::mul_group(self.ring(0), group, a, b, c),
            Kind::Trivial => {
                let (r, m) = (self.ring(0), self.module(1));
                c[0] = r.mul(a[0], b[0]);
                c[1] = m.add(m.lact(a[0], b[1]), m.ract(a[1], b[0]));
            }
            Kind::DoubleTrivial => {
                let (r, m) = (self.ring(0), self.module(1));
                let (a1, m1, b1, n1) = (a[0], a[1], a[2], a[3]);
                let (a2, m2, b2, n2) = (b[0], b[1], b[2], b[3]);
                c[0] = r.mul(a1, a2);
                c[1] = m.add(m.lact(a1, m2), m.ract(m1, a2));
                c[2] = r.add(r.mul(a1, b2), r.mul(b1, a2));
                c[3] = m.add(
                    m.add(m.lact(a1, n2), m.ract(m1, b2)),
                    m.add(m.lact(b1, m2), m.ract(n1, a2)),
                );
            }
            Kind::FormalTriangular => {
                let (r, m, s) = (self.ring(0), self.module(1), self.ring(2));
                c[0] = r.mul(a[0], b[0]);
                c[1] = m.add(m.lact(a[0], b[1]), m.ract(a[1], b[2]));
                c[2] = s.mul(a[2], b[2]);
            }
            Kind::TrivialMorita => {
                let (ra, m, n, rb) = (self.ring(0), self.module(1), self.module(2), self.ring(3));
                c[0] = ra.mul(a[0], b[0]);
                c[1] = m.add(m.lact(a[0], b[1]), m.ract(a[1], b[3]));
                c[2] = n.add(n.lact(a[3], b[2]), n.ract(a[2], b[0]));
                c[3] = rb.mul(a[3], b[3]);
            }
        }
    }
}

impl RingBackend for StructBackend {
    fn size(&self) -> usize {
        self.layout.size
    }

    fn add(&self, a: Elem, b: Elem) -> Elem {
        let mut x = [0u32; MAX_COMPONENTS];
        let mut y = [0u32; MAX_COMPONENTS];
        self.layout.decode(a, &mut x);
        self.layout.decode(b, &mut y);
        for (i, comp) in self.comps.iter().enumerate() {
            x[i] = comp.add(x[i], y[i]);
        }
        self.layout.encode(&x[..self.comps.len()])
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let mut x = [0u32; MAX_COMPONENTS];
        let mut y = [0u32; MAX_COMPONENTS];
        let mut z = [0u32; MAX_COMPONENTS];
        self.layout.decode(a, &mut x);
        self.layout.decode(b, &mut y);
        self.mul_digits(&x, &y, &mut z);
        self.layout.encode(&z[..self.comps.len()])
    }

    fn neg(&self, a: Elem) -> Elem {
        let mut x = [0u32; MAX_COMPONENTS];
        self.layout.decode(a, &mut x);
        for (i, comp) in self.comps.iter().enumerate() {
            x[i] = comp.neg(x[i]);
        }
        self.layout.encode(&x[..self.comps.len()])
    }

    fn one(&self) -> Elem {
        self.one
    }

    fn label(&self, a: Elem) -> String {
        let d = self.digits(a);
        let l = |i: usize| self.comps[i].label(d[i]);
        let join = |idx: &mut dyn Iterator<Item = usize>| {
            idx.map(|i| l(i)).collect::<Vec<_>>().join(", ")
        };
        let n = self.comps.len();
        match &self.kind {
            Kind::Matrix { k } | Kind::Mns { k, .. } => matrix::label_rows(*k, |i, j| l(i * k + j)),
            Kind::UpperTriangular { k, pos } => matrix::label_rows(*k, |i, j| {
                if i <= j {
                    l(pos[i][j])
                } else {
                    self.comps[0].label(0)
                }
            }),
            Kind::Ks { .. } | Kind::TrivialMorita => {
                format!("[[{}, {}], [{}, {}]]", l(0), l(1), l(2), l(3))
            }
            Kind::FormalTriangular => {
                format!("[[{}, {}], [0, {}]]", l(0), l(1), l(2))
            }
            Kind::GroupRing { group } => group::label_element(group, &d, |i| l(i)),
            _ => format!("({})", join(&mut (0..n))),
        }
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

pub(crate) fn build(comps: Vec<Comp>, kind: Kind, one: &[u32], name: String) -> Result<FiniteRing> {
    Ok(FiniteRing::new(StructBackend::build(comps, kind, one)?, name))
}
