use super::{build, Comp, Kind};
use crate::error::{Result, RingError};
use crate::invariants::center;
use crate::ring::{Elem, FiniteRing};

pub(super) fn label_rows(k: usize, entry: impl Fn(usize, usize) -> String) -> String {
    let rows: Vec<String> = (0..k)
        .map(|i| {
            let cols: Vec<String> = (0..k).map(|j| entry(i, j)).collect();
            format!("[{}]", cols.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub(super) fn mul_full(r: &FiniteRing, k: usize, a: &[u32], b: &[u32], c: &mut [u32]) {
    for i in 0..k {
        for j in 0..k {
            let mut acc = r.zero();
            for l in 0..k {
                acc = r.add(acc, r.mul(a[i * k + l], b[l * k + j]));
            }
            c[i * k + j] = acc;
        }
    }
}

pub(super) fn mul_upper(
    r: &FiniteRing,
    k: usize,
    pos: &[Vec<usize>],
    a: &[u32],
    b: &[u32],
    c: &mut [u32],
) {
    for i in 0..k {
        for j in i..k {
            let mut acc = r.zero();
            for l in i..=j {
                acc = r.add(acc, r.mul(a[pos[i][l]], b[pos[l][j]]));
            }
            c[pos[i][j]] = acc;
        }
    }
}

pub(super) fn mul_ks(r: &FiniteRing, s: Elem, a: &[u32], b: &[u32], c: &mut [u32]) {
    let (a1, x1, y1, b1) = (a[0], a[1], a[2], a[3]);
    let (a2, x2, y2, b2) = (b[0], b[1], b[2], b[3]);
    c[0] = r.add(r.mul(a1, a2), r.mul(s, r.mul(x1, y2)));
    c[1] = r.add(r.mul(a1, x2), r.mul(x1, b2));
    c[2] = r.add(r.mul(y1, a2), r.mul(b1, y2));
    c[3] = r.add(r.mul(s, r.mul(y1, x2)), r.mul(b1, b2));
}

/// Exponent of `s` on the term `a_il b_lj` of a product in `M_k(R; s)`:
/// `1 + [i = j] - [i = l] - [l = j]`, always in `0..=2`.
pub fn m_n_s_exponent(i: usize, l: usize, j: usize) -> usize {
    let d = |x: usize, y: usize| usize::from(x == y);
    1 + d(i, j) - d(i, l) - d(l, j)
}

pub(super) fn mul_mns(
    r: &FiniteRing,
    k: usize,
    s_pows: &[Elem; 3],
    a: &[u32],
    b: &[u32],
    c: &mut [u32],
) {
    for i in 0..k {
        for j in 0..k {
            let mut acc = r.zero();
            for l in 0..k {
                let term = r.mul(a[i * k + l], b[l * k + j]);
                let e = m_n_s_exponent(i, l, j);
                let term = if e == 0 { term } else { r.mul(s_pows[e], term) };
                acc = r.add(acc, term);
            }
            c[i * k + j] = acc;
        }
    }
}

fn identity_digits(r: &FiniteRing, k: usize) -> Vec<u32> {
    let mut one = vec![r.zero(); k * k];
    for i in 0..k {
        one[i * k + i] = r.one();
    }
    one
}

fn require_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(RingError::InvalidArgument("matrix size must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// Full matrix ring `M_k(R)`, entries in row-major order.
pub fn matrix(k: usize, r: &FiniteRing) -> Result<FiniteRing> {
    require_k(k)?;
    super::checked_size(std::iter::repeat(r.size()).take(k * k))?;
    build(
        vec![Comp::Ring(r.clone()); k * k],
        Kind::Matrix { k },
        &identity_digits(r, k),
        format!("Mat({k}, {})", r.provenance()),
    )
}

/// Upper triangular matrices `T_k(R)`; coordinates are the entries `(i, j)`,
/// `i <= j`, in row-major order.
pub fn upper_triangular(k: usize, r: &FiniteRing) -> Result<FiniteRing> {
    require_k(k)?;
    let mut pos = vec![vec![usize::MAX; k]; k];
    let mut n = 0;
    for (i, row) in pos.iter_mut().enumerate() {
        for slot in row.iter_mut().skip(i) {
            *slot = n;
            n += 1;
        }
    }
    let mut one = vec![r.zero(); n];
    for (i, row) in pos.iter().enumerate() {
        one[row[i]] = r.one();
    }
    super::checked_size(std::iter::repeat(r.size()).take(n))?;
    build(
        vec![Comp::Ring(r.clone()); n],
        Kind::UpperTriangular { k, pos },
        &one,
        format!("UT({k}, {})", r.provenance()),
    )
}

fn require_central(r: &FiniteRing, s: Elem) -> Result<Elem> {
    let s = r.check_elem(s as u64)?;
    if center(r).contains(s) {
        Ok(s)
    } else {
        Err(RingError::NotCentral(s))
    }
}

/// Generalized matrix ring `K_s(R)`; coordinates `(a, x, y, b)` of `[[a, x], [y, b]]`.
pub fn k_s(r: &FiniteRing, s: Elem) -> Result<FiniteRing> {
    let s = require_central(r, s)?;
    build(
        vec![Comp::Ring(r.clone()); 4],
        Kind::Ks { s },
        &[r.one(), r.zero(), r.zero(), r.one()],
        format!("Ks({}, #{s})", r.provenance()),
    )
}

/// Formal matrix ring `M_k(R; s)`; see [`m_n_s_exponent`] for the product.
pub fn m_n_s(k: usize, r: &FiniteRing, s: Elem) -> Result<FiniteRing> {
    require_k(k)?;
    let s = require_central(r, s)?;
    super::checked_size(std::iter::repeat(r.size()).take(k * k))?;
    let s_pows = [r.one(), s, r.mul(s, s)];
    build(
        vec![Comp::Ring(r.clone()); k * k],
        Kind::Mns { k, s_pows },
        &identity_digits(r, k),
        format!("Mns({k}, {}, #{s})", r.provenance()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::verify_axioms;
    use crate::constructors::{formal_triangular, zmod, Bimodule};
    use crate::invariants::{center, units};

    fn z(n: u64) -> FiniteRing {
        zmod(n).unwrap()
    }

    /// Element id of a 2x2 matrix over Z_n in row-major mixed radix.
    fn m2(n: u32, e: [u32; 4]) -> Elem {
        ((e[0] * n + e[1]) * n + e[2]) * n + e[3]
    }

    #[test]
    fn m2_z2_units_and_rotation() {
        let m = matrix(2, &z(2)).unwrap();
        assert_eq!(m.size(), 16);
        assert!(verify_axioms(&m).passed());
        assert_eq!(units(&m).unwrap().len(), 6);
        // A = [[0, -1], [1, 0]] squares to -I.
        let a = m2(2, [0, 1, 1, 0]);
        assert_eq!(m.mul(a, a), m.neg(m.one()));
        assert_eq!(center(&m).to_vec(), vec![0, m.one()]);
    }

    #[test]
    fn degenerate_sizes() {
        let r = z(5);
        assert!(matrix(1, &r).unwrap().tables_equal(&r));
        assert!(upper_triangular(1, &r).unwrap().tables_equal(&r));
        assert!(matrix(0, &r).is_err());
        assert!(matches!(matrix(5, &z(8)), Err(RingError::SizeOverflow(_))));
    }

    #[test]
    fn upper_triangular_units() {
        let t = upper_triangular(2, &z(2)).unwrap();
        assert_eq!(t.size(), 8);
        assert_eq!(units(&t).unwrap().len(), 2);
        assert!(verify_axioms(&upper_triangular(3, &z(2)).unwrap()).passed());
    }

    #[test]
    fn ks_tables() {
        assert!(k_s(&z(2), 1).unwrap().tables_equal(&matrix(2, &z(2)).unwrap()));
        let k = k_s(&z(4), 2).unwrap();
        assert_eq!(k.size(), 256);
        assert!(verify_axioms(&k).passed());
        // s = 0: off-diagonal products vanish.
        let k0 = k_s(&z(3), 0).unwrap();
        let e12 = m2(3, [0, 1, 0, 0]);
        let e21 = m2(3, [0, 0, 1, 0]);
        assert_eq!(k0.mul(e12, e21), 0);
        assert_eq!(k0.mul(e21, e12), 0);
    }

    #[test]
    fn mns_matches_ks_of_square() {
        for (n, ss) in [(4u64, vec![0, 1, 2, 3]), (8, vec![2, 3])] {
            let r = z(n);
            for s in ss {
                let s2 = r.mul(s, s);
                assert!(
                    m_n_s(2, &r, s).unwrap().tables_equal(&k_s(&r, s2).unwrap()),
                    "M_2(Z{n}; {s}) vs K_{s2}"
                );
            }
        }
        assert!(m_n_s(3, &z(2), 1).unwrap().tables_equal(&matrix(3, &z(2)).unwrap()));
        assert!(verify_axioms(&m_n_s(3, &z(3), 2).unwrap()).passed());
    }

    #[test]
    fn exponent_rule() {
        assert_eq!(m_n_s_exponent(0, 0, 0), 0);
        assert_eq!(m_n_s_exponent(0, 1, 0), 2);
        assert_eq!(m_n_s_exponent(0, 0, 1), 0);
        assert_eq!(m_n_s_exponent(0, 1, 1), 0);
        assert_eq!(m_n_s_exponent(0, 1, 2), 1);
    }

    #[test]
    fn formal_triangular_regular_is_ut2() {
        let r = z(2);
        let m = std::sync::Arc::new(Bimodule::regular(&r));
        let f = formal_triangular(&r, &r, &m).unwrap();
        assert!(f.tables_equal(&upper_triangular(2, &r).unwrap()));
    }
}
