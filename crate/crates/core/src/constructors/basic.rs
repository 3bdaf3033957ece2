use std::any::Any;

use super::{build, Comp, Kind};
use crate::error::{Result, RingError};
use crate::ring::{Elem, FiniteRing, RingBackend, TABLE_CAP};

/// Integers modulo `n`; id `k` is the residue `k`.
pub struct ZmodBackend {
    n: u32,
}

impl RingBackend for ZmodBackend {
    fn size(&self) -> usize {
        self.n as usize
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        (a + b) % self.n
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        ((a as u64 * b as u64) % self.n as u64) as Elem
    }
    fn neg(&self, a: Elem) -> Elem {
        (self.n - a) % self.n
    }
    fn one(&self) -> Elem {
        1 % self.n
    }
    fn label(&self, a: Elem) -> String {
        a.to_string()
    }
    fn as_any(&self) -> &dyn Any {
        self
    }
}

pub fn zmod(n: u64) -> Result<FiniteRing> {
    if n < 2 {
        return Err(RingError::InvalidArgument(format!("Zmod needs n >= 2, got {n}")));
    }
    if n > TABLE_CAP as u64 * 1024 {
        return Err(RingError::SizeOverflow(n as u128));
    }
    Ok(FiniteRing::new(ZmodBackend { n: n as u32 }, format!("Zmod({n})")))
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Polynomials over F_p as coefficient vectors, constant term first.
mod poly {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Remainder of `a` modulo the monic `m`.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut c = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % p;
            }
        }
        trim(c)
    }

    /// Monic polynomials of degree `d`, coefficients enumerated with the
    /// constant term as the most significant key.
    pub fn monic_of_degree(d: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
        let count = p.pow(d as u32);
        (0..count).map(move |mut k| {
            let mut c = vec![0; d + 1];
            for i in (0..d).rev() {
                c[i] = k % p;
                k /= p;
            }
            c[d] = 1;
            c
        })
    }

    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        (1..=d / 2).all(|e| monic_of_degree(e, p).all(|g| !rem(f, &g, p).is_empty()))
    }

    /// Least monic irreducible of degree `k` in the order of [`monic_of_degree`].
    pub fn least_irreducible(k: usize, p: u64) -> Vec<u64> {
        monic_of_degree(k, p)
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree")
    }

    pub fn to_string(c: &[u64]) -> String {
        let mut terms = Vec::new();
        for (i, &x) in c.iter().enumerate().rev() {
            if x == 0 {
                continue;
            }
            let coeff = if x == 1 && i > 0 { String::new() } else { x.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// F_{p^k} as F_p[x]/(f); the id of `c_0 + c_1 x + ...` is `sum c_i p^i`.
pub struct GfBackend {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    size: usize,
}

impl GfBackend {
    fn coeffs(&self, a: Elem) -> Vec<u64> {
        let mut a = a as u64;
        let mut c = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            c.push(a % self.p);
            a /= self.p;
        }
        c
    }

    fn id(&self, c: &[u64]) -> Elem {
        c.iter().rev().fold(0u64, |acc, &x| acc * self.p + x) as Elem
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

impl RingBackend for GfBackend {
    fn size(&self) -> usize {
        self.size
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.id(&s)
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let prod = poly::mul(&poly::trim(self.coeffs(a)), &poly::trim(self.coeffs(b)), self.p);
        let r = poly::rem(&prod, &self.modulus, self.p);
        let mut c = r;
        c.resize(self.k, 0);
        self.id(&c)
    }
    fn neg(&self, a: Elem) -> Elem {
        let c: Vec<u64> = self.coeffs(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.id(&c)
    }
    fn one(&self) -> Elem {
        1
    }
    fn label(&self, a: Elem) -> String {
        poly::to_string(&self.coeffs(a))
    }
    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// The field with `p^k` elements, modulo the least monic irreducible of degree `k`.
pub fn gf(p: u64, k: u32) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    if k == 0 {
        return Err(RingError::InvalidArgument("GF needs k >= 1".into()));
    }
    let size = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
    if size > TABLE_CAP as u128 {
        return Err(RingError::CapExceeded {
            what: "GF",
            size: size.min(usize::MAX as u128) as usize,
            cap: TABLE_CAP,
        });
    }
    let modulus = poly::least_irreducible(k as usize, p);
    Ok(FiniteRing::new(
        GfBackend {
            p,
            k: k as usize,
            modulus,
            size: size as usize,
        },
        format!("GF({p}, {k})"),
    ))
}

/// Component-wise product ring.
pub fn product(rings: &[FiniteRing]) -> Result<FiniteRing> {
    if rings.is_empty() {
        return Err(RingError::InvalidArgument("empty product".into()));
    }
    let name = format!(
        "Prod({})",
        rings.iter().map(|r| r.provenance()).collect::<Vec<_>>().join(", ")
    );
    let one: Vec<u32> = rings.iter().map(|r| r.one()).collect();
    build(
        rings.iter().cloned().map(Comp::Ring).collect(),
        Kind::Product,
        &one,
        name,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::verify_axioms;
    use crate::invariants::{jacobson, units};

    #[test]
    fn zmod_basics() {
        let r = zmod(6).unwrap();
        assert_eq!(units(&r).unwrap().to_vec(), vec![1, 5]);
        let b = zmod(2).unwrap();
        assert!(b.elements().all(|a| b.mul(a, a) == a));
        assert_eq!(jacobson(&zmod(4).unwrap()).unwrap().to_vec(), vec![0, 2]);
        assert!(zmod(1).is_err());
    }

    #[test]
    fn least_irreducibles() {
        assert_eq!(poly::least_irreducible(2, 2), vec![1, 1, 1]);
        // Constant term compared first, then x, ...: x^3 + x^2 + 1 precedes x^3 + x + 1.
        assert_eq!(poly::least_irreducible(3, 2), vec![1, 0, 1, 1]);
        assert_eq!(poly::least_irreducible(4, 2), vec![1, 0, 0, 1, 1]);
        assert_eq!(poly::least_irreducible(2, 3), vec![1, 0, 1]);
    }

    #[test]
    fn fields() {
        let f4 = gf(2, 2).unwrap();
        assert!(verify_axioms(&f4).passed());
        let u = units(&f4).unwrap();
        assert_eq!(u.len(), 3);
        assert!(u.iter().all(|x| f4.pow(x, 3) == f4.one()));

        let f3 = gf(3, 1).unwrap();
        assert!(f3.tables_equal(&zmod(3).unwrap()));

        let f8 = gf(2, 3).unwrap();
        assert!(units(&f8).unwrap().iter().all(|x| f8.pow(x, 7) == f8.one()));
        assert_eq!(gf(4, 1).map(|_| ()), Err(RingError::NotPrime(4)));
        for (p, k) in [(2, 4), (3, 2), (5, 1), (7, 1)] {
            let f = gf(p, k).unwrap();
            assert!(verify_axioms(&f).passed());
            assert_eq!(units(&f).unwrap().len(), f.size() - 1);
        }
    }

    #[test]
    fn products() {
        let p = product(&[zmod(2).unwrap(), zmod(3).unwrap()]).unwrap();
        let z6 = zmod(6).unwrap();
        assert_eq!(p.size(), 6);
        assert_eq!(units(&p).unwrap().len(), units(&z6).unwrap().len());
        assert_eq!(p.label(5), "(1, 2)");
        let single = product(&[z6.clone()]).unwrap();
        assert!(single.tables_equal(&z6));
        assert!(product(&[]).is_err());
    }
}
