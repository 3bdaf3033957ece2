use super::{build, Comp, Kind};
use crate::error::{Result, RingError};
use crate::ideal::ring_generators;
use crate::ring::{Elem, FiniteRing, RingHom};

/// Endomorphism enumeration refuses rings larger than this.
pub const ENDO_CAP: usize = 64;

/// A unital ring endomorphism.
#[derive(Debug, Clone)]
pub struct Endomorphism {
    pub ring: FiniteRing,
    map: Vec<Elem>,
    alpha_compatible: bool,
    name: String,
}

impl Endomorphism {
    /// Verifies that `map` preserves 0, 1, + and ·.
    pub fn new(ring: &FiniteRing, map: Vec<Elem>, name: impl Into<String>) -> Result<Self> {
        let hom = RingHom::new(ring.clone(), ring.clone(), map)?;
        let map = hom.map().to_vec();
        let alpha_compatible = ring.elements().all(|a| {
            ring.elements()
                .all(|b| (ring.mul(a, b) == 0) == (ring.mul(a, map[b as usize]) == 0))
        });
        Ok(Endomorphism {
            ring: ring.clone(),
            map,
            alpha_compatible,
            name: name.into(),
        })
    }

    pub fn identity(ring: &FiniteRing) -> Self {
        Endomorphism {
            ring: ring.clone(),
            map: ring.elements().collect(),
            alpha_compatible: true,
            name: "id".into(),
        }
    }

    /// `x -> x^p` on a commutative ring of prime characteristic `p`.
    pub fn frobenius(ring: &FiniteRing) -> Result<Self> {
        let p = ring.characteristic();
        if !super::basic::is_prime(p) || !ring.is_commutative() {
            return Err(RingError::InvalidArgument(format!(
                "Frobenius needs a commutative ring of prime characteristic, got {}",
                ring.provenance()
            )));
        }
        let map = ring.elements().map(|x| ring.pow(x, p)).collect();
        Endomorphism::new(ring, map, "frob")
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a as usize]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    /// `ab = 0  <=>  a·α(b) = 0` for all `a, b`.
    pub fn is_alpha_compatible(&self) -> bool {
        self.alpha_compatible
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i as Elem == x)
    }

    fn renamed(mut self, name: String) -> Self {
        self.name = name;
        self
    }
}

/// Extends generator images to a map on the whole ring, or `None` on a
/// conflict (the images do not define a homomorphism).
fn extend(ring: &FiniteRing, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
    let mut map = vec![Elem::MAX; ring.size()];
    let mut known = Vec::new();
    let set = |map: &mut Vec<Elem>, known: &mut Vec<Elem>, x: Elem, fx: Elem| -> bool {
        match map[x as usize] {
            Elem::MAX => {
                map[x as usize] = fx;
                known.push(x);
                true
            }
            old => old == fx,
        }
    };
    let seeds = [(ring.zero(), ring.zero()), (ring.one(), ring.one())];
    for (x, fx) in seeds.into_iter().chain(gens.iter().copied().zip(images.iter().copied())) {
        if !set(&mut map, &mut known, x, fx) {
            return None;
        }
    }
    let mut done = 0;
    while done < known.len() {
        let x = known[done];
        done += 1;
        let mut i = 0;
        while i < done {
            let y = known[i];
            i += 1;
            let (fx, fy) = (map[x as usize], map[y as usize]);
            let derived = [
                (ring.add(x, y), ring.add(fx, fy)),
                (ring.mul(x, y), ring.mul(fx, fy)),
                (ring.mul(y, x), ring.mul(fy, fx)),
            ];
            for (z, fz) in derived {
                if !set(&mut map, &mut known, z, fz) {
                    return None;
                }
            }
        }
    }
    (known.len() == ring.size()).then_some(map)
}

/// Every unital endomorphism, sorted by the map vector; the identity is named
/// `id`, the Frobenius map (when it exists) `frob`, the others `endo#k` by
/// position in the list.
pub fn endomorphisms(ring: &FiniteRing) -> Result<Vec<Endomorphism>> {
    if ring.size() > ENDO_CAP {
        return Err(RingError::CapExceeded {
            what: "endomorphisms",
            size: ring.size(),
            cap: ENDO_CAP,
        });
    }
    let gens = ring_generators(ring).to_vec();
    let mut maps: Vec<Vec<Elem>> = Vec::new();
    let mut images = vec![0 as Elem; gens.len()];
    loop {
        if let Some(m) = extend(ring, &gens, &images) {
            if RingHom::new(ring.clone(), ring.clone(), m.clone()).is_ok() {
                maps.push(m);
            }
        }
        // Next assignment in odometer order.
        let mut i = 0;
        loop {
            if i == images.len() {
                maps.sort();
                maps.dedup();
                return finish(ring, maps);
            }
            images[i] += 1;
            if images[i] as usize == ring.size() {
                images[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

fn finish(ring: &FiniteRing, maps: Vec<Vec<Elem>>) -> Result<Vec<Endomorphism>> {
    let frob = Endomorphism::frobenius(ring).ok().map(|f| f.map);
    maps.into_iter()
        .enumerate()
        .map(|(k, m)| {
            let e = Endomorphism::new(ring, m, format!("endo#{k}"))?;
            Ok(if e.is_identity() {
                e.renamed("id".into())
            } else if frob.as_deref() == Some(e.map()) {
                e.renamed("frob".into())
            } else {
                e
            })
        })
        .collect()
}

pub(super) fn mul_skew(
    r: &FiniteRing,
    k: usize,
    alpha_pows: &[Vec<Elem>],
    a: &[u32],
    b: &[u32],
    c: &mut [u32],
) {
    for i in 0..k {
        let mut acc = r.zero();
        for j in 0..=i {
            acc = r.add(acc, r.mul(a[j], alpha_pows[j][b[i - j] as usize]));
        }
        c[i] = acc;
    }
}

fn skew_ring(k: usize, r: &FiniteRing, alpha: &Endomorphism, name: String) -> Result<FiniteRing> {
    if k == 0 {
        return Err(RingError::InvalidArgument("skew ring needs k >= 1".into()));
    }
    if alpha.ring.id() != r.id() && !alpha.ring.tables_equal(r) {
        return Err(RingError::NotAHomomorphism(
            "endomorphism belongs to a different ring".into(),
        ));
    }
    super::checked_size(std::iter::repeat(r.size()).take(k))?;
    let mut alpha_pows: Vec<Vec<Elem>> = vec![r.elements().collect()];
    for j in 1..k {
        let prev = &alpha_pows[j - 1];
        let next = prev.iter().map(|&x| alpha.apply(x)).collect();
        alpha_pows.push(next);
    }
    let mut one = vec![r.zero(); k];
    one[0] = r.one();
    build(
        vec![Comp::Ring(r.clone()); k],
        Kind::Skew { k, alpha_pows },
        &one,
        name,
    )
}

/// Skew triangular ring `T_k(R, α)`: tuples `(a_0, ..., a_{k-1})` with
/// `c_i = sum_{j <= i} a_j α^j(b_{i-j})`.
pub fn skew_triangular(k: usize, r: &FiniteRing, alpha: &Endomorphism) -> Result<FiniteRing> {
    skew_ring(
        k,
        r,
        alpha,
        format!("SkewUT({k}, {}, {})", r.provenance(), alpha.name()),
    )
}

/// `R[x; α]/(x^n)`, coefficients `(a_0, ..., a_{n-1})` of `a_0 + a_1 x + ...`.
pub fn poly_quot(r: &FiniteRing, alpha: &Endomorphism, n: usize) -> Result<FiniteRing> {
    skew_ring(
        n,
        r,
        alpha,
        format!("PolyQ({}, {}, {n})", r.provenance(), alpha.name()),
    )
}

/// Looks an endomorphism up by its DSL name (`id`, `frob`, `endo#k`).
pub fn endomorphism_by_name(ring: &FiniteRing, name: &str) -> Result<Endomorphism> {
    match name {
        "id" => Ok(Endomorphism::identity(ring)),
        "frob" => Endomorphism::frobenius(ring),
        _ => {
            let idx: usize = name
                .strip_prefix("endo#")
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| RingError::InvalidArgument(format!("unknown endomorphism {name}")))?;
            let all = endomorphisms(ring)?;
            let count = all.len();
            all.into_iter().nth(idx).ok_or_else(|| {
                RingError::InvalidArgument(format!("{name}: ring has {count} endomorphisms"))
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::verify_axioms;
    use crate::constructors::{gf, product, upper_triangular, zmod};
    use crate::invariants::{jacobson, units};
    use crate::ideal::is_ideal;

    #[test]
    fn endomorphisms_of_zmod_and_gf4() {
        for n in [2, 6, 12] {
            let e = endomorphisms(&zmod(n).unwrap()).unwrap();
            assert_eq!(e.len(), 1);
            assert!(e[0].is_identity());
        }
        let f4 = gf(2, 2).unwrap();
        let e = endomorphisms(&f4).unwrap();
        assert_eq!(e.len(), 2);
        let names: Vec<&str> = e.iter().map(|x| x.name()).collect();
        assert_eq!(names, vec!["id", "frob"]);
        assert!(e[1].is_alpha_compatible());
        let p = product(&[zmod(2).unwrap(), zmod(2).unwrap()]).unwrap();
        // Identity, the swap, and the two maps (a, b) -> (a, a), (b, b).
        assert_eq!(endomorphisms(&p).unwrap().len(), 4);
        assert!(endomorphisms(&zmod(65).unwrap()).is_err());
    }

    #[test]
    fn identity_skew_is_constant_diagonal_upper_triangular() {
        // T_2(Z3, id) embeds in UT(2, Z3) as [[a0, a1], [0, a0]].
        let r = zmod(3).unwrap();
        let s = skew_triangular(2, &r, &Endomorphism::identity(&r)).unwrap();
        let ut = upper_triangular(2, &r).unwrap();
        // UT coordinates (a, b, c) for [[a, b], [0, c]], id = 9a + 3b + c.
        let embed = |x: Elem| {
            let (a0, a1) = (x / 3, x % 3);
            9 * a0 + 3 * a1 + a0
        };
        for x in s.elements() {
            for y in s.elements() {
                assert_eq!(embed(s.mul(x, y)), ut.mul(embed(x), embed(y)));
                assert_eq!(embed(s.add(x, y)), ut.add(embed(x), embed(y)));
            }
        }
    }

    #[test]
    fn frobenius_skew_over_gf4() {
        let f4 = gf(2, 2).unwrap();
        let frob = Endomorphism::frobenius(&f4).unwrap();
        let s = skew_triangular(2, &f4, &frob).unwrap();
        assert_eq!(s.size(), 16);
        assert!(verify_axioms(&s).passed());
        // (0, a) coordinates: ids below 4.
        let tail = s.subset_where(|x| x < 4);
        assert!(is_ideal(&s, &tail).unwrap());
        assert!(tail.iter().all(|x| s.mul(x, x) == 0));
        assert!(!s.is_commutative());
    }

    #[test]
    fn poly_quot_cases() {
        let z2 = zmod(2).unwrap();
        let p = poly_quot(&z2, &Endomorphism::identity(&z2), 2).unwrap();
        assert_eq!(units(&p).unwrap().len(), 2);
        let z5 = zmod(5).unwrap();
        assert!(poly_quot(&z5, &Endomorphism::identity(&z5), 1)
            .unwrap()
            .tables_equal(&z5));
        let z3 = zmod(3).unwrap();
        let p = poly_quot(&z3, &Endomorphism::identity(&z3), 2).unwrap();
        // Multiples of x are the tuples (0, a1), ids 0..3.
        assert_eq!(jacobson(&p).unwrap().to_vec(), vec![0, 1, 2]);
        let s = skew_triangular(3, &z3, &Endomorphism::identity(&z3)).unwrap();
        assert!(s.tables_equal(&poly_quot(&z3, &Endomorphism::identity(&z3), 3).unwrap()));
    }

    #[test]
    fn named_lookup() {
        let f4 = gf(2, 2).unwrap();
        assert_eq!(endomorphism_by_name(&f4, "endo#1").unwrap().name(), "frob");
        assert!(endomorphism_by_name(&f4, "endo#2").is_err());
        assert!(endomorphism_by_name(&zmod(6).unwrap(), "frob").is_err());
    }
}
