use super::basic::is_prime;
use super::{build, Comp, Kind, StructBackend};
use crate::error::{Result, RingError};
use crate::ring::{FiniteRing, RingHom, Subset};

/// A finite group given by its Cayley table; element `0` is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    labels: Vec<String>,
    op: Vec<u32>,
}

impl GroupTable {
    /// Checks closure, associativity, identity `0` and inverses.
    pub fn from_table(name: impl Into<String>, labels: Vec<String>, op: Vec<u32>) -> Result<Self> {
        let n = labels.len();
        let bad = |m: String| Err(RingError::InvalidArgument(format!("group table: {m}")));
        if n == 0 || op.len() != n * n || op.iter().any(|&x| x as usize >= n) {
            return bad("shape".into());
        }
        let g = GroupTable {
            name: name.into(),
            labels,
            op,
        };
        for a in 0..n as u32 {
            if g.op(0, a) != a || g.op(a, 0) != a {
                return bad(format!("0 is not an identity at {a}"));
            }
            if !(0..n as u32).any(|b| g.op(a, b) == 0) {
                return bad(format!("{a} has no inverse"));
            }
            for b in 0..n as u32 {
                for c in 0..n as u32 {
                    if g.op(g.op(a, b), c) != g.op(a, g.op(b, c)) {
                        return bad(format!("not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Cyclic group of order `n`, element `k` being `g^k`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(RingError::InvalidArgument("C(0) is not a group".into()));
        }
        let labels = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let op = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        GroupTable::from_table(format!("C({n})"), labels, op)
    }

    /// Direct product; pairs `(a, b)` have id `a * |H| + b`.
    pub fn direct_product(&self, other: &GroupTable) -> Result<Self> {
        let (n, m) = (self.size(), other.size());
        let mut labels = Vec::with_capacity(n * m);
        for a in 0..n {
            for b in 0..m {
                labels.push(match (a, b) {
                    (0, 0) => "1".to_string(),
                    (_, 0) => format!("{}_1", self.labels[a]),
                    (0, _) => format!("{}_2", other.labels[b]),
                    _ => format!("{}_1{}_2", self.labels[a], other.labels[b]),
                });
            }
        }
        let mut op = Vec::with_capacity(n * n * m * m);
        for x in 0..(n * m) as u32 {
            for y in 0..(n * m) as u32 {
                let (a1, b1) = (x / m as u32, x % m as u32);
                let (a2, b2) = (y / m as u32, y % m as u32);
                op.push(self.op(a1, a2) * m as u32 + other.op(b1, b2));
            }
        }
        GroupTable::from_table(format!("{}x{}", self.name, other.name), labels, op)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label(&self, g: u32) -> &str {
        &self.labels[g as usize]
    }

    #[inline]
    pub fn op(&self, a: u32, b: u32) -> u32 {
        self.op[a as usize * self.size() + b as usize]
    }

    /// The prime `p` when the order is a power `p^k`, `k >= 1`.
    pub fn p_group_prime(&self) -> Option<u64> {
        let mut n = self.size() as u64;
        let p = (2..=n).find(|&d| n % d == 0)?;
        debug_assert!(is_prime(p));
        while n % p == 0 {
            n /= p;
        }
        (n == 1).then_some(p)
    }
}

pub(super) fn mul_group(r: &FiniteRing, g: &GroupTable, a: &[u32], b: &[u32], c: &mut [u32]) {
    let n = g.size();
    c[..n].fill(r.zero());
    for x in 0..n {
        if a[x] == r.zero() {
            continue;
        }
        for y in 0..n {
            let xy = g.op(x as u32, y as u32) as usize;
            c[xy] = r.add(c[xy], r.mul(a[x], b[y]));
        }
    }
}

pub(super) fn label_element(g: &GroupTable, digits: &[u32], coeff: impl Fn(usize) -> String) -> String {
    let terms: Vec<String> = digits
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(i, _)| {
            let c = coeff(i);
            match (i, c.as_str()) {
                (0, _) => c,
                (_, "1") => g.label(i as u32).to_string(),
                _ => format!("{c}*{}", g.label(i as u32)),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Group ring `RG`: functions `G -> R` with the convolution product,
/// coordinates listed in the group's element order.
pub fn group_ring(r: &FiniteRing, g: &GroupTable) -> Result<FiniteRing> {
    super::checked_size(std::iter::repeat(r.size()).take(g.size()))?;
    let mut one = vec![r.zero(); g.size()];
    one[0] = r.one();
    build(
        vec![Comp::Ring(r.clone()); g.size()],
        Kind::GroupRing { group: g.clone() },
        &one,
        format!("GrpRing({}, {})", r.provenance(), g.name()),
    )
}

fn group_parts(rg: &FiniteRing) -> Result<(&StructBackend, &FiniteRing, &GroupTable)> {
    let b = rg
        .backend_as::<StructBackend>()
        .ok_or(RingError::NotAGroupRing)?;
    let (r, g) = b.group().ok_or(RingError::NotAGroupRing)?;
    Ok((b, r, g))
}

/// The coefficient ring and group a group ring was built from.
pub fn group_ring_parts(rg: &FiniteRing) -> Result<(FiniteRing, GroupTable)> {
    let (_, r, g) = group_parts(rg)?;
    Ok((r.clone(), g.clone()))
}

/// Augmentation `sum a_g g -> sum a_g` as a verified ring map onto `R`.
pub fn augmentation_map(rg: &FiniteRing) -> Result<RingHom> {
    let (b, r, _) = group_parts(rg)?;
    let map = rg
        .elements()
        .map(|x| b.digits(x).into_iter().fold(r.zero(), |acc, d| r.add(acc, d)))
        .collect();
    RingHom::new(rg.clone(), r.clone(), map)
}

/// Kernel of the augmentation map.
pub fn augmentation_ideal(rg: &FiniteRing) -> Result<Subset> {
    Ok(augmentation_map(rg)?.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::verify_axioms;
    use crate::constructors::{gf, product, zmod};
    use crate::ideal::is_ideal;
    use crate::invariants::{jacobson, units};

    fn z(n: u64) -> FiniteRing {
        zmod(n).unwrap()
    }

    #[test]
    fn groups() {
        let c2 = GroupTable::cyclic(2).unwrap();
        let v = c2.direct_product(&c2).unwrap();
        assert_eq!(v.size(), 4);
        assert_eq!(v.name(), "C(2)xC(2)");
        assert!((0..4).all(|a| v.op(a, a) == 0));
        assert_eq!(v.p_group_prime(), Some(2));
        assert_eq!(GroupTable::cyclic(6).unwrap().p_group_prime(), None);
        assert_eq!(GroupTable::cyclic(1).unwrap().p_group_prime(), None);
        let broken = GroupTable::from_table("bad", vec!["1".into(), "a".into()], vec![0, 1, 1, 1]);
        assert!(broken.is_err());
    }

    #[test]
    fn z2_c2() {
        let rg = group_ring(&z(2), &GroupTable::cyclic(2).unwrap()).unwrap();
        assert_eq!(rg.size(), 4);
        assert!(verify_axioms(&rg).passed());
        assert_eq!(jacobson(&rg).unwrap().len(), 2);
        let aug = augmentation_ideal(&rg).unwrap();
        // Ids: (a_1, a_g) -> 2 a_1 + a_g; 1 + g is id 3.
        assert_eq!(aug.to_vec(), vec![0, 3]);
        assert_eq!(rg.label(3), "1+g");
        assert!(!aug.contains(rg.one()));
        assert!(is_ideal(&rg, &aug).unwrap());
    }

    #[test]
    fn z4_c2_augmentation_in_radical() {
        let rg = group_ring(&z(4), &GroupTable::cyclic(2).unwrap()).unwrap();
        let aug = augmentation_ideal(&rg).unwrap();
        assert_eq!(aug.len(), 4);
        assert!(aug.is_subset_of(jacobson(&rg).unwrap()));
        let eps = augmentation_map(&rg).unwrap();
        assert!(eps.is_surjective());
        assert_eq!(eps.kernel(), aug);
    }

    #[test]
    fn trivial_group() {
        let r = z(5);
        let rg = group_ring(&r, &GroupTable::cyclic(1).unwrap()).unwrap();
        assert!(rg.tables_equal(&r));
    }

    #[test]
    fn f2_c3_matches_f2_times_f4() {
        let rg = group_ring(&z(2), &GroupTable::cyclic(3).unwrap()).unwrap();
        let p = product(&[z(2), gf(2, 2).unwrap()]).unwrap();
        assert_eq!(rg.size(), p.size());
        assert_eq!(units(&rg).unwrap().len(), units(&p).unwrap().len());
        assert!(rg.is_commutative());
    }

    #[test]
    fn not_a_group_ring() {
        assert_eq!(augmentation_ideal(&z(4)), Err(RingError::NotAGroupRing));
        let p = product(&[z(2), z(2)]).unwrap();
        assert_eq!(augmentation_ideal(&p), Err(RingError::NotAGroupRing));
    }
}
