//! One function per registered statement. Each runs over a single corpus
//! ring and reports every instance it tried.

use std::cell::OnceCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde_json::{json, Value};

use super::corpus::{CorpusRing, CorpusSpec};
use crate::constructors::{
    augmentation_ideal, group_ring_parts, k_s, poly_quot, product, trivial_extension, Bimodule,
    Endomorphism,
};
use crate::error::{Result, RingError};
use crate::expr::{Arg, Ctor, EndoName};
use crate::ideal::{all_ideals, ideal_generated, ideal_product, is_ideal, quotient, IDEAL_CAP};
use crate::invariants::{
    center, delta, delta_u_exponent, delta_via_unit_subring, idempotents, jacobson, nilpotents,
    units,
};
use crate::predicates::{
    is_clean, is_dedekind_finite, is_delta_u, is_exchange, is_n_delta_u, is_pi_regular,
    is_reduced, is_regular, is_semiregular, is_strongly_regular, is_unit_regular,
    right_ideals_have_idempotents, satisfies_power_identity,
};
use crate::ring::{Elem, FiniteRing, Subset};
use crate::subring::{center_ring, corner, semisimple_decomposition, unital_subrings, SUBRING_CAP};

/// What one check saw on one ring.
#[derive(Debug, Default, Clone)]
pub struct Outcome {
    pub instances: u64,
    /// Implication instances whose hypothesis was false.
    pub vacuous: u64,
    /// First failing instance.
    pub failure: Option<Value>,
    /// First instance of a recorded discrepancy that is not a failure.
    pub flag: Option<Value>,
    pub notes: BTreeMap<String, Value>,
}

impl Outcome {
    fn fail(&mut self, witness: Value) {
        if self.failure.is_none() {
            self.failure = Some(witness);
        }
    }

    /// All sides must agree.
    fn equiv(&mut self, params: Value, sides: &[(&str, bool)]) {
        self.instances += 1;
        if sides.windows(2).any(|w| w[0].1 != w[1].1) {
            let values: BTreeMap<&str, bool> = sides.iter().copied().collect();
            self.fail(json!({ "instance": params, "values": values }));
        }
    }

    /// `hyp` implies the conclusion, which is only computed when needed.
    fn implies(&mut self, params: Value, hyp: bool, concl: impl FnOnce() -> Result<bool>) -> Result<()> {
        self.instances += 1;
        if !hyp {
            self.vacuous += 1;
        } else if !concl()? {
            self.fail(json!({ "instance": params, "hypothesis": true, "conclusion": false }));
        }
        Ok(())
    }

    fn holds(&mut self, params: Value, ok: bool) {
        self.instances += 1;
        if !ok {
            self.fail(json!({ "instance": params }));
        }
    }

    fn note(&mut self, key: &str, v: Value) {
        self.notes.insert(key.to_string(), v);
    }
}

/// Inputs of one (check, ring) evaluation.
pub struct Ctx<'a> {
    pub item: &'a CorpusRing,
    pub spec: &'a CorpusSpec,
    memo: std::cell::RefCell<HashMap<(u64, u64), bool>>,
}

impl<'a> Ctx<'a> {
    pub fn new(item: &'a CorpusRing, spec: &'a CorpusSpec) -> Self {
        Ctx {
            item,
            spec,
            memo: Default::default(),
        }
    }

    fn ring(&self) -> &FiniteRing {
        &self.item.ring
    }

    fn part(&self, i: usize) -> &FiniteRing {
        &self.item.parts[i]
    }

    /// `R` is n-ΔU, memoized per ring and exponent.
    fn ndu(&self, r: &FiniteRing, n: u64) -> Result<bool> {
        if let Some(&v) = self.memo.borrow().get(&(r.id(), n)) {
            return Ok(v);
        }
        let v = is_n_delta_u(r, n)?.value;
        self.memo.borrow_mut().insert((r.id(), n), v);
        Ok(v)
    }

    /// The configured exponent range plus the least valid exponent of each ring.
    fn ns(&self, rings: &[&FiniteRing]) -> Result<Vec<u64>> {
        let [lo, hi] = self.spec.n_range;
        let mut set: BTreeSet<u64> = (lo..=hi).collect();
        for r in rings {
            set.insert(delta_u_exponent(r)?.n_min);
        }
        Ok(set.into_iter().collect())
    }

    fn odd_ns(&self, rings: &[&FiniteRing]) -> Result<Vec<u64>> {
        Ok(self.ns(rings)?.into_iter().filter(|n| n % 2 == 1).collect())
    }

    fn int_arg(&self, i: usize) -> u64 {
        match self.item.expr.args[i] {
            Arg::Int(n) => n,
            _ => unreachable!("argument {i} of {} is not an integer", self.item.text),
        }
    }

    fn elem_arg(&self, i: usize) -> Elem {
        match self.item.expr.args[i] {
            Arg::Elem(k) => k as Elem,
            _ => unreachable!("argument {i} of {} is not an element", self.item.text),
        }
    }
}

fn ctor(item: &CorpusRing) -> Ctor {
    item.expr.ctor
}

/// A lazily computed ring-level predicate value.
struct Lazy<'r> {
    cell: OnceCell<bool>,
    f: Box<dyn Fn() -> Result<bool> + 'r>,
}

impl<'r> Lazy<'r> {
    fn new(f: impl Fn() -> Result<bool> + 'r) -> Self {
        Lazy {
            cell: OnceCell::new(),
            f: Box::new(f),
        }
    }

    fn get(&self) -> Result<bool> {
        if let Some(&v) = self.cell.get() {
            return Ok(v);
        }
        let v = (self.f)()?;
        let _ = self.cell.set(v);
        Ok(v)
    }
}

fn two_in_delta(r: &FiniteRing) -> Result<bool> {
    Ok(delta(r)?.contains(r.int(2)))
}

// ---- Section: basic closure properties ----

pub fn applies_product(item: &CorpusRing) -> bool {
    ctor(item) == Ctor::Prod
}

pub fn check_product(cx: &Ctx) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut all: Vec<&FiniteRing> = vec![cx.ring()];
    all.extend(cx.item.parts.iter());
    for n in cx.ns(&all)? {
        let whole = cx.ndu(cx.ring(), n)?;
        let mut comps = true;
        for p in &cx.item.parts {
            comps &= cx.ndu(p, n)?;
        }
        out.equiv(json!({ "n": n }), &[("product", whole), ("every component", comps)]);
    }
    Ok(out)
}

pub fn check_odd_two_in_delta(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let two = two_in_delta(r)?;
    let mut even_witnesses = Vec::new();
    for n in cx.ns(&[r])? {
        if n % 2 == 1 {
            out.implies(json!({ "n": n }), cx.ndu(r, n)?, || Ok(two))?;
        } else if cx.ndu(r, n)? && !two {
            even_witnesses.push(n);
        }
    }
    if !even_witnesses.is_empty() {
        out.note("even exponents without 2 in delta", json!(even_witnesses));
    }
    if cx.item.text == "Zmod(6)" {
        // The oddness hypothesis cannot be dropped.
        out.holds(json!({ "remark": "Zmod(6) is 2-ΔU with 2 outside Δ" }), cx.ndu(r, 2)? && !two);
    }
    Ok(out)
}

pub fn applies_small_ideals(item: &CorpusRing) -> bool {
    item.ring.size() <= IDEAL_CAP
}

pub fn check_lifting_image(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let ns = cx.ns(&[r])?;
    for ideal in all_ideals(r)? {
        if ideal.len() == 1 || ideal.len() == r.size() {
            continue;
        }
        let lift = crate::predicates::units_lift(r, &ideal)?.value;
        let (q, _) = quotient(r, &ideal)?;
        for &n in &ns {
            let hyp = lift && cx.ndu(r, n)?;
            out.implies(json!({ "n": n, "ideal": ideal.to_vec() }), hyp, || cx.ndu(&q, n))?;
        }
    }
    Ok(out)
}

pub fn check_subrings(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let ns = cx.ns(&[r])?;
    let d = delta(r)?;
    if r.size() <= SUBRING_CAP {
        let subs = unital_subrings(r, SUBRING_CAP)?;
        out.note("subrings", json!(subs.len()));
        for inc in &subs {
            let range = inc.range();
            let ds = inc.image(delta(&inc.sub)?);
            let hyp = range.intersection(d).is_subset_of(&ds);
            for &n in &ns {
                out.implies(
                    json!({ "n": n, "subring": range.to_vec() }),
                    hyp && cx.ndu(r, n)?,
                    || cx.ndu(&inc.sub, n),
                )?;
            }
        }
    } else {
        out.note("subrings", json!(format!("center only (size > {SUBRING_CAP})")));
    }
    let c = center_ring(r);
    for &n in &ns {
        out.implies(json!({ "n": n, "subring": "center" }), cx.ndu(r, n)?, || cx.ndu(&c.sub, n))?;
    }
    Ok(out)
}

/// Ideals inside `J(R)` other than zero: all of them up to the ideal
/// enumeration cap, otherwise `J`, its powers and principal ideals of
/// radical elements (and sums of these) up to `limit` ideals. The flag
/// says whether the list is complete.
pub fn radical_ideals(r: &FiniteRing, limit: usize) -> Result<(Vec<Subset>, bool)> {
    let j = jacobson(r)?;
    if j.len() == 1 {
        return Ok((Vec::new(), true));
    }
    if r.size() <= IDEAL_CAP {
        let list = all_ideals(r)?
            .into_iter()
            .filter(|i| i.len() > 1 && i.is_subset_of(j))
            .collect();
        return Ok((list, true));
    }
    let mut seen = std::collections::HashSet::new();
    let mut list = Vec::new();
    let mut push = |s: Subset, list: &mut Vec<Subset>| {
        if s.len() > 1 && seen.insert(s.clone()) {
            list.push(s);
        }
    };
    let mut power = j.clone();
    while power.len() > 1 && list.len() < limit {
        let next = ideal_product(r, &power, j);
        let done = next == power;
        push(power, &mut list);
        if done {
            break;
        }
        power = next;
    }
    for a in j.iter() {
        if list.len() >= limit {
            return Ok((list, false));
        }
        push(ideal_generated(r, &[a]), &mut list);
    }
    let mut frontier = 0;
    while frontier < list.len() {
        let end = list.len();
        for i in frontier..end {
            for k in 0..i {
                if list.len() >= limit {
                    return Ok((list, false));
                }
                let s = crate::ideal::ideal_sum(r, &list[i], &list[k]);
                push(s, &mut list);
            }
        }
        frontier = end;
    }
    Ok((list, true))
}

pub fn check_radical_quotients(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let ns = cx.ns(&[r])?;
    let (ideals, complete) = radical_ideals(r, cx.spec.radical_ideal_limit)?;
    out.note("ideals", json!(ideals.len()));
    out.note("ideals complete", json!(complete));
    for ideal in &ideals {
        let (q, _) = quotient(r, ideal)?;
        for &n in &ns {
            out.equiv(
                json!({ "n": n, "ideal size": ideal.len() }),
                &[("R", cx.ndu(r, n)?), ("R/I", cx.ndu(&q, n)?)],
            );
        }
    }
    Ok(out)
}

pub fn check_corners(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let ns = cx.ns(&[r])?;
    for e in idempotents(r).iter() {
        if e == r.zero() || e == r.one() {
            continue;
        }
        let c = corner(r, e)?;
        for &n in &ns {
            out.implies(json!({ "n": n, "e": e }), cx.ndu(r, n)?, || cx.ndu(&c, n))?;
        }
    }
    Ok(out)
}

pub fn applies_matrix(item: &CorpusRing) -> bool {
    ctor(item) == Ctor::Mat && matches!(item.expr.args[0], Arg::Int(k) if k >= 2)
}

pub fn check_matrix_odd(cx: &Ctx) -> Result<Outcome> {
    let mut out = Outcome::default();
    for n in [1, 3, 5, 7] {
        out.holds(json!({ "n": n }), !cx.ndu(cx.ring(), n)?);
    }
    Ok(out)
}

pub fn check_dedekind_finite(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let df = Lazy::new(|| Ok(is_dedekind_finite(r)?.value));
    for n in cx.odd_ns(&[r])? {
        out.implies(json!({ "n": n }), cx.ndu(r, n)?, || df.get())?;
    }
    Ok(out)
}

/// Exponents `n` for the semilocal statement: the configured range, `(L + 1) / 2`
/// when the lcm `L` of unit orders is odd, and `Q` and `(Q + 1) / 2` for the
/// lcm `Q` of the `q - 1` over the residue components.
fn semilocal_ns(cx: &Ctx, qs: &[u64]) -> Result<Vec<u64>> {
    let [lo, hi] = cx.spec.n_range;
    let mut set: BTreeSet<u64> = (lo..=hi).collect();
    let l = delta_u_exponent(cx.ring())?.lcm;
    let q = qs.iter().fold(1, |acc, &q| lcm(acc, q - 1));
    for m in [l, q] {
        if m % 2 == 1 {
            set.insert((m + 1) / 2);
        }
    }
    set.insert(q);
    Ok(set.into_iter().collect())
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

pub fn check_semilocal(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let j = jacobson(r)?;
    let top = if j.len() == 1 { r.clone() } else { quotient(r, j)?.0 };
    let comps = semisimple_decomposition(&top)?;
    let mut field_sizes = Vec::new();
    let mut all_fields = true;
    for c in &comps {
        let f = crate::predicates::is_field(c)?.value;
        all_fields &= f;
        field_sizes.push(json!({ "size": c.size(), "field": f }));
    }
    out.note("components", json!(field_sizes));
    let qs: Vec<u64> = comps.iter().map(|c| c.size() as u64).collect();
    let mut literal_mismatch = Vec::new();
    for n in semilocal_ns(cx, &qs)? {
        let m = 2 * n - 1;
        let actual = cx.ndu(r, m)?;
        let literal = all_fields && qs.iter().all(|q| n % (q - 1) == 0);
        let variant = all_fields && qs.iter().all(|q| m % (q - 1) == 0);
        out.instances += 1;
        let record = json!({
            "n": n,
            "odd exponent": m,
            "is (2n-1)-ΔU": actual,
            "divisor (q-1) | n": literal,
            "divisor (q-1) | (2n-1)": variant,
        });
        if variant != actual {
            out.fail(record.clone());
        }
        if literal != actual {
            literal_mismatch.push(n);
            if out.flag.is_none() {
                out.flag = Some(record);
            }
        }
    }
    if !literal_mismatch.is_empty() {
        out.note("literal divisor disagrees at n", json!(literal_mismatch));
    }
    Ok(out)
}

pub fn check_reduced(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let semisimple = jacobson(r)?.len() == 1;
    let rihi = Lazy::new(|| Ok(right_ideals_have_idempotents(r)?.value));
    let reduced = Lazy::new(|| Ok(is_reduced(r)?.value));
    for m in cx.odd_ns(&[r])? {
        let hyp = semisimple && cx.ndu(r, m)? && rihi.get()?;
        out.implies(json!({ "odd exponent": m }), hyp, || reduced.get())?;
    }
    Ok(out)
}

struct RegularityFacts<'r> {
    regular: Lazy<'r>,
    strongly: Lazy<'r>,
    unit: Lazy<'r>,
    pi: Lazy<'r>,
    reduced: Lazy<'r>,
}

impl<'r> RegularityFacts<'r> {
    fn new(r: &'r FiniteRing) -> Self {
        RegularityFacts {
            regular: Lazy::new(move || Ok(is_regular(r)?.value)),
            strongly: Lazy::new(move || Ok(is_strongly_regular(r)?.value)),
            unit: Lazy::new(move || Ok(is_unit_regular(r)?.value)),
            pi: Lazy::new(move || Ok(is_pi_regular(r)?.value)),
            reduced: Lazy::new(move || Ok(is_reduced(r)?.value)),
        }
    }
}

pub fn check_boolean_like(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let f = RegularityFacts::new(r);
    for n in 1..=4u64 {
        let m = 2 * n - 1;
        let d = cx.ndu(r, m)?;
        let i = d && f.regular.get()?;
        let ii = d && f.reduced.get()? && f.pi.get()?;
        let iii = satisfies_power_identity(r, 2 * n)?.value;
        out.equiv(
            json!({ "n": n }),
            &[
                ("regular and (2n-1)-ΔU", i),
                ("pi-regular, reduced and (2n-1)-ΔU", ii),
                ("x^(2n) = x", iii),
            ],
        );
    }
    Ok(out)
}

pub fn check_boolean_like_regularities(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let f = RegularityFacts::new(r);
    for n in 1..=4u64 {
        let m = 2 * n - 1;
        let d = cx.ndu(r, m)?;
        out.equiv(
            json!({ "n": n }),
            &[
                ("regular and (2n-1)-ΔU", d && f.regular.get()?),
                ("strongly regular and (2n-1)-ΔU", d && f.strongly.get()?),
                ("unit-regular and (2n-1)-ΔU", d && f.unit.get()?),
                ("x^(2n) = x", satisfies_power_identity(r, 2 * n)?.value),
            ],
        );
    }
    Ok(out)
}

pub fn check_two_power(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let du = is_delta_u(r)?.value;
    let two = two_in_delta(r)?;
    let d = delta(r)?;
    for k in 1..=3u32 {
        let e = 1u64 << k;
        let root_closed = r
            .elements()
            .all(|x| !d.contains(r.pow(x, e)) || d.contains(x));
        let rhs = two && cx.ndu(r, e)? && root_closed;
        out.equiv(json!({ "k": k }), &[("ΔU", du), ("three conditions", rhs)]);
    }
    Ok(out)
}

pub fn check_exchange_clean(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let ex = Lazy::new(|| Ok(is_exchange(r)?.value));
    let cl = Lazy::new(|| Ok(is_clean(r)?.value));
    for m in cx.odd_ns(&[r])? {
        out.implies(json!({ "odd exponent": m }), cx.ndu(r, m)?, || Ok(ex.get()? == cl.get()?))?;
    }
    Ok(out)
}

pub fn check_semiregular_exchange_clean(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let sr = Lazy::new(|| Ok(is_semiregular(r)?.value));
    let ex = Lazy::new(|| Ok(is_exchange(r)?.value));
    let cl = Lazy::new(|| Ok(is_clean(r)?.value));
    for k in 1..=3u32 {
        let m = (1u64 << k) - 1;
        out.implies(json!({ "k": k, "exponent": m }), cx.ndu(r, m)?, || {
            let (a, b, c) = (sr.get()?, ex.get()?, cl.get()?);
            Ok(a == b && b == c)
        })?;
    }
    Ok(out)
}

pub fn check_upward_closed(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let ns = cx.ns(&[r])?;
    let top = 3 * ns.last().copied().unwrap_or(1);
    for &n in &ns {
        for k in (2 * n..=top).step_by(n as usize) {
            out.implies(json!({ "n": n, "k": k }), cx.ndu(r, n)?, || cx.ndu(r, k))?;
        }
    }
    Ok(out)
}

pub fn applies_field(item: &CorpusRing) -> bool {
    match (ctor(item), &item.expr.args[..]) {
        (Ctor::GF, _) => true,
        (Ctor::Zmod, [Arg::Int(p)]) => crate::constructors::zmod(*p).is_ok_and(|z| {
            (2..*p).all(|d| d * d > *p || p % d != 0) && z.size() > 1
        }),
        _ => false,
    }
}

pub fn check_fields(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let q = r.size() as u64;
    for n in 1..=12u64 {
        out.equiv(json!({ "n": n }), &[("n-ΔU", cx.ndu(r, n)?), ("(q-1) | n", n % (q - 1) == 0)]);
    }
    Ok(out)
}

// ---- Section: extensions ----

/// `ext` is n-ΔU exactly when every base ring is, over all tested n.
fn transfer(cx: &Ctx, ext: &FiniteRing, bases: &[&FiniteRing]) -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut rings = vec![ext];
    rings.extend_from_slice(bases);
    for n in cx.ns(&rings)? {
        let mut b = true;
        for base in bases {
            b &= cx.ndu(base, n)?;
        }
        out.equiv(json!({ "n": n }), &[("extension", cx.ndu(ext, n)?), ("base", b)]);
    }
    Ok(out)
}

pub fn applies_triv(item: &CorpusRing) -> bool {
    ctor(item) == Ctor::Triv
}

pub fn check_trivial_extension(cx: &Ctx) -> Result<Outcome> {
    transfer(cx, cx.ring(), &[cx.part(0)])
}

pub fn applies_ut(item: &CorpusRing) -> bool {
    ctor(item) == Ctor::UT
}

pub fn check_upper_triangular(cx: &Ctx) -> Result<Outcome> {
    transfer(cx, cx.ring(), &[cx.part(0)])
}

pub fn applies_skew_ut(item: &CorpusRing) -> bool {
    ctor(item) == Ctor::SkewUT
}

pub fn check_skew_triangular(cx: &Ctx) -> Result<Outcome> {
    transfer(cx, cx.ring(), &[cx.part(0)])
}

pub fn applies_poly_quot(item: &CorpusRing) -> bool {
    ctor(item) == Ctor::PolyQ && matches!(item.expr.args[2], Arg::Int(n) if n >= 2)
}

pub fn applies_poly_quot_plain(item: &CorpusRing) -> bool {
    applies_poly_quot(item) && item.expr.args[1] == Arg::Endo(EndoName::Id)
}

pub fn check_truncated_polynomials(cx: &Ctx) -> Result<Outcome> {
    transfer(cx, cx.ring(), &[cx.part(0)])
}

pub fn applies_dt(item: &CorpusRing) -> bool {
    ctor(item) == Ctor::DT
}

fn invariant_profile(r: &FiniteRing) -> Result<Value> {
    Ok(json!({
        "size": r.size(),
        "units": units(r)?.len(),
        "jacobson": jacobson(r)?.len(),
        "delta": delta(r)?.len(),
        "idempotents": idempotents(r).len(),
        "nilpotents": nilpotents(r).len(),
        "center": center(r).len(),
    }))
}

pub fn check_dt(cx: &Ctx) -> Result<Outcome> {
    let r = cx.part(0);
    let dt = cx.ring();
    let x = poly_quot(r, &Endomorphism::identity(r), 2)?;
    let xy = poly_quot(&x, &Endomorphism::identity(&x), 2)?;
    let mut out = Outcome::default();
    for n in cx.ns(&[r, dt, &xy])? {
        let d = cx.ndu(dt, n)?;
        out.equiv(
            json!({ "n": n }),
            &[
                ("R", cx.ndu(r, n)?),
                ("DT(R, M) with M = R", d),
                ("DT(R, R)", d),
                ("R[x, y]/(x^2, y^2)", cx.ndu(&xy, n)?),
            ],
        );
    }
    let (a, b) = (invariant_profile(dt)?, invariant_profile(&xy)?);
    out.holds(json!({ "invariants": { "DT(R, R)": a.clone(), "R[x, y]/(x^2, y^2)": b.clone() } }), a == b);
    Ok(out)
}

/// Components and trace-ideal conditions of a Morita context instance.
struct Morita {
    a: FiniteRing,
    b: FiniteRing,
    mn_in_ja: bool,
    nm_in_jb: bool,
}

fn scaled_in_radical(r: &FiniteRing, s: Elem) -> Result<bool> {
    let j = jacobson(r)?;
    Ok(r.elements().all(|x| j.contains(r.mul(s, x))))
}

fn morita_parts(cx: &Ctx) -> Result<Option<Morita>> {
    let item = cx.item;
    Ok(match ctor(item) {
        Ctor::Ks => {
            // MN = NM = sR.
            let r = cx.part(0);
            let t = scaled_in_radical(r, cx.elem_arg(1))?;
            Some(Morita { a: r.clone(), b: r.clone(), mn_in_ja: t, nm_in_jb: t })
        }
        Ctor::Mns if cx.int_arg(0) == 2 => {
            // Both pairings pick up s^2.
            let r = cx.part(0);
            let s = cx.elem_arg(2);
            let t = scaled_in_radical(r, r.mul(s, s))?;
            Some(Morita { a: r.clone(), b: r.clone(), mn_in_ja: t, nm_in_jb: t })
        }
        Ctor::TrivMorita => {
            let a = cx.part(0).clone();
            let b = item.parts.get(1).cloned().unwrap_or_else(|| a.clone());
            Some(Morita { a, b, mn_in_ja: true, nm_in_jb: true })
        }
        _ => None,
    })
}

pub fn applies_morita(item: &CorpusRing) -> bool {
    match ctor(item) {
        Ctor::Ks | Ctor::TrivMorita => true,
        Ctor::Mns => item.expr.args[0] == Arg::Int(2),
        _ => false,
    }
}

pub fn check_morita_odd(cx: &Ctx) -> Result<Outcome> {
    let m = morita_parts(cx)?.expect("applicability filtered");
    let mut out = Outcome::default();
    out.note("MN in J(A)", json!(m.mn_in_ja));
    out.note("NM in J(B)", json!(m.nm_in_jb));
    for n in cx.odd_ns(&[cx.ring(), &m.a, &m.b])? {
        let rhs = cx.ndu(&m.a, n)? && cx.ndu(&m.b, n)? && m.mn_in_ja && m.nm_in_jb;
        out.equiv(json!({ "odd exponent": n }), &[("context", cx.ndu(cx.ring(), n)?), ("components and traces", rhs)]);
    }
    Ok(out)
}

pub fn check_morita_radical_traces(cx: &Ctx) -> Result<Outcome> {
    let m = morita_parts(cx)?.expect("applicability filtered");
    let mut out = Outcome::default();
    let hyp = m.mn_in_ja && m.nm_in_jb;
    for n in cx.ns(&[cx.ring(), &m.a, &m.b])? {
        out.implies(json!({ "n": n }), hyp, || {
            Ok(cx.ndu(cx.ring(), n)? == (cx.ndu(&m.a, n)? && cx.ndu(&m.b, n)?))
        })?;
    }
    Ok(out)
}

pub fn applies_ftri(item: &CorpusRing) -> bool {
    ctor(item) == Ctor::FTri
}

pub fn check_formal_triangular(cx: &Ctx) -> Result<Outcome> {
    let r = cx.part(0);
    let s = cx.item.parts.get(1).unwrap_or(r);
    transfer(cx, cx.ring(), &[r, s])
}

pub fn applies_ks(item: &CorpusRing) -> bool {
    ctor(item) == Ctor::Ks
}

fn central_radical(r: &FiniteRing, s: Elem) -> Result<bool> {
    Ok(center(r).contains(s) && jacobson(r)?.contains(s))
}

pub fn check_ks(cx: &Ctx) -> Result<Outcome> {
    let r = cx.part(0);
    let hyp = central_radical(r, cx.elem_arg(1))?;
    let mut out = Outcome::default();
    for n in cx.ns(&[cx.ring(), r])? {
        out.implies(json!({ "n": n }), hyp, || Ok(cx.ndu(cx.ring(), n)? == cx.ndu(r, n)?))?;
    }
    Ok(out)
}

pub fn applies_mns(item: &CorpusRing) -> bool {
    ctor(item) == Ctor::Mns
}

pub fn check_mns(cx: &Ctx) -> Result<Outcome> {
    let r = cx.part(0);
    let s = cx.elem_arg(2);
    let hyp = central_radical(r, s)?;
    let mut out = Outcome::default();
    for n in cx.ns(&[cx.ring(), r])? {
        out.implies(json!({ "n": n }), hyp, || Ok(cx.ndu(cx.ring(), n)? == cx.ndu(r, n)?))?;
    }
    if cx.int_arg(0) == 2 {
        let ks = k_s(r, r.mul(s, s))?;
        out.holds(json!({ "identity": "Mns(2, R, #s) has the tables of Ks(R, #s^2)" }), cx.ring().tables_equal(&ks));
    }
    Ok(out)
}

pub fn applies_triv_morita(item: &CorpusRing) -> bool {
    ctor(item) == Ctor::TrivMorita
}

pub fn check_trivial_morita(cx: &Ctx) -> Result<Outcome> {
    let a = cx.part(0);
    let b = cx.item.parts.get(1).unwrap_or(a);
    let (m, n) = if cx.item.parts.len() == 1 {
        (Arc::new(Bimodule::regular(a)), Arc::new(Bimodule::regular(a)))
    } else {
        (Arc::new(Bimodule::zero(a, b)), Arc::new(Bimodule::zero(b, a)))
    };
    let ab = product(&[a.clone(), b.clone()])?;
    let sum = Arc::new(Bimodule::morita_sum(&ab, m, n)?);
    let triv = trivial_extension(&ab, &sum)?;
    let mut out = Outcome::default();
    for k in cx.ns(&[cx.ring(), a, b])? {
        out.equiv(
            json!({ "n": k }),
            &[
                ("context", cx.ndu(cx.ring(), k)?),
                ("T(A x B, M + N)", cx.ndu(&triv, k)?),
                ("A and B", cx.ndu(a, k)? && cx.ndu(b, k)?),
            ],
        );
    }
    let (p, q) = (invariant_profile(cx.ring())?, invariant_profile(&triv)?);
    out.holds(json!({ "invariants": { "context": p.clone(), "T(A x B, M + N)": q.clone() } }), p == q);
    Ok(out)
}

// ---- Section: group rings ----

pub fn applies_group_ring(item: &CorpusRing) -> bool {
    ctor(item) == Ctor::GrpRing
}

/// `p` when `G` is a p-group and `p` lies in `J(R)`.
fn radical_p_group(rg: &FiniteRing) -> Result<Option<u64>> {
    let (r, g) = group_ring_parts(rg)?;
    Ok(match g.p_group_prime() {
        Some(p) if jacobson(&r)?.contains(r.int(p)) => Some(p),
        _ => None,
    })
}

pub fn check_group_ring_descends(cx: &Ctx) -> Result<Outcome> {
    let rg = cx.ring();
    let r = cx.part(0);
    let mut out = Outcome::default();
    for n in cx.ns(&[rg, r])? {
        out.implies(json!({ "n": n }), cx.ndu(rg, n)?, || cx.ndu(r, n))?;
    }
    Ok(out)
}

pub fn check_augmentation_radical(cx: &Ctx) -> Result<Outcome> {
    let rg = cx.ring();
    let mut out = Outcome::default();
    let p = radical_p_group(rg)?;
    out.note("p", json!(p));
    out.implies(json!({ "p-group with p in J(R)": p.is_some() }), p.is_some(), || {
        Ok(augmentation_ideal(rg)?.is_subset_of(jacobson(rg)?))
    })?;
    Ok(out)
}

pub fn check_group_ring_ascends(cx: &Ctx) -> Result<Outcome> {
    let rg = cx.ring();
    let r = cx.part(0);
    let p = radical_p_group(rg)?;
    let mut out = Outcome::default();
    for n in cx.ns(&[rg, r])? {
        out.implies(json!({ "n": n }), p.is_some() && cx.ndu(r, n)?, || cx.ndu(rg, n))?;
    }
    Ok(out)
}

// ---- Section: identities for Δ ----

pub fn check_delta_identities(cx: &Ctx) -> Result<Outcome> {
    let r = cx.ring();
    let mut out = Outcome::default();
    let d = delta(r)?;
    let j = jacobson(r)?;
    out.holds(json!({ "identity": "Δ(R) = J(T), T generated by units" }), &delta_via_unit_subring(r)? == d);
    out.holds(json!({ "identity": "J(R) ⊆ Δ(R)" }), j.is_subset_of(d));
    out.equiv(json!({ "identity": "Δ = J iff Δ is an ideal" }), &[("Δ = J", d == j), ("Δ is an ideal", is_ideal(r, d)?)]);
    if ctor(cx.item) == Ctor::Triv {
        // Ids of T(R, R) are r * |R| + m.
        let base = cx.part(0);
        let k = base.size() as Elem;
        let lift = |s: &Subset| r.subset_from(s.iter().flat_map(|x| (0..k).map(move |m| x * k + m)));
        out.holds(json!({ "identity": "Δ(T(R, R)) = T(Δ(R), R)" }), d == &lift(delta(base)?));
        out.holds(json!({ "identity": "U(T(R, R)) = T(U(R), R)" }), units(r)? == &lift(units(base)?));
    }
    Ok(out)
}

/// Errors carry through; engine cross-check failures stay distinguishable.
pub fn describe_error(e: &RingError) -> Value {
    json!({ "code": e.code(), "message": e.to_string(), "resource_cap": e.is_resource_cap() })
}
