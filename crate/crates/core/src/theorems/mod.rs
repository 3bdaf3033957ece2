//! Registry of executable statements about n-ΔU rings, run over a corpus.

mod checks;
mod corpus;
mod search;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub use checks::{radical_ideals, Outcome};
pub use corpus::{
    default_corpus, Corpus, CorpusError, CorpusRing, CorpusSpec, Family, ParamValues, Scalar,
    DEFAULT_CORPUS_TOML,
};
pub use search::{parse_formula, search_counterexamples, Formula, FormulaError};

use checks::*;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Marker carried by results whose statement, read literally, disagrees
/// with the computation while a corrected reading agrees.
pub const FLAGGED_DISCREPANCY: &str = "flagged-discrepancy";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    /// Instances that can separate rings.
    Discriminating,
    /// Facts that hold for every finite ring; agreement is expected.
    Consistency,
    /// Identities between independent computations of the same subset.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// Every instance had a false hypothesis, or there were none.
    Vacuous,
    Flagged,
    Fail,
    Error,
}

pub struct TheoremCheck {
    pub id: &'static str,
    pub summary: &'static str,
    /// Quoted phrase of the statement being checked.
    pub anchor: &'static str,
    pub tier: Tier,
    pub applies: fn(&CorpusRing) -> bool,
    run: fn(&Ctx) -> crate::error::Result<Outcome>,
}

fn any(_: &CorpusRing) -> bool {
    true
}

macro_rules! check {
    ($id:literal, $tier:ident, $applies:expr, $run:expr, $anchor:literal, $summary:literal) => {
        TheoremCheck {
            id: $id,
            summary: $summary,
            anchor: $anchor,
            tier: Tier::$tier,
            applies: $applies,
            run: $run,
        }
    };
}

pub static REGISTRY: &[TheoremCheck] = &[
    check!("C2.14", Discriminating, any, check_boolean_like_regularities, "unit-regular (2n−1)-ΔU",
        "regular, strongly regular and unit-regular (2n-1)-ΔU rings all satisfy x^(2n) = x, and conversely"),
    check!("C3.10", Discriminating, applies_triv_morita, check_trivial_morita, "trivial Morita context",
        "a trivial Morita context is n-ΔU iff T(A x B, M + N) is iff A and B are"),
    check!("C3.11", Discriminating, applies_poly_quot, check_truncated_polynomials, "R[x;α]/(xⁿ) is a k-ΔU",
        "R[x; a]/(x^m) is n-ΔU iff R is"),
    check!("C3.12", Discriminating, applies_poly_quot_plain, check_truncated_polynomials, "R[x]/(xⁿ) is a k-ΔU",
        "R[x]/(x^m) is n-ΔU iff R is"),
    check!("C3.5", Discriminating, applies_dt, check_dt, "DT(R, M) is an n-ΔU",
        "R, DT(R, R) and R[x, y]/(x^2, y^2) are n-ΔU together"),
    check!("C3.7", Discriminating, applies_ftri, check_formal_triangular, "T(R,S,M)",
        "a formal triangular ring is n-ΔU iff both diagonal rings are"),
    check!("C3.8", Discriminating, applies_ks, check_ks, "K_s(R) is an n-ΔU",
        "for s central in J(R), K_s(R) is n-ΔU iff R is"),
    check!("C3.9", Discriminating, applies_mns, check_mns, "M_n(R;s) is a k-ΔU",
        "for s central in J(R), M_k(R; s) is n-ΔU iff R is; M_2(R; s) has the tables of K_(s^2)(R)"),
    check!("DELTA-AX", Oracle, any, check_delta_identities, "Δ(R)=J(T), where T is the subring",
        "Δ equals the pullback of J of the subring generated by units; J ⊆ Δ; Δ = J iff Δ is an ideal"),
    check!("GR1", Discriminating, applies_group_ring, check_group_ring_descends, "then R is too n-ΔU",
        "RG n-ΔU implies R n-ΔU"),
    check!("GR2", Discriminating, applies_group_ring, check_group_ring_ascends, "RG is an n-ΔU ring",
        "R n-ΔU, G a p-group and p in J(R) imply RG n-ΔU"),
    check!("L2.12", Discriminating, any, check_reduced, "then R is reduced",
        "J = 0, idempotents in nonzero right ideals and (2n-1)-ΔU imply reduced"),
    check!("L2.20", Discriminating, applies_field, check_fields, "(q−1) | n",
        "a finite field of order q is n-ΔU iff (q-1) | n"),
    check!("L4.14", Discriminating, applies_group_ring, check_augmentation_radical, "ε(RG) ⊆ J(RG)",
        "G a p-group with p in J(R) puts the augmentation ideal inside J(RG)"),
    check!("P2.10", Discriminating, applies_matrix, check_matrix_odd, "M_n(R) is not a (2k−1)-ΔU",
        "matrix rings of size at least 2 are not (2k-1)-ΔU"),
    check!("P2.11", Consistency, any, check_dedekind_finite, "Every (2k−1)-ΔU ring is Dedekind-finite",
        "(2k-1)-ΔU rings are Dedekind-finite"),
    check!("P2.15", Discriminating, any, check_two_power, "x^{2^k} ∈ Δ(R), then x ∈ Δ(R)",
        "ΔU iff 2 in Δ, 2^k-ΔU and x^(2^k) in Δ forces x in Δ"),
    check!("P2.17", Discriminating, any, check_upward_closed, "n-ΔU ring is a kn-ΔU",
        "n-ΔU implies kn-ΔU"),
    check!("P2.3", Discriminating, applies_product, check_product, "each direct component R_i is",
        "a direct product is n-ΔU iff every component is"),
    check!("P2.4", Discriminating, any, check_odd_two_in_delta, "where n is an odd number",
        "n odd and n-ΔU imply 2 in Δ; Zmod(6) shows oddness is needed"),
    check!("P2.5", Discriminating, applies_small_ideals, check_lifting_image, "all units of T lift to units",
        "if units lift modulo I, n-ΔU passes to R/I"),
    check!("P2.6", Discriminating, any, check_subrings, "S ∩ Δ(R) ⊆ Δ(S)",
        "n-ΔU passes to unital subrings S with S ∩ Δ(R) ⊆ Δ(S), and to the center"),
    check!("P2.9", Discriminating, any, check_corners, "eRe is an n-ΔU",
        "n-ΔU passes to corners eRe"),
    check!("P2.SL", Discriminating, any, check_semilocal, "R/J(R) ≅ ∏ F_{p^{k_i}}",
        "(2n-1)-ΔU iff R/J is a product of fields with (q-1) dividing the exponent"),
    check!("P3.14", Discriminating, applies_morita, check_morita_odd, "MN ⊆ J(A), NM ⊆ J(B)",
        "a Morita context is (2n-1)-ΔU iff A and B are and both trace ideals lie in the radicals"),
    check!("P3.3", Discriminating, applies_skew_ut, check_skew_triangular, "T_n(R,α) is a k-ΔU ring",
        "skew triangular matrices over R are n-ΔU iff R is"),
    check!("P3.4a", Discriminating, applies_triv, check_trivial_extension, "trivial extension T(R,M) is an n-ΔU",
        "T(R, R) is n-ΔU iff R is"),
    check!("P3.4b", Discriminating, applies_ut, check_upper_triangular, "trivial extension T(R,M) is an n-ΔU",
        "upper triangular matrices over R are n-ΔU iff R is"),
    check!("P3.6", Discriminating, applies_morita, check_morita_radical_traces, "both A and B are n-ΔU",
        "with both trace ideals in the radicals, a Morita context is n-ΔU iff A and B are"),
    check!("T2.13", Discriminating, any, check_boolean_like, "R has the identity x^{2n} = x",
        "regular (2n-1)-ΔU, reduced pi-regular (2n-1)-ΔU and x^(2n) = x coincide"),
    check!("T2.16", Consistency, any, check_exchange_clean, "R is a clean ring",
        "on (2n-1)-ΔU rings exchange and clean coincide"),
    check!("T2.22", Consistency, any, check_semiregular_exchange_clean, "R is a semi-regular ring",
        "on (2^k-1)-ΔU rings semiregular, exchange and clean coincide"),
    check!("T2.7", Discriminating, any, check_radical_quotients, "R is n-ΔU if, and only if, so is R/I",
        "for ideals I inside J(R), R is n-ΔU iff R/I is"),
];

pub fn lookup_check(id: &str) -> Option<&'static TheoremCheck> {
    REGISTRY.iter().find(|c| c.id == id)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TheoremError {
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub ring: String,
    pub status: Status,
    /// Instance counts and check-specific notes.
    pub params: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

fn evaluate(check: &TheoremCheck, item: &CorpusRing, spec: &CorpusSpec) -> CheckResult {
    let cx = Ctx::new(item, spec);
    let (status, params, witness) = match (check.run)(&cx) {
        Ok(o) => {
            let status = if o.failure.is_some() {
                Status::Fail
            } else if o.flag.is_some() {
                Status::Flagged
            } else if o.vacuous == o.instances {
                Status::Vacuous
            } else {
                Status::Pass
            };
            let mut params = json!({ "instances": o.instances, "vacuous": o.vacuous });
            if !o.notes.is_empty() {
                params["notes"] = json!(o.notes);
            }
            let witness = match (o.failure, o.flag) {
                (Some(w), _) => Some(w),
                (None, Some(f)) => Some(json!({ "marker": FLAGGED_DISCREPANCY, "instance": f })),
                _ => None,
            };
            (status, params, witness)
        }
        Err(e) => (Status::Error, json!({}), Some(describe_error(&e))),
    };
    CheckResult {
        check_id: check.id.to_string(),
        ring: item.text.clone(),
        status,
        params,
        witness,
    }
}

fn sort_results(results: &mut [CheckResult]) {
    results.sort_by(|a, b| (&a.check_id, &a.ring).cmp(&(&b.check_id, &b.ring)));
}

/// One result per applicable corpus ring, sorted by ring expression.
pub fn run_check(id: &str, corpus: &Corpus) -> Result<Vec<CheckResult>, TheoremError> {
    let check = lookup_check(id).ok_or_else(|| TheoremError::UnknownCheck(id.to_string()))?;
    let mut out: Vec<CheckResult> = corpus
        .rings
        .par_iter()
        .filter(|r| (check.applies)(r))
        .map(|r| evaluate(check, r, &corpus.spec))
        .collect();
    sort_results(&mut out);
    Ok(out)
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    /// Restricts the run to these ids.
    pub only: Option<Vec<String>>,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub corpus: Value,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn errors(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == Status::Error)
    }

    pub fn flagged(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == Status::Flagged)
    }

    pub fn summary(&self) -> Value {
        let mut per_check: BTreeMap<&str, BTreeMap<&str, u64>> = BTreeMap::new();
        let mut totals: BTreeMap<&str, u64> = BTreeMap::new();
        for r in &self.results {
            let key = status_name(r.status);
            *per_check.entry(&r.check_id).or_default().entry(key).or_default() += 1;
            *totals.entry(key).or_default() += 1;
        }
        let checks: BTreeMap<&str, Value> = per_check
            .into_iter()
            .map(|(id, counts)| {
                let tier = lookup_check(id).map(|c| c.tier);
                (id, json!({ "tier": tier, "statuses": counts }))
            })
            .collect();
        let discrepancies: Vec<Value> = self
            .flagged()
            .map(|r| json!({ "check_id": r.check_id, "ring": r.ring, "marker": FLAGGED_DISCREPANCY }))
            .collect();
        json!({
            "results": self.results.len(),
            "statuses": totals,
            "counterexamples": self.failures().count(),
            "errors": self.errors().count(),
            "checks": checks,
            "flagged_discrepancies": discrepancies,
        })
    }

    /// Canonical JSON: sorted keys, no timing, two-space indentation.
    pub fn to_json(&self) -> String {
        let v = json!({
            "schema_version": SCHEMA_VERSION,
            "tool_version": TOOL_VERSION,
            "corpus": self.corpus,
            "results": self.results,
            "summary": self.summary(),
        });
        let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Vacuous => "vacuous",
        Status::Flagged => "flagged",
        Status::Fail => "fail",
        Status::Error => "error",
    }
}

fn corpus_record(corpus: &Corpus) -> Value {
    json!({
        "seed": corpus.spec.seed,
        "size_cap": corpus.spec.size_cap,
        "n_range": corpus.spec.n_range,
        "rings": corpus.rings.iter().map(|r| r.text.as_str()).collect::<Vec<_>>(),
        "skipped": corpus.skipped,
    })
}

/// Runs the selected checks over every applicable ring.
pub fn run_suite(corpus: &Corpus, opts: &SuiteOptions) -> Result<Report, TheoremError> {
    let checks: Vec<&TheoremCheck> = match &opts.only {
        None => REGISTRY.iter().collect(),
        Some(ids) => ids
            .iter()
            .map(|id| lookup_check(id).ok_or_else(|| TheoremError::UnknownCheck(id.clone())))
            .collect::<Result<_, _>>()?,
    };
    let pairs: Vec<(&TheoremCheck, &CorpusRing)> = checks
        .iter()
        .flat_map(|c| corpus.rings.iter().filter(|r| (c.applies)(r)).map(move |r| (*c, r)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| TheoremError::Pool(e.to_string()))?;
    let mut results: Vec<CheckResult> = pool.install(|| {
        pairs
            .par_iter()
            .map(|(c, r)| evaluate(c, r, &corpus.spec))
            .collect()
    });
    sort_results(&mut results);
    results.dedup_by(|a, b| a.check_id == b.check_id && a.ring == b.ring);
    Ok(Report {
        corpus: corpus_record(corpus),
        results,
    })
}
