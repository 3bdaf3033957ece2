//! Declarative corpus specifications and their deterministic expansion.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::expr::{parse_ring_expr, Arg, Ctor, Evaluator, ExprError, RingExpr};
use crate::invariants::jacobson;
use crate::ring::FiniteRing;

pub const DEFAULT_CORPUS_TOML: &str = include_str!("../../corpus/default.toml");

fn default_seed() -> u64 {
    0
}
fn default_size_cap() -> usize {
    4096
}
fn default_n_range() -> [u64; 2] {
    [1, 8]
}
fn default_radical_ideal_limit() -> usize {
    64
}
fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSpec {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_size_cap")]
    pub size_cap: usize,
    /// Inclusive range of exponents tested for parameterized classes.
    #[serde(default = "default_n_range")]
    pub n_range: [u64; 2],
    /// Adds `Quot(R, J)` for every ring with a nonzero proper radical.
    #[serde(default = "yes")]
    pub quotient_by_radical: bool,
    /// Rings too large for full ideal enumeration get at most this many
    /// ideals inside the radical.
    #[serde(default = "default_radical_ideal_limit")]
    pub radical_ideal_limit: usize,
    #[serde(default)]
    pub families: BTreeMap<String, Family>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    /// Expression text with `{param}` placeholders.
    pub template: String,
    /// Helper families are referenced by others but not emitted.
    #[serde(default = "yes")]
    pub emit: bool,
    /// Keeps only combinations whose value indices are non-decreasing.
    #[serde(default)]
    pub unordered: bool,
    /// Pairs the i-th values of all parameters instead of taking products.
    #[serde(default)]
    pub zip: bool,
    #[serde(default)]
    pub max_size: Option<usize>,
    #[serde(flatten)]
    pub params: BTreeMap<String, ParamValues>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValues {
    List(Vec<Scalar>),
    Range { range: [i64; 2] },
    Families { families: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("corpus config: {0}")]
    Config(String),
    #[error("corpus entry `{text}`: {error}")]
    Expr { text: String, error: ExprError },
}

impl CorpusError {
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, CorpusError::Expr { error, .. } if error.is_resource_cap())
    }
}

/// One expanded corpus ring with the rings of its ring-valued arguments.
#[derive(Clone)]
pub struct CorpusRing {
    pub text: String,
    pub expr: RingExpr,
    pub ring: FiniteRing,
    pub parts: Vec<FiniteRing>,
}

pub struct Corpus {
    pub spec: CorpusSpec,
    pub rings: Vec<CorpusRing>,
    /// Expansions dropped by a size cap, in expansion order.
    pub skipped: Vec<String>,
}

impl CorpusSpec {
    pub fn from_toml(text: &str) -> Result<Self, CorpusError> {
        let spec: CorpusSpec = toml::from_str(text).map_err(|e| CorpusError::Config(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn default_spec() -> Self {
        CorpusSpec::from_toml(DEFAULT_CORPUS_TOML).expect("bundled corpus parses")
    }

    /// A spec containing exactly the given expressions.
    pub fn from_expressions(exprs: &[&str]) -> Self {
        let mut fam = Family {
            template: "{R}".into(),
            emit: true,
            unordered: false,
            zip: false,
            max_size: None,
            params: BTreeMap::new(),
        };
        fam.params.insert(
            "R".into(),
            ParamValues::List(exprs.iter().map(|s| Scalar::Text(s.to_string())).collect()),
        );
        CorpusSpec {
            seed: default_seed(),
            size_cap: default_size_cap(),
            n_range: default_n_range(),
            quotient_by_radical: false,
            radical_ideal_limit: default_radical_ideal_limit(),
            families: BTreeMap::from([("given".to_string(), fam)]),
        }
    }

    fn validate(&self) -> Result<(), CorpusError> {
        let [lo, hi] = self.n_range;
        if lo == 0 || lo > hi {
            return Err(CorpusError::Config(format!("n_range [{lo}, {hi}] must satisfy 1 <= lo <= hi")));
        }
        for (name, f) in &self.families {
            for (p, v) in &f.params {
                if !f.template.contains(&format!("{{{p}}}")) {
                    return Err(CorpusError::Config(format!("family {name}: parameter {p} unused in template")));
                }
                if let ParamValues::Families { families } = v {
                    if let Some(missing) = families.iter().find(|r| !self.families.contains_key(*r)) {
                        return Err(CorpusError::Config(format!("family {name}: unknown family {missing}")));
                    }
                }
            }
            if f.zip {
                let lens: HashSet<usize> = f
                    .params
                    .keys()
                    .map(|p| self.values(name, p, 0).map(|v| v.len()))
                    .collect::<Result<_, _>>()?;
                if lens.len() > 1 {
                    return Err(CorpusError::Config(format!("family {name}: zipped parameters differ in length")));
                }
            }
        }
        Ok(())
    }

    fn values(&self, family: &str, param: &str, depth: usize) -> Result<Vec<String>, CorpusError> {
        let f = &self.families[family];
        Ok(match &f.params[param] {
            ParamValues::List(items) => items
                .iter()
                .map(|s| match s {
                    Scalar::Int(n) => n.to_string(),
                    Scalar::Text(t) => t.clone(),
                })
                .collect(),
            ParamValues::Range { range: [lo, hi] } => (*lo..=*hi).map(|n| n.to_string()).collect(),
            ParamValues::Families { families } => {
                let mut out = Vec::new();
                for r in families {
                    out.extend(self.expand_family(r, depth + 1)?);
                }
                out
            }
        })
    }

    /// Template instances of one family, before evaluation.
    fn expand_family(&self, name: &str, depth: usize) -> Result<Vec<String>, CorpusError> {
        if depth > self.families.len() {
            return Err(CorpusError::Config(format!("family {name}: reference cycle")));
        }
        let f = &self.families[name];
        let names: Vec<&String> = f.params.keys().collect();
        let lists: Vec<Vec<String>> = names
            .iter()
            .map(|p| self.values(name, p, depth))
            .collect::<Result<_, _>>()?;
        let fill = |idx: &[usize]| {
            let mut t = f.template.clone();
            for (k, p) in names.iter().enumerate() {
                t = t.replace(&format!("{{{p}}}"), &lists[k][idx[k]]);
            }
            t
        };
        let mut out = Vec::new();
        if f.zip {
            let len = lists.first().map_or(1, Vec::len);
            for i in 0..len {
                out.push(fill(&vec![i; names.len()]));
            }
            return Ok(out);
        }
        if lists.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        let mut idx = vec![0usize; names.len()];
        loop {
            if !f.unordered || idx.windows(2).all(|w| w[0] <= w[1]) {
                out.push(fill(&idx));
            }
            // Odometer, last parameter fastest.
            let mut k = names.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < lists[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// Expands, evaluates and filters the corpus.
    pub fn expand(&self) -> Result<Corpus, CorpusError> {
        let mut ev = Evaluator::new();
        let mut seen = HashSet::new();
        let mut rings = Vec::new();
        let mut skipped = Vec::new();
        for (name, f) in &self.families {
            if !f.emit {
                continue;
            }
            let cap = f.max_size.unwrap_or(usize::MAX).min(self.size_cap);
            for text in self.expand_family(name, 0)? {
                let expr = parse_ring_expr(&text).map_err(|error| CorpusError::Expr {
                    text: text.clone(),
                    error,
                })?;
                let canonical = expr.to_string();
                if !seen.insert(canonical.clone()) {
                    continue;
                }
                match ev.eval(&expr, &text) {
                    Ok(ring) if ring.size() <= cap => {
                        rings.push(corpus_ring(&mut ev, canonical, expr, ring)?);
                    }
                    Ok(_) => skipped.push(canonical),
                    Err(e) if e.is_resource_cap() => skipped.push(canonical),
                    Err(error) => return Err(CorpusError::Expr { text, error }),
                }
            }
        }
        if self.quotient_by_radical {
            let mut extra = Vec::new();
            for item in &rings {
                let j = jacobson(&item.ring).map_err(|e| CorpusError::Config(e.to_string()))?;
                if j.len() <= 1 || j.len() == item.ring.size() {
                    continue;
                }
                let expr = RingExpr::new(Ctor::Quot, vec![Arg::Ring(item.expr.clone()), Arg::Radical]);
                let text = expr.to_string();
                if seen.insert(text.clone()) {
                    let ring = ev
                        .eval(&expr, &text)
                        .map_err(|error| CorpusError::Expr { text: text.clone(), error })?;
                    extra.push(corpus_ring(&mut ev, text, expr, ring)?);
                }
            }
            rings.extend(extra);
        }
        Ok(Corpus {
            spec: self.clone(),
            rings,
            skipped,
        })
    }
}

fn corpus_ring(
    ev: &mut Evaluator,
    text: String,
    expr: RingExpr,
    ring: FiniteRing,
) -> Result<CorpusRing, CorpusError> {
    let mut parts = Vec::new();
    for a in &expr.args {
        if let Arg::Ring(sub) = a {
            // Memoized, so this returns the same ring object used above.
            parts.push(ev.eval_part(sub).map_err(|error| CorpusError::Expr {
                text: text.clone(),
                error,
            })?);
        }
    }
    Ok(CorpusRing {
        text,
        expr,
        ring,
        parts,
    })
}

/// The bundled default corpus, expanded.
pub fn default_corpus() -> Corpus {
    CorpusSpec::default_spec()
        .expand()
        .expect("bundled corpus expands")
}
