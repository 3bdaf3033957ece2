//! Boolean formulas over registered predicates, and corpus search.

use std::fmt;

use super::corpus::Corpus;
use crate::error::Result;
use crate::predicates::{evaluate, lookup};
use crate::ring::FiniteRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Pred { name: &'static str, param: Option<u64> },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("formula column {column}: {message}")]
pub struct FormulaError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Pred { name, param: Some(n) } => write!(f, "{name}({n})"),
            Formula::Pred { name, param: None } => write!(f, "{name}"),
            Formula::Not(a) => write!(f, "!{a}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

impl Formula {
    /// Short-circuits left to right.
    pub fn eval(&self, ring: &FiniteRing) -> Result<bool> {
        Ok(match self {
            Formula::Pred { name, param } => evaluate(ring, name, *param)?.value,
            Formula::Not(a) => !a.eval(ring)?,
            Formula::And(a, b) => a.eval(ring)? && b.eval(ring)?,
            Formula::Or(a, b) => a.eval(ring)? || b.eval(ring)?,
        })
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn column(&self) -> usize {
        let byte = self.chars.get(self.pos).map_or(self.src.len(), |c| c.0);
        self.src[..byte].chars().count() + 1
    }

    fn err<T>(&self, message: impl Into<String>) -> std::result::Result<T, FormulaError> {
        Err(FormulaError { column: self.column(), message: message.into() })
    }

    fn eat(&mut self, options: &[char]) -> bool {
        if self.peek().is_some_and(|c| options.contains(&c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> std::result::Result<Formula, FormulaError> {
        let mut lhs = self.and()?;
        while self.eat(&['|', '∨']) {
            lhs = Formula::Or(Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> std::result::Result<Formula, FormulaError> {
        let mut lhs = self.unary()?;
        while self.eat(&['&', '∧']) {
            lhs = Formula::And(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> std::result::Result<Formula, FormulaError> {
        if self.eat(&['!', '¬']) {
            return Ok(Formula::Not(Box::new(self.unary()?)));
        }
        if self.eat(&['(']) {
            let inner = self.or()?;
            if !self.eat(&[')']) {
                return self.err("expected `)`");
            }
            return Ok(inner);
        }
        self.atom()
    }

    fn integer(&mut self) -> std::result::Result<u64, FormulaError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        if digits.is_empty() {
            self.pos = start;
            return self.err("expected an integer");
        }
        digits.parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn atom(&mut self) -> std::result::Result<Formula, FormulaError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.1.is_ascii_alphanumeric() || c.1 == '_' || c.1 == '-')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.peek() {
                Some(c) => self.err(format!("unexpected `{c}`")),
                None => self.err("unexpected end of formula"),
            };
        }
        let word: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        let Some(info) = lookup(&word) else {
            self.pos = start;
            return self.err(format!("unknown predicate `{word}`"));
        };
        let param = if self.eat(&['(']) {
            let n = self.integer()?;
            if !self.eat(&[')']) {
                return self.err("expected `)`");
            }
            Some(n)
        } else {
            None
        };
        match (info.param_min, param) {
            (Some(min), Some(n)) if n < min => {
                self.pos = start;
                self.err(format!("{} needs a parameter of at least {min}", info.name))
            }
            (Some(_), None) => {
                self.pos = start;
                self.err(format!("{} needs an integer parameter", info.name))
            }
            (None, Some(_)) => {
                self.pos = start;
                self.err(format!("{} takes no parameter", info.name))
            }
            _ => Ok(Formula::Pred { name: info.name, param }),
        }
    }
}

/// Parses `&`, `|`, `!` (or `∧`, `∨`, `¬`) over predicate names, with
/// `name(k)` for parameterized ones. Underscores and hyphens are interchangeable.
pub fn parse_formula(text: &str) -> std::result::Result<Formula, FormulaError> {
    let mut p = Parser { chars: text.char_indices().collect(), pos: 0, src: text };
    let f = p.or()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// Corpus rings satisfying the formula, in corpus order.
pub fn search_counterexamples(corpus: &Corpus, formula: &Formula) -> Result<Vec<String>> {
    let mut hits = Vec::new();
    for item in &corpus.rings {
        if formula.eval(&item.ring)? {
            hits.push(item.text.clone());
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::corpus::CorpusSpec;

    #[test]
    fn parses_and_prints() {
        let f = parse_formula("delta_u & !reduced").unwrap();
        assert_eq!(f.to_string(), "(delta-u & !reduced)");
        let f = parse_formula("n_delta_u(2) ∧ ¬n_uj(2) ∨ field").unwrap();
        assert_eq!(f.to_string(), "((n-delta-u(2) & !n-uj(2)) | field)");
        assert_eq!(parse_formula("!(a_b)").unwrap_err().column, 3);
        assert_eq!(parse_formula("regular &").unwrap_err().column, 10);
        assert_eq!(parse_formula("n-uj").unwrap_err().column, 1);
        assert_eq!(parse_formula("reduced(2)").unwrap_err().column, 1);
        assert!(parse_formula("(field").is_err());
        assert!(parse_formula("field field").is_err());
    }

    #[test]
    fn search_small_corpus() {
        let corpus = CorpusSpec::from_expressions(&["Zmod(4)", "GF(4)", "Zmod(6)", "Mat(2, Zmod(2))"])
            .expand()
            .unwrap();
        let hits = |s: &str| search_counterexamples(&corpus, &parse_formula(s).unwrap()).unwrap();
        assert_eq!(hits("delta_u & !reduced"), ["Zmod(4)"]);
        assert_eq!(hits("regular & n_delta_u(3)"), ["GF(4)"]);
        assert_eq!(hits("n_delta_u(6) & !(2-primal | field)"), ["Mat(2, Zmod(2))"]);
    }
}
