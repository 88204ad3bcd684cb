//! The 84 cubic equations: source format, orbit expansion and provenance.
//!
//! Format: one statement per line, `#` starts a comment.
//!
//! ```text
//! eq <k> : <expr>
//! eq <k> = g3(eq <j>)
//! eq <k> = g3^2(eq <j>)
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::arith::{Field, NumberFieldElement};
use crate::error::{Error, Result};
use crate::expr::{self, parse_expression};
use crate::poly::{write_term, Monomial, NfPolynomial};

pub const CORPUS_SIZE: usize = 84;

/// The shipped corpus source.
pub const EMBEDDED_SOURCE: &str = include_str!("../data/corpus.fpp");

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Provenance {
    Explicit,
    /// `g3` applied `power` times (1 or 2) to entry `source`.
    G3Image { source: usize, power: u8 },
}

#[derive(Clone, PartialEq, Debug)]
pub struct CorpusEntry {
    pub index: usize,
    pub poly: NfPolynomial,
    pub provenance: Provenance,
    /// Monomials whose coefficient is typographically uncertain.
    pub flags: BTreeSet<Monomial>,
}

/// One parsed line, before orbit expansion.
#[derive(Clone, PartialEq, Debug)]
pub enum Statement {
    Explicit { index: usize, poly: NfPolynomial, flags: BTreeSet<Monomial> },
    Orbit { index: usize, source: usize, power: u8 },
}

impl Statement {
    pub fn index(&self) -> usize {
        match self {
            Statement::Explicit { index, .. } | Statement::Orbit { index, .. } => *index,
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct EquationCorpus {
    entries: Vec<CorpusEntry>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn parse_index(s: &str, line: usize, column: usize) -> Result<usize> {
    s.trim().parse::<usize>().map_err(|_| syntax(line, column, format!("invalid equation index '{}'", s.trim())))
}

fn parse_statement(raw: &str, line: usize) -> Result<Option<Statement>> {
    let text = raw.split('#').next().unwrap_or("");
    if text.trim().is_empty() {
        return Ok(None);
    }
    let lead = text.len() - text.trim_start().len();
    let body = text.trim_start();
    let Some(rest) = body.strip_prefix("eq") else {
        return Err(syntax(line, lead + 1, "expected 'eq'"));
    };
    let rest_col = lead + 2;
    if let Some(pos) = rest.find(':') {
        let index = parse_index(&rest[..pos], line, rest_col + 1)?;
        let parsed = parse_expression(&rest[pos + 1..], line, rest_col + pos + 1)?;
        return Ok(Some(Statement::Explicit { index, poly: parsed.poly, flags: parsed.flags }));
    }
    if let Some(pos) = rest.find('=') {
        let index = parse_index(&rest[..pos], line, rest_col + 1)?;
        let rule = rest[pos + 1..].trim();
        let rule_col = rest_col + pos + 2;
        let (power, inner) = if let Some(r) = rule.strip_prefix("g3^2(") {
            (2, r)
        } else if let Some(r) = rule.strip_prefix("g3(") {
            (1, r)
        } else {
            return Err(syntax(line, rule_col, "expected g3(eq j) or g3^2(eq j)"));
        };
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| syntax(line, rule_col + rule.len(), "expected ')'"))?
            .trim();
        let target = inner
            .strip_prefix("eq")
            .ok_or_else(|| syntax(line, rule_col, "expected 'eq j' inside the rule"))?;
        let source = parse_index(target, line, rule_col)?;
        return Ok(Some(Statement::Orbit { index, source, power }));
    }
    Err(syntax(line, lead + 1, "expected ':' or '=' after the equation index"))
}

/// Parses statements without expanding orbit rules.
pub fn parse_statements(source: &str) -> Result<Vec<Statement>> {
    let mut out = Vec::new();
    for (i, line) in source.lines().enumerate() {
        if let Some(s) = parse_statement(line, i + 1)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// Resolves orbit rules into a full list of entries, sorted by index.
pub fn expand_orbits(statements: &[Statement]) -> Result<EquationCorpus> {
    let mut by_index: BTreeMap<usize, &Statement> = BTreeMap::new();
    for s in statements {
        if by_index.insert(s.index(), s).is_some() {
            return Err(Error::IndexCollision { index: s.index() });
        }
    }
    let mut resolved: BTreeMap<usize, CorpusEntry> = BTreeMap::new();
    fn resolve(
        index: usize,
        by_index: &BTreeMap<usize, &Statement>,
        resolved: &mut BTreeMap<usize, CorpusEntry>,
        visiting: &mut BTreeSet<usize>,
    ) -> Result<()> {
        if resolved.contains_key(&index) {
            return Ok(());
        }
        let entry = match by_index[&index] {
            Statement::Explicit { poly, flags, .. } => CorpusEntry {
                index,
                poly: poly.clone(),
                provenance: Provenance::Explicit,
                flags: flags.clone(),
            },
            Statement::Orbit { source, power, .. } => {
                if !by_index.contains_key(source) || !visiting.insert(index) {
                    return Err(Error::UndefinedReference { index, target: *source });
                }
                resolve(*source, by_index, resolved, visiting)?;
                visiting.remove(&index);
                let src = &resolved[source];
                let mut flags = src.flags.clone();
                for _ in 0..*power {
                    flags = flags.iter().map(Monomial::apply_g3).collect();
                }
                CorpusEntry {
                    index,
                    poly: src.poly.apply_g3_times(*power as usize),
                    provenance: Provenance::G3Image { source: *source, power: *power },
                    flags,
                }
            }
        };
        resolved.insert(index, entry);
        Ok(())
    }
    for &index in by_index.keys() {
        resolve(index, &by_index, &mut resolved, &mut BTreeSet::new())?;
    }
    Ok(EquationCorpus { entries: resolved.into_values().collect() })
}

/// Parses and expands a corpus, requiring exactly the entries `1..=84`.
pub fn parse_corpus(source: &str) -> Result<EquationCorpus> {
    let corpus = expand_orbits(&parse_statements(source)?)?;
    let complete = corpus.len() == CORPUS_SIZE
        && corpus.entries.iter().enumerate().all(|(i, e)| e.index == i + 1);
    if !complete {
        return Err(Error::Arity { found: corpus.len() });
    }
    Ok(corpus)
}

/// The built-in corpus.
pub fn embedded_corpus() -> EquationCorpus {
    parse_corpus(EMBEDDED_SOURCE).expect("embedded corpus parses")
}

impl EquationCorpus {
    /// Builds a corpus from arbitrary entries; used for diagnostics and
    /// constructed examples, so the size is not checked.
    pub fn from_entries(mut entries: Vec<CorpusEntry>) -> Result<Self> {
        entries.sort_by_key(|e| e.index);
        for w in entries.windows(2) {
            if w[0].index == w[1].index {
                return Err(Error::IndexCollision { index: w[0].index });
            }
        }
        Ok(Self { entries })
    }

    /// Explicit entries from bare polynomials, numbered from 1.
    pub fn from_polynomials(polys: impl IntoIterator<Item = NfPolynomial>) -> Self {
        let entries = polys
            .into_iter()
            .enumerate()
            .map(|(i, poly)| CorpusEntry { index: i + 1, poly, provenance: Provenance::Explicit, flags: BTreeSet::new() })
            .collect();
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn polynomials(&self) -> impl Iterator<Item = &NfPolynomial> {
        self.entries.iter().map(|e| &e.poly)
    }

    pub fn entry(&self, index: usize) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.index == index)
    }

    /// Statements reproducing this corpus: explicit entries verbatim, orbit
    /// entries as rules.
    pub fn statements(&self) -> Vec<Statement> {
        self.entries
            .iter()
            .map(|e| match e.provenance {
                Provenance::Explicit => Statement::Explicit { index: e.index, poly: e.poly.clone(), flags: e.flags.clone() },
                Provenance::G3Image { source, power } => Statement::Orbit { index: e.index, source, power },
            })
            .collect()
    }

    /// Re-derives every orbit entry from its source.
    pub fn reexpand(&self) -> Result<EquationCorpus> {
        expand_orbits(&self.statements())
    }

    /// Drops one entry; entries derived from it keep their polynomials and
    /// become explicit.
    pub fn without_entry(&self, index: usize) -> Result<EquationCorpus> {
        if self.entry(index).is_none() {
            return Err(Error::UnknownEntry { index });
        }
        let entries = self
            .entries
            .iter()
            .filter(|e| e.index != index)
            .cloned()
            .map(|mut e| {
                if matches!(e.provenance, Provenance::G3Image { source, .. } if source == index) {
                    e.provenance = Provenance::Explicit;
                }
                e
            })
            .collect();
        Ok(EquationCorpus { entries })
    }

    /// Replaces one entry's polynomial (becoming explicit, no flags).
    pub fn with_replaced(&self, index: usize, poly: NfPolynomial) -> Result<EquationCorpus> {
        let mut out = self.clone();
        let entry = out.entries.iter_mut().find(|e| e.index == index).ok_or(Error::UnknownEntry { index })?;
        entry.poly = poly;
        entry.provenance = Provenance::Explicit;
        entry.flags.clear();
        Ok(out)
    }

    /// Sets the coefficient of `term` in explicit entry `index` and re-derives
    /// its orbit images.
    pub fn with_coefficient(&self, index: usize, term: &Monomial, value: &NumberFieldElement) -> Result<EquationCorpus> {
        let entry = self.entry(index).ok_or(Error::UnknownEntry { index })?;
        if let Provenance::G3Image { source, .. } = entry.provenance {
            return Err(Error::DerivedEntry { index, seed: source });
        }
        let Some(old) = entry.poly.coefficient(term) else {
            return Err(Error::TermNotPresent { index, term: term.to_string() });
        };
        let mut poly = entry.poly.clone();
        poly.add_term(*term, value.sub(old));
        let mut statements = self.statements();
        for s in &mut statements {
            if let Statement::Explicit { index: i, poly: p, flags } = s {
                if *i == index {
                    *p = poly.clone();
                    flags.retain(|m| poly.coefficient(m).is_some());
                }
            }
        }
        expand_orbits(&statements)
    }

    /// Deterministic text; [`parse_corpus`] inverts it.
    pub fn canonical_print(&self) -> String {
        let mut out = String::from("# canonical corpus; t = i*sqrt(7)\n");
        for e in &self.entries {
            match e.provenance {
                Provenance::Explicit => {
                    write!(out, "eq {} : ", e.index).unwrap();
                    if e.poly.is_zero() {
                        out.push('0');
                    }
                    for (i, (m, c)) in e.poly.terms().rev().enumerate() {
                        if i > 0 {
                            out.push_str(" + ");
                        }
                        write_term(&mut out, m, c, e.flags.contains(m)).unwrap();
                    }
                }
                Provenance::G3Image { source, power: 1 } => write!(out, "eq {} = g3(eq {source})", e.index).unwrap(),
                Provenance::G3Image { source, .. } => write!(out, "eq {} = g3^2(eq {source})", e.index).unwrap(),
            }
            out.push('\n');
        }
        out
    }

    /// SHA-256 of the canonical text, hex encoded.
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_print().as_bytes()))
    }

    /// All `(entry, monomial)` pairs flagged on explicit entries.
    pub fn flagged_terms(&self) -> Vec<(usize, Monomial)> {
        self.entries
            .iter()
            .filter(|e| e.provenance == Provenance::Explicit)
            .flat_map(|e| e.flags.iter().map(move |m| (e.index, *m)))
            .collect()
    }
}

/// A flagged coefficient with the values it could plausibly have been meant as.
#[derive(Clone, Debug, PartialEq)]
pub struct KnownAmbiguity {
    pub entry: usize,
    pub term: Monomial,
    pub as_written: &'static str,
    pub candidates: Vec<NumberFieldElement>,
}

/// Candidate sets for the coefficients flagged in the embedded corpus.
pub fn known_ambiguities() -> Vec<KnownAmbiguity> {
    let table: [(usize, &str, &str, &[&str]); 3] = [
        (1, "U4*U5*U6", "(3+t)", &["3+t", "8*(3+t)"]),
        (10, "U5*U7*U9", "(1-t)/4*4", &["1-t", "(1-t)/2"]),
        (19, "U1*U7^2", "(-1-t)/<empty>", &["-1-t", "(-1-t)/2", "(-1-t)/4", "(-1-t)/8"]),
    ];
    table
        .into_iter()
        .map(|(entry, term, as_written, cands)| KnownAmbiguity {
            entry,
            term: Monomial::parse(term).expect("valid monomial"),
            as_written,
            candidates: cands.iter().map(|c| expr::parse_constant(c).expect("valid constant")).collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_corpus_shape() {
        let c = embedded_corpus();
        assert_eq!(c.len(), 84);
        assert!(c.polynomials().all(|f| f.degree() == Some(3)));
        let explicit = c.entries().iter().filter(|e| e.provenance == Provenance::Explicit).count();
        assert_eq!(explicit, 30);
        for (a, b) in c.entries().iter().zip(c.entries().iter().skip(1)) {
            assert!(a.index < b.index);
        }
        let distinct: Vec<_> = c.polynomials().map(|p| p.to_string()).collect::<BTreeSet<_>>().into_iter().collect();
        assert_eq!(distinct.len(), 84);
    }

    #[test]
    fn first_equation() {
        let stmts = parse_statements("eq 1 : (1+t)*U1*U2*U3 + (3+t)*U4*U5*U6 + 8*(U1^2*U5 + U2^2*U6 + U3^2*U4)").unwrap();
        let Statement::Explicit { poly, .. } = &stmts[0] else { panic!() };
        assert_eq!(poly.len(), 5);
        assert_eq!(poly.coefficient(&Monomial::parse("U1^2*U5").unwrap()), Some(&NumberFieldElement::from_int(8)));
    }

    #[test]
    fn orbit_rules() {
        let c = embedded_corpus();
        let e = |k: usize| &c.entry(k).unwrap().poly;
        assert_eq!(e(5), &e(4).apply_g3());
        assert_eq!(e(6), &e(4).apply_g3().apply_g3());
        assert_eq!(e(61), &e(37).apply_g3());
        for k in 37..=60 {
            assert_eq!(e(k), &e(k - 24).apply_g3());
        }
        for k in 61..=84 {
            assert_eq!(e(k), &e(k - 48).apply_g3_times(2));
        }
        assert_eq!(c.reexpand().unwrap(), c);
    }

    #[test]
    fn parse_errors() {
        match parse_statements("eq 1 : U1*") {
            Err(Error::Syntax { line: 1, column: 11, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_statements("eq x : U1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_statements("eq 1 = g4(eq 2)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_statements("fq 1 : U1"), Err(Error::Syntax { .. })));
        let src = "eq 1 : U0^3\neq 2 = g3(eq 99)";
        assert!(matches!(expand_orbits(&parse_statements(src).unwrap()), Err(Error::UndefinedReference { index: 2, target: 99 })));
        let src = "eq 1 : U0^3\neq 1 : U1^3";
        assert!(matches!(expand_orbits(&parse_statements(src).unwrap()), Err(Error::IndexCollision { index: 1 })));
        let src = "eq 1 = g3(eq 2)\neq 2 = g3(eq 1)";
        assert!(expand_orbits(&parse_statements(src).unwrap()).is_err());
        assert!(matches!(parse_corpus("eq 1 : U0^3"), Err(Error::Arity { found: 1 })));
    }

    #[test]
    fn canonical_round_trip_and_stability() {
        let c = embedded_corpus();
        let text = c.canonical_print();
        assert_eq!(parse_corpus(&text).unwrap(), c);
        assert_eq!(embedded_corpus().canonical_print(), text);
        assert_eq!(c.fingerprint().len(), 64);
        assert!(text.contains("(-1/2 - 1/2*t)?*U1*U7^2"));
    }

    #[test]
    fn flags_follow_orbits() {
        let c = embedded_corpus();
        let seeds: Vec<usize> = c.flagged_terms().iter().map(|(i, _)| *i).collect();
        assert_eq!(seeds, vec![1, 10, 19]);
        let t = Monomial::parse("U1*U7^2").unwrap();
        assert!(c.entry(43).unwrap().flags.contains(&t.apply_g3()));
        for amb in known_ambiguities() {
            let entry = c.entry(amb.entry).unwrap();
            assert!(entry.flags.contains(&amb.term));
            assert!(amb.candidates.contains(entry.poly.coefficient(&amb.term).unwrap()));
        }
    }

    #[test]
    fn coefficient_substitution_rederives_orbits() {
        let c = embedded_corpus();
        let t = Monomial::parse("U1*U7^2").unwrap();
        let v = NumberFieldElement::from_int(5);
        let d = c.with_coefficient(19, &t, &v).unwrap();
        assert_eq!(d.entry(19).unwrap().poly.coefficient(&t), Some(&v));
        assert_eq!(d.entry(43).unwrap().poly, d.entry(19).unwrap().poly.apply_g3());
        assert!(matches!(c.with_coefficient(43, &t, &v), Err(Error::DerivedEntry { index: 43, seed: 19 })));
        let missing = Monomial::new([3, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert!(matches!(c.with_coefficient(19, &missing, &v), Err(Error::TermNotPresent { .. })));
    }

    #[test]
    fn removal() {
        let c = embedded_corpus();
        let d = c.without_entry(13).unwrap();
        assert_eq!(d.len(), 83);
        assert_eq!(d.entry(37).unwrap().provenance, Provenance::Explicit);
        assert!(d.reexpand().is_ok());
    }
}
