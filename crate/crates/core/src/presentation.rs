//! Finite group presentations, their text format, and degree accounting.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::word::{Letter, Sign, Word, WordDisplay};

/// Upper bound on the number of letters a parsed presentation may expand to.
const MAX_PARSED_LETTERS: usize = 1 << 22;

/// `⟨x_1, …, x_m : r_1, …, r_n⟩`.
///
/// Relators are kept exactly as given; `reduced` records whether every
/// relator is freely and cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
    reduced: bool,
}

impl Presentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let count = generator_names.len();
        for (r, word) in relators.iter().enumerate() {
            if let Some(l) = word.iter().find(|l| l.generator >= count) {
                return Err(Error::GeneratorOutOfRange {
                    relator: r,
                    generator: l.generator,
                    count,
                });
            }
        }
        let reduced = relators.iter().all(Word::is_cyclically_reduced);
        Ok(Presentation {
            generator_names,
            relators,
            reduced,
        })
    }

    /// Parses the `gens:` / `rel:` text format. Raw words are kept
    /// verbatim, including trivial pairs.
    pub fn parse(text: &str) -> std::result::Result<Self, ParseError> {
        Parser::default().run(text)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name)
    }

    /// Same generators with every relator cyclically reduced.
    pub fn reduced(&self) -> Presentation {
        Presentation {
            generator_names: self.generator_names.clone(),
            relators: self.relators.iter().map(Word::cyclic_reduce).collect(),
            reduced: true,
        }
    }

    /// Same generators, different relators; the reduced flag is recomputed.
    pub fn with_relators(&self, relators: Vec<Word>) -> Presentation {
        let reduced = relators.iter().all(Word::is_cyclically_reduced);
        Presentation {
            generator_names: self.generator_names.clone(),
            relators,
            reduced,
        }
    }

    /// Whether every relator is freely and cyclically reduced, checked
    /// directly rather than read from the flag.
    pub fn all_cyclically_reduced(&self) -> bool {
        self.relators.iter().all(Word::is_cyclically_reduced)
    }

    /// `Σ|r_i|` of the words as written; the geometric degree of a diagram
    /// read verbatim from these words.
    pub fn raw_degree(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// `Σ|cyclic_reduce(r_i)|`.
    pub fn algebraic_degree(&self) -> usize {
        if self.reduced {
            return self.raw_degree();
        }
        self.relators.iter().map(|r| r.cyclic_reduce().len()).sum()
    }

    /// Number of letters `x_g^{±1}` across all relators as written.
    pub fn occurrences(&self, generator: usize) -> usize {
        self.relators
            .iter()
            .flat_map(|r| r.iter())
            .filter(|l| l.generator == generator)
            .count()
    }

    /// Crossing count `k_i` per generator for the words as written.
    pub fn crossing_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.generator_count()];
        for l in self.relators.iter().flat_map(|r| r.iter()) {
            counts[l.generator] += 1;
        }
        counts
    }

    /// Cyclically adjacent occurrences of the two-letter word `ab` and of its
    /// inverse `b^-1 a^-1`, each relator read as a cyclic word. Each cyclic
    /// position is counted once; when `ab` is its own inverse the two
    /// patterns coincide and are not double counted.
    pub fn pair_occurrences(&self, a: Letter, b: Letter) -> usize {
        let (ia, ib) = (b.inverse(), a.inverse());
        let self_inverse = a == ia && b == ib;
        self.relators
            .iter()
            .flat_map(|r| r.cyclic_pairs())
            .filter(|&(x, y)| (x == a && y == b) || (!self_inverse && x == ia && y == ib))
            .count()
    }

    pub fn unused_generators(&self) -> Vec<usize> {
        self.crossing_counts()
            .iter()
            .enumerate()
            .filter(|(_, &k)| k == 0)
            .map(|(g, _)| g)
            .collect()
    }

    pub fn empty_relators(&self) -> Vec<usize> {
        self.relators
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_empty())
            .map(|(i, _)| i)
            .collect()
    }

    /// Canonical representative up to cyclic reordering and inversion of
    /// each relator and reordering of relators: every relator cyclically
    /// reduced then replaced by its least rotation (of it or its inverse),
    /// relators sorted.
    pub fn canonical(&self) -> Presentation {
        let mut relators: Vec<Word> = self
            .relators
            .iter()
            .map(|r| r.cyclic_reduce().cyclic_canonical())
            .collect();
        relators.sort();
        Presentation {
            generator_names: self.generator_names.clone(),
            relators,
            reduced: true,
        }
    }

    /// As [`Presentation::canonical`] but without reducing: identifies
    /// unreduced words up to rotation, inversion and relator order only.
    pub fn canonical_raw(&self) -> Presentation {
        let mut relators: Vec<Word> = self.relators.iter().map(Word::cyclic_canonical).collect();
        relators.sort();
        self.with_relators(relators)
    }

    /// The `m × n` exponent-sum matrix, one row per generator and one
    /// column per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.generator_count();
        let mut rows = vec![vec![0i64; self.relators.len()]; m];
        for (c, r) in self.relators.iter().enumerate() {
            for (g, s) in r.exponent_sums(m).into_iter().enumerate() {
                rows[g][c] = s;
            }
        }
        rows
    }

    pub fn display_word<'a>(&'a self, word: &'a Word) -> WordDisplay<'a> {
        WordDisplay {
            word,
            names: &self.generator_names,
        }
    }

    /// Relators rendered in the input atom syntax.
    pub fn relator_strings(&self) -> Vec<String> {
        self.relators
            .iter()
            .map(|r| self.display_word(r).to_string())
            .collect()
    }
}

impl fmt::Display for Presentation {
    /// Writes the multi-line text format accepted by [`Presentation::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generator_names.join(" "))?;
        for r in &self.relators {
            let body = self.display_word(r).to_string();
            if body.is_empty() {
                writeln!(f, "rel:")?;
            } else {
                writeln!(f, "rel: {body}")?;
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct Parser {
    names: Vec<String>,
    index: HashMap<String, usize>,
    relators: Vec<Word>,
    seen_gens: bool,
    letters: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Parser {
    fn run(mut self, text: &str) -> std::result::Result<Presentation, ParseError> {
        for (lineno, line) in text.lines().enumerate() {
            let lineno = lineno + 1;
            if line.trim_start().starts_with('#') {
                continue;
            }
            if let Some((col, c)) = line
                .char_indices()
                .find(|(_, c)| !(c.is_ascii_graphic() || *c == ' ' || *c == '\t'))
            {
                return Err(syntax(lineno, col + 1, format!("invalid character {c:?}")));
            }
            let mut offset = 0;
            for stmt in line.split(';') {
                self.statement(stmt, lineno, offset)?;
                offset += stmt.len() + 1;
            }
        }
        if !self.seen_gens {
            return Err(ParseError::EmptyGenerators);
        }
        let reduced = self.relators.iter().all(Word::is_cyclically_reduced);
        Ok(Presentation {
            generator_names: self.names,
            relators: self.relators,
            reduced,
        })
    }

    fn statement(
        &mut self,
        stmt: &str,
        line: usize,
        offset: usize,
    ) -> std::result::Result<(), ParseError> {
        let trimmed = stmt.trim_start();
        if trimmed.trim().is_empty() {
            return Ok(());
        }
        let lead = stmt.len() - trimmed.len();
        let column = offset + lead + 1;
        let (keyword, body) = match trimmed.split_once(':') {
            Some((k, b)) => (k.trim_end(), b),
            None => return Err(syntax(line, column, "expected `gens:` or `rel:`")),
        };
        let body_offset = offset + lead + (trimmed.len() - body.len());
        let tokens = tokens(body, body_offset);
        match keyword {
            "gens" => self.gens(tokens, line, column),
            "rel" => self.rel(tokens, line, column),
            other => Err(syntax(line, column, format!("unknown keyword `{other}`"))),
        }
    }

    fn gens(
        &mut self,
        tokens: Vec<(usize, &str)>,
        line: usize,
        column: usize,
    ) -> std::result::Result<(), ParseError> {
        if self.seen_gens {
            return Err(syntax(line, column, "generators declared twice"));
        }
        self.seen_gens = true;
        if tokens.is_empty() {
            return Err(ParseError::EmptyGenerators);
        }
        for (col, tok) in tokens {
            if !is_ident(tok) {
                return Err(syntax(line, col, format!("invalid generator name `{tok}`")));
            }
            if self.index.contains_key(tok) {
                return Err(ParseError::DuplicateGenerator {
                    name: tok.to_string(),
                    line,
                    column: col,
                });
            }
            self.index.insert(tok.to_string(), self.names.len());
            self.names.push(tok.to_string());
        }
        Ok(())
    }

    fn rel(
        &mut self,
        tokens: Vec<(usize, &str)>,
        line: usize,
        column: usize,
    ) -> std::result::Result<(), ParseError> {
        if !self.seen_gens {
            return Err(syntax(line, column, "`rel:` before `gens:`"));
        }
        let mut letters = Vec::new();
        for (col, tok) in tokens {
            let (name, exp) = match tok.split_once('^') {
                Some((name, e)) => {
                    let exp: i64 = e
                        .parse()
                        .map_err(|_| syntax(line, col, format!("invalid exponent in `{tok}`")))?;
                    if exp == 0 {
                        return Err(syntax(line, col, "zero exponent"));
                    }
                    (name, exp)
                }
                None => (tok, 1),
            };
            if !is_ident(name) {
                return Err(syntax(line, col, format!("invalid atom `{tok}`")));
            }
            let generator =
                *self
                    .index
                    .get(name)
                    .ok_or_else(|| ParseError::UndeclaredGenerator {
                        name: name.to_string(),
                        line,
                        column: col,
                    })?;
            let count = exp.unsigned_abs() as usize;
            self.letters = self.letters.saturating_add(count);
            if self.letters > MAX_PARSED_LETTERS {
                return Err(syntax(line, col, "presentation too long"));
            }
            let sign = if exp > 0 { Sign::Plus } else { Sign::Minus };
            letters.extend(std::iter::repeat_n(Letter::new(generator, sign), count));
        }
        self.relators.push(Word::new(letters));
        Ok(())
    }
}

/// Whitespace-separated tokens with their 1-based column.
fn tokens(body: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in body.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((offset + s + 1, &body[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((offset + s + 1, &body[s..]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const H3: &str = "gens: x y z; rel: x y x^-1 y^-1 z^-1; rel: x z x^-1 z^-1; rel: y z y^-1 z^-1";

    #[test]
    fn parses_commutator() {
        let p = Presentation::parse("gens: x y\nrel: x y x^-1 y^-1").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].len(), 4);
        assert!(p.is_reduced());
        assert!(!Presentation::parse("gens: x y\nrel: x y y^-1")
            .unwrap()
            .is_reduced());
    }

    #[test]
    fn heisenberg_degree() {
        let p = Presentation::parse(H3).unwrap();
        assert_eq!(p.algebraic_degree(), 13);
        assert_eq!(p.raw_degree(), 13);
    }

    #[test]
    fn undeclared_generator() {
        let err = Presentation::parse("gens: x\nrel: x w").unwrap_err();
        assert_eq!(
            err,
            ParseError::UndeclaredGenerator {
                name: "w".into(),
                line: 2,
                column: 8
            }
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Presentation::parse("gens:").unwrap_err(),
            ParseError::EmptyGenerators
        );
        assert_eq!(
            Presentation::parse("# nothing\n").unwrap_err(),
            ParseError::EmptyGenerators
        );
        assert!(matches!(
            Presentation::parse("gens: x\nrel: x^0").unwrap_err(),
            ParseError::Syntax {
                line: 2,
                column: 6,
                ..
            }
        ));
        assert!(matches!(
            Presentation::parse("gens: x x").unwrap_err(),
            ParseError::DuplicateGenerator { .. }
        ));
        assert!(matches!(
            Presentation::parse("gens: 1x").unwrap_err(),
            ParseError::Syntax { .. }
        ));
        assert!(matches!(
            Presentation::parse("rel: x\ngens: x").unwrap_err(),
            ParseError::Syntax { line: 1, .. }
        ));
        assert!(matches!(
            Presentation::parse("gens: x\nrelator: x").unwrap_err(),
            ParseError::Syntax { .. }
        ));
    }

    #[test]
    fn exponents_expand_and_comments_skip() {
        let p = Presentation::parse("# lens space\ngens: x\n  # indented comment\nrel: x^3 x^-1\n")
            .unwrap();
        assert_eq!(p.raw_degree(), 4);
        assert_eq!(p.algebraic_degree(), 2);
    }

    #[test]
    fn display_round_trips() {
        let p = Presentation::parse(H3).unwrap();
        let again = Presentation::parse(&p.to_string()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn no_relators_has_degree_zero() {
        let p = Presentation::parse("gens: x y").unwrap();
        assert_eq!(p.algebraic_degree(), 0);
        assert_eq!(p.unused_generators(), vec![0, 1]);
    }

    #[test]
    fn occurrences_of_square() {
        let p = Presentation::parse("gens: x; rel: x x").unwrap();
        assert_eq!(p.occurrences(0), 2);
        // the two cyclic positions of `x x`
        assert_eq!(p.pair_occurrences(Letter::pos(0), Letter::pos(0)), 2);
    }

    #[test]
    fn canonical_identifies_rotations_and_inverses() {
        let a = Presentation::parse("gens: x y; rel: x y y; rel: y x^-1").unwrap();
        let b = Presentation::parse("gens: x y; rel: x y^-1; rel: y^-1 y^-1 x^-1").unwrap();
        assert_eq!(a.canonical(), b.canonical());
    }
}
