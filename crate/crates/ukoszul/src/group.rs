//! Pro-p group presentations: relator words, the degree-2 truncated Magnus
//! expansion, quadratic definedness, and the cohomology algebra they present.
//!
//! Words are evaluated in the free associative algebra F_p<X_1..X_d>
//! truncated past total degree 2, under x_k -> 1 + X_k. The degree-1
//! coefficients of a relator vanish exactly when it lies in the Frattini
//! subgroup of the free group; the degree-2 coefficient matrix is the only
//! data the cohomology algebra construction needs. There is no collection
//! process and no free-group normal form anywhere — the truncation is the
//! entire computation.
//!
//! Sign convention: the trace functional of a relator sends the wedge class
//! a_i ∧ a_j (i < j) to +alpha_ij.

use crate::gfp::{combinations, FpMatrix, GfpError, PrimeField, Subspace};
use crate::qalg::{pair_index, AlgebraError, CommutativityClass, QuadraticPresentation};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error(transparent)]
    Gfp(#[from] GfpError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("unknown generator x{index} at byte {offset} (presentation has {d} generators)")]
    UnknownGenerator {
        index: usize,
        offset: usize,
        d: usize,
    },
    #[error("relator {index} is not in the Frattini subgroup: nonzero degree-1 part (presentation not minimal)")]
    NonMinimal { index: usize },
    #[error("relator {index} violates the antisymmetry of degree-2 coefficients")]
    AntisymmetryViolation { index: usize },
    #[error("presentation is not quadratically defined: {0}")]
    NotQuadraticallyDefined(String),
    #[error("relator lies too deep in the Zassenhaus filtration: zero degree-2 part")]
    RelatorTooDeep,
    #[error("at p = 2 the normal form needs zero diagonal coefficients")]
    DiagonalNotZero,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A relator word: generators, integer powers, concatenation, and commutators
/// [u, v] = u^-1 v^-1 u v. Inversion is the power -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Word {
    /// 1-based generator index.
    Gen(usize),
    Power(Box<Word>, i64),
    Commutator(Box<Word>, Box<Word>),
    Concat(Vec<Word>),
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Gen(k) => write!(f, "x{k}"),
            Word::Power(w, e) => {
                if matches!(**w, Word::Concat(_)) {
                    write!(f, "({w})^{e}")
                } else {
                    write!(f, "{w}^{e}")
                }
            }
            Word::Commutator(a, b) => write!(f, "[{a},{b}]"),
            Word::Concat(parts) => {
                let joined: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", joined.join("*"))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Word grammar
// ---------------------------------------------------------------------------
//
//   word   := factor (('*')? factor)*
//   factor := atom ('^' int)*
//   atom   := 'x' digits | '[' word ',' word ']' | '(' word ')'
//   int    := '-'? digits

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    d: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, d: usize) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            d,
        }
    }

    fn err(&self, msg: impl Into<String>) -> GroupError {
        GroupError::Syntax {
            offset: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<u64, GroupError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer literal out of range"))
    }

    fn atom(&mut self) -> Result<Word, GroupError> {
        match self.peek() {
            Some(b'x') => {
                let offset = self.pos;
                self.pos += 1;
                let k = self.digits()? as usize;
                if k == 0 || k > self.d {
                    return Err(GroupError::UnknownGenerator {
                        index: k,
                        offset,
                        d: self.d,
                    });
                }
                Ok(Word::Gen(k))
            }
            Some(b'[') => {
                self.pos += 1;
                let left = self.word()?;
                if self.peek() != Some(b',') {
                    return Err(self.err("expected ',' in commutator"));
                }
                self.pos += 1;
                let right = self.word()?;
                if self.peek() != Some(b']') {
                    return Err(self.err("expected ']' closing commutator"));
                }
                self.pos += 1;
                Ok(Word::Commutator(Box::new(left), Box::new(right)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.word()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => Err(self.err(format!(
                "expected a generator, commutator, or '(', found '{}'",
                c as char
            ))),
            None => Err(self.err("unexpected end of word")),
        }
    }

    fn factor(&mut self) -> Result<Word, GroupError> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let negative = if self.bytes.get(self.pos) == Some(&b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let mag = self.digits()? as i64;
            let exp = if negative { -mag } else { mag };
            base = Word::Power(Box::new(base), exp);
        }
        Ok(base)
    }

    fn word(&mut self) -> Result<Word, GroupError> {
        let mut parts = vec![self.factor()?];
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    parts.push(self.factor()?);
                }
                // Implicit concatenation.
                Some(b'x') | Some(b'[') | Some(b'(') => parts.push(self.factor()?),
                _ => break,
            }
        }
        if parts.len() == 1 {
            Ok(parts.pop().unwrap())
        } else {
            Ok(Word::Concat(parts))
        }
    }
}

/// Parses a relator word against a presentation with `d` generators.
pub fn parse_word(text: &str, d: usize) -> Result<Word, GroupError> {
    let mut p = Parser::new(text, d);
    let w = p.word()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input after word"));
    }
    Ok(w)
}

/// A minimal-style pro-p presentation: d generators and relator words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    field: PrimeField,
    generators: usize,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(field: PrimeField, generators: usize, relators: Vec<Word>) -> Self {
        GroupPresentation {
            field,
            generators,
            relators,
        }
    }

    /// Parses the presentation file format:
    ///
    /// ```text
    /// # comment
    /// p 3
    /// generators 4
    /// relator [x1,x2]
    /// relator [x3,x4]^2*x1^3
    /// ```
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let mut p: Option<u32> = None;
        let mut d: Option<usize> = None;
        let mut relator_texts: Vec<(usize, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = lineno + 1;
            let (key, rest) = line.split_once(char::is_whitespace).ok_or(GroupError::Parse {
                line: lineno,
                msg: format!("expected 'key value', got '{line}'"),
            })?;
            let rest = rest.trim();
            match key {
                "p" => {
                    p = Some(rest.parse().map_err(|_| GroupError::Parse {
                        line: lineno,
                        msg: format!("invalid prime '{rest}'"),
                    })?)
                }
                "generators" => {
                    d = Some(rest.parse().map_err(|_| GroupError::Parse {
                        line: lineno,
                        msg: format!("invalid generator count '{rest}'"),
                    })?)
                }
                "relator" => relator_texts.push((lineno, rest.to_string())),
                other => {
                    return Err(GroupError::Parse {
                        line: lineno,
                        msg: format!("unknown key '{other}'"),
                    })
                }
            }
        }
        let p = p.ok_or(GroupError::Parse {
            line: 0,
            msg: "missing 'p' line".into(),
        })?;
        let d = d.ok_or(GroupError::Parse {
            line: 0,
            msg: "missing 'generators' line".into(),
        })?;
        let field = PrimeField::new(p)?;
        let relators = relator_texts
            .into_iter()
            .map(|(_, text)| parse_word(&text, d))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupPresentation::new(field, d, relators))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

/// An element of F_p<X_1..X_d> truncated past degree 2. Group words always
/// have constant term 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusTruncation {
    field: PrimeField,
    d: usize,
    pub constant: u32,
    /// Degree-1 coefficients, length d.
    pub linear: Vec<u32>,
    /// Degree-2 coefficients of X_i X_j at index i*d + j.
    pub quadratic: Vec<u32>,
}

impl MagnusTruncation {
    fn one(field: PrimeField, d: usize) -> Self {
        MagnusTruncation {
            field,
            d,
            constant: 1,
            linear: vec![0; d],
            quadratic: vec![0; d * d],
        }
    }

    fn generator(field: PrimeField, d: usize, k: usize) -> Self {
        let mut t = Self::one(field, d);
        t.linear[k] = 1;
        t
    }

    fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        let d = self.d;
        let mut out = MagnusTruncation {
            field: f,
            d,
            constant: f.mul(self.constant, other.constant),
            linear: vec![0; d],
            quadratic: vec![0; d * d],
        };
        for i in 0..d {
            out.linear[i] = f.add(
                f.mul(self.constant, other.linear[i]),
                f.mul(other.constant, self.linear[i]),
            );
        }
        for idx in 0..d * d {
            out.quadratic[idx] = f.add(
                f.mul(self.constant, other.quadratic[idx]),
                f.mul(other.constant, self.quadratic[idx]),
            );
        }
        for i in 0..d {
            if self.linear[i] == 0 {
                continue;
            }
            for j in 0..d {
                let cross = f.mul(self.linear[i], other.linear[j]);
                let idx = i * d + j;
                out.quadratic[idx] = f.add(out.quadratic[idx], cross);
            }
        }
        out
    }

    /// Integer power of a group-like element 1 + e: the truncation of the
    /// binomial series, (1 + e)^n = 1 + n e + C(n,2) e^2.
    fn power(&self, n: i64) -> Self {
        debug_assert_eq!(self.constant, 1, "powers are only taken of group words");
        let f = self.field;
        let d = self.d;
        let n_mod = f.reduce_i64(n);
        let binom = binom2_mod(n, f);
        let mut out = Self::one(f, d);
        for i in 0..d {
            out.linear[i] = f.mul(n_mod, self.linear[i]);
        }
        for i in 0..d {
            for j in 0..d {
                let idx = i * d + j;
                let square_part = f.mul(binom, f.mul(self.linear[i], self.linear[j]));
                out.quadratic[idx] = f.add(f.mul(n_mod, self.quadratic[idx]), square_part);
            }
        }
        out
    }

    pub fn quadratic_matrix(&self) -> FpMatrix {
        let rows: Vec<Vec<u32>> = (0..self.d)
            .map(|i| self.quadratic[i * self.d..(i + 1) * self.d].to_vec())
            .collect();
        FpMatrix::from_rows(self.field, self.d, &rows).unwrap()
    }

    pub fn is_identity(&self) -> bool {
        self.constant == 1
            && self.linear.iter().all(|&c| c == 0)
            && self.quadratic.iter().all(|&c| c == 0)
    }
}

/// C(n, 2) mod p for an arbitrary signed integer n. Reducing n modulo 2p^2
/// first keeps n(n-1) exact in 64 bits.
fn binom2_mod(n: i64, field: PrimeField) -> u32 {
    let p = i64::from(field.p());
    let m = 2 * p * p;
    let r = ((n % m) + m) % m;
    let prod = r * (r - 1) / 2;
    field.reduce_i64(prod)
}

/// Evaluates a word in the truncated Magnus embedding x_k -> 1 + X_k,
/// x_k^-1 -> 1 - X_k + X_k^2.
pub fn magnus_degree2(field: PrimeField, d: usize, w: &Word) -> MagnusTruncation {
    match w {
        Word::Gen(k) => MagnusTruncation::generator(field, d, k - 1),
        Word::Power(inner, e) => magnus_degree2(field, d, inner).power(*e),
        Word::Commutator(a, b) => {
            let ea = magnus_degree2(field, d, a);
            let eb = magnus_degree2(field, d, b);
            ea.power(-1).mul(&eb.power(-1)).mul(&ea).mul(&eb)
        }
        Word::Concat(parts) => parts
            .iter()
            .map(|p| magnus_degree2(field, d, p))
            .fold(MagnusTruncation::one(field, d), |acc, t| acc.mul(&t)),
    }
}

/// Degree-2 Magnus coefficients of one relator: the matrix C with
/// C[i][j] = alpha_ij for i < j (and alpha_ii on the diagonal at p = 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCoefficients {
    pub relator_index: usize,
    pub matrix: FpMatrix,
}

impl RelationCoefficients {
    /// The strictly-upper coefficients as a vector over the C(d,2) wedge
    /// coordinates (i, j), i < j, in lexicographic order.
    pub fn alternating_row(&self) -> Vec<u32> {
        let d = self.matrix.rows();
        let mut row = Vec::with_capacity(d * (d - 1) / 2);
        for i in 0..d {
            for j in i + 1..d {
                row.push(self.matrix.get(i, j));
            }
        }
        row
    }

    pub fn diagonal_is_zero(&self) -> bool {
        (0..self.matrix.rows()).all(|i| self.matrix.get(i, i) == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.entries().iter().all(|&c| c == 0)
    }
}

/// Extracts the degree-2 coefficients of every relator, rejecting words with
/// a nonzero degree-1 part (the presentation would not be minimal).
pub fn relation_coefficients(
    pres: &GroupPresentation,
) -> Result<Vec<RelationCoefficients>, GroupError> {
    let field = pres.field;
    let d = pres.generators;
    let mut out = Vec::with_capacity(pres.relators.len());
    for (index, w) in pres.relators.iter().enumerate() {
        let t = magnus_degree2(field, d, w);
        if t.linear.iter().any(|&c| c != 0) {
            return Err(GroupError::NonMinimal { index });
        }
        let matrix = t.quadratic_matrix();
        // Internal consistency: every Frattini word has antisymmetric
        // off-diagonal coefficients, and a zero diagonal for odd p.
        for i in 0..d {
            for j in i + 1..d {
                if matrix.get(j, i) != field.neg(matrix.get(i, j)) {
                    return Err(GroupError::AntisymmetryViolation { index });
                }
            }
            if field.p() != 2 && matrix.get(i, i) != 0 {
                return Err(GroupError::AntisymmetryViolation { index });
            }
        }
        out.push(RelationCoefficients {
            relator_index: index,
            matrix,
        });
    }
    Ok(out)
}

/// Verdict of the quadratic-definedness test, with the failing clause spelled
/// out when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QdefVerdict {
    pub holds: bool,
    pub reason: String,
}

/// A presentation is quadratically defined when its relators have linearly
/// independent degree-2 coefficient functionals (the cup product surjects
/// onto H^2) and, at p = 2, no relator carries a square term (all squares
/// vanish in H^1).
pub fn quadratically_defined(pres: &GroupPresentation) -> Result<QdefVerdict, GroupError> {
    let coeffs = relation_coefficients(pres)?;
    let field = pres.field;
    let d = pres.generators;
    if field.p() == 2 {
        for c in &coeffs {
            if !c.diagonal_is_zero() {
                return Ok(QdefVerdict {
                    holds: false,
                    reason: format!(
                        "relator {} has a nonzero square coefficient, so squares do not vanish",
                        c.relator_index + 1
                    ),
                });
            }
        }
    }
    for c in &coeffs {
        if c.is_zero() {
            return Ok(QdefVerdict {
                holds: false,
                reason: format!(
                    "relator {} lies in the third Zassenhaus subgroup (zero degree-2 part)",
                    c.relator_index + 1
                ),
            });
        }
    }
    let pair_count = d * (d - 1) / 2;
    let rows: Vec<Vec<u32>> = coeffs.iter().map(|c| c.alternating_row()).collect();
    let rank = FpMatrix::from_rows(field, pair_count, &rows)?.rank();
    if rank < coeffs.len() {
        return Ok(QdefVerdict {
            holds: false,
            reason: "relator coefficient matrices are linearly dependent modulo deeper terms"
                .to_string(),
        });
    }
    Ok(QdefVerdict {
        holds: true,
        reason: "cup product surjects onto H^2 with independent relator functionals".to_string(),
    })
}

/// The cohomology algebra of a quadratically defined presentation.
#[derive(Debug, Clone)]
pub struct CohomologyAlgebra {
    pub presentation: QuadraticPresentation,
    pub relator_count: usize,
    /// For at most two relators the construction is unconditional; with more
    /// the output is only the degree-<=2 truncation.
    pub truncation_verified: bool,
}

/// Builds H^*(G) as a quadratic presentation: full graded/wedge commutation
/// relations plus the wedge classes annihilated by every relator's trace
/// functional tr_h(a_i ∧ a_j) = alpha_ij.
pub fn cohomology_algebra(pres: &GroupPresentation) -> Result<CohomologyAlgebra, GroupError> {
    let verdict = quadratically_defined(pres)?;
    if !verdict.holds {
        return Err(GroupError::NotQuadraticallyDefined(verdict.reason));
    }
    let field = pres.field;
    let d = pres.generators;
    let coeffs = relation_coefficients(pres)?;
    let pair_list = combinations(d, 2);
    let rows: Vec<Vec<u32>> = coeffs.iter().map(|c| c.alternating_row()).collect();
    let trace_matrix = FpMatrix::from_rows(field, pair_list.len(), &rows)?;
    let annihilated = trace_matrix.kernel();

    let mut omega_rows: Vec<Vec<u32>> = Vec::new();
    // Commutation relations.
    for i in 0..d {
        for j in i + 1..d {
            let mut v = vec![0u32; d * d];
            v[pair_index(d, i, j)] = 1;
            v[pair_index(d, j, i)] = 1;
            omega_rows.push(v);
        }
    }
    for i in 0..d {
        let mut v = vec![0u32; d * d];
        v[pair_index(d, i, i)] = 1;
        omega_rows.push(v);
    }
    // Lifts of the annihilated wedge classes.
    for w in annihilated.basis_rows() {
        let mut v = vec![0u32; d * d];
        for (idx, pair) in pair_list.iter().enumerate() {
            v[pair_index(d, pair[0], pair[1])] = w[idx];
        }
        omega_rows.push(v);
    }
    let omega = Subspace::from_spanning(field, d * d, &omega_rows);
    let class = if field.p() == 2 {
        CommutativityClass::WedgeCommutative
    } else {
        CommutativityClass::GradedCommutative
    };
    let presentation = QuadraticPresentation::new(field, d, omega, class)?;
    Ok(CohomologyAlgebra {
        presentation,
        relator_count: pres.relators.len(),
        truncation_verified: pres.relators.len() <= 2,
    })
}

/// The one-relator decomposition: the symplectic rank s of the relator's
/// alternating coefficient form, a Demushkin-type factor on s generators, and
/// a trivial factor on the remaining d - s.
#[derive(Debug, Clone)]
pub struct OneRelatorDecomposition {
    pub symplectic_rank: usize,
    pub demushkin_factor: QuadraticPresentation,
    pub trivial_factor: QuadraticPresentation,
}

impl OneRelatorDecomposition {
    pub fn product(&self) -> Result<QuadraticPresentation, AlgebraError> {
        QuadraticPresentation::direct_product(&self.demushkin_factor, &self.trivial_factor)
    }
}

/// Computes the rank of the alternating form by symplectic Gram reduction:
/// repeatedly split off a hyperbolic plane and clear its row and column pair
/// by congruence operations.
pub fn one_relator_normal_form(
    field: PrimeField,
    coeff: &RelationCoefficients,
) -> Result<OneRelatorDecomposition, GroupError> {
    if coeff.is_zero() {
        return Err(GroupError::RelatorTooDeep);
    }
    if field.p() == 2 && !coeff.diagonal_is_zero() {
        return Err(GroupError::DiagonalNotZero);
    }
    let d = coeff.matrix.rows();
    let mut m = coeff.matrix.clone();
    let mut active = vec![true; d];
    let mut rank = 0usize;
    loop {
        let mut pivot = None;
        'search: for i in 0..d {
            if !active[i] {
                continue;
            }
            for j in i + 1..d {
                if active[j] && m.get(i, j) != 0 {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = pivot else { break };
        let a_ij = m.get(i, j);
        let a_ji = m.get(j, i);
        for k in 0..d {
            if k == i || k == j || !active[k] {
                continue;
            }
            // Clear column j using row i, then column i using row j, applying
            // the same operation to rows and columns to keep the form.
            let ci = field.mul(m.get(k, j), field.inv(a_ij));
            if ci != 0 {
                for c in 0..d {
                    let v = field.sub(m.get(k, c), field.mul(ci, m.get(i, c)));
                    m.set(k, c, v);
                }
                for r in 0..d {
                    let v = field.sub(m.get(r, k), field.mul(ci, m.get(r, i)));
                    m.set(r, k, v);
                }
            }
            let cj = field.mul(m.get(k, i), field.inv(a_ji));
            if cj != 0 {
                for c in 0..d {
                    let v = field.sub(m.get(k, c), field.mul(cj, m.get(j, c)));
                    m.set(k, c, v);
                }
                for r in 0..d {
                    let v = field.sub(m.get(r, k), field.mul(cj, m.get(r, j)));
                    m.set(r, k, v);
                }
            }
        }
        active[i] = false;
        active[j] = false;
        rank += 2;
    }
    let demushkin_factor = QuadraticPresentation::demushkin(field, rank)?;
    let trivial_factor = QuadraticPresentation::trivial(field, d - rank);
    Ok(OneRelatorDecomposition {
        symplectic_rank: rank,
        demushkin_factor,
        trivial_factor,
    })
}
