//! The two-variable Laurent polynomial type and its ring arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::PolyError;

/// Which pair of variables a polynomial is written in.
///
/// The tag is metadata: it names the variables for display and guards
/// against accidentally mixing bracket-side values with Alexander-side
/// values.  It has no effect on arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarTag {
    /// Bracket/Kauffman context: variables (A, x).
    Ax,
    /// Alexander context: variables (t, x).
    Tx,
}

impl VarTag {
    /// Display name of the first variable.
    pub fn first(self) -> &'static str {
        match self {
            VarTag::Ax => "A",
            VarTag::Tx => "t",
        }
    }

    /// Display name of the second variable.
    pub fn second(self) -> &'static str {
        "x"
    }
}

impl fmt::Display for VarTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first(), self.second())
    }
}

/// Selects one of the two variables of a [`LaurentPoly2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// The first variable (A or t).
    First,
    /// The second variable (always x).
    Second,
}

/// An exponent pair (e1, e2), ordered graded-lexicographically: first by
/// total degree e1+e2, then by e1.  All term iteration in this crate runs
/// in this order, which makes serialized output canonical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExpPair {
    pub e1: i64,
    pub e2: i64,
}

impl ExpPair {
    pub fn new(e1: i64, e2: i64) -> Self {
        ExpPair { e1, e2 }
    }

    /// Total degree e1 + e2.
    pub fn deg(self) -> i64 {
        self.e1 + self.e2
    }
}

impl Ord for ExpPair {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.deg(), self.e1).cmp(&(other.deg(), other.e1))
    }
}

impl PartialOrd for ExpPair {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse Laurent polynomial in two variables with exact integer
/// coefficients.
///
/// Invariants: no zero coefficient is ever stored, and the term map is
/// keyed by [`ExpPair`] so iteration is graded-lex ascending.  Equality is
/// exact term-by-term equality (including the tag).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    tag: VarTag,
    terms: BTreeMap<ExpPair, BigInt>,
}

impl LaurentPoly2 {
    /// The zero polynomial.
    pub fn zero(tag: VarTag) -> Self {
        LaurentPoly2 {
            tag,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial 1.
    pub fn one(tag: VarTag) -> Self {
        Self::monomial(tag, 0, 0, 1)
    }

    /// The single term c · v1^e1 · v2^e2.
    pub fn monomial(tag: VarTag, e1: i64, e2: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(tag);
        p.add_term(ExpPair::new(e1, e2), c.into());
        p
    }

    /// Builds a polynomial from (e1, e2, coefficient) triples, summing
    /// duplicates.  Convenient in tests and table constants.
    pub fn from_triples(tag: VarTag, triples: &[(i64, i64, i64)]) -> Self {
        let mut p = Self::zero(tag);
        for &(e1, e2, c) in triples {
            p.add_term(ExpPair::new(e1, e2), BigInt::from(c));
        }
        p
    }

    pub fn tag(&self) -> VarTag {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lex ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (ExpPair, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Coefficient at a given exponent pair (zero if absent).
    pub fn coeff(&self, e1: i64, e2: i64) -> BigInt {
        self.terms
            .get(&ExpPair::new(e1, e2))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Adds a single term in place, pruning a resulting zero.
    pub fn add_term(&mut self, exp: ExpPair, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    fn require_same_tag(&self, other: &Self) -> Result<(), PolyError> {
        if self.tag == other.tag {
            Ok(())
        } else {
            Err(PolyError::TagMismatch(self.tag, other.tag))
        }
    }

    /// Exact sum.
    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.require_same_tag(other)?;
        let mut out = self.clone();
        for (exp, c) in other.terms() {
            out.add_term(exp, c.clone());
        }
        Ok(out)
    }

    /// Exact difference.
    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.require_same_tag(other)?;
        let mut out = self.clone();
        for (exp, c) in other.terms() {
            out.add_term(exp, -c.clone());
        }
        Ok(out)
    }

    /// Exact product.
    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.require_same_tag(other)?;
        let mut out = Self::zero(self.tag);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                out.add_term(ExpPair::new(ea.e1 + eb.e1, ea.e2 + eb.e2), ca * cb);
            }
        }
        Ok(out)
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        LaurentPoly2 {
            tag: self.tag,
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    /// Multiplies by the unit c · v1^e1 · v2^e2 (no tag change).
    pub fn mul_monomial(&self, e1: i64, e2: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(self.tag);
        }
        LaurentPoly2 {
            tag: self.tag,
            terms: self
                .terms
                .iter()
                .map(|(&e, k)| (ExpPair::new(e.e1 + e1, e.e2 + e2), k * &c))
                .collect(),
        }
    }

    /// Non-negative integer power by repeated multiplication.
    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.tag);
        for _ in 0..n {
            out = out.mul(self).expect("same tag");
        }
        out
    }

    /// Smallest exponent of the chosen variable over all terms.
    pub fn min_exp(&self, var: Var) -> Option<i64> {
        self.terms
            .keys()
            .map(|e| match var {
                Var::First => e.e1,
                Var::Second => e.e2,
            })
            .min()
    }

    /// Largest exponent of the chosen variable over all terms.
    pub fn max_exp(&self, var: Var) -> Option<i64> {
        self.terms
            .keys()
            .map(|e| match var {
                Var::First => e.e1,
                Var::Second => e.e2,
            })
            .max()
    }

    /// Total degree: the maximum of e1+e2 over terms.  `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        // Iteration is graded-lex ascending, so the last key has max degree.
        self.terms.keys().next_back().map(|e| e.deg())
    }

    /// True iff every stored exponent is non-negative in both variables.
    pub fn is_plain(&self) -> bool {
        self.terms.keys().all(|e| e.e1 >= 0 && e.e2 >= 0)
    }

    /// Serializes to the canonical JSON form: an array of [e1, e2, c]
    /// triples in graded-lex order, with exact (arbitrary-precision)
    /// integer coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        let triples: Vec<serde_json::Value> = self
            .terms()
            .map(|(e, c)| {
                serde_json::Value::Array(vec![
                    serde_json::Value::from(e.e1),
                    serde_json::Value::from(e.e2),
                    // Round-trips through the JSON grammar so coefficients
                    // beyond machine range stay exact.
                    serde_json::from_str(&c.to_string())
                        .expect("an integer literal is valid JSON"),
                ])
            })
            .collect();
        serde_json::Value::Array(triples)
    }

    /// Decodes the canonical JSON triple form; the variable tag is supplied
    /// by the caller (records know which field holds which context).
    pub fn from_json(tag: VarTag, v: &serde_json::Value) -> Result<Self, PolyError> {
        let arr = v
            .as_array()
            .ok_or_else(|| PolyError::Malformed("expected array of triples".into()))?;
        let mut p = Self::zero(tag);
        for item in arr {
            let triple = item
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| PolyError::Malformed("expected [e1,e2,c] triple".into()))?;
            let e1 = triple[0]
                .as_i64()
                .ok_or_else(|| PolyError::Malformed("e1 not an integer".into()))?;
            let e2 = triple[1]
                .as_i64()
                .ok_or_else(|| PolyError::Malformed("e2 not an integer".into()))?;
            let c: BigInt = match &triple[2] {
                serde_json::Value::Number(n) => n
                    .to_string()
                    .parse()
                    .map_err(|_| PolyError::Malformed("coefficient not an integer".into()))?,
                _ => return Err(PolyError::Malformed("coefficient not a number".into())),
            };
            p.add_term(ExpPair::new(e1, e2), c);
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let json = self.to_json();
        let arr = json.as_array().expect("to_json returns an array");
        let mut seq = serializer.serialize_seq(Some(arr.len()))?;
        for item in arr {
            seq.serialize_element(item)?;
        }
        seq.end()
    }
}

/// Canonical text form: terms in graded-lex order rendered as
/// `c*v1^e1*v2^e2`, joined by `+`.  Exact text equality is the cross-run
/// regression contract; no cosmetic sign or exponent elision.
impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            write!(
                f,
                "{}*{}^{}*{}^{}",
                c,
                self.tag.first(),
                e.e1,
                self.tag.second(),
                e.e2
            )?;
        }
        Ok(())
    }
}
