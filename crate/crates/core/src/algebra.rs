//! Finitely supported elements of the group algebra of `F_N × … × F_N`
//! (`k` factors) with exact rational coefficients.
//!
//! This is the dense subalgebra of the `k`-fold tensor power spanned by simple
//! tensors `x_1 ⊗ … ⊗ x_k`. Elements are sparse maps with no stored zeros,
//! keyed by [`TensorWord`] in lexicographic-over-factors order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Rank, Word};

pub type Rational = BigRational;

pub fn rational_to_string(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational {:?}", s)))
}

/// A simple tensor `x_1 ⊗ … ⊗ x_k` of reduced words of a common rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorWord {
    factors: Vec<Word>,
}

impl TensorWord {
    pub fn new(factors: Vec<Word>) -> Result<TensorWord> {
        let Some(first) = factors.first() else {
            return Err(Error::Precondition("a tensor word needs at least one factor".into()));
        };
        let rank = first.rank();
        if let Some(bad) = factors.iter().find(|f| f.rank() != rank) {
            return Err(Error::RankMismatch { left: rank.get(), right: bad.rank().get() });
        }
        Ok(TensorWord { factors })
    }

    /// `v ⊗ … ⊗ v` with `k` factors.
    pub fn diagonal(v: &Word, k: usize) -> TensorWord {
        assert!(k >= 1, "tensor depth must be at least 1");
        TensorWord { factors: vec![v.clone(); k] }
    }

    pub fn identity(rank: Rank, k: usize) -> TensorWord {
        TensorWord::diagonal(&Word::identity(rank), k)
    }

    /// Semicolon-separated factors, e.g. `"1,-2;2,1"`.
    pub fn parse(rank: Rank, s: &str) -> Result<TensorWord> {
        let factors = s.split(';').map(|f| Word::parse(rank, f)).collect::<Result<Vec<_>>>()?;
        TensorWord::new(factors)
    }

    pub fn factors(&self) -> &[Word] {
        &self.factors
    }

    pub fn depth(&self) -> usize {
        self.factors.len()
    }

    pub fn rank(&self) -> Rank {
        self.factors[0].rank()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(Word::is_identity)
    }

    /// All factors equal.
    pub fn is_diagonal(&self) -> bool {
        self.factors.windows(2).all(|p| p[0] == p[1])
    }

    pub fn max_len(&self) -> usize {
        self.factors.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> TensorWord {
        TensorWord { factors: self.factors.iter().map(Word::inverse).collect() }
    }

    fn check_shape(&self, other: &TensorWord) -> Result<()> {
        if self.rank() != other.rank() || self.depth() != other.depth() {
            return Err(Error::ShapeMismatch {
                left_rank: self.rank().get(),
                left_depth: self.depth(),
                right_rank: other.rank().get(),
                right_depth: other.depth(),
            });
        }
        Ok(())
    }

    /// Factorwise reduced product.
    pub fn mul(&self, other: &TensorWord) -> Result<TensorWord> {
        self.check_shape(other)?;
        let factors = self.factors.iter().zip(&other.factors).map(|(a, b)| a.concat(b)).collect::<Result<Vec<_>>>()?;
        Ok(TensorWord { factors })
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{}", w)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    rank: Rank,
    depth: usize,
    terms: BTreeMap<TensorWord, Rational>,
}

impl AlgebraElement {
    pub fn zero(rank: Rank, depth: usize) -> AlgebraElement {
        assert!(depth >= 1, "tensor depth must be at least 1");
        AlgebraElement { rank, depth, terms: BTreeMap::new() }
    }

    pub fn identity(rank: Rank, depth: usize) -> AlgebraElement {
        AlgebraElement::from_tensor(TensorWord::identity(rank, depth))
    }

    pub fn from_tensor(t: TensorWord) -> AlgebraElement {
        AlgebraElement::from_term(t, Rational::one())
    }

    pub fn from_term(t: TensorWord, coeff: Rational) -> AlgebraElement {
        let mut e = AlgebraElement::zero(t.rank(), t.depth());
        if !coeff.is_zero() {
            e.terms.insert(t, coeff);
        }
        e
    }

    /// Sums the given terms; repeated keys accumulate.
    pub fn from_terms<I>(rank: Rank, depth: usize, terms: I) -> Result<AlgebraElement>
    where
        I: IntoIterator<Item = (TensorWord, Rational)>,
    {
        let mut e = AlgebraElement::zero(rank, depth);
        for (t, c) in terms {
            if t.rank() != rank || t.depth() != depth {
                return Err(Error::ShapeMismatch {
                    left_rank: rank.get(),
                    left_depth: depth,
                    right_rank: t.rank().get(),
                    right_depth: t.depth(),
                });
            }
            e.accumulate(t, c);
        }
        e.prune();
        Ok(e)
    }

    pub(crate) fn from_sorted_unit_terms(rank: Rank, depth: usize, terms: Vec<TensorWord>) -> Self {
        let terms = terms.into_iter().map(|t| (t, Rational::one())).collect();
        AlgebraElement { rank, depth, terms }
    }

    fn accumulate(&mut self, t: TensorWord, c: Rational) {
        *self.terms.entry(t).or_insert_with(Rational::zero) += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &TensorWord) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    /// Longest factor appearing anywhere in the support.
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(TensorWord::max_len).max().unwrap_or(0)
    }

    fn check_shape(&self, other: &AlgebraElement) -> Result<()> {
        if self.rank != other.rank || self.depth != other.depth {
            return Err(Error::ShapeMismatch {
                left_rank: self.rank.get(),
                left_depth: self.depth,
                right_rank: other.rank.get(),
                right_depth: other.depth,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.accumulate(t.clone(), c.clone());
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> AlgebraElement {
        if s.is_zero() {
            return AlgebraElement::zero(self.rank, self.depth);
        }
        AlgebraElement {
            rank: self.rank,
            depth: self.depth,
            terms: self.terms.iter().map(|(t, c)| (t.clone(), c * s)).collect(),
        }
    }

    /// Convolution product, bilinear in the simple tensors.
    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_shape(other)?;
        let mut out = AlgebraElement::zero(self.rank, self.depth);
        for (ta, ca) in &self.terms {
            for (tb, cb) in &other.terms {
                out.accumulate(ta.mul(tb)?, ca * cb);
            }
        }
        out.prune();
        Ok(out)
    }

    /// Factorwise inverse on every simple tensor; coefficients are real.
    pub fn adjoint(&self) -> AlgebraElement {
        AlgebraElement {
            rank: self.rank,
            depth: self.depth,
            terms: self.terms.iter().map(|(t, c)| (t.inverse(), c.clone())).collect(),
        }
    }

    /// Coefficient of `e ⊗ … ⊗ e`.
    pub fn trace(&self) -> Rational {
        self.coeff(&TensorWord::identity(self.rank, self.depth))
    }

    /// `trace(self · other)` without forming the product: `Σ_t a_t b_{t⁻¹}`.
    pub fn trace_of_product(&self, other: &AlgebraElement) -> Result<Rational> {
        self.check_shape(other)?;
        let (small, large) = if self.support_size() <= other.support_size() { (self, other) } else { (other, self) };
        Ok(small
            .terms
            .iter()
            .filter_map(|(t, c)| large.terms.get(&t.inverse()).map(|d| c * d))
            .fold(Rational::zero(), |acc, x| acc + x))
    }

    /// `trace(self* · other)`, i.e. the sum of coefficient products over the
    /// common support.
    pub fn inner(&self, other: &AlgebraElement) -> Result<Rational> {
        self.check_shape(other)?;
        Ok(self
            .terms
            .iter()
            .filter_map(|(t, c)| other.terms.get(t).map(|d| c * d))
            .fold(Rational::zero(), |acc, x| acc + x))
    }

    pub fn norm2_squared(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c * c)
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            rank: self.rank.get(),
            depth: self.depth,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| TermJson {
                    tensor: t.factors.iter().map(Word::to_string).collect(),
                    coeff: rational_to_string(c),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ElementJson) -> Result<AlgebraElement> {
        let rank = Rank::new(json.rank)?;
        if json.depth == 0 {
            return Err(Error::Precondition("k must be at least 1".into()));
        }
        let terms = json
            .terms
            .iter()
            .map(|term| {
                let factors = term.tensor.iter().map(|f| Word::parse(rank, f)).collect::<Result<Vec<_>>>()?;
                Ok((TensorWord::new(factors)?, parse_rational(&term.coeff)?))
            })
            .collect::<Result<Vec<_>>>()?;
        AlgebraElement::from_terms(rank, json.depth, terms)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("element serializes")
    }

    pub fn from_json_str(s: &str) -> Result<AlgebraElement> {
        let json: ElementJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        AlgebraElement::from_json(&json)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            write!(f, "{}·[{}]", c.abs(), t)?;
        }
        Ok(())
    }
}

/// Wire form: `{ "N": 2, "k": 2, "terms": [{ "tensor": ["1,-2", "2"], "coeff": "3/4" }] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    #[serde(rename = "N")]
    pub rank: u32,
    #[serde(rename = "k")]
    pub depth: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub tensor: Vec<String>,
    pub coeff: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> Rank {
        Rank::new(2).unwrap()
    }

    fn el(s: &str) -> AlgebraElement {
        AlgebraElement::from_tensor(TensorWord::parse(r2(), s).unwrap())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn add_examples() {
        let a = el("1").add(&el("2,1")).unwrap();
        assert_eq!(a.add(&AlgebraElement::zero(r2(), 1)).unwrap(), a);
        assert!(a.add(&a.scale(&q(-1, 1))).unwrap().is_zero());
        assert_eq!(el("1").add(&el("1")).unwrap(), el("1").scale(&q(2, 1)));
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(el("1").multiply(&el("-1")).unwrap(), AlgebraElement::identity(r2(), 1));
        assert_eq!(el("1;1").multiply(&el("2;2")).unwrap(), el("1,2;1,2"));
    }

    #[test]
    fn shape_mismatch_is_reported() {
        assert!(matches!(el("1").add(&el("1;1")), Err(Error::ShapeMismatch { .. })));
        assert!(el("1").multiply(&el("1;2")).is_err());
        let r3 = Rank::new(3).unwrap();
        let b = AlgebraElement::identity(r3, 1);
        assert!(el("1").inner(&b).is_err());
    }

    #[test]
    fn adjoint_and_trace_examples() {
        assert_eq!(el("1").scale(&q(2, 1)).adjoint(), el("-1").scale(&q(2, 1)));
        let e = AlgebraElement::identity(r2(), 2);
        assert_eq!(e.adjoint(), e);
        assert_eq!(e.trace(), q(1, 1));
        assert_eq!(el("1;").trace(), q(0, 1));
    }

    #[test]
    fn inner_examples() {
        assert_eq!(el("1").inner(&el("1")).unwrap(), q(1, 1));
        assert_eq!(el("1").inner(&el("2")).unwrap(), q(0, 1));
        let a = el("1").scale(&q(3, 2)).add(&el("2,2").scale(&q(-1, 3))).unwrap();
        assert_eq!(a.norm2_squared(), q(9, 4) + q(1, 9));
    }

    #[test]
    fn trace_of_product_matches_product_trace() {
        let a = el("1,2").add(&el("-2").scale(&q(1, 2))).unwrap();
        let b = el("-2,-1").scale(&q(5, 1)).add(&el("2")).unwrap();
        let direct = a.multiply(&b).unwrap().trace();
        assert_eq!(a.trace_of_product(&b).unwrap(), direct);
        assert_eq!(direct, q(5, 1) + q(1, 2));
    }

    #[test]
    fn json_round_trip_and_canonical_form() {
        let a = el("1,-2;2").scale(&q(6, 8)).add(&el(";").scale(&q(-2, 1))).unwrap();
        let s = a.to_json_string();
        assert!(s.contains("\"coeff\": \"3/4\""));
        assert!(s.contains("\"N\": 2"));
        assert_eq!(AlgebraElement::from_json_str(&s).unwrap(), a);
        // identity tensor sorts first
        assert_eq!(a.to_json().terms[0].tensor, vec!["".to_string(), "".to_string()]);
    }

    #[test]
    fn json_input_is_reduced_and_merged() {
        let s = r#"{"N":2,"k":1,"terms":[{"tensor":["1,2,-2"],"coeff":"1/2"},{"tensor":["1"],"coeff":"-1/2"}]}"#;
        assert!(AlgebraElement::from_json_str(s).unwrap().is_zero());
        assert!(AlgebraElement::from_json_str(r#"{"N":1,"k":1,"terms":[]}"#).is_err());
    }
}
