//! Radial elements `w_n = Σ_{|v|=n} v ⊗ … ⊗ v` and the trace-preserving
//! conditional expectation onto their span.
//!
//! Radial elements are handled in two representations: as sparse
//! [`AlgebraElement`]s (explicit sums over spheres) and as coefficient vectors
//! over the basis `{w_n}` ([`RadialCoeffs`]). Products in the coefficient
//! representation use the sphere structure constants from
//! [`structure_constants`], which do not depend on the tensor depth.

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, rational_to_string, AlgebraElement, Rational, TensorWord};
use crate::error::{Error, Result};
use crate::word::{enumerate_words, Guard, Rank};

/// `‖w_n‖₂²`: 1 for `n = 0`, else `2N(2N-1)^(n-1)`. Independent of the depth.
pub fn radial_norm_squared(rank: Rank, n: usize) -> BigInt {
    rank.sphere_size(n)
}

fn norm_sq_q(rank: Rank, n: usize) -> Rational {
    BigRational::from_integer(radial_norm_squared(rank, n))
}

/// `w_n` at tensor depth `k`, all coefficients 1.
pub fn make_w(rank: Rank, k: usize, n: usize, guard: &Guard) -> Result<AlgebraElement> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    guard.check(rank, n)?;
    let tensors = enumerate_words(rank, n).iter().map(|v| TensorWord::diagonal(v, k)).collect();
    Ok(AlgebraElement::from_sorted_unit_terms(rank, k, tensors))
}

/// Expansion `w_m w_n = Σ_j c_j w_j` as `(j, c_j)` pairs, `j` descending.
///
/// A word of length `m + n - 2i` arises from `a b` with `|a| = m`, `|b| = n`
/// and `i` cancellations in `(2N-2)(2N-1)^(i-1)` ways when `0 < i < min(m, n)`,
/// `(2N-1)^i` ways when `i = min(m, n) < max(m, n)`, and `2N(2N-1)^(i-1)`
/// ways when `i = m = n`.
pub fn structure_constants(rank: Rank, m: usize, n: usize) -> Vec<(usize, BigInt)> {
    let (lo, hi) = if m <= n { (m, n) } else { (n, m) };
    let two_n = BigInt::from(2 * rank.get());
    let q = BigInt::from(2 * rank.get() - 1);
    (0..=lo)
        .map(|i| {
            let mult = if i == 0 {
                BigInt::one()
            } else if i < lo {
                (&two_n - 2) * num::pow(q.clone(), i - 1)
            } else if lo < hi {
                num::pow(q.clone(), i)
            } else {
                &two_n * num::pow(q.clone(), i - 1)
            };
            (lo + hi - 2 * i, mult)
        })
        .collect()
}

/// `Σ_n c_n w_n` at a fixed rank and depth, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialCoeffs {
    rank: Rank,
    depth: usize,
    coeffs: Vec<Rational>,
}

impl RadialCoeffs {
    pub fn new(rank: Rank, depth: usize, coeffs: Vec<Rational>) -> RadialCoeffs {
        assert!(depth >= 1, "tensor depth must be at least 1");
        let mut r = RadialCoeffs { rank, depth, coeffs };
        r.trim();
        r
    }

    pub fn zero(rank: Rank, depth: usize) -> RadialCoeffs {
        RadialCoeffs::new(rank, depth, Vec::new())
    }

    /// The single basis element `w_n`.
    pub fn basis(rank: Rank, depth: usize, n: usize) -> RadialCoeffs {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        RadialCoeffs::new(rank, depth, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest index with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Same basis coefficients at another depth.
    pub fn at_depth(&self, depth: usize) -> RadialCoeffs {
        RadialCoeffs::new(self.rank, depth, self.coeffs.clone())
    }

    fn check_shape(&self, other: &RadialCoeffs) -> Result<()> {
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

    pub fn add(&self, other: &RadialCoeffs) -> Result<RadialCoeffs> {
        self.check_shape(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Ok(RadialCoeffs::new(self.rank, self.depth, coeffs))
    }

    pub fn sub(&self, other: &RadialCoeffs) -> Result<RadialCoeffs> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> RadialCoeffs {
        let coeffs = self.coeffs.iter().map(|c| c * s).collect();
        RadialCoeffs::new(self.rank, self.depth, coeffs)
    }

    /// Product inside the radial subalgebra.
    pub fn mul(&self, other: &RadialCoeffs) -> Result<RadialCoeffs> {
        self.check_shape(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(RadialCoeffs::zero(self.rank, self.depth));
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (m, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (n, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (j, mult) in structure_constants(self.rank, m, n) {
                    coeffs[j] += &ab * BigRational::from_integer(mult);
                }
            }
        }
        Ok(RadialCoeffs::new(self.rank, self.depth, coeffs))
    }

    /// `τ(self* other)`, using orthogonality of the `w_n`.
    pub fn inner(&self, other: &RadialCoeffs) -> Result<Rational> {
        self.check_shape(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .fold(Rational::zero(), |acc, (n, (a, b))| acc + a * b * norm_sq_q(self.rank, n)))
    }

    pub fn norm2_squared(&self) -> Rational {
        self.inner(self).expect("same shape")
    }

    pub fn to_json(&self) -> RadialJson {
        RadialJson {
            rank: self.rank.get(),
            depth: self.depth,
            coeffs: self.coeffs.iter().map(rational_to_string).collect(),
        }
    }

    pub fn from_json(json: &RadialJson) -> Result<RadialCoeffs> {
        let rank = Rank::new(json.rank)?;
        if json.depth == 0 {
            return Err(Error::Precondition("k must be at least 1".into()));
        }
        let coeffs = json.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
        Ok(RadialCoeffs::new(rank, json.depth, coeffs))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("coefficients serialize")
    }
}

/// Wire form: `{ "N": 2, "k": 1, "coeffs": ["1", "0", "3/4"] }`, indexed from `n = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadialJson {
    #[serde(rename = "N")]
    pub rank: u32,
    #[serde(rename = "k")]
    pub depth: usize,
    pub coeffs: Vec<String>,
}

/// Conditional expectation onto the radial subalgebra.
///
/// `c_n = τ(a w_n) / ‖w_n‖₂²`. Since `w_n` is the sum of `(v⁻¹)^{⊗k}` over the
/// same sphere, `τ(a w_n)` is the total coefficient of `a` on diagonal tensors
/// of word length `n`, so only the support of `a` is scanned.
pub fn cond_exp(a: &AlgebraElement) -> RadialCoeffs {
    let mut pairings = vec![Rational::zero(); a.max_word_len() + 1];
    for (t, c) in a.terms() {
        if t.is_diagonal() {
            pairings[t.factors()[0].len()] += c;
        }
    }
    let coeffs = pairings.into_iter().enumerate().map(|(n, p)| p / norm_sq_q(a.rank(), n)).collect();
    RadialCoeffs::new(a.rank(), a.depth(), coeffs)
}

/// Whether the expectation of a simple tensor is nonzero: all factors equal.
pub fn simple_tensor_nonvanishing(t: &TensorWord) -> bool {
    t.is_diagonal()
}

pub fn radial_to_element(r: &RadialCoeffs, guard: &Guard) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero(r.rank(), r.depth());
    for (n, c) in r.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out = out.add(&make_w(r.rank(), r.depth(), n, guard)?.scale(c))?;
    }
    Ok(out)
}

/// Outcome of checking `w_1 w_n = w_n w_1 = w_{n+1} + c · w_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub n: usize,
    /// Coefficient of `w_{n-1}` checked: `2N-1` for `n ≥ 2`, `2N` at `n = 1`.
    pub multiplicity: BigInt,
    pub left_matches: bool,
    pub right_matches: bool,
    /// At `n = 1`, whether the `2N-1` form holds as well (it does not).
    pub generic_form_at_boundary: Option<bool>,
}

impl RecurrenceReport {
    pub fn holds(&self) -> bool {
        self.left_matches && self.right_matches
    }
}

pub fn verify_recurrence(rank: Rank, k: usize, n: usize, guard: &Guard) -> Result<RecurrenceReport> {
    if n == 0 {
        return Err(Error::Precondition("the recurrence starts at n = 1".into()));
    }
    guard.check(rank, n + 1)?;
    let w1 = make_w(rank, k, 1, guard)?;
    let wn = make_w(rank, k, n, guard)?;
    let up = make_w(rank, k, n + 1, guard)?;
    let down = make_w(rank, k, n - 1, guard)?;
    let generic = BigInt::from(2 * rank.get() - 1);
    let multiplicity = if n == 1 { BigInt::from(2 * rank.get()) } else { generic.clone() };
    let rhs = up.add(&down.scale(&BigRational::from_integer(multiplicity.clone())))?;
    let left = w1.multiply(&wn)?;
    let right = wn.multiply(&w1)?;
    let generic_form_at_boundary =
        (n == 1).then(|| up.add(&down.scale(&BigRational::from_integer(generic))).map(|g| g == left)).transpose()?;
    Ok(RecurrenceReport {
        n,
        multiplicity,
        left_matches: left == rhs,
        right_matches: right == rhs,
        generic_form_at_boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    fn r(n: u32) -> Rank {
        Rank::new(n).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn make_w_examples() {
        let g = Guard::default();
        assert_eq!(make_w(r(2), 1, 0, &g).unwrap(), AlgebraElement::identity(r(2), 1));
        let w1 = make_w(r(2), 2, 1, &g).unwrap();
        let tensors: Vec<String> = w1.terms().map(|(t, _)| t.to_string()).collect();
        assert_eq!(tensors, vec!["1;1", "-1;-1", "2;2", "-2;-2"]);
        assert_eq!(make_w(r(2), 3, 4, &g).unwrap().norm2_squared(), q(108, 1));
        assert!(make_w(r(2), 1, 20, &g).is_err());
    }

    #[test]
    fn norm_closed_form_examples() {
        assert_eq!(radial_norm_squared(r(2), 1), 4.into());
        assert_eq!(radial_norm_squared(r(3), 2), 30.into());
        assert_eq!(radial_norm_squared(r(2), 0), 1.into());
    }

    #[test]
    fn w1_squared_boundary() {
        let g = Guard::default();
        let w1 = make_w(r(2), 1, 1, &g).unwrap();
        let sq = w1.multiply(&w1).unwrap();
        let expect = make_w(r(2), 1, 2, &g).unwrap().add(&AlgebraElement::identity(r(2), 1).scale(&q(4, 1))).unwrap();
        assert_eq!(sq, expect);
        assert_eq!(sq.trace(), q(4, 1));
    }

    #[test]
    fn recurrence_examples() {
        let g = Guard::default();
        let rep = verify_recurrence(r(2), 1, 2, &g).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.multiplicity, 3.into());
        assert!(verify_recurrence(r(2), 2, 3, &g).unwrap().holds());
        let b = verify_recurrence(r(2), 1, 1, &g).unwrap();
        assert!(b.holds());
        assert_eq!(b.multiplicity, 4.into());
        assert_eq!(b.generic_form_at_boundary, Some(false));
        assert!(verify_recurrence(r(2), 1, 0, &g).is_err());
    }

    #[test]
    fn cond_exp_examples() {
        let rank = r(2);
        let v = Word::parse(rank, "1,-2,-2").unwrap();
        let e = cond_exp(&AlgebraElement::from_tensor(TensorWord::diagonal(&v, 3)));
        assert_eq!(e.coeffs(), &[q(0, 1), q(0, 1), q(0, 1), q(1, 36)]);
        let off = AlgebraElement::from_tensor(TensorWord::parse(rank, "1;2").unwrap());
        assert!(cond_exp(&off).is_zero());
        assert_eq!(cond_exp(&AlgebraElement::identity(rank, 2)).coeffs(), &[q(1, 1)]);
    }

    #[test]
    fn cond_exp_matches_trace_pairing_definition() {
        // τ(a w_n) via the full convolution product
        let rank = r(2);
        let g = Guard::default();
        let a = AlgebraElement::from_terms(
            rank,
            2,
            [("1;1", q(3, 1)), ("-1,2;-1,2", q(-1, 2)), ("2;1", q(7, 1)), (";", q(2, 3))]
                .into_iter()
                .map(|(s, c)| (TensorWord::parse(rank, s).unwrap(), c)),
        )
        .unwrap();
        let e = cond_exp(&a);
        for n in 0..=3 {
            let w = make_w(rank, 2, n, &g).unwrap();
            let pairing = a.multiply(&w).unwrap().trace();
            assert_eq!(e.coeff(n), pairing / BigRational::from_integer(radial_norm_squared(rank, n)));
        }
    }

    #[test]
    fn nonvanishing_examples() {
        let rank = r(2);
        assert!(simple_tensor_nonvanishing(&TensorWord::parse(rank, "1;1;1").unwrap()));
        assert!(!simple_tensor_nonvanishing(&TensorWord::parse(rank, "1;2").unwrap()));
        assert!(simple_tensor_nonvanishing(&TensorWord::parse(rank, ";").unwrap()));
    }

    #[test]
    fn radial_round_trips() {
        let g = Guard::default();
        let rank = r(2);
        for coeffs in [vec![q(1, 1)], vec![q(0, 1), q(1, 1)], vec![q(0, 1), q(1, 1), q(0, 1), q(2, 1)]] {
            let rc = RadialCoeffs::new(rank, 2, coeffs);
            assert_eq!(cond_exp(&radial_to_element(&rc, &g).unwrap()), rc);
        }
    }

    #[test]
    fn radial_product_matches_convolution() {
        let g = Guard::default();
        for rank in [r(2), r(3)] {
            for k in 1..=2 {
                for m in 0..=3 {
                    for n in 0..=3 {
                        let a = RadialCoeffs::basis(rank, k, m);
                        let b = RadialCoeffs::basis(rank, k, n);
                        let via_coeffs = radial_to_element(&a.mul(&b).unwrap(), &g).unwrap();
                        let direct =
                            make_w(rank, k, m, &g).unwrap().multiply(&make_w(rank, k, n, &g).unwrap()).unwrap();
                        assert_eq!(via_coeffs, direct, "N={rank} k={k} m={m} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let rc = RadialCoeffs::new(r(2), 1, vec![q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(rc.coeffs().len(), 1);
        assert_eq!(rc.to_json().coeffs, vec!["1"]);
    }

    #[test]
    fn radial_json_round_trip() {
        let rc = RadialCoeffs::new(r(3), 2, vec![q(1, 1), q(0, 1), q(3, 4)]);
        let s = rc.to_json_string();
        assert!(s.contains("\"3/4\""));
        let back: RadialJson = serde_json::from_str(&s).unwrap();
        assert_eq!(RadialCoeffs::from_json(&back).unwrap(), rc);
    }
}
