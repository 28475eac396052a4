//! Cancellation counts `μ(r, s, n; x, y)`, the depth-`k` versus depth-1 norm
//! identities for `E_k(x^{⊗k} w_n y^{⊗k}) - E_k(x^{⊗k}) E_k(y^{⊗k}) w_n`, and
//! exact partial sums of the series
//!
//! ```text
//! Σ_n ‖E_k(xs · w_n · ys) - E_k(xs) E_k(ys) w_n‖₂² / ‖w_n‖₂²
//! ```
//!
//! for simple tensors `xs = x_1 ⊗ … ⊗ x_k` and `ys = y_1 ⊗ … ⊗ y_k`.

use std::collections::BTreeMap;

use num::{BigRational, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{rational_to_string, AlgebraElement, Rational, TensorWord};
use crate::error::{Error, Result};
use crate::radial::{cond_exp, make_w, radial_norm_squared, RadialCoeffs};
use crate::word::{cancellation_profile, guarded_words, Guard, Rank, Word};

fn norm_sq_q(rank: Rank, n: usize) -> Rational {
    BigRational::from_integer(radial_norm_squared(rank, n))
}

/// `μ(r, s, n; x, y)` for all `(r, s)`: how many words `v` of length `n`
/// lose `r` letters to `x` and `s` letters to `y` in `x v y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTable {
    x: Word,
    y: Word,
    n: usize,
    counts: BTreeMap<(usize, usize), u64>,
}

impl MuTable {
    pub fn x(&self) -> &Word {
        &self.x
    }

    pub fn y(&self) -> &Word {
        &self.y
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, r: usize, s: usize) -> u64 {
        self.counts.get(&(r, s)).copied().unwrap_or(0)
    }

    /// Nonzero cells in `(r, s)` order.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `Σ_{r,s} μ(r,s) w_p / ‖w_p‖₂²` with `p = |x| + |y| + n - 2(r+s)`,
    /// which equals `E_k(x^{⊗k} w_n y^{⊗k})` at every depth `k`.
    pub fn radial_expansion(&self, depth: usize) -> RadialCoeffs {
        let rank = self.x.rank();
        let top = self.x.len() + self.y.len() + self.n;
        let mut coeffs = vec![Rational::zero(); top + 1];
        for (&(r, s), &mu) in &self.counts {
            let p = top - 2 * (r + s);
            coeffs[p] += BigRational::from_integer(mu.into()) / norm_sq_q(rank, p);
        }
        RadialCoeffs::new(rank, depth, coeffs)
    }
}

pub fn mu_table(x: &Word, y: &Word, n: usize, guard: &Guard) -> Result<MuTable> {
    if x.rank() != y.rank() {
        return Err(Error::RankMismatch { left: x.rank().get(), right: y.rank().get() });
    }
    if x.is_identity() || y.is_identity() {
        return Err(Error::Precondition("x and y must be nontrivial".into()));
    }
    if n < x.len() + y.len() {
        return Err(Error::Precondition(format!("n = {} is below |x| + |y| = {}", n, x.len() + y.len())));
    }
    let mut counts = BTreeMap::new();
    for v in guarded_words(x.rank(), n, guard)? {
        let profile = cancellation_profile(x, &v, y)?;
        // n ≥ |x| + |y| leaves no room for x and y to meet
        assert!(!profile.collapsed, "collapsed profile for x={x} v={v} y={y}");
        *counts.entry((profile.left, profile.right)).or_insert(0) += 1;
    }
    Ok(MuTable { x: x.clone(), y: y.clone(), n, counts })
}

/// `E_k(xs · w_n · ys)` through the depth-`k` group algebra.
pub fn sandwich_expectation(xs: &TensorWord, ys: &TensorWord, n: usize, guard: &Guard) -> Result<RadialCoeffs> {
    Ok(cond_exp(&sandwich(xs, ys, n, guard)?))
}

fn sandwich(xs: &TensorWord, ys: &TensorWord, n: usize, guard: &Guard) -> Result<AlgebraElement> {
    let w = make_w(xs.rank(), xs.depth(), n, guard)?;
    AlgebraElement::from_tensor(xs.clone()).multiply(&w)?.multiply(&AlgebraElement::from_tensor(ys.clone()))
}

/// `E_k(xs) E_k(ys) w_n` in the radial basis.
fn product_term(xs: &TensorWord, ys: &TensorWord, n: usize) -> Result<RadialCoeffs> {
    let ex = cond_exp(&AlgebraElement::from_tensor(xs.clone()));
    let ey = cond_exp(&AlgebraElement::from_tensor(ys.clone()));
    ex.mul(&ey)?.mul(&RadialCoeffs::basis(xs.rank(), xs.depth(), n))
}

/// The four squared norms / traces behind the depth-independence identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormQuantities {
    /// `‖E(x w_n y)‖₂²`
    pub expectation_norm: Rational,
    /// `‖E(x) E(y) w_n‖₂²`
    pub product_norm: Rational,
    /// `τ(E(x w_n y)* E(x) E(y) w_n)`
    pub cross_trace: Rational,
    /// `‖E(x w_n y) - E(x) E(y) w_n‖₂²`
    pub difference_norm: Rational,
}

impl NormQuantities {
    fn compute(xs: &TensorWord, ys: &TensorWord, n: usize, guard: &Guard) -> Result<NormQuantities> {
        let e = sandwich_expectation(xs, ys, n, guard)?;
        let p = product_term(xs, ys, n)?;
        Ok(NormQuantities {
            expectation_norm: e.norm2_squared(),
            product_norm: p.norm2_squared(),
            cross_trace: e.inner(&p)?,
            difference_norm: e.sub(&p)?.norm2_squared(),
        })
    }

    /// `‖a - b‖² = ‖a‖² + ‖b‖² - 2 τ(a* b)`.
    pub fn polarization_holds(&self) -> bool {
        let two = Rational::from_integer(2.into());
        self.difference_norm == &self.expectation_norm + &self.product_norm - two * &self.cross_trace
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthIndependenceReport {
    pub depth: usize,
    pub n: usize,
    pub at_depth: NormQuantities,
    pub at_depth_one: NormQuantities,
}

impl DepthIndependenceReport {
    /// The main identity: difference norms agree.
    pub fn main_identity_holds(&self) -> bool {
        self.at_depth.difference_norm == self.at_depth_one.difference_norm
    }

    /// Expectation norms, product norms and cross traces agree separately.
    pub fn component_identities_hold(&self) -> bool {
        self.at_depth.expectation_norm == self.at_depth_one.expectation_norm
            && self.at_depth.product_norm == self.at_depth_one.product_norm
            && self.at_depth.cross_trace == self.at_depth_one.cross_trace
    }

    pub fn holds(&self) -> bool {
        self.main_identity_holds()
            && self.component_identities_hold()
            && self.at_depth.polarization_holds()
            && self.at_depth_one.polarization_holds()
    }
}

pub fn verify_depth_independence(
    x: &Word,
    y: &Word,
    k: usize,
    n: usize,
    guard: &Guard,
) -> Result<DepthIndependenceReport> {
    if x.len() < 2 || y.len() < 2 {
        return Err(Error::Precondition("|x| and |y| must be at least 2".into()));
    }
    if n < x.len() + y.len() {
        return Err(Error::Precondition(format!("n = {} is below |x| + |y| = {}", n, x.len() + y.len())));
    }
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let at =
        |depth| NormQuantities::compute(&TensorWord::diagonal(x, depth), &TensorWord::diagonal(y, depth), n, guard);
    Ok(DepthIndependenceReport { depth: k, n, at_depth: at(k)?, at_depth_one: at(1)? })
}

/// Whether the μ-weighted expansion reproduces `E_k(x^{⊗k} w_n y^{⊗k})`.
pub fn verify_mu_reconstruction(x: &Word, y: &Word, k: usize, n: usize, guard: &Guard) -> Result<bool> {
    let table = mu_table(x, y, n, guard)?;
    let direct = sandwich_expectation(&TensorWord::diagonal(x, k), &TensorWord::diagonal(y, k), n, guard)?;
    Ok(table.radial_expansion(k) == direct)
}

/// `x_i = x_j ⇔ y_i = y_j` for all `i, j`; necessary for any `v` to make all
/// `x_i v y_i` equal.
pub fn entry_patterns_compatible(xs: &TensorWord, ys: &TensorWord) -> bool {
    let (x, y) = (xs.factors(), ys.factors());
    (0..x.len()).all(|i| (0..i).all(|j| (x[i] == x[j]) == (y[i] == y[j])))
}

/// Words `v` of length `n` with `x_1 v y_1 = … = x_k v y_k`, with the common
/// product for each.
pub fn common_products(xs: &TensorWord, ys: &TensorWord, n: usize, guard: &Guard) -> Result<Vec<(Word, Word)>> {
    let mut out = Vec::new();
    for v in guarded_words(xs.rank(), n, guard)? {
        let mut prods = xs.factors().iter().zip(ys.factors()).map(|(x, y)| x.concat(&v)?.concat(y));
        let first = prods.next().expect("depth ≥ 1")?;
        let mut all_equal = true;
        for p in prods {
            if p? != first {
                all_equal = false;
                break;
            }
        }
        if all_equal {
            out.push((v, first));
        }
    }
    Ok(out)
}

/// One summand of the series, computed along two routes where both apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTerm {
    pub n: usize,
    /// `‖E(xs w_n ys) - E(xs) E(ys) w_n‖₂² / ‖w_n‖₂²`, through the algebra.
    pub term: Rational,
    /// `#{v : |v| = n, x_1 v y_1 = … = x_k v y_k}`.
    pub solution_count: usize,
    /// Lengths `|x_1 v y_1|` of the common products, ascending.
    pub output_lengths: Vec<usize>,
    /// Number of diagonal tensors in `xs · w_n · ys`; equals `solution_count`.
    pub diagonal_count: usize,
    /// The term rebuilt from the solution set, when `E(xs) E(ys) = 0`.
    pub term_from_solutions: Option<Rational>,
}

impl SeriesTerm {
    pub fn formulas_agree(&self) -> bool {
        self.term_from_solutions.as_ref().is_none_or(|t| *t == self.term)
    }
}

pub fn series_term(xs: &TensorWord, ys: &TensorWord, n: usize, guard: &Guard) -> Result<SeriesTerm> {
    if xs.rank() != ys.rank() || xs.depth() != ys.depth() {
        return Err(Error::ShapeMismatch {
            left_rank: xs.rank().get(),
            left_depth: xs.depth(),
            right_rank: ys.rank().get(),
            right_depth: ys.depth(),
        });
    }
    let rank = xs.rank();
    let element = sandwich(xs, ys, n, guard)?;
    let diagonal_count = element.terms().filter(|(t, _)| t.is_diagonal()).count();
    let difference = cond_exp(&element).sub(&product_term(xs, ys, n)?)?;
    let term = difference.norm2_squared() / norm_sq_q(rank, n);

    let solutions = if entry_patterns_compatible(xs, ys) { common_products(xs, ys, n, guard)? } else { Vec::new() };
    let mut output_lengths: Vec<usize> = solutions.iter().map(|(_, p)| p.len()).collect();
    output_lengths.sort_unstable();

    let product_vanishes = !(xs.is_diagonal() && ys.is_diagonal());
    let term_from_solutions = product_vanishes.then(|| {
        let top = output_lengths.last().copied().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); top + 1];
        for &p in &output_lengths {
            coeffs[p] += Rational::one() / norm_sq_q(rank, p);
        }
        RadialCoeffs::new(rank, xs.depth(), coeffs).norm2_squared() / norm_sq_q(rank, n)
    });

    Ok(SeriesTerm { n, term, solution_count: solutions.len(), output_lengths, diagonal_count, term_from_solutions })
}

/// Same term for `xs = x^{⊗k}`, `ys = y^{⊗k}`, computed from the lengths
/// `|x v y|` over the depth-1 sphere only.
pub fn diagonal_term_from_lengths(x: &Word, y: &Word, k: usize, n: usize, guard: &Guard) -> Result<Rational> {
    let rank = x.rank();
    let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
    for v in guarded_words(rank, n, guard)? {
        *hist.entry(x.concat(&v)?.concat(y)?.len()).or_insert(0) += 1;
    }
    let top = hist.keys().last().copied().unwrap_or(0);
    let mut coeffs = vec![Rational::zero(); top + 1];
    for (p, count) in hist {
        coeffs[p] = BigRational::from_integer(count.into()) / norm_sq_q(rank, p);
    }
    let expectation = RadialCoeffs::new(rank, k, coeffs);
    let product = product_term(&TensorWord::diagonal(x, k), &TensorWord::diagonal(y, k), n)?;
    Ok(expectation.sub(&product)?.norm2_squared() / norm_sq_q(rank, n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRow {
    pub n: usize,
    pub term: Rational,
    pub solution_count: usize,
    pub partial_sum: Rational,
}

/// Serialized row: exact rationals as `p/q`, plus an informational float.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesRecord {
    pub n: usize,
    pub term: String,
    pub term_float: String,
    pub solution_count: usize,
    pub partial_sum: String,
}

/// 15 significant digits, scientific notation.
pub fn informational_float(q: &Rational) -> String {
    format!("{:.14e}", q.to_f64().unwrap_or(f64::NAN))
}

impl SeriesRow {
    pub fn record(&self) -> SeriesRecord {
        SeriesRecord {
            n: self.n,
            term: rational_to_string(&self.term),
            term_float: informational_float(&self.term),
            solution_count: self.solution_count,
            partial_sum: rational_to_string(&self.partial_sum),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// More than one solution beyond `n₀`.
    MultipleSolutions {
        n: usize,
        count: usize,
    },
    /// A tail term exceeds `count² / (‖w_n‖₂² ‖w_{n-n₀}‖₂²)`.
    TermAboveBound {
        n: usize,
    },
    PartialSumDecreased {
        n: usize,
    },
    PartialSumAboveBound {
        n: usize,
    },
    /// The two term formulas disagree.
    FormulaMismatch {
        n: usize,
    },
    /// Solution count differs from the diagonal count, or the entry-pattern
    /// filter rejected an instance that has solutions.
    CountMismatch {
        n: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub xs: TensorWord,
    pub ys: TensorWord,
    /// `max |x_i| + max |y_j|`.
    pub n0: usize,
    /// `E(xs) E(ys) = 0`, so the solution-set formula and the tail bound apply.
    pub product_vanishes: bool,
    pub terms: Vec<SeriesTerm>,
    pub rows: Vec<SeriesRow>,
    /// `1 / (‖w_n‖₂² ‖w_{n-n₀}‖₂²)` for `n > n₀`, when `product_vanishes`.
    pub tail_bounds: Vec<Option<Rational>>,
    /// `partial_sum(n₀) + Σ_{n > n₀} tail bound`, summed in closed form.
    pub certified_total_bound: Option<Rational>,
    pub violations: Vec<Violation>,
}

impl SeriesReport {
    pub fn certified(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn max_tail_solution_count(&self) -> usize {
        self.terms.iter().filter(|t| t.n > self.n0).map(|t| t.solution_count).max().unwrap_or(0)
    }
}

pub fn series_partial_sums(xs: &TensorWord, ys: &TensorWord, n_max: usize, guard: &Guard) -> Result<SeriesReport> {
    guard.check(xs.rank(), n_max)?;
    let rank = xs.rank();
    let n0 = xs.max_len() + ys.max_len();
    let product_vanishes = !(xs.is_diagonal() && ys.is_diagonal());
    let compatible = entry_patterns_compatible(xs, ys);

    let terms = (0..=n_max).map(|n| series_term(xs, ys, n, guard)).collect::<Result<Vec<_>>>()?;

    let mut violations = Vec::new();
    let mut rows = Vec::with_capacity(terms.len());
    let mut partial = Rational::zero();
    for t in &terms {
        let next = &partial + &t.term;
        if next < partial {
            violations.push(Violation::PartialSumDecreased { n: t.n });
        }
        partial = next;
        rows.push(SeriesRow {
            n: t.n,
            term: t.term.clone(),
            solution_count: t.solution_count,
            partial_sum: partial.clone(),
        });
        if !t.formulas_agree() {
            violations.push(Violation::FormulaMismatch { n: t.n });
        }
        if t.solution_count != t.diagonal_count || (!compatible && t.diagonal_count > 0) {
            violations.push(Violation::CountMismatch { n: t.n });
        }
    }

    let tail_bounds: Vec<Option<Rational>> = (0..=n_max)
        .map(|n| (product_vanishes && n > n0).then(|| Rational::one() / (norm_sq_q(rank, n) * norm_sq_q(rank, n - n0))))
        .collect();

    let certified_total_bound = product_vanishes.then(|| {
        // Bounds for n > n₀ form a geometric series with ratio 1/(2N-1)².
        let q = Rational::from_integer((2 * rank.get() - 1).into());
        let ratio = Rational::one() / (&q * &q);
        let first = Rational::one() / (norm_sq_q(rank, n0 + 1) * norm_sq_q(rank, 1));
        let head = rows.get(n0).map(|r| r.partial_sum.clone()).unwrap_or_else(|| partial.clone());
        head + first / (Rational::one() - ratio)
    });

    if product_vanishes {
        let mut running_bound = rows.get(n0).map(|r| r.partial_sum.clone()).unwrap_or_default();
        for (t, row) in terms.iter().zip(&rows).filter(|(t, _)| t.n > n0) {
            let bound = tail_bounds[t.n].clone().expect("tail bound beyond n0");
            if t.solution_count > 1 {
                violations.push(Violation::MultipleSolutions { n: t.n, count: t.solution_count });
            }
            let c = Rational::from_integer(t.solution_count.max(1).into());
            if t.term > &c * &c * &bound {
                violations.push(Violation::TermAboveBound { n: t.n });
            }
            running_bound += bound;
            let total = certified_total_bound.as_ref().expect("set when product vanishes");
            if row.partial_sum > running_bound || row.partial_sum > *total {
                violations.push(Violation::PartialSumAboveBound { n: t.n });
            }
        }
    }

    Ok(SeriesReport {
        xs: xs.clone(),
        ys: ys.clone(),
        n0,
        product_vanishes,
        terms,
        rows,
        tail_bounds,
        certified_total_bound,
        violations,
    })
}
