//! Solutions of `x·a = b·x` (no cancellation at either junction) and
//! `xa = bx` (free reduction allowed) of a prescribed length.
//!
//! [`solve_structural`] builds the forced candidate for every admissible
//! cancellation split and keeps the ones that survive substitution;
//! [`solve_brute`] scans the whole sphere and is the oracle for it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{cancellation_count, guarded_words, Guard, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    NoCancel,
    General,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::NoCancel => "no-cancel",
            Mode::General => "general",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "no-cancel" => Ok(Mode::NoCancel),
            "general" => Ok(Mode::General),
            _ => Err(Error::Parse(format!("unknown mode {:?} (expected no-cancel or general)", s))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Structural,
    BruteForce,
}

/// Whether uniqueness of a solution is claimed at this length:
/// always in no-cancellation mode, and for `l > |a| + |b|` in general mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    GuaranteedUnique,
    Unconstrained,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::GuaranteedUnique => "guaranteed-unique",
            Regime::Unconstrained => "unconstrained",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyProblem {
    a: Word,
    b: Word,
    len: usize,
    mode: Mode,
}

impl ConjugacyProblem {
    pub fn new(a: Word, b: Word, len: usize, mode: Mode) -> Result<ConjugacyProblem> {
        if a.rank() != b.rank() {
            return Err(Error::RankMismatch { left: a.rank().get(), right: b.rank().get() });
        }
        if a.is_identity() || b.is_identity() {
            return Err(Error::Precondition("a and b must be nontrivial".into()));
        }
        if len == 0 {
            return Err(Error::Precondition("solution length must be at least 1".into()));
        }
        Ok(ConjugacyProblem { a, b, len, mode })
    }

    pub fn a(&self) -> &Word {
        &self.a
    }

    pub fn b(&self) -> &Word {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn regime(&self) -> Regime {
        match self.mode {
            Mode::NoCancel => Regime::GuaranteedUnique,
            Mode::General if self.len > self.a.len() + self.b.len() => Regime::GuaranteedUnique,
            Mode::General => Regime::Unconstrained,
        }
    }

    /// Substitution check of a candidate.
    pub fn is_solution(&self, x: &Word) -> bool {
        if x.len() != self.len || x.rank() != self.a.rank() {
            return false;
        }
        let (x, a, b) = (x.letters(), self.a.letters(), self.b.letters());
        match self.mode {
            Mode::NoCancel => {
                let junctions_ok = !x[x.len() - 1].cancels(a[0]) && !b[b.len() - 1].cancels(x[0]);
                junctions_ok && x.iter().chain(a).eq(b.iter().chain(x))
            }
            Mode::General => {
                let i = cancellation_count(x, a);
                let j = cancellation_count(b, x);
                let lhs = x[..x.len() - i].iter().chain(&a[i..]);
                let rhs = b[..b.len() - j].iter().chain(&x[j..]);
                x.len() + a.len() - 2 * i == x.len() + b.len() - 2 * j && lhs.eq(rhs)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionReport {
    pub solutions: Vec<Word>,
    pub method: Method,
    pub regime: Regime,
}

impl SolutionReport {
    pub fn count(&self) -> usize {
        self.solutions.len()
    }
}

/// The unique string `x` of length `len` with `x a = b x` as letter strings,
/// if one exists.
///
/// Requires `|a| = |b|`. Writing `x = b^m x₁` with `|x₁| < |b|`, the tail must
/// satisfy `a = a₁ x₁` and `b = x₁ a₁`, so `x₁` is the length-`|x₁|` prefix
/// of `b`.
fn periodic_candidate(a: &[Letter], b: &[Letter], len: usize) -> Option<Vec<Letter>> {
    if a.len() != b.len() || b.is_empty() {
        return None;
    }
    let mut peeled = 0;
    let mut rest = len;
    while rest >= b.len() {
        rest -= b.len();
        peeled += 1;
    }
    let (tail, a1) = b.split_at(rest);
    if !a.iter().eq(a1.iter().chain(tail)) {
        return None;
    }
    let mut x = Vec::with_capacity(len);
    for _ in 0..peeled {
        x.extend_from_slice(b);
    }
    x.extend_from_slice(tail);
    Some(x)
}

fn inverse_letters(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Candidate for the cancellation split `a = a₁·a₂`, `b = b₂·b₁`,
/// `x = b₁⁻¹·x₁·a₁⁻¹`, which turns `xa = bx` into the cancellation-free
/// `b₁⁻¹ x₁ a₂ = b₂ x₁ a₁⁻¹`.
fn split_candidate(p: &ConjugacyProblem, a1_len: usize, b1_len: usize) -> Option<Vec<Letter>> {
    let (a, b) = (p.a.letters(), p.b.letters());
    let (a1, a2) = a.split_at(a1_len);
    let (b2, b1) = b.split_at(b.len() - b1_len);
    let left = inverse_letters(b1);
    let right = inverse_letters(a1);
    let core_len = p.len - a1_len - b1_len;

    // left x₁ a₂ = b₂ x₁ right; strip the common outer parts down to x₁ d = c x₁.
    let (c, d): (&[Letter], &[Letter]) = if left.len() <= b2.len() {
        if !b2.starts_with(&left) || !a2.ends_with(&right) {
            return None;
        }
        (&b2[left.len()..], &a2[..a2.len() - right.len()])
    } else {
        if !left.starts_with(b2) || !right.ends_with(a2) {
            return None;
        }
        (&left[b2.len()..], &right[..right.len() - a2.len()])
    };
    let core = periodic_candidate(d, c, core_len)?;
    let mut x = left.clone();
    x.extend(core);
    x.extend(right);
    Some(x)
}

/// Letters of `a` and `b` absorbed by a solution `x` of `xa = bx`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// `|a₁|`: prefix of `a` cancelled against the end of `x`.
    pub a1_len: usize,
    /// `|b₁|`: suffix of `b` cancelled against the start of `x`.
    pub b1_len: usize,
    pub a_len: usize,
    pub b_len: usize,
}

impl Decomposition {
    pub fn of(a: &Word, b: &Word, x: &Word) -> Decomposition {
        Decomposition {
            a1_len: cancellation_count(x.letters(), a.letters()),
            b1_len: cancellation_count(b.letters(), x.letters()),
            a_len: a.len(),
            b_len: b.len(),
        }
    }

    /// `|a₁| - |a₂| = |b₁| - |b₂|`.
    pub fn is_balanced(&self) -> bool {
        2 * self.a1_len as isize - self.a_len as isize == 2 * self.b1_len as isize - self.b_len as isize
    }

    pub fn cancels(&self) -> bool {
        self.a1_len > 0 || self.b1_len > 0
    }
}

pub fn solve_structural(p: &ConjugacyProblem, guard: &Guard) -> Result<SolutionReport> {
    let rank = p.a.rank();
    let regime = p.regime();
    if p.mode == Mode::General && regime == Regime::Unconstrained {
        let mut report = solve_brute(p, guard)?;
        report.regime = regime;
        return Ok(report);
    }
    let candidates: Vec<Vec<Letter>> = match p.mode {
        Mode::NoCancel => periodic_candidate(p.a.letters(), p.b.letters(), p.len).into_iter().collect(),
        Mode::General => {
            let mut out = Vec::new();
            for a1_len in 0..=p.a.len() {
                for b1_len in 0..=p.b.len() {
                    let d = Decomposition { a1_len, b1_len, a_len: p.a.len(), b_len: p.b.len() };
                    if d.is_balanced() {
                        out.extend(split_candidate(p, a1_len, b1_len));
                    }
                }
            }
            out
        }
    };
    let mut solutions = BTreeSet::new();
    for letters in candidates {
        let x = Word::reduce(rank, letters)?;
        if p.is_solution(&x) {
            solutions.insert(x);
        }
    }
    Ok(SolutionReport { solutions: solutions.into_iter().collect(), method: Method::Structural, regime })
}

pub fn solve_brute(p: &ConjugacyProblem, guard: &Guard) -> Result<SolutionReport> {
    let words = guarded_words(p.a.rank(), p.len, guard)?;
    Ok(solve_brute_over(p, &words))
}

/// Brute force over a precomputed sphere of radius `p.len()`.
pub fn solve_brute_over(p: &ConjugacyProblem, sphere: &[Word]) -> SolutionReport {
    let solutions = sphere.iter().filter(|x| p.is_solution(x)).cloned().collect();
    SolutionReport { solutions, method: Method::BruteForce, regime: p.regime() }
}

/// Exact number of solutions for each `l` in `1..=l_max`, by brute force.
pub fn count_solutions_per_length(a: &Word, b: &Word, l_max: usize, mode: Mode, guard: &Guard) -> Result<Vec<usize>> {
    guard.check(a.rank(), l_max)?;
    (1..=l_max)
        .map(|l| {
            let p = ConjugacyProblem::new(a.clone(), b.clone(), l, mode)?;
            Ok(solve_brute(&p, guard)?.count())
        })
        .collect()
}

/// CLI-facing report: `{ a, b, l, mode, solutions, regime }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyJson {
    pub a: String,
    pub b: String,
    pub l: usize,
    pub mode: Mode,
    pub solutions: Vec<String>,
    pub regime: Regime,
}

impl ConjugacyJson {
    pub fn new(p: &ConjugacyProblem, report: &SolutionReport) -> ConjugacyJson {
        ConjugacyJson {
            a: p.a.to_string(),
            b: p.b.to_string(),
            l: p.len,
            mode: p.mode,
            solutions: report.solutions.iter().map(Word::to_string).collect(),
            regime: report.regime,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Rank;

    fn w(s: &str) -> Word {
        Word::parse(Rank::new(2).unwrap(), s).unwrap()
    }

    fn problem(a: &str, b: &str, l: usize, mode: Mode) -> ConjugacyProblem {
        ConjugacyProblem::new(w(a), w(b), l, mode).unwrap()
    }

    #[test]
    fn short_solution_is_a_suffix_of_a() {
        // brute force over the 4 words of length 1 finds only g1
        let p = problem("2,1", "1,2", 1, Mode::NoCancel);
        let g = Guard::default();
        assert_eq!(solve_structural(&p, &g).unwrap().solutions, vec![w("1")]);
        assert_eq!(solve_brute(&p, &g).unwrap().solutions, vec![w("1")]);
    }

    #[test]
    fn powers_of_a_commute() {
        let p = problem("1", "1", 3, Mode::NoCancel);
        assert_eq!(solve_structural(&p, &Guard::default()).unwrap().solutions, vec![w("1,1,1")]);
    }

    #[test]
    fn unrelated_generators_have_no_solution() {
        let p = problem("1", "2", 5, Mode::NoCancel);
        let g = Guard::default();
        assert!(solve_structural(&p, &g).unwrap().solutions.is_empty());
        assert!(solve_brute(&p, &g).unwrap().solutions.is_empty());
    }

    #[test]
    fn general_mode_power_of_a() {
        let p = problem("1,2", "1,2", 4, Mode::General);
        let sols = solve_brute(&p, &Guard::default()).unwrap().solutions;
        assert!(sols.contains(&w("1,2,1,2")));
        assert_eq!(p.regime(), Regime::Unconstrained);
    }

    #[test]
    fn general_mode_has_two_solutions_for_equal_generators() {
        // x g1 = g1 x is solved by both g1^l and g1^-l
        let g = Guard::default();
        for l in 3..=6 {
            let p = problem("1", "1", l, Mode::General);
            assert_eq!(p.regime(), Regime::GuaranteedUnique);
            let brute = solve_brute(&p, &g).unwrap();
            assert_eq!(brute.solutions, vec![w("1").pow(l), w("-1").pow(l)]);
            assert_eq!(solve_structural(&p, &g).unwrap().solutions, brute.solutions);
        }
    }

    #[test]
    fn crafted_instance_verified_by_substitution() {
        // x = g2 g1 g2: x a = g2 g1 g2 · g1⁻¹ g2 and b x with b = x a x⁻¹
        let x = w("2,1,2");
        let a = w("-1,2");
        let b = x.concat(&a).unwrap().concat(&x.inverse()).unwrap();
        let p = ConjugacyProblem::new(a.clone(), b.clone(), 3, Mode::General).unwrap();
        let g = Guard::default();
        let s = solve_structural(&p, &g).unwrap();
        assert!(s.solutions.contains(&x));
        assert_eq!(s.solutions, solve_brute(&p, &g).unwrap().solutions);
        for sol in &s.solutions {
            assert_eq!(sol.concat(&a).unwrap(), b.concat(sol).unwrap());
        }
    }

    #[test]
    fn counts_per_length() {
        let g = Guard::default();
        assert_eq!(count_solutions_per_length(&w("1"), &w("1"), 5, Mode::NoCancel, &g).unwrap(), vec![1; 5]);
        assert_eq!(count_solutions_per_length(&w("1"), &w("2"), 5, Mode::NoCancel, &g).unwrap(), vec![0; 5]);
        assert_eq!(count_solutions_per_length(&w("1"), &w("2"), 5, Mode::General, &g).unwrap(), vec![0; 5]);
    }

    #[test]
    fn problem_validation() {
        assert!(ConjugacyProblem::new(w(""), w("1"), 1, Mode::General).is_err());
        assert!(ConjugacyProblem::new(w("1"), w("1"), 0, Mode::General).is_err());
        assert!("sideways".parse::<Mode>().is_err());
        assert_eq!("no-cancel".parse::<Mode>().unwrap(), Mode::NoCancel);
    }

    #[test]
    fn json_report_shape() {
        let p = problem("2,1", "1,2", 1, Mode::NoCancel);
        let r = solve_structural(&p, &Guard::default()).unwrap();
        let s = serde_json::to_string(&ConjugacyJson::new(&p, &r)).unwrap();
        assert_eq!(
            s,
            r#"{"a":"2,1","b":"1,2","l":1,"mode":"no-cancel","solutions":["1"],"regime":"guaranteed-unique"}"#
        );
    }
}
