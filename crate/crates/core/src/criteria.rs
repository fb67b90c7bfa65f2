//! Exact decision procedures for the inequalities behind nonnegative
//! linearization of a sequence and of its switch.
//!
//! Every inequality is evaluated as a margin `rhs - lhs` in exact arithmetic
//! and compared with zero, strictly or not, exactly as the inequality is
//! stated. Passing checks record their tightest margin, failing checks the
//! first failing index and its margin, so every verdict is replayable.
//!
//! Positive definiteness of the Młotkowski–Szwarc tridiagonal matrices is
//! decided by the pivot recursion `t_1 = D`, `t_{n+1} = D - A_n²/t_n`. The
//! diagonal `D = α_d` is constant and irrational in general, so the recursion
//! runs on `u_n = t_n / D`, which only needs `q_n = α_n² / α_d²`:
//! `u_1 = 1`, `u_{n+1} = 1 - q_n / u_n`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, rat, Rational};
use crate::sequence::{CoefficientSequence, SSequence, Variant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// margin > 0
    Strict,
    /// margin ≥ 0
    NonStrict,
}

impl Comparison {
    fn holds(self, margin: &Rational) -> bool {
        match self {
            Comparison::Strict => margin.is_positive(),
            Comparison::NonStrict => !margin.is_negative(),
        }
    }
}

/// One inequality checked over an index range.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    /// Inclusive index range; empty when `start > end`.
    pub n_range: (usize, usize),
    pub passed: bool,
    /// First failing index, or the index of the tightest margin on success.
    pub index: Option<usize>,
    #[serde(with = "crate::rational::serde_opt")]
    pub margin: Option<Rational>,
}

impl Check {
    /// Evaluate `margin(n)` for `n ∈ start..=end`, stopping at the first failure.
    pub fn evaluate<F>(label: impl Into<String>, cmp: Comparison, start: usize, end: usize, mut margin: F) -> Result<Self>
    where
        F: FnMut(usize) -> Result<Rational>,
    {
        let mut tightest: Option<(usize, Rational)> = None;
        for n in start..=end {
            let value = margin(n)?;
            if !cmp.holds(&value) {
                return Ok(Self {
                    label: label.into(),
                    n_range: (start, end),
                    passed: false,
                    index: Some(n),
                    margin: Some(value),
                });
            }
            if tightest.as_ref().is_none_or(|(_, best)| value < *best) {
                tightest = Some((n, value));
            }
        }
        let (index, margin) = tightest.unzip();
        Ok(Self { label: label.into(), n_range: (start, end), passed: true, index, margin })
    }

    /// Strict positivity of margins given as unreduced fractions with positive
    /// denominators; only the reported margin is reduced.
    pub fn evaluate_fraction<F>(label: impl Into<String>, start: usize, end: usize, mut margin: F) -> Result<Self>
    where
        F: FnMut(usize) -> Result<(BigInt, BigInt)>,
    {
        let mut tightest: Option<(usize, (BigInt, BigInt))> = None;
        for n in start..=end {
            let (num, den) = margin(n)?;
            if !num.is_positive() {
                return Ok(Self {
                    label: label.into(),
                    n_range: (start, end),
                    passed: false,
                    index: Some(n),
                    margin: Some(Rational::new(num, den)),
                });
            }
            let smaller = tightest.as_ref().is_none_or(|(_, (bn, bd))| &num * bd < bn * &den);
            if smaller {
                tightest = Some((n, (num, den)));
            }
        }
        let (index, margin) = tightest.map(|(n, (num, den))| (n, Rational::new(num, den))).unzip();
        Ok(Self { label: label.into(), n_range: (start, end), passed: true, index, margin })
    }

    pub fn single(label: impl Into<String>, cmp: Comparison, n: usize, margin: Rational) -> Self {
        Self {
            label: label.into(),
            n_range: (n, n),
            passed: cmp.holds(&margin),
            index: Some(n),
            margin: Some(margin),
        }
    }

    fn failed_precondition(label: impl Into<String>, index: usize, margin: Rational) -> Self {
        Self { label: label.into(), n_range: (index, index), passed: false, index: Some(index), margin: Some(margin) }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{verdict} {} n={}..={}", self.label, self.n_range.0, self.n_range.1)?;
        if let (Some(n), Some(m)) = (self.index, &self.margin) {
            write!(f, " (n={n}, margin {m})")?;
        }
        Ok(())
    }
}

/// Conjunction of checks.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CriterionReport {
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl CriterionReport {
    pub fn new(checks: Vec<Check>) -> Self {
        let overall = checks.iter().all(|c| c.passed);
        Self { checks, overall }
    }

    pub fn check(&self, label: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.label == label)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn extend(&mut self, other: CriterionReport) {
        self.checks.extend(other.checks);
        self.overall = self.checks.iter().all(|c| c.passed);
    }
}

pub const S_DOMAIN: &str = "s_n in (0,1)";
pub const S_FIRST_PAIR: &str = "s_2 < 1 - s_1/(1-s_1)";
pub const S_TAIL: &str = "s_n <= s_(n-2)/2 - 2s_(n-1)";

/// The sufficient criterion on `s_1, ..., s_N`: values in `(0,1)`,
/// `s_2 < 1 - s_1/(1-s_1)` and `s_n ≤ s_{n-2}/2 - 2 s_{n-1}` for `3 ≤ n ≤ N`.
///
/// If some `s_n` lies outside `(0,1)` the report contains only that failed check.
pub fn check_s_criterion(s: &SSequence, max_n: usize) -> Result<CriterionReport> {
    if max_n < 3 {
        return Err(Error::InvalidArgument(format!("criterion needs N >= 3, got {max_n}")));
    }
    let values: Vec<Rational> = (1..=max_n).map(|n| s.value(n)).collect::<Result<_>>()?;
    let at = |n: usize| &values[n - 1];
    let domain = Check::evaluate(S_DOMAIN, Comparison::Strict, 1, max_n, |n| {
        Ok(at(n).clone().min(int(1) - at(n)))
    })?;
    if !domain.passed {
        return Ok(CriterionReport::new(vec![domain]));
    }
    let one = int(1);
    let first_pair = &one - at(1) / (&one - at(1)) - at(2);
    let checks = vec![
        domain,
        Check::single(S_FIRST_PAIR, Comparison::Strict, 2, first_pair),
        Check::evaluate(S_TAIL, Comparison::NonStrict, 3, max_n, |n| {
            Ok(at(n - 2) / int(2) - int(2) * at(n - 1) - at(n))
        })?,
    ];
    Ok(CriterionReport::new(checks))
}

pub const S1_BELOW_HALF: &str = "s_1 < 1/2";
pub const S_EXPONENTIAL: &str = "s_n < s_1/4^(n-1)";
pub const S_DECREASING: &str = "s_(n+1) < s_n";
pub const S_THIRD_BOUND: &str = "s_3 < (s_1-s_2)/(1-s_2) - s_2/(1-s_2)^2";
pub const S_FOURTH_BOUND: &str = "s_4 < 1 - s_1 s_2/(1-s_3) - (1-s_2+s_2 s_3)/(1-s_3)^2";

/// Consequences of the criterion: `s_1 < 1/2`, `s_n < s_1/4^{n-1}` for
/// `2 ≤ n ≤ N`, strict decrease, and the two bounds on `s_3` and `s_4`.
pub fn check_lemma_bounds(s: &SSequence, max_n: usize) -> Result<CriterionReport> {
    if max_n < 4 {
        return Err(Error::InvalidArgument(format!("lemma bounds need N >= 4, got {max_n}")));
    }
    let values = s.prefix(max_n)?;
    let at = |n: usize| &values[n - 1];
    let one = int(1);
    let (s1, s2, s3, s4) = (at(1), at(2), at(3), at(4));
    let third = (s1 - s2) / (&one - s2) - s2 / ((&one - s2) * (&one - s2)) - s3;
    let fourth = &one - s1 * s2 / (&one - s3) - (&one - s2 + s2 * s3) / ((&one - s3) * (&one - s3)) - s4;
    let checks = vec![
        Check::single(S1_BELOW_HALF, Comparison::Strict, 1, rat(1, 2) - s1),
        Check::evaluate(S_EXPONENTIAL, Comparison::Strict, 2, max_n, |n| {
            Ok(s1 / crate::rational::pow(&int(4), (n - 1) as u32) - at(n))
        })?,
        Check::evaluate(S_DECREASING, Comparison::Strict, 1, max_n - 1, |n| Ok(at(n) - at(n + 1)))?,
        Check::single(S_THIRD_BOUND, Comparison::Strict, 3, third),
        Check::single(S_FOURTH_BOUND, Comparison::Strict, 4, fourth),
    ];
    Ok(CriterionReport::new(checks))
}

/// `c_n` from `s_n` by the chosen interleaving.
pub fn build_cn(s: &SSequence, variant: Variant) -> CoefficientSequence {
    CoefficientSequence::from_s(s.clone(), variant)
}

/// Size parity of the tridiagonal matrix: `2N` with diagonal `α_{2N}`, or
/// `2N+1` with diagonal `α_{2N+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MsVariant {
    Even,
    Odd,
}

/// Symmetric tridiagonal matrix with constant diagonal `α_d` and
/// off-diagonals `α_1, ..., α_{size-1}`, normalized by the diagonal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TridiagonalSpec {
    pub variant: MsVariant,
    pub n: usize,
    pub size: usize,
    /// Index `d` of the diagonal entry `α_d`.
    pub diag_index: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub diag_sq: Rational,
    /// `q_n = α_n² / α_d²` for `n = 1..size`.
    #[serde(with = "crate::rational::serde_vec")]
    pub normalized_offdiag_sq: Vec<Rational>,
}

pub fn ms_matrix(seq: &CoefficientSequence, variant: MsVariant, n: usize) -> Result<TridiagonalSpec> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix parameter N must be >= 1".into()));
    }
    let size = match variant {
        MsVariant::Even => 2 * n,
        MsVariant::Odd => 2 * n + 1,
    };
    let diag_sq = seq.alpha_sq(size)?;
    let normalized_offdiag_sq = (1..size).map(|k| Ok(seq.alpha_sq(k)? / &diag_sq)).collect::<Result<_>>()?;
    Ok(TridiagonalSpec { variant, n, size, diag_index: size, diag_sq, normalized_offdiag_sq })
}

/// Witness of positive definiteness: all `u_n > 0`.
///
/// Pivots are held fraction-free: with `q_n = r_n/t_n` in lowest terms the
/// scaled minors `E_0 = E_1 = 1`, `E_{n+1} = t_n E_n - r_n t_{n-1} E_{n-1}`
/// (`t_0 = 1`) are integers with `u_{n+1} = E_{n+1} / (t_n E_n)`, so large
/// matrices never pay for gcd reductions until a pivot is asked for.
#[derive(Clone, Debug, PartialEq)]
pub struct PdCertificate {
    /// `E_1, ..., E_size`.
    minors: Vec<BigInt>,
    /// `t_1, ..., t_{size-1}`.
    denominators: Vec<BigInt>,
}

impl PdCertificate {
    pub fn size(&self) -> usize {
        self.minors.len()
    }

    /// `u_n` as an unreduced fraction `(numerator, positive denominator)`, 1-based.
    pub fn u_fraction(&self, n: usize) -> (BigInt, BigInt) {
        if n == 1 {
            return (BigInt::one(), BigInt::one());
        }
        (self.minors[n - 1].clone(), &self.denominators[n - 2] * &self.minors[n - 2])
    }

    /// `u_n` in lowest terms, 1-based.
    pub fn u(&self, n: usize) -> Rational {
        let (num, den) = self.u_fraction(n);
        Rational::new(num, den)
    }

    /// `u_1, ..., u_size` in lowest terms.
    pub fn pivots(&self) -> Vec<Rational> {
        (1..=self.size()).map(|n| self.u(n)).collect()
    }
}

impl Serialize for PdCertificate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let u: Vec<String> = self.pivots().iter().map(format_rational).collect();
        let mut state = serializer.serialize_struct("PdCertificate", 1)?;
        state.serialize_field("u", &u)?;
        state.end()
    }
}

/// First index with `u_n ≤ 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PdFailure {
    pub index: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
}

/// Run the normalized pivot recursion on `q_1, ..., q_{size-1}`.
pub fn pd_check_normalized(q: &[Rational]) -> Result<PdCertificate, PdFailure> {
    let mut minors = Vec::with_capacity(q.len() + 1);
    minors.push(BigInt::one());
    let mut prev_minor = BigInt::one();
    let mut prev_den = BigInt::one();
    for (i, q_n) in q.iter().enumerate() {
        let (r, t) = (q_n.numer(), q_n.denom());
        let cur = &minors[i];
        let next = t * cur - r * &prev_den * &prev_minor;
        if !next.is_positive() {
            // u = next / (t E_n) with t E_n > 0.
            return Err(PdFailure { index: i + 2, value: Rational::new(next, t * cur) });
        }
        prev_minor = cur.clone();
        prev_den = t.clone();
        minors.push(next);
    }
    Ok(PdCertificate { minors, denominators: q.iter().map(|q_n| q_n.denom().clone()).collect() })
}

pub fn pd_check(spec: &TridiagonalSpec) -> Result<PdCertificate, PdFailure> {
    pd_check_normalized(&spec.normalized_offdiag_sq)
}

/// Which half of the proof's auxiliary bound to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProofVariant {
    /// `u_{2n+1} > α_{2N+1}² a_{2n}` on the odd matrix of the sequence, `n = 1..=N`.
    P,
    /// `ũ_{2n+2} > α̃_{2N}² c_{2n+1}` on the even matrix of the switch, `n = 1..=N-1`.
    PTilde,
}

pub const PD_PRECONDITION: &str = "precondition: pd_check";

/// `u - x` as an unreduced fraction, for a pivot `u` and a small rational `x`.
fn pivot_margin((num, den): (BigInt, BigInt), x: &Rational) -> (BigInt, BigInt) {
    (num * x.denom() - x.numer() * &den, den * x.denom())
}

/// Auxiliary lower bounds on the pivots for the first-variant sequence `seq`.
///
/// When the matrix is not positive definite the report carries a single
/// failed precondition check with the failing pivot index and value.
pub fn verify_proof_bounds(seq: &CoefficientSequence, variant: ProofVariant, n: usize) -> Result<CriterionReport> {
    let (matrix_seq, ms_variant) = match variant {
        ProofVariant::P => (seq.clone(), MsVariant::Odd),
        ProofVariant::PTilde => (seq.switch(), MsVariant::Even),
    };
    let spec = ms_matrix(&matrix_seq, ms_variant, n)?;
    let cert = match pd_check(&spec) {
        Ok(cert) => cert,
        Err(fail) => {
            return Ok(CriterionReport::new(vec![Check::failed_precondition(PD_PRECONDITION, fail.index, fail.value)]))
        }
    };
    let check = match variant {
        ProofVariant::P => Check::evaluate_fraction(format!("u_(2n+1) > alpha_(2N+1)^2 a_(2n) [N={n}]"), 1, n, |k| {
            Ok(pivot_margin(cert.u_fraction(2 * k + 1), &(&spec.diag_sq * seq.a(2 * k)?)))
        })?,
        ProofVariant::PTilde => {
            Check::evaluate_fraction(format!("u~_(2n+2) > alpha~_(2N)^2 c_(2n+1) [N={n}]"), 1, n - 1, |k| {
                Ok(pivot_margin(cert.u_fraction(2 * k + 2), &(&spec.diag_sq * seq.c(2 * k + 1)?)))
            })?
        }
    };
    Ok(CriterionReport::new(vec![check]))
}

/// Exact verification of the four pivot-induction inequalities for every
/// matrix parameter `N' ∈ 2..=N`, plus strict increase of `α_{2n-1}²`
/// (`n = 1..=N+1`) and `α̃_{2n}²` (`n = 1..=N`), for the first-variant `seq`.
pub fn check_lemma3(seq: &CoefficientSequence, max_n: usize) -> Result<CriterionReport> {
    if max_n < 2 {
        return Err(Error::InvalidArgument(format!("lemma checks need N >= 2, got {max_n}")));
    }
    let sw = seq.switch();
    let al = |k: usize| seq.alpha_sq(k);
    let at = |k: usize| sw.alpha_sq(k);
    let one = int(1);
    let mut checks = vec![
        Check::evaluate("alpha_(2n+1)^2 > alpha_(2n-1)^2", Comparison::Strict, 1, max_n, |k| {
            Ok(al(2 * k + 1)? - al(2 * k - 1)?)
        })?,
        Check::evaluate("alpha~_(2n+2)^2 > alpha~_(2n)^2", Comparison::Strict, 1, max_n - 1, |k| {
            Ok(at(2 * k + 2)? - at(2 * k)?)
        })?,
    ];
    for big_n in 2..=max_n {
        let d = al(2 * big_n + 1)?;
        let d2 = &d * &d;
        checks.push(Check::evaluate(format!("P-step bound [N={big_n}]"), Comparison::Strict, 1, big_n - 1, |k| {
            let a2k = seq.a(2 * k)?;
            let a2k2 = seq.a(2 * k + 2)?;
            let rhs = &d * &a2k * (&d - &d2 * &a2k2 - al(2 * k + 2)?);
            Ok(rhs - (&one - &d * &a2k2) * al(2 * k + 1)?)
        })?);
        checks.push(Check::evaluate(format!("P-step positivity [N={big_n}]"), Comparison::Strict, 1, big_n - 1, |k| {
            Ok(&d2 * seq.a(2 * k)? - al(2 * k + 1)?)
        })?);
        let e = at(2 * big_n)?;
        let e2 = &e * &e;
        checks.push(Check::evaluate(format!("Q-step bound [N={big_n}]"), Comparison::Strict, 1, big_n - 2, |k| {
            let c1 = seq.c(2 * k + 1)?;
            let c3 = seq.c(2 * k + 3)?;
            let rhs = &e * &c1 * (&e - &e2 * &c3 - at(2 * k + 3)?);
            Ok(rhs - (&one - &e * &c3) * at(2 * k + 2)?)
        })?);
        checks.push(Check::evaluate(format!("Q-step positivity [N={big_n}]"), Comparison::Strict, 1, big_n - 2, |k| {
            Ok(&e2 * seq.c(2 * k + 1)? - at(2 * k + 2)?)
        })?);
    }
    Ok(CriterionReport::new(checks))
}

/// Outcome of the alternation test on `c_1, ..., c_N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "pattern", rename_all = "kebab-case")]
pub enum NecessaryVerdict {
    /// `c_n = 1/2` for all `n ≤ N`.
    ChebyshevConsistent { up_to: usize },
    /// `c_{2n+1} > c_1 > 1/2` and `c_{2n} < 1/2` for all indices `≤ N`.
    AlternatingHighLow { up_to: usize },
    /// `c_{2n+1} < c_1 < 1/2` and `c_{2n} > 1/2` for all indices `≤ N`.
    AlternatingLowHigh { up_to: usize },
    Violated {
        index: usize,
        #[serde(with = "crate::rational::serde_str")]
        value: Rational,
    },
}

impl NecessaryVerdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, NecessaryVerdict::Violated { .. })
    }
}

/// Classify `c_1, ..., c_N` against the alternation pattern any non-Chebyshev
/// sequence must follow when it and its switch both linearize nonnegatively.
/// Only the finite prefix is inspected.
pub fn necessary_condition(seq: &CoefficientSequence, max_n: usize) -> Result<NecessaryVerdict> {
    if max_n < 2 {
        return Err(Error::InvalidArgument(format!("necessary condition needs N >= 2, got {max_n}")));
    }
    let half = rat(1, 2);
    let c1 = seq.c(1)?;
    let ok: Box<dyn Fn(usize, &Rational) -> bool> = if c1 == half {
        Box::new(|_, c| *c == half)
    } else if c1 > half {
        Box::new(|n, c| if n % 2 == 1 { *c > c1 } else { *c < half })
    } else {
        Box::new(|n, c| if n % 2 == 1 { *c < c1 } else { *c > half })
    };
    for n in 2..=max_n {
        let c = seq.c(n)?;
        if !ok(n, &c) {
            return Ok(NecessaryVerdict::Violated { index: n, value: c });
        }
    }
    Ok(if c1 == half {
        NecessaryVerdict::ChebyshevConsistent { up_to: max_n }
    } else if c1 > half {
        NecessaryVerdict::AlternatingHighLow { up_to: max_n }
    } else {
        NecessaryVerdict::AlternatingLowHigh { up_to: max_n }
    })
}

/// `true` iff the determinant continuant of the normalized matrix
/// (`d_0 = 1`, `d_1 = 1`, `d_{n+1} = d_n - q_n d_{n-1}`) stays positive,
/// i.e. every leading principal minor is positive.
pub fn leading_minors_positive(q: &[Rational]) -> bool {
    let (mut prev, mut cur) = (int(1), int(1));
    for q_n in q {
        let next = &cur - q_n * &prev;
        if !next.is_positive() {
            return false;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    !cur.is_zero()
}
