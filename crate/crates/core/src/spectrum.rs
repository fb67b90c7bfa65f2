//! Floating-point and exact diagnostics of the orthogonality measure.
//!
//! Eigenvalues of truncated Jacobi matrices are the only floating-point
//! quantities in the crate. The thresholds used with them (symmetry 1e-10,
//! range 1e-8, compactness 1e-6) are diagnostics: a finite truncation cannot
//! prove anything about the support of the measure.

use std::io::Write;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{int, to_f64, Rational};
use crate::sequence::{CoefficientSequence, HaarValues};

/// Absolute tolerance of every eigenvalue returned by [`jacobi_eigenvalues`].
pub const EIGENVALUE_TOLERANCE: f64 = 1e-12;

/// Default threshold below which a compactness column counts as vanished.
pub const COMPACTNESS_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub size: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `max |λ_i + λ_{N+1-i}|`.
    pub symmetry_defect: f64,
    /// `max(0, max |λ| - 1)`.
    pub range_defect: f64,
    /// `1 - max λ`.
    pub top_gap: f64,
}

impl SpectrumReport {
    fn from_eigenvalues(eigenvalues: Vec<f64>) -> Self {
        let size = eigenvalues.len();
        let symmetry_defect = (0..size)
            .map(|i| (eigenvalues[i] + eigenvalues[size - 1 - i]).abs())
            .fold(0.0, f64::max);
        let extent = eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max);
        let top = eigenvalues.last().copied().unwrap_or(0.0);
        Self { size, eigenvalues, symmetry_defect, range_defect: (extent - 1.0).max(0.0), top_gap: 1.0 - top }
    }

    /// One eigenvalue per line, 17 significant digits.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(writer);
        out.write_record(["i", "eigenvalue"])?;
        for (i, value) in self.eigenvalues.iter().enumerate() {
            out.write_record([(i + 1).to_string(), format!("{value:.16e}")])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn histogram(&self, bins: usize) -> Histogram {
        Histogram::new(&self.eigenvalues, bins)
    }
}

/// Equal-width bins over `[min(-1, λ_min), max(1, λ_max)]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn new(values: &[f64], bins: usize) -> Self {
        let bins = bins.max(1);
        let lo = values.iter().copied().fold(-1.0, f64::min);
        let hi = values.iter().copied().fold(1.0, f64::max);
        let width = (hi - lo) / bins as f64;
        let edges = (0..=bins).map(|i| lo + width * i as f64).collect();
        let mut counts = vec![0; bins];
        for value in values {
            let bin = (((value - lo) / width) as usize).min(bins - 1);
            counts[bin] += 1;
        }
        Self { edges, counts }
    }

    /// `lo hi count` per line.
    pub fn to_text(&self) -> String {
        let mut text = String::new();
        for (i, count) in self.counts.iter().enumerate() {
            text.push_str(&format!("{:.6} {:.6} {count}\n", self.edges[i], self.edges[i + 1]));
        }
        text
    }
}

/// Number of eigenvalues below `x` of the zero-diagonal tridiagonal matrix
/// with squared off-diagonals `b_sq`, by the Sturm sign count of the pivots.
fn count_below(b_sq: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = -x;
    for i in 0..=b_sq.len() {
        if i > 0 {
            d = -x - b_sq[i - 1] / d;
        }
        if d == 0.0 {
            d = -f64::MIN_POSITIVE;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalues of the `N×N` truncated Jacobi matrix with zero diagonal and
/// off-diagonals `√(α_n²)`, `n = 1..N`, by bisection on the Sturm count.
pub fn jacobi_eigenvalues(seq: &CoefficientSequence, size: usize) -> Result<SpectrumReport> {
    if size < 2 {
        return Err(Error::InvalidArgument(format!("truncation size must be >= 2, got {size}")));
    }
    let b_sq: Vec<f64> = (1..size).map(|n| seq.alpha_sq(n).map(|a| to_f64(&a))).collect::<Result<_>>()?;
    Ok(SpectrumReport::from_eigenvalues(tridiagonal_eigenvalues(&b_sq)))
}

/// Eigenvalues, ascending, of the zero-diagonal symmetric tridiagonal matrix
/// whose squared off-diagonals are `b_sq`.
pub fn tridiagonal_eigenvalues(b_sq: &[f64]) -> Vec<f64> {
    let size = b_sq.len() + 1;
    let b: Vec<f64> = b_sq.iter().map(|v| v.sqrt()).collect();
    // Gershgorin bound.
    let radius = (0..size)
        .map(|i| {
            let left = if i > 0 { b[i - 1] } else { 0.0 };
            let right = if i < b.len() { b[i] } else { 0.0 };
            left + right
        })
        .fold(0.0, f64::max)
        + EIGENVALUE_TOLERANCE;
    let mut eigenvalues = Vec::with_capacity(size);
    for k in 0..size {
        // The k-th eigenvalue (0-based) is the point where the count passes k.
        let (mut lo, mut hi) = (-radius, radius);
        while hi - lo > EIGENVALUE_TOLERANCE / 2.0 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if count_below(b_sq, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        eigenvalues.push(0.5 * (lo + hi));
    }
    eigenvalues
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompactnessRow {
    pub m: usize,
    /// `a_{m+1} a_m`.
    #[serde(with = "crate::rational::serde_str")]
    pub upper: Rational,
    /// `c_m c_{m-1}`.
    #[serde(with = "crate::rational::serde_str")]
    pub lower: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompactnessProfile {
    pub rows: Vec<CompactnessRow>,
    pub threshold: f64,
    /// Both columns at the last row are below the threshold.
    pub vanishing: bool,
    /// Smallest `m` from which both columns stay below the threshold up to `N`.
    pub tail_from: Option<usize>,
}

pub fn compactness_profile(seq: &CoefficientSequence, size: usize) -> Result<CompactnessProfile> {
    compactness_profile_with_threshold(seq, size, COMPACTNESS_THRESHOLD)
}

/// The products `a_{m+1} a_m` and `c_m c_{m-1}` for `m = 2..=N`; both tend to
/// zero exactly when the square of the truncated operator differs from the
/// identity by a compact operator.
pub fn compactness_profile_with_threshold(
    seq: &CoefficientSequence,
    size: usize,
    threshold: f64,
) -> Result<CompactnessProfile> {
    if size < 2 {
        return Err(Error::InvalidArgument(format!("compactness profile needs N >= 2, got {size}")));
    }
    let rows: Vec<CompactnessRow> = (2..=size)
        .map(|m| {
            Ok(CompactnessRow {
                m,
                upper: seq.a(m + 1)? * seq.a(m)?,
                lower: seq.c(m)? * seq.c(m - 1)?,
            })
        })
        .collect::<Result<_>>()?;
    let below = |row: &CompactnessRow| to_f64(&row.upper) < threshold && to_f64(&row.lower) < threshold;
    let vanishing = rows.last().is_some_and(below);
    let tail_from = if vanishing {
        let start = rows.iter().rposition(|row| !below(row)).map_or(0, |i| i + 1);
        Some(rows[start].m)
    } else {
        None
    };
    Ok(CompactnessProfile { rows, threshold, vanishing, tail_from })
}

/// Recurrence coefficients of the quadratic transform `R_n`, defined by
/// `R_n(z) = P_{2n}(x)` for `z = (x² - c_1)/a_1`:
/// `z R_n = aR R_{n+1} + bR R_n + cR R_{n-1}`, normalized so `R_n(1) = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadraticTransformRow {
    pub n: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub b: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub c: Rational,
}

impl QuadraticTransformRow {
    pub fn sum(&self) -> Rational {
        &self.a + &self.b + &self.c
    }

    pub fn is_normalized(&self) -> bool {
        self.sum().is_one()
    }
}

pub fn quadratic_transform(seq: &CoefficientSequence, n: usize) -> Result<QuadraticTransformRow> {
    if n == 0 {
        return Err(Error::IndexOutOfRange { quantity: "quadratic transform", index: 0 });
    }
    let a1 = seq.a(1)?;
    let (a2n, c2n) = (seq.a(2 * n)?, seq.c(2 * n)?);
    let a = &a2n * seq.a(2 * n + 1)? / &a1;
    let b = (&a2n * seq.c(2 * n + 1)? + &c2n * seq.a(2 * n - 1)? - seq.c(1)?) / &a1;
    let c = &c2n * seq.c(2 * n - 1)? / &a1;
    Ok(QuadraticTransformRow { n, a, b, c })
}

/// `R_n(z)` from the transformed recurrence, `R_0 = 1`, `R_1(z) = z`.
pub fn eval_quadratic(seq: &CoefficientSequence, n: usize, z: &Rational) -> Result<Rational> {
    let mut prev = int(1);
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = z.clone();
    for k in 1..n {
        let row = quadratic_transform(seq, k)?;
        let next = ((z - &row.b) * &cur - &row.c * &prev) / &row.a;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotonicity {
    Nonincreasing,
    Nondecreasing,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualVerdict {
    /// Every factor `c_{2k-1}/a_{2k-1}` inspected is at most 1.
    CertifiedBounded,
    /// Every partial product up to `N` is at most 1, some factor exceeds 1.
    BoundedUpTo,
    /// Some partial product exceeds 1.
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualMembershipReport {
    pub n: usize,
    /// `|P_{2k}(0)| = ∏_{j=1}^{k} c_{2j-1}/a_{2j-1}` for `k = 1..=N`.
    #[serde(with = "crate::rational::serde_vec")]
    pub products: Vec<Rational>,
    /// `sup_{0 ≤ k ≤ N} |P_{2k}(0)|`.
    #[serde(with = "crate::rational::serde_str")]
    pub sup: Rational,
    pub monotonicity: Monotonicity,
    pub factors_at_most_one: bool,
    /// First `k` with a partial product above 1.
    pub first_exceeding: Option<usize>,
    pub verdict: DualVerdict,
}

/// Whether `sup_n |P_n(0)| ≤ 1`, decided from the even-index values
/// (odd-index polynomials vanish at 0).
pub fn dual_membership_zero(seq: &CoefficientSequence, n: usize) -> Result<DualMembershipReport> {
    let mut products = Vec::with_capacity(n);
    let mut factors_at_most_one = true;
    let mut product = int(1);
    for k in 1..=n {
        let factor = seq.c(2 * k - 1)? / seq.a(2 * k - 1)?;
        factors_at_most_one &= factor <= int(1);
        product *= factor;
        products.push(product.clone());
    }
    let sup = products.iter().fold(int(1), |best, p| if *p > best { p.clone() } else { best });
    let mut increases = false;
    let mut decreases = false;
    let mut last = int(1);
    for p in &products {
        increases |= *p > last;
        decreases |= *p < last;
        last = p.clone();
    }
    let monotonicity = match (increases, decreases) {
        (false, _) => Monotonicity::Nonincreasing,
        (true, false) => Monotonicity::Nondecreasing,
        (true, true) => Monotonicity::Mixed,
    };
    let first_exceeding = products.iter().position(|p| *p > int(1)).map(|i| i + 1);
    let verdict = if factors_at_most_one {
        DualVerdict::CertifiedBounded
    } else if first_exceeding.is_none() {
        DualVerdict::BoundedUpTo
    } else {
        DualVerdict::Unbounded
    };
    Ok(DualMembershipReport { n, products, sup, monotonicity, factors_at_most_one, first_exceeding, verdict })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HaarPattern {
    Nondecreasing,
    /// `h(2n) < h(2n-1)` for every `2n ≤ N`.
    EvenDrop,
    /// `h(2n+1) < h(2n)` for every `2n+1 ≤ N`.
    OddDrop,
    Irregular,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HaarProfile {
    #[serde(with = "crate::rational::serde_vec")]
    pub values: Vec<Rational>,
    /// Indices `n ≥ 1` with `h(n) < h(n-1)`.
    pub decreases: Vec<usize>,
    pub pattern: HaarPattern,
}

pub fn haar_profile(seq: &CoefficientSequence, n: usize) -> Result<HaarProfile> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Haar profile needs N >= 2, got {n}")));
    }
    let values: HaarValues = seq.haar_values(n)?;
    let h = values.as_slice();
    let drops = |k: usize| h[k] < h[k - 1];
    let decreases: Vec<usize> = (1..=n).filter(|&k| drops(k)).collect();
    let pattern = if decreases.is_empty() {
        HaarPattern::Nondecreasing
    } else if (2..=n).step_by(2).all(drops) {
        HaarPattern::EvenDrop
    } else if (3..=n).step_by(2).all(drops) {
        HaarPattern::OddDrop
    } else {
        HaarPattern::Irregular
    };
    Ok(HaarProfile { values: h.to_vec(), decreases, pattern })
}

/// Check `R_n((x² - c_1)/a_1) = P_{2n}(x)` at the given points; returns the
/// first `(n, x)` where it fails.
pub fn quadratic_mismatch(seq: &CoefficientSequence, max_n: usize, points: &[Rational]) -> Result<Option<(usize, Rational)>> {
    for n in 0..=max_n {
        for x in points {
            let z = (x * x - seq.c(1)?) / seq.a(1)?;
            let lhs = eval_quadratic(seq, n, &z)?;
            if lhs != seq.eval_p(2 * n, x)? {
                return Ok(Some((n, x.clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{geometric_family, standard_s, StandardS};
    use crate::rational::rat;
    use crate::sequence::Variant;
    use proptest::prelude::*;

    fn power5(variant: Variant) -> CoefficientSequence {
        CoefficientSequence::from_s(standard_s(StandardS::Power5), variant)
    }

    #[test]
    fn chebyshev_small_spectrum() {
        let report = jacobi_eigenvalues(&CoefficientSequence::chebyshev(), 3).unwrap();
        // α² = 1/2, 1/4: eigenvalues 0 and ±√3/2.
        let r = 3f64.sqrt() / 2.0;
        for (got, want) in report.eigenvalues.iter().zip([-r, 0.0, r]) {
            assert!((got - want).abs() < 1e-11, "{got} vs {want}");
        }
        assert!(report.symmetry_defect < 1e-11);
    }

    #[test]
    fn two_by_two_closed_form() {
        let seq = power5(Variant::First);
        let report = jacobi_eigenvalues(&seq, 2).unwrap();
        let r = to_f64(&seq.alpha_sq(1).unwrap()).sqrt();
        assert!((report.eigenvalues[0] + r).abs() < 1e-12);
        assert!((report.eigenvalues[1] - r).abs() < 1e-12);
        assert!(jacobi_eigenvalues(&seq, 1).is_err());
    }

    #[test]
    fn power5_spectrum_accumulates_at_one() {
        let seq = power5(Variant::First);
        let mut gaps = Vec::new();
        for size in [50, 100, 200] {
            let report = jacobi_eigenvalues(&seq, size).unwrap();
            assert!(report.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            assert!(report.symmetry_defect < 1e-10);
            assert!(report.range_defect < 1e-8);
            gaps.push(report.top_gap);
        }
        assert!(gaps[2] < 1e-3);
        assert!(gaps.windows(2).all(|w| w[1] <= w[0] + 1e-9));
    }

    #[test]
    fn bisection_matches_dense_matrix_characteristic_polynomial() {
        // Eigenvalues of a 4×4 zero-diagonal matrix: roots of
        // λ⁴ - (p+q+r)λ² + pr with p, q, r the squared off-diagonals.
        let (p, q, r) = (0.3, 0.5, 0.2);
        let eig = tridiagonal_eigenvalues(&[p, q, r]);
        let s = p + q + r;
        let disc = (s * s - 4.0 * p * r).sqrt();
        let big = ((s + disc) / 2.0).sqrt();
        let small = ((s - disc) / 2.0).sqrt();
        for (got, want) in eig.iter().zip([-big, -small, small, big]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_and_histogram() {
        let report = jacobi_eigenvalues(&CoefficientSequence::chebyshev(), 3).unwrap();
        let mut out = Vec::new();
        report.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("i,eigenvalue\n1,-8.6602540378"));
        assert_eq!(text.lines().count(), 4);
        let hist = report.histogram(4);
        assert_eq!(hist.counts, vec![1, 1, 0, 1]);
        assert_eq!(hist.edges.len(), 5);
        assert_eq!(hist.to_text().lines().count(), 4);
    }

    #[test]
    fn compactness_examples() {
        let cheb = compactness_profile(&CoefficientSequence::chebyshev(), 10).unwrap();
        assert!(cheb.rows.iter().all(|r| r.upper == rat(1, 4) && r.lower == rat(1, 4)));
        assert!(!cheb.vanishing);

        let p5 = compactness_profile(&power5(Variant::First), 10).unwrap();
        let row = p5.rows.iter().find(|r| r.m == 10).unwrap();
        // c_10 = s_10, c_9 = 1 - s_9.
        let s = |n: u32| rat(1, 5i64.pow(n));
        assert_eq!(row.lower, s(10) * (int(1) - s(9)));
        assert_eq!(row.upper, (int(1) - s(10)) * s(11));

        let fac = CoefficientSequence::from_s(standard_s(StandardS::Factorial), Variant::First);
        let profile = compactness_profile(&fac, 20).unwrap();
        assert!(profile.vanishing);
        assert_eq!(profile.tail_from, Some(8));
    }

    #[test]
    fn quadratic_transform_examples() {
        let seq = power5(Variant::First);
        let first = quadratic_transform(&seq, 1).unwrap();
        assert_eq!(first.b, rat(501, 625));
        for n in 1..=100 {
            let row = quadratic_transform(&seq, n).unwrap();
            assert!(row.is_normalized(), "n={n}");
            assert!(row.a > int(0) && row.c > int(0));
        }
        let far = quadratic_transform(&seq, 30).unwrap();
        assert!((to_f64(&far.b) - 1.0).abs() < 1e-6);
        assert!(quadratic_transform(&seq, 0).is_err());
    }

    #[test]
    fn quadratic_transform_reproduces_even_polynomials() {
        let points = [rat(1, 3), rat(-2, 7), rat(5, 4)];
        for seq in [power5(Variant::First), power5(Variant::Second), crate::families::ks_counterexample()] {
            assert_eq!(quadratic_mismatch(&seq, 8, &points).unwrap(), None);
        }
    }

    #[test]
    fn dual_membership_examples() {
        let cheb = dual_membership_zero(&CoefficientSequence::chebyshev(), 20).unwrap();
        assert!(cheb.products.iter().all(|p| *p == int(1)));
        assert_eq!(cheb.verdict, DualVerdict::CertifiedBounded);

        let (_, geo) = geometric_family(&rat(1, 3), 5).unwrap();
        let report = dual_membership_zero(&geo, 20).unwrap();
        assert_eq!(report.verdict, DualVerdict::CertifiedBounded);
        assert_eq!(report.monotonicity, Monotonicity::Nonincreasing);
        for (k, p) in report.products.iter().enumerate() {
            assert_eq!(*p, geo.p_at_zero_abs(2 * k + 2).unwrap());
        }

        let sw = dual_membership_zero(&geo.switch(), 20).unwrap();
        assert_eq!(sw.verdict, DualVerdict::Unbounded);
        assert!(sw.first_exceeding.unwrap() <= 2);
        assert_eq!(sw.monotonicity, Monotonicity::Nondecreasing);
    }

    #[test]
    fn haar_profile_examples() {
        let cheb = haar_profile(&CoefficientSequence::chebyshev(), 10).unwrap();
        assert_eq!(cheb.values[..4], [int(1), int(2), int(2), int(2)]);
        assert_eq!(cheb.pattern, HaarPattern::Nondecreasing);
        assert_eq!(haar_profile(&power5(Variant::Second), 50).unwrap().pattern, HaarPattern::EvenDrop);
        assert_eq!(haar_profile(&power5(Variant::First), 50).unwrap().pattern, HaarPattern::OddDrop);
    }

    #[test]
    fn haar_pattern_agrees_with_coefficient_ratios() {
        for seq in [power5(Variant::First), power5(Variant::Second), crate::families::ks_counterexample()] {
            let profile = haar_profile(&seq, 30).unwrap();
            let even_drop = (1..=15).all(|n| seq.a(2 * n - 1).unwrap() < seq.c(2 * n).unwrap());
            assert_eq!(profile.pattern == HaarPattern::EvenDrop, even_drop);
        }
    }

    proptest! {
        #[test]
        fn spectra_are_symmetric(b_sq in prop::collection::vec(0.01f64..1.0, 1..60)) {
            let eig = tridiagonal_eigenvalues(&b_sq);
            let report = SpectrumReport::from_eigenvalues(eig);
            prop_assert!(report.symmetry_defect < 1e-10);
            prop_assert!(report.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            // Trace of the square equals twice the sum of squared off-diagonals.
            let trace: f64 = report.eigenvalues.iter().map(|l| l * l).sum();
            let expected: f64 = 2.0 * b_sq.iter().sum::<f64>();
            prop_assert!((trace - expected).abs() < 1e-9 * (1.0 + expected));
        }
    }
}
