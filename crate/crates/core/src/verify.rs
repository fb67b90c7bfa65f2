//! The reproducible verification run: ten numbered items, each reduced to
//! exact comparisons (or, for the spectrum item, float diagnostics with
//! fixed thresholds) and reported with the values it compared.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::criteria::{
    build_cn, check_lemma3, check_lemma_bounds, check_s_criterion, ms_matrix, necessary_condition, pd_check,
    verify_proof_bounds, MsVariant, NecessaryVerdict, ProofVariant, S_TAIL,
};
use crate::error::{Error, Result};
use crate::families::{
    coefficients_from_alpha, geometric_family, haar_eps_family, ks_counterexample, minimal_k, standard_s, KSearch,
    StandardS,
};
use crate::linearization::{linearize, linearize_oracle, scan_nonnegativity, LinearizationTable};
use crate::rational::{format_rational, int, rat, to_f64, Rational};
use crate::sequence::{AlphaSqRule, CoefficientSequence, SSequence, Variant};
use crate::spectrum::{dual_membership_zero, haar_profile, jacobi_eigenvalues, quadratic_transform, DualVerdict, HaarPattern};

pub const ITEM_COUNT: usize = 10;

/// Overrides for negative-control runs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyOptions {
    /// `(n, c_n)` replacements applied to the counterexample sequence.
    pub ks_overrides: Vec<(usize, Rational)>,
}

impl VerifyOptions {
    /// The counterexample sequence with the overrides applied as an explicit prefix.
    pub fn ks_sequence(&self) -> Result<CoefficientSequence> {
        let ks = ks_counterexample();
        let Some(len) = self.ks_overrides.iter().map(|(n, _)| *n).max() else {
            return Ok(ks);
        };
        let mut prefix = ks.coefficients(len)?;
        for (n, value) in &self.ks_overrides {
            if *n == 0 {
                return Err(Error::IndexOutOfRange { quantity: "c", index: 0 });
            }
            prefix[n - 1] = value.clone();
        }
        Ok(ks.with_prefix(prefix))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ItemResult {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    /// Named values the item compared, rationals as `"p/q"`.
    pub values: BTreeMap<String, String>,
}

impl ItemResult {
    fn new(id: usize, title: &'static str) -> Self {
        Self { id, title, passed: true, values: BTreeMap::new() }
    }

    fn record(&mut self, key: impl Into<String>, value: impl ToString, ok: bool) {
        self.values.insert(key.into(), value.to_string());
        self.passed &= ok;
    }

    pub fn line(&self) -> String {
        format!("[{}] item {:>2}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.title)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub items: Vec<ItemResult>,
    pub passed: bool,
}

pub fn run_all(options: &VerifyOptions) -> Result<VerifyReport> {
    let items = (1..=ITEM_COUNT).map(|id| run_item(id, options)).collect::<Result<Vec<_>>>()?;
    let passed = items.iter().all(|item| item.passed);
    Ok(VerifyReport { items, passed })
}

pub fn run_item(id: usize, options: &VerifyOptions) -> Result<ItemResult> {
    match id {
        1 => counterexample_constant(options),
        2 => chebyshev_table(),
        3 => power5_nonnegativity(),
        4 => pd_machinery(),
        5 => haar_anomalies(),
        6 => criterion_suite(),
        7 => necessary_pattern(),
        8 => dual_membership(),
        9 => spectrum_diagnostics(),
        10 => alpha_round_trip(options),
        _ => Err(Error::InvalidArgument(format!("no verification item {id}"))),
    }
}

/// The first-variant sequence of the geometric family with `C = 1/3`, `K = 5`.
pub fn geometric_first() -> Result<CoefficientSequence> {
    Ok(geometric_family(&rat(2, 3), 5)?.1)
}

/// The second-variant sequence of the geometric family with `C = 1/3`, `K = 5`.
pub fn geometric_second() -> Result<CoefficientSequence> {
    Ok(geometric_family(&rat(1, 3), 5)?.1)
}

fn entry(seq: &CoefficientSequence, m: usize, n: usize, k: usize) -> Result<Rational> {
    Ok(linearize(seq, m, n)?.into_iter().find(|(i, _)| *i == k).map_or_else(Rational::zero, |(_, g)| g))
}

fn counterexample_constant(options: &VerifyOptions) -> Result<ItemResult> {
    let mut item = ItemResult::new(1, "switched counterexample has g(3,3;4) = -128/135");
    let value = entry(&options.ks_sequence()?.switch(), 3, 3, 4)?;
    item.record("g(3,3;4)", format_rational(&value), value == rat(-128, 135));
    Ok(item)
}

fn chebyshev_table() -> Result<ItemResult> {
    let mut item = ItemResult::new(2, "Chebyshev linearization is the two-point formula up to degree 20");
    let table = LinearizationTable::build(&CoefficientSequence::chebyshev(), 20)?;
    let mut mismatches = 0usize;
    for n in 1..=20 {
        for m in 1..=n {
            let row = table.row(m, n).expect("row in table");
            let support: Vec<(usize, Rational)> = row.entries().map(|(k, g)| (k, g.clone())).collect();
            if support != vec![(n - m, rat(1, 2)), (n + m, rat(1, 2))] {
                mismatches += 1;
            }
        }
    }
    item.record("mismatched pairs", mismatches, mismatches == 0);
    Ok(item)
}

fn power5_nonnegativity() -> Result<ItemResult> {
    let mut item = ItemResult::new(3, "s_n = 1/5^n: both variants and switches linearize nonnegatively to M = 25");
    let first = build_cn(&standard_s(StandardS::Power5), Variant::First);
    let second = build_cn(&standard_s(StandardS::Power5), Variant::Second);
    let mut distinct: Vec<CoefficientSequence> = Vec::new();
    for seq in [first.clone(), second.clone(), first.switch(), second.switch()] {
        if !distinct.contains(&seq) {
            distinct.push(seq);
        }
    }
    for (label, seq) in [("first", &first), ("second", &second)] {
        let verdict = scan_nonnegativity(seq, 25)?;
        item.record(format!("scan {label}"), serde_json::to_string(&verdict)?, verdict.is_nonnegative());
        let mut disagreements = 0usize;
        for n in 0..=12 {
            for m in 0..=n {
                if linearize(seq, m, n)? != linearize_oracle(seq, m, n)? {
                    disagreements += 1;
                }
            }
        }
        item.record(format!("oracle disagreements {label}"), disagreements, disagreements == 0);
    }
    item.record("distinct sequences", distinct.len(), distinct.len() == 2);
    Ok(item)
}

fn pd_machinery() -> Result<ItemResult> {
    let mut item = ItemResult::new(4, "geometric(1/3, 5): certificates to N = 100, proof bounds to N = 50");
    let seq = geometric_first()?;
    let switched = seq.switch();
    let mut odd_failures = 0usize;
    let mut even_failures = 0usize;
    for n in 1..=100 {
        odd_failures += usize::from(pd_check(&ms_matrix(&seq, MsVariant::Odd, n)?).is_err());
        even_failures += usize::from(pd_check(&ms_matrix(&switched, MsVariant::Even, n)?).is_err());
    }
    item.record("odd matrices without certificate", odd_failures, odd_failures == 0);
    item.record("switched even matrices without certificate", even_failures, even_failures == 0);
    let mut bound_failures = 0usize;
    for n in 1..=50 {
        for variant in [ProofVariant::P, ProofVariant::PTilde] {
            bound_failures += usize::from(!verify_proof_bounds(&seq, variant, n)?.overall);
        }
    }
    item.record("failed proof bounds", bound_failures, bound_failures == 0);
    let cheb = pd_check(&ms_matrix(&CoefficientSequence::chebyshev(), MsVariant::Even, 1)?);
    let control = cheb.as_ref().err().map(|f| (f.index, f.value.clone()));
    let control_ok = control == Some((2, int(-1)));
    let control_text = control.map_or("certified".to_string(), |(i, v)| format!("u_{i} = {v}"));
    item.record("Chebyshev even N=1", control_text, control_ok);
    Ok(item)
}

fn haar_anomalies() -> Result<ItemResult> {
    let mut item = ItemResult::new(5, "Haar anomalies and odd/even drop patterns");
    let (_, eps_seq) = haar_eps_family(&rat(1, 2), 5)?;
    let h1 = eps_seq.haar(1)?;
    let h2 = eps_seq.haar(2)?;
    item.record("haar_eps h(1)", format_rational(&h1), h1 == rat(61, 25) && h1 > int(2));
    item.record("haar_eps h(2)", format_rational(&h2), h2 == rat(3, 2));
    let k = minimal_k(&KSearch::Geometric { c: rat(1, 3) })?;
    let h1 = geometric_family(&rat(1, 3), k)?.1.haar(1)?;
    item.record(format!("geometric(1/3, {k}) h(1)"), format_rational(&h1), h1 == int(3));
    for (label, variant, want) in
        [("first", Variant::First, HaarPattern::OddDrop), ("second", Variant::Second, HaarPattern::EvenDrop)]
    {
        let profile = haar_profile(&build_cn(&standard_s(StandardS::Power5), variant), 50)?;
        item.record(format!("power5 {label} pattern"), serde_json::to_string(&profile.pattern)?, profile.pattern == want);
    }
    Ok(item)
}

fn criterion_suite() -> Result<ItemResult> {
    let mut item = ItemResult::new(6, "criterion, consequences and pivot lemma to N = 20");
    for (label, tag) in [("power5", StandardS::Power5), ("factorial", StandardS::Factorial)] {
        let s = standard_s(tag);
        let criterion = check_s_criterion(&s, 20)?.overall;
        item.record(format!("{label} criterion"), criterion, criterion);
        let lemma = check_lemma_bounds(&s, 20)?.overall;
        item.record(format!("{label} consequences"), lemma, lemma);
        let pivots = check_lemma3(&build_cn(&s, Variant::First), 20)?.overall;
        item.record(format!("{label} pivot lemma"), pivots, pivots);
    }
    let report = check_s_criterion(&SSequence::inverse_power(2), 3)?;
    let tail = report.check(S_TAIL).map(|c| (c.index, c.margin.clone()));
    let ok = tail == Some((Some(3), Some(rat(-3, 8))));
    let text = match tail {
        Some((Some(n), Some(m))) => format!("n={n} margin {m}"),
        _ => "not evaluated".to_string(),
    };
    item.record("1/2^n tail failure", text, ok);
    Ok(item)
}

fn necessary_pattern() -> Result<ItemResult> {
    let mut item = ItemResult::new(7, "alternation pattern of the second-variant geometric sequence and Chebyshev");
    let geo = necessary_condition(&geometric_second()?, 50)?;
    item.record(
        "geometric second",
        serde_json::to_string(&geo)?,
        geo == NecessaryVerdict::AlternatingLowHigh { up_to: 50 },
    );
    let cheb = necessary_condition(&CoefficientSequence::chebyshev(), 50)?;
    item.record("chebyshev", serde_json::to_string(&cheb)?, cheb == NecessaryVerdict::ChebyshevConsistent { up_to: 50 });
    Ok(item)
}

fn dual_membership() -> Result<ItemResult> {
    let mut item = ItemResult::new(8, "zero in the dual set for the second variant, not for its switch");
    let geo = geometric_second()?;
    let report = dual_membership_zero(&geo, 50)?;
    item.record("factors at most one", report.factors_at_most_one, report.verdict == DualVerdict::CertifiedBounded);
    let sw = dual_membership_zero(&geo.switch(), 50)?;
    let first = sw.first_exceeding;
    item.record("switch first product above 1", format!("{first:?}"), first.is_some_and(|n| n <= 2));
    Ok(item)
}

fn spectrum_diagnostics() -> Result<ItemResult> {
    let mut item = ItemResult::new(9, "power5 first variant: truncated spectra and quadratic transform");
    let seq = build_cn(&standard_s(StandardS::Power5), Variant::First);
    let mut gaps = Vec::new();
    for size in [50, 100, 200] {
        let report = jacobi_eigenvalues(&seq, size)?;
        if size == 200 {
            item.record("symmetry defect", format!("{:e}", report.symmetry_defect), report.symmetry_defect < 1e-10);
            item.record("range defect", format!("{:e}", report.range_defect), report.range_defect < 1e-8);
            item.record("top gap", format!("{:e}", report.top_gap), report.top_gap < 1e-3);
        }
        gaps.push(report.top_gap);
    }
    let monotone = gaps.windows(2).all(|w| w[1] <= w[0] + 1e-9);
    item.record("top gaps N=50,100,200", format!("{gaps:?}"), monotone);
    let mut unnormalized = 0usize;
    for n in 1..=100 {
        let row = quadratic_transform(&seq, n)?;
        unnormalized += usize::from(!row.is_normalized() || !(row.a > int(0) && row.c > int(0)));
    }
    item.record("rows with aR+bR+cR != 1", unnormalized, unnormalized == 0);
    let b30 = to_f64(&quadratic_transform(&seq, 30)?.b);
    item.record("|bR - 1| at n=30", format!("{:e}", (b30 - 1.0).abs()), (b30 - 1.0).abs() < 1e-6);
    Ok(item)
}

fn alpha_round_trip(options: &VerifyOptions) -> Result<ItemResult> {
    let mut item = ItemResult::new(10, "counterexample recovered from its orthonormal weights");
    let ks = options.ks_sequence()?;
    let want = ks.coefficients(20)?;
    let back = coefficients_from_alpha(AlphaSqRule::Of(ks.clone()))?.coefficients(20)?;
    item.record("from alpha_sq", back == want, back == want);
    if options.ks_overrides.is_empty() {
        let periodic = AlphaSqRule::Periodic { first: rat(5, 9), even: rat(1, 9), odd: rat(4, 9) };
        let back = coefficients_from_alpha(periodic)?.coefficients(20)?;
        item.record("from periodic weights 5/9, 1/9, 4/9", back == want, back == want);
    }
    Ok(item)
}
