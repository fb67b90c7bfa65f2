//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so the verdict lines always print.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rwps::criteria::{
    check_lemma3, check_lemma_bounds, check_s_criterion, ms_matrix, necessary_condition, pd_check,
    verify_proof_bounds, MsVariant, NecessaryVerdict, ProofVariant, S_TAIL,
};
use rwps::families::{
    coefficients_from_alpha, geometric_family, haar_eps_family, ks_counterexample, minimal_k, standard_s, KSearch,
    StandardS,
};
use rwps::linearization::{linearize, linearize_oracle, scan_nonnegativity, LinearizationTable};
use rwps::rational::{int, to_f64};
use rwps::spectrum::{dual_membership_zero, haar_profile, jacobi_eigenvalues, quadratic_transform, HaarPattern};
use rwps::verify::{run_all, VerifyOptions};
use rwps::{rat, AlphaSqRule, CoefficientSequence, Rational, SSequence, Variant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn lib<T>(result: rwps::Result<T>) -> Result<T, String> {
    result.map_err(|e| e.to_string())
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn g(seq: &CoefficientSequence, m: usize, n: usize, k: usize) -> Result<Rational, String> {
    let row = lib(linearize(seq, m, n))?;
    Ok(row.into_iter().find(|(i, _)| *i == k).map_or_else(Rational::zero, |(_, v)| v))
}

fn power5(variant: Variant) -> CoefficientSequence {
    CoefficientSequence::from_s(standard_s(StandardS::Power5), variant)
}

/// `c_1 = 2/3`: the first-variant interleaving of `s_n = (1/3)/5^{n-1}`.
fn geometric_first() -> Result<CoefficientSequence, String> {
    Ok(lib(geometric_family(&rat(1, 3), 5))?.1.switch())
}

/// `c_1 = 1/3`: the second-variant interleaving.
fn geometric_second() -> Result<CoefficientSequence, String> {
    Ok(lib(geometric_family(&rat(1, 3), 5))?.1)
}

fn counterexample_constant() -> Outcome {
    let start = Instant::now();
    let switched = ks_counterexample().switch();
    let value = g(&switched, 3, 3, 4)?;
    ensure(value == rat(-128, 135), format!("g~(3,3;4) = {value}"))?;
    let oracle = lib(linearize_oracle(&switched, 3, 3))?;
    ensure(oracle.contains(&(4, rat(-128, 135))), "oracle disagrees")?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("g~(3,3;4) = {value}"))
}

fn chebyshev_product_formula() -> Outcome {
    let table = lib(LinearizationTable::build(&CoefficientSequence::chebyshev(), 20))?;
    for n in 1..=20 {
        for m in 1..=n {
            let entries: Vec<(usize, Rational)> =
                table.row(m, n).expect("row").entries().map(|(k, v)| (k, v.clone())).collect();
            let expected = vec![(n - m, rat(1, 2)), (n + m, rat(1, 2))];
            ensure(entries == expected, format!("(m,n) = ({m},{n}): {entries:?}"))?;
        }
        ensure(table.get(n, n, 0) == rat(1, 2) && table.get(n, n, 2 * n) == rat(1, 2), format!("g({n},{n};0)"))?;
    }
    Ok("all 210 pairs match".into())
}

fn power5_witness() -> Outcome {
    let start = Instant::now();
    let first = power5(Variant::First);
    let second = power5(Variant::Second);
    for (label, seq) in [("first", first.clone()), ("second", second.clone()), ("switch first", first.switch()), ("switch second", second.switch())] {
        let verdict = lib(scan_nonnegativity(&seq, 25))?;
        ensure(verdict.is_nonnegative(), format!("{label}: {verdict:?}"))?;
    }
    for (label, seq) in [("first", &first), ("second", &second)] {
        for n in 0..=12 {
            for m in 0..=12 {
                ensure(lib(linearize(seq, m, n))? == lib(linearize_oracle(seq, m, n))?, format!("{label} ({m},{n})"))?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("M = 25 nonnegative, oracle agrees to 12 ({:.1?})", start.elapsed()))
}

fn pd_machinery() -> Outcome {
    let seq = geometric_first()?;
    let switched = seq.switch();
    for n in 1..=100 {
        ensure(pd_check(&lib(ms_matrix(&seq, MsVariant::Odd, n))?).is_ok(), format!("odd N={n}"))?;
        ensure(pd_check(&lib(ms_matrix(&switched, MsVariant::Even, n))?).is_ok(), format!("switched even N={n}"))?;
    }
    for n in 1..=50 {
        for variant in [ProofVariant::P, ProofVariant::PTilde] {
            let report = lib(verify_proof_bounds(&seq, variant, n))?;
            ensure(report.overall, format!("{variant:?} N={n}: {:?}", report.first_failure()))?;
        }
    }
    let failure = pd_check(&lib(ms_matrix(&CoefficientSequence::chebyshev(), MsVariant::Even, 1))?)
        .err()
        .ok_or("Chebyshev N=1 certified")?;
    ensure(failure.index == 2 && failure.value == int(-1), format!("Chebyshev failure {failure:?}"))?;
    Ok("certificates N <= 100, bounds N <= 50, Chebyshev u_2 = -1".into())
}

fn haar_anomalies() -> Outcome {
    let (_, eps_seq) = lib(haar_eps_family(&rat(1, 2), 5))?;
    let (h1, h2) = (lib(eps_seq.haar(1))?, lib(eps_seq.haar(2))?);
    ensure(h2 == rat(3, 2), format!("h(2) = {h2}"))?;
    ensure(h1 == rat(61, 25) && h1 > int(2), format!("h(1) = {h1}"))?;
    let k = lib(minimal_k(&KSearch::Geometric { c: rat(1, 3) }))?;
    let geo_h1 = lib(lib(geometric_family(&rat(1, 3), k))?.1.haar(1))?;
    ensure(geo_h1 == int(3), format!("geometric h(1) = {geo_h1}"))?;
    let odd = lib(haar_profile(&power5(Variant::First), 50))?.pattern;
    let even = lib(haar_profile(&power5(Variant::Second), 50))?.pattern;
    ensure(odd == HaarPattern::OddDrop, format!("first variant {odd:?}"))?;
    ensure(even == HaarPattern::EvenDrop, format!("second variant {even:?}"))?;
    Ok(format!("h(1) = {h1}, h(2) = {h2}, geometric h(1) = {geo_h1}"))
}

fn criterion_suite() -> Outcome {
    for (label, tag) in [("power5", StandardS::Power5), ("factorial", StandardS::Factorial)] {
        let s = standard_s(tag);
        ensure(lib(check_s_criterion(&s, 20))?.overall, format!("{label} criterion"))?;
        ensure(lib(check_lemma_bounds(&s, 20))?.overall, format!("{label} lemma bounds"))?;
        let first = CoefficientSequence::from_s(s, Variant::First);
        ensure(lib(check_lemma3(&first, 20))?.overall, format!("{label} pivot lemma"))?;
    }
    let report = lib(check_s_criterion(&SSequence::inverse_power(2), 20))?;
    let tail = report.check(S_TAIL).ok_or("tail condition not evaluated")?;
    ensure(!tail.passed && tail.index == Some(3), format!("tail {tail:?}"))?;
    ensure(tail.margin == Some(rat(-3, 8)), format!("margin {:?}", tail.margin))?;
    Ok("power5 and factorial pass to N = 20; 1/2^n fails at n = 3 with margin -3/8".into())
}

fn necessary_condition_pattern() -> Outcome {
    let geo = lib(necessary_condition(&geometric_second()?, 50))?;
    ensure(geo == NecessaryVerdict::AlternatingLowHigh { up_to: 50 }, format!("geometric {geo:?}"))?;
    let cheb = lib(necessary_condition(&CoefficientSequence::chebyshev(), 50))?;
    ensure(cheb == NecessaryVerdict::ChebyshevConsistent { up_to: 50 }, format!("chebyshev {cheb:?}"))?;
    Ok("alternating-low-high, chebyshev-consistent".into())
}

fn dual_membership() -> Outcome {
    let geo = geometric_second()?;
    let report = lib(dual_membership_zero(&geo, 50))?;
    ensure(report.factors_at_most_one, "a factor exceeds 1")?;
    // Independent reading: |P_{2n}(0)| by the forward recurrence.
    for n in 1..=10 {
        let direct = lib(geo.eval_p(2 * n, &int(0)))?;
        ensure(direct.abs() == report.products[n - 1], format!("|P_{}(0)|", 2 * n))?;
    }
    let switched = lib(dual_membership_zero(&geo.switch(), 50))?;
    let first = switched.first_exceeding.ok_or("switch products stay <= 1")?;
    ensure(first <= 2, format!("first product above 1 at n = {first}"))?;
    ensure(switched.products[1] > int(1), "second product <= 1")?;
    Ok(format!("factors <= 1; switch exceeds 1 at n = {first}"))
}

fn spectrum_diagnostics() -> Outcome {
    let start = Instant::now();
    let seq = power5(Variant::First);
    let mut gaps = Vec::new();
    for size in [50, 100, 200] {
        let report = lib(jacobi_eigenvalues(&seq, size))?;
        if size == 200 {
            ensure(report.symmetry_defect < 1e-10, format!("symmetry {}", report.symmetry_defect))?;
            ensure(report.range_defect < 1e-8, format!("range {}", report.range_defect))?;
            ensure(report.top_gap < 1e-3, format!("top gap {}", report.top_gap))?;
        }
        gaps.push(report.top_gap);
    }
    ensure(gaps.windows(2).all(|w| w[1] <= w[0] + 1e-9), format!("gaps {gaps:?}"))?;
    for n in 1..=100 {
        let row = lib(quadratic_transform(&seq, n))?;
        ensure(&row.a + &row.b + &row.c == int(1), format!("aR+bR+cR at n={n}"))?;
    }
    let b30 = to_f64(&lib(quadratic_transform(&seq, 30))?.b);
    ensure((b30 - 1.0).abs() < 1e-6, format!("|bR - 1| = {}", (b30 - 1.0).abs()))?;
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("top gaps {gaps:?}"))
}

fn alpha_round_trip() -> Outcome {
    let ks = ks_counterexample();
    let want = lib(ks.coefficients(20))?;
    let back = lib(lib(coefficients_from_alpha(AlphaSqRule::Of(ks.clone())))?.coefficients(20))?;
    ensure(back == want, "recovery from alpha_sq differs")?;
    // The same weights written out: α_1² = 5/9, α_{2n}² = 1/9, α_{2n+1}² = 4/9.
    let periodic = AlphaSqRule::Periodic { first: rat(5, 9), even: rat(1, 9), odd: rat(4, 9) };
    let back = lib(lib(coefficients_from_alpha(periodic))?.coefficients(20))?;
    ensure(back == want, "recovery from periodic weights differs")?;
    Ok("c_1..c_20 reproduced".into())
}

fn full_run() -> Outcome {
    let start = Instant::now();
    let report = lib(run_all(&VerifyOptions::default()))?;
    let failed: Vec<usize> = report.items.iter().filter(|i| !i.passed).map(|i| i.id).collect();
    ensure(failed.is_empty(), format!("items {failed:?} failed"))?;
    within(start.elapsed(), Duration::from_secs(180))?;
    Ok(format!("10 items in {:.1?}", start.elapsed()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("1 counterexample constant", counterexample_constant),
        ("2 Chebyshev linearization", chebyshev_product_formula),
        ("3 nonnegativity witness", power5_witness),
        ("4 positive-definiteness machinery", pd_machinery),
        ("5 Haar anomalies", haar_anomalies),
        ("6 criterion suite", criterion_suite),
        ("7 necessary condition", necessary_condition_pattern),
        ("8 dual membership", dual_membership),
        ("9 spectrum diagnostics", spectrum_diagnostics),
        ("10 alpha round trip", alpha_round_trip),
        ("full verify-paper run", full_run),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("acceptance {name}: PASS ({detail})"),
            Err(why) => {
                failures += 1;
                println!("acceptance {name}: FAIL ({why})");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
