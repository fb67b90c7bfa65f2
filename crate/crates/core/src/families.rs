//! Generators for the concrete sequences used in the verification runs.
//!
//! The two parameterized constructions (`geometric` and `haar_eps`) take an
//! integer `K`; [`minimal_k`] searches for the smallest admissible one.
//! Every admissibility expression is a polynomial in `K` with positive leading
//! coefficient, and `K² - 4K - 2 > 0` already forces `K ≥ 5`, so the upward
//! search from `K = 1` terminates.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};
use crate::sequence::{in_unit_interval, AlphaSqRule, CoefficientSequence, Family, SSequence, Variant};

/// Tagged parameter record for every generator the CLI can address.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Chebyshev,
    Geometric {
        #[serde(with = "crate::rational::serde_str")]
        c: Rational,
        k: u64,
    },
    HaarEps {
        #[serde(with = "crate::rational::serde_str")]
        eps: Rational,
        k: u64,
    },
    KsCounterexample,
    Power5 { variant: Variant },
    Factorial { variant: Variant },
    /// `s_n = 1/base^n`.
    InversePower { base: u64, variant: Variant },
    Constant {
        #[serde(with = "crate::rational::serde_str")]
        c: Rational,
    },
    Explicit {
        #[serde(with = "crate::rational::serde_vec")]
        values: Vec<Rational>,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<CoefficientSequence> {
        match self {
            FamilySpec::Chebyshev => Ok(CoefficientSequence::chebyshev()),
            FamilySpec::Geometric { c, k } => geometric_family(c, *k).map(|(_, seq)| seq),
            FamilySpec::HaarEps { eps, k } => haar_eps_family(eps, *k).map(|(_, seq)| seq),
            FamilySpec::KsCounterexample => Ok(ks_counterexample()),
            FamilySpec::Power5 { variant } => Ok(CoefficientSequence::from_s(standard_s(StandardS::Power5), *variant)),
            FamilySpec::Factorial { variant } => {
                Ok(CoefficientSequence::from_s(standard_s(StandardS::Factorial), *variant))
            }
            FamilySpec::InversePower { base, variant } => {
                Ok(CoefficientSequence::from_s(SSequence::inverse_power(*base), *variant))
            }
            FamilySpec::Constant { c } => {
                if !in_unit_interval(c) {
                    return Err(Error::InadmissibleParameter(format!("c = {c} must lie in (0,1)")));
                }
                Ok(CoefficientSequence::constant(c.clone()))
            }
            FamilySpec::Explicit { values } => Ok(CoefficientSequence::explicit(values.clone())),
        }
    }
}

/// The two auxiliary sequences satisfying the sufficient criterion out of the box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardS {
    /// `s_n = 1/5^n`.
    Power5,
    /// `s_n = 1/(n+3)!`.
    Factorial,
}

pub fn standard_s(tag: StandardS) -> SSequence {
    match tag {
        StandardS::Power5 => SSequence::inverse_power(5),
        StandardS::Factorial => SSequence::factorial(3),
    }
}

/// `c_{2n-1} = (6n+4)/(9n+9)`, `c_{2n} = (n+1)/(3n+5)`: nonnegative
/// linearization holds for it but fails for its switch.
pub fn ks_counterexample() -> CoefficientSequence {
    CoefficientSequence::new(Family::KsCounterexample)
}

/// Recover `c_1 = α_1²`, `c_n = α_n²/(1 - c_{n-1})` from squared orthonormal weights.
///
/// Recovery is lazy; an index whose recovered value leaves `(0,1)` fails with
/// [`Error::DomainViolation`] naming that index. `α_1²` is checked eagerly.
pub fn coefficients_from_alpha(rule: AlphaSqRule) -> Result<CoefficientSequence> {
    let first = rule.value(1)?;
    if !in_unit_interval(&first) {
        return Err(Error::DomainViolation { quantity: "c", index: 1, value: first });
    }
    Ok(CoefficientSequence::new(Family::FromAlpha(rule)))
}

fn big(k: u64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// `min(C, 1 - C)`, rejecting `C ∉ (0,1)` and `C = 1/2`.
fn reduced_c(c: &Rational) -> Result<Rational> {
    if !in_unit_interval(c) || *c == rat(1, 2) {
        return Err(Error::InadmissibleParameter(format!("C = {c} must lie in (0,1) \\ {{1/2}}")));
    }
    Ok(c.clone().min(int(1) - c))
}

fn check_eps(eps: &Rational) -> Result<()> {
    if in_unit_interval(eps) {
        Ok(())
    } else {
        Err(Error::InadmissibleParameter(format!("eps = {eps} must lie in (0,1)")))
    }
}

/// `K² - 4K - 2`, shared by both constructions.
fn tail_expression(k: &Rational) -> Rational {
    k * k - int(4) * k - int(2)
}

/// Positivity expressions for `s_n = C'/K^{n-1}`.
pub fn geometric_expressions(c_reduced: &Rational, k: u64) -> [Rational; 2] {
    let k = big(k);
    let linear = (int(1) - int(2) * c_reduced) * &k + c_reduced * c_reduced - c_reduced;
    [linear, tail_expression(&k)]
}

/// Positivity expressions for the `h(2) = 1 + ε` construction: the quartic
/// bound, the middle expression `s_1/2 - 2s_2 - s_3` and `K² - 4K - 2`.
pub fn haar_eps_expressions(eps: &Rational, k: u64) -> Result<[Rational; 3]> {
    let kq = big(k);
    let k2 = &kq * &kq;
    let quartic = eps * &k2 * &k2 - (int(1) + eps) * (int(2) * &k2 - int(1));
    let s = SSequence::haar_eps(eps.clone(), k);
    let middle = s.value(1)? / int(2) - int(2) * s.value(2)? - s.value(3)?;
    Ok([quartic, middle, tail_expression(&kq)])
}

fn geometric_admissible(c_reduced: &Rational, k: u64) -> bool {
    k >= 1 && geometric_expressions(c_reduced, k).iter().all(Signed::is_positive)
}

fn haar_eps_admissible(eps: &Rational, k: u64) -> Result<bool> {
    if k < 2 {
        return Ok(false);
    }
    let s = SSequence::haar_eps(eps.clone(), k);
    let s1 = s.value(1)?;
    if !in_unit_interval(&s1) {
        return Ok(false);
    }
    Ok(haar_eps_expressions(eps, k)?.iter().all(Signed::is_positive))
}

/// `s_n = C'/K^{n-1}` with `C' = min(C, 1-C)`, interleaved by the first
/// variant when `C > 1/2` and by the second otherwise, so that `c_1 = C`.
pub fn geometric_family(c: &Rational, k: u64) -> Result<(SSequence, CoefficientSequence)> {
    let c_reduced = reduced_c(c)?;
    if !geometric_admissible(&c_reduced, k) {
        return Err(Error::InadmissibleParameter(format!("K = {k} is not admissible for C = {c}")));
    }
    let s = SSequence::geometric(c_reduced, k);
    let variant = if *c > rat(1, 2) { Variant::First } else { Variant::Second };
    let seq = CoefficientSequence::from_s(s.clone(), variant);
    Ok((s, seq))
}

/// `s_1 = K²/((2+ε)K² - (1+ε))`, `s_n = 1/K^n` (`n ≥ 2`), second variant;
/// the resulting Haar weight satisfies `h(2) = 1 + ε`.
pub fn haar_eps_family(eps: &Rational, k: u64) -> Result<(SSequence, CoefficientSequence)> {
    check_eps(eps)?;
    if !haar_eps_admissible(eps, k)? {
        return Err(Error::InadmissibleParameter(format!("K = {k} is not admissible for eps = {eps}")));
    }
    let s = SSequence::haar_eps(eps.clone(), k);
    let seq = CoefficientSequence::from_s(s.clone(), Variant::Second);
    Ok((s, seq))
}

/// Which construction [`minimal_k`] searches for.
#[derive(Clone, Debug, PartialEq)]
pub enum KSearch {
    Geometric { c: Rational },
    HaarEps { eps: Rational },
}

/// Smallest positive integer `K` for which the construction is admissible.
pub fn minimal_k(search: &KSearch) -> Result<u64> {
    match search {
        KSearch::Geometric { c } => {
            let c_reduced = reduced_c(c)?;
            Ok((1..).find(|&k| geometric_admissible(&c_reduced, k)).expect("search terminates"))
        }
        KSearch::HaarEps { eps } => {
            check_eps(eps)?;
            for k in 1.. {
                if haar_eps_admissible(eps, k)? {
                    return Ok(k);
                }
            }
            unreachable!("search terminates")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::SRule;

    #[test]
    fn geometric_construction() {
        let (s, seq) = geometric_family(&rat(1, 3), 5).unwrap();
        assert_eq!(s.prefix(3).unwrap(), vec![rat(1, 3), rat(1, 15), rat(1, 75)]);
        assert_eq!(seq.c(1).unwrap(), rat(1, 3));
        assert_eq!(seq.haar(1).unwrap(), int(3));

        let (s2, seq2) = geometric_family(&rat(2, 3), 5).unwrap();
        assert_eq!(s2, s);
        assert_eq!(seq2.c(1).unwrap(), rat(2, 3));
        assert!(matches!(seq2.family(), Family::FromS { variant: Variant::First, .. }));
        assert_eq!(seq2, seq.switch());
    }

    #[test]
    fn geometric_rejects_bad_parameters() {
        assert!(matches!(geometric_family(&rat(1, 2), 5), Err(Error::InadmissibleParameter(_))));
        assert!(matches!(geometric_family(&int(1), 5), Err(Error::InadmissibleParameter(_))));
        assert!(matches!(geometric_family(&rat(1, 3), 4), Err(Error::InadmissibleParameter(_))));
    }

    #[test]
    fn haar_eps_construction() {
        let (s, seq) = haar_eps_family(&rat(1, 2), 5).unwrap();
        assert_eq!(s.value(1).unwrap(), rat(25, 61));
        assert_eq!(s.value(2).unwrap(), rat(1, 25));
        assert_eq!(seq.haar(2).unwrap(), rat(3, 2));
        assert_eq!(seq.haar(1).unwrap(), rat(61, 25));
        assert!(seq.haar(1).unwrap() > int(2));
    }

    #[test]
    fn haar_eps_rejects_small_k() {
        // εK⁴ - (1+ε)(2K² - 1) at ε = 1/2, K = 2: 8 - 21/2 < 0
        assert_eq!(haar_eps_expressions(&rat(1, 2), 2).unwrap()[0], rat(-5, 2));
        assert!(matches!(haar_eps_family(&rat(1, 2), 2), Err(Error::InadmissibleParameter(_))));
        assert!(haar_eps_family(&rat(3, 2), 5).is_err());
    }

    #[test]
    fn minimal_k_values() {
        assert_eq!(minimal_k(&KSearch::Geometric { c: rat(1, 3) }).unwrap(), 5);
        assert_eq!(minimal_k(&KSearch::Geometric { c: rat(2, 3) }).unwrap(), 5);
        assert_eq!(minimal_k(&KSearch::HaarEps { eps: rat(1, 2) }).unwrap(), 5);
        // C' = 9/20: the linear term needs K > 99/40, the quadratic binds.
        assert_eq!(minimal_k(&KSearch::Geometric { c: rat(9, 20) }).unwrap(), 5);
        // C' = 499/1000: (2/1000)K > 249999/10^6 first at K = 125.
        assert_eq!(minimal_k(&KSearch::Geometric { c: rat(499, 1000) }).unwrap(), 125);
        assert!(minimal_k(&KSearch::Geometric { c: rat(1, 2) }).is_err());
    }

    #[test]
    fn quartic_is_positive_from_three() {
        let quartic = |k| haar_eps_expressions(&rat(1, 2), k).unwrap()[0].clone();
        assert!(!quartic(2).is_positive());
        assert!(quartic(3).is_positive());
        assert!(haar_eps_expressions(&rat(1, 2), 5).unwrap()[1].is_positive());
    }

    #[test]
    fn standard_sequences() {
        assert_eq!(standard_s(StandardS::Power5).value(3).unwrap(), rat(1, 125));
        assert_eq!(standard_s(StandardS::Factorial).value(1).unwrap(), rat(1, 24));
        assert!(matches!(standard_s(StandardS::Factorial).rule(), SRule::Factorial { shift: 3 }));
    }

    #[test]
    fn alpha_recovery_examples() {
        let ks_alpha = AlphaSqRule::Periodic { first: rat(5, 9), even: rat(1, 9), odd: rat(4, 9) };
        let recovered = coefficients_from_alpha(ks_alpha).unwrap();
        assert_eq!(recovered.c(1).unwrap(), rat(5, 9));
        assert_eq!(recovered.c(2).unwrap(), rat(1, 4));

        let cheb_alpha = AlphaSqRule::Periodic { first: rat(1, 2), even: rat(1, 4), odd: rat(1, 4) };
        let cheb = coefficients_from_alpha(cheb_alpha).unwrap();
        for n in 1..=10 {
            assert_eq!(cheb.c(n).unwrap(), rat(1, 2));
        }

        let bad = coefficients_from_alpha(AlphaSqRule::Explicit(vec![rat(9, 10), rat(1, 2)])).unwrap();
        match bad.c(2) {
            Err(Error::DomainViolation { index: 2, value, .. }) => assert_eq!(value, int(5)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(coefficients_from_alpha(AlphaSqRule::Explicit(vec![rat(3, 2)])).is_err());
    }

    #[test]
    fn alpha_round_trip_on_families() {
        let seqs = [
            ks_counterexample(),
            geometric_family(&rat(1, 3), 5).unwrap().1,
            haar_eps_family(&rat(1, 2), 5).unwrap().1,
            CoefficientSequence::from_s(standard_s(StandardS::Factorial), Variant::First),
        ];
        for seq in seqs {
            let recovered = coefficients_from_alpha(AlphaSqRule::Of(seq.clone())).unwrap();
            for n in 1..=20 {
                assert_eq!(recovered.c(n).unwrap(), seq.c(n).unwrap());
            }
        }
    }

    #[test]
    fn family_spec_json() {
        let spec: FamilySpec = serde_json::from_str(r#"{"family":"geometric","c":"1/3","k":5}"#).unwrap();
        assert_eq!(spec, FamilySpec::Geometric { c: rat(1, 3), k: 5 });
        assert_eq!(spec.build().unwrap().c(1).unwrap(), rat(1, 3));
        let spec: FamilySpec = serde_json::from_str(r#"{"family":"power5","variant":"second"}"#).unwrap();
        assert_eq!(spec.build().unwrap().c(2).unwrap(), rat(24, 25));
    }
}
