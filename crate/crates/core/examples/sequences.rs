//! Coefficients, orthonormal weights, Haar weights and polynomial values of
//! a few sequences, and what switching does to them.
//!
//! ```text
//! cargo run --example sequences
//! ```

use rwps::families::ks_counterexample;
use rwps::rational::format_rational;
use rwps::{rat, CoefficientSequence, SSequence, Variant};

fn show(name: &str, seq: &CoefficientSequence) -> rwps::Result<()> {
    println!("{name}");
    for n in 1..=6 {
        println!(
            "  n={n}  c={:<14} a={:<14} alpha^2={:<18} h={}",
            format_rational(&seq.c(n)?),
            format_rational(&seq.a(n)?),
            format_rational(&seq.alpha_sq(n)?),
            format_rational(&seq.haar(n)?),
        );
    }
    let x = rat(1, 2);
    println!("  P_4(1/2) = {}, |P_4(0)| = {}", seq.eval_p(4, &x)?, seq.p_at_zero_abs(4)?);
    Ok(())
}

fn main() -> rwps::Result<()> {
    let power5 = CoefficientSequence::from_s(SSequence::inverse_power(5), Variant::First);
    show("c_n from s_n = 1/5^n, first variant", &power5)?;
    show("its switch (a_n and c_n exchanged)", &power5.switch())?;
    show("counterexample sequence", &ks_counterexample())?;
    show("Chebyshev", &CoefficientSequence::chebyshev())?;
    println!("P_3 in the monomial basis (Chebyshev): {:?}",
        CoefficientSequence::chebyshev().monomial_coeffs(3)?.iter().map(format_rational).collect::<Vec<_>>());
    Ok(())
}
