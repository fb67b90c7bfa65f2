//! Positive-definiteness certificates for the tridiagonal matrices of a
//! geometric sequence and of its switch, the auxiliary pivot bounds, and the
//! Chebyshev matrix that is not positive definite.
//!
//! ```text
//! cargo run --example pd_certificates
//! ```

use rwps::criteria::{ms_matrix, pd_check, verify_proof_bounds, MsVariant, ProofVariant};
use rwps::families::geometric_family;
use rwps::rational::to_f64;
use rwps::{rat, CoefficientSequence};

fn main() -> rwps::Result<()> {
    // c_1 = 2/3: the first-variant interleaving of s_n = (1/3)/5^(n-1).
    let (_, seq) = geometric_family(&rat(2, 3), 5)?;
    let switched = seq.switch();

    for n in [1, 5, 20, 60] {
        let odd = pd_check(&ms_matrix(&seq, MsVariant::Odd, n)?);
        let even = pd_check(&ms_matrix(&switched, MsVariant::Even, n)?);
        let smallest = odd.as_ref().map(|cert| {
            (1..=cert.size()).map(|k| to_f64(&cert.u(k))).fold(f64::INFINITY, f64::min)
        });
        println!(
            "N={n:>3}: odd matrix {} (smallest pivot ~ {:.3e}), switched even matrix {}",
            if odd.is_ok() { "certified" } else { "not PD" },
            smallest.unwrap_or(f64::NAN),
            if even.is_ok() { "certified" } else { "not PD" },
        );
    }

    for variant in [ProofVariant::P, ProofVariant::PTilde] {
        let report = verify_proof_bounds(&seq, variant, 8)?;
        for check in &report.checks {
            let margin = check.margin.as_ref().map(to_f64).unwrap_or(f64::NAN);
            println!("{variant:?}: {} {} (tightest margin ~ {margin:.3e})", if check.passed { "pass" } else { "FAIL" }, check.label);
        }
    }

    let cheb = pd_check(&ms_matrix(&CoefficientSequence::chebyshev(), MsVariant::Even, 1)?);
    println!("Chebyshev even N=1: {:?}", cheb.err());
    Ok(())
}
