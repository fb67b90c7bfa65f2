//! Floating-point view of the orthogonality measure: truncated Jacobi
//! spectra, compactness products, the quadratic transform, dual membership
//! of zero and the Haar profile.
//!
//! ```text
//! cargo run --example spectrum
//! ```

use rwps::families::geometric_family;
use rwps::rational::to_f64;
use rwps::spectrum::{compactness_profile, dual_membership_zero, haar_profile, jacobi_eigenvalues, quadratic_transform};
use rwps::{rat, CoefficientSequence, SSequence, Variant};

fn main() -> rwps::Result<()> {
    let seq = CoefficientSequence::from_s(SSequence::inverse_power(5), Variant::First);
    for size in [50, 100, 200] {
        let report = jacobi_eigenvalues(&seq, size)?;
        println!(
            "N={size}: symmetry {:.1e}, range {:.1e}, top gap {:.3e}",
            report.symmetry_defect, report.range_defect, report.top_gap
        );
    }
    print!("{}", jacobi_eigenvalues(&seq, 200)?.histogram(10).to_text());

    let profile = compactness_profile(&seq, 12)?;
    println!("compactness: vanishing {} from m = {:?}", profile.vanishing, profile.tail_from);

    for n in [1, 5, 30] {
        let row = quadratic_transform(&seq, n)?;
        println!("R_{n}: a = {:.6}, b = {:.6}, c = {:.3e}", to_f64(&row.a), to_f64(&row.b), to_f64(&row.c));
    }

    let (_, geo) = geometric_family(&rat(1, 3), 5)?;
    for (name, s) in [("geometric(1/3, 5)", &geo), ("its switch", &geo.switch())] {
        let dual = dual_membership_zero(s, 10)?;
        println!("{name}: zero in dual set {:?}, sup |P_2n(0)| ~ {:.3}", dual.verdict, to_f64(&dual.sup));
    }

    for variant in [Variant::First, Variant::Second] {
        let s = CoefficientSequence::from_s(SSequence::inverse_power(5), variant);
        println!("{variant:?} variant Haar pattern: {:?}", haar_profile(&s, 50)?.pattern);
    }
    Ok(())
}
