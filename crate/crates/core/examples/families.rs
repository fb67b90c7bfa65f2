//! The parameterized constructions: smallest admissible `K`, the resulting
//! coefficients, and the Haar weight anomalies they are built for.
//!
//! ```text
//! cargo run --example families
//! ```

use rwps::families::{
    coefficients_from_alpha, geometric_expressions, geometric_family, haar_eps_family, ks_counterexample, minimal_k,
    KSearch,
};
use rwps::rational::format_rational;
use rwps::{rat, AlphaSqRule};

fn main() -> rwps::Result<()> {
    for c in [rat(1, 3), rat(2, 3), rat(9, 20), rat(499, 1000)] {
        let k = minimal_k(&KSearch::Geometric { c: c.clone() })?;
        let [linear, tail] = geometric_expressions(&c.clone().min(rat(1, 1) - &c), k);
        let (_, seq) = geometric_family(&c, k)?;
        println!(
            "geometric C = {c}: K = {k} (margins {linear}, {tail}), c_1..c_3 = {}, {}, {}, h(1) = {}",
            seq.c(1)?, seq.c(2)?, seq.c(3)?, seq.haar(1)?
        );
    }

    for eps in [rat(1, 2), rat(1, 10)] {
        let k = minimal_k(&KSearch::HaarEps { eps: eps.clone() })?;
        let (s, seq) = haar_eps_family(&eps, k)?;
        println!(
            "haar_eps eps = {eps}: K = {k}, s_1 = {}, h(1) = {}, h(2) = {}",
            format_rational(&s.get(1)?),
            seq.haar(1)?,
            seq.haar(2)?
        );
    }

    let ks = ks_counterexample();
    let rebuilt = coefficients_from_alpha(AlphaSqRule::Periodic { first: rat(5, 9), even: rat(1, 9), odd: rat(4, 9) })?;
    println!("counterexample from periodic weights: {}", ks.coefficients(10)? == rebuilt.coefficients(10)?);
    Ok(())
}
