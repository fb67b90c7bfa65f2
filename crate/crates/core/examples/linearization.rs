//! Linearization coefficients `P_m P_n = Σ g(m,n;k) P_k`: single rows, the
//! sign scan that finds the counterexample witness, and a CSV table.
//!
//! ```text
//! cargo run --example linearization
//! ```

use rwps::families::ks_counterexample;
use rwps::linearization::{linearize, linearize_oracle, scan_nonnegativity, LinearizationTable};
use rwps::rational::format_rational;
use rwps::CoefficientSequence;

fn main() -> rwps::Result<()> {
    let ks = ks_counterexample();
    let switched = ks.switch();

    println!("P_3 P_3 for the switched counterexample:");
    for (k, g) in linearize(&switched, 3, 3)? {
        println!("  g(3,3;{k}) = {}", format_rational(&g));
    }
    assert_eq!(linearize(&switched, 3, 3)?, linearize_oracle(&switched, 3, 3)?);

    for (name, seq) in [("counterexample", &ks), ("its switch", &switched)] {
        let verdict = scan_nonnegativity(seq, 10)?;
        println!("{name}: {}", serde_json::to_string(&verdict)?);
    }

    println!("\nChebyshev table up to degree 2:");
    let table = LinearizationTable::build(&CoefficientSequence::chebyshev(), 2)?;
    table.write_csv(std::io::stdout())?;
    Ok(())
}
