//! The sufficient criterion on `s_n`, its consequences, the pivot lemma and
//! the alternation pattern, with exact margins.
//!
//! ```text
//! cargo run --example sufficient_criterion
//! ```

use rwps::criteria::{build_cn, check_lemma3, check_lemma_bounds, check_s_criterion, necessary_condition};
use rwps::families::{standard_s, StandardS};
use rwps::{SSequence, Variant};

fn main() -> rwps::Result<()> {
    for (name, s) in [
        ("s_n = 1/5^n", standard_s(StandardS::Power5)),
        ("s_n = 1/(n+3)!", standard_s(StandardS::Factorial)),
        ("s_n = 1/2^n", SSequence::inverse_power(2)),
    ] {
        println!("{name}");
        let criterion = check_s_criterion(&s, 12)?;
        for check in &criterion.checks {
            println!("  {check}");
        }
        if criterion.overall {
            for check in check_lemma_bounds(&s, 12)?.checks {
                println!("  {check}");
            }
            let pivots = check_lemma3(&build_cn(&s, Variant::First), 8)?;
            println!("  pivot lemma to N = 8: {}", if pivots.overall { "pass" } else { "FAIL" });
        }
        for variant in [Variant::First, Variant::Second] {
            let verdict = necessary_condition(&build_cn(&s, variant), 20)?;
            println!("  {variant:?} variant pattern: {}", serde_json::to_string(&verdict)?);
        }
    }
    Ok(())
}
