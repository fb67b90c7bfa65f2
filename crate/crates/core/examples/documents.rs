//! Sequence documents: the JSON form every command reads and writes.
//!
//! ```text
//! cargo run --example documents
//! ```

use rwps::document::SequenceDocument;
use rwps::families::{geometric_family, ks_counterexample};
use rwps::rat;

fn main() -> rwps::Result<()> {
    let (_, geo) = geometric_family(&rat(1, 3), 5)?;
    let tampered = ks_counterexample().with_prefix(vec![rat(5, 9), rat(1, 5)]).switch();
    for seq in [geo, tampered] {
        let text = SequenceDocument::from_sequence(&seq).to_json();
        println!("{text}");
        let back = SequenceDocument::from_json(&text)?.to_sequence()?;
        assert_eq!(back.coefficients(8)?, seq.coefficients(8)?);
    }
    let from_text = SequenceDocument::from_json(r#"{"family": "power5", "params": {"variant": "second"}}"#)?;
    println!("c_1 of power5 second variant: {}", from_text.to_sequence()?.c(1)?);
    Ok(())
}
