//! Run every verification item and report its outcome and wall time.
//!
//! ```text
//! cargo run --release --example verify_paper
//! ```

use std::time::Instant;

use rwps::verify::{run_item, VerifyOptions, ITEM_COUNT};

fn main() -> rwps::Result<()> {
    let options = VerifyOptions::default();
    let mut all = true;
    for id in 1..=ITEM_COUNT {
        let start = Instant::now();
        let item = run_item(id, &options)?;
        println!("{}  ({:.2?})", item.line(), start.elapsed());
        all &= item.passed;
    }
    println!("{}", if all { "all items passed" } else { "some items failed" });
    Ok(())
}
