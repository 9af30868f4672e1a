//! One line per acceptance criterion, then a single verdict.

use rootflow::claims::{self, ClaimOptions, CLAIM_COUNT};

#[test]
fn acceptance() {
    let opts = ClaimOptions::default();
    let mut failed = Vec::new();
    println!();
    for id in 1..=CLAIM_COUNT {
        let r = claims::run_claim(id, &opts).expect("claim id in range");
        println!(
            "[{}] {:>2} {:<26} {:>8.2}s/{:<5}  measured={}  tolerance={}",
            if r.pass { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.runtime_s,
            r.budget_s,
            r.measured,
            r.tolerance,
        );
        if !r.pass {
            failed.push(r.key());
        }
    }
    println!("{} of {CLAIM_COUNT} criteria pass", CLAIM_COUNT - failed.len());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
