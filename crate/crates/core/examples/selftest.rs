//! Runs the oracle suites, then again with a deliberately wrong square-root branch.

use rectified_lorentz::optics::BranchRule;
use rectified_lorentz::selftest::{run_selftest, SelftestOptions};

fn main() {
    for branch in [BranchRule::Decaying, BranchRule::Flipped] {
        println!("branch rule {branch:?}");
        for c in run_selftest(&SelftestOptions { branch, ..Default::default() }) {
            let status = if c.passed { "PASS" } else { "FAIL" };
            println!("  {status} {:<45} worst {:.2e} (tol {:.0e})", c.name, c.worst, c.tolerance);
        }
    }
}
