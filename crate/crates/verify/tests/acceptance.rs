//! Runs every acceptance criterion once with the default seed and sizes,
//! printing one line per criterion. Exits nonzero if any criterion fails.

use valdim_verify::{suites, Config};

fn main() {
    let cfg = Config::default();
    let mut failed = 0;
    for id in 1..=7 {
        let report = suites::criterion(id, &cfg).expect("known criterion");
        println!("{report}");
        for e in &report.examples {
            println!("    failure: {e}");
        }
        for n in &report.notes {
            println!("    note: {n}");
        }
        if !report.passed() {
            failed += 1;
        }
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
