//! Runs the whole verification catalog in-process and prints a summary.

use ppav_lab::checks::{run_all, Options, CATALOG};

fn main() {
    let all: Vec<_> = CATALOG.iter().collect();
    for r in run_all(&all, &Options::default()) {
        println!("{:<24} {:?} ({} ms)", r.check_id, r.status, r.elapsed_ms);
    }
}
