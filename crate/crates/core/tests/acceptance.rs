use std::time::Instant;

use fdim_core::acceptance::CRITERIA;

fn main() {
    let mut failed = 0;
    for &(id, _, _) in CRITERIA.iter() {
        let start = Instant::now();
        let outcome = fdim_core::acceptance::run_criterion(id).expect("criterion exists");
        println!("{outcome} [{:.1}s]", start.elapsed().as_secs_f64());
        failed += usize::from(!outcome.passed);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
