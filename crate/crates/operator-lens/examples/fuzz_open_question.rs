//! Randomized search for a counterexample to an open implication.
//!
//! Question: if T^p is normal and Re T^q is positive semidefinite for coprime
//! p and q, with ascent(T) <= 1, must T be normal? The search draws biased
//! random matrices near the hypothesis boundary, scores each trial, and
//! reports any matrix that satisfies all hypotheses while staying far from
//! normal. The log is fully deterministic for a given seed.
//!
//! ```sh
//! cargo run --example fuzz_open_question
//! ```

use operator_lens::theorems::question_fuzzer;
use operator_lens::tol::ToleranceContext;

fn main() {
    let ctx = ToleranceContext::default();
    let report = question_fuzzer(2, 3, 4, 300, 20260823, &ctx).expect("fuzzer");
    print!("{}", report.log);
    println!();
    if report.candidates.is_empty() {
        println!(
            "no counterexample candidate in {} trials (as expected)",
            report.trials
        );
    } else {
        println!("ATTENTION: {} candidate(s) recorded", report.candidates.len());
    }
    println!("most interesting trials:");
    for s in report.best.iter().take(3) {
        println!(
            "  trial {} score {:.3e} normality residual {:.3e}",
            s.trial, s.score, s.normality_residual
        );
    }
}
