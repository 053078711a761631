use continua::suites::{grid_sets, r1_agreement, R1Corpus};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let sets = grid_sets(12, 4);
    println!("grid_sets: {} sets in {:.2}s", sets.len(), t0.elapsed().as_secs_f64());
    let t1 = Instant::now();
    let corpus = R1Corpus::new(sets);
    println!("corpus precompute: {:.2}s", t1.elapsed().as_secs_f64());
    let t2 = Instant::now();
    let mut positives = 0u64;
    let n = corpus.sets.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if corpus.decider_verdict(i, j) {
                positives += 1;
            }
        }
    }
    println!("pair loop only: {} positives in {:.2}s", positives, t2.elapsed().as_secs_f64());
    let t3 = Instant::now();
    let stats = r1_agreement(&corpus, 0xC3, 1000);
    println!(
        "full agreement: pairs={} positives={} disagreements={} witness_failures={} in {:.2}s",
        stats.pairs, stats.positives, stats.disagreements, stats.witness_failures,
        t3.elapsed().as_secs_f64()
    );
}
