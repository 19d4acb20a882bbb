use std::time::Instant;
use nestquad::document::build_rule_document;
use nestquad::*;

fn main() {
    let mu = MomentSequence::from_distribution("uniform:-1,1".parse().unwrap());
    let omega = mu.domain().clone();
    let start = Polynomial::from_integers(&[0, 1]);
    let t = Instant::now();
    let built = build_rule_document(&start, &Schedule::NPlusOne { iterations: 4 }, &mu, &omega, 50, "x").unwrap();
    println!("document build: {:?} ({} levels)", t.elapsed(), built.document.levels.len());

    // now isolate the cost inside real_roots(G16, 100)
    let factors = nestquad::document::recover_factors(&built.document).unwrap();
    let g16 = &factors.last().unwrap().1;
    let t = Instant::now();
    let chain = nestquad::sturm::SturmChain::new(g16).unwrap();
    println!("chain build deg16: {:?}", t.elapsed());
    let t = Instant::now();
    use nestquad::interval::Endpoint;
    use nestquad::rational::rat;
    let mut c = 0;
    for i in 0..32 {
        c += chain.count_open(&Endpoint::Finite(rat(i - 16, 16)), &Endpoint::Finite(rat(i - 15, 16)));
    }
    println!("64 chain evals: {:?} (sum {c})", t.elapsed());
    let t = Instant::now();
    let r = real_roots(g16, &omega, 100).unwrap();
    println!("real_roots(G16, 100): {:?} ({})", t.elapsed(), r.len());
    let t = Instant::now();
    let r2 = real_roots(g16, &omega, 50).unwrap();
    println!("real_roots(G16, 50): {:?} ({})", t.elapsed(), r2.len());
}
