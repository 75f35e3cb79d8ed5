// Probe: normal-form counts for relation variants.
use psl2z::patterns::rewrite::{knuth_bendix, count_irreducible, Rule};

fn count(rules: Vec<(Vec<u8>, Vec<u8>)>) -> (usize, bool, bool) {
    let rules: Vec<Rule> = rules.into_iter().map(|(lhs, rhs)| Rule { lhs, rhs }).collect();
    let (rs, confluent) = knuth_bendix(rules, 512);
    let (n, saturated) = count_irreducible(&rs, 64);
    (n, saturated, confluent)
}

#[test]
fn probe() {
    let a = |n: usize| vec![0u8; n];
    let b = |n: usize| vec![1u8; n];
    // cube: A6, B6, B3->A3, BAB->ABA
    println!("cube3: {:?}", count(vec![(a(6), vec![]), (b(6), vec![]), (b(3), a(3)), (vec![1,0,1], vec![0,1,0])]));
    // cube + (ABA)^2 = 1
    println!("cube3+X2: {:?}", count(vec![(a(6), vec![]), (b(6), vec![]), (b(3), a(3)), (vec![1,0,1], vec![0,1,0]), (vec![0,1,0,0,1,0], vec![])]));
    // square: A6, B6, B2->A2, BAB->ABA
    println!("square: {:?}", count(vec![(a(6), vec![]), (b(6), vec![]), (b(2), a(2)), (vec![1,0,1], vec![0,1,0])]));
    // square + (ABA)^2
    println!("square+X2: {:?}", count(vec![(a(6), vec![]), (b(6), vec![]), (b(2), a(2)), (vec![1,0,1], vec![0,1,0]), (vec![0,1,0,0,1,0], vec![])]));
}
