use lincbo::{
    all_closed_subsets_naive, compute_basis, dg_basis_bruteforce, gen_random, AlgorithmId,
    FormalContext,
};

fn contexts() -> impl Iterator<Item = FormalContext> {
    (0..60u64).map(|seed| {
        let ny = 3 + (seed % 10) as usize;
        let nx = 5 + (seed * 7 % 26) as usize;
        let d = 1 + (seed as usize % ny.max(2)).min(ny - 1);
        gen_random(nx, ny, d, seed).unwrap()
    })
}

#[test]
fn every_algorithm_matches_the_oracle() {
    for ctx in contexts() {
        let expected = dg_basis_bruteforce(&ctx).unwrap();
        let mut expected_set = expected.implications().to_vec();
        expected_set.sort_by(|a, b| a.premise.cmp(&b.premise));
        let intents = all_closed_subsets_naive(&ctx, 20).unwrap().len() as u64;
        for alg in AlgorithmId::ALL {
            let r = compute_basis(&ctx, alg);
            let mut got = r.basis.implications().to_vec();
            got.sort_by(|a, b| a.premise.cmp(&b.premise));
            assert_eq!(got, expected_set, "{alg} on {}", ctx.name());
            assert_eq!(r.intent_count, intents, "{alg} on {}", ctx.name());
        }
    }
}

#[test]
fn lectic_drivers_emit_the_same_sequence() {
    for ctx in contexts() {
        let reference = compute_basis(&ctx, AlgorithmId::LinCbO).basis;
        for alg in AlgorithmId::ALL {
            let r = compute_basis(&ctx, alg);
            assert_eq!(r.basis.implications(), reference.implications(), "{alg}");
        }
    }
}

#[test]
fn larger_random_context_agrees() {
    let ctx = gen_random(200, 40, 6, 11).unwrap();
    let reference = compute_basis(&ctx, AlgorithmId::LinCbO);
    assert!(reference.basis.len() > 10);
    for alg in AlgorithmId::ALL {
        let r = compute_basis(&ctx, alg);
        assert_eq!(
            r.basis.implications(),
            reference.basis.implications(),
            "{alg}"
        );
        assert_eq!(r.intent_count, reference.intent_count, "{alg}");
    }
}
