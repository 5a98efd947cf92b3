mod support;

use cliquemdl::{
    clique_codelength, clique_star_codelength, enumerate_all_cliques, log2_binomial, NullModel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::oracle::{exact_binomial, exact_binomial_small, log2_big};

#[test]
fn log2_binomial_exact_for_small_arguments() {
    for a in 0..=60u64 {
        for b in 0..=a {
            let exact = log2_big(&exact_binomial_small(a, b));
            let got = log2_binomial(a, b).unwrap().0;
            assert!(
                (got - exact).abs() <= 1e-12 * exact.max(1.0),
                "C({a},{b}): {got} vs {exact}"
            );
        }
    }
}

#[test]
fn factorised_oracle_agrees_with_recurrence() {
    for (a, b) in [(60, 30), (100, 7), (1000, 500), (997, 3)] {
        assert_eq!(exact_binomial(a, b), exact_binomial_small(a, b));
    }
}

#[test]
fn log2_binomial_relative_error_up_to_a_million() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB1_0A11);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let a = rng.random_range(0..=1_000_000u64);
        let b = rng.random_range(0..=a);
        let exact = log2_big(&exact_binomial(a, b));
        let got = log2_binomial(a, b).unwrap().0;
        let err = if exact == 0.0 {
            got.abs()
        } else {
            ((got - exact) / exact).abs()
        };
        worst = worst.max(err);
        assert!(err <= 1e-9, "C({a},{b}): {got} vs {exact}");
    }
    eprintln!("worst relative error: {worst:e}");
}

#[test]
fn clique_star_lower_bounds_every_clique_codeword() {
    let models = [
        NullModel::UniformGivenN,
        NullModel::Gnm,
        NullModel::gnp(0.3).unwrap(),
    ];
    for seed in 0..200u64 {
        let n = (seed % 7) as usize;
        let p = [0.3, 0.5, 0.8][(seed % 3) as usize];
        let g = NullModel::gnp(p).unwrap().sample(n, None, seed).unwrap();
        for model in models {
            let star = clique_star_codelength(&g, model).unwrap().0;
            let cliques = enumerate_all_cliques(&g).unwrap();
            for c in &cliques {
                let single = clique_codelength(&g, c, model).unwrap().total.0;
                assert!(star <= single + 1e-9);
                if cliques.len() > 1 {
                    assert!(star < single);
                }
            }
        }
    }
}
