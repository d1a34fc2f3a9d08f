//! The rewriting tower against two independent constructions of the ideal:
//! direct enumeration of flanked polarized powers, and brute-force expansion
//! of `(c_1 w_1 + ... + c_k w_k)^n` at many rational points.

use std::collections::BTreeMap;

use charvar::nilquot::{
    echelonize, ideal_component, ideal_generators, quotient_basis, Coeff, FreeAlgebraElement, IdealMode,
    IdealTower, TowerConfig,
};
use charvar::exec::Execution;
use charvar::words::{words_of_degree, Alphabet, Word};
use num_bigint::BigInt;
use proptest::prelude::*;

fn leading(basis: &charvar::nilquot::EchelonBasis) -> Vec<Word> {
    basis.leading_words().cloned().collect()
}

fn direct_quotient(n: usize, d: usize, alphabet: &Alphabet, mode: IdealMode) -> Vec<Word> {
    let gens = ideal_generators(n, d, alphabet, mode).unwrap();
    let basis = echelonize(&gens).unwrap();
    words_of_degree(alphabet, d).into_iter().filter(|w| !basis.is_leading(w)).collect()
}

#[test]
fn tower_matches_direct_plain() {
    for (n, letters, max_d) in [(2, 1, 4), (2, 2, 4), (2, 3, 3), (3, 1, 5), (3, 2, 5), (4, 2, 5)] {
        let alphabet = Alphabet::plain(letters);
        for d in 1..=max_d {
            assert_eq!(
                quotient_basis(n, d, &alphabet, IdealMode::Plain).unwrap(),
                direct_quotient(n, d, &alphabet, IdealMode::Plain),
                "n={n} letters={letters} d={d}"
            );
        }
    }
}

#[test]
fn tower_matches_direct_symmetric() {
    for (n, letters, max_d) in [(2, 1, 3), (2, 2, 3), (4, 1, 4), (4, 2, 3)] {
        let alphabet = Alphabet::starred(letters);
        for d in 1..=max_d {
            assert_eq!(
                quotient_basis(n, d, &alphabet, IdealMode::Symmetric).unwrap(),
                direct_quotient(n, d, &alphabet, IdealMode::Symmetric),
                "n={n} letters={letters} d={d}"
            );
        }
    }
}

#[test]
fn tower_matches_direct_commutative() {
    for (n, letters, max_d) in [(2, 2, 3), (3, 2, 4)] {
        let alphabet = Alphabet::plain(letters);
        for d in 1..=max_d {
            assert_eq!(
                quotient_basis(n, d, &alphabet, IdealMode::Commutative).unwrap(),
                direct_quotient(n, d, &alphabet, IdealMode::Commutative),
                "n={n} letters={letters} d={d}"
            );
        }
    }
}

#[test]
fn plain_mode_over_starred_alphabet() {
    let alphabet = Alphabet::starred(1);
    for d in 1..=4 {
        assert_eq!(
            quotient_basis(3, d, &alphabet, IdealMode::Plain).unwrap(),
            direct_quotient(3, d, &alphabet, IdealMode::Plain),
            "d={d}"
        );
    }
}

#[test]
fn component_rows_match_direct() {
    let alphabet = Alphabet::plain(2);
    for d in 3..=4 {
        let tower = ideal_component(3, d, &alphabet, IdealMode::Plain).unwrap();
        let direct = echelonize(&ideal_generators(3, d, &alphabet, IdealMode::Plain).unwrap()).unwrap();
        assert_eq!(tower, direct, "d={d}");
    }
}

#[test]
fn n3_degree3_two_letters_regression() {
    // the ideal begins at degree 3; its leading words are the two cubes plus
    // the pivots of the mixed relations
    let q = quotient_basis(3, 3, &Alphabet::plain(2), IdealMode::Plain).unwrap();
    assert_eq!(q.len(), 4);
    assert_eq!(ideal_component(3, 3, &Alphabet::plain(2), IdealMode::Plain).unwrap().dim(), 4);
}

#[test]
fn nilpotency_indices_small() {
    // n = 2: the quotient dies exactly at degree 3
    assert!(!quotient_basis(2, 2, &Alphabet::plain(3), IdealMode::Plain).unwrap().is_empty());
    assert!(quotient_basis(2, 3, &Alphabet::plain(3), IdealMode::Plain).unwrap().is_empty());
    // n = 3: the multilinear part still survives at degree 5
    assert!(!charvar::nilquot::multilinear_nilpotency_check(3, 5, IdealMode::Plain).unwrap());
}

#[test]
fn sequential_and_parallel_agree() {
    let config = TowerConfig::new(3, &Alphabet::plain(3), IdealMode::Plain);
    let mut a = IdealTower::new(config).unwrap().with_execution(Execution::Sequential);
    let mut b = IdealTower::new(config).unwrap().with_execution(Execution::Parallel);
    for d in 1..=5 {
        assert_eq!(a.normal_words(d), b.normal_words(d));
        assert_eq!(a.rules(d), b.rules(d));
    }
}

/// All products `x_1 ... x_n` with `x = Σ c_i w_i`, collected.
fn power_expansion(words: &[Word], coeffs: &[i64], n: usize) -> Vec<FreeAlgebraElement> {
    let mut by_degree: BTreeMap<usize, Vec<(Word, Coeff)>> = BTreeMap::new();
    for (w, &c) in words.iter().zip(coeffs) {
        by_degree.entry(w.degree()).or_default().push((w.clone(), Coeff::from_integer(BigInt::from(c))));
    }
    // (Σ c_i w_i)^n, split into homogeneous parts
    let mut parts: BTreeMap<usize, BTreeMap<Word, Coeff>> = BTreeMap::new();
    let all: Vec<(Word, Coeff)> = by_degree.into_values().flatten().collect();
    let mut stack: Vec<(Option<Word>, Coeff, usize)> = vec![(None, Coeff::from_integer(1.into()), 0)];
    while let Some((w, c, k)) = stack.pop() {
        if k == n {
            let w = w.expect("n >= 1");
            let e = parts.entry(w.degree()).or_default();
            let entry = e.entry(w).or_insert_with(|| Coeff::from_integer(0.into()));
            *entry += c;
            continue;
        }
        for (v, cv) in &all {
            let next = match &w {
                None => v.clone(),
                Some(w) => w.concat(v),
            };
            stack.push((Some(next), &c * cv, k + 1));
        }
    }
    parts
        .into_iter()
        .map(|(d, terms)| FreeAlgebraElement::from_terms(d, terms.into_iter().filter(|(_, c)| c != &Coeff::from_integer(0.into()))).unwrap())
        .collect()
}

#[test]
fn brute_force_power_oracle_n2() {
    // every homogeneous part of (Σ c_i w_i)^2, flanked, lies in the ideal, and
    // enough sample points span the whole component; the w_i must reach
    // degree d - 1, since squares of mixed-degree sums contribute u v + v u
    let n = 2;
    for (letters, d) in [(2u32, 2usize), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let alphabet = Alphabet::plain(letters);
        let pool: Vec<Word> = (1..=d + 1 - n).flat_map(|k| words_of_degree(&alphabet, k)).collect();
        let mut oracle: Vec<FreeAlgebraElement> = Vec::new();
        let points = (d + 1) as i64;
        let mut idx = vec![0i64; pool.len()];
        // a deterministic family of small integer coefficient vectors
        for t in 1..=(points * pool.len() as i64 * 3) {
            for (i, c) in idx.iter_mut().enumerate() {
                *c = ((t * (i as i64 + 1) * (i as i64 + 3) + t * t) % 11) - 5;
            }
            for part in power_expansion(&pool, &idx, n) {
                let inner = part.degree();
                if inner > d {
                    continue;
                }
                let outer = d - inner;
                for a in 0..=outer {
                    let lefts: Vec<Option<Word>> =
                        if a == 0 { vec![None] } else { words_of_degree(&alphabet, a).into_iter().map(Some).collect() };
                    let rights: Vec<Option<Word>> = if outer == a {
                        vec![None]
                    } else {
                        words_of_degree(&alphabet, outer - a).into_iter().map(Some).collect()
                    };
                    for l in &lefts {
                        for r in &rights {
                            let mut e = part.clone();
                            if let Some(l) = l {
                                e = e.left_mul_word(l);
                            }
                            if let Some(r) = r {
                                e = e.right_mul_word(r);
                            }
                            if !e.is_zero() {
                                oracle.push(e);
                            }
                        }
                    }
                }
            }
        }
        let oracle = echelonize(&oracle).unwrap();
        let tower = ideal_component(n, d, &alphabet, IdealMode::Plain).unwrap();
        for row in tower.rows() {
            assert!(oracle.contains(row).unwrap(), "letters={letters} d={d}: {row} not in oracle span");
        }
        for row in oracle.rows() {
            assert!(tower.contains(row).unwrap(), "letters={letters} d={d}: {row} not in tower span");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generator_order_is_irrelevant(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut gens = ideal_generators(3, 4, &Alphabet::plain(2), IdealMode::Plain).unwrap();
        let reference = leading(&echelonize(&gens).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        gens.shuffle(&mut rng);
        prop_assert_eq!(leading(&echelonize(&gens).unwrap()), reference);
    }

    #[test]
    fn leading_words_grow_with_generators(take in 0usize..40) {
        let gens = ideal_generators(3, 4, &Alphabet::plain(2), IdealMode::Plain).unwrap();
        let k = take.min(gens.len());
        let small = leading(&echelonize(&gens[..k]).unwrap());
        let big = leading(&echelonize(&gens).unwrap());
        prop_assert!(small.iter().all(|w| big.contains(w)));
    }

    #[test]
    fn normal_form_is_idempotent_and_in_span(indices in proptest::collection::vec(1u32..=2, 4)) {
        let basis = ideal_component(3, 4, &Alphabet::plain(2), IdealMode::Plain).unwrap();
        let e = FreeAlgebraElement::from_word(Word::from_indices(&indices));
        let r = basis.reduce(&e).unwrap();
        prop_assert_eq!(basis.reduce(&r).unwrap(), r.clone());
        let mut diff = e.clone();
        diff.add_scaled(&r, &Coeff::from_integer((-1).into())).unwrap();
        prop_assert!(basis.contains(&diff).unwrap());
        for w in r.terms().keys() {
            prop_assert!(!basis.is_leading(w));
        }
    }
}
