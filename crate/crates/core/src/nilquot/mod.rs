//! Homogeneous components of the free algebra modulo the nil ideals.

mod echelon;
mod element;
mod generators;
mod tower;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

pub use echelon::{echelonize, EchelonBasis};
pub use element::{polarize, Coeff, FreeAlgebraElement};
pub(crate) use element::coeff;
pub use generators::{ideal_generators, nu_bound, IdealMode, NilIndexSource, NilIndexTable};
pub use tower::{IdealTower, TowerConfig};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::words::{Alphabet, Word};

/// Identifies one homogeneous quotient component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComponentKey {
    pub n: usize,
    pub alphabet: Alphabet,
    pub degree: usize,
    pub mode: IdealMode,
}

impl ComponentKey {
    pub fn new(n: usize, degree: usize, alphabet: Alphabet, mode: IdealMode) -> Self {
        ComponentKey { n, alphabet, degree, mode }
    }
}

/// Anything that can hand out canonical quotient bases.
pub trait QuotientProvider: Sync {
    fn quotient_basis(&self, key: &ComponentKey) -> Result<Vec<Word>>;
}

/// In-memory provider sharing one tower per ideal and full alphabet.
/// A restricted alphabet reuses the tower of its full alphabet: the ideal is
/// graded by letter content, so restricting letters commutes with taking
/// the quotient.
#[derive(Default)]
pub struct QuotientEngine {
    towers: Mutex<HashMap<TowerConfig, Arc<Mutex<IdealTower>>>>,
    exec: Execution,
}

impl QuotientEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_execution(exec: Execution) -> Self {
        QuotientEngine { towers: Mutex::default(), exec }
    }

    fn tower(&self, config: TowerConfig) -> Result<Arc<Mutex<IdealTower>>> {
        let mut towers = self.towers.lock().expect("tower map poisoned");
        if let Some(t) = towers.get(&config) {
            return Ok(t.clone());
        }
        let t = Arc::new(Mutex::new(IdealTower::new(config)?.with_execution(self.exec)));
        towers.insert(config, t.clone());
        Ok(t)
    }

    pub fn ideal_component(&self, key: &ComponentKey) -> Result<EchelonBasis> {
        check_key(key)?;
        let config = TowerConfig::new(key.n, &full(&key.alphabet), key.mode);
        let tower = self.tower(config)?;
        let mut tower = tower.lock().expect("tower poisoned");
        let basis = tower.echelon_basis(key.degree);
        match key.alphabet.max_letter {
            None => Ok(basis),
            Some(r) => {
                let rules = basis
                    .rows()
                    .iter()
                    .filter(|row| row.leading().unwrap().0.max_index() <= r)
                    .map(|row| {
                        let lead = row.leading().unwrap().0.clone();
                        let mut tail = row.neg();
                        tail.add_term(lead.clone(), Coeff::from_integer(1.into()));
                        (lead, tail)
                    });
                Ok(EchelonBasis::from_rules(key.degree, rules))
            }
        }
    }
}

impl QuotientProvider for QuotientEngine {
    fn quotient_basis(&self, key: &ComponentKey) -> Result<Vec<Word>> {
        check_key(key)?;
        let config = TowerConfig::new(key.n, &full(&key.alphabet), key.mode);
        let tower = self.tower(config)?;
        let mut tower = tower.lock().expect("tower poisoned");
        let words = tower.normal_words(key.degree);
        Ok(match key.alphabet.max_letter {
            None => words.to_vec(),
            Some(r) => words.iter().filter(|w| w.max_index() <= r).cloned().collect(),
        })
    }
}

fn full(alphabet: &Alphabet) -> Alphabet {
    Alphabet { size: alphabet.effective_size(), with_stars: alphabet.with_stars, max_letter: None }
}

fn check_key(key: &ComponentKey) -> Result<()> {
    if key.degree == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    if key.mode == IdealMode::Symmetric && !key.alphabet.with_stars {
        return Err(Error::InvalidParameter("symmetric mode needs the starred alphabet".into()));
    }
    Ok(())
}

/// Words of degree `d` whose classes form the canonical basis of the quotient
/// component: the complement of the leading words of the ideal component.
pub fn quotient_basis(n: usize, d: usize, alphabet: &Alphabet, mode: IdealMode) -> Result<Vec<Word>> {
    QuotientEngine::new().quotient_basis(&ComponentKey::new(n, d, *alphabet, mode))
}

/// Reduced echelon basis of the degree-`d` component of the ideal.
pub fn ideal_component(n: usize, d: usize, alphabet: &Alphabet, mode: IdealMode) -> Result<EchelonBasis> {
    QuotientEngine::new().ideal_component(&ComponentKey::new(n, d, *alphabet, mode))
}

/// Normal form of `e` modulo the span of `basis`.
pub fn reduce(e: &FreeAlgebraElement, basis: &EchelonBasis) -> Result<FreeAlgebraElement> {
    basis.reduce(e)
}

/// Whether every degree-`d` word over `k` letters lies in the ideal.
/// Symmetric mode works over the starred alphabet.
pub fn nilpotency_check(n: usize, d: usize, k: u32, mode: IdealMode) -> Result<bool> {
    let alphabet = match mode {
        IdealMode::Symmetric => Alphabet::starred(k),
        _ => Alphabet::plain(k),
    };
    Ok(quotient_basis(n, d, &alphabet, mode)?.is_empty())
}

/// Whether every product of `d` distinct letters lies in the ideal. Only the
/// multilinear part is tracked, which keeps larger degrees in reach.
pub fn multilinear_nilpotency_check(n: usize, d: usize, mode: IdealMode) -> Result<bool> {
    let mut tower = IdealTower::new(TowerConfig::multilinear(n, d as u32, mode))?;
    let survivors = tower
        .normal_words(d)
        .iter()
        .filter(|w| w.distinct_indices().len() == d)
        .count();
    Ok(survivors == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(quotient_basis(2, 2, &Alphabet::plain(2), IdealMode::Plain).unwrap(), vec![w("g1 g2")]);
        assert_eq!(quotient_basis(2, 1, &Alphabet::plain(3), IdealMode::Plain).unwrap().len(), 3);
        // below the ideal's starting degree nothing is removed
        assert_eq!(quotient_basis(3, 2, &Alphabet::plain(2), IdealMode::Plain).unwrap().len(), 4);
    }

    #[test]
    fn reduce_examples() {
        let basis = ideal_component(2, 2, &Alphabet::plain(2), IdealMode::Plain).unwrap();
        let lead: Vec<_> = basis.leading_words().cloned().collect();
        assert_eq!(lead, vec![w("g1 g1"), w("g2 g1"), w("g2 g2")]);
        let r = reduce(&FreeAlgebraElement::from_word(w("g2 g1")), &basis).unwrap();
        assert_eq!(r, FreeAlgebraElement::from_word(w("g1 g2")).neg());
        assert!(reduce(&FreeAlgebraElement::from_word(w("g1 g1")), &basis).unwrap().is_zero());
        let keep = FreeAlgebraElement::from_word(w("g1 g2"));
        assert_eq!(reduce(&keep, &basis).unwrap(), keep);
    }

    #[test]
    fn nilpotency_examples() {
        assert!(nilpotency_check(2, 3, 3, IdealMode::Plain).unwrap());
        assert!(!nilpotency_check(2, 2, 2, IdealMode::Plain).unwrap());
        assert!(nilpotency_check(2, 2, 2, IdealMode::Commutative).unwrap());
    }

    #[test]
    fn restricted_alphabet_matches_small_alphabet() {
        let engine = QuotientEngine::new();
        for d in 1..=4 {
            let restricted = engine
                .quotient_basis(&ComponentKey::new(3, d, Alphabet::plain(3).restricted(2), IdealMode::Plain))
                .unwrap();
            let small = quotient_basis(3, d, &Alphabet::plain(2), IdealMode::Plain).unwrap();
            assert_eq!(restricted, small, "degree {d}");
        }
    }

    #[test]
    fn multilinear_n2() {
        assert!(multilinear_nilpotency_check(2, 3, IdealMode::Plain).unwrap());
        assert!(!multilinear_nilpotency_check(2, 2, IdealMode::Plain).unwrap());
    }
}
