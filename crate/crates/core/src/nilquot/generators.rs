use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::element::{coeff, polarize, FreeAlgebraElement};
use crate::error::{Error, Result};
use crate::words::{words_of_degree, Alphabet, Word};

/// Which two-sided ideal of the free algebra is quotiented out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdealMode {
    /// Generated by `z^n` for all `z`.
    Plain,
    /// Generated by `(x + x*)^(n/2)` for all `x`; `n` even.
    Symmetric,
    /// `Plain` plus the letter commutators `ab - ba`.
    Commutative,
}

impl IdealMode {
    /// Number of arguments of the polarized power generators.
    pub fn power(self, n: usize) -> Result<usize> {
        match self {
            IdealMode::Symmetric if n % 2 == 1 => Err(Error::OddSymmetric(n)),
            IdealMode::Symmetric => Ok(n / 2),
            _ => Ok(n),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IdealMode::Plain => "plain",
            IdealMode::Symmetric => "symmetric",
            IdealMode::Commutative => "commutative",
        }
    }
}

impl fmt::Display for IdealMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdealMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(IdealMode::Plain),
            "symmetric" => Ok(IdealMode::Symmetric),
            "commutative" => Ok(IdealMode::Commutative),
            other => Err(Error::InvalidParameter(format!("unknown ideal mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NilIndexSource {
    /// `n(n+1)/2`, proved for `n <= 4`.
    Kuzmin,
    /// The general upper bound `n^2`.
    Razmyslov,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilIndexTable {
    pub n: usize,
    pub nu: usize,
    pub source: NilIndexSource,
}

impl NilIndexTable {
    /// Whether `nu` is the exact nilpotency index rather than an upper bound.
    pub fn is_exact(&self) -> bool {
        self.source == NilIndexSource::Kuzmin
    }
}

/// Nilpotency bound for algebras of nil index `n`.
pub fn nu_bound(n: usize) -> NilIndexTable {
    assert!(n >= 1, "nil index must be positive");
    if n <= 4 {
        NilIndexTable { n, nu: n * (n + 1) / 2, source: NilIndexSource::Kuzmin }
    } else {
        NilIndexTable { n, nu: n * n, source: NilIndexSource::Razmyslov }
    }
}

/// Homogeneous degree-`d` spanning set of the ideal component, by direct
/// enumeration: every polarized power `F(w_1, ..., w_m)` (sum over all
/// arrangements of a multiset of `m` words, each word symmetrized in
/// symmetric mode) flanked by every pair of words `v0`, `v1` (possibly empty)
/// of total degree `d`. Commutative mode adds flanked letter commutators.
///
/// Output is deduplicated up to scaling and sorted; exponential in `d`, so
/// meant for small components and cross-checks.
pub fn ideal_generators(
    n: usize,
    d: usize,
    alphabet: &Alphabet,
    mode: IdealMode,
) -> Result<Vec<FreeAlgebraElement>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let m = mode.power(n)?;
    let mut seen: BTreeSet<Vec<(Word, super::element::Coeff)>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |e: FreeAlgebraElement| {
        if e.is_zero() {
            return;
        }
        let e = e.normalized();
        let key: Vec<_> = e.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        if seen.insert(key) {
            out.push(e);
        }
    };

    let flanks = |outer: usize| -> Vec<(Option<Word>, Option<Word>)> {
        let mut v = Vec::new();
        for a in 0..=outer {
            let left: Vec<Option<Word>> = if a == 0 {
                vec![None]
            } else {
                words_of_degree(alphabet, a).into_iter().map(Some).collect()
            };
            let right: Vec<Option<Word>> = if outer - a == 0 {
                vec![None]
            } else {
                words_of_degree(alphabet, outer - a).into_iter().map(Some).collect()
            };
            for l in &left {
                for r in &right {
                    v.push((l.clone(), r.clone()));
                }
            }
        }
        v
    };
    let flank = |core: &FreeAlgebraElement, l: &Option<Word>, r: &Option<Word>| {
        let mut e = core.clone();
        if let Some(l) = l {
            e = e.left_mul_word(l);
        }
        if let Some(r) = r {
            e = e.right_mul_word(r);
        }
        e
    };

    for inner in m.max(1)..=d {
        let pool: Vec<Word> = (1..=inner + 1 - m)
            .flat_map(|k| words_of_degree(alphabet, k))
            .collect();
        let mut cores = Vec::new();
        for combo in pool.iter().combinations_with_replacement(m) {
            if combo.iter().map(|w| w.degree()).sum::<usize>() != inner {
                continue;
            }
            let args: Vec<FreeAlgebraElement> = combo
                .iter()
                .map(|w| {
                    let e = FreeAlgebraElement::from_word((*w).clone());
                    if mode == IdealMode::Symmetric {
                        e.symmetrized()
                    } else {
                        e
                    }
                })
                .collect();
            cores.push(polarize(&args));
        }
        for (l, r) in flanks(d - inner) {
            for core in &cores {
                push(flank(core, &l, &r));
            }
        }
    }

    if mode == IdealMode::Commutative && d >= 2 {
        let letters = alphabet.letters();
        let mut comms = Vec::new();
        for (i, a) in letters.iter().enumerate() {
            for b in &letters[i + 1..] {
                let ab = Word::new(vec![*a, *b])?;
                let ba = Word::new(vec![*b, *a])?;
                comms.push(FreeAlgebraElement::from_terms(2, [(ab, coeff(1)), (ba, coeff(-1))])?);
            }
        }
        for (l, r) in flanks(d - 2) {
            for c in &comms {
                push(flank(c, &l, &r));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn nu_values() {
        assert_eq!(nu_bound(2).nu, 3);
        assert_eq!(nu_bound(3).nu, 6);
        assert_eq!(nu_bound(4).nu, 10);
        let t = nu_bound(5);
        assert_eq!(t.nu, 25);
        assert_eq!(t.source, NilIndexSource::Razmyslov);
    }

    #[test]
    fn n2_degree2_two_letters() {
        let gens = ideal_generators(2, 2, &Alphabet::plain(2), IdealMode::Plain).unwrap();
        assert_eq!(gens.len(), 3);
        let expect_sum = FreeAlgebraElement::from_terms(2, [(w("g1 g2"), coeff(1)), (w("g2 g1"), coeff(1))]).unwrap();
        assert!(gens.contains(&FreeAlgebraElement::from_word(w("g1 g1"))));
        assert!(gens.contains(&FreeAlgebraElement::from_word(w("g2 g2"))));
        assert!(gens.contains(&expect_sum));
        assert!(gens.iter().all(|g| g.degree() == 2));
    }

    #[test]
    fn n2_degree3_one_letter() {
        let gens = ideal_generators(2, 3, &Alphabet::plain(1), IdealMode::Plain).unwrap();
        assert_eq!(gens, vec![FreeAlgebraElement::from_word(w("g1 g1 g1"))]);
    }

    #[test]
    fn symmetric_n2_degree2_one_letter() {
        let gens = ideal_generators(2, 2, &Alphabet::starred(1), IdealMode::Symmetric).unwrap();
        let el = |a: &str, b: &str| {
            FreeAlgebraElement::from_terms(2, [(w(a), coeff(1)), (w(b), coeff(1))]).unwrap().normalized()
        };
        for e in [
            el("g1 g1", "g1* g1"),
            el("g1 g1*", "g1* g1*"),
            el("g1 g1", "g1 g1*"),
            el("g1* g1", "g1* g1*"),
            el("g1 g1", "g1* g1*"),
        ] {
            assert!(gens.contains(&e), "missing {e}");
        }
        // g1 g1* is its own star, so (x + x*) contributes 2 g1 g1*
        assert!(gens.contains(&FreeAlgebraElement::from_word(w("g1 g1*"))));
        assert!(gens.iter().all(|g| g.degree() == 2));
    }

    #[test]
    fn odd_symmetric_rejected() {
        assert_eq!(
            ideal_generators(3, 3, &Alphabet::starred(1), IdealMode::Symmetric),
            Err(Error::OddSymmetric(3))
        );
    }

    #[test]
    fn below_n_is_empty() {
        let gens = ideal_generators(3, 2, &Alphabet::plain(2), IdealMode::Plain).unwrap();
        assert!(gens.is_empty());
    }
}
