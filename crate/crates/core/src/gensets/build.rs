use std::collections::BTreeSet;

use itertools::Itertools;

use super::types::{GenOptions, Generator, GeneratorSet, Prune};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::nilquot::{echelonize, nu_bound, ComponentKey, FreeAlgebraElement, IdealMode, QuotientProvider};
use crate::words::{Alphabet, Letter, Word};

/// Degree guard for ideals without a known nilpotency bound.
pub const MAX_SYMMETRIC_DEGREE: usize = 64;

fn check_rank(rank: u32) -> Result<()> {
    if rank == 0 {
        return Err(Error::InvalidParameter("rank must be at least 1".into()));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("matrix size must be at least 2, got {n}")));
    }
    Ok(())
}

/// Quotient basis words of degrees `1..=max_degree` over `alphabet`,
/// stopping early once a component vanishes (normal words are closed under
/// taking prefixes, so every later component vanishes too).
pub fn quotient_words(
    provider: &dyn QuotientProvider,
    n: usize,
    alphabet: Alphabet,
    mode: IdealMode,
    max_degree: Option<usize>,
) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    let mut d = 1;
    loop {
        if let Some(m) = max_degree {
            if d > m {
                break;
            }
        } else if d > MAX_SYMMETRIC_DEGREE {
            return Err(Error::NotNilpotent(MAX_SYMMETRIC_DEGREE));
        }
        let words = provider.quotient_basis(&ComponentKey::new(n, d, alphabet, mode))?;
        if words.is_empty() {
            break;
        }
        out.extend(words);
        d += 1;
    }
    Ok(out)
}

/// `{s_1..s_N} ∪ ⋃_r D_r s_r` from the quotient words `d` over `N` letters,
/// where `D_r` are the words of `d` using letters up to `r`.
pub fn assemble_b(d: &[Word], rank: u32) -> Vec<Word> {
    let mut out: Vec<Word> = (1..=rank).map(|i| Word::letter(Letter::plain(i))).collect();
    for r in 1..=rank {
        let sr = Word::letter(Letter::plain(r));
        out.extend(d.iter().filter(|w| w.max_index() <= r).map(|w| w.concat(&sr)));
    }
    out
}

/// Least rotation of each word, one per class, sorted. With `up_to_star`,
/// a class and its star class count as one.
pub fn dedup_cyclic(words: &[Word], up_to_star: bool) -> Vec<Word> {
    let classes: BTreeSet<Word> = words
        .iter()
        .map(|w| {
            let c = w.cyclic_normal_form();
            let c = if up_to_star { c.up_to_star() } else { c };
            c.representative().clone()
        })
        .collect();
    classes.into_iter().collect()
}

/// Raw word set `B` for `SL(n)` over `N` letters (before cyclic dedup).
pub fn sln_b_words(provider: &dyn QuotientProvider, n: usize, rank: u32) -> Result<Vec<Word>> {
    check_n(n)?;
    check_rank(rank)?;
    let nu = nu_bound(n).nu;
    let d = quotient_words(provider, n, Alphabet::plain(rank), IdealMode::Plain, Some(nu - 1))?;
    Ok(assemble_b(&d, rank))
}

fn traces(words: Vec<Word>) -> Vec<Generator> {
    words.into_iter().map(Generator::trace).collect()
}

fn prune_sl2(words: Vec<Word>) -> Vec<Word> {
    // for n = 2 every word of B with a repeated index is s_i s_i or
    // s_i s_j s_j, both expressible through shorter traces
    words.into_iter().filter(|w| w.distinct_indices().len() == w.degree()).collect()
}

fn check_prune(group: Group, n: usize, prune: Prune) -> Result<()> {
    if prune == Prune::Sl2Identities && !(group == Group::Sl && n == 2) {
        return Err(Error::Unsupported(format!(
            "sl2-identities pruning applies to group sl with n = 2 only, not {group} with n = {n}"
        )));
    }
    Ok(())
}

/// Cyclically deduplicated trace words for `SL(n)`.
pub fn sln_words(provider: &dyn QuotientProvider, n: usize, rank: u32) -> Result<Vec<Word>> {
    Ok(dedup_cyclic(&sln_b_words(provider, n, rank)?, false))
}

pub fn sln_generators(provider: &dyn QuotientProvider, n: usize, rank: u32, prune: Prune) -> Result<GeneratorSet> {
    check_prune(Group::Sl, n, prune)?;
    let mut words = sln_words(provider, n, rank)?;
    if prune == Prune::Sl2Identities {
        words = prune_sl2(words);
    }
    Ok(GeneratorSet { group: Group::Sl, n, rank, generators: traces(words) })
}

/// The classical `SL(2)` set: traces of single letters, of `g_i g_j` for
/// `i < j` and of `g_i g_j g_k` for `i < j < k` (the last omitted for abelian
/// targets).
pub fn sl2_generators(rank: u32, abelian: bool) -> Result<GeneratorSet> {
    check_rank(rank)?;
    let mut words: Vec<Word> = (1..=rank).map(|i| Word::from_indices(&[i])).collect();
    let max_len = if abelian { 2 } else { 3 };
    for len in 2..=max_len {
        for combo in (1..=rank).combinations(len) {
            words.push(Word::from_indices(&combo));
        }
    }
    words.sort();
    Ok(GeneratorSet { group: Group::Sl, n: 2, rank, generators: traces(words) })
}

pub fn gln_generators(provider: &dyn QuotientProvider, n: usize, rank: u32) -> Result<GeneratorSet> {
    let mut generators = traces(sln_words(provider, n, rank)?);
    generators.extend((1..=rank).map(|index| Generator::DetInverse { index }));
    Ok(GeneratorSet { group: Group::Gl, n, rank, generators })
}

/// Raw `B^s` over the starred alphabet, before dedup.
pub fn sp_b_words(provider: &dyn QuotientProvider, n: usize, rank: u32) -> Result<Vec<Word>> {
    check_n(n)?;
    check_rank(rank)?;
    Group::Sp.check_size(n)?;
    let d = quotient_words(provider, n, Alphabet::starred(rank), IdealMode::Symmetric, None)?;
    Ok(assemble_b(&d, rank))
}

pub fn sp_generators(provider: &dyn QuotientProvider, n: usize, rank: u32) -> Result<GeneratorSet> {
    let words = dedup_cyclic(&sp_b_words(provider, n, rank)?, true);
    Ok(GeneratorSet { group: Group::Sp, n, rank, generators: traces(words) })
}

/// Subset `M` of `b` with `{w - w*}` spanning `{x - x*}` over the span of
/// `b`: the words with at most as many starred as plain letters, plus every
/// remaining word whose star does not lie in `b` (`w - w*` and `w* - w`
/// span the same line).
pub fn build_m(b: &[Word]) -> Vec<Word> {
    let present: BTreeSet<&Word> = b.iter().collect();
    let mut out: BTreeSet<Word> = BTreeSet::new();
    for w in b {
        let stars = w.star_count();
        if 2 * stars <= w.degree() || !present.contains(&w.star()) {
            out.insert(w.clone());
        }
    }
    out.into_iter().collect()
}

fn antisymmetric_parts(words: &[Word]) -> Vec<FreeAlgebraElement> {
    words
        .iter()
        .map(|w| {
            let mut e = FreeAlgebraElement::from_word(w.clone());
            e.add_scaled(&FreeAlgebraElement::from_word(w.star()), &crate::nilquot::coeff(-1))
                .expect("same degree");
            e
        })
        .filter(|e| !e.is_zero())
        .collect()
}

/// Whether `{w - w*: w in m}` spans `{x - x*: x in span(b)}`, checked one
/// degree at a time by exact elimination.
pub fn spans_antisymmetric_part(b: &[Word], m: &[Word]) -> Result<bool> {
    let degrees: BTreeSet<usize> = b.iter().map(Word::degree).collect();
    for d in degrees {
        let of_degree = |ws: &[Word]| ws.iter().filter(|w| w.degree() == d).cloned().collect::<Vec<_>>();
        let target = antisymmetric_parts(&of_degree(b));
        let sub = antisymmetric_parts(&of_degree(m));
        if target.is_empty() {
            continue;
        }
        let basis = echelonize(&sub)?;
        for t in &target {
            if !basis.contains(t)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Words for the `Q_n` arguments: `M` built from the quotient words over the
/// starred alphabet of degree at most `nu_n - 1`.
pub fn so_even_m_words(provider: &dyn QuotientProvider, n: usize, rank: u32) -> Result<Vec<Word>> {
    check_n(n)?;
    check_rank(rank)?;
    Group::SoEven.check_size(n)?;
    let nu = nu_bound(n).nu;
    let d = quotient_words(provider, n, Alphabet::starred(rank), IdealMode::Plain, Some(nu - 1))?;
    Ok(build_m(&d))
}

/// Generators for `O(n)`, `SO(n)`: traces of the `SL(n)` words, and for even
/// `n` additionally `Q_n` over tuples from `M`.
pub fn so_generators(
    provider: &dyn QuotientProvider,
    group: Group,
    n: usize,
    rank: u32,
    ordered_q: bool,
) -> Result<GeneratorSet> {
    if !group.is_orthogonal() {
        return Err(Error::InvalidParameter(format!("{group} is not an orthogonal group")));
    }
    group.check_size(n)?;
    let mut generators = traces(sln_words(provider, n, rank)?);
    if group == Group::SoEven {
        let m = so_even_m_words(provider, n, rank)?;
        let k = n / 2;
        let tuples: Vec<Vec<Word>> = if ordered_q {
            (0..k).map(|_| m.iter().cloned()).multi_cartesian_product().collect()
        } else {
            m.iter().cloned().combinations_with_replacement(k).collect()
        };
        generators.extend(tuples.into_iter().map(|words| Generator::Q { words }));
    }
    Ok(GeneratorSet { group, n, rank, generators })
}

/// Images of every word under the strictly increasing maps
/// `{1..k} -> {1..N}`, deduplicated and sorted.
pub fn lift_generators(b: &[Word], k: u32, target: u32) -> Result<Vec<Word>> {
    if target < k {
        return Err(Error::InvalidParameter(format!("cannot lift from {k} letters to {target}")));
    }
    if let Some(w) = b.iter().find(|w| w.max_index() > k) {
        return Err(Error::LetterOutOfRange { index: w.max_index(), available: k as usize });
    }
    let mut out = BTreeSet::new();
    for f in (1..=target).combinations(k as usize) {
        for w in b {
            out.insert(w.map_indices(|i| f[i as usize - 1]));
        }
    }
    Ok(out.into_iter().collect())
}

/// `SL(n)` trace words for rank `N` obtained by lifting the quotient words
/// from `nu_n - 1` letters and reassembling `B'`; falls back to the direct
/// computation when `N < nu_n - 1`.
pub fn lifted_sln_words(provider: &dyn QuotientProvider, n: usize, rank: u32) -> Result<Vec<Word>> {
    check_n(n)?;
    check_rank(rank)?;
    let nu = nu_bound(n).nu;
    let k = (nu - 1) as u32;
    if rank < k {
        return sln_words(provider, n, rank);
    }
    let d = quotient_words(provider, n, Alphabet::plain(k), IdealMode::Plain, Some(nu - 1))?;
    let lifted = lift_generators(&d, k, rank)?;
    Ok(dedup_cyclic(&assemble_b(&lifted, rank), false))
}

/// Generating set for `group` in canonical order.
pub fn generating_set(
    provider: &dyn QuotientProvider,
    group: Group,
    n: usize,
    rank: u32,
    options: &GenOptions,
) -> Result<GeneratorSet> {
    check_n(n)?;
    check_rank(rank)?;
    group.check_size(n)?;
    check_prune(group, n, options.prune)?;
    let mut set = match group {
        Group::Sl => sln_generators(provider, n, rank, options.prune)?,
        Group::Gl => gln_generators(provider, n, rank)?,
        Group::Sp => sp_generators(provider, n, rank)?,
        Group::O | Group::SoOdd | Group::SoEven => so_generators(provider, group, n, rank, options.ordered_q)?,
    };
    set.generators.sort();
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilquot::QuotientEngine;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ws(items: &[&str]) -> Vec<Word> {
        items.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn sl2_rank2_raw_b() {
        let e = QuotientEngine::new();
        let mut b = sln_b_words(&e, 2, 2).unwrap();
        b.sort();
        assert_eq!(b, ws(&["g1", "g2", "g1 g1", "g1 g2", "g2 g2", "g1 g2 g2"]));
    }

    #[test]
    fn sl2_rank1() {
        let e = QuotientEngine::new();
        assert_eq!(sln_words(&e, 2, 1).unwrap(), ws(&["g1", "g1 g1"]));
        let pruned = sln_generators(&e, 2, 1, Prune::Sl2Identities).unwrap();
        assert_eq!(pruned.trace_words().cloned().collect::<Vec<_>>(), ws(&["g1"]));
    }

    #[test]
    fn sl2_classical_counts() {
        assert_eq!(sl2_generators(3, false).unwrap().len(), 7);
        assert_eq!(sl2_generators(1, false).unwrap().len(), 1);
        assert_eq!(sl2_generators(3, true).unwrap().len(), 6);
        assert!(sl2_generators(0, false).is_err());
    }

    #[test]
    fn pruned_matches_classical() {
        let e = QuotientEngine::new();
        for rank in 1..=5 {
            let pruned = sln_generators(&e, 2, rank, Prune::Sl2Identities).unwrap();
            assert_eq!(pruned, sl2_generators(rank, false).unwrap(), "rank {rank}");
        }
    }

    #[test]
    fn prune_rejected_elsewhere() {
        let e = QuotientEngine::new();
        let opts = GenOptions { prune: Prune::Sl2Identities, ordered_q: false };
        assert!(matches!(generating_set(&e, Group::Sl, 3, 1, &opts), Err(Error::Unsupported(_))));
        assert!(matches!(generating_set(&e, Group::Gl, 2, 1, &opts), Err(Error::Unsupported(_))));
    }

    #[test]
    fn gl_adds_determinants() {
        let e = QuotientEngine::new();
        let set = gln_generators(&e, 2, 1).unwrap();
        assert_eq!(
            set.generators,
            vec![Generator::trace(w("g1")), Generator::trace(w("g1 g1")), Generator::DetInverse { index: 1 }]
        );
    }

    #[test]
    fn build_m_examples() {
        assert_eq!(build_m(&ws(&["g1", "g1*"])), ws(&["g1"]));
        let b = ws(&["g1 g2*", "g1* g2*", "g1 g2"]);
        let m = build_m(&b);
        assert_eq!(m, ws(&["g1 g2", "g1 g2*", "g1* g2*"]));
        assert!(spans_antisymmetric_part(&b, &m).unwrap());
        // the bare star-count subset misses g1* g2* - g2 g1
        assert!(!spans_antisymmetric_part(&b, &ws(&["g1 g2*", "g1 g2"])).unwrap());
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_generators(&ws(&["g1 g2"]), 2, 3).unwrap(), ws(&["g1 g2", "g1 g3", "g2 g3"]));
        assert_eq!(lift_generators(&ws(&["g1"]), 1, 5).unwrap(), ws(&["g1", "g2", "g3", "g4", "g5"]));
        let b = ws(&["g1", "g2 g1", "g1 g2 g2"]);
        let mut sorted = b.clone();
        sorted.sort();
        assert_eq!(lift_generators(&b, 2, 2).unwrap(), sorted);
        assert!(lift_generators(&b, 2, 1).is_err());
    }

    #[test]
    fn lifted_matches_direct_n2() {
        let e = QuotientEngine::new();
        for rank in 1..=5 {
            assert_eq!(lifted_sln_words(&e, 2, rank).unwrap(), sln_words(&e, 2, rank).unwrap(), "rank {rank}");
        }
    }

    #[test]
    fn so_odd_matches_sl() {
        let e = QuotientEngine::new();
        let so = so_generators(&e, Group::SoOdd, 3, 2, false).unwrap();
        let sl = sln_generators(&e, 3, 2, Prune::None).unwrap();
        assert_eq!(so.generators, sl.generators);
    }

    #[test]
    fn so2_rank1() {
        let e = QuotientEngine::new();
        let set = generating_set(&e, Group::SoEven, 2, 1, &GenOptions::default()).unwrap();
        let q: Vec<_> = set.generators.iter().filter(|g| matches!(g, Generator::Q { .. })).collect();
        assert_eq!(q.len(), 2);
        assert_eq!(q[0], &Generator::Q { words: ws(&["g1"]) });
        assert_eq!(q[1], &Generator::Q { words: ws(&["g1 g1*"]) });
    }

    #[test]
    fn sp_star_dedup() {
        let e = QuotientEngine::new();
        let set = sp_generators(&e, 2, 2).unwrap();
        let words: Vec<Word> = set.trace_words().cloned().collect();
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                assert_ne!(a.cyclic_normal_form().up_to_star(), b.cyclic_normal_form().up_to_star());
            }
        }
    }

    #[test]
    fn rank_zero_rejected() {
        let e = QuotientEngine::new();
        assert!(generating_set(&e, Group::Sl, 2, 0, &GenOptions::default()).is_err());
    }
}
