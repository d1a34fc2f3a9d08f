//! Degree-by-degree rewriting system for the ideal.
//!
//! For each degree `d` the tower stores the normal words (the canonical
//! quotient basis `D`) and the new rewriting rules `lead -> tail`, where
//! `lead` is the greatest word of a reduced ideal element and every word of
//! `tail` is normal. Deglex is compatible with multiplication on both sides,
//! so the set of leading words is closed under flanking and the normal words
//! are closed under taking subwords. Degree `d` is built from three sources
//! of relations, all reduced against the rules of lower degree:
//!
//! * overlaps `a * tail2 - tail1 * b` of two lower rules `a x -> tail1`,
//!   `x b -> tail2`,
//! * polarized powers `F(u_1, ..., u_m)` of normal words (symmetrized in
//!   symmetric mode) of total degree `d`,
//! * letter commutators in degree 2 (commutative mode).
//!
//! Reduction modulo the lower rules goes through the prefix: for `w = u s`,
//! `u` is replaced by its (memoized) normal form and each `v s` with `v`
//! normal is looked up in a per-degree table. That table is filled in
//! increasing word order, which is exactly the order its entries depend on
//! each other.
//!
//! Every relation is homogeneous in the multiset of generator indices, so the
//! final elimination splits into independent blocks that run in parallel.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::{One, Zero};

use super::echelon::{EchelonBasis, RowReducer, SparseRow};
use super::element::{coeff, polarize, Coeff, FreeAlgebraElement};
use super::generators::IdealMode;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::words::{words_of_degree, Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TowerConfig {
    pub n: usize,
    pub letters: u32,
    pub with_stars: bool,
    pub mode: IdealMode,
    /// Only track words using each generator index at most this often.
    /// `Some(1)` restricts to the multilinear part.
    pub max_multiplicity: Option<u8>,
}

impl TowerConfig {
    pub fn new(n: usize, alphabet: &Alphabet, mode: IdealMode) -> Self {
        TowerConfig {
            n,
            letters: alphabet.size,
            with_stars: alphabet.with_stars,
            mode,
            max_multiplicity: None,
        }
    }

    pub fn multilinear(n: usize, letters: u32, mode: IdealMode) -> Self {
        TowerConfig {
            n,
            letters,
            with_stars: mode == IdealMode::Symmetric,
            mode,
            max_multiplicity: Some(1),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet { size: self.letters, with_stars: self.with_stars, max_letter: None }
    }
}

/// Sparse vector over the candidates or normal words of one degree.
type Image = Arc<Vec<(u32, Coeff)>>;

#[derive(Default)]
struct Level {
    normal: Vec<Word>,
    rules: HashMap<Word, FreeAlgebraElement>,
    /// Words with no lower lead as a subword, ascending.
    candidates: Vec<Word>,
    cand_index: HashMap<Word, u32>,
    /// Reduction of `v s` modulo lower rules over `candidates`, at
    /// `v_index * letters + letter_position` (`v` normal of one degree less).
    pairs: Vec<Image>,
    /// Final normal form of each candidate over `normal`.
    cand_nf: Vec<Image>,
    memo: DashMap<Word, Image>,
}

pub struct IdealTower {
    config: TowerConfig,
    power: usize,
    letters: Vec<Letter>,
    /// `levels[d]` for `d >= 1`; `levels[0]` is a placeholder.
    levels: Vec<Level>,
    /// For each rule degree, proper prefixes of rule leads.
    prefix_index: Vec<HashMap<Vec<Letter>, Vec<Word>>>,
    exec: Execution,
}

enum Job<'a> {
    Overlap { left: Word, lead1: &'a Word, lead2: &'a Word, overlap: usize },
    Power(Vec<&'a Word>),
    Commutator(Letter, Letter),
}

impl IdealTower {
    pub fn new(config: TowerConfig) -> Result<Self> {
        if config.n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if config.letters == 0 {
            return Err(Error::InvalidParameter("alphabet must be nonempty".into()));
        }
        let power = config.mode.power(config.n)?;
        if config.mode == IdealMode::Symmetric && !config.with_stars {
            return Err(Error::InvalidParameter("symmetric ideal needs the starred alphabet".into()));
        }
        Ok(IdealTower {
            letters: config.alphabet().letters(),
            config,
            power,
            levels: vec![Level::default()],
            prefix_index: vec![HashMap::new()],
            exec: Execution::default(),
        })
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn config(&self) -> &TowerConfig {
        &self.config
    }

    pub fn computed_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn extend_to(&mut self, d: usize) {
        while self.computed_degree() < d {
            let next = self.computed_degree() + 1;
            self.compute_level(next);
        }
    }

    pub fn normal_words(&mut self, d: usize) -> &[Word] {
        self.extend_to(d);
        &self.levels[d].normal
    }

    /// Rewriting rules first appearing in degree `d`, ascending by lead.
    pub fn rules(&mut self, d: usize) -> Vec<(Word, FreeAlgebraElement)> {
        self.extend_to(d);
        let mut out: Vec<_> = self.levels[d].rules.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Normal form of a homogeneous element modulo the ideal. Words beyond
    /// the multiplicity cap are not tracked and reduce to zero.
    pub fn normal_form(&mut self, e: &FreeAlgebraElement) -> FreeAlgebraElement {
        let d = e.degree();
        self.extend_to(d);
        let mut acc = BTreeMap::new();
        for (w, c) in e.terms() {
            accumulate(&mut acc, &self.nf(w.letters()), c);
        }
        self.to_element(d, &self.levels[d].normal, acc)
    }

    /// Full reduced echelon basis of the ideal component in degree `d`:
    /// one row `w - nf(w)` for every reducible word `w`.
    pub fn echelon_basis(&mut self, d: usize) -> EchelonBasis {
        self.extend_to(d);
        let normal: HashSet<&Word> = self.levels[d].normal.iter().collect();
        let rules = words_of_degree(&self.config.alphabet(), d)
            .into_iter()
            .filter(|w| self.within_cap(w.letters()) && !normal.contains(w))
            .map(|w| {
                let mut acc = BTreeMap::new();
                accumulate(&mut acc, &self.nf(w.letters()), &Coeff::one());
                let tail = self.to_element(d, &self.levels[d].normal, acc);
                (w, tail)
            })
            .collect::<Vec<_>>();
        EchelonBasis::from_rules(d, rules)
    }

    fn to_element(&self, d: usize, words: &[Word], acc: BTreeMap<u32, Coeff>) -> FreeAlgebraElement {
        let map = acc.into_iter().map(|(i, c)| (words[i as usize].clone(), c)).collect();
        FreeAlgebraElement::from_map_unchecked(d, map)
    }

    fn within_cap(&self, letters: &[Letter]) -> bool {
        let cap = match self.config.max_multiplicity {
            Some(c) => c as usize,
            None => return true,
        };
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for l in letters {
            let c = counts.entry(l.index()).or_insert(0);
            *c += 1;
            if *c > cap {
                return false;
            }
        }
        true
    }

    fn letter_position(&self, l: Letter) -> usize {
        let base = (l.index() as usize - 1) * if self.config.with_stars { 2 } else { 1 };
        base + usize::from(l.is_starred())
    }

    /// Reduction of `w` (degree `d = w.len()`, levels below `d` complete)
    /// modulo the rules of degree `< d`, over the degree-`d` candidates.
    /// `pairs` is the (possibly partial) pair table of degree `d`.
    fn reduce_lower(&self, w: &[Letter], pairs: &[Image]) -> BTreeMap<u32, Coeff> {
        let d = w.len();
        let mut acc = BTreeMap::new();
        if d == 1 {
            if let Some(&i) = self.levels[1].cand_index.get(w) {
                acc.insert(i, Coeff::one());
            }
            return acc;
        }
        let pos = self.letter_position(w[d - 1]);
        let stride = self.letters.len();
        for (v, c) in self.nf(&w[..d - 1]).iter() {
            accumulate(&mut acc, &pairs[*v as usize * stride + pos], c);
        }
        acc
    }

    /// Final normal form of a word of a computed degree, over that degree's
    /// normal words.
    fn nf(&self, w: &[Letter]) -> Image {
        let level = &self.levels[w.len()];
        if let Some(hit) = level.memo.get(w) {
            return hit.clone();
        }
        let lower = self.reduce_lower(w, &level.pairs);
        let mut acc = BTreeMap::new();
        for (ci, c) in &lower {
            accumulate(&mut acc, &level.cand_nf[*ci as usize], c);
        }
        let image: Image = Arc::new(acc.into_iter().collect());
        level.memo.insert(Word::new(w.to_vec()).expect("nonempty"), image.clone());
        image
    }

    /// Pair table of degree `d >= 2`, built in increasing order of `v s`.
    fn build_pairs(&self, d: usize, cand_index: &HashMap<Word, u32>) -> Vec<Image> {
        let prev = &self.levels[d - 1].normal;
        let mut pairs: Vec<Image> = Vec::with_capacity(prev.len() * self.letters.len());
        let mut w: Vec<Letter> = Vec::with_capacity(d);
        for v in prev {
            for &s in &self.letters {
                w.clear();
                w.extend_from_slice(v.letters());
                w.push(s);
                let image = if !self.within_cap(&w) {
                    Vec::new()
                } else if let Some(&i) = cand_index.get(w.as_slice()) {
                    vec![(i, Coeff::one())]
                } else {
                    // a lower lead is a suffix, since v is normal
                    let (k, tail) = (1..d)
                        .find_map(|k| self.levels[k].rules.get(&w[d - k..]).map(|t| (k, t)))
                        .expect("non-candidate has a lead suffix");
                    let mut acc = BTreeMap::new();
                    let mut x: Vec<Letter> = Vec::with_capacity(d);
                    for (t, tc) in tail.terms() {
                        x.clear();
                        x.extend_from_slice(&w[..d - k]);
                        x.extend_from_slice(t.letters());
                        for (ci, c) in self.reduce_lower(&x, &pairs) {
                            add_scaled_entry(&mut acc, ci, &(&c * tc));
                        }
                    }
                    acc.into_iter().collect()
                };
                pairs.push(Arc::new(image));
            }
        }
        pairs
    }

    fn candidates(&self, d: usize) -> Vec<Word> {
        if d == 1 {
            return self
                .letters
                .iter()
                .map(|&l| Word::letter(l))
                .collect();
        }
        let mut out = Vec::new();
        for v in &self.levels[d - 1].normal {
            for &s in &self.letters {
                let w = v.concat(&Word::letter(s));
                if !self.within_cap(w.letters()) {
                    continue;
                }
                let letters = w.letters();
                let reducible = (1..d).any(|k| self.levels[k].rules.contains_key(&letters[d - k..]));
                if !reducible {
                    out.push(w);
                }
            }
        }
        out.sort();
        out
    }

    fn overlap_jobs(&self, d: usize) -> Vec<Job<'_>> {
        let mut jobs = Vec::new();
        for k1 in 2..d {
            for lead1 in self.levels[k1].rules.keys() {
                let l1 = lead1.letters();
                for o in 1..k1 {
                    let k2 = d - k1 + o;
                    let Some(index) = self.prefix_index.get(k2) else { continue };
                    let Some(leads) = index.get(&l1[k1 - o..]) else { continue };
                    for lead2 in leads {
                        let mut whole = l1.to_vec();
                        whole.extend_from_slice(&lead2.letters()[o..]);
                        if !self.within_cap(&whole) {
                            continue;
                        }
                        jobs.push(Job::Overlap {
                            left: Word::new(l1[..k1 - o].to_vec()).expect("nonempty"),
                            lead1,
                            lead2,
                            overlap: o,
                        });
                    }
                }
            }
        }
        jobs
    }

    fn power_jobs<'a>(&'a self, d: usize, candidates: &'a [Word]) -> Vec<Job<'a>> {
        let m = self.power;
        if d < m {
            return Vec::new();
        }
        // Arguments: normal words of lower degree, plus the degree-d
        // candidates when a single argument can carry the whole degree.
        let mut pool: Vec<Vec<&Word>> = vec![Vec::new(); d + 1];
        for k in 1..d {
            pool[k] = self.levels[k].normal.iter().collect();
        }
        pool[d] = candidates.iter().collect();
        if self.config.mode == IdealMode::Symmetric {
            // u and u* give the same symmetric argument
            for (k, words) in pool.iter_mut().enumerate() {
                let present: HashSet<Word> = words.iter().map(|w| (*w).clone()).collect();
                let _ = k;
                words.retain(|w| {
                    let s = w.star();
                    !(s < **w && present.contains(&s))
                });
            }
        }
        let mut jobs = Vec::new();
        let mut chosen: Vec<&Word> = Vec::with_capacity(m);
        self.enumerate_multisets(&pool, m, d, (1, 0), &mut chosen, &mut jobs);
        jobs
    }

    /// Multisets of `remaining` pool words with total degree `budget`,
    /// listed as non-decreasing `(degree, position)` sequences.
    fn enumerate_multisets<'a>(
        &self,
        pool: &[Vec<&'a Word>],
        remaining: usize,
        budget: usize,
        from: (usize, usize),
        chosen: &mut Vec<&'a Word>,
        jobs: &mut Vec<Job<'a>>,
    ) {
        if remaining == 0 {
            if budget == 0 {
                let mut letters = Vec::new();
                for w in chosen.iter() {
                    letters.extend_from_slice(w.letters());
                }
                if self.within_cap(&letters) {
                    jobs.push(Job::Power(chosen.clone()));
                }
            }
            return;
        }
        let (start_deg, start_pos) = from;
        // every remaining word has degree >= start_deg
        if budget < start_deg * remaining {
            return;
        }
        let max_deg = budget - (remaining - 1) * start_deg;
        for k in start_deg..=max_deg.min(pool.len() - 1) {
            let first = if k == start_deg { start_pos } else { 0 };
            if remaining == 1 && k != budget {
                continue;
            }
            for pos in first..pool[k].len() {
                chosen.push(pool[k][pos]);
                self.enumerate_multisets(pool, remaining - 1, budget - k, (k, pos), chosen, jobs);
                chosen.pop();
            }
        }
    }

    fn run_job(&self, d: usize, job: &Job<'_>) -> BTreeMap<Word, Coeff> {
        let element = match job {
            Job::Overlap { left, lead1, lead2, overlap } => {
                let k1 = lead1.degree();
                let tail1 = &self.levels[k1].rules[*lead1];
                let tail2 = &self.levels[lead2.degree()].rules[*lead2];
                let right = Word::new(lead2.letters()[*overlap..].to_vec()).expect("nonempty");
                let mut e = tail2.left_mul_word(left);
                e.add_scaled(&tail1.right_mul_word(&right), &-Coeff::one()).expect("same degree");
                e
            }
            Job::Power(words) => {
                let args: Vec<FreeAlgebraElement> = words
                    .iter()
                    .map(|w| {
                        let e = FreeAlgebraElement::from_word((*w).clone());
                        if self.config.mode == IdealMode::Symmetric {
                            e.symmetrized()
                        } else {
                            e
                        }
                    })
                    .collect();
                polarize(&args)
            }
            Job::Commutator(a, b) => FreeAlgebraElement::from_terms(
                2,
                [
                    (Word::new(vec![*a, *b]).expect("nonempty"), coeff(1)),
                    (Word::new(vec![*b, *a]).expect("nonempty"), coeff(-1)),
                ],
            )
            .expect("degree 2"),
        };
        debug_assert_eq!(element.degree(), d);
        let mut acc = BTreeMap::new();
        for (w, c) in element.terms() {
            for (ci, cc) in self.reduce_lower(w.letters(), &self.levels[d].pairs) {
                add_scaled_entry(&mut acc, ci, &(&cc * c));
            }
        }
        let cands = &self.levels[d].candidates;
        acc.into_iter().map(|(i, c)| (cands[i as usize].clone(), c)).collect()
    }

    fn compute_level(&mut self, d: usize) {
        let candidates = self.candidates(d);
        let cand_index: HashMap<Word, u32> =
            candidates.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        let pairs = if d == 1 { Vec::new() } else { self.build_pairs(d, &cand_index) };
        self.levels.push(Level { candidates, cand_index, pairs, ..Level::default() });

        let candidates = &self.levels[d].candidates;
        let mut jobs = self.overlap_jobs(d);
        jobs.extend(self.power_jobs(d, candidates));
        if d == 2 && self.config.mode == IdealMode::Commutative {
            for (i, a) in self.letters.iter().enumerate() {
                for b in &self.letters[i + 1..] {
                    if self.within_cap(&[*a, *b]) {
                        jobs.push(Job::Commutator(*a, *b));
                    }
                }
            }
        }

        let reduced = self.exec.map(&jobs, |job| self.run_job(d, job));
        drop(jobs);

        let mut blocks: BTreeMap<Vec<u32>, Vec<BTreeMap<Word, Coeff>>> = BTreeMap::new();
        for r in reduced {
            if let Some(w) = r.keys().next() {
                blocks.entry(w.index_content()).or_default().push(r);
            }
        }
        let blocks: Vec<Vec<BTreeMap<Word, Coeff>>> = blocks.into_values().collect();
        let new_rules: Vec<Vec<(Word, FreeAlgebraElement)>> =
            self.exec.map_owned(blocks, |rows| eliminate_block(d, rows));

        let mut level = std::mem::take(&mut self.levels[d]);
        for (lead, tail) in new_rules.into_iter().flatten() {
            level.rules.insert(lead, tail);
        }
        level.normal = level.candidates.iter().filter(|w| !level.rules.contains_key(*w)).cloned().collect();
        let normal_index: HashMap<&Word, u32> =
            level.normal.iter().enumerate().map(|(i, w)| (w, i as u32)).collect();
        level.cand_nf = level
            .candidates
            .iter()
            .map(|w| {
                let image = match level.rules.get(w) {
                    Some(tail) => tail.terms().iter().map(|(t, c)| (normal_index[t], c.clone())).collect(),
                    None => vec![(normal_index[w], Coeff::one())],
                };
                Arc::new(image)
            })
            .collect();

        let mut index: HashMap<Vec<Letter>, Vec<Word>> = HashMap::new();
        for lead in level.rules.keys() {
            for o in 1..d {
                index.entry(lead.letters()[..o].to_vec()).or_default().push(lead.clone());
            }
        }
        for leads in index.values_mut() {
            leads.sort();
        }
        self.levels[d] = level;
        self.prefix_index.push(index);
    }
}

fn add_scaled_entry(acc: &mut BTreeMap<u32, Coeff>, i: u32, c: &Coeff) {
    if c.is_zero() {
        return;
    }
    match acc.entry(i) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn accumulate(acc: &mut BTreeMap<u32, Coeff>, image: &[(u32, Coeff)], c: &Coeff) {
    for (i, x) in image {
        add_scaled_entry(acc, *i, &(x * c));
    }
}

fn eliminate_block(d: usize, rows: Vec<BTreeMap<Word, Coeff>>) -> Vec<(Word, FreeAlgebraElement)> {
    let mut columns: Vec<Word> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
    columns.sort();
    columns.dedup();
    let col_of: HashMap<&Word, usize> = columns.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut reducer = RowReducer::new();
    for r in &rows {
        let row: SparseRow = r.iter().map(|(w, c)| (col_of[w], c.clone())).collect();
        reducer.insert(row);
    }
    reducer
        .finish()
        .into_iter()
        .map(|(lead, row)| {
            let mut tail = BTreeMap::new();
            for (c, v) in row {
                if c != lead {
                    tail.insert(columns[c].clone(), -v);
                }
            }
            (columns[lead].clone(), FreeAlgebraElement::from_map_unchecked(d, tail))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn n2_two_letters() {
        let mut t = IdealTower::new(TowerConfig::new(2, &Alphabet::plain(2), IdealMode::Plain)).unwrap();
        assert_eq!(t.normal_words(1), &[w("g1"), w("g2")]);
        assert_eq!(t.normal_words(2), &[w("g1 g2")]);
        assert!(t.normal_words(3).is_empty());
        let nf = t.normal_form(&FreeAlgebraElement::from_word(w("g2 g1")));
        assert_eq!(nf, FreeAlgebraElement::from_word(w("g1 g2")).neg());
    }

    #[test]
    fn symmetric_n2_is_exterior() {
        // x* = -x and the quotient is an exterior algebra
        let mut t = IdealTower::new(TowerConfig::new(2, &Alphabet::starred(2), IdealMode::Symmetric)).unwrap();
        assert_eq!(t.normal_words(1), &[w("g1"), w("g2")]);
        assert_eq!(t.normal_words(2), &[w("g1 g2")]);
        assert!(t.normal_words(3).is_empty());
    }

    #[test]
    fn symmetric_needs_stars() {
        let cfg = TowerConfig::new(2, &Alphabet::plain(2), IdealMode::Symmetric);
        assert!(IdealTower::new(cfg).is_err());
    }

    #[test]
    fn multilinear_n2() {
        let mut t = IdealTower::new(TowerConfig::multilinear(2, 3, IdealMode::Plain)).unwrap();
        // s_i s_j = -s_j s_i and s_i^2 = 0: one normal word per subset
        assert_eq!(t.normal_words(2).len(), 3);
        assert_eq!(t.normal_words(3).len(), 0);
    }
}
