//! Exact sparse Gaussian elimination.
//!
//! Pivots are the greatest column of each row (for words: the greatest word
//! in the global order), so the pivot set of a span is canonical and the
//! complement of the pivots consists of the smallest possible words.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::element::{Coeff, FreeAlgebraElement};
use crate::error::{Error, Result};
use crate::words::Word;

pub(crate) type SparseRow = BTreeMap<usize, Coeff>;

/// Incremental row reduction keyed by pivot column.
#[derive(Default)]
pub(crate) struct RowReducer {
    pivots: BTreeMap<usize, SparseRow>,
}

fn eliminate_below(row: &mut SparseRow, pivots: &BTreeMap<usize, SparseRow>, skip: Option<usize>) {
    let mut cursor = match row.keys().next_back() {
        Some(&c) => c,
        None => return,
    };
    loop {
        let c = match row.range(..=cursor).next_back() {
            Some((&c, _)) => c,
            None => break,
        };
        if Some(c) != skip {
            if let Some(p) = pivots.get(&c) {
                let factor = row[&c].clone();
                for (col, v) in p {
                    let entry = row.entry(*col).or_insert_with(Coeff::zero);
                    *entry -= &factor * v;
                    if entry.is_zero() {
                        row.remove(col);
                    }
                }
            }
        }
        if c == 0 {
            break;
        }
        cursor = c - 1;
    }
}

impl RowReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reduce(&self, row: &mut SparseRow) {
        eliminate_below(row, &self.pivots, None);
    }

    /// Returns true when the row enlarged the span.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        self.reduce(&mut row);
        let (&lead, lc) = match row.iter().next_back() {
            Some(x) => x,
            None => return false,
        };
        if !lc.is_one() {
            let inv = lc.recip();
            for v in row.values_mut() {
                *v *= &inv;
            }
        }
        self.pivots.insert(lead, row);
        true
    }

    /// Reduced row-echelon form, ascending by pivot column.
    pub fn finish(mut self) -> Vec<(usize, SparseRow)> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        for c in cols {
            let mut row = self.pivots.remove(&c).expect("pivot present");
            eliminate_below(&mut row, &self.pivots, Some(c));
            self.pivots.insert(c, row);
        }
        self.pivots.into_iter().collect()
    }
}

/// Row-reduced spanning set of a homogeneous subspace: every row has leading
/// coefficient 1 and no leading word appears in another row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis {
    degree: usize,
    rows: Vec<FreeAlgebraElement>,
    leading: BTreeMap<Word, usize>,
}

impl EchelonBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rows(&self) -> &[FreeAlgebraElement] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn leading_words(&self) -> impl Iterator<Item = &Word> {
        self.leading.keys()
    }

    pub fn is_leading(&self, w: &Word) -> bool {
        self.leading.contains_key(w)
    }

    /// Build from rewriting rules `lead -> tail` where every tail word is
    /// non-leading. Each row is `lead - tail`.
    pub(crate) fn from_rules(degree: usize, rules: impl IntoIterator<Item = (Word, FreeAlgebraElement)>) -> Self {
        let mut rows: Vec<FreeAlgebraElement> = rules
            .into_iter()
            .map(|(lead, tail)| {
                let mut row = tail.neg();
                row.add_term(lead, Coeff::one());
                row
            })
            .collect();
        rows.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
        let leading = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.leading().unwrap().0.clone(), i))
            .collect();
        EchelonBasis { degree, rows, leading }
    }

    /// Normal form of `e` modulo the span: no leading word survives and
    /// `e - result` lies in the span.
    pub fn reduce(&self, e: &FreeAlgebraElement) -> Result<FreeAlgebraElement> {
        if e.degree() != self.degree && !e.is_zero() {
            return Err(Error::DegreeMismatch { expected: self.degree, found: e.degree() });
        }
        let mut out = e.clone();
        let hits: Vec<(usize, Coeff)> = e
            .terms()
            .iter()
            .filter_map(|(w, c)| self.leading.get(w).map(|&i| (i, c.clone())))
            .collect();
        for (i, c) in hits {
            out.add_scaled(&self.rows[i], &-c)?;
        }
        Ok(out)
    }

    pub fn contains(&self, e: &FreeAlgebraElement) -> Result<bool> {
        Ok(self.reduce(e)?.is_zero())
    }
}

/// Reduced row-echelon basis of the span of homogeneous elements of one degree.
pub fn echelonize(generators: &[FreeAlgebraElement]) -> Result<EchelonBasis> {
    let degree = generators.iter().find(|g| !g.is_zero()).map_or(0, |g| g.degree());
    for g in generators {
        if !g.is_zero() && g.degree() != degree {
            return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
        }
    }
    let columns: Vec<Word> = generators
        .iter()
        .flat_map(|g| g.terms().keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<&Word, usize> = columns.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut reducer = RowReducer::new();
    for g in generators {
        let row: SparseRow = g.terms().iter().map(|(w, c)| (index[w], c.clone())).collect();
        reducer.insert(row);
    }
    let rows: Vec<FreeAlgebraElement> = reducer
        .finish()
        .into_iter()
        .map(|(_, row)| {
            FreeAlgebraElement::from_map_unchecked(
                degree,
                row.into_iter().map(|(c, v)| (columns[c].clone(), v)).collect(),
            )
        })
        .collect();
    let leading = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.leading().unwrap().0.clone(), i))
        .collect();
    Ok(EchelonBasis { degree, rows, leading })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilquot::element::coeff;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn el(terms: &[(&str, i64)]) -> FreeAlgebraElement {
        let deg = w(terms[0].0).degree();
        FreeAlgebraElement::from_terms(deg, terms.iter().map(|(s, c)| (w(s), coeff(*c)))).unwrap()
    }

    #[test]
    fn two_by_two() {
        let b = echelonize(&[
            el(&[("g1 g2", 1), ("g2 g1", 1)]),
            el(&[("g1 g2", 1), ("g2 g1", -1)]),
        ])
        .unwrap();
        let lead: Vec<_> = b.leading_words().cloned().collect();
        assert_eq!(lead, vec![w("g1 g2"), w("g2 g1")]);
        assert_eq!(b.dim(), 2);
        for r in b.rows() {
            assert_eq!(r.len(), 1);
        }
    }

    #[test]
    fn dependent_rows_collapse() {
        let b = echelonize(&[el(&[("g1 g1", 1)]), el(&[("g1 g1", 2)])]).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(b.rows()[0], el(&[("g1 g1", 1)]));
    }

    #[test]
    fn rref_invariant() {
        let b = echelonize(&[
            el(&[("g1 g1", 3), ("g1 g2", 1), ("g2 g2", 2)]),
            el(&[("g1 g2", 1), ("g2 g1", 5)]),
            el(&[("g2 g2", 1), ("g2 g1", -1), ("g1 g1", 1)]),
        ])
        .unwrap();
        for (i, r) in b.rows().iter().enumerate() {
            let (lw, lc) = r.leading().unwrap();
            assert!(lc.is_one());
            for (j, other) in b.rows().iter().enumerate() {
                if i != j {
                    assert!(other.coefficient(lw).is_zero());
                }
            }
        }
    }

    #[test]
    fn reduce_degree_mismatch() {
        let b = echelonize(&[el(&[("g1 g1", 1)])]).unwrap();
        assert!(b.reduce(&el(&[("g1", 1)])).is_err());
    }
}
