use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::words::Word;

pub type Coeff = BigRational;

pub(crate) fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(n.into())
}

/// Homogeneous element of the free algebra: a finite rational combination of
/// words of one degree. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeAlgebraElement {
    degree: usize,
    terms: BTreeMap<Word, Coeff>,
}

impl FreeAlgebraElement {
    pub fn zero(degree: usize) -> Self {
        FreeAlgebraElement { degree, terms: BTreeMap::new() }
    }

    pub fn from_word(w: Word) -> Self {
        let degree = w.degree();
        let mut terms = BTreeMap::new();
        terms.insert(w, Coeff::one());
        FreeAlgebraElement { degree, terms }
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Word, Coeff)>) -> Result<Self> {
        let mut e = FreeAlgebraElement::zero(degree);
        for (w, c) in terms {
            if w.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: w.degree() });
            }
            e.add_term(w, c);
        }
        Ok(e)
    }

    /// Caller guarantees every word has degree `degree` and no coefficient is zero.
    pub(crate) fn from_map_unchecked(degree: usize, terms: BTreeMap<Word, Coeff>) -> Self {
        debug_assert!(terms.iter().all(|(w, c)| w.degree() == degree && !c.is_zero()));
        FreeAlgebraElement { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Word, Coeff> {
        &self.terms
    }

    pub fn coefficient(&self, w: &Word) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Greatest word of the support with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Coeff)> {
        self.terms.iter().next_back()
    }

    /// Panics if `w` has the wrong degree.
    pub fn add_term(&mut self, w: Word, c: Coeff) {
        assert_eq!(w.degree(), self.degree, "inhomogeneous term");
        add_into(&mut self.terms, w, c);
    }

    pub fn add_scaled(&mut self, other: &FreeAlgebraElement, c: &Coeff) -> Result<()> {
        if other.degree != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        for (w, oc) in &other.terms {
            add_into(&mut self.terms, w.clone(), oc * c);
        }
        Ok(())
    }

    pub fn scaled(&self, c: &Coeff) -> FreeAlgebraElement {
        if c.is_zero() {
            return FreeAlgebraElement::zero(self.degree);
        }
        FreeAlgebraElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> FreeAlgebraElement {
        self.scaled(&-Coeff::one())
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn normalized(&self) -> FreeAlgebraElement {
        match self.leading() {
            Some((_, c)) => self.scaled(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn mul(&self, other: &FreeAlgebraElement) -> FreeAlgebraElement {
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                add_into(&mut terms, a.concat(b), ca * cb);
            }
        }
        FreeAlgebraElement { degree: self.degree + other.degree, terms }
    }

    pub fn left_mul_word(&self, v: &Word) -> FreeAlgebraElement {
        FreeAlgebraElement {
            degree: self.degree + v.degree(),
            terms: self.terms.iter().map(|(w, c)| (v.concat(w), c.clone())).collect(),
        }
    }

    pub fn right_mul_word(&self, v: &Word) -> FreeAlgebraElement {
        FreeAlgebraElement {
            degree: self.degree + v.degree(),
            terms: self.terms.iter().map(|(w, c)| (w.concat(v), c.clone())).collect(),
        }
    }

    /// Apply the involution termwise.
    pub fn star(&self) -> FreeAlgebraElement {
        FreeAlgebraElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(w, c)| (w.star(), c.clone())).collect(),
        }
    }

    /// `x + x*`.
    pub fn symmetrized(&self) -> FreeAlgebraElement {
        let mut out = self.clone();
        out.add_scaled(&self.star(), &Coeff::one()).expect("same degree");
        out
    }
}

pub(crate) fn add_into(terms: &mut BTreeMap<Word, Coeff>, w: Word, c: Coeff) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(w) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Full polarization: the sum of `args[s(1)] * ... * args[s(m)]` over all
/// permutations `s`. Spans the same space as the distinct-arrangement sums.
pub fn polarize(args: &[FreeAlgebraElement]) -> FreeAlgebraElement {
    use itertools::Itertools;
    let degree = args.iter().map(|a| a.degree()).sum();
    let mut out = FreeAlgebraElement::zero(degree);
    for perm in (0..args.len()).permutations(args.len()) {
        let mut prod = args[perm[0]].clone();
        for &i in &perm[1..] {
            prod = prod.mul(&args[i]);
        }
        out.add_scaled(&prod, &Coeff::one()).expect("same degree");
    }
    out
}

impl fmt::Display for FreeAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if i > 0 || c.is_negative() {
                f.write_str(" ")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "[{w}]")?;
            } else {
                write!(f, "{a}*[{w}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeAlgebraElement(deg {}: {self})", self.degree)
    }
}
