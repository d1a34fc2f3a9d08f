//! Trace rewriting for `SL(2)`: expresses the trace of any word as a
//! polynomial in the traces of `g_i`, `g_i g_j` (`i < j`) and `g_i g_j g_k`
//! (`i < j < k`).
//!
//! Rules, applied to a cyclically reduced word up to rotation and inversion:
//! * `tr(U x^{-1} V) = tr(x) tr(UV) - tr(U x V)`,
//! * `tr(x U x V) = tr(xU) tr(xV) - tr(U V^{-1})`,
//! * `tr(g_i g_k g_j) = -tr(g_i g_j g_k) + t_i t_jk + t_j t_ik + t_k t_ij - t_i t_j t_k`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::words::{Letter, Word};

/// Largest rank the rewriting handles (distinct-letter words of length at
/// most three).
pub const MAX_RANK: u32 = 3;

/// Polynomial with rational coefficients in the generator traces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TracePoly {
    /// Exponent vector (indexed like [`TraceVariables`]) to coefficient.
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl TracePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64, nvars: usize) -> Self {
        let mut p = TracePoly::zero();
        p.add_term(vec![0; nvars], BigRational::from_integer(BigInt::from(c)));
        p
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = TracePoly::zero();
        p.add_term(e, BigRational::one());
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            let zero: Vec<_> = self.terms.iter().filter(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).collect();
            for k in zero {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, o: &TracePoly) -> TracePoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &TracePoly) -> TracePoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, o: &TracePoly) -> TracePoly {
        let mut out = TracePoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Indices of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .terms
            .keys()
            .flat_map(|e| e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                for _ in 0..k {
                    t *= v;
                }
            }
            total += t;
        }
        total
    }

    pub fn display<'a>(&'a self, vars: &'a TraceVariables) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, vars }
    }
}

struct PolyDisplay<'a> {
    poly: &'a TracePoly,
    vars: &'a TraceVariables,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.terms.is_empty() {
            return f.write_str("0");
        }
        // highest degree first
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| b.0.iter().sum::<u32>().cmp(&a.0.iter().sum::<u32>()).then(b.0.cmp(a.0)));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let monomial: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    let name = self.vars.name(v);
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if monomial.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                f.write_str(&monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

/// The generator traces for a given rank: singletons, pairs `i < j`, triples
/// `i < j < k`, in that order.
#[derive(Clone, Debug)]
pub struct TraceVariables {
    words: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl TraceVariables {
    pub fn new(rank: u32) -> Self {
        let mut words: Vec<Vec<u32>> = Vec::new();
        for len in 1..=3 {
            words.extend((1..=rank).combinations(len));
        }
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        TraceVariables { words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> Word {
        Word::from_indices(&self.words[i])
    }

    pub fn name(&self, i: usize) -> String {
        format!("t{}", self.words[i].iter().map(|x| x.to_string()).collect::<String>())
    }

    fn var(&self, indices: &[u32]) -> TracePoly {
        TracePoly::var(self.index[indices], self.len())
    }
}

/// Memoizing rewriter for one rank.
pub struct Sl2Rewriter {
    rank: u32,
    vars: TraceVariables,
    memo: HashMap<Vec<Letter>, TracePoly>,
}

fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.star()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    // cyclic reduction
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start] == out[end - 1].star() {
        start += 1;
        end -= 1;
    }
    out[start..end].to_vec()
}

/// Least rotation of the word or of its inverse.
fn canonical(letters: &[Letter]) -> Vec<Letter> {
    match Word::new(letters.to_vec()) {
        Ok(w) => w.cyclic_normal_form().up_to_star().representative().letters().to_vec(),
        Err(_) => Vec::new(),
    }
}

impl Sl2Rewriter {
    pub fn new(rank: u32) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::Unsupported(format!(
                "SL(2) trace rewriting is implemented for ranks 1..={MAX_RANK}, got {rank}"
            )));
        }
        Ok(Sl2Rewriter { rank, vars: TraceVariables::new(rank), memo: HashMap::new() })
    }

    pub fn variables(&self) -> &TraceVariables {
        &self.vars
    }

    /// `tr(w)` as a polynomial in the generator traces.
    pub fn rewrite(&mut self, w: &Word) -> Result<TracePoly> {
        if w.max_index() > self.rank {
            return Err(Error::LetterOutOfRange { index: w.max_index(), available: self.rank as usize });
        }
        Ok(self.trace_of(w.letters()))
    }

    fn trace_of(&mut self, letters: &[Letter]) -> TracePoly {
        let reduced = free_reduce(letters);
        let key = canonical(&reduced);
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let p = self.expand(&key);
        self.memo.insert(key, p.clone());
        p
    }

    fn expand(&mut self, w: &[Letter]) -> TracePoly {
        let nv = self.vars.len();
        if w.is_empty() {
            return TracePoly::constant(2, nv);
        }
        // remove an inverse letter
        if let Some(pos) = w.iter().position(|l| l.is_starred()) {
            let x = w[pos].star();
            let mut uv = w[..pos].to_vec();
            uv.extend_from_slice(&w[pos + 1..]);
            let mut uxv = w.to_vec();
            uxv[pos] = x;
            let tx = self.trace_of(&[x]);
            let tuv = self.trace_of(&uv);
            let tuxv = self.trace_of(&uxv);
            return tx.mul(&tuv).sub(&tuxv);
        }
        // a repeated letter: rotate so it comes first, w = x U x V
        for (i, &x) in w.iter().enumerate() {
            if let Some(off) = w[i + 1..].iter().position(|&y| y == x) {
                let j = i + 1 + off;
                let mut rot = w[i..].to_vec();
                rot.extend_from_slice(&w[..i]);
                let j = j - i;
                let u = &rot[1..j];
                let v = &rot[j + 1..];
                let mut xu = vec![x];
                xu.extend_from_slice(u);
                let mut xv = vec![x];
                xv.extend_from_slice(v);
                let mut uvinv = u.to_vec();
                uvinv.extend(v.iter().rev().map(|l| l.star()));
                let a = self.trace_of(&xu);
                let b = self.trace_of(&xv);
                let c = self.trace_of(&uvinv);
                return a.mul(&b).sub(&c);
            }
        }
        // distinct positive letters
        let idx: Vec<u32> = w.iter().map(|l| l.index()).collect();
        match idx.len() {
            1 | 2 => {
                let mut s = idx.clone();
                s.sort_unstable();
                self.vars.var(&s)
            }
            3 => {
                let mut s = idx.clone();
                s.sort_unstable();
                let rotations = [idx.clone(), vec![idx[1], idx[2], idx[0]], vec![idx[2], idx[0], idx[1]]];
                if rotations.contains(&s) {
                    return self.vars.var(&s);
                }
                let (i, j, k) = (s[0], s[1], s[2]);
                let t = |v: &[u32]| self.vars.var(v);
                let mut p = t(&[i, j, k]).mul(&TracePoly::constant(-1, nv));
                p = p.add(&t(&[i]).mul(&t(&[j, k])));
                p = p.add(&t(&[j]).mul(&t(&[i, k])));
                p = p.add(&t(&[k]).mul(&t(&[i, j])));
                p.sub(&t(&[i]).mul(&t(&[j])).mul(&t(&[k])))
            }
            _ => unreachable!("rank is at most three"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn square() {
        let mut r = Sl2Rewriter::new(1).unwrap();
        let p = r.rewrite(&w("g1 g1")).unwrap();
        assert_eq!(p.display(r.variables()).to_string(), "t1^2 - 2");
    }

    #[test]
    fn generators_are_fixed() {
        let mut r = Sl2Rewriter::new(3).unwrap();
        for (i, s) in ["g1", "g2", "g3", "g1 g2", "g1 g3", "g2 g3", "g1 g2 g3"].iter().enumerate() {
            assert_eq!(r.rewrite(&w(s)).unwrap(), TracePoly::var(i, 7), "{s}");
        }
    }

    #[test]
    fn inverse_has_same_trace() {
        let mut r = Sl2Rewriter::new(2).unwrap();
        assert_eq!(r.rewrite(&w("g1*")).unwrap(), TracePoly::var(0, 3));
        assert_eq!(r.rewrite(&w("g1 g1*")).unwrap(), TracePoly::constant(2, 3));
    }

    #[test]
    fn rank_limits() {
        assert!(Sl2Rewriter::new(0).is_err());
        assert!(Sl2Rewriter::new(4).is_err());
        let mut r = Sl2Rewriter::new(2).unwrap();
        assert!(r.rewrite(&w("g3")).is_err());
    }

    #[test]
    fn abab_uses_rank_two_variables() {
        let mut r = Sl2Rewriter::new(2).unwrap();
        let p = r.rewrite(&w("g1 g2 g1 g2")).unwrap();
        // tr(ABAB) = t12^2 - 2
        assert_eq!(p.display(r.variables()).to_string(), "t12^2 - 2");
    }
}
