use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Square matrix over the Gaussian rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixN {
    n: usize,
    entries: Vec<Scalar>,
}

impl MatrixN {
    pub fn zero(n: usize) -> Self {
        MatrixN { n, entries: vec![Scalar::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Scalar::one())
    }

    pub fn scalar(n: usize, s: Scalar) -> Self {
        let mut m = MatrixN::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = s.clone();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        MatrixN { n, entries }
    }

    /// Rows must all have the same length as there are rows.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::SizeMismatch { expected: n, found: r.len() });
            }
            entries.extend(r);
        }
        Ok(MatrixN { n, entries })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect())
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let n = d.len();
        MatrixN::from_fn(n, |i, j| if i == j { d[i].clone() } else { Scalar::zero() })
    }

    /// `[[0, I], [-I, 0]]` with `n/2` blocks.
    pub fn standard_j(n: usize) -> Result<Self> {
        if n % 2 == 1 || n == 0 {
            return Err(Error::OddSize { group: "sp", n });
        }
        let h = n / 2;
        Ok(MatrixN::from_fn(n, |i, j| {
            if i < h && j == i + h {
                Scalar::one()
            } else if i >= h && j + h == i {
                Scalar::int(-1)
            } else {
                Scalar::zero()
            }
        }))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn transpose(&self) -> MatrixN {
        MatrixN::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.n {
            t += self.get(i, i);
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> MatrixN {
        MatrixN { n: self.n, entries: self.entries.iter().map(|x| x * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_skew(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| (self.get(i, j) + self.get(j, i)).is_zero()))
    }

    pub fn pow(&self, k: u32) -> MatrixN {
        let mut out = MatrixN::identity(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Row-reduce a copy; returns the determinant and, when requested, the
    /// inverse.
    fn eliminate(&self, want_inverse: bool) -> (Scalar, Option<MatrixN>) {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = if want_inverse { Some(MatrixN::identity(n)) } else { None };
        let mut det = Scalar::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !a.get(r, col).is_zero()) {
                Some(p) => p,
                None => return (Scalar::zero(), None),
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                if let Some(m) = inv.as_mut() {
                    m.swap_rows(pivot, col);
                }
                det = -det;
            }
            let p = a.get(col, col).clone();
            det = &det * &p;
            let p_inv = p.inv().expect("nonzero pivot");
            a.scale_row(col, &p_inv);
            if let Some(m) = inv.as_mut() {
                m.scale_row(col, &p_inv);
            }
            let rows: Box<dyn Iterator<Item = usize>> =
                if want_inverse { Box::new(0..n) } else { Box::new(col + 1..n) };
            for r in rows {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                a.sub_row_multiple(r, col, &f);
                if let Some(m) = inv.as_mut() {
                    m.sub_row_multiple(r, col, &f);
                }
            }
        }
        (det, inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for j in 0..self.n {
            let v = self.get(r, j) * s;
            self.set(r, j, v);
        }
    }

    /// row[r] -= f * row[src]
    fn sub_row_multiple(&mut self, r: usize, src: usize, f: &Scalar) {
        for j in 0..self.n {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(r, j) - &(f * s);
            self.set(r, j, v);
        }
    }

    pub fn det(&self) -> Scalar {
        self.eliminate(false).0
    }

    pub fn inverse(&self) -> Result<MatrixN> {
        self.eliminate(true).1.ok_or(Error::Singular)
    }

    fn check_size(&self, other: &MatrixN) {
        assert_eq!(self.n, other.n, "matrix size mismatch");
    }
}

impl<'a> Mul<&'a MatrixN> for &'a MatrixN {
    type Output = MatrixN;
    /// Panics on size mismatch.
    fn mul(self, o: &MatrixN) -> MatrixN {
        self.check_size(o);
        let n = self.n;
        let mut out = MatrixN::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a MatrixN> for &'a MatrixN {
    type Output = MatrixN;
    fn add(self, o: &MatrixN) -> MatrixN {
        self.check_size(o);
        MatrixN { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a MatrixN> for &'a MatrixN {
    type Output = MatrixN;
    fn sub(self, o: &MatrixN) -> MatrixN {
        self.check_size(o);
        MatrixN { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for MatrixN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for MatrixN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_example() {
        let a = MatrixN::diagonal(&[Scalar::int(2), Scalar::ratio(1, 2)]);
        let b = MatrixN::from_ints(&[&[1, 1], &[0, 1]]).unwrap();
        let expect = MatrixN::from_rows(vec![
            vec![Scalar::int(2), Scalar::int(2)],
            vec![Scalar::zero(), Scalar::ratio(1, 2)],
        ])
        .unwrap();
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn det_and_inverse() {
        let m = MatrixN::from_ints(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]).unwrap();
        assert_eq!(m.det(), Scalar::int(-5));
        assert_eq!(&m * &m.inverse().unwrap(), MatrixN::identity(3));
        let s = MatrixN::from_ints(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(s.det(), Scalar::zero());
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn traces() {
        assert_eq!(MatrixN::identity(2).trace(), Scalar::int(2));
        let d = MatrixN::diagonal(&[Scalar::int(2), Scalar::ratio(1, 2)]);
        assert_eq!(d.trace(), Scalar::ratio(5, 2));
        let m = MatrixN::from_ints(&[&[1, 7], &[-3, 4]]).unwrap();
        assert_eq!(m.trace(), m.transpose().trace());
    }

    #[test]
    fn standard_j_shape() {
        let j = MatrixN::standard_j(4).unwrap();
        assert!(j.is_skew());
        assert_eq!(&j * &j, MatrixN::scalar(4, Scalar::int(-1)));
        assert!(MatrixN::standard_j(3).is_err());
    }
}
