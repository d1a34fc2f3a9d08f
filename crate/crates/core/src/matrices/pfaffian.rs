use itertools::Itertools;

use super::matrix::MatrixN;
use super::scalar::Scalar;
use crate::error::{Error, Result};

fn check_skew(m: &MatrixN) -> Result<()> {
    if m.size() % 2 == 1 {
        return Err(Error::OddSize { group: "pfaffian", n: m.size() });
    }
    if !m.is_skew() {
        return Err(Error::NotSkew);
    }
    Ok(())
}

fn pf_expand(m: &MatrixN, idx: &[usize]) -> Scalar {
    if idx.is_empty() {
        return Scalar::one();
    }
    let first = idx[0];
    let mut out = Scalar::zero();
    let mut rest = Vec::with_capacity(idx.len() - 2);
    for k in 1..idx.len() {
        let a = m.get(first, idx[k]);
        if a.is_zero() {
            continue;
        }
        rest.clear();
        rest.extend(idx[1..].iter().enumerate().filter(|&(p, _)| p + 1 != k).map(|(_, &v)| v));
        let term = a * &pf_expand(m, &rest);
        if k % 2 == 1 {
            out += &term;
        } else {
            out -= &term;
        }
    }
    out
}

/// Pfaffian by recursive expansion along the first row.
pub fn pfaffian(m: &MatrixN) -> Result<Scalar> {
    check_skew(m)?;
    let idx: Vec<usize> = (0..m.size()).collect();
    Ok(pf_expand(m, &idx))
}

fn permutation_sign(p: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions.is_multiple_of(2)
}

fn check_q_args(mats: &[MatrixN]) -> Result<usize> {
    if mats.is_empty() {
        return Err(Error::InvalidParameter("Q_n needs at least one matrix".into()));
    }
    let n = 2 * mats.len();
    for a in mats {
        if a.size() != n {
            return Err(Error::SizeMismatch { expected: n, found: a.size() });
        }
    }
    Ok(n)
}

/// `Q_n(A_1, ..., A_{n/2})` as the signed sum over all permutations of
/// `1..n` of `prod_k (A_k[s(2k-1), s(2k)] - A_k[s(2k), s(2k-1)])`.
pub fn q_n_direct(mats: &[MatrixN]) -> Result<Scalar> {
    let n = check_q_args(mats)?;
    let diffs: Vec<MatrixN> = mats.iter().map(|a| a - &a.transpose()).collect();
    let mut total = Scalar::zero();
    for p in (0..n).permutations(n) {
        let mut term = Scalar::one();
        for (k, d) in diffs.iter().enumerate() {
            let x = d.get(p[2 * k], p[2 * k + 1]);
            if x.is_zero() {
                term = Scalar::zero();
                break;
            }
            term = &term * x;
        }
        if term.is_zero() {
            continue;
        }
        if permutation_sign(&p) {
            total += &term;
        } else {
            total -= &term;
        }
    }
    Ok(total)
}

/// `Q_n` through the polarization of `X -> Pf(X - X^T)`:
/// `2^m * sum over nonempty T of (-1)^(m - |T|) Pf(Y_T - Y_T^T)`, with
/// `Y_T` the sum of the arguments indexed by `T`.
pub fn q_n_polarized(mats: &[MatrixN]) -> Result<Scalar> {
    let n = check_q_args(mats)?;
    let m = mats.len();
    let mut total = Scalar::zero();
    for mask in 1u32..(1 << m) {
        let mut y = MatrixN::zero(n);
        for (i, a) in mats.iter().enumerate() {
            if mask & (1 << i) != 0 {
                y = &y + a;
            }
        }
        let p = pfaffian(&(&y - &y.transpose()))?;
        if (m - mask.count_ones() as usize).is_multiple_of(2) {
            total += &p;
        } else {
            total -= &p;
        }
    }
    Ok(&total * &Scalar::int(1 << m))
}

/// Polynomial in `lambda` with ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfaffianPolynomial {
    pub coefficients: Vec<Scalar>,
}

impl PfaffianPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coefficients.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluate at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &MatrixN) -> MatrixN {
        eval_poly_matrix(&self.coefficients, m)
    }
}

pub(crate) fn eval_poly_matrix(coefficients: &[Scalar], m: &MatrixN) -> MatrixN {
    let n = m.size();
    let mut acc = MatrixN::zero(n);
    for c in coefficients.iter().rev() {
        acc = &(&acc * m) + &MatrixN::scalar(n, c.clone());
    }
    acc
}

/// Whether `m = J m^T J^{-1}`.
pub fn is_symplectic_self_adjoint(m: &MatrixN, j: &MatrixN) -> Result<bool> {
    if m.size() != j.size() {
        return Err(Error::SizeMismatch { expected: j.size(), found: m.size() });
    }
    let adj = &(j * &m.transpose()) * &j.inverse()?;
    Ok(&adj == m)
}

/// `pf((lambda I - M) J)`, normalized to be monic (divided by `Pf(J)`).
/// Recovered by interpolation at `lambda = 0..=n/2`.
pub fn characteristic_pfaffian(m: &MatrixN, j: &MatrixN) -> Result<PfaffianPolynomial> {
    check_skew(j)?;
    if !is_symplectic_self_adjoint(m, j)? {
        return Err(Error::NotSymplecticSelfAdjoint);
    }
    let n = m.size();
    let h = n / 2;
    let pf_j = pfaffian(j)?;
    let values: Vec<Scalar> = (0..=h)
        .map(|t| {
            let shifted = &MatrixN::scalar(n, Scalar::int(t as i64)) - m;
            pfaffian(&(&shifted * j))
        })
        .collect::<Result<_>>()?;
    // Vandermonde solve
    let v = MatrixN::from_fn(h + 1, |r, c| Scalar::int(r as i64).pow(c as u32));
    let vinv = v.inverse()?;
    let inv_pf = pf_j.inv()?;
    let coefficients = (0..=h)
        .map(|c| {
            let mut s = Scalar::zero();
            for (r, val) in values.iter().enumerate() {
                s += &(vinv.get(c, r) * val);
            }
            &s * &inv_pf
        })
        .collect();
    Ok(PfaffianPolynomial { coefficients })
}

/// Characteristic polynomial `det(lambda I - M)` by Faddeev-LeVerrier,
/// ascending coefficients, monic of degree `n`.
pub fn characteristic_polynomial(m: &MatrixN) -> Vec<Scalar> {
    let n = m.size();
    let mut c = vec![Scalar::zero(); n + 1];
    c[n] = Scalar::one();
    let mut mk = MatrixN::zero(n);
    for k in 1..=n {
        mk = &(m * &mk) + &MatrixN::scalar(n, c[n + 1 - k].clone());
        let t = (m * &mk).trace();
        c[n - k] = -(&t / &Scalar::int(k as i64));
    }
    c
}

/// Cayley-Hamilton residue `p_M(M)`; zero for every square `M`.
pub fn cayley_hamilton_residue(m: &MatrixN) -> MatrixN {
    eval_poly_matrix(&characteristic_polynomial(m), m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn skew4(v: [i64; 6]) -> MatrixN {
        let [a, b, c, d, e, f] = v;
        MatrixN::from_ints(&[&[0, a, b, c], &[-a, 0, d, e], &[-b, -d, 0, f], &[-c, -e, -f, 0]]).unwrap()
    }

    #[test]
    fn base_case() {
        let m = MatrixN::from_ints(&[&[0, 7], &[-7, 0]]).unwrap();
        assert_eq!(pfaffian(&m).unwrap(), Scalar::int(7));
        assert_eq!(pfaffian(&MatrixN::standard_j(2).unwrap()).unwrap(), Scalar::one());
    }

    #[test]
    fn four_by_four_formula() {
        let (a, b, c, d, e, f) = (2, 3, 5, 7, 11, 13);
        let m = skew4([a, b, c, d, e, f]);
        assert_eq!(pfaffian(&m).unwrap(), Scalar::int(a * f - b * e + c * d));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(pfaffian(&MatrixN::identity(3)), Err(Error::OddSize { .. })));
        assert_eq!(pfaffian(&MatrixN::identity(2)), Err(Error::NotSkew));
    }

    #[test]
    fn q2_symmetric_is_zero() {
        let a = MatrixN::from_ints(&[&[1, 4], &[4, 9]]).unwrap();
        assert!(q_n_direct(std::slice::from_ref(&a)).unwrap().is_zero());
        assert!(q_n_polarized(&[a]).unwrap().is_zero());
    }

    #[test]
    fn q2_single_subset() {
        let a = MatrixN::from_ints(&[&[1, 4], &[-2, 9]]).unwrap();
        let expect = &Scalar::int(2) * &pfaffian(&(&a - &a.transpose())).unwrap();
        assert_eq!(q_n_polarized(std::slice::from_ref(&a)).unwrap(), expect);
        assert_eq!(q_n_direct(&[a]).unwrap(), Scalar::int(12));
    }

    #[test]
    fn q4_diagonal_on_skew() {
        let x = skew4([1, -2, 3, 0, 5, -1]);
        let expect = &Scalar::int(8) * &pfaffian(&x.scale(&Scalar::int(2))).unwrap();
        assert_eq!(q_n_direct(&[x.clone(), x.clone()]).unwrap(), expect);
        assert_eq!(q_n_polarized(&[x.clone(), x]).unwrap(), expect);
    }

    #[test]
    fn q_size_mismatch() {
        assert!(matches!(q_n_direct(&[MatrixN::identity(3)]), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn char_pfaffian_scalar_cases() {
        let j2 = MatrixN::standard_j(2).unwrap();
        let p = characteristic_pfaffian(&MatrixN::scalar(2, Scalar::int(3)), &j2).unwrap();
        assert_eq!(p.coefficients, vec![Scalar::int(-3), Scalar::one()]);
        let j4 = MatrixN::standard_j(4).unwrap();
        let p = characteristic_pfaffian(&MatrixN::identity(4), &j4).unwrap();
        assert_eq!(p.coefficients, vec![Scalar::int(1), Scalar::int(-2), Scalar::int(1)]);
    }

    #[test]
    fn char_pfaffian_rejects_non_adjoint() {
        let j = MatrixN::standard_j(4).unwrap();
        let m = MatrixN::from_fn(4, |i, k| Scalar::int((i * 4 + k) as i64));
        assert_eq!(characteristic_pfaffian(&m, &j), Err(Error::NotSymplecticSelfAdjoint));
    }

    #[test]
    fn faddeev_leverrier_2x2() {
        let m = MatrixN::from_ints(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(characteristic_polynomial(&m), vec![Scalar::int(-2), Scalar::int(-5), Scalar::one()]);
        assert!(cayley_hamilton_residue(&m).is_zero());
    }
}
