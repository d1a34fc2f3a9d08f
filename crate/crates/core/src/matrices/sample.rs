//! Exact random group elements with small-height rational entries.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::MatrixN;
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::group::Group;

/// Bound on numerators and denominators of sampled rationals.
pub const HEIGHT: i64 = 10;

const MAX_RETRIES: usize = 64;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let num = rng.gen_range(-HEIGHT..=HEIGHT);
    let den = rng.gen_range(1..=HEIGHT);
    Scalar::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

pub fn random_nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    loop {
        let x = random_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> MatrixN {
    MatrixN::from_fn(n, |_, _| random_rational(rng))
}

pub fn random_skew<R: Rng + ?Sized>(n: usize, rng: &mut R) -> MatrixN {
    let mut m = MatrixN::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            let x = random_rational(rng);
            m.set(j, i, -&x);
            m.set(i, j, x);
        }
    }
    m
}

pub fn random_symmetric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> MatrixN {
    let mut m = MatrixN::zero(n);
    for i in 0..n {
        for j in i..n {
            let x = random_rational(rng);
            m.set(j, i, x.clone());
            m.set(i, j, x);
        }
    }
    m
}

/// Product of `2 n^2` random elementary transvections.
pub fn random_sl<R: Rng + ?Sized>(n: usize, rng: &mut R) -> MatrixN {
    let mut m = MatrixN::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut t = MatrixN::identity(n);
        t.set(i, j, random_nonzero_rational(rng));
        m = &m * &t;
    }
    m
}

/// Cayley transform `(I - S)^{-1} (I + S)`.
fn cayley(s: &MatrixN) -> Option<MatrixN> {
    let n = s.size();
    let id = MatrixN::identity(n);
    let inv = (&id - s).inverse().ok()?;
    Some(&inv * &(&id + s))
}

pub fn random_so<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<MatrixN> {
    for _ in 0..MAX_RETRIES {
        if let Some(a) = cayley(&random_skew(n, rng)) {
            if is_orthogonal(&a) && a.det().is_one() {
                return Ok(a);
            }
        }
    }
    Err(Error::SamplerExhausted("so"))
}

/// Cayley transform of `S = J H` with `H` symmetric, which satisfies
/// `S^T J + J S = 0`.
pub fn random_sp<R: Rng + ?Sized>(n: usize, j: &MatrixN, rng: &mut R) -> Result<MatrixN> {
    if n % 2 == 1 {
        return Err(Error::OddSize { group: "sp", n });
    }
    for _ in 0..MAX_RETRIES {
        let s = j * &random_symmetric(n, rng);
        if let Some(a) = cayley(&s) {
            if is_symplectic(&a, j) {
                return Ok(a);
            }
        }
    }
    Err(Error::SamplerExhausted("sp"))
}

pub fn random_gl<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<MatrixN> {
    for _ in 0..MAX_RETRIES {
        let m = random_matrix(n, rng);
        if !m.det().is_zero() {
            return Ok(m);
        }
    }
    Err(Error::SamplerExhausted("gl"))
}

/// An element of `O(n)` with determinant `-1` half of the time.
pub fn random_o<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<MatrixN> {
    let a = random_so(n, rng)?;
    if rng.gen_bool(0.5) {
        let mut flip = MatrixN::identity(n);
        flip.set(0, 0, Scalar::int(-1));
        Ok(&flip * &a)
    } else {
        Ok(a)
    }
}

pub fn random_element<R: Rng + ?Sized>(group: Group, n: usize, j: &MatrixN, rng: &mut R) -> Result<MatrixN> {
    match group {
        Group::Sl => Ok(random_sl(n, rng)),
        Group::Gl => random_gl(n, rng),
        Group::Sp => random_sp(n, j, rng),
        Group::O => random_o(n, rng),
        Group::SoOdd | Group::SoEven => random_so(n, rng),
    }
}

pub fn sample_sl(n: usize, seed: u64) -> MatrixN {
    random_sl(n, &mut rng_from_seed(seed))
}

pub fn sample_so(n: usize, seed: u64) -> Result<MatrixN> {
    random_so(n, &mut rng_from_seed(seed))
}

pub fn sample_sp(n: usize, seed: u64) -> Result<MatrixN> {
    random_sp(n, &MatrixN::standard_j(n)?, &mut rng_from_seed(seed))
}

pub fn is_orthogonal(a: &MatrixN) -> bool {
    a * &a.transpose() == MatrixN::identity(a.size())
}

pub fn is_symplectic(a: &MatrixN, j: &MatrixN) -> bool {
    &(a * j) * &a.transpose() == *j
}

/// Block-diagonal torus element of `SO(n)` with blocks
/// `1/2 [[x + 1/x, i(x - 1/x)], [-i(x - 1/x), x + 1/x]]`.
pub fn torus_element_so(params: &[Scalar]) -> Result<MatrixN> {
    if params.is_empty() {
        return Err(Error::InvalidParameter("torus needs at least one parameter".into()));
    }
    let n = 2 * params.len();
    let half = Scalar::ratio(1, 2);
    let mut m = MatrixN::zero(n);
    for (k, x) in params.iter().enumerate() {
        let xi = x.inv().map_err(|_| Error::ZeroParameter)?;
        let c = &half * &(x + &xi);
        let s = &half * &(&Scalar::i() * &(x - &xi));
        let r = 2 * k;
        m.set(r, r, c.clone());
        m.set(r + 1, r + 1, c);
        m.set(r + 1, r, -&s);
        m.set(r, r + 1, s);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samplers_satisfy_group_equations() {
        for seed in 0..5 {
            assert!(sample_sl(2, seed).det().is_one());
            assert!(sample_sl(3, seed).det().is_one());
            let a = sample_so(2, seed).unwrap();
            assert!(is_orthogonal(&a) && a.det().is_one());
            let a = sample_so(3, seed).unwrap();
            assert!(is_orthogonal(&a) && a.det().is_one());
            let j = MatrixN::standard_j(4).unwrap();
            assert!(is_symplectic(&sample_sp(4, seed).unwrap(), &j));
            assert!(is_symplectic(&sample_sp(2, seed).unwrap(), &MatrixN::standard_j(2).unwrap()));
        }
    }

    #[test]
    fn seeds_reproduce() {
        assert_eq!(sample_sl(3, 7), sample_sl(3, 7));
        assert_eq!(sample_so(4, 7).unwrap(), sample_so(4, 7).unwrap());
    }

    #[test]
    fn torus_examples() {
        assert_eq!(torus_element_so(&[Scalar::one()]).unwrap(), MatrixN::identity(2));
        let a = torus_element_so(&[Scalar::int(2)]).unwrap();
        assert_eq!(a.get(0, 0), &Scalar::ratio(5, 4));
        assert_eq!(a.get(0, 1), &(&Scalar::i() * &Scalar::ratio(3, 4)));
        assert!(is_orthogonal(&a) && a.det().is_one());
        assert_eq!(torus_element_so(&[Scalar::zero()]), Err(Error::ZeroParameter));
    }
}
