use rand::Rng;

use super::matrix::MatrixN;
use super::sample::{is_orthogonal, is_symplectic, random_element};
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::words::Word;

/// Images of the free generators under a representation into `group`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationTuple {
    group: Group,
    matrices: Vec<MatrixN>,
    stars: Vec<MatrixN>,
    j: Option<MatrixN>,
}

/// Group involution: inverse for sl/gl, transpose for orthogonal groups,
/// `J A^T J^{-1}` for sp.
pub fn group_star(group: Group, a: &MatrixN, j: Option<&MatrixN>) -> Result<MatrixN> {
    match group {
        Group::Sl | Group::Gl => a.inverse(),
        Group::O | Group::SoOdd | Group::SoEven => Ok(a.transpose()),
        Group::Sp => {
            let j = j.ok_or_else(|| Error::InvalidParameter("sp needs a form J".into()))?;
            Ok(&(j * &a.transpose()) * &j.inverse()?)
        }
    }
}

impl RepresentationTuple {
    /// Checks every matrix against the group's defining equations. For sp,
    /// `j` defaults to the standard form.
    pub fn new(group: Group, matrices: Vec<MatrixN>, j: Option<MatrixN>) -> Result<Self> {
        let n = matrices.first().map(|m| m.size()).unwrap_or(0);
        if n == 0 {
            return Err(Error::InvalidParameter("representation needs at least one matrix".into()));
        }
        for m in &matrices {
            if m.size() != n {
                return Err(Error::SizeMismatch { expected: n, found: m.size() });
            }
        }
        let j = match (group, j) {
            (Group::Sp, None) => Some(MatrixN::standard_j(n)?),
            (Group::Sp, Some(j)) => {
                if j.size() != n {
                    return Err(Error::SizeMismatch { expected: n, found: j.size() });
                }
                if !j.is_skew() || j.det().is_zero() {
                    return Err(Error::InvalidParameter("J must be non-degenerate skew".into()));
                }
                Some(j)
            }
            (_, j) => j,
        };
        for (i, m) in matrices.iter().enumerate() {
            let ok = match group {
                Group::Sl => m.det().is_one(),
                Group::Gl => !m.det().is_zero(),
                Group::O => is_orthogonal(m),
                Group::SoOdd | Group::SoEven => is_orthogonal(m) && m.det().is_one(),
                Group::Sp => is_symplectic(m, j.as_ref().expect("sp form")),
            };
            if !ok {
                return Err(Error::InvalidParameter(format!("matrix {} is not in {group}", i + 1)));
            }
        }
        let stars = matrices
            .iter()
            .map(|m| group_star(group, m, j.as_ref()))
            .collect::<Result<_>>()?;
        Ok(RepresentationTuple { group, matrices, stars, j })
    }

    /// `count` independent random elements of `group`.
    pub fn random<R: Rng + ?Sized>(group: Group, n: usize, count: usize, rng: &mut R) -> Result<Self> {
        group.check_size(n)?;
        let j = if group == Group::Sp { Some(MatrixN::standard_j(n)?) } else { None };
        let form = j.clone().unwrap_or_else(|| MatrixN::identity(n));
        let matrices = (0..count)
            .map(|_| random_element(group, n, &form, rng))
            .collect::<Result<_>>()?;
        RepresentationTuple::new(group, matrices, j)
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn size(&self) -> usize {
        self.matrices[0].size()
    }

    pub fn matrices(&self) -> &[MatrixN] {
        &self.matrices
    }

    pub fn form(&self) -> Option<&MatrixN> {
        self.j.as_ref()
    }

    pub fn star(&self, a: &MatrixN) -> Result<MatrixN> {
        group_star(self.group, a, self.j.as_ref())
    }
}

/// Product of the letter images; starred letters map to the involution.
pub fn eval_word(rep: &RepresentationTuple, w: &Word) -> Result<MatrixN> {
    let mut out: Option<MatrixN> = None;
    for l in w.letters() {
        let i = l.index() as usize;
        if i > rep.matrices.len() {
            return Err(Error::LetterOutOfRange { index: l.index(), available: rep.matrices.len() });
        }
        let m = if l.is_starred() { &rep.stars[i - 1] } else { &rep.matrices[i - 1] };
        out = Some(match out {
            None => m.clone(),
            Some(acc) => &acc * m,
        });
    }
    Ok(out.expect("words are nonempty"))
}

pub fn trace(m: &MatrixN) -> Scalar {
    m.trace()
}
