use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;

use super::report::SuiteReport;
use super::sl2::{Sl2Rewriter, TracePoly};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::gensets::{generating_set, GenOptions, Prune};
use crate::group::Group;
use crate::matrices::sample::{
    random_matrix, random_nonzero_rational, random_rational, random_skew, random_so, random_symmetric, rng_from_seed,
};
use crate::matrices::{
    cayley_hamilton_residue, characteristic_pfaffian, characteristic_polynomial, pfaffian, q_n_direct,
    q_n_polarized, torus_element_so, MatrixN, Scalar,
};
use crate::nilquot::{multilinear_nilpotency_check, nilpotency_check, nu_bound, quotient_basis, IdealMode, QuotientEngine};
use crate::words::{Alphabet, Letter, Word};

pub const DEFAULT_TRIALS: usize = 50;

/// Independent stream per (seed, tag).
fn stream(seed: u64, tag: u64) -> ChaCha8Rng {
    rng_from_seed(seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17))
}

/// First failing trial's witness, if any.
fn first_failure(trials: usize, mut f: impl FnMut(usize) -> Result<Option<String>>) -> Result<Option<String>> {
    for t in 0..trials {
        if let Some(w) = f(t)? {
            return Ok(Some(format!("trial {t}: {w}")));
        }
    }
    Ok(None)
}

fn list(ms: &[MatrixN]) -> String {
    ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("; ")
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

fn check_even(n: usize) -> Result<usize> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::OddSize { group: "so_even", n });
    }
    Ok(n / 2)
}

/// Vanishing of the quotient at degree `nu_n` (degree `n` in commutative
/// mode), and survival one degree lower where that is feasible (`n <= 3`,
/// plain mode).
pub fn suite_nagata_higman(n: usize, k: u32, mode: IdealMode) -> Result<SuiteReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("nil index must be positive".into()));
    }
    let mut r = SuiteReport::new("nagata_higman", 0);
    let top = match mode {
        IdealMode::Commutative => n,
        _ => nu_bound(n).nu,
    };
    let vanishes = nilpotency_check(n, top, k, mode)?;
    r.assert(
        format!("n={n}, {mode}: every degree-{top} word over {k} letters lies in the ideal"),
        vanishes,
        || {
            let alphabet = Alphabet::plain(k);
            let left = quotient_basis(n, top, &alphabet, mode).unwrap_or_default();
            format!("surviving words: {}", left.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", "))
        },
    );
    if mode == IdealMode::Plain && n <= 3 && top > 1 {
        let d = top - 1;
        let basis = quotient_basis(n, d, &Alphabet::plain(d as u32), mode)?;
        let shown: Vec<String> = basis.iter().take(4).map(|w| w.to_string()).collect();
        r.note(
            format!("n={n}: degree {d} over {d} letters does not vanish"),
            !basis.is_empty(),
            format!("{} surviving words, e.g. {}", basis.len(), shown.join(", ")),
        );
    }
    Ok(r)
}

/// Multilinear form of the vanishing check at degree `nu_n`; feasible well
/// beyond the full check (`n = 3` runs in minutes).
pub fn suite_nagata_higman_multilinear(n: usize) -> Result<SuiteReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("nil index must be positive".into()));
    }
    let mut r = SuiteReport::new("nagata_higman", 0);
    let bound = nu_bound(n);
    let nu = bound.nu;
    r.assert(
        format!("n={n}: every product of {nu} distinct letters lies in the ideal"),
        multilinear_nilpotency_check(n, nu, IdealMode::Plain)?,
        || format!("degree {nu} multilinear component is nonzero"),
    );
    if nu > 1 && bound.is_exact() {
        r.assert(
            format!("n={n}: some product of {} distinct letters survives", nu - 1),
            !multilinear_nilpotency_check(n, nu - 1, IdealMode::Plain)?,
            || format!("degree {} multilinear component vanished", nu - 1),
        );
    }
    Ok(r)
}

/// Trace identities in `SL(2)` on random exact pairs.
pub fn suite_sl2_identities(trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("sl2_identities", seed);
    let mut rng = stream(seed, 1);
    let pairs: Vec<(MatrixN, MatrixN)> = (0..trials)
        .map(|_| (crate::matrices::sample::random_sl(2, &mut rng), crate::matrices::sample::random_sl(2, &mut rng)))
        .collect();
    let two = Scalar::int(2);
    let square = |b: &MatrixN| (b * b).trace() == &(&b.trace() * &b.trace()) - &two;
    let abb = |a: &MatrixN, b: &MatrixN| {
        let lhs = (&(a * b) * b).trace();
        let rhs = &(&b.trace() * &(a * b).trace()) - &a.trace();
        lhs == rhs
    };
    let fundamental = |a: &MatrixN, b: &MatrixN| -> Result<bool> {
        let binv = b.inverse()?;
        Ok(&(a * b).trace() + &(a * &binv).trace() == &a.trace() * &b.trace())
    };
    let witness = |t: usize, a: &MatrixN, b: &MatrixN| format!("trial {t}: A = {a}, B = {b}");

    let fail = pairs.iter().enumerate().find(|(_, (_, b))| !square(b)).map(|(t, (a, b))| witness(t, a, b));
    r.check(format!("tr(B^2) = tr(B)^2 - 2 on {trials} random pairs"), fail);
    let fail = pairs.iter().enumerate().find(|(_, (a, b))| !abb(a, b)).map(|(t, (a, b))| witness(t, a, b));
    r.check(format!("tr(AB^2) = tr(B) tr(AB) - tr(A) on {trials} random pairs"), fail);
    let mut fail = None;
    for (t, (a, b)) in pairs.iter().enumerate() {
        if !fundamental(a, b)? {
            fail = Some(witness(t, a, b));
            break;
        }
    }
    r.check(format!("tr(AB) + tr(AB^-1) = tr(A) tr(B) on {trials} random pairs"), fail);

    let i2 = MatrixN::identity(2);
    r.assert("A = B = I: tr(AB^2) = 2 = 2*2 - 2", abb(&i2, &i2) && (&i2 * &i2).trace() == two, || {
        "A = B = I".into()
    });
    let fail = pairs.iter().enumerate().find(|(_, (_, b))| !abb(&i2, b)).map(|(t, (_, b))| witness(t, &i2, b));
    r.check("A = I: the AB^2 identity reduces to the square identity", fail);

    // the sign variant tr(AB^2) = tr(B) tr(AB) + tr(A) fails whenever tr(A) != 0
    let counter = pairs.iter().enumerate().find(|(_, (a, b))| {
        let lhs = (&(a * b) * b).trace();
        lhs != &(&b.trace() * &(a * b).trace()) + &a.trace()
    });
    match counter {
        Some((t, (a, b))) => r.note("tr(AB^2) = tr(B) tr(AB) + tr(A) is refuted", true, witness(t, a, b)),
        None => r.check("tr(AB^2) = tr(B) tr(AB) + tr(A) is refuted", Some("no counterexample among the trials".into())),
    }
    Ok(r)
}

/// `Q_n` identities for even `n`.
pub fn suite_qn(n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let m = check_even(n)?;
    let mut r = SuiteReport::new("qn", seed);
    let mut rng = stream(seed, 100 + n as u64);
    let c = Scalar::int((1i64 << m) * factorial(m));

    let fail = first_failure(trials, |_| {
        let x = random_matrix(n, &mut rng);
        let lhs = q_n_direct(&vec![x.clone(); m])?;
        let rhs = &c * &pfaffian(&(&x - &x.transpose()))?;
        Ok((lhs != rhs).then(|| format!("X = {x}, Q = {lhs}, rhs = {rhs}")))
    })?;
    r.check(format!("n={n}: Q(X,...,X) = 2^{m} {m}! Pf(X - X^T) on {trials} random X"), fail);

    // torus: (2i)^m m! prod (x_j - 1/x_j)
    let torus_rhs = |params: &[Scalar]| -> Result<Scalar> {
        let mut p = &Scalar::new(BigRational::zero(), BigRational::from_integer(BigInt::from(2))).pow(m as u32)
            * &Scalar::int(factorial(m));
        for x in params {
            p = &p * &(x - &x.inv()?);
        }
        Ok(p)
    };
    let fail = first_failure(trials, |_| {
        let params: Vec<Scalar> = (0..m).map(|_| random_nonzero_rational(&mut rng)).collect();
        let x = torus_element_so(&params)?;
        let lhs = q_n_direct(&vec![x.clone(); m])?;
        let rhs = torus_rhs(&params)?;
        let pf = &c * &pfaffian(&(&x - &x.transpose()))?;
        Ok((lhs != rhs || pf != rhs).then(|| {
            let ps: Vec<String> = params.iter().map(|p| p.to_string()).collect();
            format!("x = ({}), Q = {lhs}, product form = {rhs}", ps.join(", "))
        }))
    })?;
    r.check(format!("n={n}: torus Q(X,...,X) = (2i)^{m} {m}! prod(x_j - 1/x_j) on {trials} random parameters"), fail);

    if n == 2 {
        let x = torus_element_so(&[Scalar::int(2)])?;
        let q = q_n_direct(std::slice::from_ref(&x))?;
        let pf = &c * &pfaffian(&(&x - &x.transpose()))?;
        let expect = Scalar::new(BigRational::zero(), BigRational::from_integer(BigInt::from(3)));
        r.assert("n=2: torus x=2 gives Q_2 = 3i on both paths", q == expect && pf == expect, || {
            format!("Q = {q}, 2 Pf = {pf}")
        });
    }

    let fail = first_failure(trials, |_| {
        let x = random_symmetric(n, &mut rng);
        let q = q_n_direct(&vec![x.clone(); m])?;
        Ok((!q.is_zero()).then(|| format!("X = {x}, Q = {q}")))
    })?;
    r.check(format!("n={n}: symmetric X gives 0"), fail);

    let fail = first_failure(trials, |_| {
        let xs: Vec<MatrixN> = (0..m).map(|_| random_matrix(n, &mut rng)).collect();
        let d = q_n_direct(&xs)?;
        let p = q_n_polarized(&xs)?;
        Ok((d != p).then(|| format!("X = {}, direct = {d}, polarized = {p}", list(&xs))))
    })?;
    r.check(format!("n={n}: direct and polarized Q agree on {trials} random tuples"), fail);

    let fail = first_failure(trials, |_| {
        let xs: Vec<MatrixN> = (0..m).map(|_| random_matrix(n, &mut rng)).collect();
        let y = random_matrix(n, &mut rng);
        let a = random_rational(&mut rng);
        let b = random_rational(&mut rng);
        let mut mixed = xs.clone();
        mixed[0] = &xs[0].scale(&a) + &y.scale(&b);
        let mut with_y = xs.clone();
        with_y[0] = y.clone();
        let lhs = q_n_direct(&mixed)?;
        let rhs = &(&a * &q_n_direct(&xs)?) + &(&b * &q_n_direct(&with_y)?);
        Ok((lhs != rhs).then(|| format!("X = {}, Y = {y}, a = {a}, b = {b}", list(&xs))))
    })?;
    r.check(format!("n={n}: linear in the first argument"), fail);

    if m >= 2 {
        let fail = first_failure(trials, |_| {
            let xs: Vec<MatrixN> = (0..m).map(|_| random_matrix(n, &mut rng)).collect();
            let q = q_n_direct(&xs)?;
            let mut swapped = xs.clone();
            swapped.swap(0, 1);
            let mut reversed = xs.clone();
            reversed.reverse();
            let ok = q_n_direct(&swapped)? == q && q_n_direct(&reversed)? == q;
            Ok((!ok).then(|| format!("X = {}", list(&xs))))
        })?;
        r.check(format!("n={n}: symmetric under permuting arguments"), fail);
    }

    let fail = first_failure(trials, |_| {
        let xs: Vec<MatrixN> = (0..m).map(|_| random_matrix(n, &mut rng)).collect();
        let g = random_so(n, &mut rng)?;
        let gt = g.transpose();
        let conj: Vec<MatrixN> = xs.iter().map(|x| &(&g * x) * &gt).collect();
        let ok = q_n_direct(&conj)? == q_n_direct(&xs)?;
        Ok((!ok).then(|| format!("X = {}, g = {g}", list(&xs))))
    })?;
    r.check(format!("n={n}: invariant under simultaneous SO({n}) conjugation"), fail);

    let sign = if m % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
    let fail = first_failure(trials, |_| {
        let xs: Vec<MatrixN> = (0..m).map(|_| random_matrix(n, &mut rng)).collect();
        let ts: Vec<MatrixN> = xs.iter().map(MatrixN::transpose).collect();
        let ok = q_n_direct(&ts)? == &sign * &q_n_direct(&xs)?;
        Ok((!ok).then(|| format!("X = {}", list(&xs))))
    })?;
    r.check(format!("n={n}: transposing every argument multiplies Q by (-1)^{m}"), fail);
    Ok(r)
}

/// Power traces of the torus matrix at `x = 2` and its transpose agree, while
/// `Q_2` tells them apart.
pub fn suite_separation_so2() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("separation_so2", 0);
    let a = torus_element_so(&[Scalar::int(2)])?;
    let at = a.transpose();
    r.assert("tr(A) = tr(A^T) = 5/2", a.trace() == Scalar::ratio(5, 2) && at.trace() == Scalar::ratio(5, 2), || {
        format!("A = {a}")
    });
    let bad = (1..=6u32).find(|&k| a.pow(k).trace() != at.pow(k).trace());
    r.check("tr(A^k) = tr((A^T)^k) for k = 1..6", bad.map(|k| format!("k = {k}, A = {a}")));
    let qa = q_n_direct(std::slice::from_ref(&a))?;
    let qt = q_n_direct(std::slice::from_ref(&at))?;
    let three_i = Scalar::new(BigRational::zero(), BigRational::from_integer(BigInt::from(3)));
    r.assert("Q_2(A) = 3i", qa == three_i, || format!("Q_2(A) = {qa}"));
    r.assert("Q_2(A^T) = -Q_2(A) != 0", qt == -&qa && !qa.is_zero(), || format!("Q_2(A) = {qa}, Q_2(A^T) = {qt}"));
    let one = torus_element_so(&[Scalar::one()])?;
    let q1 = q_n_direct(std::slice::from_ref(&one))?;
    r.assert("x = 1: A = I and Q_2 vanishes, so nothing is separated", one == MatrixN::identity(2) && q1.is_zero(), || {
        format!("A = {one}, Q_2 = {q1}")
    });
    Ok(r)
}

/// `M = X + J X^T J^{-1}` is symplectically self-adjoint.
fn self_adjoint_part(x: &MatrixN, j: &MatrixN, jinv: &MatrixN) -> MatrixN {
    x + &(&(j * &x.transpose()) * jinv)
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (k, y) in b.iter().enumerate() {
            out[i + k] += &(x * y);
        }
    }
    out
}

/// Characteristic Pfaffian identities for even `n`.
pub fn suite_char_pfaffian(n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let m = check_even(n)?;
    let mut r = SuiteReport::new("char_pfaffian", seed);
    let mut rng = stream(seed, 200 + n as u64);
    let j = MatrixN::standard_j(n)?;
    let jinv = j.inverse()?;
    let ms: Vec<MatrixN> = (0..trials).map(|_| self_adjoint_part(&random_matrix(n, &mut rng), &j, &jinv)).collect();
    let pfs = ms.iter().map(|mm| characteristic_pfaffian(mm, &j)).collect::<Result<Vec<_>>>()?;

    let fail = ms.iter().zip(&pfs).enumerate().find(|(_, (mm, p))| !p.eval_matrix(mm).is_zero());
    r.check(
        format!("n={n}: Pf_M(M) = 0 for {trials} random self-adjoint M"),
        fail.map(|(t, (mm, _))| format!("trial {t}: M = {mm}")),
    );

    let fail = ms.iter().zip(&pfs).enumerate().find(|(_, (_, p))| p.degree() != m || !p.coefficients[m].is_one());
    r.check(
        format!("n={n}: Pf_M is monic of degree {m}"),
        fail.map(|(t, (mm, p))| format!("trial {t}: M = {mm}, coefficients {:?}", p.coefficients)),
    );

    let mut fail = None;
    for (t, (mm, p)) in ms.iter().zip(&pfs).enumerate() {
        let scaled = characteristic_pfaffian(&mm.scale(&Scalar::int(2)), &j)?;
        let ok = (0..=m).all(|i| scaled.coefficients[i] == &Scalar::int(2).pow((m - i) as u32) * &p.coefficients[i]);
        if !ok {
            fail = Some(format!("trial {t}: M = {mm}"));
            break;
        }
    }
    r.check(format!("n={n}: Pf_2M(2 lambda) = 2^{m} Pf_M(lambda)"), fail);

    let fail = ms.iter().zip(&pfs).enumerate().find(|(_, (mm, p))| {
        poly_mul(&p.coefficients, &p.coefficients) != characteristic_polynomial(mm)
    });
    r.check(
        format!("n={n}: Pf_M(lambda)^2 = det(lambda I - M)"),
        fail.map(|(t, (mm, _))| format!("trial {t}: M = {mm}")),
    );

    let t = Scalar::int(3);
    let ti = MatrixN::scalar(n, t.clone());
    let p = characteristic_pfaffian(&ti, &j)?;
    let mut expect = vec![Scalar::one()];
    for _ in 0..m {
        expect = poly_mul(&expect, &[-&t, Scalar::one()]);
    }
    r.assert(
        format!("n={n}: M = 3I gives (lambda - 3)^{m} and annihilates M"),
        p.coefficients == expect && p.eval_matrix(&ti).is_zero(),
        || format!("coefficients {:?}", p.coefficients),
    );

    let x = random_skew(n, &mut rng);
    let rejected = x.is_zero() || characteristic_pfaffian(&(&x + &MatrixN::identity(n)), &j).is_err();
    r.assert(format!("n={n}: inputs that are not self-adjoint are rejected"), rejected, || {
        format!("M = {}", &x + &MatrixN::identity(n))
    });

    let fail = first_failure(trials, |_| {
        let x = random_matrix(n, &mut rng);
        Ok((!cayley_hamilton_residue(&x).is_zero()).then(|| format!("X = {x}")))
    })?;
    r.check(format!("n={n}: every X satisfies its characteristic polynomial"), fail);
    Ok(r)
}

/// Exact real 2x2 matrix stored as an integer matrix over a common
/// denominator.
#[derive(Clone)]
struct Mat2 {
    num: [BigInt; 4],
    den: BigInt,
}

impl Mat2 {
    fn from_matrix(m: &MatrixN) -> Self {
        let entries = [0, 1, 2, 3].map(|k| m.get(k / 2, k % 2).re.clone());
        let den = entries.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let num = entries.map(|e| (e * BigRational::from_integer(den.clone())).to_integer());
        Mat2 { num, den }
    }

    fn identity() -> Self {
        Mat2 { num: [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()], den: BigInt::one() }
    }

    fn mul(&self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.num;
        let [e, f, g, h] = &o.num;
        Mat2 { num: [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h], den: &self.den * &o.den }
    }

    /// Inverse of a determinant-one matrix.
    fn sl_inverse(&self) -> Mat2 {
        let [a, b, c, d] = &self.num;
        Mat2 { num: [d.clone(), -b, -c, a.clone()], den: self.den.clone() }
    }

    fn trace_num(&self) -> BigInt {
        &self.num[0] + &self.num[3]
    }

    fn trace(&self) -> BigRational {
        BigRational::new(self.trace_num(), self.den.clone())
    }

    /// Whether the trace equals `v`, without normalizing.
    fn trace_is(&self, v: &BigRational) -> bool {
        self.trace_num() * v.denom() == v.numer() * &self.den
    }
}

fn symbol_letter(s: usize) -> Letter {
    Letter::new(s as u32 / 2 + 1, s % 2 == 1)
}

/// Preorder walk over all words of length `1..=max_len` in `symbols` letters.
fn walk_words<S>(
    root: &S,
    symbols: usize,
    max_len: usize,
    step: &impl Fn(&S, usize) -> S,
    visit: &mut impl FnMut(&S, &[usize]),
) {
    fn go<S>(
        state: &S,
        path: &mut Vec<usize>,
        symbols: usize,
        max_len: usize,
        step: &impl Fn(&S, usize) -> S,
        visit: &mut impl FnMut(&S, &[usize]),
    ) {
        if path.len() == max_len {
            return;
        }
        for s in 0..symbols {
            let next = step(state, s);
            path.push(s);
            visit(&next, path);
            go(&next, path, symbols, max_len, step, visit);
            path.pop();
        }
    }
    go(root, &mut Vec::new(), symbols, max_len, step, visit);
}

/// Rewrites `tr(w)` for every word of length at most `max_len` over `rank`
/// letters and their inverses into the generator traces and checks each
/// identity on `trials` random `SL(2)` tuples. Only `SL(2)` is supported.
pub fn suite_generator_soundness(
    group: Group,
    n: usize,
    rank: u32,
    max_len: usize,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport> {
    if group != Group::Sl || n != 2 {
        return Err(Error::Unsupported(format!(
            "trace rewriting is only available for sl at n = 2, not {group} at n = {n}"
        )));
    }
    let mut rw = Sl2Rewriter::new(rank)?;
    let mut r = SuiteReport::new("generator_soundness", seed);
    let vars = rw.variables().clone();
    let nv = vars.len();

    let engine = QuotientEngine::new();
    let opts = GenOptions { prune: Prune::Sl2Identities, ordered_q: false };
    let set = generating_set(&engine, Group::Sl, 2, rank, &opts)?;
    let mut gen_words: Vec<Word> = set.trace_words().cloned().collect();
    gen_words.sort();
    let mut var_words: Vec<Word> = (0..nv).map(|i| vars.word(i)).collect();
    var_words.sort();
    r.assert(
        format!("rank {rank}: rewriting targets are exactly the pruned generating set"),
        gen_words == var_words,
        || format!("generating set {}", set.to_text().trim().replace('\n', ", ")),
    );

    let square = rw.rewrite(&Word::from_indices(&[1, 1]))?;
    let expect = TracePoly::var(0, nv).mul(&TracePoly::var(0, nv)).sub(&TracePoly::constant(2, nv));
    r.assert("tr(g1 g1) rewrites to t1^2 - 2", square == expect, || square.display(&vars).to_string());
    if rank >= 2 {
        let abab = rw.rewrite(&Word::from_indices(&[1, 2, 1, 2]))?;
        let allowed: Vec<usize> = (0..nv).filter(|&i| vars.word(i).max_index() <= 2).collect();
        let used = abab.variables();
        r.note(
            "tr(g1 g2 g1 g2) is a polynomial in t1, t2, t12",
            used.iter().all(|v| allowed.contains(v)),
            abab.display(&vars).to_string(),
        );
    }
    if rank >= 3 {
        let triple = rw.rewrite(&Word::from_indices(&[1, 2, 3]))?;
        r.assert("tr(g1 g2 g3) is itself a generator", triple == TracePoly::var(nv - 1, nv), || {
            triple.display(&vars).to_string()
        });
    }

    // rewrite every word once; words with the same canonical class share a polynomial
    let symbols = 2 * rank as usize;
    let mut polys: Vec<TracePoly> = Vec::new();
    let mut poly_ids: std::collections::HashMap<TracePoly, usize> = std::collections::HashMap::new();
    let mut plan: Vec<(usize, usize)> = Vec::new(); // (length, poly id) in walk order
    let mut rewrite_error = None;
    walk_words(&(), symbols, max_len, &|_, _| (), &mut |_, path| {
        let letters: Vec<Letter> = path.iter().map(|&s| symbol_letter(s)).collect();
        let w = Word::new(letters).expect("nonempty");
        match rw.rewrite(&w) {
            Ok(p) => {
                let next = polys.len();
                let id = *poly_ids.entry(p.clone()).or_insert(next);
                if id == next {
                    polys.push(p);
                }
                plan.push((path.len(), id));
            }
            Err(e) => {
                rewrite_error.get_or_insert(e);
            }
        }
    });
    if let Some(e) = rewrite_error {
        return Err(e);
    }

    let mut rng = stream(seed, 300 + rank as u64);
    let tuples: Vec<Vec<MatrixN>> = (0..trials)
        .map(|_| (0..rank).map(|_| crate::matrices::sample::random_sl(2, &mut rng)).collect())
        .collect();

    // per trial, per length: first mismatch
    let results: Vec<Vec<Option<String>>> = Execution::default().map(&tuples, |tuple| {
        let gens: Vec<Mat2> = tuple
            .iter()
            .flat_map(|m| {
                let a = Mat2::from_matrix(m);
                let inv = a.sl_inverse();
                [a, inv]
            })
            .collect();
        let values: Vec<BigRational> = (0..nv)
            .map(|i| {
                vars.word(i)
                    .letters()
                    .iter()
                    .fold(Mat2::identity(), |acc, l| acc.mul(&gens[2 * (l.index() as usize - 1)]))
                    .trace()
            })
            .collect();
        let expected: Vec<BigRational> = polys.iter().map(|p| p.eval(&values)).collect();
        let mut fails: Vec<Option<String>> = vec![None; max_len + 1];
        let mut k = 0;
        walk_words(&Mat2::identity(), symbols, max_len, &|acc: &Mat2, s| acc.mul(&gens[s]), &mut |acc, path| {
            let (len, id) = plan[k];
            k += 1;
            if fails[len].is_none() && !acc.trace_is(&expected[id]) {
                let letters: Vec<Letter> = path.iter().map(|&s| symbol_letter(s)).collect();
                let w = Word::new(letters).expect("nonempty");
                fails[len] = Some(format!(
                    "word {w}, tuple {}, tr = {}, polynomial {} = {}",
                    list(tuple),
                    acc.trace(),
                    polys[id].display(&vars),
                    expected[id]
                ));
            }
        });
        fails
    });

    for len in 1..=max_len {
        let count = symbols.pow(len as u32);
        let fail = results.iter().enumerate().find_map(|(t, f)| f[len].as_ref().map(|w| format!("trial {t}: {w}")));
        r.check(
            format!(
                "all {count} words of length {len} over rank {rank} rewrite into generator traces and match on {trials} random tuples"
            ),
            fail,
        );
    }
    Ok(r)
}

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 6] =
    ["nagata_higman", "sl2_identities", "qn", "separation_so2", "char_pfaffian", "generator_soundness"];

/// Runs a named suite with its default parameters.
pub fn run_suite(name: &str, seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut report = match name {
        "nagata_higman" => {
            let mut r = suite_nagata_higman(2, 3, IdealMode::Plain)?;
            r.extend(suite_nagata_higman(2, 3, IdealMode::Commutative)?);
            r
        }
        "sl2_identities" => suite_sl2_identities(trials, seed)?,
        "qn" => merged("qn", [2, 4, 6].map(|n| suite_qn(n, trials, seed)))?,
        "separation_so2" => suite_separation_so2()?,
        "char_pfaffian" => merged("char_pfaffian", [2, 4, 6].map(|n| suite_char_pfaffian(n, trials, seed)))?,
        "generator_soundness" => suite_generator_soundness(Group::Sl, 2, 3, 6, trials, seed)?,
        other => return Err(Error::InvalidParameter(format!("unknown suite {other:?}"))),
    };
    report.seed = seed;
    Ok(report)
}

fn merged<const K: usize>(name: &str, parts: [Result<SuiteReport>; K]) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(name, 0);
    for p in parts {
        r.extend(p?);
    }
    Ok(r)
}
