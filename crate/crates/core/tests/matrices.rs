use charvar::matrices::{characteristic_polynomial, pfaffian, q_n_direct, q_n_polarized, MatrixN, Scalar};
use proptest::prelude::*;

/// Pfaffian by summing over perfect matchings, sign from the crossing count.
fn pf_matchings(a: &[Vec<i64>]) -> i64 {
    fn go(a: &[Vec<i64>], free: &mut Vec<usize>, pairs: &mut Vec<(usize, usize)>) -> i64 {
        if free.is_empty() {
            let crossings = pairs
                .iter()
                .enumerate()
                .flat_map(|(x, &(i, j))| pairs[x + 1..].iter().map(move |&(k, l)| (i, j, k, l)))
                .filter(|&(i, j, k, l)| (i < k && k < j && j < l) || (k < i && i < l && l < j))
                .count();
            let prod: i64 = pairs.iter().map(|&(i, j)| a[i][j]).product();
            return if crossings % 2 == 0 { prod } else { -prod };
        }
        let i = free.remove(0);
        let mut total = 0;
        for p in 0..free.len() {
            let j = free.remove(p);
            pairs.push((i, j));
            total += go(a, free, pairs);
            pairs.pop();
            free.insert(p, j);
        }
        free.insert(0, i);
        total
    }
    go(a, &mut (0..a.len()).collect(), &mut Vec::new())
}

fn det_leibniz(a: &[Vec<i64>]) -> i64 {
    fn go(a: &[Vec<i64>], row: usize, used: &mut Vec<bool>, sign: i64) -> i64 {
        if row == a.len() {
            return sign;
        }
        let mut total = 0;
        for c in 0..a.len() {
            if used[c] {
                continue;
            }
            let inversions = used[c + 1..].iter().filter(|&&u| u).count() as i64;
            used[c] = true;
            let s = if inversions % 2 == 0 { sign } else { -sign };
            total += a[row][c] * go(a, row + 1, used, s);
            used[c] = false;
        }
        total
    }
    go(a, 0, &mut vec![false; a.len()], 1)
}

fn to_matrix(a: &[Vec<i64>]) -> MatrixN {
    MatrixN::from_fn(a.len(), |i, j| Scalar::int(a[i][j]))
}

fn skew(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-5i64..=5, n * (n - 1) / 2).prop_map(move |upper| {
        let mut a = vec![vec![0; n]; n];
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let x = it.next().unwrap();
                a[i][j] = x;
                a[j][i] = -x;
            }
        }
        a
    })
}

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, n), n)
}

fn sized_skew() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop_oneof![skew(2), skew(4), skew(6)]
}

fn factorial(m: i64) -> i64 {
    (1..=m).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pfaffian_matches_matching_sum(a in sized_skew()) {
        prop_assert_eq!(pfaffian(&to_matrix(&a)).unwrap(), Scalar::int(pf_matchings(&a)));
    }

    #[test]
    fn pfaffian_squares_to_determinant(a in sized_skew()) {
        let pf = pfaffian(&to_matrix(&a)).unwrap();
        prop_assert_eq!(&pf * &pf, Scalar::int(det_leibniz(&a)));
        prop_assert_eq!(to_matrix(&a).det(), Scalar::int(det_leibniz(&a)));
    }

    #[test]
    fn diagonal_q4_is_scaled_pfaffian(x in square(4)) {
        let m = to_matrix(&x);
        let d: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| x[i][j] - x[j][i]).collect()).collect();
        let want = Scalar::int(4 * factorial(2) * pf_matchings(&d));
        prop_assert_eq!(q_n_direct(&[m.clone(), m.clone()]).unwrap(), want.clone());
        prop_assert_eq!(q_n_polarized(&[m.clone(), m]).unwrap(), want);
    }

    #[test]
    fn q4_is_symmetric_and_bilinear(x in square(4), y in square(4), z in square(4), c in -3i64..=3) {
        let (x, y, z) = (to_matrix(&x), to_matrix(&y), to_matrix(&z));
        let xy = q_n_direct(&[x.clone(), y.clone()]).unwrap();
        prop_assert_eq!(&xy, &q_n_direct(&[y.clone(), x.clone()]).unwrap());
        prop_assert_eq!(&xy, &q_n_polarized(&[x.clone(), y.clone()]).unwrap());
        let combo = &x + &z.scale(&Scalar::int(c));
        let lhs = q_n_direct(&[combo, y.clone()]).unwrap();
        let rhs = &xy + &(&Scalar::int(c) * &q_n_direct(&[z, y]).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn characteristic_polynomial_matches_determinant(a in square(3), t in -4i64..=4) {
        // det(tI - A) through the integer oracle
        let shifted: Vec<Vec<i64>> =
            (0..3).map(|i| (0..3).map(|j| if i == j { t - a[i][j] } else { -a[i][j] }).collect()).collect();
        let coeffs = characteristic_polynomial(&to_matrix(&a));
        let value = coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * &Scalar::int(t)) + c);
        prop_assert_eq!(value, Scalar::int(det_leibniz(&shifted)));
    }
}

#[test]
fn oracle_sanity() {
    let a = vec![vec![0, 1, 2, 3], vec![-1, 0, 4, 5], vec![-2, -4, 0, 6], vec![-3, -5, -6, 0]];
    assert_eq!(pf_matchings(&a), 6 - 10 + 12);
    assert_eq!(det_leibniz(&[vec![1, 2], vec![3, 4]]), -2);
}
