use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Elementary divisors `d_1 | d_2 | ...` of a square integer matrix, one per
/// row, nonnegative, zeros last.
pub fn smith_normal_form(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    for t in 0..n {
        loop {
            // smallest nonzero entry of the lower-right block becomes the pivot
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| m[i][j].abs().cmp(&m[k][l].abs()));
            let Some((pi, pj)) = pivot else {
                return finish(m);
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..n {
                let q = m[i][t].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for j in t..n {
                        let v = &q * &m[t][j];
                        m[i][j] -= v;
                    }
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = m[t][j].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for i in t..n {
                        let v = &q * &m[i][t];
                        m[i][j] -= v;
                    }
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
            match bad {
                Some((i, _)) => {
                    for j in t..n {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => break,
            }
        }
    }
    finish(m)
}

fn finish(m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = m.iter().enumerate().map(|(i, row)| row[i].abs()).collect();
    // nonzero divisors first, in order; they already divide each other
    d.sort_by(|a, b| match (a.is_zero(), b.is_zero()) {
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        _ => std::cmp::Ordering::Equal,
    });
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(smith_normal_form(&big(&[&[1, 0], &[0, 1]])), ints(&[1, 1]));
        assert_eq!(smith_normal_form(&big(&[&[2, 0], &[0, 6]])), ints(&[2, 6]));
        assert_eq!(smith_normal_form(&big(&[&[1, 1], &[1, 0]])), ints(&[1, 1]));
        assert_eq!(smith_normal_form(&big(&[&[2, 0], &[0, 3]])), ints(&[1, 6]));
        assert_eq!(smith_normal_form(&big(&[&[0, 0], &[0, 4]])), ints(&[4, 0]));
        assert_eq!(smith_normal_form(&big(&[&[0]])), ints(&[0]));
        assert_eq!(smith_normal_form(&big(&[&[-3]])), ints(&[3]));
        assert_eq!(smith_normal_form(&[]), ints(&[]));
    }

    /// The product of the divisors is |det|, and each divides the next.
    fn check(m: &[Vec<i64>]) {
        let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
        let a = big(&rows);
        let d = smith_normal_form(&a);
        let det = crate::zeta::bareiss_det(a.clone());
        let prod: BigInt = d.iter().product();
        assert_eq!(prod, det.abs(), "{m:?}");
        for w in d.windows(2) {
            assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]), "{m:?}: {d:?}");
        }
    }

    proptest::proptest! {
        #[test]
        fn divisor_chain(entries in proptest::collection::vec(-6i64..=6, 9), n in 1usize..=3) {
            let m: Vec<Vec<i64>> = (0..n).map(|i| entries[i * 3..i * 3 + n].to_vec()).collect();
            check(&m);
        }
    }
}
