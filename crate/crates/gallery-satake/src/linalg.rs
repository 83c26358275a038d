//! Small exact linear algebra over `Z` and `Q`.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::Q;

pub type IMat = Vec<Vec<i64>>;
pub type QMat = Vec<Vec<Q>>;

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn imul(a: &IMat, b: &IMat) -> IMat {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum())
                .collect()
        })
        .collect()
}

pub fn imul_vec(a: &IMat, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn to_q(a: &IMat) -> QMat {
    a.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
        .collect()
}

pub fn qmul(a: &QMat, b: &QMat) -> QMat {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b).fold(Q::zero(), |s, (x, r)| s + x * r[j]))
                .collect()
        })
        .collect()
}

pub fn qmul_vec(a: &QMat, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |s, (x, y)| s + x * y))
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn dot(f: &[Q], x: &[Q]) -> Q {
    f.iter().zip(x).fold(Q::zero(), |s, (a, b)| s + a * b)
}

pub fn dot_int(f: &[Q], x: &[i64]) -> Q {
    f.iter()
        .zip(x)
        .fold(Q::zero(), |s, (a, &b)| s + a * Q::from_integer(b))
}

/// Inverse of a square rational matrix, or `None` when singular.
pub fn qinverse(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut m: QMat = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                let pivot = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `a x = b` for square invertible `a`.
pub fn qsolve(a: &QMat, b: &[Q]) -> Option<Vec<Q>> {
    qinverse(a).map(|inv| qmul_vec(&inv, b))
}

pub fn as_integer_matrix(a: &QMat) -> Option<IMat> {
    a.iter()
        .map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
        .collect()
}

pub fn as_integer_vec(v: &[Q]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

/// Diagonalizes `m` by unimodular row and column operations.
///
/// Returns `(u, d)` with `u * m * v = diag(d)` for some unimodular `v`.
/// The entries of `d` need not form a divisibility chain.
pub fn diagonalize(m: &IMat) -> (IMat, Vec<i64>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut t = 0;
    while t < rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let f = Integer::div_floor(&a[i][t], &a[t][t]);
                if f != 0 {
                    for j in 0..cols {
                        a[i][j] -= f * a[t][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= f * u[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let f = Integer::div_floor(&a[t][j], &a[t][t]);
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            let pivot = (t..rows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
                .expect("nonzero pivot");
            a.swap(t, pivot.0);
            u.swap(t, pivot.0);
            for r in a.iter_mut() {
                r.swap(t, pivot.1);
            }
        }
        t += 1;
    }
    let d = (0..rows)
        .map(|i| if i < cols { a[i][i].abs() } else { 0 })
        .collect();
    (u, d)
}

pub fn det(a: &IMat) -> i64 {
    let n = a.len();
    let mut m = to_q(a);
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return 0;
        };
        if p != c {
            m.swap(c, p);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            let pivot = m[c].clone();
            for (x, y) in m[r].iter_mut().zip(pivot) {
                *x -= f * y;
            }
        }
    }
    d.to_integer()
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: i64 = b.trim().parse().ok()?;
            let n: i64 = a.trim().parse().ok()?;
            (d != 0).then(|| Q::new(n, d))
        }
        None => s.parse().ok().map(Q::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonalize_swap_matrix() {
        let m = vec![vec![-1, 1], vec![1, -1]];
        let (u, d) = diagonalize(&m);
        let mut ds = d.clone();
        ds.sort();
        assert_eq!(ds, vec![0, 1]);
        assert_eq!(det(&u).abs(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let a = to_q(&vec![vec![2, -1], vec![-1, 2]]);
        let inv = qinverse(&a).unwrap();
        assert_eq!(qmul(&a, &inv), to_q(&identity(2)));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-3/6"), Some(Q::new(-1, 2)));
        assert_eq!(fmt_q(&Q::new(4, 2)), "2");
        assert_eq!(parse_q("1/0"), None);
    }
}
