//! Exact integer/rational matrix routines for linking forms.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Fraction-free (Bareiss) elimination. The empty matrix has determinant 1.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        sign
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// Invariant factors `d1 | d2 | …` (nonnegative), one per diagonal slot.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let size = rows.min(cols);
    for t in 0..size {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let v = &q * &a[i][t];
                        a[i][j] -= v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match offender {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
    }
    (0..size).map(|t| a[t][t].abs()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Inertia of a symmetric matrix by congruence diagonalization over `Q`.
/// When only zero diagonal entries remain, a 2×2 block `[[0, b], [b, 0]]`
/// (one positive, one negative direction) is split off instead.
pub fn inertia(m: &IntMatrix) -> Inertia {
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut alive: Vec<usize> = (0..a.len()).collect();
    let mut out = Inertia { positive: 0, negative: 0, zero: 0 };
    while !alive.is_empty() {
        if let Some(&p) = alive.iter().find(|&&i| !a[i][i].is_zero()) {
            let piv = a[p][p].clone();
            if piv.is_positive() {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            alive.retain(|&i| i != p);
            for &i in &alive {
                for &j in &alive {
                    let v = &a[i][p] * &a[p][j] / &piv;
                    a[i][j] -= v;
                }
            }
            continue;
        }
        let pair = alive
            .iter()
            .flat_map(|&i| alive.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i < j && !a[i][j].is_zero());
        let Some((p, r)) = pair else {
            out.zero += alive.len();
            break;
        };
        // inverse of [[0, b], [b, 0]] is [[0, 1/b], [1/b, 0]]
        let b = a[p][r].clone();
        out.positive += 1;
        out.negative += 1;
        alive.retain(|&i| i != p && i != r);
        for &i in &alive {
            for &j in &alive {
                let v = (&a[i][p] * &a[r][j] + &a[i][r] * &a[p][j]) / &b;
                a[i][j] -= v;
            }
        }
    }
    out
}

/// Solves `m x = rhs` exactly; `None` when `m` is singular.
pub fn solve(m: &IntMatrix, rhs: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            row.iter()
                .chain(std::iter::once(b))
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let piv = a[c][c].clone();
        for j in c..=n {
            let v = &a[c][j] / &piv;
            a[c][j] = v;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=n {
                    let v = &f * &a[c][j];
                    a[i][j] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
}
