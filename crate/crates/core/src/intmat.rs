//! Small dense integer matrices, row-major.

pub type IntMatrix = Vec<Vec<i64>>;

pub fn zeros(r: usize, c: usize) -> IntMatrix {
    vec![vec![0; c]; r]
}

pub fn identity(n: usize) -> IntMatrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    let r = m.len();
    let c = m.first().map_or(0, |row| row.len());
    let mut t = zeros(c, r);
    for i in 0..r {
        for j in 0..c {
            t[j][i] = m[i][j];
        }
    }
    t
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |row| row.len());
    let mut out = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[l][j];
            }
        }
    }
    out
}

/// `m^T v`, i.e. the row vector `v^T m` read as a column.
pub fn transpose_apply(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    let c = m.first().map_or(0, |row| row.len());
    (0..c).map(|j| (0..m.len()).map(|i| m[i][j] * v[i]).sum()).collect()
}

pub fn apply(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// First `(i, j)` violating `m[i][j] = -m[j][i]`, if any (also checks squareness).
pub fn is_skew(m: &IntMatrix) -> Option<(usize, usize)> {
    let n = m.len();
    for i in 0..n {
        if m[i].len() != n {
            return Some((i, m[i].len()));
        }
    }
    for i in 0..n {
        for j in i..n {
            if m[i][j] != -m[j][i] {
                return Some((i, j));
            }
        }
    }
    None
}

/// Simultaneous row/column permutation: `out[a][b] = m[p[a]][p[b]]`.
pub fn permute(m: &IntMatrix, p: &[usize]) -> IntMatrix {
    p.iter().map(|&i| p.iter().map(|&j| m[i][j]).collect()).collect()
}

/// Principal submatrix on the given indices.
pub fn submatrix(m: &IntMatrix, keep: &[usize]) -> IntMatrix {
    permute(m, keep)
}

/// `t ∧ u`, the skew matrix with entries `t_i u_j - t_j u_i`.
pub fn wedge(t: &[i64], u: &[i64]) -> IntMatrix {
    let n = t.len();
    let mut m = zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[i][j] = t[i] * u[j] - t[j] * u[i];
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&[1, 0], &[0, 1]), vec![vec![0, 1], vec![-1, 0]]);
        assert_eq!(wedge(&[2, 5], &[2, 5]), zeros(2, 2));
        assert_eq!(wedge(&[1, 1], &[2, 3]), vec![vec![0, 1], vec![-1, 0]]);
    }

    #[test]
    fn products() {
        let a = vec![vec![1, 2], vec![3, 4]];
        assert_eq!(matmul(&a, &identity(2)), a);
        assert_eq!(transpose_apply(&a, &[1, 1]), vec![4, 6]);
        assert_eq!(apply(&a, &[1, 1]), vec![3, 7]);
    }
}
