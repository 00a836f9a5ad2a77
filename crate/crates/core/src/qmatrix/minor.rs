use crate::error::{Error, Result};
use crate::qcoeff::QCoeff;

use super::{MatAlgebra, MatElement};

/// All `t`-subsets of `{1..n}` in lex order.
pub fn k_subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn go(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < t - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    go(1, n, t, &mut cur, &mut out);
    out
}

/// All subsets of `{1..n}`, by size then lex.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..=n).flat_map(|t| k_subsets(n, t)).collect()
}

fn permutations(t: usize) -> Vec<(Vec<usize>, u32)> {
    // Heap-free: extend permutations of t-1 by inserting t-1 at each slot.
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for x in 0..t {
        let mut next = Vec::new();
        for p in &perms {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, x);
                next.push(q);
            }
        }
        perms = next;
    }
    perms
        .into_iter()
        .map(|p| {
            let inv = (0..t).flat_map(|i| (i + 1..t).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            (p, inv as u32)
        })
        .collect()
}

fn check_set(s: &[usize], bound: usize, what: &str) -> Result<()> {
    if s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&i| i == 0 || i > bound) {
        return Err(Error::BadIndices(format!("{} set {:?} must be increasing within 1..={}", what, s, bound)));
    }
    Ok(())
}

impl MatAlgebra {
    /// The quantum minor with rows `rows` and columns `cols`.
    pub fn quantum_minor(&self, rows: &[usize], cols: &[usize]) -> Result<MatElement> {
        if rows.len() != cols.len() {
            return Err(Error::BadIndices(format!("{} rows but {} columns", rows.len(), cols.len())));
        }
        let shape = self.shape();
        check_set(rows, shape.rows, "row")?;
        check_set(cols, shape.cols, "column")?;
        let t = rows.len();
        let mut out = self.zero();
        for (p, len) in permutations(t) {
            let sign = if len % 2 == 0 { 1 } else { -1 };
            let c = QCoeff::term(2 * len as i64, sign);
            let word: Vec<(usize, usize)> = (0..t).map(|a| (rows[a], cols[p[a]])).collect();
            out = out.add(&self.normal_form(&c, &word)?)?;
        }
        Ok(out)
    }

    /// The quantum Plücker coordinate `[cols]`: the maximal minor on all rows.
    pub fn plucker(&self, cols: &[usize]) -> Result<MatElement> {
        let rows: Vec<usize> = (1..=self.shape().rows).collect();
        if cols.len() != rows.len() {
            return Err(Error::BadIndices(format!("Plücker coordinates need {} columns", rows.len())));
        }
        self.quantum_minor(&rows, cols)
    }
}

#[cfg(test)]
mod tests {
    use super::super::Shape;
    use super::*;

    #[test]
    fn subsets_and_permutations() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(subsets(3).len(), 8);
        assert_eq!(permutations(3).iter().map(|(_, l)| l).sum::<u32>(), 9);
    }

    #[test]
    fn two_by_two_minor() {
        let alg = MatAlgebra::new(Shape::new(2, 4));
        let m = alg.quantum_minor(&[1, 2], &[2, 4]).unwrap();
        let want = alg
            .normal_form(&QCoeff::one(), &[(1, 2), (2, 4)])
            .unwrap()
            .sub(&alg.normal_form(&QCoeff::q(1), &[(1, 4), (2, 2)]).unwrap())
            .unwrap();
        assert_eq!(m, want);
        assert_eq!(alg.quantum_minor(&[2], &[3]).unwrap(), alg.generator(2, 3).unwrap());
        assert!(alg.quantum_minor(&[1, 2], &[1]).is_err());
        assert!(alg.quantum_minor(&[2, 1], &[1, 2]).is_err());
    }

    #[test]
    fn determinants_are_central() {
        for m in 2..=3 {
            let alg = MatAlgebra::new(Shape::new(m, m));
            let all: Vec<usize> = (1..=m).collect();
            let det = alg.quantum_minor(&all, &all).unwrap();
            for i in 1..=m {
                for j in 1..=m {
                    assert_eq!(alg.quasi_exponent(&det, &alg.generator(i, j).unwrap()), Ok(0));
                }
            }
        }
    }

    #[test]
    fn determinant_commutes_with_a_corner() {
        let alg = MatAlgebra::new(Shape::new(2, 2));
        let det = alg.quantum_minor(&[1, 2], &[1, 2]).unwrap();
        assert_eq!(alg.quasi_exponent(&det, &alg.generator(1, 1).unwrap()), Ok(0));
    }

    #[test]
    fn plucker_coordinates_quasi_commute() {
        let alg = MatAlgebra::new(Shape::new(2, 4));
        let p12 = alg.plucker(&[1, 2]).unwrap();
        let p13 = alg.plucker(&[1, 3]).unwrap();
        assert_eq!(alg.quasi_exponent(&p12, &p13), Ok(1));
        for i in k_subsets(4, 2) {
            let p = alg.plucker(&i).unwrap();
            assert_eq!(p.degree(), Ok(2));
            assert!(alg.quasi_exponent(&p12, &p).is_ok());
        }
        // [123][124] divided on the right by [123]
        let alg = MatAlgebra::new(Shape::new(3, 6));
        let a = alg.plucker(&[1, 2, 3]).unwrap();
        let b = alg.plucker(&[1, 2, 4]).unwrap();
        let lam = alg.quasi_exponent(&a, &b).unwrap();
        let p = alg.mul(&a, &b).unwrap();
        assert_eq!(alg.divide_right(&p, &a).unwrap(), b.shift(2 * lam));
    }
}
