use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};
use crate::qcoeff::QCoeff;
use crate::torus::TorusElement;

use super::{is_linear, Seed, THETA};

/// `(b_k^+, b_k^-)`, both including the `-e_k` term.
pub fn exchange_vectors(b: &IntMatrix, k: usize) -> (Vec<i64>, Vec<i64>) {
    let n = b.len();
    let mut plus = vec![0; n];
    let mut minus = vec![0; n];
    for i in 0..n {
        let x = b[i][k];
        if x > 0 {
            plus[i] = x;
        } else if x < 0 {
            minus[i] = -x;
        }
    }
    plus[k] = -1;
    minus[k] = -1;
    (plus, minus)
}

/// The matrix `E` of a mutation in direction `k`.
pub fn e_matrix(b: &IntMatrix, k: usize, mutable: &[bool]) -> Result<IntMatrix> {
    if !mutable.get(k).copied().unwrap_or(false) {
        return Err(Error::Frozen(k));
    }
    let mut e = intmat::identity(b.len());
    for (r, row) in e.iter_mut().enumerate() {
        row[k] = if r == k { -1 } else { (-b[r][k]).max(0) };
    }
    Ok(e)
}

/// Max-rule for the `theta` datum: the new value at `k` is the larger of the
/// two weighted neighbour sums minus the old value.
pub fn theta_max_rule(theta: &[i64], b: &IntMatrix, k: usize) -> Result<Vec<i64>> {
    let (plus, minus) = exchange_vectors(b, k);
    let side = |v: &[i64]| -> i64 { (0..theta.len()).filter(|&i| i != k).map(|i| v[i] * theta[i]).sum() };
    let value = side(&plus).max(side(&minus)) - theta[k];
    if value < 0 {
        return Err(Error::NegativeTheta(k));
    }
    let mut out = theta.to_vec();
    out[k] = value;
    Ok(out)
}

impl Seed {
    /// Ordered product `q^{1/2 sum_{i<j} a_i a_j l_ji} x_1^{a_1} ... x_r^{a_r}`
    /// of current cluster variables, for `a >= 0`.
    pub fn cluster_monomial(&self, a: &[i64]) -> Result<TorusElement> {
        let mut shift = 0;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                shift += a[i] * a[j] * self.l[j][i];
            }
        }
        let mut m = TorusElement::scalar(&self.torus, QCoeff::q_half(shift));
        for (i, &ai) in a.iter().enumerate() {
            if ai < 0 {
                return Err(Error::Validation("cluster monomials need nonnegative exponents".into()));
            }
            for _ in 0..ai {
                m = m.mul(&self.cluster[i])?;
            }
        }
        Ok(m)
    }

    /// The two terms `N_± = M(b_k^±) x_k` of `x_k' x_k = N_+ + N_-`.
    pub fn exchange_terms(&self, k: usize) -> Result<(TorusElement, TorusElement)> {
        if !self.mutable.get(k).copied().unwrap_or(false) {
            return Err(Error::Frozen(k));
        }
        let (plus, minus) = exchange_vectors(&self.b, k);
        let term = |v: &[i64]| -> Result<TorusElement> {
            // M(a) M(e_k) = q^{a^T L e_k / 2} M(a + e_k)
            let h: i64 = (0..v.len()).map(|i| v[i] * self.l[i][k]).sum();
            let mut shifted = v.to_vec();
            shifted[k] += 1;
            Ok(self.cluster_monomial(&shifted)?.shift(h))
        };
        Ok((term(&plus)?, term(&minus)?))
    }

    /// Mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let e = e_matrix(&self.b, k, &self.mutable)?;
        let (np, nm) = self.exchange_terms(k)?;
        let new_var = np.add(&nm)?.divide_right(&self.cluster[k])?;
        let et = intmat::transpose(&e);
        let mut b = intmat::matmul(&intmat::matmul(&e, &self.b), &et);
        // frozen-frozen entries carry no information and are kept at zero
        for i in (0..b.len()).filter(|&i| !self.mutable[i]) {
            for j in (0..b.len()).filter(|&j| !self.mutable[j]) {
                b[i][j] = 0;
            }
        }
        let l = intmat::matmul(&intmat::matmul(&et, &self.l), &e);
        let mut gradings = self.gradings.clone();
        for (name, v) in gradings.iter_mut() {
            *v = if is_linear(name) {
                intmat::transpose_apply(&e, v)
            } else if name == THETA {
                theta_max_rule(v, &self.b, k)?
            } else {
                v.clone()
            };
        }
        let mut cluster = self.cluster.clone();
        cluster[k] = new_var;
        let seed = Seed::from_parts(
            self.torus.clone(),
            cluster,
            b,
            l,
            gradings,
            self.mutable.clone(),
            self.vertices.clone(),
            self.labels.clone(),
        );
        seed.check_matrices()?;
        Ok(seed)
    }

    /// Mutates along a sequence of vertex indices.
    pub fn mutate_sequence(&self, ks: &[usize]) -> Result<Seed> {
        let mut s = self.clone();
        for &k in ks {
            s = s.mutate(k)?;
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn e_matrix_examples() {
        let z = intmat::zeros(3, 3);
        assert_eq!(e_matrix(&z, 1, &[true; 3]).unwrap(), vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]]);
        let b = vec![vec![0, 1], vec![-1, 0]];
        let e = e_matrix(&b, 0, &[true, true]).unwrap();
        assert_eq!(e, vec![vec![-1, 0], vec![1, 1]]);
        assert_eq!(intmat::matmul(&e, &e), intmat::identity(2));
        assert_eq!(e_matrix(&b, 1, &[true, false]), Err(Error::Frozen(1)));
    }

    #[test]
    fn matrix_mutation_agrees_with_the_quiver_rule() {
        let b = vec![vec![0, 2, -1], vec![-2, 0, 3], vec![1, -3, 0]];
        for k in 0..3 {
            let e = e_matrix(&b, k, &[true; 3]).unwrap();
            let got = intmat::matmul(&intmat::matmul(&e, &b), &intmat::transpose(&e));
            for i in 0..3 {
                for j in 0..3 {
                    let want = if i == k || j == k {
                        -b[i][j]
                    } else {
                        b[i][j] + b[i][k].signum() * (b[i][k] * b[k][j]).max(0)
                    };
                    assert_eq!(got[i][j], want, "k={k} ({i},{j})");
                }
            }
        }
    }

    /// Kronecker-type rank-2 seed with a compatible L.
    fn kronecker() -> Seed {
        let b = vec![vec![0, -2], vec![2, 0]];
        let l = vec![vec![0, -1], vec![1, 0]];
        let names = vec!["a".to_string(), "b".to_string()];
        let mut g = BTreeMap::new();
        g.insert("theta".to_string(), vec![1, 1]);
        Seed::initial(b, l, g, vec![true, true], names.clone(), names).unwrap()
    }

    #[test]
    fn exchange_relation_over_a_torus() {
        let s = kronecker();
        assert_eq!(s.check_matrices(), Ok(2));
        let m = s.mutate(0).unwrap();
        // x0' = (x1^2 + 1) x0^{-1} up to the based-monomial prefactors
        assert_eq!(m.cluster()[0].len(), 2);
        assert_eq!(m.cluster()[0].mul(&s.cluster()[0]).unwrap(), {
            let (p, n) = s.exchange_terms(0).unwrap();
            p.add(&n).unwrap()
        });
        assert_eq!(m.mutate(0).unwrap(), s);
        m.check_quasi_commutation().unwrap();
        assert_eq!(m.grading("theta").unwrap(), &vec![1, 1]);
    }

    #[test]
    fn theta_rule() {
        let b = vec![vec![0, -2], vec![2, 0]];
        assert_eq!(theta_max_rule(&[1, 1], &b, 0).unwrap(), vec![1, 1]);
        assert_eq!(theta_max_rule(&[1, 3], &b, 0).unwrap(), vec![5, 3]);
        assert_eq!(theta_max_rule(&[4, 1], &b, 0), Err(Error::NegativeTheta(0)));
    }
}
