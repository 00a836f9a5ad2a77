//! q-rescaling, Laurent coefficient extensions and `(t, u)`-rescaled seeds.

use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};
use crate::qcoeff::QCoeff;
use crate::torus::{Torus, TorusElement};

use super::{check_grading, Seed, GRADING};

/// Name of the extension generator added by [`Seed::rescale_seed`].
pub const EXTENSION: &str = "Z";

fn grow(m: &IntMatrix, extra: usize) -> IntMatrix {
    let n = m.len();
    let mut out = intmat::zeros(n + extra, n + extra);
    for i in 0..n {
        out[i][..n].copy_from_slice(&m[i]);
    }
    out
}

impl Seed {
    /// Multiplies cluster entry `i` by `q^{h_i/2}`; `h` must be a grading.
    pub fn rescale_by_q(&self, h: &[i64]) -> Result<Seed> {
        check_grading(&self.b, &self.mutable, "H", h)?;
        let mut out = self.clone();
        for (x, &hi) in out.cluster.iter_mut().zip(h) {
            *x = x.shift(hi);
        }
        Ok(out)
    }

    /// Adjoins `y` and `y^{-1}` as frozen entries, where `y x_i = q^{c_i} x_i y`.
    ///
    /// `y` becomes a new ambient generator. The main grading is extended by
    /// `deg_pair`, every other vector by zeros.
    pub fn extend_with_laurent_coefficients(
        &self,
        c: &[i64],
        deg_pair: (i64, i64),
        vertices: [&str; 2],
        labels: [&str; 2],
    ) -> Result<Seed> {
        let n = self.rank();
        if c.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: c.len() });
        }
        let w = self.generator_weights(c)?;
        self.check_eigen(&w, c, "c")?;
        let r = self.torus.rank();
        let mut l0 = grow(self.torus.l(), 1);
        for g in 0..r {
            l0[r][g] = w[g];
            l0[g][r] = -w[g];
        }
        let mut names = self.torus.names().to_vec();
        names.push(labels[0].to_string());
        let torus = Torus::with_names(l0, names)?;

        let mut cluster = self.cluster.iter().map(|x| x.embed(&torus)).collect::<Result<Vec<_>>>()?;
        let y = TorusElement::generator(&torus, r);
        cluster.push(y.clone());
        cluster.push(y.monomial_inverse()?);

        let mut l = grow(&self.l, 2);
        for i in 0..n {
            l[n][i] = c[i];
            l[i][n] = -c[i];
            l[n + 1][i] = -c[i];
            l[i][n + 1] = c[i];
        }
        let b = grow(&self.b, 2);
        let gradings = self
            .gradings
            .iter()
            .map(|(k, v)| {
                let mut v = v.clone();
                if k == GRADING {
                    v.extend([deg_pair.0, deg_pair.1]);
                } else {
                    v.extend([0, 0]);
                }
                (k.clone(), v)
            })
            .collect();
        let mut mutable = self.mutable.clone();
        mutable.extend([false, false]);
        let mut vs = self.vertices.clone();
        vs.extend(vertices.iter().map(|s| s.to_string()));
        let mut ls = self.labels.clone();
        ls.extend(labels.iter().map(|s| s.to_string()));
        Seed::new(torus, cluster, b, l, gradings, mutable, vs, ls)
    }

    /// Checks every cluster entry is homogeneous of degree `v_i` for the
    /// generator weights `w`.
    fn check_eigen(&self, w: &[i64], v: &[i64], name: &str) -> Result<()> {
        for (i, x) in self.cluster.iter().enumerate() {
            if x.degree(w)? != v[i] {
                return Err(Error::Validation(format!(
                    "entry {} is not an eigenvector with weight {} for {}",
                    self.vertices[i], v[i], name
                )));
            }
        }
        Ok(())
    }

    /// The `(t, u)`-rescaled seed: entry `i` becomes `q^{t_i u_i/2} x_i Z^{u_i}`
    /// with `Z x = q^{t(x)} x Z`, `L` becomes `L - t∧u`, and `u` is added to
    /// the main grading. `t` and the accumulated `u` are stored as vectors
    /// `"t"` and `"u"`; when the accumulated `u` vanishes they are dropped and
    /// an unused `Z` is removed, so that rescaling by `(t, u)` and then by
    /// `(t, -u)` gives back the original seed.
    pub fn rescale_seed(&self, t: &[i64], u: &[i64]) -> Result<Seed> {
        check_grading(&self.b, &self.mutable, "t", t)?;
        check_grading(&self.b, &self.mutable, "u", u)?;
        let n = self.rank();
        let existing = self.torus.names().iter().position(|s| s == EXTENSION);
        let mut preset = vec![None; self.torus.rank()];
        if let Some(z) = existing {
            preset[z] = Some(0);
        }
        let w = self.generator_weights_with(t, preset)?;
        self.check_eigen(&w, t, "t")?;

        let (torus, z) = match existing {
            Some(z) => {
                if self.torus.l()[z] != w {
                    return Err(Error::Unsupported(
                        "the existing extension generator commutes according to a different t".into(),
                    ));
                }
                (self.torus.clone(), z)
            }
            None => {
                let r = self.torus.rank();
                let mut l0 = grow(self.torus.l(), 1);
                for g in 0..r {
                    l0[r][g] = w[g];
                    l0[g][r] = -w[g];
                }
                let mut names = self.torus.names().to_vec();
                names.push(EXTENSION.to_string());
                (Torus::with_names(l0, names)?, r)
            }
        };
        let zgen = TorusElement::generator(&torus, z);
        let cluster = (0..n)
            .map(|i| {
                let x = self.cluster[i].embed(&torus)?;
                x.mul(&zgen.zpow(u[i])?).map(|m| m.scale(&QCoeff::q_half(t[i] * u[i])))
            })
            .collect::<Result<Vec<_>>>()?;
        let wedge = intmat::wedge(t, u);
        let l: IntMatrix = (0..n).map(|i| (0..n).map(|j| self.l[i][j] - wedge[i][j]).collect()).collect();

        let mut gradings = self.gradings.clone();
        if let Some(g) = gradings.get_mut(GRADING) {
            for (gi, ui) in g.iter_mut().zip(u) {
                *gi += ui;
            }
        }
        let acc: Vec<i64> = match gradings.get("u") {
            Some(old) => old.iter().zip(u).map(|(a, b)| a + b).collect(),
            None => u.to_vec(),
        };
        let seed = if acc.iter().all(|&x| x == 0) {
            gradings.remove("t");
            gradings.remove("u");
            let s = Seed::new(
                torus,
                cluster,
                self.b.clone(),
                l,
                gradings,
                self.mutable.clone(),
                self.vertices.clone(),
                self.labels.clone(),
            )?;
            s.prune_torus()?
        } else {
            gradings.insert("t".into(), t.to_vec());
            gradings.insert("u".into(), acc);
            Seed::new(
                torus,
                cluster,
                self.b.clone(),
                l,
                gradings,
                self.mutable.clone(),
                self.vertices.clone(),
                self.labels.clone(),
            )?
        };
        Ok(seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    /// Rank-3 seed: one mutable vertex with two frozen neighbours.
    fn small() -> Seed {
        // arrows 1 -> 0 and 0 -> 2
        let mut b = intmat::zeros(3, 3);
        super::super::add_arrow(&mut b, 1, 0);
        super::super::add_arrow(&mut b, 0, 2);
        // (B^T L)_{0,*} = (2, 0, 0)
        let l = vec![vec![0, 1, -1], vec![-1, 0, 0], vec![1, 0, 0]];
        let mut g = BTreeMap::new();
        g.insert("G".to_string(), vec![1, 1, 1]);
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        Seed::initial(b, l, g, vec![true, false, false], names.clone(), names).unwrap()
    }

    #[test]
    fn small_seed_is_valid() {
        assert_eq!(small().validate(), Ok(2));
    }

    #[test]
    fn q_rescaling() {
        let s = small();
        assert_eq!(s.rescale_by_q(&[0, 0, 0]).unwrap(), s);
        let h = [1, 1, 1];
        let r = s.rescale_by_q(&h).unwrap();
        assert_eq!(r.rescale_by_q(&[-1, -1, -1]).unwrap(), s);
        let m = s.mutate(0).unwrap();
        let mr = r.mutate(0).unwrap();
        let hk = m.grading("G").unwrap()[0];
        assert_eq!(mr.cluster()[0], m.cluster()[0].shift(hk));
        assert!(matches!(s.rescale_by_q(&[0, 1, 0]), Err(Error::NotAGrading { .. })));
    }

    #[test]
    fn laurent_extension() {
        let s = small();
        let e = s.extend_with_laurent_coefficients(&[1, 1, 1], (1, -1), ["y", "y'"], ["y", "y^-1"]).unwrap();
        assert_eq!(e.rank(), 5);
        assert_eq!(e.validate(), Ok(2));
        assert_eq!(e.grading("G").unwrap(), &vec![1, 1, 1, 1, -1]);
        let c0 = s.extend_with_laurent_coefficients(&[0, 0, 0], (1, -1), ["y", "y'"], ["y", "y^-1"]).unwrap();
        assert!(c0.l()[3].iter().all(|&x| x == 0));
    }

    #[test]
    fn rescaling_and_reversal() {
        let s = small();
        let t = [1, 1, 1];
        let u = [2, 2, 2];
        assert_eq!(s.rescale_seed(&t, &[0, 0, 0]).unwrap(), s);
        let r = s.rescale_seed(&t, &u).unwrap();
        r.check_quasi_commutation().unwrap();
        assert_eq!(r.check_matrices(), Ok(2));
        assert_eq!(r.grading("G").unwrap(), &vec![3, 3, 3]);
        let back = r.rescale_seed(&t, &[-2, -2, -2]).unwrap();
        assert_eq!(back, s);
    }
}
