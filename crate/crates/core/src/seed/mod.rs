//! Graded quantum seeds.
//!
//! A [`Seed`] stores its cluster as Laurent polynomials over a fixed
//! ambient quantum torus (normally the torus of the initial seed), together
//! with the exchange matrix `B`, the quasi-commutation matrix `L` of the
//! current cluster, named integer vectors (gradings and auxiliary data) and
//! mutability flags.
//!
//! Sign convention: `b_ij = #(j -> i) - #(i -> j)` for a quiver. With the
//! quasi-commutation matrices produced by the quantum-matrix oracle this is
//! the choice that makes the compatibility constant positive.

mod enumerate;
mod mutate;
pub mod realize;
mod rescale;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::intmat::{self, is_skew, IntMatrix};
use crate::torus::{Torus, TorusElement};

pub use enumerate::{
    enumerate, explore, explore_realized, Enumeration, ExploreOptions, Realized, VariableRecord, DEFAULT_MAX_DEPTH,
};
pub use mutate::{e_matrix, exchange_vectors, theta_max_rule};
pub use realize::Realization;
pub use rescale::EXTENSION;

/// Name of the main grading.
pub const GRADING: &str = "G";
/// Auxiliary vector mutated by the max-rule instead of `E^T`.
pub const THETA: &str = "theta";

/// True for named vectors that must satisfy `B_j v = 0` and mutate linearly.
pub fn is_linear(name: &str) -> bool {
    name != THETA
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    torus: Arc<Torus>,
    cluster: Vec<TorusElement>,
    b: IntMatrix,
    l: IntMatrix,
    gradings: BTreeMap<String, Vec<i64>>,
    mutable: Vec<bool>,
    vertices: Vec<String>,
    labels: Vec<String>,
}

/// Arrow from quiver vertex `from` to `to`, under the crate's sign convention.
pub fn add_arrow(b: &mut IntMatrix, from: usize, to: usize) {
    b[to][from] += 1;
    b[from][to] -= 1;
}

/// `d` with `(B_mut)^T L = d (Id ⊕ 0)`; an empty mutable block gives `0`.
pub fn check_compatibility(b: &IntMatrix, l: &IntMatrix, mutable: &[bool]) -> Result<i64> {
    let n = b.len();
    if l.len() != n || mutable.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: l.len().min(mutable.len()) });
    }
    if let Some((i, j)) = is_skew(b).or_else(|| is_skew(l)) {
        return Err(Error::NotSkewSymmetric(i, j));
    }
    let mut d = None;
    for i in (0..n).filter(|&i| mutable[i]) {
        for j in 0..n {
            let v: i64 = (0..n).map(|r| b[r][i] * l[r][j]).sum();
            if i == j {
                match d {
                    None if v > 0 => d = Some(v),
                    Some(e) if e == v => {}
                    _ => return Err(Error::Incompatible(i, j)),
                }
            } else if v != 0 {
                return Err(Error::Incompatible(i, j));
            }
        }
    }
    Ok(d.unwrap_or(0))
}

/// Checks `B_j v = 0` for every mutable row `j`.
pub fn check_grading(b: &IntMatrix, mutable: &[bool], name: &str, v: &[i64]) -> Result<()> {
    if v.len() != b.len() {
        return Err(Error::LengthMismatch { expected: b.len(), got: v.len() });
    }
    for j in (0..b.len()).filter(|&j| mutable[j]) {
        let value = intmat::dot(&b[j], v);
        if value != 0 {
            return Err(Error::NotAGrading { name: name.to_string(), row: j, value });
        }
    }
    Ok(())
}

/// Mutable rows at which `v` fails to be a grading.
pub fn grading_defects(b: &IntMatrix, mutable: &[bool], v: &[i64]) -> Vec<usize> {
    (0..b.len()).filter(|&j| mutable[j] && intmat::dot(&b[j], v) != 0).collect()
}

impl Seed {
    /// Assembles a seed and checks the matrix invariants (skew-symmetry,
    /// no frozen-frozen arrows, compatibility, gradings). Quasi-commutation
    /// of the cluster is checked by [`Seed::check_quasi_commutation`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        torus: Arc<Torus>,
        cluster: Vec<TorusElement>,
        b: IntMatrix,
        l: IntMatrix,
        gradings: BTreeMap<String, Vec<i64>>,
        mutable: Vec<bool>,
        vertices: Vec<String>,
        labels: Vec<String>,
    ) -> Result<Seed> {
        let n = cluster.len();
        for len in [b.len(), l.len(), mutable.len(), vertices.len(), labels.len()] {
            if len != n {
                return Err(Error::LengthMismatch { expected: n, got: len });
            }
        }
        for x in &cluster {
            if x.torus() != &torus && **x.torus() != *torus {
                return Err(Error::AmbientMismatch);
            }
        }
        let seed = Seed { torus, cluster, b, l, gradings, mutable, vertices, labels };
        seed.check_matrices()?;
        Ok(seed)
    }

    /// Seed whose cluster is the generators of a fresh torus with matrix `l`.
    pub fn initial(
        b: IntMatrix,
        l: IntMatrix,
        gradings: BTreeMap<String, Vec<i64>>,
        mutable: Vec<bool>,
        vertices: Vec<String>,
        labels: Vec<String>,
    ) -> Result<Seed> {
        let torus = Torus::with_names(l.clone(), labels.clone())?;
        let cluster = (0..l.len()).map(|i| TorusElement::generator(&torus, i)).collect();
        Seed::new(torus, cluster, b, l, gradings, mutable, vertices, labels)
    }

    pub fn check_matrices(&self) -> Result<i64> {
        let n = self.rank();
        if let Some((i, j)) = is_skew(&self.b) {
            return Err(Error::NotSkewSymmetric(i, j));
        }
        for i in 0..n {
            for j in 0..n {
                if !self.mutable[i] && !self.mutable[j] && self.b[i][j] != 0 {
                    return Err(Error::Validation(format!("arrow between frozen vertices {} and {}", i, j)));
                }
            }
        }
        let d = check_compatibility(&self.b, &self.l, &self.mutable)?;
        for (name, v) in &self.gradings {
            if v.len() != n {
                return Err(Error::LengthMismatch { expected: n, got: v.len() });
            }
            if is_linear(name) {
                check_grading(&self.b, &self.mutable, name, v)?;
            }
        }
        Ok(d)
    }

    /// Checks that the tracked `L` matches the actual quasi-commutation of
    /// the cluster entries.
    pub fn check_quasi_commutation(&self) -> Result<()> {
        for i in 0..self.rank() {
            for j in 0..i {
                let lam = self.cluster[i].quasi_commutation_exponent(&self.cluster[j])?;
                if lam != self.l[i][j] {
                    return Err(Error::Validation(format!(
                        "L[{}][{}] = {} but the cluster entries give {}",
                        i, j, self.l[i][j], lam
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks each cluster entry is homogeneous of the degree recorded in
    /// every linear vector. `weights` gives, per vector name, the weights of
    /// the ambient generators (see [`Seed::torus_weights`] on the initial seed).
    pub fn check_homogeneity(&self, weights: &BTreeMap<String, Vec<i64>>) -> Result<()> {
        for (name, w) in weights {
            let Some(v) = self.gradings.get(name) else { continue };
            for (i, x) in self.cluster.iter().enumerate() {
                let d = x.degree(w)?;
                if d != v[i] {
                    return Err(Error::Validation(format!(
                        "entry {} has {}-degree {} but the seed records {}",
                        self.vertices[i], name, d, v[i]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Generator weights for every linear vector; needs each ambient
    /// generator to be a cluster entry, as in an initial seed.
    pub fn torus_weights(&self) -> Result<BTreeMap<String, Vec<i64>>> {
        self.gradings
            .iter()
            .filter(|(k, _)| is_linear(k))
            .map(|(k, v)| Ok((k.clone(), self.generator_weights(v)?)))
            .collect()
    }

    /// Full check of an initial seed (generators are cluster entries).
    pub fn validate(&self) -> Result<i64> {
        let d = self.check_matrices()?;
        self.check_quasi_commutation()?;
        self.check_homogeneity(&self.torus_weights()?)?;
        Ok(d)
    }

    /// Weights on the ambient generators inducing the vector `v` on the
    /// cluster, solved from the single-monomial cluster entries.
    pub fn generator_weights(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.generator_weights_with(v, vec![None; self.torus.rank()])
    }

    /// As [`Seed::generator_weights`], with some weights fixed in advance.
    pub fn generator_weights_with(&self, v: &[i64], mut w: Vec<Option<i64>>) -> Result<Vec<i64>> {
        let r = self.torus.rank();
        loop {
            let mut progress = false;
            for (i, x) in self.cluster.iter().enumerate() {
                let Some((a, _)) = x.as_monomial() else { continue };
                let unknown: Vec<usize> = (0..r).filter(|&g| a[g] != 0 && w[g].is_none()).collect();
                if unknown.len() != 1 {
                    continue;
                }
                let g = unknown[0];
                let known: i64 = (0..r).filter(|&h| h != g).map(|h| a[h] * w[h].unwrap_or(0)).sum();
                let rest = v[i] - known;
                if rest % a[g] == 0 {
                    w[g] = Some(rest / a[g]);
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
        w.into_iter()
            .enumerate()
            .map(|(g, x)| {
                x.ok_or_else(|| {
                    Error::Unsupported(format!(
                        "cannot read off a weight for generator {} from this seed",
                        self.torus.names()[g]
                    ))
                })
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.cluster.len()
    }

    pub fn torus(&self) -> &Arc<Torus> {
        &self.torus
    }

    pub fn cluster(&self) -> &[TorusElement] {
        &self.cluster
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn l(&self) -> &IntMatrix {
        &self.l
    }

    pub fn gradings(&self) -> &BTreeMap<String, Vec<i64>> {
        &self.gradings
    }

    pub fn grading(&self, name: &str) -> Option<&Vec<i64>> {
        self.gradings.get(name)
    }

    pub fn mutable(&self) -> &[bool] {
        &self.mutable
    }

    pub fn mutable_indices(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.mutable[i]).collect()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Sets or replaces a named vector, checking the grading condition for
    /// linear names.
    pub fn with_grading(mut self, name: &str, v: Vec<i64>) -> Result<Seed> {
        if v.len() != self.rank() {
            return Err(Error::LengthMismatch { expected: self.rank(), got: v.len() });
        }
        if is_linear(name) {
            check_grading(&self.b, &self.mutable, name, &v)?;
        }
        self.gradings.insert(name.to_string(), v);
        Ok(self)
    }

    pub fn without_grading(mut self, name: &str) -> Seed {
        self.gradings.remove(name);
        self
    }

    /// Index of a vertex given by vertex name, label, or decimal index.
    pub fn index_of(&self, token: &str) -> Option<usize> {
        let token = token.trim();
        let compact: String = token.chars().filter(|c| !c.is_whitespace()).collect();
        self.vertices
            .iter()
            .position(|v| *v == compact)
            .or_else(|| self.labels.iter().position(|v| v == token))
            .or_else(|| token.parse::<usize>().ok().filter(|&i| i < self.rank()))
    }

    /// Keeps only the listed cluster positions, in the given order.
    pub fn select(&self, keep: &[usize]) -> Result<Seed> {
        let pick_vec = |v: &Vec<i64>| keep.iter().map(|&i| v[i]).collect::<Vec<i64>>();
        Seed::new(
            self.torus.clone(),
            keep.iter().map(|&i| self.cluster[i].clone()).collect(),
            intmat::submatrix(&self.b, keep),
            intmat::submatrix(&self.l, keep),
            self.gradings.iter().map(|(k, v)| (k.clone(), pick_vec(v))).collect(),
            keep.iter().map(|&i| self.mutable[i]).collect(),
            keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            keep.iter().map(|&i| self.labels[i].clone()).collect(),
        )
    }

    /// Replaces the cluster by its image under a map of ambient tori.
    pub fn map_cluster<F>(&self, torus: Arc<Torus>, f: F) -> Result<Seed>
    where
        F: Fn(&TorusElement) -> Result<TorusElement>,
    {
        let cluster = self.cluster.iter().map(f).collect::<Result<Vec<_>>>()?;
        Seed::new(
            torus,
            cluster,
            self.b.clone(),
            self.l.clone(),
            self.gradings.clone(),
            self.mutable.clone(),
            self.vertices.clone(),
            self.labels.clone(),
        )
    }

    /// Removes ambient generators that no cluster entry uses.
    pub fn prune_torus(&self) -> Result<Seed> {
        let r = self.torus.rank();
        let used: Vec<usize> = (0..r)
            .filter(|&g| self.cluster.iter().any(|x| x.terms().keys().any(|a| a[g] != 0)))
            .collect();
        if used.len() == r {
            return Ok(self.clone());
        }
        let l = intmat::submatrix(self.torus.l(), &used);
        let names = used.iter().map(|&g| self.torus.names()[g].clone()).collect();
        let torus = Torus::with_names(l, names)?;
        self.map_cluster(torus.clone(), |x| x.restrict(&torus, &used))
    }

    /// Canonical representative up to simultaneous permutation of indices:
    /// cluster entries sorted, everything else permuted alongside.
    pub fn canonical(&self) -> (Seed, Vec<usize>) {
        let mut p: Vec<usize> = (0..self.rank()).collect();
        p.sort_by(|&i, &j| {
            self.cluster[i]
                .cmp(&self.cluster[j])
                .then(self.mutable[i].cmp(&self.mutable[j]))
                .then(i.cmp(&j))
        });
        let seed = Seed {
            torus: self.torus.clone(),
            cluster: p.iter().map(|&i| self.cluster[i].clone()).collect(),
            b: intmat::permute(&self.b, &p),
            l: intmat::permute(&self.l, &p),
            gradings: self
                .gradings
                .iter()
                .map(|(k, v)| (k.clone(), p.iter().map(|&i| v[i]).collect()))
                .collect(),
            mutable: p.iter().map(|&i| self.mutable[i]).collect(),
            vertices: p.iter().map(|&i| self.vertices[i].clone()).collect(),
            labels: p.iter().map(|&i| self.labels[i].clone()).collect(),
        };
        (seed, p)
    }

    pub(crate) fn from_parts(
        torus: Arc<Torus>,
        cluster: Vec<TorusElement>,
        b: IntMatrix,
        l: IntMatrix,
        gradings: BTreeMap<String, Vec<i64>>,
        mutable: Vec<bool>,
        vertices: Vec<String>,
        labels: Vec<String>,
    ) -> Seed {
        Seed { torus, cluster, b, l, gradings, mutable, vertices, labels }
    }
}
