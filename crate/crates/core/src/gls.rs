//! The initial graded quantum seed on `K_q[Mat(k,j)]` built from quantum minors.
//!
//! Grid entry `(r,s)` (1-based, flattened row-major) is the minor with rows
//! `R(r,s) = {k-r+1, ..., k-r+s} ∩ [1,k]` and columns
//! `C(r,s) = {j-s+1, ..., j-s+r} ∩ [1,j]`. Entries in the last row or the
//! last column are frozen. Arrows go `(a,b) -> (a,b+1)`, `(a,b) -> (a+1,b)`
//! and `(a,b) -> (a-1,b-1)`, except between two frozen entries. The
//! quasi-commutation matrix is read off from the quantum-matrix arithmetic.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};
use crate::qmatrix::{MatAlgebra, MatElement, Shape};
use crate::seed::realize::realized_exchange;
use crate::seed::{add_arrow, explore_realized, Enumeration, ExploreOptions, Realized, Seed, GRADING, THETA};

/// Row and column sets of grid entry `(r,s)`.
pub fn minor_sets(k: usize, j: usize, r: usize, s: usize) -> (Vec<usize>, Vec<usize>) {
    let rows = (k as i64 - r as i64 + 1..=k as i64 - r as i64 + s as i64)
        .filter(|&x| x >= 1 && x <= k as i64)
        .map(|x| x as usize)
        .collect();
    let cols = (j as i64 - s as i64 + 1..=j as i64 - s as i64 + r as i64)
        .filter(|&x| x >= 1 && x <= j as i64)
        .map(|x| x as usize)
        .collect();
    (rows, cols)
}

fn digits(v: &[usize]) -> String {
    if v.iter().all(|&x| x < 10) {
        v.iter().map(|x| x.to_string()).collect()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Display name of a minor, `M[rows|cols]`.
pub fn minor_label(rows: &[usize], cols: &[usize]) -> String {
    format!("M[{}|{}]", digits(rows), digits(cols))
}

pub fn vertex_name(r: usize, s: usize) -> String {
    format!("({},{})", r, s)
}

/// Grid positions in flattened order.
pub fn grid(k: usize, j: usize) -> Vec<(usize, usize)> {
    (1..=k).flat_map(|r| (1..=j).map(move |s| (r, s))).collect()
}

pub fn is_frozen(k: usize, j: usize, r: usize, s: usize) -> bool {
    r == k || s == j
}

/// The quiver arrows, as pairs of flat indices.
pub fn arrows(k: usize, j: usize) -> Vec<(usize, usize)> {
    let idx = |r: usize, s: usize| (r - 1) * j + (s - 1);
    let mut out = Vec::new();
    for (r, s) in grid(k, j) {
        let mut targets = Vec::new();
        if s < j {
            targets.push((r, s + 1));
        }
        if r < k {
            targets.push((r + 1, s));
        }
        if r > 1 && s > 1 {
            targets.push((r - 1, s - 1));
        }
        for (r2, s2) in targets {
            if is_frozen(k, j, r, s) && is_frozen(k, j, r2, s2) {
                continue;
            }
            out.push((idx(r, s), idx(r2, s2)));
        }
    }
    out
}

/// Exchange matrix and mutability flags.
pub fn exchange_matrix(k: usize, j: usize) -> (IntMatrix, Vec<bool>) {
    let mut b = intmat::zeros(k * j, k * j);
    for (from, to) in arrows(k, j) {
        add_arrow(&mut b, from, to);
    }
    let mutable = grid(k, j).into_iter().map(|(r, s)| !is_frozen(k, j, r, s)).collect();
    (b, mutable)
}

/// `G_(r,s) = min(r,s)`, the degree of the corresponding minor.
pub fn grading_vector(k: usize, j: usize) -> Vec<i64> {
    grid(k, j).into_iter().map(|(r, s)| r.min(s) as i64).collect()
}

/// The initial minors in flattened order.
pub fn initial_cluster(alg: &MatAlgebra) -> Result<Vec<MatElement>> {
    let Shape { rows: k, cols: j } = alg.shape();
    grid(k, j)
        .into_iter()
        .map(|(r, s)| {
            let (rows, cols) = minor_sets(k, j, r, s);
            alg.quantum_minor(&rows, &cols)
        })
        .collect()
}

/// `L_ab` with `x_a x_b = q^{L_ab} x_b x_a`, from the quantum-matrix arithmetic.
pub fn quasi_matrix(alg: &MatAlgebra, cluster: &[MatElement]) -> Result<IntMatrix> {
    let n = cluster.len();
    let mut l = intmat::zeros(n, n);
    for a in 0..n {
        for b in a + 1..n {
            let lam = alg.quasi_exponent(&cluster[a], &cluster[b])?;
            l[a][b] = lam;
            l[b][a] = -lam;
        }
    }
    Ok(l)
}

#[derive(Clone, Debug)]
pub struct GlsSeed {
    pub k: usize,
    pub j: usize,
    pub seed: Seed,
    pub minors: Vec<MatElement>,
    pub algebra: Arc<MatAlgebra>,
    /// Compatibility constant.
    pub d: i64,
}

/// Builds and validates the seed for `Mat(k,j)`.
pub fn build_seed(k: usize, j: usize) -> Result<GlsSeed> {
    if k == 0 || j == 0 {
        return Err(Error::BadIndices(format!("Mat({},{}) is empty", k, j)));
    }
    let algebra = MatAlgebra::new(Shape::new(k, j));
    let minors = initial_cluster(&algebra)?;
    let l = quasi_matrix(&algebra, &minors)?;
    let (b, mutable) = exchange_matrix(k, j);
    let mut gradings = BTreeMap::new();
    gradings.insert(GRADING.to_string(), grading_vector(k, j));
    gradings.insert(THETA.to_string(), vec![1; k * j]);
    let mut vertices = Vec::new();
    let mut labels = Vec::new();
    for (r, s) in grid(k, j) {
        let (rows, cols) = minor_sets(k, j, r, s);
        vertices.push(vertex_name(r, s));
        labels.push(minor_label(&rows, &cols));
    }
    let seed = Seed::initial(b, l, gradings, mutable, vertices, labels)?;
    let d = seed.validate()?;
    // tracked degrees agree with the degrees of the minors
    for (i, m) in minors.iter().enumerate() {
        if m.degree()? as i64 != seed.grading(GRADING).unwrap()[i] {
            return Err(Error::Validation(format!("degree mismatch at {}", seed.vertices()[i])));
        }
    }
    Ok(GlsSeed { k, j, seed, minors, algebra, d })
}

impl GlsSeed {
    /// Mutates at `vertex` and returns the new variable as a quantum-matrix element.
    pub fn mutated_minor(&self, vertex: usize) -> Result<MatElement> {
        let s = &self.seed;
        realized_exchange(&*self.algebra, s.b(), s.l(), s.mutable(), &self.minors, vertex)
    }

    /// Mutation closure with every variable realised in `K_q[Mat(k,j)]`.
    pub fn explore(&self, opts: &ExploreOptions) -> Result<(Enumeration, Realized<MatElement>)> {
        explore_realized(&self.seed, opts, &*self.algebra, self.minors.clone())
    }
}

/// Degree sums over incoming and outgoing arrows at a mutable vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Balance {
    pub vertex: (usize, usize),
    pub incoming: i64,
    pub outgoing: i64,
    /// The value predicted by the boundary/interior case analysis.
    pub expected: i64,
}

/// Incoming and outgoing degree sums at every mutable vertex.
pub fn degree_balance(k: usize, j: usize) -> Vec<Balance> {
    let g = grading_vector(k, j);
    let arr = arrows(k, j);
    let mut out = Vec::new();
    for (v, (r, s)) in grid(k, j).into_iter().enumerate() {
        if is_frozen(k, j, r, s) {
            continue;
        }
        let incoming = arr.iter().filter(|&&(_, t)| t == v).map(|&(f, _)| g[f]).sum();
        let outgoing = arr.iter().filter(|&&(f, _)| f == v).map(|&(_, t)| g[t]).sum();
        let (a, b) = (r as i64, s as i64);
        let expected = if a == 1 && b == 1 {
            2
        } else if a == 1 || b == 1 {
            3
        } else if a == b {
            3 * a - 1
        } else if a < b {
            3 * a
        } else {
            3 * b
        };
        out.push(Balance { vertex: (r, s), incoming, outgoing, expected });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minor_sets_match_the_grid() {
        assert_eq!(minor_sets(2, 2, 1, 1), (vec![2], vec![2]));
        assert_eq!(minor_sets(2, 2, 1, 2), (vec![2], vec![1]));
        assert_eq!(minor_sets(2, 2, 2, 1), (vec![1], vec![2]));
        assert_eq!(minor_sets(2, 2, 2, 2), (vec![1, 2], vec![1, 2]));
        assert_eq!(minor_sets(3, 3, 2, 2), (vec![2, 3], vec![2, 3]));
        assert_eq!(minor_sets(3, 3, 3, 3), (vec![1, 2, 3], vec![1, 2, 3]));
        for (r, s) in grid(3, 4) {
            let (rows, cols) = minor_sets(3, 4, r, s);
            assert_eq!(rows.len(), r.min(s));
            assert_eq!(cols.len(), r.min(s));
        }
    }

    #[test]
    fn two_by_two() {
        let g = build_seed(2, 2).unwrap();
        assert_eq!(g.seed.rank(), 4);
        assert_eq!(g.seed.mutable_indices(), vec![0]);
        assert_eq!(g.d, 2);
        assert_eq!(g.seed.labels()[3], "M[12|12]");
        // X21 X22 = q X22 X21
        assert_eq!(g.seed.l()[1][0], 1);
        // the determinant commutes with X12
        assert_eq!(g.seed.l()[3][2], 0);
        let (b, _) = exchange_matrix(2, 2);
        assert_eq!(b[1][0], 1);
        assert_eq!(b[2][0], 1);
        assert_eq!(b[3][0], -1);
    }

    #[test]
    fn three_by_three_shape() {
        let g = build_seed(3, 3).unwrap();
        assert_eq!(g.seed.rank(), 9);
        assert_eq!(g.seed.mutable_indices().len(), 4);
        assert_eq!(grading_vector(3, 3), vec![1, 1, 1, 1, 2, 2, 1, 2, 3]);
        assert_eq!(g.seed.labels()[4], "M[23|23]");
        assert_eq!(g.d, 2);
    }

    #[test]
    fn mutation_recovers_the_corner() {
        let g = build_seed(2, 2).unwrap();
        let x = g.mutated_minor(0).unwrap();
        assert_eq!(x, g.algebra.generator(1, 1).unwrap());
    }

    #[test]
    fn three_by_three_closure() {
        let g = build_seed(3, 3).unwrap();
        let (e, real) = g.explore(&ExploreOptions::default()).unwrap();
        assert!(e.complete);
        assert_eq!(e.variables.len(), 16);
        assert_eq!(real.variables.len(), 16);
        for v in &real.variables {
            assert!(v.is_q_integral());
            v.degree().unwrap();
        }
    }

    #[test]
    fn balance_values() {
        for (k, j) in [(2, 2), (3, 3), (3, 4), (4, 3), (4, 4)] {
            for bal in degree_balance(k, j) {
                assert_eq!(bal.incoming, bal.outgoing, "{:?}", bal);
                assert_eq!(bal.incoming, bal.expected, "{:?}", bal);
            }
        }
        let interior = degree_balance(4, 4).into_iter().filter(|b| b.vertex.0 > 1 && b.vertex.1 > 1).count();
        assert_eq!(interior, 4);
    }
}
