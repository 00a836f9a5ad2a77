//! Breadth-first closure of a seed under mutation.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::torus::TorusElement;

use super::realize::{realized_exchange, Realization, Trivial};
use super::Seed;

pub const DEFAULT_MAX_DEPTH: usize = 16;

#[derive(Clone, Debug)]
pub struct ExploreOptions {
    pub max_depth: usize,
    /// Check the tracked `L` against the cluster after every mutation.
    pub check_quasi_commutation: bool,
    /// Check homogeneity of every new variable against these generator
    /// weights (per vector name).
    pub weights: Option<BTreeMap<String, Vec<i64>>>,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions { max_depth: DEFAULT_MAX_DEPTH, check_quasi_commutation: false, weights: None }
    }
}

/// A cluster variable found during exploration, with the values of every
/// named vector at its position when it was first reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableRecord {
    pub element: TorusElement,
    pub vertex: String,
    pub path: Vec<String>,
    pub data: BTreeMap<String, i64>,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Seeds in canonical form, in order of discovery.
    pub seeds: Vec<Seed>,
    /// Mutation path (vertex names) to each seed.
    pub paths: Vec<Vec<String>>,
    /// Distinct variables that occur at mutable positions, sorted.
    pub variables: Vec<VariableRecord>,
    /// Frozen entries of the initial seed.
    pub frozen: Vec<TorusElement>,
    pub complete: bool,
    pub depth: usize,
    /// Variables met twice with different auxiliary data.
    pub conflicts: Vec<String>,
}

type SeedKey = (Vec<TorusElement>, IntMatrix, IntMatrix, Vec<bool>);

fn key(s: &Seed) -> SeedKey {
    (s.cluster.clone(), s.b.clone(), s.l.clone(), s.mutable.clone())
}

fn record_data(s: &Seed, i: usize) -> BTreeMap<String, i64> {
    s.gradings.iter().map(|(k, v)| (k.clone(), v[i])).collect()
}

/// Realised clusters and variables accompanying an [`Enumeration`], aligned
/// with its `seeds`, `variables` and `frozen` lists.
#[derive(Clone, Debug)]
pub struct Realized<E> {
    pub seeds: Vec<Vec<E>>,
    pub variables: Vec<E>,
    pub frozen: Vec<E>,
}

/// Explores up to `max_depth` mutations away from `seed`; never fails on
/// an incomplete closure (see [`Enumeration::complete`]).
pub fn explore(seed: &Seed, opts: &ExploreOptions) -> Result<Enumeration> {
    Ok(explore_realized(seed, opts, &Trivial, vec![(); seed.rank()])?.0)
}

/// [`explore`] while mutating a realisation `init` of the initial cluster
/// alongside the torus expansions.
pub fn explore_realized<R: Realization>(
    seed: &Seed,
    opts: &ExploreOptions,
    real: &R,
    init: Vec<R::Elem>,
) -> Result<(Enumeration, Realized<R::Elem>)> {
    if init.len() != seed.rank() {
        return Err(Error::LengthMismatch { expected: seed.rank(), got: init.len() });
    }
    let (start, p0) = seed.canonical();
    let mut realized: Vec<Vec<R::Elem>> = vec![p0.iter().map(|&i| init[i].clone()).collect()];
    let mut var_real: BTreeMap<TorusElement, R::Elem> = BTreeMap::new();
    let mut index: HashMap<SeedKey, usize> = HashMap::new();
    let mut seeds = vec![start.clone()];
    let mut paths: Vec<Vec<String>> = vec![vec![]];
    index.insert(key(&start), 0);
    let mut vars: BTreeMap<TorusElement, VariableRecord> = BTreeMap::new();
    let mut conflicts = Vec::new();
    let note = |s: &Seed,
                i: usize,
                path: &[String],
                vars: &mut BTreeMap<TorusElement, VariableRecord>,
                conflicts: &mut Vec<String>| {
        let data = record_data(s, i);
        match vars.get(&s.cluster[i]) {
            Some(r) if r.data != data => conflicts.push(format!(
                "{} reached with {:?} and {:?}",
                s.cluster[i], r.data, data
            )),
            Some(_) => {}
            None => {
                vars.insert(
                    s.cluster[i].clone(),
                    VariableRecord {
                        element: s.cluster[i].clone(),
                        vertex: s.vertices[i].clone(),
                        path: path.to_vec(),
                        data,
                    },
                );
            }
        }
    };
    for i in start.mutable_indices() {
        note(&start, i, &[], &mut vars, &mut conflicts);
        var_real.insert(start.cluster[i].clone(), realized[0][i].clone());
    }
    let mut frontier = vec![0usize];
    let mut depth = 0;
    let mut complete = true;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &si in &frontier {
            let s = seeds[si].clone();
            for k in s.mutable_indices() {
                let m = s.mutate(k)?;
                if opts.check_quasi_commutation {
                    m.check_quasi_commutation()?;
                }
                if let Some(w) = &opts.weights {
                    m.check_homogeneity(w)?;
                }
                let (c, p) = m.canonical();
                let kk = key(&c);
                let mut path = paths[si].clone();
                path.push(s.vertices[k].clone());
                let pos = p.iter().position(|&x| x == k).expect("permutation");
                if let Some(&old) = index.get(&kk) {
                    if seeds[old].gradings != c.gradings {
                        conflicts.push(format!("seed {} reached with different auxiliary data", old));
                    }
                    note(&c, pos, &path, &mut vars, &mut conflicts);
                    continue;
                }
                if depth == opts.max_depth {
                    complete = false;
                    continue;
                }
                note(&c, pos, &path, &mut vars, &mut conflicts);
                let mut rc = realized[si].clone();
                rc[k] = realized_exchange(real, &s.b, &s.l, &s.mutable, &realized[si], k)?;
                let rc: Vec<R::Elem> = p.iter().map(|&i| rc[i].clone()).collect();
                var_real.entry(c.cluster[pos].clone()).or_insert_with(|| rc[pos].clone());
                index.insert(kk, seeds.len());
                next.push(seeds.len());
                seeds.push(c);
                paths.push(path);
                realized.push(rc);
            }
        }
        if !complete {
            break;
        }
        if !next.is_empty() {
            depth += 1;
        }
        frontier = next;
    }
    let frozen_idx: Vec<usize> = (0..seed.rank()).filter(|&i| !seed.mutable[i]).collect();
    let frozen = frozen_idx.iter().map(|&i| seed.cluster[i].clone()).collect();
    let variables: Vec<VariableRecord> = vars.into_values().collect();
    let real_vars = variables.iter().map(|v| var_real[&v.element].clone()).collect();
    let real_frozen = frozen_idx.iter().map(|&i| init[i].clone()).collect();
    let e = Enumeration { seeds, paths, variables, frozen, complete, depth, conflicts };
    Ok((e, Realized { seeds: realized, variables: real_vars, frozen: real_frozen }))
}

/// Like [`explore`] but fails with [`Error::DepthCapExceeded`] when the
/// closure does not finish within `max_depth` mutations.
pub fn enumerate(seed: &Seed, max_depth: usize) -> Result<Enumeration> {
    let e = explore(seed, &ExploreOptions { max_depth, ..Default::default() })?;
    if e.complete {
        Ok(e)
    } else {
        Err(Error::DepthCapExceeded { depth: max_depth, seeds: e.seeds.len(), variables: e.variables.len() })
    }
}

impl Enumeration {
    pub fn variable(&self, x: &TorusElement) -> Option<&VariableRecord> {
        self.variables.iter().find(|r| &r.element == x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn a2() -> Seed {
        // 0 -> 1, both mutable
        let mut b = crate::intmat::zeros(2, 2);
        super::super::add_arrow(&mut b, 0, 1);
        let l = vec![vec![0, -1], vec![1, 0]];
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        Seed::initial(b, l, BTreeMap::new(), vec![true, true], names.clone(), names).unwrap()
    }

    #[test]
    fn a2_closes_with_five_clusters() {
        let s = a2();
        assert_eq!(s.check_matrices(), Ok(1));
        let e = enumerate(&s, DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(e.seeds.len(), 5);
        assert_eq!(e.variables.len(), 5);
        assert!(e.conflicts.is_empty());
    }

    #[test]
    fn depth_zero_is_the_initial_seed() {
        let e = explore(&a2(), &ExploreOptions { max_depth: 0, ..Default::default() }).unwrap();
        assert_eq!(e.seeds.len(), 1);
        assert!(!e.complete);
    }

    #[test]
    fn kronecker_is_capped() {
        let b = vec![vec![0, -2], vec![2, 0]];
        let l = vec![vec![0, -1], vec![1, 0]];
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let s = Seed::initial(b, l, BTreeMap::new(), vec![true, true], names.clone(), names).unwrap();
        assert!(matches!(enumerate(&s, 4), Err(Error::DepthCapExceeded { depth: 4, .. })));
    }

    #[test]
    fn torus_realisation_reproduces_the_expansions() {
        let s = a2();
        let real = super::super::realize::InTorus(s.torus().clone());
        let (e, r) = explore_realized(&s, &ExploreOptions::default(), &real, s.cluster().to_vec()).unwrap();
        for (v, x) in e.variables.iter().zip(&r.variables) {
            assert_eq!(&v.element, x);
        }
        for (seed, rc) in e.seeds.iter().zip(&r.seeds) {
            assert_eq!(seed.cluster(), &rc[..]);
        }
    }
}
