//! From quantum matrices to the quantum Grassmannian.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`loc_seed`]: the seed on `K_q[Mat(k,n-k)]` extended by a Laurent
//!    coefficient `y^{±1}` and pushed through the dehomogenisation `α` into
//!    the localisation of `K_q[Gr(k,n)]` at `D = [1..k]`;
//! 2. [`hat_seed`]: adjoin the frozen entry `(0,0)`, realised as `D D^{-1} = 1`,
//!    with one arrow into `(1,1)`;
//! 3. [`rescaled_loc_seed`]: rescale by `(t̂, -Ĝ)`, which kills the grading,
//!    then normalise the two coefficients by powers of `q^{1/2}`;
//! 4. [`grassmannian_seed`]: set `Z = q^{1/2} D` (the central element
//!    `q^{-1/2} D^{-1} Z` goes to 1), drop the two trivial coefficients and
//!    strip the remaining powers of `q^{1/2}`.
//!
//! Every stage keeps a realisation of its cluster in the localisation, so
//! each variable reached by mutation can be compared with actual Plücker
//! coordinates and its `D`-denominator read off.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gls::{self, GlsSeed};
use crate::intmat;
use crate::qcoeff::QCoeff;
use crate::qmatrix::{k_subsets, LocAlgebra, LocElement, MatElement};
use crate::seed::realize::evaluate;
use crate::seed::{explore_realized, ExploreOptions, Seed, EXTENSION, GRADING, THETA};
use crate::torus::TorusElement;

pub use crate::qmatrix::alpha_columns;
pub use crate::seed::theta_max_rule as theta_mutate;

/// Name of the vector `t̂` carried by the hat seed.
pub const T_HAT: &str = "t_hat";

/// `Q_1(I,J)`, the column set with `α(Δ^I_J) = [Q_1(I,J)] D^{-1}`.
pub fn q1_set(rows: &[usize], cols: &[usize], k: usize, n: usize) -> Result<Vec<usize>> {
    let ok = |s: &[usize], bound: usize| s.windows(2).all(|w| w[0] < w[1]) && s.iter().all(|&x| x >= 1 && x <= bound);
    if rows.len() != cols.len() || rows.len() > k || n <= k || !ok(rows, k) || !ok(cols, n - k) {
        return Err(Error::BadIndices(format!("no Q1 set for rows {:?}, columns {:?} in Gr({},{})", rows, cols, k, n)));
    }
    Ok(alpha_columns(k, rows, cols))
}

fn digits(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(if v.iter().all(|&x| x < 10) { "" } else { "," })
}

pub fn plucker_label(cols: &[usize]) -> String {
    format!("[{}]", digits(cols))
}

/// A seed together with its cluster realised in the localisation.
#[derive(Clone, Debug)]
pub struct LocSeed {
    pub k: usize,
    pub n: usize,
    pub seed: Seed,
    pub realized: Vec<LocElement>,
    pub algebra: Arc<LocAlgebra>,
}

impl LocSeed {
    /// Positions of the two localisation coefficients `D` and `D^{-1}`.
    pub fn coefficients(&self) -> [usize; 2] {
        let r = self.seed.rank();
        [r - 2, r - 1]
    }

    /// Checks the tracked `L` against the realisation on every pair.
    pub fn check_realized_l(&self) -> Result<()> {
        check_l(&self.seed, |a, b| self.algebra.quasi_exponent(&self.realized[a], &self.realized[b]))
    }

    pub fn explore(&self, opts: &ExploreOptions) -> Result<(crate::seed::Enumeration, crate::seed::Realized<LocElement>)> {
        explore_realized(&self.seed, opts, &*self.algebra, self.realized.clone())
    }
}

fn check_l<F: Fn(usize, usize) -> Result<i64>>(seed: &Seed, oracle: F) -> Result<()> {
    let r = seed.rank();
    for a in 0..r {
        for b in a + 1..r {
            let lam = oracle(a, b)?;
            if lam != seed.l()[a][b] {
                return Err(Error::Validation(format!(
                    "L[{}][{}] is {} but the realised entries give {}",
                    seed.vertices()[a],
                    seed.vertices()[b],
                    seed.l()[a][b],
                    lam
                )));
            }
        }
    }
    Ok(())
}

fn coefficient_vertices(k: usize, j: usize) -> [String; 2] {
    // column k+1 unless that would clash with the grid
    let c = k.max(j) + 1;
    [gls::vertex_name(1, c), gls::vertex_name(2, c)]
}

/// The localised seed on `Loc(K_q[Gr(k,n)])`.
pub fn loc_seed(k: usize, n: usize) -> Result<LocSeed> {
    if k < 2 || n <= k {
        return Err(Error::BadIndices(format!("Gr({},{}) needs 2 <= k < n", k, n)));
    }
    let j = n - k;
    let base: GlsSeed = gls::build_seed(k, j)?;
    let algebra = LocAlgebra::new(k, n)?;
    let g = base.seed.grading(GRADING).expect("built with a grading").clone();
    let d_label = plucker_label(&(1..=k).collect::<Vec<_>>());
    let inv_label = format!("{}^-1", d_label);
    let verts = coefficient_vertices(k, j);
    let seed = base.seed.extend_with_laurent_coefficients(
        &g,
        (1, -1),
        [verts[0].as_str(), verts[1].as_str()],
        [d_label.as_str(), inv_label.as_str()],
    )?;
    let mut theta = seed.grading(THETA).expect("built with theta").clone();
    let r = theta.len();
    theta[r - 2] = 0;
    theta[r - 1] = 1;
    let seed = seed.with_grading(THETA, theta)?;

    let mut realized = base.minors.iter().map(|m| algebra.alpha(m)).collect::<Result<Vec<_>>>()?;
    realized.push(algebra.plucker(&(1..=k).collect::<Vec<_>>())?);
    realized.push(algebra.d_inverse());
    seed.validate()?;
    let out = LocSeed { k, n, seed, realized, algebra };
    out.check_realized_l()?;
    Ok(out)
}

/// The vector that is 1 on the grid, which is a grading everywhere except
/// at `(1,1)`; returns the positions where it fails.
pub fn unhatted_defects(ls: &LocSeed) -> Vec<usize> {
    let r = ls.seed.rank();
    let mut a = vec![1; r];
    a[r - 2] = -1;
    crate::seed::grading_defects(ls.seed.b(), ls.seed.mutable(), &a)
}

/// Adjoins the frozen entry `(0,0) = 1` with an arrow to `(1,1)`; the main
/// grading becomes `Ĝ` and `t̂` is stored under [`T_HAT`].
pub fn hat_seed(ls: &LocSeed) -> Result<LocSeed> {
    let defects = unhatted_defects(ls);
    if defects != [0] {
        return Err(Error::Validation(format!(
            "the all-ones vector should fail to be a grading exactly at (1,1), fails at {:?}",
            defects.iter().map(|&i| &ls.seed.vertices()[i]).collect::<Vec<_>>()
        )));
    }
    let s = &ls.seed;
    let r = s.rank();
    let grid = r - 2;
    let pad = |m: &intmat::IntMatrix| {
        let mut out = intmat::zeros(r + 1, r + 1);
        for i in 0..r {
            out[i + 1][1..].copy_from_slice(&m[i]);
        }
        out
    };
    let mut b = pad(s.b());
    crate::seed::add_arrow(&mut b, 0, 1);
    let l = pad(s.l());

    let g = s.grading(GRADING).expect("graded");
    let mut gradings = BTreeMap::new();
    for (name, v) in s.gradings() {
        if name != GRADING {
            let mut w = vec![0];
            w.extend(v);
            gradings.insert(name.clone(), w);
        }
    }
    let mut g_hat = vec![-1; grid + 1];
    g_hat.extend([1, -1]);
    gradings.insert(GRADING.to_string(), g_hat);
    let mut t_hat = vec![0];
    t_hat.extend(&g[..grid]);
    t_hat.extend([0, 0]);
    gradings.insert(T_HAT.to_string(), t_hat);

    let mut cluster = vec![TorusElement::one(s.torus())];
    cluster.extend(s.cluster().iter().cloned());
    let mut mutable = vec![false];
    mutable.extend(s.mutable());
    let mut vertices = vec![gls::vertex_name(0, 0)];
    vertices.extend(s.vertices().iter().cloned());
    let mut labels = vec!["1".to_string()];
    labels.extend(s.labels().iter().cloned());
    // Ĝ puts the identity in degree -1, so it is a grading of the exchange
    // data only; homogeneity returns once the rescaling adds the Z powers.
    let seed = Seed::new(s.torus().clone(), cluster, b, l, gradings, mutable, vertices, labels)?;

    let mut realized = vec![ls.algebra.one()];
    realized.extend(ls.realized.iter().cloned());
    Ok(LocSeed { k: ls.k, n: ls.n, seed, realized, algebra: ls.algebra.clone() })
}

/// Rescales the hat seed by `(t̂, -Ĝ)` and then multiplies the coefficients
/// by `q^{±1/2}`. The main grading of the result is zero.
pub fn rescaled_loc_seed(hat: &LocSeed) -> Result<Seed> {
    let s = &hat.seed;
    let t = s.grading(T_HAT).ok_or_else(|| Error::Validation("not a hat seed".into()))?.clone();
    let u: Vec<i64> = s.grading(GRADING).expect("graded").iter().map(|x| -x).collect();
    let rs = s.rescale_seed(&t, &u)?;
    let r = rs.rank();
    let mut h = vec![0; r];
    h[r - 2] = 1;
    h[r - 1] = -1;
    let rs = rs.rescale_by_q(&h)?;
    if rs.grading(GRADING).expect("graded").iter().any(|&x| x != 0) {
        return Err(Error::Validation("rescaled grading is not zero".into()));
    }
    Ok(rs)
}

/// The graded quantum seed on `K_q[Gr(k,n)]` with its realisation.
#[derive(Clone, Debug)]
pub struct GrassmannianSeed {
    pub k: usize,
    pub n: usize,
    pub seed: Seed,
    /// Cluster entries as elements of `K_q[Mat(k,n)]`.
    pub realized: Vec<MatElement>,
    pub algebra: Arc<LocAlgebra>,
}

impl GrassmannianSeed {
    /// The column sets the initial cluster should consist of:
    /// `[1..k]` at `(0,0)` and `[Q_1(R(r,s), C(r,s))]` at grid entry `(r,s)`.
    pub fn expected_pluckers(&self) -> Vec<Vec<usize>> {
        let (k, j) = (self.k, self.n - self.k);
        let mut out = vec![(1..=k).collect()];
        for (r, s) in gls::grid(k, j) {
            let (rows, cols) = gls::minor_sets(k, j, r, s);
            out.push(alpha_columns(k, &rows, &cols));
        }
        out
    }

    pub fn check_realized_l(&self) -> Result<()> {
        let mat = self.algebra.mat();
        check_l(&self.seed, |a, b| mat.quasi_exponent(&self.realized[a], &self.realized[b]))
    }

    pub fn explore(&self, opts: &ExploreOptions) -> Result<(crate::seed::Enumeration, crate::seed::Realized<LocElement>)> {
        let init = self.realized.iter().map(|m| self.algebra.from_mat(m.clone())).collect();
        explore_realized(&self.seed, opts, &*self.algebra, init)
    }
}

/// Runs the whole pipeline for `Gr(k,n)`.
pub fn grassmannian_seed(k: usize, n: usize) -> Result<GrassmannianSeed> {
    let ls = loc_seed(k, n)?;
    let hat = hat_seed(&ls)?;
    grassmannian_from(&hat)
}

/// The last two stages, starting from a hat seed.
pub fn grassmannian_from(hat: &LocSeed) -> Result<GrassmannianSeed> {
    let rs = rescaled_loc_seed(hat)?;
    let target = hat.seed.torus().clone();
    let y = target.rank() - 1;
    let images = rs
        .torus()
        .names()
        .iter()
        .enumerate()
        .map(|(g, name)| {
            if name == EXTENSION {
                TorusElement::generator(&target, y).scale(&QCoeff::q_half(1))
            } else {
                TorusElement::generator(&target, g)
            }
        })
        .collect::<Vec<_>>();
    let cluster = rs.cluster().iter().map(|x| x.substitute(&target, &images)).collect::<Result<Vec<_>>>()?;
    let r = rs.rank();
    for &c in &[r - 2, r - 1] {
        if cluster[c] != TorusElement::one(&target) {
            return Err(Error::Validation(format!("coefficient {} does not become 1", rs.vertices()[c])));
        }
    }
    let u = rs.grading("u").ok_or_else(|| Error::Validation("rescaled seed lost u".into()))?.clone();
    let t_hat = rs.grading(T_HAT).expect("carried").clone();
    let mut gradings = BTreeMap::new();
    gradings.insert(GRADING.to_string(), u);
    gradings.insert(T_HAT.to_string(), t_hat);
    let quotient = Seed::new(
        target.clone(),
        cluster,
        rs.b().clone(),
        rs.l().clone(),
        gradings,
        rs.mutable().to_vec(),
        rs.vertices().to_vec(),
        rs.labels().to_vec(),
    )?;
    let keep: Vec<usize> = (0..r - 2).collect();
    let quotient = quotient.select(&keep)?;
    let h: Vec<i64> = quotient.grading(T_HAT).expect("carried").iter().map(|t| -(t + 1)).collect();
    let seed = quotient.rescale_by_q(&h)?.without_grading(T_HAT);
    if seed.grading(GRADING).expect("graded").iter().any(|&x| x != 1) {
        return Err(Error::Validation("the inherited grading is not all ones".into()));
    }
    seed.validate()?;
    seed.check_quasi_commutation()?;

    // realise through the localisation: grid generators are α(minor), y is D
    let alg = hat.algebra.clone();
    let mut gens: Vec<LocElement> = hat.realized[1..=y].to_vec();
    gens.push(hat.realized[y + 1].clone());
    debug_assert_eq!(gens.len(), target.rank());
    let mut inverses = vec![None; target.rank()];
    inverses[y] = Some(alg.d_inverse());
    let mut realized = Vec::with_capacity(seed.rank());
    for (i, x) in seed.cluster().iter().enumerate() {
        let v = alg.normalize(&evaluate(&*alg, x, &gens, &inverses)?);
        if v.denom_exp != 0 {
            return Err(Error::DenominatorNotCleared(i));
        }
        realized.push(v.numerator);
    }
    let mut labels = Vec::new();
    let out = GrassmannianSeed { k: hat.k, n: hat.n, seed: seed.clone(), realized, algebra: alg };
    for cols in out.expected_pluckers() {
        labels.push(plucker_label(&cols));
    }
    let seed = relabel(&seed, labels)?;
    Ok(GrassmannianSeed { seed, ..out })
}

fn relabel(s: &Seed, labels: Vec<String>) -> Result<Seed> {
    Seed::new(
        s.torus().clone(),
        s.cluster().to_vec(),
        s.b().clone(),
        s.l().clone(),
        s.gradings().clone(),
        s.mutable().to_vec(),
        s.vertices().to_vec(),
        labels,
    )
}

/// Minimal `D`-denominator exponent of a realised variable.
pub fn minimal_denominator(alg: &LocAlgebra, v: &LocElement) -> u32 {
    alg.denominator(v)
}

/// One row of the θ-versus-denominator table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaRow {
    pub label: String,
    pub path: Vec<String>,
    pub theta: i64,
    pub denominator: u32,
}

impl ThetaRow {
    pub fn agrees(&self) -> bool {
        self.theta == self.denominator as i64
    }
}

/// θ against the minimal denominator for every variable reachable from `ls`
/// and for the frozen grid entries; the localisation coefficients are left out.
pub fn theta_table(ls: &LocSeed, opts: &ExploreOptions) -> Result<(Vec<ThetaRow>, bool)> {
    let (e, real) = ls.explore(opts)?;
    let mut rows = Vec::new();
    for (rec, v) in e.variables.iter().zip(&real.variables) {
        rows.push(ThetaRow {
            label: if rec.path.is_empty() { rec.vertex.clone() } else { format!("{} via {}", rec.vertex, rec.path.join(",")) },
            path: rec.path.clone(),
            theta: rec.data.get(THETA).copied().ok_or_else(|| Error::Validation("no theta".into()))?,
            denominator: ls.algebra.denominator(v),
        });
    }
    let coeffs = ls.coefficients();
    let theta = ls.seed.grading(THETA).expect("loc seeds carry theta");
    for i in 0..ls.seed.rank() {
        if ls.seed.mutable()[i] || coeffs.contains(&i) {
            continue;
        }
        rows.push(ThetaRow {
            label: ls.seed.vertices()[i].clone(),
            path: vec![],
            theta: theta[i],
            denominator: ls.algebra.denominator(&ls.realized[i]),
        });
    }
    Ok((rows, e.complete))
}

/// Which Plücker coordinates `[I] D^{-1}` occur among the variables and
/// frozen entries reachable from a (hat) seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub found: Vec<Vec<usize>>,
    pub missing: Vec<Vec<usize>>,
    pub complete: bool,
}

pub fn plucker_coverage(ls: &LocSeed, opts: &ExploreOptions) -> Result<Coverage> {
    let (e, real) = ls.explore(opts)?;
    let alg = &ls.algebra;
    let mut pool: Vec<LocElement> = real.variables.iter().map(|v| alg.normalize(v)).collect();
    for i in 0..ls.seed.rank() {
        if !ls.seed.mutable()[i] {
            pool.push(alg.normalize(&ls.realized[i]));
        }
    }
    let mut found = Vec::new();
    let mut missing = Vec::new();
    for cols in k_subsets(ls.n, ls.k) {
        let target = alg.normalize(&alg.mul(&alg.plucker(&cols)?, &alg.d_inverse())?);
        if pool.contains(&target) {
            found.push(cols);
        } else {
            missing.push(cols);
        }
    }
    Ok(Coverage { found, missing, complete: e.complete })
}

/// One line of the pipeline report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageCheck {
    pub stage: &'static str,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub k: usize,
    pub n: usize,
    pub checks: Vec<StageCheck>,
    pub theta: Vec<ThetaRow>,
    pub coverage: Option<Coverage>,
    pub seed: Option<GrassmannianSeed>,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Recorder(Vec<StageCheck>);

impl Recorder {
    fn record(&mut self, stage: &'static str, check: &str, r: Result<String>) -> bool {
        let (passed, detail) = match r {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        self.0.push(StageCheck { stage, check: check.to_string(), passed, detail });
        passed
    }

    /// Records a stage that produces a value; `None` stops the pipeline.
    fn stage<T>(&mut self, stage: &'static str, check: &str, r: Result<(T, String)>) -> Option<T> {
        match r {
            Ok((v, d)) => {
                self.record(stage, check, Ok(d));
                Some(v)
            }
            Err(e) => {
                self.record(stage, check, Err(e));
                None
            }
        }
    }
}

fn fail(msg: String) -> Error {
    Error::Validation(msg)
}

/// Runs every stage for `Gr(k,n)`, recording each validation.
pub fn pipeline(k: usize, n: usize, opts: &ExploreOptions) -> PipelineReport {
    let mut rec = Recorder(Vec::new());
    let mut report = PipelineReport { k, n, checks: vec![], theta: vec![], coverage: None, seed: None };
    let ls = rec.stage(
        "loc",
        "localised seed: compatibility, gradings, L against the realisation",
        loc_seed(k, n).and_then(|ls| {
            let d = ls.seed.check_matrices()?;
            let detail = format!("rank {}, d = {}", ls.seed.rank(), d);
            Ok((ls, detail))
        }),
    );
    let Some(ls) = ls else {
        report.checks = rec.0;
        return report;
    };
    let theta = theta_table(&ls, opts).and_then(|(rows, complete)| {
        if !complete {
            return Err(fail("closure capped".into()));
        }
        if let Some(bad) = rows.iter().find(|r| !r.agrees()) {
            return Err(fail(format!("{}: theta {} but denominator {}", bad.label, bad.theta, bad.denominator)));
        }
        Ok(rows)
    });
    match theta {
        Ok(rows) => {
            rec.record("loc", "theta equals the minimal denominator", Ok(format!("{} variables", rows.len())));
            report.theta = rows;
        }
        Err(e) => {
            rec.record("loc", "theta equals the minimal denominator", Err(e));
        }
    }

    let hat = rec.stage(
        "hat",
        "hat seed: (1,1) is the only defect, Ĝ and t̂ are gradings",
        hat_seed(&ls).map(|h| (h, "ok".to_string())),
    );
    let Some(hat) = hat else {
        report.checks = rec.0;
        return report;
    };
    let coverage = plucker_coverage(&hat, opts);
    let ok = match &coverage {
        Ok(c) if c.complete && c.missing.is_empty() => Ok(format!("{}/{}", c.found.len(), c.found.len())),
        Ok(c) => Err(fail(format!("missing {:?}, complete = {}", c.missing, c.complete))),
        Err(e) => Err(e.clone()),
    };
    rec.record("hat", "every Plücker coordinate is a cluster variable", ok);
    report.coverage = coverage.ok();

    let rescaled = rec.stage(
        "rescaled",
        "rescaled seed: zero grading, quasi-commuting cluster",
        rescaled_loc_seed(&hat).and_then(|rs| {
            rs.check_quasi_commutation()?;
            Ok((rs, "ok".to_string()))
        }),
    );
    if rescaled.is_none() {
        report.checks = rec.0;
        return report;
    }

    let g = rec.stage(
        "quotient",
        "quotient seed: denominator-free initial cluster, all-ones grading",
        grassmannian_from(&hat).map(|g| {
            let d = format!("rank {}", g.seed.rank());
            (g, d)
        }),
    );
    let Some(g) = g else {
        report.checks = rec.0;
        return report;
    };
    let mat = g.algebra.mat().clone();
    let pl: Result<String> = g
        .realized
        .iter()
        .zip(g.expected_pluckers())
        .map(|(x, cols)| {
            if *x == mat.plucker(&cols)? {
                Ok(plucker_label(&cols))
            } else {
                Err(fail(format!("entry {} is not {}", x, plucker_label(&cols))))
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.join(" "));
    rec.record("quotient", "initial cluster is Plücker coordinates without q-powers", pl);
    rec.record("quotient", "L matches the quasi-commutation of the Plücker coordinates", g.check_realized_l().map(|_| "ok".into()));
    let closure = g.explore(opts).and_then(|(e, real)| {
        if !e.complete {
            return Err(fail("closure capped".into()));
        }
        for (r, x) in e.variables.iter().zip(&real.variables) {
            let x = g.algebra.normalize(x);
            if x.denom_exp != 0 {
                return Err(fail(format!("{} keeps a denominator", r.vertex)));
            }
            if x.numerator.degree()? as i64 != k as i64 * r.data[GRADING] {
                return Err(fail(format!("{} is not of its tracked degree", r.vertex)));
            }
        }
        Ok(format!("{} variables, {} clusters", e.variables.len(), e.seeds.len()))
    });
    rec.record("quotient", "every cluster variable lies in the Grassmannian and is homogeneous", closure);
    report.seed = Some(g);
    report.checks = rec.0;
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q1_sets() {
        assert_eq!(q1_set(&[1], &[1], 2, 5).unwrap(), vec![1, 3]);
        assert_eq!(q1_set(&[2, 3], &[2, 3], 3, 6).unwrap(), vec![3, 5, 6]);
        assert!(q1_set(&[1], &[4], 3, 6).is_err());
        let mut all: Vec<Vec<usize>> = crate::qmatrix::subsets(3)
            .into_iter()
            .flat_map(|i| crate::qmatrix::k_subsets(3, i.len()).into_iter().map(move |j| (i.clone(), j)))
            .map(|(i, j)| q1_set(&i, &j, 3, 6).unwrap())
            .collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 20);
    }

    #[test]
    fn loc_seed_shape() {
        let ls = loc_seed(3, 6).unwrap();
        assert_eq!(ls.seed.rank(), 11);
        assert_eq!(ls.seed.vertices()[9], "(1,4)");
        assert_eq!(ls.seed.grading(GRADING).unwrap()[9..], [1, -1]);
        assert_eq!(ls.seed.grading(THETA).unwrap()[..9], [1; 9]);
        assert!(ls.seed.b()[9].iter().all(|&x| x == 0));
        for v in &ls.realized[..9] {
            assert_eq!(v.denom_exp, 1);
        }
        let m356 = LocElement { numerator: ls.algebra.mat().plucker(&[3, 5, 6]).unwrap(), denom_exp: 1 };
        assert_eq!(ls.realized[4], m356);
        // the coefficient column does not clash with the grid
        assert_eq!(loc_seed(2, 5).unwrap().seed.vertices()[6], "(1,4)");
    }

    #[test]
    fn hat_and_rescaled() {
        let ls = loc_seed(3, 6).unwrap();
        let hat = hat_seed(&ls).unwrap();
        assert_eq!(hat.seed.rank(), 12);
        let t = hat.seed.grading(T_HAT).unwrap();
        assert_eq!(t[hat.seed.index_of("(2,2)").unwrap()], 2);
        assert_eq!(hat.seed.grading(GRADING).unwrap(), &[vec![-1; 10], vec![1, -1]].concat());
        let rs = rescaled_loc_seed(&hat).unwrap();
        rs.check_quasi_commutation().unwrap();
        let z = rs.torus().names().iter().position(|s| s == EXTENSION).unwrap();
        for i in 1..10 {
            // q^{t̂/2} x Z
            let (a, c) = rs.cluster()[i].as_monomial().unwrap();
            assert_eq!(a[i - 1], 1);
            assert_eq!(a[z], 1);
            assert_eq!(c, &QCoeff::q_half(t[i]));
        }
        for (i, j) in [(1, 2), (4, 7)] {
            assert_eq!(rs.l()[i][j], hat.seed.l()[i][j] + t[j] - t[i]);
        }
    }

    #[test]
    fn gr24_lifts_to_pluckers() {
        let g = grassmannian_seed(2, 4).unwrap();
        assert_eq!(g.seed.rank(), 5);
        for (x, cols) in g.realized.iter().zip(g.expected_pluckers()) {
            assert_eq!(x, &g.algebra.mat().plucker(&cols).unwrap());
        }
        g.check_realized_l().unwrap();
        let (e, real) = g.explore(&ExploreOptions::default()).unwrap();
        assert_eq!(e.variables.len(), 2);
        let mut cols: Vec<_> = real
            .variables
            .iter()
            .map(|v| {
                assert_eq!(v.denom_exp, 0);
                k_subsets(4, 2).into_iter().find(|c| g.algebra.plucker(c).unwrap() == *v).unwrap()
            })
            .collect();
        cols.sort();
        assert_eq!(cols, vec![vec![1, 3], vec![2, 4]]);
    }

    #[test]
    fn theta_after_one_mutation() {
        let ls = loc_seed(3, 6).unwrap();
        let v = ls.seed.index_of("(2,2)").unwrap();
        let m = ls.seed.mutate(v).unwrap();
        assert_eq!(m.grading(THETA).unwrap()[v], 2);
        let x = crate::seed::realize::realized_exchange(
            &*ls.algebra,
            ls.seed.b(),
            ls.seed.l(),
            ls.seed.mutable(),
            &ls.realized,
            v,
        )
        .unwrap();
        assert_eq!(minimal_denominator(&ls.algebra, &x), 2);
    }

    #[test]
    fn pipeline_for_gr25() {
        let r = pipeline(2, 5, &ExploreOptions::default());
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.coverage.unwrap().found.len(), 10);
        assert_eq!(r.seed.unwrap().seed.rank(), 7);
        assert!(!pipeline(1, 3, &ExploreOptions::default()).passed());
    }

    #[test]
    fn small_coverage_and_theta() {
        let hat = hat_seed(&loc_seed(2, 4).unwrap()).unwrap();
        let c = plucker_coverage(&hat, &ExploreOptions::default()).unwrap();
        assert!(c.missing.is_empty(), "{:?}", c.missing);
        assert_eq!(c.found.len(), 6);
        let (rows, complete) = theta_table(&loc_seed(2, 4).unwrap(), &ExploreOptions::default()).unwrap();
        assert!(complete);
        assert!(rows.iter().all(|r| r.agrees()), "{:?}", rows);
    }
}
