//! The numbered end-to-end checks.
//!
//! Each check returns a [`CheckResult`]; errors inside a check turn into a
//! failing result carrying the error text rather than aborting the run.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gls;
use crate::intmat::{self, IntMatrix};
use crate::lifting::{self, ThetaRow};
use crate::qcoeff::QCoeff;
use crate::qmatrix::{k_subsets, LocAlgebra, MatAlgebra, Shape};
use crate::seed::realize::realized_exchange;
use crate::seed::{e_matrix, ExploreOptions, Seed, GRADING, THETA};
use crate::torus::TorusElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "{} {}: {} ({}; {} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.millis
        )
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Randomised cases per property in check 7.
    pub cases: usize,
    pub rng_seed: u64,
    pub explore: ExploreOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { cases: 1000, rng_seed: 0x5eed, explore: ExploreOptions::default() }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Validation(msg()))
    }
}

fn run(id: u8, title: &str, f: impl FnOnce() -> Result<String>) -> CheckResult {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    CheckResult { id, title: title.to_string(), passed, detail, millis: start.elapsed().as_millis() }
}

/// 1: mutating the `Mat(2,2)` seed at `(1,1)` gives `X11`.
pub fn check_calibration() -> CheckResult {
    run(1, "Mat(2,2) calibration", || {
        let g = gls::build_seed(2, 2)?;
        let x = g.mutated_minor(0)?;
        let want = g.algebra.generator(1, 1)?;
        ensure(x == want, || format!("got {}", x))?;
        Ok(format!("mutation at (1,1) gives {}", x))
    })
}

/// Shapes used by check 2.
pub fn gls_shapes() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 2..=4 {
        for j in 2..=4 {
            if k * j <= 12 {
                out.push((k, j));
            }
        }
    }
    out
}

/// 2: compatibility constant and degree balance of the quantum-matrix seeds.
pub fn check_gls_family() -> CheckResult {
    run(2, "quantum-matrix seeds: compatibility and balance", || {
        let mut ds = Vec::new();
        for (k, j) in gls_shapes() {
            let g = gls::build_seed(k, j)?;
            ds.push(g.d);
            for bal in gls::degree_balance(k, j) {
                ensure(bal.incoming == bal.outgoing && bal.incoming == bal.expected, || {
                    format!("Mat({},{}) vertex {:?}: {:?}", k, j, bal.vertex, bal)
                })?;
            }
            ensure(g.seed.grading(THETA).map(|t| t.iter().all(|&x| x == 1)) == Some(true), || {
                format!("Mat({},{}) theta is not all ones", k, j)
            })?;
        }
        ensure(ds.iter().all(|&d| d == ds[0]) && ds[0] > 0, || format!("constants {:?}", ds))?;
        Ok(format!("d = {} on {} shapes, balance values as predicted", ds[0], ds.len()))
    })
}

/// 3: closure of the `Mat(3,3)` seed.
pub fn check_mat33(opts: &ExploreOptions) -> CheckResult {
    run(3, "Mat(3,3) closure", || {
        let g = gls::build_seed(3, 3)?;
        let (e, real) = g.explore(opts)?;
        ensure(e.complete, || format!("capped at depth {}", e.depth))?;
        ensure(e.variables.len() == 16, || format!("{} variables", e.variables.len()))?;
        for (rec, x) in e.variables.iter().zip(&real.variables) {
            let deg = x.degree()? as i64;
            ensure(Some(&deg) == rec.data.get(GRADING), || {
                format!("{} has degree {} but tracked {:?}", x, deg, rec.data.get(GRADING))
            })?;
        }
        let mut pool = real.variables.clone();
        pool.extend(real.frozen.iter().cloned());
        let mut minors = 0;
        for t in 1..=3 {
            for rows in k_subsets(3, t) {
                for cols in k_subsets(3, t) {
                    let m = g.algebra.quantum_minor(&rows, &cols)?;
                    ensure(pool.contains(&m), || format!("minor {} missing", gls::minor_label(&rows, &cols)))?;
                    minors += 1;
                }
            }
        }
        Ok(format!(
            "{} seeds, {} mutable variables, all {} minors present, homogeneous",
            e.seeds.len(),
            e.variables.len(),
            minors
        ))
    })
}

fn theta_rows(k: usize, n: usize, opts: &ExploreOptions) -> Result<Vec<ThetaRow>> {
    let ls = lifting::loc_seed(k, n)?;
    let (rows, complete) = lifting::theta_table(&ls, opts)?;
    ensure(complete, || format!("Loc(Gr({},{})) closure capped", k, n))?;
    Ok(rows)
}

/// 4: θ equals the minimal denominator.
pub fn check_theta(opts: &ExploreOptions) -> CheckResult {
    run(4, "theta equals the minimal denominator", || {
        let mut parts = Vec::new();
        for (k, n) in [(3, 6), (2, 5)] {
            let rows = theta_rows(k, n, opts)?;
            if let Some(bad) = rows.iter().find(|r| !r.agrees()) {
                return Err(Error::Validation(format!(
                    "Gr({},{}) {}: theta {} but denominator {}",
                    k, n, bad.label, bad.theta, bad.denominator
                )));
            }
            parts.push(format!("Gr({},{}): {} variables", k, n, rows.len()));
        }
        let ls = lifting::loc_seed(3, 6)?;
        let v = ls.seed.index_of("(2,2)").expect("grid vertex");
        let theta = ls.seed.mutate(v)?.grading(THETA).expect("tracked")[v];
        let x = realized_exchange(&*ls.algebra, ls.seed.b(), ls.seed.l(), ls.seed.mutable(), &ls.realized, v)?;
        let den = ls.algebra.denominator(&x);
        ensure(theta == 2 && den == 2, || format!("after (2,2): theta {}, denominator {}", theta, den))?;
        parts.push("theta = 2 after (2,2)".into());
        Ok(parts.join("; "))
    })
}

/// 5: every Plücker coordinate occurs.
pub fn check_coverage(opts: &ExploreOptions) -> CheckResult {
    run(5, "Plücker coverage", || {
        let mut parts = Vec::new();
        for (k, n) in [(2, 4), (2, 5), (3, 6)] {
            let hat = lifting::hat_seed(&lifting::loc_seed(k, n)?)?;
            let c = lifting::plucker_coverage(&hat, opts)?;
            ensure(c.complete, || format!("Gr({},{}) closure capped", k, n))?;
            ensure(c.missing.is_empty(), || format!("Gr({},{}) missing {:?}", k, n, c.missing))?;
            parts.push(format!("{}/{}", c.found.len(), c.found.len() + c.missing.len()));
        }
        Ok(parts.join(", "))
    })
}

/// 6: the seed on `K_q[Gr(3,6)]`.
pub fn check_grassmannian(opts: &ExploreOptions) -> CheckResult {
    run(6, "Gr(3,6) lift", || {
        let (k, n) = (3, 6);
        let g = lifting::grassmannian_seed(k, n)?;
        let mat = g.algebra.mat();
        for ((x, cols), v) in g.realized.iter().zip(g.expected_pluckers()).zip(g.seed.vertices()) {
            ensure(*x == mat.plucker(&cols)?, || format!("entry {} is {} instead of {:?}", v, x, cols))?;
        }
        g.check_realized_l()?;
        let (e, real) = g.explore(opts)?;
        ensure(e.complete, || "closure capped".into())?;
        for (rec, x) in e.variables.iter().zip(&real.variables) {
            let x = g.algebra.normalize(x);
            ensure(x.denom_exp == 0, || format!("{} keeps denominator {}", rec.vertex, x.denom_exp))?;
            let deg = x.numerator.degree()? as i64;
            let tracked = rec.data[GRADING];
            ensure(deg == k as i64 * tracked, || format!("{}: X-degree {} but tracked {}", rec.vertex, deg, tracked))?;
        }
        Ok(format!(
            "initial cluster of {} Plücker coordinates, {} variables denominator-free and homogeneous, L matches",
            g.seed.rank(),
            e.variables.len()
        ))
    })
}

/// A seed with principal coefficients over a random skew block, optionally
/// padded by a central frozen entry, with `L` scaled by `d` and a main
/// grading built from `top`.
pub fn principal_seed(b0: &IntMatrix, d: i64, pad: bool, top: &[i64]) -> Result<Seed> {
    let m = b0.len();
    let r = 2 * m + usize::from(pad);
    let mut b = intmat::zeros(r, r);
    let mut l = intmat::zeros(r, r);
    for i in 0..m {
        for j in 0..m {
            b[i][j] = b0[i][j];
            l[m + i][m + j] = -d * b0[i][j];
        }
        b[m + i][i] = 1;
        b[i][m + i] = -1;
        l[i][m + i] = -d;
        l[m + i][i] = d;
    }
    let mut g = vec![0; r];
    g[..m].copy_from_slice(top);
    for i in 0..m {
        g[m + i] = (0..m).map(|j| b0[i][j] * top[j]).sum();
    }
    let mut gradings = std::collections::BTreeMap::new();
    gradings.insert(GRADING.to_string(), g);
    let names: Vec<String> = (0..r).map(|i| format!("x{}", i)).collect();
    let mut mutable = vec![false; r];
    mutable[..m].iter_mut().for_each(|x| *x = true);
    Seed::initial(b, l, gradings, mutable, names.clone(), names)
}

/// Grading with random mutable part, completed on the frozen part.
fn random_grading(rng: &mut ChaCha8Rng, s: &Seed) -> Vec<i64> {
    // principal block layout: the frozen partner of mutable i is m + i
    let m = s.mutable_indices().len();
    let mut v = vec![0; s.rank()];
    for x in v.iter_mut().take(m) {
        *x = rng.gen_range(-3..=3);
    }
    for i in 0..m {
        v[m + i] = (0..m).map(|j| s.b()[i][j] * v[j]).sum();
    }
    if s.rank() > 2 * m {
        v[2 * m] = rng.gen_range(-3..=3);
    }
    v
}

fn random_seed(rng: &mut ChaCha8Rng) -> Result<Seed> {
    let m = rng.gen_range(1..=2);
    let mut b0 = intmat::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            let x = rng.gen_range(-3..=3);
            b0[i][j] = x;
            b0[j][i] = -x;
        }
    }
    let d = rng.gen_range(1..=3);
    let top: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
    principal_seed(&b0, d, rng.gen_bool(0.5), &top)
}

/// Random seed moved by up to two random mutations.
fn random_moved_seed(rng: &mut ChaCha8Rng) -> Result<Seed> {
    let mut s = random_seed(rng)?;
    for _ in 0..rng.gen_range(0..=2) {
        let ks = s.mutable_indices();
        s = s.mutate(ks[rng.gen_range(0..ks.len())])?;
    }
    Ok(s)
}

fn pick_mutable(rng: &mut ChaCha8Rng, s: &Seed) -> usize {
    let ks = s.mutable_indices();
    ks[rng.gen_range(0..ks.len())]
}

/// `q^{1/2 Σ_{i,j} a_i a_j t_i u_j} M(a) Z^{a·u}` computed in the rescaled torus.
fn rescaled_monomial_formula(s: &Seed, rescaled: &Seed, t: &[i64], u: &[i64], a: &[i64]) -> Result<TorusElement> {
    let torus = rescaled.torus();
    let shift: i64 = (0..a.len()).flat_map(|i| (0..a.len()).map(move |j| (i, j))).map(|(i, j)| a[i] * a[j] * t[i] * u[j]).sum();
    let m = s.cluster_monomial(a)?.embed(torus)?;
    // a vanishing u leaves no extension generator behind
    let m = match torus.names().iter().position(|x| x == crate::seed::EXTENSION) {
        Some(z) => m.mul(&TorusElement::generator(torus, z).zpow(intmat::dot(a, u))?)?,
        None => m,
    };
    Ok(m.scale(&QCoeff::q_half(shift)))
}

/// 7: randomised properties of mutation and rescaling.
pub fn check_properties(cases: usize, rng_seed: u64) -> CheckResult {
    run(7, "randomised mutation and rescaling properties", || {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        for case in 0..cases {
            let fail = |what: &str| Error::Validation(format!("{} failed in case {}", what, case));
            let s = random_moved_seed(&mut rng)?;
            let k = pick_mutable(&mut rng, &s);

            let e = e_matrix(s.b(), k, s.mutable())?;
            if intmat::matmul(&e, &e) != intmat::identity(s.rank()) {
                return Err(fail("E^2 = I"));
            }

            let m = s.mutate(k)?;
            if m.mutate(k)? != s {
                return Err(fail("involution"));
            }
            if m.check_matrices()? != s.check_matrices()? {
                return Err(fail("compatibility constant"));
            }

            let h = s.grading(GRADING).expect("graded").clone();
            let mr = s.rescale_by_q(&h)?.mutate(k)?;
            let gk = m.grading(GRADING).expect("graded")[k];
            if mr.cluster()[k] != m.cluster()[k].shift(gk) {
                return Err(fail("q-rescaling"));
            }

            let base = random_seed(&mut rng)?;
            let t = random_grading(&mut rng, &base);
            let u = random_grading(&mut rng, &base);
            let rescaled = base.rescale_seed(&t, &u)?;
            let a: Vec<i64> = (0..base.rank()).map(|_| rng.gen_range(0..=2)).collect();
            if rescaled.cluster_monomial(&a)? != rescaled_monomial_formula(&base, &rescaled, &t, &u, &a)? {
                return Err(fail("rescaled monomial"));
            }
            let neg: Vec<i64> = u.iter().map(|x| -x).collect();
            if rescaled.rescale_seed(&t, &neg)? != base {
                return Err(fail("reversal"));
            }
        }
        Ok(format!("{} cases per property", cases))
    })
}

/// 8: α is multiplicative and sends minors to Plücker coordinates.
pub fn check_alpha() -> CheckResult {
    run(8, "dehomogenisation audit", || {
        let mut pairs = 0;
        for k in 2..=3 {
            for j in 2..=3 {
                let loc = LocAlgebra::new(k, k + j)?;
                let mat = MatAlgebra::new(Shape::new(k, j));
                for g in 0..k * j {
                    for h in 0..k * j {
                        let (gi, gj) = mat.shape().position(g);
                        let (hi, hj) = mat.shape().position(h);
                        let lhs = loc.alpha(&mat.normal_form(&QCoeff::one(), &[(gi, gj), (hi, hj)])?)?;
                        let rhs = loc.normalize(&loc.mul(&loc.alpha_generator(gi, gj)?, &loc.alpha_generator(hi, hj)?)?);
                        ensure(lhs == rhs, || format!("X{}{} X{}{} in Mat({},{})", gi, gj, hi, hj, k, j))?;
                        pairs += 1;
                    }
                }
            }
        }
        let loc = LocAlgebra::new(3, 6)?;
        let mat = MatAlgebra::new(Shape::new(3, 3));
        let mut minors = 0;
        for t in 1..=3 {
            for rows in k_subsets(3, t) {
                for cols in k_subsets(3, t) {
                    let lhs = loc.alpha(&mat.quantum_minor(&rows, &cols)?)?;
                    let q1 = lifting::q1_set(&rows, &cols, 3, 6)?;
                    let rhs = loc.normalize(&loc.mul(&loc.plucker(&q1)?, &loc.d_inverse())?);
                    ensure(lhs == rhs, || format!("minor {}", gls::minor_label(&rows, &cols)))?;
                    minors += 1;
                }
            }
        }
        Ok(format!("{} generator products, {} minors", pairs, minors))
    })
}

/// All checks, in order.
pub fn run_all(opts: &VerifyOptions) -> Vec<CheckResult> {
    vec![
        check_calibration(),
        check_gls_family(),
        check_mat33(&opts.explore),
        check_theta(&opts.explore),
        check_coverage(&opts.explore),
        check_grassmannian(&opts.explore),
        check_properties(opts.cases, opts.rng_seed),
        check_alpha(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_seeds_are_valid() {
        let b0 = vec![vec![0, 2], vec![-2, 0]];
        let s = principal_seed(&b0, 3, true, &[1, -1]).unwrap();
        assert_eq!(s.rank(), 5);
        assert_eq!(s.validate(), Ok(3));
    }

    #[test]
    fn quick_checks() {
        for r in [check_calibration(), check_gls_family(), check_properties(50, 1)] {
            assert!(r.passed, "{}", r.line());
        }
    }
}
