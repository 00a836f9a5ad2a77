//! Mutation of a cluster realised in some concrete algebra.
//!
//! A seed stores its variables as Laurent polynomials in the initial torus.
//! A realisation carries the same cluster as actual elements of an algebra
//! (quantum matrices, the localised Grassmannian, ...) and mutates them with
//! the exchange relation `x_k' x_k = N_+ + N_-` and an exact right division.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::qcoeff::QCoeff;
use crate::qmatrix::{LocAlgebra, LocElement, MatAlgebra, MatElement};
use crate::torus::TorusElement;

use super::mutate::exchange_vectors;

pub trait Realization {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    /// Multiplies by `q^{n/2}`.
    fn shift(&self, a: &Self::Elem, n: i64) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &QCoeff) -> Self::Elem;
    fn divide_right(&self, p: &Self::Elem, d: &Self::Elem) -> Result<Self::Elem>;
}

/// Ordered product `q^{1/2 sum_{i<j} a_i a_j l_ji} x_1^{a_1} ... x_r^{a_r}`.
pub fn realized_monomial<R: Realization>(r: &R, l: &IntMatrix, cluster: &[R::Elem], a: &[i64]) -> Result<R::Elem> {
    let mut shift = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            shift += a[i] * a[j] * l[j][i];
        }
    }
    let mut m = r.one();
    for (i, &ai) in a.iter().enumerate() {
        if ai < 0 {
            return Err(Error::Validation("cluster monomials need nonnegative exponents".into()));
        }
        for _ in 0..ai {
            m = r.mul(&m, &cluster[i])?;
        }
    }
    Ok(r.shift(&m, shift))
}

/// The new `k`-th variable for a cluster with exchange data `(b, l)`.
pub fn realized_exchange<R: Realization>(
    r: &R,
    b: &IntMatrix,
    l: &IntMatrix,
    mutable: &[bool],
    cluster: &[R::Elem],
    k: usize,
) -> Result<R::Elem> {
    if !mutable.get(k).copied().unwrap_or(false) {
        return Err(Error::Frozen(k));
    }
    let (plus, minus) = exchange_vectors(b, k);
    let term = |v: &[i64]| -> Result<R::Elem> {
        let h: i64 = (0..v.len()).map(|i| v[i] * l[i][k]).sum();
        let mut shifted = v.to_vec();
        shifted[k] += 1;
        Ok(r.shift(&realized_monomial(r, l, cluster, &shifted)?, h))
    };
    let sum = r.add(&term(&plus)?, &term(&minus)?)?;
    r.divide_right(&sum, &cluster[k])
}

/// Placeholder realisation used when only the torus expansions are wanted.
pub struct Trivial;

impl Realization for Trivial {
    type Elem = ();
    fn one(&self) {}
    fn mul(&self, _: &(), _: &()) -> Result<()> {
        Ok(())
    }
    fn add(&self, _: &(), _: &()) -> Result<()> {
        Ok(())
    }
    fn shift(&self, _: &(), _: i64) {}
    fn scale(&self, _: &(), _: &QCoeff) {}
    fn divide_right(&self, _: &(), _: &()) -> Result<()> {
        Ok(())
    }
}

/// Realisation in a quantum torus; agrees with [`crate::seed::Seed::mutate`].
pub struct InTorus(pub Arc<crate::torus::Torus>);

impl Realization for InTorus {
    type Elem = TorusElement;
    fn one(&self) -> TorusElement {
        TorusElement::one(&self.0)
    }
    fn mul(&self, a: &TorusElement, b: &TorusElement) -> Result<TorusElement> {
        a.mul(b)
    }
    fn add(&self, a: &TorusElement, b: &TorusElement) -> Result<TorusElement> {
        a.add(b)
    }
    fn shift(&self, a: &TorusElement, n: i64) -> TorusElement {
        a.shift(n)
    }
    fn scale(&self, a: &TorusElement, c: &QCoeff) -> TorusElement {
        a.scale(c)
    }
    fn divide_right(&self, p: &TorusElement, d: &TorusElement) -> Result<TorusElement> {
        p.divide_right(d)
    }
}

impl Realization for MatAlgebra {
    type Elem = MatElement;
    fn one(&self) -> MatElement {
        MatAlgebra::one(self)
    }
    fn mul(&self, a: &MatElement, b: &MatElement) -> Result<MatElement> {
        MatAlgebra::mul(self, a, b)
    }
    fn add(&self, a: &MatElement, b: &MatElement) -> Result<MatElement> {
        a.add(b)
    }
    fn shift(&self, a: &MatElement, n: i64) -> MatElement {
        a.shift(n)
    }
    fn scale(&self, a: &MatElement, c: &QCoeff) -> MatElement {
        a.scale(c)
    }
    fn divide_right(&self, p: &MatElement, d: &MatElement) -> Result<MatElement> {
        MatAlgebra::divide_right(self, p, d)
    }
}

impl Realization for LocAlgebra {
    type Elem = LocElement;
    fn one(&self) -> LocElement {
        LocAlgebra::one(self)
    }
    fn mul(&self, a: &LocElement, b: &LocElement) -> Result<LocElement> {
        LocAlgebra::mul(self, a, b)
    }
    fn add(&self, a: &LocElement, b: &LocElement) -> Result<LocElement> {
        LocAlgebra::add(self, a, b)
    }
    fn shift(&self, a: &LocElement, n: i64) -> LocElement {
        LocAlgebra::shift(self, a, n)
    }
    fn scale(&self, a: &LocElement, c: &QCoeff) -> LocElement {
        LocAlgebra::scale(self, a, c)
    }
    fn divide_right(&self, p: &LocElement, d: &LocElement) -> Result<LocElement> {
        LocAlgebra::divide_right(self, p, d)
    }
}

/// Evaluates a torus element under a homomorphism given on generators.
/// `inverses[g]` is used for negative powers of generator `g`.
pub fn evaluate<R: Realization>(
    r: &R,
    x: &TorusElement,
    images: &[R::Elem],
    inverses: &[Option<R::Elem>],
) -> Result<R::Elem> {
    let mut out: Option<R::Elem> = None;
    for (a, c) in x.terms() {
        let mut t = r.one();
        for (g, &e) in a.iter().enumerate() {
            let base = if e >= 0 {
                images[g].clone()
            } else {
                inverses[g]
                    .clone()
                    .ok_or_else(|| Error::Unsupported(format!("no inverse for generator {}", g)))?
            };
            for _ in 0..e.abs() {
                t = r.mul(&t, &base)?;
            }
        }
        let s = r.scale(&t, c);
        out = Some(match out {
            None => s,
            Some(o) => r.add(&o, &s)?,
        });
    }
    out.ok_or_else(|| Error::Unsupported("cannot evaluate zero".into()))
}
