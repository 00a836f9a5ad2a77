//! The localisation of the Grassmannian subalgebra at `D = [1..k]`.
//!
//! An element `N D^{-d}` is stored as `(N, d)`. `D` quasi-commutes with every
//! generator of `K_q[Mat(k,n)]`, `D X_g = q^{lambda_g} X_g D`, so moving
//! `D^{-d}` past a monomial only costs a power of `q`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::qcoeff::QCoeff;

use super::{MatAlgebra, MatElement, Shape};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocElement {
    pub numerator: MatElement,
    pub denom_exp: u32,
}

impl fmt::Display for LocElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_exp == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) D^-{}", self.numerator, self.denom_exp)
        }
    }
}

impl fmt::Debug for LocElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub struct LocAlgebra {
    mat: Arc<MatAlgebra>,
    d: MatElement,
    lambda: Vec<i64>,
}

impl fmt::Debug for LocAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocAlgebra({:?})", self.mat)
    }
}

impl LocAlgebra {
    /// Localisation of `K_q[Gr(k,n)]` at `[1..k]`, realised inside `Mat(k,n)`.
    pub fn new(k: usize, n: usize) -> Result<Arc<LocAlgebra>> {
        if k == 0 || k >= n {
            return Err(Error::BadIndices(format!("need 0 < k < n, got k={} n={}", k, n)));
        }
        let mat = MatAlgebra::new(Shape::new(k, n));
        let first: Vec<usize> = (1..=k).collect();
        let d = mat.plucker(&first)?;
        let mut lambda = Vec::with_capacity(k * n);
        for g in 0..k * n {
            let (i, j) = mat.shape().position(g);
            lambda.push(mat.quasi_exponent(&d, &mat.generator(i, j)?)?);
        }
        Ok(Arc::new(LocAlgebra { mat, d, lambda }))
    }

    pub fn mat(&self) -> &Arc<MatAlgebra> {
        &self.mat
    }

    pub fn k(&self) -> usize {
        self.mat.shape().rows
    }

    pub fn n(&self) -> usize {
        self.mat.shape().cols
    }

    /// The localised element `D = [1..k]`.
    pub fn d(&self) -> &MatElement {
        &self.d
    }

    /// `lambda_g` with `D X_g = q^{lambda_g} X_g D`.
    pub fn lambdas(&self) -> &[i64] {
        &self.lambda
    }

    pub fn one(&self) -> LocElement {
        self.from_mat(self.mat.one())
    }

    pub fn from_mat(&self, m: MatElement) -> LocElement {
        LocElement { numerator: m, denom_exp: 0 }
    }

    pub fn plucker(&self, cols: &[usize]) -> Result<LocElement> {
        Ok(self.from_mat(self.mat.plucker(cols)?))
    }

    /// `D^{-1}`.
    pub fn d_inverse(&self) -> LocElement {
        LocElement { numerator: self.mat.one(), denom_exp: 1 }
    }

    /// `D^{-e} N D^{e}`.
    fn twist(&self, e: u32, n: &MatElement) -> MatElement {
        if e == 0 {
            return n.clone();
        }
        let terms = n.terms().iter().map(|(m, c)| {
            let w: i64 = m.iter().zip(&self.lambda).map(|(&a, l)| a as i64 * l).sum();
            (m.clone(), c.shift(-2 * e as i64 * w))
        });
        MatElement::from_terms(n.shape(), terms).expect("same shape")
    }

    fn raise(&self, a: &LocElement, to: u32) -> Result<MatElement> {
        let mut n = a.numerator.clone();
        for _ in a.denom_exp..to {
            n = self.mat.mul(&n, &self.d)?;
        }
        Ok(n)
    }

    pub fn mul(&self, a: &LocElement, b: &LocElement) -> Result<LocElement> {
        let n = self.mat.mul(&a.numerator, &self.twist(a.denom_exp, &b.numerator))?;
        Ok(LocElement { numerator: n, denom_exp: a.denom_exp + b.denom_exp })
    }

    pub fn add(&self, a: &LocElement, b: &LocElement) -> Result<LocElement> {
        let e = a.denom_exp.max(b.denom_exp);
        let n = self.raise(a, e)?.add(&self.raise(b, e)?)?;
        Ok(LocElement { numerator: n, denom_exp: e })
    }

    pub fn shift(&self, a: &LocElement, h: i64) -> LocElement {
        LocElement { numerator: a.numerator.shift(h), denom_exp: a.denom_exp }
    }

    pub fn scale(&self, a: &LocElement, c: &QCoeff) -> LocElement {
        LocElement { numerator: a.numerator.scale(c), denom_exp: a.denom_exp }
    }

    /// Strips factors of `D` from the right of the numerator while possible,
    /// leaving the minimal denominator exponent.
    pub fn normalize(&self, a: &LocElement) -> LocElement {
        if a.numerator.is_zero() {
            return LocElement { numerator: a.numerator.clone(), denom_exp: 0 };
        }
        let mut out = a.clone();
        while out.denom_exp > 0 {
            match self.mat.divide_right(&out.numerator, &self.d) {
                Ok(q) => {
                    out.numerator = q;
                    out.denom_exp -= 1;
                }
                Err(_) => break,
            }
        }
        out
    }

    /// `Q` with `Q b = a`, normalised.
    pub fn divide_right(&self, a: &LocElement, b: &LocElement) -> Result<LocElement> {
        if b.numerator.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        // Q = (N, e) gives Q b = (N tw_e(B), e + d_b); match against a D^j.
        let base = b.denom_exp.saturating_sub(a.denom_exp);
        let mut last = None;
        for j in base..base + 4 {
            let e = a.denom_exp + j - b.denom_exp;
            let target = self.raise(a, a.denom_exp + j)?;
            match self.mat.divide_right(&target, &self.twist(e, &b.numerator)) {
                Ok(n) => return Ok(self.normalize(&LocElement { numerator: n, denom_exp: e })),
                Err(err) => last = Some(err),
            }
        }
        Err(last.unwrap())
    }

    /// Minimal denominator exponent.
    pub fn denominator(&self, a: &LocElement) -> u32 {
        self.normalize(a).denom_exp
    }

    pub fn quasi_exponent(&self, a: &LocElement, b: &LocElement) -> Result<i64> {
        let ab = self.normalize(&self.mul(a, b)?);
        let ba = self.normalize(&self.mul(b, a)?);
        if ab.denom_exp != ba.denom_exp {
            return Err(Error::NotQuasiCommuting);
        }
        let (ka, ca) = ab.numerator.leading_term().ok_or(Error::NotQuasiCommuting)?;
        let (kb, cb) = ba.numerator.leading_term().ok_or(Error::NotQuasiCommuting)?;
        if ka != kb {
            return Err(Error::NotQuasiCommuting);
        }
        let s = ca.shift_from(cb).ok_or(Error::NotQuasiCommuting)?;
        if s % 2 != 0 || ab.numerator != ba.numerator.shift(s) {
            return Err(Error::NotQuasiCommuting);
        }
        Ok(s / 2)
    }

    /// Dehomogenisation of an element of `K_q[Mat(k, n-k)]`:
    /// `X_ij -> [1..(k-i+1)^..k, j+k] D^{-1}`.
    pub fn alpha(&self, x: &MatElement) -> Result<LocElement> {
        let (k, n) = (self.k(), self.n());
        if x.shape() != Shape::new(k, n - k) {
            return Err(Error::AmbientMismatch);
        }
        let images: Vec<LocElement> = (0..k * (n - k))
            .map(|g| {
                let (i, j) = x.shape().position(g);
                self.alpha_generator(i, j)
            })
            .collect::<Result<_>>()?;
        let mut out = LocElement { numerator: self.mat.zero(), denom_exp: 0 };
        for (m, c) in x.terms() {
            let mut t = self.from_mat(MatElement::scalar(self.mat.shape(), c.clone()));
            for (g, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = self.mul(&t, &images[g])?;
                }
            }
            out = self.add(&out, &t)?;
        }
        Ok(self.normalize(&out))
    }

    pub fn alpha_generator(&self, i: usize, j: usize) -> Result<LocElement> {
        let k = self.k();
        if i == 0 || i > k || j == 0 || j > self.n() - k {
            return Err(Error::UnknownGenerator(format!("X{},{}", i, j)));
        }
        let cols = alpha_columns(k, &[i], &[j]);
        Ok(LocElement { numerator: self.mat.plucker(&cols)?, denom_exp: 1 })
    }
}

/// `{j + k : j in J} ∪ ({1..k} \ {k - i + 1 : i in I})`, sorted.
pub fn alpha_columns(k: usize, rows: &[usize], cols: &[usize]) -> Vec<usize> {
    let drop: Vec<usize> = rows.iter().map(|&i| k + 1 - i).collect();
    let mut out: Vec<usize> = (1..=k).filter(|c| !drop.contains(c)).collect();
    out.extend(cols.iter().map(|&j| j + k));
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_quasi_commutes_with_generators() {
        let loc = LocAlgebra::new(2, 4).unwrap();
        let l = loc.lambdas();
        assert_eq!(&l[..2], &[0, 0]);
        assert!(l[2..4].iter().all(|&x| x == 1));
    }

    #[test]
    fn normalisation() {
        let loc = LocAlgebra::new(3, 6).unwrap();
        let d = loc.plucker(&[1, 2, 3]).unwrap();
        let x = loc.mul(&d, &loc.d_inverse()).unwrap();
        assert_eq!(loc.normalize(&x), loc.one());
        let p = LocElement { numerator: loc.mat().plucker(&[1, 2, 4]).unwrap(), denom_exp: 1 };
        assert_eq!(loc.normalize(&p), p);
        let b = loc.mat().plucker(&[1, 2, 4]).unwrap();
        let two = LocElement { numerator: loc.mat().mul(&b, loc.d()).unwrap(), denom_exp: 2 };
        assert_eq!(loc.normalize(&two), p);
    }

    #[test]
    fn alpha_of_generators_and_y() {
        let loc = LocAlgebra::new(3, 6).unwrap();
        assert_eq!(alpha_columns(3, &[1], &[1]), vec![1, 2, 4]);
        assert_eq!(alpha_columns(3, &[2, 3], &[2, 3]), vec![3, 5, 6]);
        assert_eq!(alpha_columns(2, &[1], &[1]), vec![1, 3]);
        let x11 = loc.alpha_generator(1, 1).unwrap();
        assert_eq!(x11.numerator, loc.mat().plucker(&[1, 2, 4]).unwrap());
        let src = MatAlgebra::new(Shape::new(3, 3));
        let m = src.quantum_minor(&[2, 3], &[2, 3]).unwrap();
        let a = loc.alpha(&m).unwrap();
        assert_eq!(a, LocElement { numerator: loc.mat().plucker(&[3, 5, 6]).unwrap(), denom_exp: 1 });
    }

    #[test]
    fn division_round_trip() {
        let loc = LocAlgebra::new(2, 4).unwrap();
        let a = loc.alpha_generator(1, 1).unwrap();
        let b = loc.alpha_generator(2, 2).unwrap();
        let ab = loc.mul(&a, &b).unwrap();
        assert_eq!(loc.divide_right(&ab, &b).unwrap(), loc.normalize(&a));
        let y = loc.plucker(&[1, 2]).unwrap();
        let ay = loc.mul(&a, &y).unwrap();
        assert_eq!(loc.normalize(&ay).denom_exp, 0);
        assert_eq!(loc.divide_right(&ay, &y).unwrap(), a);
    }
}
