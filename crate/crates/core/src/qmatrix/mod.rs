//! Quantum matrices `K_q[Mat(k,n)]` in PBW normal form.
//!
//! Generators `X_ij` are numbered row-major. A monomial is an exponent
//! vector read as the ordered product `X_11^{a_1} X_12^{a_2} ... X_kn^{a_kn}`.
//! Multiplication straightens words with the quantum `2x2` relations
//!
//! ```text
//! ab = qba, ac = qca, bd = qdb, cd = qdc, bc = cb, ad - da = (q - q^-1) bc
//! ```
//!
//! for `a = X_ij, b = X_ij', c = X_i'j, d = X_i'j'` with `i < i'`, `j < j'`.
//! Products of a monomial and a generator are memoised per algebra.

mod loc;
mod minor;

pub use loc::{alpha_columns, LocAlgebra, LocElement};
pub use minor::{k_subsets, subsets};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcoeff::QCoeff;

pub type Mono = Vec<u16>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    pub rows: usize,
    pub cols: usize,
}

impl Shape {
    pub fn new(rows: usize, cols: usize) -> Self {
        Shape { rows, cols }
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of `X_ij` (1-based `i`, `j`).
    pub fn index(&self, i: usize, j: usize) -> Result<usize> {
        if i == 0 || j == 0 || i > self.rows || j > self.cols {
            return Err(Error::UnknownGenerator(format!("X{},{} in a {}x{} matrix", i, j, self.rows, self.cols)));
        }
        Ok((i - 1) * self.cols + (j - 1))
    }

    /// `(i, j)` of generator `g`, 1-based.
    pub fn position(&self, g: usize) -> (usize, usize) {
        (g / self.cols + 1, g % self.cols + 1)
    }
}

/// An element of `K_q[Mat(k,n)]`, stored as normal-ordered monomials.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatElement {
    shape: Shape,
    terms: BTreeMap<Mono, QCoeff>,
}

impl MatElement {
    pub fn zero(shape: Shape) -> Self {
        MatElement { shape, terms: BTreeMap::new() }
    }

    pub fn one(shape: Shape) -> Self {
        Self::monomial(shape, vec![0; shape.len()], QCoeff::one())
    }

    pub fn scalar(shape: Shape, c: QCoeff) -> Self {
        Self::monomial(shape, vec![0; shape.len()], c)
    }

    pub fn monomial(shape: Shape, m: Mono, c: QCoeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MatElement { shape, terms }
    }

    /// The generator `X_ij`.
    pub fn generator(shape: Shape, i: usize, j: usize) -> Result<Self> {
        let g = shape.index(i, j)?;
        let mut m = vec![0; shape.len()];
        m[g] = 1;
        Ok(Self::monomial(shape, m, QCoeff::one()))
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, QCoeff)>>(shape: Shape, it: I) -> Result<Self> {
        let mut out = Self::zero(shape);
        for (m, c) in it {
            if m.len() != shape.len() {
                return Err(Error::LengthMismatch { expected: shape.len(), got: m.len() });
            }
            out.add_term(m, &c);
        }
        Ok(out)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn terms(&self) -> &BTreeMap<Mono, QCoeff> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| c.is_one() && m.iter().all(|&e| e == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest monomial in lex order, which is multiplicative for this
    /// algebra: the straightening corrections are always smaller.
    pub fn leading_term(&self) -> Option<(&Mono, &QCoeff)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Mono, c: &QCoeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    fn check(&self, other: &MatElement) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &MatElement) -> Result<MatElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MatElement) -> Result<MatElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MatElement {
        self.scale(&QCoeff::from_int(-1))
    }

    pub fn scale(&self, c: &QCoeff) -> MatElement {
        let mut out = Self::zero(self.shape);
        for (m, d) in &self.terms {
            out.add_term(m.clone(), &(d * c));
        }
        out
    }

    /// Multiplies by `q^{n/2}`.
    pub fn shift(&self, n: i64) -> MatElement {
        MatElement {
            shape: self.shape,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.shift(n))).collect(),
        }
    }

    /// Total degree of every term, if they agree.
    pub fn degree(&self) -> Result<usize> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d: usize = m.iter().map(|&e| e as usize).sum();
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                _ => return Err(Error::Inhomogeneous),
            }
        }
        deg.ok_or(Error::Inhomogeneous)
    }

    /// `true` when every coefficient is an integer combination of whole
    /// powers of `q`.
    pub fn is_q_integral(&self) -> bool {
        self.terms.values().all(|c| c.terms().iter().all(|(n, _)| n % 2 == 0))
    }
}

impl fmt::Display for MatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let word: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(g, &e)| {
                    let (i, j) = self.shape.position(g);
                    if e == 1 {
                        format!("X{}{}", i, j)
                    } else {
                        format!("X{}{}^{}", i, j, e)
                    }
                })
                .collect();
            match (c.is_one(), word.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", word.join("*"))?,
                (false, true) => write!(f, "({})", c)?,
                (false, false) => write!(f, "({})*{}", c, word.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

type Expansion = Arc<Vec<(Mono, QCoeff)>>;

/// Multiplication context for one shape, with a cache of
/// monomial-times-generator products.
pub struct MatAlgebra {
    shape: Shape,
    cache: Mutex<HashMap<(Mono, u16), Expansion>>,
}

impl fmt::Debug for MatAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatAlgebra({}x{})", self.shape.rows, self.shape.cols)
    }
}

/// `y x` for generators `y > x`, as a sum of normal-ordered words `c * u v`.
pub(crate) fn swap_rule(shape: Shape, y: usize, x: usize) -> Vec<(QCoeff, usize, usize)> {
    let (i2, j2) = shape.position(y);
    let (i1, j1) = shape.position(x);
    debug_assert!(y > x);
    if i1 == i2 || j1 == j2 {
        vec![(QCoeff::q(-1), x, y)]
    } else if j1 < j2 {
        // d a = a d - (q - q^-1) b c
        let b = (i1 - 1) * shape.cols + (j2 - 1);
        let c = (i2 - 1) * shape.cols + (j1 - 1);
        let corr = QCoeff::from_terms([(2i64, -1i64), (-2, 1)]);
        vec![(QCoeff::one(), x, y), (corr, b, c)]
    } else {
        vec![(QCoeff::one(), x, y)]
    }
}

impl MatAlgebra {
    pub fn new(shape: Shape) -> Arc<MatAlgebra> {
        Arc::new(MatAlgebra { shape, cache: Mutex::new(HashMap::new()) })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn generator(&self, i: usize, j: usize) -> Result<MatElement> {
        MatElement::generator(self.shape, i, j)
    }

    pub fn one(&self) -> MatElement {
        MatElement::one(self.shape)
    }

    pub fn zero(&self) -> MatElement {
        MatElement::zero(self.shape)
    }

    /// Normal form of `m * X_g`.
    fn mono_times_gen(&self, m: &Mono, g: usize) -> Expansion {
        let top = m.iter().rposition(|&e| e > 0);
        match top {
            None => {}
            Some(h) if h <= g => {}
            Some(_) => {
                let key = (m.clone(), g as u16);
                if let Some(v) = self.cache.lock().unwrap().get(&key) {
                    return v.clone();
                }
                let v = Arc::new(self.straighten(m, g));
                self.cache.lock().unwrap().insert(key, v.clone());
                return v;
            }
        }
        let mut out = m.clone();
        out[g] += 1;
        Arc::new(vec![(out, QCoeff::one())])
    }

    fn straighten(&self, m: &Mono, g: usize) -> Vec<(Mono, QCoeff)> {
        let y = m.iter().rposition(|&e| e > 0).unwrap();
        let mut w = m.clone();
        w[y] -= 1;
        let mut acc: BTreeMap<Mono, QCoeff> = BTreeMap::new();
        for (c, u, v) in swap_rule(self.shape, y, g) {
            for (m1, c1) in self.mono_times_gen(&w, u).iter() {
                for (m2, c2) in self.mono_times_gen(m1, v).iter() {
                    let e = acc.entry(m2.clone()).or_insert_with(QCoeff::zero);
                    *e += &(&(&c * c1) * c2);
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn check(&self, a: &MatElement) -> Result<()> {
        if a.shape != self.shape {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// `a * X_g`.
    pub fn mul_gen(&self, a: &MatElement, g: usize) -> Result<MatElement> {
        self.check(a)?;
        if g >= self.shape.len() {
            return Err(Error::UnknownGenerator(format!("generator {}", g)));
        }
        let mut out = MatElement::zero(self.shape);
        for (m, c) in &a.terms {
            for (m2, c2) in self.mono_times_gen(m, g).iter() {
                out.add_term(m2.clone(), &(c * c2));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, a: &MatElement, b: &MatElement) -> Result<MatElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = MatElement::zero(self.shape);
        for (mb, cb) in &b.terms {
            let mut part = a.scale(cb);
            for (g, &e) in mb.iter().enumerate() {
                for _ in 0..e {
                    part = self.mul_gen(&part, g)?;
                }
            }
            for (m, c) in part.terms {
                out.add_term(m, &c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, a: &MatElement, n: u32) -> Result<MatElement> {
        let mut out = self.one();
        for _ in 0..n {
            out = self.mul(&out, a)?;
        }
        Ok(out)
    }

    /// Normal form of a word of generators `(i, j)` times a scalar.
    pub fn normal_form(&self, c: &QCoeff, word: &[(usize, usize)]) -> Result<MatElement> {
        let mut out = MatElement::scalar(self.shape, c.clone());
        for &(i, j) in word {
            out = self.mul_gen(&out, self.shape.index(i, j)?)?;
        }
        Ok(out)
    }

    /// `lambda` with `a b = q^lambda b a`.
    pub fn quasi_exponent(&self, a: &MatElement, b: &MatElement) -> Result<i64> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::NotQuasiCommuting);
        }
        let ab = self.mul(a, b)?;
        let ba = self.mul(b, a)?;
        let (ka, ca) = ab.leading_term().ok_or(Error::NotQuasiCommuting)?;
        let (kb, cb) = ba.leading_term().ok_or(Error::NotQuasiCommuting)?;
        if ka != kb {
            return Err(Error::NotQuasiCommuting);
        }
        let s = ca.shift_from(cb).ok_or(Error::NotQuasiCommuting)?;
        if s % 2 != 0 || ab != ba.shift(s) {
            return Err(Error::NotQuasiCommuting);
        }
        Ok(s / 2)
    }

    /// Exact right division: `Q` with `Q d = p`.
    pub fn divide_right(&self, p: &MatElement, d: &MatElement) -> Result<MatElement> {
        self.check(p)?;
        self.check(d)?;
        let (dl, _) = d.leading_term().ok_or_else(|| Error::NotDivisible("division by zero".into()))?;
        let mut rem = p.clone();
        let mut quot = MatElement::zero(self.shape);
        while let Some((m, c)) = rem.leading_term() {
            if m.iter().zip(dl).any(|(a, b)| a < b) {
                return Err(Error::NotDivisible(format!("remainder leads with {:?}", m)));
            }
            let t: Mono = m.iter().zip(dl).map(|(a, b)| a - b).collect();
            let prod = self.mul(&MatElement::monomial(self.shape, t.clone(), QCoeff::one()), d)?;
            let (pl, pc) = prod.leading_term().expect("nonzero product");
            if pl != m {
                return Err(Error::NotDivisible("leading monomials do not multiply".into()));
            }
            let inv = pc
                .unit_inverse()
                .ok_or_else(|| Error::NotDivisible(format!("leading coefficient {} is not a unit", pc)))?;
            let coeff = c * &inv;
            rem = rem.sub(&prod.scale(&coeff))?;
            quot.add_term(t, &coeff);
        }
        Ok(quot)
    }

    /// Exact left division: `Q` with `d Q = p`.
    pub fn divide_left(&self, p: &MatElement, d: &MatElement) -> Result<MatElement> {
        self.check(p)?;
        self.check(d)?;
        let (dl, _) = d.leading_term().ok_or_else(|| Error::NotDivisible("division by zero".into()))?;
        let mut rem = p.clone();
        let mut quot = MatElement::zero(self.shape);
        while let Some((m, c)) = rem.leading_term() {
            if m.iter().zip(dl).any(|(a, b)| a < b) {
                return Err(Error::NotDivisible(format!("remainder leads with {:?}", m)));
            }
            let t: Mono = m.iter().zip(dl).map(|(a, b)| a - b).collect();
            let prod = self.mul(d, &MatElement::monomial(self.shape, t.clone(), QCoeff::one()))?;
            let (pl, pc) = prod.leading_term().expect("nonzero product");
            if pl != m {
                return Err(Error::NotDivisible("leading monomials do not multiply".into()));
            }
            let inv = pc
                .unit_inverse()
                .ok_or_else(|| Error::NotDivisible(format!("leading coefficient {} is not a unit", pc)))?;
            let coeff = c * &inv;
            rem = rem.sub(&prod.scale(&coeff))?;
            quot.add_term(t, &coeff);
        }
        Ok(quot)
    }

    /// Number of cached monomial-generator products.
    pub fn cache_len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(alg: &MatAlgebra, i: usize, j: usize) -> MatElement {
        alg.generator(i, j).unwrap()
    }

    #[test]
    fn defining_relations() {
        let alg = MatAlgebra::new(Shape::new(2, 2));
        let (a, b, c, d) = (x(&alg, 1, 1), x(&alg, 1, 2), x(&alg, 2, 1), x(&alg, 2, 2));
        let m = |u: &MatElement, v: &MatElement| alg.mul(u, v).unwrap();
        assert_eq!(m(&b, &a), m(&a, &b).shift(-2));
        assert_eq!(m(&c, &a), m(&a, &c).shift(-2));
        assert_eq!(m(&d, &b), m(&b, &d).shift(-2));
        assert_eq!(m(&d, &c), m(&c, &d).shift(-2));
        assert_eq!(m(&c, &b), m(&b, &c));
        let lhs = m(&a, &d).sub(&m(&d, &a)).unwrap();
        let rhs = m(&b, &c).scale(&QCoeff::from_terms([(2i64, 1i64), (-2, -1)]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn small_normal_forms() {
        let s = Shape::new(1, 2);
        let alg = MatAlgebra::new(s);
        let got = alg.normal_form(&QCoeff::one(), &[(1, 2), (1, 1)]).unwrap();
        assert_eq!(got.to_string(), "(q^-1)*X11*X12");

        let alg = MatAlgebra::new(Shape::new(2, 2));
        let got = alg.normal_form(&QCoeff::one(), &[(2, 2), (1, 1)]).unwrap();
        let want = alg
            .normal_form(&QCoeff::one(), &[(1, 1), (2, 2)])
            .unwrap()
            .sub(&alg.normal_form(&QCoeff::from_terms([(2i64, 1i64), (-2, -1)]), &[(1, 2), (2, 1)]).unwrap())
            .unwrap();
        assert_eq!(got, want);
        let got = alg.normal_form(&QCoeff::one(), &[(2, 1), (1, 2)]).unwrap();
        assert_eq!(got, alg.normal_form(&QCoeff::one(), &[(1, 2), (2, 1)]).unwrap());
        assert!(alg.normal_form(&QCoeff::one(), &[(3, 1)]).is_err());
    }

    #[test]
    fn quasi_exponents() {
        let alg = MatAlgebra::new(Shape::new(2, 2));
        assert_eq!(alg.quasi_exponent(&x(&alg, 2, 1), &x(&alg, 2, 2)), Ok(1));
        assert_eq!(alg.quasi_exponent(&x(&alg, 1, 1), &x(&alg, 2, 2)), Err(Error::NotQuasiCommuting));
    }

    #[test]
    fn division() {
        let alg = MatAlgebra::new(Shape::new(2, 2));
        let (a, b) = (x(&alg, 1, 1), x(&alg, 1, 2));
        assert_eq!(alg.divide_right(&a, &a).unwrap(), alg.one());
        assert!(matches!(alg.divide_right(&a, &b), Err(Error::NotDivisible(_))));
        let d = x(&alg, 2, 2);
        let p = alg.mul(&b, &d).unwrap().add(&a).unwrap();
        let pd = alg.mul(&p, &d).unwrap();
        assert_eq!(alg.divide_right(&pd, &d).unwrap(), p);
        let dp = alg.mul(&d, &p).unwrap();
        assert_eq!(alg.divide_left(&dp, &d).unwrap(), p);
    }
}
