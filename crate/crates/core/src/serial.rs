//! JSON persistence for seeds and realised clusters.
//!
//! q-coefficients are lists of `[n, c]` pairs meaning `c q^{n/2}`; matrices
//! are row-major; Laurent polynomials are lists of terms in increasing
//! exponent order. Writing a parsed file reproduces it byte for byte.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::qcoeff::QCoeff;
use crate::qmatrix::{LocAlgebra, LocElement, MatElement, Shape};
use crate::seed::Seed;
use crate::torus::{Torus, TorusElement};

pub const FORMAT: &str = "qgca-seed/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term<E> {
    pub exponent: E,
    pub coeff: QCoeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusJson {
    pub names: Vec<String>,
    pub l: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocJson {
    pub denominator: u32,
    pub numerator: Vec<Term<Vec<u16>>>,
}

/// A cluster realised in a concrete algebra, aligned with the seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "algebra", rename_all = "lowercase")]
pub enum RealizationJson {
    /// `K_q[Mat(rows, cols)]`.
    Mat { rows: usize, cols: usize, cluster: Vec<Vec<Term<Vec<u16>>>> },
    /// `K_q[Gr(k,n)]` localised at `[1..k]`, inside `K_q[Mat(k,n)]`.
    Loc { k: usize, n: usize, cluster: Vec<LocJson> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedFile {
    pub format: String,
    pub torus: TorusJson,
    pub vertices: Vec<String>,
    pub labels: Vec<String>,
    pub mutable: Vec<bool>,
    pub b: IntMatrix,
    pub l: IntMatrix,
    pub gradings: BTreeMap<String, Vec<i64>>,
    pub cluster: Vec<Vec<Term<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<RealizationJson>,
}

/// A realisation loaded from a file.
#[derive(Clone, Debug)]
pub enum Realized {
    Mat(std::sync::Arc<crate::qmatrix::MatAlgebra>, Vec<MatElement>),
    Loc(std::sync::Arc<LocAlgebra>, Vec<LocElement>),
}

pub fn torus_element_json(x: &TorusElement) -> Vec<Term<Vec<i64>>> {
    x.terms().iter().map(|(a, c)| Term { exponent: a.clone(), coeff: c.clone() }).collect()
}

pub fn mat_element_json(x: &MatElement) -> Vec<Term<Vec<u16>>> {
    x.terms().iter().map(|(m, c)| Term { exponent: m.clone(), coeff: c.clone() }).collect()
}

fn mat_element_from(shape: Shape, terms: &[Term<Vec<u16>>]) -> Result<MatElement> {
    for t in terms {
        if t.exponent.len() != shape.len() {
            return Err(Error::Parse(format!("monomial of length {} in Mat({},{})", t.exponent.len(), shape.rows, shape.cols)));
        }
    }
    MatElement::from_terms(shape, terms.iter().map(|t| (t.exponent.clone(), t.coeff.clone())))
}

impl SeedFile {
    pub fn from_seed(seed: &Seed, realization: Option<&Realized>) -> SeedFile {
        let realization = realization.map(|r| match r {
            Realized::Mat(alg, xs) => RealizationJson::Mat {
                rows: alg.shape().rows,
                cols: alg.shape().cols,
                cluster: xs.iter().map(mat_element_json).collect(),
            },
            Realized::Loc(alg, xs) => RealizationJson::Loc {
                k: alg.k(),
                n: alg.n(),
                cluster: xs
                    .iter()
                    .map(|x| LocJson { denominator: x.denom_exp, numerator: mat_element_json(&x.numerator) })
                    .collect(),
            },
        });
        SeedFile {
            format: FORMAT.to_string(),
            torus: TorusJson { names: seed.torus().names().to_vec(), l: seed.torus().l().clone() },
            vertices: seed.vertices().to_vec(),
            labels: seed.labels().to_vec(),
            mutable: seed.mutable().to_vec(),
            b: seed.b().clone(),
            l: seed.l().clone(),
            gradings: seed.gradings().clone(),
            cluster: seed.cluster().iter().map(torus_element_json).collect(),
            realization,
        }
    }

    /// Rebuilds the seed, running the constructor's matrix checks.
    pub fn to_seed(&self) -> Result<(Seed, Option<Realized>)> {
        if self.format != FORMAT {
            return Err(Error::Parse(format!("unknown format {:?}", self.format)));
        }
        let torus = Torus::with_names(self.torus.l.clone(), self.torus.names.clone())?;
        let r = torus.rank();
        let cluster = self
            .cluster
            .iter()
            .map(|terms| {
                if let Some(t) = terms.iter().find(|t| t.exponent.len() != r) {
                    return Err(Error::Parse(format!("exponent {:?} does not match torus rank {}", t.exponent, r)));
                }
                TorusElement::from_terms(&torus, terms.iter().map(|t| (t.exponent.clone(), t.coeff.clone())))
            })
            .collect::<Result<Vec<_>>>()?;
        let seed = Seed::new(
            torus,
            cluster,
            self.b.clone(),
            self.l.clone(),
            self.gradings.clone(),
            self.mutable.clone(),
            self.vertices.clone(),
            self.labels.clone(),
        )?;
        let realized = match &self.realization {
            None => None,
            Some(RealizationJson::Mat { rows, cols, cluster }) => {
                let alg = crate::qmatrix::MatAlgebra::new(Shape::new(*rows, *cols));
                let xs = cluster.iter().map(|t| mat_element_from(alg.shape(), t)).collect::<Result<Vec<_>>>()?;
                Some(Realized::Mat(alg, xs))
            }
            Some(RealizationJson::Loc { k, n, cluster }) => {
                let alg = LocAlgebra::new(*k, *n)?;
                let shape = alg.mat().shape();
                let xs = cluster
                    .iter()
                    .map(|x| {
                        Ok(LocElement { numerator: mat_element_from(shape, &x.numerator)?, denom_exp: x.denominator })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(Realized::Loc(alg, xs))
            }
        };
        if let Some(real) = &realized {
            let len = match real {
                Realized::Mat(_, xs) => xs.len(),
                Realized::Loc(_, xs) => xs.len(),
            };
            if len != seed.rank() {
                return Err(Error::LengthMismatch { expected: seed.rank(), got: len });
            }
        }
        Ok((seed, realized))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    pub fn parse(text: &str) -> Result<SeedFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gls;

    #[test]
    fn round_trip() {
        let g = gls::build_seed(2, 3).unwrap();
        let real = Realized::Mat(g.algebra.clone(), g.minors.clone());
        let f = SeedFile::from_seed(&g.seed, Some(&real));
        let text = f.to_json();
        let back = SeedFile::parse(&text).unwrap();
        assert_eq!(back, f);
        let (seed, r) = back.to_seed().unwrap();
        assert_eq!(seed, g.seed);
        match r {
            Some(Realized::Mat(_, xs)) => assert_eq!(xs, g.minors),
            _ => panic!("lost the realisation"),
        }
        assert_eq!(SeedFile::from_seed(&seed, None).realization, None);
        assert_eq!(SeedFile::parse(&SeedFile::from_seed(&seed, None).to_json()).unwrap().to_json(), SeedFile::from_seed(&seed, None).to_json());
    }

    #[test]
    fn coefficients_are_pairs() {
        let g = gls::build_seed(2, 2).unwrap();
        let text = SeedFile::from_seed(&g.seed, Some(&Realized::Mat(g.algebra.clone(), g.minors.clone()))).to_json();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        // the determinant X11 X22 - q X12 X21
        let det = &v["realization"]["cluster"][3];
        assert_eq!(det.as_array().unwrap().len(), 2);
        assert_eq!(det[0]["coeff"], serde_json::json!([[2, -1]]));
        assert_eq!(v["realization"]["algebra"], "mat");
    }

    #[test]
    fn loc_round_trip_and_errors() {
        let ls = crate::lifting::loc_seed(2, 4).unwrap();
        let f = SeedFile::from_seed(&ls.seed, Some(&Realized::Loc(ls.algebra.clone(), ls.realized.clone())));
        let (seed, r) = SeedFile::parse(&f.to_json()).unwrap().to_seed().unwrap();
        assert_eq!(seed, ls.seed);
        assert!(matches!(r, Some(Realized::Loc(_, ref xs)) if *xs == ls.realized));
        let mut bad = f.clone();
        bad.b[0][1] += 1;
        assert!(bad.to_seed().is_err());
        assert!(SeedFile::parse("{}").is_err());
    }
}
