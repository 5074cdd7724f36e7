//! JSON wire forms. Rationals travel as `"p/q"` strings (integers as `"p"`),
//! every object's keys are emitted in sorted order, and credal sets are
//! written through their canonical extreme points, so output is byte-stable.

use serde::{Deserialize, Serialize};

use crate::bridge::OplaxReport;
use crate::credal::{CredalSet, KlMorphism};
use crate::error::{Error, Result};
use crate::finstoch::{FinSetObj, ProbVector, StochMatrix};
use crate::imp::{Grade, GradedMorphism, Site};
use crate::scalar::Scalar;

// Fields are declared in alphabetical order: serde emits them as declared.

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixWire {
    pub cod: usize,
    pub dom: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiteWire {
    pub arity: usize,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedWire {
    pub cod: usize,
    pub dom: usize,
    pub grade: Vec<SiteWire>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CredalWire {
    pub dim: usize,
    pub extremes: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlWire {
    pub cod: usize,
    pub dom: usize,
    pub images: Vec<CredalWire>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OplaxWire {
    pub lhs: KlWire,
    pub pointwise_subset: Vec<bool>,
    pub rhs: KlWire,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorWire {
    pub error: ErrorBody,
}

fn row<S: Scalar>(values: &[S]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn parse_row<S: Scalar>(values: &[String]) -> Result<Vec<S>> {
    values
        .iter()
        .map(|v| S::parse(v).ok_or_else(|| Error::Malformed(format!("`{v}` is not a rational"))))
        .collect()
}

impl<S: Scalar> From<&StochMatrix<S>> for MatrixWire {
    fn from(m: &StochMatrix<S>) -> Self {
        Self {
            cod: m.rows(),
            dom: m.cols(),
            entries: m.row_vecs().iter().map(|r| row(r)).collect(),
        }
    }
}

impl<S: Scalar> TryFrom<&MatrixWire> for StochMatrix<S> {
    type Error = Error;

    fn try_from(w: &MatrixWire) -> Result<Self> {
        let rows = w.entries.iter().map(|r| parse_row(r)).collect::<Result<Vec<_>>>()?;
        StochMatrix::new(FinSetObj::new(w.dom)?, FinSetObj::new(w.cod)?, rows)
    }
}

impl<S: Scalar> From<&GradedMorphism<S>> for GradedWire {
    fn from(f: &GradedMorphism<S>) -> Self {
        Self {
            cod: f.cod().size(),
            dom: f.dom().size(),
            grade: f
                .grade()
                .sites()
                .iter()
                .map(|s| SiteWire {
                    arity: s.arity,
                    name: s.name.clone(),
                })
                .collect(),
            matrix: f.matrix().row_vecs().iter().map(|r| row(r)).collect(),
        }
    }
}

impl<S: Scalar> TryFrom<&GradedWire> for GradedMorphism<S> {
    type Error = Error;

    fn try_from(w: &GradedWire) -> Result<Self> {
        let grade = Grade::from_sites(
            w.grade
                .iter()
                .map(|s| Site::new(s.name.clone(), s.arity))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let dom = FinSetObj::new(w.dom)?;
        let rows = w.matrix.iter().map(|r| parse_row(r)).collect::<Result<Vec<_>>>()?;
        let matrix = StochMatrix::new(grade.carrier_obj().product(&dom), FinSetObj::new(w.cod)?, rows)?;
        GradedMorphism::new(grade, dom, FinSetObj::new(w.cod)?, matrix)
    }
}

impl<S: Scalar> From<&CredalSet<S>> for CredalWire {
    fn from(c: &CredalSet<S>) -> Self {
        Self {
            dim: c.dim(),
            extremes: c.extremes().iter().map(|e| row(e.entries())).collect(),
        }
    }
}

impl<S: Scalar> TryFrom<&CredalWire> for CredalSet<S> {
    type Error = Error;

    fn try_from(w: &CredalWire) -> Result<Self> {
        let gens = w
            .extremes
            .iter()
            .map(|e| ProbVector::new(parse_row(e)?))
            .collect::<Result<Vec<_>>>()?;
        let set = CredalSet::new(gens)?;
        if set.dim() != w.dim {
            return Err(Error::Dimension(format!("declared dimension {} but points in {}", w.dim, set.dim())));
        }
        Ok(set)
    }
}

impl<S: Scalar> From<&KlMorphism<S>> for KlWire {
    fn from(k: &KlMorphism<S>) -> Self {
        Self {
            cod: k.cod().size(),
            dom: k.dom().size(),
            images: k.images().iter().map(CredalWire::from).collect(),
        }
    }
}

impl<S: Scalar> From<&OplaxReport<S>> for OplaxWire {
    fn from(r: &OplaxReport<S>) -> Self {
        Self {
            lhs: KlWire::from(&r.lhs),
            pointwise_subset: r.pointwise_subset.clone(),
            rhs: KlWire::from(&r.rhs),
            strict: r.strict,
        }
    }
}

impl From<&Error> for ErrorWire {
    fn from(e: &Error) -> Self {
        Self {
            error: ErrorBody {
                kind: e.kind().to_string(),
                message: e.to_string(),
            },
        }
    }
}

/// Pretty-printed JSON.
pub fn to_string<W: Serialize>(wire: &W) -> String {
    serde_json::to_string_pretty(wire).expect("wire types serialize")
}
