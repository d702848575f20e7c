//! Recovering a seminorm from the tropicalizations of all its embeddings.
//!
//! For a reference covector `g` with finite value and a query `f`, embed
//! `[g : f : …]`; the class `y = π(x)` then gives `−log‖f‖ − (−log‖g‖)` as
//! `y_f − y_g`, independently of the representative.

use crate::building::DiagSeminorm;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec, Mat};
use crate::trop::{TropPoint, TropVal};

use super::{project_pi, Embedding};

/// A compatible family of tropical points, one for every embedding.
pub trait CompatibleFamilyOracle {
    fn tropicalize(&self, embedding: &Mat) -> Result<TropPoint>;
}

impl<F> CompatibleFamilyOracle for F
where
    F: Fn(&Mat) -> Result<TropPoint>,
{
    fn tropicalize(&self, embedding: &Mat) -> Result<TropPoint> {
        self(embedding)
    }
}

/// The family `ι ↦ π_ι(x)` of a hidden seminorm.
pub struct SeminormOracle {
    hidden: DiagSeminorm,
}

impl SeminormOracle {
    pub fn new(hidden: DiagSeminorm) -> Self {
        SeminormOracle { hidden }
    }
}

impl CompatibleFamilyOracle for SeminormOracle {
    fn tropicalize(&self, embedding: &Mat) -> Result<TropPoint> {
        project_pi(&Embedding::new(embedding.clone())?, &self.hidden)
    }
}

/// A finite lookup table of embeddings and their points.
#[derive(Clone, Debug, Default)]
pub struct TableOracle {
    entries: Vec<(Mat, TropPoint)>,
}

impl TableOracle {
    pub fn new(entries: Vec<(Mat, TropPoint)>) -> Self {
        TableOracle { entries }
    }

    pub fn entries(&self) -> &[(Mat, TropPoint)] {
        &self.entries
    }

}

impl CompatibleFamilyOracle for TableOracle {
    fn tropicalize(&self, embedding: &Mat) -> Result<TropPoint> {
        self.entries
            .iter()
            .find(|(m, _)| m == embedding)
            .map(|(_, y)| y.clone())
            .ok_or_else(|| Error::OracleIncomplete(format!("{embedding:?}")))
    }
}

struct Recorder<'a> {
    inner: &'a dyn CompatibleFamilyOracle,
    log: std::cell::RefCell<Vec<(Mat, TropPoint)>>,
}

impl CompatibleFamilyOracle for Recorder<'_> {
    fn tropicalize(&self, embedding: &Mat) -> Result<TropPoint> {
        let y = self.inner.tropicalize(embedding)?;
        self.log.borrow_mut().push((embedding.clone(), y.clone()));
        Ok(y)
    }
}

/// Builds a table oracle from the embeddings `reconstruct_seminorm` will ask
/// for, answered by `inner`.
pub fn tabulate(
    inner: &dyn CompatibleFamilyOracle,
    spec: FieldSpec,
    dim: usize,
    queries: &[Vec<Elem>],
    opts: &ReconstructOptions,
) -> Result<TableOracle> {
    let rec = Recorder { inner, log: std::cell::RefCell::new(Vec::new()) };
    reconstruct_seminorm(&rec, spec, dim, queries, opts)?;
    Ok(TableOracle::new(rec.log.into_inner()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructOptions {
    /// Number of distinct embeddings each value is derived from.
    pub checks: usize,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        ReconstructOptions { checks: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    /// Index `i` of the reference covector `g = e_i*`.
    pub reference: usize,
    /// `−log‖f‖ + log‖g‖` for each query.
    pub values: Vec<TropVal>,
    /// Total number of embeddings consulted.
    pub embeddings: usize,
}

/// Reads off the seminorm on `queries` from a compatible family.
pub fn reconstruct_seminorm(
    oracle: &dyn CompatibleFamilyOracle,
    spec: FieldSpec,
    dim: usize,
    queries: &[Vec<Elem>],
    opts: &ReconstructOptions,
) -> Result<Reconstruction> {
    if dim == 0 {
        return Err(Error::EmptyInput("dimension"));
    }
    let id = Mat::identity(spec, dim);
    let probe = ask(oracle, &id)?;
    let reference = (0..dim)
        .find(|&i| probe.get(i).is_finite())
        .ok_or_else(|| Error::NoReference("identity embedding is all infinite".into()))?;
    let g = id.column(reference);
    let mut embeddings = 1;
    let mut values = Vec::with_capacity(queries.len());
    for (q, f) in queries.iter().enumerate() {
        if f.len() != dim {
            return Err(Error::Dimension { expected: dim, found: f.len() });
        }
        if f.iter().all(Elem::is_zero) {
            values.push(TropVal::Inf);
            continue;
        }
        let mut first: Option<(Mat, TropVal)> = None;
        for k in 0..opts.checks.max(1) {
            let (m, pos_g, pos_f) = variant(spec, &g, f, k)?;
            let y = ask(oracle, &m)?;
            embeddings += 1;
            let yg = y.get(pos_g);
            let Some(yg) = yg.finite() else {
                return Err(Error::NoReference(format!("reference covector is infinite in {m:?}")));
            };
            let value = y.get(pos_f) - yg;
            match &first {
                None => first = Some((m, value)),
                Some((m0, v0)) if *v0 != value => {
                    return Err(Error::OracleInconsistent {
                        query: q,
                        first: Box::new(m0.clone()),
                        first_value: v0.clone(),
                        second: Box::new(m),
                        second_value: value,
                    });
                }
                Some(_) => {}
            }
        }
        values.push(first.expect("at least one check").1);
    }
    Ok(Reconstruction { reference, values, embeddings })
}

fn ask(oracle: &dyn CompatibleFamilyOracle, m: &Mat) -> Result<TropPoint> {
    let y = oracle.tropicalize(m)?;
    if y.len() != m.cols() {
        return Err(Error::OracleLength { expected: m.cols(), found: y.len() });
    }
    Ok(y)
}

/// The `k`-th embedding containing `g` and `f`: the two in either order,
/// from the third on also `g + k·f`, then standard covectors appended
/// greedily starting from a rotated index.
fn variant(spec: FieldSpec, g: &[Elem], f: &[Elem], k: usize) -> Result<(Mat, usize, usize)> {
    let dim = g.len();
    let (mut cols, pos_g, pos_f) = if k % 2 == 0 {
        (vec![g.to_vec(), f.to_vec()], 0, 1)
    } else {
        (vec![f.to_vec(), g.to_vec()], 1, 0)
    };
    if k >= 2 {
        let c = Elem::int(k as i64);
        let extra: Vec<Elem> = g.iter().zip(f).map(|(a, b)| a + &(&c * b)).collect();
        if !extra.iter().all(Elem::is_zero) {
            cols.push(extra);
        }
    }
    let mut rank = Mat::from_columns(spec, dim, cols.clone())?.rank();
    for j in 0..dim {
        if rank == dim {
            break;
        }
        let e = Mat::identity(spec, dim).column((j + k) % dim);
        cols.push(e);
        let r = Mat::from_columns(spec, dim, cols.clone())?.rank();
        if r > rank {
            rank = r;
        } else {
            cols.pop();
        }
    }
    Ok((Mat::from_columns(spec, dim, cols)?, pos_g, pos_f))
}
