//! Flags with jumps over a trivially valued field.
//!
//! A norm class is determined by its balls around 0, which are subspaces:
//! a flag `0 ⊊ V_1 ⊊ … ⊊ V_l = (K^{r+1})*` with `−log‖f‖ = c_j` on
//! `V_j ∖ V_{j−1}`, `c_1 > … > c_{l−1} > c_l = 0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Mat};
use crate::linspace::Embedding;
use crate::trop::{TropPoint, TropVal};

use super::DiagSeminorm;

#[derive(Clone)]
pub struct Flag {
    spec: FieldSpec,
    /// Generator matrices of `V_1, …, V_l`.
    subspaces: Vec<Mat>,
    /// `c_1, …, c_{l−1}`.
    jumps: Vec<TropVal>,
}

impl Flag {
    /// `subspaces` lists `V_1, …, V_{l−1}` and optionally the whole space
    /// `V_l`; it is added when `jumps` has one entry per given subspace.
    pub fn new(spec: FieldSpec, dim: usize, mut subspaces: Vec<Mat>, jumps: Vec<TropVal>) -> Result<Self> {
        if subspaces.len() == jumps.len() {
            subspaces.push(Mat::identity(spec, dim));
        }
        if subspaces.len() != jumps.len() + 1 {
            return Err(Error::InvalidFlag(format!(
                "{} subspaces need {} jumps, got {}",
                subspaces.len(),
                subspaces.len().saturating_sub(1),
                jumps.len()
            )));
        }
        let mut prev: Option<&Mat> = None;
        for v in &subspaces {
            if v.spec() != spec {
                return Err(Error::FieldMismatch(v.spec().to_string()));
            }
            if v.rows() != dim {
                return Err(Error::Dimension { expected: dim, found: v.rows() });
            }
            let rank = v.rank();
            if let Some(p) = prev {
                let prank = p.rank();
                if p.hcat(v)?.rank() != rank {
                    return Err(Error::InvalidFlag("subspaces are not nested".into()));
                }
                if rank == prank {
                    return Err(Error::InvalidFlag("inclusions must be strict".into()));
                }
            } else if rank == 0 {
                return Err(Error::InvalidFlag("V_1 must be nonzero".into()));
            }
            prev = Some(v);
        }
        if subspaces.last().expect("nonempty").rank() != dim {
            return Err(Error::InvalidFlag("the last subspace must be the whole space".into()));
        }
        for (i, c) in jumps.iter().enumerate() {
            if *c <= TropVal::zero() {
                return Err(Error::InvalidFlag(format!("jump {c} is not positive")));
            }
            if i > 0 && jumps[i - 1] <= *c {
                return Err(Error::InvalidFlag("jumps must strictly decrease".into()));
            }
        }
        Ok(Flag { spec, subspaces, jumps })
    }

    /// The trivial flag `0 ⊊ (K^{r+1})*`.
    pub fn trivial(spec: FieldSpec, dim: usize) -> Self {
        Self::new(spec, dim, vec![], vec![]).expect("trivial flag is valid")
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.subspaces[0].rows()
    }

    pub fn subspaces(&self) -> &[Mat] {
        &self.subspaces
    }

    pub fn jumps(&self) -> &[TropVal] {
        &self.jumps
    }

    /// Number `l` of subspaces, the whole space included.
    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `c_j` for `j = 1..=l`, with `c_l = 0`.
    fn level_value(&self, j: usize) -> TropVal {
        self.jumps.get(j).cloned().unwrap_or_else(TropVal::zero)
    }

    /// Index of the first subspace containing `f`.
    fn level_of(&self, f: &[crate::field::Elem]) -> Result<usize> {
        let col = Mat::from_columns(self.spec, self.dim(), vec![f.to_vec()])?;
        for (j, v) in self.subspaces.iter().enumerate() {
            if v.hcat(&col)?.rank() == v.rank() {
                return Ok(j);
            }
        }
        unreachable!("the last subspace is everything")
    }
}

/// Flags are equal when their subspaces have equal spans and the jumps
/// agree.
impl PartialEq for Flag {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
            && self.jumps == other.jumps
            && self.subspaces.len() == other.subspaces.len()
            && self.subspaces.iter().zip(&other.subspaces).all(|(a, b)| {
                a.rows() == b.rows() && a.rank() == b.rank() && a.hcat(b).map(|m| m.rank() == a.rank()).unwrap_or(false)
            })
    }
}

impl Eq for Flag {}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Flag").field("subspaces", &self.subspaces).field("jumps", &self.jumps).finish()
    }
}

fn require_trivial(spec: FieldSpec) -> Result<()> {
    if spec.is_trivial() {
        Ok(())
    } else {
        Err(Error::WrongField { required: "trivially valued", found: spec.to_string() })
    }
}

/// The norm that is constant `c_j` on `V_j ∖ V_{j−1}`.
///
/// The adapted basis extends greedily through the generators of
/// `V_1, V_2, …`; it is stored from the generic level down, so the
/// canonical coordinates are the jumps themselves.
pub fn flag_to_seminorm(flag: &Flag) -> Result<DiagSeminorm> {
    require_trivial(flag.spec)?;
    let dim = flag.dim();
    let mut chosen: Vec<(usize, Vec<crate::field::Elem>)> = Vec::new();
    let mut rank = 0;
    for (j, v) in flag.subspaces.iter().enumerate() {
        for col in v.columns() {
            let mut cols: Vec<_> = chosen.iter().map(|(_, c)| c.clone()).collect();
            cols.push(col.clone());
            if Mat::from_columns(flag.spec, dim, cols)?.rank() > rank {
                rank += 1;
                chosen.push((j, col));
            }
        }
    }
    chosen.reverse();
    let coords = chosen.iter().map(|(j, _)| flag.level_value(*j)).collect();
    let basis = Mat::from_columns(flag.spec, dim, chosen.into_iter().map(|(_, c)| c).collect())?;
    DiagSeminorm::new(basis, coords)
}

/// The flag of balls of `x`: `V_j` is spanned by the basis covectors whose
/// coordinate is at least the `j`-th largest value.
pub fn seminorm_to_flag(x: &DiagSeminorm) -> Result<Flag> {
    require_trivial(x.spec())?;
    let coords = x.coords().coords();
    let mut levels: Vec<&TropVal> = coords.iter().collect();
    levels.sort();
    levels.dedup();
    levels.reverse();
    let generic = levels.last().expect("nonempty").finite().expect("the least coordinate is finite").clone();
    let mut subspaces = Vec::with_capacity(levels.len());
    let mut jumps = Vec::with_capacity(levels.len() - 1);
    for (j, w) in levels.iter().enumerate() {
        let idx: Vec<usize> = (0..coords.len()).filter(|&i| coords[i] >= **w).collect();
        subspaces.push(x.basis().select_columns(&idx));
        if j + 1 < levels.len() {
            jumps.push(*w - &generic);
        }
    }
    Flag::new(x.spec(), x.dim(), subspaces, jumps)
}

/// `Σ_j (c_j − c_{j+1}) e_{F_j}` with `F_j = {i : f_i ∈ V_j}` and `c_l = 0`.
pub fn trivial_project(iota: &Embedding, flag: &Flag) -> Result<TropPoint> {
    require_trivial(iota.spec())?;
    if iota.spec() != flag.spec {
        return Err(Error::FieldMismatch(flag.spec.to_string()));
    }
    if iota.dim() != flag.dim() {
        return Err(Error::Dimension { expected: iota.dim(), found: flag.dim() });
    }
    let levels = iota.matrix().columns().iter().map(|f| flag.level_of(f)).collect::<Result<Vec<_>>>()?;
    let mut out = vec![TropVal::zero(); iota.len()];
    for j in 0..flag.len() - 1 {
        let step = match (flag.level_value(j), flag.level_value(j + 1)) {
            (TropVal::Fin(a), TropVal::Fin(b)) => TropVal::Fin(a - b),
            _ => TropVal::Inf,
        };
        for (i, &lvl) in levels.iter().enumerate() {
            if lvl <= j {
                out[i] = &out[i] + &step;
            }
        }
    }
    TropPoint::normalize(out)
}
