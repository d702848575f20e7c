//! Tropical linear spaces of valuated matroids, the projection `π_ι` of
//! seminorm classes onto them, and the piecewise-linear section `J`.

mod bergman;
mod reconstruct;
mod universal;

pub use bergman::{bergman_contains, BergmanMembership, BergmanWitness};
pub use reconstruct::{
    reconstruct_seminorm, tabulate, CompatibleFamilyOracle, ReconstructOptions, Reconstruction, SeminormOracle, TableOracle,
};
pub use universal::{check_small_circuits, is_closed, SmallCircuitViolation};

use crate::building::DiagSeminorm;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Mat};
use crate::matroid::{k_subsets, Subset, ValuatedMatroid};
use crate::trop::{min_attained_twice, TropPoint, TropVal};

/// A linear embedding `ι = [f_0 : … : f_n]` of `ℙ^r` into `ℙ^n`, given by
/// `n+1` nonzero spanning covectors (the columns of `f`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    f: Mat,
    matroid: ValuatedMatroid,
}

impl Embedding {
    pub fn new(f: Mat) -> Result<Self> {
        let matroid = ValuatedMatroid::from_matrix(&f)?;
        Ok(Embedding { f, matroid })
    }

    /// The identity embedding `[e_0* : … : e_r*]`.
    pub fn identity(spec: FieldSpec, dim: usize) -> Self {
        Self::new(Mat::identity(spec, dim)).expect("identity spans")
    }

    pub fn matrix(&self) -> &Mat {
        &self.f
    }

    pub fn matroid(&self) -> &ValuatedMatroid {
        &self.matroid
    }

    pub fn spec(&self) -> FieldSpec {
        self.f.spec()
    }

    /// Number of covectors `n+1`.
    pub fn len(&self) -> usize {
        self.f.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.f.cols() == 0
    }

    /// Dimension `r+1` of the source space.
    pub fn dim(&self) -> usize {
        self.f.rows()
    }
}

/// A circuit `τ` of size `rank+1` whose expression `min_{e∈τ} v(τ∖e) + u_e`
/// attains its minimum only once, or `None` if `u ∈ L(v)`.
pub fn tls_violation(v: &ValuatedMatroid, u: &TropPoint) -> Result<Option<Subset>> {
    if u.len() != v.ground() {
        return Err(Error::Dimension { expected: v.ground(), found: u.len() });
    }
    let mut terms = Vec::with_capacity(v.rank() + 1);
    for tau in k_subsets(v.ground(), v.rank() + 1) {
        terms.clear();
        terms.extend(tau.iter().map(|e| &v.value(tau.without(e)) + u.get(e)));
        if !min_attained_twice(&terms)? {
            return Ok(Some(tau));
        }
    }
    Ok(None)
}

/// Membership in the tropical linear space `L(v)`.
pub fn tls_contains(v: &ValuatedMatroid, u: &TropPoint) -> Result<bool> {
    Ok(tls_violation(v, u)?.is_none())
}

/// `π_ι(x) = [−log‖f_0‖_x : … : −log‖f_n‖_x]`.
pub fn project_pi(iota: &Embedding, x: &DiagSeminorm) -> Result<TropPoint> {
    if x.spec() != iota.spec() {
        return Err(Error::FieldMismatch(x.spec().to_string()));
    }
    if x.dim() != iota.dim() {
        return Err(Error::Dimension { expected: iota.dim(), found: x.dim() });
    }
    let eval = x.evaluator();
    let raw = iota.f.columns().iter().map(|f| eval.evaluate(f)).collect::<Result<Vec<_>>>()?;
    TropPoint::normalize(raw)
}

/// `J_B(u)`: the seminorm diagonalized by the columns `B` of `ι` with
/// coordinates `u·e_B`.
pub fn section_at(iota: &Embedding, basis: Subset, u: &TropPoint) -> Result<DiagSeminorm> {
    if u.len() != iota.len() {
        return Err(Error::Dimension { expected: iota.len(), found: u.len() });
    }
    if !iota.matroid.value(basis).is_finite() {
        return Err(Error::NotABasis(basis.to_vec()));
    }
    let idx = basis.to_vec();
    let coords: Vec<TropVal> = idx.iter().map(|&i| u.get(i).clone()).collect();
    DiagSeminorm::new(iota.f.select_columns(&idx), coords)
}

/// A section value together with the basis chart it was computed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub basis: Subset,
    pub seminorm: DiagSeminorm,
}

/// The section `J(u)` for `u ∈ L(v)`.
///
/// For finite `u` the charts are the bases of the initial matroid `M_u`;
/// on the boundary every basis with a finite coordinate of `u` is a
/// candidate. The lexicographically first chart whose round trip
/// `π_ι ∘ J_B` returns `u` is used.
pub fn section_j(iota: &Embedding, u: &TropPoint) -> Result<Section> {
    if let Some(tau) = tls_violation(&iota.matroid, u)? {
        return Err(Error::NotMember { tau: tau.to_vec() });
    }
    let candidates: Vec<Subset> = if u.is_finite() {
        iota.matroid.initial_matroid(u)?.bases().iter().copied().collect()
    } else {
        iota.matroid.bases().filter(|b| b.iter().any(|i| u.get(i).is_finite())).collect()
    };
    for basis in candidates {
        let seminorm = section_at(iota, basis, u)?;
        if project_pi(iota, &seminorm)? == *u {
            return Ok(Section { basis, seminorm });
        }
    }
    Err(Error::NoSection)
}

/// Membership in the local tropical linear space `Trop_B`.
///
/// Finite points need `B ∈ M_u` and `u ∈ L(v)`; boundary points are members
/// when the chart `J_B` is inverted by `π_ι` at `u`.
pub fn local_tls_contains(iota: &Embedding, basis: Subset, u: &TropPoint) -> Result<bool> {
    if !iota.matroid.value(basis).is_finite() {
        return Err(Error::NotABasis(basis.to_vec()));
    }
    if u.is_finite() {
        Ok(iota.matroid.initial_matroid(u)?.is_basis(basis) && tls_contains(&iota.matroid, u)?)
    } else {
        match section_at(iota, basis, u) {
            Ok(x) => Ok(project_pi(iota, &x)? == *u),
            Err(Error::AllInfinite) => Ok(false),
            Err(e) => Err(e),
        }
    }
}
