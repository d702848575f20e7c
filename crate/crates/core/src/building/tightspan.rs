//! Max-plus tight-span charts `Φ_B` of a valuated matroid.
//!
//! The chart is formulated with max; it is applied to `w = −v`, the
//! max-plus dual of a stored (min-plus) valuated matroid. Values of `w` are
//! in `ℚ ∪ {−∞}`, with `None` standing for `−∞`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matroid::{k_subsets, Subset, ValuatedMatroid};
use crate::trop::TropVal;

/// `w = −v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxPlusMatroid {
    v: ValuatedMatroid,
}

impl MaxPlusMatroid {
    pub fn dual_of(v: &ValuatedMatroid) -> Self {
        MaxPlusMatroid { v: v.clone() }
    }

    pub fn ground(&self) -> usize {
        self.v.ground()
    }

    pub fn rank(&self) -> usize {
        self.v.rank()
    }

    pub fn value(&self, s: Subset) -> Option<BigRational> {
        self.v.value(s).finite().map(|x| -x)
    }

    pub fn min_plus(&self) -> &ValuatedMatroid {
        &self.v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightSpanChart {
    /// `Φ_B(u)(e)` for every ground element.
    pub values: Vec<Option<BigRational>>,
    /// Elements where the fixed-point equation fails.
    pub violations: Vec<usize>,
}

/// `Φ_B(u)(e) = max_{i∈B} {w(e ∪ B∖i) + u_i} − w(B)`, with `u` indexed by the
/// elements of `B` in increasing order.
pub fn phi(w: &MaxPlusMatroid, basis: Subset, u: &[BigRational]) -> Result<Vec<Option<BigRational>>> {
    let wb = w.value(basis).ok_or_else(|| Error::NotABasis(basis.to_vec()))?;
    if u.len() != basis.len() {
        return Err(Error::Dimension { expected: basis.len(), found: u.len() });
    }
    let idx = basis.to_vec();
    Ok((0..w.ground())
        .map(|e| {
            idx.iter()
                .zip(u)
                .filter_map(|(&i, ui)| w.value(basis.without(i).with(e)).map(|x| x + ui))
                .max()
                .map(|m| m - &wb)
        })
        .collect())
}

/// The chart at `u` on the hyperplane `Σ u_i = w(B)`, checked against
/// `p(e) = max_{S ∋ e} w(S) − Σ_{s ∈ S∖e} p(s)` over `(r+1)`-sets `S`.
pub fn tight_span_chart(w: &MaxPlusMatroid, basis: Subset, u: &[BigRational]) -> Result<TightSpanChart> {
    let wb = w.value(basis).ok_or_else(|| Error::NotABasis(basis.to_vec()))?;
    let total = u.iter().fold(BigRational::zero(), |a, b| a + b);
    if total != wb {
        return Err(Error::OffHyperplane { expected: TropVal::Fin(wb), found: TropVal::Fin(total) });
    }
    let values = phi(w, basis, u)?;
    let violations = (0..w.ground()).filter(|&e| fixed_point_value(w, &values, e) != values[e]).collect();
    Ok(TightSpanChart { values, violations })
}

fn fixed_point_value(w: &MaxPlusMatroid, p: &[Option<BigRational>], e: usize) -> Option<BigRational> {
    k_subsets(w.ground(), w.rank())
        .into_iter()
        .filter(|s| s.contains(e))
        .filter_map(|s| {
            let mut acc = w.value(s)?;
            for x in s.without(e).iter() {
                acc -= p[x].as_ref()?;
            }
            Some(acc)
        })
        .max()
}
