//! Lattices over the valuation ring of a discretely valued field, up to
//! homothety.
//!
//! A class is stored by a canonical column basis: lower triangular, pivots
//! pure powers `π^{a_i}` with `min a_i = 0`, and every entry below a pivot
//! reduced to a fixed representative modulo that pivot's power.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::building::DiagSeminorm;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldKind, FieldSpec, Mat, Poly, RatFunc};
use crate::linspace::{project_pi, section_j, Embedding};
use crate::matroid::Subset;
use crate::trop::{TropPoint, TropVal};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeClass {
    basis: Mat,
}

impl std::fmt::Debug for LatticeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LatticeClass{:?}", self.basis)
    }
}

fn require_discrete(spec: FieldSpec) -> Result<()> {
    if spec.is_discrete() {
        Ok(())
    } else {
        Err(Error::WrongField { required: "discretely valued", found: spec.to_string() })
    }
}

impl LatticeClass {
    /// The class of the lattice spanned over `𝒪` by the columns of `basis`.
    pub fn new(basis: Mat) -> Result<Self> {
        let spec = basis.spec();
        require_discrete(spec)?;
        if basis.rows() != basis.cols() {
            return Err(Error::Dimension { expected: basis.rows(), found: basis.cols() });
        }
        if basis.rank() != basis.cols() {
            return Err(Error::Singular);
        }
        let dim = basis.rows();
        let cols = hermite(spec, basis.columns());
        let shift = (0..dim).map(|i| spec.ord(&cols[i][i]).expect("pivot")).min().unwrap_or(0);
        let cols = if shift == 0 {
            cols
        } else {
            let s = spec.uniformizer_pow(-shift).expect("discrete");
            hermite(spec, cols.iter().map(|c| scale(c, &s)).collect())
        };
        Ok(LatticeClass { basis: Mat::from_columns(spec, dim, cols)? })
    }

    /// `𝒪^{r+1}`.
    pub fn standard(spec: FieldSpec, dim: usize) -> Result<Self> {
        Self::new(Mat::identity(spec, dim))
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn spec(&self) -> FieldSpec {
        self.basis.spec()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Valuations `a_i` of the diagonal pivots.
    pub fn pivots(&self) -> Vec<i64> {
        (0..self.dim()).map(|i| self.spec().ord(self.basis.get(i, i)).expect("pivot")).collect()
    }
}

fn scale(col: &[Elem], c: &Elem) -> Vec<Elem> {
    col.iter().map(|x| c * x).collect()
}

fn axpy(col: &mut [Elem], c: &Elem, other: &[Elem]) {
    for (x, y) in col.iter_mut().zip(other) {
        if !y.is_zero() {
            *x = &*x - &(c * y);
        }
    }
}

/// Column Hermite form over the valuation ring.
fn hermite(spec: FieldSpec, mut cols: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    let n = cols.len();
    let mut pivots = Vec::with_capacity(n);
    for i in 0..n {
        let j = (i..n)
            .filter(|&j| !cols[j][i].is_zero())
            .min_by_key(|&j| spec.ord(&cols[j][i]).expect("nonzero"))
            .expect("columns are independent");
        cols.swap(i, j);
        let a = spec.ord(&cols[i][i]).expect("nonzero");
        let pa = spec.uniformizer_pow(a).expect("discrete");
        let unit = &pa / &cols[i][i];
        cols[i] = scale(&cols[i], &unit);
        for j in i + 1..n {
            if !cols[j][i].is_zero() {
                let c = &cols[j][i] / &pa;
                let pivot = cols[i].clone();
                axpy(&mut cols[j], &c, &pivot);
            }
        }
        pivots.push((a, pa));
    }
    for j in 0..n {
        for i in j + 1..n {
            let (a, pa) = &pivots[i];
            let x = &cols[j][i];
            let rep = residue_rep(spec, x, *a);
            if rep != *x {
                let c = &(x - &rep) / pa;
                let pivot = cols[i].clone();
                axpy(&mut cols[j], &c, &pivot);
            }
        }
    }
    cols
}

/// The fixed representative of `x + π^a 𝒪`: zero when `val x ≥ a`, else
/// `p^s·m` with `0 ≤ m < p^{a−s}`, or the Laurent expansion of `x`
/// truncated below `t^a`.
fn residue_rep(spec: FieldSpec, x: &Elem, a: i64) -> Elem {
    let Some(s) = spec.ord(x) else { return Elem::zero() };
    if s >= a {
        return Elem::zero();
    }
    let k = (a - s) as u32;
    match (spec.kind(), x) {
        (FieldKind::PAdic(p), Elem::Rat(q)) => {
            let p = BigInt::from(p);
            let ps = if s >= 0 {
                BigRational::from_integer(p.pow(s as u32))
            } else {
                BigRational::new(BigInt::one(), p.pow((-s) as u32))
            };
            let unit = q / &ps;
            let modulus = p.pow(k);
            let inv = mod_inverse(&unit.denom().mod_floor(&modulus), &modulus);
            let m = (unit.numer() * inv).mod_floor(&modulus);
            Elem::Rat(ps * BigRational::from_integer(m))
        }
        (FieldKind::TAdic, _) => {
            let f = match x {
                Elem::Rat(q) => RatFunc::constant(q.clone()),
                Elem::Func(f) => f.clone(),
            };
            let n = f.num().shift_down(f.num().ord_t().expect("nonzero"));
            let d = f.den().shift_down(f.den().ord_t().expect("nonzero"));
            let series = Poly::new(n.series_div(&d, k as usize));
            Elem::from_func(RatFunc::poly(series).mul(&RatFunc::t_power(s)))
        }
        _ => unreachable!("discrete backends only"),
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// The gauge of `L`: diagonalized by `L`'s basis with all coordinates 0.
pub fn gauge(l: &LatticeClass) -> Result<DiagSeminorm> {
    DiagSeminorm::new(l.basis.clone(), vec![TropVal::zero(); l.dim()])
}

/// Integer value of a finite coordinate.
fn integral(u: &TropVal) -> Result<i64> {
    match u {
        TropVal::Fin(q) if q.is_integer() => q.to_integer().try_into().map_err(|_| Error::NonIntegral(u.clone())),
        TropVal::Fin(_) => Err(Error::NonIntegral(u.clone())),
        TropVal::Inf => Err(Error::ProperSeminorm),
    }
}

/// The unit ball `{f : −log‖f‖ ≥ 0} = ⊕ π^{−u_b} 𝒪·b` of an integer-valued
/// norm.
pub fn unit_ball(x: &DiagSeminorm) -> Result<LatticeClass> {
    let spec = x.spec();
    require_discrete(spec)?;
    if !x.is_norm() {
        return Err(Error::ProperSeminorm);
    }
    let exps = x.coords().coords().iter().map(integral).collect::<Result<Vec<_>>>()?;
    let cols = x
        .basis()
        .columns()
        .iter()
        .zip(&exps)
        .map(|(b, &e)| scale(b, &spec.uniformizer_pow(-e).expect("discrete")))
        .collect();
    LatticeClass::new(Mat::from_columns(spec, x.dim(), cols)?)
}

/// Whether the lattice spanned by `inner` lies in the one spanned by
/// `outer`.
pub fn lattice_contains(outer: &Mat, inner: &Mat) -> Result<bool> {
    let coeffs = outer.inverse()?.mul(inner)?;
    Ok(coeffs.min_valuation() >= TropVal::zero())
}

/// The simplex containing a norm: the distinct balls
/// `Λ(τ) = {f : −log‖f‖ ≥ −τ}` for `τ ∈ (0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpChain {
    /// `Λ_0 ⊆ Λ_1 ⊆ … ⊆ Λ_k ⊆ π^{−1}Λ_0`, as actual bases.
    pub representatives: Vec<Mat>,
    pub lattices: Vec<LatticeClass>,
    /// `log c_i ∈ (0, 1)`, increasing; `Λ_i` starts at `log c_i`.
    pub jumps: Vec<BigRational>,
}

pub fn jump_chain(x: &DiagSeminorm) -> Result<JumpChain> {
    let spec = x.spec();
    require_discrete(spec)?;
    let coords = x.coords().finite_coords().ok_or(Error::ProperSeminorm)?;
    let mut jumps: Vec<BigRational> = coords
        .iter()
        .map(|u| BigRational::one() - (u - u.floor()))
        .filter(|t| !t.is_one())
        .collect();
    jumps.sort();
    jumps.dedup();
    let first = jumps.first().cloned().unwrap_or_else(BigRational::one) / BigRational::from_integer(2.into());
    let taus = std::iter::once(first).chain(jumps.iter().cloned());
    let mut representatives = Vec::new();
    let mut lattices = Vec::new();
    for tau in taus {
        let cols = x
            .basis()
            .columns()
            .iter()
            .zip(&coords)
            .map(|(b, u)| {
                let e: i64 = (&tau + u).floor().to_integer().try_into().expect("small exponent");
                scale(b, &spec.uniformizer_pow(-e).expect("discrete"))
            })
            .collect();
        let m = Mat::from_columns(spec, x.dim(), cols)?;
        lattices.push(LatticeClass::new(m.clone())?);
        representatives.push(m);
    }
    Ok(JumpChain { representatives, lattices, jumps })
}

/// Elementary-divisor valuations of a nonsingular matrix, by Smith
/// reduction with minimal-valuation pivots.
pub fn elementary_divisors(m: &Mat) -> Result<Vec<i64>> {
    let spec = m.spec();
    require_discrete(spec)?;
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::Dimension { expected: n, found: m.cols() });
    }
    let mut a: Vec<Vec<Elem>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (pi, pj) = (k..n)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| spec.ord(&a[i][j]).expect("nonzero"))
            .ok_or(Error::Singular)?;
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let piv = a[k][k].clone();
        for i in k + 1..n {
            if !a[i][k].is_zero() {
                let c = &a[i][k] / &piv;
                let rk = a[k].clone();
                axpy(&mut a[i], &c, &rk);
            }
        }
        for j in k + 1..n {
            a[k][j] = Elem::zero();
        }
        out.push(spec.ord(&piv).expect("nonzero"));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjacency {
    Equal,
    Adjacent,
    NotAdjacent,
}

/// Relative position of two classes, with the shifted elementary divisors
/// of `L2` in `L1`, largest first.
pub fn adjacency(l1: &LatticeClass, l2: &LatticeClass) -> Result<(Adjacency, Vec<i64>)> {
    if l1.spec() != l2.spec() {
        return Err(Error::FieldMismatch(l2.spec().to_string()));
    }
    if l1.dim() != l2.dim() {
        return Err(Error::Dimension { expected: l1.dim(), found: l2.dim() });
    }
    let rel = l1.basis.inverse()?.mul(&l2.basis)?;
    let mut d = elementary_divisors(&rel)?;
    let lo = *d.iter().min().expect("nonempty");
    for x in d.iter_mut() {
        *x -= lo;
    }
    d.sort_unstable_by(|a, b| b.cmp(a));
    let kind = if d.iter().all(|&x| x == 0) {
        Adjacency::Equal
    } else if d.iter().all(|&x| x <= 1) {
        Adjacency::Adjacent
    } else {
        Adjacency::NotAdjacent
    };
    Ok((kind, d))
}

pub fn adjacent(l1: &LatticeClass, l2: &LatticeClass) -> Result<bool> {
    Ok(adjacency(l1, l2)?.0 == Adjacency::Adjacent)
}

/// The `p+1` neighbours of a vertex of the tree of `PGL_2(ℚ_p)`: the
/// lattices `L'` with `πL ⊊ L' ⊊ L`, one per line of `L/πL ≅ 𝔽_p²`.
pub fn tree_neighbors(l: &LatticeClass) -> Result<Vec<LatticeClass>> {
    let spec = l.spec();
    let FieldKind::PAdic(p) = spec.kind() else {
        return Err(Error::WrongField { required: "p-adic", found: spec.to_string() });
    };
    if l.dim() != 2 {
        return Err(Error::Dimension { expected: 2, found: l.dim() });
    }
    let pi = spec.uniformizer().expect("discrete");
    let g0 = l.basis.column(0);
    let g1 = l.basis.column(1);
    let mut out = Vec::with_capacity(p as usize + 1);
    for a in 0..p {
        let a = Elem::int(a as i64);
        let v: Vec<Elem> = g0.iter().zip(&g1).map(|(x, y)| x + &(&a * y)).collect();
        out.push(LatticeClass::new(Mat::from_columns(spec, 2, vec![v, scale(&g1, &pi)])?)?);
    }
    out.push(LatticeClass::new(Mat::from_columns(spec, 2, vec![g1.clone(), scale(&g0, &pi)])?)?);
    Ok(out)
}

/// A breadth-first ball in the tree, as an adjacency list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeBall {
    pub nodes: Vec<LatticeClass>,
    pub depth: Vec<usize>,
    /// Pairs `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl TreeBall {
    /// A connected graph is a tree exactly when it has one edge fewer than
    /// vertices.
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.nodes.len()
    }

    pub fn count_at_depth(&self, d: usize) -> usize {
        self.depth.iter().filter(|&&x| x == d).count()
    }
}

pub fn tree_ball(center: &LatticeClass, radius: usize) -> Result<TreeBall> {
    let mut nodes = vec![center.clone()];
    let mut depth = vec![0];
    let mut index = std::collections::HashMap::new();
    index.insert(center.clone(), 0usize);
    let mut edges = std::collections::BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if depth[i] == radius {
            continue;
        }
        for nb in tree_neighbors(&nodes[i].clone())? {
            let j = match index.get(&nb) {
                Some(&j) => j,
                None => {
                    let j = nodes.len();
                    index.insert(nb.clone(), j);
                    nodes.push(nb);
                    depth.push(depth[i] + 1);
                    queue.push_back(j);
                    j
                }
            };
            edges.insert((i.min(j), i.max(j)));
        }
    }
    Ok(TreeBall { nodes, depth, edges: edges.into_iter().collect() })
}

/// Result of [`membrane_roundtrip`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membrane {
    /// The basis chart of the section.
    pub chart: Subset,
    /// `π^{−u_b} f_b` for `b` in the chart.
    pub membrane_basis: Mat,
    pub lattice: LatticeClass,
    /// `π_ι` of the gauge of the lattice.
    pub back: TropPoint,
}

/// Integer point of `L(v)` → lattice → integer point.
pub fn membrane_roundtrip(iota: &Embedding, u: &TropPoint) -> Result<Membrane> {
    let spec = iota.spec();
    require_discrete(spec)?;
    for c in u.coords() {
        if let TropVal::Fin(q) = c {
            if !q.is_integer() {
                return Err(Error::NonIntegral(c.clone()));
            }
        }
    }
    if !u.is_finite() {
        return Err(Error::InfiniteCoordinate);
    }
    let section = section_j(iota, u)?;
    let lattice = unit_ball(&section.seminorm)?;
    let cols = section
        .basis
        .iter()
        .map(|b| {
            let e = integral(u.get(b))?;
            Ok(scale(&iota.matrix().column(b), &spec.uniformizer_pow(-e).expect("discrete")))
        })
        .collect::<Result<Vec<_>>>()?;
    let membrane_basis = Mat::from_columns(spec, iota.dim(), cols)?;
    let back = project_pi(iota, &gauge(&lattice)?)?;
    Ok(Membrane { chart: section.basis, membrane_basis, lattice, back })
}
