//! Finite pieces of the universal realizable valuated matroid, whose ground
//! set is the whole dual space.
//!
//! On a finite covector set `S` the tropical linear space condition is
//! checked through two kinds of small circuits only: scalings `(e, λe)` and
//! sums `(e_1, e_2, e_1 + e_2)`. This is complete when `S` is closed, see
//! [`is_closed`].

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec, Mat};
use crate::matroid::Subset;
use crate::trop::{min_attained_twice, TropVal};

/// A small circuit whose minimum is attained only once. Indices refer to
/// the assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmallCircuitViolation {
    /// `scaled = λ·base` but `u_scaled ≠ u_base + val(λ)`.
    Scaling { base: usize, scaled: usize },
    /// `sum = a + b`.
    Sum { a: usize, b: usize, sum: usize },
}

/// Checks `min(u_{λe}, u_e + val λ)` and `min(u_{e1+e2}, u_{e1}, u_{e2})`
/// for every scaling pair and additive triple inside the assignment.
pub fn check_small_circuits(spec: FieldSpec, assign: &[(Vec<Elem>, TropVal)]) -> Result<Option<SmallCircuitViolation>> {
    let vecs = validate(assign)?;
    for (i, e) in vecs.iter().enumerate() {
        for (j, s) in vecs.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some(lambda) = ratio(s, e) {
                let terms = [assign[j].1.clone(), &assign[i].1 + &spec.valuation(&lambda)];
                if !min_attained_twice(&terms)? {
                    return Ok(Some(SmallCircuitViolation::Scaling { base: i, scaled: j }));
                }
            }
        }
    }
    for a in 0..vecs.len() {
        for b in a + 1..vecs.len() {
            let sum = add(vecs[a], vecs[b]);
            for (k, s) in vecs.iter().enumerate() {
                if k == a || k == b || **s != sum[..] {
                    continue;
                }
                let terms = [assign[k].1.clone(), assign[a].1.clone(), assign[b].1.clone()];
                if !min_attained_twice(&terms)? {
                    return Ok(Some(SmallCircuitViolation::Sum { a, b, sum: k }));
                }
            }
        }
    }
    Ok(None)
}

fn validate(assign: &[(Vec<Elem>, TropVal)]) -> Result<Vec<&[Elem]>> {
    let dim = assign.first().map(|(v, _)| v.len()).ok_or(Error::EmptyInput("covector set"))?;
    let mut out: Vec<&[Elem]> = Vec::with_capacity(assign.len());
    for (v, _) in assign {
        if v.len() != dim {
            return Err(Error::Dimension { expected: dim, found: v.len() });
        }
        if v.iter().all(Elem::is_zero) {
            return Err(Error::Parse("the zero covector is not a ground element".into()));
        }
        if out.iter().any(|w| *w == v.as_slice()) {
            return Err(Error::Parse("covectors must be distinct".into()));
        }
        out.push(v);
    }
    Ok(out)
}

fn add(a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `λ` with `s = λ·e`, if any.
fn ratio(s: &[Elem], e: &[Elem]) -> Option<Elem> {
    let k = e.iter().position(|x| !x.is_zero())?;
    let lambda = &s[k] / &e[k];
    e.iter().zip(s).all(|(x, y)| &lambda * x == *y).then_some(lambda)
}

/// Whether every circuit of `S` reduces to the small ones: for each circuit
/// `C` some `k ∈ C` has an expression `s_k = Σ λ_i s_i` over `C∖k` whose
/// terms `λ_i s_i` and partial sums (in some order) all lie in `S`.
pub fn is_closed(spec: FieldSpec, set: &[Vec<Elem>]) -> Result<bool> {
    let m = Mat::from_columns(spec, set.first().map_or(0, Vec::len), set.to_vec())?;
    let n = set.len();
    let member = |v: &[Elem]| set.iter().any(|w| w.as_slice() == v);
    for size in 3..=m.rows() + 1 {
        for c in crate::matroid::k_subsets(n, size) {
            let Some(mu) = circuit_relation(&m, c) else { continue };
            let idx = c.to_vec();
            let ok = idx.iter().enumerate().any(|(pk, _)| {
                let terms: Vec<Vec<Elem>> = idx
                    .iter()
                    .enumerate()
                    .filter(|&(pi, _)| pi != pk)
                    .map(|(pi, &i)| {
                        let lambda = -(&mu[pi] / &mu[pk]);
                        set[i].iter().map(|x| &lambda * x).collect()
                    })
                    .collect();
                terms.iter().all(|t| member(t)) && some_order_closes(&terms, &member)
            });
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn some_order_closes(terms: &[Vec<Elem>], member: &dyn Fn(&[Elem]) -> bool) -> bool {
    fn go(acc: &[Elem], rest: &mut Vec<Vec<Elem>>, member: &dyn Fn(&[Elem]) -> bool) -> bool {
        if rest.is_empty() {
            return true;
        }
        for i in 0..rest.len() {
            let t = rest.remove(i);
            let next = add(acc, &t);
            let ok = member(&next) && go(&next, rest, member);
            rest.insert(i, t);
            if ok {
                return true;
            }
        }
        false
    }
    (0..terms.len()).any(|i| {
        let mut rest = terms.to_vec();
        let first = rest.remove(i);
        go(&first, &mut rest, member)
    })
}

/// The coefficients `μ` of the relation `Σ μ_i s_i = 0` when the columns
/// `c` form a circuit.
fn circuit_relation(m: &Mat, c: Subset) -> Option<Vec<Elem>> {
    let idx = c.to_vec();
    let sub = m.select_columns(&idx);
    if sub.rank() != idx.len() - 1 {
        return None;
    }
    if (0..idx.len()).any(|i| {
        let mut rest = idx.clone();
        rest.remove(i);
        m.select_columns(&rest).rank() != rest.len()
    }) {
        return None;
    }
    // the last column is a combination of the others; find it on a set of
    // independent rows
    let head: Vec<usize> = idx[..idx.len() - 1].to_vec();
    let a = m.select_columns(&head);
    let rows = independent_rows(&a);
    let sq = Mat::from_columns(
        m.spec(),
        rows.len(),
        head.iter().map(|&j| rows.iter().map(|&r| m.get(r, j).clone()).collect()).collect(),
    )
    .ok()?;
    let rhs: Vec<Elem> = rows.iter().map(|&r| m.get(r, idx[idx.len() - 1]).clone()).collect();
    let mut mu = sq.solve(&rhs).ok()?;
    mu.push(-Elem::one());
    Some(mu)
}

fn independent_rows(a: &Mat) -> Vec<usize> {
    let mut rows = Vec::new();
    for r in 0..a.rows() {
        rows.push(r);
        let t = Mat::from_columns(
            a.spec(),
            a.cols(),
            rows.iter().map(|&i| (0..a.cols()).map(|j| a.get(i, j).clone()).collect()).collect(),
        )
        .expect("shape");
        if t.rank() < rows.len() {
            rows.pop();
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linspace::{tls_contains, Embedding};
    use crate::trop::TropPoint;

    fn v(x: &[i64]) -> Vec<Elem> {
        x.iter().map(|&a| Elem::int(a)).collect()
    }

    fn t(s: &str) -> TropVal {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let two = FieldSpec::p_adic(2).unwrap();
        let ok = [(v(&[1, 0]), t("0")), (v(&[2, 0]), t("1"))];
        assert_eq!(check_small_circuits(two, &ok).unwrap(), None);
        let bad = [(v(&[1, 0]), t("0")), (v(&[2, 0]), t("0"))];
        assert_eq!(
            check_small_circuits(two, &bad).unwrap(),
            Some(SmallCircuitViolation::Scaling { base: 0, scaled: 1 })
        );
        let q = FieldSpec::trivial();
        let s = [v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let flat: Vec<_> = s.iter().cloned().zip([t("0"), t("0"), t("0")]).collect();
        assert_eq!(check_small_circuits(q, &flat).unwrap(), None);
        let bent: Vec<_> = s.iter().cloned().zip([t("0"), t("1"), t("2")]).collect();
        assert_eq!(check_small_circuits(q, &bent).unwrap(), Some(SmallCircuitViolation::Sum { a: 0, b: 1, sum: 2 }));
    }

    #[test]
    fn rejects_degenerate_sets() {
        let q = FieldSpec::trivial();
        assert!(check_small_circuits(q, &[(v(&[0, 0]), t("0"))]).is_err());
        assert!(check_small_circuits(q, &[(v(&[1, 0]), t("0")), (v(&[1, 0]), t("1"))]).is_err());
        assert!(check_small_circuits(q, &[]).is_err());
    }

    #[test]
    fn closedness() {
        let q = FieldSpec::trivial();
        assert!(is_closed(q, &[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap());
        assert!(is_closed(q, &[v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[2, 0])]).unwrap());
        // e0 + 2e1 needs the scaled term 2e1
        assert!(!is_closed(q, &[v(&[1, 0]), v(&[0, 1]), v(&[1, 2])]).unwrap());
        // a four-term circuit needs a partial sum
        let e = [v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[1, 1, 1])];
        assert!(!is_closed(q, &e).unwrap());
        let mut with_partial = e.to_vec();
        with_partial.push(v(&[1, 1, 0]));
        assert!(is_closed(q, &with_partial).unwrap());
    }

    /// On a closed set the small circuits decide membership exactly.
    #[test]
    fn agrees_with_membership_on_closed_set() {
        let two = FieldSpec::p_adic(2).unwrap();
        let s = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[2, 0])];
        assert!(is_closed(two, &s).unwrap());
        let iota = Embedding::new(Mat::from_columns(two, 2, s.clone()).unwrap()).unwrap();
        let vals = ["0", "1", "2", "inf"];
        let mut agree = 0;
        for a in vals {
            for b in vals {
                for c in vals {
                    let raw = vec![t("0"), t(a), t(b), t(c)];
                    let u = TropPoint::normalize(raw.clone()).unwrap();
                    let assign: Vec<_> = s.iter().cloned().zip(raw).collect();
                    let small = check_small_circuits(two, &assign).unwrap().is_none();
                    assert_eq!(small, tls_contains(iota.matroid(), &u).unwrap(), "{u:?}");
                    agree += small as usize;
                }
            }
        }
        assert!(agree > 0);
    }
}
