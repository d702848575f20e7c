//! Seeded random instances for property tests and the `selfcheck` command.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::building::{DiagSeminorm, Flag};
use crate::field::{Elem, FieldKind, FieldSpec, Mat, Poly, RatFunc};
use crate::linspace::is_closed;
use crate::trop::TropVal;
use num_bigint::BigInt;
use num_rational::BigRational;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// A field element with numerators and denominators up to 100 (or
    /// polynomials of degree at most 4); small entries are favoured half of
    /// the time so that vanishing minors occur.
    pub fn elem(&mut self, spec: FieldSpec) -> Elem {
        let small = self.rng.gen_bool(0.5);
        match spec.kind() {
            FieldKind::TAdic => {
                let c = if small { 2 } else { 9 };
                let deg = self.rng.gen_range(0..=4usize);
                let num: Vec<i64> = (0..=deg).map(|_| self.range(-c, c)).collect();
                let num = Poly::from_ints(&num);
                if num.is_zero() {
                    return Elem::zero();
                }
                let den = if self.rng.gen_bool(0.3) {
                    let d: Vec<i64> = (0..=self.rng.gen_range(0..=2usize)).map(|_| self.range(-c, c)).collect();
                    let d = Poly::from_ints(&d);
                    if d.is_zero() {
                        Poly::one()
                    } else {
                        d
                    }
                } else {
                    Poly::one()
                };
                Elem::from_func(RatFunc::new(num, den))
            }
            _ => {
                let (n, d) = if small { (self.range(-3, 3), 1) } else { (self.range(-100, 100), self.range(1, 100)) };
                Elem::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
        }
    }

    pub fn nonzero_elem(&mut self, spec: FieldSpec) -> Elem {
        loop {
            let x = self.elem(spec);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn covector(&mut self, spec: FieldSpec, dim: usize) -> Vec<Elem> {
        (0..dim).map(|_| self.elem(spec)).collect()
    }

    /// A `rows × cols` matrix of full row rank without zero columns.
    pub fn matrix(&mut self, spec: FieldSpec, rows: usize, cols: usize) -> Mat {
        loop {
            let data: Vec<Vec<Elem>> = (0..cols).map(|_| self.covector(spec, rows)).collect();
            let m = Mat::from_columns(spec, rows, data).expect("shape");
            if m.zero_columns().is_empty() && m.rank() == rows {
                return m;
            }
        }
    }

    pub fn invertible(&mut self, spec: FieldSpec, n: usize) -> Mat {
        self.matrix(spec, n, n)
    }

    /// A rational with denominator 1, 2 or 3 in `[-5, 5]`.
    pub fn rational(&mut self) -> BigRational {
        let d = self.range(1, 3);
        BigRational::new(self.range(-5 * d, 5 * d).into(), d.into())
    }

    pub fn coords(&mut self, n: usize, allow_inf: bool) -> Vec<TropVal> {
        loop {
            let c: Vec<TropVal> = (0..n)
                .map(|_| if allow_inf && self.rng.gen_bool(0.2) { TropVal::Inf } else { TropVal::Fin(self.rational()) })
                .collect();
            if c.iter().any(TropVal::is_finite) {
                return c;
            }
        }
    }

    pub fn seminorm(&mut self, spec: FieldSpec, dim: usize, allow_inf: bool) -> DiagSeminorm {
        let basis = self.invertible(spec, dim);
        DiagSeminorm::new(basis, self.coords(dim, allow_inf)).expect("independent basis")
    }

    pub fn integer_norm(&mut self, spec: FieldSpec, dim: usize) -> DiagSeminorm {
        let basis = self.invertible(spec, dim);
        let coords = (0..dim).map(|_| TropVal::int(self.range(-4, 4))).collect();
        DiagSeminorm::new(basis, coords).expect("independent basis")
    }

    /// A random flag with random jumps, `c_1 = ∞` one time in five.
    pub fn flag(&mut self, spec: FieldSpec, dim: usize) -> Flag {
        let basis = loop {
            let data: Vec<Vec<Elem>> =
                (0..dim).map(|_| (0..dim).map(|_| Elem::int(self.range(-2, 2))).collect()).collect();
            let m = Mat::from_columns(spec, dim, data).expect("shape");
            if m.rank() == dim {
                break m;
            }
        };
        let mut cuts: Vec<usize> = (1..dim).filter(|_| self.rng.gen_bool(0.5)).collect();
        cuts.push(dim);
        let mut jumps: Vec<TropVal> = Vec::new();
        let mut last = BigRational::from_integer(0.into());
        for _ in 0..cuts.len() - 1 {
            last += BigRational::new(self.range(1, 6).into(), self.range(1, 3).into());
            jumps.push(TropVal::Fin(last.clone()));
        }
        jumps.reverse();
        if !jumps.is_empty() && self.rng.gen_bool(0.2) {
            jumps[0] = TropVal::Inf;
        }
        let subspaces = cuts
            .iter()
            .map(|&k| {
                // extra redundant generator: sum of the first two
                let mut cols: Vec<Vec<Elem>> = (0..k).map(|j| basis.column(j)).collect();
                if k >= 2 && self.rng.gen_bool(0.5) {
                    cols.push(cols[0].iter().zip(&cols[1]).map(|(a, b)| a + b).collect());
                }
                cols.shuffle(&mut self.rng);
                Mat::from_columns(spec, dim, cols).expect("shape")
            })
            .collect();
        Flag::new(spec, dim, subspaces, jumps).expect("valid by construction")
    }

    /// A spanning, closed set of at most `max_len` distinct nonzero
    /// covectors: generators plus random sums and scalings.
    pub fn closed_set(&mut self, spec: FieldSpec, dim: usize, max_len: usize) -> Vec<Vec<Elem>> {
        let scalars: Vec<Elem> = match spec.kind() {
            FieldKind::PAdic(p) => vec![Elem::int(-1), Elem::int(p as i64), Elem::ratio(1, p as i64), Elem::int(3)],
            FieldKind::TAdic => vec![Elem::int(-1), Elem::poly(&[0, 1]), Elem::int(2)],
            FieldKind::Trivial => vec![Elem::int(-1), Elem::int(2)],
        };
        loop {
            let mut set: Vec<Vec<Elem>> = Vec::new();
            let gens = self.invertible(spec, dim);
            for c in gens.columns() {
                let c = c.iter().map(|x| if self.rng.gen_bool(0.5) { x.clone() } else { Elem::int(self.range(-2, 2)) }).collect();
                push_new(&mut set, c);
            }
            let target = self.rng.gen_range(dim + 1..=max_len);
            for _ in 0..4 * max_len {
                if set.len() >= target {
                    break;
                }
                let a = set.choose(&mut self.rng).expect("nonempty").clone();
                let v: Vec<Elem> = if self.rng.gen_bool(0.6) {
                    let b = set.choose(&mut self.rng).expect("nonempty");
                    a.iter().zip(b).map(|(x, y)| x + y).collect()
                } else {
                    let s = scalars.choose(&mut self.rng).expect("nonempty");
                    a.iter().map(|x| s * x).collect()
                };
                push_new(&mut set, v);
            }
            let m = Mat::from_columns(spec, dim, set.clone()).expect("shape");
            if set.len() <= max_len && m.rank() == dim && is_closed(spec, &set).expect("valid set") {
                return set;
            }
        }
    }
}

fn push_new(set: &mut Vec<Vec<Elem>>, v: Vec<Elem>) {
    if !v.iter().all(Elem::is_zero) && !set.contains(&v) {
        set.push(v);
    }
}
