//! Damped Newton iteration for small square polynomial systems over the
//! complex numbers, with a compiled term representation for fast repeated
//! evaluation.

use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;
use num::ToPrimitive;

use crate::exactpoly::MultiPoly;

/// One polynomial in `n` variables, flattened to coefficient/exponent pairs.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    nvars: usize,
    terms: Vec<(f64, Vec<u32>)>,
    max_exp: Vec<u32>,
}

impl CompiledPoly {
    pub fn new(p: &MultiPoly, nvars: usize) -> Self {
        let mut terms = Vec::with_capacity(p.num_terms());
        let mut max_exp = vec![0u32; nvars];
        for (m, c) in p.terms() {
            let exps: Vec<u32> = m.0[..nvars].to_vec();
            for (k, &e) in exps.iter().enumerate() {
                max_exp[k] = max_exp[k].max(e);
            }
            terms.push((c.to_f64().unwrap(), exps));
        }
        CompiledPoly {
            nvars,
            terms,
            max_exp,
        }
    }

    fn powers(&self, x: &[Complex64]) -> Vec<Vec<Complex64>> {
        (0..self.nvars)
            .map(|k| {
                let mut col = Vec::with_capacity(self.max_exp[k] as usize + 1);
                col.push(Complex64::new(1.0, 0.0));
                for e in 1..=self.max_exp[k] {
                    let prev = col[e as usize - 1];
                    col.push(prev * x[k]);
                }
                col
            })
            .collect()
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        let pw = self.powers(x);
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, exps) in &self.terms {
            let mut t = Complex64::new(*c, 0.0);
            for (k, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t *= pw[k][e as usize];
                }
            }
            acc += t;
        }
        acc
    }
}

/// A square system with its Jacobian, all compiled.
pub struct CompiledSystem {
    pub eqs: Vec<CompiledPoly>,
    pub jac: Vec<Vec<CompiledPoly>>,
    pub nvars: usize,
}

impl CompiledSystem {
    pub fn new(eqs: &[MultiPoly], nvars: usize) -> Self {
        let jac = eqs
            .iter()
            .map(|e| {
                (0..nvars)
                    .map(|k| CompiledPoly::new(&e.derivative(k), nvars))
                    .collect()
            })
            .collect();
        CompiledSystem {
            eqs: eqs.iter().map(|e| CompiledPoly::new(e, nvars)).collect(),
            jac,
            nvars,
        }
    }

    pub fn residual(&self, x: &[Complex64]) -> f64 {
        self.eqs
            .iter()
            .map(|e| e.eval(x).norm())
            .fold(0.0, f64::max)
    }

    /// Newton iteration from `start`; `Some(root)` when the step size and
    /// the residual both drop below the tolerances.
    pub fn solve(&self, start: &[Complex64], max_iter: usize, tol: f64) -> Option<Vec<Complex64>> {
        let n = self.eqs.len();
        let mut x = start.to_vec();
        for _ in 0..max_iter {
            let f = DVector::from_iterator(n, self.eqs.iter().map(|e| -e.eval(&x)));
            let j = DMatrix::from_fn(n, self.nvars, |i, k| self.jac[i][k].eval(&x));
            let step = j.lu().solve(&f)?;
            let mut norm = 0.0f64;
            for k in 0..self.nvars {
                x[k] += step[k];
                norm += step[k].norm_sqr();
            }
            let scale = 1.0 + x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            if norm.sqrt() < tol * scale {
                // a couple of polishing steps at full precision
                for _ in 0..3 {
                    let f = DVector::from_iterator(n, self.eqs.iter().map(|e| -e.eval(&x)));
                    let j = DMatrix::from_fn(n, self.nvars, |i, k| self.jac[i][k].eval(&x));
                    if let Some(step) = j.lu().solve(&f) {
                        for k in 0..self.nvars {
                            x[k] += step[k];
                        }
                    }
                }
                return Some(x);
            }
        }
        None
    }
}
