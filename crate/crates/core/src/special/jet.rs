//! Truncated Taylor series ("jets") for exact derivatives of explicit formulas.
//!
//! A jet of order `n` at `t0` stores `c_k = f^(k)(t0) / k!` for `k <= n`.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub coeffs: Vec<f64>,
}

impl Jet {
    pub fn constant(v: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = v;
        Jet { coeffs }
    }

    /// The independent variable `t0 + (t - t0)`.
    pub fn variable(t0: f64, order: usize) -> Self {
        let mut j = Jet::constant(t0, order);
        if order >= 1 {
            j.coeffs[1] = 1.0;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `[f, f', f'', ...]`.
    pub fn derivatives(&self) -> Vec<f64> {
        let mut fact = 1.0;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    fact *= k as f64;
                }
                c * fact
            })
            .collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        Jet { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn add_const(&self, s: f64) -> Self {
        let mut j = self.clone();
        j.coeffs[0] += s;
        j
    }

    pub fn recip(&self) -> Self {
        let a = &self.coeffs;
        let n = a.len();
        let mut b = vec![0.0; n];
        b[0] = 1.0 / a[0];
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| a[j] * b[k - j]).sum();
            b[k] = -s / a[0];
        }
        Jet { coeffs: b }
    }

    pub fn exp(&self) -> Self {
        let a = &self.coeffs;
        let n = a.len();
        let mut b = vec![0.0; n];
        b[0] = a[0].exp();
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| j as f64 * a[j] * b[k - j]).sum();
            b[k] = s / k as f64;
        }
        Jet { coeffs: b }
    }

    /// `(sin f, cos f)`.
    pub fn sin_cos(&self) -> (Self, Self) {
        let a = &self.coeffs;
        let n = a.len();
        let mut s = vec![0.0; n];
        let mut c = vec![0.0; n];
        s[0] = a[0].sin();
        c[0] = a[0].cos();
        for k in 1..n {
            let (mut ss, mut cc) = (0.0, 0.0);
            for j in 1..=k {
                ss += j as f64 * a[j] * c[k - j];
                cc += j as f64 * a[j] * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = -cc / k as f64;
        }
        (Jet { coeffs: s }, Jet { coeffs: c })
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    /// `f^p` for `f(t0) > 0`.
    pub fn powf(&self, p: f64) -> Self {
        let a = &self.coeffs;
        let n = a.len();
        let mut b = vec![0.0; n];
        b[0] = a[0].powf(p);
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| (p * j as f64 - (k - j) as f64) * a[j] * b[k - j]).sum();
            b[k] = s / (k as f64 * a[0]);
        }
        Jet { coeffs: b }
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        Jet { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        Jet { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|k| (0..=k).map(|j| self.coeffs[j] * o.coeffs[k - j]).sum())
            .collect();
        Jet { coeffs }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}
