//! Sparse multivariate polynomials in the variables `z_1..z_n, zbar_1..zbar_n`.
//!
//! A `Poly` treats each `z_j` and its conjugate `zbar_j` as independent
//! symbols, which is the right setting for real-analytic expressions on C^n.
//! Coefficients are `ComplexRational`, terms are kept in a `BTreeMap` with no
//! stored zeros, so equality is structural and deterministic to print.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::scalar::ComplexRational;

/// Exponent pair of a single term: `z^alpha * zbar^beta`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

impl Monomial {
    pub fn constant(n: usize) -> Self {
        Self {
            alpha: vec![0; n],
            beta: vec![0; n],
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.alpha.iter().sum::<u32>() + self.beta.iter().sum::<u32>()
    }

    fn mul(&self, other: &Self) -> Self {
        Self {
            alpha: self
                .alpha
                .iter()
                .zip(&other.alpha)
                .map(|(a, b)| a + b)
                .collect(),
            beta: self
                .beta
                .iter()
                .zip(&other.beta)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Swaps the holomorphic and antiholomorphic exponents.
    fn conj(&self) -> Self {
        Self {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }
}

// Graded order, then lexicographic on the exponents. Gives displays and
// serializations a stable, degree-sorted term order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over `ComplexRational` in `(z, zbar)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, ComplexRational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, ComplexRational::one())
    }

    pub fn constant(n: usize, c: ComplexRational) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(n), c);
        }
        p
    }

    /// The variable `z_j` (0-based index).
    pub fn var(n: usize, j: usize) -> Self {
        assert!(j < n, "variable index {j} out of range for dimension {n}");
        let mut m = Monomial::constant(n);
        m.alpha[j] = 1;
        let mut p = Self::zero(n);
        p.terms.insert(m, ComplexRational::one());
        p
    }

    /// The conjugate variable `zbar_j` (0-based index).
    pub fn conj_var(n: usize, j: usize) -> Self {
        assert!(j < n, "variable index {j} out of range for dimension {n}");
        let mut m = Monomial::constant(n);
        m.beta[j] = 1;
        let mut p = Self::zero(n);
        p.terms.insert(m, ComplexRational::one());
        p
    }

    /// Single-term constructor; drops zero coefficients.
    pub fn monomial(n: usize, alpha: &[u32], beta: &[u32], c: ComplexRational) -> Self {
        assert_eq!(alpha.len(), n, "alpha length must equal dimension");
        assert_eq!(beta.len(), n, "beta length must equal dimension");
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(
                Monomial {
                    alpha: alpha.to_vec(),
                    beta: beta.to_vec(),
                },
                c,
            );
        }
        p
    }

    /// Defining function of the Siegel half-plane boundary:
    /// `rho = (z_n + zbar_n)/2 + sum_{j<n-1} z_j zbar_j`.
    pub fn rho(n: usize) -> Self {
        assert!(n >= 1);
        let half = ComplexRational::from_ratio(1, 2);
        let mut p = Self::zero(n);
        let mut m = Monomial::constant(n);
        m.alpha[n - 1] = 1;
        p.terms.insert(m, half.clone());
        let mut m = Monomial::constant(n);
        m.beta[n - 1] = 1;
        p.terms.insert(m, half);
        for j in 0..n - 1 {
            let mut m = Monomial::constant(n);
            m.alpha[j] = 1;
            m.beta[j] = 1;
            p.terms.insert(m, ComplexRational::one());
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Max over terms of `|alpha| + |beta|`; zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Smallest total degree among stored terms; zero polynomial reports 0.
    pub fn min_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .min()
            .unwrap_or(0)
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Monomial, &ComplexRational)> {
        self.terms.iter()
    }

    fn insert(&mut self, m: Monomial, c: ComplexRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_dim(&self, other: &Self) {
        assert_eq!(
            self.n, other.n,
            "polynomial dimension mismatch: {} vs {}",
            self.n, other.n
        );
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, coeff)| (m.clone(), coeff * c))
                .collect(),
        }
    }

    /// Complex conjugate: swaps `z`/`zbar` exponents and conjugates
    /// coefficients. An involutive ring anti-automorphism (here the ring is
    /// commutative, so simply an involution).
    pub fn conj(&self) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.conj(), c.conj()))
                .collect(),
        }
    }

    /// A polynomial takes real values on C^n iff it equals its conjugate.
    pub fn is_real_valued(&self) -> bool {
        *self == self.conj()
    }

    /// Formal partial derivative with respect to `z_j` (0-based).
    pub fn d_z(&self, j: usize) -> Self {
        assert!(
            j < self.n,
            "index {j} out of range for dimension {}",
            self.n
        );
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.alpha[j];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.alpha[j] = e - 1;
            out.insert(
                m2,
                c.scale(&crate::scalar::Rational::from_integer(e.into())),
            );
        }
        out
    }

    /// Formal partial derivative with respect to `zbar_j` (0-based).
    pub fn d_zbar(&self, j: usize) -> Self {
        assert!(
            j < self.n,
            "index {j} out of range for dimension {}",
            self.n
        );
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.beta[j];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.beta[j] = e - 1;
            out.insert(
                m2,
                c.scale(&crate::scalar::Rational::from_integer(e.into())),
            );
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Composition: substitutes `images[j]` for `z_j` and `conj(images[j])`
    /// for `zbar_j`, the consistent substitution for real-analytic maps
    /// written in `(z, zbar)`. Images may live in a different dimension.
    pub fn substitute(&self, images: &[Poly]) -> Self {
        assert_eq!(
            images.len(),
            self.n,
            "need one image per variable: {} given, {} required",
            images.len(),
            self.n
        );
        let m = match images.first() {
            Some(first) => {
                for img in images {
                    first.assert_same_dim(img);
                }
                first.n
            }
            None => 0,
        };
        let conj_images: Vec<Poly> = images.iter().map(Poly::conj).collect();
        let mut out = Self::zero(m);
        for (mono, c) in &self.terms {
            let mut term = Self::constant(m, c.clone());
            for j in 0..self.n {
                if mono.alpha[j] > 0 {
                    term = &term * &images[j].pow(mono.alpha[j]);
                }
                if mono.beta[j] > 0 {
                    term = &term * &conj_images[j].pow(mono.beta[j]);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Exact coefficient of `z^alpha zbar^beta`; zero when absent.
    pub fn coefficient(&self, alpha: &[u32], beta: &[u32]) -> ComplexRational {
        assert_eq!(alpha.len(), self.n);
        assert_eq!(beta.len(), self.n);
        let m = Monomial {
            alpha: alpha.to_vec(),
            beta: beta.to_vec(),
        };
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(ComplexRational::zero)
    }

    /// Drops all terms of total degree strictly above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact evaluation at a point, with `zbar_j` read as `conj(point[j])`.
    pub fn eval(&self, point: &[ComplexRational]) -> ComplexRational {
        assert_eq!(point.len(), self.n, "point dimension mismatch");
        let conj: Vec<ComplexRational> = point.iter().map(ComplexRational::conj).collect();
        let mut acc = ComplexRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for j in 0..self.n {
                for _ in 0..m.alpha[j] {
                    term *= &point[j];
                }
                for _ in 0..m.beta[j] {
                    term *= &conj[j];
                }
            }
            acc += &term;
        }
        acc
    }

    /// Floating evaluation used only by the sampling cross-check.
    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.n, "point dimension mismatch");
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = c.to_c64();
            for j in 0..self.n {
                term *= point[j].powu(m.alpha[j]);
                term *= point[j].conj().powu(m.beta[j]);
            }
            acc += term;
        }
        acc
    }

    /// First nonzero term in the canonical (graded) order, if any.
    pub fn leading_term(&self) -> Option<(&Monomial, &ComplexRational)> {
        self.terms.iter().next()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_dim(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_same_dim(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_dim(rhs);
        let mut out = Poly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for j in 0..self.n {
                match m.alpha[j] {
                    0 => {}
                    1 => write!(f, "*z{}", j + 1)?,
                    e => write!(f, "*z{}^{}", j + 1, e)?,
                }
                match m.beta[j] {
                    0 => {}
                    1 => write!(f, "*~z{}", j + 1)?,
                    e => write!(f, "*~z{}^{}", j + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
