use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::ring::Ring;
use super::Rational;

/// Exponent vector of a monomial.
pub type Monomial<const N: usize> = [u32; N];

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vectors, so the last
/// entry is the lexicographic leading term. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly<const N: usize> {
    terms: BTreeMap<Monomial<N>, Rational>,
}

impl<const N: usize> SparsePoly<N> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    /// The variable `x_{i+1}` (zero-based index).
    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exp: Monomial<N>, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (Monomial<N>, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(terms: &[(Monomial<N>, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|(e, c)| (*e, Rational::from_integer((*c).into()))))
    }

    pub fn add_term(&mut self, exp: Monomial<N>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<N>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Monomial<N>) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lexicographic leading term.
    pub fn leading_term(&self) -> Option<(&Monomial<N>, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in variable `i`; `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    /// True if every term has total degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative in variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut f = *e;
            f[i] -= 1;
            (f, c * Rational::from_integer(e[i].into()))
        }))
    }

    /// Splits into coefficients of powers of variable `i`; entry `k` multiplies `x_i^k`.
    pub fn coefficients_in(&self, i: usize) -> Vec<Self> {
        let deg = match self.degree_in(i) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![Self::zero(); deg + 1];
        for (e, c) in &self.terms {
            let mut f = *e;
            f[i] = 0;
            out[e[i] as usize].add_term(f, c.clone());
        }
        out
    }

    /// Evaluates at a point of any ring.
    pub fn eval<R: Ring>(&self, at: &[R; N]) -> R {
        let mut powers: Vec<Vec<R>> = Vec::with_capacity(N);
        for (i, x) in at.iter().enumerate() {
            let deg = self.degree_in(i).unwrap_or(0) as usize;
            let mut pw = Vec::with_capacity(deg + 1);
            pw.push(R::one_elem());
            for k in 1..=deg {
                let next = pw[k - 1].clone() * x.clone();
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut acc = R::zero_elem();
        for (e, c) in &self.terms {
            let mut t = R::from_rational(c);
            for i in 0..N {
                if e[i] > 0 {
                    t = t * powers[i][e[i] as usize].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes polynomials for the variables.
    pub fn substitute<const M: usize>(&self, with: &[SparsePoly<M>; N]) -> SparsePoly<M> {
        self.eval(with)
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (de, dc) = divisor.leading_term()?;
        let (de, dc) = (*de, dc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((re, rc)) = rem.leading_term() {
            let mut e = [0; N];
            for i in 0..N {
                if re[i] < de[i] {
                    return None;
                }
                e[i] = re[i] - de[i];
            }
            let t = Self::monomial(e, rc / &dc);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl<const N: usize> Ring for SparsePoly<N> {
    fn zero_elem() -> Self {
        SparsePoly::zero()
    }
    fn one_elem() -> Self {
        SparsePoly::constant(Rational::one())
    }
    fn from_rational(q: &Rational) -> Self {
        SparsePoly::constant(q.clone())
    }
}

impl<const N: usize> Add for &SparsePoly<N> {
    type Output = SparsePoly<N>;
    fn add(self, rhs: Self) -> SparsePoly<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<const N: usize> Sub for &SparsePoly<N> {
    type Output = SparsePoly<N>;
    fn sub(self, rhs: Self) -> SparsePoly<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<const N: usize> Mul for &SparsePoly<N> {
    type Output = SparsePoly<N>;
    fn mul(self, rhs: Self) -> SparsePoly<N> {
        let mut out = SparsePoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = [0; N];
                for i in 0..N {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl<const N: usize> Neg for &SparsePoly<N> {
    type Output = SparsePoly<N>;
    fn neg(self) -> SparsePoly<N> {
        SparsePoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<const N: usize> $tr for SparsePoly<N> {
            type Output = SparsePoly<N>;
            fn $m(self, rhs: Self) -> SparsePoly<N> {
                (&self).$m(&rhs)
            }
        }
        impl<const N: usize> $tr<&SparsePoly<N>> for SparsePoly<N> {
            type Output = SparsePoly<N>;
            fn $m(self, rhs: &SparsePoly<N>) -> SparsePoly<N> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<const N: usize> Neg for SparsePoly<N> {
    type Output = SparsePoly<N>;
    fn neg(self) -> SparsePoly<N> {
        -&self
    }
}

impl<const N: usize> fmt::Display for SparsePoly<N> {
    /// Highest terms first, e.g. `3*x1^2 + 3*x1*x2 + x2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, p)),
                }
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<const N: usize> fmt::Debug for SparsePoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({self})")
    }
}
