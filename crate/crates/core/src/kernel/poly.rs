//! Dense univariate polynomials, coefficients stored lowest degree first.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Num + Clone> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(T::zero);
            out.push(a + b);
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&(T::zero() - T::one())))
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(T::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        let mut k = T::zero();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Self::new(out)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Remainder of division by `divisor` (exact fields only).
    pub fn rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let q = r.last().unwrap().clone() / lead.clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] = r[shift + i].clone() - q.clone() * c.clone();
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Self::new(r)
    }

    pub fn map<U: Num + Clone>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl Poly<f64> {
    /// Cauchy bound: every real root lies in `[-bound, bound]`.
    pub fn root_bound(&self) -> f64 {
        let lead = self.leading().copied().unwrap_or(1.0).abs();
        1.0 + self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs() / lead)
            .fold(0.0, f64::max)
    }
}

impl Poly<BigRational> {
    /// Positive rescaling to a primitive integer polynomial; signs at every
    /// point are unchanged.
    pub fn to_primitive_integer(&self) -> Poly<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        )
        .primitive()
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        self.to_primitive_integer().count_real_roots()
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_roots_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.to_primitive_integer().count_roots_in(lo, hi)
    }

    pub fn to_f64(&self) -> Poly<f64> {
        self.map(|c| c.to_f64().unwrap_or(f64::NAN))
    }
}

impl Poly<BigInt> {
    fn primitive(&self) -> Self {
        let g = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Remainder of `|lc(b)|^k · self` by `b`: same sign pattern as the
    /// field remainder, computed without fractions.
    fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("division by the zero polynomial");
        let lb = b.leading().unwrap().clone();
        let (abs_lb, sign_lb) = (lb.abs(), lb.signum());
        let mut r = self.coeffs.clone();
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let lr = r.last().unwrap().clone();
            let k = &lr * &sign_lb;
            for c in r.iter_mut() {
                *c *= &abs_lb;
            }
            for (i, c) in b.coeffs.iter().enumerate() {
                r[shift + i] -= &k * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Self::new(r).primitive()
    }

    /// Sturm chain `p, p', -rem(p, p'), ...` with every member primitive.
    pub fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.primitive()];
        let d = self.derivative();
        if d.is_zero() {
            return chain;
        }
        chain.push(d.primitive());
        loop {
            let n = chain.len();
            let r = chain[n - 2].pseudo_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.scale(&-BigInt::one()));
        }
        chain
    }

    /// Number of distinct real roots, from sign changes of the chain at
    /// `-inf` and `+inf`.
    pub fn count_real_roots(&self) -> usize {
        let chain = self.sturm_chain();
        let signs = |at_plus: bool| -> Vec<Sign> {
            chain
                .iter()
                .filter_map(|p| {
                    let lead = p.leading()?;
                    let odd = p.degree().unwrap() % 2 == 1;
                    let positive = lead.is_positive() != (odd && !at_plus);
                    Some(if positive { Sign::Plus } else { Sign::Minus })
                })
                .collect()
        };
        variations(&signs(false)) - variations(&signs(true))
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_roots_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let chain: Vec<Poly<BigRational>> = self
            .sturm_chain()
            .iter()
            .map(|p| p.map(|c| BigRational::from_integer(c.clone())))
            .collect();
        let at = |x: &BigRational| -> Vec<Sign> {
            chain
                .iter()
                .map(|p| p.eval(x))
                .filter(|v| !v.is_zero())
                .map(|v| if v.is_positive() { Sign::Plus } else { Sign::Minus })
                .collect()
        };
        variations(&at(lo)).saturating_sub(variations(&at(hi)))
    }
}

fn variations(signs: &[Sign]) -> usize {
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}
