//! Univariate polynomials over [`Scalar`], characteristic polynomials, and
//! root extraction in `Q` or the ambient quadratic field.
//!
//! Roots are only ever *proposed* numerically; every root returned here has
//! been verified by exact evaluation. Missing a root is possible (and only
//! costs search seeds), reporting a wrong one is not.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

/// Coefficients in increasing degree; no trailing zeros (zero poly is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(Vec<Scalar>);

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::int(i as i64))
                .collect(),
        )
    }

    fn monic(&self) -> Poly {
        match self.0.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inv();
                Poly::new(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![Scalar::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.0[dd].inv();
        let mut rem = self.0.clone();
        let mut quot = vec![Scalar::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            let shift = top - dd;
            for (i, d) in divisor.0.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&c * d);
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors (same roots, all simple).
    pub fn square_free(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Coefficient-wise Galois conjugate.
    pub fn conjugate(&self) -> Poly {
        Poly(self.0.iter().map(Scalar::conjugate).collect())
    }
}

/// Characteristic polynomial `det(xI - M)` by the Faddeev-LeVerrier
/// recurrence (exact in characteristic zero).
pub fn char_poly(m: &Matrix) -> Poly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut aux = Matrix::zeros(n, n);
    for k in 1..=n {
        let shifted = aux.add(&Matrix::scalar(n, &coeffs[n - k + 1]));
        aux = m * &shifted;
        coeffs[n - k] = -(aux.trace() / Scalar::int(k as i64));
    }
    Poly::new(coeffs)
}

/// All distinct roots of `p` lying in `field`.
pub fn roots_in_field(p: &Poly, field: Field) -> Vec<Scalar> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sf = p.square_free();
    let mut found: Vec<Scalar> = Vec::new();
    let mut push = |x: Scalar| {
        if sf.eval(&x).is_zero() && !found.contains(&x) {
            found.push(x);
        }
    };
    // Rational candidates come from the norm polynomial, which has rational
    // coefficients and contains every root of p.
    let norm = match field {
        Field::Rational => sf.clone(),
        Field::Quadratic(_) => sf.mul(&sf.conjugate()).square_free(),
    };
    let Some(rational_norm) = to_rational_coeffs(&norm) else {
        return Vec::new();
    };
    for r in rational_roots(&rational_norm) {
        push(Scalar::Rational(r));
    }
    if let Field::Quadratic(m) = field {
        let real = numeric_real_roots(&rational_norm);
        let sqrt_m = (m as f64).sqrt();
        for (i, x) in real.iter().enumerate() {
            for y in &real[i + 1..] {
                let a = approximate_rational((x + y) / 2.0);
                let b = approximate_rational((x - y) / (2.0 * sqrt_m));
                if let (Some(a), Some(b)) = (a, b) {
                    for b in [b.clone(), -b] {
                        push(Scalar::Quadratic { a: a.clone(), b, m });
                    }
                }
            }
        }
    }
    found
}

fn to_rational_coeffs(p: &Poly) -> Option<Vec<BigRational>> {
    p.coeffs().iter().map(Scalar::as_rational).collect()
}

const DIVISOR_LIMIT: u64 = 1 << 40;

/// Rational roots via the rational root theorem. Gives up (returns what it
/// has) when the relevant integers are too large to factor by trial division.
fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    let mut roots = Vec::new();
    // Strip factors of x.
    let zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push(BigRational::zero());
        ints.drain(..zeros);
    }
    if ints.len() < 2 {
        return roots;
    }
    let (Some(a0), Some(an)) = (
        ints[0].abs().to_u64().filter(|&x| x <= DIVISOR_LIMIT),
        ints[ints.len() - 1].abs().to_u64().filter(|&x| x <= DIVISOR_LIMIT),
    ) else {
        return roots;
    };
    for p in divisors(a0) {
        for q in divisors(an) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = BigRational::new(BigInt::from(sign) * BigInt::from(p), BigInt::from(q));
                let value = ints
                    .iter()
                    .rev()
                    .fold(BigRational::zero(), |acc, c| acc * &cand + BigRational::from_integer(c.clone()));
                if value.is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Real roots of a rational polynomial via companion-matrix eigenvalues.
fn numeric_real_roots(coeffs: &[BigRational]) -> Vec<f64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n].to_f64().unwrap_or(1.0);
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -coeffs[i].to_f64().unwrap_or(f64::NAN) / lead;
    }
    if companion.iter().any(|x| !x.is_finite()) {
        return Vec::new();
    }
    companion
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() < 1e-7 * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect()
}

/// Best rational approximation with denominator at most 10^6, if it is
/// within a small relative tolerance of `x`.
fn approximate_rational(x: f64) -> Option<BigRational> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > 1_000_000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= 1e-9 * (1.0 + x.abs()) {
            return Some(BigRational::new(h1.into(), k1.into()));
        }
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Poly {
        Poly::new(xs.iter().map(|&x| Scalar::int(x)).collect())
    }

    #[test]
    fn char_poly_of_small_matrices() {
        // [[1,2],[3,4]]: x^2 - 5x - 2
        assert_eq!(char_poly(&Matrix::from_ints(&[[1, 2], [3, 4]])), ints(&[-2, -5, 1]));
        assert_eq!(char_poly(&Matrix::identity(3)), ints(&[-1, 3, -3, 1]));
    }

    #[test]
    fn rational_roots_found() {
        // (x - 1/2)(x + 3)(x^2 + 1) = x^4 + 5/2 x^3 - 1/2 x^2 + 5/2 x - 3/2
        let p = Poly::new(vec![
            Scalar::ratio(-3, 2),
            Scalar::ratio(5, 2),
            Scalar::ratio(-1, 2),
            Scalar::ratio(5, 2),
            Scalar::one(),
        ]);
        let mut r = roots_in_field(&p, Field::Rational);
        r.sort_by(|a, b| a.to_f64().partial_cmp(&b.to_f64()).unwrap());
        assert_eq!(r, vec![Scalar::int(-3), Scalar::ratio(1, 2)]);
        // Repeated roots collapse.
        assert_eq!(roots_in_field(&ints(&[1, 2, 1]), Field::Rational), vec![Scalar::int(-1)]);
        assert!(roots_in_field(&ints(&[2, 0, 1]), Field::Rational).is_empty());
    }

    #[test]
    fn quadratic_roots_found() {
        // x^2 - x - 1 has roots (1 +- sqrt 5)/2.
        let p = ints(&[-1, -1, 1]);
        let r = roots_in_field(&p, Field::Quadratic(5));
        assert_eq!(r.len(), 2);
        for x in &r {
            assert!(p.eval(x).is_zero());
        }
        assert!(roots_in_field(&p, Field::Rational).is_empty());
        assert!(roots_in_field(&p, Field::Quadratic(2)).is_empty());
        // (x - sqrt 5)(x - 1) over Q(sqrt 5) has coefficients in Q(sqrt 5).
        let s5 = Scalar::sqrt(5).unwrap();
        let q = Poly::new(vec![s5.clone(), -(&s5 + &Scalar::one()), Scalar::one()]);
        let r = roots_in_field(&q, Field::Quadratic(5));
        assert_eq!(r.len(), 2);
        assert!(r.contains(&s5) && r.contains(&Scalar::one()));
    }

    #[test]
    fn gcd_and_square_free() {
        let p = ints(&[1, 2, 1]).mul(&ints(&[-2, 1]));
        assert_eq!(p.square_free(), ints(&[-2, -1, 1]));
        assert_eq!(p.gcd(&ints(&[1, 1])), ints(&[1, 1]));
    }
}
