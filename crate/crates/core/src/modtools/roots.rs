//! Roots in Q(i, √2) of polynomials with coefficients in Q(i, √2): complex roots are
//! located numerically under the two embeddings `√2 ↦ ±√2`, candidate field elements
//! are rebuilt from each pair by continued fractions, and only candidates that are
//! exact roots are kept.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::scalar::{Rat, Scalar};

fn embed(x: &Scalar, sqrt2_sign: f64) -> Complex64 {
    let p: Vec<f64> = x.parts().iter().map(|r| r.to_big().to_f64().unwrap_or(f64::NAN)).collect();
    let s = std::f64::consts::SQRT_2 * sqrt2_sign;
    Complex64::new(p[0] + s * p[2], p[1] + s * p[3])
}

/// Evaluates `Σ c_k x^k`.
pub fn eval(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Aberth–Ehrlich iteration for all complex roots of a polynomial with nonzero leading term.
fn complex_roots(c: &[Complex64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    if d == 0 {
        return vec![];
    }
    let lead = c[d];
    let radius = 1.0 + c[..d].iter().map(|a| (a / lead).norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius * 0.9, 0.4 + std::f64::consts::TAU * k as f64 / d as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..d {
            let (p, dp) = horner(c, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != k).map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[k] -= w;
            moved = moved.max(w.norm() / (1.0 + z[k].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Best rational approximation of `x` with denominator at most `max_den`.
fn rationalize(x: f64, max_den: i64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-12 || ((h1 as f64) / (k1 as f64) - x).abs() < 1e-11 * (1.0 + x.abs()) {
            break;
        }
        y = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    let r = BigRational::new(h1.into(), k1.into());
    let approx = r.to_f64()?;
    ((approx - x).abs() < 1e-6 * (1.0 + x.abs())).then(|| Rat::from_big(r))
}

fn rebuild(zp: Complex64, zm: Complex64) -> Option<Scalar> {
    let s = 2.0 * std::f64::consts::SQRT_2;
    let a = rationalize((zp.re + zm.re) / 2.0, 1 << 20)?;
    let c = rationalize((zp.re - zm.re) / s, 1 << 20)?;
    let b = rationalize((zp.im + zm.im) / 2.0, 1 << 20)?;
    let d = rationalize((zp.im - zm.im) / s, 1 << 20)?;
    Some(Scalar::from_parts(a, b, c, d))
}

/// Distinct roots in the field of `Σ coeffs[k] x^k`, or `None` when fewer than `degree`
/// distinct roots were found (the polynomial does not split into distinct linear factors).
pub fn split_roots(coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(Scalar::is_zero) {
        c.pop();
    }
    let d = c.len().checked_sub(1)?;
    if d == 0 {
        return Some(vec![]);
    }
    let zp = complex_roots(&c.iter().map(|x| embed(x, 1.0)).collect::<Vec<_>>());
    let zm = complex_roots(&c.iter().map(|x| embed(x, -1.0)).collect::<Vec<_>>());
    let mut found: Vec<Scalar> = Vec::new();
    for &p in &zp {
        for &m in &zm {
            if let Some(x) = rebuild(p, m) {
                if !found.contains(&x) && eval(&c, &x).is_zero() {
                    found.push(x);
                }
            }
        }
    }
    if found.len() != d {
        return None;
    }
    found.sort_by(|a, b| a.lex_cmp(b));
    Some(found)
}

/// A square root in the field, if one exists.
pub fn sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_zero() {
        return Some(Scalar::zero());
    }
    if let Some(r) = x.as_rat() {
        if r.signum() > 0 {
            let b = r.to_big();
            let (n, d) = (b.numer().clone(), b.denom().clone());
            let (sn, sd) = (n.sqrt(), d.sqrt());
            if &sn * &sn == n && &sd * &sd == d {
                return Some(Scalar::rat(Rat::from_big(BigRational::new(sn, sd))));
            }
        }
    }
    let roots = split_roots(&[-x, Scalar::zero(), Scalar::one()])?;
    roots.into_iter().max_by(|a, b| a.lex_cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn splits_over_the_field() {
        // (x − 1/2)(x + 3)(x − i√2)
        let r = [s("1/2"), s("-3"), s("1*I*R2")];
        let mut coeffs = vec![Scalar::one()];
        for root in &r {
            let mut next = vec![Scalar::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= &(c * root);
            }
            coeffs = next;
        }
        let got = split_roots(&coeffs).unwrap();
        assert_eq!(got.len(), 3);
        for root in &r {
            assert!(got.contains(root));
        }
    }

    #[test]
    fn irreducible_quadratic_does_not_split() {
        // x² − 3
        assert!(split_roots(&[Scalar::int(-3), Scalar::zero(), Scalar::one()]).is_none());
        assert_eq!(sqrt(&Scalar::int(-1)).map(|r| &r * &r), Some(Scalar::int(-1)));
        assert_eq!(sqrt(&Scalar::int(2)), Some(Scalar::sqrt2()));
    }
}
