use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

fn check(a: f64, big_a: Complex64, big_b: Complex64) -> Result<Complex64> {
    let det = a * a - 4.0 * big_a * big_b;
    // The real part of the quadratic form is -a|z|^2 + Re((A + B*) z^2).
    let bound = (big_a + big_b.conj()).norm();
    if !(a > 0.0 && a > bound && det.re > 0.0) {
        return Err(Error::Divergent(format!(
            "Gaussian integral with a = {a}, A = {big_a}, B = {big_b} does not converge"
        )));
    }
    Ok(det)
}

/// Closed form of `(1/pi) ∫ d²z exp(-a|z|² + b z + c z* + A z² + B z*²)`:
/// `(a² - 4AB)^(-1/2) exp[(abc + Ac² + Bb²)/(a² - 4AB)]`, principal root.
pub fn gaussian_integral_identity(
    a: f64,
    b: Complex64,
    c: Complex64,
    big_a: Complex64,
    big_b: Complex64,
) -> Result<Complex64> {
    let det = check(a, big_a, big_b)?;
    let exponent = (a * b * c + big_a * c * c + big_b * b * b) / det;
    Ok(exponent.exp() / det.sqrt())
}

/// The same integral by the trapezoid rule on a square grid of
/// `points × points` nodes sized to the decay of the integrand.
pub fn gaussian_integral_quadrature(
    a: f64,
    b: Complex64,
    c: Complex64,
    big_a: Complex64,
    big_b: Complex64,
    points: usize,
) -> Result<Complex64> {
    check(a, big_a, big_b)?;
    if points < 3 {
        return Err(Error::MalformedInput(format!(
            "need at least 3 quadrature points, got {points}"
        )));
    }
    let decay = a - (big_a + big_b.conj()).norm();
    let shift = (b.norm() + c.norm()) / decay;
    let half = shift + (80.0 / decay).sqrt();
    let h = 2.0 * half / (points - 1) as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..points {
        let x = -half + i as f64 * h;
        for j in 0..points {
            let z = Complex64::new(x, -half + j as f64 * h);
            let arg = -a * z.norm_sqr()
                + b * z
                + c * z.conj()
                + big_a * z * z
                + big_b * z.conj() * z.conj();
            let edge = (i == 0 || i == points - 1) as u8 + (j == 0 || j == points - 1) as u8;
            sum += arg.exp() / f64::from(1u8 << edge);
        }
    }
    Ok(sum * h * h / PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn examples() {
        let zero = c(0.0, 0.0);
        let one = gaussian_integral_identity(1.0, zero, zero, zero, zero).unwrap();
        assert!((one - 1.0).norm() < 1e-15);
        let shifted =
            gaussian_integral_identity(1.0, c(0.5, 0.0), c(0.3, 0.0), zero, zero).unwrap();
        assert!((shifted - 1.1618342).norm() < 1e-7);
        let squeezed =
            gaussian_integral_identity(2.0, zero, zero, c(0.3, 0.0), c(0.3, 0.0)).unwrap();
        assert!((squeezed - 0.5241424).norm() < 1e-7);
    }

    #[test]
    fn matches_quadrature() {
        let cases = [
            (1.0, c(0.5, 0.0), c(0.3, 0.0), c(0.0, 0.0), c(0.0, 0.0)),
            (2.0, c(0.0, 0.0), c(0.0, 0.0), c(0.3, 0.0), c(0.3, 0.0)),
            (1.5, c(0.2, -0.4), c(0.1, 0.3), c(0.2, 0.1), c(-0.1, 0.25)),
        ];
        for (a, b, cc, ba, bb) in cases {
            let exact = gaussian_integral_identity(a, b, cc, ba, bb).unwrap();
            let numeric = gaussian_integral_quadrature(a, b, cc, ba, bb, 241).unwrap();
            assert!((exact - numeric).norm() < 1e-8, "{exact} vs {numeric}");
        }
    }

    #[test]
    fn divergent_forms_are_rejected() {
        let zero = c(0.0, 0.0);
        assert!(matches!(
            gaussian_integral_identity(0.0, zero, zero, zero, zero),
            Err(Error::Divergent(_))
        ));
        assert!(matches!(
            gaussian_integral_identity(1.0, zero, zero, c(0.6, 0.0), c(0.6, 0.0)),
            Err(Error::Divergent(_))
        ));
    }
}
