//! Complex arithmetic used by every wave number in the crate.

use num_complex::Complex64;

/// Complex number with IEEE double components.
pub type ComplexValue = Complex64;

pub const I: ComplexValue = ComplexValue::new(0.0, 1.0);

/// Principal square root: non-negative real part, and for inputs on the
/// negative real axis the root with non-negative imaginary part regardless of
/// the sign of the zero imaginary component.
pub fn principal_sqrt(z: ComplexValue) -> ComplexValue {
    if z.im == 0.0 && z.re < 0.0 {
        return ComplexValue::new(0.0, (-z.re).sqrt());
    }
    let r = z.sqrt();
    if r.re < 0.0 {
        -r
    } else {
        r
    }
}

/// `cos(z)` for complex `z = x + iy`: `cos x cosh y − i sin x sinh y`.
pub fn ccos(z: ComplexValue) -> ComplexValue {
    ComplexValue::new(z.re.cos() * z.im.cosh(), -z.re.sin() * z.im.sinh())
}

/// `exp(i z)`.
pub fn expi(z: ComplexValue) -> ComplexValue {
    (I * z).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sqrt_branch_on_negative_axis() {
        let r = principal_sqrt(ComplexValue::new(-4.0, -0.0));
        assert_eq!(r, ComplexValue::new(0.0, 2.0));
        let r = principal_sqrt(ComplexValue::new(-4.0, 0.0));
        assert_eq!(r, ComplexValue::new(0.0, 2.0));
    }

    #[test]
    fn ccos_matches_library() {
        let z = ComplexValue::new(0.3, 0.2);
        assert!((ccos(z) - z.cos()).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn division_inverts_multiplication(
            xr in -1e3f64..1e3, xi in -1e3f64..1e3,
            yr in -1e3f64..1e3, yi in -1e3f64..1e3,
        ) {
            let y = ComplexValue::new(yr, yi);
            prop_assume!(y.norm() > 1e-6);
            let x = ComplexValue::new(xr, xi);
            let back = (x * y) / y;
            prop_assert!((back - x).norm() <= 1e-12 * (1.0 + x.norm()));
        }

        #[test]
        fn sqrt_is_principal(re in -1e3f64..1e3, im in -1e3f64..1e3) {
            let z = ComplexValue::new(re, im);
            let r = principal_sqrt(z);
            prop_assert!(r.re >= 0.0);
            prop_assert!((r * r - z).norm() <= 1e-12 * (1.0 + z.norm()));
        }
    }
}
