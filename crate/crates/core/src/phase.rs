//! Unit-modulus phases e^{2πi t}.

use num_complex::Complex64;

/// e^{2πi·num/den}, reducing the exact fraction before converting to float.
pub fn cis_frac(num: i128, den: i128) -> Complex64 {
    debug_assert!(den > 0);
    let r = num.rem_euclid(den);
    cis_unit(r as f64 / den as f64)
}

/// e^{2πi t} for real t.
pub fn cis(t: f64) -> Complex64 {
    cis_unit(t - t.floor())
}

fn cis_unit(t: f64) -> Complex64 {
    let (s, c) = (std::f64::consts::TAU * t).sin_cos();
    Complex64::new(c, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_exactly() {
        let a = cis_frac(1, 3);
        let b = cis_frac(-2, 3);
        let c = cis_frac(1_000_000_000_000_000, 3);
        assert!((a - b).norm() < 1e-15 && (a - c).norm() < 1e-15);
        assert!((cis(0.25) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }
}
