//! Conversion between the max,L² and L²,F error criteria for skew-symmetric
//! matrices with identically distributed off-diagonal entries, where
//! `||A||_{L²,F} = sqrt(m² - m) · ||A||_{max,L²}`.

use crate::error::{Error, Result};
use crate::types::ErrorNorm;

/// Factor converting an error bound measured in `from` into the
/// corresponding bound in `to`.
pub fn norm_factor(m: usize, from: ErrorNorm, to: ErrorNorm) -> Result<f64> {
    if m == 0 {
        return Err(Error::EmptyDimension);
    }
    let off_diagonal = ((m * m - m) as f64).sqrt();
    match (from, to) {
        (a, b) if a == b => Ok(1.0),
        (ErrorNorm::MaxL2, ErrorNorm::FrobeniusL2) => Ok(off_diagonal),
        (ErrorNorm::FrobeniusL2, ErrorNorm::MaxL2) => {
            if m == 1 {
                Err(Error::DegenerateDimension(m))
            } else {
                Ok(off_diagonal.recip())
            }
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ErrorNorm::*;

    #[test]
    fn examples() {
        assert!((norm_factor(2, MaxL2, FrobeniusL2).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(norm_factor(1, MaxL2, FrobeniusL2).unwrap(), 0.0);
        assert_eq!(
            norm_factor(1, FrobeniusL2, MaxL2),
            Err(Error::DegenerateDimension(1))
        );
        assert_eq!(norm_factor(7, MaxL2, MaxL2).unwrap(), 1.0);
    }

    #[test]
    fn ten_dimensions_match_summed_variances() {
        // unit variance on each of the m² - m off-diagonal entries
        let m = 10;
        let total: f64 = (0..m)
            .flat_map(|i| (0..m).map(move |j| if i == j { 0.0 } else { 1.0 }))
            .sum();
        let got = norm_factor(m, MaxL2, FrobeniusL2).unwrap();
        assert!((got - total.sqrt()).abs() < 1e-14);
        assert!((got - 9.486_832_980_505_138).abs() < 1e-12);
    }

    #[test]
    fn round_trip_is_identity() {
        for m in 2..50 {
            let a = norm_factor(m, MaxL2, FrobeniusL2).unwrap();
            let b = norm_factor(m, FrobeniusL2, MaxL2).unwrap();
            assert!((a * b - 1.0).abs() < 1e-14);
        }
    }
}
