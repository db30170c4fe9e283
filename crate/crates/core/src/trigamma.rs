//! Trigamma function on the positive reals.

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_14`.
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// Below this argument the recurrence `ψ₁(z) = ψ₁(z+1) + 1/z²` is applied
/// before switching to the asymptotic series.
const ASYMPTOTIC_FROM: f64 = 10.0;

/// `ψ₁(z) = Σ_{n≥0} 1/(z+n)²` for `z > 0`.
pub fn trigamma(z: f64) -> f64 {
    assert!(z > 0.0, "trigamma requires a positive argument");
    let shift = if z < ASYMPTOTIC_FROM {
        (ASYMPTOTIC_FROM - z).ceil() as usize
    } else {
        0
    };
    let x = z + shift as f64;
    let inv = x.recip();
    let inv2 = inv * inv;
    // 1/x + 1/(2x²) + Σ B_2k / x^(2k+1), summed from the smallest term.
    let mut series = 0.0;
    for b in BERNOULLI.iter().rev() {
        series = series * inv2 + b;
    }
    let mut value = inv + 0.5 * inv2 + series * inv2 * inv;
    for n in (0..shift).rev() {
        let t = z + n as f64;
        value += 1.0 / (t * t);
    }
    value
}

/// Tail sum `Σ_{r>p} 1/r² = ψ₁(p+1)`.
pub fn trigamma_tail(p: u64) -> f64 {
    trigamma(p as f64 + 1.0)
}
