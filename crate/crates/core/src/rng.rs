//! Counter-based standard normal source with draw accounting.
//!
//! Uniform words come from the SplitMix64 finalizer applied to
//! `key(attempt) + counter * GAMMA`, so every draw is addressable by its
//! index. Normals are produced in pairs by Marsaglia's polar method: draw
//! indices `2j` and `2j + 1` share pair `j`, and the rejection loop of pair
//! `j` walks through attempt keys `0, 1, 2, ...` until a point falls inside
//! the unit disc. The value at a given index therefore depends only on the
//! seed and the index, never on how the draws were batched.
//!
//! Per-task streams are derived with [`GaussianSource::stream`]:
//! `seed_k = mix(seed ^ mix(k + STREAM_SALT))`.

use nalgebra::DMatrix;

use crate::exec::ExecutionPolicy;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const STREAM_SALT: u64 = 0x6A09_E667_F3BC_C909;
const CACHED_KEYS: usize = 8;
/// Buffers shorter than this are filled on the calling thread.
const PAR_CHUNK: usize = 1 << 14;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[inline]
fn attempt_key(seed: u64, attempt: u64) -> u64 {
    mix64(seed.wrapping_add(attempt.wrapping_add(1).wrapping_mul(GAMMA)))
}

/// Maps a word to the open interval (-1, 1), symmetric around 0.
#[inline]
fn symmetric_unit(word: u64) -> f64 {
    ((word >> 11) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64) - 1.0
}

/// Seeded, counter-based source of i.i.d. standard normal values.
///
/// A source is single-owner; concurrency is obtained by deriving independent
/// streams from a root seed.
#[derive(Debug, Clone)]
pub struct GaussianSource {
    seed: u64,
    keys: [u64; CACHED_KEYS],
    draws: u64,
    policy: ExecutionPolicy,
}

/// A contiguous range of draw indices claimed from a [`GaussianSource`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DrawRange {
    start: u64,
    len: u64,
}

impl DrawRange {
    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

impl GaussianSource {
    pub fn new(seed: u64) -> Self {
        let mut keys = [0; CACHED_KEYS];
        for (a, k) in keys.iter_mut().enumerate() {
            *k = attempt_key(seed, a as u64);
        }
        Self {
            seed,
            keys,
            draws: 0,
            policy: ExecutionPolicy::default(),
        }
    }

    /// Independent stream `k` derived from a root seed.
    pub fn stream(seed: u64, k: u64) -> Self {
        Self::new(Self::stream_seed(seed, k))
    }

    pub fn stream_seed(seed: u64, k: u64) -> u64 {
        mix64(seed ^ mix64(k.wrapping_add(STREAM_SALT)))
    }

    pub fn with_policy(mut self, policy: ExecutionPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Total number of standard normal values emitted so far.
    pub fn draw_count(&self) -> u64 {
        self.draws
    }

    pub fn policy(&self) -> ExecutionPolicy {
        self.policy
    }

    #[inline]
    fn key(&self, attempt: u64) -> u64 {
        if (attempt as usize) < CACHED_KEYS {
            self.keys[attempt as usize]
        } else {
            attempt_key(self.seed, attempt)
        }
    }

    #[inline]
    fn pair(&self, j: u64) -> (f64, f64) {
        let c0 = j.wrapping_mul(2).wrapping_mul(GAMMA);
        let mut attempt = 0;
        loop {
            let key = self.key(attempt);
            let u = symmetric_unit(mix64(key.wrapping_add(c0)));
            let v = symmetric_unit(mix64(key.wrapping_add(c0).wrapping_add(GAMMA)));
            let s = u * u + v * v;
            if s < 1.0 && s > 0.0 {
                let f = (-2.0 * s.ln() / s).sqrt();
                return (u * f, v * f);
            }
            attempt += 1;
        }
    }

    /// Value at draw index `index`, without counting it.
    pub fn normal_at(&self, index: u64) -> f64 {
        let (a, b) = self.pair(index / 2);
        if index.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    fn fill_from(&self, start: u64, out: &mut [f64]) {
        let mut idx = start;
        let rest = if idx % 2 == 1 && !out.is_empty() {
            out[0] = self.pair(idx / 2).1;
            idx += 1;
            &mut out[1..]
        } else {
            out
        };
        let mut chunks = rest.chunks_exact_mut(2);
        for c in &mut chunks {
            let (a, b) = self.pair(idx / 2);
            c[0] = a;
            c[1] = b;
            idx += 2;
        }
        if let [last] = chunks.into_remainder() {
            *last = self.pair(idx / 2).0;
        }
    }

    /// Claims the next `len` draws. They count as emitted immediately; their
    /// values are read with [`GaussianSource::fill_range`].
    pub fn claim(&mut self, len: u64) -> DrawRange {
        let range = DrawRange {
            start: self.draws,
            len,
        };
        self.draws += len;
        range
    }

    /// Writes draws `range.start + offset ..` of a claimed range into `out`.
    ///
    /// # Panics
    /// If the requested window leaves the claimed range.
    pub fn fill_range(&self, range: DrawRange, offset: u64, out: &mut [f64]) {
        assert!(
            offset + out.len() as u64 <= range.len,
            "read past the end of a claimed draw range"
        );
        let start = range.start + offset;
        self.policy.for_each_chunk(out, PAR_CHUNK, |off, chunk| {
            self.fill_from(start + off as u64, chunk)
        });
    }

    /// Fills `out` with the next `out.len()` draws.
    pub fn fill(&mut self, out: &mut [f64]) {
        let range = self.claim(out.len() as u64);
        self.fill_range(range, 0, out);
    }

    pub fn next_normal(&mut self) -> f64 {
        let v = self.normal_at(self.draws);
        self.draws += 1;
        v
    }
}

/// `rows × cols` matrix of i.i.d. standard normals, filled column by column.
pub fn draw_matrix(src: &mut GaussianSource, rows: usize, cols: usize) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(rows, cols);
    src.fill(out.as_mut_slice());
    out
}

/// Number of entries strictly below the diagonal of an `m × m` matrix.
pub fn strict_lower_len(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// `m × m` matrix whose strictly lower triangle holds `m(m-1)/2` fresh
/// normals (column-major order) and is zero elsewhere.
pub fn draw_strict_lower(src: &mut GaussianSource, m: usize) -> DMatrix<f64> {
    let mut values = vec![0.0; strict_lower_len(m)];
    src.fill(&mut values);
    strict_lower_from(m, &values)
}

/// Places `values` below the diagonal in column-major order:
/// `(1,0), (2,0), ..., (m-1,0), (2,1), ...`.
pub fn strict_lower_from(m: usize, values: &[f64]) -> DMatrix<f64> {
    assert_eq!(values.len(), strict_lower_len(m));
    let mut out = DMatrix::zeros(m, m);
    let mut k = 0;
    for j in 0..m {
        for i in (j + 1)..m {
            out[(i, j)] = values[k];
            k += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_request_draws_nothing() {
        let mut src = GaussianSource::new(1);
        let m = draw_matrix(&mut src, 0, 5);
        assert_eq!(m.shape(), (0, 5));
        assert_eq!(src.draw_count(), 0);
    }

    #[test]
    fn counts_match_shape() {
        let mut src = GaussianSource::new(2);
        draw_matrix(&mut src, 3, 2);
        assert_eq!(src.draw_count(), 6);
    }

    #[test]
    fn reruns_reproduce_and_calls_differ() {
        let mut a = GaussianSource::new(42);
        let first = draw_matrix(&mut a, 3, 3);
        let second = draw_matrix(&mut a, 3, 3);
        assert_ne!(first, second);
        let mut b = GaussianSource::new(42);
        assert_eq!(draw_matrix(&mut b, 3, 3), first);
        assert_eq!(draw_matrix(&mut b, 3, 3), second);
    }

    #[test]
    fn strict_lower_shapes_and_counts() {
        let mut src = GaussianSource::new(3);
        let g = draw_strict_lower(&mut src, 1);
        assert_eq!(g, DMatrix::zeros(1, 1));
        assert_eq!(src.draw_count(), 0);

        let g = draw_strict_lower(&mut src, 2);
        assert_eq!(src.draw_count(), 1);
        assert_ne!(g[(1, 0)], 0.0);
        assert_eq!((g[(0, 0)], g[(0, 1)], g[(1, 1)]), (0.0, 0.0, 0.0));

        draw_strict_lower(&mut src, 5);
        assert_eq!(src.draw_count(), 11);
    }

    #[test]
    fn strict_lower_uses_column_major_order() {
        let g = strict_lower_from(3, &[1.0, 2.0, 3.0]);
        assert_eq!((g[(1, 0)], g[(2, 0)], g[(2, 1)]), (1.0, 2.0, 3.0));
    }

    #[test]
    fn batching_does_not_change_values() {
        let mut whole = GaussianSource::new(7);
        let mut reference = vec![0.0; 101];
        whole.fill(&mut reference);

        let mut parts = GaussianSource::new(7);
        let mut got = Vec::new();
        for len in [1, 2, 3, 5, 7, 11, 13, 17, 19, 23] {
            let mut buf = vec![0.0; len];
            parts.fill(&mut buf);
            got.extend(buf);
        }
        assert_eq!(got, reference);
        for (i, &v) in reference.iter().enumerate() {
            assert_eq!(whole.normal_at(i as u64), v);
        }
    }

    #[test]
    fn policies_agree_bitwise() {
        let n = 3 * PAR_CHUNK + 17;
        let mut a = GaussianSource::new(9).with_policy(ExecutionPolicy::Sequential);
        let mut b = GaussianSource::new(9).with_policy(ExecutionPolicy::Parallel);
        let mut x = vec![0.0; n];
        let mut y = vec![0.0; n];
        a.next_normal();
        b.next_normal();
        a.fill(&mut x);
        b.fill(&mut y);
        assert_eq!(x, y);
    }

    #[test]
    fn moments_are_standard() {
        let mut src = GaussianSource::new(2024);
        let mut x = vec![0.0; 100_000];
        src.fill(&mut x);
        let n = x.len() as f64;
        let mean = x.iter().sum::<f64>() / n;
        let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!(mean.abs() <= 0.02, "mean {mean}");
        assert!((var - 1.0).abs() <= 0.02, "var {var}");
    }

    #[test]
    fn streams_are_distinct() {
        let a = GaussianSource::stream(5, 0);
        let b = GaussianSource::stream(5, 1);
        assert_ne!(a.seed(), b.seed());
        assert_ne!(a.normal_at(0), b.normal_at(0));
        assert_eq!(GaussianSource::stream(5, 1).seed(), b.seed());
    }

    #[test]
    #[should_panic(expected = "claimed draw range")]
    fn reading_outside_a_claim_panics() {
        let mut src = GaussianSource::new(1);
        let r = src.claim(4);
        let mut buf = [0.0; 5];
        src.fill_range(r, 0, &mut buf);
    }
}
