//! Counter-based random number primitives.
//!
//! Every random value in the crate is a pure function of a 64-bit key and
//! a counter (here: replica seed and entry index), so sampling order and
//! worker count can never change a result. The mixing function is the
//! SplitMix64 finalizer, which is bijective on `u64`.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 avalanche finalizer. Bijective.
#[inline]
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stateless stream derivation: the `index`-th output of the SplitMix64
/// sequence seeded at `master`. Injective in `index` for fixed `master`,
/// so derived seeds never collide.
#[inline]
pub fn derive_stream(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add(GOLDEN_GAMMA.wrapping_mul(index)))
}

/// Uniform variate in `[0, 1)` keyed by `(seed, counter)`.
#[inline]
pub fn keyed_uniform(seed: u64, counter: u64) -> f64 {
    let u = splitmix64(seed ^ splitmix64(counter));
    // 53 high bits -> [0, 1)
    (u >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// Counter for the matrix entry `(i, j)`; unique for `i, j < 2^32`.
#[inline]
pub fn entry_counter(i: usize, j: usize) -> u64 {
    ((i as u64) << 32) | (j as u64 & 0xFFFF_FFFF)
}

/// Sequential convenience stream over `keyed_uniform`, for test draws and
/// scalar sampling where no natural entry index exists.
#[derive(Debug, Clone)]
pub struct KeyedStream {
    seed: u64,
    counter: u64,
}

impl KeyedStream {
    pub fn new(seed: u64) -> Self {
        KeyedStream { seed, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = splitmix64(self.seed ^ splitmix64(self.counter));
        self.counter += 1;
        v
    }

    pub fn next_uniform(&mut self) -> f64 {
        let v = keyed_uniform(self.seed, self.counter);
        self.counter += 1;
        v
    }

    /// Standard normal variate via Box–Muller.
    pub fn next_normal(&mut self) -> f64 {
        loop {
            let u1 = self.next_uniform();
            let u2 = self.next_uniform();
            if u1 > 0.0 {
                let r = crate::fmath::sqrt(-2.0 * crate::fmath::ln(u1));
                let theta = 2.0 * core::f64::consts::PI * u2;
                return r * libm::cos(theta);
            }
        }
    }
}
