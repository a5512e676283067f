//! Seedable deterministic random numbers for test ensembles.
//!
//! The generator is xoshiro256** (Blackman/Vigna), seeded by expanding a
//! 64-bit seed through splitmix64. Both algorithms are fixed here by their
//! constants so the sampled ensembles are reproducible across platforms and
//! reimplementable in any language:
//!
//! * splitmix64: state += 0x9E3779B97F4A7C15; mixing multipliers
//!   0xBF58476D1CE4E5B9 and 0x94D049BB133111EB with shifts 30/27/31.
//! * xoshiro256**: output = rotl(s1·5, 7)·9; update uses t = s1 << 17,
//!   xors, and rotl(s3, 45).
//!
//! Uniform doubles take the top 53 bits; normal variates use the Box–Muller
//! transform on `(0,1]` uniforms.

/// xoshiro256** generator with splitmix64 seeding.
#[derive(Debug, Clone)]
pub struct Rng {
    state: [u64; 4],
    spare_normal: Option<f64>,
}

impl Rng {
    pub fn seed_from(seed: u64) -> Self {
        let mut sm = seed;
        let mut next = || {
            sm = sm.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = sm;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            z ^ (z >> 31)
        };
        Self {
            state: [next(), next(), next(), next()],
            spare_normal: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let [s0, s1, s2, s3] = self.state;
        let result = s1.wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s1 << 17;
        let mut s2 = s2 ^ s0;
        let mut s3 = s3 ^ s1;
        let s1 = s1 ^ s2;
        let s0 = s0 ^ s3;
        s2 ^= t;
        s3 = s3.rotate_left(45);
        self.state = [s0, s1, s2, s3];
        result
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`; safe as a logarithm argument.
    pub fn uniform_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box–Muller; generates pairs and caches the second.
    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let radius = (-2.0 * self.uniform_open().ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * self.uniform();
        self.spare_normal = Some(radius * angle.sin());
        radius * angle.cos()
    }

    /// Standard complex Gaussian: independent N(0,1) real and imaginary parts.
    pub fn standard_complex(&mut self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.standard_normal(), self.standard_normal())
    }

    /// Derive an unrelated stream for sub-task `index` of this seed.
    pub fn derive_seed(seed: u64, index: u64) -> u64 {
        let mut sm = seed ^ index.wrapping_mul(0xD1342543DE82EF95);
        sm = sm.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = sm;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    impl Rng {
        fn from_state(state: [u64; 4]) -> Self {
            Self { state, spare_normal: None }
        }
    }

    #[test]
    fn xoshiro_reference_vectors() {
        // First outputs of xoshiro256** from state {1, 2, 3, 4}, per the
        // algorithm definition.
        let mut rng = Rng::from_state([1, 2, 3, 4]);
        assert_eq!(rng.next_u64(), 11520);
        assert_eq!(rng.next_u64(), 0);
        assert_eq!(rng.next_u64(), 1509978240);
        assert_eq!(rng.next_u64(), 1215971899390074240);
    }

    #[test]
    fn seeding_reference_vectors() {
        // splitmix64 from seed 0 must expand to the published sequence, and
        // the full seed-42 pipeline is pinned against an independent
        // implementation of both algorithms.
        let rng = Rng::seed_from(0);
        assert_eq!(rng.state[0], 0xE220A8397B1DCDAF);
        assert_eq!(rng.state[1], 0x6E789E6AA1B965F4);
        assert_eq!(rng.state[2], 0x06C45D188009454F);

        let mut rng = Rng::seed_from(42);
        assert_eq!(rng.next_u64(), 1546998764402558742);
        assert_eq!(rng.next_u64(), 6990951692964543102);
        assert_eq!(rng.next_u64(), 12544586762248559009);
    }

    #[test]
    fn deterministic_given_seed() {
        let mut a = Rng::seed_from(42);
        let mut b = Rng::seed_from(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn different_seeds_diverge() {
        let mut a = Rng::seed_from(1);
        let mut b = Rng::seed_from(2);
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn uniform_in_range() {
        let mut rng = Rng::seed_from(7);
        for _ in 0..1000 {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
            let v = rng.uniform_open();
            assert!(v > 0.0 && v <= 1.0);
        }
    }

    #[test]
    fn normal_moments_roughly_standard() {
        let mut rng = Rng::seed_from(8);
        let n = 20_000;
        let samples: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.03, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "variance {var}");
    }
}
