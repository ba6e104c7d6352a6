use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::scalar::{fmt_rational, Point, Rational, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SamplerConfig {
    pub seed: u64,
    pub num_points: usize,
    pub numerator_bound: u32,
    pub denominator_bound: u32,
    pub max_retries: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { seed: 0, num_points: 5, numerator_bound: 256, denominator_bound: 64, max_retries: 32 }
    }
}

impl SamplerConfig {
    pub fn with_seed(seed: u64) -> Self {
        SamplerConfig { seed, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.num_points == 0 || self.numerator_bound == 0 || self.denominator_bound == 0 || self.max_retries == 0 {
            return Err("sampler bounds, point count and retries must be positive".into());
        }
        Ok(())
    }

    pub fn sampler(&self) -> Sampler {
        Sampler { config: *self, rng: ChaCha8Rng::seed_from_u64(self.seed) }
    }
}

/// Deterministic stream of nonzero rational points for `(u, v, h)`.
pub struct Sampler {
    config: SamplerConfig,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn config(&self) -> &SamplerConfig {
        &self.config
    }

    /// `±a/b` with `1 ≤ a ≤ numerator_bound`, `1 ≤ b ≤ denominator_bound`.
    pub fn rational(&mut self) -> Rational {
        let a = self.rng.gen_range(1..=self.config.numerator_bound as i64);
        let b = self.rng.gen_range(1..=self.config.denominator_bound as i64);
        let sign = if self.rng.gen_bool(0.5) { -1 } else { 1 };
        Rational::new((sign * a).into(), b.into())
    }

    pub fn point(&mut self) -> SamplePoint {
        SamplePoint { u: self.rational(), v: self.rational(), h: self.rational() }
    }

    /// Draws points until `accept` succeeds, at most `max_retries` times.
    pub fn accepted<T, E>(&mut self, mut accept: impl FnMut(&SamplePoint) -> Result<T, E>) -> Option<(SamplePoint, T)> {
        for _ in 0..self.config.max_retries {
            let p = self.point();
            if let Ok(x) = accept(&p) {
                return Some((p, x));
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint {
    pub u: Rational,
    pub v: Rational,
    pub h: Rational,
}

impl SamplePoint {
    pub fn to_point(&self) -> Point {
        Point::new().with(Var::U, self.u.clone()).with(Var::V, self.v.clone()).with(Var::H, self.h.clone())
    }
}

impl std::fmt::Display for SamplePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "u={}, v={}, h={}", fmt_rational(&self.u), fmt_rational(&self.v), fmt_rational(&self.h))
    }
}

#[derive(Serialize, Deserialize)]
struct PointText {
    u: String,
    v: String,
    h: String,
}

impl Serialize for SamplePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PointText { u: fmt_rational(&self.u), v: fmt_rational(&self.v), h: fmt_rational(&self.h) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SamplePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = PointText::deserialize(d)?;
        let parse = |x: &str| crate::scalar::parse_rational(x).map_err(serde::de::Error::custom);
        Ok(SamplePoint { u: parse(&t.u)?, v: parse(&t.v)?, h: parse(&t.h)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, Zero};

    #[test]
    fn deterministic_and_bounded() {
        let cfg = SamplerConfig::with_seed(7);
        let a: Vec<_> = (0..20).map({
            let mut s = cfg.sampler();
            move |_| s.rational()
        }).collect();
        let b: Vec<_> = (0..20).map({
            let mut s = cfg.sampler();
            move |_| s.rational()
        }).collect();
        assert_eq!(a, b);
        for x in &a {
            assert!(!x.is_zero());
            assert!(x.abs() <= Rational::from_integer(256.into()));
            assert!(*x.denom() <= 64.into());
        }
    }

    #[test]
    fn retries_are_bounded() {
        let mut s = SamplerConfig::with_seed(1).sampler();
        let mut calls = 0;
        let out: Option<(SamplePoint, ())> = s.accepted(|_| {
            calls += 1;
            Err(())
        });
        assert!(out.is_none());
        assert_eq!(calls, 32);
    }
}
