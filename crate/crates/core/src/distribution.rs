//! Piecewise-constant clearing-price densities on [0, 1].
//!
//! A [`StepDensity`] stores exact rational breakpoints and per-interval
//! heights; CDF, partial moments, and quantiles are all exact. Sampling goes
//! through a precomputed f64 inverse-CDF table.

use num::{One, Signed, Zero};
use rand::Rng;

use crate::{rat, Error, Rational, Result};

/// A piecewise-constant probability density on [0, 1].
///
/// Intervals use the half-open convention `[a, b)`, so the density is
/// deterministic at breakpoints and zero at and beyond 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepDensity {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

impl StepDensity {
    /// Build a density from breakpoints and per-interval heights.
    ///
    /// Requires strictly increasing breakpoints spanning exactly [0, 1],
    /// nonnegative heights, and total mass exactly 1.
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidDensity("need at least two breakpoints".into()));
        }
        if values.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidDensity(format!(
                "{} breakpoints require {} values, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                values.len()
            )));
        }
        if breakpoints[0] != Rational::zero() {
            return Err(Error::InvalidDensity("first breakpoint must be 0".into()));
        }
        if *breakpoints.last().expect("nonempty") != Rational::one() {
            return Err(Error::InvalidDensity("last breakpoint must be 1".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDensity(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| v.is_negative()) {
            return Err(Error::InvalidDensity("heights must be nonnegative".into()));
        }
        let mass: Rational = values
            .iter()
            .zip(breakpoints.windows(2))
            .map(|(v, w)| v * (&w[1] - &w[0]))
            .sum();
        if mass != Rational::one() {
            return Err(Error::InvalidDensity(format!("total mass is {mass}, not 1")));
        }
        Ok(Self { breakpoints, values })
    }

    /// The uniform density on [0, 1].
    pub fn uniform() -> Self {
        Self::new(vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1)]).expect("uniform is valid")
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Density height at `x` (half-open intervals; 0 outside [0, 1)).
    pub fn pdf(&self, x: &Rational) -> Rational {
        if x < &Rational::zero() || x >= &Rational::one() {
            return Rational::zero();
        }
        // last interval containing x under [a, b)
        let idx = self
            .breakpoints
            .windows(2)
            .position(|w| x >= &w[0] && x < &w[1])
            .expect("x in [0,1) lies in some interval");
        self.values[idx].clone()
    }

    /// Exact CDF, clamped to [0, 1] outside the support.
    pub fn cdf(&self, x: &Rational) -> Rational {
        if x <= &Rational::zero() {
            return Rational::zero();
        }
        if x >= &Rational::one() {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for (v, w) in self.values.iter().zip(self.breakpoints.windows(2)) {
            if x <= &w[0] {
                break;
            }
            let hi = if x < &w[1] { x } else { &w[1] };
            acc += v * (hi - &w[0]);
        }
        acc
    }

    /// Exact partial first moment `∫_a^b t·pdf(t) dt`.
    pub fn partial_first_moment(&self, a: &Rational, b: &Rational) -> Result<Rational> {
        if a > b {
            return Err(Error::OutOfRange(format!(
                "partial moment requires a <= b, got a={a}, b={b}"
            )));
        }
        let mut acc = Rational::zero();
        for (v, w) in self.values.iter().zip(self.breakpoints.windows(2)) {
            let lo = if a > &w[0] { a } else { &w[0] };
            let hi = if b < &w[1] { b } else { &w[1] };
            if lo < hi {
                // ∫ t·v dt = v (hi² − lo²)/2
                acc += v * (hi * hi - lo * lo) / rat(2, 1);
            }
        }
        Ok(acc)
    }

    /// Mean of the density.
    pub fn mean(&self) -> Rational {
        self.partial_first_moment(&Rational::zero(), &Rational::one())
            .expect("0 <= 1")
    }

    /// Smallest `x` with `cdf(x) >= u`.
    pub fn inverse_cdf(&self, u: &Rational) -> Result<Rational> {
        if u < &Rational::zero() || u > &Rational::one() {
            return Err(Error::OutOfRange(format!("quantile level {u} not in [0,1]")));
        }
        let mut acc = Rational::zero();
        for (v, w) in self.values.iter().zip(self.breakpoints.windows(2)) {
            let seg = v * (&w[1] - &w[0]);
            let next = &acc + &seg;
            if *u <= next {
                if v.is_zero() {
                    // flat CDF stretch: smallest x is its left end
                    return Ok(w[0].clone());
                }
                return Ok(&w[0] + (u - &acc) / v);
            }
            acc = next;
        }
        Ok(Rational::one())
    }

    /// Precompute an f64 inverse-transform sampler for this density.
    pub fn sampler(&self) -> StepSampler {
        let cum: Vec<f64> = {
            let mut acc = Rational::zero();
            let mut out = vec![0.0];
            for (v, w) in self.values.iter().zip(self.breakpoints.windows(2)) {
                acc += v * (&w[1] - &w[0]);
                out.push(crate::Scalar::as_f64(&acc));
            }
            out
        };
        StepSampler {
            breaks: self.breakpoints.iter().map(crate::Scalar::as_f64).collect(),
            cum,
        }
    }

    /// Parse the two-line density specification format:
    ///
    /// ```text
    /// breakpoints = 0, 1/4, 3/4, 1
    /// values = 1/2, 3/2, 1/2
    /// ```
    ///
    /// Numbers may be `p/q`, integers, or decimals; blank lines and lines
    /// starting with `#` are ignored.
    pub fn parse_spec(text: &str) -> Result<Self> {
        let mut breakpoints: Option<Vec<Rational>> = None;
        let mut values: Option<Vec<Rational>> = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line.split_once('=').ok_or_else(|| {
                Error::InvalidDensity(format!("expected `key = v1, v2, ...`, got {line:?}"))
            })?;
            let list = rest
                .split(',')
                .map(crate::parse_rational)
                .collect::<Result<Vec<_>>>()?;
            match key.trim() {
                "breakpoints" => breakpoints = Some(list),
                "values" => values = Some(list),
                other => {
                    return Err(Error::InvalidDensity(format!("unknown key {other:?}")));
                }
            }
        }
        match (breakpoints, values) {
            (Some(b), Some(v)) => Self::new(b, v),
            _ => Err(Error::InvalidDensity(
                "spec needs both `breakpoints` and `values` lines".into(),
            )),
        }
    }
}

impl Default for StepDensity {
    /// The built-in symmetric mid-peaked step density: height 1/2 on
    /// [0, 1/4), 3/2 on [1/4, 3/4), and 1/2 on [3/4, 1).
    fn default() -> Self {
        Self::new(
            vec![rat(0, 1), rat(1, 4), rat(3, 4), rat(1, 1)],
            vec![rat(1, 2), rat(3, 2), rat(1, 2)],
        )
        .expect("built-in density is valid")
    }
}

/// Inverse-transform sampler over f64 with a fixed CDF table.
#[derive(Debug, Clone)]
pub struct StepSampler {
    breaks: Vec<f64>,
    cum: Vec<f64>,
}

impl StepSampler {
    /// Map a uniform variate `u ∈ [0, 1)` through the inverse CDF.
    pub fn transform(&self, u: f64) -> f64 {
        let k = match self.cum.windows(2).position(|w| u >= w[0] && u < w[1]) {
            Some(k) => k,
            None => self.cum.len() - 2,
        };
        let span = self.cum[k + 1] - self.cum[k];
        if span <= 0.0 {
            return self.breaks[k];
        }
        let t = (u - self.cum[k]) / span;
        self.breaks[k] + t * (self.breaks[k + 1] - self.breaks[k])
    }

    /// Draw one value distributed per the underlying density.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.transform(rng.gen::<f64>())
    }
}
