//! Seeded generators for the toy data sets `a`–`i`, the synthetic
//! experiments `e1`–`e9` with their parameter grids, and the two-Gaussian
//! variance study (`var`).
//!
//! Randomness comes from ChaCha8 seeded with [`GenSpec::seed`]; within a
//! grid, data set `k` gets seed `master + k` (wrapping). Points of class
//! `"0"` come first, then class `"1"`; extra points (bridges, outliers)
//! are appended at the end.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dataset::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
    E8,
    E9,
    Var,
}

impl Generator {
    pub const ALL: [Generator; 19] = [
        Self::A,
        Self::B,
        Self::C,
        Self::D,
        Self::E,
        Self::F,
        Self::G,
        Self::H,
        Self::I,
        Self::E1,
        Self::E2,
        Self::E3,
        Self::E4,
        Self::E5,
        Self::E6,
        Self::E7,
        Self::E8,
        Self::E9,
        Self::Var,
    ];

    pub const TOYS: [Generator; 9] = [
        Self::A,
        Self::B,
        Self::C,
        Self::D,
        Self::E,
        Self::F,
        Self::G,
        Self::H,
        Self::I,
    ];

    pub const EXPERIMENTS: [Generator; 9] = [
        Self::E1,
        Self::E2,
        Self::E3,
        Self::E4,
        Self::E5,
        Self::E6,
        Self::E7,
        Self::E8,
        Self::E9,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::A => "a",
            Self::B => "b",
            Self::C => "c",
            Self::D => "d",
            Self::E => "e",
            Self::F => "f",
            Self::G => "g",
            Self::H => "h",
            Self::I => "i",
            Self::E1 => "e1",
            Self::E2 => "e2",
            Self::E3 => "e3",
            Self::E4 => "e4",
            Self::E5 => "e5",
            Self::E6 => "e6",
            Self::E7 => "e7",
            Self::E8 => "e8",
            Self::E9 => "e9",
            Self::Var => "var",
        }
    }

    /// Parameter names and their defaults.
    pub fn defaults(self) -> &'static [(&'static str, f64)] {
        match self {
            Self::E1 => &[("d", 4.0), ("sigma", 0.5)],
            Self::E2 => &[("d", 3.0), ("sigma", 1.0)],
            Self::E3 => &[("d", 6.0), ("c", 0.5)],
            Self::E4 => &[("d", 3.0), ("n_irrev", 10.0)],
            Self::E5 => &[("d", 3.0), ("p", 10.0)],
            Self::E6 => &[("s", 0.5), ("sigma", 0.3)],
            Self::E7 => &[("r", 8.0), ("sigma", 0.3)],
            Self::E8 => &[("sigma", 0.5)],
            Self::E9 => &[("n", 2.0), ("r", 10.0), ("sigma", 0.0)],
            Self::Var => &[("sigma", 1.0)],
            _ => &[],
        }
    }

    /// Whether the sweep should use the wide radius range.
    pub fn high_dimensional(self) -> bool {
        matches!(self, Self::E4 | Self::E5 | Self::E9)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown generator `{s}`")))
    }
}

/// One fully specified data set.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub generator: Generator,
    pub params: BTreeMap<String, f64>,
    /// Points per class.
    pub sizes: [usize; 2],
    pub seed: u64,
}

impl GenSpec {
    pub fn new(generator: Generator, seed: u64) -> Self {
        Self {
            generator,
            params: generator.defaults().iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            sizes: [500, 500],
            seed,
        }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn param(&self, key: &str) -> Result<f64> {
        self.params
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("{} needs parameter `{key}`", self.generator)))
    }

    /// `key=value` pairs joined by `;`.
    pub fn describe(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    fn validate(&self) -> Result<()> {
        let known = self.generator.defaults();
        for (k, v) in &self.params {
            if !known.iter().any(|(name, _)| name == k) {
                return Err(Error::InvalidParameter(format!(
                    "{} does not take parameter `{k}`",
                    self.generator
                )));
            }
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "`{k}` must be finite and non-negative, got {v}"
                )));
            }
            if matches!(k.as_str(), "n_irrev" | "p" | "n") && v.fract() != 0.0 {
                return Err(Error::InvalidParameter(format!("`{k}` must be an integer, got {v}")));
            }
        }
        if self.sizes.contains(&0) {
            return Err(Error::InvalidParameter("class sizes must be positive".into()));
        }
        Ok(())
    }
}

struct Builder {
    rng: ChaCha8Rng,
    dim: usize,
    values: Vec<f64>,
    labels: Vec<&'static str>,
}

impl Builder {
    fn new(seed: u64, dim: usize) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            dim,
            values: Vec::new(),
            labels: Vec::new(),
        }
    }

    fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    fn push(&mut self, point: &[f64], label: &'static str) {
        debug_assert_eq!(point.len(), self.dim);
        self.values.extend_from_slice(point);
        self.labels.push(label);
    }

    /// `count` draws from `N(mean, sigma² I)`.
    fn gaussian(&mut self, count: usize, mean: &[f64], sigma: f64, label: &'static str) {
        let mut p = vec![0.0; self.dim];
        for _ in 0..count {
            for (x, m) in p.iter_mut().zip(mean) {
                *x = m + sigma * self.normal();
            }
            self.push(&p, label);
        }
    }

    fn jitter(&mut self, p: &mut [f64], sigma: f64) {
        if sigma > 0.0 {
            for x in p.iter_mut() {
                *x += sigma * self.normal();
            }
        }
    }

    /// Uniform on the circle of `radius` around `center` restricted to angles `[a, b)`.
    #[allow(clippy::too_many_arguments)]
    fn arc(&mut self, count: usize, center: [f64; 2], radius: f64, a: f64, b: f64, sigma: f64, label: &'static str) {
        for _ in 0..count {
            let t = self.uniform(a, b);
            let mut p = [center[0] + radius * t.cos(), center[1] + radius * t.sin()];
            self.jitter(&mut p, sigma);
            self.push(&p, label);
        }
    }

    fn finish(self) -> Result<Dataset> {
        let names = (1..=self.dim).map(|i| format!("x{i}")).collect();
        Dataset::from_flat(self.values, self.dim, self.labels, names)
    }
}

fn two_gaussians(seed: u64, sizes: [usize; 2], dim: usize, d: f64, sigmas: [f64; 2]) -> Builder {
    let mut b = Builder::new(seed, dim);
    let mut mean = vec![0.0; dim];
    b.gaussian(sizes[0], &mean, sigmas[0], "0");
    mean[0] = d;
    b.gaussian(sizes[1], &mean, sigmas[1], "1");
    b
}

/// Arc length of the spiral `r = θ = t` from 0 to `t`.
fn spiral_length(t: f64) -> f64 {
    0.5 * (t * (1.0 + t * t).sqrt() + t.asinh())
}

fn spiral_parameter(s: f64, guess: f64) -> f64 {
    let mut t = guess;
    for _ in 0..50 {
        let step = (spiral_length(t) - s) / (1.0 + t * t).sqrt();
        t -= step;
        if step.abs() < 1e-13 * t.max(1.0) {
            break;
        }
    }
    t
}

/// Turns of the spiral pair: `t ∈ [π, 4π]`.
const SPIRAL_RANGE: (f64, f64) = (PI, 4.0 * PI);

/// Builds the data set described by `spec`; equal specs give identical output.
pub fn generate(spec: &GenSpec) -> Result<Dataset> {
    spec.validate()?;
    let [n1, n2] = spec.sizes;
    let seed = spec.seed;
    let b = match spec.generator {
        Generator::A => two_gaussians(seed, spec.sizes, 2, 2.0, [0.5, 0.5]),
        Generator::B => two_gaussians(seed, spec.sizes, 2, 4.0, [0.5, 0.5]),
        Generator::C => two_gaussians(seed, spec.sizes, 2, 8.0, [0.5, 0.5]),
        Generator::D => {
            let mut b = two_gaussians(seed, spec.sizes, 2, 8.0, [0.5, 0.5]);
            b.push(&[6.5, 0.0], "0");
            b
        }
        Generator::E => moons(seed, spec.sizes, 0.5, 0.3),
        Generator::F => circles(seed, spec.sizes, 8.0, 0.3),
        Generator::G => {
            let mut b = Builder::new(seed, 2);
            b.gaussian(n1 + n2, &[0.0, 0.0], 1.0, "0");
            let mut labels: Vec<&'static str> = (0..n1 + n2).map(|i| if i < n1 { "0" } else { "1" }).collect();
            labels.shuffle(&mut b.rng);
            b.labels = labels;
            b
        }
        Generator::H => {
            let mut b = Builder::new(seed, 2);
            b.gaussian(n1 + n2, &[0.0, 0.0], 1.0, "0");
            for i in 0..n1 + n2 {
                if b.values[2 * i] > 0.0 {
                    b.labels[i] = "1";
                }
            }
            b
        }
        Generator::I => {
            let mut b = Builder::new(seed, 2);
            let left = n1 / 2;
            b.gaussian(left, &[0.0, 0.0], 0.5, "0");
            b.gaussian(n2, &[4.0, 0.0], 0.5, "1");
            b.gaussian(n1 - left, &[8.0, 0.0], 0.5, "0");
            b
        }
        Generator::E1 => {
            let s = spec.param("sigma")?;
            two_gaussians(seed, spec.sizes, 2, spec.param("d")?, [s, s])
        }
        Generator::Var => {
            let s = spec.param("sigma")?;
            two_gaussians(seed, spec.sizes, 2, 4.5, [s, s])
        }
        Generator::E2 => two_gaussians(seed, spec.sizes, 2, spec.param("d")?, [0.5, spec.param("sigma")?]),
        Generator::E3 => {
            let d = spec.param("d")?;
            let mut b = two_gaussians(seed, spec.sizes, 2, d, [0.5, 0.5]);
            let m = n1 + n2;
            let x2: Vec<f64> = (0..m).map(|i| b.values[2 * i + 1]).collect();
            let sd = crate::stats::sample_sd(&x2);
            let count = (spec.param("c")? * m as f64).round() as usize;
            for _ in 0..count {
                let p = [b.uniform(0.0, d), 0.2 * sd * b.normal()];
                // nearest component mean; both means lie on the first axis
                let label = if p[0] <= d / 2.0 { "0" } else { "1" };
                b.push(&p, label);
            }
            b
        }
        Generator::E4 => {
            let extra = spec.param("n_irrev")? as usize;
            let d = spec.param("d")?;
            let mut b = Builder::new(seed, 2 + extra);
            let mut p = vec![0.0; 2 + extra];
            for (count, mean, label) in [(n1, 0.0, "0"), (n2, d, "1")] {
                for _ in 0..count {
                    p[0] = mean + 0.5 * b.normal();
                    p[1] = 0.5 * b.normal();
                    for x in &mut p[2..] {
                        *x = b.uniform(0.0, 1.0);
                    }
                    b.push(&p, label);
                }
            }
            b
        }
        Generator::E5 => {
            let p = spec.param("p")? as usize;
            if p == 0 {
                return Err(Error::InvalidParameter("`p` must be at least 1".into()));
            }
            two_gaussians(seed, spec.sizes, p, spec.param("d")?, [0.5, 0.5])
        }
        Generator::E6 => moons(seed, spec.sizes, spec.param("s")?, spec.param("sigma")?),
        Generator::E7 => circles(seed, spec.sizes, spec.param("r")?, spec.param("sigma")?),
        Generator::E8 => {
            let sigma = spec.param("sigma")?;
            let mut b = Builder::new(seed, 2);
            let (lo, hi) = (spiral_length(SPIRAL_RANGE.0), spiral_length(SPIRAL_RANGE.1));
            for (count, sign, label) in [(n1, 1.0, "0"), (n2, -1.0, "1")] {
                for _ in 0..count {
                    let s = b.uniform(lo, hi);
                    let t = spiral_parameter(s, (2.0 * s).sqrt());
                    let mut p = [sign * t * t.cos(), sign * t * t.sin()];
                    b.jitter(&mut p, sigma);
                    b.push(&p, label);
                }
            }
            b
        }
        Generator::E9 => {
            let n = spec.param("n")? as usize;
            if n == 0 {
                return Err(Error::InvalidParameter("`n` must be at least 1".into()));
            }
            let (r, sigma) = (spec.param("r")?, spec.param("sigma")?);
            let dim = n + 1;
            let mut b = Builder::new(seed, dim);
            let mut p = vec![0.0; dim];
            for (count, radius, label) in [(n1, 4.0, "0"), (n2, r, "1")] {
                for _ in 0..count {
                    let norm = loop {
                        for x in p.iter_mut() {
                            *x = b.normal();
                        }
                        let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
                        if norm > 0.0 {
                            break norm;
                        }
                    };
                    for x in p.iter_mut() {
                        *x *= radius / norm;
                    }
                    b.jitter(&mut p, sigma);
                    b.push(&p, label);
                }
            }
            b
        }
    };
    b.finish()
}

/// Lower moon: lower half of the radius-6 circle around the origin. Upper
/// moon: upper half, centered at `(6, −6s)`; the arcs touch at `s = 1`.
fn moons(seed: u64, sizes: [usize; 2], s: f64, sigma: f64) -> Builder {
    let mut b = Builder::new(seed, 2);
    b.arc(sizes[0], [6.0, -6.0 * s], 6.0, 0.0, PI, sigma, "0");
    b.arc(sizes[1], [0.0, 0.0], 6.0, PI, 2.0 * PI, sigma, "1");
    b
}

fn circles(seed: u64, sizes: [usize; 2], r: f64, sigma: f64) -> Builder {
    let mut b = Builder::new(seed, 2);
    b.arc(sizes[0], [0.0, 0.0], 4.0, 0.0, 2.0 * PI, sigma, "0");
    b.arc(sizes[1], [0.0, 0.0], r, 0.0, 2.0 * PI, sigma, "1");
    b
}

/// A generator's parameter grid, possibly subsampled.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub generator: Generator,
    /// Keep every `stride`-th value of each axis, starting with the first; 1 keeps all.
    pub stride: usize,
    pub seed: u64,
}

impl GridSpec {
    pub fn full(generator: Generator, seed: u64) -> Self {
        Self {
            generator,
            stride: 1,
            seed,
        }
    }
}

/// `count` values `(start + i·step) / 1000`, written in thousandths so
/// grid values are the nearest doubles to their decimal form.
fn milli(start: i64, step: i64, count: i64) -> Vec<f64> {
    (0..count).map(|i| (start + i * step) as f64 / 1000.0).collect()
}

fn with_tail(mut head: Vec<f64>, tail: &[f64]) -> Vec<f64> {
    head.extend_from_slice(tail);
    head
}

/// Parameter axes of a generator, outermost first. Toys have none.
pub fn grid_axes(generator: Generator) -> Vec<(&'static str, Vec<f64>)> {
    let far_d = || with_tail(milli(1500, 250, 15), &[10.0, 20.0, 50.0]);
    match generator {
        Generator::E1 => vec![("d", milli(2000, 125, 49)), ("sigma", milli(500, 50, 31))],
        Generator::E2 => vec![("d", milli(2000, 125, 25)), ("sigma", milli(500, 50, 61))],
        Generator::E3 => vec![("d", milli(4000, 250, 25)), ("c", milli(0, 50, 31))],
        Generator::E4 => vec![
            ("d", far_d()),
            (
                "n_irrev",
                with_tail(milli(0, 1000, 11), &[15.0, 20.0, 50.0, 100.0, 500.0, 1000.0, 2000.0]),
            ),
        ],
        Generator::E5 => vec![
            (
                "p",
                with_tail(milli(2000, 1000, 9), &[15.0, 20.0, 50.0, 100.0, 500.0, 1000.0, 2000.0]),
            ),
            ("d", far_d()),
        ],
        Generator::E6 => vec![("s", milli(0, 50, 20)), ("sigma", milli(0, 50, 41))],
        Generator::E7 => vec![("r", milli(5000, 125, 41)), ("sigma", milli(0, 50, 21))],
        Generator::E8 => vec![("sigma", milli(0, 50, 51))],
        Generator::E9 => vec![
            (
                "n",
                with_tail(milli(2000, 1000, 9), &[15.0, 20.0, 50.0, 100.0, 500.0, 1000.0]),
            ),
            ("r", vec![10.0, 20.0, 50.0]),
            ("sigma", vec![0.0, 0.25, 0.5]),
        ],
        Generator::Var => vec![("sigma", milli(500, 250, 7))],
        _ => Vec::new(),
    }
}

/// Cartesian product of the (strided) axes in row-major order; data set
/// `k` is seeded with `seed + k`.
pub fn grid(spec: &GridSpec) -> Vec<GenSpec> {
    let stride = spec.stride.max(1);
    let axes: Vec<(&str, Vec<f64>)> = grid_axes(spec.generator)
        .into_iter()
        .map(|(k, v)| (k, v.into_iter().step_by(stride).collect()))
        .collect();
    let mut combos: Vec<Vec<(&str, f64)>> = vec![Vec::new()];
    for (name, values) in &axes {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                values.iter().map(move |&v| {
                    let mut c = c.clone();
                    c.push((*name, v));
                    c
                })
            })
            .collect();
    }
    combos
        .into_iter()
        .enumerate()
        .map(|(k, combo)| {
            let mut g = GenSpec::new(spec.generator, spec.seed.wrapping_add(k as u64));
            for (name, v) in combo {
                g.params.insert(name.to_string(), v);
            }
            g
        })
        .collect()
}

/// `reps` independent two-Gaussian data sets with means `(0, 0)` and
/// `(4.5, 0)`, covariance `sigma² I`, 500 points each.
pub fn variance_dgp(sigma: f64, reps: usize, seed: u64) -> Result<Vec<Dataset>> {
    if reps == 0 {
        return Err(Error::InvalidParameter("reps must be at least 1".into()));
    }
    (0..reps)
        .map(|k| generate(&GenSpec::new(Generator::Var, seed.wrapping_add(k as u64)).with("sigma", sigma)))
        .collect()
}
