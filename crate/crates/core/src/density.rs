//! Histogram approximation of the Bernoulli convolution ν_t by iterating the transfer operator
//! `μ ↦ ½ μ∘f0⁻¹ + ½ μ∘f1⁻¹`, with `f0(x) = tx`, `f1(x) = tx + 1 - t`.

use std::io::{self, Write};

use num_rational::BigRational;
use rayon::prelude::*;

use crate::curves::{curve_eval_f64, t_star};
use crate::error::{Error, Result};
use crate::words::BitSeq;

/// Largest `nt × bins` accepted by [`phi_grid`].
pub const GRID_CELL_CAP: usize = 1 << 28;

#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub t: f64,
    pub mass: Vec<f64>,
    pub iterations: usize,
    cum: Vec<f64>,
}

/// `ceil(ln bins / -ln t) + 10`
pub fn default_iterations(t: f64, bins: usize) -> usize {
    ((bins as f64).ln() / -t.ln()).ceil() as usize + 10
}

/// Pushforward of `mass` under `x ↦ t x`, splitting each bin's mass by overlap.
fn push_f0(mass: &[f64], t: f64) -> Vec<f64> {
    let n = mass.len();
    let mut out = vec![0.0; n];
    for (i, &m) in mass.iter().enumerate() {
        if m == 0.0 {
            continue;
        }
        let lo = t * i as f64;
        let hi = t * (i + 1) as f64;
        let j = lo.floor() as usize;
        let cut = (j + 1) as f64;
        if hi <= cut || j + 1 >= n {
            out[j.min(n - 1)] += m;
        } else {
            let left = (cut - lo) / (hi - lo);
            out[j] += m * left;
            out[j + 1] += m * (1.0 - left);
        }
    }
    out
}

/// One application of the transfer operator, renormalized; symmetric input stays exactly symmetric.
pub fn transfer_step(mass: &[f64], t: f64) -> Vec<f64> {
    let n = mass.len();
    let a = push_f0(mass, t);
    let rev: Vec<f64> = mass.iter().rev().cloned().collect();
    let b = push_f0(&rev, t);
    let mut out: Vec<f64> = (0..n).map(|i| 0.5 * (a[i] + b[n - 1 - i])).collect();
    let s: f64 = out.iter().sum();
    for x in out.iter_mut() {
        *x /= s;
    }
    out
}

impl Histogram {
    pub fn from_mass(t: f64, mass: Vec<f64>, iterations: usize) -> Histogram {
        let mut cum = Vec::with_capacity(mass.len() + 1);
        let mut acc = 0.0;
        cum.push(0.0);
        for &m in &mass {
            acc += m;
            cum.push(acc);
        }
        Histogram { t, mass, iterations, cum }
    }

    pub fn bins(&self) -> usize {
        self.mass.len()
    }

    pub fn bin_width(&self) -> f64 {
        1.0 / self.bins() as f64
    }

    /// Mass of `[0, x]` with linear interpolation inside the bin.
    pub fn cdf(&self, x: f64) -> f64 {
        let n = self.bins();
        if x <= 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return self.cum[n];
        }
        let pos = x * n as f64;
        let k = (pos.floor() as usize).min(n - 1);
        self.cum[k] + (pos - k as f64) * self.mass[k]
    }

    /// `ν[a, b]` from the interpolated CDF.
    pub fn interval_mass(&self, a: f64, b: f64) -> f64 {
        (self.cdf(b) - self.cdf(a)).max(0.0)
    }

    /// Density value (mean 1) of the bin containing `x`.
    pub fn density_at(&self, x: f64) -> f64 {
        let n = self.bins();
        let k = ((x * n as f64).floor() as usize).min(n - 1);
        self.mass[k] * n as f64
    }

    /// Mass scaled to mean 1.
    pub fn standardized(&self) -> Vec<f64> {
        let n = self.bins() as f64;
        self.mass.iter().map(|m| m * n).collect()
    }
}

/// Histogram of ν_t with `bins` bins after `iters` transfer steps from the uniform start.
pub fn approximate(t: f64, bins: usize, iters: Option<usize>) -> Result<Histogram> {
    if !(0.5..1.0).contains(&t) {
        return Err(Error::Domain(format!("t = {t} is not in [1/2, 1)")));
    }
    if bins < 2 {
        return Err(Error::InvalidInput("bins must be at least 2".into()));
    }
    let iters = iters.unwrap_or_else(|| default_iterations(t, bins));
    let mut mass = vec![1.0 / bins as f64; bins];
    for _ in 0..iters {
        mass = transfer_step(&mass, t);
    }
    Ok(Histogram::from_mass(t, mass, iters))
}

/// `|F_t(y) - target|`.
pub fn residual_at(h: &Histogram, y: f64, target: f64) -> f64 {
    (h.cdf(y) - target).abs()
}

/// `|F_t(y_b(t)) - b|`, valid for `t ≤ t*(b)`.
pub fn quantile_residual(b: &BitSeq, h: &Histogram) -> Result<f64> {
    let ts = t_star(b)?;
    let t_exact = BigRational::from_float(h.t).ok_or_else(|| Error::InvalidInput("t is not finite".into()))?;
    if ts.cmp_rational(&t_exact) == std::cmp::Ordering::Less {
        return Err(Error::Domain(format!("t = {} exceeds t*({b}) = {:.6}", h.t, ts.to_f64())));
    }
    Ok(residual_at(h, curve_eval_f64(b, h.t), b.to_f64()))
}

/// Largest `|F(g_i(x)) - (2F(x) mod 1)|` over samples outside `D = [1-t, t]`.
pub fn conjugacy_residual(h: &Histogram, samples: &[f64]) -> Result<f64> {
    let t = h.t;
    let beta = 1.0 / t;
    let mut worst: f64 = 0.0;
    for &x in samples {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("{x} is not in [0,1]")));
        }
        let r = if x < 1.0 - t {
            (h.cdf(beta * x) - 2.0 * h.cdf(x)).abs()
        } else if x > t {
            (h.cdf(beta * x + 1.0 - beta) - (2.0 * h.cdf(x) - 1.0)).abs()
        } else {
            return Err(Error::Domain(format!("{x} lies in the overlap region")));
        };
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Least-squares slope of `log ν(U(x,s))` against `log s` and its R².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DimensionFit {
    pub slope: f64,
    pub r2: f64,
}

pub fn local_dim_estimate(h: &Histogram, x: f64, radii: &[f64]) -> Result<DimensionFit> {
    if radii.len() < 4 {
        return Err(Error::InvalidInput("need at least 4 radii".into()));
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidInput("radii must decrease".into()));
    }
    if radii.iter().any(|&r| r < 2.0 * h.bin_width()) {
        return Err(Error::Domain("radius below two bin widths".into()));
    }
    let pts: Vec<(f64, f64)> = radii.iter().map(|&s| (s.ln(), h.interval_mass(x - s, x + s).ln())).collect();
    if pts.iter().any(|p| !p.1.is_finite()) {
        return Err(Error::Domain("zero mass in a ball".into()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(DimensionFit { slope, r2 })
}

/// Standardized histograms (mean 1) for `nt` parameters spread evenly over `[t_min, t_max]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiGrid {
    pub t_values: Vec<f64>,
    pub bins: usize,
    /// Row-major, one row per parameter.
    pub values: Vec<f64>,
}

impl PhiGrid {
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.bins..(i + 1) * self.bins]
    }

    pub fn value_at(&self, i: usize, x: f64) -> f64 {
        let k = ((x * self.bins as f64).floor() as usize).min(self.bins - 1);
        self.row(i)[k]
    }

    /// Bin index range covering `[x0, x1]`.
    pub fn bin_range(&self, x0: f64, x1: f64) -> std::ops::Range<usize> {
        let n = self.bins as f64;
        let a = ((x0 * n).floor().max(0.0) as usize).min(self.bins - 1);
        let b = ((x1 * n).ceil() as usize).clamp(a + 1, self.bins);
        a..b
    }

    pub fn x_center(&self, k: usize) -> f64 {
        (k as f64 + 0.5) / self.bins as f64
    }
}

pub fn phi_grid(t_min: f64, t_max: f64, nt: usize, bins: usize, iters: Option<usize>) -> Result<PhiGrid> {
    if !(0.5 <= t_min && t_min < t_max && t_max < 1.0) {
        return Err(Error::Domain(format!("need 1/2 ≤ t_min < t_max < 1, got [{t_min}, {t_max}]")));
    }
    if nt == 0 || bins < 2 {
        return Err(Error::InvalidInput("nt ≥ 1 and bins ≥ 2 required".into()));
    }
    if nt.saturating_mul(bins) > GRID_CELL_CAP {
        return Err(Error::ResourceCap(format!("{nt} × {bins} cells exceed {GRID_CELL_CAP}")));
    }
    let t_values: Vec<f64> = (0..nt)
        .map(|i| if nt == 1 { t_min } else { t_min + (t_max - t_min) * i as f64 / (nt - 1) as f64 })
        .collect();
    let rows: Vec<Vec<f64>> = t_values
        .par_iter()
        .map(|&t| approximate(t, bins, iters).map(|h| h.standardized()))
        .collect::<Result<_>>()?;
    Ok(PhiGrid { t_values, bins, values: rows.concat() })
}

/// Pixel layout shared by the image writers: column = parameter, row = x bin, x increasing upward.
fn window_pixels(g: &PhiGrid, x0: f64, x1: f64) -> (usize, usize, Vec<f64>) {
    let r = g.bin_range(x0, x1);
    let (w, h) = (g.t_values.len(), r.len());
    let mut px = Vec::with_capacity(w * h);
    for k in r.rev() {
        for i in 0..w {
            px.push(g.row(i)[k]);
        }
    }
    (w, h, px)
}

fn scaled(v: f64, vmax: f64, top: f64) -> f64 {
    (top * v / vmax).clamp(0.0, top)
}

/// Binary PGM; gray = clamp(maxval · v / vmax), 8-bit or big-endian 16-bit.
pub fn write_pgm<W: Write>(out: &mut W, g: &PhiGrid, x0: f64, x1: f64, vmax: f64, sixteen_bit: bool) -> io::Result<()> {
    let (w, h, px) = window_pixels(g, x0, x1);
    let maxval = if sixteen_bit { 65535 } else { 255 };
    write!(out, "P5\n{w} {h}\n{maxval}\n")?;
    let mut buf = Vec::with_capacity(px.len() * 2);
    for v in px {
        let q = scaled(v, vmax, maxval as f64) as u32;
        if sixteen_bit {
            buf.extend_from_slice(&(q as u16).to_be_bytes());
        } else {
            buf.push(q as u8);
        }
    }
    out.write_all(&buf)
}

/// Colormap stops at 0, ¼, ½, ¾, 1 of `v / vmax`: black, dark blue, light blue, yellow, white.
pub const COLORMAP: [[f64; 3]; 5] =
    [[0.0, 0.0, 0.0], [0.0, 0.0, 160.0], [0.0, 160.0, 255.0], [255.0, 255.0, 0.0], [255.0, 255.0, 255.0]];

pub fn colormap(u: f64) -> [u8; 3] {
    let u = u.clamp(0.0, 1.0) * 4.0;
    let k = (u.floor() as usize).min(3);
    let f = u - k as f64;
    let mut c = [0u8; 3];
    for (i, ch) in c.iter_mut().enumerate() {
        *ch = (COLORMAP[k][i] + f * (COLORMAP[k + 1][i] - COLORMAP[k][i])).round() as u8;
    }
    c
}

/// Binary PPM with [`COLORMAP`].
pub fn write_ppm<W: Write>(out: &mut W, g: &PhiGrid, x0: f64, x1: f64, vmax: f64) -> io::Result<()> {
    let (w, h, px) = window_pixels(g, x0, x1);
    write!(out, "P6\n{w} {h}\n255\n")?;
    let buf: Vec<u8> = px.into_iter().flat_map(|v| colormap(scaled(v, vmax, 1.0))).collect();
    out.write_all(&buf)
}

/// CSV with header `t,<bin centers>` and one row per parameter, restricted to `[x0, x1]`.
pub fn write_csv<W: Write>(out: &mut W, g: &PhiGrid, x0: f64, x1: f64) -> io::Result<()> {
    let r = g.bin_range(x0, x1);
    let header: Vec<String> = r.clone().map(|k| format!("{:.9}", g.x_center(k))).collect();
    writeln!(out, "t,{}", header.join(","))?;
    for (i, t) in g.t_values.iter().enumerate() {
        let row: Vec<String> = g.row(i)[r.clone()].iter().map(|v| format!("{v:.9e}")).collect();
        writeln!(out, "{t:.9},{}", row.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn uniform_at_half() {
        let h = approximate(0.5, 64, Some(20)).unwrap();
        for m in &h.mass {
            assert!((m - 1.0 / 64.0).abs() < 1e-15);
        }
    }

    #[test]
    fn cdf_basics() {
        let h = approximate(0.6, 1000, None).unwrap();
        assert_eq!(h.cdf(0.0), 0.0);
        assert!((h.cdf(1.0) - 1.0).abs() < 1e-12);
        assert!((h.cdf(0.5) - 0.5).abs() < 1e-12);
        assert_eq!(default_iterations(0.6, 1000), 14 + 10);
    }

    #[test]
    fn conjugacy_at_zero() {
        let h = approximate(0.6, 500, None).unwrap();
        assert_eq!(conjugacy_residual(&h, &[0.0]).unwrap(), 0.0);
        assert!(conjugacy_residual(&h, &[0.5]).is_err());
    }

    #[test]
    fn pgm_header_and_size() {
        let g = phi_grid(0.55, 0.6, 3, 100, Some(10)).unwrap();
        let mut buf = vec![];
        write_pgm(&mut buf, &g, 0.0, 1.0, 2.0, false).unwrap();
        assert!(buf.starts_with(b"P5\n3 100\n255\n"));
        assert_eq!(buf.len(), "P5\n3 100\n255\n".len() + 300);
        let mut buf16 = vec![];
        write_pgm(&mut buf16, &g, 0.0, 1.0, 2.0, true).unwrap();
        assert_eq!(buf16.len(), "P5\n3 100\n65535\n".len() + 600);
        assert_eq!(colormap(0.0), [0, 0, 0]);
        assert_eq!(colormap(1.0), [255, 255, 255]);
        assert!(phi_grid(0.55, 0.6, 1 << 15, 1 << 14, Some(1)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn mass_symmetric_and_conserved(t in 0.5f64..0.99, bins in 2usize..400, iters in 0usize..30) {
            let h = approximate(t, bins, Some(iters)).unwrap();
            let s: f64 = h.mass.iter().sum();
            prop_assert!((s - 1.0).abs() < 1e-12);
            for i in 0..bins {
                prop_assert!(h.mass[i] >= 0.0);
                prop_assert!((h.mass[i] - h.mass[bins - 1 - i]).abs() < 1e-12);
            }
        }
    }
}
