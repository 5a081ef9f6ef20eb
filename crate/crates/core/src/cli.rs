//! Run configuration, scan drivers and CSV output for the command-line tool.
//!
//! A configuration is a flat `key = value` text file. Values may be scalars,
//! comma-separated lists or ranges `lo:hi:n`. Environment variables with the
//! prefix [`ENV_PREFIX`] override the file, and explicit `key=value`
//! arguments override both. Keys are case-insensitive.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::caustic::{
    fringe_averaged_bridge, q_tilde_at, transition_density_airy_closed, transition_density_airy_quadrature,
    CausticFrame1D, WidthMode,
};
use crate::error::{Error, Result};
use crate::polygon::{tangency_order, PolygonPath};
use crate::quantum::{convolution_identity_suite, correlation_identity_check, EigenBasis1D};
use crate::section::build_section;
use crate::spectral::{spectral_bridge, SpectralParams};
use crate::symplectic::{Hamiltonian, HamiltonianModel, PhasePoint};
use crate::transition::{
    transition_density_1d, transition_density_mc, transition_density_spherical, McOptions, TransitionQuery,
};

/// Prefix of environment variables that override configuration keys, as in
/// `PHASEREFLECT_HBAR=0.01`.
pub const ENV_PREFIX: &str = "PHASEREFLECT_";

/// Status written for rows that computed cleanly.
pub const OK: &str = "ok";

/// Key/value settings of one run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
}

fn config_error(key: &str, reason: impl std::fmt::Display) -> Error {
    Error::Config(format!("`{key}`: {reason}"))
}

impl RunConfig {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            cfg.set(k, v);
        }
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.values
            .insert(key.trim().to_ascii_lowercase(), value.trim().to_string());
    }

    /// Applies `PREFIX_KEY=value` pairs from `vars`.
    pub fn apply_env<I: IntoIterator<Item = (String, String)>>(&mut self, vars: I) {
        for (k, v) in vars {
            if let Some(key) = k.strip_prefix(ENV_PREFIX) {
                self.set(key, &v);
            }
        }
    }

    /// Applies `key=value` arguments.
    pub fn apply_overrides<S: AsRef<str>>(&mut self, pairs: &[S]) -> Result<()> {
        for pair in pairs {
            let (k, v) = pair
                .as_ref()
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("override `{}` is not key=value", pair.as_ref())))?;
            self.set(k, v);
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(&key.to_ascii_lowercase()).map(String::as_str)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| config_error(key, format!("`{v}` is not a number"))),
        }
    }

    /// As [`f64_or`](Self::f64_or), rejecting non-positive values.
    pub fn positive_or(&self, key: &str, default: f64) -> Result<f64> {
        let v = self.f64_or(key, default)?;
        if v.is_finite() && v > 0.0 {
            Ok(v)
        } else {
            Err(config_error(key, format!("must be positive, got {v}")))
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| config_error(key, format!("`{v}` is not a non-negative integer"))),
        }
    }

    pub fn u64_or(&self, key: &str, default: u64) -> Result<u64> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| config_error(key, format!("`{v}` is not a non-negative integer"))),
        }
    }

    /// A list `a, b, c`, or a range `lo:hi:n` of `n` evenly spaced values.
    pub fn values_or(&self, key: &str, default: &str) -> Result<Vec<f64>> {
        let text = self.get(key).unwrap_or(default);
        parse_values(text).map_err(|reason| config_error(key, reason))
    }

    /// As [`values_or`](Self::values_or) for non-negative integers.
    pub fn indices_or(&self, key: &str, default: &str) -> Result<Vec<usize>> {
        self.values_or(key, default)?
            .into_iter()
            .map(|v| {
                if v >= 0.0 && v.fract() == 0.0 {
                    Ok(v as usize)
                } else {
                    Err(config_error(key, format!("{v} is not a non-negative integer")))
                }
            })
            .collect()
    }

    /// Output path, if one was configured.
    pub fn output(&self) -> Option<&str> {
        self.get("output")
    }

    /// Defaults, then the file, then the environment, then explicit
    /// overrides.
    pub fn assemble<S: AsRef<str>>(
        file: Option<&Path>,
        env: impl IntoIterator<Item = (String, String)>,
        overrides: &[S],
    ) -> Result<Self> {
        let mut cfg = match file {
            Some(p) => Self::from_file(p)?,
            None => Self::new(),
        };
        cfg.apply_env(env);
        cfg.apply_overrides(overrides)?;
        Ok(cfg)
    }
}

fn parse_values(text: &str) -> std::result::Result<Vec<f64>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let number = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{}` is not a number", s.trim()))
    };
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("range `{text}` is not lo:hi:n"));
        }
        let (lo, hi) = (number(parts[0])?, number(parts[1])?);
        let n: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("range count `{}` is not an integer", parts[2].trim()))?;
        return Ok(match n {
            0 => Vec::new(),
            1 => vec![lo],
            _ => (0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                .collect(),
        });
    }
    text.split(',').map(number).collect()
}

/// A table with a fixed column schema and a trailing status column.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    columns: Vec<String>,
    rows: Vec<(Vec<f64>, String)>,
}

fn clean_status(s: &str) -> String {
    s.replace([',', '\n', '\r'], ";")
}

impl ScanResult {
    /// Column names carry their units in brackets, as in `hbar[action]`.
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[(Vec<f64>, String)] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Appends a row. A NaN is only accepted with a status other than `ok`.
    pub fn push(&mut self, values: Vec<f64>, status: &str) -> Result<()> {
        if values.len() != self.columns.len() {
            return Err(Error::Config(format!(
                "row has {} values for {} columns",
                values.len(),
                self.columns.len()
            )));
        }
        if status == OK && values.iter().any(|v| v.is_nan()) {
            return Err(Error::Config("NaN in a row marked ok".into()));
        }
        self.rows.push((values, clean_status(status)));
        Ok(())
    }

    /// Values of the named column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self
            .columns
            .iter()
            .position(|c| c == name || c.split('[').next() == Some(name))?;
        Some(self.rows.iter().map(|r| r.0[i]).collect())
    }

    /// Comma-separated text with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push_str(",status\n");
        for (values, status) in &self.rows {
            for v in values {
                let _ = write!(out, "{v:.16e},");
            }
            out.push_str(status);
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

/// Collects row results computed in parallel, in scan order.
fn collect_rows(table: &mut ScanResult, rows: Vec<(Vec<f64>, String)>) -> Result<()> {
    for (values, status) in rows {
        table.push(values, &status)?;
    }
    Ok(())
}

fn status_of(problems: &[String]) -> String {
    if problems.is_empty() {
        OK.to_string()
    } else {
        problems.join("; ")
    }
}

/// Matrix elements, probabilities and identity residuals of the oscillator
/// eigenstates over a `(p, q)` grid.
///
/// Keys: `hbar` (1), `omega` (1), `kmax` (5), `sum_terms` (60), `p` and `q`
/// (`-1.5:1.5:4`).
pub fn cmd_wigner(cfg: &RunConfig) -> Result<ScanResult> {
    let hbar = cfg.positive_or("hbar", 1.0)?;
    let omega = cfg.positive_or("omega", 1.0)?;
    let kmax = cfg.usize_or("kmax", 5)?;
    let sum_terms = cfg.usize_or("sum_terms", 60)?.max(kmax);
    let ps = cfg.values_or("p", "-1.5:1.5:4")?;
    let qs = cfg.values_or("q", "-1.5:1.5:4")?;
    let basis = EigenBasis1D::new(omega, hbar, sum_terms)?;
    let mut table = ScanResult::new(&[
        "p[sqrt_action]",
        "q[sqrt_action]",
        "k[1]",
        "l[1]",
        "re_w_kl[1/action]",
        "im_w_kl[1/action]",
        "p_kl[1]",
        "convolution_residual[1]",
        "correlation_residual[1]",
        "sum_rule_k[1]",
    ]);
    let grid: Vec<(f64, f64)> = ps
        .iter()
        .flat_map(|&p| qs.iter().map(move |&q| (p, q)))
        .collect();
    let rows: Vec<Vec<(Vec<f64>, String)>> = grid
        .par_iter()
        .map(|&(p, q)| {
            let x = PhasePoint::new(vec![p, q])?;
            let m = kmax + 1;
            let (conv, problems) = match convolution_identity_suite(&basis, kmax, &x) {
                Ok(c) => (c.iter().map(|c| c.residual).collect(), vec![]),
                Err(e) => (vec![f64::NAN; m * m], vec![format!("convolution: {e}")]),
            };
            let mut out = Vec::with_capacity(m * m);
            for k in 0..m {
                let (corr, corr_problem) = match correlation_identity_check(&basis, k, &x) {
                    Ok(c) => (c.residual, None),
                    Err(e) => (f64::NAN, Some(format!("correlation: {e}"))),
                };
                let mut sum = 0.0;
                for l in 0..=sum_terms {
                    sum += basis.moyal_entry(k, l, &x)?.probability;
                }
                for l in 0..m {
                    let entry = basis.moyal_entry(k, l, &x)?;
                    let mut row_problems = problems.clone();
                    row_problems.extend(corr_problem.clone());
                    out.push((
                        vec![
                            p,
                            q,
                            k as f64,
                            l as f64,
                            entry.value.re,
                            entry.value.im,
                            entry.probability,
                            conv[k * m + l],
                            corr,
                            sum,
                        ],
                        status_of(&row_problems),
                    ));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    collect_rows(&mut table, rows.into_iter().flatten().collect())?;
    Ok(table)
}

/// Exact Lorentzian-smoothed spectral Wigner function of the oscillator
/// against its Airy approximation along a radius.
///
/// Keys: `hbar` (0.05), `omega` (1), `e` (5000), `epsilon` (`3 ħ ω`),
/// `z` (`-8:5:66`, the scaled distance from the shell).
pub fn cmd_spectral(cfg: &RunConfig) -> Result<ScanResult> {
    let hbar = cfg.positive_or("hbar", 0.05)?;
    let omega = cfg.positive_or("omega", 1.0)?;
    let e = cfg.positive_or("e", 5000.0)?;
    let eps = cfg.positive_or("epsilon", 3.0 * hbar * omega)?;
    let z = cfg.values_or("z", "-8:5:66")?;
    let mut table = ScanResult::new(&[
        "r[sqrt_action]",
        "z[1]",
        "w_exact[1/energy]",
        "w_airy[1/energy]",
    ]);
    if z.len() < 2 {
        return Ok(table);
    }
    let params = SpectralParams::new(e, eps, hbar)?;
    let bridge = spectral_bridge(&params, omega, (z[0], z[z.len() - 1]), z.len())?;
    for s in bridge.samples {
        table.push(vec![s.radius, s.z, s.exact, s.airy], OK)?;
    }
    Ok(table)
}

/// Classical transition densities along a scan of the reflection-centre
/// offset `Q̃`.
///
/// Keys: `n` (2 degrees of freedom), `omega` (1), `lambda` (0; a positive
/// value selects the quartic model), `hbar` (1), `e` (2), `e_prime` (1.5),
/// `q_tilde` (`0.1:2.0:20`), `samples` (20000), `seed` (1).
///
/// `p_closed` is the bracket sum for one degree of freedom and the harmonic
/// closed form otherwise; `p_mc` samples the configured model.
pub fn cmd_transition(cfg: &RunConfig) -> Result<ScanResult> {
    let n = cfg.usize_or("n", 2)?;
    if n == 0 {
        return Err(config_error("n", "need at least one degree of freedom"));
    }
    let omega = cfg.positive_or("omega", 1.0)?;
    let lambda = cfg.f64_or("lambda", 0.0)?;
    let hbar = cfg.positive_or("hbar", 1.0)?;
    let e = cfg.positive_or("e", 2.0)?;
    let e_prime = cfg.positive_or("e_prime", 1.5)?;
    let offsets = cfg.values_or("q_tilde", "0.1:2.0:20")?;
    let opts = McOptions::new(cfg.usize_or("samples", 20_000)?, cfg.u64_or("seed", 1)?);
    let model = if lambda == 0.0 {
        HamiltonianModel::spherical(omega, PhasePoint::zeros(n))?
    } else {
        HamiltonianModel::quartic(vec![omega; n], lambda)?
    };
    let mut table = ScanResult::new(&[
        "q_tilde[sqrt_action]",
        "q_s[sqrt_action]",
        "y_m_sq[action]",
        "p_closed[1/energy^2]",
        "p_mc[1/energy^2]",
        "p_mc_stderr[1/energy^2]",
        "caustic[1]",
    ]);
    let rows: Vec<(Vec<f64>, String)> = offsets
        .par_iter()
        .map(|&qt| {
            let mut problems = Vec::new();
            let geom = build_section(omega, qt, e, e_prime)?;
            let x = geom.reflection_centre(&PhasePoint::zeros(n));
            let query = TransitionQuery::new(model.clone(), x, e, e_prime, hbar)?;
            let mut caustic = 0.0;
            let closed = if n == 1 {
                match transition_density_1d(&query) {
                    Ok(v) => v,
                    Err(Error::Caustic { .. }) => {
                        caustic = 1.0;
                        problems.push("closed: shells tangent".to_string());
                        f64::INFINITY
                    }
                    Err(e) => {
                        problems.push(format!("closed: {e}"));
                        f64::NAN
                    }
                }
            } else {
                transition_density_spherical(&geom, n, hbar)?
            };
            let scale = (e + e_prime) / omega;
            if geom.y_m_sq.abs() <= 1e-12 * scale {
                caustic = 1.0;
            }
            let (mc, stderr) = if n == 1 {
                problems.push("mc: needs at least two degrees of freedom".into());
                (f64::NAN, f64::NAN)
            } else {
                match transition_density_mc(&query, &opts) {
                    Ok(est) => (est.value, est.stderr),
                    Err(err) => {
                        if matches!(err, Error::Caustic { .. }) {
                            caustic = 1.0;
                        }
                        problems.push(format!("mc: {err}"));
                        (f64::NAN, f64::NAN)
                    }
                }
            };
            Ok((
                vec![qt, geom.q_s, geom.y_m_sq, closed, mc, stderr, caustic],
                status_of(&problems),
            ))
        })
        .collect::<Result<_>>()?;
    collect_rows(&mut table, rows)?;
    Ok(table)
}

/// One-dimensional transition density across the caustic: Airy quadrature,
/// the closed `Ai²` form, the classical bracket sum and its fringe-averaged
/// comparison.
///
/// Keys: `hbar` (0.01, or a list), `omega` (1), `e` (2), `e_prime` (2),
/// `kappa` (1), `s` (`-12:3:16`, the offset from the caustic in units of
/// the Airy width).
pub fn cmd_caustic(cfg: &RunConfig) -> Result<ScanResult> {
    let hbars = cfg.values_or("hbar", "0.01")?;
    let omega = cfg.positive_or("omega", 1.0)?;
    let e = cfg.positive_or("e", 2.0)?;
    let e_prime = cfg.positive_or("e_prime", 2.0)?;
    let kappa = cfg.positive_or("kappa", 1.0)?;
    let offsets = cfg.values_or("s", "-12:3:16")?;
    if let Some(bad) = hbars.iter().find(|h| !(**h > 0.0)) {
        return Err(config_error("hbar", format!("must be positive, got {bad}")));
    }
    let model = HamiltonianModel::spherical(omega, PhasePoint::zeros(1))?;
    let mut table = ScanResult::new(&[
        "hbar[action]",
        "s[1]",
        "q_tilde[sqrt_action]",
        "p_quadrature[1/energy^2]",
        "p_closed[1/energy^2]",
        "p_classical[1/energy^2]",
        "bridge_quadrature[1/energy^2]",
        "bridge_classical[1/energy^2]",
    ]);
    let jobs: Vec<(f64, f64)> = hbars
        .iter()
        .flat_map(|&h| offsets.iter().map(move |&s| (h, s)))
        .collect();
    let rows: Vec<(Vec<f64>, String)> = jobs
        .par_iter()
        .map(|&(hbar, s)| {
            let mut problems = Vec::new();
            let base = CausticFrame1D::new(omega, hbar, 1.0, e, e_prime)?;
            let qt = q_tilde_at(&base, s)?;
            let frame = base.with_q_tilde(qt)?;
            let quad = match transition_density_airy_quadrature(&frame, WidthMode::Exact) {
                Ok(v) => v.value,
                Err(err) => {
                    problems.push(format!("quadrature: {err}"));
                    f64::NAN
                }
            };
            let closed = transition_density_airy_closed(&frame, kappa)?;
            let query = TransitionQuery::new(model.clone(), PhasePoint::new(vec![0.0, qt])?, e, e_prime, hbar)?;
            let classical = match transition_density_1d(&query) {
                Ok(v) => v,
                Err(Error::Caustic { .. }) => {
                    problems.push("classical: diverges at the caustic".into());
                    f64::INFINITY
                }
                Err(err) => {
                    problems.push(format!("classical: {err}"));
                    f64::NAN
                }
            };
            let (bq, bc) = match fringe_averaged_bridge(&frame) {
                Ok(b) => (b.quadrature, b.classical),
                Err(err) => {
                    problems.push(format!("bridge: {err}"));
                    (f64::NAN, f64::NAN)
                }
            };
            Ok((
                vec![hbar, s, qt, quad, closed, classical, bq, bc],
                status_of(&problems),
            ))
        })
        .collect::<Result<_>>()?;
    collect_rows(&mut table, rows)?;
    Ok(table)
}

/// Measurements on one random polygon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolygonRow {
    pub sides: usize,
    pub area: f64,
    pub translation_residual: f64,
    pub reflection_residual: f64,
    /// Change of area under an independent rotation of each `(p_i, q_i)` plane.
    pub rotation_residual: f64,
    /// Largest `|ξ_d + J ∂Δ/∂c_d|` over the centres.
    pub gradient_residual: f64,
    /// Largest area difference over the closures of an even polygon.
    pub closure_spread: f64,
    pub tangency_order: f64,
}

fn random_point(rng: &mut ChaCha8Rng, dof: usize, scale: f64) -> PhasePoint {
    PhasePoint::new((0..2 * dof).map(|_| scale * (2.0 * rng.random::<f64>() - 1.0)).collect())
        .expect("non-empty")
}

/// The polygon measurements for row `index` of a seeded suite.
pub fn polygon_row(seed: u64, index: u64, dof: usize, sides: usize, scale: f64, t: f64, ks: &[usize]) -> Result<PolygonRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let centres: Vec<PhasePoint> = (0..sides).map(|_| random_point(&mut rng, dof, scale)).collect();
    let poly = PolygonPath::new(centres)?;
    let area = poly.symplectic_area()?;
    let shift = random_point(&mut rng, dof, scale);
    let translation_residual = (poly.translated(&shift).symplectic_area()? - area).abs();
    let reflection_residual = (poly.reflected().symplectic_area()? - area).abs();
    let angles: Vec<f64> = (0..dof).map(|_| 2.0 * std::f64::consts::PI * rng.random::<f64>()).collect();
    let rotated = poly
        .centres()
        .iter()
        .map(|c| {
            let (p, q) = (c.p(), c.q());
            let (rp, rq): (Vec<f64>, Vec<f64>) = angles
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let (s, co) = a.sin_cos();
                    (co * p[i] - s * q[i], s * p[i] + co * q[i])
                })
                .unzip();
            PhasePoint::from_pq(&rp, &rq)
        })
        .collect::<Result<Vec<_>>>()?;
    let rotation_residual = (PolygonPath::new(rotated)?.symplectic_area()? - area).abs();
    let mut gradient_residual = 0.0f64;
    for d in 0..sides {
        let side = poly.open_polygon_side(d)?;
        let grad = poly.area_gradient_fd(d)?;
        gradient_residual = gradient_residual.max((&side + &grad.j()).norm());
    }

    // An even polygon forced closed by moving its last centre.
    let mut even: Vec<PhasePoint> = (0..sides + 1).map(|_| random_point(&mut rng, dof, scale)).collect();
    let alt = PolygonPath::new(even.clone())?.alternating_sum();
    let last = even.len() - 1;
    even[last] = &even[last] + &alt;
    let even = PolygonPath::new(even)?;
    let areas = (0..5)
        .map(|_| even.area_from(random_point(&mut rng, dof, scale)))
        .collect::<Result<Vec<f64>>>()?;
    let hi = areas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = areas.iter().cloned().fold(f64::INFINITY, f64::min);

    let osc = HamiltonianModel::spherical(1.0, PhasePoint::zeros(dof))?;
    let mut x0 = random_point(&mut rng, dof, 1.0);
    if osc.value(&x0) < 1e-2 {
        x0 = PhasePoint::basis(dof, 2 * dof - 1);
    }
    Ok(PolygonRow {
        sides,
        area,
        translation_residual,
        reflection_residual,
        rotation_residual,
        gradient_residual,
        closure_spread: hi - lo,
        tangency_order: tangency_order(&osc, &x0, t, ks)?,
    })
}

/// Randomised invariance (translation, reflection, rotation), side-formula, closure and tangency checks.
///
/// Keys: `seed` (1), `count` (100), `sides` (`3, 5, 7, 9`, cycled),
/// `dof` (1), `scale` (1), `t` (0.1), `k` (`4, 8, 16, 32`).
pub fn cmd_polygon(cfg: &RunConfig) -> Result<ScanResult> {
    let seed = cfg.u64_or("seed", 1)?;
    let count = cfg.usize_or("count", 100)?;
    let sides = cfg.indices_or("sides", "3, 5, 7, 9")?;
    let dof = cfg.usize_or("dof", 1)?;
    let scale = cfg.positive_or("scale", 1.0)?;
    let t = cfg.positive_or("t", 0.1)?;
    let ks = cfg.indices_or("k", "4, 8, 16, 32")?;
    if sides.is_empty() || sides.iter().any(|s| s % 2 == 0) {
        return Err(config_error("sides", "need odd side counts"));
    }
    if dof == 0 {
        return Err(config_error("dof", "need at least one degree of freedom"));
    }
    let mut table = ScanResult::new(&[
        "index[1]",
        "sides[1]",
        "area[action]",
        "translation_residual[action]",
        "reflection_residual[action]",
        "rotation_residual[action]",
        "gradient_residual[sqrt_action]",
        "closure_spread[action]",
        "tangency_order[1]",
    ]);
    let rows: Vec<(Vec<f64>, String)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let n = sides[i % sides.len()];
            Ok(match polygon_row(seed, i as u64, dof, n, scale, t, &ks) {
                Ok(r) => (
                    vec![
                        i as f64,
                        n as f64,
                        r.area,
                        r.translation_residual,
                        r.reflection_residual,
                        r.rotation_residual,
                        r.gradient_residual,
                        r.closure_spread,
                        r.tangency_order,
                    ],
                    OK.to_string(),
                ),
                Err(err) => {
                    let mut v = vec![f64::NAN; 9];
                    v[0] = i as f64;
                    v[1] = n as f64;
                    (v, format!("error: {err}"))
                }
            })
        })
        .collect::<Result<_>>()?;
    collect_rows(&mut table, rows)?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_precedence() {
        let mut cfg = RunConfig::parse("# run\nhbar = 0.5\nE_prime=1.25 # trailing\n\nq_tilde = 0:1:3\n").unwrap();
        assert_eq!(cfg.f64_or("hbar", 1.0).unwrap(), 0.5);
        assert_eq!(cfg.f64_or("e_prime", 0.0).unwrap(), 1.25);
        assert_eq!(cfg.values_or("q_tilde", "").unwrap(), vec![0.0, 0.5, 1.0]);
        cfg.apply_env(vec![
            ("PHASEREFLECT_HBAR".to_string(), "0.25".to_string()),
            ("OTHER".to_string(), "x".to_string()),
        ]);
        assert_eq!(cfg.f64_or("hbar", 1.0).unwrap(), 0.25);
        cfg.apply_overrides(&["hbar=0.125"]).unwrap();
        assert_eq!(cfg.f64_or("hbar", 1.0).unwrap(), 0.125);
        assert_eq!(cfg.f64_or("omega", 2.0).unwrap(), 2.0);
        assert!(cfg.get("other").is_none());
    }

    #[test]
    fn validation_names_the_key() {
        let cfg = RunConfig::parse("hbar = -1\neps = x").unwrap();
        let e = cfg.positive_or("hbar", 1.0).unwrap_err().to_string();
        assert!(e.contains("hbar"), "{e}");
        let e = cfg.f64_or("eps", 1.0).unwrap_err().to_string();
        assert!(e.contains("eps"), "{e}");
        assert!(RunConfig::parse("novalue").is_err());
        assert!(RunConfig::new().apply_overrides(&["x"]).is_err());
    }

    #[test]
    fn value_lists() {
        assert_eq!(parse_values("1, 2.5,3").unwrap(), vec![1.0, 2.5, 3.0]);
        assert_eq!(parse_values("2:4:1").unwrap(), vec![2.0]);
        assert!(parse_values("0:1:0").unwrap().is_empty());
        assert!(parse_values("").unwrap().is_empty());
        assert!(parse_values("0:1").is_err());
    }

    #[test]
    fn csv_format() {
        let mut t = ScanResult::new(&["a[1]", "b[energy]"]);
        t.push(vec![0.1, -2.0], OK).unwrap();
        t.push(vec![f64::NAN, 1.0], "failed, badly").unwrap();
        assert!(t.push(vec![f64::NAN, 1.0], OK).is_err());
        assert!(t.push(vec![1.0], OK).is_err());
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "a[1],b[energy],status");
        assert_eq!(lines[1], "1.0000000000000001e-1,-2.0000000000000000e0,ok");
        assert_eq!(lines[2], "NaN,1.0000000000000000e0,failed; badly");
        assert_eq!(t.column("b").unwrap(), vec![-2.0, 1.0]);
    }

    #[test]
    fn empty_grid_gives_header_only() {
        let cfg = RunConfig::parse("p = 0:1:0").unwrap();
        let t = cmd_wigner(&cfg).unwrap();
        assert!(t.is_empty());
        assert_eq!(t.to_csv().lines().count(), 1);
    }

    #[test]
    fn ground_state_column_is_gaussian() {
        let cfg = RunConfig::parse("kmax = 0\nsum_terms = 0\np = -1:1:3\nq = 0.5").unwrap();
        let t = cmd_wigner(&cfg).unwrap();
        let (p, w) = (t.column("p").unwrap(), t.column("re_w_kl").unwrap());
        for (p, w) in p.iter().zip(&w) {
            let exact = (-(p * p + 0.25)).exp() / std::f64::consts::PI;
            assert!((w - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn polygon_rows_are_reproducible() {
        let a = polygon_row(3, 7, 1, 5, 1.0, 0.1, &[4, 8, 16, 32]).unwrap();
        let b = polygon_row(3, 7, 1, 5, 1.0, 0.1, &[4, 8, 16, 32]).unwrap();
        assert_eq!(a, b);
        assert!(a.gradient_residual < 1e-8, "{}", a.gradient_residual);
        assert!(a.translation_residual < 1e-12);
        assert!(a.rotation_residual < 1e-12);
        assert!(a.closure_spread < 1e-12);
    }
}
