//! Maximization of `|γ|` over the unit sphere of `A`.
//!
//! The objective is `h(z) = |γ(z)|²`, smooth everywhere, with the same
//! maximizers as `|γ|`. The sphere of `A ≅ C⁴` is treated as the real sphere
//! `S⁷ ⊂ R⁸`. Complex vectors double as real gradients: component `i` holds
//! `∂h/∂x_i + i ∂h/∂y_i` for `z_i = x_i + i y_i`, which for holomorphic `γ` is
//! `2 γ · conj(∂γ/∂z_i)`.

use std::sync::LazyLock;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::invariants::{self, gamma_value, ACoords};
use crate::poly::{FloatPoly, PowerTable, NVARS};
use crate::qstate::random_acoords;
use crate::{Error, Result};

/// `3⁻⁹ = |γ(z_L)|`, the conjectured maximum of `|γ|` on the unit sphere.
pub const CONJECTURED_MAX: f64 = 1.0 / 19683.0;

/// Slack above [`CONJECTURED_MAX`] before a value counts as exceeding it.
pub const EXCESS_TOLERANCE: f64 = 1e-9;

/// Finite-difference step for the sphere Hessian.
pub const HESSIAN_STEP: f64 = 1e-5;

/// Largest `‖P∇h‖ / h` accepted by [`sphere_hessian_spectrum`]. The absolute
/// gradient is useless as a test since `h ≤ 3⁻¹⁸` on the whole sphere.
pub const CRITICAL_TOLERANCE: f64 = 1e-6;

/// Bound on Hessian eigenvalues divided by `h` used by [`certify_critical`].
pub const RELATIVE_EIGEN_TOLERANCE: f64 = 1e-4;

const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-15;
const MAX_STEP: f64 = 1.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Initial step, as an angle on the sphere.
    pub step: f64,
    /// Stop once `‖P∇h‖ / h` (the projected gradient of `log h`) falls below this.
    pub tol_grad: f64,
    pub seed: u64,
}

impl Default for OptConfig {
    fn default() -> Self {
        OptConfig { restarts: 50, max_iters: 5000, step: 0.1, tol_grad: 1e-9, seed: 1 }
    }
}

impl OptConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iters == 0 {
            return Err(Error::InvalidConfig("restarts and max_iters must be positive".into()));
        }
        if !(self.step > 0.0 && self.step.is_finite()) || !(self.tol_grad > 0.0 && self.tol_grad.is_finite()) {
            return Err(Error::InvalidConfig("step and tol_grad must be positive and finite".into()));
        }
        Ok(())
    }
}

/// Outcome of one restart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestartLog {
    pub restart: usize,
    /// Final `|γ|`.
    pub value: f64,
    pub iterations: usize,
    /// Final `‖P∇h‖`.
    pub grad_residual: f64,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    pub best_z: ACoords,
    /// `|γ(best_z)|`.
    pub best_value: f64,
    pub grad_residual: f64,
    pub best_restart: usize,
    pub per_restart: Vec<RestartLog>,
    /// True when some restart ended above `3⁻⁹ + 1e−9`; such a point would
    /// contradict the conjectured maximality of `|L⟩`.
    pub exceeds_conjectured_max: bool,
}

/// A single ascent run, including the objective after every accepted step.
#[derive(Clone, Debug)]
pub struct Ascent {
    pub z: ACoords,
    pub value: f64,
    pub iterations: usize,
    pub grad_residual: f64,
    pub converged: bool,
    pub history: Vec<f64>,
}

/// Floating copies of `∂γ/∂z_i`, built once from the exact polynomial.
static GAMMA_PARTIALS: LazyLock<[FloatPoly; NVARS]> =
    LazyLock::new(|| std::array::from_fn(|i| FloatPoly::new(&invariants::gamma().diff(i))));

type CVec = [Complex64; NVARS];

fn max_exponents_all(polys: &[FloatPoly; NVARS]) -> [u16; NVARS] {
    std::array::from_fn(|i| polys.iter().map(|p| p.max_exponents()[i]).max().unwrap_or(0))
}

fn dot_re(a: &CVec, b: &CVec) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x.conj() * y).re).sum()
}

fn norm(a: &CVec) -> f64 {
    dot_re(a, a).sqrt()
}

fn normalize(a: &CVec) -> CVec {
    let n = norm(a);
    a.map(|x| x / n)
}

/// `h(z) = |γ(z)|²`.
pub fn objective(z: &CVec) -> f64 {
    gamma_value(z).norm_sqr()
}

/// Euclidean gradient of `h` in the complex encoding.
pub fn gradient(z: &CVec) -> CVec {
    let g = gamma_value(z);
    let partials = &*GAMMA_PARTIALS;
    let powers = PowerTable::new(z, max_exponents_all(partials));
    std::array::from_fn(|i| 2.0 * g * partials[i].eval_with(&powers).conj())
}

/// Gradient projected onto the tangent space of the unit sphere at unit `x`.
fn projected_gradient(x: &CVec) -> CVec {
    let g = gradient(x);
    let radial = dot_re(x, &g);
    std::array::from_fn(|i| g[i] - radial * x[i])
}

/// Norm of the sphere gradient of `h` at `z / ‖z‖`.
pub fn critical_residual(z: &ACoords) -> Result<f64> {
    let x = z.normalized()?;
    Ok(norm(&projected_gradient(&x.0)))
}

fn to_real(a: &CVec) -> [f64; 2 * NVARS] {
    std::array::from_fn(|k| if k % 2 == 0 { a[k / 2].re } else { a[k / 2].im })
}

fn from_real(v: &[f64]) -> CVec {
    std::array::from_fn(|i| Complex64::new(v[2 * i], v[2 * i + 1]))
}

/// Orthonormal basis of the 7-dimensional tangent space at unit `x`.
fn tangent_basis(x: &CVec) -> Vec<[f64; 2 * NVARS]> {
    let mut basis = vec![to_real(x)];
    for k in 0..2 * NVARS {
        let mut v = [0.0; 2 * NVARS];
        v[k] = 1.0;
        // two passes of Gram-Schmidt for stability
        for _ in 0..2 {
            for b in &basis {
                let d: f64 = v.iter().zip(b).map(|(p, q)| p * q).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= d * bi;
                }
            }
        }
        let n = v.iter().map(|p| p * p).sum::<f64>().sqrt();
        if n > 1e-6 {
            basis.push(v.map(|p| p / n));
        }
        if basis.len() == 2 * NVARS {
            break;
        }
    }
    basis.remove(0);
    basis
}

/// Gradient of the degree-0 extension `y ↦ h(y/‖y‖)`.
fn extended_gradient(y: &CVec) -> [f64; 2 * NVARS] {
    let n = norm(y);
    let pg = projected_gradient(&normalize(y));
    to_real(&pg).map(|g| g / n)
}

/// Eigenvalues (ascending) of the Riemannian Hessian of `h` on the unit
/// sphere at `z / ‖z‖`, by central differences of the sphere gradient.
pub fn sphere_hessian_spectrum(z: &ACoords) -> Result<Vec<f64>> {
    let residual = critical_residual(z)?;
    let x = z.normalized()?.0;
    let h = objective(&x);
    if residual > CRITICAL_TOLERANCE * h {
        return Err(Error::NotCritical(residual));
    }
    let xr = to_real(&x);
    let basis = tangent_basis(&x);
    let dim = basis.len();
    let diffs: Vec<[f64; 2 * NVARS]> = basis
        .iter()
        .map(|v| {
            let shifted = |s: f64| from_real(&std::array::from_fn::<f64, 8, _>(|k| xr[k] + s * v[k]));
            let plus = extended_gradient(&shifted(HESSIAN_STEP));
            let minus = extended_gradient(&shifted(-HESSIAN_STEP));
            std::array::from_fn(|k| (plus[k] - minus[k]) / (2.0 * HESSIAN_STEP))
        })
        .collect();
    let h = DMatrix::from_fn(dim, dim, |j, k| {
        let a: f64 = basis[j].iter().zip(&diffs[k]).map(|(p, q)| p * q).sum();
        let b: f64 = basis[k].iter().zip(&diffs[j]).map(|(p, q)| p * q).sum();
        0.5 * (a + b)
    });
    let mut eig: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Projected-gradient ascent of `h` from `start`, with backtracking line
/// search along the normalized sphere gradient and renormalization as the
/// retraction.
pub fn ascend(start: &ACoords, cfg: &OptConfig) -> Result<Ascent> {
    cfg.validate()?;
    let mut x = start.normalized()?.0;
    let mut h = objective(&x);
    let mut t = cfg.step;
    let mut history = vec![h];
    let mut converged = false;
    let mut iterations = 0;
    let mut pg = projected_gradient(&x);
    while iterations < cfg.max_iters {
        let gn = norm(&pg);
        if gn <= cfg.tol_grad * h {
            converged = true;
            break;
        }
        if gn == 0.0 {
            break;
        }
        iterations += 1;
        let dir = pg.map(|g| g / gn);
        let mut accepted = false;
        while t >= MIN_STEP {
            let trial = normalize(&std::array::from_fn(|i| x[i] + t * dir[i]));
            let ht = objective(&trial);
            if ht >= h + ARMIJO * t * gn && ht > h {
                x = trial;
                h = ht;
                accepted = true;
                t = (2.0 * t).min(MAX_STEP);
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            // no ascent possible at machine precision
            converged = gn <= cfg.tol_grad.sqrt() * h;
            break;
        }
        history.push(h);
        pg = projected_gradient(&x);
    }
    let grad_residual = norm(&projected_gradient(&x));
    Ok(Ascent { z: ACoords(x), value: h.sqrt(), iterations, grad_residual, converged, history })
}

/// Maximizes `|γ|` over the unit sphere of `A` from `cfg.restarts` random
/// starts; restart `r` draws its start from a generator seeded with
/// `cfg.seed + r`.
pub fn maximize_abs_gamma(cfg: &OptConfig) -> Result<OptResult> {
    cfg.validate()?;
    let runs: Vec<Ascent> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(r as u64));
            let start = loop {
                let z = random_acoords(&mut rng);
                if z.norm() > 0.0 {
                    break z;
                }
            };
            ascend(&start, cfg)
        })
        .collect::<Result<_>>()?;
    let (best_restart, best) = runs
        .iter()
        .enumerate()
        .fold(None::<(usize, &Ascent)>, |acc, (r, a)| match acc {
            Some((_, b)) if b.value >= a.value => acc,
            _ => Some((r, a)),
        })
        .expect("at least one restart");
    let per_restart: Vec<RestartLog> = runs
        .iter()
        .enumerate()
        .map(|(r, a)| RestartLog {
            restart: r,
            value: a.value,
            iterations: a.iterations,
            grad_residual: a.grad_residual,
            converged: a.converged,
        })
        .collect();
    Ok(OptResult {
        best_z: best.z,
        best_value: best.value,
        grad_residual: best.grad_residual,
        best_restart,
        exceeds_conjectured_max: per_restart.iter().any(|r| r.value > CONJECTURED_MAX + EXCESS_TOLERANCE),
        per_restart,
    })
}

/// Criticality and second-order certificate for a point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalCertificate {
    pub z: ACoords,
    pub abs_gamma: f64,
    pub objective: f64,
    pub critical_residual: f64,
    pub hessian_eigenvalues: Vec<f64>,
    /// Eigenvalues divided by `h`, which makes their signs readable at a glance.
    pub relative_eigenvalues: Vec<f64>,
    pub max_eigenvalue: f64,
    pub max_relative_eigenvalue: f64,
    pub near_zero_eigenvalues: usize,
    pub passed: bool,
}

/// Certifies `z` as a critical point with negative semidefinite sphere
/// Hessian: residual `≤ 1e−8`, all eigenvalues `≤ 1e−6` and at least one
/// within `1e−6` of zero. Because `h` is tiny these absolute bounds are weak,
/// so the same conditions are also required of the eigenvalues divided by `h`
/// at tolerance [`RELATIVE_EIGEN_TOLERANCE`].
pub fn certify_critical(z: &ACoords) -> Result<CriticalCertificate> {
    let residual = critical_residual(z)?;
    let x = z.normalized()?;
    let h = objective(&x.0);
    let eig = sphere_hessian_spectrum(z)?;
    let max_eigenvalue = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let relative: Vec<f64> = eig.iter().map(|e| e / h).collect();
    let max_relative = relative.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let near_zero = eig.iter().filter(|e| e.abs() <= 1e-6).count();
    let near_zero_relative = relative.iter().filter(|e| e.abs() <= RELATIVE_EIGEN_TOLERANCE).count();
    Ok(CriticalCertificate {
        z: x,
        abs_gamma: h.sqrt(),
        objective: h,
        critical_residual: residual,
        passed: residual <= 1e-8
            && max_eigenvalue <= 1e-6
            && near_zero >= 1
            && max_relative <= RELATIVE_EIGEN_TOLERANCE
            && near_zero_relative >= 1,
        relative_eigenvalues: relative,
        max_eigenvalue,
        max_relative_eigenvalue: max_relative,
        near_zero_eigenvalues: near_zero,
        hessian_eigenvalues: eig,
    })
}
