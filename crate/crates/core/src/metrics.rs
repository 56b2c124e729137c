//! Left-hand sides: commutator norms, disorder-averaged curves, localization fits.

use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{set_dist, BoundId};
use crate::error::{Error, Result};
use crate::evolution::{OneBody, StaticSpectrum};
use crate::hamiltonians::{build_h_omega, one_body_hamiltonian, sample_disorder_stream, ChainParams};
use crate::linalg::{cmul, hermitian_defect, hermitian_norm, spectral_norm, DenseMatrix};
use crate::pauli::{Axis, Chain, PauliString, SpinOperator};

/// Supports of A, B and the perturbation, with the derived distances.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportGeometry {
    pub supp_a: Vec<i32>,
    pub supp_b: Vec<i32>,
    pub perturbation: Vec<i32>,
    /// Support of `[E, C]`, the region `d` is measured from.
    pub commutator_region: Vec<i32>,
    pub l: usize,
    pub r: usize,
    pub d: usize,
}

impl SupportGeometry {
    pub fn new(supp_a: Vec<i32>, supp_b: Vec<i32>, perturbation: Vec<i32>, commutator_region: Vec<i32>) -> Result<Self> {
        if supp_a.is_empty() || supp_b.is_empty() {
            return Err(Error::InvalidParams("supports of A and B must be nonempty".into()));
        }
        let l = set_dist(&supp_a, &supp_b);
        if l == 0 {
            return Err(Error::InvalidParams("supports of A and B overlap".into()));
        }
        let far = |region: &[i32]| {
            if region.is_empty() {
                0
            } else {
                set_dist(&supp_a, region).max(set_dist(&supp_b, region))
            }
        };
        let r = far(&perturbation);
        let d = far(&commutator_region);
        Ok(SupportGeometry { supp_a, supp_b, perturbation, commutator_region, l, r, d })
    }

    /// Single bond at `p`: perturbation `{p, p+1}`, commutator region `[p-2, p+3]`.
    ///
    /// At least one of A, B must avoid the bond. The interval has six sites, so
    /// `d ≥ (l - 5)/2` always holds and is checked.
    pub fn lemma2(supp_a: Vec<i32>, supp_b: Vec<i32>, p: i32) -> Result<Self> {
        let bond = vec![p, p + 1];
        if set_dist(&supp_a, &bond) == 0 && set_dist(&supp_b, &bond) == 0 {
            return Err(Error::Precondition("A and B may not both touch the bond".into()));
        }
        let g = SupportGeometry::new(supp_a, supp_b, bond, (p - 2..=p + 3).collect())?;
        if 2 * g.d + 5 < g.l {
            return Err(Error::Precondition(format!("d = {} is below (l - 5)/2 with l = {}", g.d, g.l)));
        }
        Ok(g)
    }

    pub fn dist_a_to(&self, sites: &[i32]) -> usize {
        set_dist(&self.supp_a, sites)
    }
}

/// Spectral norm of `[A_t, B]`.
pub fn commutator_norm(a_t: &DenseMatrix, b: &SpinOperator) -> Result<f64> {
    let bd = b.to_dense()?;
    if a_t.nrows() != bd.nrows() || a_t.ncols() != bd.ncols() {
        return Err(Error::DimensionMismatch { expected: bd.nrows(), got: a_t.nrows() });
    }
    Ok(dense_commutator_norm(a_t, &bd))
}

/// Uses the Hermitian solver on `i[A,B]` when both inputs are Hermitian.
pub fn dense_commutator_norm(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    let k = cmul(a, b) - cmul(b, a);
    if hermitian_defect(a) <= 1e-12 && hermitian_defect(b) <= 1e-12 {
        hermitian_norm(&k.map(|z| z * Complex64::new(0.0, 1.0)))
    } else {
        spectral_norm(&k)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Auto,
    /// One-body propagator; needs Δ = 0 and single-site σ^z for A and B.
    FreeFermion,
    /// Principal angles between eigenprojectors; needs diagonal Pauli strings.
    SectorProjector,
    /// Blockwise Heisenberg evolution; needs magnetization-conserving A and B.
    SectorGeneric,
    Dense,
}

#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub params: ChainParams,
    pub a: SpinOperator,
    pub b: SpinOperator,
    pub times: Vec<f64>,
    pub realizations: usize,
    pub seed: u64,
    pub backend: Backend,
}

#[derive(Clone, Debug)]
pub struct MeasuredCurve {
    pub times: Vec<f64>,
    /// `samples[r][k]`: realization `r` at `times[k]`.
    pub samples: Vec<Vec<f64>>,
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
    /// Mean over realizations of the per-realization supremum over the grid.
    pub sup_mean: f64,
    pub sup_stderr: f64,
    pub backend: Backend,
    pub realizations: usize,
    pub seed: u64,
}

pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn single_z_site(op: &SpinOperator) -> Option<(f64, i32)> {
    let (c, mask) = diagonal_string(op)?;
    if mask.count_ones() != 1 {
        return None;
    }
    Some((c, op.chain().first() + mask.trailing_zeros() as i32))
}

/// Diagonal Pauli string as (real coefficient, sign mask).
fn diagonal_string(op: &SpinOperator) -> Option<(f64, usize)> {
    let (c, s) = op.as_single()?;
    if !s.is_diagonal() || s.is_identity() || s.phase.power() % 2 == 1 {
        return None;
    }
    let c = c * s.phase.to_complex();
    if c.im != 0.0 {
        return None;
    }
    let (_, sign, _) = s.masks(&op.chain());
    Some((c.re, sign))
}

fn conserves(op: &SpinOperator) -> bool {
    op.to_blocks(&crate::sector::Partition::magnetization(op.n_sites())).is_ok()
}

fn resolve(spec: &CurveSpec) -> Backend {
    let no_bonds = spec.params.delta == 0.0 || spec.params.zz_sites.is_empty();
    match spec.backend {
        Backend::Auto => {
            if no_bonds && single_z_site(&spec.a).is_some() && single_z_site(&spec.b).is_some() {
                Backend::FreeFermion
            } else if diagonal_string(&spec.a).is_some() && diagonal_string(&spec.b).is_some() {
                Backend::SectorProjector
            } else if conserves(&spec.a) && conserves(&spec.b) {
                Backend::SectorGeneric
            } else {
                Backend::Dense
            }
        }
        b => b,
    }
}

fn check_backend(spec: &CurveSpec, backend: Backend) -> Result<()> {
    let bad = |m: &str| Err(Error::Precondition(format!("backend {backend:?}: {m}")));
    match backend {
        Backend::FreeFermion => {
            if spec.params.delta != 0.0 && !spec.params.zz_sites.is_empty() {
                return bad("needs Delta = 0");
            }
            if single_z_site(&spec.a).is_none() || single_z_site(&spec.b).is_none() {
                return bad("needs single-site sigma^z observables");
            }
        }
        Backend::SectorProjector => {
            if diagonal_string(&spec.a).is_none() || diagonal_string(&spec.b).is_none() {
                return bad("needs diagonal Pauli strings");
            }
        }
        Backend::SectorGeneric => {
            if !conserves(&spec.a) || !conserves(&spec.b) {
                return bad("needs magnetization-conserving observables");
            }
        }
        _ => {}
    }
    Ok(())
}

/// `‖[A(t), B]‖` on a time grid for every realization, averaged.
pub fn measure_curve(spec: &CurveSpec) -> Result<MeasuredCurve> {
    spec.params.validate()?;
    if spec.realizations == 0 {
        return Err(Error::InvalidParams("need at least one realization".into()));
    }
    let chain = spec.params.chain();
    if spec.a.chain() != chain || spec.b.chain() != chain {
        return Err(Error::InvalidParams("A and B must live on the chain of the parameters".into()));
    }
    if spec.times.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidParams("time grid must be finite".into()));
    }
    let backend = resolve(spec);
    check_backend(spec, backend)?;
    let cap = 2.0 * spec.a.coefficient_norm() * spec.b.coefficient_norm();
    let samples: Vec<Vec<f64>> = (0..spec.realizations)
        .into_par_iter()
        .map(|r| {
            realization_curve(spec, backend, r).map_err(|e| Error::Realization { index: r, source: Box::new(e) })
        })
        .collect::<Result<Vec<_>>>()?;
    for (r, row) in samples.iter().enumerate() {
        if let Some(v) = row.iter().find(|&&v| v > cap * (1.0 + 1e-9) + 1e-12) {
            return Err(Error::Realization {
                index: r,
                source: Box::new(Error::Precondition(format!("commutator norm {v} exceeds 2|A||B| = {cap}"))),
            });
        }
    }
    Ok(summarize(spec, backend, samples))
}

fn summarize(spec: &CurveSpec, backend: Backend, samples: Vec<Vec<f64>>) -> MeasuredCurve {
    let nt = spec.times.len();
    let mut mean = Vec::with_capacity(nt);
    let mut stderr = Vec::with_capacity(nt);
    for k in 0..nt {
        let col: Vec<f64> = samples.iter().map(|row| row[k]).collect();
        let (m, s) = mean_stderr(&col);
        mean.push(m);
        stderr.push(s);
    }
    let sups: Vec<f64> = samples.iter().map(|row| row.iter().copied().fold(0.0, f64::max)).collect();
    let (sup_mean, sup_stderr) = mean_stderr(&sups);
    MeasuredCurve {
        times: spec.times.clone(),
        samples,
        mean,
        stderr,
        sup_mean,
        sup_stderr,
        backend,
        realizations: spec.realizations,
        seed: spec.seed,
    }
}

fn realization_curve(spec: &CurveSpec, backend: Backend, r: usize) -> Result<Vec<f64>> {
    let p = &spec.params;
    let disorder = sample_disorder_stream(p.omega, spec.seed, r as u64, p.n_sites());
    match backend {
        Backend::FreeFermion => {
            let (ca, sa) = single_z_site(&spec.a).unwrap();
            let (cb, sb) = single_z_site(&spec.b).unwrap();
            let h1 = one_body_hamiltonian(&p.with_delta(0.0), &disorder)?;
            let ob = OneBody::new(&h1);
            let (ia, ib) = ((sa + p.l as i32) as usize, (sb + p.l as i32) as usize);
            let scale = 4.0 * (ca * cb).abs();
            Ok(spec
                .times
                .iter()
                .map(|&t| {
                    if ia == ib {
                        return 0.0;
                    }
                    let u = ob.amplitude(ia, ib, t).norm().min(1.0);
                    scale * u * (1.0 - u * u).max(0.0).sqrt()
                })
                .collect())
        }
        Backend::SectorProjector => {
            let h = build_h_omega(p, &disorder)?;
            let spectrum = StaticSpectrum::new(&h)?;
            let (ca, ma) = diagonal_string(&spec.a).unwrap();
            let (cb, mb) = diagonal_string(&spec.b).unwrap();
            let scale = 4.0 * (ca * cb).abs();
            Ok(spec.times.iter().map(|&t| scale * projector_angle(&spectrum, ma, mb, t)).collect())
        }
        Backend::SectorGeneric => {
            let h = build_h_omega(p, &disorder)?;
            let spectrum = StaticSpectrum::new(&h)?;
            let a = spec.a.to_blocks(&spectrum.partition)?;
            let b = spec.b.to_blocks(&spectrum.partition)?;
            spec.times
                .iter()
                .map(|&t| {
                    let at = spectrum.propagator(t).conjugate(&a)?;
                    Ok(at
                        .blocks()
                        .iter()
                        .zip(b.blocks())
                        .map(|(x, y)| dense_commutator_norm(x, y))
                        .fold(0.0, f64::max))
                })
                .collect()
        }
        Backend::Dense | Backend::Auto => {
            let h = build_h_omega(p, &disorder)?;
            let spectrum = StaticSpectrum::new(&h)?;
            let a = spec.a.to_dense()?;
            let b = spec.b.to_dense()?;
            Ok(spec
                .times
                .iter()
                .map(|&t| {
                    let u = spectrum.propagator(t).to_dense();
                    let at = cmul(&u.adjoint(), &cmul(&a, &u));
                    dense_commutator_norm(&at, &b)
                })
                .collect())
        }
    }
}

/// `‖Q U†PU Q⊥‖`, which equals `‖[U†PU, Q]‖`, for the +1 eigenprojectors P, Q of the
/// diagonal strings with sign masks `ma`, `mb`. The off-diagonal block is used rather
/// than the principal-angle formula so that small values keep full relative accuracy.
fn projector_angle(spectrum: &StaticSpectrum, ma: usize, mb: usize, t: f64) -> f64 {
    let mut best: f64 = 0.0;
    for (basis, (w, v)) in spectrum.partition.blocks().iter().zip(&spectrum.blocks) {
        let n = basis.len();
        let split = |mask: usize| -> (Vec<usize>, Vec<usize>) {
            (0..n).partition(|&i| (basis[i] & mask).count_ones() % 2 == 0)
        };
        let (p_plus, p_minus) = split(ma);
        let (q, q_perp) = split(mb);
        if p_plus.is_empty() || p_minus.is_empty() || q.is_empty() || q_perp.is_empty() {
            continue;
        }
        // P and 1 - P give the same block up to sign
        let ps = if p_plus.len() <= p_minus.len() { p_plus } else { p_minus };
        let vpt = DMatrix::from_fn(n, ps.len(), |k, j| v[(ps[j], k)]);
        let rows = |set: &[usize]| {
            let mut c = DMatrix::from_fn(set.len(), n, |i, k| v[(set[i], k)]);
            let mut s = c.clone();
            for k in 0..n {
                let (sn, cs) = (w[k] * t).sin_cos();
                c.column_mut(k).scale_mut(cs);
                s.column_mut(k).scale_mut(sn);
            }
            (c * &vpt, s * &vpt)
        };
        let (aq, bq) = rows(&q);
        let (ap, bp) = rows(&q_perp);
        let xr = &aq * ap.transpose() + &bq * bp.transpose();
        let xi = &bq * ap.transpose() - &aq * bp.transpose();
        let x = DenseMatrix::from_fn(xr.nrows(), xr.ncols(), |i, j| Complex64::new(xr[(i, j)], xi[(i, j)]));
        best = best.max(spectral_norm(&x));
    }
    best
}

/// σ^z on one site of the parameters' chain.
pub fn sigma_z(chain: Chain, site: i32) -> Result<SpinOperator> {
    SpinOperator::from_string(chain, 1.0, &PauliString::single(site, Axis::Z))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AndersonFit {
    /// Amplitude with the safety factor applied.
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "K_raw")]
    pub k_raw: f64,
    pub xi: f64,
    /// Root-mean-square residual of the log-linear fit.
    pub residual: f64,
    pub safety: f64,
    pub omega: f64,
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "R")]
    pub realizations: usize,
    pub seed: u64,
    pub points: Vec<(usize, f64)>,
}

pub const FIT_SAFETY: f64 = 2.0;

/// Least-squares fit of `ln y = ln K_raw - l/ξ`.
pub fn fit_anderson(points: &[(usize, f64)], omega: f64, j: f64, realizations: usize, seed: u64) -> Result<AndersonFit> {
    let mut ls: Vec<usize> = points.iter().map(|p| p.0).collect();
    ls.sort_unstable();
    ls.dedup();
    if ls.len() < 3 {
        return Err(Error::Fit(format!("need at least 3 distinct distances, got {}", ls.len())));
    }
    if let Some(p) = points.iter().find(|p| !(p.1 > 0.0 && p.1.is_finite())) {
        return Err(Error::Fit(format!("nonpositive value {} at l = {}", p.1, p.0)));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0 as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    if slope >= 0.0 {
        return Err(Error::Fit(format!("data do not decay with distance (slope {slope:.3e})")));
    }
    let xi = -1.0 / slope;
    let span = (ls[ls.len() - 1] - ls[0]) as f64;
    if xi > span {
        return Err(Error::Fit(format!("localization length {xi:.3} exceeds the fitted range {span}: not localized")));
    }
    let residual = (xs.iter().zip(&ys).map(|(x, y)| (y - icpt - slope * x).powi(2)).sum::<f64>() / n).sqrt();
    let k_raw = icpt.exp();
    Ok(AndersonFit {
        k: FIT_SAFETY * k_raw,
        k_raw,
        xi,
        residual,
        safety: FIT_SAFETY,
        omega,
        j,
        realizations,
        seed,
        points: points.to_vec(),
    })
}

/// Sites `(a, a + l)` placed as centrally as the chain allows.
pub fn centered_pair(chain: Chain, l: usize) -> Result<(i32, i32)> {
    let a = -((l / 2) as i32);
    let b = a + l as i32;
    chain.check(a)?;
    chain.check(b)?;
    Ok((a, b))
}

/// Δ = 0 sweep of `E sup_t ‖[σ^z_a(t), σ^z_b]‖` over distances, then the fit.
pub fn anderson_sweep(
    params: &ChainParams,
    ls: &[usize],
    times: &[f64],
    realizations: usize,
    seed: u64,
) -> Result<(Vec<MeasuredCurve>, AndersonFit)> {
    let p = params.with_delta(0.0);
    let chain = p.chain();
    let mut curves = Vec::new();
    let mut points = Vec::new();
    for &l in ls {
        let (a, b) = centered_pair(chain, l)?;
        let spec = CurveSpec {
            params: p.clone(),
            a: sigma_z(chain, a)?,
            b: sigma_z(chain, b)?,
            times: times.to_vec(),
            realizations,
            seed,
            backend: Backend::Auto,
        };
        let c = measure_curve(&spec)?;
        points.push((l, c.sup_mean));
        curves.push(c);
    }
    let fit = fit_anderson(&points, p.omega, p.j, realizations, seed)?;
    Ok((curves, fit))
}

/// First grid time with `values > eps`; `+∞` when never exceeded.
pub fn lightcone_tmax(times: &[f64], values: &[f64], eps: f64) -> f64 {
    times.iter().zip(values).find(|(_, &v)| v > eps).map(|(&t, _)| t).unwrap_or(f64::INFINITY)
}

pub const DEFAULT_EPS_FRACTION: f64 = 0.05;

/// Ball-supported part of an operator and the remainder.
#[derive(Clone, Debug)]
pub struct LocalSplit {
    /// `tr_{complement}(A)/2^k ⊗ 1`.
    pub local: DenseMatrix,
    /// `A - local`; commutes with nothing in general, but `[local, B] = 0` for B outside the ball.
    pub residual: DenseMatrix,
}

pub fn local_truncation(a: &DenseMatrix, chain: Chain, ball: &[i32]) -> Result<LocalSplit> {
    if a.nrows() != chain.dim() || a.ncols() != chain.dim() {
        return Err(Error::DimensionMismatch { expected: chain.dim(), got: a.nrows() });
    }
    let mut ball_mask = 0usize;
    for &s in ball {
        chain.check(s)?;
        ball_mask |= 1 << chain.bit(s);
    }
    let comp_mask = (chain.dim() - 1) & !ball_mask;
    let comp_bits: Vec<usize> = (0..chain.n_sites()).filter(|b| comp_mask >> b & 1 == 1).collect();
    let spread = |c: usize| comp_bits.iter().enumerate().fold(0usize, |acc, (i, &b)| acc | ((c >> i & 1) << b));
    let n_comp = 1usize << comp_bits.len();
    let norm = 1.0 / n_comp as f64;
    let dim = chain.dim();
    let mut local = DenseMatrix::zeros(dim, dim);
    for col in 0..dim {
        for row in 0..dim {
            if (row ^ col) & comp_mask != 0 {
                continue;
            }
            let (rb, cb) = (row & ball_mask, col & ball_mask);
            if row & comp_mask != 0 {
                local[(row, col)] = local[(rb, cb)];
                continue;
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..n_comp {
                let x = spread(c);
                acc += a[(rb | x, cb | x)];
            }
            local[(row, col)] = acc * norm;
        }
    }
    let residual = a - &local;
    Ok(LocalSplit { local, residual })
}

/// Measured curve next to an analytic bound.
#[derive(Clone, Debug)]
pub struct BoundCurve {
    pub times: Vec<f64>,
    pub lhs_mean: Vec<f64>,
    pub lhs_stderr: Vec<f64>,
    pub rhs: Vec<f64>,
    pub bound_id: BoundId,
    pub geometry: SupportGeometry,
    pub params: ChainParams,
    pub realizations: usize,
    pub seed: u64,
    /// Fitted `(K, ξ)` the bound depends on, when it does.
    pub fitted: Option<(f64, f64)>,
}

impl BoundCurve {
    pub fn new(
        curve: &MeasuredCurve,
        rhs: Vec<f64>,
        bound_id: BoundId,
        geometry: SupportGeometry,
        params: ChainParams,
        fitted: Option<(f64, f64)>,
    ) -> Result<BoundCurve> {
        if rhs.len() != curve.times.len() {
            return Err(Error::DimensionMismatch { expected: curve.times.len(), got: rhs.len() });
        }
        Ok(BoundCurve {
            times: curve.times.clone(),
            lhs_mean: curve.mean.clone(),
            lhs_stderr: curve.stderr.clone(),
            rhs,
            bound_id,
            geometry,
            params,
            realizations: curve.realizations,
            seed: curve.seed,
            fitted,
        })
    }

    /// Grid indices where `mean + 2·stderr` exceeds the bound.
    pub fn violations(&self) -> Vec<usize> {
        (0..self.times.len()).filter(|&k| self.lhs_mean[k] + 2.0 * self.lhs_stderr[k] > self.rhs[k]).collect()
    }

    /// Smallest `rhs - (mean + 2 stderr)` over the grid.
    pub fn margin(&self) -> f64 {
        (0..self.times.len())
            .map(|k| self.rhs[k] - self.lhs_mean[k] - 2.0 * self.lhs_stderr[k])
            .fold(f64::INFINITY, f64::min)
    }

    pub const CSV_HEADER: [&'static str; 12] =
        ["t", "lhs_mean", "lhs_stderr", "rhs", "bound_id", "l", "d", "Delta", "Omega", "J", "R", "seed"];

    pub fn write_csv<W: Write>(&self, w: W, header: bool) -> Result<()> {
        let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
        if header {
            out.write_record(Self::CSV_HEADER)?;
        }
        for k in 0..self.times.len() {
            out.write_record([
                fmt_f(self.times[k]),
                fmt_f(self.lhs_mean[k]),
                fmt_f(self.lhs_stderr[k]),
                fmt_f(self.rhs[k]),
                self.bound_id.to_string(),
                self.geometry.l.to_string(),
                self.geometry.d.to_string(),
                fmt_f(self.params.delta),
                fmt_f(self.params.omega),
                fmt_f(self.params.j),
                self.realizations.to_string(),
                self.seed.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

pub fn fmt_f(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.12e}")
    }
}

/// Evenly spaced grid `0, h, ..., t_max` with `points` entries.
pub fn time_grid(t_max: f64, points: usize) -> Vec<f64> {
    if points <= 1 {
        return vec![t_max];
    }
    (0..points).map(|k| t_max * k as f64 / (points - 1) as f64).collect()
}
