//! Nested-region propagation differences Δ_j(t,s) and their factorial bound.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bounds::rhs_appendix_b;
use crate::error::{Error, Result};
use crate::evolution::{choose_partition, propagate, IntegratorOptions};
use crate::hamiltonians::{field, hopping, sample_disorder, TimeDependentHamiltonian, Waveform};
use crate::linalg::{DenseMatrix, C64};
use crate::pauli::{Axis, Chain, PauliString, SpinOperator};
use crate::sector::{BlockDiag, Partition};

/// Nearest-neighbour bonds `H_k(u) = J m(u) (X_k X_{k+1} + Y_k Y_{k+1}) + (ω_k Z_k + ω_{k+1} Z_{k+1}) / 2`
/// on the host chain `-l..=l`. `m` is the modulation waveform, `Const` for static bonds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BondFamily {
    pub l: usize,
    pub j: f64,
    pub fields: Vec<f64>,
    pub modulation: Waveform,
}

impl BondFamily {
    pub fn new(l: usize, j: f64, fields: Vec<f64>, modulation: Waveform) -> Result<BondFamily> {
        if fields.len() != 2 * l + 1 {
            return Err(Error::DimensionMismatch { expected: 2 * l + 1, got: fields.len() });
        }
        if l < 2 || !(j > 0.0) {
            return Err(Error::InvalidParams(format!("bond family needs l >= 2 and J > 0 (got l = {l}, J = {j})")));
        }
        Ok(BondFamily { l, j, fields, modulation })
    }

    /// Fields drawn uniformly from `[-omega, omega]`.
    pub fn random(l: usize, j: f64, omega: f64, seed: u64, modulation: Waveform) -> Result<BondFamily> {
        BondFamily::new(l, j, sample_disorder(omega, seed, 2 * l + 1).omega, modulation)
    }

    pub fn host(&self) -> Chain {
        Chain::centered(self.l)
    }

    fn field_at(&self, site: i32) -> f64 {
        self.fields[(site + self.l as i32) as usize]
    }

    /// Hopping and field parts of bond `k` on `chain`.
    fn bond_parts(&self, chain: Chain, k: i32) -> (SpinOperator, SpinOperator) {
        let f = &field(chain, k, 0.5 * self.field_at(k)) + &field(chain, k + 1, 0.5 * self.field_at(k + 1));
        (hopping(chain, k, self.j), f)
    }

    /// `H_{Λ_r} = Σ_{k=-r}^{r-1} H_k` placed on `chain`.
    pub fn restricted(&self, chain: Chain, r: usize) -> Result<TimeDependentHamiltonian> {
        let r = r as i32;
        chain.check(-r)?;
        chain.check(r)?;
        let mut fixed = SpinOperator::zero(chain);
        let mut hop = SpinOperator::zero(chain);
        for k in -r..r {
            let (h, f) = self.bond_parts(chain, k);
            fixed = &fixed + &f;
            hop = &hop + &h;
        }
        let mut drives = Vec::new();
        match self.modulation {
            Waveform::Const => fixed = &fixed + &hop,
            w => drives.push((w, hop)),
        }
        Ok(TimeDependentHamiltonian { static_part: fixed, drives, label: format!("Lambda_{r}") })
    }

    /// `‖H_k‖` at modulation value `m`.
    pub fn bond_norm(&self, k: i32, m: f64) -> Result<f64> {
        let pair = Chain::new(k, 2);
        let (h, f) = self.bond_parts(pair, k);
        let op = &h.scaled(m) + &f;
        Ok(crate::linalg::hermitian_norm(&op.to_dense()?))
    }

    /// `max_{u∈[s,t]} max_k ‖H_k(u)‖` over every bond of the host chain.
    ///
    /// The norm is convex in `m`, so the extremes of `m` over the window suffice.
    pub fn j_bound(&self, s: f64, t: f64) -> Result<f64> {
        let (lo, hi) = waveform_range(self.modulation, s, t);
        let l = self.l as i32;
        let mut best = 0.0f64;
        for k in -l..l {
            best = best.max(self.bond_norm(k, lo)?).max(self.bond_norm(k, hi)?);
        }
        Ok(best)
    }
}

/// Range of a waveform over `[s, t]`.
pub fn waveform_range(w: Waveform, s: f64, t: f64) -> (f64, f64) {
    let (freq, offset) = match w {
        Waveform::Const => return (1.0, 1.0),
        Waveform::Cos { freq } => (freq, 0.0),
        Waveform::Sin { freq } => (freq, -std::f64::consts::FRAC_PI_2),
    };
    let mut vals = vec![w.eval(s), w.eval(t)];
    if freq != 0.0 {
        // extrema where freq * u + offset is a multiple of π
        let (a, b) = {
            let x = (freq * s + offset) / std::f64::consts::PI;
            let y = (freq * t + offset) / std::f64::consts::PI;
            (x.min(y), x.max(y))
        };
        let mut k = a.ceil();
        while k <= b {
            vals.push(if (k as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 });
            k += 1.0;
        }
    }
    let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InductionRow {
    pub j: usize,
    pub s: f64,
    pub t: f64,
    pub numeric: f64,
    /// Bound on the integration error carried by `numeric`.
    pub numeric_err: f64,
    pub bound: f64,
    pub j_bond: f64,
}

impl InductionRow {
    /// `numeric + numeric_err ≤ bound`.
    pub fn holds(&self) -> bool {
        self.numeric + self.numeric_err <= self.bound
    }

    pub fn ratio(&self) -> f64 {
        if self.bound == 0.0 {
            if self.numeric == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            self.numeric / self.bound
        }
    }
}

/// Share of the bound the integration error may use; the integrator tolerance is
/// relaxed up to this point, never tightened past `opts.tol`.
pub const VERDICT_MARGIN: f64 = 1e-3;

/// Default observable `σ^z_0`.
pub fn default_observable(chain: Chain) -> Result<SpinOperator> {
    SpinOperator::from_string(chain, 1.0, &PauliString::single(0, Axis::Z))
}

/// `Δ_j(t,s) = ‖U*_{Λ_{j+1}} A U_{Λ_{j+1}} − U*_{Λ_j} A U_{Λ_j}‖` together with `‖A‖(4J(t−s))^j/j!`.
///
/// Both evolutions act trivially outside `-(j+1)..=(j+1)`, so they are computed on that
/// window of the host chain; the norm is unchanged by the spectator sites.
/// `opts.method = CommutatorFree4` keeps every exponential real for these bonds.
/// `a` may live on any chain; only its support matters and it must lie in `[-1, 1]`.
pub fn appendix_b_delta_j(
    family: &BondFamily,
    a: &SpinOperator,
    s: f64,
    t: f64,
    j: usize,
    opts: &IntegratorOptions,
) -> Result<InductionRow> {
    if j == 0 {
        return Err(Error::InvalidParams("j starts at 1".into()));
    }
    if j + 1 > family.l {
        return Err(Error::Precondition(format!("Lambda_{} does not fit in the host chain -{l}..={l}", j + 1, l = family.l)));
    }
    if a.support().iter().any(|&x| !(-1..=1).contains(&x)) {
        return Err(Error::Precondition("A must be supported in [-1, 1]".into()));
    }
    if t < s {
        return Err(Error::Precondition(format!("t = {t} precedes s = {s}")));
    }
    let a_norm = crate::linalg::hermitian_norm(&a.rechain(Chain::new(-1, 3))?.to_dense()?);
    let j_bond = family.j_bound(s, t)?;
    let bound = rhs_appendix_b(a_norm, j_bond, t - s, j as u32);
    if t == s {
        return Ok(InductionRow { j, s, t, numeric: 0.0, numeric_err: 0.0, bound, j_bond });
    }
    // each propagator error δ moves the conjugated operator by at most 2‖A‖δ
    let tol = opts.tol.max(VERDICT_MARGIN * bound / (4.0 * a_norm * (t - s)));
    let opts = &IntegratorOptions { tol, ..*opts };
    let numeric_err = 4.0 * a_norm * tol * (t - s);
    let window = Chain::new(-(j as i32 + 1), 2 * j + 3);
    let a_outer = a.rechain(window)?;
    let outer = family.restricted(window, j + 1)?;
    let partition = choose_partition(outer.operators().chain([&a_outer]))?;
    let a_blocks = a_outer.to_blocks(&partition)?;
    let evolved_outer = propagate(&outer, &partition, s, t, opts)?.conjugate(&a_blocks)?;

    // Λ_j leaves the two end sites of the window alone, so it is evolved on the smaller window
    let small = Chain::new(-(j as i32), 2 * j + 1);
    let a_inner = a.rechain(small)?;
    let inner = family.restricted(small, j)?;
    let inner_partition = choose_partition(inner.operators().chain([&a_inner]))?;
    let evolved_inner = propagate(&inner, &inner_partition, s, t, opts)?
        .conjugate(&a_inner.to_blocks(&inner_partition)?)?
        .to_dense();
    let diff = evolved_outer.axpy(-1.0, &embed_spectators(&evolved_inner, &partition, 2 * j + 1))?;
    let numeric = if a.is_hermitian(1e-14) { diff.hermitian_norm() } else { diff.norm() };
    Ok(InductionRow { j, s, t, numeric, numeric_err, bound, j_bond })
}

/// `m ⊗ 1` on a window with one extra site at each end, restricted to the blocks of `partition`.
fn embed_spectators(m: &DenseMatrix, partition: &Arc<Partition>, inner_sites: usize) -> BlockDiag {
    let mask = (1usize << inner_sites) - 1;
    let ends = 1usize | (1usize << (inner_sites + 1));
    let blocks = partition
        .blocks()
        .iter()
        .map(|basis| {
            DenseMatrix::from_fn(basis.len(), basis.len(), |i, k| {
                let (r, c) = (basis[i], basis[k]);
                if (r ^ c) & ends != 0 {
                    C64::new(0.0, 0.0)
                } else {
                    m[((r >> 1) & mask, (c >> 1) & mask)]
                }
            })
        })
        .collect();
    BlockDiag::new(partition.clone(), blocks)
}

/// Rows for `j = 1..=j_max`.
pub fn induction_table(
    family: &BondFamily,
    a: &SpinOperator,
    s: f64,
    t: f64,
    j_max: usize,
    opts: &IntegratorOptions,
) -> Result<Vec<InductionRow>> {
    (1..=j_max).map(|j| appendix_b_delta_j(family, a, s, t, j, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_of_cos() {
        let (lo, hi) = waveform_range(Waveform::Cos { freq: 1.0 }, 0.1, 0.2);
        assert!((hi - 0.1f64.cos()).abs() < 1e-15 && (lo - 0.2f64.cos()).abs() < 1e-15);
        let (lo, hi) = waveform_range(Waveform::Cos { freq: 1.0 }, 3.0, 3.5);
        assert_eq!(lo, -1.0);
        assert!(hi < 0.0);
        let (lo, hi) = waveform_range(Waveform::Sin { freq: 2.0 }, 0.0, 1.0);
        assert_eq!(hi, 1.0);
        assert!((lo - 0.0).abs() < 1e-15);
    }

    #[test]
    fn bond_norm_closed_form() {
        let fam = BondFamily::new(3, 1.0, vec![0.3, -1.2, 0.7, 2.0, -0.4, 0.0, 1.1], Waveform::Const).unwrap();
        for k in -3..3 {
            for m in [-1.0, 0.4, 1.0] {
                let a = fam.field_at(k);
                let b = fam.field_at(k + 1);
                let expect = (0.5 * (a + b)).abs().max((0.25 * (a - b).powi(2) + 4.0 * m * m).sqrt());
                assert!((fam.bond_norm(k, m).unwrap() - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn equal_times_vanish() {
        let fam = BondFamily::random(4, 1.0, 2.0, 5, Waveform::Const).unwrap();
        let a = default_observable(fam.host()).unwrap();
        let row = appendix_b_delta_j(&fam, &a, 0.3, 0.3, 2, &IntegratorOptions::default()).unwrap();
        assert_eq!((row.numeric, row.bound), (0.0, 0.0));
    }

    #[test]
    fn preconditions() {
        let fam = BondFamily::random(3, 1.0, 1.0, 1, Waveform::Const).unwrap();
        let opts = IntegratorOptions::default();
        let a = default_observable(fam.host()).unwrap();
        assert!(appendix_b_delta_j(&fam, &a, 0.0, 0.1, 3, &opts).is_err());
        let far = SpinOperator::from_string(fam.host(), 1.0, &PauliString::single(2, Axis::X)).unwrap();
        assert!(appendix_b_delta_j(&fam, &far, 0.0, 0.1, 1, &opts).is_err());
    }

    #[test]
    fn small_window_matches_full_window() {
        // oracle: both regions evolved on the full window, dense
        use crate::linalg::{cmul, hermitian_norm};
        let fam = BondFamily::random(3, 1.0, 1.5, 9, Waveform::Cos { freq: 2.0 }).unwrap();
        let opts = IntegratorOptions::with_tol(1e-10);
        let row = appendix_b_delta_j(&fam, &default_observable(fam.host()).unwrap(), 0.2, 0.7, 1, &opts).unwrap();
        let window = Chain::new(-2, 5);
        let a = default_observable(window).unwrap().to_dense().unwrap();
        let trivial = Partition::trivial(window.dim());
        let evolved = |r: usize| {
            let u = propagate(&fam.restricted(window, r).unwrap(), &trivial, 0.2, 0.7, &opts).unwrap().to_dense();
            cmul(&u.adjoint(), &cmul(&a, &u))
        };
        let reference = hermitian_norm(&(evolved(2) - evolved(1)));
        assert!((row.numeric - reference).abs() <= row.numeric_err, "{} vs {}", row.numeric, reference);
        assert!(row.numeric_err < 1e-2 * row.bound);
        assert!(row.numeric > 1e-3);
    }
}
