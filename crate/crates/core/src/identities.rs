//! Numerical checks of the closed-form operator identities.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::evolution::{choose_partition, propagate, IntegratorOptions};
use crate::hamiltonians::{
    build_c1_c2, build_e_split, build_g, build_h_omega, left_pieces, one_body_hamiltonian, one_body_shift,
    sample_disorder, sample_disorder_stream, zz_term, ChainParams, DisorderRealization, TimeDependentHamiltonian,
};
use crate::linalg::{cmul, expm_hermitian, hermitian_eigenvalues, hermitian_norm, DenseMatrix, C64};
use crate::pauli::{conjugate_by_zz, exp_zz, Chain, SpinOperator};
use crate::sector::Partition;

pub const IDENTITY_TOL: f64 = 1e-8;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `value ≤ tol`.
    Residual,
    /// `|value − target| ≤ tol`.
    Equal,
    /// `value ≤ target + tol`.
    AtMost,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub kind: CheckKind,
    pub value: f64,
    pub target: f64,
    pub tol: f64,
}

impl IdentityCheck {
    pub fn residual(name: impl Into<String>, value: f64, tol: f64) -> Self {
        IdentityCheck { name: name.into(), kind: CheckKind::Residual, value, target: 0.0, tol }
    }

    pub fn equal(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        IdentityCheck { name: name.into(), kind: CheckKind::Equal, value, target, tol }
    }

    pub fn at_most(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        IdentityCheck { name: name.into(), kind: CheckKind::AtMost, value, target, tol }
    }

    pub fn passed(&self) -> bool {
        match self.kind {
            CheckKind::Residual => self.value <= self.tol,
            CheckKind::Equal => (self.value - self.target).abs() <= self.tol,
            CheckKind::AtMost => self.value <= self.target + self.tol,
        }
    }

    /// The quantity compared against `tol`.
    pub fn defect(&self) -> f64 {
        match self.kind {
            CheckKind::Residual => self.value,
            CheckKind::Equal => (self.value - self.target).abs(),
            CheckKind::AtMost => (self.value - self.target).max(0.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub l: usize,
    pub j: f64,
    pub omega: f64,
    pub deltas: Vec<f64>,
    pub times: Vec<f64>,
    pub seed: u64,
    /// Disorder draws for the commutator-norm inequality.
    pub draws: usize,
    /// Largest L for the one-particle spectrum comparison.
    pub jw_max_l: usize,
    /// Negative control: flips the sign of C2 inside the generator.
    pub corrupt_c2: bool,
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            l: 3,
            j: 1.0,
            omega: 2.0,
            deltas: vec![1.0, 10.0],
            times: vec![0.5, 1.0, 2.0],
            seed: 7,
            draws: 50,
            jw_max_l: 5,
            corrupt_c2: false,
            tol: IDENTITY_TOL,
        }
    }
}

fn dense(op: &SpinOperator) -> Result<DenseMatrix> {
    op.to_dense()
}

fn dense_exp(op: &SpinOperator, t: f64) -> Result<DenseMatrix> {
    Ok(expm_hermitian(&dense(op)?, t))
}

/// `exp(i a ZZ)` closed form against a Padé exponential.
pub fn check_exp_zz(a: f64) -> Result<f64> {
    let e = exp_zz(a);
    let zz = dense(&SpinOperator::parse_sum(Chain::new(0, 2), &[(1.0, "Z0 Z1")])?)?;
    let reference = zz.map(|z| z * C64::new(0.0, a)).exp();
    Ok((e.matrix - reference).iter().fold(0.0, |m, z| m.max(z.norm())))
}

/// Closed-form ZZ conjugation of `op` against the dense triple product.
pub fn check_conjugation(op: &SpinOperator, s: f64, delta: f64, p: i32) -> Result<f64> {
    let closed = dense(&conjugate_by_zz(op, s, delta, p)?)?;
    let z = dense(&zz_term(op.chain(), p, 1.0))?;
    let u = expm_hermitian(&z, -s * delta);
    let reference = cmul(&u, &cmul(&dense(op)?, &u.adjoint()));
    Ok(hermitian_norm(&(closed - reference)))
}

/// `‖e^{isΔZZ} C1 e^{−isΔZZ} − (cos(2Δs) C1 + sin(2Δs) C2)‖`.
pub fn check_c1_rotation(p: &ChainParams, s: f64) -> Result<f64> {
    let (c1, c2) = build_c1_c2(p);
    let mut rotated = conjugate_by_zz(&c1, s, p.delta, p.zz_sites[0])?;
    let theta = 2.0 * p.delta * s;
    rotated = &rotated - &(&c1.scaled(theta.cos()) + &c2.scaled(theta.sin()));
    Ok(hermitian_norm(&dense(&rotated)?))
}

/// Largest pairwise commutator norm among the parts of E, and the factorization residual
/// `‖e^{−itE} − Π_k e^{−itE_k}‖`.
pub fn check_e_split(p: &ChainParams, d: &DisorderRealization, t: f64) -> Result<(f64, f64)> {
    let split = build_e_split(p, d)?;
    let mut worst = 0.0f64;
    for (a, x) in split.parts.iter().enumerate() {
        for y in &split.parts[a + 1..] {
            worst = worst.max(x.commutator(y).coefficient_norm().abs());
        }
    }
    let mut product = DenseMatrix::identity(p.chain().dim(), p.chain().dim());
    for part in &split.parts {
        product = cmul(&product, &dense_exp(part, t)?);
    }
    let full = dense_exp(&split.e, t)?;
    Ok((worst, (full - product).norm()))
}

/// `‖e^{−itH_ω} − e^{−itΔZZ} T-exp(−i∫G)‖`; `corrupt_c2` flips the sign of C2 in G.
pub fn check_interaction_factorization(
    p: &ChainParams,
    d: &DisorderRealization,
    t: f64,
    corrupt_c2: bool,
    opts: &IntegratorOptions,
) -> Result<f64> {
    let h = build_h_omega(p, d)?;
    let mut g = build_g(p, d)?;
    if corrupt_c2 {
        g.drives[1].1 = g.drives[1].1.scaled(-1.0);
    }
    let mut zz = SpinOperator::zero(p.chain());
    for &q in &p.zz_sites {
        zz = &zz + &zz_term(p.chain(), q, p.delta);
    }
    let partition = choose_partition(g.operators().chain([&h, &zz]))?;
    let fixed = |op: &SpinOperator| propagate(&TimeDependentHamiltonian::constant(op.clone(), "h"), &partition, 0.0, t, opts);
    let u_h = fixed(&h)?;
    let u_zz = fixed(&zz)?;
    let w = propagate(&g, &partition, 0.0, t, opts)?;
    u_h.diff_norm(&u_zz.mul(&w)?)
}

/// Sorted one-particle sector spectrum of the Δ = 0 chain and the shifted one-body spectrum.
pub fn jw_spectra(p: &ChainParams, d: &DisorderRealization) -> Result<(Vec<f64>, Vec<f64>)> {
    let h = build_h_omega(p, d)?;
    let n = p.n_sites();
    // bit value 1 is a down spin, so the single-up sector has n − 1 set bits
    let sector: Vec<usize> = (0..1usize << n).filter(|x| x.count_ones() as usize == n - 1).collect();
    let partition = std::sync::Arc::new(Partition::from_blocks(1 << n, vec![sector, (0..1usize << n).filter(|x| x.count_ones() as usize != n - 1).collect()]));
    let blocks = h.to_blocks(&partition)?;
    let mut many = hermitian_eigenvalues(&blocks.blocks()[0]);
    let shift = one_body_shift(d);
    let one = crate::linalg::symmetric_eigenvalues(&one_body_hamiltonian(p, d)?);
    let mut single: Vec<f64> = one.iter().map(|e| e + shift).collect();
    many.sort_by(|a, b| a.partial_cmp(b).unwrap());
    single.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok((many, single))
}

pub fn jw_residual(p: &ChainParams, d: &DisorderRealization) -> Result<f64> {
    let (many, single) = jw_spectra(p, d)?;
    Ok(many.iter().zip(&single).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// `‖[E1 + E2, C_{1,[p−1,p]}]‖` for the bond at `p`.
pub fn left_commutator_norm(p: &ChainParams, d: &DisorderRealization) -> Result<f64> {
    let split = build_e_split(p, d)?;
    let (c1_left, _) = left_pieces(p.chain(), p.zz_sites[0], p.j);
    let e12 = split.e1() + split.e2();
    Ok(hermitian_norm(&dense(&e12.commutator(&c1_left))?.map(|z| z * C64::new(0.0, 1.0))))
}

/// Largest `left_commutator_norm` over every field configuration `ω_k = ±Ω`.
///
/// The norm is convex in the fields, so this is its maximum over the disorder box.
pub fn extremal_left_commutator(p: &ChainParams) -> Result<(f64, Vec<f64>)> {
    let n = p.n_sites();
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for signs in 0..1usize << n {
        let omega: Vec<f64> = (0..n).map(|k| if signs >> k & 1 == 1 { -p.omega } else { p.omega }).collect();
        let d = DisorderRealization { omega: omega.clone(), seed: 0, stream: signs as u64, distribution: "signs".into() };
        let v = left_commutator_norm(p, &d)?;
        if v > best.0 {
            best = (v, omega);
        }
    }
    Ok(best)
}

/// Operator identities, in a fixed order.
pub fn run_identities(cfg: &SuiteConfig, opts: &IntegratorOptions) -> Result<Vec<IdentityCheck>> {
    let tol = cfg.tol;
    let mut out = Vec::new();
    let mut worst = 0.0f64;
    for a in [0.0, 0.3, std::f64::consts::FRAC_PI_2, 2.1] {
        worst = worst.max(check_exp_zz(a)?);
    }
    out.push(IdentityCheck::residual("exp_zz", worst, tol));

    let base = ChainParams::new(cfg.l, cfg.j, 1.0, cfg.omega);
    let chain = base.chain();
    let d = sample_disorder(cfg.omega, cfg.seed, base.n_sites());
    let (c1, c2) = build_c1_c2(&base);

    let mut conj = 0.0f64;
    let mut rot = 0.0f64;
    let mut split_comm = 0.0f64;
    let mut split_fact = 0.0f64;
    let mut inter = 0.0f64;
    for &delta in &cfg.deltas {
        let p = base.with_delta(delta * cfg.j);
        for &t in &cfg.times {
            let t = t / cfg.j;
            for (_, s) in c1.terms().chain(c2.terms()) {
                let op = SpinOperator::from_string(chain, 1.0, &s)?;
                conj = conj.max(check_conjugation(&op, t, p.delta, 0)?);
            }
            rot = rot.max(check_c1_rotation(&p, t)?);
            let (comm, fact) = check_e_split(&p, &d, t)?;
            split_comm = split_comm.max(comm);
            split_fact = split_fact.max(fact);
            inter = inter.max(check_interaction_factorization(&p, &d, t, cfg.corrupt_c2, opts)?);
        }
    }
    out.push(IdentityCheck::residual("zz_conjugation", conj, tol));
    out.push(IdentityCheck::residual("c1_rotation", rot, tol));
    out.push(IdentityCheck::residual("e_split_commute", split_comm, tol));
    out.push(IdentityCheck::residual("e_split_factorization", split_fact, tol));
    out.push(IdentityCheck::residual("interaction_picture", inter, tol));

    let mut jw = 0.0f64;
    for l in 2..=cfg.jw_max_l {
        let p = ChainParams::new(l, cfg.j, 0.0, cfg.omega);
        for stream in 0..3 {
            let d = sample_disorder_stream(cfg.omega, cfg.seed, stream, p.n_sites());
            jw = jw.max(jw_residual(&p, &d)?);
        }
    }
    out.push(IdentityCheck::residual("jordan_wigner_spectrum", jw, 1e-10));
    Ok(out)
}

/// Norm constants used by the large-Δ bounds, at field strength `cfg.omega`.
///
/// `commutator_e12_c1_left` compares the supremum over the disorder box with the stated
/// `8J² + 4ΩJ`; `..._quadrature` compares it with `8J√(J² + Ω²)`.
pub fn run_constants(cfg: &SuiteConfig) -> Result<Vec<IdentityCheck>> {
    let tol = cfg.tol;
    let mut out = Vec::new();
    let base = ChainParams::new(cfg.l, cfg.j, 1.0, cfg.omega);
    let (c1, c2) = build_c1_c2(&base);
    let c_target = 4.0 * cfg.j;
    out.push(IdentityCheck::equal("norm_c1", hermitian_norm(&dense(&c1)?), c_target, 1e-10));
    out.push(IdentityCheck::equal("norm_c2", hermitian_norm(&dense(&c2)?), c_target, 1e-10));

    let limit = 8.0 * cfg.j * (cfg.j + 2.0 * cfg.omega);
    let mut ec = 0.0f64;
    for stream in 0..cfg.draws as u64 {
        let d = sample_disorder_stream(cfg.omega, cfg.seed, stream, base.n_sites());
        let e = build_e_split(&base, &d)?.e;
        for c in [&c1, &c2] {
            let k = dense(&e.commutator(c))?.map(|z| z * C64::new(0.0, 1.0));
            ec = ec.max(hermitian_norm(&k));
        }
    }
    out.push(IdentityCheck::at_most("commutator_e_c", ec, limit, 1e-10));

    let (extremal, _) = extremal_left_commutator(&base)?;
    let j = cfg.j;
    out.push(IdentityCheck::equal("commutator_e12_c1_left", extremal, 8.0 * j * j + 4.0 * cfg.omega * j, tol));
    let quadrature = 8.0 * j * (j * j + cfg.omega * cfg.omega).sqrt();
    out.push(IdentityCheck::equal("commutator_e12_c1_left_quadrature", extremal, quadrature, tol));
    Ok(out)
}
