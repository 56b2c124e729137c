//! Static and time-ordered propagators, blockwise over conserved magnetization.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonians::TimeDependentHamiltonian;
use crate::linalg::{cmul, expm_hermitian, max_imag, phase_reconstruct, real_part, symmetric_eig, DenseMatrix};
use crate::pauli::SpinOperator;
use crate::sector::{BlockDiag, Partition};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Method {
    Eigendecomposition,
    /// Exponential midpoint rule, second order.
    MagnusMidpoint,
    /// Two-point Gauss-Legendre Magnus, fourth order.
    MagnusGauss4,
    /// Commutator-free fourth-order pair of exponentials; real generators stay real.
    CommutatorFree4,
}

#[derive(Copy, Clone, Debug)]
pub struct IntegratorOptions {
    /// Operator-norm tolerance per unit time between successive refinements.
    pub tol: f64,
    pub method: Method,
    pub max_steps: usize,
    /// Largest step allowed irrespective of drive frequency.
    pub max_step: f64,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions { tol: DEFAULT_TOL, method: Method::MagnusGauss4, max_steps: 1 << 18, max_step: 0.1 }
    }
}

impl IntegratorOptions {
    pub fn with_tol(tol: f64) -> Self {
        IntegratorOptions { tol, ..Default::default() }
    }
}

#[derive(Clone, Debug)]
pub struct Propagator {
    pub u: BlockDiag,
    pub t0: f64,
    pub t1: f64,
    pub generator_id: String,
    pub method: Method,
    pub step_count: usize,
}

impl Propagator {
    pub fn matrix(&self) -> DenseMatrix {
        self.u.to_dense()
    }

    pub fn dim(&self) -> usize {
        self.u.dim()
    }

    /// `self` after `earlier`: the later propagator goes on the left.
    pub fn compose(&self, earlier: &Propagator) -> Result<Propagator> {
        Ok(Propagator {
            u: self.u.mul(&earlier.u)?,
            t0: earlier.t0,
            t1: self.t1,
            generator_id: self.generator_id.clone(),
            method: self.method,
            step_count: self.step_count + earlier.step_count,
        })
    }
}

/// Finest partition every operator respects: fixed magnetization when possible.
pub fn choose_partition<'a>(ops: impl IntoIterator<Item = &'a SpinOperator>) -> Result<Arc<Partition>> {
    let ops: Vec<&SpinOperator> = ops.into_iter().collect();
    let chain = ops.first().map(|o| o.chain()).ok_or_else(|| Error::InvalidParams("no operators".into()))?;
    if ops.iter().any(|o| o.chain() != chain) {
        return Err(Error::InvalidParams("operators live on different chains".into()));
    }
    if chain.n_sites() > crate::pauli::DEFAULT_DENSE_CAP {
        return Err(Error::SizeCap { n: chain.n_sites(), cap: crate::pauli::DEFAULT_DENSE_CAP });
    }
    let mag = Partition::magnetization(chain.n_sites());
    for o in &ops {
        match o.to_blocks(&mag) {
            Ok(_) => {}
            Err(Error::NotConserving) => return Ok(Partition::trivial(chain.dim())),
            Err(e) => return Err(e),
        }
    }
    Ok(mag)
}

/// A Hermitian generator evaluated blockwise.
pub trait Generator: Sync {
    fn partition(&self) -> &Arc<Partition>;
    fn at(&self, t: f64) -> Result<BlockDiag>;
    /// Highest angular frequency present, zero for smooth slow generators.
    fn max_freq(&self) -> f64;
    fn id(&self) -> String;
}

pub struct BlockHamiltonian {
    partition: Arc<Partition>,
    static_part: BlockDiag,
    drives: Vec<(crate::hamiltonians::Waveform, BlockDiag)>,
    freq: f64,
    label: String,
}

impl BlockHamiltonian {
    pub fn new(h: &TimeDependentHamiltonian) -> Result<BlockHamiltonian> {
        let partition = choose_partition(h.operators())?;
        BlockHamiltonian::on(h, partition)
    }

    pub fn on(h: &TimeDependentHamiltonian, partition: Arc<Partition>) -> Result<BlockHamiltonian> {
        for op in h.operators() {
            if !op.is_hermitian(1e-14) {
                return Err(Error::NotHermitian { defect: op.terms().map(|(c, _)| c.im.abs()).fold(0.0, f64::max) });
            }
        }
        let static_part = h.static_part.to_blocks(&partition)?;
        let drives = h
            .drives
            .iter()
            .map(|(w, op)| Ok((*w, op.to_blocks(&partition)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockHamiltonian { partition, static_part, drives, freq: h.max_freq(), label: h.label.clone() })
    }
}

impl Generator for BlockHamiltonian {
    fn partition(&self) -> &Arc<Partition> {
        &self.partition
    }

    fn at(&self, t: f64) -> Result<BlockDiag> {
        let mut h = self.static_part.clone();
        for (w, op) in &self.drives {
            h = h.axpy(w.eval(t), op)?;
        }
        Ok(h)
    }

    fn max_freq(&self) -> f64 {
        self.freq
    }

    fn id(&self) -> String {
        self.label.clone()
    }
}

fn exp_blocks(h: &BlockDiag, tau: f64) -> BlockDiag {
    let blocks = h.blocks().iter().map(|b| expm_hermitian(b, tau)).collect();
    BlockDiag::new(h.partition().clone(), blocks)
}

/// `exp(-i t H)` by Hermitian eigendecomposition of each block.
pub fn evolve_static(h: &SpinOperator, t: f64) -> Result<Propagator> {
    if !h.is_hermitian(1e-14) {
        return Err(Error::NotHermitian { defect: h.terms().map(|(c, _)| c.im.abs()).fold(0.0, f64::max) });
    }
    let partition = choose_partition([h])?;
    let blocks = h.to_blocks(&partition)?;
    Ok(Propagator {
        u: exp_blocks(&blocks, t),
        t0: 0.0,
        t1: t,
        generator_id: "static".into(),
        method: Method::Eigendecomposition,
        step_count: 1,
    })
}

fn step(gen: &dyn Generator, t: f64, h: f64, method: Method) -> Result<BlockDiag> {
    match method {
        Method::MagnusMidpoint | Method::Eigendecomposition => Ok(exp_blocks(&gen.at(t + 0.5 * h)?, h)),
        Method::MagnusGauss4 => {
            let r = 3f64.sqrt() / 6.0;
            let h1 = gen.at(t + (0.5 - r) * h)?;
            let h2 = gen.at(t + (0.5 + r) * h)?;
            let coef = Complex64::new(0.0, -3f64.sqrt() / 12.0 * h * h);
            let blocks = h1
                .blocks()
                .iter()
                .zip(h2.blocks())
                .map(|(a, b)| {
                    let comm = cmul(b, a) - cmul(a, b);
                    let k = (a + b).scale(0.5 * h) + comm * coef;
                    expm_hermitian(&k, 1.0)
                })
                .collect();
            Ok(BlockDiag::new(h1.partition().clone(), blocks))
        }
        Method::CommutatorFree4 => {
            let r = 3f64.sqrt() / 6.0;
            let h1 = gen.at(t + (0.5 - r) * h)?;
            let h2 = gen.at(t + (0.5 + r) * h)?;
            let (a1, a2) = (0.25 - r, 0.25 + r);
            let blocks = h1
                .blocks()
                .iter()
                .zip(h2.blocks())
                .map(|(x, y)| {
                    let early = expm_hermitian(&(x.scale(a2) + y.scale(a1)), h);
                    let late = expm_hermitian(&(x.scale(a1) + y.scale(a2)), h);
                    cmul(&late, &early)
                })
                .collect();
            Ok(BlockDiag::new(h1.partition().clone(), blocks))
        }
    }
}

/// Fixed-step product over `n` equal steps, latest step on the left.
pub fn fixed_steps(gen: &dyn Generator, t0: f64, t1: f64, n: usize, method: Method) -> Result<BlockDiag> {
    let h = (t1 - t0) / n as f64;
    let mut u = BlockDiag::identity(gen.partition().clone());
    for k in 0..n {
        let s = step(gen, t0 + k as f64 * h, h, method)?;
        u = s.mul(&u)?;
    }
    Ok(u)
}

/// Number of base steps: at least 40 per drive period and no step above `max_step`.
pub fn base_steps(gen: &dyn Generator, t0: f64, t1: f64, opts: &IntegratorOptions) -> usize {
    let mut hmax = opts.max_step;
    let w = gen.max_freq();
    if w > 0.0 {
        hmax = hmax.min(2.0 * std::f64::consts::PI / w / 40.0);
    }
    (((t1 - t0) / hmax).ceil() as usize).max(1)
}

pub fn evolve_generator(gen: &dyn Generator, t0: f64, t1: f64, opts: &IntegratorOptions) -> Result<Propagator> {
    if t1 < t0 {
        return Err(Error::Precondition(format!("t1 = {t1} precedes t0 = {t0}")));
    }
    let done = |u, n| Propagator { u, t0, t1, generator_id: gen.id(), method: opts.method, step_count: n };
    if t1 == t0 {
        return Ok(done(BlockDiag::identity(gen.partition().clone()), 0));
    }
    let mut n = base_steps(gen, t0, t1, opts);
    let mut coarse = fixed_steps(gen, t0, t1, n, opts.method)?;
    let target = opts.tol * (t1 - t0);
    let mut prev = f64::INFINITY;
    loop {
        if 2 * n > opts.max_steps {
            return Err(Error::Convergence { steps: n, prev, last: prev });
        }
        let fine = fixed_steps(gen, t0, t1, 2 * n, opts.method)?;
        let delta = fine.diff_norm(&coarse)?;
        if delta <= target {
            return Ok(done(fine, 2 * n));
        }
        if 4 * n > opts.max_steps {
            return Err(Error::Convergence { steps: 2 * n, prev, last: delta });
        }
        prev = delta;
        coarse = fine;
        n *= 2;
    }
}

pub fn evolve_time_ordered(
    h: &TimeDependentHamiltonian,
    t0: f64,
    t1: f64,
    opts: &IntegratorOptions,
) -> Result<Propagator> {
    let gen = BlockHamiltonian::new(h)?;
    evolve_generator(&gen, t0, t1, opts)
}

/// Exact propagator when the generator is static, integrated otherwise.
pub(crate) fn propagate(h: &TimeDependentHamiltonian, partition: &Arc<Partition>, t0: f64, t1: f64, opts: &IntegratorOptions) -> Result<BlockDiag> {
    let gen = BlockHamiltonian::on(h, partition.clone())?;
    if h.is_static() {
        Ok(exp_blocks(&gen.at(t0)?, t1 - t0))
    } else {
        Ok(evolve_generator(&gen, t0, t1, opts)?.u)
    }
}

struct InnerGenerator<'a> {
    alpha: &'a TimeDependentHamiltonian,
    alpha_gen: BlockHamiltonian,
    diff: BlockHamiltonian,
    opts: IntegratorOptions,
    partition: Arc<Partition>,
}

impl Generator for InnerGenerator<'_> {
    fn partition(&self) -> &Arc<Partition> {
        &self.partition
    }

    fn at(&self, s: f64) -> Result<BlockDiag> {
        let ta = if self.alpha.is_static() {
            exp_blocks(&self.alpha_gen.at(0.0)?, s)
        } else {
            evolve_generator(&self.alpha_gen, 0.0, s, &self.opts)?.u
        };
        ta.conjugate(&self.diff.at(s)?)
    }

    fn max_freq(&self) -> f64 {
        self.diff.max_freq().max(self.alpha_gen.max_freq())
    }

    fn id(&self) -> String {
        format!("inner({})", self.diff.id())
    }
}

/// `‖T_β(t) − T_α(t) T-exp(−i∫ T_α(s)† (β(s) − α(s)) T_α(s) ds)‖`.
pub fn interaction_picture_check(
    alpha: &TimeDependentHamiltonian,
    beta: &TimeDependentHamiltonian,
    t: f64,
    opts: &IntegratorOptions,
) -> Result<f64> {
    if alpha.chain() != beta.chain() {
        return Err(Error::InvalidParams("alpha and beta live on different chains".into()));
    }
    let partition = choose_partition(alpha.operators().chain(beta.operators()))?;
    let mut diff = beta.clone();
    diff.static_part = &beta.static_part - &alpha.static_part;
    for (w, op) in &alpha.drives {
        diff.drives.push((*w, op.scaled(-1.0)));
    }
    diff.label = "beta-alpha".into();
    let tb = propagate(beta, &partition, 0.0, t, opts)?;
    let ta = propagate(alpha, &partition, 0.0, t, opts)?;
    let inner = InnerGenerator {
        alpha,
        alpha_gen: BlockHamiltonian::on(alpha, partition.clone())?,
        diff: BlockHamiltonian::on(&diff, partition.clone())?,
        opts: *opts,
        partition: partition.clone(),
    };
    let w = if diff.operators().all(|o| o.is_empty()) {
        BlockDiag::identity(partition)
    } else {
        evolve_generator(&inner, 0.0, t, opts)?.u
    };
    tb.diff_norm(&ta.mul(&w)?)
}

/// `U† A U` as a dense matrix.
pub fn heisenberg(a: &SpinOperator, u: &Propagator) -> Result<DenseMatrix> {
    if a.chain().dim() != u.dim() {
        return Err(Error::DimensionMismatch { expected: u.dim(), got: a.chain().dim() });
    }
    match a.to_blocks(u.u.partition()) {
        Ok(ab) => Ok(u.u.conjugate(&ab)?.to_dense()),
        Err(Error::NotConserving) => {
            let full = u.matrix();
            Ok(cmul(&full.adjoint(), &cmul(&a.to_dense()?, &full)))
        }
        Err(e) => Err(e),
    }
}

/// Eigendecomposition of a real symmetric one-body matrix, reusable across times.
#[derive(Clone, Debug)]
pub struct OneBody {
    pub energies: DVector<f64>,
    pub modes: DMatrix<f64>,
}

impl OneBody {
    pub fn new(h1: &DMatrix<f64>) -> OneBody {
        let (energies, modes) = symmetric_eig(h1);
        OneBody { energies, modes }
    }

    pub fn propagator(&self, t: f64) -> DenseMatrix {
        phase_reconstruct(&self.energies, &self.modes, t)
    }

    /// `⟨a| exp(-i t h1) |b⟩`.
    pub fn amplitude(&self, a: usize, b: usize, t: f64) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        for k in 0..self.energies.len() {
            z += Complex64::from_polar(self.modes[(a, k)] * self.modes[(b, k)], -t * self.energies[k]);
        }
        z
    }
}

pub fn one_body_propagator(h1: &DMatrix<f64>, t: f64) -> DenseMatrix {
    OneBody::new(h1).propagator(t)
}

/// Real symmetric blocks of a magnetization-conserving real Hamiltonian, diagonalized once.
#[derive(Clone, Debug)]
pub struct StaticSpectrum {
    pub partition: Arc<Partition>,
    pub blocks: Vec<(DVector<f64>, DMatrix<f64>)>,
}

impl StaticSpectrum {
    pub fn new(h: &SpinOperator) -> Result<StaticSpectrum> {
        let partition = choose_partition([h])?;
        let bd = h.to_blocks(&partition)?;
        let mut blocks = Vec::with_capacity(bd.blocks().len());
        for b in bd.blocks() {
            if max_imag(b) > 1e-14 {
                return Err(Error::Precondition("StaticSpectrum needs a real Hamiltonian".into()));
            }
            blocks.push(symmetric_eig(&real_part(b)));
        }
        Ok(StaticSpectrum { partition, blocks })
    }

    pub fn propagator(&self, t: f64) -> BlockDiag {
        let blocks = self.blocks.iter().map(|(w, v)| phase_reconstruct(w, v, t)).collect();
        BlockDiag::new(self.partition.clone(), blocks)
    }
}
