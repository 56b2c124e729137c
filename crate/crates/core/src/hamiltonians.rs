//! XY chain with random fields and sparse ZZ bonds, its commuting splits and drives.

use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Axis, Chain, PauliString, SpinOperator};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainParams {
    /// Half-length: sites run over -l..=l.
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "Delta")]
    pub delta: f64,
    #[serde(rename = "Omega")]
    pub omega: f64,
    #[serde(default = "default_zz_sites")]
    pub zz_sites: Vec<i32>,
}

fn default_zz_sites() -> Vec<i32> {
    vec![0]
}

impl ChainParams {
    pub fn new(l: usize, j: f64, delta: f64, omega: f64) -> ChainParams {
        ChainParams { l, j, delta, omega, zz_sites: vec![0] }
    }

    pub fn with_delta(&self, delta: f64) -> ChainParams {
        ChainParams { delta, ..self.clone() }
    }

    pub fn chain(&self) -> Chain {
        Chain::centered(self.l)
    }

    pub fn n_sites(&self) -> usize {
        2 * self.l + 1
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if self.l < 2 {
            return bad(format!("L = {} must be at least 2", self.l));
        }
        if !(self.j > 0.0 && self.j.is_finite()) {
            return bad(format!("J = {} must be positive", self.j));
        }
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return bad(format!("Delta = {} must be nonnegative", self.delta));
        }
        if !(self.omega >= 0.0 && self.omega.is_finite()) {
            return bad(format!("Omega = {} must be nonnegative", self.omega));
        }
        let l = self.l as i32;
        let mut sites = self.zz_sites.clone();
        sites.sort_unstable();
        for &p in &sites {
            if p < -l || p + 1 > l {
                return bad(format!("zz bond {{{p},{}}} leaves the chain", p + 1));
            }
        }
        for w in sites.windows(2) {
            if w[1] - w[0] < 4 {
                return bad(format!("zz bonds at {} and {} are closer than 4 sites", w[0], w[1]));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisorderRealization {
    pub omega: Vec<f64>,
    pub seed: u64,
    pub stream: u64,
    pub distribution: String,
}

impl DisorderRealization {
    pub fn zero(n: usize) -> DisorderRealization {
        DisorderRealization { omega: vec![0.0; n], seed: 0, stream: 0, distribution: "uniform".into() }
    }

    /// Field on signed site `j` of a centered chain.
    pub fn at(&self, l: usize, site: i32) -> f64 {
        self.omega[(site + l as i32) as usize]
    }

    pub fn write_csv<W: Write>(&self, l: usize, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["site", "omega"])?;
        for (k, x) in self.omega.iter().enumerate() {
            out.write_record([(k as i64 - l as i64).to_string(), format!("{x:.17e}")])?;
        }
        out.flush()?;
        Ok(())
    }
}

pub fn sample_disorder(omega: f64, seed: u64, n: usize) -> DisorderRealization {
    sample_disorder_stream(omega, seed, 0, n)
}

/// Realization `stream` of the ensemble with base `seed`; independent of evaluation order.
pub fn sample_disorder_stream(omega: f64, seed: u64, stream: u64, n: usize) -> DisorderRealization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let omega_vec = (0..n).map(|_| omega * (2.0 * rng.random::<f64>() - 1.0)).collect();
    DisorderRealization { omega: omega_vec, seed, stream, distribution: "uniform".into() }
}

pub(crate) fn string(pairs: &[(i32, Axis)]) -> PauliString {
    PauliString::from_pairs(pairs)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `J (X_k X_{k+1} + Y_k Y_{k+1})`.
pub fn hopping(chain: Chain, k: i32, j: f64) -> SpinOperator {
    let mut op = SpinOperator::zero(chain);
    op.add_string(real(j), &string(&[(k, Axis::X), (k + 1, Axis::X)]));
    op.add_string(real(j), &string(&[(k, Axis::Y), (k + 1, Axis::Y)]));
    op
}

pub fn field(chain: Chain, k: i32, w: f64) -> SpinOperator {
    let mut op = SpinOperator::zero(chain);
    op.add_string(real(w), &string(&[(k, Axis::Z)]));
    op
}

pub fn zz_term(chain: Chain, p: i32, delta: f64) -> SpinOperator {
    let mut op = SpinOperator::zero(chain);
    op.add_string(real(delta), &string(&[(p, Axis::Z), (p + 1, Axis::Z)]));
    op
}

fn check_disorder(p: &ChainParams, d: &DisorderRealization) -> Result<()> {
    if d.omega.len() != p.n_sites() {
        return Err(Error::DimensionMismatch { expected: p.n_sites(), got: d.omega.len() });
    }
    Ok(())
}

pub fn build_h_omega(p: &ChainParams, d: &DisorderRealization) -> Result<SpinOperator> {
    p.validate()?;
    check_disorder(p, d)?;
    let chain = p.chain();
    let l = p.l as i32;
    let mut h = SpinOperator::zero(chain);
    for k in -l..l {
        h = &h + &hopping(chain, k, p.j);
    }
    for k in -l..=l {
        h = &h + &field(chain, k, d.at(p.l, k));
    }
    for &q in &p.zz_sites {
        h = &h + &zz_term(chain, q, p.delta);
    }
    Ok(h)
}

/// `E` and its mutually commuting pieces.
///
/// For a single bond at `p` the pieces are `[E1, E2, E3]`: the bond block,
/// everything to its left, everything to its right. With several bonds the
/// bond blocks come first (in bond order) followed by the segments between them.
#[derive(Clone, Debug)]
pub struct ESplit {
    pub e: SpinOperator,
    pub parts: Vec<SpinOperator>,
}

impl ESplit {
    pub fn e1(&self) -> &SpinOperator {
        &self.parts[0]
    }
    pub fn e2(&self) -> &SpinOperator {
        &self.parts[1]
    }
    pub fn e3(&self) -> &SpinOperator {
        &self.parts[2]
    }
}

pub fn build_e_split(p: &ChainParams, d: &DisorderRealization) -> Result<ESplit> {
    p.validate()?;
    check_disorder(p, d)?;
    let chain = p.chain();
    let l = p.l as i32;
    let mut bonds = p.zz_sites.clone();
    bonds.sort_unstable();
    let in_core = |s: i32| bonds.iter().any(|&q| s == q || s == q + 1);

    let mut cores = Vec::new();
    for &q in &bonds {
        let mut e = hopping(chain, q, p.j);
        e = &e + &field(chain, q, d.at(p.l, q));
        e = &e + &field(chain, q + 1, d.at(p.l, q + 1));
        cores.push(e);
    }
    // Segments: maximal runs of sites outside every bond block.
    let mut segments = Vec::new();
    let mut bounds = vec![-l - 1];
    for &q in &bonds {
        bounds.push(q);
        bounds.push(q + 1);
    }
    bounds.push(l + 1);
    for w in bounds.chunks(2) {
        let (lo, hi) = (w[0] + 1, w[1] - 1);
        let mut seg = SpinOperator::zero(chain);
        for s in lo..=hi {
            debug_assert!(!in_core(s));
            seg = &seg + &field(chain, s, d.at(p.l, s));
            if s < hi {
                seg = &seg + &hopping(chain, s, p.j);
            }
        }
        segments.push(seg);
    }
    let mut e = SpinOperator::zero(chain);
    for part in cores.iter().chain(&segments) {
        e = &e + part;
    }
    cores.extend(segments);
    Ok(ESplit { e, parts: cores })
}

/// Boundary hoppings of every bond (`C1`) and their chiral partners (`C2`).
pub fn build_c1_c2(p: &ChainParams) -> (SpinOperator, SpinOperator) {
    let chain = p.chain();
    let j = p.j;
    let mut c1 = SpinOperator::zero(chain);
    let mut c2 = SpinOperator::zero(chain);
    for &q in &p.zz_sites {
        let (c1l, c2l) = left_pieces(chain, q, j);
        let (c1r, c2r) = right_pieces(chain, q, j);
        c1 = &(&c1 + &c1l) + &c1r;
        c2 = &(&c2 + &c2l) + &c2r;
    }
    (c1, c2)
}

/// Pieces of C1 on {q-1,q} and C2 on {q-1,q,q+1}; empty at the chain edge.
pub fn left_pieces(chain: Chain, q: i32, j: f64) -> (SpinOperator, SpinOperator) {
    let mut c1 = SpinOperator::zero(chain);
    let mut c2 = SpinOperator::zero(chain);
    if chain.contains(q - 1) {
        c1 = hopping(chain, q - 1, j);
        c2.add_string(real(j), &string(&[(q - 1, Axis::Y), (q, Axis::X), (q + 1, Axis::Z)]));
        c2.add_string(real(-j), &string(&[(q - 1, Axis::X), (q, Axis::Y), (q + 1, Axis::Z)]));
    }
    (c1, c2)
}

/// Pieces of C1 on {q+1,q+2} and C2 on {q,q+1,q+2}.
pub fn right_pieces(chain: Chain, q: i32, j: f64) -> (SpinOperator, SpinOperator) {
    let mut c1 = SpinOperator::zero(chain);
    let mut c2 = SpinOperator::zero(chain);
    if chain.contains(q + 2) {
        c1 = hopping(chain, q + 1, j);
        c2.add_string(real(j), &string(&[(q, Axis::Z), (q + 1, Axis::X), (q + 2, Axis::Y)]));
        c2.add_string(real(-j), &string(&[(q, Axis::Z), (q + 1, Axis::Y), (q + 2, Axis::X)]));
    }
    (c1, c2)
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Waveform {
    Const,
    Cos { freq: f64 },
    Sin { freq: f64 },
}

impl Waveform {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Waveform::Const => 1.0,
            Waveform::Cos { freq } => (freq * t).cos(),
            Waveform::Sin { freq } => (freq * t).sin(),
        }
    }

    pub fn freq(&self) -> f64 {
        match *self {
            Waveform::Const => 0.0,
            Waveform::Cos { freq } | Waveform::Sin { freq } => freq.abs(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TimeDependentHamiltonian {
    pub static_part: SpinOperator,
    pub drives: Vec<(Waveform, SpinOperator)>,
    pub label: String,
}

impl TimeDependentHamiltonian {
    pub fn constant(h: SpinOperator, label: &str) -> TimeDependentHamiltonian {
        TimeDependentHamiltonian { static_part: h, drives: Vec::new(), label: label.into() }
    }

    pub fn chain(&self) -> Chain {
        self.static_part.chain()
    }

    pub fn eval(&self, t: f64) -> SpinOperator {
        let mut h = self.static_part.clone();
        for (w, op) in &self.drives {
            h.add_assign_op(real(w.eval(t)), op);
        }
        h
    }

    pub fn is_static(&self) -> bool {
        self.drives.iter().all(|(w, op)| matches!(w, Waveform::Const) || op.is_empty())
    }

    /// Highest drive angular frequency.
    pub fn max_freq(&self) -> f64 {
        self.drives.iter().map(|(w, _)| w.freq()).fold(0.0, f64::max)
    }

    /// Every operator involved, static part first.
    pub fn operators(&self) -> impl Iterator<Item = &SpinOperator> {
        std::iter::once(&self.static_part).chain(self.drives.iter().map(|(_, op)| op))
    }

    pub fn rechain(&self, chain: Chain) -> Result<TimeDependentHamiltonian> {
        Ok(TimeDependentHamiltonian {
            static_part: self.static_part.rechain(chain)?,
            drives: self.drives.iter().map(|(w, op)| Ok((*w, op.rechain(chain)?))).collect::<Result<_>>()?,
            label: self.label.clone(),
        })
    }

    pub fn sum(&self, other: &TimeDependentHamiltonian) -> TimeDependentHamiltonian {
        let mut drives = self.drives.clone();
        drives.extend(other.drives.iter().cloned());
        TimeDependentHamiltonian {
            static_part: &self.static_part + &other.static_part,
            drives,
            label: format!("{}+{}", self.label, other.label),
        }
    }
}

/// `G(t) = E + cos(2Δt) C1 + sin(2Δt) C2`.
pub fn build_g(p: &ChainParams, d: &DisorderRealization) -> Result<TimeDependentHamiltonian> {
    let split = build_e_split(p, d)?;
    let (c1, c2) = build_c1_c2(p);
    let w = 2.0 * p.delta;
    Ok(TimeDependentHamiltonian {
        static_part: split.e,
        drives: vec![(Waveform::Cos { freq: w }, c1), (Waveform::Sin { freq: w }, c2)],
        label: "G".into(),
    })
}

/// One-body hopping matrix of the Δ = 0 chain: `2J` off the diagonal, `2ω_j` on it.
///
/// The many-body one-particle sector (a single up spin) has spectrum
/// `eig(h1) + one_body_shift(d)`.
pub fn one_body_hamiltonian(p: &ChainParams, d: &DisorderRealization) -> Result<DMatrix<f64>> {
    if p.delta != 0.0 {
        return Err(Error::Precondition("the one-body matrix exists only at Delta = 0".into()));
    }
    check_disorder(p, d)?;
    let n = p.n_sites();
    let mut h = DMatrix::zeros(n, n);
    for k in 0..n {
        h[(k, k)] = 2.0 * d.omega[k];
        if k + 1 < n {
            h[(k, k + 1)] = 2.0 * p.j;
            h[(k + 1, k)] = 2.0 * p.j;
        }
    }
    Ok(h)
}

pub fn one_body_shift(d: &DisorderRealization) -> f64 {
    -d.omega.iter().sum::<f64>()
}
