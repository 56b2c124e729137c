//! Pauli strings on a finite chain with signed site labels.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, C64};
use crate::sector::{BlockDiag, Partition};

pub const DEFAULT_DENSE_CAP: usize = 14;
pub const DROP_TOL: f64 = 1e-15;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Product of two single-site Paulis: the surviving axis and the power of i.
    fn product(self, other: Axis) -> (Option<Axis>, u8) {
        use Axis::*;
        match (self, other) {
            (X, X) | (Y, Y) | (Z, Z) => (None, 0),
            (X, Y) => (Some(Z), 1),
            (Y, X) => (Some(Z), 3),
            (Y, Z) => (Some(X), 1),
            (Z, Y) => (Some(X), 3),
            (Z, X) => (Some(Y), 1),
            (X, Z) => (Some(Y), 3),
        }
    }

    fn letter(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }
}

/// Element of the group {1, i, -1, -i}, stored as a power of i.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(k: u8) -> Phase {
        Phase(k % 4)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> C64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    fn token(self) -> &'static str {
        match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// Contiguous block of sites `first..first+len`; site `j` lives on bit `j - first`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    first: i32,
    len: usize,
}

impl Chain {
    pub fn new(first: i32, len: usize) -> Chain {
        Chain { first, len }
    }

    /// Sites -l..=l.
    pub fn centered(l: usize) -> Chain {
        Chain { first: -(l as i32), len: 2 * l + 1 }
    }

    pub fn first(&self) -> i32 {
        self.first
    }

    pub fn last(&self) -> i32 {
        self.first + self.len as i32 - 1
    }

    pub fn n_sites(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        1usize << self.len
    }

    pub fn contains(&self, site: i32) -> bool {
        site >= self.first && site <= self.last()
    }

    pub fn sites(&self) -> impl Iterator<Item = i32> {
        self.first..=self.last()
    }

    pub fn bit(&self, site: i32) -> usize {
        debug_assert!(self.contains(site));
        (site - self.first) as usize
    }

    pub fn check(&self, site: i32) -> Result<()> {
        if self.contains(site) {
            Ok(())
        } else {
            Err(Error::SiteOutOfChain { site, first: self.first, last: self.last() })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PauliString {
    pub axes: BTreeMap<i32, Axis>,
    pub phase: Phase,
}

impl PauliString {
    pub fn identity() -> PauliString {
        PauliString::default()
    }

    pub fn single(site: i32, axis: Axis) -> PauliString {
        PauliString::from_pairs(&[(site, axis)])
    }

    /// Panics on repeated sites; use the parser for untrusted input.
    pub fn from_pairs(pairs: &[(i32, Axis)]) -> PauliString {
        let mut axes = BTreeMap::new();
        for &(s, a) in pairs {
            assert!(axes.insert(s, a).is_none(), "site {s} repeated");
        }
        PauliString { axes, phase: Phase::ONE }
    }

    pub fn with_phase(mut self, phase: Phase) -> PauliString {
        self.phase = phase;
        self
    }

    pub fn support(&self) -> impl Iterator<Item = i32> + '_ {
        self.axes.keys().copied()
    }

    pub fn is_identity(&self) -> bool {
        self.axes.is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.axes.values().all(|&a| a == Axis::Z)
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let clashes = self
            .axes
            .iter()
            .filter(|(s, a)| other.axes.get(s).is_some_and(|b| b != *a))
            .count();
        clashes % 2 == 0
    }

    pub fn min_site(&self) -> Option<i32> {
        self.axes.keys().next().copied()
    }

    pub fn max_site(&self) -> Option<i32> {
        self.axes.keys().next_back().copied()
    }

    /// Bit masks on `chain`: (flip mask, sign mask, number of Y factors).
    pub(crate) fn masks(&self, chain: &Chain) -> (usize, usize, u32) {
        let (mut flip, mut sign, mut ny) = (0usize, 0usize, 0u32);
        for (&s, &a) in &self.axes {
            let b = 1usize << chain.bit(s);
            match a {
                Axis::X => flip |= b,
                Axis::Y => {
                    flip |= b;
                    sign |= b;
                    ny += 1;
                }
                Axis::Z => sign |= b,
            }
        }
        (flip, sign, ny)
    }
}

pub fn pauli_mul(a: &PauliString, b: &PauliString) -> PauliString {
    let mut axes = a.axes.clone();
    let mut power = a.phase.power() + b.phase.power();
    for (&s, &bb) in &b.axes {
        match axes.get(&s) {
            None => {
                axes.insert(s, bb);
            }
            Some(&aa) => {
                let (c, k) = aa.product(bb);
                power += k;
                match c {
                    Some(c) => {
                        axes.insert(s, c);
                    }
                    None => {
                        axes.remove(&s);
                    }
                }
            }
        }
    }
    PauliString { axes, phase: Phase::from_power(power) }
}

/// `ab - ba` on `chain`; empty exactly when the strings commute.
pub fn pauli_commutator(chain: Chain, a: &PauliString, b: &PauliString) -> SpinOperator {
    let mut out = SpinOperator::zero(chain);
    if !a.commutes_with(b) {
        out.add_string(Complex64::new(2.0, 0.0), &pauli_mul(a, b));
    }
    out
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase.token())?;
        if self.axes.is_empty() {
            return write!(f, " I");
        }
        for (s, a) in &self.axes {
            write!(f, " {}{}", a.letter(), s)?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(input: &str) -> Result<PauliString> {
        let err = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        let mut tokens = input.split_whitespace().peekable();
        let mut phase = Phase::ONE;
        if let Some(&tok) = tokens.peek() {
            let p = match tok {
                "+" => Some(Phase::ONE),
                "-" => Some(Phase::MINUS_ONE),
                "+i" | "i" => Some(Phase::I),
                "-i" => Some(Phase::MINUS_I),
                _ => None,
            };
            if let Some(p) = p {
                phase = p;
                tokens.next();
            }
        }
        let mut axes = BTreeMap::new();
        for tok in tokens {
            if tok == "I" {
                continue;
            }
            let mut chars = tok.chars();
            let axis = match chars.next() {
                Some('X') | Some('x') => Axis::X,
                Some('Y') | Some('y') => Axis::Y,
                Some('Z') | Some('z') => Axis::Z,
                _ => return Err(err(&format!("bad factor {tok:?}"))),
            };
            let site: i32 = chars.as_str().parse().map_err(|_| err(&format!("bad site in {tok:?}")))?;
            if axes.insert(site, axis).is_some() {
                return Err(err(&format!("site {site} repeated")));
            }
        }
        Ok(PauliString { axes, phase })
    }
}

/// Canonical sum of Pauli strings; phases are folded into the coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinOperator {
    chain: Chain,
    terms: BTreeMap<BTreeMap<i32, Axis>, C64>,
}

impl SpinOperator {
    pub fn zero(chain: Chain) -> SpinOperator {
        SpinOperator { chain, terms: BTreeMap::new() }
    }

    pub fn identity(chain: Chain) -> SpinOperator {
        let mut op = SpinOperator::zero(chain);
        op.add_string(Complex64::new(1.0, 0.0), &PauliString::identity());
        op
    }

    pub fn from_string(chain: Chain, coeff: f64, s: &PauliString) -> Result<SpinOperator> {
        let mut op = SpinOperator::zero(chain);
        op.try_add_string(Complex64::new(coeff, 0.0), s)?;
        Ok(op)
    }

    /// Convenience for real-weighted sums of strings written as text.
    pub fn parse_sum(chain: Chain, terms: &[(f64, &str)]) -> Result<SpinOperator> {
        let mut op = SpinOperator::zero(chain);
        for &(c, s) in terms {
            op.try_add_string(Complex64::new(c, 0.0), &s.parse()?)?;
        }
        Ok(op)
    }

    pub fn chain(&self) -> Chain {
        self.chain
    }

    pub fn n_sites(&self) -> usize {
        self.chain.n_sites()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (C64, PauliString)> + '_ {
        self.terms
            .iter()
            .map(|(axes, &c)| (c, PauliString { axes: axes.clone(), phase: Phase::ONE }))
    }

    pub fn coefficient(&self, s: &PauliString) -> C64 {
        self.terms.get(&s.axes).copied().unwrap_or_default() * s.phase.to_complex().conj()
    }

    pub fn try_add_string(&mut self, coeff: C64, s: &PauliString) -> Result<()> {
        for site in s.support() {
            self.chain.check(site)?;
        }
        self.add_string(coeff, s);
        Ok(())
    }

    /// Panics if the string leaves the chain.
    pub fn add_string(&mut self, coeff: C64, s: &PauliString) {
        for site in s.support() {
            assert!(self.chain.contains(site), "site {site} outside chain");
        }
        let c = coeff * s.phase.to_complex();
        let entry = self.terms.entry(s.axes.clone()).or_default();
        *entry += c;
        if entry.norm() < DROP_TOL {
            self.terms.remove(&s.axes);
        }
    }

    pub fn add_assign_op(&mut self, coeff: C64, other: &SpinOperator) {
        assert_eq!(self.chain, other.chain, "chain mismatch");
        for (axes, &c) in &other.terms {
            let entry = self.terms.entry(axes.clone()).or_default();
            *entry += coeff * c;
            if entry.norm() < DROP_TOL {
                self.terms.remove(axes);
            }
        }
    }

    pub fn scaled(&self, c: f64) -> SpinOperator {
        let mut out = SpinOperator::zero(self.chain);
        out.add_assign_op(Complex64::new(c, 0.0), self);
        out
    }

    pub fn adjoint(&self) -> SpinOperator {
        SpinOperator {
            chain: self.chain,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.conj())).collect(),
        }
    }

    pub fn product(&self, other: &SpinOperator) -> SpinOperator {
        assert_eq!(self.chain, other.chain, "chain mismatch");
        let mut out = SpinOperator::zero(self.chain);
        for (ca, a) in self.terms() {
            for (cb, b) in other.terms() {
                out.add_string(ca * cb, &pauli_mul(&a, &b));
            }
        }
        out
    }

    pub fn commutator(&self, other: &SpinOperator) -> SpinOperator {
        assert_eq!(self.chain, other.chain, "chain mismatch");
        let mut out = SpinOperator::zero(self.chain);
        for (ca, a) in self.terms() {
            for (cb, b) in other.terms() {
                if !a.commutes_with(&b) {
                    out.add_string(2.0 * ca * cb, &pauli_mul(&a, &b));
                }
            }
        }
        out
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    /// Union of the supports of all terms.
    pub fn support(&self) -> Vec<i32> {
        let mut s: Vec<i32> = self.terms.keys().flat_map(|k| k.keys().copied()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Triangle-inequality norm bound: sum of |coefficients|.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// The single string and coefficient, when the operator has exactly one term.
    pub fn as_single(&self) -> Option<(C64, PauliString)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Same terms on a different chain containing every support site.
    pub fn rechain(&self, chain: Chain) -> Result<SpinOperator> {
        let mut out = SpinOperator::zero(chain);
        for (c, s) in self.terms() {
            out.try_add_string(c, &s)?;
        }
        Ok(out)
    }

    /// Calls `f(row, value)` for every nonzero entry of column `col`.
    pub(crate) fn apply_to_basis(&self, masks: &[(usize, usize, C64)], col: usize, mut f: impl FnMut(usize, C64)) {
        for &(flip, sign, c) in masks {
            let v = if (col & sign).count_ones() % 2 == 1 { -c } else { c };
            f(col ^ flip, v);
        }
    }

    pub(crate) fn term_masks(&self) -> Vec<(usize, usize, C64)> {
        self.terms()
            .map(|(c, s)| {
                let (flip, sign, ny) = s.masks(&self.chain);
                (flip, sign, c * Phase::from_power((ny % 4) as u8).to_complex())
            })
            .collect()
    }

    pub fn to_dense(&self) -> Result<DenseMatrix> {
        self.to_dense_with_cap(DEFAULT_DENSE_CAP)
    }

    pub fn to_dense_with_cap(&self, cap: usize) -> Result<DenseMatrix> {
        let n = self.n_sites();
        if n > cap {
            return Err(Error::SizeCap { n, cap });
        }
        let dim = 1usize << n;
        let masks = self.term_masks();
        let mut m = DMatrix::<C64>::zeros(dim, dim);
        for col in 0..dim {
            self.apply_to_basis(&masks, col, |row, v| m[(row, col)] += v);
        }
        Ok(m)
    }

    /// Restriction to the blocks of `partition`; fails if any term couples two blocks.
    pub fn to_blocks(&self, partition: &std::sync::Arc<Partition>) -> Result<BlockDiag> {
        if partition.dim() != self.chain.dim() {
            return Err(Error::DimensionMismatch { expected: self.chain.dim(), got: partition.dim() });
        }
        let masks = self.term_masks();
        let mut blocks = Vec::with_capacity(partition.n_blocks());
        for (b, basis) in partition.blocks().iter().enumerate() {
            let mut m = DMatrix::<C64>::zeros(basis.len(), basis.len());
            // individual strings may leave the block while their sum does not
            let mut leaked: Vec<(usize, C64)> = Vec::new();
            for (j, &col) in basis.iter().enumerate() {
                leaked.clear();
                self.apply_to_basis(&masks, col, |row, v| {
                    let (rb, ri) = partition.locate(row);
                    if rb == b {
                        m[(ri, j)] += v;
                    } else {
                        match leaked.iter_mut().find(|e| e.0 == row) {
                            Some(e) => e.1 += v,
                            None => leaked.push((row, v)),
                        }
                    }
                });
                if leaked.iter().any(|e| e.1.norm() > DROP_TOL) {
                    return Err(Error::NotConserving);
                }
            }
            blocks.push(m);
        }
        Ok(BlockDiag::new(partition.clone(), blocks))
    }
}

impl Add for &SpinOperator {
    type Output = SpinOperator;
    fn add(self, rhs: &SpinOperator) -> SpinOperator {
        let mut out = self.clone();
        out.add_assign_op(Complex64::new(1.0, 0.0), rhs);
        out
    }
}

impl Sub for &SpinOperator {
    type Output = SpinOperator;
    fn sub(self, rhs: &SpinOperator) -> SpinOperator {
        let mut out = self.clone();
        out.add_assign_op(Complex64::new(-1.0, 0.0), rhs);
        out
    }
}

impl Neg for &SpinOperator {
    type Output = SpinOperator;
    fn neg(self) -> SpinOperator {
        self.scaled(-1.0)
    }
}

impl fmt::Display for SpinOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, s)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i)[{}]", c.re, c.im, &s.to_string()[2..])?;
        }
        Ok(())
    }
}

/// `exp(i a Z_p Z_{p+1})` as a closed form: `cos a + i sin a ZZ`.
pub struct ZzExp {
    pub matrix: DenseMatrix,
    pub operator: SpinOperator,
}

pub fn exp_zz(a: f64) -> ZzExp {
    let chain = Chain::new(0, 2);
    let mut operator = SpinOperator::zero(chain);
    operator.add_string(Complex64::new(a.cos(), 0.0), &PauliString::identity());
    operator.add_string(Complex64::new(0.0, a.sin()), &zz(0));
    let matrix = operator.to_dense().expect("two sites");
    ZzExp { matrix, operator }
}

pub fn zz(p: i32) -> PauliString {
    PauliString::from_pairs(&[(p, Axis::Z), (p + 1, Axis::Z)])
}

/// `exp(i s Δ Z_p Z_{p+1}) op exp(-i s Δ Z_p Z_{p+1})`, term by term.
///
/// A string commuting with the bond is unchanged; an anticommuting one `P`
/// becomes `cos(2sΔ) P + i sin(2sΔ) ZZ·P`.
pub fn conjugate_by_zz(op: &SpinOperator, s: f64, delta: f64, p: i32) -> Result<SpinOperator> {
    let chain = op.chain();
    chain.check(p)?;
    chain.check(p + 1)?;
    let bond = zz(p);
    let theta = 2.0 * s * delta;
    let (c, sn) = (theta.cos(), theta.sin());
    let mut out = SpinOperator::zero(chain);
    for (coef, term) in op.terms() {
        if term.commutes_with(&bond) {
            out.add_string(coef, &term);
        } else {
            out.add_string(coef * c, &term);
            out.add_string(coef * Complex64::new(0.0, sn), &pauli_mul(&bond, &term));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn single_site_products() {
        assert_eq!(pauli_mul(&ps("X0"), &ps("Y0")), ps("+i Z0"));
        assert_eq!(pauli_mul(&ps("Y0"), &ps("X0")), ps("-i Z0"));
        assert_eq!(pauli_mul(&ps("Z0 Z1"), &ps("Z0 Z1")), PauliString::identity());
    }

    #[test]
    fn commutator_examples() {
        let ch = Chain::new(0, 2);
        assert!(pauli_commutator(ch, &ps("Z0 Z1"), &ps("X0 X1")).is_empty());
        let c = pauli_commutator(ch, &ps("Z0 Z1"), &ps("X0"));
        assert_eq!(c.len(), 1);
        assert!((c.coefficient(&ps("Y0 Z1")) - Complex64::new(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn text_round_trip() {
        for s in ["+ X-1 Y0 Z1", "-i Z3", "+i X-2", "- I", "+ I"] {
            let p = ps(s);
            assert_eq!(p.to_string().parse::<PauliString>().unwrap(), p);
        }
        assert!("+ X0 Z0".parse::<PauliString>().is_err());
        assert!("+ Q0".parse::<PauliString>().is_err());
        assert!("+ X".parse::<PauliString>().is_err());
    }

    #[test]
    fn dense_small_cases() {
        let id = SpinOperator::identity(Chain::new(0, 3)).to_dense().unwrap();
        assert_eq!(id, DMatrix::identity(8, 8));
        let z = SpinOperator::from_string(Chain::new(0, 1), 1.0, &ps("Z0")).unwrap().to_dense().unwrap();
        assert_eq!(z[(0, 0)].re, 1.0);
        assert_eq!(z[(1, 1)].re, -1.0);
        let big = SpinOperator::identity(Chain::new(0, 15));
        assert!(matches!(big.to_dense(), Err(Error::SizeCap { n: 15, cap: 14 })));
    }

    #[test]
    fn exp_zz_quarter_turn() {
        let e = exp_zz(std::f64::consts::FRAC_PI_2);
        let target = SpinOperator::zero(Chain::new(0, 2));
        let mut target = target;
        target.add_string(Complex64::new(0.0, 1.0), &zz(0));
        assert!((e.matrix - target.to_dense().unwrap()).norm() < 1e-15);
    }

    #[test]
    fn conjugation_closed_forms() {
        let ch = Chain::new(-1, 3);
        let xx01 = SpinOperator::parse_sum(ch, &[(1.0, "X0 X1")]).unwrap();
        assert_eq!(conjugate_by_zz(&xx01, 0.37, 2.0, 0).unwrap(), xx01);
        let delta = 1.3;
        let s = std::f64::consts::PI / (4.0 * delta);
        let xx = SpinOperator::parse_sum(ch, &[(1.0, "X-1 X0")]).unwrap();
        let out = conjugate_by_zz(&xx, s, delta, 0).unwrap();
        assert!((out.coefficient(&ps("X-1 Y0 Z1")) + 1.0).norm() < 1e-15);
        assert!(out.coefficient(&ps("X-1 X0")).norm() < 1e-15);
    }

    #[test]
    fn site_checks() {
        let ch = Chain::centered(1);
        assert!(SpinOperator::from_string(ch, 1.0, &ps("X2")).is_err());
        assert!(conjugate_by_zz(&SpinOperator::zero(ch), 0.1, 1.0, 1).is_err());
    }
}
