//! Block-diagonal operators over a partition of the computational basis.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{cmul, hermitian_norm, spectral_norm, DenseMatrix};

/// Disjoint index sets covering `0..dim`.
#[derive(Debug, PartialEq)]
pub struct Partition {
    dim: usize,
    blocks: Vec<Vec<usize>>,
    loc: Vec<(usize, usize)>,
}

impl Partition {
    pub fn from_blocks(dim: usize, blocks: Vec<Vec<usize>>) -> Partition {
        let mut loc = vec![(usize::MAX, 0); dim];
        for (b, basis) in blocks.iter().enumerate() {
            for (i, &k) in basis.iter().enumerate() {
                loc[k] = (b, i);
            }
        }
        assert!(loc.iter().all(|l| l.0 != usize::MAX), "partition does not cover the space");
        Partition { dim, blocks, loc }
    }

    pub fn trivial(dim: usize) -> Arc<Partition> {
        Arc::new(Partition::from_blocks(dim, vec![(0..dim).collect()]))
    }

    /// Fixed number of set bits, i.e. fixed total magnetization.
    pub fn magnetization(n_sites: usize) -> Arc<Partition> {
        let dim = 1usize << n_sites;
        let mut blocks = vec![Vec::new(); n_sites + 1];
        for k in 0..dim {
            blocks[k.count_ones() as usize].push(k);
        }
        Arc::new(Partition::from_blocks(dim, blocks))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn locate(&self, k: usize) -> (usize, usize) {
        self.loc[k]
    }
}

#[derive(Clone, Debug)]
pub struct BlockDiag {
    partition: Arc<Partition>,
    blocks: Vec<DenseMatrix>,
}

impl BlockDiag {
    pub fn new(partition: Arc<Partition>, blocks: Vec<DenseMatrix>) -> BlockDiag {
        assert_eq!(partition.n_blocks(), blocks.len());
        BlockDiag { partition, blocks }
    }

    pub fn identity(partition: Arc<Partition>) -> BlockDiag {
        let blocks = partition.blocks().iter().map(|b| DenseMatrix::identity(b.len(), b.len())).collect();
        BlockDiag { partition, blocks }
    }

    pub fn partition(&self) -> &Arc<Partition> {
        &self.partition
    }

    pub fn blocks(&self) -> &[DenseMatrix] {
        &self.blocks
    }

    pub fn blocks_mut(&mut self) -> &mut [DenseMatrix] {
        &mut self.blocks
    }

    pub fn dim(&self) -> usize {
        self.partition.dim()
    }

    fn same_shape(&self, other: &BlockDiag) -> Result<()> {
        if Arc::ptr_eq(&self.partition, &other.partition) || self.partition == other.partition {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() })
        }
    }

    pub fn mul(&self, other: &BlockDiag) -> Result<BlockDiag> {
        self.same_shape(other)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| cmul(a, b)).collect();
        Ok(BlockDiag { partition: self.partition.clone(), blocks })
    }

    pub fn adjoint(&self) -> BlockDiag {
        BlockDiag { partition: self.partition.clone(), blocks: self.blocks.iter().map(|b| b.adjoint()).collect() }
    }

    pub fn axpy(&self, alpha: f64, other: &BlockDiag) -> Result<BlockDiag> {
        self.same_shape(other)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b.scale(alpha)).collect();
        Ok(BlockDiag { partition: self.partition.clone(), blocks })
    }

    pub fn scale(&self, alpha: f64) -> BlockDiag {
        BlockDiag { partition: self.partition.clone(), blocks: self.blocks.iter().map(|b| b.scale(alpha)).collect() }
    }

    /// Spectral norm, block by block.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(spectral_norm).fold(0.0, f64::max)
    }

    /// Spectral norm assuming every block is Hermitian.
    pub fn hermitian_norm(&self) -> f64 {
        self.blocks.iter().map(hermitian_norm).fold(0.0, f64::max)
    }

    pub fn diff_norm(&self, other: &BlockDiag) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self.blocks.iter().zip(&other.blocks).map(|(a, b)| spectral_norm(&(a - b))).fold(0.0, f64::max))
    }

    /// `U† A U`, block by block.
    pub fn conjugate(&self, a: &BlockDiag) -> Result<BlockDiag> {
        self.adjoint().mul(&a.mul(self)?)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.dim();
        let mut m = DenseMatrix::zeros(n, n);
        for (basis, blk) in self.partition.blocks().iter().zip(&self.blocks) {
            for (j, &cj) in basis.iter().enumerate() {
                for (i, &ri) in basis.iter().enumerate() {
                    m[(ri, cj)] = blk[(i, j)];
                }
            }
        }
        m
    }

    /// Restriction of a dense matrix that is already block diagonal.
    pub fn from_dense(partition: Arc<Partition>, m: &DenseMatrix) -> BlockDiag {
        let blocks = partition
            .blocks()
            .iter()
            .map(|basis| DenseMatrix::from_fn(basis.len(), basis.len(), |i, j| m[(basis[i], basis[j])]))
            .collect();
        BlockDiag { partition, blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|z| *z == Complex64::new(0.0, 0.0)))
    }
}
