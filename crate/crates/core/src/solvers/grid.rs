use crate::error::{Error, Result};
use crate::matrix::{BlockPartition, QMatrix};
use crate::scalar::EtaAxis;

/// A block grid filled one block at a time, 1-based like the formulas it
/// transcribes. In Hermitian mode setting `(i, j)` also sets `(j, i)` to
/// its η-conjugate transpose.
pub(crate) struct BlockGrid {
    rows: BlockPartition,
    cols: BlockPartition,
    hermitian: Option<EtaAxis>,
    blocks: Vec<Vec<Option<QMatrix>>>,
}

impl BlockGrid {
    pub(crate) fn general(rows: BlockPartition, cols: BlockPartition) -> Self {
        let blocks = vec![vec![None; cols.len()]; rows.len()];
        BlockGrid {
            rows,
            cols,
            hermitian: None,
            blocks,
        }
    }

    pub(crate) fn hermitian(part: BlockPartition, eta: EtaAxis) -> Self {
        let mut g = BlockGrid::general(part.clone(), part);
        g.hermitian = Some(eta);
        g
    }

    pub(crate) fn shape(&self, i: usize, j: usize) -> (usize, usize) {
        (self.rows.size(i - 1), self.cols.size(j - 1))
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, block: QMatrix) -> Result<()> {
        if block.shape() != self.shape(i, j) {
            return Err(Error::Internal(format!(
                "block ({i},{j}) is {}x{}, grid expects {:?}",
                block.rows(),
                block.cols(),
                self.shape(i, j)
            )));
        }
        if let Some(eta) = self.hermitian {
            if i != j {
                self.blocks[j - 1][i - 1] = Some(block.eta_conj_transpose(eta));
            }
        }
        self.blocks[i - 1][j - 1] = Some(block);
        Ok(())
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> Result<&QMatrix> {
        self.blocks[i - 1][j - 1]
            .as_ref()
            .ok_or_else(|| Error::Internal(format!("block ({i},{j}) read before it was set")))
    }

    pub(crate) fn assemble(self) -> Result<QMatrix> {
        let grid: Vec<Vec<QMatrix>> = self
            .blocks
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, b)| {
                        b.ok_or_else(|| {
                            Error::Internal(format!("block ({},{}) never set", i + 1, j + 1))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        self.rows.assemble(&self.cols, &grid)
    }
}
