use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::scalar::EtaAxis;

use super::gen::{random_matrix, random_with_symmetry};

/// Symmetry a free block must carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeKind {
    General,
    EtaHermitian,
    SkewEtaHermitian,
}

/// How the arbitrary blocks of a general solution are filled.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum FreeParams {
    /// Every free block is zero.
    #[default]
    Zero,
    /// Pseudorandom blocks with the required symmetry, reproducible from the seed.
    Seed(u64),
    /// Blocks by label (`X11`, `Y22`, `Zskew`, …); missing labels are zero.
    Explicit(BTreeMap<String, QMatrix>),
}

impl FreeParams {
    pub(crate) fn filler(&self, eta: EtaAxis) -> Filler<'_> {
        Filler {
            params: self,
            eta,
            rng: match self {
                FreeParams::Seed(s) => Some(ChaCha8Rng::seed_from_u64(*s)),
                _ => None,
            },
            used: Vec::new(),
        }
    }
}

impl std::str::FromStr for FreeParams {
    type Err = Error;

    /// `zero` or `seed:<n>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "zero" {
            return Ok(FreeParams::Zero);
        }
        if let Some(n) = s.strip_prefix("seed:") {
            return n
                .parse()
                .map(FreeParams::Seed)
                .map_err(|_| Error::InvalidFreeParams(format!("bad seed `{n}`")));
        }
        Err(Error::InvalidFreeParams(format!(
            "expected `zero` or `seed:<n>`, got `{s}`"
        )))
    }
}

impl std::fmt::Display for FreeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FreeParams::Zero => write!(f, "zero"),
            FreeParams::Seed(s) => write!(f, "seed:{s}"),
            FreeParams::Explicit(map) => {
                let keys: Vec<&str> = map.keys().map(String::as_str).collect();
                write!(f, "explicit[{}]", keys.join(","))
            }
        }
    }
}

/// Hands out free blocks in a fixed order.
pub(crate) struct Filler<'a> {
    params: &'a FreeParams,
    eta: EtaAxis,
    rng: Option<ChaCha8Rng>,
    used: Vec<&'static str>,
}

impl Filler<'_> {
    pub(crate) fn block(
        &mut self,
        label: &'static str,
        rows: usize,
        cols: usize,
        kind: FreeKind,
    ) -> Result<QMatrix> {
        self.used.push(label);
        let eta = self.eta;
        match self.params {
            FreeParams::Zero => Ok(QMatrix::zeros(rows, cols)),
            FreeParams::Seed(_) => {
                let rng = self.rng.as_mut().expect("seeded filler has an rng");
                Ok(match kind {
                    FreeKind::General => random_matrix(rng, rows, cols, 0.0),
                    FreeKind::EtaHermitian => random_with_symmetry(rng, rows, eta, false),
                    FreeKind::SkewEtaHermitian => random_with_symmetry(rng, rows, eta, true),
                })
            }
            FreeParams::Explicit(map) => {
                let Some(m) = map.get(label) else {
                    return Ok(QMatrix::zeros(rows, cols));
                };
                if m.shape() != (rows, cols) {
                    return Err(Error::InvalidFreeParams(format!(
                        "{label} must be {rows}x{cols}, got {}x{}",
                        m.rows(),
                        m.cols()
                    )));
                }
                let ok = match kind {
                    FreeKind::General => true,
                    FreeKind::EtaHermitian => m.is_eta_hermitian_unchecked(eta),
                    FreeKind::SkewEtaHermitian => m.is_skew_eta_hermitian(eta),
                };
                if !ok {
                    return Err(Error::InvalidFreeParams(format!(
                        "{label} must be {}",
                        match kind {
                            FreeKind::EtaHermitian => "eta-Hermitian",
                            _ => "skew-eta-Hermitian",
                        }
                    )));
                }
                Ok(m.clone())
            }
        }
    }

    /// Rejects explicit labels the solver never asked for.
    pub(crate) fn finish(self) -> Result<()> {
        if let FreeParams::Explicit(map) = self.params {
            if let Some(unknown) = map.keys().find(|k| !self.used.contains(&k.as_str())) {
                return Err(Error::InvalidFreeParams(format!(
                    "unknown free block `{unknown}`"
                )));
            }
        }
        Ok(())
    }
}
