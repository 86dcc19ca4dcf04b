//! Combinatorics of domestic string algebras: strings and bands, bridge
//! quivers, Cantor–Bendixson ranks of Ziegler-spectrum points and the
//! Krull–Gabriel dimension, with an exact Hom oracle for cross-checking.

pub mod bands;
pub mod bridge;
pub mod homoracle;
pub mod presentation;
pub mod presets;
pub mod report;
pub mod sample;
pub mod spectrum;
pub mod words;

use thiserror::Error;

pub use bands::{is_domestic, BandSet, ClassId, Domesticity};
pub use bridge::{bridge_quiver, BridgeQuiver, Flag, IndentFilter};
pub use presentation::{parse_presentation, Presentation, StringAlgebra};
pub use spectrum::{cb_rank, kg_dimension, Analysis, KgDimension, SpectrumPoint};
pub use words::{parse_word, AnyWord, InfiniteWord, Letter, Word};

/// Any failure of the library, for callers that do not care which layer
/// raised it.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] presentation::ParseError),
    #[error(transparent)]
    Axioms(#[from] presentation::Violations),
    #[error(transparent)]
    Word(#[from] words::WordError),
    #[error(transparent)]
    Band(#[from] bands::BandError),
    #[error(transparent)]
    Bridge(#[from] bridge::BridgeError),
    #[error(transparent)]
    Spectrum(#[from] spectrum::SpectrumError),
    #[error(transparent)]
    Hom(#[from] homoracle::HomError),
}

impl Error {
    /// Domain errors concern a well-formed input the theory rejects (for
    /// example a non-domestic algebra); everything else is a usage error.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Axioms(_)
                | Error::Band(bands::BandError::NonDomestic)
                | Error::Bridge(_)
                | Error::Spectrum(spectrum::SpectrumError::NonDomestic)
        )
    }
}
