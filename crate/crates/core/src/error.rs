//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Semigroup(#[from] crate::semigroup::SemigroupError),
    #[error(transparent)]
    Presentation(#[from] crate::presentation::PresentationError),
    #[error(transparent)]
    Abelian(#[from] crate::abelian::AbelianError),
    #[error(transparent)]
    Module(#[from] crate::module::ModuleError),
    #[error(transparent)]
    Cohomology(#[from] crate::cohomology::CohomologyError),
    #[error(transparent)]
    Schur(#[from] crate::schur::SchurError),
    #[error(transparent)]
    Brauer(#[from] crate::brauer::BrauerError),
    #[error(transparent)]
    Partial(#[from] crate::partial::PartialError),
    #[error(transparent)]
    NatSys(#[from] crate::natsys::NatSysError),
}

impl Error {
    /// True when the computation was refused or abandoned because a size cap
    /// or enumeration bound was hit, as opposed to invalid input.
    pub fn is_cap_exceeded(&self) -> bool {
        use crate::brauer::BrauerError;
        use crate::cohomology::CohomologyError;
        use crate::natsys::NatSysError;
        use crate::partial::PartialError;
        use crate::presentation::PresentationError;
        use crate::schur::SchurError;
        fn cohom(e: &CohomologyError) -> bool {
            matches!(e, CohomologyError::CapExceeded(_))
        }
        fn schur(e: &SchurError) -> bool {
            match e {
                SchurError::CapExceeded(_) => true,
                SchurError::Cohomology(c) => cohom(c),
                _ => false,
            }
        }
        match self {
            Error::Presentation(e) => matches!(e, PresentationError::Truncated { .. }),
            Error::Cohomology(e) => cohom(e),
            Error::Schur(e) => schur(e),
            Error::Brauer(e) => match e {
                BrauerError::CapExceeded(_) => true,
                BrauerError::Cohomology(c) => cohom(c),
                _ => false,
            },
            Error::Partial(e) => match e {
                PartialError::CapExceeded(_) => true,
                PartialError::Presentation(p) => matches!(p, PresentationError::Truncated { .. }),
                PartialError::Schur(s) => schur(s),
                _ => false,
            },
            Error::NatSys(e) => match e {
                NatSysError::CapExceeded(_) => true,
                NatSysError::Cohomology(c) => cohom(c),
                _ => false,
            },
            _ => false,
        }
    }
}
