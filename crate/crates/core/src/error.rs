use thiserror::Error;

use crate::count::CountError;
use crate::eliminate::EliminateError;
use crate::ff::FieldError;
use crate::instances::InstanceError;
use crate::mpoly::MpolyError;
use crate::oracle::OracleError;
use crate::resultant::ResultantError;
use crate::upoly::UpolyError;

/// Any error the crate reports.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Upoly(#[from] UpolyError),
    #[error(transparent)]
    Mpoly(#[from] MpolyError),
    #[error(transparent)]
    Resultant(#[from] ResultantError),
    #[error(transparent)]
    Eliminate(#[from] EliminateError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl Error {
    /// Whether the error comes from reading polynomial text.
    pub fn is_parse(&self) -> bool {
        let syntax = |e: &MpolyError| {
            matches!(
                e,
                MpolyError::Syntax { .. }
                    | MpolyError::UnknownVariable { .. }
                    | MpolyError::ExponentOverflow { .. }
            )
        };
        match self {
            Error::Mpoly(e) => syntax(e),
            _ => false,
        }
    }
}
