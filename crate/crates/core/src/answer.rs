//! Solver answers.

use crate::instance::Packing;

/// What a solver concluded about an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    /// A packing of the demanded size was found; it is the certificate.
    Yes(Packing),
    /// Proven: no packing of the demanded size exists.
    No,
    /// A randomized search found nothing. Not a proof.
    NoProbable,
}

impl Answer {
    pub fn is_yes(&self) -> bool {
        matches!(self, Answer::Yes(_))
    }

    pub fn packing(&self) -> Option<&Packing> {
        match self {
            Answer::Yes(p) => Some(p),
            _ => None,
        }
    }

    /// `YES`, `NO` or `NO-probable`.
    pub fn label(&self) -> &'static str {
        match self {
            Answer::Yes(_) => "YES",
            Answer::No => "NO",
            Answer::NoProbable => "NO-probable",
        }
    }
}
