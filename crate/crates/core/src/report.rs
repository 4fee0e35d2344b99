//! Check reports and witness search.

use rayon::prelude::*;
use serde::Serialize;

use crate::scalar::Scalar;

/// A failing instance: the basis tuple plus both evaluated sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub tuple: Vec<usize>,
    /// Which displayed condition failed, for multi-condition checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<usize>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Witness {
    pub fn new(tuple: Vec<usize>) -> Self {
        Witness {
            tuple,
            condition: None,
            lhs: Vec::new(),
            rhs: Vec::new(),
            detail: String::new(),
        }
    }

    pub fn condition(mut self, index: usize) -> Self {
        self.condition = Some(index);
        self
    }

    pub fn sides<S: Scalar>(mut self, lhs: &[S], rhs: &[S]) -> Self {
        self.lhs = lhs.iter().map(Scalar::to_text).collect();
        self.rhs = rhs.iter().map(Scalar::to_text).collect();
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail { witness: Witness },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    /// The identity being checked, in plain notation.
    pub identity: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn pass(check: impl Into<String>, identity: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            identity: identity.into(),
            outcome: Outcome::Pass,
            notes: Vec::new(),
        }
    }

    pub fn fail(check: impl Into<String>, identity: impl Into<String>, witness: Witness) -> Self {
        Report {
            check: check.into(),
            identity: identity.into(),
            outcome: Outcome::Fail { witness },
            notes: Vec::new(),
        }
    }

    pub fn from_witness(
        check: impl Into<String>,
        identity: impl Into<String>,
        witness: Option<Witness>,
    ) -> Self {
        match witness {
            None => Report::pass(check, identity),
            Some(w) => Report::fail(check, identity, w),
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Pass => None,
            Outcome::Fail { witness } => Some(witness),
        }
    }
}

/// Decodes `index` into a `len`-tuple over `0..dim`, most significant first,
/// so increasing indices walk tuples in lexicographic order.
pub fn decode_tuple(mut index: usize, dim: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % dim;
        index /= dim;
    }
    out
}

/// Inverse of [`decode_tuple`].
pub fn encode_tuple(tuple: &[usize], dim: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * dim + i)
}

/// Lexicographically first `len`-tuple over `0..dim` on which `check`
/// reports a witness. The scan runs on the current rayon pool.
pub fn first_witness<F>(dim: usize, len: usize, check: F) -> Option<Witness>
where
    F: Fn(&[usize]) -> Option<Witness> + Sync + Send,
{
    if dim == 0 {
        return None;
    }
    let total = dim.pow(len as u32);
    (0..total)
        .into_par_iter()
        .find_map_first(|idx| check(&decode_tuple(idx, dim, len)))
}
