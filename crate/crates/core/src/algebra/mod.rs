//! Graded 3-ary Hom algebras: data model, axiom checks, and the induced
//! binary bracket on the pair space.

mod checks;
mod pairs;
mod tensor;

use std::collections::HashSet;

pub use checks::{
    check_fundamental_identity, check_grading, check_morphism, check_multiplicative,
    check_skew_symmetry, check_structure,
};
#[allow(unused_imports)]
pub(crate) use checks::fi_sides;
pub use pairs::{check_hom_rho_lie2, fundamental_algebra, BinaryAlgebra, PairSpace};
pub use tensor::{BracketEntry, GradingPolicy, TriTensor};
#[allow(unused_imports)]
pub(crate) use tensor::{expand_skew, skew_orbit};

use crate::error::{Error, Result};
use crate::grading::{Bicharacter, Degree, GradingGroup};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Names and degrees of a homogeneous basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    names: Vec<String>,
    degrees: Vec<Degree>,
}

impl GradedBasis {
    pub fn new(group: &GradingGroup, names: Vec<String>, degrees: Vec<Degree>) -> Result<Self> {
        if names.len() != degrees.len() {
            return Err(Error::Dimension {
                what: "basis degrees".into(),
                expected: names.len(),
                got: degrees.len(),
            });
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        for d in &degrees {
            if !group.is_canonical(d) {
                return Err(Error::Degree {
                    coords: d.0.clone(),
                    reason: "not a canonical degree of the grading group".into(),
                });
            }
        }
        Ok(GradedBasis { names, degrees })
    }

    /// Basis `e0, e1, ...` with the given degrees.
    pub fn numbered(group: &GradingGroup, prefix: &str, degrees: Vec<Degree>) -> Result<Self> {
        let names = (0..degrees.len()).map(|i| format!("{prefix}{i}")).collect();
        Self::new(group, names, degrees)
    }

    /// `n` vectors of degree zero.
    pub fn trivial(group: &GradingGroup, n: usize) -> Self {
        GradedBasis {
            names: (0..n).map(|i| format!("e{i}")).collect(),
            degrees: vec![group.zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &Degree {
        &self.degrees[i]
    }
}

/// Checks that `m` (columns = images of basis vectors) sends each basis
/// vector of `from` into the span of basis vectors of `to` whose degree is
/// the source degree shifted by `shift`.
pub(crate) fn check_homogeneous<S: Scalar>(
    group: &GradingGroup,
    m: &Matrix<S>,
    from: &[Degree],
    to: &[Degree],
    shift: &Degree,
    what: &str,
) -> Result<()> {
    if m.rows() != to.len() || m.cols() != from.len() {
        return Err(Error::Dimension {
            what: what.into(),
            expected: to.len() * from.len(),
            got: m.rows() * m.cols(),
        });
    }
    for (j, dj) in from.iter().enumerate() {
        let target = group.add(dj, shift);
        for (r, dr) in to.iter().enumerate() {
            if !m[(r, j)].is_zero() && *dr != target {
                return Err(Error::Precondition(format!(
                    "{what} is not homogeneous: entry ({r},{j}) links degree {dj} to {dr}"
                )));
            }
        }
    }
    Ok(())
}

/// Table of `rho(d_i, d_j)` for two lists of degrees.
pub(crate) fn rho_table<S: Scalar>(rho: &Bicharacter<S>, left: &[Degree], right: &[Degree]) -> Vec<Vec<S>> {
    left.iter()
        .map(|a| right.iter().map(|c| rho.eval(a, c)).collect())
        .collect()
}

/// A finite-dimensional graded 3-ary algebra with twist `phi`.
///
/// Construction validates shapes, degrees, and that `phi` is even; the
/// algebra axioms themselves are checked by the `check_*` functions.
#[derive(Clone, PartialEq)]
pub struct Algebra3<S> {
    group: GradingGroup,
    rho: Bicharacter<S>,
    basis: GradedBasis,
    bracket: TriTensor<S>,
    phi: Matrix<S>,
    rho_table: Vec<Vec<S>>,
    phi_cols: Vec<Vec<S>>,
}

impl<S: Scalar> std::fmt::Debug for Algebra3<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra3")
            .field("group", &self.group)
            .field("rho", &self.rho)
            .field("basis", &self.basis)
            .field("bracket", &self.bracket)
            .field("phi", &self.phi)
            .finish()
    }
}

impl<S: Scalar> Algebra3<S> {
    pub fn new(
        group: GradingGroup,
        rho: Bicharacter<S>,
        basis: GradedBasis,
        bracket: TriTensor<S>,
        phi: Matrix<S>,
    ) -> Result<Self> {
        let n = basis.len();
        if bracket.dim() != n {
            return Err(Error::Dimension {
                what: "bracket tensor".into(),
                expected: n,
                got: bracket.dim(),
            });
        }
        if rho.matrix().len() != group.coord_count() {
            return Err(Error::Dimension {
                what: "bicharacter".into(),
                expected: group.coord_count(),
                got: rho.matrix().len(),
            });
        }
        if phi.rows() != n || phi.cols() != n {
            return Err(Error::Dimension {
                what: "twist map".into(),
                expected: n,
                got: if phi.rows() != n { phi.rows() } else { phi.cols() },
            });
        }
        check_homogeneous(&group, &phi, basis.degrees(), basis.degrees(), &group.zero(), "twist map")?;
        let rho_table = rho_table(&rho, basis.degrees(), basis.degrees());
        let phi_cols = (0..n).map(|j| phi.column(j)).collect();
        Ok(Algebra3 {
            group,
            rho,
            basis,
            bracket,
            phi,
            rho_table,
            phi_cols,
        })
    }

    /// Builds the bracket from partial entries with [`canonicalize_bracket`].
    pub fn from_entries(
        group: GradingGroup,
        rho: Bicharacter<S>,
        basis: GradedBasis,
        entries: &[BracketEntry<S>],
        phi: Matrix<S>,
        policy: GradingPolicy,
    ) -> Result<Self> {
        let bracket = canonicalize_bracket(&group, &rho, &basis, entries, policy)?;
        Self::new(group, rho, basis, bracket, phi)
    }

    /// Same data with another bracket tensor.
    pub fn with_bracket(&self, bracket: TriTensor<S>) -> Result<Self> {
        Self::new(self.group.clone(), self.rho.clone(), self.basis.clone(), bracket, self.phi.clone())
    }

    /// Same data with another twist.
    pub fn with_phi(&self, phi: Matrix<S>) -> Result<Self> {
        Self::new(self.group.clone(), self.rho.clone(), self.basis.clone(), self.bracket.clone(), phi)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn rho(&self) -> &Bicharacter<S> {
        &self.rho
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn degrees(&self) -> &[Degree] {
        self.basis.degrees()
    }

    pub fn degree(&self, i: usize) -> &Degree {
        self.basis.degree(i)
    }

    pub fn bracket(&self) -> &TriTensor<S> {
        &self.bracket
    }

    pub fn phi(&self) -> &Matrix<S> {
        &self.phi
    }

    /// Coordinates of `phi(e_j)`.
    pub fn phi_col(&self, j: usize) -> &[S] {
        &self.phi_cols[j]
    }

    /// `rho(d_i, d_j)` for basis indices.
    pub fn rho_ij(&self, i: usize, j: usize) -> &S {
        &self.rho_table[i][j]
    }

    /// `rho(d_{l1} + ..., d_{r1} + ...)` for lists of basis indices.
    pub fn rho_sum(&self, left: &[usize], right: &[usize]) -> S {
        let mut out = S::one();
        for &a in left {
            for &b in right {
                let r = &self.rho_table[a][b];
                if !r.is_one() {
                    out = out * r.clone();
                }
            }
        }
        out
    }

    /// Sum of the degrees of the given basis indices.
    pub fn degree_sum(&self, indices: &[usize]) -> Degree {
        self.group.sum(indices.iter().map(|&i| self.degree(i)))
    }

    /// `[e_i, e_j, e_k]` as a dense vector.
    pub fn bracket_basis(&self, i: usize, j: usize, k: usize) -> Vec<S> {
        self.bracket.get_dense(i, j, k)
    }

    /// Trilinear bracket of coordinate vectors; lengths are not checked.
    pub fn br(&self, x: &[S], y: &[S], z: &[S]) -> Vec<S> {
        self.bracket.eval(x, y, z)
    }

    pub fn apply_phi(&self, x: &[S]) -> Vec<S> {
        self.phi.mul_vec(x)
    }

    /// Whether `phi` is invertible (the algebra is regular as a map).
    pub fn is_regular(&self) -> bool {
        self.phi.is_invertible()
    }
}

/// Expands partially given bracket entries to the full rho-skew tensor.
/// Conflicting entries are reported with the triple and both values.
pub fn canonicalize_bracket<S: Scalar>(
    group: &GradingGroup,
    rho: &Bicharacter<S>,
    basis: &GradedBasis,
    entries: &[BracketEntry<S>],
    policy: GradingPolicy,
) -> Result<TriTensor<S>> {
    let degrees = basis.degrees();
    let table = rho_table(rho, degrees, degrees);
    expand_skew(
        basis.len(),
        entries,
        |x, y| -table[y][x].clone(),
        |t, l| {
            let sum = group.sum(t.iter().map(|&i| &degrees[i]));
            degrees[l] == sum
        },
        policy,
    )
}

/// Trilinear extension of the structure tensor.
pub fn bracket_eval<S: Scalar>(a: &Algebra3<S>, x: &[S], y: &[S], z: &[S]) -> Result<Vec<S>> {
    for v in [x, y, z] {
        if v.len() != a.dim() {
            return Err(Error::Dimension {
                what: "bracket argument".into(),
                expected: a.dim(),
                got: v.len(),
            });
        }
    }
    Ok(a.br(x, y, z))
}
