//! Infinitesimal deformations `[.,.,.]_t = [.,.,.] + t w`, Hom-Nijenhuis
//! operators and trivial deformations `T_t = id + t N`.
//!
//! Brackets depending on `t` are kept as lists of coefficient tensors and
//! every identity is compared coefficient by coefficient.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{check_fundamental_identity, check_grading, check_skew_symmetry, fi_sides, Algebra3, TriTensor};
use crate::cohomology::{is_1_cocycle, Cochain};
use crate::derivations::GradedOperator;
use crate::error::{Error, Result};
use crate::linalg::{add_scaled, Matrix};
use crate::report::{first_witness, Report, Witness};
use crate::representation::adjoint_rep;
use crate::scalar::Scalar;

/// The bracket `base + t omega` in a formal parameter `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedBracket<S> {
    base: TriTensor<S>,
    omega: TriTensor<S>,
}

impl<S: Scalar> DeformedBracket<S> {
    /// Rejects `omega` unless it is a degree-0 level-1 cochain with values
    /// in `A` that respects the grading and the skew rule.
    pub fn new(a: &Algebra3<S>, omega: &Cochain<S>) -> Result<Self> {
        if !omega.degree().is_zero() {
            return Err(Error::Precondition(format!(
                "deformation cochains must be grade preserving, got degree {}",
                omega.degree()
            )));
        }
        if omega.dim_a() != a.dim() {
            return Err(Error::Dimension {
                what: "deformation cochain".into(),
                expected: a.dim(),
                got: omega.dim_a(),
            });
        }
        let t = omega.to_tensor()?;
        let as_bracket = a.with_bracket(t.clone())?;
        if let Some(w) = check_grading(&as_bracket).witness() {
            return Err(Error::Grading {
                tuple: w.tuple[..3].to_vec(),
                output: w.tuple[3],
            });
        }
        if let Some(w) = check_skew_symmetry(&as_bracket).witness() {
            return Err(Error::Skew { tuple: w.tuple.clone() });
        }
        Ok(DeformedBracket {
            base: a.bracket().clone(),
            omega: t,
        })
    }

    pub fn base(&self) -> &TriTensor<S> {
        &self.base
    }

    pub fn omega(&self) -> &TriTensor<S> {
        &self.omega
    }

    /// Coefficient tensors by power of `t`.
    pub fn coefficients(&self) -> [&TriTensor<S>; 2] {
        [&self.base, &self.omega]
    }

    /// The bracket at a specific value of `t`.
    pub fn at(&self, t: &S) -> TriTensor<S> {
        self.base.axpy(t, &self.omega)
    }
}

/// Outcome of [`check_infinitesimal_deformation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    pub is_deformation: bool,
    /// The `t^2` coefficient of the fundamental identity vanishes.
    pub w_is_structure: bool,
    /// The `t^1` coefficient vanishes.
    pub w_is_cocycle: bool,
    /// One report per power `t^0`, `t^1`, `t^2`.
    pub coefficients: Vec<Report>,
    /// Fundamental identity of `w` on its own.
    pub structure: Report,
    /// `d1 w = 0` in the adjoint representation.
    pub cocycle: Report,
}

impl DeformationReport {
    /// Whether the independent checks agree with the expansion.
    pub fn consistent(&self) -> bool {
        self.w_is_structure == self.structure.passed() && self.w_is_cocycle == self.cocycle.passed()
    }
}

const DEFORMED_FI: &str = "fundamental identity of [.,.,.] + t w";

fn sum_sides<S: Scalar>(acc: &mut (Vec<S>, Vec<S>), part: (Vec<S>, Vec<S>)) {
    add_scaled(&mut acc.0, &S::one(), &part.0);
    add_scaled(&mut acc.1, &S::one(), &part.1);
}

/// Expands the fundamental identity of `[.,.,.] + t w` into its `t^0`,
/// `t^1` and `t^2` coefficients on all basis 5-tuples.
pub fn check_infinitesimal_deformation<S: Scalar>(a: &Algebra3<S>, w: &Cochain<S>) -> Result<DeformationReport> {
    if !a.is_regular() {
        return Err(Error::Precondition("the twist map must be invertible".into()));
    }
    let def = DeformedBracket::new(a, w)?;
    let (b, om) = (def.base(), def.omega());
    let n = a.dim();
    let coefficient = |power: usize| {
        let wit = first_witness(n, 5, |t| {
            let (lhs, rhs) = match power {
                0 => fi_sides(a, b, b, t),
                1 => {
                    let mut acc = fi_sides(a, b, om, t);
                    sum_sides(&mut acc, fi_sides(a, om, b, t));
                    acc
                }
                _ => fi_sides(a, om, om, t),
            };
            (lhs != rhs).then(|| Witness::new(t.to_vec()).sides(&lhs, &rhs))
        });
        Report::from_witness(format!("deformation-t{power}"), DEFORMED_FI, wit)
    };
    let mut coefficients: Vec<Report> = (0..3).map(coefficient).collect();
    if !coefficients[0].passed() {
        coefficients[0] = coefficients[0].clone().note("the undeformed bracket fails its own fundamental identity");
    }
    let w_is_cocycle = coefficients[1].passed();
    let w_is_structure = coefficients[2].passed();
    let structure = check_fundamental_identity(&a.with_bracket(om.clone())?);
    let cocycle = is_1_cocycle(a, &adjoint_rep(a), w)?;
    Ok(DeformationReport {
        is_deformation: w_is_structure && w_is_cocycle,
        w_is_structure,
        w_is_cocycle,
        coefficients,
        structure,
        cocycle,
    })
}

/// Column images `N e_j` and bracket evaluation with `N` applied to a
/// chosen subset of slots.
struct Applied<'a, S: Scalar> {
    a: &'a Algebra3<S>,
    n: &'a Matrix<S>,
    cols: Vec<Vec<S>>,
    units: Vec<Vec<S>>,
}

impl<'a, S: Scalar> Applied<'a, S> {
    fn new(a: &'a Algebra3<S>, n: &'a Matrix<S>) -> Self {
        let dim = a.dim();
        Applied {
            a,
            n,
            cols: (0..dim).map(|j| n.column(j)).collect(),
            units: (0..dim).map(|j| crate::linalg::unit(dim, j)).collect(),
        }
    }

    /// `[N^m0 e_i, N^m1 e_j, N^m2 e_k]` with `m` a 0/1 mask.
    fn br(&self, t: &[usize], mask: [bool; 3]) -> Vec<S> {
        let arg = |s: usize| if mask[s] { &self.cols[t[s]] } else { &self.units[t[s]] };
        self.a.br(arg(0), arg(1), arg(2))
    }

    /// Sum over masks with exactly `count` slots set.
    fn br_sum(&self, t: &[usize], count: usize) -> Vec<S> {
        let mut out = vec![S::zero(); self.a.dim()];
        for bits in 0u8..8 {
            if bits.count_ones() as usize == count {
                let mask = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0];
                add_scaled(&mut out, &S::one(), &self.br(t, mask));
            }
        }
        out
    }

    fn apply(&self, v: &[S]) -> Vec<S> {
        self.n.mul_vec(v)
    }

    /// `[f1,f2,f3]_N` on a basis triple.
    fn bracket_n(&self, t: &[usize]) -> Vec<S> {
        let mut out = self.br_sum(t, 1);
        add_scaled(&mut out, &-S::one(), &self.apply(&self.br_sum(t, 0)));
        out
    }

    /// Both sides of the Nijenhuis identity.
    fn nijenhuis_sides(&self, t: &[usize]) -> (Vec<S>, Vec<S>) {
        let plain = self.br_sum(t, 0);
        let lhs = self.apply(&self.apply(&plain));
        let mut rhs = self.apply(&self.br_sum(t, 1));
        add_scaled(&mut rhs, &-S::one(), &self.br_sum(t, 2));
        (lhs, rhs)
    }
}

fn require_degree_zero<S: Scalar>(n: &GradedOperator<S>) -> Result<()> {
    if n.degree().is_zero() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "Nijenhuis operators must be grade preserving, got degree {}",
            n.degree()
        )))
    }
}

const NIJENHUIS: &str = "N^2 [f1,f2,f3] = N([N f1,f2,f3] + [f1,N f2,f3] + [f1,f2,N f3]) \
     - ([N f1,N f2,f3] + [N f1,f2,N f3] + [f1,N f2,N f3])";

/// The Nijenhuis identity on all basis triples.
pub fn is_nijenhuis<S: Scalar>(a: &Algebra3<S>, n: &GradedOperator<S>) -> Result<Report> {
    require_degree_zero(n)?;
    let ap = Applied::new(a, n.matrix());
    let w = first_witness(a.dim(), 3, |t| {
        let (lhs, rhs) = ap.nijenhuis_sides(t);
        (lhs != rhs).then(|| Witness::new(t.to_vec()).sides(&lhs, &rhs))
    });
    Ok(Report::from_witness("nijenhuis", NIJENHUIS, w))
}

/// `w_N(f1,f2,f3) = [N f1,f2,f3] + [f1,N f2,f3] + [f1,f2,N f3] - N[f1,f2,f3]`.
pub fn nijenhuis_bracket<S: Scalar>(a: &Algebra3<S>, n: &GradedOperator<S>) -> Result<Cochain<S>> {
    require_degree_zero(n)?;
    let ap = Applied::new(a, n.matrix());
    Ok(Cochain::from_fn(1, a.group().zero(), a.dim(), a.dim(), |t| ap.bracket_n(t)))
}

/// Outcome of [`check_trivial_deformation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivialityReport {
    /// `T_t [f1,f2,f3]_t = [T_t f1, T_t f2, T_t f3]` at `t^0` .. `t^3`.
    pub coefficients: Vec<Report>,
    /// `N [f1,f2,f3]_N = [N f1,N f2,f3] + [N f1,f2,N f3] + [f1,N f2,N f3]`.
    pub equivalent: Report,
}

impl TrivialityReport {
    pub fn passed(&self) -> bool {
        self.equivalent.passed() && self.coefficients.iter().all(Report::passed)
    }
}

const TRIVIAL: &str = "T_t [f1,f2,f3]_t = [T_t f1, T_t f2, T_t f3] with T_t = id + t N";

/// Compares `T_t [f1,f2,f3]_t` (degree 2 in `t`) with
/// `[T_t f1, T_t f2, T_t f3]` (degree 3) coefficientwise, where the
/// deformation is `w_N`. Requires `N` to be Nijenhuis.
pub fn check_trivial_deformation<S: Scalar>(a: &Algebra3<S>, n: &GradedOperator<S>) -> Result<TrivialityReport> {
    let nij = is_nijenhuis(a, n)?;
    if let Some(w) = nij.witness() {
        return Err(Error::Precondition(format!(
            "N is not a Nijenhuis operator: identity fails on {:?}",
            w.tuple
        )));
    }
    let ap = Applied::new(a, n.matrix());
    let dim = a.dim();
    let sides = |power: usize, t: &[usize]| -> (Vec<S>, Vec<S>) {
        let lhs = match power {
            0 => ap.br_sum(t, 0),
            1 => {
                let mut v = ap.bracket_n(t);
                add_scaled(&mut v, &S::one(), &ap.apply(&ap.br_sum(t, 0)));
                v
            }
            2 => ap.apply(&ap.bracket_n(t)),
            _ => vec![S::zero(); dim],
        };
        (lhs, ap.br_sum(t, power))
    };
    let coefficients = (0..4)
        .into_par_iter()
        .map(|power| {
            let w = first_witness(dim, 3, |t| {
                let (lhs, rhs) = sides(power, t);
                (lhs != rhs).then(|| Witness::new(t.to_vec()).sides(&lhs, &rhs))
            });
            let r = Report::from_witness(format!("trivial-t{power}"), TRIVIAL, w);
            if power == 3 && !r.passed() {
                r.note("the t^3 term [N f1, N f2, N f3] has no counterpart on the left")
            } else {
                r
            }
        })
        .collect();
    let w = first_witness(dim, 3, |t| {
        let lhs = ap.apply(&ap.bracket_n(t));
        let rhs = ap.br_sum(t, 2);
        (lhs != rhs).then(|| Witness::new(t.to_vec()).sides(&lhs, &rhs))
    });
    let equivalent = Report::from_witness(
        "nijenhuis-bracket",
        "N [f1,f2,f3]_N = [N f1,N f2,f3] + [N f1,f2,N f3] + [f1,N f2,N f3]",
        w,
    );
    Ok(TrivialityReport { coefficients, equivalent })
}

/// Which families of degree-0 candidates [`find_nijenhuis`] searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NijenhuisSearch {
    /// Diagonal matrices with entries in `{-2, -1, -1/2, 0, 1/2, 1, 2}`.
    pub diagonal: bool,
    /// Rank-one `u v^T` with `u, v` in `{-1, 0, 1}^n`.
    pub rank_one: bool,
}

impl Default for NijenhuisSearch {
    fn default() -> Self {
        NijenhuisSearch {
            diagonal: true,
            rank_one: true,
        }
    }
}

fn nonzero_sign_vectors(n: usize) -> Vec<Vec<i64>> {
    (1..3usize.pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let d = (c % 3) as i64 - 1;
                    c /= 3;
                    d
                })
                .collect()
        })
        .filter(|v: &Vec<i64>| v.iter().any(|&d| d != 0))
        .collect()
}

/// Nijenhuis operators among the chosen ansatz families, always
/// including `N = 0`. Results are distinct and in a fixed order.
pub fn find_nijenhuis<S: Scalar>(a: &Algebra3<S>, search: NijenhuisSearch) -> Vec<GradedOperator<S>> {
    let n = a.dim();
    let zero = a.group().zero();
    let mut candidates: Vec<Matrix<S>> = Vec::new();
    if search.diagonal {
        let grid: Vec<S> = [(-2, 1), (-1, 1), (-1, 2), (1, 2), (1, 1), (2, 1)]
            .iter()
            .map(|&(p, q)| S::from_int(p) / S::from_int(q))
            .chain(std::iter::once(S::zero()))
            .collect();
        let total = grid.len().pow(n as u32);
        candidates.extend((0..total).map(|mut c| {
            let diag: Vec<S> = (0..n)
                .map(|_| {
                    let v = grid[c % grid.len()].clone();
                    c /= grid.len();
                    v
                })
                .collect();
            Matrix::diagonal(&diag)
        }));
    }
    if search.rank_one {
        let vs = nonzero_sign_vectors(n);
        for u in vs.iter().filter(|u| u.iter().find(|&&d| d != 0) == Some(&1)) {
            for v in &vs {
                let mut m = Matrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        m[(i, j)] = S::from_int(u[i] * v[j]);
                    }
                }
                candidates.push(m);
            }
        }
    }
    let found: Vec<GradedOperator<S>> = candidates
        .into_par_iter()
        .filter_map(|m| {
            let op = GradedOperator::new(a, m, zero.clone()).ok()?;
            let ap = Applied::new(a, op.matrix());
            let fails = first_witness(n, 3, |t| {
                let (lhs, rhs) = ap.nijenhuis_sides(t);
                (lhs != rhs).then(|| Witness::new(Vec::new()))
            });
            fails.is_none().then_some(op)
        })
        .collect();
    let mut out = vec![GradedOperator::zero(a, zero)];
    for op in found {
        if !out.contains(&op) {
            out.push(op);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn zero_deformation_passes() {
        let a = corpus::a4::<Q>();
        let w = Cochain::zero(1, a.group().zero(), 4, 4);
        let r = check_infinitesimal_deformation(&a, &w).unwrap();
        assert!(r.is_deformation && r.consistent());
    }

    #[test]
    fn identity_is_not_nijenhuis_on_a4() {
        let a = corpus::a4::<Q>();
        let id = GradedOperator::identity(&a);
        assert!(!is_nijenhuis(&a, &id).unwrap().passed());
        let zero = GradedOperator::zero(&a, a.group().zero());
        assert!(is_nijenhuis(&a, &zero).unwrap().passed());
        assert!(check_trivial_deformation(&a, &id).is_err());
    }
}
