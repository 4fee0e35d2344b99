//! Representations (equivalently modules) of a 3-ary Hom algebra, with the
//! adjoint, dual and coadjoint constructions.

use crate::algebra::{check_homogeneous, Algebra3, GradedBasis, PairSpace};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::linalg::Matrix;
use crate::report::{first_witness, Report, Witness};
use crate::scalar::Scalar;

/// `(V, beta, mu)`: `mu` is stored on the canonical pair basis of the
/// algebra and extended to all ordered pairs by the pair reduction rule.
#[derive(Clone, PartialEq)]
pub struct Representation<S> {
    space: GradedBasis,
    beta: Matrix<S>,
    pairs: PairSpace<S>,
    mu: Vec<Matrix<S>>,
    full: Vec<Matrix<S>>,
    algebra_dim: usize,
}

impl<S: Scalar> std::fmt::Debug for Representation<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Representation")
            .field("space", &self.space)
            .field("beta", &self.beta)
            .field("mu", &self.mu)
            .finish()
    }
}

impl<S: Scalar> Representation<S> {
    /// `mu[p]` is the operator of canonical pair `p` of `a`'s pair space.
    /// Checks shapes, that `beta` is even, and the degree rule for `mu`.
    pub fn new(a: &Algebra3<S>, space: GradedBasis, beta: Matrix<S>, mu: Vec<Matrix<S>>) -> Result<Self> {
        let pairs = PairSpace::of(a);
        if mu.len() != pairs.len() {
            return Err(Error::Dimension {
                what: "action operators (one per canonical pair)".into(),
                expected: pairs.len(),
                got: mu.len(),
            });
        }
        let g = a.group();
        let vd = space.degrees();
        check_homogeneous(g, &beta, vd, vd, &g.zero(), "beta")?;
        for (p, m) in mu.iter().enumerate() {
            let (i, j) = pairs.pair(p);
            let shift = g.add(a.degree(i), a.degree(j));
            check_homogeneous(g, m, vd, vd, &shift, &format!("action of pair ({i},{j})"))?;
        }
        let n = a.dim();
        let zero = Matrix::zeros(space.len(), space.len());
        let mut full = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                full.push(match pairs.reduce(i, j) {
                    Some((p, c)) => mu[p].scale(&c),
                    None => zero.clone(),
                });
            }
        }
        Ok(Representation {
            space,
            beta,
            pairs,
            mu,
            full,
            algebra_dim: n,
        })
    }

    /// Builds `mu` by evaluating `f(i, j)` on each canonical pair.
    pub fn from_fn(
        a: &Algebra3<S>,
        space: GradedBasis,
        beta: Matrix<S>,
        f: impl Fn(usize, usize) -> Matrix<S>,
    ) -> Result<Self> {
        let mu = PairSpace::of(a).pairs().iter().map(|&(i, j)| f(i, j)).collect();
        Self::new(a, space, beta, mu)
    }

    /// Same representation with the operator of canonical pair `p` replaced.
    pub fn with_operator(&self, a: &Algebra3<S>, p: usize, m: Matrix<S>) -> Result<Self> {
        let mut mu = self.mu.clone();
        mu[p] = m;
        Self::new(a, self.space.clone(), self.beta.clone(), mu)
    }

    pub fn dim(&self) -> usize {
        self.space.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn space(&self) -> &GradedBasis {
        &self.space
    }

    pub fn degrees(&self) -> &[Degree] {
        self.space.degrees()
    }

    pub fn beta(&self) -> &Matrix<S> {
        &self.beta
    }

    pub fn pairs(&self) -> &PairSpace<S> {
        &self.pairs
    }

    /// Operators on the canonical pairs.
    pub fn operators(&self) -> &[Matrix<S>] {
        &self.mu
    }

    /// `mu(e_i, e_j)` for any ordered pair.
    pub fn mu(&self, i: usize, j: usize) -> &Matrix<S> {
        &self.full[i * self.algebra_dim + j]
    }

    /// `mu(x, y)` for coordinate vectors.
    pub fn mu_vec(&self, x: &[S], y: &[S]) -> Matrix<S> {
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out.add_assign_scaled(&(xi.clone() * yj.clone()), self.mu(i, j));
            }
        }
        out
    }

    /// Whether every operator vanishes.
    pub fn is_zero(&self) -> bool {
        self.mu.iter().all(Matrix::is_zero)
    }

    fn check_dims(&self, a: &Algebra3<S>) -> Result<()> {
        if self.algebra_dim != a.dim() || self.pairs != PairSpace::of(a) {
            return Err(Error::Dimension {
                what: "representation algebra".into(),
                expected: a.dim(),
                got: self.algebra_dim,
            });
        }
        Ok(())
    }
}

/// The same data read as an action `(f1, f2) . m = mu(f1, f2)(m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleAction<S: Scalar> {
    rep: Representation<S>,
}

impl<S: Scalar> ModuleAction<S> {
    pub fn space(&self) -> &GradedBasis {
        self.rep.space()
    }

    pub fn beta(&self) -> &Matrix<S> {
        self.rep.beta()
    }

    /// `(e_i, e_j) . m`.
    pub fn act(&self, i: usize, j: usize, m: &[S]) -> Vec<S> {
        self.rep.mu(i, j).mul_vec(m)
    }
}

pub fn rep_to_module<S: Scalar>(r: &Representation<S>) -> ModuleAction<S> {
    ModuleAction { rep: r.clone() }
}

pub fn module_to_rep<S: Scalar>(m: &ModuleAction<S>) -> Representation<S> {
    m.rep.clone()
}

fn flat<S: Scalar>(m: &Matrix<S>) -> Vec<S> {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}

fn op_witness<S: Scalar>(t: &[usize], cond: usize, lhs: &Matrix<S>, rhs: &Matrix<S>) -> Option<Witness> {
    (lhs != rhs).then(|| {
        Witness::new(t.to_vec())
            .condition(cond)
            .sides(&flat(lhs), &flat(rhs))
            .detail("operators flattened row by row")
    })
}

const REP_CONDITIONS: &str = "(1) mu([f1^f2, g1^g2]) beta = mu(phi f1, phi f2) mu(g1,g2) - rho(f1+f2, g1+g2) mu(phi g1, phi g2) mu(f1,f2); \
     (2) mu([g1,g2,g3], phi f) beta = mu(phi g1, phi g2) mu(g3,f) + rho(g1, g2+g3) mu(phi g2, phi g3) mu(g1,f) + rho(g1+g2, g3) mu(phi g3, phi g1) mu(g2,f); \
     (3) mu(phi g, [f1,f2,f3]) beta = rho(g, f1+f2) mu(phi f1, phi f2) mu(g,f3) + rho(g, f2+f3) rho(f1, f2+f3) mu(phi f2, phi f3) mu(g,f1) + rho(g, f1+f3) rho(f1+f2, f3) mu(phi f3, phi f1) mu(g,f2); \
     (4) mu(phi f1, phi f2) mu(g1,g2) = rho(f1+f2, g1+g2) mu(phi g1, phi g2) mu(f1,f2) + rho(f1+f2, g1) mu(phi g1, [f1,f2,g2]) beta + mu([f1,f2,g1], phi g2) beta";

/// One displayed representation condition (`1..=4`) on all basis
/// 4-tuples, returning the lexicographically first violation.
pub fn representation_condition<S: Scalar>(
    a: &Algebra3<S>,
    r: &Representation<S>,
    cond: usize,
) -> Result<Option<Witness>> {
    r.check_dims(a)?;
    let beta = r.beta();
    let p = |i: usize| a.phi_col(i);
    let br = |i: usize, j: usize, k: usize| a.bracket_basis(i, j, k);
    let w = match cond {
        1 => first_witness(a.dim(), 4, |t| {
            let (f1, f2, g1, g2) = (t[0], t[1], t[2], t[3]);
            let lhs = r
                .mu_vec(&br(f1, f2, g1), p(g2))
                .axpy(a.rho_sum(&[f1, f2], &[g1]), &r.mu_vec(p(g1), &br(f1, f2, g2)))
                .mul(beta);
            let rhs = r.mu_vec(p(f1), p(f2)).mul(r.mu(g1, g2)).axpy(
                -a.rho_sum(&[f1, f2], &[g1, g2]),
                &r.mu_vec(p(g1), p(g2)).mul(r.mu(f1, f2)),
            );
            op_witness(t, 1, &lhs, &rhs)
        }),
        2 => first_witness(a.dim(), 4, |t| {
            let (g1, g2, g3, f) = (t[0], t[1], t[2], t[3]);
            let lhs = r.mu_vec(&br(g1, g2, g3), p(f)).mul(beta);
            let rhs = r
                .mu_vec(p(g1), p(g2))
                .mul(r.mu(g3, f))
                .axpy(a.rho_sum(&[g1], &[g2, g3]), &r.mu_vec(p(g2), p(g3)).mul(r.mu(g1, f)))
                .axpy(a.rho_sum(&[g1, g2], &[g3]), &r.mu_vec(p(g3), p(g1)).mul(r.mu(g2, f)));
            op_witness(t, 2, &lhs, &rhs)
        }),
        3 => first_witness(a.dim(), 4, |t| {
            let (g, f1, f2, f3) = (t[0], t[1], t[2], t[3]);
            let lhs = r.mu_vec(p(g), &br(f1, f2, f3)).mul(beta);
            let rhs = r
                .mu_vec(p(f1), p(f2))
                .mul(r.mu(g, f3))
                .scale(&a.rho_sum(&[g], &[f1, f2]))
                .axpy(
                    a.rho_sum(&[g], &[f2, f3]) * a.rho_sum(&[f1], &[f2, f3]),
                    &r.mu_vec(p(f2), p(f3)).mul(r.mu(g, f1)),
                )
                .axpy(
                    a.rho_sum(&[g], &[f1, f3]) * a.rho_sum(&[f1, f2], &[f3]),
                    &r.mu_vec(p(f3), p(f1)).mul(r.mu(g, f2)),
                );
            op_witness(t, 3, &lhs, &rhs)
        }),
        4 => first_witness(a.dim(), 4, |t| {
            let (f1, f2, g1, g2) = (t[0], t[1], t[2], t[3]);
            let lhs = r.mu_vec(p(f1), p(f2)).mul(r.mu(g1, g2));
            let rhs = r
                .mu_vec(p(g1), p(g2))
                .mul(r.mu(f1, f2))
                .scale(&a.rho_sum(&[f1, f2], &[g1, g2]))
                .add(
                    &r.mu_vec(p(g1), &br(f1, f2, g2))
                        .scale(&a.rho_sum(&[f1, f2], &[g1]))
                        .add(&r.mu_vec(&br(f1, f2, g1), p(g2)))
                        .mul(beta),
                );
            op_witness(t, 4, &lhs, &rhs)
        }),
        _ => return Err(Error::Precondition(format!("no representation condition {cond}"))),
    };
    Ok(w)
}

/// All four representation conditions; the first failing condition is
/// reported with its lexicographically first tuple.
pub fn check_representation<S: Scalar>(a: &Algebra3<S>, r: &Representation<S>) -> Result<Report> {
    let mut w = None;
    for cond in 1..=4 {
        w = representation_condition(a, r, cond)?;
        if w.is_some() {
            break;
        }
    }
    Ok(Report::from_witness("representation", REP_CONDITIONS, w))
}

/// Module axioms, checked through the equivalent representation conditions.
pub fn check_module<S: Scalar>(a: &Algebra3<S>, m: &ModuleAction<S>) -> Result<Report> {
    let mut report = check_representation(a, &module_to_rep(m))?;
    report.check = "module".into();
    Ok(report.note("module axioms checked in their representation form"))
}

/// The representation on `space` with every `mu(f1, f2) = 0`.
pub fn zero_rep<S: Scalar>(a: &Algebra3<S>, space: GradedBasis, beta: Matrix<S>) -> Result<Representation<S>> {
    let m = space.len();
    Representation::from_fn(a, space, beta, |_, _| Matrix::zeros(m, m))
}

/// `V = A`, `beta = phi`, `mu(f1, f2) f3 = [f1, f2, f3]`.
pub fn adjoint_rep<S: Scalar>(a: &Algebra3<S>) -> Representation<S> {
    let n = a.dim();
    Representation::from_fn(a, a.basis().clone(), a.phi().clone(), |i, j| {
        let cols: Vec<Vec<S>> = (0..n).map(|k| a.bracket_basis(i, j, k)).collect();
        Matrix::from_columns(n, &cols)
    })
    .expect("adjoint data is consistent with a valid algebra")
}

/// The dual representation together with the report on the four
/// conditions under which it is a representation.
#[derive(Debug, Clone)]
pub struct DualRep<S: Scalar> {
    pub rep: Representation<S>,
    pub validity: Report,
}

impl<S: Scalar> DualRep<S> {
    pub fn is_valid(&self) -> bool {
        self.validity.passed()
    }
}

const DUAL_CONDITIONS: &str = "(1) beta mu([f1^f2, g1^g2]) = mu(f1,f2) mu(phi g1, phi g2) - rho(f1+f2, g1+g2) mu(g1,g2) mu(phi f1, phi f2); \
     (2) beta mu([g1,g2,g3], phi f) = -rho(g1+g2, g3+f) mu(g3,f) mu(phi g1, phi g2) - rho(g2+g3, g1+f) mu(g1,f) mu(phi g2, phi g3) - rho(g3+g1, g2+f) mu(g2,f) mu(phi g3, phi g1); \
     (3) beta mu(phi g, [f1,f2,f3]) = -rho(f1+f2, f3) mu(g,f3) mu(phi f1, phi f2) - mu(g,f1) mu(phi f2, phi f3) - rho(f1+f2, f3) rho(f1+f3, f2) mu(g,f2) mu(phi f3, phi f1); \
     (4) rho(f1+f2, g1) beta mu(phi g1, [f1,f2,g2]) + beta mu([f1,f2,g1], phi g2) = mu(f1,f2) mu(phi g1, phi g2) - rho(f1+f2, g1+g2) mu(g1,g2) mu(phi f1, phi f2)";

/// The conditions on `(V, mu, beta)` under which the dual is a
/// representation, evaluated on all basis 4-tuples.
fn dual_conditions<S: Scalar>(a: &Algebra3<S>, r: &Representation<S>) -> Report {
    let beta = r.beta();
    let p = |i: usize| a.phi_col(i);
    let br = |i: usize, j: usize, k: usize| a.bracket_basis(i, j, k);
    let rs = |l: &[usize], rr: &[usize]| a.rho_sum(l, rr);
    let c1 = || {
        first_witness(a.dim(), 4, |t| {
            let (f1, f2, g1, g2) = (t[0], t[1], t[2], t[3]);
            let lhs = beta.mul(
                &r.mu_vec(&br(f1, f2, g1), p(g2))
                    .axpy(rs(&[f1, f2], &[g1]), &r.mu_vec(p(g1), &br(f1, f2, g2))),
            );
            let rhs = r
                .mu(f1, f2)
                .mul(&r.mu_vec(p(g1), p(g2)))
                .axpy(-rs(&[f1, f2], &[g1, g2]), &r.mu(g1, g2).mul(&r.mu_vec(p(f1), p(f2))));
            op_witness(t, 1, &lhs, &rhs)
        })
    };
    let c2 = || {
        first_witness(a.dim(), 4, |t| {
            let (g1, g2, g3, f) = (t[0], t[1], t[2], t[3]);
            let lhs = beta.mul(&r.mu_vec(&br(g1, g2, g3), p(f)));
            let rhs = Matrix::zeros(r.dim(), r.dim())
                .axpy(-rs(&[g1, g2], &[g3, f]), &r.mu(g3, f).mul(&r.mu_vec(p(g1), p(g2))))
                .axpy(-rs(&[g2, g3], &[g1, f]), &r.mu(g1, f).mul(&r.mu_vec(p(g2), p(g3))))
                .axpy(-rs(&[g3, g1], &[g2, f]), &r.mu(g2, f).mul(&r.mu_vec(p(g3), p(g1))));
            op_witness(t, 2, &lhs, &rhs)
        })
    };
    let c3 = || {
        first_witness(a.dim(), 4, |t| {
            let (g, f1, f2, f3) = (t[0], t[1], t[2], t[3]);
            let lhs = beta.mul(&r.mu_vec(p(g), &br(f1, f2, f3)));
            let rhs = Matrix::zeros(r.dim(), r.dim())
                .axpy(-rs(&[f1, f2], &[f3]), &r.mu(g, f3).mul(&r.mu_vec(p(f1), p(f2))))
                .axpy(-S::one(), &r.mu(g, f1).mul(&r.mu_vec(p(f2), p(f3))))
                .axpy(
                    -(rs(&[f1, f2], &[f3]) * rs(&[f1, f3], &[f2])),
                    &r.mu(g, f2).mul(&r.mu_vec(p(f3), p(f1))),
                );
            op_witness(t, 3, &lhs, &rhs)
        })
    };
    let c4 = || {
        first_witness(a.dim(), 4, |t| {
            let (f1, f2, g1, g2) = (t[0], t[1], t[2], t[3]);
            let lhs = beta.mul(
                &r.mu_vec(p(g1), &br(f1, f2, g2))
                    .scale(&rs(&[f1, f2], &[g1]))
                    .add(&r.mu_vec(&br(f1, f2, g1), p(g2))),
            );
            let rhs = r
                .mu(f1, f2)
                .mul(&r.mu_vec(p(g1), p(g2)))
                .axpy(-rs(&[f1, f2], &[g1, g2]), &r.mu(g1, g2).mul(&r.mu_vec(p(f1), p(f2))));
            op_witness(t, 4, &lhs, &rhs)
        })
    };
    let w = c1().or_else(c2).or_else(c3).or_else(c4);
    Report::from_witness("dual-conditions", DUAL_CONDITIONS, w)
}

/// Dual representation on `V*`: `mu~(f1,f2)(v) = -rho(f1+f2, v) v o mu(f1,f2)`,
/// `beta~(v) = v o beta`, dual basis degrees `-h`. The attached report
/// evaluates the four conditions on `(V, mu, beta)` for the dual to be a
/// representation.
pub fn dual_rep<S: Scalar>(a: &Algebra3<S>, r: &Representation<S>) -> Result<DualRep<S>> {
    r.check_dims(a)?;
    let g = a.group();
    let dual_degrees: Vec<Degree> = r.degrees().iter().map(|h| g.neg(h)).collect();
    let names = r.space().names().iter().map(|s| format!("{s}*")).collect();
    let space = GradedBasis::new(g, names, dual_degrees.clone())?;
    let m = r.dim();
    let rep = Representation::from_fn(a, space, r.beta().transpose(), |i, j| {
        let f = g.add(a.degree(i), a.degree(j));
        let mu = r.mu(i, j);
        let mut out = Matrix::zeros(m, m);
        for l in 0..m {
            let c = -a.rho().eval(&f, &dual_degrees[l]);
            for k in 0..m {
                if !mu[(l, k)].is_zero() {
                    out[(k, l)] = c.clone() * mu[(l, k)].clone();
                }
            }
        }
        out
    })?;
    Ok(DualRep {
        rep,
        validity: dual_conditions(a, r),
    })
}

/// Dual of the adjoint representation.
pub fn coadjoint_rep<S: Scalar>(a: &Algebra3<S>) -> DualRep<S> {
    dual_rep(a, &adjoint_rep(a)).expect("adjoint is compatible with its algebra")
}
