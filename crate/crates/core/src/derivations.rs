//! Twisted derivations, inner derivations, generalized and quasi
//! derivations, and centroids.

use rayon::prelude::*;

use crate::algebra::{check_homogeneous, Algebra3};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::linalg::{add_scaled, is_zero_vec, LinearSystem, Matrix};
use crate::report::{decode_tuple, first_witness, Report, Witness};
use crate::scalar::Scalar;

/// A linear map on `A` that is homogeneous of a fixed degree.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedOperator<S: Scalar> {
    matrix: Matrix<S>,
    degree: Degree,
}

impl<S: Scalar> GradedOperator<S> {
    /// Checks that `matrix` is square of size `dim A` and maps `A_d` into
    /// `A_{d + degree}`.
    pub fn new(a: &Algebra3<S>, matrix: Matrix<S>, degree: Degree) -> Result<Self> {
        check_homogeneous(a.group(), &matrix, a.degrees(), a.degrees(), &degree, "operator")?;
        Ok(GradedOperator { matrix, degree })
    }

    pub fn zero(a: &Algebra3<S>, degree: Degree) -> Self {
        GradedOperator {
            matrix: Matrix::zeros(a.dim(), a.dim()),
            degree,
        }
    }

    pub fn identity(a: &Algebra3<S>) -> Self {
        GradedOperator {
            matrix: Matrix::identity(a.dim()),
            degree: a.group().zero(),
        }
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        self.matrix.mul_vec(v)
    }

    /// `self o other`, of degree `|self| + |other|`.
    pub fn compose(&self, a: &Algebra3<S>, other: &GradedOperator<S>) -> Self {
        GradedOperator {
            matrix: self.matrix.mul(&other.matrix),
            degree: a.group().add(&self.degree, &other.degree),
        }
    }

    pub fn commutes_with(&self, m: &Matrix<S>) -> bool {
        self.matrix.mul(m) == m.mul(&self.matrix)
    }
}

/// Shared data for identities over basis triples.
struct Frame<'a, S: Scalar> {
    a: &'a Algebra3<S>,
    pk: Vec<Vec<S>>,
    n: usize,
}

impl<'a, S: Scalar> Frame<'a, S> {
    fn new(a: &'a Algebra3<S>, k: u32) -> Self {
        let p = a.phi().pow(k);
        Frame {
            a,
            pk: (0..a.dim()).map(|j| p.column(j)).collect(),
            n: a.dim(),
        }
    }

    fn rho(&self, d: &Degree, idx: &[usize]) -> S {
        self.a.rho().eval(d, &self.a.degree_sum(idx))
    }

    /// `[X f, phi^k g, phi^k h] + rho(d, f) [phi^k f, Y g, phi^k h]
    ///  + rho(d, f+g) [phi^k f, phi^k g, Z h]`; absent maps count as zero.
    fn leibniz(
        &self,
        d: &Degree,
        x: Option<&Matrix<S>>,
        y: Option<&Matrix<S>>,
        z: Option<&Matrix<S>>,
        t: &[usize],
    ) -> Vec<S> {
        let (f, g, h) = (t[0], t[1], t[2]);
        let mut out = vec![S::zero(); self.n];
        if let Some(x) = x {
            let xf = x.column(f);
            if !is_zero_vec(&xf) {
                add_scaled(&mut out, &S::one(), &self.a.br(&xf, &self.pk[g], &self.pk[h]));
            }
        }
        if let Some(y) = y {
            let yg = y.column(g);
            if !is_zero_vec(&yg) {
                let c = self.rho(d, &[f]);
                add_scaled(&mut out, &c, &self.a.br(&self.pk[f], &yg, &self.pk[h]));
            }
        }
        if let Some(z) = z {
            let zh = z.column(h);
            if !is_zero_vec(&zh) {
                let c = self.rho(d, &[f, g]);
                add_scaled(&mut out, &c, &self.a.br(&self.pk[f], &self.pk[g], &zh));
            }
        }
        out
    }

    /// `W [f, g, h]`.
    fn outer(&self, w: &Matrix<S>, t: &[usize]) -> Vec<S> {
        w.mul_vec(&self.a.bracket_basis(t[0], t[1], t[2]))
    }

    /// Values of `f` on every basis triple, concatenated.
    fn flat(&self, f: impl Fn(&[usize]) -> Vec<S> + Sync) -> Vec<S> {
        (0..self.n.pow(3))
            .into_par_iter()
            .flat_map_iter(|idx| f(&decode_tuple(idx, self.n, 3)))
            .collect()
    }

    /// Matrix units `E_rc` with `d_r = d_c + degree`.
    fn positions(&self, degree: &Degree) -> Vec<(usize, usize)> {
        let g = self.a.group();
        let mut out = Vec::new();
        for r in 0..self.n {
            for c in 0..self.n {
                if *self.a.degree(r) == g.add(self.a.degree(c), degree) {
                    out.push((r, c));
                }
            }
        }
        out
    }

    fn unit_op(&self, (r, c): (usize, usize)) -> Matrix<S> {
        let mut m = Matrix::zeros(self.n, self.n);
        m[(r, c)] = S::one();
        m
    }

    fn commutator(&self, x: &Matrix<S>) -> Vec<S> {
        let phi = self.a.phi();
        x.mul(phi).sub(&phi.mul(x)).to_rows().concat()
    }

    fn assemble(&self, positions: &[(usize, usize)], coef: &[S]) -> Matrix<S> {
        let mut m = Matrix::zeros(self.n, self.n);
        for (&(r, c), x) in positions.iter().zip(coef) {
            m[(r, c)] = x.clone();
        }
        m
    }
}

fn check_dim<S: Scalar>(a: &Algebra3<S>, x: &GradedOperator<S>) -> Result<()> {
    if x.matrix.rows() != a.dim() || x.matrix.cols() != a.dim() {
        return Err(Error::Dimension {
            what: "operator".into(),
            expected: a.dim() * a.dim(),
            got: x.matrix.rows() * x.matrix.cols(),
        });
    }
    Ok(())
}

fn commutation_witness<S: Scalar>(a: &Algebra3<S>, x: &Matrix<S>) -> Option<Witness> {
    let (xp, px) = (x.mul(a.phi()), a.phi().mul(x));
    (0..a.dim()).find_map(|j| {
        let (l, r) = (xp.column(j), px.column(j));
        (l != r).then(|| {
            Witness::new(vec![j])
                .condition(1)
                .sides(&l, &r)
                .detail("X phi and phi X differ on this basis vector")
        })
    })
}

const DERIVATION: &str = "(1) X phi = phi X; (2) X[f,g,h] = [Xf, phi^k g, phi^k h] \
     + rho(X,f) [phi^k f, Xg, phi^k h] + rho(X,f+g) [phi^k f, phi^k g, Xh]";

/// Commutation with `phi` (condition 1) and the twisted Leibniz rule
/// (condition 2) on all basis triples.
pub fn is_phi_k_derivation<S: Scalar>(a: &Algebra3<S>, x: &GradedOperator<S>, k: u32) -> Result<Report> {
    check_dim(a, x)?;
    let fr = Frame::new(a, k);
    let m = &x.matrix;
    let wit = commutation_witness(a, m).or_else(|| {
        first_witness(a.dim(), 3, |t| {
            let lhs = fr.outer(m, t);
            let rhs = fr.leibniz(&x.degree, Some(m), Some(m), Some(m), t);
            (lhs != rhs).then(|| Witness::new(t.to_vec()).condition(2).sides(&lhs, &rhs))
        })
    });
    Ok(Report::from_witness("phi-k-derivation", DERIVATION, wit))
}

/// Basis of the degree-`degree` operators satisfying both derivation
/// conditions at level `k`.
pub fn derivation_space<S: Scalar>(a: &Algebra3<S>, k: u32, degree: &Degree) -> Vec<GradedOperator<S>> {
    let fr = Frame::new(a, k);
    let pos = fr.positions(degree);
    let columns: Vec<Vec<S>> = pos
        .par_iter()
        .map(|&p| {
            let e = fr.unit_op(p);
            let mut col = fr.commutator(&e);
            col.extend(fr.flat(|t| {
                let mut v = fr.outer(&e, t);
                add_scaled(&mut v, &-S::one(), &fr.leibniz(degree, Some(&e), Some(&e), Some(&e), t));
                v
            }));
            col
        })
        .collect();
    kernel_ops(&fr, &pos, &columns, degree)
}

fn kernel_ops<S: Scalar>(
    fr: &Frame<'_, S>,
    pos: &[(usize, usize)],
    columns: &[Vec<S>],
    degree: &Degree,
) -> Vec<GradedOperator<S>> {
    let mut sys = LinearSystem::new(pos.len());
    sys.push_columns(columns, None);
    sys.kernel()
        .into_iter()
        .map(|coef| GradedOperator {
            matrix: fr.assemble(pos, &coef),
            degree: degree.clone(),
        })
        .collect()
}

/// `ad_k(e_i, e_j)(g) = [e_i, e_j, phi^k g]`, of degree `d_i + d_j`.
/// Requires `phi e_i = e_i` and `phi e_j = e_j`.
pub fn inner_derivation<S: Scalar>(a: &Algebra3<S>, i: usize, j: usize, k: u32) -> Result<GradedOperator<S>> {
    let n = a.dim();
    for &v in &[i, j] {
        if v >= n {
            return Err(Error::Index { index: v, dim: n });
        }
        let fixed = a.phi_col(v).iter().enumerate().all(|(r, c)| {
            if r == v {
                c.is_one()
            } else {
                c.is_zero()
            }
        });
        if !fixed {
            return Err(Error::Precondition(format!(
                "inner derivation needs phi-fixed generators, but phi({}) != {}",
                a.basis().names()[v],
                a.basis().names()[v]
            )));
        }
    }
    let pk = a.phi().pow(k);
    let cols: Vec<Vec<S>> = (0..n)
        .map(|g| {
            let x = crate::linalg::unit(n, i);
            let y = crate::linalg::unit(n, j);
            a.br(&x, &y, &pk.column(g))
        })
        .collect();
    Ok(GradedOperator {
        matrix: Matrix::from_columns(n, &cols),
        degree: a.degree_sum(&[i, j]),
    })
}

const CENTROID: &str = "(1) X phi = phi X; X[f,g,h] = [Xf, phi^k g, phi^k h] (2) \
     = rho(X,f) [phi^k f, Xg, phi^k h] (3) = rho(X,f+g) [phi^k f, phi^k g, Xh] (4)";

/// The chained centroid equalities, with commutation with `phi`.
pub fn check_centroid<S: Scalar>(a: &Algebra3<S>, x: &GradedOperator<S>, k: u32) -> Result<Report> {
    check_dim(a, x)?;
    let fr = Frame::new(a, k);
    let m = &x.matrix;
    let d = &x.degree;
    let wit = commutation_witness(a, m).or_else(|| {
        first_witness(a.dim(), 3, |t| {
            let outer = fr.outer(m, t);
            let first = fr.leibniz(d, Some(m), None, None, t);
            let second = fr.leibniz(d, None, Some(m), None, t);
            let third = fr.leibniz(d, None, None, Some(m), t);
            let fail = |c: usize, l: &[S], r: &[S]| Some(Witness::new(t.to_vec()).condition(c).sides(l, r));
            if outer != first {
                fail(2, &outer, &first)
            } else if first != second {
                fail(3, &first, &second)
            } else if second != third {
                fail(4, &second, &third)
            } else {
                None
            }
        })
    });
    Ok(Report::from_witness("centroid", CENTROID, wit))
}

/// Basis of the degree-`degree` centroid at level `k`.
pub fn centroid_space<S: Scalar>(a: &Algebra3<S>, k: u32, degree: &Degree) -> Vec<GradedOperator<S>> {
    let fr = Frame::new(a, k);
    let pos = fr.positions(degree);
    let columns: Vec<Vec<S>> = pos
        .par_iter()
        .map(|&p| {
            let e = fr.unit_op(p);
            let mut col = fr.commutator(&e);
            col.extend(fr.flat(|t| {
                let outer = fr.outer(&e, t);
                let first = fr.leibniz(degree, Some(&e), None, None, t);
                let second = fr.leibniz(degree, None, Some(&e), None, t);
                let third = fr.leibniz(degree, None, None, Some(&e), t);
                let mut v = Vec::with_capacity(3 * fr.n);
                for (l, r) in [(&outer, &first), (&first, &second), (&second, &third)] {
                    v.extend(l.iter().zip(r).map(|(x, y)| x.clone() - y.clone()));
                }
                v
            }));
            col
        })
        .collect();
    kernel_ops(&fr, &pos, &columns, degree)
}

/// Result of [`classify_operator`]. The generalized and quasi derivation
/// entries hold the auxiliary maps found by the solver.
#[derive(Debug, Clone)]
pub struct Classification<S: Scalar> {
    /// `(Y, Z, W)` for a generalized derivation.
    pub gder: Option<(GradedOperator<S>, GradedOperator<S>, GradedOperator<S>)>,
    /// The map `Y` with `Y[f,g,h]` equal to the Leibniz expression in `X`.
    pub qder: Option<GradedOperator<S>>,
    pub centroid: Report,
    pub qcentroid: Report,
}

/// Plain membership flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct OperatorFlags {
    pub gder: bool,
    pub qder: bool,
    pub centroid: bool,
    pub qcentroid: bool,
}

impl<S: Scalar> Classification<S> {
    pub fn flags(&self) -> OperatorFlags {
        OperatorFlags {
            gder: self.gder.is_some(),
            qder: self.qder.is_some(),
            centroid: self.centroid.passed(),
            qcentroid: self.qcentroid.passed(),
        }
    }
}

/// Decides membership in the generalized derivations, quasi derivations,
/// centroid and quasi-centroid at level `k`. The existence questions are
/// solved exactly as linear systems; auxiliary maps are sought among the
/// degree-`|X|` operators commuting with `phi`.
pub fn classify_operator<S: Scalar>(a: &Algebra3<S>, x: &GradedOperator<S>, k: u32) -> Result<Classification<S>> {
    check_dim(a, x)?;
    let fr = Frame::new(a, k);
    let d = &x.degree;
    let m = &x.matrix;
    let commutes = x.commutes_with(a.phi());
    let pos = fr.positions(d);
    let np = pos.len();
    let op = |coef: &[S]| GradedOperator {
        matrix: fr.assemble(&pos, coef),
        degree: d.clone(),
    };
    let zero_comm = vec![S::zero(); fr.n * fr.n];

    let gder = if commutes {
        // unknowns: Y, Z, W on the same positions
        let rhs = {
            let mut b = vec![S::zero(); 3 * zero_comm.len()];
            b.extend(fr.flat(|t| fr.leibniz(d, Some(m), None, None, t)));
            b
        };
        let columns: Vec<Vec<S>> = (0..3 * np)
            .into_par_iter()
            .map(|u| {
                let (which, p) = (u / np, pos[u % np]);
                let e = fr.unit_op(p);
                let mut col = Vec::new();
                for slot in 0..3 {
                    if slot == which {
                        col.extend(fr.commutator(&e));
                    } else {
                        col.extend(zero_comm.iter().cloned());
                    }
                }
                col.extend(fr.flat(|t| match which {
                    0 => fr.leibniz(d, None, Some(&e), None, t).into_iter().map(|c| -c).collect(),
                    1 => fr.leibniz(d, None, None, Some(&e), t).into_iter().map(|c| -c).collect(),
                    _ => fr.outer(&e, t),
                }));
                col
            })
            .collect();
        let mut sys = LinearSystem::new(3 * np);
        sys.push_columns(&columns, Some(&rhs));
        sys.solve().map(|sol| {
            let p = &sol.particular;
            (op(&p[..np]), op(&p[np..2 * np]), op(&p[2 * np..]))
        })
    } else {
        None
    };

    let qder = if commutes {
        let mut rhs = zero_comm.clone();
        rhs.extend(fr.flat(|t| fr.leibniz(d, Some(m), Some(m), Some(m), t)));
        let columns: Vec<Vec<S>> = pos
            .par_iter()
            .map(|&p| {
                let e = fr.unit_op(p);
                let mut col = fr.commutator(&e);
                col.extend(fr.flat(|t| fr.outer(&e, t)));
                col
            })
            .collect();
        let mut sys = LinearSystem::new(np);
        sys.push_columns(&columns, Some(&rhs));
        sys.solve().map(|sol| op(&sol.particular))
    } else {
        None
    };

    let centroid = check_centroid(a, x, k)?;
    let mut qcentroid = centroid.clone();
    qcentroid.check = "quasi-centroid".into();
    let qcentroid = qcentroid.note(
        "the quasi-centroid condition is displayed identically to the centroid condition; \
         the same predicate is applied",
    );
    Ok(Classification {
        gder,
        qder,
        centroid,
        qcentroid,
    })
}
