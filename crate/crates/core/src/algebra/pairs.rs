use std::collections::HashMap;

use super::{rho_table, Algebra3};
use crate::grading::{Bicharacter, Degree, GradingGroup};
use crate::linalg::{add_scaled, Matrix};
use crate::report::{first_witness, Report, Witness};
use crate::scalar::Scalar;

/// Canonical basis of the pair space: `e_i ^ e_j` for `i < j`, plus
/// `e_i ^ e_i` when `rho(d_i, d_i) = -1`. Other pairs reduce by
/// `e_b ^ e_a = -rho(d_b, d_a) e_a ^ e_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSpace<S> {
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    degrees: Vec<Degree>,
    rho: Vec<Vec<S>>,
}

impl<S: Scalar> PairSpace<S> {
    pub fn new(group: &GradingGroup, rho: &Bicharacter<S>, degrees: &[Degree]) -> Self {
        let table = rho_table(rho, degrees, degrees);
        let n = degrees.len();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i..n {
                if i < j || (-table[i][i].clone()).is_one() {
                    pairs.push((i, j));
                }
            }
        }
        let index = pairs.iter().enumerate().map(|(p, &ij)| (ij, p)).collect();
        let pair_degrees = pairs
            .iter()
            .map(|&(i, j)| group.add(&degrees[i], &degrees[j]))
            .collect();
        PairSpace {
            pairs,
            index,
            degrees: pair_degrees,
            rho: table,
        }
    }

    pub fn of(a: &Algebra3<S>) -> Self {
        PairSpace::new(a.group(), a.rho(), a.degrees())
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair(&self, p: usize) -> (usize, usize) {
        self.pairs[p]
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.index.get(&(i, j)).copied()
    }

    /// `e_a ^ e_b = c * pair[p]`, or `None` when the wedge vanishes.
    pub fn reduce(&self, a: usize, b: usize) -> Option<(usize, S)> {
        if a < b {
            Some((self.index[&(a, b)], S::one()))
        } else if a > b {
            Some((self.index[&(b, a)], -self.rho[a][b].clone()))
        } else {
            self.index.get(&(a, a)).map(|&p| (p, S::one()))
        }
    }

    /// `x ^ y` in pair coordinates.
    pub fn wedge(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.len()];
        for (a, xa) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if let Some((p, c)) = self.reduce(a, b) {
                    out[p] = out[p].clone() + c * xa.clone() * yb.clone();
                }
            }
        }
        out
    }
}

/// A binary graded Hom algebra given by a dense structure table.
#[derive(Clone, PartialEq)]
pub struct BinaryAlgebra<S> {
    group: GradingGroup,
    degrees: Vec<Degree>,
    table: Vec<Vec<Vec<S>>>,
    twist: Matrix<S>,
    rho: Vec<Vec<S>>,
}

impl<S: Scalar> std::fmt::Debug for BinaryAlgebra<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BinaryAlgebra")
            .field("degrees", &self.degrees)
            .field("table", &self.table)
            .field("twist", &self.twist)
            .finish()
    }
}

impl<S: Scalar> BinaryAlgebra<S> {
    /// `table[p][q]` holds `[x_p, x_q]`; `twist` has images in columns.
    pub fn new(
        group: GradingGroup,
        rho: &Bicharacter<S>,
        degrees: Vec<Degree>,
        table: Vec<Vec<Vec<S>>>,
        twist: Matrix<S>,
    ) -> Self {
        let rho = rho_table(rho, &degrees, &degrees);
        BinaryAlgebra {
            group,
            degrees,
            table,
            twist,
            rho,
        }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn twist(&self) -> &Matrix<S> {
        &self.twist
    }

    pub fn bracket_basis(&self, p: usize, q: usize) -> &[S] {
        &self.table[p][q]
    }

    pub fn set_bracket(&mut self, p: usize, q: usize, value: Vec<S>) {
        self.table[p][q] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().flatten().flatten().all(|c| c.is_zero())
    }

    pub fn br(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (p, xp) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (q, yq) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                add_scaled(&mut out, &(xp.clone() * yq.clone()), &self.table[p][q]);
            }
        }
        out
    }
}

/// The binary bracket on the pair space:
/// `[f1^f2, g1^g2] = [f1,f2,g1] ^ phi g2 + rho(f1+f2, g1) phi g1 ^ [f1,f2,g2]`
/// with twist `phi1(f1^f2) = phi f1 ^ phi f2`.
///
/// The result always satisfies the twisted Leibniz rule. Antisymmetry can
/// fail, e.g. when a central element sits in one of the pairs, so
/// [`check_hom_rho_lie2`] passes only for some algebras (A4 among them).
pub fn fundamental_algebra<S: Scalar>(a: &Algebra3<S>) -> (PairSpace<S>, BinaryAlgebra<S>) {
    let space = PairSpace::of(a);
    let m = space.len();
    let mut table = vec![vec![vec![S::zero(); m]; m]; m];
    for (p, &(f1, f2)) in space.pairs().iter().enumerate() {
        for (q, &(g1, g2)) in space.pairs().iter().enumerate() {
            let mut v = space.wedge(&a.bracket_basis(f1, f2, g1), a.phi_col(g2));
            let second = space.wedge(a.phi_col(g1), &a.bracket_basis(f1, f2, g2));
            add_scaled(&mut v, &a.rho_sum(&[f1, f2], &[g1]), &second);
            table[p][q] = v;
        }
    }
    let twist_cols: Vec<Vec<S>> = space
        .pairs()
        .iter()
        .map(|&(i, j)| space.wedge(a.phi_col(i), a.phi_col(j)))
        .collect();
    let twist = Matrix::from_columns(m, &twist_cols);
    let binary = BinaryAlgebra::new(a.group().clone(), a.rho(), space.degrees().to_vec(), table, twist);
    (space, binary)
}

const HOM_LIE2: &str = "(1) |[x,y]| = |x| + |y|; (2) [x,y] = -rho(x,y) [y,x]; \
     (3) rho(z,x) [phi x, [y,z]] + rho(y,z) [phi z, [x,y]] + rho(x,y) [phi y, [z,x]] = 0";

/// Grading (condition 1), antisymmetry (2) and the twisted Jacobi
/// identity (3) on all basis pairs and triples.
pub fn check_hom_rho_lie2<S: Scalar>(b: &BinaryAlgebra<S>) -> Report {
    let n = b.dim();
    let grading = first_witness(n, 2, |t| {
        let want = b.group.add(&b.degrees[t[0]], &b.degrees[t[1]]);
        b.table[t[0]][t[1]]
            .iter()
            .enumerate()
            .find(|(l, c)| !c.is_zero() && b.degrees[*l] != want)
            .map(|(l, _)| {
                let mut tuple = t.to_vec();
                tuple.push(l);
                Witness::new(tuple).condition(1)
            })
    });
    let antisym = || {
        first_witness(n, 2, |t| {
            let (x, y) = (t[0], t[1]);
            let lhs = b.table[x][y].clone();
            let rhs: Vec<S> = b.table[y][x]
                .iter()
                .map(|c| -b.rho[x][y].clone() * c.clone())
                .collect();
            (lhs != rhs).then(|| Witness::new(t.to_vec()).condition(2).sides(&lhs, &rhs))
        })
    };
    let jacobi = || {
        let twist: Vec<Vec<S>> = (0..n).map(|j| b.twist.column(j)).collect();
        first_witness(n, 3, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            let mut sum = vec![S::zero(); n];
            for (u, v, w) in [(x, y, z), (z, x, y), (y, z, x)] {
                let term = b.br(&twist[u], &b.table[v][w]);
                add_scaled(&mut sum, &b.rho[w][u], &term);
            }
            (!sum.iter().all(|c| c.is_zero()))
                .then(|| Witness::new(t.to_vec()).condition(3).sides(&sum, &vec![S::zero(); n]))
        })
    };
    let w = grading.or_else(antisym).or_else(jacobi);
    Report::from_witness("hom-rho-lie2", HOM_LIE2, w)
}
