//! Grading groups, degrees, and two-cycle bicharacters.
//!
//! A grading group is `Z^r x Z/m_1 x ... x Z/m_t`. A bicharacter is given by
//! its generator matrix `q`, with `rho(a, c) = prod_{i,j} q[i][j]^(a_i c_j)`.
//! Torsion coordinates are stored as representatives in `[0, m)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Report, Witness};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradingGroup {
    pub free_rank: usize,
    pub torsion_orders: Vec<i64>,
}

impl GradingGroup {
    pub fn new(free_rank: usize, torsion_orders: Vec<i64>) -> Result<Self> {
        if let Some(&m) = torsion_orders.iter().find(|&&m| m < 2) {
            return Err(Error::Degree {
                coords: vec![m],
                reason: "torsion orders must be at least 2".into(),
            });
        }
        Ok(GradingGroup {
            free_rank,
            torsion_orders,
        })
    }

    /// The trivial group (no coordinates).
    pub fn trivial() -> Self {
        GradingGroup {
            free_rank: 0,
            torsion_orders: Vec::new(),
        }
    }

    /// `Z/2`, the super case.
    pub fn z2() -> Self {
        GradingGroup {
            free_rank: 0,
            torsion_orders: vec![2],
        }
    }

    pub fn coord_count(&self) -> usize {
        self.free_rank + self.torsion_orders.len()
    }

    /// Order of coordinate `i`, or `None` for a free coordinate.
    pub fn order(&self, i: usize) -> Option<i64> {
        i.checked_sub(self.free_rank)
            .map(|t| self.torsion_orders[t])
    }

    pub fn zero(&self) -> Degree {
        Degree(vec![0; self.coord_count()])
    }

    /// Builds a canonical degree, reducing torsion coordinates.
    pub fn degree(&self, coords: &[i64]) -> Result<Degree> {
        if coords.len() != self.coord_count() {
            return Err(Error::Degree {
                coords: coords.to_vec(),
                reason: format!("expected {} coordinates", self.coord_count()),
            });
        }
        Ok(self.reduce(coords.to_vec()))
    }

    fn reduce(&self, mut coords: Vec<i64>) -> Degree {
        for (i, c) in coords.iter_mut().enumerate() {
            if let Some(m) = self.order(i) {
                *c = c.rem_euclid(m);
            }
        }
        Degree(coords)
    }

    pub fn add(&self, a: &Degree, b: &Degree) -> Degree {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &Degree) -> Degree {
        self.reduce(a.0.iter().map(|x| -x).collect())
    }

    pub fn sum<'a>(&self, degrees: impl IntoIterator<Item = &'a Degree>) -> Degree {
        degrees
            .into_iter()
            .fold(self.zero(), |acc, d| self.add(&acc, d))
    }

    pub fn is_canonical(&self, d: &Degree) -> bool {
        d.0.len() == self.coord_count()
            && d.0
                .iter()
                .enumerate()
                .all(|(i, &c)| self.order(i).is_none_or(|m| (0..m).contains(&c)))
    }

    /// Every element when the group is finite; otherwise every element with
    /// free coordinates in `[-radius, radius]`.
    pub fn enumerate(&self, radius: i64) -> Vec<Degree> {
        let ranges: Vec<Vec<i64>> = (0..self.coord_count())
            .map(|i| match self.order(i) {
                Some(m) => (0..m).collect(),
                None => (-radius..=radius).collect(),
            })
            .collect();
        let mut out = vec![Vec::new()];
        for range in &ranges {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    range.iter().map(move |&c| {
                        let mut next = prefix.clone();
                        next.push(c);
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(Degree).collect()
    }
}

/// Coordinates of a group element. Only meaningful together with its group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Degree(pub Vec<i64>);

impl Degree {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Two-cycle `rho: G x G -> k*` in generator-matrix form.
#[derive(Debug, Clone, PartialEq)]
pub struct Bicharacter<S> {
    q: Vec<Vec<S>>,
}

impl<S: Scalar> Bicharacter<S> {
    /// Wraps `q` after shape and nonzero checks. The two-cycle laws are
    /// checked separately by [`validate_bicharacter`].
    pub fn new(group: &GradingGroup, q: Vec<Vec<S>>) -> Result<Self> {
        let side = group.coord_count();
        if q.len() != side {
            return Err(Error::Dimension {
                what: "bicharacter rows".into(),
                expected: side,
                got: q.len(),
            });
        }
        for (i, row) in q.iter().enumerate() {
            if row.len() != side {
                return Err(Error::Dimension {
                    what: format!("bicharacter row {i}"),
                    expected: side,
                    got: row.len(),
                });
            }
            if let Some(j) = row.iter().position(|x| x.is_zero()) {
                return Err(Error::ZeroEntry { i, j });
            }
        }
        Ok(Bicharacter { q })
    }

    /// All-ones matrix: `rho == 1`.
    pub fn trivial(group: &GradingGroup) -> Self {
        let side = group.coord_count();
        Bicharacter {
            q: vec![vec![S::one(); side]; side],
        }
    }

    /// `q = [[-1]]` on `Z/2`.
    pub fn super_sign() -> Self {
        Bicharacter {
            q: vec![vec![-S::one()]],
        }
    }

    pub fn matrix(&self) -> &[Vec<S>] {
        &self.q
    }

    pub fn is_trivial(&self) -> bool {
        self.q.iter().flatten().all(|x| x.is_one())
    }

    /// `rho(a, c) = prod q[i][j]^(a_i * c_j)`.
    pub fn eval(&self, a: &Degree, c: &Degree) -> S {
        let mut out = S::one();
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &cj) in c.0.iter().enumerate() {
                let e = ai * cj;
                if e != 0 && !self.q[i][j].is_one() {
                    out = out * self.q[i][j].powi(e);
                }
            }
        }
        out
    }
}

/// Standalone form of [`Bicharacter::eval`].
pub fn rho_eval<S: Scalar>(b: &Bicharacter<S>, a: &Degree, c: &Degree) -> S {
    b.eval(a, c)
}

const BICHARACTER_LAWS: &str =
    "q[j][i] = 1/q[i][j]; q[i][j]^m_i = q[j][i]^m_i = 1 on torsion coordinates";

/// Checks the torsion constraints and the inversion law, pair by pair. A passing `q`
/// makes `rho` a two-cycle on every pair of degrees.
pub fn validate_bicharacter<S: Scalar>(group: &GradingGroup, q: &[Vec<S>]) -> Result<Report> {
    let side = group.coord_count();
    if q.len() != side || q.iter().any(|r| r.len() != side) {
        return Err(Error::Dimension {
            what: "bicharacter".into(),
            expected: side,
            got: q.len(),
        });
    }
    for (i, row) in q.iter().enumerate() {
        if let Some(j) = row.iter().position(|x| x.is_zero()) {
            return Err(Error::ZeroEntry { i, j });
        }
    }
    for i in 0..side {
        for j in 0..side {
            for (k, l) in [(i, j), (j, i)] {
                if let Some(m) = group.order(k) {
                    let power = q[k][l].powi(m);
                    if !power.is_one() {
                        return Ok(Report::fail(
                            "bicharacter",
                            BICHARACTER_LAWS,
                            Witness::new(vec![i, j]).sides(&[power], &[S::one()]).detail(
                                format!("torsion condition q[{k}][{l}]^{m} = 1 violated"),
                            ),
                        ));
                    }
                }
            }
            let product = q[i][j].clone() * q[j][i].clone();
            if !product.is_one() {
                return Ok(Report::fail(
                    "bicharacter",
                    BICHARACTER_LAWS,
                    Witness::new(vec![i, j])
                        .sides(&[product], &[S::one()])
                        .detail("inversion law q[i][j] * q[j][i] = 1 violated"),
                ));
            }
        }
    }
    Ok(Report::pass("bicharacter", BICHARACTER_LAWS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use num_rational::BigRational as Q;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn trivial_bicharacter_on_z_passes() {
        let g = GradingGroup::new(1, vec![]).unwrap();
        let r = validate_bicharacter::<Q>(&g, &[vec![int(1)]]).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn super_sign_passes_and_evaluates() {
        let g = GradingGroup::z2();
        assert!(validate_bicharacter::<Q>(&g, &[vec![int(-1)]]).unwrap().passed());
        let b = Bicharacter::<Q>::super_sign();
        let one = g.degree(&[1]).unwrap();
        assert_eq!(b.eval(&one, &one), int(-1));
        assert_eq!(b.eval(&g.zero(), &one), int(1));
    }

    #[test]
    fn torsion_violation_reports_witness() {
        let g = GradingGroup::z2();
        let r = validate_bicharacter::<Q>(&g, &[vec![int(2)]]).unwrap();
        let w = r.witness().expect("should fail");
        assert_eq!(w.tuple, vec![0, 0]);
        assert!(w.detail.contains("torsion"));
    }

    #[test]
    fn shape_and_zero_errors() {
        let g = GradingGroup::new(2, vec![]).unwrap();
        assert!(matches!(
            validate_bicharacter::<Q>(&g, &[vec![int(1)]]),
            Err(Error::Dimension { .. })
        ));
        assert_eq!(
            validate_bicharacter::<Q>(&g, &[vec![int(1), int(0)], vec![int(1), int(1)]]),
            Err(Error::ZeroEntry { i: 0, j: 1 })
        );
    }

    #[test]
    fn free_rank_two_example() {
        let g = GradingGroup::new(2, vec![]).unwrap();
        let b = Bicharacter::new(&g, vec![vec![int(1), int(2)], vec![q(1, 2), int(1)]]).unwrap();
        let a = g.degree(&[1, 1]).unwrap();
        let c = g.degree(&[0, 1]).unwrap();
        assert_eq!(b.eval(&a, &c), int(2));
        assert_eq!(b.eval(&c, &a), q(1, 2));
    }

    #[test]
    fn degrees_reduce_mod_torsion() {
        let g = GradingGroup::new(1, vec![2, 3]).unwrap();
        let a = g.degree(&[-4, 3, -1]).unwrap();
        assert_eq!(a.0, vec![-4, 1, 2]);
        let b = g.degree(&[1, 1, 2]).unwrap();
        assert_eq!(g.add(&a, &b).0, vec![-3, 0, 1]);
        assert!(g.add(&a, &g.neg(&a)).is_zero());
        assert!(GradingGroup::new(0, vec![1]).is_err());
    }
}
