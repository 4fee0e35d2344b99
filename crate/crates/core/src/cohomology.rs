//! Cochains with values in a representation, the coboundary operator, and
//! low-degree cocycle spaces.

use rayon::prelude::*;

use crate::algebra::{skew_orbit, Algebra3};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::linalg::{add_scaled, is_zero_vec, kernel_basis, Matrix};
use crate::report::{decode_tuple, encode_tuple, first_witness, Report, Witness};
use crate::representation::Representation;
use crate::scalar::Scalar;

/// A level-`n` cochain: values on all `(2n+1)`-tuples of basis indices,
/// stored sparsely, with a degree `|w|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain<S> {
    level: usize,
    degree: Degree,
    dim_a: usize,
    dim_v: usize,
    values: Vec<Vec<(usize, S)>>,
}

/// One cochain value given on a single tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct CochainEntry<S> {
    pub on: Vec<usize>,
    pub out: Vec<(usize, S)>,
}

fn sparse<S: Scalar>(v: &[S]) -> Vec<(usize, S)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| (l, c.clone()))
        .collect()
}

impl<S: Scalar> Cochain<S> {
    pub fn zero(level: usize, degree: Degree, dim_a: usize, dim_v: usize) -> Self {
        let count = dim_a.pow(2 * level as u32 + 1);
        Cochain {
            level,
            degree,
            dim_a,
            dim_v,
            values: vec![Vec::new(); count],
        }
    }

    /// Values taken literally from `f` on every tuple.
    pub fn from_fn(
        level: usize,
        degree: Degree,
        dim_a: usize,
        dim_v: usize,
        f: impl Fn(&[usize]) -> Vec<S> + Sync,
    ) -> Self {
        let arity = 2 * level + 1;
        let count = dim_a.pow(arity as u32);
        let values = (0..count)
            .into_par_iter()
            .map(|idx| sparse(&f(&decode_tuple(idx, dim_a, arity))))
            .collect();
        Cochain {
            level,
            degree,
            dim_a,
            dim_v,
            values,
        }
    }

    /// Expands values given on some tuples to every reordering by the
    /// rho-skew rule of `a`; unspecified orbits are zero. Conflicting
    /// entries are an error, as for brackets.
    pub fn from_skew_entries(
        a: &Algebra3<S>,
        level: usize,
        degree: Degree,
        dim_v: usize,
        entries: &[CochainEntry<S>],
    ) -> Result<Self> {
        let arity = 2 * level + 1;
        let n = a.dim();
        let mut out = Self::zero(level, degree, n, dim_v);
        let mut assigned = vec![false; out.values.len()];
        for e in entries {
            if e.on.len() != arity {
                return Err(Error::Dimension {
                    what: "cochain tuple".into(),
                    expected: arity,
                    got: e.on.len(),
                });
            }
            if let Some(&i) = e.on.iter().find(|&&i| i >= n) {
                return Err(Error::Index { index: i, dim: n });
            }
            let mut value = vec![S::zero(); dim_v];
            for (l, c) in &e.out {
                if *l >= dim_v {
                    return Err(Error::Index { index: *l, dim: dim_v });
                }
                value[*l] = value[*l].clone() + c.clone();
            }
            let orbit = skew_orbit(&e.on, |x, y| -a.rho_ij(y, x).clone());
            if orbit.forced_zero && !is_zero_vec(&value) {
                return Err(Error::Conflict {
                    tuple: e.on.clone(),
                    first: value.iter().map(Scalar::to_text).collect(),
                    second: value.iter().map(|c| (-c.clone()).to_text()).collect(),
                });
            }
            for (t, c) in orbit.members {
                let image: Vec<S> = value.iter().map(|x| c.clone() * x.clone()).collect();
                let slot = encode_tuple(&t, n);
                let current = out.get(&t);
                if assigned[slot] && current != image {
                    return Err(Error::Conflict {
                        tuple: t,
                        first: current.iter().map(Scalar::to_text).collect(),
                        second: image.iter().map(Scalar::to_text).collect(),
                    });
                }
                assigned[slot] = true;
                out.values[slot] = sparse(&image);
            }
        }
        Ok(out)
    }

    /// A level-1 `A`-valued cochain with the values of a bracket tensor.
    pub fn from_tensor(t: &crate::algebra::TriTensor<S>, degree: Degree) -> Self {
        let n = t.dim();
        Self::from_fn(1, degree, n, n, |x| t.get_dense(x[0], x[1], x[2]))
    }

    /// The values of a level-1 cochain with `dim_a == dim_v` as a bracket
    /// tensor.
    pub fn to_tensor(&self) -> Result<crate::algebra::TriTensor<S>> {
        if self.level != 1 || self.dim_a != self.dim_v {
            return Err(Error::Precondition(format!(
                "a bracket needs a level-1 cochain with values in A, got level {} with {} -> {}",
                self.level, self.dim_a, self.dim_v
            )));
        }
        Ok(crate::algebra::TriTensor::from_fn(self.dim_a, |i, j, k| self.get(&[i, j, k])))
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn arity(&self) -> usize {
        2 * self.level + 1
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn get_sparse(&self, t: &[usize]) -> &[(usize, S)] {
        &self.values[encode_tuple(t, self.dim_a)]
    }

    pub fn get(&self, t: &[usize]) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim_v];
        for (l, c) in self.get_sparse(t) {
            v[*l] = c.clone();
        }
        v
    }

    pub fn set(&mut self, t: &[usize], value: &[S]) {
        let slot = encode_tuple(t, self.dim_a);
        self.values[slot] = sparse(value);
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Vec::is_empty)
    }

    /// Tuples with a nonzero value, in lexicographic order.
    pub fn support(&self) -> Vec<Vec<usize>> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .map(|(idx, _)| decode_tuple(idx, self.dim_a, self.arity()))
            .collect()
    }

    /// Multilinear extension to coordinate vectors.
    pub fn eval(&self, args: &[&[S]]) -> Vec<S> {
        assert_eq!(args.len(), self.arity(), "cochain arity");
        let mut out = vec![S::zero(); self.dim_v];
        let supports: Vec<Vec<(usize, &S)>> = args
            .iter()
            .map(|v| v.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let mut tuple = vec![0; args.len()];
        self.eval_rec(&supports, 0, &S::one(), &mut tuple, &mut out);
        out
    }

    fn eval_rec(
        &self,
        supports: &[Vec<(usize, &S)>],
        pos: usize,
        coef: &S,
        tuple: &mut Vec<usize>,
        out: &mut [S],
    ) {
        if pos == supports.len() {
            for (l, c) in self.get_sparse(tuple) {
                out[*l] = out[*l].clone() + coef.clone() * c.clone();
            }
            return;
        }
        for (i, c) in &supports[pos] {
            tuple[pos] = *i;
            self.eval_rec(supports, pos + 1, &(coef.clone() * (*c).clone()), tuple, out);
        }
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: &S, other: &Cochain<S>) -> Cochain<S> {
        assert_eq!(
            (self.level, self.dim_a, self.dim_v),
            (other.level, other.dim_a, other.dim_v)
        );
        let arity = self.arity();
        Cochain::from_fn(self.level, self.degree.clone(), self.dim_a, self.dim_v, |t| {
            let mut v = self.get(t);
            add_scaled(&mut v, alpha, &other.get(t));
            debug_assert_eq!(t.len(), arity);
            v
        })
    }

    pub fn scale(&self, alpha: &S) -> Cochain<S> {
        Cochain::zero(self.level, self.degree.clone(), self.dim_a, self.dim_v).axpy(alpha, self)
    }

    /// Nonzero values on nondecreasing tuples, the form written to files
    /// for skew cochains.
    pub fn canonical_entries(&self) -> Vec<CochainEntry<S>> {
        self.entries_where(|t| t.windows(2).all(|w| w[0] <= w[1]))
    }

    /// Every nonzero value.
    pub fn all_entries(&self) -> Vec<CochainEntry<S>> {
        self.entries_where(|_| true)
    }

    fn entries_where(&self, keep: impl Fn(&[usize]) -> bool) -> Vec<CochainEntry<S>> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .map(|(idx, v)| (decode_tuple(idx, self.dim_a, self.arity()), v))
            .filter(|(t, _)| keep(t))
            .map(|(t, v)| CochainEntry { on: t, out: v.clone() })
            .collect()
    }
}

fn check_shape<S: Scalar>(a: &Algebra3<S>, r: &Representation<S>, w: &Cochain<S>) -> Result<()> {
    if w.dim_a != a.dim() || w.dim_v != r.dim() || r.algebra_dim() != a.dim() {
        return Err(Error::Dimension {
            what: "cochain".into(),
            expected: a.dim() * r.dim(),
            got: w.dim_a * w.dim_v,
        });
    }
    Ok(())
}

/// Degree rule: `w(e_i1, ..., e_ik)` lies in `V` of degree `d_i1 + ... + |w|`.
pub fn check_cochain_degree<S: Scalar>(a: &Algebra3<S>, r: &Representation<S>, w: &Cochain<S>) -> Result<Report> {
    check_shape(a, r, w)?;
    let g = a.group();
    let wit = first_witness(a.dim(), w.arity(), |t| {
        let want = g.add(&a.degree_sum(t), w.degree());
        w.get_sparse(t)
            .iter()
            .find(|(l, _)| r.degrees()[*l] != want)
            .map(|(l, _)| {
                let mut tuple = t.to_vec();
                tuple.push(*l);
                Witness::new(tuple).detail(format!("output {l} should have degree {want}"))
            })
    });
    Ok(Report::from_witness(
        "cochain-degree",
        "w(f1,...,fk) in V of degree |f1|+...+|fk|+|w|",
        wit,
    ))
}

/// `beta(w(f1, ..., fk)) = w(phi f1, ..., phi fk)` on all basis tuples.
pub fn is_hom_cochain<S: Scalar>(a: &Algebra3<S>, r: &Representation<S>, w: &Cochain<S>) -> Result<Report> {
    check_shape(a, r, w)?;
    let wit = first_witness(a.dim(), w.arity(), |t| {
        let lhs = r.beta().mul_vec(&w.get(t));
        let args: Vec<&[S]> = t.iter().map(|&i| a.phi_col(i)).collect();
        let rhs = w.eval(&args);
        (lhs != rhs).then(|| Witness::new(t.to_vec()).sides(&lhs, &rhs))
    });
    Ok(Report::from_witness(
        "hom-cochain",
        "beta(w(f1,...,fk)) = w(phi f1,...,phi fk)",
        wit,
    ))
}

/// `(-1)^k` as a scalar.
fn sign<S: Scalar>(k: usize) -> S {
    if k % 2 == 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// The tuple with positions `skip` removed.
fn omit(t: &[usize], skip: &[usize]) -> Vec<usize> {
    t.iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .map(|(_, &x)| x)
        .collect()
}

/// The coboundary of a level-`(n-1)` cochain, a level-`n` cochain on
/// `(2n+1)`-tuples `(f1, ..., f_{2n+1})`:
///
/// ```text
/// (-1)^(n+1) rho(f1+..+f_{2n-2}, f_{2n-1}+f_{2n+1}) rho(f_{2n-1}+f_{2n}, f_{2n+1})
///     mu(phi^(n-1) f_{2n+1}, phi^(n-1) f_{2n-1}) w(f1, .., f_{2n-2}, f_{2n})
/// + (-1)^(n+1) rho(f1+..+f_{2n-2}, f_{2n}+f_{2n+1}) rho(f_{2n-1}, f_{2n}+f_{2n+1})
///     mu(phi^(n-1) f_{2n}, phi^(n-1) f_{2n+1}) w(f1, .., f_{2n-1})
/// + sum_k (-1)^(k+1) rho(f1+..+f_{2k-2}, f_{2k-1}+f_{2k})
///     mu(phi^(n-1) f_{2k-1}, phi^(n-1) f_{2k}) w(.., ^f_{2k-1}, ^f_{2k}, ..)
/// + sum_k sum_{j>2k} (-1)^k rho(f1+..+f_{2k}, f_{2k+1}+..+f_{j-1})
///     w(phi f1, .., ^, ^, .., [f_{2k-1}, f_{2k}, f_j], .., phi f_{2n+1})
/// ```
///
/// The output keeps the degree of the input.
pub fn coboundary<S: Scalar>(a: &Algebra3<S>, r: &Representation<S>, w: &Cochain<S>) -> Result<Cochain<S>> {
    check_shape(a, r, w)?;
    let n = w.level() + 1;
    let arity = 2 * n + 1;
    let phi_pow = a.phi().pow(n as u32 - 1);
    let pcols: Vec<Vec<S>> = (0..a.dim()).map(|j| phi_pow.column(j)).collect();
    let mu_tw = |x: usize, y: usize| -> Matrix<S> {
        if n == 1 {
            r.mu(x, y).clone()
        } else {
            r.mu_vec(&pcols[x], &pcols[y])
        }
    };
    let value = |t: &[usize]| -> Vec<S> {
        let mut out = vec![S::zero(); r.dim()];
        let head = &t[..2 * n - 2];
        let (a1, a2, a3) = (t[2 * n - 2], t[2 * n - 1], t[2 * n]);

        let c = sign::<S>(n + 1) * a.rho_sum(head, &[a1, a3]) * a.rho_sum(&[a1, a2], &[a3]);
        let mut args = head.to_vec();
        args.push(a2);
        add_scaled(&mut out, &c, &mu_tw(a3, a1).mul_vec(&w.get(&args)));

        let c = sign::<S>(n + 1) * a.rho_sum(head, &[a2, a3]) * a.rho_sum(&[a1], &[a2, a3]);
        add_scaled(&mut out, &c, &mu_tw(a2, a3).mul_vec(&w.get(&t[..2 * n - 1])));

        for k in 1..=n {
            let (p, q) = (2 * k - 2, 2 * k - 1);
            let c = sign::<S>(k + 1) * a.rho_sum(&t[..p], &[t[p], t[q]]);
            let rest = omit(t, &[p, q]);
            add_scaled(&mut out, &c, &mu_tw(t[p], t[q]).mul_vec(&w.get(&rest)));
        }

        for k in 1..=n {
            let (p, q) = (2 * k - 2, 2 * k - 1);
            for j in 2 * k..arity {
                let c = sign::<S>(k) * a.rho_sum(&t[..2 * k], &t[2 * k..j]);
                if c.is_zero() {
                    continue;
                }
                let inner = a.bracket_basis(t[p], t[q], t[j]);
                if is_zero_vec(&inner) {
                    continue;
                }
                let args: Vec<&[S]> = (0..arity)
                    .filter(|&i| i != p && i != q)
                    .map(|i| if i == j { inner.as_slice() } else { a.phi_col(t[i]) })
                    .collect();
                add_scaled(&mut out, &c, &w.eval(&args));
            }
        }
        out
    };
    Ok(Cochain::from_fn(n, w.degree().clone(), a.dim(), r.dim(), value))
}

fn cocycle_report<S: Scalar>(d: &Cochain<S>, check: &str, identity: &str) -> Report {
    let wit = d.support().into_iter().next().map(|t| {
        let v = d.get(&t);
        let zero = vec![S::zero(); v.len()];
        Witness::new(t).sides(&v, &zero)
    });
    Report::from_witness(check, identity, wit)
}

fn require_level<S: Scalar>(w: &Cochain<S>, level: usize) -> Result<()> {
    if w.level() != level {
        return Err(Error::Precondition(format!(
            "expected a level-{level} cochain, got level {}",
            w.level()
        )));
    }
    Ok(())
}

/// `d0 nu = 0`.
pub fn is_0_cocycle<S: Scalar>(a: &Algebra3<S>, r: &Representation<S>, nu: &Cochain<S>) -> Result<Report> {
    require_level(nu, 0)?;
    let d = coboundary(a, r, nu)?;
    Ok(cocycle_report(&d, "0-cocycle", "d0 nu = 0"))
}

/// `d1 w = 0`.
pub fn is_1_cocycle<S: Scalar>(a: &Algebra3<S>, r: &Representation<S>, w: &Cochain<S>) -> Result<Report> {
    require_level(w, 1)?;
    let d = coboundary(a, r, w)?;
    Ok(cocycle_report(&d, "1-cocycle", "d1 w = 0"))
}

/// Spanning cochains of the homogeneous skew cochains of a level and
/// degree: one per (canonical tuple, output coordinate) whose degrees
/// match, with the orbit of the tuple filled by the skew rule.
pub fn skew_cochain_basis<S: Scalar>(
    a: &Algebra3<S>,
    r: &Representation<S>,
    level: usize,
    degree: &Degree,
) -> Vec<Cochain<S>> {
    let arity = 2 * level + 1;
    let n = a.dim();
    let g = a.group();
    let mut out = Vec::new();
    for idx in 0..n.pow(arity as u32) {
        let t = decode_tuple(idx, n, arity);
        if !t.windows(2).all(|w| w[0] <= w[1]) {
            continue;
        }
        let orbit = skew_orbit(&t, |x, y| -a.rho_ij(y, x).clone());
        if orbit.forced_zero {
            continue;
        }
        let want = g.add(&a.degree_sum(&t), degree);
        for l in (0..r.dim()).filter(|&l| r.degrees()[l] == want) {
            let mut c = Cochain::zero(level, degree.clone(), n, r.dim());
            for (u, coef) in &orbit.members {
                c.values[encode_tuple(u, n)] = vec![(l, coef.clone())];
            }
            out.push(c);
        }
    }
    out
}

fn flatten<S: Scalar>(c: &Cochain<S>) -> Vec<S> {
    let mut v = vec![S::zero(); c.values.len() * c.dim_v];
    for (idx, entry) in c.values.iter().enumerate() {
        for (l, x) in entry {
            v[idx * c.dim_v + l] = x.clone();
        }
    }
    v
}

/// Basis of the level-`n` (`n` in {0, 1}) Hom-cocycles of the given degree:
/// the kernel of `d` together with the Hom condition, over the
/// homogeneous skew cochains.
pub fn cocycle_space<S: Scalar>(
    a: &Algebra3<S>,
    r: &Representation<S>,
    level: usize,
    degree: &Degree,
) -> Result<Vec<Cochain<S>>> {
    if level > 1 {
        return Err(Error::Precondition(format!(
            "cocycle spaces are computed for levels 0 and 1, not {level}"
        )));
    }
    if r.algebra_dim() != a.dim() {
        return Err(Error::Dimension {
            what: "representation algebra".into(),
            expected: a.dim(),
            got: r.algebra_dim(),
        });
    }
    let basis = skew_cochain_basis(a, r, level, degree);
    let columns: Vec<Vec<S>> = basis
        .par_iter()
        .map(|c| {
            let mut col = flatten(&coboundary(a, r, c).expect("shapes match"));
            col.extend(flatten(&hom_defect(a, r, c)));
            col
        })
        .collect();
    Ok(combine_kernel(a, r, level, degree, &basis, &columns))
}

/// Basis of the homogeneous skew Hom-cochains of a level and degree.
pub fn hom_cochain_basis<S: Scalar>(
    a: &Algebra3<S>,
    r: &Representation<S>,
    level: usize,
    degree: &Degree,
) -> Vec<Cochain<S>> {
    let basis = skew_cochain_basis(a, r, level, degree);
    let columns: Vec<Vec<S>> = basis.par_iter().map(|c| flatten(&hom_defect(a, r, c))).collect();
    combine_kernel(a, r, level, degree, &basis, &columns)
}

/// `beta o w - w o phi`.
fn hom_defect<S: Scalar>(a: &Algebra3<S>, r: &Representation<S>, c: &Cochain<S>) -> Cochain<S> {
    Cochain::from_fn(c.level, c.degree.clone(), a.dim(), r.dim(), |t| {
        let mut v = r.beta().mul_vec(&c.get(t));
        let args: Vec<&[S]> = t.iter().map(|&i| a.phi_col(i)).collect();
        add_scaled(&mut v, &-S::one(), &c.eval(&args));
        v
    })
}

fn combine_kernel<S: Scalar>(
    a: &Algebra3<S>,
    r: &Representation<S>,
    level: usize,
    degree: &Degree,
    basis: &[Cochain<S>],
    columns: &[Vec<S>],
) -> Vec<Cochain<S>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let m = drop_zero_rows(&Matrix::from_columns(columns[0].len(), columns));
    kernel_basis(&m)
        .into_iter()
        .map(|coef| {
            let mut acc = Cochain::zero(level, degree.clone(), a.dim(), r.dim());
            for (c, b) in coef.iter().zip(basis) {
                if !c.is_zero() {
                    acc = acc.axpy(c, b);
                }
            }
            acc
        })
        .collect()
}

fn drop_zero_rows<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    let rows: Vec<Vec<S>> = (0..m.rows())
        .map(|r| m.row(r))
        .filter(|row| !is_zero_vec(row))
        .map(<[S]>::to_vec)
        .collect();
    if rows.is_empty() {
        Matrix::zeros(0, m.cols())
    } else {
        Matrix::from_rows(rows).expect("rows have equal length")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::representation::adjoint_rep;
    use crate::scalar::int;
    use num_rational::BigRational as Q;

    #[test]
    fn d0_of_identity_on_a4() {
        let a = corpus::a4::<Q>();
        let ad = adjoint_rep(&a);
        let id = Cochain::from_fn(0, a.group().zero(), 4, 4, |t| crate::linalg::unit(4, t[0]));
        let d = coboundary(&a, &ad, &id).unwrap();
        assert_eq!(d.get(&[0, 1, 2]), vec![int(0), int(0), int(0), int(2)]);
        assert!(!is_0_cocycle(&a, &ad, &id).unwrap().passed());
    }

    #[test]
    fn zero_cochain_is_cocycle() {
        let a = corpus::a4::<Q>();
        let ad = adjoint_rep(&a);
        let z0 = Cochain::zero(0, a.group().zero(), 4, 4);
        let z1 = Cochain::zero(1, a.group().zero(), 4, 4);
        assert!(is_0_cocycle(&a, &ad, &z0).unwrap().passed());
        assert!(is_1_cocycle(&a, &ad, &z1).unwrap().passed());
        assert!(is_1_cocycle(&a, &ad, &z0).is_err());
    }

    #[test]
    fn skew_entries_expand() {
        let a = corpus::a4::<Q>();
        let w = Cochain::from_skew_entries(
            &a,
            1,
            a.group().zero(),
            4,
            &[CochainEntry {
                on: vec![0, 1, 2],
                out: vec![(0, int(1))],
            }],
        )
        .unwrap();
        assert_eq!(w.get(&[2, 1, 0]), vec![int(-1), int(0), int(0), int(0)]);
        assert_eq!(w.canonical_entries().len(), 1);
    }

    #[test]
    fn omit_positions() {
        assert_eq!(omit(&[5, 6, 7, 8, 9], &[0, 1]), vec![7, 8, 9]);
        assert_eq!(omit(&[5, 6, 7, 8, 9], &[2, 3]), vec![5, 6, 9]);
    }
}
