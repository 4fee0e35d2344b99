//! T*-extensions, abelian extensions with their sections, the induced
//! representation and 1-cocycle, and equivalence of extensions.

use rayon::prelude::*;

use crate::algebra::{check_morphism, Algebra3, GradedBasis, TriTensor};
use crate::cohomology::Cochain;
use crate::error::{Error, Result};
use crate::linalg::{add_scaled, is_zero_vec, solve_affine, unit, LinearSystem, Matrix};
use crate::report::{first_witness, Report, Witness};
use crate::representation::{coadjoint_rep, Representation};
use crate::scalar::Scalar;

/// The T*-extension of `a` by a level-1 cochain `w` with values in `A*`
/// (coordinates on the dual basis). Basis: `A` first, then `A*` with
/// names `name*` and degrees `-d`. Bracket
///
/// ```text
/// [f1+a1, f2+a2, f3+a3] = [f1,f2,f3] + w(f1,f2,f3) + m(f1,f2) a3
///     + rho(f1+f2, f3) m(f3,f1) a2 + rho(f1, f2+f3) m(f2,f3) a1
/// ```
///
/// with `m` the coadjoint action, and twist `phi (+) phi^T`.
pub fn tstar_extension<S: Scalar>(a: &Algebra3<S>, w: &Cochain<S>) -> Result<Algebra3<S>> {
    let n = a.dim();
    if w.level() != 1 || w.dim_a() != n || w.dim_v() != n {
        return Err(Error::Dimension {
            what: "T* cochain".into(),
            expected: n,
            got: w.dim_v(),
        });
    }
    if !w.degree().is_zero() {
        return Err(Error::Precondition(format!(
            "the T* cochain must have degree zero, got {}",
            w.degree()
        )));
    }
    let dual = coadjoint_rep(a);
    if let Some(wit) = dual.validity.witness() {
        return Err(Error::Precondition(format!(
            "coadjoint representation is not valid: condition {} fails at {:?}",
            wit.condition.unwrap_or(0),
            wit.tuple
        )));
    }
    let mu = &dual.rep;
    let g = a.group();
    let mut names = a.basis().names().to_vec();
    names.extend(mu.space().names().iter().cloned());
    let mut degrees = a.degrees().to_vec();
    degrees.extend(mu.degrees().iter().cloned());
    let basis = GradedBasis::new(g, names, degrees.clone())?;
    let rho = |x: &[usize], y: &[usize]| {
        let dx = g.sum(x.iter().map(|&i| &degrees[i]));
        let dy = g.sum(y.iter().map(|&i| &degrees[i]));
        a.rho().eval(&dx, &dy)
    };
    let bracket = TriTensor::from_fn(2 * n, |x, y, z| {
        let mut out = vec![S::zero(); 2 * n];
        match (x >= n, y >= n, z >= n) {
            (false, false, false) => {
                out[..n].clone_from_slice(&a.bracket_basis(x, y, z));
                out[n..].clone_from_slice(&w.get(&[x, y, z]));
            }
            (false, false, true) => {
                out[n..].clone_from_slice(&mu.mu(x, y).column(z - n));
            }
            (false, true, false) => {
                let v = mu.mu(z, x).column(y - n);
                add_scaled(&mut out[n..], &rho(&[x, y], &[z]), &v);
            }
            (true, false, false) => {
                let v = mu.mu(y, z).column(x - n);
                add_scaled(&mut out[n..], &rho(&[x], &[y, z]), &v);
            }
            // two or more dual arguments
            _ => {}
        }
        out
    });
    let mut phi = Matrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            phi[(r, c)] = a.phi()[(r, c)].clone();
            phi[(n + r, n + c)] = a.phi()[(c, r)].clone();
        }
    }
    Algebra3::new(g.clone(), a.rho().clone(), basis, bracket, phi)
}

/// A candidate short exact sequence `0 -> V -i-> B -p-> A -> 0`.
/// `i` is `dim B x dim V`, `p` is `dim A x dim B`.
#[derive(Debug, Clone)]
pub struct ExtensionData<S: Scalar> {
    pub b: Algebra3<S>,
    pub a: Algebra3<S>,
    pub v: GradedBasis,
    pub phi_v: Matrix<S>,
    pub i: Matrix<S>,
    pub p: Matrix<S>,
}

impl<S: Scalar> ExtensionData<S> {
    fn check_dims(&self) -> Result<()> {
        let (nb, na, nv) = (self.b.dim(), self.a.dim(), self.v.len());
        let shapes = [
            ("inclusion", &self.i, nb, nv),
            ("projection", &self.p, na, nb),
            ("twist on V", &self.phi_v, nv, nv),
        ];
        for (what, m, r, c) in shapes {
            if m.rows() != r || m.cols() != c {
                return Err(Error::Dimension {
                    what: what.into(),
                    expected: r * c,
                    got: m.rows() * m.cols(),
                });
            }
        }
        Ok(())
    }

    /// Coordinates in `V` of a vector of `B` lying in the image of `i`.
    pub fn to_v(&self, y: &[S]) -> Result<Vec<S>> {
        solve_affine(&self.i, y)
            .map(|s| s.particular)
            .ok_or_else(|| Error::InconsistentExtension("vector is not in the image of V".into()))
    }
}

/// The T*-extension seen as an extension of `a` by `A*`.
pub fn tstar_as_extension<S: Scalar>(a: &Algebra3<S>, b: &Algebra3<S>) -> Result<ExtensionData<S>> {
    let n = a.dim();
    if b.dim() != 2 * n {
        return Err(Error::Dimension {
            what: "T* extension".into(),
            expected: 2 * n,
            got: b.dim(),
        });
    }
    let names = b.basis().names()[n..].to_vec();
    let v = GradedBasis::new(a.group(), names, b.degrees()[n..].to_vec())?;
    let mut i = Matrix::zeros(2 * n, n);
    let mut p = Matrix::zeros(n, 2 * n);
    for k in 0..n {
        i[(n + k, k)] = S::one();
        p[(k, k)] = S::one();
    }
    Ok(ExtensionData {
        b: b.clone(),
        a: a.clone(),
        v,
        phi_v: a.phi().transpose(),
        i,
        p,
    })
}

const EXTENSION: &str = "(1) Ker(i) = 0; (2) Im(p) = A; (3) Im(i) = Ker(p); \
     (4) psi i = i phi_V; (5) p is a morphism of Hom algebras";

/// Exactness by rank computations, twist compatibility on `V`, and the
/// morphism property of `p`.
pub fn check_extension<S: Scalar>(e: &ExtensionData<S>) -> Result<Report> {
    e.check_dims()?;
    let (nb, na, nv) = (e.b.dim(), e.a.dim(), e.v.len());
    let fail = |c: usize, detail: String| Some(Witness::new(vec![]).condition(c).detail(detail));
    let ri = e.i.rank();
    let rp = e.p.rank();
    let wit = if ri != nv {
        fail(1, format!("rank of i is {ri}, dim V is {nv}"))
    } else if rp != na {
        fail(2, format!("rank of p is {rp}, dim A is {na}"))
    } else if !e.p.mul(&e.i).is_zero() || nv + na != nb {
        fail(3, format!("p i != 0 or dim V + dim A = {} != dim B = {nb}", nv + na))
    } else {
        let lhs = e.b.phi().mul(&e.i);
        let rhs = e.i.mul(&e.phi_v);
        let twist = (0..nv).find_map(|j| {
            let (l, r) = (lhs.column(j), rhs.column(j));
            (l != r).then(|| Witness::new(vec![j]).condition(4).sides(&l, &r))
        });
        match twist {
            Some(w) => Some(w),
            None => {
                let m = check_morphism(&e.p, &e.b, &e.a)?;
                m.witness().cloned().map(|w| {
                    let inner = w.condition.unwrap_or(1);
                    w.condition(5).detail(format!("p fails morphism condition {inner}"))
                })
            }
        }
    };
    Ok(Report::from_witness("extension", EXTENSION, wit))
}

/// `[x, i(u), i(v)]_B = 0` for all basis `x` of `B` and `u, v` of `V`.
pub fn is_abelian<S: Scalar>(e: &ExtensionData<S>) -> Result<Report> {
    e.check_dims()?;
    let nb = e.b.dim();
    let nv = e.v.len();
    let cols: Vec<Vec<S>> = (0..nv).map(|j| e.i.column(j)).collect();
    let wit = (0..nb).find_map(|x| {
        let ex = unit(nb, x);
        first_witness(nv, 2, |t| {
            let out = e.b.br(&ex, &cols[t[0]], &cols[t[1]]);
            (!is_zero_vec(&out)).then(|| {
                Witness::new(vec![x, t[0], t[1]])
                    .sides(&out, &vec![S::zero(); nb])
                    .detail("tuple is (x in B, u in V, v in V)")
            })
        })
    });
    Ok(Report::from_witness("abelian", "[x, u, v]_B = 0 for u, v in V", wit))
}

/// A section `delta: A -> B`, `dim B x dim A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Section<S: Scalar> {
    pub delta: Matrix<S>,
}

/// All even sections: `particular + span(directions)`.
#[derive(Debug, Clone)]
pub struct SectionFamily<S: Scalar> {
    pub particular: Section<S>,
    pub directions: Vec<Matrix<S>>,
}

/// Solves `p delta = id`, `delta phi = psi delta` over even maps.
pub fn find_sections<S: Scalar>(e: &ExtensionData<S>) -> Result<SectionFamily<S>> {
    e.check_dims()?;
    let (nb, na) = (e.b.dim(), e.a.dim());
    let pos: Vec<(usize, usize)> = (0..nb)
        .flat_map(|r| (0..na).map(move |c| (r, c)))
        .filter(|&(r, c)| e.b.degree(r) == e.a.degree(c))
        .collect();
    let build = |coef: &[S]| {
        let mut m = Matrix::zeros(nb, na);
        for (&(r, c), x) in pos.iter().zip(coef) {
            m[(r, c)] = x.clone();
        }
        m
    };
    let columns: Vec<Vec<S>> = pos
        .par_iter()
        .map(|&(r, c)| {
            let mut d = Matrix::zeros(nb, na);
            d[(r, c)] = S::one();
            let mut col = e.p.mul(&d).to_rows().concat();
            col.extend(d.mul(e.a.phi()).sub(&e.b.phi().mul(&d)).to_rows().concat());
            col
        })
        .collect();
    let mut rhs = Matrix::<S>::identity(na).to_rows().concat();
    rhs.extend(vec![S::zero(); nb * na]);
    let mut sys = LinearSystem::new(pos.len());
    sys.push_columns(&columns, Some(&rhs));
    let sol = sys.solve().ok_or(Error::NoSection)?;
    Ok(SectionFamily {
        particular: Section {
            delta: build(&sol.particular),
        },
        directions: sol.kernel.iter().map(|k| build(k)).collect(),
    })
}

/// The deterministic particular section.
pub fn find_section<S: Scalar>(e: &ExtensionData<S>) -> Result<Section<S>> {
    Ok(find_sections(e)?.particular)
}

/// `p delta = id` (condition 1) and `delta phi = psi delta` (condition 2).
pub fn check_section<S: Scalar>(e: &ExtensionData<S>, s: &Section<S>) -> Result<Report> {
    e.check_dims()?;
    let na = e.a.dim();
    if s.delta.rows() != e.b.dim() || s.delta.cols() != na {
        return Err(Error::Dimension {
            what: "section".into(),
            expected: e.b.dim() * na,
            got: s.delta.rows() * s.delta.cols(),
        });
    }
    let pd = e.p.mul(&s.delta);
    let l = s.delta.mul(e.a.phi());
    let r = e.b.phi().mul(&s.delta);
    let wit = (0..na)
        .find_map(|j| {
            let (x, y) = (pd.column(j), unit(na, j));
            (x != y).then(|| Witness::new(vec![j]).condition(1).sides(&x, &y))
        })
        .or_else(|| {
            (0..na).find_map(|j| {
                let (x, y) = (l.column(j), r.column(j));
                (x != y).then(|| Witness::new(vec![j]).condition(2).sides(&x, &y))
            })
        });
    Ok(Report::from_witness(
        "section",
        "(1) p delta = id; (2) delta phi = psi delta",
        wit,
    ))
}

fn require_abelian_section<S: Scalar>(e: &ExtensionData<S>, s: &Section<S>) -> Result<()> {
    for r in [is_abelian(e)?, check_section(e, s)?] {
        if let Some(w) = r.witness() {
            return Err(Error::Precondition(format!("{} check fails at {:?}", r.check, w.tuple)));
        }
    }
    Ok(())
}

/// `mu(f1, f2) u = [delta f1, delta f2, i u]_B`, read back in `V`, with
/// `beta = phi_V`.
pub fn induced_rep<S: Scalar>(e: &ExtensionData<S>, s: &Section<S>) -> Result<Representation<S>> {
    require_abelian_section(e, s)?;
    let (na, nv) = (e.a.dim(), e.v.len());
    let dcols: Vec<Vec<S>> = (0..na).map(|j| s.delta.column(j)).collect();
    let icols: Vec<Vec<S>> = (0..nv).map(|j| e.i.column(j)).collect();
    let mut table = Vec::new();
    for f1 in 0..na {
        let mut row = Vec::new();
        for f2 in 0..na {
            let cols = icols
                .iter()
                .map(|u| e.to_v(&e.b.br(&dcols[f1], &dcols[f2], u)))
                .collect::<Result<Vec<_>>>()?;
            row.push(Matrix::from_columns(nv, &cols));
        }
        table.push(row);
    }
    Representation::from_fn(&e.a, e.v.clone(), e.phi_v.clone(), |x, y| table[x][y].clone())
}

/// `w(f1, f2, f3) = [delta f1, delta f2, delta f3]_B - delta [f1, f2, f3]_A`,
/// read back in `V`; a degree-zero level-1 cochain.
pub fn induced_cocycle<S: Scalar>(e: &ExtensionData<S>, s: &Section<S>) -> Result<Cochain<S>> {
    require_abelian_section(e, s)?;
    let (na, nv) = (e.a.dim(), e.v.len());
    let dcols: Vec<Vec<S>> = (0..na).map(|j| s.delta.column(j)).collect();
    let values: Vec<Vec<S>> = (0..na.pow(3))
        .into_par_iter()
        .map(|idx| {
            let t = crate::report::decode_tuple(idx, na, 3);
            let mut y = e.b.br(&dcols[t[0]], &dcols[t[1]], &dcols[t[2]]);
            let inner = s.delta.mul_vec(&e.a.bracket_basis(t[0], t[1], t[2]));
            add_scaled(&mut y, &-S::one(), &inner);
            e.to_v(&y)
        })
        .collect::<Result<_>>()?;
    Ok(Cochain::from_fn(1, e.a.group().zero(), na, nv, |t| {
        values[crate::report::encode_tuple(t, na)].clone()
    }))
}

const ABELIAN_COCYCLE: &str = "w(phi f1, phi f2, [g1,g2,g3]) + mu(phi f1, phi f2) w(g1,g2,g3) \
     = w([f1,f2,g1], phi g2, phi g3) + rho(f1+f2, g1) w(phi g1, [f1,f2,g2], phi g3) \
     + rho(f1+f2, g1+g2) w(phi g1, phi g2, [f1,f2,g3]) \
     + rho(f1+f2, g1) rho(f1+f2+g2, g3) rho(g1, g3) mu(phi g3, phi g1) w(f1,f2,g2) \
     + rho(f1+f2, g1+g2) mu(phi g1, phi g2) w(f1,f2,g3) \
     + rho(f1+f2+g1, g2+g3) mu(phi g2, phi g3) w(f1,f2,g1)";

/// The 1-cocycle identity in the form obtained from an abelian extension,
/// on all basis 5-tuples `(f1, f2, g1, g2, g3)`.
pub fn check_extension_cocycle<S: Scalar>(
    a: &Algebra3<S>,
    r: &Representation<S>,
    w: &Cochain<S>,
) -> Result<Report> {
    if w.level() != 1 || w.dim_a() != a.dim() || w.dim_v() != r.dim() || r.algebra_dim() != a.dim() {
        return Err(Error::Dimension {
            what: "cocycle".into(),
            expected: a.dim() * r.dim(),
            got: w.dim_a() * w.dim_v(),
        });
    }
    let g = a.group();
    let rho = |x: &[usize], y: &[usize]| {
        let sum = |v: &[usize]| g.sum(v.iter().map(|&i| a.degree(i)));
        a.rho().eval(&sum(x), &sum(y))
    };
    let p = |i: usize| a.phi_col(i);
    let wit = first_witness(a.dim(), 5, |t| {
        let (f1, f2, g1, g2, g3) = (t[0], t[1], t[2], t[3], t[4]);
        let br = |x, y, z| a.bracket_basis(x, y, z);
        let mut lhs = w.eval(&[p(f1), p(f2), &br(g1, g2, g3)]);
        add_scaled(&mut lhs, &S::one(), &r.mu_vec(p(f1), p(f2)).mul_vec(&w.get(&[g1, g2, g3])));
        let mut rhs = w.eval(&[&br(f1, f2, g1), p(g2), p(g3)]);
        add_scaled(&mut rhs, &rho(&[f1, f2], &[g1]), &w.eval(&[p(g1), &br(f1, f2, g2), p(g3)]));
        add_scaled(&mut rhs, &rho(&[f1, f2], &[g1, g2]), &w.eval(&[p(g1), p(g2), &br(f1, f2, g3)]));
        let c = rho(&[f1, f2], &[g1]) * rho(&[f1, f2, g2], &[g3]) * rho(&[g1], &[g3]);
        add_scaled(&mut rhs, &c, &r.mu_vec(p(g3), p(g1)).mul_vec(&w.get(&[f1, f2, g2])));
        add_scaled(
            &mut rhs,
            &rho(&[f1, f2], &[g1, g2]),
            &r.mu_vec(p(g1), p(g2)).mul_vec(&w.get(&[f1, f2, g3])),
        );
        add_scaled(
            &mut rhs,
            &rho(&[f1, f2, g1], &[g2, g3]),
            &r.mu_vec(p(g2), p(g3)).mul_vec(&w.get(&[f1, f2, g1])),
        );
        (lhs != rhs).then(|| Witness::new(t.to_vec()).sides(&lhs, &rhs))
    });
    Ok(Report::from_witness("extension-cocycle", ABELIAN_COCYCLE, wit))
}

const EQUIVALENCE: &str = "(1) F is a morphism B -> B'; (2) F i = j; (3) q F = p";

/// Whether `f: B1 -> B2` makes the two extensions equivalent.
pub fn check_equivalence<S: Scalar>(e1: &ExtensionData<S>, e2: &ExtensionData<S>, f: &Matrix<S>) -> Result<Report> {
    e1.check_dims()?;
    e2.check_dims()?;
    let m = check_morphism(f, &e1.b, &e2.b)?;
    let wit = if let Some(w) = m.witness() {
        let inner = w.condition.unwrap_or(1);
        Some(w.clone().condition(1).detail(format!("morphism condition {inner}")))
    } else {
        let compare = |c: usize, l: &Matrix<S>, r: &Matrix<S>| -> Result<Option<Witness>> {
            if l.rows() != r.rows() || l.cols() != r.cols() {
                return Err(Error::Dimension {
                    what: "extension maps".into(),
                    expected: r.rows() * r.cols(),
                    got: l.rows() * l.cols(),
                });
            }
            Ok((0..l.cols()).find_map(|j| {
                let (x, y) = (l.column(j), r.column(j));
                (x != y).then(|| Witness::new(vec![j]).condition(c).sides(&x, &y))
            }))
        };
        match compare(2, &f.mul(&e1.i), &e2.i)? {
            Some(w) => Some(w),
            None => compare(3, &e2.p.mul(f), &e1.p)?,
        }
    };
    Ok(Report::from_witness("equivalence", EQUIVALENCE, wit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_structure;
    use crate::corpus;
    use crate::scalar::int;
    use num_rational::BigRational as Q;

    #[test]
    fn tstar_zero_on_a4() {
        let a = corpus::a4::<Q>();
        let w = Cochain::zero(1, a.group().zero(), 4, 4);
        let b = tstar_extension(&a, &w).unwrap();
        assert_eq!(b.dim(), 8);
        for r in check_structure(&b) {
            assert!(r.passed(), "{r:?}");
        }
        // [e0, e1, e3*] = -e2*
        let v = b.bracket_basis(0, 1, 7);
        let mut want = vec![int(0); 8];
        want[6] = int(-1);
        assert_eq!(v, want);
        assert_eq!(b.basis().names()[7], "e3*");
    }

    #[test]
    fn tstar_requires_degree_zero() {
        let a = corpus::z2_zero_bracket::<Q>();
        let w = Cochain::zero(1, crate::grading::Degree(vec![1]), 3, 3);
        assert!(tstar_extension(&a, &w).is_err());
    }
}
