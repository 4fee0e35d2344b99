use super::{Algebra3, TriTensor};
use crate::error::{Error, Result};
use crate::grading::validate_bicharacter;
use crate::linalg::{add_scaled, Matrix};
use crate::report::{first_witness, Report, Witness};
use crate::scalar::Scalar;

pub(crate) const GRADING: &str = "|[f1,f2,f3]| = |f1| + |f2| + |f3|";
pub(crate) const SKEW: &str =
    "[.., x, y, ..] = -rho(y, x) [.., y, x, ..] for adjacent positions";
pub(crate) const FUNDAMENTAL: &str = "[phi f1, phi f2, [g1,g2,g3]] = [[f1,f2,g1], phi g2, phi g3] \
     + rho(f1+f2, g1) [phi g1, [f1,f2,g2], phi g3] \
     + rho(f1+f2, g1+g2) [phi g1, phi g2, [f1,f2,g3]]";
pub(crate) const MULTIPLICATIVE: &str = "phi [f,g,h] = [phi f, phi g, phi h]";
pub(crate) const MORPHISM: &str = "alpha [f,g,h]_A = [alpha f, alpha g, alpha h]_B and alpha phi = psi alpha";

/// Output degrees match the sum of input degrees. Witness `(i, j, k, l)`.
pub fn check_grading<S: Scalar>(a: &Algebra3<S>) -> Report {
    let w = first_witness(a.dim(), 3, |t| {
        let want = a.degree_sum(t);
        a.bracket()
            .get(t[0], t[1], t[2])
            .iter()
            .find(|(l, _)| *a.degree(*l) != want)
            .map(|(l, _)| {
                let mut tuple = t.to_vec();
                tuple.push(*l);
                Witness::new(tuple).detail(format!(
                    "output e{l} has degree {}, expected {want}",
                    a.degree(*l)
                ))
            })
    });
    Report::from_witness("grading", GRADING, w)
}

/// Both adjacent transpositions on every basis triple.
pub fn check_skew_symmetry<S: Scalar>(a: &Algebra3<S>) -> Report {
    let t = a.bracket();
    let w = first_witness(a.dim(), 3, |x| {
        let (i, j, k) = (x[0], x[1], x[2]);
        let base = t.get_dense(i, j, k);
        let swaps = [
            ((j, i, k), a.rho_ij(j, i), "positions 1,2"),
            ((i, k, j), a.rho_ij(k, j), "positions 2,3"),
        ];
        swaps.into_iter().find_map(|((p, q, r), rho, which)| {
            let swapped = t.get_dense(p, q, r);
            let expected: Vec<S> = base.iter().map(|c| -rho.clone() * c.clone()).collect();
            (swapped != expected).then(|| {
                Witness::new(x.to_vec())
                    .sides(&swapped, &expected)
                    .detail(format!("transposition of {which}"))
            })
        })
    });
    Report::from_witness("skew-symmetry", SKEW, w)
}

/// Both sides of the fundamental identity on basis tuple
/// `(f1, f2, g1, g2, g3)` with `outer` as the outer bracket and `inner`
/// as the inner one. With `outer == inner` this is the axiom itself.
pub(crate) fn fi_sides<S: Scalar>(
    a: &Algebra3<S>,
    outer: &TriTensor<S>,
    inner: &TriTensor<S>,
    t: &[usize],
) -> (Vec<S>, Vec<S>) {
    let (f1, f2, g1, g2, g3) = (t[0], t[1], t[2], t[3], t[4]);
    let p = |i: usize| a.phi_col(i);
    let lhs = outer.eval(p(f1), p(f2), &inner.get_dense(g1, g2, g3));
    let mut rhs = outer.eval(&inner.get_dense(f1, f2, g1), p(g2), p(g3));
    let c2 = a.rho_sum(&[f1, f2], &[g1]);
    let t2 = outer.eval(p(g1), &inner.get_dense(f1, f2, g2), p(g3));
    add_scaled(&mut rhs, &c2, &t2);
    let c3 = a.rho_sum(&[f1, f2], &[g1, g2]);
    let t3 = outer.eval(p(g1), p(g2), &inner.get_dense(f1, f2, g3));
    add_scaled(&mut rhs, &c3, &t3);
    (lhs, rhs)
}

/// The twisted fundamental identity on all basis 5-tuples.
pub fn check_fundamental_identity<S: Scalar>(a: &Algebra3<S>) -> Report {
    let b = a.bracket();
    let w = first_witness(a.dim(), 5, |t| {
        let (lhs, rhs) = fi_sides(a, b, b, t);
        (lhs != rhs).then(|| Witness::new(t.to_vec()).sides(&lhs, &rhs))
    });
    Report::from_witness("fundamental-identity", FUNDAMENTAL, w)
}

/// `phi` is a bracket morphism on all basis triples.
pub fn check_multiplicative<S: Scalar>(a: &Algebra3<S>) -> Report {
    let w = first_witness(a.dim(), 3, |t| {
        let lhs = a.apply_phi(&a.bracket_basis(t[0], t[1], t[2]));
        let rhs = a.br(a.phi_col(t[0]), a.phi_col(t[1]), a.phi_col(t[2]));
        (lhs != rhs).then(|| Witness::new(t.to_vec()).sides(&lhs, &rhs))
    });
    Report::from_witness("multiplicative", MULTIPLICATIVE, w)
}

/// Bicharacter laws, grading, skew symmetry, fundamental identity and
/// multiplicativity, in that order.
pub fn check_structure<S: Scalar>(a: &Algebra3<S>) -> Vec<Report> {
    let bichar = validate_bicharacter(a.group(), a.rho().matrix()).unwrap_or_else(|e| {
        Report::fail("bicharacter", "two-cycle laws", Witness::new(vec![]).detail(e.to_string()))
    });
    vec![
        bichar,
        check_grading(a),
        check_skew_symmetry(a),
        check_fundamental_identity(a),
        check_multiplicative(a),
    ]
}

/// `alpha` (columns = images of A's basis in B) is a morphism from `a` to
/// `b`. Condition 1 is the bracket, condition 2 the twist.
pub fn check_morphism<S: Scalar>(alpha: &Matrix<S>, a: &Algebra3<S>, b: &Algebra3<S>) -> Result<Report> {
    if alpha.rows() != b.dim() || alpha.cols() != a.dim() {
        return Err(Error::Dimension {
            what: "morphism matrix".into(),
            expected: b.dim() * a.dim(),
            got: alpha.rows() * alpha.cols(),
        });
    }
    let cols: Vec<Vec<S>> = (0..a.dim()).map(|j| alpha.column(j)).collect();
    let w = first_witness(a.dim(), 3, |t| {
        let lhs = alpha.mul_vec(&a.bracket_basis(t[0], t[1], t[2]));
        let rhs = b.br(&cols[t[0]], &cols[t[1]], &cols[t[2]]);
        (lhs != rhs).then(|| Witness::new(t.to_vec()).condition(1).sides(&lhs, &rhs))
    })
    .or_else(|| {
        (0..a.dim()).find_map(|j| {
            let lhs = alpha.mul_vec(a.phi_col(j));
            let rhs = b.apply_phi(&cols[j]);
            (lhs != rhs).then(|| Witness::new(vec![j]).condition(2).sides(&lhs, &rhs))
        })
    });
    Ok(Report::from_witness("morphism", MORPHISM, w))
}
