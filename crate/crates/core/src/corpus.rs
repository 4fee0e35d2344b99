//! Reference algebras used by tests, examples and the shipped corpus files.

use crate::algebra::{Algebra3, BracketEntry, GradedBasis, GradingPolicy, TriTensor};
use crate::error::Result;
use crate::grading::{Bicharacter, Degree, GradingGroup};
use crate::linalg::{add_scaled, Matrix};
use crate::scalar::{int, Scalar};

fn entry<S: Scalar>(on: [usize; 3], out: &[(usize, i64)]) -> BracketEntry<S> {
    BracketEntry {
        on,
        out: out.iter().map(|&(l, c)| (l, int(c))).collect(),
    }
}

/// The simple 4-dimensional 3-Lie algebra: trivial grading, `phi = id`,
/// `[e0,e1,e2] = e3, [e0,e1,e3] = -e2, [e0,e2,e3] = e1, [e1,e2,e3] = -e0`.
pub fn a4<S: Scalar>() -> Algebra3<S> {
    a4_with_entries(&[
        entry([0, 1, 2], &[(3, 1)]),
        entry([0, 1, 3], &[(2, -1)]),
        entry([0, 2, 3], &[(1, 1)]),
        entry([1, 2, 3], &[(0, -1)]),
    ])
}

/// A4 with `[e0,e1,e2] = e3 + e0`; the fundamental identity fails.
/// (Rescaling single entries would not do: those are A4 with another
/// diagonal metric.)
pub fn a4_perturbed<S: Scalar>() -> Algebra3<S> {
    a4_with_entries(&[
        entry([0, 1, 2], &[(3, 1), (0, 1)]),
        entry([0, 1, 3], &[(2, -1)]),
        entry([0, 2, 3], &[(1, 1)]),
        entry([1, 2, 3], &[(0, -1)]),
    ])
}

fn a4_with_entries<S: Scalar>(entries: &[BracketEntry<S>]) -> Algebra3<S> {
    let g = GradingGroup::trivial();
    Algebra3::from_entries(
        g.clone(),
        Bicharacter::trivial(&g),
        GradedBasis::trivial(&g, 4),
        entries,
        Matrix::identity(4),
        GradingPolicy::Enforce,
    )
    .expect("A4 data is consistent")
}

/// A4 brackets over `Z/2` with `e3` odd, so `[e0,e1,e2] = e3` breaks the
/// grading. Built with the deferred grading policy.
pub fn a4_bad_grading<S: Scalar>() -> Algebra3<S> {
    let g = GradingGroup::z2();
    let even = g.zero();
    let odd = Degree(vec![1]);
    let basis = GradedBasis::numbered(&g, "e", vec![even.clone(), even.clone(), even, odd])
        .expect("valid degrees");
    let a = a4::<S>();
    Algebra3::from_entries(
        g,
        Bicharacter::super_sign(),
        basis,
        &a.bracket().canonical_entries(),
        Matrix::identity(4),
        GradingPolicy::Defer,
    )
    .expect("shape is consistent")
}

/// Zero bracket on the given degrees with the given twist.
pub fn zero_bracket<S: Scalar>(
    group: GradingGroup,
    rho: Bicharacter<S>,
    degrees: Vec<Degree>,
    phi: Matrix<S>,
) -> Result<Algebra3<S>> {
    let n = degrees.len();
    let basis = GradedBasis::numbered(&group, "e", degrees)?;
    Algebra3::new(group, rho, basis, TriTensor::zero(n), phi)
}

/// Three-dimensional zero-bracket super algebra, degrees `(0, 1, 1)`,
/// `phi = diag(1, 2, -1)`.
pub fn z2_zero_bracket<S: Scalar>() -> Algebra3<S> {
    let g = GradingGroup::z2();
    let degrees = vec![g.zero(), Degree(vec![1]), Degree(vec![1])];
    let phi = Matrix::diagonal(&[int(1), int(2), int(-1)]);
    zero_bracket(g, Bicharacter::super_sign(), degrees, phi).expect("valid data")
}

/// The three-dimensional algebra `[x,y,z] = det(x,y,z) e0`, `phi = id`.
pub fn det3<S: Scalar>() -> Algebra3<S> {
    let g = GradingGroup::trivial();
    Algebra3::from_entries(
        g.clone(),
        Bicharacter::trivial(&g),
        GradedBasis::trivial(&g, 3),
        &[entry([0, 1, 2], &[(0, 1)])],
        Matrix::identity(3),
        GradingPolicy::Enforce,
    )
    .expect("consistent data")
}

/// Twists `a` by `phi`: new bracket `phi o [.,.,.]`, new twist `phi`.
/// When `phi` is an endomorphism of an untwisted algebra the result is a
/// multiplicative Hom algebra.
pub fn yau_twist<S: Scalar>(a: &Algebra3<S>, phi: Matrix<S>) -> Result<Algebra3<S>> {
    let n = a.dim();
    let bracket = TriTensor::from_fn(n, |i, j, k| phi.mul_vec(&a.bracket_basis(i, j, k)));
    a.with_bracket(bracket)?.with_phi(phi)
}

/// `det3` twisted by `diag(3, 1, 1)`: multiplicative, `e1` and `e2` fixed
/// by `phi`.
pub fn det3_twisted<S: Scalar>() -> Algebra3<S> {
    yau_twist(&det3(), Matrix::diagonal(&[int(3), int(1), int(1)])).expect("consistent data")
}

/// A4 plus a central basis vector `e4`.
pub fn a4_plus_center<S: Scalar>() -> Algebra3<S> {
    let g = GradingGroup::trivial();
    let a = a4::<S>();
    Algebra3::from_entries(
        g.clone(),
        Bicharacter::trivial(&g),
        GradedBasis::trivial(&g, 5),
        &a.bracket().canonical_entries(),
        Matrix::identity(5),
        GradingPolicy::Enforce,
    )
    .expect("consistent data")
}

/// A finite-dimensional associative algebra with unit `x_0` that is
/// rho-commutative: `x_b x_a = rho(d_b, d_a) x_a x_b`.
#[derive(Debug, Clone)]
pub struct ColorCommutative<S> {
    pub group: GradingGroup,
    pub rho: Bicharacter<S>,
    pub degrees: Vec<Degree>,
    /// `mul[a][b]` = coordinates of `x_a x_b`.
    pub mul: Vec<Vec<Vec<S>>>,
}

/// `span{1, x, y, xy}` over `Z^2` with `q = [[1, 2], [1/2, 1]]`,
/// `x^2 = y^2 = 0` and `yx = rho(y, x) xy = xy / 2`.
pub fn quantum_plane<S: Scalar>() -> ColorCommutative<S> {
    let g = GradingGroup::new(2, vec![]).expect("valid group");
    let half = S::one() / int(2);
    let rho = Bicharacter::new(&g, vec![vec![int(1), int(2)], vec![half.clone(), int(1)]])
        .expect("valid bicharacter");
    let degrees = vec![
        Degree(vec![0, 0]),
        Degree(vec![1, 0]),
        Degree(vec![0, 1]),
        Degree(vec![1, 1]),
    ];
    let e = |i: usize, c: S| {
        let mut v = vec![S::zero(); 4];
        v[i] = c;
        v
    };
    let zero = vec![S::zero(); 4];
    let mut mul = vec![vec![zero.clone(); 4]; 4];
    for (a, row) in mul.iter_mut().enumerate() {
        row[0] = e(a, S::one());
    }
    for b in 0..4 {
        mul[0][b] = e(b, S::one());
    }
    mul[1][2] = e(3, S::one());
    mul[2][1] = e(3, half);
    ColorCommutative {
        group: g,
        rho,
        degrees,
        mul,
    }
}

/// The Grassmann algebra on one odd generator: `span{1, xi}`, `xi^2 = 0`.
pub fn grassmann1<S: Scalar>() -> ColorCommutative<S> {
    let g = GradingGroup::z2();
    let one = vec![S::one(), S::zero()];
    let xi = vec![S::zero(), S::one()];
    let zero = vec![S::zero(), S::zero()];
    ColorCommutative {
        group: g.clone(),
        rho: Bicharacter::super_sign(),
        degrees: vec![g.zero(), Degree(vec![1])],
        mul: vec![vec![one, xi.clone()], vec![xi, zero]],
    }
}

/// `L (x) C` for an ungraded 3-ary algebra `L` and a rho-commutative `C`:
/// `[x (x) a, y (x) b, z (x) c] = [x,y,z] (x) abc`, twist `phi_L (x) id`.
/// Basis index `i * dim C + a` stands for `e_i (x) x_a`.
pub fn color_tensor<S: Scalar>(l: &Algebra3<S>, c: &ColorCommutative<S>) -> Result<Algebra3<S>> {
    let (nl, nc) = (l.dim(), c.degrees.len());
    let n = nl * nc;
    let idx = |i: usize, a: usize| i * nc + a;
    let mut degrees = Vec::with_capacity(n);
    for _ in 0..nl {
        degrees.extend(c.degrees.iter().cloned());
    }
    let mul3 = |a: usize, b: usize, d: usize| -> Vec<S> {
        let ab = &c.mul[a][b];
        let mut out = vec![S::zero(); nc];
        for (e, coef) in ab.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            add_scaled(&mut out, coef, &c.mul[e][d]);
        }
        out
    };
    let bracket = TriTensor::from_fn(n, |p, q, r| {
        let (i, a) = (p / nc, p % nc);
        let (j, b) = (q / nc, q % nc);
        let (k, d) = (r / nc, r % nc);
        let lv = l.bracket_basis(i, j, k);
        let cv = mul3(a, b, d);
        let mut out = vec![S::zero(); n];
        for (u, x) in lv.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (e, y) in cv.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[idx(u, e)] = x.clone() * y.clone();
            }
        }
        out
    });
    let mut phi = Matrix::zeros(n, n);
    for j in 0..nl {
        for i in 0..nl {
            for a in 0..nc {
                phi[(idx(i, a), idx(j, a))] = l.phi()[(i, j)].clone();
            }
        }
    }
    let names = (0..nl)
        .flat_map(|i| (0..nc).map(move |a| format!("e{i}x{a}")))
        .collect();
    let basis = GradedBasis::new(&c.group, names, degrees)?;
    Algebra3::new(c.group.clone(), c.rho.clone(), basis, bracket, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_structure;
    use num_rational::BigRational as Q;

    #[test]
    fn corpus_algebras_are_valid() {
        let algebras: Vec<(&str, Algebra3<Q>)> = vec![
            ("a4", a4()),
            ("z2-zero", z2_zero_bracket()),
            ("det3", det3()),
            ("det3-twisted", det3_twisted()),
            ("a4+center", a4_plus_center()),
            ("det3 x grassmann", color_tensor(&det3(), &grassmann1()).unwrap()),
        ];
        for (name, a) in &algebras {
            for r in check_structure(a) {
                assert!(r.passed(), "{name}: {r:?}");
            }
        }
    }

    #[test]
    fn a4_values() {
        let a = a4::<Q>();
        assert_eq!(a.bracket_basis(0, 1, 2), vec![int(0), int(0), int(0), int(1)]);
        assert_eq!(a.bracket_basis(2, 3, 0), vec![int(0), int(1), int(0), int(0)]);
        assert_eq!(a.bracket_basis(3, 2, 1), vec![int(1), int(0), int(0), int(0)]);
    }
}
