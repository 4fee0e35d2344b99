mod common;

use common::{q, rand_q, small_corpus, Q};
use hom3lie::algebra::Algebra3;
use hom3lie::corpus;
use hom3lie::derivations::{
    centroid_space, check_centroid, classify_operator, derivation_space, inner_derivation,
    is_phi_k_derivation, GradedOperator,
};
use hom3lie::grading::{Bicharacter, Degree, GradingGroup};
use hom3lie::linalg::Matrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const P: i64 = 1_000_000_007;

fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let inv = |b: i64| {
        let (mut r, mut b, mut e) = (1i64, b.rem_euclid(P), P - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c].rem_euclid(P) != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let s = inv(rows[rank][c]);
        for i in 0..rows.len() {
            if i != rank {
                let f = rows[i][c].rem_euclid(P) * s % P;
                for k in 0..cols {
                    rows[i][k] = (rows[i][k] - f * rows[rank][k]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the ordinary derivations of an ungraded algebra with
/// `phi = id` and integer structure constants, from the raw Leibniz
/// equations, over `Z/p`.
fn brute_force_derivation_dim(a: &Algebra3<Q>) -> usize {
    let n = a.dim();
    let c = |i: usize, j: usize, k: usize, l: usize| -> i64 {
        let v = &a.bracket_basis(i, j, k)[l];
        assert!(v.is_integer());
        i64::try_from(v.to_integer()).unwrap()
    };
    let var = |r: usize, col: usize| r * n + col;
    let mut rows = Vec::new();
    for f in 0..n {
        for g in 0..n {
            for h in 0..n {
                for l in 0..n {
                    let mut row = vec![0i64; n * n];
                    for m in 0..n {
                        row[var(l, m)] += c(f, g, h, m);
                        row[var(m, f)] -= c(m, g, h, l);
                        row[var(m, g)] -= c(f, m, h, l);
                        row[var(m, h)] -= c(f, g, m, l);
                    }
                    rows.push(row);
                }
            }
        }
    }
    n * n - rank_mod_p(rows)
}

#[test]
fn a4_derivations_match_brute_force() {
    let a = corpus::a4::<Q>();
    let space = derivation_space(&a, 0, &a.group().zero());
    assert_eq!(space.len(), brute_force_derivation_dim(&a));
    assert_eq!(space.len(), 6);
    for x in &space {
        assert!(is_phi_k_derivation(&a, x, 0).unwrap().passed());
    }
    let det3 = corpus::det3::<Q>();
    assert_eq!(
        derivation_space(&det3, 0, &det3.group().zero()).len(),
        brute_force_derivation_dim(&det3)
    );
}

fn phi_fixed(a: &Algebra3<Q>, i: usize) -> bool {
    a.phi_col(i).iter().enumerate().all(|(r, c)| *c == if r == i { q(1, 1) } else { q(0, 1) })
}

#[test]
fn inner_derivations_are_derivations_one_level_up() {
    for (name, a) in small_corpus() {
        let n = a.dim();
        for k in 0..3 {
            let mut spaces = std::collections::HashMap::new();
            for i in 0..n {
                for j in 0..n {
                    if !(phi_fixed(&a, i) && phi_fixed(&a, j)) {
                        assert!(inner_derivation(&a, i, j, k).is_err());
                        continue;
                    }
                    let x = inner_derivation(&a, i, j, k).unwrap();
                    let report = is_phi_k_derivation(&a, &x, k + 1).unwrap();
                    assert!(report.passed(), "{name} ad_{k}(e{i}, e{j}): {report:?}");
                    // and it lies in the computed derivation space
                    let space = spaces
                        .entry(x.degree().clone())
                        .or_insert_with(|| derivation_space(&a, k + 1, x.degree()));
                    assert!(in_span(&x, space), "{name} ad_{k}(e{i}, e{j})");
                }
            }
        }
    }
}

fn flat(x: &GradedOperator<Q>) -> Vec<Q> {
    x.matrix().to_rows().concat()
}

fn in_span(x: &GradedOperator<Q>, space: &[GradedOperator<Q>]) -> bool {
    if space.is_empty() {
        return x.matrix().is_zero();
    }
    let cols: Vec<Vec<Q>> = space.iter().map(flat).collect();
    let m = Matrix::from_columns(cols[0].len(), &cols);
    let mut with_x = cols.clone();
    with_x.push(flat(x));
    Matrix::from_columns(cols[0].len(), &with_x).rank() == m.rank()
}

#[test]
fn zero_bracket_spaces() {
    let g = GradingGroup::trivial();
    for n in [1, 3] {
        let a = corpus::zero_bracket::<Q>(
            g.clone(),
            Bicharacter::trivial(&g),
            vec![g.zero(); n],
            Matrix::identity(n),
        )
        .unwrap();
        assert_eq!(derivation_space(&a, 0, &g.zero()).len(), n * n);
        let x = GradedOperator::new(
            &a,
            Matrix::from_rows(vec![vec![q(n as i64, 2); n]; n]).unwrap(),
            g.zero(),
        )
        .unwrap();
        for k in 0..3 {
            assert!(is_phi_k_derivation(&a, &x, k).unwrap().passed());
        }
    }
}

#[test]
fn zero_operator_passes_everything() {
    for (name, a) in small_corpus() {
        let z = GradedOperator::zero(&a, a.group().zero());
        for k in 0..3 {
            assert!(is_phi_k_derivation(&a, &z, k).unwrap().passed(), "{name}");
            let f = classify_operator(&a, &z, k).unwrap().flags();
            assert!(f.gder && f.qder && f.centroid && f.qcentroid, "{name}");
        }
    }
}

#[test]
fn inner_derivation_of_a4_is_quasi_derivation_not_centroid() {
    let a = corpus::a4::<Q>();
    let x = inner_derivation(&a, 0, 1, 0).unwrap();
    let c = classify_operator(&a, &x, 0).unwrap();
    assert!(c.flags().qder);
    assert!(c.flags().gder);
    assert!(!c.flags().centroid);
    let w = c.centroid.witness().unwrap();
    let t = &w.tuple;
    let lhs = x.apply(&a.bracket_basis(t[0], t[1], t[2]));
    let rhs = a.br(&x.apply(&hom3lie::linalg::unit(4, t[0])), a.phi_col(t[1]), a.phi_col(t[2]));
    assert!(w.condition != Some(2) || lhs != rhs);
    assert!(c.qcentroid.notes.iter().any(|n| n.contains("quasi-centroid")));
}

#[test]
fn identity_is_centroid() {
    for (name, a) in small_corpus() {
        if a.phi() != &Matrix::identity(a.dim()) {
            continue;
        }
        let id = GradedOperator::identity(&a);
        let f = classify_operator(&a, &id, 0).unwrap().flags();
        assert!(f.centroid && f.qder, "{name}");
    }
}

fn random_combo(space: &[GradedOperator<Q>], a: &Algebra3<Q>, d: &Degree, rng: &mut ChaCha8Rng) -> GradedOperator<Q> {
    let mut m = Matrix::zeros(a.dim(), a.dim());
    for x in space {
        m = m.axpy(rand_q(rng), x.matrix());
    }
    GradedOperator::new(a, m, d.clone()).unwrap()
}

#[test]
fn centroid_elements_are_quasi_derivations() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (name, a) in small_corpus() {
        let d = a.group().zero();
        for k in 0..2 {
            let space = centroid_space(&a, k, &d);
            assert!(!space.is_empty(), "{name}");
            for _ in 0..4 {
                let x = random_combo(&space, &a, &d, &mut rng);
                assert!(check_centroid(&a, &x, k).unwrap().passed(), "{name}");
                let f = classify_operator(&a, &x, k).unwrap().flags();
                assert!(f.centroid && f.qder, "{name} k={k}");
            }
        }
    }
}

#[test]
fn centroid_after_generalized_derivation_is_generalized_derivation() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (name, a) in small_corpus() {
        let d = a.group().zero();
        for (k, s) in [(0, 0), (0, 1), (1, 1)] {
            let ders = derivation_space(&a, k, &d);
            let cents = centroid_space(&a, s, &d);
            for _ in 0..3 {
                let x = random_combo(&ders, &a, &d, &mut rng);
                let gd = classify_operator(&a, &x, k).unwrap();
                assert!(gd.flags().gder, "{name}");
                let xp = random_combo(&cents, &a, &d, &mut rng);
                let comp = xp.compose(&a, &x);
                let f = classify_operator(&a, &comp, k + s).unwrap().flags();
                assert!(f.gder, "{name} k={k} s={s}");
            }
        }
    }
}

#[test]
fn odd_derivations_of_super_algebra() {
    let a = corpus::color_tensor::<Q>(&corpus::det3(), &corpus::grassmann1()).unwrap();
    let odd = Degree(vec![1]);
    let space = derivation_space(&a, 0, &odd);
    assert!(!space.is_empty());
    for x in &space {
        assert_eq!(x.degree(), &odd);
        assert!(is_phi_k_derivation(&a, x, 0).unwrap().passed());
    }
    let even = derivation_space(&a, 0, &a.group().zero());
    assert!(even.iter().all(|x| is_phi_k_derivation(&a, x, 0).unwrap().passed()));
}

#[test]
fn twisted_derivation_must_commute_with_phi() {
    let a = corpus::det3_twisted::<Q>();
    let mut m = Matrix::zeros(3, 3);
    m[(0, 1)] = q(1, 1);
    let x = GradedOperator::new(&a, m, a.group().zero()).unwrap();
    let r = is_phi_k_derivation(&a, &x, 0).unwrap();
    assert_eq!(r.witness().unwrap().condition, Some(1));
    assert!(classify_operator(&a, &x, 0).unwrap().gder.is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn derivation_space_members_pass(seed in any::<u64>(), k in 0u32..3) {
        let a = corpus::det3_twisted::<Q>();
        let d = a.group().zero();
        let space = derivation_space(&a, k, &d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_combo(&space, &a, &d, &mut rng);
        prop_assert!(is_phi_k_derivation(&a, &x, k).unwrap().passed());
        let f = classify_operator(&a, &x, k).unwrap();
        prop_assert!(f.flags().gder && f.flags().qder);
    }
}
