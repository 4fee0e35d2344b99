//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use hom3lie::algebra::{
    check_fundamental_identity, check_hom_rho_lie2, check_multiplicative, check_structure,
    fundamental_algebra, Algebra3, TriTensor,
};
use hom3lie::cohomology::{coboundary, is_1_cocycle, skew_cochain_basis, Cochain, CochainEntry};
use hom3lie::corpus;
use hom3lie::deformation::{
    check_infinitesimal_deformation, check_trivial_deformation, find_nijenhuis, is_nijenhuis,
    nijenhuis_bracket, NijenhuisSearch,
};
use hom3lie::derivations::{
    centroid_space, classify_operator, derivation_space, inner_derivation, is_phi_k_derivation,
    GradedOperator,
};
use hom3lie::extensions::{
    check_extension, check_extension_cocycle, check_section, find_sections, induced_cocycle,
    induced_rep, is_abelian, tstar_as_extension, tstar_extension, Section,
};
use hom3lie::grading::{validate_bicharacter, Bicharacter, GradingGroup};
use hom3lie::linalg::{add_scaled, unit, Matrix};
use hom3lie::report::decode_tuple;
use hom3lie::representation::{
    adjoint_rep, check_representation, coadjoint_rep, zero_rep, Representation,
};
use hom3lie::scalar::int;
use hom3lie::Rational as Q;
use hom3lie_cli::files::{read_json, AlgebraFile, ExtensionBundle};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q(n: i64, d: i64) -> Q {
    int::<Q>(n) / int::<Q>(d)
}

fn rand_q(rng: &mut ChaCha8Rng) -> Q {
    if rng.gen_range(0..3) == 0 {
        return Q::zero();
    }
    q(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

fn tuples(n: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(len as u32)).map(move |i| decode_tuple(i, n, len))
}

fn corpus_algebras() -> Vec<(&'static str, Algebra3<Q>)> {
    vec![
        ("a4", corpus::a4()),
        ("z2-zero", corpus::z2_zero_bracket()),
        ("det3", corpus::det3()),
        ("det3-twisted", corpus::det3_twisted()),
        ("a4+center", corpus::a4_plus_center()),
        (
            "det3 x grassmann",
            corpus::color_tensor(&corpus::det3(), &corpus::grassmann1()).unwrap(),
        ),
    ]
}

// 1

fn bicharacter_laws() -> Outcome {
    let one = Q::one;
    let z = GradingGroup::new(1, vec![]).unwrap();
    let z2 = GradingGroup::new(2, vec![]).unwrap();
    let c2 = GradingGroup::z2();
    let zc2 = GradingGroup::new(1, vec![2]).unwrap();
    let cases = vec![
        (z.clone(), vec![vec![one()]]),
        (z, vec![vec![q(-1, 1)]]),
        (z2.clone(), vec![vec![one(), q(2, 1)], vec![q(1, 2), one()]]),
        (z2, vec![vec![q(-1, 1), q(-3, 5)], vec![q(-5, 3), one()]]),
        (c2.clone(), vec![vec![one()]]),
        (c2, vec![vec![q(-1, 1)]]),
        (zc2.clone(), vec![vec![one(), one()], vec![one(), q(-1, 1)]]),
        (zc2, vec![vec![q(-1, 1), q(-1, 1)], vec![q(-1, 1), q(-1, 1)]]),
    ];
    let mut checked = 0usize;
    for (g, m) in cases {
        ensure!(validate_bicharacter(&g, &m).unwrap().passed(), "validation rejects {m:?}");
        let b = Bicharacter::new(&g, m).unwrap();
        let elems = g.enumerate(2);
        let zero = g.zero();
        for a in &elems {
            ensure!(b.eval(&zero, a).is_one(), "rho(0, {a:?}) != 1");
            let s = b.eval(a, a);
            ensure!(s.is_one() || s == q(-1, 1), "rho({a:?}, {a:?}) = {s}");
            for c in &elems {
                ensure!((b.eval(a, c) * b.eval(c, a)).is_one(), "inversion at {a:?}, {c:?}");
                for d in &elems {
                    let sum = b.eval(&g.add(a, c), d);
                    ensure!(sum == b.eval(a, d) * b.eval(c, d), "additivity at {a:?}, {c:?}, {d:?}");
                    checked += 1;
                }
            }
        }
    }
    ensure!(checked > 0, "nothing checked");
    Ok(())
}

// 2

fn a4_validation() -> Outcome {
    let a = corpus::a4::<Q>();
    for r in check_structure(&a) {
        ensure!(r.passed(), "A4 fails {}", r.check);
    }
    let fi = check_fundamental_identity(&a);
    ensure!(fi.passed(), "A4 fundamental identity");

    let mut broken = vec![
        ("perturbed bracket", corpus::a4_perturbed::<Q>()),
        ("odd e3", corpus::a4_bad_grading()),
        (
            "non-multiplicative twist",
            a.with_phi(Matrix::diagonal(&[q(2, 1), q(1, 1), q(1, 1), q(1, 1)])).unwrap(),
        ),
    ];
    let mut t = TriTensor::zero(4);
    t.set(0, 1, 2, &unit(4, 3));
    broken.push(("one-sided entry", a.with_bracket(t).unwrap()));
    let g = GradingGroup::z2();
    broken.push((
        "bad bicharacter",
        corpus::zero_bracket(
            g.clone(),
            Bicharacter::new(&g, vec![vec![q(2, 1)]]).unwrap(),
            vec![g.zero(), g.degree(&[1]).unwrap()],
            Matrix::identity(2),
        )
        .unwrap(),
    ));
    for (name, b) in &broken {
        let failed: Vec<_> = check_structure(b).into_iter().filter(|r| !r.passed()).collect();
        ensure!(!failed.is_empty(), "{name} passes every check");
        for r in failed {
            ensure!(r.witness().is_some_and(|w| !w.tuple.is_empty()), "{name}: {} has no witness", r.check);
        }
    }
    ensure!(!check_multiplicative(&broken[2].1).passed(), "twist variant is multiplicative");
    Ok(())
}

// 3

fn fundamental_set() -> Outcome {
    let (space, b) = fundamental_algebra(&corpus::a4::<Q>());
    ensure!(space.len() == 6, "pair space has dimension {}", space.len());
    let r = check_hom_rho_lie2(&b);
    ensure!(r.passed(), "{:?}", r.witness());
    Ok(())
}

// 4

fn adjoint_representation() -> Outcome {
    for a in [corpus::a4::<Q>(), corpus::z2_zero_bracket()] {
        let ad = adjoint_rep(&a);
        let r = check_representation(&a, &ad).unwrap();
        ensure!(r.passed(), "adjoint fails: {:?}", r.witness());
    }
    let a = corpus::a4::<Q>();
    let ad = adjoint_rep(&a);
    let doubled: Vec<Matrix<Q>> = ad.operators().iter().map(|m| m.scale(&q(2, 1))).collect();
    let doubled = Representation::new(&a, ad.space().clone(), ad.beta().clone(), doubled).unwrap();
    let r = check_representation(&a, &doubled).unwrap();
    let w = r.witness().ok_or("doubled action passes")?;
    ensure!(w.tuple.len() == 4 && w.condition.is_some() && w.lhs != w.rhs, "witness {w:?}");
    Ok(())
}

// 5

fn coadjoint() -> Outcome {
    let a = corpus::a4::<Q>();
    let co = coadjoint_rep(&a);
    ensure!(co.is_valid(), "dual conditions fail");
    let r = check_representation(&a, &co.rep).unwrap();
    ensure!(r.passed(), "{:?}", r.witness());
    let v = co.rep.mu(0, 1).mul_vec(&unit(4, 3));
    let want: Vec<Q> = unit::<Q>(4, 2).iter().map(|c| -c.clone()).collect();
    ensure!(v == want, "ad*(e1, e2)(e4*) = {v:?}");
    Ok(())
}

// 6

fn rho_of(a: &Algebra3<Q>, x: &[usize], y: &[usize]) -> Q {
    let g = a.group();
    let dx = g.sum(x.iter().map(|&i| a.degree(i)));
    let dy = g.sum(y.iter().map(|&i| a.degree(i)));
    a.rho().eval(&dx, &dy)
}

fn act(r: &Representation<Q>, x: &[Q], y: &[Q], v: &[Q]) -> Vec<Q> {
    r.mu_vec(x, y).mul_vec(v)
}

fn direct_d0(a: &Algebra3<Q>, r: &Representation<Q>, nu: &Cochain<Q>, t: &[usize]) -> Vec<Q> {
    let e = |i| unit::<Q>(a.dim(), i);
    let (f1, f2, f3) = (t[0], t[1], t[2]);
    let nu_at = |x: &[Q]| nu.eval(&[x]);
    let mut out = act(r, &e(f1), &e(f2), &nu_at(&e(f3)));
    add_scaled(&mut out, &rho_of(a, &[f1, f2], &[f3]), &act(r, &e(f3), &e(f1), &nu_at(&e(f2))));
    add_scaled(&mut out, &rho_of(a, &[f1], &[f2, f3]), &act(r, &e(f2), &e(f3), &nu_at(&e(f1))));
    add_scaled(&mut out, &q(-1, 1), &nu_at(&a.bracket_basis(f1, f2, f3)));
    out
}

fn direct_d1(a: &Algebra3<Q>, r: &Representation<Q>, w: &Cochain<Q>, t: &[usize]) -> Vec<Q> {
    let e = |i| unit::<Q>(a.dim(), i);
    let (f1, f2, g1, g2, g3) = (t[0], t[1], t[2], t[3], t[4]);
    let p = |i: usize| a.phi_col(i).to_vec();
    let br = |x, y, z| a.bracket_basis(x, y, z);
    let w3 = |x: &[Q], y: &[Q], z: &[Q]| w.eval(&[x, y, z]);
    let rho = |x: &[usize], y: &[usize]| rho_of(a, x, y);
    let mut out = w3(&p(f1), &p(f2), &br(g1, g2, g3));
    add_scaled(&mut out, &Q::one(), &act(r, &p(f1), &p(f2), &w3(&e(g1), &e(g2), &e(g3))));
    add_scaled(&mut out, &q(-1, 1), &w3(&br(f1, f2, g1), &p(g2), &p(g3)));
    add_scaled(&mut out, &-rho(&[f1, f2], &[g1]), &w3(&p(g1), &br(f1, f2, g2), &p(g3)));
    add_scaled(&mut out, &-rho(&[f1, f2], &[g1, g2]), &w3(&p(g1), &p(g2), &br(f1, f2, g3)));
    add_scaled(
        &mut out,
        &-(rho(&[f1, f2], &[g2, g3]) * rho(&[g1], &[g2, g3])),
        &act(r, &p(g2), &p(g3), &w3(&e(f1), &e(f2), &e(g1))),
    );
    add_scaled(
        &mut out,
        &-(rho(&[f1, f2], &[g1, g3]) * rho(&[g1, g2], &[g3])),
        &act(r, &p(g3), &p(g1), &w3(&e(f1), &e(f2), &e(g2))),
    );
    add_scaled(
        &mut out,
        &-rho(&[f1, f2], &[g1, g2]),
        &act(r, &p(g1), &p(g2), &w3(&e(f1), &e(f2), &e(g3))),
    );
    out
}

fn random_cochain(a: &Algebra3<Q>, r: &Representation<Q>, level: usize, rng: &mut ChaCha8Rng) -> Cochain<Q> {
    let d = a.group().zero();
    let mut acc = Cochain::zero(level, d.clone(), a.dim(), r.dim());
    for b in skew_cochain_basis(a, r, level, &d) {
        acc = acc.axpy(&rand_q(rng), &b);
    }
    acc
}

fn cohomology() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, a) in corpus_algebras() {
        let r = adjoint_rep(&a);
        for _ in 0..20 {
            let nu = random_cochain(&a, &r, 0, &mut rng);
            let d = coboundary(&a, &r, &nu).unwrap();
            for t in tuples(a.dim(), 3) {
                ensure!(d.get(&t) == direct_d0(&a, &r, &nu, &t), "{name}: d0 at {t:?}");
            }
            let w = random_cochain(&a, &r, 1, &mut rng);
            let d = coboundary(&a, &r, &w).unwrap();
            for t in tuples(a.dim(), 5) {
                ensure!(d.get(&t) == direct_d1(&a, &r, &w, &t), "{name}: d1 at {t:?}");
            }
        }
        // d1 d0 = 0 with beta = id
        let mut reps = vec![zero_rep(&a, a.basis().clone(), Matrix::identity(a.dim())).unwrap()];
        if a.phi() == &Matrix::identity(a.dim()) {
            reps.push(r);
        }
        for r in &reps {
            for _ in 0..3 {
                let nu = random_cochain(&a, r, 0, &mut rng);
                let dd = coboundary(&a, r, &coboundary(&a, r, &nu).unwrap()).unwrap();
                ensure!(dd.is_zero(), "{name}: d1 d0 != 0");
            }
        }
    }
    let a = corpus::a4::<Q>();
    let id = Cochain::from_fn(0, a.group().zero(), 4, 4, |t| unit(4, t[0]));
    let d = coboundary(&a, &adjoint_rep(&a), &id).unwrap();
    for t in tuples(4, 3) {
        let want: Vec<Q> = a.bracket_basis(t[0], t[1], t[2]).iter().map(|c| q(2, 1) * c).collect();
        ensure!(d.get(&t) == want, "d0(id) at {t:?}");
    }
    Ok(())
}

// 7

/// Derivation dimension of an untwisted, ungraded algebra with integer
/// structure constants, by elimination of the raw Leibniz equations mod p.
fn brute_force_derivation_dim(a: &Algebra3<Q>) -> usize {
    const P: i64 = 1_000_000_007;
    let n = a.dim();
    let c = |i, j, k, l: usize| i64::try_from(a.bracket_basis(i, j, k)[l].to_integer()).unwrap();
    let mut rows = Vec::new();
    for f in 0..n {
        for g in 0..n {
            for h in 0..n {
                for l in 0..n {
                    let mut row = vec![0i64; n * n];
                    for m in 0..n {
                        row[l * n + m] += c(f, g, h, m);
                        row[m * n + f] -= c(m, g, h, l);
                        row[m * n + g] -= c(f, m, h, l);
                        row[m * n + h] -= c(f, g, m, l);
                    }
                    rows.push(row);
                }
            }
        }
    }
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
    let mut rank = 0;
    for col in 0..n * n {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col].rem_euclid(P) != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let s = inv(rows[rank][col]);
        for i in 0..rows.len() {
            if i != rank {
                let f = rows[i][col].rem_euclid(P) * s % P;
                for k in 0..n * n {
                    rows[i][k] = (rows[i][k] - f * rows[rank][k]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    n * n - rank
}

fn random_combo(space: &[GradedOperator<Q>], a: &Algebra3<Q>, rng: &mut ChaCha8Rng) -> GradedOperator<Q> {
    let mut m = Matrix::zeros(a.dim(), a.dim());
    for x in space {
        m = m.axpy(rand_q(rng), x.matrix());
    }
    GradedOperator::new(a, m, a.group().zero()).unwrap()
}

fn derivations() -> Outcome {
    let mut inner = 0;
    for (name, a) in corpus_algebras() {
        for k in 0..2 {
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    // defined only for phi-fixed arguments
                    let Ok(x) = inner_derivation(&a, i, j, k) else { continue };
                    let r = is_phi_k_derivation(&a, &x, k + 1).unwrap();
                    ensure!(r.passed(), "{name}: ad_{k}(e{i}, e{j}) at level {}", k + 1);
                    inner += 1;
                }
            }
        }
    }
    ensure!(inner > 0, "no inner derivations checked");

    let a = corpus::a4::<Q>();
    let dim = derivation_space(&a, 0, &a.group().zero()).len();
    let brute = brute_force_derivation_dim(&a);
    ensure!(dim == brute, "derivation space {dim}, brute force {brute}");

    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (name, a) in corpus_algebras() {
        let d = a.group().zero();
        for (k, s) in [(0, 0), (0, 1), (1, 1)] {
            let cents = centroid_space(&a, s, &d);
            let ders = derivation_space(&a, k, &d);
            for _ in 0..3 {
                let c = random_combo(&cents, &a, &mut rng);
                let f = classify_operator(&a, &c, s).unwrap().flags();
                ensure!(f.centroid && f.qder, "{name}: centroid element is not a quasi-derivation");
                let x = random_combo(&ders, &a, &mut rng);
                ensure!(classify_operator(&a, &x, k).unwrap().flags().gder, "{name}: derivation not in GDer");
                let comp = c.compose(&a, &x);
                let f = classify_operator(&a, &comp, k + s).unwrap().flags();
                ensure!(f.gder, "{name}: centroid o GDer not in GDer at k={k}, s={s}");
            }
        }
    }
    Ok(())
}

// 8

fn one_entry(a: &Algebra3<Q>, on: [usize; 3], l: usize) -> Cochain<Q> {
    let entry = CochainEntry { on: on.to_vec(), out: vec![(l, Q::one())] };
    Cochain::from_skew_entries(a, 1, a.group().zero(), a.dim(), &[entry]).unwrap()
}

fn tstar() -> Outcome {
    let a = corpus::a4::<Q>();
    let b = tstar_extension(&a, &Cochain::zero(1, a.group().zero(), 4, 4)).unwrap();
    ensure!(b.dim() == 8, "T* has dimension {}", b.dim());
    for r in check_structure(&b) {
        ensure!(r.passed(), "T*_0 fails {}: {:?}", r.check, r.witness());
    }
    let dual = coadjoint_rep(&a).rep;
    let w = one_entry(&a, [0, 1, 2], 0);
    ensure!(!is_1_cocycle(&a, &dual, &w).unwrap().passed(), "entry is a cocycle");
    let b = tstar_extension(&a, &w).unwrap();
    let fi = check_fundamental_identity(&b);
    ensure!(fi.witness().is_some(), "non-cocycle keeps the fundamental identity");
    Ok(())
}

// 9

fn abelian_extensions() -> Outcome {
    let a = corpus::a4::<Q>();
    let coad = coadjoint_rep(&a).rep;
    let zero = Cochain::zero(1, a.group().zero(), 4, 4);
    // a nonzero cocycle for the round trip: the coboundary of a 0-cochain
    let nu = Cochain::from_fn(0, a.group().zero(), 4, 4, |t| unit(4, (t[0] + 1) % 4));
    let w = coboundary(&a, &coad, &nu).unwrap();
    ensure!(!w.is_zero() && is_1_cocycle(&a, &coad, &w).unwrap().passed(), "test cocycle");
    for omega in [zero, w] {
        let b = tstar_extension(&a, &omega).unwrap();
        let e = tstar_as_extension(&a, &b).unwrap();
        ensure!(check_extension(&e).unwrap().passed(), "not an extension");
        ensure!(is_abelian(&e).unwrap().passed(), "not abelian");
        let family = find_sections(&e).unwrap();
        ensure!(!family.directions.is_empty(), "only one section");
        let mut other = family.particular.delta.clone();
        for (i, dir) in family.directions.iter().enumerate() {
            other = other.axpy(q(i as i64 + 1, 2), dir);
        }
        let sections = [family.particular.clone(), Section { delta: other }];
        ensure!(sections[0].delta != sections[1].delta, "sections coincide");
        for s in &sections {
            ensure!(check_section(&e, s).unwrap().passed(), "bad section");
            let mu = induced_rep(&e, s).unwrap();
            ensure!(mu.operators() == coad.operators(), "induced action differs from the coadjoint");
            let induced = induced_cocycle(&e, s).unwrap();
            ensure!(is_1_cocycle(&a, &mu, &induced).unwrap().passed(), "induced cocycle fails");
            ensure!(check_extension_cocycle(&a, &mu, &induced).unwrap().passed(), "extension identity");
        }
        let mut standard = Matrix::zeros(8, 4);
        for k in 0..4 {
            standard[(k, k)] = Q::one();
        }
        let back = induced_cocycle(&e, &Section { delta: standard }).unwrap();
        ensure!(back == omega, "round trip does not recover omega");
    }
    Ok(())
}

// 10

fn deformations() -> Outcome {
    let a = corpus::a4::<Q>();
    let d = a.group().zero();
    let bracket = Cochain::from_tensor(a.bracket(), d.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let mut omegas = vec![Cochain::zero(1, d, 4, 4), bracket.clone()];
    while omegas.len() < 12 {
        let mut on: Vec<usize> = rand::seq::index::sample(&mut rng, 4, 3).into_vec();
        on.sort();
        let c = q(rng.gen_range(1..=5), rng.gen_range(1..=3));
        let entry = CochainEntry { on, out: vec![(rng.gen_range(0..4), c)] };
        let single = Cochain::from_skew_entries(&a, 1, a.group().zero(), 4, &[entry]).unwrap();
        omegas.push(bracket.axpy(&Q::one(), &single));
    }
    for (i, w) in omegas.iter().enumerate() {
        let r = check_infinitesimal_deformation(&a, w).unwrap();
        ensure!(r.is_deformation == (r.w_is_structure && r.w_is_cocycle), "flags for omega {i}");
        ensure!(r.consistent(), "independent checks disagree for omega {i}");
    }

    let found = find_nijenhuis(&a, NijenhuisSearch::default());
    ensure!(found.iter().any(|n| n.matrix().is_zero()), "N = 0 not found");
    let mut checked = found.clone();
    checked.push(GradedOperator::zero(&a, a.group().zero()));
    for n in &checked {
        ensure!(is_nijenhuis(&a, n).unwrap().passed(), "found operator is not Nijenhuis");
        let w = nijenhuis_bracket(&a, n).unwrap();
        let r = check_infinitesimal_deformation(&a, &w).unwrap();
        ensure!(r.is_deformation, "omega_N is not a deformation");
        let t = check_trivial_deformation(&a, n).unwrap();
        ensure!(t.coefficients.len() == 4, "expected t^0..t^3");
        for c in &t.coefficients {
            ensure!(c.passed(), "{} fails", c.check);
        }
        ensure!(t.passed(), "T_t is not an equivalence");
    }
    Ok(())
}

// 11

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn exit_code(args: &[&str]) -> Option<i32> {
    let dir = corpus_dir();
    Command::new(env!("CARGO_BIN_EXE_hom3lie"))
        .args(args.iter().map(|s| if s.ends_with(".json") { dir.join(s).into_os_string() } else { s.into() }))
        .output()
        .ok()?
        .status
        .code()
}

fn cli_contract() -> Outcome {
    let dir = corpus_dir();
    let builders: Vec<(&str, Algebra3<Q>)> = vec![
        ("a4.json", corpus::a4()),
        ("a4_perturbed.json", corpus::a4_perturbed()),
        ("a4_bad_grading.json", corpus::a4_bad_grading()),
        ("z2_zero.json", corpus::z2_zero_bracket()),
        ("det3_grassmann.json", corpus::color_tensor(&corpus::det3(), &corpus::grassmann1()).unwrap()),
        ("det3_twisted.json", corpus::det3_twisted()),
    ];
    for (file, built) in &builders {
        let parsed: AlgebraFile = read_json(&dir.join(file)).map_err(|e| e.to_string())?;
        let a = parsed.to_algebra().map_err(|e| e.to_string())?;
        ensure!(&a == built, "{file} differs from its builder");
        let again = AlgebraFile::from_algebra(&a);
        ensure!(again == parsed, "{file} does not round-trip");
        ensure!(again.to_algebra().unwrap() == a, "{file} re-read differs");
    }
    let bundle: ExtensionBundle = read_json(&dir.join("a4_tstar.bundle.json")).map_err(|e| e.to_string())?;
    let e = bundle.to_extension().map_err(|e| e.to_string())?;
    ensure!(ExtensionBundle::from_extension(&e) == bundle, "bundle does not round-trip");

    let expected = [
        (vec!["check", "a4.json"], 0),
        (vec!["check", "z2_zero.json"], 0),
        (vec!["check", "det3_twisted.json"], 0),
        (vec!["check", "a4_perturbed.json"], 1),
        (vec!["check", "a4_bad_grading.json"], 1),
        (vec!["check", "a4_bad_twist.json"], 1),
        (vec!["check", "z2_bad_rho.json"], 1),
        (vec!["check", "a4_bad_scalar.json"], 2),
        (vec!["check", "a4_conflict.json"], 2),
        (vec!["check", "missing.json"], 2),
        (vec!["rep-check", "a4.json", "adjoint"], 0),
        (vec!["extension-analyze", "a4_tstar.bundle.json"], 0),
        (vec!["deform-check", "a4.json", "--omega", "a4_omega_not_cocycle.json"], 1),
        (vec!["nosuchcommand"], 2),
    ];
    for (args, want) in expected {
        let got = exit_code(&args);
        ensure!(got == Some(want), "{args:?} exited with {got:?}, expected {want}");
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("bicharacter laws", bicharacter_laws),
        ("A4 validation and broken variants", a4_validation),
        ("fundamental set of A4", fundamental_set),
        ("adjoint representation", adjoint_representation),
        ("coadjoint representation", coadjoint),
        ("coboundaries", cohomology),
        ("derivations", derivations),
        ("T* extension", tstar),
        ("abelian extensions", abelian_extensions),
        ("deformations and Nijenhuis operators", deformations),
        ("CLI contract", cli_contract),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS criterion {}: {name} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({secs:.1}s): {e}", i + 1);
            }
        }
    }
    println!("{} of 11 criteria passed in {:.1}s", 11 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
