use std::collections::HashMap;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::is_zero_vec;
use crate::scalar::Scalar;

/// Sparse trilinear structure constants: for each ordered basis triple the
/// nonzero output coordinates, sorted by index.
#[derive(Debug, Clone, PartialEq)]
pub struct TriTensor<S> {
    dim: usize,
    entries: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> TriTensor<S> {
    pub fn zero(dim: usize) -> Self {
        TriTensor {
            dim,
            entries: vec![Vec::new(); dim * dim * dim],
        }
    }

    /// Fully specified tensor, taken as is (no symmetry expansion).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Vec<S>) -> Self {
        let mut t = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    t.set(i, j, k, &f(i, j, k));
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn slot(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    /// Nonzero output coordinates of `[e_i, e_j, e_k]`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &[(usize, S)] {
        &self.entries[self.slot(i, j, k)]
    }

    pub fn get_dense(&self, i: usize, j: usize, k: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim];
        for (l, c) in self.get(i, j, k) {
            v[*l] = c.clone();
        }
        v
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: &[S]) {
        assert_eq!(value.len(), self.dim, "tensor value length");
        let slot = self.slot(i, j, k);
        self.entries[slot] = value
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (l, c.clone()))
            .collect();
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }

    /// Trilinear extension to coordinate vectors.
    pub fn eval(&self, x: &[S], y: &[S], z: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (a, xa) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let xy = xa.clone() * yb.clone();
                for (c, zc) in z.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let coef = xy.clone() * zc.clone();
                    for (l, t) in self.get(a, b, c) {
                        out[*l] = out[*l].clone() + coef.clone() * t.clone();
                    }
                }
            }
        }
        out
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: &S, other: &TriTensor<S>) -> TriTensor<S> {
        assert_eq!(self.dim, other.dim);
        TriTensor::from_fn(self.dim, |i, j, k| {
            let mut v = self.get_dense(i, j, k);
            for (l, c) in other.get(i, j, k) {
                v[*l] = v[*l].clone() + alpha.clone() * c.clone();
            }
            v
        })
    }

    pub fn scale(&self, alpha: &S) -> TriTensor<S> {
        TriTensor::zero(self.dim).axpy(alpha, self)
    }

    /// Nonzero entries with `i <= j <= k`, the form written to files.
    pub fn canonical_entries(&self) -> Vec<BracketEntry<S>> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let e = self.get(i, j, k);
                    if !e.is_empty() {
                        out.push(BracketEntry {
                            on: [i, j, k],
                            out: e.to_vec(),
                        });
                    }
                }
            }
        }
        out
    }
}

/// One partially specified bracket value `[e_i, e_j, e_k] = sum c_l e_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketEntry<S> {
    pub on: [usize; 3],
    pub out: Vec<(usize, S)>,
}

/// Whether [`canonicalize_bracket`] rejects entries whose outputs have the
/// wrong degree, or leaves that for [`super::check_grading`] to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradingPolicy {
    Enforce,
    Defer,
}

/// All reorderings of `tuple` reachable by adjacent transpositions, with the
/// factor relating each to the original. `swap(x, y)` is the factor `c`
/// with `value(.., y, x, ..) = c * value(.., x, y, ..)`. When two paths give
/// different factors the orbit can only carry zero.
pub(crate) struct Orbit<S> {
    pub members: Vec<(Vec<usize>, S)>,
    pub forced_zero: bool,
}

pub(crate) fn skew_orbit<S: Scalar>(tuple: &[usize], swap: impl Fn(usize, usize) -> S) -> Orbit<S> {
    let mut seen: HashMap<Vec<usize>, S> = HashMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    let mut forced_zero = false;
    seen.insert(tuple.to_vec(), S::one());
    order.push(tuple.to_vec());
    queue.push_back(tuple.to_vec());
    while let Some(t) = queue.pop_front() {
        let coef = seen[&t].clone();
        for p in 0..t.len().saturating_sub(1) {
            let mut u = t.clone();
            u.swap(p, p + 1);
            let c = swap(t[p], t[p + 1]) * coef.clone();
            match seen.get(&u) {
                Some(existing) => {
                    if *existing != c {
                        forced_zero = true;
                    }
                }
                None => {
                    seen.insert(u.clone(), c);
                    order.push(u.clone());
                    queue.push_back(u);
                }
            }
        }
    }
    let members = order
        .into_iter()
        .map(|t| {
            let c = seen[&t].clone();
            (t, c)
        })
        .collect();
    Orbit {
        members,
        forced_zero,
    }
}

fn texts<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(Scalar::to_text).collect()
}

/// Expands partially given entries to a full rho-skew tensor.
///
/// `swap(x, y)` is the adjacent-transposition factor `-rho(d_y, d_x)`;
/// `degree_ok(i, j, k, l)` tells whether output `l` is allowed for the
/// triple. Unspecified triples are zero.
pub(crate) fn expand_skew<S: Scalar>(
    dim: usize,
    entries: &[BracketEntry<S>],
    swap: impl Fn(usize, usize) -> S,
    degree_ok: impl Fn(&[usize], usize) -> bool,
    policy: GradingPolicy,
) -> Result<TriTensor<S>> {
    let mut assigned: Vec<Option<Vec<S>>> = vec![None; dim * dim * dim];
    for entry in entries {
        let [i, j, k] = entry.on;
        for &x in &[i, j, k] {
            if x >= dim {
                return Err(Error::Index { index: x, dim });
            }
        }
        let mut value = vec![S::zero(); dim];
        for (l, c) in &entry.out {
            if *l >= dim {
                return Err(Error::Index { index: *l, dim });
            }
            value[*l] = value[*l].clone() + c.clone();
        }
        if policy == GradingPolicy::Enforce {
            if let Some(l) = (0..dim).find(|&l| !value[l].is_zero() && !degree_ok(&entry.on, l)) {
                return Err(Error::Grading {
                    tuple: entry.on.to_vec(),
                    output: l,
                });
            }
        }
        let orbit = skew_orbit(&entry.on, &swap);
        if orbit.forced_zero && !is_zero_vec(&value) {
            let negated: Vec<S> = value.iter().map(|c| -c.clone()).collect();
            return Err(Error::Conflict {
                tuple: entry.on.to_vec(),
                first: texts(&value),
                second: texts(&negated),
            });
        }
        for (t, c) in orbit.members {
            let image: Vec<S> = value.iter().map(|x| c.clone() * x.clone()).collect();
            let slot = (t[0] * dim + t[1]) * dim + t[2];
            match &assigned[slot] {
                Some(existing) if *existing != image => {
                    return Err(Error::Conflict {
                        tuple: t,
                        first: texts(existing),
                        second: texts(&image),
                    });
                }
                _ => assigned[slot] = Some(image),
            }
        }
    }
    let mut t = TriTensor::zero(dim);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if let Some(v) = &assigned[(i * dim + j) * dim + k] {
                    t.set(i, j, k, v);
                }
            }
        }
    }
    Ok(t)
}
