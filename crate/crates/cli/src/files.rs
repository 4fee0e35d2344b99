//! JSON definition files and their conversions to the core types.
//!
//! Scalars are strings `"-?digits(/digits)?"`, indices are zero-based,
//! matrices are lists of rows, and column `j` of a map is the image of
//! basis vector `j`.

use std::fmt;
use std::path::Path;

use hom3lie::algebra::{Algebra3, BracketEntry, GradedBasis, GradingPolicy, PairSpace};
use hom3lie::cohomology::{Cochain, CochainEntry};
use hom3lie::derivations::GradedOperator;
use hom3lie::extensions::ExtensionData;
use hom3lie::grading::{Bicharacter, Degree, GradingGroup};
use hom3lie::linalg::Matrix;
use hom3lie::representation::Representation;
use hom3lie::{Rational, Scalar};
use serde::de::{self, DeserializeOwned, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

/// Anything that makes an input unusable. Always exit code 2.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },

    #[error("{path}: {source}")]
    Parse { path: String, source: serde_json::Error },

    #[error("{path}: {source}")]
    Invalid { path: String, source: hom3lie::Error },

    #[error(transparent)]
    Core(#[from] hom3lie::Error),

    #[error("{0}")]
    Usage(String),
}

/// A scalar written as a string.
#[derive(Debug, Clone, PartialEq)]
pub struct Num(pub Rational);

impl Serialize for Num {
    fn serialize<Z: Serializer>(&self, s: Z) -> Result<Z::Ok, Z::Error> {
        s.serialize_str(&self.0.to_text())
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Rational::parse_text(&text).map(Num).map_err(de::Error::custom)
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type MatrixRows = Vec<Vec<Num>>;

fn to_matrix(rows: &MatrixRows, what: &str) -> Result<Matrix<Rational>, hom3lie::Error> {
    let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
    Matrix::from_rows(rows).map_err(|e| match e {
        hom3lie::Error::Dimension { expected, got, .. } => hom3lie::Error::Dimension {
            what: what.into(),
            expected,
            got,
        },
        other => other,
    })
}

fn to_square(rows: &MatrixRows, n: usize, what: &str) -> Result<Matrix<Rational>, hom3lie::Error> {
    if rows.is_empty() && n == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let m = to_matrix(rows, what)?;
    if m.rows() != n || m.cols() != n {
        return Err(hom3lie::Error::Dimension {
            what: what.into(),
            expected: n,
            got: if m.rows() != n { m.rows() } else { m.cols() },
        });
    }
    Ok(m)
}

fn to_sized(rows: &MatrixRows, r: usize, c: usize, what: &str) -> Result<Matrix<Rational>, hom3lie::Error> {
    if rows.is_empty() && r == 0 {
        return Ok(Matrix::zeros(0, c));
    }
    let m = to_matrix(rows, what)?;
    if m.rows() != r || m.cols() != c {
        return Err(hom3lie::Error::Dimension {
            what: what.into(),
            expected: r * c,
            got: m.rows() * m.cols(),
        });
    }
    Ok(m)
}

pub fn from_matrix(m: &Matrix<Rational>) -> MatrixRows {
    m.to_rows().into_iter().map(|r| r.into_iter().map(Num).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisSpec {
    pub name: String,
    #[serde(default)]
    pub degree: Vec<i64>,
}

/// One value on a basis tuple: `out` lists `[index, scalar]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntrySpec {
    pub on: Vec<usize>,
    pub out: Vec<(usize, Num)>,
}

fn basis_from(group: &GradingGroup, specs: &[BasisSpec]) -> Result<GradedBasis, hom3lie::Error> {
    let degrees = specs
        .iter()
        .map(|b| group.degree(&b.degree))
        .collect::<Result<Vec<_>, _>>()?;
    GradedBasis::new(group, specs.iter().map(|b| b.name.clone()).collect(), degrees)
}

fn basis_to(basis: &GradedBasis) -> Vec<BasisSpec> {
    basis
        .names()
        .iter()
        .zip(basis.degrees())
        .map(|(name, d)| BasisSpec {
            name: name.clone(),
            degree: d.0.clone(),
        })
        .collect()
}

fn entry_out(out: &[(usize, Rational)]) -> Vec<(usize, Num)> {
    out.iter().map(|(l, c)| (*l, Num(c.clone()))).collect()
}

fn out_entry(out: &[(usize, Num)]) -> Vec<(usize, Rational)> {
    out.iter().map(|(l, c)| (*l, c.0.clone())).collect()
}

/// Parses a degree given as coordinates; all-zero input means the zero
/// degree whatever the number of coordinates.
pub fn degree_of(group: &GradingGroup, coords: &[i64]) -> Result<Degree, hom3lie::Error> {
    if coords.iter().all(|&c| c == 0) {
        return Ok(group.zero());
    }
    group.degree(coords)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub group: GroupSpec,
    #[serde(default)]
    pub rho: MatrixRows,
    pub basis: Vec<BasisSpec>,
    pub phi: MatrixRows,
    #[serde(default)]
    pub bracket: Vec<EntrySpec>,
}

impl AlgebraFile {
    /// Grading violations are kept so that `check` can report them.
    pub fn to_algebra(&self) -> Result<Algebra3<Rational>, hom3lie::Error> {
        let group = GradingGroup::new(self.group.free_rank, self.group.torsion.clone())?;
        let rho_rows: Vec<Vec<Rational>> = self.rho.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
        let rho = Bicharacter::new(&group, rho_rows)?;
        let basis = basis_from(&group, &self.basis)?;
        let phi = to_square(&self.phi, basis.len(), "phi")?;
        let entries = self
            .bracket
            .iter()
            .map(|e| {
                let on: [usize; 3] = e.on.clone().try_into().map_err(|_| hom3lie::Error::Dimension {
                    what: "bracket tuple".into(),
                    expected: 3,
                    got: e.on.len(),
                })?;
                Ok(BracketEntry {
                    on,
                    out: out_entry(&e.out),
                })
            })
            .collect::<Result<Vec<_>, hom3lie::Error>>()?;
        Algebra3::from_entries(group, rho, basis, &entries, phi, GradingPolicy::Defer)
    }

    /// Canonical form: one entry per nondecreasing triple with a nonzero
    /// value.
    pub fn from_algebra(a: &Algebra3<Rational>) -> Self {
        let g = a.group();
        AlgebraFile {
            group: GroupSpec {
                free_rank: g.free_rank,
                torsion: g.torsion_orders.clone(),
            },
            rho: a.rho().matrix().iter().map(|r| r.iter().cloned().map(Num).collect()).collect(),
            basis: basis_to(a.basis()),
            phi: from_matrix(a.phi()),
            bracket: a
                .bracket()
                .canonical_entries()
                .into_iter()
                .map(|e| EntrySpec {
                    on: e.on.to_vec(),
                    out: entry_out(&e.out),
                })
                .collect(),
        }
    }
}

/// `mu` is listed per pair `(i, j)`; pairs not listed act by zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepFile {
    pub space: Vec<BasisSpec>,
    pub beta: MatrixRows,
    #[serde(default)]
    pub mu: Vec<PairAction>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairAction {
    pub pair: [usize; 2],
    pub matrix: MatrixRows,
}

impl RepFile {
    pub fn to_rep(&self, a: &Algebra3<Rational>) -> Result<Representation<Rational>, hom3lie::Error> {
        let space = basis_from(a.group(), &self.space)?;
        let nv = space.len();
        let beta = to_square(&self.beta, nv, "beta")?;
        let pairs = PairSpace::of(a);
        let mut mu = vec![Matrix::zeros(nv, nv); pairs.len()];
        let mut given = vec![false; pairs.len()];
        for act in &self.mu {
            let [i, j] = act.pair;
            for x in [i, j] {
                if x >= a.dim() {
                    return Err(hom3lie::Error::Index { index: x, dim: a.dim() });
                }
            }
            let m = to_square(&act.matrix, nv, "action matrix")?;
            // mu(i, j) = c mu(p) for the canonical pair p
            let Some((p, c)) = pairs.reduce(i, j) else {
                if m.is_zero() {
                    continue;
                }
                return Err(hom3lie::Error::Precondition(format!(
                    "the action of ({i}, {j}) is forced to vanish by skew symmetry"
                )));
            };
            let m = m.scale(&c.recip());
            if given[p] && mu[p] != m {
                return Err(hom3lie::Error::Conflict {
                    tuple: vec![i, j],
                    first: mu[p].to_rows().concat().iter().map(Scalar::to_text).collect(),
                    second: m.to_rows().concat().iter().map(Scalar::to_text).collect(),
                });
            }
            given[p] = true;
            mu[p] = m;
        }
        Representation::new(a, space, beta, mu)
    }

    pub fn from_rep(r: &Representation<Rational>) -> Self {
        RepFile {
            space: basis_to(r.space()),
            beta: from_matrix(r.beta()),
            mu: r
                .pairs()
                .pairs()
                .iter()
                .zip(r.operators())
                .filter(|(_, m)| !m.is_zero())
                .map(|(&(i, j), m)| PairAction {
                    pair: [i, j],
                    matrix: from_matrix(m),
                })
                .collect(),
        }
    }
}

/// Values on nondecreasing tuples, expanded by the skew rule of the
/// algebra. `dim_v` defaults to the algebra's dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CochainFile {
    pub level: usize,
    #[serde(default)]
    pub degree: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_v: Option<usize>,
    #[serde(default)]
    pub entries: Vec<EntrySpec>,
}

impl CochainFile {
    pub fn to_cochain(&self, a: &Algebra3<Rational>) -> Result<Cochain<Rational>, hom3lie::Error> {
        let degree = degree_of(a.group(), &self.degree)?;
        let entries: Vec<CochainEntry<Rational>> = self
            .entries
            .iter()
            .map(|e| CochainEntry {
                on: e.on.clone(),
                out: out_entry(&e.out),
            })
            .collect();
        Cochain::from_skew_entries(a, self.level, degree, self.dim_v.unwrap_or(a.dim()), &entries)
    }

    pub fn from_cochain(w: &Cochain<Rational>) -> Self {
        CochainFile {
            level: w.level(),
            degree: w.degree().0.clone(),
            dim_v: (w.dim_v() != w.dim_a()).then_some(w.dim_v()),
            entries: w
                .canonical_entries()
                .into_iter()
                .map(|e| EntrySpec {
                    on: e.on,
                    out: entry_out(&e.out),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorFile {
    #[serde(default)]
    pub degree: Vec<i64>,
    pub matrix: MatrixRows,
}

impl OperatorFile {
    pub fn to_operator(&self, a: &Algebra3<Rational>) -> Result<GradedOperator<Rational>, hom3lie::Error> {
        let degree = degree_of(a.group(), &self.degree)?;
        GradedOperator::new(a, to_square(&self.matrix, a.dim(), "operator")?, degree)
    }

    pub fn from_operator(x: &GradedOperator<Rational>) -> Self {
        OperatorFile {
            degree: x.degree().0.clone(),
            matrix: from_matrix(x.matrix()),
        }
    }
}

/// An extension `0 -> V -> B -> A -> 0` with the inclusion `i`
/// (`dim B x dim V`) and projection `p` (`dim A x dim B`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionBundle {
    pub b: AlgebraFile,
    pub a: AlgebraFile,
    pub v: Vec<BasisSpec>,
    pub phi_v: MatrixRows,
    pub i: MatrixRows,
    pub p: MatrixRows,
}

impl ExtensionBundle {
    pub fn to_extension(&self) -> Result<ExtensionData<Rational>, hom3lie::Error> {
        let b = self.b.to_algebra()?;
        let a = self.a.to_algebra()?;
        let v = basis_from(b.group(), &self.v)?;
        let nv = v.len();
        Ok(ExtensionData {
            phi_v: to_square(&self.phi_v, nv, "phi_v")?,
            i: to_sized(&self.i, b.dim(), nv, "inclusion")?,
            p: to_sized(&self.p, a.dim(), b.dim(), "projection")?,
            b,
            a,
            v,
        })
    }

    pub fn from_extension(e: &ExtensionData<Rational>) -> Self {
        ExtensionBundle {
            b: AlgebraFile::from_algebra(&e.b),
            a: AlgebraFile::from_algebra(&e.a),
            v: basis_to(&e.v),
            phi_v: from_matrix(&e.phi_v),
            i: from_matrix(&e.i),
            p: from_matrix(&e.p),
        }
    }
}

/// Reads and parses a JSON file; structural errors carry line and column.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Read {
        path: shown.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| InputError::Parse { path: shown, source })
}

/// Pretty JSON with short nested values kept on one line.
pub fn to_compact_json<T: Serialize>(value: &T) -> String {
    fn depth(v: &serde_json::Value) -> usize {
        use serde_json::Value;
        match v {
            Value::Array(items) => 1 + items.iter().map(depth).max().unwrap_or(0),
            Value::Object(map) => 1 + map.values().map(depth).max().unwrap_or(0),
            _ => 0,
        }
    }
    fn go(v: &serde_json::Value, indent: usize, out: &mut String) {
        use serde_json::Value;
        let pad = |n: usize| "  ".repeat(n);
        let flat = serde_json::to_string(v).expect("plain values serialize");
        let d = depth(v);
        if d <= 1 && !v.is_object() || d == 2 && flat.len() <= 40 || v.is_object() && d == 1 && flat.len() <= 60 {
            out.push_str(&flat);
            return;
        }
        match v {
            Value::Array(items) if !items.is_empty() => {
                out.push_str("[\n");
                for (i, x) in items.iter().enumerate() {
                    out.push_str(&pad(indent + 1));
                    go(x, indent + 1, out);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push(']');
            }
            Value::Object(map) if !map.is_empty() => {
                out.push_str("{\n");
                for (i, (k, x)) in map.iter().enumerate() {
                    out.push_str(&pad(indent + 1));
                    out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                    out.push_str(": ");
                    go(x, indent + 1, out);
                    out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push('}');
            }
            other => out.push_str(&serde_json::to_string(other).expect("plain values serialize")),
        }
    }
    let value = serde_json::to_value(value).expect("file types serialize");
    let mut out = String::new();
    go(&value, 0, &mut out);
    out.push('\n');
    out
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), InputError> {
    let text = to_compact_json(value);
    std::fs::write(path, text).map_err(|source| InputError::Write {
        path: path.display().to_string(),
        source,
    })
}

/// Reads an algebra file and builds the algebra.
pub fn load_algebra(path: &Path) -> Result<Algebra3<Rational>, InputError> {
    let file: AlgebraFile = read_json(path)?;
    file.to_algebra().map_err(|source| InputError::Invalid {
        path: path.display().to_string(),
        source,
    })
}

/// Wraps a core error with the file it came from.
pub fn in_file(path: &Path) -> impl FnOnce(hom3lie::Error) -> InputError + '_ {
    move |source| InputError::Invalid {
        path: path.display().to_string(),
        source,
    }
}
