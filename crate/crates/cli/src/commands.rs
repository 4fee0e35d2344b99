use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hom3lie::algebra::{check_structure, Algebra3};
use hom3lie::cohomology::{cocycle_space, is_1_cocycle, Cochain};
use hom3lie::deformation::{
    check_infinitesimal_deformation, check_trivial_deformation, is_nijenhuis, nijenhuis_bracket,
};
use hom3lie::derivations::{classify_operator, derivation_space, GradedOperator};
use hom3lie::extensions::{
    check_extension, check_extension_cocycle, check_section, find_section, induced_cocycle, induced_rep,
    is_abelian, tstar_extension,
};
use hom3lie::report::{Report, Witness};
use hom3lie::representation::{adjoint_rep, check_representation, coadjoint_rep, Representation};
use hom3lie::Rational;
use serde_json::json;

use crate::files::{
    degree_of, in_file, load_algebra, read_json, write_json, AlgebraFile, CochainFile, ExtensionBundle, InputError,
    OperatorFile, RepFile,
};
use crate::output::{emit, Format, Record};

#[derive(Debug, Parser)]
#[command(name = "hom3lie", version, about = "Check and construct graded 3-ary Hom-Lie algebras from definition files")]
pub struct Cli {
    /// Output style
    #[arg(long, value_enum, default_value = "human", global = true)]
    pub format: Format,

    /// Worker threads for the tuple scans (default: all cores)
    #[arg(long, global = true)]
    pub parallel: Option<usize>,

    /// Where construction commands write their result
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NijenhuisMode {
    Check,
    Deform,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bicharacter, grading, skew symmetry, fundamental identity and
    /// multiplicativity
    Check { algebra: PathBuf },

    /// Representation conditions; REP is a file, `adjoint` or `coadjoint`
    RepCheck { algebra: PathBuf, rep: String },

    /// Level-0 or level-1 cocycles of a degree
    Cohomology {
        algebra: PathBuf,
        #[arg(long)]
        level: usize,
        #[arg(long, default_value = "adjoint")]
        rep: String,
        /// Comma separated coordinates; omitted means degree zero
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        degree: Vec<i64>,
    },

    /// Basis of the phi^k-derivations of a degree
    Derivations {
        algebra: PathBuf,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        degree: Vec<i64>,
    },

    /// Generalized derivation, quasi-derivation and centroid membership
    Classify {
        algebra: PathBuf,
        /// Operator file or `zero`/`identity`
        #[arg(long)]
        op: String,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },

    /// T*-extension by a level-1 cochain with values in the dual
    Tstar {
        algebra: PathBuf,
        /// Cochain file or `zero`
        #[arg(long, default_value = "zero")]
        omega: String,
    },

    /// Exactness, abelianness, section, induced representation and cocycle
    ExtensionAnalyze { bundle: PathBuf },

    /// Infinitesimal deformation by a level-1 cochain with values in A
    DeformCheck {
        algebra: PathBuf,
        /// Cochain file or `zero`
        #[arg(long)]
        omega: String,
    },

    /// Nijenhuis identity; `deform` also writes w_N and checks triviality
    Nijenhuis {
        algebra: PathBuf,
        /// Operator file or `zero`/`identity`
        #[arg(long)]
        op: String,
        #[arg(value_enum, default_value = "check")]
        mode: NijenhuisMode,
    },
}

/// Runs `cli`, printing records to `out` and input errors to `err`.
/// Returns the exit code: 0 all checks pass, 1 a check fails, 2 bad input.
pub fn run(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let result = match cli.parallel {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(cli)),
            Err(e) => Err(InputError::Usage(format!("cannot start {n} threads: {e}"))),
        },
        None => execute(cli),
    };
    match result {
        Ok(records) => {
            let code = if records.iter().any(Record::failed) { 1 } else { 0 };
            match emit(out, cli.format, &records) {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            let message = e.to_string();
            let _ = match cli.format {
                Format::Records => emit(out, cli.format, &[Record::Error { message }]),
                Format::Human => writeln!(err, "error: {message}"),
            };
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<Vec<Record>, InputError> {
    let output = cli.output.as_deref();
    match &cli.command {
        Command::Check { algebra } => {
            let a = load_algebra(algebra)?;
            Ok(reports(check_structure(&a)))
        }
        Command::RepCheck { algebra, rep } => {
            let a = load_algebra(algebra)?;
            let (r, mut records) = load_rep(&a, rep)?;
            records.push(Record::Report(check_representation(&a, &r)?));
            Ok(records)
        }
        Command::Cohomology {
            algebra,
            level,
            rep,
            degree,
        } => {
            let a = load_algebra(algebra)?;
            let (r, mut records) = load_rep(&a, rep)?;
            let d = degree_of(a.group(), degree)?;
            let space = cocycle_space(&a, &r, *level, &d)?;
            records.push(Record::Space {
                what: format!("{level}-cocycles of degree {d}"),
                dimension: space.len(),
                basis: space.iter().map(|w| json!(CochainFile::from_cochain(w))).collect(),
            });
            Ok(records)
        }
        Command::Derivations { algebra, k, degree } => {
            let a = load_algebra(algebra)?;
            let d = degree_of(a.group(), degree)?;
            let space = derivation_space(&a, *k, &d);
            Ok(vec![Record::Space {
                what: format!("phi^{k}-derivations of degree {d}"),
                dimension: space.len(),
                basis: space.iter().map(|x| json!(OperatorFile::from_operator(x))).collect(),
            }])
        }
        Command::Classify { algebra, op, k } => {
            let a = load_algebra(algebra)?;
            let x = load_operator(&a, op)?;
            let c = classify_operator(&a, &x, *k)?;
            let mut flags = json!(c.flags());
            if let Some((y, z, w)) = &c.gder {
                flags["gder_companions"] = json!([
                    OperatorFile::from_operator(y),
                    OperatorFile::from_operator(z),
                    OperatorFile::from_operator(w)
                ]);
            }
            if let Some(y) = &c.qder {
                flags["qder_companion"] = json!(OperatorFile::from_operator(y));
            }
            Ok(vec![Record::Flags {
                what: format!("operator classes at k = {k}"),
                flags,
            }])
        }
        Command::Tstar { algebra, omega } => {
            let a = load_algebra(algebra)?;
            let path = require_output(output)?;
            let w = load_cochain(&a, omega)?;
            let dual = coadjoint_rep(&a);
            let mut records = vec![Record::Report(dual.validity.clone())];
            if dual.is_valid() {
                records.push(Record::Report(is_1_cocycle(&a, &dual.rep, &w)?));
            }
            let b = tstar_extension(&a, &w)?;
            write_json(path, &AlgebraFile::from_algebra(&b))?;
            records.push(written("T*-extension", path));
            Ok(records)
        }
        Command::ExtensionAnalyze { bundle } => {
            let file: ExtensionBundle = read_json(bundle)?;
            let e = file.to_extension().map_err(in_file(bundle))?;
            analyze_extension(&e)
        }
        Command::DeformCheck { algebra, omega } => {
            let a = load_algebra(algebra)?;
            let w = load_cochain(&a, omega)?;
            let r = check_infinitesimal_deformation(&a, &w)?;
            let mut records = reports(r.coefficients.clone());
            records.push(Record::Report(r.structure.clone()));
            records.push(Record::Report(r.cocycle.clone()));
            records.push(Record::Flags {
                what: "deformation".into(),
                flags: json!({
                    "is_deformation": r.is_deformation,
                    "w_is_structure": r.w_is_structure,
                    "w_is_cocycle": r.w_is_cocycle,
                    "consistent": r.consistent(),
                }),
            });
            Ok(records)
        }
        Command::Nijenhuis { algebra, op, mode } => {
            let a = load_algebra(algebra)?;
            let n = load_operator(&a, op)?;
            let nij = is_nijenhuis(&a, &n)?;
            let ok = nij.passed();
            let mut records = vec![Record::Report(nij)];
            if *mode == NijenhuisMode::Deform {
                let path = require_output(output)?;
                let w = nijenhuis_bracket(&a, &n)?;
                write_json(path, &CochainFile::from_cochain(&w))?;
                records.push(written("w_N", path));
                if ok {
                    let d = check_infinitesimal_deformation(&a, &w)?;
                    records.extend(reports(d.coefficients));
                    let t = check_trivial_deformation(&a, &n)?;
                    records.extend(reports(t.coefficients));
                    records.push(Record::Report(t.equivalent));
                }
            }
            Ok(records)
        }
    }
}

fn reports(rs: Vec<Report>) -> Vec<Record> {
    rs.into_iter().map(Record::Report).collect()
}

fn written(what: &str, path: &Path) -> Record {
    Record::Written {
        what: what.into(),
        path: path.display().to_string(),
    }
}

fn require_output(output: Option<&Path>) -> Result<&Path, InputError> {
    output.ok_or_else(|| InputError::Usage("this command writes a file: pass --output PATH".into()))
}

/// `adjoint`, `coadjoint` or a representation file. The coadjoint comes
/// with the report on its validity conditions.
fn load_rep(a: &Algebra3<Rational>, spec: &str) -> Result<(Representation<Rational>, Vec<Record>), InputError> {
    match spec {
        "adjoint" => Ok((adjoint_rep(a), Vec::new())),
        "coadjoint" => {
            let d = coadjoint_rep(a);
            Ok((d.rep, vec![Record::Report(d.validity)]))
        }
        path => {
            let path = Path::new(path);
            let file: RepFile = read_json(path)?;
            Ok((file.to_rep(a).map_err(in_file(path))?, Vec::new()))
        }
    }
}

fn load_operator(a: &Algebra3<Rational>, spec: &str) -> Result<GradedOperator<Rational>, InputError> {
    match spec {
        "zero" => Ok(GradedOperator::zero(a, a.group().zero())),
        "identity" => Ok(GradedOperator::identity(a)),
        path => {
            let path = Path::new(path);
            let file: OperatorFile = read_json(path)?;
            file.to_operator(a).map_err(in_file(path))
        }
    }
}

/// A level-1 cochain with values in a space of dimension `dim A`.
fn load_cochain(a: &Algebra3<Rational>, spec: &str) -> Result<Cochain<Rational>, InputError> {
    match spec {
        "zero" => Ok(Cochain::zero(1, a.group().zero(), a.dim(), a.dim())),
        path => {
            let path = Path::new(path);
            let file: CochainFile = read_json(path)?;
            file.to_cochain(a).map_err(in_file(path))
        }
    }
}

fn analyze_extension(e: &hom3lie::extensions::ExtensionData<Rational>) -> Result<Vec<Record>, InputError> {
    let exact = check_extension(e)?;
    let abelian = is_abelian(e)?;
    let go_on = exact.passed() && abelian.passed();
    let mut records = vec![Record::Report(exact), Record::Report(abelian)];
    if !go_on {
        return Ok(records);
    }
    let s = match find_section(e) {
        Ok(s) => s,
        Err(hom3lie::Error::NoSection) => {
            records.push(Record::Report(Report::fail(
                "section",
                "p s = id and s phi_A = psi s",
                Witness::new(Vec::new()).detail("no twist-compatible section exists"),
            )));
            return Ok(records);
        }
        Err(other) => return Err(other.into()),
    };
    records.push(Record::Report(check_section(e, &s)?));
    let mu = induced_rep(e, &s)?;
    records.push(Record::Report(check_representation(&e.a, &mu)?));
    let w = induced_cocycle(e, &s)?;
    records.push(Record::Report(is_1_cocycle(&e.a, &mu, &w)?));
    records.push(Record::Report(check_extension_cocycle(&e.a, &mu, &w)?));
    records.push(Record::Flags {
        what: "induced data".into(),
        flags: json!({
            "representation": RepFile::from_rep(&mu),
            "cocycle": CochainFile::from_cochain(&w),
        }),
    });
    Ok(records)
}
