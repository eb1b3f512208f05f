//! Command-line front end: reads OBP files, runs the pipeline and prints
//! compact JSON on stdout.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use teich_core::cone::{analyze_class, in_fibered_cone, teich_norm};
use teich_core::families::{
    closed_form_theta, family_basis, family_obp, prop1_polynomial, verify_family_canonical_slice,
    FamilyParams,
};
use teich_core::teichpoly::teichmuller_polynomial;
use teich_core::{
    AdmissibilityReport, CohomClass, Error, IntMatrix, IntPoly, LaurentPoly, Obp, Prop1Params,
    SpecializationReport, TeichResult, BIPERRON_TOL, ROOT_TOL,
};

pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_NOT_ADMISSIBLE: i32 = 2;
pub const EXIT_OUTSIDE_CONE: i32 = 3;
pub const EXIT_INTEGRITY: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "teich",
    version,
    about = "Teichmüller polynomials from ordered block permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the four admissibility conditions
    Validate {
        #[arg(long)]
        obp: PathBuf,
    },
    /// Compute the Teichmüller polynomial
    Poly {
        #[arg(long)]
        obp: PathBuf,
        /// JSON array of kernel basis columns
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Fibered-cone membership and Teichmüller norm of a class
    Cone {
        #[arg(long)]
        obp: PathBuf,
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
    /// Specialize at a class in the fibered cone
    Specialize {
        #[arg(long)]
        obp: PathBuf,
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        /// Number of (x^y - 1) factors to remove; counted from the polynomial if omitted
        #[arg(long)]
        strip: Option<usize>,
        #[command(flatten)]
        tol: Tolerances,
    },
    /// The genus-g family with stretch parameter p
    Family {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        p: i64,
        /// Compare with the closed form
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 16)]
        p_max: i64,
    },
    /// Reciprocal polynomial x^2m - a1 x^(2m-1) - ... - am x^m - ... - a1 x + 1
    Prop1 {
        #[arg(long)]
        m: usize,
        /// a_1,...,a_(m-1)
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        am: i64,
        #[command(flatten)]
        tol: Tolerances,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Tolerances {
    /// Root bisection tolerance
    #[arg(long, default_value_t = ROOT_TOL)]
    tol: f64,
    /// Annulus tolerance for the bi-Perron check
    #[arg(long, default_value_t = BIPERRON_TOL)]
    biperron_tol: f64,
}

/// On-disk OBP format. Field order is the serialization order.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ObpFile {
    pub sigma: Vec<i64>,
    pub k: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<i64>>>,
}

impl ObpFile {
    pub fn from_obp(obp: &Obp) -> Self {
        ObpFile {
            sigma: obp.sigma().iter().map(|&s| s as i64).collect(),
            k: obp.k().iter().map(|&w| w as i64).collect(),
            basis: None,
        }
    }
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct TermJson {
    pub c: String,
    pub t: Vec<i32>,
    pub u: i32,
}

pub fn terms_json(p: &LaurentPoly) -> Vec<TermJson> {
    p.terms()
        .map(|(e, c)| TermJson {
            c: c.to_string(),
            t: e.t_exps().to_vec(),
            u: e.u_exp(),
        })
        .collect()
}

#[derive(Serialize)]
struct PolyJson {
    betti: usize,
    trivial_cohomology: bool,
    basis: Vec<Vec<String>>,
    theta: Vec<TermJson>,
    #[serde(rename = "char_poly_A_t")]
    char_poly_a_t: Vec<TermJson>,
}

impl PolyJson {
    fn new(res: &TeichResult) -> Self {
        PolyJson {
            betti: res.betti,
            trivial_cohomology: res.trivial_cohomology,
            basis: res
                .cover
                .basis
                .columns()
                .iter()
                .map(|c| c.iter().map(ToString::to_string).collect())
                .collect(),
            theta: terms_json(&res.theta),
            char_poly_a_t: terms_json(&res.char_poly_a_t),
        }
    }
}

#[derive(Serialize)]
struct ConeJson {
    in_cone: bool,
    norm: i64,
}

#[derive(Serialize)]
struct SpecializationJson {
    phi: Vec<i64>,
    /// coefficients from the constant term up
    coeffs: Vec<String>,
    text: String,
    stripped_units: usize,
    largest_root: f64,
    is_biperron: bool,
    is_primitive_class: bool,
    in_cone: bool,
}

impl SpecializationJson {
    fn new(r: &SpecializationReport) -> Self {
        SpecializationJson {
            phi: r.phi.to_vec(),
            coeffs: poly_coeffs(&r.poly),
            text: r.poly.to_string(),
            stripped_units: r.stripped_units,
            largest_root: r.largest_root,
            is_biperron: r.is_biperron,
            is_primitive_class: r.is_primitive_class,
            in_cone: r.in_cone,
        }
    }
}

#[derive(Serialize)]
struct FamilyJson {
    g: i64,
    p: i64,
    obp: ObpFile,
    result: PolyJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

#[derive(Serialize)]
struct Prop1Json {
    g: i64,
    p: i64,
    class: Vec<i64>,
    report: SpecializationJson,
}

fn poly_coeffs(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

/// A failure with its exit code; the message goes to stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn malformed(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_MALFORMED,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotAdmissible(_) => EXIT_NOT_ADMISSIBLE,
            Error::OutsideCone => EXIT_OUTSIDE_CONE,
            Error::PipelineIntegrity(_) | Error::InexactDivision { .. } => EXIT_INTEGRITY,
            _ => EXIT_MALFORMED,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub fn parse_int_list(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Failure::malformed(format!("not an integer: {x:?}")))
        })
        .collect()
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
}

/// OBP plus the basis override, taken from `--basis` or else from the file.
fn load(obp_path: &Path, basis_path: Option<&Path>) -> Result<(Obp, Option<IntMatrix>), Failure> {
    let file: ObpFile = read_json(obp_path)?;
    let obp = Obp::new(&file.sigma, &file.k)?;
    let columns = match basis_path {
        Some(p) => Some(read_json::<Vec<Vec<i64>>>(p)?),
        None => file.basis,
    };
    let basis = columns
        .map(|cols| IntMatrix::from_columns(obp.n(), &cols))
        .transpose()?;
    Ok((obp, basis))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output types serialize")
}

fn class_for(theta: &LaurentPoly, phi: &str) -> Result<CohomClass, Failure> {
    let v = parse_int_list(phi)?;
    if v.len() != theta.dims() + 1 {
        return Err(Failure::malformed(format!(
            "phi needs {} entries, got {}",
            theta.dims() + 1,
            v.len()
        )));
    }
    Ok(CohomClass::from_slice(&v).expect("nonempty"))
}

fn execute(command: Command) -> Result<(String, i32), Failure> {
    match command {
        Command::Validate { obp } => {
            let (obp, _) = load(&obp, None)?;
            let report: AdmissibilityReport = obp.check_admissibility()?;
            let code = if report.is_admissible() {
                0
            } else {
                EXIT_NOT_ADMISSIBLE
            };
            Ok((to_json(&report), code))
        }
        Command::Poly { obp, basis } => {
            let (obp, basis) = load(&obp, basis.as_deref())?;
            let res = teichmuller_polynomial(&obp, basis.as_ref())?;
            Ok((to_json(&PolyJson::new(&res)), 0))
        }
        Command::Cone { obp, basis, phi } => {
            let (obp, basis) = load(&obp, basis.as_deref())?;
            let res = teichmuller_polynomial(&obp, basis.as_ref())?;
            let phi = class_for(&res.theta, &phi)?;
            let out = ConeJson {
                in_cone: in_fibered_cone(&res.theta, &phi)?,
                norm: teich_norm(&res.theta, &phi)?,
            };
            Ok((to_json(&out), 0))
        }
        Command::Specialize {
            obp,
            basis,
            phi,
            strip,
            tol,
        } => {
            let (obp, basis) = load(&obp, basis.as_deref())?;
            let res = teichmuller_polynomial(&obp, basis.as_ref())?;
            let phi = class_for(&res.theta, &phi)?;
            let report = analyze_class(&res.theta, &phi, strip, tol.tol, tol.biperron_tol)?;
            Ok((to_json(&SpecializationJson::new(&report)), 0))
        }
        Command::Family {
            g,
            p,
            verify,
            p_max,
        } => {
            FamilyParams::new(g, p)?;
            if p > p_max {
                return Err(Failure::malformed(format!(
                    "p = {p} exceeds --p-max {p_max}"
                )));
            }
            let obp = family_obp(g, p)?;
            let res = teichmuller_polynomial(&obp, Some(&family_basis(g)?))?;
            let verified = if verify {
                Some(res.theta == closed_form_theta(g, p)? && verify_family_canonical_slice(g, p)?)
            } else {
                None
            };
            let out = FamilyJson {
                g,
                p,
                obp: ObpFile::from_obp(&obp),
                result: PolyJson::new(&res),
                verified,
            };
            Ok((to_json(&out), 0))
        }
        Command::Prop1 { m, a, am, tol } => {
            let params = Prop1Params::new(m, parse_int_list(&a)?, am)?;
            let mut report = prop1_polynomial(&params)?;
            if tol.tol != ROOT_TOL || tol.biperron_tol != BIPERRON_TOL {
                let theta = closed_form_theta(params.genus(), params.p())?;
                report = analyze_class(
                    &theta,
                    &report.phi,
                    Some(report.stripped_units),
                    tol.tol,
                    tol.biperron_tol,
                )?;
            }
            let out = Prop1Json {
                g: params.genus(),
                p: params.p(),
                class: params.class(),
                report: SpecializationJson::new(&report),
            };
            Ok((to_json(&out), 0))
        }
    }
}

/// Runs one invocation. `args` includes the program name. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((json, code)) => {
            let _ = writeln!(out, "{json}");
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
