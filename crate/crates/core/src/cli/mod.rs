//! Command-line front end.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on
//! argument or parameter errors. Reports go to stdout, diagnostics to
//! stderr.

pub mod report;

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Result;
use crate::radial::{eigensolve, oscillator_profile, radial_rho, radial_t, suggested_t_max, RadialState};
use crate::spectral::{
    degeneracy, energy, energy_kl, ktype_dim_check, ktype_weight, ModelParams, QuantumNumbers,
};
use crate::verify::{self, Check, Criterion};

pub use report::{emit, float, Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "sp1-kepler",
    version,
    about = "Spectra, degeneracies and identity checks for the Sp(1)-Kepler problems"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// Overrides the default tolerance of every numerical check.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Adds a wall-clock timestamp to the report.
    #[arg(long, global = true)]
    timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
struct Model {
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Highest weight σ̄ of the Sp(1) representation.
    #[arg(long = "sigma", default_value_t = 0)]
    sigma_bar: u32,
}

impl Model {
    fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.n, self.sigma_bar)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Form {
    T,
    Rho,
    Oscillator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ResidualKind {
    Kepler,
    Oscillator,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy levels E_I.
    Spectrum {
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 5)]
        imax: u32,
    },
    /// Degeneracy of each level as a sum of Sp(n) dimensions.
    Degeneracy {
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 5)]
        imax: u32,
    },
    /// K-type highest weights and their dimensions.
    Ktype {
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 5)]
        imax: u32,
    },
    /// Samples one closed-form radial state.
    Wavefunction {
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, value_enum, default_value = "t")]
        form: Form,
        #[arg(long, default_value_t = 0.1)]
        from: f64,
        #[arg(long, default_value_t = 20.0)]
        to: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long)]
        normalized: bool,
    },
    /// Radial ODE residuals of the closed-form states.
    Residual {
        #[arg(value_enum)]
        kind: ResidualKind,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 5)]
        kmax: u32,
        #[arg(long, default_value_t = 3)]
        lmax: u32,
        #[arg(long, default_value_t = 3)]
        sigma_max: u32,
    },
    /// Finite-difference eigenvalues of one angular channel.
    Eigensolve {
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value_t = 4000)]
        grid: usize,
        /// Box size; chosen from the requested states when omitted.
        #[arg(long)]
        tmax: Option<f64>,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// The n = 2 correspondence with the five-dimensional MICZ-Kepler problem.
    Micz {
        #[arg(long, default_value_t = 6)]
        sigma_max: u32,
        #[arg(long, default_value_t = 20)]
        imax: u32,
    },
    /// Verification sweeps; `all` runs every criterion.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Binomial dimension against the sum of K-type dimensions.
    DimEquality {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 12)]
        kmax: u32,
    },
    /// Generating-function coefficients against binomials.
    Genfunc {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 12)]
        kmax: u32,
    },
    /// Angular eigenvalues against Casimir differences.
    Casimir {
        #[arg(long, default_value_t = 5)]
        nmax: u32,
        #[arg(long, default_value_t = 8)]
        lmax: u32,
        #[arg(long, default_value_t = 8)]
        sigma_max: u32,
    },
    /// Pointwise identity for the quotient metric at random tangent vectors.
    Metric {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Membership of embedded unitaries and the weight-doubling map.
    Ostar {
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Largest n for the exhaustive weight-doubling check.
        #[arg(long, default_value_t = 6)]
        weight_nmax: usize,
    },
    /// Schur orthogonality norm of the Sp(1) characters by quadrature.
    Schur {
        #[arg(long, default_value_t = 10)]
        sigma_max: u32,
        #[arg(long, default_value_t = 256)]
        points: usize,
    },
    /// U(2n) K-type dimensions against the Sp(n) branching sums.
    KtypeDims {
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 5)]
        sigma_max: u32,
        #[arg(long, default_value_t = 5)]
        imax: u32,
    },
    /// Finite-difference eigenvalues against the exact levels.
    Spectrum {
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 3)]
        sigma_max: u32,
        #[arg(long, default_value_t = 2)]
        lmax: u32,
        #[arg(long, default_value_t = 3)]
        count: usize,
        #[arg(long, default_value_t = 4000)]
        grid: usize,
    },
    /// Energies depend on k and l only through k + l.
    Collapse {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 6)]
        sigma_max: u32,
        #[arg(long, default_value_t = 12)]
        klmax: u32,
    },
    /// Closed-form dimensions against the Weyl formula.
    Weyl {
        #[arg(long, default_value_t = 4)]
        nmax: u32,
        #[arg(long, default_value_t = 6)]
        lmax: u32,
        #[arg(long, default_value_t = 6)]
        sigma_max: u32,
    },
    /// Oscillator profile over the twisted radial function is constant.
    Twist {
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 5)]
        kmax: u32,
        #[arg(long, default_value_t = 3)]
        lmax: u32,
        #[arg(long, default_value_t = 3)]
        sigma_max: u32,
    },
    /// Gram matrix of normalized radial states.
    Orthonormality {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        sigma_max: u32,
        #[arg(long, default_value_t = 2)]
        lmax: u32,
        #[arg(long, default_value_t = 6)]
        kmax: u32,
    },
    /// Every criterion at default sizes.
    All,
}

fn rows_of<T, I: IntoIterator<Item = T>>(items: I, f: impl FnMut(T) -> Vec<String>) -> Vec<Vec<String>> {
    items.into_iter().map(f).collect()
}

fn spectrum_report(model: Model, imax: u32, seed: u64) -> Result<Report> {
    let p = model.params()?;
    let rows = rows_of(0..=imax, |i| {
        let e = energy(&p, i);
        vec![
            i.to_string(),
            e.exact.to_string(),
            float(e.value),
            degeneracy(&p, i).to_string(),
        ]
    });
    Ok(Report::new("spectrum", seed)
        .param("n", p.n())
        .param("sigma", p.sigma_bar())
        .param("imax", imax)
        .table(&["I", "E_exact", "E", "degeneracy"], rows))
}

fn degeneracy_report(model: Model, imax: u32, seed: u64) -> Result<Report> {
    let p = model.params()?;
    let rows = rows_of(0..=imax, |i| {
        let terms: Vec<String> = verify::degeneracy_terms(&p, i)
            .iter()
            .map(|t| t.to_string())
            .collect();
        vec![i.to_string(), degeneracy(&p, i).to_string(), terms.join("+")]
    });
    Ok(Report::new("degeneracy", seed)
        .param("n", p.n())
        .param("sigma", p.sigma_bar())
        .param("imax", imax)
        .table(&["I", "degeneracy", "terms"], rows))
}

fn ktype_report(model: Model, imax: u32, seed: u64) -> Result<Report> {
    let p = model.params()?;
    let mut checks = Vec::new();
    let rows = rows_of(0..=imax, |i| {
        let r = ktype_dim_check(&p, i);
        checks.push(Check::exact(
            format!("I={i}"),
            r.u2n_dim.clone(),
            r.sp_sum.clone(),
        ));
        vec![
            i.to_string(),
            ktype_weight(&p, i).to_string(),
            r.shifted_weight,
            r.u2n_dim.to_string(),
            r.sp_sum.to_string(),
        ]
    });
    let mut report = Report::new("ktype", seed)
        .param("n", p.n())
        .param("sigma", p.sigma_bar())
        .param("imax", imax)
        .table(&["I", "weight", "shifted_weight", "u2n_dim", "sp_sum"], rows);
    report.push(Criterion {
        id: 6,
        name: "K-type dimensions".into(),
        checks,
    });
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn wavefunction_report(
    model: Model,
    k: u32,
    l: u32,
    form: Form,
    from: f64,
    to: f64,
    points: usize,
    normalized: bool,
    seed: u64,
) -> Result<Report> {
    let s = RadialState::new(model.params()?, QuantumNumbers::new(k, l)?);
    if points < 2 || !(to > from) {
        return Err(crate::Error::InvalidParameter(format!(
            "need from < to and at least 2 points (got {from}..{to}, {points})"
        )));
    }
    let step = (to - from) / (points - 1) as f64;
    let rows = (0..points)
        .map(|i| {
            let x = from + step * i as f64;
            let v = match form {
                Form::T => radial_t(&s, x, normalized)?,
                Form::Rho => radial_rho(&s, x, normalized)?,
                Form::Oscillator => oscillator_profile(&s, x)?,
            };
            Ok(vec![float(x), float(v)])
        })
        .collect::<Result<_>>()?;
    let coord = match form {
        Form::T => "t",
        Form::Rho => "rho",
        Form::Oscillator => "r",
    };
    Ok(Report::new("wavefunction", seed)
        .param("n", s.n())
        .param("sigma", s.params().sigma_bar())
        .param("k", k)
        .param("l", l)
        .param("form", coord)
        .param("normalized", normalized)
        .table(&[coord, "value"], rows))
}

fn eigensolve_report(
    model: Model,
    l: u32,
    grid: usize,
    tmax: Option<f64>,
    count: usize,
    tol: Option<f64>,
    seed: u64,
) -> Result<Report> {
    let p = model.params()?;
    let t_max = tmax.unwrap_or_else(|| suggested_t_max(&p, l, count));
    let values = eigensolve(&p, l, grid, t_max, count)?;
    let tol = tol.unwrap_or(verify::SPECTRUM_TOL);
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for (idx, v) in values.iter().enumerate() {
        let k = idx as u32 + 1;
        let exact = energy_kl(&p, &QuantumNumbers::new(k, l)?).value;
        let rel = (v / exact - 1.0).abs();
        checks.push(Check::residual(format!("k={k}"), rel, tol));
        rows.push(vec![k.to_string(), float(*v), float(exact), float(rel)]);
    }
    let mut report = Report::new("eigensolve", seed)
        .param("n", p.n())
        .param("sigma", p.sigma_bar())
        .param("l", l)
        .param("grid", grid)
        .param("tmax", float(t_max))
        .table(&["k", "eigenvalue", "exact", "rel_error"], rows);
    report.push(Criterion {
        id: 1,
        name: "spectrum formula".into(),
        checks,
    });
    Ok(report)
}

fn verify_report(which: VerifyCommand, seed: u64, tol: Option<f64>) -> Result<Report> {
    use VerifyCommand as V;
    let (name, criteria) = match which {
        V::DimEquality { n, kmax } => ("dim-equality", vec![verify::dimension_equality(&n, kmax)?]),
        V::Genfunc { n, kmax } => ("genfunc", vec![verify::genfunc(&n, kmax)?]),
        V::Casimir {
            nmax,
            lmax,
            sigma_max,
        } => ("casimir", vec![verify::casimir(nmax, lmax, sigma_max)?]),
        V::Metric { n, samples } => ("metric", vec![verify::metric(&n, samples, seed, tol)?]),
        V::Ostar {
            n,
            samples,
            weight_nmax,
        } => ("ostar", vec![verify::ostar(&n, samples, weight_nmax, seed, tol)?]),
        V::Schur { sigma_max, points } => ("schur", vec![verify::schur(sigma_max, points, tol)?]),
        V::KtypeDims { n, sigma_max, imax } => ("ktype-dims", vec![verify::ktype_dims(&n, sigma_max, imax)?]),
        V::Spectrum {
            n,
            sigma_max,
            lmax,
            count,
            grid,
        } => (
            "spectrum",
            vec![verify::spectrum(&n, sigma_max, lmax, count, grid, tol)?],
        ),
        V::Collapse { n, sigma_max, klmax } => ("collapse", vec![verify::collapse(&n, sigma_max, klmax)?]),
        V::Weyl {
            nmax,
            lmax,
            sigma_max,
        } => ("weyl", vec![verify::weyl_dims(nmax, lmax, sigma_max)?]),
        V::Twist {
            n,
            kmax,
            lmax,
            sigma_max,
        } => ("twist", vec![verify::twist(&n, kmax, lmax, sigma_max, tol)?]),
        V::Orthonormality {
            n,
            sigma_max,
            lmax,
            kmax,
        } => (
            "orthonormality",
            vec![verify::orthonormality(n, sigma_max, lmax, kmax, tol)?],
        ),
        V::All => ("all", verify::all(seed, tol)?),
    };
    let mut report = Report::new(format!("verify {name}"), seed);
    if let Some(t) = tol {
        report = report.param("tol", float(t));
    }
    for c in criteria {
        report.push(c);
    }
    Ok(report)
}

fn residual_report(
    kind: ResidualKind,
    ns: &[u32],
    kmax: u32,
    lmax: u32,
    sigma_max: u32,
    tol: Option<f64>,
    seed: u64,
) -> Result<Report> {
    let mut c = verify::residuals(ns, kmax, lmax, sigma_max, tol)?;
    let prefix = match kind {
        ResidualKind::Kepler => "kepler ",
        ResidualKind::Oscillator => "oscillator ",
    };
    let keep_eigenvalue = kind == ResidualKind::Oscillator;
    c.checks
        .retain(|ch| ch.name.starts_with(prefix) || (keep_eigenvalue && ch.name.starts_with("eigenvalue ")));
    let name = match kind {
        ResidualKind::Kepler => "residual kepler",
        ResidualKind::Oscillator => "residual oscillator",
    };
    let mut report = Report::new(name, seed)
        .param("n", format!("{ns:?}"))
        .param("kmax", kmax)
        .param("lmax", lmax)
        .param("sigma_max", sigma_max);
    report.push(c);
    Ok(report)
}

fn execute(cli: Cli) -> Result<Report> {
    let seed = cli.seed;
    let tol = cli.tol;
    match cli.command {
        Command::Spectrum { model, imax } => spectrum_report(model, imax, seed),
        Command::Degeneracy { model, imax } => degeneracy_report(model, imax, seed),
        Command::Ktype { model, imax } => ktype_report(model, imax, seed),
        Command::Wavefunction {
            model,
            k,
            l,
            form,
            from,
            to,
            points,
            normalized,
        } => wavefunction_report(model, k, l, form, from, to, points, normalized, seed),
        Command::Residual {
            kind,
            n,
            kmax,
            lmax,
            sigma_max,
        } => residual_report(kind, &n, kmax, lmax, sigma_max, tol, seed),
        Command::Eigensolve {
            model,
            l,
            grid,
            tmax,
            count,
        } => eigensolve_report(model, l, grid, tmax, count, tol, seed),
        Command::Micz { sigma_max, imax } => {
            let mut report = Report::new("micz", seed)
                .param("sigma_max", sigma_max)
                .param("imax", imax);
            report.push(verify::micz(sigma_max, imax, tol)?);
            Ok(report)
        }
        Command::Verify { which } => verify_report(which, seed, tol),
    }
}

fn unix_timestamp() -> String {
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    secs.to_string()
}

/// Parses `argv` (including the program name), runs the command and
/// writes the rendered report to `out`. Returns the exit status.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let format = cli.format;
    let stamp = cli.timestamp;
    match execute(cli) {
        Ok(mut report) => {
            if stamp {
                report.timestamp = Some(unix_timestamp());
            }
            let _ = write!(out, "{}", emit(&report, format));
            if report.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
