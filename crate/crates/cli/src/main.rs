//! Command-line front end: every subcommand prints a machine-readable
//! report (JSON, CSV for the census, or a text rendering) and is
//! deterministic byte-for-byte. Exit code 0 on success, 2 on validation or
//! cap errors; census findings never change the exit code.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lusztig_core::error::Error;
use lusztig_core::ffield::FieldSpec;
use lusztig_core::liealg::is_symplectic_lie;
use lusztig_core::lusztig::{
    eigen_check, lusztig_coefficients, lusztig_function, product_lusztig_function,
    triangular_index,
};
use lusztig_core::matrix::FpMatrix;
use lusztig_core::orbits::{
    build_atlas, classify_nilpotent, enumerate_admissible_partitions,
    enumerate_rational_orbits_padic,
};
use lusztig_core::padic::{
    census, census_csv, lusztig_distributions, stable_subspace_dim, PMod4,
};
use lusztig_core::qforms::{classify_diagonal_padic, enumerate_padic_classes, PadicSquareClass};
use lusztig_core::DEFAULT_TOLERANCE;

#[derive(Parser)]
#[command(
    name = "lusztig",
    about = "Census and verification reports for nilpotent symplectic orbits, \
             Lusztig functions, and their Fourier eigenvalues over prime fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Atlas of rational nilpotent orbits at (n, p), sized by the
    /// conjugation oracle (or symbolic p-adic labels with --padic)
    Orbits {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        /// Emit symbolic p-adic labels instead of the finite atlas
        #[arg(long)]
        padic: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Classify the nilpotent matrix in FILE (JSON array of integer rows)
    Classify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// The Lusztig function on sp_2n(F_p): signed orbit coefficients, and
    /// pointwise values when the algebra is enumerable
    Lusztig {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verify the Fourier eigenfunction property and eigenvalue
    FtCheck {
        /// Rank of a single Lusztig function (triangular)
        #[arg(long, conflicts_with = "product")]
        n: Option<u64>,
        /// Two triangular ranks "D1,D2" for the product function
        #[arg(long)]
        product: Option<String>,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Eigenspace-dimension census rows 1..=n-max with mismatch flags
    Census {
        #[arg(long = "n-max")]
        n_max: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Catalog of p-adic Lusztig functions (vertices of the extended C_n
    /// diagram), with eigenvalues when --p-mod-4 is given
    PadicCatalog {
        #[arg(long)]
        n: u64,
        #[arg(long = "p-mod-4")]
        p_mod_4: Option<u8>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tame Hilbert symbol of two square classes (1, eps, pi, eps_pi)
    Hilbert {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Classify a diagonal p-adic form and return its table normal form
    NormalizeForm {
        /// Comma-separated square classes, e.g. "pi,eps_pi"
        #[arg(long)]
        entries: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn field(p: u64) -> Result<FieldSpec, String> {
    FieldSpec::new(p).map_err(|_| format!("p must be an odd prime, got {p}"))
}

fn warn_good_prime(spec: &FieldSpec, n: usize) {
    if !spec.is_good_for_rank(n) {
        eprintln!(
            "warning: p = {} is not above the good-prime bound 3(2n-1) = {} for rank n = {n}; \
             the orbit parametrization theory assumes larger p",
            spec.p(),
            FieldSpec::good_prime_bound(n)
        );
    }
}

enum Rendered {
    Json(Value),
    Raw(String),
}

fn emit(doc: &Rendered, output: Option<PathBuf>) -> Result<(), String> {
    let bytes = match doc {
        Rendered::Json(v) => {
            let mut s = serde_json::to_string_pretty(v).expect("serializable value");
            s.push('\n');
            s
        }
        Rendered::Raw(s) => s.clone(),
    };
    match output {
        None => {
            std::io::stdout()
                .write_all(bytes.as_bytes())
                .map_err(|e| format!("cannot write to stdout: {e}"))?;
        }
        Some(path) => {
            std::fs::write(&path, bytes)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
    }
    Ok(())
}

fn run(cmd: Command) -> Result<(), String> {
    match cmd {
        Command::Orbits {
            n,
            p,
            padic,
            format,
            output,
        } => {
            if n == 0 {
                return Err("n must be at least 1".into());
            }
            let spec = field(p)?;
            warn_good_prime(&spec, n);
            if padic {
                let mut labels = Vec::new();
                for lambda in enumerate_admissible_partitions(n) {
                    let ls = enumerate_rational_orbits_padic(&lambda, &spec)
                        .map_err(|e| e.to_string())?;
                    labels.extend(ls);
                }
                let doc = json!({
                    "n": n,
                    "p": p,
                    "padic": true,
                    "orbits": labels.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
                });
                let rendered = match format {
                    Format::Json => Rendered::Json(doc),
                    Format::Text => {
                        let mut s = format!("symbolic p-adic orbit labels, n = {n}, p = {p}\n");
                        for l in &labels {
                            let forms: Vec<String> = l
                                .forms
                                .iter()
                                .enumerate()
                                .filter(|(_, (c, _))| !c.is_empty())
                                .map(|(k, (c, rep))| {
                                    let reps: Vec<&str> =
                                        rep.iter().map(|e| e.label()).collect();
                                    format!("Q_{} = {} ~ diag({})", 2 * (k + 1), c, reps.join(", "))
                                })
                                .collect();
                            s.push_str(&format!("{} [{}]\n", l.partition, forms.join("; ")));
                        }
                        Rendered::Raw(s)
                    }
                    Format::Csv => return Err("csv is not supported for orbits".into()),
                };
                return emit(&rendered, output);
            }
            let atlas = build_atlas(n, &spec).map_err(|e| e.to_string())?;
            let rendered = match format {
                Format::Json => Rendered::Json(atlas.to_json()),
                Format::Text => {
                    let mut s = format!(
                        "rational nilpotent orbits of sp_{}(F_{}): {} orbits\n",
                        2 * n,
                        p,
                        atlas.orbits.len()
                    );
                    for e in &atlas.orbits {
                        s.push_str(&format!("{}  size {}\n", e.label, e.size));
                    }
                    Rendered::Raw(s)
                }
                Format::Csv => return Err("csv is not supported for orbits".into()),
            };
            emit(&rendered, output)
        }

        Command::Classify {
            file,
            p,
            format,
            output,
        } => {
            let spec = field(p)?;
            let text = std::fs::read_to_string(&file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let rows: Vec<Vec<i64>> = serde_json::from_str(&text)
                .map_err(|e| format!("file is not a JSON array of integer rows: {e}"))?;
            let size = rows.len();
            if size == 0 || rows.iter().any(|r| r.len() != size) {
                return Err("matrix must be square".into());
            }
            if !size.is_multiple_of(2) {
                return Err("matrix must have even size 2n".into());
            }
            warn_good_prime(&spec, size / 2);
            let m = FpMatrix::from_rows(&spec, &rows).map_err(|e| e.to_string())?;
            if !is_symplectic_lie(&m).map_err(|e| e.to_string())? {
                return Err(Error::NotInAlgebra.to_string());
            }
            let label = classify_nilpotent(&m, &spec).map_err(|e| e.to_string())?;
            let rendered = match format {
                Format::Json => Rendered::Json(label.to_json()),
                Format::Text => Rendered::Raw(format!("{label}\n")),
                Format::Csv => return Err("csv is not supported for classify".into()),
            };
            emit(&rendered, output)
        }

        Command::Lusztig {
            n,
            p,
            format,
            output,
        } => {
            let spec = field(p)?;
            if n == 0 || triangular_index(n).is_none() {
                return Err(Error::NotTriangular(n).to_string());
            }
            warn_good_prime(&spec, n as usize);
            let coeffs = lusztig_coefficients(n, &spec).map_err(|e| e.to_string())?;
            let materialized = lusztig_function(n, &spec).ok();
            let doc = json!({
                "n": n,
                "p": p,
                "coefficients": coeffs
                    .iter()
                    .map(|(label, s)| {
                        let mut obj = label.to_json();
                        obj.as_object_mut()
                            .expect("label object")
                            .insert("sign".into(), json!(s.value()));
                        obj
                    })
                    .collect::<Vec<_>>(),
                "materialized": materialized.as_ref().map(|f| f.to_json()),
            });
            let rendered = match format {
                Format::Json => Rendered::Json(doc),
                Format::Text => {
                    let mut s = format!("Lusztig function on sp_{}(F_{})\n", 2 * n, p);
                    for (label, sign) in &coeffs {
                        s.push_str(&format!("{sign} {label}\n"));
                    }
                    if let Some(f) = &materialized {
                        s.push_str(&format!("support size {}\n", f.support_len()));
                    }
                    Rendered::Raw(s)
                }
                Format::Csv => return Err("csv is not supported for lusztig".into()),
            };
            emit(&rendered, output)
        }

        Command::FtCheck {
            n,
            product,
            p,
            tolerance,
            format,
            output,
        } => {
            let spec = field(p)?;
            if tolerance <= 0.0 {
                return Err("tolerance must be positive".into());
            }
            let f = match (n, product) {
                (Some(n), None) => {
                    if n == 0 || triangular_index(n).is_none() {
                        return Err(Error::NotTriangular(n).to_string());
                    }
                    warn_good_prime(&spec, n as usize);
                    lusztig_function(n, &spec).map_err(|e| e.to_string())?
                }
                (None, Some(pair)) => {
                    let parts: Vec<&str> = pair.split(',').collect();
                    if parts.len() != 2 {
                        return Err("--product expects two ranks \"D1,D2\"".into());
                    }
                    let d1: u64 = parts[0]
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad rank {:?}", parts[0]))?;
                    let d2: u64 = parts[1]
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad rank {:?}", parts[1]))?;
                    product_lusztig_function(d1, d2, &spec).map_err(|e| e.to_string())?
                }
                _ => return Err("exactly one of --n or --product is required".into()),
            };
            let report = eigen_check(&f, tolerance).map_err(|e| e.to_string())?;
            let rendered = match format {
                Format::Json => Rendered::Json(report.to_json()),
                Format::Text => Rendered::Raw(format!(
                    "eigenfunction: {}\neigenvalue: {:.12} + {:.12} i\nmax residual: {:.3e}\n\
                     predicted: {:.12} + {:.12} i\nmatches prediction: {}\n",
                    report.is_eigenfunction,
                    report.eigenvalue.re,
                    report.eigenvalue.im,
                    report.max_residual,
                    report.predicted.re,
                    report.predicted.im,
                    report.matches_prediction
                )),
                Format::Csv => return Err("csv is not supported for ft-check".into()),
            };
            emit(&rendered, output)
        }

        Command::Census {
            n_max,
            format,
            output,
        } => {
            if n_max == 0 {
                return Err("--n-max must be at least 1".into());
            }
            let rows = census(n_max);
            let rendered = match format {
                Format::Json => Rendered::Json(json!(rows
                    .iter()
                    .map(|r| r.to_json())
                    .collect::<Vec<_>>())),
                Format::Csv => Rendered::Raw(census_csv(&rows)),
                Format::Text => {
                    let mut s = String::from(
                        "n    dim(E)  pairs   d1-d3   odd-sq  printed  stable  flag\n",
                    );
                    for r in &rows {
                        s.push_str(&format!(
                            "{:<4} {:<7} {:<7} {:<7} {:<7} {:<8} {:<7} {}\n",
                            r.n,
                            r.enum_count,
                            r.grosswald_count,
                            r.d1 as i64 - r.d3 as i64,
                            r.odd_square_count,
                            r.theorem_formula_value,
                            r.stable_dim,
                            if r.mismatch { "MISMATCH" } else { "" }
                        ));
                    }
                    Rendered::Raw(s)
                }
            };
            emit(&rendered, output)
        }

        Command::PadicCatalog {
            n,
            p_mod_4,
            format,
            output,
        } => {
            if n == 0 {
                return Err("n must be at least 1".into());
            }
            let class = match p_mod_4 {
                None => None,
                Some(1) => Some(PMod4::One),
                Some(3) => Some(PMod4::Three),
                Some(x) => return Err(format!("--p-mod-4 must be 1 or 3, got {x}")),
            };
            let catalog = lusztig_core::padic::catalog_padic_lusztig(n);
            let doc = match class {
                Some(c) => {
                    let dists = lusztig_distributions(n, c);
                    json!({
                        "n": n,
                        "p_mod_4": c.value(),
                        "stable_subspace_dim": stable_subspace_dim(n),
                        "distributions": dists.iter().map(|d| d.to_json()).collect::<Vec<_>>(),
                    })
                }
                None => json!({
                    "n": n,
                    "stable_subspace_dim": stable_subspace_dim(n),
                    "descriptors": catalog.iter().map(|d| d.to_json()).collect::<Vec<_>>(),
                }),
            };
            let rendered = match format {
                Format::Json => Rendered::Json(doc),
                Format::Text => {
                    let mut s = format!(
                        "p-adic Lusztig functions on sp_{}: {} up to conjugacy\n",
                        2 * n,
                        catalog.len()
                    );
                    for d in &catalog {
                        s.push_str(&format!(
                            "vertex {}: deltas ({}, {})\n",
                            d.vertex.index, d.deltas.0, d.deltas.1
                        ));
                    }
                    s.push_str(&format!("stable subspace dim: {}\n", stable_subspace_dim(n)));
                    Rendered::Raw(s)
                }
                Format::Csv => return Err("csv is not supported for padic-catalog".into()),
            };
            emit(&rendered, output)
        }

        Command::Hilbert {
            a,
            b,
            p,
            format,
            output,
        } => {
            let spec = field(p)?;
            let ca = PadicSquareClass::parse(&a)
                .ok_or_else(|| format!("unknown square class {a:?}; use 1, eps, pi, eps_pi"))?;
            let cb = PadicSquareClass::parse(&b)
                .ok_or_else(|| format!("unknown square class {b:?}; use 1, eps, pi, eps_pi"))?;
            let symbol = lusztig_core::qforms::hilbert_symbol(ca, cb, &spec);
            let doc = json!({
                "a": ca.label(),
                "b": cb.label(),
                "p": p,
                "symbol": symbol.value(),
            });
            let rendered = match format {
                Format::Json => Rendered::Json(doc),
                Format::Text => Rendered::Raw(format!("({}, {}) = {}\n", ca, cb, symbol)),
                Format::Csv => return Err("csv is not supported for hilbert".into()),
            };
            emit(&rendered, output)
        }

        Command::NormalizeForm {
            entries,
            p,
            format,
            output,
        } => {
            let spec = field(p)?;
            let parsed: Vec<PadicSquareClass> = entries
                .split(',')
                .map(|s| {
                    PadicSquareClass::parse(s.trim())
                        .ok_or_else(|| format!("unknown square class {s:?}; use 1, eps, pi, eps_pi"))
                })
                .collect::<Result<_, _>>()?;
            let cls = classify_diagonal_padic(&parsed, &spec).map_err(|e| e.to_string())?;
            let classes = enumerate_padic_classes(cls.dim, &spec).map_err(|e| e.to_string())?;
            let (_, rep) = classes
                .into_iter()
                .find(|(c, _)| *c == cls)
                .expect("every class of dim <= 4 has a representative");
            let doc = json!({
                "dim": cls.dim,
                "disc": cls.disc.label(),
                "hasse": cls.hasse.value(),
                "normal_form": rep.iter().map(|e| e.label()).collect::<Vec<_>>(),
            });
            let rendered = match format {
                Format::Json => Rendered::Json(doc),
                Format::Text => Rendered::Raw(format!(
                    "{}\nnormal form: diag({})\n",
                    cls,
                    rep.iter().map(|e| e.label()).collect::<Vec<_>>().join(", ")
                )),
                Format::Csv => return Err("csv is not supported for normalize-form".into()),
            };
            emit(&rendered, output)
        }
    }
}
