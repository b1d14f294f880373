//! Command-line front end. [`run`] returns the process exit code: 0 on
//! success, 2 when a check ran but its relations fail, 1 on errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::catalog::{clifford_rep, fuzzy_sphere, fuzzy_torus, su2_normal, NamedRep};
use crate::dmsa::{check_sphere_constraint, membrane_check, tensor, MembraneParams, Rep};
use crate::liealg::{sl3_dmsa, sym_power_rep};
use crate::matkernel::{c, commutant_decompose, C64};
use crate::ncpoly::{build_reduction_system, check_overlap_ambiguity, count_basis, parse_expr};
use crate::par::Exec;
use crate::repfile::RepFile;
use crate::repgraph::{classify_rep, components, irreducibility_verdict, rep_graph, to_dot};
use crate::unitary::{classify, UnitaryVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAILED_CHECK: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dmsa", version, about = "Discrete minimal surface algebras: rewriting, representations, graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    FuzzySphere,
    FuzzyTorus,
    NormalSu2,
    Clifford,
    Sl3Sym,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a catalog representation and write it as a rep file.
    Construct {
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        thetap: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        z_re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        z_im: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        w_re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        w_im: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = 4)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        q: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi1: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi2: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the eigenrelations of one or more rep files.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 1e-12)]
        hermitian_tol: f64,
        /// Verify files one after another instead of concurrently.
        #[arg(long)]
        sequential: bool,
    },
    /// Representation graph of a d = 4 rep file, written as DOT.
    Graph {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, env = "DMSA_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Tensor product of two rep files.
    Tensor { first: PathBuf, second: PathBuf, #[arg(long)] out: PathBuf },
    /// Split a rep file into irreducible subspaces.
    Decompose {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, env = "DMSA_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Unitary representations with a single eigenvalue.
    ClassifyUnitary {
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Directory for rep files and DOT graphs of the emitted representations.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Normal form of an expression in x1..xd.
    Reduce {
        #[arg(long)]
        d: u8,
        #[arg(long)]
        expr: String,
    },
    /// Number of irreducible words of a given degree.
    CountBasis {
        #[arg(long)]
        d: u8,
        #[arg(long)]
        degree: usize,
    },
    /// Resolve the overlap ambiguity of the reduction system.
    CheckAmbiguity {
        #[arg(long)]
        d: u8,
    },
    /// Residuals of the time-dependent membrane ansatz.
    MembraneCheck {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long)]
        hbar: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long)]
        h: f64,
    },
    /// Whether the squares of the generators sum to a multiple of the identity.
    SphereConstraint {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

/// `%.12g`: 12 significant digits, trailing zeros dropped.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..12).contains(&exp) {
        let mant = trim_zeros(mant);
        return format!("{mant}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn fmt_c(z: C64) -> String {
    let im = fmt_g(z.im);
    if im.starts_with('-') {
        format!("{}{}i", fmt_g(z.re), im)
    } else {
        format!("{}+{}i", fmt_g(z.re), im)
    }
}

fn fmt_list(xs: &[f64]) -> String {
    format!("({})", xs.iter().map(|x| fmt_g(*x)).collect::<Vec<_>>().join(", "))
}

type CliResult = Result<i32, Box<dyn std::error::Error>>;

fn load(path: &Path, hermitian_tol: f64) -> Result<NamedRep, Box<dyn std::error::Error>> {
    Ok(RepFile::read(path)?.to_named(hermitian_tol)?)
}

fn save(nr: &NamedRep, path: &Path, out: &mut dyn Write) -> CliResult {
    RepFile::from_named(nr).write(path)?;
    writeln!(out, "wrote {} ({}, d = {}, n = {})", path.display(), nr.name, nr.d(), nr.rep.size())?;
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Construct { kind, n, theta, thetap, z_re, z_im, w_re, w_im, a, p, q, phi1, phi2, out: path } => {
            let nr = match kind {
                Kind::FuzzySphere => fuzzy_sphere(n, theta)?,
                Kind::FuzzyTorus => fuzzy_torus(n, theta, thetap)?,
                Kind::NormalSu2 => su2_normal(n, c(z_re, z_im), c(w_re, w_im), a)?,
                Kind::Clifford => clifford_rep(p, q)?,
                Kind::Sl3Sym => {
                    let rep = sym_power_rep(n)?;
                    let g = sl3_dmsa(theta, thetap, phi1, phi2, &rep);
                    let [x1, x2, x3, x4] = g.hermitian_coordinates();
                    NamedRep {
                        name: format!("sl3_sym(n={n}, theta={theta}, thetap={thetap}, phi1={phi1}, phi2={phi2})"),
                        rep: Rep::with_tolerance(vec![x1, x2, x3, x4], 1e-10)?,
                        expected_spectrum: Some(vec![0.5, 0.5, 1.0 / 12.0, 1.0 / 12.0]),
                        notes: Vec::new(),
                    }
                }
            };
            save(&nr, &path, out)
        }
        Command::Verify { files, tol, hermitian_tol, sequential } => {
            let named = files.iter().map(|f| load(f, hermitian_tol)).collect::<Result<Vec<_>, _>>()?;
            let exec = if sequential { Exec::Sequential } else { Exec::default() };
            // Reports come back in input order whatever the completion order.
            let reports = crate::par::map(exec, &named, |nr| nr.verify(tol));
            let mut all_ok = true;
            for ((path, nr), report) in files.iter().zip(&named).zip(reports) {
                all_ok &= report.verdict;
                if files.len() > 1 {
                    writeln!(out, "{}:", path.display())?;
                }
                writeln!(out, "name = {}", nr.name)?;
                writeln!(out, "mu = {}", fmt_list(&report.mu))?;
                writeln!(out, "residuals = {}", fmt_list(&report.residuals))?;
                if let Some(expected) = &nr.expected_spectrum {
                    let worst = report.mu.iter().zip(expected).map(|(m, e)| (m - e).abs()).fold(0.0, f64::max);
                    writeln!(out, "expected mu = {} (max deviation {})", fmt_list(expected), fmt_g(worst))?;
                }
                for note in &report.notes {
                    writeln!(out, "note: {note}")?;
                }
                writeln!(out, "verdict: {}", if report.verdict { "pass" } else { "fail" })?;
            }
            Ok(if all_ok { EXIT_OK } else { EXIT_FAILED_CHECK })
        }
        Command::Graph { file, out: path, eps, tol, seed } => {
            let nr = load(&file, 1e-12)?;
            let (l, t) = nr.rep.pair()?;
            let g = rep_graph(&l, &t, eps, tol, seed)?;
            to_dot(&g, &path)?;
            let class = classify_rep(&l, &t, tol)?;
            let verdict = irreducibility_verdict(&l, &t, tol, seed)?;
            writeln!(out, "vertices = {}", g.n())?;
            writeln!(out, "edges = {}", g.edge_count())?;
            for (i, z) in g.labels.iter().enumerate() {
                writeln!(out, "label v{} = {}", i + 1, fmt_c(*z))?;
            }
            for &(a, b) in &g.edges {
                writeln!(out, "edge v{} -> v{}", a + 1, b + 1)?;
            }
            writeln!(out, "components = {}", components(&g).len())?;
            writeln!(
                out,
                "class: diagonalizable={} non_degenerate={} semi_normal={} normal={} unitary={}",
                class.diagonalizable, class.non_degenerate, class.semi_normal, class.normal, class.unitary
            )?;
            writeln!(out, "irreducibility: {:?} via {:?}", verdict.verdict, verdict.method)?;
            writeln!(out, "seed = {seed}")?;
            for note in &g.notes {
                writeln!(out, "note: {note}")?;
            }
            writeln!(out, "wrote {}", path.display())?;
            Ok(EXIT_OK)
        }
        Command::Tensor { first, second, out: path } => {
            let (a, b) = (load(&first, 1e-12)?, load(&second, 1e-12)?);
            let rep = tensor(&a.rep, &b.rep)?;
            let expected = match (&a.expected_spectrum, &b.expected_spectrum) {
                (Some(x), Some(y)) if x.iter().zip(y).all(|(p, q)| (p - q).abs() <= 1e-12) => Some(x.clone()),
                _ => None,
            };
            let nr = NamedRep { name: format!("{} (x) {}", a.name, b.name), rep, expected_spectrum: expected, notes: Vec::new() };
            save(&nr, &path, out)
        }
        Command::Decompose { file, tol, seed } => {
            let nr = load(&file, 1e-12)?;
            let mut gens = Vec::with_capacity(2 * nr.d());
            for m in nr.rep.matrices() {
                gens.push(m.clone());
                gens.push(m.adjoint());
            }
            let parts = commutant_decompose(&gens, tol, seed)?;
            writeln!(out, "subspaces = {}", parts.len())?;
            for (k, q) in parts.iter().enumerate() {
                let report = nr.rep.restrict(q).matrices().to_vec();
                let sub = if nr.rep.is_hermitian() { Rep::with_tolerance(report, 1e-9)? } else { Rep::non_hermitian(report)? };
                let v = crate::dmsa::verify(&sub, 1e-10);
                writeln!(
                    out,
                    "block {}: dim = {}, mu = {}, verdict: {}",
                    k + 1,
                    q.ncols(),
                    fmt_list(&v.mu),
                    if v.verdict { "pass" } else { "fail" }
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::ClassifyUnitary { mu, dim, tol, out_dir } => {
            let res = classify(mu, dim, tol)?;
            match res.verdict {
                UnitaryVerdict::NoUnitary => writeln!(out, "no unitary representation (mu outside [0,4])")?,
                UnitaryVerdict::AllOneDimensional => writeln!(out, "all irreducible unitary representations are 1-dimensional")?,
                UnitaryVerdict::FourDimTypes => writeln!(out, "irreducible unitary representations are 4-dimensional; {} graph types", res.graphs.len())?,
                UnitaryVerdict::TorusFamily if res.reps.is_empty() => writeln!(out, "no irreducible unitary representation of size {dim}")?,
                UnitaryVerdict::TorusFamily => writeln!(out, "torus family: {} representation(s) of size {dim}", res.reps.len())?,
            }
            if let Some(beta) = res.beta {
                writeln!(out, "beta = {}", fmt_g(beta))?;
            }
            if let Some(dir) = &out_dir {
                std::fs::create_dir_all(dir)?;
            }
            for (k, (r, g)) in res.reps.iter().zip(&res.graphs).enumerate() {
                writeln!(out, "rep {}: {} (size {}, {} edges, {} component(s))", k + 1, r.name, r.lambda.nrows(), g.edge_count(), components(g).len())?;
                if let Some(dir) = &out_dir {
                    let nr = NamedRep {
                        name: r.name.clone(),
                        rep: Rep::from_pair(&r.lambda, &r.t)?,
                        expected_spectrum: Some(vec![mu; 4]),
                        notes: Vec::new(),
                    };
                    RepFile::from_named(&nr).write(&dir.join(format!("rep{}.json", k + 1)))?;
                    to_dot(g, &dir.join(format!("rep{}.dot", k + 1)))?;
                }
            }
            for note in &res.notes {
                writeln!(out, "note: {note}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Reduce { d, expr } => {
            let sys = build_reduction_system(d)?;
            let p = parse_expr(&expr, d)?;
            let r = sys.reduce_counted(&p)?;
            writeln!(out, "{}", r.normal_form)?;
            writeln!(out, "steps = {}", r.steps)?;
            Ok(EXIT_OK)
        }
        Command::CountBasis { d, degree } => {
            writeln!(out, "{}", count_basis(d, degree)?)?;
            Ok(EXIT_OK)
        }
        Command::CheckAmbiguity { d } => {
            let report = check_overlap_ambiguity(&build_reduction_system(d)?)?;
            if report.resolvable {
                writeln!(out, "resolvable: true (A = 0)")?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "resolvable: false (A = {})", report.difference)?;
                Ok(EXIT_FAILED_CHECK)
            }
        }
        Command::MembraneCheck { file, a, b, hbar, t, h } => {
            let nr = load(&file, 1e-12)?;
            let mu = nr.verify(1e-10).mu;
            let params = MembraneParams::paired(a, b, hbar, &mu)?;
            let m = membrane_check(&nr.rep, &params, t, h)?;
            writeln!(out, "eom_residual = {}", fmt_g(m.eom_residual))?;
            writeln!(out, "constraint_residual = {}", fmt_g(m.constraint_residual))?;
            writeln!(out, "generator_residual = {}", fmt_g(m.generator_residual))?;
            if a == 0.0 {
                writeln!(out, "note: a = 0 makes the ansatz identically zero")?;
            }
            Ok(EXIT_OK)
        }
        Command::SphereConstraint { file, tol } => {
            let nr = load(&file, 1e-12)?;
            let sc = check_sphere_constraint(&nr.rep, tol);
            writeln!(out, "nu = {}", fmt_g(sc.nu))?;
            writeln!(out, "residual = {}", fmt_g(sc.residual))?;
            writeln!(out, "cross_check = {}", fmt_g(sc.cross_check))?;
            writeln!(out, "holds: {}", sc.holds)?;
            Ok(if sc.holds { EXIT_OK } else { EXIT_FAILED_CHECK })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("dmsa").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn twelve_digit_format() {
        assert_eq!(fmt_g(2.0), "2");
        assert_eq!(fmt_g(0.5), "0.5");
        assert_eq!(fmt_g(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g(-1234.5), "-1234.5");
        assert_eq!(fmt_g(1e-7), "1e-07");
        assert_eq!(fmt_g(2.5e13), "2.5e+13");
        assert_eq!(fmt_g(999999999999.9), "1e+12");
        assert_eq!(fmt_g(0.0001), "0.0001");
        assert_eq!(fmt_c(c(1.0, -0.5)), "1-0.5i");
        assert_eq!(fmt_c(c(0.0, 0.0)), "0+0i");
    }

    #[test]
    fn construct_then_verify() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("s.json");
        let f = f.to_str().unwrap();
        let (code, _, _) = call(&["construct", "fuzzy-sphere", "--n", "4", "--theta", "0", "--out", f]);
        assert_eq!(code, 0);
        let (code, out, _) = call(&["verify", f]);
        assert_eq!(code, 0);
        assert!(out.contains("mu = (2, 2, 2, 2)"), "{out}");
        let (_, again, _) = call(&["verify", f]);
        assert_eq!(out, again);
    }

    #[test]
    fn failing_verification_exits_two() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("r.json");
        let mut rng = crate::matkernel::rng_from_seed(1);
        let mats = (0..4).map(|_| crate::matkernel::random_hermitian(3, &mut rng)).collect();
        let nr = NamedRep { name: "random".into(), rep: Rep::new(mats).unwrap(), expected_spectrum: None, notes: vec![] };
        RepFile::from_named(&nr).write(&f).unwrap();
        assert_eq!(call(&["verify", f.to_str().unwrap()]).0, 2);
    }

    #[test]
    fn algebra_commands() {
        assert_eq!(call(&["check-ambiguity", "--d", "4"]), (0, "resolvable: true (A = 0)\n".into(), String::new()));
        assert_eq!(call(&["count-basis", "--d", "4", "--degree", "3"]).1, "60\n");
        let (code, out, _) = call(&["reduce", "--d", "2", "--expr", "x2 x2 x1"]);
        assert_eq!(code, 0);
        assert!(out.lines().count() == 2 && !out.starts_with("x2 x2 x1\n"));
        let (code, _, err) = call(&["reduce", "--d", "2", "--expr", "x3"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn unitary_command() {
        let (code, out, _) = call(&["classify-unitary", "--mu", "5", "--dim", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next().unwrap(), "no unitary representation (mu outside [0,4])");
        let dir = tempfile::tempdir().unwrap();
        let (code, out, _) = call(&["classify-unitary", "--mu", "2", "--dim", "4", "--out-dir", dir.path().to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.contains("2 graph types"));
        assert!(dir.path().join("rep2.dot").exists());
        let (code, _, _) = call(&["verify", dir.path().join("rep1.json").to_str().unwrap()]);
        assert_eq!(code, 0);
    }

    #[test]
    fn graph_tensor_decompose_membrane_sphere() {
        let dir = tempfile::tempdir().unwrap();
        let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
        assert_eq!(call(&["construct", "fuzzy-torus", "--n", "3", "--out", &p("t.json")]).0, 0);
        let (code, out, _) = call(&["graph", &p("t.json"), "--out", &p("t.dot"), "--seed", "7"]);
        assert_eq!(code, 0);
        assert!(out.contains("edges = 3") && out.contains("Irreducible via GraphConnected"));
        assert_eq!(std::fs::read_to_string(p("t.dot")).unwrap().matches("->").count(), 3);

        assert_eq!(call(&["construct", "fuzzy-sphere", "--n", "2", "--theta", "0.4", "--out", &p("s.json")]).0, 0);
        assert_eq!(call(&["tensor", &p("s.json"), &p("s.json"), "--out", &p("ss.json")]).0, 0);
        let (code, out, _) = call(&["verify", &p("ss.json")]);
        assert_eq!(code, 0, "{out}");
        let (code, out, _) = call(&["decompose", &p("ss.json")]);
        assert_eq!(code, 0);
        assert!(out.starts_with("subspaces = 2"), "{out}");

        let (code, out, _) = call(&["membrane-check", &p("s.json"), "--a", "1", "--b", "0", "--hbar", "1", "--t", "0.2", "--h", "0.001"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("eom_residual"));
        let (code, out, _) = call(&["sphere-constraint", &p("t.json")]);
        assert_eq!(code, 0);
        assert!(out.contains("nu = 2"));
        assert_eq!(call(&["construct", "sl3-sym", "--n", "2", "--out", &p("sl3.json")]).0, 0);
        assert_eq!(call(&["verify", &p("sl3.json")]).0, 0);
        assert_eq!(call(&["construct", "clifford", "--p", "2", "--q", "2", "--out", &p("c.json")]).0, 0);
        assert_eq!(call(&["verify", &p("c.json")]).0, 0);
    }

    #[test]
    fn usage_errors() {
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 1);
        assert!(!err.is_empty());
        assert_eq!(call(&["--help"]).0, 0);
        let (code, _, err) = call(&["verify", "/nonexistent/x.json"]);
        assert_eq!(code, 1);
        assert!(err.contains("io error"));
    }
}
