//! The `trivhom` command line: one job per invocation, a deterministic text
//! report on stdout (and optionally in a file), timings on stderr.
//!
//! Exit codes: 0 when every asserted property holds, 1 when one fails, 2 on
//! malformed or unusable input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::abgrp::Ring;
use crate::accover::{check_multiplicative, direct_product, pull_back};
use crate::complex::{cohomology_table, StableComplex, StandardComplex};
use crate::error::{Error, Result};
use crate::fincat::{check_a_category, check_bi_interior, check_subcategory, parse_category, serialize_category, MarkedCat};
use crate::fixtures::{bundled_categories, bundled_functors, bundled_group_files};
use crate::functorlib::{parse_functor, serialize_functor, ContraFun};
use crate::homotopy::{check_section, direct_product_system, validate_system, HomotopyOperator};
use crate::mackey::{
    center_coefficients, constant_coefficients, mackey_system, parse_group_data, transporter_categories, verify_mackey,
    CoefficientKind,
};

#[derive(Parser, Debug)]
#[command(name = "trivhom", version, about = "Exact cohomology of functors on finite categories and explicit contracting homotopies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Coefficient ring: `Z` or `Zmod:p^k`.
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Highest cohomological degree to compute or verify.
    #[arg(long, global = true, default_value_t = 2)]
    pub max_degree: usize,
    /// Directory against which relative input paths are resolved, and the
    /// output directory of `export-fixtures`.
    #[arg(long, global = true)]
    pub fixture_dir: Option<PathBuf>,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a category (and optionally a functor on it) and check all axioms.
    Validate {
        category: PathBuf,
        #[arg(long)]
        functor: Option<PathBuf>,
    },
    /// Check that every endomorphism is an isomorphism.
    CheckOrdered { category: PathBuf },
    /// Check that the `A` marking makes the category an `A`-category.
    CheckACategory { category: PathBuf },
    /// Check multiplicativity, epimorphisms and all pairwise pull-backs.
    CheckMult { category: PathBuf },
    /// The direct product of two objects in the additive cover.
    Product { category: PathBuf, r: String, t: String },
    /// The pull-back of two morphisms with a common target.
    Pullback { category: PathBuf, alpha: String, beta: String },
    /// `H^n_G(B, a)` for `n ≤ max-degree`, with `G` the category's marking.
    Cohomology { category: PathBuf, functor: PathBuf },
    /// The homotopy identity and vanishing for the direct-product system.
    VerifyHomotopy {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        functor: PathBuf,
        /// The final object `P` of `A` (found automatically by default).
        #[arg(long)]
        p: Option<String>,
    },
    /// The transporter-category pipeline for a group file.
    VerifyMackey { group: PathBuf },
    /// Write the bundled categories, functors and group files.
    ExportFixtures,
}

/// The outcome of one job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

struct Report {
    text: String,
    failed: bool,
}

impl Report {
    fn new() -> Report {
        Report { text: String::new(), failed: false }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    /// A PASS/FAIL line; the first witness is shown on failure.
    fn check(&mut self, label: &str, witnesses: &[String], detail: &str) {
        match witnesses.first() {
            None => self.line(format!("PASS {label}: {detail}")),
            Some(w) => {
                self.failed = true;
                self.line(format!("FAIL {label}: {w}"));
            }
        }
    }
}

fn resolve(base: &Option<PathBuf>, p: &Path) -> PathBuf {
    match base {
        Some(dir) if p.is_relative() && !p.exists() => dir.join(p),
        _ => p.to_path_buf(),
    }
}

fn read(base: &Option<PathBuf>, p: &Path) -> Result<String> {
    let path = resolve(base, p);
    std::fs::read_to_string(&path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))
}

fn load_category(cli: &Cli, p: &Path) -> Result<MarkedCat> {
    parse_category(&read(&cli.fixture_dir, p)?)
}

fn load_functor(cli: &Cli, m: &MarkedCat, p: &Path) -> Result<ContraFun> {
    let f = parse_functor(&m.cat, &read(&cli.fixture_dir, p)?)?;
    if let Some(w) = f.validate(&m.cat).into_iter().next() {
        return Err(Error::property("the functor is functorial", w));
    }
    if let Some(r) = ring(cli)? {
        if let Some(q) = m.cat.objects().find(|&q| !r.admits(f.obj(q))) {
            return Err(Error::input(format!("F({}) is not a module over {r}", m.cat.obj_name(q))));
        }
    }
    Ok(f)
}

fn ring(cli: &Cli) -> Result<Option<Ring>> {
    cli.ring.as_deref().map(Ring::parse).transpose()
}

fn marking_violations(m: &MarkedCat) -> Vec<String> {
    let mut v: Vec<String> = m.cat.validate();
    v.extend(check_subcategory(&m.cat, &m.a, false).into_iter().map(|w| format!("A: {w}")));
    v.extend(check_subcategory(&m.cat, &m.g, true).into_iter().map(|w| format!("G: {w}")));
    v.extend(check_bi_interior(&m.cat, &m.interior, &m.cointerior));
    v
}

fn header(r: &mut Report, m: &MarkedCat) {
    r.line(format!("category: {} objects, {} morphisms", m.cat.num_objects(), m.cat.num_morphisms()));
}

fn execute(cli: &Cli, r: &mut Report) -> Result<()> {
    match &cli.command {
        Command::Validate { category, functor } => {
            let m = load_category(cli, category)?;
            header(r, &m);
            r.check("category", &marking_violations(&m), "composition table and markings");
            if let Some(fp) = functor {
                let f = parse_functor(&m.cat, &read(&cli.fixture_dir, fp)?)?;
                r.check("functor", &f.validate(&m.cat), "functorial");
                if let Some(ring) = ring(cli)? {
                    let bad: Vec<String> = m
                        .cat
                        .objects()
                        .filter(|&q| !ring.admits(f.obj(q)))
                        .map(|q| format!("F({}) is not a module over {ring}", m.cat.obj_name(q)))
                        .collect();
                    r.check("ring", &bad, &ring.to_string());
                }
            }
        }
        Command::CheckOrdered { category } => {
            let m = load_category(cli, category)?;
            header(r, &m);
            let w: Vec<String> =
                m.cat.ordered_witness().map(|x| format!("{} is a non-invertible endomorphism", m.cat.mor_name(x))).into_iter().collect();
            r.check("ordered", &w, "every endomorphism is invertible");
        }
        Command::CheckACategory { category } => {
            let m = load_category(cli, category)?;
            header(r, &m);
            let rep = check_a_category(&m.cat, &m.a);
            r.check("A-category", &rep.violations, &format!("|A| = {}", m.a.len()));
            for x in m.cat.morphisms() {
                if let Some((i, a)) = rep.factorization[x.0] {
                    r.line(format!("  {} = {} ∘ {}", m.cat.mor_name(x), m.cat.mor_name(i), m.cat.mor_name(a)));
                }
            }
        }
        Command::CheckMult { category } => {
            let m = load_category(cli, category)?;
            header(r, &m);
            let rep = check_multiplicative(&m.cat);
            let epi: Vec<String> = if rep.all_epi { Vec::new() } else { rep.violations.clone() };
            r.check("epimorphisms", &epi, "every morphism is epi");
            if rep.all_epi {
                r.check("partition", &rep.violations, &format!("{} (α, T) cases", rep.checked));
                let mut v = Vec::new();
                let mut cones = 0;
                for q in m.cat.objects() {
                    for &a in m.cat.incoming(q) {
                        for &b in m.cat.incoming(q) {
                            match pull_back(&m.cat, a, b) {
                                Ok(pb) => cones += pb.check_universal(&m.cat)?,
                                Err(e) => v.push(format!("({}, {}): {e}", m.cat.mor_name(a), m.cat.mor_name(b))),
                            }
                        }
                    }
                }
                r.check("pull-backs", &v, &format!("{cones} single-object cones"));
            }
        }
        Command::Product { category, r: ro, t: to } => {
            let m = load_category(cli, category)?;
            let obj = |n: &str| m.cat.obj_by_name(n).ok_or_else(|| Error::input(format!("unknown object `{n}`")));
            let p = direct_product(&m.cat, obj(ro)?, obj(to)?)?;
            r.line(format!("{ro} × {to} = {}", p.obj.describe(&m.cat)));
            for s in &p.triples {
                r.line(format!(
                    "  {} <- {} -> {}",
                    m.cat.mor_name(s.to_r),
                    m.cat.obj_name(s.apex),
                    m.cat.mor_name(s.to_t)
                ));
            }
            let cones = p.check_universal(&m.cat)?;
            r.check("universal", &[], &format!("{cones} single-object cones"));
        }
        Command::Pullback { category, alpha, beta } => {
            let m = load_category(cli, category)?;
            let mor = |n: &str| m.cat.mor_by_name(n).ok_or_else(|| Error::input(format!("unknown morphism `{n}`")));
            let pb = pull_back(&m.cat, mor(alpha)?, mor(beta)?)?;
            r.line(format!("pull-back of ({alpha}, {beta}) = {}", pb.obj.describe(&m.cat)));
            for &i in &pb.indices {
                let s = pb.product.triples[i];
                r.line(format!(
                    "  {} <- {} -> {}",
                    m.cat.mor_name(s.to_r),
                    m.cat.obj_name(s.apex),
                    m.cat.mor_name(s.to_t)
                ));
            }
            let cones = pb.check_universal(&m.cat)?;
            r.check("universal", &[], &format!("{cones} single-object cones"));
        }
        Command::Cohomology { category, functor } => {
            let m = load_category(cli, category)?;
            let f = load_functor(cli, &m, functor)?;
            header(r, &m);
            let top = cli.max_degree + 1;
            let cap = top.max(4);
            let std = StandardComplex::new(&m.cat, &f, top + 1, cap + 1)?;
            let mut dd = Vec::new();
            for n in 0..=cli.max_degree {
                if let Err(e) = std.check_dd(n) {
                    dd.push(e.to_string());
                }
            }
            r.check("d∘d = 0", &dd, &format!("degrees 0..={}", cli.max_degree));
            let sc = StableComplex::new(&m.cat, &m.g, &f, top, cap)?;
            r.text.push_str(&cohomology_table(&sc, cli.max_degree)?);
        }
        Command::VerifyHomotopy { system, functor, p } => {
            let m = load_category(cli, system)?;
            let f = load_functor(cli, &m, functor)?;
            header(r, &m);
            let pobj = match p {
                Some(n) => m.cat.obj_by_name(n).ok_or_else(|| Error::input(format!("unknown object `{n}`")))?,
                None => m
                    .cat
                    .final_object(Some(&m.a))
                    .ok_or_else(|| Error::precondition("A has a final object", "none found"))?,
            };
            let d = direct_product_system(&m, pobj, &f)?;
            r.check("system", &validate_system(&d.system), &format!("P = {}", m.cat.obj_name(pobj)));
            r.check("section", &check_section(&d.system, &d.functor, &d.h, &d.theta)?, "θ natural and θ∘Δ_H = id");
            if r.failed {
                return Ok(());
            }
            let top = cli.max_degree + 1;
            let op = HomotopyOperator::new(&d.system, &d.functor, &d.h, &d.theta, top, top.max(4))?;
            for n in 0..cli.max_degree {
                let c = op.verify_contraction(n)?;
                r.check(&format!("contraction degree {n}"), &c.failures, &format!("{} generators", c.checked));
            }
            for n in 1..=cli.max_degree {
                let h = op.complex.cohomology(n)?;
                let w: Vec<String> = if h.is_trivial() { Vec::new() } else { vec![format!("H^{n} = {}", h.iso_type())] };
                r.check(&format!("vanishing degree {n}"), &w, "H^n = 0");
            }
        }
        Command::VerifyMackey { group } => {
            let (gd, kind) = parse_group_data(&read(&cli.fixture_dir, group)?)?;
            let ring = ring(cli)?.unwrap_or(Ring::Modular { p: gd.prime, k: 1 });
            r.line(format!("|G| = {}, |P| = {}, |Ω| = {}, ring {ring}", gd.g.order(), gd.p.len(), gd.omega));
            let tr = transporter_categories(&gd, None)?;
            let ms = mackey_system(&tr, None)?;
            let coeffs = match kind {
                CoefficientKind::Constant => constant_coefficients(&ms, &ring),
                CoefficientKind::Center => center_coefficients(&ms)?,
            };
            let rep = verify_mackey(&ms, &coeffs, &ring, cli.max_degree)?;
            r.text.push_str(&rep.render());
            r.failed |= !rep.ok();
        }
        Command::ExportFixtures => {
            let dir = cli.fixture_dir.clone().unwrap_or_else(|| PathBuf::from("fixtures"));
            let written = export_fixtures(&dir)?;
            r.line(format!("wrote {written} files to {}", dir.display()));
        }
    }
    Ok(())
}

/// Writes every bundled fixture below `dir`; returns the number of files.
pub fn export_fixtures(dir: &Path) -> Result<usize> {
    let io = |e: std::io::Error| Error::input(format!("cannot write fixtures: {e}"));
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut n = 0;
    let cats = bundled_categories();
    for (name, m) in &cats {
        std::fs::write(dir.join(format!("{name}.cat")), serialize_category(m)).map_err(io)?;
        n += 1;
    }
    for f in bundled_functors() {
        let m = &cats.iter().find(|c| c.0 == f.category).expect("functor category is bundled").1;
        std::fs::write(dir.join(format!("{}.{}.fun", f.category, f.name)), serialize_functor(&m.cat, &f.functor)).map_err(io)?;
        n += 1;
    }
    for (name, text) in bundled_group_files() {
        std::fs::write(dir.join(format!("{name}.grp")), text).map_err(io)?;
        n += 1;
    }
    Ok(n)
}

/// Runs one job from command-line arguments (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, report: e.to_string() };
        }
    };
    let start = Instant::now();
    let mut r = Report::new();
    let code = match execute(&cli, &mut r) {
        Ok(()) => i32::from(r.failed),
        Err(e) => {
            let _ = writeln!(r.text, "ERROR {e}");
            e.exit_code()
        }
    };
    eprintln!("elapsed {:.3} s", start.elapsed().as_secs_f64());
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, &r.text) {
            eprintln!("cannot write report {}: {e}", path.display());
            return Outcome { code: 2, report: r.text };
        }
    }
    Outcome { code, report: r.text }
}
