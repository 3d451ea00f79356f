use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use khoco::exec::{DeadlineBudget, RayonExecutor};
use khoco::verify::{self, Ctx, Status};
use khoco::{load_diagram, IoError};
use khoco_core::annular::annular_distance;
use khoco_core::distance::{css_distance, min_weight_nontrivial, CssOptions};
use khoco_core::khovanov::build_complex;
use khoco_core::products::{closed_form_params, family_cross_check, Family};
use khoco_core::sequences::Comparator;
use khoco_core::sl3::{sl3_unknot_params, Tier};
use khoco_core::{Budget, CodeReport, Convention, GFVector, LinkDiagram, Method};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "khoco", version, about = "CSS codes from Khovanov-type chain complexes")]
struct Cli {
    /// Emit CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Raw,
    Shifted,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Raw => Convention::Raw,
            ConventionArg::Shifted => Convention::Shifted,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    ExhaustiveKernel,
    SupportGrowth,
    InformationSet,
    BruteOracle,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::ExhaustiveKernel => Method::ExhaustiveKernel,
            MethodArg::SupportGrowth => Method::SupportGrowth,
            MethodArg::InformationSet => Method::InformationSet,
            MethodArg::BruteOracle => Method::BruteOracle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqArg {
    HopfC,
    IteratedHopf,
    Sl3,
    TreeUnlink,
    BranchedUnknot,
}

impl From<SeqArg> for Comparator {
    fn from(s: SeqArg) -> Self {
        match s {
            SeqArg::HopfC => Comparator::HopfC,
            SeqArg::IteratedHopf => Comparator::IteratedHopf,
            SeqArg::Sl3 => Comparator::Sl3,
            SeqArg::TreeUnlink => Comparator::TreeUnlink,
            SeqArg::BranchedUnknot => Comparator::BranchedUnknot,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Sl3Target {
    Unknot,
}

#[derive(Subcommand)]
enum Cmd {
    /// CSS parameters (n, k, d̂, d̂-dual, d) with witnesses.
    Params {
        diagram: PathBuf,
        #[arg(long)]
        reduced: bool,
        /// Homological degree; every degree with homology when omitted.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i32>,
        #[arg(long, value_enum, default_value = "raw")]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Homological distance d̂ of one degree.
    Distance {
        diagram: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: i32,
        #[arg(long)]
        reduced: bool,
        #[arg(long, value_enum, default_value = "raw")]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Closed-form (n, k, d) of a code family; `--measure` also builds it.
    Family {
        /// iterated-hopf, tree-unlink, branched-unknot, torus-reduced or sl3-unknot
        family: String,
        #[arg(long)]
        l: u64,
        /// Branches of a branched unknot.
        #[arg(long, default_value_t = 1)]
        b: u64,
        /// Degree of a torus-reduced member.
        #[arg(long, default_value_t = 0)]
        r: u64,
        #[arg(long)]
        measure: bool,
    },
    /// sl3 unknot codes.
    Sl3 {
        #[arg(value_enum)]
        target: Sl3Target,
        #[arg(long)]
        l: usize,
        /// 1: closed forms; 2: full complex and search.
        #[arg(long, default_value_t = 1)]
        tier: u8,
    },
    /// Distance of an annular complex at a fixed annular degree.
    Annular {
        diagram: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        adeg: i32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        degree: i32,
    },
    /// Exact terms against their asymptotic comparators.
    Asymptotics {
        #[arg(value_enum)]
        seq: SeqArg,
        #[arg(long, default_value_t = 20)]
        terms: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
    },
    /// Runs the named checks; one JSON line per check.
    VerifyPaper {
        #[arg(long)]
        section: Option<String>,
        #[arg(long)]
        id: Vec<String>,
        /// Lists the checks without running them.
        #[arg(long)]
        list: bool,
    },
}

enum Failure {
    Input(anyhow::Error),
    Check,
    Budget,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.into())
    }
}

impl From<khoco_core::Error> for Failure {
    fn from(e: khoco_core::Error) -> Self {
        Failure::Input(e.into())
    }
}

type Res = Result<(), Failure>;

struct Out {
    csv: bool,
}

impl Out {
    fn json<T: Serialize>(&self, v: &T) -> anyhow::Result<()> {
        writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(v)?)?;
        Ok(())
    }

    fn table(&self, header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<()> {
        let mut w = csv::Writer::from_writer(std::io::stdout());
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

fn budget() -> DeadlineBudget {
    DeadlineBudget::from_env(None)
}

fn stamp(r: &mut CodeReport, b: &DeadlineBudget) {
    r.budget.time_limit_ms = b.limit_ms;
    r.budget.nodes_visited = b.nodes();
}

fn params(out: &Out, d: &LinkDiagram, reduced: bool, degree: Option<i32>, conv: Convention, method: Method) -> Res {
    let exec = RayonExecutor::from_env();
    let opts = CssOptions { reduced, method, convention: conv, check_dual: false };
    let degrees: Vec<i32> = match degree {
        Some(i) => vec![i],
        None => {
            let c = build_complex(d, reduced)?;
            c.degrees().filter(|&i| c.homology_dim(i) > 0).map(|i| c.from_raw(i, conv)).collect()
        }
    };
    let mut reports = Vec::new();
    for i in degrees {
        let b = budget();
        let mut r = css_distance(d, i, opts, &b, &exec)?;
        stamp(&mut r, &b);
        reports.push(r);
    }
    if out.csv {
        let rows: Vec<Vec<String>> = reports
            .iter()
            .map(|r| {
                vec![
                    r.degree.to_string(),
                    r.n.to_string(),
                    r.k.to_string(),
                    opt(&r.d_hat),
                    opt(&r.d_hat_dual),
                    opt(&r.d),
                    r.exact.to_string(),
                ]
            })
            .collect();
        out.table(&["degree", "n", "k", "d_hat", "d_hat_dual", "d", "exact"], &rows)?;
    } else if degree.is_some() {
        out.json(&reports[0])?;
    } else {
        out.json(&reports)?;
    }
    if reports.iter().any(|r| !r.exact) {
        return Err(Failure::Budget);
    }
    Ok(())
}

#[derive(Serialize)]
struct DistanceReport {
    degree: i32,
    convention: Convention,
    n: usize,
    k: usize,
    d_hat: usize,
    witness: GFVector,
    method: Method,
    exact: bool,
}

fn distance(out: &Out, d: &LinkDiagram, degree: i32, reduced: bool, conv: Convention, method: Method) -> Res {
    let exec = RayonExecutor::from_env();
    let c = build_complex(d, reduced)?;
    let raw = c.to_raw(degree, conv);
    let b = budget();
    let o = min_weight_nontrivial(&c, raw, method, &b, &exec)?;
    let r = DistanceReport {
        degree,
        convention: conv,
        n: c.dim(raw),
        k: c.homology_dim(raw),
        d_hat: o.weight,
        witness: o.witness,
        method: o.method,
        exact: o.exact,
    };
    if out.csv {
        out.table(
            &["degree", "n", "k", "d_hat", "exact"],
            &[vec![r.degree.to_string(), r.n.to_string(), r.k.to_string(), r.d_hat.to_string(), r.exact.to_string()]],
        )?;
    } else {
        out.json(&r)?;
    }
    if !r.exact {
        return Err(Failure::Budget);
    }
    Ok(())
}

fn family(out: &Out, name: &str, l: u64, b: u64, r: u64, measure: bool) -> Res {
    let fam: Family = name.parse()?;
    let args = match fam {
        Family::BranchedUnknot => vec![b, l],
        Family::TorusReduced => vec![l, r],
        _ => vec![l],
    };
    if !measure {
        let p = closed_form_params(fam, &args)?;
        if out.csv {
            writeln!(std::io::stdout(), "family,args,n,k,d\n{}", p.csv_row()).context("stdout")?;
        } else {
            out.json(&p)?;
        }
        return Ok(());
    }
    let exec = RayonExecutor::from_env();
    let bud = budget();
    if fam == Family::Sl3Unknot {
        let rep = sl3_unknot_params(l as usize, Tier::Complex, Method::Auto, &bud, &exec)?;
        out.json(&rep)?;
        return verdict_exit(rep.ok, rep.exact);
    }
    let rep = family_cross_check(fam, &args, Method::Auto, &bud, &exec)?;
    if out.csv {
        let mut o = std::io::stdout();
        writeln!(o, "family,args,n,k,d,measured_n,measured_k,measured_d,exact,ok").context("stdout")?;
        writeln!(o, "{},{},{},{},{},{}", rep.formula.csv_row(), rep.measured_n, rep.measured_k, opt(&rep.measured_d), rep.exact, rep.ok)
            .context("stdout")?;
    } else {
        out.json(&rep)?;
    }
    verdict_exit(rep.ok, rep.exact)
}

fn verdict_exit(ok: bool, exact: bool) -> Res {
    match (ok, exact) {
        (_, false) => Err(Failure::Budget),
        (false, true) => Err(Failure::Check),
        (true, true) => Ok(()),
    }
}

fn sl3(out: &Out, l: usize, tier: u8) -> Res {
    let tier = Tier::try_from(tier)?;
    let exec = RayonExecutor::from_env();
    let rep = sl3_unknot_params(l, tier, Method::Auto, &budget(), &exec)?;
    if out.csv {
        out.table(
            &["l", "n", "k", "d", "min_combo", "measured_n", "d_hat_b1", "d_hat_b2", "exact", "ok"],
            &[vec![
                l.to_string(),
                rep.formula.n.to_string(),
                rep.formula.k.to_string(),
                rep.formula.d.to_string(),
                rep.min_combo.to_string(),
                opt(&rep.measured_n),
                rep.d_hat.map(|d| d[0].to_string()).unwrap_or_default(),
                rep.d_hat.map(|d| d[1].to_string()).unwrap_or_default(),
                rep.exact.to_string(),
                rep.ok.to_string(),
            ]],
        )?;
    } else {
        out.json(&rep)?;
    }
    verdict_exit(rep.ok, rep.exact)
}

#[derive(Serialize)]
struct AnnularOut {
    name: String,
    adeg: i32,
    degree: i32,
    n: usize,
    k: usize,
    d_hat: Option<usize>,
    d_hat_dual: Option<usize>,
    d: Option<usize>,
    witness: Option<GFVector>,
    exact: bool,
}

fn annular(out: &Out, d: &LinkDiagram, adeg: i32, degree: i32) -> Res {
    let exec = RayonExecutor::from_env();
    let (n, k, r) = annular_distance(d, adeg, degree, Method::Auto, &budget(), &exec)?;
    let (d_hat, d_hat_dual, witness, exact) = match r {
        Some((a, b)) => (Some(a.weight), Some(b.weight), Some(a.witness), a.exact && b.exact),
        None => (None, None, None, true),
    };
    let rep = AnnularOut {
        name: d.name.clone(),
        adeg,
        degree,
        n,
        k,
        d_hat,
        d_hat_dual,
        d: d_hat.zip(d_hat_dual).map(|(a, b)| a.min(b)),
        witness,
        exact,
    };
    if out.csv {
        out.table(
            &["adeg", "degree", "n", "k", "d_hat", "d_hat_dual", "d", "exact"],
            &[vec![
                adeg.to_string(),
                degree.to_string(),
                n.to_string(),
                k.to_string(),
                opt(&rep.d_hat),
                opt(&rep.d_hat_dual),
                opt(&rep.d),
                exact.to_string(),
            ]],
        )?;
    } else {
        out.json(&rep)?;
    }
    verdict_exit(true, exact)
}

/// `x` as a decimal string in scientific notation, from its natural log.
fn sci(ln: f64) -> String {
    let l10 = ln / std::f64::consts::LN_10;
    let e = l10.floor();
    format!("{:.12}e{}", 10f64.powf(l10 - e), e as i64)
}

#[derive(Serialize)]
struct AsymRow {
    l: usize,
    exact: String,
    comparator: String,
    relative_error: f64,
}

fn asymptotics(out: &Out, c: Comparator, terms: usize, step: usize) -> Res {
    let rows: Vec<AsymRow> = (1..=terms)
        .step_by(step.max(1))
        .map(|l| AsymRow {
            l,
            exact: c.exact(l).to_string(),
            comparator: sci(c.ln(l)),
            relative_error: khoco_core::sequences::ratio_convergence(c, l),
        })
        .collect();
    if out.csv {
        let t: Vec<Vec<String>> =
            rows.iter().map(|r| vec![r.l.to_string(), r.exact.clone(), r.comparator.clone(), format!("{:.9}", r.relative_error)]).collect();
        out.table(&["l", "exact", "comparator", "relative_error"], &t)?;
    } else {
        out.json(&rows)?;
    }
    Ok(())
}

fn verify_paper(out: &Out, section: Option<String>, ids: Vec<String>, list: bool) -> Res {
    for id in &ids {
        if verify::find(id).is_none() {
            return Err(Failure::Input(anyhow!("unknown check id {id}")));
        }
    }
    let keep = |c: &verify::Check| section.as_deref().map_or(true, |s| c.section == s) && (ids.is_empty() || ids.iter().any(|i| i == c.id));
    if list {
        for c in verify::CHECKS.iter().filter(|c| keep(c)) {
            writeln!(std::io::stdout(), "{}\t{}\t{}\t{}", c.id, c.section, c.criterion, c.anchor).context("stdout")?;
        }
        return Ok(());
    }
    let ctx = Ctx::new(RayonExecutor::from_env(), DeadlineBudget::env_limit(None));
    let recs = verify::run_checks(&ctx, keep);
    if recs.is_empty() {
        return Err(Failure::Input(anyhow!("no checks match")));
    }
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    if out.csv {
        let mut w = csv::Writer::from_writer(&mut lock);
        for r in &recs {
            w.serialize(r).context("csv")?;
        }
        w.flush().context("csv")?;
    } else {
        for r in &recs {
            writeln!(lock, "{}", serde_json::to_string(r).context("json")?).context("stdout")?;
        }
    }
    if recs.iter().any(|r| r.status == Status::Fail) {
        return Err(Failure::Check);
    }
    Ok(())
}

fn run(cli: Cli) -> Res {
    let out = Out { csv: cli.csv };
    match cli.cmd {
        Cmd::Params { diagram, reduced, degree, convention, method } => {
            let d = load_diagram(&diagram)?;
            params(&out, &d, reduced, degree, convention.into(), method.into())
        }
        Cmd::Distance { diagram, degree, reduced, convention, method } => {
            let d = load_diagram(&diagram)?;
            distance(&out, &d, degree, reduced, convention.into(), method.into())
        }
        Cmd::Family { family: f, l, b, r, measure } => family(&out, &f, l, b, r, measure),
        Cmd::Sl3 { target: Sl3Target::Unknot, l, tier } => sl3(&out, l, tier),
        Cmd::Annular { diagram, adeg, degree } => {
            let d = load_diagram(&diagram)?;
            annular(&out, &d, adeg, degree)
        }
        Cmd::Asymptotics { seq, terms, step } => asymptotics(&out, seq.into(), terms, step),
        Cmd::VerifyPaper { section, id, list } => verify_paper(&out, section, id, list),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Budget) => {
            eprintln!("search budget exhausted; results are upper bounds");
            ExitCode::from(3)
        }
    }
}
