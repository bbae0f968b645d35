use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use psmac_core::fixedpoints::{apply_geom_word, h_scalar, FixedPointVector};
use psmac_core::nonsym::{compute_e, evaluation_check};
use psmac_core::partial::{build_j, build_p};
use psmac_core::pieri::{
    brute_force_expand, c_r_from_n, coefficient_a, default_oracle_n, enumerate_support, geom_chain_h, geom_term,
    match_predicate,
};
use psmac_core::polyrep::{apply_word, build_htilde};
use psmac_core::shapes::{parse_list, parse_weights, phi, phi_inverse};
use psmac_core::symfunc::degree_bound;
use psmac_core::verify::{across_phi, verify_chain, verify_e1, verify_ti, verify_y2_example, VerificationReport};
use psmac_core::{Error, FixedPointLabel, QTRational, SplitIndex, XPolynomial};

#[derive(Parser)]
#[command(name = "psmac", about = "Partially-symmetric Macdonald polynomials and fixed-point checks")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Side {
    Closed,
    Geom,
    Oracle,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Ti,
    E1,
    Y2,
    Chain,
    All,
}

#[derive(Args)]
struct IndexArgs {
    /// Partition part, comma separated (may be empty).
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    lambda: String,
    /// Composition part, comma separated.
    #[arg(long, default_value = "")]
    gamma: String,
    /// Number of symmetric variables.
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args)]
struct LabelArgs {
    /// Partition of the fixed point.
    #[arg(long)]
    mu: String,
    /// Box weights, "q^r*t^c" monomials or "(c,r)" pairs.
    #[arg(long, default_value = "")]
    w: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Nonsymmetric Macdonald polynomial E of a composition.
    E {
        #[arg(long)]
        comp: String,
    },
    /// Partially-symmetric P.
    P(IndexArgs),
    /// Integral form J.
    J(IndexArgs),
    /// Modified function H~ in V_k, monomial basis.
    Htilde {
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Apply a word in d+, d-, T_i, y_i to a fixed-point class H_(mu,w).
    Geom {
        #[command(flatten)]
        label: LabelArgs,
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Apply a word in d+, d-, T_i, Tinv_i, y_i to H~ in V_k.
    Apply {
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long)]
        word: String,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// e_1 Pieri expansion of J and the geometric match.
    Pieri {
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long, value_enum, default_value_t = Side::All)]
        side: Side,
    },
    /// phi(mu, w), or phi^{-1} when --lambda/--gamma are given.
    Bijection {
        #[arg(long)]
        mu: Option<String>,
        #[arg(long, default_value = "")]
        w: String,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Evaluation formula for E at t^{-rho}.
    EvalCheck {
        #[arg(long)]
        comp: String,
    },
    /// Verification sweeps.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        max_weight: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Skip the direct H~ expansion in the e1 suite.
        #[arg(long)]
        no_direct: bool,
        /// Only print failing cases.
        #[arg(long)]
        failures: bool,
    },
}

enum Outcome {
    Pass,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn index(a: &IndexArgs) -> Result<SplitIndex, Error> {
    let lam = parse_list(&a.lambda)?;
    let gam = parse_list(&a.gamma)?;
    match a.m {
        Some(m) => SplitIndex::new(&lam, &gam, m),
        None => SplitIndex::natural(&lam, &gam),
    }
}

fn label(a: &LabelArgs) -> Result<FixedPointLabel, Error> {
    FixedPointLabel::new(&parse_list(&a.mu)?, &parse_weights(&a.w)?)
}

#[derive(Serialize)]
struct PolyRow {
    exponents: Vec<u32>,
    coeff: String,
}

fn poly_rows(p: &XPolynomial) -> Vec<PolyRow> {
    p.terms().map(|(e, c)| PolyRow { exponents: e.clone(), coeff: c.canonical_string() }).collect()
}

fn emit<T: Serialize>(fmt: Format, value: &T, header: &[&str], rows: Vec<Vec<String>>) {
    match fmt {
        Format::Json => println!("{}", serde_json::to_string(value).expect("serializable")),
        Format::Table => print_table(header, &rows),
    }
}

fn print_table(header: &[&str], rows: &[Vec<String>]) {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let s: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        println!("{}", s.join("  ").trim_end());
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
}

fn poly_table(p: &XPolynomial) -> Vec<Vec<String>> {
    p.terms().map(|(e, c)| vec![format!("{e:?}"), c.pretty()]).collect()
}

fn opt(c: &Option<QTRational>) -> Option<String> {
    c.as_ref().map(|c| c.canonical_string())
}

#[derive(Serialize)]
struct PieriRow {
    target: SplitIndex,
    #[serde(rename = "A")]
    a: Option<String>,
    #[serde(rename = "A_oracle", skip_serializing_if = "Option::is_none")]
    a_oracle: Option<String>,
    #[serde(rename = "C")]
    c: Option<String>,
    c_r: i64,
    #[serde(rename = "match")]
    matches: Option<bool>,
}

#[derive(Serialize)]
struct LabelOut {
    mu: Vec<usize>,
    w: Vec<String>,
}

#[derive(Serialize)]
struct EvalOut {
    lhs: String,
    rhs: String,
    ok: bool,
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let fmt = cli.format;
    match &cli.cmd {
        Cmd::E { comp } => {
            let e = compute_e(&parse_list(comp)?);
            emit(fmt, &poly_rows(&e), &["exponents", "coeff"], poly_table(&e));
        }
        Cmd::P(a) | Cmd::J(a) => {
            let idx = index(a)?;
            let p = if matches!(cli.cmd, Cmd::P(_)) { build_p(&idx)? } else { build_j(&idx)? };
            emit(fmt, &poly_rows(&p.body), &["exponents", "coeff"], poly_table(&p.body));
        }
        Cmd::Htilde { index: a, degree } => {
            let h = build_htilde(&index(a)?, degree.unwrap_or_else(degree_bound))?;
            let rows = h.to_json_rows();
            let table = rows.iter().map(|r| vec![format!("{:?}", r.partition), format!("{:?}", r.y_exponents), r.coeff.clone()]).collect();
            emit(fmt, &rows, &["partition", "y", "coeff"], table);
        }
        Cmd::Apply { index: a, word, degree } => {
            let h = build_htilde(&index(a)?, degree.unwrap_or_else(degree_bound))?;
            let g = apply_word(word, &h)?;
            let rows = g.to_json_rows();
            let table = rows.iter().map(|r| vec![format!("{:?}", r.partition), format!("{:?}", r.y_exponents), r.coeff.clone()]).collect();
            emit(fmt, &rows, &["partition", "y", "coeff"], table);
        }
        Cmd::Geom { label: a, word } => {
            let l = label(a)?;
            let v = FixedPointVector::basis(l.clone())?.scale(&h_scalar(&l.xi));
            let g = apply_geom_word(word, &v)?.to_h_basis();
            let rows = g.to_json_rows();
            let table = rows.iter().map(|r| vec![format!("{:?}", r.xi), r.w.join(","), r.coeff.clone()]).collect();
            emit(fmt, &rows, &["mu", "w", "coeff (H basis)"], table);
        }
        Cmd::Bijection { mu, w, lambda, gamma } => match (mu, lambda.as_ref().or(gamma.as_ref())) {
            (Some(mu), None) => {
                let l = FixedPointLabel::new(&parse_list(mu)?, &parse_weights(w)?)?;
                let idx = phi(&l)?;
                emit(fmt, &idx, &["lambda", "gamma"], vec![vec![format!("{:?}", idx.lambda()), format!("{:?}", idx.gamma())]]);
            }
            (None, Some(_)) => {
                let idx = SplitIndex::natural(
                    &parse_list(lambda.as_deref().unwrap_or(""))?,
                    &parse_list(gamma.as_deref().unwrap_or(""))?,
                )?;
                let l = phi_inverse(&idx);
                let ws: Vec<String> = l.weights().iter().map(|w| w.pretty()).collect();
                let row = vec![vec![format!("{:?}", l.xi), ws.join(",")]];
                emit(fmt, &LabelOut { mu: l.xi.clone(), w: ws }, &["mu", "w"], row);
            }
            _ => return Err(Error::Parse("give either --mu/--w or --lambda/--gamma".into())),
        },
        Cmd::EvalCheck { comp } => {
            let c = evaluation_check(&parse_list(comp)?)?;
            let v = EvalOut { lhs: c.lhs.canonical_string(), rhs: c.rhs.canonical_string(), ok: c.equal };
            emit(fmt, &v, &["lhs", "rhs", "ok"], vec![vec![c.lhs.pretty(), c.rhs.pretty(), c.equal.to_string()]]);
            if !c.equal {
                return Ok(Outcome::Mismatch);
            }
        }
        Cmd::Pieri { index: a, side } => return pieri(fmt, &index(a)?, *side),
        Cmd::Verify { suite, max_weight, k_max, seed, no_direct, failures } => {
            let mut reports: Vec<VerificationReport> = Vec::new();
            let all = matches!(suite, Suite::All);
            if all || matches!(suite, Suite::Ti) {
                reports.extend(verify_ti(max_weight.unwrap_or(6), k_max.unwrap_or(3)));
            }
            if all || matches!(suite, Suite::E1) {
                reports.extend(verify_e1(max_weight.unwrap_or(4), k_max.unwrap_or(2), !no_direct));
            }
            if all || matches!(suite, Suite::Y2) {
                reports.extend(verify_y2_example());
            }
            if all || matches!(suite, Suite::Chain) {
                reports.extend(verify_chain(24, k_max.unwrap_or(3), *seed));
            }
            let bad = reports.iter().filter(|r| r.ok != expected(r)).count();
            let shown: Vec<&VerificationReport> =
                reports.iter().filter(|r| !failures || r.ok != expected(r)).collect();
            let table = shown
                .iter()
                .map(|r| vec![r.suite.clone(), r.case.clone(), r.ok.to_string(), r.ms.to_string()])
                .collect();
            emit(fmt, &shown, &["suite", "case", "ok", "ms"], table);
            eprintln!("{} cases, {} unexpected", reports.len(), bad);
            if bad > 0 {
                return Ok(Outcome::Mismatch);
            }
        }
    }
    Ok(Outcome::Pass)
}

/// The untwisted control is expected to disagree.
fn expected(r: &VerificationReport) -> bool {
    r.suite != "y2-control"
}

fn pieri(fmt: Format, src: &SplitIndex, side: Side) -> Result<Outcome, Error> {
    let start = Instant::now();
    let want = |s: Side| side == s || side == Side::All;
    let support = enumerate_support(src)?;
    let oracle = if want(Side::Oracle) { Some(brute_force_expand(src, default_oracle_n(src))?) } else { None };
    let geom = if want(Side::Geom) { Some(across_phi(&geom_chain_h(&phi_inverse(src))?)?) } else { None };
    let mut targets: Vec<SplitIndex> = support.iter().map(|(t, _)| t.clone()).collect();
    if !want(Side::Closed) {
        targets.clear();
    }
    for extra in oracle.iter().flat_map(|o| o.keys()).chain(geom.iter().flat_map(|g| g.keys())) {
        if !targets.contains(extra) {
            targets.push(extra.clone());
        }
    }
    targets.sort();
    let mut rows = Vec::new();
    let mut table = Vec::new();
    let mut ok = true;
    for t in &targets {
        let datum = support.iter().find(|(s, _)| s == t).map(|(_, d)| d);
        let closed = match (want(Side::Closed), datum) {
            (true, Some(d)) => Some(coefficient_a(d)?),
            (true, None) => Some(QTRational::zero()),
            _ => None,
        };
        let from_oracle = oracle.as_ref().map(|o| o.get(t).cloned().unwrap_or_else(QTRational::zero));
        let c = geom.as_ref().map(|g| g.get(t).cloned().unwrap_or_else(QTRational::zero));
        let c_r = c_r_from_n(src, t);
        let a = closed.clone().or_else(|| from_oracle.clone());
        let mut m: Option<bool> = None;
        if let (Some(a), Some(c)) = (&a, &c) {
            m = Some(match_predicate(a, c, c_r));
        }
        if let (Some(x), Some(y)) = (&closed, &from_oracle) {
            m = Some(m.unwrap_or(true) && x == y);
        }
        if let Some(d) = datum.filter(|_| c.is_some()) {
            // the geometric target must be the one the datum predicts
            m = Some(m.unwrap_or(true) && phi(&geom_term(d)?.target)? == *t);
        }
        ok &= m != Some(false);
        rows.push(PieriRow {
            target: t.clone(),
            a: opt(&a),
            a_oracle: opt(&from_oracle),
            c: opt(&c),
            c_r,
            matches: m,
        });
        table.push(vec![
            t.to_string(),
            a.as_ref().map_or("-".into(), |a| a.pretty()),
            c.as_ref().map_or("-".into(), |c| c.pretty()),
            c_r.to_string(),
            m.map_or("-".into(), |b| b.to_string()),
        ]);
    }
    emit(fmt, &rows, &["target", "A", "C", "c_r", "match"], table);
    eprintln!("{} targets in {} ms", targets.len(), start.elapsed().as_millis());
    Ok(if ok { Outcome::Pass } else { Outcome::Mismatch })
}
