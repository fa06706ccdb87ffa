use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use eqcat_core::group::{preset, subgroup_classes, symmetric_group, FiniteGroup};
use eqcat_core::gset::{empty_gset, load_gset, orbit_type, regular_gset, trivial_gset, FinGSet};
use eqcat_core::{Report, Status};
use std::collections::BTreeMap;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "eqcat",
    about = "Equivariant categorical combinatorics: groups, G-sets, operad and category law verification, Burnside bookkeeping, nerve homology",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Group preset (trivial, C2, C3, C4, S3, Q8, C2xC2) or a table file
    #[arg(long, global = true)]
    group: Option<String>,
    /// G-set: empty | point | regular | two-fixed-points | a file path
    #[arg(long, global = true)]
    gset: Option<String>,
    /// Arity bound for component sweeps
    #[arg(long, global = true, default_value_t = 3)]
    jmax: usize,
    /// Copy depth for universe prefixes / truncation degree for nerves
    #[arg(long, global = true, default_value_t = 3)]
    depth: usize,
    /// Sample count for extensional law checks
    #[arg(long, global = true, default_value_t = 500)]
    samples: usize,
    /// RNG seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit the JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration size budget
    #[arg(long, global = true, default_value_t = 2_000_000)]
    budget: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Group inspection
    Group {
        #[command(subcommand)]
        sub: GroupCmd,
    },
    /// G-set inspection
    Gset {
        #[command(subcommand)]
        sub: GsetCmd,
    },
    /// Burnside-ring bookkeeping
    Burnside {
        #[command(subcommand)]
        sub: BurnsideCmd,
    },
    /// Law verification with PASS/FAIL reports
    Verify {
        #[command(subcommand)]
        sub: VerifyCmd,
    },
    /// Nerve computations
    Nerve {
        #[command(subcommand)]
        sub: NerveCmd,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Order, subgroup classes, normalizers, Weyl groups
    Info {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum GsetCmd {
    /// Orbit-type decomposition of a G-set
    Classify {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum BurnsideCmd {
    /// Table of marks with structural checks
    Marks {
        #[command(flatten)]
        common: Common,
    },
    /// Fixed-point splitting ranks at the component level, with oracle
    Tomdieck {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Operad laws, exhaustively on bounded components
    Operad {
        #[command(flatten)]
        common: Common,
    },
    /// Pairing axioms on the permutation operad
    Pairing {
        #[command(flatten)]
        common: Common,
        /// Self-test hook: corrupt the pairing table to demonstrate failure
        #[arg(long, hide = true)]
        mutate_table: bool,
    },
    /// Free permutative category vs labeled-orbit model, per arity
    Catone {
        #[command(flatten)]
        common: Common,
    },
    /// Fixed-point skeleton vs wreath-product counting (and triple agreement)
    Cattwo {
        #[command(flatten)]
        common: Common,
    },
    /// Fixed classifying categories of functor categories into Σn
    Fixedcat {
        #[command(flatten)]
        common: Common,
    },
    /// Arity-wise comparison of injection-operad truncations with subset categories
    Omega {
        #[command(flatten)]
        common: Common,
    },
    /// Span unit and associativity laws at bounded arity
    Spans {
        #[command(flatten)]
        common: Common,
    },
    /// Injection operads and the conjugation action, sampled extensionally
    Lambda {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum NerveCmd {
    /// Integral homology of the nerve of the group-as-category
    Homology {
        #[command(flatten)]
        common: Common,
        /// Dump boundary matrices as CSV
        #[arg(long)]
        dump_chains: bool,
    },
}

fn resolve_group(common: &Common) -> anyhow::Result<FiniteGroup> {
    let name = common
        .group
        .as_deref()
        .ok_or_else(|| anyhow!("--group is required for this command"))?;
    if let Some(g) = preset(name) {
        return Ok(g);
    }
    let content = std::fs::read_to_string(name)
        .with_context(|| format!("no preset or readable file named {name}"))?;
    Ok(eqcat_core::group::load_group(&content)?)
}

fn resolve_gset(common: &Common, g: &FiniteGroup) -> anyhow::Result<FinGSet> {
    let spec = common.gset.as_deref().unwrap_or("point");
    Ok(match spec {
        "empty" => empty_gset(g),
        "point" => trivial_gset(g, 1),
        "two-fixed-points" => trivial_gset(g, 2),
        "regular" => regular_gset(g),
        path => {
            let content = std::fs::read_to_string(path)
                .with_context(|| format!("no G-set keyword or readable file named {path}"))?;
            load_gset(g, &content)?
        }
    })
}

type Params = BTreeMap<String, serde_json::Value>;

fn base_params(common: &Common) -> Params {
    let mut p = Params::new();
    if let Some(g) = &common.group {
        p.insert("group".into(), g.as_str().into());
    }
    if let Some(x) = &common.gset {
        p.insert("gset".into(), x.as_str().into());
    }
    p.insert("jmax".into(), common.jmax.into());
    p.insert("depth".into(), common.depth.into());
    p.insert("samples".into(), common.samples.into());
    p.insert("seed".into(), common.seed.into());
    p.insert("budget".into(), common.budget.into());
    p
}

struct Outcome {
    command: &'static str,
    params: Params,
    report: Report,
    /// extra text lines printed before the report in text mode
    preamble: Vec<String>,
}

fn run(cmd: &Cmd) -> anyhow::Result<Outcome> {
    Ok(match cmd {
        Cmd::Group { sub: GroupCmd::Info { common } } => {
            let g = resolve_group(common)?;
            let classes = subgroup_classes(&g);
            let mut report = Report::new();
            report.pass("group order", format!("{} has order {}", g.name, g.order()));
            for (i, c) in classes.iter().enumerate() {
                report.pass(
                    "subgroup class",
                    format!(
                        "class {i}: |H| = {}, |N(H)| = {}, |WH| = {}",
                        c.representative.member_indices.len(),
                        c.normalizer.member_indices.len(),
                        c.weyl.order()
                    ),
                );
            }
            Outcome {
                command: "group info",
                params: base_params(common),
                report,
                preamble: vec![format!(
                    "{}: order {}, {} subgroup classes",
                    g.name,
                    g.order(),
                    classes.len()
                )],
            }
        }
        Cmd::Gset { sub: GsetCmd::Classify { common } } => {
            let g = resolve_group(common)?;
            let x = resolve_gset(common, &g)?;
            let classes = subgroup_classes(&g);
            let decomp = orbit_type(&g, &classes, &x);
            let mut report = Report::new();
            let pretty: Vec<String> = decomp
                .entries
                .iter()
                .map(|(&cls, &k)| {
                    format!(
                        "{k} × [G/H] with |H| = {}",
                        classes[cls].representative.member_indices.len()
                    )
                })
                .collect();
            report.pass(
                "orbit-type decomposition",
                if pretty.is_empty() {
                    "empty G-set".to_string()
                } else {
                    pretty.join(" + ")
                },
            );
            Outcome {
                command: "gset classify",
                params: base_params(common),
                report,
                preamble: Vec::new(),
            }
        }
        Cmd::Burnside { sub: BurnsideCmd::Marks { common } } => {
            let g = resolve_group(common)?;
            let marks = eqcat_core::burnside::table_of_marks(&g)?;
            let classes = subgroup_classes(&g);
            let mut report = Report::new();
            let rendered = format!(
                "[{}]",
                marks
                    .iter()
                    .map(|row| format!(
                        "[{}]",
                        row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                    ))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            report.pass("table of marks", rendered.clone());
            let mut tri = None;
            for (i, row) in marks.iter().enumerate() {
                if row.iter().skip(i + 1).any(|&v| v != 0) || row[i] == 0 {
                    tri = Some(format!("row {i} = {row:?}"));
                }
                if row[i] != classes[i].weyl.order() {
                    tri = Some(format!("diagonal {i}: {} ≠ |WH| = {}", row[i], classes[i].weyl.order()));
                }
            }
            report.record(
                "lower triangular with diagonal |WH|",
                format!("{} classes", classes.len()),
                tri,
            );
            Outcome {
                command: "burnside marks",
                params: base_params(common),
                report,
                preamble: vec![rendered],
            }
        }
        Cmd::Burnside { sub: BurnsideCmd::Tomdieck { common } } => {
            let g = resolve_group(common)?;
            let x = resolve_gset(common, &g)?;
            let (ranks, total, report) = eqcat_core::burnside::tom_dieck_pi0(&g, &x)?;
            Outcome {
                command: "burnside tomdieck",
                params: base_params(common),
                report,
                preamble: vec![format!("ranks per class: {ranks:?}, total {total}")],
            }
        }
        Cmd::Verify { sub } => run_verify(sub)?,
        Cmd::Nerve { sub: NerveCmd::Homology { common, dump_chains } } => {
            let g = resolve_group(common)?;
            let cat = eqcat_core::fincat::group_cat(&g);
            let qmax = common.depth;
            let groups = eqcat_core::nerve::homology(&cat, qmax, common.budget)?;
            let mut report = Report::new();
            let mut preamble = Vec::new();
            for (q, h) in groups.iter().enumerate() {
                let mut parts: Vec<String> = Vec::new();
                if h.free_rank > 0 {
                    parts.push(format!("Z^{}", h.free_rank));
                }
                for t in &h.torsion {
                    parts.push(format!("Z/{t}"));
                }
                let pretty = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
                report.pass(
                    format!("H_{q} of the nerve"),
                    format!("classifying category of {}, qmax = {qmax}: {pretty}", g.name),
                );
                preamble.push(format!("H_{q} = {pretty}"));
            }
            if *dump_chains {
                for q in 1..=qmax {
                    preamble.push(format!("boundary matrix ∂_{q} (rows = degree {}, CSV):", q - 1));
                    preamble.push(eqcat_core::nerve::boundary_csv(&cat, qmax, q, common.budget)?);
                }
            }
            Outcome {
                command: "nerve homology",
                params: base_params(common),
                report,
                preamble,
            }
        }
    })
}

fn run_verify(sub: &VerifyCmd) -> anyhow::Result<Outcome> {
    Ok(match sub {
        VerifyCmd::Operad { common } => {
            let report = match &common.group {
                None => {
                    let op = eqcat_core::operad::barratt_eccles(common.jmax);
                    eqcat_core::operad::verify_operad(&op, common.jmax)
                }
                Some(_) => {
                    let g = resolve_group(common)?;
                    let op = eqcat_core::operad::og_operad(&g, common.jmax, common.budget)?;
                    eqcat_core::operad::verify_operad(&op, common.jmax)
                }
            };
            Outcome {
                command: "verify operad",
                params: base_params(common),
                report,
                preamble: Vec::new(),
            }
        }
        VerifyCmd::Pairing { common, mutate_table } => {
            let op = eqcat_core::operad::barratt_eccles(common.jmax.max(2));
            let mut p = eqcat_core::operad::PairingVal::new(&op);
            p.corrupt = *mutate_table;
            let dist_total = (common.jmax + 1).min(4);
            let report = eqcat_core::operad::verify_pairing(&p, common.jmax, dist_total);
            let mut params = base_params(common);
            if *mutate_table {
                params.insert("mutate_table".into(), true.into());
            }
            Outcome {
                command: "verify pairing",
                params,
                report,
                preamble: Vec::new(),
            }
        }
        VerifyCmd::Catone { common } => {
            let g = resolve_group(common)?;
            let x = resolve_gset(common, &g)?;
            let mut report = Report::new();
            for j in 0..=common.jmax {
                report.merge(eqcat_core::free_perm::catone_check(&g, &x, j, common.budget)?);
            }
            Outcome {
                command: "verify catone",
                params: base_params(common),
                report,
                preamble: Vec::new(),
            }
        }
        VerifyCmd::Cattwo { common } => {
            let g = resolve_group(common)?;
            let x = resolve_gset(common, &g)?;
            let mut report = eqcat_core::free_perm::cattwo_check(&g, &x, common.jmax)?;
            report.merge(eqcat_core::free_perm::ident_check(
                &g,
                &x,
                common.jmax,
                common.budget,
            )?);
            Outcome {
                command: "verify cattwo",
                params: base_params(common),
                report,
                preamble: Vec::new(),
            }
        }
        VerifyCmd::Fixedcat { common } => {
            let g = resolve_group(common)?;
            let mut report = Report::new();
            for n in 2..=4 {
                let pi = symmetric_group(n);
                for class in subgroup_classes(&g) {
                    report.merge(eqcat_core::nerve::bgpi_fixed_check(
                        &g,
                        &pi,
                        &class.representative,
                        common.budget,
                    )?);
                }
            }
            Outcome {
                command: "verify fixedcat",
                params: base_params(common),
                report,
                preamble: Vec::new(),
            }
        }
        VerifyCmd::Omega { common } => {
            let g = resolve_group(common)?;
            let x = resolve_gset(common, &g)?;
            let report = eqcat_core::pqr::omega_check(&g, &x, common.jmax.min(2))?;
            Outcome {
                command: "verify omega",
                params: base_params(common),
                report,
                preamble: Vec::new(),
            }
        }
        VerifyCmd::Spans { common } => {
            let g = resolve_group(common)?;
            let generators = [trivial_gset(&g, 1), regular_gset(&g)];
            let mut report = Report::new();
            for a in &generators {
                for b in &generators {
                    for c in &generators {
                        report.merge(eqcat_core::free_perm::span_laws(
                            &g,
                            a,
                            b,
                            c,
                            common.jmax.min(2),
                            common.budget,
                        )?);
                    }
                }
            }
            Outcome {
                command: "verify spans",
                params: base_params(common),
                report,
                preamble: Vec::new(),
            }
        }
        VerifyCmd::Lambda { common } => {
            let g = resolve_group(common)?;
            let u = eqcat_core::pqr::Universe::new(&g, common.depth.max(2));
            let mut report = eqcat_core::pqr::verify_rg(&u, common.samples, common.seed)?;
            report.merge(eqcat_core::pqr::verify_pg(&u, common.samples, common.seed)?);
            report.merge(eqcat_core::pqr::verify_qg(&u, common.samples, common.seed)?);
            report.merge(eqcat_core::pqr::verify_lambda(&u, common.samples, common.seed)?);
            report.merge(eqcat_core::pqr::verify_e_actions(&u, &u.prefix(1))?);
            Outcome {
                command: "verify lambda",
                params: base_params(common),
                report,
                preamble: Vec::new(),
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok(out) => {
            let failed = out
                .report
                .checks
                .iter()
                .filter(|c| c.status == Status::Fail)
                .count();
            let mut text = String::new();
            if json_requested(&cli.cmd) {
                text.push_str(&cli_json(&out));
                text.push('\n');
            } else {
                for line in &out.preamble {
                    text.push_str(line);
                    text.push('\n');
                }
                text.push_str(&out.report.to_string());
                text.push_str(&format!(
                    "eqcat: {} checks, {failed} failed\n",
                    out.report.checks.len()
                ));
            }
            // tolerate a closed pipe (e.g. piping into `head`)
            use std::io::Write;
            let _ = std::io::stdout().write_all(text.as_bytes());
            if failed == 0 {
                ExitCode::from(0)
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("eqcat: error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn cli_json(out: &Outcome) -> String {
    let body = serde_json::json!({
        "command": out.command,
        "params": out.params,
        "checks": out.report.checks,
    });
    serde_json::to_string_pretty(&body).expect("report serializes")
}

fn json_requested(cmd: &Cmd) -> bool {
    fn c(common: &Common) -> bool {
        common.json
    }
    match cmd {
        Cmd::Group { sub: GroupCmd::Info { common } } => c(common),
        Cmd::Gset { sub: GsetCmd::Classify { common } } => c(common),
        Cmd::Burnside { sub: BurnsideCmd::Marks { common } } => c(common),
        Cmd::Burnside { sub: BurnsideCmd::Tomdieck { common } } => c(common),
        Cmd::Verify { sub } => match sub {
            VerifyCmd::Operad { common }
            | VerifyCmd::Pairing { common, .. }
            | VerifyCmd::Catone { common }
            | VerifyCmd::Cattwo { common }
            | VerifyCmd::Fixedcat { common }
            | VerifyCmd::Omega { common }
            | VerifyCmd::Spans { common }
            | VerifyCmd::Lambda { common } => c(common),
        },
        Cmd::Nerve { sub: NerveCmd::Homology { common, .. } } => c(common),
    }
}
