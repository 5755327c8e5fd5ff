//! Command-line front end: groups, quadratic forms and cocycles, the
//! modularization pipeline, root-lattice data, Nichols-algebra dimensions,
//! quasi-quantum-group builds with file dumps and re-verification, and the
//! worked examples.
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure,
//! 2 malformed input.

use clap::{Args, Parser, Subcommand};
use quasimod_core::abgroup::FiniteAbelianGroup;
use quasimod_core::cyclo::RootOfUnity;
use quasimod_core::modularize;
use quasimod_core::qform::{
    check_abelian_cocycle, cocycle_from_qform, AbelianThreeCocycle, QuadraticForm,
};
use quasimod_core::quasiqg;
use quasimod_core::rootlat;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "quasimod", about = "exact modularization toolkit for small quasi-quantum groups")]
struct Cli {
    /// Output format; json carries the full exact data
    #[arg(long, global = true, default_value = "table")]
    format: String,
    /// Append floating-point approximations to root-of-unity output (debug)
    #[arg(long, global = true, default_value_t = false)]
    approx: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect a finite abelian group descriptor
    Group {
        #[arg(long)]
        group: String,
    },
    /// Quadratic forms on a group: enumerate or evaluate one
    Qform {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = false)]
        enumerate: bool,
        #[arg(long)]
        qform: Option<String>,
    },
    /// Build the abelian 3-cocycle of a quadratic form and check it
    Cocycle {
        #[arg(long)]
        qform: String,
        /// dump the full ω and σ exponent tables
        #[arg(long, default_value_t = false)]
        dump: bool,
    },
    /// Modularizability test and explicit pushdown to G/T
    Modularize {
        #[arg(long)]
        qform: String,
        #[arg(long)]
        eta: Option<String>,
        /// elements the section must fix, as a JSON list of exponent tuples
        #[arg(long)]
        section_fix: Option<String>,
    },
    /// Root-lattice datum: Λ′, G = Λ/Λ′, f-matrix and nondegeneracy
    Lattice {
        #[arg(long = "type")]
        rtype: char,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value = "weight")]
        lambda: String,
    },
    /// Nichols-algebra data of a braided vector space
    Nichols {
        #[arg(long)]
        braided_vs: String,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Quasi-quantum group builds and file-level verification
    Uqg {
        #[command(subcommand)]
        cmd: UqgCmd,
    },
    /// Worked examples
    Examples {
        #[command(subcommand)]
        cmd: ExampleCmd,
    },
}

#[derive(Subcommand)]
enum UqgCmd {
    /// Assemble u(ω,σ) from a datum and write the structure constants
    Build(UqgBuild),
    /// Re-verify every axiom from a dump file
    Verify { file: String },
    /// Factorizability of a dumped algebra (requires R in the dump)
    Factorizable { file: String },
}

#[derive(Args)]
struct UqgBuild {
    /// datum: {"qform": …, "chis": [[…],…]} or {"sl2_quotient": ℓ} or {"sl2": ℓ}
    #[arg(long)]
    datum: String,
    #[arg(long)]
    out: Option<String>,
    /// also solve and store the R-matrix
    #[arg(long, default_value_t = true)]
    with_r: bool,
}

#[derive(Subcommand)]
enum ExampleCmd {
    /// The rank-1 decision table and quotient data
    Sl2 {
        #[arg(long)]
        ell: u64,
    },
    /// The fourth-root-of-unity B_n braiding table
    Bn {
        #[arg(long)]
        n: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn root_json(r: &RootOfUnity, approx: bool) -> Value {
    let (e, n) = r.frac();
    if approx {
        let (re, im) = r.to_cyclo().approx();
        json!([e, n, format!("{re:.6}{im:+.6}i")])
    } else {
        json!([e, n])
    }
}

fn parse_group(s: &str) -> anyhow::Result<FiniteAbelianGroup> {
    let v: Value = serde_json::from_str(s)?;
    let moduli = v["moduli"]
        .as_array()
        .ok_or_else(|| anyhow::anyhow!("group descriptor needs a \"moduli\" array"))?
        .iter()
        .map(|x| x.as_u64().ok_or_else(|| anyhow::anyhow!("moduli must be integers")))
        .collect::<anyhow::Result<Vec<u64>>>()?;
    Ok(FiniteAbelianGroup::new(moduli))
}

fn parse_root(v: &Value) -> anyhow::Result<RootOfUnity> {
    let a = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| anyhow::anyhow!("roots of unity are [k, N] exponent pairs"))?;
    let k = a[0].as_i64().ok_or_else(|| anyhow::anyhow!("bad exponent"))?;
    let n = a[1].as_u64().filter(|&n| n > 0).ok_or_else(|| anyhow::anyhow!("bad order"))?;
    Ok(RootOfUnity::new(k, n))
}

fn parse_qform(s: &str) -> anyhow::Result<QuadraticForm> {
    let v: Value = serde_json::from_str(s)?;
    let group = parse_group(&v["group"].to_string())?;
    let diag = v["diag_exps"]
        .as_array()
        .ok_or_else(|| anyhow::anyhow!("qform needs \"diag_exps\""))?
        .iter()
        .map(parse_root)
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut offdiag = std::collections::BTreeMap::new();
    if let Some(obj) = v["offdiag_exps"].as_object() {
        for (key, val) in obj {
            let inner = key.trim_start_matches('(').trim_end_matches(')');
            let (k, l) = inner
                .split_once(',')
                .ok_or_else(|| anyhow::anyhow!("offdiag keys look like \"(k,l)\""))?;
            offdiag.insert(
                (k.trim().parse::<usize>()?, l.trim().parse::<usize>()?),
                parse_root(val)?,
            );
        }
    }
    Ok(QuadraticForm::new(group, diag, offdiag)?)
}

fn parse_elt(v: &Value) -> anyhow::Result<Vec<u64>> {
    v.as_array()
        .ok_or_else(|| anyhow::anyhow!("element must be an exponent array"))?
        .iter()
        .map(|x| x.as_u64().ok_or_else(|| anyhow::anyhow!("exponents are nonnegative integers")))
        .collect()
}

fn qform_json(q: &QuadraticForm, approx: bool) -> Value {
    json!({
        "group": {"moduli": q.group.moduli},
        "diag_exps": q.diag.iter().map(|r| root_json(r, approx)).collect::<Vec<_>>(),
        "offdiag_exps": q
            .offdiag
            .iter()
            .map(|((k, l), r)| (format!("({k},{l})"), root_json(r, approx)))
            .collect::<serde_json::Map<String, Value>>(),
    })
}

fn cocycle_json(c: &AbelianThreeCocycle, approx: bool) -> Value {
    let g = &c.group;
    let mut omega = vec![];
    let mut sigma = vec![];
    for a in g.elements() {
        for b in g.elements() {
            sigma.push(root_json(&c.sigma(&a, &b), approx));
            for cc in g.elements() {
                omega.push(root_json(&c.omega(&a, &b, &cc), approx));
            }
        }
    }
    json!({
        "group": {"moduli": g.moduli},
        "ambient_order": c.order,
        "omega": omega,
        "sigma": sigma,
    })
}

fn emit(cli: &Cli, table: Vec<String>, json_value: Value) {
    if cli.format == "json" {
        println!("{}", serde_json::to_string_pretty(&json_value).unwrap());
    } else {
        for line in table {
            println!("{line}");
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.cmd {
        Cmd::Group { group } => {
            let g = parse_group(group)?;
            let lines = vec![
                format!("moduli: {:?}", g.moduli),
                format!("order: {}", g.order()),
                format!("exponent: {}", g.exponent()),
            ];
            emit(cli, lines, json!({
                "moduli": g.moduli, "order": g.order(), "exponent": g.exponent(),
            }));
            Ok(0)
        }
        Cmd::Qform { group, enumerate, qform } => {
            let g = parse_group(group)?;
            if *enumerate {
                let forms = QuadraticForm::enumerate(&g);
                let lines: Vec<String> = std::iter::once(format!("{} quadratic forms", forms.len()))
                    .chain(forms.iter().map(|q| {
                        format!(
                            "diag {:?} offdiag {:?}",
                            q.diag.iter().map(|r| r.frac()).collect::<Vec<_>>(),
                            q.offdiag.iter().map(|(k, r)| (k, r.frac())).collect::<Vec<_>>()
                        )
                    }))
                    .collect();
                emit(cli, lines, json!({
                    "count": forms.len(),
                    "forms": forms.iter().map(|q| qform_json(q, cli.approx)).collect::<Vec<_>>(),
                }));
                return Ok(0);
            }
            let q = parse_qform(qform.as_deref().ok_or_else(|| anyhow::anyhow!("--qform or --enumerate required"))?)?;
            let values: Vec<(Vec<u64>, RootOfUnity)> =
                g.elements().map(|x| (x.clone(), q.eval(&x))).collect();
            let lines = values
                .iter()
                .map(|(x, v)| format!("Q({x:?}) = {v}"))
                .collect();
            emit(cli, lines, json!({
                "qform": qform_json(&q, cli.approx),
                "values": values.iter().map(|(x, v)| json!([x, root_json(v, cli.approx)])).collect::<Vec<_>>(),
            }));
            Ok(0)
        }
        Cmd::Cocycle { qform, dump } => {
            let q = parse_qform(qform)?;
            let c = cocycle_from_qform(&q);
            let ok = check_abelian_cocycle(&c);
            let mut lines = vec![format!("valid abelian 3-cocycle: {ok}")];
            if *dump {
                lines.push(format!("ambient order: {}", c.order));
            }
            let mut out = json!({ "valid": ok });
            if *dump {
                out = json!({ "valid": ok, "cocycle": cocycle_json(&c, cli.approx) });
            }
            emit(cli, lines, out);
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Modularize { qform, eta, section_fix } => {
            let q = parse_qform(qform)?;
            let g = q.group.clone();
            let sigma = q.bihom();
            let eta_exps = match eta {
                Some(s) => {
                    let v: Value = serde_json::from_str(s)?;
                    parse_elt(&v["exps"])?
                }
                None => g.zero(),
            };
            let constraints: Vec<Vec<u64>> = match section_fix {
                Some(s) => {
                    let v: Value = serde_json::from_str(s)?;
                    v.as_array()
                        .ok_or_else(|| anyhow::anyhow!("--section-fix is a list of exponent tuples"))?
                        .iter()
                        .map(parse_elt)
                        .collect::<anyhow::Result<Vec<_>>>()?
                }
                None => vec![],
            };
            let (ok, witness) = modularize::is_modularizable(&sigma, &eta_exps);
            if !ok {
                emit(cli, vec![format!("not modularizable; witness {witness:?}")], json!({
                    "modularizable": false, "witness": witness,
                }));
                return Ok(1);
            }
            let pd = modularize::pushdown(&sigma, &eta_exps, &constraints)?;
            let md = modularize::modular_data(&pd.cocycle_bar, &pd.eta_bar);
            let quot = pd.qws.quotient.clone();
            let lines = vec![
                "modularizable: true".to_string(),
                format!("quotient: {:?}", quot.moduli),
                format!("modular: {}", md.is_modular),
            ];
            let kappa_table: Vec<Value> = g
                .elements()
                .flat_map(|a| {
                    let pd = &pd;
                    let approx = cli.approx;
                    let g2 = g.clone();
                    g2.elements()
                        .map(move |b| root_json(&pd.kappa.eval(&a, &b), approx))
                        .collect::<Vec<_>>()
                })
                .collect();
            let s_matrix: Vec<Value> = md
                .s
                .iter()
                .map(|row| {
                    Value::Array(row.iter().map(quasimod_core::quasiqg::raw::cyclo_to_json).collect())
                })
                .collect();
            emit(cli, lines, json!({
                "modularizable": true,
                "quotient": {"moduli": quot.moduli},
                "cocycle_bar": cocycle_json(&pd.cocycle_bar, cli.approx),
                "eta_bar": pd.eta_bar,
                "kappa": kappa_table,
                "s_matrix": s_matrix,
                "t_diag": md.tdiag.iter().map(|r| root_json(r, cli.approx)).collect::<Vec<_>>(),
                "modular": md.is_modular,
            }));
            Ok(0)
        }
        Cmd::Lattice { rtype, rank, ell, lambda } => {
            let rs = rootlat::RootSystem::new(rootlat::RootType::from_char(*rtype)?, *rank)?;
            let lam = match lambda.as_str() {
                "weight" => rootlat::weight_lattice(&rs),
                "root" => rootlat::root_lattice(&rs),
                other => anyhow::bail!("unknown lattice {other:?} (use weight or root)"),
            };
            let datum = rootlat::quantum_group_datum(&rs, *ell, &lam, None)?;
            let fmat: Vec<Vec<Value>> = datum
                .f
                .values
                .iter()
                .map(|row| row.iter().map(|r| root_json(r, cli.approx)).collect())
                .collect();
            let lines = vec![
                format!("lambda_prime generators: {:?} / {}", datum.lambda_prime.rows, datum.lambda_prime.den),
                format!("G moduli: {:?}", datum.cartan.group.moduli),
                format!("f nondegenerate: {}", datum.nondegenerate),
            ];
            emit(cli, lines, json!({
                "lambda_prime": {"den": datum.lambda_prime.den, "rows": datum.lambda_prime.rows},
                "group": {"moduli": datum.cartan.group.moduli},
                "f": fmat,
                "nondegenerate": datum.nondegenerate,
            }));
            Ok(0)
        }
        Cmd::Nichols { braided_vs, max_degree } => {
            let v: Value = serde_json::from_str(braided_vs)?;
            let qmatrix: Vec<Vec<RootOfUnity>> = v["qmatrix"]
                .as_array()
                .ok_or_else(|| anyhow::anyhow!("braided-vs needs a \"qmatrix\" of [k,N] pairs"))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| anyhow::anyhow!("qmatrix rows are arrays"))?
                        .iter()
                        .map(parse_root)
                        .collect::<anyhow::Result<Vec<_>>>()
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            let vs = quasimod_core::nichols::BraidedVS::diagonal(&qmatrix)?;
            let mut dims = vec![];
            for n in 0..=*max_degree {
                let d = quasimod_core::nichols::woronowicz_dim(&vs, n)?;
                dims.push(d);
                if d == 0 {
                    break;
                }
            }
            let rank = vs.rank();
            let mut orders = vec![];
            for i in 0..rank {
                orders.push(json!({
                    "i": i,
                    "nilpotency": quasimod_core::nichols::nilpotency_order(&vs, i),
                }));
            }
            let mut serre = vec![];
            for i in 0..rank {
                for j in 0..rank {
                    if i != j {
                        serre.push(json!({
                            "i": i, "j": j,
                            "adjoint_order": quasimod_core::nichols::adjoint_order(&vs, i, j),
                        }));
                    }
                }
            }
            let lines = vec![
                format!("per-degree dims: {dims:?}"),
                format!("total: {}", dims.iter().sum::<usize>()),
            ];
            emit(cli, lines, json!({
                "dims": dims,
                "total": dims.iter().sum::<usize>(),
                "nilpotency_orders": orders,
                "adjoint_orders": serre,
            }));
            Ok(0)
        }
        Cmd::Uqg { cmd } => run_uqg(cli, cmd),
        Cmd::Examples { cmd } => run_examples(cli, cmd),
    }
}

fn run_uqg(cli: &Cli, cmd: &UqgCmd) -> anyhow::Result<i32> {
    match cmd {
        UqgCmd::Build(args) => {
            let v: Value = serde_json::from_str(&args.datum)?;
            let datum = if let Some(ell) = v["sl2_quotient"].as_u64() {
                let (_, d, _) = quasiqg::sl2_data(ell)?;
                d
            } else if let Some(ell) = v["sl2"].as_u64() {
                quasiqg::sl2_unquotiented_datum(ell, true)?
            } else {
                let q = parse_qform(&v["qform"].to_string())?;
                let chis = v["chis"]
                    .as_array()
                    .ok_or_else(|| anyhow::anyhow!("datum needs \"chis\""))?
                    .iter()
                    .map(parse_elt)
                    .collect::<anyhow::Result<Vec<_>>>()?;
                quasiqg::UqgDatum { cocycle: cocycle_from_qform(&q), chis }
            };
            let alg = quasiqg::build_uqg(&datum)?;
            let r = if args.with_r { Some(quasiqg::r_matrix(&alg)?) } else { None };
            let raw = quasiqg::RawQuasiHopf::from_algebra(&alg, r.as_ref());
            let dump = quasiqg::raw_to_json(&raw);
            let lines = vec![format!("built: dim {}", alg.dim)];
            match &args.out {
                Some(path) => {
                    std::fs::write(path, serde_json::to_string_pretty(&dump)?)?;
                    emit(cli, lines, json!({"dim": alg.dim, "out": path}));
                }
                None => emit(cli, lines, dump),
            }
            Ok(0)
        }
        UqgCmd::Verify { file } => {
            let text = std::fs::read_to_string(file)?;
            let raw = quasiqg::raw_from_json(&serde_json::from_str(&text)?)?;
            let report = quasiqg::verify_raw(&raw);
            let lines = report.lines();
            let ok = report.all_pass();
            emit(cli, lines, json!({
                "pass": ok,
                "checks": report
                    .checks
                    .iter()
                    .map(|(n, p, w)| json!({"axiom": n, "pass": p, "witness": w}))
                    .collect::<Vec<_>>(),
            }));
            Ok(if ok { 0 } else { 1 })
        }
        UqgCmd::Factorizable { file } => {
            let text = std::fs::read_to_string(file)?;
            let raw = quasiqg::raw_from_json(&serde_json::from_str(&text)?)?;
            if raw.r.is_none() {
                anyhow::bail!("dump carries no R-matrix; rebuild with --with-r");
            }
            let ok = quasiqg::factorizable_raw(&raw);
            emit(cli, vec![format!("factorizable: {ok}")], json!({"factorizable": ok}));
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn run_examples(cli: &Cli, cmd: &ExampleCmd) -> anyhow::Result<i32> {
    match cmd {
        ExampleCmd::Sl2 { ell } => {
            let mut rows = vec![];
            for plus in [true, false] {
                let datum = rootlat::sl2_datum(*ell, plus)?;
                let name = if plus { "f+" } else { "f-" };
                let nondeg = datum.nondegenerate;
                let modularizable = if nondeg {
                    let sigma = modularize::sigma_from_f(&datum.f)?;
                    let eta = vec![0u64; sigma.group.rank()];
                    modularize::is_modularizable(&sigma, &eta).0
                } else {
                    false
                };
                rows.push(json!({
                    "f": name,
                    "group": {"moduli": datum.cartan.group.moduli},
                    "nondegenerate": nondeg,
                    "modularizable": modularizable,
                }));
            }
            let pd = {
                let datum = rootlat::sl2_datum(*ell, true)?;
                let sigma = modularize::sigma_from_f(&datum.f)?;
                let eta = vec![0u64; sigma.group.rank()];
                if modularize::is_modularizable(&sigma, &eta).0 {
                    let pd = modularize::pushdown(&sigma, &eta, &[])?;
                    Some(json!({
                        "quotient": {"moduli": pd.qws.quotient.moduli},
                        "simple_objects": pd.qws.quotient.order(),
                    }))
                } else {
                    None
                }
            };
            let lines: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{}: nondegenerate {}, modularizable {}",
                        r["f"].as_str().unwrap(),
                        r["nondegenerate"],
                        r["modularizable"]
                    )
                })
                .chain(pd.iter().map(|p| format!("quotient: {}", p["quotient"]["moduli"])))
                .collect();
            emit(cli, lines, json!({"ell": ell, "table": rows, "pushdown": pd}));
            Ok(0)
        }
        ExampleCmd::Bn { n } => {
            let report = quasiqg::bn_example_check(*n, None)?;
            let lines = vec![
                format!("G-bar: {:?}", report.group_bar.moduli),
                format!("Q diag: {:?}", report.q_diag.iter().map(|r| r.frac()).collect::<Vec<_>>()),
                format!("matches pushed-down form: {}", report.q_matches_pushdown),
                format!("B nondegenerate: {}", report.b_nondegenerate),
            ];
            let ok = report.q_matches_pushdown && report.b_nondegenerate;
            emit(cli, lines, json!({
                "group_bar": {"moduli": report.group_bar.moduli},
                "sigma_table": report
                    .sigma_table
                    .iter()
                    .map(|row| row.iter().map(|r| root_json(r, cli.approx)).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "q_diag": report.q_diag.iter().map(|r| root_json(r, cli.approx)).collect::<Vec<_>>(),
                "q_matches_pushdown": report.q_matches_pushdown,
                "b_psi_psi": root_json(&report.b_psi_psi, cli.approx),
                "b_nondegenerate": report.b_nondegenerate,
                "chi_is_psi_squared": report.chi_is_psi_squared,
            }));
            Ok(if ok { 0 } else { 1 })
        }
    }
}
