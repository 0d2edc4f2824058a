//! Command-line front end for `isoheight`.
//!
//! [`run`] parses an argument vector, dispatches it and returns a [`Report`];
//! the binary only prints the report and exits with its status.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use isoheight::ellcurve::{
    check_height_comparison, check_szpiro, conductor, differential_height, local_data,
    minimal_discriminant, ReductionType,
};
use isoheight::funcfield::{insep_degree, pole_divisor, weil_height};
use isoheight::isogeny::{
    compose, dual_isogeny, equal_height_family, frobenius_isogeny, multiplication_x_map,
    roots_in_base, two_torsion_polynomial, velu_from_kernel_poly, velu_from_point,
    verify_height_theorem, verschiebung_power, DEFAULT_SEARCH_DEGREE,
};
use isoheight::modular::{
    cyclic_subgroup_count, isogeny_degree_bound, profile, proof_chain_report, report_from_rows,
    scan_rows, shafarevich_bound, write_scan_csv,
};
use isoheight::parse::{parse_point, parse_poly_x, parse_ratfunc, CurveSpec};
use isoheight::{BaseField, CurvePoint, Error, Isogeny, PolyX, WeierstrassCurve};

#[derive(Parser, Debug)]
#[command(
    name = "isoheight",
    version,
    about = "Heights, isogenies and X0(N) bounds over k(t)"
)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Constant field: Q or Fp.
    #[arg(long, default_value = "Q")]
    field: String,
    /// Characteristic when the field is Fp.
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weil height and inseparability degree of a rational function in t.
    Height {
        expr: String,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Invariants and local reduction data of a curve file.
    CurveInfo { file: PathBuf },
    /// Construct an isogeny from a curve file.
    Isogeny {
        #[command(subcommand)]
        kind: IsogenyCmd,
    },
    /// Run every height check on a curve file.
    Verify { file: PathBuf },
    /// The modular curves X0(N).
    X0 {
        #[command(subcommand)]
        cmd: X0Cmd,
    },
    /// Bound calculators.
    Bounds {
        #[command(subcommand)]
        cmd: BoundsCmd,
    },
}

#[derive(Args, Debug)]
struct KernelArgs {
    file: PathBuf,
    /// Generator of the kernel, written `x,y`.
    #[arg(long, conflicts_with = "kernel_poly")]
    kernel_point: Option<String>,
    /// Kernel polynomial in x with coefficients in k(t).
    #[arg(long)]
    kernel_poly: Option<String>,
    /// Frobenius exponent.
    #[arg(long)]
    e: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum IsogenyCmd {
    Velu(KernelArgs),
    Frobenius(KernelArgs),
    Verschiebung(KernelArgs),
    /// Dual of the Vélu isogeny given by a kernel, or of Frobenius^e.
    Dual(KernelArgs),
}

#[derive(Subcommand, Debug)]
enum X0Cmd {
    Genus {
        n: u64,
    },
    Scan {
        #[arg(long = "max")]
        n_max: u64,
        /// Write the rows to a `.csv` or `.json` file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// 49 max{1, g} max{d1/d2, d2/d1}, or 25 in the refined genus-0 case.
    Isogeny {
        #[arg(long, default_value_t = 0)]
        genus: u64,
        #[arg(long, default_value_t = 1)]
        d1: u64,
        #[arg(long, default_value_t = 1)]
        d2: u64,
        #[arg(long)]
        refined: bool,
    },
    /// 7^4 max{1, g}^2, times log_p M + 1 in characteristic p.
    Shafarevich {
        #[arg(long, default_value_t = 0)]
        genus: u64,
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        p: u64,
    },
    /// Number of cyclic subgroups of order at most X prime to p.
    Cyclic {
        #[arg(long)]
        x: u64,
        #[arg(long, default_value_t = 0)]
        p: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    pub error: Option<String>,
    pub exit_status: i32,
    #[serde(skip)]
    pub json: bool,
    /// Help or version text printed verbatim.
    #[serde(skip)]
    pub message: Option<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ..Default::default()
        }
    }

    fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, lhs: impl ToString, rhs: impl ToString) {
        self.checks.push(Check {
            name: name.into(),
            ok,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    fn finish(mut self) -> Self {
        if self.error.is_none() && self.exit_status == 0 && self.checks.iter().any(|c| !c.ok) {
            self.exit_status = 1;
        }
        self
    }

    pub fn ok(&self) -> bool {
        self.exit_status == 0
    }

    /// The text or JSON rendering, depending on `--json`.
    pub fn render(&self) -> String {
        if let Some(msg) = &self.message {
            return msg.clone();
        }
        if self.json {
            serde_json::to_string_pretty(self).expect("report serializes") + "\n"
        } else {
            self.render_text()
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let section = |out: &mut String, title: &str, map: &Map<String, Value>| {
            if map.is_empty() {
                return;
            }
            let _ = writeln!(out, "{title}:");
            for (k, v) in map {
                let _ = writeln!(out, "  {k}: {}", text_value(v));
            }
        };
        section(&mut out, "inputs", &self.inputs);
        section(&mut out, "results", &self.results);
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            for c in &self.checks {
                let tag = if c.ok { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "  [{tag}] {}: lhs = {}, rhs = {}",
                    c.name, c.lhs, c.rhs
                );
            }
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        let _ = writeln!(out, "exit_status: {}", self.exit_status);
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

type CmdResult = std::result::Result<(), String>;

fn err(e: Error) -> String {
    e.to_string()
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let mut r = Report::new("");
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            r.message = Some(e.render().to_string());
            r.exit_status = if informational { 0 } else { 2 };
            if !informational {
                r.error = Some(e.kind().to_string());
            }
            return r;
        }
    };
    let mut r = Report::new(&command_name(&cli.command));
    r.json = cli.json;
    if let Err(msg) = dispatch(&cli.command, &mut r) {
        r.error = Some(msg);
        r.exit_status = 2;
    }
    r.finish()
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Height { .. } => "height".into(),
        Command::CurveInfo { .. } => "curve-info".into(),
        Command::Isogeny { kind } => match kind {
            IsogenyCmd::Velu(_) => "isogeny velu",
            IsogenyCmd::Frobenius(_) => "isogeny frobenius",
            IsogenyCmd::Verschiebung(_) => "isogeny verschiebung",
            IsogenyCmd::Dual(_) => "isogeny dual",
        }
        .into(),
        Command::Verify { .. } => "verify".into(),
        Command::X0 { cmd } => match cmd {
            X0Cmd::Genus { .. } => "x0 genus",
            X0Cmd::Scan { .. } => "x0 scan",
        }
        .into(),
        Command::Bounds { cmd } => match cmd {
            BoundsCmd::Isogeny { .. } => "bounds isogeny",
            BoundsCmd::Shafarevich { .. } => "bounds shafarevich",
            BoundsCmd::Cyclic { .. } => "bounds cyclic",
        }
        .into(),
    }
}

fn dispatch(c: &Command, r: &mut Report) -> CmdResult {
    match c {
        Command::Height { expr, field } => height(expr, field, r),
        Command::CurveInfo { file } => curve_info(file, r),
        Command::Isogeny { kind } => isogeny(kind, r),
        Command::Verify { file } => verify(file, r),
        Command::X0 { cmd } => x0(cmd, r),
        Command::Bounds { cmd } => bounds(cmd, r),
    }
}

fn base_field(f: &FieldArgs) -> std::result::Result<BaseField, String> {
    match (f.field.as_str(), f.p) {
        ("Q", None) => Ok(BaseField::Rationals),
        ("Fp", Some(p)) => BaseField::prime_field(p).map_err(err),
        ("Q", Some(_)) => Err("--p is only meaningful with --field Fp".into()),
        ("Fp", None) => Err("--field Fp needs --p".into()),
        (other, _) => Err(format!("unknown field '{other}', expected Q or Fp")),
    }
}

fn height(expr: &str, field: &FieldArgs, r: &mut Report) -> CmdResult {
    let k = base_field(field)?;
    r.input("expr", expr);
    r.input("field", s(k));
    let f = parse_ratfunc(expr, k).map_err(err)?;
    r.result("value", s(&f));
    r.result("height", weil_height(&f));
    r.result("insep_degree", insep_degree(&f));
    if !f.is_zero() {
        r.result("pole_divisor", s(pole_divisor(&f).map_err(err)?));
    }
    Ok(())
}

fn load_curve(file: &Path, r: &mut Report) -> std::result::Result<WeierstrassCurve, String> {
    r.input("file", s(file.display()));
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let spec = CurveSpec::parse(&text).map_err(err)?;
    spec.build().map_err(err)
}

fn curve_json(e: &WeierstrassCurve) -> Value {
    let a = e.a_invariants();
    json!({
        "field": e.field().to_string(),
        "a1": a[0].to_string(),
        "a2": a[1].to_string(),
        "a3": a[2].to_string(),
        "a4": a[3].to_string(),
        "a6": a[4].to_string(),
    })
}

fn reduction_supported(e: &WeierstrassCurve) -> bool {
    let p = e.characteristic();
    p == 0 || p >= 5
}

fn curve_info(file: &Path, r: &mut Report) -> CmdResult {
    let e = load_curve(file, r)?;
    r.result("curve", curve_json(&e));
    r.result("discriminant", s(e.discriminant()));
    r.result("j_invariant", s(e.j_invariant()));
    r.result("modular_height", e.modular_height());
    r.result("isotrivial", e.is_isotrivial());
    r.result("j_insep_degree", e.j_insep_degree());
    if reduction_supported(&e) {
        r.result(
            "minimal_discriminant_degree",
            minimal_discriminant(&e).map_err(err)?.degree(),
        );
        r.result("conductor_degree", conductor(&e).map_err(err)?.degree());
        r.result(
            "differential_height",
            s(differential_height(&e).map_err(err)?),
        );
        r.result("semistable", e.is_semistable().map_err(err)?);
        let places: Vec<Value> = local_data(&e)
            .map_err(err)?
            .iter()
            .map(|d| {
                let kind = match d.kind {
                    ReductionType::Good => "good",
                    ReductionType::Multiplicative => "multiplicative",
                    ReductionType::Additive => "additive",
                };
                json!({
                    "place": d.place.to_string(),
                    "delta": d.delta,
                    "kind": kind,
                    "conductor_exponent": d.conductor_exponent,
                })
            })
            .collect();
        r.result("places", Value::Array(places));
    }
    let two = roots_in_base(&two_torsion_polynomial(&e), DEFAULT_SEARCH_DEGREE).map_err(err)?;
    r.result("two_torsion_x", Value::Array(two.iter().map(s).collect()));
    Ok(())
}

fn isogeny_json(phi: &Isogeny) -> Value {
    json!({
        "kind": phi.kind().to_string(),
        "degree": phi.degree(),
        "sep_degree": phi.sep_degree(),
        "insep_degree": phi.insep_degree(),
        "dual_insep_degree": phi.dual_insep_degree(),
        "x_map": phi.x_map().to_string(),
        "kernel_poly": phi.kernel_poly().map(|k| k.to_string()),
        "codomain": curve_json(phi.codomain()),
        "h_mod_domain": phi.domain().modular_height(),
        "h_mod_codomain": phi.codomain().modular_height(),
    })
}

fn kernel_isogeny(
    e: &WeierstrassCurve,
    a: &KernelArgs,
    r: &mut Report,
) -> std::result::Result<Isogeny, String> {
    if let Some(pt) = &a.kernel_point {
        r.input("kernel_point", pt.as_str());
        let (x, y) = parse_point(pt, e.field()).map_err(err)?;
        return velu_from_point(e, &CurvePoint::Affine(x, y)).map_err(err);
    }
    if let Some(k) = &a.kernel_poly {
        r.input("kernel_poly", k.as_str());
        let psi: PolyX = parse_poly_x(k, e.field()).map_err(err)?;
        return velu_from_kernel_poly(e, &psi).map_err(err);
    }
    Err("a kernel is required: pass --kernel-point x,y or --kernel-poly <expr>".into())
}

fn labelled(name: &str, label: &str) -> String {
    if label.is_empty() {
        name.to_string()
    } else {
        format!("{name} [{label}]")
    }
}

fn height_law_check(phi: &Isogeny, label: &str, r: &mut Report) -> CmdResult {
    let h = verify_height_theorem(phi).map_err(err)?;
    r.check(
        labelled("height law h(E2) deg_ins(dual) = h(E1) deg_ins", label),
        h.ok,
        h.lhs,
        h.rhs,
    );
    Ok(())
}

fn dual_check(phi: &Isogeny, label: &str, r: &mut Report) -> std::result::Result<Isogeny, String> {
    let dual = dual_isogeny(phi).map_err(err)?;
    let back = compose(&dual, phi).map_err(err)?;
    let mult = multiplication_x_map(phi.domain(), phi.degree() as usize).map_err(err)?;
    r.check(
        labelled("dual identity x(dual o phi) = x([deg])", label),
        back.x_map() == &mult,
        back.x_map(),
        &mult,
    );
    Ok(dual)
}

fn isogeny(kind: &IsogenyCmd, r: &mut Report) -> CmdResult {
    let a = match kind {
        IsogenyCmd::Velu(a)
        | IsogenyCmd::Frobenius(a)
        | IsogenyCmd::Verschiebung(a)
        | IsogenyCmd::Dual(a) => a,
    };
    let e = load_curve(&a.file, r)?;
    let exp = a.e.unwrap_or(1);
    let phi = match kind {
        IsogenyCmd::Velu(_) => kernel_isogeny(&e, a, r)?,
        IsogenyCmd::Frobenius(_) => {
            r.input("e", exp);
            frobenius_isogeny(&e, exp).map_err(err)?
        }
        IsogenyCmd::Verschiebung(_) => {
            r.input("e", exp);
            verschiebung_power(&e, exp).map_err(err)?
        }
        IsogenyCmd::Dual(_) => {
            if a.kernel_point.is_some() || a.kernel_poly.is_some() {
                kernel_isogeny(&e, a, r)?
            } else {
                r.input("e", exp);
                frobenius_isogeny(&e, exp).map_err(err)?
            }
        }
    };
    if let IsogenyCmd::Dual(_) = kind {
        r.result("isogeny", isogeny_json(&phi));
        let dual = dual_check(&phi, "", r)?;
        r.result("dual", isogeny_json(&dual));
    } else {
        r.result("isogeny", isogeny_json(&phi));
        if phi.y_map().is_some() {
            let ok = phi.image_on_codomain().map_err(err)?;
            r.check("generic point maps onto the codomain", ok, ok, true);
        }
    }
    if !e.is_isotrivial() {
        height_law_check(&phi, "", r)?;
    }
    Ok(())
}

/// Isogenies out of `e`: Vélu 2-isogenies from base-rational 2-torsion, and
/// in positive characteristic Frobenius, plus Verschiebung when `e` is itself
/// a Frobenius twist.
fn isogenies_from(e: &WeierstrassCurve) -> std::result::Result<Vec<(String, Isogeny)>, String> {
    let mut out = Vec::new();
    if e.characteristic() != 2 {
        let two = roots_in_base(&two_torsion_polynomial(e), DEFAULT_SEARCH_DEGREE).map_err(err)?;
        for x0 in &two {
            let psi = PolyX::linear(x0);
            out.push((
                format!("velu x = {x0}"),
                velu_from_kernel_poly(e, &psi).map_err(err)?,
            ));
        }
    }
    if e.characteristic() > 0 {
        out.push(("frobenius".into(), frobenius_isogeny(e, 1).map_err(err)?));
        if let Ok(root) = e.frobenius_root(1) {
            let v = verschiebung_power(&root, 1).map_err(err)?;
            if v.domain() == e {
                out.push(("verschiebung".into(), v));
            }
        }
    }
    Ok(out)
}

fn verify(file: &Path, r: &mut Report) -> CmdResult {
    let e = load_curve(file, r)?;
    r.result("curve", curve_json(&e));
    r.result("modular_height", e.modular_height());
    if e.is_isotrivial() {
        return Err("verify needs a non-isotrivial curve".into());
    }
    if reduction_supported(&e) {
        let hc = check_height_comparison(&e).map_err(err)?;
        r.check(
            "height comparison: 0 <= h_diff - h_mod/12 <= deg A",
            hc.ok,
            &hc.lhs,
            hc.bound,
        );
        let sz = check_szpiro(&e).map_err(err)?;
        r.check(
            "szpiro: deg Delta_min <= 6 deg_ins(j) (deg N - 2)",
            sz.ok,
            sz.min_disc_degree,
            sz.rhs,
        );
    } else {
        r.result("reduction_checks", "skipped in characteristic 2 and 3");
    }
    let mut basic = isogenies_from(&e)?;
    if e.characteristic() > 0 {
        basic.push((
            "verschiebung into E".into(),
            verschiebung_power(&e, 1).map_err(err)?,
        ));
    }
    for (label, phi) in &basic {
        height_law_check(phi, label, r)?;
        if phi.kernel_poly().is_some() {
            dual_check(phi, label, r)?;
        }
    }
    // composites of depth 2, chained through the codomains
    let mut composites = 0;
    for (l1, phi) in &basic {
        for (l2, psi) in isogenies_from(phi.codomain())? {
            let c = compose(&psi, phi).map_err(err)?;
            height_law_check(&c, &format!("({l2}) o ({l1})"), r)?;
            composites += 1;
        }
    }
    r.result("isogenies_checked", basic.len() + composites);
    if e.characteristic() == 0 || e.characteristic() > 3 {
        let fam = equal_height_family(&e, &[2]).map_err(err)?;
        let heights: Vec<u64> = fam.members.iter().map(|m| m.modular_height).collect();
        r.result("equal_height_family_size", fam.members.len());
        r.result("equal_height_family_heights", json!(heights));
        let h = e.modular_height();
        r.check(
            "equal-height family: distinct j, h_mod preserved",
            fam.distinct_j() && heights.iter().all(|&x| x == h),
            json!(heights),
            h,
        );
    }
    Ok(())
}

fn x0(cmd: &X0Cmd, r: &mut Report) -> CmdResult {
    match cmd {
        X0Cmd::Genus { n } => {
            r.input("N", *n);
            let p = profile(*n).map_err(err)?;
            r.result("psi", p.psi);
            r.result("nu2", p.nu2);
            r.result("nu3", p.nu3);
            r.result("nu_inf", p.nu_inf);
            r.result("genus", p.genus);
            for step in proof_chain_report(*n).map_err(err)?.steps {
                if step.applicable {
                    r.check(step.name, step.holds, step.lhs, step.rhs);
                }
            }
        }
        X0Cmd::Scan { n_max, export } => {
            r.input("max", *n_max);
            if *n_max == 0 {
                return Err("--max must be positive".into());
            }
            let rows = scan_rows(*n_max).map_err(err)?;
            let rep = report_from_rows(*n_max, &rows);
            r.result(
                "worst_49",
                serde_json::to_value(&rep.worst).expect("serializes"),
            );
            r.result(
                "worst_alt",
                serde_json::to_value(&rep.worst_alt).expect("serializes"),
            );
            r.result(
                "violations",
                serde_json::to_value(&rep.violations).expect("serializes"),
            );
            r.check("no bound violations", rep.ok(), rep.violations.len(), 0);
            if let Some(path) = export {
                r.input("export", s(path.display()));
                let file = std::fs::File::create(path)
                    .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
                match path.extension().and_then(|x| x.to_str()) {
                    Some("csv") => write_scan_csv(&rows, file).map_err(err)?,
                    Some("json") => serde_json::to_writer_pretty(file, &rows)
                        .map_err(|e| format!("json export failed: {e}"))?,
                    _ => return Err("export path must end in .csv or .json".into()),
                }
            }
        }
    }
    Ok(())
}

fn bounds(cmd: &BoundsCmd, r: &mut Report) -> CmdResult {
    match *cmd {
        BoundsCmd::Isogeny {
            genus,
            d1,
            d2,
            refined,
        } => {
            r.input("genus", genus);
            r.input("d1", d1);
            r.input("d2", d2);
            r.input("refined", refined);
            r.result(
                "bound",
                isogeny_degree_bound(genus, d1, d2, refined).map_err(err)?,
            );
        }
        BoundsCmd::Shafarevich { genus, m, p } => {
            r.input("genus", genus);
            r.input("M", m);
            r.input("p", p);
            r.result("bound", shafarevich_bound(genus, m, p).map_err(err)?);
        }
        BoundsCmd::Cyclic { x, p } => {
            r.input("X", x);
            r.input("p", p);
            let count = cyclic_subgroup_count(x, p).map_err(err)?;
            r.result("count", count);
            let cap = x as u128 * x as u128;
            r.check("count <= X^2", (count as u128) <= cap, count, cap);
        }
    }
    Ok(())
}
