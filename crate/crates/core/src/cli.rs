//! Command-line front end: argument definitions, dispatch and reports.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 input error, 3 resource
//! cap.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::ccybe::{self, ConformalForm, FamilyParams, SolutionCase};
use crate::conformal::{ConformalAlgebra, TensorElement};
use crate::conformal_rb::{
    self, catalog, bounded_search, check_conformal_rb, derive_rb_system, match_system,
    reference_system, ConformalMap, ZeroPattern,
};
use crate::error::Error;
use crate::exact::{GaussRat, Poly, Var};
use crate::lie::{catalog_sl2, check_rb, LieAlgebra, LinearMap};
use crate::schema;

pub const DEFAULT_MAX_CANDIDATES: u128 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "confrb", version, about = "Exact checks of Rota-Baxter operators on Lie conformal algebras")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// sl2, cur-sl2, cur-sl2x2, vir or rank2-example.
    #[arg(long, conflicts_with = "file")]
    pub preset: Option<String>,
    /// Algebra JSON: `{"generators", "table"}` or `{"basis", "brackets"}`.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Skew,
    Ccybe,
    Weak,
    Invariance,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Lie or conformal algebra axioms.
    Axioms {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Check the Rota-Baxter identity for a catalog entry or an operator file.
    RbCheck {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, conflicts_with = "operator")]
        catalog: Option<String>,
        /// Operator JSON: row-major nested arrays, column j is R(e_j).
        #[arg(long)]
        operator: Option<PathBuf>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        weight: String,
        /// Parameter values, `name=expr`; repeatable.
        #[arg(long = "set", value_name = "NAME=EXPR")]
        set: Vec<String>,
        /// Conjugate a catalog family by its normalizing automorphism.
        #[arg(long)]
        normalize: bool,
        /// List the catalog of the chosen algebra instead.
        #[arg(long)]
        list: bool,
    },
    /// Derive the 18-equation system for Cur(sl2) at weight 0 or 1.
    DeriveSystem {
        #[arg(long, default_value_t = 0)]
        weight: i64,
        /// Match against the tabulated system.
        #[arg(long)]
        compare: bool,
    },
    /// Conformal classical Yang-Baxter checks for a tensor or a solution family.
    Ccybe {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Tensor JSON: `{"rank": 2, "terms": {"e,f": poly}}`.
        #[arg(long, conflicts_with = "family")]
        tensor: Option<PathBuf>,
        /// Solution family on Cur(sl2): i, ii or iii.
        #[arg(long)]
        family: Option<String>,
        /// Monic polynomial f(x) of the family.
        #[arg(long, default_value = "1")]
        f: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        gamma: String,
        /// The scalar a_hh of family ii.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        scale: String,
        #[arg(long, value_enum, value_delimiter = ',', default_values = ["skew", "ccybe"])]
        check: Vec<Check>,
        /// Emit the weight-0 operator P(u) = Σ A_ij(-∂,∂)K(i,u)j and check it.
        #[arg(long)]
        to_rb: bool,
    },
    /// Exhaustive search over operators with bounded entries.
    Search {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        weight: String,
        #[arg(long, default_value_t = 1)]
        deg: u32,
        /// Comma-separated coefficient set, e.g. -1,0,1.
        #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
        coeffs: String,
        /// Zero pattern, e.g. `Re=0,Rh=diag` or `R0-sl2-zero`.
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, env = "CONFRB_MAX_CANDIDATES", default_value_t = DEFAULT_MAX_CANDIDATES)]
        max_candidates: u128,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Defect {
    pub location: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub defects: Vec<Defect>,
    pub output: Value,
    pub elapsed_ms: f64,
}

impl Report {
    fn new(command: &str, defects: Vec<Defect>, output: Value) -> Self {
        let status = if defects.is_empty() { Status::Pass } else { Status::Fail };
        Report {
            command: command.into(),
            status,
            defects,
            output,
            elapsed_ms: 0.0,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass | Status::Info => 0,
            Status::Fail => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        };
        let mut s = format!("{}: {status}\n", self.command);
        for d in &self.defects {
            let _ = writeln!(s, "  defect {}: {}", d.location, d.value);
        }
        if !self.output.is_null() {
            let body = serde_json::to_string_pretty(&readable(&self.output)).expect("json");
            for line in body.lines() {
                let _ = writeln!(s, "  {line}");
            }
        }
        let _ = writeln!(s, "  elapsed: {:.1} ms", self.elapsed_ms);
        s
    }
}

fn poly_terms(v: &Value) -> bool {
    v.as_array().is_some_and(|a| {
        a.iter().all(|t| t.get("coeff").is_some() && t.get("exps").is_some())
    })
}

fn poly_text(v: &Value) -> Value {
    Poly::from_json(v).map_or_else(|_| v.clone(), |p| Value::String(p.to_string()))
}

/// Structured polynomials (and matrices of them) in the text syntax.
fn readable(v: &Value) -> Value {
    match v {
        Value::Array(a) if !a.is_empty() && poly_terms(v) => poly_text(v),
        Value::Array(cols)
            if !cols.is_empty()
                && cols.iter().all(|c| {
                    c.as_array().is_some_and(|c| !c.is_empty() && c.iter().all(poly_terms))
                }) =>
        {
            Value::Array(
                cols.iter()
                    .map(|c| Value::Array(c.as_array().unwrap().iter().map(poly_text).collect()))
                    .collect(),
            )
        }
        Value::Array(a) => Value::Array(a.iter().map(readable).collect()),
        Value::Object(m) => Value::Object(m.iter().map(|(k, x)| (k.clone(), readable(x))).collect()),
        other => other.clone(),
    }
}

/// Exit code for an error.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap(_) => 3,
        _ => 2,
    }
}

pub fn error_json(e: &Error) -> Value {
    json!({ "status": "error", "exit_code": error_code(e), "error": e.to_string() })
}

enum Algebra {
    Lie(LieAlgebra),
    Conformal(ConformalAlgebra),
}

impl Algebra {
    fn names(&self) -> &[String] {
        match self {
            Algebra::Lie(g) => g.basis(),
            Algebra::Conformal(l) => l.generators(),
        }
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{} is not valid JSON: {e}", path.display())))
}

fn preset(name: &str) -> Result<Algebra, Error> {
    Ok(match name {
        "sl2" => Algebra::Lie(LieAlgebra::sl2()),
        "cur-sl2" => Algebra::Conformal(ConformalAlgebra::cur_sl2()),
        "cur-sl2x2" => Algebra::Conformal(catalog::cur_sl2_sum(2)?),
        "vir" => Algebra::Conformal(ConformalAlgebra::virasoro()),
        "rank2-example" => Algebra::Conformal(ConformalAlgebra::rank2_example()),
        other => {
            return Err(Error::Parse(format!(
                "unknown preset `{other}`; expected sl2, cur-sl2, cur-sl2x2, vir or rank2-example"
            )))
        }
    })
}

fn load_algebra(args: &AlgebraArgs, default: Option<&str>) -> Result<(Algebra, Option<String>), Error> {
    if let Some(path) = &args.file {
        let v = read_json(path)?;
        let alg = if v.get("table").is_some() {
            Algebra::Conformal(ConformalAlgebra::from_json(&v)?)
        } else if v.get("basis").is_some() {
            Algebra::Lie(LieAlgebra::from_json(&v)?)
        } else {
            return Err(Error::Parse(
                "algebra file needs `generators`/`table` or `basis`/`brackets`".into(),
            ));
        };
        return Ok((alg, None));
    }
    let name = args
        .preset
        .as_deref()
        .or(default)
        .ok_or_else(|| Error::Parse("give --preset or --file".into()))?;
    Ok((preset(name)?, Some(name.to_string())))
}

fn parse_poly(s: &str, what: &str) -> Result<Poly, Error> {
    Poly::parse(s).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn parse_scalar(s: &str, what: &str) -> Result<GaussRat, Error> {
    parse_poly(s, what)?
        .as_constant()
        .ok_or_else(|| Error::Parse(format!("{what} must be a number, got `{s}`")))
}

fn parse_bindings(set: &[String]) -> Result<BTreeMap<Var, Poly>, Error> {
    set.iter()
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("--set expects NAME=EXPR, got `{kv}`")))?;
            Ok((Var::named(k.trim()), parse_poly(v, k)?))
        })
        .collect()
}

fn vector_defects(label: String, v: &[Poly], names: &[String], out: &mut Vec<Defect>) {
    for (c, p) in v.iter().enumerate() {
        if !p.is_zero() {
            out.push(Defect {
                location: format!("{label}/{}", names[c]),
                value: p.to_string(),
            });
        }
    }
}

fn pair_label(names: &[String], i: usize, j: usize) -> String {
    format!("[{}]", schema::format_key(&[i, j], names))
}

/// Parses `args` (without the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Result<Report, Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("confrb")).chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(|e| Error::Parse(e.to_string()))?;
    run(&cli)
}

pub fn run(cli: &Cli) -> Result<Report, Error> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Axioms { algebra } => cmd_axioms(algebra),
        Command::RbCheck {
            algebra,
            catalog,
            operator,
            weight,
            set,
            normalize,
            list,
        } => cmd_rb_check(algebra, catalog.as_deref(), operator.as_ref(), weight, set, *normalize, *list),
        Command::DeriveSystem { weight, compare } => cmd_derive_system(*weight, *compare),
        Command::Ccybe {
            algebra,
            tensor,
            family,
            f,
            alpha,
            beta,
            gamma,
            scale,
            check,
            to_rb,
        } => {
            let fam = match family {
                Some(name) => Some((
                    name.parse::<SolutionCase>()?,
                    parse_poly(f, "--f")?,
                    FamilyParams {
                        alpha: parse_poly(alpha, "--alpha")?,
                        beta: parse_poly(beta, "--beta")?,
                        gamma: parse_poly(gamma, "--gamma")?,
                        scale: parse_poly(scale, "--scale")?,
                    },
                )),
                None => None,
            };
            cmd_ccybe(algebra, tensor.as_ref(), fam, check, *to_rb)
        }
        Command::Search {
            algebra,
            weight,
            deg,
            coeffs,
            pattern,
            max_candidates,
        } => cmd_search(algebra, weight, *deg, coeffs, pattern.as_deref(), *max_candidates),
    }?;
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn cmd_axioms(args: &AlgebraArgs) -> Result<Report, Error> {
    let (alg, name) = load_algebra(args, None)?;
    let names = alg.names().to_vec();
    let mut defects = Vec::new();
    let kind = match &alg {
        Algebra::Lie(g) => {
            for ((a, b, c), v) in g.jacobi_defects() {
                let label = format!("jacobi[{}]", schema::format_key(&[a, b, c], &names));
                vector_defects(label, &v, &names, &mut defects);
            }
            "lie"
        }
        Algebra::Conformal(l) => {
            let rep = l.check_conformal_axioms();
            for ((a, b), v) in rep.anticommutativity {
                vector_defects(format!("anticommutativity{}", pair_label(&names, a, b)), &v, &names, &mut defects);
            }
            for ((a, b, c), v) in rep.jacobi {
                let label = format!("jacobi[{}]", schema::format_key(&[a, b, c], &names));
                vector_defects(label, &v, &names, &mut defects);
            }
            "conformal"
        }
    };
    Ok(Report::new(
        "axioms",
        defects,
        json!({ "algebra": name, "kind": kind, "generators": names }),
    ))
}

enum Operator {
    Lie(LinearMap),
    Conformal(ConformalMap),
}

struct Named {
    name: String,
    op: Operator,
    entry: Option<conformal_rb::ConformalCatalogEntry>,
}

fn catalog_for(preset: &str, weight: &Poly) -> Result<Vec<Named>, Error> {
    // the catalog of the requested weight first, then the other one
    let order: Vec<i64> = match weight.as_constant().map(|c| c.to_string()) {
        Some(w) if w == "1" => vec![1, 0],
        _ => vec![0, 1],
    };
    let mut out = Vec::new();
    for w in order {
        match preset {
            "sl2" => {
                for e in catalog_sl2(w)? {
                    out.push(Named { name: e.name, op: Operator::Lie(e.map), entry: None });
                }
            }
            "cur-sl2" => {
                for e in catalog::catalog_cur_sl2(w)? {
                    out.push(Named {
                        name: e.name.clone(),
                        op: Operator::Conformal(e.map.clone()),
                        entry: Some(e),
                    });
                }
                let e = catalog::cartan_example(1, w)?;
                out.push(Named { name: "cartan".into(), op: Operator::Conformal(e.map.clone()), entry: Some(e) });
            }
            "cur-sl2x2" => {
                let e = catalog::cartan_example(2, w)?;
                out.push(Named { name: "cartan".into(), op: Operator::Conformal(e.map.clone()), entry: Some(e) });
            }
            "rank2-example" if w == 0 => {
                for e in catalog::catalog_rank2() {
                    out.push(Named {
                        name: e.name.clone(),
                        op: Operator::Conformal(e.map.clone()),
                        entry: Some(e),
                    });
                }
            }
            _ => {}
        }
    }
    Ok(out)
}

fn trivial(n: usize, weight: &Poly, lie: bool, name: &str) -> Option<Named> {
    let m = match name {
        "zero" => crate::exact::PolyMatrix::zero(n),
        "minus-id" => crate::exact::PolyMatrix::identity(n).scale(&-weight),
        _ => return None,
    };
    let op = if lie {
        Operator::Lie(LinearMap::new(m))
    } else {
        Operator::Conformal(ConformalMap::new(m).ok()?)
    };
    Some(Named { name: name.into(), op, entry: None })
}

fn cmd_rb_check(
    args: &AlgebraArgs,
    cat: Option<&str>,
    operator: Option<&PathBuf>,
    weight: &str,
    set: &[String],
    normalize: bool,
    list: bool,
) -> Result<Report, Error> {
    let (alg, preset_name) = load_algebra(args, Some("cur-sl2"))?;
    let names = alg.names().to_vec();
    let bind = parse_bindings(set)?;
    let weight = parse_poly(weight, "--weight")?.substitute(&bind);
    let lie = matches!(alg, Algebra::Lie(_));
    if list {
        let p = preset_name.ok_or_else(|| Error::Parse("--list needs --preset".into()))?;
        let mut seen: Vec<String> = catalog_for(&p, &weight)?.into_iter().map(|n| n.name).collect();
        seen.extend(["zero".to_string(), "minus-id".to_string()]);
        seen.dedup();
        let mut info = Report::new("rb-check", vec![], json!({ "preset": p, "catalog": seen }));
        info.status = Status::Info;
        return Ok(info);
    }
    let named = match (cat, operator) {
        (Some(c), _) => {
            let p = preset_name
                .clone()
                .ok_or_else(|| Error::Catalog("catalog entries need --preset".into()))?;
            let found = catalog_for(&p, &weight)?.into_iter().find(|n| n.name == c);
            found
                .or_else(|| trivial(names.len(), &weight, lie, c))
                .ok_or_else(|| Error::Catalog(format!("no catalog entry `{c}` for preset {p}")))?
        }
        (None, Some(path)) => {
            let v = read_json(path)?;
            let m = v.get("matrix").unwrap_or(&v);
            let op = if lie {
                Operator::Lie(LinearMap::from_json(m)?)
            } else {
                Operator::Conformal(ConformalMap::from_json(m)?)
            };
            Named { name: path.display().to_string(), op, entry: None }
        }
        (None, None) => return Err(Error::Parse("give --catalog or --operator".into())),
    };
    let mut defects = Vec::new();
    let mut output = json!({ "operator": named.name, "weight": weight.to_string() });
    match (&alg, named.op) {
        (Algebra::Lie(g), Operator::Lie(r)) => {
            let r = LinearMap::new(r.matrix.map(|p| p.substitute(&bind)));
            if normalize {
                return Err(Error::Parse("--normalize applies to Cur(sl2) families".into()));
            }
            let w = check_rb(g, &r, &weight)?;
            for ((i, j), v) in w.failures() {
                vector_defects(pair_label(&names, *i, *j), v, &names, &mut defects);
            }
            output["matrix"] = r.to_json();
        }
        (Algebra::Conformal(l), Operator::Conformal(r)) => {
            let r = if normalize {
                let entry = named
                    .entry
                    .ok_or_else(|| Error::Parse("--normalize needs a catalog family".into()))?;
                let n = entry.normalize(&bind)?;
                output["normalizer"] = json!(format!("{:?}", entry.normalizer));
                output["family"] = json!(family_of(&n));
                n
            } else {
                r.substitute(&bind)
            };
            let rep = check_conformal_rb(l, &r, &weight)?;
            for ((i, j), v) in rep.failures() {
                vector_defects(pair_label(&names, *i, *j), v, &names, &mut defects);
            }
            output["matrix"] = r.to_json();
        }
        _ => return Err(Error::Parse("operator kind does not match the algebra".into())),
    }
    Ok(Report::new("rb-check", defects, output))
}

/// Which Cur(sl₂) normal form an operator matches, if any.
fn family_of(r: &ConformalMap) -> Value {
    if r.matrix.dim() != 3 {
        return Value::Null;
    }
    if let Some(q) = catalog::match_r2(r) {
        return json!({ "name": "R2", "q": q.to_string() });
    }
    if let Some((q, a)) = catalog::match_r1(r) {
        return json!({ "name": "R1", "q": q.to_string(), "alpha": a.to_string() });
    }
    if let Some(q) = catalog::match_q1(r) {
        return json!({ "name": "Q1", "q": q.to_string() });
    }
    if r.matrix.entries().all(|p| !p.involves(Var::D)) {
        return json!({ "name": "constant" });
    }
    json!({ "name": "other" })
}

fn cmd_derive_system(weight: i64, compare: bool) -> Result<Report, Error> {
    let derived = derive_rb_system(weight)?;
    let mut output = json!({ "weight": weight, "count": derived.len(), "equations": derived.to_json() });
    if !compare {
        let mut r = Report::new("derive-system", vec![], output);
        r.status = Status::Info;
        return Ok(r);
    }
    let reference = reference_system(weight)?;
    let m = match_system(&derived, &reference);
    let mut defects = Vec::new();
    for &i in &m.unmatched_derived {
        let e = &derived.equations[i];
        defects.push(Defect {
            location: format!("derived {}", conformal_rb::pair_label(&derived, e)),
            value: e.poly.to_string(),
        });
    }
    for &i in &m.unmatched_reference {
        let e = &reference.equations[i];
        defects.push(Defect {
            location: format!("reference #{}", i + 1),
            value: e.poly.to_string(),
        });
    }
    output["matched"] = json!(m.matched.len());
    output["reference_count"] = json!(reference.len());
    Ok(Report::new("derive-system", defects, output))
}

fn cmd_ccybe(
    args: &AlgebraArgs,
    tensor: Option<&PathBuf>,
    family: Option<(SolutionCase, Poly, FamilyParams)>,
    checks: &[Check],
    to_rb: bool,
) -> Result<Report, Error> {
    let (alg, _) = load_algebra(args, Some("cur-sl2"))?;
    let l = match alg {
        Algebra::Conformal(l) => l,
        Algebra::Lie(_) => return Err(Error::UnsupportedAlgebra("ccybe needs a conformal algebra".into())),
    };
    let names = l.generators().to_vec();
    let r = match (tensor, family) {
        (Some(path), _) => TensorElement::from_json(&read_json(path)?, &names)?,
        (None, Some((case, f, params))) => {
            if names != ["e", "f", "h"] {
                return Err(Error::Family("solution families live on cur-sl2".into()));
            }
            ccybe::cursl2_solution_family(case, &f, &params)?
        }
        (None, None) => return Err(Error::Parse("give --tensor or --family".into())),
    };
    if r.rank() != 2 {
        return Err(Error::Rank(format!("expected a rank-2 tensor, got rank {}", r.rank())));
    }
    let mut defects = Vec::new();
    let mut results = serde_json::Map::new();
    let push_tensor = |label: &str, t: &TensorElement, defects: &mut Vec<Defect>| {
        for (k, c) in t.terms() {
            defects.push(Defect {
                location: format!("{label}[{}]", schema::format_key(k, &names)),
                value: c.to_string(),
            });
        }
    };
    for check in checks {
        let (key, ok) = match check {
            Check::Skew => {
                let sym = r.add(&ccybe::tau(&r)?)?;
                push_tensor("skew", &sym, &mut defects);
                ("skew", sym.is_zero())
            }
            Check::Ccybe => {
                let db = ccybe::double_bracket(&l, &r)?;
                push_tensor("ccybe", &db, &mut defects);
                ("ccybe", db.is_zero())
            }
            Check::Weak => {
                let d = ccybe::weak_ccybe_defects(&l, &r)?;
                for (a, t) in &d {
                    push_tensor(&format!("weak {}", names[*a]), t, &mut defects);
                }
                ("weak", d.is_empty())
            }
            Check::Invariance => {
                let d = ccybe::invariance_defects(&l, &r)?;
                for (a, t) in &d {
                    push_tensor(&format!("invariance {}", names[*a]), t, &mut defects);
                }
                ("invariance", d.is_empty())
            }
        };
        results.insert(key.into(), json!(ok));
    }
    let mut output = json!({ "tensor": r.to_json(&names), "checks": results });
    if to_rb {
        let form = ConformalForm::killing(&l)?;
        let p = ccybe::rb_from_solution(&form, &r)?;
        let rep = check_conformal_rb(&l, &p, &Poly::zero())?;
        for ((i, j), v) in rep.failures() {
            vector_defects(format!("rb{}", pair_label(&names, *i, *j)), v, &names, &mut defects);
        }
        let fam = family_of(&p);
        let odd = fam
            .get("q")
            .and_then(Value::as_str)
            .and_then(|q| Poly::parse(q).ok())
            .and_then(|q| q.is_odd_in(Var::D).ok());
        output["operator"] = p.to_json();
        output["rb"] = json!(rep.is_rb());
        output["family"] = fam;
        output["q_odd"] = json!(odd);
    }
    Ok(Report::new("ccybe", defects, output))
}

fn cmd_search(
    args: &AlgebraArgs,
    weight: &str,
    deg: u32,
    coeffs: &str,
    pattern: Option<&str>,
    max: u128,
) -> Result<Report, Error> {
    let (alg, _) = load_algebra(args, None)?;
    let l = match alg {
        Algebra::Conformal(l) => l,
        Algebra::Lie(_) => return Err(Error::UnsupportedAlgebra("search needs a conformal algebra".into())),
    };
    let k = parse_scalar(weight, "--weight")?;
    let coeffs: Vec<GaussRat> = coeffs
        .split(',')
        .map(|c| parse_scalar(c.trim(), "--coeffs"))
        .collect::<Result<_, _>>()?;
    let pat = match pattern {
        Some(p) => ZeroPattern::parse(p, l.generators())?,
        None => ZeroPattern::free(l.rank()),
    };
    let out = bounded_search(&l, &k, deg, &coeffs, &pat, max)?;
    let hits: Vec<Value> = out.hits.iter().map(ConformalMap::to_json).collect();
    Ok(Report::new(
        "search",
        vec![],
        json!({
            "candidates": out.candidates.to_string(),
            "screened": out.screened,
            "hit_count": hits.len(),
            "hits": hits,
        }),
    ))
}
