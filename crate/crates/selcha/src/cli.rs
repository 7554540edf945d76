//! Command-line front end. Every subcommand prints one report, as text or
//! JSON with identical fields, and exits 0 on a passing result, 1 on a
//! mathematical failure, 2 on a usage or input error. Reports always start
//! with a `config` block echoing the run's effective options.

use crate::chabauty::{
    assemble_image, criterion, parse_selmer, recheck_image, ChabautyError, DiskCertificate,
    ImageSet,
};
use crate::curves::{
    enumerate_points, parse_curve_line, parse_descending_coeffs, sym2_classes_raw,
    two_torsion_trivial, GoodnessReport, LongCurve, ShortCurve,
};
use crate::density::{density_report, DyadicRational};
use crate::dyadic::DEFAULT_PRECISION;
use crate::montecarlo::{run_trials, SimConfig, MODEL_LABEL};
use crate::series::{basis_change_matrix, infinity_chart, pair_disk, BasisChange, SeriesError};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MATH_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Long,
    Short,
}

#[derive(Debug, Parser)]
#[command(
    name = "selcha",
    version,
    about = "Certified 2-adic data for symmetric squares of odd hyperelliptic curves",
    arg_required_else_help = true
)]
pub struct Cli {
    /// Report format; text and JSON carry identical fields.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the mod-2 goodness conditions for a curve.
    CheckGood(CurveOpt),
    /// Enumerate points over F_2 and F_4 and the symmetric-square classes.
    Points(CurveOpt),
    /// Newton polygon of the squared model, with the irreducibility verdict.
    Polygon(PolygonOpt),
    /// Expand disk coordinates, differential bases, and the basis change.
    Expand(SeriesOpt),
    /// Build and recheck the full image certificate.
    Certify(SeriesOpt),
    /// Evaluate the finiteness criterion against a Selmer file.
    Criterion(CriterionOpt),
    /// Exact density formulas for one genus.
    Density(DensityOpt),
    /// Sample the criterion pass rate under the heuristic model.
    Simulate(SimulateOpt),
    /// Batch-process a curve file, one report row per input line.
    Scan(ScanOpt),
}

#[derive(Debug, Args)]
struct CurveOpt {
    /// Curve genus, at least 2.
    #[arg(long)]
    genus: u32,
    /// Coefficients c_1,...,c_{2g+1} of x^{2g} down to x^0, comma separated;
    /// the leading x^{2g+1} is implicit.
    #[arg(long)]
    curve: String,
}

#[derive(Debug, Args)]
struct PolygonOpt {
    #[command(flatten)]
    curve: CurveOpt,
    /// Input model: long (y^2 + y = h) or short (y^2 = f).
    #[arg(long, value_enum, default_value_t = Model::Long)]
    model: Model,
}

#[derive(Debug, Args)]
struct SeriesOpt {
    #[command(flatten)]
    curve: CurveOpt,
    /// Working precision in bits for truncated 2-adics.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Series truncation order; default max(2g+6, 16).
    #[arg(long)]
    truncation: Option<usize>,
}

#[derive(Debug, Args)]
struct CriterionOpt {
    #[command(flatten)]
    series: SeriesOpt,
    /// Selmer file: header "g r", then r rows of g bits each.
    #[arg(long)]
    selmer: PathBuf,
}

#[derive(Debug, Args)]
struct DensityOpt {
    /// Curve genus, at least 2.
    #[arg(long)]
    genus: u32,
}

#[derive(Debug, Args)]
struct SimulateOpt {
    /// Genus of the sampled Selmer vectors and of the image.
    #[arg(long)]
    genus: u32,
    /// Number of sampled trials.
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// RNG seed; required so runs are reproducible.
    #[arg(long)]
    seed: u64,
    /// File of image bitstrings, one row of g bits per line.
    #[arg(long)]
    image: Option<PathBuf>,
    /// Curve whose certified image to sample against, c_1..c_{2g+1} as
    /// elsewhere; default is the first good trinomial x^{2g+1} + x^a + 1.
    #[arg(long)]
    curve: Option<String>,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    #[arg(long)]
    truncation: Option<usize>,
}

#[derive(Debug, Args)]
struct ScanOpt {
    /// Curve file: one "g; c_1, ..., c_{2g+1}" per line.
    #[arg(long)]
    file: PathBuf,
}

pub fn main_from_env() -> i32 {
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    run(std::env::args(), &mut out, &mut err)
}

/// Parse and dispatch; reports go to `out`, diagnostics to `err`. The
/// return value is the process exit code.
pub fn run<I, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = String>,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok((report, code)) => {
            emit(&report, cli.format, out);
            code
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli) -> Result<(Value, i32), String> {
    match &cli.command {
        Command::CheckGood(o) => cmd_check_good(o, cli.format),
        Command::Points(o) => cmd_points(o, cli.format),
        Command::Polygon(o) => cmd_polygon(o, cli.format),
        Command::Expand(o) => cmd_expand(o, cli.format),
        Command::Certify(o) => cmd_certify(o, cli.format),
        Command::Criterion(o) => cmd_criterion(o, cli.format),
        Command::Density(o) => cmd_density(o, cli.format),
        Command::Simulate(o) => cmd_simulate(o, cli.format),
        Command::Scan(o) => cmd_scan(o, cli.format),
    }
}

fn emit<W: Write>(report: &Value, format: Format, out: &mut W) {
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(report).expect("report is serializable");
            let _ = writeln!(out, "{text}");
        }
        Format::Text => {
            let _ = out.write_all(render_text(report).as_bytes());
        }
    }
}

/// Deterministic line renderer over the same JSON value the `json` format
/// prints, so both formats expose identical fields.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                render_entry(k, v, 0, &mut out);
            }
        }
        other => render_entry("value", other, 0, &mut out),
    }
    out
}

fn render_entry(key: &str, value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in map {
                render_entry(k, v, indent + 1, out);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let joined = items
                .iter()
                .map(scalar_string)
                .collect::<Vec<_>>()
                .join(", ");
            out.push_str(&format!("{pad}{key}: [{joined}]\n"));
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, item) in items.iter().enumerate() {
                let label = format!("{key}[{i}]");
                render_entry(&label, item, indent + 1, out);
            }
        }
        scalar => {
            out.push_str(&format!("{pad}{key}: {}\n", scalar_string(scalar)));
        }
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn scalar_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn format_name(format: Format) -> &'static str {
    match format {
        Format::Text => "text",
        Format::Json => "json",
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn with_config(config: Value, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("config".to_string(), config);
    if let Value::Object(b) = body {
        map.extend(b);
    }
    Value::Object(map)
}

fn error_body(stage: &str, message: String) -> Value {
    json!({
        "status": "fail",
        "error": { "stage": stage, "message": message },
    })
}

fn check_genus(genus: u32) -> Result<(), String> {
    if genus < 2 {
        return Err("--genus: must be at least 2".to_string());
    }
    if genus > 50 {
        return Err("--genus: at most 50 is supported".to_string());
    }
    Ok(())
}

fn check_precision(precision: u32) -> Result<(), String> {
    if (4..=512).contains(&precision) {
        Ok(())
    } else {
        Err("--precision: must be between 4 and 512".to_string())
    }
}

fn default_truncation(genus: u32) -> usize {
    (2 * genus as usize + 6).max(16)
}

fn resolve_truncation(genus: u32, flag: Option<usize>) -> Result<usize, String> {
    let min = (2 * genus as usize + 2).max(8);
    match flag {
        None => Ok(default_truncation(genus)),
        Some(t) if t < min => Err(format!(
            "--truncation: must be at least {min} for genus {genus}"
        )),
        Some(t) if t > 512 => Err("--truncation: at most 512 is supported".to_string()),
        Some(t) => Ok(t),
    }
}

fn parse_curve(genus: u32, text: &str) -> Result<LongCurve, String> {
    parse_descending_coeffs(genus, text).map_err(|e| format!("--curve: {e}"))
}

fn parse_short(genus: u32, text: &str) -> Result<ShortCurve, String> {
    let mut coeffs = Vec::new();
    for part in text.split(',') {
        let trimmed = part.trim();
        let v: i64 = trimmed
            .parse()
            .map_err(|_| format!("--curve: bad integer coefficient {trimmed:?}"))?;
        coeffs.push(DyadicRational::from_int(v));
    }
    coeffs.reverse();
    ShortCurve::new(genus, coeffs).map_err(|e| format!("--curve: {e}"))
}

fn read_file(path: &Path, flag: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{flag}: {}: {e}", path.display()))
}

fn goodness_json(rep: &GoodnessReport) -> Value {
    json!({
        "support_mod2": rep.support,
        "exponents_div3": rep.class0,
        "exponents_other": rep.class12,
        "constant_odd": rep.constant_odd,
        "div3_count_even": rep.class0_even,
        "other_count_odd": rep.class12_odd,
        "good": rep.good,
    })
}

fn quantity_json(q: &DyadicRational) -> Value {
    json!({ "exact": q.to_string(), "pow2": q.pow2_string() })
}

fn basis_change_json(change: &BasisChange) -> Value {
    json!({
        "matrix": change
            .matrix
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "mod2_rows": change.mod2.bitstrings(),
        "det_odd": change.det_odd,
    })
}

fn disk_json(cert: &DiskCertificate) -> Value {
    json!({
        "disk": cert.disk.to_string(),
        "floor_per_index": cert.floor.to_string(),
        "n_terms": cert.terms.len(),
        "surviving": cert
            .surviving
            .iter()
            .map(|&(c, i)| json!([c, i]))
            .collect::<Vec<_>>(),
        "tail": {
            "threshold": cert.tail.threshold,
            "base_inequality": cert.tail.base_inequality,
            "monotone": cert.tail.monotone,
            "holds": cert.tail.holds,
        },
        "image": cert.image.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "witnesses": cert
            .witnesses
            .iter()
            .map(|w| json!({
                "description": w.description,
                "residues": w.residues.bitstring(),
                "point": w.point.to_string(),
            }))
            .collect::<Vec<_>>(),
    })
}

fn image_bitstrings(image: &ImageSet) -> Vec<String> {
    image
        .points
        .iter()
        .map(|p| p.coords().bitstring())
        .collect()
}

fn cmd_check_good(o: &CurveOpt, format: Format) -> Result<(Value, i32), String> {
    check_genus(o.genus)?;
    let h = parse_curve(o.genus, &o.curve)?;
    let rep = h.goodness();
    let report = json!({
        "config": {
            "subcommand": "check-good",
            "genus": o.genus,
            "curve": o.curve,
            "format": format_name(format),
        },
        "curve": h.to_string(),
        "goodness": goodness_json(&rep),
        "status": status(rep.good),
    });
    let code = if rep.good { EXIT_PASS } else { EXIT_MATH_FAIL };
    Ok((report, code))
}

fn cmd_points(o: &CurveOpt, format: Format) -> Result<(Value, i32), String> {
    check_genus(o.genus)?;
    let h = parse_curve(o.genus, &o.curve)?;
    let counts = enumerate_points(&h);
    let sym = sym2_classes_raw(&h);
    let report = json!({
        "config": {
            "subcommand": "points",
            "genus": o.genus,
            "curve": o.curve,
            "format": format_name(format),
        },
        "curve": h.to_string(),
        "good": h.is_good(),
        "n_f2": counts.n_f2,
        "n_f4": counts.n_f4,
        "f4_points": counts
            .f4_points
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>(),
        "sym2": {
            "n_classes": sym.n_classes,
            "all_fibers": sym.all_fibers,
            "classes": sym
                .classes
                .iter()
                .map(|c| json!({
                    "first": c.first.to_string(),
                    "second": c.second.to_string(),
                    "split": c.split,
                    "fiber": c.is_fiber,
                }))
                .collect::<Vec<_>>(),
        },
        "two_torsion_trivial": two_torsion_trivial(&h),
        "status": "pass",
    });
    Ok((report, EXIT_PASS))
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

fn slope_string(dv: i64, di: i64) -> String {
    let g = gcd_i64(dv, di).max(1);
    let (n, d) = (dv / g, di / g);
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

fn cmd_polygon(o: &PolygonOpt, format: Format) -> Result<(Value, i32), String> {
    check_genus(o.curve.genus)?;
    let (f, input_model) = match o.model {
        Model::Long => {
            let h = parse_curve(o.curve.genus, &o.curve.curve)?;
            (h.complete_square(), "long")
        }
        Model::Short => (parse_short(o.curve.genus, &o.curve.curve)?, "short"),
    };
    let poly = f.newton_polygon();
    let slopes: Vec<String> = poly
        .vertices
        .windows(2)
        .map(|w| slope_string(w[1].1 - w[0].1, w[1].0 - w[0].0))
        .collect();
    let report = json!({
        "config": {
            "subcommand": "polygon",
            "genus": o.curve.genus,
            "curve": o.curve.curve,
            "model": input_model,
            "format": format_name(format),
        },
        "squared_model": f.to_string(),
        "height": f.height(),
        "vertices": poly
            .vertices
            .iter()
            .map(|&(i, v)| json!([i, v]))
            .collect::<Vec<_>>(),
        "slopes": slopes,
        "single_segment": poly.single_segment,
        "certifies_irreducible": poly.certifies_irreducible,
        "status": status(poly.certifies_irreducible),
    });
    let code = if poly.certifies_irreducible {
        EXIT_PASS
    } else {
        EXIT_MATH_FAIL
    };
    Ok((report, code))
}

fn series_config(sub: &str, o: &SeriesOpt, trunc: usize, format: Format) -> Value {
    json!({
        "subcommand": sub,
        "genus": o.curve.genus,
        "curve": o.curve.curve,
        "precision": o.precision,
        "truncation": trunc,
        "format": format_name(format),
    })
}

fn expand_body(h: &LongCurve, trunc: usize, prec: u32) -> Result<Value, SeriesError> {
    let chart = infinity_chart(h, trunc, prec)?;
    let disk = pair_disk(h, trunc, prec)?;
    let change = basis_change_matrix(h, trunc, prec)?;
    let strings = |coeffs: &[crate::dyadic::Dyadic]| {
        coeffs.iter().map(ToString::to_string).collect::<Vec<_>>()
    };
    Ok(json!({
        "status": "pass",
        "infinity": {
            "s_of_t": strings(chart.s.coeffs()),
            "normalizer": chart.normalizer.to_string(),
            "omega_normalized": chart
                .omega
                .iter()
                .enumerate()
                .map(|(idx, w)| json!({
                    "j": idx + 1,
                    "leading_order": w.leading_order(),
                    "coeffs": strings(w.coeffs()),
                }))
                .collect::<Vec<_>>(),
        },
        "pair_disk": {
            "gamma": disk.gamma.to_string(),
            "eta_normalized": disk
                .eta_hat
                .iter()
                .enumerate()
                .map(|(idx, e)| json!({
                    "j": idx + 1,
                    "leading_order": e.leading_order(),
                    "coeffs": strings(e.coeffs()),
                }))
                .collect::<Vec<_>>(),
        },
        "basis_change": basis_change_json(&change),
    }))
}

fn cmd_expand(o: &SeriesOpt, format: Format) -> Result<(Value, i32), String> {
    check_genus(o.curve.genus)?;
    check_precision(o.precision)?;
    let trunc = resolve_truncation(o.curve.genus, o.truncation)?;
    let h = parse_curve(o.curve.genus, &o.curve.curve)?;
    let config = series_config("expand", o, trunc, format);
    if let Err(e) = h.require_good() {
        return Ok((
            with_config(config, error_body("goodness", e.to_string())),
            EXIT_MATH_FAIL,
        ));
    }
    match expand_body(&h, trunc, o.precision) {
        Ok(mut body) => {
            if let Value::Object(map) = &mut body {
                let mut with_curve = Map::new();
                with_curve.insert("curve".to_string(), Value::String(h.to_string()));
                with_curve.extend(std::mem::take(map));
                *map = with_curve;
            }
            Ok((with_config(config, body), EXIT_PASS))
        }
        Err(e) => Ok((
            with_config(config, error_body("expand", e.to_string())),
            EXIT_MATH_FAIL,
        )),
    }
}

fn cmd_certify(o: &SeriesOpt, format: Format) -> Result<(Value, i32), String> {
    check_genus(o.curve.genus)?;
    check_precision(o.precision)?;
    let trunc = resolve_truncation(o.curve.genus, o.truncation)?;
    let h = parse_curve(o.curve.genus, &o.curve.curve)?;
    let config = series_config("certify", o, trunc, format);
    match assemble_image(&h, trunc, o.precision) {
        Err(e) => Ok((
            with_config(config, error_body("certify", e.to_string())),
            EXIT_MATH_FAIL,
        )),
        Ok(ri) => {
            let rechecked = recheck_image(&ri);
            let body = json!({
                "curve": h.to_string(),
                "status": status(rechecked),
                "disks": [
                    disk_json(&ri.infinity),
                    disk_json(&ri.zero_pair),
                    disk_json(&ri.one_pair),
                ],
                "basis_change": basis_change_json(&ri.basis_change),
                "pascal_rows": ri.pascal.bitstrings(),
                "image": ri.bitstrings(),
                "image_points": ri
                    .image
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>(),
                "cardinality": ri.image.len(),
                "recheck": rechecked,
            });
            let code = if rechecked { EXIT_PASS } else { EXIT_MATH_FAIL };
            Ok((with_config(config, body), code))
        }
    }
}

fn cmd_criterion(o: &CriterionOpt, format: Format) -> Result<(Value, i32), String> {
    let genus = o.series.curve.genus;
    check_genus(genus)?;
    check_precision(o.series.precision)?;
    let trunc = resolve_truncation(genus, o.series.truncation)?;
    let text = read_file(&o.selmer, "--selmer")?;
    let selmer = parse_selmer(&text).map_err(|e| format!("--selmer: {e}"))?;
    if selmer.genus != genus {
        return Err(format!(
            "--selmer: file genus {} does not match --genus {}",
            selmer.genus, genus
        ));
    }
    let h = parse_curve(genus, &o.series.curve.curve)?;
    let config = json!({
        "subcommand": "criterion",
        "genus": genus,
        "curve": o.series.curve.curve,
        "selmer": o.selmer.display().to_string(),
        "precision": o.series.precision,
        "truncation": trunc,
        "format": format_name(format),
    });
    let torsion_ok = two_torsion_trivial(&h);
    let ri = match assemble_image(&h, trunc, o.series.precision) {
        Ok(ri) => ri,
        Err(e) => {
            return Ok((
                with_config(config, error_body("certify", e.to_string())),
                EXIT_MATH_FAIL,
            ));
        }
    };
    let image = ri.image_set();
    match criterion(&image, &selmer, torsion_ok) {
        Err(ChabautyError::RankTooLarge(r)) => {
            Err(format!("--selmer: rank {r} exceeds the enumeration bound"))
        }
        Err(e) => Ok((
            with_config(config, error_body("criterion", e.to_string())),
            EXIT_MATH_FAIL,
        )),
        Ok(v) => {
            let body = json!({
                "curve": h.to_string(),
                "image": image_bitstrings(&image),
                "cardinality": image.cardinality(),
                "selmer_rank": v.selmer_rank,
                "selmer_rows": selmer.basis.bitstrings(),
                "sigma_injective": v.sigma_injective,
                "disjoint": v.disjoint,
                "torsion_ok": v.torsion_ok,
                "overlap_witness": v
                    .overlap_witness
                    .as_ref()
                    .map(|p| Value::String(p.to_string()))
                    .unwrap_or(Value::Null),
                "satisfied": v.satisfied,
                "status": status(v.satisfied),
            });
            let code = if v.satisfied {
                EXIT_PASS
            } else {
                EXIT_MATH_FAIL
            };
            Ok((with_config(config, body), code))
        }
    }
}

fn cmd_density(o: &DensityOpt, format: Format) -> Result<(Value, i32), String> {
    check_genus(o.genus)?;
    let rep = density_report(o.genus);
    let comparison = if rep.equals_reference {
        "equality"
    } else if rep.meets_reference {
        "strictly above"
    } else {
        "below"
    };
    let report = json!({
        "config": {
            "subcommand": "density",
            "genus": o.genus,
            "format": format_name(format),
        },
        "goodness_fraction": quantity_json(&rep.goodness_fraction),
        "family_density": quantity_json(&rep.family_density),
        "delta_lower_bound": quantity_json(&rep.delta_lower_bound),
        "bound_is_positive": rep.bound_is_positive,
        "scaling_exponent": rep.scaling_exponent,
        "scaling_exponent_expanded": rep.scaling_exponent_expanded,
        "scaling_exponent_consistent": rep.scaling_exponent_consistent,
        "reference_exponent": 4 * o.genus * o.genus + 6 * o.genus + 7,
        "reference_bound": quantity_json(&rep.reference_bound),
        "reference_comparison": comparison,
        "status": "pass",
    });
    Ok((report, EXIT_PASS))
}

fn default_simulation_curve(genus: u32) -> Option<LongCurve> {
    (1..2 * genus).find_map(|a| {
        let h = LongCurve::from_monomials(genus, &[(a, 1), (0, 1)]).ok()?;
        h.is_good().then_some(h)
    })
}

fn cmd_simulate(o: &SimulateOpt, format: Format) -> Result<(Value, i32), String> {
    check_genus(o.genus)?;
    check_precision(o.precision)?;
    if o.trials == 0 || o.trials > 100_000_000 {
        return Err("--trials: must be between 1 and 100000000".to_string());
    }
    if o.image.is_some() && o.curve.is_some() {
        return Err("--image: cannot be combined with --curve".to_string());
    }
    let trunc = resolve_truncation(o.genus, o.truncation)?;
    let (image, source, curve_model) = if let Some(path) = &o.image {
        let text = read_file(path, "--image")?;
        let rows: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let image =
            ImageSet::from_bitstrings(o.genus, &rows).map_err(|e| format!("--image: {e}"))?;
        (image, "file", Value::Null)
    } else {
        let h = match &o.curve {
            Some(text) => parse_curve(o.genus, text)?,
            None => default_simulation_curve(o.genus).ok_or_else(|| {
                format!(
                    "--genus: no good trinomial default curve for genus {}",
                    o.genus
                )
            })?,
        };
        let ri = assemble_image(&h, trunc, o.precision).map_err(|e| format!("--curve: {e}"))?;
        let source = if o.curve.is_some() {
            "curve"
        } else {
            "default-curve"
        };
        (ri.image_set(), source, Value::String(h.to_string()))
    };
    let cfg = SimConfig {
        genus: o.genus,
        trials: o.trials,
        seed: Some(o.seed),
    };
    let rep = run_trials(&cfg, &image).map_err(|e| format!("simulation: {e}"))?;
    let floor_clamped = rep.floor_f64.clamp(0.0, 1.0);
    let sigma_floor = (floor_clamped * (1.0 - floor_clamped) / o.trials as f64).sqrt();
    let threshold = rep.floor_f64 - 4.0 * sigma_floor;
    let ok = rep.proportion >= threshold;
    let report = json!({
        "config": {
            "subcommand": "simulate",
            "genus": o.genus,
            "trials": o.trials,
            "seed": o.seed,
            "image_file": o.image.as_ref().map(|p| Value::String(p.display().to_string())).unwrap_or(Value::Null),
            "source": source,
            "precision": o.precision,
            "truncation": trunc,
            "format": format_name(format),
        },
        "model": MODEL_LABEL,
        "curve": curve_model,
        "image": image_bitstrings(&image),
        "cardinality": rep.image_cardinality,
        "passes": rep.passes,
        "proportion": rep.proportion,
        "sigma_hat": rep.sigma_hat,
        "floor": {
            "exact": rep.floor.to_string(),
            "pow2": rep.floor.pow2_string(),
            "approx": rep.floor_f64,
        },
        "threshold": threshold,
        "status": status(ok),
    });
    let code = if ok { EXIT_PASS } else { EXIT_MATH_FAIL };
    Ok((report, code))
}

enum RowKind {
    Parsed,
    Malformed,
    Failed,
}

fn scan_row(line: usize, content: &str) -> (Value, RowKind, bool) {
    let h = match parse_curve_line(content) {
        Err(e) => {
            let row = json!({
                "line": line,
                "input": content,
                "error": e.to_string(),
            });
            return (row, RowKind::Malformed, false);
        }
        Ok(h) => h,
    };
    let good = h.is_good();
    let counts = enumerate_points(&h);
    let (cardinality, verdict, kind) = if !good {
        (Value::Null, "not-good".to_string(), RowKind::Parsed)
    } else {
        let trunc = default_truncation(h.genus());
        match assemble_image(&h, trunc, DEFAULT_PRECISION) {
            Ok(ri) if recheck_image(&ri) => (
                json!(ri.image.len()),
                "certified".to_string(),
                RowKind::Parsed,
            ),
            Ok(_) => (Value::Null, "recheck-failed".to_string(), RowKind::Failed),
            Err(e) => (Value::Null, format!("error: {e}"), RowKind::Failed),
        }
    };
    let row = json!({
        "line": line,
        "curve": h.to_string(),
        "genus": h.genus(),
        "good": good,
        "n_f2": counts.n_f2,
        "n_f4": counts.n_f4,
        "image_cardinality": cardinality,
        "verdict": verdict,
    });
    (row, kind, good)
}

fn cmd_scan(o: &ScanOpt, format: Format) -> Result<(Value, i32), String> {
    let text = read_file(&o.file, "--file")?;
    let entries: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results: Vec<(Value, RowKind, bool)> = entries
        .par_iter()
        .map(|&(line, content)| scan_row(line, content))
        .collect();
    let malformed = results
        .iter()
        .filter(|(_, k, _)| matches!(k, RowKind::Malformed))
        .count();
    let failed = results
        .iter()
        .filter(|(_, k, _)| matches!(k, RowKind::Failed))
        .count();
    let parsed = results.len() - malformed;
    let good_count = results.iter().filter(|&&(_, _, good)| good).count();
    let fraction = if parsed == 0 {
        Value::Null
    } else {
        json!(good_count as f64 / parsed as f64)
    };
    let rows: Vec<Value> = results.into_iter().map(|(row, _, _)| row).collect();
    let report = json!({
        "config": {
            "subcommand": "scan",
            "file": o.file.display().to_string(),
            "format": format_name(format),
        },
        "rows": rows,
        "summary": {
            "lines": entries.len(),
            "parsed": parsed,
            "malformed": malformed,
            "certificate_failures": failed,
            "good": good_count,
            "goodness_fraction": { "good": good_count, "parsed": parsed, "approx": fraction },
        },
        "status": status(malformed == 0 && failed == 0),
    });
    let code = if malformed > 0 {
        EXIT_USAGE
    } else if failed > 0 {
        EXIT_MATH_FAIL
    } else {
        EXIT_PASS
    };
    Ok((report, code))
}
