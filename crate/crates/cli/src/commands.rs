use bergmanlab::functionals::{
    bergman_norm, bergman_norm2_exact, check_concentration, check_embedding, check_kulikov, hardy_norm, husimi,
    normalize, normalize_p, sup_u, ConvexG,
};
use bergmanlab::halfplane::{check_unitarity, UNITARITY_TOL};
use bergmanlab::hardy::{hardy_remark_bound, normalize_hardy, phi_grid, phi_profile, verify_theorem3, RemarkForm, Theorem3Params};
use bergmanlab::operators::{check_log_laplacian, PolarGrid, LAPLACIAN_STEP};
use bergmanlab::quadrature::{profile_from_sets, LevelSetOptions, LevelSets};
use bergmanlab::stability::{
    h_profile, lemma5_from_sets, verify_corollary2, verify_theorem1_with, CoefficientForm, C_PRIME,
};
use bergmanlab::{CheckReport, SpaceParams, TaylorFunction};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::config::{Check, Form, Format, RunArgs};
use crate::source::{functions, spectral, states, Labeled};
use crate::CliError;

/// Rendered output and whether every check in it passed.
pub struct Outcome {
    pub text: String,
    pub pass: bool,
    pub warnings: Vec<String>,
}

struct Ctx<'a> {
    args: &'a RunArgs,
    hash: &'a str,
}

impl Ctx<'_> {
    fn stamp(&self, index: usize, source: &str, mut obj: Map<String, Value>) -> Value {
        obj.insert("index".into(), json!(index));
        obj.insert("source".into(), json!(source));
        obj.insert("config_hash".into(), json!(self.hash));
        obj.insert("seed".into(), json!(self.args.seed));
        obj.insert(
            "constants".into(),
            json!({
                "C": self.args.constant_c(),
                "C_prime": C_PRIME,
                "t0": self.args.t0,
                "T0": self.args.big_t0,
            }),
        );
        Value::Object(obj)
    }

    fn level_options(&self) -> LevelSetOptions {
        LevelSetOptions {
            angular: self.args.nodes,
            ..LevelSetOptions::default()
        }
    }
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

fn to_object<T: serde::Serialize>(v: &T) -> Map<String, Value> {
    object(serde_json::to_value(v).expect("reports serialize"))
}

fn json_lines(records: &[Value]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn par_map<T: Sync, R: Send>(
    items: &[Labeled<T>],
    f: impl Fn(&T) -> bergmanlab::Result<R> + Sync,
) -> Result<Vec<R>, CliError> {
    let results: Vec<bergmanlab::Result<R>> = items.par_iter().map(|x| f(&x.item)).collect();
    results.into_iter().map(|r| r.map_err(CliError::from)).collect()
}

/// Named norms, the embedding report if any, and whether the row passed.
type NormRow = (Vec<(String, f64)>, Option<CheckReport>, bool);

pub fn norm(args: &RunArgs, hash: &str) -> Result<Outcome, CliError> {
    let ctx = Ctx { args, hash };
    let fs = functions(args, "norm")?;
    let alpha = args.alpha;
    let rows = par_map(&fs, |f| -> bergmanlab::Result<NormRow> {
        let mut norms = Vec::new();
        let mut ok = true;
        if alpha == -1.0 {
            let exact = f.coefficients().iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            let circle = hardy_norm(f, 2.0)?;
            let residual = (exact - circle).abs();
            ok &= residual <= 1e-8 * (1.0 + exact);
            norms.push(("H2_exact".into(), exact));
            norms.push(("H2_circle".into(), circle));
            norms.push(("H2_residual".into(), residual));
            if args.p != 2.0 {
                norms.push((format!("H{}", args.p), hardy_norm(f, args.p)?));
            }
            return Ok((norms, None, ok));
        }
        let exact = bergman_norm2_exact(f, alpha)?;
        let quad = bergman_norm(f, SpaceParams::bergman(2.0, alpha)?)?;
        let residual = (exact - quad).abs();
        ok &= residual <= 1e-8 * (1.0 + exact);
        norms.push(("A2_exact".into(), exact));
        norms.push(("A2_quadrature".into(), quad));
        norms.push(("A2_residual".into(), residual));
        if args.p != 2.0 {
            norms.push((format!("A{}", args.p), bergman_norm(f, SpaceParams::bergman(args.p, alpha)?)?));
        }
        let embedding = if args.p < args.q {
            let r = check_embedding(f, args.p, args.q, alpha)?;
            ok &= r.pass;
            Some(r)
        } else {
            None
        };
        Ok((norms, embedding, ok))
    })?;
    let pass = rows.iter().all(|r| r.2);
    let text = match args.format {
        Format::Json => {
            let records: Vec<Value> = rows
                .iter()
                .zip(&fs)
                .enumerate()
                .map(|(i, ((norms, emb, ok), f))| {
                    let mut obj = Map::new();
                    obj.insert("alpha".into(), json!(alpha));
                    obj.insert("p".into(), json!(args.p));
                    obj.insert("q".into(), json!(args.q));
                    let n: Map<String, Value> = norms.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                    obj.insert("norms".into(), Value::Object(n));
                    if let Some(r) = emb {
                        obj.insert("embedding".into(), Value::Object(to_object(r)));
                    }
                    obj.insert("pass".into(), json!(ok));
                    ctx.stamp(i, &f.label, obj)
                })
                .collect();
            json_lines(&records)
        }
        Format::Csv => {
            let mut out = String::from("index,source,name,value\n");
            for (i, ((norms, emb, _), f)) in rows.iter().zip(&fs).enumerate() {
                for (k, v) in norms {
                    out.push_str(&format!("{i},{},{k},{v:e}\n", csv_field(&f.label)));
                }
                if let Some(r) = emb {
                    out.push_str(&format!("{i},{},embedding_margin,{:e}\n", csv_field(&f.label), r.margin));
                }
            }
            out
        }
    };
    Ok(Outcome {
        text,
        pass,
        warnings: Vec::new(),
    })
}

pub fn profile(args: &RunArgs, hash: &str) -> Result<Outcome, CliError> {
    let ctx = Ctx { args, hash };
    let fs = functions(args, "profile")?;
    if args.format == Format::Csv && fs.len() != 1 {
        return Err(CliError::Config("csv profiles take a single function; pass --count 1".into()));
    }
    let mut warnings = Vec::new();
    let mut records = Vec::new();
    let mut csv = String::new();
    for (i, f) in fs.iter().enumerate() {
        let mut obj = Map::new();
        if args.alpha == -1.0 {
            let g = normalize_hardy(&f.item, args.p)?;
            let (peak, _) = sup_u(&g, SpaceParams::hardy(args.p)?)?;
            let grid = phi_grid(peak, args.t_min, args.points);
            if grid.is_empty() {
                warnings.push(format!("{}: t_min = {} ≥ T = {peak}; empty profile", f.label, args.t_min));
            }
            let prof = phi_profile(&g, args.p, &grid)?;
            csv = prof.to_csv();
            obj.insert("profile".into(), Value::Object(to_object(&prof)));
        } else {
            let params = SpaceParams::bergman(args.p, args.alpha)?;
            let g = normalize_p(&f.item, params)?;
            let u = husimi(&g, params);
            let sets = LevelSets::new(&u, ctx.level_options());
            let peak = sets.peak().value;
            let grid = phi_grid(peak, args.t_min, args.points);
            if grid.is_empty() {
                warnings.push(format!("{}: t_min = {} ≥ T = {peak}; empty profile", f.label, args.t_min));
            }
            let prof = profile_from_sets(&sets, &grid)?;
            csv = prof.to_csv();
            if args.p == 2.0 && !grid.is_empty() {
                obj.insert("h".into(), Value::Object(to_object(&h_profile(&prof)?)));
            }
            obj.insert("profile".into(), Value::Object(to_object(&prof)));
        }
        obj.insert("alpha".into(), json!(args.alpha));
        obj.insert("p".into(), json!(args.p));
        records.push(ctx.stamp(i, &f.label, obj));
    }
    let text = match args.format {
        Format::Json => json_lines(&records),
        Format::Csv => csv,
    };
    Ok(Outcome {
        text,
        pass: true,
        warnings,
    })
}

pub fn verify(args: &RunArgs, hash: &str) -> Result<Outcome, CliError> {
    let ctx = Ctx { args, hash };
    let check = args.check.expect("validated");
    let c = args.constant_c();
    let g = ConvexG::power(args.g_power)?;
    let alpha = args.alpha;
    let results: Vec<(String, Vec<CheckReport>)> = match check {
        Check::Lemma4 => {
            let items = states(args, "verify")?;
            let tol = args.tol.unwrap_or(1e-2);
            let reps = par_map(&items, |st| {
                check_log_laplacian(&st.symbol(), st.alpha(), &PolarGrid::default(), LAPLACIAN_STEP, tol)
                    .map(|r| r.param("rank", st.rank()))
            })?;
            items.into_iter().zip(reps).map(|(l, r)| (l.label, vec![r])).collect()
        }
        Check::Unitarity => {
            let items = spectral(args)?;
            let tol = args.tol.unwrap_or(UNITARITY_TOL);
            let reps = par_map(&items, |f| check_unitarity(f, alpha, tol))?;
            items.into_iter().zip(reps).map(|(l, r)| (l.label, vec![r])).collect()
        }
        _ => {
            let items = functions(args, "verify")?;
            let reps = par_map(&items, |f| function_check(&ctx, check, &g, c, f))?;
            items.into_iter().zip(reps).map(|(l, r)| (l.label, r)).collect()
        }
    };

    let mut records = Vec::new();
    let mut pass = true;
    let mut index = 0;
    for (label, reports) in &results {
        for r in reports {
            pass &= r.pass;
            records.push((index, label, r));
            index += 1;
        }
    }
    let text = match args.format {
        Format::Json => {
            let values: Vec<Value> = records
                .iter()
                .map(|(i, label, r)| ctx.stamp(*i, label, to_object(*r)))
                .collect();
            json_lines(&values)
        }
        Format::Csv => {
            let mut out = String::from("index,source,check,lhs,rhs,margin,tolerance,pass,seed,config_hash\n");
            for (i, label, r) in &records {
                out.push_str(&format!(
                    "{i},{},{},{:e},{:e},{:e},{:e},{},{},{}\n",
                    csv_field(label),
                    r.check,
                    r.lhs,
                    r.rhs,
                    r.margin,
                    r.tolerance,
                    r.pass,
                    args.seed,
                    hash
                ));
            }
            out
        }
    };
    Ok(Outcome {
        text,
        pass,
        warnings: Vec::new(),
    })
}

fn function_check(
    ctx: &Ctx<'_>,
    check: Check,
    g: &ConvexG,
    c: f64,
    f: &TaylorFunction,
) -> bergmanlab::Result<Vec<CheckReport>> {
    let args = ctx.args;
    let alpha = args.alpha;
    let report = match check {
        Check::Kulikov => {
            let params = if alpha == -1.0 {
                SpaceParams::hardy(args.p)?
            } else {
                SpaceParams::bergman(args.p, alpha)?
            };
            check_kulikov(&normalize_p(f, params)?, g, params)?
        }
        Check::Theorem1 => {
            let form = match args.coefficient_form {
                Form::Derived => CoefficientForm::Derived,
                Form::Displayed => CoefficientForm::Displayed,
            };
            verify_theorem1_with(&normalize(f, alpha)?, g, alpha, c, form)?
        }
        Check::Corollary2 => verify_corollary2(f, args.p, alpha, c)?,
        Check::Theorem3 => {
            let params = Theorem3Params {
                t0: args.t0,
                c,
                big_t0: args.big_t0,
                gamma: None,
            };
            verify_theorem3(&normalize_hardy(f, args.p)?, g, args.p, &params)?
        }
        Check::Concentration => {
            let fnorm = normalize(f, alpha)?;
            return args
                .disk_sizes()
                .iter()
                .map(|&s| check_concentration(&fnorm, alpha, s))
                .collect();
        }
        Check::Lemma5 => {
            let fnorm = normalize(f, alpha)?;
            let u = husimi(&fnorm, SpaceParams::bergman(2.0, alpha)?);
            let sets = LevelSets::new(&u, ctx.level_options());
            let peak = sets.peak().value;
            if peak <= args.t0 {
                CheckReport::new("lemma5")
                    .param("alpha", alpha)
                    .param("t0", args.t0)
                    .param("C", c)
                    .param("T", peak)
                    .values(0.0, 0.0, 0.0)
                    .note("vacuous: T ≤ t0")
            } else {
                let table = lemma5_from_sets(&sets, alpha, args.t0, c, args.points.max(2))?;
                table.report
            }
        }
        Check::HardyRemark => {
            let form = match args.remark_form {
                Form::Derived => RemarkForm::Derived,
                Form::Displayed => RemarkForm::Displayed,
            };
            hardy_remark_bound(&normalize(f, -1.0)?, g, c, form)?
        }
        Check::Lemma4 | Check::Unitarity => unreachable!("dispatched on their own sources"),
    };
    Ok(vec![report])
}
