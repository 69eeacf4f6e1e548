use bergmanlab::disk::{normalized_kernel, KERNEL_DEGREE};
use bergmanlab::halfplane::SpectralFunction;
use bergmanlab::operators::MixedState;
use bergmanlab::random::TestFamily;
use bergmanlab::{DiskPoint, TaylorFunction};
use num_complex::Complex64;

use crate::config::RunArgs;
use crate::CliError;

/// A function with the label written into every record.
pub struct Labeled<T> {
    pub label: String,
    pub item: T,
}

fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn functions(args: &RunArgs, command: &str) -> Result<Vec<Labeled<TaylorFunction>>, CliError> {
    if let Some(path) = &args.input {
        let f = TaylorFunction::from_json_str(&read(path)?)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        return Ok(vec![Labeled {
            label: format!("file:{}", path.display()),
            item: f,
        }]);
    }
    if let Some(name) = &args.function {
        return Ok(vec![Labeled {
            label: name.clone(),
            item: builtin(name, args.alpha)?,
        }]);
    }
    let fs = TestFamily::new(args.seed).polynomials(args.alpha, args.count(command))?;
    Ok(fs
        .into_iter()
        .enumerate()
        .map(|(i, f)| Labeled {
            label: format!("random:{}:{i}", args.seed),
            item: f,
        })
        .collect())
}

fn builtin(name: &str, alpha: f64) -> Result<TaylorFunction, CliError> {
    let f = match name {
        "one" => TaylorFunction::one(),
        "z" => TaylorFunction::monomial(1),
        "one-plus-z" => TaylorFunction::from_real(&[1.0, 1.0])?,
        _ => {
            let Some(w) = name.strip_prefix("kernel:") else {
                return Err(CliError::Config(format!(
                    "unknown builtin function `{name}` (one, z, one-plus-z, kernel:RE,IM)"
                )));
            };
            let parts: Vec<f64> = w
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Config(format!("kernel center `{w}`: {e}")))?;
            let [re, im] = parts[..] else {
                return Err(CliError::Config(format!("kernel center `{w}` needs RE,IM")));
            };
            normalized_kernel(DiskPoint::new(Complex64::new(re, im))?, alpha, KERNEL_DEGREE)?.function
        }
    };
    Ok(f)
}

pub fn states(args: &RunArgs, command: &str) -> Result<Vec<Labeled<MixedState>>, CliError> {
    if let Some(path) = &args.state {
        let st = MixedState::from_json_str(&read(path)?)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        return Ok(vec![Labeled {
            label: format!("file:{}", path.display()),
            item: st,
        }]);
    }
    if args.input.is_some() || args.function.is_some() {
        return functions(args, command)?
            .into_iter()
            .map(|f| {
                let g = bergmanlab::functionals::normalize(&f.item, args.alpha)?;
                Ok(Labeled {
                    label: f.label,
                    item: MixedState::pure(g, args.alpha)?,
                })
            })
            .collect();
    }
    let mut fam = TestFamily::new(args.seed);
    (0..args.count(command))
        .map(|i| {
            Ok(Labeled {
                label: format!("random-state:{}:{i}", args.seed),
                item: fam.mixed_state(args.alpha, args.max_rank)?,
            })
        })
        .collect()
}

pub fn spectral(args: &RunArgs) -> Result<Vec<Labeled<SpectralFunction>>, CliError> {
    if let Some(path) = &args.spectral {
        let f = SpectralFunction::from_json_str(&read(path)?)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        return Ok(vec![Labeled {
            label: format!("file:{}", path.display()),
            item: f,
        }]);
    }
    let mut out = Vec::new();
    for m in 0..3 {
        for s in [0.5, 1.0, 2.0] {
            out.push(Labeled {
                label: format!("term:m={m},s={s}"),
                item: SpectralFunction::term(m, s)?,
            });
        }
    }
    Ok(out)
}
