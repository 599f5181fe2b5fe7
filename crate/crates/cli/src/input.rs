//! Reading and validating input files.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;

use twofib_core::category::{Category, Functor1};
use twofib_core::decorated_sset::{standard_simplex, Deco, DecoratedSSet, Shape};
use twofib_core::homotopy_engine::dunce_hat;
use twofib_core::strict_two_cat::{Marking2Cat, StrictTwoCat, TwoFunctor};

use crate::report::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Parses JSON, prefixing serde's line/column diagnostic with the path.
pub fn json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn two_cat(path: &Path) -> Result<StrictTwoCat, CliError> {
    let c: StrictTwoCat = json(path)?;
    let report = c.validate();
    if !report.is_empty() {
        return Err(CliError::input(format!("{}: {}", path.display(), report.join("; "))));
    }
    Ok(c)
}

/// Categories validate their laws while deserializing.
pub fn category(path: &Path) -> Result<Category, CliError> {
    json(path)
}

pub fn functor1(path: &Path, src: &Category, tgt: &Category) -> Result<Functor1, CliError> {
    let f: Functor1 = json(path)?;
    let report = f.validate(src, tgt);
    if !report.is_empty() {
        return Err(CliError::input(format!("{}: {}", path.display(), report.join("; "))));
    }
    Ok(f)
}

pub fn two_functor(path: &Path, c: &StrictTwoCat, d: &StrictTwoCat) -> Result<TwoFunctor, CliError> {
    let f: TwoFunctor = json(path)?;
    let report = f.validate(c, d);
    if !report.is_empty() {
        return Err(CliError::input(format!("{}: {}", path.display(), report.join("; "))));
    }
    Ok(f)
}

/// `minimal`, `sharp`, or a JSON file listing 1-cell names.
pub fn marking(arg: &str, c: StrictTwoCat) -> Result<Marking2Cat, CliError> {
    match arg {
        "minimal" => Ok(Marking2Cat::minimal(c)),
        "sharp" => Ok(Marking2Cat::sharp(c)),
        path => {
            let names: Vec<String> = json(Path::new(path))?;
            let idx = names
                .iter()
                .map(|n| c.one_cell_index(n).map_err(|e| CliError::input(format!("{path}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Marking2Cat::new(c, idx))
        }
    }
}

/// A simplicial set from a JSON file or one of the shapes `delta:N`,
/// `boundary:N`, `horn:N:I`, `dunce`.
pub fn sset(arg: &str, cap: usize) -> Result<DecoratedSSet, CliError> {
    let parts: Vec<&str> = arg.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| CliError::input(format!("bad number {s:?} in {arg:?}")));
    let shape = match parts.as_slice() {
        ["dunce"] => return Ok(dunce_hat()),
        ["delta", n] => Some((num(n)?, Shape::Full)),
        ["boundary", n] => Some((num(n)?, Shape::Boundary)),
        ["horn", n, i] => Some((num(n)?, Shape::Horn(num(i)?))),
        _ => None,
    };
    match shape {
        Some((n, s)) => standard_simplex(n, s, &Deco::plain(), cap.max(n)).map_err(CliError::from),
        None => {
            let text = read(Path::new(arg))?;
            DecoratedSSet::from_json(&text).map_err(|e| CliError::input(format!("{arg}: {e}")))
        }
    }
}
