//! Loading group, endomorphism and representation files.
//!
//! A missing group file is looked up among the bundled groups by its stem. A
//! missing endomorphism file is tried next to the group file as
//! `<group stem>/<endo>`, and for bundled groups among the bundled
//! endomorphisms, so `s3.grp inner.endo` works from any directory.

use std::path::Path;
use std::sync::Arc;

use tczeta::chartable::{parse_rep, RepData};
use tczeta::group::{load_group, parse_endomorphism, Endomorphism, FiniteGroup};
use tczeta::zoo;

use crate::report::{CliError, CliResult};

fn stem(path: &str) -> String {
    Path::new(path)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn read(path: &str) -> CliResult<Option<String>> {
    match std::fs::read_to_string(path) {
        Ok(s) => Ok(Some(s)),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(CliError::input("IoError", format!("{path}: {e}"))),
    }
}

fn missing(path: &str) -> CliError {
    CliError::input("IoError", format!("{path}: no such file or bundled example"))
}

pub struct LoadedGroup {
    pub group: Arc<FiniteGroup>,
    path: String,
    bundled: bool,
}

pub fn group(path: &str) -> CliResult<LoadedGroup> {
    if let Some(text) = read(path)? {
        return Ok(LoadedGroup {
            group: load_group(&text)?,
            path: path.to_string(),
            bundled: false,
        });
    }
    let group = zoo::group(&stem(path)).ok_or_else(|| missing(path))?;
    Ok(LoadedGroup {
        group,
        path: path.to_string(),
        bundled: true,
    })
}

pub fn endomorphism(g: &LoadedGroup, path: &str) -> CliResult<Endomorphism> {
    if let Some(text) = read(path)? {
        return Ok(parse_endomorphism(&g.group, &text)?);
    }
    let group_path = Path::new(&g.path);
    let group_name = stem(&g.path);
    let sibling = group_path.with_file_name(&group_name).join(path);
    if let Some(text) = read(&sibling.to_string_lossy())? {
        return Ok(parse_endomorphism(&g.group, &text)?);
    }
    if !g.bundled {
        return Err(missing(path));
    }
    let phi = zoo::endomorphism(&group_name, &stem(path)).ok_or_else(|| missing(path))?;
    // same file, same element numbering; rebuild on our copy of the group
    Ok(Endomorphism::from_table(&g.group, phi.image_table())?)
}

pub fn rep(path: &str) -> CliResult<RepData> {
    let text = read(path)?.ok_or_else(|| missing(path))?;
    Ok(parse_rep(&text)?)
}
