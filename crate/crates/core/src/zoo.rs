//! The bundled example groups, endomorphisms and representations.

use std::sync::Arc;

use crate::chartable::{parse_rep, RepData};
use crate::error::Result;
use crate::group::{load_group, parse_endomorphism, Endomorphism, FiniteGroup};

const GROUPS: &[(&str, &str)] = &[
    ("trivial", include_str!("../data/trivial.grp")),
    ("z2", include_str!("../data/z2.grp")),
    ("z3", include_str!("../data/z3.grp")),
    ("z4", include_str!("../data/z4.grp")),
    ("z6", include_str!("../data/z6.grp")),
    ("z7", include_str!("../data/z7.grp")),
    ("s3", include_str!("../data/s3.grp")),
    ("d4", include_str!("../data/d4.grp")),
    ("q8", include_str!("../data/q8.grp")),
    ("a4", include_str!("../data/a4.grp")),
    ("s4", include_str!("../data/s4.grp")),
];

const ENDOS: &[(&str, &str, &str)] = &[
    ("z3", "double", include_str!("../data/z3/double.endo")),
    ("z4", "neg", include_str!("../data/z4/neg.endo")),
    ("z6", "neg", include_str!("../data/z6/neg.endo")),
    ("z6", "double", include_str!("../data/z6/double.endo")),
    ("z7", "double", include_str!("../data/z7/double.endo")),
    ("s3", "identity", include_str!("../data/s3/identity.endo")),
    ("s3", "inner", include_str!("../data/s3/inner.endo")),
    ("s3", "square-b", include_str!("../data/s3/square-b.endo")),
    ("s3", "trivial", include_str!("../data/s3/trivial.endo")),
    ("d4", "auto", include_str!("../data/d4/auto.endo")),
    ("q8", "auto", include_str!("../data/q8/auto.endo")),
    ("a4", "auto", include_str!("../data/a4/auto.endo")),
    ("s4", "inner", include_str!("../data/s4/inner.endo")),
];

const REPS: &[(&str, &str)] = &[
    ("s3", include_str!("../data/s3/2.rep")),
    ("d4", include_str!("../data/d4/4.rep")),
    ("q8", include_str!("../data/q8/4.rep")),
];

/// The seven (group, endomorphism) pairs used throughout the checks.
pub const PAIRS: &[(&str, &str)] = &[
    ("z6", "neg"),
    ("s3", "inner"),
    ("s3", "square-b"),
    ("d4", "auto"),
    ("q8", "auto"),
    ("s3", "trivial"),
    ("a4", "auto"),
];

pub fn group_names() -> impl Iterator<Item = &'static str> {
    GROUPS.iter().map(|(n, _)| *n)
}

pub fn endo_names() -> impl Iterator<Item = (&'static str, &'static str)> {
    ENDOS.iter().map(|(g, e, _)| (*g, *e))
}

pub fn group(name: &str) -> Option<Arc<FiniteGroup>> {
    let text = GROUPS.iter().find(|(n, _)| *n == name)?.1;
    Some(load_group(text).expect("bundled group files are valid"))
}

pub fn endomorphism(group_name: &str, endo_name: &str) -> Option<Endomorphism> {
    let text = ENDOS.iter().find(|(g, e, _)| *g == group_name && *e == endo_name)?.2;
    Some(parse_endomorphism(&group(group_name)?, text).expect("bundled endomorphism files are valid"))
}

/// All bundled representation data for a group.
pub fn reps(group_name: &str) -> Result<Vec<RepData>> {
    REPS.iter()
        .filter(|(g, _)| *g == group_name)
        .map(|(_, text)| parse_rep(text))
        .collect()
}

/// Every bundled pair, loaded.
pub fn pairs() -> Vec<(String, Endomorphism)> {
    PAIRS
        .iter()
        .map(|&(g, e)| {
            (
                format!("{g}/{e}"),
                endomorphism(g, e).expect("pair names refer to bundled files"),
            )
        })
        .collect()
}
