//! Explicit matrix representations and twisted class functions `g ↦ Tr(S ρ(g))`.
//!
//! Representation file:
//!
//! ```text
//! rep s3 2 dim=2
//! gen a
//! 1 0
//! 0 -1
//! gen b
//! -0.5 -0.8660254037844386
//! 0.8660254037844386 -0.5
//! ```
//!
//! Entries are `a`, `bi`, `a+bi` or `a-bi` in decimal.

use std::collections::VecDeque;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::dual::DualMap;
use super::table::CharacterTable;
use crate::error::{Error, Result};
use crate::group::{strip_comment, Endomorphism, FiniteGroup};
use crate::twisted::reidemeister_classes;

pub const TOLERANCE: f64 = 1e-9;
/// Agreement required between traces of file data and exact character values.
pub const TRACE_TOLERANCE: f64 = 1e-6;
pub const MAX_REP_DIM: usize = 64;

/// Matrices as read from a representation file, before binding to a group.
#[derive(Debug, Clone, PartialEq)]
pub struct RepData {
    pub group_name: String,
    pub char_index: usize,
    pub dim: usize,
    pub generators: Vec<(String, DMatrix<Complex64>)>,
}

pub fn parse_rep(text: &str) -> Result<RepData> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "empty representation file"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "rep" {
        return Err(Error::parse(hline, "expected `rep <group> <char-index> dim=<d>`"));
    }
    let char_index: usize = parts[2]
        .parse()
        .map_err(|_| Error::parse(hline, "bad character index"))?;
    let dim: usize = parts[3]
        .strip_prefix("dim=")
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::parse(hline, "expected dim=<d>"))?;
    if dim == 0 || dim > MAX_REP_DIM {
        return Err(Error::parse(hline, format!("dimension must be in 1..={MAX_REP_DIM}")));
    }
    let mut generators: Vec<(String, DMatrix<Complex64>)> = Vec::new();
    let mut current: Option<(usize, String, Vec<Complex64>)> = None;
    let finish = |cur: Option<(usize, String, Vec<Complex64>)>, out: &mut Vec<(String, DMatrix<Complex64>)>| {
        if let Some((line, name, entries)) = cur {
            if entries.len() != dim * dim {
                return Err(Error::parse(line, format!("generator {name} needs {dim} rows")));
            }
            out.push((name, DMatrix::from_row_slice(dim, dim, &entries)));
        }
        Ok(())
    };
    for (n, line) in lines {
        if let Some(name) = line.strip_prefix("gen ") {
            finish(current.take(), &mut generators)?;
            let name = name.trim().to_string();
            if generators.iter().any(|(g, _)| *g == name) {
                return Err(Error::parse(n, format!("duplicate generator {name}")));
            }
            current = Some((n, name, Vec::with_capacity(dim * dim)));
            continue;
        }
        let Some((_, _, entries)) = current.as_mut() else {
            return Err(Error::parse(n, "matrix row before any `gen` line"));
        };
        let row: Vec<Complex64> = line
            .split_whitespace()
            .map(parse_complex)
            .collect::<std::result::Result<_, _>>()
            .map_err(|m| Error::parse(n, m))?;
        if row.len() != dim {
            return Err(Error::parse(n, format!("expected {dim} entries")));
        }
        if entries.len() == dim * dim {
            return Err(Error::parse(n, "too many rows"));
        }
        entries.extend(row);
    }
    finish(current.take(), &mut generators)?;
    Ok(RepData {
        group_name: parts[1].to_string(),
        char_index,
        dim,
        generators,
    })
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let bad = || format!("bad complex number `{s}`");
    let real = |t: &str| -> std::result::Result<f64, String> {
        let v: f64 = t.parse().map_err(|_| bad())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    let imag = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(t),
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(real(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// A representation of a group given by the images of all elements.
#[derive(Debug, Clone)]
pub struct Representation {
    pub char_index: usize,
    pub dim: usize,
    images: Vec<DMatrix<Complex64>>,
}

impl Representation {
    /// The one-dimensional representation of a linear character.
    pub fn linear(table: &CharacterTable, chi: usize) -> Result<Self> {
        if table.degrees()[chi] != 1 {
            return Err(Error::MissingRepresentationData(chi));
        }
        let classes = table.classes();
        let images = (0..table.group().order())
            .map(|g| {
                let v = table.complex_value(&table.values(chi)[classes.class_of[g]]);
                DMatrix::from_element(1, 1, v)
            })
            .collect();
        Ok(Representation {
            char_index: chi,
            dim: 1,
            images,
        })
    }

    /// Binds file data to a group: extends the generator images to every
    /// element, checks the homomorphism property on all generator moves, and
    /// checks traces against the named character.
    pub fn from_data(table: &CharacterTable, data: &RepData) -> Result<Self> {
        let group: &FiniteGroup = table.group();
        let invalid = |m: String| Error::InvalidRepresentation(m);
        if data.char_index >= table.count() {
            return Err(invalid(format!("no character with index {}", data.char_index)));
        }
        if table.degrees()[data.char_index] as usize != data.dim {
            return Err(invalid(format!(
                "character {} has degree {}, data has dimension {}",
                data.char_index,
                table.degrees()[data.char_index],
                data.dim
            )));
        }
        let mut gens = Vec::with_capacity(group.generators().len());
        for name in group.generator_names() {
            let m = data
                .generators
                .iter()
                .find(|(g, _)| g == name)
                .map(|(_, m)| m.clone())
                .ok_or_else(|| invalid(format!("missing matrix for generator {name}")))?;
            gens.push(m);
        }
        if data.generators.len() != gens.len() {
            return Err(invalid("matrices for unknown generators".into()));
        }
        let n = group.order();
        let mut images: Vec<Option<DMatrix<Complex64>>> = vec![None; n];
        images[0] = Some(DMatrix::identity(data.dim, data.dim));
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            let rg = images[g].clone().expect("queued elements have images");
            for (s, m) in gens.iter().enumerate() {
                let h = group.left_gen(s, g);
                let candidate = m * &rg;
                match &images[h] {
                    Some(existing) => {
                        if max_abs(&(existing - &candidate)) > TRACE_TOLERANCE {
                            return Err(invalid("generator matrices do not define a homomorphism".into()));
                        }
                    }
                    None => {
                        images[h] = Some(candidate);
                        queue.push_back(h);
                    }
                }
            }
        }
        let images: Vec<DMatrix<Complex64>> = images
            .into_iter()
            .map(|m| m.ok_or_else(|| invalid("generators do not reach every element".into())))
            .collect::<Result<_>>()?;
        let classes = table.classes();
        for (c, &r) in classes.reps.iter().enumerate() {
            let expected = table.complex_value(&table.values(data.char_index)[c]);
            if (images[r].trace() - expected).norm() > TRACE_TOLERANCE {
                return Err(invalid(format!(
                    "trace on class {c} does not match character {}",
                    data.char_index
                )));
            }
        }
        Ok(Representation {
            char_index: data.char_index,
            dim: data.dim,
            images,
        })
    }

    pub fn image(&self, g: usize) -> &DMatrix<Complex64> {
        &self.images[g]
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Debug, Clone)]
pub struct TwistedClassFunction {
    pub rho_index: usize,
    pub intertwiner: DMatrix<Complex64>,
    /// Per group element.
    pub values: Vec<Complex64>,
    /// `max_x |ρ(φ(x)) S - S ρ(x)|` over generators.
    pub intertwiner_residual: f64,
    /// Largest spread of values within one Reidemeister class.
    pub class_deviation: f64,
}

/// Solves `ρ(φ(x)) S = S ρ(x)` for the generators `x`, then returns
/// `T(g) = Tr(S ρ(g))`. `S` is scaled to `Tr(S S*) = dim` with its largest
/// entry real and positive.
pub fn twisted_class_function(phi: &Endomorphism, rho: &Representation) -> Result<TwistedClassFunction> {
    let group = phi.group();
    let d = rho.dim;
    let gens = group.generators();
    let rows = (gens.len() * d * d).max(1);
    // Unknown vec(S) with index i*d + j for S[i][j].
    let mut a = DMatrix::<Complex64>::zeros(rows, d * d);
    for (s, &x) in gens.iter().enumerate() {
        let left = rho.image(phi.apply(x));
        let right = rho.image(x);
        for i in 0..d {
            for j in 0..d {
                let row = s * d * d + i * d + j;
                // (L S)_{ij} = Σ_k L_ik S_kj ; (S R)_{ij} = Σ_k S_ik R_kj
                for k in 0..d {
                    a[(row, k * d + j)] += left[(i, k)];
                    a[(row, i * d + k)] -= right[(k, j)];
                }
            }
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested right singular vectors");
    let sv = &svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
    let small: Vec<usize> = (0..sv.len()).filter(|&i| sv[i] <= TOLERANCE * smax).collect();
    let nullity = small.len() + (d * d).saturating_sub(sv.len());
    if nullity == 0 {
        return Err(Error::NoIntertwiner);
    }
    if nullity > 1 {
        return Err(Error::NonSimpleIntertwiner { dim: nullity });
    }
    let k = small[0];
    let mut s = DMatrix::<Complex64>::from_fn(d, d, |i, j| v_t[(k, i * d + j)].conj());
    let norm = s.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let biggest = s.iter().cloned().fold(Complex64::new(0.0, 0.0), |best, z| {
        if z.norm() > best.norm() + 1e-12 {
            z
        } else {
            best
        }
    });
    let phase = biggest / biggest.norm();
    s *= Complex64::new((d as f64).sqrt() / norm, 0.0) / phase;

    let intertwiner_residual = gens
        .iter()
        .map(|&x| max_abs(&(rho.image(phi.apply(x)) * &s - &s * rho.image(x))))
        .fold(0.0, f64::max);
    let values: Vec<Complex64> = (0..group.order()).map(|g| (&s * rho.image(g)).trace()).collect();
    let twisted = reidemeister_classes(phi);
    let class_deviation = (0..group.order())
        .map(|g| (values[g] - values[twisted.reps[twisted.class_of[g]]]).norm())
        .fold(0.0, f64::max);
    Ok(TwistedClassFunction {
        rho_index: rho.char_index,
        intertwiner: s,
        values,
        intertwiner_residual,
        class_deviation,
    })
}

#[derive(Debug, Clone)]
pub struct BasisReport {
    pub fixed: Vec<usize>,
    pub functions: Vec<TwistedClassFunction>,
    pub reidemeister: usize,
    pub rank: usize,
}

impl BasisReport {
    pub fn holds(&self) -> bool {
        self.rank == self.functions.len()
            && self.rank == self.reidemeister
            && self
                .functions
                .iter()
                .all(|t| t.intertwiner_residual < TOLERANCE && t.class_deviation < TOLERANCE)
    }
}

/// One twisted class function per fixed character; they should form a basis
/// of the functions constant on Reidemeister classes. Linear characters are
/// built from the table, others are looked up in `reps`.
pub fn tbft_basis_check(dual: &DualMap, reps: &[Representation]) -> Result<BasisReport> {
    let table = &dual.table;
    let mut functions = Vec::new();
    for &chi in &dual.fixed_set {
        let rho = if table.degrees()[chi] == 1 {
            Arc::new(Representation::linear(table, chi)?)
        } else {
            Arc::new(
                reps.iter()
                    .find(|r| r.char_index == chi)
                    .cloned()
                    .ok_or(Error::MissingRepresentationData(chi))?,
            )
        };
        functions.push(twisted_class_function(&dual.phi, &rho)?);
    }
    let n = table.group().order();
    let rank = if functions.is_empty() {
        0
    } else {
        let m = DMatrix::<Complex64>::from_fn(functions.len(), n, |i, g| functions[i].values[g]);
        let sv = m.singular_values();
        let smax = sv.iter().cloned().fold(0.0, f64::max);
        sv.iter().filter(|&&x| x > TOLERANCE * smax.max(1.0)).count()
    };
    Ok(BasisReport {
        fixed: dual.fixed_set.clone(),
        functions,
        reidemeister: reidemeister_classes(&dual.phi).count(),
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_entries() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("1"), Ok(c(1.0, 0.0)));
        assert_eq!(parse_complex("-0.5"), Ok(c(-0.5, 0.0)));
        assert_eq!(parse_complex("i"), Ok(c(0.0, 1.0)));
        assert_eq!(parse_complex("-i"), Ok(c(0.0, -1.0)));
        assert_eq!(parse_complex("2.5i"), Ok(c(0.0, 2.5)));
        assert_eq!(parse_complex("1+2i"), Ok(c(1.0, 2.0)));
        assert_eq!(parse_complex("1-i"), Ok(c(1.0, -1.0)));
        assert_eq!(parse_complex("-1e-3+2e+1i"), Ok(c(-0.001, 20.0)));
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("inf").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn rep_file_layout() {
        let text = "rep s3 2 dim=2\ngen a\n1 0\n0 -1\ngen b\n-0.5 -0.8660254037844386\n0.8660254037844386 -0.5\n";
        let data = parse_rep(text).unwrap();
        assert_eq!((data.char_index, data.dim, data.generators.len()), (2, 2, 2));
        assert_eq!(data.generators[1].1[(1, 0)], Complex64::new(0.8660254037844386, 0.0));
    }

    #[test]
    fn rep_file_errors() {
        assert!(parse_rep("").is_err());
        assert!(parse_rep("rep s3 x dim=2").is_err());
        assert!(parse_rep("rep s3 1 dim=0").is_err());
        assert!(parse_rep("rep s3 1 dim=1\n1").is_err());
        assert!(parse_rep("rep s3 1 dim=1\ngen a\n1 2").is_err());
        assert!(parse_rep("rep s3 1 dim=2\ngen a\n1 0").is_err());
        assert!(parse_rep("rep s3 1 dim=1\ngen a\n1\ngen a\n1").is_err());
        assert!(parse_rep("rep s3 1 dim=1\ngen a\n1\n1").is_err());
    }

    #[test]
    fn reducible_input_gives_a_large_null_space() {
        let phi = crate::zoo::endomorphism("s3", "identity").unwrap();
        let rho = Representation {
            char_index: 0,
            dim: 2,
            images: vec![DMatrix::identity(2, 2); 6],
        };
        assert_eq!(
            twisted_class_function(&phi, &rho).unwrap_err(),
            Error::NonSimpleIntertwiner { dim: 4 }
        );
    }
}
