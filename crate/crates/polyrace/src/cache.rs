//! On-disk result caches: enumerated irreducibles per (field, degree) and
//! L-polynomial data per (field, modulus, character).
//!
//! Layout under the cache root:
//!   irreducibles/q<q>_d<n>.json
//!   lfunc/<sha256(field, modulus, exponents)>.json

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use polyrace_core::ffcore::{FieldSpec, FqElement};
use polyrace_core::lfunc::LPolynomial;
use polyrace_core::polyring::Poly;

pub const SCHEMA: u32 = 1;

fn field_tag(field: &FieldSpec) -> String {
    format!("p={};e={};def={:?}", field.p, field.e, field.defining_poly)
}

pub fn poly_coeffs(p: &Poly) -> Vec<u16> {
    (0..=p.deg()).map(|i| p.coeff(i).0).collect()
}

pub fn poly_from_coeffs(coeffs: &[u16]) -> Poly {
    Poly::from_coeffs(coeffs.iter().map(|&c| FqElement(c)).collect())
}

#[derive(Serialize, Deserialize)]
struct IrreducibleFile {
    schema: u32,
    field: String,
    degree: usize,
    irreducibles: Vec<Vec<u16>>,
}

fn irreducible_path(root: &Path, field: &FieldSpec, degree: usize) -> PathBuf {
    root.join("irreducibles").join(format!("q{}_d{}.json", field.q, degree))
}

pub fn load_irreducibles(
    root: &Path,
    field: &FieldSpec,
    degree: usize,
) -> Option<Vec<Poly>> {
    let text = fs::read_to_string(irreducible_path(root, field, degree)).ok()?;
    let file: IrreducibleFile = serde_json::from_str(&text).ok()?;
    if file.schema != SCHEMA || file.field != field_tag(field) || file.degree != degree {
        return None;
    }
    Some(file.irreducibles.iter().map(|c| poly_from_coeffs(c)).collect())
}

pub fn save_irreducibles(
    root: &Path,
    field: &FieldSpec,
    degree: usize,
    polys: &[Poly],
) -> Result<()> {
    let path = irreducible_path(root, field, degree);
    fs::create_dir_all(path.parent().expect("has parent"))?;
    let file = IrreducibleFile {
        schema: SCHEMA,
        field: field_tag(field),
        degree,
        irreducibles: polys.iter().map(poly_coeffs).collect(),
    };
    fs::write(&path, serde_json::to_string(&file)?)
        .with_context(|| format!("writing {}", path.display()))
}

#[derive(Serialize, Deserialize)]
struct LfuncFile {
    schema: u32,
    field: String,
    modulus: Vec<u16>,
    exponents: Vec<u64>,
    /// Coefficients as (re, im) pairs, constant term first.
    coeffs: Vec<(f64, f64)>,
    coeffs_int: Option<Vec<i64>>,
    exact: bool,
}

fn lfunc_key(field: &FieldSpec, modulus: &Poly, exponents: &[u64]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(field_tag(field).as_bytes());
    hasher.update(format!(";m={:?}", poly_coeffs(modulus)).as_bytes());
    hasher.update(format!(";chi={exponents:?}").as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn lfunc_path(root: &Path, field: &FieldSpec, modulus: &Poly, exponents: &[u64]) -> PathBuf {
    root.join("lfunc").join(format!("{}.json", lfunc_key(field, modulus, exponents)))
}

pub fn load_lfunc(
    root: &Path,
    field: &FieldSpec,
    modulus: &Poly,
    exponents: &[u64],
) -> Option<LPolynomial> {
    let path = lfunc_path(root, field, modulus, exponents);
    let text = fs::read_to_string(path).ok()?;
    let file: LfuncFile = serde_json::from_str(&text).ok()?;
    if file.schema != SCHEMA
        || file.field != field_tag(field)
        || file.modulus != poly_coeffs(modulus)
        || file.exponents != exponents
    {
        return None;
    }
    Some(LPolynomial {
        coeffs: file
            .coeffs
            .iter()
            .map(|&(re, im)| num_complex::Complex::new(re, im))
            .collect(),
        coeffs_int: file.coeffs_int,
        exact: file.exact,
    })
}

pub fn save_lfunc(
    root: &Path,
    field: &FieldSpec,
    modulus: &Poly,
    exponents: &[u64],
    l: &LPolynomial,
) -> Result<()> {
    let path = lfunc_path(root, field, modulus, exponents);
    fs::create_dir_all(path.parent().expect("has parent"))?;
    let file = LfuncFile {
        schema: SCHEMA,
        field: field_tag(field),
        modulus: poly_coeffs(modulus),
        exponents: exponents.to_vec(),
        coeffs: l.coeffs.iter().map(|c| (c.re, c.im)).collect(),
        coeffs_int: l.coeffs_int.clone(),
        exact: l.exact,
    };
    fs::write(&path, serde_json::to_string(&file)?)
        .with_context(|| format!("writing {}", path.display()))
}
