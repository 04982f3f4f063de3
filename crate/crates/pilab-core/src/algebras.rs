//! Finite-dimensional algebras given by structure constants, with optional
//! Z2-gradings, class validators and a built-in example library.
//!
//! Validators run eagerly at construction, so downstream code may assume the
//! declared class holds. An algebra without a grading field is treated as
//! all-even wherever a grading is demanded, except that Grassmann-envelope
//! targets insist on an explicit grading.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Parity};

/// Which identities the algebra is declared (and verified) to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlgebraClass {
    #[serde(rename = "lie")]
    Lie,
    #[serde(rename = "super-lie")]
    SuperLie,
    #[serde(rename = "nonassociative")]
    Nonassociative,
}

impl AlgebraClass {
    pub fn label(&self) -> &'static str {
        match self {
            AlgebraClass::Lie => "lie",
            AlgebraClass::SuperLie => "super-lie",
            AlgebraClass::Nonassociative => "nonassociative",
        }
    }
}

/// Coordinate vector over the basis of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element(pub Vec<BigRational>);

impl Element {
    pub fn zero(dim: usize) -> Element {
        Element(vec![BigRational::zero(); dim])
    }

    pub fn basis(dim: usize, index: usize) -> Element {
        let mut v = vec![BigRational::zero(); dim];
        v[index] = BigRational::one();
        Element(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Element {
        Element(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Element {
        Element(self.0.iter().map(|a| -a).collect())
    }
}

/// Outcome of a class validator: a failure carries the witness identity
/// instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Pass,
    Fail {
        identity: String,
        indices: Vec<usize>,
    },
}

impl Validation {
    pub fn passed(&self) -> bool {
        matches!(self, Validation::Pass)
    }
}

/// A finite-dimensional algebra: `[b_i, b_j] = sum_k table[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec {
    name: String,
    dim: usize,
    basis_names: Vec<String>,
    table: Vec<Vec<Vec<BigRational>>>,
    grading: Option<Vec<Parity>>,
    class: AlgebraClass,
    reference_exponent: Option<u64>,
}

impl AlgebraSpec {
    /// Builds and validates an algebra. The validator for the declared class
    /// must pass, the table must be `dim x dim x dim`, and a grading, when
    /// present, must be compatible with the table.
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        table: Vec<Vec<Vec<BigRational>>>,
        grading: Option<Vec<Parity>>,
        class: AlgebraClass,
    ) -> Result<AlgebraSpec, Error> {
        let dim = basis_names.len();
        if table.len() != dim
            || table
                .iter()
                .any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(Error::DimensionMismatch(format!(
                "structure constant table is not {dim}x{dim}x{dim}"
            )));
        }
        if let Some(g) = &grading {
            if g.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "grading has {} entries for dimension {dim}",
                    g.len()
                )));
            }
        }
        let spec = AlgebraSpec {
            name: name.into(),
            dim,
            basis_names,
            table,
            grading,
            class,
            reference_exponent: None,
        };
        if let Validation::Fail { identity, indices } = spec.check_grading_compatibility() {
            return Err(Error::ClassValidation(format!(
                "{identity} violated at basis indices {indices:?}"
            )));
        }
        let verdict = match class {
            AlgebraClass::Lie => spec.validate_lie(),
            AlgebraClass::SuperLie => spec.validate_super_lie()?,
            AlgebraClass::Nonassociative => Validation::Pass,
        };
        if let Validation::Fail { identity, indices } = verdict {
            return Err(Error::ClassValidation(format!(
                "{identity} fails at basis indices {indices:?}"
            )));
        }
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn class(&self) -> AlgebraClass {
        self.class
    }

    pub fn has_grading(&self) -> bool {
        self.grading.is_some()
    }

    /// Parity of a basis element; all-even when no grading was declared.
    pub fn parity(&self, index: usize) -> Parity {
        self.grading
            .as_ref()
            .map_or(Parity::Even, |g| g[index])
    }

    /// Dimension of the center `{z : [z, L] = 0}`, computed exactly as the
    /// nullity of the adjoint-action matrix.
    pub fn center_dimension(&self) -> usize {
        use crate::exactlin::DenseMatrix;
        // rows: basis elements z_i; columns: (j, k) entries of [z_i, b_j]
        let rows: Vec<Vec<BigRational>> = (0..self.dim)
            .map(|i| {
                let mut row = Vec::with_capacity(self.dim * self.dim);
                for j in 0..self.dim {
                    row.extend(self.table[i][j].iter().cloned());
                }
                row
            })
            .collect();
        let m = DenseMatrix::from_rows((), rows).expect("rectangular");
        self.dim - m.rank()
    }

    /// `(dim L_0, dim L_1)` under the declared (or all-even) grading.
    pub fn graded_dims(&self) -> (usize, usize) {
        let odd = (0..self.dim)
            .filter(|&i| self.parity(i) == Parity::Odd)
            .count();
        (self.dim - odd, odd)
    }

    /// Basis indices of the even part, then of the odd part.
    pub fn parity_basis(&self, parity: Parity) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| self.parity(i) == parity)
            .collect()
    }

    /// Known PI-exponent of this algebra, when the library records one.
    pub fn reference_exponent(&self) -> Option<u64> {
        self.reference_exponent
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.table[i][j][k]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Element {
        Element(self.table[i][j].clone())
    }

    /// Bilinear extension of the table.
    pub fn bracket(&self, u: &Element, v: &Element) -> Result<Element, Error> {
        if u.dim() != self.dim || v.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "elements of dimension {}/{} in an algebra of dimension {}",
                u.dim(),
                v.dim(),
                self.dim
            )));
        }
        let mut out = vec![BigRational::zero(); self.dim];
        for i in 0..self.dim {
            if u.0[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v.0[j].is_zero() {
                    continue;
                }
                let c = &u.0[i] * &v.0[j];
                for k in 0..self.dim {
                    let t = &self.table[i][j][k];
                    if !t.is_zero() {
                        out[k] += &c * t;
                    }
                }
            }
        }
        Ok(Element(out))
    }

    /// Checks `[b_i, b_i] = 0`, anticommutativity and the Jacobi identity on
    /// all basis triples; the first failure is returned with its witness.
    pub fn validate_lie(&self) -> Validation {
        for i in 0..self.dim {
            if !self.bracket_basis(i, i).is_zero() {
                return Validation::Fail {
                    identity: "alternating ([b,b] = 0)".to_string(),
                    indices: vec![i, i],
                };
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let anti = self.bracket_basis(i, j).add(&self.bracket_basis(j, i));
                if !anti.is_zero() {
                    return Validation::Fail {
                        identity: "anticommutativity".to_string(),
                        indices: vec![i, j],
                    };
                }
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let a = self
                        .bracket(&self.bracket_basis(i, j), &Element::basis(self.dim, k))
                        .expect("dims agree");
                    let b = self
                        .bracket(&self.bracket_basis(j, k), &Element::basis(self.dim, i))
                        .expect("dims agree");
                    let c = self
                        .bracket(&self.bracket_basis(k, i), &Element::basis(self.dim, j))
                        .expect("dims agree");
                    if !a.add(&b).add(&c).is_zero() {
                        return Validation::Fail {
                            identity: "Jacobi".to_string(),
                            indices: vec![i, j, k],
                        };
                    }
                }
            }
        }
        Validation::Pass
    }

    /// Checks super-anticommutativity `[u,v] = -(-1)^{|u||v|}[v,u]` and the
    /// super Jacobi identity
    /// `(-1)^{|u||w|}[[u,v],w] + (-1)^{|v||u|}[[v,w],u] + (-1)^{|w||v|}[[w,u],v] = 0`
    /// on homogeneous basis triples. Requires a grading.
    pub fn validate_super_lie(&self) -> Result<Validation, Error> {
        if self.grading.is_none() {
            return Err(Error::GradingRequired(
                "super-Lie validation needs a grading".to_string(),
            ));
        }
        let sign = |p: Parity, q: Parity| -> BigRational {
            if p.is_odd() && q.is_odd() {
                -BigRational::one()
            } else {
                BigRational::one()
            }
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                let rhs = self
                    .bracket_basis(j, i)
                    .scale(&-sign(self.parity(i), self.parity(j)));
                if self.bracket_basis(i, j) != rhs {
                    return Ok(Validation::Fail {
                        identity: "super-anticommutativity".to_string(),
                        indices: vec![i, j],
                    });
                }
            }
        }
        for i in 0..self.dim {
            if self.parity(i) == Parity::Even && !self.bracket_basis(i, i).is_zero() {
                return Ok(Validation::Fail {
                    identity: "alternating on even elements".to_string(),
                    indices: vec![i, i],
                });
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let (pi, pj, pk) = (self.parity(i), self.parity(j), self.parity(k));
                    let t1 = self
                        .bracket(&self.bracket_basis(i, j), &Element::basis(self.dim, k))
                        .expect("dims agree")
                        .scale(&sign(pi, pk));
                    let t2 = self
                        .bracket(&self.bracket_basis(j, k), &Element::basis(self.dim, i))
                        .expect("dims agree")
                        .scale(&sign(pj, pi));
                    let t3 = self
                        .bracket(&self.bracket_basis(k, i), &Element::basis(self.dim, j))
                        .expect("dims agree")
                        .scale(&sign(pk, pj));
                    if !t1.add(&t2).add(&t3).is_zero() {
                        return Ok(Validation::Fail {
                            identity: "super-Jacobi".to_string(),
                            indices: vec![i, j, k],
                        });
                    }
                }
            }
        }
        Ok(Validation::Pass)
    }

    /// `[L_a, L_b] subset L_{a+b mod 2}` on basis pairs; trivially passes
    /// without a grading.
    pub fn check_grading_compatibility(&self) -> Validation {
        if self.grading.is_none() {
            return Validation::Pass;
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let expected = self.parity(i).combine(self.parity(j));
                for k in 0..self.dim {
                    if !self.table[i][j][k].is_zero() && self.parity(k) != expected {
                        return Validation::Fail {
                            identity: "grading compatibility".to_string(),
                            indices: vec![i, j, k],
                        };
                    }
                }
            }
        }
        Validation::Pass
    }

    /// Built-in examples. `abelian(d)` (also spelled `abelianD`) is the
    /// d-dimensional zero algebra; `metabelian` is the two-dimensional
    /// algebra with `[e,f] = f` graded `e` even / `f` odd; `sl2-cartan` is
    /// sl2 with `h` even and `e, f` odd; `sl2-trivial` is sl2 all-even;
    /// `heisenberg` has `[p,q] = c` with `c` even central and `p, q` odd.
    pub fn builtin(name: &str) -> Result<Arc<AlgebraSpec>, Error> {
        let rat = |v: i64| BigRational::from_integer(BigInt::from(v));
        if let Some(d) = parse_abelian(name) {
            let table = vec![vec![vec![rat(0); d]; d]; d];
            let names = (0..d).map(|i| format!("a{}", i + 1)).collect();
            return Ok(Arc::new(AlgebraSpec::new(
                format!("abelian({d})"),
                names,
                table,
                None,
                AlgebraClass::Lie,
            )?));
        }
        match name {
            "metabelian" => {
                let mut table = vec![vec![vec![rat(0); 2]; 2]; 2];
                table[0][1][1] = rat(1);
                table[1][0][1] = rat(-1);
                let mut spec = AlgebraSpec::new(
                    "metabelian",
                    vec!["e".to_string(), "f".to_string()],
                    table,
                    Some(vec![Parity::Even, Parity::Odd]),
                    AlgebraClass::Lie,
                )?;
                // codimension sequence n - 1, so the n-th roots tend to 1
                spec.reference_exponent = Some(1);
                Ok(Arc::new(spec))
            }
            "sl2-cartan" | "sl2-trivial" => {
                // basis e, h, f: [e,f] = h, [h,e] = 2e, [h,f] = -2f
                let mut table = vec![vec![vec![rat(0); 3]; 3]; 3];
                table[0][2][1] = rat(1);
                table[2][0][1] = rat(-1);
                table[1][0][0] = rat(2);
                table[0][1][0] = rat(-2);
                table[1][2][2] = rat(-2);
                table[2][1][2] = rat(2);
                let grading = if name == "sl2-cartan" {
                    vec![Parity::Odd, Parity::Even, Parity::Odd]
                } else {
                    vec![Parity::Even, Parity::Even, Parity::Even]
                };
                Ok(Arc::new(AlgebraSpec::new(
                    name,
                    vec!["e".to_string(), "h".to_string(), "f".to_string()],
                    table,
                    Some(grading),
                    AlgebraClass::Lie,
                )?))
            }
            "heisenberg" => {
                let mut table = vec![vec![vec![rat(0); 3]; 3]; 3];
                table[0][1][2] = rat(1);
                table[1][0][2] = rat(-1);
                Ok(Arc::new(AlgebraSpec::new(
                    "heisenberg",
                    vec!["p".to_string(), "q".to_string(), "c".to_string()],
                    table,
                    Some(vec![Parity::Odd, Parity::Odd, Parity::Even]),
                    AlgebraClass::Lie,
                )?))
            }
            other => Err(Error::UnknownBuiltin(other.to_string())),
        }
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &[
            "metabelian",
            "abelian(d)",
            "sl2-cartan",
            "sl2-trivial",
            "heisenberg",
        ]
    }

    /// Loads an algebra: a builtin name, or a path to a JSON file.
    pub fn load(name_or_path: &str) -> Result<Arc<AlgebraSpec>, Error> {
        match AlgebraSpec::builtin(name_or_path) {
            Ok(a) => Ok(a),
            Err(Error::UnknownBuiltin(_)) if Path::new(name_or_path).exists() => {
                AlgebraSpec::read_json_file(name_or_path)
            }
            Err(e) => Err(e),
        }
    }

    pub fn read_json_file(path: impl AsRef<Path>) -> Result<Arc<AlgebraSpec>, Error> {
        let text = std::fs::read_to_string(&path)?;
        let name = path
            .as_ref()
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "algebra".to_string());
        AlgebraSpec::from_json_str(&name, &text)
    }

    pub fn from_json_str(name: &str, text: &str) -> Result<Arc<AlgebraSpec>, Error> {
        let file: AlgebraFile = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("{e} (line {}, column {})", e.line(), e.column())))?;
        file.into_spec(name)
    }

    pub fn to_json(&self) -> String {
        let file = AlgebraFile {
            dim: self.dim,
            basis: self.basis_names.clone(),
            grading: self
                .grading
                .as_ref()
                .map(|g| g.iter().map(|p| p.bit()).collect()),
            class: self.class,
            table: self
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.iter().map(|c| RationalRepr::from(c.clone())).collect())
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {}, {})", self.name, self.dim, self.class.label())
    }
}

fn parse_abelian(name: &str) -> Option<usize> {
    let rest = name.strip_prefix("abelian")?;
    let digits = rest
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(rest);
    let d: usize = digits.parse().ok()?;
    (1..=16).contains(&d).then_some(d)
}

/// On-disk JSON rationals: a string "p/q" (or "p"), or a plain integer.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Int(i64),
    Str(String),
}

impl RationalRepr {
    fn parse(&self) -> Result<BigRational, Error> {
        match self {
            RationalRepr::Int(v) => Ok(BigRational::from_integer(BigInt::from(*v))),
            RationalRepr::Str(s) => parse_rational(s),
        }
    }
}

impl From<BigRational> for RationalRepr {
    fn from(value: BigRational) -> RationalRepr {
        if value.is_integer() && value.numer().abs() < BigInt::from(i64::MAX) {
            RationalRepr::Int(value.to_integer().try_into().expect("bounded"))
        } else {
            RationalRepr::Str(value.to_string())
        }
    }
}

/// Parses "p/q" or "p" with arbitrary-precision integers.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(num, den))
}

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    dim: usize,
    basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grading: Option<Vec<u8>>,
    class: AlgebraClass,
    table: Vec<Vec<Vec<RationalRepr>>>,
}

impl AlgebraFile {
    fn into_spec(self, name: &str) -> Result<Arc<AlgebraSpec>, Error> {
        if self.basis.len() != self.dim {
            return Err(Error::Parse(format!(
                "dim is {} but {} basis names given",
                self.dim,
                self.basis.len()
            )));
        }
        let mut table = Vec::with_capacity(self.dim);
        for row in &self.table {
            let mut out_row = Vec::with_capacity(self.dim);
            for cell in row {
                out_row.push(
                    cell.iter()
                        .map(RationalRepr::parse)
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            table.push(out_row);
        }
        let grading = self
            .grading
            .map(|g| g.into_iter().map(Parity::from_bit).collect());
        Ok(Arc::new(AlgebraSpec::new(
            name, self.basis, table, grading, self.class,
        )?))
    }
}
