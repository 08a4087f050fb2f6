//! Integral lattices given by a symmetric nondegenerate Gram matrix, with
//! exact inner products, signatures, determinants, and isometry checks.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, IntVector};

/// An integral lattice presented by a basis Gram matrix.
///
/// Values are immutable after construction; equality is Gram-matrix equality
/// in the given basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramLattice {
    rank: usize,
    gram: IntMatrix,
    label: Option<String>,
}

/// Inertia of a nondegenerate symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl Signature {
    pub fn is_hyperbolic(&self) -> bool {
        self.positive == 1
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.positive, self.negative)
    }
}

/// Standard building blocks for lattice construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardLattice {
    /// Rank-1 lattice `[[n]]`, `n != 0`.
    Diag(BigInt),
    /// Hyperbolic plane `[[0,1],[1,0]]`.
    U,
    /// Negative definite E8: diagonal -2, Dynkin adjacency +1.
    E8Minus,
}

impl FromStr for StandardLattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "U" {
            return Ok(StandardLattice::U);
        }
        if s == "E8MINUS" {
            return Ok(StandardLattice::E8Minus);
        }
        if let Some(body) = s.strip_prefix("DIAG(").and_then(|t| t.strip_suffix(')')) {
            let n: BigInt = body
                .trim()
                .parse()
                .map_err(|_| Error::UnknownLatticeName(s.to_string()))?;
            if n.is_zero() {
                return Err(Error::ZeroDiagBlock);
            }
            return Ok(StandardLattice::Diag(n));
        }
        Err(Error::UnknownLatticeName(s.to_string()))
    }
}

impl fmt::Display for StandardLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardLattice::Diag(n) => write!(f, "DIAG({})", n),
            StandardLattice::U => write!(f, "U"),
            StandardLattice::E8Minus => write!(f, "E8MINUS"),
        }
    }
}

/// Dynkin diagram edges of E8 in Bourbaki numbering: the chain
/// 1-3-4-5-6-7-8 with node 2 attached to node 4.
const E8_EDGES: [(usize, usize); 7] = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];

impl GramLattice {
    pub fn new(gram: IntMatrix, label: Option<String>) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::EmptyInput("gram matrix"));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: rank,
                });
            }
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, entry) in row.iter().enumerate().skip(i + 1) {
                if *entry != gram[j][i] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        if linalg::determinant(&gram).is_zero() {
            return Err(Error::DegenerateGram);
        }
        Ok(GramLattice { rank, gram, label })
    }

    /// Builds one of the named standard lattices.
    pub fn standard(name: &StandardLattice) -> Result<Self> {
        match name {
            StandardLattice::Diag(n) => {
                if n.is_zero() {
                    return Err(Error::ZeroDiagBlock);
                }
                GramLattice::new(vec![vec![n.clone()]], Some(name.to_string()))
            }
            StandardLattice::U => {
                GramLattice::new(linalg::int_mat(&[&[0, 1], &[1, 0]]), Some("U".to_string()))
            }
            StandardLattice::E8Minus => {
                let mut gram = vec![vec![BigInt::zero(); 8]; 8];
                for (i, row) in gram.iter_mut().enumerate() {
                    row[i] = linalg::int(-2);
                }
                for &(a, b) in &E8_EDGES {
                    gram[a][b] = linalg::int(1);
                    gram[b][a] = linalg::int(1);
                }
                GramLattice::new(gram, Some("E8MINUS".to_string()))
            }
        }
    }

    /// Block-diagonal direct sum; the label concatenates the parts.
    pub fn direct_sum(parts: &[GramLattice]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyInput("direct sum"));
        }
        let rank: usize = parts.iter().map(|p| p.rank).sum();
        let mut gram = vec![vec![BigInt::zero(); rank]; rank];
        let mut offset = 0;
        for part in parts {
            for i in 0..part.rank {
                for j in 0..part.rank {
                    gram[offset + i][offset + j] = part.gram[i][j].clone();
                }
            }
            offset += part.rank;
        }
        let label = parts
            .iter()
            .map(|p| p.label.clone().unwrap_or_else(|| "?".to_string()))
            .collect::<Vec<_>>()
            .join(" + ");
        GramLattice::new(gram, Some(label))
    }

    /// Parses a list of block tokens (`U`, `E8MINUS`, `DIAG(n)`) into a sum.
    pub fn from_blocks(tokens: &[String], label: Option<String>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::EmptyInput("blocks"));
        }
        let parts: Result<Vec<GramLattice>> = tokens
            .iter()
            .map(|t| GramLattice::standard(&t.parse()?))
            .collect();
        let mut sum = GramLattice::direct_sum(&parts?)?;
        if label.is_some() {
            sum.label = label;
        }
        Ok(sum)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    fn check_len(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Exact inner product `x^T G y`.
    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut acc = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let mut row = BigInt::zero();
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    row += &self.gram[i][j] * yj;
                }
            }
            acc += xi * row;
        }
        Ok(acc)
    }

    pub fn norm(&self, x: &[BigInt]) -> Result<BigInt> {
        self.inner(x, x)
    }

    /// The covector `G x`, i.e. the linear form `y -> inner(x, y)`.
    pub fn covector(&self, x: &[BigInt]) -> Result<IntVector> {
        self.check_len(x)?;
        Ok(linalg::mat_vec(&self.gram, x))
    }

    /// Exact signature by rational congruence diagonalization.
    pub fn signature(&self) -> Signature {
        let (positive, negative) = linalg::signature_by_congruence(&self.gram)
            .expect("constructor enforces nondegeneracy");
        Signature { positive, negative }
    }

    pub fn determinant(&self) -> BigInt {
        linalg::determinant(&self.gram)
    }

    /// True iff `m^T G m = G` exactly.
    pub fn is_isometry(&self, m: &IntMatrix) -> Result<bool> {
        if m.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: m.len(),
            });
        }
        for (i, row) in m.iter().enumerate() {
            if row.len() != self.rank {
                return Err(Error::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: self.rank,
                });
            }
        }
        let mt = linalg::transpose(m);
        let prod = linalg::mat_mul(&linalg::mat_mul(&mt, &self.gram), m);
        Ok(prod == self.gram)
    }

    /// Parses the lattice definition document (JSON with `label` and exactly
    /// one of `blocks` / `gram`).
    pub fn from_definition_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("lattice definition: {e}")))?;
        Self::from_definition_value(&value)
    }

    pub fn from_definition_value(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("lattice definition must be a JSON object".into()))?;
        let label = match obj.get("label") {
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(Error::Parse("`label` must be a string".into())),
            None => None,
        };
        let blocks = obj.get("blocks");
        let gram = obj.get("gram");
        match (blocks, gram) {
            (Some(_), Some(_)) | (None, None) => Err(Error::Parse(
                "exactly one of `blocks` or `gram` must be present".into(),
            )),
            (Some(b), None) => {
                let tokens: Vec<String> = b
                    .as_array()
                    .ok_or_else(|| Error::Parse("`blocks` must be an array of tokens".into()))?
                    .iter()
                    .map(|t| {
                        t.as_str()
                            .map(|s| s.to_string())
                            .ok_or_else(|| Error::Parse("block tokens must be strings".into()))
                    })
                    .collect::<Result<_>>()?;
                GramLattice::from_blocks(&tokens, label)
            }
            (None, Some(g)) => {
                let rows = g
                    .as_array()
                    .ok_or_else(|| Error::Parse("`gram` must be a matrix".into()))?;
                let gram: IntMatrix = rows
                    .iter()
                    .map(|row| {
                        row.as_array()
                            .ok_or_else(|| Error::Parse("`gram` rows must be arrays".into()))?
                            .iter()
                            .map(json_to_bigint)
                            .collect()
                    })
                    .collect::<Result<_>>()?;
                GramLattice::new(gram, label)
            }
        }
    }

    /// Canonical JSON form of the definition (always explicit `gram`).
    pub fn to_definition_value(&self) -> Value {
        let mut obj = Map::new();
        if let Some(label) = &self.label {
            obj.insert("label".into(), Value::String(label.clone()));
        }
        obj.insert(
            "gram".into(),
            Value::Array(
                self.gram
                    .iter()
                    .map(|row| Value::Array(row.iter().map(bigint_to_json).collect()))
                    .collect(),
            ),
        );
        Value::Object(obj)
    }
}

/// An integer matrix `m` with `m^T G m = G`, tied to the lattice it was
/// validated against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    matrix: IntMatrix,
}

impl Isometry {
    pub fn new(lattice: &GramLattice, matrix: IntMatrix) -> Result<Self> {
        if !lattice.is_isometry(&matrix)? {
            return Err(Error::NotIsometry);
        }
        Ok(Isometry { matrix })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> IntVector {
        linalg::mat_vec(&self.matrix, x)
    }
}

pub fn json_to_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {n}"))),
        _ => Err(Error::Parse(format!("expected an integer, got {v}"))),
    }
}

pub fn bigint_to_json(x: &BigInt) -> Value {
    Value::Number(serde_json::Number::from_string_unchecked(x.to_string()))
}
