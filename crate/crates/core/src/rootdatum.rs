//! Integral root-datum arithmetic: Smith normal forms of (generalized)
//! Cartan matrices, fundamental groups as invariant-factor lists, torus
//! generator counts, and the size bookkeeping for adjoint quotients and
//! the classical projective/orthogonal groups.

use crate::assembly::{affine_sizes, AssemblyError, PresentationBudget};
use crate::dynkin::{AffineType, Diagram, DiagramLabel, DynkinError};
use crate::field::FieldParameter;
use serde::Serialize;
use thiserror::Error;

/// Errors raised by root-datum computations.
#[derive(Debug, Error)]
pub enum RootDatumError {
    #[error("matrix must be square")]
    NotSquare,
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error(transparent)]
    Dynkin(#[from] DynkinError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error("unsupported classical row: {0}")]
    UnsupportedRow(String),
}

/// A Smith normal form `U * A * V = S` with unimodular `U`, `V` and a
/// diagonal `S` whose entries form a divisibility chain with trailing
/// zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: Vec<Vec<i128>>,
    pub s: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    let mut m = vec![vec![0i128; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row_i -= q * row_t
fn row_sub(m: &mut [Vec<i128>], i: usize, t: usize, q: i128) {
    for j in 0..m[t].len() {
        let x = m[t][j];
        m[i][j] -= q * x;
    }
}

/// col_j -= q * col_t
fn col_sub(m: &mut [Vec<i128>], j: usize, t: usize, q: i128) {
    for row in m.iter_mut() {
        row[j] -= q * row[t];
    }
}

fn negate_row(m: &mut [Vec<i128>], i: usize) {
    for x in &mut m[i] {
        *x = -*x;
    }
}

/// Fraction-free (Bareiss) determinant.
fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = a.len();
    let mut out = vec![vec![0i128; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

impl SmithDecomposition {
    /// The diagonal of `S` (invariant factors, ones included).
    pub fn invariant_factors(&self) -> Vec<i128> {
        (0..self.s.len()).map(|i| self.s[i][i]).collect()
    }

    /// Checks the decomposition against the original matrix: the product
    /// identity, unimodularity of both transforms, diagonality,
    /// nonnegativity and the divisibility chain.
    pub fn validate(&self, original: &[Vec<i64>]) -> Result<(), RootDatumError> {
        let bad = |why: String| RootDatumError::InvalidDecomposition(why);
        let n = original.len();
        if self.u.len() != n || self.s.len() != n || self.v.len() != n {
            return Err(bad("dimension mismatch".to_string()));
        }
        let a: Vec<Vec<i128>> = original
            .iter()
            .map(|row| row.iter().map(|&x| x as i128).collect())
            .collect();
        if mat_mul(&mat_mul(&self.u, &a), &self.v) != self.s {
            return Err(bad("U * A * V differs from S".to_string()));
        }
        if det(&self.u).abs() != 1 {
            return Err(bad("U is not unimodular".to_string()));
        }
        if det(&self.v).abs() != 1 {
            return Err(bad("V is not unimodular".to_string()));
        }
        for (i, row) in self.s.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i != j && x != 0 {
                    return Err(bad("S is not diagonal".to_string()));
                }
            }
        }
        let d = self.invariant_factors();
        for i in 0..n {
            if d[i] < 0 {
                return Err(bad("negative invariant factor".to_string()));
            }
            if i + 1 < n {
                let ok = if d[i] == 0 {
                    d[i + 1] == 0
                } else {
                    d[i + 1] % d[i] == 0
                };
                if !ok {
                    return Err(bad(format!(
                        "divisibility chain broken at {} | {}",
                        d[i],
                        d[i + 1]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Computes a Smith normal form over the integers, tracking both
/// unimodular transforms.
pub fn smith_normal_form(matrix: &[Vec<i64>]) -> Result<SmithDecomposition, RootDatumError> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(RootDatumError::NotSquare);
    }
    let mut s: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u = identity(n);
    let mut v = identity(n);
    for t in 0..n {
        'pivot: loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if s[i][j] != 0 && pivot.is_none_or(|(pi, pj)| s[i][j].abs() < s[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            if pi != t {
                s.swap(pi, t);
                u.swap(pi, t);
            }
            if pj != t {
                swap_cols(&mut s, pj, t);
                swap_cols(&mut v, pj, t);
            }
            // Clear the pivot column; a nonzero remainder becomes a
            // strictly smaller pivot on the next sweep.
            for i in t + 1..n {
                if s[i][t] != 0 {
                    let q = s[i][t] / s[t][t];
                    if q != 0 {
                        row_sub(&mut s, i, t, q);
                        row_sub(&mut u, i, t, q);
                    }
                    if s[i][t] != 0 {
                        continue 'pivot;
                    }
                }
            }
            // Clear the pivot row; column t below the pivot is already zero.
            for j in t + 1..n {
                if s[t][j] != 0 {
                    let q = s[t][j] / s[t][t];
                    if q != 0 {
                        col_sub(&mut s, j, t, q);
                        col_sub(&mut v, j, t, q);
                    }
                    if s[t][j] != 0 {
                        continue 'pivot;
                    }
                }
            }
            // The pivot must divide the whole trailing block; folding an
            // offending row into row t creates a smaller remainder.
            for i in t + 1..n {
                if s[i].iter().skip(t + 1).any(|&x| x % s[t][t] != 0) {
                    row_sub(&mut s, t, i, -1);
                    row_sub(&mut u, t, i, -1);
                    continue 'pivot;
                }
            }
            break;
        }
        if s[t][t] < 0 {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }
    Ok(SmithDecomposition { u, s, v })
}

/// The quotient of the weight lattice by the root lattice, written as the
/// invariant factors of the Cartan matrix with trivial factors dropped; a
/// zero encodes an infinite cyclic factor (affine types).  Internally the
/// factors keep the divisibility-chain order (zeros last); the display
/// form lists zeros first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FundamentalGroup {
    pub factors: Vec<u64>,
}

impl std::fmt::Display for FundamentalGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .filter(|&&k| k == 0)
            .map(|_| "0".to_string())
            .collect();
        parts.extend(self.factors.iter().filter(|&&k| k != 0).map(u64::to_string));
        write!(f, "({})", parts.join(","))
    }
}

/// Fundamental group of the (finite or affine) type: the cokernel of its
/// Cartan matrix.
pub fn fundamental_group(label: DiagramLabel) -> Result<FundamentalGroup, RootDatumError> {
    let diagram = Diagram::build(label)?;
    let snf = smith_normal_form(&diagram.cartan_matrix())?;
    let factors = snf
        .invariant_factors()
        .into_iter()
        .filter(|&d| d != 1)
        .map(|d| d as u64)
        .collect();
    Ok(FundamentalGroup { factors })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Indicator for a cyclic factor of order `k` contributing a character:
/// 1 when `gcd(k, q-1) > 1`, else 0.  An infinite factor (`k = 0`)
/// contributes no extension generator and returns 0 here; its fixed
/// contribution to center counts is handled by `torus_counts`.
pub fn a_symbol(k: u64, q: &FieldParameter) -> u64 {
    if k == 0 {
        return 0;
    }
    u64::from(gcd(k, q.q - 1) > 1)
}

/// Supremum of `a_symbol(k, q)` over all prime powers `q`: 1 exactly for
/// `k >= 2`.
pub fn a_symbol_max(k: u64) -> u64 {
    u64::from(k >= 2)
}

/// Generator and relation counts for the center and acting torus of a
/// type over `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TorusCounts {
    /// Generators of the center's character group.
    pub d1: u64,
    /// Generators of the acting diagonal subgroup; always equals `d1`.
    pub d2: u64,
    /// Relations paid for the full torus extension: `4 * d1`.
    pub extra_rels: u64,
}

/// Counts torus generators for the type: each infinite factor of the
/// fundamental group contributes one generator, each finite factor `k`
/// contributes `a_symbol(k, q)`.  With `q = None` the supremum over all
/// field sizes is used (the tabulated "max" columns).
pub fn torus_counts(
    label: DiagramLabel,
    q: Option<&FieldParameter>,
) -> Result<TorusCounts, RootDatumError> {
    let fg = fundamental_group(label)?;
    let d1: u64 = fg
        .factors
        .iter()
        .map(|&k| {
            if k == 0 {
                1
            } else {
                match q {
                    Some(q) => a_symbol(k, q),
                    None => a_symbol_max(k),
                }
            }
        })
        .sum();
    Ok(TorusCounts {
        d1,
        d2: d1,
        extra_rels: 4 * d1,
    })
}

/// Budget for the quotient by the center: one killing relation per
/// center generator, generator count unchanged.
pub fn adjoint_quotient_sizes(
    budget: &PresentationBudget,
    label: DiagramLabel,
    q: Option<&FieldParameter>,
) -> Result<PresentationBudget, RootDatumError> {
    let counts = torus_counts(label, q)?;
    let mut b = budget.clone();
    b.push(
        format!("kill the center ({} relations)", counts.d1),
        0,
        counts.d1 as i64,
    );
    Ok(b)
}

/// Budget for the full adjoint group: adjoin the acting diagonal
/// generators, then pay the center-killing, power and action relations.
/// The action relations assume a two-element generating set; on the
/// small-field special path three generators must be conjugated, which
/// the trace notes.
pub fn adjoint_group_sizes(
    budget: &PresentationBudget,
    label: DiagramLabel,
    q: Option<&FieldParameter>,
) -> Result<PresentationBudget, RootDatumError> {
    let counts = torus_counts(label, q)?;
    let mut b = budget.clone();
    b.push(
        format!("adjoin {} acting torus generators", counts.d2),
        counts.d2 as i64,
        0,
    );
    let action = if b.special { 3 } else { 2 } * counts.d2;
    let note = if b.special {
        " (three-generator special case)"
    } else {
        ""
    };
    b.push(
        format!(
            "add {} center, {} power and {} action relations{}",
            counts.d1, counts.d2, action, note
        ),
        0,
        (counts.d1 + counts.d2 + action) as i64,
    );
    Ok(b)
}

/// The classical series with tabulated projective/orthogonal budgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalFamily {
    /// `PSL(n, .)`, `n >= 3`.
    Psl,
    /// `PGL(n, .)`, `n >= 3`.
    Pgl,
    /// `SO(2n+1, .)`, `n >= 3`.
    SoOdd,
    /// `SO(2n, .)`, `n >= 4`.
    SoEven,
}

impl std::fmt::Display for ClassicalFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ClassicalFamily::Psl => "PSL",
            ClassicalFamily::Pgl => "PGL",
            ClassicalFamily::SoOdd => "SO(odd)",
            ClassicalFamily::SoEven => "SO(even)",
        };
        write!(f, "{name}")
    }
}

/// Budgets for the projective linear and orthogonal groups over the
/// Laurent-polynomial ring, derived from the affine budgets by exact
/// sequences: quotient by the center, then (where the relevant character
/// or extension group is nontrivial) extend by the component group.  The
/// order-two factors are evaluated exactly from the field parity; the
/// degree factor of the projective series counts once for every `n >= 3`
/// (the tabulated upper-bound convention).
pub fn classical_group_sizes(
    family: ClassicalFamily,
    n: usize,
    q: &FieldParameter,
) -> Result<PresentationBudget, RootDatumError> {
    let unsupported = |min: usize| RootDatumError::UnsupportedRow(format!("{family}: n >= {min}"));
    match family {
        ClassicalFamily::Psl | ClassicalFamily::Pgl => {
            if n < 3 {
                return Err(unsupported(3));
            }
            let mut b = affine_sizes(AffineType::A, n - 1, q)?;
            b.push("kill the projective center (2 relations)".to_string(), 0, 2);
            if family == ClassicalFamily::Pgl {
                b.push(
                    "extend by the determinant quotient (1 generator, 3 relations)".to_string(),
                    1,
                    3,
                );
            }
            Ok(b)
        }
        ClassicalFamily::SoOdd => {
            if n < 3 {
                return Err(unsupported(3));
            }
            let a2 = a_symbol(2, q);
            let mut b = affine_sizes(AffineType::B, n, q)?;
            b.push(
                format!("kill the center (1 + {a2} relations)"),
                0,
                (1 + a2) as i64,
            );
            if a2 > 0 {
                b.push(
                    format!(
                        "extend by the order-two component group ({a2} generators, {} relations)",
                        3 * a2
                    ),
                    a2 as i64,
                    (3 * a2) as i64,
                );
            }
            Ok(b)
        }
        ClassicalFamily::SoEven => {
            if n < 4 {
                return Err(unsupported(4));
            }
            let a2 = a_symbol(2, q);
            let mut b = affine_sizes(AffineType::D, n, q)?;
            b.push(
                "kill the extra central generator (one relation)".to_string(),
                0,
                1,
            );
            if a2 > 0 {
                b.push(
                    format!("kill the order-two central quotient ({a2} relations)"),
                    0,
                    a2 as i64,
                );
                b.push(
                    format!(
                        "extend by the order-two component group ({a2} generators, {} relations)",
                        3 * a2
                    ),
                    a2 as i64,
                    (3 * a2) as i64,
                );
            }
            Ok(b)
        }
    }
}
