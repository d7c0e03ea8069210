//! Dynkin diagrams and generalized Cartan matrices.
//!
//! Diagrams are stored as simple graphs whose edges carry a bond
//! multiplicity (1, 2 or 3) and, for multiple bonds, an arrow pointing at
//! the short-root end.  The Cartan matrix convention is
//! `a[i][j] = -mult` when the edge `{i, j}` carries an arrow pointing at
//! `j`, and `a[j][i] = -1`; single bonds contribute `-1` on both sides.
//! With this convention the finite types reproduce the classical Cartan
//! matrices (positive determinant) and the affine types are singular.
//!
//! Untwisted affine families use an extra node `a0`; the twisted doubles
//! of the B/C/F/G families are distinguished purely by arrow directions:
//! `Bt` reverses the terminal double bond of `B`, `Ct` points both double
//! bonds of the C chain outward, `Cp` aligns them, `Ft4` and `Gt2` reverse
//! the multiple bond of `F4` and `G2`.
//!
//! Classification is by shape analysis (cycle / fork / chain patterns) and
//! reports each connected component as a finite or affine type.  A two-node
//! double bond is reported as `C2` and a two-node triple bond as `G2`,
//! their canonical representatives.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FieldParameter;

/// Errors from diagram construction and classification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynkinError {
    /// Rank outside the range supported by the requested family.
    #[error("rank {rank} invalid for type {family}: {hint}")]
    InvalidRank {
        family: String,
        rank: usize,
        hint: &'static str,
    },
    /// A subdiagram request referenced an unknown node name.
    #[error("unknown node {0}")]
    UnknownNode(String),
    /// A subdiagram request repeated a node name.
    #[error("duplicate node {0}")]
    DuplicateNode(String),
    /// Malformed raw diagram data.
    #[error("invalid diagram data: {0}")]
    InvalidData(String),
    /// The component matches no finite or affine type.
    #[error("component {{{0}}} is neither finite nor affine type")]
    Unclassifiable(String),
}

/// The nine finite families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FiniteType {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl std::fmt::Display for FiniteType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FiniteType::A => "A",
            FiniteType::B => "B",
            FiniteType::C => "C",
            FiniteType::D => "D",
            FiniteType::E6 => "E6",
            FiniteType::E7 => "E7",
            FiniteType::E8 => "E8",
            FiniteType::F4 => "F4",
            FiniteType::G2 => "G2",
        };
        write!(f, "{s}")
    }
}

/// The affine families, including the twisted B/C/F/G variants.
///
/// `Bt`, `Ct`, `Cp`, `Ft4`, `Gt2` are the arrow-reversed (twisted) chains:
/// `Ct` points both end bonds outward, `Cp` aligns them, and `Bt`/`Ft4`/
/// `Gt2` reverse the unique multiple bond of `B`/`F4`/`G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AffineType {
    A,
    B,
    Bt,
    C,
    Ct,
    Cp,
    D,
    E6,
    E7,
    E8,
    F4,
    Ft4,
    G2,
    Gt2,
}

impl AffineType {
    /// All affine types, in display order.
    pub const ALL: [AffineType; 14] = [
        AffineType::A,
        AffineType::B,
        AffineType::Bt,
        AffineType::C,
        AffineType::Ct,
        AffineType::Cp,
        AffineType::D,
        AffineType::E6,
        AffineType::E7,
        AffineType::E8,
        AffineType::F4,
        AffineType::Ft4,
        AffineType::G2,
        AffineType::Gt2,
    ];

    /// Inclusive rank range supported by this family.
    pub fn rank_range(&self) -> (usize, usize) {
        match self {
            AffineType::A => (2, usize::MAX),
            AffineType::B | AffineType::Bt => (3, usize::MAX),
            AffineType::C | AffineType::Ct | AffineType::Cp => (2, usize::MAX),
            AffineType::D => (4, usize::MAX),
            AffineType::E6 => (6, 6),
            AffineType::E7 => (7, 7),
            AffineType::E8 => (8, 8),
            AffineType::F4 | AffineType::Ft4 => (4, 4),
            AffineType::G2 | AffineType::Gt2 => (2, 2),
        }
    }
}

impl std::fmt::Display for AffineType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.code())
    }
}

impl AffineType {
    /// Short ASCII code used on the command line and in tables.
    pub fn code(&self) -> &'static str {
        match self {
            AffineType::A => "A",
            AffineType::B => "B",
            AffineType::Bt => "Bt",
            AffineType::C => "C",
            AffineType::Ct => "Ct",
            AffineType::Cp => "Cp",
            AffineType::D => "D",
            AffineType::E6 => "E6",
            AffineType::E7 => "E7",
            AffineType::E8 => "E8",
            AffineType::F4 => "F4",
            AffineType::Ft4 => "Ft4",
            AffineType::G2 => "G2",
            AffineType::Gt2 => "Gt2",
        }
    }
}

impl std::str::FromStr for AffineType {
    type Err = DynkinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AffineType::ALL
            .iter()
            .copied()
            .find(|t| t.code().eq_ignore_ascii_case(s))
            .ok_or_else(|| DynkinError::InvalidData(format!("unknown affine type code {s:?}")))
    }
}

/// A finite or affine type together with its rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DiagramLabel {
    Finite { family: FiniteType, rank: usize },
    Affine { family: AffineType, rank: usize },
}

impl std::fmt::Display for DiagramLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiagramLabel::Finite { family, rank } => match family {
                FiniteType::A | FiniteType::B | FiniteType::C | FiniteType::D => {
                    write!(f, "{family}{rank}")
                }
                _ => write!(f, "{family}"),
            },
            DiagramLabel::Affine { family, rank } => match family {
                AffineType::A
                | AffineType::B
                | AffineType::Bt
                | AffineType::C
                | AffineType::Ct
                | AffineType::Cp
                | AffineType::D => write!(f, "{family}~{rank}"),
                _ => write!(f, "{family}~"),
            },
        }
    }
}

/// An edge of a Dynkin diagram.
///
/// `short_end` is the node the arrow points at (the short-root side); it is
/// `None` exactly for single bonds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub mult: u8,
    pub short_end: Option<usize>,
}

impl Edge {
    fn single(a: usize, b: usize) -> Edge {
        Edge {
            a,
            b,
            mult: 1,
            short_end: None,
        }
    }

    fn multiple(a: usize, b: usize, mult: u8, short_end: usize) -> Edge {
        Edge {
            a,
            b,
            mult,
            short_end: Some(short_end),
        }
    }

    fn touches(&self, n: usize) -> bool {
        self.a == n || self.b == n
    }

    fn other(&self, n: usize) -> usize {
        if self.a == n {
            self.b
        } else {
            self.a
        }
    }
}

/// A Dynkin diagram: named nodes plus multiplicity/arrow edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    nodes: Vec<String>,
    edges: Vec<Edge>,
}

/// A connected component of a diagram together with its classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub label: DiagramLabel,
    /// Node names of the component, in diagram order.
    pub nodes: Vec<String>,
}

/// Whether a (type, rank, field) combination is supported by the assembly
/// recipes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Admissibility {
    /// The standard recipes apply.
    Admissible,
    /// The field is too small for the bond structure; no recipe exists.
    Excluded(ExclusionReason),
    /// The rank-2 cycle over fields of size 2 or 3: handled by dedicated
    /// fixed-size presentations instead of the generic recipes.
    SpecialA2Small,
}

/// Why a field size is excluded for a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExclusionReason {
    /// A double bond requires q > 2.
    DoubleBondNeedsQAtLeast3,
    /// A triple bond requires q > 3.
    TripleBondNeedsQAtLeast4,
}

impl std::fmt::Display for ExclusionReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExclusionReason::DoubleBondNeedsQAtLeast3 => {
                write!(f, "double bond requires field size at least 3")
            }
            ExclusionReason::TripleBondNeedsQAtLeast4 => {
                write!(f, "triple bond requires field size at least 4")
            }
        }
    }
}

fn node_names(start: usize, end_inclusive: usize) -> Vec<String> {
    (start..=end_inclusive).map(|i| format!("a{i}")).collect()
}

impl Diagram {
    /// Builds the diagram for a finite or affine label.
    pub fn build(label: DiagramLabel) -> Result<Diagram, DynkinError> {
        match label {
            DiagramLabel::Finite { family, rank } => Diagram::finite(family, rank),
            DiagramLabel::Affine { family, rank } => Diagram::affine(family, rank),
        }
    }

    /// Builds a finite-type diagram with nodes `a1 ... a<rank>`.
    ///
    /// Node numbering follows the standard conventions: chains are numbered
    /// along the chain, `D` forks at `a<rank-2>`, the `E` families attach
    /// `a2` to `a4` with the chain `a1 a3 a4 a5 ...`.
    pub fn finite(family: FiniteType, rank: usize) -> Result<Diagram, DynkinError> {
        let bad = |hint: &'static str| DynkinError::InvalidRank {
            family: family.to_string(),
            rank,
            hint,
        };
        let nodes = node_names(1, rank);
        let path =
            |upto: usize| -> Vec<Edge> { (1..upto).map(|i| Edge::single(i - 1, i)).collect() };
        // Node a<i> has index i - 1 in `nodes`.
        let ix = |i: usize| i - 1;
        let edges = match family {
            FiniteType::A => {
                if rank < 1 {
                    return Err(bad("A requires rank >= 1"));
                }
                path(rank)
            }
            FiniteType::B => {
                if rank < 2 {
                    return Err(bad("B requires rank >= 2"));
                }
                let mut e = path(rank - 1);
                e.push(Edge::multiple(ix(rank - 1), ix(rank), 2, ix(rank)));
                e
            }
            FiniteType::C => {
                if rank < 2 {
                    return Err(bad("C requires rank >= 2"));
                }
                let mut e = path(rank - 1);
                e.push(Edge::multiple(ix(rank - 1), ix(rank), 2, ix(rank - 1)));
                e
            }
            FiniteType::D => {
                if rank < 4 {
                    return Err(bad("D requires rank >= 4"));
                }
                let mut e = path(rank - 2);
                e.push(Edge::single(ix(rank - 2), ix(rank - 1)));
                e.push(Edge::single(ix(rank - 2), ix(rank)));
                e
            }
            FiniteType::E6 | FiniteType::E7 | FiniteType::E8 => {
                let want = match family {
                    FiniteType::E6 => 6,
                    FiniteType::E7 => 7,
                    _ => 8,
                };
                if rank != want {
                    return Err(bad("exceptional type has fixed rank"));
                }
                let mut e = vec![Edge::single(ix(1), ix(3)), Edge::single(ix(2), ix(4))];
                for i in 3..rank {
                    e.push(Edge::single(ix(i), ix(i + 1)));
                }
                e
            }
            FiniteType::F4 => {
                if rank != 4 {
                    return Err(bad("F4 has rank 4"));
                }
                vec![
                    Edge::single(ix(1), ix(2)),
                    Edge::multiple(ix(2), ix(3), 2, ix(3)),
                    Edge::single(ix(3), ix(4)),
                ]
            }
            FiniteType::G2 => {
                if rank != 2 {
                    return Err(bad("G2 has rank 2"));
                }
                vec![Edge::multiple(ix(1), ix(2), 3, ix(1))]
            }
        };
        Ok(Diagram { nodes, edges })
    }

    /// Builds an affine diagram with nodes `a0 ... a<rank>`.
    pub fn affine(family: AffineType, rank: usize) -> Result<Diagram, DynkinError> {
        let bad = |hint: &'static str| DynkinError::InvalidRank {
            family: family.to_string(),
            rank,
            hint,
        };
        let (lo, hi) = family.rank_range();
        if rank < lo || rank > hi {
            return Err(bad(match family {
                AffineType::A => "affine A requires rank >= 2",
                AffineType::B | AffineType::Bt => "affine B requires rank >= 3",
                AffineType::C | AffineType::Ct | AffineType::Cp => "affine C requires rank >= 2",
                AffineType::D => "affine D requires rank >= 4",
                _ => "exceptional affine type has fixed rank",
            }));
        }
        let nodes = node_names(0, rank);
        // Node a<i> has index i.
        let chain = |from: usize, to: usize| -> Vec<Edge> {
            (from..to).map(|i| Edge::single(i, i + 1)).collect()
        };
        let edges = match family {
            AffineType::A => {
                let mut e = chain(0, rank);
                e.push(Edge::single(rank, 0));
                e
            }
            AffineType::B | AffineType::Bt => {
                // Fork a0, a1 -> a2, chain to a<rank-1>, double bond to a<rank>.
                let mut e = vec![Edge::single(0, 2), Edge::single(1, 2)];
                e.extend(chain(2, rank - 1));
                let short = if family == AffineType::B {
                    rank
                } else {
                    rank - 1
                };
                e.push(Edge::multiple(rank - 1, rank, 2, short));
                e
            }
            AffineType::C | AffineType::Ct | AffineType::Cp => {
                let mut e = vec![];
                let (left_short, right_short) = match family {
                    AffineType::C => (1, rank - 1),
                    AffineType::Ct => (0, rank),
                    _ => (0, rank - 1),
                };
                e.push(Edge::multiple(0, 1, 2, left_short));
                e.extend(chain(1, rank - 1));
                e.push(Edge::multiple(rank - 1, rank, 2, right_short));
                e
            }
            AffineType::D => {
                let mut e = vec![Edge::single(0, 2), Edge::single(1, 2)];
                e.extend(chain(2, rank - 2));
                e.push(Edge::single(rank - 2, rank - 1));
                e.push(Edge::single(rank - 2, rank));
                e
            }
            AffineType::E6 => {
                let mut e = Diagram::finite(FiniteType::E6, 6)?.shift_edges(1);
                e.push(Edge::single(0, 2));
                e
            }
            AffineType::E7 => {
                let mut e = Diagram::finite(FiniteType::E7, 7)?.shift_edges(1);
                e.push(Edge::single(0, 1));
                e
            }
            AffineType::E8 => {
                let mut e = Diagram::finite(FiniteType::E8, 8)?.shift_edges(1);
                e.push(Edge::single(0, 8));
                e
            }
            AffineType::F4 | AffineType::Ft4 => {
                let short = if family == AffineType::F4 { 3 } else { 2 };
                vec![
                    Edge::single(0, 1),
                    Edge::single(1, 2),
                    Edge::multiple(2, 3, 2, short),
                    Edge::single(3, 4),
                ]
            }
            AffineType::G2 | AffineType::Gt2 => {
                let short = if family == AffineType::G2 { 1 } else { 2 };
                vec![Edge::single(0, 1), Edge::multiple(1, 2, 3, short)]
            }
        };
        Ok(Diagram { nodes, edges })
    }

    /// Re-indexes the edges of a finite diagram whose node `a<i>` should
    /// become node index `i` of an affine diagram (shift by `delta`).
    fn shift_edges(&self, delta: usize) -> Vec<Edge> {
        self.edges
            .iter()
            .map(|e| Edge {
                a: e.a + delta,
                b: e.b + delta,
                mult: e.mult,
                short_end: e.short_end.map(|s| s + delta),
            })
            .collect()
    }

    /// Builds a diagram from raw parts, validating edge data.
    pub fn from_parts(nodes: Vec<String>, edges: Vec<Edge>) -> Result<Diagram, DynkinError> {
        let n = nodes.len();
        for (i, name) in nodes.iter().enumerate() {
            if nodes[..i].contains(name) {
                return Err(DynkinError::DuplicateNode(name.clone()));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for e in &edges {
            if e.a >= n || e.b >= n || e.a == e.b {
                return Err(DynkinError::InvalidData(format!(
                    "edge ({}, {}) out of range or degenerate",
                    e.a, e.b
                )));
            }
            if !seen.insert((e.a.min(e.b), e.a.max(e.b))) {
                return Err(DynkinError::InvalidData(format!(
                    "repeated edge ({}, {})",
                    e.a, e.b
                )));
            }
            match (e.mult, e.short_end) {
                (1, None) => {}
                (2 | 3, Some(s)) if s == e.a || s == e.b => {}
                _ => {
                    return Err(DynkinError::InvalidData(format!(
                        "edge ({}, {}) has invalid multiplicity/arrow data",
                        e.a, e.b
                    )))
                }
            }
        }
        Ok(Diagram { nodes, edges })
    }

    /// Node names in diagram order.
    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    /// Edges of the diagram.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// Largest bond multiplicity (0 for an edgeless diagram).
    pub fn max_bond(&self) -> u8 {
        self.edges.iter().map(|e| e.mult).max().unwrap_or(0)
    }

    /// The generalized Cartan matrix under the arrow-to-short convention.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.nodes.len();
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        for e in &self.edges {
            match e.short_end {
                None => {
                    m[e.a][e.b] = -1;
                    m[e.b][e.a] = -1;
                }
                Some(s) => {
                    let long = e.other(s);
                    m[long][s] = -(e.mult as i64);
                    m[s][long] = -1;
                }
            }
        }
        m
    }

    /// The induced subdiagram on the given nodes (order preserved from the
    /// argument), keeping every edge with both ends selected.
    pub fn subdiagram(&self, keep: &[&str]) -> Result<Diagram, DynkinError> {
        let mut indices = Vec::with_capacity(keep.len());
        for name in keep {
            let ix = self
                .nodes
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| DynkinError::UnknownNode(name.to_string()))?;
            if indices.contains(&ix) {
                return Err(DynkinError::DuplicateNode(name.to_string()));
            }
            indices.push(ix);
        }
        let nodes: Vec<String> = indices.iter().map(|&i| self.nodes[i].clone()).collect();
        let pos = |old: usize| indices.iter().position(|&i| i == old);
        let mut edges = vec![];
        for e in &self.edges {
            if let (Some(a), Some(b)) = (pos(e.a), pos(e.b)) {
                edges.push(Edge {
                    a,
                    b,
                    mult: e.mult,
                    short_end: e.short_end.map(|s| pos(s).expect("arrow end selected")),
                });
            }
        }
        Ok(Diagram { nodes, edges })
    }

    /// Splits the diagram into connected components (ordered by smallest
    /// node index) and classifies each one.
    pub fn classify(&self) -> Result<Vec<Component>, DynkinError> {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut components = vec![];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                for e in self.edges.iter().filter(|e| e.touches(v)) {
                    let w = e.other(v);
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            let label = self.classify_component(&comp)?;
            components.push(Component {
                label,
                nodes: comp.iter().map(|&i| self.nodes[i].clone()).collect(),
            });
        }
        Ok(components)
    }

    /// Requires the whole diagram to be one component of the given label.
    pub fn classify_single(&self) -> Result<DiagramLabel, DynkinError> {
        let comps = self.classify()?;
        if comps.len() != 1 {
            return Err(DynkinError::Unclassifiable(format!(
                "expected one component, found {}",
                comps.len()
            )));
        }
        Ok(comps[0].label)
    }

    fn unclass(&self, comp: &[usize]) -> DynkinError {
        let names: Vec<&str> = comp.iter().map(|&i| self.nodes[i].as_str()).collect();
        DynkinError::Unclassifiable(names.join(", "))
    }

    fn classify_component(&self, comp: &[usize]) -> Result<DiagramLabel, DynkinError> {
        let n = comp.len();
        let edges: Vec<&Edge> = self
            .edges
            .iter()
            .filter(|e| comp.contains(&e.a) && comp.contains(&e.b))
            .collect();
        if edges.iter().any(|e| e.mult > 3) {
            return Err(self.unclass(comp));
        }
        let degree = |v: usize| edges.iter().filter(|e| e.touches(v)).count();
        let affine = |family, rank| Ok(DiagramLabel::Affine { family, rank });

        if edges.len() == n {
            // Connected with as many edges as nodes: a single cycle.
            let ok = comp.iter().all(|&v| degree(v) == 2) && edges.iter().all(|e| e.mult == 1);
            return if ok && n >= 3 {
                affine(AffineType::A, n - 1)
            } else {
                Err(self.unclass(comp))
            };
        }
        if edges.len() != n - 1 {
            return Err(self.unclass(comp));
        }

        // Tree shapes from here on.
        if comp.iter().any(|&v| degree(v) >= 5) {
            return Err(self.unclass(comp));
        }
        let branches: Vec<usize> = comp.iter().copied().filter(|&v| degree(v) >= 3).collect();
        match branches.len() {
            0 => self.classify_chain(comp, &edges),
            1 => {
                let c = branches[0];
                if degree(c) == 4 {
                    // Four-valent star: the rank-4 affine D diagram.
                    let ok = n == 5 && edges.iter().all(|e| e.mult == 1);
                    return if ok {
                        affine(AffineType::D, 4)
                    } else {
                        Err(self.unclass(comp))
                    };
                }
                self.classify_fork(comp, &edges, c)
            }
            2 => {
                // Double fork: affine D.  All bonds single, each branch node
                // carries exactly two pendant leaves.
                let all_single = edges.iter().all(|e| e.mult == 1);
                let pendants_ok = branches.iter().all(|&b| {
                    degree(b) == 3
                        && edges
                            .iter()
                            .filter(|e| e.touches(b) && degree(e.other(b)) == 1)
                            .count()
                            == 2
                });
                if all_single && pendants_ok && n >= 6 {
                    affine(AffineType::D, n - 1)
                } else {
                    Err(self.unclass(comp))
                }
            }
            _ => Err(self.unclass(comp)),
        }
    }

    /// Classifies a tree with exactly one three-valent node `c`.
    fn classify_fork(
        &self,
        comp: &[usize],
        edges: &[&Edge],
        c: usize,
    ) -> Result<DiagramLabel, DynkinError> {
        let n = comp.len();
        let finite = |family, rank| Ok(DiagramLabel::Finite { family, rank });
        let affine = |family, rank| Ok(DiagramLabel::Affine { family, rank });
        // Walk the three arms outward from c.
        let mut arms: Vec<Vec<&Edge>> = vec![];
        for first in edges.iter().filter(|e| e.touches(c)) {
            let mut arm = vec![*first];
            let mut prev = c;
            let mut cur = first.other(c);
            while let Some(next) = edges
                .iter()
                .find(|e| e.touches(cur) && e.other(cur) != prev)
            {
                arm.push(*next);
                prev = cur;
                cur = next.other(cur);
            }
            arms.push(arm);
        }
        arms.sort_by_key(|a| a.len());
        let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
        let multiples: Vec<&&Edge> = edges.iter().filter(|e| e.mult > 1).collect();
        match multiples.len() {
            0 => match (lens[0], lens[1], lens[2]) {
                (1, 1, _) => finite(FiniteType::D, n),
                (1, 2, 2) => finite(FiniteType::E6, 6),
                (1, 2, 3) => finite(FiniteType::E7, 7),
                (1, 2, 4) => finite(FiniteType::E8, 8),
                (2, 2, 2) => affine(AffineType::E6, 6),
                (1, 3, 3) => affine(AffineType::E7, 7),
                (1, 2, 5) => affine(AffineType::E8, 8),
                _ => Err(self.unclass(comp)),
            },
            1 => {
                let double = multiples[0];
                if double.mult != 2 {
                    return Err(self.unclass(comp));
                }
                // Affine B shape: two single pendant leaves plus one arm
                // ending in the double bond.
                if lens[0] != 1 || lens[1] != 1 {
                    return Err(self.unclass(comp));
                }
                let long_arm = &arms[2];
                let tail_ok = arms[0][0].mult == 1
                    && arms[1][0].mult == 1
                    && long_arm.last().map(|e| *e as *const Edge) == Some(*double as *const Edge)
                    && long_arm[..long_arm.len() - 1].iter().all(|e| e.mult == 1);
                if !tail_ok {
                    return Err(self.unclass(comp));
                }
                // The arrow decides between the plain and twisted families:
                // pointing at the terminal leaf is plain B.
                let leaf_end = {
                    let mut prev = c;
                    let mut cur = long_arm[0].other(c);
                    for e in &long_arm[1..] {
                        prev = cur;
                        cur = e.other(cur);
                    }
                    let _ = prev;
                    cur
                };
                if double.short_end == Some(leaf_end) {
                    affine(AffineType::B, n - 1)
                } else {
                    affine(AffineType::Bt, n - 1)
                }
            }
            _ => Err(self.unclass(comp)),
        }
    }

    /// Classifies a chain (tree with no branch node).
    fn classify_chain(&self, comp: &[usize], edges: &[&Edge]) -> Result<DiagramLabel, DynkinError> {
        let n = comp.len();
        let finite = |family, rank| Ok(DiagramLabel::Finite { family, rank });
        let affine = |family, rank| Ok(DiagramLabel::Affine { family, rank });
        if n == 1 {
            return finite(FiniteType::A, 1);
        }
        let degree = |v: usize| edges.iter().filter(|e| e.touches(v)).count();
        // Orient the chain from one endpoint.
        let start = comp
            .iter()
            .copied()
            .find(|&v| degree(v) == 1)
            .expect("chain has endpoints");
        let mut order = vec![start];
        let mut gaps: Vec<&Edge> = vec![];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(e) = edges
            .iter()
            .find(|e| e.touches(cur) && e.other(cur) != prev)
        {
            gaps.push(e);
            prev = cur;
            cur = e.other(cur);
            order.push(cur);
        }
        let k = gaps.len();
        let triples: Vec<usize> = (0..k).filter(|&i| gaps[i].mult == 3).collect();
        let doubles: Vec<usize> = (0..k).filter(|&i| gaps[i].mult == 2).collect();

        if !triples.is_empty() {
            if triples.len() > 1 || !doubles.is_empty() {
                return Err(self.unclass(comp));
            }
            return match n {
                // A two-node triple bond is G2 in either orientation.
                2 => finite(FiniteType::G2, 2),
                3 => {
                    let g = triples[0];
                    let middle = order[1];
                    if gaps[g].short_end == Some(middle) {
                        affine(AffineType::G2, 2)
                    } else {
                        affine(AffineType::Gt2, 2)
                    }
                }
                _ => Err(self.unclass(comp)),
            };
        }
        match doubles.len() {
            0 => finite(FiniteType::A, n),
            1 => {
                let g = doubles[0];
                if g == 0 || g == k - 1 {
                    // Terminal double bond: B or C (canonically C in rank 2).
                    if n == 2 {
                        return finite(FiniteType::C, 2);
                    }
                    let (leaf, inner) = if g == 0 {
                        (order[0], order[1])
                    } else {
                        (order[k], order[k - 1])
                    };
                    let _ = inner;
                    if gaps[g].short_end == Some(leaf) {
                        finite(FiniteType::B, n)
                    } else {
                        finite(FiniteType::C, n)
                    }
                } else {
                    match n {
                        4 => finite(FiniteType::F4, 4),
                        5 => {
                            // Interior double bond off center: affine F4.
                            // Orient so three nodes sit left of the bond.
                            let (g, order) = if g == 2 {
                                (g, order.clone())
                            } else {
                                (k - 1 - g, order.iter().rev().copied().collect())
                            };
                            if g != 2 {
                                return Err(self.unclass(comp));
                            }
                            let right_of_bond = order[3];
                            if gaps.iter().find(|e| e.mult == 2).unwrap().short_end
                                == Some(right_of_bond)
                            {
                                affine(AffineType::F4, 4)
                            } else {
                                affine(AffineType::Ft4, 4)
                            }
                        }
                        _ => Err(self.unclass(comp)),
                    }
                }
            }
            2 => {
                let (gl, gr) = (doubles[0], doubles[1]);
                if gl != 0 || gr != k - 1 || n < 3 {
                    return Err(self.unclass(comp));
                }
                let left_out = gaps[gl].short_end == Some(order[0]);
                let right_out = gaps[gr].short_end == Some(order[k]);
                match (left_out, right_out) {
                    (false, false) => affine(AffineType::C, n - 1),
                    (true, true) => affine(AffineType::Ct, n - 1),
                    _ => affine(AffineType::Cp, n - 1),
                }
            }
            _ => Err(self.unclass(comp)),
        }
    }
}

/// Decides whether the assembly recipes support an affine family over the
/// field `q`, and flags the dedicated small-field special case.
pub fn check_admissibility(
    family: AffineType,
    rank: usize,
    q: &FieldParameter,
) -> Result<Admissibility, DynkinError> {
    let diagram = Diagram::affine(family, rank)?;
    if family == AffineType::A && rank == 2 && (q.q == 2 || q.q == 3) {
        return Ok(Admissibility::SpecialA2Small);
    }
    let max_bond = diagram.max_bond();
    if max_bond >= 2 && q.q == 2 {
        return Ok(Admissibility::Excluded(
            ExclusionReason::DoubleBondNeedsQAtLeast3,
        ));
    }
    if max_bond == 3 && q.q == 3 {
        return Ok(Admissibility::Excluded(
            ExclusionReason::TripleBondNeedsQAtLeast4,
        ));
    }
    Ok(Admissibility::Admissible)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cofactor-expansion determinant, independent of any production code.
    fn det(m: &[Vec<i64>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return m[0][0] as i128;
        }
        let mut total = 0i128;
        for (j, &top) in m[0].iter().enumerate() {
            if top == 0 {
                continue;
            }
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            total += sign * (top as i128) * det(&minor);
        }
        total
    }

    fn finite_pairs() -> Vec<(FiniteType, usize)> {
        let mut v = vec![];
        for r in 1..=12 {
            v.push((FiniteType::A, r));
        }
        for r in 3..=12 {
            v.push((FiniteType::B, r));
        }
        for r in 2..=12 {
            v.push((FiniteType::C, r));
        }
        for r in 4..=12 {
            v.push((FiniteType::D, r));
        }
        v.extend([
            (FiniteType::E6, 6),
            (FiniteType::E7, 7),
            (FiniteType::E8, 8),
            (FiniteType::F4, 4),
            (FiniteType::G2, 2),
        ]);
        v
    }

    fn affine_pairs() -> Vec<(AffineType, usize)> {
        let mut v = vec![];
        for r in 2..=12 {
            v.push((AffineType::A, r));
        }
        for r in 3..=12 {
            v.push((AffineType::B, r));
            v.push((AffineType::Bt, r));
        }
        for r in 2..=12 {
            v.push((AffineType::C, r));
            v.push((AffineType::Ct, r));
            v.push((AffineType::Cp, r));
        }
        for r in 4..=12 {
            v.push((AffineType::D, r));
        }
        v.extend([
            (AffineType::E6, 6),
            (AffineType::E7, 7),
            (AffineType::E8, 8),
            (AffineType::F4, 4),
            (AffineType::Ft4, 4),
            (AffineType::G2, 2),
            (AffineType::Gt2, 2),
        ]);
        v
    }

    #[test]
    fn cartan_matrices_match_classical_tables() {
        let a2 = Diagram::finite(FiniteType::A, 2).unwrap();
        assert_eq!(a2.cartan_matrix(), vec![vec![2, -1], vec![-1, 2]]);

        let c2 = Diagram::finite(FiniteType::C, 2).unwrap();
        assert_eq!(c2.cartan_matrix(), vec![vec![2, -1], vec![-2, 2]]);

        let b3 = Diagram::finite(FiniteType::B, 3).unwrap();
        assert_eq!(
            b3.cartan_matrix(),
            vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]
        );

        let c3 = Diagram::finite(FiniteType::C, 3).unwrap();
        assert_eq!(
            c3.cartan_matrix(),
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]
        );

        let g2 = Diagram::finite(FiniteType::G2, 2).unwrap();
        assert_eq!(g2.cartan_matrix(), vec![vec![2, -1], vec![-3, 2]]);

        let f4 = Diagram::finite(FiniteType::F4, 4).unwrap();
        assert_eq!(
            f4.cartan_matrix(),
            vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -2, 0],
                vec![0, -1, 2, -1],
                vec![0, 0, -1, 2]
            ]
        );
    }

    #[test]
    fn twisted_c_chains_have_distinct_matrices() {
        let c = Diagram::affine(AffineType::C, 2).unwrap().cartan_matrix();
        let ct = Diagram::affine(AffineType::Ct, 2).unwrap().cartan_matrix();
        let cp = Diagram::affine(AffineType::Cp, 2).unwrap().cartan_matrix();
        assert_eq!(
            c,
            vec![vec![2, -2, 0], vec![-1, 2, -1], vec![0, -2, 2]],
            "both arrows point inward"
        );
        assert_eq!(
            ct,
            vec![vec![2, -1, 0], vec![-2, 2, -2], vec![0, -1, 2]],
            "both arrows point outward"
        );
        assert_eq!(
            cp,
            vec![vec![2, -1, 0], vec![-2, 2, -1], vec![0, -2, 2]],
            "arrows aligned"
        );
    }

    #[test]
    fn finite_types_are_positive_definite_affine_types_singular() {
        for (family, rank) in finite_pairs() {
            let d = Diagram::finite(family, rank).unwrap();
            let dt = det(&d.cartan_matrix());
            assert!(dt > 0, "{family}{rank}: det {dt}");
        }
        for (family, rank) in affine_pairs() {
            let d = Diagram::affine(family, rank).unwrap();
            let dt = det(&d.cartan_matrix());
            assert_eq!(dt, 0, "{family}~{rank}: det {dt}");
        }
    }

    #[test]
    fn classification_inverts_construction() {
        for (family, rank) in finite_pairs() {
            let d = Diagram::finite(family, rank).unwrap();
            assert_eq!(
                d.classify_single().unwrap(),
                DiagramLabel::Finite { family, rank },
                "{family}{rank}"
            );
        }
        for (family, rank) in affine_pairs() {
            let d = Diagram::affine(family, rank).unwrap();
            assert_eq!(
                d.classify_single().unwrap(),
                DiagramLabel::Affine { family, rank },
                "{family}~{rank}"
            );
        }
    }

    #[test]
    fn rank_two_double_bond_is_canonically_c2() {
        let b2 = Diagram::finite(FiniteType::B, 2).unwrap();
        assert_eq!(
            b2.classify_single().unwrap(),
            DiagramLabel::Finite {
                family: FiniteType::C,
                rank: 2
            }
        );
    }

    #[test]
    fn classification_is_label_invariant() {
        // Reversing the node order must not change the classification.
        for (family, rank) in affine_pairs() {
            let d = Diagram::affine(family, rank).unwrap();
            let n = d.size();
            let reversed_edges: Vec<Edge> = d
                .edges()
                .iter()
                .map(|e| Edge {
                    a: n - 1 - e.a,
                    b: n - 1 - e.b,
                    mult: e.mult,
                    short_end: e.short_end.map(|s| n - 1 - s),
                })
                .collect();
            let names = (0..n).map(|i| format!("x{i}")).collect();
            let r = Diagram::from_parts(names, reversed_edges).unwrap();
            assert_eq!(
                r.classify_single().unwrap(),
                DiagramLabel::Affine { family, rank },
                "{family}~{rank} reversed"
            );
        }
    }

    #[test]
    fn subdiagrams_classify_as_expected() {
        let d4 = Diagram::affine(AffineType::D, 4).unwrap();
        let comps = d4
            .subdiagram(&["a0", "a1", "a3", "a4"])
            .unwrap()
            .classify()
            .unwrap();
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|c| c.label
            == DiagramLabel::Finite {
                family: FiniteType::A,
                rank: 1
            }));

        let e8 = Diagram::affine(AffineType::E8, 8).unwrap();
        let long_path = e8
            .subdiagram(&["a1", "a3", "a4", "a5", "a6", "a7", "a8", "a0"])
            .unwrap();
        assert_eq!(
            long_path.classify_single().unwrap(),
            DiagramLabel::Finite {
                family: FiniteType::A,
                rank: 8
            }
        );

        let b4 = Diagram::affine(AffineType::B, 4).unwrap();
        assert_eq!(
            b4.subdiagram(&["a0", "a1", "a2", "a3"])
                .unwrap()
                .classify_single()
                .unwrap(),
            DiagramLabel::Finite {
                family: FiniteType::D,
                rank: 4
            }
        );
        assert_eq!(
            b4.subdiagram(&["a3", "a4"])
                .unwrap()
                .classify_single()
                .unwrap(),
            DiagramLabel::Finite {
                family: FiniteType::C,
                rank: 2
            }
        );

        let f4 = Diagram::affine(AffineType::F4, 4).unwrap();
        assert_eq!(
            f4.subdiagram(&["a0", "a1", "a2", "a3"])
                .unwrap()
                .classify_single()
                .unwrap(),
            DiagramLabel::Finite {
                family: FiniteType::B,
                rank: 4
            },
            "chain ending in an arrow toward its last node"
        );

        let g2 = Diagram::affine(AffineType::G2, 2).unwrap();
        assert_eq!(
            g2.subdiagram(&["a1", "a2"])
                .unwrap()
                .classify_single()
                .unwrap(),
            DiagramLabel::Finite {
                family: FiniteType::G2,
                rank: 2
            }
        );
        assert_eq!(
            g2.subdiagram(&["a0", "a1"])
                .unwrap()
                .classify_single()
                .unwrap(),
            DiagramLabel::Finite {
                family: FiniteType::A,
                rank: 2
            }
        );
    }

    #[test]
    fn subdiagram_rejects_bad_nodes() {
        let a3 = Diagram::affine(AffineType::A, 3).unwrap();
        assert_eq!(
            a3.subdiagram(&["a0", "zz"]),
            Err(DynkinError::UnknownNode("zz".into()))
        );
        assert_eq!(
            a3.subdiagram(&["a0", "a0"]),
            Err(DynkinError::DuplicateNode("a0".into()))
        );
    }

    #[test]
    fn indefinite_shapes_are_rejected() {
        // A fork with arms (1, 3, 4) is neither finite nor affine.
        let mut edges = vec![Edge::single(0, 1)];
        edges.extend([
            Edge::single(0, 2),
            Edge::single(2, 3),
            Edge::single(3, 4),
            Edge::single(0, 5),
            Edge::single(5, 6),
            Edge::single(6, 7),
            Edge::single(7, 8),
        ]);
        let names = (0..9).map(|i| format!("n{i}")).collect();
        let d = Diagram::from_parts(names, edges).unwrap();
        assert!(matches!(
            d.classify_single(),
            Err(DynkinError::Unclassifiable(_))
        ));

        // A cycle with a double bond is not affine A.
        let names = (0..3).map(|i| format!("c{i}")).collect();
        let d = Diagram::from_parts(
            names,
            vec![
                Edge::multiple(0, 1, 2, 0),
                Edge::single(1, 2),
                Edge::single(2, 0),
            ],
        )
        .unwrap();
        assert!(matches!(
            d.classify_single(),
            Err(DynkinError::Unclassifiable(_))
        ));

        // A chain with three double bonds is rejected.
        let names = (0..4).map(|i| format!("m{i}")).collect();
        let d = Diagram::from_parts(
            names,
            vec![
                Edge::multiple(0, 1, 2, 0),
                Edge::multiple(1, 2, 2, 1),
                Edge::multiple(2, 3, 2, 3),
            ],
        )
        .unwrap();
        assert!(matches!(
            d.classify_single(),
            Err(DynkinError::Unclassifiable(_))
        ));
    }

    #[test]
    fn constructors_reject_bad_ranks() {
        assert!(Diagram::affine(AffineType::A, 1).is_err());
        assert!(Diagram::affine(AffineType::B, 2).is_err());
        assert!(Diagram::affine(AffineType::D, 3).is_err());
        assert!(Diagram::affine(AffineType::E6, 7).is_err());
        assert!(Diagram::affine(AffineType::G2, 3).is_err());
        assert!(Diagram::finite(FiniteType::D, 3).is_err());
        assert!(Diagram::finite(FiniteType::A, 0).is_err());
    }

    #[test]
    fn admissibility_rules() {
        let q2 = FieldParameter::new(2).unwrap();
        let q3 = FieldParameter::new(3).unwrap();
        let q4 = FieldParameter::new(4).unwrap();
        let q5 = FieldParameter::new(5).unwrap();

        // Simply-laced families have no small-field exclusions.
        for (family, rank) in [(AffineType::A, 5), (AffineType::D, 4), (AffineType::E8, 8)] {
            for q in [&q2, &q3, &q4, &q5] {
                assert_eq!(
                    check_admissibility(family, rank, q).unwrap(),
                    Admissibility::Admissible,
                    "{family}~{rank} over {q}"
                );
            }
        }

        // Double bonds exclude q = 2 only.
        for family in [
            AffineType::B,
            AffineType::Bt,
            AffineType::C,
            AffineType::Ct,
            AffineType::Cp,
            AffineType::F4,
            AffineType::Ft4,
        ] {
            let rank = family.rank_range().0.max(3);
            assert_eq!(
                check_admissibility(family, rank, &q2).unwrap(),
                Admissibility::Excluded(ExclusionReason::DoubleBondNeedsQAtLeast3),
                "{family} over 2"
            );
            assert_eq!(
                check_admissibility(family, rank, &q3).unwrap(),
                Admissibility::Admissible,
                "{family} over 3"
            );
        }

        // Triple bonds exclude q = 2 and q = 3.
        for family in [AffineType::G2, AffineType::Gt2] {
            assert_eq!(
                check_admissibility(family, 2, &q2).unwrap(),
                Admissibility::Excluded(ExclusionReason::DoubleBondNeedsQAtLeast3)
            );
            assert_eq!(
                check_admissibility(family, 2, &q3).unwrap(),
                Admissibility::Excluded(ExclusionReason::TripleBondNeedsQAtLeast4)
            );
            assert_eq!(
                check_admissibility(family, 2, &q4).unwrap(),
                Admissibility::Admissible
            );
        }

        // The rank-2 cycle over tiny fields is special, not excluded.
        assert_eq!(
            check_admissibility(AffineType::A, 2, &q2).unwrap(),
            Admissibility::SpecialA2Small
        );
        assert_eq!(
            check_admissibility(AffineType::A, 2, &q3).unwrap(),
            Admissibility::SpecialA2Small
        );
        assert_eq!(
            check_admissibility(AffineType::A, 2, &q4).unwrap(),
            Admissibility::Admissible
        );
        assert_eq!(
            check_admissibility(AffineType::A, 3, &q2).unwrap(),
            Admissibility::Admissible
        );
    }

    #[test]
    fn affine_type_codes_round_trip() {
        for t in AffineType::ALL {
            assert_eq!(t.code().parse::<AffineType>().unwrap(), t);
        }
        assert!("Q7".parse::<AffineType>().is_err());
    }
}
