//! Amalgam assembly: turns an affine diagram into an ordered plan of
//! catalogued building blocks, shared-block eliminations and bridge
//! relations, then executes the plan as a size budget (always) or as an
//! explicit presentation (when relator data is supplied).
//!
//! The general shape of every plan: cover the affine diagram by proper
//! subdiagrams whose groups have catalogued presentations, glue those
//! presentations over shared rank-one (or rank-two) subgroups by
//! eliminating one copy of the shared sub-presentation, and pay a fixed
//! number of bridge relations for the commutators and identifications a
//! third covering subdiagram provides for free.

use crate::catalog::{BlockFamily, BlockVariant, Catalog, CatalogError, LoadedBlock};
use crate::dynkin::{
    check_admissibility, Admissibility, AffineType, Diagram, DiagramLabel, DynkinError,
    ExclusionReason, FiniteType,
};
use crate::field::{FieldParameter, Parity};
use crate::presentation::{Presentation, PresentationError};
use serde::Serialize;
use thiserror::Error;

/// Errors raised while planning or executing an assembly.
#[derive(Debug, Error)]
pub enum AssemblyError {
    #[error("{family}~ of rank {rank} over q = {q} is excluded: {reason}")]
    Excluded {
        family: AffineType,
        rank: usize,
        q: u64,
        reason: ExclusionReason,
    },
    #[error(transparent)]
    Dynkin(#[from] DynkinError),
    #[error("catalog lookup failed at step {step}: {source}")]
    CatalogAt { step: usize, source: CatalogError },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("explicit assembly unavailable; missing: {}", missing.join("; "))]
    ExplicitUnavailable { missing: Vec<String> },
    #[error("plan invariant violated: {0}")]
    PlanInvariant(String),
    #[error("rank {n} out of range for {kind}")]
    RankOutOfRange { kind: &'static str, n: usize },
}

/// One move of an assembly plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssemblyStep {
    /// Adjoin a catalogued block sitting on the named diagram nodes.
    TakeBlock {
        family: BlockFamily,
        n: usize,
        variant: BlockVariant,
        nodes: Vec<String>,
    },
    /// Remove one copy of a shared sub-presentation from the block taken
    /// at index `from`; legal only when that block contains the shared
    /// block per the catalog and another taken block expresses it.
    EliminateShared {
        family: BlockFamily,
        n: usize,
        variant: BlockVariant,
        from: usize,
    },
    /// Commutator relations between the factors of a product subdiagram
    /// covering the rest of the diagram.
    BridgeCommutators { count: usize },
    /// Relations identifying the two copies of an overlap subgroup.
    Identification { count: usize },
    /// Remaining gluing relations specific to a recipe (covering-block
    /// relations, product-block relations, paired bridge relations).
    ExtraBridge { count: usize, note: &'static str },
    /// One relation killing the extra central generator.
    KillCenterGenerator,
    /// Pass to a two-element generating set at the cost of two relations.
    TwoGeneratorReduce,
}

/// What the plan presents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssemblyTarget {
    Affine { family: AffineType, rank: usize },
    FiniteBlock { family: BlockFamily, n: usize },
}

impl std::fmt::Display for AssemblyTarget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AssemblyTarget::Affine { family, rank } => write!(f, "{family}~{rank}"),
            AssemblyTarget::FiniteBlock { family, n } => write!(f, "{family}({n})"),
        }
    }
}

/// A subdiagram the plan relies on, together with the component labels it
/// must classify to.  Components are listed by smallest node position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdiagramClaim {
    pub role: &'static str,
    pub nodes: Vec<String>,
    pub components: Vec<DiagramLabel>,
}

/// An ordered assembly recipe for one (type, rank, parity) combination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssemblyPlan {
    pub target: AssemblyTarget,
    pub parity: Parity,
    pub steps: Vec<AssemblyStep>,
    pub claims: Vec<SubdiagramClaim>,
    /// Fixed sizes for the dedicated small-field presentation; such a
    /// plan carries no step detail.
    pub special: Option<(usize, usize)>,
    /// Optional golden pair checked by `execute_budget`.
    pub expected: Option<(usize, usize)>,
}

/// One summand of a size budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetStep {
    pub step: String,
    pub dgens: i64,
    pub drels: i64,
}

/// Generator/relation counts with the per-step deltas that produced them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentationBudget {
    pub generators: usize,
    pub relations: usize,
    pub trace: Vec<BudgetStep>,
    /// True when the sizes come from a dedicated small-field presentation
    /// rather than the generic recipes.
    pub special: bool,
}

impl PresentationBudget {
    pub fn sizes(&self) -> (usize, usize) {
        (self.generators, self.relations)
    }

    pub(crate) fn push(&mut self, step: impl Into<String>, dgens: i64, drels: i64) {
        self.generators = (self.generators as i64 + dgens) as usize;
        self.relations = (self.relations as i64 + drels) as usize;
        self.trace.push(BudgetStep {
            step: step.into(),
            dgens,
            drels,
        });
    }
}

fn nd(i: usize) -> String {
    format!("a{i}")
}

/// Node names `a{lo}..a{hi}` inclusive; empty when `lo > hi`.
fn span(lo: usize, hi: usize) -> Vec<String> {
    if lo > hi {
        return vec![];
    }
    (lo..=hi).map(nd).collect()
}

fn fin(family: FiniteType, rank: usize) -> DiagramLabel {
    DiagramLabel::Finite { family, rank }
}

fn fa(rank: usize) -> DiagramLabel {
    fin(FiniteType::A, rank)
}

/// The block variant realising a rank-two symplectic subgroup: the plain
/// block for odd q, the extended one for even q (the plain block has no
/// even-q entry in the catalog).
fn sp4_variant(parity: Parity) -> BlockVariant {
    match parity {
        Parity::Odd => BlockVariant::Primary,
        Parity::Even => BlockVariant::Extended,
    }
}

/// Human-readable block name, e.g. `SL(4,q)+` or `Spin(11,q)`.
fn block_name(family: BlockFamily, n: usize, variant: BlockVariant) -> String {
    let base = match family {
        BlockFamily::Sl => format!("SL({n},q)"),
        BlockFamily::Sp => format!("Sp({n},q)"),
        BlockFamily::SpinOdd | BlockFamily::SpinEven => format!("Spin({n},q)"),
        BlockFamily::G2 => "G2(q)".to_string(),
    };
    match variant {
        BlockVariant::Primary => base,
        BlockVariant::Extended => format!("{base}+"),
    }
}

/// The component labels a block's node set may classify to.  A
/// symplectic block additionally realises the odd orthogonal subdiagram
/// in characteristic two, where the two groups are isomorphic.
fn block_component_labels(
    family: BlockFamily,
    n: usize,
    parity: Parity,
) -> Result<Vec<DiagramLabel>, AssemblyError> {
    match family {
        BlockFamily::Sl if n >= 2 => Ok(vec![fa(n - 1)]),
        BlockFamily::Sp if n >= 4 && n.is_multiple_of(2) => {
            let mut labels = vec![fin(FiniteType::C, n / 2)];
            if parity == Parity::Even {
                labels.push(fin(FiniteType::B, n / 2));
            }
            Ok(labels)
        }
        BlockFamily::SpinOdd if n >= 7 && n % 2 == 1 => Ok(vec![fin(FiniteType::B, (n - 1) / 2)]),
        BlockFamily::SpinEven if n >= 8 && n.is_multiple_of(2) => {
            Ok(vec![fin(FiniteType::D, n / 2)])
        }
        BlockFamily::G2 if n == 2 => Ok(vec![fin(FiniteType::G2, 2)]),
        _ => Err(AssemblyError::PlanInvariant(format!(
            "no diagram component matches {family}({n})"
        ))),
    }
}

// Shorthand constructors used by the per-family planners.

fn take(family: BlockFamily, n: usize, variant: BlockVariant, nodes: Vec<String>) -> AssemblyStep {
    AssemblyStep::TakeBlock {
        family,
        n,
        variant,
        nodes,
    }
}

fn take_sl(n: usize, nodes: Vec<String>) -> AssemblyStep {
    take(BlockFamily::Sl, n, BlockVariant::Primary, nodes)
}

fn eliminate_sl(n: usize, from: usize) -> AssemblyStep {
    AssemblyStep::EliminateShared {
        family: BlockFamily::Sl,
        n,
        variant: BlockVariant::Primary,
        from,
    }
}

fn bridge(count: usize) -> AssemblyStep {
    AssemblyStep::BridgeCommutators { count }
}

fn identify(count: usize) -> AssemblyStep {
    AssemblyStep::Identification { count }
}

fn extra(count: usize, note: &'static str) -> AssemblyStep {
    AssemblyStep::ExtraBridge { count, note }
}

fn claim(role: &'static str, nodes: Vec<String>, components: Vec<DiagramLabel>) -> SubdiagramClaim {
    SubdiagramClaim {
        role,
        nodes,
        components,
    }
}

type StepsAndClaims = (Vec<AssemblyStep>, Vec<SubdiagramClaim>);

/// Cycle diagrams: two maximal-path blocks glued along both overlaps.
/// Ranks 2 and 3 use a third covering block contributing five relations;
/// higher ranks pay the standard four commutators instead.
fn plan_a(n: usize, _parity: Parity) -> StepsAndClaims {
    let a1 = fa(1);
    let a2 = fa(2);
    match n {
        2 => (
            vec![
                take_sl(3, vec![nd(0), nd(1)]),
                take_sl(3, vec![nd(0), nd(2)]),
                eliminate_sl(2, 1),
                extra(5, "covering-block relations"),
                identify(2),
            ],
            vec![
                claim("covering block", vec![nd(1), nd(2)], vec![a2]),
                claim("shared subgroup", vec![nd(0)], vec![a1]),
                claim("overlap identification", vec![nd(2)], vec![a1]),
            ],
        ),
        3 => (
            vec![
                take_sl(4, vec![nd(0), nd(1), nd(2)]),
                take(
                    BlockFamily::Sl,
                    4,
                    BlockVariant::Extended,
                    vec![nd(0), nd(1), nd(3)],
                ),
                eliminate_sl(3, 1),
                extra(5, "covering-block relations"),
                identify(2),
            ],
            vec![
                claim("covering block", vec![nd(2), nd(3)], vec![a2]),
                claim("shared subgroup", vec![nd(0), nd(1)], vec![a2]),
                claim("overlap identification", vec![nd(2)], vec![a1]),
            ],
        ),
        _ => {
            // Both blocks are maximal paths of the (n+1)-cycle: all nodes
            // but `a_n`, and all nodes but `a_2`.
            let mut second = vec![nd(0), nd(1)];
            second.extend(span(3, n));
            let mut overlap = vec![nd(0), nd(1)];
            overlap.extend(span(3, n - 1));
            (
                vec![
                    take_sl(n + 1, span(0, n - 1)),
                    take(BlockFamily::Sl, n + 1, BlockVariant::Extended, second),
                    eliminate_sl(3, 1),
                    bridge(4),
                    identify(2),
                ],
                vec![
                    claim("bridge support", vec![nd(2), nd(n)], vec![a1, a1]),
                    claim("overlap identification", overlap, vec![a2, fa(n - 3)]),
                ],
            )
        }
    }
}

/// Forked chains with one double bond: an orthogonal (or rank-three
/// linear) block covering everything but the short end, glued to a
/// rank-two symplectic block over the shared node.  The twisted variant
/// differs only at rank three, where the shared rank-one copy is removed
/// from the symplectic block instead.
fn plan_b(n: usize, parity: Parity, twisted: bool) -> StepsAndClaims {
    let big = if n == 3 {
        take_sl(4, span(0, 2))
    } else {
        take(
            BlockFamily::SpinEven,
            2 * n,
            BlockVariant::Primary,
            span(0, n - 1),
        )
    };
    let small = take(
        BlockFamily::Sp,
        4,
        sp4_variant(parity),
        vec![nd(n - 1), nd(n)],
    );
    let from = if twisted && n == 3 { 1 } else { 0 };
    let big_label = if n == 3 { fa(3) } else { fin(FiniteType::D, n) };
    let mut bridge_nodes = span(0, n - 2);
    bridge_nodes.push(nd(n));
    let bridge_components = match n {
        3 => vec![fa(1), fa(1), fa(1)],
        4 => vec![fa(3), fa(1)],
        _ => vec![fin(FiniteType::D, n - 1), fa(1)],
    };
    (
        vec![big, small, eliminate_sl(2, from), bridge(4)],
        vec![
            claim("block support", span(0, n - 1), vec![big_label]),
            claim("bridge support", bridge_nodes, bridge_components),
            claim("shared subgroup", vec![nd(n - 1)], vec![fa(1)]),
        ],
    )
}

/// Chains with double bonds at both ends, long roots outside: a full
/// symplectic block away from the zero node plus a rank-two symplectic
/// block on the first edge.
fn plan_c(n: usize, parity: Parity) -> StepsAndClaims {
    let big_variant = if n == 2 {
        sp4_variant(parity)
    } else {
        BlockVariant::Primary
    };
    let big = take(BlockFamily::Sp, 2 * n, big_variant, span(1, n));
    let small = take(BlockFamily::Sp, 4, sp4_variant(parity), vec![nd(0), nd(1)]);
    let mut bridge_nodes = vec![nd(0)];
    bridge_nodes.extend(span(2, n));
    let bridge_components = if n == 2 {
        vec![fa(1), fa(1)]
    } else {
        vec![fa(1), fin(FiniteType::C, n - 1)]
    };
    (
        vec![big, small, eliminate_sl(2, 1), bridge(4)],
        vec![
            claim("block support", span(1, n), vec![fin(FiniteType::C, n)]),
            claim("bridge support", bridge_nodes, bridge_components),
            claim("shared subgroup", vec![nd(1)], vec![fa(1)]),
        ],
    )
}

/// Chains with both arrows pointing outward (short roots at both ends):
/// an odd orthogonal block away from the zero node — replaced by the
/// isomorphic symplectic block in characteristic two — glued to the
/// extended rank-two symplectic block on the first edge.
fn plan_ct(n: usize, parity: Parity) -> StepsAndClaims {
    let big = match (n, parity) {
        (2, _) => take(BlockFamily::Sp, 4, sp4_variant(parity), vec![nd(1), nd(2)]),
        (_, Parity::Odd) => take(
            BlockFamily::SpinOdd,
            2 * n + 1,
            BlockVariant::Primary,
            span(1, n),
        ),
        (_, Parity::Even) => take(BlockFamily::Sp, 2 * n, BlockVariant::Primary, span(1, n)),
    };
    let small = take(
        BlockFamily::Sp,
        4,
        BlockVariant::Extended,
        vec![nd(0), nd(1)],
    );
    let big_label = if n == 2 {
        fin(FiniteType::C, 2)
    } else {
        fin(FiniteType::B, n)
    };
    let mut bridge_nodes = vec![nd(0)];
    bridge_nodes.extend(span(2, n));
    let bridge_components = match n {
        2 => vec![fa(1), fa(1)],
        3 => vec![fa(1), fin(FiniteType::C, 2)],
        _ => vec![fa(1), fin(FiniteType::B, n - 1)],
    };
    (
        vec![big, small, eliminate_sl(2, 1), bridge(4)],
        vec![
            claim("block support", span(1, n), vec![big_label]),
            claim("bridge support", bridge_nodes, bridge_components),
            claim("shared subgroup", vec![nd(1)], vec![fa(1)]),
        ],
    )
}

/// Chains with one inward and one outward arrow: an odd orthogonal block
/// (symplectic in characteristic two) covering everything but the last
/// node, glued to a rank-two symplectic block on the final edge.  At rank
/// two the shared copy comes out of the first block.
fn plan_cp(n: usize, parity: Parity) -> StepsAndClaims {
    let big = match (n, parity) {
        (2, _) => take(BlockFamily::Sp, 4, sp4_variant(parity), span(0, 1)),
        (_, Parity::Odd) => take(
            BlockFamily::SpinOdd,
            2 * n + 1,
            BlockVariant::Primary,
            span(0, n - 1),
        ),
        (_, Parity::Even) => take(
            BlockFamily::Sp,
            2 * n,
            BlockVariant::Primary,
            span(0, n - 1),
        ),
    };
    let small = take(
        BlockFamily::Sp,
        4,
        sp4_variant(parity),
        vec![nd(n - 1), nd(n)],
    );
    let from = if n == 2 { 0 } else { 1 };
    let big_label = if n == 2 {
        fin(FiniteType::C, 2)
    } else {
        fin(FiniteType::B, n)
    };
    let mut bridge_nodes = span(0, n - 2);
    bridge_nodes.push(nd(n));
    let bridge_components = match n {
        2 => vec![fa(1), fa(1)],
        3 => vec![fin(FiniteType::C, 2), fa(1)],
        _ => vec![fin(FiniteType::B, n - 1), fa(1)],
    };
    (
        vec![big, small, eliminate_sl(2, from), bridge(4)],
        vec![
            claim("block support", span(0, n - 1), vec![big_label]),
            claim("bridge support", bridge_nodes, bridge_components),
            claim("shared subgroup", vec![nd(n - 1)], vec![fa(1)]),
        ],
    )
}

/// Doubly forked chains.  Ranks four and five use one even orthogonal
/// block plus a rank-two linear block on one fork; higher ranks cover the
/// central path by a linear block and both forks by rank-two linear
/// blocks forming a product, which costs three extra gluing relations.
fn plan_d(n: usize, _parity: Parity) -> StepsAndClaims {
    if n <= 5 {
        let big = take(
            BlockFamily::SpinEven,
            2 * n,
            BlockVariant::Primary,
            span(1, n),
        );
        let small = take_sl(3, vec![nd(0), nd(2)]);
        let mut bridge_nodes = vec![nd(0), nd(1)];
        bridge_nodes.extend(span(3, n));
        let bridge_components = if n == 4 {
            vec![fa(1), fa(1), fa(1), fa(1)]
        } else {
            vec![fa(1), fa(1), fa(3)]
        };
        return (
            vec![big, small, eliminate_sl(2, 1), bridge(4)],
            vec![
                claim("block support", span(1, n), vec![fin(FiniteType::D, n)]),
                claim("bridge support", bridge_nodes, bridge_components),
                claim("shared subgroup", vec![nd(2)], vec![fa(1)]),
            ],
        );
    }
    let path = take_sl(n, span(1, n - 1));
    let fork_a = take_sl(3, vec![nd(0), nd(2)]);
    let fork_b = take_sl(3, vec![nd(n - 2), nd(n)]);
    let mut bridge_nodes = vec![nd(0), nd(1)];
    bridge_nodes.extend(span(3, n - 3));
    bridge_nodes.push(nd(n - 1));
    bridge_nodes.push(nd(n));
    let mut bridge_components = vec![fa(1), fa(1)];
    if n > 6 {
        bridge_components.push(fa(n - 5));
    } else {
        bridge_components.push(fa(1));
    }
    bridge_components.push(fa(1));
    bridge_components.push(fa(1));
    (
        vec![
            path,
            fork_a,
            fork_b,
            eliminate_sl(2, 1),
            eliminate_sl(2, 2),
            extra(3, "product-block relations"),
            bridge(4),
        ],
        vec![
            claim(
                "product support",
                vec![nd(0), nd(2), nd(n - 2), nd(n)],
                vec![fa(2), fa(2)],
            ),
            claim("bridge support", bridge_nodes, bridge_components),
            claim("shared subgroup", vec![nd(2)], vec![fa(1)]),
            claim("shared subgroup", vec![nd(n - 2)], vec![fa(1)]),
        ],
    )
}

/// The three simply-laced exceptional diagrams: one long linear block,
/// one short linear block through the branch node.
fn plan_e(family: AffineType, _parity: Parity) -> StepsAndClaims {
    let (long_nodes, short_nodes, bridge_nodes, bridge_components) = match family {
        AffineType::E6 => (
            vec![nd(1), nd(3), nd(4), nd(5), nd(6)],
            vec![nd(0), nd(2), nd(4)],
            vec![nd(0), nd(1), nd(2), nd(3), nd(5), nd(6)],
            vec![fa(2), fa(2), fa(2)],
        ),
        AffineType::E7 => (
            vec![nd(0), nd(1), nd(3), nd(4), nd(5), nd(6), nd(7)],
            vec![nd(2), nd(4)],
            vec![nd(0), nd(1), nd(2), nd(3), nd(5), nd(6), nd(7)],
            vec![fa(3), fa(1), fa(3)],
        ),
        AffineType::E8 => (
            vec![nd(0), nd(1), nd(3), nd(4), nd(5), nd(6), nd(7), nd(8)],
            vec![nd(2), nd(4)],
            vec![nd(0), nd(1), nd(2), nd(3), nd(5), nd(6), nd(7), nd(8)],
            vec![fa(5), fa(2), fa(1)],
        ),
        _ => unreachable!("plan_e only handles the exceptional E families"),
    };
    let long_rank = long_nodes.len();
    let short_rank = short_nodes.len();
    (
        vec![
            take_sl(long_rank + 1, long_nodes),
            take_sl(short_rank + 1, short_nodes),
            eliminate_sl(2, 1),
            bridge(4),
        ],
        vec![
            claim("bridge support", bridge_nodes, bridge_components),
            claim("shared subgroup", vec![nd(4)], vec![fa(1)]),
        ],
    )
}

/// The length-four chain with a middle double bond: three blocks (linear,
/// rank-two symplectic, rank-two linear) glued in a row; the two bridge
/// families overlap in one relation, leaving seven extra relations.
fn plan_f4(parity: Parity) -> StepsAndClaims {
    (
        vec![
            take_sl(4, span(0, 2)),
            take(BlockFamily::Sp, 4, sp4_variant(parity), vec![nd(2), nd(3)]),
            take_sl(3, vec![nd(3), nd(4)]),
            eliminate_sl(2, 0),
            eliminate_sl(2, 2),
            extra(7, "paired bridge relations"),
        ],
        vec![
            claim(
                "bridge support",
                vec![nd(0), nd(1), nd(3), nd(4)],
                vec![fa(2), fa(2)],
            ),
            claim(
                "bridge support",
                vec![nd(0), nd(1), nd(2), nd(4)],
                vec![fa(3), fa(1)],
            ),
            claim("shared subgroup", vec![nd(2)], vec![fa(1)]),
            claim("shared subgroup", vec![nd(3)], vec![fa(1)]),
        ],
    )
}

/// The two-edge chain with a triple bond: a rank-two linear block glued
/// to the full rank-two exceptional block.
fn plan_g2(_parity: Parity) -> StepsAndClaims {
    (
        vec![
            take_sl(3, vec![nd(0), nd(1)]),
            take(
                BlockFamily::G2,
                2,
                BlockVariant::Primary,
                vec![nd(1), nd(2)],
            ),
            eliminate_sl(2, 0),
            bridge(4),
        ],
        vec![
            claim("bridge support", vec![nd(0), nd(2)], vec![fa(1), fa(1)]),
            claim("shared subgroup", vec![nd(1)], vec![fa(1)]),
        ],
    )
}

/// Builds the assembly plan for an affine family at the given rank and
/// field, selecting blocks by field parity.  Excluded combinations error;
/// the rank-two cycle over tiny fields gets the fixed-size special plan.
pub fn plan_for(
    family: AffineType,
    rank: usize,
    q: &FieldParameter,
) -> Result<AssemblyPlan, AssemblyError> {
    let parity = q.parity();
    match check_admissibility(family, rank, q)? {
        Admissibility::Excluded(reason) => {
            return Err(AssemblyError::Excluded {
                family,
                rank,
                q: q.q,
                reason,
            });
        }
        Admissibility::SpecialA2Small => {
            return Ok(AssemblyPlan {
                target: AssemblyTarget::Affine { family, rank },
                parity,
                steps: vec![],
                claims: vec![],
                special: Some((3, 29)),
                expected: None,
            });
        }
        Admissibility::Admissible => {}
    }
    let (steps, claims) = match family {
        AffineType::A => plan_a(rank, parity),
        AffineType::B => plan_b(rank, parity, false),
        AffineType::Bt => plan_b(rank, parity, true),
        AffineType::C => plan_c(rank, parity),
        AffineType::Ct => plan_ct(rank, parity),
        AffineType::Cp => plan_cp(rank, parity),
        AffineType::D => plan_d(rank, parity),
        AffineType::E6 | AffineType::E7 | AffineType::E8 => plan_e(family, parity),
        AffineType::F4 | AffineType::Ft4 => plan_f4(parity),
        AffineType::G2 | AffineType::Gt2 => plan_g2(parity),
    };
    let plan = AssemblyPlan {
        target: AssemblyTarget::Affine { family, rank },
        parity,
        steps,
        claims,
        special: None,
        expected: None,
    };
    validate_plan(&plan, Catalog::standard())?;
    Ok(plan)
}

/// A plan consisting of a single catalogued block (identity assembly).
pub fn single_block_plan(
    family: BlockFamily,
    n: usize,
    variant: BlockVariant,
    q: &FieldParameter,
) -> Result<AssemblyPlan, AssemblyError> {
    let parity = q.parity();
    Catalog::standard().lookup(family, n, parity, variant)?;
    Ok(AssemblyPlan {
        target: AssemblyTarget::FiniteBlock { family, n },
        parity,
        steps: vec![take(family, n, variant, vec![])],
        claims: vec![],
        special: None,
        expected: None,
    })
}

/// Checks a plan's structural guarantees: every block's node set
/// classifies to the block's diagram type, the blocks cover the whole
/// diagram, every claimed subdiagram classifies as stated, and every
/// elimination removes a block the host block contains (per the catalog)
/// while another taken block still expresses it.
pub fn validate_plan(plan: &AssemblyPlan, catalog: &Catalog) -> Result<(), AssemblyError> {
    if plan.special.is_some() {
        return Ok(());
    }
    let diagram = match plan.target {
        AssemblyTarget::Affine { family, rank } => Some(Diagram::affine(family, rank)?),
        AssemblyTarget::FiniteBlock { .. } => None,
    };
    let mut taken: Vec<(BlockFamily, usize, BlockVariant)> = vec![];
    let mut covered: Vec<String> = vec![];
    for (ix, step) in plan.steps.iter().enumerate() {
        match step {
            AssemblyStep::TakeBlock {
                family,
                n,
                variant,
                nodes,
            } => {
                catalog
                    .lookup(*family, *n, plan.parity, *variant)
                    .map_err(|source| AssemblyError::CatalogAt { step: ix, source })?;
                if let (Some(diagram), false) = (&diagram, nodes.is_empty()) {
                    let keep: Vec<&str> = nodes.iter().map(String::as_str).collect();
                    let label = diagram.subdiagram(&keep)?.classify_single()?;
                    let want = block_component_labels(*family, *n, plan.parity)?;
                    if !want.contains(&label) {
                        return Err(AssemblyError::PlanInvariant(format!(
                            "block {} sits on nodes of type {label}, expected {}",
                            taken.len() + 1,
                            want.iter()
                                .map(ToString::to_string)
                                .collect::<Vec<_>>()
                                .join(" or ")
                        )));
                    }
                    covered.extend(nodes.iter().cloned());
                }
                taken.push((*family, *n, *variant));
            }
            AssemblyStep::EliminateShared {
                family,
                n,
                variant,
                from,
            } => {
                let shared = catalog
                    .lookup(*family, *n, plan.parity, *variant)
                    .map_err(|source| AssemblyError::CatalogAt { step: ix, source })?;
                let label = shared.block.label.ok_or_else(|| {
                    AssemblyError::PlanInvariant("shared block must be labelled".to_string())
                })?;
                let &(hf, hn, hv) = taken.get(*from).ok_or_else(|| {
                    AssemblyError::PlanInvariant(format!(
                        "elimination references block {} before it is taken",
                        from + 1
                    ))
                })?;
                let host = catalog
                    .lookup(hf, hn, plan.parity, hv)
                    .map_err(|source| AssemblyError::CatalogAt { step: ix, source })?;
                if !catalog.admits_elimination(host.block, label) {
                    return Err(AssemblyError::PlanInvariant(format!(
                        "block {} ({}) contains no {} copy to eliminate",
                        from + 1,
                        block_name(hf, hn, hv),
                        label
                    )));
                }
                if taken.len() < 2 {
                    return Err(AssemblyError::PlanInvariant(
                        "elimination needs another block expressing the shared copy".to_string(),
                    ));
                }
            }
            _ => {}
        }
    }
    if let Some(diagram) = &diagram {
        let mut all: Vec<&str> = diagram.nodes().iter().map(String::as_str).collect();
        all.sort_unstable();
        covered.sort_unstable();
        covered.dedup();
        if covered != all {
            return Err(AssemblyError::PlanInvariant(format!(
                "blocks cover nodes {{{}}}, diagram has {{{}}}",
                covered.join(" "),
                all.join(" ")
            )));
        }
        for c in &plan.claims {
            let keep: Vec<&str> = c.nodes.iter().map(String::as_str).collect();
            let found: Vec<DiagramLabel> = diagram
                .subdiagram(&keep)?
                .classify()?
                .into_iter()
                .map(|comp| comp.label)
                .collect();
            if found != c.components {
                return Err(AssemblyError::PlanInvariant(format!(
                    "{} on {{{}}} classifies as [{}], claimed [{}]",
                    c.role,
                    c.nodes.join(" "),
                    found
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", "),
                    c.components
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", "),
                )));
            }
        }
    }
    Ok(())
}

/// Runs a plan against the catalog, summing generator and relation
/// counts step by step.
pub fn execute_budget(
    plan: &AssemblyPlan,
    catalog: &Catalog,
) -> Result<PresentationBudget, AssemblyError> {
    let mut budget = PresentationBudget {
        generators: 0,
        relations: 0,
        trace: vec![],
        special: false,
    };
    if let Some((g, r)) = plan.special {
        budget.special = true;
        budget.push("dedicated small-field presentation", g as i64, r as i64);
        return Ok(budget);
    }
    let mut taken: Vec<(BlockFamily, usize, BlockVariant)> = vec![];
    for (ix, step) in plan.steps.iter().enumerate() {
        match step {
            AssemblyStep::TakeBlock {
                family,
                n,
                variant,
                nodes,
            } => {
                let hit = catalog
                    .lookup(*family, *n, plan.parity, *variant)
                    .map_err(|source| AssemblyError::CatalogAt { step: ix, source })?;
                let name = block_name(*family, *n, *variant);
                let label = hit
                    .block
                    .label
                    .map(|l| format!(" [{l}]"))
                    .unwrap_or_default();
                let place = if nodes.is_empty() {
                    String::new()
                } else {
                    format!(" on {{{}}}", nodes.join(" "))
                };
                budget.push(
                    format!("take {name} block{label}{place}"),
                    hit.block.generators as i64,
                    hit.block.relations as i64,
                );
                taken.push((*family, *n, *variant));
            }
            AssemblyStep::EliminateShared {
                family,
                n,
                variant,
                from,
            } => {
                let shared = catalog
                    .lookup(*family, *n, plan.parity, *variant)
                    .map_err(|source| AssemblyError::CatalogAt { step: ix, source })?;
                let label = shared.block.label.ok_or_else(|| {
                    AssemblyError::PlanInvariant("shared block must be labelled".to_string())
                })?;
                let &(hf, hn, hv) = taken.get(*from).ok_or_else(|| {
                    AssemblyError::PlanInvariant(format!(
                        "elimination references block {} before it is taken",
                        from + 1
                    ))
                })?;
                let host = catalog
                    .lookup(hf, hn, plan.parity, hv)
                    .map_err(|source| AssemblyError::CatalogAt { step: ix, source })?;
                if !catalog.admits_elimination(host.block, label) {
                    return Err(AssemblyError::PlanInvariant(format!(
                        "block {} ({}) contains no {} copy to eliminate",
                        from + 1,
                        block_name(hf, hn, hv),
                        label
                    )));
                }
                budget.push(
                    format!(
                        "eliminate shared {} copy [{}] inside block {}",
                        block_name(*family, *n, *variant),
                        label,
                        from + 1
                    ),
                    -(shared.block.generators as i64),
                    -(shared.block.relations as i64),
                );
            }
            AssemblyStep::BridgeCommutators { count } => {
                budget.push(
                    format!("add {count} commutator bridge relations"),
                    0,
                    *count as i64,
                );
            }
            AssemblyStep::Identification { count } => {
                budget.push(
                    format!("identify the overlap copies ({count} relations)"),
                    0,
                    *count as i64,
                );
            }
            AssemblyStep::ExtraBridge { count, note } => {
                budget.push(format!("add {count} {note}"), 0, *count as i64);
            }
            AssemblyStep::KillCenterGenerator => {
                budget.push("kill the extra central generator (one relation)", 0, 1);
            }
            AssemblyStep::TwoGeneratorReduce => {
                let dgens = 2 - budget.generators as i64;
                budget.push(
                    "reduce to a two-element generating set (two relations)",
                    dgens,
                    2,
                );
            }
        }
    }
    if let Some((g, r)) = plan.expected {
        if budget.sizes() != (g, r) {
            return Err(AssemblyError::PlanInvariant(format!(
                "budget ({}, {}) differs from expected ({g}, {r})",
                budget.generators, budget.relations
            )));
        }
    }
    Ok(budget)
}

/// Budget for the bounded presentation of an affine family: plans and
/// executes in one call.
pub fn affine_sizes(
    family: AffineType,
    rank: usize,
    q: &FieldParameter,
) -> Result<PresentationBudget, AssemblyError> {
    let plan = plan_for(family, rank, q)?;
    execute_budget(&plan, Catalog::standard())
}

/// Affine budget after passing to a two-element generating set (two extra
/// relations).  The small-field special presentation is returned as is.
pub fn two_generator_sizes(
    family: AffineType,
    rank: usize,
    q: &FieldParameter,
) -> Result<PresentationBudget, AssemblyError> {
    let mut budget = affine_sizes(family, rank, q)?;
    if budget.special {
        return Ok(budget);
    }
    let dgens = 2 - budget.generators as i64;
    budget.push(
        "reduce to a two-element generating set (two relations)",
        dgens,
        2,
    );
    Ok(budget)
}

/// Budget for the corresponding group over the Laurent-polynomial ring:
/// one relation kills the extra central generator, then the generating
/// set is reduced to two elements.
pub fn loop_group_sizes(
    family: AffineType,
    rank: usize,
    q: &FieldParameter,
) -> Result<PresentationBudget, AssemblyError> {
    let mut budget = affine_sizes(family, rank, q)?;
    budget.push("kill the extra central generator (one relation)", 0, 1);
    if !budget.special {
        let dgens = 2 - budget.generators as i64;
        budget.push(
            "reduce to a two-element generating set (two relations)",
            dgens,
            2,
        );
    }
    Ok(budget)
}

/// Budget for the profinite completion: the Laurent-polynomial counts
/// transfer unchanged, except for one extra relation on the small-field
/// special path.
pub fn profinite_sizes(
    family: AffineType,
    rank: usize,
    q: &FieldParameter,
) -> Result<PresentationBudget, AssemblyError> {
    let mut budget = loop_group_sizes(family, rank, q)?;
    if budget.special {
        budget.push("profinite completion: one extra relation", 0, 1);
    } else {
        budget.push("transfer the counts to the profinite completion", 0, 0);
    }
    Ok(budget)
}

/// Which classical family `spin_presentation` derives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalKind {
    /// Spin groups of even dimension `2n`, `n >= 4`.
    SpinEvenDim,
    /// Spin groups of odd dimension `2n+1`, `n >= 3`.
    SpinOddDim,
    /// Symplectic groups of degree `2n`, `n >= 3`.
    Symplectic,
}

/// Derives the presentation budget of a higher-rank classical group from
/// linear blocks: a linear block on the long subdiagram glued to a small
/// tail block (rank-two linear for even dimensions, rank-two symplectic
/// otherwise), plus the four standard bridge relations.  The resulting
/// sizes coincide with the derived rows stored in the catalog; in
/// characteristic two the odd-dimension spin budget equals the symplectic
/// one.
pub fn spin_presentation(
    kind: ClassicalKind,
    n: usize,
    q: &FieldParameter,
) -> Result<PresentationBudget, AssemblyError> {
    let (kind_name, min) = match kind {
        ClassicalKind::SpinEvenDim => ("even-dimension spin groups", 4),
        ClassicalKind::SpinOddDim => ("odd-dimension spin groups", 3),
        ClassicalKind::Symplectic => ("symplectic groups", 3),
    };
    if n < min {
        return Err(AssemblyError::RankOutOfRange { kind: kind_name, n });
    }
    let parity = q.parity();
    let (target_family, target_n, steps) = match kind {
        ClassicalKind::SpinEvenDim => (
            BlockFamily::SpinEven,
            2 * n,
            vec![
                take_sl(n, vec![]),
                take_sl(3, vec![]),
                eliminate_sl(2, 1),
                bridge(4),
            ],
        ),
        ClassicalKind::SpinOddDim | ClassicalKind::Symplectic => {
            let family = if kind == ClassicalKind::Symplectic {
                BlockFamily::Sp
            } else {
                BlockFamily::SpinOdd
            };
            let dim = if kind == ClassicalKind::Symplectic {
                2 * n
            } else {
                2 * n + 1
            };
            (
                family,
                dim,
                vec![
                    take_sl(n, vec![]),
                    take(BlockFamily::Sp, 4, sp4_variant(parity), vec![]),
                    eliminate_sl(2, 0),
                    bridge(4),
                ],
            )
        }
    };
    let plan = AssemblyPlan {
        target: AssemblyTarget::FiniteBlock {
            family: target_family,
            n: target_n,
        },
        parity,
        steps,
        claims: vec![],
        special: None,
        expected: None,
    };
    execute_budget(&plan, Catalog::standard())
}

/// Assembles an explicit presentation from loaded relator data.  A
/// single-block plan returns the block's presentation verbatim; plans
/// with eliminations or bridges additionally need embedding and bridge
/// words, which the data format does not carry, so every missing piece is
/// reported in one error.
pub fn execute_explicit(
    plan: &AssemblyPlan,
    catalog: &Catalog,
    provided: &[LoadedBlock],
) -> Result<Presentation, AssemblyError> {
    if plan.special.is_some() {
        return Err(AssemblyError::ExplicitUnavailable {
            missing: vec!["relators of the dedicated small-field presentation".to_string()],
        });
    }
    let mut missing: Vec<String> = vec![];
    let mut first_block: Option<Presentation> = None;
    let mut take_count = 0usize;
    for (ix, step) in plan.steps.iter().enumerate() {
        match step {
            AssemblyStep::TakeBlock {
                family, n, variant, ..
            } => {
                take_count += 1;
                let hit = catalog
                    .lookup(*family, *n, plan.parity, *variant)
                    .map_err(|source| AssemblyError::CatalogAt { step: ix, source })?;
                let name = block_name(*family, *n, *variant);
                let found = hit.block.label.and_then(|label| {
                    provided.iter().find(|b| {
                        b.data.label == label
                            && b.data.family == *family
                            && b.data.n == *n
                            && b.field.parity() == plan.parity
                    })
                });
                match found {
                    Some(b) => {
                        if first_block.is_none() {
                            first_block = Some(b.data.presentation.clone());
                        }
                    }
                    None => {
                        let label = hit
                            .block
                            .label
                            .map(|l| format!(" [{l}]"))
                            .unwrap_or_default();
                        missing.push(format!("relator data for the {name} block{label}"));
                    }
                }
            }
            AssemblyStep::EliminateShared {
                family,
                n,
                variant,
                from,
            } => {
                missing.push(format!(
                    "embedding words for the shared {} copy inside block {}",
                    block_name(*family, *n, *variant),
                    from + 1
                ));
            }
            AssemblyStep::BridgeCommutators { count } => {
                missing.push(format!("{count} commutator bridge relator words"));
            }
            AssemblyStep::Identification { count } => {
                missing.push(format!("{count} identification relator words"));
            }
            AssemblyStep::ExtraBridge { count, note } => {
                missing.push(format!("relator words for {count} {note}"));
            }
            AssemblyStep::KillCenterGenerator | AssemblyStep::TwoGeneratorReduce => {
                missing.push("relator words for the derived reduction step".to_string());
            }
        }
    }
    if missing.is_empty() && take_count == 1 {
        if let Some(p) = first_block {
            return Ok(p);
        }
    }
    Err(AssemblyError::ExplicitUnavailable { missing })
}
