//! The catalog of presentation blocks for finite quasisimple groups.
//!
//! Each row records, for one family of groups (special linear, symplectic,
//! spin, or G2, over a regime of matrix sizes), the exact generator and
//! relation counts of a distinguished presentation, for odd and for even
//! field size separately.  Labelled blocks (`s1`..`s14` for odd, `r1`..
//! `r14` for even) carry a containment column: the labelled sub-blocks
//! that sit inside them as literal sub-presentations, which is what makes
//! shared-subgroup elimination possible during assembly.
//!
//! Some rows exist in one parity only; looking up the missing side is a
//! hard error ([`CatalogError::Miss`]), which assembly plans must avoid by
//! construction.  A `+` suffix in a row display marks the extended variant
//! of a block (containing both a rank-one and a rank-two sub-block).
//!
//! Sizes here are frozen data: the assembly layer recomputes derived rows
//! (symplectic and spin families) from smaller blocks and cross-checks
//! against this table.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldParameter, Parity};
use crate::presentation::Presentation;

/// Errors from catalog lookups and relator-data loading.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    /// No block covers the requested family/size/parity/variant.
    #[error("no catalog block for {family}({n}, q {parity}){}", if *variant == BlockVariant::Extended { " extended variant" } else { "" })]
    Miss {
        family: BlockFamily,
        n: usize,
        parity: Parity,
        variant: BlockVariant,
    },
    /// A label that does not exist in the catalog.
    #[error("unknown block label {0}")]
    UnknownLabel(String),
    /// Relator data inconsistent with the catalog row it claims to realize.
    #[error("relator data mismatch: {0}")]
    DataMismatch(String),
    /// Malformed relator data file.
    #[error("invalid relator data: {0}")]
    InvalidData(String),
}

/// The block families of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockFamily {
    /// Special linear groups SL(n, q); `n` is the matrix size.
    #[serde(rename = "SL")]
    Sl,
    /// Symplectic groups Sp(n, q); `n` is the (even) matrix size.
    #[serde(rename = "Sp")]
    Sp,
    /// Spin groups of odd-dimensional quadratic spaces, Spin(n, q), n odd.
    SpinOdd,
    /// Spin groups of even-dimensional (plus-type) spaces, Spin(n, q), n even.
    SpinEven,
    /// The exceptional groups G2(q).
    G2,
}

impl std::fmt::Display for BlockFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BlockFamily::Sl => "SL",
            BlockFamily::Sp => "Sp",
            BlockFamily::SpinOdd => "SpinOdd",
            BlockFamily::SpinEven => "SpinEven",
            BlockFamily::G2 => "G2",
        };
        write!(f, "{s}")
    }
}

/// Which matrix sizes a catalog row covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeRegime {
    Exact(usize),
    Range(usize, usize),
    AtLeast(usize),
}

impl SizeRegime {
    pub fn contains(&self, n: usize) -> bool {
        match *self {
            SizeRegime::Exact(m) => n == m,
            SizeRegime::Range(lo, hi) => lo <= n && n <= hi,
            SizeRegime::AtLeast(lo) => n >= lo,
        }
    }

    /// A representative size inside the regime.
    pub fn representative(&self) -> usize {
        match *self {
            SizeRegime::Exact(m) => m,
            SizeRegime::Range(lo, _) => lo,
            SizeRegime::AtLeast(lo) => lo,
        }
    }
}

/// Plain or extended block variant.  The extended variant of a row
/// contains a rank-two sub-block in addition to the rank-one one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockVariant {
    Primary,
    Extended,
}

/// One group family covered by a catalog row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupSpec {
    pub family: BlockFamily,
    pub sizes: SizeRegime,
    pub variant: BlockVariant,
}

/// The per-parity payload of a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogBlock {
    /// Short label (`s1`..`s14`, `r1`..`r14`) when the block is one of the
    /// named building blocks.
    pub label: Option<&'static str>,
    pub generators: usize,
    pub relations: usize,
    /// Labelled sub-blocks contained as literal sub-presentations.
    /// Annotations in parentheses mark how: `(short)` the short-root copy,
    /// `(x2)` two distinct copies.
    pub contains: &'static [&'static str],
    /// Whether the block is known to contain a rank-one (SL(2)) sub-block
    /// by construction even when the printed containment column is empty.
    pub structural_sl2: bool,
}

/// A catalog row: display name, the group families it covers, and the
/// odd/even payloads (either may be absent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogRow {
    pub display: &'static str,
    pub groups: Vec<GroupSpec>,
    pub odd: Option<CatalogBlock>,
    pub even: Option<CatalogBlock>,
}

impl CatalogRow {
    pub fn block(&self, parity: Parity) -> Option<&CatalogBlock> {
        match parity {
            Parity::Odd => self.odd.as_ref(),
            Parity::Even => self.even.as_ref(),
        }
    }
}

/// A successful lookup.
#[derive(Debug, Clone, Copy)]
pub struct BlockHit<'a> {
    pub row: &'a CatalogRow,
    pub block: &'a CatalogBlock,
    pub parity: Parity,
}

/// The block catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    rows: Vec<CatalogRow>,
}

fn block(
    label: Option<&'static str>,
    generators: usize,
    relations: usize,
    contains: &'static [&'static str],
    structural_sl2: bool,
) -> Option<CatalogBlock> {
    Some(CatalogBlock {
        label,
        generators,
        relations,
        contains,
        structural_sl2,
    })
}

fn spec(family: BlockFamily, sizes: SizeRegime, variant: BlockVariant) -> GroupSpec {
    GroupSpec {
        family,
        sizes,
        variant,
    }
}

fn build_standard() -> Catalog {
    use BlockFamily::*;
    use BlockVariant::{Extended, Primary};
    use SizeRegime::*;
    let rows = vec![
        CatalogRow {
            display: "SL(2,q)",
            groups: vec![spec(Sl, Exact(2), Primary)],
            odd: block(Some("s1"), 3, 9, &[], false),
            even: block(Some("r1"), 3, 5, &[], false),
        },
        CatalogRow {
            display: "SL(3,q)",
            groups: vec![spec(Sl, Exact(3), Primary)],
            odd: block(Some("s2"), 4, 14, &["s1"], false),
            even: block(Some("r2"), 4, 10, &["r1"], false),
        },
        CatalogRow {
            display: "SL(4,q)",
            groups: vec![spec(Sl, Exact(4), Primary)],
            odd: block(Some("s3"), 5, 20, &["s1"], false),
            even: block(Some("r3"), 5, 16, &["r1"], false),
        },
        CatalogRow {
            display: "SL(4,q)+",
            groups: vec![spec(Sl, Exact(4), Extended)],
            odd: block(Some("s4"), 6, 21, &["s1", "s2"], false),
            even: block(Some("r4"), 6, 17, &["r1", "r2"], false),
        },
        CatalogRow {
            display: "SL(n,q), 5<=n<=8",
            groups: vec![spec(Sl, Range(5, 8), Primary)],
            odd: block(Some("s5"), 5, 21, &["s1"], false),
            even: block(Some("r5"), 5, 17, &["r1"], false),
        },
        CatalogRow {
            display: "SL(n,q)+, 5<=n<=8",
            groups: vec![spec(Sl, Range(5, 8), Extended)],
            odd: block(Some("s6"), 6, 22, &["s1", "s2"], false),
            even: block(Some("r6"), 6, 18, &["r1", "r2"], false),
        },
        CatalogRow {
            display: "SL(n,q), n>=9",
            groups: vec![spec(Sl, AtLeast(9), Primary)],
            odd: block(Some("s7"), 6, 25, &["s1"], false),
            even: block(Some("r7"), 6, 21, &["r1"], false),
        },
        CatalogRow {
            display: "SL(n,q)+, n>=9",
            groups: vec![spec(Sl, AtLeast(9), Extended)],
            odd: block(Some("s8"), 7, 26, &["s1", "s2"], false),
            even: block(Some("r8"), 7, 22, &["r1", "r2"], false),
        },
        CatalogRow {
            display: "Sp(4,q)",
            groups: vec![spec(Sp, Exact(4), Primary)],
            odd: block(Some("s9"), 5, 27, &["s1(short)"], false),
            even: None,
        },
        CatalogRow {
            display: "Sp(4,q)+",
            groups: vec![spec(Sp, Exact(4), Extended)],
            odd: block(Some("s10"), 6, 28, &["s1(x2)"], false),
            even: block(Some("r10"), 6, 20, &["r1(x2)"], false),
        },
        CatalogRow {
            display: "Sp(6,q), Spin(7,q)",
            groups: vec![
                spec(Sp, Exact(6), Primary),
                spec(SpinOdd, Exact(7), Primary),
            ],
            odd: block(None, 6, 36, &[], true),
            even: block(None, 7, 29, &[], true),
        },
        CatalogRow {
            display: "Sp(8,q), Spin(9,q)",
            groups: vec![
                spec(Sp, Exact(8), Primary),
                spec(SpinOdd, Exact(9), Primary),
            ],
            odd: block(None, 7, 42, &[], true),
            even: block(None, 8, 35, &[], true),
        },
        CatalogRow {
            display: "Sp(2n,q), 5<=n<=8",
            groups: vec![spec(Sp, Range(10, 16), Primary)],
            odd: block(None, 7, 43, &[], true),
            even: block(None, 8, 36, &[], true),
        },
        CatalogRow {
            display: "Spin(2n+1,q), 5<=n<=8",
            groups: vec![spec(SpinOdd, Range(11, 17), Primary)],
            odd: block(None, 7, 43, &[], true),
            even: None,
        },
        CatalogRow {
            display: "Sp(2n,q), n>=9",
            groups: vec![spec(Sp, AtLeast(18), Primary)],
            odd: block(Some("s11"), 8, 47, &[], true),
            even: block(Some("r11"), 9, 40, &[], true),
        },
        CatalogRow {
            display: "Spin(2n+1,q), n>=9",
            groups: vec![spec(SpinOdd, AtLeast(19), Primary)],
            odd: block(Some("s12"), 8, 47, &[], true),
            even: None,
        },
        CatalogRow {
            display: "Spin(8,q)",
            groups: vec![spec(SpinEven, Exact(8), Primary)],
            odd: block(None, 6, 29, &[], true),
            even: block(None, 6, 25, &[], true),
        },
        CatalogRow {
            display: "Spin(2n,q), 5<=n<=8",
            groups: vec![spec(SpinEven, Range(10, 16), Primary)],
            odd: block(None, 6, 30, &[], true),
            even: block(None, 6, 26, &[], true),
        },
        CatalogRow {
            display: "Spin(2n,q), n>=9",
            groups: vec![spec(SpinEven, AtLeast(18), Primary)],
            odd: block(Some("s13"), 7, 34, &["s1"], true),
            even: block(Some("r13"), 7, 30, &["r1"], true),
        },
        CatalogRow {
            display: "G2(q)",
            groups: vec![spec(G2, Exact(2), Primary)],
            odd: block(Some("s14"), 6, 31, &["s1(x2)"], false),
            even: block(Some("r14"), 6, 23, &["r1(x2)"], false),
        },
    ];
    Catalog { rows }
}

/// Strips a containment annotation: `s1(short)` and `s1(x2)` mean `s1`.
pub fn base_label(entry: &str) -> &str {
    entry.split('(').next().unwrap_or(entry)
}

impl Catalog {
    /// The standard catalog (built once).
    pub fn standard() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(build_standard)
    }

    pub fn rows(&self) -> &[CatalogRow] {
        &self.rows
    }

    /// Finds the block covering `family(n)` over a field of the given
    /// parity, in the requested variant.
    pub fn lookup(
        &self,
        family: BlockFamily,
        n: usize,
        parity: Parity,
        variant: BlockVariant,
    ) -> Result<BlockHit<'_>, CatalogError> {
        for row in &self.rows {
            let applies = row
                .groups
                .iter()
                .any(|g| g.family == family && g.variant == variant && g.sizes.contains(n));
            if !applies {
                continue;
            }
            return row
                .block(parity)
                .map(|block| BlockHit { row, block, parity })
                .ok_or(CatalogError::Miss {
                    family,
                    n,
                    parity,
                    variant,
                });
        }
        Err(CatalogError::Miss {
            family,
            n,
            parity,
            variant,
        })
    }

    /// Finds a block by its label.
    pub fn block_by_label(&self, label: &str) -> Result<(BlockHit<'_>, Parity), CatalogError> {
        for row in &self.rows {
            for (parity, block) in [(Parity::Odd, &row.odd), (Parity::Even, &row.even)] {
                if let Some(b) = block {
                    if b.label == Some(label) {
                        return Ok((
                            BlockHit {
                                row,
                                block: b,
                                parity,
                            },
                            parity,
                        ));
                    }
                }
            }
        }
        Err(CatalogError::UnknownLabel(label.to_string()))
    }

    /// The transitive containment closure of a labelled block, sorted.
    pub fn containment_chain(&self, label: &str) -> Result<Vec<String>, CatalogError> {
        let mut out: Vec<String> = vec![];
        let mut queue = vec![label.to_string()];
        while let Some(l) = queue.pop() {
            let (hit, _) = self.block_by_label(&l)?;
            for entry in hit.block.contains {
                let base = base_label(entry).to_string();
                if !out.contains(&base) {
                    out.push(base.clone());
                    queue.push(base);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Whether `shared_label` may be eliminated out of `block`: it must be
    /// listed in the containment column, or be a rank-one block inside a
    /// derived symplectic/spin row (structural containment).
    pub fn admits_elimination(&self, block: &CatalogBlock, shared_label: &str) -> bool {
        if block
            .contains
            .iter()
            .any(|entry| base_label(entry) == shared_label)
        {
            return true;
        }
        block.structural_sl2 && matches!(shared_label, "s1" | "r1")
    }

    /// One line per row: `display | odd side | even side`, each side being
    /// `generators relations label containment`, `-` for absences.
    pub fn dump(&self) -> String {
        let side = |b: &Option<CatalogBlock>| -> String {
            match b {
                None => "- - - -".to_string(),
                Some(b) => {
                    let label = b.label.unwrap_or("-");
                    let contains = if b.contains.is_empty() {
                        "-".to_string()
                    } else {
                        b.contains.join(",")
                    };
                    format!("{} {} {} {}", b.generators, b.relations, label, contains)
                }
            }
        };
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&format!(
                "{} | {} | {}\n",
                row.display,
                side(&row.odd),
                side(&row.even)
            ));
        }
        out
    }
}

/// The order of SL(n, q): `q^(n(n-1)/2) * prod_{i=2..n} (q^i - 1)`.
pub fn special_linear_order(n: usize, q: u64) -> Option<u128> {
    let q = q as u128;
    let mut order: u128 = 1;
    for _ in 0..(n * (n - 1) / 2) {
        order = order.checked_mul(q)?;
    }
    let mut qi: u128 = q;
    for _ in 2..=n {
        qi = qi.checked_mul(q)?;
        order = order.checked_mul(qi.checked_sub(1)?)?;
    }
    Some(order)
}

/// A relator data file: an explicit presentation realizing one labelled
/// catalog block over a specific field.
#[derive(Debug, Clone, Deserialize)]
pub struct RelatorData {
    pub family: BlockFamily,
    pub n: usize,
    pub q: u64,
    pub label: String,
    pub presentation: Presentation,
}

/// A validated explicit block.
#[derive(Debug, Clone)]
pub struct LoadedBlock {
    pub data: RelatorData,
    pub field: FieldParameter,
}

/// Parses and validates a relator data file against the catalog: the
/// label must exist on the parity side of `q`, belong to a row covering
/// `family(n)`, and the presentation must have exactly the catalogued
/// generator and relation counts.
pub fn load_explicit_relators(json: &str, catalog: &Catalog) -> Result<LoadedBlock, CatalogError> {
    let data: RelatorData =
        serde_json::from_str(json).map_err(|e| CatalogError::InvalidData(e.to_string()))?;
    let field =
        FieldParameter::new(data.q).map_err(|e| CatalogError::InvalidData(e.to_string()))?;
    let (hit, parity) = catalog.block_by_label(&data.label)?;
    if parity != field.parity() {
        return Err(CatalogError::DataMismatch(format!(
            "label {} is for q {} but q = {} is {}",
            data.label,
            parity,
            data.q,
            field.parity()
        )));
    }
    let covered = hit
        .row
        .groups
        .iter()
        .any(|g| g.family == data.family && g.sizes.contains(data.n));
    if !covered {
        return Err(CatalogError::DataMismatch(format!(
            "label {} does not cover {}({})",
            data.label, data.family, data.n
        )));
    }
    let (gens, rels) = data.presentation.counts();
    if gens != hit.block.generators || rels != hit.block.relations {
        return Err(CatalogError::DataMismatch(format!(
            "presentation has ({gens}, {rels}) but block {} requires ({}, {})",
            data.label, hit.block.generators, hit.block.relations
        )));
    }
    Ok(LoadedBlock { data, field })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups_hit_expected_rows() {
        let c = Catalog::standard();
        let hit = c
            .lookup(BlockFamily::Sl, 2, Parity::Odd, BlockVariant::Primary)
            .unwrap();
        assert_eq!((hit.block.generators, hit.block.relations), (3, 9));
        assert_eq!(hit.block.label, Some("s1"));

        let hit = c
            .lookup(BlockFamily::Sl, 6, Parity::Even, BlockVariant::Extended)
            .unwrap();
        assert_eq!((hit.block.generators, hit.block.relations), (6, 18));
        assert_eq!(hit.block.label, Some("r6"));

        let hit = c
            .lookup(BlockFamily::Sp, 12, Parity::Even, BlockVariant::Primary)
            .unwrap();
        assert_eq!((hit.block.generators, hit.block.relations), (8, 36));

        // The odd spin groups share rows with the symplectic groups where
        // the table lists both.
        let hit = c
            .lookup(BlockFamily::SpinOdd, 7, Parity::Even, BlockVariant::Primary)
            .unwrap();
        assert_eq!((hit.block.generators, hit.block.relations), (7, 29));

        let hit = c
            .lookup(BlockFamily::G2, 2, Parity::Odd, BlockVariant::Primary)
            .unwrap();
        assert_eq!((hit.block.generators, hit.block.relations), (6, 31));
    }

    #[test]
    fn missing_parity_sides_are_misses() {
        let c = Catalog::standard();
        let miss = c
            .lookup(BlockFamily::Sp, 4, Parity::Even, BlockVariant::Primary)
            .unwrap_err();
        assert_eq!(
            miss,
            CatalogError::Miss {
                family: BlockFamily::Sp,
                n: 4,
                parity: Parity::Even,
                variant: BlockVariant::Primary,
            }
        );
        assert!(c
            .lookup(
                BlockFamily::SpinOdd,
                11,
                Parity::Even,
                BlockVariant::Primary
            )
            .is_err());
        assert!(c
            .lookup(
                BlockFamily::SpinOdd,
                19,
                Parity::Even,
                BlockVariant::Primary
            )
            .is_err());
        // Sizes not covered by any regime.
        assert!(c
            .lookup(BlockFamily::Sp, 5, Parity::Odd, BlockVariant::Primary)
            .is_err());
        assert!(c
            .lookup(BlockFamily::SpinEven, 9, Parity::Odd, BlockVariant::Primary)
            .is_err());
    }

    #[test]
    fn even_simply_laced_blocks_save_four_relations() {
        let c = Catalog::standard();
        for (family, n) in [
            (BlockFamily::Sl, 2),
            (BlockFamily::Sl, 3),
            (BlockFamily::Sl, 4),
            (BlockFamily::Sl, 6),
            (BlockFamily::Sl, 11),
            (BlockFamily::SpinEven, 8),
            (BlockFamily::SpinEven, 12),
            (BlockFamily::SpinEven, 20),
        ] {
            let odd = c
                .lookup(family, n, Parity::Odd, BlockVariant::Primary)
                .unwrap();
            let even = c
                .lookup(family, n, Parity::Even, BlockVariant::Primary)
                .unwrap();
            assert_eq!(odd.block.generators, even.block.generators, "{family}({n})");
            assert_eq!(
                odd.block.relations,
                even.block.relations + 4,
                "{family}({n})"
            );
        }
    }

    #[test]
    fn containment_chains() {
        let c = Catalog::standard();
        assert_eq!(c.containment_chain("s1").unwrap(), Vec::<String>::new());
        assert_eq!(c.containment_chain("s2").unwrap(), vec!["s1"]);
        assert_eq!(c.containment_chain("s8").unwrap(), vec!["s1", "s2"]);
        assert_eq!(c.containment_chain("s13").unwrap(), vec!["s1"]);
        assert_eq!(c.containment_chain("r10").unwrap(), vec!["r1"]);
        assert!(c.containment_chain("s99").is_err());
    }

    #[test]
    fn elimination_admissibility() {
        let c = Catalog::standard();
        let s2 = c.block_by_label("s2").unwrap().0.block;
        assert!(c.admits_elimination(s2, "s1"));
        assert!(!c.admits_elimination(s2, "s2"));
        let s9 = c.block_by_label("s9").unwrap().0.block;
        assert!(c.admits_elimination(s9, "s1"), "annotated containment");
        // Derived spin rows contain a rank-one block structurally.
        let spin8 = c
            .lookup(BlockFamily::SpinEven, 8, Parity::Odd, BlockVariant::Primary)
            .unwrap();
        assert!(c.admits_elimination(spin8.block, "s1"));
        assert!(!c.admits_elimination(spin8.block, "s2"));
    }

    #[test]
    fn dump_has_twenty_rows_and_stable_shape() {
        let c = Catalog::standard();
        let dump = c.dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines.len(), 20);
        assert_eq!(lines[0], "SL(2,q) | 3 9 s1 - | 3 5 r1 -");
        assert_eq!(lines[8], "Sp(4,q) | 5 27 s9 s1(short) | - - - -");
        assert_eq!(lines[19], "G2(q) | 6 31 s14 s1(x2) | 6 23 r14 r1(x2)");
    }

    #[test]
    fn special_linear_orders() {
        assert_eq!(special_linear_order(2, 2), Some(6));
        assert_eq!(special_linear_order(2, 3), Some(24));
        assert_eq!(special_linear_order(2, 5), Some(120));
        assert_eq!(special_linear_order(3, 2), Some(168));
        assert_eq!(special_linear_order(3, 3), Some(5616));
    }

    #[test]
    fn relator_data_validation() {
        let c = Catalog::standard();
        let good = r#"{
            "family": "SL", "n": 2, "q": 2, "label": "r1",
            "presentation": {
                "generators": ["a", "b", "c"],
                "relators": [
                    [["a",1],["a",1]],
                    [["b",1],["b",1],["b",1]],
                    [["a",1],["b",1],["a",1],["b",1]],
                    [["c",1],["b",-1],["a",-1]],
                    [["c",1],["c",1]]
                ]
            }
        }"#;
        let loaded = load_explicit_relators(good, c).unwrap();
        assert_eq!(loaded.data.presentation.counts(), (3, 5));
        assert_eq!(loaded.field.parity(), Parity::Even);

        // Wrong parity for the label.
        let odd_q = good.replace("\"q\": 2", "\"q\": 3");
        assert!(matches!(
            load_explicit_relators(&odd_q, c),
            Err(CatalogError::DataMismatch(_))
        ));

        // Wrong counts.
        let short = good.replace(",\n                    [[\"c\",1],[\"c\",1]]", "");
        assert!(matches!(
            load_explicit_relators(&short, c),
            Err(CatalogError::DataMismatch(_))
        ));

        // Unknown label.
        let bad_label = good.replace("\"r1\"", "\"r99\"");
        assert!(matches!(
            load_explicit_relators(&bad_label, c),
            Err(CatalogError::UnknownLabel(_))
        ));

        // Non prime power q.
        let bad_q = good.replace("\"q\": 2", "\"q\": 6");
        assert!(matches!(
            load_explicit_relators(&bad_q, c),
            Err(CatalogError::InvalidData(_))
        ));
    }
}
