//! Values copied verbatim from the printed source: the two summary tables,
//! the running list of Z4 chain values, and the headline claim for
//! h(D16 x C16). These are adjudication inputs, not ground truth; several
//! disagree with the closed forms, with each other, and with the lattice
//! oracle.

use crate::formulas::FamilyId;

/// One printed value attached to a (family, parameter) cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub label: &'static str,
    pub value: u64,
}

/// Printed table of h(D8 x C_{2^m}) for m = 3..10. The m = 6 entry is odd,
/// which already contradicts the evenness forced by the doubling recurrence.
pub const D8_C2M_TABLE: [(i64, u64); 8] = [
    (3, 5376),
    (4, 10728),
    (5, 21506),
    (6, 43347),
    (7, 86536),
    (8, 173320),
    (9, 347098),
    (10, 694910),
];

/// Printed table of h(D16 x C_{2^n}) for n = 4..6.
pub const D16_C2N_TABLE: [(i64, u64); 3] = [(4, 20200), (5, 375648), (6, 3893800)];

/// Printed headline claim for h(D16 x C16), stated alongside a derivation
/// whose own bracketed sum totals 8846, not the printed 15346.
pub const D16_C16_CLAIM: u64 = 61384;

/// Printed list of h(Z4 x Z_{2^n}) values for n = 5..8.
pub const Z4_CHAIN_LIST: [(i64, u64); 4] = [(5, 1536), (6, 4096), (7, 10496), (8, 26112)];

/// Every printed value attached to this family at this parameter.
pub fn fixtures_for(family: FamilyId, n: i64) -> Vec<Fixture> {
    let mut out = Vec::new();
    let mut table = |rows: &[(i64, u64)], label: &'static str| {
        if let Some(&(_, v)) = rows.iter().find(|&&(m, _)| m == n) {
            out.push(Fixture { label, value: v });
        }
    };
    match family {
        FamilyId::D8C2m => table(&D8_C2M_TABLE, "printed table"),
        FamilyId::D16C2n => {
            table(&D16_C2N_TABLE, "printed table");
            if n == 4 {
                out.push(Fixture {
                    label: "printed headline claim",
                    value: D16_C16_CLAIM,
                });
            }
        }
        FamilyId::Z4Chain => table(&Z4_CHAIN_LIST, "printed list"),
        _ => {}
    }
    out
}
