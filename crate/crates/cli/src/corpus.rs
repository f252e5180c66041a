//! Named verification corpora. `smoke` stays at order <= 64 and touches every
//! formula family; `paper-tables` adds the orders 128 and 256 rows that the
//! published tables make claims about.

/// Every family is hit at least once; nothing exceeds order 64.
pub const SMOKE: &[&str] = &[
    "C1", "C2", "C4", "C8", "C16", "C32", "C64",
    "C3", "C9", "C27", "C5", "C25", "C7", "C49",
    "C2 x C2", "C2 x C4", "C2 x C8", "C2 x C16", "C2 x C32",
    "C3 x C3", "C3 x C9", "C5 x C5", "C7 x C7",
    "C4 x C4", "C4 x C8", "C4 x C16", "C8 x C8",
    "C2 x C2 x C2", "C2 x C2 x C4", "C2 x C2 x C8", "C2 x C2 x C16",
    "C3 x C3 x C3",
    "D8 x C2", "D16 x C2", "D32 x C2",
    "D8 x C4", "D16 x C4", "D8 x C8",
];

/// Smoke corpus plus the larger groups the printed tables cover.
pub const PAPER_TABLES_EXTRA: &[&str] = &[
    "C128", "C2 x C64", "C4 x C32", "C8 x C16", "C2 x C2 x C32", "C3 x C3 x C9",
    "D64 x C2", "D32 x C4", "D16 x C8", "D8 x C16", "D8 x C32", "D16 x C16",
];

pub fn preset(name: &str) -> Option<Vec<String>> {
    match name {
        "smoke" => Some(SMOKE.iter().map(|s| s.to_string()).collect()),
        "paper-tables" => Some(
            SMOKE
                .iter()
                .chain(PAPER_TABLES_EXTRA)
                .map(|s| s.to_string())
                .collect(),
        ),
        _ => None,
    }
}
