use crate::error::{Error, Result};
use crate::group::Group;
use crate::Limits;

/// Families a spec string can name. `C` and `Z` both mean cyclic; `D` is
/// dihedral by total order. `Q` and `SD` are recognized and rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Dihedral,
    Cyclic,
}

/// One parsed atom: family, order, and the `^k` repeat sugar (k >= 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub family: Family,
    pub order: u64,
    pub repeat: u32,
}

/// A parsed spec: a direct product of factors, e.g. `"Z2^3 x D8"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupExpr {
    pub factors: Vec<Factor>,
}

impl GroupExpr {
    /// Repeat-expanded factor list in canonical order: dihedral factors
    /// first, then cyclic, each descending by order. Trivial C1 factors are
    /// dropped (they do not change the group) unless nothing else remains.
    pub fn canonical_factors(&self) -> Vec<(Family, u64)> {
        let mut flat: Vec<(Family, u64)> = Vec::new();
        for f in &self.factors {
            for _ in 0..f.repeat {
                if f.order > 1 {
                    flat.push((f.family, f.order));
                }
            }
        }
        if flat.is_empty() {
            return vec![(Family::Cyclic, 1)];
        }
        flat.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        flat
    }

    /// Total order of the realized group, before any cap check.
    pub fn total_order(&self) -> u128 {
        let mut t: u128 = 1;
        for f in &self.factors {
            for _ in 0..f.repeat {
                t = t.saturating_mul(f.order as u128);
            }
        }
        t
    }
}

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    /// The run of non-whitespace characters starting at `pos`, for error
    /// messages. Falls back to "end of input".
    fn token_at(&self, pos: usize) -> String {
        if pos >= self.src.len() {
            return "end of input".into();
        }
        // pos always lands on a char boundary (the cursor only steps over
        // ASCII), but never risk a slice panic inside error reporting
        let Some(rest) = self.src.get(pos..) else {
            return format!("byte {pos}");
        };
        let end = rest
            .char_indices()
            .find(|(_, c)| c.is_whitespace())
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        rest[..end].to_string()
    }

    fn err(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos,
            token: self.token_at(pos),
            msg: msg.into(),
        }
    }

    fn integer(&mut self, what: &str, at: usize) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(self.pos.min(self.bytes.len()), format!("expected {what}")));
        }
        self.src[start..self.pos]
            .parse::<u64>()
            .map_err(|_| self.err(at, format!("malformed integer (too large) in {what}")))
    }
}

/// Parses a spec string.
///
/// Grammar: `expr := term ("x" term)*`, `term := family INT ("^" INT)?`,
/// `family := "C" | "Z" | "D"`. Case and whitespace insensitive; `C` and `Z`
/// are synonyms for cyclic of the given order, `D` is dihedral of the given
/// total order (even, >= 4). Errors carry the byte position and the offending
/// token; parsing never panics, whatever the input.
pub fn parse_spec(input: &str) -> Result<GroupExpr> {
    let mut cur = Cursor {
        src: input,
        bytes: input.as_bytes(),
        pos: 0,
    };
    let mut factors = Vec::new();
    loop {
        cur.skip_ws();
        factors.push(parse_term(&mut cur)?);
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'x') | Some(b'X') => cur.pos += 1,
            Some(_) => {
                return Err(cur.err(cur.pos, "expected 'x' between factors or end of input"));
            }
        }
    }
    Ok(GroupExpr { factors })
}

fn parse_term(cur: &mut Cursor) -> Result<Factor> {
    let at = cur.pos;
    let family = match cur.peek() {
        Some(b'c') | Some(b'C') | Some(b'z') | Some(b'Z') => {
            cur.pos += 1;
            Family::Cyclic
        }
        Some(b'd') | Some(b'D') => {
            cur.pos += 1;
            Family::Dihedral
        }
        Some(b'q') | Some(b'Q') => {
            return Err(cur.err(at, "family 'Q' (quaternion) is not supported"));
        }
        Some(b's') | Some(b'S')
            if matches!(cur.bytes.get(cur.pos + 1), Some(b'd') | Some(b'D')) =>
        {
            return Err(cur.err(at, "family 'SD' (semidihedral) is not supported"));
        }
        _ => {
            return Err(cur.err(at, "expected a group family: C, Z or D"));
        }
    };
    let order = cur.integer("an integer order after the family letter", at)?;
    let mut repeat = 1u32;
    if cur.peek() == Some(b'^') {
        cur.pos += 1;
        let rep_at = cur.pos;
        let r = cur.integer("an integer repeat count after '^'", rep_at)?;
        // 64 is far beyond anything realizable (2^64 elements) but keeps the
        // expanded factor list small no matter what the caller does next
        if !(1..=64).contains(&r) {
            return Err(cur.err(rep_at, "repeat count must be between 1 and 64"));
        }
        repeat = r as u32;
    }
    match family {
        Family::Cyclic if order == 0 => Err(cur.err(at, "cyclic order must be >= 1")),
        Family::Dihedral if order % 2 != 0 || order < 4 => Err(cur.err(
            at,
            "dihedral groups take an even total order >= 4 (D8 is the 8-element one)",
        )),
        _ => Ok(Factor {
            family,
            order,
            repeat,
        }),
    }
}

/// Canonical display form: repeats expanded, `Z` normalized to `C`, dihedral
/// factors first, descending order within each family, joined by " x ".
/// Examples: `"c16xd16"` -> `"D16 x C16"`, `"Z2^3"` -> `"C2 x C2 x C2"`.
pub fn canonicalize(expr: &GroupExpr) -> String {
    let parts: Vec<String> = expr
        .canonical_factors()
        .iter()
        .map(|(fam, ord)| match fam {
            Family::Cyclic => format!("C{ord}"),
            Family::Dihedral => format!("D{ord}"),
        })
        .collect();
    parts.join(" x ")
}

/// Builds the group a spec describes: a left fold of `direct_product` over
/// the canonical factor list. The group's `spec()` is the canonical string.
pub fn realize(expr: &GroupExpr, limits: &Limits) -> Result<Group> {
    let total = expr.total_order();
    if total > limits.max_order as u128 {
        return Err(Error::OrderCap {
            order: total,
            cap: limits.max_order,
        });
    }
    let factors = expr.canonical_factors();
    let mut acc: Option<Group> = None;
    for (fam, ord) in factors {
        let g = match fam {
            Family::Cyclic => Group::cyclic(ord as usize)?,
            Family::Dihedral => Group::dihedral(ord as usize)?,
        };
        acc = Some(match acc {
            None => g,
            Some(prev) => Group::direct_product(&prev, &g)?,
        });
    }
    let mut g = acc.expect("grammar guarantees at least one factor");
    g.set_spec(canonicalize(expr));
    Ok(g)
}

/// parse + realize in one step.
pub fn realize_spec(input: &str, limits: &Limits) -> Result<Group> {
    realize(&parse_spec(input)?, limits)
}
