//! The published closed forms and recurrences for h, evaluated exactly as
//! printed. No silent typo correction: when a formula disagrees with the
//! lattice oracle or with a printed table, that disagreement is the output.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::spec::{Family, GroupExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    /// h(Z_{p^n}) = 2^n, n >= 0.
    Cyclic,
    /// h(Z_p x Z_{p^{n-1}}) = 2^{n-1}[2+(n-1)p], n >= 1.
    Rank2,
    /// h(Z_4 x Z_{2^n}) = 2^n[n^2+5n-2], n >= 2.
    Z4Chain,
    /// h(Z_8 x Z_{2^n}) = (1/3)2^{n+1}(n^3+12n^2+17n-24), n >= 3.
    Z8Chain,
    /// h(Z_p x Z_p x Z_{p^n}) closed form, n >= 1.
    Rank3,
    /// h(Z_3 x Z_3 x Z_{3^n}) = 2^{n+1}[18n^2+9n+26]-54, n >= 1.
    Rank3P3,
    /// Recurrence form of Rank3 for p in {5, 7}, base at n = 1.
    Rank3Rec,
    /// h(D_{2^n} x C_2) = 2^{2n}(2n+1)-2^{n+1}, n >= 4.
    D2nC2,
    /// h(D_{2^n} x C_4) = 2^{2(n-2)}(64n+173)+3*sum, n >= 3.
    D2nC4,
    /// h(D_{2^n} x C_8) as printed; contains garbled tokens, n >= 3.
    D2nC8,
    /// h(D_8 x C_{2^m}) = m(89-23m)+85*2^{m+3}-124, m >= 3.
    D8C2m,
    /// h(D_16 x C_{2^n}) multiple-sum expression, n >= 4.
    D16C2n,
}

impl FamilyId {
    pub const ALL: [FamilyId; 12] = [
        FamilyId::Cyclic,
        FamilyId::Rank2,
        FamilyId::Z4Chain,
        FamilyId::Z8Chain,
        FamilyId::Rank3,
        FamilyId::Rank3P3,
        FamilyId::Rank3Rec,
        FamilyId::D2nC2,
        FamilyId::D2nC4,
        FamilyId::D2nC8,
        FamilyId::D8C2m,
        FamilyId::D16C2n,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Cyclic => "CYCLIC",
            FamilyId::Rank2 => "RANK2",
            FamilyId::Z4Chain => "Z4_CHAIN",
            FamilyId::Z8Chain => "Z8_CHAIN",
            FamilyId::Rank3 => "RANK3",
            FamilyId::Rank3P3 => "RANK3_P3",
            FamilyId::Rank3Rec => "RANK3_REC",
            FamilyId::D2nC2 => "D2N_C2",
            FamilyId::D2nC4 => "D2N_C4",
            FamilyId::D2nC8 => "D2N_C8",
            FamilyId::D8C2m => "D8_C2M",
            FamilyId::D16C2n => "D16_C2N",
        }
    }

    /// Case-insensitive name lookup; '-' and '_' are interchangeable.
    pub fn parse(s: &str) -> Option<FamilyId> {
        let key: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .map(|c| c.to_ascii_uppercase())
            .collect();
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name().replace('_', "") == key)
    }

    pub fn takes_prime(self) -> bool {
        matches!(
            self,
            FamilyId::Cyclic | FamilyId::Rank2 | FamilyId::Rank3 | FamilyId::Rank3Rec
        )
    }

    /// Lower bound of the stated validity range for the integer parameter.
    pub fn range_min(self) -> i64 {
        match self {
            FamilyId::Cyclic => 0,
            FamilyId::Rank2
            | FamilyId::Rank3
            | FamilyId::Rank3P3
            | FamilyId::Rank3Rec => 1,
            FamilyId::Z4Chain => 2,
            FamilyId::Z8Chain | FamilyId::D2nC4 | FamilyId::D2nC8 | FamilyId::D8C2m => 3,
            FamilyId::D2nC2 | FamilyId::D16C2n => 4,
        }
    }

    /// True if the printed source of this family contains garbled tokens.
    pub fn garbled_source(self) -> bool {
        matches!(self, FamilyId::D2nC8)
    }
}

impl std::fmt::Display for FamilyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Static descriptor for one family.
pub struct FamilyInfo {
    pub id: FamilyId,
    pub name: &'static str,
    pub params: &'static str,
    pub range: &'static str,
    pub describes: &'static str,
    pub garbled: bool,
}

pub fn list_families() -> Vec<FamilyInfo> {
    fn info(
        id: FamilyId,
        params: &'static str,
        range: &'static str,
        describes: &'static str,
    ) -> FamilyInfo {
        FamilyInfo {
            id,
            name: id.name(),
            params,
            range,
            describes,
            garbled: id.garbled_source(),
        }
    }
    vec![
        info(FamilyId::Cyclic, "(p, n)", "n >= 0", "Z_{p^n}"),
        info(FamilyId::Rank2, "(p, n)", "n >= 1", "Z_p x Z_{p^(n-1)}"),
        info(FamilyId::Z4Chain, "(n)", "n >= 2", "Z_4 x Z_{2^n}"),
        info(FamilyId::Z8Chain, "(n)", "n >= 3", "Z_8 x Z_{2^n}"),
        info(FamilyId::Rank3, "(p, n)", "n >= 1", "Z_p x Z_p x Z_{p^n}"),
        info(FamilyId::Rank3P3, "(n)", "n >= 1", "Z_3 x Z_3 x Z_{3^n}"),
        info(
            FamilyId::Rank3Rec,
            "(p in {5,7}, n)",
            "n >= 1",
            "Z_p x Z_p x Z_{p^n} (recurrence)",
        ),
        info(FamilyId::D2nC2, "(n)", "n >= 4", "D_{2^n} x C_2"),
        info(FamilyId::D2nC4, "(n)", "n >= 3", "D_{2^n} x C_4"),
        info(FamilyId::D2nC8, "(n)", "n >= 3", "D_{2^n} x C_8"),
        info(FamilyId::D8C2m, "(m)", "m >= 3", "D_8 x C_{2^m}"),
        info(FamilyId::D16C2n, "(n)", "n >= 4", "D_16 x C_{2^n}"),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validity {
    Ok,
    OutOfRange,
    GarbledSource,
}

/// Outcome of evaluating one formula at one parameter point.
#[derive(Debug, Clone)]
pub struct FormulaResult {
    pub value: Option<BigUint>,
    pub validity: Validity,
    pub notes: Vec<String>,
}

/// Explicit reading of the garbled exponent token in the D2N_C8 source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum D2nC8Reading {
    /// Read the exponent token "( j - 1j )" as j - 1.
    JMinus1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvalOptions {
    pub d2n_c8: Option<D2nC8Reading>,
}

fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

/// 2^e, or None for a negative exponent (expression undefined over Z).
fn pow2(e: i64) -> Option<BigInt> {
    if e < 0 {
        None
    } else {
        Some(BigInt::from(1) << (e as usize))
    }
}

fn v_cyclic(n: i64) -> Option<BigInt> {
    pow2(n)
}

fn v_rank2(p: u64, n: i64) -> Option<BigInt> {
    let p = BigInt::from(p);
    Some(pow2(n - 1)? * (bi(2) + bi(n - 1) * p))
}

fn v_z4_chain(n: i64) -> Option<BigInt> {
    Some(pow2(n)? * (bi(n) * bi(n) + bi(5) * bi(n) - bi(2)))
}

fn v_z8_chain(n: i64) -> Result<Option<BigInt>> {
    let poly = bi(n) * bi(n) * bi(n) + bi(12) * bi(n) * bi(n) + bi(17) * bi(n) - bi(24);
    if (&poly % bi(3)) != BigInt::zero() {
        return Err(Error::NonExactDivision {
            family: "Z8_CHAIN",
            n,
            numerator: poly.to_string(),
            divisor: 3,
        });
    }
    Ok(pow2(n + 1).map(|t| t * (poly / bi(3))))
}

fn v_rank3(p: u64, n: i64) -> Option<BigInt> {
    let p = BigInt::from(p);
    let p2 = &p * &p;
    let p3 = &p2 * &p;
    let two_n = pow2(n)?;
    let a = &two_n * &p * (&p + bi(1)) * bi(n - 1) * (bi(3) + bi(n) * &p + bi(2) * &p);
    let b = (&two_n - bi(2)) * &p3;
    let c = &two_n * bi(2) * bi(n - 1) * &p3;
    let d = &two_n * (&p3 + bi(4) * (bi(1) + &p + &p2));
    Some(a + b - c + d)
}

fn v_rank3_p3(n: i64) -> Option<BigInt> {
    Some(pow2(n + 1)? * (bi(18) * bi(n) * bi(n) + bi(9) * bi(n) + bi(26)) - bi(54))
}

fn v_rank3_rec(p: u64, n: i64) -> Option<BigInt> {
    if n < 1 {
        return None;
    }
    let pb = BigInt::from(p);
    let p2 = &pb * &pb;
    let p3 = &p2 * &pb;
    let pp = &pb + &p2;
    let mut acc = v_rank3(p, 1)?;
    for k in 2..=n {
        let tower = v_rank2(p, k + 1)?;
        acc = bi(2)
            * (&pp * tower + acc - &p3 * pow2(k)? - &pp * pow2(k - 1)? + &p3);
    }
    Some(acc)
}

fn v_d2n_c2(n: i64) -> Option<BigInt> {
    Some(pow2(2 * n)? * (bi(2 * n + 1)) - pow2(n + 1)?)
}

fn v_d2n_c4(n: i64) -> Option<BigInt> {
    let head = pow2(2 * (n - 2))? * bi(64 * n + 173);
    let mut sum = BigInt::zero();
    for j in 1..=(n - 3) {
        sum += pow2(n - 1 + j)? * bi(2 * n + 1 - 2 * j);
    }
    Some(head + bi(3) * sum)
}

fn v_d2n_c8(n: i64, reading: Option<D2nC8Reading>) -> Result<Option<BigInt>> {
    let Some(D2nC8Reading::JMinus1) = reading else {
        return Ok(None);
    };
    let (Some(t1p), Some(t2p), Some(t3p)) = (pow2(2 * (n - 1)), pow2(n), pow2(n + 2)) else {
        return Ok(None);
    };
    let t1 = t1p * bi(6 * n + 113);
    let mut s1 = BigInt::zero();
    for j in 1..=(n - 3) {
        // garbled token "2^{( j - 1j )}" under the j-1 reading
        s1 += pow2(j - 1).expect("j >= 1") * bi(2 * n + 1 - 2 * j);
    }
    let t2 = t2p * (bi(13) - bi(6 * n) - bi(2) * bi(n) * bi(n) + bi(3) * s1);
    let mut s2 = BigInt::zero();
    for k in 1..=(n - 5) {
        let a = bi(n - 2 - k);
        s2 += pow2(k).expect("k >= 1")
            * (&a * &a * &a + bi(12) * &a * &a + bi(17) * bi(n - k) - bi(58));
    }
    let c1 = bi(n - 1);
    let c2 = bi(n - 2);
    let bracket = &c1 * &c1 * &c1
        + &c2 * &c2 * &c2
        + bi(24) * bi(n) * bi(n)
        - bi(38) * bi(n)
        - bi(30)
        + s2;
    if (&bracket % bi(3)) != BigInt::zero() {
        return Err(Error::NonExactDivision {
            family: "D2N_C8",
            n,
            numerator: bracket.to_string(),
            divisor: 3,
        });
    }
    Ok(Some(t1 + t2 + t3p * (bracket / bi(3))))
}

fn v_d8_c2m(m: i64) -> Option<BigInt> {
    Some(bi(m) * (bi(89) - bi(23) * bi(m)) + bi(85) * pow2(m + 3)? - bi(124))
}

fn v_d16_c2n(n: i64, reading: Option<D2nC8Reading>) -> Result<Option<BigInt>> {
    let Some(head_pow) = pow2(n + 3) else {
        return Ok(None);
    };
    let mut total = head_pow * (bi(422) - bi(n) * bi(n) - bi(5 * n)) - bi(9) * bi(n) * bi(n)
        + bi(356 * n)
        - bi(29160);
    // both sum blocks resolve h values of other families from this bank
    for j in 1..=(n - 4) {
        let (Some(c8), Some(c4), Some(cy)) = (
            v_d2n_c8(n - 1 + j, reading)?,
            v_d2n_c4(n - 1 + j),
            v_cyclic(n + 1 - j),
        ) else {
            return Ok(None);
        };
        total += bi(2) * c8 + bi(4) * c4 - bi(6) * cy;
    }
    for j in 1..=(n - 5) {
        let (Some(d8m), Some(c4), Some(c8)) = (
            v_d8_c2m(n - j),
            v_d2n_c4(n - j),
            v_d2n_c8(n - j, reading)?,
        ) else {
            return Ok(None);
        };
        total -= bi(4) * d8m - bi(8) * c4 + bi(4) * c8;
    }
    Ok(Some(total))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// True if evaluating `family` at parameter `n` pulls in a garbled source
/// (directly, or through a dependency in a sum block).
fn garble_affected(family: FamilyId, n: i64) -> bool {
    match family {
        FamilyId::D2nC8 => true,
        FamilyId::D16C2n => n >= 5,
        _ => false,
    }
}

/// Evaluates one family at one parameter point, exactly as printed.
///
/// Out-of-range parameters are never silent: the result is flagged
/// OUT_OF_RANGE, with a value when the printed expression still evaluates to
/// a non-negative integer and no value otherwise. Garbled sources yield a
/// value only under an explicit reading and stay flagged either way. A
/// non-prime p or a non-exact division is a hard error.
pub fn eval_formula(
    family: FamilyId,
    p: Option<u64>,
    n: i64,
    opts: &EvalOptions,
) -> Result<FormulaResult> {
    let p = match (family.takes_prime(), p) {
        (true, Some(p)) => {
            if !is_prime(p) {
                return Err(Error::Parameter {
                    family: family.name(),
                    msg: format!("p = {p} is not prime"),
                });
            }
            if family == FamilyId::Rank3Rec && !(p == 5 || p == 7) {
                return Err(Error::Parameter {
                    family: family.name(),
                    msg: format!("the recurrence is stated only for p in {{5, 7}}, got p = {p}"),
                });
            }
            Some(p)
        }
        (true, None) => {
            return Err(Error::Parameter {
                family: family.name(),
                msg: "requires a prime parameter p".into(),
            });
        }
        (false, Some(_)) => {
            return Err(Error::Parameter {
                family: family.name(),
                msg: "takes no prime parameter".into(),
            });
        }
        (false, None) => None,
    };

    let raw: Option<BigInt> = match family {
        FamilyId::Cyclic => v_cyclic(n),
        FamilyId::Rank2 => v_rank2(p.unwrap(), n),
        FamilyId::Z4Chain => v_z4_chain(n),
        FamilyId::Z8Chain => v_z8_chain(n)?,
        FamilyId::Rank3 => v_rank3(p.unwrap(), n),
        FamilyId::Rank3P3 => v_rank3_p3(n),
        FamilyId::Rank3Rec => v_rank3_rec(p.unwrap(), n),
        FamilyId::D2nC2 => v_d2n_c2(n),
        FamilyId::D2nC4 => v_d2n_c4(n),
        FamilyId::D2nC8 => v_d2n_c8(n, opts.d2n_c8)?,
        FamilyId::D8C2m => v_d8_c2m(n),
        FamilyId::D16C2n => v_d16_c2n(n, opts.d2n_c8)?,
    };

    let in_range = n >= family.range_min();
    let garbled = garble_affected(family, n);
    let mut notes = Vec::new();
    if garbled {
        match opts.d2n_c8 {
            Some(D2nC8Reading::JMinus1) => {
                notes.push(
                    "garbled exponent token \"2^{( j - 1j )}\" read as 2^(j-1)".to_string(),
                );
            }
            None => {
                notes.push(
                    "source contains an uninterpretable exponent token; \
                     no value without an explicit reading (d2n_c8=j_minus_1)"
                        .to_string(),
                );
            }
        }
    }
    if !in_range {
        notes.push(format!(
            "parameter {n} is below the stated validity bound ({} >= {})",
            if family == FamilyId::D8C2m { "m" } else { "n" },
            family.range_min()
        ));
    }

    let value = match raw {
        Some(v) if v.sign() == num_bigint::Sign::Minus => {
            if in_range {
                return Err(Error::Internal(format!(
                    "{} evaluated negative in range at n = {n}: {v}",
                    family.name()
                )));
            }
            notes.push("expression is negative here; no value reported".to_string());
            None
        }
        Some(v) => Some(v.to_biguint().expect("non-negative")),
        None => {
            if !garbled || opts.d2n_c8.is_some() {
                notes.push(
                    "expression undefined at this parameter (negative exponent or below \
                     the recurrence base); no value reported"
                        .to_string(),
                );
            }
            None
        }
    };

    let validity = if garbled {
        Validity::GarbledSource
    } else if !in_range {
        Validity::OutOfRange
    } else {
        Validity::Ok
    };

    Ok(FormulaResult {
        value,
        validity,
        notes,
    })
}

/// A family instance that applies to a concrete group spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FamilyMatch {
    pub family: FamilyId,
    pub p: Option<u64>,
    pub n: i64,
}

fn prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let p = (2..).find(|d| m % d == 0).expect("m >= 2 has a factor");
    let mut rest = m;
    let mut k = 0u32;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// All formula families whose group shape matches the spec, including
/// instances whose parameter falls outside the stated validity range (those
/// evaluate flagged). A spec can match several families.
pub fn match_families(expr: &GroupExpr) -> Vec<FamilyMatch> {
    let factors = expr.canonical_factors();
    let mut out: Vec<FamilyMatch> = Vec::new();
    let mut push = |family, p, n| out.push(FamilyMatch { family, p, n });

    match factors.as_slice() {
        [(Family::Cyclic, 1)] => push(FamilyId::Cyclic, Some(2), 0),
        [(Family::Cyclic, m)] => {
            if let Some((p, k)) = prime_power(*m) {
                push(FamilyId::Cyclic, Some(p), k as i64);
            }
        }
        [(Family::Cyclic, a), (Family::Cyclic, b)] => {
            if let (Some((p, ea)), Some((q, eb))) = (prime_power(*a), prime_power(*b)) {
                if p == q {
                    if eb == 1 {
                        push(FamilyId::Rank2, Some(p), ea as i64 + 1);
                    }
                    if p == 2 && eb == 2 {
                        push(FamilyId::Z4Chain, None, ea as i64);
                    }
                    if p == 2 && eb == 3 {
                        push(FamilyId::Z8Chain, None, ea as i64);
                    }
                }
            }
        }
        [(Family::Cyclic, a), (Family::Cyclic, b), (Family::Cyclic, c)] => {
            if let (Some((p, ea)), Some((q, 1)), Some((r, 1))) =
                (prime_power(*a), prime_power(*b), prime_power(*c))
            {
                if p == q && q == r {
                    push(FamilyId::Rank3, Some(p), ea as i64);
                    if p == 3 {
                        push(FamilyId::Rank3P3, None, ea as i64);
                    }
                    if p == 5 || p == 7 {
                        push(FamilyId::Rank3Rec, Some(p), ea as i64);
                    }
                }
            }
        }
        [(Family::Dihedral, d), (Family::Cyclic, c)] => {
            if let (Some((2, nd)), Some((2, m))) = (prime_power(*d), prime_power(*c)) {
                match m {
                    1 => push(FamilyId::D2nC2, None, nd as i64),
                    2 => push(FamilyId::D2nC4, None, nd as i64),
                    3 => push(FamilyId::D2nC8, None, nd as i64),
                    _ => {}
                }
                if *d == 8 {
                    push(FamilyId::D8C2m, None, m as i64);
                }
                if *d == 16 {
                    push(FamilyId::D16C2n, None, m as i64);
                }
            }
        }
        _ => {}
    }
    out.sort();
    out
}

/// The spec of the group a family instance describes, or None when the
/// parameters name no group at all (negative or overflowing exponents, a
/// dihedral part smaller than 4 elements). Out-of-range instances that still
/// name a real group (say D2N_C2 at n = 3) are returned, so tables can show
/// what the formula yields below its stated range next to the true count.
pub fn instance_spec(m: &FamilyMatch) -> Option<String> {
    fn pw(base: u64, e: i64) -> Option<u64> {
        base.checked_pow(u32::try_from(e).ok()?)
    }
    let p = m.p;
    let n = m.n;
    match m.family {
        FamilyId::Cyclic => Some(format!("C{}", pw(p?, n)?)),
        FamilyId::Rank2 => Some(format!("C{} x C{}", p?, pw(p?, n - 1)?)),
        FamilyId::Z4Chain => Some(format!("C4 x C{}", pw(2, n)?)),
        FamilyId::Z8Chain => Some(format!("C8 x C{}", pw(2, n)?)),
        FamilyId::Rank3 | FamilyId::Rank3Rec => {
            Some(format!("C{} x C{} x C{}", p?, p?, pw(p?, n)?))
        }
        FamilyId::Rank3P3 => Some(format!("C3 x C3 x C{}", pw(3, n)?)),
        FamilyId::D2nC2 if n >= 2 => Some(format!("D{} x C2", pw(2, n)?)),
        FamilyId::D2nC4 if n >= 2 => Some(format!("D{} x C4", pw(2, n)?)),
        FamilyId::D2nC8 if n >= 2 => Some(format!("D{} x C8", pw(2, n)?)),
        FamilyId::D8C2m => Some(format!("D8 x C{}", pw(2, n)?)),
        FamilyId::D16C2n => Some(format!("D16 x C{}", pw(2, n)?)),
        _ => None,
    }
}

/// One printed value checked against the formula and the oracle.
#[derive(Debug, Clone)]
pub struct FixtureCheck {
    pub label: &'static str,
    pub value: BigUint,
    pub matches_formula: Option<bool>,
    pub matches_oracle: Option<bool>,
}

/// Comparison record for one family instance: formula value, oracle value,
/// printed values, and match flags. Nothing is overwritten or suppressed.
#[derive(Debug, Clone)]
pub struct CrossCheck {
    pub family: FamilyId,
    pub p: Option<u64>,
    pub n: i64,
    pub formula: FormulaResult,
    pub oracle: Option<BigUint>,
    pub formula_vs_oracle: Option<bool>,
    pub fixtures: Vec<FixtureCheck>,
}

pub fn cross_check(
    m: &FamilyMatch,
    oracle: Option<&BigUint>,
    opts: &EvalOptions,
) -> Result<CrossCheck> {
    let formula = eval_formula(m.family, m.p, m.n, opts)?;
    let fixtures = fixtures::fixtures_for(m.family, m.n)
        .into_iter()
        .map(|fx| {
            let value = BigUint::from(fx.value);
            FixtureCheck {
                label: fx.label,
                matches_formula: formula.value.as_ref().map(|f| *f == value),
                matches_oracle: oracle.map(|o| *o == value),
                value,
            }
        })
        .collect();
    let formula_vs_oracle = match (formula.value.as_ref(), oracle) {
        (Some(f), Some(o)) => Some(f == o),
        _ => None,
    };
    Ok(CrossCheck {
        family: m.family,
        p: m.p,
        n: m.n,
        formula,
        oracle: oracle.cloned(),
        formula_vs_oracle,
        fixtures,
    })
}
