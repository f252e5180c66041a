use std::collections::HashMap;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::{enumerate_subgroups, SubgroupLattice};
use crate::Limits;

/// Exact chain count. Arbitrary precision: the closed forms alone reach
/// 2^{2n}(2n+1), so fixed-width arithmetic would silently corrupt.
pub type ChainCount = BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    /// Lattice dynamic programming over all proper subgroups.
    Dp,
    /// Inclusion-exclusion over maximal subgroups.
    Ie,
    /// Run both and hard-assert they agree.
    Both,
}

/// A finished count with provenance and timings.
#[derive(Debug, Clone)]
pub struct CountOutcome {
    pub spec: String,
    pub order: usize,
    pub subgroup_count: usize,
    pub h: ChainCount,
    pub method: CountMethod,
    pub lattice_ms: u128,
    pub dp_ms: Option<u128>,
    pub ie_ms: Option<u128>,
}

/// Chain counts for every lattice entry: f(H) = 1 + sum of f(K) over all
/// proper subgroups K of H, in increasing-size order. The 1 counts the
/// singleton chain {H}; f(top) is h(G).
pub fn count_chains_dp(l: &SubgroupLattice) -> Vec<ChainCount> {
    let n = l.len();
    let mut f: Vec<ChainCount> = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = ChainCount::one();
        for j in 0..i {
            // sorted by size, so every proper subgroup of i precedes it
            if l.size(i) % l.size(j) == 0 && l.size(j) < l.size(i) && l.contains(i, j) {
                v += &f[j];
            }
        }
        f.push(v);
    }
    f
}

/// Inclusion-exclusion count for lattice entry `h`:
/// h(H) = 2 * sum over nonempty subsets S of the maximal subgroups of H of
/// (-1)^(|S|-1) * h(meet of S), with h(trivial) = 1.
///
/// Subset meets are folded incrementally and collapsed into a map from meet
/// index to signed multiplicity before recursing, since many subsets share
/// one intersection. Memoized by lattice index, never by isomorphism type.
pub fn count_chains_ie(
    l: &SubgroupLattice,
    h: usize,
    memo: &mut HashMap<usize, ChainCount>,
    limits: &Limits,
) -> Result<ChainCount> {
    if let Some(v) = memo.get(&h) {
        return Ok(v.clone());
    }
    if l.size(h) == 1 {
        let one = ChainCount::one();
        memo.insert(h, one.clone());
        return Ok(one);
    }
    let maxes = l.maximal_subgroups(h).to_vec();
    let t = maxes.len();
    if t > limits.max_ie_maximals {
        return Err(Error::IeMaximalsCap {
            t,
            cap: limits.max_ie_maximals,
        });
    }
    let nmasks = 1usize << t;
    let mut meet_of_mask: Vec<usize> = vec![usize::MAX; nmasks];
    let mut multiplicity: HashMap<usize, i64> = HashMap::new();
    for mask in 1..nmasks {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let idx = if rest == 0 {
            maxes[low]
        } else {
            l.intersect(meet_of_mask[rest], maxes[low])?
        };
        meet_of_mask[mask] = idx;
        let sign: i64 = if mask.count_ones() % 2 == 1 { 1 } else { -1 };
        *multiplicity.entry(idx).or_insert(0) += sign;
    }

    let mut meets: Vec<(usize, i64)> = multiplicity
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .collect();
    meets.sort_unstable();
    let mut acc = BigInt::zero();
    for (k, c) in meets {
        let sub = count_chains_ie(l, k, memo, limits)?;
        acc += BigInt::from(c) * BigInt::from(sub);
    }
    acc *= 2;
    let v = acc.to_biguint().ok_or_else(|| {
        Error::Internal(format!(
            "inclusion-exclusion yielded a negative count at lattice entry {h}"
        ))
    })?;
    memo.insert(h, v.clone());
    Ok(v)
}

/// Enumerates the lattice once and runs the requested counting method(s).
/// With `Both`, a DP/IE disagreement is an internal error, never a result.
pub fn fuzzy_subgroup_count(
    g: &Group,
    method: CountMethod,
    limits: &Limits,
) -> Result<CountOutcome> {
    let t0 = Instant::now();
    let l = enumerate_subgroups(g, limits)?;
    let lattice_ms = t0.elapsed().as_millis();

    let mut dp_ms = None;
    let mut ie_ms = None;
    let mut dp_value: Option<ChainCount> = None;
    let mut ie_value: Option<ChainCount> = None;

    if matches!(method, CountMethod::Dp | CountMethod::Both) {
        let t = Instant::now();
        let f = count_chains_dp(&l);
        dp_ms = Some(t.elapsed().as_millis());
        dp_value = Some(f[l.top()].clone());
    }
    if matches!(method, CountMethod::Ie | CountMethod::Both) {
        let t = Instant::now();
        let mut memo = HashMap::new();
        ie_value = Some(count_chains_ie(&l, l.top(), &mut memo, limits)?);
        ie_ms = Some(t.elapsed().as_millis());
    }

    let h = match (dp_value, ie_value) {
        (Some(d), Some(i)) => {
            if d != i {
                return Err(Error::Internal(format!(
                    "method disagreement on {}: dp={d} ie={i}",
                    g.spec()
                )));
            }
            d
        }
        (Some(d), None) => d,
        (None, Some(i)) => i,
        (None, None) => unreachable!("method always selects at least one counter"),
    };

    Ok(CountOutcome {
        spec: g.spec().to_string(),
        order: g.order(),
        subgroup_count: l.len(),
        h,
        method,
        lattice_ms,
        dp_ms,
        ie_ms,
    })
}
