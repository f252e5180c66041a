use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::bitset::SubgroupSet;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::Limits;

/// Saturates `elems[start..]` against the whole element list under the group
/// product. Precondition: `elems[..start]` is closed under multiplication
/// among itself, `set` mirrors `elems`. In a finite group, closure under the
/// product alone already yields a subgroup (inverses are powers).
fn saturate(g: &Group, set: &mut SubgroupSet, elems: &mut Vec<u16>, start: usize) {
    let mut i = start;
    while i < elems.len() {
        let a = elems[i] as usize;
        let mut j = 0;
        while j < elems.len() {
            let b = elems[j] as usize;
            for p in [g.mul(a, b), g.mul(b, a)] {
                if !set.contains(p) {
                    set.insert(p);
                    elems.push(p as u16);
                }
            }
            j += 1;
        }
        i += 1;
    }
}

/// Smallest subgroup of `g` containing `seed` (plus the identity).
pub fn closure(g: &Group, seed: &[usize]) -> SubgroupSet {
    let mut set = SubgroupSet::empty(g.order());
    let mut elems: Vec<u16> = Vec::with_capacity(seed.len() + 1);
    set.insert(0);
    elems.push(0);
    for &x in seed {
        if !set.contains(x) {
            set.insert(x);
            elems.push(x as u16);
        }
    }
    saturate(g, &mut set, &mut elems, 0);
    set
}

/// Closure of `base ∪ extra` where `base` is already a subgroup with element
/// list `base_elems`. Only the genuinely new elements are used as the
/// saturation frontier.
fn closure_extend(
    g: &Group,
    base: &SubgroupSet,
    base_elems: &[u16],
    extra: &[u16],
) -> (SubgroupSet, Vec<u16>) {
    let mut set = base.clone();
    let mut elems = base_elems.to_vec();
    let start = elems.len();
    for &x in extra {
        if !set.contains(x as usize) {
            set.insert(x as usize);
            elems.push(x);
        }
    }
    saturate(g, &mut set, &mut elems, start);
    (set, elems)
}

/// The full subgroup lattice of one ambient group: every subgroup as a
/// bitset, sorted by (size, bits) ascending, plus the Hasse covers relation.
/// Index 0 is the trivial subgroup and the last index is the whole group.
pub struct SubgroupLattice {
    group: Group,
    subgroups: Vec<SubgroupSet>,
    sizes: Vec<usize>,
    covers: Vec<Vec<usize>>,
    index: HashMap<SubgroupSet, usize>,
}

/// Serializable snapshot of a lattice, for debugging and regression fixtures.
#[derive(Serialize)]
pub struct LatticeDump {
    pub spec: String,
    pub order: usize,
    pub subgroup_count: usize,
    pub subgroups: Vec<LatticeDumpEntry>,
    pub covers: Vec<Vec<usize>>,
}

#[derive(Serialize)]
pub struct LatticeDumpEntry {
    pub size: usize,
    pub bits_hex: String,
}

/// Enumerates every subgroup of `g`.
///
/// Seeds with all cyclic subgroups, then saturates under pairwise join
/// (closure of the union) with hash-based dedup until fixpoint. Joining each
/// discovered subgroup with every cyclic subgroup reaches the same fixpoint
/// as joining arbitrary pairs, since any subgroup is the join of the cyclic
/// subgroups it contains. Aborts once more than `limits.max_subgroups`
/// subgroups have been found.
pub fn enumerate_subgroups(g: &Group, limits: &Limits) -> Result<SubgroupLattice> {
    let n = g.order();
    let mut seen: HashSet<SubgroupSet> = HashSet::new();
    // (bitset, element list) per discovered subgroup; the list drives joins
    let mut found: Vec<(SubgroupSet, Vec<u16>)> = Vec::new();

    let mut push = |set: SubgroupSet,
                    elems: Vec<u16>,
                    found: &mut Vec<(SubgroupSet, Vec<u16>)>|
     -> Result<bool> {
        if seen.contains(&set) {
            return Ok(false);
        }
        if found.len() >= limits.max_subgroups {
            return Err(Error::SubgroupCap {
                cap: limits.max_subgroups,
            });
        }
        seen.insert(set.clone());
        found.push((set, elems));
        Ok(true)
    };

    let triv = SubgroupSet::from_indices(n, &[0]);
    push(triv, vec![0], &mut found)?;

    // all cyclic subgroups, by direct powering
    let mut cyclics: Vec<(SubgroupSet, Vec<u16>)> = Vec::new();
    for x in 1..n {
        let mut set = SubgroupSet::from_indices(n, &[0]);
        let mut elems: Vec<u16> = vec![0];
        let mut cur = x;
        while cur != 0 {
            set.insert(cur);
            elems.push(cur as u16);
            cur = g.mul(cur, x);
        }
        if push(set.clone(), elems.clone(), &mut found)? {
            cyclics.push((set, elems));
        }
    }

    // worklist saturation: join every discovered subgroup with every cyclic
    let mut head = 0;
    while head < found.len() {
        for ci in 0..cyclics.len() {
            let (cset, celems) = (&cyclics[ci].0, &cyclics[ci].1);
            if cset.is_subset_of(&found[head].0) {
                continue;
            }
            let (jset, jelems) = closure_extend(g, &found[head].0, &found[head].1, celems);
            push(jset, jelems, &mut found)?;
        }
        head += 1;
    }

    let mut subgroups: Vec<SubgroupSet> = found.into_iter().map(|(s, _)| s).collect();
    subgroups.sort();
    let sizes: Vec<usize> = subgroups.iter().map(|s| s.len()).collect();
    for (s, &sz) in subgroups.iter().zip(&sizes) {
        if n % sz != 0 {
            return Err(Error::Internal(format!(
                "enumerated set {s:?} has size {sz}, which does not divide {n}"
            )));
        }
    }
    let index: HashMap<SubgroupSet, usize> = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let covers = compute_covers(&subgroups, &sizes);

    Ok(SubgroupLattice {
        group: g.clone(),
        subgroups,
        sizes,
        covers,
        index,
    })
}

/// Hasse covers: for each H, the maximal proper subgroups of H. Candidate
/// pairs are pruned by size divisibility before the subset tests; a proper
/// subgroup is kept iff no strictly larger proper subgroup of H contains it.
fn compute_covers(subgroups: &[SubgroupSet], sizes: &[usize]) -> Vec<Vec<usize>> {
    let n = subgroups.len();
    let mut covers = vec![Vec::new(); n];
    let mut proper: Vec<usize> = Vec::new();
    for i in 0..n {
        proper.clear();
        for j in 0..i {
            if sizes[j] < sizes[i]
                && sizes[i] % sizes[j] == 0
                && subgroups[j].is_subset_of(&subgroups[i])
            {
                proper.push(j);
            }
        }
        // proper is ascending in (size, bits); scan larger entries for domination
        for (a, &j) in proper.iter().enumerate() {
            let dominated = proper[a + 1..].iter().any(|&k| {
                sizes[k] > sizes[j] && subgroups[j].is_subset_of(&subgroups[k])
            });
            if !dominated {
                covers[i].push(j);
            }
        }
    }
    covers
}

impl SubgroupLattice {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn spec(&self) -> &str {
        self.group.spec()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Number of subgroups.
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        false // every group has at least the trivial subgroup
    }

    pub fn subgroup(&self, i: usize) -> &SubgroupSet {
        &self.subgroups[i]
    }

    pub fn size(&self, i: usize) -> usize {
        self.sizes[i]
    }

    /// Index of the whole group (the largest entry).
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// The maximal proper subgroups of entry `H`: its Hasse covers.
    pub fn maximal_subgroups(&self, h: usize) -> &[usize] {
        &self.covers[h]
    }

    pub fn covers(&self) -> &[Vec<usize>] {
        &self.covers
    }

    /// True iff subgroup `a` is contained in subgroup `b`.
    pub fn contains(&self, b: usize, a: usize) -> bool {
        self.subgroups[a].is_subset_of(&self.subgroups[b])
    }

    /// Lattice meet: the entry equal to bits(a) AND bits(b). The meet of two
    /// subgroups is a subgroup, so a miss means the enumeration is broken
    /// and must abort rather than guess.
    pub fn intersect(&self, a: usize, b: usize) -> Result<usize> {
        let meet = self.subgroups[a].intersection(&self.subgroups[b]);
        self.index.get(&meet).copied().ok_or_else(|| {
            Error::Internal(format!(
                "meet of subgroups {a} and {b} is missing from the lattice"
            ))
        })
    }

    pub fn dump(&self) -> LatticeDump {
        LatticeDump {
            spec: self.spec().to_string(),
            order: self.order(),
            subgroup_count: self.len(),
            subgroups: self
                .subgroups
                .iter()
                .map(|s| LatticeDumpEntry {
                    size: s.len(),
                    bits_hex: s.to_hex(),
                })
                .collect(),
            covers: self.covers.clone(),
        }
    }
}
