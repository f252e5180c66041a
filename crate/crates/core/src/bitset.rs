use std::cmp::Ordering;
use std::fmt;

/// Fixed-width bitset over element indices of one ambient group.
///
/// Inside a lattice every value of this type is the carrier set of a
/// subgroup, hence the name. Bit 0 (the identity) is set in every subgroup.
/// Intersection of carriers is bitwise AND; that the result is again a
/// subgroup is what makes the lattice meet-closed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubgroupSet {
    nbits: usize,
    words: Vec<u64>,
}

impl SubgroupSet {
    pub fn empty(nbits: usize) -> Self {
        SubgroupSet {
            nbits,
            words: vec![0; nbits.div_ceil(64)],
        }
    }

    pub fn from_indices(nbits: usize, indices: &[usize]) -> Self {
        let mut s = Self::empty(nbits);
        for &i in indices {
            s.insert(i);
        }
        s
    }

    /// Width in bits, i.e. the order of the ambient group.
    pub fn nbits(&self) -> usize {
        self.nbits
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Number of elements (popcount).
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nbits, other.nbits);
        SubgroupSet {
            nbits: self.nbits,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nbits, other.nbits);
        SubgroupSet {
            nbits: self.nbits,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + bit)
                }
            })
        })
    }

    /// Hex rendering of the set as one big-endian integer (bit i of the
    /// integer = membership of element i), fixed width nbits/4 digits.
    pub fn to_hex(&self) -> String {
        let digits = self.nbits.div_ceil(4);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nibble = (self.words[d / 16] >> (4 * (d % 16))) & 0xf;
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }
}

/// Orders sets by size, then by numeric value of the bit-integer. This is the
/// canonical lattice order: the trivial subgroup sorts first, the whole group
/// last, and ties are deterministic.
impl Ord for SubgroupSet {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nbits, other.nbits);
        self.len().cmp(&other.len()).then_with(|| {
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for SubgroupSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
