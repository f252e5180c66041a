use crate::error::{Error, Result};

/// Order above which group constructors refuse to build a Cayley table.
/// `realize` applies the (possibly tighter) `Limits::max_order` on top.
pub const ORDER_CAP: usize = 1024;

/// A finite group as an explicit Cayley table, immutable after construction.
///
/// Elements are indices `0..order` with the identity at index 0. The table is
/// row-major: `table[a * order + b]` is the product ab. Construction verifies
/// the axioms (identity, Latin square, inverses, associativity) rather than
/// trusting the builder; associativity is checked exhaustively up to order 64
/// and on 100 000 sampled triples above that.
#[derive(Clone)]
pub struct Group {
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    labels: Vec<String>,
    spec: String,
}

impl Group {
    /// Cyclic group of order n; element i is g^i, table entry (a+b) mod n.
    pub fn cyclic(n: usize) -> Result<Group> {
        if n == 0 || n > ORDER_CAP {
            return Err(Error::OrderCap {
                order: n as u128,
                cap: ORDER_CAP,
            });
        }
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = ((a + b) % n) as u16;
            }
        }
        let labels = (0..n).map(|i| format!("g^{i}")).collect();
        Group::assemble(n, table, labels, format!("C{n}"))
    }

    /// Dihedral group of total order 2m (m rotations, m reflections), m >= 2.
    ///
    /// Indices 0..m are the rotations r^i; indices m..2m are the reflections
    /// r^i s. The defining relation s r s = r^{-1} fixes the whole table:
    /// reflections conjugate rotations to their inverses.
    pub fn dihedral(order: usize) -> Result<Group> {
        if order % 2 != 0 || order < 4 {
            return Err(Error::DihedralOrder(order as u64));
        }
        if order > ORDER_CAP {
            return Err(Error::OrderCap {
                order: order as u128,
                cap: ORDER_CAP,
            });
        }
        let m = order / 2;
        let mut table = vec![0u16; order * order];
        for a in 0..order {
            for b in 0..order {
                let v = match (a < m, b < m) {
                    (true, true) => (a + b) % m,
                    (true, false) => m + (a + (b - m)) % m,
                    // a = m+i is r^i s; right-multiplying by r^j gives r^{i-j} s
                    (false, true) => m + (a - b) % m,
                    (false, false) => (a + m - b) % m,
                };
                table[a * order + b] = v as u16;
            }
        }
        let labels = (0..order)
            .map(|i| {
                if i < m {
                    format!("r^{i}")
                } else {
                    format!("r^{} s", i - m)
                }
            })
            .collect();
        Group::assemble(order, table, labels, format!("D{order}"))
    }

    /// Direct product with row-major element indexing: (a, b) -> a*|B| + b.
    /// The trivial group is a two-sided identity up to that indexing, i.e.
    /// trivial x B has a table identical to B's.
    pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
        let order = a.order.checked_mul(b.order).unwrap_or(usize::MAX);
        if order > ORDER_CAP {
            return Err(Error::OrderCap {
                order: a.order as u128 * b.order as u128,
                cap: ORDER_CAP,
            });
        }
        let nb = b.order;
        let mut table = vec![0u16; order * order];
        for x in 0..order {
            let (xa, xb) = (x / nb, x % nb);
            for y in 0..order {
                let (ya, yb) = (y / nb, y % nb);
                let pa = a.mul(xa, ya);
                let pb = b.mul(xb, yb);
                table[x * order + y] = (pa * nb + pb) as u16;
            }
        }
        let labels = (0..order)
            .map(|x| format!("({}, {})", a.labels[x / nb], b.labels[x % nb]))
            .collect();
        Group::assemble(order, table, labels, format!("{} x {}", a.spec, b.spec))
    }

    fn assemble(order: usize, table: Vec<u16>, labels: Vec<String>, spec: String) -> Result<Group> {
        let mut inverse = vec![u16::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverse[a] = b as u16;
                }
            }
        }
        let g = Group {
            order,
            table,
            inverse,
            labels,
            spec,
        };
        g.validate()?;
        Ok(g)
    }

    /// Axiom check; an Err here means a constructor bug, not bad input.
    fn validate(&self) -> Result<()> {
        let n = self.order;
        let fail = |msg: String| Err(Error::Internal(msg));
        let mut seen = vec![false; n];
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return fail(format!("index 0 is not an identity at {a}"));
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                seen[self.mul(a, b)] = true;
            }
            if seen.iter().any(|s| !s) {
                return fail(format!("row {a} is not a permutation"));
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                seen[self.mul(b, a)] = true;
            }
            if seen.iter().any(|s| !s) {
                return fail(format!("column {a} is not a permutation"));
            }
            let inv = self.inverse[a] as usize;
            if inv >= n || self.mul(a, inv) != 0 || self.mul(inv, a) != 0 {
                return fail(format!("element {a} lacks a two-sided inverse"));
            }
        }
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return fail(format!("associativity fails at ({a},{b},{c})"));
                        }
                    }
                }
            }
        } else {
            // splitmix64, fixed seed: deterministic sampling
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut next = move || {
                state = state.wrapping_add(0x9e3779b97f4a7c15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
                (z ^ (z >> 31)) as usize
            };
            for _ in 0..100_000 {
                let (a, b, c) = (next() % n, next() % n, next() % n);
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return fail(format!("associativity fails at ({a},{b},{c})"));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Product of elements a and b. Panics if an index is out of range.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// The canonical spec string this group was built from.
    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub(crate) fn set_spec(&mut self, spec: String) {
        self.spec = spec;
    }

    /// Multiplicative order of one element: least k >= 1 with x^k = e.
    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group({}, order {})", self.spec, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_table_and_orders() {
        let g = Group::cyclic(6).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.mul(4, 5), 3);
        assert_eq!(g.element_order(0), 1);
        assert_eq!(g.element_order(1), 6);
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.element_order(3), 2);
        assert_eq!(g.label(2), "g^2");
        assert_eq!(g.spec(), "C6");
    }

    #[test]
    fn dihedral_relations() {
        let g = Group::dihedral(8).unwrap();
        let (r, s) = (1, 4);
        // s r s = r^-1
        assert_eq!(g.mul(g.mul(s, r), s), g.inverse(r));
        assert_eq!(g.element_order(s), 2);
        assert_eq!(g.element_order(r), 4);
        assert_eq!(g.label(6), "r^2 s");
        // exactly 2 elements of order 4 and 5 nonidentity self-inverse ones
        let of_order = |k| (0..8).filter(|&x| g.element_order(x) == k).count();
        assert_eq!(of_order(4), 2);
        assert_eq!(of_order(2), 5);
    }

    #[test]
    fn d16_center_is_e_and_r4() {
        let g = Group::dihedral(16).unwrap();
        let central: Vec<usize> = (0..16)
            .filter(|&z| (0..16).all(|x| g.mul(z, x) == g.mul(x, z)))
            .collect();
        assert_eq!(central, vec![0, 4]);
        let self_inv = (1..16).filter(|&x| g.mul(x, x) == 0).count();
        assert_eq!(self_inv, 9);
    }

    #[test]
    fn dihedral_rejects_odd_and_tiny() {
        assert!(matches!(Group::dihedral(7), Err(Error::DihedralOrder(7))));
        assert!(matches!(Group::dihedral(2), Err(Error::DihedralOrder(2))));
        assert!(Group::dihedral(4).is_ok());
    }

    #[test]
    fn product_indexing_is_row_major() {
        let a = Group::cyclic(4).unwrap();
        let b = Group::cyclic(2).unwrap();
        let p = Group::direct_product(&a, &b).unwrap();
        assert_eq!(p.order(), 8);
        // (1,1)*(1,1) = (2,0) -> index 2*2+0 = 4
        assert_eq!(p.mul(3, 3), 4);
        assert_eq!(p.label(3), "(g^1, g^1)");
        assert_eq!(p.element_order(3), 4);
        assert_eq!(p.spec(), "C4 x C2");
    }

    #[test]
    fn trivial_factor_keeps_table() {
        let e = Group::cyclic(1).unwrap();
        let b = Group::dihedral(8).unwrap();
        let p = Group::direct_product(&e, &b).unwrap();
        assert_eq!(p.order(), 8);
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(p.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn order_cap_enforced() {
        assert!(Group::cyclic(1025).is_err());
        let a = Group::cyclic(64).unwrap();
        let b = Group::cyclic(64).unwrap();
        let p = Group::direct_product(&a, &b);
        assert!(matches!(p, Err(Error::OrderCap { order: 4096, .. })));
    }

    #[test]
    fn element_order_divides_group_order() {
        for spec in [Group::dihedral(12).unwrap(), Group::cyclic(24).unwrap()] {
            for x in 0..spec.order() {
                assert_eq!(spec.order() % spec.element_order(x), 0);
            }
        }
    }
}
