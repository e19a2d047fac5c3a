//! Finite groups as multiplication tables, conjugacy classes, centralizers,
//! and materialized wreath products `G ≀ Sₙ` at desk scale.

use alloc::vec::Vec;
use core::fmt;

/// Maximum order of a materialized wreath product.
pub const WREATH_ORDER_BOUND: usize = 20736;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupError {
    /// The multiplication table is not a group.
    NotAGroup,
    /// A wreath product would exceed [`WREATH_ORDER_BOUND`].
    SizeBound,
    /// A subset of element indices is not closed under multiplication.
    NotASubgroup,
    /// An element index is out of range.
    BadIndex,
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NotAGroup => f.write_str("multiplication table is not a group"),
            GroupError::SizeBound => f.write_str("wreath product exceeds the size bound"),
            GroupError::NotASubgroup => f.write_str("element subset is not a subgroup"),
            GroupError::BadIndex => f.write_str("element index out of range"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for GroupError {}

/// A finite group given by its full multiplication table over element indices
/// `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<u32>,
}

impl FiniteGroup {
    /// Builds a group from a flattened row-major table, verifying the group
    /// axioms (latin square, identity, inverses, associativity).
    pub fn from_table(order: usize, table: Vec<u32>) -> Result<Self, GroupError> {
        if order == 0 || table.len() != order * order {
            return Err(GroupError::NotAGroup);
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(GroupError::NotAGroup);
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        // latin square
        for a in 0..order {
            let mut row = alloc::vec![false; order];
            let mut col = alloc::vec![false; order];
            for b in 0..order {
                if row[at(a, b)] || col[at(b, a)] {
                    return Err(GroupError::NotAGroup);
                }
                row[at(a, b)] = true;
                col[at(b, a)] = true;
            }
        }
        // two-sided identity
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(GroupError::NotAGroup)?;
        // inverses
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(GroupError::NotAGroup)?;
            inverses.push(inv as u32);
        }
        // associativity
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAGroup);
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverses,
        })
    }

    /// Builds from a table known to be a group (internal constructions).
    fn from_table_unchecked(order: usize, table: Vec<u32>, identity: usize) -> Self {
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        let inverses = (0..order)
            .map(|a| (0..order).find(|&b| at(a, b) == identity).unwrap() as u32)
            .collect();
        FiniteGroup {
            order,
            table,
            identity,
            inverses,
        }
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            table: alloc::vec![0],
            identity: 0,
            inverses: alloc::vec![0],
        }
    }

    /// The cyclic group of order `n`, with `i·j = i+j mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(((a + b) % n) as u32);
            }
        }
        Self::from_table_unchecked(n, table, 0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        // h^{-1} g h
        self.mul(self.mul(self.inv(h), g), h)
    }

    /// Conjugacy classes, class representatives, and centralizers.
    pub fn conjugacy_classes(&self) -> ConjugacyData {
        let mut class_of = alloc::vec![usize::MAX; self.order];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut representatives = Vec::new();
        let mut centralizers = Vec::new();
        for g in 0..self.order {
            if class_of[g] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut class = Vec::new();
            for h in 0..self.order {
                let c = self.conjugate(h, g);
                if class_of[c] == usize::MAX {
                    class_of[c] = idx;
                    class.push(c);
                }
            }
            class.sort_unstable();
            let centralizer: Vec<usize> = (0..self.order)
                .filter(|&h| self.conjugate(h, g) == g)
                .collect();
            representatives.push(g);
            centralizers.push(centralizer);
            classes.push(class);
        }
        ConjugacyData {
            classes,
            representatives,
            centralizers,
            class_of,
        }
    }

    /// The subgroup spanned by the given (closed) element subset, as a group
    /// in its own right. Returns the group together with the index map from
    /// new indices to old ones (which is just `elements` itself).
    pub fn subgroup(&self, elements: &[usize]) -> Result<FiniteGroup, GroupError> {
        let n = elements.len();
        let mut pos = alloc::vec![usize::MAX; self.order];
        for (i, &e) in elements.iter().enumerate() {
            if e >= self.order {
                return Err(GroupError::BadIndex);
            }
            pos[e] = i;
        }
        let mut table = Vec::with_capacity(n * n);
        for &a in elements {
            for &b in elements {
                let p = pos[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(GroupError::NotASubgroup);
                }
                table.push(p as u32);
            }
        }
        let identity = pos[self.identity];
        if identity == usize::MAX {
            return Err(GroupError::NotASubgroup);
        }
        Ok(FiniteGroup::from_table_unchecked(n, table, identity))
    }
}

/// Conjugacy-class data of a finite group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConjugacyData {
    /// Sorted element lists, one per class.
    pub classes: Vec<Vec<usize>>,
    /// One representative per class (the minimal unvisited element).
    pub representatives: Vec<usize>,
    /// Centralizer element lists, one per class representative.
    pub centralizers: Vec<Vec<usize>>,
    /// Class index of each group element.
    pub class_of: Vec<usize>,
}

/// A wreath product `G ≀ Sₙ = Gⁿ ⋊ Sₙ`, fully materialized.
///
/// Elements are pairs `(g⃗, σ)`, indexed as `gvec_index · n! + perm_index`
/// with `g⃗` in base-`|G|` lexicographic order and `σ` in lexicographic
/// order. Multiplication follows `(g⃗,σ)(h⃗,τ) = (g⃗·σ(h⃗), στ)` where
/// `(σ(h⃗))_i = h_{σ⁻¹(i)}`.
#[derive(Clone, Debug)]
pub struct WreathGroup {
    base: FiniteGroup,
    base_conjugacy: ConjugacyData,
    degree: usize,
    perms: Vec<Vec<usize>>,
    group: FiniteGroup,
}

impl WreathGroup {
    pub fn new(base: &FiniteGroup, degree: usize) -> Result<Self, GroupError> {
        assert!(degree >= 1);
        let fact: usize = (1..=degree).product();
        let order = base
            .order()
            .checked_pow(degree as u32)
            .and_then(|p| p.checked_mul(fact))
            .ok_or(GroupError::SizeBound)?;
        if order > WREATH_ORDER_BOUND {
            return Err(GroupError::SizeBound);
        }
        let perms = permutations(degree);
        let wreath = WreathBuilder {
            base,
            degree,
            perms: &perms,
            fact,
        };
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            let (ga, sa) = wreath.decode(a);
            for b in 0..order {
                let (gb, sb) = wreath.decode(b);
                table.push(wreath.encode(&wreath.mul(&ga, sa, &gb, sb)) as u32);
            }
        }
        let identity = wreath.encode(&(alloc::vec![base.identity(); degree], 0));
        let group = FiniteGroup::from_table_unchecked(order, table, identity);
        Ok(WreathGroup {
            base: base.clone(),
            base_conjugacy: base.conjugacy_classes(),
            degree,
            perms,
            group,
        })
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The wreath product as a plain multiplication-table group.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Decodes an element index into `(g⃗, σ)`.
    pub fn element(&self, idx: usize) -> (Vec<usize>, &[usize]) {
        let b = self.builder();
        let (g, s) = b.decode(idx);
        (g, &self.perms[s])
    }

    /// Encodes `(g⃗, σ)` (σ given by its images) into an element index.
    pub fn index_of(&self, gvec: &[usize], sigma: &[usize]) -> usize {
        let b = self.builder();
        let s = self
            .perms
            .iter()
            .position(|p| p == sigma)
            .expect("valid permutation");
        b.encode(&(gvec.to_vec(), s))
    }

    fn builder(&self) -> WreathBuilder<'_> {
        WreathBuilder {
            base: &self.base,
            degree: self.degree,
            perms: &self.perms,
            fact: self.perms.len(),
        }
    }

    /// The classical conjugacy invariant of a wreath element: for each cycle
    /// of `σ`, the base conjugacy class of the twisted cycle product
    /// `g_{i_r}···g_{i_1}`, tallied by `(class, cycle length)`.
    pub fn class_type(&self, idx: usize) -> alloc::collections::BTreeMap<(usize, usize), usize> {
        let (gvec, sigma) = self.element(idx);
        let mut out = alloc::collections::BTreeMap::new();
        let mut seen = alloc::vec![false; self.degree];
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut product = self.base.identity();
            let mut i = start;
            let mut len = 0;
            loop {
                seen[i] = true;
                len += 1;
                // product accumulates g_{i_r}···g_{i_1} along the cycle
                product = self.base.mul(gvec[i], product);
                i = sigma[i];
                if i == start {
                    break;
                }
            }
            let class = self.base_conjugacy.class_of[product];
            *out.entry((class, len)).or_insert(0) += 1;
        }
        out
    }
}

struct WreathBuilder<'a> {
    base: &'a FiniteGroup,
    degree: usize,
    perms: &'a [Vec<usize>],
    fact: usize,
}

impl WreathBuilder<'_> {
    fn decode(&self, idx: usize) -> (Vec<usize>, usize) {
        let s = idx % self.fact;
        let mut g = idx / self.fact;
        let mut gvec = alloc::vec![0usize; self.degree];
        for i in (0..self.degree).rev() {
            gvec[i] = g % self.base.order();
            g /= self.base.order();
        }
        (gvec, s)
    }

    fn encode(&self, elt: &(Vec<usize>, usize)) -> usize {
        let mut g = 0usize;
        for &gi in &elt.0 {
            g = g * self.base.order() + gi;
        }
        g * self.fact + elt.1
    }

    fn mul(
        &self,
        ga: &[usize],
        sa: usize,
        gb: &[usize],
        sb: usize,
    ) -> (Vec<usize>, usize) {
        let pa = &self.perms[sa];
        let pb = &self.perms[sb];
        // στ: (στ)(i) = σ(τ(i))
        let comp: Vec<usize> = (0..self.degree).map(|i| pa[pb[i]]).collect();
        let s = self.perms.iter().position(|p| p == &comp).unwrap();
        // inverse of σ for the semidirect twist
        let mut pa_inv = alloc::vec![0usize; self.degree];
        for (i, &j) in pa.iter().enumerate() {
            pa_inv[j] = i;
        }
        let gvec: Vec<usize> = (0..self.degree)
            .map(|i| self.base.mul(ga[i], gb[pa_inv[i]]))
            .collect();
        (gvec, s)
    }
}

/// All permutations of `0..n` (as image vectors), in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}
