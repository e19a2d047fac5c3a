//! The recursive triple model `(V, G, φ)`: ages, order-`k` spectra, and fully
//! enumerable 0-dimensional explicit models.
//!
//! A [`TripleNode`] records, per conjugacy class `[g]` of `G` and age stratum
//! `β`, the child triple `(V^⟨g⟩_β, C_G(g), φ)`. The identity class always
//! points back at the node itself, encoded by a marker so the tree stays
//! finite; recursion terminates because the spectrum order `k` strictly
//! decreases.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::group::{ConjugacyData, FiniteGroup, GroupError};
use crate::hodge::EquivariantHd;
use crate::rational::{CyclicRational, Rat};
use crate::ring::{Coord, GradingGroup, GroupElementTuple, GroupRingElement};

/// Tangent eigenvalue exponents `β₁..β_d` of a group element at a fixed
/// point, each in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AgeDatum(Vec<Rat>);

impl AgeDatum {
    pub fn new(exponents: Vec<Rat>) -> Self {
        assert!(
            exponents
                .iter()
                .all(|b| *b >= Rat::from_integer(0) && *b < Rat::from_integer(1)),
            "age exponents must lie in [0, 1)"
        );
        AgeDatum(exponents)
    }

    /// `age_x(g) = Σ βᵢ`.
    pub fn age(&self) -> Rat {
        self.0.iter().sum()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrbifoldError {
    /// Requested spectrum order exceeds the node's available depth.
    Depth { needed: usize, available: usize },
    /// A structural invariant of the node tree is violated.
    Structure(&'static str),
    /// The automorphism does not commute with the group action.
    Commutation,
    /// The action map is not a group homomorphism.
    NotAnAction,
    /// Requested subgroup order does not divide the model order.
    NonDivisor,
    Group(GroupError),
}

impl fmt::Display for OrbifoldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbifoldError::Depth { needed, available } => write!(
                f,
                "spectrum order {needed} exceeds available recursion depth {available}"
            ),
            OrbifoldError::Structure(s) => write!(f, "invalid triple model: {s}"),
            OrbifoldError::Commutation => f.write_str("automorphism does not commute with the action"),
            OrbifoldError::NotAnAction => f.write_str("action is not a group homomorphism"),
            OrbifoldError::NonDivisor => f.write_str("subgroup order must divide the model order"),
            OrbifoldError::Group(g) => write!(f, "{g}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OrbifoldError {}

impl From<GroupError> for OrbifoldError {
    fn from(g: GroupError) -> Self {
        OrbifoldError::Group(g)
    }
}

/// Dimension of the underlying manifold, or `Mixed` for formal sums.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dimension {
    Pure(u32),
    Mixed,
}

/// A child stratum entry: either the node itself (the identity class) or a
/// genuine sub-triple.
#[derive(Clone, Debug)]
pub enum Child {
    SelfMarker,
    Node(Box<TripleNode>),
}

/// The recursive fixed-point datum of a triple `(V, G, φ)`.
#[derive(Clone, Debug)]
pub struct TripleNode {
    dim: Dimension,
    group: FiniteGroup,
    conjugacy: ConjugacyData,
    quotient_hodge: EquivariantHd,
    children: BTreeMap<(usize, Rat), Child>,
    depth: usize,
}

impl TripleNode {
    /// Builds and validates a node. `children` maps `(class index, β)` to the
    /// child triple; the identity class entry must be the self marker at
    /// `β = 0` and is inserted automatically when absent.
    pub fn new(
        dim: Dimension,
        group: FiniteGroup,
        quotient_hodge: EquivariantHd,
        mut children: BTreeMap<(usize, Rat), Child>,
        depth: usize,
    ) -> Result<Self, OrbifoldError> {
        let conjugacy = group.conjugacy_classes();
        let identity_class = conjugacy.class_of[group.identity()];
        children
            .entry((identity_class, Rat::from_integer(0)))
            .or_insert(Child::SelfMarker);
        for ((class, beta), child) in &children {
            if *class >= conjugacy.classes.len() {
                return Err(OrbifoldError::Structure("child class index out of range"));
            }
            if *beta < Rat::from_integer(0) {
                return Err(OrbifoldError::Structure("negative age stratum"));
            }
            if let Dimension::Pure(0) = dim {
                if *beta != Rat::from_integer(0) {
                    return Err(OrbifoldError::Structure("0-dimensional strata must have age 0"));
                }
            }
            if *class == identity_class {
                if *beta != Rat::from_integer(0) || !matches!(child, Child::SelfMarker) {
                    return Err(OrbifoldError::Structure(
                        "identity class must have the single self entry at age 0",
                    ));
                }
            } else {
                match child {
                    Child::SelfMarker => {
                        return Err(OrbifoldError::Structure(
                            "self marker is only allowed on the identity class",
                        ))
                    }
                    Child::Node(node) => {
                        if node.group.order() != conjugacy.centralizers[*class].len() {
                            return Err(OrbifoldError::Structure(
                                "child group order differs from the centralizer order",
                            ));
                        }
                        if node.depth + 1 < depth {
                            return Err(OrbifoldError::Structure(
                                "child depth is too shallow for the declared depth",
                            ));
                        }
                    }
                }
            }
        }
        let identity_entries = children.keys().filter(|(c, _)| *c == identity_class).count();
        if identity_entries != 1 {
            return Err(OrbifoldError::Structure(
                "identity class must have exactly one stratum",
            ));
        }
        Ok(TripleNode {
            dim,
            group,
            conjugacy,
            quotient_hodge,
            children,
            depth,
        })
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn conjugacy(&self) -> &ConjugacyData {
        &self.conjugacy
    }

    pub fn quotient_hodge(&self) -> &EquivariantHd {
        &self.quotient_hodge
    }

    pub fn children(&self) -> &BTreeMap<(usize, Rat), Child> {
        &self.children
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    fn check_depth(&self, k: usize) -> Result<(), OrbifoldError> {
        if k > self.depth {
            Err(OrbifoldError::Depth {
                needed: k,
                available: self.depth,
            })
        } else {
            Ok(())
        }
    }

    /// The order-`k` equivariant Hodge–Deligne polynomial `e^{(k)}`:
    /// `e^{(0)}` is the quotient class, and
    /// `e^{(k)} = Σ_{[g],β} e^{(k-1)}(child)·(uv)^β`.
    pub fn e_k(&self, k: usize) -> Result<EquivariantHd, OrbifoldError> {
        self.check_depth(k)?;
        if k == 0 {
            return Ok(self.quotient_hodge.clone());
        }
        let mut total = EquivariantHd::zero();
        for ((_, beta), child) in &self.children {
            let inner = match child {
                Child::SelfMarker => self.e_k(k - 1)?,
                Child::Node(node) => node.e_k(k - 1)?,
            };
            total = total
                .try_add(&inner.shift_uv(*beta))
                .expect("same ring");
        }
        Ok(total)
    }

    fn spectrum_rec(
        &self,
        k: usize,
        sig: &GradingGroup,
        base: &dyn Fn(&EquivariantHd) -> GroupRingElement,
        marker: &dyn Fn(Rat) -> GroupElementTuple,
    ) -> Result<GroupRingElement, OrbifoldError> {
        self.check_depth(k)?;
        if k == 0 {
            return Ok(base(&self.quotient_hodge));
        }
        let mut total = GroupRingElement::zero(sig.clone());
        for ((_, beta), child) in &self.children {
            let inner = match child {
                Child::SelfMarker => self.spectrum_rec(k - 1, sig, base, marker)?,
                Child::Node(node) => node.spectrum_rec(k - 1, sig, base, marker)?,
            };
            total = total
                .try_add(&inner.mul_tuple(&marker(*beta)))
                .expect("same ring");
        }
        Ok(total)
    }

    /// The order-`k` spectrum in ℤ[ℚ], base case `hsp(V/G, φ̂)`. Order 1 is
    /// the orbifold spectrum.
    pub fn hsp_k(&self, k: usize) -> Result<GroupRingElement, OrbifoldError> {
        self.spectrum_rec(
            k,
            &GradingGroup::spectrum(),
            &|e| e.to_hsp(),
            &|beta| GroupElementTuple::new(alloc::vec![Coord::Rational(beta)]),
        )
    }

    /// The order-`k` pair spectrum in ℤ[ℚ/ℤ×ℚ], with marker `{(0, β)}`.
    pub fn hsp2_k(&self, k: usize) -> Result<GroupRingElement, OrbifoldError> {
        self.spectrum_rec(
            k,
            &GradingGroup::pair(),
            &|e| e.to_pair(),
            &|beta| {
                GroupElementTuple::new(alloc::vec![
                    Coord::Cyclic(CyclicRational::zero()),
                    Coord::Rational(beta),
                ])
            },
        )
    }

    /// The order-`k` triple spectrum in ℤ[ℚ/ℤ×ℚ×ℚ], with marker `{(0,β,β)}`.
    /// Coincides with `e_k` under the tuple encoding.
    pub fn hsp3_k(&self, k: usize) -> Result<GroupRingElement, OrbifoldError> {
        Ok(self.e_k(k)?.into_value())
    }
}

/// A finite set with a `G`-action and a commuting automorphism `φ`: the fully
/// enumerable 0-dimensional model.
#[derive(Clone, Debug)]
pub struct ExplicitGSet {
    points: usize,
    group: FiniteGroup,
    /// One permutation (image vector) per group element.
    action: Vec<Vec<usize>>,
    phi: Vec<usize>,
}

impl ExplicitGSet {
    pub fn new(
        points: usize,
        group: FiniteGroup,
        action: Vec<Vec<usize>>,
        phi: Vec<usize>,
    ) -> Result<Self, OrbifoldError> {
        if action.len() != group.order() {
            return Err(OrbifoldError::NotAnAction);
        }
        for perm in action.iter().chain(core::iter::once(&phi)) {
            if !is_permutation(perm, points) {
                return Err(OrbifoldError::NotAnAction);
            }
        }
        if action[group.identity()] != (0..points).collect::<Vec<_>>() {
            return Err(OrbifoldError::NotAnAction);
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                for x in 0..points {
                    if action[gh][x] != action[g][action[h][x]] {
                        return Err(OrbifoldError::NotAnAction);
                    }
                }
            }
        }
        for g in 0..group.order() {
            for x in 0..points {
                if phi[action[g][x]] != action[g][phi[x]] {
                    return Err(OrbifoldError::Commutation);
                }
            }
        }
        Ok(ExplicitGSet {
            points,
            group,
            action,
            phi,
        })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    /// The class of the quotient `X/G` with its induced automorphism: each
    /// `φ̂`-orbit of length `ℓ` contributes all `ℓ`-th roots of unity,
    /// `Σ_{j<ℓ} {(j/ℓ, 0, 0)}`.
    pub fn quotient_hodge(&self) -> EquivariantHd {
        let orbit_of = self.orbits();
        let norbits = orbit_of.iter().copied().max().map_or(0, |m| m + 1);
        // φ̂ on orbits
        let mut phi_hat = alloc::vec![usize::MAX; norbits];
        for x in 0..self.points {
            phi_hat[orbit_of[x]] = orbit_of[self.phi[x]];
        }
        let sig = GradingGroup::triple();
        let mut value = GroupRingElement::zero(sig.clone());
        let mut seen = alloc::vec![false; norbits];
        for start in 0..norbits {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut o = start;
            loop {
                seen[o] = true;
                len += 1;
                o = phi_hat[o];
                if o == start {
                    break;
                }
            }
            for j in 0..len {
                let tuple = crate::hodge::triple_tuple(
                    CyclicRational::new(Rat::new(j as i64, len as i64)),
                    Rat::from_integer(0),
                    Rat::from_integer(0),
                );
                let term = GroupRingElement::single(sig.clone(), tuple).expect("valid");
                value = value.try_add(&term).expect("same ring");
            }
        }
        EquivariantHd::new(value).expect("quotient classes have zero Hodge grading")
    }

    fn orbits(&self) -> Vec<usize> {
        let mut orbit_of = alloc::vec![usize::MAX; self.points];
        let mut next = 0usize;
        for x in 0..self.points {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            for g in 0..self.group.order() {
                orbit_of[self.action[g][x]] = next;
            }
            next += 1;
        }
        orbit_of
    }

    /// Counts orbits of the full group on the point set.
    pub fn orbit_count(&self) -> usize {
        self.orbits().iter().copied().max().map_or(0, |m| m + 1)
    }

    /// The sub-model on the fixed points of class representative `g`, acted
    /// on by the centralizer `C_G(g)` with the restricted automorphism.
    fn fixed_submodel(&self, rep: usize, centralizer: &[usize]) -> Option<ExplicitGSet> {
        let fixed: Vec<usize> = (0..self.points)
            .filter(|&x| self.action[rep][x] == x)
            .collect();
        if fixed.is_empty() {
            return None;
        }
        let mut pos = alloc::vec![usize::MAX; self.points];
        for (i, &x) in fixed.iter().enumerate() {
            pos[x] = i;
        }
        let subgroup = self.group.subgroup(centralizer).expect("centralizer is a subgroup");
        let action: Vec<Vec<usize>> = centralizer
            .iter()
            .map(|&c| fixed.iter().map(|&x| pos[self.action[c][x]]).collect())
            .collect();
        let phi: Vec<usize> = fixed.iter().map(|&x| pos[self.phi[x]]).collect();
        Some(
            ExplicitGSet::new(fixed.len(), subgroup, action, phi)
                .expect("restriction of a valid model is valid"),
        )
    }

    /// Builds the recursive triple node of this model, with all ages 0.
    pub fn to_node(&self, depth: usize) -> TripleNode {
        let conj = self.group.conjugacy_classes();
        let identity_class = conj.class_of[self.group.identity()];
        let mut children = BTreeMap::new();
        children.insert((identity_class, Rat::from_integer(0)), Child::SelfMarker);
        if depth >= 1 {
            for class in 0..conj.classes.len() {
                if class == identity_class {
                    continue;
                }
                if let Some(sub) = self.fixed_submodel(conj.representatives[class], &conj.centralizers[class])
                {
                    children.insert(
                        (class, Rat::from_integer(0)),
                        Child::Node(Box::new(sub.to_node(depth - 1))),
                    );
                }
            }
        }
        TripleNode::new(
            Dimension::Pure(0),
            self.group.clone(),
            self.quotient_hodge(),
            children,
            depth,
        )
        .expect("explicit models produce valid nodes")
    }

    /// Direct enumeration of `Σ_{[g]} #orbits(C_G(g) on V^⟨g⟩)`, the orbifold
    /// Euler characteristic count, independent of the spectrum recursion.
    pub fn orbifold_euler_count(&self) -> usize {
        let conj = self.group.conjugacy_classes();
        let mut total = 0;
        for class in 0..conj.classes.len() {
            if let Some(sub) =
                self.fixed_submodel(conj.representatives[class], &conj.centralizers[class])
            {
                total += sub.orbit_count();
            }
        }
        total
    }
}

fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = alloc::vec![false; n];
    for &x in perm {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// The 0-dimensional Milnor fibre model of `f = zᵃ`: `a` points cyclically
/// rotated by the monodromy, with `μ_m ⊆ μ_a` (`m` dividing `a`) acting by
/// rotation.
pub fn brieskorn_zero_dim(a: usize, subgroup_order: usize) -> Result<ExplicitGSet, OrbifoldError> {
    if a == 0 || subgroup_order == 0 || a % subgroup_order != 0 {
        return Err(OrbifoldError::NonDivisor);
    }
    let group = FiniteGroup::cyclic(subgroup_order);
    let step = a / subgroup_order;
    let action: Vec<Vec<usize>> = (0..subgroup_order)
        .map(|t| (0..a).map(|x| (x + t * step) % a).collect())
        .collect();
    let phi: Vec<usize> = (0..a).map(|x| (x + 1) % a).collect();
    ExplicitGSet::new(a, group, action, phi)
}
