//! The group ring ℤ[A] of an abelian grading group A, with canonical forms.
//!
//! Elements are finite sums `Σ kₐ{a}` with integer coefficients, multiplied
//! by `{a}·{b} = {a+b}` extended bilinearly. The grading group is fixed per
//! ring instance as an ordered signature of coordinate kinds, so elements of
//! different rings can never be combined silently.

use alloc::collections::BTreeMap;

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{rat_to_string, CyclicRational, Rat};

/// The kind of one coordinate of a grading group.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CoordKind {
    /// A coordinate in ℚ/ℤ (eigenvalue exponents).
    Cyclic,
    /// A coordinate in ℚ (Hodge gradings, ages).
    Rational,
    /// A coordinate in ℤ.
    Integer,
}

/// An abelian grading group, given as an ordered list of coordinate kinds.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GradingGroup(Vec<CoordKind>);

impl GradingGroup {
    pub fn new(kinds: Vec<CoordKind>) -> Self {
        GradingGroup(kinds)
    }

    /// ℚ — the ring of the (Hodge) spectrum.
    pub fn spectrum() -> Self {
        GradingGroup(alloc::vec![CoordKind::Rational])
    }

    /// ℚ/ℤ × ℚ — the ring of the pair spectrum.
    pub fn pair() -> Self {
        GradingGroup(alloc::vec![CoordKind::Cyclic, CoordKind::Rational])
    }

    /// ℚ/ℤ × ℚ × ℚ — the ring of the triple spectrum and of equivariant
    /// Hodge–Deligne polynomials.
    pub fn triple() -> Self {
        GradingGroup(alloc::vec![
            CoordKind::Cyclic,
            CoordKind::Rational,
            CoordKind::Rational,
        ])
    }

    /// ℚ/ℤ alone.
    pub fn cyclic() -> Self {
        GradingGroup(alloc::vec![CoordKind::Cyclic])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn kinds(&self) -> &[CoordKind] {
        &self.0
    }

    /// The signature obtained by keeping the listed coordinates (used by
    /// projections).
    pub fn subset(&self, keep: &[usize]) -> Result<Self, RingError> {
        let mut kinds = Vec::with_capacity(keep.len());
        let mut last: Option<usize> = None;
        for &i in keep {
            if i >= self.0.len() || last.map_or(false, |l| i <= l) {
                return Err(RingError::InvalidProjection);
            }
            last = Some(i);
            kinds.push(self.0[i]);
        }
        Ok(GradingGroup(kinds))
    }
}

/// One coordinate value of a group element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Coord {
    Cyclic(CyclicRational),
    Rational(Rat),
    Integer(i64),
}

impl Coord {
    pub fn kind(self) -> CoordKind {
        match self {
            Coord::Cyclic(_) => CoordKind::Cyclic,
            Coord::Rational(_) => CoordKind::Rational,
            Coord::Integer(_) => CoordKind::Integer,
        }
    }

    pub fn zero(kind: CoordKind) -> Self {
        match kind {
            CoordKind::Cyclic => Coord::Cyclic(CyclicRational::zero()),
            CoordKind::Rational => Coord::Rational(Rat::zero()),
            CoordKind::Integer => Coord::Integer(0),
        }
    }

    fn add(self, other: Coord) -> Coord {
        match (self, other) {
            (Coord::Cyclic(a), Coord::Cyclic(b)) => Coord::Cyclic(a.add(b)),
            (Coord::Rational(a), Coord::Rational(b)) => Coord::Rational(a + b),
            (Coord::Integer(a), Coord::Integer(b)) => Coord::Integer(a + b),
            _ => panic!("coordinate kind mismatch"),
        }
    }

    fn scale(self, s: i64) -> Coord {
        match self {
            Coord::Cyclic(a) => Coord::Cyclic(a.scale(s)),
            Coord::Rational(a) => Coord::Rational(a * Rat::from_integer(s)),
            Coord::Integer(a) => Coord::Integer(a * s),
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Cyclic(a) => write!(f, "{a}"),
            Coord::Rational(a) => f.write_str(&rat_to_string(*a)),
            Coord::Integer(a) => write!(f, "{a}"),
        }
    }
}

/// An element of a grading group: one canonical coordinate per signature slot.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElementTuple(Vec<Coord>);

impl GroupElementTuple {
    pub fn new(coords: Vec<Coord>) -> Self {
        GroupElementTuple(coords)
    }

    pub fn zero(sig: &GradingGroup) -> Self {
        GroupElementTuple(sig.kinds().iter().map(|&k| Coord::zero(k)).collect())
    }

    pub fn coords(&self) -> &[Coord] {
        &self.0
    }

    pub fn matches(&self, sig: &GradingGroup) -> bool {
        self.0.len() == sig.len()
            && self.0.iter().zip(sig.kinds()).all(|(c, &k)| c.kind() == k)
    }

    /// Componentwise sum.
    pub fn add(&self, other: &GroupElementTuple) -> GroupElementTuple {
        debug_assert_eq!(self.0.len(), other.0.len());
        GroupElementTuple(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.add(b))
                .collect(),
        )
    }

    /// Multiplies every coordinate by the integer `s`.
    pub fn scale(&self, s: i64) -> GroupElementTuple {
        GroupElementTuple(self.0.iter().map(|&c| c.scale(s)).collect())
    }

    pub fn project(&self, keep: &[usize]) -> GroupElementTuple {
        GroupElementTuple(keep.iter().map(|&i| self.0[i]).collect())
    }
}

impl fmt::Display for GroupElementTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Errors from group-ring construction and arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RingError {
    /// The operands belong to rings with different grading signatures.
    SignatureMismatch,
    /// A tuple does not match the ring signature.
    InvalidTuple,
    /// A projection index set is not a strictly increasing coordinate subset.
    InvalidProjection,
    /// A negative coefficient where an effective class was required.
    NotEffective,
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::SignatureMismatch => f.write_str("grading signature mismatch"),
            RingError::InvalidTuple => f.write_str("tuple does not match ring signature"),
            RingError::InvalidProjection => f.write_str("invalid coordinate subset"),
            RingError::NotEffective => f.write_str("element has a negative coefficient"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RingError {}

/// An element of ℤ[A]: a finite integer combination `Σ kₐ{a}` of group
/// elements. Zero coefficients are never stored; terms are kept in canonical
/// lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupRingElement {
    sig: GradingGroup,
    terms: BTreeMap<GroupElementTuple, BigInt>,
}

impl GroupRingElement {
    pub fn zero(sig: GradingGroup) -> Self {
        GroupRingElement {
            sig,
            terms: BTreeMap::new(),
        }
    }

    /// The ring unit `{0}`.
    pub fn one(sig: GradingGroup) -> Self {
        let t = GroupElementTuple::zero(&sig);
        Self::term(sig, t, BigInt::one()).expect("zero tuple matches its own signature")
    }

    /// A single term `k{a}`.
    pub fn term(
        sig: GradingGroup,
        tuple: GroupElementTuple,
        coeff: BigInt,
    ) -> Result<Self, RingError> {
        if !tuple.matches(&sig) {
            return Err(RingError::InvalidTuple);
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(tuple, coeff);
        }
        Ok(GroupRingElement { sig, terms })
    }

    /// `{a}` with coefficient one.
    pub fn single(sig: GradingGroup, tuple: GroupElementTuple) -> Result<Self, RingError> {
        Self::term(sig, tuple, BigInt::one())
    }

    pub fn from_terms<I>(sig: GradingGroup, terms: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (GroupElementTuple, BigInt)>,
    {
        let mut out = Self::zero(sig);
        for (t, k) in terms {
            if !t.matches(&out.sig) {
                return Err(RingError::InvalidTuple);
            }
            out.add_term(t, k);
        }
        Ok(out)
    }

    pub fn signature(&self) -> &GradingGroup {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElementTuple, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, tuple: &GroupElementTuple) -> BigInt {
        self.terms.get(tuple).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one(self.sig.clone())
    }

    /// True when every coefficient is nonnegative, i.e. the element is the
    /// class of an actual finite labeled set.
    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|k| !k.is_negative())
    }

    fn add_term(&mut self, tuple: GroupElementTuple, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(tuple);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        if self.sig != other.sig {
            return Err(RingError::SignatureMismatch);
        }
        let mut out = self.clone();
        for (t, k) in &other.terms {
            out.add_term(t.clone(), k.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.try_add(&other.negate())
    }

    /// Convolution product: `{a}·{b} = {a+b}` extended bilinearly.
    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        if self.sig != other.sig {
            return Err(RingError::SignatureMismatch);
        }
        let mut out = Self::zero(self.sig.clone());
        for (a, ka) in &self.terms {
            for (b, kb) in &other.terms {
                out.add_term(a.add(b), ka * kb);
            }
        }
        Ok(out)
    }

    pub fn negate(&self) -> Self {
        GroupRingElement {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(t, k)| (t.clone(), -k)).collect(),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.sig.clone());
        }
        GroupRingElement {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.clone(), c * k)).collect(),
        }
    }

    /// Translation by a single group element: multiplication by `{t}`.
    pub fn mul_tuple(&self, tuple: &GroupElementTuple) -> Self {
        debug_assert!(tuple.matches(&self.sig));
        GroupRingElement {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (t.add(tuple), k.clone()))
                .collect(),
        }
    }

    /// The augmentation ℤ[A] → ℤ, the sum of all coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The label-scaling ring endomorphism `σ_s : {a} ↦ {s·a}`.
    pub fn adams_twist(&self, s: i64) -> Self {
        assert!(s >= 1, "adams twist level must be positive");
        let mut out = Self::zero(self.sig.clone());
        for (t, k) in &self.terms {
            out.add_term(t.scale(s), k.clone());
        }
        out
    }

    /// The ring homomorphism induced by the group projection onto the listed
    /// coordinate subset (strictly increasing indices). Keeping no coordinate
    /// reduces to the augmentation.
    pub fn project(&self, keep: &[usize]) -> Result<Self, RingError> {
        let sub = self.sig.subset(keep)?;
        let mut out = Self::zero(sub);
        for (t, k) in &self.terms {
            out.add_term(t.project(keep), k.clone());
        }
        Ok(out)
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, other: &GroupRingElement) -> GroupRingElement {
        self.try_add(other).expect("group ring addition")
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, other: &GroupRingElement) -> GroupRingElement {
        self.try_sub(other).expect("group ring subtraction")
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, other: &GroupRingElement) -> GroupRingElement {
        self.try_mul(other).expect("group ring multiplication")
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.negate()
    }
}

impl fmt::Display for GroupRingElement {
    /// Canonical text form: terms in lexicographic order, each as
    /// `coeff*(c1,c2,...)`, e.g. `2*(0) + 1*(1/2)`. Bit-exact in reports and
    /// golden files.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, k)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{k}*{t}")?;
        }
        Ok(())
    }
}

/// The class of a pair `(X, ψ)`: a finite multiset of group elements, i.e. a
/// group-ring element with nonnegative coefficients. These classes form the
/// semiring whose Grothendieck ring is ℤ[A].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EffectiveMapClass(GroupRingElement);

impl EffectiveMapClass {
    pub fn new(elt: GroupRingElement) -> Result<Self, RingError> {
        if elt.is_effective() {
            Ok(EffectiveMapClass(elt))
        } else {
            Err(RingError::NotEffective)
        }
    }

    pub fn empty(sig: GradingGroup) -> Self {
        EffectiveMapClass(GroupRingElement::zero(sig))
    }

    pub fn as_ring(&self) -> &GroupRingElement {
        &self.0
    }

    pub fn into_ring(self) -> GroupRingElement {
        self.0
    }

    pub fn signature(&self) -> &GradingGroup {
        self.0.signature()
    }

    /// The underlying points of `X`, each label repeated with its
    /// multiplicity. Multiplicities must fit in a machine word.
    pub fn points(&self) -> Vec<GroupElementTuple> {
        let mut out = Vec::new();
        for (t, k) in self.0.terms() {
            let k: u64 = k.try_into().expect("effective multiplicity fits in u64");
            for _ in 0..k {
                out.push(t.clone());
            }
        }
        out
    }

    pub fn size(&self) -> BigInt {
        self.0.augmentation()
    }
}

impl fmt::Display for EffectiveMapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
