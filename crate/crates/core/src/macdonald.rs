//! Verification of the Macdonald-type identities: the right-hand sides are
//! expanded through the power structure, the left-hand sides are built by
//! independent means (a graded-symmetric-algebra oracle for symmetric powers,
//! brute-force wreath enumeration for 0-dimensional triples, and a derived
//! combinatorial rule for the one positive-dimensional fixture), and the two
//! are compared degree by degree.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::group::WreathGroup;
use crate::hodge::{triple_tuple, EquivariantHd, MixedHodgeEigenDatum};
use crate::lambda::{expand_neg_power, power_expand, Mode};
use crate::orbifold::{Child, Dimension, ExplicitGSet, OrbifoldError, TripleNode};
use crate::rational::{CyclicRational, Rat};
use crate::ring::{Coord, GradingGroup, GroupElementTuple, GroupRingElement};
use crate::series::{geometric, series_pow, TruncatedSeries};

/// Bound on the size of a materialized wreath-power point set.
pub const WREATH_POINT_BOUND: usize = 4096;

/// The two readings of the `(uv)`-exponent in the product formula: the
/// literal `rΠ·d/2`, or the reduced `(rΠ−1)·d/2` under which the `T¹`
/// coefficient matches the untwisted `n = 1` term.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ShiftConvention {
    PaperLiteral,
    Reduced,
}

impl ShiftConvention {
    /// The `(uv)`-exponent attached to a product tuple with `rΠ = r₁⋯r_k` in
    /// dimension `d`.
    pub fn exponent_shift(self, r_pi: usize, d: u32) -> Rat {
        let r = r_pi as i64;
        let d = d as i64;
        match self {
            ShiftConvention::PaperLiteral => Rat::new(r * d, 2),
            ShiftConvention::Reduced => Rat::new((r - 1) * d, 2),
        }
    }
}

impl fmt::Display for ShiftConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShiftConvention::PaperLiteral => "paper-literal",
            ShiftConvention::Reduced => "reduced",
        })
    }
}

/// One compared `T`-degree of a verification run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeRow {
    pub degree: usize,
    pub lhs: GroupRingElement,
    pub rhs: GroupRingElement,
}

impl DegreeRow {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// A per-degree verdict table for one identity on one fixture.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComparisonReport {
    pub theorem: String,
    pub fixture: String,
    pub truncation: usize,
    pub mode: Mode,
    pub shift: Option<ShiftConvention>,
    pub rows: Vec<DegreeRow>,
}

impl ComparisonReport {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(DegreeRow::equal)
    }

    /// The first mismatching degree, if any.
    pub fn first_mismatch(&self) -> Option<&DegreeRow> {
        self.rows.iter().find(|r| !r.equal())
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "# {}, fixture {}, N {}, mode {}",
            self.theorem, self.fixture, self.truncation, self.mode
        )?;
        if let Some(shift) = self.shift {
            write!(f, ", shift {shift}")?;
        }
        writeln!(f)?;
        for row in &self.rows {
            writeln!(
                f,
                "{}, {}, {}, {}",
                row.degree,
                row.lhs,
                row.rhs,
                if row.equal() { "equal" } else { "MISMATCH" }
            )?;
        }
        Ok(())
    }
}

/// The graded-symmetric-algebra oracle for `e(SⁿV, φ⁽ⁿ⁾)`: expand
/// `Π_{b even} (1 − m_b T)^{-1} · Π_{b odd} (1 − m_b T)` to order `n` and
/// take the `Tⁿ` coefficient, where each basis class contributes the
/// monomial `m_b = {(α, p, q)}` with multiplicity `dim`. Even-degree classes
/// are counted symmetrically (any number of repeats), odd-degree classes
/// exterior-style (at most once, with sign), which is exactly the factor
/// form above. Computed with no reference to the power structure.
pub fn sym_power_pair_oracle(data: &[MixedHodgeEigenDatum], n: usize) -> EquivariantHd {
    let sig = GradingGroup::triple();
    let mut series = TruncatedSeries::one(sig.clone(), n);
    for datum in data {
        let tuple = triple_tuple(
            datum.alpha,
            Rat::from_integer(datum.p as i64),
            Rat::from_integer(datum.q as i64),
        );
        let factor = if datum.k % 2 == 0 {
            geometric(&sig, &tuple, 1, n)
        } else {
            TruncatedSeries::binomial(sig.clone(), &tuple, 1, true, n)
        };
        series = &series * &series_pow(&factor, datum.dim);
    }
    EquivariantHd::new(series.coeff(n).clone()).expect("products of Hodge monomials are valid")
}

/// Verifies Eq. (1): the symmetric-power generating series of the oracle
/// equals `(1 − T)^{−e}` expanded through the power structure, degree by
/// degree to `T^N`.
pub fn verify_theorem1(data: &[MixedHodgeEigenDatum], fixture: &str, n_order: usize) -> ComparisonReport {
    let sig = GradingGroup::triple();
    let e = EquivariantHd::from_data(data);
    let base = geometric(&sig, &GroupElementTuple::zero(&sig), 1, n_order);
    let rhs = power_expand(&base, e.value(), Mode::Substitution, n_order);
    let rows = (0..=n_order)
        .map(|n| DegreeRow {
            degree: n,
            lhs: sym_power_pair_oracle(data, n).into_value(),
            rhs: rhs.coeff(n).clone(),
        })
        .collect();
    ComparisonReport {
        theorem: String::from("theorem 1"),
        fixture: String::from(fixture),
        truncation: n_order,
        mode: Mode::Substitution,
        shift: None,
        rows,
    }
}

/// Verifies the corollary of Eq. (1): both sides of a Theorem 1 fixture
/// projected to ℚ/ℤ×ℚ agree with the independently expanded pair-ring
/// series `(1 − T)^{−ē}`.
pub fn verify_corollary1(data: &[MixedHodgeEigenDatum], fixture: &str, n_order: usize) -> ComparisonReport {
    let pair = GradingGroup::pair();
    let e_bar = EquivariantHd::from_data(data).to_pair();
    let rhs = expand_neg_power(
        &GroupElementTuple::zero(&pair),
        1,
        &e_bar,
        Mode::Substitution,
        n_order,
    );
    let rows = (0..=n_order)
        .map(|n| DegreeRow {
            degree: n,
            lhs: sym_power_pair_oracle(data, n)
                .into_value()
                .project(&[0, 1])
                .expect("pair projection"),
            rhs: rhs.coeff(n).clone(),
        })
        .collect();
    ComparisonReport {
        theorem: String::from("corollary of theorem 1"),
        fixture: String::from(fixture),
        truncation: n_order,
        mode: Mode::Substitution,
        shift: None,
        rows,
    }
}

/// All exponent tuples `(r₁,…,r_k)` with `rΠ = r₁⋯r_k ≤ n`, returned as
/// `(rΠ, r₂·r₃²⋯r_k^{k−1})`.
fn product_tuples(k: usize, n: usize) -> Vec<(usize, BigInt)> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(k: usize, bound: usize, current: &mut Vec<usize>, out: &mut Vec<(usize, BigInt)>) {
        if current.len() == k {
            let r_pi: usize = current.iter().product();
            let mut mult = BigInt::from(1);
            for (i, &r) in current.iter().enumerate() {
                mult *= BigInt::from(r).pow(i as u32);
            }
            out.push((r_pi, mult));
            return;
        }
        let remaining: usize = current.iter().product();
        let mut r = 1;
        while remaining * r <= bound {
            current.push(r);
            rec(k, bound, current, out);
            current.pop();
            r += 1;
        }
    }
    rec(k, n, &mut current, &mut out);
    out
}

/// The generic product-formula right-hand side: over every tuple
/// `(r₁,…,r_k)` with `rΠ ≤ N`, the factor
/// `(1 − {marker(shift)}·T^{rΠ})^{−(r₂r₃²⋯r_k^{k−1})·e}`. `marker` embeds
/// the `(uv)`-shift into whichever grading ring `e` lives in; `k = 0`
/// degenerates to the single factor `(1 − T)^{−e}`.
pub fn rhs_expand_generic(
    e: &GroupRingElement,
    marker: &dyn Fn(Rat) -> GroupElementTuple,
    d: u32,
    k: usize,
    n_order: usize,
    shift: ShiftConvention,
    mode: Mode,
) -> TruncatedSeries {
    let sig = e.signature().clone();
    if k == 0 {
        return expand_neg_power(
            &GroupElementTuple::zero(&sig),
            1,
            e,
            Mode::Substitution,
            n_order,
        );
    }
    let mut out = TruncatedSeries::one(sig, n_order);
    for (r_pi, mult) in product_tuples(k, n_order) {
        let g = marker(shift.exponent_shift(r_pi, d));
        let exponent = e.scale_int(&mult);
        out = &out * &expand_neg_power(&g, r_pi, &exponent, mode, n_order);
    }
    out
}

/// The Eq. (3) right-hand side in the triple ring, with marker
/// `{(0, shift, shift)}`.
pub fn rhs_expand_theorem2(
    e: &EquivariantHd,
    d: u32,
    k: usize,
    n_order: usize,
    shift: ShiftConvention,
    mode: Mode,
) -> TruncatedSeries {
    rhs_expand_generic(
        e.value(),
        &|sh| triple_tuple(CyclicRational::zero(), sh, sh),
        d,
        k,
        n_order,
        shift,
        mode,
    )
}

/// The corollary right-hand side in the pair ring, with marker `{(0, shift)}`.
pub fn rhs_expand_corollary2(
    e_bar: &GroupRingElement,
    d: u32,
    k: usize,
    n_order: usize,
    shift: ShiftConvention,
    mode: Mode,
) -> TruncatedSeries {
    rhs_expand_generic(
        e_bar,
        &|sh| {
            GroupElementTuple::new(alloc::vec![
                Coord::Cyclic(CyclicRational::zero()),
                Coord::Rational(sh),
            ])
        },
        d,
        k,
        n_order,
        shift,
        mode,
    )
}

/// The `n`-th wreath power of an explicit 0-dimensional model: `Xⁿ` acted on
/// by `G≀Sₙ` via `(w·t)ᵢ = g_i · t_{σ⁻¹(i)}`, with `φ` componentwise.
pub fn wreath_power_set(x: &ExplicitGSet, n: usize) -> Result<ExplicitGSet, OrbifoldError> {
    assert!(n >= 1, "wreath powers start at n = 1");
    let wreath = WreathGroup::new(x.group(), n)?;
    let p = x.points();
    let mut np = 1usize;
    for _ in 0..n {
        np = np.saturating_mul(p);
        if np > WREATH_POINT_BOUND {
            return Err(OrbifoldError::Group(crate::group::GroupError::SizeBound));
        }
    }
    let decode = |mut t: usize| -> Vec<usize> {
        let mut digits = Vec::with_capacity(n);
        for _ in 0..n {
            digits.push(t % p);
            t /= p;
        }
        digits
    };
    let encode = |digits: &[usize]| -> usize { digits.iter().rev().fold(0, |acc, &d| acc * p + d) };
    let mut action = Vec::with_capacity(wreath.order());
    for w in 0..wreath.order() {
        let (gvec, sigma) = wreath.element(w);
        let mut sigma_inv = alloc::vec![0usize; n];
        for (i, &s) in sigma.iter().enumerate() {
            sigma_inv[s] = i;
        }
        let mut images = Vec::with_capacity(np);
        for t in 0..np {
            let digits = decode(t);
            let out: Vec<usize> = (0..n)
                .map(|i| x.action()[gvec[i]][digits[sigma_inv[i]]])
                .collect();
            images.push(encode(&out));
        }
        action.push(images);
    }
    let phi: Vec<usize> = (0..np)
        .map(|t| {
            let digits: Vec<usize> = decode(t).iter().map(|&d| x.phi()[d]).collect();
            encode(&digits)
        })
        .collect();
    ExplicitGSet::new(np, wreath.group().clone(), action, phi)
}

/// Brute-force left-hand side of Eq. (3) at `d = 0`: `e⁽ᵏ⁾` of
/// `(Xⁿ, G≀Sₙ, φ⁽ⁿ⁾)` by full enumeration, with no use of the product
/// formula.
pub fn wreath_lhs_explicit(x: &ExplicitGSet, n: usize, k: usize) -> Result<EquivariantHd, OrbifoldError> {
    if n == 0 {
        return Ok(EquivariantHd::point());
    }
    wreath_power_set(x, n)?.to_node(k).e_k(k)
}

/// The derived `k = 1`, `d > 0` wreath rule: fixed loci of a wreath class
/// are products over its cycles of type `([h], length r)` of age-`β` strata
/// of `V^⟨h⟩`; an `r`-cycle on a `β`-stratum contributes age
/// `β + d(r−1)/2`, and the centralizer quotients are symmetric powers of the
/// strata quotients, so the generating series is
/// `Π_{[h], β, r ≤ n} (1 − (uv)^{β + d(r−1)/2} T^r)^{−e(child quotient)}`.
/// This rule is validated only against the recorded `n = 2` geometric
/// fixture; reports flag it as derived.
pub fn wreath_lhs_k1_positive_d(node: &TripleNode, n: usize) -> Result<EquivariantHd, OrbifoldError> {
    if n > 3 {
        return Err(OrbifoldError::Structure("wreath rule is validated only for n ≤ 3"));
    }
    let d = match node.dim() {
        Dimension::Pure(d) => d,
        Dimension::Mixed => {
            return Err(OrbifoldError::Structure("wreath rule needs a pure dimension"))
        }
    };
    if n == 0 {
        return Ok(EquivariantHd::point());
    }
    node.e_k(1)?; // depth check: the rule consumes exactly the k = 1 data
    let sig = GradingGroup::triple();
    let mut series = TruncatedSeries::one(sig, n);
    for r in 1..=n {
        let cycle_shift = Rat::new((r as i64 - 1) * d as i64, 2);
        for ((_, beta), child) in node.children() {
            let quotient = match child {
                Child::SelfMarker => node.quotient_hodge().clone(),
                Child::Node(sub) => sub.quotient_hodge().clone(),
            };
            let g = triple_tuple(CyclicRational::zero(), *beta + cycle_shift, *beta + cycle_shift);
            series = &series * &expand_neg_power(&g, r, quotient.value(), Mode::Substitution, n);
        }
    }
    Ok(EquivariantHd::new(series.coeff(n).clone()).expect("shifted Hodge classes stay valid"))
}

/// A prepared Eq. (3) instance: the base invariant `e⁽ᵏ⁾`, its dimension,
/// and independently computed left-hand coefficients `lhs[n]` for
/// `n = 0..=N`.
#[derive(Clone, Debug)]
pub struct Theorem2Fixture {
    pub name: String,
    pub e: EquivariantHd,
    pub d: u32,
    pub k: usize,
    pub lhs: Vec<EquivariantHd>,
}

impl Theorem2Fixture {
    /// Builds the fixture from a 0-dimensional explicit model by brute-force
    /// wreath enumeration.
    pub fn from_explicit(
        x: &ExplicitGSet,
        name: &str,
        k: usize,
        n_max: usize,
    ) -> Result<Self, OrbifoldError> {
        let e = x.to_node(k).e_k(k)?;
        let lhs = (0..=n_max)
            .map(|n| wreath_lhs_explicit(x, n, k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Theorem2Fixture {
            name: String::from(name),
            e,
            d: 0,
            k,
            lhs,
        })
    }

    /// Builds the `k = 1` fixture from a positive-dimensional node via the
    /// derived wreath rule.
    pub fn from_node_k1(node: &TripleNode, name: &str, n_max: usize) -> Result<Self, OrbifoldError> {
        let d = match node.dim() {
            Dimension::Pure(d) => d,
            Dimension::Mixed => {
                return Err(OrbifoldError::Structure("wreath rule needs a pure dimension"))
            }
        };
        let e = node.e_k(1)?;
        let lhs = (0..=n_max)
            .map(|n| wreath_lhs_k1_positive_d(node, n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Theorem2Fixture {
            name: String::from(name),
            e,
            d,
            k: 1,
            lhs,
        })
    }

    pub fn n_max(&self) -> usize {
        self.lhs.len() - 1
    }
}

/// Verifies Eq. (3) on a prepared fixture: enumerated left-hand coefficients
/// against the product-formula expansion.
pub fn verify_theorem2(fixture: &Theorem2Fixture, shift: ShiftConvention, mode: Mode) -> ComparisonReport {
    let n_max = fixture.n_max();
    let rhs = rhs_expand_theorem2(&fixture.e, fixture.d, fixture.k, n_max, shift, mode);
    let rows = (0..=n_max)
        .map(|n| DegreeRow {
            degree: n,
            lhs: fixture.lhs[n].value().clone(),
            rhs: rhs.coeff(n).clone(),
        })
        .collect();
    ComparisonReport {
        theorem: format!("theorem 2, k {}", fixture.k),
        fixture: fixture.name.clone(),
        truncation: n_max,
        mode,
        shift: Some(shift),
        rows,
    }
}

/// Verifies the corollary of Eq. (3): both sides projected to ℚ/ℤ×ℚ, with
/// the right-hand side expanded independently in the pair ring.
pub fn verify_theorem2_corollary(
    fixture: &Theorem2Fixture,
    shift: ShiftConvention,
    mode: Mode,
) -> ComparisonReport {
    let n_max = fixture.n_max();
    let rhs = rhs_expand_corollary2(&fixture.e.to_pair(), fixture.d, fixture.k, n_max, shift, mode);
    let rows = (0..=n_max)
        .map(|n| DegreeRow {
            degree: n,
            lhs: fixture.lhs[n].to_pair(),
            rhs: rhs.coeff(n).clone(),
        })
        .collect();
    ComparisonReport {
        theorem: format!("corollary of theorem 2, k {}", fixture.k),
        fixture: fixture.name.clone(),
        truncation: n_max,
        mode,
        shift: Some(shift),
        rows,
    }
}

/// The `T¹` consistency audit of the exponent-shift conventions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AuditReport {
    pub fixture: String,
    pub d: u32,
    pub k: usize,
    pub paper_literal_ok: bool,
    pub reduced_ok: bool,
}

impl AuditReport {
    /// The convention(s) consistent with the `n = 1` term.
    pub fn winner(&self) -> &'static str {
        match (self.paper_literal_ok, self.reduced_ok) {
            (true, true) => "both",
            (true, false) => "paper-literal",
            (false, true) => "reduced",
            (false, false) => "none",
        }
    }

    /// The unique passing convention, defaulting to `Reduced` when both pass
    /// (the two coincide at `d = 0`).
    pub fn resolved(&self) -> Option<ShiftConvention> {
        match (self.paper_literal_ok, self.reduced_ok) {
            (_, true) => Some(ShiftConvention::Reduced),
            (true, false) => Some(ShiftConvention::PaperLiteral),
            (false, false) => None,
        }
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "pass" } else { "fail" };
        writeln!(
            f,
            "fixture {}, d {}, k {}, paper-literal {}, reduced {}, winner {}",
            self.fixture,
            self.d,
            self.k,
            verdict(self.paper_literal_ok),
            verdict(self.reduced_ok),
            self.winner()
        )
    }
}

/// Compares the `T¹` coefficient of the right-hand side under each shift
/// convention with the enumerated `n = 1` term (`G₁ = G`, so that term is
/// `e⁽ᵏ⁾` itself), and records which conventions are consistent. Nothing is
/// assumed; the verdict is empirical per fixture.
pub fn normalization_audit(fixture: &Theorem2Fixture) -> AuditReport {
    assert!(fixture.n_max() >= 1, "audit needs the n = 1 term");
    let lhs = fixture.lhs[1].value();
    let check = |shift: ShiftConvention| {
        let rhs = rhs_expand_theorem2(&fixture.e, fixture.d, fixture.k, 1, shift, Mode::Substitution);
        rhs.coeff(1) == lhs
    };
    AuditReport {
        fixture: fixture.name.clone(),
        d: fixture.d,
        k: fixture.k,
        paper_literal_ok: check(ShiftConvention::PaperLiteral),
        reduced_ok: check(ShiftConvention::Reduced),
    }
}
