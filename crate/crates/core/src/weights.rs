//! Weight multisets and their branching to the curve `sl2`.
//!
//! Weights are written in epsilon-coordinates. The exterior powers
//! `Λ_m` of the standard representation of `sl(n+1)` use 0/1 vectors of
//! length `n+1` (no trace normalisation; only coordinate differences are
//! ever read). Spin and half-spin representations use `(±1/2, …, ±1/2)`.
//!
//! The distinguished curve subgroup sits on coordinates `{1, 2}` in the
//! unitary case and on coordinate `1` in the orthogonal case. After
//! restriction, `sl2` weights are normalised so that `Std = {+1, −1}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::arith::binomial;
use crate::error::{Error, Result};

/// Largest ambient length enumerated explicitly.
pub const MAX_ENUMERATED_COORDS: u32 = 24;

pub type Coord = Rational64;

/// A point of the weight lattice in epsilon-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<Coord>);

impl Weight {
    pub fn coords(&self) -> &[Coord] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn concat(&self, other: &Weight) -> Weight {
        let mut coords = self.0.clone();
        coords.extend_from_slice(&other.0);
        Weight(coords)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Weights with positive multiplicities. The total multiplicity is the
/// dimension of the representation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightMultiset {
    entries: BTreeMap<Weight, u64>,
}

impl WeightMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, weight: Weight, mult: u64) {
        if mult > 0 {
            *self.entries.entry(weight).or_insert(0) += mult;
        }
    }

    pub fn dimension(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn multiplicity(&self, weight: &Weight) -> u64 {
        self.entries.get(weight).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    /// Multiset sum (direct sum of representations).
    pub fn union(&self, other: &WeightMultiset) -> WeightMultiset {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.insert(w.clone(), m);
        }
        out
    }

    /// Weights of the tensor product: coordinates concatenated, multiplicities
    /// multiplied.
    pub fn outer_product(&self, other: &WeightMultiset) -> WeightMultiset {
        let mut out = WeightMultiset::new();
        for (a, ma) in self.iter() {
            for (b, mb) in other.iter() {
                out.insert(a.concat(b), ma * mb);
            }
        }
        out
    }

    /// Drops the last coordinate of every weight, i.e. restricts to the
    /// subtorus spanned by the remaining coordinates.
    pub fn drop_last_coordinate(&self) -> WeightMultiset {
        let mut out = WeightMultiset::new();
        for (w, m) in self.iter() {
            let mut coords = w.0.clone();
            coords.pop();
            out.insert(Weight(coords), m);
        }
        out
    }

    /// The denominator shared by every coordinate (1 for integral, 2 for
    /// half-integral multisets), or `None` if the coordinates are mixed or
    /// have any other denominator.
    pub fn common_denominator(&self) -> Option<i64> {
        let mut den = None;
        for (w, _) in self.iter() {
            for c in w.coords() {
                let d = if c.is_integer() { 1 } else { *c.denom() };
                if d != 1 && d != 2 {
                    return None;
                }
                match den {
                    None => den = Some(d),
                    Some(prev) if prev != d => return None,
                    _ => {}
                }
            }
        }
        Some(den.unwrap_or(1))
    }
}

/// Which spinor module to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpinPart {
    /// The spin representation of an odd-dimensional space.
    Full,
    /// Half-spin with an even number of minus signs.
    Plus,
    /// Half-spin with an odd number of minus signs.
    Minus,
}

impl SpinPart {
    pub fn label(self) -> &'static str {
        match self {
            SpinPart::Full => "full",
            SpinPart::Plus => "plus",
            SpinPart::Minus => "minus",
        }
    }

    pub fn parse(s: &str) -> Option<SpinPart> {
        match s {
            "full" => Some(SpinPart::Full),
            "plus" => Some(SpinPart::Plus),
            "minus" => Some(SpinPart::Minus),
            _ => None,
        }
    }
}

/// Where the curve subgroup sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// `SU(1,1)` on coordinates 1 and 2 of `sl(n+1)`.
    Unitary,
    /// `Spin(1,2)` on the first epsilon-coordinate.
    Orthogonal,
}

fn check_enumerable(len: u32) -> Result<()> {
    if len > MAX_ENUMERATED_COORDS {
        return Err(Error::EnumerationTooLarge(len));
    }
    Ok(())
}

/// The `C(n+1, m)` weights `e_{i1} + … + e_{im}` of `Λ_m`, each with
/// multiplicity one.
pub fn lambda_weights(n: u32, m: u32) -> Result<WeightMultiset> {
    if m < 1 || m > n {
        return Err(Error::MOutOfRange { n, m });
    }
    let len = n + 1;
    check_enumerable(len)?;
    let mut out = WeightMultiset::new();
    for mask in 0u32..(1u32 << len) {
        if mask.count_ones() != m {
            continue;
        }
        let coords = (0..len)
            .map(|i| Coord::from_integer(((mask >> i) & 1) as i64))
            .collect();
        out.insert(Weight(coords), 1);
    }
    Ok(out)
}

fn spin_rank(dim_h: u32, part: SpinPart) -> Result<u32> {
    if dim_h < 3 {
        return Err(Error::SpinDimensionTooSmall(dim_h));
    }
    let odd = dim_h % 2 == 1;
    let admissible = match part {
        SpinPart::Full => odd,
        SpinPart::Plus | SpinPart::Minus => !odd,
    };
    if !admissible {
        return Err(Error::ParityMismatch { dim_h, part: part.label() });
    }
    Ok(dim_h / 2)
}

fn keeps_sign_pattern(part: SpinPart, minus_signs: u32) -> bool {
    match part {
        SpinPart::Full => true,
        SpinPart::Plus => minus_signs.is_multiple_of(2),
        SpinPart::Minus => minus_signs % 2 == 1,
    }
}

/// Weights `(±1/2, …, ±1/2)` of length `⌊dim_h/2⌋`, filtered by the parity
/// of minus signs for the half-spin parts.
pub fn spin_weights(dim_h: u32, part: SpinPart) -> Result<WeightMultiset> {
    let m = spin_rank(dim_h, part)?;
    check_enumerable(m)?;
    let half = Coord::new(1, 2);
    let mut out = WeightMultiset::new();
    for mask in 0u32..(1u32 << m) {
        if !keeps_sign_pattern(part, mask.count_ones()) {
            continue;
        }
        let coords = (0..m)
            .map(|i| if (mask >> i) & 1 == 1 { -half } else { half })
            .collect();
        out.insert(Weight(coords), 1);
    }
    Ok(out)
}

/// Complex dimension of the (half-)spin representation, counted over sign
/// patterns without materialising the weights.
pub fn spin_dimension(dim_h: u32, part: SpinPart) -> Result<BigUint> {
    let m = spin_rank(dim_h, part)? as i64;
    let mut total = BigUint::zero();
    for k in 0..=m {
        if keeps_sign_pattern(part, k as u32) {
            total += binomial(m, k);
        }
    }
    Ok(total)
}

/// Complex dimension `C(n+1, m)` of `Λ_m`.
pub fn lambda_dimension(n: u32, m: u32) -> Result<BigUint> {
    if m < 1 || m > n {
        return Err(Error::MOutOfRange { n, m });
    }
    Ok(binomial(n as i64 + 1, m as i64))
}

/// A multiset of `sl2` weights (rational scalars).
pub type ScalarMultiset = BTreeMap<Coord, u64>;

/// Projects every weight onto the curve `sl2`.
pub fn restrict_to_curve_sl2(ws: &WeightMultiset, kind: CurveKind) -> Result<ScalarMultiset> {
    let mut out = ScalarMultiset::new();
    for (w, mult) in ws.iter() {
        let c = w.coords();
        let value = match kind {
            CurveKind::Unitary => {
                if c.len() < 2 {
                    return Err(Error::UnexpectedWeight(w.to_string()));
                }
                c[0] - c[1]
            }
            CurveKind::Orthogonal => {
                let first = c.first().ok_or_else(|| Error::UnexpectedWeight(w.to_string()))?;
                first * Coord::from_integer(2)
            }
        };
        let admissible = match kind {
            CurveKind::Unitary => value.abs() <= Coord::one() && value.is_integer(),
            CurveKind::Orthogonal => value.abs() == Coord::one(),
        };
        if !admissible {
            return Err(Error::UnexpectedWeight(value.to_string()));
        }
        *out.entry(value).or_insert(0) += mult;
    }
    Ok(out)
}

/// Decomposition of an `sl2` character into irreducible strings, keyed by
/// string dimension `k = h + 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sl2Decomposition {
    pub strings: BTreeMap<u64, u64>,
}

impl Sl2Decomposition {
    pub fn multiplicity(&self, dim: u64) -> u64 {
        self.strings.get(&dim).copied().unwrap_or(0)
    }

    pub fn std_count(&self) -> u64 {
        self.multiplicity(2)
    }

    pub fn trivial_count(&self) -> u64 {
        self.multiplicity(1)
    }

    /// Multiplicity of strings of dimension at least 3.
    pub fn longer_count(&self) -> u64 {
        self.strings.range(3..).map(|(_, &m)| m).sum()
    }

    pub fn dimension(&self) -> u64 {
        self.strings.iter().map(|(&k, &m)| k * m).sum()
    }

    pub fn add(&mut self, dim: u64, mult: u64) {
        if mult > 0 {
            *self.strings.entry(dim).or_insert(0) += mult;
        }
    }

    /// The character of the decomposition: each string of dimension `k`
    /// contributes weights `k−1, k−3, …, −(k−1)`.
    pub fn character(&self) -> ScalarMultiset {
        let mut out = ScalarMultiset::new();
        for (&k, &mult) in &self.strings {
            let h = k as i64 - 1;
            let mut w = h;
            while w >= -h {
                *out.entry(Coord::from_integer(w)).or_insert(0) += mult;
                w -= 2;
            }
        }
        out
    }
}

impl fmt::Display for Sl2Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.std_count() > 0 {
            parts.push(format!("Std x{}", self.std_count()));
        }
        if self.trivial_count() > 0 {
            parts.push(format!("Trivial x{}", self.trivial_count()));
        }
        for (&k, &m) in self.strings.range(3..) {
            parts.push(format!("V{k} x{m}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

/// Strips highest-weight strings until the multiset is exhausted.
pub fn sl2_decompose(scalars: &ScalarMultiset) -> Result<Sl2Decomposition> {
    for (v, &m) in scalars {
        if !v.is_integer() {
            return Err(Error::NonIntegral(v.to_string()));
        }
        if m > 0 && scalars.get(&-v).copied().unwrap_or(0) != m {
            return Err(Error::NotSymmetric);
        }
    }
    let mut remaining: BTreeMap<i64, u64> = scalars
        .iter()
        .filter(|(_, &m)| m > 0)
        .map(|(v, &m)| (v.to_integer(), m))
        .collect();
    let mut out = Sl2Decomposition::default();
    while let Some((&h, &top)) = remaining.iter().next_back() {
        if h < 0 {
            // symmetry was checked, so a negative top means a broken string
            return Err(Error::InconsistentString(h.to_string()));
        }
        // `top` copies of the string through `h` are forced at once
        let mut w = h;
        while w >= -h {
            match remaining.get_mut(&w) {
                Some(m) if *m >= top => {
                    *m -= top;
                    if *m == 0 {
                        remaining.remove(&w);
                    }
                }
                _ => return Err(Error::InconsistentString(h.to_string())),
            }
            w -= 2;
        }
        out.add(h as u64 + 1, top);
    }
    Ok(out)
}

/// `Λ_m` restricted to the curve `SU(1,1)`.
pub fn branch_lambda_to_curve(n: u32, m: u32) -> Result<Sl2Decomposition> {
    let ws = lambda_weights(n, m)?;
    sl2_decompose(&restrict_to_curve_sl2(&ws, CurveKind::Unitary)?)
}

/// The (half-)spin representation restricted to the curve `Spin(1,2)`.
pub fn branch_spin_to_curve(dim_h: u32, part: SpinPart) -> Result<Sl2Decomposition> {
    let ws = spin_weights(dim_h, part)?;
    sl2_decompose(&restrict_to_curve_sl2(&ws, CurveKind::Orthogonal)?)
}

/// Whether `P(T₁ ⊕ T₂)` has the weights of `P(T₁) ⊗ P(T₂)`, with
/// `dim T₁ = m1` and `dim T₂ = m2`.
pub fn spin_tensor_factorization_check(m1: u32, m2: u32) -> bool {
    let whole = spin_weights(2 * (m1 + m2) + 1, SpinPart::Full);
    let left = spin_weights(2 * m1 + 1, SpinPart::Full);
    let right = spin_weights(2 * m2 + 1, SpinPart::Full);
    match (whole, left, right) {
        (Ok(w), Ok(l), Ok(r)) => w == l.outer_product(&r),
        _ => false,
    }
}

/// Whether the spin representation of a `(2m+1)`-dimensional space restricts
/// to `P₊ ⊕ P₋` of the `2m`-dimensional subspace (same maximal torus).
pub fn odd_spin_splits_into_half_spins(m: u32) -> bool {
    let full = spin_weights(2 * m + 1, SpinPart::Full);
    let plus = spin_weights(2 * m, SpinPart::Plus);
    let minus = spin_weights(2 * m, SpinPart::Minus);
    match (full, plus, minus) {
        (Ok(f), Ok(p), Ok(q)) => f == p.union(&q),
        _ => false,
    }
}

/// Whether a half-spin representation of a `2m`-dimensional space restricts
/// to the spin representation of a `(2m−1)`-dimensional subspace, checked by
/// deleting the last epsilon-coordinate.
pub fn half_spin_restricts_to_odd_spin(m: u32, part: SpinPart) -> bool {
    let half = spin_weights(2 * m, part);
    let odd = spin_weights(2 * m - 1, SpinPart::Full);
    match (half, odd) {
        (Ok(h), Ok(o)) => h.drop_last_coordinate() == o,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalars(pairs: &[(i64, u64)]) -> ScalarMultiset {
        pairs.iter().map(|&(v, m)| (Coord::from_integer(v), m)).collect()
    }

    fn w(coords: &[(i64, i64)]) -> Weight {
        Weight(coords.iter().map(|&(a, b)| Coord::new(a, b)).collect())
    }

    #[test]
    fn lambda_weights_of_sl2_standard() {
        let ws = lambda_weights(1, 1).unwrap();
        assert_eq!(ws.dimension(), 2);
        assert_eq!(ws.multiplicity(&w(&[(1, 1), (0, 1)])), 1);
        assert_eq!(ws.multiplicity(&w(&[(0, 1), (1, 1)])), 1);
    }

    #[test]
    fn lambda_weight_counts() {
        let ws = lambda_weights(3, 2).unwrap();
        assert_eq!(ws.dimension(), 6);
        assert_eq!(ws.distinct(), 6);
        for (wt, _) in ws.iter() {
            let ones = wt.coords().iter().filter(|c| **c == Coord::one()).count();
            assert_eq!(ones, 2);
        }
        assert_eq!(lambda_weights(2, 2).unwrap().dimension(), 3);
        assert_eq!(lambda_weights(3, 4), Err(Error::MOutOfRange { n: 3, m: 4 }));
        assert_eq!(lambda_weights(3, 0), Err(Error::MOutOfRange { n: 3, m: 0 }));
    }

    #[test]
    fn spin_weight_examples() {
        let s3 = spin_weights(3, SpinPart::Full).unwrap();
        assert_eq!(s3.dimension(), 2);
        assert_eq!(s3.multiplicity(&w(&[(1, 2)])), 1);
        assert_eq!(s3.multiplicity(&w(&[(-1, 2)])), 1);

        let s4 = spin_weights(4, SpinPart::Plus).unwrap();
        assert_eq!(s4.dimension(), 2);
        assert_eq!(s4.multiplicity(&w(&[(1, 2), (1, 2)])), 1);
        assert_eq!(s4.multiplicity(&w(&[(-1, 2), (-1, 2)])), 1);

        assert_eq!(spin_weights(5, SpinPart::Full).unwrap().dimension(), 4);
    }

    #[test]
    fn spin_parity_errors() {
        assert!(matches!(spin_weights(4, SpinPart::Full), Err(Error::ParityMismatch { .. })));
        assert!(matches!(spin_weights(5, SpinPart::Minus), Err(Error::ParityMismatch { .. })));
        assert_eq!(spin_weights(2, SpinPart::Plus), Err(Error::SpinDimensionTooSmall(2)));
    }

    #[test]
    fn spin_dimension_counts_match_enumeration() {
        for dim_h in 3..=16 {
            let parts: &[SpinPart] =
                if dim_h % 2 == 1 { &[SpinPart::Full] } else { &[SpinPart::Plus, SpinPart::Minus] };
            for &p in parts {
                let enumerated = spin_weights(dim_h, p).unwrap().dimension();
                assert_eq!(spin_dimension(dim_h, p).unwrap(), BigUint::from(enumerated));
            }
        }
    }

    #[test]
    fn denominators() {
        assert_eq!(lambda_weights(4, 2).unwrap().common_denominator(), Some(1));
        assert_eq!(spin_weights(7, SpinPart::Full).unwrap().common_denominator(), Some(2));
        let mut mixed = WeightMultiset::new();
        mixed.insert(w(&[(1, 2), (1, 1)]), 1);
        assert_eq!(mixed.common_denominator(), None);
    }

    #[test]
    fn restriction_examples() {
        let r = restrict_to_curve_sl2(&lambda_weights(3, 2).unwrap(), CurveKind::Unitary).unwrap();
        assert_eq!(r, scalars(&[(1, 2), (0, 2), (-1, 2)]));

        let r = restrict_to_curve_sl2(&spin_weights(5, SpinPart::Full).unwrap(), CurveKind::Orthogonal)
            .unwrap();
        assert_eq!(r, scalars(&[(1, 2), (-1, 2)]));

        let r = restrict_to_curve_sl2(&lambda_weights(1, 1).unwrap(), CurveKind::Unitary).unwrap();
        assert_eq!(r, scalars(&[(1, 1), (-1, 1)]));
    }

    #[test]
    fn restriction_rejects_foreign_weights() {
        let mut ws = WeightMultiset::new();
        ws.insert(w(&[(2, 1), (0, 1)]), 1);
        assert!(matches!(restrict_to_curve_sl2(&ws, CurveKind::Unitary), Err(Error::UnexpectedWeight(_))));
        assert!(matches!(
            restrict_to_curve_sl2(&ws, CurveKind::Orthogonal),
            Err(Error::UnexpectedWeight(_))
        ));
    }

    #[test]
    fn decompose_examples() {
        let d = sl2_decompose(&scalars(&[(1, 1), (-1, 1)])).unwrap();
        assert_eq!((d.std_count(), d.trivial_count(), d.longer_count()), (1, 0, 0));

        let d = sl2_decompose(&scalars(&[(1, 2), (0, 2), (-1, 2)])).unwrap();
        assert_eq!((d.std_count(), d.trivial_count()), (2, 2));
        assert_eq!(d.to_string(), "Std x2, Trivial x2");

        let d = sl2_decompose(&scalars(&[(2, 1), (0, 1), (-2, 1)])).unwrap();
        assert_eq!(d.multiplicity(3), 1);
        assert_eq!(d.dimension(), 3);
    }

    #[test]
    fn decompose_errors() {
        assert_eq!(sl2_decompose(&scalars(&[(1, 2), (-1, 1)])), Err(Error::NotSymmetric));
        assert_eq!(
            sl2_decompose(&scalars(&[(2, 1), (-2, 1)])),
            Err(Error::InconsistentString("2".into()))
        );
        let mut half = ScalarMultiset::new();
        half.insert(Coord::new(1, 2), 1);
        half.insert(Coord::new(-1, 2), 1);
        assert!(matches!(sl2_decompose(&half), Err(Error::NonIntegral(_))));
        assert_eq!(sl2_decompose(&ScalarMultiset::new()).unwrap().dimension(), 0);
    }

    #[test]
    fn lambda_branching_examples() {
        let d = branch_lambda_to_curve(3, 2).unwrap();
        assert_eq!((d.std_count(), d.trivial_count()), (2, 2));
        let d = branch_lambda_to_curve(1, 1).unwrap();
        assert_eq!((d.std_count(), d.trivial_count()), (1, 0));
        // C(4,2) = 6 Std, C(4,3)+C(4,1) = 8 trivials, 2*6+8 = 20 = C(6,3)
        let d = branch_lambda_to_curve(5, 3).unwrap();
        assert_eq!((d.std_count(), d.trivial_count(), d.longer_count()), (6, 8, 0));
        assert_eq!(d.dimension(), 20);
    }

    #[test]
    fn spin_branching_examples() {
        let d = branch_spin_to_curve(3, SpinPart::Full).unwrap();
        assert_eq!((d.std_count(), d.trivial_count()), (1, 0));
        let d = branch_spin_to_curve(5, SpinPart::Full).unwrap();
        assert_eq!((d.std_count(), d.trivial_count()), (2, 0));
        let d = branch_spin_to_curve(6, SpinPart::Plus).unwrap();
        assert_eq!((d.std_count(), d.trivial_count()), (2, 0));
    }

    #[test]
    fn tensor_factorization_examples() {
        assert!(spin_tensor_factorization_check(1, 1));
        assert!(spin_tensor_factorization_check(2, 3));
        assert!(spin_tensor_factorization_check(1, 4));
    }

    #[test]
    fn odd_spin_and_half_spin_restrictions() {
        for m in 2..=8 {
            assert!(odd_spin_splits_into_half_spins(m));
            assert!(half_spin_restricts_to_odd_spin(m, SpinPart::Plus));
            assert!(half_spin_restricts_to_odd_spin(m, SpinPart::Minus));
        }
    }

    #[test]
    fn enumeration_cap() {
        assert_eq!(lambda_weights(30, 2), Err(Error::EnumerationTooLarge(31)));
    }
}
