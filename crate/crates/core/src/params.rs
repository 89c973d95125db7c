//! Arithmetic parameters of Shimura subdata of SU(n,1)- and SO(n,2)-type.

use std::fmt;

use num_bigint::BigUint;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::weights::{self, SpinPart};

/// A τ-primary datum of type `Λ_m`: `L_τ ≅ Λ_m^{⊕N}` over a totally real
/// field of degree `d`, Hermitian space of dimension `n + 1`, plus a
/// trivial summand `V₀` of dimension `dim_v0` over Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnitaryDatumParams {
    pub d: u32,
    pub n: u32,
    pub m: u32,
    pub copies: u64,
    pub dim_v0: u64,
}

/// A general SU(n,1)-type datum with `N_m` copies of each `Λ_m`.
/// `multiplicities[m - 1]` is `N_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitaryMixedDatumParams {
    pub d: u32,
    pub n: u32,
    pub multiplicities: Vec<u64>,
    pub dim_v0: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HalfSpinPart {
    Plus,
    Minus,
    NotApplicable,
}

impl HalfSpinPart {
    pub fn label(self) -> &'static str {
        match self {
            HalfSpinPart::Plus => "plus",
            HalfSpinPart::Minus => "minus",
            HalfSpinPart::NotApplicable => "na",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "plus" => Some(HalfSpinPart::Plus),
            "minus" => Some(HalfSpinPart::Minus),
            "na" | "not_applicable" | "full" => Some(HalfSpinPart::NotApplicable),
            _ => None,
        }
    }

    /// The natural default for a given `n`.
    pub fn default_for(n: u32) -> Self {
        if n.is_multiple_of(2) {
            HalfSpinPart::Plus
        } else {
            HalfSpinPart::NotApplicable
        }
    }
}

/// An SO(n,2)-type datum: quadratic space of dimension `n + 2`, `N` copies
/// of the real-irreducible spin summand at τ, trivial summand `V₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrthogonalDatumParams {
    pub d: u32,
    pub n: u32,
    pub copies: u64,
    pub half_spin_part: HalfSpinPart,
    pub dim_v0: u64,
}

impl OrthogonalDatumParams {
    pub fn dim_h(&self) -> u32 {
        self.n + 2
    }

    /// The spinor module appearing at τ.
    pub fn spin_part(&self) -> SpinPart {
        match self.half_spin_part {
            HalfSpinPart::Plus => SpinPart::Plus,
            HalfSpinPart::Minus => SpinPart::Minus,
            HalfSpinPart::NotApplicable => SpinPart::Full,
        }
    }
}

fn check_common(d: u32, n: u32, dim_v0: u64) -> Result<()> {
    if d < 1 {
        return Err(Error::DegreeZero);
    }
    if n < 1 {
        return Err(Error::RankZero);
    }
    if !dim_v0.is_multiple_of(2) {
        return Err(Error::OddTrivialDimension(dim_v0));
    }
    Ok(())
}

pub fn validate_unitary(p: UnitaryDatumParams) -> Result<UnitaryDatumParams> {
    if p.d < 1 {
        return Err(Error::DegreeZero);
    }
    if p.n < 1 {
        return Err(Error::RankZero);
    }
    if p.m < 1 || p.m > p.n {
        return Err(Error::MOutOfRange { n: p.n, m: p.m });
    }
    if p.copies < 1 {
        return Err(Error::CopiesZero);
    }
    check_common(p.d, p.n, p.dim_v0)?;
    Ok(p)
}

pub fn validate_unitary_mixed(p: UnitaryMixedDatumParams) -> Result<UnitaryMixedDatumParams> {
    check_common(p.d, p.n, p.dim_v0)?;
    if p.multiplicities.len() != p.n as usize {
        return Err(Error::MultiplicityLength { expected: p.n as usize, got: p.multiplicities.len() });
    }
    if p.multiplicities.iter().all(|&k| k == 0) {
        return Err(Error::NoPrimarySummand);
    }
    Ok(p)
}

pub fn validate_orthogonal(p: OrthogonalDatumParams) -> Result<OrthogonalDatumParams> {
    check_common(p.d, p.n, p.dim_v0)?;
    if p.copies < 1 {
        return Err(Error::CopiesZero);
    }
    let even = p.n.is_multiple_of(2);
    let ok = match p.half_spin_part {
        HalfSpinPart::NotApplicable => !even,
        HalfSpinPart::Plus | HalfSpinPart::Minus => even,
    };
    if !ok {
        return Err(Error::HalfSpinMismatch { n: p.n, part: p.half_spin_part.label() });
    }
    Ok(p)
}

/// `g₀ = N·d·C(n+1, m)`, the genus without the trivial summand.
pub fn primary_genus_unitary(p: &UnitaryDatumParams) -> Result<BigUint> {
    let p = validate_unitary(*p)?;
    Ok(BigUint::from(p.copies) * p.d * binomial(p.n as i64 + 1, p.m as i64))
}

/// `g = N·d·C(n+1, m) + dim V₀ / 2`.
pub fn genus_unitary(p: &UnitaryDatumParams) -> Result<BigUint> {
    Ok(primary_genus_unitary(p)? + p.dim_v0 / 2)
}

/// `Σ_m N_m·d·C(n+1, m)`.
pub fn primary_genus_unitary_mixed(p: &UnitaryMixedDatumParams) -> Result<BigUint> {
    let p = validate_unitary_mixed(p.clone())?;
    let mut g = BigUint::default();
    for (i, &k) in p.multiplicities.iter().enumerate() {
        g += BigUint::from(k) * p.d * binomial(p.n as i64 + 1, i as i64 + 1);
    }
    Ok(g)
}

pub fn genus_unitary_mixed(p: &UnitaryMixedDatumParams) -> Result<BigUint> {
    Ok(primary_genus_unitary_mixed(p)? + p.dim_v0 / 2)
}

/// `N·d·dim_C P`, where `P` is the spin (n odd) or chosen half-spin (n even)
/// module of the `(n+2)`-dimensional space. The real-irreducible summand is
/// `Res_{C/R} P` of real dimension `2·dim_C P`, and `2g₀ = d·N·2·dim_C P`.
pub fn primary_genus_orthogonal(p: &OrthogonalDatumParams) -> Result<BigUint> {
    let p = validate_orthogonal(*p)?;
    let spin = weights::spin_dimension(p.dim_h(), p.spin_part())?;
    Ok(BigUint::from(p.copies) * p.d * spin)
}

pub fn genus_orthogonal(p: &OrthogonalDatumParams) -> Result<BigUint> {
    Ok(primary_genus_orthogonal(p)? + p.dim_v0 / 2)
}

/// Which non-definite signature the distinguished place must carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatumKind {
    Unitary,
    Orthogonal,
}

/// Signatures `(p_j, q_j)` of the form at the `d` real places.
/// Informational only; the numerical engine never reads it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureProfile {
    pub entries: Vec<(u32, u32)>,
}

impl SignatureProfile {
    /// `(n, 1)` at τ, positive definite `(n + 1, 0)` elsewhere.
    pub fn unitary(d: u32, n: u32) -> Self {
        let mut entries = vec![(n, 1)];
        entries.extend(std::iter::repeat_n((n + 1, 0), d.saturating_sub(1) as usize));
        Self { entries }
    }

    /// `(n, 2)` at τ, positive definite `(n + 2, 0)` elsewhere.
    pub fn orthogonal(d: u32, n: u32) -> Self {
        let mut entries = vec![(n, 2)];
        entries.extend(std::iter::repeat_n((n + 2, 0), d.saturating_sub(1) as usize));
        Self { entries }
    }

    pub fn validate(&self, kind: DatumKind, n: u32) -> Result<()> {
        let (dim, required) = match kind {
            DatumKind::Unitary => (n + 1, (n, 1)),
            DatumKind::Orthogonal => (n + 2, (n, 2)),
        };
        if self.entries.is_empty() {
            return Err(Error::BadSignature("no real places".into()));
        }
        let mut indefinite = 0;
        for &(p, q) in &self.entries {
            if p + q != dim {
                return Err(Error::BadSignature(format!("({p},{q}) does not sum to {dim}")));
            }
            let definite = p == 0 || q == 0;
            if !definite {
                if (p, q) != required {
                    return Err(Error::BadSignature(format!(
                        "indefinite entry ({p},{q}) instead of ({},{})",
                        required.0, required.1
                    )));
                }
                indefinite += 1;
            }
        }
        if indefinite != 1 {
            return Err(Error::BadSignature(format!(
                "expected exactly one indefinite place, found {indefinite}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for SignatureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(p, q)| format!("({p},{q})")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su(d: u32, n: u32, m: u32, copies: u64, dim_v0: u64) -> UnitaryDatumParams {
        UnitaryDatumParams { d, n, m, copies, dim_v0 }
    }

    fn so(d: u32, n: u32, copies: u64, part: HalfSpinPart, dim_v0: u64) -> OrthogonalDatumParams {
        OrthogonalDatumParams { d, n, copies, half_spin_part: part, dim_v0 }
    }

    #[test]
    fn unitary_validation() {
        assert!(validate_unitary(su(2, 3, 2, 1, 0)).is_ok());
        assert!(validate_unitary(su(1, 1, 1, 1, 0)).is_ok());
        let err = validate_unitary(su(2, 3, 4, 1, 0)).unwrap_err();
        assert_eq!(err.code(), "m_out_of_range");
        assert_eq!(validate_unitary(su(2, 3, 2, 1, 3)).unwrap_err().code(), "odd_trivial_dimension");
        assert_eq!(validate_unitary(su(0, 3, 2, 1, 0)).unwrap_err(), Error::DegreeZero);
        assert_eq!(validate_unitary(su(1, 3, 2, 0, 0)).unwrap_err(), Error::CopiesZero);
    }

    #[test]
    fn unitary_genus() {
        let g = |p| genus_unitary(&p).unwrap();
        assert_eq!(g(su(1, 1, 1, 1, 0)), BigUint::from(2u32));
        assert_eq!(g(su(2, 2, 1, 1, 0)), BigUint::from(6u32));
        assert_eq!(g(su(2, 2, 1, 1, 4)), BigUint::from(8u32));
    }

    #[test]
    fn orthogonal_genus() {
        let g = |p| genus_orthogonal(&p).unwrap();
        assert_eq!(g(so(6, 1, 1, HalfSpinPart::NotApplicable, 0)), BigUint::from(12u32));
        // half-spin of a 4-dimensional space: complex dimension 2, real 4
        assert_eq!(g(so(6, 2, 1, HalfSpinPart::Plus, 0)), BigUint::from(12u32));
        assert_eq!(g(so(6, 2, 1, HalfSpinPart::Minus, 0)), BigUint::from(12u32));
        assert_eq!(g(so(1, 1, 1, HalfSpinPart::NotApplicable, 0)), BigUint::from(2u32));
        assert_eq!(g(so(1, 3, 2, HalfSpinPart::NotApplicable, 6)), BigUint::from(11u32));
    }

    #[test]
    fn orthogonal_part_must_match_parity() {
        assert!(matches!(
            validate_orthogonal(so(1, 2, 1, HalfSpinPart::NotApplicable, 0)),
            Err(Error::HalfSpinMismatch { .. })
        ));
        assert!(matches!(
            validate_orthogonal(so(1, 3, 1, HalfSpinPart::Minus, 0)),
            Err(Error::HalfSpinMismatch { .. })
        ));
    }

    #[test]
    fn mixed_validation() {
        let p = UnitaryMixedDatumParams { d: 1, n: 2, multiplicities: vec![0, 0], dim_v0: 0 };
        assert_eq!(validate_unitary_mixed(p).unwrap_err(), Error::NoPrimarySummand);
        let p = UnitaryMixedDatumParams { d: 1, n: 2, multiplicities: vec![1], dim_v0: 0 };
        assert!(matches!(validate_unitary_mixed(p), Err(Error::MultiplicityLength { .. })));
        let p = UnitaryMixedDatumParams { d: 1, n: 3, multiplicities: vec![0, 2, 0], dim_v0: 2 };
        assert_eq!(genus_unitary_mixed(&p).unwrap(), BigUint::from(13u32));
    }

    #[test]
    fn signature_profiles() {
        let s = SignatureProfile::unitary(3, 2);
        assert_eq!(s.to_string(), "(2,1) (3,0) (3,0)");
        assert!(s.validate(DatumKind::Unitary, 2).is_ok());
        assert!(SignatureProfile::orthogonal(2, 4).validate(DatumKind::Orthogonal, 4).is_ok());
        let two_indefinite = SignatureProfile { entries: vec![(2, 1), (2, 1)] };
        assert!(two_indefinite.validate(DatumKind::Unitary, 2).is_err());
        let wrong = SignatureProfile { entries: vec![(1, 2)] };
        assert!(wrong.validate(DatumKind::Unitary, 2).is_err());
        let negative_definite = SignatureProfile { entries: vec![(2, 1), (0, 3)] };
        assert!(negative_definite.validate(DatumKind::Unitary, 2).is_ok());
    }
}
