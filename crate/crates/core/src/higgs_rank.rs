//! Ranks of the ample part `F` and the unitary part `U` of the canonical
//! Higgs bundle `E = F ⊕ U`, on a Shimura subvariety `M` and on a Shimura
//! curve `C ⊂ M`.
//!
//! All ranks are the `(−1,0)` parts, so `rank_f + rank_u = g`. Every
//! formula is evaluated in exact rationals and must come out integral;
//! a fractional result means the parameters describe no actual datum.
//!
//! The trivial summand `V₀` is counted additively and only in `rank_u`,
//! also for the curve formulas where the closed forms are usually stated
//! with `V₀ = 0`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{as_integer, binomial, format_ratio_compact, int, uint_to_rational};
use crate::error::{Error, Result};
use crate::params::{
    self, OrthogonalDatumParams, UnitaryDatumParams, UnitaryMixedDatumParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Locus {
    SubvarietyM,
    CurveC,
}

impl Locus {
    pub fn label(self) -> &'static str {
        match self {
            Locus::SubvarietyM => "subvariety_M",
            Locus::CurveC => "curve_C",
        }
    }
}

/// `g`, `rank F^{−1,0}` and `rank U^{−1,0}` on one locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    pub g: BigInt,
    pub rank_f: BigInt,
    pub rank_u: BigInt,
    pub locus: Locus,
}

impl fmt::Display for RankProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: g={} rank_f={} rank_u={}",
            self.locus.label(),
            self.g,
            self.rank_f,
            self.rank_u
        )
    }
}

fn integral(q: BigRational) -> Result<BigInt> {
    as_integer(&q).ok_or_else(|| Error::NonIntegralRank(format_ratio_compact(&q)))
}

fn profile(g: BigRational, rank_f: BigRational, rank_u: BigRational, locus: Locus) -> Result<RankProfile> {
    let out = RankProfile { g: integral(g)?, rank_f: integral(rank_f)?, rank_u: integral(rank_u)?, locus };
    debug_assert_eq!(&out.rank_f + &out.rank_u, out.g);
    Ok(out)
}

fn half(v: u64) -> BigRational {
    crate::arith::ratio(v, 2u32)
}

/// τ-primary of type `Λ_m` on `M`: `rank_f = g₀/d`,
/// `rank_u = g₀(d−1)/d + dim V₀/2`.
pub fn rank_su_subvariety(p: &UnitaryDatumParams) -> Result<RankProfile> {
    let g0 = uint_to_rational(&params::primary_genus_unitary(p)?);
    let d = int(p.d);
    let rank_f = &g0 / &d;
    let rank_u = &g0 * (&d - int(1)) / &d + half(p.dim_v0);
    profile(g0 + half(p.dim_v0), rank_f, rank_u, Locus::SubvarietyM)
}

/// Several primary types on `M`: `rank_f = Σ dim_F L_m / 2`,
/// `rank_u = (dim V₀ + (d−1)·Σ dim_F L_m) / 2`, with
/// `dim_F L_m = 2 N_m C(n+1, m)`.
pub fn rank_su_subvariety_mixed(p: &UnitaryMixedDatumParams) -> Result<RankProfile> {
    let p = params::validate_unitary_mixed(p.clone())?;
    let mut dim_l = int(0);
    for (i, &k) in p.multiplicities.iter().enumerate() {
        dim_l += int(2u32) * int(k) * uint_to_rational(&binomial(p.n as i64 + 1, i as i64 + 1));
    }
    let d = int(p.d);
    let g = uint_to_rational(&params::genus_unitary_mixed(&p)?);
    let rank_f = &dim_l / int(2);
    let rank_u = (int(p.dim_v0) + (&d - int(1)) * &dim_l) / int(2);
    profile(g, rank_f, rank_u, Locus::SubvarietyM)
}

/// Restriction to the curve cut out by a definite `(n−1)`-dimensional
/// subspace: `rank_f = 2 g₀ m (n−m+1) / (d n (n+1))`, which equals
/// `2 N C(n−1, m−1)`.
pub fn rank_su_curve(p: &UnitaryDatumParams) -> Result<RankProfile> {
    let g0 = uint_to_rational(&params::primary_genus_unitary(p)?);
    let (d, n, m) = (int(p.d), int(p.n), int(p.m));
    let rank_f = int(2) * &g0 * &m * (&n - &m + int(1)) / (&d * &n * (&n + int(1)));
    // rank_u = dim_Q V ((d/2) C(n+1,m) − C(n−1,m−1)) / (d C(n+1,m)) + dim V₀/2
    let c_full = uint_to_rational(&binomial(p.n as i64 + 1, p.m as i64));
    let c_std = uint_to_rational(&binomial(p.n as i64 - 1, p.m as i64 - 1));
    let dim_v = int(2) * &g0;
    let rank_u = &dim_v * (&d / int(2) * &c_full - &c_std) / (&d * &c_full) + half(p.dim_v0);
    profile(g0 + half(p.dim_v0), rank_f, rank_u, Locus::CurveC)
}

/// Several primary types on the curve:
/// `rank_f = Σ dim_F L_m · C(n−1, m−1) / C(n+1, m)`.
pub fn rank_su_curve_mixed(p: &UnitaryMixedDatumParams) -> Result<RankProfile> {
    let p = params::validate_unitary_mixed(p.clone())?;
    let d = int(p.d);
    let mut rank_f = int(0);
    let mut rank_u = half(p.dim_v0);
    for (i, &k) in p.multiplicities.iter().enumerate() {
        let m = i as i64 + 1;
        let c_full = uint_to_rational(&binomial(p.n as i64 + 1, m));
        let c_std = uint_to_rational(&binomial(p.n as i64 - 1, m - 1));
        let dim_l = int(2u32) * int(k) * &c_full;
        rank_f += &dim_l * &c_std / &c_full;
        rank_u += &dim_l * (&d / int(2) * &c_full - &c_std) / &c_full;
    }
    let g = uint_to_rational(&params::genus_unitary_mixed(&p)?);
    profile(g, rank_f, rank_u, Locus::CurveC)
}

fn rank_so(p: &OrthogonalDatumParams, locus: Locus) -> Result<RankProfile> {
    let g0 = uint_to_rational(&params::primary_genus_orthogonal(p)?);
    let d = int(p.d);
    // dim_F L = 2 g₀ / d
    let dim_l = int(2) * &g0 / &d;
    let rank_f = &dim_l / int(2);
    let rank_u = (int(p.dim_v0) + (&d - int(1)) * &dim_l) / int(2);
    profile(g0 + half(p.dim_v0), rank_f, rank_u, locus)
}

/// SO(n,2)-type on `M`: `rank_f = dim_F L / 2`,
/// `rank_u = (dim V₀ + (d−1) dim_F L) / 2`.
pub fn rank_so_subvariety(p: &OrthogonalDatumParams) -> Result<RankProfile> {
    rank_so(p, Locus::SubvarietyM)
}

/// Same numbers as on `M`: restricting spin modules to the curve adds no
/// trivial summand, hence no unitary part.
pub fn rank_so_curve(p: &OrthogonalDatumParams) -> Result<RankProfile> {
    rank_so(p, Locus::CurveC)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::HalfSpinPart;

    fn su(d: u32, n: u32, m: u32, copies: u64, dim_v0: u64) -> UnitaryDatumParams {
        UnitaryDatumParams { d, n, m, copies, dim_v0 }
    }

    fn so(d: u32, n: u32, copies: u64, dim_v0: u64) -> OrthogonalDatumParams {
        OrthogonalDatumParams { d, n, copies, half_spin_part: HalfSpinPart::default_for(n), dim_v0 }
    }

    fn triple(r: &RankProfile) -> (i64, i64, i64) {
        use num_traits::ToPrimitive;
        (r.g.to_i64().unwrap(), r.rank_f.to_i64().unwrap(), r.rank_u.to_i64().unwrap())
    }

    #[test]
    fn su_subvariety_examples() {
        assert_eq!(triple(&rank_su_subvariety(&su(2, 2, 1, 1, 0)).unwrap()), (6, 3, 3));
        assert_eq!(triple(&rank_su_subvariety(&su(1, 1, 1, 1, 0)).unwrap()), (2, 2, 0));
        assert_eq!(triple(&rank_su_subvariety(&su(3, 1, 1, 2, 2)).unwrap()), (13, 4, 9));
    }

    #[test]
    fn su_curve_examples() {
        assert_eq!(triple(&rank_su_curve(&su(2, 2, 1, 1, 0)).unwrap()), (6, 2, 4));
        assert_eq!(triple(&rank_su_curve(&su(1, 1, 1, 1, 0)).unwrap()), (2, 2, 0));
        assert_eq!(triple(&rank_su_curve(&su(1, 3, 2, 1, 0)).unwrap()), (6, 4, 2));
        assert_eq!(rank_su_curve(&su(1, 3, 2, 1, 0)).unwrap().locus, Locus::CurveC);
    }

    #[test]
    fn su_mixed_examples() {
        let p = UnitaryMixedDatumParams { d: 2, n: 2, multiplicities: vec![1, 1], dim_v0: 0 };
        assert_eq!(triple(&rank_su_curve_mixed(&p).unwrap()), (12, 4, 8));

        let single = UnitaryMixedDatumParams { d: 2, n: 2, multiplicities: vec![1, 0], dim_v0: 0 };
        assert_eq!(rank_su_curve_mixed(&single).unwrap(), rank_su_curve(&su(2, 2, 1, 1, 0)).unwrap());
        assert_eq!(
            rank_su_subvariety_mixed(&single).unwrap(),
            rank_su_subvariety(&su(2, 2, 1, 1, 0)).unwrap()
        );

        let p = UnitaryMixedDatumParams { d: 1, n: 3, multiplicities: vec![0, 2, 0], dim_v0: 2 };
        assert_eq!(triple(&rank_su_curve_mixed(&p).unwrap()), (13, 8, 5));
    }

    #[test]
    fn so_examples() {
        assert_eq!(triple(&rank_so_subvariety(&so(6, 1, 1, 0)).unwrap()), (12, 2, 10));
        assert_eq!(triple(&rank_so_curve(&so(6, 1, 1, 0)).unwrap()), (12, 2, 10));
        assert_eq!(rank_so_curve(&so(1, 4, 1, 0)).unwrap().rank_u, BigInt::from(0));
        let r = rank_so_curve(&so(6, 2, 1, 0)).unwrap();
        assert_eq!(&r.rank_f * 6, r.g);
        assert_eq!(&r.rank_u * 6, &r.g * 5);
    }

    #[test]
    fn invalid_params_propagate() {
        assert_eq!(rank_su_curve(&su(1, 2, 3, 1, 0)).unwrap_err().code(), "m_out_of_range");
    }
}
