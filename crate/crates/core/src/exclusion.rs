//! Exclusion verdicts for Shimura curves and subvarieties, and the
//! exhaustive certificate for the threshold corollaries of the unitary
//! criterion.
//!
//! A verdict of `excluded = false` only says the criterion does not apply;
//! it never claims the datum lies in the Torelli locus.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{binomial, format_ratio, int, ratio, uint_to_rational};
use crate::error::{Error, Result};
use crate::higgs_rank;
use crate::params::{self, OrthogonalDatumParams, UnitaryDatumParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// `rank_u > (5g+1)/6`, any curve.
    CurveGeneral,
    /// `rank_u ≥ (4g+2)/5`, Shimura curves.
    CurveShimura,
    /// `(1 − 10m(n−m+1)/(dn(n+1)))·g ≥ 2`.
    SuMainInequality,
    /// The per-`m` degree thresholds.
    SuThreshold,
    /// `rank_f(C) ≤ (g−2)/5` for orthogonal data.
    SoDegree,
}

impl Criterion {
    pub fn label(self) -> &'static str {
        match self {
            Criterion::CurveGeneral => "curve_general",
            Criterion::CurveShimura => "curve_shimura",
            Criterion::SuMainInequality => "su_main_inequality",
            Criterion::SuThreshold => "su_threshold",
            Criterion::SoDegree => "so_degree",
        }
    }

    /// Whether a zero margin already counts as excluded.
    pub fn accepts_equality(self) -> bool {
        !matches!(self, Criterion::CurveGeneral)
    }
}

/// Outcome of one criterion. `margin` is LHS − RHS of the criterion, so
/// `excluded ⇔ margin ≥ 0` (or `> 0` for [`Criterion::CurveGeneral`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusionVerdict {
    pub excluded: bool,
    pub criterion: Criterion,
    pub margin: BigRational,
    pub notes: Vec<String>,
}

impl ExclusionVerdict {
    fn from_margin(criterion: Criterion, margin: BigRational) -> Self {
        let excluded = if criterion.accepts_equality() {
            !margin.is_negative()
        } else {
            margin.is_positive()
        };
        Self { excluded, criterion, margin, notes: Vec::new() }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

impl fmt::Display for ExclusionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} by {} (margin {})",
            if self.excluded { "excluded" } else { "not excluded" },
            self.criterion.label(),
            format_ratio(&self.margin)
        )
    }
}

fn small_genus(g: &BigInt) -> Option<u64> {
    use num_traits::ToPrimitive;
    g.to_u64()
}

/// The curve criterion: `rank_u > (5g+1)/6` in general, `rank_u ≥ (4g+2)/5`
/// for Shimura curves.
pub fn exclude_curve(g: &BigInt, rank_u: &BigInt, shimura: bool) -> Result<ExclusionVerdict> {
    if *g < BigInt::from(2) {
        return Err(Error::GenusTooSmall(small_genus(g).unwrap_or(0)));
    }
    if rank_u > g || rank_u.is_negative() {
        return Err(Error::RankExceedsGenus {
            g: small_genus(g).unwrap_or(u64::MAX),
            rank_u: small_genus(rank_u).unwrap_or(u64::MAX),
        });
    }
    let gq = BigRational::from_integer(g.clone());
    let u = BigRational::from_integer(rank_u.clone());
    let verdict = if shimura {
        ExclusionVerdict::from_margin(Criterion::CurveShimura, u - (int(4) * gq + int(2)) / int(5))
    } else {
        ExclusionVerdict::from_margin(Criterion::CurveGeneral, u - (int(5) * gq + int(1)) / int(6))
    };
    Ok(verdict)
}

/// `1 − 10m(n−m+1)/(dn(n+1))`.
pub fn su_coefficient(d: u32, n: u32, m: u32) -> BigRational {
    let (d, n, m) = (int(d), int(n), int(m));
    int(1) - int(10) * &m * (&n - &m + int(1)) / (&d * &n * (&n + int(1)))
}

/// The main unitary criterion for τ-primary data without trivial summand.
pub fn exclude_su(p: &UnitaryDatumParams) -> Result<ExclusionVerdict> {
    let p = params::validate_unitary(*p)?;
    if p.dim_v0 != 0 {
        return Err(Error::V0NonzeroForPrimaryCriterion(p.dim_v0));
    }
    let g = params::genus_unitary(&p)?;
    let gq = uint_to_rational(&g);
    let margin = su_coefficient(p.d, p.n, p.m) * &gq - int(2);
    let verdict = ExclusionVerdict::from_margin(Criterion::SuMainInequality, margin);

    let curve = higgs_rank::rank_su_curve(&p)?;
    let via_curve = exclude_curve(&curve.g, &curve.rank_u, true)?;
    assert_eq!(verdict.excluded, via_curve.excluded, "criterion mismatch at {p:?}");
    let verdict = verdict.note(format!("curve ranks: rank_f={} rank_u={}", curve.rank_f, curve.rank_u));
    Ok(if su_threshold(&p) { verdict.note("degree threshold holds") } else { verdict })
}

/// [`exclude_su`] for primary data; with a trivial summand, the Shimura
/// curve criterion applied to the curve ranks.
pub fn exclude_su_datum(p: &UnitaryDatumParams) -> Result<ExclusionVerdict> {
    if p.dim_v0 == 0 {
        return exclude_su(p);
    }
    let curve = higgs_rank::rank_su_curve(p)?;
    Ok(exclude_curve(&curve.g, &curve.rank_u, true)?
        .note("trivial summand present: curve criterion applied to curve ranks"))
}

/// Which threshold rule was used by [`su_threshold_rule`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdRule {
    /// `d(n+1) ≥ 12`
    Lambda1,
    /// `d ≥ 4(5n−4)/(n(n+1))`
    Lambda2,
    /// `d ≥ (12 + 30(n−1)(n−2))/((n+1)n(n−1))`
    Lambda3,
    /// `d ≥ 3`
    LambdaAtLeast4,
    /// `d ≥ 4`, or `d ≥ 3` and `n ≥ 6`, for `m ≥ 2`
    Coarse,
}

/// The first threshold rule that holds, if any.
pub fn su_threshold_rule(p: &UnitaryDatumParams) -> Option<ThresholdRule> {
    let (d, n, m) = (p.d, p.n, p.m);
    let dq = int(d);
    let nq = int(n);
    let specific = match m {
        1 => (d as u64) * (n as u64 + 1) >= 12,
        2 => dq >= int(4) * (int(5) * &nq - int(4)) / (&nq * (&nq + int(1))),
        3 => {
            dq >= (int(12) + int(30) * (&nq - int(1)) * (&nq - int(2)))
                / ((&nq + int(1)) * &nq * (&nq - int(1)))
        }
        _ => d >= 3,
    };
    if specific {
        return Some(match m {
            1 => ThresholdRule::Lambda1,
            2 => ThresholdRule::Lambda2,
            3 => ThresholdRule::Lambda3,
            _ => ThresholdRule::LambdaAtLeast4,
        });
    }
    if m >= 2 && (d >= 4 || (d >= 3 && n >= 6)) {
        return Some(ThresholdRule::Coarse);
    }
    None
}

/// Whether one of the sufficient degree thresholds holds.
pub fn su_threshold(p: &UnitaryDatumParams) -> bool {
    su_threshold_rule(p).is_some()
}

/// The orthogonal criterion `rank_f(C) = (2g − dim V₀)/(2d) ≤ (g−2)/5`.
pub fn exclude_so(p: &OrthogonalDatumParams) -> Result<ExclusionVerdict> {
    let p = params::validate_orthogonal(*p)?;
    let g = uint_to_rational(&params::genus_orthogonal(&p)?);
    let rank_f = (int(2) * &g - int(p.dim_v0)) / (int(2) * int(p.d));
    debug_assert_eq!(
        BigRational::from_integer(higgs_rank::rank_so_curve(&p)?.rank_f),
        rank_f
    );
    let margin = (&g - int(2)) / int(5) - &rank_f;
    let mut verdict = ExclusionVerdict::from_margin(Criterion::SoDegree, margin);
    verdict = verdict.note(if p.d >= 6 {
        "degree condition d >= 6 holds"
    } else {
        "degree condition d >= 6 fails"
    });
    if p.d == 1 {
        verdict = verdict.note("d = 1: the external g > 11 exclusion is out of criterion scope");
    }
    Ok(verdict)
}

/// `2/C(n+1,m) + 10m(n−m+1)/(n(n+1))`, the degree needed for the main
/// inequality at `N = 1`.
pub fn corollary_rhs(n: u32, m: u32) -> BigRational {
    let c = uint_to_rational(&binomial(n as i64 + 1, m as i64));
    let (nq, mq) = (int(n), int(m));
    int(2) / c + int(10) * &mq * (&nq - &mq + int(1)) / (&nq * (&nq + int(1)))
}

/// The estimate used for `n ≥ 9`: `2/(n+1) + 5(n+1)/(2n)`.
pub fn corollary_rhs_relaxed(n: u32) -> BigRational {
    let nq = int(n);
    int(2) / (&nq + int(1)) + int(5) * (&nq + int(1)) / (int(2) * &nq)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CertificateCheck {
    /// threshold ⇒ `d ≥ rhs(n, m)`
    ThresholdImpliesDegreeBound,
    /// `d ≥ rhs(n, m)` ⇒ main inequality at `N = 1`
    DegreeBoundImpliesMainInequality,
    /// excluded at `N = 1` with nonnegative coefficient ⇒ excluded for all `N`
    MonotoneInCopies,
    /// `rhs(n, m) ≤ 3` for `m ≥ 4`
    RhsAtMostThree,
}

impl CertificateCheck {
    pub fn label(self) -> &'static str {
        match self {
            CertificateCheck::ThresholdImpliesDegreeBound => "threshold=>degree_bound",
            CertificateCheck::DegreeBoundImpliesMainInequality => "degree_bound=>main_inequality",
            CertificateCheck::MonotoneInCopies => "monotone_in_copies",
            CertificateCheck::RhsAtMostThree => "rhs<=3",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub d: u32,
    pub n: u32,
    pub m: u32,
    pub check: CertificateCheck,
    pub detail: String,
}

/// What happened at one grid cell.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CellCertificate {
    pub threshold: bool,
    pub degree_bound: bool,
    pub excluded_at_one: bool,
    /// Number of implications whose hypothesis held and were checked.
    pub tested: u32,
    /// Number of implications skipped because the hypothesis failed.
    pub skipped: u32,
    pub violations: Vec<CertificateCheck>,
}

/// Largest `N` probed explicitly for monotonicity; linearity of the margin
/// in `N` covers the rest.
const MONOTONE_PROBE: u64 = 4;

/// Checks the implication chain at one `(d, n, m)`.
pub fn certify_cell(d: u32, n: u32, m: u32) -> Result<CellCertificate> {
    let p = params::validate_unitary(UnitaryDatumParams { d, n, m, copies: 1, dim_v0: 0 })?;
    let mut cell = CellCertificate {
        threshold: su_threshold(&p),
        degree_bound: int(d) >= corollary_rhs(n, m),
        ..Default::default()
    };
    let at_one = exclude_su(&p)?;
    cell.excluded_at_one = at_one.excluded;

    if cell.threshold {
        cell.tested += 1;
        if !cell.degree_bound {
            cell.violations.push(CertificateCheck::ThresholdImpliesDegreeBound);
        }
    } else {
        cell.skipped += 1;
    }

    if cell.degree_bound {
        cell.tested += 1;
        if !at_one.excluded {
            cell.violations.push(CertificateCheck::DegreeBoundImpliesMainInequality);
        }
    } else {
        cell.skipped += 1;
    }

    let coefficient = su_coefficient(d, n, m);
    if at_one.excluded && !coefficient.is_negative() {
        cell.tested += 1;
        let mut previous = at_one.margin.clone();
        let mut ok = true;
        for copies in 2..=MONOTONE_PROBE {
            let v = exclude_su(&UnitaryDatumParams { copies, ..p })?;
            if !v.excluded || v.margin < previous {
                ok = false;
            }
            previous = v.margin;
        }
        // margin(N) = coefficient·N·d·C(n+1,m) − 2 is affine in N
        let slope = &coefficient * int(d) * uint_to_rational(&binomial(n as i64 + 1, m as i64));
        if slope.is_negative() {
            ok = false;
        }
        if !ok {
            cell.violations.push(CertificateCheck::MonotoneInCopies);
        }
    } else {
        cell.skipped += 1;
    }
    Ok(cell)
}

/// Summary of a [`certify_corollaries`] run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorollaryCertificate {
    pub cells: u64,
    pub tested: u64,
    pub skipped: u64,
    pub rhs_checked: u64,
    /// `(n, m)` pairs with `n ≤ 8` settled by direct evaluation.
    pub rhs_direct: u64,
    /// `(n, m)` pairs with `n ≥ 9` also covered by the relaxed estimate.
    pub rhs_relaxed: u64,
    pub violations: Vec<Violation>,
}

impl CorollaryCertificate {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CorollaryCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "cells={} implications_tested={} skipped={} rhs_checked={} (direct={} relaxed={}) violations={}",
            self.cells,
            self.tested,
            self.skipped,
            self.rhs_checked,
            self.rhs_direct,
            self.rhs_relaxed,
            self.violations.len()
        )?;
        for v in &self.violations {
            writeln!(f, "  violation d={} n={} m={} {}: {}", v.d, v.n, v.m, v.check.label(), v.detail)?;
        }
        Ok(())
    }
}

/// `rhs(n, m) ≤ 3` for every `4 ≤ m ≤ n ≤ n_max`, plus the relaxed chain
/// `rhs ≤ 2/(n+1) + 5(n+1)/(2n) ≤ 3` for `n ≥ 9`.
pub fn certify_rhs_bound(n_max: u32) -> CorollaryCertificate {
    let rows: Vec<CorollaryCertificate> = (4..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut cert = CorollaryCertificate::default();
            let relaxed = corollary_rhs_relaxed(n);
            for m in 4..=n {
                let rhs = corollary_rhs(n, m);
                cert.rhs_checked += 1;
                if rhs > int(3) {
                    cert.violations.push(Violation {
                        d: 0,
                        n,
                        m,
                        check: CertificateCheck::RhsAtMostThree,
                        detail: format!("rhs = {}", format_ratio(&rhs)),
                    });
                }
                if n <= 8 {
                    cert.rhs_direct += 1;
                } else {
                    cert.rhs_relaxed += 1;
                    if rhs > relaxed || relaxed > int(3) {
                        cert.violations.push(Violation {
                            d: 0,
                            n,
                            m,
                            check: CertificateCheck::RhsAtMostThree,
                            detail: format!(
                                "relaxed chain broken: rhs = {}, estimate = {}",
                                format_ratio(&rhs),
                                format_ratio(&relaxed)
                            ),
                        });
                    }
                }
            }
            cert
        })
        .collect();
    merge(rows)
}

fn merge(parts: Vec<CorollaryCertificate>) -> CorollaryCertificate {
    let mut out = CorollaryCertificate::default();
    for p in parts {
        out.cells += p.cells;
        out.tested += p.tested;
        out.skipped += p.skipped;
        out.rhs_checked += p.rhs_checked;
        out.rhs_direct += p.rhs_direct;
        out.rhs_relaxed += p.rhs_relaxed;
        out.violations.extend(p.violations);
    }
    out
}

/// Exhaustively checks the threshold corollaries over
/// `1 ≤ d ≤ d_max`, `1 ≤ m ≤ min(n, m_max)`, `n ≤ n_max`, and the `m ≥ 4`
/// degree bound for `n ≤ n_max`. Rows are processed in parallel and merged
/// in `(d, n, m)` order.
pub fn certify_corollaries(n_max: u32, d_max: u32, m_max: u32) -> Result<CorollaryCertificate> {
    let rows: Vec<Result<CorollaryCertificate>> = (1..=d_max)
        .into_par_iter()
        .flat_map_iter(|d| (1..=n_max).map(move |n| (d, n)))
        .map(|(d, n)| {
            let mut cert = CorollaryCertificate::default();
            for m in 1..=n.min(m_max) {
                let cell = certify_cell(d, n, m)?;
                cert.cells += 1;
                cert.tested += cell.tested as u64;
                cert.skipped += cell.skipped as u64;
                for check in cell.violations {
                    cert.violations.push(Violation {
                        d,
                        n,
                        m,
                        check,
                        detail: format!(
                            "threshold={} degree_bound={} excluded_at_one={}",
                            cell.threshold, cell.degree_bound, cell.excluded_at_one
                        ),
                    });
                }
            }
            Ok(cert)
        })
        .collect();
    let mut parts = Vec::with_capacity(rows.len() + 1);
    for r in rows {
        parts.push(r?);
    }
    parts.push(certify_rhs_bound(n_max));
    Ok(merge(parts))
}

/// `margin(N+1) − margin(N)` for the main inequality, i.e. the slope in `N`.
pub fn su_margin_step(d: u32, n: u32, m: u32) -> BigRational {
    su_coefficient(d, n, m) * int(d) * uint_to_rational(&binomial(n as i64 + 1, m as i64))
}

/// `true` when `rank_u > (5g+1)/6` is equivalent to `rank_f < (g−1)/6` and
/// `rank_u ≥ (4g+2)/5` to `rank_f ≤ (g−2)/5`, for every split of `g`.
pub fn curve_criterion_equivalences_hold(g: u64) -> bool {
    let gq = int(g);
    let general = ratio(5 * g + 1, 6u32);
    let shimura = ratio(4 * g + 2, 5u32);
    (0..=g).all(|u| {
        let uq = int(u);
        let fq = &gq - &uq;
        let a = uq > general;
        let b = fq < (&gq - int(1)) / int(6);
        let c = uq >= shimura;
        let e = fq <= (&gq - int(2)) / int(5);
        a == b && c == e
    })
}

#[doc(hidden)]
pub fn is_one(q: &BigRational) -> bool {
    q.is_one()
}

#[doc(hidden)]
pub fn is_zero(q: &BigRational) -> bool {
    q.is_zero()
}
