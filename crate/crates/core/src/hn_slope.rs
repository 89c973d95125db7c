//! Harder–Narasimhan polygons of abstract `(rank, degree)` data and the
//! slope-inequality bounds on the unitary rank of a fibred surface.
//!
//! A filtration is modelled by its polygon: the upper convex hull of the
//! points `(rank E', deg E')` of candidate subsheaves, running from `(0,0)`
//! to `(rank E, deg E)`. Pieces of equal slope are merged, so consecutive
//! slopes are strictly decreasing.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{format_ratio_compact, int, ratio};
use crate::error::{Error, Result};

/// `(rank, degree)` of a sheaf; slope `μ = degree / rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoint {
    rank: u64,
    degree: BigRational,
}

impl GradedPoint {
    pub fn new(rank: u64, degree: BigRational) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Self { rank, degree })
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn degree(&self) -> &BigRational {
        &self.degree
    }

    pub fn slope(&self) -> BigRational {
        &self.degree / int(self.rank)
    }
}

/// Vertices `(cumulative rank, cumulative degree)` from `(0,0)` to the
/// total, with strictly decreasing piece slopes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnPolygon {
    vertices: Vec<(u64, BigRational)>,
}

fn segment_slope(a: &(u64, BigRational), b: &(u64, BigRational)) -> BigRational {
    (&b.1 - &a.1) / int(b.0 - a.0)
}

impl HnPolygon {
    pub fn vertices(&self) -> &[(u64, BigRational)] {
        &self.vertices
    }

    pub fn slopes(&self) -> Vec<BigRational> {
        self.vertices.windows(2).map(|w| segment_slope(&w[0], &w[1])).collect()
    }

    /// Ranks of the successive semistable quotients.
    pub fn piece_ranks(&self) -> Vec<u64> {
        self.vertices.windows(2).map(|w| w[1].0 - w[0].0).collect()
    }

    pub fn total(&self) -> GradedPoint {
        let (r, d) = self.vertices.last().cloned().expect("polygon has an endpoint");
        GradedPoint { rank: r, degree: d }
    }

    /// Slope of the last quotient in the filtration.
    pub fn final_slope(&self) -> BigRational {
        let n = self.vertices.len();
        segment_slope(&self.vertices[n - 2], &self.vertices[n - 1])
    }

    pub fn is_semistable(&self) -> bool {
        self.vertices.len() == 2
    }

    pub fn is_positive(&self) -> bool {
        self.final_slope().is_positive()
    }

    pub fn is_semipositive(&self) -> bool {
        !self.final_slope().is_negative()
    }

    /// Whether `(rank, degree)` lies on or below the polygon.
    pub fn lies_below(&self, rank: u64, degree: &BigRational) -> bool {
        if rank > self.total().rank {
            return false;
        }
        for w in self.vertices.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if rank >= a.0 && rank <= b.0 {
                let height = &a.1 + segment_slope(a, b) * int(rank - a.0);
                return *degree <= height;
            }
        }
        false
    }
}

impl fmt::Display for HnPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|(r, d)| format!("({r},{})", format_ratio_compact(d)))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Upper convex hull of `(0,0)`, the subobject points and the total.
///
/// Without an explicit `total`, the point of largest rank plays that role.
pub fn hn_hull(subobjects: &[GradedPoint], total: Option<&GradedPoint>) -> Result<HnPolygon> {
    let total = match total {
        Some(t) => t.clone(),
        None => {
            let max_rank = subobjects.iter().map(|p| p.rank).max().ok_or(Error::EmptyInput)?;
            let mut at_max = subobjects.iter().filter(|p| p.rank == max_rank);
            let first = at_max.next().expect("max rank is attained").clone();
            if at_max.any(|p| p.degree != first.degree) {
                return Err(Error::ConflictingTotal(max_rank));
            }
            first
        }
    };

    // best degree per rank; only the highest point at a rank can be a vertex
    let mut best: BTreeMap<u64, BigRational> = BTreeMap::new();
    for p in subobjects {
        if p.rank > total.rank {
            return Err(Error::RankExceedsTotal { rank: p.rank, total: total.rank });
        }
        if p.rank == total.rank {
            if p.degree != total.degree {
                return Err(Error::ConflictingTotal(total.rank));
            }
            continue;
        }
        best.entry(p.rank)
            .and_modify(|d| {
                if p.degree > *d {
                    *d = p.degree.clone();
                }
            })
            .or_insert_with(|| p.degree.clone());
    }
    best.insert(0, BigRational::zero());
    best.insert(total.rank, total.degree.clone());

    let mut hull: Vec<(u64, BigRational)> = Vec::with_capacity(best.len());
    for point in best {
        while hull.len() >= 2 {
            let k = hull.len();
            // drop the middle vertex unless slopes strictly decrease through it
            if segment_slope(&hull[k - 2], &hull[k - 1]) <= segment_slope(&hull[k - 1], &point) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(point);
    }
    Ok(HnPolygon { vertices: hull })
}

/// Pull-back along a finite cover of degree `cover_degree`: degrees scale,
/// ranks stay.
pub fn pullback(p: &HnPolygon, cover_degree: u64) -> Result<HnPolygon> {
    if cover_degree == 0 {
        return Err(Error::CoverDegreeZero);
    }
    let k = int(cover_degree);
    Ok(HnPolygon { vertices: p.vertices.iter().map(|(r, d)| (*r, d * &k)).collect() })
}

/// An upper bound on `rank U^{−1,0}`, possibly strict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitaryRankBound {
    pub value: BigRational,
    pub strict: bool,
}

impl UnitaryRankBound {
    /// Whether a unitary rank is compatible with the bound.
    pub fn admits(&self, rank_u: &BigRational) -> bool {
        if self.strict {
            rank_u < &self.value
        } else {
            rank_u <= &self.value
        }
    }
}

/// Result of re-deriving a bound: the bound plus the reasoning steps.
#[derive(Debug, Clone)]
pub struct BoundDerivation {
    pub bound: UnitaryRankBound,
    pub log: Vec<String>,
}

/// `c + k·u` for a single unknown `u`.
#[derive(Debug, Clone)]
struct Affine {
    constant: BigRational,
    coeff: BigRational,
}

impl Affine {
    /// Solves `self ≥ 0` (or `> 0`) for `u`, assuming `coeff < 0`.
    fn upper_root(&self) -> BigRational {
        assert!(self.coeff.is_negative());
        -&self.constant / &self.coeff
    }
}

/// Degree samples used to show that `deg f_*ω` drops out of the bound.
fn degree_samples() -> [BigRational; 3] {
    [int(1), ratio(7, 3), int(1000)]
}

fn check_genus(g: u64) -> Result<()> {
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    Ok(())
}

/// Derives `rank_u ≤ (5g+1)/6` from
/// `12·deg ≥ ω² ≥ (2g−2)·μ(E₁)` and `μ(E₁) ≥ deg / (g − rank_u)`.
pub fn derive_xiao_general(g: u64) -> Result<BoundDerivation> {
    check_genus(g)?;
    let gq = int(g);
    let mut log = vec![
        "12 deg >= omega^2 >= (2g-2) mu(E_1)".to_string(),
        "mu(E_1) >= mu(F) = deg / (g - u)".to_string(),
        "multiply by (g - u)/deg > 0: 12 (g - u) >= 2g - 2".to_string(),
    ];
    let mut bound: Option<BigRational> = None;
    for deg in degree_samples() {
        // 12·deg·(g − u) − (2g − 2)·deg ≥ 0
        let form = Affine {
            constant: int(12) * &deg * &gq - (int(2) * &gq - int(2)) * &deg,
            coeff: int(-12) * &deg,
        };
        let root = form.upper_root();
        if let Some(prev) = &bound {
            assert_eq!(prev, &root, "deg must cancel");
        }
        bound = Some(root);
    }
    let value = bound.expect("at least one sample");
    log.push(format!("u <= {}", format_ratio_compact(&value)));
    Ok(BoundDerivation { bound: UnitaryRankBound { value, strict: false }, log })
}

/// Derives `rank_u < (4g+2)/5` when `F` is semistable, using Clifford's
/// theorem `d₁ > 2(g − rank_u − 1)` on a non-hyperelliptic fibre.
pub fn derive_xiao_refined(g: u64) -> Result<BoundDerivation> {
    check_genus(g)?;
    let gq = int(g);
    let mut log = vec![
        "12 deg >= omega^2 >= (2g-2+d_1) mu + omega.Z".to_string(),
        "Clifford: d_1 > 2(g-u-1) unless d_1 = g-u-1 = 0".to_string(),
        "degenerate branch d_1 = 0: omega.Z > 0 keeps the inequality strict".to_string(),
        "12 deg > (4g-4-2u) mu with mu = deg/(g-u)".to_string(),
        "multiply by (g - u)/deg > 0: 12 (g - u) > 4g - 4 - 2u".to_string(),
    ];
    let mut bound: Option<BigRational> = None;
    for deg in degree_samples() {
        // 12·deg·(g − u) − (4g − 4 − 2u)·deg > 0
        let form = Affine {
            constant: int(12) * &deg * &gq - (int(4) * &gq - int(4)) * &deg,
            coeff: int(-12) * &deg + int(2) * &deg,
        };
        let root = form.upper_root();
        if let Some(prev) = &bound {
            assert_eq!(prev, &root, "deg must cancel");
        }
        bound = Some(root);
    }
    let value = bound.expect("at least one sample");
    log.push(format!("u < {}", format_ratio_compact(&value)));
    Ok(BoundDerivation { bound: UnitaryRankBound { value, strict: true }, log })
}

/// `(5g+1)/6`, re-derived and checked against the closed form.
pub fn xiao_general_bound(g: u64) -> Result<BigRational> {
    let derived = derive_xiao_general(g)?.bound.value;
    let closed = (int(5) * int(g) + int(1)) / int(6);
    assert_eq!(derived, closed);
    Ok(closed)
}

/// `(4g+2)/5` (strict), re-derived and checked against the closed form.
pub fn xiao_refined_bound(g: u64) -> Result<UnitaryRankBound> {
    let derived = derive_xiao_refined(g)?.bound;
    let closed = (int(4) * int(g) + int(2)) / int(5);
    assert_eq!(derived.value, closed);
    Ok(derived)
}

/// `(g+1)/2`: the relative-irregularity bound used when the general fibre
/// is hyperelliptic. Quoted, not derived here.
pub fn hyperelliptic_unitary_bound(g: u64) -> BigRational {
    ratio(g + 1, 2u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(r: u64, num: i64, den: i64) -> GradedPoint {
        GradedPoint::new(r, ratio(num, den)).unwrap()
    }

    #[test]
    fn semistable_single_total() {
        let p = hn_hull(&[], Some(&pt(3, 6, 1))).unwrap();
        assert!(p.is_semistable());
        assert_eq!(p.final_slope(), int(2));
    }

    #[test]
    fn hull_keeps_points_above_chords() {
        // (2,4) sits above the chord from (1,3) to (3,4)
        let p = hn_hull(&[pt(1, 3, 1), pt(2, 4, 1)], Some(&pt(3, 4, 1))).unwrap();
        let v: Vec<(u64, BigRational)> = vec![(0, int(0)), (1, int(3)), (2, int(4)), (3, int(4))];
        assert_eq!(p.vertices(), &v[..]);
        assert_eq!(p.slopes(), vec![int(3), int(1), int(0)]);
    }

    #[test]
    fn two_piece_polygon() {
        let p = hn_hull(&[pt(1, 3, 1)], Some(&pt(3, 4, 1))).unwrap();
        assert_eq!(p.slopes(), vec![int(3), ratio(1, 2)]);
        assert_eq!(p.final_slope(), ratio(1, 2));
        assert!(!p.is_semistable());
        assert!(p.is_positive());
        assert!(p.is_semipositive());
        assert_eq!(p.piece_ranks(), vec![1, 2]);
    }

    #[test]
    fn collinear_points_merge() {
        let p = hn_hull(&[pt(1, 1, 1), pt(2, 2, 1)], Some(&pt(3, 3, 1))).unwrap();
        assert!(p.is_semistable());
        assert_eq!(p.final_slope(), int(1));
    }

    #[test]
    fn sign_classifications() {
        let zero = hn_hull(&[], Some(&pt(2, 0, 1))).unwrap();
        assert!(zero.is_semistable() && zero.is_semipositive() && !zero.is_positive());
        let neg = hn_hull(&[pt(1, -2, 1)], Some(&pt(1, -1, 1)));
        assert_eq!(neg.unwrap_err(), Error::ConflictingTotal(1));
        let neg = hn_hull(&[pt(1, -3, 1)], Some(&pt(2, -2, 1))).unwrap();
        assert!(neg.is_semistable() && !neg.is_semipositive() && !neg.is_positive());
        assert_eq!(neg.final_slope(), int(-1));
    }

    #[test]
    fn implied_total() {
        let p = hn_hull(&[pt(1, 3, 1), pt(3, 4, 1)], None).unwrap();
        assert_eq!(p.total(), pt(3, 4, 1));
        assert_eq!(hn_hull(&[], None).unwrap_err(), Error::EmptyInput);
        assert_eq!(
            hn_hull(&[pt(2, 1, 1), pt(2, 3, 1)], None).unwrap_err(),
            Error::ConflictingTotal(2)
        );
        assert!(matches!(
            hn_hull(&[pt(4, 1, 1)], Some(&pt(3, 1, 1))),
            Err(Error::RankExceedsTotal { rank: 4, total: 3 })
        ));
        assert_eq!(GradedPoint::new(0, int(1)).unwrap_err(), Error::ZeroRank);
    }

    #[test]
    fn pullback_scales_degrees() {
        let p = hn_hull(&[], Some(&pt(2, 1, 1))).unwrap();
        assert_eq!(pullback(&p, 2).unwrap().final_slope(), int(1));
        assert_eq!(pullback(&p, 1).unwrap(), p);
        assert_eq!(pullback(&p, 0).unwrap_err(), Error::CoverDegreeZero);
    }

    #[test]
    fn general_bound_examples() {
        assert_eq!(xiao_general_bound(2).unwrap(), ratio(11, 6));
        assert_eq!(xiao_general_bound(7).unwrap(), int(6));
        assert_eq!(xiao_general_bound(13).unwrap(), int(11));
        assert_eq!(xiao_general_bound(1).unwrap_err().code(), "g_too_small");
    }

    #[test]
    fn refined_bound_examples() {
        let b = xiao_refined_bound(2).unwrap();
        assert_eq!(b.value, int(2));
        assert!(b.strict);
        assert_eq!(xiao_refined_bound(12).unwrap().value, int(10));
        assert_eq!(xiao_refined_bound(3).unwrap().value, ratio(14, 5));
        assert!(!b.admits(&int(2)));
        assert!(b.admits(&ratio(19, 10)));
    }

    #[test]
    fn derivation_log_mentions_degenerate_branch() {
        let d = derive_xiao_refined(5).unwrap();
        assert!(d.log.iter().any(|l| l.contains("degenerate")));
        assert_eq!(d.log.last().unwrap(), "u < 22/5");
    }

    #[test]
    fn hyperelliptic_constant_is_below_refined_bound() {
        for g in 2..200 {
            assert!(hyperelliptic_unitary_bound(g) < xiao_refined_bound(g).unwrap().value);
        }
    }
}
