//! Verification suites: every check compares a fast path against an
//! independent oracle (or a closed form against an enumeration) and
//! records the first counterexamples it meets.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{binomial, int, ratio};
use crate::clifford::{self, clifford_mul, CliffordElement, DiagonalForm, Grade};
use crate::error::Result;
use crate::exclusion;
use crate::higgs_rank::{self, RankProfile};
use crate::hn_slope::{self, GradedPoint, HnPolygon};
use crate::params::{HalfSpinPart, OrthogonalDatumParams, UnitaryDatumParams, UnitaryMixedDatumParams};
use crate::weights::{self, SpinPart};

/// Failures kept per check; the count is always exact.
const MAX_REPORTED: usize = 20;

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub checks: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            checks: 0,
            failure_count: 0,
            failures: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(msg);
        }
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(f);
            }
        }
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} checks, {} failures, {:.2}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checks,
            self.failure_count,
            self.elapsed.as_secs_f64()
        )?;
        for msg in &self.failures {
            write!(f, "\n  {msg}")?;
        }
        Ok(())
    }
}

/// Independent reference implementations.
pub mod oracles {
    use super::*;

    /// Product of two basis words by explicit rewriting: concatenate, then
    /// bubble-sort adjacent generators (each swap of distinct generators
    /// flips the sign) and contract equal neighbours to `a_i`.
    pub fn word_product(form: &DiagonalForm, a: u32, b: u32) -> (BigRational, u32) {
        let mut word: Vec<usize> = bits(a).chain(bits(b)).collect();
        let mut scalar = int(1);
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < word.len() {
                if word[i] == word[i + 1] {
                    scalar *= &form.coeffs()[word[i]];
                    word.drain(i..i + 2);
                    changed = true;
                } else if word[i] > word[i + 1] {
                    word.swap(i, i + 1);
                    scalar = -scalar;
                    changed = true;
                    i += 1;
                } else {
                    i += 1;
                }
            }
            if !changed {
                break;
            }
        }
        let mask = word.iter().fold(0u32, |m, &g| m | (1 << g));
        (scalar, mask)
    }

    fn bits(mask: u32) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| mask >> i & 1 == 1)
    }

    pub fn slow_mul(form: &DiagonalForm, x: &CliffordElement, y: &CliffordElement) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let (s, m) = word_product(form, a, b);
                out.add_term(m, s * ca * cb);
            }
        }
        out
    }

    /// Ranks read off the weights: a datum with `copies` copies of a
    /// representation with `weight_count` weights whose curve restriction
    /// is `decomposition`, over a degree-`d` field.
    ///
    /// On `M` only the non-compact place is non-unitary and contributes
    /// half its dimension; on the curve each standard string contributes
    /// one `(−1,0)` direction per copy and per dual.
    pub fn ranks_from_weights(
        d: u32,
        copies: u64,
        dim_v0: u64,
        weight_count: u64,
        decomposition: &weights::Sl2Decomposition,
    ) -> (RankProfile, RankProfile) {
        let n = BigInt::from(copies);
        let w = BigInt::from(weight_count);
        let v0 = BigInt::from(dim_v0 / 2);
        let compact = &n * BigInt::from(d - 1) * &w;
        let g = &n * BigInt::from(d) * &w + &v0;
        let on_m = RankProfile {
            g: g.clone(),
            rank_f: &n * &w,
            rank_u: &compact + &v0,
            locus: higgs_rank::Locus::SubvarietyM,
        };
        let std = BigInt::from(decomposition.std_count());
        let triv = BigInt::from(decomposition.trivial_count());
        let on_c = RankProfile {
            g,
            rank_f: BigInt::from(2) * &n * std,
            rank_u: compact + &n * triv + v0,
            locus: higgs_rank::Locus::CurveC,
        };
        (on_m, on_c)
    }

    /// Upper hull by brute force: among all subsets of the candidate
    /// points, the unique chain from the origin to the total with strictly
    /// decreasing slopes that has every point on or below it.
    pub fn exhaustive_hull(points: &[(u64, BigRational)], total: &(u64, BigRational)) -> Vec<(u64, BigRational)> {
        let inner: Vec<&(u64, BigRational)> = points.iter().filter(|p| p.0 < total.0).collect();
        let origin = (0u64, BigRational::zero());
        let mut found: Option<Vec<(u64, BigRational)>> = None;
        for subset in 0u64..(1u64 << inner.len()) {
            let mut chain = vec![origin.clone()];
            let mut chosen: Vec<&(u64, BigRational)> =
                (0..inner.len()).filter(|i| subset >> i & 1 == 1).map(|i| inner[i]).collect();
            chosen.sort_by_key(|p| p.0);
            chain.extend(chosen.into_iter().cloned());
            chain.push(total.clone());
            if !strictly_concave(&chain) {
                continue;
            }
            if points.iter().all(|p| on_or_below(&chain, p)) {
                assert!(found.is_none() || found.as_ref() == Some(&chain));
                found = Some(chain);
            }
        }
        found.expect("the upper hull always exists")
    }

    fn slope(a: &(u64, BigRational), b: &(u64, BigRational)) -> BigRational {
        (&b.1 - &a.1) / int(b.0 - a.0)
    }

    fn strictly_concave(chain: &[(u64, BigRational)]) -> bool {
        if chain.windows(2).any(|w| w[0].0 >= w[1].0) {
            return false;
        }
        let slopes: Vec<BigRational> = chain.windows(2).map(|w| slope(&w[0], &w[1])).collect();
        slopes.windows(2).all(|s| s[0] > s[1])
    }

    fn on_or_below(chain: &[(u64, BigRational)], p: &(u64, BigRational)) -> bool {
        chain.windows(2).any(|w| {
            p.0 >= w[0].0 && p.0 <= w[1].0 && p.1 <= &w[0].1 + slope(&w[0], &w[1]) * int(p.0 - w[0].0)
        })
    }
}

/// Lambda branching: `Std^{C(n−1,m−1)} ⊕ Trivial^{C(n−1,m)+C(n−1,m−2)}`.
pub fn branching_certificate(n_max: u32) -> SuiteReport {
    let start = Instant::now();
    let pairs: Vec<(u32, u32)> = (1..=n_max).flat_map(|n| (1..=n).map(move |m| (n, m))).collect();
    let parts: Vec<SuiteReport> = pairs
        .par_iter()
        .map(|&(n, m)| {
            let mut r = SuiteReport::new("branching");
            let (ni, mi) = (n as i64, m as i64);
            let want_std = binomial(ni - 1, mi - 1).to_u64().unwrap();
            let want_triv = (binomial(ni - 1, mi) + binomial(ni - 1, mi - 2)).to_u64().unwrap();
            let want_dim = binomial(ni + 1, mi).to_u64().unwrap();
            match weights::branch_lambda_to_curve(n, m) {
                Ok(dec) => {
                    r.check(
                        dec.std_count() == want_std
                            && dec.trivial_count() == want_triv
                            && dec.longer_count() == 0
                            && dec.dimension() == want_dim,
                        || format!("n={n} m={m}: got {dec}, want Std x{want_std}, Trivial x{want_triv}"),
                    );
                }
                Err(e) => r.fail(format!("n={n} m={m}: {e}")),
            }
            r
        })
        .collect();
    merged("branching", parts, start)
}

fn merged(name: &str, parts: Vec<SuiteReport>, start: Instant) -> SuiteReport {
    let mut out = SuiteReport::new(name);
    for p in parts {
        out.absorb(p);
    }
    out.timed(start)
}

/// Spin branching: no trivial summands, the expected standard count,
/// tensor factorisation and the odd/even restrictions.
pub fn spin_branching_certificate(dim_h_max: u32) -> SuiteReport {
    let start = Instant::now();
    let mut r = SuiteReport::new("spin_branching");
    for dim_h in 3..=dim_h_max {
        let m = dim_h / 2;
        let parts: &[SpinPart] =
            if dim_h % 2 == 1 { &[SpinPart::Full] } else { &[SpinPart::Plus, SpinPart::Minus] };
        for &part in parts {
            let want_std: u64 = if dim_h % 2 == 1 { 1 << (m - 1) } else { 1 << (m - 2) };
            match weights::branch_spin_to_curve(dim_h, part) {
                Ok(dec) => r.check(
                    dec.trivial_count() == 0 && dec.longer_count() == 0 && dec.std_count() == want_std,
                    || format!("dim_h={dim_h} part={}: got {dec}, want Std x{want_std}", part.label()),
                ),
                Err(e) => r.fail(format!("dim_h={dim_h} part={}: {e}", part.label())),
            }
        }
    }
    for m1 in 1..10u32 {
        for m2 in 1..=(10 - m1) {
            r.check(weights::spin_tensor_factorization_check(m1, m2), || {
                format!("P(T1+T2) != P(T1)xP(T2) for m1={m1} m2={m2}")
            });
        }
    }
    for m in 2..=8u32 {
        r.check(weights::odd_spin_splits_into_half_spins(m), || {
            format!("spin of dim {} does not split into half-spins", 2 * m + 1)
        });
        for part in [SpinPart::Plus, SpinPart::Minus] {
            r.check(weights::half_spin_restricts_to_odd_spin(m, part), || {
                format!("half-spin {} of dim {} does not restrict", part.label(), 2 * m)
            });
        }
    }
    r.timed(start)
}

/// First counterexample found by [`clifford_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordFailure {
    pub property: &'static str,
    pub x: CliffordElement,
    pub y: CliffordElement,
    pub z: CliffordElement,
}

impl fmt::Display for CliffordFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails for x = {}, y = {}, z = {}", self.property, self.x, self.y, self.z)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordCheck {
    pub trials: u64,
    pub checks: u64,
    pub failure: Option<CliffordFailure>,
}

fn small_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> BigRational {
    loop {
        let q = ratio(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=3));
        if !nonzero || !q.is_zero() {
            return q;
        }
    }
}

fn random_element(rng: &mut ChaCha8Rng, dim: usize) -> CliffordElement {
    let mut x = CliffordElement::zero();
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let mask = rng.gen_range(0..(1u32 << dim));
        x.add_term(mask, small_rational(rng, true));
    }
    x
}

/// Seeded self-check of the Clifford kernel on one form: associativity,
/// agreement with the rewriting oracle, `(xy)* = y*x*` and `v·v = Q(v,v)`.
pub fn clifford_check(form: &DiagonalForm, trials: u64, seed: u64) -> Result<CliffordCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = form.dim();
    let mut out = CliffordCheck { trials, checks: 0, failure: None };
    if dim == 0 {
        return Ok(out);
    }
    for _ in 0..trials {
        let x = random_element(&mut rng, dim);
        let y = random_element(&mut rng, dim);
        let z = random_element(&mut rng, dim);
        let xy = clifford_mul(form, &x, &y)?;
        let yz = clifford_mul(form, &y, &z)?;
        let fail = |property| Some(CliffordFailure { property, x: x.clone(), y: y.clone(), z: z.clone() });

        out.checks += 1;
        if clifford_mul(form, &xy, &z)? != clifford_mul(form, &x, &yz)? {
            out.failure = fail("associativity");
            break;
        }
        out.checks += 1;
        if xy != oracles::slow_mul(form, &x, &y) {
            out.failure = fail("oracle_product");
            break;
        }
        out.checks += 1;
        if clifford::star(&xy) != clifford_mul(form, &clifford::star(&y), &clifford::star(&x))? {
            out.failure = fail("star_anti_automorphism");
            break;
        }
        // sparse-ish: each coordinate is zero with probability about 1/2
        let v: Vec<BigRational> = (0..dim)
            .map(|_| if rng.gen_bool(0.5) { BigRational::zero() } else { small_rational(&mut rng, true) })
            .collect();
        let ve = CliffordElement::vector(&v);
        out.checks += 1;
        if clifford_mul(form, &ve, &ve)? != CliffordElement::scalar(form.evaluate(&v)) {
            out.failure = Some(CliffordFailure {
                property: "vector_square",
                x: ve.clone(),
                y: ve,
                z: CliffordElement::one(),
            });
            break;
        }
    }
    Ok(out)
}

/// Random nonzero diagonal forms with up to `max_dim` generators, each
/// checked on `triples` random triples; also the even-part dimension.
pub fn clifford_kernel(forms: usize, max_dim: usize, triples: u64, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jobs: Vec<(Vec<BigRational>, u64)> = (0..forms)
        .map(|_| {
            let dim = rng.gen_range(1..=max_dim);
            let coeffs = (0..dim).map(|_| small_rational(&mut rng, true)).collect();
            (coeffs, rng.gen())
        })
        .collect();
    let parts: Vec<SuiteReport> = jobs
        .into_par_iter()
        .map(|(coeffs, form_seed)| {
            let mut r = SuiteReport::new("clifford");
            let label: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            let label = label.join(",");
            let form = match DiagonalForm::new(coeffs) {
                Ok(f) => f,
                Err(e) => {
                    r.fail(format!("form [{label}]: {e}"));
                    return r;
                }
            };
            match clifford_check(&form, triples, form_seed) {
                Ok(c) => {
                    r.checks += c.checks;
                    if let Some(f) = c.failure {
                        r.fail(format!("form [{label}]: {f}"));
                    }
                }
                Err(e) => r.fail(format!("form [{label}]: {e}")),
            }
            let want = 1u64 << (form.dim() - 1);
            let got = clifford::even_basis_count(&form);
            r.check(got == want, || format!("form [{label}]: even part has {got} basis masks, want {want}"));
            let unit_even = clifford::grade(&CliffordElement::one()) == Grade::Even;
            r.check(unit_even, || "unit is not even".to_string());
            r
        })
        .collect();
    merged("clifford", parts, start)
}

fn compare_profiles(r: &mut SuiteReport, what: &str, got: Result<RankProfile>, want: &RankProfile) {
    match got {
        Ok(p) => r.check(&p == want, || format!("{what}: closed form {p}, oracle {want}")),
        Err(e) => r.fail(format!("{what}: {e}")),
    }
}

/// Closed-form ranks against the weight oracle, for single types, mixed
/// types and orthogonal data.
pub fn rank_oracle_equivalence(n_max: u32, d_max: u32, copies_max: u64, v0s: &[u64]) -> SuiteReport {
    let start = Instant::now();
    let parts: Vec<SuiteReport> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut r = SuiteReport::new("ranks");
            // per-m weight data, enumerated once
            let mut lambda = Vec::new();
            for m in 1..=n {
                let ws = weights::lambda_weights(n, m).expect("valid lambda");
                let dec = weights::branch_lambda_to_curve(n, m).expect("valid branching");
                lambda.push((ws.dimension(), dec));
            }
            for d in 1..=d_max {
                for &v0 in v0s {
                    for copies in 1..=copies_max {
                        for m in 1..=n {
                            let (w, dec) = &lambda[m as usize - 1];
                            let (on_m, on_c) = oracles::ranks_from_weights(d, copies, v0, *w, dec);
                            let p = UnitaryDatumParams { d, n, m, copies, dim_v0: v0 };
                            let tag = format!("su d={d} n={n} m={m} N={copies} v0={v0}");
                            compare_profiles(&mut r, &tag, higgs_rank::rank_su_subvariety(&p), &on_m);
                            compare_profiles(&mut r, &tag, higgs_rank::rank_su_curve(&p), &on_c);
                        }
                    }
                    mixed_checks(&mut r, d, n, v0, &lambda);
                    orthogonal_checks(&mut r, d, n, copies_max, v0);
                }
            }
            r
        })
        .collect();
    merged("ranks", parts, start)
}

fn sum_profiles(parts: &[(RankProfile, RankProfile)], v0: u64) -> (RankProfile, RankProfile) {
    let half = BigInt::from(v0 / 2);
    let add = |pick: fn(&(RankProfile, RankProfile)) -> &RankProfile, locus| {
        let mut g = half.clone();
        let mut f = BigInt::zero();
        let mut u = half.clone();
        for p in parts {
            let p = pick(p);
            g += &p.g;
            f += &p.rank_f;
            u += &p.rank_u;
        }
        RankProfile { g, rank_f: f, rank_u: u, locus }
    };
    (add(|p| &p.0, higgs_rank::Locus::SubvarietyM), add(|p| &p.1, higgs_rank::Locus::CurveC))
}

fn mixed_checks(r: &mut SuiteReport, d: u32, n: u32, v0: u64, lambda: &[(u64, weights::Sl2Decomposition)]) {
    // every 0/1 pattern, plus one pattern with distinct multiplicities
    let mut patterns: Vec<Vec<u64>> = (1u32..(1 << n))
        .map(|bits| (0..n).map(|i| (bits >> i & 1) as u64).collect())
        .collect();
    patterns.push((0..n).map(|i| (i % 3 + 1) as u64).collect());
    for mults in patterns {
        let pieces: Vec<(RankProfile, RankProfile)> = mults
            .iter()
            .zip(lambda)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, (w, dec))| oracles::ranks_from_weights(d, k, 0, *w, dec))
            .collect();
        let (on_m, on_c) = sum_profiles(&pieces, v0);
        let tag = format!("su-mixed d={d} n={n} N={mults:?} v0={v0}");
        let p = UnitaryMixedDatumParams { d, n, multiplicities: mults, dim_v0: v0 };
        compare_profiles(r, &tag, higgs_rank::rank_su_subvariety_mixed(&p), &on_m);
        compare_profiles(r, &tag, higgs_rank::rank_su_curve_mixed(&p), &on_c);
    }
}

fn orthogonal_parts(n: u32) -> &'static [HalfSpinPart] {
    if n.is_multiple_of(2) {
        &[HalfSpinPart::Plus, HalfSpinPart::Minus]
    } else {
        &[HalfSpinPart::NotApplicable]
    }
}

fn orthogonal_checks(r: &mut SuiteReport, d: u32, n: u32, copies_max: u64, v0: u64) {
    for &half_spin_part in orthogonal_parts(n) {
        let probe = OrthogonalDatumParams { d, n, copies: 1, half_spin_part, dim_v0: v0 };
        let ws = match weights::spin_weights(probe.dim_h(), probe.spin_part()) {
            Ok(ws) => ws,
            Err(e) => {
                r.fail(format!("so n={n}: {e}"));
                continue;
            }
        };
        let dec = weights::branch_spin_to_curve(probe.dim_h(), probe.spin_part()).expect("valid spin branching");
        for copies in 1..=copies_max {
            let p = OrthogonalDatumParams { copies, ..probe };
            let (on_m, on_c) = oracles::ranks_from_weights(d, copies, v0, ws.dimension(), &dec);
            let tag = format!("so d={d} n={n} part={} N={copies} v0={v0}", half_spin_part.label());
            compare_profiles(r, &tag, higgs_rank::rank_so_subvariety(&p), &on_m);
            compare_profiles(r, &tag, higgs_rank::rank_so_curve(&p), &on_c);
        }
    }
}

/// The threshold certificate, reported as a suite.
pub fn corollary_certification(n_max: u32, d_max: u32, m_max: u32, rhs_n_max: u32) -> SuiteReport {
    let start = Instant::now();
    let mut r = SuiteReport::new("corollaries");
    let add = |r: &mut SuiteReport, cert: exclusion::CorollaryCertificate| {
        r.checks += cert.tested + cert.rhs_checked;
        for v in cert.violations {
            r.fail(format!("d={} n={} m={} {}: {}", v.d, v.n, v.m, v.check.label(), v.detail));
        }
    };
    match exclusion::certify_corollaries(n_max, d_max, m_max) {
        Ok(cert) => add(&mut r, cert),
        Err(e) => r.fail(e.to_string()),
    }
    if rhs_n_max > n_max {
        add(&mut r, exclusion::certify_rhs_bound(rhs_n_max));
    }
    r.timed(start)
}

/// Every orthogonal datum with `6 ≤ d ≤ d_max`, `n ≤ n_max`, `N ≤ copies_max`
/// and even `dim V₀ ≤ v0_max` is excluded; none with `d ≤ 5`, `V₀ = 0` is.
pub fn orthogonal_scan(d_max: u32, n_max: u32, copies_max: u64, v0_max: u64) -> SuiteReport {
    let start = Instant::now();
    let parts: Vec<SuiteReport> = (1..=d_max)
        .into_par_iter()
        .map(|d| {
            let mut r = SuiteReport::new("orthogonal_scan");
            let v0s: Vec<u64> = if d <= 5 { vec![0] } else { (0..=v0_max).step_by(2).collect() };
            for n in 1..=n_max {
                for &half_spin_part in orthogonal_parts(n) {
                    for copies in 1..=copies_max {
                        for &dim_v0 in &v0s {
                            let p = OrthogonalDatumParams { d, n, copies, half_spin_part, dim_v0 };
                            match exclusion::exclude_so(&p) {
                                Ok(v) => r.check(v.excluded == (d >= 6), || {
                                    format!("so d={d} n={n} N={copies} v0={dim_v0}: {v}")
                                }),
                                Err(e) => r.fail(format!("so d={d} n={n}: {e}")),
                            }
                        }
                    }
                }
            }
            r
        })
        .collect();
    merged("orthogonal_scan", parts, start)
}

/// Both curve-criterion equivalences for every split `g = rank_f + rank_u`,
/// and the re-derived slope bounds against their closed forms.
pub fn curve_criterion_equivalences(g_max: u64) -> SuiteReport {
    let start = Instant::now();
    let parts: Vec<SuiteReport> = (2..=g_max)
        .into_par_iter()
        .map(|g| {
            let mut r = SuiteReport::new("curve_equivalences");
            r.check(exclusion::curve_criterion_equivalences_hold(g), || format!("g={g}: equivalence fails"));
            match (hn_slope::derive_xiao_general(g), hn_slope::derive_xiao_refined(g)) {
                (Ok(a), Ok(b)) => {
                    r.check(!a.bound.strict && a.bound.value == ratio(5 * g + 1, 6u32), || {
                        format!("g={g}: general bound derived as {}", a.bound.value)
                    });
                    r.check(b.bound.strict && b.bound.value == ratio(4 * g + 2, 5u32), || {
                        format!("g={g}: refined bound derived as {}", b.bound.value)
                    });
                }
                (Err(e), _) | (_, Err(e)) => r.fail(format!("g={g}: {e}")),
            }
            r
        })
        .collect();
    merged("curve_equivalences", parts, start)
}

/// A random HN instance: subobject points with ranks below the total.
pub fn random_hn_instance(rng: &mut ChaCha8Rng, max_points: usize) -> (Vec<GradedPoint>, GradedPoint) {
    let total_rank = rng.gen_range(2..=max_points as u64 + 1);
    let count = rng.gen_range(1..=max_points);
    let points = (0..count)
        .map(|_| {
            let rank = rng.gen_range(1..total_rank);
            let degree = ratio(rng.gen_range(-20i64..=20), rng.gen_range(1i64..=4));
            GradedPoint::new(rank, degree).expect("positive rank")
        })
        .collect();
    let total = GradedPoint::new(total_rank, ratio(rng.gen_range(-20i64..=20), rng.gen_range(1i64..=4)))
        .expect("positive rank");
    (points, total)
}

fn classification(p: &HnPolygon) -> (bool, bool, bool) {
    (p.is_semistable(), p.is_positive(), p.is_semipositive())
}

/// Monotone-chain hull against the exhaustive oracle on seeded random
/// instances; pull-backs keep the semistability/positivity classification.
pub fn hn_hull_oracle(instances: usize, max_points: usize, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = SuiteReport::new("hn_hull");
    for i in 0..instances {
        let (points, total) = random_hn_instance(&mut rng, max_points);
        let cover = rng.gen_range(1..=6u64);
        let fast = match hn_slope::hn_hull(&points, Some(&total)) {
            Ok(p) => p,
            Err(e) => {
                r.fail(format!("instance {i}: {e}"));
                continue;
            }
        };
        let raw: Vec<(u64, BigRational)> = points.iter().map(|p| (p.rank(), p.degree().clone())).collect();
        let want = oracles::exhaustive_hull(&raw, &(total.rank(), total.degree().clone()));
        r.check(fast.vertices() == want.as_slice(), || format!("instance {i}: hull {fast} differs from oracle"));
        r.check(raw.iter().all(|(k, d)| fast.lies_below(*k, d)), || format!("instance {i}: point above {fast}"));
        match hn_slope::pullback(&fast, cover) {
            Ok(pulled) => {
                r.check(classification(&pulled) == classification(&fast), || {
                    format!("instance {i}: pull-back by {cover} changes classification of {fast}")
                });
                r.check(pulled.piece_ranks() == fast.piece_ranks(), || {
                    format!("instance {i}: pull-back by {cover} changes the filtration of {fast}")
                });
            }
            Err(e) => r.fail(format!("instance {i}: {e}")),
        }
    }
    r.timed(start)
}

/// The suites the command line exposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Weights,
    Clifford,
    Ranks,
    Corollaries,
    Hn,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "all" => Suite::All,
            "weights" => Suite::Weights,
            "clifford" => Suite::Clifford,
            "ranks" => Suite::Ranks,
            "corollaries" => Suite::Corollaries,
            "hn" => Suite::Hn,
            _ => return None,
        })
    }
}

pub const CLIFFORD_SEED: u64 = 0x5eed_c11f;
pub const HN_SEED: u64 = 0x5eed_0b05;

/// Label, time limit and runner of one acceptance check.
pub type AcceptanceCheck = (&'static str, Duration, fn() -> SuiteReport);

/// The eight acceptance checks with their production parameters, in order.
pub fn acceptance_checks() -> Vec<AcceptanceCheck> {
    vec![
        ("lambda branching, n <= 12", Duration::from_secs(5), || branching_certificate(12)),
        ("spin branching, dim_h <= 16", Duration::from_secs(5), || spin_branching_certificate(16)),
        ("clifford kernel, 200 forms x 1000 triples", Duration::from_secs(30), || {
            clifford_kernel(200, 10, 1000, CLIFFORD_SEED)
        }),
        ("rank formulas vs weight oracle", Duration::from_secs(10), || {
            rank_oracle_equivalence(8, 4, 3, &[0, 2, 4])
        }),
        ("threshold corollaries, grid 60^3, rhs to n = 200", Duration::from_secs(60), || {
            corollary_certification(60, 60, 60, 200)
        }),
        ("orthogonal scan, d <= 12, n <= 20", Duration::from_secs(10), || orthogonal_scan(12, 20, 4, 20)),
        ("curve criterion equivalences, g <= 1000", Duration::from_secs(5), || {
            curve_criterion_equivalences(1000)
        }),
        ("hn hull vs exhaustive oracle, 500 instances", Duration::from_secs(10), || {
            hn_hull_oracle(500, 12, HN_SEED)
        }),
    ]
}

/// Runs one suite group; `weights` covers both branching checks,
/// `corollaries` the certificate and the orthogonal scan, `hn` the curve
/// equivalences and the hull oracle.
pub fn run_suite(suite: Suite) -> Vec<SuiteReport> {
    let checks = acceptance_checks();
    let wanted: &[usize] = match suite {
        Suite::All => &[0, 1, 2, 3, 4, 5, 6, 7],
        Suite::Weights => &[0, 1],
        Suite::Clifford => &[2],
        Suite::Ranks => &[3],
        Suite::Corollaries => &[4, 5],
        Suite::Hn => &[6, 7],
    };
    wanted.iter().map(|&i| (checks[i].2)()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_product_matches_kernel() {
        let form = DiagonalForm::new(vec![int(2), ratio(-1, 3), int(5), int(-7)]).unwrap();
        for a in 0..16u32 {
            for b in 0..16u32 {
                assert_eq!(oracles::word_product(&form, a, b), form.basis_product(a, b).unwrap());
            }
        }
    }

    #[test]
    fn small_suites_pass() {
        for r in [
            branching_certificate(6),
            spin_branching_certificate(8),
            clifford_kernel(5, 5, 20, 1),
            rank_oracle_equivalence(4, 2, 2, &[0, 2]),
            orthogonal_scan(7, 4, 2, 4),
            curve_criterion_equivalences(40),
            hn_hull_oracle(40, 6, 3),
        ] {
            assert!(r.passed(), "{r}");
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn oracle_hull_example() {
        let pts = vec![(1, int(3)), (2, int(4)), (1, int(1))];
        let hull = oracles::exhaustive_hull(&pts, &(3, int(4)));
        assert_eq!(hull, vec![(0, int(0)), (1, int(3)), (2, int(4)), (3, int(4))]);
    }

    #[test]
    fn clifford_check_is_reproducible() {
        let form = DiagonalForm::new(vec![int(1), int(-2), ratio(1, 2)]).unwrap();
        let a = clifford_check(&form, 30, 9).unwrap();
        assert_eq!(a, clifford_check(&form, 30, 9).unwrap());
        assert!(a.failure.is_none());
    }
}
