//! Clifford algebras of diagonal quadratic forms over the rationals.
//!
//! Basis elements are canonical ascending products `e_I = e_{i1} ⋯ e_{ir}`
//! encoded as bitmasks (generator `i` is bit `i − 1`). The product of two
//! basis elements is computed by counting transpositions and absorbing the
//! squares `e_i² = a_i`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest number of generators the kernel accepts.
pub const MAX_GENERATORS: usize = 20;

/// `Q(e_i, e_j) = δ_ij a_i` with every `a_i` nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalForm {
    coeffs: Vec<BigRational>,
}

impl DiagonalForm {
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() > MAX_GENERATORS {
            return Err(Error::TooManyGenerators { max: MAX_GENERATORS, got: coeffs.len() });
        }
        if let Some(i) = coeffs.iter().position(Zero::is_zero) {
            return Err(Error::DegenerateForm(i + 1));
        }
        Ok(Self { coeffs })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `Q(v, v)` for `v = Σ v_i e_i`.
    pub fn evaluate(&self, v: &[BigRational]) -> BigRational {
        self.coeffs.iter().zip(v).map(|(a, x)| a * x * x).sum()
    }

    fn full_mask(&self) -> u32 {
        ((1u64 << self.coeffs.len()) - 1) as u32
    }

    fn check_mask(&self, mask: u32) -> Result<()> {
        if mask & !self.full_mask() != 0 {
            return Err(Error::MaskOutOfRange { mask, dim: self.dim() });
        }
        Ok(())
    }

    /// `e_A · e_B = scalar · e_{A △ B}`.
    pub fn basis_product(&self, a: u32, b: u32) -> Result<(BigRational, u32)> {
        self.check_mask(a)?;
        self.check_mask(b)?;
        let mut scalar = BigRational::one();
        self.absorb(&mut scalar, a, b);
        Ok((scalar, a ^ b))
    }

    /// Multiplies `c` in place by the scalar of `e_A · e_B`.
    fn absorb(&self, c: &mut BigRational, a: u32, b: u32) {
        if reorder_sign(a, b) {
            *c = -std::mem::take(c);
        }
        let mut common = a & b;
        while common != 0 {
            let i = common.trailing_zeros() as usize;
            *c *= &self.coeffs[i];
            common &= common - 1;
        }
    }
}

/// Parity of the number of pairs `(i ∈ a, j ∈ b)` with `i > j`, i.e. of
/// the transpositions needed to sort the concatenated word.
fn reorder_sign(a: u32, b: u32) -> bool {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        // generators of `a` strictly above j
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    inversions % 2 == 1
}

/// A finite rational combination of basis masks; zero coefficients are
/// never stored and the empty mask is the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CliffordElement {
    terms: BTreeMap<u32, BigRational>,
}

impl CliffordElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(BigRational::one())
    }

    pub fn scalar(q: BigRational) -> Self {
        Self::term(0, q)
    }

    pub fn basis(mask: u32) -> Self {
        Self::term(mask, BigRational::one())
    }

    /// The generator `e_i` (1-based).
    pub fn generator(i: usize) -> Self {
        assert!(i >= 1, "generators are 1-based");
        Self::basis(1 << (i - 1))
    }

    pub fn term(mask: u32, coeff: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(mask, coeff);
        out
    }

    /// The vector `Σ v_i e_i`.
    pub fn vector(v: &[BigRational]) -> Self {
        let mut out = Self::zero();
        for (i, c) in v.iter().enumerate() {
            out.add_term(1 << i, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, mask: u32, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, mask: u32) -> BigRational {
        self.terms.get(&mask).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            out.add_term(m, c * q);
        }
        out
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (mask, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if mask != 0 {
                write!(f, "e")?;
                let mut rest = mask;
                let mut first = true;
                while rest != 0 {
                    let i = rest.trailing_zeros() + 1;
                    if !first {
                        write!(f, "_")?;
                    }
                    write!(f, "{i}")?;
                    first = false;
                    rest &= rest - 1;
                }
            }
        }
        Ok(())
    }
}

/// Bilinear extension of the basis product.
pub fn clifford_mul(
    form: &DiagonalForm,
    x: &CliffordElement,
    y: &CliffordElement,
) -> Result<CliffordElement> {
    for (m, _) in x.terms().chain(y.terms()) {
        form.check_mask(m)?;
    }
    let mut out = CliffordElement::zero();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let mut c = ca * cb;
            form.absorb(&mut c, a, b);
            out.add_term(a ^ b, c);
        }
    }
    Ok(out)
}

/// Parity class of an element under the `Z/2`-grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grade {
    Even,
    Odd,
    Mixed,
}

/// Zero counts as even.
pub fn grade(x: &CliffordElement) -> Grade {
    let mut even = false;
    let mut odd = false;
    for (mask, _) in x.terms() {
        if mask.count_ones() % 2 == 0 {
            even = true;
        } else {
            odd = true;
        }
    }
    match (even, odd) {
        (_, false) => Grade::Even,
        (false, true) => Grade::Odd,
        (true, true) => Grade::Mixed,
    }
}

/// The main involution: reverse the order of the factors and negate every
/// vector, so `e_I ↦ (−1)^r (−1)^{r(r−1)/2} e_I` with `r = |I|`.
pub fn star(x: &CliffordElement) -> CliffordElement {
    let mut out = CliffordElement::zero();
    for (mask, c) in x.terms() {
        let r = mask.count_ones() as u64;
        let flips = r + r * r.saturating_sub(1) / 2;
        let coeff = if flips % 2 == 1 { -c.clone() } else { c.clone() };
        out.add_term(mask, coeff);
    }
    out
}

/// Number of basis masks of even grade in the algebra of `form`.
pub fn even_basis_count(form: &DiagonalForm) -> u64 {
    (0..=form.full_mask())
        .filter(|&m| grade(&CliffordElement::basis(m)) == Grade::Even)
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    fn form(a: &[i64]) -> DiagonalForm {
        DiagonalForm::new(a.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn generator_squares() {
        let q = DiagonalForm::new(vec![ratio(3, 2), int(-5)]).unwrap();
        let e1 = CliffordElement::generator(1);
        assert_eq!(clifford_mul(&q, &e1, &e1).unwrap(), CliffordElement::scalar(ratio(3, 2)));
    }

    #[test]
    fn anticommutation() {
        let q = form(&[2, 7]);
        let e1 = CliffordElement::generator(1);
        let e2 = CliffordElement::generator(2);
        assert_eq!(clifford_mul(&q, &e1, &e2).unwrap(), CliffordElement::basis(0b11));
        assert_eq!(
            clifford_mul(&q, &e2, &e1).unwrap(),
            CliffordElement::term(0b11, int(-1))
        );
    }

    #[test]
    fn vector_square_is_quadratic_form() {
        let q = form(&[2, 7]);
        let v = CliffordElement::generator(1).add(&CliffordElement::generator(2));
        assert_eq!(clifford_mul(&q, &v, &v).unwrap(), CliffordElement::scalar(int(9)));
    }

    #[test]
    fn grades() {
        assert_eq!(grade(&CliffordElement::one()), Grade::Even);
        assert_eq!(grade(&CliffordElement::generator(1)), Grade::Odd);
        assert_eq!(grade(&CliffordElement::one().add(&CliffordElement::generator(1))), Grade::Mixed);
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&CliffordElement::generator(1)), CliffordElement::term(1, int(-1)));
        assert_eq!(star(&CliffordElement::basis(0b11)), CliffordElement::term(0b11, int(-1)));
        assert_eq!(star(&CliffordElement::one()), CliffordElement::one());
        // r = 3: (-1)^3 (-1)^3 = +1
        assert_eq!(star(&CliffordElement::basis(0b111)), CliffordElement::basis(0b111));
    }

    #[test]
    fn errors() {
        assert_eq!(DiagonalForm::new(vec![int(1), int(0)]), Err(Error::DegenerateForm(2)));
        let q = form(&[1, 1]);
        assert!(matches!(
            clifford_mul(&q, &CliffordElement::basis(0b100), &CliffordElement::one()),
            Err(Error::MaskOutOfRange { .. })
        ));
    }

    #[test]
    fn even_part_dimension() {
        for n in 1..=8 {
            let q = form(&vec![1; n]);
            assert_eq!(even_basis_count(&q), 1 << (n - 1));
        }
    }

    #[test]
    fn display() {
        let x = CliffordElement::one().add(&CliffordElement::term(0b101, ratio(-1, 2)));
        assert_eq!(x.to_string(), "(1) + (-1/2)e1_3");
    }
}
