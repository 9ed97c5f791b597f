use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::coeff::Scalar;
use crate::error::{Error, Result};

/// Subset of generators, bit `i` standing for generator `i`.
pub type Mask = u32;

/// Sign of `e_a ∧ e_b` relative to `e_{a∪b}`: `None` if the subsets meet,
/// otherwise `Some(true)` when the merge permutation is odd.
pub fn merge_sign(a: Mask, b: Mask) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(inversions % 2 == 1)
}

/// Generator indices of a mask, increasing.
pub fn mask_indices(mask: Mask) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

pub fn mask_from_indices(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

/// Sort key realizing the graded basis order: degree, then lexicographic on
/// the increasing index tuple.
pub fn basis_order_key(mask: Mask) -> (u32, Vec<usize>) {
    (mask.count_ones(), mask_indices(mask))
}

/// Homogeneity of a form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Zero,
    Pure(usize),
    Mixed,
}

/// Element of the exterior algebra on `dim` generators with field coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InvariantForm {
    dim: usize,
    terms: BTreeMap<Mask, Scalar>,
}

impl InvariantForm {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 16, "at most 16 generators are supported");
        InvariantForm { dim, terms: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, s: Scalar) -> Self {
        Self::monomial(dim, 0, s)
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, Scalar::one())
    }

    pub fn generator(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        Self::monomial(dim, 1 << index, Scalar::one())
    }

    pub fn monomial(dim: usize, mask: Mask, coeff: Scalar) -> Self {
        let mut f = Self::zero(dim);
        assert!(mask >> dim == 0, "mask outside the generator range");
        if !coeff.is_zero() {
            f.terms.insert(mask, coeff);
        }
        f
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Mask, Scalar)>) -> Self {
        let mut f = Self::zero(dim);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &Scalar)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    /// Terms in graded basis order.
    pub fn sorted_terms(&self) -> Vec<(Mask, &Scalar)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|(m, _)| basis_order_key(*m));
        v
    }

    pub fn coeff(&self, mask: Mask) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn grading(&self) -> Grading {
        let mut degrees = self.terms.keys().map(|m| m.count_ones() as usize);
        match degrees.next() {
            None => Grading::Zero,
            Some(k) => {
                if degrees.all(|d| d == k) {
                    Grading::Pure(k)
                } else {
                    Grading::Mixed
                }
            }
        }
    }

    /// Degree of a homogeneous form; `Ok(None)` for the zero form.
    pub fn pure_degree(&self) -> Result<Option<usize>> {
        match self.grading() {
            Grading::Zero => Ok(None),
            Grading::Pure(k) => Ok(Some(k)),
            Grading::Mixed => Err(Error::MixedDegree),
        }
    }

    /// Checks that the form is zero or homogeneous of degree `k`.
    pub fn expect_degree(&self, k: usize) -> Result<()> {
        match self.pure_degree()? {
            Some(found) if found != k => Err(Error::WrongDegree { expected: k, found }),
            _ => Ok(()),
        }
    }

    pub fn homogeneous_part(&self, k: usize) -> InvariantForm {
        InvariantForm {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == k)
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, mask: Mask, c: Scalar) {
        if c.is_zero() {
            return;
        }
        assert!(mask >> self.dim == 0, "mask outside the generator range");
        match self.terms.get_mut(&mask) {
            None => {
                self.terms.insert(mask, c);
            }
            Some(slot) => {
                let s = &*slot + &c;
                if s.is_zero() {
                    self.terms.remove(&mask);
                } else {
                    *slot = s;
                }
            }
        }
    }

    pub fn scale(&self, s: &Scalar) -> InvariantForm {
        if s.is_zero() {
            return Self::zero(self.dim);
        }
        InvariantForm {
            dim: self.dim,
            terms: self.terms.iter().map(|(&m, c)| (m, c * s)).collect(),
        }
    }

    pub fn try_add(&self, other: &InvariantForm) -> Result<InvariantForm> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &InvariantForm) -> Result<InvariantForm> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Self::zero(self.dim);
        for (&ma, ca) in &self.terms {
            for (&mb, cb) in &other.terms {
                if let Some(odd) = merge_sign(ma, mb) {
                    let c = ca * cb;
                    out.add_term(ma | mb, if odd { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Repeated wedge power, `self^0 = 1`.
    pub fn wedge_power(&self, r: usize) -> InvariantForm {
        let mut out = Self::one(self.dim);
        for _ in 0..r {
            out = out.wedge(self).expect("same dimension");
        }
        out
    }

    /// Applies a map to every coefficient, dropping zeros.
    pub fn try_map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar>) -> Result<InvariantForm> {
        let mut out = Self::zero(self.dim);
        for (&m, c) in &self.terms {
            out.add_term(m, f(c)?);
        }
        Ok(out)
    }
}

/// `(ω^r / r!) ∧ a`.
pub fn lefschetz(a: &InvariantForm, omega: &InvariantForm, r: usize) -> Result<InvariantForm> {
    if a.dim() != omega.dim() {
        return Err(Error::DimensionMismatch(a.dim(), omega.dim()));
    }
    let mut factorial = 1i64;
    for i in 1..=r as i64 {
        factorial *= i;
    }
    let power = omega.wedge_power(r).scale(&Scalar::from_ratio(1, factorial));
    power.wedge(a)
}

/// `ω^{n-k+1} ∧ a = 0` for a form of degree `k ≤ n`, where `dim = 2n`.
pub fn is_primitive(a: &InvariantForm, omega: &InvariantForm) -> Result<bool> {
    if a.dim() != omega.dim() {
        return Err(Error::DimensionMismatch(a.dim(), omega.dim()));
    }
    let n = a.dim() / 2;
    let Some(k) = a.pure_degree()? else {
        return Ok(true);
    };
    if k > n {
        return Err(Error::DegreeTooHigh { degree: k, half: n });
    }
    Ok(omega.wedge_power(n - k + 1).wedge(a)?.is_zero())
}

impl<'a> Add<&'a InvariantForm> for &'a InvariantForm {
    type Output = InvariantForm;
    /// Panics on a dimension mismatch; use [`InvariantForm::try_add`] to recover.
    fn add(self, rhs: &'a InvariantForm) -> InvariantForm {
        self.try_add(rhs).expect("forms of the same dimension")
    }
}

impl<'a> Sub<&'a InvariantForm> for &'a InvariantForm {
    type Output = InvariantForm;
    fn sub(self, rhs: &'a InvariantForm) -> InvariantForm {
        self + &(-rhs)
    }
}

impl Neg for &InvariantForm {
    type Output = InvariantForm;
    fn neg(self) -> InvariantForm {
        InvariantForm {
            dim: self.dim,
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }
}

impl std::fmt::Debug for InvariantForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (1..=self.dim).map(|i| format!("e{i}")).collect();
        write!(f, "{}", super::render_form(self, &names, &|v| format!("x{v}")))
    }
}

/// Ordered bases of every degree: `k`-subsets in lexicographic order of
/// their increasing index tuples.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    dim: usize,
    by_degree: Vec<Vec<Mask>>,
    position: Vec<usize>,
}

impl GradedBasis {
    pub fn new(dim: usize) -> Self {
        assert!(dim <= 16);
        let mut by_degree = vec![Vec::new(); dim + 1];
        let mut all: Vec<Mask> = (0..(1u32 << dim)).collect();
        all.sort_by_key(|&m| basis_order_key(m));
        let mut position = vec![0; 1 << dim];
        for m in all {
            let k = m.count_ones() as usize;
            position[m as usize] = by_degree[k].len();
            by_degree[k].push(m);
        }
        GradedBasis { dim, by_degree, position }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn masks(&self, k: usize) -> &[Mask] {
        &self.by_degree[k]
    }

    pub fn size(&self, k: usize) -> usize {
        self.by_degree.get(k).map_or(0, Vec::len)
    }

    pub fn index(&self, mask: Mask) -> usize {
        self.position[mask as usize]
    }

    pub fn form(&self, k: usize, i: usize) -> InvariantForm {
        InvariantForm::monomial(self.dim, self.by_degree[k][i], Scalar::one())
    }

    pub fn forms(&self, k: usize) -> Vec<InvariantForm> {
        (0..self.size(k)).map(|i| self.form(k, i)).collect()
    }

    /// Coordinates of a degree-`k` form.
    pub fn coords(&self, a: &InvariantForm, k: usize) -> Result<Vec<Scalar>> {
        a.expect_degree(k)?;
        let mut v = vec![Scalar::zero(); self.size(k)];
        for (m, c) in a.terms() {
            v[self.index(m)] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords(&self, k: usize, coords: &[Scalar]) -> InvariantForm {
        InvariantForm::from_terms(
            self.dim,
            self.by_degree[k].iter().zip(coords).map(|(&m, c)| (m, c.clone())),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(dim: usize, idx: &[usize]) -> InvariantForm {
        InvariantForm::monomial(dim, mask_from_indices(idx), Scalar::one())
    }

    #[test]
    fn anticommuting_generators() {
        let e1 = InvariantForm::generator(4, 0);
        let e2 = InvariantForm::generator(4, 1);
        assert_eq!(e1.wedge(&e2).unwrap(), e(4, &[0, 1]));
        assert_eq!(e2.wedge(&e1).unwrap(), -&e(4, &[0, 1]));
        assert!(e1.wedge(&e1).unwrap().is_zero());
    }

    #[test]
    fn square_of_standard_omega() {
        let omega = &e(4, &[0, 1]) + &e(4, &[2, 3]);
        let sq = omega.wedge(&omega).unwrap();
        assert_eq!(sq, e(4, &[0, 1, 2, 3]).scale(&Scalar::from_int(2)));
    }

    #[test]
    fn square_of_six_dimensional_omega() {
        // generators a1 b1 a2 b2 g h = 0..6
        let omega = &(&e(6, &[0, 1]) + &e(6, &[2, 3])) + &e(6, &[4, 5]);
        let expected = &(&e(6, &[0, 1, 2, 3]) + &e(6, &[0, 1, 4, 5])) + &e(6, &[2, 3, 4, 5]);
        assert_eq!(omega.wedge(&omega).unwrap(), expected.scale(&Scalar::from_int(2)));
        assert_eq!(lefschetz(&InvariantForm::one(6), &omega, 2).unwrap(), expected);
    }

    #[test]
    fn lefschetz_examples() {
        let omega = &e(4, &[0, 1]) + &e(4, &[2, 3]);
        assert_eq!(lefschetz(&InvariantForm::one(4), &omega, 1).unwrap(), omega);
        assert!(lefschetz(&e(4, &[0, 2]), &omega, 1).unwrap().is_zero());
    }

    #[test]
    fn primitivity() {
        let omega = &e(4, &[0, 1]) + &e(4, &[2, 3]);
        assert!(is_primitive(&e(4, &[0, 2]), &omega).unwrap());
        assert!(!is_primitive(&omega, &omega).unwrap());
        assert!(matches!(
            is_primitive(&e(4, &[0, 1, 2]), &omega),
            Err(Error::DegreeTooHigh { .. })
        ));
        let mixed = &e(4, &[0]) + &e(4, &[0, 1]);
        assert!(matches!(is_primitive(&mixed, &omega), Err(Error::MixedDegree)));
    }

    #[test]
    fn dimension_mismatch() {
        let a = InvariantForm::generator(4, 0);
        let b = InvariantForm::generator(6, 0);
        assert!(matches!(a.wedge(&b), Err(Error::DimensionMismatch(4, 6))));
    }

    #[test]
    fn basis_order_and_sizes() {
        let b = GradedBasis::new(4);
        let twos: Vec<Vec<usize>> = b.masks(2).iter().map(|&m| mask_indices(m)).collect();
        assert_eq!(twos, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let b6 = GradedBasis::new(6);
        let sizes: Vec<usize> = (0..=6).map(|k| b6.size(k)).collect();
        assert_eq!(sizes, vec![1, 6, 15, 20, 15, 6, 1]);
    }

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        (-3i64..=3, 0u32..=1).prop_map(|(n, e)| {
            &Scalar::from_int(n) * &Scalar::var(0).pow(e)
        })
    }

    fn homogeneous(dim: usize, k: usize) -> impl Strategy<Value = InvariantForm> {
        let masks: Vec<Mask> = GradedBasis::new(dim).masks(k).to_vec();
        proptest::collection::vec(small_scalar(), masks.len())
            .prop_map(move |cs| InvariantForm::from_terms(dim, masks.iter().copied().zip(cs)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn graded_commutativity(
            (a, b, ka, kb) in (0usize..=3, 0usize..=3).prop_flat_map(|(ka, kb)| {
                (homogeneous(6, ka), homogeneous(6, kb), Just(ka), Just(kb))
            })
        ) {
            let ab = a.wedge(&b).unwrap();
            let ba = b.wedge(&a).unwrap();
            if (ka * kb) % 2 == 1 {
                prop_assert_eq!(ab, -&ba);
            } else {
                prop_assert_eq!(ab, ba);
            }
        }

        #[test]
        fn associativity_and_distributivity(
            a in homogeneous(5, 1),
            b in homogeneous(5, 2),
            c in homogeneous(5, 1),
            s in small_scalar(),
        ) {
            let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
            let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let dist = a.wedge(&(&b + &b.scale(&s))).unwrap();
            prop_assert_eq!(dist, &a.wedge(&b).unwrap() + &a.wedge(&b).unwrap().scale(&s));
            prop_assert_eq!(a.scale(&s).wedge(&c).unwrap(), a.wedge(&c.scale(&s)).unwrap());
        }
    }
}
