//! Brute-force stars by explicit index summation, used only to cross-check
//! the Gram-solve implementation.

use pcw_core::coeff::Scalar;
use pcw_core::forms::{mask_from_indices, mask_indices, GradedBasis, InvariantForm};
use pcw_core::{Error, Geometry, ManifoldModel, Result};

pub const ORACLE_MAX_DIM: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Metric,
    Symplectic,
}

type Square = Vec<Vec<Scalar>>;

/// Sign of the permutation sorting `seq`, or 0 if an index repeats.
fn permutation_sign(seq: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return 0;
            }
            if seq[i] > seq[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Antisymmetric component `a_{i1...ik}`.
fn component(a: &InvariantForm, idx: &[usize]) -> Scalar {
    let sign = permutation_sign(idx);
    if sign == 0 {
        return Scalar::zero();
    }
    &a.coeff(mask_from_indices(idx)) * &Scalar::from_int(sign)
}

fn gauss_jordan_inverse(m: &Square) -> Result<Square> {
    let n = m.len();
    let mut a: Square = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip()?;
        a[col] = a[col].iter().map(|x| x * &inv).collect();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * p);
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn omega_components(model: &ManifoldModel) -> Square {
    let n = model.dim();
    let omega = model.omega();
    (0..n).map(|i| (0..n).map(|j| component(omega, &[i, j])).collect()).collect()
}

/// Coefficient of `ω^n/n!` on `e_1 ∧ ... ∧ e_2n`, as a Pfaffian summed over all permutations.
fn volume(model: &ManifoldModel) -> Scalar {
    let dim = model.dim();
    let n = dim / 2;
    let w = omega_components(model);
    let mut total = Scalar::zero();
    for p in permutations(&(0..dim).collect::<Vec<_>>()) {
        let mut term = Scalar::from_int(permutation_sign(&p));
        for i in 0..n {
            term = &term * &w[p[2 * i]][p[2 * i + 1]];
        }
        total = &total + &term;
    }
    let mut norm = 1i64;
    for i in 1..=n as i64 {
        norm *= 2 * i;
    }
    &total * &Scalar::from_ratio(1, norm)
}

/// `(1/k!) Σ P^{i1 j1} ... P^{ik jk} a_{i1..ik} b_{j1..jk}` with `a = e_I`.
fn pairing(inv: &Square, idx: &[usize], b: &InvariantForm) -> Scalar {
    let k = idx.len();
    let mut total = Scalar::zero();
    for p in permutations(idx) {
        let sign = Scalar::from_int(permutation_sign(&p));
        let mut js = Vec::with_capacity(k);
        accumulate(inv, &p, b, &mut js, sign, &mut total);
    }
    let mut fact = 1i64;
    for i in 1..=k as i64 {
        fact *= i;
    }
    &total * &Scalar::from_ratio(1, fact)
}

fn accumulate(inv: &Square, is: &[usize], b: &InvariantForm, js: &mut Vec<usize>, acc: Scalar, total: &mut Scalar) {
    let pos = js.len();
    if pos == is.len() {
        let c = component(b, js);
        if !c.is_zero() {
            *total = &*total + &(&acc * &c);
        }
        return;
    }
    for (j, entry) in inv[is[pos]].iter().enumerate() {
        if entry.is_zero() || js.contains(&j) {
            continue;
        }
        js.push(j);
        accumulate(inv, is, b, js, &acc * entry, total);
        js.pop();
    }
}

pub fn oracle_star(a: &InvariantForm, model: &ManifoldModel, which: Which) -> Result<InvariantForm> {
    let dim = model.dim();
    if dim > ORACLE_MAX_DIM {
        return Err(Error::DimensionTooLarge { dim, limit: ORACLE_MAX_DIM });
    }
    let Some(k) = a.pure_degree()? else {
        return Ok(InvariantForm::zero(dim));
    };
    let matrix: Square = match which {
        Which::Metric => (0..dim).map(|i| (0..dim).map(|j| model.metric().get(i, j).clone()).collect()).collect(),
        Which::Symplectic => omega_components(model),
    };
    let inv = gauss_jordan_inverse(&matrix)?;
    let v = volume(model);
    let basis = GradedBasis::new(dim);
    let full = (1u32 << dim) - 1;
    let mut terms = Vec::new();
    for &mask in basis.masks(k) {
        let idx = mask_indices(mask);
        let c = pairing(&inv, &idx, a);
        if c.is_zero() {
            continue;
        }
        let rest = mask_indices(full & !mask);
        let mut seq = idx.clone();
        seq.extend(&rest);
        let sign = Scalar::from_int(permutation_sign(&seq));
        terms.push((full & !mask, &(&c * &v) * &sign));
    }
    Ok(InvariantForm::from_terms(dim, terms))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleSummary {
    pub compared: usize,
    /// `(degree, which, basis form, main star, oracle star)` for each disagreement.
    pub mismatches: Vec<(usize, Which, String, String, String)>,
}

impl OracleSummary {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares both stars against the oracle on every basis form of every degree.
pub fn oracle_check(model: &ManifoldModel) -> Result<OracleSummary> {
    if model.dim() > ORACLE_MAX_DIM {
        return Err(Error::DimensionTooLarge { dim: model.dim(), limit: ORACLE_MAX_DIM });
    }
    let geo = Geometry::new(model)?;
    let mut summary = OracleSummary::default();
    for k in 0..=model.dim() {
        for b in geo.basis().forms(k) {
            for which in [Which::Metric, Which::Symplectic] {
                let main = match which {
                    Which::Metric => geo.hodge_star(&b)?,
                    Which::Symplectic => geo.symplectic_star(&b)?,
                };
                let brute = oracle_star(&b, model, which)?;
                summary.compared += 1;
                if main != brute {
                    summary
                        .mismatches
                        .push((k, which, model.render(&b), model.render(&main), model.render(&brute)));
                }
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pcw_core::builtin;

    #[test]
    fn flat_star_of_e12() {
        let m = builtin("t4-flat").unwrap();
        let out = oracle_star(&m.parse_form("e1^e2").unwrap(), &m, Which::Metric).unwrap();
        assert_eq!(out, m.parse_form("e3^e4").unwrap());
    }

    #[test]
    fn symplectic_star_fixes_omega_in_four_dimensions() {
        let m = builtin("kodaira-thurston").unwrap();
        let out = oracle_star(m.omega(), &m, Which::Symplectic).unwrap();
        assert_eq!(&out, m.omega());
    }

    #[test]
    fn m6c_two_forms_agree() {
        let m = builtin("m6c").unwrap();
        let geo = Geometry::new(&m).unwrap();
        let forms = geo.basis().forms(2);
        assert_eq!(forms.len(), 15);
        for b in forms {
            assert_eq!(oracle_star(&b, &m, Which::Symplectic).unwrap(), geo.symplectic_star(&b).unwrap());
        }
    }

    #[test]
    fn sign_of_permutations() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
        assert_eq!(permutation_sign(&[1, 1]), 0);
    }

    #[test]
    fn volume_of_m6c_is_one() {
        assert!(volume(&builtin("m6c").unwrap()).is_one());
    }
}
