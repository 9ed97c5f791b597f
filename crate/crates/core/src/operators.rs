//! Differential and algebraic operators on invariant forms.

use std::sync::OnceLock;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::forms::{mask_indices, GradedBasis, Grading, InvariantForm, Mask};
use crate::linalg::{bilinear, Matrix};
use crate::model::ManifoldModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorKind {
    D,
    StarG,
    StarS,
    JInv,
    ProjJPlus,
    ProjJMinus,
    ProjPrimitive,
    Codiff,
    DLambda,
    DLambdaAdj,
    Laplacian,
    DdLambda,
    DdLambdaAdj,
    PJ,
    DJMinus,
    DgMinus,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 16] = [
        OperatorKind::D,
        OperatorKind::StarG,
        OperatorKind::StarS,
        OperatorKind::JInv,
        OperatorKind::ProjJPlus,
        OperatorKind::ProjJMinus,
        OperatorKind::ProjPrimitive,
        OperatorKind::Codiff,
        OperatorKind::DLambda,
        OperatorKind::DLambdaAdj,
        OperatorKind::Laplacian,
        OperatorKind::DdLambda,
        OperatorKind::DdLambdaAdj,
        OperatorKind::PJ,
        OperatorKind::DJMinus,
        OperatorKind::DgMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::D => "d",
            OperatorKind::StarG => "star_g",
            OperatorKind::StarS => "star_s",
            OperatorKind::JInv => "J_inv",
            OperatorKind::ProjJPlus => "proj_J_plus",
            OperatorKind::ProjJMinus => "proj_J_minus",
            OperatorKind::ProjPrimitive => "proj_primitive",
            OperatorKind::Codiff => "codiff",
            OperatorKind::DLambda => "d_lambda",
            OperatorKind::DLambdaAdj => "d_lambda_adj",
            OperatorKind::Laplacian => "laplacian",
            OperatorKind::DdLambda => "dd_lambda",
            OperatorKind::DdLambdaAdj => "dd_lambda_adj",
            OperatorKind::PJ => "P_J",
            OperatorKind::DJMinus => "d_J_minus",
            OperatorKind::DgMinus => "d_g_minus",
        }
    }

    /// Operators that differentiate coefficients.
    pub fn is_differential(self) -> bool {
        !matches!(
            self,
            OperatorKind::StarG
                | OperatorKind::StarS
                | OperatorKind::JInv
                | OperatorKind::ProjJPlus
                | OperatorKind::ProjJMinus
                | OperatorKind::ProjPrimitive
        )
    }

    /// Degree of the output on degree-`k` input, or an error when the operator
    /// does not act on degree `k` of a `dim`-dimensional model.
    pub fn target_degree(self, k: usize, dim: usize) -> Result<usize> {
        if k > dim {
            return Err(Error::WrongDegree { expected: dim, found: k });
        }
        let two_only = |t: usize| if k == 2 { Ok(t) } else { Err(Error::WrongDegree { expected: 2, found: k }) };
        let one_only = |t: usize| if k == 1 { Ok(t) } else { Err(Error::WrongDegree { expected: 1, found: k }) };
        match self {
            OperatorKind::D | OperatorKind::DLambdaAdj => {
                if k < dim {
                    Ok(k + 1)
                } else {
                    Err(Error::WrongDegree { expected: dim - 1, found: k })
                }
            }
            OperatorKind::Codiff | OperatorKind::DLambda => {
                if k > 0 {
                    Ok(k - 1)
                } else {
                    Err(Error::WrongDegree { expected: 1, found: 0 })
                }
            }
            OperatorKind::StarG | OperatorKind::StarS => Ok(dim - k),
            OperatorKind::JInv | OperatorKind::Laplacian | OperatorKind::DdLambda | OperatorKind::DdLambdaAdj => Ok(k),
            OperatorKind::ProjJPlus | OperatorKind::ProjJMinus | OperatorKind::ProjPrimitive | OperatorKind::PJ => {
                two_only(2)
            }
            OperatorKind::DJMinus => one_only(2),
            OperatorKind::DgMinus => {
                if dim != 4 {
                    return Err(Error::Invalid("d_g^- is defined in dimension four only".into()));
                }
                one_only(2)
            }
        }
    }
}

impl std::fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `d e_I` by the Leibniz rule from the structure equations.
fn d_monomial(model: &ManifoldModel, mask: Mask) -> InvariantForm {
    let dim = model.dim();
    if mask == 0 {
        return InvariantForm::zero(dim);
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << first);
    let head = InvariantForm::generator(dim, first);
    let tail = InvariantForm::monomial(dim, rest, Scalar::one());
    let a = model.structure(first).wedge(&tail).expect("same dimension");
    let b = head.wedge(&d_monomial(model, rest)).expect("same dimension");
    &a - &b
}

fn d_with(model: &ManifoldModel, a: &InvariantForm, d_basis: &dyn Fn(Mask) -> InvariantForm) -> Result<InvariantForm> {
    let dim = model.dim();
    if a.dim() != dim {
        return Err(Error::DimensionMismatch(dim, a.dim()));
    }
    let mut out = InvariantForm::zero(dim);
    for (mask, c) in a.terms() {
        for (g, dc) in model.symbols().scalar_diff(c)? {
            let term = InvariantForm::monomial(dim, 1 << g, dc)
                .wedge(&InvariantForm::monomial(dim, mask, Scalar::one()))
                .expect("same dimension");
            out = &out + &term;
        }
        let de = d_basis(mask);
        if !de.is_zero() {
            out = &out + &de.scale(c);
        }
    }
    Ok(out)
}

/// The exterior derivative: the derivation extending the structure equations
/// on generators and the symbol differentials on coefficients.
pub fn exterior_derivative(model: &ManifoldModel, a: &InvariantForm) -> Result<InvariantForm> {
    d_with(model, a, &|m| d_monomial(model, m))
}

/// Operator context for one model: caches the derivative of every basis
/// monomial, Gram matrices and star matrices.
pub struct Geometry {
    model: ManifoldModel,
    basis: GradedBasis,
    d_basis: Vec<InvariantForm>,
    j_basis: Vec<InvariantForm>,
    metric_inverse: Matrix,
    poisson: Matrix,
    volume: Scalar,
    gram: Vec<OnceLock<Matrix>>,
    pairing: Vec<OnceLock<Matrix>>,
    star_g: Vec<OnceLock<Matrix>>,
    star_s: Vec<OnceLock<Matrix>>,
}

impl Geometry {
    pub fn new(model: &ManifoldModel) -> Result<Self> {
        let dim = model.dim();
        let metric_inverse = model.metric().inverse()?;
        let poisson = model.omega_matrix().inverse()?;
        let volume = model.volume_coefficient();
        if volume.is_zero() {
            return Err(Error::Singular);
        }
        let d_basis = (0..1u32 << dim).map(|m| d_monomial(model, m)).collect();
        let rows = model.j_rows();
        let j_basis = (0..1u32 << dim)
            .map(|m| {
                let sub = mask_indices(m).into_iter().fold(InvariantForm::one(dim), |acc, i| {
                    acc.wedge(&rows[i]).expect("same dimension")
                });
                if m.count_ones() % 2 == 1 {
                    -&sub
                } else {
                    sub
                }
            })
            .collect();
        let lazy = || (0..=dim).map(|_| OnceLock::new()).collect::<Vec<_>>();
        Ok(Geometry {
            model: model.clone(),
            basis: GradedBasis::new(dim),
            d_basis,
            j_basis,
            metric_inverse,
            poisson,
            volume,
            gram: lazy(),
            pairing: lazy(),
            star_g: lazy(),
            star_s: lazy(),
        })
    }

    pub fn model(&self) -> &ManifoldModel {
        &self.model
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    /// `v` with `dvol = v·e_1∧…∧e_2n`.
    pub fn volume(&self) -> &Scalar {
        &self.volume
    }

    pub fn metric_inverse(&self) -> &Matrix {
        &self.metric_inverse
    }

    /// Matrix of `(ω^{-1})^{ij}`.
    pub fn poisson(&self) -> &Matrix {
        &self.poisson
    }

    fn minor_matrix(&self, source: &Matrix, k: usize) -> Matrix {
        let masks = self.basis.masks(k);
        let mut out = Matrix::zeros(masks.len(), masks.len());
        for (a, &ma) in masks.iter().enumerate() {
            let ia = mask_indices(ma);
            for (b, &mb) in masks.iter().enumerate() {
                let ib = mask_indices(mb);
                out.set(a, b, source.select(&ia, &ib).det().expect("square minor"));
            }
        }
        out
    }

    /// Gram matrix of the metric on degree-`k` forms.
    pub fn gram(&self, k: usize) -> &Matrix {
        self.gram[k].get_or_init(|| self.minor_matrix(&self.metric_inverse, k))
    }

    /// Matrix of the pairing `(ω^{-1})^k` on degree-`k` forms.
    pub fn symplectic_pairing(&self, k: usize) -> &Matrix {
        self.pairing[k].get_or_init(|| self.minor_matrix(&self.poisson, k))
    }

    /// Solves `e_a ∧ S e_b = v·P[a][b]·e_top` for the matrix `S`.
    fn star_from_pairing(&self, k: usize, pairing: &Matrix) -> Matrix {
        let dim = self.dim();
        let top: Mask = (1 << dim) - 1;
        let rows = self.basis.masks(k);
        let cols = self.basis.masks(dim - k);
        let mut wedge = Matrix::zeros(rows.len(), cols.len());
        for (a, &ma) in rows.iter().enumerate() {
            for (b, &mb) in cols.iter().enumerate() {
                if ma | mb == top && ma & mb == 0 {
                    let odd = crate::forms::merge_sign(ma, mb).expect("disjoint");
                    wedge.set(a, b, if odd { -Scalar::one() } else { Scalar::one() });
                }
            }
        }
        wedge.solve(&pairing.scale(&self.volume)).expect("wedge pairing is unimodular")
    }

    pub fn star_g_matrix(&self, k: usize) -> &Matrix {
        self.star_g[k].get_or_init(|| self.star_from_pairing(k, self.gram(k)))
    }

    pub fn star_s_matrix(&self, k: usize) -> &Matrix {
        self.star_s[k].get_or_init(|| self.star_from_pairing(k, self.symplectic_pairing(k)))
    }

    fn check(&self, a: &InvariantForm) -> Result<Option<usize>> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), a.dim()));
        }
        a.pure_degree()
    }

    fn apply_matrix(&self, m: &Matrix, a: &InvariantForm, k: usize, target: usize) -> InvariantForm {
        let v = self.basis.coords(a, k).expect("degree checked");
        self.basis.from_coords(target, &m.mul_vec(&v).expect("sizes agree"))
    }

    /// `g(a, b)` for forms of one degree.
    pub fn inner(&self, a: &InvariantForm, b: &InvariantForm) -> Result<Scalar> {
        let ka = self.check(a)?;
        let kb = self.check(b)?;
        let k = match (ka, kb) {
            (None, _) | (_, None) => return Ok(Scalar::zero()),
            (Some(x), Some(y)) if x != y => return Err(Error::WrongDegree { expected: x, found: y }),
            (Some(x), _) => x,
        };
        let va = self.basis.coords(a, k)?;
        let vb = self.basis.coords(b, k)?;
        Ok(bilinear(&va, self.gram(k), &vb))
    }

    pub fn d(&self, a: &InvariantForm) -> Result<InvariantForm> {
        d_with(&self.model, a, &|m| self.d_basis[m as usize].clone())
    }

    pub fn hodge_star(&self, a: &InvariantForm) -> Result<InvariantForm> {
        let Some(k) = self.check(a)? else { return Ok(a.clone()) };
        Ok(self.apply_matrix(self.star_g_matrix(k), a, k, self.dim() - k))
    }

    pub fn symplectic_star(&self, a: &InvariantForm) -> Result<InvariantForm> {
        let Some(k) = self.check(a)? else { return Ok(a.clone()) };
        Ok(self.apply_matrix(self.star_s_matrix(k), a, k, self.dim() - k))
    }

    /// Pullback through the almost complex structure; with `J` acting on the
    /// coframe by minus the pullback, degree-`k` monomials pick up `(-1)^k`.
    pub fn j_involution(&self, a: &InvariantForm) -> Result<InvariantForm> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), a.dim()));
        }
        let mut out = InvariantForm::zero(self.dim());
        for (m, c) in a.terms() {
            out = &out + &self.j_basis[m as usize].scale(c);
        }
        Ok(out)
    }

    pub fn proj_j(&self, a: &InvariantForm, sign: Sign) -> Result<InvariantForm> {
        self.check(a)?;
        a.expect_degree(2)?;
        let j = self.j_involution(a)?;
        let sum = match sign {
            Sign::Plus => a + &j,
            Sign::Minus => a - &j,
        };
        Ok(sum.scale(&Scalar::from_ratio(1, 2)))
    }

    /// `ψ - (g(ψ, ω)/n)·ω` on 2-forms.
    pub fn proj_primitive(&self, a: &InvariantForm) -> Result<InvariantForm> {
        self.check(a)?;
        a.expect_degree(2)?;
        let omega = self.model.omega();
        let n = Scalar::from_int(self.model.half_dim() as i64);
        let c = self.inner(a, omega)?.div(&n)?;
        Ok(a - &omega.scale(&c))
    }

    /// `(-1)^{k+1} *_s d *_s` on degree `k`.
    fn d_lambda_k(&self, a: &InvariantForm, k: usize) -> Result<InvariantForm> {
        let r = self.symplectic_star(&self.d(&self.symplectic_star(a)?)?)?;
        Ok(if k % 2 == 0 { -&r } else { r })
    }

    pub fn d_lambda(&self, a: &InvariantForm) -> Result<InvariantForm> {
        let Some(k) = self.check(a)? else { return Ok(a.clone()) };
        self.d_lambda_k(a, k)
    }

    /// `d* = -*_g d *_g`.
    pub fn codifferential(&self, a: &InvariantForm) -> Result<InvariantForm> {
        self.check(a)?;
        Ok(-&self.hodge_star(&self.d(&self.hodge_star(a)?)?)?)
    }

    pub fn laplacian(&self, a: &InvariantForm) -> Result<InvariantForm> {
        self.check(a)?;
        let x = self.d(&self.codifferential(a)?)?;
        let y = self.codifferential(&self.d(a)?)?;
        Ok(&x + &y)
    }

    /// `(d^Λ)* = *_g d^Λ *_g`, raising the degree by one.
    pub fn d_lambda_adj(&self, a: &InvariantForm) -> Result<InvariantForm> {
        let Some(k) = self.check(a)? else { return Ok(a.clone()) };
        let s = self.hodge_star(a)?;
        self.hodge_star(&self.d_lambda_k(&s, self.dim() - k)?)
    }

    pub fn dd_lambda(&self, a: &InvariantForm) -> Result<InvariantForm> {
        self.d(&self.d_lambda(a)?)
    }

    /// `(dd^Λ)* = (-1)^{k+1} *_g d d^Λ *_g`.
    pub fn dd_lambda_adj(&self, a: &InvariantForm) -> Result<InvariantForm> {
        let Some(k) = self.check(a)? else { return Ok(a.clone()) };
        let s = self.hodge_star(a)?;
        let r = self.hodge_star(&self.d(&self.d_lambda_k(&s, self.dim() - k)?)?)?;
        Ok(if k % 2 == 0 { -&r } else { r })
    }

    /// `Δψ - (1/n) g(Δψ, ω) ω` without the primitivity precondition.
    fn p_j_formula(&self, a: &InvariantForm) -> Result<InvariantForm> {
        self.proj_primitive(&self.laplacian(a)?)
    }

    pub fn p_j(&self, a: &InvariantForm) -> Result<InvariantForm> {
        self.check(a)?;
        a.expect_degree(2)?;
        if !self.is_primitive(a)? {
            return Err(Error::NotPrimitive);
        }
        self.p_j_formula(a)
    }

    pub fn is_primitive(&self, a: &InvariantForm) -> Result<bool> {
        crate::forms::is_primitive(a, self.model.omega())
    }

    /// `(d θ)_J^-` on 1-forms.
    pub fn d_j_minus(&self, a: &InvariantForm) -> Result<InvariantForm> {
        self.check(a)?;
        a.expect_degree(1)?;
        self.proj_j(&self.d(a)?, Sign::Minus)
    }

    /// `(dθ - *_g dθ)/2` on 1-forms of a four-dimensional model.
    pub fn d_g_minus(&self, a: &InvariantForm) -> Result<InvariantForm> {
        OperatorKind::DgMinus.target_degree(1, self.dim())?;
        self.check(a)?;
        a.expect_degree(1)?;
        let da = self.d(a)?;
        Ok((&da - &self.hodge_star(&da)?).scale(&Scalar::from_ratio(1, 2)))
    }

    /// Applies `kind` to a homogeneous form, checking degrees.
    pub fn apply(&self, kind: OperatorKind, a: &InvariantForm) -> Result<InvariantForm> {
        match a.grading() {
            Grading::Mixed => Err(Error::MixedDegree),
            Grading::Zero => Ok(InvariantForm::zero(self.dim())),
            Grading::Pure(k) => {
                kind.target_degree(k, self.dim())?;
                self.apply_unchecked(kind, a)
            }
        }
    }

    /// Applies `kind` to a form of a supported degree; the primitivity
    /// precondition of `P_J` is not enforced so the formula can be assembled
    /// on the whole of degree two.
    pub(crate) fn apply_unchecked(&self, kind: OperatorKind, a: &InvariantForm) -> Result<InvariantForm> {
        match kind {
            OperatorKind::D => self.d(a),
            OperatorKind::StarG => self.hodge_star(a),
            OperatorKind::StarS => self.symplectic_star(a),
            OperatorKind::JInv => self.j_involution(a),
            OperatorKind::ProjJPlus => self.proj_j(a, Sign::Plus),
            OperatorKind::ProjJMinus => self.proj_j(a, Sign::Minus),
            OperatorKind::ProjPrimitive => self.proj_primitive(a),
            OperatorKind::Codiff => self.codifferential(a),
            OperatorKind::DLambda => self.d_lambda(a),
            OperatorKind::DLambdaAdj => self.d_lambda_adj(a),
            OperatorKind::Laplacian => self.laplacian(a),
            OperatorKind::DdLambda => self.dd_lambda(a),
            OperatorKind::DdLambdaAdj => self.dd_lambda_adj(a),
            OperatorKind::PJ => self.p_j_formula(a),
            OperatorKind::DJMinus => self.d_j_minus(a),
            OperatorKind::DgMinus => self.d_g_minus(a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::builtin;

    fn geo(name: &str) -> Geometry {
        Geometry::new(&builtin(name).unwrap()).unwrap()
    }

    fn f(g: &Geometry, text: &str) -> InvariantForm {
        g.model().parse_form(text).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let kt = geo("kodaira-thurston");
        assert_eq!(kt.d(&f(&kt, "e1^e4")).unwrap(), f(&kt, "-e1^e2^e3"));
        let tm = geo("t4-m");
        assert!(tm.d(&f(&tm, "e1^e3 - m*e2^e4")).unwrap().is_zero());
        assert_eq!(tm.d(&f(&tm, "e1^e4 + m*e2^e3")).unwrap(), f(&tm, "m_4*e2^e3^e4"));
        let m6 = geo("m6c");
        assert_eq!(m6.d(&f(&m6, "a1")).unwrap(), f(&m6, "-c*a1^gam"));
    }

    #[test]
    fn undeclared_derivative_is_an_error() {
        let tm = geo("t4-m");
        assert!(matches!(tm.d(&f(&tm, "m_22*e1")), Err(Error::UndeclaredSymbol(_))));
    }

    #[test]
    fn hodge_star_examples() {
        let flat = geo("t4-flat");
        assert_eq!(flat.hodge_star(&f(&flat, "e1^e2")).unwrap(), f(&flat, "e3^e4"));
        let tm = geo("t4-m");
        let psi = f(&tm, "e1^e3 - m*e2^e4");
        assert_eq!(tm.hodge_star(&psi).unwrap(), psi);
        let m6 = geo("m6c");
        assert_eq!(m6.hodge_star(&f(&m6, "gam^eta")).unwrap(), f(&m6, "a1^b1^a2^b2"));
        let kt = geo("kodaira-thurston");
        assert_eq!(kt.hodge_star(&f(&kt, "e1^e3")).unwrap(), f(&kt, "-e2^e4"));
        assert_eq!(kt.hodge_star(&f(&kt, "e2^e3")).unwrap(), f(&kt, "e1^e4"));
        assert_eq!(kt.hodge_star(&f(&kt, "e1^e2^e3")).unwrap(), f(&kt, "e4"));
        assert!(matches!(kt.hodge_star(&f(&kt, "e1 + e1^e2")), Err(Error::MixedDegree)));
    }

    #[test]
    fn symplectic_star_examples() {
        let flat = geo("t4-flat");
        let omega = flat.model().omega().clone();
        assert_eq!(flat.symplectic_star(&omega).unwrap(), omega);
        assert_eq!(flat.symplectic_star(&f(&flat, "e1^e3")).unwrap(), f(&flat, "-e1^e3"));
        let kt = geo("kodaira-thurston");
        let e23 = f(&kt, "e2^e3");
        assert_eq!(kt.symplectic_star(&kt.symplectic_star(&e23).unwrap()).unwrap(), e23);
        assert_eq!(kt.symplectic_star(&f(&kt, "e1^e4")).unwrap(), f(&kt, "-e1^e4"));
        assert_eq!(kt.symplectic_star(&f(&kt, "e1^e2^e3")).unwrap(), f(&kt, "-e3"));
    }

    #[test]
    fn j_involution_examples() {
        let m6 = geo("m6c");
        let a = f(&m6, "a1^b2 - a2^b1");
        assert_eq!(m6.j_involution(&a).unwrap(), -&a);
        let omega = m6.model().omega().clone();
        assert_eq!(m6.j_involution(&omega).unwrap(), omega);
        let kt = geo("kodaira-thurston");
        assert_eq!(kt.j_involution(&f(&kt, "e1^e3")).unwrap(), f(&kt, "e2^e4"));
        assert_eq!(kt.j_involution(&f(&kt, "e1")).unwrap(), f(&kt, "-e2"));
    }

    #[test]
    fn j_projection_examples() {
        let kt = geo("kodaira-thurston");
        let e13 = f(&kt, "e1^e3");
        assert_eq!(kt.proj_j(&e13, Sign::Minus).unwrap(), f(&kt, "(e1^e3 - e2^e4)/2"));
        let omega = kt.model().omega().clone();
        assert_eq!(kt.proj_j(&omega, Sign::Plus).unwrap(), omega);
        assert!(kt.proj_j(&omega, Sign::Minus).unwrap().is_zero());
        let tm = geo("t4-m");
        let psi2 = f(&tm, "e1^e4 + m*e2^e3");
        assert_eq!(tm.proj_j(&psi2, Sign::Minus).unwrap(), psi2);
        assert!(matches!(kt.proj_j(&f(&kt, "e1"), Sign::Plus), Err(Error::WrongDegree { .. })));
    }

    #[test]
    fn d_lambda_examples() {
        let kt = geo("kodaira-thurston");
        assert!(kt.d_lambda(kt.model().omega()).unwrap().is_zero());
        assert!(kt.d_lambda(&f(&kt, "e2^e3")).unwrap().is_zero());
        assert_eq!(kt.d_lambda(&f(&kt, "e1^e4")).unwrap(), f(&kt, "e3"));
        let m6 = geo("m6c");
        assert!(m6.d_lambda(m6.model().omega()).unwrap().is_zero());
    }

    #[test]
    fn laplacian_examples() {
        let kt = geo("kodaira-thurston");
        assert!(kt.laplacian(&f(&kt, "e1^e2 - e3^e4")).unwrap().is_zero());
        let flat = geo("t4-flat");
        assert!(flat.codifferential(&f(&flat, "7*(e1^e2 + e3^e4)")).unwrap().is_zero());
        let m6 = geo("m6c");
        assert!(m6.laplacian(&f(&m6, "a1^b2")).unwrap().is_zero());
    }

    #[test]
    fn p_j_examples() {
        let m6 = geo("m6c");
        assert!(m6.p_j(&f(&m6, "a1^b1 - gam^eta")).unwrap().is_zero());
        let kt = geo("kodaira-thurston");
        let e23 = f(&kt, "e2^e3");
        assert_eq!(kt.p_j(&e23).unwrap(), e23);
        assert!(matches!(kt.p_j(kt.model().omega()), Err(Error::NotPrimitive)));
    }

    #[test]
    fn dd_lambda_examples() {
        let kt = geo("kodaira-thurston");
        assert!(kt.dd_lambda(kt.model().omega()).unwrap().is_zero());
        assert!(kt.dd_lambda_adj(&f(&kt, "e1^e4")).unwrap().is_zero());
        let flat = geo("t4-flat");
        assert!(flat.d_lambda_adj(&f(&flat, "e1^e3")).unwrap().is_zero());
    }

    #[test]
    fn degree_bookkeeping() {
        let kt = geo("kodaira-thurston");
        let e1 = f(&kt, "e1");
        assert!(matches!(kt.apply(OperatorKind::PJ, &e1), Err(Error::WrongDegree { .. })));
        assert!(matches!(kt.apply(OperatorKind::D, &f(&kt, "e1^e2^e3^e4")), Err(Error::WrongDegree { .. })));
        assert!(kt.apply(OperatorKind::DgMinus, &e1).is_ok());
        let m6 = geo("m6c");
        assert!(matches!(m6.apply(OperatorKind::DgMinus, &f(&m6, "a1")), Err(Error::Invalid(_))));
    }
}
