//! Almost-Kähler invariant-form models and the builtin example library.

use crate::coeff::{Scalar, SymbolTable};
use crate::error::{Error, Result};
use crate::forms::{mask_from_indices, mask_indices, render_form, ExprScope, InvariantForm};
use crate::linalg::Matrix;
use crate::operators::exterior_derivative;

/// Generators, structure equations, metric, symplectic form and almost
/// complex structure of a left-invariant model.
///
/// `j_rows[i]` is the 1-form `J e_i` in the convention where `J` acts on the
/// coframe by minus the pullback, so that `J e1 = e2` for the standard
/// structure; `metric` holds the components `g(E_i, E_j)` on the dual frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldModel {
    name: String,
    generators: Vec<String>,
    symbols: SymbolTable,
    structure: Vec<InvariantForm>,
    metric: Matrix,
    omega: InvariantForm,
    j_rows: Vec<InvariantForm>,
}

/// One validation check with the offending data of each failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelVerdict {
    pub model: String,
    pub checks: Vec<Check>,
}

impl ModelVerdict {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_D_SQUARED: &str = "d^2 = 0";
pub const CHECK_OMEGA_CLOSED: &str = "d omega = 0";
pub const CHECK_NONDEGENERATE: &str = "omega^n != 0";
pub const CHECK_J_SQUARED: &str = "J^2 = -1";
pub const CHECK_METRIC: &str = "metric symmetric and invertible";
pub const CHECK_COMPATIBLE: &str = "g = omega(., J.)";
pub const CHECK_NORMALIZED: &str = "g(omega, omega) = n";
pub const CHECK_VOLUME: &str = "omega^n/n! = sqrt(det g) vol";

impl ManifoldModel {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        symbols: SymbolTable,
        structure: Vec<InvariantForm>,
        metric: Matrix,
        omega: InvariantForm,
        j_rows: Vec<InvariantForm>,
    ) -> Result<Self> {
        let dim = generators.len();
        if dim == 0 || dim % 2 == 1 {
            return Err(Error::Invalid(format!("dimension must be positive and even, got {dim}")));
        }
        if dim > 16 {
            return Err(Error::DimensionTooLarge { dim, limit: 16 });
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::DuplicateDeclaration(g.clone()));
            }
            if symbols.index_of(g).is_some() {
                return Err(Error::DuplicateDeclaration(g.clone()));
            }
        }
        if structure.len() != dim {
            return Err(Error::DimensionMismatch(dim, structure.len()));
        }
        if j_rows.len() != dim {
            return Err(Error::DimensionMismatch(dim, j_rows.len()));
        }
        if metric.rows() != dim || metric.cols() != dim {
            return Err(Error::DimensionMismatch(dim, metric.rows()));
        }
        for f in structure.iter().chain([&omega]) {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch(dim, f.dim()));
            }
            f.expect_degree(2)?;
        }
        for f in &j_rows {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch(dim, f.dim()));
            }
            f.expect_degree(1)?;
        }
        let model = ManifoldModel { name: name.into(), generators, symbols, structure, metric, omega, j_rows };
        for s in model.all_coefficients() {
            model.symbols.check_declared(s)?;
        }
        Ok(model)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// `n` for a model of dimension `2n`.
    pub fn half_dim(&self) -> usize {
        self.dim() / 2
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    /// `d e_i`.
    pub fn structure(&self, i: usize) -> &InvariantForm {
        &self.structure[i]
    }

    pub fn metric(&self) -> &Matrix {
        &self.metric
    }

    pub fn omega(&self) -> &InvariantForm {
        &self.omega
    }

    pub fn j_rows(&self) -> &[InvariantForm] {
        &self.j_rows
    }

    /// `M[i][j]` = coefficient of `e_j` in `J e_i`.
    pub fn j_matrix(&self) -> Matrix {
        let dim = self.dim();
        let mut m = Matrix::zeros(dim, dim);
        for (i, row) in self.j_rows.iter().enumerate() {
            for j in 0..dim {
                m.set(i, j, row.coeff(1 << j));
            }
        }
        m
    }

    /// `Ω[i][j] = ω(E_i, E_j)`.
    pub fn omega_matrix(&self) -> Matrix {
        let dim = self.dim();
        let mut m = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let c = self.omega.coeff(mask_from_indices(&[i, j]));
                m.set(j, i, -&c);
                m.set(i, j, c);
            }
        }
        m
    }

    /// Coefficient `v` of `ω^n/n! = v·e_1∧…∧e_2n`.
    pub fn volume_coefficient(&self) -> Scalar {
        let n = self.half_dim();
        let top = crate::forms::lefschetz(&InvariantForm::one(self.dim()), &self.omega, n)
            .expect("same dimension");
        top.coeff(mask_from_indices(&(0..self.dim()).collect::<Vec<_>>()))
    }

    pub fn scope(&self) -> ExprScope<'_> {
        ExprScope { generators: &self.generators, symbols: &self.symbols }
    }

    pub fn parse_form(&self, text: &str) -> Result<InvariantForm> {
        crate::forms::parse_form(text, self.scope())
    }

    pub fn render(&self, f: &InvariantForm) -> String {
        render_form(f, &self.generators, &|v| self.symbols.name(v).to_string())
    }

    pub fn render_scalar(&self, s: &Scalar) -> String {
        crate::forms::render_scalar(s, &self.symbols)
    }

    fn all_coefficients(&self) -> impl Iterator<Item = &Scalar> {
        let forms = self.structure.iter().chain([&self.omega]).chain(&self.j_rows);
        forms
            .flat_map(|f| f.terms().map(|(_, c)| c))
            .chain((0..self.dim()).flat_map(move |i| (0..self.dim()).map(move |j| self.metric.get(i, j))))
    }

    /// True when no function symbol occurs in the structure equations, metric,
    /// symplectic form or almost complex structure.
    pub fn is_constant_coefficient(&self) -> bool {
        !self.all_coefficients().any(|s| self.symbols.involves_function(s))
    }

    pub fn validate(&self) -> ModelVerdict {
        let dim = self.dim();
        let n = self.half_dim();
        let mut checks = Vec::new();

        let mut witnesses = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            match exterior_derivative(self, &self.structure[i]) {
                Ok(dd) if dd.is_zero() => {}
                Ok(dd) => witnesses.push(format!("d(d {g}) = {}", self.render(&dd))),
                Err(e) => witnesses.push(format!("d(d {g}): {e}")),
            }
        }
        checks.push(check(CHECK_D_SQUARED, witnesses));

        let witnesses = match exterior_derivative(self, &self.omega) {
            Ok(d) if d.is_zero() => vec![],
            Ok(d) => vec![format!("d omega = {}", self.render(&d))],
            Err(e) => vec![format!("d omega: {e}")],
        };
        checks.push(check(CHECK_OMEGA_CLOSED, witnesses));

        let vol = self.volume_coefficient();
        let witnesses = if vol.is_zero() { vec!["omega^n = 0".to_string()] } else { vec![] };
        checks.push(check(CHECK_NONDEGENERATE, witnesses));

        let jm = self.j_matrix();
        let j2 = jm.mul(&jm).expect("square");
        let mut witnesses = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let expected = if i == j { -Scalar::one() } else { Scalar::zero() };
                if *j2.get(i, j) != expected {
                    witnesses.push(format!(
                        "J^2[{},{}] = {}",
                        self.generators[i],
                        self.generators[j],
                        self.render_scalar(j2.get(i, j))
                    ));
                }
            }
        }
        checks.push(check(CHECK_J_SQUARED, witnesses));

        let mut witnesses = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                if self.metric.get(i, j) != self.metric.get(j, i) {
                    witnesses.push(format!("g[{},{}] != g[{},{}]", self.generators[i], self.generators[j], self.generators[j], self.generators[i]));
                }
            }
        }
        let det_g = self.metric.det().unwrap_or_else(|_| Scalar::zero());
        if det_g.is_zero() {
            witnesses.push("det g = 0".to_string());
        }
        checks.push(check(CHECK_METRIC, witnesses));

        let compat = self.omega_matrix().mul(&jm).expect("square").scale(&-Scalar::one());
        let mut witnesses = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                if compat.get(i, j) != self.metric.get(i, j) {
                    witnesses.push(format!(
                        "omega(E_{}, J E_{}) = {} but g = {}",
                        self.generators[i],
                        self.generators[j],
                        self.render_scalar(compat.get(i, j)),
                        self.render_scalar(self.metric.get(i, j))
                    ));
                }
            }
        }
        checks.push(check(CHECK_COMPATIBLE, witnesses));

        let witnesses = match self.metric.inverse() {
            Err(_) => vec!["metric is singular".to_string()],
            Ok(inv) => {
                let norm = two_form_inner(&inv, &self.omega, &self.omega);
                if norm == Scalar::from_int(n as i64) {
                    vec![]
                } else {
                    vec![format!("g(omega, omega) = {}", self.render_scalar(&norm))]
                }
            }
        };
        checks.push(check(CHECK_NORMALIZED, witnesses));

        let mut witnesses = Vec::new();
        if &vol * &vol != det_g {
            witnesses.push(format!(
                "vol coefficient {} squared differs from det g = {}",
                self.render_scalar(&vol),
                self.render_scalar(&det_g)
            ));
        }
        if let Some(s) = vol.rational_sign() {
            if s <= 0 {
                witnesses.push(format!("omega^n/n! has coefficient {} on the oriented volume", self.render_scalar(&vol)));
            }
        }
        checks.push(check(CHECK_VOLUME, witnesses));

        ModelVerdict { model: self.name.clone(), checks }
    }
}

fn check(name: &str, witnesses: Vec<String>) -> Check {
    Check { name: name.to_string(), passed: witnesses.is_empty(), witnesses }
}

/// `⟨a, b⟩` for 2-forms under the inverse metric `inv`.
fn two_form_inner(inv: &Matrix, a: &InvariantForm, b: &InvariantForm) -> Scalar {
    let mut acc = Scalar::zero();
    for (ma, ca) in a.terms() {
        let [i, j] = mask_indices(ma)[..] else { continue };
        for (mb, cb) in b.terms() {
            let [k, l] = mask_indices(mb)[..] else { continue };
            let det = &(inv.get(i, k) * inv.get(j, l)) - &(inv.get(i, l) * inv.get(j, k));
            acc = &acc + &(&(ca * cb) * &det);
        }
    }
    acc
}

pub const BUILTIN_NAMES: [&str; 4] = ["t4-flat", "t4-m", "m6c", "kodaira-thurston"];

pub const T4_FLAT_MANIFEST: &str = include_str!("../manifests/t4-flat.manifest");
pub const T4_M_MANIFEST: &str = include_str!("../manifests/t4-m.manifest");
pub const M6C_MANIFEST: &str = include_str!("../manifests/m6c.manifest");
pub const KODAIRA_THURSTON_MANIFEST: &str = include_str!("../manifests/kodaira-thurston.manifest");
/// The six-dimensional model with `d b_i = -c b_i ∧ gam`, which is not symplectic.
pub const M6C_AS_PRINTED_MANIFEST: &str = include_str!("../manifests/m6c-as-printed.manifest");

pub fn builtin_manifest(name: &str) -> Result<&'static str> {
    match name {
        "t4-flat" => Ok(T4_FLAT_MANIFEST),
        "t4-m" => Ok(T4_M_MANIFEST),
        "m6c" => Ok(M6C_MANIFEST),
        "kodaira-thurston" => Ok(KODAIRA_THURSTON_MANIFEST),
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

pub fn builtin(name: &str) -> Result<ManifoldModel> {
    crate::manifest::parse_manifest(builtin_manifest(name)?)
}

/// Builds the standard `J`: `J a_i = b_i`, `J b_i = -a_i` for consecutive pairs.
pub fn standard_j(dim: usize) -> Vec<InvariantForm> {
    (0..dim)
        .map(|i| {
            if i % 2 == 0 {
                InvariantForm::generator(dim, i + 1)
            } else {
                -&InvariantForm::generator(dim, i - 1)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_validates() {
        for name in BUILTIN_NAMES {
            let m = builtin(name).unwrap();
            let v = m.validate();
            assert!(v.passed(), "{name}: {:?}", v.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn printed_signs_are_not_symplectic() {
        let m = crate::manifest::parse_manifest(M6C_AS_PRINTED_MANIFEST).unwrap();
        let v = m.validate();
        assert!(!v.passed());
        let closed = v.check(CHECK_OMEGA_CLOSED).unwrap();
        assert!(!closed.passed);
        assert_eq!(closed.witnesses, vec!["d omega = 2*c*a1^b1^gam + 2*c*a2^b2^gam".to_string()]);
        assert!(v.failures().all(|c| c.name == CHECK_OMEGA_CLOSED));
    }

    #[test]
    fn structure_equations_of_builtins() {
        let m6 = builtin("m6c").unwrap();
        assert_eq!(m6.render(m6.structure(0)), "-c*a1^gam");
        assert_eq!(m6.render(m6.structure(1)), "c*b1^gam");
        let kt = builtin("kodaira-thurston").unwrap();
        assert_eq!(kt.render(kt.structure(3)), "e2^e3");
        let flat = builtin("t4-flat").unwrap();
        assert!((0..4).all(|i| flat.structure(i).is_zero()));
    }

    #[test]
    fn constant_coefficient_classification() {
        assert!(builtin("m6c").unwrap().is_constant_coefficient());
        assert!(builtin("kodaira-thurston").unwrap().is_constant_coefficient());
        assert!(!builtin("t4-m").unwrap().is_constant_coefficient());
        assert!(matches!(builtin("s2"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn broken_models_report_every_failure() {
        let m = builtin("kodaira-thurston").unwrap();
        let mut metric = m.metric().clone();
        metric.set(0, 0, Scalar::from_int(2));
        let mut j = m.j_rows().to_vec();
        j[0] = InvariantForm::generator(4, 2);
        let broken = ManifoldModel::new(
            "broken",
            m.generators().to_vec(),
            m.symbols().clone(),
            (0..4).map(|i| m.structure(i).clone()).collect(),
            metric,
            m.omega().clone(),
            j,
        )
        .unwrap();
        let v = broken.validate();
        let failed: Vec<&str> = v.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&CHECK_J_SQUARED));
        assert!(failed.contains(&CHECK_COMPATIBLE));
        assert!(failed.contains(&CHECK_VOLUME));
        assert!(!failed.contains(&CHECK_OMEGA_CLOSED));
    }

    #[test]
    fn orientation_matches_volume_form() {
        for name in BUILTIN_NAMES {
            let m = builtin(name).unwrap();
            let v = m.volume_coefficient();
            assert_eq!(&v * &v, m.metric().det().unwrap(), "{name}");
        }
    }
}
