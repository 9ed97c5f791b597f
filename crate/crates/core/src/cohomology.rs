//! Cohomology, harmonic spaces and structural verdicts in degree two.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::Mutex;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::forms::{lefschetz, InvariantForm};
use crate::linalg::{assemble, Matrix, OperatorMatrix, Subspace};
use crate::model::ManifoldModel;
use crate::operators::{Geometry, OperatorKind};

/// Whether a verdict records an observed property of the model or a statement
/// that must hold on every model (a failure then signals a bug).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    Observation,
    Invariant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
    pub kind: VerdictKind,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSpace {
    pub name: String,
    pub space: Subspace,
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub model: String,
    pub dim: usize,
    pub betti: Vec<usize>,
    pub spaces: Vec<NamedSpace>,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
}

impl CohomologyReport {
    pub fn space(&self, name: &str) -> Option<&Subspace> {
        self.spaces.iter().find(|s| s.name == name).map(|s| &s.space)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn invariant_failures(&self) -> Vec<&Verdict> {
        self.verdicts.iter().filter(|v| v.kind == VerdictKind::Invariant && !v.holds).collect()
    }
}

/// The four symplectic harmonic spaces in degree two.
#[derive(Clone, Debug)]
pub struct SymplecticHarmonic {
    /// `ker d ∩ ker d^Λ ∩ ker (dd^Λ)*`
    pub d_plus_dlambda: Subspace,
    /// `ker d* ∩ ker (d^Λ)* ∩ ker dd^Λ`
    pub ddlambda: Subspace,
    pub d_plus_dlambda_primitive: Subspace,
    pub ddlambda_primitive: Subspace,
}

/// Exact computations on a constant-coefficient model.
pub struct Engine {
    geo: Geometry,
    ops: Mutex<HashMap<(OperatorKind, usize), OperatorMatrix>>,
}

fn violation(msg: impl Into<String>) -> Error {
    Error::InvariantViolation(msg.into())
}

impl Engine {
    pub fn new(model: &ManifoldModel) -> Result<Self> {
        if !model.is_constant_coefficient() {
            return Err(Error::FunctionCoefficientModel(model.name().to_string()));
        }
        if model.dim() < 4 {
            return Err(Error::Invalid("degree-two analysis needs dimension at least four".into()));
        }
        Ok(Engine { geo: Geometry::new(model)?, ops: Mutex::new(HashMap::new()) })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geo
    }

    pub fn model(&self) -> &ManifoldModel {
        self.geo.model()
    }

    fn dim(&self) -> usize {
        self.model().dim()
    }

    fn n(&self) -> usize {
        self.model().half_dim()
    }

    fn len(&self, k: usize) -> usize {
        self.geo.basis().size(k)
    }

    pub fn operator(&self, kind: OperatorKind, k: usize) -> Result<OperatorMatrix> {
        if let Some(m) = self.ops.lock().expect("cache lock").get(&(kind, k)) {
            return Ok(m.clone());
        }
        let m = assemble(kind, k, &self.geo)?;
        self.ops.lock().expect("cache lock").insert((kind, k), m.clone());
        Ok(m)
    }

    fn kernel_of(&self, kind: OperatorKind, k: usize) -> Result<Subspace> {
        Ok(self.operator(kind, k)?.kernel())
    }

    pub fn span(&self, k: usize, forms: &[InvariantForm]) -> Result<Subspace> {
        Subspace::from_forms(self.geo.basis(), k, forms)
    }

    pub fn forms(&self, s: &Subspace) -> Vec<InvariantForm> {
        s.forms(self.geo.basis())
    }

    /// Closed forms of degree `k`.
    pub fn closed(&self, k: usize) -> Result<Subspace> {
        if k == self.dim() {
            return Ok(Subspace::full(k, 1));
        }
        self.kernel_of(OperatorKind::D, k)
    }

    /// Exact forms of degree `k`.
    pub fn exact(&self, k: usize) -> Result<Subspace> {
        if k == 0 {
            return Ok(Subspace::zero(0, 1));
        }
        Ok(self.operator(OperatorKind::D, k - 1)?.image())
    }

    /// Representatives of `H^k`: closed forms orthogonal to the exact ones.
    pub fn de_rham(&self, k: usize) -> Result<Subspace> {
        let perp = self.exact(k)?.orthogonal_complement(self.geo.gram(k))?;
        self.closed(k)?.intersection(&perp)
    }

    pub fn betti(&self) -> Result<Vec<usize>> {
        (0..=self.dim()).map(|k| Ok(self.de_rham(k)?.dim())).collect()
    }

    /// Harmonic representatives of the classes of closed forms in `s`.
    pub fn harmonic_projection(&self, s: &Subspace) -> Result<Subspace> {
        let k = s.degree();
        let exact = self.exact(k)?;
        let gram = self.geo.gram(k);
        let vectors = s.vectors().iter().map(|v| exact.reject(v, gram)).collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(k, self.len(k), vectors))
    }

    fn eigenspace(&self, m: &Matrix, k: usize, value: i64) -> Subspace {
        let shifted = m.sub(&Matrix::identity(m.rows()).scale(&Scalar::from_int(value))).expect("square");
        Subspace::span(k, m.cols(), shifted.kernel())
    }

    /// `±1` eigenspace of the J-involution on 2-forms.
    pub fn j_eigenspace(&self, plus: bool) -> Result<Subspace> {
        let m = self.operator(OperatorKind::JInv, 2)?;
        Ok(self.eigenspace(&m.matrix, 2, if plus { 1 } else { -1 }))
    }

    /// `±1` eigenspace of the Hodge star on middle-degree forms in dimension four.
    pub fn star_eigenspace(&self, plus: bool) -> Result<Subspace> {
        if self.dim() != 4 {
            return Err(Error::Invalid("self-duality is defined on 2-forms in dimension four".into()));
        }
        let m = self.operator(OperatorKind::StarG, 2)?;
        Ok(self.eigenspace(&m.matrix, 2, if plus { 1 } else { -1 }))
    }

    /// Primitive 2-forms: the kernel of `L^{n-1}`.
    pub fn primitive(&self) -> Result<Subspace> {
        let basis = self.geo.basis();
        let omega = self.model().omega();
        let target = 2 * self.n();
        let columns = basis
            .forms(2)
            .iter()
            .map(|f| basis.coords(&lefschetz(f, omega, self.n() - 1)?, target))
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_columns(self.len(target), &columns);
        Ok(Subspace::span(2, self.len(2), m.kernel()))
    }

    pub fn omega_line(&self) -> Result<Subspace> {
        self.span(2, &[self.model().omega().clone()])
    }

    pub fn z_j(&self, plus: bool) -> Result<Subspace> {
        self.closed(2)?.intersection(&self.j_eigenspace(plus)?)
    }

    pub fn h_j(&self, plus: bool) -> Result<Subspace> {
        self.harmonic_projection(&self.z_j(plus)?)
    }

    pub fn h_j0_plus(&self) -> Result<Subspace> {
        self.harmonic_projection(&self.z_j(true)?.intersection(&self.primitive()?)?)
    }

    /// `ker Δ` on degree `k`, checked against `ker d ∩ ker d*`.
    pub fn harmonic(&self, k: usize) -> Result<Subspace> {
        let lap = self.kernel_of(OperatorKind::Laplacian, k)?;
        let mut both = self.closed(k)?;
        if k > 0 {
            both = both.intersection(&self.kernel_of(OperatorKind::Codiff, k)?)?;
        }
        if !lap.equals(&both)? {
            return Err(violation(format!("ker laplacian differs from ker d ∩ ker d* in degree {k}")));
        }
        Ok(lap)
    }

    /// Self-dual or anti-self-dual harmonic 2-forms in dimension four.
    pub fn harmonic_self_dual(&self, plus: bool) -> Result<Subspace> {
        self.harmonic(2)?.intersection(&self.star_eigenspace(plus)?)
    }

    /// Nullspace of the matrix of `P_J` restricted to primitive 2-forms.
    pub fn ker_pj_matrix(&self) -> Result<Subspace> {
        let prim = self.primitive()?;
        if prim.is_zero() {
            return Ok(prim);
        }
        let pj = self.operator(OperatorKind::PJ, 2)?;
        let b = Matrix::from_rows(prim.vectors().to_vec()).transpose();
        let restricted = pj.matrix.mul(&b)?;
        let vectors = restricted
            .kernel()
            .into_iter()
            .map(|x| b.mul_vec(&x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(2, self.len(2), vectors))
    }

    /// `ker P_J`, computed as a nullspace and as the primitive harmonic forms.
    pub fn ker_pj(&self) -> Result<Subspace> {
        let by_matrix = self.ker_pj_matrix()?;
        let harmonic = self.harmonic(2)?.intersection(&self.primitive()?)?;
        if !by_matrix.equals(&harmonic)? {
            return Err(violation("ker P_J differs from the primitive harmonic 2-forms"));
        }
        Ok(by_matrix)
    }

    /// `(ker P_J ∩ Ω_J^-, ker P_J ∩ Ω_J^+)`, checked to split the kernel into
    /// closed and co-closed pieces.
    pub fn split_ker_pj(&self) -> Result<(Subspace, Subspace)> {
        let ker = self.ker_pj()?;
        let minus = ker.intersection(&self.j_eigenspace(false)?)?;
        let plus = ker.intersection(&self.j_eigenspace(true)?)?;
        if !minus.intersection(&plus)?.is_zero() {
            return Err(Error::SplitFailure("the J-invariant and anti-invariant parts meet".into()));
        }
        if !minus.sum(&plus)?.equals(&ker)? {
            return Err(Error::SplitFailure(format!(
                "dimensions {} + {} do not add up to {}",
                minus.dim(),
                plus.dim(),
                ker.dim()
            )));
        }
        for f in self.forms(&minus).iter().chain(&self.forms(&plus)) {
            if !self.geo.d(f)?.is_zero() || !self.geo.codifferential(f)?.is_zero() {
                return Err(Error::SplitFailure(format!(
                    "{} is not closed and co-closed",
                    self.model().render(f)
                )));
            }
        }
        Ok((minus, plus))
    }

    pub fn symplectic_harmonic(&self) -> Result<SymplecticHarmonic> {
        let dpl = self
            .closed(2)?
            .intersection(&self.kernel_of(OperatorKind::DLambda, 2)?)?
            .intersection(&self.kernel_of(OperatorKind::DdLambdaAdj, 2)?)?;
        let ddl = self
            .kernel_of(OperatorKind::Codiff, 2)?
            .intersection(&self.kernel_of(OperatorKind::DLambdaAdj, 2)?)?
            .intersection(&self.kernel_of(OperatorKind::DdLambda, 2)?)?;
        let prim = self.primitive()?;
        let omega = self.omega_line()?;
        let dpl_p = dpl.intersection(&prim)?;
        let ddl_p = ddl.intersection(&prim)?;
        for (name, full, part) in [("d+d^Λ", &dpl, &dpl_p), ("dd^Λ", &ddl, &ddl_p)] {
            let ok = full.contains(&omega)? && full.dim() == part.dim() + 1;
            if !ok {
                return Err(violation(format!("{name}-harmonic 2-forms are not <omega> plus their primitive part")));
            }
        }
        Ok(SymplecticHarmonic {
            d_plus_dlambda: dpl,
            ddlambda: ddl,
            d_plus_dlambda_primitive: dpl_p,
            ddlambda_primitive: ddl_p,
        })
    }

    /// Image of `d_J^- ⊕ d_g^-` on 1-forms, in dimension four.
    pub fn mixed_exact_image(&self) -> Result<Subspace> {
        let a = self.operator(OperatorKind::DJMinus, 1)?.image();
        let b = self.operator(OperatorKind::DgMinus, 1)?.image();
        a.sum(&b)
    }

    /// Whether `[ω]^{n-k}: H^k → H^{2n-k}` is an isomorphism, for `k < n`.
    pub fn hard_lefschetz(&self) -> Result<Vec<(usize, bool)>> {
        let n = self.n();
        let omega = self.model().omega();
        let basis = self.geo.basis();
        let mut out = Vec::new();
        for k in 0..n {
            let reps = self.de_rham(k)?;
            let target = 2 * n - k;
            let exact = self.exact(target)?;
            let images = self
                .forms(&reps)
                .iter()
                .map(|f| basis.coords(&lefschetz(f, omega, n - k)?, target))
                .collect::<Result<Vec<_>>>()?;
            let with_images = exact.sum(&Subspace::span(target, self.len(target), images))?;
            let injective = with_images.dim() - exact.dim() == reps.dim();
            let b_target = self.de_rham(target)?.dim();
            out.push((k, injective && reps.dim() == b_target));
        }
        Ok(out)
    }

    pub fn report(&self) -> Result<CohomologyReport> {
        let model = self.model();
        let dim = self.dim();
        let mut spaces: Vec<NamedSpace> = Vec::new();
        let mut verdicts: Vec<Verdict> = Vec::new();
        let mut notes = vec![
            "all spaces are computed in the complex of invariant forms".to_string(),
            "bases are reduced echelon forms in the graded monomial order".to_string(),
        ];
        if !model.symbols().is_empty() {
            let params: Vec<&str> = model.symbols().symbols().iter().map(|s| s.name.as_str()).collect();
            notes.push(format!(
                "ranks are generic in {}: finitely many special values may change them",
                params.join(", ")
            ));
        }
        let mut push = |name: &str, space: Subspace| spaces.push(NamedSpace { name: name.to_string(), space });
        let mut verdict = |name: &str, holds: bool, kind: VerdictKind, detail: String| {
            verdicts.push(Verdict { name: name.to_string(), holds, kind, detail })
        };

        let mut betti = Vec::new();
        for k in 0..=dim {
            let h = self.de_rham(k)?;
            betti.push(h.dim());
            push(&format!("H^{k}_dR"), h);
        }
        let b2 = betti[2];

        let z_plus = self.z_j(true)?;
        let z_minus = self.z_j(false)?;
        let h_plus = self.harmonic_projection(&z_plus)?;
        let h_minus = self.harmonic_projection(&z_minus)?;
        let h_j0 = self.h_j0_plus()?;
        push("Z_J^+", z_plus);
        push("Z_J^-", z_minus);
        push("H_J^+", h_plus.clone());
        push("H_J^-", h_minus.clone());
        push("H_J0^+", h_j0.clone());

        let mut harmonic_dims = Vec::new();
        for k in 0..=dim {
            let h = self.harmonic(k)?;
            harmonic_dims.push(h.dim());
            push(&format!("Harm_g^{k}"), h);
        }
        verdict(
            "harmonic_dims_match_betti",
            harmonic_dims == betti,
            VerdictKind::Invariant,
            format!("harmonic {harmonic_dims:?}, betti {betti:?}"),
        );
        let four = dim == 4;
        let mut b_plus = 0;
        if four {
            let sd = self.harmonic_self_dual(true)?;
            let asd = self.harmonic_self_dual(false)?;
            b_plus = sd.dim();
            push("Harm_g^+", sd);
            push("Harm_g^-", asd);
        }

        let ker = self.ker_pj()?;
        verdict(
            "ker_pj_is_primitive_harmonic",
            true,
            VerdictKind::Invariant,
            "nullspace of P_J on primitive forms equals primitive harmonic forms".into(),
        );
        let (harm_j_minus, harm_j0_plus) = self.split_ker_pj()?;
        verdict(
            "ker_pj_splits",
            true,
            VerdictKind::Invariant,
            format!(
                "ker P_J = {} anti-invariant + {} invariant primitive, all closed and co-closed",
                harm_j_minus.dim(),
                harm_j0_plus.dim()
            ),
        );
        push("Harm_J^-", harm_j_minus.clone());
        push("Harm_J0^+", harm_j0_plus.clone());
        push("ker_P_J", ker.clone());

        let sh = self.symplectic_harmonic()?;
        verdict(
            "symplectic_harmonic_contains_omega",
            true,
            VerdictKind::Invariant,
            "both symplectic harmonic spaces are <omega> plus their primitive parts".into(),
        );
        push("Harm^2_d+dL", sh.d_plus_dlambda.clone());
        push("Harm^2_ddL", sh.ddlambda.clone());
        push("Harm^-_d+dL", sh.d_plus_dlambda_primitive.clone());
        push("Harm^-_ddL", sh.ddlambda_primitive.clone());

        let meet = sh.d_plus_dlambda_primitive.intersection(&sh.ddlambda_primitive)?;
        verdict(
            "ker_pj_is_intersection",
            meet.equals(&ker)?,
            VerdictKind::Invariant,
            format!("dim of intersection {}, dim ker P_J {}", meet.dim(), ker.dim()),
        );
        let coincide = sh.d_plus_dlambda_primitive.equals(&sh.ddlambda_primitive)?;
        verdict(
            "primitive_symplectic_harmonic_coincide",
            coincide,
            VerdictKind::Observation,
            format!(
                "dimensions {} and {}",
                sh.d_plus_dlambda_primitive.dim(),
                sh.ddlambda_primitive.dim()
            ),
        );
        if coincide {
            let omega = self.omega_line()?;
            let total = omega.sum(&harm_j_minus)?.sum(&harm_j0_plus)?;
            let direct = total.dim() == 1 + harm_j_minus.dim() + harm_j0_plus.dim();
            verdict(
                "symplectic_harmonic_decomposition",
                direct && total.equals(&sh.d_plus_dlambda)?,
                VerdictKind::Invariant,
                "d+d^L harmonic = <omega> + Harm_J^- + Harm_J0^+".into(),
            );
        }
        if four {
            let star = self.operator(OperatorKind::StarG, 2)?;
            let starred = sh.d_plus_dlambda.map(&star.matrix, 2)?;
            verdict(
                "star_exchanges_symplectic_harmonic",
                starred.equals(&sh.ddlambda)?,
                VerdictKind::Invariant,
                "*_g maps d+d^L harmonic 2-forms onto dd^L harmonic 2-forms".into(),
            );
            let image = self.mixed_exact_image()?;
            let perp_dpl = sh.d_plus_dlambda_primitive.intersection(&image)?;
            let perp_ddl = sh.ddlambda_primitive.intersection(&image)?;
            let starred = perp_dpl.map(&star.matrix, 2)?;
            verdict(
                "star_exchanges_perp_spaces",
                starred.equals(&perp_ddl)?,
                VerdictKind::Invariant,
                format!("perp dimensions {} and {}", perp_dpl.dim(), perp_ddl.dim()),
            );
            let asd = self.space_named(&spaces, "Harm_g^-");
            for (name, primitive, perp) in [
                ("anti_harmonic_decomposition_d+dL", &sh.d_plus_dlambda_primitive, &perp_dpl),
                ("anti_harmonic_decomposition_ddL", &sh.ddlambda_primitive, &perp_ddl),
            ] {
                let total = harm_j_minus.sum(&asd)?.sum(perp)?;
                let direct = total.dim() == harm_j_minus.dim() + asd.dim() + perp.dim();
                verdict(
                    name,
                    direct && total.equals(primitive)?,
                    VerdictKind::Invariant,
                    format!("{} = {} + {} + {}", primitive.dim(), harm_j_minus.dim(), asd.dim(), perp.dim()),
                );
            }
            spaces.push(NamedSpace { name: "perp_d+dL".into(), space: perp_dpl });
            spaces.push(NamedSpace { name: "perp_ddL".into(), space: perp_ddl });
            verdicts.push(Verdict {
                name: "four_dim_j_dimensions".into(),
                holds: h_plus.dim() + h_minus.dim() == b2 && h_minus.dim() + 1 <= b_plus,
                kind: VerdictKind::Invariant,
                detail: format!("h+ = {}, h- = {}, b2 = {b2}, b+ = {b_plus}", h_plus.dim(), h_minus.dim()),
            });
        }

        let hypothesis = ker.dim() + 1 == b2;
        let pure = h_plus.intersection(&h_minus)?.is_zero();
        let full = h_plus.sum(&h_minus)?.dim() == b2;
        verdicts.push(Verdict {
            name: "ker_pj_codim_one".into(),
            holds: hypothesis,
            kind: VerdictKind::Observation,
            detail: format!("dim ker P_J = {}, b2 = {b2}", ker.dim()),
        });
        verdicts.push(Verdict {
            name: "pure".into(),
            holds: pure,
            kind: VerdictKind::Observation,
            detail: "H_J^+ ∩ H_J^- = 0".into(),
        });
        verdicts.push(Verdict {
            name: "full".into(),
            holds: full,
            kind: VerdictKind::Observation,
            detail: "H_J^+ + H_J^- = H^2".into(),
        });
        verdicts.push(Verdict {
            name: "codim_one_implies_pure_and_full".into(),
            holds: !hypothesis || (pure && full),
            kind: VerdictKind::Invariant,
            detail: format!("hypothesis {hypothesis}, pure {pure}, full {full}"),
        });

        let h2 = self.de_rham(2)?;
        let omega_class = self.harmonic_projection(&self.omega_line()?)?;
        let total = omega_class.sum(&h_j0)?.sum(&h_minus)?;
        let direct = total.dim() == omega_class.dim() + h_j0.dim() + h_minus.dim();
        verdicts.push(Verdict {
            name: "h2_omega_invariant_anti".into(),
            holds: direct && total.equals(&h2)?,
            kind: VerdictKind::Observation,
            detail: format!("1 + {} + {} against b2 = {b2}", h_j0.dim(), h_minus.dim()),
        });
        let h02 = self.harmonic_projection(&self.closed(2)?.intersection(&self.primitive()?)?)?;
        let total = omega_class.sum(&h02)?;
        let direct = total.dim() == omega_class.dim() + h02.dim();
        verdicts.push(Verdict {
            name: "h2_lefschetz_primitive".into(),
            holds: direct && total.equals(&h2)?,
            kind: VerdictKind::Observation,
            detail: format!("{} + {} against b2 = {b2}", omega_class.dim(), h02.dim()),
        });
        spaces.push(NamedSpace { name: "H_omega^(1,0)".into(), space: omega_class });
        spaces.push(NamedSpace { name: "H_omega^(0,2)".into(), space: h02 });

        let lefschetz = self.hard_lefschetz()?;
        for &(k, ok) in &lefschetz {
            verdicts.push(Verdict {
                name: format!("hard_lefschetz_k{k}"),
                holds: ok,
                kind: VerdictKind::Observation,
                detail: format!("[omega]^{}: H^{k} -> H^{}", self.n() - k, dim - k),
            });
        }
        verdicts.push(Verdict {
            name: "hard_lefschetz".into(),
            holds: lefschetz.iter().all(|&(_, ok)| ok),
            kind: VerdictKind::Observation,
            detail: "all degrees below the middle".into(),
        });

        if !pure || !full {
            notes.push("J is not pure and full on invariant cohomology".into());
        }

        Ok(CohomologyReport { model: model.name().to_string(), dim, betti, spaces, verdicts, notes })
    }

    fn space_named(&self, spaces: &[NamedSpace], name: &str) -> Subspace {
        spaces.iter().find(|s| s.name == name).map(|s| s.space.clone()).expect("space computed earlier")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    Closed,
    Coclosed,
    Harmonic,
    Primitive,
    JAntiInvariant,
    JInvariant,
    InKerPj,
    DPlusDLambdaHarmonic,
    DdLambdaHarmonic,
}

impl Predicate {
    pub const ALL: [Predicate; 9] = [
        Predicate::Closed,
        Predicate::Coclosed,
        Predicate::Harmonic,
        Predicate::Primitive,
        Predicate::JAntiInvariant,
        Predicate::JInvariant,
        Predicate::InKerPj,
        Predicate::DPlusDLambdaHarmonic,
        Predicate::DdLambdaHarmonic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Closed => "closed",
            Predicate::Coclosed => "coclosed",
            Predicate::Harmonic => "harmonic",
            Predicate::Primitive => "primitive",
            Predicate::JAntiInvariant => "j-anti-invariant",
            Predicate::JInvariant => "j-invariant",
            Predicate::InKerPj => "in-ker-pj",
            Predicate::DPlusDLambdaHarmonic => "d-plus-dlambda-harmonic",
            Predicate::DdLambdaHarmonic => "ddlambda-harmonic",
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown predicate `{s}`")))
    }
}

impl std::fmt::Display for Predicate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationResult {
    pub predicate: Predicate,
    pub form: InvariantForm,
    pub holds: bool,
    /// The nonzero obstruction when the predicate fails.
    pub witness: Option<InvariantForm>,
    pub notes: Vec<String>,
}

fn sum(forms: &[InvariantForm]) -> InvariantForm {
    forms.iter().skip(1).fold(forms[0].clone(), |acc, f| &acc + f)
}

/// Tests a predicate by applying the pointwise operators; works on models with
/// function coefficients.
pub fn verify(geo: &Geometry, form: &InvariantForm, predicate: Predicate) -> Result<VerificationResult> {
    let model = geo.model();
    let degree = form.pure_degree()?;
    let mut notes = Vec::new();
    for (_, c) in form.terms() {
        if !c.denom().is_constant() {
            let den = Scalar::from_poly(c.denom().clone());
            let note = format!(
                "coefficient has a pole where {} = 0; the check is exact over the function field away from it",
                model.render_scalar(&den)
            );
            if !notes.contains(&note) {
                notes.push(note);
            }
        }
    }
    let obstruction = match predicate {
        Predicate::Closed => geo.d(form)?,
        Predicate::Coclosed => geo.codifferential(form)?,
        Predicate::Harmonic => sum(&[geo.d(form)?, geo.codifferential(form)?]),
        Predicate::Primitive => match degree {
            None => InvariantForm::zero(model.dim()),
            Some(k) if k > model.half_dim() => return Err(Error::DegreeTooHigh { degree: k, half: model.half_dim() }),
            Some(k) => model.omega().wedge_power(model.half_dim() - k + 1).wedge(form)?,
        },
        Predicate::JAntiInvariant => form + &geo.j_involution(form)?,
        Predicate::JInvariant => &geo.j_involution(form)? - form,
        Predicate::InKerPj => {
            form.expect_degree(2)?;
            if geo.is_primitive(form)? {
                geo.p_j(form)?
            } else {
                notes.push("not primitive; the witness is omega^(n-1) wedge the form".into());
                lefschetz(form, model.omega(), model.half_dim() - 1)?
            }
        }
        Predicate::DPlusDLambdaHarmonic => {
            sum(&[geo.d(form)?, geo.d_lambda(form)?, geo.dd_lambda_adj(form)?])
        }
        Predicate::DdLambdaHarmonic => {
            sum(&[geo.codifferential(form)?, geo.d_lambda_adj(form)?, geo.dd_lambda(form)?])
        }
    };
    let holds = obstruction.is_zero();
    Ok(VerificationResult {
        predicate,
        form: form.clone(),
        holds,
        witness: if holds { None } else { Some(obstruction) },
        notes,
    })
}
