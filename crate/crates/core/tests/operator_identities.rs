use pcw_core::coeff::Scalar;
use pcw_core::forms::{lefschetz, InvariantForm};
use pcw_core::linalg::{assemble, Matrix, Subspace};
use pcw_core::model::BUILTIN_NAMES;
use pcw_core::{builtin, Geometry, OperatorKind};

fn geometries() -> Vec<Geometry> {
    BUILTIN_NAMES.iter().map(|n| Geometry::new(&builtin(n).unwrap()).unwrap()).collect()
}

fn each_basis_form(geo: &Geometry, mut f: impl FnMut(usize, &InvariantForm)) {
    for k in 0..=geo.dim() {
        for b in geo.basis().forms(k) {
            f(k, &b);
        }
    }
}

#[test]
fn d_squared_vanishes() {
    for geo in geometries() {
        each_basis_form(&geo, |_, b| {
            assert!(geo.d(&geo.d(b).unwrap()).unwrap().is_zero(), "{}", geo.model().name());
        });
    }
}

#[test]
fn d_lambda_squared_vanishes_and_anticommutes() {
    for geo in geometries() {
        each_basis_form(&geo, |_, b| {
            let dl = geo.d_lambda(b).unwrap();
            assert!(geo.d_lambda(&dl).unwrap().is_zero(), "{}", geo.model().name());
            let a = geo.d(&dl).unwrap();
            let c = geo.d_lambda(&geo.d(b).unwrap()).unwrap();
            assert!((&a + &c).is_zero(), "{}: {:?}", geo.model().name(), b);
        });
    }
}

#[test]
fn stars_square_to_signs() {
    for geo in geometries() {
        each_basis_form(&geo, |k, b| {
            let ss = geo.symplectic_star(&geo.symplectic_star(b).unwrap()).unwrap();
            assert_eq!(&ss, b);
            let gg = geo.hodge_star(&geo.hodge_star(b).unwrap()).unwrap();
            let expected = if k % 2 == 0 { b.clone() } else { -b };
            assert_eq!(gg, expected);
        });
    }
}

fn primitive_forms(geo: &Geometry, k: usize) -> Vec<InvariantForm> {
    let n = geo.dim() / 2;
    let basis = geo.basis();
    let omega = geo.model().omega();
    let target = k + 2 * (n - k + 1);
    if target > geo.dim() {
        return basis.forms(k);
    }
    let columns: Vec<Vec<Scalar>> = basis
        .forms(k)
        .iter()
        .map(|b| basis.coords(&omega.wedge_power(n - k + 1).wedge(b).unwrap(), target).unwrap())
        .collect();
    let m = Matrix::from_columns(basis.size(target), &columns);
    m.kernel().into_iter().map(|v| basis.from_coords(k, &v)).collect()
}

#[test]
fn weil_identity_for_primitive_forms() {
    for geo in geometries() {
        let n = geo.dim() / 2;
        let omega = geo.model().omega();
        for k in 0..=n {
            for b in primitive_forms(&geo, k) {
                assert!(geo.is_primitive(&b).unwrap());
                let sign = if (k * (k + 1) / 2) % 2 == 0 { 1 } else { -1 };
                let jb = geo.j_involution(&b).unwrap();
                for r in 0..=(n - k) {
                    let lhs_s = geo.symplectic_star(&lefschetz(&b, omega, r).unwrap()).unwrap();
                    let rhs_s = lefschetz(&b, omega, n - r - k).unwrap().scale(&Scalar::from_int(sign));
                    assert_eq!(lhs_s, rhs_s, "{} symplectic k={k} r={r}", geo.model().name());
                    let lhs_g = geo.hodge_star(&lefschetz(&b, omega, r).unwrap()).unwrap();
                    let rhs_g = lefschetz(&jb, omega, n - r - k).unwrap().scale(&Scalar::from_int(sign));
                    assert_eq!(lhs_g, rhs_g, "{} metric k={k} r={r}", geo.model().name());
                }
            }
        }
    }
}

#[test]
fn omega_has_norm_n() {
    for geo in geometries() {
        let omega = geo.model().omega();
        let n = (geo.dim() / 2) as i64;
        assert_eq!(geo.inner(omega, omega).unwrap(), Scalar::from_int(n));
    }
}

fn eigen(geo: &Geometry, kind: OperatorKind, value: i64) -> Subspace {
    let m = assemble(kind, 2, geo).unwrap().matrix;
    let shifted = m.sub(&Matrix::identity(m.rows()).scale(&Scalar::from_int(value))).unwrap();
    Subspace::span(2, m.cols(), shifted.kernel())
}

#[test]
fn four_dimensional_bundle_relations() {
    for geo in geometries().into_iter().filter(|g| g.dim() == 4) {
        let omega = Subspace::from_forms(geo.basis(), 2, &[geo.model().omega().clone()]).unwrap();
        let j_plus = eigen(&geo, OperatorKind::JInv, 1);
        let j_minus = eigen(&geo, OperatorKind::JInv, -1);
        let g_plus = eigen(&geo, OperatorKind::StarG, 1);
        let g_minus = eigen(&geo, OperatorKind::StarG, -1);
        assert_eq!((j_plus.dim(), j_minus.dim(), g_plus.dim(), g_minus.dim()), (4, 2, 3, 3));
        assert!(omega.intersection(&g_minus).unwrap().is_zero());
        assert!(j_plus.equals(&omega.sum(&g_minus).unwrap()).unwrap(), "{}", geo.model().name());
        assert!(omega.intersection(&j_minus).unwrap().is_zero());
        assert!(g_plus.equals(&omega.sum(&j_minus).unwrap()).unwrap(), "{}", geo.model().name());
    }
}

#[test]
fn j_involution_is_an_involution_on_two_forms() {
    for geo in geometries() {
        for b in geo.basis().forms(2) {
            assert_eq!(geo.j_involution(&geo.j_involution(&b).unwrap()).unwrap(), b);
        }
    }
}

#[test]
fn assembled_matrices_match_pointwise_operators() {
    let geo = Geometry::new(&builtin("m6c").unwrap()).unwrap();
    for kind in [OperatorKind::D, OperatorKind::StarS, OperatorKind::DLambda, OperatorKind::Laplacian] {
        for k in 0..=geo.dim() {
            let Ok(target) = kind.target_degree(k, geo.dim()) else { continue };
            let m = assemble(kind, k, &geo).unwrap();
            for (i, b) in geo.basis().forms(k).iter().enumerate() {
                let column = m.matrix.column(i);
                let expected = geo.apply(kind, b).unwrap();
                assert_eq!(geo.basis().from_coords(target, &column), expected);
            }
        }
    }
}
