use pcw_core::cohomology::{verify, CohomologyReport, Engine, Predicate};
use pcw_core::linalg::Subspace;
use pcw_core::{builtin, Geometry, ManifoldModel};

fn report(name: &str) -> (ManifoldModel, Engine, CohomologyReport) {
    let model = builtin(name).unwrap();
    let engine = Engine::new(&model).unwrap();
    let report = engine.report().unwrap();
    (model, engine, report)
}

fn span(model: &ManifoldModel, engine: &Engine, forms: &[&str]) -> Subspace {
    let fs: Vec<_> = forms.iter().map(|t| model.parse_form(t).unwrap()).collect();
    engine.span(2, &fs).unwrap()
}

fn assert_space(r: &CohomologyReport, name: &str, expected: &Subspace) {
    let got = r.space(name).unwrap_or_else(|| panic!("missing {name}"));
    assert!(got.equals(expected).unwrap(), "{name}: dim {} vs {}", got.dim(), expected.dim());
}

fn holds(r: &CohomologyReport, name: &str) -> bool {
    r.verdict(name).unwrap_or_else(|| panic!("missing verdict {name}")).holds
}

#[test]
fn kodaira_thurston_report() {
    let (m, e, r) = report("kodaira-thurston");
    assert_eq!(r.betti, vec![1, 3, 4, 3, 1]);
    assert!(r.invariant_failures().is_empty(), "{:?}", r.invariant_failures());
    assert_space(&r, "Harm_g^2", &span(&m, &e, &["e1^e2", "e3^e4", "e1^e3", "e2^e4"]));
    assert_space(&r, "ker_P_J", &span(&m, &e, &["e1^e2 - e3^e4", "e1^e3", "e2^e4"]));
    assert_space(&r, "Z_J^+", &span(&m, &e, &["e1^e2", "e3^e4", "e1^e3 + e2^e4"]));
    assert_space(&r, "Z_J^-", &span(&m, &e, &["e1^e3 - e2^e4"]));
    assert_space(&r, "Harm_J^-", &span(&m, &e, &["e1^e3 - e2^e4"]));
    assert_space(
        &r,
        "Harm^2_d+dL",
        &span(&m, &e, &["e1^e2 + e3^e4", "e1^e2 - e3^e4", "e1^e3", "e2^e4", "e2^e3"]),
    );
    assert_space(
        &r,
        "Harm^2_ddL",
        &span(&m, &e, &["e1^e2 + e3^e4", "e1^e2 - e3^e4", "e1^e3", "e2^e4", "e1^e4"]),
    );
    assert_space(&r, "perp_d+dL", &span(&m, &e, &["e2^e3"]));
    assert_space(&r, "perp_ddL", &span(&m, &e, &["e1^e4"]));
    assert!(holds(&r, "ker_pj_codim_one"));
    assert!(holds(&r, "pure"));
    assert!(holds(&r, "full"));
    assert!(!holds(&r, "primitive_symplectic_harmonic_coincide"));
    assert!(!holds(&r, "hard_lefschetz_k1"));
    assert!(holds(&r, "hard_lefschetz_k0"));
    assert_eq!(e.mixed_exact_image().unwrap(), span(&m, &e, &["e1^e4", "e2^e3"]));
}

#[test]
fn m6c_report() {
    let (m, e, r) = report("m6c");
    assert_eq!(r.betti, vec![1, 2, 5, 8, 5, 2, 1]);
    assert!(r.invariant_failures().is_empty(), "{:?}", r.invariant_failures());
    let ker = span(
        &m,
        &e,
        &["a1^b2 - a2^b1", "a1^b2 + a2^b1", "a1^b1 - gam^eta", "a2^b2 - gam^eta"],
    );
    assert_space(&r, "ker_P_J", &ker);
    assert_space(&r, "Harm^-_d+dL", &ker);
    assert_space(&r, "Harm^-_ddL", &ker);
    assert_space(&r, "Z_J^-", &span(&m, &e, &["a1^b2 - a2^b1"]));
    assert_eq!(r.space("Z_J^+").unwrap().dim(), 4);
    assert!(holds(&r, "hard_lefschetz_k1"));
    assert!(holds(&r, "hard_lefschetz_k2"));
    assert!(holds(&r, "primitive_symplectic_harmonic_coincide"));
    assert!(holds(&r, "symplectic_harmonic_decomposition"));
    assert!(holds(&r, "ker_pj_codim_one"));
    assert!(r.notes.iter().any(|n| n.contains("generic")));
    assert_eq!(e.operator(pcw_core::OperatorKind::D, 1).unwrap().rank(), 4);
}

#[test]
fn flat_torus_report() {
    let (m, e, r) = report("t4-flat");
    assert_eq!(r.betti, vec![1, 4, 6, 4, 1]);
    assert!(r.invariant_failures().is_empty(), "{:?}", r.invariant_failures());
    assert_eq!(r.space("ker_P_J").unwrap().dim(), 5);
    assert_space(&r, "Z_J^-", &span(&m, &e, &["e1^e3 - e2^e4", "e1^e4 + e2^e3"]));
    assert_space(&r, "Harm_g^+", &span(&m, &e, &["e1^e2 + e3^e4", "e1^e3 - e2^e4", "e1^e4 + e2^e3"]));
    assert_space(&r, "Harm_g^-", &span(&m, &e, &["e1^e2 - e3^e4", "e1^e3 + e2^e4", "e1^e4 - e2^e3"]));
    assert_eq!(r.space("Harm_J^-").unwrap().dim(), 2);
    assert_eq!(r.space("Harm_J0^+").unwrap().dim(), 3);
    assert!(r.space("perp_d+dL").unwrap().is_zero());
    assert!(r.space("perp_ddL").unwrap().is_zero());
    assert!(holds(&r, "hard_lefschetz"));
}

#[test]
fn t4m_pointwise_rows() {
    let model = builtin("t4-m").unwrap();
    let geo = Geometry::new(&model).unwrap();
    let check = |text: &str, p: Predicate| verify(&geo, &model.parse_form(text).unwrap(), p).unwrap();
    assert!(check("e1^e3 - m*e2^e4", Predicate::Closed).holds);
    assert!(check("e1^e3 - m*e2^e4", Predicate::JAntiInvariant).holds);
    assert!(check("e1^e3 + m*e2^e4", Predicate::Closed).holds);
    assert!(check("e1^e3 + m*e2^e4", Predicate::JInvariant).holds);
    assert!(check("e1^e2 - e3^e4", Predicate::Closed).holds);
    assert!(check("e1^e2 - e3^e4", Predicate::Primitive).holds);
    let odd = check("(1/(1+m))*(e1^e2 - e3^e4 + e1^e4 - m*e2^e3)", Predicate::Closed);
    assert!(!odd.holds);
    let w = odd.witness.unwrap();
    assert_eq!(w.terms().count(), 2);
    assert!(model.render(&w).contains("m_2 - m_4") || model.render(&w).contains("m_4 - m_2"));
    assert!(odd.notes.iter().any(|n| n.contains("pole")));
}
