use extpow::catalog::{entry, infinite_dihedral, list_entries};
use extpow::graphs::Graph;
use extpow::linalg::{unit_vector, Matrix, Subspace};
use extpow::repkit::{exterior_rep, simplicity, Representation, Semisimplicity, SimplicityStatus};
use extpow::theoremlab::{
    check_hypotheses, check_witnesses, connected_basis_subset, steinberg_mode, validate_trace,
    verify_theorem, verify_theorem_with, Condition4, Conclusion, FailedCondition, TheoremError,
    VerifyOptions,
};
use extpow::Scalar;

fn failed_condition(c: &Conclusion) -> Option<FailedCondition> {
    match c {
        Conclusion::HypothesisFailed { condition, .. } => Some(*condition),
        _ => None,
    }
}

#[test]
fn catalog_expectations_match_pipeline() {
    for name in list_entries() {
        let e = entry(&name).unwrap();
        let report = verify_theorem(&e.representation);
        assert_eq!(report.is_verified(), e.expected.theorem_applies, "{name}: {:?}", report.conclusion);
        assert_eq!(failed_condition(&report.conclusion), e.expected.failure, "{name}");
        check_witnesses(&e.representation, &report).unwrap_or_else(|m| panic!("{name}: {m}"));
    }
}

#[test]
fn a2_hypotheses() {
    let h = check_hypotheses(&entry("A2").unwrap().representation);
    assert!(h.all_reflections);
    assert_eq!(h.condition4, Some(Condition4::Holds));
    let mut edge = Graph::on([1, 2].into_iter().collect());
    edge.add_edge(1, 2).unwrap();
    assert_eq!(h.graph, Some(edge));
    assert_eq!(h.v_simple.status, SimplicityStatus::Simple);
}

#[test]
fn cond4_pair() {
    let r = entry("cond4-fail").unwrap().representation;
    let h = check_hypotheses(&r);
    // s1 moves alpha2 = (0,1); s2 fixes alpha1 = (1,0).
    assert_eq!(h.condition4, Some(Condition4::Violations(vec![(1, 2)])));
    assert_eq!(h.remarks.len(), 1);
    let report = verify_theorem(&r);
    assert_eq!(failed_condition(&report.conclusion), Some(FailedCondition::Condition4));
}

#[test]
fn one_dimensional_reflection() {
    let r = Representation::from_matrices(vec![Matrix::from_ints(&[[-1]])]).unwrap();
    let h = check_hypotheses(&r);
    assert_eq!(h.condition4, Some(Condition4::Holds));
    assert_eq!(h.graph.as_ref().unwrap().vertex_count(), 1);
    let report = verify_theorem(&r);
    assert!(report.is_verified());
    assert_eq!(report.basis_subset.unwrap().subset, vec![1]);
}

#[test]
fn a3_verifies() {
    let report = verify_theorem(&entry("A3").unwrap().representation);
    assert!(report.is_verified());
    assert_eq!(report.commutant_dims(), vec![1, 1, 1, 1]);
    assert!(report.pairwise.iter().all(|p| p.hom_dim == 0));
    assert_eq!(report.pairwise.len(), 6);
}

#[test]
fn dihedral_two_three_verifies() {
    let r = infinite_dihedral(&Scalar::int(2), &Scalar::int(3));
    let report = verify_theorem(&r);
    assert!(report.is_verified());
    assert_eq!(report.degrees_checked, vec![0, 1, 2]);
}

#[test]
fn dihedral_zero_zero_has_invariant_line() {
    let r = infinite_dihedral(&Scalar::int(0), &Scalar::int(0));
    let report = verify_theorem(&r);
    assert_eq!(failed_condition(&report.conclusion), Some(FailedCondition::Condition3));
    let w = report.hypothesis.v_simple.witness.clone().unwrap();
    assert!(w.is_invariant_under(&r.matrices()[0]) && w.is_invariant_under(&r.matrices()[1]));
    assert_eq!(w.dim(), 1);
}

#[test]
fn dihedral_zero_one_breaks_symmetry() {
    let h = check_hypotheses(&infinite_dihedral(&Scalar::int(0), &Scalar::int(1)));
    assert_eq!(h.condition4, Some(Condition4::Violations(vec![(2, 1)])));
}

#[test]
fn dihedral_two_two_fixes_a_line() {
    let r = infinite_dihedral(&Scalar::int(2), &Scalar::int(2));
    let report = verify_theorem(&r);
    assert_eq!(failed_condition(&report.conclusion), Some(FailedCondition::Condition3));
    let ones = vec![Scalar::int(1), Scalar::int(1)];
    assert_eq!(report.hypothesis.v_simple.witness, Some(Subspace::span(2, &[ones])));
}

#[test]
fn redundant_generators_shrink_to_a_connected_basis() {
    let r = entry("redundant").unwrap().representation;
    let report = verify_theorem(&r);
    assert!(report.is_verified());
    let b = report.basis_subset.clone().unwrap();
    assert_eq!(b.subset.len(), 2);
    assert_eq!(b.deletions.len(), 1);
    // Oracle: every 2-subset of the three generators, checked directly.
    let refls = report.hypothesis.reflections().unwrap();
    let g = report.hypothesis.graph.clone().unwrap();
    let good: Vec<Vec<usize>> = [vec![1, 2], vec![1, 3], vec![2, 3]]
        .into_iter()
        .filter(|s| {
            let alphas: Vec<_> = s.iter().map(|&i| refls[i - 1].alpha.clone()).collect();
            Subspace::span(2, &alphas).is_full() && g.induced(&s.iter().copied().collect()).is_connected()
        })
        .collect();
    assert!(good.contains(&b.subset));
}

#[test]
fn basis_subset_errors() {
    let e1 = unit_vector(2, 0);
    let g = Graph::on([1, 2].into_iter().collect());
    assert_eq!(
        connected_basis_subset(&[e1.clone(), e1.clone()], &g),
        Err(TheoremError::NotSpanning)
    );
    assert_eq!(
        connected_basis_subset(&[e1, unit_vector(2, 1)], &g),
        Err(TheoremError::NotConnected)
    );
}

#[test]
fn traces_replay() {
    for name in ["A3", "A4", "B3", "H3", "redundant"] {
        let r = entry(name).unwrap().representation;
        let opts = VerifyOptions {
            trace: true,
            ..VerifyOptions::default()
        };
        let report = verify_theorem_with(&r, &opts).unwrap();
        assert!(report.is_verified(), "{name}");
        let refls = report.hypothesis.reflections().unwrap();
        let basis = report.basis_subset.as_ref().unwrap().subset.clone();
        let g = report.hypothesis.graph.as_ref().unwrap().induced(&basis.iter().copied().collect());
        for p in &report.per_degree {
            match &p.move_trace {
                Some(t) => validate_trace(t, &refls, &basis, &g, p.d).unwrap(),
                None => assert!(p.d == 0 || p.d == report.dim),
            }
        }
    }
}

#[test]
fn degree_selection() {
    let r = entry("A3").unwrap().representation;
    let opts = VerifyOptions {
        trace: true,
        degrees: Some(vec![2]),
        ..VerifyOptions::default()
    };
    let report = verify_theorem_with(&r, &opts).unwrap();
    assert_eq!(report.degrees_checked, vec![2]);
    assert!(report.per_degree[0].move_trace.is_some());
    let bad = VerifyOptions {
        degrees: Some(vec![4]),
        ..VerifyOptions::default()
    };
    assert_eq!(verify_theorem_with(&r, &bad), Err(TheoremError::BadDegree { d: 4, n: 3 }));
}

#[test]
fn steinberg_examples() {
    let a2 = steinberg_mode(&entry("A2").unwrap().representation).unwrap();
    assert!(a2.is_verified());
    assert_eq!(a2.basis_subset.unwrap().subset, vec![1, 2]);
    assert!(steinberg_mode(&entry("B2").unwrap().representation).unwrap().is_verified());
    assert_eq!(
        steinberg_mode(&entry("redundant").unwrap().representation),
        Err(TheoremError::AlphasNotABasis)
    );
}

#[test]
fn second_exterior_power_of_a3_with_premise() {
    let r = exterior_rep(&entry("A3").unwrap().representation, 2).unwrap();
    let v = simplicity(&r, Semisimplicity::InheritedFromSimpleBase).unwrap();
    assert_eq!(v.status, SimplicityStatus::Simple);
    assert_eq!(v.commutant_dim, 1);
}
