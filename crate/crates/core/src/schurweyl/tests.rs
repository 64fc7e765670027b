use super::*;
use crate::action::corpus;
use crate::linalg::unit_vector;
use crate::vertexalg::CommDiffVA;

fn z2_rep(cap: u32) -> FinGroupRep {
    FinGroupRep::from_action(GroupTable::cyclic(2), corpus::cyclic_on_euler(2, cap)).unwrap()
}

fn span_of(n: usize, idx: &[usize]) -> Subspace {
    Subspace::span(n, idx.iter().map(|&i| unit_vector(n, i)))
}

fn trivial_rep(cap: u32) -> FinGroupRep {
    let g = GroupTable::cyclic(1);
    let act = corpus::trivial(group_algebra(&g), CommDiffVA::x_power_derivation(1, cap));
    FinGroupRep::from_action(g, act).unwrap()
}

#[test]
fn character_tables() {
    let z2 = CharacterTable::cyclic(2);
    assert!(verify_character_table(&z2, &GroupTable::cyclic(2), Some(&z2_rep(3))).passed());
    let s3 = CharacterTable::symmetric3();
    let r = verify_character_table(&s3, &GroupTable::symmetric3(), None);
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.degree_sum_value, Some(6));
    let dup = CharacterTable::new(
        vec!["a".into(), "b".into()],
        vec![vec![0], vec![1]],
        vec![vec![Scalar::one(), Scalar::one()]; 2],
    )
    .unwrap();
    let r = verify_character_table(&dup, &GroupTable::cyclic(2), None);
    assert!(!r.orthogonality.passed);
    let z3 = CharacterTable::cyclic(3);
    assert!(verify_character_table(&z3, &GroupTable::cyclic(3), None).passed());
}

#[test]
fn projectors() {
    let rep = z2_rep(3);
    let t = CharacterTable::cyclic(2);
    let p = isotypic_projector(&t, &rep, 1).unwrap();
    assert_eq!(p.column_space(), span_of(4, &[1, 3]));
    assert!(verify_projectors(&t, &rep).unwrap().passed());

    let triv = trivial_rep(3);
    assert_eq!(isotypic_projector(&CharacterTable::cyclic(1), &triv, 0).unwrap(), Matrix::identity(4));

    let rep3 = FinGroupRep::from_action(GroupTable::cyclic(3), corpus::cyclic_on_euler(3, 3)).unwrap();
    let t3 = CharacterTable::cyclic(3);
    let p = isotypic_projector(&t3, &rep3, 1).unwrap();
    // oracle: the ζ₃-eigenspace of the generator
    let eig = rep3.matrix(1).sub(&Matrix::identity(4).scale(&Scalar::zeta(3))).kernel();
    assert_eq!(p.column_space(), eig);
    assert_eq!(eig, span_of(4, &[1]));
    assert!(verify_projectors(&t3, &rep3).unwrap().passed());
}

#[test]
fn conductor_is_checked() {
    let g = GroupTable::cyclic(3);
    let act = corpus::trivial(group_algebra(&g), CommDiffVA::x_power_derivation(1, 2));
    let rep = FinGroupRep::from_action(g, act).unwrap();
    let t = CharacterTable::cyclic(3);
    assert_eq!(isotypic_projector(&t, &rep, 1), Err(SwError::ConductorTooSmall { needed: 3, available: 1 }));
    let rep = rep.with_conductor(3);
    assert!(isotypic_projector(&t, &rep, 1).unwrap().is_zero());
}

#[test]
fn decompositions() {
    let d = decompose(&CharacterTable::cyclic(2), &z2_rep(6)).unwrap();
    assert!(d.bookkeeping_holds());
    assert_eq!(d.isotypes[0].component, span_of(7, &[0, 2, 4, 6]));
    assert_eq!(d.isotypes[1].component, span_of(7, &[1, 3, 5]));
    assert_eq!(d.isotypes[0].dims.iter().sum::<usize>(), 4);
    assert_eq!(d.isotypes[1].dims.iter().sum::<usize>(), 3);

    let d = decompose(&CharacterTable::cyclic(1), &trivial_rep(3)).unwrap();
    assert_eq!(d.isotypes[0].multiplicities, vec![1, 1, 1, 1]);

    let s3 = FinGroupRep::from_action(GroupTable::symmetric3(), corpus::s3_permuting(2)).unwrap();
    let t = CharacterTable::symmetric3();
    let d = decompose(&t, &s3).unwrap();
    assert!(d.bookkeeping_holds());
    // oracle: ⟨χ_perm, χ_λ⟩ with χ_perm = (3, 1, 0) on (e, transpositions, 3-cycles)
    let perm = [3i64, 1, 0];
    let sizes = [1i64, 3, 2];
    for (l, row) in [[1i64, 1, 1], [1, -1, 1], [2, 0, -1]].iter().enumerate() {
        let ip: i64 = (0..3).map(|c| sizes[c] * perm[c] * row[c]).sum::<i64>() / 6;
        assert_eq!(d.isotypes[l].multiplicities[1] as i64, ip);
    }
    assert_eq!(
        [d.isotypes[0].multiplicities[1], d.isotypes[2].multiplicities[1]],
        [1, 1]
    );
}

#[test]
fn multiplicity_spaces() {
    let rep = z2_rep(3);
    let t = CharacterTable::cyclic(2);
    let m = multiplicity_space(&t, &rep, 1).unwrap();
    assert!(m.matches_characters);
    assert_eq!(m.highest_vectors, span_of(4, &[1, 3]));
    assert_eq!(m.per_degree[0].dim(), 0);

    let s3 = FinGroupRep::from_action(GroupTable::symmetric3(), corpus::s3_permuting(2)).unwrap();
    let t = CharacterTable::symmetric3();
    let m = multiplicity_space(&t, &s3, 2).unwrap();
    assert!(m.matches_characters);
    assert_eq!(m.dims(), vec![0, 1, 2]);

    let bare = CharacterTable::new(vec!["trivial".into(), "sign".into()], vec![vec![0], vec![1]], CharacterTable::cyclic(2).values().to_vec()).unwrap();
    assert_eq!(multiplicity_space(&bare, &rep, 1), Err(SwError::MatricesRequired("sign".into())));
}

#[test]
fn commutant() {
    let rep = z2_rep(6);
    let a = rep.action().backend().clone();
    let x = a.variable(0);
    let r = check_commutant(&rep, &[x.mul(&x)], 3);
    assert!(r.passed && r.non_invariant_samples.is_empty());
    assert!(check_commutant(&rep, &[a.one()], 3).passed);
    let r = check_commutant(&rep, &[x.clone()], 0);
    assert!(!r.passed);
    assert_eq!(r.non_invariant_samples, vec!["x".to_string()]);
    assert!(check_commutant(&rep, &fixed_samples(&rep), 2).passed);
}

#[test]
fn reachability() {
    let rep = z2_rep(6);
    let t = CharacterTable::cyclic(2);
    let r = cyclic_reachability(&t, &rep, 1, &unit_vector(7, 1), 2, DEFAULT_MODE_BUDGET).unwrap();
    assert_eq!(r.reachable, span_of(7, &[1, 3, 5]));
    assert!(r.equals_isotype);
    let r = cyclic_reachability(&t, &rep, 0, &unit_vector(7, 0), 2, DEFAULT_MODE_BUDGET).unwrap();
    assert_eq!(r.reachable, span_of(7, &[0, 2, 4, 6]));
    let triv = trivial_rep(4);
    let r = cyclic_reachability(&CharacterTable::cyclic(1), &triv, 0, &unit_vector(5, 0), 1, DEFAULT_MODE_BUDGET).unwrap();
    assert_eq!(r.reachable, Subspace::full(5));
    assert_eq!(
        cyclic_reachability(&t, &rep, 1, &unit_vector(7, 1), 2, 3),
        Err(SwError::BudgetExceeded { budget: 3 })
    );
    assert_eq!(cyclic_reachability(&t, &rep, 1, &vec![Scalar::zero(); 7], 2, 10), Err(SwError::ZeroSeed));
}

#[test]
fn distinguishing() {
    let rep = z2_rep(4);
    let t = CharacterTable::cyclic(2);
    let d = decompose(&t, &rep).unwrap();
    assert_eq!(distinguish_isotypes(&t, &rep, &d, 0, 1, 2).unwrap().verdict, DistinguishedBy::DegreewiseDims);
    assert_eq!(distinguish_isotypes(&t, &rep, &d, 1, 1, 2).unwrap().verdict, DistinguishedBy::Inconclusive);

    let rep3 = FinGroupRep::from_action(GroupTable::cyclic(3), corpus::cyclic_on_euler(3, 6)).unwrap();
    let t3 = CharacterTable::cyclic(3);
    let d = decompose(&t3, &rep3).unwrap();
    let r = distinguish_isotypes(&t3, &rep3, &d, 1, 2, 1).unwrap();
    assert_eq!(r.verdict, DistinguishedBy::ModeFingerprint);
}
