use mws::construct::{
    algebraic, extend_dim_1, fano_732, geometric, lift, lift_chain, lift_length, minimal_exponent, optimal_k2,
    AlgebraicOptions, ConstructError,
};
use mws::{code_from_system, make_field, mws_via_characters, theta, ProjectiveSystem};
use num_bigint::BigUint;

fn assert_mws_both(sys: &ProjectiveSystem) {
    assert!(mws_via_characters(sys).mws);
    let code = code_from_system(sys).unwrap();
    assert!(code.is_mws().unwrap());
    assert_eq!(
        code.weight_set().unwrap().len() as u64,
        u64::try_from(theta(sys.q(), sys.k() as i64 - 1)).unwrap()
    );
}

#[test]
fn lift_chains_small_fields() {
    for (q, k) in [(2u64, 5usize), (3, 4), (4, 4), (5, 4)] {
        let f = make_field(q).unwrap();
        let chain = lift_chain(&f, k).unwrap();
        assert_eq!(chain.len(), k - 2);
        for pair in chain.windows(2) {
            let t = minimal_exponent(f.q(), pair[0].n());
            assert_eq!(pair[1].n(), &lift_length(f.q(), pair[0].k(), pair[0].n(), t));
            let bound = BigUint::from(q).pow(t + pair[0].k() as u32 + 1);
            assert!(pair[1].n() < &bound);
        }
        assert!(mws_via_characters(chain.last().unwrap()).mws);
    }
}

#[test]
fn lift_from_every_k2_system() {
    for q in [2u64, 3, 4, 5, 7] {
        let f = make_field(q).unwrap();
        let base = optimal_k2(&f).unwrap();
        let t = minimal_exponent(f.q(), base.n());
        let up = lift(&base, t).unwrap();
        assert_eq!(up.k(), 3);
        assert_mws_both(&up);
        // larger t also works
        assert!(mws_via_characters(&lift(&base, t + 1).unwrap()).mws);
    }
}

#[test]
fn binary_chain_from_fano() {
    let sys = fano_732().unwrap();
    let up = lift(&sys, 3).unwrap();
    assert_eq!(up.n(), &BigUint::from(7u32 + 8 + 16 + 32));
    assert_mws_both(&up);
}

#[test]
fn geometric_agrees_with_codewords() {
    for (q, k) in [(2u64, 3usize), (3, 2), (4, 2), (2, 4)] {
        assert_mws_both(&geometric(&make_field(q).unwrap(), k).unwrap());
    }
}

#[test]
fn algebraic_with_final_repetition() {
    let f = make_field(3).unwrap();
    let options = AlgebraicOptions {
        repeat_final: true,
        ..Default::default()
    };
    let run = algebraic(&f, 2, &options).unwrap();
    let last = run.states.last().unwrap();
    assert_eq!(last.dim, 2);
    let step = last.step.as_ref().unwrap();
    assert!(step.repeated.property_a().unwrap());
    assert!(extend_dim_1(&step.repeated).unwrap().is_mws().unwrap());
}

#[test]
fn injected_repetition_is_validated() {
    let f = make_field(3).unwrap();
    let mut options = AlgebraicOptions::default();
    // (1, 1) lies on the hyperplane with normal (1, -1)
    options
        .overrides
        .insert(2, mws::RepetitionVector::new(vec![1, 1]).unwrap());
    let err = algebraic(&f, 3, &options).unwrap_err();
    assert_eq!(err, ConstructError::InfeasibleRepetition(vec![1, 1]));
}

#[test]
fn algebraic_rejects_binary() {
    let f = make_field(2).unwrap();
    assert!(matches!(
        algebraic(&f, 2, &AlgebraicOptions::default()),
        Err(ConstructError::UnsupportedQ { q: 2, .. })
    ));
}
