use bigdeg_lab::{hl_finite, Budget};

// Alone in its own binary so the environment change cannot race other tests.
#[test]
fn environment_overrides_the_budget() {
    std::env::set_var(Budget::ENV, "2^3");
    let b = Budget::from_env().unwrap();
    assert_eq!(b, Budget(8));
    assert!(hl_finite(2, 2, 3, b).unwrap().is_inconclusive());
    std::env::set_var(Budget::ENV, "lots");
    assert!(Budget::from_env().is_err());
    std::env::remove_var(Budget::ENV);
    assert_eq!(Budget::from_env().unwrap(), Budget::default());
}
