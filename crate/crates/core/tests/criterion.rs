use biobab::criterion::{run_balanced_box, run_epsilon_bidirectional, run_epsilon_constraint, CriterionConfig, Direction};
use biobab::problems::{BinaryProgram, UboflpInstance};

#[test]
fn criterion_methods_match_enumeration() {
    let cfg = CriterionConfig::default();
    for seed in 0..40 {
        let prog = BinaryProgram::generate(8, 3, 15, 500 + seed).unwrap();
        let model = prog.build().unwrap();
        let expect = prog.brute_force().unwrap().points();
        let fronts = [
            run_epsilon_constraint(&model, Direction::Obj1First, &cfg).unwrap(),
            run_epsilon_constraint(&model, Direction::Obj2First, &cfg).unwrap(),
            run_epsilon_bidirectional(&model, &cfg).unwrap(),
            run_balanced_box(&model, &cfg).unwrap(),
        ];
        for (k, out) in fronts.iter().enumerate() {
            assert!(out.complete);
            assert_eq!(out.front.points(), expect, "seed {seed} method {k}");
        }
        for out in &fronts[..2] {
            assert_eq!(out.stats.iterations, expect.len() as u64 + 1, "seed {seed}");
        }
    }
}

#[test]
fn zero_time_limit_reports_an_incomplete_run() {
    let model = UboflpInstance::tiny().build().unwrap();
    let cfg = CriterionConfig {
        time_limit: Some(std::time::Duration::ZERO),
    };
    let out = run_balanced_box(&model, &cfg).unwrap();
    assert!(!out.complete);
}
