use biobab::engine::{EngineConfig, SearchStats};
use biobab::mip::SolveMode;
use biobab::model::run_biobab_matrix;
use biobab::problems::{BinaryProgram, SetCoveringInstance, SsuflpInstance, UboflpInstance};

fn config() -> EngineConfig {
    EngineConfig::default()
}

#[test]
fn tiny_uboflp_both_bounding_modes() {
    let model = UboflpInstance::tiny().build().unwrap();
    for mode in [SolveMode::Lp, SolveMode::Mip] {
        let out = run_biobab_matrix(&model, mode, &config()).unwrap();
        assert!(out.complete);
        assert_eq!(out.front.points(), vec![(3, 6), (4, 7), (7, 11)], "{mode:?}");
    }
}

#[test]
fn empty_feasible_set_gives_one_node() {
    let inst = UboflpInstance {
        opening_cost: vec![],
        weight: vec![2, 3],
        coverage: vec![],
    };
    let out = run_biobab_matrix(&inst.build().unwrap(), SolveMode::Lp, &config()).unwrap();
    assert!(out.front.is_empty());
    assert_eq!(out.stats.node_count, 1);
}

#[test]
fn random_binary_programs_match_enumeration() {
    for seed in 0..40 {
        let prog = BinaryProgram::generate(8, 4, 20, seed).unwrap();
        let model = prog.build().unwrap();
        let expect = prog.brute_force().unwrap().points();
        for mode in [SolveMode::Lp, SolveMode::Mip] {
            let got = run_biobab_matrix(&model, mode, &config()).unwrap().front.points();
            assert_eq!(got, expect, "seed {seed} {mode:?}");
        }
    }
}

#[test]
fn toggles_do_not_change_the_front() {
    let inst = SsuflpInstance::generate(4, 8, 11).unwrap();
    let model = inst.build().unwrap();
    let expect = inst.brute_force().unwrap().points();
    for cfg in EngineConfig::all_toggle_combinations() {
        let out = run_biobab_matrix(&model, SolveMode::Lp, &cfg).unwrap();
        assert_eq!(out.front.points(), expect, "{cfg:?}");
    }
}

#[test]
fn set_covering_matches_enumeration() {
    let inst = SetCoveringInstance::generate(5, 10, 0.3, 2).unwrap();
    let expect = inst.brute_force().unwrap().points();
    let out = run_biobab_matrix(&inst.build().unwrap(), SolveMode::Lp, &config()).unwrap();
    assert_eq!(out.front.points(), expect);
}

#[test]
fn osb_statistics_are_consistent() {
    let inst = UboflpInstance::generate(5, 10, 35.0, 3).unwrap();
    let model = inst.build().unwrap();
    let on = run_biobab_matrix(&model, SolveMode::Lp, &config()).unwrap();
    let off = run_biobab_matrix(&model, SolveMode::Lp, &EngineConfig { osb: false, ..config() }).unwrap();
    assert_eq!(on.front.points(), off.front.points());
    let SearchStats { osb_branches_root, osb_branches_other, .. } = off.stats;
    assert_eq!(osb_branches_root + osb_branches_other, 0);
}
