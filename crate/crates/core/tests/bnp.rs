use biobab::bnp::master::Master;
use biobab::bnp::oracle::{full_route_lp, route_enumeration_front};
use biobab::bnp::{run_biobab_bitoptw, BitoptwInstance};
use biobab::engine::EngineConfig;

fn instance(k: u64) -> BitoptwInstance {
    BitoptwInstance::generate(5 + (k % 4) as usize, 1 + (k % 2) as usize, 300 + k).unwrap()
}

#[test]
fn column_generation_front_matches_route_enumeration() {
    for k in 0..10 {
        let inst = instance(k);
        let exact = route_enumeration_front(&inst).unwrap();
        let out = run_biobab_bitoptw(&inst, &EngineConfig::default()).unwrap();
        assert!(out.complete);
        assert_eq!(out.front.points(), exact.points(), "instance {k}");
        for e in &out.front.entries {
            let cost: i64 = e.solution.iter().map(|r| {
                let mut full = vec![0];
                full.extend(r);
                full.push(inst.end());
                inst.route_cost(&full)
            }).sum::<i64>()
                + (inst.fleet - e.solution.len()) as i64 * inst.route_cost(&[0, inst.end()]);
            assert_eq!(cost, e.f1, "instance {k}: route set {:?}", e.solution);
        }
    }
}

#[test]
fn root_master_value_matches_the_full_route_relaxation() {
    for k in 0..10 {
        let inst = instance(k);
        let mut master = Master::new(&inst).unwrap();
        for (w1, w2) in [(1.0, 0.0), (0.0, 1.0), (1.0, 7.0), (3.0, 40.0)] {
            let sol = master.solve(w1, w2).unwrap().expect("root master is feasible");
            let (s0, s1) = (master.scale[0] as f64, master.scale[1] as f64);
            let full = full_route_lp(&inst, w1 / s0, w2 / s1).unwrap().unwrap();
            assert!((sol.value - full).abs() <= 1e-6 * full.abs().max(1.0), "instance {k} w=({w1},{w2}): {} vs {full}", sol.value);
        }
    }
}
