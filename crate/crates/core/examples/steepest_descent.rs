//! Steepest descent on a matching dual, with unit steps and with long steps.

use lconvex_warmstart::descent::{steepest_descent, DescentOptions};
use lconvex_warmstart::matching::{Edge, MatchingInstance};
use lconvex_warmstart::oracle::brute_force_matching;

pub fn main() -> lconvex_warmstart::Result<()> {
    let edges = vec![
        Edge { left: 0, right: 0, weight: 4 },
        Edge { left: 0, right: 1, weight: 1 },
        Edge { left: 1, right: 0, weight: 2 },
        Edge { left: 1, right: 1, weight: 3 },
        Edge { left: 2, right: 1, weight: 5 },
        Edge { left: 2, right: 2, weight: 2 },
    ];
    let inst = MatchingInstance::new(3, edges)?;
    let start = inst.trivially_feasible_dual();
    println!("start {start:?}, dual value {:?}", inst.dual_value(&start));

    for (name, opts) in [("unit", DescentOptions::unit_step()), ("long", DescentOptions::default())] {
        let result = steepest_descent(&inst, &start, &opts)?;
        println!(
            "{name} steps: optimum {} at {:?} after {} iterations",
            result.value, result.point, result.trace.iterations
        );
        for step in &result.trace.steps {
            println!("  direction {:?} slope {} length {}", step.direction, step.slope, step.step_length);
        }
        let m = inst.extract_primal(&result.point)?;
        println!("  matching {:?}, weight {:?}", m.pairs, inst.matching_weight(&m));
    }

    let (m, w) = brute_force_matching(&inst)?;
    println!("enumeration agrees: {:?} of weight {w}", m.pairs);
    Ok(())
}
