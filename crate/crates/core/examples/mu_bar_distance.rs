//! Distance from a real point to a box-and-difference system, its
//! subgradient, and the witness path in the auxiliary graph.

use lconvex_warmstart::oracle::brute_force_paths;
use lconvex_warmstart::polyhedral::{build_auxiliary_graph, evaluate, project_onto_system, InequalitySystem};

pub fn main() -> lconvex_warmstart::Result<()> {
    // 0 <= p1 <= 1, -1 <= p2 <= 0, p1 - p2 <= 2
    let mut sys = InequalitySystem::new(2);
    sys.set_lower(0, Some(0));
    sys.set_upper(0, Some(1));
    sys.set_lower(1, Some(-1));
    sys.set_upper(1, Some(0));
    sys.add_difference(1, 0, 2);

    let p_hat = [2.0, -2.0];
    let eval = evaluate(&sys, &p_hat, None)?;
    println!("distance {} subgradient {:?} via {}", eval.value, eval.subgradient, eval.path);

    let with_witness = evaluate(&sys, &p_hat, Some(&[1.0, -1.0]))?;
    println!("with a witness point: distance {} via {}", with_witness.value, with_witness.path);

    let graph = build_auxiliary_graph(&sys, &p_hat)?;
    let all = brute_force_paths(&graph)?;
    println!("all shortest paths (weight {}):", all.weight);
    for path in &all.paths {
        let names: Vec<String> = path.iter().map(|&v| graph.label(v).to_string()).collect();
        println!("  {}", names.join(" -> "));
    }

    let proj = project_onto_system(&sys, &p_hat, None)?;
    println!("closest point {:?} at distance {}", proj.point, proj.distance);
    Ok(())
}
