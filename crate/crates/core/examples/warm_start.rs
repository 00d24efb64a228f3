//! Turning a real-valued prediction into a feasible integral starting point
//! and comparing iteration counts against a cold start.

use lconvex_warmstart::descent::{steepest_descent, DescentOptions};
use lconvex_warmstart::harness::generate_instance;
use lconvex_warmstart::lattice::{linf_pm_dist, round_half_down};
use lconvex_warmstart::polyhedral::mu_bar;

pub fn main() -> lconvex_warmstart::Result<()> {
    let inst = generate_instance(10, 2, 7)?;
    let opts = DescentOptions::unit_step();

    let cold = inst.feasibility_projection(&[0.0; 10])?;
    let cold_start = round_half_down(&cold.point);
    let reference = steepest_descent(&inst, &cold_start, &opts)?;
    println!("cold start: {} iterations", reference.trace.iterations);

    // a prediction near a known optimum, perturbed by noise
    let p_star = reference.point.clone();
    let optimal = inst.argmin_system_matching(&inst.extract_primal(&p_star)?)?;
    for noise in [0.0, 0.7, 2.3, 6.1] {
        let p_hat: Vec<f64> = p_star
            .iter()
            .enumerate()
            .map(|(i, &x)| x as f64 + if i % 2 == 0 { noise } else { -noise })
            .collect();
        let proj = inst.feasibility_projection(&p_hat)?;
        let start = round_half_down(&proj.point);
        let result = steepest_descent(&inst, &start, &opts)?;
        let distance = mu_bar(&optimal, &p_hat, None)?;
        println!(
            "noise {noise:>4}: projection moved {:.2}, distance to optima {distance:.2}, {} iterations (bound {:.0})",
            linf_pm_dist(&proj.point, &p_hat),
            result.trace.iterations,
            2.0 * distance + 2.0
        );
        assert_eq!(result.value, reference.value);
    }
    Ok(())
}
