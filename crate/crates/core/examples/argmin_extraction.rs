//! Describing the optimal duals of a small matching instance twice: from
//! complementary slackness, and from value queries alone.

use lconvex_warmstart::extract::{extract_argmin_system, BlackBoxOracle};
use lconvex_warmstart::matching::{Edge, MatchingInstance};
use lconvex_warmstart::oracle::{brute_force_matching, enumerate_system_points};

pub fn main() -> lconvex_warmstart::Result<()> {
    let e = |left, right, weight| Edge { left, right, weight };
    let inst = MatchingInstance::new(2, vec![e(0, 0, 2), e(0, 1, 1), e(1, 0, 1), e(1, 1, 2)])?;
    let (m_star, weight) = brute_force_matching(&inst)?;
    println!("optimal matching {:?} of weight {weight}", m_star.pairs);

    let slackness = inst.argmin_system_matching(&m_star)?;
    let c = inst.default_radius();
    let oracle = BlackBoxOracle::new(&inst, c, inst.domain_system())?;
    let extracted = extract_argmin_system(&oracle)?;
    println!(
        "value queries: minimum {} using {} restricted minimizations",
        extracted.min_value, extracted.minimizations
    );
    for (i, j) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
        println!(
            "  p{} - p{} <= {:?}",
            j + 1,
            i + 1,
            extracted.system.difference(i, j)
        );
    }

    let lo = vec![-2 * c; inst.n()];
    let hi = vec![2 * c; inst.n()];
    let a = enumerate_system_points(&slackness, &lo, &hi)?;
    let b = enumerate_system_points(&extracted.system, &lo, &hi)?;
    println!("{} optimal duals in the search box; systems agree: {}", a.len(), a == b);
    Ok(())
}
