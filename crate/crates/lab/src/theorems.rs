use std::ops::RangeInclusive;

use crate::report::{Coloring, SearchStats, Verdict, WitnessReport};
use crate::search::{Budget, Outcome};
use crate::space::{ColoringSpace, Ground, Target};
use crate::verify;
use crate::{LabError, Result};

/// Largest item or target table the lab will build.
const TABLE_LIMIT: u64 = 1 << 26;

fn run(
    theorem: &str,
    params: String,
    space: ColoringSpace,
    target: Target,
    budget: Budget,
    recheck: impl Fn(&Coloring) -> bool,
) -> Result<WitnessReport> {
    let Some(inst) = space.instance(&target, TABLE_LIMIT as usize)? else {
        return Ok(WitnessReport {
            theorem: theorem.into(),
            params,
            space,
            verdict: Verdict::Inconclusive,
            stats: SearchStats { items: 0, targets: 0, nodes: 0, chunks: 0, budget: budget.0 },
            reverified: None,
        });
    };
    let result = inst.search(budget);
    let (verdict, reverified) = match result.outcome {
        Outcome::Exhausted => (Verdict::AllColoringsAdmitWitness, None),
        Outcome::OutOfBudget => (Verdict::Inconclusive, None),
        Outcome::Found(colors) => {
            let c = Coloring::new(&inst.items, &colors);
            let ok = inst.avoids_all(&colors) && recheck(&c);
            (Verdict::CounterexampleColoring(c), Some(ok))
        }
    };
    Ok(WitnessReport {
        theorem: theorem.into(),
        params,
        space,
        verdict,
        stats: SearchStats {
            items: inst.items.len(),
            targets: inst.targets.len(),
            nodes: result.nodes,
            chunks: result.chunks,
            budget: budget.0,
        },
        reverified,
    })
}

/// Does every `r`-coloring of the `k`-subsets of `{0, .., n-1}` have a monochromatic
/// `target`-subset?
pub fn ramsey_check(n: usize, k: usize, r: usize, target: usize, budget: Budget) -> Result<WitnessReport> {
    if target > n {
        return Err(LabError::Precondition(format!("target {target} exceeds n = {n}")));
    }
    let space = ColoringSpace::new(Ground::Subsets { n, k }, r)?;
    run("ramsey", format!("n={n};k={k};r={r};target={target}"), space, Target::Subset(target), budget, |c| {
        verify::ramsey_counterexample_holds(n, k, target, c)
    })
}

/// Does every `r`-coloring of the nodes of `2^{≤n}` have a monochromatic strong subtree with `m`
/// levels?
pub fn hl_finite(m: usize, r: usize, n: usize, budget: Budget) -> Result<WitnessReport> {
    if m == 0 {
        return Err(LabError::Precondition("m must be at least 1".into()));
    }
    let space = ColoringSpace::new(Ground::Nodes { depth: n }, r)?;
    run("hl", format!("m={m};r={r};n={n}"), space, Target::Subtree(m), budget, |c| {
        verify::hl_counterexample_holds(m, n, c)
    })
}

/// Runs [`hl_finite`] over `depths` and returns the least depth with a positive verdict, if any.
pub fn hl_threshold(
    m: usize,
    r: usize,
    depths: RangeInclusive<usize>,
    budget: Budget,
) -> Result<(Option<usize>, Vec<WitnessReport>)> {
    let reports = depths.clone().map(|n| hl_finite(m, r, n, budget)).collect::<Result<Vec<_>>>()?;
    let first = depths.zip(&reports).find(|(_, rep)| rep.is_positive()).map(|(n, _)| n);
    Ok((first, reports))
}

/// Milliken with the target one level taller than the colored subtrees.
pub fn milliken_finite(k_levels: usize, r: usize, n: usize, budget: Budget) -> Result<WitnessReport> {
    milliken_finite_with(k_levels, r, n, k_levels + 1, budget)
}

/// Does every `r`-coloring of the `k_levels`-level strong subtrees of `2^{≤n}` leave some strong
/// subtree with `target_height` levels all of whose `k_levels`-level strong subtrees share a color?
pub fn milliken_finite_with(
    k_levels: usize,
    r: usize,
    n: usize,
    target_height: usize,
    budget: Budget,
) -> Result<WitnessReport> {
    if k_levels == 0 {
        return Err(LabError::Precondition("k must be at least 1".into()));
    }
    let space = ColoringSpace::new(Ground::StrongSubtrees { depth: n, height: k_levels }, r)?;
    let params = format!("k={k_levels};r={r};n={n};height={target_height}");
    run("milliken", params, space, Target::Subtree(target_height), budget, |c| {
        verify::milliken_counterexample_holds(k_levels, target_height, n, c)
    })
}
