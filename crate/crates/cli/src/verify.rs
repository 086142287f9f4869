//! Cross-checks run by `bigdeg verify`.

use anyhow::Result;
use bigdeg_core::similarity::{realized_types_all_enumerations, realized_types_in_depth, realized_types_uc};
use bigdeg_core::degrees::table::class_members;
use bigdeg_core::*;
use bigdeg_lab::{hl_threshold, ramsey_check, Budget};
use clap::ValueEnum;
use itertools::Itertools;
use num_rational::BigRational;
use serde_json::json;

use crate::commands::catalog;
use crate::output::{field, Emission};

/// Scans deeper than this are skipped by `--quick`.
pub const QUICK_DEPTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Replace the tangent coefficient c_5 by 1/7.
    PerturbC5,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub depth: Option<usize>,
    pub detail: String,
}

type Probe = Box<dyn Fn(&Ctx) -> Result<(bool, String)>>;

struct Ctx {
    series: ExactTangentSeries,
    seed: u64,
}

fn chain(n: usize) -> FinStructure {
    FinStructure::chain(&(0..n).collect::<Vec<_>>())
}

fn all_graphs(n: usize) -> Vec<FinStructure> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            FinStructure::graph(n, &edges)
        })
        .collect()
}

fn probes() -> Vec<(&'static str, Option<usize>, Probe)> {
    vec![
        (
            "tangent-integrality",
            None,
            Box::new(|c: &Ctx| Ok((integrality_holds(&c.series, 8), "(2n-1)! c_{2n-1} integral for n <= 8".into()))),
        ),
        (
            "chain-formula-vs-generation",
            None,
            Box::new(|c: &Ctx| {
                let lo = ClassSpec::linear_order();
                let mut parts = Vec::new();
                let mut ok = true;
                for n in 1..=4 {
                    let generated = enumerate_types(&lo, &chain(n))?.len();
                    match c.series.devlin(n) {
                        Ok(f) => {
                            ok &= f.to_string() == generated.to_string();
                            parts.push(format!("n={n}:{f}/{generated}"));
                        }
                        Err(e) => {
                            ok = false;
                            parts.push(format!("n={n}:error({e})"));
                        }
                    }
                }
                Ok((ok, parts.join(" ")))
            }),
        ),
        (
            "chain-scan-all-enumerations",
            Some(5),
            Box::new(|_| {
                let lo = ClassSpec::linear_order();
                let counts: Vec<usize> = (1..=3)
                    .map(|n| realized_types_all_enumerations(&lo, n, 2 * n - 1, Flavor::Structural, AntichainFilter::None).len())
                    .collect();
                Ok((counts == [1, 2, 16], format!("{counts:?}")))
            }),
        ),
        (
            "chain-scan-reference-prefix",
            Some(15),
            Box::new(|_| {
                let p = build_prefix(&ClassSpec::linear_order(), 16)?;
                let t = build_coding_tree(&p, 15)?;
                let n = realized_types_in_depth(&t, 3, 15, Flavor::Structural, AntichainFilter::None)?.len();
                Ok((n == 16, format!("{n} types of 3-chains among 16 coding nodes")))
            }),
        ),
        (
            "rado-edge",
            Some(8),
            Box::new(|_| {
                let rado = ClassSpec::rado();
                let edge = FinStructure::graph(2, &[(0, 1)]);
                let generated = enumerate_types(&rado, &edge)?.len();
                let scanned = realized_types_uc(&rado, 2, 8)?.restricted_to(&edge.canonical_code()?).len();
                Ok((generated == 2 && scanned == 2, format!("generation={generated} uc-scan@8={scanned}")))
            }),
        ),
        (
            "rado-types-size-2",
            Some(3),
            Box::new(|_| {
                let n = catalog(&ClassSpec::rado(), 2)?.len();
                Ok((n == 4, format!("{n} types")))
            }),
        ),
        (
            "indivisibility",
            None,
            Box::new(|_| {
                let mut parts = Vec::new();
                let mut ok = true;
                for spec in [ClassSpec::linear_order(), ClassSpec::rado()] {
                    let v = class_members(&spec, 1)?;
                    let n = enumerate_types(&spec, &v[0])?.len();
                    ok &= n == 1;
                    parts.push(format!("{}={n}", spec.name()));
                }
                Ok((ok, parts.join(" ")))
            }),
        ),
        (
            "triangle-free-vertex-and-edge",
            Some(degrees::table::G3_PREFIX_DEPTH),
            Box::new(|_| {
                let g3 = ClassSpec::triangle_free();
                let v = big_ramsey_degree(&g3, &FinStructure::graph(1, &[]))?;
                let e = big_ramsey_degree(&g3, &FinStructure::graph(2, &[(0, 1)]))?;
                let ok = v.degree == Some(1) && e.degree == Some(2);
                Ok((ok, format!("vertex={:?} edge={:?}", v.degree, e.degree)))
            }),
        ),
        (
            "universal-graph",
            Some(6),
            Box::new(|_| {
                let u = UcFragment::build(&ClassSpec::rado(), 6)?;
                let mut count = 0;
                for n in 1..=4 {
                    for g in all_graphs(n) {
                        if !embeds(&g, u.structure())? {
                            return Ok((false, format!("missing {g:?}")));
                        }
                        count += 1;
                    }
                }
                Ok((true, format!("{count} labelled graphs embed")))
            }),
        ),
        (
            "sierpinski-persistence",
            None,
            Box::new(|c: &Ctx| {
                let p = build_prefix(&ClassSpec::linear_order(), 200)?;
                let report = persistence_sample(&p, &sierpinski_coloring(&p)?, 20, 100, c.seed)?;
                Ok((report.all_trials_see(2), format!("100 trials of 20 points, seed {}", c.seed)))
            }),
        ),
        (
            "lab-ramsey",
            None,
            Box::new(|_| {
                let six = ramsey_check(6, 2, 2, 3, Budget::default())?;
                let five = ramsey_check(5, 2, 2, 3, Budget::default())?;
                let ok = six.is_positive() && five.counterexample().is_some() && five.reverified == Some(true);
                Ok((ok, format!("n=6 {} n=5 {}", six.verdict, five.verdict)))
            }),
        ),
        (
            "lab-halpern-lauchli",
            None,
            Box::new(|_| {
                let (least, reports) = hl_threshold(2, 2, 1..=4, Budget::default())?;
                // reports start at depth 1
                let below = least.and_then(|n| n.checked_sub(2)).and_then(|i| reports.get(i));
                let ok = least == Some(3) && below.is_some_and(|r| r.reverified == Some(true));
                Ok((ok, format!("least positive depth {least:?}")))
            }),
        ),
    ]
}

pub fn run(quick: bool, fault: Option<Fault>, seed: u64) -> Result<Vec<Check>> {
    let mut series = tangent_coefficients(8)?;
    if fault == Some(Fault::PerturbC5) {
        series = series.with_coefficient(5, BigRational::new(1.into(), 7.into()))?;
    }
    let ctx = Ctx { series, seed };
    let mut out = Vec::new();
    for (name, depth, probe) in probes() {
        if quick && depth.is_some_and(|d| d > QUICK_DEPTH) {
            out.push(Check { name, status: Status::Skip, depth, detail: format!("depth > {QUICK_DEPTH}") });
            continue;
        }
        let (status, detail) = match probe(&ctx) {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        out.push(Check { name, status, depth, detail });
    }
    Ok(out)
}

pub fn emission(checks: &[Check]) -> Emission {
    let status = |c: &Check| match c.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skip => "SKIP",
    };
    let depth = |c: &Check| c.depth.map_or("-".to_string(), |d| d.to_string());
    Emission {
        columns: "check,status,depth,detail",
        text: checks.iter().map(|c| format!("{} {} {}", status(c), c.name, c.detail)).collect(),
        csv: checks.iter().map(|c| format!("{},{},{},{}", c.name, status(c), depth(c), field(&c.detail))).collect(),
        json: checks
            .iter()
            .map(|c| json!({"check": c.name, "status": status(c), "depth": c.depth, "detail": c.detail}))
            .collect(),
    }
}
