use std::path::Path;

use anyhow::{bail, Context, Result};
use bigdeg_core::degrees::table::class_members;
use bigdeg_core::{build_coding_tree, build_prefix, degree_table, enumerate_types, ClassSpec, TypeCatalog};
use bigdeg_lab::{hl_finite, milliken_finite_with, ramsey_check, Budget, WitnessReport};
use clap::ValueEnum;
use itertools::Itertools;
use serde_json::{json, Value};

use crate::config::Resolved;
use crate::output::{field, render, Emission};
use crate::Exit;

pub fn degrees(r: Resolved, spec: &ClassSpec, max_size: usize) -> Result<(String, Exit)> {
    let table = degree_table(std::slice::from_ref(spec), max_size)?;
    let exit = if table.any_flagged() { Exit::Flagged } else { Exit::Ok };
    let text = table
        .rows
        .iter()
        .map(|row| {
            let degree = row.degree.map_or("-".to_string(), |d| d.to_string());
            let methods = row.methods.iter().join(" ");
            let flags = if row.flags.is_empty() { String::new() } else { format!(" [{}]", row.flags.join("; ")) };
            format!("{} {} T={} {}{}", row.spec, row.target, degree, methods, flags)
        })
        .collect();
    let csv = table.rows.iter().map(|row| row.csv()).collect();
    let e = Emission {
        columns: bigdeg_core::DegreeTable::CSV_HEADER,
        text,
        csv,
        json: serde_json::to_value(&table.rows)?,
    };
    Ok((render(&r, &e), exit))
}

/// Every similarity type of every structure of size `n` in the class.
pub fn catalog(spec: &ClassSpec, n: usize) -> Result<TypeCatalog> {
    let mut all = TypeCatalog::new();
    for target in class_members(spec, n)? {
        all = all.merge(enumerate_types(spec, &target)?);
    }
    Ok(all)
}

pub fn types(r: Resolved, spec: &ClassSpec, n: usize) -> Result<(String, Exit)> {
    let cat = catalog(spec, n)?;
    let exit = if cat.inconclusive() > 0 { Exit::Flagged } else { Exit::Ok };
    let witness = |w: &Option<Vec<String>>| match w {
        Some(w) => w.iter().map(|s| if s.is_empty() { "()" } else { s.as_str() }).join(" "),
        None => "inconclusive".into(),
    };
    let e = Emission {
        columns: "encoding,structure,witness",
        text: cat.export().lines().map(str::to_string).collect(),
        csv: cat
            .entries()
            .map(|c| format!("{},{},{}", field(&c.encoding), field(c.structure.as_str()), field(&witness(&c.witness))))
            .collect(),
        json: Value::Array(
            cat.entries()
                .map(|c| json!({"encoding": c.encoding, "structure": c.structure.as_str(), "witness": c.witness}))
                .collect(),
        ),
    };
    Ok((render(&r, &e), exit))
}

pub fn tree(r: Resolved, spec: &ClassSpec, depth: usize) -> Result<(String, Exit)> {
    let prefix = build_prefix(spec, depth + 1)?;
    let t = build_coding_tree(&prefix, depth)?;
    let dump = t.dump();
    let lines: Vec<String> = dump.lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect();
    let e = Emission {
        columns: "level,parent,literals,coding",
        text: dump.lines().map(str::to_string).collect(),
        csv: lines.iter().map(|l| l.split(' ').join(",")).collect(),
        json: Value::Array(
            lines
                .iter()
                .map(|l| {
                    let f: Vec<&str> = l.split(' ').collect();
                    json!({"level": f[0], "parent": f[1], "literals": f[2], "coding": f[3]})
                })
                .collect(),
        ),
    };
    Ok((render(&r, &e), Exit::Ok))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Ramsey,
    Hl,
    Milliken,
}

/// `key=value` pairs separated by commas or semicolons.
pub fn parse_params(s: &str) -> Result<Vec<(String, usize)>> {
    s.split([',', ';'])
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (k, v) = p.split_once('=').with_context(|| format!("parameter `{p}` is not key=value"))?;
            let v = v.trim().parse::<usize>().with_context(|| format!("parameter `{p}` is not a number"))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn take(params: &[(String, usize)], allowed: &[&str], key: &str) -> Result<Option<usize>> {
    if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        bail!("unknown parameter `{k}` (expected {})", allowed.join(", "));
    }
    Ok(params.iter().find(|(k, _)| k == key).map(|(_, v)| *v))
}

fn need(params: &[(String, usize)], allowed: &[&str], key: &str) -> Result<usize> {
    take(params, allowed, key)?.with_context(|| format!("missing parameter `{key}`"))
}

pub fn run_lab(theorem: Theorem, params: &[(String, usize)], budget: Budget) -> Result<WitnessReport> {
    let p = params;
    Ok(match theorem {
        Theorem::Ramsey => {
            let keys = ["n", "k", "r", "target"];
            ramsey_check(need(p, &keys, "n")?, need(p, &keys, "k")?, need(p, &keys, "r")?, need(p, &keys, "target")?, budget)?
        }
        Theorem::Hl => {
            let keys = ["m", "r", "n"];
            hl_finite(need(p, &keys, "m")?, need(p, &keys, "r")?, need(p, &keys, "n")?, budget)?
        }
        Theorem::Milliken => {
            let keys = ["k", "r", "n", "height"];
            let k = need(p, &keys, "k")?;
            let height = take(p, &keys, "height")?.unwrap_or(k + 1);
            milliken_finite_with(k, need(p, &keys, "r")?, need(p, &keys, "n")?, height, budget)?
        }
    })
}

pub fn lab(r: Resolved, report: &WitnessReport, emit: Option<&Path>) -> Result<(String, Exit)> {
    let exit = if report.is_inconclusive() { Exit::Inconclusive } else { Exit::Ok };
    if let Some(path) = emit {
        let body = match report.counterexample() {
            Some(c) => serde_json::to_string_pretty(c)? + "\n",
            None => "null\n".to_string(),
        };
        std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    let reverified = report.reverified.map_or("-".to_string(), |b| b.to_string());
    let mut text = vec![
        format!("theorem {}", report.theorem),
        format!("params {}", report.params),
        format!("verdict {}", report.verdict),
        format!(
            "items {} targets {} nodes {} chunks {} budget {}",
            report.stats.items, report.stats.targets, report.stats.nodes, report.stats.chunks, report.stats.budget
        ),
        format!("reverified {reverified}"),
    ];
    if let Some(c) = report.counterexample() {
        text.extend(c.items.iter().map(|i| format!("color {} {}", i.item, i.color)));
    }
    let e = Emission {
        columns: WitnessReport::CSV_HEADER,
        text,
        csv: vec![report.csv_row()],
        json: serde_json::to_value(report)?,
    };
    Ok((render(&r, &e), exit))
}
