//! Degree rows cross-checked by several methods.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::class::{ClassKind, ClassSpec};
use crate::degrees::tangent::devlin_degree;
use crate::error::{CoreError, Result};
use crate::limit::build_prefix;
use crate::similarity::generate::{enumerate_types_with, GenerationOptions};
use crate::similarity::scan::{
    enumerate_structures, realized_types_all_enumerations, realized_types_uc, scan_structure, AntichainFilter,
};
use crate::similarity::{Flavor, TypeCatalog};
use crate::structure::{FinStructure, StructureCode};

/// Largest linear-order target with a degree row.
pub const MAX_CHAIN: usize = 4;
/// Largest unrestricted target with a degree row.
pub const MAX_UNRESTRICTED: usize = 3;
/// Largest chain scanned over all enumerations.
pub const MAX_CHAIN_SCAN: usize = 3;
/// Cap on `n`-subsets examined by a `U_C` scan.
pub const UC_SCAN_SUBSETS: u128 = 200_000;
/// Cap on nodes of a `U_C` fragment (its relation table is quadratic).
pub const UC_SCAN_NODES: u128 = 2048;
/// Depth of the all-enumerations scan for triangle-free targets.
pub const G3_SCAN_DEPTH: usize = 5;
/// Depth of the reference-prefix scan for triangle-free targets.
pub const G3_PREFIX_DEPTH: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// `(2n-1)! c_{2n-1}`.
    Formula,
    /// Direct generation with witness search.
    Generation,
    /// Scan over every enumerated structure of a given size.
    Scan,
    /// Scan of `k^{<=d}` with Sauer's relations.
    UcScan,
    /// Scan of the reference prefix.
    PrefixScan,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Formula => "formula",
            Method::Generation => "generation",
            Method::Scan => "scan",
            Method::UcScan => "uc-scan",
            Method::PrefixScan => "prefix-scan",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MethodValue {
    pub method: Method,
    pub value: u64,
    /// Depth or structure size the method used.
    pub depth: Option<usize>,
}

impl fmt::Display for MethodValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.depth {
            Some(d) => write!(f, "{}@{}={}", self.method, d, self.value),
            None => write!(f, "{}={}", self.method, self.value),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub spec: String,
    pub target: StructureCode,
    pub size: usize,
    /// `None` when the row is unsupported or the methods disagree.
    pub degree: Option<u64>,
    pub methods: Vec<MethodValue>,
    pub flags: Vec<String>,
}

impl DegreeRow {
    fn unsupported(spec: &ClassSpec, target: StructureCode, size: usize, why: &str) -> Self {
        DegreeRow {
            spec: spec.name().to_string(),
            target,
            size,
            degree: None,
            methods: Vec::new(),
            flags: vec![format!("unsupported: {why}")],
        }
    }

    pub fn is_flagged(&self) -> bool {
        !self.flags.is_empty()
    }

    pub fn is_unsupported(&self) -> bool {
        self.flags.iter().any(|f| f.starts_with("unsupported"))
    }

    pub fn is_inconclusive(&self) -> bool {
        self.flags.iter().any(|f| f.starts_with("inconclusive"))
    }

    /// Largest depth any method used.
    pub fn depth(&self) -> Option<usize> {
        self.methods.iter().filter_map(|m| m.depth).max()
    }

    pub fn value(&self, method: Method) -> Option<u64> {
        self.methods.iter().find(|m| m.method == method).map(|m| m.value)
    }

    fn settle(mut self) -> Self {
        let values: Vec<u64> = self.methods.iter().map(|m| m.value).sorted().dedup().collect();
        if values.len() == 1 && !self.is_inconclusive() {
            self.degree = Some(values[0]);
        } else if values.len() > 1 {
            self.flags.push("disagreement".into());
        }
        self
    }

    /// `spec,target,degree,methods,depth,flags`.
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.spec,
            csv_field(self.target.as_str()),
            self.degree.map_or("-".into(), |d| d.to_string()),
            self.methods.iter().join(";"),
            self.depth().map_or("-".into(), |d| d.to_string()),
            self.flags.join(";"),
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') {
        format!("\"{s}\"")
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DegreeTable {
    pub rows: Vec<DegreeRow>,
}

impl DegreeTable {
    pub const CSV_HEADER: &'static str = "spec,target,degree,methods,depth,flags";

    pub fn to_csv(&self) -> String {
        let mut out = format!("{}\n", Self::CSV_HEADER);
        for r in &self.rows {
            out.push_str(&r.csv());
            out.push('\n');
        }
        out
    }

    pub fn any_flagged(&self) -> bool {
        self.rows.iter().any(DegreeRow::is_flagged)
    }
}

/// Whether the class is `Forb({K_3})` on graphs.
pub fn is_triangle_free(spec: &ClassSpec) -> bool {
    match spec.kind() {
        ClassKind::Forb { forbidden } => {
            let k3 = FinStructure::graph(3, &[(0, 1), (1, 2), (0, 2)]);
            *spec.signature() == *k3.signature()
                && forbidden.len() == 1
                && forbidden[0].size() == 3
                && crate::structure::is_isomorphic(&forbidden[0], &k3)
        }
        _ => false,
    }
}

fn generation(spec: &ClassSpec, target: &FinStructure, opts: &GenerationOptions, row: &mut DegreeRow) -> Result<()> {
    let cat = enumerate_types_with(spec, target, opts)?;
    if cat.inconclusive() > 0 {
        row.flags.push(format!("inconclusive: {} unwitnessed types", cat.inconclusive()));
    }
    row.methods.push(MethodValue {
        method: Method::Generation,
        value: cat.witnessed() as u64,
        depth: Some(opts.max_size_factor * target.size()),
    });
    Ok(())
}

fn count_for(cat: &TypeCatalog, code: &StructureCode) -> u64 {
    cat.counts_by_structure().get(code).copied().unwrap_or(0) as u64
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Deepest `U_C` scan with at least `2n - 1` levels, at most [`UC_SCAN_NODES`] nodes and at most
/// [`UC_SCAN_SUBSETS`] subsets.
pub fn uc_scan_depth(k: usize, n: usize) -> Option<usize> {
    let nodes = |d: usize| (0..=d as u32).map(|l| (k as u128).pow(l)).sum::<u128>();
    let ok = |d: usize| nodes(d) <= UC_SCAN_NODES && binomial(nodes(d), n as u128) <= UC_SCAN_SUBSETS;
    let start = (2 * n).saturating_sub(1);
    if !ok(start) {
        return None;
    }
    (start..).take_while(|&d| ok(d)).last()
}

/// Why a (class, target size) pair has no degree row, if it is unsupported.
fn unsupported_reason(spec: &ClassSpec, target: &FinStructure) -> Option<&'static str> {
    let n = target.size();
    if n == 0 {
        return Some("empty target");
    }
    match spec.kind() {
        ClassKind::LinearOrder => (n > MAX_CHAIN).then_some("chains above 4"),
        ClassKind::Unrestricted { .. } => (n > MAX_UNRESTRICTED).then_some("unrestricted targets above 3"),
        ClassKind::Forb { .. } => {
            if !is_triangle_free(spec) {
                return Some("forbidden classes other than triangle-free graphs");
            }
            let edge = FinStructure::graph(2, &[(0, 1)]);
            (n > 2 || (n == 2 && !crate::structure::is_isomorphic(target, &edge)))
                .then_some("triangle-free targets other than vertex and edge")
        }
    }
}

/// Scans shared by all targets of one size.
#[derive(Clone, Debug, Default)]
struct SharedScans {
    scans: Vec<(Method, usize, TypeCatalog)>,
}

impl SharedScans {
    fn compute(spec: &ClassSpec, n: usize) -> Result<Self> {
        let mut scans = Vec::new();
        match spec.kind() {
            ClassKind::LinearOrder => {
                if n <= MAX_CHAIN_SCAN {
                    let d = 2 * n - 1;
                    let cat = realized_types_all_enumerations(spec, n, d, Flavor::Structural, AntichainFilter::None);
                    scans.push((Method::Scan, d, cat));
                }
            }
            ClassKind::Unrestricted { constraints } => {
                let d = 2 * n - 1;
                let cat = realized_types_all_enumerations(spec, n, d, Flavor::Structural, AntichainFilter::None);
                scans.push((Method::Scan, d, cat));
                if let Some(ud) = uc_scan_depth(constraints.len(), n) {
                    scans.push((Method::UcScan, ud, realized_types_uc(spec, n, ud)?));
                }
            }
            ClassKind::Forb { .. } => {
                let filter = AntichainFilter::G3;
                let cat = realized_types_all_enumerations(spec, n, G3_SCAN_DEPTH, Flavor::Structural, filter);
                scans.push((Method::Scan, G3_SCAN_DEPTH, cat));
                let prefix = build_prefix(spec, G3_PREFIX_DEPTH)?;
                let cat = scan_structure(spec, prefix.structure(), n, Flavor::Structural, filter);
                scans.push((Method::PrefixScan, G3_PREFIX_DEPTH, cat));
            }
        }
        Ok(SharedScans { scans })
    }
}

fn row_with(spec: &ClassSpec, target: &FinStructure, shared: &SharedScans) -> Result<DegreeRow> {
    let n = target.size();
    let code = target.canonical_code()?;
    if let Some(why) = unsupported_reason(spec, target) {
        return Ok(DegreeRow::unsupported(spec, code, n, why));
    }
    let mut row = DegreeRow {
        spec: spec.name().to_string(),
        target: code.clone(),
        size: n,
        degree: None,
        methods: Vec::new(),
        flags: Vec::new(),
    };
    let mut opts = GenerationOptions::default();
    match spec.kind() {
        ClassKind::LinearOrder => {
            let f = devlin_degree(n)?;
            let f = u64::try_from(f).map_err(|_| CoreError::Internal("degree overflow".into()))?;
            row.methods.push(MethodValue { method: Method::Formula, value: f, depth: None });
        }
        ClassKind::Forb { .. } => opts.filter = AntichainFilter::G3,
        ClassKind::Unrestricted { .. } => {}
    }
    generation(spec, target, &opts, &mut row)?;
    for (method, depth, cat) in &shared.scans {
        row.methods.push(MethodValue { method: *method, value: count_for(cat, &code), depth: Some(*depth) });
    }
    Ok(row.settle())
}

/// Degree of `target` in the class, with every applicable method.
///
/// Unsupported pairs give a row flagged `unsupported` and no degree.
pub fn big_ramsey_degree(spec: &ClassSpec, target: &FinStructure) -> Result<DegreeRow> {
    if !spec.contains(target)? {
        return Err(CoreError::Domain(format!("target is not in {}", spec.name())));
    }
    let shared = match unsupported_reason(spec, target) {
        Some(_) => SharedScans::default(),
        None => SharedScans::compute(spec, target.size())?,
    };
    row_with(spec, target, &shared)
}

/// Isomorphism-class representatives of the class of the given size, by structure code.
pub fn class_members(spec: &ClassSpec, size: usize) -> Result<Vec<FinStructure>> {
    let mut reps: Vec<(StructureCode, FinStructure)> = Vec::new();
    for s in enumerate_structures(spec, size) {
        let c = s.canonical()?;
        let code = c.canonical_code()?;
        if let Err(pos) = reps.binary_search_by(|(k, _)| k.cmp(&code)) {
            reps.insert(pos, (code, c));
        }
    }
    Ok(reps.into_iter().map(|(_, s)| s).collect())
}

/// Rows for every isomorphism class of size `1..=max_size` of each class, in class order and
/// then by size and structure code.
pub fn degree_table(specs: &[ClassSpec], max_size: usize) -> Result<DegreeTable> {
    let mut rows = Vec::new();
    for spec in specs {
        for size in 1..=max_size {
            let targets = class_members(spec, size)?;
            let shared = if targets.iter().all(|t| unsupported_reason(spec, t).is_some()) {
                SharedScans::default()
            } else {
                SharedScans::compute(spec, size)?
            };
            let batch = targets
                .par_iter()
                .map(|t| row_with(spec, t, &shared))
                .collect::<Result<Vec<_>>>()?;
            rows.extend(batch);
        }
    }
    Ok(DegreeTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uc_depths() {
        // 2^11 - 1 = 2047 nodes fit under the cap, 4095 do not
        assert_eq!(uc_scan_depth(2, 1), Some(10));
        assert_eq!(uc_scan_depth(4, 1), Some(5));
        assert_eq!(uc_scan_depth(2, 2), Some(8));
        assert_eq!(uc_scan_depth(2, 3), Some(5));
        assert_eq!(uc_scan_depth(4, 2), Some(4));
        assert_eq!(uc_scan_depth(4, 3), None);
    }

    #[test]
    fn csv_line() {
        let row = DegreeRow {
            spec: "x".into(),
            target: FinStructure::graph(1, &[]).canonical_code().unwrap(),
            size: 1,
            degree: Some(1),
            methods: vec![MethodValue { method: Method::Formula, value: 1, depth: None }],
            flags: Vec::new(),
        }
        .settle();
        assert!(row.csv().starts_with("x,"));
        assert!(row.csv().ends_with(",1,formula=1,-,"));
    }
}
