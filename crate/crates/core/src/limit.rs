//! Finite prefixes of enumerated Fraïssé limits, ages, and pair colorings.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::class::ClassSpec;
use crate::error::{CoreError, Result};
use crate::structure::{FinStructure, StructureCode};

/// A queue entry: a realizable 1-type over `K_stage`, the `rank`-th in literal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueueItem {
    pub stage: usize,
    pub rank: usize,
    pub literals: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleEntry {
    pub vertex: usize,
    /// Literals of `v_n` over `K_n`.
    pub realized: Vec<u8>,
    /// The queue entry `v_n` was scheduled for; `None` for supplied enumerations.
    pub source: Option<QueueItem>,
}

/// The first `N` vertices of an enumerated limit together with its schedule log.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedPrefix {
    spec: ClassSpec,
    structure: FinStructure,
    schedule: Vec<ScheduleEntry>,
}

/// Builds the reference prefix with the round-robin schedule.
///
/// Stage `m` enqueues every realizable 1-type over `K_m` in literal order. Vertex `v_n` takes the
/// head of the queue and realizes its least realizable extension to `K_n`.
pub fn build_prefix(spec: &ClassSpec, n: usize) -> Result<EnumeratedPrefix> {
    if n == 0 {
        return Err(CoreError::Domain("prefix size must be at least 1".into()));
    }
    if spec.vertex().is_none() {
        return Err(CoreError::Domain(format!("class {} has no one-element structure", spec.name())));
    }
    let mut structure = FinStructure::empty(spec.signature().clone(), 0);
    let mut schedule = Vec::with_capacity(n);
    let mut stage = 0;
    let mut rank = 0;
    let mut block = spec.realizable_types(&structure, 0);
    for v in 0..n {
        let item = block[rank].clone();
        let realized = spec.least_extension(&structure, &item, v).ok_or_else(|| {
            CoreError::Internal(format!("queued type at stage {stage} has no extension to stage {v}"))
        })?;
        structure = structure.extended(&realized);
        schedule.push(ScheduleEntry {
            vertex: v,
            realized,
            source: Some(QueueItem { stage, rank, literals: item }),
        });
        rank += 1;
        if rank == block.len() {
            stage += 1;
            rank = 0;
            block = spec.realizable_types(&structure, stage);
        }
    }
    Ok(EnumeratedPrefix { spec: spec.clone(), structure, schedule })
}

impl EnumeratedPrefix {
    /// Wraps a supplied enumeration; every initial segment must lie in the class.
    pub fn from_structure(spec: &ClassSpec, structure: FinStructure) -> Result<Self> {
        if structure.size() == 0 {
            return Err(CoreError::Domain("prefix size must be at least 1".into()));
        }
        let mut schedule = Vec::with_capacity(structure.size());
        for v in 0..structure.size() {
            let realized: Vec<u8> = (0..v).map(|i| structure.pattern(i, v)).collect();
            if !spec.extension_ok(&structure, &realized)? {
                return Err(CoreError::Domain(format!(
                    "initial segment K_{} is not in class {}",
                    v + 1,
                    spec.name()
                )));
            }
            schedule.push(ScheduleEntry { vertex: v, realized, source: None });
        }
        Ok(EnumeratedPrefix { spec: spec.clone(), structure, schedule })
    }

    pub(crate) fn from_parts(
        spec: ClassSpec,
        structure: FinStructure,
        schedule: Vec<ScheduleEntry>,
    ) -> Result<Self> {
        let p = EnumeratedPrefix::from_structure(&spec, structure)?;
        if schedule.len() != p.schedule.len()
            || schedule.iter().zip(&p.schedule).any(|(a, b)| a.vertex != b.vertex || a.realized != b.realized)
        {
            return Err(CoreError::Document("schedule log disagrees with the structure".into()));
        }
        Ok(EnumeratedPrefix { schedule, ..p })
    }

    pub fn spec(&self) -> &ClassSpec {
        &self.spec
    }

    pub fn structure(&self) -> &FinStructure {
        &self.structure
    }

    pub fn size(&self) -> usize {
        self.structure.size()
    }

    pub fn schedule(&self) -> &[ScheduleEntry] {
        &self.schedule
    }

    /// Literals of `v_n` over `K_n`.
    pub fn coding_type(&self, n: usize) -> &[u8] {
        &self.schedule[n].realized
    }

    /// The prefix restricted to its first `n` vertices.
    pub fn truncated(&self, n: usize) -> Result<EnumeratedPrefix> {
        if n == 0 || n > self.size() {
            return Err(CoreError::Domain(format!("cannot truncate to {n} vertices")));
        }
        Ok(EnumeratedPrefix {
            spec: self.spec.clone(),
            structure: self.structure.initial(n),
            schedule: self.schedule[..n].to_vec(),
        })
    }
}

/// Linear order on `keys.len()` vertices with `v_i < v_j` iff `keys[i] < keys[j]`.
pub fn linear_order_from_keys<K: Ord>(keys: &[K]) -> Result<FinStructure> {
    let mut sorted: Vec<&K> = keys.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(CoreError::Domain("keys must be distinct".into()));
    }
    let order: Vec<usize> = (0..keys.len()).sorted_by(|&a, &b| keys[a].cmp(&keys[b])).collect();
    Ok(FinStructure::chain(&order))
}

/// One representative per isomorphism class of induced substructures of size `1..=max_size`,
/// ordered by size then canonical code.
pub fn age(prefix: &EnumeratedPrefix, max_size: usize) -> Result<Vec<FinStructure>> {
    let s = prefix.structure();
    if max_size > s.size() {
        return Err(CoreError::Domain("max size exceeds prefix size".into()));
    }
    let mut classes: BTreeMap<(usize, StructureCode), FinStructure> = BTreeMap::new();
    for k in 1..=max_size {
        let found: BTreeMap<StructureCode, Vec<usize>> = (0..s.size())
            .combinations(k)
            .par_bridge()
            .fold(BTreeMap::new, |mut m, sub| {
                let code = s.induced(&sub).canonical_code().expect("size bounded");
                m.entry(code).or_insert(sub);
                m
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (code, sub) in b {
                    a.entry(code).or_insert(sub);
                }
                a
            });
        for (code, sub) in found {
            let rep = s.induced(&sub).canonical().expect("size bounded");
            classes.insert((k, code), rep);
        }
    }
    Ok(classes.into_values().collect())
}

/// An `r`-coloring of the pairs `{i, j}` of `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairColoring {
    n: usize,
    colors: u8,
    table: Vec<u8>,
}

impl PairColoring {
    pub fn from_fn(n: usize, colors: u8, f: impl Fn(usize, usize) -> u8) -> Result<Self> {
        let mut table = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for j in 0..n {
            for i in 0..j {
                let c = f(i, j);
                if c >= colors {
                    return Err(CoreError::Domain(format!("color {c} out of range")));
                }
                table.push(c);
            }
        }
        Ok(PairColoring { n, colors, table })
    }

    pub fn constant(n: usize, colors: u8, c: u8) -> Result<Self> {
        PairColoring::from_fn(n, colors, |_, _| c)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> u8 {
        self.colors
    }

    pub fn color(&self, i: usize, j: usize) -> u8 {
        assert!(i != j && i < self.n && j < self.n, "invalid pair ({i}, {j})");
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.table[j * (j - 1) / 2 + i]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SierpinskiColor {
    Blue = 0,
    Red = 1,
}

/// Blue iff the enumeration order of `v_i, v_j` agrees with the linear order.
pub fn sierpinski_color(prefix: &EnumeratedPrefix, i: usize, j: usize) -> Result<SierpinskiColor> {
    if !prefix.spec().is_linear_order() {
        return Err(CoreError::Domain("Sierpiński coloring needs a linear order".into()));
    }
    if i >= j || j >= prefix.size() {
        return Err(CoreError::Domain(format!("need i < j < N, got i={i}, j={j}")));
    }
    Ok(if prefix.structure().holds2(0, i, j) { SierpinskiColor::Blue } else { SierpinskiColor::Red })
}

pub fn sierpinski_coloring(prefix: &EnumeratedPrefix) -> Result<PairColoring> {
    if !prefix.spec().is_linear_order() {
        return Err(CoreError::Domain("Sierpiński coloring needs a linear order".into()));
    }
    let s = prefix.structure();
    PairColoring::from_fn(s.size(), 2, |i, j| {
        if s.holds2(0, i, j) {
            SierpinskiColor::Blue as u8
        } else {
            SierpinskiColor::Red as u8
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistenceRow {
    pub trial: usize,
    pub subset: Vec<usize>,
    pub colors: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistenceReport {
    pub seed: u64,
    pub subcopy_size: usize,
    pub rows: Vec<PersistenceRow>,
}

impl PersistenceReport {
    /// `trial,seed,colors` rows; colors separated by `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,seed,colors\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.trial, self.seed, r.colors.iter().join(";")));
        }
        out
    }

    pub fn all_trials_see(&self, k: usize) -> bool {
        self.rows.iter().all(|r| r.colors.len() == k)
    }
}

/// Samples random `subcopy_size`-subsets of the prefix and records the colors on their pairs.
///
/// Every subset of an enumerated limit prefix induces a structure of its age, so uniform subsets
/// are used for all classes. Trial `t` draws from stream `t` of a ChaCha8 generator seeded by `seed`.
pub fn persistence_sample(
    prefix: &EnumeratedPrefix,
    coloring: &PairColoring,
    subcopy_size: usize,
    trials: usize,
    seed: u64,
) -> Result<PersistenceReport> {
    let n = prefix.size();
    if coloring.size() != n {
        return Err(CoreError::Domain("coloring size differs from prefix size".into()));
    }
    if subcopy_size > n {
        return Err(CoreError::Domain(format!("no subcopy of size {subcopy_size} in a prefix of size {n}")));
    }
    let rows = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let mut subset = sample(&mut rng, n, subcopy_size).into_vec();
            subset.sort_unstable();
            let mut seen = vec![false; coloring.colors() as usize];
            for (a, &i) in subset.iter().enumerate() {
                for &j in &subset[a + 1..] {
                    seen[coloring.color(i, j) as usize] = true;
                }
            }
            let colors = (0..coloring.colors()).filter(|&c| seen[c as usize]).collect();
            PersistenceRow { trial, subset, colors }
        })
        .collect();
    Ok(PersistenceReport { seed, subcopy_size, rows })
}
