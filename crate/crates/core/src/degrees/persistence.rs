//! Finite proxy for persistence of realized types.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::limit::EnumeratedPrefix;
use crate::similarity::scan::{scan_indices, scan_structure, AntichainFilter};
use crate::similarity::{Flavor, TypeCatalog};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProxyRow {
    pub trial: usize,
    /// Sampled coding-node indices, ascending.
    pub subset: Vec<usize>,
    /// Types of the reference catalog realized inside the subset.
    pub realized: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProxyReport {
    pub seed: u64,
    pub subset_size: usize,
    /// Types realized by the whole prefix.
    pub reference: TypeCatalog,
    pub rows: Vec<ProxyRow>,
}

impl ProxyReport {
    /// Whether every sampled subset realizes every reference type.
    pub fn all_persist(&self) -> bool {
        self.rows.iter().all(|r| r.realized == self.reference.len())
    }
}

/// For `trials` random subsets of the prefix's coding nodes, counts the types of `n`-element
/// diagonal antichains of the whole prefix that reappear inside the subset.
///
/// Trial `t` uses stream `t` of a ChaCha8 generator seeded by `seed`.
pub fn persistence_proxy(
    prefix: &EnumeratedPrefix,
    n: usize,
    filter: AntichainFilter,
    subset_size: usize,
    trials: usize,
    seed: u64,
) -> Result<ProxyReport> {
    let size = prefix.size();
    if subset_size > size || n > subset_size {
        return Err(CoreError::Domain(format!(
            "need n <= subset size <= prefix size, got {n}, {subset_size}, {size}"
        )));
    }
    let spec = prefix.spec();
    let s = prefix.structure();
    let reference = scan_structure(spec, s, n, Flavor::Structural, filter);
    let rows = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let mut subset = sample(&mut rng, size, subset_size).into_vec();
            subset.sort_unstable();
            let found = scan_indices(spec, s, &subset, n, Flavor::Structural, filter);
            let realized = found.encodings().intersection(&reference.encodings()).count();
            ProxyRow { trial, subset, realized }
        })
        .collect();
    Ok(ProxyReport { seed, subset_size, reference, rows })
}
