use std::fmt;

use serde::Serialize;

use crate::space::{ColoringSpace, Item};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredItem {
    pub item: String,
    pub color: u8,
}

/// A full coloring of a space, in search order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub items: Vec<ColoredItem>,
}

impl Coloring {
    pub fn new(items: &[Item], colors: &[u8]) -> Self {
        Coloring {
            items: items.iter().zip(colors).map(|(i, &c)| ColoredItem { item: i.to_string(), color: c }).collect(),
        }
    }

    pub fn colors(&self) -> Vec<u8> {
        self.items.iter().map(|c| c.color).collect()
    }

    pub fn color_of(&self, item: &str) -> Option<u8> {
        self.items.iter().find(|c| c.item == item).map(|c| c.color)
    }

    /// One `item,color` line per item under a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("item,color\n");
        for c in &self.items {
            out.push_str(&format!("{},{}\n", c.item, c.color));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "coloring")]
pub enum Verdict {
    AllColoringsAdmitWitness,
    CounterexampleColoring(Coloring),
    /// The node budget ran out first.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::AllColoringsAdmitWitness => "all-colorings-admit-witness",
            Verdict::CounterexampleColoring(_) => "counterexample",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub items: usize,
    pub targets: usize,
    /// Partial colorings explored.
    pub nodes: u64,
    pub chunks: usize,
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub theorem: String,
    pub params: String,
    pub space: ColoringSpace,
    pub verdict: Verdict,
    pub stats: SearchStats,
    /// Set for counterexamples: whether an independent recheck also finds no monochromatic target.
    pub reverified: Option<bool>,
}

impl WitnessReport {
    pub fn is_positive(&self) -> bool {
        self.verdict == Verdict::AllColoringsAdmitWitness
    }

    pub fn is_inconclusive(&self) -> bool {
        self.verdict == Verdict::Inconclusive
    }

    pub fn counterexample(&self) -> Option<&Coloring> {
        match &self.verdict {
            Verdict::CounterexampleColoring(c) => Some(c),
            _ => None,
        }
    }

    pub const CSV_HEADER: &'static str = "theorem,params,verdict,items,targets,nodes,reverified";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.theorem,
            self.params,
            self.verdict,
            self.stats.items,
            self.stats.targets,
            self.stats.nodes,
            self.reverified.map_or("-".to_string(), |b| b.to_string())
        )
    }
}
