//! Peelability verdicts and net-pattern classes.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::catalog::{self, Family, SolidRecord};
use crate::error::Result;
use crate::geometry::Polyhedron;
use crate::peel::{peel_all_pairs, Outcome, PeelConfig, PeelSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    /// Every start pair peels completely.
    PerfectlyPeelable,
    /// Some, but not all, start pairs peel completely.
    PossiblyPeelable,
    /// No start pair peels completely.
    NonPeelable,
}

impl Verdict {
    pub fn from_counts(complete: usize, total: usize) -> Verdict {
        if complete == 0 {
            Verdict::NonPeelable
        } else if complete == total {
            Verdict::PerfectlyPeelable
        } else {
            Verdict::PossiblyPeelable
        }
    }

    pub fn is_peelable(self) -> bool {
        self != Verdict::NonPeelable
    }

    /// Short label: `Perfect`, `Possible` or `Impossible`.
    pub fn label(self) -> &'static str {
        match self {
            Verdict::PerfectlyPeelable => "Perfect",
            Verdict::PossiblyPeelable => "Possible",
            Verdict::NonPeelable => "Impossible",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairOutcome {
    pub f1: usize,
    pub f2: usize,
    pub outcome: Outcome,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelabilityVerdict {
    pub solid: String,
    pub verdict: Verdict,
    pub total: usize,
    pub complete: usize,
    pub pairs: Vec<PairOutcome>,
}

impl PeelabilityVerdict {
    pub fn incomplete(&self) -> usize {
        self.total - self.complete
    }

    pub fn from_runs(solid: &str, runs: &[PeelSequence]) -> PeelabilityVerdict {
        let complete = runs.iter().filter(|r| r.is_complete()).count();
        PeelabilityVerdict {
            solid: solid.to_owned(),
            verdict: Verdict::from_counts(complete, runs.len()),
            total: runs.len(),
            complete,
            pairs: runs
                .iter()
                .map(|r| PairOutcome {
                    f1: r.f1(),
                    f2: r.f2(),
                    outcome: r.outcome,
                    length: r.len(),
                })
                .collect(),
        }
    }
}

/// Peels every ordered start pair and aggregates the outcomes.
pub fn classify(p: &Polyhedron, cfg: &PeelConfig) -> Result<PeelabilityVerdict> {
    let runs = peel_all_pairs(p, cfg)?;
    Ok(PeelabilityVerdict::from_runs(p.name().unwrap_or(""), &runs))
}

/// Shape of a peel: gon count of each face in order and, for every face with
/// both a predecessor and a successor, how many edges (counter-clockwise from
/// outside) separate the entry hinge from the exit hinge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PatternSignature {
    pub gons: Vec<usize>,
    pub hinge_offsets: Vec<Option<usize>>,
    pub outcome: Outcome,
}

impl PatternSignature {
    pub fn of(p: &Polyhedron, seq: &PeelSequence) -> PatternSignature {
        let order = seq.order();
        let t = order.len();
        let adj = p.adjacency();
        let hinge_offsets = (0..t)
            .map(|k| {
                if k == 0 || k + 1 == t {
                    return None;
                }
                let f = order[k];
                let entry = adj.position(f, order[k - 1])?;
                let exit = adj.position(f, order[k + 1])?;
                Some((exit + p.gon(f) - entry) % p.gon(f))
            })
            .collect();
        PatternSignature {
            gons: order.iter().map(|&f| p.gon(f)).collect(),
            hinge_offsets,
            outcome: seq.outcome,
        }
    }

    pub fn len(&self) -> usize {
        self.gons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gons.is_empty()
    }
}

/// Runs sharing one signature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternClass {
    pub signature: PatternSignature,
    pub count: usize,
    /// Smallest start pair in the class.
    pub representative: (usize, usize),
}

/// Partitions runs of one solid by signature, sorted by signature.
pub fn pattern_classes(p: &Polyhedron, runs: &[PeelSequence]) -> Vec<PatternClass> {
    let mut classes: BTreeMap<PatternSignature, (usize, (usize, usize))> = BTreeMap::new();
    for r in runs {
        let pair = (r.f1(), r.f2());
        let entry = classes
            .entry(PatternSignature::of(p, r))
            .or_insert((0, pair));
        entry.0 += 1;
        entry.1 = entry.1.min(pair);
    }
    classes
        .into_iter()
        .map(|(signature, (count, representative))| PatternClass {
            signature,
            count,
            representative,
        })
        .collect()
}

/// Key grouping failed runs: gon counts of the selected prefix and the number
/// of faces left over.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FailureKey {
    pub prefix_gons: Vec<usize>,
    pub remaining: usize,
}

/// Counts incomplete runs per [`FailureKey`].
pub fn failure_classes(p: &Polyhedron, runs: &[PeelSequence]) -> BTreeMap<FailureKey, usize> {
    let mut classes = BTreeMap::new();
    for r in runs.iter().filter(|r| !r.is_complete()) {
        let key = FailureKey {
            prefix_gons: r.order().iter().map(|&f| p.gon(f)).collect(),
            remaining: r.remaining.len(),
        };
        *classes.entry(key).or_insert(0) += 1;
    }
    classes
}

/// Published verdicts for one Archimedean/Catalan pair, and whether the
/// Catalan skeleton has a Hamiltonian path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expectation {
    pub config: &'static str,
    pub archimedean: Verdict,
    pub catalan: Verdict,
    pub catalan_hamiltonian: bool,
}

use Verdict::{NonPeelable as Imp, PerfectlyPeelable as Perf, PossiblyPeelable as Poss};

pub const TABLE1: [Expectation; 13] = [
    Expectation {
        config: "3,4,3,4",
        archimedean: Imp,
        catalan: Perf,
        catalan_hamiltonian: false,
    },
    Expectation {
        config: "4,6,10",
        archimedean: Poss,
        catalan: Imp,
        catalan_hamiltonian: true,
    },
    Expectation {
        config: "4,6,8",
        archimedean: Perf,
        catalan: Imp,
        catalan_hamiltonian: true,
    },
    Expectation {
        config: "3,5,3,5",
        archimedean: Imp,
        catalan: Poss,
        catalan_hamiltonian: false,
    },
    Expectation {
        config: "3,4,5,4",
        archimedean: Imp,
        catalan: Perf,
        catalan_hamiltonian: false,
    },
    Expectation {
        config: "3,4,4,4",
        archimedean: Imp,
        catalan: Perf,
        catalan_hamiltonian: false,
    },
    Expectation {
        config: "3,3,3,3,4",
        archimedean: Poss,
        catalan: Perf,
        catalan_hamiltonian: true,
    },
    Expectation {
        config: "3,3,3,3,5",
        archimedean: Imp,
        catalan: Perf,
        catalan_hamiltonian: true,
    },
    Expectation {
        config: "3,8,8",
        archimedean: Imp,
        catalan: Imp,
        catalan_hamiltonian: false,
    },
    Expectation {
        config: "3,10,10",
        archimedean: Imp,
        catalan: Imp,
        catalan_hamiltonian: false,
    },
    Expectation {
        config: "5,6,6",
        archimedean: Perf,
        catalan: Perf,
        catalan_hamiltonian: true,
    },
    Expectation {
        config: "4,6,6",
        archimedean: Perf,
        catalan: Poss,
        catalan_hamiltonian: true,
    },
    Expectation {
        config: "3,6,6",
        archimedean: Poss,
        catalan: Poss,
        catalan_hamiltonian: true,
    },
];

/// Published verdict for a catalog solid. Every Platonic solid is perfect.
pub fn expected_verdict(record: &SolidRecord) -> Verdict {
    let config = record.index.trim_matches(['{', '}', '[', ']']);
    match record.family {
        Family::Platonic => Perf,
        Family::Archimedean => table_row(config).archimedean,
        Family::Catalan => table_row(config).catalan,
    }
}

/// Published Hamiltonian availability for a Catalan solid's skeleton;
/// `None` for other families (all Archimedean skeletons have paths).
pub fn expected_hamiltonian(record: &SolidRecord) -> Option<bool> {
    let config = record.index.trim_matches(['{', '}', '[', ']']);
    match record.family {
        Family::Catalan => Some(table_row(config).catalan_hamiltonian),
        Family::Archimedean => Some(true),
        Family::Platonic => None,
    }
}

fn table_row(config: &str) -> &'static Expectation {
    TABLE1
        .iter()
        .find(|e| e.config == config)
        .expect("every Archimedean and Catalan index is tabulated")
}

/// One row of a classification table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct ClassificationRow {
    pub name: String,
    pub index: String,
    pub family: Family,
    pub verdict: Verdict,
    pub complete_pairs: usize,
    pub total_pairs: usize,
    #[serde(skip)]
    pub expected: Verdict,
}

impl ClassificationRow {
    pub fn matches(&self) -> bool {
        self.verdict == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationTable {
    pub rows: Vec<ClassificationRow>,
}

impl ClassificationTable {
    pub fn mismatches(&self) -> impl Iterator<Item = &ClassificationRow> {
        self.rows.iter().filter(|r| !r.matches())
    }

    pub fn count(&self, family: Family, verdict: Verdict) -> usize {
        self.rows
            .iter()
            .filter(|r| r.family == family && r.verdict == verdict)
            .count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,index,family,verdict,complete-pairs,total-pairs\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},\"{}\",{},{},{},{}\n",
                r.name, r.index, r.family, r.verdict, r.complete_pairs, r.total_pairs
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.rows).expect("rows serialize")
    }
}

/// Classifies the given catalog records.
pub fn classify_records<'a>(
    records: impl IntoIterator<Item = &'a SolidRecord>,
    cfg: &PeelConfig,
) -> Result<ClassificationTable> {
    let rows = records
        .into_iter()
        .map(|r| {
            let v = classify(&r.polyhedron, cfg)?;
            Ok(ClassificationRow {
                name: r.name.to_owned(),
                index: r.index.clone(),
                family: r.family,
                verdict: v.verdict,
                complete_pairs: v.complete,
                total_pairs: v.total,
                expected: expected_verdict(r),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ClassificationTable { rows })
}

/// Classifies all 31 catalog solids.
pub fn classify_catalog(cfg: &PeelConfig) -> Result<ClassificationTable> {
    classify_records(catalog::all(), cfg)
}
