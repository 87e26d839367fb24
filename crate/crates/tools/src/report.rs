//! Line-oriented text and flat JSON renderings of command results.

use std::time::Duration;

use serde_json::{json, Map, Value};

use duocover_core::verify::WitnessCase;
use duocover_core::{CoverageStats, DesignFamily, IndependentSet, VerificationReport, WitnessResult};

pub fn verification_text(report: &VerificationReport, elapsed: Duration) -> String {
    let mut lines = vec![
        format!("method: {}", report.method),
        format!("outcome: {}", report.outcome),
        format!("subset size: {}", report.subset_size),
        format!("scanned: {}", report.scanned),
    ];
    if let Some(alpha) = report.alpha {
        lines.push(format!("alpha: {alpha}"));
    }
    if let Some(c) = &report.counterexample {
        lines.push(format!("counterexample: {c}"));
    }
    if let Some(cert) = &report.certificate {
        lines.push(format!("certificate: {} cliques", cert.size()));
        for clique in &cert.cliques {
            lines.push(format!("clique: {}", join(clique)));
        }
    }
    if let Some(d) = &report.defect {
        lines.push(format!("defect: {d}"));
    }
    lines.push(format!("elapsed: {:.3}s", elapsed.as_secs_f64()));
    lines.join("\n") + "\n"
}

pub fn verification_json(report: &VerificationReport, elapsed: Duration) -> Value {
    let mut m = Map::new();
    m.insert("method".into(), json!(report.method.name()));
    m.insert("outcome".into(), json!(report.outcome.to_string()));
    m.insert("subset_size".into(), json!(report.subset_size));
    m.insert("scanned".into(), json!(report.scanned));
    m.insert("alpha".into(), json!(report.alpha));
    m.insert("counterexample".into(), json!(report.counterexample.as_ref().map(|c| c.members())));
    m.insert("certificate_size".into(), json!(report.certificate.as_ref().map(|c| c.size())));
    m.insert("defect".into(), json!(report.defect.as_ref().map(|d| d.to_string())));
    m.insert("elapsed_ms".into(), json!(elapsed.as_millis() as u64));
    Value::Object(m)
}

pub fn witness_text(family: &DesignFamily, w: &WitnessResult) -> String {
    let block = &family.blocks()[w.block_index];
    let tag = match w.case {
        WitnessCase::BaseCollision { base } => format!("BASE i={base}"),
        WitnessCase::PairCollision { pair, left_half, right_half } => {
            format!("PAIR m={pair} u={left_half} v={right_half}")
        }
    };
    format!("{tag} → block {}: {block}\n", w.block_index + 1)
}

pub fn witness_json(family: &DesignFamily, w: &WitnessResult) -> Value {
    let mut m = Map::new();
    match w.case {
        WitnessCase::BaseCollision { base } => {
            m.insert("case".into(), json!("BASE"));
            m.insert("base".into(), json!(base));
        }
        WitnessCase::PairCollision { pair, left_half, right_half } => {
            m.insert("case".into(), json!("PAIR"));
            m.insert("pair".into(), json!(pair));
            m.insert("u".into(), json!(left_half));
            m.insert("v".into(), json!(right_half));
        }
    }
    m.insert("block".into(), json!(w.block_index + 1));
    m.insert("members".into(), json!(family.blocks()[w.block_index].members()));
    Value::Object(m)
}

/// Everything `stats` prints.
pub struct StatsSummary<'a> {
    pub family: &'a DesignFamily,
    pub coverage: &'a CoverageStats,
    /// `None` when the solver budget ran out.
    pub alpha: Option<&'a IndependentSet>,
    pub clique_cover: usize,
    /// `(subset size, necessary block indices 0-based)`.
    pub irredundancy: Option<(u32, Vec<usize>)>,
}

pub fn stats_text(s: &StatsSummary<'_>) -> String {
    let mut lines = vec![format!("blocks: {}", s.family.len()), format!("covered pairs: {}", s.coverage.covered_pairs)];
    for (c, count) in &s.coverage.histogram {
        lines.push(format!("multiplicity {c}: {count}"));
    }
    match s.alpha {
        Some(set) => {
            lines.push(format!("alpha: {}", set.size()));
            lines.push(format!("alpha witness: {}", join(&set.members)));
        }
        None => lines.push("alpha: undecided".into()),
    }
    lines.push(format!("clique cover: {}", s.clique_cover));
    if let Some((subset_size, necessary)) = &s.irredundancy {
        lines.push(format!("irredundancy subset size: {subset_size}"));
        lines.push(format!("necessary blocks: {}/{}", necessary.len(), s.family.len()));
        let redundant: Vec<u32> =
            (0..s.family.len()).filter(|i| !necessary.contains(i)).map(|i| i as u32 + 1).collect();
        if !redundant.is_empty() {
            lines.push(format!("redundant blocks: {}", join(&redundant)));
        }
    }
    lines.join("\n") + "\n"
}

pub fn stats_json(s: &StatsSummary<'_>) -> Value {
    let mut m = Map::new();
    m.insert("blocks".into(), json!(s.family.len()));
    m.insert("covered_pairs".into(), json!(s.coverage.covered_pairs));
    for (c, count) in &s.coverage.histogram {
        m.insert(format!("multiplicity_{c}"), json!(count));
    }
    m.insert("alpha".into(), json!(s.alpha.map(|a| a.size())));
    m.insert("alpha_witness".into(), json!(s.alpha.map(|a| &a.members)));
    m.insert("clique_cover".into(), json!(s.clique_cover));
    if let Some((subset_size, necessary)) = &s.irredundancy {
        m.insert("irredundancy_subset_size".into(), json!(subset_size));
        m.insert("necessary_blocks".into(), json!(necessary.len()));
    }
    Value::Object(m)
}

fn join(members: &[u32]) -> String {
    members.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}
