//! Human-readable summaries.

use homcalc::harness::{CheckReport, ScanReport, ScanVerdict};
use homcalc::homology::DimensionReport;
use homcalc::{Evidence, Verdict};

fn evidence(e: &Evidence) -> String {
    match e {
        Evidence::Isomorphism { matrix } => format!("isomorphism ({}x{})", matrix.rows(), matrix.cols()),
        Evidence::InvariantMismatch { invariant, .. } => format!("{invariant} differs"),
        Evidence::ExtNonzero { degree, dim, target } => format!("Ext^{degree} has dim {dim} against target {target}"),
        Evidence::FiniteResolution { length } => format!("finite resolution of length {length}"),
        Evidence::PeriodicClosure { from, to } => format!("syzygies {from} and {to} close the window"),
        Evidence::Structural { reason } => reason.clone(),
        Evidence::NodeFailure { node, what } => format!("node {node}: {what}"),
        Evidence::All { parts } => parts.iter().map(evidence).collect::<Vec<_>>().join("; "),
    }
}

pub fn verdict(v: &Verdict) -> String {
    match v {
        Verdict::CertifiedTrue { evidence: e } => format!("certified true ({})", evidence(e)),
        Verdict::CertifiedFalse { evidence: e } => format!("certified false ({})", evidence(e)),
        Verdict::Unknown { cutoff, reason } => format!("unknown at cutoff {cutoff} ({reason})"),
    }
}

pub fn dimension(r: &DimensionReport) -> String {
    match r {
        DimensionReport::Zero => "0 (zero module)".into(),
        DimensionReport::Exact { value, witness } => {
            format!("{value} (exact; resolution terms {:?})", witness.terms)
        }
        DimensionReport::Infinite { from, to, witness } => {
            let k = witness.multiplicity.unwrap_or(1);
            if k == 1 {
                format!("infinite (syzygy {to} is isomorphic to syzygy {from})")
            } else {
                format!("infinite (syzygy {to} is {k} copies of syzygy {from})")
            }
        }
        DimensionReport::AtLeast { value, cutoff } => format!(">= {value} (undecided at cutoff {cutoff})"),
        DimensionReport::UpperBound { value, note, .. } => format!("<= {value} ({note})"),
    }
}

pub fn check_report(r: &CheckReport) -> String {
    let mut s = format!(
        "{} on {}: {} drawn, {} not applicable, {} passed, {} failed, {} unknown\n",
        r.property_id,
        r.algebra,
        r.drawn,
        r.not_applicable,
        r.passed,
        r.failed.len(),
        r.unknown
    );
    for f in &r.failed {
        s += &format!("  FAIL sample {} (seed {}): {}\n", f.index, f.seed, f.detail);
    }
    s
}

pub fn scan_report(r: &ScanReport) -> String {
    let v = match &r.verdict {
        ScanVerdict::Consistent { checked, unknown } => format!("consistent ({checked} checked, {unknown} unknown)"),
        ScanVerdict::CandidateCounterexample { witness } => format!("CANDIDATE counterexample: {witness}"),
        ScanVerdict::Undecided { reasons } => format!("undecided at cutoff {}: {}", r.config.cutoff, reasons.join("; ")),
    };
    let mut s = format!("{} on {}: {v}\n", r.conjecture_id, r.algebra);
    if let Some(p) = &r.ext_profile {
        let cells: Vec<String> = p.iter().map(|x| x.map_or("?".into(), |d| d.to_string())).collect();
        s += &format!("  dim Ext^i(D(A), A), i = 1..{}: {}\n", p.len(), cells.join(" "));
    }
    s
}
