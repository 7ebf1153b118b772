//! Line-oriented text reports.

use std::fmt::Write;

use specfact::factorizer::{Site, VerificationReport};
use specfact::matrix::SpectrumReport;
use specfact::SpectralFactorization;

use crate::io::RegionFile;

fn sites(out: &mut String, title: &str, list: &[Site]) {
    if list.is_empty() {
        writeln!(out, "{title}: none").unwrap();
        return;
    }
    writeln!(out, "{title}:").unwrap();
    for s in list {
        writeln!(
            out,
            "  {} (multiplicity {}, modulus {:.6})",
            s.root,
            s.multiplicity,
            s.root.modulus()
        )
        .unwrap();
    }
}

pub fn verification(r: &VerificationReport) -> String {
    let mut out = String::new();
    if r.residual_exact {
        writeln!(out, "residual: exact zero").unwrap();
    } else {
        writeln!(
            out,
            "residual: sampled max {:e} (tolerance {:e})",
            r.residual_sampled, r.tol
        )
        .unwrap();
    }
    writeln!(out, "δ_M(Φ)={}, δ_M(W)={}", r.degree_phi, r.degree_w).unwrap();
    sites(&mut out, "poles of W", &r.poles);
    sites(&mut out, "zeros of W", &r.zeros);
    let failures = r.failures();
    if failures.is_empty() {
        writeln!(out, "status: pass").unwrap();
    } else {
        writeln!(out, "status: fail").unwrap();
        for f in failures {
            writeln!(out, "  {f}").unwrap();
        }
    }
    out
}

fn spectrum(out: &mut String, s: &SpectrumReport) {
    writeln!(
        out,
        "spectrum check: min eigenvalue {:e} over {} samples, {} skipped near poles ({})",
        s.min_eigenvalue,
        s.samples,
        s.skipped.len(),
        SpectrumReport::CERTIFICATION
    )
    .unwrap();
}

pub fn factorization(f: &SpectralFactorization) -> String {
    let mut out = String::new();
    let regions = serde_json::to_string(&RegionFile::from_pair(&f.regions)).expect("serializable");
    writeln!(out, "regions: {regions}").unwrap();
    writeln!(out, "rank: {}", f.w.rows()).unwrap();
    writeln!(out, "exact identity: {}", f.exact).unwrap();
    writeln!(out, "exact square root: {}", f.trace.c_exact).unwrap();
    writeln!(out, "numeric root location: {}", f.approximate).unwrap();
    writeln!(
        out,
        "iterations: {} (bound {})",
        f.trace.iterations(),
        f.trace.degree_bound
    )
    .unwrap();
    spectrum(&mut out, &f.spectrum);
    out.push_str(&verification(&f.report));
    out
}
