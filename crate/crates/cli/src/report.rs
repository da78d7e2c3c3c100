//! Plain-text renderings of the core reports.

use std::fmt::Write;

use hamuni_core::linalg::CMatrix;
use hamuni_core::{Certificate, ClassificationReport, TridiagonalForm, C64};

fn yes(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

/// Rounds values that would print as `±0.000000` to an exact zero.
fn shown(x: f64) -> f64 {
    if x.abs() < 5e-7 { 0.0 } else { x }
}

fn complex(z: C64) -> String {
    let (re, im) = (shown(z.re), shown(z.im));
    if im == 0.0 {
        format!("{re:+.6}")
    } else {
        format!("{re:+.6}{im:+.6}i")
    }
}

fn matrix(m: &CMatrix, indent: &str) -> String {
    let mut s = String::new();
    for i in 0..m.dim() {
        let row: Vec<String> = (0..m.dim()).map(|j| format!("{:>22}", complex(m[(i, j)]))).collect();
        let _ = writeln!(s, "{indent}{}", row.join(" "));
    }
    s
}

pub fn classification(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "verdict: {:?}", r.verdict);
    let _ = writeln!(s, "  shares an eigenvector with T: {}", yes(r.cond_shared_eigvec));
    let _ = writeln!(s, "  T-similar to a local Hamiltonian: {}", yes(r.cond_t_similar_local));
    let _ = writeln!(s, "  traceless: {} (trace {:.6e})", yes(r.cond_traceless), r.trace);
    let [a, b, c, d, e, f, g] = r.tridiagonal.params().map(shown);
    let _ = writeln!(
        s,
        "tridiagonal form (type {}): a={a:.6} b={b:.6} c={c:.6} d={d:.6} e={e:.6} f={f:.6} g={g:.6}",
        r.tridiagonal.form_type.number()
    );
    if let Some(v) = &r.shared_eigvec_witness {
        let entries: Vec<String> = v.iter().map(|z| complex(*z)).collect();
        let _ = writeln!(s, "common eigenvector: [{}]", entries.join(", "));
    }
    if let Some(w) = &r.local_witness {
        let _ = writeln!(s, "local witness residual: {:.3e}", w.residual);
    }
    let b = &r.borderline;
    let flags: Vec<&str> = [
        (b.shared_eigvec, "coupling"),
        (b.t_similar_local, "diagonal spread"),
        (b.traceless, "trace"),
        (b.witness_disagreement, "eigenvector search disagrees"),
    ]
    .into_iter()
    .filter_map(|(on, name)| on.then_some(name))
    .collect();
    if !flags.is_empty() {
        let _ = writeln!(s, "borderline: {}", flags.join(", "));
    }
    let _ = writeln!(s, "tolerance: {:.3e}", r.tolerance);
    s
}

pub fn tridiagonal(x: &TridiagonalForm) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "type {}", x.form_type.number());
    for (name, v) in ["a", "b", "c", "d", "e", "f", "g"].iter().zip(x.params()) {
        let _ = writeln!(s, "{name} = {v:.12}");
    }
    if x.borderline {
        let _ = writeln!(s, "borderline: a coupling lies within 10x of the zero threshold {:.3e}", x.zero_threshold);
    }
    let _ = writeln!(s, "conjugator P (P H P† is the form in the T-basis):");
    s + &matrix(&x.conjugator, "  ")
}

pub fn certificate(c: &Certificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "scheme {:?}: rank {} of 16, independent: {}", c.scheme, c.rank, yes(c.independent));
    if let Some(case) = c.y12_case {
        let _ = writeln!(s, "Y12 construction: {case:?}");
    }
    for g in &c.generators {
        let residual = g.canonical_residual.map_or(String::from("-"), |r| format!("{r:.2e}"));
        let _ = writeln!(s, "  {:<5} {:<40} residual {residual}", g.label.to_string(), g.formula);
    }
    s
}
