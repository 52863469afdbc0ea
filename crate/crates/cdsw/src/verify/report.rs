//! Verification report and its versioned JSON form.
//!
//! The JSON schema is fixed: dimensions travel as decimal strings, a skipped
//! ideal-slice dimension is null, and field order is deterministic, so two
//! runs with identical flags produce byte-identical files. Timings appear in
//! the human-readable output only.

use serde::Serialize;

use crate::cartan::CartanType;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathwayChoice {
    Direct,
    BTensorB,
}

impl PathwayChoice {
    pub fn as_str(&self) -> &'static str {
        match self {
            PathwayChoice::Direct => "direct",
            PathwayChoice::BTensorB => "b-tensor-b",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "direct" => Some(PathwayChoice::Direct),
            "b-tensor-b" | "b_tensor_b" | "btensorb" => Some(PathwayChoice::BTensorB),
            _ => None,
        }
    }
}

/// Dimension table entry for one bidegree cell.
#[derive(Debug, Clone)]
pub struct CellDims {
    pub p: usize,
    pub q: usize,
    pub dim_ambient: u64,
    /// None when the slice was skipped under the size guard.
    pub dim_ideal: Option<u64>,
    pub dim_invariants: u64,
    pub dim_invariants_in_ideal: u64,
}

impl CellDims {
    /// Invariants of the quotient algebra at this bidegree.
    pub fn quotient_invariants(&self) -> u64 {
        self.dim_invariants - self.dim_invariants_in_ideal
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Verdicts {
    pub generation: bool,
    pub s_power_vanishing: bool,
    pub s_power_nonvanishing: bool,
    pub diagonal_concentration: bool,
}

impl Verdicts {
    pub fn all_pass(&self) -> bool {
        self.generation
            && self.s_power_vanishing
            && self.s_power_nonvanishing
            && self.diagonal_concentration
    }
}

/// Hom-space diagnostic for one abelian ideal.
#[derive(Debug, Clone)]
pub struct HomDiagnostic {
    pub ideal_roots: Vec<String>,
    pub degree: usize,
    pub highest_weight: Vec<i64>,
    pub module_dimension: u64,
    pub adjoint_multiplicity: u64,
}

#[derive(Debug)]
pub struct VerificationReport {
    pub cartan_type: CartanType,
    pub pathway: PathwayChoice,
    pub dual_coxeter: usize,
    pub max_bidegree: usize,
    /// True when the table reaches the dual Coxeter number, so every verdict
    /// rests on computed data.
    pub complete: bool,
    pub tables: Vec<CellDims>,
    /// (k, class of S^k in the quotient is nonzero).
    pub s_powers: Vec<(usize, bool)>,
    /// (k, projection of S^k into B tensor B is nonzero); reduced pathway only.
    pub s_projections: Vec<(usize, bool)>,
    /// (d, the action-map operator kills the top eigenspace in degree d+1).
    pub lemma: Vec<(usize, bool)>,
    pub hom_diagnostics: Vec<HomDiagnostic>,
    pub verdicts: Verdicts,
    pub timings_ms: Vec<(String, u128)>,
}

impl VerificationReport {
    pub fn passes(&self) -> bool {
        self.complete && self.verdicts.all_pass()
    }

    pub fn cell(&self, p: usize, q: usize) -> Option<&CellDims> {
        self.tables.iter().find(|c| c.p == p && c.q == q)
    }

    pub fn s_power_nonzero(&self, k: usize) -> Option<bool> {
        self.s_powers.iter().find(|(kk, _)| *kk == k).map(|(_, nz)| *nz)
    }

    pub fn to_json_string(&self) -> String {
        let json = JsonReport {
            schema_version: "1",
            cartan_type: self.cartan_type.to_string(),
            pathway: self.pathway.as_str(),
            tables: self
                .tables
                .iter()
                .map(|c| JsonCell {
                    p: c.p,
                    q: c.q,
                    dim_ambient: c.dim_ambient.to_string(),
                    dim_ideal: c.dim_ideal.map(|d| d.to_string()),
                    dim_invariants: c.dim_invariants.to_string(),
                    dim_invariants_in_ideal: c.dim_invariants_in_ideal.to_string(),
                })
                .collect(),
            s_powers: self.s_powers.iter().map(|(k, nz)| JsonSPower { k: *k, nonzero: *nz }).collect(),
            lemma: self.lemma.iter().map(|(d, h)| JsonLemma { d: *d, holds: *h }).collect(),
            verdicts: JsonVerdicts {
                generation: self.verdicts.generation,
                s_power_vanishing: self.verdicts.s_power_vanishing,
                s_power_nonvanishing: self.verdicts.s_power_nonvanishing,
                diagonal_concentration: self.verdicts.diagonal_concentration,
            },
        };
        serde_json::to_string_pretty(&json).expect("report serialization") + "\n"
    }

    /// Human-readable table for standard output.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "type {}  pathway {}  dual Coxeter number {}",
            self.cartan_type,
            self.pathway.as_str(),
            self.dual_coxeter
        );
        let _ = writeln!(
            s,
            "{:>3} {:>3} {:>12} {:>10} {:>8} {:>10} {:>8}",
            "p", "q", "ambient", "ideal", "inv", "inv-in-id", "A^g"
        );
        for c in &self.tables {
            let ideal = match c.dim_ideal {
                Some(d) => d.to_string(),
                None => "skipped".to_string(),
            };
            let _ = writeln!(
                s,
                "{:>3} {:>3} {:>12} {:>10} {:>8} {:>10} {:>8}",
                c.p,
                c.q,
                c.dim_ambient,
                ideal,
                c.dim_invariants,
                c.dim_invariants_in_ideal,
                c.quotient_invariants()
            );
        }
        for (k, nz) in &self.s_powers {
            let _ = writeln!(s, "S^{k} in the quotient: {}", if *nz { "nonzero" } else { "zero" });
        }
        for (k, nz) in &self.s_projections {
            let _ = writeln!(
                s,
                "projection of S^{k} onto B (x) B: {}",
                if *nz { "nonzero" } else { "zero" }
            );
        }
        for (d, holds) in &self.lemma {
            let _ = writeln!(s, "action-map vanishing at degree d = {d}: {}", if *holds { "holds" } else { "FAILS" });
        }
        if !self.hom_diagnostics.is_empty() {
            let _ = writeln!(s, "hom-space diagnostics (adjoint multiplicity in V (x) V*):");
            for h in &self.hom_diagnostics {
                let _ = writeln!(
                    s,
                    "  degree {} ideal {{{}}} weight {:?} dim {}: multiplicity {}",
                    h.degree,
                    h.ideal_roots.join(", "),
                    h.highest_weight,
                    h.module_dimension,
                    h.adjoint_multiplicity
                );
            }
        }
        let v = &self.verdicts;
        let _ = writeln!(
            s,
            "verdicts: generation {}  S^g = 0 {}  S^(g-1) != 0 {}  diagonal concentration {}",
            pass(v.generation),
            pass(v.s_power_vanishing),
            pass(v.s_power_nonvanishing),
            pass(v.diagonal_concentration)
        );
        if !self.complete {
            let _ = writeln!(s, "note: table truncated below the dual Coxeter number; verdicts partial");
        }
        for (label, ms) in &self.timings_ms {
            let _ = writeln!(s, "timing {label}: {ms} ms");
        }
        s
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Serialize)]
struct JsonReport {
    schema_version: &'static str,
    #[serde(rename = "type")]
    cartan_type: String,
    pathway: &'static str,
    tables: Vec<JsonCell>,
    s_powers: Vec<JsonSPower>,
    lemma: Vec<JsonLemma>,
    verdicts: JsonVerdicts,
}

#[derive(Serialize)]
struct JsonCell {
    p: usize,
    q: usize,
    dim_ambient: String,
    dim_ideal: Option<String>,
    dim_invariants: String,
    dim_invariants_in_ideal: String,
}

#[derive(Serialize)]
struct JsonSPower {
    k: usize,
    nonzero: bool,
}

#[derive(Serialize)]
struct JsonLemma {
    d: usize,
    holds: bool,
}

#[derive(Serialize)]
struct JsonVerdicts {
    generation: bool,
    s_power_vanishing: bool,
    s_power_nonvanishing: bool,
    diagonal_concentration: bool,
}
