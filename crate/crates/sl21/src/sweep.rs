//! Batch driver behind the `sl21` binary: enumerate (p, chi, lambda,
//! module-kind) instances, compute H^1 along both routes, compare against
//! the predicted dimension table, and emit machine-readable output.
//!
//! Disagreement between the full and the weight-reduced computation is an
//! internal inconsistency and surfaces as a hard error; disagreement with
//! the prediction table is recorded in the row and reported in the summary.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use crate::cohomology::{h1_full, h1_weight_reduced, Cochain};
use crate::field::Field;
use crate::modules::{
    admissible_weights, build_kac, build_simple, HighestWeight, ModuleRep, PChar,
};
use crate::superalgebra::{BasisLabel, Parity, SuperAlgebra};
use crate::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Which module family to build for an instance.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Kac,
    Simple,
}

impl ModuleKind {
    pub fn name(self) -> &'static str {
        match self {
            ModuleKind::Kac => "kac",
            ModuleKind::Simple => "simple",
        }
    }
}

/// A p-character given by integer parameters, before lifting into a field.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ChiSpec {
    Zero,
    Semisimple { r: i64, s: i64 },
    Nilpotent { r: i64 },
}

impl ChiSpec {
    /// Parse the command-line form `zero`, `ss:r,s` or `nilp:r`.
    pub fn parse(s: &str) -> Result<ChiSpec> {
        let bad = || Error::ParseElement(s.to_string());
        if s == "zero" {
            return Ok(ChiSpec::Zero);
        }
        if let Some(rest) = s.strip_prefix("ss:") {
            let (r, ss) = rest.split_once(',').ok_or_else(bad)?;
            return Ok(ChiSpec::Semisimple {
                r: r.trim().parse().map_err(|_| bad())?,
                s: ss.trim().parse().map_err(|_| bad())?,
            });
        }
        if let Some(rest) = s.strip_prefix("nilp:") {
            return Ok(ChiSpec::Nilpotent {
                r: rest.trim().parse().map_err(|_| bad())?,
            });
        }
        Err(bad())
    }

    pub fn params(self) -> (i64, i64) {
        match self {
            ChiSpec::Zero => (0, 0),
            ChiSpec::Semisimple { r, s } => (r, s),
            ChiSpec::Nilpotent { r } => (r, r),
        }
    }

    pub fn kind_name(self) -> &'static str {
        match self {
            ChiSpec::Zero => "zero",
            ChiSpec::Semisimple { .. } => "ss",
            ChiSpec::Nilpotent { .. } => "nilp",
        }
    }

    /// The smallest field realising every admissible weight: the prime
    /// field when chi vanishes on the Cartan generators, the Artin-Schreier
    /// extension otherwise.
    pub fn field(self, p: u64) -> Result<Field> {
        let (r, s) = self.params();
        let needs_ext = r.rem_euclid(p as i64) != 0 || s.rem_euclid(p as i64) != 0;
        if needs_ext {
            Field::artin_schreier(p)
        } else {
            Field::prime(p)
        }
    }

    pub fn lift(self, field: &Field) -> PChar {
        match self {
            ChiSpec::Zero => PChar::zero(field),
            ChiSpec::Semisimple { r, s } => {
                PChar::semisimple(field.from_int(r), field.from_int(s))
            }
            ChiSpec::Nilpotent { r } => PChar::nilpotent(field.from_int(r)),
        }
    }
}

/// Which highest weights to run.
#[derive(Clone, Debug)]
pub enum LambdaSpec {
    All,
    Pair(String, String),
}

impl LambdaSpec {
    pub fn parse(s: &str) -> Result<LambdaSpec> {
        if s == "all" {
            return Ok(LambdaSpec::All);
        }
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::ParseElement(s.to_string()))?;
        Ok(LambdaSpec::Pair(a.trim().to_string(), b.trim().to_string()))
    }
}

/// The closed-form dimension table used for verification: `None` when no
/// prediction applies (p = 3, where the special weights collide).
pub fn predicted_h1_dim(
    p: u64,
    chi_is_zero: bool,
    lambda: &HighestWeight,
    kind: ModuleKind,
) -> Option<usize> {
    if p == 3 {
        return None;
    }
    if !chi_is_zero {
        return Some(0);
    }
    let l1 = lambda.l1.lift_to_int().ok()?;
    let l2 = lambda.l2.lift_to_int().ok()?;
    let top = p - 1;
    Some(match kind {
        ModuleKind::Kac => {
            if (l1, l2) == (top, top - 1) || (l1, l2) == (top - 1, 0) {
                1
            } else {
                0
            }
        }
        ModuleKind::Simple => {
            if (l1, l2) == (top, top) || (l1, l2) == (1, 0) {
                1
            } else if (l1, l2) == (top, 0) || (l1, l2) == (top, 1) {
                2
            } else {
                0
            }
        }
    })
}

/// One computed sweep row.
pub struct InstanceRecord {
    pub chi: ChiSpec,
    pub lambda1: String,
    pub lambda2: String,
    pub module: ModuleKind,
    pub module_dim: usize,
    pub dim_h1: usize,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub predicted: Option<usize>,
    pub matched: Option<bool>,
    pub time_ms: u128,
    pub representatives: Vec<Cochain>,
    /// Coordinate labels of the module the representatives live in.
    pub coord_labels: Vec<(u8, u8, u16)>,
}

/// Compute one instance: build the module, run both H^1 routes, compare
/// them (hard error on disagreement) and compare with the prediction.
pub fn run_instance(
    alg: &SuperAlgebra,
    chi_spec: ChiSpec,
    chi: &PChar,
    lambda: &HighestWeight,
    kind: ModuleKind,
) -> Result<InstanceRecord> {
    let start = Instant::now();
    let rep: ModuleRep = match kind {
        ModuleKind::Kac => build_kac(alg, chi, lambda)?,
        ModuleKind::Simple => build_simple(alg, chi, lambda)?,
    };
    let full = h1_full(alg, &rep)?;
    let reduced = h1_weight_reduced(alg, &rep)?;
    if (full.dim_even, full.dim_odd) != (reduced.dim_even, reduced.dim_odd) {
        return Err(Error::Inconsistent(format!(
            "full route ({}, {}) vs weight-reduced route ({}, {}) at chi = {}, lambda = {}, {}",
            full.dim_even,
            full.dim_odd,
            reduced.dim_even,
            reduced.dim_odd,
            chi.description(),
            lambda,
            kind.name(),
        )));
    }
    let p = alg.field().characteristic();
    let predicted = predicted_h1_dim(p, chi.is_zero(), lambda, kind);
    let matched = predicted.map(|d| d == full.dim_total());
    let coord_labels = (0..rep.dim()).map(|c| rep.coord_label(c)).collect();
    Ok(InstanceRecord {
        chi: chi_spec,
        lambda1: lambda.l1.to_string(),
        lambda2: lambda.l2.to_string(),
        module: kind,
        module_dim: rep.dim(),
        dim_h1: full.dim_total(),
        dim_even: full.dim_even,
        dim_odd: full.dim_odd,
        predicted,
        matched,
        time_ms: start.elapsed().as_millis(),
        representatives: full.representatives,
        coord_labels,
    })
}

/// A full sweep result.
pub struct Table {
    pub p: u64,
    pub field_name: String,
    pub rows: Vec<InstanceRecord>,
}

impl Table {
    pub fn mismatches(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.matched == Some(false))
            .count()
    }
}

/// Run every requested instance: all admissible weights (or the one
/// given), for each requested module kind, in deterministic
/// coefficient-lexicographic order regardless of parallel scheduling.
pub fn sweep(
    p: u64,
    chi_spec: ChiSpec,
    lambda_spec: &LambdaSpec,
    kinds: &[ModuleKind],
    jobs: Option<usize>,
) -> Result<Table> {
    let field = chi_spec.field(p)?;
    let alg = SuperAlgebra::sl21(&field);
    let chi = chi_spec.lift(&field);
    let lambdas: Vec<HighestWeight> = match lambda_spec {
        LambdaSpec::All => admissible_weights(&field, &chi)?,
        LambdaSpec::Pair(a, b) => {
            let lam = HighestWeight::new(field.parse(a)?, field.parse(b)?);
            if !lam.admissible_for(&chi) {
                return Err(Error::InadmissibleWeight(lam.to_string()));
            }
            vec![lam]
        }
    };
    let work: Vec<(HighestWeight, ModuleKind)> = lambdas
        .iter()
        .flat_map(|lam| kinds.iter().map(move |&k| (lam.clone(), k)))
        .collect();

    let compute = || -> Vec<Result<InstanceRecord>> {
        work.par_iter()
            .map(|(lam, kind)| run_instance(&alg, chi_spec, &chi, lam, *kind))
            .collect()
    };
    let results = match jobs {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(compute),
        _ => compute(),
    };
    let rows = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(Table {
        p,
        field_name: field.name(),
        rows,
    })
}

fn representative_json(phi: &Cochain) -> serde_json::Value {
    let mut values = serde_json::Map::new();
    for x in BasisLabel::ALL {
        let v = phi.value(x);
        let coords: Vec<Vec<u64>> = (0..v.cols()).map(|c| v.get(0, c).coeffs().to_vec()).collect();
        values.insert(x.name().to_string(), json!(coords));
    }
    json!({
        "parity": if phi.parity() == Parity::Odd { "odd" } else { "even" },
        "values": values,
    })
}

/// The documented JSON schema:
/// `{meta: {p, field, tool-version}, rows: [{chi, lambda, module, dim_h1,
/// dim_even, dim_odd, predicted, match, representatives?}]}`.
pub fn emit_json(table: &Table, show_cocycles: bool) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = table
        .rows
        .iter()
        .map(|r| {
            let mut row = json!({
                "chi": chi_json(r.chi),
                "lambda": [r.lambda1, r.lambda2],
                "module": r.module.name(),
                "dim_h1": r.dim_h1,
                "dim_even": r.dim_even,
                "dim_odd": r.dim_odd,
                "predicted": r.predicted,
                "match": r.matched,
            });
            if show_cocycles {
                let reps: Vec<serde_json::Value> =
                    r.representatives.iter().map(representative_json).collect();
                row.as_object_mut()
                    .expect("row is an object")
                    .insert("representatives".to_string(), json!(reps));
            }
            row
        })
        .collect();
    json!({
        "meta": {
            "p": table.p,
            "field": table.field_name,
            "tool-version": TOOL_VERSION,
        },
        "rows": rows,
    })
}

fn chi_json(chi: ChiSpec) -> serde_json::Value {
    let (r, s) = chi.params();
    json!({ "kind": chi.kind_name(), "r": r, "s": s })
}

/// Fixed-header CSV:
/// `p,chi_kind,r,s,lambda1,lambda2,module,dim_h1,dim_even,dim_odd,predicted,match`.
pub fn emit_csv(table: &Table) -> String {
    let mut out =
        String::from("p,chi_kind,r,s,lambda1,lambda2,module,dim_h1,dim_even,dim_odd,predicted,match\n");
    for r in &table.rows {
        let (cr, cs) = r.chi.params();
        let predicted = r
            .predicted
            .map(|d| d.to_string())
            .unwrap_or_default();
        let matched = r
            .matched
            .map(|m| m.to_string())
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            table.p,
            r.chi.kind_name(),
            cr,
            cs,
            r.lambda1,
            r.lambda2,
            r.module.name(),
            r.dim_h1,
            r.dim_even,
            r.dim_odd,
            predicted,
            matched,
        ));
    }
    out
}
