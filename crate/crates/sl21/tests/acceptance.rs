//! Acceptance suite: one test per criterion, each printing a single
//! `ACCEPTANCE <n> (<name>): PASS/FAIL` line (visible with `--nocapture`).
//!
//! The heavy sweeps are computed once and shared across criteria; every
//! instance records both computation routes and a full module validation,
//! so the criteria below only inspect numbers.

use std::sync::OnceLock;
use std::time::Instant;

use sl21::cohomology::{coboundary_space, h1_full, h1_weight_reduced, is_cocycle, is_inner, standard_cocycle};
use sl21::field::Field;
use sl21::linalg::{largest_invariant_subspace, MatrixF, Subspace};
use sl21::modules::{
    admissible_weights, build_kac, build_simple, simple_structure_facts, validate_rep,
    verify_structure_dimension, verify_structure_relations, HighestWeight, ModuleRep, PChar,
};
use sl21::superalgebra::{Parity, SuperAlgebra};
use sl21::sweep::ModuleKind;

struct Outcome {
    /// Lifted residues when the weight lies over the prime subfield.
    lift: Option<(u64, u64)>,
    lambda: String,
    full: (usize, usize),
    reduced: (usize, usize),
}

impl Outcome {
    fn total(&self) -> usize {
        self.full.0 + self.full.1
    }
}

struct Block {
    outcomes: Vec<Outcome>,
    secs: f64,
}

struct Data {
    /// chi = 0 Kac sweeps for p = 5, 7.
    kac_zero: Vec<(u64, Block)>,
    /// chi = 0 simple sweeps for p = 5, 7.
    simple_zero: Vec<(u64, Block)>,
    /// nilpotent r = 0 Kac sweep at p = 5 plus the sampled r = 1 sweep
    /// over the Artin-Schreier field; timed together.
    nilpotent_kac: Block,
    nilpotent_sampled: usize,
    /// semisimple (r, s) in {(1,0), (1,1), (2,3)} over the Artin-Schreier
    /// extension of F_5, sampled weights, both module kinds.
    semisimple: Vec<((i64, i64), Block)>,
    validation_failures: Vec<String>,
    instances: usize,
}

fn compute_one(
    alg: &SuperAlgebra,
    chi: &PChar,
    lam: &HighestWeight,
    kind: ModuleKind,
    validation_failures: &mut Vec<String>,
) -> Outcome {
    let rep: ModuleRep = match kind {
        ModuleKind::Kac => build_kac(alg, chi, lam).expect("admissible weight"),
        ModuleKind::Simple => build_simple(alg, chi, lam).expect("admissible weight"),
    };
    let report = validate_rep(alg, &rep);
    if let Some(msg) = report.first_failure {
        validation_failures.push(format!(
            "chi = {}, lambda = {}, {}: {msg}",
            chi.description(),
            lam,
            kind.name()
        ));
    }
    let full = h1_full(alg, &rep).expect("full route");
    let reduced = h1_weight_reduced(alg, &rep).expect("reduced route");
    let lift = match (lam.l1.lift_to_int(), lam.l2.lift_to_int()) {
        (Ok(a), Ok(b)) => Some((a, b)),
        _ => None,
    };
    Outcome {
        lift,
        lambda: lam.to_string(),
        full: (full.dim_even, full.dim_odd),
        reduced: (reduced.dim_even, reduced.dim_odd),
    }
}

/// Deterministic sample: every other admissible weight, in canonical order.
fn sample(lams: &[HighestWeight]) -> Vec<HighestWeight> {
    lams.iter().step_by(2).cloned().collect()
}

fn data() -> &'static Data {
    static DATA: OnceLock<Data> = OnceLock::new();
    DATA.get_or_init(|| {
        let mut validation_failures = Vec::new();
        let mut instances = 0usize;

        let mut kac_zero = Vec::new();
        let mut simple_zero = Vec::new();
        for p in [5u64, 7] {
            let f = Field::prime(p).unwrap();
            let alg = SuperAlgebra::sl21(&f);
            let chi = PChar::zero(&f);
            let lams = admissible_weights(&f, &chi).unwrap();
            assert_eq!(lams.len(), (p * p) as usize);

            let t = Instant::now();
            let outcomes: Vec<Outcome> = lams
                .iter()
                .map(|lam| {
                    instances += 1;
                    compute_one(&alg, &chi, lam, ModuleKind::Kac, &mut validation_failures)
                })
                .collect();
            kac_zero.push((
                p,
                Block {
                    outcomes,
                    secs: t.elapsed().as_secs_f64(),
                },
            ));

            let t = Instant::now();
            let outcomes: Vec<Outcome> = lams
                .iter()
                .map(|lam| {
                    instances += 1;
                    compute_one(&alg, &chi, lam, ModuleKind::Simple, &mut validation_failures)
                })
                .collect();
            simple_zero.push((
                p,
                Block {
                    outcomes,
                    secs: t.elapsed().as_secs_f64(),
                },
            ));
        }

        // Nilpotent branch at p = 5: r = 0 over F_5 (all weights) and
        // r = 1 over the Artin-Schreier extension (sampled).
        let t = Instant::now();
        let mut outcomes = Vec::new();
        {
            let f = Field::prime(5).unwrap();
            let alg = SuperAlgebra::sl21(&f);
            let chi = PChar::nilpotent(f.zero());
            for lam in admissible_weights(&f, &chi).unwrap() {
                instances += 1;
                outcomes.push(compute_one(
                    &alg,
                    &chi,
                    &lam,
                    ModuleKind::Kac,
                    &mut validation_failures,
                ));
            }
        }
        let nilpotent_sampled;
        {
            let e = Field::artin_schreier(5).unwrap();
            let alg = SuperAlgebra::sl21(&e);
            let chi = PChar::nilpotent(e.one());
            let lams = sample(&admissible_weights(&e, &chi).unwrap());
            nilpotent_sampled = lams.len();
            for lam in &lams {
                instances += 1;
                outcomes.push(compute_one(
                    &alg,
                    &chi,
                    lam,
                    ModuleKind::Kac,
                    &mut validation_failures,
                ));
            }
        }
        let nilpotent_kac = Block {
            outcomes,
            secs: t.elapsed().as_secs_f64(),
        };

        // Semisimple nonzero characters over the extension, both kinds.
        let e = Field::artin_schreier(5).unwrap();
        let alg = SuperAlgebra::sl21(&e);
        let mut semisimple = Vec::new();
        for (r, s) in [(1i64, 0i64), (1, 1), (2, 3)] {
            let chi = PChar::semisimple(e.from_int(r), e.from_int(s));
            let lams = sample(&admissible_weights(&e, &chi).unwrap());
            let t = Instant::now();
            let mut outcomes = Vec::new();
            for lam in &lams {
                for kind in [ModuleKind::Kac, ModuleKind::Simple] {
                    instances += 1;
                    outcomes.push(compute_one(&alg, &chi, lam, kind, &mut validation_failures));
                }
            }
            semisimple.push((
                (r, s),
                Block {
                    outcomes,
                    secs: t.elapsed().as_secs_f64(),
                },
            ));
        }

        Data {
            kac_zero,
            simple_zero,
            nilpotent_kac,
            nilpotent_sampled,
            semisimple,
            validation_failures,
            instances,
        }
    })
}

fn finish(n: u32, name: &str, detail: String, failures: Vec<String>) {
    if failures.is_empty() {
        println!("ACCEPTANCE {n} ({name}): PASS — {detail}");
    } else {
        let msg = format!(
            "ACCEPTANCE {n} ({name}): FAIL — {} deviation(s): {}",
            failures.len(),
            failures.join("; ")
        );
        println!("{msg}");
        panic!("{msg}");
    }
}

#[test]
fn criterion_1_kac_h1_dimension_table() {
    let d = data();
    let mut failures = Vec::new();
    let mut detail = Vec::new();
    for (p, block) in &d.kac_zero {
        let top = p - 1;
        for o in &block.outcomes {
            let (l1, l2) = o.lift.expect("zero character weights lie over F_p");
            let expected = if (l1, l2) == (top, top - 1) || (l1, l2) == (top - 1, 0) {
                1
            } else {
                0
            };
            if o.total() != expected {
                failures.push(format!(
                    "p={p} lambda={} got {} expected {expected}",
                    o.lambda,
                    o.total()
                ));
            }
        }
        if block.secs >= 10.0 {
            failures.push(format!("p={p} sweep took {:.1}s (limit 10s)", block.secs));
        }
        detail.push(format!(
            "p={p}: {} weights in {:.2}s",
            block.outcomes.len(),
            block.secs
        ));
    }
    finish(1, "kac h1 dimension table", detail.join(", "), failures);
}

#[test]
fn criterion_2_nilpotent_kac_vanishing() {
    let d = data();
    let mut failures = Vec::new();
    let block = &d.nilpotent_kac;
    for o in &block.outcomes {
        if o.total() != 0 {
            failures.push(format!("lambda={} got {} expected 0", o.lambda, o.total()));
        }
    }
    if d.nilpotent_sampled < 10 {
        failures.push(format!(
            "only {} sampled extension-field weights (need >= 10)",
            d.nilpotent_sampled
        ));
    }
    if block.secs >= 30.0 {
        failures.push(format!("sweep took {:.1}s (limit 30s)", block.secs));
    }
    finish(
        2,
        "nilpotent kac vanishing",
        format!(
            "{} instances ({} over the extension field) in {:.2}s",
            block.outcomes.len(),
            d.nilpotent_sampled,
            block.secs
        ),
        failures,
    );
}

#[test]
fn criterion_3_simple_h1_dimension_table() {
    let d = data();
    let mut failures = Vec::new();
    let mut detail = Vec::new();
    for (p, block) in &d.simple_zero {
        let top = p - 1;
        for o in &block.outcomes {
            let (l1, l2) = o.lift.expect("zero character weights lie over F_p");
            let expected = if (l1, l2) == (top, top) || (l1, l2) == (1, 0) {
                1
            } else if (l1, l2) == (top, 0) || (l1, l2) == (top, 1) {
                2
            } else {
                0
            };
            if o.total() != expected {
                failures.push(format!(
                    "p={p} lambda={} got {} expected {expected}",
                    o.lambda,
                    o.total()
                ));
            }
        }
        if block.secs >= 30.0 {
            failures.push(format!("p={p} sweep took {:.1}s (limit 30s)", block.secs));
        }
        detail.push(format!(
            "p={p}: {} weights in {:.2}s",
            block.outcomes.len(),
            block.secs
        ));
    }
    finish(3, "simple h1 dimension table", detail.join(", "), failures);
}

#[test]
fn criterion_4_nonzero_semisimple_vanishing() {
    let d = data();
    let mut failures = Vec::new();
    let mut detail = Vec::new();
    for ((r, s), block) in &d.semisimple {
        let weights = block.outcomes.len() / 2;
        if weights < 10 {
            failures.push(format!("(r,s)=({r},{s}): only {weights} weights sampled"));
        }
        for o in &block.outcomes {
            if o.total() != 0 {
                failures.push(format!(
                    "(r,s)=({r},{s}) lambda={} got {} expected 0",
                    o.lambda,
                    o.total()
                ));
            }
        }
        detail.push(format!(
            "(r,s)=({r},{s}): {} instances in {:.2}s",
            block.outcomes.len(),
            block.secs
        ));
    }
    finish(4, "nonzero semisimple vanishing", detail.join(", "), failures);
}

#[test]
fn criterion_5_weight_reduction_agreement() {
    let d = data();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    let all_blocks = d
        .kac_zero
        .iter()
        .map(|(_, b)| b)
        .chain(d.simple_zero.iter().map(|(_, b)| b))
        .chain(std::iter::once(&d.nilpotent_kac))
        .chain(d.semisimple.iter().map(|(_, b)| b));
    for block in all_blocks {
        for o in &block.outcomes {
            checked += 1;
            if o.full != o.reduced {
                failures.push(format!(
                    "lambda={}: full {:?} vs weight-reduced {:?}",
                    o.lambda, o.full, o.reduced
                ));
            }
        }
    }
    finish(
        5,
        "weight reduction agreement",
        format!("{checked} instances agree in total and per parity"),
        failures,
    );
}

#[test]
fn criterion_6_simple_structure_oracle() {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for p in [5u64, 7] {
        let f = Field::prime(p).unwrap();
        let alg = SuperAlgebra::sl21(&f);
        for chi in [PChar::zero(&f), PChar::nilpotent(f.zero())] {
            for lam in admissible_weights(&f, &chi).unwrap() {
                checked += 1;
                let facts = simple_structure_facts(&chi, &lam).expect("in-hypothesis character");
                let s = build_simple(&alg, &chi, &lam).expect("admissible weight");
                if let Err(msg) = verify_structure_relations(&s, &facts) {
                    failures.push(format!(
                        "p={p} chi={} lambda={lam}: {msg}",
                        chi.description()
                    ));
                }
                if let Err(msg) = verify_structure_dimension(&s, &facts) {
                    failures.push(format!(
                        "p={p} chi={} lambda={lam}: {msg}",
                        chi.description()
                    ));
                }
            }
        }
    }
    finish(
        6,
        "simple structure oracle",
        format!("{checked} (chi, lambda) structure checks"),
        failures,
    );
}

#[test]
fn criterion_7_explicit_cocycles_span_h1() {
    let f = Field::prime(5).unwrap();
    let alg = SuperAlgebra::sl21(&f);
    let chi = PChar::zero(&f);
    let mut failures = Vec::new();
    // (lambda, module kind, catalogued cocycle indices)
    let table: &[((i64, i64), ModuleKind, &[usize])] = &[
        ((4, 3), ModuleKind::Kac, &[1]),
        ((3, 0), ModuleKind::Kac, &[2]),
        ((4, 4), ModuleKind::Simple, &[3]),
        ((4, 0), ModuleKind::Simple, &[4, 5]),
        ((4, 1), ModuleKind::Simple, &[6, 7]),
        ((1, 0), ModuleKind::Simple, &[8]),
    ];
    for &((a, b), kind, set) in table {
        let lam = HighestWeight::from_ints(&f, a, b);
        let rep = match kind {
            ModuleKind::Kac => build_kac(&alg, &chi, &lam).unwrap(),
            ModuleKind::Simple => build_simple(&alg, &chi, &lam).unwrap(),
        };
        let mut cochains = Vec::new();
        for &k in set {
            let psi = standard_cocycle(k, &rep).unwrap();
            if !is_cocycle(&alg, &rep, &psi) {
                failures.push(format!("psi{k} at lambda=({a},{b}) is not a cocycle"));
            }
            if is_inner(&rep, &psi) {
                failures.push(format!("psi{k} at lambda=({a},{b}) is inner"));
            }
            cochains.push(psi);
        }
        // Independence modulo the coboundaries, per parity.
        let mut independent = 0usize;
        for parity in [Parity::Even, Parity::Odd] {
            let b1 = coboundary_space(&rep, parity);
            let mut rows: Vec<MatrixF> = vec![b1.space.basis().clone()];
            let mut count = 0usize;
            for psi in cochains.iter().filter(|c| c.parity() == parity) {
                rows.push(psi.flatten());
                count += 1;
            }
            if count > 0 {
                let refs: Vec<&MatrixF> = rows.iter().collect();
                let joint = Subspace::span(&MatrixF::stack_vertical(&refs));
                independent += joint.dim() - b1.dim();
            }
        }
        if independent != set.len() {
            failures.push(format!(
                "catalogued set at lambda=({a},{b}) spans only {independent} of {} classes",
                set.len()
            ));
        }
        let h1 = h1_full(&alg, &rep).unwrap();
        if h1.dim_total() != set.len() {
            failures.push(format!(
                "catalogued set at lambda=({a},{b}) has {} elements but dim H1 = {}",
                set.len(),
                h1.dim_total()
            ));
        }
    }
    finish(
        7,
        "explicit cocycles span h1",
        "8 catalogued cocycles on 6 instances".to_string(),
        failures,
    );
}

/// Brute-force largest-invariant-subspace oracle over F_3, dimension <= 3.
mod brute {
    use super::*;

    pub fn all_subspaces_f3(n: usize) -> Vec<Subspace> {
        let f = Field::prime(3).unwrap();
        let total = 3usize.pow(n as u32);
        let vectors: Vec<Vec<i64>> = (1..total)
            .map(|code| {
                let mut c = code;
                (0..n)
                    .map(|_| {
                        let e = (c % 3) as i64;
                        c /= 3;
                        e
                    })
                    .collect()
            })
            .collect();
        let mut seen: Vec<Subspace> = vec![Subspace::zero(&f, n)];
        let k = vectors.len();
        let mut push = |rows: Vec<&[i64]>| {
            let s = Subspace::span(&MatrixF::from_int_rows(&f, &rows));
            if !seen.contains(&s) {
                seen.push(s);
            }
        };
        for i in 0..k {
            push(vec![&vectors[i]]);
            for j in (i + 1)..k {
                push(vec![&vectors[i], &vectors[j]]);
                for l in (j + 1)..k {
                    push(vec![&vectors[i], &vectors[j], &vectors[l]]);
                }
            }
        }
        seen
    }

    pub fn oracle(ops: &[MatrixF], within: &Subspace) -> Subspace {
        let mut best = Subspace::zero(within.field(), within.ambient_dim());
        for s in all_subspaces_f3(within.ambient_dim()) {
            if !within.contains_subspace(&s) {
                continue;
            }
            let invariant = ops
                .iter()
                .all(|op| (0..s.dim()).all(|i| s.contains(&op.apply(&s.basis().row(i)))));
            if invariant && s.dim() > best.dim() {
                best = s;
            }
        }
        best
    }
}

#[test]
fn criterion_8_property_suites() {
    use rand::{Rng, SeedableRng};
    let mut failures = Vec::new();

    // (a) Module validation passed on every instance built for criteria 1-4:
    // 64 bracket-compatibility identities and 4 p-character identities each.
    let d = data();
    for msg in &d.validation_failures {
        failures.push(format!("validation: {msg}"));
    }
    let validated = d.instances;

    // (b) The algebra self-checks (including the 8^3 graded Jacobi scan)
    // run at construction; exercise them over every field the suite uses.
    for p in [3u64, 5, 7] {
        SuperAlgebra::sl21(&Field::prime(p).unwrap());
    }
    SuperAlgebra::sl21(&Field::artin_schreier(5).unwrap());

    // (c) Invariant-subspace fixpoint versus the all-subspace oracle.
    let f3 = Field::prime(3).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
    let subspaces = brute::all_subspaces_f3(3);
    for case in 0..20 {
        let nops = 1 + (case % 2);
        let ops: Vec<MatrixF> = (0..nops)
            .map(|_| MatrixF::from_fn(&f3, 3, 3, |_, _| f3.from_int(rng.gen_range(0..3))))
            .collect();
        let within = subspaces[rng.gen_range(0..subspaces.len())].clone();
        let got = largest_invariant_subspace(&ops, &within);
        let want = brute::oracle(&ops, &within);
        if got != want {
            failures.push(format!(
                "invariant-subspace case {case}: fixpoint dim {} vs oracle dim {}",
                got.dim(),
                want.dim()
            ));
        }
    }

    // (d) Rank-nullity on 1000 random matrices over F_5 and over the
    // extension field.
    for field in [Field::prime(5).unwrap(), Field::artin_schreier(5).unwrap()] {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1000 + field.degree() as u64);
        for _ in 0..1000 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let m = MatrixF::from_fn(&field, rows, cols, |_, _| {
                let coeffs: Vec<i64> = (0..field.degree())
                    .map(|_| rng.gen_range(0..field.characteristic() as i64))
                    .collect();
                field.element(&coeffs)
            });
            let r = m.rref();
            let ns = m.nullspace();
            if r.rank + ns.dim() != cols {
                failures.push(format!(
                    "rank-nullity fails over {}: {} + {} != {cols}",
                    field.name(),
                    r.rank,
                    ns.dim()
                ));
                break;
            }
        }
    }

    finish(
        8,
        "property suites",
        format!(
            "{validated} validated modules, 20 invariant-subspace oracles, 2000 rank-nullity checks"
        ),
        failures,
    );
}
