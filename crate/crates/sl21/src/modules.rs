//! Reduced Kac modules `Z^chi(lambda)` of sl(2,1), their radicals and simple
//! quotients `S^chi(lambda)`.
//!
//! A module is held as eight explicit action matrices over the base field,
//! together with a parity and a weight for every basis vector and a marked
//! highest-weight line. Kac modules are populated directly from the closed
//! action formulas on the monomial basis `<i,j,k> = e31^i e32^j e21^k v0`;
//! simple modules arise by factoring out the radical, computed generically
//! as the largest action-invariant subspace avoiding the highest-weight
//! line.
//!
//! [`simple_structure_facts`] encodes the independently known bases and
//! linear relations of the simple quotients for zero and nilpotent-with-
//! `chi(h1) = 0` p-characters; it is used as an oracle against the generic
//! radical computation, never as an input to it.

use std::fmt;

use serde_json::json;

use crate::field::{Field, FieldElement};
use crate::linalg::{self, MatrixF, Subspace};
use crate::superalgebra::{BasisLabel, Parity, SuperAlgebra, Weight};
use crate::{Error, Result};

/// Orbit class of a p-character on the even part.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ChiKind {
    Zero,
    Semisimple,
    Nilpotent,
}

/// A p-character `chi`, vanishing on the odd part, determined by its orbit
/// class and the parameters `(r, s)`:
/// semisimple: `chi(h1) = r, chi(h2) = s, chi(e12) = chi(e21) = 0`;
/// nilpotent: `chi(h1) = chi(h2) = r, chi(e12) = 0, chi(e21) = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct PChar {
    field: Field,
    kind: ChiKind,
    r: FieldElement,
    s: FieldElement,
}

impl PChar {
    pub fn zero(field: &Field) -> PChar {
        PChar {
            field: field.clone(),
            kind: ChiKind::Zero,
            r: field.zero(),
            s: field.zero(),
        }
    }

    pub fn semisimple(r: FieldElement, s: FieldElement) -> PChar {
        assert!(r.field() == s.field());
        PChar {
            field: r.field().clone(),
            kind: ChiKind::Semisimple,
            r,
            s,
        }
    }

    pub fn nilpotent(r: FieldElement) -> PChar {
        PChar {
            field: r.field().clone(),
            kind: ChiKind::Nilpotent,
            s: r.clone(),
            r,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn kind(&self) -> ChiKind {
        self.kind
    }

    pub fn r(&self) -> &FieldElement {
        &self.r
    }

    pub fn s(&self) -> &FieldElement {
        &self.s
    }

    /// Whether every evaluation vanishes (the zero p-character).
    pub fn is_zero(&self) -> bool {
        match self.kind {
            ChiKind::Zero => true,
            ChiKind::Semisimple => self.r.is_zero() && self.s.is_zero(),
            ChiKind::Nilpotent => false,
        }
    }

    pub fn on(&self, x: BasisLabel) -> FieldElement {
        match x {
            BasisLabel::H1 => self.r.clone(),
            BasisLabel::H2 => match self.kind {
                ChiKind::Nilpotent => self.r.clone(),
                _ => self.s.clone(),
            },
            BasisLabel::E21 => match self.kind {
                ChiKind::Nilpotent => self.field.one(),
                _ => self.field.zero(),
            },
            _ => self.field.zero(),
        }
    }

    pub fn description(&self) -> String {
        match self.kind {
            ChiKind::Zero => "zero".to_string(),
            ChiKind::Semisimple => format!("ss:{},{}", self.r, self.s),
            ChiKind::Nilpotent => format!("nilp:{}", self.r),
        }
    }
}

impl fmt::Debug for PChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description())
    }
}

/// A highest weight `(lambda1, lambda2)`.
#[derive(Clone, PartialEq, Eq)]
pub struct HighestWeight {
    pub l1: FieldElement,
    pub l2: FieldElement,
}

impl HighestWeight {
    pub fn new(l1: FieldElement, l2: FieldElement) -> HighestWeight {
        assert!(l1.field() == l2.field());
        HighestWeight { l1, l2 }
    }

    pub fn from_ints(field: &Field, l1: i64, l2: i64) -> HighestWeight {
        HighestWeight::new(field.from_int(l1), field.from_int(l2))
    }

    /// Compatibility with a p-character: `lambda_i^p - lambda_i = chi(h_i)^p`.
    pub fn admissible_for(&self, chi: &PChar) -> bool {
        let p = self.l1.field().characteristic();
        let c1 = chi.on(BasisLabel::H1).pow(p);
        let c2 = chi.on(BasisLabel::H2).pow(p);
        &self.l1.pow(p) - &self.l1 == c1 && &self.l2.pow(p) - &self.l2 == c2
    }

    pub fn weight(&self) -> Weight {
        Weight::new(self.l1.clone(), self.l2.clone())
    }
}

impl fmt::Debug for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.l1, self.l2)
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.l1, self.l2)
    }
}

/// All solutions of `x^p - x = c` in `field`, found by solving the
/// `F_p`-linear map `x -> x^p - x` on coefficient coordinates. The solution
/// set, when nonempty, is a coset of the prime subfield.
pub fn artin_schreier_roots(field: &Field, c: &FieldElement) -> Vec<FieldElement> {
    let p = field.characteristic();
    let n = field.degree();
    let fp = Field::prime(p).expect("characteristic is a valid prime");
    // Column j holds the coefficients of (t^j)^p - t^j.
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let mut tj = field.zero();
        let mut coeffs = vec![0i64; n];
        coeffs[j] = 1;
        tj = &tj + &field.element(&coeffs);
        let image = &tj.frobenius() - &tj;
        columns.push(image.coeffs().to_vec());
    }
    let a = MatrixF::from_fn(&fp, n, n, |i, j| fp.from_int(columns[j][i] as i64));
    let b = MatrixF::from_fn(&fp, 1, n, |_, i| fp.from_int(c.coeffs()[i] as i64));
    let Some(x0) = a.solve(&b) else {
        return Vec::new();
    };
    let kernel = a.nullspace();
    // Enumerate the coset x0 + kernel; the kernel is the prime subfield.
    let mut out = Vec::new();
    let kdim = kernel.dim();
    let count = (p as usize).pow(kdim as u32);
    for code in 0..count {
        let mut words: Vec<i64> = (0..n).map(|i| x0.get(0, i).coeffs()[0] as i64).collect();
        let mut rem = code;
        for kv in 0..kdim {
            let mult = (rem % p as usize) as i64;
            rem /= p as usize;
            for i in 0..n {
                words[i] += mult * kernel.basis().get(kv, i).coeffs()[0] as i64;
            }
        }
        out.push(field.element(&words));
    }
    out.sort_by(|a, b| a.sort_key().cmp(b.sort_key()));
    out.dedup();
    out
}

/// All highest weights admissible for `chi` in `field`, ordered
/// coefficient-lexicographically by `lambda1` then `lambda2`.
pub fn admissible_weights(field: &Field, chi: &PChar) -> Result<Vec<HighestWeight>> {
    let p = field.characteristic();
    let c1 = chi.on(BasisLabel::H1).pow(p);
    let c2 = chi.on(BasisLabel::H2).pow(p);
    let l1s = artin_schreier_roots(field, &c1);
    let l2s = artin_schreier_roots(field, &c2);
    if l1s.is_empty() || l2s.is_empty() {
        return Err(Error::NoAdmissibleWeights);
    }
    let mut out = Vec::with_capacity(l1s.len() * l2s.len());
    for l1 in &l1s {
        for l2 in &l2s {
            out.push(HighestWeight::new(l1.clone(), l2.clone()));
        }
    }
    Ok(out)
}

/// Where a module representation came from.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Kac,
    Quotient,
    Simple,
}

/// A finite-dimensional representation of sl(2,1) with a chosen graded
/// basis: eight action matrices, per-vector parities and weights, a marked
/// highest-weight line and a projection from the monomial coordinates of
/// the originating Kac module. Immutable once built.
pub struct ModuleRep {
    field: Field,
    dim: usize,
    actions: Vec<MatrixF>,
    parities: Vec<Parity>,
    weights: Vec<Weight>,
    v0: Option<usize>,
    chi: PChar,
    lambda: HighestWeight,
    provenance: Provenance,
    kac_k_max: usize,
    /// Rows indexed by Kac coordinates; row r is the image of the r-th
    /// monomial basis vector in this module's coordinates.
    kac_projection: MatrixF,
    /// Original monomial label of each coordinate.
    coord_labels: Vec<(u8, u8, u16)>,
}

fn kac_index(k_max: usize, i: u8, j: u8, k: usize) -> usize {
    ((2 * i + j) as usize) * (k_max + 1) + k
}

impl ModuleRep {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, x: BasisLabel) -> &MatrixF {
        &self.actions[x.index()]
    }

    pub fn actions(&self) -> &[MatrixF] {
        &self.actions
    }

    pub fn apply(&self, x: BasisLabel, v: &MatrixF) -> MatrixF {
        self.actions[x.index()].apply(v)
    }

    pub fn parity(&self, coord: usize) -> Parity {
        self.parities[coord]
    }

    pub fn weight(&self, coord: usize) -> &Weight {
        &self.weights[coord]
    }

    pub fn v0_index(&self) -> Option<usize> {
        self.v0
    }

    pub fn chi(&self) -> &PChar {
        &self.chi
    }

    pub fn lambda(&self) -> &HighestWeight {
        &self.lambda
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn k_max(&self) -> usize {
        self.kac_k_max
    }

    pub fn coord_label(&self, coord: usize) -> (u8, u8, u16) {
        self.coord_labels[coord]
    }

    /// Coordinates of a given parity block.
    pub fn parity_coords(&self, parity: Parity) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| self.parities[i] == parity)
            .collect()
    }

    /// The image in this module of the monomial `<i,j,k>`. The index `k` is
    /// first reduced to its smallest nonnegative residue mod p; a residue
    /// beyond the basis range of the originating Kac module names the zero
    /// vector.
    pub fn label_vector(&self, i: u8, j: u8, k: i64) -> MatrixF {
        assert!(i <= 1 && j <= 1);
        let p = self.field.characteristic() as i64;
        let kr = k.rem_euclid(p) as usize;
        if kr > self.kac_k_max {
            return MatrixF::zeros(&self.field, 1, self.dim);
        }
        self.kac_projection
            .row(kac_index(self.kac_k_max, i, j, kr))
    }

    /// The zero-weight-shift grading data: nonzero action entries must move
    /// weight by the generator root and parity by the generator parity, and
    /// the Cartan actions must be diagonal with the recorded weights.
    fn check_grading(&self, alg: &SuperAlgebra) -> std::result::Result<(), String> {
        for x in BasisLabel::ALL {
            let m = &self.actions[x.index()];
            let root = alg.root(x);
            for r in 0..self.dim {
                for c in 0..self.dim {
                    if m.entry_is_zero(r, c) {
                        continue;
                    }
                    let expect = self.weights[c].add(root);
                    if self.weights[r] != expect {
                        return Err(format!(
                            "weight grading fails for {x} at entry ({r}, {c})"
                        ));
                    }
                    if self.parities[r] != self.parities[c].combine(x.parity()) {
                        return Err(format!(
                            "parity grading fails for {x} at entry ({r}, {c})"
                        ));
                    }
                }
            }
        }
        for h in [BasisLabel::H1, BasisLabel::H2] {
            let m = &self.actions[h.index()];
            for r in 0..self.dim {
                for c in 0..self.dim {
                    let want = if r != c {
                        self.field.zero()
                    } else if h == BasisLabel::H1 {
                        self.weights[r].on_h1.clone()
                    } else {
                        self.weights[r].on_h2.clone()
                    };
                    if m.get(r, c) != want {
                        return Err(format!("{h} is not diagonal with the recorded weights"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Stable JSON document: field descriptor, dimension, basis labels and
    /// the eight action matrices as integer-coefficient arrays.
    pub fn to_json(&self) -> serde_json::Value {
        let field = json!({
            "p": self.field.characteristic(),
            "degree": self.field.degree(),
            "modulus": self.field.modulus(),
        });
        let basis: Vec<String> = self
            .coord_labels
            .iter()
            .map(|(i, j, k)| format!("<{i},{j},{k}>"))
            .collect();
        let mut actions = serde_json::Map::new();
        for x in BasisLabel::ALL {
            let m = &self.actions[x.index()];
            let rows: Vec<Vec<Vec<u64>>> = (0..m.rows())
                .map(|r| {
                    (0..m.cols())
                        .map(|c| m.entry_words(r, c).to_vec())
                        .collect()
                })
                .collect();
            actions.insert(x.name().to_string(), json!(rows));
        }
        json!({
            "field": field,
            "dim": self.dim,
            "basis": basis,
            "actions": actions,
        })
    }
}

impl fmt::Debug for ModuleRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ModuleRep({:?}, chi = {:?}, lambda = {:?}, dim {})",
            self.provenance, self.chi, self.lambda, self.dim
        )
    }
}

struct KacBuilder {
    field: Field,
    k_max: usize,
    wrap: bool,
    actions: Vec<MatrixF>,
}

impl KacBuilder {
    /// Accumulate `coeff * <ti,tj,tk>` into the column of source index
    /// `src` in the action of `x`. Out-of-range targets are an error unless
    /// the coefficient vanishes or the nilpotent residue convention wraps
    /// them.
    fn add_term(
        &mut self,
        x: BasisLabel,
        src: usize,
        coeff: FieldElement,
        ti: u8,
        tj: u8,
        tk: i64,
    ) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        let p = self.field.characteristic() as i64;
        let tk = if self.wrap { tk.rem_euclid(p) } else { tk };
        if tk < 0 || tk as usize > self.k_max {
            return Err(Error::LabelOutOfRange(ti, tj, tk));
        }
        let dst = kac_index(self.k_max, ti, tj, tk as usize);
        let m = &mut self.actions[x.index()];
        let cur = m.get(dst, src);
        m.set(dst, src, &(&cur + &coeff));
        Ok(())
    }
}

/// Build the reduced Kac module `Z^chi(lambda)` from the closed action
/// formulas on the basis `<i,j,k>`, `i,j` in `{0,1}` and
/// `0 <= k <= k_max`, where `k_max` is `lift(lambda1 - lambda2)` for a
/// semisimple character with `r = s` and `lambda1 - lambda2 != p - 1`,
/// and `p - 1` otherwise.
pub fn build_kac(alg: &SuperAlgebra, chi: &PChar, lambda: &HighestWeight) -> Result<ModuleRep> {
    let field = alg.field().clone();
    assert!(chi.field() == &field && lambda.l1.field() == &field);
    if !lambda.admissible_for(chi) {
        return Err(Error::InadmissibleWeight(lambda.to_string()));
    }
    let p = field.characteristic();
    let l1 = &lambda.l1;
    let l2 = &lambda.l2;
    let diff = l1 - l2;
    let k_max = match chi.kind() {
        ChiKind::Nilpotent => (p - 1) as usize,
        ChiKind::Zero | ChiKind::Semisimple => {
            if chi.r() == chi.s() {
                let d = diff
                    .lift_to_int()
                    .expect("r = s forces lambda1 - lambda2 into the prime subfield");
                if d == p - 1 {
                    (p - 1) as usize
                } else {
                    d as usize
                }
            } else {
                (p - 1) as usize
            }
        }
    };
    let wrap = chi.kind() == ChiKind::Nilpotent;
    let dim = 4 * (k_max + 1);

    let mut b = KacBuilder {
        field: field.clone(),
        k_max,
        wrap,
        actions: (0..8).map(|_| MatrixF::zeros(&field, dim, dim)).collect(),
    };

    let mut parities = vec![Parity::Even; dim];
    let mut weights = Vec::with_capacity(dim);
    let mut coord_labels = vec![(0u8, 0u8, 0u16); dim];
    weights.resize(dim, Weight::zero(&field));

    use BasisLabel::*;
    for i in 0..2u8 {
        for j in 0..2u8 {
            for k in 0..=k_max {
                let src = kac_index(k_max, i, j, k);
                coord_labels[src] = (i, j, k as u16);
                parities[src] = if (i + j) % 2 == 0 {
                    Parity::Even
                } else {
                    Parity::Odd
                };
                let ki = field.from_int(k as i64);
                weights[src] = Weight::new(
                    &(l1 + &field.from_int(j as i64)) - &ki,
                    &(l2 + &field.from_int(i as i64)) + &ki,
                );
                let sign_i = field.from_int(if i == 0 { 1 } else { -1 });
                let lowering = &ki * &(&(&diff - &ki) + &field.one());

                // h1 <i,j,k> = (lambda1 + j - k) <i,j,k>
                b.add_term(H1, src, weights[src].on_h1.clone(), i, j, k as i64)?;
                // h2 <i,j,k> = (lambda2 + i + k) <i,j,k>
                b.add_term(H2, src, weights[src].on_h2.clone(), i, j, k as i64)?;
                // e31 <i,j,k> = [i = 0] <1,j,k>
                if i == 0 {
                    b.add_term(E31, src, field.one(), 1, j, k as i64)?;
                }
                // e32 <i,j,k> = (-1)^i [j = 0] <i,1,k>
                if j == 0 {
                    b.add_term(E32, src, sign_i.clone(), i, 1, k as i64)?;
                }
                // e12 <i,j,k> = k(lambda1 - lambda2 - k + 1) <i,j,k-1>
                //               - [(i,j) = (1,0)] <0,1,k>
                b.add_term(E12, src, lowering.clone(), i, j, k as i64 - 1)?;
                if (i, j) == (1, 0) {
                    b.add_term(E12, src, field.from_int(-1), 0, 1, k as i64)?;
                }
                // e13 <i,j,k> = [j = 1] (-1)^i k(lambda1 - lambda2 - k + 1)
                //               <i,0,k-1> + [i = 1] (j + lambda1 - k) <0,j,k>
                if j == 1 {
                    b.add_term(E13, src, &sign_i * &lowering, i, 0, k as i64 - 1)?;
                }
                if i == 1 {
                    let c = &(&field.from_int(j as i64) + l1) - &ki;
                    b.add_term(E13, src, c, 0, j, k as i64)?;
                }
                // e21: raising with either delta truncation (semisimple) or
                // the wrapping residue convention (nilpotent).
                if (i, j) == (0, 1) {
                    b.add_term(E21, src, field.from_int(-1), 1, 0, k as i64)?;
                }
                let raising_allowed = if wrap {
                    true
                } else {
                    k as u64 != p - 1 && ki != diff
                };
                if raising_allowed {
                    b.add_term(E21, src, field.one(), i, j, k as i64 + 1)?;
                }
                // e23 <i,j,k> = [j = 1] ((-1)^i (lambda2 + k) - i) <i,0,k>
                //               + [i = 1] (raising) <0,j,k+1>
                if j == 1 {
                    let c = &(&sign_i * &(l2 + &ki)) - &field.from_int(i as i64);
                    b.add_term(E23, src, c, i, 0, k as i64)?;
                }
                if i == 1 && raising_allowed {
                    b.add_term(E23, src, field.one(), 0, j, k as i64 + 1)?;
                }
            }
        }
    }

    let rep = ModuleRep {
        field: field.clone(),
        dim,
        actions: b.actions,
        parities,
        weights,
        v0: Some(kac_index(k_max, 0, 0, 0)),
        chi: chi.clone(),
        lambda: lambda.clone(),
        provenance: Provenance::Kac,
        kac_k_max: k_max,
        kac_projection: MatrixF::identity(&field, dim),
        coord_labels,
    };
    if let Err(msg) = rep.check_grading(alg) {
        return Err(Error::Validation(msg));
    }
    Ok(rep)
}

/// Outcome of a full module validation.
pub struct ValidationReport {
    pub first_failure: Option<String>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Check that `rep` really is a module for the chi-reduced algebra:
/// (a) bracket compatibility
/// `rho([x,y]) = rho(x)rho(y) - (-1)^(|x||y|) rho(y)rho(x)` on all 64
/// ordered basis pairs, (b) the p-character identities
/// `rho(x)^p - rho(x^[p]) = chi(x)^p id` on the four even generators, and
/// (c) the weight/parity grading of every action matrix.
pub fn validate_rep(alg: &SuperAlgebra, rep: &ModuleRep) -> ValidationReport {
    let field = alg.field();
    let p = field.characteristic();
    for x in BasisLabel::ALL {
        for y in BasisLabel::ALL {
            let coeffs = alg.bracket_labels(x, y);
            let mut lhs = MatrixF::zeros(field, rep.dim, rep.dim);
            for z in BasisLabel::ALL {
                let c = coeffs.get(0, z.index());
                if !c.is_zero() {
                    lhs = lhs.add(&rep.action(z).scale(&c));
                }
            }
            let xy = rep.action(x).matmul(rep.action(y));
            let yx = rep.action(y).matmul(rep.action(x));
            let rhs = if x.parity().sign_product_negative(y.parity()) {
                xy.add(&yx)
            } else {
                xy.sub(&yx)
            };
            if lhs != rhs {
                return ValidationReport {
                    first_failure: Some(format!("bracket identity fails on ({x}, {y})")),
                };
            }
        }
    }
    for x in [BasisLabel::H1, BasisLabel::H2, BasisLabel::E12, BasisLabel::E21] {
        let power = rep.action(x).pow(p);
        let pvec = alg.p_power(x);
        let mut xp = MatrixF::zeros(field, rep.dim, rep.dim);
        for z in BasisLabel::ALL {
            let c = pvec.get(0, z.index());
            if !c.is_zero() {
                xp = xp.add(&rep.action(z).scale(&c));
            }
        }
        let scalar = rep.chi.on(x).pow(p);
        let want = MatrixF::identity(field, rep.dim).scale(&scalar);
        if power.sub(&xp) != want {
            return ValidationReport {
                first_failure: Some(format!("p-character identity fails on {x}")),
            };
        }
    }
    if let Err(msg) = rep.check_grading(alg) {
        return ValidationReport {
            first_failure: Some(msg),
        };
    }
    ValidationReport {
        first_failure: None,
    }
}

/// The weight-space decomposition: simultaneous eigenspaces of the Cartan
/// actions, in coefficient-lexicographic weight order. Their dimensions
/// always sum to `dim`.
pub fn weight_spaces(rep: &ModuleRep) -> Vec<(Weight, Subspace)> {
    let mut distinct: Vec<Weight> = Vec::new();
    for w in &rep.weights {
        if !distinct.contains(w) {
            distinct.push(w.clone());
        }
    }
    distinct.sort_by_key(|w| w.sort_key());
    let h1 = rep.action(BasisLabel::H1);
    let h2 = rep.action(BasisLabel::H2);
    let out: Vec<(Weight, Subspace)> = distinct
        .into_iter()
        .map(|w| {
            let space = linalg::simultaneous_eigenspace(
                &[h1.clone(), h2.clone()],
                &[w.on_h1.clone(), w.on_h2.clone()],
            );
            (w, space)
        })
        .collect();
    let total: usize = out.iter().map(|(_, s)| s.dim()).sum();
    assert_eq!(total, rep.dim, "weight spaces must fill the module");
    out
}

/// The radical: the largest submodule avoiding the highest-weight line,
/// computed as the invariant-subspace fixpoint inside the sum of all
/// non-highest weight spaces. Requires the highest-weight space to be a
/// line.
pub fn radical(rep: &ModuleRep) -> Result<Subspace> {
    let target = rep.lambda.weight();
    let top: Vec<usize> = (0..rep.dim)
        .filter(|&i| rep.weights[i] == target)
        .collect();
    if top.len() != 1 {
        return Err(Error::WeightLineNotUnique(top.len()));
    }
    let rest: Vec<usize> = (0..rep.dim).filter(|&i| rep.weights[i] != target).collect();
    let within = Subspace::coordinate_span(&rep.field, rep.dim, &rest);
    Ok(linalg::largest_invariant_subspace(&rep.actions, &within))
}

/// The quotient of `rep` by an action-invariant, parity- and weight-graded
/// subspace. Coordinates of the quotient are the non-pivot columns of the
/// subspace basis; the projection onto them is recorded so monomial label
/// expressions can still be evaluated.
pub fn quotient(alg: &SuperAlgebra, rep: &ModuleRep, sub: &Subspace) -> Result<ModuleRep> {
    quotient_with_provenance(alg, rep, sub, Provenance::Quotient)
}

fn quotient_with_provenance(
    alg: &SuperAlgebra,
    rep: &ModuleRep,
    sub: &Subspace,
    provenance: Provenance,
) -> Result<ModuleRep> {
    let field = rep.field.clone();
    if sub.ambient_dim() != rep.dim {
        return Err(Error::AmbientMismatch(sub.ambient_dim(), rep.dim));
    }
    // Invariance of the subspace under all eight actions.
    for x in BasisLabel::ALL {
        for i in 0..sub.dim() {
            let img = rep.apply(x, &sub.basis().row(i));
            if !sub.contains(&img) {
                return Err(Error::NotInvariant);
            }
        }
    }
    // The subspace must be spanned by its weight (hence parity) components.
    for i in 0..sub.dim() {
        let row = sub.basis().row(i);
        let mut seen: Vec<&Weight> = Vec::new();
        for w in &rep.weights {
            if seen.contains(&w) {
                continue;
            }
            seen.push(w);
            let mut component = MatrixF::zeros(&field, 1, rep.dim);
            for c in 0..rep.dim {
                if &rep.weights[c] == w {
                    let v = row.get(0, c);
                    component.set(0, c, &v);
                }
            }
            if !component.is_zero() && !sub.contains(&component) {
                return Err(Error::NotGraded);
            }
        }
    }

    let keep = sub.non_pivot_columns();
    let new_dim = keep.len();
    let w = field.width();
    let project = |v: &[u64]| -> Vec<u64> {
        let res = sub.residual_words(v);
        let mut out = vec![0u64; new_dim * w];
        for (newc, &oldc) in keep.iter().enumerate() {
            out[newc * w..(newc + 1) * w].copy_from_slice(&res[oldc * w..(oldc + 1) * w]);
        }
        out
    };

    let mut actions = Vec::with_capacity(8);
    for x in BasisLabel::ALL {
        let mut m = MatrixF::zeros(&field, new_dim, new_dim);
        for (newc, &oldc) in keep.iter().enumerate() {
            let mut unit = MatrixF::zeros(&field, 1, rep.dim);
            unit.set(0, oldc, &field.one());
            let img = rep.apply(x, &unit);
            let proj = project(img.row_words(0));
            for r in 0..new_dim {
                let entry = field.element_from_words(proj[r * w..(r + 1) * w].to_vec());
                if !entry.is_zero() {
                    m.set(r, newc, &entry);
                }
            }
        }
        actions.push(m);
    }

    let parities: Vec<Parity> = keep.iter().map(|&c| rep.parities[c]).collect();
    let weights: Vec<Weight> = keep.iter().map(|&c| rep.weights[c].clone()).collect();
    let coord_labels: Vec<(u8, u8, u16)> = keep.iter().map(|&c| rep.coord_labels[c]).collect();

    // The image of the old highest-weight line, when it survives as a
    // coordinate vector.
    let v0 = rep.v0.and_then(|old| {
        let mut unit = vec![0u64; rep.dim * w];
        unit[old * w] = 1;
        let proj = project(&unit);
        let mut hot = None;
        for (c, chunk) in proj.chunks(w).enumerate() {
            if chunk.iter().any(|&x| x != 0) {
                if hot.is_some() || chunk[0] != 1 || chunk[1..].iter().any(|&x| x != 0) {
                    return None;
                }
                hot = Some(c);
            }
        }
        hot
    });

    let kac_projection = {
        let kac_dim = rep.kac_projection.rows();
        let mut m = MatrixF::zeros(&field, kac_dim, new_dim);
        for r in 0..kac_dim {
            let proj = project(rep.kac_projection.row_words(r));
            for c in 0..new_dim {
                let entry = field.element_from_words(proj[c * w..(c + 1) * w].to_vec());
                if !entry.is_zero() {
                    m.set(r, c, &entry);
                }
            }
        }
        m
    };

    let out = ModuleRep {
        field,
        dim: new_dim,
        actions,
        parities,
        weights,
        v0,
        chi: rep.chi.clone(),
        lambda: rep.lambda.clone(),
        provenance,
        kac_k_max: rep.kac_k_max,
        kac_projection,
        coord_labels,
    };
    if let Err(msg) = out.check_grading(alg) {
        return Err(Error::Validation(msg));
    }
    Ok(out)
}

/// The simple module `S^chi(lambda)`: the Kac module modulo its radical.
pub fn build_simple(alg: &SuperAlgebra, chi: &PChar, lambda: &HighestWeight) -> Result<ModuleRep> {
    let z = build_kac(alg, chi, lambda)?;
    let rad = radical(&z)?;
    quotient_with_provenance(alg, &z, &rad, Provenance::Simple)
}

/// Which of the six known structure descriptions applies to a simple
/// module (zero or nilpotent-with-`chi(h1)=0` character only).
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum StructureCase {
    /// `lambda1 != p-1` and `lambda2 != 0`: the Kac module is simple.
    KacSimple,
    /// `lambda1 = p-1`, `lambda2` not in `{0, p-1}` (zero character).
    TopRow,
    /// `lambda = (p-1, 0)` (zero character).
    TopCorner,
    /// `lambda = (p-1, p-1)` (zero character).
    TopTop,
    /// `lambda2 = 0`, `lambda1 != p-1` (zero character).
    ZeroColumn,
    /// Nilpotent character with `r = 0`, `lambda1 = p-1` or `lambda2 = 0`.
    NilpotentEdge,
}

/// A linear relation among monomial labels, as terms summing to zero in
/// the simple module.
pub type LabelRelation = Vec<(FieldElement, (u8, u8, i64))>;

/// Known facts about `S^chi(lambda)`: the applicable case, the expected
/// dimension where the description pins one down, the surviving basis
/// labels where stated, and the stated linear relations.
pub struct SimpleModuleFacts {
    pub case: StructureCase,
    pub expected_dim: Option<usize>,
    pub basis: Option<Vec<(u8, u8, i64)>>,
    pub relations: Vec<LabelRelation>,
}

/// The independently known structure of `S^chi(lambda)` for `chi = 0` or
/// nilpotent `chi` with `chi(h1) = 0`; errors on other characters.
pub fn simple_structure_facts(chi: &PChar, lambda: &HighestWeight) -> Result<SimpleModuleFacts> {
    let field = lambda.l1.field().clone();
    let p = field.characteristic();
    let one = field.one();
    let el = |n: i64| field.from_int(n);
    let l1 = lambda
        .l1
        .lift_to_int()
        .map_err(|_| Error::OutOfHypothesis)? as i64;
    let l2 = lambda
        .l2
        .lift_to_int()
        .map_err(|_| Error::OutOfHypothesis)? as i64;
    let top = (p - 1) as i64;

    let nilpotent_zero = chi.kind() == ChiKind::Nilpotent && chi.r().is_zero();
    if !chi.is_zero() && !nilpotent_zero {
        return Err(Error::OutOfHypothesis);
    }

    if l1 != top && l2 != 0 {
        let k_max = if nilpotent_zero {
            top
        } else {
            let d = (l1 - l2).rem_euclid(p as i64);
            if d == top {
                top
            } else {
                d
            }
        };
        return Ok(SimpleModuleFacts {
            case: StructureCase::KacSimple,
            expected_dim: Some(4 * (k_max as usize + 1)),
            basis: None,
            relations: Vec::new(),
        });
    }

    if nilpotent_zero {
        // lambda1 = p-1 or lambda2 = 0: basis <0,0,k>, <1,0,k> with
        // <0,1,k> = (lambda2 + k) <1,0,k-1> and <1,1,k> = 0.
        let mut basis = Vec::new();
        let mut relations = Vec::new();
        for k in 0..=top {
            basis.push((0, 0, k));
            basis.push((1, 0, k));
            relations.push(vec![
                (one.clone(), (0, 1, k)),
                (-&(&lambda.l2 + &el(k)), (1, 0, k - 1)),
            ]);
            relations.push(vec![(one.clone(), (1, 1, k))]);
        }
        return Ok(SimpleModuleFacts {
            case: StructureCase::NilpotentEdge,
            expected_dim: Some(2 * p as usize),
            basis: Some(basis),
            relations,
        });
    }

    // Zero character from here on.
    if (l1, l2) == (top, 0) {
        let mut basis = Vec::new();
        let mut relations = Vec::new();
        for k in 0..=top {
            basis.push((0, 0, k));
            basis.push((1, 0, k));
            relations.push(vec![(one.clone(), (1, 1, k))]);
            relations.push(vec![
                (one.clone(), (0, 1, k)),
                (-&el(k), (1, 0, k - 1)),
            ]);
        }
        return Ok(SimpleModuleFacts {
            case: StructureCase::TopCorner,
            expected_dim: Some(2 * p as usize),
            basis: Some(basis),
            relations,
        });
    }

    if (l1, l2) == (top, top) {
        let mut relations = vec![vec![(one.clone(), (1, 1, 0))]];
        for k in 1..=top {
            for i in 0..2u8 {
                for j in 0..2u8 {
                    relations.push(vec![(one.clone(), (i, j, k))]);
                }
            }
        }
        return Ok(SimpleModuleFacts {
            case: StructureCase::TopTop,
            expected_dim: Some(3),
            basis: Some(vec![(1, 0, 0), (0, 0, 0), (0, 1, 0)]),
            relations,
        });
    }

    if l1 == top {
        // lambda2 in 1..p-2: relations only; the stated basis has an
        // ambiguous range, so the dimension is left to the generic radical.
        let mut relations = Vec::new();
        for k in 0..=(top - l2) {
            relations.push(vec![(one.clone(), (1, 1, k))]);
            relations.push(vec![
                (one.clone(), (0, 1, k + 1)),
                (-&(&lambda.l2 + &el(k + 1)), (1, 0, k)),
            ]);
        }
        return Ok(SimpleModuleFacts {
            case: StructureCase::TopRow,
            expected_dim: None,
            basis: None,
            relations,
        });
    }

    // lambda2 = 0, lambda1 != p-1.
    let mut basis = Vec::new();
    let mut relations = Vec::new();
    for k in 0..l1 {
        basis.push((0, 0, k));
        basis.push((1, 0, k));
        relations.push(vec![(one.clone(), (0, 1, k)), (-&el(k), (1, 0, k - 1))]);
        relations.push(vec![(one.clone(), (1, 1, k))]);
    }
    basis.push((0, 0, l1));
    relations.push(vec![
        (one.clone(), (0, 1, l1)),
        (-&lambda.l1, (1, 0, l1 - 1)),
    ]);
    relations.push(vec![(one.clone(), (1, 1, l1))]);
    relations.push(vec![(one.clone(), (1, 0, l1))]);
    Ok(SimpleModuleFacts {
        case: StructureCase::ZeroColumn,
        expected_dim: Some(2 * l1 as usize + 1),
        basis: Some(basis),
        relations,
    })
}

/// Check the stated label relations of [`simple_structure_facts`] under the
/// quotient projection.
pub fn verify_structure_relations(
    rep: &ModuleRep,
    facts: &SimpleModuleFacts,
) -> std::result::Result<(), String> {
    for (idx, rel) in facts.relations.iter().enumerate() {
        let mut acc = MatrixF::zeros(rep.field(), 1, rep.dim());
        for (coeff, (i, j, k)) in rel {
            acc = acc.add(&rep.label_vector(*i, *j, *k).scale(coeff));
        }
        if !acc.is_zero() {
            return Err(format!("relation {idx} fails under the projection"));
        }
    }
    Ok(())
}

/// Check the stated dimension and basis labels of
/// [`simple_structure_facts`]: the module dimension must match when pinned,
/// and the stated basis labels must project to an independent spanning set.
pub fn verify_structure_dimension(
    rep: &ModuleRep,
    facts: &SimpleModuleFacts,
) -> std::result::Result<(), String> {
    if let Some(d) = facts.expected_dim {
        if rep.dim() != d {
            return Err(format!(
                "dimension {} differs from the known structure value {d}",
                rep.dim()
            ));
        }
    }
    if let Some(basis) = &facts.basis {
        let rows: Vec<MatrixF> = basis
            .iter()
            .map(|&(i, j, k)| rep.label_vector(i, j, k))
            .collect();
        let refs: Vec<&MatrixF> = rows.iter().collect();
        let stacked = MatrixF::stack_vertical(&refs);
        let rank = stacked.rref().rank;
        if rank != basis.len() {
            return Err(format!(
                "stated basis labels are dependent: rank {rank} of {}",
                basis.len()
            ));
        }
        if rank != rep.dim() {
            return Err(format!(
                "stated basis labels span dimension {rank}, module has {}",
                rep.dim()
            ));
        }
    }
    Ok(())
}

/// Both halves of the structure oracle: relations, then dimension/basis.
pub fn verify_simple_structure(
    rep: &ModuleRep,
    facts: &SimpleModuleFacts,
) -> std::result::Result<(), String> {
    verify_structure_relations(rep, facts)?;
    verify_structure_dimension(rep, facts)
}
