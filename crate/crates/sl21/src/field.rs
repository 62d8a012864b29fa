//! Exact arithmetic in `F_p` and in extensions `F_p[t]/(f(t))`.
//!
//! A [`Field`] is a cheaply clonable handle to an immutable descriptor
//! (characteristic, degree, modulus). Elements store their coefficient
//! vector as canonical residues in `{0, .., p-1}`, so equality is bitwise
//! and echelon pivoting never has to normalise.
//!
//! The matrix layer works on raw coefficient slices through the
//! `pub(crate)` kernel methods; [`FieldElement`] is the ergonomic wrapper
//! used everywhere else.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::{Error, Result};

const MAX_P: u64 = 1 << 16;

#[derive(Debug)]
struct FieldInner {
    p: u64,
    degree: usize,
    /// Monic modulus, ascending coefficients, length `degree + 1`.
    /// Absent for the prime field itself.
    modulus: Option<Vec<u64>>,
}

/// A finite field `F_p` or `F_p[t]/(f(t))` with `f` monic irreducible.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.degree == other.0.degree
                && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl Field {
    /// The prime field `F_p` for an odd prime `p`.
    pub fn prime(p: u64) -> Result<Field> {
        check_odd_prime(p)?;
        Ok(Field(Arc::new(FieldInner {
            p,
            degree: 1,
            modulus: None,
        })))
    }

    /// An extension `F_p[t]/(f)` for a monic irreducible `f` given by its
    /// ascending coefficients (length `deg f + 1`). Irreducibility is
    /// verified at construction.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Field> {
        check_odd_prime(p)?;
        let f: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        let n = f.len().saturating_sub(1);
        if n == 0 || f[n] != 1 {
            return Err(Error::BadModulus);
        }
        if n == 1 {
            // F_p[t]/(t + c) is F_p itself; keep the canonical descriptor.
            return Field::prime(p);
        }
        if !poly_is_irreducible(p, &f) {
            return Err(Error::ReducibleModulus(p));
        }
        Ok(Field(Arc::new(FieldInner {
            p,
            degree: n,
            modulus: Some(f),
        })))
    }

    /// The Artin–Schreier extension `F_p[t]/(t^p - t - 1)`, in which every
    /// equation `x^p - x = c` with `c` in the prime subfield is solvable
    /// (by `x = c*t + c0`).
    pub fn artin_schreier(p: u64) -> Result<Field> {
        check_odd_prime(p)?;
        let n = p as usize;
        let mut f = vec![0u64; n + 1];
        f[0] = p - 1;
        f[1] = p - 1;
        f[n] = 1;
        Field::extension(p, &f)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Number of elements, `p^degree`.
    pub fn order(&self) -> u128 {
        (self.0.p as u128).pow(self.0.degree as u32)
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.0.modulus.as_deref()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.degree == 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.0.degree],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The class of `t` (the generator of the extension). For the prime
    /// field this is just `0`, which has no generator role; callers should
    /// only use it on extensions.
    pub fn gen(&self) -> FieldElement {
        let mut coeffs = vec![0; self.0.degree];
        if self.0.degree > 1 {
            coeffs[1] = 1;
        }
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// The image of an integer under `Z -> F_p`, canonical residue.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.0.p as i64;
        let r = n.rem_euclid(p) as u64;
        let mut coeffs = vec![0; self.0.degree];
        coeffs[0] = r;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Element from ascending coefficients (arbitrary integers, reduced).
    pub fn element(&self, coeffs: &[i64]) -> FieldElement {
        assert!(coeffs.len() <= self.0.degree, "too many coefficients");
        let p = self.0.p as i64;
        let mut out = vec![0u64; self.0.degree];
        for (o, &c) in out.iter_mut().zip(coeffs) {
            *o = c.rem_euclid(p) as u64;
        }
        FieldElement {
            field: self.clone(),
            coeffs: out,
        }
    }

    pub(crate) fn element_from_words(&self, coeffs: Vec<u64>) -> FieldElement {
        debug_assert_eq!(coeffs.len(), self.0.degree);
        debug_assert!(coeffs.iter().all(|&c| c < self.0.p));
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    /// Parse a literal such as `3`, `-1`, `t`, `2*t`, `4+2*t` or `3*t^2+1`.
    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::ParseElement(s.to_string()));
        }
        let mut coeffs = vec![0i64; self.0.degree];
        let mut acc = self.zero();
        // Split into signed terms.
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign = 1i64;
        let mut chars = compact.chars().peekable();
        if chars.peek() == Some(&'-') {
            sign = -1;
            chars.next();
        } else if chars.peek() == Some(&'+') {
            chars.next();
        }
        for c in chars {
            match c {
                '+' => {
                    terms.push((sign, std::mem::take(&mut cur)));
                    sign = 1;
                }
                '-' => {
                    terms.push((sign, std::mem::take(&mut cur)));
                    sign = -1;
                }
                _ => cur.push(c),
            }
        }
        terms.push((sign, cur));
        for (sgn, term) in terms {
            if term.is_empty() {
                return Err(Error::ParseElement(s.to_string()));
            }
            let (coeff_str, power) = match term.find('t') {
                None => (term.as_str(), 0usize),
                Some(pos) => {
                    let coeff = term[..pos].trim_end_matches('*');
                    let rest = &term[pos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        let exp = rest
                            .strip_prefix('^')
                            .ok_or_else(|| Error::ParseElement(s.to_string()))?;
                        exp.parse::<usize>()
                            .map_err(|_| Error::ParseElement(s.to_string()))?
                    };
                    (coeff, power)
                }
            };
            let coeff: i64 = if coeff_str.is_empty() {
                1
            } else {
                coeff_str
                    .parse()
                    .map_err(|_| Error::ParseElement(s.to_string()))?
            };
            if power >= self.0.degree {
                // Reduce via actual field arithmetic: coeff * t^power.
                let mut v = self.from_int(sgn * coeff);
                let t = self.gen();
                for _ in 0..power {
                    v = &v * &t;
                }
                acc = &acc + &v;
            } else {
                coeffs[power] += sgn * coeff;
            }
        }
        Ok(&acc + &self.element(&coeffs))
    }

    /// Human-readable name, e.g. `F_5` or `F_5[t]/(t^5+4*t+4)`.
    pub fn name(&self) -> String {
        match &self.0.modulus {
            None => format!("F_{}", self.0.p),
            Some(f) => format!("F_{}[t]/({})", self.0.p, poly_to_string(f)),
        }
    }

    // ---- raw kernels over coefficient slices -------------------------------
    //
    // All slices have length `degree` and hold canonical residues. These are
    // the inner loops of the matrix layer; they avoid allocation except for
    // the shared multiplication scratch.

    #[inline]
    pub(crate) fn width(&self) -> usize {
        self.0.degree
    }

    #[inline]
    pub(crate) fn slice_is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    #[inline]
    pub(crate) fn add_assign_slice(&self, dst: &mut [u64], src: &[u64]) {
        let p = self.0.p;
        for (d, &s) in dst.iter_mut().zip(src) {
            let v = *d + s;
            *d = if v >= p { v - p } else { v };
        }
    }

    #[inline]
    pub(crate) fn sub_assign_slice(&self, dst: &mut [u64], src: &[u64]) {
        let p = self.0.p;
        for (d, &s) in dst.iter_mut().zip(src) {
            let v = *d + p - s;
            *d = if v >= p { v - p } else { v };
        }
    }

    #[inline]
    pub(crate) fn neg_slice(&self, dst: &mut [u64]) {
        let p = self.0.p;
        for d in dst.iter_mut() {
            if *d != 0 {
                *d = p - *d;
            }
        }
    }

    /// `dst += a * c`, where `c` is a scalar of this field.
    /// `scratch` must have length `2 * degree - 1`.
    #[inline]
    pub(crate) fn mul_acc_slice(&self, dst: &mut [u64], a: &[u64], c: &[u64], scratch: &mut [u64]) {
        let p = self.0.p;
        let w = self.0.degree;
        if w == 1 {
            dst[0] = (dst[0] + a[0] * c[0]) % p;
            return;
        }
        if self.slice_is_zero(c) || self.slice_is_zero(a) {
            return;
        }
        scratch.fill(0);
        // Unreduced convolution: every slot stays far below u64::MAX because
        // p < 2^16 and degree <= 2^16.
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &cj) in c.iter().enumerate() {
                scratch[i + j] += ai * cj;
            }
        }
        self.reduce_scratch(scratch);
        for (d, &s) in dst.iter_mut().zip(scratch.iter()) {
            *d = (*d + s) % p;
        }
    }

    /// Fold a convolution buffer (length `2*degree - 1`) down to degree
    /// `< degree` using the monic modulus, leaving canonical residues in the
    /// low `degree` slots.
    fn reduce_scratch(&self, scratch: &mut [u64]) {
        let p = self.0.p;
        let w = self.0.degree;
        let f = self
            .0
            .modulus
            .as_ref()
            .expect("extension fields carry a modulus");
        for d in (w..scratch.len()).rev() {
            let c = scratch[d] % p;
            scratch[d] = 0;
            if c == 0 {
                continue;
            }
            // t^d = t^(d-w) * (t^w mod f) = -sum_j f_j t^(d-w+j)
            for (j, &fj) in f.iter().take(w).enumerate() {
                if fj != 0 {
                    scratch[d - w + j] += (p - fj) * c;
                }
            }
        }
        for s in scratch[..w].iter_mut() {
            *s %= p;
        }
    }

    pub(crate) fn scratch(&self) -> Vec<u64> {
        vec![0; 2 * self.0.degree - 1]
    }

    fn mul_words(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.0.degree];
        let mut scratch = self.scratch();
        self.mul_acc_slice(&mut out, a, b, &mut scratch);
        out
    }

    /// Multiplicative inverse by extended gcd on polynomial representatives.
    fn inv_words(&self, a: &[u64]) -> Result<Vec<u64>> {
        let p = self.0.p;
        if self.slice_is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        if self.0.degree == 1 {
            let (g, x, _) = int_egcd(a[0] as i64, p as i64);
            debug_assert_eq!(g, 1);
            let mut out = vec![0; 1];
            out[0] = x.rem_euclid(p as i64) as u64;
            return Ok(out);
        }
        let f = self.0.modulus.as_ref().unwrap();
        let inv = poly_modinv(p, a, f).ok_or(Error::DivisionByZero)?;
        let mut out = vec![0; self.0.degree];
        out[..inv.len()].copy_from_slice(&inv);
        Ok(out)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// An element of a [`Field`], stored as canonical residues.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Ascending coefficients, canonical residues, length `degree`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs: self.field.inv_words(&self.coeffs)?,
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The Frobenius image `x^p`.
    pub fn frobenius(&self) -> FieldElement {
        self.pow(self.field.characteristic())
    }

    /// Whether `x^p = x`; with canonical coefficients this is exactly the
    /// constants, i.e. all coefficients above degree zero vanish.
    pub fn in_prime_subfield(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The canonical integer representative in `{0, .., p-1}` of a prime
    /// subfield element.
    pub fn lift_to_int(&self) -> Result<u64> {
        if !self.in_prime_subfield() {
            return Err(Error::NotInPrimeSubfield(self.to_string()));
        }
        Ok(self.coeffs[0])
    }

    /// Lexicographic key on ascending coefficients, for deterministic
    /// orderings of sweep output.
    pub fn sort_key(&self) -> &[u64] {
        &self.coeffs
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "arithmetic between elements of different fields"
        );
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.characteristic().hash(state);
        self.field.degree().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly_to_string(&self.coeffs))
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let mut coeffs = self.coeffs.clone();
        self.field.add_assign_slice(&mut coeffs, &rhs.coeffs);
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let mut coeffs = self.coeffs.clone();
        self.field.sub_assign_slice(&mut coeffs, &rhs.coeffs);
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coeffs: self.field.mul_words(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let mut coeffs = self.coeffs.clone();
        self.field.neg_slice(&mut coeffs);
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }
}

// ---- helpers over raw polynomials ------------------------------------------

fn check_odd_prime(p: u64) -> Result<()> {
    if p >= MAX_P {
        return Err(Error::CharacteristicTooLarge(p));
    }
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::BadCharacteristic(p));
    }
    Ok(())
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn int_egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = int_egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Render ascending coefficients as a polynomial in `t`, descending powers.
fn poly_to_string(coeffs: &[u64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "t".to_string(),
            (1, c) => format!("{c}*t"),
            (i, 1) => format!("t^{i}"),
            (i, c) => format!("{c}*t^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

// Dense polynomials over F_p, trailing zeros trimmed; used only at field
// construction time (irreducibility, inverses).

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo monic `f`.
fn poly_rem(p: u64, a: &[u64], f: &[u64]) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let n = f.len() - 1;
    while r.len() > n {
        let d = r.len() - 1;
        let c = r[d];
        r.pop();
        if c != 0 {
            for (j, &fj) in f.iter().take(n).enumerate() {
                let idx = d - n + j;
                r[idx] = (r[idx] + (p - fj) * c) % p;
            }
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_pow_mod(p: u64, base: &[u64], mut e: u64, f: &[u64]) -> Vec<u64> {
    let mut b = poly_rem(p, base, f);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(p, &poly_mul(p, &acc, &b), f);
        }
        b = poly_rem(p, &poly_mul(p, &b, &b), f);
        e >>= 1;
    }
    acc
}

fn poly_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // Make b monic before taking a remainder.
        let lead = *b.last().unwrap();
        if lead != 1 {
            let (_, x, _) = int_egcd(lead as i64, p as i64);
            let inv = x.rem_euclid(p as i64) as u64;
            for c in b.iter_mut() {
                *c = *c * inv % p;
            }
        }
        let r = poly_rem(p, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// Extended gcd inverse of `a` modulo monic irreducible `f`.
fn poly_modinv(p: u64, a: &[u64], f: &[u64]) -> Option<Vec<u64>> {
    // Iterative extended Euclid over F_p[x].
    let inv_mod_p = |c: u64| -> u64 {
        let (_, x, _) = int_egcd(c as i64, p as i64);
        x.rem_euclid(p as i64) as u64
    };
    let mut r0: Vec<u64> = f.to_vec();
    let mut r1: Vec<u64> = a.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0: Vec<u64> = vec![];
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        // Divide r0 by r1: quotient q, remainder r.
        let mut r = r0.clone();
        let mut q: Vec<u64> = vec![0; r.len().saturating_sub(r1.len()) + 1];
        let lead_inv = inv_mod_p(*r1.last().unwrap());
        while r.len() >= r1.len() && !r.is_empty() {
            let shift = r.len() - r1.len();
            let c = *r.last().unwrap() * lead_inv % p;
            q[shift] = c;
            for (j, &bj) in r1.iter().enumerate() {
                r[shift + j] = (r[shift + j] + (p - 1) * c % p * bj) % p;
            }
            poly_trim(&mut r);
            if r.len() <= shift {
                break;
            }
        }
        poly_trim(&mut q);
        // (r0, r1) <- (r1, r0 - q r1); (s0, s1) likewise.
        let qs1 = poly_mul(p, &q, &s1);
        let mut s2 = s0.clone();
        s2.resize(s2.len().max(qs1.len()), 0);
        for (i, &c) in qs1.iter().enumerate() {
            s2[i] = (s2[i] + (p - 1) * c % p) % p;
        }
        poly_trim(&mut s2);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    // r0 = gcd; invertible iff gcd is a nonzero constant.
    if r0.len() != 1 {
        return None;
    }
    let scale = inv_mod_p(r0[0]);
    let mut out = poly_rem(p, &s0, f);
    for c in out.iter_mut() {
        *c = *c * scale % p;
    }
    Some(out)
}

/// Degree-n monic `f` is irreducible over `F_p` iff it shares no factor with
/// `x^(p^k) - x` for any `k <= n/2`.
fn poly_is_irreducible(p: u64, f: &[u64]) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut h = poly_rem(p, &x, f); // x^(p^0)
    for _ in 1..=(n / 2) {
        h = poly_pow_mod(p, &h, p, f); // x^(p^k) via iterated Frobenius
        // h - x
        let mut d = h.clone();
        d.resize(d.len().max(2), 0);
        d[1] = (d[1] + p - 1) % p;
        poly_trim(&mut d);
        let g = poly_gcd(p, f, &d);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
