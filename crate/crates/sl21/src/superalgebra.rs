//! The Lie superalgebra sl(2,1): supertraceless 3x3 matrices over a field of
//! odd characteristic, with the block grading that makes rows/columns 1,2
//! even and row/column 3 odd.
//!
//! The eight basis elements are `h1 = e11 + e33`, `h2 = e22 + e33` and the
//! six off-diagonal matrix units. Structure constants are not hard-coded:
//! they are derived at build time from the supermatrix realisation
//! `[x, y] = x.y - (-1)^(|x||y|) y.x` and every algebra axiom is then checked
//! exhaustively, so a transcription error cannot survive construction.

use std::fmt;

use crate::field::{Field, FieldElement};
use crate::linalg::MatrixF;

/// A Z_2 degree.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// The sum of two Z_2 degrees.
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// True when `(-1)^(|a||b|)` is `-1`.
    pub fn sign_product_negative(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// The eight basis elements of sl(2,1).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    H1,
    H2,
    E12,
    E21,
    E13,
    E23,
    E31,
    E32,
}

use BasisLabel::*;

impl BasisLabel {
    pub const ALL: [BasisLabel; 8] = [H1, H2, E12, E21, E13, E23, E31, E32];

    pub fn index(self) -> usize {
        match self {
            H1 => 0,
            H2 => 1,
            E12 => 2,
            E21 => 3,
            E13 => 4,
            E23 => 5,
            E31 => 6,
            E32 => 7,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            H1 => "h1",
            H2 => "h2",
            E12 => "e12",
            E21 => "e21",
            E13 => "e13",
            E23 => "e23",
            E31 => "e31",
            E32 => "e32",
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            H1 | H2 | E12 | E21 => Parity::Even,
            E13 | E23 | E31 | E32 => Parity::Odd,
        }
    }

    /// Degree in the short Z-grading g = g_{-1} + g_0 + g_1.
    pub fn z_degree(self) -> i8 {
        match self {
            E31 | E32 => -1,
            E13 | E23 => 1,
            _ => 0,
        }
    }

    /// The 3x3 supermatrix realisation.
    pub fn supermatrix(self, field: &Field) -> MatrixF {
        let mut m = MatrixF::zeros(field, 3, 3);
        let one = field.one();
        match self {
            H1 => {
                m.set(0, 0, &one);
                m.set(2, 2, &one);
            }
            H2 => {
                m.set(1, 1, &one);
                m.set(2, 2, &one);
            }
            E12 => m.set(0, 1, &one),
            E21 => m.set(1, 0, &one),
            E13 => m.set(0, 2, &one),
            E23 => m.set(1, 2, &one),
            E31 => m.set(2, 0, &one),
            E32 => m.set(2, 1, &one),
        }
        m
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A weight: the pair of eigenvalues on `(h1, h2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    pub on_h1: FieldElement,
    pub on_h2: FieldElement,
}

impl Weight {
    pub fn new(on_h1: FieldElement, on_h2: FieldElement) -> Weight {
        Weight { on_h1, on_h2 }
    }

    pub fn zero(field: &Field) -> Weight {
        Weight::new(field.zero(), field.zero())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(&self.on_h1 + &other.on_h1, &self.on_h2 + &other.on_h2)
    }

    pub fn is_zero(&self) -> bool {
        self.on_h1.is_zero() && self.on_h2.is_zero()
    }

    /// Deterministic ordering key: coefficient-lexicographic on the first
    /// component, then the second.
    pub fn sort_key(&self) -> (Vec<u64>, Vec<u64>) {
        (
            self.on_h1.sort_key().to_vec(),
            self.on_h2.sort_key().to_vec(),
        )
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.on_h1, self.on_h2)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.on_h1, self.on_h2)
    }
}

/// sl(2,1) over a fixed field: structure constants, roots, and the
/// restricted p-mapping on the even part. Immutable after construction.
pub struct SuperAlgebra {
    field: Field,
    /// `brackets[a][b]` holds the coefficients of `[a, b]` in the basis.
    brackets: Vec<Vec<MatrixF>>,
    roots: Vec<Weight>,
    /// `p_powers[a]` holds the coefficients of `a^[p]` for even `a`.
    p_powers: Vec<Option<MatrixF>>,
}

impl SuperAlgebra {
    /// Build sl(2,1) over `field`, deriving structure constants from the
    /// supermatrix realisation and verifying super-antisymmetry, the
    /// super-Jacobi identity on all 8^3 triples, supertrace vanishing,
    /// Z-grading additivity, root membership and the restriction property.
    pub fn sl21(field: &Field) -> SuperAlgebra {
        let mats: Vec<MatrixF> = BasisLabel::ALL
            .iter()
            .map(|l| l.supermatrix(field))
            .collect();
        for (l, m) in BasisLabel::ALL.iter().zip(&mats) {
            assert!(supertrace(m).is_zero(), "{l} does not have supertrace zero");
        }

        let brackets: Vec<Vec<MatrixF>> = BasisLabel::ALL
            .iter()
            .map(|a| {
                BasisLabel::ALL
                    .iter()
                    .map(|b| {
                        let ab = mats[a.index()].matmul(&mats[b.index()]);
                        let ba = mats[b.index()].matmul(&mats[a.index()]);
                        let m = if a.parity().sign_product_negative(b.parity()) {
                            ab.add(&ba)
                        } else {
                            ab.sub(&ba)
                        };
                        decompose_supermatrix(field, &m)
                            .unwrap_or_else(|| panic!("[{a}, {b}] is not supertraceless"))
                    })
                    .collect()
            })
            .collect();

        // Roots: [h_i, x] = c_i x for each basis element.
        let roots: Vec<Weight> = BasisLabel::ALL
            .iter()
            .map(|x| {
                let c1 = eigencoeff(&brackets[H1.index()][x.index()], *x);
                let c2 = eigencoeff(&brackets[H2.index()][x.index()], *x);
                Weight::new(c1, c2)
            })
            .collect();

        // p-mapping on the even part: h_i -> h_i, e12 -> 0, e21 -> 0,
        // cross-checked as the p-th associative matrix power.
        let p = field.characteristic();
        let p_powers: Vec<Option<MatrixF>> = BasisLabel::ALL
            .iter()
            .map(|x| {
                if x.parity().is_odd() {
                    return None;
                }
                let power = mats[x.index()].pow(p);
                Some(
                    decompose_supermatrix(field, &power)
                        .unwrap_or_else(|| panic!("{x}^p is not supertraceless")),
                )
            })
            .collect();

        let alg = SuperAlgebra {
            field: field.clone(),
            brackets,
            roots,
            p_powers,
        };
        alg.self_check();
        alg
    }

    fn self_check(&self) {
        let field = &self.field;
        // Super-antisymmetry: [a,b] = -(-1)^(|a||b|) [b,a].
        for a in BasisLabel::ALL {
            for b in BasisLabel::ALL {
                let lhs = self.bracket_labels(a, b);
                let mut rhs = self.bracket_labels(b, a).neg();
                if a.parity().sign_product_negative(b.parity()) {
                    rhs = rhs.neg();
                }
                assert_eq!(*lhs, rhs, "antisymmetry fails on [{a}, {b}]");
            }
        }
        // Graded Jacobi identity, cyclic form, on all 8^3 triples.
        for x in BasisLabel::ALL {
            for y in BasisLabel::ALL {
                for z in BasisLabel::ALL {
                    let t1 = sign_apply(
                        self.bracket(&self.basis_vector(x), self.bracket_labels(y, z)),
                        x.parity().sign_product_negative(z.parity()),
                    );
                    let t2 = sign_apply(
                        self.bracket(&self.basis_vector(y), self.bracket_labels(z, x)),
                        y.parity().sign_product_negative(x.parity()),
                    );
                    let t3 = sign_apply(
                        self.bracket(&self.basis_vector(z), self.bracket_labels(x, y)),
                        z.parity().sign_product_negative(y.parity()),
                    );
                    assert!(
                        t1.add(&t2).add(&t3).is_zero(),
                        "Jacobi fails on ({x}, {y}, {z})"
                    );
                }
            }
        }
        // Z-grading additivity: [g_i, g_j] lies in g_{i+j}, empty beyond +-1.
        for a in BasisLabel::ALL {
            for b in BasisLabel::ALL {
                let deg = a.z_degree() + b.z_degree();
                let br = self.bracket_labels(a, b);
                for z in BasisLabel::ALL {
                    if !br.entry_is_zero(0, z.index()) {
                        assert_eq!(z.z_degree(), deg, "Z-grading violated in [{a}, {b}]");
                    }
                }
            }
        }
        // Roots take values with both entries and their sum in {0, 1, -1}.
        let small = [field.zero(), field.one(), field.from_int(-1)];
        for (x, root) in BasisLabel::ALL.iter().zip(&self.roots) {
            let sum = &root.on_h1 + &root.on_h2;
            for v in [&root.on_h1, &root.on_h2, &sum] {
                assert!(small.contains(v), "root of {x} outside {{0, 1, -1}}");
            }
        }
        // Restriction property: ad(x^[p]) = ad(x)^p on the even part.
        let p = field.characteristic();
        for x in [H1, H2, E12, E21] {
            let adx = self.adjoint(x);
            let lhs = self.adjoint_of_vector(self.p_power(x));
            assert_eq!(lhs, adx.pow(p), "ad({x}^[p]) differs from ad({x})^p");
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coefficients of the basis element `x` as a `1 x 8` row.
    pub fn basis_vector(&self, x: BasisLabel) -> MatrixF {
        let mut v = MatrixF::zeros(&self.field, 1, 8);
        v.set(0, x.index(), &self.field.one());
        v
    }

    /// The structure constants of `[a, b]`, as a `1 x 8` coefficient row.
    pub fn bracket_labels(&self, a: BasisLabel, b: BasisLabel) -> &MatrixF {
        &self.brackets[a.index()][b.index()]
    }

    /// Bilinear extension of the bracket to coefficient vectors.
    pub fn bracket(&self, x: &MatrixF, y: &MatrixF) -> MatrixF {
        assert_eq!((x.rows(), x.cols()), (1, 8));
        assert_eq!((y.rows(), y.cols()), (1, 8));
        let mut out = MatrixF::zeros(&self.field, 1, 8);
        for a in BasisLabel::ALL {
            let xa = x.get(0, a.index());
            if xa.is_zero() {
                continue;
            }
            for b in BasisLabel::ALL {
                let yb = y.get(0, b.index());
                if yb.is_zero() {
                    continue;
                }
                out = out.add(&self.brackets[a.index()][b.index()].scale(&(&xa * &yb)));
            }
        }
        out
    }

    /// The root of a basis element: the pair `(c1, c2)` with
    /// `[h_i, x] = c_i x`.
    pub fn root(&self, x: BasisLabel) -> &Weight {
        &self.roots[x.index()]
    }

    /// Coefficients of `x^[p]` for an even basis element.
    pub fn p_power(&self, x: BasisLabel) -> &MatrixF {
        self.p_powers[x.index()]
            .as_ref()
            .expect("p-mapping is defined on the even part only")
    }

    /// The matrix of `ad(x)` on the 8-dimensional adjoint module,
    /// in the convention where it acts on coefficient rows via `apply`.
    pub fn adjoint(&self, x: BasisLabel) -> MatrixF {
        self.adjoint_of_vector(&self.basis_vector(x))
    }

    fn adjoint_of_vector(&self, x: &MatrixF) -> MatrixF {
        MatrixF::from_fn(&self.field, 8, 8, |i, j| {
            self.bracket(x, &self.basis_vector(BasisLabel::ALL[j]))
                .get(0, i)
        })
    }
}

fn sign_apply(m: MatrixF, negate: bool) -> MatrixF {
    if negate {
        m.neg()
    } else {
        m
    }
}

/// `str(m) = m00 + m11 - m22` for the (2|1) block convention.
pub fn supertrace(m: &MatrixF) -> FieldElement {
    assert_eq!((m.rows(), m.cols()), (3, 3));
    &(&m.get(0, 0) + &m.get(1, 1)) - &m.get(2, 2)
}

/// Express a supertraceless 3x3 matrix in the 8-element basis; `None` when
/// the supertrace does not vanish.
fn decompose_supermatrix(field: &Field, m: &MatrixF) -> Option<MatrixF> {
    if !supertrace(m).is_zero() {
        return None;
    }
    let mut out = MatrixF::zeros(field, 1, 8);
    // Diagonal part: c1 h1 + c2 h2 = diag(c1, c2, c1 + c2).
    let c1 = m.get(0, 0);
    let c2 = m.get(1, 1);
    debug_assert_eq!(&c1 + &c2, m.get(2, 2));
    out.set(0, H1.index(), &c1);
    out.set(0, H2.index(), &c2);
    for (label, i, j) in [
        (E12, 0, 1),
        (E21, 1, 0),
        (E13, 0, 2),
        (E23, 1, 2),
        (E31, 2, 0),
        (E32, 2, 1),
    ] {
        out.set(0, label.index(), &m.get(i, j));
    }
    Some(out)
}

/// The eigenvalue `c` with `v = c e_x`, insisting that `v` is supported on
/// the single coordinate of `x`.
fn eigencoeff(v: &MatrixF, x: BasisLabel) -> FieldElement {
    for z in BasisLabel::ALL {
        if z != x {
            assert!(
                v.entry_is_zero(0, z.index()),
                "basis element {x} is not a simultaneous eigenvector"
            );
        }
    }
    v.get(0, x.index())
}
