//! Isometry classification of nondegenerate quadratic forms: over F_p by
//! (dim, discriminant sign), and symbolically over a p-adic field with odd
//! residue characteristic by (dim, discriminant square class, Hasse
//! invariant), together with the table of anisotropic diagonal
//! representatives and Witt decomposition over F_p.
//!
//! P-adic elements never appear as such: a diagonal entry is represented
//! only by its square class in {1, eps, pi, eps*pi} (eps a nonsquare unit,
//! pi the uniformizer class; odd-valuation entries are realized by pi^(-1)
//! in representatives). Isometry over such fields depends on nothing more.

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::matrix::{congruence_diagonalize, FpMatrix};

/// Sign of a nonzero quadratic character value. `Plus` sorts first, which
/// fixes the canonical orbit-label ordering (square class before nonsquare).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_sgn(s: i32) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// Isometry class of a nondegenerate quadratic form over F_p: dimension and
/// the sign of the discriminant's quadratic character. The zero-dimensional
/// class stands for the absent form of an unused partition slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteFormClass {
    pub dim: usize,
    pub disc_sign: Option<Sign>,
}

impl FiniteFormClass {
    pub const EMPTY: FiniteFormClass = FiniteFormClass {
        dim: 0,
        disc_sign: None,
    };

    pub fn nondegenerate(dim: usize, disc_sign: Sign) -> Self {
        assert!(dim > 0);
        FiniteFormClass {
            dim,
            disc_sign: Some(disc_sign),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.dim == 0
    }
}

impl std::fmt::Display for FiniteFormClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.disc_sign {
            None => write!(f, "0"),
            Some(s) => write!(f, "(dim {}, disc {})", self.dim, s),
        }
    }
}

/// One of the four square classes of F^x/(F^x)^2 for a p-adic field with odd
/// residue characteristic: 1, eps, pi, eps*pi. A Klein four-group under
/// multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PadicSquareClass {
    /// Unit part is the nonsquare unit eps (rather than 1).
    pub nonsquare_unit: bool,
    /// Valuation parity: odd-valuation classes are realized by pi^(-1) in
    /// diagonal representatives.
    pub odd_valuation: bool,
}

pub const SQ_ONE: PadicSquareClass = PadicSquareClass {
    nonsquare_unit: false,
    odd_valuation: false,
};
pub const SQ_EPS: PadicSquareClass = PadicSquareClass {
    nonsquare_unit: true,
    odd_valuation: false,
};
pub const SQ_PI: PadicSquareClass = PadicSquareClass {
    nonsquare_unit: false,
    odd_valuation: true,
};
pub const SQ_EPS_PI: PadicSquareClass = PadicSquareClass {
    nonsquare_unit: true,
    odd_valuation: true,
};

impl PadicSquareClass {
    pub fn all() -> [PadicSquareClass; 4] {
        [SQ_ONE, SQ_EPS, SQ_PI, SQ_EPS_PI]
    }

    /// Quadratic character of the unit part in the residue field.
    pub fn unit_sgn(&self) -> i32 {
        if self.nonsquare_unit {
            -1
        } else {
            1
        }
    }

    pub fn valuation(&self) -> u32 {
        self.odd_valuation as u32
    }

    /// The square class of -1: trivial iff p = 1 mod 4.
    pub fn of_minus_one(spec: &FieldSpec) -> PadicSquareClass {
        if spec.p() % 4 == 1 {
            SQ_ONE
        } else {
            SQ_EPS
        }
    }

    pub fn label(&self) -> &'static str {
        match (self.nonsquare_unit, self.odd_valuation) {
            (false, false) => "1",
            (true, false) => "eps",
            (false, true) => "pi",
            (true, true) => "eps_pi",
        }
    }

    pub fn parse(s: &str) -> Option<PadicSquareClass> {
        match s {
            "1" => Some(SQ_ONE),
            "eps" => Some(SQ_EPS),
            "pi" => Some(SQ_PI),
            "eps_pi" => Some(SQ_EPS_PI),
            _ => None,
        }
    }

    /// Reduction into the residue field, with pi^(-1) replaced by 1 (the
    /// substitution used when reading p-adic representatives over F_p).
    pub fn residue_rep(&self, spec: &FieldSpec) -> u64 {
        if self.nonsquare_unit {
            spec.nonsquare()
        } else {
            1
        }
    }
}

impl std::ops::Mul for PadicSquareClass {
    type Output = PadicSquareClass;
    fn mul(self, rhs: PadicSquareClass) -> PadicSquareClass {
        PadicSquareClass {
            nonsquare_unit: self.nonsquare_unit ^ rhs.nonsquare_unit,
            odd_valuation: self.odd_valuation ^ rhs.odd_valuation,
        }
    }
}

impl std::fmt::Display for PadicSquareClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Diagonal entry of a p-adic form representative, given by its square
/// class; odd valuation is realized by pi^(-1) as in the table rows.
pub type PadicDiagEntry = PadicSquareClass;

/// Isometry class of a nondegenerate quadratic form over a p-adic field
/// with odd residue characteristic: (dim, disc, Hasse). Dimensions 0 and 1
/// carry Hasse +1 under the product-over-pairs convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PadicFormClass {
    pub dim: usize,
    pub disc: PadicSquareClass,
    pub hasse: Sign,
}

impl PadicFormClass {
    pub const EMPTY: PadicFormClass = PadicFormClass {
        dim: 0,
        disc: SQ_ONE,
        hasse: Sign::Plus,
    };

    pub fn is_empty(&self) -> bool {
        self.dim == 0
    }
}

impl std::fmt::Display for PadicFormClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "(dim {}, disc {}, hasse {})", self.dim, self.disc, self.hasse)
        }
    }
}

/// Class of a nondegenerate diagonal form over F_p: (dim, sgn of det).
pub fn classify_diagonal_finite(entries: &[u64], spec: &FieldSpec) -> Result<FiniteFormClass> {
    if entries.is_empty() {
        return Ok(FiniteFormClass::EMPTY);
    }
    let mut det = 1u64;
    for (i, &a) in entries.iter().enumerate() {
        if a % spec.p() == 0 {
            return Err(Error::ZeroEntry(i));
        }
        det = spec.mul(det, a);
    }
    let sign = Sign::from_sgn(spec.sgn(det)).expect("det of nonzero entries is nonzero");
    Ok(FiniteFormClass::nondegenerate(entries.len(), sign))
}

/// Tame Hilbert symbol on square classes, for odd residue characteristic:
/// (a, b) = sgn(-1)^(v(a)v(b)) sgn(u_a)^v(b) sgn(u_b)^v(a), the residue
/// character of the unit (-1)^(v(a)v(b)) u_a^v(b) u_b^(-v(a)).
/// Symmetric and bimultiplicative.
pub fn hilbert_symbol(a: PadicSquareClass, b: PadicSquareClass, spec: &FieldSpec) -> Sign {
    let minus_one = spec.sgn(spec.p() - 1);
    let va = a.valuation();
    let vb = b.valuation();
    let mut s = 1i32;
    if va & vb == 1 {
        s *= minus_one;
    }
    if vb == 1 {
        s *= a.unit_sgn();
    }
    if va == 1 {
        s *= b.unit_sgn();
    }
    Sign::from_sgn(s).expect("symbol is never zero")
}

/// (dim, disc, Hasse) of a diagonal p-adic form. The Hasse invariant is the
/// product of Hilbert symbols over entry pairs i < j.
pub fn classify_diagonal_padic(
    entries: &[PadicDiagEntry],
    spec: &FieldSpec,
) -> Result<PadicFormClass> {
    if entries.is_empty() {
        return Err(Error::EmptyForm);
    }
    let disc = entries.iter().copied().fold(SQ_ONE, |acc, c| acc * c);
    let mut hasse = Sign::Plus;
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            hasse = hasse * hilbert_symbol(entries[i], entries[j], spec);
        }
    }
    Ok(PadicFormClass {
        dim: entries.len(),
        disc,
        hasse,
    })
}

/// Symbolic entry of the anisotropic-representative table: an optional
/// minus sign times one of {1, eps, pi^(-1), eps*pi^(-1)}.
#[derive(Debug, Clone, Copy)]
struct TableEntry {
    negate: bool,
    eps: bool,
    pi_inv: bool,
}

impl TableEntry {
    const fn new(negate: bool, eps: bool, pi_inv: bool) -> Self {
        TableEntry { negate, eps, pi_inv }
    }

    fn square_class(&self, spec: &FieldSpec) -> PadicSquareClass {
        let mut c = PadicSquareClass {
            nonsquare_unit: self.eps,
            odd_valuation: self.pi_inv,
        };
        if self.negate {
            c = c * PadicSquareClass::of_minus_one(spec);
        }
        c
    }
}

/// The rows of the anisotropic-representative table for one dimension,
/// parameter lists expanded. Row counts are 4, 6, 4, 1 for dims 1..4;
/// anisotropic forms do not exist above dimension 4.
fn table_rows(dim: usize) -> Vec<Vec<TableEntry>> {
    const T: fn(bool, bool, bool) -> TableEntry = TableEntry::new;
    match dim {
        1 => {
            // [t], t in {1, eps, pi^-1, eps pi^-1}
            vec![
                vec![T(false, false, false)],
                vec![T(false, true, false)],
                vec![T(false, false, true)],
                vec![T(false, true, true)],
            ]
        }
        2 => {
            // diag(t, -eps t), t in {1, pi^-1}
            // diag(t pi^-1, -t'), t, t' in {1, eps}
            vec![
                vec![T(false, false, false), T(true, true, false)],
                vec![T(false, false, true), T(true, true, true)],
                vec![T(false, false, true), T(true, false, false)],
                vec![T(false, false, true), T(true, true, false)],
                vec![T(false, true, true), T(true, false, false)],
                vec![T(false, true, true), T(true, true, false)],
            ]
        }
        3 => {
            // diag(1, -eps, t pi^-1) and diag(pi^-1, -eps pi^-1, t), t in {1, eps}
            vec![
                vec![T(false, false, false), T(true, true, false), T(false, false, true)],
                vec![T(false, false, false), T(true, true, false), T(false, true, true)],
                vec![T(false, false, true), T(true, true, true), T(false, false, false)],
                vec![T(false, false, true), T(true, true, true), T(false, true, false)],
            ]
        }
        4 => {
            // diag(1, -eps, -pi^-1, eps pi^-1)
            vec![vec![
                T(false, false, false),
                T(true, true, false),
                T(true, false, true),
                T(false, true, true),
            ]]
        }
        _ => Vec::new(),
    }
}

/// Anisotropic representatives of the given dimension as square-class rows
/// for a fixed residue class of p (the class of -1 depends on p mod 4).
pub fn anisotropic_representatives(dim: usize, spec: &FieldSpec) -> Vec<Vec<PadicDiagEntry>> {
    table_rows(dim)
        .into_iter()
        .map(|row| row.iter().map(|e| e.square_class(spec)).collect())
        .collect()
}

/// The unique table row classifying to `cls`, or Unrealizable when the
/// requested invariants belong to no anisotropic class (isotropic classes
/// have no table row).
pub fn anisotropic_representative(
    cls: &PadicFormClass,
    spec: &FieldSpec,
) -> Result<Vec<PadicDiagEntry>> {
    if cls.dim == 0 || cls.dim > 4 {
        return Err(Error::Unrealizable { dim: cls.dim });
    }
    for row in anisotropic_representatives(cls.dim, spec) {
        if classify_diagonal_padic(&row, spec)? == *cls {
            return Ok(row);
        }
    }
    Err(Error::Unrealizable { dim: cls.dim })
}

/// All isometry classes of the given dimension (dim <= 4), each with a
/// diagonal representative assembled Witt-style: m hyperbolic planes
/// [1, -1] followed by an anisotropic table row. Sorted by (disc, hasse).
pub fn enumerate_padic_classes(
    dim: usize,
    spec: &FieldSpec,
) -> Result<Vec<(PadicFormClass, Vec<PadicDiagEntry>)>> {
    if dim == 0 {
        return Ok(vec![(PadicFormClass::EMPTY, Vec::new())]);
    }
    if dim > 4 {
        return Err(Error::UnsupportedDimension(dim));
    }
    let minus_one = PadicSquareClass::of_minus_one(spec);
    let mut out: Vec<(PadicFormClass, Vec<PadicDiagEntry>)> = Vec::new();
    for m in 0..=(dim / 2) {
        let aniso_dim = dim - 2 * m;
        let aniso_rows: Vec<Vec<PadicDiagEntry>> = if aniso_dim == 0 {
            vec![Vec::new()]
        } else {
            anisotropic_representatives(aniso_dim, spec)
        };
        for row in aniso_rows {
            let mut entries = Vec::with_capacity(dim);
            for _ in 0..m {
                entries.push(SQ_ONE);
                entries.push(minus_one);
            }
            entries.extend(row);
            let cls = classify_diagonal_padic(&entries, spec)?;
            debug_assert!(
                out.iter().all(|(c, _)| *c != cls),
                "Witt decomposition gives each class once"
            );
            out.push((cls, entries));
        }
    }
    out.sort_by_key(|(c, _)| (c.disc, c.hasse));
    Ok(out)
}

/// Witt decomposition of a nondegenerate diagonal form over F_p: the number
/// of hyperbolic planes and the anisotropic residual class, found by
/// honest isotropic-vector search (ternary subforms over F_p are always
/// isotropic, so searching vectors supported on the first three coordinates
/// suffices).
pub fn witt_decompose(entries: &[u64], spec: &FieldSpec) -> Result<(usize, FiniteFormClass)> {
    let p = spec.p();
    let mut diag: Vec<u64> = Vec::with_capacity(entries.len());
    for (i, &a) in entries.iter().enumerate() {
        let a = a % p;
        if a == 0 {
            return Err(Error::ZeroEntry(i));
        }
        diag.push(a);
    }
    let mut planes = 0usize;
    loop {
        let d = diag.len();
        if d <= 1 {
            break;
        }
        let Some(v) = isotropic_vector(&diag, spec) else {
            break;
        };
        diag = split_hyperbolic(&diag, &v, spec)?;
        planes += 1;
    }
    let class = classify_diagonal_finite(&diag, spec)?;
    Ok((planes, class))
}

/// Nonzero v with sum a_i v_i^2 = 0, or None. Searches vectors supported on
/// the first min(d, 3) coordinates.
fn isotropic_vector(diag: &[u64], spec: &FieldSpec) -> Option<Vec<u64>> {
    let p = spec.p();
    let d = diag.len();
    let k = d.min(3);
    let mut v = vec![0u64; k];
    loop {
        // advance odometer
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            v[i] += 1;
            if v[i] < p {
                break;
            }
            v[i] = 0;
            i += 1;
        }
        let q: u64 = (0..k).fold(0, |acc, i| (acc + diag[i] * (v[i] * v[i] % p)) % p);
        if q == 0 {
            let mut full = v.clone();
            full.resize(d, 0);
            return Some(full);
        }
    }
}

/// Splits off the hyperbolic plane spanned by the isotropic v and a
/// non-orthogonal partner, returning a diagonalization of the orthogonal
/// complement.
fn split_hyperbolic(diag: &[u64], v: &[u64], spec: &FieldSpec) -> Result<Vec<u64>> {
    let p = spec.p();
    let d = diag.len();
    // B(v, e_i) = a_i v_i; a partner exists since the form is nondegenerate.
    let w_idx = (0..d)
        .find(|&i| !(diag[i] * v[i]).is_multiple_of(p))
        .expect("isotropic vector is nonzero");
    // complement = kernel of the two functionals B(v, .) and B(e_w, .)
    let mut rows = FpMatrix::zeros(spec, 2, d);
    for i in 0..d {
        rows[(0, i)] = diag[i] * v[i] % p;
    }
    rows[(1, w_idx)] = diag[w_idx] % p;
    let basis = rows.kernel_basis();
    debug_assert_eq!(basis.len(), d - 2);
    let mut gram = FpMatrix::zeros(spec, basis.len(), basis.len());
    for s in 0..basis.len() {
        for t in 0..basis.len() {
            let val = (0..d).fold(0u64, |acc, i| {
                (acc + diag[i] * (basis[s][i] * basis[t][i] % p)) % p
            });
            gram[(s, t)] = val;
        }
    }
    let new_diag = congruence_diagonalize(&gram)?;
    debug_assert!(
        new_diag.iter().all(|&x| x != 0),
        "complement of a hyperbolic plane in a nondegenerate form is nondegenerate"
    );
    Ok(new_diag)
}
