//! Lusztig partitions and functions on sp_2n(F_p), the finite Fourier
//! transform on the algebra (and on products sp_2a x sp_2b), and
//! eigenfunction verification against the predicted eigenvalue tau(p)^n.
//!
//! The transform is F(f)(X) = p^(-dim/2) sum_Y psi(tr(XY)) f(Y) with
//! dim = n(2n+1), the self-dual normalization; F^2 is the parity operator
//! and F^4 the identity.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::jsonutil::{complex_value, sig12};
use crate::liealg::{for_each_sp, is_nilpotent, sp_dim, SymplecticPartition};
use crate::orbits::{classify_nilpotent, enumerate_rational_orbits_finite, OrbitLabel};
use crate::qforms::Sign;

/// Point cap for materialized transforms.
const MAX_POINTS: u128 = 300_000;

/// The algebra a class function lives on: sp_2n(F_p) or a two-factor
/// product. Points are flattened row-major matrix entries (concatenated for
/// products).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algebra {
    Sp { n: usize, p: u64 },
    Product { n1: usize, n2: usize, p: u64 },
}

impl Algebra {
    pub fn p(&self) -> u64 {
        match *self {
            Algebra::Sp { p, .. } | Algebra::Product { p, .. } => p,
        }
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec::new(self.p()).expect("algebra carries a valid prime")
    }

    /// Total rank: the exponent of the predicted eigenvalue.
    pub fn total_rank(&self) -> usize {
        match *self {
            Algebra::Sp { n, .. } => n,
            Algebra::Product { n1, n2, .. } => n1 + n2,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Algebra::Sp { n, .. } => sp_dim(n),
            Algebra::Product { n1, n2, .. } => sp_dim(n1) + sp_dim(n2),
        }
    }

    pub fn point_count(&self) -> Option<u128> {
        (self.p() as u128).checked_pow(self.dim() as u32)
    }

    fn key_len(&self) -> usize {
        match *self {
            Algebra::Sp { n, .. } => 4 * n * n,
            Algebra::Product { n1, n2, .. } => 4 * n1 * n1 + 4 * n2 * n2,
        }
    }

    /// All points of the algebra as flattened keys, in a fixed order.
    pub fn enumerate_points(&self) -> Result<Vec<Vec<u64>>> {
        match self.point_count() {
            Some(c) if c <= MAX_POINTS => {}
            _ => {
                return Err(Error::TooLarge(format!(
                    "algebra has p^{} points, materialization cap is {MAX_POINTS}",
                    self.dim()
                )))
            }
        }
        let spec = self.spec();
        match *self {
            Algebra::Sp { n, .. } => {
                let mut out = Vec::new();
                for_each_sp(n, &spec, |m| out.push(m.data().to_vec()));
                Ok(out)
            }
            Algebra::Product { n1, n2, .. } => {
                let mut left = Vec::new();
                for_each_sp(n1, &spec, |m| left.push(m.data().to_vec()));
                let mut right = Vec::new();
                for_each_sp(n2, &spec, |m| right.push(m.data().to_vec()));
                let mut out = Vec::with_capacity(left.len() * right.len());
                for a in &left {
                    for b in &right {
                        let mut k = a.clone();
                        k.extend_from_slice(b);
                        out.push(k);
                    }
                }
                Ok(out)
            }
        }
    }

    /// tr(XY), summed over factors for products.
    pub fn pairing(&self, x: &[u64], y: &[u64]) -> u64 {
        let p = self.p();
        match *self {
            Algebra::Sp { n, .. } => trace_pair(p, 2 * n, x, y),
            Algebra::Product { n1, n2, .. } => {
                let split = 4 * n1 * n1;
                let t1 = trace_pair(p, 2 * n1, &x[..split], &y[..split]);
                let t2 = trace_pair(p, 2 * n2, &x[split..], &y[split..]);
                (t1 + t2) % p
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match *self {
            Algebra::Sp { n, p } => json!({ "type": "sp", "ranks": [n], "p": p }),
            Algebra::Product { n1, n2, p } => {
                json!({ "type": "sp_product", "ranks": [n1, n2], "p": p })
            }
        }
    }
}

fn trace_pair(p: u64, size: usize, x: &[u64], y: &[u64]) -> u64 {
    let mut acc = 0u64;
    for i in 0..size {
        for j in 0..size {
            acc = (acc + x[i * size + j] * y[j * size + i]) % p;
        }
    }
    acc
}

/// Finitely supported complex function on the algebra, keyed by flattened
/// points. Conjugation-invariance is a property of the functions built
/// here, not an enforced structural invariant.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    pub algebra: Algebra,
    values: BTreeMap<Vec<u64>, Complex64>,
}

impl ClassFunction {
    pub fn new(algebra: Algebra) -> Self {
        ClassFunction {
            algebra,
            values: BTreeMap::new(),
        }
    }

    pub fn delta(algebra: Algebra, point: Vec<u64>) -> Self {
        let mut f = ClassFunction::new(algebra);
        f.insert(point, Complex64::new(1.0, 0.0));
        f
    }

    pub fn insert(&mut self, point: Vec<u64>, value: Complex64) {
        debug_assert_eq!(point.len(), self.algebra.key_len());
        self.values.insert(point, value);
    }

    pub fn value(&self, point: &[u64]) -> Complex64 {
        self.values
            .get(point)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn support(&self) -> impl Iterator<Item = (&Vec<u64>, &Complex64)> {
        self.values.iter()
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn total_mass(&self) -> Complex64 {
        self.values.values().sum()
    }

    pub fn norm_sqr_sum(&self) -> f64 {
        self.values.values().map(|v| v.norm_sqr()).sum()
    }

    /// f(-X): the parity image, which F^2 must produce.
    pub fn parity(&self) -> ClassFunction {
        let p = self.algebra.p();
        let mut out = ClassFunction::new(self.algebra.clone());
        for (k, &v) in &self.values {
            let neg: Vec<u64> = k.iter().map(|&e| (p - e) % p).collect();
            out.insert(neg, v);
        }
        out
    }

    pub fn sup_distance(&self, other: &ClassFunction) -> f64 {
        let mut max = 0.0f64;
        for (k, &v) in &self.values {
            max = max.max((v - other.value(k)).norm());
        }
        for (k, &v) in &other.values {
            max = max.max((v - self.value(k)).norm());
        }
        max
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .values
            .iter()
            .map(|(k, v)| {
                let point = match self.algebra {
                    Algebra::Sp { .. } => json!(k),
                    Algebra::Product { n1, .. } => {
                        let split = 4 * n1 * n1;
                        json!([&k[..split], &k[split..]])
                    }
                };
                json!({ "point": point, "re": sig12(v.re), "im": sig12(v.im) })
            })
            .collect();
        json!({ "algebra": self.algebra.to_json(), "entries": entries })
    }
}

/// Index i with i(i+1)/2 = n, when n is triangular.
pub fn triangular_index(n: u64) -> Option<u64> {
    let i = ((8 * n + 1).isqrt() - 1) / 2;
    [i, i + 1].into_iter().find(|&cand| cand * (cand + 1) / 2 == n)
}

fn staircase(index: u64) -> Vec<usize> {
    (1..=index as usize).rev().map(|k| 2 * k).collect()
}

/// The partition (2i, 2i-2, ..., 4, 2) of 2n, defined when n = i(i+1)/2.
pub fn lusztig_partition(n: u64) -> Result<SymplecticPartition> {
    let i = triangular_index(n).ok_or(Error::NotTriangular(n))?;
    SymplecticPartition::new(staircase(i))
}

/// Multiset union of the Lusztig partitions of d1 and d2 (either may be 0).
pub fn extended_lusztig_partition(d1: u64, d2: u64) -> Result<SymplecticPartition> {
    let i1 = triangular_index(d1).ok_or(Error::NotTriangular(d1))?;
    let i2 = triangular_index(d2).ok_or(Error::NotTriangular(d2))?;
    let mut parts = staircase(i1);
    parts.extend(staircase(i2));
    parts.sort_unstable_by(|a, b| b.cmp(a));
    SymplecticPartition::new(parts)
}

/// Whether the partition is a union of two Lusztig staircases: all parts
/// even, and the multiplicities of 2, 4, ..., 2i read 2...2 1...1 with no
/// gaps.
pub fn is_extended_lusztig(lambda: &SymplecticPartition) -> bool {
    let parts = lambda.parts();
    if parts.is_empty() || parts.iter().any(|&x| x % 2 == 1) {
        return false;
    }
    let top = parts[0] / 2;
    let mults: Vec<usize> = (1..=top).map(|k| lambda.multiplicity(2 * k)).collect();
    if mults.iter().sum::<usize>() != parts.len() {
        return false;
    }
    let mut seen_one = false;
    for &m in &mults {
        match m {
            2 if !seen_one => {}
            1 => seen_one = true,
            _ => return false,
        }
    }
    true
}

/// The sign character on orbit labels: the product over part sizes
/// i = 2 mod 4 of sgn((-1)^floor(dim Q_i / 2) det Q_i).
pub fn circ_sgn(label: &OrbitLabel, spec: &FieldSpec) -> Result<Sign> {
    if !is_extended_lusztig(&label.partition) {
        return Err(Error::WrongSupport);
    }
    let sgn_minus_one = spec.sgn(spec.p() - 1);
    let mut acc = 1i32;
    for (slot, class) in label.forms.iter().enumerate() {
        let j = 2 * (slot + 1);
        if class.is_empty() || (j / 2) % 2 == 0 {
            continue;
        }
        let disc = class.disc_sign.expect("nonempty class").value();
        let minus_pow = if (class.dim / 2) % 2 == 1 {
            sgn_minus_one
        } else {
            1
        };
        acc *= minus_pow * disc;
    }
    Ok(Sign::from_sgn(acc).expect("product of units"))
}

/// The signed orbit-coefficient form of the Lusztig function on sp_2n:
/// coefficient circ_sgn(Q) on each rational orbit of the Lusztig partition.
pub fn lusztig_coefficients(n: u64, spec: &FieldSpec) -> Result<Vec<(OrbitLabel, Sign)>> {
    let lambda = lusztig_partition(n)?;
    if lambda.parts().is_empty() {
        return Err(Error::NotTriangular(0));
    }
    enumerate_rational_orbits_finite(&lambda, spec)
        .into_iter()
        .map(|label| {
            let s = circ_sgn(&label, spec)?;
            Ok((label, s))
        })
        .collect()
}

/// The Lusztig function materialized pointwise over the nilpotent cone.
/// Only ranks with an enumerable algebra are materialized (n <= 2, so in
/// practice n = 1); higher triangular ranks stay in coefficient form.
pub fn lusztig_function(n: u64, spec: &FieldSpec) -> Result<ClassFunction> {
    let coeffs = lusztig_coefficients(n, spec)?;
    if n > 2 {
        return Err(Error::TooLarge(format!(
            "materialization is capped at n <= 2; rank {n} is available in coefficient form"
        )));
    }
    let algebra = Algebra::Sp {
        n: n as usize,
        p: spec.p(),
    };
    algebra.point_count().filter(|&c| c <= MAX_POINTS).ok_or_else(|| {
        Error::TooLarge("algebra too large to materialize".into())
    })?;
    let by_label: std::collections::HashMap<OrbitLabel, Sign> =
        coeffs.into_iter().collect();
    let mut f = ClassFunction::new(algebra);
    for_each_sp(n as usize, spec, |m| {
        if !is_nilpotent(m) {
            return;
        }
        let label = classify_nilpotent(m, spec).expect("cone member classifies");
        if let Some(s) = by_label.get(&label) {
            f.insert(m.data().to_vec(), Complex64::new(s.value() as f64, 0.0));
        }
    });
    Ok(f)
}

/// Pointwise product f1(Y1) f2(Y2) of the Lusztig functions of ranks d1 and
/// d2 on the product algebra. Materialized only for d1 = d2 = 1.
pub fn product_lusztig_function(d1: u64, d2: u64, spec: &FieldSpec) -> Result<ClassFunction> {
    if triangular_index(d1).is_none() || d1 == 0 {
        return Err(Error::NotTriangular(d1));
    }
    if triangular_index(d2).is_none() || d2 == 0 {
        return Err(Error::NotTriangular(d2));
    }
    if (d1, d2) != (1, 1) {
        return Err(Error::TooLarge(
            "product materialization is supported for (1, 1) only".into(),
        ));
    }
    let f1 = lusztig_function(d1, spec)?;
    let f2 = lusztig_function(d2, spec)?;
    let mut f = ClassFunction::new(Algebra::Product {
        n1: d1 as usize,
        n2: d2 as usize,
        p: spec.p(),
    });
    for (k1, &v1) in f1.support() {
        for (k2, &v2) in f2.support() {
            let mut k = k1.clone();
            k.extend_from_slice(k2);
            f.insert(k, v1 * v2);
        }
    }
    Ok(f)
}

/// F(f)(X) = p^(-dim/2) sum over the support of f of psi(<X, Y>) f(Y),
/// materialized over every point of the algebra.
pub fn fourier_transform(f: &ClassFunction) -> Result<ClassFunction> {
    let spec = f.algebra.spec();
    let psi = spec.character_table();
    let points = f.algebra.enumerate_points()?;
    let norm = (spec.p() as f64).powf(-(f.algebra.dim() as f64) / 2.0);
    let support: Vec<(&Vec<u64>, Complex64)> =
        f.support().map(|(k, &v)| (k, v)).collect();
    let mut out = ClassFunction::new(f.algebra.clone());
    for x in points {
        let mut acc = Complex64::new(0.0, 0.0);
        for (y, v) in &support {
            acc += psi[f.algebra.pairing(&x, y) as usize] * v;
        }
        out.insert(x, norm * acc);
    }
    Ok(out)
}

/// Result of testing F(f) = gamma f: the measured eigenvalue at a maximal
/// point of |f|, the sup-norm residual over the whole algebra, and the
/// comparison with the predicted tau^n.
#[derive(Debug, Clone)]
pub struct EigenReport {
    pub is_eigenfunction: bool,
    pub eigenvalue: Complex64,
    pub max_residual: f64,
    pub predicted: Complex64,
    pub matches_prediction: bool,
}

impl EigenReport {
    pub fn to_json(&self) -> Value {
        json!({
            "is_eigenfunction": self.is_eigenfunction,
            "eigenvalue": complex_value(self.eigenvalue),
            "max_residual": sig12(self.max_residual),
            "predicted": complex_value(self.predicted),
            "matches_prediction": self.matches_prediction,
        })
    }
}

/// tau(p)^n, the predicted Fourier eigenvalue of the Lusztig function on
/// sp_2n (and, with n = d1 + d2, of products).
pub fn predicted_eigenvalue(n: u64, spec: &FieldSpec) -> Complex64 {
    spec.tau().powu(n as u32)
}

/// Computes F(f), reads gamma off a point where |f| is maximal, and reports
/// the sup-norm residual of F(f) - gamma f over the full algebra.
pub fn eigen_check(f: &ClassFunction, tolerance: f64) -> Result<EigenReport> {
    let fmax = f.max_abs();
    if fmax == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let transform = fourier_transform(f)?;
    let (xstar, _) = f
        .support()
        .filter(|(_, v)| v.norm() == fmax)
        .map(|(k, v)| (k.clone(), *v))
        .next()
        .expect("nonzero function has a maximal point");
    let gamma = transform.value(&xstar) / f.value(&xstar);
    let mut residual = 0.0f64;
    for (k, &v) in transform.support() {
        residual = residual.max((v - gamma * f.value(k)).norm());
    }
    let predicted = predicted_eigenvalue(f.algebra.total_rank() as u64, &f.algebra.spec());
    Ok(EigenReport {
        is_eigenfunction: residual <= tolerance,
        eigenvalue: gamma,
        max_residual: residual,
        predicted,
        matches_prediction: (gamma - predicted).norm() <= tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_TOLERANCE;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    #[test]
    fn triangular_index_values() {
        assert_eq!(triangular_index(0), Some(0));
        assert_eq!(triangular_index(1), Some(1));
        assert_eq!(triangular_index(3), Some(2));
        assert_eq!(triangular_index(5), None);
        assert_eq!(triangular_index(10), Some(4));
        assert_eq!(triangular_index(11), None);
    }

    #[test]
    fn lusztig_partition_values() {
        assert_eq!(lusztig_partition(1).unwrap().parts(), &[2]);
        assert_eq!(lusztig_partition(3).unwrap().parts(), &[4, 2]);
        assert_eq!(lusztig_partition(10).unwrap().parts(), &[8, 6, 4, 2]);
        assert_eq!(lusztig_partition(2), Err(Error::NotTriangular(2)));
        assert_eq!(lusztig_partition(5), Err(Error::NotTriangular(5)));
    }

    #[test]
    fn extended_partition_values() {
        assert_eq!(extended_lusztig_partition(3, 1).unwrap().parts(), &[4, 2, 2]);
        assert_eq!(extended_lusztig_partition(1, 1).unwrap().parts(), &[2, 2]);
        assert_eq!(
            extended_lusztig_partition(6, 0).unwrap(),
            lusztig_partition(6).unwrap()
        );
        assert_eq!(extended_lusztig_partition(2, 1), Err(Error::NotTriangular(2)));
    }

    #[test]
    fn extended_lusztig_recognition() {
        let part = |v: &[usize]| SymplecticPartition::new(v.to_vec()).unwrap();
        assert!(is_extended_lusztig(&part(&[2])));
        assert!(is_extended_lusztig(&part(&[2, 2])));
        assert!(is_extended_lusztig(&part(&[4, 2, 2])));
        assert!(is_extended_lusztig(&part(&[4, 4, 2, 2])));
        assert!(!is_extended_lusztig(&part(&[2, 1, 1])));
        assert!(!is_extended_lusztig(&part(&[4, 4, 4])));
        assert!(!is_extended_lusztig(&part(&[4])));
        assert!(!is_extended_lusztig(&part(&[6, 2])));
    }

    #[test]
    fn circ_sgn_paper_signs() {
        let spec = fp(5);
        // sp_6 labels in listing order carry signs +, +, -, -
        let coeffs = lusztig_coefficients(3, &spec).unwrap();
        let signs: Vec<i32> = coeffs.iter().map(|(_, s)| s.value()).collect();
        assert_eq!(signs, vec![1, 1, -1, -1]);
        // sp_2: minus on the nonsquare orbit
        let coeffs = lusztig_coefficients(1, &spec).unwrap();
        let signs: Vec<i32> = coeffs.iter().map(|(_, s)| s.value()).collect();
        assert_eq!(signs, vec![1, -1]);
    }

    #[test]
    fn circ_sgn_rejects_other_partitions() {
        let spec = fp(3);
        let label = OrbitLabel {
            partition: SymplecticPartition::new(vec![2, 1, 1]).unwrap(),
            forms: vec![
                crate::qforms::FiniteFormClass::nondegenerate(1, Sign::Plus),
                crate::qforms::FiniteFormClass::EMPTY,
            ],
        };
        assert_eq!(circ_sgn(&label, &spec), Err(Error::WrongSupport));
    }

    #[test]
    fn lusztig_function_values_p3() {
        let spec = fp(3);
        let f = lusztig_function(1, &spec).unwrap();
        // support: the 8 nonzero nilpotents of sp_2(F_3)
        assert_eq!(f.support_len(), 8);
        assert!((f.value(&[0, 1, 0, 0]) - Complex64::new(1.0, 0.0)).norm() < DEFAULT_TOLERANCE);
        assert!((f.value(&[0, 2, 0, 0]) - Complex64::new(-1.0, 0.0)).norm() < DEFAULT_TOLERANCE);
        assert!(f.value(&[0, 0, 0, 0]).norm() < DEFAULT_TOLERANCE);
        // total mass vanishes: opposite signs on equal orbits
        assert!(f.total_mass().norm() < DEFAULT_TOLERANCE);
        assert!(lusztig_function(5, &spec).is_err());
    }

    #[test]
    fn lusztig_function_mass_p5() {
        let f = lusztig_function(1, &fp(5)).unwrap();
        assert_eq!(f.support_len(), 24);
        assert!(f.total_mass().norm() < DEFAULT_TOLERANCE);
    }

    #[test]
    fn delta_at_zero_transforms_to_constant() {
        let algebra = Algebra::Sp { n: 1, p: 3 };
        let f = ClassFunction::delta(algebra, vec![0u64; 4]);
        let t = fourier_transform(&f).unwrap();
        let expected = (3.0f64).powf(-1.5);
        assert_eq!(t.support_len(), 27);
        for (_, v) in t.support() {
            assert!((v - Complex64::new(expected, 0.0)).norm() < DEFAULT_TOLERANCE);
        }
    }

    #[test]
    fn double_transform_is_parity() {
        let spec = fp(3);
        let f = lusztig_function(1, &spec).unwrap();
        let ff = fourier_transform(&fourier_transform(&f).unwrap()).unwrap();
        assert!(ff.sup_distance(&f.parity()) < DEFAULT_TOLERANCE);
        // also on an asymmetric delta
        let d = ClassFunction::delta(Algebra::Sp { n: 1, p: 3 }, vec![1, 2, 1, 2]);
        let dd = fourier_transform(&fourier_transform(&d).unwrap()).unwrap();
        assert!(dd.sup_distance(&d.parity()) < DEFAULT_TOLERANCE);
    }

    #[test]
    fn parseval_holds() {
        for p in [3u64, 5, 7] {
            let spec = fp(p);
            let f = lusztig_function(1, &spec).unwrap();
            let t = fourier_transform(&f).unwrap();
            assert!(
                (t.norm_sqr_sum() - f.norm_sqr_sum()).abs() < DEFAULT_TOLERANCE * f.norm_sqr_sum()
            );
        }
    }

    #[test]
    fn eigen_check_rank_one() {
        let spec = fp(3);
        let f = lusztig_function(1, &spec).unwrap();
        let report = eigen_check(&f, DEFAULT_TOLERANCE).unwrap();
        assert!(report.is_eigenfunction);
        assert!((report.eigenvalue - Complex64::new(0.0, -1.0)).norm() < DEFAULT_TOLERANCE);
        assert!(report.matches_prediction);

        let f5 = lusztig_function(1, &fp(5)).unwrap();
        let report5 = eigen_check(&f5, DEFAULT_TOLERANCE).unwrap();
        assert!(report5.is_eigenfunction);
        assert!((report5.eigenvalue - Complex64::new(1.0, 0.0)).norm() < DEFAULT_TOLERANCE);
        assert!(report5.matches_prediction);
    }

    #[test]
    fn bump_function_is_not_eigen() {
        let d = ClassFunction::delta(Algebra::Sp { n: 1, p: 3 }, vec![1, 2, 1, 2]);
        let report = eigen_check(&d, DEFAULT_TOLERANCE).unwrap();
        assert!(!report.is_eigenfunction);
        assert!(report.max_residual > 1e-3);
    }

    #[test]
    fn zero_function_is_rejected() {
        let f = ClassFunction::new(Algebra::Sp { n: 1, p: 3 });
        assert!(matches!(
            eigen_check(&f, DEFAULT_TOLERANCE),
            Err(Error::ZeroFunction)
        ));
    }

    #[test]
    fn predicted_eigenvalue_values() {
        let minus_i = Complex64::new(0.0, -1.0);
        let minus_one = Complex64::new(-1.0, 0.0);
        assert!((predicted_eigenvalue(1, &fp(3)) - minus_i).norm() < DEFAULT_TOLERANCE);
        assert!((predicted_eigenvalue(2, &fp(3)) - minus_one).norm() < DEFAULT_TOLERANCE);
        for n in 1..6 {
            assert!(
                (predicted_eigenvalue(n, &fp(13)) - Complex64::new(1.0, 0.0)).norm()
                    < DEFAULT_TOLERANCE
            );
        }
    }

    #[test]
    fn product_function_eigen_p3() {
        let spec = fp(3);
        let f = product_lusztig_function(1, 1, &spec).unwrap();
        assert_eq!(f.support_len(), 64);
        let report = eigen_check(&f, DEFAULT_TOLERANCE).unwrap();
        assert!(report.is_eigenfunction);
        assert!((report.eigenvalue - Complex64::new(-1.0, 0.0)).norm() < DEFAULT_TOLERANCE);
        assert!(report.matches_prediction);
        assert!(matches!(
            product_lusztig_function(3, 1, &spec),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            product_lusztig_function(2, 1, &spec),
            Err(Error::NotTriangular(2))
        ));
    }

    #[test]
    fn product_support_is_nilpotent_pairs() {
        use crate::matrix::FpMatrix;
        let spec = fp(3);
        let f = product_lusztig_function(1, 1, &spec).unwrap();
        for (k, _) in f.support() {
            let left = FpMatrix::from_flat(&spec, 2, 2, k[..4].to_vec()).unwrap();
            let right = FpMatrix::from_flat(&spec, 2, 2, k[4..].to_vec()).unwrap();
            assert!(is_nilpotent(&left));
            assert!(is_nilpotent(&right));
        }
    }
}
