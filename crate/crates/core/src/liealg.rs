//! The symplectic Lie algebra sp_2n(F_p): membership against the standard
//! form J = [[0, I], [-I, 0]], the invariant trace form, nilpotency, Jordan
//! type, a transvection generating set for Sp_2n(F_p), and exhaustive
//! enumeration of the algebra at desk scale.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::matrix::FpMatrix;

/// Partition of 2n in which every odd part has even multiplicity — the
/// Jordan types of nilpotent elements of sp_2n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticPartition {
    parts: Vec<usize>,
}

impl SymplecticPartition {
    /// Parts must be positive, non-increasing, and sum to an even number.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition("parts must be non-increasing".into()));
        }
        let total: usize = parts.iter().sum();
        if !total.is_multiple_of(2) {
            return Err(Error::InvalidPartition(format!("parts sum to odd {total}")));
        }
        Ok(SymplecticPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Rank n, half the partitioned total.
    pub fn n(&self) -> usize {
        self.total() / 2
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn multiplicity(&self, j: usize) -> usize {
        self.parts.iter().filter(|&&x| x == j).count()
    }

    /// Every odd part has even multiplicity.
    pub fn is_admissible(&self) -> bool {
        self.parts
            .iter()
            .filter(|&&j| j % 2 == 1)
            .all(|&j| self.multiplicity(j).is_multiple_of(2))
    }
}

impl std::fmt::Display for SymplecticPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// The standard symplectic form J = [[0, I_n], [-I_n, 0]].
pub fn symplectic_j(n: usize, spec: &FieldSpec) -> FpMatrix {
    let mut j = FpMatrix::zeros(spec, 2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = 1;
        j[(n + i, i)] = spec.p() - 1;
    }
    j
}

/// omega(u, v) = u^t J v on coordinate vectors.
pub fn omega(u: &[u64], v: &[u64], spec: &FieldSpec) -> u64 {
    let p = spec.p();
    let n = u.len() / 2;
    debug_assert_eq!(u.len(), v.len());
    let mut acc = 0u64;
    for i in 0..n {
        acc = (acc + u[i] * v[n + i]) % p;
        acc = (acc + p * p - u[n + i] * v[i]) % p; // subtract without underflow
    }
    acc
}

fn rank_of(size: usize) -> Result<usize> {
    if !size.is_multiple_of(2) {
        return Err(Error::DimensionMismatch(format!(
            "symplectic matrices have even size, got {size}"
        )));
    }
    Ok(size / 2)
}

/// Membership X^t J + J X = 0 (the derivative of g^t J g = J).
pub fn is_symplectic_lie(x: &FpMatrix) -> Result<bool> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch("matrix must be square".into()));
    }
    let n = rank_of(x.rows())?;
    let spec = FieldSpec::new(x.p()).expect("modulus validated at construction");
    let j = symplectic_j(n, &spec);
    let lhs = x.transpose().mul(&j)?.add(&j.mul(x)?)?;
    Ok(lhs.is_zero())
}

/// Membership g^t J g = J for group elements.
pub fn is_symplectic_group(g: &FpMatrix) -> Result<bool> {
    if !g.is_square() {
        return Err(Error::DimensionMismatch("matrix must be square".into()));
    }
    let n = rank_of(g.rows())?;
    let spec = FieldSpec::new(g.p()).expect("modulus validated at construction");
    let j = symplectic_j(n, &spec);
    Ok(g.transpose().mul(&j)?.mul(g)? == j)
}

/// The invariant bilinear form tr(XY). Proportional to the Killing form;
/// this is the normalization the Fourier kernel uses.
pub fn trace_form(x: &FpMatrix, y: &FpMatrix) -> Result<u64> {
    if x.rows() != y.rows() || x.cols() != y.cols() || x.p() != y.p() {
        return Err(Error::DimensionMismatch("trace form needs equal shapes".into()));
    }
    let p = x.p();
    let mut acc = 0u64;
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            acc = (acc + x[(i, j)] * y[(j, i)]) % p;
        }
    }
    Ok(acc)
}

/// X^(2n) = 0.
pub fn is_nilpotent(x: &FpMatrix) -> bool {
    if !x.is_square() {
        return false;
    }
    x.pow(x.rows() as u64).map(|m| m.is_zero()).unwrap_or(false)
}

/// Jordan type from the rank sequence r_k = rank(X^k): the number of parts
/// of size >= k is r_(k-1) - r_k.
pub fn jordan_partition(x: &FpMatrix) -> Result<SymplecticPartition> {
    if !is_nilpotent(x) {
        return Err(Error::NotNilpotent);
    }
    let size = x.rows();
    let mut ranks = vec![size];
    let mut power = x.clone();
    while ranks[ranks.len() - 1] > 0 {
        ranks.push(power.rank());
        power = power.mul(x)?;
    }
    // parts_ge[k] = #parts of size >= k, for k = 1..
    let parts_ge: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in (1..=parts_ge.len()).rev() {
        let count = parts_ge[k - 1] - if k < parts_ge.len() { parts_ge[k] } else { 0 };
        for _ in 0..count {
            parts.push(k);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    SymplecticPartition::new(parts)
}

/// Symplectic transvection along v: x -> x + omega(x, v) v, as the matrix
/// I - v (v^t J).
fn transvection(v: &[u64], spec: &FieldSpec) -> FpMatrix {
    let p = spec.p();
    let size = v.len();
    let n = size / 2;
    let mut m = FpMatrix::identity(spec, size);
    // (v^t J)_j = omega(v, e_j) = -v_{n+j} for j < n, v_{j-n} for j >= n
    let mut vtj = vec![0u64; size];
    for jj in 0..n {
        vtj[jj] = (p - v[n + jj] % p) % p;
        vtj[n + jj] = v[jj] % p;
    }
    for i in 0..size {
        if v[i].is_multiple_of(p) {
            continue;
        }
        for jj in 0..size {
            let cur = m[(i, jj)];
            m[(i, jj)] = (cur + p * p - v[i] * vtj[jj] % p) % p;
        }
    }
    m
}

/// A finite generating set of Sp_2n(F_p): transvections along the standard
/// basis vectors and along all pairwise sums and differences. Closure under
/// multiplication recovers the full group (checked by order in tests).
pub fn sp_generators(n: usize, spec: &FieldSpec) -> Vec<FpMatrix> {
    let size = 2 * n;
    let p = spec.p();
    let mut directions: Vec<Vec<u64>> = Vec::new();
    for i in 0..size {
        let mut v = vec![0u64; size];
        v[i] = 1;
        directions.push(v);
    }
    for i in 0..size {
        for j in (i + 1)..size {
            let mut v = vec![0u64; size];
            v[i] = 1;
            v[j] = 1;
            directions.push(v);
            let mut w = vec![0u64; size];
            w[i] = 1;
            w[j] = p - 1;
            directions.push(w);
        }
    }
    directions.iter().map(|v| transvection(v, spec)).collect()
}

/// Order of the group generated by `sp_generators`, by breadth-first
/// closure; errs TooLarge past `limit` elements.
pub fn sp_group_order_by_closure(n: usize, spec: &FieldSpec, limit: usize) -> Result<u64> {
    if spec.p() >= 256 {
        return Err(Error::TooLarge("closure supports p < 256".into()));
    }
    let gens = sp_generators(n, spec);
    let id = FpMatrix::identity(spec, 2 * n);
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(id.key_bytes());
    let mut frontier = vec![id];
    while let Some(g) = frontier.pop() {
        for h in &gens {
            let next = g.mul(h)?;
            if seen.insert(next.key_bytes()) {
                if seen.len() > limit {
                    return Err(Error::TooLarge(format!(
                        "group closure exceeded {limit} elements"
                    )));
                }
                frontier.push(next);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// Deterministic product of generators, for sampling group elements in
/// tests: indices pick generators in order.
pub fn symplectic_word(n: usize, spec: &FieldSpec, indices: &[usize]) -> FpMatrix {
    let gens = sp_generators(n, spec);
    let mut acc = FpMatrix::identity(spec, 2 * n);
    for &i in indices {
        acc = acc.mul(&gens[i % gens.len()]).expect("shapes agree");
    }
    acc
}

/// dim sp_2n = n(2n + 1).
pub fn sp_dim(n: usize) -> usize {
    n * (2 * n + 1)
}

/// Visits every element of sp_2n(F_p) exactly once: X = [[A, B], [C, -A^t]]
/// with B, C symmetric, coordinates swept in odometer order.
pub fn for_each_sp(n: usize, spec: &FieldSpec, mut f: impl FnMut(&FpMatrix)) {
    let p = spec.p();
    let dim = sp_dim(n);
    let mut coords = vec![0u64; dim];
    loop {
        let m = sp_from_coords(n, spec, &coords);
        f(&m);
        let mut i = 0;
        loop {
            if i == dim {
                return;
            }
            coords[i] += 1;
            if coords[i] < p {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
    }
}

/// Builds [[A, B], [C, -A^t]] from free coordinates: n^2 for A, then
/// n(n+1)/2 each for the upper triangles of symmetric B and C.
pub fn sp_from_coords(n: usize, spec: &FieldSpec, coords: &[u64]) -> FpMatrix {
    debug_assert_eq!(coords.len(), sp_dim(n));
    let p = spec.p();
    let mut m = FpMatrix::zeros(spec, 2 * n, 2 * n);
    let mut idx = 0;
    for i in 0..n {
        for j in 0..n {
            let a = coords[idx];
            idx += 1;
            m[(i, j)] = a;
            m[(n + j, n + i)] = (p - a) % p;
        }
    }
    for i in 0..n {
        for j in i..n {
            let b = coords[idx];
            idx += 1;
            m[(i, n + j)] = b;
            m[(j, n + i)] = b;
        }
    }
    for i in 0..n {
        for j in i..n {
            let c = coords[idx];
            idx += 1;
            m[(n + i, j)] = c;
            m[(n + j, i)] = c;
        }
    }
    m
}

/// All of sp_2n(F_p), capped by element count.
pub fn sp_elements(n: usize, spec: &FieldSpec, cap: u64) -> Result<Vec<FpMatrix>> {
    let count = (spec.p() as u128).checked_pow(sp_dim(n) as u32);
    match count {
        Some(c) if c <= cap as u128 => {}
        _ => {
            return Err(Error::TooLarge(format!(
                "sp_{}(F_{}) has p^{} elements, cap is {cap}",
                2 * n,
                spec.p(),
                sp_dim(n)
            )))
        }
    }
    let mut out = Vec::new();
    for_each_sp(n, spec, |m| out.push(m.clone()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    #[test]
    fn sl2_equals_sp2() {
        let spec = fp(3);
        for a in 0..3i64 {
            for b in 0..3i64 {
                for c in 0..3i64 {
                    let m =
                        FpMatrix::from_rows(&spec, &[vec![a, b], vec![c, -a]]).unwrap();
                    assert!(is_symplectic_lie(&m).unwrap());
                }
            }
        }
        let id = FpMatrix::identity(&spec, 2);
        assert!(!is_symplectic_lie(&id).unwrap());
    }

    #[test]
    fn membership_of_two_two_representative() {
        // [[0, Q], [0, 0]] block form with Q = diag(1, 1) (pi^-1 read as 1)
        let spec = fp(3);
        let m = FpMatrix::from_rows(
            &spec,
            &[
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1],
                vec![0, 0, 0, 0],
                vec![0, 0, 0, 0],
            ],
        )
        .unwrap();
        assert!(is_symplectic_lie(&m).unwrap());
        assert!(is_nilpotent(&m));
        assert_eq!(jordan_partition(&m).unwrap().parts(), &[2, 2]);
    }

    #[test]
    fn odd_size_is_rejected() {
        let spec = fp(3);
        let m = FpMatrix::zeros(&spec, 3, 3);
        assert!(matches!(
            is_symplectic_lie(&m),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn trace_form_values() {
        let spec = fp(5);
        let zero = FpMatrix::zeros(&spec, 2, 2);
        let e12 = FpMatrix::from_rows(&spec, &[vec![0, 1], vec![0, 0]]).unwrap();
        let e21 = FpMatrix::from_rows(&spec, &[vec![0, 0], vec![1, 0]]).unwrap();
        assert_eq!(trace_form(&zero, &e12).unwrap(), 0);
        assert_eq!(trace_form(&e12, &e21).unwrap(), 1);
    }

    #[test]
    fn trace_form_conjugation_invariant() {
        let spec = fp(5);
        for n in [1usize, 2] {
            let words: [&[usize]; 3] = [&[0, 3, 5], &[1, 2, 4, 7], &[6, 0, 1]];
            for w in words {
                let g = symplectic_word(n, &spec, w);
                assert!(is_symplectic_group(&g).unwrap());
                let ginv = g.inverse().unwrap().expect("group element");
                let x = sp_from_coords(n, &spec, &test_coords(n, 1));
                let y = sp_from_coords(n, &spec, &test_coords(n, 2));
                let gx = g.mul(&x).unwrap().mul(&ginv).unwrap();
                let gy = g.mul(&y).unwrap().mul(&ginv).unwrap();
                assert_eq!(
                    trace_form(&gx, &gy).unwrap(),
                    trace_form(&x, &y).unwrap()
                );
                // membership is conjugation-stable
                assert!(is_symplectic_lie(&gx).unwrap());
            }
        }
    }

    fn test_coords(n: usize, seed: u64) -> Vec<u64> {
        // deterministic, not random: a fixed affine sweep mod 5
        (0..sp_dim(n)).map(|i| (seed + 2 * i as u64) % 5).collect()
    }

    #[test]
    fn nilpotency_examples() {
        let spec = fp(3);
        assert!(is_nilpotent(&FpMatrix::zeros(&spec, 4, 4)));
        assert!(!is_nilpotent(&FpMatrix::identity(&spec, 4)));
        let reg = FpMatrix::from_rows(&spec, &[vec![0, 1], vec![0, 0]]).unwrap();
        assert!(is_nilpotent(&reg));
    }

    #[test]
    fn jordan_partition_examples() {
        let spec = fp(3);
        let zero4 = FpMatrix::zeros(&spec, 4, 4);
        assert_eq!(jordan_partition(&zero4).unwrap().parts(), &[1, 1, 1, 1]);
        let reg = FpMatrix::from_rows(&spec, &[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(jordan_partition(&reg).unwrap().parts(), &[2]);
        let id = FpMatrix::identity(&spec, 2);
        assert_eq!(jordan_partition(&id), Err(Error::NotNilpotent));
    }

    #[test]
    fn rank_sequence_identity() {
        // the parts of jordan_partition sum to 2n and the type is
        // admissible, over the whole nilpotent cone of sp_2(F_5)
        let spec = fp(5);
        let mut checked = 0;
        for_each_sp(1, &spec, |x| {
            if !is_nilpotent(x) {
                return;
            }
            let partition = jordan_partition(x).unwrap();
            assert_eq!(partition.total(), 2);
            assert!(partition.is_admissible());
            checked += 1;
        });
        assert_eq!(checked, 25, "cone of sp_2(F_5) has 5^2 elements");
    }

    #[test]
    fn generators_preserve_the_form() {
        for p in [3, 5] {
            let spec = fp(p);
            for n in [1usize, 2] {
                for g in sp_generators(n, &spec) {
                    assert!(is_symplectic_group(&g).unwrap());
                }
            }
        }
    }

    #[test]
    fn group_closure_orders() {
        let spec = fp(3);
        // |SL_2(F_3)| = 24
        assert_eq!(sp_group_order_by_closure(1, &spec, 100).unwrap(), 24);
        // |Sp_4(F_3)| = 3^4 (3^2-1)(3^4-1) = 51840, recomputed by closure
        assert_eq!(sp_group_order_by_closure(2, &spec, 60000).unwrap(), 51840);
        // |SL_2(F_5)| = 120
        assert_eq!(sp_group_order_by_closure(1, &fp(5), 200).unwrap(), 120);
    }

    #[test]
    fn sp_enumeration_counts() {
        let spec = fp(3);
        let all = sp_elements(1, &spec, 100).unwrap();
        assert_eq!(all.len(), 27);
        for m in &all {
            assert!(is_symplectic_lie(m).unwrap());
        }
        // distinct
        let keys: HashSet<Vec<u8>> = all.iter().map(|m| m.key_bytes()).collect();
        assert_eq!(keys.len(), 27);
        assert!(sp_elements(2, &spec, 100).is_err());
    }

    #[test]
    fn partition_validation() {
        assert!(SymplecticPartition::new(vec![4, 2]).is_ok());
        assert!(SymplecticPartition::new(vec![2, 4]).is_err());
        assert!(!SymplecticPartition::new(vec![3, 1]).unwrap().is_admissible());
        assert!(SymplecticPartition::new(vec![3, 3]).unwrap().is_admissible());
        assert!(SymplecticPartition::new(vec![0, 2]).is_err());
        assert!(SymplecticPartition::new(vec![3]).is_err());
    }

    #[test]
    fn omega_matches_j_matrix() {
        let spec = fp(7);
        let j = symplectic_j(2, &spec);
        let u = [1u64, 2, 3, 4];
        let v = [5u64, 0, 6, 1];
        let via_matrix = {
            let ju = j.apply(&v);
            (0..4).fold(0u64, |acc, i| (acc + u[i] * ju[i]) % 7)
        };
        assert_eq!(omega(&u, &v, &spec), via_matrix);
    }
}
