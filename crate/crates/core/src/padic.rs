//! Vertices of the extended C_n diagram and their reductive quotients, the
//! classification of p-adic Lusztig functions by triangular decompositions
//! of n, symbolic Lusztig distributions with their Fourier eigenvalue
//! class, the stable-subspace predicate, and the counting census that
//! cross-checks four independent routes to the eigenspace dimension:
//! vertex catalog, ordered triangular pairs, the divisor count
//! d1(8n+2) - d3(8n+2), and representations of 8n+2 by two odd squares.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lusztig::triangular_index;

/// A vertex of the extended C_n Dynkin diagram, named by the deleted node
/// index in [0, n]. Indices 0 and n are the hyperspecial vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexDescriptor {
    pub n: usize,
    pub index: usize,
}

/// Ranks (2i, 2(n-i)) of the reductive quotient sp_2i x sp_2(n-i) at the
/// vertex; deleting node 0 or n leaves the full sp_2n (second factor 0).
pub fn reductive_quotient(v: &VertexDescriptor) -> Result<(usize, usize)> {
    if v.index > v.n {
        return Err(Error::IndexOutOfRange {
            index: v.index,
            n: v.n,
        });
    }
    if v.index == 0 || v.index == v.n {
        Ok((2 * v.n, 0))
    } else {
        Ok((2 * v.index, 2 * (v.n - v.index)))
    }
}

/// One p-adic Lusztig function up to conjugacy: the vertex it inflates
/// through and the triangular pair (Delta_1, Delta_2) with
/// Delta_1 + Delta_2 = n (Delta_2 = 0 for the hyperspecial cases).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadicLusztigDescriptor {
    pub vertex: VertexDescriptor,
    pub deltas: (u64, u64),
}

impl PadicLusztigDescriptor {
    pub fn to_json(&self) -> Value {
        let (a, b) = reductive_quotient(&self.vertex).expect("catalog vertices are in range");
        json!({
            "vertex": self.vertex.index,
            "deltas": [self.deltas.0, self.deltas.1],
            "quotient_ranks": [a, b],
        })
    }
}

/// All p-adic Lusztig functions on sp_2n up to conjugacy, ordered by vertex
/// index: hyperspecial vertices 0 and n when n is triangular, and each
/// interior vertex i with both i and n - i triangular.
pub fn catalog_padic_lusztig(n: u64) -> Vec<PadicLusztigDescriptor> {
    let mut out = Vec::new();
    for index in 0..=n {
        let deltas = if index == 0 || index == n {
            if triangular_index(n).is_none() {
                continue;
            }
            (n, 0)
        } else {
            if triangular_index(index).is_none() || triangular_index(n - index).is_none() {
                continue;
            }
            (index, n - index)
        };
        out.push(PadicLusztigDescriptor {
            vertex: VertexDescriptor {
                n: n as usize,
                index: index as usize,
            },
            deltas,
        });
    }
    out
}

/// Ordered pairs of triangular-number indices (a, b) with T(a) + T(b) = n,
/// zero allowed, by brute force.
pub fn triangular_reps(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut a = 0u64;
    while a * (a + 1) / 2 <= n {
        let rest = n - a * (a + 1) / 2;
        if let Some(b) = triangular_index(rest) {
            out.push((a, b));
        }
        a += 1;
    }
    out
}

/// (d1, d3) of m = 8n + 2: divisors congruent to 1 and 3 mod 4, by
/// exhaustive divisor enumeration.
pub fn divisor_census(n: u64) -> (u64, u64) {
    let m = 8 * n + 2;
    let mut d1 = 0;
    let mut d3 = 0;
    for d in 1..=m {
        if m.is_multiple_of(d) {
            match d % 4 {
                1 => d1 += 1,
                3 => d3 += 1,
                _ => {}
            }
        }
    }
    (d1, d3)
}

/// Ordered pairs of positive odd (x, y) with x^2 + y^2 = 8n + 2.
pub fn odd_square_reps(n: u64) -> u64 {
    let m = 8 * n + 2;
    let mut count = 0;
    let mut x = 1u64;
    while x * x < m {
        let rest = m - x * x;
        let y = rest.isqrt();
        if y * y == rest && y % 2 == 1 {
            count += 1;
        }
        x += 2;
    }
    count
}

/// The printed piecewise dimension value: 2(d1 - d3), plus 2 when n is
/// triangular. Reported for comparison only; the census never adopts it as
/// ground truth.
pub fn theorem_formula_dim(n: u64) -> i64 {
    let (d1, d3) = divisor_census(n);
    let base = 2 * (d1 as i64 - d3 as i64);
    if triangular_index(n).is_some() {
        base + 2
    } else {
        base
    }
}

/// Residue class of an odd prime mod 4; all symbolic eigenvalues depend on
/// p only through this.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PMod4 {
    One,
    Three,
}

impl PMod4 {
    pub fn from_p(p: u64) -> Result<PMod4> {
        match p % 4 {
            1 => Ok(PMod4::One),
            3 => Ok(PMod4::Three),
            _ => Err(Error::NotOddPrime(p)),
        }
    }

    pub fn value(&self) -> u8 {
        match self {
            PMod4::One => 1,
            PMod4::Three => 3,
        }
    }
}

/// A fourth root of unity, the exact home of tau^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenvalueClass {
    One,
    MinusOne,
    I,
    MinusI,
}

impl EigenvalueClass {
    pub fn to_complex(self) -> Complex64 {
        match self {
            EigenvalueClass::One => Complex64::new(1.0, 0.0),
            EigenvalueClass::MinusOne => Complex64::new(-1.0, 0.0),
            EigenvalueClass::I => Complex64::new(0.0, 1.0),
            EigenvalueClass::MinusI => Complex64::new(0.0, -1.0),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EigenvalueClass::One => "1",
            EigenvalueClass::MinusOne => "-1",
            EigenvalueClass::I => "i",
            EigenvalueClass::MinusI => "-i",
        }
    }
}

/// tau^n symbolically: tau = 1 when p = 1 mod 4, -i when p = 3 mod 4.
pub fn eigenvalue_symbolic(n: u64, p_mod_4: PMod4) -> EigenvalueClass {
    match p_mod_4 {
        PMod4::One => EigenvalueClass::One,
        PMod4::Three => match n % 4 {
            0 => EigenvalueClass::One,
            1 => EigenvalueClass::MinusI,
            2 => EigenvalueClass::MinusOne,
            _ => EigenvalueClass::I,
        },
    }
}

/// 1 exactly when n = 2*Delta with Delta triangular, else 0: the dimension
/// of the stable subspace of the eigenspace.
pub fn stable_subspace_dim(n: u64) -> u32 {
    if n.is_multiple_of(2) && triangular_index(n / 2).is_some() {
        1
    } else {
        0
    }
}

/// Symbolic record of one basis eigen-distribution: its descriptor, the
/// eigenvalue class tau^n, and whether it restricts from the stable line
/// (exactly the self-paired descriptors).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LusztigDistribution {
    pub descriptor: PadicLusztigDescriptor,
    pub eigenvalue_class: EigenvalueClass,
    pub stable: bool,
}

impl LusztigDistribution {
    pub fn to_json(&self) -> Value {
        let mut obj = self.descriptor.to_json();
        let map = obj.as_object_mut().expect("descriptor serializes to an object");
        map.insert("eigenvalue".into(), json!(self.eigenvalue_class.label()));
        map.insert("stable".into(), json!(self.stable));
        obj
    }
}

/// The eigenspace basis: one distribution per catalog descriptor.
pub fn lusztig_distributions(n: u64, p_mod_4: PMod4) -> Vec<LusztigDistribution> {
    let eigenvalue_class = eigenvalue_symbolic(n, p_mod_4);
    catalog_padic_lusztig(n)
        .into_iter()
        .map(|descriptor| LusztigDistribution {
            stable: descriptor.deltas.0 == descriptor.deltas.1,
            descriptor,
            eigenvalue_class,
        })
        .collect()
}

/// One census row: all four independent counts, the printed formula value,
/// and the stable dimension. `mismatch` flags disagreement between the
/// printed formula and the enumeration; it is a finding, not an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusRow {
    pub n: u64,
    pub enum_count: u64,
    pub grosswald_count: u64,
    pub d1: u64,
    pub d3: u64,
    pub odd_square_count: u64,
    pub theorem_formula_value: i64,
    pub stable_dim: u32,
    pub mismatch: bool,
}

impl CensusRow {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "enum_count": self.enum_count,
            "grosswald_count": self.grosswald_count,
            "d1": self.d1,
            "d3": self.d3,
            "odd_square_count": self.odd_square_count,
            "theorem_formula_value": self.theorem_formula_value,
            "stable_dim": self.stable_dim,
            "mismatch": self.mismatch,
        })
    }
}

/// Builds rows 1..=n_max and checks the exact counting chain
/// |catalog| = |triangular pairs| = d1 - d3 = |odd-square pairs| on every
/// row. A violation is an implementation bug, not a finding, hence the
/// panic.
pub fn census(n_max: u64) -> Vec<CensusRow> {
    (1..=n_max)
        .map(|n| {
            let enum_count = catalog_padic_lusztig(n).len() as u64;
            let grosswald_count = triangular_reps(n).len() as u64;
            let (d1, d3) = divisor_census(n);
            let odd_square_count = odd_square_reps(n);
            assert_eq!(enum_count, grosswald_count, "catalog vs pairs at n = {n}");
            assert_eq!(grosswald_count as i64, d1 as i64 - d3 as i64, "pairs vs divisors at n = {n}");
            assert_eq!(grosswald_count, odd_square_count, "pairs vs odd squares at n = {n}");
            let theorem_formula_value = theorem_formula_dim(n);
            CensusRow {
                n,
                enum_count,
                grosswald_count,
                d1,
                d3,
                odd_square_count,
                theorem_formula_value,
                stable_dim: stable_subspace_dim(n),
                mismatch: theorem_formula_value != enum_count as i64,
            }
        })
        .collect()
}

pub const CENSUS_CSV_HEADER: &str =
    "n,enum_count,grosswald_count,d1,d3,odd_square_count,theorem_formula_value,stable_dim,mismatch";

pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from(CENSUS_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.enum_count,
            r.grosswald_count,
            r.d1,
            r.d3,
            r.odd_square_count,
            r.theorem_formula_value,
            r.stable_dim,
            r.mismatch
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FieldSpec;
    use crate::lusztig::predicted_eigenvalue;
    use crate::DEFAULT_TOLERANCE;

    #[test]
    fn reductive_quotient_values() {
        let rq = |n, index| reductive_quotient(&VertexDescriptor { n, index }).unwrap();
        assert_eq!(rq(2, 1), (2, 2));
        assert_eq!(rq(3, 0), (6, 0));
        assert_eq!(rq(3, 3), (6, 0));
        assert_eq!(rq(5, 4), (8, 2));
        assert!(matches!(
            reductive_quotient(&VertexDescriptor { n: 2, index: 3 }),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn catalog_small_ranks() {
        let c1 = catalog_padic_lusztig(1);
        assert_eq!(c1.len(), 2);
        assert_eq!(c1[0].vertex.index, 0);
        assert_eq!(c1[1].vertex.index, 1);
        assert!(c1.iter().all(|d| d.deltas == (1, 0)));

        let c2 = catalog_padic_lusztig(2);
        assert_eq!(c2.len(), 1);
        assert_eq!(c2[0].vertex.index, 1);
        assert_eq!(c2[0].deltas, (1, 1));

        let c4 = catalog_padic_lusztig(4);
        assert_eq!(c4.len(), 2);
        assert_eq!(c4[0].vertex.index, 1);
        assert_eq!(c4[0].deltas, (1, 3));
        assert_eq!(c4[1].vertex.index, 3);
        assert_eq!(c4[1].deltas, (3, 1));

        assert!(catalog_padic_lusztig(5).is_empty());
    }

    #[test]
    fn catalog_descriptor_invariants() {
        for n in 1..=120u64 {
            for d in catalog_padic_lusztig(n) {
                assert_eq!(d.deltas.0 + d.deltas.1, n);
                assert!(triangular_index(d.deltas.0).is_some());
                assert!(triangular_index(d.deltas.1).is_some());
                if d.deltas.1 == 0 {
                    assert!(d.vertex.index == 0 || d.vertex.index == n as usize);
                } else {
                    assert_eq!(d.vertex.index as u64, d.deltas.0);
                }
            }
        }
    }

    #[test]
    fn catalog_pair_structure() {
        // interior (a, b) with a != b appear as index-swapped descriptor
        // pairs; the hyperspecial deltas (n, 0) appear at both ends; (a, a)
        // is self-paired and unique
        for n in 1..=200u64 {
            let catalog = catalog_padic_lusztig(n);
            for d in &catalog {
                let (a, b) = d.deltas;
                if b == 0 {
                    let ends = catalog.iter().filter(|e| e.deltas == (n, 0)).count();
                    assert_eq!(ends, 2, "n={n} hyperspecial pair");
                } else if a != b {
                    let partner = catalog.iter().filter(|e| e.deltas == (b, a)).count();
                    assert_eq!(partner, 1, "n={n} deltas=({a},{b})");
                }
            }
            let self_paired = catalog.iter().filter(|d| d.deltas.0 == d.deltas.1).count();
            assert_eq!(self_paired as u32, stable_subspace_dim(n));
        }
    }

    #[test]
    fn dynkin_vertex_count_matches_catalog() {
        // independent route: walk every vertex, ask reductive_quotient for
        // its factor ranks, and count the vertices whose factors all carry
        // Lusztig data (both half-ranks triangular, sp_0 counting as
        // trivial)
        for n in 1..=120u64 {
            let qualifying = (0..=n as usize)
                .filter(|&index| {
                    let (a, b) = reductive_quotient(&VertexDescriptor {
                        n: n as usize,
                        index,
                    })
                    .unwrap();
                    triangular_index(a as u64 / 2).is_some()
                        && triangular_index(b as u64 / 2).is_some()
                })
                .count();
            assert_eq!(qualifying, catalog_padic_lusztig(n).len(), "n = {n}");
        }
    }

    #[test]
    fn triangular_reps_examples() {
        assert_eq!(triangular_reps(1), vec![(0, 1), (1, 0)]);
        assert_eq!(triangular_reps(2), vec![(1, 1)]);
        assert_eq!(triangular_reps(6), vec![(0, 3), (2, 2), (3, 0)]);
        assert_eq!(triangular_reps(5), Vec::<(u64, u64)>::new());
    }

    #[test]
    fn divisor_census_examples() {
        assert_eq!(divisor_census(1), (2, 0)); // divisors of 10: 1, 2, 5, 10
        assert_eq!(divisor_census(2), (2, 1)); // divisors of 18: 1, 2, 3, 6, 9, 18
        assert_eq!(divisor_census(6), (3, 0)); // divisors of 50: 1, 2, 5, 10, 25, 50
    }

    #[test]
    fn odd_square_examples() {
        assert_eq!(odd_square_reps(1), 2); // 10 = 1 + 9 = 9 + 1
        assert_eq!(odd_square_reps(2), 1); // 18 = 9 + 9
        assert_eq!(odd_square_reps(5), 0); // 42 is not a sum of two squares
    }

    #[test]
    fn theorem_formula_values() {
        assert_eq!(theorem_formula_dim(1), 6);
        assert_eq!(theorem_formula_dim(2), 2);
        assert_eq!(theorem_formula_dim(3), 6);
        assert_eq!(theorem_formula_dim(6), 8);
        assert_eq!(theorem_formula_dim(5), 0);
    }

    #[test]
    fn census_rows_and_flags() {
        let rows = census(10);
        assert_eq!(rows.len(), 10);
        let r5 = &rows[4];
        assert_eq!(
            (r5.enum_count, r5.grosswald_count, r5.odd_square_count),
            (0, 0, 0)
        );
        assert!(!r5.mismatch, "no eigenspace and formula 0: no finding");
        let r6 = &rows[5];
        assert_eq!(r6.enum_count, 3);
        assert_eq!(r6.theorem_formula_value, 8);
        assert!(r6.mismatch);
        let r3 = &rows[2];
        assert_eq!(r3.enum_count, 2);
        assert_eq!(r3.d1 - r3.d3, 2);
        // n = 7 = 6 + 1 is nonzero
        assert_eq!(rows[6].enum_count, 2);
        // the flagged disagreements at n = 1, 2, 3
        assert!(rows[0].mismatch && rows[1].mismatch && rows[2].mismatch);
    }

    #[test]
    fn counting_chain_to_500() {
        // census() itself asserts the chain; run it at full depth
        let rows = census(500);
        assert_eq!(rows.len(), 500);
        for r in &rows {
            assert_eq!(r.enum_count, r.grosswald_count);
            assert_eq!(r.enum_count as i64, r.d1 as i64 - r.d3 as i64);
            assert_eq!(r.enum_count, r.odd_square_count);
        }
    }

    #[test]
    fn eigenvalue_symbolic_values() {
        assert_eq!(eigenvalue_symbolic(1, PMod4::Three), EigenvalueClass::MinusI);
        assert_eq!(eigenvalue_symbolic(2, PMod4::Three), EigenvalueClass::MinusOne);
        assert_eq!(eigenvalue_symbolic(4, PMod4::Three), EigenvalueClass::One);
        for n in 0..9 {
            assert_eq!(eigenvalue_symbolic(n, PMod4::One), EigenvalueClass::One);
        }
    }

    #[test]
    fn eigenvalue_symbolic_matches_numeric_tau() {
        for p in [3u64, 7, 11, 5, 13, 17] {
            let spec = FieldSpec::new(p).unwrap();
            let class = PMod4::from_p(p).unwrap();
            for n in 0..=8u64 {
                let symbolic = eigenvalue_symbolic(n, class).to_complex();
                let numeric = predicted_eigenvalue(n, &spec);
                assert!(
                    (symbolic - numeric).norm() < DEFAULT_TOLERANCE,
                    "n={n} p={p}"
                );
            }
        }
    }

    #[test]
    fn stability_predicate() {
        assert_eq!(stable_subspace_dim(2), 1);
        assert_eq!(stable_subspace_dim(4), 0);
        assert_eq!(stable_subspace_dim(12), 1);
        let stable: Vec<u64> = (1..=100).filter(|&n| stable_subspace_dim(n) == 1).collect();
        assert_eq!(stable, vec![2, 6, 12, 20, 30, 42, 56, 72, 90]);
    }

    #[test]
    fn distributions_examples() {
        let d2 = lusztig_distributions(2, PMod4::Three);
        assert_eq!(d2.len(), 1);
        assert_eq!(d2[0].eigenvalue_class, EigenvalueClass::MinusOne);
        assert!(d2[0].stable);

        let d1 = lusztig_distributions(1, PMod4::Three);
        assert_eq!(d1.len(), 2);
        assert!(d1.iter().all(|d| d.eigenvalue_class == EigenvalueClass::MinusI));
        assert!(d1.iter().all(|d| !d.stable));

        assert!(lusztig_distributions(5, PMod4::One).is_empty());
    }

    #[test]
    fn csv_shape() {
        let rows = census(2);
        let csv = census_csv(&rows);
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], CENSUS_CSV_HEADER);
        assert_eq!(lines[1], "1,2,2,2,0,2,6,0,true");
        assert_eq!(lines[2], "2,1,1,2,1,1,2,1,true");
    }
}
