//! Rational nilpotent Sp_2n(F_p)-orbits: admissible-partition enumeration,
//! orbit labels (partition plus one quadratic form class per even part
//! size), representative construction, invariant-based classification, and
//! an independent brute-force conjugation oracle that partitions the whole
//! nilpotent cone by breadth-first closure.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::liealg::{
    for_each_sp, is_nilpotent, is_symplectic_lie, jordan_partition, omega, sp_generators,
    SymplecticPartition,
};
use crate::matrix::{congruence_diagonalize, FpMatrix};
use crate::qforms::{
    classify_diagonal_finite, enumerate_padic_classes, FiniteFormClass, PadicDiagEntry,
    PadicFormClass, Sign,
};

/// Name of one rational nilpotent orbit: a partition of 2n and the tuple
/// (Q_2, Q_4, ..., Q_2n) of form classes, slot k holding the class of
/// dimension m_(2(k+1)) (the empty class where the multiplicity is zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitLabel {
    pub partition: SymplecticPartition,
    pub forms: Vec<FiniteFormClass>,
}

impl OrbitLabel {
    /// Form class attached to even part size j.
    pub fn form_at(&self, j: usize) -> Option<&FiniteFormClass> {
        if !j.is_multiple_of(2) || j == 0 {
            return None;
        }
        self.forms.get(j / 2 - 1)
    }

    pub fn to_json(&self) -> Value {
        let forms: Vec<Value> = self
            .forms
            .iter()
            .enumerate()
            .map(|(k, c)| {
                json!({
                    "j": 2 * (k + 1),
                    "dim": c.dim,
                    "disc": c.disc_sign.map(Sign::value),
                })
            })
            .collect();
        json!({
            "partition": self.partition.parts(),
            "forms": forms,
        })
    }
}

impl std::fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let forms: Vec<String> = self
            .forms
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_empty())
            .map(|(k, c)| format!("Q_{} = {}", 2 * (k + 1), c))
            .collect();
        write!(f, "{} [{}]", self.partition, forms.join(", "))
    }
}

impl PartialOrd for OrbitLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrbitLabel {
    /// Canonical atlas order: partitions lexicographic-descending, then
    /// form tuples by increasing part size with the square class first.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .partition
            .parts()
            .cmp(self.partition.parts())
            .then_with(|| self.forms.cmp(&other.forms))
    }
}

/// All partitions of 2n with every odd part of even multiplicity, in
/// lexicographic-descending order.
pub fn enumerate_admissible_partitions(n: usize) -> Vec<SymplecticPartition> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    gen_partitions(2 * n, 2 * n, &mut prefix, &mut out);
    out.into_iter()
        .map(|parts| SymplecticPartition::new(parts).expect("generator emits valid partitions"))
        .filter(SymplecticPartition::is_admissible)
        .collect()
}

fn gen_partitions(total: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if total == 0 {
        out.push(prefix.clone());
        return;
    }
    for first in (1..=max.min(total)).rev() {
        prefix.push(first);
        gen_partitions(total - first, first, prefix, out);
        prefix.pop();
    }
}

/// The rational orbit labels inside the geometric orbit of an admissible
/// partition over F_p: one choice of disc sign per even part size present.
pub fn enumerate_rational_orbits_finite(
    lambda: &SymplecticPartition,
    _spec: &FieldSpec,
) -> Vec<OrbitLabel> {
    let n = lambda.n();
    let slot_options: Vec<Vec<FiniteFormClass>> = (1..=n)
        .map(|k| {
            let m = lambda.multiplicity(2 * k);
            if m == 0 {
                vec![FiniteFormClass::EMPTY]
            } else {
                vec![
                    FiniteFormClass::nondegenerate(m, Sign::Plus),
                    FiniteFormClass::nondegenerate(m, Sign::Minus),
                ]
            }
        })
        .collect();
    cartesian(&slot_options)
        .into_iter()
        .map(|forms| OrbitLabel {
            partition: lambda.clone(),
            forms,
        })
        .collect()
}

fn cartesian<T: Clone>(options: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for prefix in &out {
            for o in opts {
                let mut row = prefix.clone();
                row.push(o.clone());
                next.push(row);
            }
        }
        out = next;
    }
    out
}

/// Nilpotent representative of a label, assembled block-diagonally inside
/// [[A, B], [0, -A^t]]: an even part 2k of class entry a contributes a k x k
/// Jordan block in A coupled through B_kk = (-1)^(k+1) a (one 2k-chain),
/// and each pair of odd parts l contributes an uncoupled Jordan block pair
/// [[J_l, 0], [0, -J_l^t]].
pub fn representative(label: &OrbitLabel, spec: &FieldSpec) -> Result<FpMatrix> {
    let lambda = &label.partition;
    if !lambda.is_admissible() {
        return Err(Error::InvalidPartition(format!(
            "{lambda} has an odd part of odd multiplicity"
        )));
    }
    let n = lambda.n();
    if label.forms.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "label needs {n} form slots, got {}",
            label.forms.len()
        )));
    }
    let p = spec.p();

    // (A-block, B-block) pairs, ordered by increasing part size.
    let mut blocks: Vec<(FpMatrix, FpMatrix)> = Vec::new();
    let mut sizes: Vec<usize> = lambda.parts().to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    for &part in &sizes {
        let m = lambda.multiplicity(part);
        if part % 2 == 0 {
            let k = part / 2;
            let class = label.form_at(part).expect("slot exists for even part <= 2n");
            if class.dim != m {
                return Err(Error::DimensionMismatch(format!(
                    "form slot for part {part} has dim {}, multiplicity is {m}",
                    class.dim
                )));
            }
            let disc = class.disc_sign.expect("m > 0 so the class is nondegenerate");
            // diagonal entries of the attached m-dimensional form: all 1
            // except the last, which carries the discriminant
            let mut entries = vec![1u64; m];
            if disc == Sign::Minus {
                entries[m - 1] = spec.nonsquare();
            }
            for a in entries {
                let mut ab = FpMatrix::zeros(spec, k, k);
                for i in 0..k - 1 {
                    ab[(i, i + 1)] = 1;
                }
                let mut bb = FpMatrix::zeros(spec, k, k);
                let coupling = if k % 2 == 1 { a } else { (p - a) % p };
                bb[(k - 1, k - 1)] = coupling;
                blocks.push((ab, bb));
            }
        } else {
            // odd parts come in pairs; each pair is one uncoupled block
            for _ in 0..m / 2 {
                let mut ab = FpMatrix::zeros(spec, part, part);
                for i in 0..part - 1 {
                    ab[(i, i + 1)] = 1;
                }
                blocks.push((ab, FpMatrix::zeros(spec, part, part)));
            }
        }
    }

    let mut a = FpMatrix::zeros(spec, n, n);
    let mut b = FpMatrix::zeros(spec, n, n);
    let mut offset = 0;
    for (ab, bb) in &blocks {
        let k = ab.rows();
        for i in 0..k {
            for j in 0..k {
                a[(offset + i, offset + j)] = ab[(i, j)];
                b[(offset + i, offset + j)] = bb[(i, j)];
            }
        }
        offset += k;
    }
    debug_assert_eq!(offset, n);

    let mut x = FpMatrix::zeros(spec, 2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            x[(i, j)] = a[(i, j)];
            x[(i, n + j)] = b[(i, j)];
            x[(n + i, n + j)] = (p - a[(j, i)]) % p;
        }
    }
    Ok(x)
}

/// Extracts the orbit label of a nilpotent element of sp_2n(F_p): the
/// Jordan partition, plus for each even part size j the class of the
/// symmetric form beta(v, w) = omega(X^(j-1) v, w) induced on ker X^j
/// modulo its radical.
pub fn classify_nilpotent(x: &FpMatrix, spec: &FieldSpec) -> Result<OrbitLabel> {
    if !is_symplectic_lie(x)? {
        return Err(Error::NotInAlgebra);
    }
    if !is_nilpotent(x) {
        return Err(Error::NotNilpotent);
    }
    let partition = jordan_partition(x)?;
    let n = partition.n();
    let mut forms = Vec::with_capacity(n);
    for k in 1..=n {
        let j = 2 * k;
        let mj = partition.multiplicity(j);
        if mj == 0 {
            forms.push(FiniteFormClass::EMPTY);
            continue;
        }
        let xj = x.pow(j as u64)?;
        let xjm1 = x.pow(j as u64 - 1)?;
        let kernel = xj.kernel_basis();
        let dim = kernel.len();
        let mut gram = FpMatrix::zeros(spec, dim, dim);
        for (s, v) in kernel.iter().enumerate() {
            let xv = xjm1.apply(v);
            for (t, w) in kernel.iter().enumerate() {
                gram[(s, t)] = omega(&xv, w, spec);
            }
        }
        debug_assert_eq!(gram, gram.transpose(), "beta is symmetric for even j");
        let diag = congruence_diagonalize(&gram)?;
        let nonzero: Vec<u64> = diag.into_iter().filter(|&d| d != 0).collect();
        if nonzero.len() != mj {
            return Err(Error::OracleMismatch(format!(
                "form on the size-{j} stratum has rank {}, expected multiplicity {mj}",
                nonzero.len()
            )));
        }
        forms.push(classify_diagonal_finite(&nonzero, spec)?);
    }
    Ok(OrbitLabel { partition, forms })
}

/// Partition of the nilpotent cone of sp_2n(F_p) into conjugation orbits,
/// computed by exhaustive enumeration and breadth-first closure under the
/// transvection generators. Ground truth for the label classification.
pub struct OraclePartition {
    pub n: usize,
    pub p: u64,
    pub representatives: Vec<FpMatrix>,
    pub sizes: Vec<u64>,
    orbit_of: HashMap<Vec<u8>, usize>,
}

impl OraclePartition {
    pub fn orbit_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn orbit_index(&self, x: &FpMatrix) -> Option<usize> {
        self.orbit_of.get(&x.key_bytes()).copied()
    }

    pub fn cone_size(&self) -> u64 {
        self.sizes.iter().sum()
    }

    /// Iterate (key, orbit index) pairs.
    pub fn assignments(&self) -> impl Iterator<Item = (&Vec<u8>, usize)> {
        self.orbit_of.iter().map(|(k, &v)| (k, v))
    }
}

const ORACLE_MAX_RANK: usize = 2;
const ORACLE_MAX_P: u64 = 5;

/// Enumerates every nilpotent element of sp_2n(F_p) and unions them into
/// conjugation orbits. Capped at n <= 2, p <= 5.
pub fn orbit_partition_oracle(n: usize, spec: &FieldSpec) -> Result<OraclePartition> {
    if n == 0 || n > ORACLE_MAX_RANK || spec.p() > ORACLE_MAX_P {
        return Err(Error::TooLarge(format!(
            "conjugation oracle is capped at n <= {ORACLE_MAX_RANK}, p <= {ORACLE_MAX_P} (got n = {n}, p = {})",
            spec.p()
        )));
    }
    let mut cone: Vec<FpMatrix> = Vec::new();
    for_each_sp(n, spec, |m| {
        if is_nilpotent(m) {
            cone.push(m.clone());
        }
    });

    let gens = sp_generators(n, spec);
    let conj: Vec<(FpMatrix, FpMatrix)> = gens
        .into_iter()
        .map(|g| {
            let inv = g.inverse()?.ok_or_else(|| {
                Error::DimensionMismatch("transvections are invertible".into())
            })?;
            Ok((g, inv))
        })
        .collect::<Result<_>>()?;

    let mut orbit_of: HashMap<Vec<u8>, usize> = HashMap::with_capacity(cone.len());
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    for x in &cone {
        let key = x.key_bytes();
        if orbit_of.contains_key(&key) {
            continue;
        }
        let idx = representatives.len();
        representatives.push(x.clone());
        orbit_of.insert(key, idx);
        let mut frontier = vec![x.clone()];
        let mut size = 1u64;
        while let Some(y) = frontier.pop() {
            for (g, ginv) in &conj {
                let z = g.mul(&y)?.mul(ginv)?;
                let zkey = z.key_bytes();
                if let std::collections::hash_map::Entry::Vacant(e) = orbit_of.entry(zkey) {
                    e.insert(idx);
                    size += 1;
                    frontier.push(z);
                }
            }
        }
        sizes.push(size);
    }
    // everything reachable stays inside the enumerated cone
    debug_assert_eq!(orbit_of.len(), cone.len());
    Ok(OraclePartition {
        n,
        p: spec.p(),
        representatives,
        sizes,
        orbit_of,
    })
}

/// One atlas row: a label, a canonical representative, and the orbit size
/// reported by the oracle.
#[derive(Debug, Clone)]
pub struct AtlasEntry {
    pub label: OrbitLabel,
    pub representative: FpMatrix,
    pub size: u64,
}

/// The full census of rational nilpotent orbits at (n, p), oracle-sized.
#[derive(Debug, Clone)]
pub struct OrbitAtlas {
    pub n: usize,
    pub p: u64,
    pub orbits: Vec<AtlasEntry>,
}

impl OrbitAtlas {
    pub fn to_json(&self) -> Value {
        let orbits: Vec<Value> = self
            .orbits
            .iter()
            .map(|e| {
                let mut obj = e.label.to_json();
                let map = obj.as_object_mut().expect("label serializes to an object");
                map.insert(
                    "representative".into(),
                    json!(e.representative.data().to_vec()),
                );
                map.insert("size".into(), json!(e.size));
                obj
            })
            .collect();
        json!({
            "n": self.n,
            "p": self.p,
            "orbits": orbits,
        })
    }
}

/// Builds the atlas by running the oracle, classifying each BFS orbit, and
/// checking that labels separate orbits exactly. The canonical
/// representative of each label is the constructed one, and it must land in
/// the BFS orbit it labels.
pub fn build_atlas(n: usize, spec: &FieldSpec) -> Result<OrbitAtlas> {
    let oracle = orbit_partition_oracle(n, spec)?;
    let mut entries: Vec<AtlasEntry> = Vec::with_capacity(oracle.orbit_count());
    let mut seen: HashMap<OrbitLabel, usize> = HashMap::new();
    for (idx, rep) in oracle.representatives.iter().enumerate() {
        let label = classify_nilpotent(rep, spec)?;
        if let Some(prev) = seen.insert(label.clone(), idx) {
            return Err(Error::OracleMismatch(format!(
                "label {label} names both oracle orbits {prev} and {idx}"
            )));
        }
        let canonical = representative(&label, spec)?;
        if oracle.orbit_index(&canonical) != Some(idx) {
            return Err(Error::OracleMismatch(format!(
                "constructed representative of {label} is not in its oracle orbit"
            )));
        }
        entries.push(AtlasEntry {
            label,
            representative: canonical,
            size: oracle.sizes[idx],
        });
    }
    // the label census must agree with the oracle count
    let expected: usize = enumerate_admissible_partitions(n)
        .iter()
        .map(|l| enumerate_rational_orbits_finite(l, spec).len())
        .sum();
    if expected != entries.len() {
        return Err(Error::OracleMismatch(format!(
            "census predicts {expected} orbits, oracle found {}",
            entries.len()
        )));
    }
    entries.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(OrbitAtlas {
        n,
        p: spec.p(),
        orbits: entries,
    })
}

/// Symbolic rational orbit label over the p-adic field: each even part size
/// with nonzero multiplicity carries a p-adic form class together with its
/// diagonal representative (hyperbolic planes plus a table row).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicOrbitLabel {
    pub partition: SymplecticPartition,
    pub forms: Vec<(PadicFormClass, Vec<PadicDiagEntry>)>,
}

impl PadicOrbitLabel {
    pub fn to_json(&self) -> Value {
        let forms: Vec<Value> = self
            .forms
            .iter()
            .enumerate()
            .map(|(k, (c, rep))| {
                json!({
                    "j": 2 * (k + 1),
                    "dim": c.dim,
                    "disc": c.disc.label(),
                    "hasse": c.hasse.value(),
                    "representative": rep.iter().map(|e| e.label()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "partition": self.partition.parts(),
            "forms": forms,
        })
    }
}

/// Symbolic p-adic labels for an admissible partition; every even part
/// multiplicity must be at most 4 (anisotropic table coverage).
pub fn enumerate_rational_orbits_padic(
    lambda: &SymplecticPartition,
    spec: &FieldSpec,
) -> Result<Vec<PadicOrbitLabel>> {
    let n = lambda.n();
    let mut slot_options: Vec<Vec<(PadicFormClass, Vec<PadicDiagEntry>)>> = Vec::new();
    for k in 1..=n {
        let m = lambda.multiplicity(2 * k);
        slot_options.push(enumerate_padic_classes(m, spec)?);
    }
    Ok(cartesian(&slot_options)
        .into_iter()
        .map(|forms| PadicOrbitLabel {
            partition: lambda.clone(),
            forms,
        })
        .collect())
}
