use serde::ser::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matroid::RegularRep;

/// What a lattice vector is: a cut lives in the row space, a flow in the
/// kernel, a signed circuit is a flow with minimal support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VectorKind {
    Cut,
    Flow,
    SignedCircuit,
}

/// Integer vector tagged with its role. Ordering and serialization use
/// the entries alone, so sorted output is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedVector {
    entries: Vec<i64>,
    kind: VectorKind,
}

impl SignedVector {
    pub fn new(entries: Vec<i64>, kind: VectorKind) -> Self {
        SignedVector { entries, kind }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn kind(&self) -> VectorKind {
        self.kind
    }

    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn negated(&self) -> SignedVector {
        SignedVector {
            entries: self.entries.iter().map(|&x| -x).collect(),
            kind: self.kind,
        }
    }
}

impl Serialize for SignedVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

/// Both signed circuits supported on each circuit, sorted by entries.
/// Each circuit yields exactly two, with all nonzero entries ±1.
pub fn signed_circuits(rep: &RegularRep) -> Result<Vec<SignedVector>> {
    let mut out = Vec::new();
    for circuit in rep.circuits()? {
        let v = signed_circuit_on(rep, circuit)?;
        out.push(v.negated());
        out.push(v);
    }
    out.sort();
    Ok(out)
}

/// The signed circuit with entry +1 at the largest element of `circuit`.
fn signed_circuit_on(rep: &RegularRep, circuit: &[usize]) -> Result<SignedVector> {
    let e = *circuit.last().expect("circuits are non-empty");
    let rest: Vec<usize> = circuit[..circuit.len() - 1].to_vec();
    let mut entries = vec![0i64; rep.size()];
    entries[e] = 1;
    if !rest.is_empty() {
        // The columns of `rest` are independent; solve on a row basis of
        // their submatrix.
        let sub = rep.matrix().columns(&rest);
        let rows = sub.pivot_rows()?;
        if rows.len() != rest.len() {
            return Err(Error::TheoremViolation(format!(
                "set {:?} is not a circuit",
                circuit.iter().map(|&c| c + 1).collect::<Vec<_>>()
            )));
        }
        let square = rep.matrix().submatrix(&rows, &rest);
        let rhs: Vec<i64> = rows.iter().map(|&i| -rep.matrix().get(i, e)).collect();
        let coeffs = square.solve_square(&rhs)?;
        for (i, &c) in rest.iter().enumerate() {
            entries[c] = coeffs[i];
        }
    }
    if rep.matrix().mul_vec(&entries)?.iter().any(|&x| x != 0) {
        return Err(Error::TheoremViolation(format!(
            "set {:?} is not a circuit",
            circuit.iter().map(|&c| c + 1).collect::<Vec<_>>()
        )));
    }
    if entries.iter().any(|&x| x.abs() > 1) {
        return Err(Error::TheoremViolation(
            "signed circuit has an entry outside {0, ±1}".into(),
        ));
    }
    Ok(SignedVector::new(entries, VectorKind::SignedCircuit))
}

/// Complete a cut from its values on the first r columns, which must be
/// independent: the remaining entries are forced by orthogonality to the
/// fundamental signed circuits.
pub fn extend_cut(rep: &RegularRep, prefix: &[i64]) -> Result<SignedVector> {
    let r = rep.rank();
    if prefix.len() != r {
        return Err(Error::InvalidArgument(format!(
            "prefix length {} does not match rank {}",
            prefix.len(),
            r
        )));
    }
    let basis: Vec<usize> = (0..r).collect();
    if rep.matrix().columns(&basis).det()? == 0 {
        return Err(Error::InvalidArgument(
            "first r columns are dependent".into(),
        ));
    }
    extend_cut_on_basis(rep, &basis, prefix)
}

fn extend_cut_on_basis(rep: &RegularRep, basis: &[usize], values: &[i64]) -> Result<SignedVector> {
    let mut entries = vec![0i64; rep.size()];
    for (i, &b) in basis.iter().enumerate() {
        entries[b] = values[i];
    }
    for e in 0..rep.size() {
        if basis.contains(&e) {
            continue;
        }
        let circuit = rep.fundamental_signed_circuit(e, basis)?;
        let mut acc: i64 = 0;
        for (i, &b) in basis.iter().enumerate() {
            acc = acc
                .checked_add(values[i].checked_mul(circuit.entries()[b]).ok_or(Error::Overflow)?)
                .ok_or(Error::Overflow)?;
        }
        entries[e] = -acc;
    }
    Ok(SignedVector::new(entries, VectorKind::Cut))
}

/// All cuts with every entry strictly below k in absolute value, sorted
/// lexicographically. A cut is determined by its values on a basis, so
/// enumeration ranges over basis prefixes and filters the extensions.
pub fn k_cuts(rep: &RegularRep, k: i64) -> Result<Vec<SignedVector>> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let basis = rep.matrix().pivot_columns()?;
    let bound = k - 1;
    let mut out = Vec::new();
    let mut values = vec![-bound; basis.len()];
    loop {
        let cut = extend_cut_on_basis(rep, &basis, &values)?;
        if cut.entries().iter().all(|&x| x.abs() <= bound) {
            out.push(cut);
        }
        // Odometer over the basis value box.
        let mut i = 0;
        loop {
            if i == values.len() {
                out.sort();
                return Ok(out);
            }
            values[i] += 1;
            if values[i] <= bound {
                break;
            }
            values[i] = -bound;
            i += 1;
        }
    }
}

/// All flows with every entry strictly below k in absolute value, sorted
/// lexicographically. Dual to `k_cuts`: a flow is determined by its
/// values off a basis, via the fundamental signed circuits.
pub fn k_flows(rep: &RegularRep, k: i64) -> Result<Vec<SignedVector>> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let basis = rep.matrix().pivot_columns()?;
    let in_basis = {
        let mut b = vec![false; rep.size()];
        for &c in &basis {
            b[c] = true;
        }
        b
    };
    let cobasis: Vec<usize> = (0..rep.size()).filter(|&c| !in_basis[c]).collect();
    let circuits: Vec<SignedVector> = cobasis
        .iter()
        .map(|&e| rep.fundamental_signed_circuit(e, &basis))
        .collect::<Result<_>>()?;
    let bound = k - 1;
    let mut out = Vec::new();
    let mut coeffs = vec![-bound; cobasis.len()];
    loop {
        let mut entries = vec![0i64; rep.size()];
        for (t, circuit) in circuits.iter().enumerate() {
            if coeffs[t] == 0 {
                continue;
            }
            for (j, &x) in circuit.entries().iter().enumerate() {
                if x != 0 {
                    entries[j] = entries[j]
                        .checked_add(coeffs[t].checked_mul(x).ok_or(Error::Overflow)?)
                        .ok_or(Error::Overflow)?;
                }
            }
        }
        if entries.iter().all(|&x| x.abs() <= bound) {
            out.push(SignedVector::new(entries, VectorKind::Flow));
        }
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                out.sort();
                return Ok(out);
            }
            coeffs[i] += 1;
            if coeffs[i] <= bound {
                break;
            }
            coeffs[i] = -bound;
            i += 1;
        }
    }
}

/// A cut is spanning when its support contains a basis.
pub fn is_spanning(rep: &RegularRep, cut: &SignedVector) -> Result<bool> {
    if cut.kind() != VectorKind::Cut {
        return Err(Error::InvalidArgument("is_spanning expects a cut".into()));
    }
    if cut.entries().len() != rep.size() {
        return Err(Error::InvalidArgument("cut length mismatch".into()));
    }
    let support = cut.support();
    if support.len() < rep.rank() {
        return Ok(false);
    }
    Ok(rep.matrix().columns(&support).rank()? == rep.rank())
}

/// Componentwise refinement order on {0, ±1} vectors: u precedes v when
/// every nonzero entry of u agrees with v.
pub fn preceq(u: &SignedVector, v: &SignedVector) -> Result<bool> {
    if u.entries().len() != v.entries().len() {
        return Err(Error::InvalidArgument("length mismatch".into()));
    }
    for x in u.entries().iter().chain(v.entries()) {
        if x.abs() > 1 {
            return Err(Error::InvalidArgument(
                "refinement order is defined on {0, ±1} vectors".into(),
            ));
        }
    }
    Ok(u.entries()
        .iter()
        .zip(v.entries())
        .all(|(&a, &b)| a == 0 || a == b))
}

/// The 2-cuts maximal under the refinement order.
pub fn maximal_2cuts(rep: &RegularRep) -> Result<Vec<SignedVector>> {
    let cuts = k_cuts(rep, 2)?;
    let mut out = Vec::new();
    for u in &cuts {
        let mut dominated = false;
        for v in &cuts {
            if u != v && preceq(u, v)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            out.push(u.clone());
        }
    }
    Ok(out)
}
