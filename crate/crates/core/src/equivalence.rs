//! Maps between representations of the same regular matroid: Camion's
//! signing algorithm, the explicit unimodular transformation carrying
//! one polytope onto another, and a small-scale isomorphism search.

use std::collections::BTreeSet;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::matroid::RegularRep;

/// Signed column permutation: applied on the right of a matrix A, the
/// result has column j equal to signs[j] * A.col(perm[j]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i64>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i64>) -> Result<Self> {
        if perm.len() != signs.len() {
            return Err(Error::InvalidArgument("length mismatch".into()));
        }
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument("signs must be +1 or -1".into()));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { perm: (0..n).collect(), signs: vec![1; n] }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i64] {
        &self.signs
    }

    pub fn matrix(&self) -> IntMatrix {
        let n = self.perm.len();
        let mut entries = vec![0i64; n * n];
        for (j, (&p, &s)) in self.perm.iter().zip(&self.signs).enumerate() {
            entries[p * n + j] = s;
        }
        IntMatrix::new(n, n, entries).expect("square by construction")
    }

    pub fn from_matrix(m: &IntMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        let n = m.rows();
        let mut perm = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for j in 0..n {
            let nonzero: Vec<usize> = (0..n).filter(|&i| m.get(i, j) != 0).collect();
            if nonzero.len() != 1 || m.get(nonzero[0], j).abs() != 1 {
                return Err(Error::InvalidArgument(
                    "matrix is not a signed permutation".into(),
                ));
            }
            perm.push(nonzero[0]);
            signs.push(m.get(nonzero[0], j));
        }
        SignedPermutation::new(perm, signs)
    }
}

fn check_signable_entries(m: &IntMatrix) -> Result<()> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m.get(i, j).abs() > 1 {
                return Err(Error::InvalidArgument(
                    "entries must lie in {-1, 0, 1}".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Row and column signs (r, c) with diag(r) * a * diag(c) == b, found
/// by propagation over the bipartite support graph. Components are
/// rooted at the smallest unvisited node, rows before columns, and the
/// root gets sign +1, which makes the output deterministic.
pub fn camion_sign(a: &IntMatrix, b: &IntMatrix) -> Result<(Vec<i64>, Vec<i64>)> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::InvalidArgument("shape mismatch".into()));
    }
    check_signable_entries(a)?;
    check_signable_entries(b)?;
    let (m, n) = (a.rows(), a.cols());
    for i in 0..m {
        for j in 0..n {
            if (a.get(i, j) == 0) != (b.get(i, j) == 0) {
                return Err(Error::InvalidArgument("supports differ".into()));
            }
        }
    }
    let mut sign: Vec<Option<i64>> = vec![None; m + n];
    for root in 0..m + n {
        if sign[root].is_some() {
            continue;
        }
        sign[root] = Some(1);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let su = sign[u].unwrap();
            if u < m {
                for j in 0..n {
                    if a.get(u, j) == 0 {
                        continue;
                    }
                    let s = a.get(u, j) * b.get(u, j);
                    let v = m + j;
                    match sign[v] {
                        None => {
                            sign[v] = Some(s * su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv != s * su => return Err(Error::SigningInfeasible),
                        _ => {}
                    }
                }
            } else {
                let j = u - m;
                for i in 0..m {
                    if a.get(i, j) == 0 {
                        continue;
                    }
                    let s = a.get(i, j) * b.get(i, j);
                    match sign[i] {
                        None => {
                            sign[i] = Some(s * su);
                            queue.push_back(i);
                        }
                        Some(si) if si != s * su => return Err(Error::SigningInfeasible),
                        _ => {}
                    }
                }
            }
        }
    }
    let row_signs: Vec<i64> = sign[..m].iter().map(|s| s.unwrap()).collect();
    let col_signs: Vec<i64> = sign[m..].iter().map(|s| s.unwrap()).collect();
    for i in 0..m {
        for j in 0..n {
            if row_signs[i] * a.get(i, j) * col_signs[j] != b.get(i, j) {
                return Err(Error::SigningInfeasible);
            }
        }
    }
    Ok((row_signs, col_signs))
}

fn signed_column_set(m: &IntMatrix) -> Vec<Vec<i64>> {
    let mut set = BTreeSet::new();
    for j in 0..m.cols() {
        let col = m.col(j);
        set.insert(col.iter().map(|&x| -x).collect::<Vec<i64>>());
        set.insert(col);
    }
    set.into_iter().collect()
}

fn mapped_circuits(circuits: &[Vec<usize>], corr: &[usize]) -> BTreeSet<Vec<usize>> {
    circuits
        .iter()
        .map(|c| {
            let mut image: Vec<usize> = c.iter().map(|&i| corr[i]).collect();
            image.sort_unstable();
            image
        })
        .collect()
}

/// Unimodular matrix f and signed permutation p with
/// m2.matrix() == f * m1.matrix() * p.matrix(), given a correspondence
/// sending column i of m1 to column corr[i] of m2. The correspondence
/// must be an isomorphism of the underlying matroids. The map x -> f x
/// carries the first polytope onto the second, sending vertex i to
/// vertex corr[i] up to sign.
pub fn unimodular_transform(
    m1: &RegularRep,
    m2: &RegularRep,
    corr: &[usize],
) -> Result<(IntMatrix, SignedPermutation)> {
    let n = m1.size();
    if m2.size() != n {
        return Err(Error::InvalidCorrespondence(
            "ground sets have different sizes".into(),
        ));
    }
    if corr.len() != n {
        return Err(Error::InvalidCorrespondence(
            "correspondence has the wrong length".into(),
        ));
    }
    let mut seen = vec![false; n];
    for &c in corr {
        if c >= n || seen[c] {
            return Err(Error::InvalidCorrespondence(
                "correspondence is not a bijection".into(),
            ));
        }
        seen[c] = true;
    }
    if m1.rank() != m2.rank() {
        return Err(Error::InvalidCorrespondence("ranks differ".into()));
    }
    let image = mapped_circuits(m1.circuits()?, corr);
    let target: BTreeSet<Vec<usize>> = m2.circuits()?.iter().cloned().collect();
    if image != target {
        return Err(Error::InvalidCorrespondence(
            "correspondence does not map circuits onto circuits".into(),
        ));
    }

    let m2p = m2.matrix().permute_cols(corr);
    let basis = m1.matrix().pivot_columns()?;
    let (n1_inv, perm, a1) = m1.matrix().standard_form(&basis)?;
    let (_, _, a2) = m2p.standard_form(&basis).map_err(|e| match e {
        Error::NotABasis { .. } => Error::InvalidCorrespondence(
            "chosen basis is dependent in the second representation".into(),
        ),
        other => other,
    })?;
    for i in 0..a1.rows() {
        for j in 0..a1.cols() {
            if (a1.get(i, j) - a2.get(i, j)) % 2 != 0 {
                return Err(Error::InvalidCorrespondence(
                    "standard forms are not congruent mod 2".into(),
                ));
            }
        }
    }
    let (row_signs, col_signs) = camion_sign(&a1, &a2)?;

    let n2 = m2p.columns(&basis);
    let f = n2.mul(&IntMatrix::diagonal(&row_signs)?)?.mul(&n1_inv)?;
    let p_mat = IntMatrix::permutation(&perm)?;
    let p_full = p_mat
        .mul(&IntMatrix::diagonal(&col_signs)?)?
        .mul(&p_mat.transpose())?
        .mul(&IntMatrix::permutation(corr)?.transpose())?;
    let p = SignedPermutation::from_matrix(&p_full).map_err(|_| {
        Error::Inconsistency("transformation is not a signed permutation".into())
    })?;

    let mapped = f.mul(m1.matrix())?.mul(&p_full)?;
    if &mapped != m2.matrix() {
        return Err(Error::Inconsistency(
            "transformation fails to carry one representation to the other".into(),
        ));
    }
    if !verify_vertex_set_map(
        &signed_column_set(m1.matrix()),
        &signed_column_set(m2.matrix()),
        &f,
    )? {
        return Err(Error::Inconsistency(
            "transformation fails to map the vertex sets".into(),
        ));
    }
    Ok((f, p))
}

/// Whether the unimodular map x -> f x sends the first point set
/// exactly onto the second, as sets.
pub fn verify_vertex_set_map(v1: &[Vec<i64>], v2: &[Vec<i64>], f: &IntMatrix) -> Result<bool> {
    if f.rows() != f.cols() {
        return Err(Error::NotSquare { rows: f.rows(), cols: f.cols() });
    }
    let d = f.det()?;
    if d.abs() != 1 {
        return Err(Error::NotUnimodular {
            rows: (1..=f.rows()).collect(),
            cols: (1..=f.cols()).collect(),
            det: d,
        });
    }
    if v1.iter().any(|v| v.len() != f.cols()) || v2.iter().any(|v| v.len() != f.rows()) {
        return Err(Error::InvalidArgument("point dimension mismatch".into()));
    }
    let image: BTreeSet<Vec<i64>> = v1
        .iter()
        .map(|v| f.mul_vec(v))
        .collect::<Result<_>>()?;
    let target: BTreeSet<Vec<i64>> = v2.iter().cloned().collect();
    Ok(image == target)
}

/// Exhaustive search for a matroid isomorphism between two
/// representations, as a correspondence usable with
/// `unimodular_transform`. Backtracks over element assignments ordered
/// by circuit-size signatures; intended for small ground sets only.
pub fn matroid_isomorphism_search(
    m1: &RegularRep,
    m2: &RegularRep,
) -> Result<Option<Vec<usize>>> {
    let n = m1.size();
    if n > 10 {
        return Err(Error::SizeLimit { size: n, limit: 10 });
    }
    if m2.size() != n || m1.rank() != m2.rank() {
        return Ok(None);
    }
    let c1 = m1.circuits()?;
    let c2 = m2.circuits()?;
    let sizes = |cs: &[Vec<usize>]| {
        let mut v: Vec<usize> = cs.iter().map(|c| c.len()).collect();
        v.sort_unstable();
        v
    };
    if sizes(c1) != sizes(c2) {
        return Ok(None);
    }
    let signature = |cs: &[Vec<usize>], e: usize| {
        let mut v: Vec<usize> = cs.iter().filter(|c| c.contains(&e)).map(|c| c.len()).collect();
        v.sort_unstable();
        v
    };
    let sig1: Vec<Vec<usize>> = (0..n).map(|e| signature(c1, e)).collect();
    let sig2: Vec<Vec<usize>> = (0..n).map(|e| signature(c2, e)).collect();
    let target: BTreeSet<Vec<usize>> = c2.iter().cloned().collect();
    // Circuits indexed by their largest element, so each is checked as
    // soon as its image is fully decided.
    let mut by_max: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); n];
    for c in c1 {
        by_max[*c.last().expect("circuits are non-empty")].push(c);
    }

    fn search(
        e: usize,
        n: usize,
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sig1: &[Vec<usize>],
        sig2: &[Vec<usize>],
        by_max: &[Vec<&Vec<usize>>],
        target: &BTreeSet<Vec<usize>>,
    ) -> Option<Vec<usize>> {
        if e == n {
            return Some(phi.clone());
        }
        for j in 0..n {
            if used[j] || sig1[e] != sig2[j] {
                continue;
            }
            phi.push(j);
            used[j] = true;
            let ok = by_max[e].iter().all(|c| {
                let mut image: Vec<usize> = c.iter().map(|&i| phi[i]).collect();
                image.sort_unstable();
                target.contains(&image)
            });
            if ok {
                if let Some(found) =
                    search(e + 1, n, phi, used, sig1, sig2, by_max, target)
                {
                    return Some(found);
                }
            }
            phi.pop();
            used[j] = false;
        }
        None
    }

    let mut phi = Vec::with_capacity(n);
    let mut used = vec![false; n];
    Ok(search(0, n, &mut phi, &mut used, &sig1, &sig2, &by_max, &target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn running() -> RegularRep {
        RegularRep::from_matrix(m(&[
            &[1, 0, 0, -1, 1],
            &[0, 1, 0, -1, 1],
            &[0, 0, 1, -1, 0],
        ]))
        .unwrap()
    }

    #[test]
    fn signed_permutation_round_trip() {
        let p = SignedPermutation::new(vec![2, 0, 1], vec![1, -1, 1]).unwrap();
        let back = SignedPermutation::from_matrix(&p.matrix()).unwrap();
        assert_eq!(back, p);
        let a = m(&[&[1, 2, 3]]);
        assert_eq!(a.mul(&p.matrix()).unwrap(), m(&[&[3, -1, 2]]));
        assert!(SignedPermutation::new(vec![0, 0], vec![1, 1]).is_err());
        assert!(SignedPermutation::new(vec![0, 1], vec![1, 2]).is_err());
        assert!(SignedPermutation::from_matrix(&m(&[&[1, 1], &[0, 1]])).is_err());
        assert_eq!(
            SignedPermutation::identity(3).matrix(),
            IntMatrix::identity(3)
        );
    }

    #[test]
    fn camion_recovers_the_standard_pair() {
        let a = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let b = m(&[&[1, 0, 1], &[0, 1, -1]]);
        let (rows, cols) = camion_sign(&a, &b).unwrap();
        assert_eq!(rows, vec![1, -1]);
        assert_eq!(cols, vec![1, -1, 1]);
    }

    #[test]
    fn camion_rejections() {
        let a = m(&[&[1, 1], &[1, 1]]);
        let infeasible = m(&[&[1, 1], &[1, -1]]);
        assert!(matches!(
            camion_sign(&a, &infeasible),
            Err(Error::SigningInfeasible)
        ));
        let support = m(&[&[1, 0], &[1, 1]]);
        assert!(matches!(
            camion_sign(&a, &support),
            Err(Error::InvalidArgument(_))
        ));
        let wide = m(&[&[2, 1], &[1, 1]]);
        assert!(camion_sign(&wide, &wide).is_err());
    }

    #[test]
    fn camion_handles_disconnected_support() {
        let a = m(&[&[1, 0], &[0, 1]]);
        let b = m(&[&[1, 0], &[0, -1]]);
        let (rows, cols) = camion_sign(&a, &b).unwrap();
        assert_eq!(rows, vec![1, 1]);
        assert_eq!(cols, vec![1, -1]);
    }

    #[test]
    fn transform_between_tu_twins() {
        let r1 = RegularRep::from_matrix(m(&[&[1, 0, 1], &[0, 1, 1]])).unwrap();
        let r2 = RegularRep::from_matrix(m(&[&[1, 0, 1], &[0, 1, -1]])).unwrap();
        let (f, p) = unimodular_transform(&r1, &r2, &[0, 1, 2]).unwrap();
        assert_eq!(f, m(&[&[1, 0], &[0, -1]]));
        assert_eq!(p.perm(), &[0, 1, 2]);
        assert_eq!(p.signs(), &[1, -1, 1]);
        assert_eq!(
            f.mul(r1.matrix()).unwrap().mul(&p.matrix()).unwrap(),
            *r2.matrix()
        );
    }

    #[test]
    fn transform_identity_on_itself() {
        let r = running();
        let (f, p) = unimodular_transform(&r, &r, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(f, IntMatrix::identity(3));
        assert_eq!(p, SignedPermutation::identity(5));
    }

    #[test]
    fn transform_rejects_non_isomorphisms() {
        let r = running();
        // swapping elements 1 and 3 sends circuit {1,2,5} to {3,2,5},
        // which is not a circuit
        assert!(matches!(
            unimodular_transform(&r, &r, &[2, 1, 0, 3, 4]),
            Err(Error::InvalidCorrespondence(_))
        ));
        assert!(matches!(
            unimodular_transform(&r, &r, &[0, 0, 2, 3, 4]),
            Err(Error::InvalidCorrespondence(_))
        ));
        assert!(matches!(
            unimodular_transform(&r, &r, &[0, 1]),
            Err(Error::InvalidCorrespondence(_))
        ));
    }

    #[test]
    fn vertex_map_check() {
        let v1 = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]];
        let rot = m(&[&[0, -1], &[1, 0]]);
        assert!(verify_vertex_set_map(&v1, &v1, &rot).unwrap());
        let shear = m(&[&[1, 1], &[0, 1]]);
        assert!(!verify_vertex_set_map(&v1, &v1, &shear).unwrap());
        let scale = m(&[&[2, 0], &[0, 1]]);
        assert!(matches!(
            verify_vertex_set_map(&v1, &v1, &scale),
            Err(Error::NotUnimodular { det: 2, .. })
        ));
    }

    #[test]
    fn isomorphism_search_small() {
        let r = running();
        assert_eq!(
            matroid_isomorphism_search(&r, &r).unwrap(),
            Some(vec![0, 1, 2, 3, 4])
        );
        // relabeled copy: swap elements 0 and 2 is invalid, but swapping
        // circuits {125} and {345} wholesale is fine: 1<->3, 2<->4
        let perm = [2, 3, 0, 1, 4];
        let permuted = RegularRep::from_matrix(
            running().matrix().permute_cols(&{
                let mut inv = [0usize; 5];
                for (i, &p) in perm.iter().enumerate() {
                    inv[p] = i;
                }
                inv.to_vec()
            }),
        )
        .unwrap();
        let found = matroid_isomorphism_search(&r, &permuted).unwrap().unwrap();
        assert!(unimodular_transform(&r, &permuted, &found).is_ok());
        let smaller = RegularRep::from_matrix(m(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(matroid_isomorphism_search(&r, &smaller).unwrap(), None);
    }

    #[test]
    fn isomorphism_search_size_limit() {
        let wide = RegularRep::from_matrix(m(&[&[1; 11]])).unwrap();
        assert!(matches!(
            matroid_isomorphism_search(&wide, &wide),
            Err(Error::SizeLimit { size: 11, limit: 10 })
        ));
    }
}
