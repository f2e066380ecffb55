use serde::Serialize;

use crate::cuts::{self, SignedVector};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::matroid::RegularRep;
use crate::toric;

/// Facet of the polytope, certified by a spanning 2-cut: the cut entry
/// for a column says which of the paired vertices lies on the facet, and
/// the normal is the unique preimage of the cut in the row space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetCert {
    pub cut: SignedVector,
    pub normal: Vec<i64>,
    #[serde(rename = "vertices")]
    pub vertex_indices: Vec<usize>,
}

/// Convex hull of the columns of [M | -M]. Vertices keep that column
/// order: index j < n is column j of M, index n + j its negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<Vec<i64>>,
    facet_certs: Option<Vec<FacetCert>>,
}

impl Polytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facet_certs(&self) -> Option<&[FacetCert]> {
        self.facet_certs.as_deref()
    }

    /// Point list ±columns of an arbitrary matrix, duplicates dropped.
    /// No facet data; enough for dimension and vertex-set questions
    /// about representations that are not full-rank.
    pub fn from_signed_columns(m: &IntMatrix) -> Polytope {
        let mut vertices: Vec<Vec<i64>> = Vec::new();
        for sign in [1i64, -1] {
            for j in 0..m.cols() {
                let v: Vec<i64> = m.col(j).iter().map(|&x| sign * x).collect();
                if !vertices.contains(&v) {
                    vertices.push(v);
                }
            }
        }
        Polytope { ambient_dim: m.rows(), vertices, facet_certs: None }
    }
}

/// ±columns of a simple representation; all 2n are genuinely vertices.
pub fn build_polytope(rep: &RegularRep) -> Result<Polytope> {
    if !rep.is_simple() {
        return Err(Error::MustSimplify);
    }
    let m = rep.matrix();
    let mut vertices = Vec::with_capacity(2 * m.cols());
    for j in 0..m.cols() {
        vertices.push(m.col(j));
    }
    for j in 0..m.cols() {
        vertices.push(m.col(j).iter().map(|&x| -x).collect());
    }
    Ok(Polytope { ambient_dim: m.rows(), vertices, facet_certs: None })
}

pub fn polytope_with_facets(rep: &RegularRep) -> Result<Polytope> {
    let mut p = build_polytope(rep)?;
    p.facet_certs = Some(facets(rep)?);
    Ok(p)
}

/// Affine dimension of the vertex set.
pub fn dimension(p: &Polytope) -> Result<usize> {
    if p.vertices.len() <= 1 {
        return Ok(0);
    }
    let v0 = &p.vertices[0];
    let diffs: Vec<Vec<i64>> = p.vertices[1..]
        .iter()
        .map(|v| v.iter().zip(v0).map(|(&a, &b)| a - b).collect())
        .collect();
    IntMatrix::from_rows(&diffs)?.rank()
}

/// One facet per spanning 2-cut. The normal u is solved from M^T u = cut
/// on a basis inside the support and then verified on every column.
pub fn facets(rep: &RegularRep) -> Result<Vec<FacetCert>> {
    if !rep.is_simple() {
        return Err(Error::MustSimplify);
    }
    let m = rep.matrix();
    let n = rep.size();
    let mut out = Vec::new();
    for cut in cuts::k_cuts(rep, 2)? {
        if !cuts::is_spanning(rep, &cut)? {
            continue;
        }
        let support = cut.support();
        let basis: Vec<usize> = {
            let sub = m.columns(&support);
            sub.pivot_columns()?.iter().map(|&i| support[i]).collect()
        };
        let square = m.columns(&basis).transpose();
        let rhs: Vec<i64> = basis.iter().map(|&c| cut.entries()[c]).collect();
        let normal = square.solve_square(&rhs)?;
        let check = m.transpose().mul_vec(&normal)?;
        if check != cut.entries() {
            return Err(Error::TheoremViolation(
                "cut does not lift to a row-space normal".into(),
            ));
        }
        let mut vertex_indices = Vec::new();
        for (j, &g) in cut.entries().iter().enumerate() {
            match g {
                1 => vertex_indices.push(j),
                -1 => vertex_indices.push(n + j),
                _ => {}
            }
        }
        vertex_indices.sort_unstable();
        out.push(FacetCert { cut, normal, vertex_indices });
    }
    out.sort_by(|a, b| a.cut.cmp(&b.cut));
    Ok(out)
}

fn dot(u: &[i64], v: &[i64]) -> Result<i64> {
    let mut acc: i64 = 0;
    for (&a, &b) in u.iter().zip(v) {
        acc = acc
            .checked_add(a.checked_mul(b).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// Integer points of the dilate kP, sorted lexicographically. Scans the
/// bounding box of the scaled vertex set and keeps points satisfying
/// every facet inequality u . x <= k.
pub fn lattice_points_dilated(p: &Polytope, k: i64) -> Result<Vec<Vec<i64>>> {
    let Some(certs) = p.facet_certs() else {
        return Err(Error::NeedsFacets);
    };
    if k < 0 {
        return Err(Error::InvalidArgument("dilation factor must be nonnegative".into()));
    }
    if dimension(p)? != p.ambient_dim {
        return Err(Error::InvalidArgument(
            "lattice point scan needs a full-dimensional polytope".into(),
        ));
    }
    let d = p.ambient_dim;
    let mut lo = vec![i64::MAX; d];
    let mut hi = vec![i64::MIN; d];
    for v in p.vertices() {
        for i in 0..d {
            lo[i] = lo[i].min(v[i] * k);
            hi[i] = hi[i].max(v[i] * k);
        }
    }
    let mut out = Vec::new();
    let mut x = lo.clone();
    'scan: loop {
        let mut inside = true;
        for c in certs {
            if dot(&c.normal, &x)? > k {
                inside = false;
                break;
            }
        }
        if inside {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == d {
                break 'scan;
            }
            x[i] += 1;
            if x[i] <= hi[i] {
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
    out.sort();
    Ok(out)
}

pub fn lattice_points(p: &Polytope) -> Result<Vec<Vec<i64>>> {
    lattice_points_dilated(p, 1)
}

/// All facet offsets are exactly 1 at integral normals, each facet
/// carrying r linearly independent vertices.
pub fn is_reflexive(rep: &RegularRep) -> Result<bool> {
    let p = polytope_with_facets(rep)?;
    let certs = p.facet_certs().expect("facets just computed");
    if certs.is_empty() {
        return Ok(false);
    }
    for cert in certs {
        for (idx, v) in p.vertices().iter().enumerate() {
            let s = dot(&cert.normal, v)?;
            if s > 1 {
                return Ok(false);
            }
            if (s == 1) != cert.vertex_indices.binary_search(&idx).is_ok() {
                return Ok(false);
            }
        }
        let on_facet: Vec<Vec<i64>> = cert
            .vertex_indices
            .iter()
            .map(|&i| p.vertices()[i].clone())
            .collect();
        if IntMatrix::from_rows(&on_facet)?.rank()? != rep.rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The only lattice points are the vertices and the origin.
pub fn is_terminal(rep: &RegularRep) -> Result<bool> {
    let p = polytope_with_facets(rep)?;
    let points = lattice_points(&p)?;
    let mut expected: Vec<Vec<i64>> = p.vertices().to_vec();
    expected.push(vec![0; p.ambient_dim()]);
    expected.sort();
    expected.dedup();
    Ok(points == expected)
}

/// The vertex set is closed under negation.
pub fn is_centrally_symmetric(rep: &RegularRep) -> Result<bool> {
    let p = build_polytope(rep)?;
    let set: std::collections::BTreeSet<&Vec<i64>> = p.vertices().iter().collect();
    Ok(p.vertices()
        .iter()
        .all(|v| set.contains(&v.iter().map(|&x| -x).collect::<Vec<i64>>())))
}

/// Integer points u of the dilated polar k P^polar, i.e. all u with
/// every entry of M^T u at most k in absolute value, sorted. Scans the
/// box spanned by the scaled facet normals of P, whose hull is the polar.
pub fn polar_lattice_points(rep: &RegularRep, k: i64) -> Result<Vec<Vec<i64>>> {
    if k < 0 {
        return Err(Error::InvalidArgument("dilation factor must be nonnegative".into()));
    }
    let certs = facets(rep)?;
    let r = rep.rank();
    let mt = rep.matrix().transpose();
    let mut lo = vec![0i64; r];
    let mut hi = vec![0i64; r];
    for cert in &certs {
        for i in 0..r {
            lo[i] = lo[i].min(cert.normal[i] * k);
            hi[i] = hi[i].max(cert.normal[i] * k);
        }
    }
    let mut out = Vec::new();
    let mut u = lo.clone();
    'scan: loop {
        if mt.mul_vec(&u)?.iter().all(|&x| x.abs() <= k) {
            out.push(u.clone());
        }
        let mut i = 0;
        loop {
            if i == r {
                break 'scan;
            }
            u[i] += 1;
            if u[i] <= hi[i] {
                break;
            }
            u[i] = lo[i];
            i += 1;
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Primal,
    Polar,
}

/// Lattice point counts of the dilates 0..=k_max. The primal side scans
/// boxes against the facet inequalities; the polar side counts cuts, a
/// bijection the acceptance tests verify independently.
pub fn ehrhart_counts(rep: &RegularRep, side: Side, k_max: i64) -> Result<Vec<u64>> {
    if k_max < 0 {
        return Err(Error::InvalidArgument("k_max must be nonnegative".into()));
    }
    match side {
        Side::Primal => {
            let p = polytope_with_facets(rep)?;
            (0..=k_max)
                .map(|k| Ok(lattice_points_dilated(&p, k)?.len() as u64))
                .collect()
        }
        Side::Polar => (0..=k_max)
            .map(|k| Ok(cuts::k_cuts(rep, k + 1)?.len() as u64))
            .collect(),
    }
}

fn binom(n: i64, k: i64) -> Result<i128> {
    if k < 0 || k > n {
        return Ok(0);
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as i128).ok_or(Error::Overflow)?;
        acc /= (i + 1) as i128;
    }
    Ok(acc)
}

/// h* coefficients from the counts of the dilates 0..=r. This is the
/// exact interpolation of the degree-r counting polynomial, folded with
/// (1-t)^(r+1).
pub fn ehrhart_to_hstar(counts: &[u64], r: usize) -> Result<Vec<i64>> {
    if counts.len() < r + 1 {
        return Err(Error::InvalidArgument(format!(
            "need counts for dilates 0..={}, got {} values",
            r,
            counts.len()
        )));
    }
    let mut h = Vec::with_capacity(r + 1);
    for j in 0..=r {
        let mut acc: i128 = 0;
        for i in 0..=j {
            let sign = if i % 2 == 0 { 1i128 } else { -1 };
            let term = sign
                .checked_mul(binom(r as i64 + 1, i as i64)?)
                .and_then(|t| t.checked_mul(counts[j - i] as i128))
                .ok_or(Error::Overflow)?;
            acc = acc.checked_add(term).ok_or(Error::Overflow)?;
        }
        h.push(i64::try_from(acc).map_err(|_| Error::Overflow)?);
    }
    Ok(h)
}

/// h* of the polytope, computed along two independent routes that must
/// agree: Ehrhart counts of the dilates, and the h-vector of the
/// initial-ideal triangulation.
pub fn hstar(rep: &RegularRep) -> Result<Vec<i64>> {
    let r = rep.rank();
    let counts = ehrhart_counts(rep, Side::Primal, r as i64)?;
    let from_counts = ehrhart_to_hstar(&counts, r)?;
    let tri = toric::triangulation(rep, &toric::MonomialOrder::standard(rep.size()))?;
    let from_tri = toric::h_vector(&tri)?;
    if from_counts != from_tri {
        return Err(Error::Inconsistency(format!(
            "h* from dilate counts {:?} vs from triangulation {:?}",
            from_counts, from_tri
        )));
    }
    Ok(from_counts)
}

/// Coefficients in the basis t^i (1+t)^(r-2i) of a palindromic h*.
pub fn gamma_from_hstar(h: &[i64]) -> Result<Vec<i64>> {
    let r = h.len() - 1;
    if !(0..h.len()).all(|i| h[i] == h[r - i]) {
        return Err(Error::TheoremViolation(format!(
            "h* vector {:?} is not palindromic",
            h
        )));
    }
    let mut rem: Vec<i128> = h.iter().map(|&x| x as i128).collect();
    let mut gamma = Vec::with_capacity(r / 2 + 1);
    for i in 0..=r / 2 {
        let g = rem[i];
        gamma.push(i64::try_from(g).map_err(|_| Error::Overflow)?);
        // Subtract g * t^i (1+t)^(r-2i).
        for j in 0..=(r - 2 * i) {
            let term = g
                .checked_mul(binom((r - 2 * i) as i64, j as i64)?)
                .ok_or(Error::Overflow)?;
            rem[i + j] = rem[i + j].checked_sub(term).ok_or(Error::Overflow)?;
        }
    }
    if rem.iter().any(|&x| x != 0) {
        return Err(Error::TheoremViolation(
            "palindromic h* failed gamma expansion".into(),
        ));
    }
    Ok(gamma)
}

/// Gamma vector of the (palindromic) h*.
pub fn gamma(rep: &RegularRep) -> Result<Vec<i64>> {
    gamma_from_hstar(&hstar(rep)?)
}
