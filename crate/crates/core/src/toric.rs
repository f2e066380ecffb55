//! Toric ideal of the polytope in the variables x_1..x_n, x_-1..x_-n, z:
//! x_i maps to the i-th column vertex, x_-i to its negative, z to the
//! apex of the homogenizing cone. Exponent vectors have length 2n + 1
//! with z last.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::cuts::{self, SignedVector};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::matroid::RegularRep;

/// Degrevlex over the fixed variable ranking
/// x_1 > x_-1 > x_2 > x_-2 > ... > x_n > x_-n > z.
///
/// Ties in total degree are broken by scanning exponents from the
/// smallest variable upward; the monomial with the larger exponent on
/// the first differing variable is the smaller one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    ground_size: usize,
    /// Variable indices from smallest-ranked to largest-ranked.
    scan: Vec<usize>,
}

impl MonomialOrder {
    pub fn standard(ground_size: usize) -> Self {
        let n = ground_size;
        let mut ranked = Vec::with_capacity(2 * n + 1);
        for i in 0..n {
            ranked.push(i);
            ranked.push(n + i);
        }
        ranked.push(2 * n);
        ranked.reverse();
        MonomialOrder { ground_size: n, scan: ranked }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn var_count(&self) -> usize {
        2 * self.ground_size + 1
    }

    pub fn cmp_monomials(&self, a: &[u32], b: &[u32]) -> Ordering {
        let da: u64 = a.iter().map(|&x| x as u64).sum();
        let db: u64 = b.iter().map(|&x| x as u64).sum();
        if da != db {
            return da.cmp(&db);
        }
        for &v in &self.scan {
            if a[v] != b[v] {
                return b[v].cmp(&a[v]);
            }
        }
        Ordering::Equal
    }
}

/// Variable name in reports: "x3", "x-3", or "z".
pub fn var_name(ground_size: usize, v: usize) -> String {
    if v < ground_size {
        format!("x{}", v + 1)
    } else if v < 2 * ground_size {
        format!("x-{}", v - ground_size + 1)
    } else {
        "z".into()
    }
}

/// Difference of two monomials with disjoint supports.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Binomial {
    plus: Vec<u32>,
    minus: Vec<u32>,
}

impl Binomial {
    pub fn new(plus: Vec<u32>, minus: Vec<u32>) -> Result<Self> {
        if plus.len() != minus.len() {
            return Err(Error::InvalidArgument("exponent lengths differ".into()));
        }
        if plus.iter().zip(&minus).any(|(&p, &m)| p > 0 && m > 0) {
            return Err(Error::InvalidArgument(
                "binomial monomials must have disjoint supports".into(),
            ));
        }
        if plus.iter().all(|&p| p == 0) && minus.iter().all(|&m| m == 0) {
            return Err(Error::InvalidArgument("zero binomial".into()));
        }
        Ok(Binomial { plus, minus })
    }

    pub fn plus(&self) -> &[u32] {
        &self.plus
    }

    pub fn minus(&self) -> &[u32] {
        &self.minus
    }

    pub fn lead<'a>(&'a self, order: &MonomialOrder) -> &'a [u32] {
        match order.cmp_monomials(&self.plus, &self.minus) {
            Ordering::Less => &self.minus,
            _ => &self.plus,
        }
    }

    fn side_to_map(&self, side: &[u32], n: usize) -> std::collections::BTreeMap<String, u32> {
        side.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| (var_name(n, v), e))
            .collect()
    }
}

impl Serialize for Binomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = (self.plus.len() - 1) / 2;
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("plus", &self.side_to_map(&self.plus, n))?;
        map.serialize_entry("minus", &self.side_to_map(&self.minus, n))?;
        map.end()
    }
}

/// Push the entries of a support subset J to the negated copy: entry i
/// stays put for i outside J and moves, negated, to slot n + i for i in
/// J. The result spans the kernel vectors of [M | -M] coming from
/// kernel vectors of M.
pub fn promote(lambda: &SignedVector, j_set: &[usize]) -> Vec<i64> {
    let n = lambda.entries().len();
    let mut out = vec![0i64; 2 * n];
    for (i, &x) in lambda.entries().iter().enumerate() {
        if j_set.contains(&i) {
            out[n + i] = -x;
        } else {
            out[i] = x;
        }
    }
    out
}

fn eta_binomial(eta: &[i64], var_count: usize) -> Result<Binomial> {
    let mut plus = vec![0u32; var_count];
    let mut minus = vec![0u32; var_count];
    for (v, &x) in eta.iter().enumerate() {
        if x > 0 {
            plus[v] = x as u32;
        } else if x < 0 {
            minus[v] = (-x) as u32;
        }
    }
    Binomial::new(plus, minus)
}

fn monomial_size(side: &[i64], positive: bool) -> usize {
    side.iter()
        .filter(|&&x| if positive { x > 0 } else { x < 0 })
        .count()
}

/// Graver basis of the doubled matrix [M | -M]: the antipodal relations
/// x_i x_-i - 1 together with every promotion of every signed circuit,
/// one representative per global-sign pair. Representatives put the
/// larger monomial first (by cardinality, then by the standard order).
pub fn graver_doubled(rep: &RegularRep) -> Result<Vec<Binomial>> {
    let n = rep.size();
    for j in 0..n {
        if rep.matrix().col(j).iter().all(|&x| x == 0) {
            return Err(Error::ZeroColumn);
        }
    }
    let order = MonomialOrder::standard(n);
    let var_count = 2 * n + 1;
    let mut set = BTreeSet::new();
    for i in 0..n {
        let mut plus = vec![0u32; var_count];
        plus[i] = 1;
        plus[n + i] = 1;
        set.insert(Binomial::new(plus, vec![0u32; var_count])?);
    }
    for lambda in cuts::signed_circuits(rep)? {
        let support = lambda.support();
        for mask in 0u32..(1 << support.len()) {
            let j_set: Vec<usize> = support
                .iter()
                .enumerate()
                .filter(|(t, _)| mask >> t & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            let mut eta = promote(&lambda, &j_set);
            let p = monomial_size(&eta, true);
            let m = monomial_size(&eta, false);
            let flip = if p != m {
                p < m
            } else {
                let b = eta_binomial(&eta, var_count)?;
                order.cmp_monomials(b.plus(), b.minus()) == Ordering::Less
            };
            if flip {
                for x in &mut eta {
                    *x = -*x;
                }
            }
            set.insert(eta_binomial(&eta, var_count)?);
        }
    }
    Ok(set.into_iter().collect())
}

/// Groebner basis of the toric ideal of the polytope with respect to
/// `order`: the relations x_i x_-i - z^2 and the promotions whose
/// monomials are balanced or off by one, the short side padded with z.
/// Not reduced; leading terms are squarefree and z-free.
pub fn groebner_basis(rep: &RegularRep, order: &MonomialOrder) -> Result<Vec<Binomial>> {
    if !rep.is_simple() {
        return Err(Error::MustSimplify);
    }
    let n = rep.size();
    if order.ground_size() != n {
        return Err(Error::InvalidArgument("order ground size mismatch".into()));
    }
    let var_count = 2 * n + 1;
    let z = 2 * n;
    let mut set = BTreeSet::new();
    for i in 0..n {
        let mut plus = vec![0u32; var_count];
        plus[i] = 1;
        plus[n + i] = 1;
        let mut minus = vec![0u32; var_count];
        minus[z] = 2;
        set.insert(Binomial::new(plus, minus)?);
    }
    for lambda in cuts::signed_circuits(rep)? {
        let support = lambda.support();
        for mask in 0u32..(1 << support.len()) {
            let j_set: Vec<usize> = support
                .iter()
                .enumerate()
                .filter(|(t, _)| mask >> t & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            let eta = promote(&lambda, &j_set);
            let p = monomial_size(&eta, true);
            let m = monomial_size(&eta, false);
            if p == m + 1 {
                let b = eta_binomial(&eta, var_count)?;
                let mut minus = b.minus().to_vec();
                minus[z] = 1;
                set.insert(Binomial::new(b.plus().to_vec(), minus)?);
            } else if p == m {
                let b = eta_binomial(&eta, var_count)?;
                let flipped = order.cmp_monomials(b.plus(), b.minus()) == Ordering::Less;
                if flipped {
                    set.insert(Binomial::new(b.minus().to_vec(), b.plus().to_vec())?);
                } else {
                    set.insert(b);
                }
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// Supports of the leading terms, sorted and deduplicated. Every lead
/// must be squarefree and z-free; anything else is a broken invariant.
pub fn initial_ideal(gb: &[Binomial], order: &MonomialOrder) -> Result<Vec<Vec<usize>>> {
    let z = 2 * order.ground_size();
    let mut set = BTreeSet::new();
    for b in gb {
        let lead = b.lead(order);
        if lead[z] != 0 {
            return Err(Error::TheoremViolation(format!(
                "leading term of {:?} involves z",
                b
            )));
        }
        if lead.iter().any(|&e| e > 1) {
            return Err(Error::TheoremViolation(format!(
                "leading term of {:?} is not squarefree",
                b
            )));
        }
        let support: Vec<usize> = lead
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == 1)
            .map(|(v, _)| v)
            .collect();
        set.insert(support);
    }
    Ok(set.into_iter().collect())
}

/// Unimodular triangulation read off the initial ideal: faces are the
/// squarefree monomials it misses. Labels are signed column indices,
/// 1..n for columns of M, -1..-n for their negatives, 0 for the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    rank: usize,
    ground_size: usize,
    cone_facets: Vec<Vec<i64>>,
    boundary_facets: Vec<Vec<i64>>,
}

impl Triangulation {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// Maximal faces; each contains the origin label 0.
    pub fn cone_facets(&self) -> &[Vec<i64>] {
        &self.cone_facets
    }

    /// Maximal faces of the boundary: the cone facets without 0.
    pub fn boundary_facets(&self) -> &[Vec<i64>] {
        &self.boundary_facets
    }
}

fn label_of(var: usize, n: usize) -> i64 {
    if var < n {
        var as i64 + 1
    } else if var < 2 * n {
        -((var - n) as i64 + 1)
    } else {
        0
    }
}

fn column_of_label(m: &IntMatrix, label: i64) -> Vec<i64> {
    if label > 0 {
        m.col(label as usize - 1)
    } else {
        m.col((-label) as usize - 1).iter().map(|&x| -x).collect()
    }
}

/// Triangulation of the polytope from the standard-order Groebner basis.
/// Every maximal face is checked to contain the origin, to have exactly
/// rank + 1 labels, and to span a unimodular simplex.
pub fn triangulation(rep: &RegularRep, order: &MonomialOrder) -> Result<Triangulation> {
    let gb = groebner_basis(rep, order)?;
    let leads = initial_ideal(&gb, order)?;
    let n = rep.size();
    let r = rep.rank();
    let vars = 2 * n + 1;
    assert!(vars <= 64, "ground set too large for bitmask enumeration");
    let lead_masks: Vec<u64> = leads
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let mut with_var: Vec<Vec<u64>> = vec![Vec::new(); vars];
    for &mask in &lead_masks {
        for v in 0..vars {
            if mask >> v & 1 == 1 {
                with_var[v].push(mask);
            }
        }
    }

    let mut maximal: Vec<u64> = Vec::new();
    // Depth-first over faces in increasing vertex order; a face is
    // maximal when no single vertex extends it.
    fn explore(
        face: u64,
        start: usize,
        vars: usize,
        with_var: &[Vec<u64>],
        maximal: &mut Vec<u64>,
    ) {
        let mut extendable = false;
        for v in 0..vars {
            if face >> v & 1 == 1 {
                continue;
            }
            let cand = face | 1 << v;
            if with_var[v].iter().all(|&m| m & cand != m) {
                extendable = true;
                if v >= start {
                    explore(cand, v + 1, vars, with_var, maximal);
                }
            }
        }
        if !extendable {
            maximal.push(face);
        }
    }
    explore(0, 0, vars, &with_var, &mut maximal);

    let mut cone_facets = Vec::with_capacity(maximal.len());
    for mask in maximal {
        if mask >> (2 * n) & 1 != 1 {
            return Err(Error::TheoremViolation(
                "maximal face misses the origin".into(),
            ));
        }
        let mut labels: Vec<i64> = (0..vars)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| label_of(v, n))
            .collect();
        labels.sort_unstable();
        if labels.len() != r + 1 {
            return Err(Error::TheoremViolation(format!(
                "maximal face {:?} has {} labels, expected {}",
                labels,
                labels.len(),
                r + 1
            )));
        }
        for &l in &labels {
            if l > 0 && labels.contains(&-l) {
                return Err(Error::TheoremViolation(format!(
                    "face {:?} contains an antipodal pair",
                    labels
                )));
            }
        }
        let spanning: Vec<Vec<i64>> = labels
            .iter()
            .filter(|&&l| l != 0)
            .map(|&l| column_of_label(rep.matrix(), l))
            .collect();
        let simplex = IntMatrix::from_rows(&spanning)?;
        if simplex.det()?.abs() != 1 {
            return Err(Error::TheoremViolation(format!(
                "face {:?} is not a unimodular simplex",
                labels
            )));
        }
        cone_facets.push(labels);
    }
    cone_facets.sort();
    let boundary_facets: Vec<Vec<i64>> = cone_facets
        .iter()
        .map(|f| f.iter().copied().filter(|&l| l != 0).collect())
        .collect();
    Ok(Triangulation { rank: r, ground_size: n, cone_facets, boundary_facets })
}

/// h-vector of the deconed boundary complex, via the face-count
/// transform. The complex must be pure of dimension rank - 1.
pub fn h_vector(t: &Triangulation) -> Result<Vec<i64>> {
    let d = t.rank;
    if t.boundary_facets.iter().any(|f| f.len() != d) {
        return Err(Error::TheoremViolation("boundary complex is not pure".into()));
    }
    let mut faces: BTreeSet<Vec<i64>> = BTreeSet::new();
    for facet in &t.boundary_facets {
        for mask in 0u64..(1 << facet.len()) {
            let sub: Vec<i64> = facet
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &l)| l)
                .collect();
            faces.insert(sub);
        }
    }
    let mut count_by_size = vec![0i128; d + 1];
    for f in &faces {
        count_by_size[f.len()] += 1;
    }
    // Sum of f_(i-1) (x-1)^(d-i); h_k is the coefficient of x^(d-k).
    let mut poly = vec![0i128; d + 1];
    for (i, &fi) in count_by_size.iter().enumerate() {
        let deg = d - i;
        for j in 0..=deg {
            let mut binom: i128 = 1;
            for q in 0..j {
                binom = binom * (deg - q) as i128 / (q as i128 + 1);
            }
            let sign = if (deg - j) % 2 == 0 { 1 } else { -1 };
            poly[j] += fi * binom * sign;
        }
    }
    (0..=d)
        .map(|k| i64::try_from(poly[d - k]).map_err(|_| Error::Overflow))
        .collect()
}

/// Membership of a binomial in the toric ideal it is written in: both
/// monomials must hit the same point of the column lattice, and when z
/// occurs the total degrees must also match (the homogeneous cone);
/// z-free binomials are checked against the doubled matrix alone.
pub fn verify_binomial(rep: &RegularRep, b: &Binomial) -> Result<bool> {
    let n = rep.size();
    if b.plus().len() != 2 * n + 1 {
        return Err(Error::InvalidArgument(
            "binomial has the wrong number of variables".into(),
        ));
    }
    let point = |side: &[u32]| -> Result<Vec<i64>> {
        let mut acc = vec![0i64; rep.rank()];
        for (v, &e) in side.iter().enumerate() {
            if e == 0 || v == 2 * n {
                continue;
            }
            let col = if v < n {
                rep.matrix().col(v)
            } else {
                rep.matrix().col(v - n).iter().map(|&x| -x).collect()
            };
            for (a, &c) in acc.iter_mut().zip(&col) {
                *a = a
                    .checked_add(c.checked_mul(e as i64).ok_or(Error::Overflow)?)
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(acc)
    };
    if point(b.plus())? != point(b.minus())? {
        return Ok(false);
    }
    let z = 2 * n;
    if b.plus()[z] > 0 || b.minus()[z] > 0 {
        let deg = |side: &[u32]| side.iter().map(|&e| e as u64).sum::<u64>();
        return Ok(deg(b.plus()) == deg(b.minus()));
    }
    Ok(true)
}
