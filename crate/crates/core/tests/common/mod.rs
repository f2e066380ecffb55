//! Brute-force oracles for the integration suites. Everything here trades
//! speed for being obviously correct: cofactor determinants, exhaustive box
//! scans, and pairwise S-polynomial reduction. None of it shares code with
//! the algorithms under test.
#![allow(dead_code)]

use gsep_core::toric::Binomial;
use gsep_core::{Graph, IntMatrix, MonomialOrder};
use itertools::Itertools;
use rand::Rng;
use std::collections::BTreeSet;

pub fn det_cofactor(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return rows[0][0] as i128;
    }
    let mut acc = 0i128;
    for j in 0..n {
        if rows[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = rows[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1i128 } else { -1 };
        acc += sign * rows[0][j] as i128 * det_cofactor(&minor);
    }
    acc
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Supporting inequalities a.x <= b of conv(vertices), one per facet, with
/// primitive integer normals. Assumes the hull is full-dimensional. Works
/// by brute force: every d-subset of vertices spans a candidate hyperplane
/// via the generalized cross product of difference vectors.
pub fn hull_inequalities(vertices: &[Vec<i64>]) -> Vec<(Vec<i64>, i64)> {
    let d = vertices[0].len();
    let mut found: BTreeSet<(Vec<i64>, i64)> = BTreeSet::new();
    for subset in (0..vertices.len()).combinations(d) {
        let p0 = &vertices[subset[0]];
        let diffs: Vec<Vec<i64>> = subset[1..]
            .iter()
            .map(|&i| {
                vertices[i]
                    .iter()
                    .zip(p0.iter())
                    .map(|(&x, &y)| x - y)
                    .collect()
            })
            .collect();
        let mut normal = vec![0i128; d];
        for j in 0..d {
            let minor: Vec<Vec<i64>> = diffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let m = det_cofactor(&minor);
            normal[j] = if j % 2 == 0 { m } else { -m };
        }
        if normal.iter().all(|&x| x == 0) {
            continue;
        }
        let g = normal.iter().fold(0i128, |acc, &x| gcd(acc, x));
        let a: Vec<i64> = normal.iter().map(|&x| (x / g) as i64).collect();
        let b = dot(&a, p0);
        let values: Vec<i128> = vertices.iter().map(|v| dot(&a, v)).collect();
        let max = *values.iter().max().unwrap();
        let min = *values.iter().min().unwrap();
        if max == b {
            found.insert((a.clone(), i64::try_from(b).unwrap()));
        }
        if min == b {
            let neg: Vec<i64> = a.iter().map(|&x| -x).collect();
            found.insert((neg, i64::try_from(-b).unwrap()));
        }
    }
    found.into_iter().collect()
}

pub fn in_dilate(ineqs: &[(Vec<i64>, i64)], k: i64, x: &[i64]) -> bool {
    ineqs
        .iter()
        .all(|(a, b)| dot(a, x) <= k as i128 * *b as i128)
}

/// Lattice points of the k-th dilate by scanning the dilated vertex box
/// against the hull inequalities.
pub fn lattice_points_oracle(vertices: &[Vec<i64>], k: i64) -> Vec<Vec<i64>> {
    let ineqs = hull_inequalities(vertices);
    let d = vertices[0].len();
    let mut out = Vec::new();
    let ranges: Vec<Vec<i64>> = (0..d)
        .map(|j| {
            let lo = vertices.iter().map(|v| v[j]).min().unwrap() * k;
            let hi = vertices.iter().map(|v| v[j]).max().unwrap() * k;
            (lo.min(hi)..=lo.max(hi)).collect()
        })
        .collect();
    for x in ranges.into_iter().multi_cartesian_product() {
        if in_dilate(&ineqs, k, &x) {
            out.push(x);
        }
    }
    out.sort();
    out
}

/// All integer vectors in [-bound, bound]^n, n = m.cols(), killed by m.
pub fn kernel_box_vectors(m: &IntMatrix, bound: i64) -> Vec<Vec<i64>> {
    let n = m.cols();
    let mut out = Vec::new();
    for v in (0..n)
        .map(|_| (-bound..=bound).collect::<Vec<i64>>())
        .multi_cartesian_product()
    {
        if m.mul_vec(&v).unwrap().iter().all(|&x| x == 0) {
            out.push(v);
        }
    }
    out.sort();
    out
}

/// All integer vectors in [-bound, bound]^n lying in the row space of m,
/// decided by a rank test on m with the candidate appended as a row.
pub fn rowspace_box_vectors(m: &IntMatrix, bound: i64) -> Vec<Vec<i64>> {
    let n = m.cols();
    let base_rank = m.rank().unwrap();
    let mut rows: Vec<Vec<i64>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut out = Vec::new();
    for v in (0..n)
        .map(|_| (-bound..=bound).collect::<Vec<i64>>())
        .multi_cartesian_product()
    {
        rows.push(v.clone());
        let stacked = IntMatrix::from_rows(&rows).unwrap();
        rows.pop();
        if stacked.rank().unwrap() == base_rank {
            out.push(v);
        }
    }
    out.sort();
    out
}

/// Nonzero vectors whose support contains no other listed nonzero
/// vector's support properly.
pub fn support_minimal(vecs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let supports: Vec<BTreeSet<usize>> = vecs
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|&(_, &x)| x != 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for (i, v) in vecs.iter().enumerate() {
        if supports[i].is_empty() {
            continue;
        }
        let dominated = supports.iter().enumerate().any(|(j, s)| {
            j != i && !s.is_empty() && s.is_subset(&supports[i]) && *s != supports[i]
        });
        if !dominated {
            out.push(v.clone());
        }
    }
    out.sort();
    out.dedup();
    out
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Reduce the binomial x^a - x^b by the generators until neither monomial
/// moves. Returns whether the remainder is zero. Each step swaps a
/// divisible monomial for a strictly smaller one, so this terminates.
fn reduces_to_zero(mut a: Vec<u32>, mut b: Vec<u32>, gens: &[(Vec<u32>, Vec<u32>)]) -> bool {
    loop {
        if a == b {
            return true;
        }
        let mut moved = false;
        for side in [&mut a, &mut b] {
            if let Some((lead, trail)) = gens.iter().find(|(l, _)| divides(l, side)) {
                for v in 0..side.len() {
                    side[v] = side[v] - lead[v] + trail[v];
                }
                moved = true;
                break;
            }
        }
        if !moved {
            return false;
        }
    }
}

/// Buchberger's criterion: every S-polynomial of the given binomials
/// reduces to zero. For a binomial generating set this certifies it is a
/// Groebner basis of the ideal it generates.
pub fn buchberger_certifies(gens: &[Binomial], order: &MonomialOrder) -> bool {
    let split: Vec<(Vec<u32>, Vec<u32>)> = gens
        .iter()
        .map(|g| {
            if g.lead(order) == g.plus() {
                (g.plus().to_vec(), g.minus().to_vec())
            } else {
                (g.minus().to_vec(), g.plus().to_vec())
            }
        })
        .collect();
    for i in 0..split.len() {
        for j in i + 1..split.len() {
            let (l1, t1) = &split[i];
            let (l2, t2) = &split[j];
            let lcm: Vec<u32> = l1.iter().zip(l2).map(|(&x, &y)| x.max(y)).collect();
            let s1: Vec<u32> = lcm.iter().zip(l1).zip(t1).map(|((&m, &l), &t)| m - l + t).collect();
            let s2: Vec<u32> = lcm.iter().zip(l2).zip(t2).map(|((&m, &l), &t)| m - l + t).collect();
            if !reduces_to_zero(s1, s2, &split) {
                return false;
            }
        }
    }
    true
}

/// Random simple connected graph: a random spanning tree on 2..=max_v
/// vertices plus random further edges, capped at max_e total.
pub fn random_connected_graph(rng: &mut impl Rng, max_v: usize, max_e: usize) -> Graph {
    let v = rng.gen_range(2..=max_v);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 1..v {
        edges.push((rng.gen_range(0..i), i));
    }
    let mut candidates: Vec<(usize, usize)> = (0..v)
        .tuple_combinations()
        .filter(|&(a, b)| !edges.contains(&(a, b)))
        .collect();
    let cap = max_e.min(v * (v - 1) / 2);
    while edges.len() < cap && !candidates.is_empty() && rng.gen_bool(0.7) {
        let pick = rng.gen_range(0..candidates.len());
        edges.push(candidates.swap_remove(pick));
    }
    Graph::simple(v, edges).unwrap()
}
