//! Exhaustive and dense reference computations for small instances.
//!
//! Nothing here shares code with the fast paths it checks: graph counts come
//! from enumerating every edge subset, spectral radii from a dense Jacobi
//! eigensolver, Catalan numbers from a lattice-path table.

use std::collections::{HashSet, VecDeque};

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::enumeration::BigCount;
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Budget {
    #[default]
    Standard,
    /// Raises every cap; for deliberate long runs only.
    Expensive,
}

impl Budget {
    pub fn max_mask_order(self) -> usize {
        match self {
            Budget::Standard => 6,
            Budget::Expensive => 7,
        }
    }

    pub fn max_dense_order(self) -> usize {
        match self {
            Budget::Standard => 12,
            Budget::Expensive => 64,
        }
    }

    pub fn max_catalan_index(self) -> usize {
        match self {
            Budget::Standard => 14,
            Budget::Expensive => 40,
        }
    }
}

fn check_cap(what: &'static str, value: usize, cap: usize) -> Result<()> {
    if value > cap {
        return Err(Error::CapExceeded { what, value, cap });
    }
    Ok(())
}

/// A labeled graph on `p` vertices encoded as a bit set over vertex pairs.
///
/// Bit `b` is the `b`-th pair in the order `(0,1), (0,2), …, (0,p-1), (1,2), …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphMask {
    pub p: usize,
    pub bits: u64,
}

/// Pairs `(i, j)`, `i < j`, in mask bit order.
pub fn pair_order(p: usize) -> Vec<(usize, usize)> {
    (0..p)
        .flat_map(|i| (i + 1..p).map(move |j| (i, j)))
        .collect()
}

impl GraphMask {
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let bits = self.bits;
        pair_order(self.p)
            .into_iter()
            .enumerate()
            .filter(move |(b, _)| bits >> b & 1 == 1)
            .map(|(_, e)| e)
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.p, self.edges()).expect("mask pairs are valid edges")
    }

    pub fn from_graph(g: &Graph) -> Result<Self> {
        let p = g.order();
        if pairs_len(p) > 64 {
            return Err(invalid(format!("order {p} does not fit a 64-bit mask")));
        }
        let bits = pair_order(p)
            .iter()
            .enumerate()
            .filter(|(_, &(i, j))| g.has_edge(i, j))
            .fold(0u64, |acc, (b, _)| acc | 1 << b);
        Ok(GraphMask { p, bits })
    }

    /// Mask of the graph with vertex `v` relabeled `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> GraphMask {
        let idx = |i: usize, j: usize| {
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            // offset of row a plus column within it
            a * (2 * self.p - a - 1) / 2 + (b - a - 1)
        };
        let bits = self
            .edges()
            .fold(0u64, |acc, (i, j)| acc | 1 << idx(perm[i], perm[j]));
        GraphMask { p: self.p, bits }
    }
}

fn pairs_len(p: usize) -> usize {
    p * p.saturating_sub(1) / 2
}

fn mask_count(p: usize) -> u64 {
    1u64 << pairs_len(p)
}

fn is_connected_mask(bits: u64, pairs: &[(usize, usize)], p: usize) -> bool {
    let mut parent: Vec<usize> = (0..p).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut merges = 0;
    let mut rest = bits;
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (i, j) = pairs[b];
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
            merges += 1;
        }
    }
    merges + 1 == p
}

fn degrees_of(bits: u64, pairs: &[(usize, usize)], p: usize) -> Vec<usize> {
    let mut deg = vec![0; p];
    let mut rest = bits;
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        deg[pairs[b].0] += 1;
        deg[pairs[b].1] += 1;
    }
    deg
}

/// Connected labeled graphs on `p ≥ 1` vertices, by exhaustion.
pub fn brute_count_connected(p: usize, budget: Budget) -> Result<BigCount> {
    if p == 0 {
        return Err(invalid("order must be at least 1"));
    }
    check_cap("mask order", p, budget.max_mask_order())?;
    let pairs = pair_order(p);
    let count = (0..mask_count(p))
        .into_par_iter()
        .filter(|&bits| is_connected_mask(bits, &pairs, p))
        .count();
    Ok(BigUint::from(count))
}

/// Labeled graphs on `p` vertices tallied by edge count, index = edges.
pub fn brute_edge_histogram(p: usize, budget: Budget) -> Result<Vec<BigCount>> {
    check_cap("mask order", p, budget.max_mask_order())?;
    let mut hist = vec![0u64; pairs_len(p) + 1];
    for bits in 0..mask_count(p) {
        hist[bits.count_ones() as usize] += 1;
    }
    Ok(hist.into_iter().map(BigUint::from).collect())
}

fn regular_masks(n: usize, r: usize, budget: Budget) -> Result<Vec<u64>> {
    check_cap("mask order", n, budget.max_mask_order())?;
    if !(n * r).is_multiple_of(2) {
        return Err(Error::Parity { n, degree: r });
    }
    let pairs = pair_order(n);
    let target_edges = (n * r / 2) as u32;
    Ok((0..mask_count(n))
        .into_par_iter()
        .filter(|&bits| {
            bits.count_ones() == target_edges && degrees_of(bits, &pairs, n).iter().all(|&d| d == r)
        })
        .collect())
}

/// Labeled `r`-regular graphs on `n` vertices, by exhaustion.
pub fn brute_count_regular(n: usize, r: usize, budget: Budget) -> Result<BigCount> {
    Ok(BigUint::from(regular_masks(n, r, budget)?.len()))
}

/// Isomorphism classes of `r`-regular graphs on `n` vertices: each labeled
/// graph is reduced to its smallest mask over all relabelings.
pub fn brute_count_unlabeled_regular(n: usize, r: usize, budget: Budget) -> Result<usize> {
    let masks = regular_masks(n, r, budget)?;
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let classes: HashSet<u64> = masks
        .into_iter()
        .map(|bits| {
            let m = GraphMask { p: n, bits };
            perms
                .iter()
                .map(|perm| m.relabel(perm).bits)
                .min()
                .unwrap_or(bits)
        })
        .collect();
    Ok(classes.len())
}

/// Number of distinct labeled graphs obtained by relabeling `mask`.
pub fn brute_orbit_size(mask: GraphMask, budget: Budget) -> Result<usize> {
    check_cap("mask order", mask.p, budget.max_mask_order())?;
    let orbit: HashSet<u64> = (0..mask.p)
        .permutations(mask.p)
        .map(|perm| mask.relabel(&perm).bits)
        .collect();
    Ok(orbit.len())
}

/// The `n`-th Catalan coefficient (`C_{n-1}` in the usual indexing) as the
/// number of Dyck paths with `n - 1` up-steps, by dynamic programming.
pub fn brute_catalan(n: usize, budget: Budget) -> Result<BigCount> {
    if n == 0 {
        return Err(invalid("Catalan index must be at least 1"));
    }
    check_cap("Catalan index", n, budget.max_catalan_index())?;
    let half = n - 1;
    // ways[h] = paths reaching height h after the current number of steps
    let mut ways = vec![BigUint::zero(); half + 2];
    ways[0] = BigUint::one();
    for _ in 0..2 * half {
        let mut next = vec![BigUint::zero(); half + 2];
        for h in 0..=half {
            if ways[h].is_zero() {
                continue;
            }
            if h < half {
                next[h + 1] += &ways[h];
            }
            if h > 0 {
                next[h - 1] += &ways[h];
            }
        }
        ways = next;
    }
    Ok(ways.swap_remove(0))
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
#[allow(clippy::needless_range_loop)]
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let total: f64 = a.iter().flatten().map(|v| v * v).sum();
        if off <= f64::EPSILON * f64::EPSILON * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Diagonal scaling `g` with `h_ij g_j = h_ji g_i` on every off-diagonal
/// pair, if one exists; then `G^{-1/2} H G^{1/2}` is symmetric.
#[allow(clippy::needless_range_loop)]
fn symmetrizing_scale(h: &[Vec<f64>]) -> Option<Vec<f64>> {
    let n = h.len();
    for i in 0..n {
        for j in 0..n {
            if i != j && (h[i][j] > 0.0) != (h[j][i] > 0.0) {
                return None;
            }
        }
    }
    let mut g = vec![0.0; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if g[root] != 0.0 {
            continue;
        }
        g[root] = 1.0;
        queue.push_back(root);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if j == i || h[i][j] == 0.0 {
                    continue;
                }
                let want = g[i] * h[j][i] / h[i][j];
                if g[j] == 0.0 {
                    g[j] = want;
                    queue.push_back(j);
                } else if (g[j] - want).abs() > 1e-12 * g[j].max(want) {
                    return None;
                }
            }
        }
    }
    Some(g)
}

const FALLBACK_POWER_STEPS: usize = 1_000_000;

/// Spectral radius of a small entrywise-nonnegative matrix.
///
/// Symmetrizes by diagonal similarity and takes the largest eigenvalue
/// modulus from Jacobi; without a consistent scaling it runs power iteration
/// on `H + I` for up to 10⁶ steps.
pub fn dense_spectral_radius(h: &[Vec<f64>], budget: Budget) -> Result<f64> {
    let n = h.len();
    if h.iter().any(|row| row.len() != n) {
        return Err(invalid("matrix is not square"));
    }
    check_cap("dense order", n, budget.max_dense_order())?;
    if h.iter().flatten().any(|&v| v.is_nan() || v < 0.0) {
        return Err(invalid("matrix has negative or NaN entries"));
    }
    if n == 0 {
        return Ok(0.0);
    }
    if let Some(g) = symmetrizing_scale(h) {
        let s: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| h[i][j] * (g[j] / g[i]).sqrt()).collect())
            .collect();
        let eig = jacobi_eigenvalues(s);
        return Ok(eig.iter().map(|v| v.abs()).fold(0.0, f64::max));
    }

    let mut x = vec![1.0; n];
    let mut estimate = 0.0;
    for _ in 0..FALLBACK_POWER_STEPS {
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] + (0..n).map(|j| h[i][j] * x[j]).sum::<f64>())
            .collect();
        estimate = y.iter().sum::<f64>() / x.iter().sum::<f64>() - 1.0;
        let scale = y.iter().copied().fold(0.0, f64::max);
        x = y.into_iter().map(|v| v / scale).collect();
    }
    Ok(estimate.max(0.0))
}
