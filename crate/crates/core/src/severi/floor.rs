//! Plane Severi degrees by enumerating weighted floor diagrams.
//!
//! A diagram of degree `d` is a multigraph on floors `1..=d` with weighted
//! edges `i -> j` (`i < j`) whose divergence (outgoing minus incoming weight)
//! is at most 1 at every floor; disconnected diagrams are allowed. It
//! contributes the product of squared edge weights times its number of
//! markings: linear orders of the floors, one midpoint per edge and
//! `1 - div(j)` extra points above floor `j`, counted up to swapping
//! interchangeable points.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::SeveriError;
use crate::series::factorial;

pub const FLOOR_MAX_DEGREE: u32 = 6;
pub const FLOOR_MAX_DELTA: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Edge {
    from: usize,
    to: usize,
    weight: u32,
}

pub fn floor_diagram_oracle(d: u32, delta: u32) -> Result<BigInt, SeveriError> {
    if d == 0 || d > FLOOR_MAX_DEGREE || delta > FLOOR_MAX_DELTA {
        return Err(SeveriError::OracleRange {
            supported: format!("1 <= d <= {FLOOR_MAX_DEGREE}, delta <= {FLOOR_MAX_DELTA}"),
            requested: format!("d = {d}, delta = {delta}"),
        });
    }
    let d = d as usize;
    let pairs = d * (d - 1) / 2;
    let Some(edge_count) = pairs.checked_sub(delta as usize) else {
        return Ok(BigInt::zero());
    };
    let mut total = BigInt::zero();
    let mut edges = Vec::new();
    let mut inflow = vec![0u32; d + 1];
    enumerate(d, 1, edge_count, &mut inflow, &mut edges, &mut |diagram| {
        total += contribution(d, diagram);
    });
    Ok(total)
}

/// Chooses the outgoing edges of floor `v`, then moves on to `v + 1`.
fn enumerate(
    d: usize,
    v: usize,
    remaining: usize,
    inflow: &mut Vec<u32>,
    edges: &mut Vec<Edge>,
    emit: &mut dyn FnMut(&[Edge]),
) {
    if v == d {
        if remaining == 0 {
            emit(edges);
        }
        return;
    }
    let budget = 1 + inflow[v];
    let options: Vec<Edge> =
        (v + 1..=d).flat_map(|to| (1..=budget).map(move |weight| Edge { from: v, to, weight })).collect();
    choose_out(d, v, remaining, budget, &options, 0, inflow, edges, emit);
}

#[allow(clippy::too_many_arguments)]
fn choose_out(
    d: usize,
    v: usize,
    remaining: usize,
    budget: u32,
    options: &[Edge],
    start: usize,
    inflow: &mut Vec<u32>,
    edges: &mut Vec<Edge>,
    emit: &mut dyn FnMut(&[Edge]),
) {
    enumerate(d, v + 1, remaining, inflow, edges, emit);
    if remaining == 0 {
        return;
    }
    for (i, e) in options.iter().enumerate().skip(start) {
        if e.weight > budget {
            continue;
        }
        edges.push(*e);
        inflow[e.to] += e.weight;
        // `i` again: parallel edges with equal weight are allowed
        choose_out(d, v, remaining - 1, budget - e.weight, options, i, inflow, edges, emit);
        inflow[e.to] -= e.weight;
        edges.pop();
    }
}

fn contribution(d: usize, edges: &[Edge]) -> BigInt {
    let mut div = vec![0i64; d + 1];
    let mut multiplicity = BigInt::one();
    for e in edges {
        div[e.from] += e.weight as i64;
        div[e.to] -= e.weight as i64;
        multiplicity *= e.weight * e.weight;
    }
    // Extra points grouped by the gaps they may occupy; gap g lies just above floor g.
    let mut groups: HashMap<(usize, usize), usize> = HashMap::new();
    let mut aut = BigInt::one();
    for (j, dv) in div.iter().enumerate().skip(1) {
        let leaves = (1 - dv) as usize;
        *groups.entry((j, d)).or_insert(0) += leaves;
        aut *= factorial(leaves);
    }
    let mut parallel: HashMap<Edge, usize> = HashMap::new();
    for e in edges {
        *groups.entry((e.from, e.to - 1)).or_insert(0) += 1;
        *parallel.entry(*e).or_insert(0) += 1;
    }
    for &m in parallel.values() {
        aut *= factorial(m);
    }
    let mut intervals: Vec<((usize, usize), usize)> = groups.into_iter().filter(|(_, n)| *n > 0).collect();
    intervals.sort();
    let extensions = count_placements(d, &intervals);
    multiplicity * extensions / aut
}

/// Number of linear orders of the floors `1..=d` and labeled points, where a
/// point of interval `(lo, hi)` must lie above floor `lo` and below floor `hi + 1`.
fn count_placements(d: usize, intervals: &[((usize, usize), usize)]) -> BigInt {
    let mut memo = HashMap::new();
    let remaining: Vec<usize> = intervals.iter().map(|(_, n)| *n).collect();
    place(1, d, intervals, remaining, &mut memo)
}

fn place(
    gap: usize,
    d: usize,
    intervals: &[((usize, usize), usize)],
    remaining: Vec<usize>,
    memo: &mut HashMap<(usize, Vec<usize>), BigInt>,
) -> BigInt {
    if gap > d {
        return if remaining.iter().all(|&r| r == 0) { BigInt::one() } else { BigInt::zero() };
    }
    if let Some(v) = memo.get(&(gap, remaining.clone())) {
        return v.clone();
    }
    // Each available group contributes between `forced` and `remaining` points.
    let ranges: Vec<(usize, usize)> = intervals
        .iter()
        .zip(&remaining)
        .map(|(&((lo, hi), _), &r)| {
            if lo > gap || r == 0 {
                (0, 0)
            } else if hi == gap {
                (r, r)
            } else {
                (0, r)
            }
        })
        .collect();
    let mut total = BigInt::zero();
    let mut choice: Vec<usize> = ranges.iter().map(|r| r.0).collect();
    loop {
        let placed: usize = choice.iter().sum();
        let mut ways = factorial(placed);
        for (c, r) in choice.iter().zip(&remaining) {
            ways *= binomial(BigInt::from(*r), BigInt::from(*c));
        }
        let rest: Vec<usize> = remaining.iter().zip(&choice).map(|(r, c)| r - c).collect();
        total += ways * place(gap + 1, d, intervals, rest, memo);
        // advance the mixed-radix counter
        let mut i = 0;
        while i < choice.len() {
            if choice[i] < ranges[i].1 {
                choice[i] += 1;
                break;
            }
            choice[i] = ranges[i].0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
    }
    memo.insert((gap, remaining), total.clone());
    total
}
