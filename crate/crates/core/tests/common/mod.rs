//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;

use cartwreath::{CayleyTable, Partition, Permutation};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn table(name: &str) -> CayleyTable {
    CayleyTable::parse(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Tries every choice of one block per partition and intersects them as sets.
pub fn brute_force_is_cartesian(partitions: &[Vec<Vec<usize>>]) -> bool {
    if partitions.is_empty() || partitions.iter().any(|p| p.len() < 2) {
        return false;
    }
    let mut choice = vec![0usize; partitions.len()];
    loop {
        let mut meet: HashSet<usize> = partitions[0][choice[0]].iter().copied().collect();
        for (p, &c) in partitions.iter().zip(&choice).skip(1) {
            let block: HashSet<usize> = p[c].iter().copied().collect();
            meet.retain(|x| block.contains(x));
        }
        if meet.len() != 1 {
            return false;
        }
        let mut i = partitions.len();
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < partitions[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Random partition of `0..n` into at most `max_blocks` nonempty blocks.
pub fn random_blocks(rng: &mut impl Rng, n: usize, max_blocks: usize) -> Vec<Vec<usize>> {
    let mut blocks = vec![Vec::new(); max_blocks];
    for x in 0..n {
        blocks[rng.gen_range(0..max_blocks)].push(x);
    }
    blocks.retain(|b| !b.is_empty());
    blocks
}

/// Coordinate partitions of a product `r_0 × … × r_{m-1}` relabelled by a
/// random point permutation: always a Cartesian decomposition.
pub fn scrambled_product(rng: &mut impl Rng, radices: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let n: usize = radices.iter().product();
    let mut relabel: Vec<usize> = (0..n).collect();
    relabel.shuffle(rng);
    let mut out = Vec::new();
    let mut stride = 1;
    for &r in radices.iter().rev() {
        let mut blocks = vec![Vec::new(); r];
        for x in 0..n {
            blocks[(x / stride) % r].push(relabel[x]);
        }
        out.push(blocks);
        stride *= r;
    }
    out
}

/// A mix of genuine decompositions, perturbed ones and random partition sets
/// on at most 16 points.
pub fn random_partition_set(rng: &mut impl Rng) -> (usize, Vec<Vec<Vec<usize>>>) {
    let shapes: [&[usize]; 8] = [&[2, 2], &[2, 3], &[4, 4], &[2, 2, 2], &[2, 2, 2, 2], &[3, 5], &[2, 8], &[3, 3]];
    let shape = shapes[rng.gen_range(0..shapes.len())];
    let n: usize = shape.iter().product();
    let mut parts = scrambled_product(rng, shape);
    match rng.gen_range(0..4) {
        0 => {}
        1 => {
            // move one point to another block
            let i = rng.gen_range(0..parts.len());
            let from = rng.gen_range(0..parts[i].len());
            let to = (from + 1) % parts[i].len();
            if parts[i][from].len() > 1 {
                let x = parts[i][from].pop().unwrap();
                parts[i][to].push(x);
            }
        }
        2 => {
            let i = rng.gen_range(0..parts.len());
            parts[i] = random_blocks(rng, n, shape[i]);
        }
        _ => {
            let m = rng.gen_range(1..4);
            parts = (0..m)
                .map(|_| {
                    let b = rng.gen_range(2..5);
                    random_blocks(rng, n, b)
                })
                .collect();
        }
    }
    (n, parts)
}

pub fn partitions(n: usize, parts: &[Vec<Vec<usize>>]) -> Vec<Partition> {
    parts.iter().map(|b| Partition::from_blocks(n, b.clone()).unwrap()).collect()
}

/// Product action written from `δ(φg) = (δh⁻¹φ)(δh⁻¹f)`: output coordinate
/// `δ` reads input coordinate `δh⁻¹`.
pub fn product_action_oracle(base: &[Vec<usize>], top: &[usize], phi: &[usize]) -> Vec<usize> {
    (0..phi.len())
        .map(|delta| {
            let pre = top.iter().position(|&t| t == delta).unwrap();
            base[pre][phi[pre]]
        })
        .collect()
}

/// `x ↦ q[p[x]]`.
pub fn then_oracle(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&x| q[x]).collect()
}

pub fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}
