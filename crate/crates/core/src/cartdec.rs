//! Partitions, Cartesian decompositions, and the natural decomposition of `Γ^Δ`.
//!
//! A set of partitions `{Γ_1, ..., Γ_k}` of `Ω` is a Cartesian decomposition when
//! every partition has at least two blocks and picking one block from each
//! partition always leaves exactly one common point. Blocks may be singletons.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::{parse_index_list, PermGroup, Permutation};

/// A partition of `0..ground_size`, each block sorted and blocks ordered by
/// their minimum element, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    ground_size: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn from_blocks(ground_size: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; ground_size];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::NotAPartition("empty block".into()));
            }
            for &point in block.iter() {
                if point >= ground_size {
                    return Err(Error::NotAPartition(format!(
                        "point {point} outside ground set of size {ground_size}"
                    )));
                }
                if std::mem::replace(&mut seen[point], true) {
                    return Err(Error::NotAPartition(format!("point {point} lies in two blocks")));
                }
            }
            block.sort_unstable();
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::NotAPartition(format!("point {missing} is not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { ground_size, blocks })
    }

    pub fn singletons(ground_size: usize) -> Self {
        Partition { ground_size, blocks: (0..ground_size).map(|x| vec![x]).collect() }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// `lookup[ω]` is the index of the block containing `ω`.
    pub fn block_lookup(&self) -> Vec<usize> {
        let mut lookup = vec![0; self.ground_size];
        for (i, block) in self.blocks.iter().enumerate() {
            for &x in block {
                lookup[x] = i;
            }
        }
        lookup
    }

    /// The partition `{b·x : b a block}`.
    pub fn image(&self, x: &Permutation) -> Result<Partition> {
        if x.degree() != self.ground_size {
            return Err(Error::DegreeMismatch { expected: self.ground_size, found: x.degree() });
        }
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut image: Vec<usize> = b.iter().map(|&p| x.apply(p)).collect();
                image.sort_unstable();
                image
            })
            .collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { ground_size: self.ground_size, blocks })
    }
}

/// A list of partitions of one ground set, kept in sorted order.
///
/// Construction does not check the Cartesian property; use
/// [`CartesianDecomposition::is_cartesian_decomposition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartesianDecomposition {
    ground_size: usize,
    partitions: Vec<Partition>,
    // lookup[i][ω]: block of partition i containing ω
    lookup: Vec<Vec<usize>>,
}

impl CartesianDecomposition {
    pub fn new(ground_size: usize, mut partitions: Vec<Partition>) -> Result<Self> {
        if let Some(bad) = partitions.iter().find(|p| p.ground_size != ground_size) {
            return Err(Error::GroundMismatch { expected: ground_size, found: bad.ground_size });
        }
        partitions.sort();
        let lookup = partitions.iter().map(Partition::block_lookup).collect();
        Ok(CartesianDecomposition { ground_size, partitions, lookup })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn num_partitions(&self) -> usize {
        self.partitions.len()
    }

    /// Block counts of the partitions, in order.
    pub fn shape(&self) -> Vec<usize> {
        self.partitions.iter().map(Partition::num_blocks).collect()
    }

    /// Every partition has at least two blocks and `ω -> (block indices)` is a
    /// bijection onto the product of the block-index ranges.
    ///
    /// Injectivity plus `∏|Γ_i| = |Ω|` is equivalent to every choice of blocks
    /// meeting in exactly one point.
    pub fn is_cartesian_decomposition(&self) -> bool {
        if self.partitions.is_empty() || self.partitions.iter().any(|p| p.num_blocks() < 2) {
            return false;
        }
        let mut product: usize = 1;
        for p in &self.partitions {
            product = match product.checked_mul(p.num_blocks()) {
                Some(v) if v <= self.ground_size => v,
                _ => return false,
            };
        }
        if product != self.ground_size {
            return false;
        }
        let mut hit = vec![false; self.ground_size];
        for point in 0..self.ground_size {
            let index = self.lookup.iter().zip(&self.partitions).fold(0, |acc, (lookup, p)| {
                acc * p.num_blocks() + lookup[point]
            });
            if std::mem::replace(&mut hit[index], true) {
                return false;
            }
        }
        true
    }

    pub fn is_homogeneous(&self) -> Result<bool> {
        if !self.is_cartesian_decomposition() {
            return Err(Error::NotACartesianDecomposition);
        }
        let first = self.partitions[0].num_blocks();
        Ok(self.partitions.iter().all(|p| p.num_blocks() == first))
    }

    pub fn is_trivial(&self) -> bool {
        self.partitions.len() == 1
    }

    /// The tuple of block indices `(γ_1, ..., γ_k)` of a point.
    pub fn encode_point(&self, point: usize) -> Result<Vec<usize>> {
        if point >= self.ground_size {
            return Err(Error::PointOutOfRange { point, degree: self.ground_size });
        }
        Ok(self.lookup.iter().map(|l| l[point]).collect())
    }

    /// The unique point in the intersection of the chosen blocks.
    pub fn decode_point(&self, choice: &[usize]) -> Result<usize> {
        if choice.len() != self.partitions.len() {
            return Err(Error::SizeMismatch { expected: self.partitions.len(), found: choice.len() });
        }
        if self.partitions.is_empty() {
            return Err(Error::NotACartesianDecomposition);
        }
        for (p, &c) in self.partitions.iter().zip(choice) {
            if c >= p.num_blocks() {
                return Err(Error::IndexOutOfRange { index: c, len: p.num_blocks() });
            }
        }
        // scan the smallest chosen block
        let (smallest, _) = self
            .partitions
            .iter()
            .zip(choice)
            .enumerate()
            .min_by_key(|(_, (p, &c))| p.blocks[c].len())
            .expect("partitions nonempty");
        let mut found = self.partitions[smallest].blocks[choice[smallest]]
            .iter()
            .copied()
            .filter(|&x| self.lookup.iter().zip(choice).all(|(l, &c)| l[x] == c));
        match (found.next(), found.count()) {
            (None, _) => Err(Error::EmptyIntersection),
            (Some(x), 0) => Ok(x),
            (Some(_), rest) => Err(Error::NonSingletonIntersection(rest + 1)),
        }
    }

    /// Index of a partition in this decomposition.
    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.partitions.binary_search(p).ok()
    }

    /// The permutation `i -> j` of partition indices induced by `x`, where
    /// `Γ_i·x = Γ_j`; `None` if some partition is moved outside the decomposition.
    pub fn induced_action(&self, x: &Permutation) -> Result<Option<Permutation>> {
        let mut images = Vec::with_capacity(self.partitions.len());
        for p in &self.partitions {
            match self.position(&p.image(x)?) {
                Some(j) => images.push(j),
                None => return Ok(None),
            }
        }
        // repeated partitions make `position` non-injective
        Ok(Permutation::from_images(images).ok())
    }

    /// Checks each generator and returns the induced permutation of partition
    /// indices per generator, or `None` when some generator does not preserve
    /// the decomposition. Checking generators suffices.
    pub fn preserved_by(&self, group: &PermGroup) -> Result<Option<Vec<Permutation>>> {
        if group.degree() != self.ground_size {
            return Err(Error::DegreeMismatch { expected: self.ground_size, found: group.degree() });
        }
        let mut induced = Vec::with_capacity(group.generators().len());
        for g in group.generators() {
            match self.induced_action(g)? {
                Some(h) => induced.push(h),
                None => return Ok(None),
            }
        }
        Ok(Some(induced))
    }
}

/// Mixed-radix indexing of tuples in `0..radix` of length `len`, coordinate 0
/// most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MixedRadix {
    radix: usize,
    len: usize,
}

impl MixedRadix {
    pub fn new(radix: usize, len: usize) -> Self {
        MixedRadix { radix, len }
    }

    pub fn radix(&self) -> usize {
        self.radix
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `radix^len`, or `None` on overflow.
    pub fn checked_size(&self) -> Option<usize> {
        self.radix.checked_pow(self.len as u32)
    }

    pub fn size(&self) -> usize {
        self.checked_size().expect("tuple space fits in usize")
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.len);
        tuple.iter().fold(0, |acc, &x| {
            debug_assert!(x < self.radix);
            acc * self.radix + x
        })
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.len];
        for slot in tuple.iter_mut().rev() {
            *slot = index % self.radix;
            index /= self.radix;
        }
        tuple
    }
}

/// The decomposition `{Γ_δ}` of `Func(Δ, Γ)`, where the `γ`-block of `Γ_δ` is
/// `{ψ : ψ(δ) = γ}`, together with the indexing of `Func(Δ, Γ)` it refers to.
///
/// Partition `δ` of the result is `Γ_δ`, and its block `γ` is the `γ`-part.
pub fn natural_cartesian_decomposition(
    gamma_size: usize,
    delta_size: usize,
) -> Result<(CartesianDecomposition, MixedRadix)> {
    if gamma_size < 2 {
        return Err(Error::BadDimensions(format!("|Γ| = {gamma_size}, need at least 2")));
    }
    if delta_size < 1 {
        return Err(Error::BadDimensions("|Δ| must be at least 1".into()));
    }
    let indexing = MixedRadix::new(gamma_size, delta_size);
    let size = indexing
        .checked_size()
        .ok_or_else(|| Error::BadDimensions(format!("{gamma_size}^{delta_size} points overflow")))?;
    let partitions = (0..delta_size)
        .map(|delta| {
            let mut blocks = vec![Vec::with_capacity(size / gamma_size); gamma_size];
            for point in 0..size {
                blocks[indexing.decode(point)[delta]].push(point);
            }
            Partition { ground_size: size, blocks }
        })
        .collect::<Vec<_>>();
    let eps = CartesianDecomposition::new(size, partitions.clone())?;
    // the sorted order coincides with coordinate order
    debug_assert_eq!(eps.partitions(), &partitions[..]);
    Ok((eps, indexing))
}

/// Parses a decomposition file: one line per block (comma-separated point
/// indices), partitions separated by blank lines. The ground set is inferred
/// as `0..=max point`.
pub fn parse_decomposition(text: &str) -> Result<CartesianDecomposition> {
    let mut groups: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !current.is_empty() {
                groups.push(std::mem::take(&mut current));
            }
            continue;
        }
        let block = parse_index_list(line).map_err(|m| Error::parse(no + 1, m))?;
        current.push(block);
    }
    if !current.is_empty() {
        groups.push(current);
    }
    if groups.is_empty() {
        return Err(Error::parse(1, "no partitions found"));
    }
    let ground_size = groups.iter().flatten().flatten().copied().max().map_or(0, |m| m + 1);
    let partitions =
        groups.into_iter().map(|blocks| Partition::from_blocks(ground_size, blocks)).collect::<Result<_>>()?;
    CartesianDecomposition::new(ground_size, partitions)
}

pub fn format_decomposition(eps: &CartesianDecomposition) -> String {
    let mut out = String::new();
    for (i, p) in eps.partitions().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for block in p.blocks() {
            let line: Vec<String> = block.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", line.join(",")).expect("writing to a String");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::from_blocks(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    // rows and columns of a 2x3 grid, cell (r, c) = 3r + c
    fn grid_2x3() -> CartesianDecomposition {
        let rows = part(6, &[&[0, 1, 2], &[3, 4, 5]]);
        let cols = part(6, &[&[0, 3], &[1, 4], &[2, 5]]);
        CartesianDecomposition::new(6, vec![rows, cols]).unwrap()
    }

    #[test]
    fn partition_construction() {
        let p = part(4, &[&[3, 2], &[1, 0]]);
        assert_eq!(p.blocks(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(part(3, &[&[0], &[1], &[2]]), Partition::singletons(3));
        for bad in [vec![vec![0, 1], vec![1, 2]], vec![vec![0, 1]], vec![vec![0, 1, 2], vec![]], vec![vec![0, 1, 3], vec![2]]] {
            assert!(matches!(Partition::from_blocks(3, bad), Err(Error::NotAPartition(_))));
        }
    }

    #[test]
    fn decomposition_predicate() {
        let single = CartesianDecomposition::new(5, vec![Partition::singletons(5)]).unwrap();
        assert!(single.is_cartesian_decomposition());
        assert!(single.is_trivial());
        assert!(single.is_homogeneous().unwrap());

        let halves = part(4, &[&[0, 1], &[2, 3]]);
        let twice = CartesianDecomposition::new(4, vec![halves.clone(), halves]).unwrap();
        assert!(!twice.is_cartesian_decomposition());
        assert_eq!(twice.is_homogeneous(), Err(Error::NotACartesianDecomposition));

        let grid = grid_2x3();
        assert!(grid.is_cartesian_decomposition());
        assert!(!grid.is_homogeneous().unwrap());
        assert!(!grid.is_trivial());

        let one_block = CartesianDecomposition::new(1, vec![Partition::singletons(1)]).unwrap();
        assert!(!one_block.is_cartesian_decomposition());
    }

    #[test]
    fn ground_sets_must_match() {
        let err = CartesianDecomposition::new(4, vec![Partition::singletons(3)]).unwrap_err();
        assert_eq!(err, Error::GroundMismatch { expected: 4, found: 3 });
    }

    #[test]
    fn encode_decode_grid() {
        let grid = grid_2x3();
        assert_eq!(grid.encode_point(5).unwrap(), vec![1, 2]);
        assert_eq!(grid.decode_point(&[1, 2]).unwrap(), 5);
        for x in 0..6 {
            assert_eq!(grid.decode_point(&grid.encode_point(x).unwrap()).unwrap(), x);
        }
        assert!(matches!(grid.decode_point(&[2, 0]), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(grid.decode_point(&[0]), Err(Error::SizeMismatch { .. })));
        let trivial = CartesianDecomposition::new(4, vec![Partition::singletons(4)]).unwrap();
        assert_eq!(trivial.encode_point(3).unwrap(), vec![3]);
    }

    #[test]
    fn decode_reports_bad_intersections() {
        let a = part(4, &[&[0, 1], &[2, 3]]);
        let twice = CartesianDecomposition::new(4, vec![a.clone(), a]).unwrap();
        assert_eq!(twice.decode_point(&[0, 0]), Err(Error::NonSingletonIntersection(2)));
        assert_eq!(twice.decode_point(&[0, 1]), Err(Error::EmptyIntersection));
    }

    #[test]
    fn natural_decomposition_shapes() {
        let (eps, idx) = natural_cartesian_decomposition(2, 1).unwrap();
        assert_eq!(eps.partitions(), &[Partition::singletons(2)]);
        assert!(eps.is_trivial());
        assert_eq!(idx.size(), 2);

        let (eps, _) = natural_cartesian_decomposition(3, 2).unwrap();
        assert_eq!(eps.shape(), vec![3, 3]);
        assert!(eps.partitions().iter().all(|p| p.blocks().iter().all(|b| b.len() == 3)));
        assert!(eps.is_cartesian_decomposition());
        assert!(eps.is_homogeneous().unwrap());
        // Γ_0 splits by the most significant digit
        assert_eq!(eps.partitions()[0].blocks()[1], vec![3, 4, 5]);
        assert_eq!(eps.partitions()[1].blocks()[1], vec![1, 4, 7]);

        assert!(matches!(natural_cartesian_decomposition(1, 3), Err(Error::BadDimensions(_))));
        assert!(matches!(natural_cartesian_decomposition(2, 0), Err(Error::BadDimensions(_))));
    }

    #[test]
    fn mixed_radix_round_trip() {
        let idx = MixedRadix::new(3, 4);
        for i in 0..idx.size() {
            assert_eq!(idx.encode(&idx.decode(i)), i);
        }
        assert_eq!(idx.decode(5), vec![0, 0, 1, 2]);
    }

    #[test]
    fn partition_images() {
        let p = part(4, &[&[0, 1], &[2, 3]]);
        assert_eq!(p.image(&Permutation::identity(4)).unwrap(), p);
        let swap_blocks = Permutation::from_images(vec![2, 3, 0, 1]).unwrap();
        assert_eq!(p.image(&swap_blocks).unwrap(), p);
        let mix = Permutation::from_images(vec![0, 2, 1, 3]).unwrap();
        assert_eq!(p.image(&mix).unwrap(), part(4, &[&[0, 2], &[1, 3]]));
        assert!(matches!(p.image(&Permutation::identity(3)), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn preservation() {
        let (eps, _) = natural_cartesian_decomposition(2, 2).unwrap();
        let induced = eps.preserved_by(&PermGroup::trivial(4)).unwrap().unwrap();
        assert!(induced.iter().all(Permutation::is_identity));
        assert_eq!(eps.preserved_by(&PermGroup::symmetric(4)).unwrap(), None);
        assert!(eps.preserved_by(&PermGroup::trivial(5)).is_err());
    }

    #[test]
    fn file_format_round_trip() {
        let text = "0,1,2,3\n4,5,6,7\n\n0,1,4,5\n2,3,6,7\n\n0,2,4,6\n1,3,5,7\n";
        let eps = parse_decomposition(text).unwrap();
        assert_eq!(eps.ground_size(), 8);
        assert_eq!(eps.num_partitions(), 3);
        assert_eq!(format_decomposition(&eps), text);
        assert_eq!(parse_decomposition(&format_decomposition(&eps)).unwrap(), eps);
        assert!(parse_decomposition("0,1\n1,2\n").is_err());
        assert!(parse_decomposition("\n\n").is_err());
        assert!(parse_decomposition("0,x\n").is_err());
    }
}
