//! Permutations of `0..n`, groups generated by them, and the orbit machinery
//! needed for transitivity and regularity.
//!
//! Everything acts on the right: the image of point `x` under `p` is
//! `p.apply(x)`, and `p.then(&q)` first applies `p`, then `q`.

use std::borrow::Cow;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use crate::cartdec::Partition;
use crate::diagonal::CayleyTable;
use crate::error::{Error, Result};

/// Default budget on the number of elements a closure may produce.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

/// A bijection of `0..degree`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates an image array. `images[p]` is the image of point `p`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::NotABijection("empty image list".into()));
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for (point, &image) in images.iter().enumerate() {
            if image >= n {
                return Err(Error::NotABijection(format!(
                    "image {image} of point {point} is outside 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[image], true) {
                return Err(Error::NotABijection(format!("value {image} appears twice")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from an image array already known to be a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    /// Builds a permutation from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &point in cycle {
                if point >= degree {
                    return Err(Error::PointOutOfRange { point, degree });
                }
                if std::mem::replace(&mut touched[point], true) {
                    return Err(Error::NotABijection(format!(
                        "point {point} appears in more than one cycle position"
                    )));
                }
            }
            for (i, &point) in cycle.iter().enumerate() {
                images[point] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    /// Image of a point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `p` followed by `q`: `x -> q[p[x]]`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: q.degree() });
        }
        Ok(self.then(q))
    }

    /// Unchecked composition; panics on degree mismatch.
    pub fn then(&self, q: &Permutation) -> Permutation {
        assert_eq!(self.degree(), q.degree(), "composing permutations of different degree");
        Permutation { images: self.images.iter().map(|&x| q.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    /// Smallest `m > 0` with `self^m = 1`.
    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut order = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.images, f)
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// The canonical generators `{(0 1), (0 1 ... m-1)}` of the symmetric group on `m` points.
///
/// Duplicates are dropped, so `m = 2` yields one generator and `m = 1` yields the identity.
pub fn symmetric_generators(m: usize) -> Vec<Permutation> {
    assert!(m > 0, "symmetric group on zero points");
    if m == 1 {
        return vec![Permutation::identity(1)];
    }
    let swap = Permutation::from_cycles(m, &[vec![0, 1]]).expect("valid transposition");
    let long = Permutation::from_cycles(m, &[(0..m).collect()]).expect("valid cycle");
    if swap == long {
        vec![swap]
    } else {
        vec![swap, long]
    }
}

/// A permutation group given by generators, optionally with its full element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    // sorted, so membership is a binary search
    elements: Option<Vec<Permutation>>,
    element_cap: usize,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { expected: degree, found: bad.degree() });
        }
        Ok(PermGroup { degree, generators, elements: None, element_cap: DEFAULT_ELEMENT_CAP })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, vec![Permutation::identity(degree)]).expect("identity generator")
    }

    /// Symmetric group on `degree` points given by its canonical two generators.
    pub fn symmetric(degree: usize) -> Self {
        PermGroup::new(degree, symmetric_generators(degree)).expect("canonical generators")
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.element_cap = cap;
        if self.elements.as_ref().is_some_and(|e| e.len() > cap) {
            self.elements = None;
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn element_cap(&self) -> usize {
        self.element_cap
    }

    /// The element list, when it has been enumerated.
    pub fn elements(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    /// Breadth-first closure over the Cayley graph of the generators.
    ///
    /// Returns a copy of the group with its element list populated.
    pub fn closure(&self) -> Result<PermGroup> {
        let elements = self.enumerate()?.into_owned();
        Ok(PermGroup { elements: Some(elements), ..self.clone() })
    }

    fn enumerate(&self) -> Result<Cow<'_, [Permutation]>> {
        if let Some(elements) = &self.elements {
            return Ok(Cow::Borrowed(elements));
        }
        let identity = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(element) = queue.pop_front() {
            for generator in &self.generators {
                let next = element.then(generator);
                if !seen.contains(&next) {
                    if seen.len() >= self.element_cap {
                        return Err(Error::CapExceeded { cap: self.element_cap, partial: seen.len() });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut elements: Vec<_> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(Cow::Owned(elements))
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.enumerate()?.len())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Ok(false);
        }
        Ok(self.enumerate()?.binary_search(p).is_ok())
    }

    /// Orbits of the generated group, as a partition of the point set.
    pub fn orbits(&self) -> Partition {
        let mut orbit_of = vec![usize::MAX; self.degree];
        let mut blocks = Vec::new();
        for start in 0..self.degree {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let mut block = vec![start];
            orbit_of[start] = id;
            let mut i = 0;
            while i < block.len() {
                let x = block[i];
                for g in &self.generators {
                    let y = g.apply(x);
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = id;
                        block.push(y);
                    }
                }
                i += 1;
            }
            blocks.push(block);
        }
        Partition::from_blocks(self.degree, blocks).expect("orbits partition the point set")
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().num_blocks() == 1
    }

    /// All elements fixing `point`, returned as an enumerated group.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange { point, degree: self.degree });
        }
        let fixing: Vec<Permutation> =
            self.enumerate()?.iter().filter(|g| g.apply(point) == point).cloned().collect();
        let generators: Vec<Permutation> = fixing.iter().filter(|g| !g.is_identity()).cloned().collect();
        let generators =
            if generators.is_empty() { vec![Permutation::identity(self.degree)] } else { generators };
        Ok(PermGroup {
            degree: self.degree,
            generators,
            elements: Some(fixing),
            element_cap: self.element_cap,
        })
    }

    /// Transitive with trivial point stabilizers.
    pub fn is_regular(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Ok(false);
        }
        // transitive, so every stabilizer is conjugate to that of point 0
        Ok(self.point_stabilizer(0)?.order()? == 1)
    }

    /// Image of every element under a map defined on generators, by walking the Cayley graph.
    ///
    /// Returns `None` if the map is not well defined (two words for one element
    /// land on different images).
    pub(crate) fn extend_to_elements<T, F>(
        &self,
        images: &[T],
        identity: T,
        mut compose: F,
    ) -> Result<Option<HashMap<Permutation, T>>>
    where
        T: Clone + PartialEq,
        F: FnMut(&T, &T) -> T,
    {
        assert_eq!(images.len(), self.generators.len());
        let mut map: HashMap<Permutation, T> = HashMap::new();
        let mut queue = VecDeque::new();
        let id = Permutation::identity(self.degree);
        map.insert(id.clone(), identity);
        queue.push_back(id);
        while let Some(element) = queue.pop_front() {
            let image = map[&element].clone();
            for (g, g_image) in self.generators.iter().zip(images) {
                let next = element.then(g);
                let next_image = compose(&image, g_image);
                match map.get(&next) {
                    Some(existing) if *existing != next_image => return Ok(None),
                    Some(_) => {}
                    None => {
                        if map.len() >= self.element_cap {
                            return Err(Error::CapExceeded { cap: self.element_cap, partial: map.len() });
                        }
                        map.insert(next.clone(), next_image);
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(Some(map))
    }
}

/// The right-regular action of an abstract group on its own elements, `x -> x*g`.
pub fn right_regular_representation(table: &CayleyTable) -> PermGroup {
    let n = table.order();
    let generators = table.generating_set().into_iter().map(|g| right_multiplication(table, g)).collect();
    PermGroup::new(n, generators).expect("generators share the table order")
}

/// The permutation `x -> x*g` of the elements of `table`.
pub fn right_multiplication(table: &CayleyTable, g: usize) -> Permutation {
    Permutation::from_images_unchecked((0..table.order()).map(|x| table.mul(x, g)).collect())
}

/// Parses a group-by-generators file: the degree on the first line, then one
/// permutation per line in image notation (space- or comma-separated).
pub fn parse_generator_file(text: &str) -> Result<PermGroup> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (first_no, first) = lines.next().ok_or_else(|| Error::parse(1, "missing degree line"))?;
    let degree: usize =
        first.trim().parse().map_err(|_| Error::parse(first_no + 1, "degree must be an integer"))?;
    let mut generators = Vec::new();
    for (no, line) in lines {
        let images = parse_index_list(line).map_err(|m| Error::parse(no + 1, m))?;
        if images.len() != degree {
            return Err(Error::parse(no + 1, format!("expected {degree} images, found {}", images.len())));
        }
        let p = Permutation::from_images(images).map_err(|e| Error::parse(no + 1, e.to_string()))?;
        generators.push(p);
    }
    if generators.is_empty() {
        generators.push(Permutation::identity(degree));
    }
    PermGroup::new(degree, generators)
}

pub(crate) fn parse_index_list(line: &str) -> std::result::Result<Vec<usize>, String> {
    line.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| format!("`{s}` is not a point index")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn from_images_validates() {
        assert!(p(&[0, 1, 2]).is_identity());
        assert_eq!(p(&[1, 0]).apply(0), 1);
        assert!(matches!(Permutation::from_images(vec![0, 0, 1]), Err(Error::NotABijection(_))));
        assert!(matches!(Permutation::from_images(vec![0, 3, 1]), Err(Error::NotABijection(_))));
        assert!(Permutation::from_images(vec![]).is_err());
    }

    #[test]
    fn compose_follows_right_action() {
        let id = Permutation::identity(3);
        let q = p(&[2, 0, 1]);
        assert_eq!(id.compose(&q).unwrap(), q);
        assert_eq!(p(&[1, 0]).compose(&p(&[1, 0])).unwrap(), p(&[0, 1]));
        // x=0: p->1, q->0; x=1: p->2, q->2; x=2: p->0, q->1
        assert_eq!(p(&[1, 2, 0]).compose(&p(&[1, 0, 2])).unwrap(), p(&[0, 2, 1]));
        assert_eq!(
            p(&[1, 0]).compose(&id),
            Err(Error::DegreeMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn inverse_examples() {
        assert!(Permutation::identity(4).inverse().is_identity());
        assert_eq!(p(&[1, 0]).inverse(), p(&[1, 0]));
        assert_eq!(p(&[1, 2, 0]).inverse(), p(&[2, 0, 1]));
    }

    #[test]
    fn cycles_round_trip() {
        let x = Permutation::from_cycles(5, &[vec![0, 3], vec![1, 2, 4]]).unwrap();
        assert_eq!(x.images(), &[3, 2, 4, 0, 1]);
        assert_eq!(x.to_string(), "(0 3)(1 2 4)");
        assert_eq!(Permutation::from_cycles(5, &x.cycles()).unwrap(), x);
        assert_eq!(x.order(), 6);
        assert_eq!(Permutation::identity(2).to_string(), "()");
        assert!(Permutation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn closure_orders() {
        let g = PermGroup::new(2, vec![p(&[1, 0])]).unwrap().closure().unwrap();
        assert_eq!(g.elements().unwrap(), &[p(&[0, 1]), p(&[1, 0])]);
        let s3 = PermGroup::new(3, vec![p(&[1, 2, 0]), p(&[1, 0, 2])]).unwrap();
        assert_eq!(s3.order().unwrap(), 6);
        assert_eq!(PermGroup::symmetric(5).order().unwrap(), 120);
    }

    #[test]
    fn closure_respects_cap() {
        let err = PermGroup::symmetric(5).with_cap(50).closure().unwrap_err();
        assert_eq!(err, Error::CapExceeded { cap: 50, partial: 50 });
    }

    #[test]
    fn generators_must_agree() {
        assert_eq!(PermGroup::new(3, vec![]).unwrap_err(), Error::NoGenerators);
        assert!(matches!(PermGroup::new(3, vec![p(&[1, 0])]), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn orbit_examples() {
        let blocks = |g: &PermGroup| g.orbits().blocks().to_vec();
        assert_eq!(blocks(&PermGroup::trivial(3)), vec![vec![0], vec![1], vec![2]]);
        let g = PermGroup::new(3, vec![p(&[1, 0, 2])]).unwrap();
        assert_eq!(blocks(&g), vec![vec![0, 1], vec![2]]);
        assert!(!g.is_transitive());
        assert_eq!(blocks(&PermGroup::symmetric(3)), vec![vec![0, 1, 2]]);
        assert!(!PermGroup::trivial(2).is_transitive());
    }

    #[test]
    fn stabilizers_and_regularity() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(s3.point_stabilizer(0).unwrap().order().unwrap(), 2);
        assert!(!s3.is_regular().unwrap());
        let c3 = right_regular_representation(&CayleyTable::cyclic(3));
        assert_eq!(c3.point_stabilizer(0).unwrap().order().unwrap(), 1);
        assert!(c3.is_regular().unwrap());
        assert!(c3.is_transitive());
        assert_eq!(PermGroup::trivial(4).point_stabilizer(2).unwrap().order().unwrap(), 1);
        assert!(PermGroup::trivial(1).is_regular().unwrap());
        assert!(s3.point_stabilizer(3).is_err());
    }

    #[test]
    fn right_regular_examples() {
        let c2 = right_regular_representation(&CayleyTable::cyclic(2));
        assert_eq!((c2.degree(), c2.order().unwrap()), (2, 2));
        let s3 = CayleyTable::from_perm_group(&PermGroup::symmetric(3)).unwrap();
        let reg = right_regular_representation(&s3);
        assert_eq!((reg.degree(), reg.order().unwrap()), (6, 6));
        assert!(reg.is_regular().unwrap());
    }

    #[test]
    fn symmetric_generator_sets() {
        assert_eq!(symmetric_generators(1).len(), 1);
        assert_eq!(symmetric_generators(2), vec![p(&[1, 0])]);
        assert_eq!(symmetric_generators(4).len(), 2);
    }

    #[test]
    fn generator_file() {
        let g = parse_generator_file("3\n1 2 0\n1,0,2\n").unwrap();
        assert_eq!(g.order().unwrap(), 6);
        assert!(parse_generator_file("3\n1 2\n").is_err());
        assert!(parse_generator_file("3\n1 1 0\n").is_err());
        assert_eq!(parse_generator_file("2\n").unwrap().order().unwrap(), 1);
    }

    #[test]
    fn exhaustive_group_axioms() {
        for g in [PermGroup::symmetric(4), PermGroup::symmetric(3), right_regular_representation(&CayleyTable::cyclic(5))] {
            let g = g.closure().unwrap();
            let elements = g.elements().unwrap();
            assert!(g.contains(&Permutation::identity(g.degree())).unwrap());
            for a in elements {
                assert!(g.contains(&a.inverse()).unwrap());
                for b in elements {
                    let ab = a * b;
                    assert!(g.contains(&ab).unwrap());
                    for c in elements {
                        assert_eq!(&ab * c, a * &(b * c));
                    }
                }
            }
        }
    }
}
