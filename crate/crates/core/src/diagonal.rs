//! Abstract finite groups as Cayley tables, their automorphisms, and the
//! diagonal group `D(G, n)` on `G^n`.
//!
//! Two realizations of `D(G, n)` are provided. [`diagonal_generators`] writes the
//! generator families directly as maps of `G^n`. [`coset_generators`] works in
//! `G^{n+1}`, acting on right cosets of the diagonal subgroup `{(g, ..., g)}`
//! with representatives `(1, g_1, ..., g_n)`, and reduces every image back to
//! that normal form. Both index `G^n` mixed-radix with the first coordinate
//! most significant.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cartdec::MixedRadix;
use crate::error::{Error, Result};
use crate::perm::{right_multiplication, symmetric_generators, PermGroup, Permutation};
use crate::wreath::{WreathContext, WreathElement};

/// Largest group order the automorphism search accepts by default.
pub const DEFAULT_AUT_ORDER_BOUND: usize = 12;

/// Default bound on `|G|^n` for diagonal constructions.
pub const DEFAULT_DEGREE_BUDGET: usize = 4096;

/// A finite group as its multiplication table, `table[a][b] = a*b`, with the
/// identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl CayleyTable {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidTable(format!("entry {bad} in row {i} is out of range")));
            }
        }
        for i in 0..n {
            let mut in_row = vec![false; n];
            let mut in_col = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut in_row[rows[i][j]], true) {
                    return Err(Error::NotLatin(format!("row {i} repeats {}", rows[i][j])));
                }
                if std::mem::replace(&mut in_col[rows[j][i]], true) {
                    return Err(Error::NotLatin(format!("column {i} repeats {}", rows[j][i])));
                }
            }
        }
        if (0..n).any(|x| rows[0][x] != x || rows[x][0] != x) {
            return Err(Error::IdentityNotZero);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = rows[a][b];
                for c in 0..n {
                    if rows[ab][c] != rows[a][rows[b][c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let inverses =
            (0..n).map(|a| rows[a].iter().position(|&x| x == 0).expect("Latin row contains 0")).collect();
        Ok(CayleyTable { table: rows, inverses })
    }

    /// `Z/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        CayleyTable::from_rows(rows).expect("cyclic group table")
    }

    /// The abstract group of an enumerable permutation group, elements in
    /// sorted order (so the identity comes first).
    pub fn from_perm_group(group: &PermGroup) -> Result<Self> {
        let group = group.closure()?;
        let elements = group.elements().expect("enumerated");
        let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let rows = elements.iter().map(|a| elements.iter().map(|b| index[&a.then(b)]).collect()).collect();
        CayleyTable::from_rows(rows)
    }

    /// `A × B` with `(a, b)` at index `a·|B| + b`.
    pub fn direct_product(a: &CayleyTable, b: &CayleyTable) -> Self {
        let (na, nb) = (a.order(), b.order());
        let rows = (0..na * nb)
            .map(|x| (0..na * nb).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect())
            .collect();
        CayleyTable::from_rows(rows).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Greedy generating set: scan elements in order, keep each one not yet generated.
    /// The trivial group yields `[0]`.
    pub fn generating_set(&self) -> Vec<usize> {
        let n = self.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0];
        let mut gens = Vec::new();
        for g in 1..n {
            if inside[g] {
                continue;
            }
            gens.push(g);
            // re-close over all generators so far
            let mut queue: VecDeque<usize> = members.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        if gens.is_empty() {
            gens.push(0);
        }
        gens
    }

    /// Parses the `n`-then-`n`-rows text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim().starts_with('#'));
        let (no, first) = lines.next().ok_or_else(|| Error::parse(1, "missing order line"))?;
        let n: usize = first.trim().parse().map_err(|_| Error::parse(no + 1, "order must be an integer"))?;
        let mut rows = Vec::with_capacity(n);
        for (no, line) in lines {
            let row = line
                .split_whitespace()
                .map(|s| s.parse::<usize>().map_err(|_| Error::parse(no + 1, format!("`{s}` is not an index"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::parse(0, format!("expected {n} rows, found {}", rows.len())));
        }
        CayleyTable::from_rows(rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order());
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `Aut(G)` as permutations of element indices, with the inner ones flagged.
#[derive(Clone, Debug)]
pub struct AutomorphismSet {
    automorphisms: Vec<Permutation>,
    inner: Vec<bool>,
    complement: Option<Vec<Permutation>>,
}

/// All automorphisms of `table`, by backtracking over images of a generating set.
pub fn automorphism_group(table: &CayleyTable, bound: usize) -> Result<AutomorphismSet> {
    let n = table.order();
    if n > bound {
        return Err(Error::OrderTooLarge { order: n, bound });
    }
    let gens = table.generating_set();

    // BFS spanning tree: every element is parent * gens[which]
    let mut word: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut order = vec![0];
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for (which, &s) in gens.iter().enumerate() {
            let y = table.mul(x, s);
            if !reached[y] {
                reached[y] = true;
                word[y] = Some((x, which));
                order.push(y);
            }
        }
        i += 1;
    }

    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let k = table.element_order(g);
            (0..n).filter(|&c| table.element_order(c) == k).collect()
        })
        .collect();

    let mut found = Vec::new();
    let mut choice = vec![0; gens.len()];
    fn search(
        depth: usize,
        choice: &mut Vec<usize>,
        candidates: &[Vec<usize>],
        try_map: &mut dyn FnMut(&[usize]),
    ) {
        if depth == candidates.len() {
            try_map(choice);
            return;
        }
        for &c in &candidates[depth] {
            // distinct generators need distinct images
            if choice[..depth].contains(&c) {
                continue;
            }
            choice[depth] = c;
            search(depth + 1, choice, candidates, try_map);
        }
    }
    let mut try_map = |images: &[usize]| {
        let mut map = vec![usize::MAX; n];
        map[0] = 0;
        for &y in &order[1..] {
            let (parent, which) = word[y].expect("non-identity has a parent");
            map[y] = table.mul(map[parent], images[which]);
        }
        let Ok(perm) = Permutation::from_images(map) else { return };
        let hom = (0..n).all(|a| (0..n).all(|b| perm.apply(table.mul(a, b)) == table.mul(perm.apply(a), perm.apply(b))));
        if hom {
            found.push(perm);
        }
    };
    search(0, &mut choice, &candidates, &mut try_map);
    found.sort();
    found.dedup();

    let inner_maps: HashSet<Permutation> = (0..n)
        .map(|g| {
            let gi = table.inv(g);
            Permutation::from_images_unchecked((0..n).map(|x| table.mul(table.mul(gi, x), g)).collect())
        })
        .collect();
    let inner = found.iter().map(|a| inner_maps.contains(a)).collect();
    Ok(AutomorphismSet { automorphisms: found, inner, complement: None })
}

impl AutomorphismSet {
    pub fn automorphisms(&self) -> &[Permutation] {
        &self.automorphisms
    }

    pub fn order(&self) -> usize {
        self.automorphisms.len()
    }

    pub fn is_inner(&self, index: usize) -> bool {
        self.inner[index]
    }

    pub fn inner(&self) -> Vec<Permutation> {
        self.automorphisms.iter().zip(&self.inner).filter(|(_, &i)| i).map(|(a, _)| a.clone()).collect()
    }

    pub fn num_inner(&self) -> usize {
        self.inner.iter().filter(|&&i| i).count()
    }

    pub fn complement(&self) -> Option<&[Permutation]> {
        self.complement.as_deref()
    }

    /// Finds and stores a complement of `Inn` (see [`Self::find_outer_complement`]).
    pub fn with_complement(mut self) -> Self {
        self.complement = self.find_outer_complement();
        self
    }

    /// `O` is a subgroup with `O ∩ Inn = 1` and `|O|·|Inn| = |Aut|`.
    pub fn is_complement(&self, o: &[Permutation]) -> bool {
        let set: HashSet<&Permutation> = o.iter().collect();
        let Some(id) = self.automorphisms.first() else { return false };
        let closed = o.iter().all(|a| o.iter().all(|b| set.contains(&a.then(b))));
        let members = o.iter().all(|a| self.automorphisms.binary_search(a).is_ok());
        let inner = self.inner();
        let meets_trivially = o.iter().filter(|a| inner.contains(a)).all(|a| a == id);
        closed
            && members
            && set.contains(id)
            && meets_trivially
            && set.len() * self.num_inner() == self.order()
    }

    /// A subgroup of `Aut(G)` complementing `Inn(G)`, if one exists.
    ///
    /// Exhaustive: each step picks the first coset of `Inn` not yet covered and
    /// tries every element of it. Any complement contains exactly one element
    /// of that coset, so no complement is missed.
    pub fn find_outer_complement(&self) -> Option<Vec<Permutation>> {
        let total = self.order();
        let inner_count = self.num_inner();
        let target = total / inner_count;
        if target == 1 {
            return Some(vec![self.automorphisms[0].clone()]);
        }
        if inner_count == 1 {
            return Some(self.automorphisms.clone());
        }

        let index: HashMap<&Permutation, usize> =
            self.automorphisms.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mul: Vec<Vec<usize>> = self
            .automorphisms
            .iter()
            .map(|a| self.automorphisms.iter().map(|b| index[&a.then(b)]).collect())
            .collect();
        // coset label of a·Inn
        let inner_idx: Vec<usize> = (0..total).filter(|&i| self.inner[i]).collect();
        let mut coset = vec![usize::MAX; total];
        let mut cosets = 0;
        for a in 0..total {
            if coset[a] == usize::MAX {
                for &i in &inner_idx {
                    coset[mul[a][i]] = cosets;
                }
                cosets += 1;
            }
        }

        let close = |start: &BTreeSet<usize>| -> BTreeSet<usize> {
            let mut set = start.clone();
            let mut queue: Vec<usize> = set.iter().copied().collect();
            while let Some(x) = queue.pop() {
                let gens: Vec<usize> = start.iter().copied().collect();
                for s in gens {
                    let y = mul[x][s];
                    if set.insert(y) {
                        queue.push(y);
                    }
                }
            }
            set
        };

        fn search(
            subgroup: &BTreeSet<usize>,
            target: usize,
            coset: &[usize],
            inner: &[bool],
            close: &dyn Fn(&BTreeSet<usize>) -> BTreeSet<usize>,
        ) -> Option<BTreeSet<usize>> {
            if subgroup.len() == target {
                return Some(subgroup.clone());
            }
            let covered: HashSet<usize> = subgroup.iter().map(|&x| coset[x]).collect();
            let next = (0..coset.len()).map(|x| coset[x]).find(|c| !covered.contains(c))?;
            for x in (0..coset.len()).filter(|&x| coset[x] == next) {
                let mut with = subgroup.clone();
                with.insert(x);
                let grown = close(&with);
                let trivial_meet = grown.iter().filter(|&&y| inner[y]).count() == 1;
                if trivial_meet && grown.len() <= target && target.is_multiple_of(grown.len()) {
                    if let Some(found) = search(&grown, target, coset, inner, close) {
                        return Some(found);
                    }
                }
            }
            None
        }

        let start: BTreeSet<usize> = [0].into_iter().collect();
        let found = search(&start, target, &coset, &self.inner, &close)?;
        Some(found.into_iter().map(|i| self.automorphisms[i].clone()).collect())
    }
}

/// The generator families of `D(G, n)` on `G^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// (a) `[x_i] -> [x_i g_i]`, one coordinate at a time.
    RightMultiplication,
    /// (b) `[x_i] -> [g⁻¹ x_i]` on all coordinates at once.
    LeftMultiplication,
    /// (c) an automorphism applied to every coordinate.
    Automorphisms,
    /// (d) `Sym(n)` permuting coordinates.
    CoordinatePermutations,
    /// (e) `τ: [x_1, x_2, ..., x_n] -> [x_1⁻¹, x_1⁻¹x_2, ..., x_1⁻¹x_n]`.
    Tau,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::RightMultiplication,
        Family::LeftMultiplication,
        Family::Automorphisms,
        Family::CoordinatePermutations,
        Family::Tau,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::RightMultiplication => 'a',
            Family::LeftMultiplication => 'b',
            Family::Automorphisms => 'c',
            Family::CoordinatePermutations => 'd',
            Family::Tau => 'e',
        }
    }
}

/// A set of families, written as letters, e.g. `"abde"`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilySet(BTreeSet<Family>);

impl FamilySet {
    pub fn all() -> Self {
        FamilySet(Family::ALL.into_iter().collect())
    }

    pub fn contains(&self, f: Family) -> bool {
        self.0.contains(&f)
    }

    pub fn iter(&self) -> impl Iterator<Item = Family> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<Family> for FamilySet {
    fn from_iter<I: IntoIterator<Item = Family>>(iter: I) -> Self {
        FamilySet(iter.into_iter().collect())
    }
}

impl FromStr for FamilySet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| {
                Family::ALL
                    .into_iter()
                    .find(|f| f.letter() == c.to_ascii_lowercase())
                    .ok_or_else(|| Error::parse(1, format!("unknown generator family `{c}`")))
            })
            .collect()
    }
}

impl fmt::Display for FamilySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|fam| write!(f, "{}", fam.letter()))
    }
}

fn tuple_space(table: &CayleyTable, n: usize, budget: usize) -> Result<MixedRadix> {
    if n == 0 {
        return Err(Error::BadDimensions("diagonal groups need n ≥ 1".into()));
    }
    let space = MixedRadix::new(table.order(), n);
    match space.checked_size() {
        Some(degree) if degree <= budget => Ok(space),
        Some(degree) => Err(Error::DegreeBudgetExceeded { degree, budget }),
        None => Err(Error::DegreeBudgetExceeded { degree: usize::MAX, budget }),
    }
}

/// The permutation of `G^n` induced by a map of tuples, checked to be a bijection.
fn tuple_permutation(space: MixedRadix, f: impl Fn(&[usize]) -> Vec<usize>) -> Permutation {
    let images = (0..space.size()).map(|i| space.encode(&f(&space.decode(i)))).collect();
    Permutation::from_images(images).expect("generator of D(G, n) is a bijection")
}

/// New coordinate `σ(j)` receives old coordinate `j`.
fn permute_coordinates(x: &[usize], sigma: &Permutation) -> Vec<usize> {
    let mut out = vec![0; x.len()];
    for (j, &v) in x.iter().enumerate() {
        out[sigma.apply(j)] = v;
    }
    out
}

/// `τ` as a map of tuples.
pub fn tau_map(table: &CayleyTable, x: &[usize]) -> Vec<usize> {
    let first_inv = table.inv(x[0]);
    std::iter::once(first_inv).chain(x[1..].iter().map(|&xi| table.mul(first_inv, xi))).collect()
}

/// `τ` as a permutation of `G^n`.
pub fn tau(table: &CayleyTable, n: usize, budget: usize) -> Result<Permutation> {
    let space = tuple_space(table, n, budget)?;
    Ok(tuple_permutation(space, |x| tau_map(table, x)))
}

/// Labelled generators of the selected families, with family (c) drawing on
/// `automorphisms` (identity entries are skipped).
pub fn diagonal_generators(
    table: &CayleyTable,
    n: usize,
    families: &FamilySet,
    automorphisms: &[Permutation],
    budget: usize,
) -> Result<Vec<(Family, Permutation)>> {
    let space = tuple_space(table, n, budget)?;
    let gens = table.generating_set();
    let mut out = Vec::new();
    for family in families.iter() {
        match family {
            Family::RightMultiplication => {
                for i in 0..n {
                    for &g in &gens {
                        out.push((
                            family,
                            tuple_permutation(space, |x| {
                                let mut y = x.to_vec();
                                y[i] = table.mul(y[i], g);
                                y
                            }),
                        ));
                    }
                }
            }
            Family::LeftMultiplication => {
                for &g in &gens {
                    let gi = table.inv(g);
                    out.push((family, tuple_permutation(space, |x| x.iter().map(|&v| table.mul(gi, v)).collect())));
                }
            }
            Family::Automorphisms => {
                for alpha in automorphisms.iter().filter(|a| !a.is_identity()) {
                    out.push((family, tuple_permutation(space, |x| x.iter().map(|&v| alpha.apply(v)).collect())));
                }
            }
            Family::CoordinatePermutations => {
                if n > 1 {
                    for sigma in symmetric_generators(n) {
                        out.push((family, tuple_permutation(space, |x| permute_coordinates(x, &sigma))));
                    }
                }
            }
            Family::Tau => out.push((family, tuple_permutation(space, |x| tau_map(table, x)))),
        }
    }
    Ok(out)
}

fn group_from_generators(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    let gens = if gens.is_empty() { vec![Permutation::identity(degree)] } else { gens };
    PermGroup::new(degree, gens).expect("generators share the degree")
}

/// `D(G, n)` (or the subgroup generated by the chosen families) on `G^n`.
/// Family (c) uses the full automorphism group.
pub fn diagonal_group(table: &CayleyTable, n: usize, families: &FamilySet, budget: usize) -> Result<PermGroup> {
    let autos = if families.contains(Family::Automorphisms) {
        automorphism_group(table, DEFAULT_AUT_ORDER_BOUND)?.automorphisms
    } else {
        Vec::new()
    };
    diagonal_group_with_automorphisms(table, n, families, &autos, budget)
}

/// As [`diagonal_group`], with family (c) restricted to `automorphisms`.
pub fn diagonal_group_with_automorphisms(
    table: &CayleyTable,
    n: usize,
    families: &FamilySet,
    automorphisms: &[Permutation],
    budget: usize,
) -> Result<PermGroup> {
    let gens = diagonal_generators(table, n, families, automorphisms, budget)?;
    let degree = MixedRadix::new(table.order(), n).size();
    Ok(group_from_generators(degree, gens.into_iter().map(|(_, p)| p).collect()))
}

/// Reduces a tuple of `G^{n+1}` to the representative `(1, y_0⁻¹y_1, ..., y_0⁻¹y_n)`
/// of its coset `{(g y_0, ..., g y_n)}`, returning the tail `(y_0⁻¹y_1, ...)`.
pub fn coset_representative(table: &CayleyTable, tuple: &[usize]) -> Vec<usize> {
    let head_inv = table.inv(tuple[0]);
    tuple[1..].iter().map(|&y| table.mul(head_inv, y)).collect()
}

/// Right-multiplies the coset of `(1, tail)` by an element of `G^{n+1}`.
pub fn coset_right_multiply(table: &CayleyTable, tail: &[usize], by: &[usize]) -> Vec<usize> {
    assert_eq!(by.len(), tail.len() + 1);
    let full: Vec<usize> =
        std::iter::once(0).chain(tail.iter().copied()).zip(by).map(|(y, &g)| table.mul(y, g)).collect();
    coset_representative(table, &full)
}

/// Moves slot `j` of `(1, tail)` to slot `σ(j)` (`σ` on `0..=n`) and renormalizes.
pub fn coset_permute(table: &CayleyTable, tail: &[usize], sigma: &Permutation) -> Vec<usize> {
    let full: Vec<usize> = std::iter::once(0).chain(tail.iter().copied()).collect();
    coset_representative(table, &permute_coordinates(&full, sigma))
}

/// Generator families of the coset realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CosetFamily {
    /// `G_i` for `1 ≤ i ≤ n`, right multiplication in slot `i`.
    SlotMultiplication,
    /// `G_0`, right multiplication in slot 0 (left multiplication by the inverse after reduction).
    HeadMultiplication,
    /// `Sym(n)` on slots `1..=n`.
    SlotPermutation,
    /// The transposition of slots 0 and 1.
    HeadTransposition,
}

/// Generators of `D(G, n)` computed through the coset action on `G^{n+1}`.
pub fn coset_generators(table: &CayleyTable, n: usize, budget: usize) -> Result<Vec<(CosetFamily, Permutation)>> {
    let space = tuple_space(table, n, budget)?;
    let gens = table.generating_set();
    let unit = |slot: usize, g: usize| -> Vec<usize> {
        let mut by = vec![0; n + 1];
        by[slot] = g;
        by
    };
    let mut out = Vec::new();
    for slot in 1..=n {
        for &g in &gens {
            let by = unit(slot, g);
            out.push((CosetFamily::SlotMultiplication, tuple_permutation(space, |t| coset_right_multiply(table, t, &by))));
        }
    }
    for &g in &gens {
        let by = unit(0, g);
        out.push((CosetFamily::HeadMultiplication, tuple_permutation(space, |t| coset_right_multiply(table, t, &by))));
    }
    if n > 1 {
        for sigma in symmetric_generators(n) {
            let shifted = Permutation::from_images(
                std::iter::once(0).chain(sigma.images().iter().map(|&j| j + 1)).collect(),
            )
            .expect("shifted permutation");
            out.push((CosetFamily::SlotPermutation, tuple_permutation(space, |t| coset_permute(table, t, &shifted))));
        }
    }
    let swap01 = Permutation::from_cycles(n + 1, &[vec![0, 1]]).expect("n ≥ 1");
    out.push((CosetFamily::HeadTransposition, tuple_permutation(space, |t| coset_permute(table, t, &swap01))));
    Ok(out)
}

/// `D(G, n)` realized on coset representatives.
pub fn diagonal_action_on_cosets(table: &CayleyTable, n: usize, budget: usize) -> Result<PermGroup> {
    let gens = coset_generators(table, n, budget)?;
    let degree = MixedRadix::new(table.order(), n).size();
    Ok(group_from_generators(degree, gens.into_iter().map(|(_, p)| p).collect()))
}

/// Which part of `⟨M, D, S_n⟩` a generator comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupPart {
    /// `M = G^n`, right multiplications in the base group.
    Base,
    /// `{(α, ..., α) : α ∈ O}` in the base group.
    DiagonalComplement,
    /// `S_n` as the top group.
    Top,
}

/// `⟨M, D, S_n⟩` inside `Sym Γ wr S_n` with `Γ = G` under right multiplication.
#[derive(Clone, Debug)]
pub struct ComplementSubgroup {
    pub context: WreathContext,
    pub generators: Vec<(SubgroupPart, WreathElement)>,
    /// The materialized group, enumerated.
    pub group: PermGroup,
}

/// Builds `M = G^n` (coordinate-wise right multiplications), the diagonal copy
/// of the complement `O`, and the top `S_n`, and enumerates what they generate.
pub fn complement_subgroup(
    table: &CayleyTable,
    n: usize,
    complement: &[Permutation],
    budget: usize,
    cap: usize,
) -> Result<ComplementSubgroup> {
    tuple_space(table, n, budget)?;
    let context = WreathContext::new(table.order(), n)?;
    let gamma = table.order();
    let identity = Permutation::identity(gamma);
    let mut generators = Vec::new();
    for i in 0..n {
        for g in table.generating_set().into_iter().filter(|&g| g != 0) {
            let mut base = vec![identity.clone(); n];
            base[i] = right_multiplication(table, g);
            generators.push((SubgroupPart::Base, WreathElement::pure_base(base)?));
        }
    }
    for alpha in complement.iter().filter(|a| !a.is_identity()) {
        if alpha.degree() != gamma {
            return Err(Error::DegreeMismatch { expected: gamma, found: alpha.degree() });
        }
        generators.push((SubgroupPart::DiagonalComplement, WreathElement::pure_base(vec![alpha.clone(); n])?));
    }
    if n > 1 {
        for sigma in symmetric_generators(n) {
            generators.push((SubgroupPart::Top, WreathElement::pure_top(gamma, sigma)));
        }
    }
    let points = generators.iter().map(|(_, g)| context.materialize(g)).collect::<Result<Vec<_>>>()?;
    let group = group_from_generators(context.num_points(), points).with_cap(cap).closure()?;
    Ok(ComplementSubgroup { context, generators, group })
}
