//! Embedding a group that preserves a homogeneous Cartesian decomposition into
//! `Sym Γ wr Sym Δ`, and the verifier for permutational isomorphisms.
//!
//! Given `ε = {Γ_0, ..., Γ_{k-1}}` with `m` blocks each, label the blocks of
//! every `Γ_i` by their canonical index in `0..m`. A point `ω` then becomes the
//! function `i -> label of the block of Γ_i containing ω`, i.e. a point of
//! `Func(Δ, Γ)` with `Δ = 0..k` and `Γ = 0..m`. An element `x` moving `Γ_i` to
//! `Γ_{ih}` corresponds to the wreath element with top `h` and base entry
//! `label(b) -> label(b·x)` at coordinate `i`.

use serde::{Deserialize, Serialize};

use crate::cartdec::CartesianDecomposition;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::wreath::{WreathContext, WreathElement};

/// The data of an embedding `X -> Sym Γ wr Sym Δ`.
#[derive(Clone, Debug)]
pub struct EmbeddingWitness {
    context: WreathContext,
    decomposition: CartesianDecomposition,
    point_bijection: Permutation,
    block_labelings: Vec<Vec<usize>>,
    generator_images: Vec<WreathElement>,
}

impl EmbeddingWitness {
    pub fn context(&self) -> &WreathContext {
        &self.context
    }

    /// The decomposition the witness was built from.
    pub fn decomposition(&self) -> &CartesianDecomposition {
        &self.decomposition
    }

    /// `Ω -> Func(Δ, Γ)` as a map between indexed point sets.
    pub fn point_bijection(&self) -> &Permutation {
        &self.point_bijection
    }

    /// `block_labelings[i][b]` is the `Γ`-label of block `b` of partition `i`.
    pub fn block_labelings(&self) -> &[Vec<usize>] {
        &self.block_labelings
    }

    pub fn generator_images(&self) -> &[WreathElement] {
        &self.generator_images
    }

    /// Generator images as permutations of `Func(Δ, Γ)`.
    pub fn materialized_images(&self) -> Vec<Permutation> {
        self.generator_images
            .iter()
            .map(|g| self.context.materialize(g).expect("images built in this context"))
            .collect()
    }

    /// The top parts of the generator images, i.e. the induced action on `ε`.
    pub fn top_action(&self) -> PermGroup {
        let tops = self.generator_images.iter().map(|g| g.top().clone()).collect();
        PermGroup::new(self.context.delta_size(), tops).expect("one top per generator")
    }

    /// The image subgroup of `Sym Γ wr Sym Δ` as a point group.
    pub fn image_group(&self) -> PermGroup {
        PermGroup::new(self.context.num_points(), self.materialized_images()).expect("one image per generator")
    }

    /// Replaces the point bijection. Only useful for building counterexamples.
    pub fn with_point_bijection(mut self, bijection: Permutation) -> Self {
        self.point_bijection = bijection;
        self
    }

    pub fn with_generator_images(mut self, images: Vec<WreathElement>) -> Self {
        self.generator_images = images;
        self
    }
}

/// Builds the embedding witness for `x_group` preserving `eps`.
pub fn wreath_embedding(x_group: &PermGroup, eps: &CartesianDecomposition) -> Result<EmbeddingWitness> {
    if !eps.is_cartesian_decomposition() {
        return Err(Error::NotACartesianDecomposition);
    }
    if !eps.is_homogeneous()? {
        return Err(Error::NotHomogeneous);
    }
    if x_group.degree() != eps.ground_size() {
        return Err(Error::DegreeMismatch { expected: eps.ground_size(), found: x_group.degree() });
    }
    let m = eps.partitions()[0].num_blocks();
    let k = eps.num_partitions();
    let context = WreathContext::new(m, k)?;
    let indexing = context.indexing();

    let block_labelings: Vec<Vec<usize>> = vec![(0..m).collect(); k];
    let bijection = (0..eps.ground_size())
        .map(|omega| {
            let blocks = eps.encode_point(omega)?;
            let labels: Vec<usize> = blocks.iter().zip(&block_labelings).map(|(&b, l)| l[b]).collect();
            Ok(indexing.encode(&labels))
        })
        .collect::<Result<Vec<_>>>()?;
    let point_bijection = Permutation::from_images(bijection)?;

    let lookups: Vec<Vec<usize>> = eps.partitions().iter().map(|p| p.block_lookup()).collect();
    let generator_images = x_group
        .generators()
        .iter()
        .enumerate()
        .map(|(index, x)| {
            let top = eps.induced_action(x)?.ok_or(Error::NotPreserved { generator: index })?;
            let base = (0..k)
                .map(|i| {
                    let target = top.apply(i);
                    let images = eps.partitions()[i]
                        .blocks()
                        .iter()
                        .enumerate()
                        .map(|(b, block)| (b, block_labelings[target][lookups[target][x.apply(block[0])]]))
                        .fold(vec![0; m], |mut acc, (b, label)| {
                            acc[block_labelings[i][b]] = label;
                            acc
                        });
                    Permutation::from_images(images)
                })
                .collect::<Result<Vec<_>>>()?;
            WreathElement::new(base, top)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(EmbeddingWitness {
        context,
        decomposition: eps.clone(),
        point_bijection,
        block_labelings,
        generator_images,
    })
}

/// How far [`is_permutational_isomorphism`] got.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerificationMode {
    /// Every enumerated element of the group was checked.
    Exhaustive,
    /// The group was too large to enumerate; generators and their pairwise
    /// products were checked.
    GeneratorPairs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsomorphismCheck {
    pub holds: bool,
    pub mode: VerificationMode,
    pub elements_checked: usize,
}

fn intertwines(x: &Permutation, image: &Permutation, bijection: &Permutation) -> bool {
    (0..x.degree()).all(|omega| bijection.apply(x.apply(omega)) == image.apply(bijection.apply(omega)))
}

/// Checks `β(ω·x) = β(ω)·φ(x)` for the generators, their pairwise products, and
/// (when the group can be enumerated within its cap) every element, with `φ`
/// extended along the Cayley graph.
pub fn is_permutational_isomorphism(
    group: &PermGroup,
    images: &[Permutation],
    bijection: &Permutation,
) -> Result<IsomorphismCheck> {
    if images.len() != group.generators().len() {
        return Err(Error::SizeMismatch { expected: group.generators().len(), found: images.len() });
    }
    if bijection.degree() != group.degree() {
        return Err(Error::SizeMismatch { expected: group.degree(), found: bijection.degree() });
    }
    if let Some(bad) = images.iter().find(|i| i.degree() != bijection.degree()) {
        return Err(Error::SizeMismatch { expected: bijection.degree(), found: bad.degree() });
    }
    let gens = group.generators();
    let fail = |mode, checked| Ok(IsomorphismCheck { holds: false, mode, elements_checked: checked });

    for (x, image) in gens.iter().zip(images) {
        if !intertwines(x, image, bijection) {
            return fail(VerificationMode::GeneratorPairs, 0);
        }
    }
    for (x, xi) in gens.iter().zip(images) {
        for (y, yi) in gens.iter().zip(images) {
            if !intertwines(&x.then(y), &xi.then(yi), bijection) {
                return fail(VerificationMode::GeneratorPairs, 0);
            }
        }
    }

    let identity = Permutation::identity(bijection.degree());
    match group.extend_to_elements(images, identity, |a, b| a.then(b)) {
        Ok(None) => fail(VerificationMode::Exhaustive, 0),
        Ok(Some(map)) => {
            let holds = map.iter().all(|(x, image)| intertwines(x, image, bijection));
            Ok(IsomorphismCheck { holds, mode: VerificationMode::Exhaustive, elements_checked: map.len() })
        }
        Err(Error::CapExceeded { .. }) => Ok(IsomorphismCheck {
            holds: true,
            mode: VerificationMode::GeneratorPairs,
            elements_checked: gens.len() * (gens.len() + 1),
        }),
        Err(e) => Err(e),
    }
}

/// Every generator image preserves the natural decomposition of `Func(Δ, Γ)`,
/// and the point bijection carries each block `b` of `Γ_i` onto the
/// `label(b)`-part of `Γ_δ` for `δ = i`.
pub fn image_preserves_natural_decomposition(witness: &EmbeddingWitness) -> bool {
    let ctx = witness.context();
    let natural = ctx.natural_decomposition();
    let images_ok = witness
        .generator_images
        .iter()
        .all(|g| ctx.materialize(g).is_ok_and(|x| matches!(natural.induced_action(&x), Ok(Some(_)))));
    if !images_ok {
        return false;
    }
    let eps = witness.decomposition();
    eps.partitions().iter().enumerate().all(|(i, partition)| {
        let target = natural.partitions()[i].block_lookup();
        partition.blocks().iter().enumerate().all(|(b, block)| {
            let label = witness.block_labelings[i][b];
            let mut image: Vec<usize> = block.iter().map(|&w| witness.point_bijection.apply(w)).collect();
            image.sort_unstable();
            image.iter().all(|&y| target[y] == label)
                && image.len() == natural.partitions()[i].blocks()[label].len()
        })
    })
}
