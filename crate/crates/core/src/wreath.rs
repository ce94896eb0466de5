//! Wreath products `G wr H` with `G ≤ Sym Γ`, `H ≤ Sym Δ`, kept in coordinate
//! form (base tuple, top permutation), and their product action on `Func(Δ, Γ)`.
//!
//! Conventions: a function `φ: Δ -> Γ` is a tuple with `φ[δ]`. A wreath element
//! `g = f·h` sends `φ` to `ψ` with `ψ[δ] = φ[δh⁻¹]·f[δh⁻¹]`, equivalently
//! `ψ[δh] = φ[δ]·f[δ]`: coordinate `δ` is moved by its own base entry, then
//! relocated by the top group.

use crate::cartdec::{natural_cartesian_decomposition, CartesianDecomposition, MixedRadix};
use crate::error::{Error, Result};
use crate::perm::{symmetric_generators, PermGroup, Permutation};

/// An element `f·h` of a wreath product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    base: Vec<Permutation>,
    top: Permutation,
}

impl WreathElement {
    pub fn new(base: Vec<Permutation>, top: Permutation) -> Result<Self> {
        if base.len() != top.degree() {
            return Err(Error::ContextMismatch(format!(
                "base has {} coordinates but top acts on {} points",
                base.len(),
                top.degree()
            )));
        }
        let gamma = base[0].degree();
        if let Some(bad) = base.iter().find(|b| b.degree() != gamma) {
            return Err(Error::DegreeMismatch { expected: gamma, found: bad.degree() });
        }
        Ok(WreathElement { base, top })
    }

    pub fn identity(gamma_size: usize, delta_size: usize) -> Self {
        WreathElement {
            base: vec![Permutation::identity(gamma_size); delta_size],
            top: Permutation::identity(delta_size),
        }
    }

    /// An element of the base group.
    pub fn pure_base(base: Vec<Permutation>) -> Result<Self> {
        let k = base.len();
        if k == 0 {
            return Err(Error::ContextMismatch("empty base tuple".into()));
        }
        WreathElement::new(base, Permutation::identity(k))
    }

    /// An element of the top group.
    pub fn pure_top(gamma_size: usize, top: Permutation) -> Self {
        WreathElement { base: vec![Permutation::identity(gamma_size); top.degree()], top }
    }

    pub fn base(&self) -> &[Permutation] {
        &self.base
    }

    pub fn top(&self) -> &Permutation {
        &self.top
    }

    pub fn gamma_size(&self) -> usize {
        self.base[0].degree()
    }

    pub fn delta_size(&self) -> usize {
        self.base.len()
    }

    pub fn is_identity(&self) -> bool {
        self.top.is_identity() && self.base.iter().all(Permutation::is_identity)
    }

    fn check_same_shape(&self, other: &WreathElement) -> Result<()> {
        if self.gamma_size() != other.gamma_size() || self.delta_size() != other.delta_size() {
            return Err(Error::ContextMismatch(format!(
                "Sym {} wr Sym {} vs Sym {} wr Sym {}",
                self.gamma_size(),
                self.delta_size(),
                other.gamma_size(),
                other.delta_size()
            )));
        }
        Ok(())
    }

    /// `self` followed by `other`: top `h_a h_b`, base `δ -> f_a[δ]·f_b[δ h_a]`.
    pub fn multiply(&self, other: &WreathElement) -> Result<WreathElement> {
        self.check_same_shape(other)?;
        let base = self
            .base
            .iter()
            .enumerate()
            .map(|(delta, f)| f.then(&other.base[self.top.apply(delta)]))
            .collect();
        Ok(WreathElement { base, top: self.top.then(&other.top) })
    }

    pub fn inverse(&self) -> WreathElement {
        let top_inv = self.top.inverse();
        let base = (0..self.delta_size()).map(|delta| self.base[top_inv.apply(delta)].inverse()).collect();
        WreathElement { base, top: top_inv }
    }

    /// Product action on a single function `Δ -> Γ`.
    pub fn act(&self, phi: &[usize]) -> Result<Vec<usize>> {
        if phi.len() != self.delta_size() {
            return Err(Error::ContextMismatch(format!(
                "point has {} coordinates, element has {}",
                phi.len(),
                self.delta_size()
            )));
        }
        if let Some(&bad) = phi.iter().find(|&&g| g >= self.gamma_size()) {
            return Err(Error::PointOutOfRange { point: bad, degree: self.gamma_size() });
        }
        Ok(self.act_unchecked(phi))
    }

    fn act_unchecked(&self, phi: &[usize]) -> Vec<usize> {
        let mut out = vec![0; phi.len()];
        for (delta, (&gamma, f)) in phi.iter().zip(&self.base).enumerate() {
            out[self.top.apply(delta)] = f.apply(gamma);
        }
        out
    }
}

/// `f^h` with `(f^h)(δ) = f(δh⁻¹)`: the top group permutes coordinates.
pub fn top_conjugate(f: &[Permutation], h: &Permutation) -> Result<Vec<Permutation>> {
    if f.len() != h.degree() {
        return Err(Error::DegreeMismatch { expected: f.len(), found: h.degree() });
    }
    let h_inv = h.inverse();
    Ok((0..f.len()).map(|delta| f[h_inv.apply(delta)].clone()).collect())
}

/// Natural projection of a base element onto coordinate `δ`: the `δ`-entry,
/// and the base element that agrees with `f` at `δ` and is trivial elsewhere.
pub fn base_projection(f: &[Permutation], delta: usize) -> Result<(Permutation, WreathElement)> {
    let entry = f.get(delta).ok_or(Error::IndexOutOfRange { index: delta, len: f.len() })?.clone();
    let mut base = vec![Permutation::identity(entry.degree()); f.len()];
    base[delta] = entry.clone();
    Ok((entry, WreathElement::pure_base(base)?))
}

/// `Sym Γ wr Sym Δ` acting on `Func(Δ, Γ)`, with the points of `Func(Δ, Γ)`
/// indexed mixed-radix (coordinate 0 most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathContext {
    gamma_size: usize,
    delta_size: usize,
    indexing: MixedRadix,
    natural: CartesianDecomposition,
}

impl WreathContext {
    pub fn new(gamma_size: usize, delta_size: usize) -> Result<Self> {
        let (natural, indexing) = natural_cartesian_decomposition(gamma_size, delta_size)?;
        Ok(WreathContext { gamma_size, delta_size, indexing, natural })
    }

    pub fn gamma_size(&self) -> usize {
        self.gamma_size
    }

    pub fn delta_size(&self) -> usize {
        self.delta_size
    }

    pub fn num_points(&self) -> usize {
        self.natural.ground_size()
    }

    pub fn indexing(&self) -> MixedRadix {
        self.indexing
    }

    pub fn natural_decomposition(&self) -> &CartesianDecomposition {
        &self.natural
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement::identity(self.gamma_size, self.delta_size)
    }

    pub fn check(&self, g: &WreathElement) -> Result<()> {
        if g.gamma_size() != self.gamma_size || g.delta_size() != self.delta_size {
            return Err(Error::ContextMismatch(format!(
                "element of Sym {} wr Sym {} used in Sym {} wr Sym {}",
                g.gamma_size(),
                g.delta_size(),
                self.gamma_size,
                self.delta_size
            )));
        }
        Ok(())
    }

    /// Product action image of a point given as a tuple.
    pub fn act(&self, phi: &[usize], g: &WreathElement) -> Result<Vec<usize>> {
        self.check(g)?;
        g.act(phi)
    }

    /// The permutation of the `|Γ|^|Δ|` indexed points induced by `g`.
    pub fn materialize(&self, g: &WreathElement) -> Result<Permutation> {
        self.check(g)?;
        let images = (0..self.num_points())
            .map(|point| self.indexing.encode(&g.act_unchecked(&self.indexing.decode(point))))
            .collect();
        Ok(Permutation::from_images_unchecked(images))
    }

    /// Recovers the wreath element behind a point permutation, or `None` if the
    /// permutation does not lie in `Sym Γ wr Sym Δ`.
    ///
    /// `Sym Γ wr Sym Δ` is exactly the stabilizer of the natural decomposition,
    /// so this doubles as a membership test.
    pub fn decompose(&self, x: &Permutation) -> Option<WreathElement> {
        if x.degree() != self.num_points() {
            return None;
        }
        let top = self.natural.induced_action(x).ok()??;
        let base = (0..self.delta_size)
            .map(|delta| {
                let target = top.apply(delta);
                let lookup = self.natural.partitions()[target].block_lookup();
                let images = self.natural.partitions()[delta]
                    .blocks()
                    .iter()
                    .map(|block| lookup[x.apply(block[0])])
                    .collect();
                Permutation::from_images(images).ok()
            })
            .collect::<Option<Vec<_>>>()?;
        let g = WreathElement { base, top };
        (self.materialize(&g).ok()? == *x).then_some(g)
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.decompose(x).is_some()
    }

    /// Generators of `Sym Γ wr Sym Δ`: canonical `Sym Γ` generators in every
    /// coordinate, and canonical `Sym Δ` generators as pure top elements.
    pub fn full_group_generators(&self) -> Vec<WreathElement> {
        let mut gens = Vec::new();
        for delta in 0..self.delta_size {
            for s in symmetric_generators(self.gamma_size) {
                let mut base = vec![Permutation::identity(self.gamma_size); self.delta_size];
                base[delta] = s;
                gens.push(WreathElement { base, top: Permutation::identity(self.delta_size) });
            }
        }
        if self.delta_size > 1 {
            for t in symmetric_generators(self.delta_size) {
                gens.push(WreathElement::pure_top(self.gamma_size, t));
            }
        }
        gens
    }

    /// Order `(|Γ|!)^|Δ| · |Δ|!`, when it fits.
    pub fn full_group_order(&self) -> Option<u128> {
        let fact = |n: usize| (1..=n as u128).try_fold(1u128, |acc, x| acc.checked_mul(x));
        fact(self.gamma_size)?.checked_pow(self.delta_size as u32)?.checked_mul(fact(self.delta_size)?)
    }

    /// The full wreath product as a point group (not yet enumerated).
    pub fn full_group(&self) -> PermGroup {
        let gens = self
            .full_group_generators()
            .iter()
            .map(|g| self.materialize(g).expect("generator built in this context"))
            .collect();
        PermGroup::new(self.num_points(), gens).expect("nonempty generator list")
    }

    /// The full wreath product, enumerated under `cap`.
    pub fn full_wreath_group(&self, cap: usize) -> Result<PermGroup> {
        self.full_group().with_cap(cap).closure()
    }
}
