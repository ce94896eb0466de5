//! End-to-end checkers producing machine-readable verification reports.
//!
//! A report lists named checks, each backed by one library operation, plus
//! derived quantities tagged with the operation that produced them. The verdict
//! is computed from the checks alone.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cartdec::{natural_cartesian_decomposition, CartesianDecomposition, MixedRadix};
use crate::diagonal::{
    automorphism_group, coset_generators, complement_subgroup, diagonal_group_with_automorphisms,
    CayleyTable, CosetFamily, FamilySet, DEFAULT_AUT_ORDER_BOUND, DEFAULT_DEGREE_BUDGET,
};
use crate::embedding::{image_preserves_natural_decomposition, is_permutational_isomorphism, wreath_embedding};
use crate::error::{Error, Result};
use crate::perm::{right_regular_representation, PermGroup, Permutation, DEFAULT_ELEMENT_CAP};
use crate::wreath::WreathContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The input does not satisfy the hypotheses of the result being checked.
    HypothesisNotSatisfied,
}

impl Verdict {
    /// Process exit code for this verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::HypothesisNotSatisfied => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// A derived number (or structure) and the operation that computed it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Derived {
    pub value: Value,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub proposition: String,
    pub inputs: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub derived: BTreeMap<String, Derived>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn derived_value(&self, name: &str) -> Option<&Value> {
        self.derived.get(name).map(|d| &d.value)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::HypothesisNotSatisfied => "HYPOTHESIS NOT SATISFIED",
        };
        writeln!(f, "{}: {verdict}", self.proposition)?;
        if !self.inputs.is_empty() {
            let inputs: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(f, "  inputs: {}", inputs.join(" "))?;
        }
        for c in &self.checks {
            let mark = if c.pass { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  [{mark}] {}", c.name)?;
            } else {
                writeln!(f, "  [{mark}] {}: {}", c.name, c.detail)?;
            }
        }
        for (name, d) in &self.derived {
            writeln!(f, "  {name} = {} ({})", d.value, d.source)?;
        }
        Ok(())
    }
}

/// Budgets shared by all checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub element_cap: usize,
    pub degree_budget: usize,
    pub aut_order_bound: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            element_cap: DEFAULT_ELEMENT_CAP,
            degree_budget: DEFAULT_DEGREE_BUDGET,
            aut_order_bound: DEFAULT_AUT_ORDER_BOUND,
        }
    }
}

struct ReportBuilder {
    proposition: String,
    inputs: BTreeMap<String, Value>,
    checks: Vec<Check>,
    derived: BTreeMap<String, Derived>,
    hypothesis_failed: bool,
}

impl ReportBuilder {
    fn new(proposition: &str) -> Self {
        ReportBuilder {
            proposition: proposition.to_string(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            derived: BTreeMap::new(),
            hypothesis_failed: false,
        }
    }

    fn input(&mut self, name: &str, value: impl Serialize) {
        self.inputs.insert(name.into(), serde_json::to_value(value).expect("input serializes"));
    }

    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
        pass
    }

    fn hypothesis(&mut self, name: &str, pass: bool, detail: impl Into<String>) -> bool {
        if !pass {
            self.hypothesis_failed = true;
        }
        self.check(name, pass, detail)
    }

    fn derive(&mut self, name: &str, value: impl Serialize, source: &str) {
        let value = serde_json::to_value(value).expect("derived value serializes");
        self.derived.insert(name.into(), Derived { value, source: source.into() });
    }

    fn finish(self) -> VerificationReport {
        let all_pass = self.checks.iter().all(|c| c.pass);
        let verdict = if all_pass {
            Verdict::Pass
        } else if self.hypothesis_failed {
            Verdict::HypothesisNotSatisfied
        } else {
            Verdict::Fail
        };
        VerificationReport {
            proposition: self.proposition,
            inputs: self.inputs,
            checks: self.checks,
            derived: self.derived,
            verdict,
        }
    }
}

fn cycles(perms: &[Permutation]) -> Vec<String> {
    perms.iter().map(ToString::to_string).collect()
}

fn check_degree(space: MixedRadix, budget: usize) -> Result<usize> {
    match space.checked_size() {
        Some(d) if d <= budget => Ok(d),
        Some(d) => Err(Error::DegreeBudgetExceeded { degree: d, budget }),
        None => Err(Error::DegreeBudgetExceeded { degree: usize::MAX, budget }),
    }
}

/// Decomposition, preservation, embedding, isomorphism and containment checks
/// shared by every pipeline. Returns whether all of them passed.
fn verify_embedding(
    b: &mut ReportBuilder,
    group: &PermGroup,
    eps: &CartesianDecomposition,
    opts: &CheckOptions,
) -> Result<bool> {
    let valid = b.check(
        "decomposition_valid",
        eps.is_cartesian_decomposition(),
        format!("{} partitions with block counts {:?}", eps.num_partitions(), eps.shape()),
    );
    if !valid {
        return Ok(false);
    }
    let homogeneous = eps.is_homogeneous()?;
    if !b.check("decomposition_homogeneous", homogeneous, "") {
        return Ok(false);
    }

    let induced = eps.preserved_by(group)?;
    let preserved = b.check(
        "group_preserves_decomposition",
        induced.is_some(),
        "every generator maps each partition to a partition",
    );
    let Some(induced) = induced else { return Ok(false) };
    b.derive("induced_partition_action", cycles(&induced), "preserves_decomposition");

    let witness = match wreath_embedding(group, eps) {
        Ok(w) => {
            b.check("embedding_constructed", true, "");
            w
        }
        Err(e) => {
            b.check("embedding_constructed", false, e.to_string());
            return Ok(false);
        }
    };
    let ctx = witness.context();
    b.derive("wreath_gamma_size", ctx.gamma_size(), "wreath_embedding");
    b.derive("wreath_delta_size", ctx.delta_size(), "wreath_embedding");

    let images = witness.materialized_images();
    let iso = is_permutational_isomorphism(group, &images, witness.point_bijection())?;
    let iso_ok = b.check(
        "permutational_isomorphism",
        iso.holds,
        format!("{:?} mode, {} elements checked", iso.mode, iso.elements_checked),
    );
    b.derive("isomorphism_mode", iso.mode, "is_permutational_isomorphism");

    let structural = images.iter().all(|x| ctx.contains(x));
    let mut inside = b.check(
        "image_in_full_wreath",
        structural,
        "every generator image decomposes as a base tuple and a top permutation",
    );
    if let Some(full_order) = ctx.full_group_order().filter(|&o| o <= opts.element_cap as u128) {
        let full = ctx.full_wreath_group(opts.element_cap)?;
        let contained = images.iter().try_fold(true, |acc, x| Ok::<_, Error>(acc && full.contains(x)?))?;
        inside &= b.check(
            "image_in_enumerated_full_wreath",
            contained,
            format!("membership in all {full_order} enumerated elements"),
        );
        b.derive("full_wreath_order", full.order()?, "full_wreath_group");
    }

    let natural_ok =
        b.check("image_preserves_natural_decomposition", image_preserves_natural_decomposition(&witness), "");

    let source_order = group.order()?;
    let image_order = witness.image_group().with_cap(opts.element_cap).order()?;
    let order_ok = b.check(
        "embedding_preserves_order",
        source_order == image_order,
        format!("|X| = {source_order}, |image| = {image_order}"),
    );
    b.derive("image_order", image_order, "group_closure");

    let top = witness.top_action().closure()?;
    b.derive("top_action_order", top.order()?, "group_closure");
    b.derive("top_action_generators", cycles(witness.top_action().generators()), "wreath_embedding");

    Ok(preserved && iso_ok && inside && natural_ok && order_ok)
}

/// `T = S^k` acting coordinate-wise on `Γ^k` with `S` regular on `Γ` embeds in
/// `Sym Γ wr S_k`.
pub fn check_regular_embedding(table: &CayleyTable, k: usize, opts: &CheckOptions) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("3.2");
    let s = table.order();
    b.input("group_order", s);
    b.input("k", k);
    b.input("gamma_size", s);
    let hyp_k = b.hypothesis("k_at_least_2", k >= 2, format!("k = {k}"));
    let hyp_g = b.hypothesis("gamma_at_least_2", s >= 2, format!("|Γ| = |S| = {s}"));
    if !(hyp_k && hyp_g) {
        return Ok(b.finish());
    }
    let space = MixedRadix::new(s, k);
    let degree = check_degree(space, opts.degree_budget)?;

    let s_regular = right_regular_representation(table).with_cap(opts.element_cap);
    let s_is_regular = s_regular.is_regular()?;
    b.check("s_regular_on_gamma", s_is_regular, format!("|S| = {}, |Γ| = {s}", s_regular.order()?));

    let mut t_gens = Vec::new();
    for i in 0..k {
        for g in s_regular.generators() {
            let images = (0..degree)
                .map(|p| {
                    let mut tuple = space.decode(p);
                    tuple[i] = g.apply(tuple[i]);
                    space.encode(&tuple)
                })
                .collect();
            t_gens.push(Permutation::from_images(images)?);
        }
    }
    let t = PermGroup::new(degree, t_gens)?.with_cap(opts.element_cap).closure()?;
    let t_order = t.order()?;
    b.derive("t_order", t_order, "group_closure");
    b.derive("omega_size", degree, "natural_cartesian_decomposition");
    b.check(
        "t_regular_on_omega",
        t.is_regular()? && t_order == degree,
        format!("|T| = {t_order}, |Γ^k| = {degree}"),
    );

    let (eps, _) = natural_cartesian_decomposition(s, k)?;
    verify_embedding(&mut b, &t, &eps, opts)?;
    Ok(b.finish())
}

/// The subgroup of `D(G, k)` generated by the generators preserving the natural
/// decomposition of `Γ^k` embeds in `Sym Γ wr S_k` with full top action.
pub fn check_diagonal_embedding(table: &CayleyTable, k: usize, opts: &CheckOptions) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("3.4");
    let g = table.order();
    b.input("group_order", g);
    b.input("k", k);
    b.input("gamma_size", g);
    let hyp_k = b.hypothesis("k_at_least_2", k >= 2, format!("k = {k}"));
    let hyp_g = b.hypothesis("group_nontrivial", g >= 2, format!("|G| = {g}"));
    if !(hyp_k && hyp_g) {
        return Ok(b.finish());
    }
    check_degree(MixedRadix::new(g, k), opts.degree_budget)?;

    let gens = coset_generators(table, k, opts.degree_budget)?;
    let (eps, _) = natural_cartesian_decomposition(g, k)?;
    let mut preserving = Vec::new();
    let mut by_family: BTreeMap<String, Vec<bool>> = BTreeMap::new();
    for (family, x) in &gens {
        let keeps = eps.induced_action(x)?.is_some();
        let name = serde_json::to_value(family).expect("family serializes");
        by_family.entry(name.as_str().unwrap_or_default().to_string()).or_default().push(keeps);
        if keeps {
            preserving.push(x.clone());
        }
    }
    b.derive("generator_preserves_decomposition", &by_family, "preserves_decomposition");
    let transposition_keeps = gens
        .iter()
        .filter(|(f, _)| *f == CosetFamily::HeadTransposition)
        .all(|(_, x)| matches!(eps.induced_action(x), Ok(Some(_))));
    b.derive("head_transposition_preserves_decomposition", transposition_keeps, "preserves_decomposition");

    let diagonal = PermGroup::new(eps.ground_size(), gens.iter().map(|(_, x)| x.clone()).collect())?
        .with_cap(opts.element_cap);
    b.derive("diagonal_group_order", diagonal.order()?, "group_closure");

    if !b.check("preserving_generators_found", !preserving.is_empty(), format!("{} generators", preserving.len())) {
        return Ok(b.finish());
    }
    let x = PermGroup::new(eps.ground_size(), preserving)?.with_cap(opts.element_cap).closure()?;
    b.derive("preserving_subgroup_order", x.order()?, "group_closure");

    if verify_embedding(&mut b, &x, &eps, opts)? {
        let witness = wreath_embedding(&x, &eps)?;
        let top_order = witness.top_action().order()?;
        let full: usize = (1..=k).product();
        b.check(
            "top_action_is_full_symmetric",
            top_order == full,
            format!("induced action on partitions has order {top_order}, |S_k| = {full}"),
        );
    }
    Ok(b.finish())
}

/// With `Γ = G` regular and a complement `O` of `Inn(G)` in `Aut(G)`, the group
/// `⟨M, D, S_n⟩` lies in `Sym Γ wr S_n`, preserves the natural decomposition,
/// and coincides with the diagonal-group generators (a), (c) restricted to
/// `O`, and (d).
pub fn check_complement_embedding(table: &CayleyTable, n: usize, opts: &CheckOptions) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("3.6");
    let g = table.order();
    b.input("group_order", g);
    b.input("n", n);
    b.input("gamma_size", g);
    let hyp_n = b.hypothesis("n_positive", n >= 1, format!("n = {n}"));
    let hyp_g = b.hypothesis("group_nontrivial", g >= 2, format!("|G| = {g}"));
    if !(hyp_n && hyp_g) {
        return Ok(b.finish());
    }
    check_degree(MixedRadix::new(g, n), opts.degree_budget)?;

    let aut = automorphism_group(table, opts.aut_order_bound)?;
    b.derive("aut_order", aut.order(), "automorphism_group");
    b.derive("inner_order", aut.num_inner(), "automorphism_group");
    let Some(complement) = aut.find_outer_complement() else {
        b.hypothesis("outer_complement_exists", false, "no subgroup of Aut(G) complements Inn(G)");
        return Ok(b.finish());
    };
    b.hypothesis("outer_complement_exists", true, "");
    b.derive("complement_order", complement.len(), "find_outer_complement");
    b.check(
        "complement_valid",
        aut.is_complement(&complement),
        format!("|O| = {}, |Inn| = {}, |Aut| = {}", complement.len(), aut.num_inner(), aut.order()),
    );

    let regular = right_regular_representation(table).with_cap(opts.element_cap);
    b.check("gamma_regular", regular.is_regular()?, "G acts regularly on itself by right multiplication");

    let sub = complement_subgroup(table, n, &complement, opts.degree_budget, opts.element_cap)?;
    let order = sub.group.order()?;
    let expected = g.pow(n as u32) * complement.len() * (1..=n).product::<usize>();
    b.derive("subgroup_order", order, "group_closure");
    b.check(
        "subgroup_order_is_product",
        order == expected,
        format!("|⟨M, D, S_n⟩| = {order}, |G|^n·|O|·n! = {expected}"),
    );

    let ctx = &sub.context;
    let all_inside = sub.generators.iter().all(|(_, w)| ctx.materialize(w).is_ok_and(|x| ctx.contains(&x)));
    b.check("generators_in_full_wreath", all_inside, format!("{} generators", sub.generators.len()));
    if let Some(full_order) = ctx.full_group_order().filter(|&o| o <= opts.element_cap as u128) {
        let full = ctx.full_wreath_group(opts.element_cap)?;
        let elements = sub.group.elements().expect("enumerated");
        let contained = elements.iter().try_fold(true, |acc, x| Ok::<_, Error>(acc && full.contains(x)?))?;
        b.check(
            "subgroup_inside_enumerated_full_wreath",
            contained,
            format!("{} elements against {full_order}", elements.len()),
        );
    }

    let families: FamilySet = "acd".parse().expect("valid family letters");
    let diagonal = diagonal_group_with_automorphisms(table, n, &families, &complement, opts.degree_budget)?
        .with_cap(opts.element_cap)
        .closure()?;
    b.derive("diagonal_families_order", diagonal.order()?, "group_closure");
    b.check(
        "matches_diagonal_families",
        diagonal.elements() == sub.group.elements(),
        "identical element sets on Γ^n under the identity bijection",
    );

    let (eps, _) = natural_cartesian_decomposition(g, n)?;
    verify_embedding(&mut b, &sub.group, &eps, opts)?;
    Ok(b.finish())
}

/// Cartesian-decomposition checks for a decomposition given on file.
pub fn check_decomposition(eps: &CartesianDecomposition) -> VerificationReport {
    let mut b = ReportBuilder::new("cartdec");
    b.input("ground_size", eps.ground_size());
    b.input("partitions", eps.num_partitions());
    let valid = b.check(
        "is_cartesian_decomposition",
        eps.is_cartesian_decomposition(),
        "≥ 2 blocks per partition and every block choice meets in one point",
    );
    b.derive("block_counts", eps.shape(), "partition_from_blocks");
    if valid {
        b.derive("homogeneous", eps.is_homogeneous().unwrap_or(false), "is_homogeneous");
        b.derive("trivial", eps.is_trivial(), "is_trivial");
    }
    b.finish()
}

/// Embedding checks for an arbitrary generator set and decomposition.
pub fn check_group_embedding(
    group: &PermGroup,
    eps: &CartesianDecomposition,
    opts: &CheckOptions,
) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("embed");
    b.input("degree", group.degree());
    b.input("generators", group.generators().len());
    b.input("partitions", eps.num_partitions());
    if !b.check(
        "degrees_match",
        group.degree() == eps.ground_size(),
        format!("group degree {}, ground set {}", group.degree(), eps.ground_size()),
    ) {
        return Ok(b.finish());
    }
    let group = group.clone().with_cap(opts.element_cap);
    b.derive("group_order", group.order()?, "group_closure");
    verify_embedding(&mut b, &group, eps, opts)?;
    Ok(b.finish())
}

/// `|Sym Γ wr Sym Δ|` by enumeration, alongside the closed form.
pub fn wreath_order(gamma: usize, k: usize, cap: usize) -> Result<Value> {
    let ctx = WreathContext::new(gamma, k)?;
    let order = ctx.full_wreath_group(cap)?.order()?;
    Ok(json!({
        "gamma": gamma,
        "k": k,
        "order": order,
        "source": "full_wreath_group",
    }))
}
