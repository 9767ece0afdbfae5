//! Homogeneous vector bundles described by their torus weights, and their
//! Chern classes as polynomials in the `e_i`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::chow::{ChowClass, FlagPresentation};
use crate::error::{Error, Result};
use crate::poly::{elementary_symmetric_of, Poly};
use crate::roots::{normal_bundle_roots, parabolic_positive_roots, ParabolicSubset, Weight};

/// A bundle given by its Chern roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousBundle {
    g: usize,
    weights: Vec<Weight>,
    name: String,
}

impl HomogeneousBundle {
    pub fn new(g: usize, weights: Vec<Weight>, name: impl Into<String>) -> Result<Self> {
        if g < 1 {
            return Err(Error::InvalidRank(g));
        }
        if let Some(w) = weights.iter().find(|w| w.rank() != g) {
            return Err(Error::AmbientMismatch {
                left: g,
                right: w.rank(),
            });
        }
        Ok(HomogeneousBundle {
            g,
            weights,
            name: name.into(),
        })
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn group_rank(&self) -> usize {
        self.g
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `c_0, ..., c_rank`.
    pub fn chern_classes(&self) -> Vec<Poly> {
        let forms: Vec<Poly> = self.weights.iter().map(Weight::to_poly).collect();
        let mut out = elementary_symmetric_of(self.g, &forms, forms.len());
        out.truncate(forms.len() + 1);
        out
    }

    pub fn chern_class(&self, k: usize) -> Result<Poly> {
        if k > self.rank() {
            return Err(Error::OutOfRange {
                what: "chern class index",
                value: k as i64,
                min: 0,
                max: self.rank() as i64,
            });
        }
        Ok(self.chern_classes().swap_remove(k))
    }

    pub fn top_chern_class(&self) -> Poly {
        self.chern_classes().pop().expect("c_0 always exists")
    }

    pub fn report(&self) -> BundleReport {
        BundleReport {
            name: self.name.clone(),
            g: self.g,
            rank: self.rank(),
            weights: self.weights.iter().map(Weight::to_string).collect(),
            chern_classes: self.chern_classes().iter().map(Poly::to_string).collect(),
        }
    }
}

impl fmt::Display for HomogeneousBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{", self.name)?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

/// Serializable summary of a bundle.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BundleReport {
    pub name: String,
    pub g: usize,
    pub rank: usize,
    pub weights: Vec<String>,
    pub chern_classes: Vec<String>,
}

/// Tangent bundle of `L_group / L_group ∩ P_parabolic`: roots of the group
/// Levi that are not roots of the parabolic.
pub fn relative_tangent_bundle(
    g: usize,
    group: &ParabolicSubset,
    parabolic: &ParabolicSubset,
) -> Result<HomogeneousBundle> {
    let inner = parabolic_positive_roots(g, parabolic)?;
    let weights = parabolic_positive_roots(g, group)?
        .into_iter()
        .filter(|a| !inner.contains(a))
        .collect();
    HomogeneousBundle::new(g, weights, "tangent")
}

/// Tangent bundle of `G/P_I`.
pub fn tangent_bundle(g: usize, i: &ParabolicSubset) -> Result<HomogeneousBundle> {
    relative_tangent_bundle(g, &ParabolicSubset::full(g)?, i)
}

/// Normal bundle of `L_J/L_J ∩ P_I` in `G/P_I`.
pub fn normal_bundle(
    g: usize,
    i: &ParabolicSubset,
    j: &ParabolicSubset,
) -> Result<HomogeneousBundle> {
    HomogeneousBundle::new(g, normal_bundle_roots(g, i, j)?, "normal")
}

/// The bundle with Chern roots `e_1, ..., e_g`; its Chern classes are the
/// `λ_i`.
pub fn hodge_bundle(g: usize) -> Result<HomogeneousBundle> {
    if g < 1 {
        return Err(Error::InvalidRank(g));
    }
    HomogeneousBundle::new(g, (0..g).map(|i| Weight::basis(g, i)).collect(), "hodge")
}

/// The weights of the standard representation, `±e_i`.
pub fn standard_weights(g: usize) -> Vec<Weight> {
    (0..g)
        .map(|i| Weight::basis(g, i))
        .chain((0..g).map(|i| Weight::basis(g, i).neg()))
        .collect()
}

/// Weights of the `P`-stable subspaces of a representation in which every
/// root vector moves a weight space onto the shifted weight whenever that
/// shift is again a weight. Here `P` is the parabolic whose tangent space
/// at the base point has weights `Φ^+ \ Φ_P^+`, so its Lie algebra holds
/// all negative roots and the positive roots of `Φ_P`. Returns the minimal
/// nonzero stable subsets.
pub fn minimal_stable_subsets(
    g: usize,
    weights: &[Weight],
    parabolic: &ParabolicSubset,
) -> Result<Vec<Vec<Weight>>> {
    let positive = crate::roots::positive_roots(g)?;
    let mut lie: Vec<Weight> = positive.iter().map(Weight::neg).collect();
    lie.extend(parabolic_positive_roots(g, parabolic)?);
    let closure = |start: &Weight| {
        let mut out = vec![start.clone()];
        let mut i = 0;
        while i < out.len() {
            for b in &lie {
                let next = out[i].add(b);
                if weights.contains(&next) && !out.contains(&next) {
                    out.push(next);
                }
            }
            i += 1;
        }
        out
    };
    let all: Vec<Vec<Weight>> = weights.iter().map(closure).collect();
    let min = all.iter().map(Vec::len).min().unwrap_or(0);
    let mut out: Vec<Vec<Weight>> = Vec::new();
    for mut c in all.into_iter().filter(|c| c.len() == min) {
        c.sort_by(|a, b| b.coords().cmp(a.coords()));
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// The bundle of the rank `g` subrepresentation of the dual standard
/// representation restricted to the Siegel parabolic. Its Chern classes
/// are `(-1)^i λ_i`.
pub fn hodge_representation_bundle(g: usize) -> Result<HomogeneousBundle> {
    let i = ParabolicSubset::siegel_i(g)?;
    let dual: Vec<Weight> = standard_weights(g).iter().map(Weight::neg).collect();
    let halves = minimal_stable_subsets(g, &dual, &i)?;
    match halves.as_slice() {
        [half] if half.len() == g => {
            let mut ws = half.clone();
            ws.sort_by_key(|w| w.coords().iter().position(|&c| c != 0));
            HomogeneousBundle::new(g, ws, "hodge-representation")
        }
        _ => Err(Error::Inconsistent(format!(
            "expected a unique stable subspace of rank {g}, found {halves:?}"
        ))),
    }
}

/// Looks a bundle up by name for the Siegel data of rank `g`.
pub fn named_bundle(g: usize, name: &str) -> Result<HomogeneousBundle> {
    let i = ParabolicSubset::siegel_i(g)?;
    match name {
        "tangent" => tangent_bundle(g, &i),
        "normal" => normal_bundle(g, &i, &ParabolicSubset::siegel_j(g)?),
        "hodge" => hodge_bundle(g),
        "hodge-representation" => hodge_representation_bundle(g),
        other => Err(Error::Unsupported(format!(
            "unknown bundle {other:?}; expected tangent, normal, hodge or hodge-representation"
        ))),
    }
}

/// Product of two polynomials in `t` given by coefficient lists.
fn multiply_in_t(a: &[Poly], b: &[Poly], nvars: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(nvars); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Whether `c_t(T_{G/P_I}) = c_t(N) · c_t(T_{L_J/L_J ∩ P_I})` in `S[t]`.
pub fn whitney_check(g: usize, i: &ParabolicSubset, j: &ParabolicSubset) -> Result<bool> {
    let ambient = tangent_bundle(g, i)?.chern_classes();
    let normal = normal_bundle(g, i, j)?.chern_classes();
    let sub = relative_tangent_bundle(g, j, &i.intersection(j))?.chern_classes();
    Ok(multiply_in_t(&normal, &sub, g) == ambient)
}

/// `c_g(N)` reduced in the Chow ring of the Levi flag variety.
pub fn normal_top_chern_in_levi(g: usize, levi: &Arc<FlagPresentation>) -> Result<ChowClass> {
    let i = ParabolicSubset::siegel_i(g)?;
    let j = ParabolicSubset::siegel_j(g)?;
    let n = normal_bundle(g, &i, &j)?;
    levi.normal_form(&n.top_chern_class())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::levi_presentation;
    use proptest::prelude::*;

    fn siegel(g: usize) -> ParabolicSubset {
        ParabolicSubset::siegel_i(g).unwrap()
    }

    fn names(b: &HomogeneousBundle) -> Vec<String> {
        b.weights().iter().map(Weight::to_string).collect()
    }

    #[test]
    fn tangent_examples() {
        let t1 = tangent_bundle(1, &siegel(1)).unwrap();
        assert_eq!(names(&t1), ["2e1"]);
        assert_eq!(t1.chern_class(1).unwrap().to_string(), "2*e1");
        let t2 = tangent_bundle(2, &siegel(2)).unwrap();
        let mut w = names(&t2);
        w.sort();
        assert_eq!(w, ["2e1", "2e2", "e1+e2"]);
        for g in 1..=5 {
            assert_eq!(tangent_bundle(g, &siegel(g)).unwrap().rank(), g * (g + 1) / 2);
        }
    }

    #[test]
    fn normal_examples() {
        let j = |g| ParabolicSubset::siegel_j(g).unwrap();
        assert_eq!(names(&normal_bundle(2, &siegel(2), &j(2)).unwrap()), ["2e1", "e1+e2"]);
        let mut w3 = names(&normal_bundle(3, &siegel(3), &j(3)).unwrap());
        w3.sort();
        assert_eq!(w3, ["2e1", "e1+e2", "e1+e3"]);
        for g in 1..=6 {
            assert_eq!(normal_bundle(g, &siegel(g), &j(g)).unwrap().rank(), g);
        }
        let n2 = normal_bundle(2, &siegel(2), &j(2)).unwrap();
        assert_eq!(n2.chern_class(2).unwrap().to_string(), "2*e1^2 + 2*e1*e2");
        assert_eq!(n2.chern_class(0).unwrap(), Poly::one(2));
        assert!(n2.chern_class(3).is_err());
    }

    #[test]
    fn hodge_classes_are_lambdas() {
        let h = hodge_bundle(3).unwrap();
        assert_eq!(names(&h), ["e1", "e2", "e3"]);
        assert_eq!(h.chern_class(3).unwrap().to_string(), "e1*e2*e3");
        assert_eq!(hodge_bundle(2).unwrap().chern_class(1).unwrap().to_string(), "e1 + e2");
        assert!(hodge_bundle(0).is_err());
    }

    #[test]
    fn hodge_representation_is_the_negative_half() {
        for g in 1..=5 {
            let b = hodge_representation_bundle(g).unwrap();
            let expected: Vec<Weight> = (0..g).map(|i| Weight::basis(g, i).neg()).collect();
            assert_eq!(b.weights(), expected.as_slice());
            let lam = hodge_bundle(g).unwrap().chern_classes();
            for (k, c) in b.chern_classes().iter().enumerate() {
                let want = if k % 2 == 0 { lam[k].clone() } else { -lam[k].clone() };
                assert_eq!(c, &want);
            }
        }
    }

    #[test]
    fn stable_subsets_of_the_standard_representation() {
        // Under the Borel every weight line generates a stable subspace; the
        // smallest one is the lowest weight line.
        let g = 2;
        let b = ParabolicSubset::empty(g).unwrap();
        let s = minimal_stable_subsets(g, &standard_weights(g), &b).unwrap();
        assert_eq!(s, vec![vec![Weight::basis(g, 0).neg()]]);
        // Under the whole group only the full representation is stable.
        let full = ParabolicSubset::full(g).unwrap();
        let s = minimal_stable_subsets(g, &standard_weights(g), &full).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].len(), 2 * g);
    }

    #[test]
    fn named_lookup() {
        assert_eq!(named_bundle(2, "normal").unwrap().rank(), 2);
        assert!(matches!(named_bundle(2, "cotangent"), Err(Error::Unsupported(_))));
    }

    #[test]
    fn whitney_up_to_six() {
        for g in 1..=6 {
            assert!(whitney_check(g, &siegel(g), &ParabolicSubset::siegel_j(g).unwrap()).unwrap());
        }
    }

    #[test]
    fn whitney_detects_a_wrong_split() {
        // Using the Borel in place of the Siegel parabolic breaks the split.
        let g = 3;
        let b = ParabolicSubset::empty(g).unwrap();
        let j = ParabolicSubset::siegel_j(g).unwrap();
        let ambient = tangent_bundle(g, &siegel(g)).unwrap().chern_classes();
        let normal = normal_bundle(g, &b, &j).unwrap().chern_classes();
        let sub = relative_tangent_bundle(g, &j, &siegel(g).intersection(&j))
            .unwrap()
            .chern_classes();
        assert_ne!(multiply_in_t(&normal, &sub, g), ambient);
    }

    #[test]
    fn top_chern_of_normal_vanishes_on_levi() {
        for g in 1..=6 {
            let levi = levi_presentation(g).unwrap();
            assert!(normal_top_chern_in_levi(g, &levi).unwrap().is_zero(), "g = {g}");
        }
    }

    #[test]
    fn lower_chern_classes_of_normal_survive() {
        // c_1(N) = (g+1) e_1 + λ̃_1 is not zero on the Levi flag variety.
        let g = 3;
        let levi = levi_presentation(g).unwrap();
        let n = named_bundle(g, "normal").unwrap();
        let c1 = levi.normal_form(&n.chern_class(1).unwrap()).unwrap();
        assert!(!c1.is_zero());
        assert_eq!(c1, levi.generator("lt1").unwrap());
    }

    proptest! {
        #[test]
        fn chern_classes_are_homogeneous_and_order_free(
            raw in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 0..5),
            rot in 0usize..5,
        ) {
            let ws: Vec<Weight> = raw.into_iter().map(Weight::new).collect();
            let b = HomogeneousBundle::new(3, ws.clone(), "x").unwrap();
            let mut shuffled = ws;
            if !shuffled.is_empty() {
                let r = rot % shuffled.len();
                shuffled.rotate_left(r);
                shuffled.reverse();
            }
            let b2 = HomogeneousBundle::new(3, shuffled, "y").unwrap();
            let c = b.chern_classes();
            prop_assert_eq!(c.len(), b.rank() + 1);
            prop_assert_eq!(&c, &b2.chern_classes());
            for (k, ck) in c.iter().enumerate() {
                prop_assert!(ck.is_homogeneous());
                if let Some(d) = ck.degree() {
                    prop_assert_eq!(d, k as u64);
                }
            }
        }
    }
}
