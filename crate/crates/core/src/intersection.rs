//! Degree maps, point classes, the Poincaré pairing and the pushforward of
//! the fundamental class of the Levi flag variety into the Lagrangian
//! Grassmannian.
//!
//! Integrals over `L_K/L_K ∩ P_M` use the lift rule
//! `∫ f = (1/|W_M|) ∫_{L_K/B_K} f·Π_{α∈Φ_M^+} α`, and on the full flag
//! variety `∫ h = A(h)/Δ_K` where `A` is the alternating sum over `W_K` and
//! `Δ_K` the product of the positive roots. The quotient is read off at the
//! leading monomial of `Δ_K`, so `Δ_K` is never expanded.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bundles::{hodge_representation_bundle, normal_bundle, tangent_bundle};
use crate::chow::{
    levi_presentation, pullback_images, pullback_with, siegel_presentation, ChowClass,
    FlagPresentation,
};
use crate::error::{Error, Result};
use crate::linalg::{dense_rank, solve_square};
use crate::poly::{Monomial, Poly, Rational};
use crate::roots::{parabolic_positive_roots, ParabolicSubset, Weight};
use crate::weyl::{divided_difference, enumerate, subgroup_order};

/// Product of linear forms, multiplying `e_i - e_j` with `e_i + e_j` first
/// so intermediate products stay small.
fn root_product(g: usize, roots: &[Weight]) -> Poly {
    let mut used = vec![false; roots.len()];
    let mut factors = Vec::new();
    for (a, x) in roots.iter().enumerate() {
        if used[a] {
            continue;
        }
        used[a] = true;
        let partner = roots.iter().enumerate().position(|(b, y)| {
            !used[b]
                && x.coords()
                    .iter()
                    .zip(y.coords())
                    .filter(|(p, q)| p != q)
                    .count()
                    == 1
                && x.add(y).coords().iter().filter(|&&c| c != 0).count() == 1
        });
        match partner {
            Some(b) => {
                used[b] = true;
                factors.push(&x.to_poly() * &roots[b].to_poly());
            }
            None => factors.push(x.to_poly()),
        }
    }
    factors
        .iter()
        .fold(Poly::one(g), |acc, f| &acc * f)
}

/// Leading monomial and coefficient of a product of positive roots. The
/// graded-lex order is multiplicative, and each root `e_i ± e_j` (`i < j`)
/// or `2e_i` leads with `e_i`.
fn leading_root_product(g: usize, roots: &[Weight]) -> (Monomial, Rational) {
    let mut exps = vec![0u32; g];
    let mut coeff = BigInt::one();
    for a in roots {
        let (i, c) = a
            .coords()
            .iter()
            .enumerate()
            .find(|(_, &c)| c != 0)
            .expect("roots are nonzero");
        exps[i] += 1;
        coeff *= BigInt::from(*c);
    }
    (Monomial::new(exps), Rational::from_integer(coeff))
}

/// `∫ f` over `L_K/L_K ∩ P_M` for the degree `dim` part of a polynomial in
/// the `e_i`, by the lift rule and the alternating sum over `W_K`.
pub fn integrate_polynomial(pres: &FlagPresentation, f: &Poly) -> Result<Rational> {
    let g = pres.rank();
    if f.nvars() != g {
        return Err(Error::AmbientMismatch {
            left: g,
            right: f.nvars(),
        });
    }
    let top = pres.top_degree() as u64;
    let f = f.homogeneous_component(top);
    if f.is_zero() {
        return Ok(Rational::zero());
    }
    let group_roots = parabolic_positive_roots(g, pres.group())?;
    let par_roots = parabolic_positive_roots(g, pres.parabolic())?;
    let (lead, lead_coeff) = leading_root_product(g, &group_roots);
    let delta_m = root_product(g, &par_roots);

    // Coefficient of `lead` in A(h), as a combination of coefficients of h.
    let mut weight: HashMap<Monomial, i64> = HashMap::new();
    for u in enumerate(pres.group()).elements() {
        let (neg, m) = u.act_on_monomial(&lead);
        let s = i64::from(u.sign()) * if neg { -1 } else { 1 };
        *weight.entry(m).or_insert(0) += s;
    }
    let mut alt = Rational::zero();
    for (m, w) in weight {
        if w == 0 {
            continue;
        }
        let mut hm = Rational::zero();
        for (n, c) in delta_m.terms() {
            if let Some(q) = n.quotient_of(&m) {
                hm += c * f.coefficient(&q);
            }
        }
        alt += hm * Rational::from_integer(BigInt::from(w));
    }
    let order = Rational::from_integer(BigInt::from(subgroup_order(pres.parabolic())));
    Ok(alt / lead_coeff / order)
}

/// The same integral computed with divided differences along a reduced word
/// of the longest element of `W_K`. Much slower; used as a cross-check.
pub fn integrate_polynomial_by_divided_differences(
    pres: &FlagPresentation,
    f: &Poly,
) -> Result<Rational> {
    let g = pres.rank();
    let top = pres.top_degree() as u64;
    let f = f.homogeneous_component(top);
    if f.is_zero() {
        return Ok(Rational::zero());
    }
    let par_roots = parabolic_positive_roots(g, pres.parabolic())?;
    let mut h = &f * &root_product(g, &par_roots);
    let group = enumerate(pres.group());
    let word = group.word(group.order() - 1);
    for &k in word.iter().rev() {
        h = divided_difference(k, &h)?;
    }
    if h.degree().unwrap_or(0) != 0 {
        return Err(Error::Inconsistent(format!(
            "divided differences left a nonconstant {h}"
        )));
    }
    let order = Rational::from_integer(BigInt::from(subgroup_order(pres.parabolic())));
    Ok(h.constant_term() / order)
}

/// `∫` of the basis element of the top degree.
pub fn top_integral(pres: &FlagPresentation) -> Result<Rational> {
    if let Some(v) = pres.top_integral.get() {
        return Ok(v.clone());
    }
    let top = pres.top_degree();
    let m = pres.basis_monomials(top)[0].clone();
    let n = pres.generators().len();
    let f = pres.expand_form(&Poly::term(n, m, Rational::one()));
    let v = integrate_polynomial(pres, &f)?;
    if v.is_zero() {
        return Err(Error::Inconsistent(
            "top degree basis element integrates to zero".into(),
        ));
    }
    Ok(pres.top_integral.get_or_init(|| v).clone())
}

/// Degree of a class: only its top degree part contributes.
pub fn integrate(x: &ChowClass) -> Result<Rational> {
    let pres = x.presentation();
    let top = pres.top_degree();
    let c = pres.coordinates(x, top);
    Ok(&c[0] * top_integral(pres)?)
}

/// The top degree class with integral one.
pub fn point_class(pres: &Arc<FlagPresentation>) -> Result<ChowClass> {
    let top = pres.top_degree();
    if pres.graded_dimension(top) != 1 {
        return Err(Error::Inconsistent(format!(
            "top degree piece has dimension {}",
            pres.graded_dimension(top)
        )));
    }
    let b = pres.basis(top).swap_remove(0);
    Ok(b.scale(&(Rational::one() / top_integral(pres)?)))
}

/// Matrix of `∫ b_i·b'_j` for bases of `A^d` and `A^{top-d}`.
#[derive(Clone, Debug)]
pub struct PairingMatrix {
    pub degree: usize,
    pub complement: usize,
    pub entries: Vec<Vec<Rational>>,
}

impl PairingMatrix {
    pub fn new(pres: &Arc<FlagPresentation>, d: usize) -> Result<Self> {
        let top = pres.top_degree();
        if d > top {
            return Err(Error::OutOfRange {
                what: "degree",
                value: d as i64,
                min: 0,
                max: top as i64,
            });
        }
        let left = pres.basis(d);
        let right = pres.basis(top - d);
        let entries = left
            .par_iter()
            .map(|x| right.iter().map(|y| integrate(&(x * y))).collect())
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        Ok(PairingMatrix {
            degree: d,
            complement: top - d,
            entries,
        })
    }

    pub fn is_square(&self) -> bool {
        self.entries.iter().all(|r| r.len() == self.entries.len())
    }

    pub fn rank(&self) -> usize {
        dense_rank(&self.entries)
    }

    pub fn is_nonsingular(&self) -> bool {
        self.is_square() && self.rank() == self.entries.len()
    }
}

/// The class of the sub flag variety together with its ratios to `λ_g` and
/// to the top Chern class of the Hodge representation bundle.
#[derive(Clone, Debug)]
pub struct PushforwardResult {
    pub class: ChowClass,
    /// `x = a·c_g(V(ρ_Hdg))`.
    pub a: Option<Rational>,
    /// `x = b·λ_g`.
    pub lambda_coefficient: Option<Rational>,
    pub proportional: bool,
}

impl PushforwardResult {
    /// `a ≠ 0` and `(-1)^g a > 0`.
    pub fn sign_ok(&self, g: usize) -> bool {
        match &self.a {
            Some(a) if !a.is_zero() => {
                if g.is_multiple_of(2) {
                    a.is_positive()
                } else {
                    a.is_negative()
                }
            }
            _ => false,
        }
    }
}

/// `ι_*(1)`: the unique `x` in `A^c(amb)`, `c` the codimension, with
/// `∫ x·y = ∫ ι*y` for every `y` of complementary degree.
pub fn pushforward_unit(
    amb: &Arc<FlagPresentation>,
    sub: &Arc<FlagPresentation>,
) -> Result<PushforwardResult> {
    let top = amb.top_degree();
    let codim = top
        .checked_sub(sub.top_degree())
        .ok_or_else(|| Error::PresentationMismatch("sub variety is larger".into()))?;
    let images = pullback_images(amb, sub)?;
    let pairing = PairingMatrix::new(amb, codim)?;
    if !pairing.is_nonsingular() {
        return Err(Error::SingularPairing(codim, top - codim));
    }
    let ys = amb.basis(top - codim);
    let rhs = ys
        .iter()
        .map(|y| integrate(&pullback_with(sub, &images, y)?))
        .collect::<Result<Vec<Rational>>>()?;
    // Solve Σ_i c_i ∫ b_i y_j = r_j, i.e. with the transposed matrix.
    let n = pairing.entries.len();
    let transposed: Vec<Vec<Rational>> = (0..n)
        .map(|j| (0..n).map(|i| pairing.entries[i][j].clone()).collect())
        .collect();
    let coords = solve_square(&transposed, &rhs)
        .map_err(|e| Error::NoSolution(format!("pushforward system: {e}")))?;
    let class = amb.from_coordinates(codim, &coords);
    let g = amb.rank();
    let (lambda_coefficient, a) = if codim == g {
        let lambda = amb.lambda(g)?;
        let b = class.ratio_to(&lambda);
        let a = match hodge_top_class(amb)? {
            Some(h) => class.ratio_to(&h),
            None => None,
        };
        (b, a)
    } else {
        (None, None)
    };
    Ok(PushforwardResult {
        proportional: lambda_coefficient.is_some(),
        class,
        a,
        lambda_coefficient,
    })
}

/// `c_g(V(ρ_Hdg))` in the ring of the Lagrangian Grassmannian; `None` for
/// other presentations.
pub fn hodge_top_class(amb: &Arc<FlagPresentation>) -> Result<Option<ChowClass>> {
    let g = amb.rank();
    let siegel = ParabolicSubset::siegel_i(g)?;
    if amb.parabolic() != &siegel || amb.group() != &ParabolicSubset::full(g)? {
        return Ok(None);
    }
    let h = hodge_representation_bundle(g)?;
    Ok(Some(amb.normal_form(&h.top_chern_class())?))
}

/// `ι*ι_*(1) = 0` in the sub ring and `c_g(N)` reduces to zero there.
pub fn self_intersection_check(
    amb: &Arc<FlagPresentation>,
    sub: &Arc<FlagPresentation>,
) -> Result<bool> {
    let g = amb.rank();
    let push = pushforward_unit(amb, sub)?;
    let images = pullback_images(amb, sub)?;
    let back = pullback_with(sub, &images, &push.class)?;
    let n = normal_bundle(g, amb.parabolic(), sub.group())?;
    let cg = sub.normal_form(&n.top_chern_class())?;
    Ok(back.is_zero() && cg.is_zero())
}

/// `∫ c_top(T)` over `G/P_I`.
pub fn euler_characteristic(pres: &Arc<FlagPresentation>) -> Result<Rational> {
    let t = tangent_bundle(pres.rank(), pres.parabolic())?;
    integrate(&pres.normal_form(&t.top_chern_class())?)
}

/// Outcome of the full pipeline at one rank.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TheoremReport {
    pub g: usize,
    pub dimension: usize,
    pub sub_dimension: usize,
    pub graded_dimensions: Vec<usize>,
    pub sub_graded_dimensions: Vec<usize>,
    pub normal_top_chern: String,
    pub normal_top_chern_reduced: String,
    pub pushforward: String,
    pub proportional: bool,
    pub a: Option<String>,
    pub lambda_coefficient: Option<String>,
    pub sign_ok: bool,
    pub pass: bool,
}

/// Computes `ι_*(1)` for the Siegel data of rank `g` and checks that it is
/// `a·λ_g` with `(-1)^g a > 0`.
pub fn verify_theorem(g: usize) -> Result<(PushforwardResult, TheoremReport)> {
    if g < 2 {
        return Err(Error::Precondition(format!(
            "rank {g}: the Levi subset Δ minus e1-e2 needs at least two simple roots"
        )));
    }
    let amb = siegel_presentation(g)?;
    let sub = levi_presentation(g)?;
    let n = normal_bundle(g, amb.parabolic(), sub.group())?;
    let cg = n.top_chern_class();
    let cg_reduced = sub.normal_form(&cg)?;
    let push = pushforward_unit(&amb, &sub)?;
    let sign_ok = push.sign_ok(g);
    let report = TheoremReport {
        g,
        dimension: amb.top_degree(),
        sub_dimension: sub.top_degree(),
        graded_dimensions: amb.graded_dimensions(),
        sub_graded_dimensions: sub.graded_dimensions(),
        normal_top_chern: cg.to_string(),
        normal_top_chern_reduced: cg_reduced.to_string(),
        pushforward: push.class.to_string(),
        proportional: push.proportional,
        a: push.a.as_ref().map(Rational::to_string),
        lambda_coefficient: push.lambda_coefficient.as_ref().map(Rational::to_string),
        sign_ok,
        pass: push.proportional && sign_ok && cg_reduced.is_zero(),
    };
    Ok((push, report))
}

/// The Siegel and Levi presentations at rank `g`, for callers that want to
/// run several checks on the same pair.
pub fn siegel_pair(g: usize) -> Result<(Arc<FlagPresentation>, Arc<FlagPresentation>)> {
    Ok((siegel_presentation(g)?, levi_presentation(g)?))
}

/// `ParabolicSubset` pair `(I, J)` for rank `g`.
pub fn siegel_subsets(g: usize) -> Result<(ParabolicSubset, ParabolicSubset)> {
    Ok((ParabolicSubset::siegel_i(g)?, ParabolicSubset::siegel_j(g)?))
}
