//! Presented Chow rings `A(L_K/L_K ∩ P_M) ≅ S^{W_M} / (S_+^{W_K})`.
//!
//! A [`FlagPresentation`] is determined by a group subset `K` (all of Δ for
//! `G` itself, `J` for the Levi) and a parabolic subset `M ⊆ K`. The
//! invariant ring `S^{W_M}` is a polynomial ring on block-wise elementary
//! symmetric functions (of the variables in type A blocks, of their squares
//! in the type C block); classes are stored as polynomials in these
//! generators. The ideal is generated by the fundamental invariants of
//! `W_K`, rewritten in the generators.
//!
//! Normal forms are computed degree by degree: the generator monomials of
//! weight `d` are ordered graded-lex, largest first, the multiples of the
//! relations of weight `d` are put in reduced row echelon form, and a class
//! is represented by its remainder. The remainder lives on the non-pivot
//! monomials, which therefore form the basis of `A^d`.
//!
//! Generator names: `l1..lg` are `σ_k(e_1..e_g)`, `lt1..` are
//! `σ_k(e_2..e_g)` (the Levi's Hodge classes; the same classes as
//! `σ_k(e_1..e_{g-1})` up to relabelling the variables), `e<i>` is a single
//! variable fixed by the parabolic subgroup, `s<k>_<a>_<b>` is `σ_k` of
//! `e_a..e_b` and `q<k>_<a>` is `σ_k` of the squares of `e_a..e_g`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{axpy, left_kernel, same_span, Coordinates, Echelon, SparseVec};
use crate::poly::{elementary_symmetric, elementary_symmetric_of, Monomial, Poly, Rational};
use crate::roots::{parabolic_positive_roots, BlockKind, ParabolicSubset};
use crate::weyl::{is_invariant, subgroup_order};

/// A polynomial generator of the invariant ring.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub expansion: Poly,
}

/// A generator of the relation ideal.
#[derive(Clone, Debug)]
pub struct Relation {
    /// The fundamental invariant in the variables `e_i`.
    pub invariant: Poly,
    /// The same element written in the generators.
    pub form: Poly,
    pub degree: u32,
}

#[derive(Debug)]
struct DegreePiece {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ideal: Echelon,
    basis: Vec<usize>,
}

/// Expresses invariant polynomials of one degree in the generators.
#[derive(Debug)]
struct Converter {
    columns: HashMap<Monomial, usize>,
    coords: Coordinates,
    monomials: Vec<Monomial>,
}

/// Cache key of a presentation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PresentationKey {
    pub group: ParabolicSubset,
    pub parabolic: ParabolicSubset,
}

/// The graded ring `S^{W_M}/(S_+^{W_K})` with per-degree reduction data.
#[derive(Debug)]
pub struct FlagPresentation {
    g: usize,
    key: PresentationKey,
    generators: Vec<Generator>,
    weights: Vec<u32>,
    names: Vec<String>,
    relations: Vec<Relation>,
    pieces: Vec<DegreePiece>,
    converters: RwLock<HashMap<u32, Arc<Converter>>>,
    pub(crate) top_integral: OnceLock<Rational>,
}

fn block_generators(g: usize, k: &ParabolicSubset, naming: bool) -> Vec<Generator> {
    let mut out = Vec::new();
    for b in k.blocks() {
        let n = b.vars.len();
        match b.kind {
            BlockKind::A => {
                let sig = crate::poly::elementary_symmetric_all(g, &b.vars, n);
                for (kk, s) in sig.into_iter().enumerate().skip(1) {
                    let name = if !naming {
                        String::new()
                    } else if n == g {
                        format!("l{kk}")
                    } else if g >= 2 && n == g - 1 && b.vars[0] == 1 {
                        format!("lt{kk}")
                    } else if n == 1 {
                        format!("e{}", b.vars[0] + 1)
                    } else {
                        format!("s{kk}_{}_{}", b.vars[0] + 1, b.vars[n - 1] + 1)
                    };
                    out.push(Generator {
                        name,
                        degree: kk as u32,
                        expansion: s,
                    });
                }
            }
            BlockKind::C => {
                let squares: Vec<Poly> = b
                    .vars
                    .iter()
                    .map(|&v| {
                        let x = Poly::var(g, v);
                        &x * &x
                    })
                    .collect();
                let sig = elementary_symmetric_of(g, &squares, n);
                for (kk, s) in sig.into_iter().enumerate().skip(1) {
                    out.push(Generator {
                        name: format!("q{kk}_{}", b.vars[0] + 1),
                        degree: 2 * kk as u32,
                        expansion: s,
                    });
                }
            }
        }
    }
    out
}

/// Fundamental invariants of `W_K`: block-wise elementary symmetric
/// functions, of squares on the type C block.
pub fn fundamental_invariants(k: &ParabolicSubset) -> Vec<Poly> {
    block_generators(k.rank(), k, false)
        .into_iter()
        .map(|gen| gen.expansion)
        .collect()
}

/// All monomials in variables with the given weights of weighted degree `d`,
/// in decreasing graded-lex order.
fn monomials_of_weight(weights: &[u32], d: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::new(cur.clone()));
            }
            return;
        }
        let w = weights[i];
        let max = left / w;
        for e in 0..=max {
            cur.push(e);
            rec(weights, i + 1, left - e * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, d, &mut Vec::with_capacity(weights.len()), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn expand_monomial(generators: &[Generator], g: usize, m: &Monomial) -> Poly {
    let mut acc = Poly::one(g);
    for (gen, &e) in generators.iter().zip(m.exponents()) {
        for _ in 0..e {
            acc = &acc * &gen.expansion;
        }
    }
    acc
}

impl DegreePiece {
    fn new(weights: &[u32], relations: &[Relation], d: u32) -> Self {
        let monomials = monomials_of_weight(weights, d);
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let width = monomials.len();
        let mut ideal = Echelon::new(width);
        'outer: for r in relations {
            if r.degree > d {
                continue;
            }
            for m in monomials_of_weight(weights, d - r.degree) {
                if ideal.rank() == width {
                    break 'outer;
                }
                let prod = r.form.mul_monomial(&m);
                let v: SparseVec = prod
                    .terms()
                    .map(|(mm, c)| (index[mm], c.clone()))
                    .collect();
                ideal.insert(v);
            }
        }
        let basis = (0..width).filter(|&c| !ideal.is_pivot(c)).collect();
        DegreePiece {
            monomials,
            index,
            ideal,
            basis,
        }
    }
}

type PresentationCache = RwLock<HashMap<PresentationKey, Arc<FlagPresentation>>>;

fn presentation_cache() -> &'static PresentationCache {
    static CACHE: OnceLock<PresentationCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Builds (or fetches from the process-wide cache) the presentation of
/// `A(L_group / L_group ∩ P_parabolic)`.
pub fn build_presentation(
    g: usize,
    group: &ParabolicSubset,
    parabolic: &ParabolicSubset,
) -> Result<Arc<FlagPresentation>> {
    if g < 1 {
        return Err(Error::InvalidRank(g));
    }
    if group.rank() != g || parabolic.rank() != g {
        return Err(Error::PresentationMismatch(format!(
            "subsets have rank {} and {}, expected {g}",
            group.rank(),
            parabolic.rank()
        )));
    }
    if !parabolic.is_subset(group) {
        return Err(Error::NotSubset {
            inner: parabolic.to_string(),
            outer: group.to_string(),
        });
    }
    let key = PresentationKey {
        group: group.clone(),
        parabolic: parabolic.clone(),
    };
    if let Some(hit) = presentation_cache().read().expect("cache poisoned").get(&key) {
        return Ok(Arc::clone(hit));
    }
    let built = Arc::new(FlagPresentation::construct(g, key.clone())?);
    let mut map = presentation_cache().write().expect("cache poisoned");
    Ok(Arc::clone(map.entry(key).or_insert(built)))
}

/// `A(G/P_I)` for the Siegel parabolic.
pub fn siegel_presentation(g: usize) -> Result<Arc<FlagPresentation>> {
    build_presentation(g, &ParabolicSubset::full(g)?, &ParabolicSubset::siegel_i(g)?)
}

/// `A(L_J / L_J ∩ P_I)` for the Siegel data.
pub fn levi_presentation(g: usize) -> Result<Arc<FlagPresentation>> {
    let i = ParabolicSubset::siegel_i(g)?;
    let j = ParabolicSubset::siegel_j(g)?;
    let ij = i.intersection(&j);
    build_presentation(g, &j, &ij)
}

/// `A(G/B)`.
pub fn full_flag_presentation(g: usize) -> Result<Arc<FlagPresentation>> {
    build_presentation(g, &ParabolicSubset::full(g)?, &ParabolicSubset::empty(g)?)
}

impl FlagPresentation {
    fn construct(g: usize, key: PresentationKey) -> Result<Self> {
        let generators = block_generators(g, &key.parabolic, true);
        let weights: Vec<u32> = generators.iter().map(|x| x.degree).collect();
        let names: Vec<String> = generators.iter().map(|x| x.name.clone()).collect();
        let top = parabolic_positive_roots(g, &key.group)?.len()
            - parabolic_positive_roots(g, &key.parabolic)?.len();
        let mut pres = FlagPresentation {
            g,
            key,
            generators,
            weights,
            names,
            relations: Vec::new(),
            pieces: Vec::new(),
            converters: RwLock::new(HashMap::new()),
            top_integral: OnceLock::new(),
        };
        let mut relations = Vec::new();
        for inv in fundamental_invariants(&pres.key.group) {
            let degree = inv.degree().expect("nonzero invariant") as u32;
            let form = pres.to_form(&inv)?;
            relations.push(Relation {
                invariant: inv,
                form,
                degree,
            });
        }
        pres.relations = relations;
        let weights = pres.weights.clone();
        let rels = &pres.relations;
        pres.pieces = (0..=top as u32)
            .into_par_iter()
            .map(|d| DegreePiece::new(&weights, rels, d))
            .collect();
        if pres.pieces[0].basis.len() != 1 || pres.pieces[top].basis.len() != 1 {
            return Err(Error::Inconsistent(format!(
                "degree 0 and top degree {top} must be one dimensional, found {} and {}",
                pres.pieces[0].basis.len(),
                pres.pieces[top].basis.len()
            )));
        }
        Ok(pres)
    }

    pub fn rank(&self) -> usize {
        self.g
    }

    pub fn key(&self) -> &PresentationKey {
        &self.key
    }

    pub fn group(&self) -> &ParabolicSubset {
        &self.key.group
    }

    pub fn parabolic(&self) -> &ParabolicSubset {
        &self.key.parabolic
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Dimension of the variety, i.e. the top degree.
    pub fn top_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn graded_dimension(&self, d: usize) -> usize {
        self.pieces.get(d).map_or(0, |p| p.basis.len())
    }

    pub fn graded_dimensions(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.basis.len()).collect()
    }

    pub fn total_dimension(&self) -> usize {
        self.pieces.iter().map(|p| p.basis.len()).sum()
    }

    /// `|W_group| / |W_parabolic|`, the number of torus fixed points.
    pub fn expected_total_dimension(&self) -> u128 {
        subgroup_order(&self.key.group) / subgroup_order(&self.key.parabolic)
    }

    /// Basis monomials (in the generators) of `A^d`.
    pub fn basis_monomials(&self, d: usize) -> Vec<&Monomial> {
        match self.pieces.get(d) {
            Some(p) => p.basis.iter().map(|&i| &p.monomials[i]).collect(),
            None => Vec::new(),
        }
    }

    /// Dimension of `A^d` recomputed from scratch for any `d`, including
    /// degrees above the top (where it must vanish).
    pub fn quotient_dimension_direct(&self, d: usize) -> usize {
        DegreePiece::new(&self.weights, &self.relations, d as u32)
            .basis
            .len()
    }

    fn converter(&self, d: u32) -> Arc<Converter> {
        if let Some(c) = self.converters.read().expect("poisoned").get(&d) {
            return Arc::clone(c);
        }
        let monomials = monomials_of_weight(&self.weights, d);
        let expansions: Vec<Poly> = monomials
            .iter()
            .map(|m| expand_monomial(&self.generators, self.g, m))
            .collect();
        let mut all: Vec<Monomial> = expansions
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
            .collect();
        all.sort_by(|a, b| b.cmp(a));
        all.dedup();
        let columns: HashMap<Monomial, usize> =
            all.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        let family: Vec<SparseVec> = expansions
            .iter()
            .map(|p| p.terms().map(|(m, c)| (columns[m], c.clone())).collect())
            .collect();
        let coords = Coordinates::new(&family, columns.len())
            .expect("generators of an invariant ring are algebraically independent");
        let conv = Arc::new(Converter {
            columns,
            coords,
            monomials,
        });
        let mut map = self.converters.write().expect("poisoned");
        Arc::clone(map.entry(d).or_insert(conv))
    }

    /// Rewrites a `W_parabolic`-invariant polynomial in the generators.
    pub fn to_form(&self, f: &Poly) -> Result<Poly> {
        if f.nvars() != self.g {
            return Err(Error::AmbientMismatch {
                left: self.g,
                right: f.nvars(),
            });
        }
        let mut out = Poly::zero(self.generators.len());
        let mut by_degree: HashMap<u64, Vec<(&Monomial, &Rational)>> = HashMap::new();
        for (m, c) in f.terms() {
            by_degree.entry(m.degree()).or_default().push((m, c));
        }
        let mut degrees: Vec<u64> = by_degree.keys().copied().collect();
        degrees.sort_unstable();
        for d in degrees {
            let conv = self.converter(d as u32);
            let mut v = SparseVec::new();
            for (m, c) in &by_degree[&d] {
                match conv.columns.get(*m) {
                    Some(&col) => {
                        v.insert(col, (*c).clone());
                    }
                    None => return Err(Error::NotInvariant(f.to_string())),
                }
            }
            let sol = conv
                .coords
                .solve(&v)
                .ok_or_else(|| Error::NotInvariant(f.to_string()))?;
            for (m, c) in conv.monomials.iter().zip(sol) {
                out.add_term(m.clone(), c);
            }
        }
        Ok(out)
    }

    /// Expands a generator polynomial back into the variables `e_i`.
    pub fn expand_form(&self, form: &Poly) -> Poly {
        let mut out = Poly::zero(self.g);
        for (m, c) in form.terms() {
            let t = expand_monomial(&self.generators, self.g, m).scale(c);
            out = &out + &t;
        }
        out
    }

    fn weighted_degree(&self, m: &Monomial) -> usize {
        m.weighted_degree(&self.weights) as usize
    }

    /// Canonical remainder of a generator polynomial.
    pub fn reduce_form(&self, form: &Poly) -> Poly {
        let n = self.generators.len();
        assert_eq!(form.nvars(), n, "form has wrong number of generators");
        let mut per_degree: Vec<SparseVec> = vec![SparseVec::new(); self.pieces.len()];
        for (m, c) in form.terms() {
            let d = self.weighted_degree(m);
            if d < self.pieces.len() {
                let col = self.pieces[d].index[m];
                axpy(
                    &mut per_degree[d],
                    &Rational::one(),
                    &SparseVec::from([(col, c.clone())]),
                );
            }
        }
        let mut out = Poly::zero(n);
        for (d, v) in per_degree.into_iter().enumerate() {
            if v.is_empty() {
                continue;
            }
            let piece = &self.pieces[d];
            for (col, c) in piece.ideal.reduce(&v) {
                out.add_term(piece.monomials[col].clone(), c);
            }
        }
        out
    }

    /// The class of a generator polynomial.
    pub fn class_of_form(self: &Arc<Self>, form: &Poly) -> ChowClass {
        ChowClass {
            pres: Arc::clone(self),
            form: self.reduce_form(form),
        }
    }

    /// Characteristic map: the class of a `W_parabolic`-invariant polynomial
    /// in the variables `e_i`.
    pub fn normal_form(self: &Arc<Self>, f: &Poly) -> Result<ChowClass> {
        if f.nvars() != self.g {
            return Err(Error::AmbientMismatch {
                left: self.g,
                right: f.nvars(),
            });
        }
        if !is_invariant(f, &self.key.parabolic)? {
            return Err(Error::NotInvariant(f.to_string()));
        }
        // Components above the top degree lie in the ideal.
        let top = self.top_degree() as u64;
        let mut low = Poly::zero(self.g);
        for (m, c) in f.terms() {
            if m.degree() <= top {
                low.add_term(m.clone(), c.clone());
            }
        }
        let form = self.to_form(&low)?;
        Ok(self.class_of_form(&form))
    }

    pub fn zero(self: &Arc<Self>) -> ChowClass {
        ChowClass {
            pres: Arc::clone(self),
            form: Poly::zero(self.generators.len()),
        }
    }

    pub fn one(self: &Arc<Self>) -> ChowClass {
        self.class_of_form(&Poly::one(self.generators.len()))
    }

    /// Class of the named generator.
    pub fn generator(self: &Arc<Self>, name: &str) -> Option<ChowClass> {
        let i = self.names.iter().position(|x| x == name)?;
        Some(self.class_of_form(&Poly::var(self.generators.len(), i)))
    }

    /// `λ_k = σ_k(e_1, ..., e_g)`.
    pub fn lambda(self: &Arc<Self>, k: usize) -> Result<ChowClass> {
        let vars: Vec<usize> = (0..self.g).collect();
        self.normal_form(&elementary_symmetric(self.g, k, &vars)?)
    }

    /// Basis classes of `A^d`.
    pub fn basis(self: &Arc<Self>, d: usize) -> Vec<ChowClass> {
        let n = self.generators.len();
        self.basis_monomials(d)
            .into_iter()
            .map(|m| ChowClass {
                pres: Arc::clone(self),
                form: Poly::term(n, m.clone(), Rational::one()),
            })
            .collect()
    }

    /// Coordinates of the degree `d` part of `x` in the basis of `A^d`.
    pub fn coordinates(&self, x: &ChowClass, d: usize) -> Vec<Rational> {
        match self.pieces.get(d) {
            None => Vec::new(),
            Some(piece) => piece
                .basis
                .iter()
                .map(|&col| x.form.coefficient(&piece.monomials[col]))
                .collect(),
        }
    }

    /// Class with the given coordinates in `A^d`.
    pub fn from_coordinates(self: &Arc<Self>, d: usize, coords: &[Rational]) -> ChowClass {
        let mut form = Poly::zero(self.generators.len());
        if let Some(piece) = self.pieces.get(d) {
            for (&col, c) in piece.basis.iter().zip(coords) {
                form.add_term(piece.monomials[col].clone(), c.clone());
            }
        }
        ChowClass {
            pres: Arc::clone(self),
            form,
        }
    }

    /// Spanning vectors (in generator-monomial coordinates) of the degree
    /// `d` part of the ideal generated by `gens`, which are given as
    /// generator polynomials. Used to compare generating sets.
    pub fn ideal_span(&self, gens: &[Poly], d: usize) -> Vec<SparseVec> {
        let Some(piece) = self.pieces.get(d) else {
            return Vec::new();
        };
        let mut rows = Vec::new();
        for r in gens {
            for (part_deg, part) in split_by_weight(r, &self.weights) {
                if part_deg > d {
                    continue;
                }
                for m in monomials_of_weight(&self.weights, (d - part_deg) as u32) {
                    let prod = part.mul_monomial(&m);
                    rows.push(
                        prod.terms()
                            .map(|(mm, c)| (piece.index[mm], c.clone()))
                            .collect(),
                    );
                }
            }
        }
        rows
    }

    /// Number of generator monomials of weight `d`.
    pub fn monomial_count(&self, d: usize) -> usize {
        self.pieces.get(d).map_or(0, |p| p.monomials.len())
    }

    pub fn report(&self) -> PresentationReport {
        let names = &self.names;
        PresentationReport {
            g: self.g,
            group: subset_names(&self.key.group),
            parabolic: subset_names(&self.key.parabolic),
            generators: self
                .generators
                .iter()
                .map(|x| GeneratorReport {
                    name: x.name.clone(),
                    degree: x.degree,
                    expansion: x.expansion.to_string(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| r.form.to_string_with(names))
                .collect(),
            top_degree: self.top_degree(),
            graded_dimensions: self.graded_dimensions(),
            total_dimension: self.total_dimension(),
            basis: (0..=self.top_degree())
                .map(|d| {
                    self.basis_monomials(d)
                        .into_iter()
                        .map(|m| {
                            Poly::term(self.generators.len(), m.clone(), Rational::one())
                                .to_string_with(names)
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

fn split_by_weight(p: &Poly, weights: &[u32]) -> Vec<(usize, Poly)> {
    let mut parts: std::collections::BTreeMap<usize, Poly> = Default::default();
    for (m, c) in p.terms() {
        parts
            .entry(m.weighted_degree(weights) as usize)
            .or_insert_with(|| Poly::zero(p.nvars()))
            .add_term(m.clone(), c.clone());
    }
    parts.into_iter().collect()
}

pub fn subset_names(k: &ParabolicSubset) -> Vec<String> {
    k.indices()
        .map(|i| crate::roots::simple_root(k.rank(), i).to_string())
        .collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GeneratorReport {
    pub name: String,
    pub degree: u32,
    pub expansion: String,
}

/// Structured export of a presentation.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PresentationReport {
    pub g: usize,
    pub group: Vec<String>,
    pub parabolic: Vec<String>,
    pub generators: Vec<GeneratorReport>,
    pub relations: Vec<String>,
    pub top_degree: usize,
    pub graded_dimensions: Vec<usize>,
    pub total_dimension: usize,
    pub basis: Vec<Vec<String>>,
}

/// An element of a presented Chow ring, stored as a fully reduced
/// polynomial in the presentation's generators.
#[derive(Clone, Debug)]
pub struct ChowClass {
    pres: Arc<FlagPresentation>,
    form: Poly,
}

impl PartialEq for ChowClass {
    fn eq(&self, other: &Self) -> bool {
        self.pres.key == other.pres.key && self.form == other.form
    }
}

impl Eq for ChowClass {}

impl ChowClass {
    pub fn presentation(&self) -> &Arc<FlagPresentation> {
        &self.pres
    }

    /// Normal form in the generators.
    pub fn form(&self) -> &Poly {
        &self.form
    }

    /// Normal-form representative in the variables `e_i`.
    pub fn representative(&self) -> Poly {
        self.pres.expand_form(&self.form)
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    /// Degree of a nonzero homogeneous class.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.form.terms().map(|(m, _)| self.pres.weighted_degree(m));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn homogeneous_part(&self, d: usize) -> ChowClass {
        let mut form = Poly::zero(self.form.nvars());
        for (m, c) in self.form.terms() {
            if self.pres.weighted_degree(m) == d {
                form.add_term(m.clone(), c.clone());
            }
        }
        ChowClass {
            pres: Arc::clone(&self.pres),
            form,
        }
    }

    fn check_same(&self, other: &ChowClass) -> Result<()> {
        if self.pres.key != other.pres.key {
            return Err(Error::PresentationMismatch(
                "classes live in different rings".into(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check_same(other)?;
        Ok(ChowClass {
            pres: Arc::clone(&self.pres),
            form: &self.form + &other.form,
        })
    }

    pub fn checked_sub(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check_same(other)?;
        Ok(ChowClass {
            pres: Arc::clone(&self.pres),
            form: &self.form - &other.form,
        })
    }

    pub fn checked_mul(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check_same(other)?;
        let top = self.pres.top_degree();
        let w = &self.pres.weights;
        let prod = self
            .form
            .mul_filtered(&other.form, |m| m.weighted_degree(w) as usize <= top);
        Ok(self.pres.class_of_form(&prod))
    }

    pub fn scale(&self, c: &Rational) -> ChowClass {
        ChowClass {
            pres: Arc::clone(&self.pres),
            form: self.form.scale(c),
        }
    }

    pub fn pow(&self, k: u32) -> ChowClass {
        let mut acc = self.pres.one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// If `self = a * other` for a rational `a`, returns `a`.
    pub fn ratio_to(&self, other: &ChowClass) -> Option<Rational> {
        if other.is_zero() {
            return self.is_zero().then(Rational::zero);
        }
        let (m, c) = other.form.leading_term()?;
        let a = self.form.coefficient(m) / c;
        (self.form == other.form.scale(&a)).then_some(a)
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form.display_with(&self.pres.names))
    }
}

impl<'a> Add<&'a ChowClass> for &'a ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: &ChowClass) -> ChowClass {
        self.checked_add(rhs).expect("classes in different rings")
    }
}

impl<'a> Sub<&'a ChowClass> for &'a ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self.checked_sub(rhs).expect("classes in different rings")
    }
}

impl<'a> Mul<&'a ChowClass> for &'a ChowClass {
    type Output = ChowClass;
    fn mul(self, rhs: &ChowClass) -> ChowClass {
        self.checked_mul(rhs).expect("classes in different rings")
    }
}

fn check_pullback_pair(amb: &FlagPresentation, sub: &FlagPresentation) -> Result<()> {
    if amb.g != sub.g {
        return Err(Error::PresentationMismatch(format!(
            "ranks differ: {} vs {}",
            amb.g, sub.g
        )));
    }
    let expected_par = amb.key.parabolic.intersection(&sub.key.group);
    if !sub.key.group.is_subset(&amb.key.group) || sub.key.parabolic != expected_par {
        return Err(Error::PresentationMismatch(format!(
            "({}, {}) is not a standard sub flag variety of ({}, {})",
            sub.key.group, sub.key.parabolic, amb.key.group, amb.key.parabolic
        )));
    }
    Ok(())
}

/// Images of the ambient generators in the sub presentation's generators.
pub fn pullback_images(amb: &FlagPresentation, sub: &FlagPresentation) -> Result<Vec<Poly>> {
    check_pullback_pair(amb, sub)?;
    amb.generators
        .iter()
        .map(|gen| sub.to_form(&gen.expansion))
        .collect()
}

/// Pullback along `L_K/L_K ∩ P_M ↪ G/P_M`: the same invariant polynomial,
/// reduced modulo the larger ideal of the sub flag variety.
pub fn pullback_iota(
    amb: &Arc<FlagPresentation>,
    sub: &Arc<FlagPresentation>,
    x: &ChowClass,
) -> Result<ChowClass> {
    if x.pres.key != amb.key {
        return Err(Error::PresentationMismatch(
            "class does not live in the ambient ring".into(),
        ));
    }
    let images = pullback_images(amb, sub)?;
    pullback_with(sub, &images, x)
}

pub(crate) fn pullback_with(
    sub: &Arc<FlagPresentation>,
    images: &[Poly],
    x: &ChowClass,
) -> Result<ChowClass> {
    if x.form.is_zero() {
        return Ok(sub.zero());
    }
    let form = x.form.substitute(images)?;
    Ok(sub.class_of_form(&form))
}

/// Matrix of the pullback on degree `d`: row `i` holds the coordinates of
/// the image of the `i`-th ambient basis class.
pub fn pullback_matrix(
    amb: &Arc<FlagPresentation>,
    sub: &Arc<FlagPresentation>,
    d: usize,
) -> Result<Vec<SparseVec>> {
    let images = pullback_images(amb, sub)?;
    amb.basis(d)
        .iter()
        .map(|b| {
            let y = pullback_with(sub, &images, b)?;
            Ok(crate::linalg::to_sparse(&sub.coordinates(&y, d)))
        })
        .collect()
}

/// Degreewise outcome of the kernel/surjectivity check.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KernelDegree {
    pub degree: usize,
    pub source_dimension: usize,
    pub target_dimension: usize,
    pub rank: usize,
    pub kernel_dimension: usize,
    pub ideal_dimension: usize,
    pub surjective: bool,
    pub kernel_matches: bool,
}

/// Per-degree comparison of `ker(ι*)` with `(λ_g)` and of `rank ι*` with
/// `dim A^d` of the sub flag variety.
pub fn kernel_report(
    amb: &Arc<FlagPresentation>,
    sub: &Arc<FlagPresentation>,
    max_degree: usize,
) -> Result<Vec<KernelDegree>> {
    let g = amb.g;
    let lambda_g = amb.lambda(g)?;
    let mut out = Vec::new();
    for d in 0..=max_degree.min(amb.top_degree()) {
        let rows = pullback_matrix(amb, sub, d)?;
        let target = sub.graded_dimension(d);
        let kernel = left_kernel(&rows, target);
        let rank = rows.len() - kernel.len();
        let ideal: Vec<SparseVec> = if d >= g {
            amb.basis(d - g)
                .iter()
                .map(|b| crate::linalg::to_sparse(&amb.coordinates(&(&lambda_g * b), d)))
                .collect()
        } else {
            Vec::new()
        };
        let source = amb.graded_dimension(d);
        let ideal_dimension = crate::linalg::rank(&ideal, source);
        out.push(KernelDegree {
            degree: d,
            source_dimension: source,
            target_dimension: target,
            rank,
            kernel_dimension: kernel.len(),
            ideal_dimension,
            surjective: rank == target,
            kernel_matches: same_span(&kernel, &ideal, source),
        });
    }
    Ok(out)
}

/// Whether, in every degree up to `max_degree`, the kernel of the pullback
/// equals the degree piece of the ideal `(λ_g)`.
pub fn kernel_generator_check(
    amb: &Arc<FlagPresentation>,
    sub: &Arc<FlagPresentation>,
    max_degree: usize,
) -> Result<bool> {
    Ok(kernel_report(amb, sub, max_degree)?
        .iter()
        .all(|k| k.kernel_matches))
}

/// `(1 + σ_1 + ... + σ_n)(1 - σ_1 + ... + (-1)^n σ_n) - 1` for the
/// elementary symmetric functions `σ_k` of the chosen variables.
pub fn master_relation(g: usize, vars: &[usize]) -> Poly {
    let sig = crate::poly::elementary_symmetric_all(g, vars, vars.len());
    let mut plus = Poly::zero(g);
    let mut minus = Poly::zero(g);
    for (k, s) in sig.iter().enumerate() {
        plus = &plus + s;
        minus = if k % 2 == 0 { &minus + s } else { &minus - s };
    }
    &(&plus * &minus) - &Poly::one(g)
}

/// Checks `(-1)^l σ_l(x_1^2..x_g^2) = Σ_{i+j=2l} (-1)^j σ_i σ_j` exactly.
pub fn verify_symmetric_identity(g: usize, l: usize) -> Result<bool> {
    if g < 1 {
        return Err(Error::InvalidRank(g));
    }
    if l < 1 || l >= g {
        return Err(Error::OutOfRange {
            what: "l",
            value: l as i64,
            min: 1,
            max: g as i64 - 1,
        });
    }
    let (lhs, rhs) = symmetric_identity_sides(g, l);
    Ok(lhs == rhs)
}

/// Both sides of the identity, for reporting.
pub fn symmetric_identity_sides(g: usize, l: usize) -> (Poly, Poly) {
    let vars: Vec<usize> = (0..g).collect();
    let sig = crate::poly::elementary_symmetric_all(g, &vars, g);
    let squares: Vec<Poly> = vars
        .iter()
        .map(|&v| {
            let x = Poly::var(g, v);
            &x * &x
        })
        .collect();
    let sq = elementary_symmetric_of(g, &squares, l).swap_remove(l);
    let lhs = if l.is_multiple_of(2) { sq } else { -sq };
    let mut rhs = Poly::zero(g);
    for i in 0..=(2 * l).min(g) {
        let j = 2 * l - i;
        if j > g {
            continue;
        }
        let t = &sig[i] * &sig[j];
        rhs = if j.is_multiple_of(2) { &rhs + &t } else { &rhs - &t };
    }
    (lhs, rhs)
}
