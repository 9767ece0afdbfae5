//! The Weyl group of C_g as signed permutations, its parabolic subgroups and
//! their actions on weights and polynomials.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::roots::{positive_roots, simple_root, ParabolicSubset, Weight};

/// `w(e_i) = signs[i] * e_{perm[i]}` (zero based).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(g: usize) -> Self {
        SignedPermutation {
            perm: (0..g).collect(),
            signs: vec![1; g],
        }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let g = perm.len();
        let mut seen = vec![false; g];
        for &p in &perm {
            if p >= g || seen[p] {
                return Err(Error::Precondition(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if signs.len() != g || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Precondition(format!("bad sign vector {signs:?}")));
        }
        Ok(SignedPermutation { perm, signs })
    }

    /// `-1` on the character lattice.
    pub fn negation(g: usize) -> Self {
        SignedPermutation {
            perm: (0..g).collect(),
            signs: vec![-1; g],
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let signs = other
            .perm
            .iter()
            .zip(&other.signs)
            .map(|(&j, &s)| s * self.signs[j])
            .collect();
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let g = self.rank();
        let mut perm = vec![0; g];
        let mut signs = vec![1; g];
        for i in 0..g {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    /// Determinant of the action on the character lattice, i.e. `(-1)^length`.
    pub fn sign(&self) -> i8 {
        let g = self.rank();
        let mut visited = vec![false; g];
        let mut s: i8 = self.signs.iter().product();
        for start in 0..g {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.perm[i];
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    pub fn act_on_weight(&self, v: &Weight) -> Result<Weight> {
        if v.rank() != self.rank() {
            return Err(Error::AmbientMismatch {
                left: self.rank(),
                right: v.rank(),
            });
        }
        let mut out = vec![0; self.rank()];
        for (i, &c) in v.coords().iter().enumerate() {
            out[self.perm[i]] = i64::from(self.signs[i]) * c;
        }
        Ok(Weight::new(out))
    }

    /// Image of a monomial as `(negated, monomial)`.
    pub fn act_on_monomial(&self, m: &Monomial) -> (bool, Monomial) {
        let mut out = vec![0; self.rank()];
        let mut neg = false;
        for (i, &e) in m.exponents().iter().enumerate() {
            out[self.perm[i]] = e;
            if self.signs[i] < 0 && e % 2 == 1 {
                neg = !neg;
            }
        }
        (neg, Monomial::new(out))
    }

    pub fn act_on_poly(&self, f: &Poly) -> Result<Poly> {
        if f.nvars() != self.rank() {
            return Err(Error::AmbientMismatch {
                left: self.rank(),
                right: f.nvars(),
            });
        }
        Ok(f.map_monomials(|m| self.act_on_monomial(m)))
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        positive_roots(self.rank())
            .expect("rank >= 1")
            .iter()
            .filter(|a| {
                let b = self.act_on_weight(a).expect("same rank");
                b.coords().iter().find(|&&c| c != 0).is_some_and(|&c| c < 0)
            })
            .count()
    }

    /// The permutation of `{1..2g}` acting on the torus coordinates
    /// `t_1, ..., t_g, t_g^{-1}, ..., t_1^{-1}` (one based).
    pub fn to_two_g_permutation(&self) -> Vec<usize> {
        let g = self.rank();
        let n = 2 * g;
        let mut out = vec![0; n];
        for i in 0..g {
            let img = if self.signs[i] > 0 {
                self.perm[i] + 1
            } else {
                n - self.perm[i]
            };
            out[i] = img;
            out[n - 1 - i] = n + 1 - img;
        }
        out
    }

    /// Inverse of [`Self::to_two_g_permutation`]; rejects permutations that
    /// violate `σ(i) + σ(2g+1-i) = 2g+1`.
    pub fn from_two_g_permutation(sigma: &[usize]) -> Result<Self> {
        let n = sigma.len();
        if n == 0 || n % 2 == 1 {
            return Err(Error::Precondition("length must be even and positive".into()));
        }
        let g = n / 2;
        let mut seen = vec![false; n + 1];
        for &s in sigma {
            if s == 0 || s > n || seen[s] {
                return Err(Error::Precondition(format!("{sigma:?} is not a permutation")));
            }
            seen[s] = true;
        }
        for i in 0..g {
            if sigma[i] + sigma[n - 1 - i] != n + 1 {
                return Err(Error::Precondition(format!(
                    "{sigma:?} does not commute with the symplectic involution"
                )));
            }
        }
        let mut perm = vec![0; g];
        let mut signs = vec![1; g];
        for i in 0..g {
            if sigma[i] <= g {
                perm[i] = sigma[i] - 1;
            } else {
                perm[i] = n - sigma[i];
                signs[i] = -1;
            }
        }
        SignedPermutation::new(perm, signs)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rank() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let s = if self.signs[i] < 0 { "-" } else { "" };
            write!(f, "{s}{}", self.perm[i] + 1)?;
        }
        f.write_str("]")
    }
}

/// The reflection in the `k`-th simple root (zero based).
pub fn simple_reflection(g: usize, k: usize) -> Result<SignedPermutation> {
    if g < 1 {
        return Err(Error::InvalidRank(g));
    }
    if k >= g {
        return Err(Error::InvalidRootIndex { index: k, rank: g });
    }
    let mut w = SignedPermutation::identity(g);
    if k + 1 < g {
        w.perm.swap(k, k + 1);
    } else {
        w.signs[k] = -1;
    }
    Ok(w)
}

/// Evaluates a word in simple reflections, e.g. `"s1 s2 s1"`. The words
/// `"id"` and `""` denote the identity.
pub fn parse_word(g: usize, s: &str) -> Result<SignedPermutation> {
    let mut w = SignedPermutation::identity(g);
    let trimmed = s.trim();
    if trimmed.is_empty() || trimmed == "id" {
        return Ok(w);
    }
    let mut pos = 0;
    for tok in trimmed.split_whitespace() {
        let idx = tok
            .strip_prefix('s')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&k| k >= 1)
            .ok_or_else(|| Error::Parse {
                pos,
                msg: format!("expected a generator 's<k>', found '{tok}'"),
            })?;
        w = w.compose(&simple_reflection(g, idx - 1)?);
        pos += tok.len() + 1;
    }
    Ok(w)
}

pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "id".to_string();
    }
    word.iter()
        .map(|k| format!("s{}", k + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Serializable description of one group element.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ElementRecord {
    pub word: String,
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

/// A parabolic subgroup `W_K` with all its elements enumerated.
///
/// Elements are ordered by length and then lexicographically by their
/// recorded reduced word; the identity comes first and the longest element
/// last.
#[derive(Debug)]
pub struct WeylSubgroup {
    rank: usize,
    subset: ParabolicSubset,
    elements: Vec<SignedPermutation>,
    words: Vec<Vec<usize>>,
}

impl WeylSubgroup {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn subset(&self) -> &ParabolicSubset {
        &self.subset
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    /// A reduced word for the `i`-th element (zero-based generator indices).
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn record(&self, i: usize) -> ElementRecord {
        let w = &self.elements[i];
        ElementRecord {
            word: format_word(&self.words[i]),
            perm: w.perm().iter().map(|p| p + 1).collect(),
            signs: w.signs().to_vec(),
        }
    }

    pub fn generators(&self) -> Vec<SignedPermutation> {
        self.subset
            .indices()
            .map(|k| simple_reflection(self.rank, k).expect("valid index"))
            .collect()
    }

    pub fn longest(&self) -> &SignedPermutation {
        self.elements.last().expect("group is nonempty")
    }
}

fn generate(k: &ParabolicSubset) -> WeylSubgroup {
    let g = k.rank();
    let gens: Vec<(usize, SignedPermutation)> = k
        .indices()
        .map(|i| (i, simple_reflection(g, i).expect("valid index")))
        .collect();
    let id = SignedPermutation::identity(g);
    let mut seen: HashSet<SignedPermutation> = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer: Vec<usize> = vec![0];
    while !layer.is_empty() {
        let mut next: Vec<(Vec<usize>, SignedPermutation)> = Vec::new();
        for &idx in &layer {
            for (gi, s) in &gens {
                let w = elements[idx].compose(s);
                if seen.insert(w.clone()) {
                    let mut word = words[idx].clone();
                    word.push(*gi);
                    next.push((word, w));
                }
            }
        }
        next.sort();
        layer = Vec::with_capacity(next.len());
        for (word, w) in next {
            layer.push(elements.len());
            elements.push(w);
            words.push(word);
        }
    }
    WeylSubgroup {
        rank: g,
        subset: k.clone(),
        elements,
        words,
    }
}

type Cache = RwLock<HashMap<ParabolicSubset, Arc<WeylSubgroup>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Enumerates `W_K` by breadth-first closure; results are cached per subset.
pub fn enumerate(k: &ParabolicSubset) -> Arc<WeylSubgroup> {
    if let Some(hit) = cache().read().expect("cache poisoned").get(k) {
        return Arc::clone(hit);
    }
    let built = Arc::new(generate(k));
    let mut map = cache().write().expect("cache poisoned");
    Arc::clone(map.entry(k.clone()).or_insert(built))
}

/// Order of `W_K` computed from its block structure, without enumeration.
pub fn subgroup_order(k: &ParabolicSubset) -> u128 {
    k.blocks()
        .iter()
        .map(|b| {
            let n = b.vars.len() as u128;
            let fact: u128 = (1..=n).product();
            match b.kind {
                crate::roots::BlockKind::A => fact,
                crate::roots::BlockKind::C => fact << n,
            }
        })
        .product()
}

/// Whether `f` is fixed by every generator of `W_K`.
pub fn is_invariant(f: &Poly, k: &ParabolicSubset) -> Result<bool> {
    if f.nvars() != k.rank() {
        return Err(Error::AmbientMismatch {
            left: k.rank(),
            right: f.nvars(),
        });
    }
    for i in k.indices() {
        let s = simple_reflection(k.rank(), i)?;
        if s.act_on_poly(f)? != *f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The operator `f ↦ (f - s_α f) / α` for the `k`-th simple root.
pub fn divided_difference(k: usize, f: &Poly) -> Result<Poly> {
    let g = f.nvars();
    let s = simple_reflection(g, k)?;
    let diff = f - &s.act_on_poly(f)?;
    diff.exact_div(&simple_root(g, k).to_poly())
}

pub fn longest_element(k: &ParabolicSubset) -> SignedPermutation {
    enumerate(k).longest().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{elementary_symmetric, Monomial, Rational};
    use proptest::prelude::*;

    fn p(s: &str, g: usize) -> Poly {
        Poly::parse(s, g).unwrap()
    }

    fn w(s: &str, g: usize) -> Weight {
        Weight::parse(s, g).unwrap()
    }

    #[test]
    fn simple_reflection_examples() {
        let s1 = simple_reflection(2, 0).unwrap();
        assert_eq!(s1.act_on_weight(&w("e1", 2)).unwrap(), w("e2", 2));
        assert_eq!(s1.act_on_weight(&w("3e1-e2", 2)).unwrap(), w("-e1+3e2", 2));
        let s2 = simple_reflection(2, 1).unwrap();
        assert_eq!(s2.act_on_weight(&w("e2", 2)).unwrap(), w("-e2", 2));
        assert_eq!(s2.act_on_weight(&w("e1", 2)).unwrap(), w("e1", 2));
        for g in 1..=5 {
            for k in 0..g {
                let s = simple_reflection(g, k).unwrap();
                assert!(s.compose(&s).is_identity());
                assert_eq!(s.sign(), -1);
                assert_eq!(s.length(), 1);
            }
        }
        assert!(simple_reflection(2, 2).is_err());
    }

    #[test]
    fn two_g_form_matches_transpositions() {
        // s_{e_i - e_{i+1}} = (i, i+1)(2g-i, 2g+1-i), s_{2e_g} = (g, g+1).
        let g = 3;
        let s1 = simple_reflection(g, 0).unwrap();
        assert_eq!(s1.to_two_g_permutation(), vec![2, 1, 3, 4, 6, 5]);
        let s3 = simple_reflection(g, 2).unwrap();
        assert_eq!(s3.to_two_g_permutation(), vec![1, 2, 4, 3, 5, 6]);
        for x in enumerate(&ParabolicSubset::full(g).unwrap()).elements() {
            let sigma = x.to_two_g_permutation();
            for i in 0..g {
                assert_eq!(sigma[i] + sigma[2 * g - 1 - i], 2 * g + 1);
            }
            assert_eq!(&SignedPermutation::from_two_g_permutation(&sigma).unwrap(), x);
        }
        assert!(SignedPermutation::from_two_g_permutation(&[2, 1, 3, 4]).is_err());
    }

    #[test]
    fn act_examples() {
        let s22 = simple_reflection(2, 1).unwrap();
        assert_eq!(s22.act_on_weight(&w("e2", 2)).unwrap(), w("-e2", 2));
        let s12 = simple_reflection(3, 0).unwrap();
        assert_eq!(s12.act_on_weight(&w("e1", 3)).unwrap(), w("e2", 3));
        let s23 = simple_reflection(3, 1).unwrap();
        assert_eq!(s23.act_on_weight(&w("e1", 3)).unwrap(), w("e1", 3));
        assert!(s23.act_on_weight(&w("e1", 2)).is_err());

        let s1 = simple_reflection(1, 0).unwrap();
        assert_eq!(s1.act_on_poly(&p("e1^2", 1)).unwrap(), p("e1^2", 1));
        for g in 2..=4 {
            let s = simple_reflection(g, 0).unwrap();
            let vars: Vec<usize> = (0..g).collect();
            for k in 0..=g {
                let sk = elementary_symmetric(g, k, &vars).unwrap();
                assert_eq!(s.act_on_poly(&sk).unwrap(), sk);
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate(&ParabolicSubset::full(2).unwrap()).order(), 8);
        assert_eq!(enumerate(&ParabolicSubset::siegel_i(3).unwrap()).order(), 6);
        assert_eq!(enumerate(&ParabolicSubset::empty(1).unwrap()).order(), 1);
        for g in 1..=5usize {
            let full = ParabolicSubset::full(g).unwrap();
            let order = enumerate(&full).order();
            let expect = (1..=g).product::<usize>() << g;
            assert_eq!(order, expect);
            assert_eq!(subgroup_order(&full), expect as u128);
            for k in [
                ParabolicSubset::siegel_i(g).unwrap(),
                ParabolicSubset::siegel_j(g).unwrap(),
            ] {
                assert_eq!(enumerate(&k).order() as u128, subgroup_order(&k));
            }
        }
    }

    #[test]
    fn enumeration_order_and_words() {
        let grp = enumerate(&ParabolicSubset::full(3).unwrap());
        let mut prev_len = 0;
        for i in 0..grp.order() {
            let word = grp.word(i);
            assert!(word.len() >= prev_len);
            prev_len = word.len();
            // Recorded words are reduced and evaluate to the element.
            assert_eq!(grp.elements()[i].length(), word.len());
            assert_eq!(
                parse_word(3, &format_word(word)).unwrap(),
                grp.elements()[i]
            );
        }
        assert_eq!(grp.record(0).word, "id");
        assert!(parse_word(3, "s1 t2").is_err());
        assert!(parse_word(3, "s4").is_err());
        assert!(parse_word(3, "s0").is_err());
    }

    #[test]
    fn braid_relations() {
        for g in 2..=4usize {
            for i in 0..g {
                for j in i + 1..g {
                    let m = if j == i + 1 {
                        if j == g - 1 {
                            4
                        } else {
                            3
                        }
                    } else {
                        2
                    };
                    let si = simple_reflection(g, i).unwrap();
                    let sj = simple_reflection(g, j).unwrap();
                    let prod = si.compose(&sj);
                    let mut acc = SignedPermutation::identity(g);
                    let mut order = 0;
                    loop {
                        acc = acc.compose(&prod);
                        order += 1;
                        if acc.is_identity() {
                            break;
                        }
                    }
                    assert_eq!(order, m, "g={g} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn invariance_examples() {
        let g = 3;
        let j = ParabolicSubset::siegel_j(g).unwrap();
        assert!(is_invariant(&p("e1", g), &j).unwrap());
        assert!(!is_invariant(&p("e1", 1), &ParabolicSubset::full(1).unwrap()).unwrap());
        assert!(!is_invariant(&p("e1", g), &ParabolicSubset::full(g).unwrap()).unwrap());
        let sq: Vec<Poly> = (0..g)
            .map(|i| {
                let mut e = vec![0; g];
                e[i] = 2;
                Poly::term(g, Monomial::new(e), Rational::from_integer(1.into()))
            })
            .collect();
        let s2 = crate::poly::elementary_symmetric_of(g, &sq, 2).pop().unwrap();
        assert!(is_invariant(&s2, &ParabolicSubset::full(g).unwrap()).unwrap());
    }

    #[test]
    fn sign_flip_invariance_is_evenness() {
        // Invariant under all sign flips iff every exponent is even.
        let g = 3;
        let flips: Vec<SignedPermutation> = (0..g)
            .map(|i| {
                let mut s = vec![1; g];
                s[i] = -1;
                SignedPermutation::new((0..g).collect(), s).unwrap()
            })
            .collect();
        for f in ["e1^2*e2^2 + e3^4", "e1^2 + e2", "e1*e2*e3", "3*e2^2 - e1^4*e3^2"] {
            let f = p(f, g);
            let invariant = flips.iter().all(|s| s.act_on_poly(&f).unwrap() == f);
            let even = f.terms().all(|(m, _)| m.exponents().iter().all(|e| e % 2 == 0));
            assert_eq!(invariant, even, "{f}");
        }
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(divided_difference(0, &p("e1", 2)).unwrap(), Poly::one(2));
        assert_eq!(divided_difference(0, &p("e1^2", 2)).unwrap(), p("e1 + e2", 2));
        // s_{2e_2}: (e2 - (-e2)) / (2 e2) = 1
        assert_eq!(divided_difference(1, &p("e2", 2)).unwrap(), Poly::one(2));
    }

    #[test]
    fn longest_element_examples() {
        for g in 1..=4 {
            let w0 = longest_element(&ParabolicSubset::full(g).unwrap());
            assert_eq!(w0, SignedPermutation::negation(g));
            assert_eq!(w0.length(), g * g);
            // w0 maps Φ+ onto -Φ+.
            let pos = positive_roots(g).unwrap();
            for a in &pos {
                assert!(pos.contains(&w0.act_on_weight(a).unwrap().neg()));
            }
        }
        let w0 = longest_element(&ParabolicSubset::siegel_i(2).unwrap());
        assert_eq!(w0, SignedPermutation::new(vec![1, 0], vec![1, 1]).unwrap());
        assert!(longest_element(&ParabolicSubset::empty(3).unwrap()).is_identity());
        for g in 2..=4 {
            for k in [
                ParabolicSubset::siegel_i(g).unwrap(),
                ParabolicSubset::siegel_j(g).unwrap(),
            ] {
                let grp = enumerate(&k);
                let lengths: Vec<usize> = grp.elements().iter().map(|w| w.length()).collect();
                let max = *lengths.iter().max().unwrap();
                assert_eq!(lengths.iter().filter(|&&l| l == max).count(), 1);
                assert_eq!(
                    max,
                    crate::roots::parabolic_positive_roots(g, &k).unwrap().len()
                );
            }
        }
    }

    fn arb_poly(g: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((prop::collection::vec(0u32..3, g), -4i64..5), 0..6).prop_map(
            move |ts| {
                Poly::from_terms(
                    g,
                    ts.into_iter()
                        .map(|(e, c)| (Monomial::new(e), Rational::from_integer(c.into()))),
                )
            },
        )
    }

    fn arb_homogeneous(g: usize, d: u32) -> impl Strategy<Value = Poly> {
        arb_poly(g).prop_map(move |f| {
            let mut out = Poly::zero(g);
            for (m, c) in f.terms() {
                let mut e = m.exponents().to_vec();
                let deg: u32 = e.iter().sum();
                if deg <= d {
                    e[0] += d - deg;
                    out.add_term(Monomial::new(e), c.clone());
                }
            }
            out
        })
    }

    proptest! {
        #[test]
        fn divided_difference_squares_to_zero(f in arb_poly(3), k in 0usize..3) {
            let d = divided_difference(k, &f).unwrap();
            prop_assert!(divided_difference(k, &d).unwrap().is_zero());
        }

        #[test]
        fn degree_behaviour(f in arb_homogeneous(3, 4), k in 0usize..3, wi in 0usize..48) {
            let grp = enumerate(&ParabolicSubset::full(3).unwrap());
            let w = &grp.elements()[wi];
            let img = w.act_on_poly(&f).unwrap();
            prop_assert!(img.is_homogeneous());
            if !f.is_zero() {
                prop_assert_eq!(img.degree(), Some(4));
            }
            let d = divided_difference(k, &f).unwrap();
            prop_assert!(d.is_homogeneous());
            if !d.is_zero() {
                prop_assert_eq!(d.degree(), Some(3));
            }
        }

        // W-invariant iff symmetric polynomial in the squares; the
        // symmetrization of a random polynomial is always invariant, and it
        // is even in every variable and symmetric.
        #[test]
        fn invariants_are_symmetric_in_squares(f in arb_poly(3)) {
            let full = ParabolicSubset::full(3).unwrap();
            let grp = enumerate(&full);
            let mut sym = Poly::zero(3);
            for w in grp.elements() {
                sym = &sym + &w.act_on_poly(&f).unwrap();
            }
            prop_assert!(is_invariant(&sym, &full).unwrap());
            for (m, c) in sym.terms() {
                prop_assert!(m.exponents().iter().all(|e| e % 2 == 0));
                let mut sorted = m.exponents().to_vec();
                sorted.sort();
                let perm_coeff = sym.coefficient(&Monomial::new(sorted));
                prop_assert_eq!(&perm_coeff, c);
            }
            let invariant = is_invariant(&f, &full).unwrap();
            let symmetric_in_squares = f.terms().all(|(m, c)| {
                let e = m.exponents();
                e.iter().all(|x| x % 2 == 0)
                    && (0..2).all(|i| {
                        let mut t = e.to_vec();
                        t.swap(i, i + 1);
                        f.coefficient(&Monomial::new(t)) == *c
                    })
            });
            prop_assert_eq!(invariant, symmetric_in_squares);
        }
    }
}
