//! Root data of type C_g in the basis `e_1, ..., e_g` of the character
//! lattice.
//!
//! Simple roots are ordered `e_1 - e_2, ..., e_{g-1} - e_g, 2e_g`; a
//! [`ParabolicSubset`] is a set of zero-based indices into that list.
//!
//! The Siegel subsets are `I = Δ \ {2e_g}` and `J = Δ \ {e_1 - e_2}`. The
//! roots outside `Φ_I^+ ∪ Φ_J^+` (the union, not the intersection) are
//! `2e_1, e_1 + e_2, ..., e_1 + e_g`; these are the weights of the normal
//! bundle of the Levi sub flag variety.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, Rational};

/// Element of the character lattice `Z^g`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    /// `e_{i+1}` in rank `g`.
    pub fn basis(g: usize, i: usize) -> Self {
        let mut c = vec![0; g];
        c[i] = 1;
        Weight(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// The linear form with these coordinates.
    pub fn to_poly(&self) -> Poly {
        Poly::linear(&self.0)
    }

    /// Parses the human form, e.g. `e1-e2`, `2e3`, `e1+e2`.
    pub fn parse(s: &str, g: usize) -> Result<Weight> {
        let p = Poly::parse(s, g)?;
        let mut coords = vec![0i64; g];
        for (m, c) in p.terms() {
            let bad = |msg: &str| Error::Parse {
                pos: 0,
                msg: format!("{msg} in weight '{s}'"),
            };
            if m.degree() != 1 {
                return Err(bad("non-linear term"));
            }
            if !c.is_integer() {
                return Err(bad("non-integral coefficient"));
            }
            let v: i64 = c
                .to_integer()
                .try_into()
                .map_err(|_| bad("coefficient too large"))?;
            let i = m.exponents().iter().position(|&e| e == 1).unwrap();
            coords[i] = v;
        }
        Ok(Weight(coords))
    }

    /// Coordinates in the simple-root basis of C_g. For the simple roots
    /// `a_k = e_k - e_{k+1}` (k < g) and `a_g = 2e_g` the basis matrix is
    /// triangular, so the solve is a running sum.
    pub fn simple_root_coordinates(&self) -> Vec<Rational> {
        let g = self.0.len();
        let mut out: Vec<Rational> = Vec::with_capacity(g);
        let mut running = Rational::zero();
        for (k, &v) in self.0.iter().enumerate() {
            running += Rational::from_integer(v.into());
            if k + 1 < g {
                out.push(running.clone());
            } else {
                out.push(&running / Rational::from_integer(2.into()));
            }
        }
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "e{}", i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The simple roots of C_g in order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleRootSet {
    roots: Vec<Weight>,
}

impl SimpleRootSet {
    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn get(&self, k: usize) -> Option<&Weight> {
        self.roots.get(k)
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }
}

fn check_rank(g: usize) -> Result<()> {
    if g < 1 {
        return Err(Error::InvalidRank(g));
    }
    Ok(())
}

pub fn simple_root(g: usize, k: usize) -> Weight {
    let mut c = vec![0; g];
    if k + 1 < g {
        c[k] = 1;
        c[k + 1] = -1;
    } else {
        c[k] = 2;
    }
    Weight(c)
}

pub fn simple_roots(g: usize) -> Result<SimpleRootSet> {
    check_rank(g)?;
    Ok(SimpleRootSet {
        roots: (0..g).map(|k| simple_root(g, k)).collect(),
    })
}

/// Positive roots of C_g: `e_i - e_j` (i < j) followed by `e_i + e_j`
/// (i <= j, with `2e_i` for i = j).
pub fn positive_roots(g: usize) -> Result<Vec<Weight>> {
    check_rank(g)?;
    let mut out = Vec::with_capacity(g * g);
    for i in 0..g {
        for j in i + 1..g {
            let mut c = vec![0; g];
            c[i] = 1;
            c[j] = -1;
            out.push(Weight(c));
        }
    }
    for i in 0..g {
        for j in i..g {
            let mut c = vec![0; g];
            c[i] += 1;
            c[j] += 1;
            out.push(Weight(c));
        }
    }
    Ok(out)
}

/// Kind of an irreducible block of a parabolic Weyl subgroup.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockKind {
    /// Symmetric group permuting the block's variables.
    A,
    /// Signed permutations of the block's variables (contains `2e_g`).
    C,
}

/// Variables moved together by a parabolic Weyl subgroup. Every variable
/// belongs to exactly one block; a variable fixed by the subgroup is an A
/// block of size one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Block {
    pub vars: Vec<usize>,
    pub kind: BlockKind,
}

/// A subset of the simple roots, stored as zero-based indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ParabolicSubset {
    rank: usize,
    indices: BTreeSet<usize>,
}

impl ParabolicSubset {
    pub fn new<I: IntoIterator<Item = usize>>(rank: usize, indices: I) -> Result<Self> {
        check_rank(rank)?;
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&bad) = indices.iter().find(|&&k| k >= rank) {
            return Err(Error::InvalidRootIndex { index: bad, rank });
        }
        Ok(ParabolicSubset { rank, indices })
    }

    /// All of Δ.
    pub fn full(g: usize) -> Result<Self> {
        Self::new(g, 0..g)
    }

    pub fn empty(g: usize) -> Result<Self> {
        Self::new(g, [])
    }

    /// `I = Δ \ {2e_g}`; its Weyl group is the symmetric group on `e_1..e_g`.
    pub fn siegel_i(g: usize) -> Result<Self> {
        Self::new(g, 0..g.saturating_sub(1))
    }

    /// `J = Δ \ {e_1 - e_2}`. For g = 1 there is no root `e_1 - e_2`; the
    /// Levi is taken to be the torus (`J = ∅`) so that its flag variety is a
    /// point.
    pub fn siegel_j(g: usize) -> Result<Self> {
        if g == 1 {
            return Self::empty(1);
        }
        Self::new(g, 1..g)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.indices.contains(&k)
    }

    pub fn is_subset(&self, other: &ParabolicSubset) -> bool {
        self.rank == other.rank && self.indices.is_subset(&other.indices)
    }

    pub fn intersection(&self, other: &ParabolicSubset) -> ParabolicSubset {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        ParabolicSubset {
            rank: self.rank,
            indices: self.indices.intersection(&other.indices).copied().collect(),
        }
    }

    /// Irreducible blocks of the generated Weyl subgroup, ordered by their
    /// first variable.
    pub fn blocks(&self) -> Vec<Block> {
        let g = self.rank;
        let mut blocks: Vec<Block> = Vec::new();
        let mut current = vec![0usize];
        for v in 1..g {
            if self.contains(v - 1) {
                current.push(v);
            } else {
                blocks.push(Block {
                    vars: std::mem::take(&mut current),
                    kind: BlockKind::A,
                });
                current.push(v);
            }
        }
        let kind = if self.contains(g - 1) {
            BlockKind::C
        } else {
            BlockKind::A
        };
        blocks.push(Block {
            vars: current,
            kind,
        });
        blocks
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, k) in self.indices.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", simple_root(self.rank, *k))?;
        }
        f.write_str("}")
    }
}

/// Positive roots in the span of the simple roots indexed by `k`.
pub fn parabolic_positive_roots(g: usize, k: &ParabolicSubset) -> Result<Vec<Weight>> {
    if k.rank() != g {
        return Err(Error::InvalidRootIndex {
            index: k.rank(),
            rank: g,
        });
    }
    Ok(positive_roots(g)?
        .into_iter()
        .filter(|a| {
            a.simple_root_coordinates()
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || k.contains(i))
        })
        .collect())
}

/// `Φ^+ \ (Φ_I^+ ∪ Φ_J^+)`.
pub fn normal_bundle_roots(
    g: usize,
    i: &ParabolicSubset,
    j: &ParabolicSubset,
) -> Result<Vec<Weight>> {
    let pi = parabolic_positive_roots(g, i)?;
    let pj = parabolic_positive_roots(g, j)?;
    Ok(positive_roots(g)?
        .into_iter()
        .filter(|a| !pi.contains(a) && !pj.contains(a))
        .collect())
}

/// Whether `a` is a non-negative integral combination of the simple roots.
pub fn is_nonnegative_integral(a: &Weight) -> bool {
    a.simple_root_coordinates()
        .iter()
        .all(|c| c.is_integer() && !c.is_negative())
}
