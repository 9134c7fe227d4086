//! Commutant of `sl(V)` on `S^k_0 sl(V)`, isotypic decomposition and highest-weight vectors.
//!
//! Tensors in `⊗^k(V⊗V*)` carry the `V` factors as upper and the `V*` factors as lower
//! indices; slot `i` upper and slot `i` lower form column `i`. A column-symmetric tensor
//! is stored by multisets of columns `(B, A)`, the coordinate of a multiset being the
//! common value of all its orderings.
//!
//! Every operator below commutes with the diagonal torus and with relabelling of the
//! basis of `V`. Ranks are therefore computed one weight space at a time, and only for
//! one weight per `S_N`-orbit, counted with the orbit size.

use crate::ambient::{seeded_pairs, trace, u_closed_form};
use crate::classalg::{
    all_perms, central_idempotent, class_multiply, partitions, standard_tableaux, young_symmetrizer, ClassElement,
    GroupAlgebraElement, Partition, Permutation,
};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::report::VerificationReport;
use crate::scalar::Gq;
use crate::symbols::multisets;
use crate::tensor::{all_tuples, Idx, MixedTensor};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

// ---------------------------------------------------------------- weights

/// Highest weight `λ − w₀(λ)` of length `N`, i.e. `μ_i = λ_i − λ_{N+1−i}`.
///
/// For `2·depth(λ) ≤ N` this is `(λ_1, …, λ_m, 0, …, 0, −λ_m, …, −λ_1)`.
pub fn lambda_plus_dual(lambda: &[u32], dim: usize) -> Vec<i64> {
    let mut w = vec![0i64; dim];
    for (i, &l) in lambda.iter().enumerate().filter(|(_, &l)| l > 0) {
        if i < dim {
            w[i] += l as i64;
            w[dim - 1 - i] -= l as i64;
        }
    }
    w
}

/// Weyl dimension formula `∏_{i<j}(μ_i−μ_j+j−i)/(j−i)` for a non-increasing weight.
pub fn weyl_dim(mu: &[i64]) -> Result<BigInt> {
    if mu.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Invalid(format!("weight {mu:?} is not non-increasing")));
    }
    let mut num = BigRational::one();
    for i in 0..mu.len() {
        for j in i + 1..mu.len() {
            num *= BigRational::new(BigInt::from(mu[i] - mu[j] + (j - i) as i64), BigInt::from((j - i) as i64));
        }
    }
    debug_assert!(num.is_integer());
    Ok(num.to_integer())
}

/// Dimension of the `sl(N)` irreducible with highest weight `λ + λ*`.
pub fn cartan_dim(lambda: &[u32], dim: usize) -> u64 {
    weyl_dim(&lambda_plus_dual(lambda, dim))
        .expect("λ − w₀λ is dominant")
        .to_u64()
        .expect("dimension fits u64")
}

/// `N ≥ 2k`, where every isotypic component is present with its generic dimension.
pub fn is_stable(k: u32, dim: usize) -> bool {
    dim >= 2 * k as usize
}

// ---------------------------------------------------------------- slot actions

/// `σ·I` with `(σ·I)_p = I_{σ^{-1}(p)}`: the entry at position `i` moves to `σ(i)`.
pub fn permute_tuple(sigma: &Permutation, idx: &[u8]) -> Idx {
    let mut out = vec![0u8; idx.len()];
    for (i, &x) in idx.iter().enumerate() {
        out[sigma.apply(i)] = x;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Upper,
    Lower,
}

/// Group-algebra element acting on the upper or the lower slots of a tensor.
pub fn act_on_slots(g: &GroupAlgebraElement, t: &MixedTensor, side: Side) -> MixedTensor {
    let mut r = MixedTensor::zero(t.dim, t.up, t.low);
    for ((u, l), v) in t.entries() {
        for (s, c) in &g.coeffs {
            let val = v * c;
            match side {
                Side::Upper => r.add_to(&permute_tuple(s, u), l, &val),
                Side::Lower => r.add_to(u, &permute_tuple(s, l), &val),
            }
        }
    }
    r
}

/// Infinitesimal action of the elementary matrix `E_ij` (`e_j ↦ e_i`).
pub fn gl_action(t: &MixedTensor, i: u8, j: u8) -> MixedTensor {
    let mut r = MixedTensor::zero(t.dim, t.up, t.low);
    for ((u, l), v) in t.entries() {
        for p in 0..u.len() {
            if u[p] == j {
                let mut u2 = u.clone();
                u2[p] = i;
                r.add_to(&u2, l, v);
            }
        }
        for p in 0..l.len() {
            if l[p] == i {
                let mut l2 = l.clone();
                l2[p] = j;
                r.add_to(u, &l2, &-v);
            }
        }
    }
    r
}

/// Seeded tensor with small integer entries on `terms` random positions.
pub fn random_tensor(dim: usize, up: usize, low: usize, terms: usize, rng: &mut ChaCha8Rng) -> MixedTensor {
    let mut t = MixedTensor::zero(dim, up, low);
    for _ in 0..terms {
        let u: Idx = (0..up).map(|_| rng.gen_range(0..dim as u8)).collect();
        let l: Idx = (0..low).map(|_| rng.gen_range(0..dim as u8)).collect();
        t.add_to(&u, &l, &Gq::from_int(rng.gen_range(-3..=3)));
    }
    t
}

// ---------------------------------------------------------------- C_s

/// The invariant `C_s = Σ_{|I|=2k} ε^I ⊗ e_{s·I}` acting on `⊗^k(V⊗V*)` through the
/// identification pairing even positions of `C_s` with the input.
#[derive(Clone, Debug)]
pub struct CsOperator {
    pub s: Permutation,
    sinv: Permutation,
    pub k: usize,
    pub dim: usize,
}

pub fn c_s_operator(s: &Permutation, dim: usize) -> Result<CsOperator> {
    if !s.len().is_multiple_of(2) || s.is_empty() {
        return Err(Error::Invalid(format!("C_s needs a permutation of 2k points, got {s}")));
    }
    Ok(CsOperator { s: s.clone(), sinv: s.inverse(), k: s.len() / 2, dim })
}

impl CsOperator {
    /// Positions are 0-based here: 1-based position `p` is `p − 1`, so the "even"
    /// positions contracted with the input are `1, 3, …`.
    pub fn apply(&self, t: &MixedTensor) -> MixedTensor {
        let k = self.k;
        let mut r = MixedTensor::zero(self.dim, k, k);
        for ((j, i), v) in t.entries() {
            let mut l: Vec<Option<u8>> = vec![None; 2 * k];
            let mut ok = true;
            let mut fix = |p: usize, val: u8, l: &mut Vec<Option<u8>>| match l[p] {
                None => l[p] = Some(val),
                Some(x) if x == val => {}
                Some(_) => ok = false,
            };
            for m in 0..k {
                fix(2 * m + 1, j[m], &mut l);
            }
            for m in 0..k {
                fix(self.sinv.apply(2 * m + 1), i[m], &mut l);
            }
            if !ok {
                continue;
            }
            let free: Vec<usize> = (0..2 * k).filter(|&p| l[p].is_none()).collect();
            for vals in all_tuples(self.dim, free.len()) {
                let mut ll = l.clone();
                for (&p, &x) in free.iter().zip(&vals) {
                    ll[p] = Some(x);
                }
                let lower: Idx = (0..k).map(|m| ll[2 * m].unwrap()).collect();
                let upper: Idx = (0..k).map(|m| ll[self.sinv.apply(2 * m)].unwrap()).collect();
                r.add_to(&upper, &lower, v);
            }
        }
        r
    }
}

/// `σ s σ^{-1}`.
pub fn ad(sigma: &Permutation, s: &Permutation) -> Permutation {
    sigma.compose(s).compose(&sigma.inverse())
}

/// Lift of `ρ ∈ S_k` to `S_{2k}` acting on odd (`parity = 0`) or even (`parity = 1`)
/// 1-based positions, i.e. an element of `S¹_k` or `S²_k` with hat equal to `ρ`.
pub fn lift(rho: &Permutation, parity: usize) -> Permutation {
    let k = rho.len();
    let mut v: Vec<u8> = (0..2 * k as u8).collect();
    for i in 0..k {
        v[2 * i + parity] = (2 * rho.apply(i) + parity) as u8;
    }
    Permutation(v)
}

/// `σ̃^s = σ^s_2 σ^s_1` for `s` interchanging odd and even positions; `None` otherwise.
pub fn sigma_tilde(s: &Permutation) -> Option<Permutation> {
    let k = s.len() / 2;
    let mut s1 = vec![0u8; k];
    let mut s2 = vec![0u8; k];
    for m in 0..k {
        let a = s.apply(2 * m);
        let b = s.apply(2 * m + 1);
        if a % 2 != 1 || !b.is_multiple_of(2) {
            return None;
        }
        s1[m] = (a / 2) as u8;
        s2[m] = (b / 2) as u8;
    }
    Some(Permutation(s2).compose(&Permutation(s1)))
}

/// The `s` with `σ^s_1 = id` and `σ^s_2 = ρ`, so `σ̃^s = ρ`.
pub fn s_for(rho: &Permutation) -> Permutation {
    let k = rho.len();
    let mut v = vec![0u8; 2 * k];
    for m in 0..k {
        v[2 * m] = (2 * m + 1) as u8;
        v[2 * m + 1] = (2 * rho.apply(m)) as u8;
    }
    Permutation(v)
}

// ---------------------------------------------------------------- commutant basis

/// Basis element `C_(τ)` of the commutant, labelled by a cycle type.
#[derive(Clone, Debug)]
pub struct CommutantOp {
    pub tau: Partition,
    pub k: usize,
    class_sum: GroupAlgebraElement,
}

pub fn commutant_basis_op(tau: &Partition) -> CommutantOp {
    CommutantOp {
        tau: tau.clone(),
        k: tau.size() as usize,
        class_sum: GroupAlgebraElement::from_class_element(&ClassElement::basis(tau)),
    }
}

impl CommutantOp {
    /// Action on a column-symmetric tensor: upper index fixed, lower index permuted
    /// by the averaged class sum.
    pub fn apply(&self, t: &MixedTensor) -> MixedTensor {
        act_on_slots(&self.class_sum, t, Side::Lower)
    }

    /// The defining average `(k!)^{-2} Σ_{σ∈S¹×S²} C_{Ad_σ s}` with `σ̃^s ∈ τ`.
    pub fn apply_by_definition(&self, t: &MixedTensor) -> MixedTensor {
        let s = s_for(&self.tau.representative());
        let perms = all_perms(self.k);
        let mut r = MixedTensor::zero(t.dim, self.k, self.k);
        for a in &perms {
            for b in &perms {
                let sigma = lift(a, 0).compose(&lift(b, 1));
                let c = c_s_operator(&ad(&sigma, &s), t.dim).expect("even length").apply(t);
                r = r.add(&c).expect("same shape");
            }
        }
        let n = perms.len() as i64;
        r.scale(&Gq::from_ratio(1, n * n))
    }

    pub fn group_element(&self) -> &GroupAlgebraElement {
        &self.class_sum
    }
}

/// Seeded column-symmetric tensor.
pub fn random_symmetric(dim: usize, k: usize, terms: usize, rng: &mut ChaCha8Rng) -> MixedTensor {
    random_tensor(dim, k, k, terms, rng).column_symmetrize()
}

// ---------------------------------------------------------------- symmetric coordinates

pub type Column = (u8, u8);
/// Sorted multiset of columns `(B, A)`.
pub type SymKey = Vec<Column>;

fn key_weight(dim: usize, key: &[Column]) -> Vec<i32> {
    let mut w = vec![0i32; dim];
    for &(b, a) in key {
        w[b as usize] += 1;
        w[a as usize] -= 1;
    }
    w
}

fn sorted(mut v: Vec<Column>) -> SymKey {
    v.sort_unstable();
    v
}

/// Number of distinct permutations of a weight vector.
fn orbit_size(w: &[i32]) -> u64 {
    let mut counts: BTreeMap<i32, u64> = BTreeMap::new();
    for &x in w {
        *counts.entry(x).or_default() += 1;
    }
    let f = |n: u64| (1..=n).product::<u64>();
    f(w.len() as u64) / counts.values().map(|&c| f(c)).product::<u64>()
}

/// One weight space of `S^k(V⊗V*)` with a basis of its trace-free part.
#[derive(Clone, Debug, Serialize)]
pub struct WeightBlock {
    pub weight: Vec<i32>,
    /// Number of weights this block stands for (its `S_N`-orbit size, or 1).
    pub multiplicity: u64,
    pub keys: Vec<SymKey>,
    #[serde(skip)]
    index: HashMap<SymKey, usize>,
    /// Basis of the trace-free part in `keys` coordinates.
    pub basis: Vec<Vec<Gq>>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum TraceEq {
    Diag,
    Cross(u8, u8),
}

impl WeightBlock {
    fn new(weight: Vec<i32>, multiplicity: u64, keys: Vec<SymKey>) -> Self {
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let mut b = WeightBlock { weight, multiplicity, keys, index, basis: Vec::new() };
        b.basis = b.trace_matrix().kernel();
        b
    }

    pub fn coord(&self, key: &[Column]) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Rows: the contractions of upper slot 0 with lower slot 0 and with lower slot 1,
    /// which by column symmetry cover all `k²` contractions.
    pub fn trace_matrix(&self) -> ExactMatrix {
        let mut eqs: BTreeMap<(TraceEq, SymKey), BTreeSet<usize>> = BTreeMap::new();
        for (ci, key) in self.keys.iter().enumerate() {
            let k = key.len();
            for p in 0..k {
                if key[p].0 == key[p].1 {
                    let mut rest = key.clone();
                    rest.remove(p);
                    eqs.entry((TraceEq::Diag, rest)).or_default().insert(ci);
                }
            }
            for p in 0..k {
                for q in 0..k {
                    if p != q && key[p].0 == key[q].1 {
                        let rest: SymKey =
                            key.iter().enumerate().filter(|(i, _)| *i != p && *i != q).map(|(_, c)| *c).collect();
                        eqs.entry((TraceEq::Cross(key[p].1, key[q].0), rest)).or_default().insert(ci);
                    }
                }
            }
        }
        let mut m = ExactMatrix::zeros(eqs.len(), self.keys.len());
        for (r, cols) in eqs.values().enumerate() {
            for &c in cols {
                m[(r, c)] = Gq::one();
            }
        }
        m
    }

    /// Expands coordinates to a tensor with all orderings of every multiset.
    pub fn to_tensor(&self, dim: usize, v: &[Gq]) -> MixedTensor {
        let k = self.keys.first().map_or(0, |x| x.len());
        let mut t = MixedTensor::zero(dim, k, k);
        let perms = all_perms(k);
        for (key, c) in self.keys.iter().zip(v) {
            if c.is_zero() {
                continue;
            }
            let mut seen = BTreeSet::new();
            for p in &perms {
                let ord: Vec<Column> = (0..k).map(|i| key[p.apply(i)]).collect();
                if seen.insert(ord.clone()) {
                    let u: Idx = ord.iter().map(|c| c.0).collect();
                    let l: Idx = ord.iter().map(|c| c.1).collect();
                    t.set(&u, &l, c.clone());
                }
            }
        }
        t
    }

    /// Coordinates of a column-symmetric tensor of this weight.
    pub fn from_tensor(&self, t: &MixedTensor) -> Result<Vec<Gq>> {
        let mut v = vec![Gq::zero(); self.keys.len()];
        for ((u, l), x) in t.entries() {
            let key = sorted(u.iter().copied().zip(l.iter().copied()).collect());
            let Some(i) = self.coord(&key) else {
                return Err(Error::Invalid(format!("entry {u:?}/{l:?} outside weight {:?}", self.weight)));
            };
            v[i] = x.clone();
        }
        Ok(v)
    }
}

/// Sparse operator on one block: `rows[r]` lists `(column, coefficient)`.
#[derive(Clone, Debug)]
pub struct BlockOp {
    rows: Vec<Vec<(usize, Gq)>>,
}

impl BlockOp {
    /// `g` acting on one side of column-symmetric tensors; with `symmetrize` the
    /// result is averaged over column orderings, which is needed when `g` is not central.
    pub fn group(block: &WeightBlock, g: &GroupAlgebraElement, side: Side, symmetrize: bool) -> Self {
        let k = block.keys.first().map_or(0, |x| x.len());
        let orderings = if symmetrize { all_perms(k) } else { vec![Permutation::identity(k)] };
        let avg = Gq::from_ratio(1, orderings.len() as i64);
        let rows = block
            .keys
            .iter()
            .map(|key| {
                let mut acc: BTreeMap<usize, Gq> = BTreeMap::new();
                for pi in &orderings {
                    let ord: Vec<Column> = (0..k).map(|i| key[pi.apply(i)]).collect();
                    let up: Idx = ord.iter().map(|c| c.0).collect();
                    let low: Idx = ord.iter().map(|c| c.1).collect();
                    for (s, c) in &g.coeffs {
                        let (u2, l2) = match side {
                            Side::Lower => (up.clone(), permute_tuple(s, &low)),
                            Side::Upper => (permute_tuple(s, &up), low.clone()),
                        };
                        let src = sorted(u2.into_iter().zip(l2).collect());
                        let col = block.coord(&src).expect("weight preserved");
                        *acc.entry(col).or_default() += &(c * &avg);
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            })
            .collect();
        BlockOp { rows }
    }

    pub fn apply(&self, v: &[Gq]) -> Vec<Gq> {
        self.rows.iter().map(|row| row.iter().map(|(c, x)| x * &v[*c]).sum()).collect()
    }
}

/// Basis of a subspace of column-symmetric tensors, organised by weight.
#[derive(Clone, Debug, Serialize)]
pub struct SubspaceBasis {
    pub k: usize,
    pub dim: usize,
    /// Whether blocks are `S_N`-orbit representatives rather than all weights.
    pub orbit_reduced: bool,
    pub blocks: Vec<WeightBlock>,
}

impl SubspaceBasis {
    pub fn dimension(&self) -> u64 {
        self.blocks.iter().map(|b| b.multiplicity * b.basis.len() as u64).sum()
    }

    /// Basis tensors of the stored blocks (representatives only when orbit-reduced).
    pub fn tensors(&self) -> Vec<MixedTensor> {
        self.blocks.iter().flat_map(|b| b.basis.iter().map(|v| b.to_tensor(self.dim, v))).collect()
    }

    /// Exact rank of the stored basis vectors, block by block.
    pub fn verified_rank(&self) -> u64 {
        self.blocks
            .iter()
            .map(|b| {
                if b.basis.is_empty() {
                    return 0;
                }
                b.multiplicity * ExactMatrix::from_rows(b.basis.clone()).expect("rectangular").rank() as u64
            })
            .sum()
    }
}

fn build_basis(k: usize, dim: usize, reduced: bool) -> Result<SubspaceBasis> {
    if dim < 2 || k == 0 {
        return Err(Error::Invalid(format!("need N ≥ 2 and k ≥ 1, got N={dim}, k={k}")));
    }
    if dim * dim > u8::MAX as usize {
        return Err(Error::Invalid(format!("N={dim} too large")));
    }
    let mut by_weight: BTreeMap<Vec<i32>, Vec<SymKey>> = BTreeMap::new();
    for ms in multisets(dim * dim, k) {
        let key: SymKey = ms.iter().map(|&c| ((c as usize / dim) as u8, (c as usize % dim) as u8)).collect();
        let w = key_weight(dim, &key);
        if reduced && w.windows(2).any(|p| p[0] < p[1]) {
            continue;
        }
        by_weight.entry(w).or_default().push(key);
    }
    let blocks = by_weight
        .into_iter()
        .map(|(w, keys)| {
            let mult = if reduced { orbit_size(&w) } else { 1 };
            WeightBlock::new(w, mult, keys)
        })
        .collect();
    Ok(SubspaceBasis { k, dim, orbit_reduced: reduced, blocks })
}

/// Exact basis of `S^k_0 sl(N)`: column-symmetric tensors killed by every contraction.
pub fn trace_free_symmetric_basis(k: usize, dim: usize) -> Result<SubspaceBasis> {
    build_basis(k, dim, false)
}

/// The same space, keeping one weight per `S_N`-orbit; far cheaper and enough for ranks.
pub fn trace_free_symmetric_blocks(k: usize, dim: usize) -> Result<SubspaceBasis> {
    build_basis(k, dim, true)
}

fn block_image_rank(block: &WeightBlock, op: &BlockOp) -> usize {
    if block.basis.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Gq>> = block.basis.iter().map(|v| op.apply(v)).collect();
    ExactMatrix::from_rows(rows).expect("rectangular").rank()
}

fn rank_of(basis: &SubspaceBasis, g: &GroupAlgebraElement, side: Side, symmetrize: bool) -> u64 {
    basis
        .blocks
        .iter()
        .map(|b| b.multiplicity * block_image_rank(b, &BlockOp::group(b, g, side, symmetrize)) as u64)
        .sum()
}

fn check_partition(lam: &Partition, k: usize) -> Result<()> {
    if lam.size() as usize != k || lam.0.windows(2).any(|w| w[0] < w[1]) || lam.0.contains(&0) {
        return Err(Error::Invalid(format!("{lam} is not a partition of {k}")));
    }
    Ok(())
}

/// Rank of the central idempotent `e_λ` acting on `S^k_0 sl(N)`.
pub fn isotypic_rank(lam: &Partition, k: usize, dim: usize) -> Result<u64> {
    check_partition(lam, k)?;
    let basis = trace_free_symmetric_blocks(k, dim)?;
    Ok(rank_of(&basis, &central_idempotent(lam), Side::Lower, false))
}

/// Ranks of all isotypic projections on `basis`, acting on the given side.
pub fn isotypic_ranks(basis: &SubspaceBasis, side: Side) -> Vec<(Partition, u64)> {
    partitions(basis.k as u32)
        .into_iter()
        .map(|lam| {
            let r = rank_of(basis, &central_idempotent(&lam), side, false);
            (lam, r)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotypicRow {
    pub k: usize,
    pub dim: usize,
    pub lambda: Vec<u32>,
    pub rank: u64,
    pub highest_weight: Vec<i64>,
    /// Weyl dimension of `λ + λ*`; only meaningful in the stable range.
    pub weyl_dim: u64,
    pub stable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotypicTable {
    pub k: usize,
    pub dim: usize,
    pub total_dim: u64,
    pub rows: Vec<IsotypicRow>,
}

pub fn isotypic_table(k: usize, dim: usize) -> Result<IsotypicTable> {
    let basis = trace_free_symmetric_blocks(k, dim)?;
    let rows = isotypic_ranks(&basis, Side::Lower)
        .into_iter()
        .map(|(lam, rank)| IsotypicRow {
            k,
            dim,
            highest_weight: lambda_plus_dual(&lam.0, dim),
            weyl_dim: cartan_dim(&lam.0, dim),
            stable: is_stable(k as u32, dim),
            lambda: lam.0,
            rank,
        })
        .collect();
    Ok(IsotypicTable { k, dim, total_dim: basis.dimension(), rows })
}

// ---------------------------------------------------------------- highest-weight vectors

#[derive(Clone, Debug, Serialize)]
pub struct HighestWeightVector {
    pub lambda: Partition,
    pub tensor: MixedTensor,
    pub nonzero: bool,
    pub weight: Vec<i64>,
}

fn e_lambda(lam: &Partition) -> Idx {
    lam.0.iter().enumerate().flat_map(|(i, &l)| std::iter::repeat_n(i as u8, l as usize)).collect()
}

fn eps_lambda(lam: &Partition, dim: usize) -> Idx {
    lam.0.iter().enumerate().flat_map(|(i, &l)| std::iter::repeat_n((dim - 1 - i) as u8, l as usize)).collect()
}

fn hw_candidate(lam: &Partition, dim: usize, p: &GroupAlgebraElement) -> MixedTensor {
    let k = lam.size() as usize;
    let mut seed = MixedTensor::zero(dim, k, 0);
    seed.set(&e_lambda(lam), &[], Gq::one());
    let up = act_on_slots(p, &seed, Side::Upper);
    let mut low = MixedTensor::zero(dim, 0, k);
    low.set(&[], &eps_lambda(lam, dim), Gq::one());
    up.tensor(&low).column_symmetrize()
}

/// `p_λ(e_λ) ⊗ ε^λ` symmetrized over columns, with `p_λ` the central idempotent.
pub fn highest_weight_vector(lam: &Partition, dim: usize) -> Result<HighestWeightVector> {
    if 2 * lam.depth() > dim {
        return Err(Error::Invalid(format!("2·depth({lam}) > N={dim}")));
    }
    let t = hw_candidate(lam, dim, &central_idempotent(lam));
    let weight = t
        .entries()
        .keys()
        .next()
        .map(|(u, l)| MixedTensor::weight_of(dim, u, l).into_iter().map(i64::from).collect())
        .unwrap_or_else(|| lambda_plus_dual(&lam.0, dim));
    Ok(HighestWeightVector { lambda: lam.clone(), nonzero: !t.is_zero(), tensor: t, weight })
}

/// Sum of the Young symmetrizers of all standard tableaux of shape `λ`.
pub fn young_sum(lam: &Partition) -> GroupAlgebraElement {
    let k = lam.size() as usize;
    standard_tableaux(lam)
        .iter()
        .map(|t| young_symmetrizer(t).expect("standard"))
        .fold(GroupAlgebraElement::zero(k), |a, b| a.add(&b))
}

pub fn verify_highest_weight(lam: &Partition, dim: usize) -> Result<VerificationReport> {
    let k = lam.size() as usize;
    let mut rep = VerificationReport::new(format!("highest_weight_vector {lam}"))
        .param("lambda", &lam.0)
        .param("N", dim);
    let hw = highest_weight_vector(lam, dim)?;
    if !hw.nonzero {
        rep.finding(format!("λ={lam}, N={dim}"), "highest-weight candidate vanishes".into());
        return Ok(rep);
    }
    rep.checked += 1;
    let t = &hw.tensor;
    let expected = lambda_plus_dual(&lam.0, dim);
    let weights_ok = t.entries().keys().all(|(u, l)| {
        MixedTensor::weight_of(dim, u, l).into_iter().map(i64::from).collect::<Vec<_>>() == expected
    });
    rep.check(weights_ok, || "weight".into(), || format!("{:?} vs {expected:?}", hw.weight));
    rep.check(t.is_totally_trace_free(), || "trace-free".into(), || "nonzero contraction".into());
    rep.check(t.is_column_symmetric(), || "column symmetry".into(), || "not symmetric".into());
    for i in 0..dim as u8 {
        for j in i + 1..dim as u8 {
            let r = gl_action(t, i, j);
            rep.check(r.is_zero(), || format!("E_{i}{j}"), || format!("{} nonzero entries", r.nnz()));
        }
    }
    for mu in partitions(k as u32) {
        let img = act_on_slots(&central_idempotent(&mu), t, Side::Lower);
        let ok = if mu == *lam { img == *t } else { img.is_zero() };
        rep.check(ok, || format!("e_{mu} on lower slots"), || "wrong isotypic component".into());
    }
    let young = hw_candidate(lam, dim, &young_sum(lam));
    rep.check(!young.is_zero(), || "Young-symmetrizer variant".into(), || "vanishes".into());
    Ok(rep)
}

// ---------------------------------------------------------------- skew lemma

/// Alternating sum over all permutations of the given upper slots.
pub fn skew_symmetrize(t: &MixedTensor, slots: &[usize]) -> MixedTensor {
    let mut g = GroupAlgebraElement::zero(t.up);
    for p in all_perms(slots.len()) {
        let mut v: Vec<u8> = (0..t.up as u8).collect();
        for (i, &s) in slots.iter().enumerate() {
            v[s] = slots[p.apply(i)] as u8;
        }
        g.add_term(Permutation(v), &Gq::from_int(p.sign()));
    }
    act_on_slots(&g, t, Side::Upper)
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    multisets(n, size)
        .into_iter()
        .filter(|m| m.windows(2).all(|w| w[0] < w[1]))
        .map(|m| m.into_iter().map(usize::from).collect())
        .collect()
}

/// Skew-symmetrizing `Σ_A c(A) r(A) (T)` over any `depth(λ)+1` slots gives zero.
pub fn skew_vanishing_check(lam: &Partition, k: usize, dim: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    check_partition(lam, k)?;
    if lam.depth() + 1 > k {
        return Err(Error::Invalid(format!("depth({lam})+1 exceeds k={k}")));
    }
    let mut rep = VerificationReport::new(format!("skew_vanishing {lam}"))
        .param("lambda", &lam.0)
        .param("N", dim)
        .param("trials", trials)
        .param("seed", seed);
    let p = young_sum(lam);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut depth_skew_nonzero = false;
    for trial in 0..trials {
        let t = random_tensor(dim, k, 0, dim.pow(k as u32), &mut rng);
        let pt = act_on_slots(&p, &t, Side::Upper);
        for s in subsets(k, lam.depth() + 1) {
            let r = skew_symmetrize(&pt, &s);
            rep.check(r.is_zero(), || format!("trial {trial}, slots {s:?}"), || format!("{} nonzero entries", r.nnz()));
        }
        depth_skew_nonzero |= subsets(k, lam.depth()).iter().any(|s| !skew_symmetrize(&pt, s).is_zero());
    }
    rep.note(format!("skew over depth(λ) slots nonzero somewhere: {depth_skew_nonzero}"));
    Ok(rep)
}

// ---------------------------------------------------------------- lemma and definition checks

fn unit(dim: usize, k: usize, up: &[u8], low: &[u8]) -> MixedTensor {
    let mut t = MixedTensor::zero(dim, k, k);
    t.set(up, low, Gq::one());
    t
}

fn relabel(t: &MixedTensor, rho: &Permutation) -> MixedTensor {
    let mut r = MixedTensor::zero(t.dim, t.up, t.low);
    for ((u, l), v) in t.entries() {
        r.add_to(&permute_tuple(rho, u), &permute_tuple(rho, l), v);
    }
    r
}

/// Inputs on which linear identities are tested: all basis tensors when there are at
/// most 256 of them, seeded dense tensors otherwise.
fn probe_tensors(dim: usize, k: usize, seed: u64) -> Vec<MixedTensor> {
    if dim.pow(2 * k as u32) <= 256 {
        let tuples = all_tuples(dim, k);
        let mut out = Vec::new();
        for u in &tuples {
            for l in &tuples {
                out.push(unit(dim, k, u, l));
            }
        }
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..5).map(|_| random_tensor(dim, k, k, 3 * dim.pow(k as u32), &mut rng)).collect()
    }
}

/// Conjugation by `S²_k` relabels the input, conjugation by `S¹_k` relabels the output.
pub fn conjugation_lemmas_check(k: usize, dim: usize, samples: usize, seed: u64) -> Result<VerificationReport> {
    if k == 0 || k > 3 || dim > 4 {
        return Err(Error::Invalid(format!("conjugation lemmas checked for k ≤ 3, N ≤ 4, got k={k}, N={dim}")));
    }
    let mut rep = VerificationReport::new("conjugation_lemmas").param("k", k).param("N", dim).param("seed", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = all_perms(2 * k);
    let ss: Vec<Permutation> = if all.len() <= samples {
        all
    } else {
        (0..samples).map(|_| all[rng.gen_range(0..all.len())].clone()).collect()
    };
    let probes = probe_tensors(dim, k, seed);
    for s in &ss {
        let cs = c_s_operator(s, dim)?;
        let base: Vec<MixedTensor> = probes.iter().map(|t| cs.apply(t)).collect();
        for rho in all_perms(k) {
            let even = c_s_operator(&ad(&lift(&rho, 1), s), dim)?;
            let odd = c_s_operator(&ad(&lift(&rho, 0), s), dim)?;
            for (t, b) in probes.iter().zip(&base) {
                let lhs = even.apply(&relabel(t, &rho));
                rep.check(lhs == *b, || format!("even: s={s}, σ̂={rho}"), || "operators differ".into());
                let lhs = odd.apply(t);
                rep.check(lhs == relabel(b, &rho), || format!("odd: s={s}, σ̂={rho}"), || "operators differ".into());
            }
        }
    }
    Ok(rep)
}

/// `C_s` with some even position sent to an even one kills trace-free tensors.
pub fn trace_killing_check(k: usize, dim: usize, seed: u64) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("c_s_trace_killing").param("k", k).param("N", dim);
    let basis = trace_free_symmetric_blocks(k, dim)?;
    let ts: Vec<MixedTensor> = basis.tensors().into_iter().take(12).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = all_perms(2 * k);
    let mut tested = 0;
    while tested < 8 {
        let s = &all[rng.gen_range(0..all.len())];
        if !(0..k).any(|m| s.apply(2 * m + 1) % 2 == 1) {
            continue;
        }
        tested += 1;
        let cs = c_s_operator(s, dim)?;
        for t in &ts {
            let r = cs.apply(t);
            rep.check(r.is_zero(), || format!("s={s}"), || format!("{} nonzero entries", r.nnz()));
        }
    }
    Ok(rep)
}

/// The simplified action equals the defining average on symmetric tensors, and the
/// operator commutes with `gl(V)` and preserves column symmetry.
pub fn commutant_definition_check(k: usize, dim: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    if k == 0 || k > 3 {
        return Err(Error::Invalid(format!("definition check needs 1 ≤ k ≤ 3, got {k}")));
    }
    let mut rep = VerificationReport::new("commutant_definition").param("k", k).param("N", dim).param("seed", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts: Vec<MixedTensor> =
        (0..trials).map(|_| random_symmetric(dim, k, 2 * dim.pow(k as u32), &mut rng)).collect();
    for tau in partitions(k as u32) {
        let op = commutant_basis_op(&tau);
        for (i, t) in ts.iter().enumerate() {
            let a = op.apply(t);
            rep.check(a == op.apply_by_definition(t), || format!("τ={tau}, tensor {i}"), || "actions differ".into());
            rep.check(a.is_column_symmetric(), || format!("τ={tau}, tensor {i}"), || "not symmetric".into());
            for x in 0..dim as u8 {
                for y in 0..dim as u8 {
                    let l = op.apply(&gl_action(t, x, y));
                    let r = gl_action(&a, x, y);
                    rep.check(l == r, || format!("τ={tau}, E_{x}{y}, tensor {i}"), || "not equivariant".into());
                }
            }
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------- multiplication cross-check

/// `C_(σ')∘C_(σ) = Σ_τ A_(τ) C_(τ)` as operators on `S^k_0`, with `A` from `class_multiply`.
pub fn commutant_mult_crosscheck(k: usize, dim: usize) -> Result<VerificationReport> {
    if k == 0 || k > 3 || dim < 2 * k {
        return Err(Error::Invalid(format!("cross-check needs 1 ≤ k ≤ 3 and N ≥ 2k, got k={k}, N={dim}")));
    }
    let mut rep = VerificationReport::new("commutant_mult_crosscheck").param("k", k).param("N", dim);
    let basis = trace_free_symmetric_blocks(k, dim)?;
    rep.set_param("dim_S^k_0", basis.dimension());
    let classes = partitions(k as u32);
    let ops: Vec<Vec<BlockOp>> = basis
        .blocks
        .iter()
        .map(|b| classes.iter().map(|t| BlockOp::group(b, commutant_basis_op(t).group_element(), Side::Lower, false)).collect())
        .collect();
    // images of the basis under every basis operator
    let images: Vec<Vec<Vec<Vec<Gq>>>> = basis
        .blocks
        .iter()
        .zip(&ops)
        .map(|(b, os)| os.iter().map(|o| b.basis.iter().map(|v| o.apply(v)).collect()).collect())
        .collect();
    for (bi, b) in basis.blocks.iter().enumerate() {
        let tm = b.trace_matrix();
        for (ti, tau) in classes.iter().enumerate() {
            for (vi, img) in images[bi][ti].iter().enumerate() {
                let r = tm.mul_vec(img)?;
                rep.check(r.iter().all(Gq::is_zero), || format!("τ={tau}, weight {:?}, vector {vi}", b.weight), || {
                    "image not trace-free".into()
                });
            }
        }
    }
    for (ai, a) in classes.iter().enumerate() {
        for (ci, c) in classes.iter().enumerate() {
            let prod = class_multiply(&ClassElement::basis(a), &ClassElement::basis(c))?;
            let mut ok = true;
            for (bi, b) in basis.blocks.iter().enumerate() {
                for vi in 0..b.basis.len() {
                    let lhs = ops[bi][ai].apply(&images[bi][ci][vi]);
                    let mut rhs = vec![Gq::zero(); b.keys.len()];
                    for (ti, tau) in classes.iter().enumerate() {
                        let coef = Gq::from_rational(prod.coeff(tau));
                        for (x, y) in rhs.iter_mut().zip(&images[bi][ti][vi]) {
                            *x += &(&coef * y);
                        }
                    }
                    ok &= lhs == rhs;
                }
            }
            rep.check(ok, || format!("C{a}·C{c}"), || format!("differs from {prod}"));
        }
    }
    // linear independence of the flattened restricted operators
    let flat: Vec<Vec<Gq>> = (0..classes.len())
        .map(|ti| images.iter().flat_map(|blk| blk[ti].iter().flatten().cloned()).collect())
        .collect();
    let rank = ExactMatrix::from_rows(flat)?.rank();
    rep.set_param("operator_rank", rank);
    rep.check(rank == classes.len(), || "independence".into(), || format!("rank {rank} < p(k)={}", classes.len()));
    Ok(rep)
}

// ---------------------------------------------------------------- decomposition report

/// Dimensions, isotypic ranks and their cross-checks for `S^k_0 sl(N)`.
pub fn verify_decomposition(k: usize, dim: usize) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("decomposition").param("k", k).param("N", dim);
    let basis = trace_free_symmetric_blocks(k, dim)?;
    let total = basis.dimension();
    rep.set_param("dim_S^k_0", total);
    rep.check(basis.verified_rank() == total, || "basis independence".into(), || "rank deficit".into());
    let lower = isotypic_ranks(&basis, Side::Lower);
    let upper = isotypic_ranks(&basis, Side::Upper);
    let sum: u64 = lower.iter().map(|(_, r)| r).sum();
    rep.set_param("ranks", lower.iter().map(|(l, r)| (l.to_string(), *r)).collect::<BTreeMap<_, _>>());
    rep.check(sum == total, || "Σ ranks".into(), || format!("{sum} vs {total}"));
    for ((lam, a), (_, b)) in lower.iter().zip(&upper) {
        rep.check(a == b, || format!("λ={lam} upper vs lower"), || format!("{b} vs {a}"));
    }
    let stable = is_stable(k as u32, dim);
    if stable {
        let weyl: u64 = lower.iter().map(|(l, _)| cartan_dim(&l.0, dim)).sum();
        rep.check(weyl == total, || "Σ Weyl dims".into(), || format!("{weyl} vs {total}"));
        for (lam, r) in &lower {
            let w = cartan_dim(&lam.0, dim);
            rep.check(*r == w, || format!("λ={lam} Weyl"), || format!("rank {r} vs {w}"));
            rep.check(*r > 0, || format!("λ={lam} nonzero"), || "component vanishes".into());
        }
        let nonzero = lower.iter().filter(|(_, r)| *r > 0).count();
        rep.set_param("nonzero_components", nonzero);
        rep.check(nonzero == lower.len(), || "p(k) components".into(), || format!("{nonzero} of {}", lower.len()));
    } else {
        rep.note("below the stable range: ranks recorded without comparison to the Weyl formula");
    }
    if k <= 3 {
        rep.add_child(young_images_check(&basis)?);
    }
    Ok(rep)
}

/// The central idempotent and the symmetrized Young-symmetrizer sum have the same image.
pub fn young_images_check(basis: &SubspaceBasis) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("young_vs_central_images").param("k", basis.k).param("N", basis.dim);
    for lam in partitions(basis.k as u32) {
        let e = central_idempotent(&lam);
        let y = young_sum(&lam);
        let mut ok = true;
        for b in &basis.blocks {
            if b.basis.is_empty() {
                continue;
            }
            let oe = BlockOp::group(b, &e, Side::Lower, false);
            let oy = BlockOp::group(b, &y, Side::Lower, true);
            let ie: Vec<Vec<Gq>> = b.basis.iter().map(|v| oe.apply(v)).collect();
            let iy: Vec<Vec<Gq>> = b.basis.iter().map(|v| oy.apply(v)).collect();
            let re = ExactMatrix::from_rows(ie.clone())?.rank();
            let ry = ExactMatrix::from_rows(iy.clone())?.rank();
            let both = ExactMatrix::from_rows(ie.into_iter().chain(iy).collect())?.rank();
            ok &= re == ry && ry == both;
        }
        rep.check(ok, || format!("λ={lam}"), || "images differ".into());
    }
    Ok(rep)
}

// ---------------------------------------------------------------- ⊗²sl

/// Dimensions of the pieces of `sl(N) ⊗ sl(N)` from exact projector ranks.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct SevenPieces {
    pub sym_sym: u64,
    pub skew_skew: u64,
    pub adjoint_sym: u64,
    pub killing: u64,
    pub sym_skew: u64,
    pub skew_sym: u64,
    pub adjoint_bracket: u64,
    /// `dim gl⊗gl − dim sl⊗sl`.
    pub trace_complement: u64,
    /// Rank of the bracket map on `Λ² sl`.
    pub bracket_rank: u64,
}

impl SevenPieces {
    pub fn sum(&self) -> u64 {
        self.sym_sym + self.skew_skew + self.adjoint_sym + self.killing + self.sym_skew + self.skew_sym + self.adjoint_bracket
    }
}

type Quad = [u8; 4]; // (B, D, A, C) of X^{BD}_{AC}

fn quad_rows(keys: &[Quad], f: impl Fn(&Quad) -> Vec<(Vec<u8>, Gq)>) -> ExactMatrix {
    let mut rows: BTreeMap<Vec<u8>, BTreeMap<usize, Gq>> = BTreeMap::new();
    for (ci, q) in keys.iter().enumerate() {
        for (rk, c) in f(q) {
            *rows.entry(rk).or_default().entry(ci).or_default() += &c;
        }
    }
    let mut m = ExactMatrix::zeros(rows.len().max(1), keys.len());
    for (r, cols) in rows.values().enumerate() {
        for (c, v) in cols {
            m[(r, *c)] = v.clone();
        }
    }
    m
}

fn quad_op(keys: &[Quad], f: impl Fn(&Quad) -> Vec<(Quad, Gq)>) -> Vec<Vec<(usize, Gq)>> {
    let index: HashMap<Quad, usize> = keys.iter().enumerate().map(|(i, q)| (*q, i)).collect();
    let mut cols: Vec<BTreeMap<usize, Gq>> = vec![BTreeMap::new(); keys.len()];
    for (ci, q) in keys.iter().enumerate() {
        for (out, c) in f(q) {
            *cols[index[&out]].entry(ci).or_default() += &c;
        }
    }
    cols.into_iter().map(|m| m.into_iter().collect()).collect()
}

fn apply_rows(op: &[Vec<(usize, Gq)>], v: &[Gq]) -> Vec<Gq> {
    op.iter().map(|row| row.iter().map(|(c, x)| x * &v[*c]).sum()).collect()
}

fn image_rank(op: &[Vec<(usize, Gq)>], basis: &[Vec<Gq>]) -> u64 {
    if basis.is_empty() {
        return 0;
    }
    ExactMatrix::from_rows(basis.iter().map(|v| apply_rows(op, v)).collect()).expect("rectangular").rank() as u64
}

fn matrix_image_rank(m: &ExactMatrix, basis: &[Vec<Gq>]) -> u64 {
    if basis.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Gq>> = basis.iter().map(|v| m.mul_vec(v).expect("shape")).collect();
    ExactMatrix::from_rows(rows).expect("rectangular").rank() as u64
}

/// Contraction `(upper slot, lower slot)` as a row generator: output indices are the rest.
fn contraction(u: usize, l: usize) -> impl Fn(&Quad) -> Vec<(Vec<u8>, Gq)> {
    move |q: &Quad| {
        let (up, low) = ([q[0], q[1]], [q[2], q[3]]);
        if up[u] != low[l] {
            return vec![];
        }
        vec![(vec![up[1 - u], low[1 - l]], Gq::one())]
    }
}

/// Exact dimensions of the seven pieces of `⊗² sl(N)` via weight-space projector ranks.
pub fn seven_pieces(dim: usize) -> Result<SevenPieces> {
    if dim < 2 {
        return Err(Error::Invalid("need N ≥ 2".into()));
    }
    let mut by_weight: BTreeMap<Vec<i32>, Vec<Quad>> = BTreeMap::new();
    for t in all_tuples(dim, 4) {
        let q: Quad = [t[0], t[1], t[2], t[3]];
        by_weight.entry(MixedTensor::weight_of(dim, &q[..2], &q[2..])).or_default().push(q);
    }
    let half = Gq::from_ratio(1, 2);
    let sym = |f: fn(&Quad) -> Quad, sign: i64| {
        let h = half.clone();
        move |q: &Quad| vec![(*q, h.clone()), (f(q), h.scale_int(sign))]
    };
    let swap_up = |q: &Quad| [q[1], q[0], q[2], q[3]];
    let swap_low = |q: &Quad| [q[0], q[1], q[3], q[2]];
    let swap_col = |q: &Quad| [q[1], q[0], q[3], q[2]];
    let mut p = SevenPieces::default();
    let mut sl_total = 0u64;
    for (w, keys) in &by_weight {
        let stack = |pairs: &[(usize, usize)]| {
            let ms: Vec<ExactMatrix> = pairs.iter().map(|&(u, l)| quad_rows(keys, contraction(u, l))).collect();
            let rows: Vec<Vec<Gq>> = ms.iter().flat_map(|m| (0..m.rows()).map(|r| m.row(r).to_vec())).collect();
            ExactMatrix::from_rows(rows).expect("rectangular")
        };
        let k_sl = stack(&[(0, 0), (1, 1)]).kernel();
        let k_tf = stack(&[(0, 0), (1, 1), (0, 1), (1, 0)]).kernel();
        sl_total += k_sl.len() as u64;
        let comb = |eu: i64, el: i64| {
            let pu = quad_op(keys, sym(swap_up, eu));
            let pl = quad_op(keys, sym(swap_low, el));
            let img: Vec<Vec<Gq>> = k_tf.iter().map(|v| apply_rows(&pu, &apply_rows(&pl, v))).collect();
            if img.is_empty() {
                0
            } else {
                ExactMatrix::from_rows(img).expect("rectangular").rank() as u64
            }
        };
        let q_pp = comb(1, 1);
        let q_mm = comb(-1, -1);
        let q_pm = comb(1, -1);
        let q_mp = comb(-1, 1);
        let s2 = image_rank(&quad_op(keys, sym(swap_col, 1)), &k_sl);
        let l2 = image_rank(&quad_op(keys, sym(swap_col, -1)), &k_sl);
        // bracket X ↦ X^{BD}_{DC} − X^{DB}_{CD} on Λ² sl
        let bracket = quad_rows(keys, |q: &Quad| {
            let mut out = vec![];
            if q[1] == q[2] {
                out.push((vec![q[0], q[3]], Gq::one()));
            }
            if q[0] == q[3] {
                out.push((vec![q[1], q[2]], Gq::from_int(-1)));
            }
            out
        });
        let alt = quad_op(keys, sym(swap_col, -1));
        let alt_sl: Vec<Vec<Gq>> = k_sl.iter().map(|v| apply_rows(&alt, v)).collect();
        let b_rank = matrix_image_rank(&bracket, &alt_sl);
        let inv = if w.iter().all(|&x| x == 0) { invariants_dim(dim, keys, &k_sl) } else { 0 };
        p.sym_sym += q_pp;
        p.skew_skew += q_mm;
        p.sym_skew += q_pm;
        p.skew_sym += q_mp;
        p.killing += inv;
        p.adjoint_sym += s2 - q_pp - q_mm - inv;
        p.adjoint_bracket += l2 - q_pm - q_mp;
        p.bracket_rank += b_rank;
    }
    p.trace_complement = (dim as u64).pow(4) - sl_total;
    Ok(p)
}

/// `gl(N)`-invariants inside the weight-zero part of `sl ⊗ sl`.
fn invariants_dim(dim: usize, keys: &[Quad], k_sl: &[Vec<Gq>]) -> u64 {
    if k_sl.is_empty() {
        return 0;
    }
    let m = quad_rows(keys, |q: &Quad| {
        let mut out = vec![];
        for i in 0..dim as u8 {
            for j in 0..dim as u8 {
                if i == j {
                    continue;
                }
                for p in 0..2 {
                    if q[p] == j {
                        let mut r = *q;
                        r[p] = i;
                        out.push((vec![i, j, r[0], r[1], r[2], r[3]], Gq::one()));
                    }
                    if q[2 + p] == i {
                        let mut r = *q;
                        r[2 + p] = j;
                        out.push((vec![i, j, r[0], r[1], r[2], r[3]], Gq::from_int(-1)));
                    }
                }
            }
        }
        out
    });
    k_sl.len() as u64 - matrix_image_rank(&m, k_sl)
}

/// Closed forms of the piece dimensions, used as an independent oracle.
pub fn seven_pieces_closed_form(dim: usize) -> SevenPieces {
    let n = dim as u64;
    let n2 = n * n;
    SevenPieces {
        sym_sym: n2 * (n - 1) * (n + 3) / 4,
        skew_skew: n2 * (n + 1) * n.saturating_sub(3) / 4,
        adjoint_sym: n2 - 1,
        killing: 1,
        sym_skew: (n2 - 1) * (n2 - 4) / 4,
        skew_sym: (n2 - 1) * (n2 - 4) / 4,
        adjoint_bracket: n2 - 1,
        trace_complement: 2 * n2 - 1,
        bracket_rank: n2 - 1,
    }
}

/// Piece dimensions, completeness, and membership of the `T`, `U`, `Ũ` resolution.
pub fn seven_pieces_check(dim: usize, seed: u64) -> Result<VerificationReport> {
    if dim < 3 {
        return Err(Error::Invalid(format!("seven-piece check needs N ≥ 3, got {dim}")));
    }
    let mut rep = VerificationReport::new("seven_pieces").param("N", dim).param("seed", seed);
    let p = seven_pieces(dim)?;
    let oracle = seven_pieces_closed_form(dim);
    rep.set_param("pieces", &p);
    let n2 = (dim * dim) as u64;
    rep.check(p == oracle, || "piece dimensions".into(), || format!("{p:?} vs {oracle:?}"));
    rep.check(p.sum() == (n2 - 1) * (n2 - 1), || "Σ pieces = dim sl⊗sl".into(), || p.sum().to_string());
    rep.check(p.sum() + p.trace_complement == n2 * n2, || "Σ pieces + traces = N⁴".into(), || {
        (p.sum() + p.trace_complement).to_string()
    });
    rep.check(p.adjoint_bracket == n2 - 1 && p.killing == 1, || "adjoint and Killing".into(), || format!("{p:?}"));
    let n = dim - 2;
    for (i, (v, w)) in seeded_pairs(dim, seed, 5).iter().enumerate() {
        let (u, ut) = u_closed_form(n, v, w);
        let outer = MixedTensor::from_matrix(v.matrix()).tensor(&MixedTensor::from_matrix(w.matrix()));
        let t = outer.sub(&crate::ambient::trace_tensor(&u, &ut))?;
        rep.check(t.is_totally_trace_free(), || format!("pair {i}: T trace-free"), || "contraction".into());
        let vw = v.matrix().mul(w.matrix())?;
        let wv = w.matrix().mul(v.matrix())?;
        let bracket = vw.add(&wv.scale(&Gq::from_int(-1)))?;
        let diff = u.add(&ut.scale(&Gq::from_int(-1)))?;
        let expect = bracket.scale(&Gq::from_ratio(-1, dim as i64));
        rep.check(diff == expect, || format!("pair {i}: U − Ũ = −[V,W]/N"), || "mismatch".into());
        let s = u.add(&ut)?;
        let sym = vw.add(&wv)?;
        let tr = trace(&vw);
        let ok = in_span(&s, &[&sym, &ExactMatrix::identity(dim).scale(&tr)]);
        rep.check(ok, || format!("pair {i}: U + Ũ in span(VW+WV, tr(VW)·1)"), || "outside".into());
        let bt = bracket_of(&outer);
        rep.check(bt == bracket, || format!("pair {i}: bracket projection"), || "mismatch".into());
    }
    Ok(rep)
}

fn bracket_of(x: &MixedTensor) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(x.dim, x.dim);
    for ((u, l), v) in x.entries() {
        if u[1] == l[0] {
            m[(u[0] as usize, l[1] as usize)] += v;
        }
        if u[0] == l[1] {
            m[(u[1] as usize, l[0] as usize)] -= v;
        }
    }
    m
}

fn in_span(target: &ExactMatrix, gens: &[&ExactMatrix]) -> bool {
    let flat = |m: &ExactMatrix| -> Vec<Gq> { (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect() };
    let g: Vec<Vec<Gq>> = gens.iter().map(|m| flat(m)).collect();
    let r0 = ExactMatrix::from_rows(g.clone()).expect("rectangular").rank();
    let mut with = g;
    with.push(flat(target));
    ExactMatrix::from_rows(with).expect("rectangular").rank() == r0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition(v.to_vec())
    }

    #[test]
    fn weights_and_dimensions() {
        assert_eq!(lambda_plus_dual(&[2, 1], 4), vec![2, 1, -1, -2]);
        assert_eq!(lambda_plus_dual(&[1, 1, 1], 4), vec![1, 0, 0, -1]);
        assert_eq!(lambda_plus_dual(&[1], 5), vec![1, 0, 0, 0, -1]);
        assert_eq!(weyl_dim(&[2, 0, 0, -2]).unwrap(), BigInt::from(84));
        assert_eq!(weyl_dim(&[1, 1, -1, -1]).unwrap(), BigInt::from(20));
        for n in 2..7 {
            assert_eq!(cartan_dim(&[1], n), (n * n - 1) as u64);
        }
        assert!(weyl_dim(&[0, 1]).is_err());
    }

    #[test]
    fn c_s_examples() {
        let dim = 3;
        let id = c_s_operator(&Permutation::from_cycles(2, &[&[1, 2]]).unwrap(), dim).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = random_tensor(dim, 1, 1, 6, &mut rng);
        assert_eq!(id.apply(&t), t);
        // the class of (1234): average over its S¹×S² conjugates
        let op = commutant_basis_op(&part(&[2]));
        for u in all_tuples(dim, 2) {
            for l in all_tuples(dim, 2) {
                let x = unit(dim, 2, &u, &l);
                let mut want = MixedTensor::zero(dim, 2, 2);
                want.add_to(&[u[1], u[0]], &[l[0], l[1]], &Gq::from_ratio(1, 2));
                want.add_to(&[u[0], u[1]], &[l[1], l[0]], &Gq::from_ratio(1, 2));
                assert_eq!(op.apply_by_definition(&x), want);
            }
        }
    }

    #[test]
    fn three_cycle_display() {
        // (ε-slot order | e-slot order), 1-based, as displayed
        let terms: [([u8; 3], [u8; 3]); 12] = [
            ([1, 2, 3], [3, 1, 2]),
            ([1, 3, 2], [2, 1, 3]),
            ([2, 1, 3], [3, 2, 1]),
            ([2, 3, 1], [1, 2, 3]),
            ([3, 1, 2], [2, 3, 1]),
            ([3, 2, 1], [1, 3, 2]),
            ([1, 3, 2], [3, 2, 1]),
            ([1, 2, 3], [2, 3, 1]),
            ([2, 3, 1], [3, 1, 2]),
            ([2, 1, 3], [1, 3, 2]),
            ([3, 2, 1], [2, 1, 3]),
            ([3, 1, 2], [1, 2, 3]),
        ];
        let dim = 2;
        let op = commutant_basis_op(&part(&[3]));
        for u in all_tuples(dim, 3) {
            for l in all_tuples(dim, 3) {
                let mut want = MixedTensor::zero(dim, 3, 3);
                for (eps, e) in &terms {
                    let lo: Idx = eps.iter().map(|&p| l[p as usize - 1]).collect();
                    let up: Idx = e.iter().map(|&p| u[p as usize - 1]).collect();
                    want.add_to(&up, &lo, &Gq::from_ratio(1, 12));
                }
                assert_eq!(op.apply_by_definition(&unit(dim, 3, &u, &l)), want, "{u:?} {l:?}");
            }
        }
    }

    #[test]
    fn sigma_tilde_of_representatives() {
        for k in 1..=3 {
            for rho in all_perms(k) {
                assert_eq!(sigma_tilde(&s_for(&rho)), Some(rho.clone()));
            }
        }
        assert_eq!(sigma_tilde(&Permutation::identity(4)), None);
    }

    #[test]
    fn conjugation_lemmas() {
        assert!(conjugation_lemmas_check(2, 2, 24, 3).unwrap().passed());
        assert!(conjugation_lemmas_check(2, 3, 10, 4).unwrap().passed());
        assert!(conjugation_lemmas_check(3, 2, 10, 5).unwrap().passed());
        assert!(trace_killing_check(2, 3, 6).unwrap().passed());
    }

    #[test]
    fn commutant_definition() {
        let r = commutant_definition_check(2, 3, 2, 7).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
        let r = commutant_definition_check(3, 2, 2, 8).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
    }

    #[test]
    fn trace_free_dimensions() {
        for n in 2..5 {
            assert_eq!(trace_free_symmetric_basis(1, n).unwrap().dimension(), (n * n - 1) as u64);
        }
        let full = trace_free_symmetric_basis(2, 4).unwrap();
        assert_eq!(full.dimension(), 104);
        assert_eq!(trace_free_symmetric_blocks(2, 4).unwrap().dimension(), 104);
        for t in full.tensors().iter().take(20) {
            assert!(t.is_totally_trace_free() && t.is_column_symmetric());
        }
    }

    #[test]
    fn isotypic_ranks_k2() {
        assert_eq!(isotypic_rank(&part(&[2]), 2, 4).unwrap(), 84);
        assert_eq!(isotypic_rank(&part(&[1, 1]), 2, 4).unwrap(), 20);
        assert_eq!(isotypic_rank(&part(&[1]), 1, 3).unwrap(), 8);
        assert!(isotypic_rank(&part(&[2]), 3, 4).is_err());
    }

    #[test]
    fn decomposition_reports() {
        let r = verify_decomposition(2, 4).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
        let r = verify_decomposition(3, 4).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
    }

    #[test]
    fn crosscheck_k2() {
        let r = commutant_mult_crosscheck(2, 4).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
        assert!(commutant_mult_crosscheck(2, 3).is_err());
    }

    #[test]
    fn highest_weight_vectors() {
        for (lam, n) in [(vec![1], 3), (vec![2, 1], 6), (vec![1, 1], 4), (vec![2], 2)] {
            let r = verify_highest_weight(&part(&lam), n).unwrap();
            assert!(r.passed(), "{lam:?} {n}: {:?}", r.witnesses);
        }
        let hw = highest_weight_vector(&part(&[1]), 3).unwrap();
        assert_eq!(hw.weight, vec![1, 0, -1]);
        assert!(highest_weight_vector(&part(&[1, 1]), 3).is_err());
    }

    #[test]
    fn skew_lemma() {
        for (lam, k, n) in [(vec![2], 2, 3), (vec![2, 1], 3, 3), (vec![3], 3, 2)] {
            let r = skew_vanishing_check(&part(&lam), k, n, 3, 11).unwrap();
            assert!(r.passed(), "{lam:?}");
        }
    }

    #[test]
    fn seven_piece_dimensions() {
        let p = seven_pieces(3).unwrap();
        assert_eq!(p.sum() + p.trace_complement, 81);
        assert_eq!(p.skew_skew, 0);
        assert_eq!(p.adjoint_bracket, 8);
        assert_eq!(p.killing, 1);
        let r = seven_pieces_check(4, 2).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
    }
}
