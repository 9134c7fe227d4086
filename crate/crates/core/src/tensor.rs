//! Sparse mixed tensors `T^{B_1…B_p}_{A_1…A_q}` over an `N`-dimensional space.
//!
//! Slot `i` of the upper index and slot `i` of the lower index form column `i`
//! when the arities agree.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Gq;
use serde::Serialize;
use std::collections::BTreeMap;

pub type Idx = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedTensor {
    pub dim: usize,
    pub up: usize,
    pub low: usize,
    entries: BTreeMap<(Idx, Idx), Gq>,
}

impl MixedTensor {
    pub fn zero(dim: usize, up: usize, low: usize) -> Self {
        MixedTensor { dim, up, low, entries: BTreeMap::new() }
    }

    /// `V^B_A` from a matrix stored as `m[(B, A)]`.
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        let mut t = Self::zero(m.rows(), 1, 1);
        for b in 0..m.rows() {
            for a in 0..m.cols() {
                t.set(&[b as u8], &[a as u8], m[(b, a)].clone());
            }
        }
        t
    }

    pub fn to_matrix(&self) -> Result<ExactMatrix> {
        if self.up != 1 || self.low != 1 {
            return Err(Error::Dimension("not a (1,1) tensor".into()));
        }
        let mut m = ExactMatrix::zeros(self.dim, self.dim);
        for ((u, l), v) in &self.entries {
            m[(u[0] as usize, l[0] as usize)] = v.clone();
        }
        Ok(m)
    }

    pub fn get(&self, up: &[u8], low: &[u8]) -> Gq {
        self.entries.get(&(up.to_vec(), low.to_vec())).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, up: &[u8], low: &[u8], v: Gq) {
        debug_assert!(up.len() == self.up && low.len() == self.low);
        let k = (up.to_vec(), low.to_vec());
        if v.is_zero() {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, v);
        }
    }

    pub fn add_to(&mut self, up: &[u8], low: &[u8], v: &Gq) {
        if v.is_zero() {
            return;
        }
        let k = (up.to_vec(), low.to_vec());
        let e = self.entries.entry(k.clone()).or_default();
        *e += v;
        if e.is_zero() {
            self.entries.remove(&k);
        }
    }

    pub fn entries(&self) -> &BTreeMap<(Idx, Idx), Gq> {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &Gq) -> Self {
        let mut r = Self::zero(self.dim, self.up, self.low);
        for ((u, l), v) in &self.entries {
            r.set(u, l, v * c);
        }
        r
    }

    pub fn add(&self, o: &MixedTensor) -> Result<Self> {
        if (self.dim, self.up, self.low) != (o.dim, o.up, o.low) {
            return Err(Error::Dimension("tensor shapes differ".into()));
        }
        let mut r = self.clone();
        for ((u, l), v) in &o.entries {
            r.add_to(u, l, v);
        }
        Ok(r)
    }

    pub fn sub(&self, o: &MixedTensor) -> Result<Self> {
        self.add(&o.scale(&Gq::from_int(-1)))
    }

    /// Tensor product, slots concatenated.
    pub fn tensor(&self, o: &MixedTensor) -> Self {
        let mut r = Self::zero(self.dim, self.up + o.up, self.low + o.low);
        for ((u1, l1), v1) in &self.entries {
            for ((u2, l2), v2) in &o.entries {
                let u: Idx = u1.iter().chain(u2).copied().collect();
                let l: Idx = l1.iter().chain(l2).copied().collect();
                r.add_to(&u, &l, &(v1 * v2));
            }
        }
        r
    }

    /// Contraction of upper slot `i` with lower slot `j`.
    pub fn contract(&self, i: usize, j: usize) -> Self {
        let mut r = Self::zero(self.dim, self.up - 1, self.low - 1);
        for ((u, l), v) in &self.entries {
            if u[i] != l[j] {
                continue;
            }
            let mut u2 = u.clone();
            u2.remove(i);
            let mut l2 = l.clone();
            l2.remove(j);
            r.add_to(&u2, &l2, v);
        }
        r
    }

    pub fn is_totally_trace_free(&self) -> bool {
        (0..self.up).all(|i| (0..self.low).all(|j| self.contract(i, j).is_zero()))
    }

    /// New tensor with upper slot `p` holding old slot `perm[p]`; likewise lower with `lperm`.
    pub fn permute_slots(&self, uperm: &[usize], lperm: &[usize]) -> Self {
        let mut r = Self::zero(self.dim, self.up, self.low);
        for ((u, l), v) in &self.entries {
            let u2: Idx = uperm.iter().map(|&p| u[p]).collect();
            let l2: Idx = lperm.iter().map(|&p| l[p]).collect();
            r.add_to(&u2, &l2, v);
        }
        r
    }

    /// Simultaneous permutation of columns `(B_i, A_i)`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        self.permute_slots(perm, perm)
    }

    /// Average over all simultaneous column permutations.
    pub fn column_symmetrize(&self) -> Self {
        assert_eq!(self.up, self.low, "column symmetrization needs square arity");
        let perms = crate::classalg::all_perms(self.up);
        let mut r = Self::zero(self.dim, self.up, self.low);
        for p in &perms {
            let idx: Vec<usize> = p.0.iter().map(|&x| x as usize).collect();
            let t = self.permute_columns(&idx);
            for ((u, l), v) in t.entries {
                r.add_to(&u, &l, &v);
            }
        }
        r.scale(&Gq::from_ratio(1, perms.len() as i64))
    }

    pub fn is_column_symmetric(&self) -> bool {
        crate::classalg::all_perms(self.up).iter().all(|p| {
            let idx: Vec<usize> = p.0.iter().map(|&x| x as usize).collect();
            self.permute_columns(&idx) == *self
        })
    }

    /// Weight under the diagonal torus: `+1` per upper index, `-1` per lower index.
    pub fn weight_of(dim: usize, up: &[u8], low: &[u8]) -> Vec<i32> {
        let mut w = vec![0; dim];
        for &u in up {
            w[u as usize] += 1;
        }
        for &l in low {
            w[l as usize] -= 1;
        }
        w
    }
}

/// All index tuples of length `len` over `0..dim`.
pub fn all_tuples(dim: usize, len: usize) -> Vec<Idx> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * dim);
        for t in &out {
            for x in 0..dim {
                let mut t2 = t.clone();
                t2.push(x as u8);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_of_identity() {
        let t = MixedTensor::from_matrix(&ExactMatrix::identity(3));
        let c = t.contract(0, 0);
        assert_eq!(c.get(&[], &[]), Gq::from_int(3));
    }

    #[test]
    fn column_symmetrization_is_idempotent() {
        let mut t = MixedTensor::zero(3, 2, 2);
        t.set(&[0, 1], &[2, 0], Gq::from_int(5));
        let s = t.column_symmetrize();
        assert!(s.is_column_symmetric());
        assert_eq!(s.column_symmetrize(), s);
        assert_eq!(s.get(&[1, 0], &[0, 2]), Gq::from_ratio(5, 2));
    }
}
