//! Normal-ordered differential operators `Σ p_α ∂^α` with Laurent coefficients.

use crate::error::{Error, Result};
use crate::poly::{same_ring, LaurentPoly, Ring};
use crate::scalar::Gq;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Derivative multi-index, one exponent per generator.
pub type DerivIndex = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct WeylOperator {
    ring: Arc<Ring>,
    terms: BTreeMap<DerivIndex, LaurentPoly>,
}

impl Serialize for WeylOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(&DerivIndex, &LaurentPoly)> = self.terms.iter().collect();
        v.serialize(s)
    }
}

fn binom(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// All multi-indices `γ ≤ α` componentwise.
fn sub_indices(alpha: &[u32]) -> Vec<DerivIndex> {
    let mut out = vec![Vec::with_capacity(alpha.len())];
    for &a in alpha {
        let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
        for g in &out {
            for x in 0..=a {
                let mut h = g.clone();
                h.push(x);
                next.push(h);
            }
        }
        out = next;
    }
    out
}

impl WeylOperator {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        WeylOperator { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn identity(ring: &Arc<Ring>) -> Self {
        Self::multiplication(&LaurentPoly::one(ring))
    }

    /// Multiplication by `p`.
    pub fn multiplication(p: &LaurentPoly) -> Self {
        let mut op = Self::zero(p.ring());
        op.add_term(vec![0; p.ring().arity()], p);
        op
    }

    /// `∂/∂x_idx`.
    pub fn derivative(ring: &Arc<Ring>, idx: usize) -> Self {
        let mut a = vec![0; ring.arity()];
        a[idx] = 1;
        Self::term(a, &LaurentPoly::one(ring))
    }

    /// `p ∂^alpha`.
    pub fn term(alpha: DerivIndex, p: &LaurentPoly) -> Self {
        let mut op = Self::zero(p.ring());
        op.add_term(alpha, p);
        op
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<DerivIndex, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, alpha: &[u32]) -> LaurentPoly {
        self.terms.get(alpha).cloned().unwrap_or_else(|| LaurentPoly::zero(&self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, alpha: DerivIndex, p: &LaurentPoly) {
        assert!(same_ring(&self.ring, p.ring()), "ring mismatch");
        if p.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(p);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Maximal total derivative degree; `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|a| a.iter().sum()).max()
    }

    fn check(&self, o: &WeylOperator) -> Result<()> {
        if same_ring(&self.ring, &o.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, o: &WeylOperator) -> Result<WeylOperator> {
        self.check(o)?;
        let mut r = self.clone();
        for (a, p) in &o.terms {
            r.add_term(a.clone(), p);
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Gq) -> WeylOperator {
        let mut r = Self::zero(&self.ring);
        for (a, p) in &self.terms {
            r.add_term(a.clone(), &p.scale(c));
        }
        r
    }

    /// Left multiplication by a function.
    pub fn left_mul(&self, f: &LaurentPoly) -> WeylOperator {
        let mut r = Self::zero(&self.ring);
        for (a, p) in &self.terms {
            r.add_term(a.clone(), &(f * p));
        }
        r
    }

    /// Normal-ordered product `self ∘ o` via the generalized Leibniz rule.
    pub fn try_compose(&self, o: &WeylOperator) -> Result<WeylOperator> {
        self.check(o)?;
        let mut r = Self::zero(&self.ring);
        for (alpha, p) in &self.terms {
            let gammas = sub_indices(alpha);
            for (beta, q) in &o.terms {
                for gamma in &gammas {
                    let dq = q.diff_multi(gamma);
                    if dq.is_zero() {
                        continue;
                    }
                    let c: i64 = alpha.iter().zip(gamma).map(|(&a, &g)| binom(a, g)).product();
                    let deriv: DerivIndex =
                        alpha.iter().zip(gamma).zip(beta).map(|((a, g), b)| a - g + b).collect();
                    r.add_term(deriv, &(p * &dq).scale(&Gq::from_int(c)));
                }
            }
        }
        Ok(r)
    }

    pub fn compose(&self, o: &WeylOperator) -> WeylOperator {
        self.try_compose(o).expect("ring mismatch")
    }

    pub fn try_commutator(&self, o: &WeylOperator) -> Result<WeylOperator> {
        let ab = self.try_compose(o)?;
        let ba = o.try_compose(self)?;
        ab.try_add(&ba.scale(&Gq::from_int(-1)))
    }

    pub fn commutator(&self, o: &WeylOperator) -> WeylOperator {
        self.try_commutator(o).expect("ring mismatch")
    }

    pub fn try_apply(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        if !same_ring(&self.ring, f.ring()) {
            return Err(Error::RingMismatch);
        }
        let mut r = LaurentPoly::zero(&self.ring);
        for (alpha, p) in &self.terms {
            let df = f.diff_multi(alpha);
            if !df.is_zero() {
                r.add_assign(&(p * &df));
            }
        }
        Ok(r)
    }

    pub fn apply(&self, f: &LaurentPoly) -> LaurentPoly {
        self.try_apply(f).expect("ring mismatch")
    }

    /// Terms of derivative degree exactly `order`.
    pub fn principal_part(&self, order: u32) -> WeylOperator {
        WeylOperator {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.iter().sum::<u32>() == order)
                .map(|(a, p)| (a.clone(), p.clone()))
                .collect(),
        }
    }
}

impl<'a> std::ops::Add<&'a WeylOperator> for &'a WeylOperator {
    type Output = WeylOperator;
    fn add(self, o: &WeylOperator) -> WeylOperator {
        self.try_add(o).expect("ring mismatch")
    }
}

impl<'a> std::ops::Sub<&'a WeylOperator> for &'a WeylOperator {
    type Output = WeylOperator;
    fn sub(self, o: &WeylOperator) -> WeylOperator {
        self.try_add(&o.scale(&Gq::from_int(-1))).expect("ring mismatch")
    }
}

impl<'a> std::ops::Mul<&'a WeylOperator> for &'a WeylOperator {
    type Output = WeylOperator;
    fn mul(self, o: &WeylOperator) -> WeylOperator {
        self.compose(o)
    }
}

impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{p}]")?;
            for (e, g) in a.iter().zip(self.ring.gens()) {
                match e {
                    0 => {}
                    1 => write!(f, "∂({})", g.name)?,
                    _ => write!(f, "∂({})^{}", g.name, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Mono;

    fn ring() -> Arc<Ring> {
        Ring::polynomial(&["x", "y"])
    }

    fn x_pow(r: &Arc<Ring>, m: i32) -> LaurentPoly {
        LaurentPoly::monomial(r, Mono(vec![m, 0]), Gq::one())
    }

    #[test]
    fn canonical_commutation() {
        let r = ring();
        let d = WeylOperator::derivative(&r, 0);
        let x = WeylOperator::multiplication(&LaurentPoly::var(&r, 0));
        let dx = d.compose(&x);
        let expected = &x.compose(&d) + &WeylOperator::identity(&r);
        assert_eq!(dx, expected);
        assert_eq!(d.commutator(&x), WeylOperator::identity(&r));
        assert!(dx.commutator(&dx).is_zero());
    }

    #[test]
    fn euler_square() {
        let r = ring();
        let e = WeylOperator::term(vec![1, 0], &LaurentPoly::var(&r, 0));
        let e2 = e.compose(&e);
        let expected = &WeylOperator::term(vec![2, 0], &x_pow(&r, 2)) + &e;
        assert_eq!(e2, expected);
        for m in 0..=5 {
            let f = x_pow(&r, m);
            assert_eq!(e2.apply(&f), e.apply(&e.apply(&f)));
            assert_eq!(e.apply(&f), f.scale(&Gq::from_int(m as i64)));
        }
    }

    #[test]
    fn application_and_principal_part() {
        let r = ring();
        let dxdy = WeylOperator::term(vec![1, 1], &LaurentPoly::one(&r));
        let xy = &LaurentPoly::var(&r, 0) * &LaurentPoly::var(&r, 1);
        assert_eq!(dxdy.apply(&xy), LaurentPoly::one(&r));
        assert!(WeylOperator::derivative(&r, 0).apply(&LaurentPoly::one(&r)).is_zero());
        let op = &WeylOperator::term(vec![2, 0], &LaurentPoly::var(&r, 0))
            + &WeylOperator::derivative(&r, 0);
        assert_eq!(op.principal_part(2), WeylOperator::term(vec![2, 0], &LaurentPoly::var(&r, 0)));
        assert_eq!(op.order(), Some(2));
        let id = WeylOperator::identity(&r);
        assert_eq!(op.compose(&id), op);
    }
}
