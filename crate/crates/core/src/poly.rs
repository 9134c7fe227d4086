//! Sparse multivariate Laurent polynomials over Q(i).

use crate::error::{Error, Result};
use crate::scalar::Gq;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub name: String,
    pub laurent_allowed: bool,
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    gens: Vec<Generator>,
}

impl Ring {
    pub fn new(gens: Vec<Generator>) -> Result<Arc<Ring>> {
        for (i, g) in gens.iter().enumerate() {
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Invalid(format!("duplicate generator {}", g.name)));
            }
        }
        Ok(Arc::new(Ring { gens }))
    }

    /// Ring with plain (non-laurent) generators.
    pub fn polynomial(names: &[&str]) -> Arc<Ring> {
        let gens = names
            .iter()
            .map(|n| Generator { name: n.to_string(), laurent_allowed: false })
            .collect();
        Ring::new(gens).expect("distinct names")
    }

    pub fn arity(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }
}

pub fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Mono(pub Vec<i32>);

impl Mono {
    pub fn one(arity: usize) -> Self {
        Mono(vec![0; arity])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Mono, Gq>,
}

#[derive(Serialize)]
struct TermJson<'a> {
    exp: &'a [i32],
    coeff: String,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson { exp: &m.0, coeff: c.to_string() })
            .collect();
        v.serialize(s)
    }
}

impl LaurentPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        LaurentPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Gq) -> Self {
        Self::monomial(ring, Mono::one(ring.arity()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Gq::one())
    }

    pub fn var(ring: &Arc<Ring>, idx: usize) -> Self {
        let mut e = vec![0; ring.arity()];
        e[idx] = 1;
        Self::monomial(ring, Mono(e), Gq::one())
    }

    /// Monomial `c * x^exps`; panics on a negative exponent of a non-laurent generator.
    pub fn monomial(ring: &Arc<Ring>, m: Mono, c: Gq) -> Self {
        Self::try_monomial(ring, m, c).expect("valid monomial")
    }

    pub fn try_monomial(ring: &Arc<Ring>, m: Mono, c: Gq) -> Result<Self> {
        if m.0.len() != ring.arity() {
            return Err(Error::Dimension(format!(
                "exponent vector of length {} in ring of arity {}",
                m.0.len(),
                ring.arity()
            )));
        }
        for (e, g) in m.0.iter().zip(ring.gens()) {
            if *e < 0 && !g.laurent_allowed {
                return Err(Error::NegativeExponent(g.name.clone()));
            }
        }
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        Ok(p)
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Mono, Gq)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Gq> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Mono, Gq> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Gq {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Value of the constant term.
    pub fn constant_term(&self) -> Gq {
        self.coeff(&Mono::one(self.ring.arity()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e == 0))
    }

    pub fn add_term(&mut self, m: Mono, c: &Gq) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, o: &LaurentPoly) -> Result<()> {
        if same_ring(&self.ring, &o.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, o: &LaurentPoly) -> Result<LaurentPoly> {
        self.check(o)?;
        let mut r = self.clone();
        r.add_assign(o);
        Ok(r)
    }

    pub fn try_mul(&self, o: &LaurentPoly) -> Result<LaurentPoly> {
        self.check(o)?;
        let mut r = Self::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(r)
    }

    pub fn add_assign(&mut self, o: &LaurentPoly) {
        assert!(same_ring(&self.ring, &o.ring), "ring mismatch");
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_assign(&mut self, o: &LaurentPoly) {
        assert!(same_ring(&self.ring, &o.ring), "ring mismatch");
        for (m, c) in &o.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    /// `self += c * o`
    pub fn add_scaled(&mut self, o: &LaurentPoly, c: &Gq) {
        assert!(same_ring(&self.ring, &o.ring), "ring mismatch");
        if c.is_zero() {
            return;
        }
        for (m, d) in &o.terms {
            self.add_term(m.clone(), &(d * c));
        }
    }

    pub fn scale(&self, c: &Gq) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative in generator `idx`.
    pub fn diff(&self, idx: usize) -> LaurentPoly {
        let mut r = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[idx] -= 1;
            r.add_term(m2, &c.scale_int(e as i64));
        }
        r
    }

    pub fn diff_by_name(&self, name: &str) -> Result<LaurentPoly> {
        Ok(self.diff(self.ring.index_of(name)?))
    }

    /// Repeated derivative `∂^alpha` (alpha non-negative).
    pub fn diff_multi(&self, alpha: &[u32]) -> LaurentPoly {
        let mut r = Self::zero(&self.ring);
        'terms: for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut m2 = m.clone();
            for (i, &a) in alpha.iter().enumerate() {
                for _ in 0..a {
                    let e = m2.0[i];
                    if e == 0 {
                        continue 'terms;
                    }
                    coef = coef.scale_int(e as i64);
                    m2.0[i] -= 1;
                }
            }
            r.add_term(m2, &coef);
        }
        r
    }

    /// Substitute `gen_i -> images[i]`, producing a polynomial in the images' ring.
    pub fn substitute(&self, images: &[LaurentPoly]) -> Result<LaurentPoly> {
        if images.len() != self.ring.arity() {
            return Err(Error::Dimension(format!(
                "{} images for ring of arity {}",
                images.len(),
                self.ring.arity()
            )));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target = first.ring.clone();
        if images.iter().any(|p| !same_ring(&p.ring, &target)) {
            return Err(Error::RingMismatch);
        }
        let mut cache: HashMap<(usize, i32), LaurentPoly> = HashMap::new();
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut acc = LaurentPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !cache.contains_key(&(i, e)) {
                    let p = power_of_image(&images[i], e)
                        .ok_or_else(|| Error::NonInvertible(self.ring.gens()[i].name.clone()))?;
                    cache.insert((i, e), p);
                }
                acc = &acc * &cache[&(i, e)];
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    /// Ring involution: generators permuted by `perm`, coefficients conjugated.
    pub fn conj(&self, perm: &[usize]) -> LaurentPoly {
        let mut r = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut e = vec![0; m.0.len()];
            for (i, &x) in m.0.iter().enumerate() {
                e[perm[i]] = x;
            }
            r.add_term(Mono(e), &c.conj());
        }
        r
    }

    /// Same terms viewed in another ring of equal arity.
    pub fn reinterpret(&self, ring: &Arc<Ring>) -> LaurentPoly {
        assert_eq!(ring.arity(), self.ring.arity());
        LaurentPoly { ring: ring.clone(), terms: self.terms.clone() }
    }

    /// Polynomial content with sorted terms as strings, used for witnesses.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

fn power_of_image(p: &LaurentPoly, e: i32) -> Option<LaurentPoly> {
    if e >= 0 {
        return Some(p.pow(e as u32));
    }
    if p.terms.len() != 1 {
        return None;
    }
    let (m, c) = p.terms.iter().next()?;
    for (x, g) in m.0.iter().zip(p.ring.gens()) {
        if *x != 0 && !g.laurent_allowed {
            return None;
        }
    }
    let inv = c.inv()?;
    let k = (-e) as u32;
    let m_inv = Mono(m.0.iter().map(|x| -x * k as i32).collect());
    Some(LaurentPoly::monomial(&p.ring, m_inv, inv.pow(k)))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (e, g) in m.0.iter().zip(self.ring.gens()) {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", g.name)?,
                    _ => write!(f, "*{}^{}", g.name, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> std::ops::Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_add(o).expect("ring mismatch")
    }
}

impl<'a> std::ops::Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r.sub_assign(o);
        r
    }
}

impl<'a> std::ops::Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_mul(o).expect("ring mismatch")
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&Gq::from_int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Ring> {
        Ring::new(vec![
            Generator { name: "x".into(), laurent_allowed: true },
            Generator { name: "y".into(), laurent_allowed: false },
        ])
        .unwrap()
    }

    fn mono(r: &Arc<Ring>, e: &[i32], c: i64) -> LaurentPoly {
        LaurentPoly::monomial(r, Mono(e.to_vec()), Gq::from_int(c))
    }

    #[test]
    fn product_of_conjugates() {
        let r = xy();
        let x = LaurentPoly::var(&r, 0);
        let one = LaurentPoly::one(&r);
        let p = &(&x + &one) * &(&x - &one);
        assert_eq!(p, &mono(&r, &[2, 0], 1) - &one);
        assert_eq!(&p + &LaurentPoly::zero(&r), p);
        let i = LaurentPoly::constant(&r, Gq::i());
        assert_eq!(&i * &i, LaurentPoly::constant(&r, Gq::from_int(-1)));
    }

    #[test]
    fn derivatives() {
        let r = xy();
        assert_eq!(mono(&r, &[3, 0], 1).diff(0), mono(&r, &[2, 0], 3));
        assert_eq!(mono(&r, &[-1, 0], 1).diff(0), mono(&r, &[-2, 0], -1));
        assert!(mono(&r, &[3, 0], 1).diff(1).is_zero());
        assert!(mono(&r, &[3, 0], 1).diff_by_name("w").is_err());
        assert_eq!(mono(&r, &[3, 2], 1).diff_multi(&[2, 1]), mono(&r, &[1, 1], 12));
    }

    #[test]
    fn substitution() {
        let r = xy();
        let z = Ring::polynomial(&["z"]);
        let zp1 = &LaurentPoly::var(&z, 0) + &LaurentPoly::one(&z);
        let sq = mono(&r, &[2, 0], 1).substitute(&[zp1, LaurentPoly::zero(&z)]).unwrap();
        let zz = LaurentPoly::var(&z, 0);
        let expected = &(&(&zz * &zz) + &zz.scale(&Gq::from_int(2))) + &LaurentPoly::one(&z);
        assert_eq!(sq, expected);
        let inv = mono(&r, &[-1, 0], 1)
            .substitute(&[LaurentPoly::one(&z), LaurentPoly::zero(&z)])
            .unwrap();
        assert_eq!(inv, LaurentPoly::one(&z));
        let prod = mono(&r, &[1, 1], 1)
            .substitute(&[LaurentPoly::zero(&z), LaurentPoly::one(&z)])
            .unwrap();
        assert!(prod.is_zero());
        let bad = mono(&r, &[-1, 0], 1).substitute(&[
            &LaurentPoly::var(&z, 0) + &LaurentPoly::one(&z),
            LaurentPoly::zero(&z),
        ]);
        assert!(matches!(bad, Err(Error::NonInvertible(_))));
    }

    #[test]
    fn ring_mismatch_and_negative_exponents() {
        let r = xy();
        let s = Ring::polynomial(&["z"]);
        assert_eq!(LaurentPoly::one(&r).try_add(&LaurentPoly::one(&s)), Err(Error::RingMismatch));
        assert!(LaurentPoly::try_monomial(&r, Mono(vec![0, -1]), Gq::one()).is_err());
    }

    #[test]
    fn graded_lex_order() {
        assert!(Mono(vec![0, 2]) > Mono(vec![1, 0]));
        assert!(Mono(vec![2, 0]) > Mono(vec![1, 1]));
    }
}
