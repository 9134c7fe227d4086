//! Symmetric groups, the class algebra `Z(C[S_k])` in the basis of averaged class
//! sums, characters and Young symmetrizers.

use crate::error::{Error, Result};
use crate::scalar::Gq;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Permutation of `{0..k-1}` in one-line notation: `i ↦ self.0[i]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Permutation(pub Vec<u8>);

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation((0..k as u8).collect())
    }

    pub fn from_images(v: Vec<u8>) -> Result<Self> {
        let mut seen = vec![false; v.len()];
        for &x in &v {
            if x as usize >= v.len() || seen[x as usize] {
                return Err(Error::Invalid(format!("{v:?} is not a permutation")));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation(v))
    }

    /// Permutation from 1-based cycles, e.g. `[[1,2,3,4]]`.
    pub fn from_cycles(k: usize, cycles: &[&[u8]]) -> Result<Self> {
        let mut v: Vec<u8> = (0..k as u8).collect();
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                let b = c[(i + 1) % c.len()];
                if a == 0 || b == 0 || a as usize > k || b as usize > k {
                    return Err(Error::Invalid(format!("cycle entry out of range in {c:?}")));
                }
                v[a as usize - 1] = b - 1;
            }
        }
        Self::from_images(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self ∘ o`: apply `o` first.
    pub fn compose(&self, o: &Permutation) -> Permutation {
        Permutation(o.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x as usize] = i as u8;
        }
        Permutation(v)
    }

    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let k = self.0.len();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for s in 0..k {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                c.push(i as u8);
                i = self.0[i] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        let mut parts: Vec<u32> = self.cycles().iter().map(|c| c.len() as u32).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn sign(&self) -> i64 {
        let odd = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation without fixed points; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let s: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All permutations of `k` points in lexicographic order of their one-line form.
pub fn all_perms(k: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..k as u8).collect();
    loop {
        out.push(Permutation(cur.clone()));
        // next lexicographic permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).expect("exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// `z_λ = ∏ i^{m_i} m_i!`, the centralizer order.
    pub fn z(&self) -> BigInt {
        let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
        for &p in &self.0 {
            *mult.entry(p).or_default() += 1;
        }
        let mut z = BigInt::one();
        for (i, m) in mult {
            for j in 1..=m {
                z *= BigInt::from(i) * BigInt::from(j);
            }
        }
        z
    }

    pub fn class_size(&self) -> BigInt {
        factorial(self.size() as usize) / self.z()
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.0.first().copied().unwrap_or(0);
        Partition((1..=m).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// A permutation of this cycle type, cycles on consecutive points.
    pub fn representative(&self) -> Permutation {
        let k = self.size() as usize;
        let mut v: Vec<u8> = (0..k as u8).collect();
        let mut start = 0usize;
        for &p in &self.0 {
            let p = p as usize;
            for i in 0..p {
                v[start + i] = (start + (i + 1) % p) as u8;
            }
            start += p;
        }
        Permutation(v)
    }
}

impl Ord for Partition {
    /// Lexicographic on parts, so `(1^k)` comes first and `(k)` last.
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.cmp(&o.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// All partitions of `k` in ascending lexicographic order.
pub fn partitions(k: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Conjugacy classes of `S_k` with their sizes.
pub fn conjugacy_classes(k: u32) -> Vec<(Partition, BigInt)> {
    partitions(k).into_iter().map(|p| {
        let s = p.class_size();
        (p, s)
    }).collect()
}

/// Element of the class algebra in the basis of averaged class sums
/// `C_τ = |τ|^{-1} Σ_{π∈τ} π`.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassElement {
    pub k: u32,
    pub coeffs: BTreeMap<Partition, BigRational>,
}

fn brat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

impl ClassElement {
    pub fn zero(k: u32) -> Self {
        ClassElement { k, coeffs: BTreeMap::new() }
    }

    pub fn basis(tau: &Partition) -> Self {
        let mut e = Self::zero(tau.size());
        e.coeffs.insert(tau.clone(), BigRational::one());
        e
    }

    pub fn identity(k: u32) -> Self {
        Self::basis(&Partition(vec![1; k as usize]))
    }

    pub fn coeff(&self, tau: &Partition) -> BigRational {
        self.coeffs.get(tau).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_scaled(&mut self, o: &ClassElement, c: &BigRational) {
        for (p, v) in &o.coeffs {
            let e = self.coeffs.entry(p.clone()).or_insert_with(BigRational::zero);
            *e += v * c;
        }
        self.coeffs.retain(|_, v| !v.is_zero());
    }

    pub fn from_terms(k: u32, terms: &[(&[u32], i64, i64)]) -> Self {
        let mut e = Self::zero(k);
        for (p, a, b) in terms {
            e.add_scaled(&Self::basis(&Partition::new(p.to_vec())), &brat(*a, *b));
        }
        e
    }
}

impl Serialize for ClassElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> =
            self.coeffs.iter().map(|(p, c)| (p.to_string(), format!("{}/{}", c.numer(), c.denom()))).collect();
        m.serialize(s)
    }
}

impl fmt::Display for ClassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.coeffs.iter().map(|(p, c)| format!("{p}:{c}")).collect();
        write!(f, "{}", s.join(" "))
    }
}

impl fmt::Debug for ClassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Largest `k` handled by exhaustive enumeration.
pub const ENUMERATION_LIMIT: u32 = 7;

/// Product of two basis elements by enumeration: fix a representative of `a`,
/// run over the whole class `b` and histogram the cycle types of the products.
pub fn basis_product_enumerated(a: &Partition, b: &Partition) -> ClassElement {
    let k = a.size();
    let pa = a.representative();
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    let mut total = 0u64;
    for pb in all_perms(k as usize) {
        if pb.cycle_type() != *b {
            continue;
        }
        total += 1;
        *counts.entry(pa.compose(&pb).cycle_type()).or_default() += 1;
    }
    let mut e = ClassElement::zero(k);
    for (p, c) in counts {
        e.coeffs.insert(p, brat(c as i64, total as i64));
    }
    e
}

/// Product of two basis elements from the character table:
/// `C_a C_b = Σ_τ (|τ|/k!) Σ_λ χ^λ(a)χ^λ(b)χ^λ(τ)/dim λ · C_τ`.
pub fn basis_product_characters(a: &Partition, b: &Partition) -> ClassElement {
    let k = a.size();
    let kf = factorial(k as usize);
    let lams = partitions(k);
    let mut e = ClassElement::zero(k);
    for tau in partitions(k) {
        let mut s = BigRational::zero();
        for lam in &lams {
            let num = BigInt::from(mn_character(lam, a) * mn_character(lam, b) * mn_character(lam, &tau));
            s += BigRational::new(num, hook_length_dim(lam));
        }
        let v = s * BigRational::new(tau.class_size(), kf.clone());
        if !v.is_zero() {
            e.coeffs.insert(tau, v);
        }
    }
    e
}

fn bilinear(u: &ClassElement, v: &ClassElement, f: impl Fn(&Partition, &Partition) -> ClassElement) -> Result<ClassElement> {
    if u.k != v.k {
        return Err(Error::Invalid(format!("class elements of S_{} and S_{}", u.k, v.k)));
    }
    let mut r = ClassElement::zero(u.k);
    for (a, ca) in &u.coeffs {
        for (b, cb) in &v.coeffs {
            r.add_scaled(&f(a, b), &(ca * cb));
        }
    }
    Ok(r)
}

/// Class-algebra product with probability structure constants; enumeration for
/// `k ≤ ENUMERATION_LIMIT`, character formula beyond.
pub fn class_multiply(u: &ClassElement, v: &ClassElement) -> Result<ClassElement> {
    let big = u.k > ENUMERATION_LIMIT;
    bilinear(u, v, |a, b| {
        if big {
            basis_product_characters(a, b)
        } else {
            basis_product_enumerated(a, b)
        }
    })
}

/// Group algebra `C[S_k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupAlgebraElement {
    pub k: usize,
    pub coeffs: BTreeMap<Permutation, Gq>,
}

impl GroupAlgebraElement {
    pub fn zero(k: usize) -> Self {
        GroupAlgebraElement { k, coeffs: BTreeMap::new() }
    }

    pub fn from_perm(p: Permutation, c: Gq) -> Self {
        let mut e = Self::zero(p.len());
        e.add_term(p, &c);
        e
    }

    pub fn identity(k: usize) -> Self {
        Self::from_perm(Permutation::identity(k), Gq::one())
    }

    pub fn add_term(&mut self, p: Permutation, c: &Gq) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(p.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (p, c) in &o.coeffs {
            r.add_term(p.clone(), c);
        }
        r
    }

    pub fn scale(&self, c: &Gq) -> Self {
        let mut r = Self::zero(self.k);
        for (p, v) in &self.coeffs {
            r.add_term(p.clone(), &(v * c));
        }
        r
    }

    /// Convolution product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: HashMap<Permutation, Gq> = HashMap::new();
        for (p, a) in &self.coeffs {
            for (q, b) in &o.coeffs {
                *acc.entry(p.compose(q)).or_default() += &(a * b);
            }
        }
        let mut r = Self::zero(self.k);
        for (p, c) in acc {
            r.add_term(p, &c);
        }
        r
    }

    pub fn coeff(&self, p: &Permutation) -> Gq {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Averaged class sum as a group-algebra element.
    pub fn from_class_element(u: &ClassElement) -> Self {
        let mut r = Self::zero(u.k as usize);
        let perms = all_perms(u.k as usize);
        for (tau, c) in &u.coeffs {
            let w = Gq::from_rational(c / BigRational::from_integer(tau.class_size()));
            for p in perms.iter().filter(|p| p.cycle_type() == *tau) {
                r.add_term(p.clone(), &w);
            }
        }
        r
    }
}

/// The class-algebra product computed by full convolution of the class sums.
pub fn center_convolution(u: &ClassElement, v: &ClassElement) -> Result<ClassElement> {
    if u.k != v.k {
        return Err(Error::Invalid(format!("class elements of S_{} and S_{}", u.k, v.k)));
    }
    let g = GroupAlgebraElement::from_class_element(u).mul(&GroupAlgebraElement::from_class_element(v));
    let mut r = ClassElement::zero(u.k);
    for tau in partitions(u.k) {
        let c = g.coeff(&tau.representative());
        if !c.is_zero() {
            if !c.is_real() {
                return Err(Error::Invalid("non-real class coefficient".into()));
            }
            r.coeffs.insert(tau.clone(), c.re * BigRational::from_integer(tau.class_size()));
        }
    }
    // a central element must be constant on classes
    for (p, c) in &g.coeffs {
        let tau = p.cycle_type();
        let expect = r.coeff(&tau) / BigRational::from_integer(tau.class_size());
        if c.re != expect {
            return Err(Error::Invalid("convolution result is not central".into()));
        }
    }
    Ok(r)
}

/// `χ^λ(μ)` by the Murnaghan–Nakayama rule on beta-sets.
pub fn mn_character(lam: &Partition, mu: &Partition) -> i64 {
    assert_eq!(lam.size(), mu.size(), "partitions of different sizes");
    let m = lam.depth();
    let beta: Vec<i64> = lam.0.iter().enumerate().map(|(i, &p)| p as i64 + (m - 1 - i) as i64).collect();
    let mut memo = HashMap::new();
    mn_rec(beta, &mu.0, &mut memo)
}

fn mn_rec(beta: Vec<i64>, mu: &[u32], memo: &mut HashMap<(Vec<i64>, usize), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let key = (beta.clone(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = r as i64;
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        let nb = b - r;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > nb && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[i] = nb;
        next.sort_unstable_by(|a, b| b.cmp(a));
        total += sign * mn_rec(next, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Number of standard tableaux of shape `λ` by the hook-length formula.
pub fn hook_length_dim(lam: &Partition) -> BigInt {
    let conj = lam.conjugate();
    let mut hooks = BigInt::one();
    for (i, &row) in lam.0.iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = conj.0[j] as usize - i - 1;
            hooks *= BigInt::from(arm + leg + 1);
        }
    }
    factorial(lam.size() as usize) / hooks
}

/// `e_λ = (dim λ / k!) Σ_σ χ^λ(σ) σ`.
pub fn central_idempotent(lam: &Partition) -> GroupAlgebraElement {
    let k = lam.size() as usize;
    let pref = Gq::from_rational(BigRational::new(hook_length_dim(lam), factorial(k)));
    let mut chi: HashMap<Partition, i64> = HashMap::new();
    let mut e = GroupAlgebraElement::zero(k);
    for p in all_perms(k) {
        let t = p.cycle_type();
        let c = *chi.entry(t.clone()).or_insert_with(|| mn_character(lam, &t));
        e.add_term(p, &pref.scale_int(c));
    }
    e
}

/// Standard Young tableau: `rows[i]` lists the (0-based) entries of row `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tableau {
    pub rows: Vec<Vec<u8>>,
}

impl Tableau {
    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    pub fn columns(&self) -> Vec<Vec<u8>> {
        let w = self.rows.first().map_or(0, |r| r.len());
        (0..w).map(|j| self.rows.iter().filter_map(|r| r.get(j).copied()).collect()).collect()
    }

    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self.columns().iter().all(|c| c.windows(2).all(|w| w[0] < w[1]));
        let shape_ok = self.rows.windows(2).all(|w| w[0].len() >= w[1].len());
        rows_ok && cols_ok && shape_ok
    }
}

/// All standard tableaux of shape `λ`.
pub fn standard_tableaux(lam: &Partition) -> Vec<Tableau> {
    fn rec(lam: &[u32], next: u8, k: u8, rows: &mut Vec<Vec<u8>>, out: &mut Vec<Tableau>) {
        if next == k {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for i in 0..lam.len() {
            let len = rows[i].len();
            let fits = len < lam[i] as usize && (i == 0 || rows[i - 1].len() > len);
            if fits {
                rows[i].push(next);
                rec(lam, next + 1, k, rows, out);
                rows[i].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); lam.depth()];
    rec(&lam.0, 0, lam.size() as u8, &mut rows, &mut out);
    out
}

/// Sum over the subgroup permuting each block, weighted by sign if `signed`.
fn block_sum(k: usize, blocks: &[Vec<u8>], signed: bool) -> GroupAlgebraElement {
    let mut acc = GroupAlgebraElement::identity(k);
    for b in blocks {
        let mut s = GroupAlgebraElement::zero(k);
        for p in all_perms(b.len()) {
            let mut v: Vec<u8> = (0..k as u8).collect();
            for (i, &x) in b.iter().enumerate() {
                v[x as usize] = b[p.apply(i)];
            }
            let c = if signed { p.sign() } else { 1 };
            s.add_term(Permutation(v), &Gq::from_int(c));
        }
        acc = acc.mul(&s);
    }
    acc
}

/// `c(A) r(A)`: column antisymmetrizer times row symmetrizer, normalization 1.
pub fn young_symmetrizer(t: &Tableau) -> Result<GroupAlgebraElement> {
    if !t.is_standard() {
        return Err(Error::Invalid(format!("{t:?} is not a standard tableau")));
    }
    let k = t.shape().size() as usize;
    let r = block_sum(k, &t.rows, false);
    let c = block_sum(k, &t.columns(), true);
    Ok(c.mul(&r))
}

/// Structure-constant table as CSV: rows `σ'`, columns `σ`, cells `(τ):p/q;…`.
pub fn structure_table_csv(k: u32) -> Result<String> {
    let parts = partitions(k);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![String::from("product")];
    header.extend(parts.iter().map(|p| p.to_string()));
    w.write_record(&header).map_err(|e| Error::Invalid(e.to_string()))?;
    for a in &parts {
        let mut row = vec![a.to_string()];
        for b in &parts {
            let e = class_multiply(&ClassElement::basis(a), &ClassElement::basis(b))?;
            let cells: Vec<String> = e.coeffs.iter().map(|(t, c)| format!("{t}:{c}")).collect();
            row.push(cells.join(";"));
        }
        w.write_record(&row).map_err(|e| Error::Invalid(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))
}

/// Integer value of a rational known to be integral.
pub fn as_i64(r: &BigRational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Column orthogonality `Σ_λ χ^λ(μ)χ^λ(ν) = δ_{μν} z_μ`.
pub fn column_orthogonality_holds(k: u32) -> bool {
    let ps = partitions(k);
    ps.iter().all(|mu| {
        ps.iter().all(|nu| {
            let s: i64 = ps.iter().map(|l| mn_character(l, mu) * mn_character(l, nu)).sum();
            let expect = if mu == nu { mu.z() } else { BigInt::zero() };
            BigInt::from(s) == expect && !expect.is_negative()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn enumeration_matches_character_formula() {
        for k in 1..=6 {
            for a in partitions(k) {
                for b in partitions(k) {
                    assert_eq!(basis_product_enumerated(&a, &b), basis_product_characters(&a, &b), "{a}·{b}");
                }
            }
        }
    }

    #[test]
    fn class_sizes() {
        let c = conjugacy_classes(3);
        let sizes: Vec<(String, i64)> =
            c.iter().map(|(p, s)| (p.to_string(), s.to_i64().unwrap())).collect();
        assert_eq!(sizes, vec![("(1,1,1)".into(), 1), ("(2,1)".into(), 3), ("(3)".into(), 2)]);
        assert_eq!(conjugacy_classes(1).len(), 1);
        for k in 1..=6 {
            let total: BigInt = conjugacy_classes(k).into_iter().map(|(_, s)| s).sum();
            assert_eq!(total, factorial(k as usize));
        }
    }

    #[test]
    fn small_characters() {
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[1, 1, 1])), 2);
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[2, 1])), 0);
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[3])), -1);
        assert_eq!(mn_character(&p(&[2, 2]), &p(&[2, 2])), 2);
        assert_eq!(mn_character(&p(&[3, 1]), &p(&[4])), -1);
        for k in 1..=6 {
            for mu in partitions(k) {
                assert_eq!(mn_character(&Partition(vec![k]), &mu), 1);
                let sign = mu.representative().sign();
                assert_eq!(mn_character(&Partition(vec![1; k as usize]), &mu), sign);
            }
            for lam in partitions(k) {
                let id = Partition(vec![1; k as usize]);
                assert_eq!(BigInt::from(mn_character(&lam, &id)), hook_length_dim(&lam));
                assert_eq!(standard_tableaux(&lam).len(), hook_length_dim(&lam).to_usize().unwrap());
            }
        }
    }

    #[test]
    fn cycle_notation() {
        let s = Permutation::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap();
        assert_eq!(s.to_string(), "(1 2 3 4)");
        assert_eq!(s.compose(&s.inverse()), Permutation::identity(4));
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn two_cycle_idempotent() {
        let e = central_idempotent(&p(&[2]));
        let half = Gq::from_ratio(1, 2);
        assert_eq!(e.coeff(&Permutation::identity(2)), half);
        assert_eq!(e.coeff(&Permutation(vec![1, 0])), half);
        assert_eq!(central_idempotent(&p(&[1])), GroupAlgebraElement::identity(1));
    }

    #[test]
    fn young_symmetrizer_shapes() {
        let row = Tableau { rows: vec![vec![0, 1, 2]] };
        let y = young_symmetrizer(&row).unwrap();
        assert!(y.coeffs.values().all(|c| c.is_one()));
        assert_eq!(y.coeffs.len(), 6);
        let col = Tableau { rows: vec![vec![0], vec![1], vec![2]] };
        let y = young_symmetrizer(&col).unwrap();
        for (q, c) in &y.coeffs {
            assert_eq!(*c, Gq::from_int(q.sign()));
        }
        let bad = Tableau { rows: vec![vec![1, 0]] };
        assert!(young_symmetrizer(&bad).is_err());
    }

    #[test]
    fn csv_table_shape() {
        let t = structure_table_csv(2).unwrap();
        let mut r = csv::Reader::from_reader(t.as_bytes());
        let rows: Vec<Vec<String>> =
            r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1], vec!["(2)", "(2):1", "(1,1):1"]);
    }
}
