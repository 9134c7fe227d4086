//! The flat CR model: boundary ring in `z^a`, `z̄^a`, `σ`, the cone section `φ`,
//! canonical homogeneous extension, tangential derivatives and the sub-Laplacian.

use crate::ambient::{self, AmbientModel, CompositionParts, TracelessMatrix};
use crate::error::{Error, Result};
use crate::poly::{Generator, LaurentPoly, Mono, Ring};
use crate::report::VerificationReport;
use crate::scalar::Gq;
use crate::weyl::WeylOperator;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct BoundaryModel {
    pub n: usize,
    pub g_diag: Vec<i8>,
    ring: Arc<Ring>,
}

impl BoundaryModel {
    pub fn new(n: usize, g_diag: Vec<i8>) -> Result<Self> {
        if n == 0 || g_diag.len() != n || g_diag.iter().any(|&g| g != 1 && g != -1) {
            return Err(Error::Invalid(format!("bad boundary model n={n}, g={g_diag:?}")));
        }
        let mut gens = Vec::with_capacity(2 * n + 1);
        for a in 1..=n {
            gens.push(Generator { name: format!("z^{a}"), laurent_allowed: false });
        }
        for a in 1..=n {
            gens.push(Generator { name: format!("zb^{a}"), laurent_allowed: false });
        }
        gens.push(Generator { name: "sigma".into(), laurent_allowed: false });
        Ok(BoundaryModel { n, g_diag, ring: Ring::new(gens)? })
    }

    pub fn standard(n: usize) -> Self {
        Self::new(n, vec![1; n]).expect("valid model")
    }

    /// Boundary model matching an ambient model's dimension and metric.
    pub fn for_ambient(m: &AmbientModel) -> Self {
        Self::new(m.n, m.g_diag.clone()).expect("ambient model is valid")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    fn g(&self, a: usize) -> Gq {
        Gq::from_int(self.g_diag[a] as i64)
    }

    /// `z^a`, `a ∈ 0..n`.
    pub fn z(&self, a: usize) -> LaurentPoly {
        LaurentPoly::var(&self.ring, a)
    }

    pub fn zbar(&self, a: usize) -> LaurentPoly {
        LaurentPoly::var(&self.ring, self.n + a)
    }

    /// Lowered coordinate `z_a = g_a z̄^a`.
    pub fn z_low(&self, a: usize) -> LaurentPoly {
        self.zbar(a).scale(&self.g(a))
    }

    pub fn sigma(&self) -> LaurentPoly {
        LaurentPoly::var(&self.ring, 2 * self.n)
    }

    pub fn sigma_idx(&self) -> usize {
        2 * self.n
    }

    /// `Σ_a z^a z_a`.
    pub fn zz(&self) -> LaurentPoly {
        let mut s = LaurentPoly::zero(&self.ring);
        for a in 0..self.n {
            s.add_assign(&(&self.z(a) * &self.z_low(a)));
        }
        s
    }

    fn check_ambient(&self, m: &AmbientModel) -> Result<()> {
        if m.n != self.n || m.g_diag != self.g_diag {
            return Err(Error::Dimension("ambient and boundary models differ".into()));
        }
        Ok(())
    }

    /// Images of the ambient generators under the cone section.
    fn phi_images(&self) -> Vec<LaurentPoly> {
        let half_zz = self.zz().scale(&Gq::from_ratio(-1, 2));
        let i_sigma = self.sigma().scale(&Gq::i());
        let mut up = vec![LaurentPoly::one(&self.ring)];
        up.extend((0..self.n).map(|a| self.z(a)));
        up.push(&half_zz + &i_sigma);
        let mut low = vec![&half_zz - &i_sigma];
        low.extend((0..self.n).map(|a| self.z_low(a)));
        low.push(LaurentPoly::one(&self.ring));
        up.into_iter().chain(low).collect()
    }

    /// `f ∘ φ`.
    pub fn phi_pullback(&self, m: &AmbientModel, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_ambient(m)?;
        f.substitute(&self.phi_images())
    }

    /// `(x^0)^{w1} (x_∞)^{w2} F(x^a/x^0, g_a x_a/x_∞, (x^∞/x^0 − x_0/x_∞)/(2i))`.
    pub fn extend(&self, m: &AmbientModel, f: &LaurentPoly, w1: i64, w2: i64) -> Result<LaurentPoly> {
        self.check_ambient(m)?;
        let r = m.ring();
        let inv0 = LaurentPoly::monomial(r, unit(r.arity(), m.up(0), -1), Gq::one());
        let inv_inf = LaurentPoly::monomial(r, unit(r.arity(), m.low(m.inf()), -1), Gq::one());
        let mut images = Vec::with_capacity(self.ring.arity());
        for a in 0..self.n {
            images.push(&m.xu(a + 1) * &inv0);
        }
        for a in 0..self.n {
            images.push((&m.xl(a + 1) * &inv_inf).scale(&self.g(a)));
        }
        let s = &(&m.xu(m.inf()) * &inv0) - &(&m.xl(0) * &inv_inf);
        images.push(s.scale(&Gq::from_ratio(-1, 2).mul_i()));
        let weight = |idx: usize, w: i64| -> Result<LaurentPoly> {
            let w = i32::try_from(w).map_err(|_| Error::Invalid(format!("weight {w} out of range")))?;
            Ok(LaurentPoly::monomial(r, unit(r.arity(), idx, w), Gq::one()))
        };
        let pre = &weight(m.up(0), w1)? * &weight(m.low(m.inf()), w2)?;
        Ok(&pre * &f.substitute(&images)?)
    }

    /// Closed forms `∂_a = ∂_{z^a} + (i/2) z_a ∂_σ`, `∂_ā = ∂_{z̄^a} − (i/2) g_a z^a ∂_σ`, `∂_σ`.
    pub fn tangential_ops(&self) -> TangentialOps {
        let ds = WeylOperator::derivative(&self.ring, self.sigma_idx());
        let half_i = Gq::from_ratio(1, 2).mul_i();
        let d = (0..self.n)
            .map(|a| {
                let corr = ds.left_mul(&self.z_low(a)).scale(&half_i);
                &WeylOperator::derivative(&self.ring, a) + &corr
            })
            .collect();
        let dbar = (0..self.n)
            .map(|a| {
                let corr = ds.left_mul(&self.z(a)).scale(&(&half_i * &self.g(a)));
                &WeylOperator::derivative(&self.ring, self.n + a) - &corr
            })
            .collect();
        TangentialOps { d, dbar, dsigma: ds, g_diag: self.g_diag.clone() }
    }

    /// Chain-rule definitions through the weight-(0,0) extension:
    /// `∂_a F = φ*(Y^B_a ∂_B f)`, `∂^a F = φ*(Y^a_B ∂^B f)`, `∂_σ F = iφ*((∂_{x^∞} − ∂_{x_0}) f)`.
    pub fn tangential_operational(&self, m: &AmbientModel, f: &LaurentPoly, dir: Tangent) -> Result<LaurentPoly> {
        let ext = self.extend(m, f, 0, 0)?;
        let pb = |p: &LaurentPoly| self.phi_pullback(m, p);
        let d_inf = pb(&ext.diff(m.up(m.inf())))?;
        let d_low0 = pb(&ext.diff(m.low(0)))?;
        Ok(match dir {
            Tangent::Holo(a) => &pb(&ext.diff(m.up(a + 1)))? - &(&self.z_low(a) * &d_inf),
            Tangent::Raised(a) => &pb(&ext.diff(m.low(a + 1)))? - &(&self.z(a) * &d_low0),
            Tangent::Sigma => (&d_inf - &d_low0).scale(&Gq::i()),
        })
    }

    /// `Δ = ½ Σ_a (∂_a ∂^a + ∂^a ∂_a) + i (w1 − w2)/2 ∂_σ`.
    pub fn sublaplacian(&self, w1: i64, w2: i64) -> WeylOperator {
        let t = self.tangential_ops();
        let mut op = WeylOperator::zero(&self.ring);
        for a in 0..self.n {
            let up = t.raised(a);
            op = &op + &(&t.d[a].compose(&up) + &up.compose(&t.d[a]));
        }
        let op = op.scale(&Gq::from_ratio(1, 2));
        &op + &t.dsigma.scale(&Gq::from_ratio(w1 - w2, 2).mul_i())
    }

    /// `φ*(D(extend(F, w1, w2)))`.
    pub fn induce(&self, m: &AmbientModel, d: &WeylOperator, w1: i64, w2: i64, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.phi_pullback(m, &d.try_apply(&self.extend(m, f, w1, w2)?)?)
    }

    /// All monomials of total degree `≤ deg` in the boundary generators.
    pub fn monomials(&self, deg: u32) -> Vec<LaurentPoly> {
        let k = self.ring.arity();
        let mut out = Vec::new();
        let mut e = vec![0i32; k];
        fn rec(i: usize, left: i32, e: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
            if i == e.len() {
                out.push(e.clone());
                return;
            }
            for x in 0..=left {
                e[i] = x;
                rec(i + 1, left - x, e, out);
            }
            e[i] = 0;
        }
        let mut exps = Vec::new();
        rec(0, deg as i32, &mut e, &mut exps);
        exps.sort_by_key(|v| (v.iter().sum::<i32>(), std::cmp::Reverse(v.clone())));
        for v in exps {
            out.push(LaurentPoly::monomial(&self.ring, Mono(v), Gq::one()));
        }
        out
    }

    pub fn frame_fields(&self) -> FrameFields {
        let one = LaurentPoly::one(&self.ring);
        let zero = LaurentPoly::zero(&self.ring);
        let half_zz = self.zz().scale(&Gq::from_ratio(-1, 2));
        let i_sigma = self.sigma().scale(&Gq::i());
        let n = self.n;
        let mut x_up = vec![one.clone()];
        x_up.extend((0..n).map(|a| self.z(a)));
        x_up.push(&half_zz + &i_sigma);
        let mut x_low = vec![&half_zz - &i_sigma];
        x_low.extend((0..n).map(|a| self.z_low(a)));
        x_low.push(one.clone());
        let mut z_up = vec![zero.clone(); n + 2];
        z_up[n + 1] = one.clone();
        let mut z_low = vec![zero.clone(); n + 2];
        z_low[0] = one.clone();
        let y_up = (0..n)
            .map(|b| {
                let mut v = vec![zero.clone(); n + 2];
                v[b + 1] = one.clone();
                v[n + 1] = self.z_low(b).scale(&Gq::from_int(-1));
                v
            })
            .collect();
        let y_low = (0..n)
            .map(|c| {
                let mut v = vec![zero.clone(); n + 2];
                v[0] = self.z(c).scale(&Gq::from_int(-1));
                v[c + 1] = one.clone();
                v
            })
            .collect();
        FrameFields { x_up, y_up, z_up, x_low, y_low, z_low }
    }
}

fn unit(arity: usize, idx: usize, e: i32) -> Mono {
    let mut v = vec![0; arity];
    v[idx] = e;
    Mono(v)
}

trait MulI {
    fn mul_i(&self) -> Gq;
}

impl MulI for Gq {
    fn mul_i(&self) -> Gq {
        self * &Gq::i()
    }
}

/// Tangential direction for the operational definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tangent {
    /// `∂_a`
    Holo(usize),
    /// `∂^a = g_a ∂_ā`
    Raised(usize),
    /// `∂_σ`
    Sigma,
}

#[derive(Clone, Debug)]
pub struct TangentialOps {
    pub d: Vec<WeylOperator>,
    pub dbar: Vec<WeylOperator>,
    pub dsigma: WeylOperator,
    g_diag: Vec<i8>,
}

impl TangentialOps {
    /// `∂^a = g^{ab̄} ∂_b̄`.
    pub fn raised(&self, a: usize) -> WeylOperator {
        self.dbar[a].scale(&Gq::from_int(self.g_diag[a] as i64))
    }

    pub fn get(&self, t: Tangent) -> WeylOperator {
        match t {
            Tangent::Holo(a) => self.d[a].clone(),
            Tangent::Raised(a) => self.raised(a),
            Tangent::Sigma => self.dsigma.clone(),
        }
    }
}

/// Frame fields along the section, components ordered `(0, 1..n, ∞)`.
#[derive(Clone, Debug)]
pub struct FrameFields {
    pub x_up: Vec<LaurentPoly>,
    /// `y_up[b][A] = Y^A_b`
    pub y_up: Vec<Vec<LaurentPoly>>,
    pub z_up: Vec<LaurentPoly>,
    pub x_low: Vec<LaurentPoly>,
    /// `y_low[c][B] = Y^c_B`
    pub y_low: Vec<Vec<LaurentPoly>>,
    pub z_low: Vec<LaurentPoly>,
}

impl FrameFields {
    /// Completeness `δ^A_B = X^A Z_B + Z^A X_B + Y^A_c Y^c_B` and tangency `Y^B_a X_B = 0`.
    pub fn verify(&self) -> VerificationReport {
        let mut rep = VerificationReport::new("frame_fields");
        let dim = self.x_up.len();
        for a in 0..dim {
            for b in 0..dim {
                let mut s = &(&self.x_up[a] * &self.z_low[b]) + &(&self.z_up[a] * &self.x_low[b]);
                for c in 0..self.y_up.len() {
                    s.add_assign(&(&self.y_up[c][a] * &self.y_low[c][b]));
                }
                if a == b {
                    s.sub_assign(&LaurentPoly::one(s.ring()));
                }
                rep.check(s.is_zero(), || format!("completeness ({a},{b})"), || s.to_string());
            }
        }
        for (c, y) in self.y_up.iter().enumerate() {
            let mut s = LaurentPoly::zero(y[0].ring());
            for (yb, xb) in y.iter().zip(&self.x_low) {
                s.add_assign(&(yb * xb));
            }
            rep.check(s.is_zero(), || format!("tangency Y_{c}"), || s.to_string());
        }
        rep
    }
}

/// Closed-form tangential operators agree with the chain-rule definitions, and
/// `[∂_ā, ∂_b] = i g_{āb} ∂_σ` is the only nonzero commutator.
pub fn verify_tangential(bm: &BoundaryModel, m: &AmbientModel, deg: u32) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("tangential_ops").param("n", bm.n).param("degree", deg);
    let t = bm.tangential_ops();
    let mut dirs: Vec<Tangent> = (0..bm.n).map(Tangent::Holo).collect();
    dirs.extend((0..bm.n).map(Tangent::Raised));
    dirs.push(Tangent::Sigma);
    for f in bm.monomials(deg) {
        for &dir in &dirs {
            let a = bm.tangential_operational(m, &f, dir)?;
            let b = t.get(dir).apply(&f);
            let res = &a - &b;
            rep.check(res.is_zero(), || format!("{dir:?} on {f}"), || res.to_string());
        }
    }
    for a in 0..bm.n {
        for b in 0..bm.n {
            let c = t.dbar[a].commutator(&t.d[b]);
            let expect = if a == b {
                t.dsigma.scale(&Gq::i().scale_int(bm.g_diag[a] as i64))
            } else {
                WeylOperator::zero(bm.ring())
            };
            rep.check(c == expect, || format!("[dbar_{a}, d_{b}]"), || c.to_string());
            let c = t.d[a].commutator(&t.d[b]);
            rep.check(c.is_zero(), || format!("[d_{a}, d_{b}]"), || c.to_string());
            let c = t.dbar[a].commutator(&t.dbar[b]);
            rep.check(c.is_zero(), || format!("[dbar_{a}, dbar_{b}]"), || c.to_string());
        }
        let c = t.d[a].commutator(&t.dsigma);
        rep.check(c.is_zero(), || format!("[d_{a}, d_sigma]"), || c.to_string());
    }
    Ok(rep)
}

/// `φ*(Δ̃ extend(F, w1, w2)) = Δ F`.
pub fn verify_reduction(
    bm: &BoundaryModel,
    m: &AmbientModel,
    fs: &[LaurentPoly],
    w1: i64,
    w2: i64,
) -> Result<VerificationReport> {
    if m.n as i64 + w1 + w2 != 0 {
        return Err(Error::WeightConstraint { n: m.n, w1, w2 });
    }
    let mut rep = VerificationReport::new("reduction").param("n", bm.n).param("w1", w1).param("w2", w2);
    let lap = ambient::ambient_laplacian(m);
    let sub = bm.sublaplacian(w1, w2);
    for f in fs {
        let lhs = bm.induce(m, &lap, w1, w2, f)?;
        let rhs = sub.apply(f);
        let res = &lhs - &rhs;
        rep.check(res.is_zero(), || f.to_string(), || res.to_string());
    }
    Ok(rep)
}

/// `Δ̃(r h) = r Δ̃ h + (n + w1 + w2) h` for `h = extend(H, w1 − 1, w2 − 1)`, and the
/// pullback of `Δ̃(r h)` vanishes when `n + w1 + w2 = 0`.
pub fn verify_rh_lemma(
    bm: &BoundaryModel,
    m: &AmbientModel,
    hs: &[LaurentPoly],
    w1: i64,
    w2: i64,
) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("rh_lemma").param("n", bm.n).param("w1", w1).param("w2", w2);
    let lap = ambient::ambient_laplacian(m);
    let r = ambient::r_poly(m);
    let c = Gq::from_int(m.n as i64 + w1 + w2);
    for hb in hs {
        let h = bm.extend(m, hb, w1 - 1, w2 - 1)?;
        let lhs = lap.apply(&(&r * &h));
        let mut rhs = &r * &lap.apply(&h);
        rhs.add_scaled(&h, &c);
        let res = &lhs - &rhs;
        rep.check(res.is_zero(), || hb.to_string(), || res.to_string());
        if c.is_zero() {
            let pb = bm.phi_pullback(m, &lhs)?;
            rep.check(pb.is_zero(), || format!("pullback at {hb}"), || pb.to_string());
        }
    }
    Ok(rep)
}

/// Changing the extension by `r h` does not change `φ*(Δ̃ f)` when `n + w1 + w2 = 0`.
pub fn verify_extension_independence(
    bm: &BoundaryModel,
    m: &AmbientModel,
    fs: &[LaurentPoly],
    hs: &[LaurentPoly],
    w1: i64,
    w2: i64,
) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("extension_independence").param("w1", w1).param("w2", w2);
    let lap = ambient::ambient_laplacian(m);
    let r = ambient::r_poly(m);
    for f in fs {
        let ext = bm.extend(m, f, w1, w2)?;
        let base = bm.phi_pullback(m, &lap.apply(&ext))?;
        for hb in hs {
            let alt = &ext + &(&r * &bm.extend(m, hb, w1 - 1, w2 - 1)?);
            let other = bm.phi_pullback(m, &lap.apply(&alt))?;
            let res = &base - &other;
            rep.check(res.is_zero(), || format!("F={f}, h={hb}"), || res.to_string());
        }
    }
    Ok(rep)
}

/// `extend` is a section of `φ*` and yields eigenfunctions of `E`, `Ē`.
pub fn verify_extension(bm: &BoundaryModel, m: &AmbientModel, fs: &[LaurentPoly], w1: i64, w2: i64) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("extension").param("w1", w1).param("w2", w2);
    let (e, eb) = ambient::euler_ops(m);
    for f in fs {
        let ext = bm.extend(m, f, w1, w2)?;
        let back = bm.phi_pullback(m, &ext)?;
        rep.check(&back == f, || format!("section at {f}"), || (&back - f).to_string());
        let r1 = &e.apply(&ext) - &ext.scale(&Gq::from_int(w1));
        let r2 = &eb.apply(&ext) - &ext.scale(&Gq::from_int(w2));
        rep.check(r1.is_zero() && r2.is_zero(), || format!("euler at {f}"), || format!("{r1} ; {r2}"));
    }
    Ok(rep)
}

/// Induced first-order symmetries intertwine the sub-Laplacian:
/// `induce(𝔇_V, w1−1, w2−1, ΔF) = Δ induce(𝔇_V, w1, w2, F)`.
pub fn verify_symmetry_property(
    bm: &BoundaryModel,
    m: &AmbientModel,
    v: &TracelessMatrix,
    fs: &[LaurentPoly],
    w1: i64,
    w2: i64,
) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("symmetry_property").param("w1", w1).param("w2", w2);
    let d = ambient::dv(m, v)?;
    let lap = bm.sublaplacian(w1, w2);
    for f in fs {
        let lhs = bm.induce(m, &d, w1 - 1, w2 - 1, &lap.apply(f))?;
        let rhs = lap.apply(&bm.induce(m, &d, w1, w2, f)?);
        let res = &lhs - &rhs;
        rep.check(res.is_zero(), || f.to_string(), || res.to_string());
    }
    Ok(rep)
}

/// Boundary form of the composition formula:
/// `induce(𝔇_V𝔇_W) = induce(𝔇_{(VW)_2}) + induce(𝔇_{(VW)_1}) + (VW)_0 − φ*(U-quadric)·Δ`.
pub fn verify_composition_boundary(
    bm: &BoundaryModel,
    m: &AmbientModel,
    v: &TracelessMatrix,
    w: &TracelessMatrix,
    fs: &[LaurentPoly],
    w1: i64,
    w2: i64,
) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("composition_boundary").param("w1", w1).param("w2", w2);
    let parts: CompositionParts = ambient::compose_decompose(m, v, w, w1, w2)?;
    let lhs_op = ambient::dv(m, v)?.compose(&ambient::dv(m, w)?);
    let top = ambient::higher_symmetry_op(m, &parts.vw2)?;
    let first = ambient::dv(m, &TracelessMatrix::new(parts.vw1.clone())?)?;
    let quad = bm.phi_pullback(m, &ambient::u_quadric(m, &parts.u, &parts.utilde))?;
    let lap = bm.sublaplacian(w1, w2);
    for f in fs {
        let lhs = bm.induce(m, &lhs_op, w1, w2, f)?;
        let mut rhs = &bm.induce(m, &top, w1, w2, f)? + &bm.induce(m, &first, w1, w2, f)?;
        rhs.add_scaled(f, &parts.vw0);
        rhs.sub_assign(&(&quad * &lap.apply(f)));
        let res = &lhs - &rhs;
        rep.check(res.is_zero(), || f.to_string(), || res.to_string());
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn models(n: usize) -> (BoundaryModel, AmbientModel) {
        (BoundaryModel::standard(n), AmbientModel::standard(n))
    }

    #[test]
    fn pullback_examples() {
        let (b, m) = models(2);
        assert!(b.phi_pullback(&m, &ambient::r_poly(&m)).unwrap().is_zero());
        assert_eq!(b.phi_pullback(&m, &m.xu(1)).unwrap(), b.z(0));
        let two_i = Gq::i().scale_int(2);
        // (x^∞ − x_0)/(2i)
        let s = (&m.xu(m.inf()) - &m.xl(0)).scale(&two_i.inv().unwrap());
        assert_eq!(b.phi_pullback(&m, &s).unwrap(), b.sigma());
    }

    #[test]
    fn frame_and_tangential() {
        for g in [vec![1, 1], vec![1, -1]] {
            let b = BoundaryModel::new(2, g.clone()).unwrap();
            let m = AmbientModel::new(2, g).unwrap();
            assert_eq!(b.frame_fields().verify().status, Status::Pass);
            assert_eq!(verify_tangential(&b, &m, 2).unwrap().status, Status::Pass);
        }
    }

    #[test]
    fn sublaplacian_examples() {
        let (b, _) = models(1);
        let lap = b.sublaplacian(-1, 0);
        assert!(lap.apply(&b.z(0)).is_zero());
        assert_eq!(lap.apply(&b.sigma()), LaurentPoly::constant(b.ring(), Gq::from_ratio(-1, 2).mul_i()));
        assert!(b.sublaplacian(0, 0).apply(&LaurentPoly::one(b.ring())).is_zero());
    }

    #[test]
    fn reduction_small() {
        for g in [vec![1, 1], vec![-1, 1]] {
            let b = BoundaryModel::new(2, g.clone()).unwrap();
            let m = AmbientModel::new(2, g).unwrap();
            let fs = b.monomials(2);
            for (w1, w2) in ambient::admissible_weights(2, 4) {
                assert_eq!(verify_reduction(&b, &m, &fs, w1, w2).unwrap().status, Status::Pass);
            }
        }
    }

    #[test]
    fn extension_and_lemmas() {
        let (b, m) = models(2);
        let fs = b.monomials(2);
        assert_eq!(verify_extension(&b, &m, &fs, -1, -1).unwrap().status, Status::Pass);
        assert_eq!(verify_rh_lemma(&b, &m, &fs, -1, -1).unwrap().status, Status::Pass);
        assert_eq!(verify_rh_lemma(&b, &m, &fs, 2, 0).unwrap().status, Status::Pass);
        let hs = b.monomials(1);
        assert_eq!(verify_extension_independence(&b, &m, &fs, &hs, 0, -2).unwrap().status, Status::Pass);
    }

    #[test]
    fn induced_symmetries() {
        let (b, m) = models(1);
        let fs = b.monomials(2);
        let central = ambient::central_op(&m);
        for f in &fs {
            assert_eq!(b.induce(&m, &central, 0, -1, f).unwrap(), f.scale(&Gq::i()));
        }
        for v in TracelessMatrix::basis(3) {
            assert_eq!(verify_symmetry_property(&b, &m, &v, &fs, 0, -1).unwrap().status, Status::Pass);
        }
        for (v, w) in ambient::seeded_pairs(3, 3, 2) {
            let rep = verify_composition_boundary(&b, &m, &v, &w, &fs, 0, -1).unwrap();
            assert_eq!(rep.status, Status::Pass);
        }
    }
}
