//! Named verification suites shared by the command line and the acceptance tests.

use crate::ambient::{
    admissible_weights, ambient_laplacian, central_action_check, dv, dv_bracket, r_poly, seeded_pairs,
    verify_composition_identity, AmbientModel, TracelessMatrix,
};
use crate::boundary::{verify_extension, verify_reduction, verify_rh_lemma, verify_tangential, BoundaryModel};
use crate::classalg::{
    center_convolution, class_multiply, column_orthogonality_holds, partitions, ClassElement, Partition,
};
use crate::decompose::{
    commutant_definition_check, commutant_mult_crosscheck, conjugation_lemmas_check, seven_pieces_check,
    skew_vanishing_check, trace_killing_check, verify_decomposition, verify_highest_weight,
};
use crate::error::{Error, Result};
use crate::report::{Status, VerificationReport};
use crate::scalar::Gq;
use crate::symbols::{
    a_coeff, a_matrix, check_forward_formula, check_symbol_recursions, extract_symbols, pascal_identity_check,
    verify_el2_vanishing, verify_extraction, verify_prop1, AmbientSymTensor,
};
use crate::weyl::WeylOperator;
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Reduction,
    Commutation,
    Composition,
    Prop1,
    Symbols,
    Classalg,
    Commutant,
    Decompose,
    Hwvectors,
    All,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Reduction,
        Suite::Commutation,
        Suite::Composition,
        Suite::Prop1,
        Suite::Symbols,
        Suite::Classalg,
        Suite::Commutant,
        Suite::Decompose,
        Suite::Hwvectors,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Reduction => "reduction",
            Suite::Commutation => "commutation",
            Suite::Composition => "composition",
            Suite::Prop1 => "prop1",
            Suite::Symbols => "symbols",
            Suite::Classalg => "classalg",
            Suite::Commutant => "commutant",
            Suite::Decompose => "decompose",
            Suite::Hwvectors => "hwvectors",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite '{s}'")))
    }
}

/// Optional overrides; unset fields fall back to each suite's default sweep.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteParams {
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub s: Option<usize>,
    pub k: Option<usize>,
    pub dim: Option<usize>,
    pub w1: Option<i64>,
    pub w2: Option<i64>,
    pub deg: Option<u32>,
    pub seed: u64,
}

impl SuiteParams {
    pub fn validate(&self, suite: Suite) -> Result<()> {
        let mut errs = Vec::new();
        if self.w1.is_some() != self.w2.is_some() {
            errs.push("--w1 and --w2 must be given together".to_string());
        }
        if let (Some(n), Some(w1), Some(w2)) = (self.n, self.w1, self.w2) {
            if matches!(suite, Suite::Reduction | Suite::Composition) && n as i64 + w1 + w2 != 0 {
                errs.push(format!("weights need n + w1 + w2 = 0, got {n} + {w1} + {w2}"));
            }
        }
        if self.n == Some(0) {
            errs.push("n must be at least 1".into());
        }
        if let (Some(d), Some(s)) = (self.d, self.s) {
            if 2 * s > d {
                errs.push(format!("need 2s ≤ d, got d={d}, s={s}"));
            }
        }
        if let Some(k) = self.k {
            if k == 0 || (suite != Suite::Classalg && k > 3) {
                errs.push(format!("k={k} out of range"));
            }
        }
        if let Some(dim) = self.dim {
            if !(2..=8).contains(&dim) {
                errs.push(format!("dim={dim} out of range 2..=8"));
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(errs.join("; ")))
        }
    }
}

fn weight_pairs(p: &SuiteParams, n: usize, max_diff: i64) -> Vec<(i64, i64)> {
    match (p.w1, p.w2) {
        (Some(a), Some(b)) => vec![(a, b)],
        _ => admissible_weights(n, max_diff),
    }
}

/// Runs one suite; `All` runs every suite with the same overrides.
pub fn run_suite(suite: Suite, p: &SuiteParams) -> Result<VerificationReport> {
    p.validate(suite)?;
    let mut rep = VerificationReport::new(suite.name()).param("seed", p.seed);
    let run = |f: &dyn Fn(&mut VerificationReport) -> Result<()>| -> Result<VerificationReport> {
        let mut r = VerificationReport::new(suite.name()).param("seed", p.seed);
        f(&mut r)?;
        Ok(r)
    };
    let r = match suite {
        Suite::All => {
            for s in Suite::ALL {
                rep.add_child(VerificationReport::timed(|| {
                    run_suite(s, p).unwrap_or_else(|e| {
                        let mut r = VerificationReport::new(s.name());
                        r.fail_with("error".into(), e.to_string());
                        r
                    })
                }));
            }
            return Ok(rep);
        }
        Suite::Reduction => run(&|r| reduction(r, p))?,
        Suite::Commutation => run(&|r| commutation(r, p))?,
        Suite::Composition => run(&|r| composition(r, p))?,
        Suite::Prop1 => run(&|r| prop1(r, p))?,
        Suite::Symbols => run(&|r| symbols(r, p))?,
        Suite::Classalg => run(&|r| classalg(r, p))?,
        Suite::Commutant => run(&|r| commutant(r, p))?,
        Suite::Decompose => run(&|r| decompose(r, p))?,
        Suite::Hwvectors => run(&|r| hwvectors(r, p))?,
    };
    Ok(r)
}

fn reduction(rep: &mut VerificationReport, p: &SuiteParams) -> Result<()> {
    let deg = p.deg.unwrap_or(3);
    for n in p.n.map_or(vec![1, 2], |n| vec![n]) {
        let bm = BoundaryModel::standard(n);
        let m = AmbientModel::standard(n);
        let fs = bm.monomials(deg);
        rep.add_child(verify_tangential(&bm, &m, deg.min(2))?);
        for (w1, w2) in weight_pairs(p, n, 4) {
            rep.add_child(verify_reduction(&bm, &m, &fs, w1, w2)?);
            rep.add_child(verify_extension(&bm, &m, &fs, w1, w2)?);
            rep.add_child(verify_rh_lemma(&bm, &m, &bm.monomials(deg.min(2)), w1, w2)?);
        }
    }
    Ok(())
}

/// `[Δ̃, 𝔇_V] = 0` and `[𝔇_V, r] = 0` on a basis of `sl(n+2)`, and `[𝔇_V, 𝔇_W] = 𝔇_{[V,W]}`.
pub fn verify_commutation(n: usize, seed: u64, pairs: usize) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("commutation").param("n", n).param("seed", seed);
    let m = AmbientModel::standard(n);
    let lap = ambient_laplacian(&m);
    let r = WeylOperator::multiplication(&r_poly(&m));
    for (i, v) in TracelessMatrix::basis(n + 2).iter().enumerate() {
        let d = dv(&m, v)?;
        let c = d.commutator(&lap);
        rep.check(c.is_zero(), || format!("[Δ̃, 𝔇_V] basis {i}"), || c.to_string());
        let c = d.commutator(&r);
        rep.check(c.is_zero(), || format!("[𝔇_V, r] basis {i}"), || c.to_string());
    }
    for (i, (v, w)) in seeded_pairs(n + 2, seed, pairs).iter().enumerate() {
        let lhs = dv(&m, v)?.commutator(&dv(&m, w)?);
        let rhs = dv(&m, &dv_bracket(v, w)?)?;
        let res = &lhs - &rhs;
        rep.check(res.is_zero(), || format!("bracket pair {i}"), || res.to_string());
    }
    rep.add_child(central_action_check(&m, 0, -(n as i64), 2));
    Ok(rep)
}

fn commutation(rep: &mut VerificationReport, p: &SuiteParams) -> Result<()> {
    for n in p.n.map_or(vec![1, 2, 3], |n| vec![n]) {
        rep.add_child(verify_commutation(n, p.seed, 5)?);
    }
    Ok(())
}

fn composition(rep: &mut VerificationReport, p: &SuiteParams) -> Result<()> {
    let n = p.n.unwrap_or(2);
    let bound = p.deg.unwrap_or(3) as i32;
    let (w1, w2) = weight_pairs(p, n, 1)[0];
    let m = AmbientModel::standard(n);
    for (v, w) in seeded_pairs(n + 2, p.seed, 5) {
        rep.add_child(verify_composition_identity(&m, &v, &w, w1, w2, bound)?);
    }
    Ok(())
}

/// `a^s_{1,i} = 1`, `a^1_{1,1} = 1`, the Pascal identity and `|det a^s| = 1` for `s ≤ s_max`.
pub fn verify_a_coefficients(s_max: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("a_coefficients").param("s_max", s_max);
    for s in 1..=s_max {
        for i in 0..=s {
            let a = a_coeff(s, 1, i);
            rep.check(a == BigInt::from(1), || format!("a^{s}_(1,{i})"), || a.to_string());
        }
        let det = a_matrix(s as usize).det();
        let ok = det.as_ref().is_ok_and(|d| *d == Gq::one() || *d == Gq::from_int(-1));
        rep.check(ok, || format!("|det a^{s}|"), || format!("{det:?}"));
    }
    let a = a_coeff(1, 1, 1);
    rep.check(a == BigInt::from(1), || "a^1_(1,1)".into(), || a.to_string());
    rep.add_child(pascal_identity_check(s_max));
    rep
}

fn prop1(rep: &mut VerificationReport, p: &SuiteParams) -> Result<()> {
    let n = p.n.unwrap_or(3);
    let cases = match (p.d, p.s) {
        (Some(d), Some(s)) => vec![(d, s)],
        (Some(d), None) => (1..=d / 2).map(|s| (d, s)).collect(),
        _ => vec![(2, 1), (3, 1), (4, 2)],
    };
    for (d, s) in cases {
        rep.add_child(verify_prop1(n, d, s)?);
    }
    rep.add_child(verify_a_coefficients(8));
    Ok(())
}

fn symbols(rep: &mut VerificationReport, p: &SuiteParams) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let cases = match (p.n, p.d) {
        (Some(n), Some(d)) => vec![(n, d)],
        _ => vec![(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)],
    };
    for (n, d) in cases {
        let bm = BoundaryModel::standard(n);
        let m = AmbientModel::standard(n);
        let t = AmbientSymTensor::random_trace_free(n + 2, d, 2, &mut rng);
        let mut child = verify_extraction(&bm, &m, &t)?;
        child.set_param("d", d);
        let fam = extract_symbols(&bm, &t)?;
        child.add_child(check_symbol_recursions(&bm, &fam)?);
        child.add_child(check_forward_formula(&bm, &fam, 0)?);
        rep.add_child(child);
    }
    for n in p.n.map_or(vec![2, 3], |n| vec![n]) {
        rep.add_child(verify_el2_vanishing(n, p.seed, 2)?);
    }
    Ok(())
}

/// The k=2 and k=3 tables as printed, as `(σ', σ, expected product)`.
pub fn expected_class_tables() -> Vec<(Partition, Partition, ClassElement)> {
    let x2 = Partition::new(vec![2]);
    let x3 = Partition::new(vec![2, 1]);
    let y3 = Partition::new(vec![3]);
    vec![
        (x2.clone(), x2, ClassElement::identity(2)),
        (x3.clone(), x3.clone(), ClassElement::from_terms(3, &[(&[1, 1, 1], 1, 3), (&[3], 2, 3)])),
        (x3.clone(), y3.clone(), ClassElement::from_terms(3, &[(&[2, 1], 1, 1)])),
        (y3.clone(), y3, ClassElement::from_terms(3, &[(&[1, 1, 1], 1, 2), (&[3], 1, 2)])),
    ]
}

pub fn verify_class_tables() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("class_tables");
    for (a, b, want) in expected_class_tables() {
        let got = class_multiply(&ClassElement::basis(&a), &ClassElement::basis(&b))?;
        rep.check(got == want, || format!("{a}·{b}"), || format!("{got} vs {want}"));
    }
    Ok(rep)
}

/// `class_multiply` against convolution in the group algebra on all basis pairs.
pub fn verify_class_oracle(k_max: u32) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("class_multiply_oracle").param("k_max", k_max);
    for k in 1..=k_max {
        let ps = partitions(k);
        for a in &ps {
            for b in &ps {
                let (ea, eb) = (ClassElement::basis(a), ClassElement::basis(b));
                let x = class_multiply(&ea, &eb)?;
                let y = center_convolution(&ea, &eb)?;
                rep.check(x == y, || format!("{a}·{b}"), || format!("{x} vs {y}"));
            }
        }
        rep.check(column_orthogonality_holds(k), || format!("column orthogonality k={k}"), String::new);
    }
    Ok(rep)
}

fn classalg(rep: &mut VerificationReport, p: &SuiteParams) -> Result<()> {
    rep.add_child(verify_class_tables()?);
    rep.add_child(verify_class_oracle(p.k.map_or(5, |k| k as u32))?);
    Ok(())
}

fn commutant(rep: &mut VerificationReport, p: &SuiteParams) -> Result<()> {
    let cases = match (p.k, p.dim) {
        (Some(k), Some(n)) => vec![(k, n)],
        _ => vec![(2, 4), (3, 6)],
    };
    for &(k, n) in &cases {
        rep.add_child(commutant_mult_crosscheck(k, n)?);
    }
    let small = match (p.k, p.dim) {
        (Some(k), Some(n)) if n <= 4 => vec![(k, n)],
        _ => vec![(2, 2), (2, 3), (3, 2)],
    };
    for (k, n) in small {
        rep.add_child(conjugation_lemmas_check(k, n, 12, p.seed)?);
        rep.add_child(commutant_definition_check(k, n, 2, p.seed)?);
        if n >= 2 * k - 1 {
            rep.add_child(trace_killing_check(k, n, p.seed)?);
        }
    }
    Ok(())
}

fn decompose(rep: &mut VerificationReport, p: &SuiteParams) -> Result<()> {
    let cases = match (p.k, p.dim) {
        (Some(k), Some(n)) => vec![(k, n)],
        (Some(k), None) => vec![(k, 2 * k)],
        _ => vec![(1, 3), (2, 4), (2, 5), (3, 4), (3, 6)],
    };
    for (k, n) in cases {
        rep.add_child(verify_decomposition(k, n)?);
    }
    for n in p.dim.map_or(vec![3, 4], |n| vec![n.max(3)]) {
        rep.add_child(seven_pieces_check(n, p.seed)?);
    }
    Ok(())
}

fn hwvectors(rep: &mut VerificationReport, p: &SuiteParams) -> Result<()> {
    let ks = p.k.map_or(vec![1, 2, 3], |k| vec![k]);
    let dims: Vec<usize> = p.dim.map_or((2..=6).collect(), |n| vec![n]);
    for &k in &ks {
        for lam in partitions(k as u32) {
            for &n in &dims {
                if 2 * lam.depth() <= n {
                    rep.add_child(verify_highest_weight(&lam, n)?);
                }
            }
            if lam.depth() < k {
                rep.add_child(skew_vanishing_check(&lam, k, 3, 5, p.seed)?);
            }
        }
    }
    Ok(())
}

/// Worst status among the children named `name`, searching the whole tree.
pub fn status_of(rep: &VerificationReport, name: &str) -> Option<Status> {
    let own = (rep.name == name).then_some(rep.status);
    rep.children.iter().filter_map(|c| status_of(c, name)).chain(own).max()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_validate() {
        assert_eq!("prop1".parse::<Suite>().unwrap(), Suite::Prop1);
        assert!("nope".parse::<Suite>().is_err());
        let p = SuiteParams { n: Some(2), w1: Some(0), w2: Some(0), ..Default::default() };
        assert!(p.validate(Suite::Reduction).is_err());
        let p = SuiteParams { w1: Some(0), ..Default::default() };
        assert!(p.validate(Suite::Commutation).is_err());
        let p = SuiteParams { d: Some(2), s: Some(2), ..Default::default() };
        assert!(p.validate(Suite::Prop1).is_err());
    }

    #[test]
    fn class_tables_pass() {
        assert!(verify_class_tables().unwrap().passed());
        assert!(verify_class_oracle(3).unwrap().passed());
    }

    #[test]
    fn a_coefficients_pass() {
        assert!(verify_a_coefficients(8).passed());
    }
}
