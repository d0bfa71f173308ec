//! The group algebra of the weight lattice over Q(q^{1/2}, t): sparse formal
//! sums sum c_mu e^mu with exact scalar coefficients, the bar and iota
//! involutions, Weyl and affine-Weyl actions, orbit sums and constant terms.
//!
//! Weights are keyed by their fundamental coordinates; iteration order is
//! lexicographic, which makes printing deterministic.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{QtScalar, Specialization};
use crate::rootsys::{RootSystem, Weight};
use crate::weyl::{AffElem, WeylElem};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Weight, QtScalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    /// e^0.
    pub fn one(rank: usize) -> Self {
        AlgebraElement::exp(vec![0; rank])
    }

    /// e^mu.
    pub fn exp(mu: Weight) -> Self {
        AlgebraElement::monomial(mu, QtScalar::one())
    }

    pub fn monomial(mu: Weight, c: QtScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mu, c);
        }
        AlgebraElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &QtScalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    pub fn coeff(&self, mu: &Weight) -> QtScalar {
        self.terms.get(mu).cloned().unwrap_or_else(QtScalar::zero)
    }

    pub fn add_term(&mut self, mu: Weight, c: &QtScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mu.clone()).or_insert_with(QtScalar::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&mu);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            terms: self.terms.iter().map(|(mu, c)| (mu.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &QtScalar) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(mu, v)| (mu.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (mu, c) in &self.terms {
            for (nu, d) in &other.terms {
                let sum: Weight = mu.iter().zip(nu).map(|(a, b)| a + b).collect();
                out.add_term(sum, &(c * d));
            }
        }
        out
    }

    /// bar: e^mu -> e^{-mu}, coefficients untouched.
    pub fn bar(&self) -> AlgebraElement {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(mu, c)| (mu.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// iota applied to every coefficient; exponentials untouched.
    pub fn iota_coeffs(&self) -> AlgebraElement {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(mu, c)| (mu.clone(), c.iota()))
                .collect(),
        }
    }

    /// Substitute t = q^{-k/2} in every coefficient.
    pub fn specialize(&self, s: Specialization) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (mu, c) in &self.terms {
            out.add_term(mu.clone(), &c.specialize(s)?);
        }
        Ok(out)
    }

    pub fn act_simple(&self, rs: &RootSystem, i: usize) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (mu, c) in &self.terms {
            out.add_term(rs.simple_reflect_weight(i, mu), c);
        }
        out
    }

    pub fn act_weyl(&self, w: &WeylElem) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (mu, c) in &self.terms {
            out.add_term(w.act_weight(mu), c);
        }
        out
    }

    /// w tau(lambda): e^mu -> q^{(lambda,mu)} e^{w mu}.  The translation part
    /// lives in the coroot lattice by construction, so the q-power is always
    /// an integer.
    pub fn act_affine(&self, rs: &RootSystem, w: &AffElem) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (mu, c) in &self.terms {
            let n = rs.pair_coroot_weight(&w.translation, mu);
            let scaled = c * &QtScalar::q_pow(n);
            out.add_term(w.finite.act_weight(mu), &scaled);
        }
        out
    }

    /// Coefficient of e^0.
    pub fn constant_term(&self, rank: usize) -> QtScalar {
        self.coeff(&vec![0; rank])
    }

    pub fn is_w_invariant(&self, rs: &RootSystem) -> bool {
        (0..rs.rank).all(|i| self.act_simple(rs, i) == *self)
    }
}

/// m_lambda = sum over the Weyl orbit of a dominant weight.
pub fn orbit_sum(rs: &RootSystem, lambda: &Weight) -> Result<AlgebraElement> {
    if !rs.is_dominant(lambda) {
        return Err(Error::NonDominantWeight(lambda.clone()));
    }
    let mut out = AlgebraElement::zero();
    for mu in rs.weyl_orbit(lambda) {
        out.add_term(mu, &QtScalar::one());
    }
    Ok(out)
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(mu, c)| {
                let coords = mu
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                if c.is_one() {
                    format!("e[{}]", coords)
                } else {
                    format!("({})*e[{}]", c, coords)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s).unwrap()
    }

    fn random_element(rng: &mut ChaCha8Rng, rank: usize) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for _ in 0..rng.gen_range(0..4) {
            let mu: Weight = (0..rank).map(|_| rng.gen_range(-2i64..3)).collect();
            let c = QtScalar::monomial(
                rat(rng.gen_range(-3i64..4)),
                rng.gen_range(-2i64..3),
                rng.gen_range(-2i64..3),
            );
            out.add_term(mu, &c);
        }
        out
    }

    #[test]
    fn bar_examples() {
        let b2 = rs("B2");
        let th = b2.theta_weight();
        let f = AlgebraElement::exp(th.clone())
            .add(&AlgebraElement::one(2).scale(&QtScalar::int(2)));
        let g = AlgebraElement::exp(th.iter().map(|x| -x).collect())
            .add(&AlgebraElement::one(2).scale(&QtScalar::int(2)));
        assert_eq!(f.bar(), g);
        // bar(m_lambda) = m_lambda for root orbits
        for label in ["A2", "B2", "G2"] {
            let r = rs(label);
            let m = orbit_sum(&r, &r.theta_weight()).unwrap();
            assert_eq!(m.bar(), m, "{label}");
        }
    }

    #[test]
    fn involutions_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b2 = rs("B2");
        for _ in 0..20 {
            let f = random_element(&mut rng, 2);
            assert_eq!(f.bar().bar(), f);
            assert_eq!(f.iota_coeffs().iota_coeffs(), f);
            // bar and iota commute, and both commute with the W-action
            assert_eq!(f.bar().iota_coeffs(), f.iota_coeffs().bar());
            for i in 0..2 {
                assert_eq!(f.act_simple(&b2, i).bar(), f.bar().act_simple(&b2, i));
                assert_eq!(
                    f.act_simple(&b2, i).iota_coeffs(),
                    f.iota_coeffs().act_simple(&b2, i)
                );
            }
        }
    }

    #[test]
    fn affine_action_examples() {
        for label in ["A1", "A2", "B2", "G2", "C3"] {
            let r = rs(label);
            let tau = AffElem::translation(&r, r.theta_coroot());
            let th = r.theta_weight();
            // tau(theta^vee) e^theta = q^2 e^theta
            assert_eq!(
                AlgebraElement::exp(th.clone()).act_affine(&r, &tau),
                AlgebraElement::monomial(th.clone(), QtScalar::q_pow(2)),
                "{label}"
            );
            // tau(theta^vee) e^0 = e^0
            assert_eq!(
                AlgebraElement::one(r.rank).act_affine(&r, &tau),
                AlgebraElement::one(r.rank)
            );
            // s_theta e^theta = e^{-theta}
            let s = AffElem::from_finite(WeylElem::reflection(&r, &r.theta), &r);
            assert_eq!(
                AlgebraElement::exp(th.clone()).act_affine(&r, &s),
                AlgebraElement::exp(th.iter().map(|x| -x).collect())
            );
        }
    }

    #[test]
    fn affine_action_is_group_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let b2 = rs("B2");
        for _ in 0..20 {
            let f = random_element(&mut rng, 2);
            let w1 = AffElem::from_word(
                &b2,
                &(0..5).map(|_| rng.gen_range(0..3)).collect::<Vec<_>>(),
            );
            let w2 = AffElem::from_word(
                &b2,
                &(0..5).map(|_| rng.gen_range(0..3)).collect::<Vec<_>>(),
            );
            assert_eq!(
                f.act_affine(&b2, &w2).act_affine(&b2, &w1),
                f.act_affine(&b2, &w1.compose(&w2))
            );
        }
    }

    #[test]
    fn constant_term_examples() {
        let a1 = rs("A1");
        let alpha = a1.root_to_weight(&a1.theta);
        let ea = AlgebraElement::exp(alpha.clone());
        let ena = AlgebraElement::exp(alpha.iter().map(|x| -x).collect());
        assert_eq!(ea.mul(&ena).constant_term(1), QtScalar::one());
        let m = orbit_sum(&a1, &alpha).unwrap();
        assert!(m.constant_term(1).is_zero());
        // [ (1-e^a)(1-e^{-a}) ]_0 = 2
        let one = AlgebraElement::one(1);
        let prod = one.sub(&ea).mul(&one.sub(&ena));
        assert_eq!(prod.constant_term(1), QtScalar::int(2));
    }

    #[test]
    fn orbit_sum_examples() {
        let a1 = rs("A1");
        assert_eq!(orbit_sum(&a1, &vec![0]).unwrap(), AlgebraElement::one(1));
        let m = orbit_sum(&a1, &a1.theta_weight()).unwrap();
        assert_eq!(m.num_terms(), 2);
        let g2 = rs("G2");
        let ms = orbit_sum(&g2, &g2.theta_s_weight().unwrap()).unwrap();
        assert_eq!(ms.num_terms(), 6);
        assert!(ms.is_w_invariant(&g2));
        assert!(matches!(
            orbit_sum(&a1, &vec![-1]),
            Err(Error::NonDominantWeight(_))
        ));
    }

    #[test]
    fn ring_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let a = random_element(&mut rng, 2);
            let b = random_element(&mut rng, 2);
            let c = random_element(&mut rng, 2);
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.sub(&a), AlgebraElement::zero());
            assert_eq!(a.mul(&AlgebraElement::one(2)), a);
            // bar and iota are ring maps
            assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
            assert_eq!(a.mul(&b).iota_coeffs(), a.iota_coeffs().mul(&b.iota_coeffs()));
        }
    }
}
