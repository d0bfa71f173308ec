//! The two scalar products at t = q^{-k/2}: the symmetric product with
//! kernel D_k = prod_{a in R} prod_{i<k} (1 - q^i e^a), and the asymmetric
//! one with the finite kernel C_k = prod_{a in R} prod_{i<k}
//! (1 - q^{i+chi(a)} e^{-a}), chi = 0 on positive roots and 1 otherwise.
//!
//! The C-kernel is exposed only through normalization-independent ratios
//! (f,1)/(1,1), which is all the closed-form identities downstream need.

use crate::coeff::{QtScalar, Rat, Specialization};
use crate::groupalg::AlgebraElement;
use crate::hecke::{apply_t, apply_t_inv};
use crate::rootsys::RootSystem;
use crate::wpoly::ZqElement;
use crate::{Error, Result};
use num::BigInt;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Largest k for which kernels are built, overridable via LAMBDAG_MAX_K.
pub fn max_k() -> u32 {
    std::env::var("LAMBDAG_MAX_K")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(3)
}

pub struct Kernel {
    pub k: u32,
    /// D_k, the kernel of the symmetric product.
    pub delta: ZqElement,
    /// C_k, the kernel of the asymmetric product.
    pub cher: ZqElement,
}

impl Kernel {
    fn build(rs: &RootSystem, k: u32) -> Kernel {
        let mut delta = ZqElement::one(rs.rank);
        let mut cher = ZqElement::one(rs.rank);
        for alpha in &rs.roots {
            let w = rs.root_to_weight(alpha);
            let nw: Vec<i64> = w.iter().map(|x| -x).collect();
            let chi = if alpha.iter().all(|&x| x >= 0) { 0 } else { 1 };
            for i in 0..k as i64 {
                delta.mul_binomial(-1, i, &w);
                cher.mul_binomial(-1, i + chi, &nw);
            }
        }
        Kernel { k, delta, cher }
    }
}

type Cache = RwLock<HashMap<(String, u32), Arc<Kernel>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The cached kernel pair for (type, k).
pub fn kernel(rs: &RootSystem, k: u32) -> Result<Arc<Kernel>> {
    if k > max_k() {
        return Err(Error::BudgetExceeded(format!(
            "k = {k} exceeds the kernel cap {} (set LAMBDAG_MAX_K to raise)",
            max_k()
        )));
    }
    let key = (rs.label.to_string(), k);
    if let Some(ker) = cache().read().unwrap().get(&key) {
        return Ok(ker.clone());
    }
    let ker = Arc::new(Kernel::build(rs, k));
    cache()
        .write()
        .unwrap()
        .entry(key)
        .or_insert_with(|| ker.clone());
    Ok(ker)
}

/// Constant term of f * z for f with small support.
fn dot_small(f: &AlgebraElement, z: &ZqElement) -> QtScalar {
    let mut s = QtScalar::zero();
    for (mu, c) in f.iter() {
        let neg: Vec<i64> = mu.iter().map(|x| -x).collect();
        let p = z.coeff(&neg);
        if !p.is_zero() {
            s = s + c * &p.to_scalar();
        }
    }
    s
}

/// <f,g>_k = [f gbar D_k]_0, optionally divided by |W|.
pub fn macdonald_product(
    rs: &RootSystem,
    f: &AlgebraElement,
    g: &AlgebraElement,
    k: u32,
    normalized: bool,
) -> Result<QtScalar> {
    let ker = kernel(rs, k)?;
    let s = Specialization { k };
    // bar is coefficient-linear: it only flips the exponentials
    let p = f.specialize(s)?.mul(&g.bar().specialize(s)?);
    let mut out = dot_small(&p, &ker.delta);
    if normalized {
        let w = QtScalar::from_rat(Rat::from(BigInt::from(rs.weyl_order())));
        out = out.checked_div(&w)?;
    }
    Ok(out)
}

/// (f,g)_k = [f (bar.iota g) C_k]_0 (unnormalized; for ratios only).
pub fn cherednik_pair(
    rs: &RootSystem,
    f: &AlgebraElement,
    g: &AlgebraElement,
    k: u32,
) -> Result<QtScalar> {
    let ker = kernel(rs, k)?;
    let s = Specialization { k };
    // bar.iota flips the exponentials and inverts q, t in the coefficients
    let p = f
        .specialize(s)?
        .mul(&g.bar().iota_coeffs().specialize(s)?);
    Ok(dot_small(&p, &ker.cher))
}

/// (f,1)_k / (1,1)_k.
pub fn cherednik_ratio(rs: &RootSystem, f: &AlgebraElement, k: u32) -> Result<QtScalar> {
    let one = AlgebraElement::one(rs.rank);
    let num = cherednik_pair(rs, f, &one, k)?;
    let den = cherednik_pair(rs, &one, &one, k)?;
    num.checked_div(&den)
}

/// t^{-2 ht a} (t^2-1)/(q t^{-2 d_r} - 1) at t = q^{-k/2}: the predicted
/// ratio (e^a, 1)/(1,1) for a positive root a of height ht a.
pub fn positive_root_ratio(rs: &RootSystem, height: i64, k: u32) -> Result<QtScalar> {
    let d_r = *rs.exponents.exponents.last().unwrap();
    let num = &QtScalar::t_pow(-2 * height) * &(&QtScalar::t_pow(2) - &QtScalar::one());
    let den = &(&QtScalar::q_pow(1) * &QtScalar::t_pow(-2 * d_r)) - &QtScalar::one();
    num.checked_div(&den)?.specialize(Specialization { k })
}

/// q t^{2 ht a - 2(d_r+1)} (t^2-1)/(q t^{-2 d_r} - 1) at t = q^{-k/2}: the
/// predicted ratio for e^{-a}, a positive.
pub fn negative_root_ratio(rs: &RootSystem, height: i64, k: u32) -> Result<QtScalar> {
    let d_r = *rs.exponents.exponents.last().unwrap();
    let num = &(&QtScalar::q_pow(1) * &QtScalar::t_pow(2 * height - 2 * (d_r + 1)))
        * &(&QtScalar::t_pow(2) - &QtScalar::one());
    let den = &(&QtScalar::q_pow(1) * &QtScalar::t_pow(-2 * d_r)) - &QtScalar::one();
    num.checked_div(&den)?.specialize(Specialization { k })
}

/// Checks the closed ratio formulas for e^a and e^{-a} over every positive
/// root.  Returns descriptions of any failures.
pub fn verify_ratio_formulas(rs: &RootSystem, k: u32) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    for alpha in &rs.positive_roots {
        let h = rs.height(alpha);
        let e_pos = AlgebraElement::exp(rs.root_to_weight(alpha));
        let e_neg = e_pos.bar();
        if cherednik_ratio(rs, &e_pos, k)? != positive_root_ratio(rs, h, k)? {
            failures.push(format!("{} k={k} e^{alpha:?}", rs.label));
        }
        if cherednik_ratio(rs, &e_neg, k)? != negative_root_ratio(rs, h, k)? {
            failures.push(format!("{} k={k} e^-{alpha:?}", rs.label));
        }
    }
    Ok(failures)
}

/// Unitarity of T_i: [T_i f * (bar.iota g) * C_k]_0 = [f * (bar.iota T_i^{-1} g) * C_k]_0
/// on sampled exponentials.
pub fn verify_unitarity(
    rs: &RootSystem,
    k: u32,
    sample_bound: i64,
    samples: usize,
    seed: u64,
) -> Result<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let mu: Vec<i64> = (0..rs.rank)
            .map(|_| rng.gen_range(-sample_bound..=sample_bound))
            .collect();
        let nu: Vec<i64> = (0..rs.rank)
            .map(|_| rng.gen_range(-sample_bound..=sample_bound))
            .collect();
        let f = AlgebraElement::exp(mu.clone());
        let g = AlgebraElement::exp(nu.clone());
        for i in 0..=rs.rank {
            let lhs = cherednik_pair(rs, &apply_t(rs, i, &f), &g, k)?;
            let rhs = cherednik_pair(rs, &f, &apply_t_inv(rs, i, &g), k)?;
            if lhs != rhs {
                failures.push(format!("{} k={k} i={i} mu={mu:?} nu={nu:?}", rs.label));
            }
        }
    }
    Ok(failures)
}

/// The convexity conclusion for A = R^+ and (non-simply-laced) A = R^+_s:
/// with X read off from the maximal element, every member of A satisfies
/// ratio(e^mu) = t^{-2 ht mu} X.
pub fn verify_convexity(rs: &RootSystem, k: u32) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    let mut sets: Vec<(Vec<crate::rootsys::Root>, crate::rootsys::Root)> =
        vec![(rs.positive_roots.clone(), rs.theta.clone())];
    if rs.lambda > 1 {
        sets.push((rs.short_positive_roots(), rs.theta_s.clone().unwrap()));
    }
    for (set, max) in sets {
        let r_max = cherednik_ratio(rs, &AlgebraElement::exp(rs.root_to_weight(&max)), k)?;
        let x = &r_max
            * &QtScalar::t_pow(2 * rs.height(&max)).specialize(Specialization { k })?;
        for alpha in &set {
            let r = cherednik_ratio(rs, &AlgebraElement::exp(rs.root_to_weight(alpha)), k)?;
            let want =
                &QtScalar::t_pow(-2 * rs.height(alpha)).specialize(Specialization { k })? * &x;
            if r != want {
                failures.push(format!("{} k={k} alpha={alpha:?}", rs.label));
            }
        }
    }
    Ok(failures)
}

/// The identity forced by unitarity of Y^{theta^vee} on e^{theta_s}:
///   c1 * ratio(e^{theta_s}) - c2 = c3 * ratio(e^{theta_s})
/// with (c1, c2, c3) = (q t^{-S}, (t-t^{-1}) t^{L-S+2}, t^{2L+S}) in the
/// doubly-laced cases and (q t^{-4}, (t-t^{-1}) t, t^6) for G2.
pub fn verify_unitarity_identity(rs: &RootSystem, k: u32) -> Result<bool> {
    if rs.lambda == 1 {
        return Err(Error::SimplyLaced(rs.label.to_string()));
    }
    let (_, big_l, big_s) = rs.heights(&rs.theta);
    let (c1, c2, c3) = if rs.lambda == 3 {
        (
            &QtScalar::q_pow(1) * &QtScalar::t_pow(-4),
            &QtScalar::h() * &QtScalar::t_pow(1),
            QtScalar::t_pow(6),
        )
    } else {
        (
            &QtScalar::q_pow(1) * &QtScalar::t_pow(-big_s),
            &QtScalar::h() * &QtScalar::t_pow(big_l - big_s + 2),
            QtScalar::t_pow(2 * big_l + big_s),
        )
    };
    let s = Specialization { k };
    let ratio = cherednik_ratio(
        rs,
        &AlgebraElement::exp(rs.theta_s_weight()?),
        k,
    )?;
    let lhs = &(&c1.specialize(s)? * &ratio) - &c2.specialize(s)?;
    let rhs = &c3.specialize(s)? * &ratio;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::groupalg::orbit_sum;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s).unwrap()
    }

    /// The constant-term product formula for [D_k]_0 / |W| at k = 2.
    fn constant_term_product(r: &RootSystem) -> QtScalar {
        let mut p = QtScalar::one();
        for alpha in &r.positive_roots {
            let hv: i64 = r.coroot(alpha).iter().sum(); // (rho, alpha^vee)
            let num = &QtScalar::one() - &QtScalar::q_pow(2 * hv + 1);
            let den = &QtScalar::one() - &QtScalar::q_pow(2 * hv - 1);
            p = &p * &num.checked_div(&den).unwrap();
        }
        p
    }

    #[test]
    fn trivial_products() {
        let a1 = rs("A1");
        let one = AlgebraElement::one(1);
        assert_eq!(
            macdonald_product(&a1, &one, &one, 0, false).unwrap(),
            QtScalar::one()
        );
        assert_eq!(cherednik_ratio(&a1, &one, 1).unwrap(), QtScalar::one());
    }

    #[test]
    fn a1_hand_expansion() {
        // [ (e^a + e^-a)(1 - e^a)(1 - e^-a) ]_0 = -2
        let a1 = rs("A1");
        let m = orbit_sum(&a1, &a1.theta_weight()).unwrap();
        let one = AlgebraElement::one(1);
        assert_eq!(
            macdonald_product(&a1, &m, &one, 1, false).unwrap(),
            QtScalar::int(-2)
        );
    }

    #[test]
    fn normalized_constant_term_formula() {
        for label in ["A1", "A2", "B2", "G2"] {
            let r = rs(label);
            let one = AlgebraElement::one(r.rank);
            assert_eq!(
                macdonald_product(&r, &one, &one, 2, true).unwrap(),
                constant_term_product(&r),
                "{label}"
            );
        }
    }

    #[test]
    fn product_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b2 = rs("B2");
        for _ in 0..6 {
            let mut f = AlgebraElement::zero();
            let mut g = AlgebraElement::zero();
            for _ in 0..2 {
                f.add_term(
                    (0..2).map(|_| rng.gen_range(-2i64..3)).collect(),
                    &QtScalar::monomial(rat(rng.gen_range(-3i64..4)), 0, 0),
                );
                g.add_term(
                    (0..2).map(|_| rng.gen_range(-2i64..3)).collect(),
                    &QtScalar::monomial(rat(rng.gen_range(-3i64..4)), 0, 0),
                );
            }
            for k in [1u32, 2] {
                assert_eq!(
                    macdonald_product(&b2, &f, &g, k, false).unwrap(),
                    macdonald_product(&b2, &g, &f, k, false).unwrap()
                );
            }
        }
    }

    #[test]
    fn ratio_formulas_small_types() {
        for label in ["A1", "A2", "B2", "G2"] {
            let r = rs(label);
            for k in [1, 2] {
                assert!(verify_ratio_formulas(&r, k).unwrap().is_empty(), "{label}");
            }
        }
    }

    #[test]
    fn unitarity_samples() {
        assert!(verify_unitarity(&rs("A1"), 1, 2, 10, 3).unwrap().is_empty());
        assert!(verify_unitarity(&rs("B2"), 2, 2, 5, 3).unwrap().is_empty());
        assert!(verify_unitarity(&rs("A2"), 1, 2, 5, 3).unwrap().is_empty());
    }

    #[test]
    fn unitarity_on_invariants() {
        // f = g = 1: both sides are t (1,1)
        for label in ["A1", "B2"] {
            let r = rs(label);
            let one = AlgebraElement::one(r.rank);
            for k in [1u32, 2] {
                let c11 = cherednik_pair(&r, &one, &one, k).unwrap();
                let t = QtScalar::t_pow(1).specialize(Specialization { k }).unwrap();
                for i in 0..=r.rank {
                    assert_eq!(
                        cherednik_pair(&r, &apply_t(&r, i, &one), &one, k).unwrap(),
                        &t * &c11
                    );
                }
            }
        }
    }

    #[test]
    fn convexity_small_types() {
        assert!(verify_convexity(&rs("B2"), 2).unwrap().is_empty());
        assert!(verify_convexity(&rs("A2"), 1).unwrap().is_empty());
        assert!(verify_convexity(&rs("G2"), 2).unwrap().is_empty());
    }

    #[test]
    fn g2_ratio_chain() {
        // ratio(e^{theta_s}) = t^-6 X, ratio(e^beta) = t^-4 X,
        // ratio(e^{alpha_1}) = t^-2 X, X = (t^2-1)/(q t^-10 - 1)
        let g2 = rs("G2");
        for k in [1u32, 2] {
            let s = Specialization { k };
            let x = (&QtScalar::t_pow(2) - &QtScalar::one())
                .checked_div(&(&(&QtScalar::q_pow(1) * &QtScalar::t_pow(-10)) - &QtScalar::one()))
                .unwrap()
                .specialize(s)
                .unwrap();
            let cases: Vec<(Vec<i64>, i64)> =
                vec![(vec![2, 1], 6), (vec![1, 1], 4), (vec![1, 0], 2)];
            for (alpha, pw) in cases {
                let r = cherednik_ratio(
                    &g2,
                    &AlgebraElement::exp(g2.root_to_weight(&alpha)),
                    k,
                )
                .unwrap();
                assert_eq!(
                    r,
                    &QtScalar::t_pow(-pw).specialize(s).unwrap() * &x,
                    "k={k} alpha={alpha:?}"
                );
            }
        }
    }

    #[test]
    fn unitarity_identity_non_simply_laced() {
        for label in ["B2", "B3", "C3", "G2"] {
            let r = rs(label);
            for k in [1, 2] {
                assert!(verify_unitarity_identity(&r, k).unwrap(), "{label} k={k}");
            }
        }
        assert!(matches!(
            verify_unitarity_identity(&rs("A2"), 1),
            Err(Error::SimplyLaced(_))
        ));
    }

    #[test]
    fn budget_cap() {
        let a1 = rs("A1");
        assert!(matches!(
            kernel(&a1, 64),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn asymmetric_symmetry_at_ratio_level() {
        // (f,g) = (g,f)^iota, checked at ratio level on sampled exponentials
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let b2 = rs("B2");
        let one = AlgebraElement::one(2);
        for k in [1u32, 2] {
            let c11 = cherednik_pair(&b2, &one, &one, k).unwrap();
            for _ in 0..6 {
                let mu: Vec<i64> = (0..2).map(|_| rng.gen_range(-2i64..3)).collect();
                let nu: Vec<i64> = (0..2).map(|_| rng.gen_range(-2i64..3)).collect();
                let f = AlgebraElement::exp(mu);
                let g = AlgebraElement::exp(nu);
                let lhs = &cherednik_pair(&b2, &f, &g, k).unwrap() / &c11;
                let rhs = &cherednik_pair(&b2, &g, &f, k).unwrap() / &c11;
                assert_eq!(lhs, rhs.iota());
            }
        }
    }
}
