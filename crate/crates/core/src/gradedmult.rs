//! Graded multiplicities GM_lambda(q) = sum_n [Lambda^n g : V(lambda)] q^n,
//! computed three independent ways: brute-force decomposition of the
//! exterior-algebra character, the constant-term route
//! GM_lambda(-q) = (1-q)^r <1, chi_lambda>_2, and the closed formulas for
//! lambda = 0, theta_s, theta.

use crate::coeff::{QtScalar, Specialization};
use crate::groupalg::AlgebraElement;
use crate::macdonald::weyl_character;
use crate::rootsys::{RootSystem, Weight};
use crate::scalar::{cherednik_ratio, macdonald_product};
use crate::wpoly::{key_to_weight, QPoly, ZqElement};
use crate::{Error, Result};
use num::BigInt;
use std::collections::BTreeMap;

/// Largest |R| for which the exterior character is folded (machine-integer
/// coefficients overflow beyond that); override via LAMBDAG_MAX_ROOTS.
pub fn max_roots() -> usize {
    std::env::var("LAMBDAG_MAX_ROOTS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(48)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMultiplicity {
    pub lambda: Weight,
    /// q-degree -> multiplicity, all non-negative.
    pub poly: BTreeMap<i64, i64>,
}

impl GradedMultiplicity {
    pub fn from_qpoly(lambda: Weight, p: &QPoly) -> Result<GradedMultiplicity> {
        let mut poly = BTreeMap::new();
        for (e, c) in p.iter() {
            if e < 0 {
                return Err(Error::NonPolynomialResult { half: 2 * e, tpow: 0 });
            }
            if c < 0 {
                return Err(Error::NegativeMultiplicity {
                    weight: lambda,
                    degree: e,
                });
            }
            poly.insert(e, c);
        }
        Ok(GradedMultiplicity { lambda, poly })
    }

    pub fn from_scalar(lambda: Weight, s: &QtScalar) -> Result<GradedMultiplicity> {
        let mut p = QPoly::zero();
        for (e, r) in s.to_q_polynomial()? {
            if !r.is_integer() {
                return Err(Error::NonZeroRemainder);
            }
            let c: i64 = r
                .to_integer()
                .try_into()
                .map_err(|_| Error::NonZeroRemainder)?;
            p.add_scaled(&QPoly::monomial(c, e), 0, 1);
        }
        GradedMultiplicity::from_qpoly(lambda, &p)
    }

    pub fn value_at_one(&self) -> i64 {
        self.poly.values().sum()
    }

    pub fn to_qpoly(&self) -> QPoly {
        let mut p = QPoly::zero();
        for (&e, &c) in &self.poly {
            p.add_scaled(&QPoly::monomial(c, e), 0, 1);
        }
        p
    }
}

/// P_{Lambda g}(q) = (1+q)^r prod_{a in R} (1 + q e^a).
pub fn exterior_character(rs: &RootSystem) -> Result<ZqElement> {
    if rs.roots.len() > max_roots() {
        return Err(Error::BudgetExceeded(format!(
            "|R| = {} of {} exceeds the exterior-character cap {} \
             (set LAMBDAG_MAX_ROOTS to raise)",
            rs.roots.len(),
            rs.label,
            max_roots()
        )));
    }
    let mut f = ZqElement::one(rs.rank);
    for _ in 0..rs.rank {
        f.mul_binomial(1, 1, &vec![0; rs.rank]);
    }
    for alpha in &rs.roots {
        f.mul_binomial(1, 1, &rs.root_to_weight(alpha));
    }
    let dim = rs.rank + rs.roots.len();
    assert_eq!(f.mass(), 1i128 << dim, "exterior character mass");
    Ok(f)
}

/// Writes the W-invariant input as sum_lambda GM_lambda(q) chi_lambda.
/// Multiplying by prod_{a>0} (1 - e^{-a}) turns each chi_lambda into its
/// alternant shifted by -rho, and since lambda' + rho is regular, no Weyl
/// image other than the identity one lands on a dominant weight: GM_lambda
/// is simply the coefficient of e^lambda in the product.
pub fn decompose(
    rs: &RootSystem,
    ec: &ZqElement,
) -> Result<BTreeMap<Weight, GradedMultiplicity>> {
    let mut prod = ec.clone();
    for alpha in &rs.positive_roots {
        let shift: Weight = rs.root_to_weight(alpha).iter().map(|x| -x).collect();
        prod.mul_binomial(-1, 0, &shift);
    }
    let mut out = BTreeMap::new();
    for (k, p) in &prod.terms {
        let lambda = key_to_weight(k, rs.rank);
        if !rs.is_dominant(&lambda) || p.is_zero() {
            continue;
        }
        assert!(
            rs.weight_to_root_lattice(&lambda).is_some(),
            "dominant weight outside the root lattice in the decomposition"
        );
        out.insert(lambda.clone(), GradedMultiplicity::from_qpoly(lambda, p)?);
    }
    Ok(out)
}

/// GM_0 = prod_i (1 + q^{2 d_i + 1}).
pub fn gm_formula_zero(rs: &RootSystem) -> GradedMultiplicity {
    let mut p = QPoly::constant(1);
    for &d in &rs.exponents.exponents {
        let mut q = p.clone();
        q.add_scaled(&p, 2 * d + 1, 1);
        p = q;
    }
    GradedMultiplicity::from_qpoly(vec![0; rs.rank], &p).unwrap()
}

fn one_plus_q_inv_times(core: &QPoly) -> QPoly {
    let mut p = core.clone();
    p.add_scaled(core, -1, 1);
    p
}

/// GM_theta = (1 + q^{-1}) prod_{i<r} (1 + q^{2 d_i + 1}) sum_i q^{2 d_i},
/// expanded to a genuine polynomial.
pub fn gm_formula_theta(rs: &RootSystem) -> Result<GradedMultiplicity> {
    let d = &rs.exponents.exponents;
    let mut prod = QPoly::constant(1);
    for &di in &d[..d.len() - 1] {
        let mut q = prod.clone();
        q.add_scaled(&prod, 2 * di + 1, 1);
        prod = q;
    }
    let mut sum = QPoly::zero();
    for &di in d {
        sum.add_scaled(&QPoly::monomial(1, 2 * di), 0, 1);
    }
    let mut core = QPoly::zero();
    core.add_mul(&prod, &sum, 0, 1);
    GradedMultiplicity::from_qpoly(rs.theta_weight(), &one_plus_q_inv_times(&core))
}

/// GM_{theta_s} = (1 + q^{-1}) prod_{i<r} (1 + q^{2 d_i + 1})
///   q^{d_r + 1 - 2 (r_s - 1) r_l} (1 - q^{4 r_l r_s})/(1 - q^{4 r_l}).
pub fn gm_formula_theta_s(rs: &RootSystem) -> Result<GradedMultiplicity> {
    if rs.lambda == 1 {
        return Err(Error::SimplyLaced(rs.label.to_string()));
    }
    let d = &rs.exponents.exponents;
    let (r_s, r_l) = (rs.exponents.r_short as i64, rs.exponents.r_long as i64);
    let d_r = *d.last().unwrap();
    let mut prod = QPoly::constant(1);
    for &di in &d[..d.len() - 1] {
        let mut q = prod.clone();
        q.add_scaled(&prod, 2 * di + 1, 1);
        prod = q;
    }
    // (1 - q^{4 r_l r_s})/(1 - q^{4 r_l}) = sum_{j<r_s} q^{4 r_l j}
    let mut geom = QPoly::zero();
    for j in 0..r_s {
        geom.add_scaled(&QPoly::monomial(1, 4 * r_l * j), 0, 1);
    }
    let mut core = QPoly::zero();
    core.add_mul(&prod, &geom, d_r + 1 - 2 * (r_s - 1) * r_l, 1);
    GradedMultiplicity::from_qpoly(rs.theta_s_weight()?, &one_plus_q_inv_times(&core))
}

/// -r + (q t^2 - 1)/(q t^{-2 d_r} - 1) sum_i t^{-2 d_i}: the closed form of
/// (sum_{a in R} e^a, 1)/(1,1).
pub fn hroot_ratio_formula(rs: &RootSystem) -> QtScalar {
    let d = &rs.exponents.exponents;
    let d_r = *d.last().unwrap();
    let mut sum = QtScalar::zero();
    for &di in d {
        sum = sum + QtScalar::t_pow(-2 * di);
    }
    let num = &(&QtScalar::q_pow(1) * &QtScalar::t_pow(2)) - &QtScalar::one();
    let den = &(&QtScalar::q_pow(1) * &QtScalar::t_pow(-2 * d_r)) - &QtScalar::one();
    &QtScalar::int(-(rs.rank as i64)) + &(&num.checked_div(&den).unwrap() * &sum)
}

/// -r_s + (q t^2 - 1)/(q t^{-2 d_r} - 1) t^{-d_r - 1 + 2 (r_s-1) r_l}
///   (1 - t^{-4 r_l r_s})/(1 - t^{-4 r_l}): the closed form of
/// (sum_{a in R_s} e^a, 1)/(1,1).
pub fn hsroot_ratio_formula(rs: &RootSystem) -> Result<QtScalar> {
    if rs.lambda == 1 {
        return Err(Error::SimplyLaced(rs.label.to_string()));
    }
    let d_r = *rs.exponents.exponents.last().unwrap();
    let (r_s, r_l) = (rs.exponents.r_short as i64, rs.exponents.r_long as i64);
    let num = &(&QtScalar::q_pow(1) * &QtScalar::t_pow(2)) - &QtScalar::one();
    let den = &(&QtScalar::q_pow(1) * &QtScalar::t_pow(-2 * d_r)) - &QtScalar::one();
    let geo_num = &QtScalar::one() - &QtScalar::t_pow(-4 * r_l * r_s);
    let geo_den = &QtScalar::one() - &QtScalar::t_pow(-4 * r_l);
    let val = &(&num.checked_div(&den)? * &QtScalar::t_pow(-d_r - 1 + 2 * (r_s - 1) * r_l))
        * &geo_num.checked_div(&geo_den)?;
    Ok(&QtScalar::int(-r_s) + &val)
}

/// Checks the closed ratio-sum formulas against direct constant terms.
pub fn verify_ratio_sum_formulas(rs: &RootSystem, k: u32) -> Result<Vec<String>> {
    let s = Specialization { k };
    let mut failures = Vec::new();
    let mut all = AlgebraElement::zero();
    for alpha in &rs.roots {
        all.add_term(rs.root_to_weight(alpha), &QtScalar::one());
    }
    if cherednik_ratio(rs, &all, k)? != hroot_ratio_formula(rs).specialize(s)? {
        failures.push(format!("{} k={k} full root sum", rs.label));
    }
    if rs.lambda > 1 {
        let mut short = AlgebraElement::zero();
        for alpha in rs.short_positive_roots() {
            let w = rs.root_to_weight(&alpha);
            short.add_term(w.iter().map(|x| -x).collect(), &QtScalar::one());
            short.add_term(w, &QtScalar::one());
        }
        if cherednik_ratio(rs, &short, k)? != hsroot_ratio_formula(rs)?.specialize(s)? {
            failures.push(format!("{} k={k} short root sum", rs.label));
        }
    }
    Ok(failures)
}

/// Both sides of sum_{a>0} t^{k ht a + l} = sum_i t^l (1 - t^{k d_i})/(t^{-k} - 1).
pub fn lemma_d_sum(rs: &RootSystem, k_exp: i64, l_exp: i64) -> (QtScalar, QtScalar) {
    assert!(k_exp != 0);
    let mut lhs = QtScalar::zero();
    for alpha in &rs.positive_roots {
        lhs = lhs + QtScalar::t_pow(k_exp * rs.height(alpha) + l_exp);
    }
    let mut rhs = QtScalar::zero();
    let den = &QtScalar::t_pow(-k_exp) - &QtScalar::one();
    for &di in &rs.exponents.exponents {
        let num = &QtScalar::t_pow(l_exp) * &(&QtScalar::one() - &QtScalar::t_pow(k_exp * di));
        rhs = rhs + num.checked_div(&den).unwrap();
    }
    (lhs, rhs)
}

/// GM_lambda by the constant-term route: (1-q)^r <1, chi_lambda>_2 with
/// q -> -q.  For lambda = theta the result is cross-checked against the
/// Cherednik ratio-chain evaluation.
pub fn gm_via_macdonald(rs: &RootSystem, lambda: &Weight) -> Result<GradedMultiplicity> {
    if !rs.is_dominant(lambda) {
        return Err(Error::NonDominantWeight(lambda.clone()));
    }
    if rs.weight_to_root_lattice(lambda).is_none() {
        return Err(Error::Unsupported(format!(
            "{lambda:?} is not in the root lattice; GM vanishes outside it"
        )));
    }
    let chi = weyl_character(rs, lambda)?;
    let one = AlgebraElement::one(rs.rank);
    let ct = macdonald_product(rs, &one, &chi, 2, true)?;
    let mut scaled = ct;
    let one_minus_q = &QtScalar::one() - &QtScalar::q_pow(1);
    for _ in 0..rs.rank {
        scaled = &scaled * &one_minus_q;
    }
    if lambda == &rs.theta_weight() {
        // the ratio-chain route: GM_theta(-q) = GM_0(-q) (r + (sum_R e^a,1)/(1,1))
        let c11 = macdonald_product(rs, &one, &one, 2, true)?;
        let factor = &QtScalar::int(rs.rank as i64)
            + &hroot_ratio_formula(rs).specialize(Specialization { k: 2 })?;
        let mut alt = &c11 * &factor;
        for _ in 0..rs.rank {
            alt = &alt * &one_minus_q;
        }
        if alt != scaled {
            return Err(Error::NonZeroRemainder);
        }
    }
    GradedMultiplicity::from_scalar(lambda.clone(), &scaled.negate_q()?)
}

/// Convenience: the decomposition entry for lambda (zero polynomial if
/// absent).
pub fn gm_oracle(
    dec: &BTreeMap<Weight, GradedMultiplicity>,
    lambda: &Weight,
) -> GradedMultiplicity {
    dec.get(lambda).cloned().unwrap_or_else(|| GradedMultiplicity {
        lambda: lambda.clone(),
        poly: BTreeMap::new(),
    })
}

/// Three-way agreement on GM_0, GM_theta, and (non-simply-laced)
/// GM_{theta_s}: oracle decomposition, constant-term route, closed forms.
pub fn verify_three_way(rs: &RootSystem) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    let ec = exterior_character(rs)?;
    let dec = decompose(rs, &ec)?;
    let zero = vec![0; rs.rank];
    let mut cases: Vec<(Weight, GradedMultiplicity)> = vec![
        (zero.clone(), gm_formula_zero(rs)),
        (rs.theta_weight(), gm_formula_theta(rs)?),
    ];
    if rs.lambda > 1 {
        cases.push((rs.theta_s_weight()?, gm_formula_theta_s(rs)?));
    }
    for (lambda, formula) in cases {
        let oracle = gm_oracle(&dec, &lambda);
        let ct = gm_via_macdonald(rs, &lambda)?;
        if oracle != formula {
            failures.push(format!("{} {lambda:?} oracle vs formula", rs.label));
        }
        if ct != formula {
            failures.push(format!("{} {lambda:?} constant term vs formula", rs.label));
        }
    }
    // mass conservation across the full decomposition
    let mut mass = BigInt::from(0);
    for (lambda, gm) in &dec {
        mass += BigInt::from(gm.value_at_one()) * crate::macdonald::weyl_dim(rs, lambda);
    }
    if mass != BigInt::from(1i64) << (rs.rank + rs.roots.len()) {
        failures.push(format!("{} mass conservation", rs.label));
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s).unwrap()
    }

    fn gm(pairs: &[(i64, i64)], lambda: Weight) -> GradedMultiplicity {
        GradedMultiplicity {
            lambda,
            poly: pairs.iter().copied().collect(),
        }
    }

    #[test]
    fn exterior_character_small() {
        let a1 = rs("A1");
        let ec = exterior_character(&a1).unwrap();
        assert_eq!(ec.mass(), 8);
        assert_eq!(ec.constant_term(), QPoly { lo: 0, c: vec![1, 1, 1, 1] });
        let g2 = rs("G2");
        assert_eq!(exterior_character(&g2).unwrap().mass(), 1 << 14);
    }

    #[test]
    fn exterior_character_at_one_is_binomial() {
        // substituting e^mu -> 1 gives (1+q)^{dim g}
        let b2 = rs("B2");
        let ec = exterior_character(&b2).unwrap();
        let mut total = QPoly::zero();
        for p in ec.terms.values() {
            total.add_scaled(p, 0, 1);
        }
        let mut want = QPoly::constant(1);
        for _ in 0..10 {
            let mut n = want.clone();
            n.add_scaled(&want, 1, 1);
            want = n;
        }
        assert_eq!(total, want);
    }

    #[test]
    fn a1_decomposition_by_hand() {
        // Lambda^0 = trivial, Lambda^1 = g, Lambda^2 = g, Lambda^3 = trivial
        let a1 = rs("A1");
        let dec = decompose(&a1, &exterior_character(&a1).unwrap()).unwrap();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[&vec![0]], gm(&[(0, 1), (3, 1)], vec![0]));
        assert_eq!(dec[&vec![2]], gm(&[(1, 1), (2, 1)], vec![2]));
    }

    #[test]
    fn formula_zero_instances() {
        assert_eq!(
            gm_formula_zero(&rs("A1")),
            gm(&[(0, 1), (3, 1)], vec![0])
        );
        // G2: (1+q^3)(1+q^11)
        assert_eq!(
            gm_formula_zero(&rs("G2")),
            gm(&[(0, 1), (3, 1), (11, 1), (14, 1)], vec![0, 0])
        );
    }

    #[test]
    fn formula_theta_instances() {
        let a1 = rs("A1");
        assert_eq!(
            gm_formula_theta(&a1).unwrap(),
            gm(&[(1, 1), (2, 1)], a1.theta_weight())
        );
        let b2 = rs("B2");
        assert_eq!(
            gm_formula_theta(&b2).unwrap(),
            gm(
                &[(1, 1), (2, 1), (4, 1), (5, 2), (6, 1), (8, 1), (9, 1)],
                b2.theta_weight()
            )
        );
        for label in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"] {
            let r = rs(label);
            assert_eq!(
                gm_formula_theta(&r).unwrap().value_at_one(),
                (1i64 << r.rank) * r.rank as i64,
                "{label}"
            );
        }
    }

    #[test]
    fn formula_theta_s_instances() {
        let b2 = rs("B2");
        assert_eq!(
            gm_formula_theta_s(&b2).unwrap(),
            gm(&[(3, 1), (4, 1), (6, 1), (7, 1)], b2.theta_s_weight().unwrap())
        );
        // G2: (1+q^-1)(1+q^3) q^6
        let g2 = rs("G2");
        assert_eq!(
            gm_formula_theta_s(&g2).unwrap(),
            gm(&[(5, 1), (6, 1), (8, 1), (9, 1)], g2.theta_s_weight().unwrap())
        );
        assert!(matches!(
            gm_formula_theta_s(&rs("A2")),
            Err(Error::SimplyLaced(_))
        ));
    }

    #[test]
    fn constant_term_route() {
        let a2 = rs("A2");
        assert_eq!(
            gm_via_macdonald(&a2, &vec![0, 0]).unwrap(),
            gm_formula_zero(&a2)
        );
        let b2 = rs("B2");
        assert_eq!(
            gm_via_macdonald(&b2, &b2.theta_weight()).unwrap(),
            gm_formula_theta(&b2).unwrap()
        );
        let g2 = rs("G2");
        assert_eq!(
            gm_via_macdonald(&g2, &g2.theta_s_weight().unwrap()).unwrap(),
            gm_formula_theta_s(&g2).unwrap()
        );
        // outside the root lattice: unsupported
        assert!(matches!(
            gm_via_macdonald(&b2, &vec![0, 1]),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn three_way_small_types() {
        for label in ["A1", "A2", "B2", "G2"] {
            let r = rs(label);
            assert_eq!(verify_three_way(&r).unwrap(), Vec::<String>::new(), "{label}");
        }
    }

    #[test]
    fn ratio_sum_formulas() {
        for label in ["A1", "A2", "B2", "G2"] {
            let r = rs(label);
            for k in [1, 2] {
                assert!(
                    verify_ratio_sum_formulas(&r, k).unwrap().is_empty(),
                    "{label} k={k}"
                );
            }
        }
    }

    #[test]
    fn lemma_d_instances() {
        let a1 = rs("A1");
        let (l, r) = lemma_d_sum(&a1, -2, 0);
        assert_eq!(l, QtScalar::t_pow(-2));
        assert_eq!(r, QtScalar::t_pow(-2));
        for (label, ke, le) in [("B2", -2i64, 0i64), ("G2", 2, 1), ("C3", -2, 3)] {
            let (l, r) = lemma_d_sum(&rs(label), ke, le);
            assert_eq!(l, r, "{label}");
        }
    }

    #[test]
    fn characters_orthonormal_at_k1() {
        // the chi_lambda are orthonormal for the normalized product at k=1
        for label in ["A2", "B2"] {
            let r = rs(label);
            let doms = crate::macdonald::dominants_leq(&r, &r.theta_weight()).unwrap();
            for (i, lam) in doms.iter().enumerate() {
                let chi_i = weyl_character(&r, lam).unwrap();
                for mu in &doms[..=i] {
                    let chi_j = weyl_character(&r, mu).unwrap();
                    let s = macdonald_product(&r, &chi_i, &chi_j, 1, true).unwrap();
                    let want = if lam == mu {
                        QtScalar::one()
                    } else {
                        QtScalar::zero()
                    };
                    assert_eq!(s, want, "{label} {lam:?} {mu:?}");
                }
            }
        }
    }
}
