//! Weyl characters by the alternant formula and Macdonald polynomials at
//! t = q^{-k/2} by Gram-Schmidt over orbit sums, triangular with respect to
//! dominance order.

use crate::coeff::{QtScalar, Rat};
use crate::groupalg::{orbit_sum, AlgebraElement};
use crate::rootsys::{RootSystem, Weight};
use crate::scalar::macdonald_product;
use crate::wpoly::{key_of, key_to_weight, Key, QPoly, ZqElement};
use crate::{Error, Result};
use num::{BigInt, One, Signed, Zero};
use std::collections::{BinaryHeap, HashMap};

/// Largest |W| for which characters are expanded, overridable via
/// LAMBDAG_MAX_WEYL.
pub fn max_weyl() -> BigInt {
    std::env::var("LAMBDAG_MAX_WEYL")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| BigInt::from(2_000_000u64))
}

/// Height of a weight scaled by the lattice index m, as an integer; the
/// second component makes the pair a strict total order key.
pub fn order_key(rs: &RootSystem, mu: &Weight) -> (i64, Weight) {
    let coords = rs.weight_to_root_coords(mu);
    let m = BigInt::from(rs.index_m);
    let mut h = Rat::zero();
    for c in &coords {
        h += c;
    }
    let scaled = h * Rat::from(m);
    debug_assert!(scaled.is_integer());
    let h: i64 = scaled.to_integer().try_into().expect("height overflow");
    (h, mu.clone())
}

/// Signed orbit of a strictly dominant weight: (w mu, (-1)^{l(w)}).
fn signed_orbit(rs: &RootSystem, mu: &Weight) -> Vec<(Weight, i64)> {
    assert!(mu.iter().all(|&x| x > 0), "weight must be strictly dominant");
    let mut seen: HashMap<Weight, i64> = HashMap::new();
    seen.insert(mu.clone(), 1);
    let mut frontier = vec![mu.clone()];
    while let Some(v) = frontier.pop() {
        let sign = seen[&v];
        for i in 0..rs.rank {
            if v[i] != 0 {
                let w = rs.simple_reflect_weight(i, &v);
                if !seen.contains_key(&w) {
                    seen.insert(w.clone(), -sign);
                    frontier.push(w);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// chi_lambda as an integer element: the alternant
/// sum_w (-1)^{l(w)} e^{w(lambda+rho)-rho} divided exactly by
/// prod_{a>0}(1 - e^{-a}), by leading-term elimination.
pub fn weyl_character_z(rs: &RootSystem, lambda: &Weight) -> Result<ZqElement> {
    if !rs.is_dominant(lambda) {
        return Err(Error::NonDominantWeight(lambda.clone()));
    }
    if rs.weyl_order() > max_weyl() {
        return Err(Error::BudgetExceeded(format!(
            "|W| of {} exceeds the character cap (set LAMBDAG_MAX_WEYL to raise)",
            rs.label
        )));
    }
    let rho = rs.rho();
    let lr: Weight = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
    // denominator prod_{a>0}(1 - e^{-a}) as weight -> integer
    let mut den = ZqElement::one(rs.rank);
    for alpha in &rs.positive_roots {
        let nw: Weight = rs.root_to_weight(alpha).iter().map(|x| -x).collect();
        den.mul_binomial(-1, 0, &nw);
    }
    let den_terms: Vec<(Key, i64)> = den
        .terms
        .iter()
        .map(|(k, p)| (*k, p.coeff(0)))
        .collect();
    // numerator
    let mut rem: HashMap<Key, i64> = HashMap::new();
    let mut heap: BinaryHeap<(i64, Key)> = BinaryHeap::new();
    for (w, sign) in signed_orbit(rs, &lr) {
        let shifted: Weight = w.iter().zip(&rho).map(|(a, b)| a - b).collect();
        let (h, _) = order_key(rs, &shifted);
        let k = key_of(&shifted);
        *rem.entry(k).or_insert(0) += sign;
        heap.push((h, k));
    }
    let mut quot = ZqElement::zero(rs.rank);
    while let Some((_, k)) = heap.pop() {
        let c = *rem.get(&k).unwrap_or(&0);
        if c == 0 {
            continue;
        }
        let mu = key_to_weight(&k, rs.rank);
        quot.terms.insert(k, QPoly::constant(c));
        for (dk, d) in &den_terms {
            let mut nk = k;
            for i in 0..nk.len() {
                nk[i] += dk[i];
            }
            let entry = rem.entry(nk).or_insert(0);
            let was_zero = *entry == 0;
            *entry -= c * d;
            if was_zero && *entry != 0 && nk != k {
                let nu = key_to_weight(&nk, rs.rank);
                let (h, _) = order_key(rs, &nu);
                heap.push((h, nk));
            }
        }
        debug_assert_eq!(*rem.get(&k).unwrap(), 0, "elimination at {mu:?}");
    }
    if rem.values().any(|&c| c != 0) {
        return Err(Error::NonZeroRemainder);
    }
    // independent cross-check: total dimension from the product formula
    let dim = weyl_dim(rs, lambda);
    if BigInt::from(quot.mass()) != dim {
        return Err(Error::NonZeroRemainder);
    }
    Ok(quot)
}

/// chi_lambda with scalar coefficients.
pub fn weyl_character(rs: &RootSystem, lambda: &Weight) -> Result<AlgebraElement> {
    Ok(weyl_character_z(rs, lambda)?.to_algebra())
}

/// dim V(lambda) = prod_{a>0} (lambda+rho, a^vee)/(rho, a^vee).
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for alpha in &rs.positive_roots {
        let av = rs.coroot(alpha);
        let rho_pair: i64 = av.iter().sum();
        let lam_pair: i64 = rs.pair_coroot_weight(&av, lambda) + rho_pair;
        num *= BigInt::from(lam_pair);
        den *= BigInt::from(rho_pair);
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// All dominant mu <= lambda (including lambda), sorted ascending by
/// (height, lex).
pub fn dominants_leq(rs: &RootSystem, lambda: &Weight) -> Result<Vec<Weight>> {
    if !rs.is_dominant(lambda) {
        return Err(Error::NonDominantWeight(lambda.clone()));
    }
    // mu = lambda - sum c_i a_i with c_i >= 0; dominance of mu forces the
    // root coordinates of mu to stay within [0, root coords of lambda]
    let coords = rs.weight_to_root_coords(lambda);
    let mut bounds = Vec::with_capacity(rs.rank);
    for c in &coords {
        if c.is_negative() {
            bounds.push(0i64);
        } else {
            bounds.push(c.floor().to_integer().try_into().unwrap());
        }
    }
    let mut out = Vec::new();
    let mut c = vec![0i64; rs.rank];
    loop {
        let mut mu = lambda.clone();
        for i in 0..rs.rank {
            if c[i] != 0 {
                let aw = rs.root_to_weight(&rs.simple_root(i));
                for j in 0..rs.rank {
                    mu[j] -= c[i] * aw[j];
                }
            }
        }
        if rs.is_dominant(&mu) {
            out.push(mu);
        }
        // odometer over the box
        let mut i = 0;
        loop {
            if i == rs.rank {
                out.sort_by_key(|mu| order_key(rs, mu));
                return Ok(out);
            }
            if c[i] < bounds[i] {
                c[i] += 1;
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct MacdonaldPoly {
    pub lambda: Weight,
    pub k: u32,
    pub expansion: AlgebraElement,
}

impl MacdonaldPoly {
    /// Coefficient of m_mu in the orbit-sum expansion; for dominant mu this
    /// is the coefficient of e^mu.
    pub fn m_coeff(&self, mu: &Weight) -> QtScalar {
        self.expansion.coeff(mu)
    }
}

/// P_lambda at t = q^{-k/2}: Gram-Schmidt of m_lambda against P_mu over the
/// dominant mu < lambda, in (height, lex) order.
pub fn macdonald_poly(rs: &RootSystem, lambda: &Weight, k: u32) -> Result<MacdonaldPoly> {
    let mut below = dominants_leq(rs, lambda)?;
    below.pop(); // lambda itself is last
    let mut basis: Vec<AlgebraElement> = Vec::with_capacity(below.len());
    for mu in &below {
        basis.push(gram_schmidt(rs, mu, k, &below[..], &basis)?);
    }
    let p = gram_schmidt(rs, lambda, k, &below, &basis)?;
    Ok(MacdonaldPoly {
        lambda: lambda.clone(),
        k,
        expansion: p,
    })
}

fn gram_schmidt(
    rs: &RootSystem,
    lambda: &Weight,
    k: u32,
    below: &[Weight],
    basis: &[AlgebraElement],
) -> Result<AlgebraElement> {
    let mut p = orbit_sum(rs, lambda)?;
    for (mu, b) in below.iter().zip(basis) {
        if !rs.dominance_leq(mu, lambda) || mu == lambda {
            continue;
        }
        let num = macdonald_product(rs, &p, b, k, false)?;
        if num.is_zero() {
            continue;
        }
        let den = macdonald_product(rs, b, b, k, false)?;
        let c = num.checked_div(&den)?;
        p = p.sub(&b.scale(&c));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cherednik_ratio;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s).unwrap()
    }

    #[test]
    fn trivial_characters() {
        for label in ["A1", "B2", "G2"] {
            let r = rs(label);
            let zero = vec![0; r.rank];
            assert_eq!(
                weyl_character(&r, &zero).unwrap(),
                AlgebraElement::one(r.rank)
            );
        }
        // A1 adjoint: e^theta + 1 + e^-theta
        let a1 = rs("A1");
        let chi = weyl_character(&a1, &a1.theta_weight()).unwrap();
        let mut want = AlgebraElement::one(1);
        want.add_term(vec![2], &QtScalar::one());
        want.add_term(vec![-2], &QtScalar::one());
        assert_eq!(chi, want);
    }

    #[test]
    fn adjoint_character_is_roots_plus_rank() {
        // chi_theta = r + sum over all roots; for simply-laced types this is
        // m_theta + r
        for label in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"] {
            let r = rs(label);
            let chi = weyl_character(&r, &r.theta_weight()).unwrap();
            let mut want = AlgebraElement::zero();
            for alpha in &r.roots {
                want.add_term(r.root_to_weight(alpha), &QtScalar::one());
            }
            want.add_term(vec![0; r.rank], &QtScalar::int(r.rank as i64));
            assert_eq!(chi, want, "{label}");
            if r.lambda == 1 {
                let mut m = orbit_sum(&r, &r.theta_weight()).unwrap();
                m.add_term(vec![0; r.rank], &QtScalar::int(r.rank as i64));
                assert_eq!(chi, m, "{label}");
            }
        }
    }

    #[test]
    fn short_adjoint_character() {
        // chi_{theta_s} = m_{theta_s} + r_s
        for label in ["B2", "B3", "C3", "G2", "F4"] {
            let r = rs(label);
            let ths = r.theta_s_weight().unwrap();
            let chi = weyl_character(&r, &ths).unwrap();
            let mut want = orbit_sum(&r, &ths).unwrap();
            want.add_term(
                vec![0; r.rank],
                &QtScalar::int(r.exponents.r_short as i64),
            );
            assert_eq!(chi, want, "{label}");
        }
    }

    #[test]
    fn dimension_formula() {
        let cases = [
            ("A2", vec![1, 1], 8),
            ("B2", vec![1, 0], 5),
            ("B2", vec![0, 1], 4),
            ("G2", vec![1, 0], 7),
            ("G2", vec![0, 1], 14),
            ("B3", vec![1, 0, 0], 7),
            ("C3", vec![1, 0, 0], 6),
        ];
        for (label, lam, dim) in cases {
            let r = rs(label);
            assert_eq!(weyl_dim(&r, &lam), BigInt::from(dim), "{label} {lam:?}");
            let chi = weyl_character_z(&r, &lam).unwrap();
            assert_eq!(chi.mass(), dim, "{label} {lam:?}");
        }
    }

    #[test]
    fn character_coefficients_nonnegative() {
        for label in ["B2", "G2", "C3"] {
            let r = rs(label);
            for mu in dominants_leq(&r, &r.theta_weight()).unwrap() {
                let chi = weyl_character_z(&r, &mu).unwrap();
                for p in chi.terms.values() {
                    assert!(p.coeff(0) > 0, "{label} {mu:?}");
                }
            }
        }
    }

    #[test]
    fn dominants_below_theta() {
        // below theta: 0, theta_s (if any), theta
        let b2 = rs("B2");
        assert_eq!(
            dominants_leq(&b2, &b2.theta_weight()).unwrap(),
            vec![vec![0, 0], b2.theta_s_weight().unwrap(), b2.theta_weight()]
        );
        let a2 = rs("A2");
        assert_eq!(
            dominants_leq(&a2, &a2.theta_weight()).unwrap(),
            vec![vec![0, 0], a2.theta_weight()]
        );
        let g2 = rs("G2");
        assert_eq!(
            dominants_leq(&g2, &g2.theta_weight()).unwrap(),
            vec![vec![0, 0], g2.theta_s_weight().unwrap(), g2.theta_weight()]
        );
    }

    #[test]
    fn k0_is_orbit_sum() {
        for label in ["A2", "B2"] {
            let r = rs(label);
            for mu in dominants_leq(&r, &r.theta_weight()).unwrap() {
                let p = macdonald_poly(&r, &mu, 0).unwrap();
                assert_eq!(p.expansion, orbit_sum(&r, &mu).unwrap(), "{label} {mu:?}");
            }
        }
    }

    #[test]
    fn k1_is_weyl_character() {
        for label in ["A1", "A2", "B2", "G2"] {
            let r = rs(label);
            for mu in dominants_leq(&r, &r.theta_weight()).unwrap() {
                let p = macdonald_poly(&r, &mu, 1).unwrap();
                assert_eq!(
                    p.expansion,
                    weyl_character(&r, &mu).unwrap(),
                    "{label} {mu:?}"
                );
            }
        }
    }

    #[test]
    fn k2_short_root_macdonald() {
        // P_{theta_s} = m_{theta_s} - ratio(m_{theta_s}) e^0 with the ratio
        // from the asymmetric product; both products produce the same P
        for label in ["B2", "B3", "C3", "G2"] {
            let r = rs(label);
            let ths = r.theta_s_weight().unwrap();
            let p = macdonald_poly(&r, &ths, 2).unwrap();
            let m = orbit_sum(&r, &ths).unwrap();
            let c = cherednik_ratio(&r, &m, 2).unwrap();
            let mut want = m;
            want.add_term(vec![0; r.rank], &-&c);
            assert_eq!(p.expansion, want, "{label}");
        }
    }

    #[test]
    fn orthogonality() {
        for label in ["A1", "A2", "B2", "G2"] {
            let r = rs(label);
            let doms = dominants_leq(&r, &r.theta_weight()).unwrap();
            for k in [1u32, 2] {
                let polys: Vec<_> = doms
                    .iter()
                    .map(|mu| macdonald_poly(&r, mu, k).unwrap())
                    .collect();
                for i in 0..polys.len() {
                    for j in 0..i {
                        let s = macdonald_product(
                            &r,
                            &polys[i].expansion,
                            &polys[j].expansion,
                            k,
                            false,
                        )
                        .unwrap();
                        assert!(s.is_zero(), "{label} k={k} {i} {j}");
                    }
                }
            }
        }
    }

    #[test]
    fn triangular_with_unit_leading_term() {
        let b2 = rs("B2");
        let theta = b2.theta_weight();
        let p = macdonald_poly(&b2, &theta, 2).unwrap();
        assert_eq!(p.m_coeff(&theta), QtScalar::one());
        for mu in p.expansion.support() {
            assert!(b2.dominance_leq(mu, &theta) || !b2.is_dominant(mu));
        }
    }
}
