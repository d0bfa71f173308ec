//! Dense-in-q, sparse-in-weight arithmetic over Z[q, q^-1] for the heavy
//! character folds (exterior-algebra characters, product kernels).  Weight
//! supports run into the millions for F4, so coefficients here are machine
//! integers rather than the rational-function scalars of `groupalg`.

use crate::coeff::{rat, QtScalar};
use crate::groupalg::AlgebraElement;
use crate::rootsys::Weight;
use crate::{Error, Result};
use std::collections::HashMap;

pub const MAX_RANK: usize = 9;

/// Weight coordinates packed into a fixed-size key.
pub type Key = [i16; MAX_RANK];

pub fn key_of(mu: &[i64]) -> Key {
    let mut k = [0i16; MAX_RANK];
    for (i, &x) in mu.iter().enumerate() {
        k[i] = i16::try_from(x).expect("weight coordinate out of range");
    }
    k
}

pub fn key_to_weight(k: &Key, rank: usize) -> Weight {
    k[..rank].iter().map(|&x| x as i64).collect()
}

fn key_neg(k: &Key) -> Key {
    let mut n = [0i16; MAX_RANK];
    for i in 0..MAX_RANK {
        n[i] = -k[i];
    }
    n
}

/// Laurent polynomial in q with machine-integer coefficients:
/// sum of c[j] q^(lo+j).  Empty c means zero; c is kept trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QPoly {
    pub lo: i64,
    pub c: Vec<i64>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly::default()
    }

    pub fn constant(n: i64) -> QPoly {
        QPoly::monomial(n, 0)
    }

    pub fn monomial(n: i64, e: i64) -> QPoly {
        if n == 0 {
            QPoly::zero()
        } else {
            QPoly { lo: e, c: vec![n] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, e: i64) -> i64 {
        if e < self.lo || e >= self.lo + self.c.len() as i64 {
            0
        } else {
            self.c[(e - self.lo) as usize]
        }
    }

    pub fn degree(&self) -> Option<i64> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.lo + self.c.len() as i64 - 1)
        }
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|&&x| x == 0).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i64;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
    }

    /// self += scale * q^shift * other
    pub fn add_scaled(&mut self, other: &QPoly, shift: i64, scale: i64) {
        if other.is_zero() || scale == 0 {
            return;
        }
        let olo = other.lo + shift;
        let ohi = olo + other.c.len() as i64;
        if self.is_zero() {
            self.lo = olo;
            self.c = other.c.iter().map(|&x| x * scale).collect();
            return;
        }
        let nlo = self.lo.min(olo);
        let nhi = (self.lo + self.c.len() as i64).max(ohi);
        let mut c = vec![0i64; (nhi - nlo) as usize];
        for (j, &x) in self.c.iter().enumerate() {
            c[(self.lo - nlo) as usize + j] = x;
        }
        for (j, &x) in other.c.iter().enumerate() {
            c[(olo - nlo) as usize + j] += x * scale;
        }
        self.lo = nlo;
        self.c = c;
        self.trim();
    }

    /// self += scale * q^shift * a * b (convolution accumulate)
    pub fn add_mul(&mut self, a: &QPoly, b: &QPoly, shift: i64, scale: i64) {
        if a.is_zero() || b.is_zero() || scale == 0 {
            return;
        }
        let plo = a.lo + b.lo + shift;
        let plen = a.c.len() + b.c.len() - 1;
        let nlo = if self.is_zero() { plo } else { self.lo.min(plo) };
        let nhi = if self.is_zero() {
            plo + plen as i64
        } else {
            (self.lo + self.c.len() as i64).max(plo + plen as i64)
        };
        let mut c = vec![0i64; (nhi - nlo) as usize];
        for (j, &x) in self.c.iter().enumerate() {
            c[(self.lo - nlo) as usize + j] = x;
        }
        let base = (plo - nlo) as usize;
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                c[base + i + j] += scale * x * y;
            }
        }
        self.lo = nlo;
        self.c = c;
        self.trim();
    }

    pub fn eval_one(&self) -> i64 {
        self.c.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(move |(j, &x)| (self.lo + j as i64, x))
    }

    pub fn to_scalar(&self) -> QtScalar {
        let mut s = QtScalar::zero();
        for (e, x) in self.iter() {
            s = s + QtScalar::monomial(rat(x), 2 * e, 0);
        }
        s
    }
}

/// An element of Z[q,q^-1][P]: a q-polynomial for each weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZqElement {
    pub rank: usize,
    pub terms: HashMap<Key, QPoly>,
}

impl ZqElement {
    pub fn zero(rank: usize) -> ZqElement {
        ZqElement {
            rank,
            terms: HashMap::new(),
        }
    }

    pub fn one(rank: usize) -> ZqElement {
        let mut e = ZqElement::zero(rank);
        e.terms.insert([0; MAX_RANK], QPoly::constant(1));
        e
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mu: &[i64]) -> QPoly {
        self.terms.get(&key_of(mu)).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> QPoly {
        self.terms.get(&[0; MAX_RANK]).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mu: &[i64], p: &QPoly, shift: i64, scale: i64) {
        let k = key_of(mu);
        let entry = self.terms.entry(k).or_default();
        entry.add_scaled(p, shift, scale);
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// self *= 1 + scale * q^qexp * e^shift, with shift in weight coordinates.
    pub fn mul_binomial(&mut self, scale: i64, qexp: i64, shift: &Weight) {
        let skey = key_of(shift);
        let old = std::mem::take(&mut self.terms);
        let mut new: HashMap<Key, QPoly> = HashMap::with_capacity(old.len() * 2);
        for (k, p) in old {
            let mut k2 = k;
            for i in 0..MAX_RANK {
                k2[i] += skey[i];
            }
            new.entry(k2).or_default().add_scaled(&p, qexp, scale);
            match new.entry(k) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    e.get_mut().add_scaled(&p, 0, 1);
                }
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(p);
                }
            }
        }
        new.retain(|_, p| !p.is_zero());
        self.terms = new;
    }

    /// [self * other]_0 = sum over mu of self_mu * other_{-mu}.
    pub fn dot(&self, other: &ZqElement) -> QPoly {
        let (small, big, flip) = if self.terms.len() <= other.terms.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let mut out = QPoly::zero();
        for (k, p) in &small.terms {
            if let Some(q) = big.terms.get(&key_neg(k)) {
                let _ = flip;
                out.add_mul(p, q, 0, 1);
            }
        }
        out
    }

    /// Total mass: the value at q = 1, e^mu = 1.
    pub fn mass(&self) -> i128 {
        self.terms.values().map(|p| p.eval_one() as i128).sum()
    }

    pub fn to_algebra(&self) -> AlgebraElement {
        let mut f = AlgebraElement::zero();
        for (k, p) in &self.terms {
            f.add_term(key_to_weight(k, self.rank), &p.to_scalar());
        }
        f
    }

    /// Requires every coefficient to be an integer Laurent polynomial in q.
    pub fn from_algebra(rank: usize, f: &AlgebraElement) -> Result<ZqElement> {
        let mut out = ZqElement::zero(rank);
        for (mu, c) in f.iter() {
            let mut p = QPoly::zero();
            for (e, r) in c.to_q_polynomial()? {
                if !r.is_integer() {
                    return Err(Error::NonZeroRemainder);
                }
                let n: i64 = r.to_integer().try_into().map_err(|_| Error::NonZeroRemainder)?;
                p.add_scaled(&QPoly::monomial(n, e), 0, 1);
            }
            if !p.is_zero() {
                out.terms.insert(key_of(mu), p);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    #[test]
    fn qpoly_arithmetic() {
        let mut p = QPoly::monomial(2, 1); // 2q
        p.add_scaled(&QPoly::monomial(3, -1), 0, 1); // + 3q^-1
        assert_eq!(p.coeff(1), 2);
        assert_eq!(p.coeff(-1), 3);
        assert_eq!(p.coeff(0), 0);
        assert_eq!(p.degree(), Some(1));
        p.add_scaled(&QPoly::monomial(2, 1), 0, -1); // cancel the 2q
        assert_eq!(p, QPoly::monomial(3, -1));
        let mut r = QPoly::zero();
        r.add_mul(&QPoly::monomial(3, -1), &QPoly::monomial(5, 2), 1, -1);
        assert_eq!(r, QPoly::monomial(-15, 2));
        assert_eq!(r.eval_one(), -15);
    }

    #[test]
    fn a1_exterior_fold() {
        // (1+q)(1+q e^a)(1+q e^-a): mass 8, constant term 1 + q + q^2 + q^3
        let a1 = RootSystem::new("A1").unwrap();
        let mut f = ZqElement::one(1);
        f.mul_binomial(1, 1, &vec![0]);
        for alpha in &a1.roots {
            f.mul_binomial(1, 1, &a1.root_to_weight(alpha));
        }
        assert_eq!(f.mass(), 8);
        let ct = f.constant_term();
        assert_eq!(ct, QPoly { lo: 0, c: vec![1, 1, 1, 1] });
        assert_eq!(f.coeff(&a1.theta_weight()), QPoly { lo: 1, c: vec![1, 1] });
    }

    #[test]
    fn fold_matches_group_algebra() {
        // cross-check the fast fold against the generic algebra on B2
        let b2 = RootSystem::new("B2").unwrap();
        let mut fast = ZqElement::one(2);
        let mut slow = AlgebraElement::one(2);
        for alpha in &b2.roots {
            let w = b2.root_to_weight(alpha);
            fast.mul_binomial(1, 1, &w);
            let mut bin = AlgebraElement::one(2);
            bin.add_term(w, &QtScalar::q_pow(1));
            slow = slow.mul(&bin);
        }
        assert_eq!(fast.to_algebra(), slow);
        assert_eq!(ZqElement::from_algebra(2, &slow).unwrap(), fast);
        assert_eq!(fast.mass(), 1 << 8);
    }

    #[test]
    fn dot_is_constant_term_of_product() {
        let b2 = RootSystem::new("B2").unwrap();
        let mut f = ZqElement::one(2);
        let mut g = ZqElement::one(2);
        for alpha in &b2.positive_roots {
            let w = b2.root_to_weight(alpha);
            f.mul_binomial(-1, 0, &w);
            g.mul_binomial(-1, 1, &w.iter().map(|x| -x).collect());
        }
        let fg = f.to_algebra().mul(&g.to_algebra());
        assert_eq!(f.dot(&g).to_scalar(), fg.constant_term(2));
    }
}
