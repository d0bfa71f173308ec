//! Reduced irreducible root systems A1..G2: Cartan data, the full root list
//! generated by reflection closure, long/short classification, heights,
//! dominant roots theta and theta_s, exponents, dominance order, Weyl orbits.
//!
//! Conventions.  Simple roots are numbered as in Bourbaki.  Inner product
//! normalized so that (alpha,alpha) = 2 for short roots and 2*Lambda for
//! long ones.  `cartan[i][j] = (alpha_j, alpha_i^vee)`, so a root written in
//! simple-root coordinates beta has (beta, alpha_i^vee) = sum_j
//! cartan[i][j] * beta[j].
//!
//! Three coordinate systems appear throughout the crate:
//! * root coordinates  — integer coefficients over the simple roots (roots,
//!   elements of Q);
//! * fundamental coordinates — pairings with the simple coroots (weights,
//!   elements of P);
//! * coroot coordinates — integer coefficients over the simple coroots
//!   (translations, elements of Q^vee).

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};
use std::collections::{BTreeSet, VecDeque};

use crate::coeff::{rat, Rat};
use crate::{Error, Result};

/// Root in simple-root coordinates.
pub type Root = Vec<i64>;
/// Weight in fundamental-weight coordinates.
pub type Weight = Vec<i64>;
/// Element of the coroot lattice in simple-coroot coordinates.
pub type Coroot = Vec<i64>;

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub struct TypeLabel {
    pub series: Series,
    pub rank: usize,
}

impl TypeLabel {
    pub fn parse(s: &str) -> Result<TypeLabel> {
        let err = || Error::UnknownType(s.to_string());
        let mut chars = s.chars();
        let series = match chars.next().ok_or_else(err)? {
            'A' | 'a' => Series::A,
            'B' | 'b' => Series::B,
            'C' | 'c' => Series::C,
            'D' | 'd' => Series::D,
            'E' | 'e' => Series::E,
            'F' | 'f' => Series::F,
            'G' | 'g' => Series::G,
            _ => return Err(err()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| err())?;
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok || rank > 9 {
            return Err(err());
        }
        Ok(TypeLabel { series, rank })
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.series, Series::A | Series::D | Series::E)
    }
}

impl std::fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = match self.series {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        };
        write!(f, "{}{}", c, self.rank)
    }
}

/// Height multiplicities and the exponents they dualize to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentData {
    /// m_partition[n-1] = number of positive roots of height n.
    pub m_partition: Vec<usize>,
    /// d_1 <= ... <= d_r, the dual partition of m_partition.
    pub exponents: Vec<i64>,
    /// Same data for short positive roots (empty if simply laced).
    pub m_short: Vec<usize>,
    pub short_exponents: Vec<i64>,
    /// Numbers of long and short simple roots.
    pub r_long: usize,
    pub r_short: usize,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub label: TypeLabel,
    pub rank: usize,
    /// cartan[i][j] = (alpha_j, alpha_i^vee)
    pub cartan: Vec<Vec<i64>>,
    /// d_i = (alpha_i, alpha_i)/2, in {1, Lambda}
    pub sym: Vec<i64>,
    /// Squared-length ratio long/short; 1 in the simply-laced case (where it
    /// is really indeterminate: there are no short roots).
    pub lambda: i64,
    /// Exponent of P/Q: smallest m with m*P contained in Q.
    pub index_m: i64,
    pub roots: Vec<Root>,
    pub positive_roots: Vec<Root>,
    pub theta: Root,
    /// None in the simply-laced case.
    pub theta_s: Option<Root>,
    pub exponents: ExponentData,
    /// Inverse of the cartan matrix; column space converts fundamental
    /// coordinates to root coordinates.
    cartan_inv: Vec<Vec<Rat>>,
}

fn dynkin_data(label: TypeLabel) -> (Vec<(usize, usize)>, Vec<i64>, i64) {
    let r = label.rank;
    let path = |n: usize| (0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match label.series {
        Series::A => (path(r), vec![1; r], 1),
        Series::B => {
            let mut d = vec![2; r];
            d[r - 1] = 1;
            (path(r), d, 2)
        }
        Series::C => {
            let mut d = vec![1; r];
            d[r - 1] = 2;
            (path(r), d, 2)
        }
        Series::D => {
            let mut e = path(r - 1);
            e.push((r - 3, r - 1));
            (e, vec![1; r], 1)
        }
        Series::E => {
            // chain 1-3-4-...-r plus the branch 2-4 (Bourbaki)
            let mut e = vec![(0, 2), (1, 3)];
            for i in 2..r - 1 {
                e.push((i, i + 1));
            }
            (e, vec![1; r], 1)
        }
        Series::F => (path(4), vec![2, 2, 1, 1], 2),
        Series::G => (vec![(0, 1)], vec![1, 3], 3),
    }
}

fn invert_rational(a: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        rat(a[i][j])
                    } else if j == n + i {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&i| !m[i][col].is_zero())
            .expect("singular Cartan matrix");
        m.swap(col, piv);
        let inv = m[col][col].clone().recip();
        for x in &mut m[col] {
            *x *= &inv;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..2 * n {
                    let sub = &f * &m[col][j];
                    m[i][j] -= sub;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

impl RootSystem {
    pub fn new(label_str: &str) -> Result<RootSystem> {
        RootSystem::build(TypeLabel::parse(label_str)?)
    }

    pub fn build(label: TypeLabel) -> Result<RootSystem> {
        let r = label.rank;
        let (edges, sym, lambda) = dynkin_data(label);
        // (alpha_i, alpha_j) = -max(d_i, d_j) across an edge
        let mut gram = vec![vec![0i64; r]; r];
        for i in 0..r {
            gram[i][i] = 2 * sym[i];
        }
        for &(i, j) in &edges {
            let v = -sym[i].max(sym[j]);
            gram[i][j] = v;
            gram[j][i] = v;
        }
        // cartan[i][j] = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)
        let mut cartan = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                let num = 2 * gram[i][j];
                assert_eq!(num % (2 * sym[i]), 0, "non-integral Cartan entry");
                cartan[i][j] = num / (2 * sym[i]);
            }
        }
        let cartan_inv = invert_rational(&cartan);
        let mut index_m = BigInt::one();
        for row in &cartan_inv {
            for x in row {
                index_m = num::integer::lcm(index_m, x.denom().clone());
            }
        }
        let index_m = i64::try_from(&index_m).expect("index fits i64");

        // reflection closure of the simple roots
        let mut seen: BTreeSet<Root> = BTreeSet::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for i in 0..r {
            let mut a = vec![0i64; r];
            a[i] = 1;
            seen.insert(a.clone());
            queue.push_back(a);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..r {
                let mut c = b.clone();
                let pairing: i64 = (0..r).map(|j| cartan[i][j] * b[j]).sum();
                c[i] -= pairing;
                if seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        for b in seen.clone() {
            seen.insert(b.iter().map(|x| -x).collect());
        }
        let roots: Vec<Root> = seen.into_iter().collect();
        let positive_roots: Vec<Root> = roots
            .iter()
            .filter(|b| b.iter().all(|&x| x >= 0))
            .cloned()
            .collect();
        assert_eq!(roots.len(), 2 * positive_roots.len());

        let norm2 = |b: &Root| -> i64 {
            let mut s = 0;
            for i in 0..r {
                for j in 0..r {
                    s += b[i] * b[j] * gram[i][j];
                }
            }
            s
        };
        let dominant = |b: &Root| -> bool {
            (0..r).all(|i| (0..r).map(|j| cartan[i][j] * b[j]).sum::<i64>() >= 0)
        };
        let theta = positive_roots
            .iter()
            .filter(|b| dominant(b) && norm2(b) == 2 * lambda)
            .max_by_key(|b| b.iter().sum::<i64>())
            .expect("highest root exists")
            .clone();
        let theta_s = if label.is_simply_laced() {
            None
        } else {
            Some(
                positive_roots
                    .iter()
                    .filter(|b| dominant(b) && norm2(b) == 2)
                    .max_by_key(|b| b.iter().sum::<i64>())
                    .expect("highest short root exists")
                    .clone(),
            )
        };

        let exponents = compute_exponents(&positive_roots, &sym, r);

        Ok(RootSystem {
            label,
            rank: r,
            cartan,
            sym,
            lambda,
            index_m,
            roots,
            positive_roots,
            theta,
            theta_s,
            exponents,
            cartan_inv,
        })
    }

    pub fn norm2(&self, b: &Root) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                // (alpha_i, alpha_j) = cartan[j][i] * d_j
                s += b[i] * b[j] * self.cartan[j][i] * self.sym[j];
            }
        }
        s
    }

    /// True for genuinely short roots; always false in the simply-laced
    /// case, where R_s is empty.
    pub fn is_short(&self, b: &Root) -> bool {
        self.lambda > 1 && self.norm2(b) == 2
    }

    pub fn is_long(&self, b: &Root) -> bool {
        self.norm2(b) == 2 * self.lambda
    }

    /// (ht, ht_l, ht_s)
    pub fn heights(&self, b: &Root) -> (i64, i64, i64) {
        let mut hl = 0;
        let mut hs = 0;
        for i in 0..self.rank {
            if self.sym[i] == self.lambda && self.lambda > 1 {
                hl += b[i];
            } else {
                hs += b[i];
            }
        }
        // simply laced: every simple root counts as long, ht_s = 0
        if self.lambda == 1 {
            return (hl + hs, hl + hs, 0);
        }
        (hl + hs, hl, hs)
    }

    pub fn height(&self, b: &Root) -> i64 {
        b.iter().sum()
    }

    /// Coroot of a root, in simple-coroot coordinates (always integral).
    pub fn coroot(&self, b: &Root) -> Coroot {
        let n = self.norm2(b);
        (0..self.rank)
            .map(|i| {
                let num = 2 * b[i] * self.sym[i];
                assert_eq!(num % n, 0, "non-integral coroot coordinate");
                num / n
            })
            .collect()
    }

    /// Root coordinates -> fundamental coordinates.
    pub fn root_to_weight(&self, b: &Root) -> Weight {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.cartan[i][j] * b[j]).sum())
            .collect()
    }

    /// Fundamental coordinates -> rational root coordinates.
    pub fn weight_to_root_coords(&self, mu: &Weight) -> Vec<Rat> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| &self.cartan_inv[i][j] * rat(mu[j]))
                    .sum()
            })
            .collect()
    }

    /// Fundamental coordinates -> integer root coordinates, if mu is in Q.
    pub fn weight_to_root_lattice(&self, mu: &Weight) -> Option<Root> {
        let rc = self.weight_to_root_coords(mu);
        let mut out = Vec::with_capacity(self.rank);
        for x in rc {
            if !x.denom().is_one() {
                return None;
            }
            out.push(i64::try_from(x.numer()).ok()?);
        }
        Some(out)
    }

    /// Pairing (mu, alpha^vee) for a root alpha.
    pub fn pair_weight_coroot_of_root(&self, mu: &Weight, alpha: &Root) -> i64 {
        let av = self.coroot(alpha);
        (0..self.rank).map(|i| mu[i] * av[i]).sum()
    }

    /// Pairing (lambda, mu) for lambda in coroot coordinates, mu in
    /// fundamental coordinates.
    pub fn pair_coroot_weight(&self, lambda: &Coroot, mu: &Weight) -> i64 {
        (0..self.rank).map(|i| lambda[i] * mu[i]).sum()
    }

    pub fn simple_reflect_root(&self, i: usize, b: &Root) -> Root {
        let mut c = b.clone();
        let pairing: i64 = (0..self.rank).map(|j| self.cartan[i][j] * b[j]).sum();
        c[i] -= pairing;
        c
    }

    pub fn simple_reflect_weight(&self, i: usize, mu: &Weight) -> Weight {
        (0..self.rank)
            .map(|j| mu[j] - self.cartan[j][i] * mu[i])
            .collect()
    }

    pub fn simple_reflect_coroot(&self, i: usize, l: &Coroot) -> Coroot {
        let mut c = l.to_vec();
        let pairing: i64 = (0..self.rank).map(|k| self.cartan[k][i] * l[k]).sum();
        c[i] -= pairing;
        c
    }

    pub fn is_dominant(&self, mu: &Weight) -> bool {
        mu.iter().all(|&x| x >= 0)
    }

    /// lambda <= mu in the dominance order: mu - lambda in Q^+.
    pub fn dominance_leq(&self, lambda: &Weight, mu: &Weight) -> bool {
        let diff: Weight = (0..self.rank).map(|i| mu[i] - lambda[i]).collect();
        match self.weight_to_root_lattice(&diff) {
            Some(rc) => rc.iter().all(|&x| x >= 0),
            None => false,
        }
    }

    /// The Weyl orbit of a weight, by closure under simple reflections.
    pub fn weyl_orbit(&self, mu: &Weight) -> Vec<Weight> {
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(mu.clone());
        queue.push_back(mu.clone());
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank {
                let w = self.simple_reflect_weight(i, &v);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// |W| = product of (d_i + 1).
    pub fn weyl_order(&self) -> BigInt {
        self.exponents
            .exponents
            .iter()
            .map(|&d| BigInt::from(d + 1))
            .product()
    }

    /// rho = sum of fundamental weights.
    pub fn rho(&self) -> Weight {
        vec![1; self.rank]
    }

    pub fn theta_weight(&self) -> Weight {
        self.root_to_weight(&self.theta)
    }

    pub fn theta_s_weight(&self) -> Result<Weight> {
        self.theta_s
            .as_ref()
            .map(|t| self.root_to_weight(t))
            .ok_or_else(|| Error::SimplyLaced(self.label.to_string()))
    }

    pub fn theta_coroot(&self) -> Coroot {
        self.coroot(&self.theta)
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut a = vec![0; self.rank];
        a[i] = 1;
        a
    }

    pub fn long_positive_roots(&self) -> Vec<Root> {
        self.positive_roots
            .iter()
            .filter(|b| self.is_long(b))
            .cloned()
            .collect()
    }

    pub fn short_positive_roots(&self) -> Vec<Root> {
        if self.lambda == 1 {
            return vec![];
        }
        self.positive_roots
            .iter()
            .filter(|b| self.is_short(b))
            .cloned()
            .collect()
    }
}

fn dual_partition(m: &[usize], r: usize) -> Vec<i64> {
    // d_i = #{n : m(n) >= r + 1 - i}, i = 1..r
    (1..=r)
        .map(|i| m.iter().filter(|&&c| c >= r + 1 - i).count() as i64)
        .collect()
}

fn compute_exponents(positive: &[Root], sym: &[i64], r: usize) -> ExponentData {
    let lambda = *sym.iter().max().unwrap();
    let simply_laced = sym.iter().all(|&d| d == lambda) || lambda == 1;
    let ht = |b: &Root| b.iter().sum::<i64>() as usize;
    let max_h = positive.iter().map(|b| ht(b)).max().unwrap_or(0);
    let mut m_partition = vec![0usize; max_h];
    for b in positive {
        m_partition[ht(b) - 1] += 1;
    }
    let exponents = dual_partition(&m_partition, r);
    // short-root data needs norms, so it is filled in by exponent_data()
    let (r_long, r_short) = if simply_laced {
        (r, 0)
    } else {
        let r_short = sym.iter().filter(|&&d| d == 1).count();
        (r - r_short, r_short)
    };
    let mut data = ExponentData {
        m_partition,
        exponents,
        m_short: vec![],
        short_exponents: vec![],
        r_long,
        r_short,
    };
    data.exponents.sort();
    data
}

impl RootSystem {
    /// Recompute the short-root exponent data (needs norms, hence done after
    /// construction).
    pub fn exponent_data(&self) -> ExponentData {
        let mut data = self.exponents.clone();
        if self.lambda == 1 {
            return data;
        }
        let shorts = self.short_positive_roots();
        let max_h = shorts.iter().map(|b| self.height(b)).max().unwrap_or(0) as usize;
        let mut m_short = vec![0usize; max_h];
        for b in &shorts {
            m_short[self.height(b) as usize - 1] += 1;
        }
        let mut short_exponents = dual_partition(&m_short, data.r_short);
        short_exponents.sort();
        data.m_short = m_short;
        data.short_exponents = short_exponents;
        data
    }
}

// Orbit sums and WeightVector plumbing live in groupalg; BigRational helpers:
pub fn rational_coords_nonneg_integers(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.denom().is_one() && !x.numer().is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s).unwrap()
    }

    #[test]
    fn unknown_labels_rejected() {
        for bad in ["H3", "E9", "F5", "G3", "B1", "D2", "", "A0", "Q4"] {
            assert!(RootSystem::new(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn root_counts_match_classification() {
        let expect = [
            ("A1", 2),
            ("A2", 6),
            ("A3", 12),
            ("A4", 20),
            ("B2", 8),
            ("B3", 18),
            ("B4", 32),
            ("C3", 18),
            ("C4", 32),
            ("D4", 24),
            ("D5", 40),
            ("E6", 72),
            ("F4", 48),
            ("G2", 12),
        ];
        for (label, n) in expect {
            let r = rs(label);
            assert_eq!(r.roots.len(), n, "{label}");
            assert_eq!(r.positive_roots.len(), n / 2, "{label}");
        }
    }

    #[test]
    fn g2_dominant_roots() {
        let g2 = rs("G2");
        assert_eq!(g2.theta, vec![3, 2]);
        assert_eq!(g2.theta_s, Some(vec![2, 1]));
        assert_eq!(g2.sym, vec![1, 3]);
        assert_eq!(g2.lambda, 3);
    }

    #[test]
    fn a1_roots() {
        let a1 = rs("A1");
        assert_eq!(a1.roots, vec![vec![-1], vec![1]]);
        assert_eq!(a1.theta, vec![1]);
        assert!(a1.theta_s.is_none());
        assert!(matches!(
            a1.theta_s_weight(),
            Err(Error::SimplyLaced(_))
        ));
    }

    #[test]
    fn b2_dominant_roots() {
        let b2 = rs("B2");
        assert_eq!(b2.roots.len(), 8);
        assert_eq!(b2.theta, vec![1, 2]);
        assert_eq!(b2.theta_s, Some(vec![1, 1]));
        assert_eq!(b2.coroot(&b2.theta), vec![1, 1]);
    }

    #[test]
    fn heights_examples() {
        let g2 = rs("G2");
        assert_eq!(g2.heights(&g2.theta), (5, 2, 3));
        assert_eq!(g2.heights(&vec![1, 0]), (1, 0, 1));
        assert_eq!(g2.heights(&vec![0, 1]), (1, 1, 0));
        let b2 = rs("B2");
        assert_eq!(b2.heights(&vec![1, 1]), (2, 1, 1));
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(rs("G2").exponents.exponents, vec![1, 5]);
        assert_eq!(rs("A1").exponents.exponents, vec![1]);
        let b2 = rs("B2");
        assert_eq!(b2.exponents.exponents, vec![1, 3]);
        assert_eq!(b2.exponent_data().short_exponents, vec![2]);
        assert_eq!(rs("F4").exponents.exponents, vec![1, 5, 7, 11]);
        assert_eq!(rs("D4").exponents.exponents, vec![1, 3, 3, 5]);
    }

    #[test]
    fn exponent_identities_all_types() {
        for label in [
            "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "E6", "F4", "G2",
        ] {
            let r = rs(label);
            let d = &r.exponents.exponents;
            let n = d.len();
            assert_eq!(d[0], 1, "{label}");
            assert_eq!(d[n - 1], r.height(&r.theta), "{label}");
            for i in 0..n {
                assert_eq!(d[i] + d[n - 1 - i], d[n - 1] + 1, "{label}");
            }
            let sum: i64 = d.iter().sum();
            assert_eq!(sum as usize, r.positive_roots.len(), "{label}");
        }
    }

    #[test]
    fn short_exponents_arithmetic_progression() {
        for label in ["B2", "B3", "B4", "C3", "C4", "F4", "G2"] {
            let r = rs(label);
            let data = r.exponent_data();
            let d_r = *r.exponents.exponents.last().unwrap();
            let (rl, rsh) = (data.r_long as i64, data.r_short as i64);
            for (i, &ds) in data.short_exponents.iter().enumerate() {
                let i = i as i64 + 1;
                assert_eq!(ds, (d_r + 1) / 2 + (2 * i - 1 - rsh) * rl, "{label} i={i}");
            }
        }
    }

    #[test]
    fn weyl_order_known_values() {
        for (label, order) in [
            ("A1", 2i64),
            ("A2", 6),
            ("A3", 24),
            ("B2", 8),
            ("B3", 48),
            ("C3", 48),
            ("D4", 192),
            ("F4", 1152),
            ("G2", 12),
            ("E6", 51840),
        ] {
            assert_eq!(rs(label).weyl_order(), BigInt::from(order), "{label}");
        }
    }

    #[test]
    fn index_m_values() {
        assert_eq!(rs("A1").index_m, 2);
        assert_eq!(rs("A2").index_m, 3);
        assert_eq!(rs("A3").index_m, 4);
        assert_eq!(rs("B3").index_m, 2);
        assert_eq!(rs("D4").index_m, 2);
        assert_eq!(rs("E6").index_m, 3);
        assert_eq!(rs("F4").index_m, 1);
        assert_eq!(rs("G2").index_m, 1);
    }

    #[test]
    fn roots_closed_and_classified() {
        for label in ["A2", "B2", "B3", "C3", "D4", "F4", "G2"] {
            let r = rs(label);
            let set: BTreeSet<Root> = r.roots.iter().cloned().collect();
            for b in &r.roots {
                let neg: Root = b.iter().map(|x| -x).collect();
                assert!(set.contains(&neg));
                for i in 0..r.rank {
                    assert!(set.contains(&r.simple_reflect_root(i, b)), "{label}");
                }
                let n = r.norm2(b);
                assert!(n == 2 || n == 2 * r.lambda, "{label} {b:?} norm {n}");
            }
            // each W-orbit meets the dominant cone exactly once
            let dominants: Vec<&Root> = r
                .roots
                .iter()
                .filter(|b| r.is_dominant(&r.root_to_weight(b)))
                .collect();
            let expected = if r.lambda == 1 { 1 } else { 2 };
            assert_eq!(dominants.len(), expected, "{label}");
        }
    }

    #[test]
    fn dominance_examples() {
        for label in ["A1", "B2", "G2", "D4"] {
            let r = rs(label);
            let zero = vec![0; r.rank];
            let th = r.theta_weight();
            assert!(r.dominance_leq(&zero, &th), "{label}");
            assert!(!r.dominance_leq(&th, &zero), "{label}");
        }
        let b2 = rs("B2");
        let th = b2.theta_weight();
        let ths = b2.theta_s_weight().unwrap();
        assert!(b2.dominance_leq(&ths, &th));
        assert!(!b2.dominance_leq(&th, &ths));
    }

    #[test]
    fn weyl_orbit_examples() {
        let a1 = rs("A1");
        assert_eq!(a1.weyl_orbit(&vec![1]), vec![vec![-1], vec![1]]);
        assert_eq!(a1.weyl_orbit(&vec![0]), vec![vec![0]]);
        let g2 = rs("G2");
        let orbit = g2.weyl_orbit(&g2.theta_weight());
        assert_eq!(orbit.len(), 6);
        let long_weights: BTreeSet<Weight> = g2
            .long_positive_roots()
            .iter()
            .flat_map(|b| {
                let neg: Root = b.iter().map(|x| -x).collect();
                [g2.root_to_weight(b), g2.root_to_weight(&neg)]
            })
            .collect();
        assert_eq!(orbit.into_iter().collect::<BTreeSet<_>>(), long_weights);
        // regular dominant weight has full orbit
        let b2 = rs("B2");
        assert_eq!(b2.weyl_orbit(&vec![1, 1]).len(), 8);
    }

    #[test]
    fn coroot_integrality_and_pairings() {
        for label in ["B2", "B3", "C3", "F4", "G2", "A3", "D4"] {
            let r = rs(label);
            for b in &r.roots {
                let bv = r.coroot(b);
                // (b, b^vee) = 2
                let bw = r.root_to_weight(b);
                assert_eq!(r.pair_coroot_weight(&bv, &bw), 2, "{label}");
            }
        }
    }

    #[test]
    fn lemma_short_root_long_height() {
        // short alpha, (alpha,theta^vee) != 0, Lambda*alpha - theta a positive
        // root  =>  ht_l alpha = (ht_l theta + 1)/Lambda
        for label in ["B2", "B3", "B4", "C3", "C4", "F4", "G2"] {
            let r = rs(label);
            let tv = r.theta_coroot();
            let set: BTreeSet<Root> = r.positive_roots.iter().cloned().collect();
            let l = r.lambda;
            let (_, hl_theta, _) = r.heights(&r.theta);
            let mut found = 0;
            for a in r.roots.iter().filter(|a| r.is_short(a)) {
                let aw = r.root_to_weight(a);
                if r.pair_coroot_weight(&tv, &aw) == 0 {
                    continue;
                }
                let cand: Root = (0..r.rank).map(|i| l * a[i] - r.theta[i]).collect();
                if !set.contains(&cand) {
                    continue;
                }
                found += 1;
                let (_, hl, _) = r.heights(a);
                assert_eq!(hl * l, hl_theta + 1, "{label} {a:?}");
            }
            assert!(found > 0, "{label}: lemma domain empty");
        }
    }

    #[test]
    fn lemma_positive_pairing() {
        // beta long; alpha short, gamma arbitrary with (alpha,beta^vee)>0 and
        // (gamma,beta^vee)>0  =>  (gamma,alpha^vee)>=0, strict when gamma is
        // short and alpha+gamma != beta
        for label in ["B2", "B3", "C3", "F4", "G2"] {
            let r = rs(label);
            for beta in r.roots.iter().filter(|b| r.is_long(b)) {
                let bv = r.coroot(beta);
                for alpha in r.roots.iter().filter(|a| r.is_short(a)) {
                    let aw = r.root_to_weight(alpha);
                    if r.pair_coroot_weight(&bv, &aw) <= 0 {
                        continue;
                    }
                    let av = r.coroot(alpha);
                    for gamma in &r.roots {
                        let gw = r.root_to_weight(gamma);
                        if r.pair_coroot_weight(&bv, &gw) <= 0 {
                            continue;
                        }
                        let p = r.pair_coroot_weight(&av, &gw);
                        assert!(p >= 0, "{label}");
                        let sum: Root =
                            (0..r.rank).map(|i| alpha[i] + gamma[i]).collect();
                        if r.is_short(gamma) && sum != *beta {
                            assert!(p > 0, "{label}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lemma_theta_s_height() {
        // ht theta_s = (L-1)/2 + S  (holds when Lambda = 2, i.e. not G2)
        for label in ["B2", "B3", "B4", "C3", "C4", "F4"] {
            let r = rs(label);
            let (_, big_l, big_s) = r.heights(&r.theta);
            let ths = r.theta_s.clone().unwrap();
            assert_eq!(2 * r.height(&ths), big_l - 1 + 2 * big_s, "{label}");
        }
    }
}
