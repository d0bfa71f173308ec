//! Finite and affine Weyl groups: elements in normal form w*tau(lambda),
//! actions on roots/weights/affine roots, inversion sets S(w), reduced words,
//! and the symmetric reduced decomposition of s_theta with its chain of
//! positive roots alpha^(-p)..alpha^(p).

use crate::rootsys::{Coroot, Root, RootSystem, Weight};
use crate::{Error, Result};

/// Small square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    n: usize,
    a: Vec<i64>,
}

impl Mat {
    pub fn identity(n: usize) -> Mat {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        Mat { n, a }
    }

    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat {
            n,
            a: vec![0; n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let x = self.at(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += x * other.at(k, j);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j) * v[j]).sum())
            .collect()
    }
}

/// Finite Weyl group element.  Stores its action (and the inverse action) in
/// all three coordinate systems as integer matrices, so composition and
/// application never leave the integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElem {
    pub root_mat: Mat,
    pub root_inv: Mat,
    pub weight_mat: Mat,
    pub weight_inv: Mat,
    pub coroot_mat: Mat,
    pub coroot_inv: Mat,
}

impl WeylElem {
    pub fn identity(rs: &RootSystem) -> WeylElem {
        let id = Mat::identity(rs.rank);
        WeylElem {
            root_mat: id.clone(),
            root_inv: id.clone(),
            weight_mat: id.clone(),
            weight_inv: id.clone(),
            coroot_mat: id.clone(),
            coroot_inv: id,
        }
    }

    pub fn simple(rs: &RootSystem, i: usize) -> WeylElem {
        let n = rs.rank;
        let mut root = Mat::identity(n);
        let mut weight = Mat::identity(n);
        let mut coroot = Mat::identity(n);
        // root coords:   (s_i b)_i = b_i - sum_j cartan[i][j] b_j
        // fund coords:   (s_i mu)_j = mu_j - cartan[j][i] mu_i
        // coroot coords: (s_i l)_i = l_i - sum_k cartan[k][i] l_k
        for j in 0..n {
            root.set(i, j, root.at(i, j) - rs.cartan[i][j]);
            weight.set(j, i, weight.at(j, i) - rs.cartan[j][i]);
            coroot.set(i, j, coroot.at(i, j) - rs.cartan[j][i]);
        }
        WeylElem {
            root_inv: root.clone(),
            root_mat: root,
            weight_inv: weight.clone(),
            weight_mat: weight,
            coroot_inv: coroot.clone(),
            coroot_mat: coroot,
        }
    }

    /// Reflection in an arbitrary root beta.
    pub fn reflection(rs: &RootSystem, beta: &Root) -> WeylElem {
        let n = rs.rank;
        let bv = rs.coroot(beta);
        // root coords: x -> x - (x, beta^vee) beta; (x,beta^vee) = sum_j x_j (alpha_j, beta^vee)
        let mut root = Mat::identity(n);
        let mut weight = Mat::identity(n);
        let mut coroot = Mat::identity(n);
        let beta_w = rs.root_to_weight(beta);
        for j in 0..n {
            // (alpha_j, beta^vee) = j-th root coordinate pairing
            let aj = rs.simple_root(j);
            let ajw = rs.root_to_weight(&aj);
            let pj = rs.pair_coroot_weight(&bv, &ajw);
            for i in 0..n {
                root.set(i, j, root.at(i, j) - pj * beta[i]);
            }
            // weights: mu -> mu - (mu, beta^vee) beta; fund coords of beta = beta_w
            for i in 0..n {
                weight.set(i, j, weight.at(i, j) - beta_w[i] * bv[j]);
            }
            // coroots: l -> l - (beta, l) beta^vee; (beta, alpha_j^vee) = beta_w[j]
            for i in 0..n {
                coroot.set(i, j, coroot.at(i, j) - bv[i] * beta_w[j]);
            }
        }
        WeylElem {
            root_inv: root.clone(),
            root_mat: root,
            weight_inv: weight.clone(),
            weight_mat: weight,
            coroot_inv: coroot.clone(),
            coroot_mat: coroot,
        }
    }

    pub fn compose(&self, other: &WeylElem) -> WeylElem {
        WeylElem {
            root_mat: self.root_mat.mul(&other.root_mat),
            root_inv: other.root_inv.mul(&self.root_inv),
            weight_mat: self.weight_mat.mul(&other.weight_mat),
            weight_inv: other.weight_inv.mul(&self.weight_inv),
            coroot_mat: self.coroot_mat.mul(&other.coroot_mat),
            coroot_inv: other.coroot_inv.mul(&self.coroot_inv),
        }
    }

    pub fn inverse(&self) -> WeylElem {
        WeylElem {
            root_mat: self.root_inv.clone(),
            root_inv: self.root_mat.clone(),
            weight_mat: self.weight_inv.clone(),
            weight_inv: self.weight_mat.clone(),
            coroot_mat: self.coroot_inv.clone(),
            coroot_inv: self.coroot_mat.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.root_mat == Mat::identity(self.root_mat.n)
    }

    /// Product of simple reflections, word read left to right.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> WeylElem {
        word.iter().fold(WeylElem::identity(rs), |acc, &i| {
            acc.compose(&WeylElem::simple(rs, i))
        })
    }

    pub fn act_root(&self, b: &Root) -> Root {
        self.root_mat.apply(b)
    }

    pub fn act_weight(&self, mu: &Weight) -> Weight {
        self.weight_mat.apply(mu)
    }

    pub fn act_coroot(&self, l: &Coroot) -> Coroot {
        self.coroot_mat.apply(l)
    }

    /// Length = number of positive roots made negative.
    pub fn length(&self, rs: &RootSystem) -> usize {
        rs.positive_roots
            .iter()
            .filter(|b| self.act_root(b).iter().sum::<i64>() < 0)
            .count()
    }

    /// Reduced word (left to right) by greedy descent.
    pub fn reduced_word(&self, rs: &RootSystem) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::new();
        loop {
            let mut found = None;
            for i in 0..rs.rank {
                if w.act_root(&rs.simple_root(i)).iter().sum::<i64>() < 0 {
                    found = Some(i);
                    break;
                }
            }
            match found {
                Some(i) => {
                    rev.push(i);
                    w = w.compose(&WeylElem::simple(rs, i));
                }
                None => break,
            }
        }
        debug_assert!(w.is_identity());
        rev.reverse();
        rev
    }
}

/// alpha + n*delta.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct AffineRoot {
    pub finite: Root,
    pub level: i64,
}

impl AffineRoot {
    pub fn finite(alpha: Root) -> AffineRoot {
        AffineRoot {
            finite: alpha,
            level: 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.level > 0 || (self.level == 0 && self.finite.iter().sum::<i64>() > 0)
    }

    pub fn negated(&self) -> AffineRoot {
        AffineRoot {
            finite: self.finite.iter().map(|x| -x).collect(),
            level: -self.level,
        }
    }
}

/// Element of the affine Weyl group in normal form w * tau(lambda),
/// lambda in the coroot lattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffElem {
    pub finite: WeylElem,
    pub translation: Coroot,
}

impl AffElem {
    pub fn identity(rs: &RootSystem) -> AffElem {
        AffElem {
            finite: WeylElem::identity(rs),
            translation: vec![0; rs.rank],
        }
    }

    pub fn from_finite(w: WeylElem, rs: &RootSystem) -> AffElem {
        AffElem {
            finite: w,
            translation: vec![0; rs.rank],
        }
    }

    pub fn translation(rs: &RootSystem, lambda: Coroot) -> AffElem {
        AffElem {
            finite: WeylElem::identity(rs),
            translation: lambda,
        }
    }

    /// s_0 = s_{-theta+delta} = s_theta * tau(-theta^vee).
    pub fn s_zero(rs: &RootSystem) -> AffElem {
        let s_theta = WeylElem::reflection(rs, &rs.theta);
        let tv = rs.theta_coroot();
        AffElem {
            finite: s_theta,
            translation: tv.iter().map(|x| -x).collect(),
        }
    }

    /// Simple affine reflection; i = 0 is s_0, i = 1..r the finite ones.
    pub fn simple(rs: &RootSystem, i: usize) -> AffElem {
        if i == 0 {
            AffElem::s_zero(rs)
        } else {
            AffElem::from_finite(WeylElem::simple(rs, i - 1), rs)
        }
    }

    /// (w1 tau(l1)) (w2 tau(l2)) = (w1 w2) tau(w2^{-1} l1 + l2)
    pub fn compose(&self, other: &AffElem) -> AffElem {
        let moved = other.finite.inverse().act_coroot(&self.translation);
        AffElem {
            finite: self.finite.compose(&other.finite),
            translation: moved
                .iter()
                .zip(&other.translation)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn inverse(&self) -> AffElem {
        // (w tau(l))^{-1} = tau(-l) w^{-1} = w^{-1} tau(-w l)
        let w_inv = self.finite.inverse();
        let moved = self.finite.act_coroot(&self.translation);
        AffElem {
            finite: w_inv,
            translation: moved.iter().map(|x| -x).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.finite.is_identity() && self.translation.iter().all(|&x| x == 0)
    }

    /// Word over {0..=r} read left to right (0 is the affine letter).
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> AffElem {
        word.iter().fold(AffElem::identity(rs), |acc, &i| {
            acc.compose(&AffElem::simple(rs, i))
        })
    }

    /// w tau(lambda) (y + n delta) = w y + (n - (lambda, y)) delta.
    pub fn act_affine_root(&self, rs: &RootSystem, a: &AffineRoot) -> AffineRoot {
        let yw = rs.root_to_weight(&a.finite);
        let pairing = rs.pair_coroot_weight(&self.translation, &yw);
        AffineRoot {
            finite: self.finite.act_root(&a.finite),
            level: a.level - pairing,
        }
    }

    /// The simple affine root alpha_i (alpha_0 = -theta + delta).
    pub fn simple_affine_root(rs: &RootSystem, i: usize) -> AffineRoot {
        if i == 0 {
            AffineRoot {
                finite: rs.theta.iter().map(|x| -x).collect(),
                level: 1,
            }
        } else {
            AffineRoot::finite(rs.simple_root(i - 1))
        }
    }

    /// S(w) = positive affine roots made negative by w; |S(w)| = length.
    pub fn inversion_set(&self, rs: &RootSystem) -> Vec<AffineRoot> {
        let mut out = Vec::new();
        for alpha in &rs.roots {
            let aw = rs.root_to_weight(alpha);
            let pairing = rs.pair_coroot_weight(&self.translation, &aw);
            let n_min = if alpha.iter().sum::<i64>() > 0 { 0 } else { 1 };
            // image level = n - pairing; negative levels are negative roots,
            // level 0 is negative iff the finite image is
            let img_neg_at_eq = self.finite.act_root(alpha).iter().sum::<i64>() < 0;
            let n_max = if img_neg_at_eq { pairing } else { pairing - 1 };
            for n in n_min..=n_max {
                out.push(AffineRoot {
                    finite: alpha.clone(),
                    level: n,
                });
            }
        }
        out.sort();
        out
    }

    pub fn length(&self, rs: &RootSystem) -> usize {
        self.inversion_set(rs).len()
    }

    /// Reduced word over {0..=r} by greedy descent; errors if the element is
    /// not in W^a (never happens for coroot-lattice translations).
    pub fn reduced_word(&self, rs: &RootSystem) -> Result<Vec<usize>> {
        let mut w = self.clone();
        let mut len = w.length(rs);
        let mut rev = Vec::new();
        while len > 0 {
            let mut found = None;
            for i in 0..=rs.rank {
                let ai = AffElem::simple_affine_root(rs, i);
                if !w.act_affine_root(rs, &ai).is_positive() {
                    found = Some(i);
                    break;
                }
            }
            let i = found.ok_or(Error::NotInAffineWeylGroup)?;
            rev.push(i);
            w = w.compose(&AffElem::simple(rs, i));
            let new_len = w.length(rs);
            if new_len + 1 != len {
                return Err(Error::NotInAffineWeylGroup);
            }
            len = new_len;
        }
        if !w.is_identity() {
            return Err(Error::NotInAffineWeylGroup);
        }
        rev.reverse();
        Ok(rev)
    }
}

/// The symmetric reduced decomposition of s_theta and its root chain.
#[derive(Clone, Debug)]
pub struct RootChain {
    pub p: i64,
    /// letters[k] = j_{k-p}; palindromic (j_{-i} = j_i), 0-based simple
    /// root indices.  The word of s_theta reads s_{j_p} ... s_{j_{-p}}.
    pub letters: Vec<usize>,
    /// chain[k] = alpha^(k-p) = s_{j_{-p}} ... s_{j_{k-p-1}} alpha_{j_{k-p}}.
    pub chain: Vec<Root>,
}

impl RootChain {
    pub fn letter(&self, i: i64) -> usize {
        self.letters[(i + self.p) as usize]
    }

    pub fn alpha(&self, i: i64) -> &Root {
        &self.chain[(i + self.p) as usize]
    }

    /// Word of s_theta read left to right: s_{j_p} ... s_{j_{-p}}.
    pub fn word(&self) -> Vec<usize> {
        self.letters.iter().rev().cloned().collect()
    }
}

/// Shortest w with w(theta) simple, by greedy descent (lowest index first);
/// returns (descent steps i_1..i_m applied to theta in order, final simple
/// index j_0).
fn descend_theta(rs: &RootSystem) -> (Vec<usize>, usize) {
    let mut current = rs.theta.clone();
    let mut steps = Vec::new();
    loop {
        if let Some(j0) = (0..rs.rank).find(|&j| current == rs.simple_root(j)) {
            return (steps, j0);
        }
        let i = (0..rs.rank)
            .find(|&i| {
                let mu = rs.root_to_weight(&current);
                mu[i] > 0 && current != rs.simple_root(i)
            })
            .expect("positive non-simple root has a descent");
        current = rs.simple_reflect_root(i, &current);
        steps.push(i);
    }
}

/// The symmetric reduced decomposition s_theta = w^{-1} s_{j_0} w with the
/// mirrored word, and the chain alpha^(-p)..alpha^(p).
pub fn symmetric_decomposition_of_s_theta(rs: &RootSystem) -> RootChain {
    let (steps, j0) = descend_theta(rs);
    let p = steps.len();
    // letters j_{-p}..j_p = [i_1, ..., i_p, j_0, i_p, ..., i_1]
    let mut letters = steps.clone();
    letters.push(j0);
    letters.extend(steps.iter().rev());
    // sanity: the word is a reduced decomposition of s_theta
    let word: Vec<usize> = letters.iter().rev().cloned().collect();
    let w = WeylElem::from_word(rs, &word);
    assert_eq!(w, WeylElem::reflection(rs, &rs.theta));
    assert_eq!(w.length(rs), 2 * p + 1, "descent word not reduced");
    // chain: alpha^(i) = s_{j_{-p}} ... s_{j_{i-1}} alpha_{j_i}
    let mut chain = Vec::with_capacity(2 * p + 1);
    let mut prefix = WeylElem::identity(rs);
    for (k, &j) in letters.iter().enumerate() {
        chain.push(prefix.act_root(&rs.simple_root(j)));
        if k + 1 < letters.len() {
            prefix = prefix.compose(&WeylElem::simple(rs, j));
        }
    }
    RootChain {
        p: p as i64,
        letters,
        chain,
    }
}

/// Reduced word of tau(theta^vee) = s_0 s_{j_p} ... s_{j_{-p}}.
pub fn reduced_word_tau_theta(rs: &RootSystem) -> Vec<usize> {
    let rc = symmetric_decomposition_of_s_theta(rs);
    let mut word = vec![0usize];
    word.extend(rc.word().iter().map(|&j| j + 1));
    word
}

/// Chain of positive affine roots made negative by the element of a reduced
/// word over {0..=r}: alpha^(i) = s_{j_1} ... s_{j_{i-1}} alpha_{j_i} when
/// the word reads w = s_{j_p} ... s_{j_1} left to right.
pub fn chain_of_word(rs: &RootSystem, word: &[usize]) -> Vec<AffineRoot> {
    let mut chain = Vec::with_capacity(word.len());
    let mut prefix = AffElem::identity(rs);
    for &j in word.iter().rev() {
        chain.push(prefix.act_affine_root(rs, &AffElem::simple_affine_root(rs, j)));
        prefix = prefix.compose(&AffElem::simple(rs, j));
    }
    chain
}

/// Sign epsilon(alpha, beta): -1 if (alpha,beta) > 0, else +1.  The second
/// argument is given as the coroot it is proportional to, so the sign is
/// that of the integer pairing.
pub fn epsilon(rs: &RootSystem, alpha: &Root, beta_coroot: &Coroot) -> i64 {
    let aw = rs.root_to_weight(alpha);
    if rs.pair_coroot_weight(beta_coroot, &aw) > 0 {
        -1
    } else {
        1
    }
}
