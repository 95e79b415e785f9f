//! Closed-form degree oracles: generic and Bombieri-Weyl distance degrees
//! of Veronese embeddings, Chern-class recursions for jet bundles over
//! products of projective spaces, curve/surface/threefold formulas with
//! their lattice-polytope specializations, and the order-k eigenvector
//! test for symmetric tensors.
//!
//! These are independent of the tropical pipeline and are used to
//! cross-validate it.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice_polytope::{FaceVolumeData, LatticePolytope};

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

fn bino_i(n: i64, k: u64) -> BigInt {
    // binomial with a possibly negative upper index, vanishing for n < k
    if n < 0 {
        return BigInt::zero();
    }
    binomial(n as u64, k)
}

/// Multivariate polynomial truncated by one monomial ideal: multiplication
/// drops every monomial whose i-th exponent reaches `truncation[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPolynomial {
    truncation: Vec<u32>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl TruncatedPolynomial {
    pub fn zero(truncation: Vec<u32>) -> Self {
        TruncatedPolynomial { truncation, terms: BTreeMap::new() }
    }

    pub fn constant(truncation: Vec<u32>, c: BigInt) -> Self {
        let mut p = Self::zero(truncation);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.truncation.len()], c);
        }
        p
    }

    pub fn one(truncation: Vec<u32>) -> Self {
        Self::constant(truncation, BigInt::one())
    }

    pub fn vars(&self) -> usize {
        self.truncation.len()
    }

    pub fn add_term(&mut self, expo: Vec<u32>, c: BigInt) {
        if c.is_zero() || expo.iter().zip(&self.truncation).any(|(e, t)| e >= t) {
            return;
        }
        let entry = self.terms.entry(expo.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&expo);
        }
    }

    pub fn coefficient(&self, expo: &[u32]) -> BigInt {
        self.terms.get(expo).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.truncation, other.truncation);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.truncation, other.truncation);
        let mut out = Self::zero(self.truncation.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let expo: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if expo.iter().zip(&self.truncation).any(|(e, t)| e >= t) {
                    continue;
                }
                out.add_term(expo, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.truncation.clone());
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Degree functional: the coefficient of the top monomial
    /// prod h_i^(t_i - 1).
    pub fn top_coefficient(&self) -> BigInt {
        let top: Vec<u32> = self.truncation.iter().map(|t| t - 1).collect();
        self.coefficient(&top)
    }
}

/// Chow ring of P^{m_1} x ... x P^{m_r}: Z[h_1..h_r]/(h_i^{m_i+1}).
#[derive(Debug, Clone)]
pub struct ProductChowRing {
    factor_dims: Vec<usize>,
}

impl ProductChowRing {
    pub fn new(factor_dims: Vec<usize>) -> Self {
        ProductChowRing { factor_dims }
    }

    pub fn total_dim(&self) -> usize {
        self.factor_dims.iter().sum()
    }

    fn truncation(&self) -> Vec<u32> {
        self.factor_dims.iter().map(|&m| m as u32 + 1).collect()
    }

    pub fn zero(&self) -> TruncatedPolynomial {
        TruncatedPolynomial::zero(self.truncation())
    }

    pub fn one(&self) -> TruncatedPolynomial {
        TruncatedPolynomial::one(self.truncation())
    }

    /// The hyperplane class of factor i.
    pub fn h(&self, i: usize) -> TruncatedPolynomial {
        let mut p = self.zero();
        let mut e = vec![0u32; self.factor_dims.len()];
        e[i] = 1;
        p.add_term(e, BigInt::one());
        p
    }

    /// An ample class sum d_i h_i.
    pub fn polarization(&self, degrees: &[i64]) -> TruncatedPolynomial {
        let mut p = self.zero();
        for (i, &d) in degrees.iter().enumerate() {
            let mut e = vec![0u32; self.factor_dims.len()];
            e[i] = 1;
            p.add_term(e, BigInt::from(d));
        }
        p
    }

    /// Total Chern class of the tangent bundle, prod (1+h_i)^(m_i+1).
    pub fn tangent_chern(&self) -> TruncatedPolynomial {
        let mut acc = self.one();
        for (i, &m) in self.factor_dims.iter().enumerate() {
            let factor = self.one().add(&self.h(i));
            for _ in 0..=m {
                acc = acc.mul(&factor);
            }
        }
        acc
    }

    /// Graded piece of total degree d.
    pub fn graded_piece(&self, p: &TruncatedPolynomial, d: u32) -> TruncatedPolynomial {
        let mut out = self.zero();
        for (e, c) in &p.terms {
            if e.iter().sum::<u32>() == d {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Integration: coefficient of prod h_i^{m_i}.
    pub fn integrate(&self, p: &TruncatedPolynomial) -> BigInt {
        p.top_coefficient()
    }
}

/// Generic order-k distance degree of the degree-d Veronese embedding of
/// P^m: sum_i C(C(m+k,k), i) (d-k)^i d^(m-i).
pub fn veronese_gdd(m: usize, d: i64, k: usize) -> Result<BigInt> {
    if k == 0 || k as i64 > d {
        return Err(Error::Unsupported(format!("order k={k} outside 1..=d={d}")));
    }
    let jets = binomial((m + k) as u64, k as u64);
    let jets_u = &jets;
    let mut total = BigInt::zero();
    for i in 0..=m {
        let choose = big_binomial(jets_u, i as u64);
        let dk = BigInt::from(d - k as i64).pow(i as u32);
        let dm = BigInt::from(d).pow((m - i) as u32);
        total += choose * dk * dm;
    }
    Ok(total)
}

fn big_binomial(n: &BigInt, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Order-k distance degree of the Veronese embedding with respect to the
/// Bombieri-Weyl form: coefficient extraction from the truncated geometric
/// series of the Porteous class.
pub fn bw_distance_degree(m: usize, d: i64, k: usize) -> Result<BigInt> {
    if k == 0 || k as i64 > d {
        return Err(Error::Unsupported(format!("order k={k} outside 1..=d={d}")));
    }
    let jets = binomial((m + k) as u64, k as u64);
    let jets_usize: u64 = {
        use num_traits::ToPrimitive;
        jets.to_u64().ok_or_else(|| Error::BudgetExceeded("jet rank too large".to_string()))?
    };
    let target_h2 = jets_usize
        .checked_sub(m as u64 + 1)
        .ok_or_else(|| Error::Unsupported("jet rank below m+1".to_string()))?;
    // ring Z[h1,h2]/(h1^{m+1}, h2^{C(m+d,d)}): h2 exponents above the target
    // cannot contribute, so truncate there
    let trunc = vec![m as u32 + 1, target_h2 as u32 + 1];
    let mut base = TruncatedPolynomial::zero(trunc.clone());
    base.add_term(vec![1, 0], BigInt::from(d));
    base.add_term(vec![0, 1], BigInt::one());
    base.add_term(vec![2, 0], BigInt::from(k as i64) * BigInt::from(d - k as i64));
    base.add_term(vec![1, 1], BigInt::from(k as i64));
    let jmax = m as u64 + target_h2;
    let mut sum = TruncatedPolynomial::one(trunc.clone());
    let mut power = TruncatedPolynomial::one(trunc);
    for j in 1..=jmax {
        power = power.mul(&base);
        if power.is_zero() {
            break;
        }
        let signed = if j % 2 == 1 { power.scale(&BigInt::from(-1)) } else { power.clone() };
        sum = sum.add(&signed);
    }
    let coeff = sum.coefficient(&[m as u32, target_h2 as u32]);
    let sign = if (jets_usize - 1) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    Ok(sign * coeff)
}

/// Closed Bombieri-Weyl formulas for m = 1 and m = 2.
pub fn bw_closed_small_m(m: usize, d: i64, k: usize) -> Result<BigInt> {
    if k == 0 || k as i64 > d {
        return Err(Error::Unsupported(format!("order k={k} outside 1..=d={d}")));
    }
    let kk = k as i64;
    match m {
        1 => Ok(BigInt::from(kk * (d - kk + 1))),
        2 => {
            let s = binomial(k as u64 + 2, 2);
            let dk = BigInt::from(d - kk);
            let t1 = &dk * &dk * &s * &s;
            let t2 = &dk * BigInt::from(3 * d - 5 * kk) * &s;
            let t3 = BigInt::from(d - 2 * kk) * BigInt::from(d - 2 * kk);
            let num = t1 - t2 + BigInt::from(2) * t3;
            let (q, r) = num.div_rem(&BigInt::from(2));
            debug_assert!(r.is_zero());
            Ok(q)
        }
        _ => Err(Error::Unsupported("closed BW formula only for m in {1,2}".to_string())),
    }
}

/// Degrees (deg of the projection to the distance locus, deg of the
/// distance locus) for the Veronese embedding under the Bombieri-Weyl
/// form: the projection has degree 2 exactly when (m,k) = (1, d-1).
pub fn bw_projection_degree(m: usize, d: i64, k: usize) -> Result<(BigInt, BigInt)> {
    if k as i64 > d {
        return Err(Error::Unsupported(format!("order k={k} outside 1..=d={d}")));
    }
    if m == 1 && k as i64 == d - 1 {
        Ok((BigInt::from(2), BigInt::from(d - 1)))
    } else {
        Ok((BigInt::one(), bw_distance_degree(m, d, k)?))
    }
}

/// Rational scratch value used by the symmetric-power coefficients.
fn ratio(num: BigInt, den: i64) -> BigInt {
    let (q, r) = num.div_rem(&BigInt::from(den));
    assert!(r.is_zero(), "non-integral Chern coefficient");
    q
}

/// Total Chern class of Sym^k F for a bundle F of rank <= 3, expressed in
/// c_1(F), c_2(F), c_3(F) (splitting-principle polynomials).
fn sym_power_chern(
    ring: &ProductChowRing,
    c: &[TruncatedPolynomial],
    rank: usize,
    k: usize,
) -> Result<TruncatedPolynomial> {
    let kk = k as u64;
    let one = ring.one();
    let mut total = one.clone();
    match rank {
        1 => {
            total = total.add(&c[0].scale(&BigInt::from(kk)));
        }
        2 => {
            let c1 = &c[0];
            let c2 = &c[1];
            total = total.add(&c1.scale(&binomial(kk + 1, 2)));
            let c1c1 = c1.mul(c1);
            total = total.add(&c1c1.scale(&ratio(
                binomial(kk + 1, 3) * BigInt::from(3 * k as i64 + 2),
                4,
            )));
            total = total.add(&c2.scale(&binomial(kk + 2, 3)));
        }
        3 => {
            let c1 = &c[0];
            let c2 = &c[1];
            let c3 = &c[2];
            total = total.add(&c1.scale(&binomial(kk + 2, 3)));
            let c1c1 = c1.mul(c1);
            total = total.add(&c1c1.scale(&ratio(binomial(kk + 3, 3) * binomial(kk + 1, 3), 2)));
            total = total.add(&c2.scale(&binomial(kk + 3, 4)));
            let k5 = BigInt::from(k as i64);
            let poly1 = BigInt::from(5) * k5.pow(4) + BigInt::from(20) * k5.pow(3)
                - BigInt::from(5) * k5.pow(2)
                - BigInt::from(50) * &k5
                - BigInt::from(12);
            let c1c1c1 = c1c1.mul(c1);
            total = total.add(&c1c1c1.scale(&ratio(binomial(kk + 3, 5) * poly1, 54)));
            let poly2 =
                BigInt::from(5) * k5.pow(2) + BigInt::from(20) * &k5 + BigInt::from(6);
            let c1c2 = c1.mul(c2);
            total = total.add(&c1c2.scale(&ratio(binomial(kk + 3, 5) * poly2, 6)));
            let poly3 = BigInt::from(2 * k as i64 + 3);
            total = total.add(&c3.scale(&ratio(binomial(kk + 3, 4) * poly3, 5)));
        }
        _ => {
            return Err(Error::Unsupported(
                "symmetric-power Chern classes implemented for rank <= 3".to_string(),
            ))
        }
    }
    Ok(total)
}

/// Chern classes c_i(F ⊗ L) for a rank-r bundle with given c_j(F) and a
/// line bundle class l, for i = 0..=top.
fn tensor_line_chern(
    ring: &ProductChowRing,
    c: &[TruncatedPolynomial],
    rank: usize,
    l: &TruncatedPolynomial,
    top: usize,
) -> Vec<TruncatedPolynomial> {
    let mut out = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let mut acc = ring.zero();
        for j in 0..=i {
            if j >= c.len() {
                break;
            }
            let coeff = bino_i(rank as i64 - j as i64, (i - j) as u64);
            if coeff.is_zero() {
                continue;
            }
            let mut term = c[j].scale(&coeff);
            for _ in 0..(i - j) {
                term = term.mul(l);
            }
            acc = acc.add(&term);
        }
        out.push(acc);
    }
    out
}

/// Generic order-k distance degree of a k-regular embedding of a product
/// of projective spaces of total dimension <= 3, polarized by `l`,
/// computed by the jet-bundle Chern recursion.
pub fn jet_chern_gdd(ring: &ProductChowRing, l: &TruncatedPolynomial, k: usize) -> Result<BigInt> {
    let m = ring.total_dim();
    if m > 3 {
        return Err(Error::Unsupported(
            "unsupported rank for symmetric-power Chern classes (dim > 3)".to_string(),
        ));
    }
    if k == 0 {
        return Err(Error::Unsupported("order k must be >= 1".to_string()));
    }
    // c_j(Omega_X) = (-1)^j c_j(T_X), graded pieces j = 0..=m
    let ct = ring.tangent_chern();
    let mut comega: Vec<TruncatedPolynomial> = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let piece = ring.graded_piece(&ct, j as u32);
        comega.push(if j % 2 == 1 { piece.scale(&BigInt::from(-1)) } else { piece });
    }
    // first-order jets: c_i = sum_j C(m+1-j, i-j) c_j(Omega) l^{i-j}
    let mut comega_full = vec![ring.one()];
    comega_full.extend_from_slice(&comega[1..]);
    let mut cjet = tensor_line_chern(ring, &comega_full, m + 1, l, m);
    for step in 2..=k {
        // c(Sym^step Omega ⊗ L) * c(P^{step-1})
        let sym = sym_power_chern(ring, &comega[1..].to_vec(), m, step)?;
        let mut sym_graded = Vec::with_capacity(m + 1);
        for j in 0..=m {
            sym_graded.push(ring.graded_piece(&sym, j as u32));
        }
        let sym_rank = binomial((m + step - 1) as u64, step as u64);
        let sym_rank_i = {
            use num_traits::ToPrimitive;
            sym_rank.to_i64().expect("symmetric power rank fits i64")
        };
        let twisted = tensor_line_chern_bigrank(ring, &sym_graded, sym_rank_i, l, m);
        let mut next = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let mut acc = ring.zero();
            for ell in 0..=i {
                acc = acc.add(&twisted[ell].mul(&cjet[i - ell]));
            }
            next.push(acc);
        }
        cjet = next;
    }
    // gDD = sum_i ∫ c_i(P^k) * l^{m-i}
    let mut total = BigInt::zero();
    for (i, ci) in cjet.iter().enumerate() {
        let mut term = ci.clone();
        for _ in 0..(m - i) {
            term = term.mul(l);
        }
        total += ring.integrate(&term);
    }
    Ok(total)
}

fn tensor_line_chern_bigrank(
    ring: &ProductChowRing,
    c: &[TruncatedPolynomial],
    rank: i64,
    l: &TruncatedPolynomial,
    top: usize,
) -> Vec<TruncatedPolynomial> {
    let mut out = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let mut acc = ring.zero();
        for j in 0..=i {
            if j >= c.len() {
                break;
            }
            let coeff = bino_i(rank - j as i64, (i - j) as u64);
            if coeff.is_zero() {
                continue;
            }
            let mut term = c[j].scale(&coeff);
            for _ in 0..(i - j) {
                term = term.mul(l);
            }
            acc = acc.add(&term);
        }
        out.push(acc);
    }
    out
}

/// Surface coefficients alpha_1..alpha_4 at order k.
pub fn surface_alpha(k: usize) -> [BigInt; 4] {
    let kk = k as u64;
    let a1 = BigInt::one() + binomial(kk + 2, 2) + BigInt::from(3) * binomial(kk + 3, 4);
    let a2 = -(binomial(kk + 2, 2) * binomial(kk + 2, 3));
    let a3 = ratio(binomial(kk + 1, 3) * binomial(kk + 3, 3), 2);
    let a4 = binomial(kk + 3, 4);
    [a1, a2, a3, a4]
}

/// Threefold coefficients beta_1..beta_7 at order k.
pub fn threefold_beta(k: usize) -> [BigInt; 7] {
    let kb = BigInt::from(k as i64);
    let kk = k as u64;
    let poly_a = kb.pow(6)
        + BigInt::from(12) * kb.pow(5)
        + BigInt::from(58) * kb.pow(4)
        + BigInt::from(138) * kb.pow(3)
        + BigInt::from(157) * kb.pow(2)
        + BigInt::from(66) * &kb;
    let b1 = ratio(
        BigInt::from(k as i64 + 4)
            * (kb.pow(2) + BigInt::from(2) * &kb + BigInt::from(3))
            * (&poly_a + BigInt::from(216)),
        1296,
    );
    let b2 = -ratio(binomial(kk + 3, 4) * (&poly_a + BigInt::from(72)), 72);
    let b3 = ratio(
        binomial(kk + 3, 5)
            * &kb
            * (kb.pow(2) + BigInt::from(6) * &kb + BigInt::from(11))
            * (BigInt::from(5) * kb.pow(3)
                + BigInt::from(35) * kb.pow(2)
                + BigInt::from(90) * &kb
                + BigInt::from(72)),
        288,
    );
    let b4 = ratio(
        binomial(kk + 4, 5) * &kb * (kb.pow(2) + BigInt::from(6) * &kb + BigInt::from(11)),
        6,
    );
    let b5 = -ratio(
        binomial(kk + 3, 5)
            * (BigInt::from(5) * kb.pow(7) + BigInt::from(65) * kb.pow(6)
                + BigInt::from(355) * kb.pow(5)
                + BigInt::from(931) * kb.pow(4)
                + BigInt::from(816) * kb.pow(3)
                - BigInt::from(1404) * kb.pow(2)
                - BigInt::from(3312) * &kb
                - BigInt::from(1152)),
        3456,
    );
    let b6 = -ratio(
        binomial(kk + 4, 6)
            * (kb.pow(3) + BigInt::from(7) * kb.pow(2) + BigInt::from(18) * &kb + BigInt::from(8)),
        4,
    );
    let b7 = -ratio(binomial(kk + 4, 5) * (kb + BigInt::from(2)), 3);
    [b1, b2, b3, b4, b5, b6, b7]
}

/// gDD_k of a k-regular embedded curve from deg L and deg c_1.
pub fn gdd_curve(l_deg: &BigInt, c1_deg: &BigInt, k: usize) -> BigInt {
    BigInt::from(k as i64 + 2) * l_deg - binomial(k as u64 + 1, 2) * c1_deg
}

/// gDD_k of a k-regular embedded surface from the four intersection
/// numbers (L^2, c_1·L, c_1^2, c_2).
pub fn gdd_surface(l2: &BigInt, c1l: &BigInt, c1c1: &BigInt, c2: &BigInt, k: usize) -> BigInt {
    let [a1, a2, a3, a4] = surface_alpha(k);
    a1 * l2 + a2 * c1l + a3 * c1c1 + a4 * c2
}

/// Intersection numbers for a threefold, in the order
/// (L^3, c1·L^2, c1^2·L, c2·L, c1^3, c1·c2, c3).
pub fn gdd_threefold(nums: &[BigInt; 7], k: usize) -> BigInt {
    let [b1, b2, b3, b4, b5, b6, b7] = threefold_beta(k);
    b1 * &nums[0]
        + b2 * &nums[1]
        + b3 * &nums[2]
        + b4 * &nums[3]
        + b5 * &nums[4]
        + b6 * &nums[5]
        + b7 * &nums[6]
}

/// gDD_k of a complete-intersection curve in P^n cut by degrees d_1..d_{n-1}.
pub fn gdd_complete_intersection_curve(degrees: &[i64], k: usize) -> BigInt {
    let n = degrees.len() + 1;
    let prod: BigInt = degrees.iter().map(|&d| BigInt::from(d)).product();
    let sum: i64 = degrees.iter().sum();
    let l = prod.clone();
    let c1 = BigInt::from(n as i64 + 1 - sum) * &prod;
    gdd_curve(&l, &c1, k)
}

/// Polytope form of the surface formula.
pub fn toric_surface_gdd(p: &LatticePolytope, k: usize) -> Result<BigInt> {
    if p.dim() != 2 {
        return Err(Error::Unsupported("toric surface formula needs a polygon".to_string()));
    }
    let d = p.face_volume_data()?;
    Ok(toric_surface_gdd_from_volumes(&d, k))
}

pub fn toric_surface_gdd_from_volumes(d: &FaceVolumeData, k: usize) -> BigInt {
    let [a1, a2, a3, a4] = surface_alpha(k);
    a1 * &d.p + a2 * &d.e + (a4 - &a3) * BigInt::from(d.v as i64) + BigInt::from(12) * a3
}

/// Case selector for the threefold dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThreefoldCase {
    Auto,
    /// k = 1 formula in (P, F, E, V).
    Order1,
    /// Veronese P^3 specials, d in {2, 3}.
    VeroneseSimplex,
    /// Projectivized split bundle over P^1 embedded by twice the
    /// tautological class.
    Scroll,
    /// Adjoint-nef case in (P, P1, F, F1, E, V).
    Nef,
}

/// gDD_k of a k-regular toric threefold from its polytope, dispatching the
/// classified cases.
pub fn toric_threefold_gdd(p: &LatticePolytope, k: usize, case: ThreefoldCase) -> Result<BigInt> {
    if p.dim() != 3 {
        return Err(Error::Unsupported("toric threefold formula needs a 3-polytope".to_string()));
    }
    let chosen = match case {
        ThreefoldCase::Auto => classify_threefold(p, k)?,
        c => c,
    };
    match chosen {
        ThreefoldCase::Order1 => {
            let d = p.face_volume_data()?;
            // 15 P - 7 F + 3 E - V; the c2·L coefficient comes from the
            // order-1 beta table
            Ok(BigInt::from(15) * &d.p - BigInt::from(7) * &d.f + BigInt::from(3) * &d.e
                - BigInt::from(d.v as i64))
        }
        ThreefoldCase::VeroneseSimplex => {
            let (d, _) = simplex_dilation(p).ok_or_else(|| {
                Error::Unsupported("unclassified threefold, supply case explicitly".to_string())
            })?;
            veronese_gdd(3, d, k)
        }
        ThreefoldCase::Scroll => {
            let (a, b, c) = scroll_parameters(p).ok_or_else(|| {
                Error::Unsupported("unclassified threefold, supply case explicitly".to_string())
            })?;
            if k != 2 {
                return Err(Error::Unsupported("scroll case defined at k = 2".to_string()));
            }
            Ok(BigInt::from(162) * BigInt::from(a + b + c) - BigInt::from(154))
        }
        ThreefoldCase::Nef => {
            if k != 2 {
                return Err(Error::Unsupported("adjoint-nef case defined at k = 2".to_string()));
            }
            let d = p.face_volume_data()?;
            let (_, p1, f1) = p.interior_hull()?;
            Ok(threefold_nef_value(&d, &p1, &f1))
        }
        ThreefoldCase::Auto => unreachable!(),
    }
}

/// Case-(4) value: beta(2) composed with the toric intersection numbers
/// ∫L^3 = P, ∫c1L^2 = F, ∫c2L = E, ∫c3 = V, ∫c1c2 = 24,
/// ∫c1^3 = 2(P1-P)+3(F1+F), ∫c1^2L = P1-P+F1+2F.
fn threefold_nef_value(d: &FaceVolumeData, p1: &BigInt, f1: &BigInt) -> BigInt {
    let nums: [BigInt; 7] = [
        d.p.clone(),
        d.f.clone(),
        p1 - &d.p + f1 + BigInt::from(2) * &d.f,
        d.e.clone(),
        BigInt::from(2) * (p1 - &d.p) + BigInt::from(3) * (f1 + &d.f),
        BigInt::from(24),
        BigInt::from(d.v as i64),
    ];
    gdd_threefold(&nums, 2)
}

fn classify_threefold(p: &LatticePolytope, k: usize) -> Result<ThreefoldCase> {
    if k == 1 {
        return Ok(ThreefoldCase::Order1);
    }
    if simplex_dilation(p).is_some() {
        return Ok(ThreefoldCase::VeroneseSimplex);
    }
    if scroll_parameters(p).is_some() {
        return Ok(ThreefoldCase::Scroll);
    }
    if k == 2 {
        return Ok(ThreefoldCase::Nef);
    }
    Err(Error::Unsupported("unclassified threefold, supply case explicitly".to_string()))
}

/// Recognize a unimodular image of d * (standard 3-simplex).
fn simplex_dilation(p: &LatticePolytope) -> Option<(i64, ())> {
    if p.vertex_count() != 4 {
        return None;
    }
    let d = p.face_volume_data().ok()?;
    // six edges of equal lattice length ell, normalized volume ell^3
    let lens: Vec<&BigInt> = p.edges().iter().map(|e| &e.lattice_length).collect();
    if lens.windows(2).any(|w| w[0] != w[1]) || lens.len() != 6 {
        return None;
    }
    let ell = lens[0].clone();
    use num_traits::ToPrimitive;
    let ell_i = ell.to_i64()?;
    if d.p == ell.pow(3) {
        Some((ell_i, ()))
    } else {
        None
    }
}

/// Recognize the polytope of O(2) on P(O(a) ⊕ O(b) ⊕ O(c)) over P^1 with
/// a >= b >= c >= 2: a triangle 2Δ^2 fibered over a segment with vertex
/// fiber lengths 2a, 2b, 2c.  Returns (a, b, c).
fn scroll_parameters(p: &LatticePolytope) -> Option<(i64, i64, i64)> {
    use num_traits::ToPrimitive;
    if p.vertex_count() != 6 {
        return None;
    }
    // try every primitive edge direction as the fiber direction
    let mut dirs: Vec<Vec<BigInt>> = p.edges().iter().map(|e| e.direction.clone()).collect();
    dirs.sort();
    dirs.dedup();
    for w in &dirs {
        // quotient lattice basis
        let wmat = IntegerMatrixAlias::from_cols(&[w.clone()]);
        let comp = crate::exact_linalg::kernel_basis(&wmat.transpose());
        if comp.cols() != 2 {
            continue;
        }
        // project vertices onto the quotient
        let mut proj: Vec<Vec<BigInt>> = Vec::new();
        for v in p.vertices() {
            let coords: Vec<BigInt> =
                (0..2).map(|j| dot_vec(&comp.col(j), &v)).collect();
            proj.push(coords);
        }
        proj.sort();
        proj.dedup();
        if proj.len() != 3 {
            continue;
        }
        let tri = match LatticePolytope::hull(proj.clone()) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let data = tri.face_volume_data().ok()?;
        // 2Δ^2 has normalized area 8? no: area of 2Δ² = 2, normalized = 2!*2 = 4
        if data.p != BigInt::from(4) || tri.vertex_count() != 3 {
            continue;
        }
        if tri.edges().iter().any(|e| e.lattice_length != BigInt::from(2)) {
            continue;
        }
        // fiber lengths over the three triangle vertices
        let mut lens: Vec<i64> = Vec::new();
        let mut ok = true;
        for tv in tri.vertices() {
            let fiber: Vec<Vec<BigInt>> = p
                .vertices()
                .into_iter()
                .filter(|v| (0..2).all(|j| dot_vec(&comp.col(j), v) == tv[j]))
                .collect();
            if fiber.len() != 2 {
                ok = false;
                break;
            }
            let diff: Vec<BigInt> =
                fiber[1].iter().zip(&fiber[0]).map(|(x, y)| x - y).collect();
            let g = diff.iter().fold(BigInt::zero(), |acc, x| {
                use num_integer::Integer;
                acc.gcd(x)
            });
            match g.to_i64() {
                Some(len) if len % 2 == 0 && len >= 4 => lens.push(len / 2),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && lens.len() == 3 {
            lens.sort_unstable();
            lens.reverse();
            return Some((lens[0], lens[1], lens[2]));
        }
    }
    None
}

type IntegerMatrixAlias = crate::exact_linalg::IntegerMatrix;

fn dot_vec(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Closed forms for products of projective lines, r in {2, 3}.
pub fn p1r_gdd(d_vec: &[i64], k: usize) -> Result<BigInt> {
    let dmin = *d_vec.iter().min().unwrap_or(&0);
    if (k as i64) > dmin {
        return Err(Error::Unsupported(format!(
            "not k-regular, formula inapplicable: k={k} exceeds min degree {dmin}"
        )));
    }
    let kk = k as i64;
    match d_vec.len() {
        2 => {
            let (d1, d2) = (d_vec[0], d_vec[1]);
            let quad = BigInt::from((kk * kk + kk + 2) * (kk * kk + 5 * kk + 8));
            let t1 = ratio(quad * BigInt::from(d1 * d2), 4);
            let t2 = BigInt::from(2)
                * binomial(k as u64 + 2, 3)
                * binomial(k as u64 + 2, 2)
                * BigInt::from(d1 + d2);
            let t3 = ratio(
                BigInt::from(4) * BigInt::from(2 * kk * kk + 1) * binomial(k as u64 + 3, 4),
                3,
            );
            Ok(t1 - t2 + t3)
        }
        3 => {
            let [b1, b2, b3, b4, b5, b6, b7] = threefold_beta(k);
            let e1: i64 = d_vec.iter().sum();
            let e2: i64 = d_vec[0] * d_vec[1] + d_vec[0] * d_vec[2] + d_vec[1] * d_vec[2];
            let e3: i64 = d_vec[0] * d_vec[1] * d_vec[2];
            let inner = BigInt::from(3) * b1 * BigInt::from(e3)
                + BigInt::from(2) * b2 * BigInt::from(e2)
                + BigInt::from(2) * (BigInt::from(2) * b3 + b4) * BigInt::from(e1)
                + BigInt::from(24) * b5
                + BigInt::from(12) * b6
                + BigInt::from(4) * b7;
            Ok(BigInt::from(2) * inner)
        }
        _ => Err(Error::Unsupported("p1r formula implemented for r in {2,3}".to_string())),
    }
}

/// A symmetric tensor of degree d in m+1 variables, stored sparsely in the
/// multinomial convention f = sum_alpha C(d, alpha) f_alpha x^alpha, with
/// rational coefficients (num, den).
#[derive(Debug, Clone)]
pub struct SymmetricTensor {
    pub degree: u32,
    pub nvars: usize,
    pub coeffs: BTreeMap<Vec<u32>, (BigInt, BigInt)>,
}

impl SymmetricTensor {
    pub fn new(degree: u32, nvars: usize) -> Self {
        SymmetricTensor { degree, nvars, coeffs: BTreeMap::new() }
    }

    pub fn set(&mut self, alpha: Vec<u32>, num: i64, den: i64) {
        assert_eq!(alpha.iter().sum::<u32>(), self.degree);
        assert_eq!(alpha.len(), self.nvars);
        self.coeffs.insert(alpha, (BigInt::from(num), BigInt::from(den)));
    }

    /// k-th partial derivative d^k f / dx^beta evaluated at v, returned as
    /// an exact fraction.
    fn derivative_at(&self, beta: &[u32], v: &[(BigInt, BigInt)]) -> (BigInt, BigInt) {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (alpha, (cn, cd)) in &self.coeffs {
            if alpha.iter().zip(beta).any(|(a, b)| a < b) {
                continue;
            }
            // multinomial C(d, alpha) times falling factorials of alpha at beta
            let mut scale = multinomial(self.degree, alpha);
            for (a, b) in alpha.iter().zip(beta) {
                for t in 0..*b {
                    scale *= BigInt::from(a - t);
                }
            }
            // monomial v^{alpha - beta}
            let mut mn = BigInt::one();
            let mut md = BigInt::one();
            for ((a, b), (vn, vd)) in alpha.iter().zip(beta).zip(v) {
                let e = a - b;
                mn *= vn.pow(e);
                md *= vd.pow(e);
            }
            let term_num = scale * cn * mn;
            let term_den = cd * md;
            // num/den += term_num/term_den
            num = num * &term_den + &term_num * &den;
            den *= term_den;
        }
        reduce(num, den)
    }
}

fn multinomial(d: u32, alpha: &[u32]) -> BigInt {
    let mut rest = d;
    let mut acc = BigInt::one();
    for &a in alpha {
        acc *= binomial(rest as u64, a as u64);
        rest -= a;
    }
    acc
}

fn reduce(num: BigInt, den: BigInt) -> (BigInt, BigInt) {
    if num.is_zero() {
        return (BigInt::zero(), BigInt::one());
    }
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / &g, den / g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    (n, d)
}

/// Order-k eigenvector test: v is an order-k eigenvector of f iff the
/// 2-column matrix (∇_k f(v) | v^k) has rank <= 1.  Returns the eigenvalue
/// (with the (d-k)!/d! normalization) when v^k is nonzero.
pub fn is_order_k_eigenvector(
    f: &SymmetricTensor,
    v: &[(BigInt, BigInt)],
    k: u32,
) -> (bool, Option<(BigInt, BigInt)>) {
    assert!(k <= f.degree);
    let m = f.nvars;
    let betas = all_exponents(m, k);
    let mut grad: Vec<(BigInt, BigInt)> = Vec::with_capacity(betas.len());
    let mut power: Vec<(BigInt, BigInt)> = Vec::with_capacity(betas.len());
    for beta in &betas {
        grad.push(f.derivative_at(beta, v));
        let mut pn = BigInt::one();
        let mut pd = BigInt::one();
        for (b, (vn, vd)) in beta.iter().zip(v) {
            pn *= vn.pow(*b);
            pd *= vd.pow(*b);
        }
        power.push(reduce(pn, pd));
    }
    // rank <= 1: all 2x2 minors vanish
    for i in 0..betas.len() {
        for j in (i + 1)..betas.len() {
            // grad[i]*power[j] - grad[j]*power[i] == 0
            let lhs = &grad[i].0 * &power[j].0 * &grad[j].1 * &power[i].1;
            let rhs = &grad[j].0 * &power[i].0 * &grad[i].1 * &power[j].1;
            if lhs != rhs {
                return (false, None);
            }
        }
    }
    // eigenvalue via any nonzero coordinate of v^k, scaled by (d-k)!/d!
    for (g, p) in grad.iter().zip(&power) {
        if !p.0.is_zero() {
            let mut scale_den = BigInt::one();
            for t in 0..k {
                scale_den *= BigInt::from(f.degree - t);
            }
            // lambda = (g / p) / scale_den
            let num = &g.0 * &p.1;
            let den = &g.1 * &p.0 * scale_den;
            return (true, Some(reduce(num, den)));
        }
    }
    (true, None)
}

fn all_exponents(m: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    fn rec(m: usize, left: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == m - 1 {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(m, left - v, pos + 1, cur, out);
        }
    }
    rec(m, k, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn veronese_values() {
        assert_eq!(veronese_gdd(1, 3, 2).unwrap(), b(6));
        assert_eq!(veronese_gdd(2, 3, 2).unwrap(), b(42));
        for m in 1..=3 {
            for d in 1..=4i64 {
                assert_eq!(veronese_gdd(m, d, d as usize).unwrap(), b(d.pow(m as u32)));
            }
        }
    }

    #[test]
    fn bw_values() {
        assert_eq!(bw_distance_degree(1, 3, 2).unwrap(), b(4));
        assert_eq!(bw_distance_degree(2, 3, 2).unwrap(), b(22));
        for d in 1..=8i64 {
            for k in 1..=d as usize {
                assert_eq!(
                    bw_distance_degree(1, d, k).unwrap(),
                    b(k as i64 * (d - k as i64 + 1)),
                    "m=1 d={d} k={k}"
                );
            }
        }
    }

    #[test]
    fn bw_matches_closed_m2() {
        for d in 1..=6i64 {
            for k in 1..=d as usize {
                assert_eq!(
                    bw_distance_degree(2, d, k).unwrap(),
                    bw_closed_small_m(2, d, k).unwrap(),
                    "m=2 d={d} k={k}"
                );
                assert_eq!(
                    bw_distance_degree(1, d, k).unwrap(),
                    bw_closed_small_m(1, d, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn bw_closed_spot_values() {
        assert_eq!(bw_closed_small_m(1, 5, 3).unwrap(), b(9));
        assert_eq!(bw_closed_small_m(2, 3, 2).unwrap(), b(22));
        assert_eq!(bw_closed_small_m(2, 3, 3).unwrap(), b(9));
        assert_eq!(bw_distance_degree(2, 3, 3).unwrap(), b(9));
    }

    #[test]
    fn bw_below_generic() {
        for m in 1..=2usize {
            for d in 1..=6i64 {
                for k in 1..=d as usize {
                    assert!(
                        bw_distance_degree(m, d, k).unwrap() <= veronese_gdd(m, d, k).unwrap(),
                        "m={m} d={d} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn bw_projection_rules() {
        assert_eq!(bw_projection_degree(1, 3, 2).unwrap(), (b(2), b(2)));
        assert_eq!(bw_projection_degree(2, 3, 2).unwrap(), (b(1), b(22)));
        assert_eq!(bw_projection_degree(1, 4, 2).unwrap(), (b(1), b(6)));
    }

    #[test]
    fn alpha_beta_spot_checks() {
        let a = surface_alpha(2);
        assert_eq!(a, [b(22), b(-24), b(5), b(5)]);
        let a1 = surface_alpha(1);
        assert_eq!(a1, [b(7), b(-3), b(0), b(1)]);
        let beta1 = threefold_beta(1);
        assert_eq!(beta1[3], b(3));
        let beta2 = threefold_beta(2);
        assert_eq!(
            beta2,
            [b(176), b(-230), b(81), b(54), b(-7), b(-20), b(-8)]
        );
    }

    #[test]
    fn jet_chern_p1() {
        for d in 1..=6i64 {
            for k in 1..=d as usize {
                let ring = ProductChowRing::new(vec![1]);
                let l = ring.polarization(&[d]);
                assert_eq!(
                    jet_chern_gdd(&ring, &l, k).unwrap(),
                    b((k as i64 + 2) * d - (k as i64) * (k as i64 + 1)),
                    "d={d} k={k}"
                );
            }
        }
    }

    #[test]
    fn jet_chern_p1_cubed() {
        let ring = ProductChowRing::new(vec![1, 1, 1]);
        for a in 2..=10i64 {
            let l = ring.polarization(&[a, a, a]);
            let got = jet_chern_gdd(&ring, &l, 2).unwrap();
            let want = b(1056 * a * a * a - 2760 * a * a + 2592 * a - 880);
            assert_eq!(got, want, "a={a}");
        }
    }

    #[test]
    fn jet_chern_matches_veronese() {
        for m in 1..=3usize {
            for d in 1..=5i64 {
                for k in 1..=d as usize {
                    let ring = ProductChowRing::new(vec![m]);
                    let l = ring.polarization(&[d]);
                    assert_eq!(
                        jet_chern_gdd(&ring, &l, k).unwrap(),
                        veronese_gdd(m, d, k).unwrap(),
                        "m={m} d={d} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn jet_chern_rejects_dim4() {
        let ring = ProductChowRing::new(vec![4]);
        let l = ring.polarization(&[2]);
        assert!(jet_chern_gdd(&ring, &l, 1).is_err());
    }

    #[test]
    fn curve_complete_intersection() {
        // ci curve d1..d_{n-1} in P^n: prod d * [k+2 - C(k+1,2)(n+1-sum d)]
        let degs = [2i64, 3];
        let got = gdd_complete_intersection_curve(&degs, 2);
        let want = b(6 * (2 + 2 - 3 * (4 - 5)));
        assert_eq!(got, want);
    }

    #[test]
    fn surface_formula_toric_identity() {
        // identical linear combination for polygon data: checked on a
        // family of smooth polygons
        let polys: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2]],
            vec![vec![0, 0], vec![3, 0], vec![0, 2], vec![3, 2]],
            vec![vec![0, 0], vec![1, 0], vec![0, 1]],
            vec![vec![0, 0], vec![2, 0], vec![0, 2]],
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![1, 1],
                vec![1, 2],
                vec![2, 1],
                vec![2, 2],
            ],
        ];
        for pts in &polys {
            let p = LatticePolytope::hull_i64(pts).unwrap();
            let d = p.face_volume_data().unwrap();
            for k in 1..=3usize {
                let via_chern = gdd_surface(
                    &d.p,
                    &d.e,
                    &(b(12) - b(d.v as i64)),
                    &b(d.v as i64),
                    k,
                );
                let via_polytope = toric_surface_gdd(&p, k).unwrap();
                assert_eq!(via_chern, via_polytope);
            }
        }
    }

    #[test]
    fn toric_surface_hexagon() {
        let p = LatticePolytope::hull_i64(&[
            vec![0, 0],
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![1, 2],
            vec![2, 1],
            vec![2, 2],
        ])
        .unwrap();
        assert_eq!(toric_surface_gdd(&p, 1).unwrap(), b(30));
        assert_eq!(toric_surface_gdd(&p, 2).unwrap(), b(22 * 6 - 24 * 6 + 60));
    }

    fn cube(a: i64) -> LatticePolytope {
        let mut pts = Vec::new();
        for x in [0, a] {
            for y in [0, a] {
                for z in [0, a] {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        LatticePolytope::hull_i64(&pts).unwrap()
    }

    #[test]
    fn toric_threefold_cube_case4() {
        for a in 2..=5i64 {
            let got = toric_threefold_gdd(&cube(a), 2, ThreefoldCase::Auto).unwrap();
            let want = b(1056 * a * a * a - 2760 * a * a + 2592 * a - 880);
            assert_eq!(got, want, "a={a}");
        }
    }

    #[test]
    fn toric_threefold_order1_cube() {
        // 15P - 7F + 3E - V on the unit cube
        let got = toric_threefold_gdd(&cube(1), 1, ThreefoldCase::Auto).unwrap();
        assert_eq!(got, b(15 * 6 - 7 * 12 + 3 * 12 - 8));
    }

    #[test]
    fn toric_threefold_veronese_specials() {
        // d=2: gDD_2 = 8; d=3: k=2 and k=3 from the Veronese formula
        let simplex = |d: i64| {
            let mut pts = Vec::new();
            for x in 0..=d {
                for y in 0..=(d - x) {
                    for z in 0..=(d - x - y) {
                        pts.push(vec![x, y, z]);
                    }
                }
            }
            LatticePolytope::hull_i64(&pts).unwrap()
        };
        assert_eq!(toric_threefold_gdd(&simplex(2), 2, ThreefoldCase::Auto).unwrap(), b(8));
        assert_eq!(
            toric_threefold_gdd(&simplex(3), 2, ThreefoldCase::Auto).unwrap(),
            veronese_gdd(3, 3, 2).unwrap()
        );
        assert_eq!(toric_threefold_gdd(&simplex(3), 3, ThreefoldCase::Auto).unwrap(), b(27));
    }

    /// Polytope of O_E(2) on P(O(a) ⊕ O(b) ⊕ O(c)): Cayley-style fibration
    /// of [0,2a],[0,2b],[0,2c] over the triangle 2Δ^2.
    fn scroll_polytope(a: i64, bb: i64, c: i64) -> LatticePolytope {
        let mut pts = Vec::new();
        for s in 0..=2i64 {
            for t in 0..=(2 - s) {
                let r = 2 - s - t;
                // height at barycentric (r, s, t) of (a, b, c)
                let h = r * a + s * bb + t * c;
                for x in 0..=h {
                    pts.push(vec![x, s, t]);
                }
            }
        }
        LatticePolytope::hull_i64(&pts).unwrap()
    }

    #[test]
    fn toric_threefold_scroll() {
        for (a, bb, c) in [(2i64, 2, 2), (3, 2, 2), (4, 3, 2)] {
            let p = scroll_polytope(a, bb, c);
            let got = toric_threefold_gdd(&p, 2, ThreefoldCase::Auto).unwrap();
            assert_eq!(got, b(162 * (a + bb + c) - 154), "scroll({a},{bb},{c})");
        }
    }

    #[test]
    fn p1r_values() {
        assert_eq!(p1r_gdd(&[2, 2, 2], 2).unwrap(), b(1712));
        assert_eq!(p1r_gdd(&[2, 2], 2).unwrap(), b(44));
        assert!(p1r_gdd(&[1, 1, 2], 2).is_err());
        for a in 2..=10i64 {
            assert_eq!(
                p1r_gdd(&[a, a, a], 2).unwrap(),
                b(1056 * a * a * a - 2760 * a * a + 2592 * a - 880)
            );
        }
    }

    #[test]
    fn p1r_matches_jet_chern() {
        for (d1, d2) in [(2i64, 2i64), (3, 2), (4, 4)] {
            for k in 1..=d2.min(d1) as usize {
                let ring = ProductChowRing::new(vec![1, 1]);
                let l = ring.polarization(&[d1, d2]);
                assert_eq!(
                    p1r_gdd(&[d1, d2], k).unwrap(),
                    jet_chern_gdd(&ring, &l, k).unwrap(),
                    "d=({d1},{d2}) k={k}"
                );
            }
        }
    }

    #[test]
    fn eigencheck_power() {
        // f = x0^d: e0 is an order-k eigenvector for every k <= d
        for d in 2..=4u32 {
            let mut f = SymmetricTensor::new(d, 3);
            let mut alpha = vec![0u32; 3];
            alpha[0] = d;
            f.set(alpha, 1, 1);
            let v = vec![
                (b(1), b(1)),
                (b(0), b(1)),
                (b(0), b(1)),
            ];
            for k in 1..=d {
                let (is_eig, lam) = is_order_k_eigenvector(&f, &v, k);
                assert!(is_eig);
                assert_eq!(lam, Some((b(1), b(1))));
            }
        }
    }

    #[test]
    fn eigencheck_diagonal_quadric() {
        // f = 3x0^2 + 5x1^2
        let mut f = SymmetricTensor::new(2, 2);
        f.set(vec![2, 0], 3, 1);
        f.set(vec![0, 2], 5, 1);
        let e0 = vec![(b(1), b(1)), (b(0), b(1))];
        let (is_eig, lam) = is_order_k_eigenvector(&f, &e0, 1);
        assert!(is_eig);
        assert_eq!(lam, Some((b(3), b(1))));
    }

    #[test]
    fn eigencheck_product_form() {
        // f = x0 x1 in the multinomial convention: f_(1,1) = 1/2
        let mut f = SymmetricTensor::new(2, 2);
        f.set(vec![1, 1], 1, 2);
        let diag = vec![(b(1), b(1)), (b(1), b(1))];
        let (is_eig, _) = is_order_k_eigenvector(&f, &diag, 1);
        assert!(is_eig);
        let e0 = vec![(b(1), b(1)), (b(0), b(1))];
        let (is_eig, _) = is_order_k_eigenvector(&f, &e0, 1);
        assert!(!is_eig);
    }

    #[test]
    fn truncated_poly_degree_functional() {
        let mut p = TruncatedPolynomial::zero(vec![3, 2]);
        p.add_term(vec![2, 1], b(7));
        p.add_term(vec![1, 1], b(4));
        assert_eq!(p.top_coefficient(), b(7));
    }
}
