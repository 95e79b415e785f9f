//! Linear matroids with exact rank oracles, flat enumeration, and Bergman
//! fans in the fine (flag-of-flats) structure, together with the weighted
//! polyhedral cells shared by every tropical computation in this crate.
//!
//! Min-plus convention throughout: the Bergman fan of a loopless matroid is
//! the union of cones spanned by the indicator vectors of the flats in a
//! complete flag, plus the lineality line through the all-ones vector.
//! Coloops contribute coordinate lines to the lineality instead of blowing
//! up the flag count.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{self, IntegerMatrix};

/// Matroid of the columns of an integer matrix; ground set elements are
/// column indices, ranks are exact.
#[derive(Debug, Clone)]
pub struct LinearMatroid {
    vectors: Vec<Vec<BigInt>>,
    n: usize,
    rank: usize,
}

impl LinearMatroid {
    pub fn column_matroid(m: &IntegerMatrix) -> Result<Self> {
        let n = m.cols();
        if n > 64 {
            return Err(Error::BudgetExceeded(format!("matroid ground set {n} exceeds 64")));
        }
        let vectors: Vec<Vec<BigInt>> = (0..n).map(|j| m.col(j)).collect();
        let rank = exact_linalg::rank(m);
        Ok(LinearMatroid { vectors, n, rank })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Rank of the subset encoded by `mask`.
    pub fn rank_set(&self, mask: u64) -> usize {
        let cols: Vec<Vec<BigInt>> = (0..self.n)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.vectors[i].clone())
            .collect();
        if cols.is_empty() {
            return 0;
        }
        exact_linalg::rank(&IntegerMatrix::from_cols(&cols))
    }

    /// Smallest flat containing the subset.
    pub fn closure(&self, mask: u64) -> u64 {
        let r = self.rank_set(mask);
        let mut out = mask;
        for e in 0..self.n {
            if out >> e & 1 == 1 {
                continue;
            }
            if self.rank_set(mask | (1 << e)) == r {
                out |= 1 << e;
            }
        }
        out
    }

    /// Elements of rank zero.
    pub fn loops(&self) -> u64 {
        let mut out = 0u64;
        for e in 0..self.n {
            if self.rank_set(1 << e) == 0 {
                out |= 1 << e;
            }
        }
        out
    }

    /// Elements contained in every basis.
    pub fn coloops(&self) -> u64 {
        let full = self.full_mask();
        let mut out = 0u64;
        for e in 0..self.n {
            if self.rank_set(full & !(1 << e)) < self.rank {
                out |= 1 << e;
            }
        }
        out
    }

    /// All flats stratified by rank: `flats()[r]` is the sorted list of
    /// rank-r flats.  Aborts if more than `budget` flats appear.
    pub fn flats(&self, budget: usize) -> Result<Vec<Vec<u64>>> {
        let mut strata: Vec<Vec<u64>> = Vec::with_capacity(self.rank + 1);
        let mut total = 0usize;
        let bottom = self.closure(0);
        strata.push(vec![bottom]);
        for r in 0..self.rank {
            let mut next: HashSet<u64> = HashSet::new();
            for &f in &strata[r] {
                for e in 0..self.n {
                    if f >> e & 1 == 1 {
                        continue;
                    }
                    next.insert(self.closure(f | (1 << e)));
                }
            }
            total += next.len();
            if total > budget {
                return Err(Error::BudgetExceeded(format!(
                    "flat enumeration exceeded the {budget} flat budget"
                )));
            }
            let mut level: Vec<u64> = next.into_iter().collect();
            level.sort_unstable();
            strata.push(level);
        }
        Ok(strata)
    }
}

/// A weighted polyhedral cell: `vertex/vertex_den + cone(rays) + lin(lines)`.
/// Fans have a zero vertex.  Generators are kept linearly independent.
#[derive(Debug, Clone)]
pub struct Cell {
    pub vertex: Vec<BigInt>,
    pub vertex_den: BigInt,
    pub rays: Vec<Vec<BigInt>>,
    pub lines: Vec<Vec<BigInt>>,
    pub weight: BigInt,
}

impl Cell {
    pub fn cone(
        rays: Vec<Vec<BigInt>>,
        lines: Vec<Vec<BigInt>>,
        weight: BigInt,
        ambient: usize,
    ) -> Self {
        Cell {
            vertex: vec![BigInt::zero(); ambient],
            vertex_den: BigInt::one(),
            rays,
            lines,
            weight,
        }
    }

    pub fn dim(&self) -> usize {
        self.rays.len() + self.lines.len()
    }

    /// Generator matrix with ray columns first.
    pub fn generator_matrix(&self) -> IntegerMatrix {
        let mut cols: Vec<Vec<BigInt>> = self.rays.clone();
        cols.extend(self.lines.iter().cloned());
        IntegerMatrix::from_cols(&cols)
    }

    /// Exact membership test for a rational point `p/p_den`.
    pub fn contains(&self, p: &[BigInt], p_den: &BigInt) -> bool {
        // q = p/p_den - vertex/vertex_den, cleared of denominators
        let q: Vec<BigInt> = p
            .iter()
            .zip(&self.vertex)
            .map(|(pi, vi)| pi * &self.vertex_den - vi * p_den)
            .collect();
        if self.rays.is_empty() && self.lines.is_empty() {
            return q.iter().all(|x| x.is_zero());
        }
        let gens = self.generator_matrix();
        match exact_linalg::solve_rational(&gens, &q) {
            None => false,
            Some((nums, _den)) => nums[..self.rays.len()].iter().all(|x| !x.is_negative()),
        }
    }
}

/// Pure-dimensional weighted polyhedral cycle.  The cells may overlap; the
/// multiplicity at a generic point is the sum of the weights of the cells
/// containing it.
#[derive(Debug, Clone)]
pub struct WeightedFan {
    pub ambient: usize,
    pub dim: usize,
    pub cells: Vec<Cell>,
}

impl WeightedFan {
    pub fn new(ambient: usize, dim: usize, cells: Vec<Cell>) -> Self {
        debug_assert!(cells.iter().all(|c| c.dim() == dim));
        WeightedFan { ambient, dim, cells }
    }

    pub fn support_contains(&self, p: &[BigInt], p_den: &BigInt) -> bool {
        self.cells.iter().any(|c| c.contains(p, p_den))
    }

    /// Total weight of a zero-dimensional cycle.
    pub fn degree(&self) -> Result<BigInt> {
        if self.dim != 0 {
            return Err(Error::InvalidInput(format!(
                "degree of a {}-dimensional cycle",
                self.dim
            )));
        }
        Ok(self.cells.iter().map(|c| c.weight.clone()).sum())
    }
}

fn indicator(mask: u64, n: usize) -> Vec<BigInt> {
    (0..n)
        .map(|i| if mask >> i & 1 == 1 { BigInt::one() } else { BigInt::zero() })
        .collect()
}

/// Fine-structure Bergman fan of a loopless matroid: one maximal cone per
/// complete flag of proper nonempty flats, rays the flat indicators,
/// lineality the all-ones vector together with one coordinate line per
/// coloop.  All weights are one.
pub fn bergman_fan(m: &LinearMatroid, budget: usize) -> Result<WeightedFan> {
    let loops = m.loops();
    if loops != 0 {
        return Err(Error::MatroidLoop(loops.trailing_zeros() as usize));
    }
    let n = m.ground_size();
    let coloops = m.coloops();
    // lineality: the all-ones line plus one coordinate line per coloop;
    // when everything is a coloop the ones vector is already in their span
    let mut lines: Vec<Vec<BigInt>> = if coloops == m.full_mask() {
        Vec::new()
    } else {
        vec![vec![BigInt::one(); n]]
    };
    for e in 0..n {
        if coloops >> e & 1 == 1 {
            lines.push(indicator(1 << e, n));
        }
    }
    // flags of the matroid restricted to the non-coloop part
    let rest_mask = m.full_mask() & !coloops;
    let rest_elems: Vec<usize> = (0..n).filter(|&i| rest_mask >> i & 1 == 1).collect();
    let sub = restrict(m, &rest_elems)?;
    let flags = flag_masks(&sub, budget)?;
    let mut cells = Vec::with_capacity(flags.len().max(1));
    for flag in &flags {
        let rays: Vec<Vec<BigInt>> = flag
            .iter()
            .map(|&f| indicator(unrestrict_mask(f, &rest_elems), n))
            .collect();
        cells.push(Cell::cone(rays, lines.clone(), BigInt::one(), n));
    }
    if cells.is_empty() {
        cells.push(Cell::cone(Vec::new(), lines, BigInt::one(), n));
    }
    Ok(WeightedFan::new(n, m.rank(), cells))
}

fn restrict(m: &LinearMatroid, elems: &[usize]) -> Result<LinearMatroid> {
    let cols: Vec<Vec<BigInt>> = elems.iter().map(|&i| m.vectors[i].clone()).collect();
    if cols.is_empty() {
        return Ok(LinearMatroid { vectors: Vec::new(), n: 0, rank: 0 });
    }
    LinearMatroid::column_matroid(&IntegerMatrix::from_cols(&cols))
}

fn unrestrict_mask(mask: u64, elems: &[usize]) -> u64 {
    let mut out = 0u64;
    for (local, &global) in elems.iter().enumerate() {
        if mask >> local & 1 == 1 {
            out |= 1 << global;
        }
    }
    out
}

/// All complete flags of proper nonempty flats, as chains of masks.
fn flag_masks(m: &LinearMatroid, budget: usize) -> Result<Vec<Vec<u64>>> {
    if m.ground_size() == 0 || m.rank() == 0 {
        return Ok(Vec::new());
    }
    let strata = m.flats(budget)?;
    let mut flags: Vec<Vec<u64>> = vec![Vec::new()];
    for r in 1..m.rank() {
        let mut next = Vec::new();
        for flag in &flags {
            let prev: u64 = flag.last().copied().unwrap_or_else(|| m.closure(0));
            for &f in &strata[r] {
                if f & prev == prev {
                    let mut ext = flag.clone();
                    ext.push(f);
                    next.push(ext);
                }
            }
            if next.len() > budget {
                return Err(Error::BudgetExceeded(format!(
                    "flag enumeration exceeded the {budget} budget"
                )));
            }
        }
        flags = next;
    }
    Ok(flags)
}

/// Bergman fan of the uniform matroid U_{h,N}: flags are chains of subsets
/// of sizes 1..h-1.  For h = N the fan is the full ambient space.
pub fn uniform_bergman(h: usize, n: usize, budget: usize) -> Result<WeightedFan> {
    if h == 0 || h > n {
        return Err(Error::InvalidInput(format!("uniform matroid rank {h} out of range 1..={n}")));
    }
    let lines = vec![vec![BigInt::one(); n]];
    if h == n {
        // free matroid: the whole ambient space
        let mut alllines = lines;
        for e in 1..n {
            alllines.push(indicator(1 << e, n));
        }
        return Ok(WeightedFan::new(
            n,
            n,
            vec![Cell::cone(Vec::new(), alllines, BigInt::one(), n)],
        ));
    }
    let mut chains: Vec<Vec<u64>> = Vec::new();
    let mut chain: Vec<u64> = Vec::new();
    build_uniform_flags(h, n, &mut chain, &mut chains, budget)?;
    if h == 1 {
        chains.push(Vec::new());
    }
    let cells = chains
        .into_iter()
        .map(|rays: Vec<u64>| {
            let ray_vecs: Vec<Vec<BigInt>> = rays.iter().map(|&f| indicator(f, n)).collect();
            Cell::cone(ray_vecs, lines.clone(), BigInt::one(), n)
        })
        .collect();
    Ok(WeightedFan::new(n, h, cells))
}

fn build_uniform_flags(
    h: usize,
    n: usize,
    chain: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
    budget: usize,
) -> Result<()> {
    if chain.len() == h.saturating_sub(1) {
        if !chain.is_empty() {
            out.push(chain.clone());
        }
        if out.len() > budget {
            return Err(Error::BudgetExceeded(format!(
                "uniform flag enumeration exceeded the {budget} budget"
            )));
        }
        return Ok(());
    }
    let prev = chain.last().copied().unwrap_or(0);
    for e in 0..n {
        if prev >> e & 1 == 1 {
            continue;
        }
        chain.push(prev | (1 << e));
        build_uniform_flags(h, n, chain, out, budget)?;
        chain.pop();
    }
    Ok(())
}

/// Product Berg(U_{h1,N}) x Berg(U_{h2,N}) in R^{2N}.
pub fn uniform_product_bergman(
    h1: usize,
    h2: usize,
    n: usize,
    budget: usize,
) -> Result<WeightedFan> {
    let f1 = uniform_bergman(h1, n, budget)?;
    let f2 = uniform_bergman(h2, n, budget)?;
    if f1.cells.len().saturating_mul(f2.cells.len()) > budget {
        return Err(Error::BudgetExceeded(format!(
            "uniform product fan exceeded the {budget} budget"
        )));
    }
    let pad_left = |v: &Vec<BigInt>| -> Vec<BigInt> {
        let mut out = v.clone();
        out.extend(core::iter::repeat(BigInt::zero()).take(n));
        out
    };
    let pad_right = |v: &Vec<BigInt>| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n];
        out.extend(v.iter().cloned());
        out
    };
    let mut cells = Vec::with_capacity(f1.cells.len() * f2.cells.len());
    for c1 in &f1.cells {
        for c2 in &f2.cells {
            let mut rays: Vec<Vec<BigInt>> = c1.rays.iter().map(&pad_left).collect();
            rays.extend(c2.rays.iter().map(&pad_right));
            let mut lines: Vec<Vec<BigInt>> = c1.lines.iter().map(&pad_left).collect();
            lines.extend(c2.lines.iter().map(&pad_right));
            cells.push(Cell::cone(rays, lines, &c1.weight * &c2.weight, 2 * n));
        }
    }
    Ok(WeightedFan::new(2 * n, h1 + h2, cells))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn falling(n: usize, k: usize) -> usize {
        (0..k).map(|i| n - i).product::<usize>().max(1)
    }

    #[test]
    fn column_matroid_identity_is_free() {
        let m = LinearMatroid::column_matroid(&IntegerMatrix::identity(3)).unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.coloops(), 0b111);
        assert_eq!(m.loops(), 0);
    }

    #[test]
    fn column_matroid_generic_2x4() {
        let m = LinearMatroid::column_matroid(&IntegerMatrix::from_rows_i64(&[
            vec![1, 1, 1, 1],
            vec![0, 1, 2, 5],
        ]))
        .unwrap();
        assert_eq!(m.rank(), 2);
        for i in 0..4u64 {
            for j in (i + 1)..4 {
                assert_eq!(m.rank_set(1 << i | 1 << j), 2);
            }
        }
    }

    #[test]
    fn zero_column_is_loop() {
        let m = LinearMatroid::column_matroid(&IntegerMatrix::from_rows_i64(&[
            vec![0, 1, 0],
            vec![0, 0, 1],
        ]))
        .unwrap();
        assert_eq!(m.loops(), 0b001);
    }

    #[test]
    fn rank_axioms_random_subsets() {
        // monotone, submodular, unit increase
        let m = LinearMatroid::column_matroid(&IntegerMatrix::from_rows_i64(&[
            vec![1, 0, 1, 2, 1],
            vec![0, 1, 1, 0, 2],
            vec![0, 0, 0, 1, 1],
        ]))
        .unwrap();
        let full = m.full_mask();
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..50 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = state & full;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let b = state & full;
            let (ra, rb) = (m.rank_set(a), m.rank_set(b));
            let runion = m.rank_set(a | b);
            let rinter = m.rank_set(a & b);
            assert!(runion + rinter <= ra + rb, "submodularity");
            assert!(runion >= ra.max(rb), "monotonicity");
            for e in 0..5 {
                if a >> e & 1 == 0 {
                    let re = m.rank_set(a | (1 << e));
                    assert!(re == ra || re == ra + 1, "unit increase");
                }
            }
        }
    }

    #[test]
    fn flats_uniform_24() {
        let m = LinearMatroid::column_matroid(&IntegerMatrix::from_rows_i64(&[
            vec![1, 1, 1, 1],
            vec![0, 1, 2, 5],
        ]))
        .unwrap();
        let strata = m.flats(1000).unwrap();
        assert_eq!(strata[0], vec![0]);
        assert_eq!(strata[1].len(), 4);
        assert_eq!(strata[2], vec![0b1111]);
    }

    #[test]
    fn flats_uniform_34() {
        let m = LinearMatroid::column_matroid(&IntegerMatrix::from_rows_i64(&[
            vec![1, 1, 1, 1],
            vec![0, 1, 2, 5],
            vec![0, 0, 1, 3],
        ]))
        .unwrap();
        let strata = m.flats(1000).unwrap();
        assert_eq!(strata[1].len(), 4);
        assert_eq!(strata[2].len(), 6);
        assert_eq!(strata[3], vec![0b1111]);
    }

    #[test]
    fn loop_in_every_flat() {
        let m = LinearMatroid::column_matroid(&IntegerMatrix::from_rows_i64(&[
            vec![0, 1, 0],
            vec![0, 0, 1],
        ]))
        .unwrap();
        let strata = m.flats(1000).unwrap();
        for level in &strata {
            for &f in level {
                assert!(f & 1 == 1, "loop must lie in every flat");
            }
        }
    }

    #[test]
    fn bergman_free_matroid_lineality_only() {
        let m = LinearMatroid::column_matroid(&IntegerMatrix::identity(4)).unwrap();
        let fan = bergman_fan(&m, 1000).unwrap();
        assert_eq!(fan.dim, 4);
        assert_eq!(fan.cells.len(), 1);
        assert!(fan.cells[0].rays.is_empty());
        assert_eq!(fan.cells[0].lines.len(), 4);
    }

    #[test]
    fn bergman_u24_four_cones() {
        let m = LinearMatroid::column_matroid(&IntegerMatrix::from_rows_i64(&[
            vec![1, 1, 1, 1],
            vec![0, 1, 2, 5],
        ]))
        .unwrap();
        let fan = bergman_fan(&m, 1000).unwrap();
        assert_eq!(fan.dim, 2);
        assert_eq!(fan.cells.len(), 4);
        for c in &fan.cells {
            assert_eq!(c.rays.len(), 1);
            assert_eq!(c.weight, BigInt::one());
        }
    }

    #[test]
    fn bergman_u34_twelve_cones() {
        let m = LinearMatroid::column_matroid(&IntegerMatrix::from_rows_i64(&[
            vec![1, 1, 1, 1],
            vec![0, 1, 2, 5],
            vec![0, 0, 1, 3],
        ]))
        .unwrap();
        let fan = bergman_fan(&m, 1000).unwrap();
        assert_eq!(fan.cells.len(), 12);
        assert_eq!(fan.dim, 3);
    }

    #[test]
    fn bergman_rejects_loops() {
        let m = LinearMatroid::column_matroid(&IntegerMatrix::from_rows_i64(&[
            vec![0, 1],
            vec![0, 1],
        ]))
        .unwrap();
        assert!(matches!(bergman_fan(&m, 1000), Err(Error::MatroidLoop(0))));
    }

    #[test]
    fn uniform_fan_counts() {
        let f = uniform_bergman(3, 4, 100000).unwrap();
        assert_eq!(f.cells.len(), falling(4, 2));
        let f = uniform_bergman(1, 5, 100000).unwrap();
        assert_eq!(f.cells.len(), 1);
        assert!(f.cells[0].rays.is_empty());
        // flags against direct chain counting for N <= 6
        for n in 2..=6usize {
            for h in 2..n {
                let f = uniform_bergman(h, n, 1_000_000).unwrap();
                assert_eq!(f.cells.len(), falling(n, h - 1), "h={h} n={n}");
            }
        }
    }

    #[test]
    fn uniform_product_counts() {
        let f = uniform_product_bergman(4, 4, 4, 100000).unwrap();
        assert_eq!(f.cells.len(), 1);
        assert_eq!(f.dim, 8);
        assert_eq!(f.ambient, 8);

        let f = uniform_product_bergman(4, 3, 4, 100000).unwrap();
        assert_eq!(f.cells.len(), 12);
        assert_eq!(f.dim, 7);

        let f = uniform_product_bergman(1, 2, 4, 100000).unwrap();
        for c in &f.cells {
            assert!(c.rays.iter().all(|r| r[..4].iter().all(|x| x.is_zero())));
        }
    }

    #[test]
    fn cell_membership() {
        // cone over e1 with lineality (1,1)
        let cell = Cell::cone(
            vec![vec![BigInt::one(), BigInt::zero()]],
            vec![vec![BigInt::one(), BigInt::one()]],
            BigInt::one(),
            2,
        );
        let p = |a: i64, b: i64| vec![BigInt::from(a), BigInt::from(b)];
        assert!(cell.contains(&p(3, 1), &BigInt::one()));
        assert!(cell.contains(&p(-1, -1), &BigInt::one()));
        assert!(!cell.contains(&p(0, 5), &BigInt::one()));
    }
}
