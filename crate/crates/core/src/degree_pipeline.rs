//! From an exponent matrix and an order k to multidegrees, polar degrees,
//! generic distance degrees, dual-variety invariants, and tropical
//! critical-point valuations.
//!
//! The order-k conormal cycle is the Minkowski sum of the row space of
//! (-A | A) with {0} x Trop(ker A^(k)); its multidegrees are stable
//! intersections with products of uniform Bergman fans.  Those stable
//! intersections are computed by the fan displacement rule without
//! materializing the uniform fans: for a generic displacement, every
//! contributing cone pair is reconstructed from its argmin pattern by a
//! greedy walk through the flats of the kernel matroid, and certified by
//! exact sign checks.  Coordinates where the kernel vanishes identically
//! (the dual variety lies in a coordinate hyperplane) are deleted up front
//! and accounted for in the uniform ranks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{self, IntegerMatrix};
use crate::jet_osculation::{self, OsculationReport, ToricEmbedding};
use crate::matroid_bergman::{bergman_fan, Cell, LinearMatroid, WeightedFan};
use crate::tropical_cycle::{self, splitmix64, IntersectionPoint};

/// Default cap on enumerated flats, flags, cells, and candidates.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Everything the tropical pipeline needs about one embedding at order k,
/// without materializing any fan.
#[derive(Debug, Clone)]
pub struct ConormalData {
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub m_k: usize,
    /// Exponent vectors (torus part, length m), one per column of A.
    pub exponents: Vec<Vec<BigInt>>,
    /// Full columns of A (with the leading one), one per column.
    pub a_cols: Vec<Vec<BigInt>>,
    /// Original column indices whose kernel coordinate is not identically
    /// zero; dual coordinates outside this list are deleted.
    pub alive: Vec<usize>,
    /// Rows of the kernel basis B restricted to `alive`.
    pub b_rows: Vec<Vec<BigInt>>,
    /// Kernel dimension n - m_k (the rank of the dual-side matroid).
    pub r: usize,
    pub warnings: Vec<String>,
    pub osculation: Option<OsculationReport>,
}

impl ConormalData {
    pub fn dropped(&self) -> usize {
        self.n + 1 - self.alive.len()
    }
}

/// Build the conormal data for order k: jet matrix, kernel, loop deletion,
/// osculation flags.
pub fn conormal_data(embedding: &ToricEmbedding, k: usize) -> Result<ConormalData> {
    let m = embedding.torus_dim();
    let n = embedding.ambient_dim();
    let jet = jet_osculation::jet_matrix(embedding, k);
    let m_k = exact_linalg::rank(&jet) - 1;
    if m_k == n {
        return Err(Error::TrivialConormal { m_k, n });
    }
    let b = exact_linalg::kernel_basis(&jet);
    debug_assert_eq!(b.cols(), n - m_k);
    let mut alive = Vec::new();
    let mut b_rows = Vec::new();
    for j in 0..=n {
        let row: Vec<BigInt> = (0..b.cols()).map(|c| b.get(j, c).clone()).collect();
        if row.iter().any(|x| !x.is_zero()) {
            alive.push(j);
            b_rows.push(row);
        }
    }
    let mut warnings = Vec::new();
    if alive.len() < n + 1 {
        warnings.push(format!(
            "kernel vanishes on {} coordinate(s); dual variety lies in a coordinate subspace",
            n + 1 - alive.len()
        ));
    }
    let osculation = match jet_osculation::check_global_osculation(embedding, k) {
        Ok(rep) => {
            if !rep.globally_osculating {
                warnings.push(format!(
                    "not globally {k}-osculating: distance degree not certified, multidegrees only"
                ));
            }
            Some(rep)
        }
        Err(e) => {
            warnings.push(format!(
                "osculation check unavailable ({e}); distance degree not certified"
            ));
            None
        }
    };
    Ok(ConormalData {
        k,
        m,
        n,
        m_k,
        exponents: embedding.exponents(),
        a_cols: (0..=n).map(|j| embedding.matrix().col(j)).collect(),
        alive,
        b_rows,
        r: n - m_k,
        warnings,
        osculation,
    })
}

/// The projection matrix of the conormal parametrization, restricted to
/// the alive dual coordinates: fan coordinates (torus block, kernel block)
/// map to image coordinates (x block, alive y block).
fn projection_matrix(data: &ConormalData) -> IntegerMatrix {
    let m = data.m;
    let n = data.n;
    let n_y = data.alive.len();
    let mut v = IntegerMatrix::zero(n + 1 + n_y, m + 1 + n_y);
    for j in 0..=n {
        for t in 0..=m {
            v.set(j, t, -data.a_cols[j][t].clone());
        }
    }
    for (local, &j) in data.alive.iter().enumerate() {
        for t in 0..=m {
            v.set(n + 1 + local, t, data.a_cols[j][t].clone());
        }
        v.set(n + 1 + local, m + 1 + local, BigInt::one());
    }
    v
}

fn dual_matroid(data: &ConormalData) -> Result<LinearMatroid> {
    LinearMatroid::column_matroid(&IntegerMatrix::from_cols(&data.b_rows))
}

/// Materialize the tropical conormal cycle as a weighted cone list in
/// R^{(n+1) + alive}: the image of the Bergman fan of the kernel matroid
/// (with the free torus block) under the monomial-map projection.
pub fn trop_conormal(
    embedding: &ToricEmbedding,
    k: usize,
    budget: usize,
) -> Result<(ConormalData, WeightedFan)> {
    let data = conormal_data(embedding, k)?;
    let matroid = dual_matroid(&data)?;
    let berg = bergman_fan(&matroid, budget)?;
    let m = data.m;
    let n_y = data.alive.len();
    let ambient = m + 1 + n_y;
    let lift = |v: &Vec<BigInt>| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); m + 1];
        out.extend(v.iter().cloned());
        out
    };
    let mut cells = Vec::with_capacity(berg.cells.len());
    for c in &berg.cells {
        let mut lines: Vec<Vec<BigInt>> = (0..=m)
            .map(|t| {
                let mut e = vec![BigInt::zero(); ambient];
                e[t] = BigInt::one();
                e
            })
            .collect();
        lines.extend(c.lines.iter().map(&lift));
        let rays: Vec<Vec<BigInt>> = c.rays.iter().map(&lift).collect();
        cells.push(Cell::cone(rays, lines, c.weight.clone(), ambient));
    }
    let lifted = WeightedFan::new(ambient, m + 1 + berg.dim, cells);
    let v = projection_matrix(&data);
    let fan = tropical_cycle::project_fan(&lifted, &v)?;
    Ok((data, fan))
}

/// Multidegrees of the order-k conormal cycle; entry i is the
/// stable-intersection degree against Berg(U_{n-i+1} x U_{i+m_k-m+2}).
pub fn multidegrees(
    embedding: &ToricEmbedding,
    k: usize,
    seed: u64,
    budget: usize,
) -> Result<Vec<BigInt>> {
    let data = conormal_data(embedding, k)?;
    multidegrees_from_data(&data, seed, budget)
}

pub fn multidegrees_from_data(
    data: &ConormalData,
    seed: u64,
    budget: usize,
) -> Result<Vec<BigInt>> {
    let count = data.n + data.m - data.m_k;
    let engine = Engine::new(data)?;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        out.push(engine.multidegree(i, seed, budget)?);
    }
    Ok(out)
}

/// Report of all tropical degree invariants of one embedding at one order.
#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub m_k: usize,
    pub multidegrees: Vec<BigInt>,
    /// Polar degrees mu_j = delta_{m-j} for j = 0..=m.
    pub polar_degrees: Vec<BigInt>,
    pub gdd: BigInt,
    /// Whether the distance degree is certified by global k-osculation.
    pub gdd_certified: bool,
    pub dual_defect: usize,
    pub dual_codim: usize,
    pub dual_dim: usize,
    pub dual_degree: BigInt,
    pub variety_degree: BigInt,
    pub globally_osculating: Option<bool>,
    pub k_regular: Option<bool>,
    pub warnings: Vec<String>,
    pub seed: u64,
}

/// Assemble the full invariant report at order k.
pub fn polar_report(
    embedding: &ToricEmbedding,
    k: usize,
    seed: u64,
    budget: usize,
) -> Result<DegreeReport> {
    let data = conormal_data(embedding, k)?;
    let deltas = multidegrees_from_data(&data, seed, budget)?;
    let m = data.m;
    let polar: Vec<BigInt> = (0..=m).map(|j| deltas[m - j].clone()).collect();
    let gdd: BigInt = polar.iter().sum();
    let mut defect = 0usize;
    for mu in polar.iter().rev() {
        if mu.is_zero() {
            defect += 1;
        } else {
            break;
        }
    }
    if defect > m {
        return Err(Error::Degenerate { expected: m, got: 0 });
    }
    let dual_codim = data.m_k - m + defect + 1;
    Ok(DegreeReport {
        k,
        m,
        n: data.n,
        m_k: data.m_k,
        variety_degree: polar[0].clone(),
        dual_degree: polar[m - defect].clone(),
        dual_defect: defect,
        dual_codim,
        dual_dim: data.n - dual_codim,
        gdd_certified: data
            .osculation
            .as_ref()
            .map(|rep| rep.globally_osculating)
            .unwrap_or(false),
        globally_osculating: data.osculation.as_ref().map(|r| r.globally_osculating),
        k_regular: data.osculation.as_ref().map(|r| r.k_regular),
        multidegrees: deltas,
        polar_degrees: polar,
        gdd,
        warnings: data.warnings.clone(),
        seed,
    })
}

// ---------------------------------------------------------------------------
// the implicit stable-intersection engine
// ---------------------------------------------------------------------------

struct Engine<'a> {
    data: &'a ConormalData,
    n_y: usize,
    /// alive columns of the jet matrix: the dual-side rank oracle works in
    /// this small column matroid via r_B(S) = |S| - R_c + r_c(~S)
    jet_cols: Vec<Vec<i128>>,
    jet_rows: usize,
    rank_full_cols: usize,
}

/// The reconstructed flag data of one candidate cone pair.
struct GreedyOutcome {
    /// proper flats F_1 ⊂ ... ⊂ F_{r-1} as masks over local dual indices
    flats: Vec<u64>,
    /// minimum-attaining dual elements (local indices)
    t2_mask: u64,
    t2_count: usize,
    /// level index of every element
    level_of: Vec<usize>,
    /// representative offset value per level
    level_offset: Vec<BigInt>,
}

enum Candidate {
    Invalid,
    NonGeneric,
    Solution(BigInt),
}

impl<'a> Engine<'a> {
    fn new(data: &'a ConormalData) -> Result<Self> {
        let n_y = data.alive.len();
        // rebuild the jet matrix columns for the alive coordinates
        let jet = {
            // the kernel rows determine the jet matrix only up to row span;
            // recompute it directly from the exponent data
            let mut rows: Vec<Vec<BigInt>> = Vec::new();
            let idx = crate::jet_osculation::multi_indices(data.m, data.k);
            for alpha in &idx {
                let mut row = Vec::with_capacity(n_y);
                for &j in &data.alive {
                    let mut entry = BigInt::one();
                    for (c, &e) in alpha.iter().enumerate() {
                        for t in 0..e {
                            entry *= &data.exponents[j][c] - BigInt::from(t);
                        }
                        if entry.is_zero() {
                            break;
                        }
                    }
                    row.push(entry);
                }
                rows.push(row);
            }
            IntegerMatrix::from_rows(rows)
        };
        let jet_rows = jet.rows();
        let mut jet_cols: Vec<Vec<i128>> = Vec::with_capacity(n_y);
        use num_traits::ToPrimitive;
        for j in 0..n_y {
            let col: Option<Vec<i128>> = (0..jet_rows)
                .map(|r| jet.get(r, j).to_i128())
                .collect();
            let col = col.ok_or_else(|| {
                Error::BudgetExceeded("jet entries exceed the fast integer range".to_string())
            })?;
            jet_cols.push(col);
        }
        let rank_full_cols = exact_linalg::rank(&jet);
        // kernel dimension consistency: r = n_y - rank(alive columns)
        if n_y < rank_full_cols || n_y - rank_full_cols != data.r {
            return Err(Error::InvalidInput("kernel/column rank mismatch".to_string()));
        }
        Ok(Engine { data, n_y, jet_cols, jet_rows, rank_full_cols })
    }

    /// Rank of a set of alive jet columns (i128 fraction-free elimination).
    fn rank_cols(&self, mask: u64) -> usize {
        let cols: Vec<&Vec<i128>> = (0..self.n_y)
            .filter(|&e| mask >> e & 1 == 1)
            .map(|e| &self.jet_cols[e])
            .collect();
        if cols.is_empty() {
            return 0;
        }
        rank_i128(&cols, self.jet_rows)
    }

    fn full_mask(&self) -> u64 {
        if self.n_y == 64 {
            u64::MAX
        } else {
            (1u64 << self.n_y) - 1
        }
    }

    /// Rank in the kernel matroid via duality.
    fn rank_dual(&self, mask: u64) -> usize {
        let s = mask.count_ones() as usize;
        s + self.rank_cols(self.full_mask() & !mask) - self.rank_full_cols
    }

    /// (rank, closure) of a subset in the kernel matroid: e lies in the
    /// closure of S iff removing its column drops the rank of the columns
    /// off S (a coloop there).
    fn rank_and_closure(&self, mask: u64) -> (usize, u64) {
        let comp = self.full_mask() & !mask;
        let rc = self.rank_cols(comp);
        let rank = mask.count_ones() as usize + rc - self.rank_full_cols;
        let mut closure = mask;
        for e in 0..self.n_y {
            if comp >> e & 1 == 1 && self.rank_cols(comp & !(1 << e)) < rc {
                closure |= 1 << e;
            }
        }
        (rank, closure)
    }

    fn multidegree(&self, i: usize, seed: u64, budget: usize) -> Result<BigInt> {
        let data = self.data;
        let (m, n, n_y, r) = (data.m, data.n, self.n_y, data.r);
        if i > m {
            return Ok(BigInt::zero()); // a generic codim-i slice misses X
        }
        let h2 = i + data.m_k + 2 - m;
        let dropped = data.dropped();
        if h2 <= dropped {
            return Ok(BigInt::zero()); // the dual slice dies in the deleted coordinates
        }
        let h2_alive = h2 - dropped;
        if h2_alive > n_y {
            return Err(Error::InvalidInput("uniform rank exceeds ground set".to_string()));
        }
        let q = n_y - h2_alive; // |T2| - 1
        if q + 1 < r || q + 1 > n_y {
            return Ok(BigInt::zero());
        }
        let excess = m - i; // q + 1 = r + excess
        debug_assert_eq!(q + 1, r + excess);
        let structures = group_structures(n_y, excess);
        let t1s = subsets(n + 1, i + 1);
        let candidates = structures.len().saturating_mul(t1s.len());
        if candidates > budget {
            return Err(Error::BudgetExceeded(format!(
                "multidegree i={i} needs {candidates} candidates, budget {budget}"
            )));
        }

        'attempt: for attempt in 0..32u64 {
            let mut state = seed
                .wrapping_add((i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
                .wrapping_add(attempt.wrapping_mul(0x1234_5678_9abc_def1));
            let vx: Vec<BigInt> = draw(&mut state, n + 1);
            let vy: Vec<BigInt> = draw(&mut state, n_y);
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                let results: Result<Vec<Option<BigInt>>> = t1s
                    .par_iter()
                    .map_init(
                        HashMap::new,
                        |memo: &mut HashMap<u64, (u8, u64)>, t1| {
                            self.scan_t1(i, q, t1, &structures, &vx, &vy, memo)
                        },
                    )
                    .collect();
                let mut total = BigInt::zero();
                let mut generic = true;
                for part in results? {
                    match part {
                        Some(sum) => total += sum,
                        None => {
                            generic = false;
                            break;
                        }
                    }
                }
                if generic {
                    return Ok(total);
                }
                continue 'attempt;
            }
            #[cfg(not(feature = "parallel"))]
            {
                let mut closure_memo: HashMap<u64, (u8, u64)> = HashMap::new();
                let mut total = BigInt::zero();
                for t1 in &t1s {
                    match self.scan_t1(i, q, t1, &structures, &vx, &vy, &mut closure_memo)? {
                        Some(sum) => total += sum,
                        None => continue 'attempt, // non-generic displacement
                    }
                }
                return Ok(total);
            }
        }
        Err(Error::GenericityExhausted)
    }

    /// Contributions over all group structures for one x-side argmin
    /// pattern; None signals a non-generic displacement.
    fn scan_t1(
        &self,
        i: usize,
        q: usize,
        t1: &[usize],
        structures: &[Vec<u64>],
        vx: &[BigInt],
        vy: &[BigInt],
        closure_memo: &mut HashMap<u64, (u8, u64)>,
    ) -> Result<Option<BigInt>> {
        let data = self.data;
        let m = data.m;
        // x-side equalities pin rho to an affine subspace of dim m - i
        let j0 = t1[0];
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(i);
        let mut rhs: Vec<BigInt> = Vec::with_capacity(i);
        for &j in &t1[1..] {
            let row: Vec<BigInt> = (0..m)
                .map(|c| &data.exponents[j0][c] - &data.exponents[j][c])
                .collect();
            rows.push(row);
            rhs.push(&vx[j] - &vx[j0]);
        }
        let param = match affine_solutions(&rows, &rhs, m) {
            AffineSolutions::Empty => return Ok(Some(BigInt::zero())),
            AffineSolutions::NonGeneric => return Ok(None),
            AffineSolutions::Param(p) => p,
        };
        let mut total = BigInt::zero();
        for st in structures {
            match self.scan_structure(q, t1, st, &param, vx, vy, closure_memo)? {
                Candidate::Invalid => {}
                Candidate::NonGeneric => return Ok(None),
                Candidate::Solution(c) => total += c,
            }
        }
        Ok(Some(total))
    }

    #[allow(clippy::too_many_arguments)]
    fn scan_structure(
        &self,
        q: usize,
        t1: &[usize],
        groups: &[u64],
        param: &AffineParam,
        vx: &[BigInt],
        vy: &[BigInt],
        closure_memo: &mut HashMap<u64, (u8, u64)>,
    ) -> Result<Candidate> {
        let data = self.data;
        let (m, n, n_y) = (data.m, data.n, self.n_y);
        // group equalities pin the remaining theta freedom
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut rhs: Vec<BigInt> = Vec::new();
        for &gmask in groups {
            let members: Vec<usize> = mask_elements(gmask);
            let g0 = members[0];
            for &gs in &members[1..] {
                let full: Vec<BigInt> = (0..m)
                    .map(|c| {
                        &data.exponents[data.alive[g0]][c] - &data.exponents[data.alive[gs]][c]
                    })
                    .collect();
                let mut row = Vec::with_capacity(param.kdim);
                for t in 0..param.kdim {
                    let mut acc = BigInt::zero();
                    for c in 0..m {
                        acc += &full[c] * param.kernel.get(c, t);
                    }
                    row.push(acc);
                }
                let mut base = BigInt::zero();
                for c in 0..m {
                    base += &full[c] * &param.part_num[c];
                }
                rows.push(row);
                rhs.push((&vy[g0] - &vy[gs]) * &param.den - base);
            }
        }
        let (theta_num, theta_den) = match square_solve(&rows, &rhs, param.kdim) {
            SquareSolve::Unique(nums, den) => (nums, den),
            SquareSolve::Inconsistent => return Ok(Candidate::Invalid),
            SquareSolve::Underdetermined => return Ok(Candidate::NonGeneric),
        };
        // rho over the common denominator D = den * theta_den
        let dcommon = &param.den * &theta_den;
        let mut rho_num: Vec<BigInt> = param.part_num.iter().map(|x| x * &theta_den).collect();
        for t in 0..param.kdim {
            for c in 0..m {
                let add = param.kernel.get(c, t) * &theta_num[t];
                rho_num[c] += add;
            }
        }
        // x-values: x_j = -<a_j, rho> - vx_j (scaled by D)
        let mut xvals: Vec<BigInt> = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut acc = BigInt::zero();
            for c in 0..m {
                acc += &data.exponents[j][c] * &rho_num[c];
            }
            xvals.push(-acc - &vx[j] * &dcommon);
        }
        match check_min_pattern(&xvals, t1) {
            MinPattern::Valid => {}
            MinPattern::Wrong => return Ok(Candidate::Invalid),
            MinPattern::Tie => return Ok(Candidate::NonGeneric),
        }
        // dual offsets o_j = <a_j, rho> - vy_j
        let mut ovals: Vec<BigInt> = Vec::with_capacity(n_y);
        for local in 0..n_y {
            let j = data.alive[local];
            let mut acc = BigInt::zero();
            for c in 0..m {
                acc += &data.exponents[j][c] * &rho_num[c];
            }
            ovals.push(acc - &vy[local] * &dcommon);
        }
        // equal offsets are allowed only within a chosen group
        let mut group_of: Vec<Option<usize>> = vec![None; n_y];
        for (gi, &gmask) in groups.iter().enumerate() {
            for e in mask_elements(gmask) {
                group_of[e] = Some(gi);
            }
        }
        let mut order: Vec<usize> = (0..n_y).collect();
        order.sort_by(|&a, &b| ovals[a].cmp(&ovals[b]));
        for w in order.windows(2) {
            if ovals[w[0]] == ovals[w[1]] {
                let same = group_of[w[0]].is_some() && group_of[w[0]] == group_of[w[1]];
                if !same {
                    return Ok(Candidate::NonGeneric);
                }
            }
        }
        let Some(outcome) = self.greedy_flag(groups, &group_of, &ovals, &order, closure_memo)
        else {
            return Ok(Candidate::Invalid);
        };
        if outcome.t2_count != q + 1 {
            // a chosen group was swept whole: the minimum is attained too
            // few times, so this candidate corresponds to no cone pair
            return Ok(Candidate::Invalid);
        }
        // slacks: dual value above the level minimum
        let mut yslacks: Vec<BigInt> = Vec::with_capacity(n_y);
        for e in 0..n_y {
            let lvl = outcome.level_of[e];
            let slack = &ovals[e] - &outcome.level_offset[lvl];
            debug_assert!(!slack.is_negative());
            if slack.is_zero() && outcome.t2_mask >> e & 1 == 0 {
                return Ok(Candidate::NonGeneric);
            }
            yslacks.push(slack);
        }
        // non-minimal dual values pairwise distinct
        {
            let mut nonzero: Vec<&BigInt> = yslacks.iter().filter(|s| !s.is_zero()).collect();
            nonzero.sort();
            for w in nonzero.windows(2) {
                if w[0] == w[1] {
                    return Ok(Candidate::NonGeneric);
                }
            }
        }
        Ok(self.solution_multiplicity(t1, &xvals, &yslacks, &outcome))
    }

    /// Reconstruct the unique candidate flag for the given offsets: levels
    /// are taken by increasing offset, each closing up to a flat of rank
    /// one more.
    fn greedy_flag(
        &self,
        groups: &[u64],
        group_of: &[Option<usize>],
        ovals: &[BigInt],
        order: &[usize],
        memo: &mut HashMap<u64, (u8, u64)>,
    ) -> Option<GreedyOutcome> {
        let n_y = self.n_y;
        let full: u64 = if n_y == 64 { u64::MAX } else { (1u64 << n_y) - 1 };
        let mut flat = 0u64;
        let mut flats: Vec<u64> = Vec::new();
        let mut t2_mask = 0u64;
        let mut t2_count = 0usize;
        let mut level_of: Vec<usize> = vec![usize::MAX; n_y];
        let mut level_offset: Vec<BigInt> = Vec::new();
        let mut cursor = 0usize;
        let mut level = 0usize;
        while flat != full {
            while cursor < n_y && flat >> order[cursor] & 1 == 1 {
                cursor += 1;
            }
            if cursor == n_y {
                return None;
            }
            let rep = order[cursor];
            let mut entering: u64 = 1 << rep;
            if let Some(gi) = group_of[rep] {
                let gmask = groups[gi];
                if gmask & flat != 0 {
                    return None; // a group member was swept earlier
                }
                entering |= gmask;
            }
            let newset = flat | entering;
            let (rank, closed) = match memo.get(&newset) {
                Some(&(rank, closed)) => (rank as usize, closed),
                None => {
                    let rc = self.rank_and_closure(newset);
                    memo.insert(newset, (rc.0 as u8, rc.1));
                    rc
                }
            };
            if rank != level + 1 {
                return None; // the level must raise the rank by exactly one
            }
            for e in 0..n_y {
                if closed >> e & 1 == 1 && level_of[e] == usize::MAX {
                    level_of[e] = level;
                }
            }
            t2_mask |= entering;
            t2_count += entering.count_ones() as usize;
            level_offset.push(ovals[rep].clone());
            flat = closed;
            if flat != full {
                flats.push(flat);
            }
            level += 1;
        }
        if level != self.data.r {
            return None;
        }
        Some(GreedyOutcome { flats, t2_mask, t2_count, level_of, level_offset })
    }

    /// Weight of one reconstructed cone pair: the conormal cone weight (a
    /// lattice index of the monomial projection) times the displacement
    /// index of the two saturated span lattices in the quotient by the
    /// doubled projective lineality.
    fn solution_multiplicity(
        &self,
        t1: &[usize],
        xvals: &[BigInt],
        yslacks: &[BigInt],
        outcome: &GreedyOutcome,
    ) -> Candidate {
        let data = self.data;
        let (m, n, n_y) = (data.m, data.n, self.n_y);
        let ambient = n + 1 + n_y;
        // sigma: span of the projected conormal cone
        let mut sigma_cols: Vec<Vec<BigInt>> = Vec::new();
        for t in 0..=m {
            let mut col = vec![BigInt::zero(); ambient];
            for j in 0..=n {
                col[j] = -data.a_cols[j][t].clone();
            }
            for (local, &j) in data.alive.iter().enumerate() {
                col[n + 1 + local] = data.a_cols[j][t].clone();
            }
            sigma_cols.push(col);
        }
        {
            let mut col = vec![BigInt::zero(); ambient];
            for local in 0..n_y {
                col[n + 1 + local] = BigInt::one();
            }
            sigma_cols.push(col);
        }
        for &fmask in &outcome.flats {
            let mut col = vec![BigInt::zero(); ambient];
            for e in 0..n_y {
                if fmask >> e & 1 == 1 {
                    col[n + 1 + e] = BigInt::one();
                }
            }
            sigma_cols.push(col);
        }
        let sigma = IntegerMatrix::from_cols(&sigma_cols);
        let m_sigma = exact_linalg::index_in_saturation(&sigma);
        let sigma_sat = exact_linalg::saturation_basis(&sigma);
        // tau: uniform product flag from the sorted non-minimal values
        let mut tau_cols: Vec<Vec<BigInt>> = Vec::new();
        {
            let mut above: Vec<usize> = (0..=n).filter(|j| !t1.contains(j)).collect();
            above.sort_by(|&a, &b| xvals[b].cmp(&xvals[a]));
            let mut mask: Vec<bool> = vec![false; n + 1];
            for &j in &above {
                mask[j] = true;
                let mut col = vec![BigInt::zero(); ambient];
                for (jj, &mm) in mask.iter().enumerate() {
                    if mm {
                        col[jj] = BigInt::one();
                    }
                }
                tau_cols.push(col);
            }
            let mut ones = vec![BigInt::zero(); ambient];
            for j in 0..=n {
                ones[j] = BigInt::one();
            }
            tau_cols.push(ones);
        }
        {
            let mut above: Vec<usize> = (0..n_y).filter(|&e| !yslacks[e].is_zero()).collect();
            above.sort_by(|&a, &b| yslacks[b].cmp(&yslacks[a]));
            let mut mask: Vec<bool> = vec![false; n_y];
            for &e in &above {
                mask[e] = true;
                let mut col = vec![BigInt::zero(); ambient];
                for (ee, &mm) in mask.iter().enumerate() {
                    if mm {
                        col[n + 1 + ee] = BigInt::one();
                    }
                }
                tau_cols.push(col);
            }
            let mut ones = vec![BigInt::zero(); ambient];
            for e in 0..n_y {
                ones[n + 1 + e] = BigInt::one();
            }
            tau_cols.push(ones);
        }
        let tau = IntegerMatrix::from_cols(&tau_cols);
        let tau_sat = exact_linalg::saturation_basis(&tau);
        // quotient by the two block-ones directions
        let proj = block_difference_projection(n + 1, n_y);
        let sig_q = exact_linalg::column_lattice_basis(&proj.mul(&sigma_sat));
        let tau_q = exact_linalg::column_lattice_basis(&proj.mul(&tau_sat));
        let joint = sig_q.hcat(&tau_q);
        if joint.rows() != joint.cols() {
            return Candidate::NonGeneric;
        }
        let det = exact_linalg::determinant(&joint).abs();
        if det.is_zero() {
            return Candidate::NonGeneric;
        }
        Candidate::Solution(m_sigma * det)
    }
}

fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|&e| mask >> e & 1 == 1).collect()
}

/// Fraction-free rank of a set of integer column vectors, i128 fast path
/// with a BigInt fallback on overflow.
fn rank_i128(cols: &[&Vec<i128>], rows: usize) -> usize {
    let c = cols.len();
    let mut a: Vec<i128> = Vec::with_capacity(rows * c);
    for r in 0..rows {
        for col in cols {
            a.push(col[r]);
        }
    }
    match rank_i128_inner(&mut a, rows, c) {
        Some(r) => r,
        None => {
            // overflow: redo exactly
            let big: Vec<Vec<BigInt>> =
                cols.iter().map(|col| col.iter().map(|&x| BigInt::from(x)).collect()).collect();
            exact_linalg::rank(&IntegerMatrix::from_cols(&big))
        }
    }
}

fn rank_i128_inner(a: &mut [i128], r: usize, c: usize) -> Option<usize> {
    let mut prev: i128 = 1;
    let mut pivot_row = 0usize;
    for col in 0..c {
        if pivot_row >= r {
            break;
        }
        let mut piv = None;
        for i in pivot_row..r {
            if a[i * c + col] != 0 {
                piv = Some(i);
                break;
            }
        }
        let Some(p) = piv else { continue };
        if p != pivot_row {
            for j in 0..c {
                a.swap(p * c + j, pivot_row * c + j);
            }
        }
        let pivot = a[pivot_row * c + col];
        for i in (pivot_row + 1)..r {
            let head = a[i * c + col];
            for j in (col + 1)..c {
                let t1 = a[i * c + j].checked_mul(pivot)?;
                let t2 = head.checked_mul(a[pivot_row * c + j])?;
                a[i * c + j] = t1.checked_sub(t2)? / prev;
            }
            a[i * c + col] = 0;
        }
        prev = pivot;
        pivot_row += 1;
    }
    Some(pivot_row)
}

/// Projection killing exactly the two block-ones vectors: coordinate
/// differences against the first entry within each block.
fn block_difference_projection(nx: usize, ny: usize) -> IntegerMatrix {
    let rows = (nx - 1) + (ny - 1);
    let mut p = IntegerMatrix::zero(rows, nx + ny);
    for j in 1..nx {
        p.set(j - 1, 0, -BigInt::one());
        p.set(j - 1, j, BigInt::one());
    }
    for e in 1..ny {
        p.set(nx - 1 + e - 1, nx, -BigInt::one());
        p.set(nx - 1 + e - 1, nx + e, BigInt::one());
    }
    p
}

enum MinPattern {
    Valid,
    Wrong,
    Tie,
}

/// The minimum of `vals` must be attained exactly on `support`, with all
/// other values pairwise distinct.
fn check_min_pattern(vals: &[BigInt], support: &[usize]) -> MinPattern {
    let vmin = support.iter().map(|&j| &vals[j]).min().unwrap();
    for (idx, v) in vals.iter().enumerate() {
        let on = support.contains(&idx);
        if on && v != vmin {
            return MinPattern::Wrong;
        }
        if !on {
            match v.cmp(vmin) {
                core::cmp::Ordering::Less => return MinPattern::Wrong,
                core::cmp::Ordering::Equal => return MinPattern::Tie,
                core::cmp::Ordering::Greater => {}
            }
        }
    }
    let mut above: Vec<&BigInt> = (0..vals.len())
        .filter(|j| !support.contains(j))
        .map(|j| &vals[j])
        .collect();
    above.sort();
    for w in above.windows(2) {
        if w[0] == w[1] {
            return MinPattern::Tie;
        }
    }
    MinPattern::Valid
}

struct AffineParam {
    /// particular solution numerators over the denominator `den`
    part_num: Vec<BigInt>,
    den: BigInt,
    kernel: IntegerMatrix,
    kdim: usize,
}

enum AffineSolutions {
    Empty,
    NonGeneric,
    Param(AffineParam),
}

/// Solutions of a small linear system rows * rho = rhs in R^m; a generic
/// right-hand side makes dependent rows inconsistent.
fn affine_solutions(rows: &[Vec<BigInt>], rhs: &[BigInt], m: usize) -> AffineSolutions {
    let k = rows.len();
    if k == 0 {
        return AffineSolutions::Param(AffineParam {
            part_num: vec![BigInt::zero(); m],
            den: BigInt::one(),
            kernel: IntegerMatrix::identity(m),
            kdim: m,
        });
    }
    let a = IntegerMatrix::from_rows(rows.to_vec());
    let rank = exact_linalg::rank(&a);
    if rank < k {
        let mut aug = Vec::new();
        for (row, b) in rows.iter().zip(rhs) {
            let mut r = row.clone();
            r.push(b.clone());
            aug.push(r);
        }
        let aug_rank = exact_linalg::rank(&IntegerMatrix::from_rows(aug));
        if aug_rank == rank {
            return AffineSolutions::NonGeneric;
        }
        return AffineSolutions::Empty;
    }
    if k > m {
        return AffineSolutions::Empty;
    }
    let kernel = exact_linalg::kernel_basis(&a);
    match solve_underdetermined(&a, rhs) {
        Some((part_num, den)) => AffineSolutions::Param(AffineParam {
            part_num,
            den,
            kdim: kernel.cols(),
            kernel,
        }),
        None => AffineSolutions::Empty,
    }
}

/// One rational solution of a full-row-rank underdetermined system.
fn solve_underdetermined(a: &IntegerMatrix, rhs: &[BigInt]) -> Option<(Vec<BigInt>, BigInt)> {
    let (k, m) = (a.rows(), a.cols());
    let mut chosen: Vec<usize> = Vec::new();
    let mut rank_now = 0usize;
    for j in 0..m {
        let mut cols: Vec<Vec<BigInt>> = chosen.iter().map(|&c| a.col(c)).collect();
        cols.push(a.col(j));
        if exact_linalg::rank(&IntegerMatrix::from_cols(&cols)) > rank_now {
            chosen.push(j);
            rank_now += 1;
            if rank_now == k {
                break;
            }
        }
    }
    if rank_now < k {
        return None;
    }
    let sub = IntegerMatrix::from_cols(&chosen.iter().map(|&c| a.col(c)).collect::<Vec<_>>());
    let (nums, den) = exact_linalg::solve_rational(&sub, rhs)?;
    let mut full = vec![BigInt::zero(); m];
    for (slot, &c) in chosen.iter().enumerate() {
        full[c] = nums[slot].clone();
    }
    Some((full, den))
}

enum SquareSolve {
    Unique(Vec<BigInt>, BigInt),
    Inconsistent,
    Underdetermined,
}

fn square_solve(rows: &[Vec<BigInt>], rhs: &[BigInt], dim: usize) -> SquareSolve {
    if dim == 0 {
        if rhs.iter().all(|b| b.is_zero()) {
            return SquareSolve::Unique(Vec::new(), BigInt::one());
        }
        return SquareSolve::Inconsistent;
    }
    if rows.len() != dim {
        return SquareSolve::Underdetermined;
    }
    let a = IntegerMatrix::from_rows(rows.to_vec());
    let rank = exact_linalg::rank(&a);
    if rank < dim {
        let mut aug = Vec::new();
        for (row, b) in rows.iter().zip(rhs) {
            let mut r = row.clone();
            r.push(b.clone());
            aug.push(r);
        }
        if exact_linalg::rank(&IntegerMatrix::from_rows(aug)) == rank {
            return SquareSolve::Underdetermined;
        }
        return SquareSolve::Inconsistent;
    }
    match exact_linalg::solve_rational(&a, rhs) {
        Some((nums, den)) => SquareSolve::Unique(nums, den),
        None => SquareSolve::Inconsistent,
    }
}

fn draw(state: &mut u64, len: usize) -> Vec<BigInt> {
    (0..len)
        .map(|_| {
            let r = splitmix64(state);
            BigInt::from((r % 999_983) as i64 + 1)
        })
        .collect()
}

/// All subsets of {0..n-1} of the given size, lexicographic.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let need = size - cur.len();
        for j in start..=(n - need) {
            cur.push(j);
            rec(n, size, j + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size == 0 {
        out.push(Vec::new());
        return out;
    }
    if size > n {
        return out;
    }
    let mut cur: Vec<usize> = Vec::new();
    rec(n, size, 0, &mut cur, &mut out);
    out
}

/// Group structures with total excess `excess`: disjoint subsets of
/// {0..n_y-1} of size >= 2 encoded as masks, a group of size s
/// contributing s-1; structures are canonically ordered by anchors.
fn group_structures(n_y: usize, excess: usize) -> Vec<Vec<u64>> {
    fn rec(
        n_y: usize,
        excess: usize,
        min_start: usize,
        used: u64,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if excess == 0 {
            out.push(cur.clone());
            return;
        }
        for anchor in min_start..n_y {
            if used >> anchor & 1 == 1 {
                continue;
            }
            let pool: Vec<usize> =
                ((anchor + 1)..n_y).filter(|&e| used >> e & 1 == 0).collect();
            for size in 2..=excess + 1 {
                if pool.len() + 1 < size {
                    continue;
                }
                for extra in subsets(pool.len(), size - 1) {
                    let mut gmask = 1u64 << anchor;
                    for idx in &extra {
                        gmask |= 1 << pool[*idx];
                    }
                    cur.push(gmask);
                    rec(n_y, excess - (size - 1), anchor + 1, used | gmask, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(n_y, excess, 0, 0, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// tropical critical valuations
// ---------------------------------------------------------------------------

/// Tropicalization of the affine data locus {x + y = u} with a declared
/// valuation vector for u: the product over coordinates of tropical lines
/// with vertex (val_j, val_j).  Deleted dual coordinates contribute the
/// fixed x-value val_j instead of a line.
pub fn trop_data_locus(
    data: &ConormalData,
    u_num: &[BigInt],
    u_den: &BigInt,
    budget: usize,
) -> Result<WeightedFan> {
    let n = data.n;
    let n_y = data.alive.len();
    let ambient = n + 1 + n_y;
    if u_num.len() != n + 1 {
        return Err(Error::InvalidInput("valuation vector length mismatch".to_string()));
    }
    if 3usize.checked_pow(n_y as u32).map_or(true, |c| c > budget) {
        return Err(Error::BudgetExceeded(format!("data-locus complex needs 3^{n_y} cells")));
    }
    let mut cells = Vec::new();
    let mut choice = vec![0u8; n_y];
    loop {
        let mut vertex = vec![BigInt::zero(); ambient];
        for j in 0..=n {
            vertex[j] = u_num[j].clone();
        }
        for (local, &j) in data.alive.iter().enumerate() {
            vertex[n + 1 + local] = u_num[j].clone();
        }
        let mut rays: Vec<Vec<BigInt>> = Vec::new();
        for local in 0..n_y {
            let j = data.alive[local];
            let mut ray = vec![BigInt::zero(); ambient];
            match choice[local] {
                0 => {
                    // both valuations drop below the target together
                    ray[j] = -BigInt::one();
                    ray[n + 1 + local] = -BigInt::one();
                }
                1 => {
                    ray[j] = BigInt::one();
                }
                _ => {
                    ray[n + 1 + local] = BigInt::one();
                }
            }
            rays.push(ray);
        }
        cells.push(Cell {
            vertex,
            vertex_den: u_den.clone(),
            rays,
            lines: Vec::new(),
            weight: BigInt::one(),
        });
        let mut pos = 0usize;
        loop {
            if pos == n_y {
                return Ok(WeightedFan::new(ambient, n_y, cells));
            }
            if choice[pos] < 2 {
                choice[pos] += 1;
                for c in choice.iter_mut().take(pos) {
                    *c = 0;
                }
                break;
            }
            pos += 1;
        }
    }
}

/// Result of the tropical critical-point computation.
pub struct CriticalValuations {
    /// full intersection points in (x block, alive y block) coordinates
    pub points: Vec<IntersectionPoint>,
    /// projections to the x block with aggregated multiplicities
    pub valuations: Vec<(Vec<BigInt>, BigInt, BigInt)>,
    pub total_multiplicity: BigInt,
    pub alive: Vec<usize>,
}

/// Tropical critical-point valuations: stable intersection of the order-1
/// tropical conormal cycle with the tropicalized data locus for a generic
/// data vector of the declared valuation.
pub fn critical_valuations(
    embedding: &ToricEmbedding,
    u_num: &[BigInt],
    u_den: &BigInt,
    seed: u64,
    budget: usize,
) -> Result<CriticalValuations> {
    let (data, conormal) = trop_conormal(embedding, 1, budget)?;
    let zu = trop_data_locus(&data, u_num, u_den, budget)?;
    let stable = tropical_cycle::stable_intersection(&conormal, &zu, seed)?;
    let n = data.n;
    let mut points = Vec::new();
    let mut proj: BTreeMap<(Vec<BigInt>, BigInt), BigInt> = BTreeMap::new();
    let mut total = BigInt::zero();
    for cell in &stable.cells {
        total += &cell.weight;
        let xpart: Vec<BigInt> = cell.vertex[..=n].to_vec();
        let key = reduce_point(xpart, cell.vertex_den.clone());
        *proj.entry(key).or_insert_with(BigInt::zero) += &cell.weight;
        points.push(IntersectionPoint {
            point: cell.vertex.clone(),
            den: cell.vertex_den.clone(),
            multiplicity: cell.weight.clone(),
        });
    }
    let valuations = proj.into_iter().map(|((pt, den), mult)| (pt, den, mult)).collect();
    Ok(CriticalValuations { points, valuations, total_multiplicity: total, alive: data.alive })
}

fn reduce_point(mut num: Vec<BigInt>, mut den: BigInt) -> (Vec<BigInt>, BigInt) {
    let mut g = den.clone();
    for v in &num {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for v in num.iter_mut() {
            *v /= &g;
        }
        den /= &g;
    }
    (num, den)
}
