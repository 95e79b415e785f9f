//! Jet matrices of monomial embeddings, osculating dimensions, and the
//! fixed-point criterion for global k-osculation.
//!
//! A toric embedding is encoded by an integer matrix whose first row is all
//! ones and whose remaining rows hold the exponent vectors of the defining
//! monomials, one column per monomial.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::closed_forms::binomial;
use crate::error::{Error, Result};
use crate::exact_linalg::{self, IntegerMatrix};
use crate::lattice_polytope::LatticePolytope;

/// A monomial embedding of an m-torus into P^n, given by an
/// (m+1) x (n+1) exponent matrix with an all-ones first row.
#[derive(Debug, Clone)]
pub struct ToricEmbedding {
    a: IntegerMatrix,
    m: usize,
    n: usize,
}

/// Outcome of the global-osculation check at order k.
#[derive(Debug, Clone)]
pub struct OsculationReport {
    pub k: usize,
    /// Generic k-osculating dimension, rank(A^(k)) - 1.
    pub m_k: usize,
    /// Jet rank at each polytope vertex.
    pub vertex_ranks: Vec<(Vec<BigInt>, usize)>,
    pub globally_osculating: bool,
    pub k_regular: bool,
}

impl ToricEmbedding {
    pub fn new(a: IntegerMatrix) -> Result<Self> {
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::InvalidInput("empty exponent matrix".to_string()));
        }
        if !(0..a.cols()).all(|j| a.get(0, j).is_one()) {
            return Err(Error::InvalidInput("first row must be all ones".to_string()));
        }
        let m = a.rows() - 1;
        let n = a.cols() - 1;
        if exact_linalg::rank(&a) != m + 1 {
            return Err(Error::InvalidInput("exponent matrix must have full row rank".to_string()));
        }
        let mut cols: Vec<Vec<BigInt>> = (0..=n).map(|j| a.col(j)).collect();
        cols.sort();
        cols.dedup();
        if cols.len() != n + 1 {
            return Err(Error::InvalidInput("repeated monomial column".to_string()));
        }
        Ok(ToricEmbedding { a, m, n })
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntegerMatrix::from_rows_i64(rows))
    }

    /// Embedding by all lattice points of the given polytope, columns in
    /// sorted point order.
    pub fn from_polytope(p: &LatticePolytope) -> Result<Self> {
        let pts = p.lattice_points();
        Self::from_exponents(&pts)
    }

    /// Embedding from a list of exponent vectors (the ones row is added).
    pub fn from_exponents(pts: &[Vec<BigInt>]) -> Result<Self> {
        if pts.is_empty() {
            return Err(Error::InvalidInput("no exponent vectors".to_string()));
        }
        let m = pts[0].len();
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one(); pts.len()]];
        for i in 0..m {
            rows.push(pts.iter().map(|p| p[i].clone()).collect());
        }
        Self::new(IntegerMatrix::from_rows(rows))
    }

    /// Segre-Veronese embedding of P^{m_1} x ... x P^{m_r} by the line
    /// bundle O(d_1,...,d_r); columns run over the product of the dilated
    /// simplices, last factor slowest.
    pub fn segre_veronese(m_vec: &[usize], d_vec: &[usize]) -> Result<Self> {
        if m_vec.len() != d_vec.len() || m_vec.is_empty() {
            return Err(Error::InvalidInput("factor lists of different lengths".to_string()));
        }
        let factor_points: Vec<Vec<Vec<i64>>> =
            m_vec.iter().zip(d_vec).map(|(&m, &d)| simplex_points(m, d)).collect();
        let mut exps: Vec<Vec<i64>> = vec![Vec::new()];
        for f in &factor_points {
            let mut next = Vec::with_capacity(exps.len() * f.len());
            for tail in f {
                for head in &exps {
                    let mut e = head.clone();
                    e.extend_from_slice(tail);
                    next.push(e);
                }
            }
            exps = next;
        }
        let pts: Vec<Vec<BigInt>> =
            exps.iter().map(|e| e.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_exponents(&pts)
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.a
    }

    /// Torus dimension m.
    pub fn torus_dim(&self) -> usize {
        self.m
    }

    /// Ambient projective dimension n.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Exponent vector of column j (the ones row dropped).
    pub fn exponent(&self, j: usize) -> Vec<BigInt> {
        (1..=self.m).map(|i| self.a.get(i, j).clone()).collect()
    }

    pub fn exponents(&self) -> Vec<Vec<BigInt>> {
        (0..=self.n).map(|j| self.exponent(j)).collect()
    }

    /// Hull of the exponent configuration.
    pub fn polytope(&self) -> Result<LatticePolytope> {
        LatticePolytope::hull(self.exponents())
    }
}

/// Multi-indices over m variables with |alpha| <= k in graded
/// lexicographic order (degree ascending, lexicographically decreasing
/// within a degree); the zero index comes first.
pub fn multi_indices(m: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..=k as u32 {
        let mut level = Vec::new();
        compositions(m, deg, &mut vec![0u32; m], 0, &mut level);
        level.sort();
        level.reverse();
        out.extend(level);
    }
    out
}

fn compositions(m: usize, deg: u32, cur: &mut Vec<u32>, pos: usize, out: &mut Vec<Vec<u32>>) {
    if pos == m {
        if deg == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for v in 0..=deg {
        cur[pos] = v;
        compositions(m, deg - v, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

fn falling_factorial(a: &BigInt, e: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..e {
        acc *= a - BigInt::from(i);
    }
    acc
}

/// Order-k jet matrix of the embedding at the generic torus point: rows
/// indexed by multi-indices |alpha| <= k, entry (alpha, j) the falling
/// factorial product of the j-th exponent vector.  The 1/|alpha|!
/// normalization is dropped; row span and kernel are unaffected.
pub fn jet_matrix(embedding: &ToricEmbedding, k: usize) -> IntegerMatrix {
    assert!(k >= 1, "jet order must be at least 1");
    let m = embedding.torus_dim();
    let n = embedding.ambient_dim();
    let idx = multi_indices(m, k);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(idx.len());
    for alpha in &idx {
        let mut row = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut entry = BigInt::one();
            for (i, &e) in alpha.iter().enumerate() {
                if e > 0 {
                    entry *= falling_factorial(embedding.matrix().get(i + 1, j), e);
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
}

/// Generic k-osculating dimension m_k = rank A^(k) - 1.
pub fn osculating_dimension(embedding: &ToricEmbedding, k: usize) -> usize {
    exact_linalg::rank(&jet_matrix(embedding, k)) - 1
}

/// Closed-form k-osculating dimension of the Segre-Veronese embedding of
/// P^{m_1} x ... x P^{m_r} with multidegree d.
pub fn segre_veronese_oscdim(m_vec: &[usize], d_vec: &[usize], k: usize) -> BigInt {
    let total_d: usize = d_vec.iter().sum();
    if k > total_d {
        let mut prod = BigInt::one();
        for (&m, &d) in m_vec.iter().zip(d_vec) {
            prod *= binomial((m + d) as u64, d as u64);
        }
        return prod - 1;
    }
    let r = m_vec.len();
    let mut sum = BigInt::zero();
    for i in 1..=k {
        let mut parts = Vec::new();
        compositions(r, i as u32, &mut vec![0u32; r], 0, &mut parts);
        for s in parts {
            if s.iter().zip(d_vec).any(|(&si, &di)| si as usize > di) {
                continue;
            }
            let mut term = BigInt::one();
            for (ell, &si) in s.iter().enumerate() {
                term *= binomial((m_vec[ell] + si as usize - 1) as u64, si as u64);
            }
            sum += term;
        }
    }
    sum
}

/// Jet rank at a polytope vertex, computed combinatorially in the vertex
/// chart: the exponents re-expressed in the edge basis are the local
/// monomials, whose jets at the origin are Kronecker rows.
pub fn vertex_jet_rank(embedding: &ToricEmbedding, v: &[BigInt], k: usize) -> Result<usize> {
    let p = embedding.polytope()?;
    let basis = p.smooth_vertex_basis(v)?;
    let mut count = 0usize;
    for j in 0..=embedding.ambient_dim() {
        let exp = embedding.exponent(j);
        let diff: Vec<BigInt> = exp.iter().zip(v).map(|(a, b)| a - b).collect();
        let target = IntegerMatrix::from_cols(&[diff]);
        let coords = exact_linalg::solve_in_lattice(&basis, &target)
            .map_err(|_| Error::SingularVertex(format!("exponent column {j} outside the vertex lattice")))?;
        let mut total = BigInt::zero();
        let mut nonneg = true;
        for irow in 0..coords.rows() {
            let c = coords.get(irow, 0);
            if c < &BigInt::zero() {
                nonneg = false;
                break;
            }
            total += c;
        }
        if !nonneg {
            return Err(Error::SingularVertex(format!(
                "exponent column {j} outside the vertex cone"
            )));
        }
        if total <= BigInt::from(k as u64) {
            count += 1;
        }
    }
    Ok(count)
}

/// Global k-osculation check via the torus-fixed points: the embedding is
/// globally k-osculating iff every vertex jet rank matches the generic one.
pub fn check_global_osculation(embedding: &ToricEmbedding, k: usize) -> Result<OsculationReport> {
    let m_k = osculating_dimension(embedding, k);
    let p = embedding.polytope()?;
    let mut vertex_ranks = Vec::new();
    let mut global = true;
    for v in p.vertices() {
        let r = vertex_jet_rank(embedding, &v, k)?;
        if r != m_k + 1 {
            global = false;
        }
        vertex_ranks.push((v, r));
    }
    let full = binomial((embedding.torus_dim() + k) as u64, k as u64);
    let k_regular = global && BigInt::from(m_k as u64 + 1) == full;
    Ok(OsculationReport { k, m_k, vertex_ranks, globally_osculating: global, k_regular })
}

/// Human-readable map of vertex ranks, for report assembly.
pub fn vertex_rank_map(report: &OsculationReport) -> BTreeMap<String, usize> {
    report
        .vertex_ranks
        .iter()
        .map(|(v, r)| {
            let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            (format!("({})", coords.join(",")), *r)
        })
        .collect()
}

fn simplex_points(m: usize, d: usize) -> Vec<Vec<i64>> {
    // lattice points of d * standard m-simplex, sorted
    let mut out = Vec::new();
    let mut cur = vec![0i64; m];
    scan_simplex(m, d as i64, 0, &mut cur, &mut out);
    out.sort();
    out
}

fn scan_simplex(m: usize, d: i64, pos: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if pos == m {
        out.push(cur.clone());
        return;
    }
    let used: i64 = cur[..pos].iter().sum();
    for v in 0..=(d - used) {
        cur[pos] = v;
        scan_simplex(m, d, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn twisted_cubic() -> ToricEmbedding {
        ToricEmbedding::from_rows_i64(&[vec![1, 1, 1, 1], vec![0, 1, 2, 3]]).unwrap()
    }

    fn hexagon_embedding() -> ToricEmbedding {
        ToricEmbedding::from_rows_i64(&[
            vec![1, 1, 1, 1, 1, 1, 1],
            vec![0, 1, 0, 1, 1, 2, 2],
            vec![0, 0, 1, 1, 2, 1, 2],
        ])
        .unwrap()
    }

    #[test]
    fn jet_matrix_twisted_cubic() {
        let e = twisted_cubic();
        let j2 = jet_matrix(&e, 2);
        let expect = IntegerMatrix::from_rows_i64(&[
            vec![1, 1, 1, 1],
            vec![0, 1, 2, 3],
            vec![0, 0, 2, 6],
        ]);
        assert_eq!(j2, expect);
    }

    #[test]
    fn jet_matrix_order_one_is_a() {
        let e = hexagon_embedding();
        assert_eq!(jet_matrix(&e, 1), *e.matrix());
    }

    #[test]
    fn jet_matrix_hexagon_rank() {
        let e = hexagon_embedding();
        let j2 = jet_matrix(&e, 2);
        assert_eq!(j2.rows(), 6);
        assert_eq!(j2.cols(), 7);
        assert_eq!(exact_linalg::rank(&j2), 6);
    }

    #[test]
    fn jet_matrix_nested() {
        // A^(k-1) sits on top of A^(k)
        let e = hexagon_embedding();
        let j2 = jet_matrix(&e, 2);
        let j3 = jet_matrix(&e, 3);
        for i in 0..j2.rows() {
            assert_eq!(j2.row(i), j3.row(i));
        }
    }

    #[test]
    fn oscdim_examples() {
        assert_eq!(osculating_dimension(&twisted_cubic(), 2), 2);
        assert_eq!(osculating_dimension(&twisted_cubic(), 1), 1);
        let sv = ToricEmbedding::segre_veronese(&[1, 1, 1], &[1, 1, 2]).unwrap();
        assert_eq!(sv.ambient_dim(), 11);
        assert_eq!(osculating_dimension(&sv, 2), 7);
        assert_eq!(osculating_dimension(&sv, 1), 3);
    }

    #[test]
    fn segre_veronese_matrix_matches_reference() {
        let sv = ToricEmbedding::segre_veronese(&[1, 1, 1], &[1, 1, 2]).unwrap();
        let expect = IntegerMatrix::from_rows_i64(&[
            vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
            vec![0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
            vec![0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2],
        ]);
        assert_eq!(*sv.matrix(), expect);
    }

    #[test]
    fn sv_oscdim_formula() {
        assert_eq!(segre_veronese_oscdim(&[1], &[3], 2), BigInt::from(2));
        assert_eq!(segre_veronese_oscdim(&[1, 1, 1], &[1, 1, 2], 2), BigInt::from(7));
        // saturation case k > |d|
        assert_eq!(segre_veronese_oscdim(&[1, 2], &[1, 2], 4), BigInt::from(2 * 6 - 1));
    }

    #[test]
    fn sv_oscdim_matches_rank_on_grid() {
        // agreement with the jet-rank computation on small grids
        let cases: [(&[usize], &[usize]); 4] =
            [(&[1], &[4]), (&[2], &[2]), (&[1, 1], &[2, 3]), (&[1, 1, 1], &[1, 1, 2])];
        for (mv, dv) in cases {
            let e = ToricEmbedding::segre_veronese(mv, dv).unwrap();
            let kmax: usize = dv.iter().sum::<usize>() + 1;
            for k in 1..=kmax {
                assert_eq!(
                    BigInt::from(osculating_dimension(&e, k) as u64),
                    segre_veronese_oscdim(mv, dv, k),
                    "mismatch for {mv:?} {dv:?} k={k}"
                );
            }
        }
    }

    #[test]
    fn vertex_ranks_hexagon() {
        let e = hexagon_embedding();
        let zero = vec![BigInt::zero(), BigInt::zero()];
        assert_eq!(vertex_jet_rank(&e, &zero, 2).unwrap(), 4);
    }

    #[test]
    fn vertex_ranks_blowup_p1xp1() {
        // degree-17 surface: blow-up of P^1 x P^1 at a point
        let pts: Vec<Vec<i64>> = vec![
            vec![0, 0], vec![1, 0], vec![2, 0], vec![3, 0],
            vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1],
            vec![0, 2], vec![1, 2], vec![2, 2], vec![3, 2],
            vec![0, 3], vec![1, 3], vec![2, 3],
        ];
        let e = ToricEmbedding::from_exponents(&crate::lattice_polytope::points_from_i64(&pts))
            .unwrap();
        let v = vec![BigInt::zero(), BigInt::zero()];
        let w = vec![BigInt::from(3), BigInt::from(2)];
        assert_eq!(vertex_jet_rank(&e, &v, 2).unwrap(), 6);
        assert_eq!(vertex_jet_rank(&e, &w, 2).unwrap(), 5);
        let rep = check_global_osculation(&e, 2).unwrap();
        assert!(!rep.globally_osculating);
    }

    #[test]
    fn vertex_rank_twisted_cubic_segment() {
        let e = twisted_cubic();
        assert_eq!(vertex_jet_rank(&e, &[BigInt::zero()], 2).unwrap(), 3);
    }

    #[test]
    fn global_osculation_reports() {
        let rep = check_global_osculation(&twisted_cubic(), 2).unwrap();
        assert!(rep.globally_osculating);
        assert!(rep.k_regular);
        assert_eq!(rep.m_k, 2);

        let rep = check_global_osculation(&hexagon_embedding(), 2).unwrap();
        assert!(!rep.globally_osculating);
        assert_eq!(rep.m_k, 5);
    }

    #[test]
    fn sv_regular_iff_k_le_min_d() {
        let cases: [(&[usize], &[usize]); 3] =
            [(&[1], &[3]), (&[1, 1], &[2, 3]), (&[1, 1, 1], &[1, 1, 2])];
        for (mv, dv) in cases {
            let e = ToricEmbedding::segre_veronese(mv, dv).unwrap();
            let dmin = *dv.iter().min().unwrap();
            for k in 1..=(dv.iter().sum::<usize>()) {
                let rep = check_global_osculation(&e, k).unwrap();
                assert_eq!(rep.k_regular, k <= dmin, "{mv:?} {dv:?} k={k}");
            }
        }
    }

    #[test]
    fn monotone_osculating_dimension() {
        let e = hexagon_embedding();
        let mut prev = 0;
        for k in 1..=4 {
            let cur = osculating_dimension(&e, k);
            assert!(cur >= prev);
            prev = cur;
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(ToricEmbedding::from_rows_i64(&[vec![1, 2], vec![0, 1]]).is_err());
        assert!(ToricEmbedding::from_rows_i64(&[vec![1, 1], vec![0, 0]]).is_err());
    }
}
