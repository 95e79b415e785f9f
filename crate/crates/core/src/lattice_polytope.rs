//! Exact convex hulls of small lattice point configurations, with the face
//! data consumed by the toric degree formulas: vertices, edges with lattice
//! lengths, facets, normalized face volumes, and hulls of interior points.
//!
//! Hulls are computed by brute-force supporting-hyperplane enumeration over
//! subsets, faces by recursing into facet lattices.  Intended for desk-scale
//! configurations (at most 64 points, dimension at most 4).

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{self, IntegerMatrix};

/// An edge of a polytope: endpoint vertex ids, primitive direction, and the
/// number of lattice steps between the endpoints.
#[derive(Debug, Clone)]
pub struct Edge {
    pub ends: (usize, usize),
    pub direction: Vec<BigInt>,
    pub lattice_length: BigInt,
}

/// A facet given by a supporting functional: `<normal, x> >= offset` holds
/// on the polytope with equality exactly on the facet.
#[derive(Debug, Clone)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
    /// Indices into `points` of the points lying on the facet.
    pub point_ids: Vec<usize>,
}

/// Full-dimensional lattice polytope with its face data.
#[derive(Debug, Clone)]
pub struct LatticePolytope {
    dim: usize,
    points: Vec<Vec<BigInt>>,
    vertex_ids: Vec<usize>,
    edges: Vec<Edge>,
    facets: Vec<Facet>,
}

/// Normalized face volumes: `p` is m!·(Euclidean volume), `e` the sum of
/// edge lattice lengths, `f` the sum of normalized facet volumes, `v` the
/// vertex count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceVolumeData {
    pub p: BigInt,
    pub f: BigInt,
    pub e: BigInt,
    pub v: usize,
}

pub fn points_from_i64(pts: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    pts.iter().map(|p| p.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

impl LatticePolytope {
    /// Exact hull of a full-dimensional configuration.
    pub fn hull(points: Vec<Vec<BigInt>>) -> Result<Self> {
        if points.len() > 64 {
            return Err(Error::BudgetExceeded(format!(
                "hull limited to 64 points, got {}",
                points.len()
            )));
        }
        Self::hull_unbounded(points)
    }

    /// Hull without the input-size cap; used internally where the point set
    /// is derived (interior lattice points) rather than user input.
    fn hull_unbounded(points: Vec<Vec<BigInt>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("hull of empty point set".to_string()));
        }
        if points.len() > 512 {
            return Err(Error::BudgetExceeded(format!(
                "hull limited to 512 derived points, got {}",
                points.len()
            )));
        }
        let dim = points[0].len();
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidInput("points of mixed dimension".to_string()));
        }
        if dim > 4 {
            return Err(Error::Unsupported("hull limited to dimension 4".to_string()));
        }
        let mut points = points;
        points.sort();
        points.dedup();
        let adim = affine_dim(&points);
        if adim != dim {
            return Err(Error::Degenerate { expected: dim, got: adim });
        }
        let facets = enumerate_facets(&points, dim);
        let (vertex_ids, edges) = faces_by_recursion(&points, dim, &facets)?;
        Ok(LatticePolytope { dim, points, vertex_ids, edges, facets })
    }

    pub fn hull_i64(pts: &[Vec<i64>]) -> Result<Self> {
        Self::hull(points_from_i64(pts))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<BigInt>] {
        &self.points
    }

    pub fn vertices(&self) -> Vec<Vec<BigInt>> {
        self.vertex_ids.iter().map(|&i| self.points[i].clone()).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, x) >= f.offset)
    }

    pub fn contains_strictly(&self, x: &[BigInt]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, x) > f.offset)
    }

    /// All lattice points of the polytope, sorted.
    pub fn lattice_points(&self) -> Vec<Vec<BigInt>> {
        self.scan_lattice(false)
    }

    /// Lattice points in the interior.
    pub fn interior_lattice_points(&self) -> Vec<Vec<BigInt>> {
        self.scan_lattice(true)
    }

    fn scan_lattice(&self, strict: bool) -> Vec<Vec<BigInt>> {
        let mut lo = vec![i64::MAX; self.dim];
        let mut hi = vec![i64::MIN; self.dim];
        for p in &self.points {
            for (c, x) in p.iter().enumerate() {
                let v = x.to_i64().expect("polytope coordinates exceed i64");
                lo[c] = lo[c].min(v);
                hi[c] = hi[c].max(v);
            }
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        'scan: loop {
            let cand: Vec<BigInt> = cur.iter().map(|&x| BigInt::from(x)).collect();
            let inside = if strict { self.contains_strictly(&cand) } else { self.contains(&cand) };
            if inside {
                out.push(cand);
            }
            for c in 0..self.dim {
                if cur[c] < hi[c] {
                    cur[c] += 1;
                    for (idx, prev) in cur.iter_mut().enumerate().take(c) {
                        *prev = lo[idx];
                    }
                    continue 'scan;
                }
            }
            break;
        }
        out.sort();
        out
    }

    /// Primitive edge directions at a vertex, as columns of a unimodular
    /// matrix; errors when the vertex cone is not simple or not unimodular.
    pub fn smooth_vertex_basis(&self, v: &[BigInt]) -> Result<IntegerMatrix> {
        let vid = self
            .vertex_ids
            .iter()
            .copied()
            .find(|&i| self.points[i] == v)
            .ok_or_else(|| Error::InvalidInput("not a vertex".to_string()))?;
        let mut dirs: Vec<Vec<BigInt>> = Vec::new();
        for e in &self.edges {
            if e.ends.0 == vid {
                dirs.push(e.direction.clone());
            } else if e.ends.1 == vid {
                dirs.push(e.direction.iter().map(|x| -x).collect());
            }
        }
        if dirs.len() != self.dim {
            return Err(Error::SingularVertex(format!(
                "vertex has {} edges in dimension {}",
                dirs.len(),
                self.dim
            )));
        }
        // deterministic order: lexicographically decreasing
        dirs.sort();
        dirs.reverse();
        let b = IntegerMatrix::from_cols(&dirs);
        let det = exact_linalg::determinant(&b);
        if !det.abs().is_one() {
            return Err(Error::SingularVertex(format!("vertex cone has index {}", det.abs())));
        }
        Ok(b)
    }

    /// Normalized volumes of all faces, grouped as (P, F, E, V).
    pub fn face_volume_data(&self) -> Result<FaceVolumeData> {
        if self.dim > 3 {
            return Err(Error::Unsupported("face volumes limited to dimension 3".to_string()));
        }
        let p = normalized_volume(&self.points, self.dim)?;
        let e: BigInt = if self.dim == 1 {
            p.clone()
        } else {
            self.edges.iter().map(|e| e.lattice_length.clone()).sum()
        };
        let f: BigInt = match self.dim {
            1 => BigInt::from(2),
            2 => e.clone(),
            _ => {
                let mut total = BigInt::zero();
                for facet in &self.facets {
                    let pts: Vec<Vec<BigInt>> =
                        facet.point_ids.iter().map(|&i| self.points[i].clone()).collect();
                    let (sub, _, _) = project_to_affine_lattice(&pts)?;
                    total += normalized_volume(&sub, self.dim - 1)?;
                }
                total
            }
        };
        Ok(FaceVolumeData { p, f, e, v: self.vertex_ids.len() })
    }

    /// Hull of the interior lattice points with its volume data
    /// `(P1, F1)`; both are zero unless that hull is full-dimensional.
    pub fn interior_hull(&self) -> Result<(Option<LatticePolytope>, BigInt, BigInt)> {
        if self.dim != 3 {
            return Err(Error::Unsupported("interior hull defined for dimension 3".to_string()));
        }
        let pts = self.interior_lattice_points();
        if pts.is_empty() {
            return Ok((None, BigInt::zero(), BigInt::zero()));
        }
        if affine_dim(&pts) < 3 {
            return Ok((None, BigInt::zero(), BigInt::zero()));
        }
        let hull = LatticePolytope::hull_unbounded(pts)?;
        let data = hull.face_volume_data()?;
        Ok((Some(hull), data.p, data.f))
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn affine_dim(points: &[Vec<BigInt>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    exact_linalg::rank(&IntegerMatrix::from_rows(diffs))
}

/// All supporting hyperplanes spanned by point subsets, oriented inward.
fn enumerate_facets(points: &[Vec<BigInt>], dim: usize) -> Vec<Facet> {
    let n = points.len();
    let mut facets: Vec<Facet> = Vec::new();
    let mut seen: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    if n < dim {
        return facets;
    }
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        if let Some((mut normal, mut offset)) = hyperplane_through(points, &idx) {
            let mut pos = false;
            let mut neg = false;
            for p in points {
                let s = dot(&normal, p) - &offset;
                if s.is_positive() {
                    pos = true;
                } else if s.is_negative() {
                    neg = true;
                }
                if pos && neg {
                    break;
                }
            }
            if pos != neg {
                if neg {
                    normal = normal.iter().map(|x| -x).collect();
                    offset = -offset;
                }
                if !seen.contains(&(normal.clone(), offset.clone())) {
                    seen.push((normal.clone(), offset.clone()));
                    let point_ids =
                        (0..n).filter(|&i| dot(&normal, &points[i]) == offset).collect();
                    facets.push(Facet { normal, offset, point_ids });
                }
            }
        }
        // next index subset of size dim
        let mut i = dim;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if idx[i] + 1 <= n - (dim - i) {
                idx[i] += 1;
                for j in i + 1..dim {
                    idx[j] = idx[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return facets;
        }
    }
}

/// Primitive form of the hyperplane through the given points, if they
/// affinely span one.
fn hyperplane_through(points: &[Vec<BigInt>], idx: &[usize]) -> Option<(Vec<BigInt>, BigInt)> {
    let base = &points[idx[0]];
    let rows: Vec<Vec<BigInt>> = idx[1..]
        .iter()
        .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let m = if rows.is_empty() {
        IntegerMatrix::zero(0, base.len())
    } else {
        IntegerMatrix::from_rows(rows)
    };
    let k = exact_linalg::kernel_basis(&m);
    if k.cols() != 1 {
        return None;
    }
    let mut normal = k.col(0);
    let g = normal.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g > BigInt::one() {
        normal = normal.iter().map(|x| x / &g).collect();
    }
    let offset = dot(&normal, base);
    Some((normal, offset))
}

/// Vertices and edges, obtained by recursing through facets.
fn faces_by_recursion(
    points: &[Vec<BigInt>],
    dim: usize,
    facets: &[Facet],
) -> Result<(Vec<usize>, Vec<Edge>)> {
    if dim == 1 {
        let mut lo = 0usize;
        let mut hi = 0usize;
        for (i, p) in points.iter().enumerate() {
            if p[0] < points[lo][0] {
                lo = i;
            }
            if p[0] > points[hi][0] {
                hi = i;
            }
        }
        let diff = &points[hi][0] - &points[lo][0];
        let edge = Edge { ends: (lo, hi), direction: vec![BigInt::one()], lattice_length: diff };
        return Ok((vec![lo, hi], vec![edge]));
    }
    let mut vertex_ids: Vec<usize> = Vec::new();
    let mut edge_keys: Vec<(usize, usize)> = Vec::new();
    for facet in facets {
        let pts: Vec<Vec<BigInt>> =
            facet.point_ids.iter().map(|&i| points[i].clone()).collect();
        let (sub, _, _) = project_to_affine_lattice(&pts)?;
        let sub_facets = enumerate_facets(&sub, dim - 1);
        let (vids, es) = faces_by_recursion(&sub, dim - 1, &sub_facets)?;
        for v in vids {
            let gid = facet.point_ids[v];
            if !vertex_ids.contains(&gid) {
                vertex_ids.push(gid);
            }
        }
        for e in es {
            let a = facet.point_ids[e.ends.0];
            let b = facet.point_ids[e.ends.1];
            let key = (a.min(b), a.max(b));
            if !edge_keys.contains(&key) {
                edge_keys.push(key);
            }
        }
    }
    vertex_ids.sort_unstable();
    edge_keys.sort_unstable();
    let edges = edge_keys
        .into_iter()
        .map(|(a, b)| {
            let diff: Vec<BigInt> =
                points[b].iter().zip(&points[a]).map(|(x, y)| x - y).collect();
            let g = diff.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let direction = diff.iter().map(|x| x / &g).collect();
            Edge { ends: (a, b), direction, lattice_length: g }
        })
        .collect();
    Ok((vertex_ids, edges))
}

/// Re-coordinatize points lying in a common affine subspace onto the
/// saturated lattice of their direction space.  Returns the new points, the
/// base point, and the lattice basis used.
fn project_to_affine_lattice(
    points: &[Vec<BigInt>],
) -> Result<(Vec<Vec<BigInt>>, Vec<BigInt>, IntegerMatrix)> {
    let base = points[0].clone();
    let diff_cols: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect())
        .collect();
    let diffs = IntegerMatrix::from_cols(&diff_cols);
    let basis = exact_linalg::saturation_basis(&diffs);
    let coords = exact_linalg::solve_in_lattice(&basis, &diffs)?;
    let new_points: Vec<Vec<BigInt>> = (0..points.len()).map(|j| coords.col(j)).collect();
    Ok((new_points, base, basis))
}

/// Normalized lattice volume (dim!·Euclidean) of a full-dimensional hull by
/// recursive triangulation.
fn normalized_volume(points: &[Vec<BigInt>], dim: usize) -> Result<BigInt> {
    let simplices = triangulate(points, dim)?;
    let mut total = BigInt::zero();
    for s in simplices {
        let rows: Vec<Vec<BigInt>> = s[1..]
            .iter()
            .map(|p| p.iter().zip(&s[0]).map(|(a, b)| a - b).collect())
            .collect();
        total += exact_linalg::determinant(&IntegerMatrix::from_rows(rows)).abs();
    }
    Ok(total)
}

fn triangulate(points: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<Vec<BigInt>>>> {
    if dim == 1 {
        let mut lo = points[0].clone();
        let mut hi = points[0].clone();
        for p in points {
            if p[0] < lo[0] {
                lo = p.clone();
            }
            if p[0] > hi[0] {
                hi = p.clone();
            }
        }
        return Ok(vec![vec![lo, hi]]);
    }
    let facets = enumerate_facets(points, dim);
    let (vids, _) = faces_by_recursion(points, dim, &facets)?;
    let apex = points[vids[0]].clone();
    let mut out = Vec::new();
    for facet in &facets {
        if dot(&facet.normal, &apex) == facet.offset {
            continue;
        }
        let pts: Vec<Vec<BigInt>> =
            facet.point_ids.iter().map(|&i| points[i].clone()).collect();
        let (sub, base, basis) = project_to_affine_lattice(&pts)?;
        for simplex in triangulate(&sub, dim - 1)? {
            let mut lifted: Vec<Vec<BigInt>> = vec![apex.clone()];
            for c in simplex {
                let offset = basis.mul_vec(&c);
                let pt: Vec<BigInt> = base.iter().zip(&offset).map(|(b, o)| b + o).collect();
                lifted.push(pt);
            }
            out.push(lifted);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn hexagon_points() -> Vec<Vec<i64>> {
        vec![
            vec![0, 0],
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![1, 2],
            vec![2, 1],
            vec![2, 2],
        ]
    }

    #[test]
    fn hull_segment() {
        let p = LatticePolytope::hull_i64(&[vec![0], vec![1], vec![2], vec![3]]).unwrap();
        let vs = p.vertices();
        assert_eq!(vs.len(), 2);
        assert!(vs.contains(&big(&[0])) && vs.contains(&big(&[3])));
        assert_eq!(p.edges().len(), 1);
        assert_eq!(p.edges()[0].lattice_length, BigInt::from(3));
    }

    #[test]
    fn hull_hexagon() {
        let p = LatticePolytope::hull_i64(&hexagon_points()).unwrap();
        assert_eq!(p.vertex_count(), 6);
        assert_eq!(p.edges().len(), 6);
        assert_eq!(p.facets().len(), 6);
    }

    #[test]
    fn hull_grid_square() {
        let mut pts = Vec::new();
        for x in 0..3i64 {
            for y in 0..3i64 {
                pts.push(vec![x, y]);
            }
        }
        let p = LatticePolytope::hull_i64(&pts).unwrap();
        let vs = p.vertices();
        assert_eq!(vs.len(), 4);
        for v in [[0, 0], [2, 0], [0, 2], [2, 2]] {
            assert!(vs.contains(&big(&v)));
        }
    }

    #[test]
    fn hull_degenerate_reports_dim() {
        let r = LatticePolytope::hull_i64(&[vec![0, 0], vec![1, 1], vec![2, 2]]);
        assert_eq!(r.unwrap_err(), Error::Degenerate { expected: 2, got: 1 });
    }

    #[test]
    fn vertex_basis_unit_square() {
        let p =
            LatticePolytope::hull_i64(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let b = p.smooth_vertex_basis(&big(&[0, 0])).unwrap();
        assert_eq!(b, IntegerMatrix::identity(2));
    }

    #[test]
    fn vertex_basis_hexagon_figure_frame() {
        // hexagon with vertices (1,0),(2,0),(2,1),(1,2),(0,2),(0,1)
        let pts = vec![
            vec![1, 0],
            vec![2, 0],
            vec![2, 1],
            vec![1, 1],
            vec![1, 2],
            vec![0, 2],
            vec![0, 1],
        ];
        let p = LatticePolytope::hull_i64(&pts).unwrap();
        let b = p.smooth_vertex_basis(&big(&[0, 2])).unwrap();
        let cols: Vec<Vec<BigInt>> = (0..2).map(|j| b.col(j)).collect();
        assert!(cols.contains(&big(&[0, -1])));
        assert!(cols.contains(&big(&[1, 0])));
    }

    #[test]
    fn vertex_basis_dilated_simplex() {
        let p = LatticePolytope::hull_i64(&[
            vec![0, 0],
            vec![1, 0],
            vec![2, 0],
            vec![0, 1],
            vec![1, 1],
            vec![0, 2],
        ])
        .unwrap();
        let b = p.smooth_vertex_basis(&big(&[2, 0])).unwrap();
        let cols: Vec<Vec<BigInt>> = (0..2).map(|j| b.col(j)).collect();
        assert!(cols.contains(&big(&[-1, 0])));
        assert!(cols.contains(&big(&[-1, 1])));
    }

    #[test]
    fn volumes_cube() {
        for a in [1i64, 2, 3] {
            let mut pts = Vec::new();
            for x in [0, a] {
                for y in [0, a] {
                    for z in [0, a] {
                        pts.push(vec![x, y, z]);
                    }
                }
            }
            let p = LatticePolytope::hull_i64(&pts).unwrap();
            let d = p.face_volume_data().unwrap();
            assert_eq!(d.p, BigInt::from(6 * a * a * a));
            assert_eq!(d.f, BigInt::from(12 * a * a));
            assert_eq!(d.e, BigInt::from(12 * a));
            assert_eq!(d.v, 8);
        }
    }

    #[test]
    fn volumes_hexagon() {
        let p = LatticePolytope::hull_i64(&hexagon_points()).unwrap();
        let d = p.face_volume_data().unwrap();
        assert_eq!(d.p, BigInt::from(6));
        assert_eq!(d.e, BigInt::from(6));
        assert_eq!(d.v, 6);
    }

    #[test]
    fn volumes_segment() {
        for dlen in 1..=5i64 {
            let pts: Vec<Vec<i64>> = (0..=dlen).map(|x| vec![x]).collect();
            let p = LatticePolytope::hull_i64(&pts).unwrap();
            let d = p.face_volume_data().unwrap();
            assert_eq!(d.p, BigInt::from(dlen));
            assert_eq!(d.v, 2);
        }
    }

    #[test]
    fn interior_hull_cube() {
        for a in [2i64, 3, 4] {
            let mut pts = Vec::new();
            for x in [0, a] {
                for y in [0, a] {
                    for z in [0, a] {
                        pts.push(vec![x, y, z]);
                    }
                }
            }
            let p = LatticePolytope::hull_i64(&pts).unwrap();
            let (hull, p1, f1) = p.interior_hull().unwrap();
            let s = a - 2;
            if s == 0 {
                assert!(hull.is_none());
                assert!(p1.is_zero() && f1.is_zero());
            } else {
                assert!(hull.is_some());
                assert_eq!(p1, BigInt::from(6 * s * s * s));
                assert_eq!(f1, BigInt::from(12 * s * s));
            }
        }
    }

    #[test]
    fn interior_hull_unit_cube_empty() {
        let mut pts = Vec::new();
        for x in [0, 1] {
            for y in [0, 1] {
                for z in [0, 1] {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        let p = LatticePolytope::hull_i64(&pts).unwrap();
        let (hull, p1, f1) = p.interior_hull().unwrap();
        assert!(hull.is_none());
        assert!(p1.is_zero() && f1.is_zero());
    }

    #[test]
    fn interior_hull_dilated_simplex() {
        // interior of 2·(standard 3-simplex): enumeration oracle says empty
        let mut pts = Vec::new();
        for x in 0..=2i64 {
            for y in 0..=2i64 {
                for z in 0..=2i64 {
                    if x + y + z <= 2 {
                        pts.push(vec![x, y, z]);
                    }
                }
            }
        }
        let p = LatticePolytope::hull_i64(&pts).unwrap();
        let interior = p.interior_lattice_points();
        assert!(interior.is_empty());
        let (hull, p1, f1) = p.interior_hull().unwrap();
        assert!(hull.is_none());
        assert!(p1.is_zero() && f1.is_zero());
    }

    #[test]
    fn pick_consistency_polygons() {
        // P = 2*interior + boundary - 2 for lattice polygons
        let polys: Vec<Vec<Vec<i64>>> = vec![
            hexagon_points(),
            vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2]],
            vec![vec![0, 0], vec![3, 0], vec![0, 1], vec![3, 1]],
            vec![vec![0, 0], vec![4, 0], vec![0, 4], vec![4, 4]],
            vec![vec![0, 0], vec![2, 0], vec![0, 2]],
        ];
        for pts in polys {
            let p = LatticePolytope::hull_i64(&pts).unwrap();
            let d = p.face_volume_data().unwrap();
            let all = p.lattice_points();
            let interior = p.interior_lattice_points();
            let boundary = all.len() - interior.len();
            assert_eq!(d.p, BigInt::from(2 * interior.len() as i64 + boundary as i64 - 2));
        }
    }

    #[test]
    fn product_volume_boxes() {
        for (a, b) in [(1i64, 1i64), (2, 3), (3, 1)] {
            let p = LatticePolytope::hull_i64(&[
                vec![0, 0],
                vec![a, 0],
                vec![0, b],
                vec![a, b],
            ])
            .unwrap();
            let d = p.face_volume_data().unwrap();
            assert_eq!(d.p, BigInt::from(2 * a * b));
        }
    }

    #[test]
    fn all_points_satisfy_facets() {
        let p = LatticePolytope::hull_i64(&hexagon_points()).unwrap();
        for pt in p.points() {
            assert!(p.contains(pt));
        }
    }
}
