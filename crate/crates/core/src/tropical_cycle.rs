//! Operations on weighted balanced cycles: push-forward along integer
//! linear maps with lattice multiplicities, stable intersection of
//! complementary-dimensional cycles by the fan displacement rule, degrees
//! of zero-dimensional cycles, and a balancing checker.
//!
//! Stable intersections are certified: a displacement that meets any cell
//! pair non-transversally is redrawn (at most 32 attempts) from a seeded
//! splitmix stream, so results are deterministic per seed.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{self, IntegerMatrix};
use crate::matroid_bergman::{Cell, WeightedFan};

/// Deterministic 64-bit stream.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn draw_vector(state: &mut u64, len: usize, bound: u64) -> Vec<BigInt> {
    (0..len)
        .map(|_| {
            let r = splitmix64(state);
            let mag = (r % bound) + 1;
            let sign = if (r >> 62) & 1 == 1 { -1i64 } else { 1i64 };
            BigInt::from(sign * mag as i64)
        })
        .collect()
}

/// Saturated lattice basis of the linear span of a cell.
pub fn saturated_span_basis(cell: &Cell) -> IntegerMatrix {
    let gens = cell.generator_matrix();
    exact_linalg::saturation_basis(&gens)
}

/// Image of a weighted cycle under an integer linear map, as a cycle: each
/// non-collapsing cell maps to its image with weight multiplied by the
/// index of the image lattice in its saturation; collapsing cells
/// contribute measure zero to the image and are dropped.
pub fn project_fan(f: &WeightedFan, v: &IntegerMatrix) -> Result<WeightedFan> {
    if v.cols() != f.ambient {
        return Err(Error::InvalidInput(
            "projection matrix columns must match the ambient dimension".to_string(),
        ));
    }
    let mut cells = Vec::new();
    for cell in &f.cells {
        let sat = saturated_span_basis(cell);
        let image_lattice = v.mul(&sat);
        if exact_linalg::rank(&image_lattice) < cell.dim() {
            continue; // collapsed: positive-dimensional fibers
        }
        let index = exact_linalg::index_in_saturation(&image_lattice);
        let map_vec = |x: &Vec<BigInt>| -> Vec<BigInt> { v.mul_vec(x) };
        let new_cell = Cell {
            vertex: v.mul_vec(&cell.vertex),
            vertex_den: cell.vertex_den.clone(),
            rays: cell.rays.iter().map(map_vec).collect(),
            lines: cell.lines.iter().map(map_vec).collect(),
            weight: &cell.weight * index,
        };
        cells.push(new_cell);
    }
    Ok(WeightedFan { ambient: v.rows(), dim: f.dim, cells })
}

/// Basis (columns) of the intersection of the column spans of `a` and `b`.
fn span_intersection(a: &IntegerMatrix, b: &IntegerMatrix) -> IntegerMatrix {
    if a.cols() == 0 || b.cols() == 0 {
        return IntegerMatrix::zero(a.rows(), 0);
    }
    let neg_b = {
        let mut m = b.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = -m.get(i, j);
                m.set(i, j, v);
            }
        }
        m
    };
    let stacked = a.hcat(&neg_b);
    let k = exact_linalg::kernel_basis(&stacked);
    let mut cols = Vec::new();
    for j in 0..k.cols() {
        let coeffs: Vec<BigInt> = (0..a.cols()).map(|i| k.get(i, j).clone()).collect();
        let mut vcol = vec![BigInt::zero(); a.rows()];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for r in 0..a.rows() {
                let add = c * a.get(r, i);
                vcol[r] += add;
            }
        }
        cols.push(vcol);
    }
    let m = IntegerMatrix::from_cols(&cols);
    if m.cols() == 0 {
        return IntegerMatrix::zero(a.rows(), 0);
    }
    exact_linalg::saturation_basis(&m)
}

/// The common lineality space of two cycles: the intersection of the line
/// spans of all their cells.
pub fn common_lineality(f1: &WeightedFan, f2: &WeightedFan) -> IntegerMatrix {
    let mut acc: Option<IntegerMatrix> = None;
    for cell in f1.cells.iter().chain(f2.cells.iter()) {
        let lines = if cell.lines.is_empty() {
            IntegerMatrix::zero(f1.ambient, 0)
        } else {
            IntegerMatrix::from_cols(&cell.lines)
        };
        acc = Some(match acc {
            None => lines,
            Some(prev) => span_intersection(&prev, &lines),
        });
        if acc.as_ref().map_or(false, |m| m.cols() == 0) {
            break;
        }
    }
    acc.unwrap_or_else(|| IntegerMatrix::zero(f1.ambient, 0))
}

/// Integer projection annihilating exactly the (saturated) column span of
/// `lattice`: maps Z^N onto Z^{N-c} with kernel the span.
pub fn quotient_projection(ambient: usize, lattice: &IntegerMatrix) -> IntegerMatrix {
    if lattice.cols() == 0 {
        return IntegerMatrix::identity(ambient);
    }
    exact_linalg::kernel_basis(&lattice.transpose()).transpose()
}

/// Quotient a cycle by a lineality space contained in every cell.
fn quotient_cycle(f: &WeightedFan, proj: &IntegerMatrix, c: usize) -> Result<WeightedFan> {
    let mut cells = Vec::with_capacity(f.cells.len());
    for cell in &f.cells {
        // rays map through; lines are reduced to an independent set
        let new_rays: Vec<Vec<BigInt>> = cell.rays.iter().map(|r| proj.mul_vec(r)).collect();
        let mapped_lines: Vec<Vec<BigInt>> = cell.lines.iter().map(|l| proj.mul_vec(l)).collect();
        let mut new_lines: Vec<Vec<BigInt>> = Vec::new();
        let mut current_rank = 0usize;
        for l in mapped_lines {
            let mut candidate = new_lines.clone();
            candidate.push(l.clone());
            let r = exact_linalg::rank(&IntegerMatrix::from_cols(&candidate));
            if r > current_rank {
                current_rank = r;
                new_lines.push(l);
            }
        }
        let expected = cell.dim().checked_sub(c).ok_or_else(|| {
            Error::Unsupported("cell of lower dimension than the common lineality".to_string())
        })?;
        let new_cell = Cell {
            vertex: proj.mul_vec(&cell.vertex),
            vertex_den: cell.vertex_den.clone(),
            rays: new_rays,
            lines: new_lines,
            weight: cell.weight.clone(),
        };
        if new_cell.dim() != expected
            || exact_linalg::rank(&new_cell.generator_matrix()) != expected
        {
            return Err(Error::Unsupported(
                "cell does not contain the common lineality".to_string(),
            ));
        }
        cells.push(new_cell);
    }
    Ok(WeightedFan { ambient: proj.rows(), dim: f.dim - c, cells })
}

/// A single intersection point with its multiplicity.
#[derive(Debug, Clone)]
pub struct IntersectionPoint {
    pub point: Vec<BigInt>,
    pub den: BigInt,
    pub multiplicity: BigInt,
}

/// Stable intersection of two pure cycles whose dimensions are
/// complementary after quotienting their common lineality.  Returns the
/// zero-dimensional intersection cycle (in the quotient coordinates when a
/// quotient was taken).
pub fn stable_intersection(f1: &WeightedFan, f2: &WeightedFan, seed: u64) -> Result<WeightedFan> {
    if f1.ambient != f2.ambient {
        return Err(Error::InvalidInput("ambient dimension mismatch".to_string()));
    }
    let lin = common_lineality(f1, f2);
    let c = lin.cols();
    let (g1, g2, ambient) = if c > 0 {
        let proj = quotient_projection(f1.ambient, &lin);
        let q1 = quotient_cycle(f1, &proj, c)?;
        let q2 = quotient_cycle(f2, &proj, c)?;
        let amb = proj.rows();
        (q1, q2, amb)
    } else {
        (f1.clone(), f2.clone(), f1.ambient)
    };
    let expected = g1.dim as i64 + g2.dim as i64 - ambient as i64;
    if expected < 0 {
        return Ok(WeightedFan { ambient, dim: 0, cells: Vec::new() });
    }
    if expected > 0 {
        return Err(Error::Unsupported(
            "stable intersection of positive expected dimension".to_string(),
        ));
    }
    let points = displaced_intersection(&g1, &g2, ambient, seed)?;
    let cells = points
        .into_iter()
        .map(|pt| Cell {
            vertex: pt.point,
            vertex_den: pt.den,
            rays: Vec::new(),
            lines: Vec::new(),
            weight: pt.multiplicity,
        })
        .collect();
    Ok(WeightedFan { ambient, dim: 0, cells })
}

/// Fan displacement rule for complementary dimensions: for a generic
/// displacement w, a cell pair contributes when the displaced cells meet;
/// the contribution sits at the limit point with weight
/// m1 * m2 * [Z^N : Z_sigma + Z_tau].
fn displaced_intersection(
    g1: &WeightedFan,
    g2: &WeightedFan,
    ambient: usize,
    seed: u64,
) -> Result<Vec<IntersectionPoint>> {
    'attempt: for attempt in 0..32u64 {
        let mut state = seed.wrapping_add(attempt.wrapping_mul(0x1234_5678_9abc_def1));
        let w = draw_vector(&mut state, ambient, 1_000_003);
        let mut found: BTreeMap<(Vec<BigInt>, BigInt), BigInt> = BTreeMap::new();
        for c1 in &g1.cells {
            for c2 in &g2.cells {
                match pair_contribution(c1, c2, ambient, &w) {
                    PairOutcome::Skip => {}
                    PairOutcome::NonGeneric => continue 'attempt,
                    PairOutcome::Point { point, den, mult } => {
                        *found.entry((point, den)).or_insert_with(BigInt::zero) += mult;
                    }
                }
            }
        }
        let points = found
            .into_iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|((point, den), multiplicity)| IntersectionPoint { point, den, multiplicity })
            .collect();
        return Ok(points);
    }
    Err(Error::GenericityExhausted)
}

enum PairOutcome {
    Skip,
    NonGeneric,
    Point { point: Vec<BigInt>, den: BigInt, mult: BigInt },
}

/// Solve sigma ∩ (tau + eps*w) for a symbolic infinitesimal eps > 0.
fn pair_contribution(c1: &Cell, c2: &Cell, ambient: usize, w: &[BigInt]) -> PairOutcome {
    let d1 = c1.dim();
    let d2 = c2.dim();
    if d1 + d2 != ambient {
        return PairOutcome::Skip;
    }
    // columns: [gens(c1) | -gens(c2)], rhs: (v2 - v1) + eps*w
    let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(ambient);
    cols.extend(c1.rays.iter().cloned());
    cols.extend(c1.lines.iter().cloned());
    for g in c2.rays.iter().chain(c2.lines.iter()) {
        cols.push(g.iter().map(|x| -x).collect());
    }
    let mat = IntegerMatrix::from_cols(&cols);
    let mat_rank = exact_linalg::rank(&mat);
    if mat_rank < ambient {
        // spans not transversal: generic displaced cells must miss
        let b0 = rhs_const(c1, c2);
        let mut aug = cols.clone();
        aug.push(b0);
        if exact_linalg::rank(&IntegerMatrix::from_cols(&aug)) == mat_rank {
            let mut aug2 = cols.clone();
            aug2.push(w.to_vec());
            if exact_linalg::rank(&IntegerMatrix::from_cols(&aug2)) == mat_rank {
                return PairOutcome::NonGeneric;
            }
        }
        return PairOutcome::Skip;
    }
    let b0 = rhs_const(c1, c2);
    let sol0 = exact_linalg::solve_rational(&mat, &b0);
    let sol1 = exact_linalg::solve_rational(&mat, w);
    let (Some((x0, den0)), Some((x1, _den1))) = (sol0, sol1) else {
        return PairOutcome::Skip;
    };
    // coefficient i is x0[i]/den0 + eps * x1[i]/den1; ray coefficients must
    // be >= 0 for small eps > 0, exact zero in both orders is non-generic
    let ray_range: Vec<usize> = (0..c1.rays.len()).chain(d1..d1 + c2.rays.len()).collect();
    for &i in &ray_range {
        match x0[i].sign() {
            num_bigint::Sign::Minus => return PairOutcome::Skip,
            num_bigint::Sign::NoSign => match x1[i].sign() {
                num_bigint::Sign::Minus => return PairOutcome::Skip,
                num_bigint::Sign::NoSign => return PairOutcome::NonGeneric,
                num_bigint::Sign::Plus => {}
            },
            num_bigint::Sign::Plus => {}
        }
    }
    // limit point: v1 + (eps^0 coefficients) over the c1 generators
    let mut num: Vec<BigInt> = c1.vertex.iter().map(|v| v * &den0).collect();
    let mut den = &c1.vertex_den * &den0;
    let gens1: Vec<&Vec<BigInt>> = c1.rays.iter().chain(c1.lines.iter()).collect();
    for (i, g) in gens1.iter().enumerate() {
        let coef = &x0[i] * &c1.vertex_den;
        for (row, gval) in g.iter().enumerate() {
            num[row] += &coef * gval;
        }
    }
    let mut g = den.clone();
    for v in &num {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        num = num.iter().map(|v| v / &g).collect();
        den = &den / &g;
    }
    if den.is_negative() {
        num = num.iter().map(|v| -v).collect();
        den = -den;
    }
    // lattice index of Z_sigma + Z_tau
    let sat1 = saturated_span_basis(c1);
    let sat2 = saturated_span_basis(c2);
    let joint = sat1.hcat(&sat2);
    let index = exact_linalg::determinant(&joint).abs();
    if index.is_zero() {
        return PairOutcome::Skip;
    }
    let mult = &c1.weight * &c2.weight * index;
    PairOutcome::Point { point: num, den, mult }
}

fn rhs_const(c1: &Cell, c2: &Cell) -> Vec<BigInt> {
    // v2/v2d - v1/v1d, cleared of denominators; positive rescaling of the
    // rhs only rescales the intersection point along the pencil, which is
    // harmless for cones and handled via vertex_den for translated cells
    c2.vertex
        .iter()
        .zip(&c1.vertex)
        .map(|(v2, v1)| v2 * &c1.vertex_den - v1 * &c2.vertex_den)
        .collect()
}

/// Degree of a zero-dimensional cycle.
pub fn degree(f: &WeightedFan) -> Result<BigInt> {
    f.degree()
}

/// Check the balancing condition at sampled codimension-one walls: the
/// weighted primitive normal vectors of the cells around a wall must sum
/// to an element of the wall's span.  Cells may overlap (cycle semantics:
/// weights of covering cells add).
pub fn check_balancing(f: &WeightedFan, samples: usize, seed: u64) -> Result<()> {
    if f.dim == 0 {
        return Ok(());
    }
    let mut state = seed;
    let with_rays: Vec<usize> =
        (0..f.cells.len()).filter(|&i| !f.cells[i].rays.is_empty()).collect();
    if with_rays.is_empty() {
        return Ok(()); // pure linear spaces balance trivially
    }
    for _ in 0..samples {
        let ci = with_rays[(splitmix64(&mut state) % with_rays.len() as u64) as usize];
        let cell = &f.cells[ci];
        let drop = (splitmix64(&mut state) % cell.rays.len() as u64) as usize;
        let mut wall_gens: Vec<Vec<BigInt>> = Vec::new();
        for (i, r) in cell.rays.iter().enumerate() {
            if i != drop {
                wall_gens.push(r.clone());
            }
        }
        wall_gens.extend(cell.lines.iter().cloned());
        // generic point on the wall: positive ray combo plus line combo
        let mut point = vec![BigInt::zero(); f.ambient];
        let nrays = cell.rays.len() - 1;
        for (i, g) in wall_gens.iter().enumerate() {
            let r = splitmix64(&mut state) % 997 + 1;
            let coef =
                if i < nrays { BigInt::from(r) } else { BigInt::from(r as i64 - 499) };
            for (row, v) in g.iter().enumerate() {
                point[row] += &coef * v;
            }
        }
        check_wall(f, &wall_gens, &point)?;
    }
    Ok(())
}

fn check_wall(f: &WeightedFan, wall_gens: &[Vec<BigInt>], point: &[BigInt]) -> Result<()> {
    let wall_mat = if wall_gens.is_empty() {
        IntegerMatrix::zero(f.ambient, 0)
    } else {
        IntegerMatrix::from_cols(&wall_gens.to_vec())
    };
    let wall_rank = exact_linalg::rank(&wall_mat);
    if wall_rank != f.dim - 1 {
        return Ok(()); // degenerate sample, skip
    }
    let one = BigInt::one();
    let mut total = vec![BigInt::zero(); f.ambient];
    let mut touched = false;
    for cell in &f.cells {
        if !cell.contains(point, &one) {
            continue;
        }
        let sat = saturated_span_basis(cell);
        let stacked = wall_mat.hcat(&sat);
        if exact_linalg::rank(&stacked) != f.dim {
            continue; // cell span equals the wall span
        }
        // normal generator: the image of the cell lattice in the quotient
        // by the wall span is rank one; lift a generator of it.  The image
        // columns are integer multiples c_j of the primitive direction, so
        // a Bezout combination of the c_j lifts the actual generator.
        let proj = quotient_projection(f.ambient, &exact_linalg::saturation_basis(&wall_mat));
        let image = proj.mul(&sat);
        let img_sat = exact_linalg::saturation_basis(&image);
        if img_sat.cols() != 1 {
            return Err(Error::InvalidInput("wall quotient not rank one".to_string()));
        }
        let prim = img_sat.col(0);
        let pivot = prim
            .iter()
            .position(|x| !x.is_zero())
            .ok_or_else(|| Error::InvalidInput("zero wall quotient".to_string()))?;
        let mut factors: Vec<BigInt> = Vec::with_capacity(sat.cols());
        for j in 0..image.cols() {
            let cj = image.get(pivot, j) / &prim[pivot];
            factors.push(cj);
        }
        let combo = bezout_combination(&factors);
        let mut normal = vec![BigInt::zero(); f.ambient];
        for (r, c) in combo.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for row in 0..f.ambient {
                normal[row] += c * sat.get(row, r);
            }
        }
        let inside_pos = side_test(cell, point, &normal);
        let inside_neg = side_test(cell, point, &neg(&normal));
        match (inside_pos, inside_neg) {
            (true, true) => continue, // wall passes through the cell interior
            (true, false) => {}
            (false, true) => normal = neg(&normal),
            (false, false) => continue, // point on a deeper face
        }
        touched = true;
        for (row, v) in normal.iter().enumerate() {
            total[row] += &cell.weight * v;
        }
    }
    if !touched {
        return Ok(());
    }
    let aug = wall_mat.hcat(&IntegerMatrix::from_cols(&[total.clone()]));
    if exact_linalg::rank(&aug) != wall_rank {
        return Err(Error::InvalidInput("balancing failed at a sampled wall".to_string()));
    }
    Ok(())
}

fn neg(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| -x).collect()
}

/// Coefficients x with sum x_j c_j = gcd(c_j) > 0.
fn bezout_combination(c: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); c.len()];
    let mut g = BigInt::zero();
    for (j, cj) in c.iter().enumerate() {
        if cj.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = cj.abs();
            out[j] = if cj.is_negative() { -BigInt::one() } else { BigInt::one() };
            continue;
        }
        let ext = g.extended_gcd(cj);
        // ext.gcd = ext.x * g + ext.y * cj
        for v in out.iter_mut() {
            *v *= &ext.x;
        }
        out[j] = ext.y.clone();
        g = ext.gcd;
    }
    out
}

/// Membership of point + eps*dir in the cell for small eps > 0.
fn side_test(cell: &Cell, point: &[BigInt], dir: &[BigInt]) -> bool {
    if cell.rays.is_empty() && cell.lines.is_empty() {
        return false;
    }
    let gens = cell.generator_matrix();
    let q0: Vec<BigInt> = point
        .iter()
        .zip(&cell.vertex)
        .map(|(p, v)| p * &cell.vertex_den - v)
        .collect();
    let q1: Vec<BigInt> = dir.iter().map(|x| x * &cell.vertex_den).collect();
    let (Some((x0, _)), Some((x1, _))) = (
        exact_linalg::solve_rational(&gens, &q0),
        exact_linalg::solve_rational(&gens, &q1),
    ) else {
        return false;
    };
    for i in 0..cell.rays.len() {
        match x0[i].sign() {
            num_bigint::Sign::Minus => return false,
            num_bigint::Sign::NoSign => {
                if x1[i].is_negative() {
                    return false;
                }
            }
            num_bigint::Sign::Plus => {}
        }
    }
    true
}

/// Text dump of a cycle: shared lineality rows, then one block per cell
/// with its weight and generator rows, in a stable order.
pub fn fan_dump(f: &WeightedFan) -> String {
    let mut lin: Option<IntegerMatrix> = None;
    for cell in &f.cells {
        let lines = if cell.lines.is_empty() {
            IntegerMatrix::zero(f.ambient, 0)
        } else {
            IntegerMatrix::from_cols(&cell.lines)
        };
        lin = Some(match lin {
            None => lines,
            Some(prev) => span_intersection(&prev, &lines),
        });
    }
    let lin = lin.unwrap_or_else(|| IntegerMatrix::zero(f.ambient, 0));
    let mut out = String::new();
    out.push_str("LINEALITY\n");
    for j in 0..lin.cols() {
        let row: Vec<String> = lin.col(j).iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    let mut blocks: Vec<(Vec<Vec<BigInt>>, BigInt)> = f
        .cells
        .iter()
        .map(|c| {
            let mut gens: Vec<Vec<BigInt>> = c.rays.clone();
            for l in &c.lines {
                gens.push(l.clone());
            }
            gens.sort();
            (gens, c.weight.clone())
        })
        .collect();
    blocks.sort();
    for (gens, w) in blocks {
        out.push_str(&alloc::format!("CONE w={w}\n"));
        for g in gens {
            let row: Vec<String> = g.iter().map(|x| x.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid_bergman::{uniform_bergman, LinearMatroid};

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn bvec(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn project_lineality_fan() {
        let cell = Cell::cone(
            Vec::new(),
            vec![bvec(&[1, 0]), bvec(&[0, 1])],
            BigInt::one(),
            2,
        );
        let f = WeightedFan::new(2, 2, vec![cell]);
        let v = IntegerMatrix::from_rows_i64(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        let img = project_fan(&f, &v).unwrap();
        assert_eq!(img.cells.len(), 1);
        assert_eq!(img.cells[0].weight, BigInt::one());
        assert_eq!(img.ambient, 3);
    }

    #[test]
    fn project_scaling_multiplies_weight() {
        let cell = Cell::cone(Vec::new(), vec![bvec(&[1])], BigInt::one(), 1);
        let f = WeightedFan::new(1, 1, vec![cell]);
        let v = IntegerMatrix::from_rows_i64(&[vec![2]]);
        let img = project_fan(&f, &v).unwrap();
        assert_eq!(img.cells[0].weight, b(2));
    }

    #[test]
    fn project_drops_collapsed() {
        let cell = Cell::cone(Vec::new(), vec![bvec(&[0, 1])], BigInt::one(), 2);
        let f = WeightedFan::new(2, 1, vec![cell]);
        let v = IntegerMatrix::from_rows_i64(&[vec![1, 0]]);
        let img = project_fan(&f, &v).unwrap();
        assert!(img.cells.is_empty());
    }

    #[test]
    fn stable_intersection_coordinate_planes() {
        let fx = WeightedFan::new(
            2,
            1,
            vec![Cell::cone(Vec::new(), vec![bvec(&[1, 0])], BigInt::one(), 2)],
        );
        let fy = WeightedFan::new(
            2,
            1,
            vec![Cell::cone(Vec::new(), vec![bvec(&[0, 1])], BigInt::one(), 2)],
        );
        let s = stable_intersection(&fx, &fy, 0).unwrap();
        assert_eq!(s.degree().unwrap(), BigInt::one());
    }

    #[test]
    fn stable_intersection_line_vs_u34() {
        // tropical line with direction (0,1,2,3): degree = max - min = 3
        let line = WeightedFan::new(
            4,
            2,
            vec![Cell::cone(
                Vec::new(),
                vec![bvec(&[0, 1, 2, 3]), bvec(&[1, 1, 1, 1])],
                BigInt::one(),
                4,
            )],
        );
        let berg = uniform_bergman(3, 4, 10_000).unwrap();
        for seed in 0..5u64 {
            let s = stable_intersection(&line, &berg, seed).unwrap();
            assert_eq!(s.degree().unwrap(), b(3), "seed {seed}");
        }
    }

    #[test]
    fn stable_intersection_lineality_line_is_empty() {
        let line = WeightedFan::new(
            4,
            1,
            vec![Cell::cone(Vec::new(), vec![bvec(&[1, 1, 1, 1])], BigInt::one(), 4)],
        );
        let berg = uniform_bergman(3, 4, 10_000).unwrap();
        let s = stable_intersection(&line, &berg, 0).unwrap();
        assert_eq!(s.degree().unwrap(), BigInt::zero());
        assert!(s.cells.is_empty());
    }

    #[test]
    fn degree_rules() {
        let empty = WeightedFan::new(3, 0, Vec::new());
        assert_eq!(degree(&empty).unwrap(), BigInt::zero());
        let pt = |w: i64| Cell {
            vertex: bvec(&[1, 2, 3]),
            vertex_den: BigInt::one(),
            rays: Vec::new(),
            lines: Vec::new(),
            weight: b(w),
        };
        let f = WeightedFan::new(3, 0, vec![pt(1), pt(2), pt(3)]);
        assert_eq!(degree(&f).unwrap(), b(6));
        let too_big = WeightedFan::new(
            3,
            1,
            vec![Cell::cone(Vec::new(), vec![bvec(&[1, 0, 0])], BigInt::one(), 3)],
        );
        assert!(degree(&too_big).is_err());
    }

    #[test]
    fn bergman_fans_balance() {
        for (h, n) in [(2usize, 4usize), (3, 4), (3, 5), (2, 5)] {
            let f = uniform_bergman(h, n, 100_000).unwrap();
            check_balancing(&f, 100, 7).unwrap();
        }
        let m = LinearMatroid::column_matroid(&IntegerMatrix::from_rows_i64(&[
            vec![1, 1, 1, 1, 1],
            vec![0, 1, 2, 3, 5],
            vec![0, 0, 1, 1, 2],
        ]))
        .unwrap();
        let f = crate::matroid_bergman::bergman_fan(&m, 100_000).unwrap();
        check_balancing(&f, 100, 11).unwrap();
    }

    #[test]
    fn unbalanced_fails() {
        // two opposite rays with mismatched weights
        let f = WeightedFan::new(
            2,
            1,
            vec![
                Cell::cone(vec![bvec(&[1, 0])], Vec::new(), BigInt::one(), 2),
                Cell::cone(vec![bvec(&[-1, 0])], Vec::new(), b(2), 2),
            ],
        );
        assert!(check_balancing(&f, 50, 3).is_err());
    }

    #[test]
    fn fan_dump_stable() {
        let f = uniform_bergman(2, 3, 1000).unwrap();
        let d1 = fan_dump(&f);
        let d2 = fan_dump(&f);
        assert_eq!(d1, d2);
        assert!(d1.starts_with("LINEALITY\n1 1 1\n"));
        assert!(d1.contains("CONE w=1\n"));
    }
}
