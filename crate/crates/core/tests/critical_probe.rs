// scratch probe for the critical-valuation instance
use num_bigint::BigInt;
use tropolar_core::degree_pipeline::{critical_valuations, polar_report, DEFAULT_BUDGET};
use tropolar_core::jet_osculation::ToricEmbedding;

fn curve() -> ToricEmbedding {
    ToricEmbedding::from_rows_i64(&[vec![1, 1, 1, 1], vec![0, 2, 3, 4]]).unwrap()
}

#[test]
#[ignore]
fn probe_gdd() {
    let rep = polar_report(&curve(), 1, 0, DEFAULT_BUDGET).unwrap();
    println!("curve polar={:?} gdd={} warnings={:?}", rep.polar_degrees, rep.gdd, rep.warnings);
}

#[test]
#[ignore]
fn probe_valuations() {
    for uval in [vec![0i64, 0, 0, 0], vec![0, 2, 3, 2], vec![0, 2, 3, 4]] {
        let u: Vec<BigInt> = uval.iter().map(|&x| BigInt::from(x)).collect();
        let cv = critical_valuations(&curve(), &u, &BigInt::from(1), 0, DEFAULT_BUDGET).unwrap();
        println!("u_val={uval:?} total={}", cv.total_multiplicity);
        for p in &cv.points {
            println!("  point {:?}/{} mult {}", p.point, p.den, p.multiplicity);
        }
    }
}
