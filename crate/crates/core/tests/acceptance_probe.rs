// scratch timing probe, removed before finalizing
use num_bigint::BigInt;
use tropolar_core::closed_forms;
use tropolar_core::degree_pipeline::{polar_report, DEFAULT_BUDGET};
use tropolar_core::jet_osculation::ToricEmbedding;

#[test]
#[ignore]
fn oracle_triangle_small() {
    // segments [0,d], d <= 5, all k with m_k < n
    for d in 2..=5usize {
        let rows = vec![
            vec![1i64; d + 1],
            (0..=d as i64).collect::<Vec<i64>>(),
        ];
        let e = ToricEmbedding::from_rows_i64(&rows).unwrap();
        for k in 1..d {
            let t = std::time::Instant::now();
            let rep = polar_report(&e, k, 0, DEFAULT_BUDGET).unwrap();
            let want = closed_forms::veronese_gdd(1, d as i64, k).unwrap();
            println!(
                "segment d={d} k={k}: gdd={} want={} ({}) {:?}",
                rep.gdd,
                want,
                rep.gdd == want,
                t.elapsed()
            );
            assert_eq!(rep.gdd, want);
        }
    }
    // squares a x b <= 4, k <= min(a,b), skipping m_k = n
    for a in 1..=4usize {
        for b in a..=4usize {
            let e = ToricEmbedding::segre_veronese(&[1, 1], &[a, b]).unwrap();
            for k in 1..=a {
                let t = std::time::Instant::now();
                let rep = match polar_report(&e, k, 0, DEFAULT_BUDGET) {
                    Ok(r) => r,
                    Err(err) => {
                        println!("square {a}x{b} k={k}: {err}");
                        continue;
                    }
                };
                let want = closed_forms::p1r_gdd(&[a as i64, b as i64], k).unwrap();
                println!(
                    "square {a}x{b} k={k}: gdd={} want={} ({}) {:?}",
                    rep.gdd,
                    want,
                    rep.gdd == want,
                    t.elapsed()
                );
                assert_eq!(rep.gdd, want, "square {a}x{b} k={k}");
            }
        }
    }
}

#[test]
#[ignore]
fn cube_side2() {
    let e = ToricEmbedding::segre_veronese(&[1, 1, 1], &[2, 2, 2]).unwrap();
    let t = std::time::Instant::now();
    match polar_report(&e, 2, 0, 300_000_000) {
        Ok(rep) => {
            let want = BigInt::from(1712);
            println!("cube k=2: gdd={} want={} ({}) {:?}", rep.gdd, want, rep.gdd == want, t.elapsed());
        }
        Err(e) => println!("cube k=2: {e} after {:?}", t.elapsed()),
    }
}
