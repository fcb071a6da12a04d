//! Minors of a product: for `G` (l x l) and `F1` (l x m), every r x r minor
//! of `G * F1` is the sum over r-subsets `K` of `minor(G; I, K) * minor(F1; K, J)`,
//! and every l x l minor equals `det(G) * minor(F1; all, J)`.

use polymat::corpus::{random_matrix, ring3, rng};
use polymat::matrix::{combinations, MinorIndex};
use polymat::Poly;
use rand::Rng;

#[test]
fn minors_of_products_expand() {
    let ring = ring3();
    let mut g = rng(31337);
    for case in 0..100 {
        let l = g.gen_range(1..=3);
        let m = g.gen_range(l..=4);
        let a = random_matrix(&mut g, &ring, l, l, 2, 0.2);
        let b = random_matrix(&mut g, &ring, l, m, 2, 0.2);
        let ab = a.mul(&b).unwrap();
        for r in 1..=l {
            for rows in combinations(l, r) {
                for cols in combinations(m, r) {
                    let lhs = ab.minor(&MinorIndex {
                        rows: rows.clone(),
                        cols: cols.clone(),
                    });
                    let rhs = combinations(l, r).into_iter().fold(Poly::zero(&ring), |acc, k| {
                        let ga = a.minor(&MinorIndex {
                            rows: rows.clone(),
                            cols: k.clone(),
                        });
                        let fb = b.minor(&MinorIndex {
                            rows: k,
                            cols: cols.clone(),
                        });
                        &acc + &(&ga * &fb)
                    });
                    assert_eq!(lhs, rhs, "case {case}, r = {r}");
                }
            }
        }
        let det = a.determinant().unwrap();
        let all: Vec<usize> = (0..l).collect();
        for cols in combinations(m, l) {
            let idx = MinorIndex {
                rows: all.clone(),
                cols,
            };
            assert_eq!(ab.minor(&idx), &det * &b.minor(&idx), "case {case}");
        }
    }
}

#[test]
fn rank_of_product_is_bounded() {
    let ring = ring3();
    let mut g = rng(4242);
    for _ in 0..40 {
        let (l, k, m) = (g.gen_range(1..=3), g.gen_range(1..=3), g.gen_range(1..=3));
        let a = random_matrix(&mut g, &ring, l, k, 1, 0.5);
        let b = random_matrix(&mut g, &ring, k, m, 1, 0.5);
        assert!(a.mul(&b).unwrap().rank() <= a.rank().min(b.rank()));
    }
}
