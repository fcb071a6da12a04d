//! Lift certificates, syzygy generators and reduced bases are checked
//! against their defining identities on random inputs.

use polymat::corpus::{random_matrix, random_nonzero_poly, random_poly, random_unimodular, ring3, rng};
use polymat::groebner::{lift, reduced_gb, syzygy, Side};
use polymat::{Poly, PolyMatrix};
use rand::Rng;

const ALL: [usize; 3] = [0, 1, 2];

#[test]
fn lift_reproduces_explicit_combinations() {
    let ring = ring3();
    let mut g = rng(1);
    for case in 0..100 {
        let k = g.gen_range(1..=3);
        let gens: Vec<Poly> = (0..k).map(|_| random_nonzero_poly(&mut g, &ring, &ALL, 2, 3)).collect();
        let target = gens.iter().fold(Poly::zero(&ring), |acc, q| {
            &acc + &(q * &random_poly(&mut g, &ring, &ALL, 1, 2))
        });
        let cert = lift(&target, &gens).unwrap_or_else(|e| panic!("case {case}: {e}"));
        assert_eq!(cert.combination(), target, "case {case}");
    }
}

#[test]
fn syzygy_generators_annihilate() {
    let ring = ring3();
    let mut g = rng(2);
    for case in 0..100 {
        let (l, m) = (g.gen_range(1..=3), g.gen_range(1..=3));
        let a = random_matrix(&mut g, &ring, l, m, 1, 0.3);
        for side in [Side::Left, Side::Right] {
            let syz = syzygy(&a, side).unwrap();
            for s in &syz.generators {
                let image = match side {
                    Side::Left => a.left_apply(s).unwrap(),
                    Side::Right => a.right_apply(s).unwrap(),
                };
                assert!(image.iter().all(Poly::is_zero), "case {case}");
            }
        }
    }
}

#[test]
fn planted_null_row_is_recovered() {
    let ring = ring3();
    let mut g = rng(3);
    for case in 0..30 {
        // F_hat = V0 * diag(0, 1, ..., 1) * W0 has left kernel spanned by row 0 of V0^-1
        let l = g.gen_range(2..=3);
        let v0 = random_unimodular(&mut g, &ring, l, &ALL, 2, 1);
        let w0 = random_unimodular(&mut g, &ring, l, &ALL, 2, 1);
        let mut diag = vec![Poly::one(&ring); l];
        diag[0] = Poly::zero(&ring);
        let fh = v0.mul(&PolyMatrix::diag(&ring, &diag)).unwrap().mul(&w0).unwrap();
        let p = v0.inverse_unimodular().unwrap().row(0).to_vec();
        let syz = syzygy(&fh, Side::Left).unwrap();
        assert_eq!(syz.len(), 1, "case {case}");
        let s = &syz.generators[0];
        // proportional: all 2x2 minors of [p; s] vanish
        for i in 0..l {
            for j in i + 1..l {
                assert!((&(&p[i] * &s[j]) - &(&p[j] * &s[i])).is_zero(), "case {case}");
            }
        }
        let w = polymat::factorizer::zlp_vector(&fh).unwrap();
        assert!(fh.left_apply(&w.components).unwrap().iter().all(Poly::is_zero));
    }
}

#[test]
fn reduced_bases_contain_their_generators() {
    let ring = ring3();
    let mut g = rng(4);
    for case in 0..100 {
        let k = g.gen_range(1..=3);
        let gens: Vec<Poly> = (0..k).map(|_| random_poly(&mut g, &ring, &ALL, 2, 3)).collect();
        let gb = reduced_gb(&ring, &gens).unwrap();
        assert!(gb.is_reduced(), "case {case}");
        for q in &gens {
            assert!(gb.reduce(q).is_zero(), "case {case}");
        }
    }
}
