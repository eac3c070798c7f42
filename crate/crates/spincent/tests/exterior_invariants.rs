use num_traits::One;
use spincent::clifford::*;
use spincent::exterior::*;
use spincent::linalg::{rank_of, SparseMat};
use spincent::scalars::AlgebraicScalar as S;

fn specs() -> Vec<SpaceSpec> {
    let mut v = vec![];
    for n in 1..=3 {
        v.push(SpaceSpec::odd(n));
        v.push(SpaceSpec::even(n));
    }
    v
}

fn gens(sp: &SpaceSpec) -> Vec<Generator> {
    lie_generators(sp).into_iter().filter(|g| sp.is_odd() || sp.n > 1 || *g == Generator::H(1)).collect()
}

#[test]
fn r_ell_is_equivariant() {
    for sp in specs() {
        for l in 0..=sp.big_n {
            let r = r_ell_matrix(&sp, l);
            for g in gens(&sp).into_iter().chain(group_generators(&sp)) {
                let lhs = r.mul(&ext_matrix(&sp, g, l).unwrap());
                let mut rhs = ext_matrix(&sp, g, sp.big_n - l).unwrap().mul(&r);
                if g == Generator::Reflection {
                    // r_l intertwines O(N) only up to the determinant
                    rhs = rhs.scale(&-S::one());
                }
                if g == Generator::Z && sp.big_n % 2 == 1 {
                    // z = -1 on V: (-1)^l versus (-1)^{N-l}
                    rhs = rhs.scale(&-S::one());
                }
                assert_eq!(lhs, rhs, "{sp:?} l={l} {g:?}");
            }
        }
    }
}

#[test]
fn r_ell_even_is_an_involution() {
    for n in 1..=3 {
        let sp = SpaceSpec::even(n);
        for l in 0..=sp.big_n {
            let r = r_ell_matrix(&sp, l);
            let back = r_ell_matrix(&sp, sp.big_n - l);
            assert_eq!(back.mul(&r), SparseMat::identity(r.ncols), "n={n} l={l}");
        }
    }
}

#[test]
fn en_pieces_are_stable_eigenspaces_of_the_right_size() {
    for n in 1..=3 {
        let sp = SpaceSpec::even(n);
        let basis = ext_basis(&sp, n);
        let idx = ext_index(&basis);
        let mut plus = vec![];
        let mut minus = vec![];
        for e in &basis {
            let (p, m) = en_split(&sp, &ext_single(*e)).unwrap();
            assert_eq!(r_ell(&sp, n, &p).unwrap(), p);
            assert_eq!(r_ell(&sp, n, &m).unwrap(), ext_scale(&m, &-S::one()));
            plus.push(ext_to_sparse(&p, &idx));
            minus.push(ext_to_sparse(&m, &idx));
        }
        let binom: usize = (0..n).map(|i| 2 * n - i).product::<usize>() / (1..=n).product::<usize>();
        assert_eq!(rank_of(plus.clone()), binom / 2);
        assert_eq!(rank_of(minus.clone()), binom / 2);
        // stability: image of the +1 eigenspace stays in it
        let r = r_ell_matrix(&sp, n);
        for g in gens(&sp) {
            let m = ext_matrix(&sp, g, n).unwrap();
            for v in &plus {
                let w = m.apply(v);
                assert_eq!(r.apply(&w), w);
            }
        }
    }
}

#[test]
fn iota_ext_is_equivariant() {
    for sp in specs() {
        for k in 0..=sp.big_n {
            let basis = ext_basis(&sp, k);
            let idx = ext_index(&basis);
            let iota = SparseMat::from_fn(basis.len(), basis.len(), |c| {
                ext_to_sparse(&iota_ext(&sp, k, &ext_single(basis[c])).unwrap(), &idx)
            });
            for g in gens(&sp) {
                let m = ext_matrix(&sp, g, k).unwrap();
                let dual = m.transpose().scale(&-S::one());
                assert_eq!(iota.mul(&m), dual.mul(&iota), "{sp:?} k={k} {g:?}");
            }
            for e in &basis {
                let v = ext_single(*e);
                assert_eq!(iota_ext_inverse(&sp, k, &iota_ext(&sp, k, &v).unwrap()).unwrap(), v);
            }
        }
    }
}

#[test]
fn iota_prime_reverses_roots() {
    for sp in specs() {
        for l in 0..=sp.big_n {
            let ip = iota_prime_ext_matrix(&sp, l);
            assert_eq!(ip.mul(&ip), SparseMat::identity(ip.ncols));
            for i in 1..=sp.n {
                if !sp.is_odd() && sp.n == 1 {
                    continue;
                }
                let x = ext_matrix(&sp, Generator::X(i), l).unwrap();
                let y = ext_matrix(&sp, Generator::Y(i), l).unwrap();
                assert_eq!(ip.mul(&x), y.mul(&ip).scale(&-S::one()), "{sp:?} l={l} i={i}");
            }
            if !sp.is_odd() {
                let r = r_ell_matrix(&sp, l);
                let ip2 = iota_prime_ext_matrix(&sp, sp.big_n - l);
                assert_eq!(ip2.mul(&r), r.mul(&ip).scale(&S::sign(l as i64)), "{sp:?} l={l}");
            }
        }
        let d = iota_prime_delta_matrix(&sp);
        for i in 1..=sp.n {
            if !sp.is_odd() && sp.n == 1 {
                continue;
            }
            let on = |g| {
                let a = delta_matrix(&sp, g).unwrap();
                let b = delta_matrix(&sp.dualized(), g).unwrap();
                a.kron(&SparseMat::identity(sp.dim_delta())).add(&SparseMat::identity(sp.dim_delta()).kron(&b))
            };
            assert_eq!(d.mul(&on(Generator::X(i))), on(Generator::Y(i)).mul(&d).scale(&-S::one()));
        }
    }
}
