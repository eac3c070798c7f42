use num_traits::One;
use spincent::clifford::*;
use spincent::linalg::SparseMat;
use spincent::scalars::AlgebraicScalar as S;

fn specs() -> Vec<SpaceSpec> {
    let mut v = vec![];
    for n in 1..=3 {
        v.push(SpaceSpec::odd(n));
        v.push(SpaceSpec::odd(n).with_sign(-1));
        v.push(SpaceSpec::even(n));
    }
    v
}

fn letters(sp: &SpaceSpec) -> Vec<(Generator, usize)> {
    let mut out = vec![];
    for k in 1..=sp.n {
        out.push((Generator::U(k), sp.plain(k)));
        out.push((Generator::UBar(k), sp.barred(k)));
    }
    if sp.is_odd() {
        out.push((Generator::U0, sp.n));
    }
    out
}

#[test]
fn clifford_relations() {
    for sp in specs() {
        let dim = sp.dim_delta();
        for (a, ca) in letters(&sp) {
            for (b, cb) in letters(&sp) {
                let ma = clifford_matrix(&sp, a).unwrap();
                let mb = clifford_matrix(&sp, b).unwrap();
                let anti = ma.mul(&mb).add(&mb.mul(&ma));
                // 2 B(u_a, u_b): 1 on (u_k, u_kbar), 2 on (u_0, u_0)
                let expect = if a == Generator::U0 && b == Generator::U0 {
                    S::from_int(2)
                } else if sp.form(ca, cb) {
                    S::one()
                } else {
                    S::from_int(0)
                };
                assert_eq!(anti, SparseMat::scalar(dim, &expect), "{sp:?} {a:?} {b:?}");
            }
        }
    }
}

fn check_brackets(sp: &SpaceSpec, m: &dyn Fn(Generator) -> SparseMat) {
    let n = sp.n;
    for i in 1..=n {
        if !sp.is_odd() && n == 1 {
            continue;
        }
        let br = m(Generator::X(i)).bracket(&m(Generator::Y(i)));
        let expect = if i < n {
            m(Generator::H(i)).sub(&m(Generator::H(i + 1)))
        } else if sp.is_odd() {
            m(Generator::H(n)).scale(&S::from_int(2))
        } else {
            m(Generator::H(n - 1)).add(&m(Generator::H(n)))
        };
        assert_eq!(br, expect, "{sp:?} i={i}");
    }
}

fn lie_gens(sp: &SpaceSpec) -> Vec<Generator> {
    lie_generators(sp).into_iter().filter(|g| sp.is_odd() || sp.n > 1 || *g == Generator::H(1)).collect()
}

#[test]
fn root_brackets_on_delta_and_v() {
    for sp in specs() {
        check_brackets(&sp, &|g| delta_matrix(&sp, g).unwrap());
        check_brackets(&sp, &|g| v_matrix(&sp, g).unwrap());
    }
}

#[test]
fn v_action_preserves_the_form() {
    for sp in specs() {
        let dim = sp.dim_v();
        let mut form = SparseMat::zeros(dim, dim);
        for c in 0..dim {
            form.add_to(c, sp.bar(c), &S::one());
        }
        for g in lie_gens(&sp) {
            let m = v_matrix(&sp, g).unwrap();
            assert!(m.mul(&form).add(&form.mul(&m.transpose())).is_zero(), "{sp:?} {g:?}");
        }
    }
}

#[test]
fn iota_delta_is_equivariant() {
    for sp in specs() {
        let iota = iota_delta_matrix(&sp);
        for g in lie_gens(&sp) {
            let lhs = iota.mul(&delta_matrix(&sp, g).unwrap());
            let rhs = delta_matrix(&sp.dualized(), g).unwrap().mul(&iota);
            assert_eq!(lhs, rhs, "{sp:?} {g:?}");
        }
    }
}

#[test]
fn transpose_of_x_is_y() {
    for sp in specs() {
        for i in 1..=sp.n {
            if !sp.is_odd() && sp.n == 1 {
                continue;
            }
            let x = delta_matrix(&sp, Generator::X(i)).unwrap();
            let y = delta_matrix(&sp, Generator::Y(i)).unwrap();
            assert_eq!(x.transpose(), y, "{sp:?} {i}");
        }
    }
}

#[test]
fn even_parity_is_preserved_and_reflection_swaps_it() {
    for n in 1..=3 {
        let sp = SpaceSpec::even(n);
        let parity = |m: &SparseMat, flip: bool| {
            m.cols.iter().enumerate().all(|(j, c)| {
                c.keys().all(|&i| ((i as u32).count_ones() % 2 != (j as u32).count_ones() % 2) == flip)
            })
        };
        for g in lie_gens(&sp) {
            assert!(parity(&delta_matrix(&sp, g).unwrap(), false));
        }
        assert!(parity(&delta_matrix(&sp, Generator::Reflection).unwrap(), true));
    }
}

#[test]
fn reflection_twisted_adjoint_is_the_swap_on_v() {
    // -g w g^{-1} = sigma(w) where sigma swaps u_n and u_nbar
    for n in 1..=3 {
        let sp = SpaceSpec::even(n);
        let r = delta_matrix(&sp, Generator::Reflection).unwrap();
        let rinv = r.scale(&-S::one());
        let sigma = v_matrix(&sp, Generator::Reflection).unwrap();
        for (g, c) in letters(&sp) {
            let lhs = r.mul(&clifford_matrix(&sp, g).unwrap()).mul(&rinv).scale(&-S::one());
            let (c2, _) = sigma.cols[c].iter().next().unwrap();
            let (g2, _) = letters(&sp).into_iter().find(|(_, cc)| cc == c2).unwrap();
            assert_eq!(lhs, clifford_matrix(&sp, g2).unwrap(), "{g:?}");
        }
        for k in 0..=2 {
            let t = tensor_matrix(&sp, Generator::Reflection, k).unwrap();
            let d = sp.dim_delta() * sp.dim_v().pow(k as u32);
            assert_eq!(t.mul(&t), SparseMat::scalar(d, &-S::one()));
        }
    }
}
