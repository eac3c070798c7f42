use num_traits::One;
use spincent::clifford::*;
use spincent::exterior::*;
use spincent::linalg::SparseMat;
use spincent::phi::*;
use spincent::scalars::AlgebraicScalar as S;

fn lie_gens(sp: &SpaceSpec) -> Vec<Generator> {
    lie_generators(sp).into_iter().filter(|g| sp.is_odd() || sp.n > 1 || *g == Generator::H(1)).collect()
}

fn on_pair(sp: &SpaceSpec, g: Generator) -> SparseMat {
    let a = delta_matrix(sp, g).unwrap();
    let b = delta_matrix(&sp.dualized(), g).unwrap();
    if g.is_lie() {
        let id = SparseMat::identity(sp.dim_delta());
        a.kron(&id).add(&id.kron(&b))
    } else {
        a.kron(&b)
    }
}

fn variants(sp: &SpaceSpec, l: usize) -> Vec<PhiVariant> {
    if sp.is_odd() {
        return vec![PhiVariant::Odd];
    }
    let mut v = vec![PhiVariant::Pin];
    for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        if legal_even(l, e1, e2) {
            v.push(PhiVariant::Even { e1, e2 });
        }
    }
    v
}

fn specs() -> Vec<SpaceSpec> {
    (1..=3).flat_map(|n| [SpaceSpec::odd(n), SpaceSpec::even(n)]).collect()
}

#[test]
fn every_variant_is_equivariant() {
    for sp in specs() {
        for l in 0..=sp.big_n {
            for v in variants(&sp, l) {
                let phi = phi_matrix(&sp, v, l).unwrap();
                let mut gens = lie_gens(&sp);
                if v == PhiVariant::Pin {
                    gens.push(Generator::Reflection);
                }
                for g in gens {
                    let lhs = phi.mul(&ext_matrix(&sp, g, l).unwrap());
                    let rhs = on_pair(&sp, g).mul(&phi);
                    assert_eq!(lhs, rhs, "{sp:?} l={l} {v:?} {g:?}");
                }
            }
        }
    }
}

#[test]
fn odd_n_z_acts_compatibly() {
    // z = -1 on V and e1 e2 on Delta_{e1} (x) Delta_{e2}*: fine when e2 = (-1)^l e1
    for n in 1..=3 {
        for s in [1i8, -1] {
            let sp = SpaceSpec::odd(n).with_sign(s);
            for l in 0..=sp.big_n {
                let tgt = sp.with_sign(s * if l % 2 == 0 { 1 } else { -1 });
                let phi = phi_matrix(&sp, PhiVariant::Odd, l).unwrap();
                let z_v = ext_matrix(&sp, Generator::Z, l).unwrap();
                let z_d = delta_matrix(&sp, Generator::Z).unwrap().kron(&delta_matrix(&tgt.dualized(), Generator::Z).unwrap());
                assert_eq!(phi.mul(&z_v), z_d.mul(&phi), "n={n} s={s} l={l}");
            }
        }
    }
}

#[test]
fn images_are_isometric() {
    for sp in specs() {
        for l in 0..=sp.big_n {
            for v in variants(&sp, l) {
                let phi = phi_matrix(&sp, v, l).unwrap();
                let gram = phi.transpose().mul(&phi);
                if matches!(v, PhiVariant::Even { .. }) && l == sp.n {
                    // isometric on e_n^{e1}: the Gram matrix is the projector
                    let PhiVariant::Even { e1, .. } = v else { unreachable!() };
                    let r = r_ell_matrix(&sp, l);
                    let id = SparseMat::identity(r.ncols);
                    let proj = id.add(&r.scale(&S::from_int(e1 as i64))).scale(&S::frac(1, 2));
                    assert_eq!(gram, proj, "{sp:?} l={l} {v:?}");
                } else {
                    assert_eq!(gram, SparseMat::identity(phi.ncols), "{sp:?} l={l} {v:?}");
                }
            }
        }
    }
}

fn sectors(sp: &SpaceSpec) -> Vec<PhiSector> {
    if sp.is_odd() {
        vec![PhiSector::OddEvenDegrees, PhiSector::OddOddDegrees]
    } else {
        let mut v = vec![PhiSector::Pin { odd: false }, PhiSector::Pin { odd: true }];
        for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            v.push(PhiSector::Even { e1, e2 });
        }
        v
    }
}

#[test]
fn inverses_round_trip() {
    for sp in specs() {
        for sec in sectors(&sp) {
            let phi = sector_phi_matrix(&sp, sec).unwrap();
            let inv = sector_inverse_matrix(&sp, sec).unwrap();
            let d = sp.dim_delta();
            // phi o inv = identity on the target block
            let mut target = SparseMat::zeros(d * d, d * d);
            for a in 0..d * d {
                if sec.contains((a / d) as u32, (a % d) as u32) {
                    target.add_to(a, a, &S::one());
                }
            }
            assert_eq!(phi.mul(&inv), target, "{sp:?} {sec:?}");
            // inv o phi = identity on the domain (projector onto e_n^{e1} in degree n)
            let back = inv.mul(&phi);
            let basis = sector_basis(&sp, sec);
            let idx = ext_index(&basis);
            for (c, e) in basis.iter().enumerate() {
                let col: ExtVector = match sec {
                    PhiSector::Even { e1, .. } if e.degree() == sp.n => {
                        let (p, m) = en_split(&sp, &ext_single(*e)).unwrap();
                        if e1 == 1 { p } else { m }
                    }
                    _ => ext_single(*e),
                };
                assert_eq!(back.cols[c], ext_to_sparse(&col, &idx), "{sp:?} {sec:?} {e:?}");
            }
        }
    }
}

#[test]
fn hadamard_blocks() {
    for n in 0..=4usize {
        for j in 0u32..(1 << n) {
            for i in 0u32..(1 << n) {
                if i & j != 0 {
                    continue;
                }
                let h = hadamard_block(n, j, i).unwrap();
                assert!(h.is_hadamard(), "n={n} J={j} I={i}");
            }
        }
    }
}

#[test]
fn phi_r_relations() {
    for sp in specs() {
        for l in 0..=sp.big_n {
            assert!(phirl_check(&sp, l).unwrap(), "{sp:?} l={l}");
        }
    }
}

#[test]
fn pin_is_the_sum_of_the_even_pieces() {
    for n in 1..=3 {
        let sp = SpaceSpec::even(n);
        for l in 0..=n {
            let pin = phi_matrix(&sp, PhiVariant::Pin, l).unwrap();
            let m = |e1, e2| phi_matrix(&sp, PhiVariant::Even { e1, e2 }, l).unwrap();
            let (a, b) = if l % 2 == 0 { (m(1, 1), m(-1, -1)) } else { (m(1, -1), m(-1, 1).scale(&-S::one())) };
            let sum = a.add(&b);
            if l == n {
                assert_eq!(pin, sum, "n={n}");
            } else {
                assert_eq!(pin, sum.scale(&S::pow_sqrt2(-1)), "n={n} l={l}");
            }
        }
    }
}
