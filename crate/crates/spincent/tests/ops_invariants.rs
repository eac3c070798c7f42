use num_traits::{One, Zero};
use spincent::clifford::*;
use spincent::exterior::*;
use spincent::ops::*;
use spincent::phi::*;
use spincent::scalars::AlgebraicScalar as S;

fn specs() -> Vec<SpaceSpec> {
    (1..=3).flat_map(|n| [SpaceSpec::odd(n), SpaceSpec::even(n)]).collect()
}

fn unit(i: usize) -> TensorVector {
    [(i, S::one())].into_iter().collect()
}

#[test]
fn pr_matches_the_phi_definition() {
    // pr_p(delta (x) <x>) = 2^{n/2} phi_p(x)(delta), [I] (x) [J]* acting by [J]*(delta) [I]
    for sp in specs() {
        let d = sp.dim_delta();
        let variant = if sp.is_odd() { PhiVariant::Odd } else { PhiVariant::Pin };
        for p in 0..=sp.n {
            for x in ext_basis(&sp, p) {
                let phi = phi_element(&sp, variant, &x).unwrap();
                let t = ext_to_tensor(&sp, &x);
                for mask in 0..d as u32 {
                    let mut input = TensorVector::new();
                    let src = TensorSpace::new(sp, p);
                    for (i, c) in &t {
                        input.insert(mask as usize * src.legs_dim() + i, c.clone());
                    }
                    let pos: Vec<usize> = (1..=p).collect();
                    let got = pr_t(&sp, p, &pos, &input).unwrap();
                    let mut want = TensorVector::new();
                    for (ij, c) in &phi {
                        if ij % d == mask as usize {
                            want.insert(ij / d, c * &S::pow_sqrt2(sp.n as i64));
                        }
                    }
                    assert_eq!(got, want, "{sp:?} {x:?} mask={mask}");
                }
            }
        }
    }
}

#[test]
fn psi_matches_the_oracle() {
    for sp in specs() {
        for r in 0..=4usize.min(sp.big_n) {
            for p in 0..=r {
                let q = r - p;
                let src = TensorSpace::new(sp, p);
                for i in 0..src.dim() {
                    let v = unit(i);
                    let a = psi(&sp, p, q, &v).unwrap();
                    let b = psi_oracle(&sp, p, q, &v).unwrap();
                    assert_eq!(a, b, "{sp:?} p={p} q={q} col={:?}", src.split(i));
                }
            }
        }
    }
}

fn lie_gens(sp: &SpaceSpec) -> Vec<Generator> {
    lie_generators(sp).into_iter().filter(|g| sp.is_odd() || sp.n > 1 || *g == Generator::H(1)).collect()
}

fn check_equivariant(m: &LinearMap) {
    let sp = m.domain.spec;
    let tsp = m.codomain.spec;
    for g in lie_gens(&sp).into_iter().chain(group_generators(&sp)) {
        let a = tensor_matrix(&tsp, g, m.codomain.k).unwrap().mul(&m.mat);
        let b = m.mat.mul(&tensor_matrix(&sp, g, m.domain.k).unwrap());
        assert_eq!(a, b, "{sp:?} {g:?} k={} l={}", m.domain.k, m.codomain.k);
    }
}

#[test]
fn realizations_are_equivariant() {
    use spincent::diagrams::*;
    for sp in [SpaceSpec::odd(2), SpaceSpec::even(2), SpaceSpec::odd(3).with_sign(-1), SpaceSpec::even(3)] {
        for k in 0..=2 {
            for l in 0..=2 {
                for d in enumerate_gb(k, l) {
                    for param in [Parametrization::Rt, Parametrization::Inv] {
                        check_equivariant(&realize(&sp, &d, param).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn operators_are_equivariant() {
    for sp in [SpaceSpec::odd(2), SpaceSpec::even(2), SpaceSpec::odd(3)] {
        let d = |k: usize, l: usize, f: &dyn Fn(&TensorVector) -> TensorVector| {
            let src = TensorSpace::new(sp, k);
            let cols = (0..src.dim()).map(|i| f(&unit(i))).collect();
            LinearMap::new(src, l, spincent::linalg::SparseMat::from_cols(TensorSpace::new(sp, l).dim(), cols))
        };
        check_equivariant(&d(2, 2, &|v| psi_t(&sp, 2, 2, &[2], &[1], v).unwrap()));
        check_equivariant(&d(3, 1, &|v| pr_t(&sp, 3, &[3, 1], v).unwrap()));
        check_equivariant(&d(1, 3, &|v| inj_t(&sp, 3, &[2, 3], v).unwrap()));
        check_equivariant(&d(3, 1, &|v| cont(&sp, 3, 1, 3, v).unwrap()));
        check_equivariant(&d(1, 3, &|v| insert_idv(&sp, 3, 3, 1, v).unwrap()));
    }
}

#[test]
fn high_degree_pr_and_inj_are_equivariant() {
    // the closed forms stay equivariant past degree n (needed by inj o inj)
    for sp in [SpaceSpec::odd(1), SpaceSpec::even(1), SpaceSpec::odd(2), SpaceSpec::even(2)] {
        for p in sp.n + 1..=sp.big_n.min(4) {
            let t: Vec<usize> = (1..=p).collect();
            let src = TensorSpace::new(sp, p);
            let cols = (0..src.dim()).map(|i| pr_t(&sp, p, &t, &unit(i)).unwrap()).collect();
            check_equivariant(&LinearMap::new(src, 0, spincent::linalg::SparseMat::from_cols(TensorSpace::new(sp, 0).dim(), cols)));
            let src = TensorSpace::new(sp, 0);
            let cols = (0..src.dim()).map(|i| inj_t(&sp, p, &t, &unit(i)).unwrap()).collect();
            check_equivariant(&LinearMap::new(src, p, spincent::linalg::SparseMat::from_cols(TensorSpace::new(sp, p).dim(), cols)));
        }
    }
}

#[test]
fn rt_diagrams_are_independent() {
    use spincent::diagrams::*;
    for sp in [SpaceSpec::odd(2), SpaceSpec::even(2), SpaceSpec::odd(3), SpaceSpec::even(3)] {
        for k in 0..=2 {
            let ds = enumerate_gb(k, k);
            let flat: Vec<_> = ds.iter().map(|d| realize(&sp, d, Parametrization::Rt).unwrap().mat.flatten()).collect();
            assert_eq!(spincent::linalg::rank_of(flat), ds.len(), "{sp:?} k={k}");
        }
    }
}

#[test]
fn basis_change_matches_realization() {
    use spincent::diagrams::*;
    for sp in [SpaceSpec::odd(2), SpaceSpec::even(2), SpaceSpec::odd(3), SpaceSpec::even(3)] {
        let fam = Family::of(&sp);
        for d in enumerate_gb(2, 2).into_iter().chain(enumerate_gb(1, 2)).chain(enumerate_gb(2, 1)) {
            let inv = realize(&sp, &d, Parametrization::Inv).unwrap();
            let e = basis_change(fam, sp.n, &d, Direction::InvToRt).unwrap();
            assert_eq!(realize_expr(&sp, &e).unwrap().mat, inv.mat, "{sp:?} {d} inv->rt");
            let rt = realize(&sp, &d, Parametrization::Rt).unwrap();
            let e = basis_change(fam, sp.n, &d, Direction::RtToInv).unwrap();
            assert_eq!(realize_expr(&sp, &e).unwrap().mat, rt.mat, "{sp:?} {d} rt->inv");
        }
    }
}

#[test]
fn all_isolated_expansion_has_seven_terms() {
    use spincent::diagrams::*;
    let e = basis_change(Family::Odd, 2, &y(10), Direction::InvToRt).unwrap();
    let got: Vec<(String, String)> = e.terms.iter().map(|(d, c)| (d.to_string(), c.to_string())).collect();
    let mut want: Vec<(String, String)> =
        [("y10", "1"), ("y4", "-1"), ("y6", "1"), ("y7", "1"), ("y5", "-1"), ("y1", "1"), ("y2", "-1")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
    let mut got_sorted = got.clone();
    got_sorted.sort();
    want.sort();
    assert_eq!(got_sorted, want);
    // Pin(2n): the one-vertical-edge terms flip sign
    let e = basis_change(Family::Even, 2, &y(10), Direction::InvToRt).unwrap();
    assert_eq!(e.terms.len(), 7);
    assert_eq!(e.terms[&y(4)].to_string(), "1");
    assert_eq!(e.terms[&y(2)].to_string(), "-1");
}

#[test]
fn commutant_at_k1() {
    use spincent::linalg::{Echelon, SparseVec};
    let sp = SpaceSpec::odd(2);
    let dim = TensorSpace::new(sp, 1).dim();
    let mut e = Echelon::new();
    for g in lie_gens(&sp).into_iter().chain(group_generators(&sp)) {
        let m = tensor_matrix(&sp, g, 1).unwrap();
        // (G X - X G)_{ij}, unknown X_{ab} at a * dim + b
        for i in 0..dim {
            for j in 0..dim {
                let mut row = SparseVec::new();
                for mm in 0..dim {
                    let gim = m.get(i, mm);
                    if !gim.is_zero() {
                        spincent::linalg::add_entry(&mut row, mm * dim + j, &gim);
                    }
                    let gmj = m.get(mm, j);
                    if !gmj.is_zero() {
                        spincent::linalg::add_entry(&mut row, i * dim + mm, &-gmj);
                    }
                }
                e.insert(row);
            }
        }
    }
    let kernel = e.kernel_basis(dim * dim);
    assert_eq!(kernel.len(), 2);
    // spanned by the two rt diagrams of GB^1_1
    let mut span = Echelon::new();
    for d in spincent::diagrams::enumerate_gb(1, 1) {
        let m = realize(&sp, &d, spincent::diagrams::Parametrization::Rt).unwrap().mat;
        let mut v = SparseVec::new();
        for (j, col) in m.cols.iter().enumerate() {
            for (i, x) in col {
                v.insert(i * dim + j, x.clone());
            }
        }
        span.insert(v);
    }
    for v in kernel {
        assert!(span.contains(&v));
    }
}

#[test]
fn t0_dimensions() {
    let sp = SpaceSpec::odd(2);
    assert_eq!(t0_subspace(&sp, 0, 0).unwrap().len(), 4);
    assert_eq!(t0_subspace(&sp, 1, 1).unwrap().len(), 16);
    assert_eq!(t0_subspace(&sp, 2, 2).unwrap().len(), 60);
}

#[test]
fn associator_relations() {
    for n in 1..=3 {
        let sp = SpaceSpec::even(n);
        for p in 0..=n {
            let src = TensorSpace::new(sp, p);
            let pos: Vec<usize> = (1..=p).collect();
            for i in 0..src.dim() {
                let v = unit(i);
                let lhs = pr_t(&sp, p, &pos, &associator(&sp, p, &v)).unwrap();
                let rhs = associator(&sp, 0, &pr_t(&sp, p, &pos, &v).unwrap());
                let rhs: TensorVector = rhs.into_iter().map(|(a, x)| (a, &x * &S::sign(p as i64))).collect();
                assert_eq!(lhs, rhs);
                let w = associator(&sp, p, &associator(&sp, p, &v));
                assert_eq!(w, v);
            }
        }
    }
    assert!(a_split(&SpaceSpec::odd(1), 0, &[]).is_err());
}
