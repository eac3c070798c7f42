use spincent::clifford::SpaceSpec;
use spincent::relations::*;

#[test]
fn relations_hold_at_rank_three() {
    let mut bad = vec![];
    for sp in [SpaceSpec::odd(3), SpaceSpec::even(3)] {
        for rel in ALL_RELATIONS {
            for (p, q, t) in cases(rel, sp.n, 2) {
                if !check_relation(&sp, rel, p, q, t).unwrap() {
                    bad.push(format!("N={} {rel:?} p={p} q={q} t={t}", sp.big_n));
                }
            }
        }
    }
    assert!(bad.is_empty(), "{bad:#?}");
}
