use spincent::characters::*;

#[test]
fn every_rule_matches_the_character_oracle() {
    for (n, nn) in [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)] {
        for (a, b) in supported_rule_cases(n, nn, 3) {
            let rule = tensor_rule(&a, &b).unwrap().to_irreducible();
            let oracle = tensor_oracle(&a, &b).unwrap();
            assert_eq!(rule, oracle, "{a} (x) {b}");
        }
    }
}
