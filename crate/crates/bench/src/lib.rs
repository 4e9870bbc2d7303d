//! Fixtures shared by the benchmarks.

use dynint_core::{parse_map_expression, PlaceSet, ProjPoint, RatMap};

pub struct PairCase {
    pub name: &'static str,
    pub map: RatMap,
    pub u: ProjPoint,
    pub w: ProjPoint,
    pub s: PlaceSet,
}

fn case(name: &'static str, map: &str, u: &str, w: &str, s: &str) -> PairCase {
    PairCase {
        name,
        map: parse_map_expression(map).expect("fixture map"),
        u: u.parse().expect("fixture point"),
        w: w.parse().expect("fixture point"),
        s: s.parse().expect("fixture primes"),
    }
}

pub fn pair_cases() -> Vec<PairCase> {
    vec![
        case("cube", "x^3", "2", "-2", "2"),
        case("x2+1", "x^2+1", "1", "3", ""),
        case("x2+x+1", "x^2+x+1", "0", "2", ""),
        case("rational", "(3*x^2-1)/(x^2+x+2)", "1/2", "3", "2,3"),
    ]
}

pub fn tower_maps() -> Vec<(&'static str, RatMap)> {
    ["x^2+1", "2*x^3-x+1", "(x^2+1)/x"]
        .into_iter()
        .map(|s| (s, parse_map_expression(s).expect("fixture map")))
        .collect()
}
