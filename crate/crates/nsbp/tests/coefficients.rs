//! Coefficient tables against values obtained by a second, independent parse
//! of the original LaTeX (a computer-algebra LaTeX reader, with implicit
//! function application rewritten as multiplication), frozen here.

use nsbp::coeffs::{named, Vars};
use nsbp::{parse_rational, Rational};

fn r(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

/// (k, n, alpha, c, beta, t, T)
const POINTS: [[&str; 7]; 3] = [
    ["3", "2", "1/2", "2/3", "8/3", "1/4", "1"],
    ["5", "4", "-1/3", "7/5", "3/2", "2/7", "5/3"],
    ["2", "1", "2", "1/9", "11", "1/2", "3"],
];

const EXPECTED: [(&str, [&str; 3]); 25] = [
    ("b0", ["-1965/128", "-2972/9", "224/363"]),
    ("b1", ["81927/16", "1962932/21", "34160/33"]),
    ("b2", ["14629/2", "157071/7", "14096"]),
    ("b3", ["-16", "-9", "-66"]),
    ("b4", ["641655/32", "514468294/1323", "217400/3"]),
    ("b5", ["3162/5", "3266444/1029", "415525/3"]),
    ("b6", ["320", "-196196/5", "-88/27"]),
    ("b7", ["402560/81", "8896489/75", "-4840/27"]),
    ("b8", ["3874816/243", "58581789/250", "-2033768/243"]),
    ("b9", ["-2048000/729", "-3793923/200", "937024/729"]),
    ("b10", ["4510/3", "70279328/135", "-8/3"]),
    ("b11", ["-162368/27", "-4080872/25", "28072/27"]),
    ("b12", ["206080/81", "10712576/75", "0"]),
    ("b13", ["3885056/243", "89399247/500", "-26620/27"]),
    ("b14", ["-2252800/729", "-5886909/400", "-937024/81"]),
    ("b15", ["6860/3", "46638592/135", "0"]),
    ("b16", ["-175840/27", "-2942148/25", "-220/3"]),
    ("b17", ["768", "-1638", "6776/3"]),
    ("d1", ["8512/27", "2573648/1125", "5060/729"]),
    ("d2", ["168736/81", "32682749888/50625", "-152804/2187"]),
    ("d3", ["-450176/81", "-44661034496/50625", "-121442/6561"]),
    ("d4", ["-11248/27", "-2072288/125", "-8510/729"]),
    ("d5", ["5000/9", "69837824/375", "-7400/2187"]),
    ("d6", ["-55000/27", "-107435369728/253125", "15760/729"]),
    ("d7", ["41600/27", "14459736392/50625", "-39880/2187"]),
];

#[test]
fn tables_agree_with_independent_parse() {
    for (name, want) in EXPECTED {
        for (p, w) in POINTS.iter().zip(want) {
            let v = Vars::new(r(p[0]), r(p[1]), r(p[2]), r(p[3]), r(p[4])).with_times(r(p[5]), r(p[6]));
            let got: Rational = named(name, &v).unwrap();
            assert_eq!(got, r(w), "{name} at {p:?}");
        }
    }
}
