#![allow(dead_code)]

use zn_schottky::signature::AnySignature;

/// Fixed signatures used by the geometric checks.
pub const GEOMETRIC_SUITE: [(u64, &str); 10] = [
    (2, "m=0,a=0,b=2;2;2"),
    (5, "m=0,a=1,b=5"),
    (4, "m=0,a=1,b=2;4"),
    (3, "m=0,a=2,b="),
    (6, "m=1,a=0,b=2,l=3"),
    (2, "ext:n=2,T2=2,T3=4"),
    (2, "ext:n=2,T1=1"),
    (2, "ext:n=2,T1=1,T4=2,T6=1"),
    (3, "ext:n=3,T2=3,T5=2,T7=1"),
    (3, "ext:n=3,T8=1:3"),
];

pub fn geometric_suite() -> Vec<(String, AnySignature)> {
    GEOMETRIC_SUITE
        .iter()
        .map(|&(n, text)| (format!("n={n} {text}"), AnySignature::parse(n, text).expect(text)))
        .collect()
}
