//! Expands a polynomial from integer roots and checks every elementary
//! symmetric function against the coefficient ratios, exactly.

use vieta::exact::{
    elementary_symmetric_all, numeric_roots, poly_from_roots, verify_vieta, vieta_from_coefficients, ExactRational,
    RootMultiset, DEFAULT_TOLERANCE,
};

fn main() {
    let roots = RootMultiset::from_integers(&[3, -1, 2, 2, -5]);
    let one = ExactRational::from_integer(1.into());
    let p = poly_from_roots(&roots, &one).expect("nonzero leading coefficient");
    println!("p(x) = {p}");

    let from_coeffs = vieta_from_coefficients(&p).unwrap();
    let from_roots = elementary_symmetric_all(&roots);
    for (j, s) in from_coeffs.as_slice().iter().enumerate() {
        println!("s_{} = {s:>5}   (roots give {})", j + 1, from_roots[j + 1]);
    }
    let report = verify_vieta(&p, &roots, 0.0).unwrap();
    println!("exact identities hold: {}", report.passed());

    // the same identities against numerically recovered roots
    let numeric = numeric_roots(&p, DEFAULT_TOLERANCE).unwrap();
    let approx = verify_vieta(&p, &numeric.multiset(), 1e-8).unwrap();
    println!("numeric roots: {:?}", numeric.real());
    println!("numeric identities hold within 1e-8: {}", approx.passed());
}
