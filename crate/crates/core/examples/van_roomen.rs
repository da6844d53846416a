//! The degree-45 chord equation with right-hand side √2: the positive roots are
//! the chords 2sin(1° + 8k°).

use vieta::chord::{count_with_multiplicity, sin_multiple_poly, van_roomen_positive_roots};

fn main() {
    let poly = sin_multiple_poly(45).unwrap();
    println!("s_45 has degree {} with leading coefficient {}", poly.degree(), poly.coefficient(45));
    let roots = van_roomen_positive_roots(2f64.sqrt()).unwrap();
    println!("{} positive roots ({} with multiplicity)", roots.len(), count_with_multiplicity(&roots));
    for r in &roots {
        println!(
            "{:>6.1}°  x = {:.15}  compensated residual {:.1e}  plain residual {:.1e}",
            r.angle_deg, r.value, r.residual, r.naive_residual
        );
    }
}
