//! The nested-radical product for π and the doubled-polygon bounds, both
//! measured against a 40-digit reference.

use vieta::pi::{archimedes_polygon, convergence_report, validate_reference_pi, viete_product};

fn main() {
    println!("reference agrees with Machin's formula to {:.1e}", validate_reference_pi());

    let series = viete_product(18).unwrap();
    for e in &series.entries {
        println!(
            "k={:>2}  {:.17}  error {:.3e}  ratio {}",
            e.k,
            e.value,
            e.abs_error,
            e.error_ratio.map_or(String::new(), |r| format!("{r:.6}"))
        );
    }
    let report = convergence_report(&series).unwrap();
    println!("mean ratio {:.6}: {:?}", report.mean_ratio, report.verdict);

    let b = archimedes_polygon(16).unwrap();
    println!(
        "{} sides: {:.13} < π < {:.13}, midpoint correct to {} decimals",
        b.sides,
        b.lower,
        b.upper,
        vieta::pi::correct_decimals(b.midpoint_error())
    );
}
