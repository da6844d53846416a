//! The regular heptagon from a marked-ruler construction, with the point on
//! the extended diameter that makes it possible.

use vieta::geometry::{heptagon_construct, heptagon_cyclotomic_check, Circle};

fn main() {
    let h = heptagon_construct(&Circle::unit()).unwrap();
    let p = &h.point_i;
    println!("|ID| = {:.15}, cubic residual {:.1e}", p.x, p.x.powi(3) - 7.0 / 3.0 * p.x - 7.0 / 27.0);
    println!("DE² = {:.15} (7/9 = {:.15})", p.r_squared, 7.0 / 9.0);
    println!(
        "central angle {:.15} (2π/7 = {:.15}), side {:.15}",
        h.central_angle,
        2.0 * std::f64::consts::PI / 7.0,
        h.side
    );
    for (k, v) in h.vertices.iter().enumerate() {
        println!("  vertex {k}: ({:.12}, {:.12})", v.x, v.y);
    }
    let check = heptagon_cyclotomic_check().unwrap();
    for (k, y, r) in &check.roots {
        println!("y = 2cos(2π·{k}/7) = {y:.15}, y³ + y² - 2y - 1 = {r:.1e}");
    }
    println!("verified: {}", h.trace.is_verified() && check.passed);
}
