//! Trisects an angle with a marked ruler and prints the verified construction
//! steps. Writes the figure to trisection.svg in the temp directory.

use vieta::geometry::trisect_angle;

fn main() {
    let deg: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(75.0);
    let t = trisect_angle(deg.to_radians()).unwrap();
    println!("angle {deg}°, third {:.12}°", t.third.to_degrees());
    for step in &t.trace.steps {
        println!("  {:<24} {:<22} residual {:.1e}", step.name, step.assertion, step.residual);
    }
    let path = std::env::temp_dir().join("trisection.svg");
    std::fs::write(&path, t.scene.to_svg()).unwrap();
    println!("figure written to {}", path.display());
}
