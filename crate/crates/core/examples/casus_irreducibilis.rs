//! Cubics with three real roots solved by trisecting an angle, alongside
//! cubics with one real root solved by radicals.

use vieta::geometry::{solve_cubic_general, solve_trisection_cubic, CubicProblem};

fn main() {
    let t = solve_trisection_cubic(1.0).unwrap();
    println!("x³ - 3x = 1: {:?}", t.roots);
    println!("  construction steps: {}, verified: {}", t.trace.steps.len(), t.trace.is_verified());

    for (a2, a1, a0) in [(0.0, -7.0, 6.0), (-6.0, 11.0, -6.0), (0.0, 6.0, -20.0), (-3.0, 3.0, -1.0)] {
        let s = solve_cubic_general(&CubicProblem::monic(a2, a1, a0).unwrap()).unwrap();
        println!("x³ + ({a2})x² + ({a1})x + ({a0}) by {:?}:", s.method);
        for (z, r) in s.roots.iter().zip(&s.relative_residuals) {
            println!("  {z:.12}  relative residual {r:.1e}");
        }
    }
}
