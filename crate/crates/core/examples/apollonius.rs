//! All circles tangent to three given circles, with the pairwise relations
//! and centers of similitude.

use vieta::apollonius::{classify_configuration, solve_ccc};
use vieta::geometry::{Circle, Point};

fn show(name: &str, c: [Circle; 3]) {
    let report = classify_configuration(&c[0], &c[1], &c[2]);
    println!("{name}:");
    for p in &report.pairs {
        println!("  circles {:?}: {:?}", p.pair, p.relation);
    }
    match solve_ccc(&c[0], &c[1], &c[2]) {
        Ok(sols) => {
            for s in sols {
                let o: Vec<String> = s.orientations.iter().map(|o| format!("{:?}", o.0)).collect();
                println!(
                    "  center ({:.9}, {:.9}) r {:.9}  {}",
                    s.circle.center.x,
                    s.circle.center.y,
                    s.circle.radius,
                    o.join(" ")
                );
            }
        }
        Err(e) => println!("  {e}"),
    }
}

fn circle(x: f64, y: f64, r: f64) -> Circle {
    Circle::new(Point::new(x, y), r).unwrap()
}

fn main() {
    show("generic", [circle(0.0, 0.0, 1.0), circle(4.0, 0.0, 1.0), circle(2.0, 3.0, 1.0)]);
    let h = 3f64.sqrt();
    show("mutually tangent", [circle(0.0, 0.0, 1.0), circle(2.0, 0.0, 1.0), circle(1.0, h, 1.0)]);
    show("collinear equal", [circle(0.0, 0.0, 1.0), circle(3.0, 0.0, 1.0), circle(6.0, 0.0, 1.0)]);
}
