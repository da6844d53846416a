//! States an equation in species, binds the givens, solves by degree and
//! checks the answer.

use vieta::cli::{run_pipeline, OutputFormat, PipelineRequest};

fn main() {
    let cases = [
        ("A quadratum + A in B aequatur C plano", vec![('B', 6), ('C', 16)]),
        ("A cubus + B quad in A aequatur B quad in Z", vec![('B', 1), ('Z', 20)]),
        ("A cubus aequatur B plano in A minus C solido", vec![('B', 7), ('C', 6)]),
        ("A aequatur B", vec![('B', 7)]),
    ];
    for (text, given) in cases {
        let report = run_pipeline(&PipelineRequest::new(text, &given)).unwrap();
        print!("{}", report.render(OutputFormat::Table, 12).unwrap());
        println!("positive roots: {:?}\n", report.positive_roots());
    }
}
