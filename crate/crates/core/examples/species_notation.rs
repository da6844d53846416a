//! Parses species text, checks homogeneity, and translates to modern notation
//! and back.

use vieta::species::{check_homogeneity, from_modern, parse_species, to_modern, tokenize};

fn main() {
    let text = "A cubus + B quad in A æquetur B quad in Z";
    let tokens = tokenize(text).unwrap();
    println!("{} tokens", tokens.len());

    let eq = parse_species(text).unwrap();
    println!("dimension {}", check_homogeneity(&eq).unwrap());
    let modern = to_modern(&eq).unwrap();
    println!("modern   {}", modern.text);
    println!("normal   {}", modern.normal_form);
    println!("species  {}", from_modern(&modern.text).unwrap());

    for bad in ["A quad + B aequatur C", "A cubus + quad. in A, æquetur B quad. in Z."] {
        match parse_species(bad).and_then(|e| check_homogeneity(&e)) {
            Ok(d) => println!("{bad}: dimension {d}"),
            Err(e) => println!("{bad}: {e}"),
        }
    }
}
