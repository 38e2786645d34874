//! Writes a function and a set in the text formats the CLI reads, then parses
//! them back.
//!
//! cargo run --example function_files

use hamming_energy::io::{parse_function, parse_set, write_function, write_set};
use hamming_energy::{DenseFunction, PointSet, SphereSpec};

fn main() {
    let set = PointSet::sphere(SphereSpec::new(4, 2).unwrap());
    let set_text = write_set(&set);
    print!("{set_text}");
    assert_eq!(parse_set(&set_text).unwrap(), set);

    let mut f = DenseFunction::indicator(&set);
    for (i, &x) in set.points().iter().enumerate() {
        f.set(x, 1.0 / (i as f64 + 3.0));
    }
    let fn_text = write_function(&f);
    print!("{fn_text}");
    let g = parse_function(&fn_text).unwrap();
    println!("bit-exact round trip: {}", g == f);

    match parse_function("n=4\n0011 1\n001 2\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
