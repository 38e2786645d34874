//! Fourier transform of a small function in both normalizations, with a
//! round trip and a Parseval check.
//!
//! cargo run --example walsh_transform

use hamming_energy::functionals::l2_norm;
use hamming_energy::spectral::{fourier_forward, fourier_forward_counting, fourier_inverse};
use hamming_energy::{DenseFunction, Normalization, Point};

fn main() {
    let n = 3;
    let mut f = DenseFunction::zeros(n).unwrap();
    f.set(Point(0b011), 0.5);
    f.set(Point(0b101), -1.25);
    f.set(Point(0b110), 2.0);

    let hat = fourier_forward(&f);
    let counting = fourier_forward_counting(&f);
    println!("xi   expectation          counting");
    for (xi, (a, b)) in hat.coeffs().iter().zip(counting.coeffs()).enumerate() {
        println!("{}  {a:>20.16} {b:>20.16}", Point(xi as u64).to_bitstring(n));
    }

    let back = fourier_inverse(&hat).unwrap();
    println!("round trip max error: {:e}", back.max_abs_diff(&f));

    // E|f|^2 = sum |f^|^2 under the expectation normalization.
    let lhs = l2_norm(&f).powi(2);
    let rhs: f64 = hat.coeffs().iter().map(|c| c * c).sum();
    println!("Parseval: {lhs} vs {rhs}");

    let renorm = counting.renormalized(Normalization::Expectation);
    println!("counting -> expectation agrees: {}", renorm.coeffs() == hat.coeffs());
}
