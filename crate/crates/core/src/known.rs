//! A few classical codes used as fixtures and oracles.

use crate::code::LinearCode;
use crate::gf2::BitVector;

/// The `[2,1,2]` code `{00, 11}`.
pub fn repetition2() -> LinearCode {
    repetition(2)
}

pub fn repetition(n: usize) -> LinearCode {
    LinearCode::from_rows(n, vec![BitVector::ones(n)]).expect("nonzero row")
}

/// The extended Hamming `[8,4,4]` code.
pub fn extended_hamming8() -> LinearCode {
    let rows = ["11110000", "00111100", "00001111", "10101010"]
        .iter()
        .map(|s| BitVector::parse_bits(s).unwrap())
        .collect();
    LinearCode::from_rows(8, rows).expect("independent rows")
}

/// The extended binary Golay `[24,12,8]` code: the cyclic `[23,12]` code with
/// generator polynomial `1 + x² + x⁴ + x⁵ + x⁶ + x¹⁰ + x¹¹`, plus an overall
/// parity coordinate.
pub fn golay24() -> LinearCode {
    const G: [usize; 7] = [0, 2, 4, 5, 6, 10, 11];
    let rows = (0..12)
        .map(|shift| {
            let mut v = BitVector::zeros(24);
            for &e in &G {
                v.set(e + shift, true);
            }
            // 7 taps: odd weight, so the parity coordinate is set
            v.set(23, true);
            v
        })
        .collect();
    LinearCode::from_rows(24, rows).expect("independent shifts")
}

/// Direct sum of `copies` copies of `{00, 11}`.
pub fn i2_sum(copies: usize) -> LinearCode {
    let n = 2 * copies;
    let rows = (0..copies)
        .map(|i| BitVector::from_support(n, &[2 * i, 2 * i + 1]).unwrap())
        .collect();
    LinearCode::from_rows(n, rows).expect("disjoint supports")
}
