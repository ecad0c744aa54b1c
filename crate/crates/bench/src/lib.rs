//! Deterministic inputs shared by the kernel benchmarks.

use superalg::{Scalar, SuperDim, SuperMatrix};

/// Dense matrix with small integer entries spread over the field, fixed by `seed`.
pub fn sample_matrix(dim: SuperDim, seed: u64) -> SuperMatrix {
    SuperMatrix::from_fn(dim, |i, j| {
        let k = (i as u64 * 31 + j as u64 * 17 + seed * 7) % 11;
        let a = Scalar::int(k as i64 - 5);
        if k % 3 == 0 {
            &a * &Scalar::sqrt2()
        } else if k % 4 == 1 {
            &a * &Scalar::i()
        } else {
            a
        }
    })
}

/// Scalars with all four rational components nonzero.
pub fn sample_scalars(n: usize) -> Vec<Scalar> {
    (0..n as i64)
        .map(|k| {
            let r = |a: i64, b: i64| superalg::Rat::new(a, b);
            Scalar::from_parts(r(k + 1, 3), r(2 - k, 5), r(k * k + 1, 7), r(-1, k + 2))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_reproducible() {
        let d = SuperDim::new(2, 2);
        assert_eq!(sample_matrix(d, 3), sample_matrix(d, 3));
        assert!(sample_scalars(4).iter().all(|s| !s.is_zero()));
    }
}
