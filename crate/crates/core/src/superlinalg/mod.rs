//! Superspaces, supermatrices in standard format, and exact subspace algebra.

mod matrix;
mod subspace;

pub use matrix::{kron, pi_shift, qtr, str, super_bracket, tensor_order, SuperMatrix};
pub use subspace::{kernel_of_images, nullspace, Coordinatizer, Echelon, Subspace};

use serde::{Deserialize, Serialize};

/// Superdimension `m|n`: `m` even basis vectors followed by `n` odd ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SuperDim {
    pub even: usize,
    pub odd: usize,
}

impl SuperDim {
    pub const fn new(even: usize, odd: usize) -> SuperDim {
        SuperDim { even, odd }
    }

    pub fn total(&self) -> usize {
        self.even + self.odd
    }

    /// Parity (0 or 1) of the `i`-th basis vector.
    #[inline]
    pub fn parity(&self, i: usize) -> u8 {
        u8::from(i >= self.even)
    }

    /// Superdimension of `V1 ⊗ V2`.
    pub fn tensor(&self, o: &SuperDim) -> SuperDim {
        SuperDim::new(self.even * o.even + self.odd * o.odd, self.even * o.odd + self.odd * o.even)
    }

    /// Superdimension of `End(V)`.
    pub fn end(&self) -> SuperDim {
        self.tensor(self)
    }

    /// The parity-swapped space `Π(V)`.
    pub fn shifted(&self) -> SuperDim {
        SuperDim::new(self.odd, self.even)
    }
}

impl std::fmt::Display for SuperDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}|{}", self.even, self.odd)
    }
}

/// Parity of a supermatrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn from_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// 0 or 1 for homogeneous parities.
    pub fn bit(&self) -> Option<u8> {
        match self {
            Parity::Even => Some(0),
            Parity::Odd => Some(1),
            Parity::Mixed => None,
        }
    }
}
