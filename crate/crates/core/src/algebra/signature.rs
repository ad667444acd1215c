use std::fmt;

use super::AlgebraError;

/// Largest supported dimension; blades are bitsets in a `u32`.
pub const MAX_DIM: usize = 12;

/// Metric signature `Cl(p,q,r)`: the first `p` basis vectors square to +1,
/// the next `q` to -1, the last `r` to 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    p: usize,
    q: usize,
    r: usize,
    norm_sign: i8,
}

impl Signature {
    /// The pseudo-norm sign defaults to -1 when `p > q` and +1 otherwise, so
    /// that vectors of the dominant kind get a positive `psnorm`.
    pub fn new(p: usize, q: usize, r: usize) -> Result<Self, AlgebraError> {
        let n = p + q + r;
        if n == 0 || n > MAX_DIM {
            return Err(AlgebraError::InvalidSignature { p, q, r });
        }
        let norm_sign = if p > q { -1 } else { 1 };
        Ok(Signature { p, q, r, norm_sign })
    }

    pub fn with_norm_sign(mut self, sign: i8) -> Self {
        self.norm_sign = if sign < 0 { -1 } else { 1 };
        self
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.p + self.q + self.r
    }

    pub fn norm_sign(&self) -> i8 {
        self.norm_sign
    }

    /// Square of the 1-based basis vector `k`.
    pub fn square(&self, k: usize) -> i8 {
        debug_assert!(k >= 1 && k <= self.dim());
        if k <= self.p {
            1
        } else if k <= self.p + self.q {
            -1
        } else {
            0
        }
    }

    pub fn num_blades(&self) -> usize {
        1 << self.dim()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{},{})", self.p, self.q, self.r)
    }
}
