use std::cmp::Ordering;
use std::fmt;

use super::Signature;

/// Basis blade as a bitset: bit `k-1` set means `e_k` is a factor, in
/// ascending index order. The empty set is the scalar unit.
///
/// Ordering is by grade, then by bitset, which is also the display order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_bits(bits: u32) -> Self {
        Blade(bits)
    }

    /// The basis vector `e_k` (1-based).
    pub fn basis(k: usize) -> Self {
        assert!((1..=32).contains(&k), "basis index out of range");
        Blade(1 << (k - 1))
    }

    /// Blade with the given distinct indices (any order; the set is taken).
    pub fn from_indices(indices: &[usize]) -> Self {
        Blade(indices.iter().fold(0, |acc, &k| acc | Blade::basis(k).0))
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn grade(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_scalar(&self) -> bool {
        self.0 == 0
    }

    /// 1-based indices, ascending.
    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|i| self.0 & (1 << i) != 0).map(|i| i + 1).collect()
    }

    /// Every blade of `sig`, in display order.
    pub fn all(sig: &Signature) -> Vec<Blade> {
        let mut v: Vec<Blade> = (0..sig.num_blades() as u32).map(Blade).collect();
        v.sort();
        v
    }

    pub fn of_grade(sig: &Signature, k: usize) -> Vec<Blade> {
        Blade::all(sig).into_iter().filter(|b| b.grade() == k).collect()
    }

    pub fn pseudoscalar(sig: &Signature) -> Blade {
        Blade((1u32 << sig.dim()) - 1)
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade().cmp(&other.grade()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_scalar() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.indices().iter().map(|k| format!("e{k}")).collect();
        f.write_str(&parts.join(""))
    }
}

/// Canonical product of two basis blades: `a b = sign * out`.
///
/// The sign is the parity of the transpositions needed to merge the two
/// ascending index lists, times the squares of the repeated indices.
pub fn blade_product(a: Blade, b: Blade, sig: &Signature) -> (i8, Blade) {
    let mut swaps = 0u32;
    let mut shifted = a.0 >> 1;
    while shifted != 0 {
        swaps += (shifted & b.0).count_ones();
        shifted >>= 1;
    }
    let mut sign: i8 = if swaps % 2 == 0 { 1 } else { -1 };
    let mut common = a.0 & b.0;
    while common != 0 {
        let k = common.trailing_zeros() as usize + 1;
        sign *= sig.square(k);
        if sign == 0 {
            break;
        }
        common &= common - 1;
    }
    (sign, Blade(a.0 ^ b.0))
}
