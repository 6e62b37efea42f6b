use super::CohError;

/// Maximum number of symmetric-product factors with positive degree.
pub const MAX_FACTORS: usize = 8;

/// Shape of `H*(Jac^d(C) x prod_i Sym^{k_i}(C))` as a free graded-commutative
/// algebra with per-factor degree caps.
///
/// Odd generators are numbered by bit position, which is also their canonical
/// order: `e'_0 .. e'_{2g-1}` first, then `zeta_{i,0} .. zeta_{i,2g-1}` for each
/// factor `i` with `k_i > 0` in increasing `i`. Indices `alpha` and `alpha + g`
/// form a symplectic pair. Factors with `k_i = 0` are points and contribute no
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraSignature {
    genus: usize,
    k: Vec<u32>,
    slot: Vec<Option<usize>>,
    positive: Vec<usize>,
}

impl AlgebraSignature {
    pub fn new(genus: usize, k: impl Into<Vec<u32>>) -> Result<Self, CohError> {
        let k = k.into();
        let positive: Vec<usize> = (0..k.len()).filter(|&i| k[i] > 0).collect();
        if positive.len() > MAX_FACTORS {
            return Err(CohError::TooLarge(format!(
                "{} positive factors exceed the limit of {MAX_FACTORS}",
                positive.len()
            )));
        }
        let odd = 2 * genus * (1 + positive.len());
        if odd > 64 {
            return Err(CohError::TooLarge(format!(
                "{odd} odd generators exceed the limit of 64"
            )));
        }
        if k.iter().any(|&ki| 2 * ki > u16::MAX as u32) {
            return Err(CohError::TooLarge("symmetric power too large".into()));
        }
        let mut slot = vec![None; k.len()];
        for (s, &i) in positive.iter().enumerate() {
            slot[i] = Some(s);
        }
        Ok(Self {
            genus,
            k,
            slot,
            positive,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn k(&self) -> &[u32] {
        &self.k
    }

    pub fn factors(&self) -> usize {
        self.k.len()
    }

    /// Factor indices with positive symmetric power, in slot order.
    pub fn positive_factors(&self) -> &[usize] {
        &self.positive
    }

    pub fn slot(&self, factor: usize) -> Option<usize> {
        self.slot.get(factor).copied().flatten()
    }

    pub fn slots(&self) -> usize {
        self.positive.len()
    }

    pub(crate) fn check_factor(&self, factor: usize) -> Result<(), CohError> {
        if factor >= self.k.len() {
            return Err(CohError::IndexOutOfRange(format!(
                "factor {factor} but the algebra has {} factors",
                self.k.len()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_alpha(&self, alpha: usize) -> Result<(), CohError> {
        if alpha >= 2 * self.genus {
            return Err(CohError::IndexOutOfRange(format!(
                "odd index {alpha} but 2g = {}",
                2 * self.genus
            )));
        }
        Ok(())
    }

    pub fn odd_generators(&self) -> usize {
        2 * self.genus * (1 + self.positive.len())
    }

    pub(crate) fn jac_bit(&self, alpha: usize) -> u32 {
        alpha as u32
    }

    pub(crate) fn zeta_bit(&self, slot: usize, alpha: usize) -> u32 {
        (2 * self.genus * (1 + slot) + alpha) as u32
    }

    pub(crate) fn jac_mask(&self) -> u64 {
        low_bits(2 * self.genus)
    }

    pub(crate) fn zeta_mask(&self, slot: usize) -> u64 {
        low_bits(2 * self.genus) << (2 * self.genus * (1 + slot))
    }

    /// Real-degree cap `2 k_i` of the factor in `slot`.
    pub(crate) fn cap(&self, slot: usize) -> u32 {
        2 * self.k[self.positive[slot]]
    }

    pub(crate) fn slot_k(&self, slot: usize) -> u32 {
        self.k[self.positive[slot]]
    }

    /// Complex dimension `g + sum k_i`.
    pub fn dimension(&self) -> usize {
        self.genus + self.k.iter().map(|&k| k as usize).sum::<usize>()
    }
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_factors_have_no_generators() {
        let sig = AlgebraSignature::new(2, vec![3, 0, 1]).unwrap();
        assert_eq!(sig.positive_factors(), &[0, 2]);
        assert_eq!(sig.slot(1), None);
        assert_eq!(sig.odd_generators(), 12);
        assert_eq!(sig.dimension(), 6);
        assert_eq!(sig.zeta_bit(1, 0), 8);
        assert_eq!(sig.zeta_mask(0), 0b1111_0000);
    }

    #[test]
    fn limits() {
        assert!(AlgebraSignature::new(11, vec![1, 1]).is_err());
        assert!(AlgebraSignature::new(0, vec![1; 9]).is_err());
        assert!(AlgebraSignature::new(0, vec![0; 20]).is_ok());
    }
}
