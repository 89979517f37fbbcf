//! Deterministic seed derivation. All randomness in the toolkit flows
//! through ChaCha8 generators seeded via this splitmix64-style mix, so a
//! recorded (base seed, index) pair reproduces a run exactly.

/// Derives an independent stream seed from a base seed and a salt
/// (trial index, factor role, ...).
pub fn derive_seed(base: u64, salt: u64) -> u64 {
    let mut z = base ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::derive_seed;

    #[test]
    fn deterministic_and_salt_sensitive() {
        assert_eq!(derive_seed(42, 1), derive_seed(42, 1));
        assert_ne!(derive_seed(42, 1), derive_seed(42, 2));
        assert_ne!(derive_seed(42, 1), derive_seed(43, 1));
        // salt 0 must still mix the base
        assert_ne!(derive_seed(42, 0), 42);
    }
}
