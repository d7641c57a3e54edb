//! Conversions between the internal unit system (nm, `k_B T`) and SI.

/// Default thermal energy, joules (about 300 K).
pub const KBT_J_DEFAULT: f64 = 4.14e-21;

/// Cubic metres per cubic nanometre.
const NM3: f64 = 1e-27;

/// Pressure in pascal from `k_B T / nm^3`.
pub fn pressure_to_pa(p_kbt_nm3: f64, kbt_j: f64) -> f64 {
    p_kbt_nm3 * kbt_j / NM3
}

/// Pressure in `k_B T / nm^3` from pascal.
pub fn pressure_from_pa(p_pa: f64, kbt_j: f64) -> f64 {
    p_pa * NM3 / kbt_j
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_kbt_per_nm3() {
        assert!((pressure_to_pa(1.0, KBT_J_DEFAULT) - 4.14e6).abs() < 1e-6);
        let p = 1.234;
        assert!((pressure_from_pa(pressure_to_pa(p, 5e-21), 5e-21) - p).abs() < 1e-15);
    }
}
