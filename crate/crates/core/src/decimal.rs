//! Exact 7-decimal display rounding.
//!
//! Reported bounds round outward by default — lower bounds down, upper
//! bounds up — so the printed pair still encloses the certified interval;
//! nearest rounding is available for comparing against published values.
//! All three directions are computed exactly from the binary value, never
//! through a second floating-point rounding.

use std::cmp::Ordering;

const SCALE_DIGITS: u32 = 7;
const SCALE: u64 = 10u64.pow(SCALE_DIGITS);

/// `(numerator, shift)` with `x = numerator / 2^shift` exactly, for finite
/// nonnegative `x`. The numerator already carries the 10^7 display scale.
fn scaled_mantissa(x: f64) -> (u128, u32) {
    assert!(x.is_finite() && x >= 0.0, "display value out of range: {x}");
    assert!(x < 1e12, "display value out of range: {x}");
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, exp) = if raw_exp == 0 {
        (frac, -1074i64)
    } else {
        (frac | (1u64 << 52), raw_exp - 1075)
    };
    let num = mantissa as u128 * SCALE as u128;
    if exp >= 0 {
        // x < 1e12 keeps this far below overflow
        (num << exp as u32, 0)
    } else {
        (num, (-exp) as u32)
    }
}

/// Largest multiple of 10^-7 not above `x`, as an integer scaled by 10^7.
pub fn floor7(x: f64) -> u64 {
    let (num, shift) = scaled_mantissa(x);
    if shift >= 128 {
        return 0;
    }
    (num >> shift) as u64
}

/// Smallest multiple of 10^-7 not below `x`, scaled by 10^7.
pub fn ceil7(x: f64) -> u64 {
    let (num, shift) = scaled_mantissa(x);
    if shift >= 128 {
        return if num == 0 { 0 } else { 1 };
    }
    let down = num >> shift;
    let exact = down << shift == num;
    (down + u128::from(!exact)) as u64
}

/// Nearest multiple of 10^-7 (ties away from zero), scaled by 10^7.
pub fn nearest7(x: f64) -> u64 {
    let (num, shift) = scaled_mantissa(x);
    if shift >= 127 {
        return 0;
    }
    let den = 1u128 << shift;
    (((num << 1) + den) / (den << 1)) as u64
}

/// Renders a 10^7-scaled integer with exactly seven decimals.
pub fn format7(scaled: u64) -> String {
    format!("{}.{:07}", scaled / SCALE, scaled % SCALE)
}

/// Exact comparison of `x` against `scaled / 10^7`.
pub fn cmp_scaled7(x: f64, scaled: u64) -> Ordering {
    let f = floor7(x);
    match f.cmp(&scaled) {
        Ordering::Equal => {
            let (num, shift) = scaled_mantissa(x);
            let exact = shift < 128 && (num >> shift) << shift == num;
            if exact {
                Ordering::Equal
            } else {
                Ordering::Greater // x sits strictly above its floor
            }
        }
        other => other,
    }
}
