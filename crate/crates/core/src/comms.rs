//! Physical layer: free-space path loss, SINR under jamming, Shannon rate
//! and the uncoded Gray-coded M-QAM bit error rate.
//!
//! Logarithms are base 2 throughout: bits per symbol is `log2(M)` and the
//! rate is `log2(1 + s)`, which is what makes the `2^R - 1` rate-floor
//! threshold line up.

use core::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};

/// Speed of light used to turn a carrier frequency into a wavelength (m/s).
pub const SPEED_OF_LIGHT: f64 = 2.998e8;

/// Far-field path loss is meaningless closer than this (meters).
pub const MIN_DISTANCE: f64 = 1e-6;

/// A square (or, verbatim, non-square) QAM constellation and the constants
/// of its BER approximation `(prefactor / bits) * Q(sqrt(exponent * s))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulationScheme {
    size: u32,
    bits: f64,
    prefactor: f64,
    exponent: f64,
}

impl ModulationScheme {
    pub fn new(size: u32) -> Result<Self> {
        if size < 2 {
            return Err(Error::Domain {
                what: "constellation size",
                value: size as f64,
            });
        }
        let m = size as f64;
        Ok(Self {
            size,
            bits: libm::log2(m),
            prefactor: 4.0 * (1.0 - 1.0 / libm::sqrt(m)),
            exponent: 3.0 / (m - 1.0),
        })
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Bits per symbol, `log2(M)`.
    pub fn bits_per_symbol(&self) -> f64 {
        self.bits
    }

    /// `4 (1 - 1/sqrt(M))`.
    pub fn prefactor(&self) -> f64 {
        self.prefactor
    }

    /// `3 / (M - 1)`.
    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    /// BER at SINR `s >= 0` without the domain check.
    pub(crate) fn ber_unchecked(&self, s: f64) -> f64 {
        self.prefactor / self.bits * q_function(libm::sqrt(self.exponent * s))
    }

    /// `s * g'(s)`, which stays finite (and tends to zero) as `s -> 0`.
    pub(crate) fn scaled_slope(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        let bs = self.exponent * s;
        -(self.prefactor / (2.0 * self.bits)) * libm::sqrt(bs / (2.0 * PI)) * libm::exp(-0.5 * bs)
    }
}

/// Channel constants shared by one team's links.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    /// Antenna/propagation constant.
    pub rho: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    /// Receiver noise power (W).
    pub noise_power: f64,
}

impl ChannelParams {
    pub fn new(rho: f64, alpha: f64, noise_power: f64) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::Domain { what: "rho", value: rho });
        }
        if !(alpha >= 1.0 && alpha.is_finite()) {
            return Err(Error::Domain { what: "path-loss exponent", value: alpha });
        }
        if !(noise_power > 0.0 && noise_power.is_finite()) {
            return Err(Error::Domain { what: "noise power", value: noise_power });
        }
        Ok(Self { rho, alpha, noise_power })
    }
}

/// One transmitter's contribution at one receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    /// Transmit power (W).
    pub transmit_power: f64,
    /// Share of the transmit power aimed at this receiver.
    pub fraction: f64,
    /// Transmitter-receiver distance (m).
    pub distance: f64,
}

impl LinkBudget {
    pub fn new(transmit_power: f64, fraction: f64, distance: f64) -> Result<Self> {
        if !(transmit_power >= 0.0 && transmit_power.is_finite()) {
            return Err(Error::Domain { what: "transmit power", value: transmit_power });
        }
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::Domain { what: "power fraction", value: fraction });
        }
        check_distance(distance)?;
        Ok(Self { transmit_power, fraction, distance })
    }
}

pub(crate) fn check_distance(d: f64) -> Result<()> {
    if d > MIN_DISTANCE && d.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what: "distance", value: d })
    }
}

/// Free-space constant `G_T G_R lambda^2 / (4 pi)^2` for a carrier at
/// `frequency` hertz.
pub fn antenna_constant(gain_tx: f64, gain_rx: f64, frequency: f64) -> Result<f64> {
    for (what, value) in [("transmit gain", gain_tx), ("receive gain", gain_rx), ("frequency", frequency)] {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::Domain { what, value });
        }
    }
    let wavelength = SPEED_OF_LIGHT / frequency;
    let four_pi = 4.0 * PI;
    Ok(gain_tx * gain_rx * wavelength * wavelength / (four_pi * four_pi))
}

/// `rho * P * fraction * d^-alpha`.
pub fn received_power(budget: &LinkBudget, rho: f64, alpha: f64) -> Result<f64> {
    check_distance(budget.distance)?;
    Ok(rho * budget.transmit_power * budget.fraction * libm::pow(budget.distance, -alpha))
}

/// Signal to interference-plus-noise ratio. Requires `interference >= 0`
/// and `noise_power > 0`.
pub fn sinr(signal: f64, interference: f64, noise_power: f64) -> f64 {
    signal / (interference + noise_power)
}

/// Standard normal tail probability, `Q(x) = erfc(x / sqrt 2) / 2`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Uncoded M-QAM bit error rate at SINR `s`.
pub fn ber_mqam(s: f64, scheme: &ModulationScheme) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::Domain { what: "SINR", value: s });
    }
    Ok(scheme.ber_unchecked(s))
}

/// Derivative of [`ber_mqam`] with respect to the SINR. Undefined at `s = 0`
/// where it diverges like `s^-1/2`.
pub fn ber_mqam_derivative(s: f64, scheme: &ModulationScheme) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain { what: "SINR", value: s });
    }
    Ok(scheme.scaled_slope(s) / s)
}

/// Shannon rate `log2(1 + s)` in bits per channel use.
pub fn rate(s: f64) -> f64 {
    libm::log2(1.0 + s)
}
