//! Link SNRs, relay control schemes and the outage event for one channel
//! realization.

use core::fmt;
use core::str::FromStr;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::params::DerivedConstants;
use crate::{Error, Result};

/// Relative slack on the SNR threshold comparison.
///
/// The dynamic schemes place the uplink SNR exactly on the threshold, so the
/// inclusive comparison would otherwise be decided by rounding.
pub const SNR_TIE_RTOL: f64 = 1e-9;

/// One draw of the squared channel gains.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChannelRealization {
    pub gain_sq_a: f64,
    pub gain_sq_b: f64,
}

impl ChannelRealization {
    pub fn new(gain_sq_a: f64, gain_sq_b: f64) -> Result<Self> {
        for (function, v) in [("gain_sq_a", gain_sq_a), ("gain_sq_b", gain_sq_b)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Domain { function, value: v });
            }
        }
        Ok(Self {
            gain_sq_a,
            gain_sq_b,
        })
    }
}

/// Fractions of received power sent to the harvester and to the decoder.
///
/// Both are stored so the decoder share can be set without the cancellation
/// in `1 - rho` when `rho` is close to one.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PowerSplit {
    pub harvest: f64,
    pub decode: f64,
}

impl PowerSplit {
    pub fn from_rho(rho: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&rho) {
            return Err(Error::InvalidRho(rho));
        }
        Ok(Self {
            harvest: rho,
            decode: 1.0 - rho,
        })
    }

    /// The split that leaves the decoder exactly `needed` of the received power
    /// `gain` (in the same normalised units), harvesting the rest.
    fn just_enough(gain: f64, needed: f64) -> Self {
        if gain > needed {
            Self {
                harvest: (gain - needed) / gain,
                decode: needed / gain,
            }
        } else {
            Self {
                harvest: 0.0,
                decode: 1.0,
            }
        }
    }
}

/// Control variables chosen by a scheme for one realization.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SchemeDecision {
    pub split_a: PowerSplit,
    pub split_b: PowerSplit,
    pub theta: f64,
}

impl SchemeDecision {
    pub fn new(rho_a: f64, rho_b: f64, theta: f64) -> Result<Self> {
        check_theta(theta)?;
        Ok(Self {
            split_a: PowerSplit::from_rho(rho_a)?,
            split_b: PowerSplit::from_rho(rho_b)?,
            theta,
        })
    }

    #[inline]
    pub fn rho_a(&self) -> f64 {
        self.split_a.harvest
    }

    #[inline]
    pub fn rho_b(&self) -> f64 {
        self.split_b.harvest
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidTheta(theta))
    }
}

/// The four link SNRs of a realization.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SnrTuple {
    pub uplink_a: f64,
    pub uplink_b: f64,
    pub downlink_a: f64,
    pub downlink_b: f64,
}

impl SnrTuple {
    #[inline]
    pub fn min(&self) -> f64 {
        self.uplink_a
            .min(self.uplink_b)
            .min(self.downlink_a)
            .min(self.downlink_b)
    }
}

/// `(gamma_AR, gamma_BR)`.
#[inline]
pub fn uplink_snrs(
    consts: &DerivedConstants,
    ch: &ChannelRealization,
    dec: &SchemeDecision,
) -> (f64, f64) {
    let k = consts.tx_power_w / consts.noise_w;
    (
        k * ch.gain_sq_a * dec.split_a.decode / consts.z_a,
        k * ch.gain_sq_b * dec.split_b.decode / consts.z_b,
    )
}

/// Harvested powers at the relay from each terminal, watts.
#[inline]
pub fn harvested_powers(
    consts: &DerivedConstants,
    ch: &ChannelRealization,
    dec: &SchemeDecision,
) -> (f64, f64) {
    let p = consts.tx_power_w;
    (
        p * dec.split_a.harvest * ch.gain_sq_a / consts.z_a,
        p * dec.split_b.harvest * ch.gain_sq_b / consts.z_b,
    )
}

/// Whether harvested power `h` fails to activate a receiver with sensitivity `p_th`.
#[inline]
pub fn below_sensitivity(h: f64, p_th: f64) -> bool {
    h <= 0.0 || h < p_th
}

/// `(gamma_RA, gamma_RB)` with every harvested contribution counted.
#[inline]
pub fn downlink_snrs(
    consts: &DerivedConstants,
    ch: &ChannelRealization,
    dec: &SchemeDecision,
) -> (f64, f64) {
    let (ha, hb) = harvested_powers(consts, ch, dec);
    downlink_from_harvest(consts, ch, dec.theta, ha + hb)
}

/// `(gamma_RA, gamma_RB)` where a terminal's contribution is dropped when it
/// is below the configured circuit sensitivity. Without a sensitivity this
/// equals [`downlink_snrs`].
#[inline]
pub fn downlink_snrs_gated(
    consts: &DerivedConstants,
    ch: &ChannelRealization,
    dec: &SchemeDecision,
) -> (f64, f64) {
    let (mut ha, mut hb) = harvested_powers(consts, ch, dec);
    if let Some(p_th) = consts.sensitivity_w {
        if below_sensitivity(ha, p_th) {
            ha = 0.0;
        }
        if below_sensitivity(hb, p_th) {
            hb = 0.0;
        }
    }
    downlink_from_harvest(consts, ch, dec.theta, ha + hb)
}

#[inline]
fn downlink_from_harvest(
    consts: &DerivedConstants,
    ch: &ChannelRealization,
    theta: f64,
    harvested: f64,
) -> (f64, f64) {
    let (xa, xb) = consts.x_factors(theta);
    let e = harvested / consts.tx_power_w;
    (xa * ch.gain_sq_a * e, xb * ch.gain_sq_b * e)
}

/// All four SNRs, applying sensitivity gating when configured.
#[inline]
pub fn snr_tuple(
    consts: &DerivedConstants,
    ch: &ChannelRealization,
    dec: &SchemeDecision,
) -> SnrTuple {
    let (uplink_a, uplink_b) = uplink_snrs(consts, ch, dec);
    let (downlink_a, downlink_b) = downlink_snrs_gated(consts, ch, dec);
    SnrTuple {
        uplink_a,
        uplink_b,
        downlink_a,
        downlink_b,
    }
}

/// `true` when any link misses the threshold.
#[inline]
pub fn outage_indicator(consts: &DerivedConstants, snrs: &SnrTuple) -> bool {
    snrs.min() < consts.snr_threshold * (1.0 - SNR_TIE_RTOL)
}

/// Fixed, equal power splitting with `theta = 0.5`.
pub fn decide_static_equal(rho_fixed: f64) -> Result<SchemeDecision> {
    SchemeDecision::new(rho_fixed, rho_fixed, 0.5)
}

fn optimal_splits(consts: &DerivedConstants, ch: &ChannelRealization) -> (PowerSplit, PowerSplit) {
    (
        PowerSplit::just_enough(ch.gain_sq_a, consts.varpi * consts.z_a),
        PowerSplit::just_enough(ch.gain_sq_b, consts.varpi * consts.z_b),
    )
}

/// Harvest everything beyond what decoding needs, `rho_i = max(1 - varpi Z_i / |h_i|^2, 0)`.
pub fn decide_dynamic_ps(
    consts: &DerivedConstants,
    ch: &ChannelRealization,
    theta: f64,
) -> Result<SchemeDecision> {
    check_theta(theta)?;
    let (split_a, split_b) = optimal_splits(consts, ch);
    Ok(SchemeDecision {
        split_a,
        split_b,
        theta,
    })
}

/// Optimal `theta* = |h_A| sqrt(Z_B) / (|h_A| sqrt(Z_B) + |h_B| sqrt(Z_A))`.
///
/// Both gains zero gives 0.5. A single zero gain gives a value pushed just
/// inside (0, 1).
pub fn optimal_theta(consts: &DerivedConstants, ch: &ChannelRealization) -> f64 {
    let u = (ch.gain_sq_a * consts.z_b).sqrt();
    let v = (ch.gain_sq_b * consts.z_a).sqrt();
    if u + v == 0.0 {
        return 0.5;
    }
    let theta = u / (u + v);
    theta.clamp(f64::EPSILON, 1.0 - f64::EPSILON)
}

/// Optimal splits combined with the optimal power allocation.
pub fn decide_improved(consts: &DerivedConstants, ch: &ChannelRealization) -> SchemeDecision {
    let (split_a, split_b) = optimal_splits(consts, ch);
    SchemeDecision {
        split_a,
        split_b,
        theta: optimal_theta(consts, ch),
    }
}

/// A relay control scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Scheme {
    /// Fixed equal splitting ratio at both links, `theta = 0.5`.
    StaticEqual { rho: f64 },
    /// Optimal splitting with a fixed allocation ratio.
    DynamicPs { theta: f64 },
    /// Optimal splitting and optimal allocation ratio.
    Improved,
}

impl Scheme {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Scheme::StaticEqual { rho } => PowerSplit::from_rho(rho).map(|_| ()),
            Scheme::DynamicPs { theta } => check_theta(theta),
            Scheme::Improved => Ok(()),
        }
    }

    /// The scheme's decision for one realization. `self` must be valid.
    #[inline]
    pub fn decide(&self, consts: &DerivedConstants, ch: &ChannelRealization) -> SchemeDecision {
        match *self {
            Scheme::StaticEqual { rho } => SchemeDecision {
                split_a: PowerSplit {
                    harvest: rho,
                    decode: 1.0 - rho,
                },
                split_b: PowerSplit {
                    harvest: rho,
                    decode: 1.0 - rho,
                },
                theta: 0.5,
            },
            Scheme::DynamicPs { theta } => {
                let (split_a, split_b) = optimal_splits(consts, ch);
                SchemeDecision {
                    split_a,
                    split_b,
                    theta,
                }
            }
            Scheme::Improved => decide_improved(consts, ch),
        }
    }

    /// Whether a closed-form outage expression exists.
    pub fn has_closed_form(&self) -> bool {
        !matches!(self, Scheme::StaticEqual { .. })
    }
}

/// Formats as the scheme id used in result tables: `static_0.5`,
/// `dynamic_0.5`, `improved`.
impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::StaticEqual { rho } => write!(f, "static_{rho}"),
            Scheme::DynamicPs { theta } => write!(f, "dynamic_{theta}"),
            Scheme::Improved => f.write_str("improved"),
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownScheme(s.into());
        let scheme = if s == "improved" {
            Scheme::Improved
        } else if let Some(arg) = s.strip_prefix("static_") {
            Scheme::StaticEqual {
                rho: arg.parse().map_err(|_| unknown())?,
            }
        } else if let Some(arg) = s.strip_prefix("dynamic_") {
            Scheme::DynamicPs {
                theta: arg.parse().map_err(|_| unknown())?,
            }
        } else {
            return Err(unknown());
        };
        scheme.validate()?;
        Ok(scheme)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{derive_constants, SystemParams};
    use alloc::string::ToString;
    use approx::assert_relative_eq;

    fn defaults() -> DerivedConstants {
        derive_constants(&SystemParams::default(), 0.5).unwrap()
    }

    fn ch(a: f64, b: f64) -> ChannelRealization {
        ChannelRealization::new(a, b).unwrap()
    }

    #[test]
    fn full_harvest_kills_uplink() {
        let c = defaults();
        let d = SchemeDecision::new(1.0, 1.0, 0.5).unwrap();
        assert_eq!(uplink_snrs(&c, &ch(1.0, 1.0), &d), (0.0, 0.0));
    }

    #[test]
    fn uplink_boundary_identity() {
        let c = defaults();
        let d = SchemeDecision::new(0.0, 0.0, 0.5).unwrap();
        let (a, b) = uplink_snrs(&c, &ch(c.varpi * c.z_a, c.varpi * c.z_b), &d);
        assert_relative_eq!(a, 3.0, max_relative = 1e-14);
        assert_relative_eq!(b, 3.0, max_relative = 1e-14);
    }

    #[test]
    fn uplink_reference_value() {
        let c = defaults();
        let d = SchemeDecision::new(0.3, 0.3, 0.5).unwrap();
        let (a, _) = uplink_snrs(&c, &ch(1.0, 1.0), &d);
        assert_relative_eq!(a, 245617053.98601367071, max_relative = 1e-12);
    }

    #[test]
    fn downlink_zero_without_harvest() {
        let c = defaults();
        let d = SchemeDecision::new(0.0, 0.0, 0.5).unwrap();
        assert_eq!(downlink_snrs(&c, &ch(1.0, 2.0), &d), (0.0, 0.0));
    }

    #[test]
    fn downlink_reference_values() {
        let c = defaults();
        let h = ch(2.0, 1.0);
        let d = decide_dynamic_ps(&c, &h, 0.5).unwrap();
        let (a, b) = downlink_snrs(&c, &h, &d);
        assert_relative_eq!(a, 151545.43373719967521, max_relative = 1e-12);
        assert_relative_eq!(b, 3901.9838866486976401, max_relative = 1e-12);
    }

    #[test]
    fn downlink_theta_limits() {
        let c = defaults();
        let h = ch(1.0, 1.0);
        let d = SchemeDecision::new(0.5, 0.5, 1e-12).unwrap();
        assert!(downlink_snrs(&c, &h, &d).1 < 1e-12);
        let d = SchemeDecision::new(0.5, 0.5, 1.0 - 1e-12).unwrap();
        assert!(downlink_snrs(&c, &h, &d).0 < 1e-12);
    }

    #[test]
    fn static_equal_decisions() {
        for rho in [0.5, 0.0, 0.7] {
            let d = decide_static_equal(rho).unwrap();
            assert_eq!((d.rho_a(), d.rho_b(), d.theta), (rho, rho, 0.5));
        }
        assert_eq!(decide_static_equal(1.5), Err(Error::InvalidRho(1.5)));
    }

    #[test]
    fn dynamic_split_rule() {
        let c = defaults();
        let wz = c.varpi * c.z_a;
        let d = decide_dynamic_ps(&c, &ch(wz, 1.0), 0.5).unwrap();
        assert_eq!(d.rho_a(), 0.0);
        let d = decide_dynamic_ps(&c, &ch(2.0 * wz, 1.0), 0.5).unwrap();
        assert_relative_eq!(d.rho_a(), 0.5, max_relative = 1e-15);
        let d = decide_dynamic_ps(&c, &ch(0.5 * wz, 0.0), 0.5).unwrap();
        assert_eq!((d.rho_a(), d.rho_b()), (0.0, 0.0));
        assert!(decide_dynamic_ps(&c, &ch(1.0, 1.0), 1.0).is_err());
    }

    #[test]
    fn improved_theta_values() {
        let c = defaults();
        let d = decide_improved(&c, &ch(2.0, 1.0));
        assert_relative_eq!(d.theta, 0.86172600585842247, max_relative = 1e-14);
        let d = decide_improved(&c, &ch(c.z_a, c.z_b));
        assert_relative_eq!(d.theta, 0.5, max_relative = 1e-15);
        assert_eq!(decide_improved(&c, &ch(0.0, 0.0)).theta, 0.5);
        assert!(decide_improved(&c, &ch(1.0, 1e-300)).theta > 1.0 - 1e-12);
    }

    #[test]
    fn inclusive_threshold() {
        let c = defaults();
        let at = SnrTuple {
            uplink_a: 3.0,
            uplink_b: 3.0,
            downlink_a: 3.0,
            downlink_b: 3.0,
        };
        assert!(!outage_indicator(&c, &at));
        let fail = SnrTuple {
            uplink_a: 1.5,
            uplink_b: 1e9,
            downlink_a: 1e9,
            downlink_b: 1e9,
        };
        assert!(outage_indicator(&c, &fail));
    }

    #[test]
    fn vanishing_threshold_always_succeeds() {
        let p = SystemParams {
            rate_bps_hz: 1e-300,
            ..SystemParams::default()
        };
        let c = derive_constants(&p, 0.5).unwrap();
        let weak = SnrTuple {
            uplink_a: 1e-100,
            uplink_b: 1e-200,
            downlink_a: 1e-250,
            downlink_b: 1e-280,
        };
        assert!(!outage_indicator(&c, &weak));
    }

    #[test]
    fn dynamic_uplink_sits_on_threshold() {
        let c = defaults();
        let h = ch(0.7, 1.3);
        let d = decide_dynamic_ps(&c, &h, 0.5).unwrap();
        let (a, b) = uplink_snrs(&c, &h, &d);
        assert_relative_eq!(a, 3.0, max_relative = 1e-12);
        assert_relative_eq!(b, 3.0, max_relative = 1e-12);
    }

    #[test]
    fn gating_drops_weak_link() {
        let p = SystemParams {
            circuit_sensitivity_dbm: Some(-20.0),
            ..SystemParams::default()
        };
        let c = derive_constants(&p, 0.5).unwrap();
        let h = ch(2.0, 0.3);
        let d = decide_dynamic_ps(&c, &h, 0.5).unwrap();
        let (ha, hb) = harvested_powers(&c, &h, &d);
        assert!(ha > 1e-5 && hb < 1e-5);
        let (ga, _) = downlink_snrs_gated(&c, &h, &d);
        let (ua, _) = downlink_snrs(&c, &h, &d);
        assert_relative_eq!(ga / ua, ha / (ha + hb), max_relative = 1e-12);
    }

    #[test]
    fn scheme_ids_round_trip() {
        for s in ["static_0.5", "dynamic_0.3", "improved", "static_0.7"] {
            assert_eq!(s.parse::<Scheme>().unwrap().to_string(), s);
        }
        assert!(matches!("greedy".parse::<Scheme>(), Err(Error::UnknownScheme(_))));
        assert!("dynamic_1.5".parse::<Scheme>().is_err());
    }
}
