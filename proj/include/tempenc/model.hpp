#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tempenc/errors.hpp"

namespace tempenc {

/// 8-bit grayscale intensity. The whole pixel range is representable, so the
/// forward mapping needs no runtime range check.
using Pixel = std::uint8_t;

/// One pixel step corresponds to 1 mV in the exponent of the current law when
/// it is written directly in terms of pixels (the voltage map is pixel/2 mV
/// and the exponent carries the factor 1/2 separately).
inline constexpr double kPixelVolt = 1e-3;

/// Circuit constants of the encoder. All values in SI units.
///
/// Defaults are a consistent 45 nm-style operating point: nanoampere
/// subthreshold currents, sub-microsecond integrate times, and an enable
/// clock of 1.1 MHz. Every field can be overridden through the config file.
struct DeviceParams {
	double v_dd = 1.0;           ///< supply voltage [V]
	double v_tp_abs = 0.45;      ///< |V_tp|, p-type threshold magnitude [V]
	double slope_s = 1.3;        ///< subthreshold slope factor (dimensionless)
	double u_t = 0.02585;        ///< thermal voltage at 300 K [V]
	double v_tm = 0.4;           ///< membrane threshold [V]
	double v_leak = 0.25;        ///< leak transistor bias [V]; documentation only
	double i_leak = 1e-9;        ///< constant leak current [A]
	double t_samp = 1.0 / 1.1e6; ///< neuron-enable clock period [s]
};

/// One neuron branch: a membrane capacitor charged by a weighted copy of the
/// mirrored input current.
struct Branch {
	double c_mem;    ///< membrane capacitance [F]
	double k_weight; ///< current-mirror weight, the prefactor of the current law [A]
};

/// Ordered list of branches. Capacitances must increase strictly along the
/// list so that every inter-spike interval is positive.
struct BranchSet {
	std::vector<Branch> branches;

	std::size_t size() const { return branches.size(); }
	std::size_t interval_count() const
	{
		return branches.size() < 2 ? 0 : branches.size() - 1;
	}

	/// True when every branch carries the same mirror weight. The closed-form
	/// interval expression is only exposed in this regime.
	bool shared_k() const;

	/// Three branches at 50/100/150 fF, 200 nA weight each.
	static BranchSet defaults();
};

/// Input voltage for a pixel: pixel/2 millivolts, returned in volts.
double pixel_to_input_voltage(Pixel p);

/// Inverse of the pixel-to-voltage map, rounded half-up and clamped to
/// [0, 255]. When `out_of_range` is non-null it is set when the unclamped
/// value lies outside the pixel range, letting the caller clamp or reject.
Pixel input_voltage_to_pixel(double v_in, bool *out_of_range = nullptr);

/// Potential at the diode-connected midpoint: the average of V_DD and V_in.
double intermediate_potential(double v_in, const DeviceParams &params);

/// Mirrored subthreshold current charging the branch capacitor:
///
///   I_ex = K * exp( ((V_DD - V_in)/2 - |V_tp|) / (s * U_T) )
///
/// Strictly decreasing in V_in.
double excitatory_current(double v_in, const Branch &branch,
                          const DeviceParams &params);

/// Same current written directly in pixel units,
///
///   I_ex = K * exp( (2 V_DD - pixel*1mV - 4|V_tp|) / (4 s U_T) )
///
/// Agrees with excitatory_current composed with the voltage map to within
/// floating-point noise; kept as a separate route so the equivalence is
/// testable.
double excitatory_current_from_pixel(Pixel p, const Branch &branch,
                                     const DeviceParams &params);

/// Time for the membrane to ramp from reset to threshold:
///
///   X = C_mem * V_TM / (I_ex - I_leak)
///
/// Throws NonSpikingError when the net current is non-positive.
double integrating_time(const Branch &branch, double i_ex,
                        const DeviceParams &params);

/// Inter-spike interval between branches i and i+1 for a given pixel.
///
/// With zero leak and a shared mirror weight this is the closed form
///
///   D_i = (C_{i+1} - C_i) * V_TM * (1/K)
///         * exp( (pixel*1mV + 4|V_tp| - 2 V_DD) / (4 s U_T) )
///
/// Otherwise the interval is the difference of the two integrate times,
/// which is exact for any leak and per-branch weights.
double interspike_interval_analytic(Pixel p, std::size_t i,
                                    const BranchSet &bset,
                                    const DeviceParams &params);

/// Recover the pixel whose interval between branches i and i+1 equals `d`.
/// Requires a shared mirror weight across the pair. Rounds half-up and
/// clamps to [0, 255]; values more than `tolerance_px` outside the rounding
/// bounds [-0.5, 255.5] raise OutOfRangeError (a corrupted interval).
Pixel decode_pixel_from_interval(double d, std::size_t i,
                                 const BranchSet &bset,
                                 const DeviceParams &params,
                                 double tolerance_px = 0.5);

/// Outcome of validate_params. Empty violation list means the configuration
/// is usable for encoding.
struct ValidationReport {
	std::vector<std::string> violations;

	bool ok() const { return violations.empty(); }
	std::string to_string() const;
};

/// Checks every type invariant plus the two operating conditions:
/// the slowest branch must cross threshold inside one enable window at the
/// dimmest pixel (255), and the leak must not swamp the excitatory current
/// at that pixel.
ValidationReport validate_params(const BranchSet &bset,
                                 const DeviceParams &params);

} // namespace tempenc
