#include "tempenc/model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace tempenc {

namespace {

// Half-up rounding, so -0.5 -> 0 and 255.5 -> 256 (clamped afterwards).
double round_half_up(double x)
{
	return std::floor(x + 0.5);
}

void check_interval_pair(std::size_t i, const BranchSet &bset)
{
	if (bset.size() < 2 || i >= bset.size() - 1) {
		throw std::out_of_range("branch-pair index " + std::to_string(i) +
		                        " out of range for " +
		                        std::to_string(bset.size()) + " branches");
	}
	if (bset.branches[i + 1].c_mem <= bset.branches[i].c_mem) {
		throw DegenerateBranchesError(
		    "membrane capacitance does not increase from branch " +
		    std::to_string(i) + " to " + std::to_string(i + 1));
	}
}

} // namespace

bool BranchSet::shared_k() const
{
	for (const Branch &b : branches) {
		if (b.k_weight != branches.front().k_weight) {
			return false;
		}
	}
	return true;
}

BranchSet BranchSet::defaults()
{
	return {{{50e-15, 200e-9}, {100e-15, 200e-9}, {150e-15, 200e-9}}};
}

double pixel_to_input_voltage(Pixel p)
{
	return (static_cast<double>(p) / 2.0) * kPixelVolt;
}

Pixel input_voltage_to_pixel(double v_in, bool *out_of_range)
{
	const double raw = round_half_up(v_in / kPixelVolt * 2.0);
	if (out_of_range != nullptr) {
		*out_of_range = raw < 0.0 || raw > 255.0;
	}
	if (raw < 0.0) {
		return 0;
	}
	if (raw > 255.0) {
		return 255;
	}
	return static_cast<Pixel>(raw);
}

double intermediate_potential(double v_in, const DeviceParams &params)
{
	return (params.v_dd + v_in) / 2.0;
}

double excitatory_current(double v_in, const Branch &branch,
                          const DeviceParams &params)
{
	const double exponent =
	    ((params.v_dd - v_in) / 2.0 - params.v_tp_abs) /
	    (params.slope_s * params.u_t);
	return branch.k_weight * std::exp(exponent);
}

double excitatory_current_from_pixel(Pixel p, const Branch &branch,
                                     const DeviceParams &params)
{
	const double exponent =
	    (2.0 * params.v_dd - static_cast<double>(p) * kPixelVolt -
	     4.0 * params.v_tp_abs) /
	    (4.0 * params.slope_s * params.u_t);
	return branch.k_weight * std::exp(exponent);
}

double integrating_time(const Branch &branch, double i_ex,
                        const DeviceParams &params)
{
	const double i_net = i_ex - params.i_leak;
	if (i_net <= 0.0) {
		throw NonSpikingError("net charging current is not positive (i_ex = " +
		                      std::to_string(i_ex) + " A, i_leak = " +
		                      std::to_string(params.i_leak) + " A)");
	}
	return branch.c_mem * params.v_tm / i_net;
}

double interspike_interval_analytic(Pixel p, std::size_t i,
                                    const BranchSet &bset,
                                    const DeviceParams &params)
{
	check_interval_pair(i, bset);
	const Branch &lo = bset.branches[i];
	const Branch &hi = bset.branches[i + 1];

	if (params.i_leak == 0.0 && lo.k_weight == hi.k_weight) {
		// Closed form, valid exactly in the zero-leak shared-weight regime.
		const double delta_c = hi.c_mem - lo.c_mem;
		const double exponent =
		    (static_cast<double>(p) * kPixelVolt + 4.0 * params.v_tp_abs -
		     2.0 * params.v_dd) /
		    (4.0 * params.slope_s * params.u_t);
		return delta_c * params.v_tm * (1.0 / lo.k_weight) * std::exp(exponent);
	}

	// General case: difference of the exact integrate times.
	const double v_in = pixel_to_input_voltage(p);
	const double x_lo = integrating_time(lo, excitatory_current(v_in, lo, params), params);
	const double x_hi = integrating_time(hi, excitatory_current(v_in, hi, params), params);
	return x_hi - x_lo;
}

Pixel decode_pixel_from_interval(double d, std::size_t i,
                                 const BranchSet &bset,
                                 const DeviceParams &params,
                                 double tolerance_px)
{
	check_interval_pair(i, bset);
	const Branch &lo = bset.branches[i];
	const Branch &hi = bset.branches[i + 1];
	if (lo.k_weight != hi.k_weight) {
		throw InvariantViolationError(
		    "interval decoding requires a shared mirror weight across the pair");
	}
	if (!(d > 0.0)) {
		throw OutOfRangeError("interval must be positive, got " +
		                      std::to_string(d));
	}

	// Invert D = delta_c * v_tm / (i_ex - i_leak), then the current law.
	// With i_leak = 0 this reduces to
	//   pixel = (4 s u_t ln(d / (delta_c v_tm / k)) + 2 v_dd - 4|v_tp|) / 1mV.
	const double delta_c = hi.c_mem - lo.c_mem;
	const double i_ex = delta_c * params.v_tm / d + params.i_leak;
	const double raw_px =
	    (2.0 * params.v_dd - 4.0 * params.v_tp_abs -
	     4.0 * params.slope_s * params.u_t * std::log(i_ex / lo.k_weight)) /
	    kPixelVolt;

	if (raw_px < -0.5 - tolerance_px || raw_px > 255.5 + tolerance_px) {
		char buf[96];
		std::snprintf(buf, sizeof buf,
		              "decoded value %.3f is outside [0, 255] by more than %.3f",
		              raw_px, tolerance_px);
		throw OutOfRangeError(buf);
	}
	const double rounded = round_half_up(raw_px);
	if (rounded < 0.0) {
		return 0;
	}
	if (rounded > 255.0) {
		return 255;
	}
	return static_cast<Pixel>(rounded);
}

std::string ValidationReport::to_string() const
{
	std::ostringstream os;
	for (std::size_t i = 0; i < violations.size(); ++i) {
		if (i > 0) {
			os << "; ";
		}
		os << violations[i];
	}
	return os.str();
}

ValidationReport validate_params(const BranchSet &bset,
                                 const DeviceParams &params)
{
	ValidationReport report;
	auto fail = [&report](const std::string &msg) {
		report.violations.push_back(msg);
	};

	if (!(params.v_dd > 0.0)) fail("v_dd must be positive");
	if (!(params.u_t > 0.0)) fail("u_t must be positive");
	if (!(params.slope_s >= 1.0)) fail("slope_s must be >= 1");
	if (!(params.v_tm > 0.0)) fail("v_tm must be positive");
	if (!(params.v_tm < params.v_dd)) fail("v_tm must be below v_dd");
	if (!(params.i_leak >= 0.0)) fail("i_leak must be non-negative");
	if (!(params.t_samp > 0.0)) fail("t_samp must be positive");
	if (!(2.0 * params.v_tp_abs < params.v_dd)) {
		fail("2*|v_tp| must stay below v_dd or the current law collapses");
	}

	if (bset.size() < 2) {
		fail("at least two branches are required");
	}
	for (std::size_t i = 0; i < bset.size(); ++i) {
		const Branch &b = bset.branches[i];
		if (!(b.c_mem > 0.0)) {
			fail("branch " + std::to_string(i) + ": c_mem must be positive");
		}
		if (!(b.k_weight > 0.0)) {
			fail("branch " + std::to_string(i) + ": k_weight must be positive");
		}
		if (i > 0 && !(b.c_mem > bset.branches[i - 1].c_mem)) {
			fail("branch " + std::to_string(i) +
			     ": c_mem must increase strictly along the list");
		}
	}
	if (!report.ok()) {
		return report; // operating-point checks need sane values
	}

	// Dimmest pixel drives the smallest current and the slowest crossing.
	const double v_in_max = pixel_to_input_voltage(255);
	for (std::size_t i = 0; i < bset.size(); ++i) {
		const Branch &b = bset.branches[i];
		const double i_ex = excitatory_current(v_in_max, b, params);
		if (!(i_ex > params.i_leak)) {
			fail("branch " + std::to_string(i) +
			     " never spikes at pixel 255 (i_ex <= i_leak)");
			continue;
		}
		const double x = integrating_time(b, i_ex, params);
		if (!(x < params.t_samp)) {
			fail("branch " + std::to_string(i) +
			     " does not cross threshold inside one enable window at pixel 255");
		}
	}
	return report;
}

} // namespace tempenc
