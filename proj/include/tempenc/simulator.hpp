#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tempenc/model.hpp"

namespace tempenc {

/// Membrane potential and absolute time of one branch during a run.
struct MembraneState {
	double v_mem = 0.0; ///< [V]
	double t = 0.0;     ///< absolute time on the global timeline [s]
};

/// A threshold crossing of one branch.
struct SpikeEvent {
	std::size_t branch_id;
	double t; ///< absolute time [s]
};

/// Events sorted strictly by (t, branch_id).
struct SpikeTrain {
	std::vector<SpikeEvent> events;
};

/// Integration settings for the behavioral simulation.
struct SimConfig {
	double dt;                         ///< forward-Euler step [s]
	bool crossing_interpolation = true; ///< locate the crossing inside the final step

	/// Default step of t_samp/10^4, fine enough that even the uninterpolated
	/// crossing lands within a tenth of a percent of the exact time.
	static SimConfig for_params(const DeviceParams &params);
};

/// One forward-Euler step under constant net current:
/// v' = v + (i_ex - i_leak) * dt / c_mem. The caller detects threshold
/// crossings; v' may exceed the threshold.
MembraneState step_membrane(const MembraneState &state, double i_ex,
                            double i_leak, double c_mem, double dt);

/// Integrate one branch from reset until it crosses threshold. Returns the
/// crossing time measured from the window start, or nullopt when the branch
/// does not spike inside one enable period. With interpolation on the
/// crossing is exact for this constant-current ramp up to floating-point
/// accumulation.
///
/// Throws std::invalid_argument when the step size violates
/// 0 < dt <= t_samp/100.
std::optional<double> simulate_branch(Pixel p, const Branch &branch,
                                      const DeviceParams &params,
                                      const SimConfig &sim);

/// Simulate every branch for one pixel window. All membranes reset at the
/// enable edge (window_start); each branch contributes at most one event.
/// Non-spiking branches are recorded in `warnings` (if given) instead of
/// failing the run.
SpikeTrain simulate_pixel(Pixel p, const BranchSet &bset,
                          const DeviceParams &params, const SimConfig &sim,
                          double window_start,
                          std::vector<std::string> *warnings = nullptr);

/// Differences between consecutive event times. Throws MalformedTrainError
/// when the input is not strictly sorted under (t, branch_id).
std::vector<double> measure_intervals(const SpikeTrain &train);

} // namespace tempenc
