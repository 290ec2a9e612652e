#include "tempenc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tempenc {

SimConfig SimConfig::for_params(const DeviceParams &params)
{
	return {params.t_samp / 1e4, true};
}

MembraneState step_membrane(const MembraneState &state, double i_ex,
                            double i_leak, double c_mem, double dt)
{
	return {state.v_mem + (i_ex - i_leak) * dt / c_mem, state.t + dt};
}

std::optional<double> simulate_branch(Pixel p, const Branch &branch,
                                      const DeviceParams &params,
                                      const SimConfig &sim)
{
	if (!(sim.dt > 0.0)) {
		throw std::invalid_argument("integration step must be positive");
	}
	if (!(sim.dt <= params.t_samp / 100.0)) {
		throw std::invalid_argument(
		    "integration step must not exceed t_samp/100");
	}

	const double i_net =
	    excitatory_current(pixel_to_input_voltage(p), branch, params) -
	    params.i_leak;
	if (i_net <= 0.0) {
		return std::nullopt;
	}

	const double window = params.t_samp;
	double v = 0.0;
	for (long step = 0;; ++step) {
		const double t0 = static_cast<double>(step) * sim.dt;
		if (t0 >= window) {
			return std::nullopt;
		}
		const double dt_step = std::min(sim.dt, window - t0);
		const double v_next = v + i_net * dt_step / branch.c_mem;
		if (v_next >= params.v_tm) {
			// The ramp is linear inside the step, so the interpolated
			// crossing is the exact crossing.
			const double crossing =
			    sim.crossing_interpolation
			        ? t0 + (params.v_tm - v) * branch.c_mem / i_net
			        : t0 + dt_step;
			if (crossing >= window) {
				return std::nullopt;
			}
			return crossing;
		}
		v = v_next;
	}
}

SpikeTrain simulate_pixel(Pixel p, const BranchSet &bset,
                          const DeviceParams &params, const SimConfig &sim,
                          double window_start,
                          std::vector<std::string> *warnings)
{
	SpikeTrain train;
	train.events.reserve(bset.size());
	for (std::size_t i = 0; i < bset.size(); ++i) {
		const std::optional<double> crossing =
		    simulate_branch(p, bset.branches[i], params, sim);
		if (crossing) {
			train.events.push_back({i, window_start + *crossing});
		} else if (warnings != nullptr) {
			warnings->push_back("branch " + std::to_string(i) +
			                    " produced no spike for pixel " +
			                    std::to_string(static_cast<int>(p)));
		}
	}
	std::sort(train.events.begin(), train.events.end(),
	          [](const SpikeEvent &a, const SpikeEvent &b) {
		          return a.t != b.t ? a.t < b.t : a.branch_id < b.branch_id;
	          });
	return train;
}

std::vector<double> measure_intervals(const SpikeTrain &train)
{
	std::vector<double> intervals;
	if (train.events.size() < 2) {
		return intervals;
	}
	intervals.reserve(train.events.size() - 1);
	for (std::size_t i = 1; i < train.events.size(); ++i) {
		const SpikeEvent &prev = train.events[i - 1];
		const SpikeEvent &cur = train.events[i];
		const bool ordered =
		    prev.t < cur.t ||
		    (prev.t == cur.t && prev.branch_id < cur.branch_id);
		if (!ordered) {
			throw MalformedTrainError(
			    "events are not strictly sorted under (t, branch_id) at index " +
			    std::to_string(i));
		}
		intervals.push_back(cur.t - prev.t);
	}
	return intervals;
}

} // namespace tempenc
