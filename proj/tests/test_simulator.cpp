#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"

using namespace tt;

TEST_CASE("membrane step")
{
	SUBCASE("zero net current leaves the potential unchanged")
	{
		const MembraneState state{0.123, 4.5e-7};
		const MembraneState next =
		    step_membrane(state, 3e-9, 3e-9, 50e-15, 1e-9);
		CHECK(next.v_mem == state.v_mem);
		CHECK(next.t == state.t + 1e-9);
	}

	SUBCASE("reference step")
	{
		const MembraneState next =
		    step_membrane({0.0, 0.0}, 400e-9, 0.0, 50e-15, 1e-9);
		CHECK_LE(rel_err(next.v_mem, 8e-3), 1e-12);
	}

	SUBCASE("two half steps equal one full step")
	{
		const double dt = 1e-9;
		const MembraneState full =
		    step_membrane({0.0, 0.0}, 400e-9, 1e-9, 50e-15, dt);
		const MembraneState half = step_membrane(
		    step_membrane({0.0, 0.0}, 400e-9, 1e-9, 50e-15, dt / 2.0),
		    400e-9, 1e-9, 50e-15, dt / 2.0);
		CHECK(half.v_mem == full.v_mem);
		CHECK(half.t == full.t);
	}
}

TEST_CASE("branch simulation matches the closed form")
{
	const DeviceParams params = zero_leak_params();
	const BranchSet bset = BranchSet::defaults();
	const SimConfig sim = SimConfig::for_params(params);

	SUBCASE("reference crossing")
	{
		const auto crossing = simulate_branch(0, bset.branches[0], params, sim);
		REQUIRE(crossing.has_value());
		CHECK_LE(rel_err(*crossing, kX1Pixel0), 1e-9);
	}

	SUBCASE("every pixel, every branch")
	{
		for (int p = 0; p <= 255; ++p) {
			const Pixel px = static_cast<Pixel>(p);
			const double v_in = pixel_to_input_voltage(px);
			for (const Branch &b : bset.branches) {
				const double expected = integrating_time(
				    b, excitatory_current(v_in, b, params), params);
				const auto crossing = simulate_branch(px, b, params, sim);
				REQUIRE(crossing.has_value());
				CHECK_LE(rel_err(*crossing, expected), 1e-9);
			}
		}
	}

	SUBCASE("step-size independence with interpolation on")
	{
		SimConfig coarse = sim;
		SimConfig odd{params.t_samp / 3777.0, true};
		const double expected = integrating_time(
		    bset.branches[2],
		    excitatory_current(pixel_to_input_voltage(201), bset.branches[2],
		                       params),
		    params);
		CHECK_LE(rel_err(*simulate_branch(201, bset.branches[2], params, coarse),
		                 expected), 1e-9);
		CHECK_LE(rel_err(*simulate_branch(201, bset.branches[2], params, odd),
		                 expected), 1e-9);
	}

	SUBCASE("interpolation off overshoots by at most one step")
	{
		SimConfig blunt{params.t_samp / 1e4, false};
		const double expected = integrating_time(
		    bset.branches[0],
		    excitatory_current(pixel_to_input_voltage(0), bset.branches[0],
		                       params),
		    params);
		const auto crossing = simulate_branch(0, bset.branches[0], params, blunt);
		REQUIRE(crossing.has_value());
		CHECK_GE(*crossing, expected * (1.0 - 1e-12));
		CHECK_LE(*crossing - expected, blunt.dt * (1.0 + 1e-12));
	}

	SUBCASE("swamped current never spikes")
	{
		DeviceParams drowned = params;
		drowned.i_leak = 1e-6;
		CHECK_FALSE(simulate_branch(255, bset.branches[0], drowned,
		                            SimConfig::for_params(drowned))
		                .has_value());
	}

	SUBCASE("step size is validated")
	{
		CHECK_THROWS_AS(simulate_branch(0, bset.branches[0], params,
		                                SimConfig{0.0, true}),
		                std::invalid_argument);
		CHECK_THROWS_AS(simulate_branch(0, bset.branches[0], params,
		                                SimConfig{params.t_samp / 50.0, true}),
		                std::invalid_argument);
	}
}

TEST_CASE("pixel simulation")
{
	const DeviceParams params = zero_leak_params();
	const BranchSet bset = BranchSet::defaults();
	const SimConfig sim = SimConfig::for_params(params);

	SUBCASE("one event per branch at the reference times")
	{
		const SpikeTrain train = simulate_pixel(0, bset, params, sim, 0.0);
		REQUIRE(train.events.size() == 3);
		CHECK(train.events[0].branch_id == 0);
		CHECK(train.events[1].branch_id == 1);
		CHECK(train.events[2].branch_id == 2);
		CHECK_LE(rel_err(train.events[0].t, kX1Pixel0), 1e-9);
		CHECK_LE(rel_err(train.events[1].t, kX2Pixel0), 1e-9);
		CHECK_LE(rel_err(train.events[2].t, kX3Pixel0), 1e-9);
	}

	SUBCASE("window start shifts every event by the offset")
	{
		const SpikeTrain at_zero = simulate_pixel(37, bset, params, sim, 0.0);
		const double offset = params.t_samp;
		const SpikeTrain shifted =
		    simulate_pixel(37, bset, params, sim, offset);
		REQUIRE(at_zero.events.size() == shifted.events.size());
		for (std::size_t i = 0; i < at_zero.events.size(); ++i) {
			CHECK(shifted.events[i].t == offset + at_zero.events[i].t);
		}
	}

	SUBCASE("non-spiking branch becomes a warning, not an event")
	{
		const BranchSet mixed{
		    {{50e-15, 200e-9}, {100e-15, 1e-12}, {150e-15, 200e-9}}};
		std::vector<std::string> warnings;
		const SpikeTrain train =
		    simulate_pixel(255, mixed, params, sim, 0.0, &warnings);
		CHECK(train.events.size() == 2);
		REQUIRE(warnings.size() == 1);
		CHECK(warnings[0].find("branch 1") != std::string::npos);
	}

	SUBCASE("bit-identical across runs")
	{
		const SpikeTrain a = simulate_pixel(129, bset, params, sim, 5e-6);
		const SpikeTrain b = simulate_pixel(129, bset, params, sim, 5e-6);
		REQUIRE(a.events.size() == b.events.size());
		for (std::size_t i = 0; i < a.events.size(); ++i) {
			CHECK(a.events[i].t == b.events[i].t);
			CHECK(a.events[i].branch_id == b.events[i].branch_id);
		}
	}

	SUBCASE("spike times stay inside the enable window")
	{
		DeviceParams leaky; // default 1 nA leak, validated configuration
		REQUIRE(validate_params(bset, leaky).ok());
		const SimConfig cfg = SimConfig::for_params(leaky);
		for (int p : {0, 128, 255}) {
			const double ws = 3.0 * leaky.t_samp;
			const SpikeTrain train =
			    simulate_pixel(static_cast<Pixel>(p), bset, leaky, cfg, ws);
			CHECK(train.events.size() == bset.size());
			for (const SpikeEvent &ev : train.events) {
				CHECK_GE(ev.t, ws);
				CHECK_LT(ev.t, ws + leaky.t_samp);
			}
		}
	}
}

TEST_CASE("interval measurement")
{
	SUBCASE("consecutive differences")
	{
		const DeviceParams params = zero_leak_params();
		const SpikeTrain train =
		    simulate_pixel(0, BranchSet::defaults(), params,
		                   SimConfig::for_params(params), 0.0);
		const std::vector<double> intervals = measure_intervals(train);
		REQUIRE(intervals.size() == 2);
		CHECK_LE(rel_err(intervals[0], kD1Pixel0), 1e-9);
		CHECK_LE(rel_err(intervals[1], kX3Pixel0 - kX2Pixel0), 1e-9);
	}

	SUBCASE("fewer than two events")
	{
		CHECK(measure_intervals(SpikeTrain{}).empty());
		CHECK(measure_intervals(SpikeTrain{{{0, 1e-9}}}).empty());
	}

	SUBCASE("unsorted input is rejected")
	{
		const SpikeTrain backwards{{{0, 2e-9}, {1, 1e-9}}};
		CHECK_THROWS_AS(measure_intervals(backwards), MalformedTrainError);
		const SpikeTrain duplicate{{{1, 1e-9}, {1, 1e-9}}};
		CHECK_THROWS_AS(measure_intervals(duplicate), MalformedTrainError);
	}

	SUBCASE("simultaneous events on distinct branches are ordered by id")
	{
		const SpikeTrain tied{{{0, 1e-9}, {1, 1e-9}}};
		const std::vector<double> intervals = measure_intervals(tied);
		REQUIRE(intervals.size() == 1);
		CHECK(intervals[0] == 0.0);
	}
}
