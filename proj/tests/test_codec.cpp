#include <doctest.h>

#include <cmath>

#include "helpers.hpp"

using namespace tt;

namespace {

bool images_equal(const ImageU8 &a, const ImageU8 &b)
{
	return a.rows == b.rows && a.cols == b.cols && a.pixels == b.pixels;
}

} // namespace

TEST_CASE("single-pixel encoding")
{
	const DeviceParams params = zero_leak_params();
	const BranchSet bset = BranchSet::defaults();
	const ImageU8 img{1, 1, {0}};

	SUBCASE("analytic events at the integrate times")
	{
		const EncodedImage enc =
		    encode_image(img, bset, params, EncodeMode::analytic);
		REQUIRE(enc.trains.size() == 1);
		REQUIRE(enc.trains[0].events.size() == 3);
		CHECK_LE(rel_err(enc.trains[0].events[0].t, kX1Pixel0), 1e-12);
		CHECK_LE(rel_err(enc.trains[0].events[1].t, kX2Pixel0), 1e-12);
		CHECK_LE(rel_err(enc.trains[0].events[2].t, kX3Pixel0), 1e-12);
		CHECK(enc.duration() == params.t_samp);
	}

	SUBCASE("simulated events agree with analytic ones")
	{
		const EncodedImage enc =
		    encode_image(img, bset, params, EncodeMode::simulated);
		REQUIRE(enc.trains[0].events.size() == 3);
		CHECK_LE(rel_err(enc.trains[0].events[0].t, kX1Pixel0), 1e-9);
		CHECK_LE(rel_err(enc.trains[0].events[2].t, kX3Pixel0), 1e-9);
	}
}

TEST_CASE("empty image")
{
	const DeviceParams params;
	const BranchSet bset = BranchSet::defaults();
	const ImageU8 img{0, 0, {}};
	const EncodedImage enc = encode_image(img, bset, params, EncodeMode::analytic);
	CHECK(enc.trains.empty());
	CHECK(enc.duration() == 0.0);
	const ImageU8 back = decode_image(enc, bset, params);
	CHECK(back.rows == 0);
	CHECK(back.pixels.empty());
}

TEST_CASE("timing metadata and window containment")
{
	const DeviceParams params;
	const BranchSet bset = BranchSet::defaults();
	ImageU8 img{28, 28, {}};
	img.pixels.assign(784, 128);

	const EncodedImage enc = encode_image(img, bset, params, EncodeMode::analytic);
	CHECK(enc.duration() == 784.0 * params.t_samp);
	CHECK_LE(rel_err(enc.duration(), kDuration28x28), 1e-12);

	for (std::size_t j = 0; j < enc.trains.size(); ++j) {
		const double w0 = static_cast<double>(j) * params.t_samp;
		const double w1 = static_cast<double>(j + 1) * params.t_samp;
		REQUIRE(enc.trains[j].events.size() == bset.size());
		for (const SpikeEvent &ev : enc.trains[j].events) {
			CHECK_GE(ev.t, w0);
			CHECK_LT(ev.t, w1);
		}
	}
}

TEST_CASE("round trip over the full test card")
{
	const DeviceParams params; // default 1 nA leak
	const BranchSet bset = BranchSet::defaults();
	const ImageU8 card = test_card();

	SUBCASE("analytic mode")
	{
		const EncodedImage enc =
		    encode_image(card, bset, params, EncodeMode::analytic);
		CHECK(images_equal(decode_image(enc, bset, params), card));
	}

	SUBCASE("simulated mode")
	{
		const EncodedImage enc =
		    encode_image(card, bset, params, EncodeMode::simulated);
		CHECK(images_equal(decode_image(enc, bset, params), card));
	}
}

TEST_CASE("decode rejects corrupt windows")
{
	const DeviceParams params;
	const BranchSet bset = BranchSet::defaults();

	EncodedImage enc;
	enc.rows = 1;
	enc.cols = 1;
	enc.t_samp = params.t_samp;

	SUBCASE("missing events")
	{
		enc.trains = {SpikeTrain{{{0, 20e-9}}}};
		CHECK_THROWS_AS(decode_image(enc, bset, params), CorruptWindowError);
	}

	SUBCASE("event outside its window")
	{
		enc.trains = {SpikeTrain{{{0, 20e-9}, {1, 2.0 * params.t_samp}}}};
		CHECK_THROWS_AS(decode_image(enc, bset, params), CorruptWindowError);
	}

	SUBCASE("train count mismatch")
	{
		enc.trains = {};
		CHECK_THROWS_AS(decode_image(enc, bset, params), CorruptWindowError);
	}
}

TEST_CASE("decoding with a mismatched threshold shifts the pixels")
{
	const DeviceParams params;
	const BranchSet bset = BranchSet::defaults();
	ImageU8 img{2, 2, {}};
	img.pixels.assign(4, 128);

	const EncodedImage enc = encode_image(img, bset, params, EncodeMode::analytic);
	DeviceParams altered = params;
	altered.v_tm = 0.44;
	const ImageU8 shifted = decode_image(enc, bset, altered);
	CHECK(shifted.pixels != img.pixels);
	// A 10% threshold change moves the decode by ~13 gray levels.
	CHECK(shifted.pixels[0] < 120);
	CHECK(decode_image(enc, bset, params).pixels == img.pixels);
}

TEST_CASE("encode rejects invalid configurations")
{
	DeviceParams cramped;
	cramped.t_samp = 100e-9;
	const ImageU8 img{1, 1, {0}};
	CHECK_THROWS_AS(encode_image(img, BranchSet::defaults(), cramped,
	                             EncodeMode::analytic),
	                InvalidConfigError);
}

TEST_CASE("interval sweep")
{
	const DeviceParams params = zero_leak_params();
	const BranchSet bset = BranchSet::defaults();
	const SimConfig sim = SimConfig::for_params(params);

	SUBCASE("full range, both columns strictly increasing")
	{
		const DeviationReport report =
		    sweep_intervals(0, 255, bset, params, sim);
		REQUIRE(report.rows.size() == 256 * bset.interval_count());
		for (std::size_t i = 0; i < bset.interval_count(); ++i) {
			for (std::size_t p = 1; p < 256; ++p) {
				const DeviationRow &prev =
				    report.rows[(p - 1) * bset.interval_count() + i];
				const DeviationRow &cur =
				    report.rows[p * bset.interval_count() + i];
				CHECK_LT(prev.analytic_s, cur.analytic_s);
				CHECK_LT(prev.simulated_s, cur.simulated_s);
			}
		}
	}

	SUBCASE("empty range")
	{
		CHECK(sweep_intervals(10, 9, bset, params, sim).rows.empty());
	}

	SUBCASE("single pixel matches the encoding example")
	{
		const DeviationReport report = sweep_intervals(0, 0, bset, params, sim);
		REQUIRE(report.rows.size() == 2);
		CHECK_LE(rel_err(report.rows[0].analytic_s, kD1Pixel0), 1e-12);
		CHECK_LE(rel_err(report.rows[1].analytic_s, kX3Pixel0 - kX2Pixel0),
		         1e-12);
		CHECK_LE(report.rows[0].deviation_percent, 1e-4);
	}

	SUBCASE("simulated agrees with analytic to 1e-4 percent")
	{
		const DeviationReport report =
		    sweep_intervals(0, 255, bset, params, sim);
		const DeviationSummary summary = deviation_summary(report);
		CHECK_LE(summary.max_percent, 1e-4);
		CHECK_LE(summary.mean_percent, summary.max_percent);
	}

	SUBCASE("with leak the exact route keeps the agreement")
	{
		DeviceParams leaky;
		leaky.i_leak = 1e-9;
		const DeviationReport report =
		    sweep_intervals(0, 255, bset, leaky, SimConfig::for_params(leaky));
		// 1e-9 relative against the integrate-time difference
		CHECK_LE(deviation_summary(report).max_percent, 1e-7);
	}
}

TEST_CASE("deviation summary")
{
	SUBCASE("identity comparison")
	{
		DeviationReport report;
		report.rows.push_back({0, 0, 1e-8, 1e-8, 0.0});
		report.rows.push_back({1, 0, 2e-8, 2e-8, 0.0});
		const DeviationSummary summary = deviation_summary(report);
		CHECK(summary.max_percent == 0.0);
		CHECK(summary.mean_percent == 0.0);
	}

	SUBCASE("empty report")
	{
		CHECK_THROWS_AS(deviation_summary(DeviationReport{}), EmptyReportError);
	}

	SUBCASE("leak-omitted closed form versus leak-aware simulation")
	{
		// The closed form drops the leak term; simulating with a 1 nA leak
		// must therefore deviate by a small positive amount that the exact
		// route predicts.
		const BranchSet bset = BranchSet::defaults();
		const DeviceParams no_leak = zero_leak_params();
		DeviceParams leaky;
		leaky.i_leak = 1e-9;
		const SimConfig sim = SimConfig::for_params(leaky);

		DeviationReport report;
		double oracle_max = 0.0;
		for (int p = 0; p <= 255; ++p) {
			const Pixel px = static_cast<Pixel>(p);
			const SpikeTrain train = simulate_pixel(px, bset, leaky, sim, 0.0);
			const std::vector<double> simulated = measure_intervals(train);
			for (std::size_t i = 0; i < bset.interval_count(); ++i) {
				const double closed =
				    interspike_interval_analytic(px, i, bset, no_leak);
				report.rows.push_back(
				    {px, i, closed, simulated[i],
				     100.0 * std::fabs(simulated[i] - closed) / closed});
				const double exact =
				    interspike_interval_analytic(px, i, bset, leaky);
				oracle_max = std::max(
				    oracle_max, 100.0 * std::fabs(exact - closed) / closed);
			}
		}
		const DeviationSummary summary = deviation_summary(report);
		CHECK_GT(summary.max_percent, 0.0);
		CHECK_LE(rel_err(summary.max_percent, oracle_max), 1e-6);
		CHECK_LT(summary.max_percent, 2.3); // still inside the headline bound
	}
}
