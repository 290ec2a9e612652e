#include "tempenc/codec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tempenc {

const char *to_string(EncodeMode mode)
{
	return mode == EncodeMode::analytic ? "analytic" : "simulated";
}

namespace {

SpikeTrain analytic_train(Pixel p, const BranchSet &bset,
                          const DeviceParams &params, double window_start,
                          std::vector<std::string> *warnings)
{
	SpikeTrain train;
	train.events.reserve(bset.size());
	const double v_in = pixel_to_input_voltage(p);
	for (std::size_t i = 0; i < bset.size(); ++i) {
		const Branch &b = bset.branches[i];
		const double i_ex = excitatory_current(v_in, b, params);
		if (i_ex <= params.i_leak) {
			if (warnings != nullptr) {
				warnings->push_back("branch " + std::to_string(i) +
				                    " produced no spike for pixel " +
				                    std::to_string(static_cast<int>(p)));
			}
			continue;
		}
		train.events.push_back({i, window_start + integrating_time(b, i_ex, params)});
	}
	std::sort(train.events.begin(), train.events.end(),
	          [](const SpikeEvent &a, const SpikeEvent &b) {
		          return a.t != b.t ? a.t < b.t : a.branch_id < b.branch_id;
	          });
	return train;
}

} // namespace

EncodedImage encode_image(const ImageU8 &img, const BranchSet &bset,
                          const DeviceParams &params, EncodeMode mode,
                          const SimConfig *sim,
                          std::vector<std::string> *warnings)
{
	const ValidationReport report = validate_params(bset, params);
	if (!report.ok()) {
		throw InvalidConfigError(report.to_string());
	}
	if (img.pixels.size() != img.pixel_count()) {
		throw std::invalid_argument("pixel buffer does not match rows*cols");
	}

	EncodedImage enc;
	enc.rows = img.rows;
	enc.cols = img.cols;
	enc.t_samp = params.t_samp;
	enc.mode = mode;
	enc.trains.reserve(img.pixels.size());

	const SimConfig cfg = sim != nullptr ? *sim : SimConfig::for_params(params);
	for (std::size_t j = 0; j < img.pixels.size(); ++j) {
		const double window_start = static_cast<double>(j) * params.t_samp;
		enc.trains.push_back(
		    mode == EncodeMode::simulated
		        ? simulate_pixel(img.pixels[j], bset, params, cfg,
		                         window_start, warnings)
		        : analytic_train(img.pixels[j], bset, params, window_start,
		                         warnings));
	}
	return enc;
}

ImageU8 decode_image(const EncodedImage &enc, const BranchSet &bset,
                     const DeviceParams &params)
{
	if (enc.trains.size() != enc.rows * enc.cols) {
		throw CorruptWindowError("train count does not match rows*cols");
	}

	ImageU8 img;
	img.rows = enc.rows;
	img.cols = enc.cols;
	img.pixels.reserve(enc.trains.size());

	for (std::size_t j = 0; j < enc.trains.size(); ++j) {
		const SpikeTrain &train = enc.trains[j];
		if (train.events.size() < 2) {
			throw CorruptWindowError("window " + std::to_string(j) +
			                         " holds fewer than two events");
		}
		const double w0 = static_cast<double>(j) * enc.t_samp;
		const double w1 = static_cast<double>(j + 1) * enc.t_samp;
		for (const SpikeEvent &ev : train.events) {
			if (ev.t < w0 || ev.t >= w1) {
				throw CorruptWindowError("window " + std::to_string(j) +
				                         " holds an event outside its bounds");
			}
		}

		const std::vector<double> intervals = measure_intervals(train);
		std::vector<Pixel> decodes;
		decodes.reserve(intervals.size());
		for (std::size_t i = 0; i < intervals.size(); ++i) {
			decodes.push_back(
			    decode_pixel_from_interval(intervals[i], i, bset, params));
		}
		std::sort(decodes.begin(), decodes.end());
		// Lower median keeps the result an observed decode when the
		// interval count is even.
		img.pixels.push_back(decodes[(decodes.size() - 1) / 2]);
	}
	return img;
}

DeviationReport sweep_intervals(int pixel_lo, int pixel_hi,
                                const BranchSet &bset,
                                const DeviceParams &params,
                                const SimConfig &sim)
{
	const ValidationReport vr = validate_params(bset, params);
	if (!vr.ok()) {
		throw InvalidConfigError(vr.to_string());
	}

	DeviationReport report;
	for (int p = pixel_lo; p <= pixel_hi; ++p) {
		if (p < 0 || p > 255) {
			throw std::out_of_range("pixel sweep bound outside [0, 255]");
		}
		const Pixel px = static_cast<Pixel>(p);
		const SpikeTrain train = simulate_pixel(px, bset, params, sim, 0.0);
		const std::vector<double> simulated = measure_intervals(train);
		for (std::size_t i = 0; i < bset.interval_count(); ++i) {
			const double analytic =
			    interspike_interval_analytic(px, i, bset, params);
			const double sim_d = simulated.at(i);
			report.rows.push_back(
			    {px, i, analytic, sim_d,
			     100.0 * std::fabs(sim_d - analytic) / analytic});
		}
	}
	return report;
}

DeviationSummary deviation_summary(const DeviationReport &report)
{
	if (report.rows.empty()) {
		throw EmptyReportError("deviation report holds no rows");
	}
	double max = 0.0;
	double sum = 0.0;
	for (const DeviationRow &row : report.rows) {
		max = std::max(max, row.deviation_percent);
		sum += row.deviation_percent;
	}
	return {max, sum / static_cast<double>(report.rows.size())};
}

} // namespace tempenc
