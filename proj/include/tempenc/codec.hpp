#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tempenc/model.hpp"
#include "tempenc/simulator.hpp"

namespace tempenc {

/// Row-major 8-bit grayscale image.
struct ImageU8 {
	std::size_t rows = 0;
	std::size_t cols = 0;
	std::vector<Pixel> pixels;

	std::size_t pixel_count() const { return rows * cols; }
	Pixel at(std::size_t r, std::size_t c) const { return pixels[r * cols + c]; }
};

enum class EncodeMode { analytic, simulated };

const char *to_string(EncodeMode mode);

/// A whole image on the global timeline: pixel j owns the half-open enable
/// window [j*t_samp, (j+1)*t_samp) and its spikes live inside it.
struct EncodedImage {
	std::size_t rows = 0;
	std::size_t cols = 0;
	double t_samp = 0.0;
	EncodeMode mode = EncodeMode::analytic;
	std::vector<SpikeTrain> trains; ///< one per pixel, row-major

	/// Total encoding time, rows * cols * t_samp.
	double duration() const
	{
		return static_cast<double>(rows * cols) * t_samp;
	}
};

/// One analytic-vs-simulated comparison point.
struct DeviationRow {
	Pixel pixel;
	std::size_t interval_index;
	double analytic_s;
	double simulated_s;
	double deviation_percent; ///< 100*|sim - analytic|/analytic
};

struct DeviationReport {
	std::vector<DeviationRow> rows;
};

struct DeviationSummary {
	double max_percent;
	double mean_percent;
};

/// Encode an image pixel by pixel in row-major order. Analytic mode places
/// each branch event at the closed-form integrate time; simulated mode runs
/// the behavioral integration. Throws InvalidConfigError when
/// validate_params reports violations. `sim` may be null in analytic mode
/// (and defaults to SimConfig::for_params otherwise).
EncodedImage encode_image(const ImageU8 &img, const BranchSet &bset,
                          const DeviceParams &params, EncodeMode mode,
                          const SimConfig *sim = nullptr,
                          std::vector<std::string> *warnings = nullptr);

/// Inverse pipeline: measure the intervals of every window, decode each one
/// independently, and take the median decode per pixel. Throws
/// CorruptWindowError when a window holds fewer than two events or an event
/// falls outside its window.
ImageU8 decode_image(const EncodedImage &enc, const BranchSet &bset,
                     const DeviceParams &params);

/// Analytic and simulated intervals for every pixel value in
/// [pixel_lo, pixel_hi] and every interval index. Empty when
/// pixel_lo > pixel_hi.
DeviationReport sweep_intervals(int pixel_lo, int pixel_hi,
                                const BranchSet &bset,
                                const DeviceParams &params,
                                const SimConfig &sim);

/// Max and mean percent deviation over the report. Throws EmptyReportError
/// on an empty report.
DeviationSummary deviation_summary(const DeviationReport &report);

} // namespace tempenc
