#pragma once

#include <optional>
#include <vector>

#include "tempenc/codec.hpp"
#include "tempenc/model.hpp"

namespace tempenc {

struct PowerAnchor {
	int pixel;          ///< anchor pixel value, in [0, 255]
	double power_watts; ///< measured per-neuron power at that pixel [W]
};

/// Piecewise-linear per-neuron power model over calibration anchors.
/// Anchors must be strictly increasing in pixel, strictly decreasing in
/// power, and span the full range (anchors at 0 and 255).
struct PowerModel {
	std::vector<PowerAnchor> anchors;

	/// The published three-point calibration: 701.57 nW at pixel 0,
	/// 543.9 nW at 127, 392.1 nW at 255.
	static PowerModel defaults();
};

/// Exact at anchors, linear between them. Throws BadModelError when the
/// anchor list is unsorted, non-monotone, or does not span [0, 255].
double power_of_pixel(Pixel p, const PowerModel &model);

struct ImagePowerReport {
	std::vector<double> per_pixel_watts;
	std::optional<double> mean_watts; ///< absent for an empty image
	double energy_joules = 0.0;       ///< mean power * rows * cols * t_samp, per neuron
};

ImagePowerReport image_power_report(const ImageU8 &img, const PowerModel &model,
                                    const DeviceParams &params);

} // namespace tempenc
