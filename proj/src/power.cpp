#include "tempenc/power.hpp"

#include <string>

namespace tempenc {

PowerModel PowerModel::defaults()
{
	return {{{0, 701.57e-9}, {127, 543.9e-9}, {255, 392.1e-9}}};
}

namespace {

void check_model(const PowerModel &model)
{
	const auto &a = model.anchors;
	if (a.size() < 2) {
		throw BadModelError("at least two power anchors are required");
	}
	if (a.front().pixel != 0 || a.back().pixel != 255) {
		throw BadModelError("power anchors must span pixels 0 through 255");
	}
	for (std::size_t i = 1; i < a.size(); ++i) {
		if (!(a[i].pixel > a[i - 1].pixel)) {
			throw BadModelError("power anchor pixels must increase strictly");
		}
		if (!(a[i].power_watts < a[i - 1].power_watts)) {
			throw BadModelError("power must decrease strictly across anchors");
		}
	}
}

} // namespace

double power_of_pixel(Pixel p, const PowerModel &model)
{
	check_model(model);
	const auto &a = model.anchors;
	const int px = static_cast<int>(p);
	for (std::size_t i = 0; i < a.size(); ++i) {
		if (a[i].pixel == px) {
			return a[i].power_watts; // exact at anchors
		}
		if (a[i].pixel > px) {
			const PowerAnchor &left = a[i - 1];
			const PowerAnchor &right = a[i];
			const double frac = static_cast<double>(px - left.pixel) /
			                    static_cast<double>(right.pixel - left.pixel);
			return left.power_watts +
			       frac * (right.power_watts - left.power_watts);
		}
	}
	throw BadModelError("pixel " + std::to_string(px) +
	                    " is not spanned by the anchors");
}

ImagePowerReport image_power_report(const ImageU8 &img, const PowerModel &model,
                                    const DeviceParams &params)
{
	ImagePowerReport report;
	report.per_pixel_watts.reserve(img.pixels.size());
	double sum = 0.0;
	for (Pixel p : img.pixels) {
		const double w = power_of_pixel(p, model);
		report.per_pixel_watts.push_back(w);
		sum += w;
	}
	if (!img.pixels.empty()) {
		const double mean = sum / static_cast<double>(img.pixels.size());
		report.mean_watts = mean;
		report.energy_joules =
		    mean * static_cast<double>(img.rows * img.cols) * params.t_samp;
	}
	return report;
}

} // namespace tempenc
