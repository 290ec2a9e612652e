#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "tempenc/codec.hpp"
#include "tempenc/io.hpp"
#include "tempenc/model.hpp"
#include "tempenc/power.hpp"
#include "tempenc/simulator.hpp"

namespace tt {

using namespace tempenc;

inline double rel_err(double actual, double expected)
{
	return std::fabs(actual - expected) / std::fabs(expected);
}

inline DeviceParams zero_leak_params()
{
	DeviceParams p;
	p.i_leak = 0.0;
	return p;
}

/// 16x16 card containing every pixel value exactly once.
inline ImageU8 test_card()
{
	ImageU8 img;
	img.rows = 16;
	img.cols = 16;
	img.pixels.resize(256);
	for (int i = 0; i < 256; ++i) {
		img.pixels[static_cast<std::size_t>(i)] = static_cast<Pixel>(i);
	}
	return img;
}

// Reference values at the default operating point, frozen from a 50-digit
// evaluation of the current law and the integrate times (zero leak unless
// stated otherwise).
inline constexpr double kIex0 = 8.8553430283090322e-7;          // pixel 0 [A]
inline constexpr double kIex128 = 3.4170641910478845e-7;        // pixel 128 [A]
inline constexpr double kIex255 = 1.3284088568139457e-7;        // pixel 255 [A]
inline constexpr double kX1Pixel0 = 2.2585234627346887e-8;      // 50 fF [s]
inline constexpr double kX2Pixel0 = 4.5170469254693774e-8;      // 100 fF [s]
inline constexpr double kX3Pixel0 = 6.7755703882040661e-8;      // 150 fF [s]
inline constexpr double kX3Pixel255 = 4.5166817198060493e-7;    // 150 fF [s]
inline constexpr double kX3Pixel255Leak1nA = 4.5509403012503595e-7;
inline constexpr double kD1Pixel0 = 2.2585234627346887e-8;      // 50->100 fF [s]
inline constexpr double kD1Pixel255 = 1.5055605732686831e-7;    // 50->100 fF [s]
inline constexpr double kDuration28x28 = 7.1272727272727273e-4; // 784 windows [s]

} // namespace tt
