// Command-line front end: encode images to spike tables, decode them back,
// sweep the interval-vs-pixel curves, check the simulator against the
// closed-form model, and evaluate the per-neuron power table.
//
// Exit status: 0 success, 1 usage error, 2 data error, 3 validation failure.
// Machine-readable data goes to stdout (or --out); diagnostics go to stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tempenc/codec.hpp"
#include "tempenc/io.hpp"
#include "tempenc/model.hpp"
#include "tempenc/power.hpp"
#include "tempenc/simulator.hpp"

namespace {

using namespace tempenc;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitValidation = 3;

Config load_or_default(const std::string &config_path)
{
	return config_path.empty() ? Config::defaults()
	                           : load_config_file(config_path);
}

// Returns kExitValidation and reports to stderr when the configuration
// cannot encode every pixel inside one enable window.
int require_valid(const Config &cfg)
{
	const ValidationReport report = validate_params(cfg.branches, cfg.params);
	if (report.ok()) {
		return kExitOk;
	}
	for (const std::string &violation : report.violations) {
		std::cerr << "validation: " << violation << '\n';
	}
	return kExitValidation;
}

template <typename WriteFn>
void with_output(const std::string &out_path, WriteFn &&write)
{
	if (out_path.empty()) {
		write(std::cout);
		std::cout.flush();
		return;
	}
	std::ofstream file(out_path, std::ios::binary);
	if (!file) {
		throw ParseError("cannot open output file '" + out_path + "'");
	}
	write(file);
	if (!file) {
		throw ParseError("failed writing output file '" + out_path + "'");
	}
}

ImageU8 load_image(const std::string &idx_path, std::size_t index,
                   const std::string &pgm_path)
{
	if (!pgm_path.empty()) {
		std::ifstream in(pgm_path, std::ios::binary);
		if (!in) {
			throw ParseError("cannot open image file '" + pgm_path + "'");
		}
		return read_pgm(in);
	}
	const std::vector<std::uint8_t> bytes = read_file_bytes(idx_path);
	std::vector<ImageU8> images = parse_idx_images(bytes);
	if (index >= images.size()) {
		throw ParseError("image index " + std::to_string(index) +
		                 " out of range (file holds " +
		                 std::to_string(images.size()) + ")");
	}
	return std::move(images[index]);
}

int cmd_encode(const std::string &images, std::size_t index,
               const std::string &pgm, const std::string &config,
               const std::string &mode_name, const std::string &out)
{
	const Config cfg = load_or_default(config);
	if (const int rc = require_valid(cfg); rc != kExitOk) {
		return rc;
	}
	const ImageU8 img = load_image(images, index, pgm);
	const EncodeMode mode =
	    mode_name == "sim" ? EncodeMode::simulated : EncodeMode::analytic;

	std::vector<std::string> warnings;
	const EncodedImage enc =
	    encode_image(img, cfg.branches, cfg.params, mode, nullptr, &warnings);
	with_output(out, [&enc](std::ostream &os) { write_spike_table(enc, os); });

	for (const std::string &w : warnings) {
		std::cerr << "warning: " << w << '\n';
	}
	std::fprintf(stderr, "encoded %zux%zu image (%s): duration %.9g s, %zu warnings\n",
	             enc.rows, enc.cols, to_string(enc.mode), enc.duration(),
	             warnings.size());
	return kExitOk;
}

int cmd_decode(const std::string &spikes, const std::string &config,
               const std::string &out)
{
	const Config cfg = load_or_default(config);
	std::ifstream in(spikes, std::ios::binary);
	if (!in) {
		throw ParseError("cannot open spike table '" + spikes + "'");
	}
	const EncodedImage enc = read_spike_table(in);
	const ImageU8 img = decode_image(enc, cfg.branches, cfg.params);
	with_output(out, [&img](std::ostream &os) { write_pgm(img, os); });
	std::fprintf(stderr, "decoded %zux%zu image\n", img.rows, img.cols);
	return kExitOk;
}

int cmd_sweep(const std::string &config, const std::string &out)
{
	const Config cfg = load_or_default(config);
	if (const int rc = require_valid(cfg); rc != kExitOk) {
		return rc;
	}
	const SimConfig sim = SimConfig::for_params(cfg.params);
	const DeviationReport report =
	    sweep_intervals(0, 255, cfg.branches, cfg.params, sim);
	const std::size_t intervals = cfg.branches.interval_count();

	with_output(out, [&report, intervals](std::ostream &os) {
		os << "pixel";
		for (std::size_t i = 0; i < intervals; ++i) {
			os << ",d" << i + 1 << "_analytic_ns"
			   << ",d" << i + 1 << "_sim_ns";
		}
		os << '\n';
		char buf[64];
		for (std::size_t r = 0; r < report.rows.size(); r += intervals) {
			os << static_cast<int>(report.rows[r].pixel);
			for (std::size_t i = 0; i < intervals; ++i) {
				const DeviationRow &row = report.rows[r + i];
				std::snprintf(buf, sizeof buf, ",%.6f,%.6f",
				              row.analytic_s * 1e9, row.simulated_s * 1e9);
				os << buf;
			}
			os << '\n';
		}
	});
	return kExitOk;
}

int cmd_validate(const std::string &config, double tolerance)
{
	const Config cfg = load_or_default(config);
	if (const int rc = require_valid(cfg); rc != kExitOk) {
		return rc;
	}
	const SimConfig sim = SimConfig::for_params(cfg.params);
	const DeviationReport report =
	    sweep_intervals(0, 255, cfg.branches, cfg.params, sim);
	const DeviationSummary summary = deviation_summary(report);
	const bool pass = summary.max_percent <= tolerance;

	std::printf("max_deviation_percent=%.10g\n", summary.max_percent);
	std::printf("mean_deviation_percent=%.10g\n", summary.mean_percent);
	std::printf("tolerance_percent=%.10g\n", tolerance);
	std::printf("result=%s\n", pass ? "PASS" : "FAIL");
	return pass ? kExitOk : kExitValidation;
}

int cmd_power(int pixel, const std::string &images, std::size_t index,
              const std::string &config)
{
	const Config cfg = load_or_default(config);
	if (pixel >= 0) {
		const double watts =
		    power_of_pixel(static_cast<Pixel>(pixel), cfg.power);
		std::printf("%.10g\n", watts * 1e9);
		return kExitOk;
	}
	const ImageU8 img = load_image(images, index, "");
	const ImagePowerReport report =
	    image_power_report(img, cfg.power, cfg.params);
	if (report.mean_watts) {
		std::printf("mean_power_nw=%.10g\n", *report.mean_watts * 1e9);
	}
	std::printf("energy_per_neuron_joules=%.10g\n", report.energy_joules);
	return kExitOk;
}

template <typename Body>
int run_guarded(Body &&body)
{
	try {
		return body();
	} catch (const InvalidConfigError &e) {
		std::cerr << "validation failure: " << e.what() << '\n';
		return kExitValidation;
	} catch (const InvariantViolationError &e) {
		std::cerr << "validation failure: " << e.what() << '\n';
		return kExitValidation;
	} catch (const std::exception &e) {
		std::cerr << "error: " << e.what() << '\n';
		return kExitData;
	}
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Temporal spike-interval image codec"};
	app.require_subcommand(1);

	std::string config;
	std::string images;
	std::string pgm;
	std::string spikes;
	std::string out;
	std::string mode = "analytic";
	std::size_t index = 0;
	double tolerance = 2.3;
	int pixel = -1;

	CLI::App *encode = app.add_subcommand(
	    "encode", "Convert an image into a spike table");
	CLI::Option *enc_images =
	    encode->add_option("--images", images, "IDX image file");
	CLI::Option *enc_pgm = encode->add_option("--pgm", pgm, "PGM (P5) image file");
	encode->add_option("--index", index, "image index within the IDX file");
	encode->add_option("--config", config, "configuration file");
	encode->add_option("--mode", mode, "encoding mode")
	    ->check(CLI::IsMember({"analytic", "sim"}));
	encode->add_option("--out", out, "output CSV path (default stdout)");
	enc_images->excludes(enc_pgm);
	enc_pgm->excludes(enc_images);

	CLI::App *decode = app.add_subcommand(
	    "decode", "Reconstruct an image from a spike table");
	decode->add_option("--spikes", spikes, "spike table CSV")->required();
	decode->add_option("--config", config, "configuration file");
	decode->add_option("--out", out, "output PGM path (default stdout)");

	CLI::App *sweep = app.add_subcommand(
	    "sweep", "Emit analytic and simulated intervals for pixels 0..255");
	sweep->add_option("--config", config, "configuration file");
	sweep->add_option("--out", out, "output CSV path (default stdout)");

	CLI::App *validate = app.add_subcommand(
	    "validate", "Compare simulated intervals against the closed form");
	validate->add_option("--config", config, "configuration file");
	validate->add_option("--tolerance", tolerance,
	                     "maximum tolerated deviation, percent");

	CLI::App *power = app.add_subcommand(
	    "power", "Per-neuron power for a pixel or a whole image");
	CLI::Option *pow_pixel =
	    power->add_option("--pixel", pixel, "pixel value")
	        ->check(CLI::Range(0, 255));
	CLI::Option *pow_images =
	    power->add_option("--images", images, "IDX image file");
	power->add_option("--index", index, "image index within the IDX file");
	power->add_option("--config", config, "configuration file");
	pow_pixel->excludes(pow_images);
	pow_images->excludes(pow_pixel);

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp &e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp &e) {
		return app.exit(e);
	} catch (const CLI::ParseError &e) {
		std::cerr << e.what() << '\n';
		return kExitUsage;
	}

	if (app.got_subcommand(encode)) {
		if (images.empty() && pgm.empty()) {
			std::cerr << "encode: one of --images or --pgm is required\n";
			return kExitUsage;
		}
		return run_guarded([&] {
			return cmd_encode(images, index, pgm, config, mode, out);
		});
	}
	if (app.got_subcommand(decode)) {
		return run_guarded([&] { return cmd_decode(spikes, config, out); });
	}
	if (app.got_subcommand(sweep)) {
		return run_guarded([&] { return cmd_sweep(config, out); });
	}
	if (app.got_subcommand(validate)) {
		return run_guarded([&] { return cmd_validate(config, tolerance); });
	}
	if (app.got_subcommand(power)) {
		if (pixel < 0 && images.empty()) {
			std::cerr << "power: one of --pixel or --images is required\n";
			return kExitUsage;
		}
		return run_guarded([&] {
			return cmd_power(pixel, images, index, config);
		});
	}
	return kExitUsage;
}
