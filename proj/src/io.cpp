#include "tempenc/io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace tempenc {

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t off)
{
	return (static_cast<std::uint32_t>(bytes[off]) << 24) |
	       (static_cast<std::uint32_t>(bytes[off + 1]) << 16) |
	       (static_cast<std::uint32_t>(bytes[off + 2]) << 8) |
	       static_cast<std::uint32_t>(bytes[off + 3]);
}

// Payload size with overflow detection across the dimension product.
std::size_t checked_product(const std::vector<std::uint32_t> &dims)
{
	std::uint64_t product = 1;
	for (std::uint32_t d : dims) {
		if (d != 0 && product > std::numeric_limits<std::uint64_t>::max() / d) {
			throw DimensionOverflowError("dimension product overflows");
		}
		product *= d;
	}
	if (product > std::numeric_limits<std::size_t>::max() - 64) {
		throw DimensionOverflowError("dimension product exceeds addressable size");
	}
	return static_cast<std::size_t>(product);
}

std::vector<std::uint32_t> parse_idx_header(std::span<const std::uint8_t> bytes,
                                            std::uint32_t expected_magic,
                                            std::size_t dim_count)
{
	if (bytes.size() < 4) {
		throw TruncatedFileError("file too short for a magic number");
	}
	const std::uint32_t magic = read_be32(bytes, 0);
	if (magic != expected_magic) {
		char buf[64];
		std::snprintf(buf, sizeof buf, "bad magic 0x%08x (expected 0x%08x)",
		              magic, expected_magic);
		throw BadMagicError(buf);
	}
	const std::size_t header = 4 + 4 * dim_count;
	if (bytes.size() < header) {
		throw TruncatedFileError("file too short for the dimension sizes");
	}
	std::vector<std::uint32_t> dims(dim_count);
	for (std::size_t i = 0; i < dim_count; ++i) {
		dims[i] = read_be32(bytes, 4 + 4 * i);
	}
	const std::size_t payload = checked_product(dims);
	if (bytes.size() < header + payload) {
		throw TruncatedFileError("payload shorter than the declared dimensions");
	}
	if (bytes.size() > header + payload) {
		throw TrailingBytesError("bytes remain after the declared payload");
	}
	return dims;
}

std::string trim(std::string_view s)
{
	std::size_t begin = 0;
	std::size_t end = s.size();
	while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
		++begin;
	}
	while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
		--end;
	}
	return std::string(s.substr(begin, end - begin));
}

double parse_number(const std::string &text, const char *what)
{
	const std::string t = trim(text);
	if (t.empty()) {
		throw ParseError(std::string(what) + ": empty number");
	}
	errno = 0;
	char *end = nullptr;
	const double value = std::strtod(t.c_str(), &end);
	if (end != t.c_str() + t.size() || errno == ERANGE) {
		throw ParseError(std::string(what) + ": cannot parse number '" + t + "'");
	}
	return value;
}

std::size_t parse_index(const std::string &text, const char *what)
{
	const std::string t = trim(text);
	if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
		throw MalformedRowError(std::string(what) + ": cannot parse index '" +
		                        t + "'");
	}
	errno = 0;
	char *end = nullptr;
	const unsigned long long value = std::strtoull(t.c_str(), &end, 10);
	if (end != t.c_str() + t.size() || errno == ERANGE) {
		throw MalformedRowError(std::string(what) + ": cannot parse index '" +
		                        t + "'");
	}
	return static_cast<std::size_t>(value);
}

std::vector<std::string> split(const std::string &line, char sep)
{
	std::vector<std::string> fields;
	std::size_t start = 0;
	while (true) {
		const std::size_t pos = line.find(sep, start);
		if (pos == std::string::npos) {
			fields.push_back(line.substr(start));
			break;
		}
		fields.push_back(line.substr(start, pos - start));
		start = pos + 1;
	}
	return fields;
}

constexpr const char *kSpikeHeader = "pixel_index,branch_id,spike_time_ns";

} // namespace

std::vector<ImageU8> parse_idx_images(std::span<const std::uint8_t> bytes)
{
	const std::vector<std::uint32_t> dims =
	    parse_idx_header(bytes, kIdxImagesMagic, 3);
	const std::size_t count = dims[0];
	const std::size_t rows = dims[1];
	const std::size_t cols = dims[2];
	const std::size_t stride = rows * cols;

	std::vector<ImageU8> images;
	images.reserve(count);
	std::size_t off = 16;
	for (std::size_t i = 0; i < count; ++i, off += stride) {
		ImageU8 img;
		img.rows = rows;
		img.cols = cols;
		img.pixels.assign(bytes.begin() + off, bytes.begin() + off + stride);
		images.push_back(std::move(img));
	}
	return images;
}

std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes)
{
	const std::vector<std::uint32_t> dims =
	    parse_idx_header(bytes, kIdxLabelsMagic, 1);
	return std::vector<std::uint8_t>(bytes.begin() + 8,
	                                 bytes.begin() + 8 + dims[0]);
}

void write_spike_table(const EncodedImage &enc, std::ostream &out)
{
	char buf[160];
	std::snprintf(buf, sizeof buf,
	              "# rows=%zu\n# cols=%zu\n# t_samp_seconds=%.17g\n# mode=%s\n",
	              enc.rows, enc.cols, enc.t_samp, to_string(enc.mode));
	out << buf;
	if (enc.trains.empty()) {
		return; // preamble only
	}
	out << kSpikeHeader << '\n';
	for (std::size_t j = 0; j < enc.trains.size(); ++j) {
		for (const SpikeEvent &ev : enc.trains[j].events) {
			std::snprintf(buf, sizeof buf, "%zu,%zu,%.6f\n", j, ev.branch_id,
			              ev.t * 1e9);
			out << buf;
		}
	}
}

EncodedImage read_spike_table(std::istream &in)
{
	std::map<std::string, std::string> meta;
	std::string line;
	bool header_seen = false;

	// Preamble: # key=value lines up to the column header.
	while (std::getline(in, line)) {
		if (!line.empty() && line.back() == '\r') {
			line.pop_back();
		}
		if (line.empty()) {
			continue;
		}
		if (line[0] == '#') {
			const std::string body = trim(line.substr(1));
			const std::size_t eq = body.find('=');
			if (eq == std::string::npos) {
				throw MalformedRowError("metadata line without '=': " + line);
			}
			meta[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
			continue;
		}
		if (line != kSpikeHeader) {
			throw MalformedRowError("expected header '" +
			                        std::string(kSpikeHeader) + "', got '" +
			                        line + "'");
		}
		header_seen = true;
		break;
	}

	for (const char *key : {"rows", "cols", "t_samp_seconds", "mode"}) {
		if (meta.find(key) == meta.end()) {
			throw MissingMetadataError(std::string("missing metadata key '") +
			                           key + "'");
		}
	}

	EncodedImage enc;
	enc.rows = parse_index(meta["rows"], "rows");
	enc.cols = parse_index(meta["cols"], "cols");
	enc.t_samp = parse_number(meta["t_samp_seconds"], "t_samp_seconds");
	if (meta["mode"] == "analytic") {
		enc.mode = EncodeMode::analytic;
	} else if (meta["mode"] == "simulated") {
		enc.mode = EncodeMode::simulated;
	} else {
		throw MalformedRowError("unknown mode '" + meta["mode"] + "'");
	}
	if (enc.cols != 0 &&
	    enc.rows > std::numeric_limits<std::size_t>::max() / enc.cols) {
		throw MalformedRowError("rows*cols overflows");
	}
	const std::size_t pixel_count = enc.rows * enc.cols;
	enc.trains.resize(pixel_count);

	if (!header_seen) {
		if (pixel_count != 0) {
			throw MissingMetadataError("spike table lacks the column header");
		}
		return enc;
	}

	std::size_t last_pixel = 0;
	double last_time = -std::numeric_limits<double>::infinity();
	while (std::getline(in, line)) {
		if (!line.empty() && line.back() == '\r') {
			line.pop_back();
		}
		if (line.empty()) {
			continue;
		}
		const std::vector<std::string> fields = split(line, ',');
		if (fields.size() != 3) {
			throw MalformedRowError("expected 3 fields, got " +
			                        std::to_string(fields.size()) + ": " + line);
		}
		const std::size_t pixel = parse_index(fields[0], "pixel_index");
		const std::size_t branch = parse_index(fields[1], "branch_id");
		const double t_ns = parse_number(fields[2], "spike_time_ns");
		if (pixel >= pixel_count) {
			throw MalformedRowError("pixel_index " + std::to_string(pixel) +
			                        " outside the declared image");
		}
		if (pixel < last_pixel ||
		    (pixel == last_pixel && t_ns * 1e-9 < last_time)) {
			throw MalformedRowError(
			    "rows are not sorted by (pixel_index, spike_time_ns)");
		}
		last_pixel = pixel;
		last_time = t_ns * 1e-9;
		enc.trains[pixel].events.push_back({branch, t_ns * 1e-9});
	}
	// Same-instant events carry no order in the file; restore the
	// (t, branch_id) invariant.
	for (SpikeTrain &train : enc.trains) {
		std::stable_sort(train.events.begin(), train.events.end(),
		                 [](const SpikeEvent &a, const SpikeEvent &b) {
			                 return a.t != b.t ? a.t < b.t
			                                   : a.branch_id < b.branch_id;
		                 });
	}
	return enc;
}

void write_pgm(const ImageU8 &img, std::ostream &out)
{
	out << "P5\n" << img.cols << ' ' << img.rows << "\n255\n";
	out.write(reinterpret_cast<const char *>(img.pixels.data()),
	          static_cast<std::streamsize>(img.pixels.size()));
}

namespace {

// Next PNM header token, skipping whitespace and # comments.
std::string pgm_token(std::istream &in)
{
	std::string token;
	int c;
	while ((c = in.get()) != EOF) {
		if (c == '#') {
			while ((c = in.get()) != EOF && c != '\n') {
			}
			continue;
		}
		if (std::isspace(c)) {
			if (!token.empty()) {
				return token;
			}
			continue;
		}
		token.push_back(static_cast<char>(c));
	}
	if (token.empty()) {
		throw ParseError("pgm: unexpected end of header");
	}
	return token;
}

} // namespace

ImageU8 read_pgm(std::istream &in)
{
	if (pgm_token(in) != "P5") {
		throw ParseError("pgm: not a binary (P5) file");
	}
	const std::size_t cols = parse_index(pgm_token(in), "pgm cols");
	const std::size_t rows = parse_index(pgm_token(in), "pgm rows");
	if (pgm_token(in) != "255") {
		throw ParseError("pgm: only maxval 255 is supported");
	}
	// pgm_token consumed the single whitespace byte after the maxval.
	ImageU8 img;
	img.rows = rows;
	img.cols = cols;
	img.pixels.resize(rows * cols);
	in.read(reinterpret_cast<char *>(img.pixels.data()),
	        static_cast<std::streamsize>(img.pixels.size()));
	if (static_cast<std::size_t>(in.gcount()) != img.pixels.size()) {
		throw ParseError("pgm: payload shorter than cols*rows");
	}
	return img;
}

Config Config::defaults()
{
	return {DeviceParams{}, BranchSet::defaults(), PowerModel::defaults()};
}

namespace {

std::vector<double> parse_number_list(const std::string &value,
                                      const char *what)
{
	std::vector<double> out;
	for (const std::string &item : split(value, ',')) {
		out.push_back(parse_number(item, what));
	}
	return out;
}

std::vector<PowerAnchor> parse_power_anchors(const std::string &value)
{
	std::vector<PowerAnchor> anchors;
	for (const std::string &item : split(value, ',')) {
		const std::vector<std::string> parts = split(item, ':');
		if (parts.size() != 2) {
			throw ParseError("power_anchors: expected pixel:nW, got '" +
			                 trim(item) + "'");
		}
		const double pixel = parse_number(parts[0], "power_anchors pixel");
		const double nano_watts = parse_number(parts[1], "power_anchors nW");
		if (pixel < 0.0 || pixel > 255.0 ||
		    pixel != static_cast<int>(pixel)) {
			throw ParseError("power_anchors: pixel must be an integer in [0, 255]");
		}
		anchors.push_back({static_cast<int>(pixel), nano_watts * 1e-9});
	}
	return anchors;
}

void check_config_invariants(const Config &cfg)
{
	auto fail = [](const std::string &msg) {
		throw InvariantViolationError(msg);
	};
	const DeviceParams &p = cfg.params;
	if (!(p.v_dd > 0.0)) fail("v_dd_volts must be positive");
	if (!(p.u_t > 0.0)) fail("u_t_volts must be positive");
	if (!(p.slope_s >= 1.0)) fail("slope_s must be >= 1");
	if (!(p.v_tm > 0.0)) fail("v_tm_volts must be positive");
	if (!(p.v_tm < p.v_dd)) fail("v_tm_volts must be below v_dd_volts");
	if (!(p.i_leak >= 0.0)) fail("i_leak_amps must be non-negative");
	if (!(p.t_samp > 0.0)) fail("t_samp_seconds must be positive");

	const auto &branches = cfg.branches.branches;
	if (branches.size() < 2) {
		fail("c_mem_farads must list at least two branches");
	}
	for (std::size_t i = 0; i < branches.size(); ++i) {
		if (!(branches[i].c_mem > 0.0)) {
			fail("c_mem_farads values must be positive");
		}
		if (!(branches[i].k_weight > 0.0)) {
			fail("k_weight_amps values must be positive");
		}
		if (i > 0 && !(branches[i].c_mem > branches[i - 1].c_mem)) {
			fail("c_mem_farads must be strictly ascending");
		}
	}

	const auto &anchors = cfg.power.anchors;
	if (anchors.size() < 2 || anchors.front().pixel != 0 ||
	    anchors.back().pixel != 255) {
		fail("power_anchors must span pixels 0 through 255");
	}
	for (std::size_t i = 0; i < anchors.size(); ++i) {
		if (anchors[i].pixel < 0 || anchors[i].pixel > 255) {
			fail("power_anchors pixels must lie in [0, 255]");
		}
		if (i > 0 && !(anchors[i].pixel > anchors[i - 1].pixel)) {
			fail("power_anchors pixels must increase strictly");
		}
		if (i > 0 && !(anchors[i].power_watts < anchors[i - 1].power_watts)) {
			fail("power_anchors powers must decrease strictly");
		}
	}
}

} // namespace

Config load_config(std::string_view text)
{
	Config cfg = Config::defaults();
	std::vector<double> c_mem;
	std::vector<double> k_weight;
	bool have_c_mem = false;
	bool have_k = false;

	std::istringstream stream{std::string(text)};
	std::string raw;
	while (std::getline(stream, raw)) {
		const std::size_t hash = raw.find('#');
		if (hash != std::string::npos) {
			raw.erase(hash);
		}
		const std::string line = trim(raw);
		if (line.empty()) {
			continue;
		}
		const std::size_t eq = line.find('=');
		if (eq == std::string::npos) {
			throw ParseError("config line without '=': " + line);
		}
		const std::string key = trim(line.substr(0, eq));
		const std::string value = trim(line.substr(eq + 1));

		if (key == "v_dd_volts") {
			cfg.params.v_dd = parse_number(value, key.c_str());
		} else if (key == "v_tp_abs_volts") {
			cfg.params.v_tp_abs = parse_number(value, key.c_str());
		} else if (key == "slope_s") {
			cfg.params.slope_s = parse_number(value, key.c_str());
		} else if (key == "u_t_volts") {
			cfg.params.u_t = parse_number(value, key.c_str());
		} else if (key == "v_tm_volts") {
			cfg.params.v_tm = parse_number(value, key.c_str());
		} else if (key == "v_leak_volts") {
			cfg.params.v_leak = parse_number(value, key.c_str());
		} else if (key == "i_leak_amps") {
			cfg.params.i_leak = parse_number(value, key.c_str());
		} else if (key == "t_samp_seconds") {
			cfg.params.t_samp = parse_number(value, key.c_str());
		} else if (key == "c_mem_farads") {
			c_mem = parse_number_list(value, key.c_str());
			have_c_mem = true;
		} else if (key == "k_weight_amps") {
			k_weight = parse_number_list(value, key.c_str());
			have_k = true;
		} else if (key == "power_anchors") {
			cfg.power.anchors = parse_power_anchors(value);
		} else {
			throw UnknownKeyError("unknown config key '" + key + "'");
		}
	}

	if (have_c_mem || have_k) {
		if (!have_c_mem) {
			for (const Branch &b : cfg.branches.branches) {
				c_mem.push_back(b.c_mem);
			}
		}
		if (!have_k) {
			k_weight.assign(1, cfg.branches.branches.front().k_weight);
		}
		if (k_weight.size() != 1 && k_weight.size() != c_mem.size()) {
			throw InvariantViolationError(
			    "k_weight_amps must be a scalar or match c_mem_farads in length");
		}
		cfg.branches.branches.clear();
		for (std::size_t i = 0; i < c_mem.size(); ++i) {
			const double k =
			    k_weight.size() == 1 ? k_weight.front() : k_weight[i];
			cfg.branches.branches.push_back({c_mem[i], k});
		}
	}

	check_config_invariants(cfg);
	return cfg;
}

Config load_config_file(const std::string &path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw ParseError("cannot open config file '" + path + "'");
	}
	std::ostringstream buffer;
	buffer << in.rdbuf();
	return load_config(buffer.str());
}

std::vector<std::uint8_t> read_file_bytes(const std::string &path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw ParseError("cannot open file '" + path + "'");
	}
	std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
	                                std::istreambuf_iterator<char>());
	return bytes;
}

} // namespace tempenc
