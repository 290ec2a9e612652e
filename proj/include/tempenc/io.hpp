#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempenc/codec.hpp"
#include "tempenc/power.hpp"

namespace tempenc {

// --- IDX (MNIST container: big-endian magic + dimension sizes + payload) ---

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

/// Parse an image file (magic 0x00000803, dims count x rows x cols).
/// Total over the declared length: never reads past the dims product and
/// rejects structurally broken input with BadMagicError, TruncatedFileError,
/// TrailingBytesError or DimensionOverflowError.
std::vector<ImageU8> parse_idx_images(std::span<const std::uint8_t> bytes);

/// Parse a label file (magic 0x00000801, one dimension).
std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes);

// --- spike tables (CSV with a # key=value preamble) ---

/// Serialize an encoding as UTF-8 CSV. Preamble lines carry rows, cols,
/// t_samp_seconds and mode; data rows are
/// `pixel_index,branch_id,spike_time_ns` with times printed to six decimals,
/// sorted by (pixel_index, spike_time_ns). An empty encoding writes the
/// preamble only.
void write_spike_table(const EncodedImage &enc, std::ostream &out);

/// Inverse of write_spike_table, exact up to the printed time precision.
/// Throws MissingMetadataError or MalformedRowError on structural problems.
EncodedImage read_spike_table(std::istream &in);

// --- PGM (binary, P5) ---

/// `P5\n<cols> <rows>\n255\n` followed by the raw row-major bytes.
void write_pgm(const ImageU8 &img, std::ostream &out);

/// Reads the subset of P5 produced by write_pgm (plus whitespace/comment
/// freedom in the header). Maxval must be 255.
ImageU8 read_pgm(std::istream &in);

// --- config ---

/// A full toolkit configuration: circuit constants, branch list, power model.
struct Config {
	DeviceParams params;
	BranchSet branches;
	PowerModel power;

	static Config defaults();
};

/// Parse `key = value` text (UTF-8, # comments). Unspecified keys keep their
/// defaults. Keys: v_dd_volts, v_tp_abs_volts, slope_s, u_t_volts,
/// v_tm_volts, v_leak_volts, i_leak_amps, t_samp_seconds, c_mem_farads
/// (comma-separated ascending list), k_weight_amps (scalar or list matching
/// the branches), power_anchors (pixel:nW comma list). Scientific notation
/// accepted. Throws UnknownKeyError, ParseError or InvariantViolationError.
Config load_config(std::string_view text);

/// load_config over the contents of a file.
Config load_config_file(const std::string &path);

/// Whole file as bytes. Throws ParseError when the file cannot be read.
std::vector<std::uint8_t> read_file_bytes(const std::string &path);

} // namespace tempenc
