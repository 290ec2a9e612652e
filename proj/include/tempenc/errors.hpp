#pragma once

#include <stdexcept>

namespace tempenc {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// --- model / simulator ---

/// Membrane never reaches threshold: net charging current is non-positive
/// or the enable window ends before the crossing.
class NonSpikingError : public Error { public: using Error::Error; };

/// Adjacent branches do not have strictly increasing membrane capacitance.
class DegenerateBranchesError : public Error { public: using Error::Error; };

/// A decoded value lies outside the representable pixel range by more than
/// the configured tolerance.
class OutOfRangeError : public Error { public: using Error::Error; };

/// Spike train events are not strictly sorted under (time, branch id).
class MalformedTrainError : public Error { public: using Error::Error; };

// --- codec ---

/// Parameter validation failed where a valid configuration is required.
class InvalidConfigError : public Error { public: using Error::Error; };

/// A pixel window does not contain enough (or correctly placed) events to decode.
class CorruptWindowError : public Error { public: using Error::Error; };

/// Aggregate statistics requested over an empty deviation report.
class EmptyReportError : public Error { public: using Error::Error; };

// --- power ---

/// Power anchors are unsorted, non-monotone, or do not span the pixel range.
class BadModelError : public Error { public: using Error::Error; };

// --- io ---

class BadMagicError : public Error { public: using Error::Error; };
class TruncatedFileError : public Error { public: using Error::Error; };
class TrailingBytesError : public Error { public: using Error::Error; };
class DimensionOverflowError : public Error { public: using Error::Error; };
class MalformedRowError : public Error { public: using Error::Error; };
class MissingMetadataError : public Error { public: using Error::Error; };
class UnknownKeyError : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
class InvariantViolationError : public Error { public: using Error::Error; };

} // namespace tempenc
