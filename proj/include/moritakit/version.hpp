#pragma once

namespace moritakit {

inline constexpr const char* kVersion = "0.1.0";

/// Default seed for all pseudo-random sampling; recorded in every report.
inline constexpr unsigned long long kDefaultSeed = 20240901ULL;

}  // namespace moritakit
