#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace detroute {

// Time is kept in integer microseconds and capacity in integer millibits
// (1 Mb = 1e9 millibit). With bandwidth in kbit/s, capacity over a window is
// the exact product kbps * microseconds, so every capacity integral and every
// delay comparison in the engine is integer arithmetic.
using Usec = std::int64_t;
using Millibits = std::int64_t;
using Kbps = std::int64_t;

inline constexpr Usec kUsecPerMs = 1000;
inline constexpr Millibits kMillibitsPerMb = 1'000'000'000;
inline constexpr Kbps kKbpsPerMbps = 1000;

inline constexpr Usec ms(std::int64_t v) { return v * kUsecPerMs; }

inline Usec ms_to_usec(double v) { return static_cast<Usec>(std::llround(v * 1000.0)); }
inline double usec_to_ms(Usec v) { return static_cast<double>(v) / 1000.0; }

inline Millibits mb_to_millibits(double v) {
  return static_cast<Millibits>(std::llround(v * static_cast<double>(kMillibitsPerMb)));
}
inline double millibits_to_mb(Millibits v) {
  return static_cast<double>(v) / static_cast<double>(kMillibitsPerMb);
}

inline Kbps mbps_to_kbps(double v) { return static_cast<Kbps>(std::llround(v * 1000.0)); }
inline double kbps_to_mbps(Kbps v) { return static_cast<double>(v) / 1000.0; }

// Exact decimal rendering of value/scale for power-of-ten scales. Used for
// CSV and JSON output so that repeated runs emit identical bytes.
std::string format_scaled(std::int64_t value, std::int64_t scale);

inline std::string format_usec_as_ms(Usec v) { return format_scaled(v, kUsecPerMs); }
inline std::string format_millibits_as_mb(Millibits v) { return format_scaled(v, kMillibitsPerMb); }

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReservationConflict : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace detroute
