#pragma once

#include <string>

#include "crossint/bounds.hpp"
#include "crossint/exploration.hpp"
#include "crossint/family.hpp"
#include "crossint/verification.hpp"

namespace crossint {

struct JsonOptions {
  // Wall-clock fields are the only nondeterministic output; suppressing
  // them makes reports byte-identical across reruns.
  bool include_timing = true;
  int indent = 2;
};

// Exact-value JSON renderings: integers and rationals are emitted as
// strings ("p" or "p/q"), never floats. Keys are sorted, so equal data
// serializes to identical bytes.
std::string to_json_string(const BoundReport& r, const JsonOptions& = {});
std::string to_json_string(const ScanResult& r, const JsonOptions& = {});
std::string to_json_string(const MainVerification& r, const JsonOptions& = {});
std::string to_json_string(const ExtremalClassification& r,
                           const JsonOptions& = {});
std::string to_json_string(const KkPreservationResult& r,
                           const JsonOptions& = {});
std::string to_json_string(const ShadowMinimumResult& r,
                           const JsonOptions& = {});
std::string to_json_string(const BipartiteLemmaResult& r,
                           const JsonOptions& = {});
std::string to_json_string(const CorollaryCheckResult& r,
                           const JsonOptions& = {});
std::string to_json_string(const InequalityScanReport& r,
                           const JsonOptions& = {});
std::string to_json_string(const SearchOutcome& r, const JsonOptions& = {});
std::string to_json_string(const ConstructionValues& r,
                           const JsonOptions& = {});

}  // namespace crossint
