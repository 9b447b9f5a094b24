#pragma once

#include <string>

#include "qclique/suites.hpp"

namespace qclique::report {

// FNV-1a of raw bytes, hex-encoded; used as the inputs digest of run reports.
std::string fnv1a_hex(const std::string& data);

// Render suite results as CSV rows (name, pass, observed, bound, samples, detail).
std::string checks_to_csv(const std::vector<suites::CheckResult>& checks);

}  // namespace qclique::report
