#include "qclique/report.hpp"

#include <cstdint>
#include <iomanip>
#include <sstream>

namespace qclique::report {

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

std::string checks_to_csv(const std::vector<suites::CheckResult>& checks) {
    std::ostringstream out;
    out << "name,pass,observed,bound,samples,detail\n";
    for (const auto& c : checks) {
        std::ostringstream line;
        line << c.name << "," << (c.pass ? "1" : "0") << "," << std::setprecision(17) << c.observed
             << "," << c.bound << "," << c.samples << ",\"" << c.detail << "\"";
        out << line.str() << "\n";
    }
    return out.str();
}

}  // namespace qclique::report
