#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qclique::suites {

// One checked inequality or identity: the observed value against its bound,
// with the comparison already folded into `pass`.
struct CheckResult {
    std::string name;
    bool pass = false;
    double observed = 0.0;
    double bound = 0.0;
    long samples = 0;
    std::string detail;
};

using Suite = std::function<std::vector<CheckResult>(int samples, std::uint64_t seed)>;

// Named property suites; `samples` scales the sampled checks (exact checks
// ignore it). The names are stable identifiers for reports.
std::vector<std::pair<std::string, Suite>> all_suites();

std::vector<CheckResult> norm_relations(int samples, std::uint64_t seed);
std::vector<CheckResult> swap_test(int samples, std::uint64_t seed);
std::vector<CheckResult> direct_sum_semantics(int pairs, std::uint64_t seed);
std::vector<CheckResult> marginal_channel(int samples, std::uint64_t seed);
std::vector<CheckResult> verdict_formula(int grid, std::uint64_t seed);
std::vector<CheckResult> stability_weight_suite(int grid, std::uint64_t seed);
std::vector<CheckResult> hardness_pipeline(int budget_scale, std::uint64_t seed);
std::vector<CheckResult> hamiltonian_suite(int samples, std::uint64_t seed);
std::vector<CheckResult> classical_suite(int unused, std::uint64_t seed);
std::vector<CheckResult> k_to_2_suite(int unused, std::uint64_t seed);
std::vector<CheckResult> bell_form_suite(int channels, std::uint64_t seed);
std::vector<CheckResult> is_verifier_suite(int frames, std::uint64_t seed);

}  // namespace qclique::suites
