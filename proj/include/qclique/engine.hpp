#pragma once

#include <cstdint>

#include "qclique/channel.hpp"
#include "qclique/rng.hpp"

namespace qclique {

struct CliqueCertificate {
    enum class Kind { Clique, IndependentSet };
    Kind kind = Kind::Clique;
    std::vector<DensityOperator> states;  // mutually orthogonal
    double value = 0.0;                   // average pairwise output overlap
    std::uint64_t seed = 0;
    int restarts = 0;
    int iterations = 0;

    // Re-checks orthogonality and recomputes the value against the channel.
    void validate(const Channel& phi) const;
};

// Average pairwise output overlap of k mutually orthogonal states,
// (2 / k(k-1)) sum_{i<j} tr[Phi(rho_i) Phi(rho_j)].
double tuple_value(const Channel& phi, const std::vector<DensityOperator>& states);

struct OptimizerBudget {
    int restarts = 64;
    int iterations = 200;
    double min_improvement = 1e-10;
};

// Alternating-ascent search for a large clique value: fixing all states but
// one, the objective is linear in the free state and is maximized over the
// orthocomplement of the others by a top eigenvector. The returned value is
// a lower bound on the true maximum; restarts run in parallel and the result
// is deterministic in (seed, budget).
CliqueCertificate max_clique_value(const Channel& phi, int k, const OptimizerBudget& budget = {},
                                   std::uint64_t seed = 1);

// Mirror descent for a small independent-set value; the returned value is an
// upper bound on the true minimum average overlap.
CliqueCertificate min_is_value(const Channel& phi, int k, const OptimizerBudget& budget = {},
                               std::uint64_t seed = 1);

// Independent search oracle over orthogonal pure pairs, k = 2 only.
// Dimension 2 is solved exactly (the pair value is a quadratic form on the
// Bloch sphere, extremized by a 3x3 eigenproblem); dimensions 3 and 4 use a
// deterministic dense frame sample of size ~ 1/net_resolution^2 plus the
// computational-basis pairs.
struct BruteForceResult {
    double max_value = 0.0;
    double min_value = 0.0;
    bool exact = false;
    long samples = 0;
};
BruteForceResult brute_force_value(const Channel& phi, int k, double net_resolution,
                                   std::uint64_t seed = 1);

// Outcome of one verifier evaluation: exact branch acceptance probabilities
// and their weighted combination.
struct VerifierOutcome {
    double accept_probability = 0.0;
    double input_branch = 0.0;   // accept probability of the b = 0 branch
    double channel_branch = 0.0; // accept probability of the b = 1 branch
    double p = 0.0;
};

// Promise parameters of the two-proof clique verifier and the k-proof
// independent-set verifier for an instance with thresholds (c, s).
struct PromiseMap {
    double p = 0.0;
    double completeness = 0.0;
    double soundness = 0.0;
};
PromiseMap qma2_clique_promise(double c, double s);  // p = 1 - (c-s)/2
PromiseMap qmak_is_promise(double c, double s);      // p = 2 / (2 + c - s)

// Two-proof clique verifier: with probability p swap-test the proofs and
// accept on failure; otherwise swap-test the channel outputs and accept on
// success. Closed-form branch probabilities.
VerifierOutcome qma2_clique_verifier(const Circuit& c, const DensityOperator& rho,
                                     const DensityOperator& sigma, double p);

// k-proof independent-set verifier: sample a pair, swap-test either the
// proofs or the channel outputs, accept on failure.
VerifierOutcome qmak_is_verifier(const Circuit& c, const std::vector<DensityOperator>& proof,
                                 double p);

// The same verifiers evaluated by building and simulating the literal
// swap-test circuits (cross-check of the closed forms).
VerifierOutcome qma2_clique_verifier_simulated(const Circuit& c, const DensityOperator& rho,
                                               const DensityOperator& sigma, double p);
VerifierOutcome qmak_is_verifier_simulated(const Circuit& c,
                                           const std::vector<DensityOperator>& proof, double p);

}  // namespace qclique
