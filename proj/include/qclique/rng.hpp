#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace qclique {

// Seeded PRNG wrapper. Every random quantity in the library flows from one
// of these; parallel loops derive one child per work item so results do not
// depend on the thread count.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    // Deterministic child stream for work item `index`.
    Rng child(std::uint64_t index) const;

    std::uint64_t seed() const { return seed_; }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    std::uint64_t bits(std::uint64_t bound);  // uniform in [0, bound)

    std::complex<double> complex_gaussian() {
        return {gaussian(), gaussian()};
    }

    // Haar-random pure state of dimension d.
    Eigen::VectorXcd haar_state(int d);

    // Haar-random unitary via QR of a Ginibre matrix with the phases of the
    // R diagonal fixed, which makes the distribution exactly Haar and the
    // output deterministic for a given stream.
    Eigen::MatrixXcd haar_unitary(int d);

    // First k columns of a Haar unitary: a uniformly random orthonormal frame.
    Eigen::MatrixXcd haar_frame(int d, int k);

    // Random density operator from the Hilbert-Schmidt ensemble, G G^dag / tr.
    Eigen::MatrixXcd hs_random_density(int d, int rank = 0);

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace qclique
