#include "qclique/rng.hpp"

namespace qclique {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng Rng::child(std::uint64_t index) const {
    return Rng(splitmix64(seed_ ^ splitmix64(index + 1)));
}

std::uint64_t Rng::bits(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
}

Eigen::VectorXcd Rng::haar_state(int d) {
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = complex_gaussian();
    v.normalize();
    return v;
}

Eigen::MatrixXcd Rng::haar_frame(int d, int k) {
    Eigen::MatrixXcd g(d, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < d; ++i) g(i, j) = complex_gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, k);
    Eigen::MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    for (int j = 0; j < k; ++j) {
        std::complex<double> rjj = r(j, j);
        double a = std::abs(rjj);
        std::complex<double> phase = a > 0 ? rjj / a : std::complex<double>(1, 0);
        q.col(j) *= phase;
    }
    return q;
}

Eigen::MatrixXcd Rng::haar_unitary(int d) { return haar_frame(d, d); }

Eigen::MatrixXcd Rng::hs_random_density(int d, int rank) {
    if (rank <= 0) rank = d;
    Eigen::MatrixXcd g(d, rank);
    for (int j = 0; j < rank; ++j)
        for (int i = 0; i < d; ++i) g(i, j) = complex_gaussian();
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

}  // namespace qclique
