#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qclique/kernels.hpp"
#include "qclique/linalg.hpp"
#include "qclique/rng.hpp"

using namespace qclique;
using kernels::Mat;

namespace {

Mat random_matrix(Rng& rng, long r, long c) {
    Mat m(r, c);
    for (long j = 0; j < c; ++j)
        for (long i = 0; i < r; ++i) m(i, j) = rng.complex_gaussian();
    return m;
}

}  // namespace

TEST_CASE("kron serial and parallel agree with the definition") {
    Rng rng(1);
    Mat a = random_matrix(rng, 3, 2);
    Mat b = random_matrix(rng, 4, 5);
    Mat s = kernels::kron(a, b, Exec::Serial);
    Mat p = kernels::kron(a, b, Exec::Parallel);
    CHECK((s - p).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 5; ++l)
                    CHECK(s(i * 4 + k, j * 5 + l) == a(i, j) * b(k, l));
}

TEST_CASE("partial trace kernel matches dense contraction") {
    Rng rng(2);
    std::vector<int> dims{2, 3, 2};
    Mat m = random_matrix(rng, 12, 12);

    Mat s = kernels::partial_trace(m, dims, {0, 2}, Exec::Serial);
    Mat p = kernels::partial_trace(m, dims, {0, 2}, Exec::Parallel);
    CHECK((s - p).cwiseAbs().maxCoeff() == 0.0);

    // Contract index-by-index with explicit loops as the oracle.
    Mat oracle = Mat::Zero(4, 4);
    auto idx = [&](int a, int b, int c) { return (a * 3 + b) * 2 + c; };
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int c2 = 0; c2 < 2; ++c2)
                    for (int b = 0; b < 3; ++b)
                        oracle(a * 2 + c, a2 * 2 + c2) += m(idx(a, b, c), idx(a2, b, c2));
    CHECK((s - oracle).cwiseAbs().maxCoeff() < 1e-13);

    CHECK(std::abs(kernels::partial_trace(m, dims, {}, Exec::Serial)(0, 0) - m.trace()) < 1e-12);
}

TEST_CASE("unitary application matches explicit lift") {
    Rng rng(3);
    const int n = 4;
    const long d = 1L << n;
    Mat rho = rng.hs_random_density(d);

    SUBCASE("single-qubit gate on each wire") {
        Mat u = rng.haar_unitary(2);
        for (int w = 0; w < n; ++w) {
            // Build U tensor Id explicitly in wire order.
            Mat lift = Mat::Identity(1, 1);
            for (int i = 0; i < n; ++i)
                lift = kernels::kron(lift, i == w ? u : Mat::Identity(2, 2), Exec::Serial);
            Mat expect = lift * rho * lift.adjoint();
            Mat got = rho;
            kernels::apply_unitary(got, n, u, {w}, Exec::Serial);
            CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);
            Mat gotp = rho;
            kernels::apply_unitary(gotp, n, u, {w}, Exec::Parallel);
            CHECK((got - gotp).cwiseAbs().maxCoeff() == 0.0);
        }
    }

    SUBCASE("two-qubit gate on a wire pair, including reversed order") {
        Mat u = rng.haar_unitary(4);
        // Gate on wires {2,0}: row index bit 1 = wire 2, bit 0 = wire 0.
        Mat got = rho;
        kernels::apply_unitary(got, n, u, {2, 0}, Exec::Serial);

        Mat lift = Mat::Zero(d, d);
        for (long r = 0; r < d; ++r)
            for (long c = 0; c < d; ++c) {
                auto bit = [&](long v, int wire) { return (v >> (n - 1 - wire)) & 1L; };
                if (bit(r, 1) == bit(c, 1) && bit(r, 3) == bit(c, 3)) {
                    long ur = 2 * bit(r, 2) + bit(r, 0);
                    long uc = 2 * bit(c, 2) + bit(c, 0);
                    lift(r, c) = u(ur, uc);
                }
            }
        Mat expect = lift * rho * lift.adjoint();
        CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("left application composes to two-sided conjugation") {
    Rng rng(4);
    const int n = 3;
    Mat rho = rng.hs_random_density(8);
    Mat u = rng.haar_unitary(2);
    Mat a = rho;
    kernels::apply_unitary(a, n, u, {1}, Exec::Serial);
    Mat b = rho;
    kernels::apply_unitary_left(b, n, u, {1}, Exec::Serial);
    b = b.adjoint().eval();
    kernels::apply_unitary_left(b, n, u, {1}, Exec::Serial);
    b = b.adjoint().eval();
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("kraus application") {
    Rng rng(5);
    Mat rho = rng.hs_random_density(4);
    // Random valid Kraus set from a Stinespring slice of a Haar unitary.
    Mat u = rng.haar_unitary(8);
    std::vector<Mat> kraus;
    for (int e = 0; e < 2; ++e) kraus.push_back(u.block(e * 4, 0, 4, 4));
    Mat sum = Mat::Zero(4, 4);
    for (const auto& k : kraus) sum += k.adjoint() * k;
    REQUIRE((sum - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

    Mat s = kernels::kraus_apply(rho, kraus, Exec::Serial);
    Mat p = kernels::kraus_apply(rho, kraus, Exec::Parallel);
    CHECK((s - p).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(s.trace().real() - 1.0) < 1e-12);

    // Duality: tr(X Phi(rho)) == tr(Phi^dag(X) rho).
    Mat x = random_matrix(rng, 4, 4);
    x = ((x + x.adjoint()) / 2).eval();
    Mat xa = kernels::kraus_adjoint_apply(x, kraus, Exec::Serial);
    CHECK(std::abs((x * s).trace() - (xa * rho).trace()) < 1e-12);
}

TEST_CASE("kernels agree across policies on larger operands") {
    Rng rng(6);
    const int n = 6;
    Mat rho = rng.hs_random_density(1 << n);
    Mat u = rng.haar_unitary(8);
    Mat a = rho, b = rho;
    kernels::apply_unitary(a, n, u, {0, 3, 5}, Exec::Serial);
    kernels::apply_unitary(b, n, u, {0, 3, 5}, Exec::Parallel);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);

    Mat ts = kernels::partial_trace(rho, qubit_dims(n), {1, 4}, Exec::Serial);
    Mat tp = kernels::partial_trace(rho, qubit_dims(n), {1, 4}, Exec::Parallel);
    CHECK((ts - tp).cwiseAbs().maxCoeff() == 0.0);
}
