#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qclique/linalg.hpp"
#include "qclique/rng.hpp"

using namespace qclique;

namespace {

PureState haar_pure(Rng& rng, int d) {
    return PureState::make(rng.haar_state(d), {d});
}

DensityOperator haar_density(Rng& rng, int d) {
    return DensityOperator::make(rng.hs_random_density(d), {d});
}

}  // namespace

TEST_CASE("trace norm basics") {
    CHECK(trace_norm(Mat::Zero(3, 3)) == 0.0);

    Mat a = Mat::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = -1.0;  // |0><0| - |1><1|
    CHECK(trace_norm(a) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(trace_norm(Mat::Zero(2, 3)), DimensionError);
}

TEST_CASE("trace norm of a pure-state difference equals the eigenvalue magnitude") {
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        auto psi = haar_pure(rng, 4);
        auto phi = haar_pure(rng, 4);
        Mat x = psi.projector() - phi.projector();
        // Rank-2 traceless difference: nonzero eigenvalues are +/- lambda.
        Eigen::SelfAdjointEigenSolver<Mat> es(x, Eigen::EigenvaluesOnly);
        double lambda = es.eigenvalues().cwiseAbs().maxCoeff();
        CHECK(trace_norm(x) == doctest::Approx(lambda).epsilon(1e-10));
    }
}

TEST_CASE("frobenius norm") {
    CHECK(frobenius_norm(Mat::Identity(2, 2)) == doctest::Approx(std::sqrt(2.0)));
    Mat a = Mat::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = -1.0;
    CHECK(frobenius_norm(a) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("norm relations on pure-state differences") {
    Rng rng(7);
    for (int d : {2, 3, 8, 16}) {
        for (int rep = 0; rep < 50; ++rep) {
            auto psi = haar_pure(rng, d);
            auto phi = haar_pure(rng, d);
            Mat x = psi.projector() - phi.projector();
            double f = frobenius_norm(x);
            double t = trace_norm(x);
            CHECK(std::abs(f - std::sqrt(2.0) * t) < 1e-9);
            double e = (psi.amplitudes - phi.amplitudes).norm();
            CHECK(f <= std::sqrt(2.0) * e + 1e-9);
        }
    }
}

TEST_CASE("overlap") {
    auto zero = PureState::basis(0, {2});
    auto one = PureState::basis(1, {2});
    CHECK(overlap(DensityOperator::pure(zero), DensityOperator::pure(zero)) == 1.0);
    CHECK(overlap(DensityOperator::pure(zero), DensityOperator::pure(one)) == 0.0);
    auto mu = DensityOperator::maximally_mixed({2});
    CHECK(overlap(mu, mu) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(overlap(mu, DensityOperator::maximally_mixed({4})), DimensionError);
}

TEST_CASE("overlap satisfies Cauchy-Schwarz") {
    Rng rng(13);
    for (int rep = 0; rep < 50; ++rep) {
        auto rho = haar_density(rng, 4);
        auto sig = haar_density(rng, 4);
        CHECK(overlap(rho, sig) <= std::sqrt(overlap(rho, rho) * overlap(sig, sig)) + 1e-12);
    }
}

TEST_CASE("partial trace") {
    Rng rng(3);
    auto rho = haar_density(rng, 2);
    auto sig = haar_density(rng, 3);
    auto prod = tensor(rho, sig);

    SUBCASE("keep all is identity") {
        auto kept = partial_trace(prod, {0, 1});
        CHECK(frobenius_norm(kept.matrix - prod.matrix) < 1e-14);
    }
    SUBCASE("product factorizes") {
        auto first = partial_trace(prod, {0});
        CHECK(frobenius_norm(first.matrix - rho.matrix) < 1e-12);
        auto second = partial_trace(prod, {1});
        CHECK(frobenius_norm(second.matrix - sig.matrix) < 1e-12);
    }
    SUBCASE("bell state marginal is maximally mixed") {
        Vec bell(4);
        bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
        auto b = DensityOperator::pure(PureState::make(bell, {2, 2}));
        auto marg = partial_trace(b, {0});
        CHECK(frobenius_norm(marg.matrix - Mat::Identity(2, 2) / 2.0) < 1e-12);
    }
    SUBCASE("invalid index set") {
        CHECK_THROWS(partial_trace(prod, {0, 5}));
    }
}

TEST_CASE("partial trace commutes with convex combinations and preserves states") {
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        auto a = DensityOperator::make(rng.hs_random_density(8), {2, 2, 2});
        auto b = DensityOperator::make(rng.hs_random_density(8), {2, 2, 2});
        double lam = rng.uniform();
        auto mixed = DensityOperator::unchecked(lam * a.matrix + (1 - lam) * b.matrix, {2, 2, 2});
        auto lhs = partial_trace(mixed, {0, 2});
        Mat rhs = lam * partial_trace(a, {0, 2}).matrix + (1 - lam) * partial_trace(b, {0, 2}).matrix;
        CHECK(frobenius_norm(lhs.matrix - rhs) < 1e-12);
        CHECK_NOTHROW(DensityOperator::make(lhs.matrix, lhs.register_dims));
    }
}

TEST_CASE("spectral decomposition") {
    SUBCASE("maximally mixed qubit") {
        auto s = spectral_decomposition(DensityOperator::maximally_mixed({2}));
        REQUIRE(s.eigenvalues.size() == 2);
        CHECK(s.eigenvalues[0] == doctest::Approx(0.5));
        CHECK(s.eigenvalues[1] == doctest::Approx(0.5));
    }
    SUBCASE("plus state") {
        Vec plus(2);
        plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
        auto s = spectral_decomposition(DensityOperator::pure(PureState::make(plus, {2})));
        CHECK(s.eigenvalues[0] == doctest::Approx(1.0));
        CHECK(s.eigenvalues[1] == doctest::Approx(0.0));
        CHECK(std::abs(s.eigenvectors[0].amplitudes.adjoint().dot(plus)) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("random state reconstructs") {
        Rng rng(17);
        auto rho = haar_density(rng, 6);
        auto s = spectral_decomposition(rho);
        Mat rec = Mat::Zero(6, 6);
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
            rec += s.eigenvalues[i] * s.eigenvectors[i].projector();
        CHECK(frobenius_norm(rho.matrix - rec) < 1e-9);
        CHECK(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
    }
    SUBCASE("non-hermitian rejected") {
        Mat bad = Mat::Zero(2, 2);
        bad(0, 1) = 1.0;
        CHECK_THROWS_AS(spectral_decomposition_hermitian(bad, {2}), ValidationError);
    }
}

TEST_CASE("nearest isometry") {
    SUBCASE("isometry is a fixed point") {
        Rng rng(23);
        Mat frame = rng.haar_frame(5, 3);
        auto r = nearest_isometry(frame);
        CHECK(frobenius_norm(r.isometry - frame) < 1e-10);
    }
    SUBCASE("two-column example satisfies the overlap bound") {
        Mat psi(2, 2);
        psi << 1, 1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0);  // |0>, |+>
        auto r = nearest_isometry(psi);
        CHECK(frobenius_norm(r.isometry.adjoint() * r.isometry - Mat::Identity(2, 2)) < 1e-9);
        double lhs = std::pow(frobenius_norm(psi - r.isometry), 2);
        // Off-diagonal Gram mass: |<0|+>|^2 twice.
        CHECK(lhs <= 0.5 + 1e-12);
    }
    SUBCASE("gram-perturbed frames satisfy the singular value chain") {
        Rng rng(29);
        for (int rep = 0; rep < 50; ++rep) {
            Mat psi = rng.haar_frame(6, 3);
            for (int j = 0; j < 3; ++j) {
                Vec noise = rng.haar_state(6);
                psi.col(j) = (psi.col(j) + 0.15 * noise).normalized();
            }
            Eigen::BDCSVD<Mat> svd(psi);
            double lhs = 0, rhs = 0;
            for (int i = 0; i < 3; ++i) {
                double s = svd.singularValues()(i);
                lhs += (s - 1) * (s - 1);
                rhs += (s * s - 1) * (s * s - 1);
            }
            CHECK(lhs <= rhs + 1e-12);
            double gram = 0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (i != j) gram += std::norm(psi.col(i).dot(psi.col(j)));
            auto r = nearest_isometry(psi);
            CHECK(std::pow(frobenius_norm(psi - r.isometry), 2) <= gram + 1e-10);
        }
    }
    SUBCASE("rank-deficient input is flagged, not an error") {
        Mat psi = Mat::Zero(3, 2);
        psi(0, 0) = 1.0;
        psi(0, 1) = 1.0;
        auto r = nearest_isometry(psi);
        CHECK(r.min_singular_value < 1e-12);
        CHECK(frobenius_norm(r.isometry.adjoint() * r.isometry - Mat::Identity(2, 2)) < 1e-9);
    }
    SUBCASE("wide input rejected") { CHECK_THROWS_AS(nearest_isometry(Mat::Zero(2, 3)), DimensionError); }
}

TEST_CASE("validation catches bad density operators") {
    Mat notherm = Mat::Zero(2, 2);
    notherm(0, 0) = 1.0;
    notherm(0, 1) = 0.5;
    CHECK_THROWS_AS(DensityOperator::make(notherm, {2}), ValidationError);

    Mat traceless = Mat::Identity(2, 2);
    CHECK_THROWS_AS(DensityOperator::make(traceless, {2}), ValidationError);

    Mat neg = Mat::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityOperator::make(neg, {2}), ValidationError);
}
