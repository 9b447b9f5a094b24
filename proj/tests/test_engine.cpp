#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qclique/engine.hpp"

using namespace qclique;

namespace {

Mat basis_proj(int i, long d) {
    Mat m = Mat::Zero(d, d);
    m(i, i) = 1.0;
    return m;
}

Channel constant_channel(const Mat& sigma, long in_dim) {
    return Channel::eb({Mat::Identity(in_dim, in_dim)}, {sigma});
}

Channel identity_channel(long d) {
    return Channel::kraus({Mat::Identity(d, d)});
}

Channel qubit_dephasing() {
    return Channel::kraus({basis_proj(0, 2), basis_proj(1, 2)});
}

std::vector<DensityOperator> basis_pair(long d, int i, int j) {
    return {DensityOperator::pure(PureState::basis(i, {static_cast<int>(d)})),
            DensityOperator::pure(PureState::basis(j, {static_cast<int>(d)}))};
}

}  // namespace

TEST_CASE("tuple value on reference channels") {
    Rng rng(1);
    SUBCASE("constant pure output gives value one") {
        Vec amp = rng.haar_state(2);
        auto phi = constant_channel(amp * amp.adjoint(), 4);
        CHECK(tuple_value(phi, basis_pair(4, 0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("identity channel gives value zero on orthogonal pairs") {
        CHECK(tuple_value(identity_channel(4), basis_pair(4, 1, 3)) == 0.0);
    }
    SUBCASE("permutation invariance") {
        auto phi = qubit_dephasing();
        Vec plus(2), minus(2);
        plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
        minus << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
        std::vector<DensityOperator> states = {DensityOperator::pure(PureState::make(plus, {2})),
                                               DensityOperator::pure(PureState::make(minus, {2}))};
        double a = tuple_value(phi, states);
        std::swap(states[0], states[1]);
        double b = tuple_value(phi, states);
        CHECK(a == b);
    }
    SUBCASE("non-orthogonal inputs are rejected") {
        Vec plus(2);
        plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
        std::vector<DensityOperator> states = {DensityOperator::pure(PureState::basis(0, {2})),
                                               DensityOperator::pure(PureState::make(plus, {2}))};
        CHECK_THROWS_AS(tuple_value(qubit_dephasing(), states), ValidationError);
    }
}

TEST_CASE("clique optimizer finds known optima") {
    Rng rng(2);
    OptimizerBudget small{16, 60, 1e-10};
    SUBCASE("constant pure channel reaches one for several k") {
        Vec amp = rng.haar_state(2);
        auto phi = constant_channel(amp * amp.adjoint(), 8);
        for (int k : {2, 3, 4}) {
            auto cert = max_clique_value(phi, k, small, 7);
            CHECK(cert.value >= 1.0 - 1e-9);
            cert.validate(phi);
        }
    }
    SUBCASE("identity channel has no clique") {
        auto cert = max_clique_value(identity_channel(4), 2, small, 7);
        CHECK(cert.value <= 1e-6);
    }
    SUBCASE("dephasing channel clique value approaches 1/2 from below") {
        // With d == k the alternating step is forced, so only restarts
        // explore; the exact 1/2 is certified by the brute-force oracle.
        auto cert = max_clique_value(qubit_dephasing(), 2, OptimizerBudget{64, 20, 1e-10}, 7);
        CHECK(cert.value <= 0.5 + 1e-9);
        CHECK(cert.value >= 0.5 - 0.01);
    }
    SUBCASE("k above the dimension is rejected") {
        CHECK_THROWS_AS(max_clique_value(identity_channel(2), 3, small, 7), DimensionError);
    }
}

TEST_CASE("independent set optimizer finds known optima") {
    Rng rng(3);
    OptimizerBudget small{16, 60, 1e-10};
    SUBCASE("identity channel reaches zero") {
        auto cert = min_is_value(identity_channel(4), 2, small, 7);
        CHECK(cert.value <= 1e-9);
    }
    SUBCASE("constant pure channel cannot go below one") {
        Vec amp = rng.haar_state(2);
        auto phi = constant_channel(amp * amp.adjoint(), 4);
        auto cert = min_is_value(phi, 2, small, 7);
        CHECK(cert.value == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("constant maximally mixed output pins every pair at 1/2") {
        auto phi = constant_channel(Mat::Identity(2, 2) / 2.0, 4);
        auto cert = min_is_value(phi, 2, small, 7);
        CHECK(cert.value == doctest::Approx(0.5).epsilon(1e-9));
    }
}

TEST_CASE("optimizer value is monotone in the iteration budget") {
    Circuit c;
    c.in_count = 2;
    c.gates.push_back(Gate::unitary("H", {0}));
    c.gates.push_back(Gate::unitary("CX", {0, 1}));
    c.gates.push_back(Gate::trace_out(1));
    auto phi = kraus_from_circuit(c);
    double prev = -1;
    for (int iters : {1, 2, 4, 8, 16}) {
        OptimizerBudget b{1, iters, 0.0};
        auto cert = max_clique_value(phi, 2, b, 11);
        CHECK(cert.value >= prev - 1e-12);
        prev = cert.value;
    }
}

TEST_CASE("brute force oracle") {
    SUBCASE("identity qubit channel has constant pair value zero") {
        auto res = brute_force_value(identity_channel(2), 2, 0.05);
        CHECK(res.exact);
        CHECK(res.max_value == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(res.min_value == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("qubit dephasing ranges over [0, 1/2]") {
        auto res = brute_force_value(qubit_dephasing(), 2, 0.05);
        CHECK(res.exact);
        CHECK(res.max_value == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(res.min_value == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("constant output channel is flat") {
        Rng rng(5);
        Mat sigma = rng.hs_random_density(3);
        double purity = (sigma * sigma).trace().real();
        auto d2 = brute_force_value(constant_channel(sigma, 2), 2, 0.05);
        CHECK(d2.max_value == doctest::Approx(purity).epsilon(1e-10));
        CHECK(d2.min_value == doctest::Approx(purity).epsilon(1e-10));
        auto d4 = brute_force_value(constant_channel(sigma, 4), 2, 0.1);
        CHECK(d4.max_value == doctest::Approx(purity).epsilon(1e-10));
        CHECK(d4.min_value == doctest::Approx(purity).epsilon(1e-10));
    }
    SUBCASE("optimizer answers are bracketed by the oracle") {
        Rng rng(6);
        OptimizerBudget small{12, 50, 1e-10};
        std::vector<Channel> corpus;
        corpus.push_back(identity_channel(2));
        corpus.push_back(qubit_dephasing());
        corpus.push_back(constant_channel(rng.hs_random_density(2), 4));
        corpus.push_back(identity_channel(4));
        for (const auto& phi : corpus) {
            auto bf = brute_force_value(phi, 2, 0.05);
            auto up = max_clique_value(phi, 2, small, 3);
            auto lo = min_is_value(phi, 2, small, 3);
            CHECK(up.value >= bf.max_value - 0.05);
            if (bf.exact) {
                CHECK(up.value <= bf.max_value + 1e-9);
                CHECK(lo.value >= bf.min_value - 1e-9);
            }
            CHECK(lo.value <= bf.min_value + 0.05);
        }
    }
    SUBCASE("rejects unsupported sizes") {
        CHECK_THROWS_AS(brute_force_value(identity_channel(8), 2, 0.1), DimensionError);
        CHECK_THROWS_AS(brute_force_value(identity_channel(2), 3, 0.1), ValidationError);
    }
}

TEST_CASE("pure states in the spectral support never decrease a clique value") {
    Rng rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        Circuit c;
        c.in_count = 2;
        c.gates.push_back(Gate::unitary("H", {0}));
        c.gates.push_back(Gate::unitary("CX", {0, 1}));
        c.gates.push_back(Gate::unitary("T", {1}));
        c.gates.push_back(Gate::trace_out(0));
        auto phi = kraus_from_circuit(c);
        const int k = 2;
        // Mixed orthogonal states on orthogonal two-dimensional supports.
        Mat u = rng.haar_unitary(4);
        std::vector<Mat> supp = {u.leftCols(2), u.rightCols(2)};
        std::vector<DensityOperator> states;
        for (int i = 0; i < k; ++i) {
            Mat w = rng.hs_random_density(2);
            states.push_back(DensityOperator::unchecked(
                supp[static_cast<std::size_t>(i)] * w * supp[static_cast<std::size_t>(i)].adjoint(),
                {4}));
        }
        double before = tuple_value(phi, states);
        // Replace each state by the best pure state inside its support.
        for (int i = 0; i < k; ++i) {
            Mat m = Mat::Zero(4, 4);
            for (int j = 0; j < k; ++j)
                if (j != i)
                    m += phi.adjoint_apply(phi.apply_matrix(states[static_cast<std::size_t>(j)].matrix));
            Mat reduced = supp[static_cast<std::size_t>(i)].adjoint() * ((m + m.adjoint()) / 2.0) *
                          supp[static_cast<std::size_t>(i)];
            Eigen::SelfAdjointEigenSolver<Mat> es(((reduced + reduced.adjoint()) / 2.0).eval());
            Vec v = supp[static_cast<std::size_t>(i)] * es.eigenvectors().col(1);
            states[static_cast<std::size_t>(i)] = DensityOperator::unchecked(v * v.adjoint(), {4});
            double after = tuple_value(phi, states);
            CHECK(after >= before - 1e-10);
            before = after;
        }
    }
}

TEST_CASE("promise parameter maps") {
    SUBCASE("two-proof clique map") {
        double c = 0.6, s = 0.2;
        auto m = qma2_clique_promise(c, s);
        CHECK(m.p == doctest::Approx(1 - (c - s) / 2));
        CHECK(m.completeness == doctest::Approx(0.5 + (c - s) * c / 8));
        CHECK(m.soundness == doctest::Approx(0.5 + (c - s) * (c + s) / 16));
        CHECK(m.completeness - m.soundness == doctest::Approx((c - s) * (c - s) / 16));
    }
    SUBCASE("k-proof independent set map") {
        double c = 0.9, s = 0.4;
        auto m = qmak_is_promise(c, s);
        CHECK(m.p == doctest::Approx(2 / (2 + c - s)));
        CHECK(m.completeness == doctest::Approx((1 + (c - s) / 2 * c) / (2 + c - s)));
        double gap = (c - s) * (c - s) / 4 / (2 + c - s);
        CHECK(m.completeness - m.soundness == doctest::Approx(gap));
    }
}

TEST_CASE("two-proof clique verifier") {
    Circuit dephase;
    dephase.in_count = 1;
    dephase.gates.push_back(Gate::prepare(1));
    dephase.gates.push_back(Gate::unitary("CX", {0, 1}));
    dephase.gates.push_back(Gate::trace_out(1));

    SUBCASE("clique pair with known output overlap") {
        // |+>, |-> both dephase to the maximally mixed state: output overlap 1/2.
        Vec plus(2), minus(2);
        plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
        minus << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
        auto rho = DensityOperator::pure(PureState::make(plus, {2}));
        auto sig = DensityOperator::pure(PureState::make(minus, {2}));
        for (double p : {0.2, 0.5, 0.9}) {
            auto out = qma2_clique_verifier(dephase, rho, sig, p);
            CHECK(out.accept_probability ==
                  doctest::Approx(p * 0.5 + (1 - p) * (0.5 + 0.25)).epsilon(1e-12));
            CHECK(out.accept_probability ==
                  doctest::Approx(p * out.input_branch + (1 - p) * out.channel_branch).epsilon(1e-12));
        }
    }
    SUBCASE("equal pure proofs never pass the orthogonality branch") {
        auto rho = DensityOperator::pure(PureState::basis(0, {2}));
        auto out = qma2_clique_verifier(dephase, rho, rho, 0.5);
        CHECK(out.input_branch == doctest::Approx(0.0));
    }
    SUBCASE("closed form matches the literal circuit simulation") {
        Rng rng(8);
        for (int rep = 0; rep < 5; ++rep) {
            Circuit c;
            c.in_count = 2;
            c.gates.push_back(Gate::unitary("H", {0}));
            c.gates.push_back(Gate::unitary("CX", {0, 1}));
            c.gates.push_back(Gate::unitary("T", {0}));
            c.gates.push_back(Gate::trace_out(1));
            auto rho = DensityOperator::make(rng.hs_random_density(4), {4});
            auto sig = DensityOperator::make(rng.hs_random_density(4), {4});
            double p = rng.uniform();
            auto closed = qma2_clique_verifier(c, rho, sig, p);
            auto sim = qma2_clique_verifier_simulated(c, rho, sig, p);
            CHECK(std::abs(closed.accept_probability - sim.accept_probability) < 1e-9);
            CHECK(std::abs(closed.input_branch - sim.input_branch) < 1e-9);
            CHECK(std::abs(closed.channel_branch - sim.channel_branch) < 1e-9);
        }
    }
}

TEST_CASE("k-proof independent set verifier") {
    Circuit id;
    id.in_count = 1;

    SUBCASE("perfect independent set accepts with probability 1/2") {
        auto proof = basis_pair(2, 0, 1);
        auto out = qmak_is_verifier(id, proof, 0.7);
        CHECK(out.accept_probability == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("all-equal pure proofs fail the orthogonality branch") {
        std::vector<DensityOperator> proof = {DensityOperator::pure(PureState::basis(0, {2})),
                                              DensityOperator::pure(PureState::basis(0, {2}))};
        auto out = qmak_is_verifier(id, proof, 0.5);
        CHECK(out.input_branch == doctest::Approx(0.0));
    }
    SUBCASE("three random proofs match the literal circuit simulation") {
        Rng rng(9);
        Circuit c;
        c.in_count = 2;
        c.gates.push_back(Gate::unitary("H", {1}));
        c.gates.push_back(Gate::unitary("CZ", {0, 1}));
        c.gates.push_back(Gate::trace_out(0));
        std::vector<DensityOperator> proof;
        for (int i = 0; i < 3; ++i) proof.push_back(DensityOperator::make(rng.hs_random_density(4), {4}));
        double p = 0.6;
        auto closed = qmak_is_verifier(c, proof, p);
        auto sim = qmak_is_verifier_simulated(c, proof, p);
        CHECK(std::abs(closed.accept_probability - sim.accept_probability) < 1e-9);
    }
}

TEST_CASE("certificate validation catches tampering") {
    auto phi = qubit_dephasing();
    OptimizerBudget small{4, 30, 1e-10};
    auto cert = max_clique_value(phi, 2, small, 5);
    CHECK_NOTHROW(cert.validate(phi));
    cert.value += 0.1;
    CHECK_THROWS_AS(cert.validate(phi), ValidationError);
}
