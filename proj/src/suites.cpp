#include "qclique/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

#include "qclique/classical.hpp"
#include "qclique/reductions.hpp"

namespace qclique::suites {

using namespace qclique;
using namespace qclique::reductions;

namespace {

CheckResult bounded(std::string name, double observed, double bound, long samples,
                    std::string detail = "") {
    CheckResult r;
    r.name = std::move(name);
    r.observed = observed;
    r.bound = bound;
    r.samples = samples;
    r.pass = observed <= bound;
    r.detail = std::move(detail);
    return r;
}

CheckResult expect_true(std::string name, bool ok, std::string detail = "") {
    CheckResult r;
    r.name = std::move(name);
    r.pass = ok;
    r.observed = ok ? 1 : 0;
    r.bound = 1;
    r.detail = std::move(detail);
    return r;
}

Mat basis_mat(int i, long d) {
    Mat m = Mat::Zero(d, d);
    m(i, i) = 1.0;
    return m;
}

Circuit random_small_circuit(Rng& rng, int in, int max_width, int max_gates) {
    Circuit c;
    c.in_count = in;
    int width = in;
    int gates = 1 + static_cast<int>(rng.bits(static_cast<std::uint64_t>(max_gates)));
    for (int g = 0; g < gates; ++g) {
        double r = rng.uniform();
        if (r < 0.2 && width < max_width) {
            c.gates.push_back(Gate::prepare(width));
            ++width;
        } else if (r < 0.35 && width > 1) {
            c.gates.push_back(
                Gate::trace_out(static_cast<int>(rng.bits(static_cast<std::uint64_t>(width)))));
            --width;
        } else if (width >= 2 && rng.uniform() < 0.4) {
            int a = static_cast<int>(rng.bits(static_cast<std::uint64_t>(width)));
            int b = static_cast<int>(rng.bits(static_cast<std::uint64_t>(width)));
            while (b == a) b = static_cast<int>(rng.bits(static_cast<std::uint64_t>(width)));
            c.gates.push_back(Gate::unitary(rng.uniform() < 0.5 ? "CX" : "CZ", {a, b}));
        } else {
            const char* names[] = {"H", "T", "X", "S"};
            c.gates.push_back(Gate::unitary(
                names[rng.bits(4)], {static_cast<int>(rng.bits(static_cast<std::uint64_t>(width)))}));
        }
    }
    return c;
}

}  // namespace

std::vector<CheckResult> norm_relations(int samples, std::uint64_t seed) {
    Rng root(seed);
    const std::vector<int> dims = {2, 3, 4, 8, 16};
    const long per_dim = std::max(1, samples / static_cast<int>(dims.size()));
    double worst_eq = 0, worst_ineq = 0;
    long total = 0;
    for (std::size_t di = 0; di < dims.size(); ++di) {
        const int d = dims[di];
#pragma omp parallel for schedule(static) reduction(max : worst_eq, worst_ineq) \
    if (default_exec() == Exec::Parallel)
        for (long s = 0; s < per_dim; ++s) {
            Rng rng = root.child(di * 1000003ull + static_cast<std::uint64_t>(s));
            Vec psi = rng.haar_state(d), phi = rng.haar_state(d);
            Mat x = psi * psi.adjoint() - phi * phi.adjoint();
            double fro = frobenius_norm(x);
            double tr = trace_norm(x);
            worst_eq = std::max(worst_eq, std::abs(fro - std::sqrt(2.0) * tr));
            worst_ineq = std::max(worst_ineq, fro - std::sqrt(2.0) * (psi - phi).norm());
        }
        total += per_dim;
    }
    return {bounded("norms/frobenius-equals-sqrt2-trace", worst_eq, 1e-9, total),
            bounded("norms/frobenius-below-sqrt2-euclidean", worst_ineq, 1e-9, total)};
}

std::vector<CheckResult> swap_test(int samples, std::uint64_t seed) {
    Rng root(seed);
    double worst = 0;
    long total = 0;
    for (int n = 1; n <= 3; ++n) {
        const long per_n = std::max(1, samples / 3);
        Circuit st = swap_test_circuit(n);
#pragma omp parallel for schedule(static) reduction(max : worst) if (default_exec() == Exec::Parallel)
        for (long s = 0; s < per_n; ++s) {
            Rng rng = root.child(static_cast<std::uint64_t>(n) * 7919 + static_cast<std::uint64_t>(s));
            auto r1 = DensityOperator::unchecked(rng.hs_random_density(1 << n), qubit_dims(n));
            auto r2 = DensityOperator::unchecked(rng.hs_random_density(1 << n), qubit_dims(n));
            auto joint = tensor(r1, r2);
            auto out = evaluate(st, DensityOperator::unchecked(joint.matrix, qubit_dims(2 * n)),
                                Exec::Serial);
            double got = wire_outcome_probability(out, 2 * n, 0);
            double expect = 0.5 + 0.5 * overlap_raw(r1.matrix, r2.matrix);
            worst = std::max(worst, std::abs(got - expect));
        }
        total += per_n;
    }
    return {bounded("swap-test/acceptance-matches-overlap", worst, 1e-9, total)};
}

std::vector<CheckResult> direct_sum_semantics(int pairs, std::uint64_t seed) {
    Rng root(seed);
    double worst = 0;
    double worst_ratio = 0;
    const double size_a = 6, size_b = 12;
    bool size_ok = true;
    for (long rep = 0; rep < pairs; ++rep) {
        Rng rng = root.child(static_cast<std::uint64_t>(rep));
        const int in = 1 + static_cast<int>(rng.bits(3));
        Circuit c1 = random_small_circuit(rng, in, 3, 8);
        Circuit c2 = random_small_circuit(rng, in, 3, 8);
        for (double p : {0.0, 0.3, 0.5, 1.0}) {
            Circuit sum = direct_sum(c1, c2, p);
            auto sum_kraus = kraus_from_circuit(sum);
            const int out1 = c1.out_count(), out2 = c2.out_count();
            const int mo = std::max(out1, out2);
            Mat zero = basis_mat(0, 2);
            for (long b = 0; b < (1L << in); ++b) {
                auto rho = DensityOperator::pure(PureState::basis(static_cast<int>(b), qubit_dims(in)));
                Mat got = sum_kraus.apply_matrix(rho.matrix);
                Mat o1 = evaluate(c1, rho, Exec::Serial).matrix;
                Mat o2 = evaluate(c2, rho, Exec::Serial).matrix;
                for (int pad = out1; pad < mo; ++pad) o1 = kernels::kron(o1, zero);
                for (int pad = out2; pad < mo; ++pad) o2 = kernels::kron(o2, zero);
                const long d = 1L << mo;
                Mat expect = Mat::Zero(2 * d, 2 * d);
                expect.topLeftCorner(d, d) = p * o1;
                expect.bottomRightCorner(d, d) = (1 - p) * o2;
                worst = std::max(worst, (got - expect).cwiseAbs().maxCoeff());
            }
            if (sum.size() > size_a * (c1.size() + c2.size()) + size_b) size_ok = false;
            worst_ratio = std::max(
                worst_ratio, static_cast<double>(sum.size()) / (c1.size() + c2.size()));
        }
    }
    return {bounded("direct-sum/block-semantics", worst, 1e-6, pairs * 4),
            expect_true("direct-sum/linear-size", size_ok,
                        "max |sum| / (|C1|+|C2|) = " + std::to_string(worst_ratio))};
}

std::vector<CheckResult> marginal_channel(int samples, std::uint64_t seed) {
    Rng root(seed);
    auto phi = random_marginal_channel(4, 2, 2);
    double worst_random = 0;
#pragma omp parallel for schedule(static) reduction(max : worst_random) \
    if (default_exec() == Exec::Parallel)
    for (long s = 0; s < samples; ++s) {
        Rng rng = root.child(static_cast<std::uint64_t>(s));
        Mat f = rng.haar_frame(32, 2);
        Mat o1 = phi.apply_matrix(f.col(0) * f.col(0).adjoint());
        Mat o2 = phi.apply_matrix(f.col(1) * f.col(1).adjoint());
        worst_random = std::max(worst_random, (o1 * o2).trace().real());
    }

    double worst_planted = 0;
    const long planted_count = 100;
    for (long s = 0; s < planted_count; ++s) {
        Rng rng = root.child(1000000007ull + static_cast<std::uint64_t>(s));
        Vec body = tensor(rng.haar_state(4), rng.haar_state(4));
        Vec t0 = Vec::Zero(2), t1 = Vec::Zero(2);
        t0(0) = 1;
        t1(1) = 1;
        Vec a = tensor(body, t0), b = tensor(body, t1);
        double ov =
            (phi.apply_matrix(a * a.adjoint()) * phi.apply_matrix(b * b.adjoint())).trace().real();
        worst_planted = std::max(worst_planted, std::abs(ov - 0.5));
    }

    const long stab_count = std::max(1, samples / 10);
    double worst_slack = -std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(max : worst_slack) \
    if (default_exec() == Exec::Parallel)
    for (long s = 0; s < stab_count; ++s) {
        Rng rng = root.child(2000000011ull + static_cast<std::uint64_t>(s));
        Vec body = tensor(rng.haar_state(4), rng.haar_state(4));
        Vec t0 = Vec::Zero(2), t1 = Vec::Zero(2);
        t0(0) = 1;
        t1(1) = 1;
        std::vector<int> dims{4, 4, 2};
        Mat g(32, 32);
        for (long r = 0; r < 32; ++r)
            for (long c = 0; c < 32; ++c) g(r, c) = rng.complex_gaussian();
        Mat h = (g + g.adjoint()) / 2.0;
        Mat u = (cplx(0, 1) * (0.06 * rng.uniform()) * h).exp();
        PureState a{u * tensor(body, t0), dims}, b{u * tensor(body, t1), dims};
        auto rep = marginal_stability_check(a, b, 4, 2);
        worst_slack = std::max(worst_slack, rep.trace_distance_sum - rep.bound);
    }

    return {bounded("marginal/orthogonal-pair-bound", worst_random, 0.5 + 1e-9, samples),
            bounded("marginal/planted-pairs-exact", worst_planted, 1e-10, planted_count),
            bounded("marginal/stability-bound-slack", worst_slack, 1e-8, stab_count)};
}

std::vector<CheckResult> verdict_formula(int grid, std::uint64_t seed) {
    (void)seed;
    double worst = 0;
    for (int i = 0; i <= grid; ++i) {
        const double q = static_cast<double>(i) / grid;
        Mat one_qubit = Mat::Zero(2, 2);
        one_qubit(0, 0) = 1 - q;
        one_qubit(1, 1) = q;
        auto psi = verdict_channel(Channel::eb({Mat::Identity(2, 2)}, {one_qubit}));
        Mat out = psi.apply_matrix(Mat::Identity(4, 4) / 4.0);
        worst = std::max(worst, std::abs((out * out).trace().real() -
                                         (0.5 * (1 - q) * (1 - q) + q * q)));
    }
    auto endpoint = [&](double q) {
        Mat one_qubit = Mat::Zero(2, 2);
        one_qubit(0, 0) = 1 - q;
        one_qubit(1, 1) = q;
        auto psi = verdict_channel(Channel::eb({Mat::Identity(2, 2)}, {one_qubit}));
        Mat out = psi.apply_matrix(Mat::Identity(4, 4) / 4.0);
        return (out * out).trace().real();
    };
    double e34 = std::abs(endpoint(0.75) - 19.0 / 32.0);
    double e23 = std::abs(endpoint(2.0 / 3.0) - 0.5);
    return {bounded("verdict/self-overlap-grid", worst, 1e-12, grid + 1),
            bounded("verdict/endpoint-19-32", e34, 1e-14, 1),
            bounded("verdict/endpoint-1-2", e23, 1e-14, 1)};
}

std::vector<CheckResult> stability_weight_suite(int grid, std::uint64_t seed) {
    (void)seed;
    const double c = 20, a = 0.25;
    double worst = -std::numeric_limits<double>::infinity();
    long checks = 0;
    for (double eta : {1e-1, 1e-2, 1e-3}) {
        double p = stability_weight(c, a, eta);
        auto penalty = [&](double eps) {
            return (1 - p) * (1 - p) * c * std::pow(eps, a) - p * p * eps;
        };
        for (int i = 0; i <= grid; ++i) {
            double eps = std::pow(10.0, -8.0 + 8.0 * i / grid);
            worst = std::max(worst, penalty(eps) - eta);
            ++checks;
        }
        double ratio = (1 - p) / p;
        worst = std::max(worst, penalty(std::pow(c * a * ratio * ratio, 1.0 / (1.0 - a))) - eta);
        ++checks;
    }
    return {bounded("stability-weight/penalty-under-slack", worst, 1e-12, checks)};
}

std::vector<CheckResult> hardness_pipeline(int budget_scale, std::uint64_t seed) {
    std::vector<CheckResult> out;
    const int m = 2;
    const double p = 0.5;

    auto yes = qma2_hardness_instance(leading_zeros_verifier(2 * m, m), p);
    OptimizerBudget budget{std::max(1, 64 * budget_scale / 100),
                           std::max(1, 200 * budget_scale / 100), 1e-10};
    auto cert_yes = max_clique_value(yes.channel, 2, budget, seed);
    out.push_back(bounded("pipeline/yes-instance-completeness",
                          yes.promise.completeness - 1e-6 - cert_yes.value, 0.0, budget.restarts,
                          "optimizer value " + std::to_string(cert_yes.value)));

    auto no = qma2_hardness_instance(rejecting_verifier(2 * m), p);
    auto cert_no = max_clique_value(no.channel, 2, budget, seed + 1);
    out.push_back(bounded("pipeline/no-instance-soundness", cert_no.value,
                          no.promise.soundness + 0.01, budget.restarts,
                          "optimizer value " + std::to_string(cert_no.value)));

    // The circuit realization implements the same block channel.
    if (yes.circuit.has_value()) {
        auto circ = kraus_from_circuit(*yes.circuit);
        Mat iota = qma2_block_embedding(m);
        double worst = 0;
        const long d = yes.channel.in_dim();
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j) {
                Mat eij = Mat::Zero(d, d);
                eij(i, j) = 1.0;
                Mat block = iota * yes.channel.apply_matrix(eij) * iota.adjoint();
                worst = std::max(worst, (block - circ.apply_matrix(eij)).cwiseAbs().maxCoeff());
            }
        out.push_back(bounded("pipeline/circuit-matches-block-channel", worst, 1e-6, d * d));
    }
    return out;
}

std::vector<CheckResult> hamiltonian_suite(int samples, std::uint64_t seed) {
    std::vector<CheckResult> out;
    (void)samples;

    // Three-qubit instance with exactly diagonalizable spectrum.
    HamiltonianInstance h;
    h.qubits = 3;
    Mat zz = Mat::Zero(4, 4);
    zz(1, 1) = zz(2, 2) = 1;
    h.terms.push_back({{0, 1}, zz});
    h.terms.push_back({{1, 2}, zz});
    h.terms.push_back({{0}, basis_mat(1, 2)});
    h.alpha = 0.05;
    h.beta = 0.5;
    auto inst = hamiltonian_clique_instance(h);
    auto spec = spectral_decomposition_hermitian(h.total(), qubit_dims(3));
    double worst = 0;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        Vec t0 = Vec::Zero(2), t1 = Vec::Zero(2);
        t0(0) = 1;
        t1(1) = 1;
        Vec a = tensor(spec.eigenvectors[i].amplitudes, t0);
        Vec b = tensor(spec.eigenvectors[i].amplitudes, t1);
        double got = (inst.channel.apply_matrix(a * a.adjoint()) *
                      inst.channel.apply_matrix(b * b.adjoint()))
                         .trace()
                         .real();
        worst = std::max(worst,
                         std::abs(got - hamiltonian_pair_overlap(spec.eigenvalues[i], h.term_count())));
    }
    out.push_back(bounded("hamiltonian/eigenpair-overlap-formula", worst, 1e-10,
                          static_cast<long>(spec.eigenvalues.size())));

    // Threshold consistency against the optimizer on yes and no endpoints.
    HamiltonianInstance yes;
    yes.qubits = 1;
    yes.terms.push_back({{0}, basis_mat(1, 2)});
    yes.alpha = 0.0;
    yes.beta = 1.0;
    auto yes_inst = hamiltonian_clique_instance(yes);
    OptimizerBudget budget{32, 100, 1e-10};
    auto cert = max_clique_value(yes_inst.channel, 2, budget, seed);
    out.push_back(bounded("hamiltonian/yes-threshold",
                          std::abs(cert.value - yes_inst.promise.completeness), 1e-3, budget.restarts));

    HamiltonianInstance no;
    no.qubits = 1;
    no.terms.push_back({{0}, Mat::Identity(2, 2)});
    no.alpha = 0.0;
    no.beta = 1.0;
    auto no_inst = hamiltonian_clique_instance(no);
    auto cert_no = max_clique_value(no_inst.channel, 2, budget, seed + 1);
    out.push_back(bounded("hamiltonian/no-threshold",
                          std::abs(cert_no.value - no_inst.promise.soundness), 1e-3, budget.restarts));
    return out;
}

namespace {

const char* kSatCorpus[] = {
    // satisfiable, 3 variables
    "p cnf 3 2\n1 2 0\n-1 3 0\n",
    // satisfiable, 4 variables
    "p cnf 4 3\n1 -2 0\n2 3 -4 0\n-1 4 0\n",
    // unsatisfiable, 2 variables
    "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n",
    // satisfiable, 6 variables
    "p cnf 6 4\n1 2 3 0\n-1 4 0\n-4 5 6 0\n-2 -5 0\n",
    // unsatisfiable, 3 variables (all sign patterns on 1..3 reduced)
    "p cnf 3 8\n1 2 3 0\n1 2 -3 0\n1 -2 3 0\n1 -2 -3 0\n-1 2 3 0\n-1 2 -3 0\n-1 -2 3 0\n-1 -2 -3 0\n",
};

}  // namespace

std::vector<CheckResult> classical_suite(int unused, std::uint64_t seed) {
    (void)unused;
    (void)seed;
    using namespace qclique::classical;
    std::vector<CheckResult> out;

    bool decisions_ok = true;
    std::string detail;
    for (const char* text : kSatCorpus) {
        auto v = verifier_from_dimacs(text);
        bool sat = exhaustive_sat(v);
        bool clique = has_k_clique(np_reduce_clique(v, 0), 2).found;
        bool indep = has_k_is(np_reduce_is(v, 0), 2).found;
        if (clique != sat || indep != sat) {
            decisions_ok = false;
            detail = "mismatch on corpus instance";
        }
    }
    out.push_back(expect_true("classical/np-reductions-match-sat", decisions_ok, detail));

    // Exact MA rationals via the categorical register.
    auto make_cat_verifier = [&](int accept, int categories) {
        int cw = 0;
        while ((1 << cw) < categories) ++cw;
        CircuitBuilder b(2 + cw);
        std::vector<int> hits;
        for (int t = 0; t < accept; ++t) {
            std::vector<int> bits;
            for (int w = 0; w < cw; ++w) bits.push_back(((t >> w) & 1) ? 2 + w : b.not_(2 + w));
            hits.push_back(b.and_all(bits));
        }
        b.set_outputs({b.or_all(hits)});
        ProbabilisticVerifier v;
        v.circuit.base = b.take();
        v.circuit.categorical = categories;
        return v;
    };
    auto v23 = make_cat_verifier(2, 3);
    auto f = ma_reduce_clique(v23, 0);
    bool ma_ok = collision_prob(f, 2, 2 | (1 << 2)) == Rational(2, 3);
    auto v13 = make_cat_verifier(1, 3);
    auto f13 = ma_reduce_clique(v13, 0);
    ma_ok = ma_ok && collision_prob(f13, 2, 2 | (1 << 2)) == Rational(1, 3);
    auto g = ma_reduce_is(v13, 0);
    bool bound49 = true;
    for (std::uint64_t a = 0; a < 4; ++a)
        for (std::uint64_t b2 = a + 1; b2 < 4; ++b2)
            if (collision_prob(g, a, b2) < Rational(4, 9)) bound49 = false;
    out.push_back(expect_true("classical/ma-rationals-exact", ma_ok));
    out.push_back(expect_true("classical/ma-is-soundness-4-9", bound49));
    return out;
}

std::vector<CheckResult> k_to_2_suite(int unused, std::uint64_t seed) {
    (void)unused;
    using namespace qclique::classical;
    std::vector<CheckResult> out;
    const int k = 3;

    bool det_ok = true;
    for (std::uint64_t code = 0; code < 16; ++code) {
        std::vector<std::uint64_t> table(4);
        for (int v = 0; v < 4; ++v) table[static_cast<std::size_t>(v)] = (code >> v) & 1;
        auto f = circuit_from_table(2, 1, table);
        if (has_k_clique(k_to_2_clique_det(f, k), 2).found != has_k_clique(f, k).found) det_ok = false;
        if (has_k_is(k_to_2_is_det(f, k), 2).found != has_k_is(f, k).found) det_ok = false;
    }
    out.push_back(expect_true("k-to-2/deterministic-equivalences", det_ok, "all 16 functions, k = 3"));

    // Probabilistic value maps, exactly.
    ProbabilisticCircuit coin;
    {
        CircuitBuilder b(3);
        b.set_outputs({2});
        coin.base = b.take();
        coin.random_bits = 1;
    }
    auto gm = k_to_2_clique_prob(coin, k);
    std::uint64_t xs = 0b100100, hi = xs | (1ull << 6);
    bool prob_ok = collision_prob(gm, xs, hi) == Rational(1, 2) * Rational(1, 3);
    auto gi = k_to_2_is_prob(coin, k);
    prob_ok = prob_ok && collision_prob(gi, 0b100100, 0) == Rational(1, 6);
    out.push_back(expect_true("k-to-2/probabilistic-value-maps", prob_ok));

    // Quantum transfer: the planted pair of a (1,k)-clique reaches the map.
    Rng rng(seed);
    Vec pure_out = rng.haar_state(2);
    auto base = Channel::eb({Mat::Identity(3, 3)}, {Mat(pure_out * pure_out.adjoint())});
    auto inst = quantum_k_to_2(base, 2, 0.3, 0.3, 0.4);
    Mat frame = rng.haar_frame(3, 2);
    Vec body = tensor(Vec(frame.col(0)), Vec(frame.col(1)));
    Vec t0 = Vec::Zero(2), t1 = Vec::Zero(2);
    t0(0) = 1;
    t1(1) = 1;
    Vec va = tensor(body, t0), vb = tensor(body, t1);
    double got = (inst.channel.apply_matrix(va * va.adjoint()) *
                  inst.channel.apply_matrix(vb * vb.adjoint()))
                     .trace()
                     .real();
    out.push_back(bounded("k-to-2/quantum-planted-transfer", inst.alpha_map(1.0) - 1e-8 - got, 0.0, 1,
                          "planted value " + std::to_string(got)));

    double worst = 0;
    for (int i = 0; i <= 100; ++i) {
        double x = i / 100.0;
        double f3 = (0.5 + x / 2) * (0.5 + x / 2) + 0.5 * (0.5 - x / 2) * (0.5 - x / 2);
        worst = std::max(worst, (3.0 / 8 + x / 4) - f3);
        worst = std::max(worst, f3 - (3.0 / 8 + 5 * x / 8));
    }
    out.push_back(bounded("k-to-2/pair-test-grid-inequalities", worst, 1e-12, 101));
    return out;
}

std::vector<CheckResult> bell_form_suite(int channels, std::uint64_t seed) {
    Rng root(seed);
    double worst = 0;
    for (long rep = 0; rep < channels; ++rep) {
        Rng rng = root.child(static_cast<std::uint64_t>(rep));
        const long in = rng.uniform() < 0.5 ? 2 : 4;
        const long out_dim = rng.uniform() < 0.5 ? 2 : 4;
        const int elements = 2 + static_cast<int>(rng.bits(3));
        std::vector<Mat> raw;
        Mat total = Mat::Zero(in, in);
        for (int i = 0; i < elements; ++i) {
            Mat g(in, in);
            for (long r = 0; r < in; ++r)
                for (long c = 0; c < in; ++c) g(r, c) = rng.complex_gaussian();
            raw.push_back(g * g.adjoint());
            total += raw.back();
        }
        Eigen::SelfAdjointEigenSolver<Mat> es(total);
        Mat inv_sqrt = es.operatorInverseSqrt();
        std::vector<Mat> povm, states;
        for (auto& p : raw) povm.push_back(inv_sqrt * p * inv_sqrt);
        for (int i = 0; i < elements; ++i) states.push_back(rng.hs_random_density(out_dim));
        auto phi = Channel::eb(povm, states);
        auto bf = bell_measurement_form(phi);
        std::vector<Mat> joint;
        for (const auto& a : phi.kraus_operators())
            for (const auto& b : phi.kraus_operators()) joint.push_back(kernels::kron(a, b));
        Mat target =
            kernels::kraus_adjoint_apply(symmetric_projector(static_cast<int>(out_dim)), joint);
        worst = std::max(worst, frobenius_norm(bf.reconstruction - target));
    }
    return {bounded("bell-form/reconstruction", worst, 1e-8, channels)};
}

std::vector<CheckResult> is_verifier_suite(int frames, std::uint64_t seed) {
    Rng root(seed);
    std::vector<CheckResult> out;

    // Closed forms against circuit-level simulation.
    double worst_sim = 0;
    for (int rep = 0; rep < 6; ++rep) {
        Rng rng = root.child(static_cast<std::uint64_t>(rep));
        Circuit c;
        c.in_count = 2;
        c.gates.push_back(Gate::unitary("H", {0}));
        c.gates.push_back(Gate::unitary(rep % 2 ? "CX" : "CZ", {0, 1}));
        c.gates.push_back(Gate::unitary("T", {1}));
        c.gates.push_back(Gate::trace_out(0));
        std::vector<DensityOperator> proof;
        const int k = 2 + rep % 2;
        for (int i = 0; i < k; ++i) proof.push_back(DensityOperator::unchecked(rng.hs_random_density(4), {4}));
        double p = 0.3 + 0.1 * rep;
        auto closed = qmak_is_verifier(c, proof, p);
        auto sim = qmak_is_verifier_simulated(c, proof, p);
        worst_sim = std::max(worst_sim, std::abs(closed.accept_probability - sim.accept_probability));
    }
    out.push_back(bounded("is-verifier/closed-form-vs-simulation", worst_sim, 1e-9, 6));

    // Honest perfect independent set meets the completeness formula.
    {
        Circuit id;
        id.in_count = 1;
        double c = 1.0, s = 0.4;
        auto pm = qmak_is_promise(c, s);
        std::vector<DensityOperator> proof = {DensityOperator::pure(PureState::basis(0, {2})),
                                              DensityOperator::pure(PureState::basis(1, {2}))};
        auto res = qmak_is_verifier(id, proof, pm.p);
        out.push_back(bounded("is-verifier/completeness-formula",
                              std::abs(res.accept_probability - pm.completeness), 1e-12, 1));
    }

    // Procrustes bound over random nearly-orthonormal frames.
    double worst_pro = -std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(max : worst_pro) \
    if (default_exec() == Exec::Parallel)
    for (long s = 0; s < frames; ++s) {
        Rng rng = root.child(5000000029ull + static_cast<std::uint64_t>(s));
        const int d = 4 + static_cast<int>(rng.bits(5));
        const int k = 2 + static_cast<int>(rng.bits(3));
        Mat psi = rng.haar_frame(d, k);
        for (int j = 0; j < k; ++j) {
            Vec noise = rng.haar_state(d);
            psi.col(j) = (psi.col(j) + rng.uniform() * 0.4 * noise).normalized();
        }
        double gram = 0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j) gram += std::norm(psi.col(i).dot(psi.col(j)));
        auto iso = nearest_isometry(psi);
        double dist = std::pow(frobenius_norm(psi - iso.isometry), 2);
        worst_pro = std::max(worst_pro, dist - gram);
    }
    out.push_back(bounded("is-verifier/procrustes-bound", worst_pro, 1e-10, frames));
    return out;
}

std::vector<std::pair<std::string, Suite>> all_suites() {
    return {
        {"norms", norm_relations},
        {"swap-test", swap_test},
        {"direct-sum", direct_sum_semantics},
        {"marginal", marginal_channel},
        {"verdict", verdict_formula},
        {"stability-weight", stability_weight_suite},
        {"pipeline", hardness_pipeline},
        {"hamiltonian", hamiltonian_suite},
        {"classical", classical_suite},
        {"k-to-2", k_to_2_suite},
        {"bell-form", bell_form_suite},
        {"is-verifier", is_verifier_suite},
    };
}

}  // namespace qclique::suites
