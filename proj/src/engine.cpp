#include "qclique/engine.hpp"

#include <algorithm>
#include <cmath>

namespace qclique {

namespace {

void check_orthogonal(const std::vector<DensityOperator>& states) {
    const double tol = tolerances().orthogonality;
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i + 1; j < states.size(); ++j)
            if (overlap_raw(states[i].matrix, states[j].matrix) > tol)
                throw ValidationError("certificate: input states are not orthogonal");
}

}  // namespace

double tuple_value(const Channel& phi, const std::vector<DensityOperator>& states) {
    const int k = static_cast<int>(states.size());
    if (k < 2) throw ValidationError("tuple_value: need at least two states");
    for (const auto& s : states)
        if (s.dim() != phi.in_dim()) throw DimensionError("tuple_value: state dimension mismatch");
    check_orthogonal(states);
    std::vector<Mat> outs;
    outs.reserve(states.size());
    for (const auto& s : states) outs.push_back(phi.apply_matrix(s.matrix));
    double sum = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) sum += (outs[static_cast<std::size_t>(i)] * outs[static_cast<std::size_t>(j)]).trace().real();
    double v = 2.0 * sum / (k * (k - 1.0));
    return std::clamp(v, 0.0, 1.0);
}

void CliqueCertificate::validate(const Channel& phi) const {
    check_orthogonal(states);
    double recomputed = tuple_value(phi, states);
    if (std::abs(recomputed - value) > tolerances().reconstruction)
        throw ValidationError("certificate: stored value does not match the states");
}

namespace {

struct Ascent {
    std::vector<Vec> frame;  // orthonormal columns
    double value = 0.0;
};

double frame_objective(const Channel& phi, const std::vector<Vec>& frame, std::vector<Mat>& outs) {
    const int k = static_cast<int>(frame.size());
    outs.resize(frame.size());
    for (int i = 0; i < k; ++i) {
        const auto& v = frame[static_cast<std::size_t>(i)];
        outs[static_cast<std::size_t>(i)] = phi.apply_matrix(v * v.adjoint());
    }
    double sum = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            sum += (outs[static_cast<std::size_t>(i)] * outs[static_cast<std::size_t>(j)]).trace().real();
    return 2.0 * sum / (k * (k - 1.0));
}

// One full sweep of alternating optimization; returns the new objective.
double sweep(const Channel& phi, std::vector<Vec>& frame, bool maximize) {
    const int k = static_cast<int>(frame.size());
    const long d = phi.in_dim();
    std::vector<Mat> lifted(frame.size());
    for (int j = 0; j < k; ++j) {
        const auto& v = frame[static_cast<std::size_t>(j)];
        lifted[static_cast<std::size_t>(j)] = phi.adjoint_apply(phi.apply_matrix(v * v.adjoint()));
    }
    for (int i = 0; i < k; ++i) {
        Mat m = Mat::Zero(d, d);
        for (int j = 0; j < k; ++j)
            if (j != i) m += lifted[static_cast<std::size_t>(j)];
        // Orthonormal basis of the orthocomplement of the other states, from
        // the unit eigenvectors of the projector onto it.
        Mat proj = Mat::Identity(d, d);
        for (int j = 0; j < k; ++j)
            if (j != i) {
                const auto& v = frame[static_cast<std::size_t>(j)];
                proj -= v * v.adjoint();
            }
        Eigen::SelfAdjointEigenSolver<Mat> ps(((proj + proj.adjoint()) / 2.0).eval());
        Mat q(d, d - (k - 1));
        long col = 0;
        for (long e = 0; e < d; ++e)
            if (ps.eigenvalues()(e) > 0.5) q.col(col++) = ps.eigenvectors().col(e);
        if (col != d - (k - 1)) continue;  // degenerate frame; keep the state

        Mat restricted = q.adjoint() * ((m + m.adjoint()) / 2.0) * q;
        restricted = ((restricted + restricted.adjoint()) / 2.0).eval();
        Eigen::SelfAdjointEigenSolver<Mat> es(restricted);

        // Extreme eigenvalue with ties broken toward the previous iterate.
        const long last = es.eigenvalues().size() - 1;
        const long want = maximize ? last : 0;
        const double target = es.eigenvalues()(want);
        long pick = want;
        double best_fid = -1;
        for (long e = 0; e <= last; ++e) {
            if (std::abs(es.eigenvalues()(e) - target) > 1e-10) continue;
            Vec cand = q * es.eigenvectors().col(e);
            double fid = std::abs(cand.dot(frame[static_cast<std::size_t>(i)]));
            if (fid > best_fid) {
                best_fid = fid;
                pick = e;
            }
        }
        Vec v = (q * es.eigenvectors().col(pick)).normalized();
        frame[static_cast<std::size_t>(i)] = v;
        lifted[static_cast<std::size_t>(i)] = phi.adjoint_apply(phi.apply_matrix(v * v.adjoint()));
    }
    std::vector<Mat> outs;
    return frame_objective(phi, frame, outs);
}

CliqueCertificate optimize(const Channel& phi, int k, const OptimizerBudget& budget,
                           std::uint64_t seed, bool maximize) {
    if (k < 2) throw ValidationError("optimizer: k must be at least 2");
    if (k > phi.in_dim()) throw DimensionError("optimizer: k exceeds the input dimension");
    const long d = phi.in_dim();
    Rng root(seed);
    std::vector<Ascent> slots(static_cast<std::size_t>(budget.restarts));

    const long r_count = budget.restarts;
#pragma omp parallel for schedule(dynamic) if (default_exec() == Exec::Parallel)
    for (long r = 0; r < r_count; ++r) {
        Rng rng = root.child(static_cast<std::uint64_t>(r));
        Ascent a;
        Mat f = rng.haar_frame(d, k);
        for (int i = 0; i < k; ++i) a.frame.push_back(f.col(i));
        std::vector<Mat> outs;
        a.value = frame_objective(phi, a.frame, outs);
        for (int it = 0; it < budget.iterations; ++it) {
            double next = sweep(phi, a.frame, maximize);
            double gain = maximize ? next - a.value : a.value - next;
            a.value = next;
            if (gain < budget.min_improvement) break;
        }
        slots[static_cast<std::size_t>(r)] = std::move(a);
    }

    std::size_t best = 0;
    for (std::size_t r = 1; r < slots.size(); ++r) {
        if (maximize ? slots[r].value > slots[best].value : slots[r].value < slots[best].value) best = r;
    }

    CliqueCertificate cert;
    cert.kind = maximize ? CliqueCertificate::Kind::Clique : CliqueCertificate::Kind::IndependentSet;
    for (const auto& v : slots[best].frame)
        cert.states.push_back(
            DensityOperator::unchecked(v * v.adjoint(), {static_cast<int>(d)}));
    cert.value = tuple_value(phi, cert.states);
    cert.seed = seed;
    cert.restarts = budget.restarts;
    cert.iterations = budget.iterations;
    return cert;
}

}  // namespace

CliqueCertificate max_clique_value(const Channel& phi, int k, const OptimizerBudget& budget,
                                   std::uint64_t seed) {
    return optimize(phi, k, budget, seed, true);
}

CliqueCertificate min_is_value(const Channel& phi, int k, const OptimizerBudget& budget,
                               std::uint64_t seed) {
    return optimize(phi, k, budget, seed, false);
}

namespace {

double pair_value(const Channel& phi, const Vec& a, const Vec& b) {
    Mat oa = phi.apply_matrix(a * a.adjoint());
    Mat ob = phi.apply_matrix(b * b.adjoint());
    return (oa * ob).trace().real();
}

}  // namespace

BruteForceResult brute_force_value(const Channel& phi, int k, double net_resolution,
                                   std::uint64_t seed) {
    if (k != 2) throw ValidationError("brute_force_value: only pair search is supported");
    const long d = phi.in_dim();
    if (d > 4) throw DimensionError("brute_force_value: input dimension above 4");
    BruteForceResult res;

    if (d == 2) {
        // Exact: orthogonal pure pairs are antipodal Bloch vectors, and the
        // pair value is tr[A^2] - n^T G n with A = Phi(I/2), B_i = Phi(s_i/2).
        Mat paulis[3];
        paulis[0] = gateset::matrix("X");
        paulis[1] = gateset::matrix("Y");
        paulis[2] = gateset::matrix("Z");
        Mat a = phi.apply_matrix(Mat::Identity(2, 2) / 2.0);
        Eigen::Matrix3d g;
        Mat b[3];
        for (int i = 0; i < 3; ++i) b[i] = phi.apply_matrix(paulis[i] / 2.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g(i, j) = (b[i] * b[j]).trace().real();
        g = ((g + g.transpose()) / 2.0).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(g);
        const double base = (a * a).trace().real();
        res.max_value = std::clamp(base - es.eigenvalues().minCoeff(), 0.0, 1.0);
        res.min_value = std::clamp(base - es.eigenvalues().maxCoeff(), 0.0, 1.0);
        res.exact = true;
        return res;
    }

    // Deterministic dense sample of orthonormal pairs plus the basis pairs.
    const long samples =
        std::clamp(static_cast<long>(10.0 / (net_resolution * net_resolution)), 1000L, 200000L);
    res.samples = samples;
    double lo = 2.0, hi = -1.0;
    Rng root(seed);
#pragma omp parallel for schedule(static) reduction(max : hi) reduction(min : lo) \
    if (default_exec() == Exec::Parallel)
    for (long s = 0; s < samples; ++s) {
        Rng rng = root.child(static_cast<std::uint64_t>(s));
        Mat f = rng.haar_frame(d, 2);
        double v = pair_value(phi, f.col(0), f.col(1));
        hi = std::max(hi, v);
        lo = std::min(lo, v);
    }
    for (long i = 0; i < d; ++i)
        for (long j = i + 1; j < d; ++j) {
            Vec a = Vec::Zero(d), b = Vec::Zero(d);
            a(i) = 1;
            b(j) = 1;
            double v = pair_value(phi, a, b);
            hi = std::max(hi, v);
            lo = std::min(lo, v);
        }
    res.max_value = std::clamp(hi, 0.0, 1.0);
    res.min_value = std::clamp(lo, 0.0, 1.0);
    return res;
}

PromiseMap qma2_clique_promise(double c, double s) {
    PromiseMap m;
    m.p = 1.0 - (c - s) / 2.0;
    m.completeness = 0.5 + (c - s) * c / 8.0;
    m.soundness = 0.5 + (c - s) * (c + s) / 16.0;
    return m;
}

PromiseMap qmak_is_promise(double c, double s) {
    PromiseMap m;
    m.p = 2.0 / (2.0 + c - s);
    m.completeness = (1.0 + ((c - s) / 2.0) * c) / (2.0 + c - s);
    m.soundness = (1.0 + ((c - s) / 2.0) * ((c + s) / 2.0)) / (2.0 + c - s);
    return m;
}

VerifierOutcome qma2_clique_verifier(const Circuit& c, const DensityOperator& rho,
                                     const DensityOperator& sigma, double p) {
    if (rho.dim() != (1L << c.in_count) || sigma.dim() != rho.dim())
        throw DimensionError("clique verifier: proof dimension mismatch");
    auto phi = Channel::circuit(c);
    VerifierOutcome out;
    out.p = p;
    out.input_branch = 0.5 - 0.5 * overlap_raw(rho.matrix, sigma.matrix);
    out.channel_branch =
        0.5 + 0.5 * (phi.apply_matrix(rho.matrix) * phi.apply_matrix(sigma.matrix)).trace().real();
    out.accept_probability = p * out.input_branch + (1 - p) * out.channel_branch;
    return out;
}

VerifierOutcome qmak_is_verifier(const Circuit& c, const std::vector<DensityOperator>& proof,
                                 double p) {
    const int k = static_cast<int>(proof.size());
    if (k < 2) throw ValidationError("is verifier: need at least two proofs");
    for (const auto& r : proof)
        if (r.dim() != (1L << c.in_count)) throw DimensionError("is verifier: proof dimension mismatch");
    auto phi = Channel::circuit(c);
    std::vector<Mat> outs;
    for (const auto& r : proof) outs.push_back(phi.apply_matrix(r.matrix));
    double in_sum = 0, out_sum = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            in_sum += 0.5 - 0.5 * overlap_raw(proof[static_cast<std::size_t>(i)].matrix,
                                              proof[static_cast<std::size_t>(j)].matrix);
            out_sum += 0.5 - 0.5 * (outs[static_cast<std::size_t>(i)] * outs[static_cast<std::size_t>(j)])
                                       .trace()
                                       .real();
        }
    const double pairs = k * (k - 1) / 2.0;
    VerifierOutcome out;
    out.p = p;
    out.input_branch = in_sum / pairs;
    out.channel_branch = out_sum / pairs;
    out.accept_probability = p * out.input_branch + (1 - p) * out.channel_branch;
    return out;
}

namespace {

// Swap-test acceptance via the literal circuit.
double swap_test_accept(const DensityOperator& a, const DensityOperator& b) {
    const int n = static_cast<int>(a.register_dims.size());
    auto joint = tensor(a, b);
    auto out = evaluate(swap_test_circuit(n),
                        DensityOperator::unchecked(joint.matrix, qubit_dims(2 * n)));
    return wire_outcome_probability(out, 2 * n, 0);
}

DensityOperator as_qubits(const DensityOperator& rho) {
    int n = 0;
    while ((1L << n) < rho.dim()) ++n;
    return DensityOperator::unchecked(rho.matrix, qubit_dims(n));
}

}  // namespace

VerifierOutcome qma2_clique_verifier_simulated(const Circuit& c, const DensityOperator& rho,
                                               const DensityOperator& sigma, double p) {
    VerifierOutcome out;
    out.p = p;
    out.input_branch = 1.0 - swap_test_accept(as_qubits(rho), as_qubits(sigma));
    Circuit post = sequential_compose(tensor_compose(c, c), swap_test_circuit(c.out_count()));
    auto joint = tensor(as_qubits(rho), as_qubits(sigma));
    auto res = evaluate(post, DensityOperator::unchecked(joint.matrix, qubit_dims(2 * c.in_count)));
    out.channel_branch = wire_outcome_probability(res, 2 * c.out_count(), 0);
    out.accept_probability = p * out.input_branch + (1 - p) * out.channel_branch;
    return out;
}

VerifierOutcome qmak_is_verifier_simulated(const Circuit& c,
                                           const std::vector<DensityOperator>& proof, double p) {
    const int k = static_cast<int>(proof.size());
    Circuit post = sequential_compose(tensor_compose(c, c), swap_test_circuit(c.out_count()));
    double in_sum = 0, out_sum = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            auto a = as_qubits(proof[static_cast<std::size_t>(i)]);
            auto b = as_qubits(proof[static_cast<std::size_t>(j)]);
            in_sum += 1.0 - swap_test_accept(a, b);
            auto joint = tensor(a, b);
            auto res =
                evaluate(post, DensityOperator::unchecked(joint.matrix, qubit_dims(2 * c.in_count)));
            out_sum += 1.0 - wire_outcome_probability(res, 2 * c.out_count(), 0);
        }
    const double pairs = k * (k - 1) / 2.0;
    VerifierOutcome out;
    out.p = p;
    out.input_branch = in_sum / pairs;
    out.channel_branch = out_sum / pairs;
    out.accept_probability = p * out.input_branch + (1 - p) * out.channel_branch;
    return out;
}

}  // namespace qclique
