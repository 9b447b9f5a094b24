#include "qclique/reductions.hpp"

#include <algorithm>
#include <cmath>

namespace qclique::reductions {

using qclique::cplx;
using qclique::Vec;

void PromisePair::validate() const {
    // completeness may reach 1 exactly (zero-energy Hamiltonian instances).
    if (!(0.0 < soundness && soundness < completeness && completeness <= 1.0))
        throw ValidationError("promise pair: need 0 < s < c <= 1");
}

namespace {

// Mixed-radix decomposition of a register index, register 0 most significant.
std::vector<int> decompose(long z, const std::vector<int>& dims) {
    std::vector<int> digits(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        digits[i] = static_cast<int>(z % dims[i]);
        z /= dims[i];
    }
    return digits;
}

long compose(const std::vector<int>& digits, const std::vector<int>& dims) {
    long z = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) z = z * dims[i] + digits[i];
    return z;
}

// The three-dimensional verdict block: a qubit plus one extra direction.
Mat mixed_qubit_block() {
    Mat m = Mat::Zero(3, 3);
    m(0, 0) = m(1, 1) = 0.5;
    return m;
}

Mat perp_block() {
    Mat m = Mat::Zero(3, 3);
    m(2, 2) = 1.0;
    return m;
}

Mat basis_mat(int i, long d) {
    Mat m = Mat::Zero(d, d);
    m(i, i) = 1.0;
    return m;
}

// Lift an operator acting on registers (i, j) of k h-dimensional registers
// followed by a tail register.
Mat lift_pair_operator(const Mat& op, int i, int j, int h, int k, int tail) {
    std::vector<int> dims(static_cast<std::size_t>(k), h);
    dims.push_back(tail);
    long total = 1;
    for (int d : dims) total *= d;
    Mat out = Mat::Zero(total, total);
    for (long z = 0; z < total; ++z) {
        auto zd = decompose(z, dims);
        for (long w = 0; w < total; ++w) {
            auto wd = decompose(w, dims);
            bool match = true;
            for (std::size_t r = 0; r < dims.size(); ++r)
                if (static_cast<int>(r) != i && static_cast<int>(r) != j && zd[r] != wd[r]) {
                    match = false;
                    break;
                }
            if (!match) continue;
            out(z, w) = op(zd[static_cast<std::size_t>(i)] * h + zd[static_cast<std::size_t>(j)],
                           wd[static_cast<std::size_t>(i)] * h + wd[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

std::vector<std::pair<int, int>> register_pairs(int k) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
    return pairs;
}

}  // namespace

Channel random_marginal_channel(int h_dim, int k, int tail_dim) {
    if (h_dim < 2 || k < 1 || tail_dim < 1)
        throw ValidationError("random_marginal_channel: bad dimensions");
    std::vector<int> dims(static_cast<std::size_t>(k), h_dim);
    dims.push_back(tail_dim);
    long in_dim = 1;
    for (int d : dims) in_dim *= d;
    const long out_dim = static_cast<long>(h_dim) * k;
    long env = in_dim / h_dim;  // complement of one register

    // One Kraus operator per (register, complement basis vector).
    std::vector<Mat> ops(static_cast<std::size_t>(k) * static_cast<std::size_t>(env),
                         Mat::Zero(out_dim, in_dim));
    const double amp = 1.0 / std::sqrt(static_cast<double>(k));
    for (long z = 0; z < in_dim; ++z) {
        auto zd = decompose(z, dims);
        for (int i = 0; i < k; ++i) {
            std::vector<int> rest;
            std::vector<int> rest_dims;
            for (int r = 0; r <= k; ++r)
                if (r != i) {
                    rest.push_back(zd[static_cast<std::size_t>(r)]);
                    rest_dims.push_back(dims[static_cast<std::size_t>(r)]);
                }
            const long e = compose(rest, rest_dims);
            const long row = static_cast<long>(zd[static_cast<std::size_t>(i)]) * k + i;
            ops[static_cast<std::size_t>(i) * static_cast<std::size_t>(env) + static_cast<std::size_t>(e)](
                row, z) = amp;
        }
    }
    return Channel::kraus(std::move(ops));
}

namespace {

// Contract the leading h-dimensional register of v against a bra vector.
Vec contract_leading(const Vec& v, const Vec& bra) {
    const long h = bra.size();
    const long rest = v.size() / h;
    Vec out = Vec::Zero(rest);
    for (long x = 0; x < h; ++x)
        out += std::conj(bra(x)) * v.segment(x * rest, rest);
    return out;
}

}  // namespace

MarginalStabilityReport marginal_stability_check(const PureState& psi, const PureState& phi,
                                                 int h_dim, int k) {
    const long dim = psi.dim();
    if (phi.dim() != dim) throw DimensionError("stability check: dimension mismatch");
    long body = 1;
    for (int i = 0; i < k; ++i) body *= h_dim;
    if (dim % body != 0) throw DimensionError("stability check: registers do not divide the space");
    const int tail = static_cast<int>(dim / body);
    if (tail < 2) throw ValidationError("stability check: tail register must hold orthogonal states");

    std::vector<int> dims(static_cast<std::size_t>(k), h_dim);
    dims.push_back(tail);
    auto rho = DensityOperator::unchecked(psi.projector(), dims);
    auto sig = DensityOperator::unchecked(phi.projector(), dims);

    MarginalStabilityReport rep;
    auto channel = random_marginal_channel(h_dim, k, tail);
    const double ov = (channel.apply_matrix(rho.matrix) * channel.apply_matrix(sig.matrix)).trace().real();
    rep.epsilon = std::max(0.0, 1.0 / k - ov);

    // Top eigenvectors of the marginals and the tails they leave behind.
    std::vector<Vec> psi_body, phi_body;
    double eps_sum = 0;
    for (int i = 0; i < k; ++i) {
        auto mr = partial_trace(rho, {i});
        auto ms = partial_trace(sig, {i});
        eps_sum += std::max(0.0, 1.0 - overlap_raw(mr.matrix, ms.matrix));
        psi_body.push_back(spectral_decomposition_hermitian(mr.matrix, {h_dim}).eigenvectors[0].amplitudes);
        phi_body.push_back(spectral_decomposition_hermitian(ms.matrix, {h_dim}).eigenvectors[0].amplitudes);
    }
    rep.marginal_epsilon = eps_sum / k;

    auto residual_tail = [&](const Vec& state, const std::vector<Vec>& bras) {
        Vec v = state;
        for (const auto& b : bras) v = contract_leading(v, b);
        double n = v.norm();
        if (n < 1e-12) {
            Vec fallback = Vec::Zero(tail);
            fallback(0) = 1;
            return fallback;
        }
        return Vec(v / n);
    };
    Vec alpha = residual_tail(psi.amplitudes, psi_body);
    Vec phi_tail = residual_tail(phi.amplitudes, phi_body);

    auto product_state = [&](const std::vector<Vec>& parts, const Vec& t) {
        Vec v = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i) v = tensor(v, parts[i]);
        return tensor(v, t);
    };
    Vec rho_sep = product_state(psi_body, alpha);
    Vec sig_sep = product_state(phi_body, phi_tail);
    rep.rho_frobenius = frobenius_norm(psi.projector() - rho_sep * rho_sep.adjoint());
    rep.sigma_frobenius = frobenius_norm(phi.projector() - sig_sep * sig_sep.adjoint());

    // Distance between the register bodies of the two separable states.
    auto body_projector = [&](const std::vector<Vec>& parts) {
        Vec v = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i) v = tensor(v, parts[i]);
        return Mat(v * v.adjoint());
    };
    rep.body_frobenius = frobenius_norm(body_projector(psi_body) - body_projector(phi_body));

    // Orthogonalize the second tail against the first and share the body.
    Vec beta = phi_tail - alpha.dot(phi_tail) * alpha;
    if (beta.norm() < 1e-8) {
        Eigen::VectorXd mags = alpha.cwiseAbs();
        long idx = 0;
        mags.minCoeff(&idx);
        beta = Vec::Zero(tail);
        beta(idx) = 1;
        beta -= alpha.dot(beta) * alpha;
    }
    beta.normalize();
    Vec rho_tilde = product_state(psi_body, alpha);
    Vec sig_tilde = product_state(psi_body, beta);
    rep.rho_approx = DensityOperator::unchecked(rho_tilde * rho_tilde.adjoint(), dims);
    rep.sigma_approx = DensityOperator::unchecked(sig_tilde * sig_tilde.adjoint(), dims);
    rep.trace_distance_sum = trace_norm(psi.projector() - rep.rho_approx.matrix) +
                             trace_norm(phi.projector() - rep.sigma_approx.matrix);
    rep.bound = 10.0 * k * std::pow(rep.epsilon, 0.25);
    return rep;
}

Channel verdict_channel(const Channel& one_qubit_out) {
    if (one_qubit_out.out_dim() != 2)
        throw DimensionError("verdict_channel: inner channel must output one qubit");
    const long h = one_qubit_out.in_dim();
    Mat reject = one_qubit_out.adjoint_apply(basis_mat(0, 2));
    Mat accept = one_qubit_out.adjoint_apply(basis_mat(1, 2));
    std::vector<Mat> povm = {kernels::kron(reject, Mat::Identity(2, 2)),
                             kernels::kron(accept, Mat::Identity(2, 2))};
    std::vector<Mat> states = {mixed_qubit_block(), perp_block()};
    (void)h;
    return Channel::eb(std::move(povm), std::move(states));
}

double stability_weight(double c_const, double alpha_exp, double eta) {
    if (!(alpha_exp > 0.0 && alpha_exp < 1.0))
        throw ValidationError("stability_weight: exponent must lie in (0,1)");
    if (c_const <= 0 || eta <= 0) throw ValidationError("stability_weight: constants must be positive");
    const double a = alpha_exp;
    const double denom = std::pow(c_const, 1.0 / (1.0 - a)) *
                         (std::pow(a, a / (1.0 - a)) - std::pow(a, 1.0 / (1.0 - a)));
    const double ratio = std::pow(eta / denom, (1.0 - a) / 2.0);
    return 1.0 / (1.0 + ratio);
}

namespace {

// Verdict machinery as a circuit: input (A, q) where q is dropped; output
// (A, B) with B maximally mixed when A = 0 and |0> when A = 1.
Circuit verdict_tail_circuit() {
    Circuit c;
    c.in_count = 2;
    c.gates.push_back(Gate::trace_out(1));     // drop the unused qubit
    c.gates.push_back(Gate::prepare(1));       // B
    c.gates.push_back(Gate::prepare(2));       // dephasing partner for B
    // Controlled-on-zero Hadamard: A = 0 turns B into |+>.
    Mat c0h = Mat::Identity(4, 4);
    c0h.topLeftCorner(2, 2) = gateset::matrix("H");
    c.gates.push_back(Gate::raw_unitary(c0h, {0, 1}));
    c.gates.push_back(Gate::unitary("CX", {1, 2}));
    c.gates.push_back(Gate::trace_out(2));
    c.validate();
    return c;
}

Circuit identity_circuit(int qubits) {
    Circuit c;
    c.in_count = qubits;
    return c;
}

// Random-marginal channel (k = 2, one tail qubit) as a circuit: prepare a
// uniformly random index qubit, conditionally swap the two proof registers,
// dephase the index, and trace the second register and the tail. Output
// order (H, index) matches the channel's H (x) C^[2].
Circuit random_marginal_circuit(int m) {
    Circuit c;
    c.in_count = 2 * m + 1;
    const int flag = 2 * m + 1, deph = 2 * m + 2;
    c.gates.push_back(Gate::prepare(flag));
    c.gates.push_back(Gate::prepare(deph));
    Gate up = prepare_superposition_gate(0.5);
    up.wires = {flag};
    c.gates.push_back(up);
    for (int i = 0; i < m; ++i) c.gates.push_back(Gate::unitary("CSWAP", {flag, i, m + i}));
    c.gates.push_back(Gate::unitary("CX", {flag, deph}));
    c.gates.push_back(Gate::trace_out(deph));
    // Trace the second register and the tail qubit (descending indices).
    c.gates.push_back(Gate::trace_out(2 * m));
    for (int i = 2 * m - 1; i >= m; --i) c.gates.push_back(Gate::trace_out(i));
    c.validate();
    return c;
}

}  // namespace

HardnessInstance qma2_hardness_instance(const Circuit& verifier, double p) {
    verifier.validate();
    if (verifier.out_count() != 1)
        throw ValidationError("hardness instance: verifier must output one qubit");
    if (verifier.in_count % 2 != 0)
        throw ValidationError("hardness instance: verifier must read two equal proof registers");
    const int m = verifier.in_count / 2;

    auto phi_x = kraus_from_circuit(verifier);
    auto marginal = random_marginal_channel(1 << m, 2, 2);
    auto verdict = verdict_channel(phi_x);
    HardnessInstance inst;
    inst.witness_qubits = m;
    inst.channel = Channel::block_sum({marginal, verdict}, {p, 1 - p});

    const double eta = (1 - p) * (1 - p) * 3.0 / 64.0;
    inst.promise.completeness = p * p / 2.0 + (1 - p) * (1 - p) * 19.0 / 32.0;
    inst.promise.soundness = p * p / 2.0 + (1 - p) * (1 - p) / 2.0 + eta;
    inst.promise.p = p;
    inst.promise.eta = eta;
    if (p < 1.0) inst.promise.validate();  // p = 1 is the degenerate pure-marginal instance

    Circuit verdict_circ = sequential_compose(tensor_compose(verifier, identity_circuit(1)),
                                              verdict_tail_circuit());
    inst.circuit = direct_sum(random_marginal_circuit(m), verdict_circ, p);
    return inst;
}

HardnessInstance qmak_hardness_instance(const Circuit& verifier, int k, double p) {
    verifier.validate();
    if (verifier.out_count() != 1)
        throw ValidationError("hardness instance: verifier must output one qubit");
    if (k < 2 || verifier.in_count % k != 0)
        throw ValidationError("hardness instance: verifier must read k equal proof registers");
    const int m = verifier.in_count / k;

    auto phi_x = kraus_from_circuit(verifier);
    HardnessInstance inst;
    inst.witness_qubits = m;
    inst.channel =
        Channel::block_sum({random_marginal_channel(1 << m, k, 2), verdict_channel(phi_x)}, {p, 1 - p});
    const double eta = (1 - p) * (1 - p) * 3.0 / 64.0;
    inst.promise.completeness = p * p / k + (1 - p) * (1 - p) * 19.0 / 32.0;
    inst.promise.soundness = p * p / k + (1 - p) * (1 - p) / 2.0 + eta;
    inst.promise.p = p;
    inst.promise.eta = eta;
    if (p < 1.0) inst.promise.validate();
    return inst;
}

Mat qma2_block_embedding(int m) {
    const int max_out = std::max(m + 1, 2);
    const long block_dim = (1L << (m + 1)) + 3;
    const long circ_dim = 1L << (1 + max_out);
    Mat iota = Mat::Zero(circ_dim, block_dim);
    for (long j = 0; j < (1L << (m + 1)); ++j) iota(j, j) = 1.0;
    const long pad = 1L << (max_out - 2);
    for (long l = 0; l < 3; ++l) iota((1L << max_out) + l * pad, (1L << (m + 1)) + l) = 1.0;
    return iota;
}

Channel pair_symmetry_channel(int h_dim, int k, int tail_dim) {
    if (k < 2) throw ValidationError("pair_symmetry_channel: need at least two registers");
    auto pairs = register_pairs(k);
    const long pair_count = static_cast<long>(pairs.size());
    const Mat pi = symmetric_projector(h_dim);
    std::vector<Mat> povm, states;
    long total = tail_dim;
    for (int i = 0; i < k; ++i) total *= h_dim;
    for (long t = 0; t < pair_count; ++t) {
        Mat lifted = lift_pair_operator(pi, pairs[static_cast<std::size_t>(t)].first,
                                        pairs[static_cast<std::size_t>(t)].second, h_dim, k, tail_dim);
        povm.push_back(lifted / static_cast<double>(pair_count));
        povm.push_back((Mat::Identity(total, total) - lifted) / static_cast<double>(pair_count));
        states.push_back(kernels::kron(mixed_qubit_block(), basis_mat(static_cast<int>(t), pair_count)));
        states.push_back(kernels::kron(perp_block(), basis_mat(static_cast<int>(t), pair_count)));
    }
    return Channel::eb(std::move(povm), std::move(states));
}

SymmetryStabilityReport pair_symmetry_stability_check(const std::vector<PureState>& body,
                                                      const PureState& tail_a,
                                                      const PureState& tail_b) {
    const int k = static_cast<int>(body.size());
    if (k < 2) throw ValidationError("symmetry stability: need at least two body states");
    const long h = body[0].dim();
    if (std::abs(tail_a.amplitudes.dot(tail_b.amplitudes)) > tolerances().orthogonality)
        throw ValidationError("symmetry stability: tails must be orthogonal");

    SymmetryStabilityReport rep;
    Mat frame(h, k);
    for (int i = 0; i < k; ++i) frame.col(i) = body[static_cast<std::size_t>(i)].amplitudes;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j) rep.gram_mass += std::norm(frame.col(i).dot(frame.col(j)));

    // Epsilon that makes the Gram bound of the argument tight.
    rep.epsilon = rep.gram_mass / (4.0 * k * k * (k - 1.0) * (k - 1.0));
    rep.bound = 4.0 * k * std::sqrt(static_cast<double>(k)) * (k - 1.0) * std::sqrt(rep.epsilon);

    auto iso = nearest_isometry(frame);
    // The Procrustes distance is controlled by the off-diagonal Gram mass.
    if (std::pow(frobenius_norm(frame - iso.isometry), 2) > rep.gram_mass + 1e-9)
        throw ValidationError("symmetry stability: Procrustes bound violated");

    auto product = [&](const Mat& columns, const Vec& t) {
        Vec v = columns.col(0);
        for (int i = 1; i < k; ++i) v = tensor(v, Vec(columns.col(i)));
        return Vec(tensor(v, t));
    };
    Vec rho_vec = product(frame, tail_a.amplitudes);
    Vec sig_vec = product(frame, tail_b.amplitudes);
    Vec rho_t = product(iso.isometry, tail_a.amplitudes);
    Vec sig_t = product(iso.isometry, tail_b.amplitudes);
    rep.trace_distance_sum = trace_norm(rho_vec * rho_vec.adjoint() - rho_t * rho_t.adjoint()) +
                             trace_norm(sig_vec * sig_vec.adjoint() - sig_t * sig_t.adjoint());
    for (int i = 0; i < k; ++i)
        rep.orthonormal_body.push_back(
            PureState{iso.isometry.col(i), body[static_cast<std::size_t>(i)].register_dims});
    return rep;
}

Channel output_symmetry_channel(const Channel& phi, int k, int tail_dim) {
    if (k < 2) throw ValidationError("output_symmetry_channel: need at least two registers");
    const int h = static_cast<int>(phi.in_dim());
    auto pairs = register_pairs(k);
    const long pair_count = static_cast<long>(pairs.size());

    // (phi^dag (x) phi^dag)(Pi_sym) via the joint Kraus form.
    std::vector<Mat> joint;
    for (const auto& a : phi.kraus_operators())
        for (const auto& b : phi.kraus_operators()) joint.push_back(kernels::kron(a, b));
    const Mat tested = kernels::kraus_adjoint_apply(symmetric_projector(static_cast<int>(phi.out_dim())),
                                                    joint);
    long total = tail_dim;
    for (int i = 0; i < k; ++i) total *= h;
    std::vector<Mat> povm, states;
    for (long t = 0; t < pair_count; ++t) {
        Mat lifted = lift_pair_operator(tested, pairs[static_cast<std::size_t>(t)].first,
                                        pairs[static_cast<std::size_t>(t)].second, h, k, tail_dim);
        povm.push_back(lifted / static_cast<double>(pair_count));
        povm.push_back((Mat::Identity(total, total) - lifted) / static_cast<double>(pair_count));
        states.push_back(kernels::kron(perp_block(), basis_mat(static_cast<int>(t), pair_count)));
        states.push_back(kernels::kron(mixed_qubit_block(), basis_mat(static_cast<int>(t), pair_count)));
    }
    return Channel::eb(std::move(povm), std::move(states));
}

double KToTwoInstance::alpha_map(double alpha) const {
    return p1 * p1 / k + (p2 * p2 + p3 * p3 * (1.5 + alpha)) / (2.0 * k * (k - 1.0));
}

double KToTwoInstance::beta_map(double beta) const {
    return p1 * p1 / k + (p2 * p2 + p3 * p3 * (1.5 + 2.5 * beta)) / (2.0 * k * (k - 1.0));
}

KToTwoInstance quantum_k_to_2(const Channel& phi, int k, double p1, double p2, double p3) {
    if (std::abs(p1 + p2 + p3 - 1.0) > tolerances().validation)
        throw ValidationError("quantum_k_to_2: weights must sum to one");
    const int h = static_cast<int>(phi.in_dim());
    KToTwoInstance inst;
    inst.k = k;
    inst.p1 = p1;
    inst.p2 = p2;
    inst.p3 = p3;
    inst.channel = Channel::block_sum({random_marginal_channel(h, k, 2), pair_symmetry_channel(h, k, 2),
                                       output_symmetry_channel(phi, k, 2)},
                                      {p1, p2, p3});
    return inst;
}

void HamiltonianInstance::validate() const {
    if (qubits < 1 || qubits > 10) throw ValidationError("hamiltonian: qubit count out of range");
    if (terms.empty()) throw ValidationError("hamiltonian: no terms");
    const double tol = tolerances().validation;
    for (const auto& t : terms) {
        if (t.support.empty() || !std::is_sorted(t.support.begin(), t.support.end()))
            throw ValidationError("hamiltonian: term support must be ascending");
        for (int q : t.support)
            if (q < 0 || q >= qubits) throw ValidationError("hamiltonian: support out of range");
        const long d = 1L << t.support.size();
        if (t.matrix.rows() != d || t.matrix.cols() != d)
            throw ValidationError("hamiltonian: term size does not match its support");
        if ((t.matrix - t.matrix.adjoint()).cwiseAbs().maxCoeff() > tol)
            throw ValidationError("hamiltonian: term not hermitian");
        Eigen::SelfAdjointEigenSolver<Mat> es(t.matrix, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol || es.eigenvalues().maxCoeff() > 1 + tol)
            throw ValidationError("hamiltonian: term not between 0 and identity");
    }
    if (!(beta > 4 * alpha)) throw ValidationError("hamiltonian: requires beta > 4 alpha");
    if (alpha < 0) throw ValidationError("hamiltonian: negative threshold");
}

namespace {

Mat lift_term(const HamiltonianTerm& t, int qubits) {
    const long total = 1L << qubits;
    const int w = static_cast<int>(t.support.size());
    Mat out = Mat::Zero(total, total);
    auto sub_index = [&](long z) {
        long idx = 0;
        for (int j = 0; j < w; ++j)
            idx = (idx << 1) | ((z >> (qubits - 1 - t.support[static_cast<std::size_t>(j)])) & 1L);
        return idx;
    };
    for (long z = 0; z < total; ++z)
        for (long y = 0; y < total; ++y) {
            bool match = true;
            for (int q = 0; q < qubits && match; ++q) {
                bool in_support = std::binary_search(t.support.begin(), t.support.end(), q);
                if (!in_support && (((z >> (qubits - 1 - q)) ^ (y >> (qubits - 1 - q))) & 1L))
                    match = false;
            }
            if (match) out(z, y) = t.matrix(sub_index(z), sub_index(y));
        }
    return out;
}

}  // namespace

Mat HamiltonianInstance::total() const {
    const long d = 1L << qubits;
    Mat h = Mat::Zero(d, d);
    for (const auto& t : terms) h += lift_term(t, qubits);
    return h;
}

double HamiltonianInstance::ground_energy() const {
    Eigen::SelfAdjointEigenSolver<Mat> es(total(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double hamiltonian_pair_overlap(double energy, int term_count) {
    const double q = energy / term_count;
    return 0.5 * q * q + (1 - q) * (1 - q);
}

HardnessInstance hamiltonian_clique_instance(const HamiltonianInstance& h) {
    h.validate();
    const double t = h.term_count();
    Mat scaled = h.total() / t;
    std::vector<Mat> povm = {kernels::kron(scaled, Mat::Identity(2, 2)),
                             kernels::kron(Mat::Identity(scaled.rows(), scaled.cols()) - scaled,
                                           Mat::Identity(2, 2))};
    std::vector<Mat> states = {mixed_qubit_block(), perp_block()};
    HardnessInstance inst;
    inst.witness_qubits = h.qubits;
    inst.channel = Channel::eb(std::move(povm), std::move(states));
    inst.promise.completeness = 1.0 - 2.0 * h.alpha / t;
    inst.promise.soundness = 1.0 - h.beta / (2.0 * t);
    inst.promise.validate();
    return inst;
}

Channel unitary_verifier_channel(const Mat& v, int m, int workspace_qubits) {
    const int total_q = 2 * m + workspace_qubits;
    const long total = 1L << total_q;
    if (v.rows() != total || v.cols() != total)
        throw DimensionError("unitary_verifier_channel: verifier size mismatch");
    if ((v.adjoint() * v - Mat::Identity(total, total)).cwiseAbs().maxCoeff() > 1e-10)
        throw ValidationError("unitary_verifier_channel: verifier is not unitary");

    const long g_dim = total / 2;           // 2m + k - 1 qubits
    const long hh_dim = 1L << (2 * m);      // both proof registers
    const long w_dim = 1L << workspace_qubits;
    const long h_dim = 1L << m;

    // Isometry |1> (x) Id_G followed by V^dag.
    Mat embed = Mat::Zero(total, g_dim);
    embed.block(g_dim, 0, g_dim, g_dim) = Mat::Identity(g_dim, g_dim);
    const Mat w_iso = v.adjoint() * embed;

    auto apply_step = [&](const Mat& rho_in) {
        // 1. trace the last input qubit
        Mat rho_g = kernels::partial_trace(rho_in, {static_cast<int>(g_dim), 2}, {0});
        // 2. conjugate by the isometry
        Mat tau = w_iso * rho_g * w_iso.adjoint();
        // 3. workspace measurement: keep on |0^k>, mix otherwise (linear in
        // tau, so it extends to the operator basis used for the Choi matrix)
        Mat kept = Mat::Zero(hh_dim, hh_dim);
        for (long a = 0; a < hh_dim; ++a)
            for (long b = 0; b < hh_dim; ++b) kept(a, b) = tau(a * w_dim, b * w_dim);
        const cplx fail = tau.trace() - kept.trace();
        Mat mixed = kept + fail / static_cast<double>(hh_dim) * Mat::Identity(hh_dim, hh_dim);
        // 4. trace the first proof register
        return kernels::partial_trace(mixed, {static_cast<int>(h_dim), static_cast<int>(h_dim)}, {1});
    };

    const long in_dim = total;
    Mat choi = Mat::Zero(in_dim * h_dim, in_dim * h_dim);
    for (long i = 0; i < in_dim; ++i)
        for (long j = 0; j < in_dim; ++j) {
            Mat eij = Mat::Zero(in_dim, in_dim);
            eij(i, j) = 1.0;
            choi.block(i * h_dim, j * h_dim, h_dim, h_dim) = apply_step(eij);
        }
    return Channel::kraus(choi_to_kraus(choi, in_dim, h_dim));
}

Circuit all_zeros_verifier(int qubits) { return leading_zeros_verifier(qubits, qubits); }

Circuit leading_zeros_verifier(int qubits, int checked) {
    if (qubits < 1 || checked < 1 || checked > qubits)
        throw ValidationError("verifier: bad qubit counts");
    Circuit c;
    c.in_count = qubits;
    for (int i = 0; i < checked; ++i) c.gates.push_back(Gate::unitary("X", {i}));
    if (checked == 1) {
        for (int wire = qubits - 1; wire >= 1; --wire) c.gates.push_back(Gate::trace_out(wire));
        c.validate();
        return c;
    }
    // AND cascade into fresh ancillas; the last one is the verdict.
    int acc = 0;
    int width = qubits;
    for (int i = 1; i < checked; ++i) {
        c.gates.push_back(Gate::prepare(width));
        c.gates.push_back(Gate::unitary("CCX", {acc, i, width}));
        acc = width;
        ++width;
    }
    // Trace everything except the verdict wire (which ends at index width-1).
    for (int wire = width - 2; wire >= 0; --wire) c.gates.push_back(Gate::trace_out(wire));
    c.validate();
    return c;
}

Circuit rejecting_verifier(int qubits) {
    Circuit c;
    c.in_count = qubits;
    for (int i = qubits - 1; i >= 0; --i) c.gates.push_back(Gate::trace_out(i));
    c.gates.push_back(Gate::prepare(0));
    c.validate();
    return c;
}

}  // namespace qclique::reductions
