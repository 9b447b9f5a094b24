#include "qclique/channel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qclique {

namespace {

void check_state_matrix(const Mat& m, const char* what) {
    const double tol = tolerances().validation;
    if (m.rows() != m.cols()) throw DimensionError(std::string(what) + ": not square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw ValidationError(std::string(what) + ": not hermitian");
    if (std::abs(m.trace().real() - 1.0) > tol)
        throw ValidationError(std::string(what) + ": trace is not one");
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol)
        throw ValidationError(std::string(what) + ": negative eigenvalue");
}

void check_kraus_complete(const std::vector<Mat>& ops, long in_dim) {
    Mat sum = Mat::Zero(in_dim, in_dim);
    for (const auto& a : ops) sum += a.adjoint() * a;
    if ((sum - Mat::Identity(in_dim, in_dim)).cwiseAbs().maxCoeff() > tolerances().kraus_sum)
        throw ValidationError("kraus operators do not sum to identity");
}

}  // namespace

Channel Channel::kraus(std::vector<Mat> operators) {
    if (operators.empty()) throw ValidationError("channel: empty Kraus list");
    const long out = operators[0].rows(), in = operators[0].cols();
    for (const auto& a : operators)
        if (a.rows() != out || a.cols() != in) throw DimensionError("channel: ragged Kraus list");
    check_kraus_complete(operators, in);
    Channel c;
    c.in_dim_ = in;
    c.out_dim_ = out;
    c.rep_ = KrausData{std::move(operators)};
    return c;
}

Channel Channel::circuit(Circuit circ) {
    circ.validate();
    Channel c;
    c.in_dim_ = 1L << circ.in_count;
    c.out_dim_ = 1L << circ.out_count();
    c.rep_ = CircuitData{std::move(circ)};
    return c;
}

Channel Channel::block_sum(std::vector<Channel> blocks, std::vector<double> weights) {
    if (blocks.empty() || blocks.size() != weights.size())
        throw ValidationError("block_sum: need one weight per block");
    double total = 0;
    for (double w : weights) {
        if (w < 0) throw ValidationError("block_sum: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > tolerances().validation)
        throw ValidationError("block_sum: weights do not sum to one");
    const long in = blocks[0].in_dim();
    long out = 0;
    for (const auto& b : blocks) {
        if (b.in_dim() != in) throw DimensionError("block_sum: input dimensions differ");
        out += b.out_dim();
    }
    Channel c;
    c.in_dim_ = in;
    c.out_dim_ = out;
    c.rep_ = BlockSumData{std::move(weights), std::move(blocks)};
    return c;
}

Channel Channel::eb(std::vector<Mat> povm, std::vector<Mat> states) {
    if (povm.empty() || povm.size() != states.size())
        throw ValidationError("eb channel: need one output state per POVM element");
    const long in = povm[0].rows(), out = states[0].rows();
    const double tol = tolerances().validation;
    Mat sum = Mat::Zero(in, in);
    for (const auto& m : povm) {
        if (m.rows() != in || m.cols() != in) throw DimensionError("eb channel: ragged POVM");
        if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol)
            throw ValidationError("eb channel: POVM element not hermitian");
        Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol)
            throw ValidationError("eb channel: POVM element not positive");
        sum += m;
    }
    if ((sum - Mat::Identity(in, in)).cwiseAbs().maxCoeff() > tolerances().kraus_sum)
        throw ValidationError("eb channel: POVM does not sum to identity");
    for (const auto& s : states) {
        if (s.rows() != out || s.cols() != out) throw DimensionError("eb channel: ragged state list");
        check_state_matrix(s, "eb channel output state");
    }
    Channel c;
    c.in_dim_ = in;
    c.out_dim_ = out;
    c.rep_ = EBData{std::move(povm), std::move(states)};
    return c;
}

const EBData& Channel::eb_data() const {
    if (!is_eb()) throw ValidationError("channel: not in measure-and-prepare form");
    return std::get<EBData>(rep_);
}

const BlockSumData& Channel::block_sum_data() const {
    if (!is_block_sum()) throw ValidationError("channel: not a block sum");
    return std::get<BlockSumData>(rep_);
}

Mat Channel::apply_matrix(const Mat& rho) const {
    if (rho.rows() != in_dim_ || rho.cols() != in_dim_)
        throw DimensionError("channel apply: dimension mismatch");
    if (const auto* k = std::get_if<KrausData>(&rep_)) return kernels::kraus_apply(rho, k->operators);
    if (const auto* c = std::get_if<CircuitData>(&rep_)) return evaluate_matrix(c->circuit, rho);
    if (const auto* e = std::get_if<EBData>(&rep_)) {
        Mat out = Mat::Zero(out_dim_, out_dim_);
        for (std::size_t i = 0; i < e->povm.size(); ++i)
            out += (e->povm[i] * rho).trace() * e->states[i];
        return out;
    }
    const auto& bs = std::get<BlockSumData>(rep_);
    Mat out = Mat::Zero(out_dim_, out_dim_);
    long off = 0;
    for (std::size_t j = 0; j < bs.blocks.size(); ++j) {
        const long d = bs.blocks[j].out_dim();
        out.block(off, off, d, d) = bs.weights[j] * bs.blocks[j].apply_matrix(rho);
        off += d;
    }
    return out;
}

DensityOperator Channel::apply(const DensityOperator& rho) const {
    Mat out = apply_matrix(rho.matrix);
    const double tol = tolerances().validation;
    if (!out.allFinite() || (out - out.adjoint()).cwiseAbs().maxCoeff() > tol ||
        std::abs(out.trace().real() - 1.0) > tol)
        throw ValidationError("channel apply: output is not a state");
    return DensityOperator::unchecked(std::move(out), {static_cast<int>(out_dim_)});
}

Mat Channel::adjoint_apply(const Mat& a) const {
    if (a.rows() != out_dim_ || a.cols() != out_dim_)
        throw DimensionError("channel adjoint: dimension mismatch");
    if (const auto* k = std::get_if<KrausData>(&rep_)) return kernels::kraus_adjoint_apply(a, k->operators);
    if (const auto* e = std::get_if<EBData>(&rep_)) {
        Mat out = Mat::Zero(in_dim_, in_dim_);
        for (std::size_t i = 0; i < e->povm.size(); ++i)
            out += (a * e->states[i]).trace() * e->povm[i];
        return out;
    }
    if (const auto* bs = std::get_if<BlockSumData>(&rep_)) {
        Mat out = Mat::Zero(in_dim_, in_dim_);
        long off = 0;
        for (std::size_t j = 0; j < bs->blocks.size(); ++j) {
            const long d = bs->blocks[j].out_dim();
            out += bs->weights[j] * bs->blocks[j].adjoint_apply(a.block(off, off, d, d));
            off += d;
        }
        return out;
    }
    return kernels::kraus_adjoint_apply(a, kraus_operators());
}

namespace {

std::vector<Mat> eb_to_kraus(const EBData& eb) {
    std::vector<Mat> out;
    const double tol = tolerances().validation;
    for (std::size_t i = 0; i < eb.povm.size(); ++i) {
        Eigen::SelfAdjointEigenSolver<Mat> em(eb.povm[i]);
        Eigen::SelfAdjointEigenSolver<Mat> es(eb.states[i]);
        for (long t = 0; t < em.eigenvalues().size(); ++t) {
            double mu = std::max(0.0, em.eigenvalues()(t));
            if (mu <= tol) continue;
            for (long s = 0; s < es.eigenvalues().size(); ++s) {
                double lam = std::max(0.0, es.eigenvalues()(s));
                if (lam <= tol) continue;
                Mat a = std::sqrt(lam * mu) * es.eigenvectors().col(s) *
                        em.eigenvectors().col(t).adjoint();
                if (a.norm() >= 1e-12) out.push_back(std::move(a));
            }
        }
    }
    return out;
}

}  // namespace

const std::vector<Mat>& Channel::kraus_operators() const {
    if (const auto* k = std::get_if<KrausData>(&rep_)) return k->operators;
    std::lock_guard<std::mutex> lock(*cache_mutex_);
    if (kraus_cache_) return *kraus_cache_;
    auto result = std::make_shared<std::vector<Mat>>();
    if (const auto* c = std::get_if<CircuitData>(&rep_)) {
        *result = kraus_from_circuit(c->circuit).kraus_operators();
    } else if (const auto* e = std::get_if<EBData>(&rep_)) {
        *result = eb_to_kraus(*e);
    } else {
        const auto& bs = std::get<BlockSumData>(rep_);
        long off = 0;
        for (std::size_t j = 0; j < bs.blocks.size(); ++j) {
            const double w = bs.weights[j];
            const long d = bs.blocks[j].out_dim();
            if (w > 0) {
                for (const auto& a : bs.blocks[j].kraus_operators()) {
                    Mat e = Mat::Zero(out_dim_, in_dim_);
                    e.block(off, 0, d, in_dim_) = std::sqrt(w) * a;
                    result->push_back(std::move(e));
                }
            }
            off += d;
        }
    }
    check_kraus_complete(*result, in_dim_);
    kraus_cache_ = result;
    return *kraus_cache_;
}

Channel kraus_from_circuit(const Circuit& c_in) {
    const Circuit c = c_in.is_canonical() ? c_in : canonicalize(c_in);
    const int n = c.in_count;
    const int preps = c.prepare_count();
    const int width = n + preps;
    if (width > max_live_qubits())
        throw ValidationError("kraus_from_circuit: peak width above the configured cap");

    // Total unitary of the canonical circuit on all in+prep wires.
    const long dim = 1L << width;
    Mat total = Mat::Identity(dim, dim);
    std::vector<int> traced;
    std::vector<bool> is_traced(static_cast<std::size_t>(width), false);
    {
        int seen_preps = 0;
        std::vector<int> cur(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) cur[static_cast<std::size_t>(i)] = i;
        for (const auto& g : c.gates) {
            if (g.kind == GateKind::Prepare) {
                cur.push_back(n + seen_preps);
                ++seen_preps;
            } else if (g.kind == GateKind::TraceOut) {
                int id = cur[static_cast<std::size_t>(g.wires[0])];
                traced.push_back(id);
                is_traced[static_cast<std::size_t>(id)] = true;
                cur.erase(cur.begin() + g.wires[0]);
            } else {
                std::vector<int> wires = g.wires;
                for (auto& w : wires) w = cur[static_cast<std::size_t>(w)];
                kernels::apply_unitary_left(total, width, g.matrix, wires);
            }
        }
    }
    std::vector<int> kept;
    for (int i = 0; i < width; ++i)
        if (!is_traced[static_cast<std::size_t>(i)]) kept.push_back(i);

    const int out_q = static_cast<int>(kept.size());
    const long in_dim = 1L << n, out_dim = 1L << out_q;
    const long env_dim = 1L << traced.size();
    std::sort(traced.begin(), traced.end());

    auto scatter = [&](long value, const std::vector<int>& wires) {
        long off = 0;
        const int k = static_cast<int>(wires.size());
        for (int j = 0; j < k; ++j)
            off |= ((value >> (k - 1 - j)) & 1L) << (width - 1 - wires[static_cast<std::size_t>(j)]);
        return off;
    };

    std::vector<Mat> ops;
    for (long e = 0; e < env_dim; ++e) {
        Mat a(out_dim, in_dim);
        const long erow = scatter(e, traced);
        for (long y = 0; y < out_dim; ++y) {
            const long row = erow + scatter(y, kept);
            for (long x = 0; x < in_dim; ++x) a(y, x) = total(row, x << preps);
        }
        if (a.norm() >= 1e-12) ops.push_back(std::move(a));
    }
    return Channel::kraus(std::move(ops));
}

Mat choi_matrix(const Channel& phi) {
    const long in = phi.in_dim(), out = phi.out_dim();
    Mat choi = Mat::Zero(in * out, in * out);
    for (long i = 0; i < in; ++i)
        for (long j = 0; j < in; ++j) {
            Mat eij = Mat::Zero(in, in);
            eij(i, j) = 1.0;
            choi.block(i * out, j * out, out, out) = phi.apply_matrix(eij);
        }
    return choi;
}

void validate_cptp(const Channel& phi, long max_choi_dim) {
    check_kraus_complete(phi.kraus_operators(), phi.in_dim());
    if (phi.in_dim() * phi.out_dim() <= max_choi_dim) {
        Mat choi = choi_matrix(phi);
        Eigen::SelfAdjointEigenSolver<Mat> es(choi, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tolerances().kraus_sum)
            throw ValidationError("channel is not completely positive");
        Mat marg = kernels::partial_trace(
            choi, {static_cast<int>(phi.in_dim()), static_cast<int>(phi.out_dim())}, {0});
        if ((marg - Mat::Identity(phi.in_dim(), phi.in_dim())).cwiseAbs().maxCoeff() >
            tolerances().kraus_sum)
            throw ValidationError("channel is not trace preserving");
    }
}

std::vector<Mat> choi_to_kraus(const Mat& choi, long in_dim, long out_dim) {
    if (choi.rows() != in_dim * out_dim) throw DimensionError("choi_to_kraus: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Mat> es(choi);
    std::vector<Mat> ops;
    for (long k = es.eigenvalues().size() - 1; k >= 0; --k) {
        const double lam = es.eigenvalues()(k);
        if (lam < -tolerances().kraus_sum) throw ValidationError("choi_to_kraus: not completely positive");
        if (lam <= 1e-12) continue;
        Mat a(out_dim, in_dim);
        for (long i = 0; i < in_dim; ++i)
            for (long o = 0; o < out_dim; ++o)
                a(o, i) = std::sqrt(lam) * es.eigenvectors()(i * out_dim + o, k);
        ops.push_back(std::move(a));
    }
    return ops;
}

namespace {

// Orthonormal basis of the span of vectorized matrices.
std::vector<Mat> orthonormal_span(const std::vector<Mat>& mats) {
    if (mats.empty()) return {};
    const long r = mats[0].rows(), c = mats[0].cols();
    Mat stacked(r * c, static_cast<long>(mats.size()));
    for (std::size_t k = 0; k < mats.size(); ++k)
        stacked.col(static_cast<long>(k)) = Eigen::Map<const Vec>(mats[k].data(), r * c);
    Eigen::BDCSVD<Mat> svd(stacked, Eigen::ComputeThinU);
    const double cut = 1e-10 * svd.singularValues().maxCoeff();
    std::vector<Mat> basis;
    for (long k = 0; k < svd.singularValues().size(); ++k) {
        if (svd.singularValues()(k) <= cut) break;
        Vec v = svd.matrixU().col(k);
        basis.push_back(Eigen::Map<const Mat>(v.data(), r, c));
    }
    return basis;
}

}  // namespace

std::vector<Mat> operator_system_basis(const Channel& phi, long max_dim) {
    if (phi.in_dim() > max_dim) throw DimensionError("operator_system_basis: dimension above limit");
    const auto& kraus = phi.kraus_operators();
    std::vector<Mat> products;
    for (const auto& a : kraus)
        for (const auto& b : kraus) products.push_back(a.adjoint() * b);
    return orthonormal_span(products);
}

double span_distance(const std::vector<Mat>& a, const std::vector<Mat>& b) {
    auto on_a = orthonormal_span(a);
    auto on_b = orthonormal_span(b);
    if (on_a.empty() && on_b.empty()) return 0.0;
    const long r = (on_a.empty() ? on_b : on_a)[0].rows();
    const long c = (on_a.empty() ? on_b : on_a)[0].cols();
    Mat pa = Mat::Zero(r * c, r * c), pb = pa;
    for (const auto& m : on_a) {
        Vec v = Eigen::Map<const Vec>(m.data(), r * c);
        pa += v * v.adjoint();
    }
    for (const auto& m : on_b) {
        Vec v = Eigen::Map<const Vec>(m.data(), r * c);
        pb += v * v.adjoint();
    }
    return (pa - pb).norm();
}

BellForm bell_measurement_form(const Channel& phi) {
    const auto& eb = phi.eb_data();
    const int d = static_cast<int>(phi.out_dim());
    const Mat pi_sym = symmetric_projector(d);
    const std::size_t m = eb.povm.size();
    BellForm out;
    out.coefficients.resize(static_cast<long>(m), static_cast<long>(m));
    out.reconstruction = Mat::Zero(phi.in_dim() * phi.in_dim(), phi.in_dim() * phi.in_dim());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double cij = (pi_sym * kernels::kron(eb.states[i], eb.states[j])).trace().real();
            out.coefficients(static_cast<long>(i), static_cast<long>(j)) = cij;
            out.reconstruction += cij * kernels::kron(eb.povm[i], eb.povm[j]);
            out.povm_pairs.emplace_back(eb.povm[i], eb.povm[j]);
        }
    return out;
}

int ConfusabilityGraph::max_independent_set() const {
    const int n = vertex_count;
    if (n > 24) throw DimensionError("max_independent_set: too many vertices for exact search");
    std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (adjacency[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                nbr[static_cast<std::size_t>(i)] |= 1u << j;

    // Branch on the lowest candidate vertex: take it (dropping neighbors) or not.
    std::function<int(std::uint32_t)> best = [&](std::uint32_t mask) -> int {
        if (mask == 0) return 0;
        int v = __builtin_ctz(mask);
        std::uint32_t without = mask & ~(1u << v);
        int take = 1 + best(without & ~nbr[static_cast<std::size_t>(v)]);
        int skip = best(without);
        return std::max(take, skip);
    };
    return best((1u << n) - 1);
}

int ConfusabilityGraph::max_clique() const {
    ConfusabilityGraph comp;
    comp.vertex_count = vertex_count;
    comp.adjacency.assign(static_cast<std::size_t>(vertex_count),
                          std::vector<bool>(static_cast<std::size_t>(vertex_count), false));
    for (int i = 0; i < vertex_count; ++i)
        for (int j = 0; j < vertex_count; ++j)
            if (i != j)
                comp.adjacency[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = !adjacent(i, j);
    return comp.max_independent_set();
}

namespace {

void check_stochastic(const std::vector<std::vector<Rational>>& n) {
    if (n.empty() || n[0].empty()) throw ValidationError("transition matrix is empty");
    const std::size_t x_count = n[0].size();
    for (const auto& row : n)
        if (row.size() != x_count) throw DimensionError("transition matrix is ragged");
    for (std::size_t x = 0; x < x_count; ++x) {
        Rational sum(0);
        for (const auto& row : n) {
            if (row[x] < Rational(0)) throw ValidationError("transition matrix has a negative entry");
            sum += row[x];
        }
        if (sum != Rational(1)) throw ValidationError("transition matrix column does not sum to one");
    }
}

}  // namespace

ConfusabilityGraph confusability_graph(const std::vector<std::vector<Rational>>& n) {
    check_stochastic(n);
    const int x_count = static_cast<int>(n[0].size());
    ConfusabilityGraph g;
    g.vertex_count = x_count;
    g.adjacency.assign(static_cast<std::size_t>(x_count),
                       std::vector<bool>(static_cast<std::size_t>(x_count), false));
    for (int a = 0; a < x_count; ++a)
        for (int b = a + 1; b < x_count; ++b) {
            bool edge = false;
            for (const auto& row : n)
                if (!row[static_cast<std::size_t>(a)].is_zero() &&
                    !row[static_cast<std::size_t>(b)].is_zero()) {
                    edge = true;
                    break;
                }
            g.adjacency[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = edge;
            g.adjacency[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = edge;
        }
    return g;
}

Channel classical_noisy_channel(const std::vector<std::vector<Rational>>& n) {
    check_stochastic(n);
    const long y_count = static_cast<long>(n.size());
    const long x_count = static_cast<long>(n[0].size());
    std::vector<Mat> povm, states;
    for (long x = 0; x < x_count; ++x) {
        Mat proj = Mat::Zero(x_count, x_count);
        proj(x, x) = 1.0;
        povm.push_back(std::move(proj));
        Mat sigma = Mat::Zero(y_count, y_count);
        for (long y = 0; y < y_count; ++y)
            sigma(y, y) = n[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)].to_double();
        states.push_back(std::move(sigma));
    }
    return Channel::eb(std::move(povm), std::move(states));
}

}  // namespace qclique
