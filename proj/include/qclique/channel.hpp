#pragma once

#include <memory>
#include <mutex>
#include <variant>

#include "qclique/circuit.hpp"
#include "qclique/linalg.hpp"
#include "qclique/rational.hpp"

namespace qclique {

class Channel;

struct KrausData {
    std::vector<Mat> operators;
};

struct CircuitData {
    Circuit circuit;
};

struct BlockSumData {
    std::vector<double> weights;
    std::vector<Channel> blocks;
};

// Measure-and-prepare form: rho -> sum_i tr(M_i rho) sigma_i.
struct EBData {
    std::vector<Mat> povm;
    std::vector<Mat> states;
};

// A completely positive trace-preserving map in one of four representations.
// Channels are immutable values; apply and adjoint_apply are pure.
class Channel {
public:
    // Empty channel; any application throws. Exists so that aggregates
    // holding a Channel can be built before assignment.
    Channel() = default;

    static Channel kraus(std::vector<Mat> operators);
    static Channel circuit(Circuit c);
    static Channel block_sum(std::vector<Channel> blocks, std::vector<double> weights);
    static Channel eb(std::vector<Mat> povm, std::vector<Mat> states);

    long in_dim() const { return in_dim_; }
    long out_dim() const { return out_dim_; }

    bool is_eb() const { return std::holds_alternative<EBData>(rep_); }
    bool is_block_sum() const { return std::holds_alternative<BlockSumData>(rep_); }
    const EBData& eb_data() const;
    const BlockSumData& block_sum_data() const;

    // Schroedinger picture on a raw matrix (linear, no state validation).
    Mat apply_matrix(const Mat& rho) const;
    DensityOperator apply(const DensityOperator& rho) const;

    // Heisenberg picture: tr(A apply(rho)) == tr(adjoint_apply(A) rho).
    Mat adjoint_apply(const Mat& a) const;

    // Kraus operators of this channel (computed and cached on demand for
    // non-Kraus representations).
    const std::vector<Mat>& kraus_operators() const;

private:
    std::variant<KrausData, CircuitData, BlockSumData, EBData> rep_;
    long in_dim_ = 0, out_dim_ = 0;
    mutable std::shared_ptr<std::vector<Mat>> kraus_cache_;
    mutable std::shared_ptr<std::mutex> cache_mutex_ = std::make_shared<std::mutex>();
};

// Kraus extraction from a circuit by slicing the total unitary of the
// canonical form over the traced-out environment basis.
Channel kraus_from_circuit(const Circuit& c);

// Choi matrix sum_ij |i><j| (x) Phi(|i><j|), dimension in*out.
Mat choi_matrix(const Channel& phi);

// CPTP validation: Kraus completeness within the configured tolerance plus
// Choi positivity at small dimensions.
void validate_cptp(const Channel& phi, long max_choi_dim = 256);

// Minimal Kraus set from a Choi eigendecomposition; operators with norm
// below the truncation threshold are dropped.
std::vector<Mat> choi_to_kraus(const Mat& choi, long in_dim, long out_dim);

// Hilbert-Schmidt-orthonormal basis of span{A_i^dag A_j} over the Kraus
// operators; contains the identity in its span and is independent of the
// Kraus representation.
std::vector<Mat> operator_system_basis(const Channel& phi, long max_dim = 16);

// Frobenius distance between the projectors onto two operator spans,
// used to compare operator systems.
double span_distance(const std::vector<Mat>& a, const std::vector<Mat>& b);

// Bell-measurement decomposition of the swap-test acceptance operator of an
// EB channel applied twice: (Phi^dag (x) Phi^dag)(Pi_sym) =
// sum_ij tr[Pi_sym (sigma_i (x) sigma_j)] M_i (x) M_j.
struct BellForm {
    Eigen::MatrixXd coefficients;          // c_ij = tr[Pi_sym (sigma_i (x) sigma_j)]
    std::vector<std::pair<Mat, Mat>> povm_pairs;
    Mat reconstruction;                    // sum_ij c_ij M_i (x) M_j
};
BellForm bell_measurement_form(const Channel& phi);

// Confusability graph of a column-stochastic transition matrix: inputs are
// adjacent when some output has nonzero probability under both.
struct ConfusabilityGraph {
    int vertex_count = 0;
    std::vector<std::vector<bool>> adjacency;  // symmetric, irreflexive

    bool adjacent(int a, int b) const { return adjacency[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    // Largest independent set size (exact search; vertex_count <= 24).
    int max_independent_set() const;
    int max_clique() const;
};

// N(y|x) as exact rationals, rows indexed by y, columns by x; every column
// sums to one.
ConfusabilityGraph confusability_graph(const std::vector<std::vector<Rational>>& n_y_given_x);

// Canonical quantum channel of a classical noisy channel: EB with POVM
// {|x><x|} and diagonal output states from the columns of N. Its operator
// system is the span of |x><x'| over equal or confusable inputs.
Channel classical_noisy_channel(const std::vector<std::vector<Rational>>& n_y_given_x);

}  // namespace qclique
