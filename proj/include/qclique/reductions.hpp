#pragma once

#include <optional>

#include "qclique/engine.hpp"

namespace qclique::reductions {

using qclique::Channel;
using qclique::Circuit;
using qclique::DensityOperator;
using qclique::Mat;
using qclique::PureState;

// Completeness/soundness thresholds of a constructed instance, with the
// construction parameters that produced them.
struct PromisePair {
    double completeness = 0.0;
    double soundness = 0.0;
    double p = -1.0;    // block weight used, when applicable
    double eta = -1.0;  // slack used, when applicable
    double gap() const { return completeness - soundness; }
    void validate() const;
};

// ---------------------------------------------------------------------------
// Building blocks

// Picks a uniformly random one of k registers of dimension h and outputs its
// marginal together with the register index: rho -> E_i rho_i (x) |i><i| on
// H^k (x) tail -> H (x) C^[k]. Orthogonal pure inputs have overlap <= 1/k,
// and near-optimal pairs are close to separable pairs differing only in an
// orthogonal tail.
Channel random_marginal_channel(int h_dim, int k, int tail_dim);

// Near-optimal-pair certificate for random_marginal_channel: builds the
// separable approximants from top eigenvectors of the marginals, aligns the
// bodies, orthogonalizes the tails, and reports every distance the
// construction promises.
struct MarginalStabilityReport {
    double epsilon = 0.0;           // 1/k - overlap, clamped at 0
    double marginal_epsilon = 0.0;  // mean_i (1 - tr rho_i sigma_i)
    double rho_frobenius = 0.0;     // || rho - rho' ||_2, bound 2 sqrt(k eps_m)
    double sigma_frobenius = 0.0;
    double body_frobenius = 0.0;    // || body(rho') - body(sigma') ||_2, bound 6 sqrt(k eps_m)
    double trace_distance_sum = 0.0;
    double bound = 0.0;             // 10 k epsilon^(1/4)
    DensityOperator rho_approx, sigma_approx;
};
MarginalStabilityReport marginal_stability_check(const PureState& psi, const PureState& phi,
                                                 int h_dim, int k);

// Runs a one-qubit-output channel on all but the last input qubit (which is
// traced away) and encodes the verdict in a three-dimensional block:
// acceptance weight on |perp>, rejection weight on the maximally mixed
// qubit. Product inputs with acceptance q, q' have output overlap
// (1-q)(1-q')/2 + q q'.
Channel verdict_channel(const Channel& one_qubit_out);

// The block weight p that keeps the stability penalty below eta:
// (1-p)^2 C eps^alpha - p^2 eps <= eta for every eps >= 0.
double stability_weight(double c_const, double alpha_exp, double eta);

// Symmetry test on a uniformly random pair of the k registers: projects the
// pair marginal onto the symmetric subspace, reporting pass as the mixed
// qubit and failure as |perp>, tagged by the pair index. Shared-body
// separable pairs have overlap <= 1/(2k(k-1)), saturated iff the body is
// orthonormal.
Channel pair_symmetry_channel(int h_dim, int k, int tail_dim = 2);

struct SymmetryStabilityReport {
    double epsilon = 0.0;            // 1/(2k(k-1)) - overlap, clamped at 0
    double gram_mass = 0.0;          // sum_{i != j} |<psi_i|psi_j>|^2
    double trace_distance_sum = 0.0;
    double bound = 0.0;              // 4 k sqrt(k) (k-1) sqrt(epsilon)
    std::vector<PureState> orthonormal_body;
};
// Stability of the symmetry test on a shared-body pair (x) orthogonal tails:
// the nearest isometry to the body matrix gives an orthonormal body within
// the promised distance.
SymmetryStabilityReport pair_symmetry_stability_check(const std::vector<PureState>& body,
                                                      const PureState& tail_a,
                                                      const PureState& tail_b);

// Symmetry test on channel outputs: pushes a random register pair through
// phi (x) phi and tests the symmetric subspace of the output, reporting
// failure as the mixed qubit and success as |perp|.
Channel output_symmetry_channel(const Channel& phi, int k, int tail_dim = 2);

// ---------------------------------------------------------------------------
// Hardness instances

struct HardnessInstance {
    Channel channel;
    PromisePair promise;
    std::optional<Circuit> circuit;  // circuit realization, when constructed
    int witness_qubits = 0;          // qubits per proof register
};

// Two-proof hardness construction: the weighted direct sum of the random
// marginal channel (k = 2) with the verdict channel of a two-proof verifier
// circuit (2m qubits -> 1 qubit). Also emitted as a circuit via the
// direct-sum construction; its output embeds the block channel as
// flag (x) padded blocks.
HardnessInstance qma2_hardness_instance(const Circuit& verifier, double p);

// Same family with k proof registers; channel-level only.
HardnessInstance qmak_hardness_instance(const Circuit& verifier, int k, double p);

// Embedding of the block-sum output space into the direct-sum circuit's
// output space (for comparing the two constructions).
Mat qma2_block_embedding(int witness_qubits);

// k-clique to pair-clique transfer: p1 * marginal + p2 * input symmetry +
// p3 * output symmetry. alpha_map gives the planted pair value of a
// (alpha,k)-clique; beta_map the corresponding soundness expression.
struct KToTwoInstance {
    Channel channel;
    int k = 0;
    double p1 = 0, p2 = 0, p3 = 0;
    double alpha_map(double alpha) const;
    double beta_map(double beta) const;
};
KToTwoInstance quantum_k_to_2(const Channel& phi, int k, double p1, double p2, double p3);

// ---------------------------------------------------------------------------
// Hamiltonian reduction

struct HamiltonianTerm {
    std::vector<int> support;  // qubit indices, ascending
    Mat matrix;                // 2^|support| square, 0 <= term <= Id
};

struct HamiltonianInstance {
    int qubits = 0;
    std::vector<HamiltonianTerm> terms;
    double alpha = 0.0;  // yes-instance energy threshold
    double beta = 0.0;   // no-instance energy threshold, beta > 4 alpha
    int term_count() const { return static_cast<int>(terms.size()); }
    void validate() const;
    Mat total() const;  // sum of lifted terms
    double ground_energy() const;
};

// Measure a random term, report the outcome as mixed-vs-|perp>: the last
// input qubit is ignored, making the channel measure-and-prepare with an
// unconstrained qubit available for orthogonality. Thresholds
// c = 1 - 2 alpha / t, s = 1 - beta / (2t).
HardnessInstance hamiltonian_clique_instance(const HamiltonianInstance& h);

// Expected pair overlap of the two orthogonal extensions of an energy-E
// eigenstate: (E/t)^2 / 2 + (1 - E/t)^2.
double hamiltonian_pair_overlap(double energy, int term_count);

// ---------------------------------------------------------------------------
// Alternate two-proof construction from a unitary verifier

// Channel of a unitary verifier V on 2m + k qubits (two m-qubit proofs plus
// a k-qubit workspace): trace the last input qubit, apply V^dag to
// |1><1| (x) rest, measure the workspace against |0^k> (replacing the
// remainder by the maximally mixed state on failure), and trace the first
// proof register.
Channel unitary_verifier_channel(const Mat& v, int m, int workspace_qubits);

// ---------------------------------------------------------------------------
// Toy verifier circuits for pipeline tests

// Accepts exactly the all-zeros computational input (probability 1 there, 0
// on other basis states).
Circuit all_zeros_verifier(int qubits);
// Accepts iff the first `checked` qubits read zero; cheaper in ancillas than
// the full check, which matters inside the width-capped direct sum.
Circuit leading_zeros_verifier(int qubits, int checked);
// Rejects everything: constant |0> output.
Circuit rejecting_verifier(int qubits);

}  // namespace qclique::reductions
