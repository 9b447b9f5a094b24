#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qclique/linalg.hpp"

namespace qclique {

enum class GateKind { Unitary, Prepare, TraceOut };

// One instruction of the extended circuit model. Unitary gates act on one to
// four live wires (named gates from the gate set use up to three; raw-matrix
// gates up to four, enough for flag-controlled three-wire gates). Prepare
// appends a fresh wire in |0>, which must be referenced by its index, the
// current width. TraceOut removes a wire; the remaining wires are renumbered
// contiguously, preserving order.
struct Gate {
    GateKind kind = GateKind::Unitary;
    std::vector<int> wires;
    std::string name;      // empty for raw-matrix unitaries
    double theta = 0.0;    // rotation parameter, used by RY
    Mat matrix;            // resolved unitary for Unitary gates

    static Gate unitary(std::string name, std::vector<int> wires, double theta = 0.0);
    static Gate raw_unitary(Mat m, std::vector<int> wires);
    static Gate prepare(int wire);
    static Gate trace_out(int wire);
};

// The named gates available to circuit files. Includes the Clifford+T core,
// controlled swaps, and an exact single-qubit Y rotation.
namespace gateset {
bool has(const std::string& name);
bool parameterized(const std::string& name);
int arity(const std::string& name);
Mat matrix(const std::string& name, double theta = 0.0);
std::vector<std::string> names();
// RY(theta)|0> = cos(theta/2)|0> + sin(theta/2)|1>.
Mat ry(double theta);
}  // namespace gateset

struct Circuit {
    int in_count = 0;
    std::vector<Gate> gates;

    int prepare_count() const;
    int trace_count() const;
    int out_count() const { return in_count + prepare_count() - trace_count(); }
    // Circuit length: inputs + outputs + gates.
    int size() const { return in_count + out_count() + static_cast<int>(gates.size()); }
    int peak_width() const;

    // Checks wire references against live widths, unitarity of gate
    // matrices, and the width cap.
    void validate() const;
    bool is_canonical() const;
};

// Rewrites to the canonical form: all Prepare gates first, then Unitary
// gates, then TraceOut gates. Implements the same channel; the gate count is
// unchanged up to wire relabeling.
Circuit canonicalize(const Circuit& c);

// Exact evaluation of the circuit as a channel on a density operator over
// 2^in dimensions.
DensityOperator evaluate(const Circuit& c, const DensityOperator& rho, Exec exec = default_exec());

// Linear action of the circuit on an arbitrary input operator (no state
// checks on input or output).
Mat evaluate_matrix(const Circuit& c, const Mat& m, Exec exec = default_exec());

// Single-qubit gate mapping |0> to sqrt(p)|0> + sqrt(1-p)|1>, exactly.
Gate prepare_superposition_gate(double p);

// Direct sum of two canonical circuits with equal input counts: the output
// register is one flag qubit (first) followed by max(out1, out2) qubits; the
// branch with fewer outputs is padded by trailing |0> wires. The flag is
// dephased, so the result is the block channel p Phi1 (+) (1-p) Phi2 under
// that embedding.
Circuit direct_sum(const Circuit& c1, const Circuit& c2, double p);

// Swap test on two n-qubit registers: prepares an ancilla, Hadamard,
// controlled swap of the halves, Hadamard, dephases the ancilla. The output
// keeps the 2n tested qubits followed by the ancilla; outcome 0 on the
// ancilla has probability 1/2 + tr(rho1 rho2)/2 on product inputs.
Circuit swap_test_circuit(int n);

// Probability of reading `outcome` on output wire `wire` of an evaluated
// output state (all wires qubits).
double wire_outcome_probability(const DensityOperator& out, int wire, int outcome);

// Composition helpers used to assemble verifier circuits.
// Side-by-side tensor: block 1 takes inputs 0..in1-1, block 2 the rest.
Circuit tensor_compose(const Circuit& c1, const Circuit& c2);
// Sequential: run `first`, feed its outputs into `second` (in(second) == out(first)).
Circuit sequential_compose(const Circuit& first, const Circuit& second);

}  // namespace qclique
