#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qclique/rational.hpp"

namespace qclique::classical {

// NAND-gate circuit. Wires 0..in_bits-1 are inputs; gate g defines wire
// in_bits + g from two existing wires. Outputs name the wires read out, in
// order. Bit i of a packed word is wire i (outputs likewise).
struct NandGate {
    int a = 0, b = 0;
};

struct ClassicalCircuit {
    int in_bits = 0;
    std::vector<NandGate> gates;
    std::vector<int> outputs;

    int out_bits() const { return static_cast<int>(outputs.size()); }
    int size() const { return in_bits + out_bits() + static_cast<int>(gates.size()); }
    void validate() const;

    std::uint64_t eval(std::uint64_t x) const;
    // 64 evaluations at once, one per bit lane.
    std::vector<std::uint64_t> eval_lanes(const std::vector<std::uint64_t>& lanes) const;
};

// Incremental construction with the usual derived gates.
class CircuitBuilder {
public:
    explicit CircuitBuilder(int in_bits);

    int input(int i) const;
    int nand(int a, int b);
    int not_(int a);
    int and_(int a, int b);
    int or_(int a, int b);
    int xor_(int a, int b);
    int eq(int a, int b);
    int const0();
    int const1();
    int and_all(const std::vector<int>& ws);
    int or_all(const std::vector<int>& ws);
    // Equality of two equal-length wire buses.
    int bus_eq(const std::vector<int>& a, const std::vector<int>& b);

    // Inline another circuit with its inputs driven by `inputs`; returns the
    // wires carrying its outputs.
    std::vector<int> inline_circuit(const ClassicalCircuit& sub, const std::vector<int>& inputs);

    void set_outputs(std::vector<int> outs);
    ClassicalCircuit take();

private:
    ClassicalCircuit c_;
    int width_ = 0;
    int cached_const1_ = -1;
};

// Exhaustive decision of a k-clique (k inputs with equal images) with a
// witness; inputs are enumerated up to 2^in_bits <= 2^20.
struct WitnessResult {
    bool found = false;
    std::vector<std::uint64_t> witness;
};
WitnessResult has_k_clique(const ClassicalCircuit& c, int k);
WitnessResult has_k_is(const ClassicalCircuit& c, int k);

// Probabilistic circuit: the base circuit reads (x, r, t) where r is
// `random_bits` uniform bits and t is an exact uniform categorical index in
// [0, categorical) packed into ceil(log2 categorical) wires. categorical = 1
// gives the plain random-bit model; the categorical register exists so that
// uniform pair sampling stays exact when the pair count is not a power of
// two.
struct ProbabilisticCircuit {
    ClassicalCircuit base;
    int random_bits = 0;
    int categorical = 1;

    int in_bits() const;
    int categorical_wires() const;
    void validate() const;

    // Exact output distribution of input x: output value -> count out of
    // categorical * 2^random_bits.
    std::map<std::uint64_t, std::uint64_t> distribution(std::uint64_t x) const;
};

// Exact collision probability over independent evaluations.
Rational collision_prob(const ProbabilisticCircuit& c, std::uint64_t x, std::uint64_t x2);

// Average pairwise collision probability of k distinct inputs.
Rational p_tuple_value(const ProbabilisticCircuit& c, const std::vector<std::uint64_t>& xs);

// A verifier circuit with a designated instance/witness input split: wires
// 0..x_bits-1 carry the instance, the rest the witness. One output bit.
struct Verifier {
    ClassicalCircuit circuit;
    int x_bits = 0;
    int y_bits() const { return circuit.in_bits - x_bits; }
    void validate() const;
};

struct ProbabilisticVerifier {
    ProbabilisticCircuit circuit;
    int x_bits = 0;
    int y_bits() const { return circuit.in_bits() - x_bits; }
    void validate() const;
};

// Deterministic reductions: f(y, b) = (y, b or V(x,y)) has a 2-clique iff
// some witness is accepted; f(y) = (y1 and V, not y1 and V) has a
// 2-independent set iff some witness is accepted.
ClassicalCircuit np_reduce_clique(const Verifier& v, std::uint64_t x);
ClassicalCircuit np_reduce_is(const Verifier& v, std::uint64_t x);

// Probabilistic counterparts on probabilistic verifiers.
ProbabilisticCircuit ma_reduce_clique(const ProbabilisticVerifier& v, std::uint64_t x);
ProbabilisticCircuit ma_reduce_is(const ProbabilisticVerifier& v, std::uint64_t x);

// k-to-2 reductions. Deterministic: g flags a k-wise collision of distinct
// inputs / the all-distinct-images indicator. Probabilistic: g samples a
// uniform pair (i, j) and reports the pairwise collision/distinctness, so a
// tuple value alpha maps to 2 alpha / k(k-1) for cliques and
// 1 - 2(1 - alpha)/k(k-1) for independent sets (k >= 3).
ClassicalCircuit k_to_2_clique_det(const ClassicalCircuit& f, int k);
ClassicalCircuit k_to_2_is_det(const ClassicalCircuit& f, int k);
ProbabilisticCircuit k_to_2_clique_prob(const ProbabilisticCircuit& f, int k);
ProbabilisticCircuit k_to_2_is_prob(const ProbabilisticCircuit& f, int k);

// Circuit with the given truth table (out_bits-wide entries, one per input).
ClassicalCircuit circuit_from_table(int in_bits, int out_bits,
                                    const std::vector<std::uint64_t>& table);

// DIMACS CNF import as a SAT verifier: variables become witness bits, the
// output is the conjunction of clauses. x_bits = 0.
Verifier verifier_from_dimacs(const std::string& text);
bool exhaustive_sat(const Verifier& v);  // enumerates all witnesses

// Exact transition matrix N(y|x) of a probabilistic circuit over all inputs,
// rows indexed by output value (dense over 2^out_bits), columns by input.
std::vector<std::vector<Rational>> transition_matrix(const ProbabilisticCircuit& c);

}  // namespace qclique::classical
