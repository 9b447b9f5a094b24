#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qclique/channel.hpp"
#include "qclique/classical.hpp"

using namespace qclique;
using namespace qclique::classical;

namespace {

ClassicalCircuit identity_circuit(int n) {
    CircuitBuilder b(n);
    std::vector<int> outs;
    for (int i = 0; i < n; ++i) outs.push_back(i);
    b.set_outputs(std::move(outs));
    return b.take();
}

ClassicalCircuit constant_zero_circuit(int n, int out_bits) {
    CircuitBuilder b(n);
    std::vector<int> outs;
    for (int i = 0; i < out_bits; ++i) outs.push_back(b.const0());
    b.set_outputs(std::move(outs));
    return b.take();
}

// Verifier with a fixed accept set over its witness bits (x_bits = 0).
Verifier verifier_from_accepts(int y_bits, const std::vector<std::uint64_t>& accepted) {
    std::vector<std::uint64_t> table(1ull << y_bits, 0);
    for (auto a : accepted) table[a] = 1;
    Verifier v;
    v.circuit = circuit_from_table(y_bits, 1, table);
    v.x_bits = 0;
    return v;
}

// Probabilistic verifier accepting iff the categorical index is below
// `numerator`, so the acceptance probability is exactly numerator/categories.
ProbabilisticVerifier categorical_verifier(int y_bits, int numerator, int categories) {
    int cw = 0;
    while ((1 << cw) < categories) ++cw;
    CircuitBuilder b(y_bits + cw);
    std::vector<int> hits;
    for (int t = 0; t < numerator; ++t) {
        std::vector<int> bits;
        for (int w = 0; w < cw; ++w) bits.push_back(((t >> w) & 1) ? y_bits + w : b.not_(y_bits + w));
        hits.push_back(b.and_all(bits));
    }
    b.set_outputs({b.or_all(hits)});
    ProbabilisticVerifier v;
    v.circuit.base = b.take();
    v.circuit.random_bits = 0;
    v.circuit.categorical = categories;
    v.x_bits = 0;
    return v;
}

}  // namespace

TEST_CASE("rational arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)).str() == "1/2");
    CHECK((Rational(2, 3) * Rational(3, 4)) == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(1, -2).num() == -1);
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("circuit evaluation basics") {
    SUBCASE("identity") {
        auto c = identity_circuit(3);
        for (std::uint64_t x = 0; x < 8; ++x) CHECK(c.eval(x) == x);
    }
    SUBCASE("constant zero") {
        auto c = constant_zero_circuit(2, 3);
        for (std::uint64_t x = 0; x < 4; ++x) CHECK(c.eval(x) == 0);
    }
    SUBCASE("a single NAND gate") {
        CircuitBuilder b(2);
        b.set_outputs({b.nand(0, 1)});
        auto c = b.take();
        CHECK(c.eval(0b11) == 0);
        CHECK(c.eval(0b01) == 1);
        CHECK(c.eval(0b10) == 1);
        CHECK(c.eval(0b00) == 1);
    }
    SUBCASE("lane evaluation matches scalar") {
        CircuitBuilder b(4);
        int x01 = b.xor_(0, 1);
        b.set_outputs({b.or_(x01, 2), b.and_(2, 3), b.eq(0, 3)});
        auto c = b.take();
        std::vector<std::uint64_t> lanes(4);
        for (int bit = 0; bit < 4; ++bit)
            for (int lane = 0; lane < 16; ++lane)
                if ((lane >> bit) & 1) lanes[static_cast<std::size_t>(bit)] |= 1ull << lane;
        auto outs = c.eval_lanes(lanes);
        for (int lane = 0; lane < 16; ++lane) {
            std::uint64_t packed = 0;
            for (std::size_t j = 0; j < outs.size(); ++j) packed |= ((outs[j] >> lane) & 1) << j;
            CHECK(packed == c.eval(static_cast<std::uint64_t>(lane)));
        }
    }
}

TEST_CASE("exhaustive clique and independent set decisions") {
    SUBCASE("injective function has no 2-clique") {
        auto r = has_k_clique(identity_circuit(4), 2);
        CHECK_FALSE(r.found);
    }
    SUBCASE("constant function has every clique up to the domain size") {
        auto c = constant_zero_circuit(3, 2);
        CHECK(has_k_clique(c, 8).found);
        CHECK_FALSE(has_k_clique(c, 9).found);
    }
    SUBCASE("identity has independent sets up to the domain size") {
        CHECK(has_k_is(identity_circuit(3), 8).found);
        CHECK_FALSE(has_k_is(identity_circuit(3), 9).found);
    }
    SUBCASE("constant function has no 2-independent set") {
        CHECK_FALSE(has_k_is(constant_zero_circuit(3, 2), 2).found);
    }
    SUBCASE("oversized enumeration is rejected") {
        ClassicalCircuit c = identity_circuit(2);
        c.in_bits = 21;
        for (int i = 2; i < 21; ++i) c.outputs.push_back(i);
        CHECK_THROWS_AS(has_k_clique(c, 2), ValidationError);
    }
}

TEST_CASE("deterministic reductions from a verifier") {
    SUBCASE("rejecting verifier gives an injective function") {
        auto v = verifier_from_accepts(3, {});
        auto f = np_reduce_clique(v, 0);
        CHECK_FALSE(has_k_clique(f, 2).found);
        auto g = np_reduce_is(v, 0);
        CHECK_FALSE(has_k_is(g, 2).found);
    }
    SUBCASE("accepting verifier plants a clique at each witness") {
        auto v = verifier_from_accepts(2, {0, 1, 2, 3});
        auto f = np_reduce_clique(v, 0);
        CHECK(has_k_clique(f, 2).found);
        auto g = np_reduce_is(v, 0);
        CHECK(has_k_is(g, 2).found);
    }
    SUBCASE("single planted witness yields exactly the expected pair") {
        const std::uint64_t planted = 5;
        auto v = verifier_from_accepts(3, {planted});
        auto f = np_reduce_clique(v, 0);
        auto r = has_k_clique(f, 2);
        REQUIRE(r.found);
        REQUIRE(r.witness.size() == 2);
        CHECK(r.witness[0] == planted);
        CHECK(r.witness[1] == (planted | (1ull << 3)));
    }
    SUBCASE("clique decision matches exhaustive SAT on CNF instances") {
        const char* sat_text =
            "c simple satisfiable instance\n"
            "p cnf 4 3\n"
            "1 -2 0\n"
            "2 3 -4 0\n"
            "-1 4 0\n";
        const char* unsat_text =
            "p cnf 2 4\n"
            "1 2 0\n"
            "1 -2 0\n"
            "-1 2 0\n"
            "-1 -2 0\n";
        for (const char* text : {sat_text, unsat_text}) {
            auto v = verifier_from_dimacs(text);
            bool sat = exhaustive_sat(v);
            CHECK(has_k_clique(np_reduce_clique(v, 0), 2).found == sat);
            CHECK(has_k_is(np_reduce_is(v, 0), 2).found == sat);
        }
    }
}

TEST_CASE("collision probabilities") {
    SUBCASE("deterministic circuits collide with probability zero or one") {
        ProbabilisticCircuit c;
        c.base = constant_zero_circuit(2, 1);
        CHECK(collision_prob(c, 0, 3) == Rational(1));
        ProbabilisticCircuit id;
        id.base = identity_circuit(2);
        CHECK(collision_prob(id, 0, 3) == Rational(0));
    }
    SUBCASE("one random bit XORed into the output gives 1/2") {
        // f(x; r) = x XOR r on one bit.
        CircuitBuilder b(2);
        b.set_outputs({b.xor_(0, 1)});
        ProbabilisticCircuit c;
        c.base = b.take();
        c.random_bits = 1;
        CHECK(collision_prob(c, 0, 1) == Rational(1, 2));
    }
    SUBCASE("uniform output over two values gives tuple value 1/2 for k = 3") {
        // f(x; r) = r, ignoring the two input bits.
        CircuitBuilder b(3);
        b.set_outputs({2});
        ProbabilisticCircuit c;
        c.base = b.take();
        c.random_bits = 1;
        CHECK(p_tuple_value(c, {0, 1, 2}) == Rational(1, 2));
    }
    SUBCASE("duplicate inputs are rejected") {
        ProbabilisticCircuit id;
        id.base = identity_circuit(2);
        CHECK_THROWS_AS(p_tuple_value(id, {1, 1, 2}), ValidationError);
    }
}

TEST_CASE("probabilistic reductions") {
    SUBCASE("always-accepting verifier gives collision probability one") {
        auto v = categorical_verifier(2, 1, 1);
        auto f = ma_reduce_clique(v, 0);
        // Pair ((y,0), (y,1)): inputs y and y | 2^p.
        CHECK(collision_prob(f, 1, 1 | (1 << 2)) == Rational(1));
    }
    SUBCASE("always-rejecting verifier is injective") {
        auto v = categorical_verifier(2, 0, 1);
        // Accept set empty: the verifier circuit must output 0 on everything.
        auto f = ma_reduce_clique(v, 0);
        CHECK(collision_prob(f, 1, 1 | (1 << 2)) == Rational(0));
    }
    SUBCASE("acceptance 3/4 via two random bits transfers exactly") {
        // Accept iff r1 or r2.
        CircuitBuilder b(2 + 2);
        b.set_outputs({b.or_(2, 3)});
        ProbabilisticVerifier v;
        v.circuit.base = b.take();
        v.circuit.random_bits = 2;
        v.x_bits = 0;
        auto f = ma_reduce_clique(v, 0);
        CHECK(collision_prob(f, 2, 2 | (1 << 2)) == Rational(3, 4));
    }
    SUBCASE("acceptance 2/3 via the categorical register") {
        auto v = categorical_verifier(2, 2, 3);
        auto f = ma_reduce_clique(v, 0);
        CHECK(collision_prob(f, 2, 2 | (1 << 2)) == Rational(2, 3));
        // Yes side for the independent-set reduction: witnesses with
        // different leading bits are confused with probability exactly 1/9.
        auto g = ma_reduce_is(v, 0);
        CHECK(collision_prob(g, 0b01, 0b10) == Rational(1, 9));
    }
    SUBCASE("no-instance bound 4/9 for the independent-set reduction") {
        // Acceptance exactly 1/3 for every witness.
        auto v = categorical_verifier(2, 1, 3);
        auto g = ma_reduce_is(v, 0);
        for (std::uint64_t a = 0; a < 4; ++a)
            for (std::uint64_t b2 = a + 1; b2 < 4; ++b2)
                CHECK(collision_prob(g, a, b2) >= Rational(4, 9));
    }
}

TEST_CASE("k-to-2 reductions, deterministic, exhausted over all small functions") {
    const int k = 3;
    SUBCASE("two-bit inputs, one output bit") {
        for (std::uint64_t code = 0; code < 16; ++code) {
            std::vector<std::uint64_t> table(4);
            for (int v = 0; v < 4; ++v) table[static_cast<std::size_t>(v)] = (code >> v) & 1;
            auto f = circuit_from_table(2, 1, table);
            CHECK(has_k_clique(k_to_2_clique_det(f, k), 2).found == has_k_clique(f, k).found);
            CHECK(has_k_is(k_to_2_is_det(f, k), 2).found == has_k_is(f, k).found);
        }
    }
    SUBCASE("two-bit inputs, two output bits") {
        for (std::uint64_t code = 0; code < 256; ++code) {
            std::vector<std::uint64_t> table(4);
            for (int v = 0; v < 4; ++v) table[static_cast<std::size_t>(v)] = (code >> (2 * v)) & 3;
            auto f = circuit_from_table(2, 2, table);
            CHECK(has_k_clique(k_to_2_clique_det(f, k), 2).found == has_k_clique(f, k).found);
            CHECK(has_k_is(k_to_2_is_det(f, k), 2).found == has_k_is(f, k).found);
        }
    }
    SUBCASE("constant and injective sanity") {
        CHECK(has_k_clique(k_to_2_clique_det(constant_zero_circuit(2, 1), 3), 2).found);
        CHECK_FALSE(has_k_clique(k_to_2_clique_det(identity_circuit(2), 3), 2).found);
    }
}

TEST_CASE("k-to-2 reductions, probabilistic value maps") {
    const int k = 3;
    SUBCASE("planted full collision maps to 2 alpha / k(k-1) = 1/3") {
        ProbabilisticCircuit f;
        f.base = constant_zero_circuit(2, 1);
        auto g = k_to_2_clique_prob(f, k);
        // Distinct triple (0,1,2) packed in three 2-bit blocks, flag bit 0/1.
        std::uint64_t xs = 0b100100;  // x1=0, x2=1, x3=2
        std::uint64_t lo = xs, hi = xs | (1ull << 6);
        CHECK(collision_prob(g, lo, hi) == Rational(1, 3));
    }
    SUBCASE("deterministic tuple value transfers exactly") {
        // f(x) = first bit of x: triple (0,1,2) has pairs (0,1):neq? f(0)=0,
        // f(1)=1, f(2)=0 -> collisions: (0,2) only: tuple = 1/3.
        CircuitBuilder b(2);
        b.set_outputs({0});
        ProbabilisticCircuit f;
        f.base = b.take();
        ProbabilisticCircuit pf = f;
        CHECK(p_tuple_value(pf, {0, 1, 2}) == Rational(1, 3));
        auto g = k_to_2_clique_prob(f, k);
        std::uint64_t xs = 0b100100;
        CHECK(collision_prob(g, xs, xs | (1ull << 6)) == Rational(1, 3) * Rational(1, 3));
    }
    SUBCASE("independent-set map 1 - 2(1-alpha)/k(k-1)") {
        // f(x; r) = r: every pair collides with probability 1/2, tuple 1/2.
        CircuitBuilder b(3);
        b.set_outputs({2});
        ProbabilisticCircuit f;
        f.base = b.take();
        f.random_bits = 1;
        auto g = k_to_2_is_prob(f, k);
        // Pair: distinct triple vs the repeated-first-entry triple.
        std::uint64_t distinct = 0b100100;
        std::uint64_t repeated = 0b000000;
        CHECK(collision_prob(g, distinct, repeated) == Rational(1, 6));
    }
    SUBCASE("independent-set reduction needs k >= 3") {
        ProbabilisticCircuit f;
        f.base = identity_circuit(2);
        CHECK_THROWS_AS(k_to_2_is_prob(f, 2), ValidationError);
        CHECK_NOTHROW(k_to_2_clique_prob(f, 2));
    }
}

TEST_CASE("reduction circuit sizes stay linear") {
    auto v = verifier_from_accepts(4, {3, 7});
    auto f = np_reduce_clique(v, 0);
    CHECK(f.size() <= 4 * (v.circuit.size() + 1) + 64);
    auto g = k_to_2_clique_det(identity_circuit(3), 3);
    CHECK(g.size() <= 40 * identity_circuit(3).size() + 200);
}

TEST_CASE("confusability graph consistency with independent sets") {
    // For every two-bit function, the k-independent-set decision agrees with
    // the independence number of the confusability graph.
    for (std::uint64_t code = 0; code < 256; ++code) {
        std::vector<std::uint64_t> table(4);
        for (int v = 0; v < 4; ++v) table[static_cast<std::size_t>(v)] = (code >> (2 * v)) & 3;
        auto f = circuit_from_table(2, 2, table);
        ProbabilisticCircuit pf;
        pf.base = f;
        auto graph = confusability_graph(transition_matrix(pf));
        int alpha = graph.max_independent_set();
        for (int k = 1; k <= 4; ++k) CHECK(has_k_is(f, k).found == (k <= alpha));
    }
}
