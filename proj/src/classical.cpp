#include "qclique/classical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qclique/linalg.hpp"

namespace qclique::classical {

void ClassicalCircuit::validate() const {
    if (in_bits < 0) throw ValidationError("classical circuit: negative input count");
    if (out_bits() > 64) throw ValidationError("classical circuit: more than 64 output bits");
    int width = in_bits;
    for (const auto& g : gates) {
        if (g.a < 0 || g.a >= width || g.b < 0 || g.b >= width)
            throw ValidationError("classical circuit: gate reads an undefined wire");
        ++width;
    }
    for (int o : outputs)
        if (o < 0 || o >= width) throw ValidationError("classical circuit: output reads an undefined wire");
}

std::uint64_t ClassicalCircuit::eval(std::uint64_t x) const {
    std::vector<std::uint8_t> w(static_cast<std::size_t>(in_bits) + gates.size());
    for (int i = 0; i < in_bits; ++i) w[static_cast<std::size_t>(i)] = (x >> i) & 1;
    std::size_t next = static_cast<std::size_t>(in_bits);
    for (const auto& g : gates)
        w[next++] = !(w[static_cast<std::size_t>(g.a)] & w[static_cast<std::size_t>(g.b)]);
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < outputs.size(); ++j)
        out |= static_cast<std::uint64_t>(w[static_cast<std::size_t>(outputs[j])]) << j;
    return out;
}

std::vector<std::uint64_t> ClassicalCircuit::eval_lanes(const std::vector<std::uint64_t>& lanes) const {
    if (lanes.size() != static_cast<std::size_t>(in_bits))
        throw ValidationError("classical circuit: lane count mismatch");
    std::vector<std::uint64_t> w(static_cast<std::size_t>(in_bits) + gates.size());
    std::copy(lanes.begin(), lanes.end(), w.begin());
    std::size_t next = static_cast<std::size_t>(in_bits);
    for (const auto& g : gates)
        w[next++] = ~(w[static_cast<std::size_t>(g.a)] & w[static_cast<std::size_t>(g.b)]);
    std::vector<std::uint64_t> out(outputs.size());
    for (std::size_t j = 0; j < outputs.size(); ++j) out[j] = w[static_cast<std::size_t>(outputs[j])];
    return out;
}

CircuitBuilder::CircuitBuilder(int in_bits) {
    c_.in_bits = in_bits;
    width_ = in_bits;
}

int CircuitBuilder::input(int i) const {
    if (i < 0 || i >= c_.in_bits) throw ValidationError("builder: input index out of range");
    return i;
}

int CircuitBuilder::nand(int a, int b) {
    c_.gates.push_back({a, b});
    return width_++;
}

int CircuitBuilder::not_(int a) { return nand(a, a); }
int CircuitBuilder::and_(int a, int b) { return not_(nand(a, b)); }
int CircuitBuilder::or_(int a, int b) { return nand(not_(a), not_(b)); }
int CircuitBuilder::xor_(int a, int b) {
    int n = nand(a, b);
    return nand(nand(a, n), nand(b, n));
}
int CircuitBuilder::eq(int a, int b) { return not_(xor_(a, b)); }

int CircuitBuilder::const1() {
    if (cached_const1_ < 0) {
        if (c_.in_bits < 1) throw ValidationError("builder: constants need at least one input wire");
        cached_const1_ = nand(0, not_(0));
    }
    return cached_const1_;
}

int CircuitBuilder::const0() { return not_(const1()); }

int CircuitBuilder::and_all(const std::vector<int>& ws) {
    if (ws.empty()) return const1();
    int acc = ws[0];
    for (std::size_t i = 1; i < ws.size(); ++i) acc = and_(acc, ws[i]);
    return acc;
}

int CircuitBuilder::or_all(const std::vector<int>& ws) {
    if (ws.empty()) return const0();
    int acc = ws[0];
    for (std::size_t i = 1; i < ws.size(); ++i) acc = or_(acc, ws[i]);
    return acc;
}

int CircuitBuilder::bus_eq(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw ValidationError("builder: bus width mismatch");
    std::vector<int> eqs;
    for (std::size_t i = 0; i < a.size(); ++i) eqs.push_back(eq(a[i], b[i]));
    return and_all(eqs);
}

std::vector<int> CircuitBuilder::inline_circuit(const ClassicalCircuit& sub,
                                                const std::vector<int>& inputs) {
    if (inputs.size() != static_cast<std::size_t>(sub.in_bits))
        throw ValidationError("builder: inline input count mismatch");
    std::vector<int> map(static_cast<std::size_t>(sub.in_bits) + sub.gates.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) map[i] = inputs[i];
    std::size_t next = static_cast<std::size_t>(sub.in_bits);
    for (const auto& g : sub.gates) {
        map[next++] = nand(map[static_cast<std::size_t>(g.a)], map[static_cast<std::size_t>(g.b)]);
    }
    std::vector<int> outs;
    for (int o : sub.outputs) outs.push_back(map[static_cast<std::size_t>(o)]);
    return outs;
}

void CircuitBuilder::set_outputs(std::vector<int> outs) { c_.outputs = std::move(outs); }

ClassicalCircuit CircuitBuilder::take() {
    c_.validate();
    return std::move(c_);
}

namespace {

constexpr std::uint64_t kMaxEnumeration = 1u << 20;

// All (output, input) pairs sorted by output then input.
std::vector<std::pair<std::uint64_t, std::uint64_t>> image_table(const ClassicalCircuit& c) {
    c.validate();
    const std::uint64_t count = 1ull << c.in_bits;
    if (count > kMaxEnumeration)
        throw ValidationError("exhaustive search limited to 2^20 inputs");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> table(count);
    const long chunks = static_cast<long>((count + 63) / 64);
#pragma omp parallel for schedule(static) if (default_exec() == Exec::Parallel)
    for (long ch = 0; ch < chunks; ++ch) {
        const std::uint64_t base = static_cast<std::uint64_t>(ch) * 64;
        std::vector<std::uint64_t> lanes(static_cast<std::size_t>(c.in_bits));
        for (int b = 0; b < c.in_bits; ++b) {
            std::uint64_t v = 0;
            for (int lane = 0; lane < 64; ++lane)
                if (((base + static_cast<std::uint64_t>(lane)) >> b) & 1) v |= 1ull << lane;
            lanes[static_cast<std::size_t>(b)] = v;
        }
        auto outs = c.eval_lanes(lanes);
        for (int lane = 0; lane < 64; ++lane) {
            const std::uint64_t x = base + static_cast<std::uint64_t>(lane);
            if (x >= count) break;
            std::uint64_t y = 0;
            for (std::size_t j = 0; j < outs.size(); ++j) y |= ((outs[j] >> lane) & 1) << j;
            table[x] = {y, x};
        }
    }
    std::sort(table.begin(), table.end());
    return table;
}

}  // namespace

WitnessResult has_k_clique(const ClassicalCircuit& c, int k) {
    if (k < 1) throw ValidationError("has_k_clique: k must be positive");
    auto table = image_table(c);
    WitnessResult res;
    std::size_t run_start = 0;
    for (std::size_t i = 1; i <= table.size(); ++i) {
        if (i == table.size() || table[i].first != table[run_start].first) {
            if (i - run_start >= static_cast<std::size_t>(k)) {
                res.found = true;
                for (std::size_t j = run_start; j < run_start + static_cast<std::size_t>(k); ++j)
                    res.witness.push_back(table[j].second);
                return res;
            }
            run_start = i;
        }
    }
    return res;
}

WitnessResult has_k_is(const ClassicalCircuit& c, int k) {
    if (k < 1) throw ValidationError("has_k_is: k must be positive");
    auto table = image_table(c);
    WitnessResult res;
    std::size_t run_start = 0;
    for (std::size_t i = 1; i <= table.size(); ++i) {
        if (i == table.size() || table[i].first != table[run_start].first) {
            res.witness.push_back(table[run_start].second);
            if (res.witness.size() == static_cast<std::size_t>(k)) {
                res.found = true;
                return res;
            }
            run_start = i;
        }
    }
    res.witness.clear();
    return res;
}

int ProbabilisticCircuit::categorical_wires() const {
    int w = 0;
    while ((1 << w) < categorical) ++w;
    return w;
}

int ProbabilisticCircuit::in_bits() const {
    return base.in_bits - random_bits - categorical_wires();
}

void ProbabilisticCircuit::validate() const {
    base.validate();
    if (random_bits < 0 || random_bits > 24)
        throw ValidationError("probabilistic circuit: random bits outside [0, 24]");
    if (categorical < 1) throw ValidationError("probabilistic circuit: empty categorical register");
    if (in_bits() < 0) throw ValidationError("probabilistic circuit: register split exceeds inputs");
}

std::map<std::uint64_t, std::uint64_t> ProbabilisticCircuit::distribution(std::uint64_t x) const {
    validate();
    const int n = in_bits();
    std::map<std::uint64_t, std::uint64_t> hist;
    const std::uint64_t r_count = 1ull << random_bits;
    for (int t = 0; t < categorical; ++t)
        for (std::uint64_t r = 0; r < r_count; ++r) {
            std::uint64_t packed = x | (r << n) | (static_cast<std::uint64_t>(t) << (n + random_bits));
            ++hist[base.eval(packed)];
        }
    return hist;
}

Rational collision_prob(const ProbabilisticCircuit& c, std::uint64_t x, std::uint64_t x2) {
    auto d1 = c.distribution(x);
    auto d2 = c.distribution(x2);
    __int128 num = 0;
    for (const auto& [y, n1] : d1) {
        auto it = d2.find(y);
        if (it != d2.end()) num += static_cast<__int128>(n1) * it->second;
    }
    const __int128 den_side = static_cast<__int128>(c.categorical) << c.random_bits;
    return Rational::from_int128(num, den_side * den_side);
}

Rational p_tuple_value(const ProbabilisticCircuit& c, const std::vector<std::uint64_t>& xs) {
    const int k = static_cast<int>(xs.size());
    if (k < 2) throw ValidationError("p_tuple_value: need at least two inputs");
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (xs[static_cast<std::size_t>(i)] == xs[static_cast<std::size_t>(j)])
                throw ValidationError("p_tuple_value: inputs must be distinct");
    Rational sum(0);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            sum += collision_prob(c, xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]);
    return sum / Rational(static_cast<std::int64_t>(k) * (k - 1) / 2);
}

void Verifier::validate() const {
    circuit.validate();
    if (x_bits < 0 || x_bits > circuit.in_bits) throw ValidationError("verifier: bad input split");
    if (circuit.out_bits() != 1) throw ValidationError("verifier: must output one bit");
}

void ProbabilisticVerifier::validate() const {
    circuit.validate();
    if (x_bits < 0 || x_bits > circuit.in_bits()) throw ValidationError("verifier: bad input split");
    if (circuit.base.out_bits() != 1) throw ValidationError("verifier: must output one bit");
}

namespace {

std::vector<int> constant_wires(CircuitBuilder& b, std::uint64_t value, int bits) {
    std::vector<int> ws;
    for (int i = 0; i < bits; ++i) ws.push_back(((value >> i) & 1) ? b.const1() : b.const0());
    return ws;
}

}  // namespace

ClassicalCircuit np_reduce_clique(const Verifier& v, std::uint64_t x) {
    v.validate();
    const int p = v.y_bits();
    CircuitBuilder b(p + 1);
    std::vector<int> inputs = constant_wires(b, x, v.x_bits);
    for (int i = 0; i < p; ++i) inputs.push_back(i);
    int accept = b.inline_circuit(v.circuit, inputs)[0];
    std::vector<int> outs;
    for (int i = 0; i < p; ++i) outs.push_back(i);
    outs.push_back(b.or_(p, accept));
    b.set_outputs(std::move(outs));
    return b.take();
}

ClassicalCircuit np_reduce_is(const Verifier& v, std::uint64_t x) {
    v.validate();
    const int p = v.y_bits();
    if (p < 1) throw ValidationError("np_reduce_is: verifier needs at least one witness bit");
    CircuitBuilder b(p);
    std::vector<int> inputs = constant_wires(b, x, v.x_bits);
    for (int i = 0; i < p; ++i) inputs.push_back(i);
    int accept = b.inline_circuit(v.circuit, inputs)[0];
    int y1 = 0;  // first witness bit
    b.set_outputs({b.and_(y1, accept), b.and_(b.not_(y1), accept)});
    return b.take();
}

ProbabilisticCircuit ma_reduce_clique(const ProbabilisticVerifier& v, std::uint64_t x) {
    v.validate();
    const int p = v.y_bits();
    const int l = v.circuit.random_bits;
    const int cw = v.circuit.categorical_wires();
    CircuitBuilder b(p + 1 + l + cw);
    std::vector<int> inputs = constant_wires(b, x, v.x_bits);
    for (int i = 0; i < p; ++i) inputs.push_back(i);
    for (int i = 0; i < l + cw; ++i) inputs.push_back(p + 1 + i);
    int accept = b.inline_circuit(v.circuit.base, inputs)[0];
    std::vector<int> outs;
    for (int i = 0; i < p; ++i) outs.push_back(i);
    outs.push_back(b.or_(accept, p));
    b.set_outputs(std::move(outs));
    ProbabilisticCircuit out;
    out.base = b.take();
    out.random_bits = l;
    out.categorical = v.circuit.categorical;
    return out;
}

ProbabilisticCircuit ma_reduce_is(const ProbabilisticVerifier& v, std::uint64_t x) {
    v.validate();
    const int p = v.y_bits();
    if (p < 1) throw ValidationError("ma_reduce_is: verifier needs at least one witness bit");
    const int l = v.circuit.random_bits;
    const int cw = v.circuit.categorical_wires();
    CircuitBuilder b(p + l + cw);
    std::vector<int> inputs = constant_wires(b, x, v.x_bits);
    for (int i = 0; i < p; ++i) inputs.push_back(i);
    for (int i = 0; i < l + cw; ++i) inputs.push_back(p + i);
    int accept = b.inline_circuit(v.circuit.base, inputs)[0];
    int y1 = 0;
    b.set_outputs({b.and_(y1, accept), b.and_(b.not_(y1), accept)});
    ProbabilisticCircuit out;
    out.base = b.take();
    out.random_bits = l;
    out.categorical = v.circuit.categorical;
    return out;
}

namespace {

std::vector<int> block(int base, int width) {
    std::vector<int> ws;
    for (int i = 0; i < width; ++i) ws.push_back(base + i);
    return ws;
}

int all_distinct(CircuitBuilder& b, const std::vector<std::vector<int>>& xs) {
    std::vector<int> neqs;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j) neqs.push_back(b.not_(b.bus_eq(xs[i], xs[j])));
    return b.and_all(neqs);
}

}  // namespace

ClassicalCircuit k_to_2_clique_det(const ClassicalCircuit& f, int k) {
    f.validate();
    if (k < 2) throw ValidationError("k_to_2: k must be at least 2");
    const int n = f.in_bits;
    CircuitBuilder b(n * k + 1);
    std::vector<std::vector<int>> xs;
    for (int i = 0; i < k; ++i) xs.push_back(block(i * n, n));
    std::vector<std::vector<int>> images;
    for (int i = 0; i < k; ++i) images.push_back(b.inline_circuit(f, xs[static_cast<std::size_t>(i)]));
    std::vector<int> eqs;
    for (int i = 1; i < k; ++i) eqs.push_back(b.bus_eq(images[0], images[static_cast<std::size_t>(i)]));
    int collide = b.and_all(eqs);
    int flag = b.and_(collide, all_distinct(b, xs));
    std::vector<int> outs;
    for (int i = 0; i < n * k; ++i) outs.push_back(i);
    outs.push_back(b.or_(n * k, flag));
    b.set_outputs(std::move(outs));
    return b.take();
}

ClassicalCircuit k_to_2_is_det(const ClassicalCircuit& f, int k) {
    f.validate();
    if (k < 2) throw ValidationError("k_to_2: k must be at least 2");
    const int n = f.in_bits;
    CircuitBuilder b(n * k);
    std::vector<std::vector<int>> xs;
    for (int i = 0; i < k; ++i) xs.push_back(block(i * n, n));
    std::vector<std::vector<int>> images;
    for (int i = 0; i < k; ++i) images.push_back(b.inline_circuit(f, xs[static_cast<std::size_t>(i)]));
    b.set_outputs({b.and_(all_distinct(b, xs), all_distinct(b, images))});
    return b.take();
}

namespace {

struct PairSelect {
    std::vector<int> xa, xb;  // muxed input blocks
    std::vector<int> cat;     // the pair-index wires (part of the output)
};

// Mux the pair (x_i, x_j) selected by the categorical register.
PairSelect select_pair(CircuitBuilder& b, const std::vector<std::vector<int>>& xs, int cat_base,
                       int cat_wires, int pair_count) {
    const int n = static_cast<int>(xs[0].size());
    const int k = static_cast<int>(xs.size());
    PairSelect sel;
    sel.cat = block(cat_base, cat_wires);
    std::vector<int> indicators;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
    for (int t = 0; t < pair_count; ++t) {
        std::vector<int> bits;
        for (int w = 0; w < cat_wires; ++w) {
            int wire = sel.cat[static_cast<std::size_t>(w)];
            bits.push_back(((t >> w) & 1) ? wire : b.not_(wire));
        }
        indicators.push_back(b.and_all(bits));
    }
    for (int bit = 0; bit < n; ++bit) {
        std::vector<int> a_terms, b_terms;
        for (int t = 0; t < pair_count; ++t) {
            a_terms.push_back(b.and_(indicators[static_cast<std::size_t>(t)],
                                     xs[static_cast<std::size_t>(pairs[static_cast<std::size_t>(t)].first)]
                                       [static_cast<std::size_t>(bit)]));
            b_terms.push_back(b.and_(indicators[static_cast<std::size_t>(t)],
                                     xs[static_cast<std::size_t>(pairs[static_cast<std::size_t>(t)].second)]
                                       [static_cast<std::size_t>(bit)]));
        }
        sel.xa.push_back(b.or_all(a_terms));
        sel.xb.push_back(b.or_all(b_terms));
    }
    return sel;
}

}  // namespace

ProbabilisticCircuit k_to_2_clique_prob(const ProbabilisticCircuit& f, int k) {
    f.validate();
    if (k < 2) throw ValidationError("k_to_2: k must be at least 2");
    if (f.categorical != 1)
        throw ValidationError("k_to_2: base circuit must use plain random bits");
    const int n = f.in_bits();
    const int m = f.random_bits;
    const int pair_count = k * (k - 1) / 2;
    ProbabilisticCircuit out;
    out.random_bits = 2 * m;
    out.categorical = pair_count;
    int cw = 0;
    while ((1 << cw) < pair_count) ++cw;

    CircuitBuilder b(n * k + 1 + 2 * m + cw);
    std::vector<std::vector<int>> xs;
    for (int i = 0; i < k; ++i) xs.push_back(block(i * n, n));
    const int b_wire = n * k;
    const int r1 = n * k + 1, r2 = r1 + m, cat_base = r2 + m;
    auto sel = select_pair(b, xs, cat_base, cw, pair_count);

    std::vector<int> in_a = sel.xa, in_b = sel.xb;
    for (int i = 0; i < m; ++i) in_a.push_back(r1 + i);
    for (int i = 0; i < m; ++i) in_b.push_back(r2 + i);
    auto fa = b.inline_circuit(f.base, in_a);
    auto fb = b.inline_circuit(f.base, in_b);
    int delta = b.bus_eq(fa, fb);
    int d = all_distinct(b, xs);

    std::vector<int> outs;
    for (int i = 0; i < n * k; ++i) outs.push_back(i);
    outs.push_back(b.or_(b_wire, delta));
    outs.push_back(b.or_(b_wire, d));
    for (int w : sel.cat) outs.push_back(w);
    b.set_outputs(std::move(outs));
    out.base = b.take();
    return out;
}

ProbabilisticCircuit k_to_2_is_prob(const ProbabilisticCircuit& f, int k) {
    f.validate();
    if (k < 3) throw ValidationError("k_to_2 independent set: k must be at least 3");
    if (f.categorical != 1)
        throw ValidationError("k_to_2: base circuit must use plain random bits");
    const int n = f.in_bits();
    const int m = f.random_bits;
    const int pair_count = k * (k - 1) / 2;
    ProbabilisticCircuit out;
    out.random_bits = 2 * m;
    out.categorical = pair_count;
    int cw = 0;
    while ((1 << cw) < pair_count) ++cw;

    CircuitBuilder b(n * k + 2 * m + cw);
    std::vector<std::vector<int>> xs;
    for (int i = 0; i < k; ++i) xs.push_back(block(i * n, n));
    const int r1 = n * k, r2 = r1 + m, cat_base = r2 + m;
    auto sel = select_pair(b, xs, cat_base, cw, pair_count);

    std::vector<int> in_a = sel.xa, in_b = sel.xb;
    for (int i = 0; i < m; ++i) in_a.push_back(r1 + i);
    for (int i = 0; i < m; ++i) in_b.push_back(r2 + i);
    auto fa = b.inline_circuit(f.base, in_a);
    auto fb = b.inline_circuit(f.base, in_b);
    int differ = b.not_(b.bus_eq(fa, fb));
    int d = b.and_(all_distinct(b, xs), differ);

    std::vector<int> outs;
    outs.push_back(d);
    for (int w : sel.cat) outs.push_back(w);
    b.set_outputs(std::move(outs));
    out.base = b.take();
    return out;
}

ClassicalCircuit circuit_from_table(int in_bits, int out_bits,
                                    const std::vector<std::uint64_t>& table) {
    if (table.size() != (1ull << in_bits)) throw ValidationError("truth table size mismatch");
    CircuitBuilder b(in_bits);
    std::vector<int> outs;
    for (int bit = 0; bit < out_bits; ++bit) {
        std::vector<int> minterms;
        for (std::uint64_t v = 0; v < table.size(); ++v) {
            if (((table[v] >> bit) & 1) == 0) continue;
            std::vector<int> lits;
            for (int i = 0; i < in_bits; ++i) lits.push_back(((v >> i) & 1) ? i : b.not_(i));
            minterms.push_back(b.and_all(lits));
        }
        outs.push_back(b.or_all(minterms));
    }
    b.set_outputs(std::move(outs));
    return b.take();
}

Verifier verifier_from_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int vars = -1, clauses = -1;
    std::vector<std::vector<int>> cnf;
    std::vector<int> current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string tag, fmt;
            ls >> tag >> fmt >> vars >> clauses;
            if (fmt != "cnf") throw ValidationError("dimacs: expected cnf format");
            continue;
        }
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (!current.empty()) cnf.push_back(current);
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
    }
    if (!current.empty()) cnf.push_back(current);
    if (vars < 1) throw ValidationError("dimacs: missing or bad problem line");

    CircuitBuilder b(vars);
    std::vector<int> clause_wires;
    for (const auto& cl : cnf) {
        std::vector<int> lits;
        for (int lit : cl) {
            int v = std::abs(lit) - 1;
            if (v >= vars) throw ValidationError("dimacs: literal out of range");
            lits.push_back(lit > 0 ? v : b.not_(v));
        }
        clause_wires.push_back(b.or_all(lits));
    }
    b.set_outputs({b.and_all(clause_wires)});
    Verifier v;
    v.circuit = b.take();
    v.x_bits = 0;
    return v;
}

bool exhaustive_sat(const Verifier& v) {
    v.validate();
    const int y = v.y_bits();
    if (y > 20) throw ValidationError("exhaustive_sat: too many variables");
    for (std::uint64_t w = 0; w < (1ull << y); ++w)
        if (v.circuit.eval(w << v.x_bits | 0) & 1) return true;
    return false;
}

std::vector<std::vector<Rational>> transition_matrix(const ProbabilisticCircuit& c) {
    c.validate();
    const int n = c.in_bits();
    if (n > 10 || c.base.out_bits() > 10)
        throw ValidationError("transition_matrix: register too large for a dense matrix");
    const std::uint64_t xs = 1ull << n;
    const std::uint64_t ys = 1ull << c.base.out_bits();
    const Rational den(static_cast<std::int64_t>(c.categorical) << c.random_bits);
    std::vector<std::vector<Rational>> m(ys, std::vector<Rational>(xs, Rational(0)));
    for (std::uint64_t x = 0; x < xs; ++x)
        for (const auto& [y, cnt] : c.distribution(x))
            m[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] =
                Rational(static_cast<std::int64_t>(cnt)) / den;
    return m;
}

}  // namespace qclique::classical
