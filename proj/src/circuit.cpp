#include "qclique/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace qclique {

namespace gateset {

namespace {
const cplx I_UNIT(0.0, 1.0);

Mat mat2(cplx a, cplx b, cplx c, cplx d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

Mat permutation8(const std::vector<int>& perm) {
    Mat m = Mat::Zero(8, 8);
    for (int i = 0; i < 8; ++i) m(perm[static_cast<std::size_t>(i)], i) = 1.0;
    return m;
}

struct Entry {
    int arity;
    bool parameterized;
};

const std::map<std::string, Entry>& table() {
    static const std::map<std::string, Entry> t = {
        {"I", {1, false}},  {"X", {1, false}},    {"Y", {1, false}},    {"Z", {1, false}},
        {"H", {1, false}},  {"S", {1, false}},    {"T", {1, false}},    {"RY", {1, true}},
        {"CX", {2, false}}, {"CZ", {2, false}},   {"SWAP", {2, false}}, {"CCX", {3, false}},
        {"CSWAP", {3, false}},
    };
    return t;
}

}  // namespace

bool has(const std::string& name) { return table().count(name) > 0; }

bool parameterized(const std::string& name) {
    auto it = table().find(name);
    return it != table().end() && it->second.parameterized;
}

int arity(const std::string& name) {
    auto it = table().find(name);
    if (it == table().end()) throw ValidationError("unknown gate: " + name);
    return it->second.arity;
}

std::vector<std::string> names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : table()) out.push_back(k);
    return out;
}

Mat ry(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return mat2(c, -s, s, c);
}

Mat matrix(const std::string& name, double theta) {
    const double r = 1.0 / std::sqrt(2.0);
    if (name == "I") return Mat::Identity(2, 2);
    if (name == "X") return mat2(0, 1, 1, 0);
    if (name == "Y") return mat2(0, -I_UNIT, I_UNIT, 0);
    if (name == "Z") return mat2(1, 0, 0, -1);
    if (name == "H") return mat2(r, r, r, -r);
    if (name == "S") return mat2(1, 0, 0, I_UNIT);
    if (name == "T") return mat2(1, 0, 0, std::exp(I_UNIT * (M_PI / 4)));
    if (name == "RY") return ry(theta);
    if (name == "CX") {
        Mat m = Mat::Identity(4, 4);
        m(2, 2) = m(3, 3) = 0;
        m(2, 3) = m(3, 2) = 1;
        return m;
    }
    if (name == "CZ") {
        Mat m = Mat::Identity(4, 4);
        m(3, 3) = -1;
        return m;
    }
    if (name == "SWAP") {
        Mat m = Mat::Zero(4, 4);
        m(0, 0) = m(3, 3) = 1;
        m(1, 2) = m(2, 1) = 1;
        return m;
    }
    if (name == "CCX") return permutation8({0, 1, 2, 3, 4, 5, 7, 6});
    if (name == "CSWAP") return permutation8({0, 1, 2, 3, 4, 6, 5, 7});
    throw ValidationError("unknown gate: " + name);
}

}  // namespace gateset

Gate Gate::unitary(std::string name, std::vector<int> wires, double theta) {
    Gate g;
    g.kind = GateKind::Unitary;
    g.name = std::move(name);
    g.theta = theta;
    g.wires = std::move(wires);
    if (gateset::arity(g.name) != static_cast<int>(g.wires.size()))
        throw ValidationError("gate " + g.name + ": wrong wire count");
    g.matrix = gateset::matrix(g.name, theta);
    return g;
}

Gate Gate::raw_unitary(Mat m, std::vector<int> wires) {
    Gate g;
    g.kind = GateKind::Unitary;
    g.matrix = std::move(m);
    g.wires = std::move(wires);
    return g;
}

Gate Gate::prepare(int wire) {
    Gate g;
    g.kind = GateKind::Prepare;
    g.wires = {wire};
    return g;
}

Gate Gate::trace_out(int wire) {
    Gate g;
    g.kind = GateKind::TraceOut;
    g.wires = {wire};
    return g;
}

int Circuit::prepare_count() const {
    return static_cast<int>(
        std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.kind == GateKind::Prepare; }));
}

int Circuit::trace_count() const {
    return static_cast<int>(
        std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.kind == GateKind::TraceOut; }));
}

int Circuit::peak_width() const {
    int w = in_count, peak = in_count;
    for (const auto& g : gates) {
        if (g.kind == GateKind::Prepare) peak = std::max(peak, ++w);
        if (g.kind == GateKind::TraceOut) --w;
    }
    return peak;
}

void Circuit::validate() const {
    if (in_count < 0) throw ValidationError("circuit: negative input count");
    int width = in_count;
    for (const auto& g : gates) {
        switch (g.kind) {
            case GateKind::Prepare:
                if (g.wires.size() != 1 || g.wires[0] != width)
                    throw ValidationError("circuit: prepare must reference the new wire");
                ++width;
                break;
            case GateKind::TraceOut:
                if (g.wires.size() != 1 || g.wires[0] < 0 || g.wires[0] >= width)
                    throw ValidationError("circuit: trace references a dead wire");
                --width;
                break;
            case GateKind::Unitary: {
                const int w = static_cast<int>(g.wires.size());
                if (w < 1 || w > 4) throw ValidationError("circuit: unitary arity out of range");
                std::vector<int> sorted = g.wires;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                    throw ValidationError("circuit: duplicate wire in gate");
                if (sorted.front() < 0 || sorted.back() >= width)
                    throw ValidationError("circuit: gate references a dead wire");
                const long d = 1L << w;
                if (g.matrix.rows() != d || g.matrix.cols() != d)
                    throw ValidationError("circuit: gate matrix size does not match wires");
                if ((g.matrix.adjoint() * g.matrix - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
                    throw ValidationError("circuit: gate matrix is not unitary");
                break;
            }
        }
    }
    if (width != out_count()) throw ValidationError("circuit: width bookkeeping error");
}

bool Circuit::is_canonical() const {
    int phase = 0;  // 0 = prepares, 1 = unitaries, 2 = traces
    for (const auto& g : gates) {
        int p = g.kind == GateKind::Prepare ? 0 : g.kind == GateKind::Unitary ? 1 : 2;
        if (p < phase) return false;
        phase = p;
    }
    return true;
}

namespace {

// A circuit re-described on stable wire ids: inputs 0..in-1, then one id per
// prepared wire in prepare order. During the unitary phase of the canonical
// form every stable id is live and equals its wire index.
struct CanonicalView {
    int in = 0;
    int preps = 0;
    std::vector<Gate> unitaries;  // wires are stable ids
    std::vector<int> traced;      // stable ids in trace order
    std::vector<int> survivors;   // stable ids ascending = output order
};

CanonicalView view_of(const Circuit& c) {
    c.validate();
    CanonicalView v;
    v.in = c.in_count;
    std::vector<int> cur(static_cast<std::size_t>(c.in_count));
    std::iota(cur.begin(), cur.end(), 0);
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case GateKind::Prepare:
                cur.push_back(v.in + v.preps);
                ++v.preps;
                break;
            case GateKind::TraceOut:
                v.traced.push_back(cur[static_cast<std::size_t>(g.wires[0])]);
                cur.erase(cur.begin() + g.wires[0]);
                break;
            case GateKind::Unitary: {
                Gate mapped = g;
                for (auto& w : mapped.wires) w = cur[static_cast<std::size_t>(w)];
                v.unitaries.push_back(std::move(mapped));
                break;
            }
        }
    }
    v.survivors = cur;
    std::sort(v.survivors.begin(), v.survivors.end());
    return v;
}

Circuit from_view(const CanonicalView& v) {
    Circuit out;
    out.in_count = v.in;
    for (int j = 0; j < v.preps; ++j) out.gates.push_back(Gate::prepare(v.in + j));
    for (const auto& g : v.unitaries) out.gates.push_back(g);
    std::vector<int> removed;
    for (int id : v.traced) {
        int idx = id;
        for (int r : removed)
            if (r < id) --idx;
        out.gates.push_back(Gate::trace_out(idx));
        removed.push_back(id);
    }
    out.validate();
    return out;
}

// Transpositions realizing content@w -> target[w] for the wires keyed in
// `target` (a bijection on its key set); other wires are untouched.
std::vector<std::pair<int, int>> permutation_swaps(const std::map<int, int>& target) {
    std::vector<std::pair<int, int>> swaps;
    std::map<int, bool> done;
    for (const auto& [start, unused] : target) {
        if (done[start]) continue;
        std::vector<int> cycle;
        int w = start;
        while (!done[w]) {
            done[w] = true;
            cycle.push_back(w);
            w = target.at(w);
        }
        for (std::size_t i = cycle.size(); i >= 2; --i) swaps.emplace_back(cycle[i - 2], cycle[i - 1]);
    }
    return swaps;
}

}  // namespace

Circuit canonicalize(const Circuit& c) { return from_view(view_of(c)); }

Mat evaluate_matrix(const Circuit& c, const Mat& m_in, Exec exec) {
    c.validate();
    if (m_in.rows() != (1L << c.in_count) || m_in.cols() != m_in.rows())
        throw DimensionError("evaluate: input dimension mismatch");
    int width = c.in_count;
    if (width > max_live_qubits()) throw ValidationError("evaluate: width above the configured cap");
    Mat zero2 = Mat::Zero(2, 2);
    zero2(0, 0) = 1.0;
    Mat m = m_in;
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case GateKind::Prepare:
                if (width + 1 > max_live_qubits())
                    throw ValidationError("evaluate: width above the configured cap");
                m = kernels::kron(m, zero2, exec);
                ++width;
                break;
            case GateKind::TraceOut: {
                std::vector<int> keep;
                for (int i = 0; i < width; ++i)
                    if (i != g.wires[0]) keep.push_back(i);
                m = kernels::partial_trace(m, qubit_dims(width), keep, exec);
                --width;
                break;
            }
            case GateKind::Unitary:
                kernels::apply_unitary(m, width, g.matrix, g.wires, exec);
                break;
        }
    }
    return m;
}

DensityOperator evaluate(const Circuit& c, const DensityOperator& rho, Exec exec) {
    Mat m = evaluate_matrix(c, rho.matrix, exec);
    if (!m.allFinite()) throw ValidationError("evaluate: non-finite output");
    const double tol = tolerances().validation;
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw ValidationError("evaluate: output not hermitian");
    if (std::abs(m.trace().real() - 1.0) > tol) throw ValidationError("evaluate: output trace drifted");
    return DensityOperator::unchecked(std::move(m), qubit_dims(c.out_count()));
}

Gate prepare_superposition_gate(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("superposition weight must lie in [0,1]");
    return Gate::unitary("RY", {0}, 2.0 * std::acos(std::sqrt(p)));
}

namespace {

// Controlled-on-|0> lift of u, control prepended as the most significant wire.
Mat control_on_zero(const Mat& u) {
    const long d = u.rows();
    Mat m = Mat::Identity(2 * d, 2 * d);
    m.topLeftCorner(d, d) = u;
    return m;
}

}  // namespace

Circuit direct_sum(const Circuit& c1_in, const Circuit& c2_in, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("direct_sum: weight must lie in [0,1]");
    const Circuit c1 = c1_in.is_canonical() ? c1_in : canonicalize(c1_in);
    const Circuit c2 = c2_in.is_canonical() ? c2_in : canonicalize(c2_in);
    if (c1.in_count != c2.in_count) throw DimensionError("direct_sum: input counts differ");

    const CanonicalView v1 = view_of(c1);
    const CanonicalView v2 = view_of(c2);
    const int n = c1.in_count;
    const int out1 = static_cast<int>(v1.survivors.size());
    const int out2 = static_cast<int>(v2.survivors.size());
    const int max_out = std::max(out1, out2);
    const int anc = std::max(v1.preps, v2.preps) + std::abs(out1 - out2);

    // Wire layout: 0..n-1 inputs, n = flag, n+1..n+anc shared ancillas,
    // n+anc+1 = dephasing ancilla for the flag measurement.
    const int flag = n;
    const int deph = n + anc + 1;

    Circuit sum;
    sum.in_count = n;
    sum.gates.push_back(Gate::prepare(flag));
    for (int j = 0; j < anc; ++j) sum.gates.push_back(Gate::prepare(n + 1 + j));
    sum.gates.push_back(Gate::prepare(deph));

    Gate up = prepare_superposition_gate(p);
    up.wires = {flag};
    sum.gates.push_back(up);

    // Workspace wires in output order: inputs first, then shared ancillas.
    std::vector<int> workspace;
    for (int i = 0; i < n; ++i) workspace.push_back(i);
    for (int j = 0; j < anc; ++j) workspace.push_back(n + 1 + j);

    auto map_wire = [&](int stable_id) { return stable_id < n ? stable_id : n + 1 + (stable_id - n); };

    auto emit_branch = [&](const CanonicalView& v, int out) {
        for (const auto& g : v.unitaries) {
            std::vector<int> wires = {flag};
            for (int w : g.wires) wires.push_back(map_wire(w));
            sum.gates.push_back(Gate::raw_unitary(control_on_zero(g.matrix), std::move(wires)));
        }
        // Conditional permutation: surviving contents into the first `out`
        // workspace slots in output order, |0> pads right after them, the
        // to-be-traced contents in the tail.
        std::vector<int> sources;
        for (int id : v.survivors) sources.push_back(map_wire(id));
        std::vector<bool> used(static_cast<std::size_t>(deph + 1), false);
        for (int s : sources) used[static_cast<std::size_t>(s)] = true;
        for (int pad = out; pad < max_out; ++pad) {
            for (int j = v.preps; j < anc; ++j) {  // untouched ancillas hold |0> in this branch
                int w = n + 1 + j;
                if (!used[static_cast<std::size_t>(w)]) {
                    used[static_cast<std::size_t>(w)] = true;
                    sources.push_back(w);
                    break;
                }
            }
        }
        if (static_cast<int>(sources.size()) != max_out)
            throw ValidationError("direct_sum: internal pad bookkeeping error");
        std::map<int, int> target;
        for (std::size_t k = 0; k < sources.size(); ++k)
            target[sources[k]] = workspace[k];
        std::vector<int> rest_src, rest_dst;
        for (int w : workspace)
            if (!target.count(w)) rest_src.push_back(w);
        for (std::size_t k = sources.size(); k < workspace.size(); ++k) rest_dst.push_back(workspace[k]);
        for (std::size_t k = 0; k < rest_src.size(); ++k) target[rest_src[k]] = rest_dst[k];
        for (auto [a, b] : permutation_swaps(target))
            sum.gates.push_back(Gate::raw_unitary(control_on_zero(gateset::matrix("SWAP")), {flag, a, b}));
    };

    emit_branch(v1, out1);
    sum.gates.push_back(Gate::unitary("X", {flag}));
    emit_branch(v2, out2);
    sum.gates.push_back(Gate::unitary("X", {flag}));

    // Rotate the flag to the front of the surviving block.
    std::vector<int> survivors;
    for (int k = 0; k < max_out; ++k) survivors.push_back(workspace[static_cast<std::size_t>(k)]);
    survivors.push_back(flag);
    std::vector<int> sorted = survivors;
    std::sort(sorted.begin(), sorted.end());
    std::map<int, int> rot;
    rot[flag] = sorted[0];
    for (int k = 0; k < max_out; ++k)
        rot[workspace[static_cast<std::size_t>(k)]] = sorted[static_cast<std::size_t>(k) + 1];
    for (auto [a, b] : permutation_swaps(rot)) sum.gates.push_back(Gate::unitary("SWAP", {a, b}));

    // Measure the flag in the computational basis, realized as dephasing.
    sum.gates.push_back(Gate::unitary("CX", {sorted[0], deph}));

    // Trace the dephasing ancilla and everything outside the output block.
    std::vector<int> to_trace = {deph};
    for (int w : workspace)
        if (std::find(sorted.begin(), sorted.end(), w) == sorted.end()) to_trace.push_back(w);
    if (std::find(sorted.begin(), sorted.end(), flag) == sorted.end()) to_trace.push_back(flag);
    std::sort(to_trace.rbegin(), to_trace.rend());
    for (int w : to_trace) sum.gates.push_back(Gate::trace_out(w));

    sum.validate();
    return sum;
}

Circuit swap_test_circuit(int n) {
    if (n < 1) throw ValidationError("swap_test_circuit: need at least one qubit per register");
    Circuit c;
    c.in_count = 2 * n;
    const int anc = 2 * n, deph = 2 * n + 1;
    c.gates.push_back(Gate::prepare(anc));
    c.gates.push_back(Gate::prepare(deph));
    c.gates.push_back(Gate::unitary("H", {anc}));
    for (int i = 0; i < n; ++i) c.gates.push_back(Gate::unitary("CSWAP", {anc, i, n + i}));
    c.gates.push_back(Gate::unitary("H", {anc}));
    c.gates.push_back(Gate::unitary("CX", {anc, deph}));
    c.gates.push_back(Gate::trace_out(deph));
    c.validate();
    return c;
}

double wire_outcome_probability(const DensityOperator& out, int wire, int outcome) {
    auto marg = partial_trace(out, {wire});
    return std::clamp(marg.matrix(outcome, outcome).real(), 0.0, 1.0);
}

Circuit tensor_compose(const Circuit& c1_in, const Circuit& c2_in) {
    const CanonicalView v1 = view_of(c1_in.is_canonical() ? c1_in : canonicalize(c1_in));
    const CanonicalView v2 = view_of(c2_in.is_canonical() ? c2_in : canonicalize(c2_in));
    const int n1 = v1.in, n2 = v2.in;

    auto map1 = [&](int id) { return id < n1 ? id : n1 + n2 + (id - n1); };
    auto map2 = [&](int id) { return id < n2 ? n1 + id : n1 + n2 + v1.preps + (id - n2); };

    CanonicalView v;
    v.in = n1 + n2;
    v.preps = v1.preps + v2.preps;
    for (auto g : v1.unitaries) {
        for (auto& w : g.wires) w = map1(w);
        v.unitaries.push_back(std::move(g));
    }
    for (auto g : v2.unitaries) {
        for (auto& w : g.wires) w = map2(w);
        v.unitaries.push_back(std::move(g));
    }
    for (int id : v1.traced) v.traced.push_back(map1(id));
    for (int id : v2.traced) v.traced.push_back(map2(id));

    // Output order must be (outputs of c1, outputs of c2): reorder contents
    // with plain swaps before the traces.
    std::vector<int> desired;
    for (int id : v1.survivors) desired.push_back(map1(id));
    for (int id : v2.survivors) desired.push_back(map2(id));
    std::vector<int> sorted = desired;
    std::sort(sorted.begin(), sorted.end());
    std::map<int, int> target;
    for (std::size_t k = 0; k < desired.size(); ++k) target[desired[k]] = sorted[k];
    for (auto [a, b] : permutation_swaps(target)) v.unitaries.push_back(Gate::unitary("SWAP", {a, b}));

    v.survivors = sorted;
    return from_view(v);
}

Circuit sequential_compose(const Circuit& first_in, const Circuit& second_in) {
    const CanonicalView v1 = view_of(first_in.is_canonical() ? first_in : canonicalize(first_in));
    const CanonicalView v2 = view_of(second_in.is_canonical() ? second_in : canonicalize(second_in));
    if (static_cast<int>(v1.survivors.size()) != v2.in)
        throw DimensionError("sequential_compose: output/input mismatch");

    auto map2 = [&](int id) {
        return id < v2.in ? v1.survivors[static_cast<std::size_t>(id)] : v1.in + v1.preps + (id - v2.in);
    };

    CanonicalView v;
    v.in = v1.in;
    v.preps = v1.preps + v2.preps;
    v.unitaries = v1.unitaries;
    for (auto g : v2.unitaries) {
        for (auto& w : g.wires) w = map2(w);
        v.unitaries.push_back(std::move(g));
    }
    v.traced = v1.traced;
    for (int id : v2.traced) v.traced.push_back(map2(id));
    for (int id : v2.survivors) v.survivors.push_back(map2(id));
    std::sort(v.survivors.begin(), v.survivors.end());
    return from_view(v);
}

}  // namespace qclique
