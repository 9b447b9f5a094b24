#include "qclique/circuit_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qclique::io {

using nlohmann::json;

namespace {

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (long r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (long c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const json& rows) {
    if (!rows.is_array() || rows.empty()) throw ParseError("matrix: expected a non-empty array");
    const long r = static_cast<long>(rows.size());
    const long c = static_cast<long>(rows[0].size());
    Mat m(r, c);
    for (long i = 0; i < r; ++i) {
        if (static_cast<long>(rows[i].size()) != c) throw ParseError("matrix: ragged rows");
        for (long j = 0; j < c; ++j) {
            const auto& e = rows[i][static_cast<std::size_t>(j)];
            if (!e.is_array() || e.size() != 2) throw ParseError("matrix: entries must be [re, im]");
            m(i, j) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

json vector_to_json(const Vec& v) {
    json out = json::array();
    for (long i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
    return out;
}

Vec vector_from_json(const json& arr) {
    Vec v(static_cast<long>(arr.size()));
    for (long i = 0; i < v.size(); ++i) {
        const auto& e = arr[static_cast<std::size_t>(i)];
        if (!e.is_array() || e.size() != 2) throw ParseError("vector: entries must be [re, im]");
        v(i) = cplx(e[0].get<double>(), e[1].get<double>());
    }
    return v;
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON document");
    return j;
}

}  // namespace

std::string circuit_to_json(const Circuit& c) {
    c.validate();
    json j;
    j["in"] = c.in_count;
    json gates = json::array();
    for (const auto& g : c.gates) {
        json jg;
        switch (g.kind) {
            case GateKind::Prepare:
                jg["op"] = "prep";
                break;
            case GateKind::TraceOut:
                jg["op"] = "trace";
                break;
            case GateKind::Unitary:
                jg["op"] = "U";
                if (!g.name.empty()) {
                    jg["name"] = g.name;
                    if (gateset::parameterized(g.name)) jg["theta"] = g.theta;
                } else {
                    jg["matrix"] = matrix_to_json(g.matrix);
                }
                break;
        }
        jg["wires"] = g.wires;
        gates.push_back(std::move(jg));
    }
    j["gates"] = std::move(gates);
    return j.dump(2);
}

Circuit circuit_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.contains("in") || !j.contains("gates")) throw ParseError("circuit: missing in/gates");
    Circuit c;
    c.in_count = j["in"].get<int>();
    int line = 0;
    for (const auto& jg : j["gates"]) {
        ++line;
        const std::string op = jg.value("op", "");
        std::vector<int> wires = jg.value("wires", std::vector<int>{});
        try {
            if (op == "prep") {
                if (wires.size() != 1) throw ParseError("prep takes one wire");
                c.gates.push_back(Gate::prepare(wires[0]));
            } else if (op == "trace") {
                if (wires.size() != 1) throw ParseError("trace takes one wire");
                c.gates.push_back(Gate::trace_out(wires[0]));
            } else if (op == "U") {
                if (jg.contains("name")) {
                    c.gates.push_back(
                        Gate::unitary(jg["name"].get<std::string>(), wires, jg.value("theta", 0.0)));
                } else if (jg.contains("matrix")) {
                    c.gates.push_back(Gate::raw_unitary(matrix_from_json(jg["matrix"]), wires));
                } else {
                    throw ParseError("unitary needs a name or matrix");
                }
            } else {
                throw ParseError("unknown op '" + op + "'");
            }
        } catch (const std::exception& e) {
            throw ParseError("circuit gate " + std::to_string(line) + ": " + e.what());
        }
    }
    try {
        c.validate();
    } catch (const std::exception& e) {
        throw ParseError(std::string("circuit: ") + e.what());
    }
    return c;
}

std::string classical_to_json(const classical::ProbabilisticCircuit& c) {
    c.validate();
    json j;
    j["in"] = c.base.in_bits;
    j["random_bits"] = c.random_bits;
    j["categorical"] = c.categorical;
    json gates = json::array();
    for (const auto& g : c.base.gates) gates.push_back({{"op", "NAND"}, {"wires", {g.a, g.b}}});
    j["gates"] = std::move(gates);
    j["outputs"] = c.base.outputs;
    return j.dump(2);
}

classical::ProbabilisticCircuit classical_from_json(const std::string& text) {
    json j = parse(text);
    classical::ProbabilisticCircuit c;
    c.base.in_bits = j.value("in", 0);
    c.random_bits = j.value("random_bits", 0);
    c.categorical = j.value("categorical", 1);
    for (const auto& jg : j.value("gates", json::array())) {
        if (jg.value("op", "") != "NAND") throw ParseError("classical circuit: only NAND gates");
        auto wires = jg.value("wires", std::vector<int>{});
        if (wires.size() != 2) throw ParseError("classical circuit: NAND takes two wires");
        c.base.gates.push_back({wires[0], wires[1]});
    }
    c.base.outputs = j.value("outputs", std::vector<int>{});
    try {
        c.validate();
    } catch (const std::exception& e) {
        throw ParseError(std::string("classical circuit: ") + e.what());
    }
    return c;
}

std::string channel_to_json(const Channel& phi) {
    json j;
    if (phi.is_eb()) {
        j["kind"] = "eb";
        json povm = json::array(), states = json::array();
        for (const auto& m : phi.eb_data().povm) povm.push_back(matrix_to_json(m));
        for (const auto& s : phi.eb_data().states) states.push_back(matrix_to_json(s));
        j["povm"] = std::move(povm);
        j["states"] = std::move(states);
    } else if (phi.is_block_sum()) {
        j["kind"] = "block_sum";
        j["weights"] = phi.block_sum_data().weights;
        json blocks = json::array();
        for (const auto& b : phi.block_sum_data().blocks) blocks.push_back(json::parse(channel_to_json(b)));
        j["blocks"] = std::move(blocks);
    } else {
        j["kind"] = "kraus";
        json ops = json::array();
        for (const auto& a : phi.kraus_operators()) ops.push_back(matrix_to_json(a));
        j["operators"] = std::move(ops);
    }
    return j.dump(2);
}

namespace {

Channel channel_from_json_obj(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "kraus") {
        std::vector<Mat> ops;
        for (const auto& a : j.value("operators", json::array())) ops.push_back(matrix_from_json(a));
        return Channel::kraus(std::move(ops));
    }
    if (kind == "eb") {
        std::vector<Mat> povm, states;
        for (const auto& m : j.value("povm", json::array())) povm.push_back(matrix_from_json(m));
        for (const auto& s : j.value("states", json::array())) states.push_back(matrix_from_json(s));
        return Channel::eb(std::move(povm), std::move(states));
    }
    if (kind == "block_sum") {
        std::vector<Channel> blocks;
        for (const auto& b : j.value("blocks", json::array())) blocks.push_back(channel_from_json_obj(b));
        return Channel::block_sum(std::move(blocks), j.value("weights", std::vector<double>{}));
    }
    if (kind == "circuit") {
        return Channel::circuit(circuit_from_json(j.value("circuit", json::object()).dump()));
    }
    throw ParseError("channel: unknown kind '" + kind + "'");
}

}  // namespace

Channel channel_from_json(const std::string& text) {
    try {
        return channel_from_json_obj(parse(text));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("channel: ") + e.what());
    }
}

std::string hamiltonian_to_json(const reductions::HamiltonianInstance& h) {
    h.validate();
    json j;
    j["qubits"] = h.qubits;
    j["alpha"] = h.alpha;
    j["beta"] = h.beta;
    json terms = json::array();
    for (const auto& t : h.terms)
        terms.push_back({{"support", t.support}, {"matrix", matrix_to_json(t.matrix)}});
    j["terms"] = std::move(terms);
    return j.dump(2);
}

reductions::HamiltonianInstance hamiltonian_from_json(const std::string& text) {
    json j = parse(text);
    reductions::HamiltonianInstance h;
    h.qubits = j.value("qubits", 0);
    h.alpha = j.value("alpha", 0.0);
    h.beta = j.value("beta", 0.0);
    for (const auto& jt : j.value("terms", json::array())) {
        reductions::HamiltonianTerm t;
        t.support = jt.value("support", std::vector<int>{});
        t.matrix = matrix_from_json(jt.value("matrix", json::array()));
        h.terms.push_back(std::move(t));
    }
    try {
        h.validate();
    } catch (const std::exception& e) {
        throw ParseError(std::string("hamiltonian: ") + e.what());
    }
    return h;
}

std::string certificate_to_json(const CliqueCertificate& cert) {
    json j;
    j["kind"] = cert.kind == CliqueCertificate::Kind::Clique ? "clique" : "independent_set";
    j["value"] = cert.value;
    j["seed"] = cert.seed;
    j["budget"] = {{"restarts", cert.restarts}, {"iterations", cert.iterations}};
    json states = json::array();
    for (const auto& s : cert.states) {
        // Store pure states as amplitude vectors, mixed ones densely.
        Eigen::SelfAdjointEigenSolver<Mat> es(s.matrix);
        const long top = es.eigenvalues().size() - 1;
        json js;
        if (es.eigenvalues()(top) >= 1.0 - 1e-10) {
            js["amplitudes"] = vector_to_json(es.eigenvectors().col(top));
        } else {
            js["matrix"] = matrix_to_json(s.matrix);
        }
        states.push_back(std::move(js));
    }
    j["states"] = std::move(states);
    return j.dump(2);
}

CliqueCertificate certificate_from_json(const std::string& text) {
    json j = parse(text);
    CliqueCertificate cert;
    cert.kind = j.value("kind", "clique") == "clique" ? CliqueCertificate::Kind::Clique
                                                      : CliqueCertificate::Kind::IndependentSet;
    cert.value = j.value("value", 0.0);
    cert.seed = j.value("seed", 0ull);
    cert.restarts = j.value("budget", json::object()).value("restarts", 0);
    cert.iterations = j.value("budget", json::object()).value("iterations", 0);
    for (const auto& js : j.value("states", json::array())) {
        if (js.contains("amplitudes")) {
            Vec v = vector_from_json(js["amplitudes"]);
            cert.states.push_back(
                DensityOperator::unchecked(v * v.adjoint(), {static_cast<int>(v.size())}));
        } else {
            Mat m = matrix_from_json(js.value("matrix", json::array()));
            cert.states.push_back(DensityOperator::make(m, {static_cast<int>(m.rows())}));
        }
    }
    return cert;
}

DensityOperator state_from_spec(const std::string& spec, int qubits) {
    const long dim = 1L << qubits;
    if (spec.rfind("basis:", 0) == 0) {
        const std::string bits = spec.substr(6);
        long index = 0;
        if (bits.find_first_not_of("01") == std::string::npos &&
            static_cast<int>(bits.size()) == qubits) {
            for (char b : bits) index = index * 2 + (b - '0');
        } else {
            index = std::stol(bits);
        }
        if (index < 0 || index >= dim) throw ParseError("state: basis index out of range");
        return DensityOperator::pure(PureState::basis(static_cast<int>(index), qubit_dims(qubits)));
    }
    if (spec == "mixed") return DensityOperator::maximally_mixed(qubit_dims(qubits));
    if (spec.rfind("file:", 0) == 0) {
        json j = parse(read_file(spec.substr(5)));
        if (j.contains("amplitudes")) {
            Vec v = vector_from_json(j["amplitudes"]);
            if (v.size() != dim) throw ParseError("state: amplitude count mismatch");
            return DensityOperator::pure(PureState::make(v, qubit_dims(qubits)));
        }
        if (j.contains("matrix")) {
            Mat m = matrix_from_json(j["matrix"]);
            if (m.rows() != dim) throw ParseError("state: matrix dimension mismatch");
            return DensityOperator::make(m, qubit_dims(qubits));
        }
        throw ParseError("state file: need amplitudes or matrix");
    }
    throw ParseError("state: unknown specification '" + spec + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

}  // namespace qclique::io
