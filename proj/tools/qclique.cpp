// Command-line front end: simulate circuits, search for cliques and
// independent sets, build reduction instances, and run the lemma
// verification suites.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qclique/circuit_io.hpp"
#include "qclique/report.hpp"
#include "qclique/suites.hpp"

using namespace qclique;
using nlohmann::json;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 1;
    double tol = 1e-10;
    int max_qubits = 12;
    std::string format = "json";
    std::string out;
    int threads = 0;
};

json base_report(const std::string& command, const GlobalOptions& g, const std::string& inputs) {
    json j;
    j["schema"] = "v1";
    j["command"] = command;
    j["inputs_digest"] = report::fnv1a_hex(inputs);
    j["seed"] = g.seed;
    j["tolerances"] = {{"validation", tolerances().validation},
                       {"reconstruction", tolerances().reconstruction},
                       {"kraus_sum", tolerances().kraus_sum},
                       {"orthogonality", tolerances().orthogonality}};
    return j;
}

void emit(const json& j, const GlobalOptions& g) {
    std::string text;
    if (g.format == "csv" && j.contains("checks")) {
        std::vector<suites::CheckResult> checks;
        for (const auto& c : j["checks"]) {
            suites::CheckResult r;
            r.name = c.value("name", "");
            r.pass = c.value("pass", false);
            r.observed = c.value("observed", 0.0);
            r.bound = c.value("bound", 0.0);
            r.samples = c.value("samples", 0L);
            r.detail = c.value("detail", "");
            checks.push_back(std::move(r));
        }
        text = report::checks_to_csv(checks);
    } else {
        text = j.dump(2) + "\n";
    }
    if (g.out.empty())
        std::cout << text;
    else
        io::write_file(g.out, text);
}

json matrix_json(const Mat& m) {
    json rows = json::array();
    for (long r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (long c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

json checks_json(const std::vector<suites::CheckResult>& checks) {
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name},
                       {"pass", c.pass},
                       {"observed", c.observed},
                       {"bound", c.bound},
                       {"samples", c.samples},
                       {"detail", c.detail}});
    return arr;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"clique and independent-set analysis for quantum channels"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--seed", g.seed, "root seed for all randomness");
    app.add_option("--tol", g.tol, "validation tolerance");
    app.add_option("--max-qubits", g.max_qubits, "live-qubit cap for circuit evaluation");
    app.add_option("--format", g.format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out, "write the report to this file instead of stdout");
    app.add_option("--threads", g.threads, "OpenMP thread count (0 = runtime default)");

    // simulate
    std::string sim_circuit, sim_state = "mixed";
    auto* sim = app.add_subcommand("simulate", "evaluate a circuit on an input state");
    sim->add_option("--circuit", sim_circuit, "circuit JSON file")->required();
    sim->add_option("--state", sim_state, "basis:<bits>, mixed, or file:<path>");

    // clique
    std::string clq_circuit, clq_channel, clq_kind = "clique";
    int clq_k = 2, clq_restarts = 64, clq_iters = 200;
    auto* clq = app.add_subcommand("clique", "optimize a clique or independent-set value");
    clq->add_option("--circuit", clq_circuit, "circuit JSON file");
    clq->add_option("--channel", clq_channel, "channel JSON file");
    clq->add_option("--k", clq_k, "tuple size");
    clq->add_option("--kind", clq_kind, "clique or is")->check(CLI::IsMember({"clique", "is"}));
    clq->add_option("--restarts", clq_restarts, "optimizer restarts");
    clq->add_option("--iterations", clq_iters, "sweeps per restart");

    // reduce
    std::string red_kind, red_cnf, red_verifier, red_ham, red_classical, red_unitary;
    std::string red_prefix = "instance";
    double red_p = 0.5;
    int red_k = 3, red_m = 1, red_w = 1, red_checked = 0;
    double red_p1 = 0.4, red_p2 = 0.3, red_p3 = 0.3;
    bool red_prob = false;
    auto* red = app.add_subcommand("reduce", "construct a reduction instance");
    red->add_option("kind", red_kind,
                    "np-clique | np-is | ma-clique | ma-is | qma2 | qmak | qma-localham | k-to-2 | "
                    "alt-qma2")
        ->required();
    red->add_option("--cnf", red_cnf, "DIMACS file for the NP/MA reductions");
    red->add_option("--verifier", red_verifier, "verifier circuit JSON (qma2/qmak) or classical JSON");
    red->add_option("--ham", red_ham, "hamiltonian JSON file");
    red->add_option("--classical", red_classical, "classical circuit JSON for k-to-2");
    red->add_option("--unitary", red_unitary, "unitary matrix JSON for alt-qma2");
    red->add_option("--p", red_p, "block weight");
    red->add_option("--k", red_k, "tuple size for qmak / k-to-2");
    red->add_option("--m", red_m, "proof qubits for alt-qma2");
    red->add_option("--workspace", red_w, "workspace qubits for alt-qma2");
    red->add_option("--checked", red_checked, "toy verifier: leading qubits checked (0 = reject all)");
    red->add_option("--p1", red_p1, "k-to-2 first block weight");
    red->add_option("--p2", red_p2, "k-to-2 second block weight");
    red->add_option("--p3", red_p3, "k-to-2 third block weight");
    red->add_flag("--prob", red_prob, "use the probabilistic k-to-2 constructions");
    red->add_option("--prefix", red_prefix, "output file prefix");

    // verify-lemmas
    std::string ver_suite = "all";
    int ver_samples = 1000;
    auto* ver = app.add_subcommand("verify-lemmas", "run the property suites");
    ver->add_option("--suite", ver_suite, "suite name or 'all'");
    ver->add_option("--samples", ver_samples, "sample count for sampled checks");

    CLI11_PARSE(app, argc, argv);

    tolerances().validation = g.tol;
    max_live_qubits() = g.max_qubits;
#ifdef _OPENMP
    if (g.threads > 0) omp_set_num_threads(g.threads);
#endif

    const auto started = std::chrono::steady_clock::now();
    auto wall = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };

    try {
        if (sim->parsed()) {
            std::string text = io::read_file(sim_circuit);
            Circuit c = io::circuit_from_json(text);
            auto rho = io::state_from_spec(sim_state, c.in_count);
            auto out_state = evaluate(c, rho);
            json j = base_report("simulate", g, text + sim_state);
            j["results"] = {{"in_qubits", c.in_count},
                            {"out_qubits", c.out_count()},
                            {"circuit_size", c.size()},
                            {"output", matrix_json(out_state.matrix)}};
            // Validation results for the output state.
            bool valid = true;
            std::string why;
            try {
                DensityOperator::make(out_state.matrix, out_state.register_dims);
            } catch (const std::exception& e) {
                valid = false;
                why = e.what();
            }
            j["results"]["output_valid"] = valid;
            if (!why.empty()) j["results"]["validation_error"] = why;
            j["wall_time_s"] = wall();
            emit(j, g);
            return 0;
        }

        if (clq->parsed()) {
            std::string text;
            Channel phi;
            if (!clq_circuit.empty()) {
                text = io::read_file(clq_circuit);
                phi = kraus_from_circuit(io::circuit_from_json(text));
            } else if (!clq_channel.empty()) {
                text = io::read_file(clq_channel);
                phi = io::channel_from_json(text);
            } else {
                std::cerr << "clique: need --circuit or --channel\n";
                return 2;
            }
            OptimizerBudget budget{clq_restarts, clq_iters, 1e-10};
            auto cert = clq_kind == "clique" ? max_clique_value(phi, clq_k, budget, g.seed)
                                             : min_is_value(phi, clq_k, budget, g.seed);
            json j = base_report("clique", g, text);
            j["results"] = {{"kind", clq_kind},
                            {"k", clq_k},
                            {"value", cert.value},
                            {"bound_direction", clq_kind == "clique" ? "lower" : "upper"},
                            {"certificate", json::parse(io::certificate_to_json(cert))}};
            j["wall_time_s"] = wall();
            emit(j, g);
            return 0;
        }

        if (red->parsed()) {
            json j = base_report("reduce " + red_kind, g, red_kind);
            json files = json::object();
            auto save = [&](const std::string& suffix, const std::string& text) {
                const std::string path = red_prefix + "." + suffix;
                io::write_file(path, text);
                files[suffix] = path;
            };

            if (red_kind == "np-clique" || red_kind == "np-is") {
                auto v = classical::verifier_from_dimacs(io::read_file(red_cnf));
                auto f = red_kind == "np-clique" ? classical::np_reduce_clique(v, 0)
                                                 : classical::np_reduce_is(v, 0);
                classical::ProbabilisticCircuit pc;
                pc.base = f;
                save("circuit.json", io::classical_to_json(pc));
                auto witness = red_kind == "np-clique" ? classical::has_k_clique(f, 2)
                                                       : classical::has_k_is(f, 2);
                j["results"] = {{"decision", witness.found},
                                {"witness", witness.witness},
                                {"matches_sat", witness.found == classical::exhaustive_sat(v)}};
            } else if (red_kind == "ma-clique" || red_kind == "ma-is") {
                classical::ProbabilisticVerifier v;
                v.circuit = io::classical_from_json(io::read_file(red_verifier));
                v.x_bits = 0;
                auto f = red_kind == "ma-clique" ? classical::ma_reduce_clique(v, 0)
                                                 : classical::ma_reduce_is(v, 0);
                save("circuit.json", io::classical_to_json(f));
                j["results"] = {{"in_bits", f.in_bits()},
                                {"random_bits", f.random_bits},
                                {"categorical", f.categorical}};
            } else if (red_kind == "qma2" || red_kind == "qmak") {
                Circuit verifier;
                if (!red_verifier.empty()) {
                    verifier = io::circuit_from_json(io::read_file(red_verifier));
                } else if (red_checked > 0) {
                    verifier = reductions::leading_zeros_verifier(
                        red_kind == "qma2" ? 2 * red_m : red_k * red_m, red_checked);
                } else {
                    verifier = reductions::rejecting_verifier(red_kind == "qma2" ? 2 * red_m
                                                                                 : red_k * red_m);
                }
                auto inst = red_kind == "qma2"
                                ? reductions::qma2_hardness_instance(verifier, red_p)
                                : reductions::qmak_hardness_instance(verifier, red_k, red_p);
                save("channel.json", io::channel_to_json(inst.channel));
                if (inst.circuit) save("circuit.json", io::circuit_to_json(*inst.circuit));
                j["results"] = {{"completeness", inst.promise.completeness},
                                {"soundness", inst.promise.soundness},
                                {"p", inst.promise.p},
                                {"eta", inst.promise.eta},
                                {"witness_qubits", inst.witness_qubits}};
            } else if (red_kind == "qma-localham") {
                auto h = io::hamiltonian_from_json(io::read_file(red_ham));
                auto inst = reductions::hamiltonian_clique_instance(h);
                save("channel.json", io::channel_to_json(inst.channel));
                j["results"] = {{"completeness", inst.promise.completeness},
                                {"soundness", inst.promise.soundness},
                                {"ground_energy", h.ground_energy()},
                                {"terms", h.term_count()}};
            } else if (red_kind == "k-to-2") {
                auto f = io::classical_from_json(io::read_file(red_classical));
                if (red_prob) {
                    auto gc = classical::k_to_2_clique_prob(f, red_k);
                    auto gi = classical::k_to_2_is_prob(f, red_k);
                    save("clique.json", io::classical_to_json(gc));
                    save("is.json", io::classical_to_json(gi));
                } else {
                    classical::ProbabilisticCircuit gc, gi;
                    gc.base = classical::k_to_2_clique_det(f.base, red_k);
                    gi.base = classical::k_to_2_is_det(f.base, red_k);
                    save("clique.json", io::classical_to_json(gc));
                    save("is.json", io::classical_to_json(gi));
                }
                j["results"] = {{"k", red_k},
                                {"clique_value_map", "alpha -> 2 alpha / k(k-1)"},
                                {"is_value_map", "alpha -> 1 - 2(1-alpha)/k(k-1)"}};
            } else if (red_kind == "alt-qma2") {
                json um = json::parse(io::read_file(red_unitary));
                Mat v(um.size(), um.size());
                for (long r = 0; r < v.rows(); ++r)
                    for (long c = 0; c < v.cols(); ++c) {
                        const auto& e = um[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                        v(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
                    }
                auto phi = reductions::unitary_verifier_channel(v, red_m, red_w);
                save("channel.json", io::channel_to_json(phi));
                j["results"] = {{"in_dim", phi.in_dim()}, {"out_dim", phi.out_dim()}};
            } else {
                std::cerr << "reduce: unknown kind " << red_kind << "\n";
                return 2;
            }
            j["results"]["files"] = files;
            j["wall_time_s"] = wall();
            emit(j, g);
            return 0;
        }

        if (ver->parsed()) {
            std::vector<suites::CheckResult> checks;
            bool matched = false;
            for (const auto& [name, suite] : suites::all_suites()) {
                if (ver_suite != "all" && ver_suite != name) continue;
                matched = true;
                auto results = suite(ver_samples, g.seed);
                checks.insert(checks.end(), results.begin(), results.end());
            }
            if (!matched) {
                std::cerr << "verify-lemmas: unknown suite '" << ver_suite << "'\n";
                return 2;
            }
            std::sort(checks.begin(), checks.end(),
                      [](const auto& a, const auto& b) { return a.name < b.name; });
            long violations = 0;
            for (const auto& c : checks)
                if (!c.pass) ++violations;
            json j = base_report("verify-lemmas " + ver_suite, g, ver_suite);
            j["results"] = {{"violations", violations}, {"checks_run", checks.size()}};
            j["checks"] = checks_json(checks);
            j["wall_time_s"] = wall();
            emit(j, g);
            return violations == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
