#pragma once

#include <string>

#include "qclique/channel.hpp"
#include "qclique/classical.hpp"
#include "qclique/engine.hpp"
#include "qclique/reductions.hpp"

// JSON file formats. Named gates round-trip bit-exactly; numeric parameters
// and matrix entries round-trip through 17-significant-digit decimals.

namespace qclique::io {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

std::string classical_to_json(const classical::ProbabilisticCircuit& c);
classical::ProbabilisticCircuit classical_from_json(const std::string& text);

std::string channel_to_json(const Channel& phi);
Channel channel_from_json(const std::string& text);

std::string hamiltonian_to_json(const reductions::HamiltonianInstance& h);
reductions::HamiltonianInstance hamiltonian_from_json(const std::string& text);

std::string certificate_to_json(const CliqueCertificate& cert);
CliqueCertificate certificate_from_json(const std::string& text);

// Input-state specifications for the command line: "basis:<bits>",
// "mixed", or "file:<path>" with an amplitudes or matrix document.
DensityOperator state_from_spec(const std::string& spec, int qubits);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace qclique::io
