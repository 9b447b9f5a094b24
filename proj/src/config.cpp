#include "qclique/config.hpp"

namespace qclique {

Tolerances& tolerances() {
    static Tolerances t;
    return t;
}

int& max_live_qubits() {
    static int n = 12;
    return n;
}

Exec& default_exec() {
    static Exec e = Exec::Parallel;
    return e;
}

}  // namespace qclique
