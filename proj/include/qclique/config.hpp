#pragma once

namespace qclique {

// Numerical tolerances used across the library. All defaults assume
// double-precision dense algebra at dimensions up to 2^12.
struct Tolerances {
    double validation = 1e-10;     // hermiticity, trace, positivity, unit norm
    double reconstruction = 1e-9;  // eigen/SVD reconstruction error
    double kraus_sum = 1e-8;       // completeness of Kraus/POVM sums
    double orthogonality = 1e-8;   // pairwise input overlap of certificates
};

Tolerances& tolerances();

// Hard cap on the number of live qubits a circuit evaluation may reach.
int& max_live_qubits();

// Execution policy for the data-parallel kernels. Serial is the reference
// implementation; Parallel uses OpenMP. Results agree to the last bit for
// map-style kernels and to ~1e-15 for reductions.
enum class Exec { Serial, Parallel };

Exec& default_exec();

}  // namespace qclique
