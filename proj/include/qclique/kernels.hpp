#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qclique/config.hpp"

// Dense kernels for multi-register density operators. Each kernel has a
// serial reference implementation and an OpenMP one; the parallel versions
// split work per output entry (or per term with an ordered final sum), so
// results are identical across thread counts.

namespace qclique::kernels {

using Mat = Eigen::MatrixXcd;

// Kronecker product, a (ra*rb) x (ca*cb) matrix.
Mat kron(const Mat& a, const Mat& b, Exec exec = default_exec());

// Partial trace of a square matrix over the registers not listed in `keep`.
// `dims` are the register dimensions in order; basis index of the composite
// space is mixed-radix with register 0 most significant. `keep` must be
// strictly increasing; the kept registers stay in their original order.
Mat partial_trace(const Mat& m, const std::vector<int>& dims, const std::vector<int>& keep,
                  Exec exec = default_exec());

// Left-multiply by U acting on the given qubit wires of an n-qubit register:
// m <- (U tensor Id) m, with wire 0 most significant. U is 2^w x 2^w and
// `wires` lists the w target wires in order (row index of U = bits of the
// targets read in `wires` order).
void apply_unitary_left(Mat& m, int n_qubits, const Mat& u, const std::vector<int>& wires,
                        Exec exec = default_exec());

// Conjugation rho <- (U tensor Id) rho (U tensor Id)^dag.
void apply_unitary(Mat& rho, int n_qubits, const Mat& u, const std::vector<int>& wires,
                   Exec exec = default_exec());

// Kraus application: sum_i A_i rho A_i^dag. Terms are computed in parallel
// and accumulated in index order.
Mat kraus_apply(const Mat& rho, const std::vector<Mat>& kraus, Exec exec = default_exec());

// Heisenberg-picture adjoint: sum_i A_i^dag X A_i.
Mat kraus_adjoint_apply(const Mat& x, const std::vector<Mat>& kraus, Exec exec = default_exec());

}  // namespace qclique::kernels
