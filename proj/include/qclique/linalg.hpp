#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qclique/config.hpp"
#include "qclique/kernels.hpp"

namespace qclique {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cplx = std::complex<double>;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

long product(const std::vector<int>& dims);
std::vector<int> qubit_dims(int n);
bool finite(const Mat& m);

// A pure state with a register layout.
struct PureState {
    Vec amplitudes;
    std::vector<int> register_dims;

    static PureState make(Vec a, std::vector<int> dims);  // validates unit norm
    static PureState basis(int index, std::vector<int> dims);
    long dim() const { return amplitudes.size(); }
    Mat projector() const { return amplitudes * amplitudes.adjoint(); }
};

// Positive unit-trace operator over a register layout.
struct DensityOperator {
    Mat matrix;
    std::vector<int> register_dims;

    // Validating factory: hermitian, unit trace, positive within tolerances.
    static DensityOperator make(Mat m, std::vector<int> dims);
    // No validation; for intermediate values known valid by construction.
    static DensityOperator unchecked(Mat m, std::vector<int> dims);
    static DensityOperator maximally_mixed(std::vector<int> dims);
    static DensityOperator pure(const PureState& psi);

    long dim() const { return matrix.rows(); }
    void validate() const;
};

// Trace norm with the 1/2 normalization: (1/2) tr sqrt(A^dag A).
double trace_norm(const Mat& a);

double frobenius_norm(const Mat& a);

// Hilbert-Schmidt overlap tr(rho sigma), clamped of round-off into [0, 1].
double overlap(const DensityOperator& rho, const DensityOperator& sigma);
double overlap_raw(const Mat& a, const Mat& b);  // re tr(a b), no clamping

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep);

Mat tensor(const Mat& a, const Mat& b);
Vec tensor(const Vec& a, const Vec& b);
PureState tensor(const PureState& a, const PureState& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

struct Spectrum {
    std::vector<double> eigenvalues;       // descending
    std::vector<PureState> eigenvectors;   // orthonormal, matching order
};

// Spectral decomposition of a hermitian operator; eigenvalues descending and
// reconstruction within the configured tolerance.
Spectrum spectral_decomposition(const DensityOperator& rho);
Spectrum spectral_decomposition_hermitian(const Mat& h, const std::vector<int>& dims);

struct IsometryResult {
    Mat isometry;              // U V^dag from the SVD
    double min_singular_value;
};

// Orthogonal Procrustes solution: the matrix with orthonormal columns nearest
// in Frobenius norm to the input (rows >= cols).
IsometryResult nearest_isometry(const Mat& m);

// Projector onto the symmetric subspace of C^d tensor C^d, (Id + SWAP)/2.
Mat symmetric_projector(int d);
Mat swap_operator(int d);

}  // namespace qclique
