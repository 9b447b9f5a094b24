#include "qclique/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qclique {

long product(const std::vector<int>& dims) {
    long p = 1;
    for (int d : dims) {
        if (d < 1) throw DimensionError("register dimension must be positive");
        p *= d;
    }
    return p;
}

std::vector<int> qubit_dims(int n) { return std::vector<int>(static_cast<std::size_t>(n), 2); }

bool finite(const Mat& m) { return m.allFinite(); }

PureState PureState::make(Vec a, std::vector<int> dims) {
    if (a.size() != product(dims)) throw DimensionError("pure state does not match register layout");
    if (!a.allFinite()) throw ValidationError("pure state has non-finite amplitudes");
    if (std::abs(a.norm() - 1.0) > tolerances().validation)
        throw ValidationError("pure state is not normalized");
    return PureState{std::move(a), std::move(dims)};
}

PureState PureState::basis(int index, std::vector<int> dims) {
    Vec a = Vec::Zero(product(dims));
    a(index) = 1.0;
    return PureState{std::move(a), std::move(dims)};
}

DensityOperator DensityOperator::make(Mat m, std::vector<int> dims) {
    DensityOperator rho{std::move(m), std::move(dims)};
    rho.validate();
    return rho;
}

DensityOperator DensityOperator::unchecked(Mat m, std::vector<int> dims) {
    return DensityOperator{std::move(m), std::move(dims)};
}

DensityOperator DensityOperator::maximally_mixed(std::vector<int> dims) {
    const long d = product(dims);
    return DensityOperator{Mat::Identity(d, d) / static_cast<double>(d), std::move(dims)};
}

DensityOperator DensityOperator::pure(const PureState& psi) {
    return DensityOperator{psi.projector(), psi.register_dims};
}

void DensityOperator::validate() const {
    const double tol = tolerances().validation;
    if (matrix.rows() != matrix.cols()) throw DimensionError("density operator must be square");
    if (matrix.rows() != product(register_dims))
        throw DimensionError("density operator does not match register layout");
    if (!matrix.allFinite()) throw ValidationError("density operator has non-finite entries");
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw ValidationError("density operator is not hermitian");
    if (std::abs(matrix.trace().real() - 1.0) > tol || std::abs(matrix.trace().imag()) > tol)
        throw ValidationError("density operator does not have unit trace");
    Eigen::SelfAdjointEigenSolver<Mat> es(matrix, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol)
        throw ValidationError("density operator has a negative eigenvalue");
}

double trace_norm(const Mat& a) {
    if (a.rows() != a.cols()) throw DimensionError("trace_norm: matrix must be square");
    if (!a.allFinite()) throw ValidationError("trace_norm: non-finite entries");
    Eigen::BDCSVD<Mat> svd(a);
    return 0.5 * svd.singularValues().sum();
}

double frobenius_norm(const Mat& a) {
    if (!a.allFinite()) throw ValidationError("frobenius_norm: non-finite entries");
    return a.norm();
}

double overlap_raw(const Mat& a, const Mat& b) { return (a * b).trace().real(); }

double overlap(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionError("overlap: dimension mismatch");
    double v = overlap_raw(rho.matrix, sigma.matrix);
    const double tol = tolerances().validation;
    if (v < 0) {
        if (v < -tol) throw ValidationError("overlap: negative beyond tolerance");
        v = 0;
    }
    if (v > 1) {
        if (v > 1 + tol) throw ValidationError("overlap: above one beyond tolerance");
        v = 1;
    }
    return v;
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep) {
    Mat out = kernels::partial_trace(rho.matrix, rho.register_dims, keep);
    std::vector<int> dims;
    dims.reserve(keep.size());
    for (int k : keep) dims.push_back(rho.register_dims[static_cast<std::size_t>(k)]);
    if (dims.empty()) dims.push_back(1);
    return DensityOperator::unchecked(std::move(out), std::move(dims));
}

Mat tensor(const Mat& a, const Mat& b) { return kernels::kron(a, b); }

Vec tensor(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (long i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

PureState tensor(const PureState& a, const PureState& b) {
    std::vector<int> dims = a.register_dims;
    dims.insert(dims.end(), b.register_dims.begin(), b.register_dims.end());
    return PureState{tensor(a.amplitudes, b.amplitudes), std::move(dims)};
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    std::vector<int> dims = a.register_dims;
    dims.insert(dims.end(), b.register_dims.begin(), b.register_dims.end());
    return DensityOperator::unchecked(tensor(a.matrix, b.matrix), std::move(dims));
}

Spectrum spectral_decomposition_hermitian(const Mat& h, const std::vector<int>& dims) {
    const double tol = tolerances().validation;
    if (h.rows() != h.cols()) throw DimensionError("spectral_decomposition: matrix must be square");
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw ValidationError("spectral_decomposition: matrix is not hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success) throw ValidationError("spectral_decomposition: solver failed");
    const long d = h.rows();
    Spectrum out;
    out.eigenvalues.reserve(static_cast<std::size_t>(d));
    out.eigenvectors.reserve(static_cast<std::size_t>(d));
    for (long i = d - 1; i >= 0; --i) {  // Eigen sorts ascending
        out.eigenvalues.push_back(es.eigenvalues()(i));
        out.eigenvectors.push_back(PureState{es.eigenvectors().col(i), dims});
    }
    Mat rec = Mat::Zero(d, d);
    for (long i = 0; i < d; ++i)
        rec += out.eigenvalues[static_cast<std::size_t>(i)] *
               out.eigenvectors[static_cast<std::size_t>(i)].projector();
    if (frobenius_norm(h - rec) > tolerances().reconstruction)
        throw ValidationError("spectral_decomposition: reconstruction error above tolerance");
    return out;
}

Spectrum spectral_decomposition(const DensityOperator& rho) {
    return spectral_decomposition_hermitian(rho.matrix, rho.register_dims);
}

IsometryResult nearest_isometry(const Mat& m) {
    if (m.cols() > m.rows()) throw DimensionError("nearest_isometry: more columns than rows");
    Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    IsometryResult out;
    out.isometry = svd.matrixU() * svd.matrixV().adjoint();
    out.min_singular_value = svd.singularValues().minCoeff();
    return out;
}

Mat swap_operator(int d) {
    Mat s = Mat::Zero(static_cast<long>(d) * d, static_cast<long>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s(static_cast<long>(i) * d + j, static_cast<long>(j) * d + i) = 1.0;
    return s;
}

Mat symmetric_projector(int d) {
    const long dd = static_cast<long>(d) * d;
    return 0.5 * (Mat::Identity(dd, dd) + swap_operator(d));
}

}  // namespace qclique
