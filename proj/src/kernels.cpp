#include "qclique/kernels.hpp"

#include <cassert>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qclique::kernels {

namespace {

using cplx = std::complex<double>;

std::vector<long> mixed_radix_offsets(const std::vector<int>& dims, const std::vector<long>& strides,
                                      const std::vector<int>& regs) {
    long count = 1;
    for (int r : regs) count *= dims[r];
    std::vector<long> offsets(static_cast<std::size_t>(count));
    for (long v = 0; v < count; ++v) {
        long rem = v, off = 0;
        for (auto it = regs.rbegin(); it != regs.rend(); ++it) {
            off += (rem % dims[*it]) * strides[*it];
            rem /= dims[*it];
        }
        offsets[static_cast<std::size_t>(v)] = off;
    }
    return offsets;
}

}  // namespace

Mat kron(const Mat& a, const Mat& b, Exec exec) {
    const long ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    Mat out(ra * rb, ca * cb);
    const bool par = exec == Exec::Parallel;
#pragma omp parallel for collapse(2) schedule(static) if (par)
    for (long i = 0; i < ra; ++i)
        for (long j = 0; j < ca; ++j) out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

Mat partial_trace(const Mat& m, const std::vector<int>& dims, const std::vector<int>& keep, Exec exec) {
    const int n = static_cast<int>(dims.size());
    long total = 1;
    for (int d : dims) total *= d;
    if (m.rows() != total || m.cols() != total)
        throw std::invalid_argument("partial_trace: matrix does not match register dimensions");
    for (std::size_t i = 0; i + 1 < keep.size(); ++i)
        if (keep[i] >= keep[i + 1]) throw std::invalid_argument("partial_trace: keep not increasing");
    for (int k : keep)
        if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: register index out of range");

    std::vector<long> strides(dims.size());
    long s = 1;
    for (int i = n - 1; i >= 0; --i) {
        strides[static_cast<std::size_t>(i)] = s;
        s *= dims[static_cast<std::size_t>(i)];
    }
    std::vector<int> traced;
    {
        std::size_t ki = 0;
        for (int i = 0; i < n; ++i) {
            if (ki < keep.size() && keep[ki] == i)
                ++ki;
            else
                traced.push_back(i);
        }
    }
    const auto kept_off = mixed_radix_offsets(dims, strides, keep);
    const auto tr_off = mixed_radix_offsets(dims, strides, traced);
    const long od = static_cast<long>(kept_off.size());
    const long td = static_cast<long>(tr_off.size());

    Mat out(od, od);
    const bool par = exec == Exec::Parallel;
#pragma omp parallel for collapse(2) schedule(static) if (par)
    for (long r = 0; r < od; ++r)
        for (long c = 0; c < od; ++c) {
            cplx acc(0, 0);
            for (long t = 0; t < td; ++t) acc += m(kept_off[r] + tr_off[t], kept_off[c] + tr_off[t]);
            out(r, c) = acc;
        }
    return out;
}

namespace {

struct WirePlan {
    std::vector<long> target;  // scatter table for the 2^w gate index
    std::vector<long> base;    // scatter table for the 2^(n-w) rest index
    int w = 0;
};

WirePlan make_plan(int n_qubits, const std::vector<int>& wires) {
    WirePlan plan;
    plan.w = static_cast<int>(wires.size());
    std::vector<bool> is_target(static_cast<std::size_t>(n_qubits), false);
    for (int wn : wires) {
        if (wn < 0 || wn >= n_qubits) throw std::invalid_argument("apply_unitary: wire out of range");
        if (is_target[static_cast<std::size_t>(wn)])
            throw std::invalid_argument("apply_unitary: duplicate wire");
        is_target[static_cast<std::size_t>(wn)] = true;
    }
    const long wd = 1L << plan.w;
    plan.target.resize(static_cast<std::size_t>(wd));
    for (long x = 0; x < wd; ++x) {
        long off = 0;
        for (int j = 0; j < plan.w; ++j)
            off |= ((x >> (plan.w - 1 - j)) & 1L) << (n_qubits - 1 - wires[static_cast<std::size_t>(j)]);
        plan.target[static_cast<std::size_t>(x)] = off;
    }
    std::vector<int> rest;
    for (int i = 0; i < n_qubits; ++i)
        if (!is_target[static_cast<std::size_t>(i)]) rest.push_back(i);
    const long rd = 1L << rest.size();
    plan.base.resize(static_cast<std::size_t>(rd));
    for (long r = 0; r < rd; ++r) {
        long off = 0;
        const int nr = static_cast<int>(rest.size());
        for (int j = 0; j < nr; ++j)
            off |= ((r >> (nr - 1 - j)) & 1L) << (n_qubits - 1 - rest[static_cast<std::size_t>(j)]);
        plan.base[static_cast<std::size_t>(r)] = off;
    }
    return plan;
}

}  // namespace

void apply_unitary_left(Mat& m, int n_qubits, const Mat& u, const std::vector<int>& wires, Exec exec) {
    const long dim = 1L << n_qubits;
    if (m.rows() != dim) throw std::invalid_argument("apply_unitary_left: dimension mismatch");
    const WirePlan plan = make_plan(n_qubits, wires);
    const long wd = 1L << plan.w;
    if (u.rows() != wd || u.cols() != wd) throw std::invalid_argument("apply_unitary_left: gate size");
    const long nrest = static_cast<long>(plan.base.size());
    const long cols = m.cols();
    const bool par = exec == Exec::Parallel;
#pragma omp parallel if (par)
    {
        Eigen::VectorXcd buf(wd), res(wd);
#pragma omp for collapse(2) schedule(static)
        for (long c = 0; c < cols; ++c)
            for (long r = 0; r < nrest; ++r) {
                const long base = plan.base[static_cast<std::size_t>(r)];
                for (long x = 0; x < wd; ++x) buf(x) = m(base + plan.target[static_cast<std::size_t>(x)], c);
                res.noalias() = u * buf;
                for (long x = 0; x < wd; ++x) m(base + plan.target[static_cast<std::size_t>(x)], c) = res(x);
            }
    }
}

namespace {

// m <- m (U tensor Id)^dag, same wire conventions.
void apply_unitary_right_adjoint(Mat& m, int n_qubits, const Mat& u, const std::vector<int>& wires,
                                 Exec exec) {
    const long dim = 1L << n_qubits;
    if (m.cols() != dim) throw std::invalid_argument("apply_unitary_right_adjoint: dimension mismatch");
    const WirePlan plan = make_plan(n_qubits, wires);
    const long wd = 1L << plan.w;
    const long nrest = static_cast<long>(plan.base.size());
    const long rows = m.rows();
    const Mat uc = u.conjugate();
    const bool par = exec == Exec::Parallel;
#pragma omp parallel if (par)
    {
        Eigen::VectorXcd buf(wd), res(wd);
#pragma omp for collapse(2) schedule(static)
        for (long r = 0; r < rows; ++r)
            for (long k = 0; k < nrest; ++k) {
                const long base = plan.base[static_cast<std::size_t>(k)];
                for (long x = 0; x < wd; ++x) buf(x) = m(r, base + plan.target[static_cast<std::size_t>(x)]);
                res.noalias() = uc * buf;
                for (long x = 0; x < wd; ++x) m(r, base + plan.target[static_cast<std::size_t>(x)]) = res(x);
            }
    }
}

}  // namespace

void apply_unitary(Mat& rho, int n_qubits, const Mat& u, const std::vector<int>& wires, Exec exec) {
    apply_unitary_left(rho, n_qubits, u, wires, exec);
    apply_unitary_right_adjoint(rho, n_qubits, u, wires, exec);
}

Mat kraus_apply(const Mat& rho, const std::vector<Mat>& kraus, Exec exec) {
    if (kraus.empty()) throw std::invalid_argument("kraus_apply: empty operator list");
    const long k = static_cast<long>(kraus.size());
    std::vector<Mat> terms(kraus.size());
    const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (long i = 0; i < k; ++i)
        terms[static_cast<std::size_t>(i)].noalias() =
            kraus[static_cast<std::size_t>(i)] * rho * kraus[static_cast<std::size_t>(i)].adjoint();
    Mat out = terms[0];
    for (long i = 1; i < k; ++i) out += terms[static_cast<std::size_t>(i)];
    return out;
}

Mat kraus_adjoint_apply(const Mat& x, const std::vector<Mat>& kraus, Exec exec) {
    if (kraus.empty()) throw std::invalid_argument("kraus_adjoint_apply: empty operator list");
    const long k = static_cast<long>(kraus.size());
    std::vector<Mat> terms(kraus.size());
    const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (long i = 0; i < k; ++i)
        terms[static_cast<std::size_t>(i)].noalias() =
            kraus[static_cast<std::size_t>(i)].adjoint() * x * kraus[static_cast<std::size_t>(i)];
    Mat out = terms[0];
    for (long i = 1; i < k; ++i) out += terms[static_cast<std::size_t>(i)];
    return out;
}

}  // namespace qclique::kernels
