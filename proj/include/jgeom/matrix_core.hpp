#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace jgeom {

/**
 * @brief Tolerances shared by every numerical predicate in the library.
 *
 * tol_cluster must stay strictly above tol_eq: eigenvalue and singular value
 * clusters are coarser than the equality checks run on their outputs.
 */
struct Tolerances {
    double tol_herm = 1e-12;
    double tol_proj = 1e-9;
    double tol_cluster = 1e-8;
    double tol_invert = 1e-10;
    double tol_eq = 1e-9;

    bool valid() const
    {
        return tol_herm >= 0 && tol_proj >= 0 && tol_cluster >= 0 && tol_invert >= 0 && tol_eq >= 0 &&
               tol_cluster > tol_eq;
    }
};

/// Dense row-major complex matrix.
template <typename Real>
class BasicMatrix {
public:
    using Scalar = std::complex<Real>;

    BasicMatrix() = default;
    BasicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static BasicMatrix zeros(std::size_t rows, std::size_t cols) { return BasicMatrix(rows, cols); }

    static BasicMatrix identity(std::size_t n)
    {
        BasicMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
        return m;
    }

    static BasicMatrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows)
    {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.begin()->size() : 0;
        BasicMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw DimensionMismatch("ragged initializer rows");
            std::size_t j = 0;
            for (const auto& v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    static BasicMatrix diagonal(std::span<const Real> d)
    {
        BasicMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = Scalar(d[i]);
        return m;
    }
    static BasicMatrix diagonal(std::initializer_list<Real> d)
    {
        return diagonal(std::span<const Real>(d.begin(), d.size()));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<Scalar> data() noexcept { return data_; }
    std::span<const Scalar> data() const noexcept { return data_; }

    BasicMatrix adjoint() const
    {
        BasicMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
        return t;
    }

    Scalar trace() const
    {
        Scalar s{};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
        return s;
    }

    Real max_abs() const
    {
        Real m = 0;
        for (const auto& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    Real frobenius_norm() const
    {
        Real s = 0;
        for (const auto& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }

    bool all_finite() const
    {
        return std::all_of(data_.begin(), data_.end(),
                           [](const Scalar& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
    }

    /// Columns [first, first+count) as a new matrix.
    BasicMatrix col_range(std::size_t first, std::size_t count) const
    {
        BasicMatrix out(rows_, count);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
        return out;
    }

    BasicMatrix& operator+=(const BasicMatrix& o)
    {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    BasicMatrix& operator-=(const BasicMatrix& o)
    {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    BasicMatrix& operator*=(Scalar s)
    {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) { return a += b; }
    friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) { return a -= b; }
    friend BasicMatrix operator-(BasicMatrix a) { return a *= Scalar(-1); }
    friend BasicMatrix operator*(BasicMatrix a, Scalar s) { return a *= s; }
    friend BasicMatrix operator*(Scalar s, BasicMatrix a) { return a *= s; }
    friend BasicMatrix operator*(BasicMatrix a, Real s) { return a *= Scalar(s); }
    friend BasicMatrix operator*(Real s, BasicMatrix a) { return a *= Scalar(s); }

    friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw DimensionMismatch("matrix product: " + shape_string(a) + " * " + shape_string(b));
        BasicMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar aik = a(i, k);
                if (aik == Scalar{}) continue;
                const Scalar* brow = &b.data_[k * b.cols_];
                Scalar* crow = &c.data_[i * c.cols_];
                for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
            }
        }
        return c;
    }

    friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

    static std::string shape_string(const BasicMatrix& m)
    {
        return std::to_string(m.rows_) + "x" + std::to_string(m.cols_);
    }

private:
    void require_same_shape(const BasicMatrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatch("shape " + shape_string(*this) + " vs " + shape_string(o));
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Square matrix that is Hermitian within tol_herm. Stored exactly Hermitian.
template <typename Real>
class BasicHermMat {
public:
    using Matrix = BasicMatrix<Real>;

    BasicHermMat() = default;

    /// Validates ‖M − M*‖_max ≤ tol·max(1, ‖M‖_max), then stores ½(M + M*).
    static BasicHermMat from(const Matrix& m, Real tol = Real(1e-12))
    {
        if (!m.is_square()) throw DimensionMismatch("Hermitian matrix must be square, got " + Matrix::shape_string(m));
        if (!m.all_finite()) throw HermitianViolation("matrix has non-finite entries");
        const Real defect = (m - m.adjoint()).max_abs();
        if (defect > tol * std::max(Real(1), m.max_abs()))
            throw HermitianViolation("‖M − M*‖_max = " + std::to_string(defect) + " exceeds tolerance");
        return symmetrized(m);
    }

    /// ½(M + M*) with no check; for results that are Hermitian up to rounding.
    static BasicHermMat symmetrized(const Matrix& m)
    {
        BasicHermMat h;
        h.m_ = (m + m.adjoint()) * Real(0.5);
        return h;
    }

    static BasicHermMat identity(std::size_t n) { return symmetrized(Matrix::identity(n)); }
    static BasicHermMat zeros(std::size_t n) { return symmetrized(Matrix(n, n)); }

    const Matrix& mat() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.rows(); }
    Real trace() const { return m_.trace().real(); }

    BasicHermMat& operator+=(const BasicHermMat& o) { m_ += o.m_; return *this; }
    BasicHermMat& operator-=(const BasicHermMat& o) { m_ -= o.m_; return *this; }
    BasicHermMat& operator*=(Real s) { m_ *= typename Matrix::Scalar(s); return *this; }

    friend BasicHermMat operator+(BasicHermMat a, const BasicHermMat& b) { return a += b; }
    friend BasicHermMat operator-(BasicHermMat a, const BasicHermMat& b) { return a -= b; }
    friend BasicHermMat operator-(BasicHermMat a) { return a *= Real(-1); }
    friend BasicHermMat operator*(BasicHermMat a, Real s) { return a *= s; }
    friend BasicHermMat operator*(Real s, BasicHermMat a) { return a *= s; }

private:
    Matrix m_;
};

using CMat = BasicMatrix<double>;
using HermMat = BasicHermMat<double>;
using Complex = std::complex<double>;

template <typename Real>
struct EigenDecomposition {
    std::vector<Real> values;       // descending
    BasicMatrix<Real> vectors;      // unitary, column k pairs with values[k]
};

template <typename Real>
struct SingularValueDecomposition {
    BasicMatrix<Real> U;            // rows × k, orthonormal columns
    std::vector<Real> sigma;        // descending, k = min(rows, cols)
    BasicMatrix<Real> V;            // cols × k, orthonormal columns
};

namespace detail {

template <typename Real>
Real off_diagonal_norm(const BasicMatrix<Real>& a)
{
    Real s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Root of t² + 2ζt − 1 = 0 with smaller magnitude.
template <typename Real>
Real jacobi_tangent(Real zeta)
{
    if (std::abs(zeta) > Real(1e150)) return Real(0.5) / zeta;
    const Real sgn = zeta >= 0 ? Real(1) : Real(-1);
    return sgn / (std::abs(zeta) + std::sqrt(Real(1) + zeta * zeta));
}

template <typename Real>
void sort_columns_descending(std::vector<Real>& values, BasicMatrix<Real>& vectors)
{
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });
    std::vector<Real> sorted(values.size());
    BasicMatrix<Real> cols(vectors.rows(), vectors.cols());
    for (std::size_t k = 0; k < order.size(); ++k) {
        sorted[k] = values[order[k]];
        for (std::size_t i = 0; i < vectors.rows(); ++i) cols(i, k) = vectors(i, order[k]);
    }
    values = std::move(sorted);
    vectors = std::move(cols);
}

// Two passes of modified Gram-Schmidt over the columns, in order. A column that
// collapses is replaced by the first standard basis vector independent of the
// previous ones.
template <typename Real>
void orthonormalize_columns(BasicMatrix<Real>& q)
{
    using Scalar = std::complex<Real>;
    const std::size_t m = q.rows();
    auto project_out = [&](std::size_t j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Scalar dot{};
                for (std::size_t i = 0; i < m; ++i) dot += std::conj(q(i, k)) * q(i, j);
                for (std::size_t i = 0; i < m; ++i) q(i, j) -= dot * q(i, k);
            }
        }
        Real nrm = 0;
        for (std::size_t i = 0; i < m; ++i) nrm += std::norm(q(i, j));
        return std::sqrt(nrm);
    };
    for (std::size_t j = 0; j < q.cols(); ++j) {
        Real before = 0;
        for (std::size_t i = 0; i < m; ++i) before += std::norm(q(i, j));
        before = std::sqrt(before);
        Real nrm = project_out(j);
        std::size_t e = 0;
        while (before == 0 || nrm <= Real(1e-8) * before) {
            if (e >= m) throw NumericalFailure("cannot complete orthonormal basis");
            for (std::size_t i = 0; i < m; ++i) q(i, j) = Scalar(i == e ? 1 : 0);
            ++e;
            before = 1;
            nrm = project_out(j);
        }
        for (std::size_t i = 0; i < m; ++i) q(i, j) /= nrm;
    }
}

} // namespace detail

/**
 * @brief Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
 *
 * Each rotation first removes the phase of a(p,q) with diag(1, e^{-iφ}), then
 * applies the real symmetric Jacobi rotation. Converges quadratically; sweeps
 * stop once the off-diagonal Frobenius mass is below machine epsilon relative
 * to ‖M‖_F.
 */
template <typename Real>
EigenDecomposition<Real> herm_eig(const BasicHermMat<Real>& h, int max_sweeps = 100)
{
    using Scalar = std::complex<Real>;
    BasicMatrix<Real> a = h.mat();
    const std::size_t n = a.rows();
    BasicMatrix<Real> v = BasicMatrix<Real>::identity(n);
    const Real scale = a.frobenius_norm();
    const Real eps = std::numeric_limits<Real>::epsilon();

    bool converged = scale == 0;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        if (detail::off_diagonal_norm(a) <= eps * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Scalar apq = a(p, q);
                const Real mag = std::abs(apq);
                if (mag <= std::numeric_limits<Real>::min()) continue;
                const Scalar phase_conj = std::conj(apq / mag);
                const Real zeta = (a(q, q).real() - a(p, p).real()) / (Real(2) * mag);
                const Real t = detail::jacobi_tangent(zeta);
                const Real c = Real(1) / std::sqrt(Real(1) + t * t);
                const Real s = t * c;
                const Scalar jpp = c, jpq = s, jqp = -s * phase_conj, jqq = c * phase_conj;
                for (std::size_t k = 0; k < n; ++k) {
                    const Scalar akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Scalar apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = a(q, p) = Scalar{};
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Scalar vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }
    if (!converged && detail::off_diagonal_norm(a) > eps * scale)
        throw NumericalFailure("herm_eig: Jacobi iteration did not converge");

    EigenDecomposition<Real> out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i).real();
    out.vectors = std::move(v);
    detail::sort_columns_descending(out.values, out.vectors);
    return out;
}

/**
 * @brief Thin SVD by one-sided (Hestenes) Jacobi.
 *
 * Columns of a working copy are rotated pairwise until mutually orthogonal;
 * their norms are the singular values. Left vectors of negligible singular
 * values are completed to an orthonormal set.
 */
template <typename Real>
SingularValueDecomposition<Real> svd(const BasicMatrix<Real>& m, int max_sweeps = 100)
{
    using Scalar = std::complex<Real>;
    if (m.rows() < m.cols()) {
        auto t = svd(m.adjoint(), max_sweeps);
        return {std::move(t.V), std::move(t.sigma), std::move(t.U)};
    }
    if (!m.all_finite()) throw NumericalFailure("svd: non-finite input");

    const std::size_t rows = m.rows(), n = m.cols();
    BasicMatrix<Real> w = m;
    BasicMatrix<Real> v = BasicMatrix<Real>::identity(n);
    const Real eps = std::numeric_limits<Real>::epsilon();
    // rotations themselves perturb orthogonality by ~rows·eps
    const Real orth_tol = Real(std::max<std::size_t>(rows, 1)) * eps;
    const Real negligible = [&] {
        const Real f = m.frobenius_norm() * eps;
        return f * f;
    }();

    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                Real alpha = 0, beta = 0;
                Scalar gamma{};
                for (std::size_t k = 0; k < rows; ++k) {
                    alpha += std::norm(w(k, i));
                    beta += std::norm(w(k, j));
                    gamma += std::conj(w(k, i)) * w(k, j);
                }
                const Real g = std::abs(gamma);
                if (g == 0 || g <= orth_tol * std::sqrt(alpha * beta) || std::min(alpha, beta) <= negligible) continue;
                rotated = true;
                const Scalar phase_conj = std::conj(gamma / g);
                const Real t = detail::jacobi_tangent((beta - alpha) / (Real(2) * g));
                const Real c = Real(1) / std::sqrt(Real(1) + t * t);
                const Real s = t * c;
                for (std::size_t k = 0; k < rows; ++k) {
                    const Scalar wi = w(k, i), wj = w(k, j) * phase_conj;
                    w(k, i) = c * wi - s * wj;
                    w(k, j) = s * wi + c * wj;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Scalar vi = v(k, i), vj = v(k, j) * phase_conj;
                    v(k, i) = c * vi - s * vj;
                    v(k, j) = s * vi + c * vj;
                }
            }
        }
        converged = !rotated;
    }
    if (!converged) throw NumericalFailure("svd: one-sided Jacobi did not converge");

    std::vector<Real> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        Real s = 0;
        for (std::size_t k = 0; k < rows; ++k) s += std::norm(w(k, j));
        sigma[j] = std::sqrt(s);
    }
    // Sort (sigma, columns of w, columns of v) together.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

    SingularValueDecomposition<Real> out;
    out.sigma.resize(n);
    out.U = BasicMatrix<Real>(rows, n);
    out.V = BasicMatrix<Real>(n, n);
    const Real smax = n ? sigma[order[0]] : Real(0);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        out.sigma[k] = sigma[j];
        const bool usable = sigma[j] > 0 && sigma[j] > eps * smax;
        for (std::size_t i = 0; i < rows; ++i) out.U(i, k) = usable ? w(i, j) / sigma[j] : Scalar{};
        for (std::size_t i = 0; i < n; ++i) out.V(i, k) = v(i, j);
    }
    detail::orthonormalize_columns(out.U);
    return out;
}

/// Scaling and squaring with a degree-18 Taylor polynomial on ‖M/2^s‖₁ ≤ ½.
template <typename Real>
BasicMatrix<Real> expm(const BasicMatrix<Real>& m)
{
    if (!m.is_square()) throw DimensionMismatch("expm needs a square matrix");
    if (!m.all_finite()) throw NumericalFailure("expm: non-finite input");
    const std::size_t n = m.rows();
    Real norm1 = 0;
    for (std::size_t j = 0; j < n; ++j) {
        Real s = 0;
        for (std::size_t i = 0; i < n; ++i) s += std::abs(m(i, j));
        norm1 = std::max(norm1, s);
    }
    int squarings = 0;
    if (norm1 > Real(0.5)) squarings = static_cast<int>(std::ceil(std::log2(norm1 / Real(0.5))));
    if (squarings > 1000) throw NumericalFailure("expm: argument too large");

    const BasicMatrix<Real> a = m * std::ldexp(Real(1), -squarings);
    BasicMatrix<Real> result = BasicMatrix<Real>::identity(n);
    BasicMatrix<Real> term = result;
    for (int k = 1; k <= 18; ++k) {
        term = term * a;
        term *= std::complex<Real>(Real(1) / Real(k));
        result += term;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    if (!result.all_finite()) throw NumericalFailure("expm: overflow");
    return result;
}

/// Operator (spectral) norm: the largest singular value.
template <typename Real>
Real op_norm(const BasicMatrix<Real>& m)
{
    if (m.rows() == 0 || m.cols() == 0) return Real(0);
    return svd(m).sigma.front();
}

template <typename Real>
Real op_norm(const BasicHermMat<Real>& h)
{
    if (h.dim() == 0) return Real(0);
    const auto e = herm_eig(h);
    return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
}

struct ProjectionCheck {
    bool is_projection = false;
    std::size_t rank = 0;   // eigenvalues above ½
    double residual = 0;    // ‖M² − M‖_op
};

inline ProjectionCheck is_projection(const HermMat& m, const Tolerances& tol = {})
{
    ProjectionCheck out;
    const CMat& x = m.mat();
    out.residual = op_norm(x * x - x);
    const auto e = herm_eig(m);
    out.rank = static_cast<std::size_t>(std::count_if(e.values.begin(), e.values.end(), [](double v) { return v > 0.5; }));
    out.is_projection = out.residual <= tol.tol_proj;
    return out;
}

/// Orthonormal basis of the eigenspace of eigenvalues above ½ (range of a projection).
inline CMat range_basis(const HermMat& p)
{
    const auto e = herm_eig(p);
    const auto r = static_cast<std::size_t>(std::count_if(e.values.begin(), e.values.end(), [](double v) { return v > 0.5; }));
    return e.vectors.col_range(0, r);
}

/// Orthonormal basis of the eigenspace of eigenvalues at most ½ (kernel of a projection).
inline CMat kernel_basis(const HermMat& p)
{
    const auto e = herm_eig(p);
    const auto r = static_cast<std::size_t>(std::count_if(e.values.begin(), e.values.end(), [](double v) { return v > 0.5; }));
    return e.vectors.col_range(r, p.dim() - r);
}

/// Projection Q Q* onto the span of orthonormal columns.
inline HermMat column_projector(const CMat& q) { return HermMat::symmetrized(q * q.adjoint()); }

/// Groups descending values into runs whose consecutive gaps are ≤ gap.
inline std::vector<std::pair<std::size_t, std::size_t>> cluster_descending(std::span<const double> values, double gap)
{
    std::vector<std::pair<std::size_t, std::size_t>> runs;   // [first, last)
    std::size_t start = 0;
    for (std::size_t k = 1; k <= values.size(); ++k) {
        if (k == values.size() || values[k - 1] - values[k] > gap) {
            if (k > start) runs.emplace_back(start, k);
            start = k;
        }
    }
    return runs;
}

} // namespace jgeom
