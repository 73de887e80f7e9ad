#include "ocorg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "ocorg/errors.hpp"

namespace ocorg {

const NumericSettings& default_settings() {
    static const NumericSettings cfg{};
    return cfg;
}

namespace {

void check_finite(const std::vector<double>& entries) {
    for (double v : entries) {
        if (!std::isfinite(v)) throw DimensionMismatch("Matrix entry is not finite");
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionMismatch("entry count does not match rows*cols");
    check_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionMismatch("ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    check_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

Matrix Matrix::diag(const Vector& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::column(const Vector& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Vector Matrix::row(std::size_t i) const {
    return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

Vector Matrix::col(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

Matrix Matrix::operator+(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("matrix add: shape mismatch");
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + other.data_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("matrix sub: shape mismatch");
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - other.data_[i];
    return r;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw DimensionMismatch("matrix mul: shape mismatch");
    Matrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) r(i, j) += a * other(k, j);
        }
    }
    return r;
}

Matrix Matrix::operator*(double s) const {
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * s;
    return r;
}

Vector Matrix::operator*(const Vector& v) const {
    if (cols_ != v.size()) throw DimensionMismatch("matrix-vector mul: shape mismatch");
    Vector r(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

Matrix Matrix::operator-() const { return (*this) * -1.0; }

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
}

Matrix operator*(double s, const Matrix& m) { return m * s; }

Vector operator+(const Vector& a, const Vector& b) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector operator-(const Vector& a, const Vector& b) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector operator*(double s, const Vector& v) {
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

double norm_inf(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

Vector concat(const Vector& a, const Vector& b) {
    Vector r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Matrix solve_linear(const Matrix& A, const Matrix& B, const NumericSettings& cfg) {
    if (A.rows() != A.cols()) throw DimensionMismatch("solve_linear: A not square");
    if (A.rows() != B.rows()) throw DimensionMismatch("solve_linear: A/B row mismatch");
    const std::size_t n = A.rows();
    const std::size_t k = B.cols();
    Matrix lu = A;
    Matrix x = B;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (std::fabs(lu(i, c)) > std::fabs(lu(piv, c))) piv = i;
        if (std::fabs(lu(piv, c)) <= cfg.pivot_tol)
            throw SingularMatrix("solve_linear: pivot below threshold");
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(c, j), lu(piv, j));
            for (std::size_t j = 0; j < k; ++j) std::swap(x(c, j), x(piv, j));
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            const double f = lu(i, c) / lu(c, c);
            if (f == 0.0) continue;
            for (std::size_t j = c; j < n; ++j) lu(i, j) -= f * lu(c, j);
            for (std::size_t j = 0; j < k; ++j) x(i, j) -= f * x(c, j);
        }
    }
    for (std::size_t ci = n; ci-- > 0;) {
        for (std::size_t j = 0; j < k; ++j) {
            double s = x(ci, j);
            for (std::size_t c2 = ci + 1; c2 < n; ++c2) s -= lu(ci, c2) * x(c2, j);
            x(ci, j) = s / lu(ci, ci);
        }
    }
    return x;
}

Vector solve_linear(const Matrix& A, const Vector& b, const NumericSettings& cfg) {
    return solve_linear(A, Matrix::column(b), cfg).col(0);
}

double norm2(const Matrix& A, const NumericSettings& cfg) {
    if (A.rows() == 0 || A.cols() == 0) return 0.0;
    // Scale out the largest entry so the Gram matrix cannot overflow.
    const double scale_out = A.max_abs();
    if (scale_out == 0.0) return 0.0;
    const Matrix As = A * (1.0 / scale_out);
    const Matrix G = As.transpose() * As;  // Gram matrix; top eigenvalue = ||As||^2
    const std::size_t n = G.rows();
    Vector v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double lam = 0.0;
    for (int it = 0; it < 20000; ++it) {
        Vector w = G * v;
        const double nw = norm2(w);
        if (nw == 0.0) return 0.0;
        for (auto& x : w) x /= nw;
        const double lam_new = dot(w, G * w);
        v = std::move(w);
        if (std::fabs(lam_new - lam) <= cfg.norm_tol * (1.0 + std::fabs(lam_new))) {
            lam = lam_new;
            break;
        }
        lam = lam_new;
    }
    return scale_out * std::sqrt(std::max(lam, 0.0));
}

SpectralCertificate spectral_radius_below(const Matrix& A, double lambda, int k_max,
                                          const NumericSettings& cfg) {
    SpectralCertificate cert;
    if (A.rows() != A.cols()) throw DimensionMismatch("spectral_radius_below: A not square");
    Matrix pk = Matrix::identity(A.rows());
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= k_max; ++k) {
        pk = pk * A;
        const double nk = norm2(pk, cfg);
        const double root = std::pow(nk, 1.0 / k);
        if (root < best) best = root;
        cert.bound = best;
        if (root < lambda) {
            cert.certified = true;
            cert.k = k;
            cert.bound = root;
            return cert;
        }
        if (nk > 1e100) break;  // powers diverging, no certificate ahead
    }
    return cert;
}

std::vector<double> matrix_power_norms(const Matrix& A, int k_max, const NumericSettings& cfg) {
    if (A.rows() != A.cols()) throw DimensionMismatch("matrix_power_norms: A not square");
    std::vector<double> norms;
    norms.reserve(k_max + 1);
    Matrix pk = Matrix::identity(A.rows());
    norms.push_back(norm2(pk, cfg));
    for (int k = 1; k <= k_max; ++k) {
        pk = pk * A;
        norms.push_back(norm2(pk, cfg));
    }
    return norms;
}

Vector symmetric_eigenvalues(const Matrix& S, const NumericSettings& cfg) {
    if (S.rows() != S.cols()) throw DimensionMismatch("symmetric_eigenvalues: not square");
    const std::size_t n = S.rows();
    Matrix a = S;
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (std::sqrt(off) < cfg.jacobi_tol) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    Vector ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace ocorg
