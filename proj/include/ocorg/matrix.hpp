#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ocorg {

using Vector = std::vector<double>;

/// Numeric tolerances used throughout the library. One instance with the
/// documented defaults is shared unless a caller overrides individual fields.
struct NumericSettings {
    double pivot_tol = 1e-12;         // LU elimination pivot threshold
    double linsolve_residual = 1e-9;  // acceptable residual for solve_linear
    double riccati_tol = 1e-12;       // DARE fixed-point max-norm tolerance
    int riccati_cap = 100000;         // DARE iteration cap
    int spectral_kmax = 500;          // power horizon for spectral certificates
    double norm_tol = 1e-10;          // power-iteration tolerance for ||A||_2
    double jacobi_tol = 1e-12;        // cyclic Jacobi off-diagonal tolerance
    double lp_tol = 1e-9;             // simplex feasibility / optimality slack
    double dykstra_tol = 1e-10;       // projection convergence tolerance
    int dykstra_cap = 100000;         // projection cycle cap
};

const NumericSettings& default_settings();

/// Dense real matrix, row-major. Constructors reject NaN/Inf entries.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t rows, std::size_t cols);
    static Matrix diag(const Vector& d);
    static Matrix column(const Vector& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    Matrix transpose() const;
    Vector row(std::size_t i) const;
    Vector col(std::size_t j) const;

    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix operator*(const Matrix& other) const;
    Matrix operator*(double s) const;
    Vector operator*(const Vector& v) const;
    Matrix operator-() const;

    double max_abs() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(double s, const Matrix& m);

// Vector helpers.
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& v);
double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double norm_inf(const Vector& v);
Vector concat(const Vector& a, const Vector& b);

/// Solves A X = B by LU elimination with partial pivoting.
/// Throws SingularMatrix when a pivot magnitude drops below the threshold.
Matrix solve_linear(const Matrix& A, const Matrix& B,
                    const NumericSettings& cfg = default_settings());
Vector solve_linear(const Matrix& A, const Vector& b,
                    const NumericSettings& cfg = default_settings());

/// Induced 2-norm via power iteration on A^T A.
double norm2(const Matrix& A, const NumericSettings& cfg = default_settings());

/// Certificate that rho(A) < lambda: searches for k <= k_max with
/// ||A^k||^(1/k) < lambda. `certified == false` is inconclusive, not a disproof.
struct SpectralCertificate {
    bool certified = false;
    int k = -1;          // witnessing power when certified
    double bound = 0.0;  // ||A^k||^(1/k) at the witness (or best seen)
};
SpectralCertificate spectral_radius_below(const Matrix& A, double lambda, int k_max = 500,
                                          const NumericSettings& cfg = default_settings());

/// ||A^k||_2 for k = 0..k_max. Diagnostic sequence; decays for Schur-stable A.
std::vector<double> matrix_power_norms(const Matrix& A, int k_max,
                                       const NumericSettings& cfg = default_settings());

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
Vector symmetric_eigenvalues(const Matrix& S,
                             const NumericSettings& cfg = default_settings());

}  // namespace ocorg
