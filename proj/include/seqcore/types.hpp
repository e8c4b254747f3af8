#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seqcore {

using Complex = std::complex<double>;

/// Raised when an input violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline bool is_finite(Complex z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// A length-N truncation of a complex sequence, index origin 0.
class FiniteSeq {
public:
    FiniteSeq() = default;

    explicit FiniteSeq(std::vector<Complex> values) : values_(std::move(values)) {
        if (values_.empty()) {
            throw InvalidArgument("FiniteSeq: length must be at least 1");
        }
        for (std::size_t k = 0; k < values_.size(); ++k) {
            if (!is_finite(values_[k])) {
                throw InvalidArgument("FiniteSeq: non-finite entry at index " + std::to_string(k));
            }
        }
    }

    FiniteSeq(std::initializer_list<Complex> values) : FiniteSeq(std::vector<Complex>(values)) {}

    static FiniteSeq from_real(std::span<const double> values) {
        return FiniteSeq(std::vector<Complex>(values.begin(), values.end()));
    }

    static FiniteSeq zeros(std::size_t n) { return FiniteSeq(std::vector<Complex>(n, Complex{})); }

    std::size_t size() const noexcept { return values_.size(); }
    Complex operator[](std::size_t k) const { return values_[k]; }
    Complex at(std::size_t k) const { return values_.at(k); }
    std::span<const Complex> values() const noexcept { return values_; }

    FiniteSeq head(std::size_t n) const {
        if (n > values_.size()) {
            throw InvalidArgument("FiniteSeq::head: requested length exceeds sequence length");
        }
        return FiniteSeq(std::vector<Complex>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n)));
    }

    double sup_norm() const noexcept {
        double m = 0.0;
        for (auto v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    friend bool operator==(const FiniteSeq&, const FiniteSeq&) = default;

private:
    std::vector<Complex> values_;
};

/// Dense row-major complex matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    bool all_finite() const noexcept {
        return std::all_of(data_.begin(), data_.end(), [](Complex z) { return is_finite(z); });
    }

    bool is_real() const noexcept {
        return std::all_of(data_.begin(), data_.end(), [](Complex z) { return z.imag() == 0.0; });
    }

    Matrix& operator*=(Complex c) {
        for (auto& v : data_) v *= c;
        return *this;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        require_same_shape(a, b);
        Matrix out = a;
        for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
        return out;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        require_same_shape(a, b);
        Matrix out = a;
        for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw InvalidArgument("Matrix product: inner dimensions differ");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) {
                const Complex aij = a(i, j);
                if (aij == Complex{}) continue;
                for (std::size_t k = 0; k < b.cols_; ++k) out(i, k) += aij * b(j, k);
            }
        }
        return out;
    }

    std::vector<Complex> apply(std::span<const Complex> x) const {
        if (x.size() != cols_) throw InvalidArgument("Matrix::apply: vector length differs from column count");
        std::vector<Complex> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            Complex acc{};
            for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
            y[i] = acc;
        }
        return y;
    }

    double max_abs_diff(const Matrix& other) const {
        require_same_shape(*this, other);
        double m = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - other.data_[i]));
        return m;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    static void require_same_shape(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("Matrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Square lower-triangular matrix. Entries above the diagonal are exactly zero.
class TriangleKernel {
public:
    TriangleKernel() = default;

    explicit TriangleKernel(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() == 0) {
            throw InvalidArgument("TriangleKernel: matrix must be square and non-empty");
        }
        for (std::size_t n = 0; n < m_.rows(); ++n) {
            for (std::size_t k = n + 1; k < m_.cols(); ++k) {
                if (m_(n, k) != Complex{}) throw InvalidArgument("TriangleKernel: non-zero entry above the diagonal");
            }
        }
    }

    std::size_t size() const noexcept { return m_.rows(); }
    Complex operator()(std::size_t n, std::size_t k) const { return m_(n, k); }
    const Matrix& matrix() const noexcept { return m_; }

    bool has_nonzero_diagonal() const {
        for (std::size_t n = 0; n < size(); ++n) {
            if (m_(n, n) == Complex{}) return false;
        }
        return true;
    }

    FiniteSeq apply(const FiniteSeq& x) const {
        if (x.size() != size()) throw InvalidArgument("TriangleKernel::apply: length mismatch");
        std::vector<Complex> y(size());
        for (std::size_t n = 0; n < size(); ++n) {
            Complex acc{};
            for (std::size_t k = 0; k <= n; ++k) acc += m_(n, k) * x[k];
            y[n] = acc;
        }
        return FiniteSeq(std::move(y));
    }

private:
    Matrix m_;
};

/// Parameter triple (r, s, alpha) of the two-band operator: diagonal r_n / alpha_n,
/// subdiagonal s_{n-1} / alpha_n.
class BandSystem {
public:
    BandSystem(std::vector<double> r, std::vector<double> s, std::vector<double> alpha)
        : r_(std::move(r)), s_(std::move(s)), alpha_(std::move(alpha)) {
        if (r_.empty() || s_.empty() || alpha_.empty()) throw InvalidArgument("BandSystem: empty parameter sequence");
        for (std::size_t k = 0; k < r_.size(); ++k) {
            if (!std::isfinite(r_[k]) || r_[k] == 0.0) throw InvalidArgument("BandSystem: r_" + std::to_string(k) + " must be finite and non-zero");
        }
        for (std::size_t k = 0; k < s_.size(); ++k) {
            if (!std::isfinite(s_[k]) || s_[k] == 0.0) throw InvalidArgument("BandSystem: s_" + std::to_string(k) + " must be finite and non-zero");
        }
        for (std::size_t k = 0; k < alpha_.size(); ++k) {
            if (!std::isfinite(alpha_[k]) || alpha_[k] <= 0.0) throw InvalidArgument("BandSystem: alpha_" + std::to_string(k) + " must be finite and positive");
        }
    }

    static BandSystem constant(double r, double s, double alpha, std::size_t n) {
        return {std::vector<double>(n, r), std::vector<double>(n, s), std::vector<double>(n, alpha)};
    }

    /// r = e, s = -e, alpha = e: the difference operator.
    static BandSystem difference(std::size_t n) { return constant(1.0, -1.0, 1.0, n); }

    /// Largest truncation length the parameters support.
    std::size_t size() const noexcept { return std::min({r_.size(), s_.size(), alpha_.size()}); }

    double r(std::size_t k) const { return r_[k]; }
    double s(std::size_t k) const { return s_[k]; }
    double alpha(std::size_t k) const { return alpha_[k]; }

    std::span<const double> r_values() const noexcept { return r_; }
    std::span<const double> s_values() const noexcept { return s_; }
    std::span<const double> alpha_values() const noexcept { return alpha_; }

    void require_length(std::size_t n, const char* who) const {
        if (n > size()) {
            throw InvalidArgument(std::string(who) + ": truncation " + std::to_string(n) +
                                  " exceeds band system length " + std::to_string(size()));
        }
    }

private:
    std::vector<double> r_;
    std::vector<double> s_;
    std::vector<double> alpha_;
};

/// Bounded positive exponent sequence (p_k) with H = sup p_k and M = max(1, H).
class ExponentSeq {
public:
    static constexpr double kInfThreshold = 1e-9;

    explicit ExponentSeq(std::vector<double> p) : p_(std::move(p)) {
        if (p_.empty()) throw InvalidArgument("ExponentSeq: empty sequence");
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < p_.size(); ++k) {
            if (!std::isfinite(p_[k]) || p_[k] <= 0.0) throw InvalidArgument("ExponentSeq: p_" + std::to_string(k) + " must be finite and positive");
            sup_ = std::max(sup_, p_[k]);
            lo = std::min(lo, p_[k]);
        }
        inf_ = lo;
        M_ = std::max(1.0, sup_);
    }

    static ExponentSeq constant(double p, std::size_t n) { return ExponentSeq(std::vector<double>(n, p)); }

    std::size_t size() const noexcept { return p_.size(); }
    double operator[](std::size_t k) const { return p_[k]; }
    std::span<const double> values() const noexcept { return p_; }

    double H() const noexcept { return sup_; }
    double M() const noexcept { return M_; }
    double inf() const noexcept { return inf_; }
    bool inf_positive() const noexcept { return inf_ > kInfThreshold; }

    /// All p_k <= 1 (the "small exponent" regime).
    bool all_at_most_one() const noexcept { return sup_ <= 1.0; }
    /// All p_k > 1, so every conjugate exponent is defined.
    bool all_above_one() const noexcept { return inf_ > 1.0; }

    /// p'_k with 1/p_k + 1/p'_k = 1.
    double conjugate(std::size_t k) const {
        if (p_[k] <= 1.0) throw InvalidArgument("ExponentSeq::conjugate: p_" + std::to_string(k) + " <= 1 has no conjugate exponent");
        return p_[k] / (p_[k] - 1.0);
    }

    void require_length(std::size_t n, const char* who) const {
        if (n > p_.size()) {
            throw InvalidArgument(std::string(who) + ": exponent sequence shorter than " + std::to_string(n));
        }
    }

private:
    std::vector<double> p_;
    double sup_ = 0.0;
    double inf_ = 0.0;
    double M_ = 1.0;
};

}  // namespace seqcore
