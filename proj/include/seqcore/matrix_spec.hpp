#pragma once

// MatrixSpec: an infinite matrix given either by a generator or a dense block,
// optionally scaled and optionally lifted through a band system (B = V * inner,
// so that the band transform of B is the inner matrix). Every truncation is the
// leading N x N block of the same infinite matrix.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "seqcore/band_ops.hpp"
#include "seqcore/generators.hpp"
#include "seqcore/types.hpp"

namespace seqcore {

namespace detail {

/// Row n of a generator matrix, columns [0, len).
inline std::vector<Complex> generator_row(const GeneratorSpec& g, std::size_t n, std::size_t len) {
    g.validate(std::max(n + 1, len));
    std::vector<Complex> row(len, Complex{});
    auto put = [&](std::size_t k, Complex v) {
        if (k < len) row[k] = v;
    };
    switch (g.name) {
        case GeneratorName::cesaro:
            for (std::size_t k = 0; k <= n && k < len; ++k) row[k] = 1.0 / static_cast<double>(n + 1);
            break;
        case GeneratorName::riesz: {
            double q = 0.0;
            for (std::size_t k = 0; k <= n; ++k) q += g.t[k];
            for (std::size_t k = 0; k <= n && k < len; ++k) row[k] = g.t[k] / q;
            break;
        }
        case GeneratorName::band:
            put(n, g.r);
            if (n > 0) put(n - 1, g.s);
            break;
        case GeneratorName::double_band: {
            const BandSystem& b = *g.double_band;
            put(n, b.r(n) / b.alpha(n));
            if (n > 0) put(n - 1, b.s(n - 1) / b.alpha(n));
            break;
        }
        case GeneratorName::summation:
            for (std::size_t k = 0; k <= n && k < len; ++k) row[k] = 1.0;
            break;
        case GeneratorName::difference:
            put(n, 1.0);
            if (n > 0) put(n - 1, -1.0);
            break;
        case GeneratorName::identity:
            put(n, 1.0);
            break;
        case GeneratorName::zero:
            break;
    }
    return row;
}

}  // namespace detail

class MatrixSpec {
public:
    MatrixSpec() : base_(GeneratorSpec::of(GeneratorName::identity)) {}

    static MatrixSpec generator(GeneratorSpec g) { return MatrixSpec(std::move(g)); }
    static MatrixSpec generator(GeneratorName n) { return MatrixSpec(GeneratorSpec::of(n)); }

    static MatrixSpec dense(Matrix m) {
        if (m.rows() == 0 || m.cols() == 0) throw InvalidArgument("MatrixSpec: empty dense block");
        if (!m.all_finite()) throw InvalidArgument("MatrixSpec: dense block has non-finite entries");
        return MatrixSpec(std::move(m));
    }

    MatrixSpec scaled(Complex c) const {
        if (!is_finite(c)) throw InvalidArgument("MatrixSpec: non-finite scale");
        MatrixSpec out = *this;
        out.scale_ *= c;
        return out;
    }

    /// B = V * (this), with V the inverse kernel of `sys`.
    MatrixSpec lifted(BandSystem sys) const {
        if (lift_) throw InvalidArgument("MatrixSpec: already lifted");
        MatrixSpec out = *this;
        out.lift_ = std::move(sys);
        return out;
    }

    bool is_dense() const noexcept { return std::holds_alternative<Matrix>(base_); }
    const GeneratorSpec* generator_spec() const noexcept { return std::get_if<GeneratorSpec>(&base_); }
    const Matrix* dense_block() const noexcept { return std::get_if<Matrix>(&base_); }
    Complex scale() const noexcept { return scale_; }
    const std::optional<BandSystem>& lift() const noexcept { return lift_; }

    /// Largest truncation available (dense blocks and finite parameter sequences bound it).
    std::size_t max_size() const {
        std::size_t cap = static_cast<std::size_t>(-1);
        if (const Matrix* m = dense_block()) cap = std::min(m->rows(), m->cols());
        if (const GeneratorSpec* g = generator_spec()) {
            if (g->name == GeneratorName::riesz) cap = g->t.size();
            if (g->name == GeneratorName::double_band && g->double_band) cap = g->double_band->size();
        }
        if (lift_) cap = std::min(cap, lift_->size());
        return cap;
    }

    void require_size(std::size_t n) const {
        if (n == 0) throw InvalidArgument("MatrixSpec: truncation must be at least 1");
        if (n > max_size()) {
            throw InvalidArgument("MatrixSpec: truncation " + std::to_string(n) + " exceeds available size " + std::to_string(max_size()));
        }
    }

    Matrix materialize(std::size_t n) const {
        require_size(n);
        Matrix inner = base_block(n);
        if (scale_ != Complex(1.0)) inner *= scale_;
        if (!lift_) return inner;
        return inverse_kernel(*lift_, n).matrix() * inner;
    }

    /// Row n restricted to columns [0, len).
    std::vector<Complex> row(std::size_t n, std::size_t len) const {
        const Matrix* m = dense_block();
        if (m && !lift_) {
            if (len == 0 || n >= m->rows() || len > m->cols()) {
                throw InvalidArgument("MatrixSpec: row " + std::to_string(n) + " of length " + std::to_string(len) +
                                      " exceeds the dense block");
            }
            return scaled_base_row(n, len);
        }
        require_size(std::max(n + 1, len));
        if (!lift_) return scaled_base_row(n, len);
        const detail::LogRatioPrefix pre(*lift_, n + 1);
        std::vector<Complex> out(len, Complex{});
        for (std::size_t j = 0; j <= n; ++j) {
            const double v = detail::inverse_entry(*lift_, pre, n, j);
            const auto r = scaled_base_row(j, len);
            for (std::size_t k = 0; k < len; ++k) out[k] += v * r[k];
        }
        return out;
    }

    /// y = B x on the leading block of size x.size(); O(N) for generators.
    std::vector<Complex> apply(std::span<const Complex> x) const {
        const std::size_t n = x.size();
        require_size(n);
        std::vector<Complex> y;
        if (const GeneratorSpec* g = generator_spec()) {
            y = apply_generator(*g, x);
        } else {
            y = base_block(n).apply(x);
        }
        if (scale_ != Complex(1.0)) {
            for (auto& v : y) v *= scale_;
        }
        if (!lift_) return y;
        const FiniteSeq lifted = inverse_transform(FiniteSeq(std::move(y)), *lift_);
        return {lifted.values().begin(), lifted.values().end()};
    }

private:
    explicit MatrixSpec(GeneratorSpec g) : base_(std::move(g)) {}
    explicit MatrixSpec(Matrix m) : base_(std::move(m)) {}

    Matrix base_block(std::size_t n) const {
        if (const GeneratorSpec* g = generator_spec()) return make_matrix(*g, n);
        const Matrix& d = std::get<Matrix>(base_);
        Matrix out(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) out(i, k) = d(i, k);
        }
        return out;
    }

    std::vector<Complex> scaled_base_row(std::size_t n, std::size_t len) const {
        std::vector<Complex> r;
        if (const GeneratorSpec* g = generator_spec()) {
            r = detail::generator_row(*g, n, len);
        } else {
            const Matrix& d = std::get<Matrix>(base_);
            r.assign(d.row(n).begin(), d.row(n).begin() + static_cast<std::ptrdiff_t>(len));
        }
        if (scale_ != Complex(1.0)) {
            for (auto& v : r) v *= scale_;
        }
        return r;
    }

    std::variant<GeneratorSpec, Matrix> base_;
    Complex scale_{1.0};
    std::optional<BandSystem> lift_;
};

}  // namespace seqcore
