#pragma once

// Deterministic constructors for the classical summability matrices and the
// sequence families used as fixtures.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqcore/rng.hpp"
#include "seqcore/types.hpp"

namespace seqcore {

enum class GeneratorName { cesaro, riesz, band, double_band, summation, difference, identity, zero };

inline std::string_view to_string(GeneratorName g) {
    switch (g) {
        case GeneratorName::cesaro: return "cesaro";
        case GeneratorName::riesz: return "riesz";
        case GeneratorName::band: return "band";
        case GeneratorName::double_band: return "double_band";
        case GeneratorName::summation: return "summation";
        case GeneratorName::difference: return "difference";
        case GeneratorName::identity: return "identity";
        case GeneratorName::zero: return "zero";
    }
    return "?";
}

inline GeneratorName parse_generator_name(std::string_view s) {
    for (auto g : {GeneratorName::cesaro, GeneratorName::riesz, GeneratorName::band, GeneratorName::double_band,
                   GeneratorName::summation, GeneratorName::difference, GeneratorName::identity, GeneratorName::zero}) {
        if (to_string(g) == s) return g;
    }
    throw InvalidArgument("unknown matrix generator '" + std::string(s) + "'");
}

struct GeneratorSpec {
    GeneratorName name = GeneratorName::identity;
    std::vector<double> t;                  // riesz weights, t_k > 0
    double r = 1.0;                         // band diagonal
    double s = 1.0;                         // band subdiagonal
    std::optional<BandSystem> double_band;  // (r~, s~, alpha) for double_band

    static GeneratorSpec of(GeneratorName n) {
        GeneratorSpec g;
        g.name = n;
        return g;
    }
    static GeneratorSpec riesz(std::vector<double> weights) {
        GeneratorSpec g = of(GeneratorName::riesz);
        g.t = std::move(weights);
        return g;
    }
    static GeneratorSpec band(double r, double s) {
        GeneratorSpec g = of(GeneratorName::band);
        g.r = r;
        g.s = s;
        return g;
    }
    static GeneratorSpec two_band(BandSystem sys) {
        GeneratorSpec g = of(GeneratorName::double_band);
        g.double_band = std::move(sys);
        return g;
    }

    void validate(std::size_t n) const {
        switch (name) {
            case GeneratorName::riesz:
                if (t.size() < n) throw InvalidArgument("riesz: weight sequence shorter than truncation");
                for (std::size_t k = 0; k < n; ++k) {
                    if (!(t[k] > 0.0) || !std::isfinite(t[k])) throw InvalidArgument("riesz: weights must be positive");
                }
                break;
            case GeneratorName::band:
                if (r == 0.0 || s == 0.0 || !std::isfinite(r) || !std::isfinite(s)) {
                    throw InvalidArgument("band: r and s must be finite and non-zero");
                }
                break;
            case GeneratorName::double_band:
                if (!double_band) throw InvalidArgument("double_band: missing (r, s, alpha) parameters");
                double_band->require_length(n, "double_band");
                break;
            default:
                break;
        }
    }
};

/// Exact truncation of the named infinite matrix.
inline Matrix make_matrix(const GeneratorSpec& spec, std::size_t n) {
    if (n == 0) throw InvalidArgument("make_matrix: truncation length must be at least 1");
    spec.validate(n);
    Matrix m(n, n);
    switch (spec.name) {
        case GeneratorName::cesaro:
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k <= i; ++k) m(i, k) = 1.0 / static_cast<double>(i + 1);
            }
            break;
        case GeneratorName::riesz: {
            double q = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                q += spec.t[i];
                for (std::size_t k = 0; k <= i; ++k) m(i, k) = spec.t[k] / q;
            }
            break;
        }
        case GeneratorName::band:
            for (std::size_t i = 0; i < n; ++i) {
                m(i, i) = spec.r;
                if (i > 0) m(i, i - 1) = spec.s;
            }
            break;
        case GeneratorName::double_band: {
            const BandSystem& b = *spec.double_band;
            for (std::size_t i = 0; i < n; ++i) {
                m(i, i) = b.r(i) / b.alpha(i);
                if (i > 0) m(i, i - 1) = b.s(i - 1) / b.alpha(i);
            }
            break;
        }
        case GeneratorName::summation:
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k <= i; ++k) m(i, k) = 1.0;
            }
            break;
        case GeneratorName::difference:
            for (std::size_t i = 0; i < n; ++i) {
                m(i, i) = 1.0;
                if (i > 0) m(i, i - 1) = -1.0;
            }
            break;
        case GeneratorName::identity:
            for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
            break;
        case GeneratorName::zero:
            break;
    }
    return m;
}

/// Applies the generator matrix to x in O(N) without materialising it.
inline std::vector<Complex> apply_generator(const GeneratorSpec& spec, std::span<const Complex> x) {
    const std::size_t n = x.size();
    if (n == 0) throw InvalidArgument("apply_generator: empty input");
    spec.validate(n);
    std::vector<Complex> y(n);
    switch (spec.name) {
        case GeneratorName::cesaro: {
            Complex acc{};
            for (std::size_t i = 0; i < n; ++i) {
                acc += x[i];
                y[i] = acc / static_cast<double>(i + 1);
            }
            break;
        }
        case GeneratorName::riesz: {
            Complex acc{};
            double q = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += spec.t[i] * x[i];
                q += spec.t[i];
                y[i] = acc / q;
            }
            break;
        }
        case GeneratorName::band:
            for (std::size_t i = 0; i < n; ++i) y[i] = spec.r * x[i] + (i > 0 ? spec.s * x[i - 1] : Complex{});
            break;
        case GeneratorName::double_band: {
            const BandSystem& b = *spec.double_band;
            for (std::size_t i = 0; i < n; ++i) {
                y[i] = (b.r(i) * x[i] + (i > 0 ? b.s(i - 1) * x[i - 1] : Complex{})) / b.alpha(i);
            }
            break;
        }
        case GeneratorName::summation: {
            Complex acc{};
            for (std::size_t i = 0; i < n; ++i) y[i] = (acc += x[i]);
            break;
        }
        case GeneratorName::difference:
            for (std::size_t i = 0; i < n; ++i) y[i] = x[i] - (i > 0 ? x[i - 1] : Complex{});
            break;
        case GeneratorName::identity:
            y.assign(x.begin(), x.end());
            break;
        case GeneratorName::zero:
            break;
    }
    return y;
}

// ---------------------------------------------------------------------------
// Sequence families

enum class SequenceName { alternating, roots_of_unity, square_indicator, convergent, random_bounded, ones, unit };

struct SequenceSpec {
    SequenceName name = SequenceName::ones;
    unsigned m = 4;            // roots_of_unity order
    Complex limit{};           // convergent: limit l
    double rate = 1.0;         // convergent: x_k = l + (k+1)^{-rate}
    std::uint64_t seed = 0;    // random_bounded
    unsigned clusters = 4;     // random_bounded: number of cluster points
    std::size_t index = 0;     // unit: e^(index)
};

inline bool is_perfect_square(std::size_t k) {
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(k)));
    while (r * r > k) --r;
    while ((r + 1) * (r + 1) <= k) ++r;
    return r * r == k;
}

/// Cluster points of random_bounded(seed): a finite set inside the disc of radius
/// 0.35 around 0.5 + 0.25i.
inline std::vector<Complex> random_bounded_clusters(std::uint64_t seed, unsigned clusters) {
    CounterRng rng(seed ^ 0xC1u);
    std::vector<Complex> pts;
    pts.reserve(clusters);
    for (unsigned j = 0; j < clusters; ++j) {
        const double rad = 0.35 * std::sqrt(rng.uniform());
        const double ang = 2.0 * std::numbers::pi * rng.uniform();
        pts.push_back(Complex(0.5, 0.25) + std::polar(rad, ang));
    }
    return pts;
}

inline FiniteSeq make_sequence(const SequenceSpec& spec, std::size_t n) {
    if (n == 0) throw InvalidArgument("make_sequence: length must be at least 1");
    std::vector<Complex> x(n);
    switch (spec.name) {
        case SequenceName::alternating:
            for (std::size_t k = 0; k < n; ++k) x[k] = (k % 2 == 0) ? 1.0 : -1.0;
            break;
        case SequenceName::roots_of_unity: {
            if (spec.m == 0) throw InvalidArgument("roots_of_unity: order must be positive");
            static constexpr Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t j = k % spec.m;
                if ((4 * j) % spec.m == 0) {
                    x[k] = quarter[(4 * j) / spec.m];
                } else {
                    x[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / spec.m);
                }
            }
            break;
        }
        case SequenceName::square_indicator:
            for (std::size_t k = 0; k < n; ++k) x[k] = is_perfect_square(k) ? 1.0 : 0.0;
            break;
        case SequenceName::convergent:
            if (!(spec.rate > 0.0)) throw InvalidArgument("convergent: rate must be positive");
            for (std::size_t k = 0; k < n; ++k) x[k] = spec.limit + std::pow(static_cast<double>(k + 1), -spec.rate);
            break;
        case SequenceName::random_bounded: {
            if (spec.clusters == 0) throw InvalidArgument("random_bounded: need at least one cluster point");
            const auto pts = random_bounded_clusters(spec.seed, spec.clusters);
            CounterRng rng(spec.seed);
            for (std::size_t k = 0; k < n; ++k) {
                const Complex c = pts[rng.below(spec.clusters)];
                const double rad = rng.uniform();
                const double ang = 2.0 * std::numbers::pi * rng.uniform();
                x[k] = c + std::polar(0.5 * rad / static_cast<double>(k + 1), ang);
            }
            break;
        }
        case SequenceName::ones:
            for (auto& v : x) v = 1.0;
            break;
        case SequenceName::unit:
            if (spec.index >= n) throw InvalidArgument("e_n: index outside the truncation");
            x[spec.index] = 1.0;
            break;
    }
    return FiniteSeq(std::move(x));
}

}  // namespace seqcore
