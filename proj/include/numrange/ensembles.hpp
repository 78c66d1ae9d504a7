#pragma once

// Deterministic random-matrix generation for the verification harness.
// Everything here is a pure function of (kind, dim, seed): the PRNG is
// SplitMix64 (a counter-based 64-bit generator with a published finalizer),
// uniforms are ((x >> 11) + 0.5) * 2^-53, Gaussians come from Box-Muller
// evaluated in a fixed order, and complex Gaussians are (z0 + i z1)/sqrt(2).
// No <random> distributions are used because their streams are not
// specified portably; reports must replay bit-identically anywhere.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace numrange {

enum class EnsembleKind { ginibre, haar_unitary, hermitian, nilpotent_jordan, shifted_scaled };

inline constexpr std::array<EnsembleKind, 5> kEnsembleKinds = {
    EnsembleKind::ginibre, EnsembleKind::haar_unitary, EnsembleKind::hermitian,
    EnsembleKind::nilpotent_jordan, EnsembleKind::shifted_scaled};

inline const char* to_string(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::ginibre: return "ginibre";
        case EnsembleKind::haar_unitary: return "haar_unitary";
        case EnsembleKind::hermitian: return "hermitian";
        case EnsembleKind::nilpotent_jordan: return "nilpotent_jordan";
        case EnsembleKind::shifted_scaled: return "shifted_scaled";
    }
    return "unknown";
}

struct EnsembleConfig {
    EnsembleKind kind = EnsembleKind::ginibre;
    std::size_t dim = 1;
    std::uint64_t seed = 0;
};

// SplitMix64: state advances by the golden-ratio increment, output is the
// two-round xorshift-multiply finalizer.  Period 2^64, trivially seekable.
class SplitMix64 {
   public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform on (0,1), never returning an endpoint.
    double uniform01() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    // Box-Muller pair; u1 then u2, cos branch then sin branch.
    void normal_pair(double& z0, double& z1) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        z0 = r * std::cos(t);
        z1 = r * std::sin(t);
    }

    // Standard complex Gaussian: E|z|^2 = 1.
    Complex complex_gaussian() {
        double z0 = 0.0, z1 = 0.0;
        normal_pair(z0, z1);
        return Complex(z0, z1) * std::numbers::sqrt2 * 0.5;
    }

   private:
    std::uint64_t state_;
};

// Decorrelated per-stream seed: one SplitMix64 state step keyed by the
// stream index, then the finalizer.  Streams 0,1,2,... of one master seed
// never collide with each other or with the raw seed sequence in practice.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace detail {

inline ComplexMatrix ginibre_draw(std::size_t dim, SplitMix64& gen) {
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = gen.complex_gaussian();
    return g;
}

// Modified Gram-Schmidt with one full re-orthogonalization pass.  The R
// diagonal is the residual column norm, hence real positive: exactly the
// phase convention that makes QR of a Ginibre draw Haar distributed.
inline ComplexMatrix orthonormalize(const ComplexMatrix& g) {
    const std::size_t n = g.rows();
    ComplexMatrix u(n, n);
    std::vector<Complex> v(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) v[i] = g(i, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex c(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i) c += v[i] * std::conj(u(i, k));
                for (std::size_t i = 0; i < n; ++i) v[i] -= c * u(i, k);
            }
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(v[i]);
        nrm = std::sqrt(nrm);
        if (!(nrm > 1e-100))
            throw std::runtime_error("orthonormalize: degenerate draw, column " +
                                     std::to_string(j) + " is numerically dependent");
        for (std::size_t i = 0; i < n; ++i) u(i, j) = v[i] / nrm;
    }
    return u;
}

}  // namespace detail

// Deterministic matrix draw.  The same (kind, dim, seed) always produces the
// same matrix; hermitian shares its underlying Ginibre draw with ginibre at
// the same seed by construction.
inline ComplexMatrix gen_random(const EnsembleConfig& cfg) {
    if (cfg.dim == 0) throw std::invalid_argument("gen_random: dim must be >= 1");
    const std::size_t n = cfg.dim;
    switch (cfg.kind) {
        case EnsembleKind::ginibre: {
            SplitMix64 gen(cfg.seed);
            return detail::ginibre_draw(n, gen);
        }
        case EnsembleKind::haar_unitary: {
            SplitMix64 gen(cfg.seed);
            return detail::orthonormalize(detail::ginibre_draw(n, gen));
        }
        case EnsembleKind::hermitian: {
            SplitMix64 gen(cfg.seed);
            const ComplexMatrix g = detail::ginibre_draw(n, gen);
            return scale(Complex(0.5, 0.0), add(g, adjoint(g)));
        }
        case EnsembleKind::nilpotent_jordan: {
            ComplexMatrix j(n, n);
            for (std::size_t i = 0; i + 1 < n; ++i) j(i, i + 1) = Complex(1.0, 0.0);
            return j;
        }
        case EnsembleKind::shifted_scaled: {
            // alpha log-uniform over [e^-3, e^3], beta standard complex
            // Gaussian, then the matrix entries; this fixed order is part
            // of the reproducibility contract.
            SplitMix64 gen(cfg.seed);
            const double alpha = std::exp(3.0 * (2.0 * gen.uniform01() - 1.0));
            const Complex beta = gen.complex_gaussian();
            const ComplexMatrix g = detail::ginibre_draw(n, gen);
            ComplexMatrix out = scale(Complex(alpha, 0.0), g);
            for (std::size_t i = 0; i < n; ++i) out(i, i) += beta;
            return out;
        }
    }
    throw std::invalid_argument("gen_random: unknown ensemble kind");
}

// Seeded unit vector: complex Gaussian entries, normalized.
inline ComplexVector random_unit_vector(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw std::invalid_argument("random_unit_vector: dim must be >= 1");
    SplitMix64 gen(seed);
    ComplexVector x(dim);
    double nrm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        x[i] = gen.complex_gaussian();
        nrm += std::norm(x[i]);
    }
    nrm = std::sqrt(nrm);
    if (!(nrm > 1e-100)) throw std::runtime_error("random_unit_vector: degenerate draw");
    for (std::size_t i = 0; i < dim; ++i) x[i] /= nrm;
    return x;
}

}  // namespace numrange
