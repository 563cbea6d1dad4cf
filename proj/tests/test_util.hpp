#pragma once

#include "mscz/complex_matrix.hpp"
#include "mscz/fock.hpp"

#include <cmath>
#include <random>

namespace mscz::testutil {

inline cdouble random_complex(std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    return {gauss(rng), gauss(rng)};
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, unsigned seed) {
    std::mt19937 rng(seed);
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_complex(rng);
    return m;
}

/// Haar-ish random unitary: Gaussian matrix, Gram-Schmidt on columns.
inline ComplexMatrix random_unitary(std::size_t n, unsigned seed) {
    ComplexMatrix m = random_matrix(n, n, seed);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            cdouble proj(0.0, 0.0);
            for (std::size_t r = 0; r < n; ++r) proj += std::conj(m(r, prev)) * m(r, c);
            for (std::size_t r = 0; r < n; ++r) m(r, c) -= proj * m(r, prev);
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < n; ++r) nrm += std::norm(m(r, c));
        nrm = std::sqrt(nrm);
        for (std::size_t r = 0; r < n; ++r) m(r, c) /= nrm;
    }
    return m;
}

/// Random state over the full fixed-photon-number basis, normalized.
inline PhotonicState random_state(int n_modes, int n_photons, unsigned seed) {
    std::mt19937 rng(seed);
    PhotonicState::TermMap terms;
    double norm = 0.0;
    for (const auto& f : enumerate_fock_basis(n_modes, n_photons)) {
        const cdouble a = random_complex(rng);
        norm += std::norm(a);
        terms.emplace(f, a);
    }
    norm = std::sqrt(norm);
    for (auto& [f, a] : terms) a /= norm;
    return PhotonicState(n_modes, n_photons, std::move(terms));
}

inline double max_term_diff(const PhotonicState& a, const PhotonicState& b) {
    double m = 0.0;
    for (const auto& [f, c] : a.terms()) m = std::max(m, std::abs(c - b.amplitude(f)));
    for (const auto& [f, c] : b.terms()) m = std::max(m, std::abs(c - a.amplitude(f)));
    return m;
}

}  // namespace mscz::testutil
