#pragma once

#include "mscz/complex_matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace mscz {

/// Terms with |amplitude| below this are dropped when a PhotonicState is built.
inline constexpr double kAmplitudePrune = 1e-15;

/// Hard bounds for the permanent-based evolution kernel.
inline constexpr int kMaxPhotons = 4;
inline constexpr int kMaxModes = 16;

/// Practical bounds for the polynomial-expansion oracle.
inline constexpr int kMaxBruteforcePhotons = 3;
inline constexpr int kMaxBruteforceModes = 10;

/// Photon occupation numbers over a fixed ordered mode basis.
class FockState {
public:
    explicit FockState(std::vector<int> occupations);

    const std::vector<int>& occupations() const { return occupations_; }
    int total() const { return total_; }
    int modes() const { return static_cast<int>(occupations_.size()); }
    int operator[](int mode) const { return occupations_[static_cast<std::size_t>(mode)]; }

    bool operator==(const FockState& other) const { return occupations_ == other.occupations_; }

    std::string to_string() const;  // "|1,0,2>"

private:
    std::vector<int> occupations_;
    int total_ = 0;
};

/// Strict weak order matching enumerate_fock_basis (first mode fills first),
/// so serialized term listings come out in basis order.
struct FockBasisOrder {
    bool operator()(const FockState& a, const FockState& b) const {
        return a.occupations() > b.occupations();
    }
};

/// Superposition of fixed-photon-number Fock states with complex amplitudes.
/// Immutable once constructed; construction validates mode/photon consistency,
/// prunes dead terms and rejects norms above 1 (+ tolerance).
class PhotonicState {
public:
    using TermMap = std::map<FockState, cdouble, FockBasisOrder>;

    PhotonicState(int n_modes, int n_photons);  // zero state (no terms)
    PhotonicState(int n_modes, int n_photons, TermMap terms);

    static PhotonicState single_term(FockState term, cdouble amplitude = 1.0);

    int n_modes() const { return n_modes_; }
    int photon_number() const { return n_photons_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    cdouble amplitude(const FockState& f) const;
    double squared_norm() const;

private:
    int n_modes_ = 0;
    int n_photons_ = 0;
    TermMap terms_;
};

long long binomial_coefficient(int n, int k);

/// All occupation vectors of n_photons photons over n_modes modes, in the
/// deterministic order where earlier modes fill first:
/// (2 modes, 1 photon) -> (1,0), (0,1).
std::vector<FockState> enumerate_fock_basis(int n_modes, int n_photons);

/// Matrix permanent via Ryser's inclusion-exclusion formula with Gray-code
/// subset updates, O(2^n * n). Square matrices with n <= 16; Per of the
/// empty matrix is 1.
cdouble permanent(const ComplexMatrix& m);

/// Multi-photon evolution through a mode transfer matrix. The amplitude to
/// reach occupation m from occupation n is Per(U[m|n]) / sqrt(prod m_i! prod n_j!)
/// where U[m|n] repeats rows per m and columns per n. Columns index inputs:
/// a single photon in mode k maps onto column k of u.
PhotonicState evolve(const PhotonicState& state, const ComplexMatrix& u);

/// Same transformation computed with no permanents anywhere: each input
/// creation operator is substituted by its image and the resulting
/// multivariate polynomial is expanded monomial by monomial.
PhotonicState evolve_bruteforce(const PhotonicState& state, const ComplexMatrix& u);

}  // namespace mscz
