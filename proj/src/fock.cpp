#include "mscz/fock.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace mscz {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double occupation_factorial_product(const std::vector<int>& occ) {
    double p = 1.0;
    for (int n : occ) p *= factorial(n);
    return p;
}

void check_evolution_args(const PhotonicState& state, const ComplexMatrix& u, int max_photons,
                          int max_modes) {
    if (!u.is_square()) throw std::invalid_argument("evolve: transfer matrix must be square");
    if (static_cast<std::size_t>(state.n_modes()) != u.rows())
        throw std::invalid_argument("evolve: state mode count does not match matrix dimension");
    if (state.photon_number() > max_photons)
        throw std::invalid_argument("evolve: photon number exceeds supported bound");
    if (state.n_modes() > max_modes)
        throw std::invalid_argument("evolve: mode count exceeds supported bound");
}

// Mode index repeated per occupation: (0,2,1) -> [1,1,2].
std::vector<int> repeat_by_occupation(const std::vector<int>& occ) {
    std::vector<int> idx;
    idx.reserve(16);
    for (int mode = 0; mode < static_cast<int>(occ.size()); ++mode)
        for (int k = 0; k < occ[static_cast<std::size_t>(mode)]; ++k) idx.push_back(mode);
    return idx;
}

}  // namespace

FockState::FockState(std::vector<int> occupations) : occupations_(std::move(occupations)) {
    for (int n : occupations_) {
        if (n < 0) throw std::invalid_argument("FockState: negative occupation");
        total_ += n;
    }
}

std::string FockState::to_string() const {
    std::ostringstream os;
    os << "|";
    for (std::size_t i = 0; i < occupations_.size(); ++i) {
        if (i) os << ",";
        os << occupations_[i];
    }
    os << ">";
    return os.str();
}

PhotonicState::PhotonicState(int n_modes, int n_photons) : n_modes_(n_modes), n_photons_(n_photons) {
    if (n_modes < 1) throw std::invalid_argument("PhotonicState: need at least one mode");
    if (n_photons < 0) throw std::invalid_argument("PhotonicState: negative photon number");
}

PhotonicState::PhotonicState(int n_modes, int n_photons, TermMap terms)
    : PhotonicState(n_modes, n_photons) {
    for (auto it = terms.begin(); it != terms.end();) {
        const FockState& f = it->first;
        if (f.modes() != n_modes_)
            throw std::invalid_argument("PhotonicState: term mode count mismatch");
        if (f.total() != n_photons_)
            throw std::invalid_argument("PhotonicState: term photon number mismatch");
        if (std::abs(it->second) < kAmplitudePrune)
            it = terms.erase(it);
        else
            ++it;
    }
    terms_ = std::move(terms);
    if (squared_norm() > 1.0 + 1e-12)
        throw std::invalid_argument("PhotonicState: squared norm exceeds 1");
}

PhotonicState PhotonicState::single_term(FockState term, cdouble amplitude) {
    const int modes = term.modes();
    const int photons = term.total();
    TermMap terms;
    terms.emplace(std::move(term), amplitude);
    return PhotonicState(modes, photons, std::move(terms));
}

cdouble PhotonicState::amplitude(const FockState& f) const {
    auto it = terms_.find(f);
    return it == terms_.end() ? cdouble(0.0, 0.0) : it->second;
}

double PhotonicState::squared_norm() const {
    double n = 0.0;
    for (const auto& [f, c] : terms_) n += std::norm(c);
    return n;
}

long long binomial_coefficient(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long result = 1;
    for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return result;
}

std::vector<FockState> enumerate_fock_basis(int n_modes, int n_photons) {
    if (n_modes < 1) throw std::invalid_argument("enumerate_fock_basis: need at least one mode");
    if (n_photons < 0) throw std::invalid_argument("enumerate_fock_basis: negative photon number");

    std::vector<FockState> basis;
    basis.reserve(static_cast<std::size_t>(binomial_coefficient(n_photons + n_modes - 1, n_modes - 1)));
    std::vector<int> current(static_cast<std::size_t>(n_modes), 0);

    auto recurse = [&](auto&& self, int mode, int remaining) -> void {
        if (mode == n_modes - 1) {
            current[static_cast<std::size_t>(mode)] = remaining;
            basis.emplace_back(current);
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            current[static_cast<std::size_t>(mode)] = k;
            self(self, mode + 1, remaining - k);
        }
    };
    recurse(recurse, 0, n_photons);
    return basis;
}

cdouble permanent(const ComplexMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("permanent: matrix must be square");
    const int n = static_cast<int>(m.rows());
    if (n > 16) throw std::invalid_argument("permanent: dimension exceeds 16");
    if (n == 0) return 1.0;

    std::vector<cdouble> row_sum(static_cast<std::size_t>(n), cdouble(0.0, 0.0));
    cdouble total(0.0, 0.0);
    std::uint32_t prev_gray = 0;
    const std::uint64_t subsets = std::uint64_t{1} << n;

    for (std::uint64_t k = 1; k < subsets; ++k) {
        const auto gray = static_cast<std::uint32_t>(k ^ (k >> 1));
        const std::uint32_t changed = gray ^ prev_gray;
        const int col = std::countr_zero(changed);
        const double dir = (gray & changed) ? 1.0 : -1.0;
        for (int r = 0; r < n; ++r)
            row_sum[static_cast<std::size_t>(r)] +=
                dir * m(static_cast<std::size_t>(r), static_cast<std::size_t>(col));
        prev_gray = gray;

        cdouble prod(1.0, 0.0);
        for (int r = 0; r < n; ++r) prod *= row_sum[static_cast<std::size_t>(r)];
        const int parity = (n - std::popcount(gray)) & 1;
        total += parity ? -prod : prod;
    }
    return total;
}

PhotonicState evolve(const PhotonicState& state, const ComplexMatrix& u) {
    check_evolution_args(state, u, kMaxPhotons, kMaxModes);

    const int modes = state.n_modes();
    const int photons = state.photon_number();
    const auto out_basis = enumerate_fock_basis(modes, photons);

    PhotonicState::TermMap out;
    for (const auto& [in, coeff] : state.terms()) {
        const auto col_idx = repeat_by_occupation(in.occupations());
        const double in_norm = occupation_factorial_product(in.occupations());
        for (const auto& m : out_basis) {
            const auto row_idx = repeat_by_occupation(m.occupations());
            ComplexMatrix sub(static_cast<std::size_t>(photons), static_cast<std::size_t>(photons));
            for (std::size_t r = 0; r < row_idx.size(); ++r)
                for (std::size_t c = 0; c < col_idx.size(); ++c)
                    sub(r, c) = u(static_cast<std::size_t>(row_idx[r]),
                                  static_cast<std::size_t>(col_idx[c]));
            const double norm =
                std::sqrt(occupation_factorial_product(m.occupations()) * in_norm);
            const cdouble amp = coeff * permanent(sub) / norm;
            if (amp != cdouble(0.0, 0.0)) out[m] += amp;
        }
    }
    return PhotonicState(modes, photons, std::move(out));
}

PhotonicState evolve_bruteforce(const PhotonicState& state, const ComplexMatrix& u) {
    check_evolution_args(state, u, kMaxBruteforcePhotons, kMaxBruteforceModes);

    const int modes = state.n_modes();
    const int photons = state.photon_number();

    PhotonicState::TermMap out;
    for (const auto& [in, coeff] : state.terms()) {
        // Polynomial in output creation operators, keyed by occupation pattern.
        std::map<std::vector<int>, cdouble> poly;
        poly[std::vector<int>(static_cast<std::size_t>(modes), 0)] =
            coeff / std::sqrt(occupation_factorial_product(in.occupations()));

        for (int j = 0; j < modes; ++j) {
            for (int rep = 0; rep < in[j]; ++rep) {
                std::map<std::vector<int>, cdouble> next;
                for (const auto& [occ, c] : poly) {
                    for (int k = 0; k < modes; ++k) {
                        const cdouble entry =
                            u(static_cast<std::size_t>(k), static_cast<std::size_t>(j));
                        if (entry == cdouble(0.0, 0.0)) continue;
                        std::vector<int> bumped = occ;
                        ++bumped[static_cast<std::size_t>(k)];
                        next[std::move(bumped)] += c * entry;
                    }
                }
                poly = std::move(next);
            }
        }

        for (const auto& [occ, c] : poly)
            out[FockState(occ)] += c * std::sqrt(occupation_factorial_product(occ));
    }
    return PhotonicState(modes, photons, std::move(out));
}

}  // namespace mscz
