#include "mscz/metasurface.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mscz {

char to_char(Pol p) { return p == Pol::L ? 'L' : 'R'; }

std::string to_string(const PolarizedMode& mode) {
    std::ostringstream os;
    os << to_char(mode.pol) << "(";
    if (mode.order > 0) os << "+";
    os << mode.order << ")";
    return os.str();
}

ModeBasis::ModeBasis(std::vector<PolarizedMode> modes) : modes_(std::move(modes)) {
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        auto [it, inserted] = index_.emplace(modes_[i], static_cast<int>(i));
        if (!inserted) throw std::invalid_argument("ModeBasis: duplicate mode " + to_string(modes_[i]));
    }
}

int ModeBasis::index_of(const PolarizedMode& m) const {
    auto it = index_.find(m);
    if (it == index_.end())
        throw std::invalid_argument("ModeBasis: mode " + to_string(m) + " not in basis");
    return it->second;
}

std::vector<std::string> ModeBasis::labels() const {
    std::vector<std::string> out;
    out.reserve(modes_.size());
    for (const auto& m : modes_) out.push_back(to_string(m));
    return out;
}

ModeBasis parallel_bs_basis(int order_min, int order_max) {
    if (order_min >= order_max)
        throw std::invalid_argument("parallel_bs_basis: order_min must be below order_max");
    std::vector<PolarizedMode> modes;
    modes.reserve(2 * static_cast<std::size_t>(order_max - order_min));
    for (int j = order_max - 1; j >= order_min; --j) {
        modes.push_back({j + 1, Pol::R});
        modes.push_back({j, Pol::L});
    }
    return ModeBasis(std::move(modes));
}

SplitterSpec SplitterSpec::from_ratio(int pair_order, double ratio, double efficiency) {
    if (!(ratio > 0.0 && ratio <= 1.0))
        throw std::invalid_argument("SplitterSpec: ratio must lie in (0,1]");
    SplitterSpec s;
    s.pair_order = pair_order;
    s.t = std::sqrt(ratio);
    s.r = std::sqrt(1.0 - ratio);
    s.efficiency = efficiency;
    s.validate();
    return s;
}

void SplitterSpec::validate() const {
    if (std::abs(t * t + r * r - 1.0) > 1e-12)
        throw std::invalid_argument("SplitterSpec: t^2 + r^2 must equal 1");
    if (!(t > 0.0) || r < 0.0) throw std::invalid_argument("SplitterSpec: need t > 0 and r >= 0");
    if (!(efficiency > 0.0 && efficiency <= 1.0))
        throw std::invalid_argument("SplitterSpec: efficiency must lie in (0,1]");
}

MetasurfaceConfig MetasurfaceConfig::ideal(int order_min, int order_max) {
    MetasurfaceConfig cfg;
    cfg.order_min = order_min;
    cfg.order_max = order_max;
    return cfg;
}

void MetasurfaceConfig::validate() const {
    if (order_min >= order_max)
        throw std::invalid_argument("MetasurfaceConfig: order_min must be below order_max");
    if (!(default_ratio > 0.0 && default_ratio <= 1.0))
        throw std::invalid_argument("MetasurfaceConfig: ratio must lie in (0,1]");
    if (!(global_efficiency > 0.0 && global_efficiency <= 1.0))
        throw std::invalid_argument("MetasurfaceConfig: efficiency must lie in (0,1]");
    if (conversion_efficiency < 0.0 || conversion_efficiency > 1.0)
        throw std::invalid_argument("MetasurfaceConfig: conversion_efficiency must lie in [0,1]");
    std::set<int> seen;
    for (const auto& s : overrides) {
        s.validate();
        if (s.pair_order < order_min || s.pair_order > order_max - 1)
            throw std::invalid_argument("MetasurfaceConfig: override pair " +
                                        std::to_string(s.pair_order) + " outside order range");
        if (!seen.insert(s.pair_order).second)
            throw std::invalid_argument("MetasurfaceConfig: duplicate override for pair " +
                                        std::to_string(s.pair_order));
    }
}

bool MetasurfaceConfig::operator==(const MetasurfaceConfig& other) const {
    if (order_min != other.order_min || order_max != other.order_max) return false;
    if (default_ratio != other.default_ratio) return false;
    if (global_efficiency != other.global_efficiency) return false;
    if (conversion_efficiency != other.conversion_efficiency) return false;
    if (overrides.size() != other.overrides.size()) return false;
    for (std::size_t i = 0; i < overrides.size(); ++i) {
        const auto& a = overrides[i];
        const auto& b = other.overrides[i];
        if (a.pair_order != b.pair_order || a.t != b.t || a.r != b.r ||
            a.efficiency != b.efficiency)
            return false;
    }
    return true;
}

ModeUnitary::ModeUnitary(ModeBasis basis, ComplexMatrix matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
    if (!matrix_.is_square() || matrix_.rows() != basis_.size())
        throw std::invalid_argument("ModeUnitary: matrix dimension must match basis size");
    lossless_ = matrix_.is_unitary();
    if (!lossless_ && matrix_.max_singular_value() > 1.0 + 1e-12)
        throw std::invalid_argument("ModeUnitary: matrix is neither unitary nor subunitary");
}

ModeUnitary build_parallel_bs(const MetasurfaceConfig& config) {
    config.validate();

    ModeBasis basis = parallel_bs_basis(config.order_min, config.order_max);
    ComplexMatrix m(basis.size(), basis.size());

    std::map<int, SplitterSpec> by_pair;
    for (const auto& s : config.overrides) by_pair.emplace(s.pair_order, s);

    const double conv_amp = std::sqrt(config.conversion_efficiency);
    for (int j = config.order_min; j <= config.order_max - 1; ++j) {
        SplitterSpec spec = by_pair.count(j)
                                ? by_pair.at(j)
                                : SplitterSpec::from_ratio(j, config.default_ratio,
                                                           config.global_efficiency);
        const double eff_amp = std::sqrt(spec.efficiency);
        const auto x = static_cast<std::size_t>(basis.index_of({j + 1, Pol::R}));
        const auto y = static_cast<std::size_t>(basis.index_of({j, Pol::L}));
        m(x, x) = spec.t * eff_amp;
        m(y, y) = spec.t * eff_amp;
        m(x, y) = cdouble(0.0, spec.r * conv_amp * eff_amp);
        m(y, x) = cdouble(0.0, spec.r * conv_amp * eff_amp);
    }
    return ModeUnitary(std::move(basis), std::move(m));
}

MetasurfaceConfig perturb_ratio(const MetasurfaceConfig& config, double delta) {
    config.validate();
    auto perturbed_ratio = [&](double ratio) {
        const double next = ratio * (1.0 + delta);
        if (!(next > 0.0 && next < 1.0))
            throw std::invalid_argument("perturb_ratio: delta pushes power fraction outside (0,1)");
        return next;
    };
    MetasurfaceConfig out = config;
    if (delta == 0.0) return out;
    out.default_ratio = perturbed_ratio(config.default_ratio);
    for (auto& s : out.overrides)
        s = SplitterSpec::from_ratio(s.pair_order, perturbed_ratio(s.ratio()), s.efficiency);
    return out;
}

MetasurfaceConfig apply_conversion_deficit(const MetasurfaceConfig& config, double eta_conv) {
    config.validate();
    if (eta_conv < 0.0 || eta_conv > 1.0)
        throw std::invalid_argument("apply_conversion_deficit: eta_conv must lie in [0,1]");
    MetasurfaceConfig out = config;
    out.conversion_efficiency = config.conversion_efficiency * eta_conv;
    return out;
}

PhotonicState evolve(const PhotonicState& state, const ModeUnitary& u) {
    return evolve(state, u.matrix());
}

PhotonicState evolve_bruteforce(const PhotonicState& state, const ModeUnitary& u) {
    return evolve_bruteforce(state, u.matrix());
}

}  // namespace mscz
