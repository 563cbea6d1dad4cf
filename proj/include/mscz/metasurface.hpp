#pragma once

#include "mscz/complex_matrix.hpp"
#include "mscz/fock.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mscz {

enum class Pol { L, R };

char to_char(Pol p);

/// One optical mode: a diffraction order (path) carrying one circular polarization.
struct PolarizedMode {
    int order = 0;
    Pol pol = Pol::L;

    auto operator<=>(const PolarizedMode&) const = default;
};

/// "L(0)", "R(+2)", "R(-1)".
std::string to_string(const PolarizedMode& mode);

/// Ordered list of polarized modes with reverse lookup. Duplicates rejected.
class ModeBasis {
public:
    ModeBasis() = default;
    explicit ModeBasis(std::vector<PolarizedMode> modes);

    std::size_t size() const { return modes_.size(); }
    const std::vector<PolarizedMode>& modes() const { return modes_; }
    const PolarizedMode& mode(std::size_t i) const { return modes_[i]; }

    bool contains(const PolarizedMode& m) const { return index_.count(m) > 0; }
    int index_of(const PolarizedMode& m) const;  // throws if absent

    std::vector<std::string> labels() const;

    bool operator==(const ModeBasis& other) const { return modes_ == other.modes_; }

private:
    std::vector<PolarizedMode> modes_;
    std::map<PolarizedMode, int> index_;
};

/// The basis a parallel-beam-splitter metasurface acts on over diffraction
/// orders [order_min, order_max]. Each splitter couples the pair
/// {R(j+1), L(j)} for j in [order_min, order_max-1]; the basis lists the
/// pairs in descending j, R mode first:
///   [-1,+2] -> R(+2) L(+1) R(+1) L(0) R(0) L(-1).
ModeBasis parallel_bs_basis(int order_min, int order_max);

/// One beam splitter of the parallel bank: the pair {R(j+1), L(j)} at
/// pair index j, with real transmission t, conversion r and a power
/// diffraction efficiency.
struct SplitterSpec {
    int pair_order = 0;
    double t = 0.0;
    double r = 0.0;
    double efficiency = 1.0;

    static SplitterSpec from_ratio(int pair_order, double ratio, double efficiency = 1.0);

    double ratio() const { return t * t; }  // transmitted power fraction
    void validate() const;                  // t^2 + r^2 = 1, t > 0, r >= 0, eff in (0,1]
};

/// Declarative description of one gradient metasurface: the supported order
/// range, the common splitting ratio (transmitted power fraction, ideal 1/3),
/// optional per-splitter overrides, and the loss knobs.
struct MetasurfaceConfig {
    int order_min = -1;
    int order_max = 2;
    double default_ratio = 1.0 / 3.0;
    double global_efficiency = 1.0;
    double conversion_efficiency = 1.0;
    std::vector<SplitterSpec> overrides;

    static MetasurfaceConfig ideal(int order_min, int order_max);

    void validate() const;

    bool operator==(const MetasurfaceConfig& other) const;
};

/// Transfer matrix over an ordered mode basis. Unitary when lossless;
/// otherwise subunitary (all singular values <= 1). Anything else is rejected.
class ModeUnitary {
public:
    ModeUnitary(ModeBasis basis, ComplexMatrix matrix);

    const ModeBasis& basis() const { return basis_; }
    const ComplexMatrix& matrix() const { return matrix_; }
    bool lossless() const { return lossless_; }
    std::size_t dim() const { return basis_.size(); }

private:
    ModeBasis basis_;
    ComplexMatrix matrix_;
    bool lossless_ = true;
};

/// Build the parallel-beam-splitter unitary of the config: one 2x2 block
/// per coupled pair {R(j+1), L(j)}, diagonal t, off-diagonal i*r, scaled by
/// sqrt(efficiency); conversion amplitudes additionally carry
/// sqrt(conversion_efficiency), with the residual treated as loss.
ModeUnitary build_parallel_bs(const MetasurfaceConfig& config);

/// Uniform relative error on the transmitted-power fraction of every
/// splitter: ratio -> ratio * (1 + delta), r recomputed so t^2 + r^2 = 1.
MetasurfaceConfig perturb_ratio(const MetasurfaceConfig& config, double delta);

/// Imperfect circular-polarization conversion: scales every conversion
/// amplitude by sqrt(eta_conv); the unconverted residual is dropped as loss.
MetasurfaceConfig apply_conversion_deficit(const MetasurfaceConfig& config, double eta_conv);

PhotonicState evolve(const PhotonicState& state, const ModeUnitary& u);
PhotonicState evolve_bruteforce(const PhotonicState& state, const ModeUnitary& u);

}  // namespace mscz
