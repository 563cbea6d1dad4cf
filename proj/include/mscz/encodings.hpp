#pragma once

#include "mscz/fock.hpp"
#include "mscz/metasurface.hpp"

#include <string>
#include <vector>

namespace mscz {

/// A single-qubit state alpha|0> + beta|1>, required normalized at use sites.
struct QubitKet {
    cdouble zero_amp{1.0, 0.0};
    cdouble one_amp{0.0, 0.0};

    static QubitKet zero() { return {1.0, 0.0}; }
    static QubitKet one() { return {0.0, 1.0}; }
    static QubitKet plus();
    static QubitKet minus();
    /// '0', '1', '+', '-' -> the corresponding ket.
    static QubitKet parse(char c);

    bool is_normalized(double tol = 1e-9) const;
};

struct QubitSpec {
    std::string label;       // "C", "T", "S", ...
    PolarizedMode zero_mode;  // mode carrying logical |0>
    PolarizedMode one_mode;   // mode carrying logical |1>
};

/// Assignment of logical qubits (and auxiliary vacuum modes) to polarized
/// modes of a basis. Qubit order fixes the logical register order: the
/// first qubit is the most significant bit of basis-state indices.
class QubitEncoding {
public:
    QubitEncoding(std::vector<QubitSpec> qubits, std::vector<PolarizedMode> auxiliary,
                  ModeBasis basis);

    int n_qubits() const { return static_cast<int>(qubits_.size()); }
    const std::vector<QubitSpec>& qubits() const { return qubits_; }
    const std::vector<PolarizedMode>& auxiliary() const { return auxiliary_; }
    const ModeBasis& basis() const { return basis_; }

    std::vector<std::string> qubit_labels() const;
    /// Every mode the encoding touches (qubit modes then auxiliary modes).
    std::vector<PolarizedMode> used_modes() const;

    /// Same mode assignment over a different basis (which must contain every
    /// used mode).
    QubitEncoding rebased(ModeBasis basis) const;

private:
    std::vector<QubitSpec> qubits_;
    std::vector<PolarizedMode> auxiliary_;
    ModeBasis basis_;
};

/// Polarization encoding of the single CZ gate: C on path 0, T on path +1,
/// auxiliary R(+2) and L(-1), over the six-mode basis of orders [-1,+2].
QubitEncoding polarization_cz_encoding();

/// Three-qubit cascade: C and T as in the single gate plus S on path -1,
/// auxiliary R(+2) and L(-2), over the eight-mode basis of orders [-2,+2].
/// Register order is C, S, T.
QubitEncoding cascaded_encoding();

/// Path (dual-rail) encoding: each qubit lives on two distinct paths with
/// polarization locked to the path. C on paths {-1, 0}, T on paths {+1, +2},
/// auxiliary R(+3) and L(-2), over the basis of orders [-2,+3].
QubitEncoding path_cz_encoding();

/// Generic polarization-encoded CZ gate with C on path `control_order` and
/// T on the adjacent path above it, placed into an existing basis. Used to
/// put several independent gates on one metasurface.
QubitEncoding cz_encoding_on_paths(int control_order, ModeBasis basis,
                                   const std::string& label_suffix = "");

/// Two encodings glued into one register (a's qubits first). Mode sets must
/// be disjoint and the bases identical.
QubitEncoding join_encodings(const QubitEncoding& a, const QubitEncoding& b);

/// Whether the two encodings touch any common mode.
bool encodings_overlap(const QubitEncoding& a, const QubitEncoding& b);

/// Logical n-qubit amplitude vector, possibly unnormalized after
/// post-selection.
struct LogicalState {
    int n_qubits = 0;
    std::vector<cdouble> amplitudes;

    LogicalState(int n_qubits, std::vector<cdouble> amplitudes);

    std::size_t dim() const { return amplitudes.size(); }
    double squared_norm() const;
    LogicalState normalized() const;  // zero state stays zero
};

/// Product state with exactly one photon per qubit register, in the modes the
/// encoding assigns. One normalized single-qubit ket per qubit.
PhotonicState inject(const std::vector<QubitKet>& kets, const QubitEncoding& enc);

struct PostSelection {
    LogicalState logical;
    double success_probability = 0.0;  // squared norm of the retained component
};

/// Keep only Fock terms with exactly one photon in every qubit register
/// (bunched and auxiliary-occupied terms are failures); the logical vector is
/// returned unnormalized together with its squared norm.
PostSelection post_select(const PhotonicState& state, const QubitEncoding& enc);

}  // namespace mscz
