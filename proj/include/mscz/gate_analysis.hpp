#pragma once

#include "mscz/complex_matrix.hpp"
#include "mscz/encodings.hpp"
#include "mscz/metasurface.hpp"

#include <string>
#include <vector>

namespace mscz {

/// Measurement basis of a truth table. In hadamard_st the S and T qubits
/// range over |+>/|-> while C stays in the standard basis.
enum class TruthBasis { standard, hadamard_st };

std::string to_string(TruthBasis basis);

struct TruthTableRow {
    std::string input_label;          // e.g. "01" or "0+-"
    LogicalState output;              // unnormalized, in the row's measurement basis
    std::string dominant_label;       // basis label of the largest-|amplitude| component
    cdouble phase{1.0, 0.0};          // unit-modulus phase of the dominant amplitude
    double success_probability = 0.0;
};

struct TruthTable {
    std::vector<std::string> qubit_labels;
    TruthBasis basis = TruthBasis::standard;
    std::vector<TruthTableRow> rows;  // one per input basis state

    int n_qubits() const { return static_cast<int>(qubit_labels.size()); }
};

/// Effective logical operator after post-selection: column k holds the
/// unnormalized logical output for standard-basis input k.
struct PostSelectedOperator {
    std::size_t dim = 0;
    ComplexMatrix matrix;

    /// ||column k||^2 for every input basis state.
    std::vector<double> per_input_success() const;
    double mean_success_probability() const;
};

struct FidelityReport {
    double process_fidelity = 0.0;
    double mean_success_probability = 0.0;
    std::vector<double> per_input_success;
};

/// Evolve and post-select every input basis state of the encoding, reporting
/// output state, dominant label, phase and success probability per input.
TruthTable truth_table(const ModeUnitary& u, const QubitEncoding& enc, TruthBasis basis);

/// The post-selected logical operator of the gate, column by column.
PostSelectedOperator extract_operator(const ModeUnitary& u, const QubitEncoding& enc);

/// Scale-invariant process fidelity |Tr(ideal† A)|^2 / (d * Tr(A† A));
/// equals 1 exactly when A is proportional to the ideal unitary.
FidelityReport process_fidelity(const PostSelectedOperator& a, const ComplexMatrix& ideal);

/// diag(1, 1, 1, -1) on two qubits.
ComplexMatrix ideal_cz();

/// Logical unitary of the cascade, CZ_{C,T} * (X_C * CZ_{C,S} * X_C):
/// diag(+1,+1,-1,-1,+1,-1,+1,-1) in |C S T> ordering.
ComplexMatrix ideal_cascaded_unitary();

struct GhzReport {
    LogicalState state;               // normalized post-selected output
    double success_probability = 0.0;
    double fidelity_vs_ghz = 0.0;     // overlap-squared with (|1,+,->+|0,-,+>)/sqrt(2)
};

/// Send |+>|+>|+> through the cascade and compare the post-selected output
/// with the three-qubit GHZ state the cascade is meant to prepare.
GhzReport ghz_prepare(const ModeUnitary& u, const QubitEncoding& enc);

/// Tr(rho_q^2) of one qubit's reduced state; 1/2 means maximally mixed.
double reduced_purity(const LogicalState& normalized_state, int qubit);

struct FactorizationReport {
    double max_deviation = 0.0;             // max |joint - a (x) b| entrywise
    double joint_success_probability = 0.0; // mean over joint basis inputs
    PostSelectedOperator joint;
    PostSelectedOperator gate_a;
    PostSelectedOperator gate_b;
};

/// Verify that two gates carved out of one metasurface act independently:
/// the joint four-photon post-selected operator must factor as the tensor
/// product of the two individually extracted operators.
FactorizationReport independent_gates_check(const ModeUnitary& u, const QubitEncoding& enc_a,
                                            const QubitEncoding& enc_b);

}  // namespace mscz
