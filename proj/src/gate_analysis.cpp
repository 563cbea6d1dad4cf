#include "mscz/gate_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mscz {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

bool is_cascaded_register(const QubitEncoding& enc) {
    return enc.qubit_labels() == std::vector<std::string>{"C", "S", "T"};
}

/// Hadamard on one qubit of an amplitude vector (qubit 0 = most significant).
std::vector<cdouble> apply_hadamard(const std::vector<cdouble>& amps, int n_qubits, int qubit) {
    std::vector<cdouble> out = amps;
    const std::size_t stride = std::size_t{1} << (n_qubits - 1 - qubit);
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        if (idx & stride) continue;
        const cdouble a = out[idx];
        const cdouble b = out[idx | stride];
        out[idx] = (a + b) * kInvSqrt2;
        out[idx | stride] = (a - b) * kInvSqrt2;
    }
    return out;
}

std::string standard_label(std::size_t idx, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q)
        if ((idx >> (n_qubits - 1 - q)) & 1) s[static_cast<std::size_t>(q)] = '1';
    return s;
}

/// hadamard_st labels: C keeps '0'/'1', S and T use '+'/'-' (index bit 0 -> '+').
std::string hadamard_st_label(std::size_t idx, int n_qubits) {
    std::string s = standard_label(idx, n_qubits);
    for (std::size_t q = 1; q < s.size(); ++q) s[q] = (s[q] == '0') ? '+' : '-';
    return s;
}

std::vector<QubitKet> kets_for_label(const std::string& label) {
    std::vector<QubitKet> kets;
    kets.reserve(label.size());
    for (char c : label) kets.push_back(QubitKet::parse(c));
    return kets;
}

cdouble inner_product(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
    cdouble acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

}  // namespace

std::string to_string(TruthBasis basis) {
    return basis == TruthBasis::standard ? "standard" : "hadamard_st";
}

std::vector<double> PostSelectedOperator::per_input_success() const {
    std::vector<double> out(dim, 0.0);
    for (std::size_t col = 0; col < dim; ++col) {
        double p = 0.0;
        for (std::size_t row = 0; row < dim; ++row) p += std::norm(matrix(row, col));
        out[col] = p;
    }
    return out;
}

double PostSelectedOperator::mean_success_probability() const {
    const auto per = per_input_success();
    double sum = 0.0;
    for (double p : per) sum += p;
    return per.empty() ? 0.0 : sum / static_cast<double>(per.size());
}

TruthTable truth_table(const ModeUnitary& u, const QubitEncoding& enc, TruthBasis basis) {
    if (!(u.basis() == enc.basis()))
        throw std::invalid_argument("truth_table: unitary and encoding bases differ");
    if (basis == TruthBasis::hadamard_st && !is_cascaded_register(enc))
        throw std::invalid_argument("truth_table: hadamard_st requires the C,S,T register");

    const int nq = enc.n_qubits();
    const std::size_t dim = std::size_t{1} << nq;

    TruthTable table;
    table.qubit_labels = enc.qubit_labels();
    table.basis = basis;
    table.rows.reserve(dim);

    for (std::size_t idx = 0; idx < dim; ++idx) {
        const std::string label = basis == TruthBasis::standard ? standard_label(idx, nq)
                                                                : hadamard_st_label(idx, nq);
        const PhotonicState in = inject(kets_for_label(label), enc);
        const PhotonicState out = evolve(in, u);
        PostSelection sel = post_select(out, enc);

        std::vector<cdouble> amps = sel.logical.amplitudes;
        if (basis == TruthBasis::hadamard_st) {
            // Express the output in the same measurement basis the row uses.
            amps = apply_hadamard(amps, nq, 1);  // S
            amps = apply_hadamard(amps, nq, 2);  // T
        }

        std::size_t dominant = 0;
        for (std::size_t i = 1; i < amps.size(); ++i)
            if (std::abs(amps[i]) > std::abs(amps[dominant])) dominant = i;
        const cdouble lead = amps[dominant];
        const cdouble phase = std::abs(lead) < 1e-300 ? cdouble(1.0, 0.0) : lead / std::abs(lead);
        const std::string dominant_label = basis == TruthBasis::standard
                                               ? standard_label(dominant, nq)
                                               : hadamard_st_label(dominant, nq);

        table.rows.push_back({label, LogicalState(nq, std::move(amps)), dominant_label, phase,
                              sel.success_probability});
    }
    return table;
}

PostSelectedOperator extract_operator(const ModeUnitary& u, const QubitEncoding& enc) {
    if (!(u.basis() == enc.basis()))
        throw std::invalid_argument("extract_operator: unitary and encoding bases differ");

    const int nq = enc.n_qubits();
    const std::size_t dim = std::size_t{1} << nq;
    ComplexMatrix a(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const PhotonicState in = inject(kets_for_label(standard_label(col, nq)), enc);
        const PostSelection sel = post_select(evolve(in, u), enc);
        for (std::size_t row = 0; row < dim; ++row) a(row, col) = sel.logical.amplitudes[row];
    }
    return {dim, std::move(a)};
}

FidelityReport process_fidelity(const PostSelectedOperator& a, const ComplexMatrix& ideal) {
    if (!ideal.is_square() || ideal.rows() != a.dim)
        throw std::invalid_argument("process_fidelity: dimension mismatch");
    const double gram_trace = (a.matrix.adjoint() * a.matrix).trace().real();
    if (gram_trace <= 0.0)
        throw std::invalid_argument("process_fidelity: zero operator");
    const cdouble overlap = (ideal.adjoint() * a.matrix).trace();
    const double d = static_cast<double>(a.dim);

    FidelityReport report;
    report.process_fidelity = std::norm(overlap) / (d * gram_trace);
    report.per_input_success = a.per_input_success();
    report.mean_success_probability = a.mean_success_probability();
    return report;
}

ComplexMatrix ideal_cz() {
    ComplexMatrix m = ComplexMatrix::identity(4);
    m(3, 3) = -1.0;
    return m;
}

ComplexMatrix ideal_cascaded_unitary() {
    ComplexMatrix m = ComplexMatrix::identity(8);
    for (std::size_t idx = 0; idx < 8; ++idx) {
        const bool c = (idx >> 2) & 1;
        const bool s = (idx >> 1) & 1;
        const bool t = idx & 1;
        const bool flip = (!c && s) != (c && t);  // CZ_{C,S} conjugated by X_C, then CZ_{C,T}
        if (flip) m(idx, idx) = -1.0;
    }
    return m;
}

GhzReport ghz_prepare(const ModeUnitary& u, const QubitEncoding& enc) {
    if (!is_cascaded_register(enc))
        throw std::invalid_argument("ghz_prepare: encoding must be the cascaded C,S,T register");

    const PhotonicState in = inject({QubitKet::plus(), QubitKet::plus(), QubitKet::plus()}, enc);
    const PostSelection sel = post_select(evolve(in, u), enc);
    const LogicalState normalized = sel.logical.normalized();

    // (|1>_C|+>_S|->_T + |0>_C|->_S|+>_T) / sqrt(2), in |C S T> index order.
    std::vector<cdouble> target(8, 0.0);
    for (std::size_t idx = 0; idx < 8; ++idx) {
        const bool c = (idx >> 2) & 1;
        const bool s = (idx >> 1) & 1;
        const bool t = idx & 1;
        const double branch_one = (t ? -0.5 : 0.5);        // |+>_S |->_T
        const double branch_zero = (s ? -0.5 : 0.5);       // |->_S |+>_T
        target[idx] = kInvSqrt2 * (c ? branch_one : branch_zero);
    }

    const cdouble overlap = inner_product(target, normalized.amplitudes);
    return {normalized, sel.success_probability, std::norm(overlap)};
}

double reduced_purity(const LogicalState& state, int qubit) {
    const int nq = state.n_qubits;
    if (qubit < 0 || qubit >= nq) throw std::invalid_argument("reduced_purity: qubit out of range");
    const std::size_t stride = std::size_t{1} << (nq - 1 - qubit);

    cdouble rho[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (std::size_t idx = 0; idx < state.amplitudes.size(); ++idx) {
        const std::size_t bit = (idx & stride) ? 1 : 0;
        const std::size_t rest = idx & ~stride;
        for (std::size_t other = 0; other < 2; ++other) {
            const std::size_t jdx = rest | (other ? stride : 0);
            rho[bit][other] += state.amplitudes[idx] * std::conj(state.amplitudes[jdx]);
        }
    }
    double purity = 0.0;
    for (auto& row : rho)
        for (auto& e : row) purity += std::norm(e);
    return purity;
}

FactorizationReport independent_gates_check(const ModeUnitary& u, const QubitEncoding& enc_a,
                                            const QubitEncoding& enc_b) {
    if (!(enc_a.basis() == u.basis()) || !(enc_b.basis() == u.basis()))
        throw std::invalid_argument("independent_gates_check: encoding bases must match the unitary");
    if (encodings_overlap(enc_a, enc_b))
        throw std::invalid_argument("independent_gates_check: encodings share modes");

    const QubitEncoding joint_enc = join_encodings(enc_a, enc_b);

    FactorizationReport report;
    report.joint = extract_operator(u, joint_enc);
    report.gate_a = extract_operator(u, enc_a);
    report.gate_b = extract_operator(u, enc_b);

    const ComplexMatrix product = tensor_product(report.gate_a.matrix, report.gate_b.matrix);
    report.max_deviation = max_abs_diff(report.joint.matrix, product);
    report.joint_success_probability = report.joint.mean_success_probability();
    return report;
}

}  // namespace mscz
