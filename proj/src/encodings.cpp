#include "mscz/encodings.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace mscz {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

QubitKet QubitKet::plus() { return {kInvSqrt2, kInvSqrt2}; }
QubitKet QubitKet::minus() { return {kInvSqrt2, -kInvSqrt2}; }

QubitKet QubitKet::parse(char c) {
    switch (c) {
        case '0': return zero();
        case '1': return one();
        case '+': return plus();
        case '-': return minus();
        default: throw std::invalid_argument(std::string("QubitKet: unknown state '") + c + "'");
    }
}

bool QubitKet::is_normalized(double tol) const {
    return std::abs(std::norm(zero_amp) + std::norm(one_amp) - 1.0) <= tol;
}

QubitEncoding::QubitEncoding(std::vector<QubitSpec> qubits, std::vector<PolarizedMode> auxiliary,
                             ModeBasis basis)
    : qubits_(std::move(qubits)), auxiliary_(std::move(auxiliary)), basis_(std::move(basis)) {
    std::set<PolarizedMode> seen;
    auto claim = [&](const PolarizedMode& m) {
        if (!basis_.contains(m))
            throw std::invalid_argument("QubitEncoding: mode " + to_string(m) + " not in basis");
        if (!seen.insert(m).second)
            throw std::invalid_argument("QubitEncoding: mode " + to_string(m) + " assigned twice");
    };
    for (const auto& q : qubits_) {
        if (q.zero_mode == q.one_mode)
            throw std::invalid_argument("QubitEncoding: qubit " + q.label +
                                        " must use two distinct modes");
        claim(q.zero_mode);
        claim(q.one_mode);
    }
    for (const auto& m : auxiliary_) claim(m);
}

std::vector<std::string> QubitEncoding::qubit_labels() const {
    std::vector<std::string> out;
    out.reserve(qubits_.size());
    for (const auto& q : qubits_) out.push_back(q.label);
    return out;
}

std::vector<PolarizedMode> QubitEncoding::used_modes() const {
    std::vector<PolarizedMode> out;
    for (const auto& q : qubits_) {
        out.push_back(q.zero_mode);
        out.push_back(q.one_mode);
    }
    for (const auto& m : auxiliary_) out.push_back(m);
    return out;
}

QubitEncoding QubitEncoding::rebased(ModeBasis basis) const {
    return QubitEncoding(qubits_, auxiliary_, std::move(basis));
}

QubitEncoding polarization_cz_encoding() {
    return QubitEncoding(
        {
            {"C", {0, Pol::R}, {0, Pol::L}},
            {"T", {1, Pol::L}, {1, Pol::R}},
        },
        {{2, Pol::R}, {-1, Pol::L}}, parallel_bs_basis(-1, 2));
}

QubitEncoding cascaded_encoding() {
    return QubitEncoding(
        {
            {"C", {0, Pol::R}, {0, Pol::L}},
            {"S", {-1, Pol::R}, {-1, Pol::L}},
            {"T", {1, Pol::L}, {1, Pol::R}},
        },
        {{2, Pol::R}, {-2, Pol::L}}, parallel_bs_basis(-2, 2));
}

QubitEncoding path_cz_encoding() {
    return QubitEncoding(
        {
            {"C", {-1, Pol::R}, {0, Pol::L}},
            {"T", {2, Pol::L}, {1, Pol::R}},
        },
        {{3, Pol::R}, {-2, Pol::L}}, parallel_bs_basis(-2, 3));
}

QubitEncoding cz_encoding_on_paths(int control_order, ModeBasis basis,
                                   const std::string& label_suffix) {
    const int c = control_order;
    return QubitEncoding(
        {
            {"C" + label_suffix, {c, Pol::R}, {c, Pol::L}},
            {"T" + label_suffix, {c + 1, Pol::L}, {c + 1, Pol::R}},
        },
        {{c + 2, Pol::R}, {c - 1, Pol::L}}, std::move(basis));
}

QubitEncoding join_encodings(const QubitEncoding& a, const QubitEncoding& b) {
    if (!(a.basis() == b.basis()))
        throw std::invalid_argument("join_encodings: encodings live over different bases");
    if (encodings_overlap(a, b))
        throw std::invalid_argument("join_encodings: encodings share modes");
    std::vector<QubitSpec> qubits = a.qubits();
    qubits.insert(qubits.end(), b.qubits().begin(), b.qubits().end());
    std::vector<PolarizedMode> aux = a.auxiliary();
    aux.insert(aux.end(), b.auxiliary().begin(), b.auxiliary().end());
    return QubitEncoding(std::move(qubits), std::move(aux), a.basis());
}

bool encodings_overlap(const QubitEncoding& a, const QubitEncoding& b) {
    const auto modes_a = a.used_modes();
    const std::set<PolarizedMode> set_a(modes_a.begin(), modes_a.end());
    for (const auto& m : b.used_modes())
        if (set_a.count(m)) return true;
    return false;
}

LogicalState::LogicalState(int n, std::vector<cdouble> amps)
    : n_qubits(n), amplitudes(std::move(amps)) {
    if (n_qubits < 1) throw std::invalid_argument("LogicalState: need at least one qubit");
    if (amplitudes.size() != (std::size_t{1} << n_qubits))
        throw std::invalid_argument("LogicalState: amplitude vector must have length 2^n");
    if (squared_norm() > 1.0 + 1e-12)
        throw std::invalid_argument("LogicalState: squared norm exceeds 1");
}

double LogicalState::squared_norm() const {
    double n = 0.0;
    for (const auto& a : amplitudes) n += std::norm(a);
    return n;
}

LogicalState LogicalState::normalized() const {
    const double nrm = std::sqrt(squared_norm());
    if (nrm == 0.0) return *this;
    LogicalState out = *this;
    for (auto& a : out.amplitudes) a /= nrm;
    return out;
}

PhotonicState inject(const std::vector<QubitKet>& kets, const QubitEncoding& enc) {
    const int nq = enc.n_qubits();
    if (static_cast<int>(kets.size()) != nq)
        throw std::invalid_argument("inject: need one single-qubit state per encoded qubit");
    for (const auto& k : kets)
        if (!k.is_normalized())
            throw std::invalid_argument("inject: single-qubit input is not normalized");

    const int modes = static_cast<int>(enc.basis().size());
    PhotonicState::TermMap terms;
    const std::size_t combos = std::size_t{1} << nq;
    for (std::size_t bits = 0; bits < combos; ++bits) {
        cdouble amp(1.0, 0.0);
        std::vector<int> occ(static_cast<std::size_t>(modes), 0);
        for (int q = 0; q < nq; ++q) {
            const bool one = (bits >> (nq - 1 - q)) & 1;  // qubit 0 is the most significant bit
            const auto& spec = enc.qubits()[static_cast<std::size_t>(q)];
            amp *= one ? kets[static_cast<std::size_t>(q)].one_amp
                       : kets[static_cast<std::size_t>(q)].zero_amp;
            const auto& mode = one ? spec.one_mode : spec.zero_mode;
            ++occ[static_cast<std::size_t>(enc.basis().index_of(mode))];
        }
        if (std::abs(amp) >= kAmplitudePrune) terms[FockState(occ)] += amp;
    }
    return PhotonicState(modes, nq, std::move(terms));
}

PostSelection post_select(const PhotonicState& state, const QubitEncoding& enc) {
    const int nq = enc.n_qubits();
    if (state.photon_number() != nq)
        throw std::invalid_argument("post_select: photon number must equal the qubit count");
    if (state.n_modes() != static_cast<int>(enc.basis().size()))
        throw std::invalid_argument("post_select: state mode count does not match encoding basis");

    std::vector<cdouble> amps(std::size_t{1} << nq, cdouble(0.0, 0.0));
    for (const auto& [fock, coeff] : state.terms()) {
        std::size_t idx = 0;
        bool kept = true;
        for (const auto& spec : enc.qubits()) {
            const int n0 = fock[enc.basis().index_of(spec.zero_mode)];
            const int n1 = fock[enc.basis().index_of(spec.one_mode)];
            if (n0 + n1 != 1) {  // bunched or empty register: post-selection failure
                kept = false;
                break;
            }
            idx = (idx << 1) | static_cast<std::size_t>(n1);
        }
        if (kept) amps[idx] += coeff;
    }

    LogicalState logical(nq, std::move(amps));
    const double prob = logical.squared_norm();
    return {std::move(logical), prob};
}

}  // namespace mscz
