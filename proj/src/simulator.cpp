#include "qlang/simulator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qlang {
namespace {

/// phi_k = exp(2*pi*i / 2^k) for k > 0; the conjugate for k < 0.
std::complex<double> phase_root(int k) {
    if (k == 0) throw std::invalid_argument("phase parameter must be nonzero");
    double angle = 2.0 * std::numbers::pi * std::ldexp(1.0, -std::abs(k));
    return std::polar(1.0, k > 0 ? angle : -angle);
}

constexpr double kNormTolerance = 1e-9;

} // namespace

Simulator::Simulator(int qubits, std::uint64_t seed) : qubits_(qubits), rng_(seed) {
    if (qubits < 1 || qubits > 28)
        throw std::invalid_argument("Simulator: unsupported qubit count " + std::to_string(qubits));
    state_.assign(std::size_t{1} << qubits, {0.0, 0.0});
    state_[0] = {1.0, 0.0};
}

double Simulator::draw() {
    // Top 53 bits of the generator output, scaled to [0, 1).  The standard
    // library distributions are not pinned across implementations; this is.
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

void Simulator::check_locations(const Instruction& ins) const {
    std::uint64_t seen = 0;
    for (int l : ins.locations) {
        if (l < 0 || l >= qubits_)
            throw std::out_of_range("Simulator: location " + std::to_string(l) +
                                    " outside device of " + std::to_string(qubits_) + " qubits");
        if (seen & (std::uint64_t{1} << l))
            throw std::invalid_argument("Simulator: repeated location " + std::to_string(l));
        seen |= std::uint64_t{1} << l;
    }
}

std::optional<BitSet> Simulator::execute(const Instruction& ins) {
    check_locations(ins);
    ++depth_;
    switch (ins.op) {
        case Opcode::H:
            for (int q : ins.locations) apply_hadamard(q);
            return std::nullopt;
        case Opcode::R:
            for (int q : ins.locations) apply_phase(q, ins.param);
            return std::nullopt;
        case Opcode::CR:
            if (ins.locations.size() % 2 != 0)
                throw std::invalid_argument("Simulator: CR needs location pairs");
            for (std::size_t i = 0; i < ins.locations.size(); i += 2)
                apply_cond_phase(ins.locations[i], ins.locations[i + 1], ins.param);
            return std::nullopt;
        case Opcode::Oracle:
            apply_oracle(ins);
            return std::nullopt;
        case Opcode::Perm:
            apply_perm(ins);
            return std::nullopt;
        case Opcode::PhaseOracle:
            apply_phase_oracle(ins);
            return std::nullopt;
        case Opcode::Init:
            for (std::size_t i = 0; i < ins.locations.size(); ++i)
                reset_qubit(ins.locations[i], ins.bits[i]);
            return std::nullopt;
        case Opcode::Measure:
            return measure(ins.locations);
    }
    throw std::logic_error("Simulator: unhandled opcode");
}

void Simulator::apply_hadamard(int q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    const double s = std::numbers::sqrt2 / 2.0;
    for (std::uint64_t i = 0; i < state_.size(); ++i) {
        if (i & bit) continue;
        std::complex<double> a = state_[i];
        std::complex<double> b = state_[i | bit];
        state_[i] = s * (a + b);
        state_[i | bit] = s * (a - b);
    }
}

void Simulator::apply_phase(int q, int k) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    const std::complex<double> phi = phase_root(k);
    for (std::uint64_t i = 0; i < state_.size(); ++i)
        if (i & bit) state_[i] *= phi;
}

void Simulator::apply_cond_phase(int c, int t, int k) {
    const std::uint64_t mask = (std::uint64_t{1} << c) | (std::uint64_t{1} << t);
    const std::complex<double> phi = phase_root(k);
    for (std::uint64_t i = 0; i < state_.size(); ++i)
        if ((i & mask) == mask) state_[i] *= phi;
}

void Simulator::apply_not(int q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    for (std::uint64_t i = 0; i < state_.size(); ++i) {
        if (i & bit) continue;
        std::swap(state_[i], state_[i | bit]);
    }
}

namespace {

std::uint64_t gather_bits(std::uint64_t index, const int* locations, int count) {
    std::uint64_t v = 0;
    for (int i = 0; i < count; ++i)
        if (index & (std::uint64_t{1} << locations[i])) v |= std::uint64_t{1} << i;
    return v;
}

std::uint64_t scatter_bits(std::uint64_t value, const int* locations, int count,
                           std::uint64_t base) {
    for (int i = 0; i < count; ++i) {
        std::uint64_t bit = std::uint64_t{1} << locations[i];
        if (value & (std::uint64_t{1} << i))
            base |= bit;
        else
            base &= ~bit;
    }
    return base;
}

} // namespace

void Simulator::apply_oracle(const Instruction& ins) {
    const OracleTable& table = *ins.table;
    const int n = table.inputs, m = table.outputs, c = ins.ctrl_count;
    if (static_cast<int>(ins.locations.size()) != c + n + m)
        throw std::invalid_argument("Simulator: oracle location count mismatch");
    const int* ctrl = ins.locations.data();
    const int* in = ctrl + c;
    const int* out = in + n;
    std::uint64_t ctrl_mask = 0;
    for (int i = 0; i < c; ++i) ctrl_mask |= std::uint64_t{1} << ctrl[i];

    // y ^= f(x) pairs basis states; swapping each pair once applies it in place.
    for (std::uint64_t i = 0; i < state_.size(); ++i) {
        if ((i & ctrl_mask) != ctrl_mask) continue;
        std::uint64_t x = gather_bits(i, in, n);
        std::uint64_t y = gather_bits(i, out, m);
        std::uint64_t j = scatter_bits(y ^ table.rows[x], out, m, i);
        if (i < j) std::swap(state_[i], state_[j]);
    }
}

void Simulator::apply_perm(const Instruction& ins) {
    const OracleTable& table = *ins.table;
    const int w = table.inputs, c = ins.ctrl_count;
    if (static_cast<int>(ins.locations.size()) != c + w)
        throw std::invalid_argument("Simulator: perm location count mismatch");
    const int* ctrl = ins.locations.data();
    const int* lines = ctrl + c;
    std::uint64_t ctrl_mask = 0;
    for (int i = 0; i < c; ++i) ctrl_mask |= std::uint64_t{1} << ctrl[i];

    std::vector<std::complex<double>> next(state_.size());
    for (std::uint64_t i = 0; i < state_.size(); ++i) {
        if ((i & ctrl_mask) != ctrl_mask) {
            next[i] += state_[i];
            continue;
        }
        std::uint64_t x = gather_bits(i, lines, w);
        next[scatter_bits(table.rows[x], lines, w, i)] += state_[i];
    }
    state_ = std::move(next);
}

void Simulator::apply_phase_oracle(const Instruction& ins) {
    const OracleTable& table = *ins.table;
    const int n = table.inputs, c = ins.ctrl_count;
    if (static_cast<int>(ins.locations.size()) != c + n)
        throw std::invalid_argument("Simulator: phase oracle location count mismatch");
    const int* ctrl = ins.locations.data();
    const int* lines = ctrl + c;
    std::uint64_t ctrl_mask = 0;
    for (int i = 0; i < c; ++i) ctrl_mask |= std::uint64_t{1} << ctrl[i];

    for (std::uint64_t i = 0; i < state_.size(); ++i) {
        if ((i & ctrl_mask) != ctrl_mask) continue;
        if (table.rows[gather_bits(i, lines, n)]) state_[i] = -state_[i];
    }
}

void Simulator::reset_qubit(int q, bool want) {
    // Measure, discard the outcome, then flip to the requested bit.
    const std::uint64_t bit = std::uint64_t{1} << q;
    double p1 = 0.0;
    for (std::uint64_t i = 0; i < state_.size(); ++i)
        if (i & bit) p1 += std::norm(state_[i]);
    const bool outcome = draw() < p1;
    double kept = outcome ? p1 : 1.0 - p1;
    for (std::uint64_t i = 0; i < state_.size(); ++i)
        if (((i & bit) != 0) != outcome) state_[i] = {0.0, 0.0};
    renormalize(kept);
    if (outcome != want) apply_not(q);
}

BitSet Simulator::measure(const std::vector<int>& locations) {
    const int r = static_cast<int>(locations.size());
    if (r > 30) throw std::invalid_argument("Simulator: measurement of more than 30 qubits");
    std::vector<double> probs(std::size_t{1} << r, 0.0);
    for (std::uint64_t i = 0; i < state_.size(); ++i)
        probs[gather_bits(i, locations.data(), r)] += std::norm(state_[i]);

    const double u = draw();
    double acc = 0.0;
    bool found = false;
    std::uint64_t outcome = 0;
    for (std::uint64_t o = 0; o < probs.size(); ++o) {
        acc += probs[o];
        if (u < acc) {
            outcome = o;
            found = true;
            break;
        }
    }
    if (!found)  // rounding pushed the total below u: take the last live outcome
        for (std::uint64_t o = probs.size(); o-- > 0;)
            if (probs[o] > 0.0) {
                outcome = o;
                break;
            }

    for (std::uint64_t i = 0; i < state_.size(); ++i)
        if (gather_bits(i, locations.data(), r) != outcome) state_[i] = {0.0, 0.0};
    renormalize(probs[outcome]);
    return BitSet::from_value(r, outcome);
}

void Simulator::renormalize(double kept_probability) {
    if (kept_probability <= 0.0)
        throw std::runtime_error("Simulator: projection onto a zero-probability outcome");
    const double scale = 1.0 / std::sqrt(kept_probability);
    for (auto& amp : state_) amp *= scale;
    if (std::abs(norm() - 1.0) > kNormTolerance)
        throw std::runtime_error("Simulator: state norm drifted");
}

double Simulator::probability_of(const BitSet& outcome, const std::vector<int>& locations) const {
    if (outcome.size() != locations.size())
        throw std::invalid_argument("Simulator: outcome width does not match locations");
    return probability_of(outcome.value(), locations);
}

double Simulator::probability_of(std::uint64_t outcome, const std::vector<int>& locations) const {
    const int r = static_cast<int>(locations.size());
    double p = 0.0;
    for (std::uint64_t i = 0; i < state_.size(); ++i)
        if (gather_bits(i, locations.data(), r) == outcome) p += std::norm(state_[i]);
    return p;
}

StateVector Simulator::snapshot() const { return {qubits_, state_}; }

void Simulator::restore(const StateVector& state) {
    if (state.qubits != qubits_ || state.amplitudes.size() != state_.size())
        throw std::invalid_argument("Simulator: snapshot shape mismatch");
    state_ = state.amplitudes;
}

double Simulator::norm() const {
    double n = 0.0;
    for (const auto& amp : state_) n += std::norm(amp);
    return n;
}

} // namespace qlang
