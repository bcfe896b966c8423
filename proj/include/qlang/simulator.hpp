#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qlang/backend.hpp"

namespace qlang {

/// Dense amplitude snapshot.  Qubit q is bit q of the basis index.
struct StateVector {
    int qubits = 0;
    std::vector<std::complex<double>> amplitudes;
};

/// Dense state-vector execution of the byte-code stream.
///
/// Holds 2^qubits amplitudes; the device starts in |0...0>.  All sampling
/// is driven by one seeded generator, so identical instruction streams with
/// identical seeds reproduce identical outcomes bit for bit.
class Simulator final : public Backend {
public:
    explicit Simulator(int qubits, std::uint64_t seed = 0);

    std::optional<BitSet> execute(const Instruction& ins) override;

    /// Exact marginal probability of `outcome` on the listed locations
    /// (outcome bit i belongs to locations[i]).
    double probability_of(const BitSet& outcome, const std::vector<int>& locations) const;
    double probability_of(std::uint64_t outcome, const std::vector<int>& locations) const;

    StateVector snapshot() const;
    void restore(const StateVector& state);

    const std::vector<std::complex<double>>& amplitudes() const { return state_; }
    int qubits() const { return qubits_; }
    double norm() const;

    /// Number of executed instructions, counting each as one parallel step.
    std::uint64_t parallel_depth() const { return depth_; }

private:
    void apply_hadamard(int q);
    void apply_phase(int q, int k);
    void apply_cond_phase(int c, int t, int k);
    void apply_not(int q);
    void apply_oracle(const Instruction& ins);
    void apply_perm(const Instruction& ins);
    void apply_phase_oracle(const Instruction& ins);
    void reset_qubit(int q, bool want);
    BitSet measure(const std::vector<int>& locations);

    void check_locations(const Instruction& ins) const;
    double draw();  ///< Uniform in [0, 1), derived portably from the generator.
    void renormalize(double kept_probability);

    int qubits_;
    std::vector<std::complex<double>> state_;
    std::mt19937_64 rng_;
    std::uint64_t depth_ = 0;
};

} // namespace qlang
