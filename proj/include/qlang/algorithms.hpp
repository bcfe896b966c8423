#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "qlang/bitset.hpp"
#include "qlang/operator.hpp"
#include "qlang/register.hpp"
#include "qlang/session.hpp"

namespace qlang {

/// --- modular addition ----------------------------------------------------

/// Adder over three `size`-qubit blocks: lines 2*size..3*size-1 accumulate
/// the sum of all three blocks modulo 2^size, the low two blocks pass
/// through unchanged.  Built from two two-block adders (a Fourier transform
/// around conditional phases) whose shared boundary collapses during
/// assembly.
Operator build_three_adder(int size);

struct ThreeAdderRun {
    std::uint64_t sum = 0;  ///< Accumulator contents after the run.
    std::uint64_t x = 0;    ///< First input, passed through.
    std::uint64_t y = 0;    ///< Second input, passed through.
};

/// Allocates three registers holding x, y and the accumulator seed z, runs
/// the adder and measures everything.
ThreeAdderRun run_three_adder(int size, std::uint64_t x, std::uint64_t y, std::uint64_t z,
                              std::uint64_t seed = 0);

/// --- order finding -------------------------------------------------------

struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    bool operator==(const Rational&) const = default;
};

/// Convergents of num/den, starting with the integer part over one.
std::vector<Rational> continued_fractions(std::uint64_t num, std::uint64_t den);

std::uint64_t modpow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

/// Lookup table of the bijection i -> i * factor mod modulus on values below
/// the modulus; rows from the modulus up to 2^width map to themselves.
std::vector<std::uint64_t> multiply_mod_table(std::uint64_t factor, std::uint64_t modulus,
                                              int width);

/// Phase-estimation sizing: enough phase qubits for n result bits with
/// failure probability at most eps.
int phase_bits_for(int n, double eps);
/// Smallest width that stores every value below `value`.
int bits_for(std::uint64_t value);

/// Reads the multiplicative order of x out of a phase measurement y over
/// 2^phase_bits: candidate denominators come from the convergents of the
/// measured fraction, patched up by small multiples.  Empty when y carries
/// no information.
std::optional<std::uint64_t> recover_order(std::uint64_t y, int phase_bits, std::uint64_t x,
                                           std::uint64_t modulus);

/// The order-finding circuit, executed up to (not including) measurement.
struct OrderFindingCircuit {
    std::unique_ptr<Session> session;
    Register phase;
    Register eigen;
    int phase_bits = 0;
    int work_bits = 0;
};

/// Builds and runs the phase-estimation network for the order of x modulo
/// `modulus`: a phase register in uniform superposition drives controlled
/// modular multiplications on a work register seeded with one, and the
/// inverse Fourier transform concentrates the phase register on multiples
/// of 2^phase_bits / order.
OrderFindingCircuit prepare_order_finding(std::uint64_t x, std::uint64_t modulus, int n,
                                          double eps, std::uint64_t seed = 0);

struct OrderFindingResult {
    std::uint64_t outcome = 0;
    std::optional<std::uint64_t> order;
    int phase_bits = 0;
    int work_bits = 0;
};

OrderFindingResult run_order_finding(std::uint64_t x, std::uint64_t modulus, int n, double eps,
                                     std::uint64_t seed = 0);

/// --- amplitude amplification --------------------------------------------

/// Default repetition count: the integer part of 2^(n/2).
int grover_repetitions(int n);

/// One amplification round: the phase oracle followed by the reflection
/// about the uniform state.
Operator grover_step(const Operator& phase_oracle, int n);

/// The search circuit after all rounds, executed up to measurement.
struct GroverCircuit {
    std::unique_ptr<Session> session;
    Register data;
    int repetitions = 0;
};

/// Amplifies the basis state `marked` out of the uniform superposition over
/// n qubits.  A negative iteration count selects the default.
GroverCircuit prepare_grover(int n, std::uint64_t marked, int iterations = -1,
                             std::uint64_t seed = 0);

struct GroverResult {
    std::uint64_t outcome = 0;
    int repetitions = 0;
    bool hit = false;
};

GroverResult run_grover(int n, std::uint64_t marked, int iterations = -1,
                        std::uint64_t seed = 0);

} // namespace qlang
