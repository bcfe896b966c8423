#include "qlang/algorithms.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace qlang {

/// --- modular addition ----------------------------------------------------

Operator build_three_adder(int size) {
    if (size < 1)
        throw std::invalid_argument("adder needs at least one qubit per block");

    // Conditional phase ladder: block two, seen through the Fourier
    // transform, picks up the value of block one.  Step i couples addend
    // bit p to accumulator line p + i, which in Fourier coordinates carries
    // the 2^(-i-1) turn that bit contributes there.
    Operator phase_shifts;
    for (int i = 0; i < size; ++i)
        phase_shifts << cond_phase(size - i, i + 1).split(size - i, 2 * i);

    Operator transform = (fourier(size) & swap(size)).offset(size);
    Operator adder_2 = transform & phase_shifts & !transform;

    // Two cascaded two-block adds into a shared accumulator; the adjoint
    // tail of the first and the head of the second collapse on contact.
    Operator adder_3 = adder_2 >> size;
    adder_3 << adder_2.split(size, size);
    return adder_3;
}

ThreeAdderRun run_three_adder(int size, std::uint64_t x, std::uint64_t y, std::uint64_t z,
                              std::uint64_t seed) {
    if (size < 1 || size > 9)
        throw std::invalid_argument("adder block size out of range");
    const std::uint64_t limit = std::uint64_t{1} << size;
    if (x >= limit || y >= limit || z >= limit)
        throw std::invalid_argument("input does not fit the adder block");

    Session session({3 * size, seed, true, true});
    Register rz = session.allocate(size, z);
    Register rx = session.allocate(size, x);
    Register ry = session.allocate(size, y);
    build_three_adder(size).apply(rx & ry & rz);

    ThreeAdderRun run;
    run.sum = rz.measure().value();
    run.x = rx.measure().value();
    run.y = ry.measure().value();
    return run;
}

/// --- order finding -------------------------------------------------------

std::vector<Rational> continued_fractions(std::uint64_t num, std::uint64_t den) {
    if (den == 0)
        throw std::invalid_argument("denominator must be non-zero");
    std::vector<Rational> convergents;
    std::uint64_t h_prev = 1, k_prev = 0;  // one step back
    std::uint64_t h_back = 0, k_back = 1;  // two steps back
    for (;;) {
        const std::uint64_t a = num / den;
        const std::uint64_t h = a * h_prev + h_back;
        const std::uint64_t k = a * k_prev + k_back;
        convergents.push_back({h, k});
        const std::uint64_t rest = num % den;
        if (rest == 0)
            break;
        num = den;
        den = rest;
        h_back = h_prev;
        k_back = k_prev;
        h_prev = h;
        k_prev = k;
    }
    return convergents;
}

std::uint64_t modpow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
    if (modulus == 0 || modulus > 0xFFFFFFFFull)
        throw std::invalid_argument("modulus out of range");
    std::uint64_t result = 1 % modulus;
    base %= modulus;
    while (exponent > 0) {
        if (exponent & 1)
            result = result * base % modulus;
        base = base * base % modulus;
        exponent >>= 1;
    }
    return result;
}

std::vector<std::uint64_t> multiply_mod_table(std::uint64_t factor, std::uint64_t modulus,
                                              int width) {
    if (modulus < 2)
        throw std::invalid_argument("modulus out of range");
    if (width < bits_for(modulus) || width > 30)
        throw std::invalid_argument("table width does not fit the modulus");
    factor %= modulus;
    if (std::gcd(factor, modulus) != 1)
        throw std::invalid_argument("factor shares a divisor with the modulus");
    std::vector<std::uint64_t> rows(std::size_t{1} << width);
    for (std::uint64_t i = 0; i < rows.size(); ++i)
        rows[i] = i < modulus ? i * factor % modulus : i;
    return rows;
}

int phase_bits_for(int n, double eps) {
    if (n < 1)
        throw std::invalid_argument("need at least one result bit");
    if (!(eps > 0.0) || eps >= 1.0)
        throw std::invalid_argument("failure bound must lie in (0, 1)");
    const double extra = std::log(1.0 + 1.0 / (2.0 * eps)) / std::log(2.0);
    return n + static_cast<int>(std::ceil(extra));
}

int bits_for(std::uint64_t value) {
    int bits = 1;
    while ((std::uint64_t{1} << bits) < value)
        ++bits;
    return bits;
}

std::optional<std::uint64_t> recover_order(std::uint64_t y, int phase_bits, std::uint64_t x,
                                           std::uint64_t modulus) {
    if (phase_bits < 1 || phase_bits > 62)
        throw std::invalid_argument("phase width out of range");
    if (y == 0)
        return std::nullopt;
    const std::uint64_t den = std::uint64_t{1} << phase_bits;
    std::optional<std::uint64_t> best;
    for (const Rational& approx : continued_fractions(y, den)) {
        if (approx.num == 0 || approx.den > modulus)
            continue;
        // The convergent denominator divides the order when the measured
        // fraction was not in lowest terms, so scan its small multiples.
        for (std::uint64_t candidate = approx.den; candidate <= modulus;
             candidate += approx.den) {
            if (modpow(x, candidate, modulus) == 1) {
                if (!best || candidate < *best)
                    best = candidate;
                break;
            }
        }
    }
    return best;
}

OrderFindingCircuit prepare_order_finding(std::uint64_t x, std::uint64_t modulus, int n,
                                          double eps, std::uint64_t seed) {
    if (modulus < 3 || modulus > 0xFFFFFFFFull)
        throw std::invalid_argument("modulus out of range");
    x %= modulus;
    if (x < 2)
        throw std::invalid_argument("base must exceed one");
    if (std::gcd(x, modulus) != 1)
        throw std::invalid_argument("base shares a divisor with the modulus");

    OrderFindingCircuit circuit;
    circuit.phase_bits = phase_bits_for(n, eps);
    circuit.work_bits = bits_for(modulus);
    circuit.session = std::make_unique<Session>(
        SessionConfig{circuit.phase_bits + circuit.work_bits, seed, true, true});
    circuit.phase = circuit.session->allocate(circuit.phase_bits);
    circuit.eigen = circuit.session->allocate(circuit.work_bits, std::uint64_t{1});

    hadamard(circuit.phase_bits).apply(circuit.phase);
    for (int i = 0; i < circuit.phase_bits; ++i) {
        const std::uint64_t factor = modpow(x, std::uint64_t{1} << i, modulus);
        const Operator multiply =
            oracle_perm(multiply_mod_table(factor, modulus, circuit.work_bits),
                        circuit.work_bits);
        controlled(multiply, 1).apply(circuit.phase.qubit(i) & circuit.eigen);
    }
    // Concentrate the phase register before it is read out.
    (!fourier(circuit.phase_bits)).apply(circuit.phase);
    circuit.session->flush();
    return circuit;
}

OrderFindingResult run_order_finding(std::uint64_t x, std::uint64_t modulus, int n, double eps,
                                     std::uint64_t seed) {
    OrderFindingCircuit circuit = prepare_order_finding(x, modulus, n, eps, seed);
    OrderFindingResult result;
    result.phase_bits = circuit.phase_bits;
    result.work_bits = circuit.work_bits;
    result.outcome = circuit.phase.measure().value();
    result.order = recover_order(result.outcome, circuit.phase_bits, x % modulus, modulus);
    return result;
}

/// --- amplitude amplification --------------------------------------------

int grover_repetitions(int n) {
    if (n < 1)
        throw std::invalid_argument("need at least one search qubit");
    return static_cast<int>(std::sqrt(std::pow(2.0, n)));
}

Operator grover_step(const Operator& phase_oracle, int n) {
    if (n < 1 || phase_oracle.width() > n)
        throw std::invalid_argument("oracle does not fit the search register");
    std::vector<bool> zero_only(std::size_t{1} << n, false);
    zero_only[0] = true;
    return phase_oracle & (hadamard(n) & oracle_phase(zero_only, n) & hadamard(n));
}

GroverCircuit prepare_grover(int n, std::uint64_t marked, int iterations, std::uint64_t seed) {
    if (n < 1 || n > 20)
        throw std::invalid_argument("search width out of range");
    if (marked >= (std::uint64_t{1} << n))
        throw std::invalid_argument("marked value does not fit the search register");

    GroverCircuit circuit;
    circuit.repetitions = iterations < 0 ? grover_repetitions(n) : iterations;
    circuit.session = std::make_unique<Session>(SessionConfig{n, seed, true, true});
    circuit.data = circuit.session->allocate(n);

    std::vector<bool> flags(std::size_t{1} << n, false);
    flags[marked] = true;
    const Operator step = grover_step(oracle_phase(flags, n), n);

    hadamard(n).apply(circuit.data);
    for (int round = 0; round < circuit.repetitions; ++round)
        step.apply(circuit.data);
    circuit.session->flush();
    return circuit;
}

GroverResult run_grover(int n, std::uint64_t marked, int iterations, std::uint64_t seed) {
    GroverCircuit circuit = prepare_grover(n, marked, iterations, seed);
    GroverResult result;
    result.repetitions = circuit.repetitions;
    result.outcome = circuit.data.measure().value();
    result.hit = result.outcome == marked;
    return result;
}

} // namespace qlang
