#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "qlang/algorithms.hpp"
#include "qlang/simplify.hpp"
#include "support/dense.hpp"

using namespace qlang;

TEST_CASE("the three-input adder has its canonical footprint") {
    const Operator adder = build_three_adder(4);
    CHECK(adder.width() == 12);
    CHECK(adder.slice_count() == 28);
    CHECK(adder.gate_count() == 40);
    CHECK(adder.ancilla_count() == 0);
    CHECK_THROWS_AS(build_three_adder(0), std::invalid_argument);
}

TEST_CASE("two-qubit addition is exact on every input triple") {
    const int size = 2;
    const Operator adder = build_three_adder(size);
    for (std::uint64_t x = 0; x < 4; ++x)
        for (std::uint64_t y = 0; y < 4; ++y)
            for (std::uint64_t z = 0; z < 4; ++z) {
                Session session({.capacity = 3 * size, .seed = 1});
                Register rz = session.allocate(size, z);
                Register rx = session.allocate(size, x);
                Register ry = session.allocate(size, y);
                adder.apply(rx & ry & rz);
                session.flush();

                const std::uint64_t joint = x | (y << size) | (((x + y + z) % 4) << 2 * size);
                const auto locations = session.physical_locations(rx & ry & rz);
                CHECK(session.simulator()->probability_of(joint, locations) ==
                      doctest::Approx(1.0).epsilon(1e-9));
            }
}

TEST_CASE("measured sums pass the inputs through unchanged") {
    const ThreeAdderRun run = run_three_adder(4, 5, 6, 7, 123);
    CHECK(run.x == 5);
    CHECK(run.y == 6);
    CHECK(run.sum == (5 + 6 + 7) % 16);

    const ThreeAdderRun wide = run_three_adder(5, 30, 29, 3, 7);
    CHECK(wide.sum == (30 + 29 + 3) % 32);

    const ThreeAdderRun one = run_three_adder(1, 1, 1, 1, 0);
    CHECK(one.sum == 1);
}

TEST_CASE("continued fractions list every convergent") {
    using R = Rational;
    CHECK(continued_fractions(3, 8) ==
          std::vector<R>{{0, 1}, {1, 2}, {1, 3}, {3, 8}});
    CHECK(continued_fractions(0, 8) == std::vector<R>{{0, 1}});
    CHECK(continued_fractions(8, 3) == std::vector<R>{{2, 1}, {3, 1}, {8, 3}});
    CHECK(continued_fractions(21, 128) ==
          std::vector<R>{{0, 1}, {1, 6}, {10, 61}, {21, 128}});
    CHECK_THROWS_AS(continued_fractions(1, 0), std::invalid_argument);
}

TEST_CASE("modular helpers compute sizes and powers") {
    CHECK(modpow(7, 0, 15) == 1);
    CHECK(modpow(7, 2, 15) == 4);
    CHECK(modpow(7, 4, 15) == 1);
    CHECK(modpow(2, 62, 1000000007) == 145586002);
    CHECK(bits_for(1) == 1);
    CHECK(bits_for(2) == 1);
    CHECK(bits_for(15) == 4);
    CHECK(bits_for(16) == 4);
    CHECK(bits_for(17) == 5);
    CHECK(phase_bits_for(3, 0.25) == 5);
}

TEST_CASE("multiplication tables are controlled bijections") {
    const auto table = multiply_mod_table(7, 15, 4);
    REQUIRE(table.size() == 16);
    for (std::uint64_t i = 0; i < 15; ++i)
        CHECK(table[i] == i * 7 % 15);
    CHECK(table[15] == 15);
    CHECK_THROWS_AS(multiply_mod_table(5, 15, 4), std::invalid_argument);  // gcd 5
    CHECK_THROWS_AS(multiply_mod_table(7, 15, 3), std::invalid_argument);  // 15 needs 4 bits
}

TEST_CASE("order recovery reads denominators off the convergents") {
    CHECK(recover_order(8, 5, 7, 15) == 4);
    CHECK(recover_order(16, 5, 7, 15) == 4);
    CHECK(recover_order(24, 5, 7, 15) == 4);
    CHECK_FALSE(recover_order(0, 5, 7, 15).has_value());
    // A rounded peak: 21/128 is close to 1/6 and 2^6 = 64 = 1 mod 21.
    CHECK(recover_order(21, 7, 2, 21) == 6);
}

TEST_CASE("phase estimation concentrates on multiples of the order") {
    OrderFindingCircuit circuit = prepare_order_finding(7, 15, 3, 0.25, 0);
    CHECK(circuit.phase_bits == 5);
    CHECK(circuit.work_bits == 4);

    const auto locations = circuit.session->physical_locations(circuit.phase);
    const Simulator& sim = *circuit.session->simulator();
    double peaks = 0.0;
    for (std::uint64_t y : {0u, 8u, 16u, 24u})
        peaks += sim.probability_of(y, locations);
    CHECK(peaks == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sim.probability_of(std::uint64_t{8}, locations) ==
          doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("order finding recovers the order of seven modulo fifteen") {
    int recovered = 0;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const OrderFindingResult result = run_order_finding(7, 15, 3, 0.25, seed);
        CHECK(result.outcome % 8 == 0);  // only the four peaks have weight
        if (result.order) {
            CHECK(*result.order == 4);
            ++recovered;
        } else {
            CHECK(result.outcome == 0);
        }
    }
    CHECK(recovered >= 3);  // the zero outcome appears with probability 1/4
}

TEST_CASE("bad order-finding moduli are rejected") {
    CHECK_THROWS_AS(prepare_order_finding(5, 15, 3, 0.25), std::invalid_argument);  // gcd 5
    CHECK_THROWS_AS(prepare_order_finding(7, 2, 3, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(prepare_order_finding(1, 15, 3, 0.25), std::invalid_argument);
}

TEST_CASE("amplification repetitions follow the square root") {
    CHECK(grover_repetitions(3) == 2);
    CHECK(grover_repetitions(4) == 4);
    CHECK(grover_repetitions(6) == 8);
}

TEST_CASE("amplification boosts the marked state to the closed form") {
    const int n = 3;
    GroverCircuit circuit = prepare_grover(n, 5);
    CHECK(circuit.repetitions == 2);

    const double theta = std::asin(std::pow(2.0, -n / 2.0));
    const double expected = std::pow(std::sin((2 * circuit.repetitions + 1) * theta), 2);
    const double p = circuit.session->simulator()->probability_of(
        std::uint64_t{5}, circuit.session->physical_locations(circuit.data));
    CHECK(p == doctest::Approx(expected).epsilon(1e-9));
    CHECK(expected == doctest::Approx(0.9453125).epsilon(1e-9));  // exactly 121/128
}

TEST_CASE("a full search run usually finds the marked value") {
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const GroverResult result = run_grover(3, 6, -1, seed);
        CHECK(result.repetitions == 2);
        if (result.hit) {
            CHECK(result.outcome == 6);
            ++hits;
        }
    }
    CHECK(hits >= 5);  // success probability is ~0.945 per run

    CHECK_THROWS_AS(run_grover(3, 8), std::invalid_argument);  // marked needs 4 bits
    CHECK(run_grover(2, 3, 0, 1).repetitions == 0);            // zero rounds allowed
}
