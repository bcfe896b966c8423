#include <memory>
#include <stdexcept>

#include "doctest.h"
#include "qlang/backend.hpp"
#include "qlang/emitter.hpp"
#include "qlang/operator.hpp"
#include "qlang/register.hpp"
#include "qlang/session.hpp"

using namespace qlang;

TEST_CASE("translate picks values by index") {
    CHECK(translate({2, 0, 1}, {10, 20, 30}) == std::vector<int>{30, 10, 20});
    CHECK(translate({1, 1, 1}, {4, 5}) == std::vector<int>{5, 5, 5});
    CHECK(translate({}, {1, 2}).empty());
    CHECK_THROWS_AS(translate({3}, {10, 20, 30}), std::out_of_range);
    CHECK_THROWS_AS(translate({-1}, {10}), std::out_of_range);
}

TEST_CASE("the emitter routes addresses through its permutation") {
    Emitter em(4);
    CHECK(em.permutation() == std::vector<int>{0, 1, 2, 3});

    em.gate(Opcode::H, 0, {{0, 3}});
    REQUIRE(em.pending().size() == 1);
    CHECK(em.pending()[0].locations == std::vector<int>{0, 3});

    em.swap_addresses({0}, {2});
    CHECK(em.pending().size() == 1);  // swaps emit nothing
    CHECK(em.permutation() == std::vector<int>{2, 1, 0, 3});
    CHECK(em.location_of(0) == 2);

    em.gate(Opcode::CR, 2, {{0, 1}, {2, 3}});
    REQUIRE(em.pending().size() == 2);
    // Pairs are interleaved control, target, control, target.
    CHECK(em.pending()[1].locations == std::vector<int>{2, 0, 1, 3});

    em.swap_addresses({0, 1}, {2, 3});
    CHECK(em.permutation() == std::vector<int>{0, 3, 2, 1});
}

TEST_CASE("oracle tables are interned by content") {
    Emitter em(3);
    const auto flips = std::make_shared<OracleTable>(
        OracleTable{OracleTable::Kind::Perm, 2, 0, {1, 0, 3, 2}});
    const auto flips_again = std::make_shared<OracleTable>(*flips);
    auto cycle = std::make_shared<OracleTable>(*flips);
    cycle->rows = {1, 2, 3, 0};

    em.oracle(Opcode::Perm, flips, {}, {0, 1});
    em.oracle(Opcode::Perm, flips_again, {}, {1, 2});
    em.oracle(Opcode::Perm, cycle, {2}, {0, 1});

    CHECK(em.pending()[0].id == 0);
    CHECK(em.pending()[1].id == 0);  // same content, same table
    CHECK(em.pending()[2].id == 1);
    CHECK(em.pending()[2].ctrl_count == 1);
    CHECK(em.pending()[2].locations == std::vector<int>{2, 0, 1});
    CHECK(em.tables().size() == 2);
}

TEST_CASE("measurements are numbered and flushing clears the buffer") {
    Emitter em(2);
    Recorder recorder;
    CHECK(em.measure({0}) == 0);
    CHECK(em.measure({0, 1}) == 1);

    const auto outcomes = em.flush(recorder);
    REQUIRE(outcomes.size() == 2);
    CHECK(outcomes[0].first == 0);
    CHECK(outcomes[0].second == BitSet(1));
    CHECK(outcomes[1].second == BitSet(2));
    CHECK(em.pending().empty());
    CHECK(recorder.transcript().size() == 2);

    CHECK(em.measure({1}) == 2);  // ids keep counting across flushes
}

TEST_CASE("programs serialize to the documented text format") {
    Emitter em(6);
    em.gate(Opcode::H, 0, {{0, 2}});
    em.gate(Opcode::R, -2, {{1}});
    em.gate(Opcode::CR, 3, {{0, 2}, {1, 3}});
    em.oracle(Opcode::Oracle,
              std::make_shared<OracleTable>(OracleTable{OracleTable::Kind::Xor, 2, 4,
                                                        {10, 0, 15, 2}}),
              {}, {0, 1, 2, 3, 4, 5});
    em.oracle(Opcode::Perm,
              std::make_shared<OracleTable>(OracleTable{OracleTable::Kind::Perm, 2, 0,
                                                        {1, 0, 3, 2}}),
              {5}, {0, 1});
    em.oracle(Opcode::PhaseOracle,
              std::make_shared<OracleTable>(OracleTable{OracleTable::Kind::Phase, 2, 0,
                                                        {0, 1, 1, 0}}),
              {}, {0, 1});
    em.init(BitSet::from_value(3, 5), {0, 1, 2});
    em.measure({0, 1});

    const std::string text = dump(em.pending());
    CHECK(text ==
          "TABLE 0 a 0 f 2\n"
          "TABLE 1 1 0 3 2\n"
          "TABLE 2 0 1 1 0\n"
          "H 0 2\n"
          "R -2 1\n"
          "CR 3 0 1 2 3\n"
          "ORACLE 0 2 4 0 0 1 2 3 4 5\n"
          "PERM 1 2 1 5 0 1\n"
          "PORACLE 2 2 0 0 1\n"
          "INIT 101 0 1 2\n"
          "MEASURE 0 0 1\n");

    const ByteCodeProgram parsed = parse_program(text);
    CHECK(parsed == em.pending());
    CHECK(dump(parsed) == text);  // the round trip is byte-stable
}

TEST_CASE("the parser rejects malformed lines") {
    CHECK_THROWS_AS(parse_program("BOGUS 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_program("R\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_program("ORACLE 9 2 1 0 0 1 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_program("INIT 2x 0\n"), std::invalid_argument);
    CHECK(parse_program("").empty());
    CHECK(parse_program("\nH 0\n\n").size() == 1);
}

TEST_CASE("classical swaps move qubits without instructions") {
    Session session({.capacity = 4, .simulate = false});
    Register reg = session.allocate(4);
    CHECK(session.physical_locations(reg) == std::vector<int>{0, 1, 2, 3});

    swap(4).apply(reg);
    session.flush();
    CHECK(session.recorder()->transcript().empty());
    CHECK(session.physical_locations(reg) == std::vector<int>{3, 2, 1, 0});

    // Later gates land on the moved locations.
    hadamard(1).apply(reg.qubit(0));
    session.flush();
    REQUIRE(session.recorder()->transcript().size() == 1);
    CHECK(session.recorder()->transcript()[0].locations == std::vector<int>{3});
}

TEST_CASE("operators translate line lists into located byte-code") {
    Session session({.capacity = 5, .simulate = false});
    Register reg = session.allocate(3);

    // Apply to a subrange in reversed order: line j of the operator follows
    // qubit j of the target register.
    Register twisted = reg.qubit(2) & reg.qubit(0);
    cond_phase(1, 2).apply(twisted);
    session.flush();

    const ByteCodeProgram& transcript = session.recorder()->transcript();
    REQUIRE(transcript.size() == 1);
    CHECK(transcript[0].op == Opcode::CR);
    CHECK(transcript[0].param == 2);
    // Line 1 (the control leg listed first) is qubit 1 of the twisted view,
    // i.e. address 0; line 0 is address 2.
    CHECK(transcript[0].locations == std::vector<int>{0, 2});
}
