#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "qlang/bitset.hpp"

namespace qlang {

/// Classical lookup table behind an oracle instruction.
///
/// Xor tables map n input bits to an m-bit row that is xor-ed onto the output
/// qubits; Perm tables are bijections over `inputs`-bit basis states; Phase
/// tables hold 0/1 rows and flip the sign of matching basis states.
struct OracleTable {
    enum class Kind { Xor, Perm, Phase };

    Kind kind = Kind::Xor;
    int inputs = 0;   ///< n for Xor/Phase tables, the permutation width for Perm.
    int outputs = 0;  ///< m for Xor tables, 0 otherwise.
    std::vector<std::uint64_t> rows;

    bool operator==(const OracleTable&) const = default;
};

enum class Opcode { H, R, CR, Oracle, Perm, PhaseOracle, Init, Measure };

/// One byte-code instruction.  Locations are physical qubit positions, i.e.
/// the output of the classical address permutation, never raw line indexes.
struct Instruction {
    Opcode op = Opcode::H;
    int param = 0;       ///< k for R / CR.
    int ctrl_count = 0;  ///< Leading control locations (oracle opcodes only).
    std::uint64_t id = 0;  ///< Table id for oracles, correlation id for Measure.
    std::vector<int> locations;  ///< CR pairs are interleaved: c1 t1 c2 t2 ...
    std::shared_ptr<const OracleTable> table;  ///< Oracle opcodes only.
    BitSet bits;  ///< Init payload, one bit per location.

    bool operator==(const Instruction& other) const;
};

/// Flat instruction stream plus convenience accessors.
class ByteCodeProgram {
public:
    void push(Instruction ins) { instructions_.push_back(std::move(ins)); }
    void clear() { instructions_.clear(); }
    bool empty() const { return instructions_.empty(); }
    std::size_t size() const { return instructions_.size(); }
    const std::vector<Instruction>& instructions() const { return instructions_; }
    const Instruction& operator[](std::size_t i) const { return instructions_.at(i); }

    bool operator==(const ByteCodeProgram&) const;

private:
    std::vector<Instruction> instructions_;
};

/// Interns oracle tables by content and hands out dense ids in first-use
/// order, so identical programs always serialize identical table headers.
class TableRegistry {
public:
    std::pair<std::uint64_t, std::shared_ptr<const OracleTable>> intern(const OracleTable& table);
    std::shared_ptr<const OracleTable> lookup(std::uint64_t id) const;
    std::size_t size() const { return by_id_.size(); }

private:
    std::vector<std::shared_ptr<const OracleTable>> by_id_;
};

/// Writes the textual byte-code format:
///
///   TABLE tid row0 row1 ...            (hex rows; header, one line per table)
///   H l1 l2 ...
///   R k l1 l2 ...
///   CR k c1 t1 c2 t2 ...
///   ORACLE tid n m c* [controls] l1 ... l(n+m)
///   PERM tid w c* [controls] l1 ... lw
///   PORACLE tid n c* [controls] l1 ... ln
///   INIT bits l1 ...                   (bits as 0/1 digits, LSB first)
///   MEASURE id l1 ...
///
/// Dumping never clears the program.
void dump(const ByteCodeProgram& program, std::ostream& out);
std::string dump(const ByteCodeProgram& program);

/// Parses text produced by dump().  Throws std::invalid_argument on
/// malformed input.  dump(parse_program(text)) == text for dump output.
ByteCodeProgram parse_program(const std::string& text);

} // namespace qlang
