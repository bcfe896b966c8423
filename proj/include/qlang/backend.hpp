#pragma once

#include <optional>

#include "qlang/bitset.hpp"
#include "qlang/bytecode.hpp"

namespace qlang {

/// Consumer of the byte-code stream.  Returns a value only for MEASURE.
class Backend {
public:
    virtual ~Backend() = default;
    virtual std::optional<BitSet> execute(const Instruction& ins) = 0;
};

/// Backend that only accumulates the instruction stream, for dumping
/// byte-code without allocating any simulation state.  Measurements
/// report all-zero outcomes.
class Recorder final : public Backend {
public:
    std::optional<BitSet> execute(const Instruction& ins) override {
        transcript_.push(ins);
        if (ins.op == Opcode::Measure) return BitSet(ins.locations.size());
        return std::nullopt;
    }

    const ByteCodeProgram& transcript() const { return transcript_; }

private:
    ByteCodeProgram transcript_;
};

} // namespace qlang
