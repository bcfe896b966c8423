#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qlang/bitset.hpp"
#include "qlang/bytecode.hpp"

namespace qlang {

class Backend;

/// Index translation: out[i] = values[indexes[i]].
///
/// The same lookup maps operator line indexes to register addresses and
/// register addresses to physical locations, so it is shared by both steps.
std::vector<int> translate(const std::vector<int>& indexes, const std::vector<int>& values);

/// Turns resolved gate applications into byte-code.
///
/// Owns the classical address permutation P (address -> physical location),
/// the pending instruction buffer and the oracle table registry.  Classical
/// swaps never produce instructions: they transpose entries of P, and every
/// later instruction is routed through the updated permutation.  P is never
/// reset during a session.
class Emitter {
public:
    explicit Emitter(int capacity);

    const std::vector<int>& permutation() const { return perm_; }
    int location_of(int address) const { return perm_.at(address); }

    /// Opcode::H / R / CR with positionally zipped address lists.
    void gate(Opcode op, int param, const std::vector<std::vector<int>>& address_lists);

    /// Transposes P entries pairwise; emits nothing.
    void swap_addresses(const std::vector<int>& a, const std::vector<int>& b);

    void oracle(Opcode op, std::shared_ptr<const OracleTable> table,
                const std::vector<int>& control_addresses,
                const std::vector<int>& line_addresses);

    void init(const BitSet& bits, const std::vector<int>& addresses);

    /// Appends a MEASURE and returns its correlation id.
    std::uint64_t measure(const std::vector<int>& addresses);

    /// Feeds the pending buffer to the backend in order, collecting
    /// measurement outcomes by correlation id, then clears the buffer.
    std::vector<std::pair<std::uint64_t, BitSet>> flush(Backend& backend);

    const ByteCodeProgram& pending() const { return buffer_; }
    TableRegistry& tables() { return tables_; }

private:
    std::vector<int> to_locations(const std::vector<int>& addresses) const;

    std::vector<int> perm_;
    ByteCodeProgram buffer_;
    TableRegistry tables_;
    std::uint64_t next_measure_id_ = 0;
};

} // namespace qlang
