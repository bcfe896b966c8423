#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace qlang {

/// Ordered list of classical bits; index 0 is the least significant.
///
/// Measurement results and register initial values travel through this type,
/// so bit i always lines up with qubit i of the register involved.
class BitSet {
public:
    BitSet() = default;
    explicit BitSet(std::size_t size) : bits_(size, false) {}
    BitSet(std::initializer_list<bool> bits) : bits_(bits) {}

    /// Builds a bit pattern of `size` bits from an integer.  Throws
    /// std::invalid_argument when the value needs more than `size` bits.
    static BitSet from_value(std::size_t size, std::uint64_t value);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    bool operator[](std::size_t i) const { return bits_.at(i); }
    void set(std::size_t i, bool v) { bits_.at(i) = v; }
    void push_back(bool v) { bits_.push_back(v); }

    /// Exact integer conversion.  Throws std::overflow_error when the
    /// pattern is wider than a machine word; values are never truncated.
    std::uint64_t value() const;

    /// Digit string, least significant bit first: |3> over 5 qubits -> "11000".
    std::string to_string() const;

    /// Inverse of to_string().  Throws std::invalid_argument on other input.
    static BitSet parse(const std::string& digits);

    bool operator==(const BitSet&) const = default;

private:
    std::vector<bool> bits_;
};

} // namespace qlang
