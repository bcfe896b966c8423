#include "qlang/bitset.hpp"

#include <stdexcept>

namespace qlang {

BitSet BitSet::from_value(std::size_t size, std::uint64_t value) {
    if (size < 64 && (value >> size) != 0)
        throw std::invalid_argument("BitSet: value " + std::to_string(value) +
                                    " does not fit in " + std::to_string(size) + " bits");
    BitSet out(size);
    for (std::size_t i = 0; i < size && i < 64; ++i)
        out.bits_[i] = (value >> i) & 1u;
    return out;
}

std::uint64_t BitSet::value() const {
    if (bits_.size() > 64)
        throw std::overflow_error("BitSet: " + std::to_string(bits_.size()) +
                                  " bits exceed the machine word");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) v |= std::uint64_t{1} << i;
    return v;
}

std::string BitSet::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

BitSet BitSet::parse(const std::string& digits) {
    BitSet out;
    out.bits_.reserve(digits.size());
    for (char c : digits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("BitSet: bad digit '" + std::string(1, c) + "'");
        out.bits_.push_back(c == '1');
    }
    return out;
}

} // namespace qlang
