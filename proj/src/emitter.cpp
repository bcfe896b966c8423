#include "qlang/emitter.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "qlang/backend.hpp"

namespace qlang {

std::vector<int> translate(const std::vector<int>& indexes, const std::vector<int>& values) {
    std::vector<int> out;
    out.reserve(indexes.size());
    for (int i : indexes) {
        if (i < 0 || static_cast<std::size_t>(i) >= values.size())
            throw std::out_of_range("translate: index " + std::to_string(i) +
                                    " outside table of size " + std::to_string(values.size()));
        out.push_back(values[i]);
    }
    return out;
}

Emitter::Emitter(int capacity) : perm_(capacity) {
    for (int a = 0; a < capacity; ++a) perm_[a] = a;
}

std::vector<int> Emitter::to_locations(const std::vector<int>& addresses) const {
    return translate(addresses, perm_);
}

void Emitter::gate(Opcode op, int param, const std::vector<std::vector<int>>& address_lists) {
    Instruction ins;
    ins.op = op;
    ins.param = param;
    if (address_lists.empty() || address_lists[0].empty()) return;
    const std::size_t count = address_lists[0].size();
    for (const auto& list : address_lists)
        if (list.size() != count)
            throw std::invalid_argument("Emitter: address lists of unequal length");
    // Zip positionally: one gate per column, lists give the gate's lines.
    for (std::size_t g = 0; g < count; ++g)
        for (const auto& list : address_lists)
            ins.locations.push_back(location_of(list[g]));
    buffer_.push(std::move(ins));
}

void Emitter::swap_addresses(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("Emitter: swap lists of unequal length");
    for (std::size_t i = 0; i < a.size(); ++i)
        std::swap(perm_.at(a[i]), perm_.at(b[i]));
}

void Emitter::oracle(Opcode op, std::shared_ptr<const OracleTable> table,
                     const std::vector<int>& control_addresses,
                     const std::vector<int>& line_addresses) {
    Instruction ins;
    ins.op = op;
    ins.ctrl_count = static_cast<int>(control_addresses.size());
    auto [tid, interned] = tables_.intern(*table);
    ins.id = tid;
    ins.table = std::move(interned);
    ins.locations = to_locations(control_addresses);
    for (int l : to_locations(line_addresses)) ins.locations.push_back(l);
    buffer_.push(std::move(ins));
}

void Emitter::init(const BitSet& bits, const std::vector<int>& addresses) {
    if (bits.size() != addresses.size())
        throw std::invalid_argument("Emitter: init bits do not match addresses");
    Instruction ins;
    ins.op = Opcode::Init;
    ins.bits = bits;
    ins.locations = to_locations(addresses);
    buffer_.push(std::move(ins));
}

std::uint64_t Emitter::measure(const std::vector<int>& addresses) {
    Instruction ins;
    ins.op = Opcode::Measure;
    ins.id = next_measure_id_++;
    ins.locations = to_locations(addresses);
    std::uint64_t id = ins.id;
    buffer_.push(std::move(ins));
    return id;
}

std::vector<std::pair<std::uint64_t, BitSet>> Emitter::flush(Backend& backend) {
    std::vector<std::pair<std::uint64_t, BitSet>> outcomes;
    for (const Instruction& ins : buffer_.instructions()) {
        auto result = backend.execute(ins);
        if (ins.op == Opcode::Measure && result.has_value())
            outcomes.emplace_back(ins.id, *result);
    }
    buffer_.clear();
    return outcomes;
}

} // namespace qlang
