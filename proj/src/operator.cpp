#include "qlang/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qlang/simplify.hpp"

namespace qlang {

std::complex<double> phase_factor(int k) {
    if (k == 0)
        throw std::invalid_argument("phase exponent must be non-zero");
    const double angle = 2.0 * std::numbers::pi * std::ldexp(1.0, -std::abs(k));
    return std::polar(1.0, k > 0 ? angle : -angle);
}

bool is_oracle(SliceKind kind) {
    return kind == SliceKind::OracleXor || kind == SliceKind::OraclePerm ||
           kind == SliceKind::OraclePhase;
}

int TimeSlice::parallelism() const {
    if (is_oracle(kind))
        return 1;
    return static_cast<int>(lists.empty() ? 0 : lists.front().size());
}

bool TimeSlice::operator==(const TimeSlice& other) const {
    if (kind != other.kind || param != other.param || lists != other.lists ||
        controls != other.controls)
        return false;
    if (static_cast<bool>(table) != static_cast<bool>(other.table))
        return false;
    return !table || *table == *other.table;
}

namespace {

int expected_list_count(SliceKind kind) {
    switch (kind) {
    case SliceKind::CondPhase:
    case SliceKind::Swap:
        return 2;
    default:
        return 1;
    }
}

void validate_slice(const TimeSlice& slice) {
    const int arity = expected_list_count(slice.kind);
    if (static_cast<int>(slice.lists.size()) != arity)
        throw std::invalid_argument("slice has the wrong number of index lists");
    const std::size_t count = slice.lists.front().size();
    if (count == 0)
        throw std::invalid_argument("slice holds no gates");
    for (const auto& list : slice.lists)
        if (list.size() != count)
            throw std::invalid_argument("slice index lists differ in length");

    std::set<int> seen;
    for (const auto& list : slice.lists)
        for (int ref : list)
            if (!seen.insert(ref).second)
                throw std::invalid_argument("slice reuses a line within one step");
    for (int ref : slice.controls)
        if (!seen.insert(ref).second)
            throw std::invalid_argument("slice reuses a line within one step");

    switch (slice.kind) {
    case SliceKind::Phase:
    case SliceKind::CondPhase:
        if (slice.param == 0)
            throw std::invalid_argument("phase exponent must be non-zero");
        break;
    case SliceKind::OracleXor:
    case SliceKind::OraclePerm:
    case SliceKind::OraclePhase: {
        if (!slice.table)
            throw std::invalid_argument("oracle slice carries no table");
        const auto& table = *slice.table;
        const std::size_t lines =
            slice.kind == SliceKind::OracleXor
                ? static_cast<std::size_t>(table.inputs + table.outputs)
                : static_cast<std::size_t>(table.inputs);
        if (count != lines)
            throw std::invalid_argument("oracle slice line count does not match its table");
        break;
    }
    default:
        break;
    }
    if (!slice.controls.empty() && !is_oracle(slice.kind))
        throw std::invalid_argument("only oracle slices may carry native controls");
}

void conjugate_slice(TimeSlice& slice) {
    switch (slice.kind) {
    case SliceKind::Phase:
    case SliceKind::CondPhase:
        slice.param = -slice.param;
        break;
    case SliceKind::OraclePerm: {
        // The inverse of a basis permutation is the reversed lookup.
        auto inverse = std::make_shared<OracleTable>(*slice.table);
        for (std::size_t row = 0; row < slice.table->rows.size(); ++row)
            inverse->rows[slice.table->rows[row]] = row;
        slice.table = std::move(inverse);
        break;
    }
    default:
        // Hadamard and swap layers are involutions; XOR and phase-flip
        // oracles are their own inverses as well.
        break;
    }
}

void remap_refs(TimeSlice& slice, auto&& map) {
    for (auto& list : slice.lists)
        for (int& ref : list)
            if (!is_ancilla_ref(ref))
                ref = map(ref);
    for (int& ref : slice.controls)
        if (!is_ancilla_ref(ref))
            ref = map(ref);
}

std::vector<int> iota_list(int first, int count) {
    std::vector<int> list(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        list[static_cast<std::size_t>(i)] = first + i;
    return list;
}

} // namespace

std::size_t Operator::gate_count() const {
    std::size_t total = 0;
    for (const auto& slice : slices_)
        total += static_cast<std::size_t>(slice.parallelism());
    return total;
}

void Operator::refresh_extents() {
    int max_line = -1;
    int max_slot = -1;
    for (const auto& slice : slices_) {
        auto scan = [&](int ref) {
            if (is_ancilla_ref(ref))
                max_slot = std::max(max_slot, ancilla_slot(ref));
            else
                max_line = std::max(max_line, ref);
        };
        for (const auto& list : slice.lists)
            for (int ref : list)
                scan(ref);
        for (int ref : slice.controls)
            scan(ref);
    }
    width_ = max_line + 1;
    ancillae_ = max_slot + 1;
}

void Operator::maybe_simplify() {
    if (simplify_on_compose() && !slices_.empty()) {
        detail::simplify_slices(slices_);
        refresh_extents();
    }
}

Operator& Operator::operator&=(const Operator& other) {
    if (&other == this) {
        auto copy = other.slices_;
        slices_.insert(slices_.end(), copy.begin(), copy.end());
    } else {
        slices_.insert(slices_.end(), other.slices_.begin(), other.slices_.end());
    }
    refresh_extents();
    maybe_simplify();
    return *this;
}

Operator& Operator::operator<<(Operator& other) {
    if (&other != this) {
        slices_.insert(slices_.end(), std::make_move_iterator(other.slices_.begin()),
                       std::make_move_iterator(other.slices_.end()));
        other.slices_.clear();
        other.width_ = 0;
        other.ancillae_ = 0;
    } else {
        auto copy = slices_;
        slices_.insert(slices_.end(), copy.begin(), copy.end());
    }
    refresh_extents();
    maybe_simplify();
    return *this;
}

Operator& Operator::operator<<(Operator&& other) { return *this << other; }

Operator& Operator::adjoin() {
    std::reverse(slices_.begin(), slices_.end());
    for (auto& slice : slices_)
        conjugate_slice(slice);
    return *this;
}

Operator Operator::operator!() const {
    Operator copy = *this;
    copy.adjoin();
    return copy;
}

Operator& Operator::split(int head, int jump) {
    if (head < 0 || jump < 0)
        throw std::invalid_argument("split expects a non-negative line and distance");
    if (jump > 0) {
        for (auto& slice : slices_)
            remap_refs(slice, [&](int ref) { return ref >= head ? ref + jump : ref; });
        refresh_extents();
    }
    return *this;
}

Operator& Operator::invert(int head, int size) {
    if (head < 0 || size < 0)
        throw std::invalid_argument("invert expects a non-negative line and size");
    if (size > 1) {
        const int mirror = 2 * head + size - 1;
        for (auto& slice : slices_)
            remap_refs(slice, [&](int ref) {
                return (ref >= head && ref < head + size) ? mirror - ref : ref;
            });
    }
    return *this;
}

Operator Operator::split_copy(int head, int jump) const {
    Operator copy = *this;
    copy.split(head, jump);
    return copy;
}

Operator Operator::invert_copy(int head, int size) const {
    Operator copy = *this;
    copy.invert(head, size);
    return copy;
}

Operator Operator::offset_copy(int jump) const { return split_copy(0, jump); }

Operator Operator::from_slices(std::vector<TimeSlice> slices) {
    for (const auto& slice : slices)
        validate_slice(slice);
    Operator op;
    op.slices_ = std::move(slices);
    op.refresh_extents();
    return op;
}

bool Operator::operator==(const Operator& other) const {
    return width_ == other.width_ && ancillae_ == other.ancillae_ && slices_ == other.slices_;
}

/// --- primitive constructors -------------------------------------------

Operator identity() { return Operator{}; }

Operator hadamard(int n) {
    if (n < 0)
        throw std::invalid_argument("register size must be non-negative");
    if (n == 0)
        return identity();
    TimeSlice slice{SliceKind::Hadamard, 0, {iota_list(0, n)}, {}, nullptr};
    return Operator::from_slices({std::move(slice)});
}

Operator phase(int n, int k) {
    if (n < 0)
        throw std::invalid_argument("register size must be non-negative");
    if (n == 0)
        return identity();
    TimeSlice slice{SliceKind::Phase, k, {iota_list(0, n)}, {}, nullptr};
    return Operator::from_slices({std::move(slice)});
}

Operator cond_phase(int count, int k) {
    if (count < 0)
        throw std::invalid_argument("pair count must be non-negative");
    if (count == 0)
        return identity();
    TimeSlice slice{SliceKind::CondPhase, k, {iota_list(count, count), iota_list(0, count)}, {},
                    nullptr};
    return Operator::from_slices({std::move(slice)});
}

Operator cnot(const std::vector<int>& controls, const std::vector<int>& targets) {
    if (controls.size() != targets.size())
        throw std::invalid_argument("control and target lists differ in length");
    if (controls.empty())
        return identity();
    std::vector<TimeSlice> slices;
    slices.push_back({SliceKind::Hadamard, 0, {targets}, {}, nullptr});
    slices.push_back({SliceKind::CondPhase, 1, {controls, targets}, {}, nullptr});
    slices.push_back({SliceKind::Hadamard, 0, {targets}, {}, nullptr});
    return Operator::from_slices(std::move(slices));
}

Operator toffoli(const std::vector<int>& controls1, const std::vector<int>& controls2,
                 const std::vector<int>& targets) {
    if (controls1.size() != controls2.size() || controls1.size() != targets.size())
        throw std::invalid_argument("control and target lists differ in length");
    if (controls1.empty())
        return identity();
    const auto& c1 = controls1;
    const auto& c2 = controls2;
    const auto& t = targets;
    std::vector<TimeSlice> slices;
    auto h = [&] { slices.push_back({SliceKind::Hadamard, 0, {t}, {}, nullptr}); };
    auto r = [&](int k) { slices.push_back({SliceKind::Phase, k, {t}, {}, nullptr}); };
    auto cr = [&](int k, const std::vector<int>& a, const std::vector<int>& b) {
        slices.push_back({SliceKind::CondPhase, k, {a, b}, {}, nullptr});
    };
    // Doubly-controlled phase flip between the two control rails, conjugated
    // by Hadamards on the target; the leading Hadamard pair is already gone.
    cr(1, c1, t);
    h();
    r(-3);
    h();
    cr(1, c2, t);
    h();
    r(3);
    h();
    cr(1, c1, t);
    h();
    r(-3);
    h();
    cr(1, c2, t);
    h();
    r(3);
    cr(2, c1, c2);
    h();
    return Operator::from_slices(std::move(slices));
}

Operator swap(int n) {
    if (n < 0)
        throw std::invalid_argument("register size must be non-negative");
    if (n < 2)
        return identity();
    const int half = n / 2;
    std::vector<int> low = iota_list(0, half);
    std::vector<int> high(static_cast<std::size_t>(half));
    for (int i = 0; i < half; ++i)
        high[static_cast<std::size_t>(i)] = n - 1 - i;
    TimeSlice slice{SliceKind::Swap, 0, {std::move(low), std::move(high)}, {}, nullptr};
    return Operator::from_slices({std::move(slice)});
}

Operator fourier(int n) {
    if (n < 0)
        throw std::invalid_argument("register size must be non-negative");
    if (n == 0)
        return identity();
    std::vector<TimeSlice> slices;
    for (int t = n - 1; t >= 0; --t) {
        slices.push_back({SliceKind::Hadamard, 0, {{t}}, {}, nullptr});
        for (int d = 1; d <= t; ++d)
            slices.push_back({SliceKind::CondPhase, d + 1, {{t - d}, {t}}, {}, nullptr});
    }
    // Reverse the line order so the transform matches the weight convention
    // of the registers it feeds.
    const Operator reorder = swap(n);
    for (const auto& slice : reorder.slices())
        slices.push_back(slice);
    return Operator::from_slices(std::move(slices));
}

/// --- oracle constructors ----------------------------------------------

Operator oracle_xor(const std::vector<std::uint64_t>& table, int n, int m) {
    if (n < 1 || n > 30 || m < 1 || m > 30)
        throw std::invalid_argument("oracle shape out of range");
    if (table.size() != (std::size_t{1} << n))
        throw std::invalid_argument("oracle table must cover every input value");
    for (std::uint64_t row : table)
        if (m < 64 && (row >> m) != 0)
            throw std::invalid_argument("oracle row does not fit the output lines");
    auto stored = std::make_shared<OracleTable>(OracleTable{OracleTable::Kind::Xor, n, m, table});
    TimeSlice slice{SliceKind::OracleXor, 0, {iota_list(0, n + m)}, {}, std::move(stored)};
    return Operator::from_slices({std::move(slice)});
}

Operator oracle_perm(const std::vector<std::uint64_t>& table, int width) {
    if (width < 1 || width > 30)
        throw std::invalid_argument("oracle shape out of range");
    const std::size_t states = std::size_t{1} << width;
    if (table.size() != states)
        throw std::invalid_argument("permutation table must cover every basis state");
    std::vector<bool> hit(states, false);
    for (std::uint64_t row : table) {
        if (row >= states || hit[row])
            throw std::invalid_argument("permutation table is not a bijection");
        hit[row] = true;
    }
    auto stored =
        std::make_shared<OracleTable>(OracleTable{OracleTable::Kind::Perm, width, 0, table});
    TimeSlice slice{SliceKind::OraclePerm, 0, {iota_list(0, width)}, {}, std::move(stored)};
    return Operator::from_slices({std::move(slice)});
}

Operator oracle_phase(const std::vector<bool>& table, int n) {
    if (n < 1 || n > 30)
        throw std::invalid_argument("oracle shape out of range");
    if (table.size() != (std::size_t{1} << n))
        throw std::invalid_argument("oracle table must cover every input value");
    std::vector<std::uint64_t> rows(table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
        rows[i] = table[i] ? 1 : 0;
    auto stored =
        std::make_shared<OracleTable>(OracleTable{OracleTable::Kind::Phase, n, 0, std::move(rows)});
    TimeSlice slice{SliceKind::OraclePhase, 0, {iota_list(0, n)}, {}, std::move(stored)};
    return Operator::from_slices({std::move(slice)});
}

Operator expand_swaps(const Operator& op) {
    std::vector<TimeSlice> slices;
    for (const auto& slice : op.slices()) {
        if (slice.kind != SliceKind::Swap) {
            slices.push_back(slice);
            continue;
        }
        const auto& a = slice.lists[0];
        const auto& b = slice.lists[1];
        // A line exchange is three alternating controlled-nots; every pair in
        // the layer expands in lockstep so parallelism is preserved.
        const std::pair<const std::vector<int>*, const std::vector<int>*> legs[] = {
            {&a, &b}, {&b, &a}, {&a, &b}};
        for (auto [from, to] : legs) {
            slices.push_back({SliceKind::Hadamard, 0, {*to}, {}, nullptr});
            slices.push_back({SliceKind::CondPhase, 1, {*from, *to}, {}, nullptr});
            slices.push_back({SliceKind::Hadamard, 0, {*to}, {}, nullptr});
        }
    }
    return Operator::from_slices(std::move(slices));
}

/// --- debug formatting ---------------------------------------------------

std::string to_string(const TimeSlice& slice) {
    std::ostringstream out;
    auto lines = [&](const std::vector<int>& list) {
        out << '{';
        for (std::size_t i = 0; i < list.size(); ++i)
            out << (i ? " " : "") << list[i];
        out << '}';
    };
    auto pairs = [&] {
        out << '{';
        for (std::size_t i = 0; i < slice.lists[0].size(); ++i)
            out << (i ? " (" : "(") << slice.lists[0][i] << ',' << slice.lists[1][i] << ')';
        out << '}';
    };
    switch (slice.kind) {
    case SliceKind::Hadamard:
        out << "H ";
        lines(slice.lists[0]);
        break;
    case SliceKind::Phase:
        out << "R[" << slice.param << "] ";
        lines(slice.lists[0]);
        break;
    case SliceKind::CondPhase:
        out << "CR[" << slice.param << "] ";
        pairs();
        break;
    case SliceKind::Swap:
        out << "SWAP ";
        pairs();
        break;
    case SliceKind::OracleXor:
        out << "XOR ";
        lines(slice.lists[0]);
        break;
    case SliceKind::OraclePerm:
        out << "PERM ";
        lines(slice.lists[0]);
        break;
    case SliceKind::OraclePhase:
        out << "FLIP ";
        lines(slice.lists[0]);
        break;
    }
    if (!slice.controls.empty()) {
        out << " ctl";
        lines(slice.controls);
    }
    return out.str();
}

std::string to_string(const Operator& op) {
    std::ostringstream out;
    out << "operator width=" << op.width() << " ancillae=" << op.ancilla_count()
        << " slices=" << op.slice_count() << '\n';
    for (const auto& slice : op.slices())
        out << "  [" << to_string(slice) << "]\n";
    return out.str();
}

std::ostream& operator<<(std::ostream& out, const Operator& op) {
    return out << to_string(op);
}

} // namespace qlang
