#include "qlang/simplify.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <utility>

namespace qlang {

namespace {

bool g_simplify_on_compose = true;

bool pairwise(SliceKind kind) { return kind == SliceKind::CondPhase || kind == SliceKind::Swap; }

/// True when a gate from `a` and a gate from `b` on the same lines multiply
/// to the identity.  R_1 is its own inverse, so exponents of magnitude one
/// pair off regardless of sign.
bool mutually_adjoint(const TimeSlice& a, const TimeSlice& b) {
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
    case SliceKind::Hadamard:
    case SliceKind::Swap:
        return true;
    case SliceKind::Phase:
    case SliceKind::CondPhase:
        return b.param == -a.param || (std::abs(a.param) == 1 && std::abs(b.param) == 1);
    default:
        return false;
    }
}

using Item = std::pair<int, int>;

/// One comparable token per gate: the line for single-line gates, the
/// unordered line pair for symmetric two-line gates.
Item item_at(const TimeSlice& slice, std::size_t i) {
    if (!pairwise(slice.kind))
        return {slice.lists[0][i], slice.lists[0][i]};
    const int x = slice.lists[0][i];
    const int y = slice.lists[1][i];
    return {std::min(x, y), std::max(x, y)};
}

void drop_items(TimeSlice& slice, const std::set<Item>& doomed) {
    std::size_t keep = 0;
    const std::size_t count = slice.lists[0].size();
    for (std::size_t i = 0; i < count; ++i) {
        if (doomed.count(item_at(slice, i)))
            continue;
        for (auto& list : slice.lists)
            list[keep] = list[i];
        ++keep;
    }
    for (auto& list : slice.lists)
        list.resize(keep);
}

/// Cancels the gates slices i and i+1 share; erases slices that empty out.
bool try_cancel(std::vector<TimeSlice>& slices, std::size_t i) {
    TimeSlice& a = slices[i];
    TimeSlice& b = slices[i + 1];
    if (is_oracle(a.kind) || is_oracle(b.kind) || !mutually_adjoint(a, b))
        return false;

    std::set<Item> left;
    for (std::size_t g = 0; g < a.lists[0].size(); ++g)
        left.insert(item_at(a, g));
    std::set<Item> matched;
    for (std::size_t g = 0; g < b.lists[0].size(); ++g) {
        Item item = item_at(b, g);
        if (left.count(item))
            matched.insert(item);
    }
    if (matched.empty())
        return false;

    drop_items(a, matched);
    drop_items(b, matched);
    if (b.lists[0].empty())
        slices.erase(slices.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    if (slices[i].lists[0].empty())
        slices.erase(slices.begin() + static_cast<std::ptrdiff_t>(i));
    return true;
}

/// Fuses slices i and i+1 into one layer when they hold the same gate and
/// touch disjoint lines.
bool try_merge(std::vector<TimeSlice>& slices, std::size_t i) {
    TimeSlice& a = slices[i];
    TimeSlice& b = slices[i + 1];
    if (is_oracle(a.kind) || is_oracle(b.kind))
        return false;
    if (a.kind != b.kind || a.param != b.param)
        return false;

    std::set<int> used;
    for (const auto& list : a.lists)
        used.insert(list.begin(), list.end());
    for (const auto& list : b.lists)
        for (int ref : list)
            if (used.count(ref))
                return false;

    for (std::size_t l = 0; l < a.lists.size(); ++l)
        a.lists[l].insert(a.lists[l].end(), b.lists[l].begin(), b.lists[l].end());
    slices.erase(slices.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    return true;
}

bool sweep(std::vector<TimeSlice>& slices, bool (*rule)(std::vector<TimeSlice>&, std::size_t)) {
    bool changed = false;
    std::size_t i = 0;
    while (i + 1 < slices.size()) {
        if (rule(slices, i)) {
            changed = true;
            i = (i == 0) ? 0 : i - 1;
        } else {
            ++i;
        }
    }
    return changed;
}

} // namespace

namespace detail {

bool simplify_slices(std::vector<TimeSlice>& slices) {
    bool any = false;
    for (;;) {
        bool round = false;
        while (sweep(slices, try_cancel))
            round = true;
        while (sweep(slices, try_merge))
            round = true;
        if (!round)
            break;
        any = true;
    }
    return any;
}

} // namespace detail

Operator& simplify(Operator& op, SimplifyStats* stats) {
    if (stats) {
        stats->slices_before = op.slice_count();
        stats->gates_before = op.gate_count();
    }
    detail::simplify_slices(op.slices_);
    op.refresh_extents();
    if (stats) {
        stats->slices_after = op.slice_count();
        stats->gates_after = op.gate_count();
    }
    return op;
}

bool simplify_on_compose() { return g_simplify_on_compose; }

void set_simplify_on_compose(bool on) { g_simplify_on_compose = on; }

SimplifyScope::SimplifyScope(bool on) : previous_(g_simplify_on_compose) {
    g_simplify_on_compose = on;
}

SimplifyScope::~SimplifyScope() { g_simplify_on_compose = previous_; }

} // namespace qlang
