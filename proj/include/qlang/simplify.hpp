#pragma once

#include <cstddef>
#include <vector>

#include "qlang/operator.hpp"

namespace qlang {

struct SimplifyStats {
    std::size_t slices_before = 0;
    std::size_t slices_after = 0;
    std::size_t gates_before = 0;
    std::size_t gates_after = 0;
};

/// Shrinks an operator in place without changing its unitary action:
/// adjacent slices annihilate gate pairs that undo each other (whole slices
/// disappear when every gate pairs off) and compatible neighbours sharing no
/// lines fuse into one wider slice, until neither rule applies anywhere.
/// Oracle slices are opaque and act as barriers.
Operator& simplify(Operator& op, SimplifyStats* stats = nullptr);

/// When enabled (the default), every composition and splice runs the
/// simplifier over the combined slice sequence, so circuits shrink as they
/// are assembled.  The switch is process-global.
bool simplify_on_compose();
void set_simplify_on_compose(bool on);

/// Restores the previous embedded-simplification setting on destruction.
class SimplifyScope {
public:
    explicit SimplifyScope(bool on);
    ~SimplifyScope();
    SimplifyScope(const SimplifyScope&) = delete;
    SimplifyScope& operator=(const SimplifyScope&) = delete;

private:
    bool previous_;
};

namespace detail {
/// Runs the cancel/merge loop directly on a slice sequence; returns whether
/// anything changed.
bool simplify_slices(std::vector<TimeSlice>& slices);
} // namespace detail

} // namespace qlang
