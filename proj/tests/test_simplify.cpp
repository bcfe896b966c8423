#include <random>
#include <vector>

#include "doctest.h"
#include "qlang/algorithms.hpp"
#include "qlang/operator.hpp"
#include "qlang/simplify.hpp"
#include "support/dense.hpp"
#include "support/random_ops.hpp"

using namespace qlang;

namespace {

Operator raw(std::vector<TimeSlice> slices) { return Operator::from_slices(std::move(slices)); }

TimeSlice h(std::vector<int> lines) {
    return {SliceKind::Hadamard, 0, {std::move(lines)}, {}, nullptr};
}

TimeSlice r(int k, std::vector<int> lines) {
    return {SliceKind::Phase, k, {std::move(lines)}, {}, nullptr};
}

TimeSlice cr(int k, std::vector<int> a, std::vector<int> b) {
    return {SliceKind::CondPhase, k, {std::move(a), std::move(b)}, {}, nullptr};
}

TimeSlice swp(std::vector<int> a, std::vector<int> b) {
    return {SliceKind::Swap, 0, {std::move(a), std::move(b)}, {}, nullptr};
}

} // namespace

TEST_CASE("adjacent inverse layers annihilate") {
    CHECK((hadamard(3) & hadamard(3)).is_identity());
    CHECK((swap(4) & swap(4)).is_identity());
    CHECK((phase(2, 3) & phase(2, -3)).is_identity());
    CHECK((cond_phase(2, 2) & cond_phase(2, -2)).is_identity());
    CHECK((fourier(3) & !fourier(3)).is_identity());
}

TEST_CASE("self-inverse phase layers cancel at |k| == 1") {
    CHECK((phase(1, 1) & phase(1, 1)).is_identity());
    CHECK((phase(1, 1) & phase(1, -1)).is_identity());
    CHECK((cond_phase(1, 1) & cond_phase(1, 1)).is_identity());
    CHECK((phase(1, 2) & phase(1, 2)).slice_count() == 2);  // R_2 is not self-inverse
    CHECK((cond_phase(1, -2) & cond_phase(1, -2)).slice_count() == 2);
}

TEST_CASE("cancellation removes only the shared gates") {
    // The shared line cancels; the disjoint survivors then fuse into one
    // parallel layer.
    Operator op = raw({h({0, 1}), h({1, 2})});
    simplify(op);
    REQUIRE(op.slice_count() == 1);
    CHECK(op.slices()[0] == h({0, 2}));

    Operator pairs = raw({cr(2, {0, 2}, {1, 3}), cr(-2, {0}, {1})});
    simplify(pairs);
    REQUIRE(pairs.slice_count() == 1);
    CHECK(pairs.slices()[0] == cr(2, {2}, {3}));
}

TEST_CASE("pair identity ignores the leg order") {
    Operator op = raw({cr(3, {0}, {1}), cr(-3, {1}, {0})});
    simplify(op);
    CHECK(op.is_identity());

    Operator swaps = raw({swp({0, 2}, {1, 3}), swp({3}, {2})});
    simplify(swaps);
    REQUIRE(swaps.slice_count() == 1);
    CHECK(swaps.slices()[0] == swp({0}, {1}));
}

TEST_CASE("disjoint layers of the same gate merge") {
    Operator op = raw({h({0}), h({1})});
    simplify(op);
    REQUIRE(op.slice_count() == 1);
    CHECK(op.slices()[0].lists[0] == std::vector<int>{0, 1});

    // Merging can expose a later cancellation.
    Operator chain = raw({r(2, {0}), r(2, {1}), r(-2, {0})});
    simplify(chain);
    REQUIRE(chain.slice_count() == 1);
    CHECK(chain.slices()[0] == r(2, {1}));
}

TEST_CASE("layers that share lines or differ in angle stay apart") {
    Operator shared = raw({r(2, {0, 1}), r(2, {1, 2})});
    simplify(shared);
    CHECK(shared.slice_count() == 2);

    Operator angles = raw({r(2, {0}), r(3, {1})});
    simplify(angles);
    CHECK(angles.slice_count() == 2);
}

TEST_CASE("oracle slices are opaque to rewriting") {
    const Operator oracle = oracle_perm({1, 0, 2, 3}, 2);
    Operator op = hadamard(2) & oracle & hadamard(2);
    CHECK(op.slice_count() == 3);
    Operator doubled = oracle & oracle;
    CHECK(doubled.slice_count() == 2);
}

TEST_CASE("junction rewriting happens on composition only when enabled") {
    {
        SimplifyScope raw_mode(false);
        CHECK_FALSE(simplify_on_compose());
        CHECK((hadamard(2) & hadamard(2)).slice_count() == 2);
        {
            SimplifyScope inner(true);
            CHECK((hadamard(2) & hadamard(2)).is_identity());
        }
        CHECK_FALSE(simplify_on_compose());
    }
    CHECK(simplify_on_compose());
}

TEST_CASE("rewriting reports its effect and is idempotent on the adder") {
    Operator adder;
    {
        SimplifyScope raw_mode(false);
        adder = build_three_adder(4);
    }
    CHECK(adder.slice_count() == 56);

    SimplifyStats stats;
    simplify(adder, &stats);
    CHECK(stats.slices_before == 56);
    CHECK(stats.slices_after == 28);
    CHECK(adder.slice_count() == 28);

    SimplifyStats again;
    simplify(adder, &again);
    CHECK(again.slices_before == 28);
    CHECK(again.slices_after == 28);
}

TEST_CASE("rewriting preserves the unitary on random circuits") {
    std::mt19937_64 rng(20260822);
    for (int trial = 0; trial < 150; ++trial) {
        const int lines = 2 + static_cast<int>(rng() % 4);  // 2..5
        Operator op = testing_support::random_operator(rng, lines, 24, true);
        const dense::Matrix before = dense::operator_matrix(op, lines);

        Operator reduced = op;
        simplify(reduced);
        CHECK(dense::max_difference(dense::operator_matrix(reduced, lines), before) < 1e-10);

        Operator twice = reduced;
        simplify(twice);
        CHECK(twice == reduced);
    }
}

TEST_CASE("a circuit followed by its reverse collapses to nothing") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 50; ++trial) {
        const int lines = 2 + static_cast<int>(rng() % 4);
        const Operator op = testing_support::random_operator(rng, lines, 16, true);
        CHECK((op & !op).is_identity());
    }
}
