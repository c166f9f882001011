#include <gtest/gtest.h>

#include <random>

#include "grassmann/paths.hpp"

using namespace grassmann;

namespace {

Subspace rows(const Field& F, std::initializer_list<std::initializer_list<unsigned>> r) {
    return Subspace::span(Mat::from_rows(F, 4, r));
}

// Every Q != P: canonical path agrees with the jump constants and is the
// unique strictly monotone path when the brute-force oracle is affordable.
void check_all_targets(const Grassmannian& g, const CompleteFlag& flag, bool oracle) {
    const Subspace& p = flag.point();
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Subspace& q = g[k];
        if (q == p) continue;
        const int i = injection_distance(p, q);
        const JumpConstants jc = jump_constants(q, flag);
        const Path path = canonical_path(q, flag);
        ASSERT_EQ(path.length(), static_cast<std::size_t>(i));
        ASSERT_TRUE(is_path(path.points));
        ASSERT_EQ(path.points.back(), q);
        ASSERT_TRUE(strictly_monotone(path.r, path.s));
        for (int t = 0; t < i; ++t) {
            EXPECT_EQ(path.r[t], jc.gamma[t] + 1);
            EXPECT_EQ(path.s[t], jc.delta[t]);
        }
        // Q_t cap Q grows by one dimension per step and stays nested.
        for (int t = 0; t <= i; ++t) {
            const Subspace x = intersect(path.points[t], q);
            EXPECT_EQ(static_cast<int>(x.dim()), g.l() - i + t);
            if (t < i) { EXPECT_TRUE(path.points[t + 1].contains(x)); }
        }
        if (!oracle || i > 3) continue;
        const auto all = enumerate_paths(g, q, flag);
        int monotone = 0;
        for (const auto& other : all) {
            if (!strictly_monotone(other.r, other.s)) continue;
            ++monotone;
            EXPECT_EQ(other.points, path.points);
        }
        EXPECT_EQ(monotone, 1);
    }
}

}  // namespace

TEST(Paths, StandardFlagShape) {
    const auto F = field_of_order(3);
    const Subspace p = Subspace::span(Mat::from_rows(*F, 5, {{1, 2, 0, 0, 1}, {0, 0, 1, 0, 2}}));
    const CompleteFlag flag = standard_flag(p);
    EXPECT_EQ(flag.l(), 2);
    EXPECT_EQ(flag.m(), 5);
    EXPECT_EQ(flag.point(), p);
    EXPECT_EQ(flag.u(1), Subspace::span(Mat::from_rows(*F, 5, {{1, 2, 0, 0, 1}})));
    // Non-pivot columns 2, 4, 5 are added in that order.
    Mat w3 = p.basis();
    w3.append_row(std::vector<Fe>{Fe{0}, Fe{1}, Fe{0}, Fe{0}, Fe{0}});
    EXPECT_EQ(flag.w(1), Subspace::span(w3));
    w3.append_row(std::vector<Fe>{Fe{0}, Fe{0}, Fe{0}, Fe{1}, Fe{0}});
    EXPECT_EQ(flag.w(2), Subspace::span(w3));
    EXPECT_EQ(flag.w(3).dim(), 5u);
}

TEST(Paths, OppositePointInG24) {
    const auto F = field_of_order(2);
    const Subspace p = Subspace::coordinate(*F, 4, {1, 2});
    const Subspace q = Subspace::coordinate(*F, 4, {3, 4});
    const CompleteFlag flag = standard_flag(p);
    const JumpConstants jc = jump_constants(q, flag);
    EXPECT_EQ(jc.gamma, (std::vector<int>{1, 0}));
    EXPECT_EQ(jc.delta, (std::vector<int>{1, 2}));
    const Path path = canonical_path(q, flag);
    ASSERT_EQ(path.points.size(), 3u);
    EXPECT_EQ(path.points[1], Subspace::coordinate(*F, 4, {1, 3}));
    EXPECT_EQ(path.r, (std::vector<int>{2, 1}));
    EXPECT_EQ(path.s, (std::vector<int>{1, 2}));
    // Going through <e1, e4> instead breaks monotonicity of s.
    const std::vector<Subspace> other{p, Subspace::coordinate(*F, 4, {1, 4}), q};
    const auto [r, s] = path_tuples(other, flag);
    EXPECT_EQ(r, (std::vector<int>{2, 1}));
    EXPECT_EQ(s, (std::vector<int>{2, 2}));
    EXPECT_FALSE(strictly_monotone(r, s));
}

TEST(Paths, TuplesDependOnTheFlag) {
    const auto F = field_of_order(2);
    const Subspace p = Subspace::coordinate(*F, 4, {1, 2});
    const Subspace q = rows(*F, {{1, 1, 0, 0}, {0, 0, 0, 1}});
    const std::vector<Subspace> step{p, q};
    const auto std_t = path_tuples(step, standard_flag(p));
    EXPECT_EQ(std_t.first, (std::vector<int>{1}));
    EXPECT_EQ(std_t.second, (std::vector<int>{2}));
    const CompleteFlag alt = flag_from_bases(Mat::from_rows(*F, 4, {{1, 1, 0, 0}, {1, 0, 0, 0}}),
                                             Mat::from_rows(*F, 4, {{0, 0, 0, 1}, {0, 0, 1, 0}}));
    const auto alt_t = path_tuples(step, alt);
    EXPECT_EQ(alt_t.first, (std::vector<int>{2}));
    EXPECT_EQ(alt_t.second, (std::vector<int>{1}));
}

TEST(Paths, ExhaustiveSmallGrassmannians) {
    for (auto [q, l, m] : std::vector<std::tuple<unsigned, int, int>>{{2, 2, 4}, {3, 2, 4}, {2, 2, 5}, {2, 1, 4}, {4, 2, 4}}) {
        const Grassmannian g(field_of_order(q), l, m);
        for (std::size_t k : {std::size_t{0}, g.size() / 2, g.size() - 1}) check_all_targets(g, standard_flag(g[k]), true);
    }
}

TEST(Paths, RandomFlags) {
    std::mt19937_64 rng(31);
    for (auto [q, l, m] : std::vector<std::tuple<unsigned, int, int>>{{2, 2, 4}, {3, 2, 4}, {2, 2, 5}}) {
        const Grassmannian g(field_of_order(q), l, m);
        for (int t = 0; t < 5; ++t) {
            const Subspace& p = g[rng() % g.size()];
            const CompleteFlag flag = random_flag(p, rng);
            EXPECT_EQ(flag.point(), p);
            check_all_targets(g, flag, true);
        }
    }
}

TEST(Paths, DistanceThreeSampled) {
    const Grassmannian g(field_of_order(2), 3, 6);
    std::mt19937_64 rng(32);
    const CompleteFlag flag = random_flag(g[17], rng);
    check_all_targets(g, flag, false);
    // Oracle on a handful of distance-3 targets.
    int checked = 0;
    for (std::size_t k = 0; k < g.size() && checked < 6; k += 37) {
        if (injection_distance(flag.point(), g[k]) != 3) continue;
        const Path path = canonical_path(g[k], flag);
        const auto all = enumerate_paths(g, g[k], flag);
        EXPECT_EQ(std::count_if(all.begin(), all.end(), [](const Path& x) { return strictly_monotone(x.r, x.s); }), 1);
        for (const auto& x : all)
            if (strictly_monotone(x.r, x.s)) { EXPECT_EQ(x.points, path.points); }
        ++checked;
    }
    EXPECT_GT(checked, 0);
}

TEST(Paths, Errors) {
    const auto F = field_of_order(2);
    const Subspace p = Subspace::coordinate(*F, 4, {1, 2});
    const CompleteFlag flag = standard_flag(p);
    EXPECT_THROW(jump_constants(p, flag), std::invalid_argument);
    EXPECT_THROW(canonical_path(p, flag), std::invalid_argument);
    const Subspace q = Subspace::coordinate(*F, 4, {3, 4});
    // Skips a step.
    const std::vector<Subspace> jump{p, q};
    EXPECT_FALSE(is_path(jump));
    EXPECT_THROW(path_tuples(jump, flag), std::invalid_argument);
    const std::vector<Subspace> wrong_start{Subspace::coordinate(*F, 4, {1, 3}), q};
    EXPECT_THROW(path_tuples(wrong_start, flag), std::invalid_argument);
    // Flags that do not chain.
    EXPECT_THROW(flag_from_bases(Mat::from_rows(*F, 4, {{1, 0, 0, 0}, {1, 0, 0, 0}}), Mat::from_rows(*F, 4, {{0, 0, 1, 0}})),
                 std::invalid_argument);
    EXPECT_THROW(flag_from_bases(p.basis(), Mat::from_rows(*F, 4, {{0, 0, 1, 0}})), std::invalid_argument);
    EXPECT_THROW(closure_flag(flag, 3), std::invalid_argument);
    // The brute-force oracle refuses large Grassmannians.
    const Grassmannian big(F, 2, 9);
    EXPECT_THROW(enumerate_paths(big, big[1], standard_flag(big[0])), ResourceLimit);
}
