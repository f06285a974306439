#include <doctest.h>

#include <cmath>
#include <random>

#include "core/agreement.hpp"
#include "core/errors.hpp"
#include "oracles.hpp"

using namespace reprometry;

namespace {

// Builds a grid from label columns: one inner vector per rater.
LabelGrid grid_of(const std::vector<std::vector<std::optional<std::string>>>& columns) {
    LabelGrid g;
    const std::size_t units = columns.front().size();
    for (std::size_t r = 0; r < columns.size(); ++r)
        g.raters.push_back("e" + std::to_string(r));
    for (std::size_t u = 0; u < units; ++u) {
        g.units.push_back({"sys", "i" + std::to_string(u), std::nullopt});
        std::vector<std::optional<std::string>> row;
        for (const auto& col : columns) {
            row.push_back(col[u]);
            if (col[u] && std::find(g.label_set.begin(), g.label_set.end(), *col[u]) ==
                              g.label_set.end())
                g.label_set.push_back(*col[u]);
        }
        g.labels.push_back(std::move(row));
    }
    return g;
}

std::vector<std::optional<std::string>> col(std::initializer_list<const char*> labels) {
    std::vector<std::optional<std::string>> out;
    for (const char* l : labels) out.emplace_back(l);
    return out;
}

}  // namespace

TEST_CASE("Cohen's kappa worked values") {
    CHECK(cohen_kappa(grid_of({col({"a", "b", "a", "c"}), col({"a", "b", "a", "c"})})) ==
          doctest::Approx(1.0));
    CHECK(cohen_kappa(grid_of({col({"y", "y", "n", "n"}), col({"y", "n", "n", "n"})})) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cohen_kappa(grid_of({col({"y", "n", "y", "n"}), col({"n", "y", "n", "y"})})) ==
          doctest::Approx(-1.0).epsilon(1e-12));

    LabelGrid absent = grid_of({col({"y", "n"}), col({"y", "n"})});
    absent.labels[1][1].reset();
    CHECK_THROWS_WITH_AS(cohen_kappa(absent), "Cohen's kappa requires complete alignment",
                         DomainError);

    CHECK_THROWS_AS(cohen_kappa(grid_of({col({"y", "y"}), col({"y", "y"})})), DomainError);
    CHECK_THROWS_AS(cohen_kappa(grid_of({col({"a"}), col({"a"}), col({"a"})})), DomainError);
}

TEST_CASE("Fleiss's kappa worked values") {
    CHECK(fleiss_kappa(grid_of({col({"a", "b"}), col({"a", "b"}), col({"a", "b"})})) ==
          doctest::Approx(1.0));

    // unit1 (a,a,b), unit2 (b,b,b): P-bar = 2/3, expected agreement 5/9,
    // kappa = (2/3 - 5/9)/(1 - 5/9) = 1/4. Confirmed by the independent
    // count-table oracle.
    const LabelGrid g = grid_of({col({"a", "b"}), col({"a", "b"}), col({"b", "b"})});
    CHECK(fleiss_kappa(g) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(oracles::fleiss_kappa({{"a", "a", "b"}, {"b", "b", "b"}}) ==
          doctest::Approx(0.25).epsilon(1e-12));

    // ragged coverage is redirected to alpha
    LabelGrid ragged = grid_of({col({"a", "b"}), col({"a", "b"}), col({"b", "b"})});
    ragged.labels[0][2].reset();
    CHECK_THROWS_WITH_AS(fleiss_kappa(ragged),
                         "Fleiss's kappa requires every unit labelled by the same number "
                         "of raters; use Krippendorff's alpha for ragged coverage",
                         DomainError);
}

TEST_CASE("Fleiss and Cohen agree in sign on symmetric two-rater data") {
    const LabelGrid pos = grid_of({col({"y", "y", "n", "n"}), col({"y", "y", "n", "n"})});
    CHECK(cohen_kappa(pos) > 0.0);
    CHECK(fleiss_kappa(pos) > 0.0);
    const LabelGrid neg = grid_of({col({"y", "n", "y", "n"}), col({"n", "y", "n", "y"})});
    CHECK(cohen_kappa(neg) < 0.0);
    CHECK(fleiss_kappa(neg) < 0.0);
}

TEST_CASE("Krippendorff's alpha worked values") {
    CHECK(kripp_alpha(grid_of({col({"a", "b", "c"}), col({"a", "b", "c"})})) ==
          doctest::Approx(1.0));

    // A single unit labelled (a, b): coincidence matrix o_ab = o_ba = 1,
    // D_o = D_e = 1, so alpha = 0. Confirmed by the oracle below.
    const LabelGrid single = grid_of({col({"a"}), col({"b"})});
    CHECK(kripp_alpha(single) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(oracles::kripp_alpha({{std::optional<std::string>("a"),
                                 std::optional<std::string>("b")}}) ==
          doctest::Approx(0.0).epsilon(1e-12));

    // one absent cell, remaining columns identical
    LabelGrid gap = grid_of({col({"a", "b", "a"}), col({"a", "b", "a"}), col({"a", "b", "a"})});
    gap.labels[2][1].reset();
    CHECK(kripp_alpha(gap) == doctest::Approx(1.0));

    // units with fewer than 2 present labels are excluded entirely
    LabelGrid sparse = grid_of({col({"a", "b"}), col({"a", "b"})});
    sparse.labels[1][0].reset();
    sparse.labels[1][1].reset();
    CHECK(kripp_alpha(sparse) == doctest::Approx(1.0));

    LabelGrid unpairable = grid_of({col({"a", "b"}), col({"a", "b"})});
    unpairable.labels[0][1].reset();
    unpairable.labels[1][0].reset();
    CHECK_THROWS_AS(kripp_alpha(unpairable), DomainError);
}

TEST_CASE("study-level aggregation of agreement values") {
    CHECK(aggregate_type3(std::vector<double>{0.8, 0.6}) == doctest::Approx(0.7));
    CHECK(aggregate_type3(std::vector<double>{1.0}) == doctest::Approx(1.0));
    CHECK(aggregate_type3(std::vector<double>{0.5, -0.5}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(aggregate_type3(std::vector<double>{}), DomainError);
}

TEST_CASE("all three measures are 1 on identical columns") {
    const auto c = col({"a", "b", "c", "a", "b"});
    CHECK(cohen_kappa(grid_of({c, c})) == doctest::Approx(1.0));
    CHECK(fleiss_kappa(grid_of({c, c, c})) == doctest::Approx(1.0));
    CHECK(kripp_alpha(grid_of({c, c, c})) == doctest::Approx(1.0));
}

TEST_CASE("label-renaming invariance") {
    auto rename = [](const std::vector<std::optional<std::string>>& in) {
        std::vector<std::optional<std::string>> out;
        for (const auto& cell : in) {
            if (!cell)
                out.push_back(std::nullopt);
            else
                out.emplace_back("tag-" + *cell);  // bijective renaming
        }
        return out;
    };
    const auto a = col({"x", "y", "x", "z", "y", "x"});
    const auto b = col({"x", "y", "y", "z", "x", "x"});
    const auto c = col({"y", "y", "x", "z", "y", "z"});
    CHECK(cohen_kappa(grid_of({rename(a), rename(b)})) ==
          doctest::Approx(cohen_kappa(grid_of({a, b}))).epsilon(1e-12));
    CHECK(fleiss_kappa(grid_of({rename(a), rename(b), rename(c)})) ==
          doctest::Approx(fleiss_kappa(grid_of({a, b, c}))).epsilon(1e-12));
    CHECK(kripp_alpha(grid_of({rename(a), rename(b), rename(c)})) ==
          doctest::Approx(kripp_alpha(grid_of({a, b, c}))).epsilon(1e-12));
}

TEST_CASE("unit-permutation invariance") {
    const auto a = col({"x", "y", "x", "z"});
    const auto b = col({"x", "y", "y", "z"});
    const auto a_perm = col({"z", "x", "y", "x"});
    const auto b_perm = col({"z", "y", "y", "x"});
    CHECK(cohen_kappa(grid_of({a_perm, b_perm})) ==
          doctest::Approx(cohen_kappa(grid_of({a, b}))).epsilon(1e-12));
    CHECK(kripp_alpha(grid_of({a_perm, b_perm})) ==
          doctest::Approx(kripp_alpha(grid_of({a, b}))).epsilon(1e-12));
}

TEST_CASE("alpha matches the coincidence-matrix oracle on random grids") {
    std::mt19937 rng(8675309);
    std::uniform_int_distribution<int> units(1, 6), raters(2, 4), labels(1, 3);
    std::uniform_real_distribution<double> absence(0.0, 1.0);
    const char* names[] = {"a", "b", "c"};
    int compared = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int u = units(rng), r = raters(rng);
        std::vector<std::vector<std::optional<std::string>>> columns(
            r, std::vector<std::optional<std::string>>(u));
        for (int i = 0; i < u; ++i)
            for (int j = 0; j < r; ++j)
                if (absence(rng) >= 0.10) columns[j][i] = names[labels(rng) - 1];
        // oracle wants unit-major layout
        std::vector<std::vector<std::optional<std::string>>> by_unit(
            u, std::vector<std::optional<std::string>>(r));
        for (int i = 0; i < u; ++i)
            for (int j = 0; j < r; ++j) by_unit[i][j] = columns[j][i];
        const double expected = oracles::kripp_alpha(by_unit);
        try {
            const double actual = kripp_alpha(grid_of(columns));
            REQUIRE_FALSE(std::isnan(expected));
            CHECK(actual == doctest::Approx(expected).epsilon(1e-9));
            CHECK(actual >= -1.0 - 1e-9);
            CHECK(actual <= 1.0 + 1e-9);
            ++compared;
        } catch (const DomainError&) {
            CHECK(std::isnan(expected));
        }
    }
    CHECK(compared > 700);
}

TEST_CASE("two-rater alpha and kappa both live in [-1, 1] and hit 1 together") {
    const auto a = col({"x", "y", "x", "y", "z"});
    const auto b = col({"x", "y", "y", "y", "z"});
    const double kappa = cohen_kappa(grid_of({a, b}));
    const double alpha = kripp_alpha(grid_of({a, b}));
    CHECK(std::fabs(kappa) <= 1.0);
    CHECK(std::fabs(alpha) <= 1.0);
    CHECK(cohen_kappa(grid_of({a, a})) == doctest::Approx(1.0));
    CHECK(kripp_alpha(grid_of({a, a})) == doctest::Approx(1.0));
}

TEST_CASE("system filtering keeps the right units") {
    LabelGrid g = grid_of({col({"a", "b", "a"}), col({"a", "b", "b"})});
    g.units[0].system = "alpha";
    g.units[1].system = "alpha";
    g.units[2].system = "beta";
    const LabelGrid alpha_only = g.for_system("alpha");
    CHECK(alpha_only.units.size() == 2);
    CHECK(cohen_kappa(alpha_only) == doctest::Approx(1.0));
}
