#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mscz/metasurface.hpp"
#include "mscz/serialization.hpp"

#include <cmath>

using namespace mscz;

namespace {

const double kT = 1.0 / std::sqrt(3.0);
const double kR = std::sqrt(2.0) / std::sqrt(3.0);

// Expected six-mode matrix: blocks (R(+2),L(+1)), (R(+1),L(0)), (R(0),L(-1)).
ComplexMatrix expected_six_mode() {
    ComplexMatrix u(6, 6);
    for (std::size_t b = 0; b < 3; ++b) {
        u(2 * b, 2 * b) = kT;
        u(2 * b + 1, 2 * b + 1) = kT;
        u(2 * b, 2 * b + 1) = cdouble(0.0, kR);
        u(2 * b + 1, 2 * b) = cdouble(0.0, kR);
    }
    return u;
}

ComplexMatrix expected_eight_mode() {
    ComplexMatrix u(8, 8);
    for (std::size_t b = 0; b < 4; ++b) {
        u(2 * b, 2 * b) = kT;
        u(2 * b + 1, 2 * b + 1) = kT;
        u(2 * b, 2 * b + 1) = cdouble(0.0, kR);
        u(2 * b + 1, 2 * b) = cdouble(0.0, kR);
    }
    return u;
}

}  // namespace

TEST_CASE("parallel_bs_basis: mode ordering over [-1,+2]") {
    const ModeBasis basis = parallel_bs_basis(-1, 2);
    CHECK(basis.labels() == std::vector<std::string>{"R(+2)", "L(+1)", "R(+1)", "L(0)", "R(0)",
                                                     "L(-1)"});
    CHECK(basis.index_of({0, Pol::L}) == 3);
    CHECK_THROWS_AS(basis.index_of({5, Pol::L}), std::invalid_argument);
    CHECK_THROWS_AS(parallel_bs_basis(2, 2), std::invalid_argument);
}

TEST_CASE("build_parallel_bs: six-mode matrix entry for entry") {
    const ModeUnitary u = build_parallel_bs(MetasurfaceConfig::ideal(-1, 2));
    REQUIRE(u.dim() == 6);
    CHECK(max_abs_diff(u.matrix(), expected_six_mode()) < 1e-15);
    CHECK(u.lossless());
}

TEST_CASE("build_parallel_bs: eight-mode matrix of the cascade") {
    const ModeUnitary u = build_parallel_bs(MetasurfaceConfig::ideal(-2, 2));
    REQUIRE(u.dim() == 8);
    CHECK(max_abs_diff(u.matrix(), expected_eight_mode()) < 1e-15);
    CHECK(u.basis().labels() == std::vector<std::string>{"R(+2)", "L(+1)", "R(+1)", "L(0)", "R(0)",
                                                         "L(-1)", "R(-1)", "L(-2)"});
}

TEST_CASE("six-mode matrix is the restriction of the eight-mode matrix") {
    const ModeUnitary small = build_parallel_bs(MetasurfaceConfig::ideal(-1, 2));
    const ModeUnitary large = build_parallel_bs(MetasurfaceConfig::ideal(-2, 2));
    for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t c = 0; c < 6; ++c) {
            const int lr = large.basis().index_of(small.basis().mode(r));
            const int lc = large.basis().index_of(small.basis().mode(c));
            CHECK(small.matrix()(r, c) ==
                  large.matrix()(static_cast<std::size_t>(lr), static_cast<std::size_t>(lc)));
        }
}

TEST_CASE("build_parallel_bs: ratio 1 means no conversion") {
    MetasurfaceConfig cfg = MetasurfaceConfig::ideal(-1, 2);
    cfg.default_ratio = 1.0;
    cfg.global_efficiency = 0.81;
    const ModeUnitary u = build_parallel_bs(cfg);
    CHECK(max_abs_diff(u.matrix(), ComplexMatrix::identity(6).scaled(0.9)) < 1e-15);
    CHECK_FALSE(u.lossless());
}

TEST_CASE("build_parallel_bs: lossless constructions are unitary with local blocks") {
    for (auto [lo, hi] : {std::pair{-1, 2}, std::pair{-2, 2}, std::pair{-2, 3}, std::pair{-4, 2}}) {
        const ModeUnitary u = build_parallel_bs(MetasurfaceConfig::ideal(lo, hi));
        CHECK(u.lossless());
        CHECK(u.matrix().unitarity_defect() < 1e-12);

        // Zero coupling outside the R(j+1) <-> L(j) pairing.
        const auto& basis = u.basis();
        for (std::size_t r = 0; r < u.dim(); ++r)
            for (std::size_t c = 0; c < u.dim(); ++c) {
                if (r / 2 == c / 2) continue;  // same block
                CHECK(u.matrix()(r, c) == cdouble(0.0, 0.0));
            }
        // Pairing sanity: the two modes of block b are R(j+1), L(j).
        for (std::size_t b = 0; b < u.dim() / 2; ++b) {
            CHECK(basis.mode(2 * b).pol == Pol::R);
            CHECK(basis.mode(2 * b + 1).pol == Pol::L);
            CHECK(basis.mode(2 * b).order == basis.mode(2 * b + 1).order + 1);
        }
    }
}

TEST_CASE("build_parallel_bs: identical blocks without overrides") {
    const ModeUnitary u = build_parallel_bs(MetasurfaceConfig::ideal(-3, 3));
    for (std::size_t b = 1; b < u.dim() / 2; ++b) {
        CHECK(u.matrix()(2 * b, 2 * b) == u.matrix()(0, 0));
        CHECK(u.matrix()(2 * b, 2 * b + 1) == u.matrix()(0, 1));
    }
}

TEST_CASE("build_parallel_bs: per-splitter override changes only its block") {
    MetasurfaceConfig cfg = MetasurfaceConfig::ideal(-1, 2);
    cfg.overrides.push_back(SplitterSpec::from_ratio(0, 0.4));
    const ModeUnitary u = build_parallel_bs(cfg);
    CHECK(u.matrix()(2, 2).real() == doctest::Approx(std::sqrt(0.4)).epsilon(1e-14));
    CHECK(u.matrix()(2, 3).imag() == doctest::Approx(std::sqrt(0.6)).epsilon(1e-14));
    CHECK(u.matrix()(0, 0).real() == doctest::Approx(kT).epsilon(1e-14));
    CHECK(u.lossless());
}

TEST_CASE("MetasurfaceConfig: validation rejects bad values") {
    MetasurfaceConfig cfg = MetasurfaceConfig::ideal(-1, 2);

    cfg.overrides = {SplitterSpec::from_ratio(2, 0.5)};  // pairs run over [-1, +1]
    CHECK_THROWS_AS(build_parallel_bs(cfg), std::invalid_argument);

    cfg.overrides = {SplitterSpec::from_ratio(0, 0.5), SplitterSpec::from_ratio(0, 0.4)};
    CHECK_THROWS_AS(build_parallel_bs(cfg), std::invalid_argument);

    cfg.overrides.clear();
    cfg.default_ratio = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.default_ratio = 1.0 / 3.0;
    cfg.global_efficiency = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("SplitterSpec: invariants") {
    CHECK_THROWS_AS(SplitterSpec::from_ratio(0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SplitterSpec::from_ratio(0, 1.2), std::invalid_argument);
    SplitterSpec bad;
    bad.t = 0.9;
    bad.r = 0.9;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    const SplitterSpec ok = SplitterSpec::from_ratio(0, 1.0 / 3.0);
    CHECK(ok.ratio() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("perturb_ratio: analytic values and domain errors") {
    const MetasurfaceConfig base = MetasurfaceConfig::ideal(-1, 2);

    CHECK(perturb_ratio(base, 0.0) == base);

    const MetasurfaceConfig nudged = perturb_ratio(base, 0.05);
    CHECK(nudged.default_ratio == doctest::Approx(0.35).epsilon(1e-14));
    const ModeUnitary u = build_parallel_bs(nudged);
    CHECK(u.matrix()(0, 0).real() == doctest::Approx(std::sqrt(0.35)).epsilon(1e-14));
    CHECK(u.matrix()(0, 1).imag() == doctest::Approx(std::sqrt(0.65)).epsilon(1e-14));
    CHECK(u.lossless());  // unitarity is never sacrificed to model ratio error

    CHECK_THROWS_AS(perturb_ratio(base, -3.0), std::invalid_argument);
    CHECK_THROWS_AS(perturb_ratio(base, 2.0), std::invalid_argument);

    MetasurfaceConfig with_override = base;
    with_override.overrides.push_back(SplitterSpec::from_ratio(1, 0.4));
    const MetasurfaceConfig all_nudged = perturb_ratio(with_override, 0.1);
    CHECK(all_nudged.overrides[0].ratio() == doctest::Approx(0.44).epsilon(1e-12));
}

TEST_CASE("apply_conversion_deficit: loss shows up only in the conversion path") {
    const MetasurfaceConfig base = MetasurfaceConfig::ideal(-1, 2);

    const MetasurfaceConfig same = apply_conversion_deficit(base, 1.0);
    CHECK(same == base);
    CHECK(build_parallel_bs(same).lossless());

    const MetasurfaceConfig lossy = apply_conversion_deficit(base, 0.9);
    const ModeUnitary u = build_parallel_bs(lossy);
    CHECK_FALSE(u.lossless());
    CHECK(std::abs(u.matrix()(0, 1)) == doctest::Approx(kR * std::sqrt(0.9)).epsilon(1e-14));
    CHECK(std::abs(u.matrix()(0, 0)) == doctest::Approx(kT).epsilon(1e-14));
    CHECK(u.matrix().max_singular_value() <= 1.0 + 1e-12);

    const ModeUnitary off = build_parallel_bs(apply_conversion_deficit(base, 0.0));
    for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t c = 0; c < 6; ++c)
            if (r != c) CHECK(off.matrix()(r, c) == cdouble(0.0, 0.0));
    CHECK(std::abs(off.matrix()(0, 0)) == doctest::Approx(kT).epsilon(1e-14));

    CHECK_THROWS_AS(apply_conversion_deficit(base, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(apply_conversion_deficit(base, -0.1), std::invalid_argument);
}

TEST_CASE("ModeUnitary: rejects matrices that are not subunitary") {
    const ModeBasis basis = parallel_bs_basis(-1, 0);
    CHECK_THROWS_AS(ModeUnitary(basis, ComplexMatrix::identity(2).scaled(1.1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(ModeUnitary(basis, ComplexMatrix::identity(3)), std::invalid_argument);
    const ModeUnitary ok(basis, ComplexMatrix::identity(2).scaled(0.5));
    CHECK_FALSE(ok.lossless());
}

TEST_CASE("config JSON: round trip and validation") {
    MetasurfaceConfig cfg = MetasurfaceConfig::ideal(-2, 2);
    cfg.default_ratio = 0.3;
    cfg.global_efficiency = 0.7;
    cfg.conversion_efficiency = 0.95;
    cfg.overrides.push_back(SplitterSpec::from_ratio(0, 0.4, 0.6));

    const ordered_json j = config_to_json(cfg);
    const MetasurfaceConfig back = config_from_json(j, MetasurfaceConfig::ideal(-1, 2));
    CHECK(back.order_min == -2);
    CHECK(back.order_max == 2);
    CHECK(back.default_ratio == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(back.global_efficiency == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(back.conversion_efficiency == doctest::Approx(0.95).epsilon(1e-12));
    REQUIRE(back.overrides.size() == 1);
    CHECK(back.overrides[0].pair_order == 0);
    CHECK(back.overrides[0].ratio() == doctest::Approx(0.4).epsilon(1e-12));

    // Missing keys fall back to the defaults argument.
    const MetasurfaceConfig partial =
        config_from_json(ordered_json::parse(R"({"ratio": 0.35})"), MetasurfaceConfig::ideal(-1, 2));
    CHECK(partial.order_min == -1);
    CHECK(partial.default_ratio == doctest::Approx(0.35).epsilon(1e-12));

    CHECK_THROWS_AS(config_from_json(ordered_json::parse(R"({"ratios": 0.3})"),
                                     MetasurfaceConfig::ideal(-1, 2)),
                    ConfigError);
    CHECK_THROWS_AS(config_from_json(ordered_json::parse(R"({"ratio": 2.0})"),
                                     MetasurfaceConfig::ideal(-1, 2)),
                    ConfigError);
    CHECK_THROWS_AS(config_from_json(ordered_json::parse(R"([1,2,3])"),
                                     MetasurfaceConfig::ideal(-1, 2)),
                    ConfigError);
}

TEST_CASE("uniform efficiency scales the whole matrix") {
    MetasurfaceConfig cfg = MetasurfaceConfig::ideal(-1, 2);
    cfg.global_efficiency = 0.5;
    const ModeUnitary u = build_parallel_bs(cfg);
    const ModeUnitary ideal = build_parallel_bs(MetasurfaceConfig::ideal(-1, 2));
    CHECK(max_abs_diff(u.matrix(), ideal.matrix().scaled(std::sqrt(0.5))) < 1e-15);
    CHECK(u.matrix().max_singular_value() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}
