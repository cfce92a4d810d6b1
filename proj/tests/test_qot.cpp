#include <catch2/catch_amalgamated.hpp>
#include <mcfplan/fiber.hpp>
#include <mcfplan/qot.hpp>

#include <cmath>
#include <limits>
#include <string>

using namespace mcfplan;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
FiberSpec load_repo_fiber(const std::string& name) {
    return load_fiber(std::string(MCFPLAN_REPO_DIR) + "/data/fibers/" + name + ".fiber");
}
} // namespace

TEST_CASE("links split into equal spans under the cap") {
    CHECK(segment_link(80.0) == std::vector<double>{80.0});
    CHECK(segment_link(81.0) == std::vector<double>(2, 40.5));
    CHECK(segment_link(447.0) == std::vector<double>(6, 74.5));
    CHECK(segment_link(160.0) == std::vector<double>(2, 80.0));
    CHECK(segment_link(30.0, 25.0) == std::vector<double>(2, 15.0));
    CHECK_THROWS_AS(segment_link(0.0), InvalidInput);
    CHECK_THROWS_AS(segment_link(-5.0), InvalidInput);
    CHECK_THROWS_AS(segment_link(10.0, 0.0), InvalidInput);
}

TEST_CASE("spans restore the launch power exactly") {
    const auto spans = make_spans(447.0, 0.2, 1e-3);
    REQUIRE(spans.size() == 6);
    for (const SpanState& s : spans) {
        CHECK_THAT(s.length_m, WithinRel(74500.0, 1e-12));
        CHECK_THAT(s.gain, WithinRel(std::pow(10.0, 0.2 * 74.5 / 10.0), 1e-12));
        CHECK_THAT(s.received_w * s.gain, WithinRel(s.launch_w, 1e-12));
    }
    CHECK(spans.front().span_index == 0);
    CHECK(spans.back().span_index == 5);
}

TEST_CASE("launch power and pre-tilt") {
    QotParams p;
    CHECK_THAT(launch_power_w(p, 193.4, 194.5125), WithinRel(1e-3, 1e-12));
    p.launch_dbm = 3.0;
    CHECK_THAT(launch_power_w(p, 193.4, 194.5125), WithinRel(dbm_to_watt(3.0), 1e-12));
    p.launch_dbm = 0.0;
    p.launch_tilt_db_per_thz = 0.5;
    // positive tilt raises power above the plan center
    CHECK(launch_power_w(p, 195.5125, 194.5125) > 1e-3);
    CHECK_THAT(launch_power_w(p, 195.5125, 194.5125), WithinRel(dbm_to_watt(0.5), 1e-12));
    CHECK(launch_power_w(p, 193.5125, 194.5125) < 1e-3);
}

TEST_CASE("amplifier noise against the frozen reference") {
    CHECK_THAT(ase_power(4.5, 193.4 * thz, 15.85, 64.0 * ghz),
               WithinRel(3.432566240e-07, 1e-9));
    // transparent span adds nothing
    CHECK(ase_power(4.5, 193.4 * thz, 1.0, 64.0 * ghz) == 0.0);
    CHECK_THROWS_AS(ase_power(4.5, 193.4 * thz, 0.99, 64.0 * ghz), InvalidInput);
}

TEST_CASE("nonlinear interference of one span against the frozen reference") {
    const FiberSpec mc04 = load_repo_fiber("mc04");
    const GnNliEstimator gn;
    CHECK_THAT(mc04.attenuation_db_km(191.7), WithinAbs(0.185563, 5e-7));
    const double p = gn.span_nli_w(mc04, 80.0 * km, 191.7, 1e-3, 64.0 * ghz, 20.1 * thz);
    CHECK_THAT(p, WithinRel(5.475538565e-07, 1e-9));
    // cubic in launch power
    const double p2 = gn.span_nli_w(mc04, 80.0 * km, 191.7, 2e-3, 64.0 * ghz, 20.1 * thz);
    CHECK_THAT(p2 / p, WithinRel(8.0, 1e-9));
}

TEST_CASE("crosstalk noise scales with the transmit power") {
    CHECK_THAT(icxt_noise_power(1e-4, 1e-3), WithinRel(1e-7, 1e-15));
    CHECK(icxt_noise_power(0.0, 1e-3) == 0.0);
    CHECK_THROWS_AS(icxt_noise_power(-1e-9, 1e-3), InvalidInput);
}

TEST_CASE("GSNR accumulation over identical spans") {
    const SpanNoise one{1e-3, 2e-7, 1e-7, 5e-8};
    const auto single = accumulate_gsnr({one}, 26.0, 0.0, 0.0);
    for (int n : {2, 4, 6}) {
        const auto many = accumulate_gsnr(std::vector<SpanNoise>(static_cast<std::size_t>(n), one),
                                          26.0, 0.0, 0.0);
        const double drop = 10.0 * std::log10(static_cast<double>(n));
        CHECK_THAT(linear_to_db(single.snr_ase) - linear_to_db(many.snr_ase),
                   WithinAbs(drop, 1e-12));
        CHECK_THAT(linear_to_db(single.snr_nli) - linear_to_db(many.snr_nli),
                   WithinAbs(drop, 1e-12));
        CHECK_THAT(linear_to_db(single.snr_icxt) - linear_to_db(many.snr_icxt),
                   WithinAbs(drop, 1e-12));
    }
}

TEST_CASE("component breakdown and penalties") {
    const SpanNoise s{1e-3, 2e-7, 1e-7, 0.0};
    const auto qb = accumulate_gsnr({s}, 26.0, 0.5, 1.0);
    CHECK_THAT(qb.snr_ase, WithinRel(1e-3 / 2e-7, 1e-12));
    CHECK_THAT(qb.snr_nli, WithinRel(1e-3 / 1e-7, 1e-12));
    CHECK(std::isinf(qb.snr_icxt));
    CHECK_THAT(qb.snr_trx, WithinRel(db_to_linear(26.0), 1e-12));
    CHECK(qb.penalty_filter_db == 0.5);
    CHECK(qb.margin_aging_db == 1.0);
    const double inv = 2e-4 + 1e-4 + db_to_linear(-26.0);
    CHECK_THAT(qb.gsnr_db, WithinAbs(10.0 * std::log10(1.0 / inv) - 1.5, 1e-12));
}

TEST_CASE("noise-free spans leave the transceiver limit") {
    const SpanNoise clean{1e-3, 0.0, 0.0, 0.0};
    const auto qb = accumulate_gsnr({clean}, 26.0, 0.5, 1.0);
    CHECK(std::isinf(qb.snr_ase));
    CHECK_THAT(qb.gsnr_db, WithinAbs(24.5, 1e-12));
}

TEST_CASE("accumulation input validation") {
    CHECK_THROWS_AS(accumulate_gsnr({}, 26.0, 0.0, 0.0), InvalidInput);
    const SpanNoise bad{0.0, 1e-7, 0.0, 0.0};
    CHECK_THROWS_AS(accumulate_gsnr({bad}, 26.0, 0.0, 0.0), InvalidInput);
    const SpanNoise clean{1e-3, 0.0, 0.0, 0.0};
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(accumulate_gsnr({clean}, inf, 0.0, 0.0), InvalidInput);
}
