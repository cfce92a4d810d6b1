#include <catch2/catch_amalgamated.hpp>
#include <mcfplan/gmi.hpp>

#include <cmath>
#include <limits>

using namespace mcfplan;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double chi[] = {0.5, 1.0, 3.41, 5.0, 10.0, 21.0};
constexpr double published_icxt[] = {-10.58, -13.59, -18.93, -20.58, -23.59, -26.82};
} // namespace

TEST_CASE("crosstalk thresholds reproduce the published table") {
    for (int i = 0; i < 6; ++i)
        CHECK_THAT(icxt_threshold(chi[i], 1.0, 6.7280), WithinAbs(published_icxt[i], 0.01));
}

TEST_CASE("threshold moves with the allowed penalty and the required SNR") {
    // a larger allowed penalty tolerates more crosstalk
    CHECK(icxt_threshold(21.0, 2.0, 6.7280) > icxt_threshold(21.0, 1.0, 6.7280));
    // a higher-SNR format tolerates less
    CHECK(icxt_threshold(21.0, 1.0, 10.0) < icxt_threshold(21.0, 1.0, 6.7280));
    CHECK_THROWS_AS(icxt_threshold(0.0, 1.0, 6.7280), InvalidInput);
    CHECK_THROWS_AS(icxt_threshold(21.0, 0.0, 6.7280), InvalidInput);
}

TEST_CASE("net bit rates come out exact") {
    const double expect[] = {100.0, 200.0, 300.0, 400.0, 500.0, 600.0};
    for (int i = 0; i < 6; ++i)
        CHECK(net_bitrate_gbps(64.0, 2 * (i + 1)) == expect[i]);
    const auto table = default_gmi_table();
    REQUIRE(table.size() == 6);
    for (int i = 0; i < 6; ++i) {
        CHECK(table[static_cast<std::size_t>(i)].m == i + 1);
        CHECK(table[static_cast<std::size_t>(i)].gmi_bits == 2 * (i + 1));
        CHECK(table[static_cast<std::size_t>(i)].net_bitrate_gbps == expect[i]);
    }
}

TEST_CASE("default table carries the published thresholds") {
    const auto table = default_gmi_table();
    const double gsnr_th[] = {3.7177, 6.7280, 12.0555, 13.7177, 16.7280, 19.9502};
    for (int i = 0; i < 6; ++i) {
        CHECK(table[static_cast<std::size_t>(i)].gsnr_threshold_db == gsnr_th[i]);
        CHECK(table[static_cast<std::size_t>(i)].icxt_threshold_db == published_icxt[i]);
        CHECK(table[static_cast<std::size_t>(i)].chi == chi[i]);
    }
    CHECK_NOTHROW(validate_gmi_table(table));
}

TEST_CASE("table validation catches broken tables") {
    auto table = default_gmi_table();
    table[2].m = 5;
    CHECK_THROWS_AS(validate_gmi_table(table), InvalidInput);

    table = default_gmi_table();
    table[3].gsnr_threshold_db = 1.0;   // not monotone
    CHECK_THROWS_AS(validate_gmi_table(table), InvalidInput);

    table = default_gmi_table();
    table[3].icxt_threshold_db = -5.0;  // tolerances must tighten with level
    CHECK_THROWS_AS(validate_gmi_table(table), InvalidInput);

    CHECK_THROWS_AS(validate_gmi_table({}), InvalidInput);
}

TEST_CASE("level selection walks down from the top") {
    const auto table = default_gmi_table();
    const double neg_inf = -std::numeric_limits<double>::infinity();

    auto m_of = [&](double gsnr, double mu, bool gate = true) {
        const auto lvl = select_gmi(gsnr, mu, table, gate);
        return lvl ? lvl->m : 0;
    };

    CHECK(m_of(25.0, -30.0) == 6);
    CHECK(m_of(25.0, -25.0) == 5);    // fails the -26.82 gate, passes -23.59
    CHECK(m_of(25.0, -19.0) == 3);
    CHECK(m_of(25.0, -10.0) == 0);    // above every gate
    CHECK(m_of(13.0, -40.0) == 3);    // limited by GSNR instead
    CHECK(m_of(6.9, -40.0) == 2);
    CHECK(m_of(6.7, -40.0) == 1);
    CHECK(m_of(3.0, -40.0) == 0);
    CHECK(m_of(25.0, neg_inf) == 6);  // no crosstalk passes everything

    // gate off: crosstalk no longer caps the level
    CHECK(m_of(25.0, -10.0, false) == 6);
    CHECK(m_of(13.0, -10.0, false) == 3);
}

TEST_CASE("selection at an exact threshold includes the level") {
    const auto table = default_gmi_table();
    const auto lvl = select_gmi(19.9502, -30.0, table);
    REQUIRE(lvl.has_value());
    CHECK(lvl->m == 6);
}
