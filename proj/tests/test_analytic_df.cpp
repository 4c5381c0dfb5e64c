#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hyfso/model/analytic_df.hpp"
#include "hyfso/model/ber_quadrature.hpp"
#include "hyfso/model/system_config.hpp"

using namespace hyfso;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

SystemConfig df_config(double snr_db, int n, const TurbulenceParams& t) {
    SystemConfig cfg;
    cfg.scheme = Scheme::DecodeForward;
    cfg.n_users = n;
    cfg.mean_snr_rf = db_to_linear(snr_db);
    cfg.mean_snr_fso = db_to_linear(snr_db);
    cfg.turbulence = t;
    cfg.gamma_th = db_to_linear(10.0);
    return cfg;
}

const TurbulenceParams kModerate(4.0, 1.9, 10.45);
const TurbulenceParams kStrong(4.2, 1.4, 2.45);

} // namespace

TEST_CASE("regenerative outage spot values") {
    CHECK(rel_err(pout_df(df_config(20, 2, kModerate), db_to_linear(10.0)),
                  0.029218522615683332) < 1e-10);
    CHECK(rel_err(pout_df(df_config(20, 2, kStrong), db_to_linear(10.0)),
                  0.037937707425483151) < 1e-10);
    CHECK(rel_err(pout_df(df_config(10, 1, kModerate), db_to_linear(10.0)),
                  0.78181239397162439) < 1e-10);
    CHECK(rel_err(pout_df(df_config(10, 4, kModerate), db_to_linear(10.0)),
                  0.50159897876009998) < 1e-10);
}

TEST_CASE("regenerative outage writings agree") {
    for (int n : {1, 2, 4})
        for (double db : {0.0, 10.0, 20.0, 30.0})
            for (const auto* t : {&kModerate, &kStrong}) {
                const SystemConfig cfg = df_config(db, n, *t);
                const double compact = pout_df(cfg, cfg.gamma_th, Form::Compact);
                const double expanded = pout_df(cfg, cfg.gamma_th, Form::Expanded);
                CHECK(expanded == Catch::Approx(compact).epsilon(1e-10).margin(1e-18));
            }
}

TEST_CASE("Laplace-averaged optical CDF spot values") {
    CHECK(rel_err(laplace_fso_cdf(1.0, 10.0, kModerate), 0.18354512917619265) < 1e-9);
    CHECK(rel_err(laplace_fso_cdf(1.1, 10.0, kModerate), 0.1576016332660151) < 1e-9);
}

TEST_CASE("regenerative BER spot values") {
    CHECK(rel_err(ber_df(df_config(10, 2, kModerate)), 0.019839259683743071) < 1e-9);
    CHECK(rel_err(ber_df(df_config(10, 2, kStrong)), 0.023784491810924594) < 1e-9);
    CHECK(rel_err(ber_df(df_config(0, 1, kModerate)), 0.29587767162234237) < 1e-9);
    CHECK(rel_err(ber_df(df_config(20, 4, kModerate)), 0.00032548426586060659) < 1e-9);
    CHECK(rel_err(ber_df(df_config(30, 4, kStrong)), 1.4869192384768383e-5) < 1e-9);
}

TEST_CASE("regenerative BER equals the averaged outage integral") {
    for (const auto* t : {&kModerate, &kStrong}) {
        const SystemConfig cfg = df_config(10, 2, *t);
        const double closed = ber_df(cfg);
        const double quad = ber_from_cdf_quadrature(
            [&](double g) { return pout_df(cfg, g); });
        CHECK(rel_err(closed, quad) < 1e-6);
    }
    const SystemConfig cfg = df_config(20, 4, kModerate);
    CHECK(rel_err(ber_df(cfg),
                  ber_from_cdf_quadrature([&](double g) { return pout_df(cfg, g); })) <
          1e-6);
}

TEST_CASE("metrics improve with more users") {
    for (double db : {5.0, 15.0, 25.0}) {
        const double p1 = pout_df(df_config(db, 1, kModerate), db_to_linear(10.0));
        const double p2 = pout_df(df_config(db, 2, kModerate), db_to_linear(10.0));
        const double p4 = pout_df(df_config(db, 4, kModerate), db_to_linear(10.0));
        CHECK(p1 > p2);
        CHECK(p2 > p4);
        const double b1 = ber_df(df_config(db, 1, kStrong));
        const double b2 = ber_df(df_config(db, 2, kStrong));
        const double b4 = ber_df(df_config(db, 4, kStrong));
        CHECK(b1 > b2);
        CHECK(b2 > b4);
    }
}

TEST_CASE("vanishing pointing-error ratio collapses the optical hop") {
    // As xi -> 0 the pointing loss drives the optical branch SNR to zero, so
    // the second hop degenerates to the lone RF branch and both metrics have
    // elementary limits.
    const XiZeroLimit lim = pout_df_xi_zero_limit(db_to_linear(10.0), db_to_linear(15.0), 2);
    const double e = std::exp(-db_to_linear(10.0) / db_to_linear(15.0));
    const double exact = 1.0 - (1.0 - std::pow(1.0 - e, 2.0)) * e;
    CHECK(rel_err(lim.exact, exact) < 1e-14);
    const double quoted = std::pow(1.0 - e, 2.0);
    CHECK(rel_err(lim.quoted_variant, quoted) < 1e-14);

    SystemConfig cfg = df_config(15, 2, TurbulenceParams(4.0, 1.9, 1e-4));
    cfg.n_users = 2;
    const double p = pout_df(cfg, cfg.gamma_th);
    CHECK(p == Catch::Approx(lim.exact).epsilon(1e-3));

    SystemConfig single = df_config(8, 1, TurbulenceParams(4.0, 1.9, 1e-3));
    const double want = 1.0 / (single.mean_snr_rf + 2.0);
    CHECK(ber_df(single) == Catch::Approx(want).epsilon(1e-5));
}
