#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hyfso/channel/rf.hpp"
#include "hyfso/channel/sampling.hpp"
#include "hyfso/channel/turbulence.hpp"
#include "hyfso/rng/philox.hpp"

using namespace hyfso;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Max deviation between the empirical CDF of `samples` and `cdf`, measured
// on a quantile grid (exact sup-KS would need one analytic evaluation per
// sample, which is too slow for the special-function CDFs).
template <typename Cdf>
double grid_ks(std::vector<double>& samples, const Cdf& cdf, int grid = 500) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double worst = 0.0;
    for (int i = 1; i < grid; ++i) {
        const double q = samples[static_cast<std::size_t>(n * i / grid)];
        const auto up = std::upper_bound(samples.begin(), samples.end(), q);
        const double emp = static_cast<double>(up - samples.begin()) / n;
        worst = std::max(worst, std::abs(emp - cdf(q)));
    }
    return worst;
}

} // namespace

TEST_CASE("counter RNG known-answer blocks") {
    auto r1 = PhiloxStream::with_raw_key(0x0123456789ABCDEFull, 0);
    const std::uint64_t want1[8] = {0xdaf0bdc754a0b959ull, 0x38123d82f9ce12cfull,
                                    0x26cf92e903faab88ull, 0x1c243f1f4212c6adull,
                                    0xb21f50f322b0bda1ull, 0xb445706b57af3517ull,
                                    0x0fb92f165c546c7aull, 0xce47d53cd7edc6b9ull};
    for (std::uint64_t w : want1) CHECK(r1.next_u64() == w);

    auto r2 = PhiloxStream::with_raw_key(0xFFFFFFFFFFFFFFFFull, 0xFFFFFFFFFFFFFFFFull);
    const std::uint64_t want2[4] = {0x6d46cc0e71f0be7eull, 0x924ea1693f9a8bc0ull,
                                    0xfdc35f0198c91181ull, 0xb4a311f17aa6568dull};
    for (std::uint64_t w : want2) CHECK(r2.next_u64() == w);

    auto r3 = PhiloxStream::with_raw_key(0, 0);
    const std::uint64_t want3[4] = {0x02f4ba6408e4d89bull, 0x3dd62b0b9ca8c5b2ull,
                                    0x1c8667a55d902e79ull, 0x907d7a052fd5b4dcull};
    for (std::uint64_t w : want3) CHECK(r3.next_u64() == w);
}

TEST_CASE("counter RNG streams are deterministic and distinct") {
    PhiloxStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    int differs_c = 0, differs_d = 0;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t va = a.next_u64();
        CHECK(va == b.next_u64());
        differs_c += va != c.next_u64();
        differs_d += va != d.next_u64();
    }
    CHECK(differs_c > 60);
    CHECK(differs_d > 60);
}

TEST_CASE("uniform doubles live in (0, 1]") {
    PhiloxStream rng(1, 0);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(sum / n == Catch::Approx(0.5).margin(0.002));
    CHECK(lo < 1e-4);
    CHECK(hi > 1.0 - 1e-4);
}

TEST_CASE("normal and gamma sampler moments") {
    PhiloxStream rng(7, 3);
    const int n = 400000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.next_normal();
        s1 += x;
        s2 += x * x;
    }
    CHECK(s1 / n == Catch::Approx(0.0).margin(0.006));
    CHECK(s2 / n == Catch::Approx(1.0).margin(0.01));

    for (double shape : {0.6, 1.9, 4.2}) {
        double g1 = 0.0, g2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = rng.next_gamma(shape, 1.0 / shape);
            g1 += x;
            g2 += x * x;
        }
        const double mean = g1 / n;
        const double var = g2 / n - mean * mean;
        CHECK(mean == Catch::Approx(1.0).epsilon(0.01));
        CHECK(var == Catch::Approx(1.0 / shape).epsilon(0.05));
    }

    double e1 = 0.0;
    for (int i = 0; i < n; ++i) e1 += rng.next_exponential(2.5);
    CHECK(e1 / n == Catch::Approx(2.5).epsilon(0.01));
}

TEST_CASE("single-user RF fade distribution") {
    const RfParams rf{10.0};
    CHECK(rel_err(rayleigh_snr_cdf(10.0, rf), 1.0 - std::exp(-1.0)) < 1e-14);
    CHECK(rayleigh_snr_cdf(0.0, rf) == 0.0);
    CHECK(rel_err(rayleigh_snr_pdf(5.0, rf), std::exp(-0.5) / 10.0) < 1e-14);
    CHECK(rayleigh_snr_cdf(-1.0, rf) == 0.0);
    CHECK_THROWS_AS(RfParams(-2.0), domain_error);
}

TEST_CASE("opportunistic-user RF forms agree") {
    const RfParams rf{6.3};
    for (int n : {1, 2, 3, 4, 8}) {
        // The expanded sum cancels down from terms of size ~C(n, n/2), so
        // its absolute error floor is that size times the long double ulp.
        const double floor_cdf = std::ldexp(1e-16, n);
        for (double g : {0.01, 0.7, 3.0, 6.3, 22.0}) {
            const double cc = max_user_cdf(g, rf, n, Form::Compact);
            const double ce = max_user_cdf(g, rf, n, Form::Expanded);
            CHECK(ce == Catch::Approx(cc).epsilon(1e-12).margin(floor_cdf));
            const double pc = max_user_pdf(g, rf, n, Form::Compact);
            const double pe = max_user_pdf(g, rf, n, Form::Expanded);
            CHECK(pe == Catch::Approx(pc).epsilon(1e-12).margin(floor_cdf * n / rf.mean_snr));

            const double h = 1e-6 * std::max(g, 1.0);
            const double num =
                (max_user_cdf(g + h, rf, n, Form::Compact) -
                 max_user_cdf(g - h, rf, n, Form::Compact)) /
                (2 * h);
            CHECK(pc == Catch::Approx(num).epsilon(1e-6).margin(1e-12));
        }
        CHECK(max_user_cdf(1e9, rf, n, Form::Compact) == Catch::Approx(1.0).margin(1e-12));
    }
    CHECK_THROWS_AS(max_user_cdf(1.0, rf, 0, Form::Compact), domain_error);
    CHECK_THROWS_AS(max_user_cdf(1.0, rf, 65, Form::Compact), domain_error);
}

TEST_CASE("scintillation shapes from Rytov variance") {
    const auto [a1, b1] = rytov_shapes(1.0);
    CHECK(rel_err(a1, 4.3938590253921468) < 1e-13);
    CHECK(rel_err(b1, 2.563631979503695) < 1e-13);
    const auto [a2, b2] = rytov_shapes(0.25);
    CHECK(rel_err(a2, 9.7075738241029518) < 1e-13);
    CHECK(rel_err(b2, 8.1983079201870002) < 1e-13);
    CHECK_THROWS_AS(rytov_shapes(0.0), domain_error);

    const TurbulenceParams t = gg_params_from_rytov(1.0, 2.45);
    CHECK(rel_err(t.alpha, 4.3938590253921468) < 1e-13);
    CHECK(rel_err(t.beta, 2.563631979503695) < 1e-13);
    CHECK(t.rytov_variance.has_value());

    // Stored Rytov variance must reproduce the stored shapes.
    CHECK_THROWS_AS(TurbulenceParams(4.0, 1.9, 10.45, 1.0, 1.0), domain_error);
    CHECK_NOTHROW(TurbulenceParams(a1, b1, 2.45, 1.0, 1.0));
}

TEST_CASE("optical SNR distribution spot values") {
    const TurbulenceParams moderate(4.0, 1.9, 10.45);
    const TurbulenceParams strong(4.2, 1.4, 2.45);
    CHECK(rel_err(fso_snr_cdf(10.0, 10.0, moderate), 0.64371359174294012) < 1e-10);
    CHECK(rel_err(fso_snr_cdf(1.0, 10.0, moderate), 0.21381161283827278) < 1e-10);
    CHECK(rel_err(fso_snr_cdf(10.0, 10.0, strong), 0.7094092845951762) < 1e-10);
    CHECK(rel_err(fso_snr_cdf(1.0, 10.0, strong), 0.30627302397298901) < 1e-10);
    CHECK(fso_snr_cdf(0.0, 10.0, moderate) == 0.0);
}

TEST_CASE("sampled distributions match their analytic CDFs") {
    const int n = 1000000;

    PhiloxStream r1(2026, 0);
    const RfParams rf{10.0};
    std::vector<double> rf_samples(n);
    for (auto& x : rf_samples) x = sample_rf_snr(r1, rf);
    CHECK(grid_ks(rf_samples, [&](double g) { return rayleigh_snr_cdf(g, rf); }) < 0.002);

    PhiloxStream r2(2026, 1);
    const TurbulenceParams moderate(4.0, 1.9, 10.45);
    std::vector<double> fso_samples(n);
    for (auto& x : fso_samples) x = sample_fso_snr(r2, 10.0, moderate);
    CHECK(grid_ks(fso_samples, [&](double g) { return fso_snr_cdf(g, 10.0, moderate); },
                  200) < 0.002);

    PhiloxStream r3(2026, 2);
    const TurbulenceParams strong(4.2, 1.4, 2.45);
    for (auto& x : fso_samples) x = sample_fso_snr(r3, 10.0, strong);
    CHECK(grid_ks(fso_samples, [&](double g) { return fso_snr_cdf(g, 10.0, strong); },
                  200) < 0.002);
}

TEST_CASE("pointing-loss factor has the right mean") {
    // The pointing component is U^{1/xi^2} with mean xi^2/(xi^2+1); with the
    // scintillation factors normalized to unit mean the product inherits it.
    const TurbulenceParams t(4.0, 1.9, 2.0);
    PhiloxStream rng(11, 0);
    const int n = 2000000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_fso_intensity(rng, t);
    const double want = t.xi2() / (t.xi2() + 1.0);
    CHECK(sum / n == Catch::Approx(want).epsilon(0.003));
}
