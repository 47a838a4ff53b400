#include <doctest.h>

#include <cmath>
#include <vector>

#include "chay/equilibrium.hpp"
#include "chay/errors.hpp"
#include "chay/regimes.hpp"
#include "chay/spectra.hpp"
#include "reference_data.hpp"

using namespace chay;
namespace ref = chay::reference;

TEST_CASE("regime rule") {
    CHECK(regime_of(-1.0, 0.5) == RegimeKind::UnstableLocallyActive);
    CHECK(regime_of(1.0, 0.5) == RegimeKind::UnstableLocallyActive);
    CHECK(regime_of(0.0, -0.5) == RegimeKind::LocallyPassive);
    CHECK(regime_of(-1.0, -0.5) == RegimeKind::EdgeOfChaos);
    CHECK(regime_of(-1.0, 0.0) == RegimeKind::LocallyActiveOnly);
}

TEST_CASE("min Re Y at sample points") {
    CHECK(min_re_y(-21.5).value > 0.0);
    CHECK(min_re_y(-24.5).value < 0.0);
    CHECK(min_re_y(-48.3).value > 0.0);
    // The grid minimum is refined, never worse than any grid point.
    const auto Y = composite_admittance(-24.5, gkca_at_equilibrium(-24.5));
    const RegimeOptions opt;
    const auto m = min_re_y(Y, opt);
    for (const auto& f : frequency_sweep(Y, opt.omega_min, opt.omega_max, opt.grid_points)) CHECK(m.value <= f.re + 1e-12);
    CHECK(m.value <= frequency_response(Y, 0.0).re);
}

TEST_CASE("classification of locus points") {
    CHECK(classify(-24.5).kind == RegimeKind::EdgeOfChaos);
    CHECK(classify(-40.0).kind == RegimeKind::UnstableLocallyActive);
    CHECK(classify(-48.0).kind == RegimeKind::EdgeOfChaos);
    CHECK(classify(-50.0).kind == RegimeKind::LocallyPassive);
    const auto l = classify(-24.5);
    CHECK(l.g_KCa == doctest::Approx(gkca_at_equilibrium(-24.5)));
    CHECK(l.min_ReY < 0.0);
    CHECK(l.max_Re_zero < 0.0);
}

TEST_CASE("scan bands from -21 to -50 mV") {
    const auto scan = regime_scan(-21.0, -50.0, 291);
    std::vector<RegimeKind> bands;
    for (const auto& l : scan) {
        if (bands.empty() || bands.back() != l.kind) bands.push_back(l.kind);
        if (l.kind == RegimeKind::EdgeOfChaos) CHECK(l.min_ReY < 0.0);
        const double eig = max_real(jacobian_eigenvalues(equilibrium_at(l.V_m)));
        CHECK((l.max_Re_zero > 0.0) == (eig > 0.0));
    }
    const std::vector<RegimeKind> expected{RegimeKind::LocallyPassive, RegimeKind::EdgeOfChaos,
                                           RegimeKind::UnstableLocallyActive, RegimeKind::EdgeOfChaos,
                                           RegimeKind::LocallyPassive};
    CHECK(bands == expected);
}

TEST_CASE("scan is deterministic and independent of input order") {
    std::vector<double> V{-30.0, -48.0, -21.5, -40.0};
    std::vector<double> R(V.rbegin(), V.rend());
    const auto a = regime_scan(V), b = regime_scan(R);
    for (std::size_t i = 0; i < V.size(); ++i) {
        CHECK(a[i].kind == b[V.size() - 1 - i].kind);
        CHECK(a[i].min_ReY == b[V.size() - 1 - i].min_ReY);
    }
}

TEST_CASE("tabulated eigenvalue signs are reproduced by the scan") {
    for (const auto& row : ref::kTable7) {
        const double V = row.V.value();
        double printed = -INFINITY;
        for (const auto& e : row.eig) printed = std::max(printed, e.re.value());
        const auto l = regime_scan(std::vector<double>{V}).front();
        if (std::abs(printed) < 1e-3) continue;  // a printed zero real part sits on the boundary
        CHECK((l.max_Re_zero > 0.0) == (printed > 0.0));
    }
}

TEST_CASE("boundaries") {
    const auto b = find_boundaries();
    REQUIRE(b.size() == 4);
    CHECK(b[0].kind == BoundaryKind::LocalActivityEdge);
    CHECK(b[1].kind == BoundaryKind::HopfSupercritical);
    CHECK(b[2].kind == BoundaryKind::HopfSubcritical);
    CHECK(b[3].kind == BoundaryKind::LocalActivityEdge);

    CHECK(std::abs(b[0].V_m - ref::kEdge1V) < 1e-3);
    CHECK(std::abs(b[0].g_KCa - ref::kEdge1G) < 0.05);
    CHECK(std::abs(b[1].V_m - ref::kHopf1V) < 1e-4);
    CHECK(std::abs(b[1].g_KCa - ref::kHopf1G) < 1e-3);
    CHECK(std::abs(b[1].omega - ref::kHopf1Omega) < 0.01);
    CHECK(std::abs(b[2].V_m - ref::kHopf2V) < 1e-4);
    CHECK(std::abs(b[2].g_KCa - ref::kHopf2G) < 1e-3);
    CHECK(std::abs(b[2].omega - ref::kHopf2Omega) < 0.01);
    CHECK(std::abs(b[3].V_m - ref::kEdge2V) < 1e-3);
    CHECK(std::abs(b[3].g_KCa - ref::kEdge2G) < 0.05);

    for (const auto& p : b) CHECK(std::abs(p.crossing_value) < 1e-8);
    CHECK(b[0].V_m > b[1].V_m);
    CHECK(b[2].V_m > b[3].V_m);
    CHECK(b[1].l1 < 0.0);
    CHECK(b[2].l1 > 0.0);

    BoundaryOptions fine;
    fine.scan_points = 1401;
    const auto c = find_boundaries({}, fine);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(c[i].V_m - b[i].V_m) < 1e-6);
}

TEST_CASE("a bracket that misses boundaries reports its profile") {
    BoundaryOptions opt;
    opt.V_lo = -35.0;
    opt.V_hi = -20.0;
    opt.scan_points = 51;
    try {
        (void)find_boundaries({}, opt);
        FAIL("expected a bracket error");
    } catch (const BracketError& e) {
        CHECK(!e.profile().empty());
    }
}
