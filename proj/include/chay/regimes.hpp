#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "chay/params.hpp"
#include "chay/smallsignal.hpp"
#include "chay/spectra.hpp"

namespace chay {

enum class RegimeKind { LocallyPassive, EdgeOfChaos, UnstableLocallyActive, LocallyActiveOnly };

std::string_view to_string(RegimeKind kind);

struct RegimeOptions {
    // Upper end of the frequency search. Both local-activity edges sit where
    // Re Y(i omega) first dips below zero at this cap.
    double omega_max = 2000.0;
    double omega_min = kSweepOmegaMin;  // first non-zero grid point
    int grid_points = kSweepPoints;
};

struct ReYMinimum {
    double omega = 0.0;  // rad/s
    double value = 0.0;
};

// Global minimum of Re Y(i omega) over {0} and [omega_min, omega_max]: log
// grid scan, then golden-section refinement around the best grid point.
ReYMinimum min_re_y(const RationalAdmittance& Y, const RegimeOptions& opt = {});
ReYMinimum min_re_y(double V_m, const ChayParams& p = {}, const RegimeOptions& opt = {});

struct RegimeLabel {
    RegimeKind kind = RegimeKind::LocallyPassive;
    double V_m = 0.0;
    double g_KCa = 0.0;
    double min_ReY = 0.0;
    double argmin_omega = 0.0;
    double max_Re_zero = 0.0;
};

// Locus point through V_m labelled from min Re Y and the zeros of Y.
RegimeLabel classify(double V_m, const ChayParams& p = {}, const RegimeOptions& opt = {});

// Rule used by classify, exposed for off-locus inspection.
RegimeKind regime_of(double min_re_y, double max_re_zero);

// Real part of the complex zero pair, or the largest real zero when all three
// zeros are real. Changes sign exactly where a pair crosses the axis.
double hopf_crossing(const std::array<cplx, 3>& zeros);

enum class BoundaryKind { LocalActivityEdge, HopfSupercritical, HopfSubcritical };

std::string_view to_string(BoundaryKind kind);

struct BoundaryPoint {
    BoundaryKind kind = BoundaryKind::LocalActivityEdge;
    double V_m = 0.0;
    double g_KCa = 0.0;
    double crossing_value = 0.0;  // min Re Y or Re of the zero pair at V_m
    double omega = 0.0;           // argmin frequency, or |Im| of the critical pair
    double l1 = 0.0;              // first Lyapunov coefficient at Hopf points
};

struct BoundaryOptions {
    double V_lo = -55.0;
    double V_hi = -20.0;
    int scan_points = 701;
    double tolerance = 1e-10;  // mV
    RegimeOptions regime;
};

// The two local-activity edges and the two Hopf points, ordered by
// decreasing V_m. BracketError when the scan does not find exactly two sign
// changes of either crossing function.
std::vector<BoundaryPoint> find_boundaries(const ChayParams& p = {}, const BoundaryOptions& opt = {});

std::vector<RegimeLabel> regime_scan(std::span<const double> V, const ChayParams& p = {},
                                     const RegimeOptions& opt = {});
std::vector<RegimeLabel> regime_scan(double V_lo, double V_hi, int samples, const ChayParams& p = {},
                                     const RegimeOptions& opt = {});

} // namespace chay
