#include "chay/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "chay/equilibrium.hpp"
#include "chay/errors.hpp"
#include "chay/lyapunov.hpp"

namespace chay {

std::string_view to_string(RegimeKind kind) {
    switch (kind) {
    case RegimeKind::LocallyPassive: return "LocallyPassive";
    case RegimeKind::EdgeOfChaos: return "EdgeOfChaos";
    case RegimeKind::UnstableLocallyActive: return "UnstableLocallyActive";
    case RegimeKind::LocallyActiveOnly: return "LocallyActiveOnly";
    }
    return "unknown";
}

std::string_view to_string(BoundaryKind kind) {
    switch (kind) {
    case BoundaryKind::LocalActivityEdge: return "LocalActivityEdge";
    case BoundaryKind::HopfSupercritical: return "HopfSupercritical";
    case BoundaryKind::HopfSubcritical: return "HopfSubcritical";
    }
    return "unknown";
}

namespace {

double re_y(const RationalAdmittance& Y, double w) { return frequency_response(Y, w).re; }

ReYMinimum golden_section(const RationalAdmittance& Y, double a, double b) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = re_y(Y, c), fd = re_y(Y, d);
    while ((b - a) > 1e-10 * std::max(std::abs(b), 1e-300)) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = re_y(Y, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = re_y(Y, d);
        }
        if (c >= d) break;
    }
    const double fa = re_y(Y, a), fb = re_y(Y, b);
    ReYMinimum m{0.5 * (a + b), re_y(Y, 0.5 * (a + b))};
    if (fa < m.value) m = {a, fa};
    if (fb < m.value) m = {b, fb};
    return m;
}

} // namespace

ReYMinimum min_re_y(const RationalAdmittance& Y, const RegimeOptions& opt) {
    if (!(opt.omega_max > opt.omega_min)) throw ConfigError("omega_max must exceed omega_min");
    std::vector<double> w{0.0};
    const auto grid = log_grid(opt.omega_min, opt.omega_max, opt.grid_points);
    w.insert(w.end(), grid.begin(), grid.end());

    std::size_t best = 0;
    double best_value = re_y(Y, w[0]);
    for (std::size_t k = 1; k < w.size(); ++k) {
        const double v = re_y(Y, w[k]);
        if (v < best_value) {
            best = k;
            best_value = v;
        }
    }
    const double lo = w[best == 0 ? 0 : best - 1];
    const double hi = w[std::min(best + 1, w.size() - 1)];
    ReYMinimum m = golden_section(Y, lo, hi);
    if (best_value < m.value) m = {w[best], best_value};
    return m;
}

ReYMinimum min_re_y(double V_m, const ChayParams& p, const RegimeOptions& opt) {
    return min_re_y(composite_admittance(V_m, gkca_at_equilibrium(V_m, p), p), opt);
}

RegimeKind regime_of(double min_re, double max_re_zero) {
    if (max_re_zero > 0.0) return RegimeKind::UnstableLocallyActive;
    if (min_re >= 0.0) return RegimeKind::LocallyPassive;
    if (max_re_zero < 0.0) return RegimeKind::EdgeOfChaos;
    return RegimeKind::LocallyActiveOnly;
}

RegimeLabel classify(double V_m, const ChayParams& p, const RegimeOptions& opt) {
    RegimeLabel r;
    r.V_m = V_m;
    r.g_KCa = gkca_at_equilibrium(V_m, p);
    const auto Y = composite_admittance(V_m, r.g_KCa, p);
    const auto m = min_re_y(Y, opt);
    r.min_ReY = m.value;
    r.argmin_omega = m.omega;
    r.max_Re_zero = max_real(zeros(Y));
    r.kind = regime_of(r.min_ReY, r.max_Re_zero);
    return r;
}

double hopf_crossing(const std::array<cplx, 3>& z) {
    for (const auto& x : z)
        if (x.imag() != 0.0) return x.real();
    return max_real(z);
}

namespace {

using Profile = std::vector<std::pair<double, double>>;

struct Root {
    double x;
    double fx;
};

Root bisect(const std::function<double(double)>& f, double a, double b, double fa, double tol) {
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if (fm == 0.0) return {m, 0.0};
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    const double fb = f(b);
    return std::abs(fa) <= std::abs(fb) ? Root{a, fa} : Root{b, fb};
}

std::vector<Root> sign_changes(const std::function<double(double)>& f, const Profile& prof, double tol) {
    std::vector<Root> roots;
    for (std::size_t k = 1; k < prof.size(); ++k) {
        const auto [a, fa] = prof[k - 1];
        const auto [b, fb] = prof[k];
        if (fa == 0.0) roots.push_back({a, 0.0});
        else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) roots.push_back(bisect(f, a, b, fa, tol));
    }
    if (!prof.empty() && prof.back().second == 0.0) roots.push_back({prof.back().first, 0.0});
    return roots;
}

} // namespace

std::vector<BoundaryPoint> find_boundaries(const ChayParams& p, const BoundaryOptions& opt) {
    if (opt.scan_points < 3) throw ConfigError("boundary scan needs at least 3 points");
    if (!(opt.V_hi > opt.V_lo)) throw ConfigError("boundary scan needs V_lo < V_hi");

    auto activity = [&](double V) { return min_re_y(V, p, opt.regime).value; };
    auto hopf = [&](double V) {
        return hopf_crossing(zeros(composite_admittance(V, gkca_at_equilibrium(V, p), p)));
    };

    Profile act_prof, hopf_prof;
    for (int k = 0; k < opt.scan_points; ++k) {
        const double V = opt.V_lo + (opt.V_hi - opt.V_lo) * k / (opt.scan_points - 1);
        act_prof.emplace_back(V, activity(V));
        hopf_prof.emplace_back(V, hopf(V));
    }
    const auto edges = sign_changes(activity, act_prof, opt.tolerance);
    if (edges.size() != 2)
        throw BracketError("expected 2 local-activity edges in the scan, found " + std::to_string(edges.size()),
                           act_prof);
    const auto hopfs = sign_changes(hopf, hopf_prof, opt.tolerance);
    if (hopfs.size() != 2)
        throw BracketError("expected 2 Hopf crossings in the scan, found " + std::to_string(hopfs.size()),
                           hopf_prof);

    std::vector<BoundaryPoint> out;
    for (const auto& r : edges) {
        BoundaryPoint b;
        b.kind = BoundaryKind::LocalActivityEdge;
        b.V_m = r.x;
        b.g_KCa = gkca_at_equilibrium(r.x, p);
        const auto m = min_re_y(r.x, p, opt.regime);
        b.crossing_value = m.value;
        b.omega = m.omega;
        out.push_back(b);
    }
    for (const auto& r : hopfs) {
        BoundaryPoint b;
        b.V_m = r.x;
        b.g_KCa = gkca_at_equilibrium(r.x, p);
        const auto z = zeros(composite_admittance(r.x, b.g_KCa, p));
        b.crossing_value = hopf_crossing(z);
        for (const auto& x : z) b.omega = std::max(b.omega, std::abs(x.imag()));
        ChayParams pp = p;
        pp.g_KCa = b.g_KCa;
        b.l1 = first_lyapunov_coefficient(make_equilibrium(r.x, b.g_KCa, p).state(), pp).l1;
        b.kind = b.l1 < 0.0 ? BoundaryKind::HopfSupercritical : BoundaryKind::HopfSubcritical;
        out.push_back(b);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.V_m > b.V_m; });
    return out;
}

std::vector<RegimeLabel> regime_scan(std::span<const double> V, const ChayParams& p, const RegimeOptions& opt) {
    std::vector<RegimeLabel> out;
    out.reserve(V.size());
    for (double v : V) out.push_back(classify(v, p, opt));
    return out;
}

std::vector<RegimeLabel> regime_scan(double V_lo, double V_hi, int samples, const ChayParams& p,
                                     const RegimeOptions& opt) {
    if (samples < 2) throw ConfigError("a scan needs at least 2 samples");
    std::vector<double> V(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k)
        V[static_cast<std::size_t>(k)] = (k == samples - 1) ? V_hi : V_lo + (V_hi - V_lo) * k / (samples - 1);
    return regime_scan(V, p, opt);
}

} // namespace chay
