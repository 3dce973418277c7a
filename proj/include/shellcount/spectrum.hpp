#ifndef SHELLCOUNT_SPECTRUM_HPP
#define SHELLCOUNT_SPECTRUM_HPP

// Dirichlet/Neumann eigenvalue counts of balls and shells in dimension d, through the
// zeros of the radial cross-products with nu = n + d/2 - 1; two-term Weyl main terms;
// remainders and log-log scaling fits.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "phase.hpp"
#include "zeros.hpp"

namespace shellcount {

enum class BC { Dirichlet, Neumann };

inline const char* to_string(BC b) { return b == BC::Dirichlet ? "dirichlet" : "neumann"; }

inline BC bc_from_string(const std::string& s) {
    if (s == "D" || s == "dirichlet" || s == "Dirichlet") return BC::Dirichlet;
    if (s == "N" || s == "neumann" || s == "Neumann") return BC::Neumann;
    throw domain_error("unknown boundary condition: " + s);
}

// C(n, k) with C = 0 for k > n or n < 0; throws cap_exceeded past 2^63.
inline long long binom(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    __int128 v = 1;
    for (long long i = 1; i <= k; ++i) {
        v = v * (n - k + i) / i;
        if (v > static_cast<__int128>(9.2e18)) throw cap_exceeded("binom: result exceeds 64 bits");
    }
    return static_cast<long long>(v);
}

// m_n^d, with m_{-1} = 0.
inline long long multiplicity(long long n, int d) {
    if (d < 2) throw domain_error("multiplicity: need d >= 2");
    if (n < 0) return 0;
    if (n == 0) return 1;
    if (n == 1) return d;
    return binom(n + d - 1, d - 1) - binom(n + d - 3, d - 1);
}

inline CrossProductKind spectral_kind(const ShellDomain& dom, BC bc) {
    const double delta = dom.delta();
    if (dom.is_ball()) return bc == BC::Dirichlet ? CrossProductKind{Kind::J_BALL, delta}
                                                  : CrossProductKind{Kind::JPRIME_BALL, delta};
    return bc == BC::Dirichlet ? CrossProductKind{Kind::F_DIRICHLET, delta}
                               : CrossProductKind{Kind::H_NEUMANN_ULTRA, delta};
}

struct WeylTerms {
    double main_d = 0.0;
    double main_b = 0.0;
};

// (R^d - r^d)/(2^d Gamma(d/2+1)^2) mu^d -+ (R^{d-1} + r^{d-1})/(2 (d-1)!) mu^{d-1}
inline WeylTerms weyl_two_term(const ShellDomain& dom, BC bc, double mu) {
    const int d = dom.d;
    const double g = std::tgamma(0.5 * d + 1.0);
    WeylTerms w;
    w.main_d = (std::pow(dom.R, d) - std::pow(dom.r, d)) / (std::pow(2.0, d) * g * g) * std::pow(mu, d);
    const double b = (std::pow(dom.R, d - 1) + (dom.is_ball() ? 0.0 : std::pow(dom.r, d - 1))) /
                     (2.0 * std::tgamma(static_cast<double>(d))) * std::pow(mu, d - 1);
    w.main_b = bc == BC::Dirichlet ? -b : b;
    return w;
}

// Same terms from omega_d |D| mu^d/(2 pi)^d -+ omega_{d-1} |dD| mu^{d-1}/(4 (2 pi)^{d-1}).
inline WeylTerms weyl_geometric(const ShellDomain& dom, BC bc, double mu) {
    using std::numbers::pi;
    const int d = dom.d;
    auto ball_volume = [](int m) { return std::pow(pi, 0.5 * m) / std::tgamma(0.5 * m + 1.0); };
    const double vol = ball_volume(d) * (std::pow(dom.R, d) - std::pow(dom.r, d));
    const double surf = d * ball_volume(d) * (std::pow(dom.R, d - 1) + (dom.is_ball() ? 0.0 : std::pow(dom.r, d - 1)));
    WeylTerms w;
    w.main_d = ball_volume(d) / std::pow(2.0 * pi, d) * vol * std::pow(mu, d);
    const double b = ball_volume(d - 1) / (4.0 * std::pow(2.0 * pi, d - 1)) * surf * std::pow(mu, d - 1);
    w.main_b = bc == BC::Dirichlet ? -b : b;
    return w;
}

struct CountResult {
    double mu = 0.0;
    double value = 0.0;
    double main_d = 0.0;
    double main_b = 0.0;
    double remainder = 0.0;
    std::string method;
};

// One radial order: nu = n + d/2 - 1 and its zeros with tau tags; for the Neumann n = 0 mode
// the zero eigenvalue enters as k = 0, x = 0, tau = 1/4.
struct RadialMode {
    int n = 0;
    double nu = 0.0;
    long long mult = 1;
    std::vector<ZeroEntry> zeros;
    std::vector<double> lattice_x;  // F(nu, k -+ tau): where the lattice point leaves mu Omega
};

template <class Fn>
inline void parallel_for(int count, int threads, Fn fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (int i = next++; i < count && !failed; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

inline constexpr double kMaxRadialExtent = 4000.0;  // cap on R * mu_max

// All eigenfrequencies up to mu_max, enumerated once, counted at any mu <= mu_max.
class SpectrumTable {
public:
    SpectrumTable(ShellDomain dom, BC bc, double mu_max, RegimeKnobs knobs = {}, int threads = 1)
        : dom_(dom), bc_(bc), mu_max_(mu_max), kind_(spectral_kind(dom, bc)) {
        dom_.validate();
        if (!(mu_max > 0.0)) throw domain_error("spectrum: mu must be positive");
        if (dom_.R * mu_max > kMaxRadialExtent) throw cap_exceeded("spectrum: R * mu exceeds the enumeration cap");
        const ZeroFinder zf(dom_, knobs);
        const PhaseGeometry geom(kind_.is_ball() ? ShellDomain{0.0, dom_.R, dom_.d} : dom_);
        // lattice points within F <= mu need zeros a little past mu
        const double margin = 2.0 + 2.0 * std::numbers::pi / (kind_.is_ball() ? dom_.R : dom_.width());
        const double x_max = mu_max + margin;
        const double delta = dom_.delta();
        int n_max = static_cast<int>(std::floor(dom_.R * x_max - delta));
        modes_.resize(std::max(0, n_max + 1));
        parallel_for(static_cast<int>(modes_.size()), threads, [&](int n) {
            RadialMode& m = modes_[n];
            m.n = n;
            m.nu = n + delta;
            m.mult = multiplicity(n, dom_.d);
            m.zeros = zf.find_zeros(kind_, m.nu, x_max).zeros;
            if (bc_ == BC::Neumann && n == 0) {
                ZeroEntry z0;
                z0.k = 0;
                z0.x = 0.0;
                z0.regime = ZeroRegime::evanescent;
                z0.tau = 0.25;
                m.zeros.insert(m.zeros.begin(), z0);
            }
            for (const ZeroEntry& z : m.zeros) {
                const double y = kind_.dirichlet() ? z.k - z.tau : z.k + z.tau;
                m.lattice_x.push_back(geom.F(m.nu, y));
            }
        });
        // padding check: the next order has no zero in range
        const ZeroSequence pad = zf.find_zeros(kind_, n_max + 1 + delta, x_max);
        if (!pad.zeros.empty()) throw numerical_failure("spectrum: zeros beyond the nu <= R mu cutoff");
    }

    const ShellDomain& domain() const { return dom_; }
    BC bc() const { return bc_; }
    double mu_max() const { return mu_max_; }
    const std::vector<RadialMode>& modes() const { return modes_; }

    // N(mu) = sum_n m_n #{k : omega_{n,k} <= mu}
    long long count(double mu) const {
        check_mu(mu);
        long long total = 0;
        for (const RadialMode& m : modes_) total += m.mult * count_below(m.zeros, mu);
        return total;
    }

    // N_l(mu) = #{(n, k) : omega_{n,k} <= mu, n >= l}, unweighted
    long long count_l(double mu, int l) const {
        check_mu(mu);
        long long total = 0;
        for (const RadialMode& m : modes_)
            if (m.n >= l) total += count_below(m.zeros, mu);
        return total;
    }

    // P_l(mu) = #{(nu, k -+ tau) in mu Omega : n >= l}
    long long p_count_l(double mu, int l) const {
        check_mu(mu);
        long long total = 0;
        for (const RadialMode& m : modes_)
            if (m.n >= l)
                for (double x : m.lattice_x) total += x <= mu;
        return total;
    }

    long long p_weighted(double mu) const {
        check_mu(mu);
        long long total = 0;
        for (const RadialMode& m : modes_) {
            long long c = 0;
            for (double x : m.lattice_x) c += x <= mu;
            total += m.mult * c;
        }
        return total;
    }

    CountResult result(double mu) const {
        CountResult c;
        c.mu = mu;
        c.value = static_cast<double>(count(mu));
        const WeylTerms w = weyl_two_term(dom_, bc_, mu);
        c.main_d = w.main_d;
        c.main_b = w.main_b;
        c.remainder = c.value - w.main_d - w.main_b;
        c.method = "direct_zeros";
        return c;
    }

    std::vector<CountResult> remainder_series(const std::vector<double>& grid) const {
        std::vector<CountResult> out;
        for (double mu : grid) out.push_back(result(mu));
        return out;
    }

    // Sorted distinct eigenfrequencies with their summed multiplicities (coincidences across n add up).
    std::vector<std::pair<double, long long>> levels() const {
        std::vector<std::pair<double, long long>> v;
        for (const RadialMode& m : modes_)
            for (const ZeroEntry& z : m.zeros) v.push_back({z.x, m.mult});
        std::sort(v.begin(), v.end());
        return v;
    }

private:
    void check_mu(double mu) const {
        if (!(mu >= 0.0) || mu > mu_max_) throw domain_error("spectrum: mu outside [0, mu_max]");
    }

    static long long count_below(const std::vector<ZeroEntry>& zs, double mu) {
        return std::upper_bound(zs.begin(), zs.end(), mu, [](double v, const ZeroEntry& e) { return v < e.x; }) -
               zs.begin();
    }

    ShellDomain dom_;
    BC bc_;
    double mu_max_;
    CrossProductKind kind_;
    std::vector<RadialMode> modes_;
};

inline CountResult count_spectrum(const ShellDomain& dom, BC bc, double mu, RegimeKnobs knobs = {}, int threads = 1) {
    return SpectrumTable(dom, bc, mu, knobs, threads).result(mu);
}

// ---------------------------------------------------------------------------
// log-log fits

struct ScalingFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int n_points = 0;
};

// Least squares of log y on log x over points with y > 0.
inline ScalingFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int n = 0;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly; syy += ly * ly;
        ++n;
    }
    if (n < 5) throw domain_error("fit_loglog: need at least 5 positive points");
    ScalingFit f;
    f.n_points = n;
    const double vx = sxx - sx * sx / n, vy = syy - sy * sy / n, cxy = sxy - sx * sy / n;
    f.exponent = cxy / vx;
    f.intercept = (sy - f.exponent * sx) / n;
    f.r_squared = vy > 0.0 ? cxy * cxy / (vx * vy) : 1.0;
    return f;
}

// Fit of the envelope: max |R| over each of `bins` log-spaced windows of the series.
inline ScalingFit fit_envelope(const std::vector<CountResult>& series, int bins) {
    if (series.size() < 2 || bins < 5) throw domain_error("fit_envelope: series too short");
    const double lo = std::log(series.front().mu), hi = std::log(series.back().mu);
    std::vector<double> xs, ys;
    for (int b = 0; b < bins; ++b) {
        const double a = lo + (hi - lo) * b / bins, e = lo + (hi - lo) * (b + 1) / bins;
        double best = 0.0;
        for (const CountResult& c : series) {
            const double l = std::log(c.mu);
            if (l >= a && (l < e || (b == bins - 1 && l <= e))) best = std::max(best, std::fabs(c.remainder));
        }
        xs.push_back(std::exp(0.5 * (a + e)));
        ys.push_back(best);
    }
    return fit_loglog(xs, ys);
}

}  // namespace shellcount

#endif
