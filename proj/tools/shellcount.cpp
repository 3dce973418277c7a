// shellcount: command-line front end.
//
// Exit codes: 0 ok, 1 validation, 2 numerical failure, 3 acceptance failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shellcount/acceptance.hpp"
#include "shellcount/bessel.hpp"
#include "shellcount/cross.hpp"
#include "shellcount/lattice.hpp"
#include "shellcount/phase.hpp"
#include "shellcount/spectrum.hpp"
#include "shellcount/zeros.hpp"

using json = nlohmann::ordered_json;
namespace sc = shellcount;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0, kExitValidation = 1, kExitNumerical = 2, kExitAcceptance = 3;
constexpr const char* kCsvSchema = "shellcount-csv/1";

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string config_path;
    std::string out_dir;
    int threads = 1;
    std::uint64_t seed = 20240607;
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

// RFC-4180 table; every row starts with the config hash.
class Table {
public:
    Table(std::vector<std::string> cols, json config) : cols_(std::move(cols)), config_(std::move(config)) {
        config_["schema"] = kCsvSchema;
        hash_ = hex64(fnv1a(config_.dump()));
    }

    void row(const std::vector<std::string>& v) { rows_.push_back(v); }
    const std::string& hash() const { return hash_; }
    json& summary() { return summary_; }

    // stdout without a --out directory; otherwise <dir>/<stem>.csv and <stem>.json
    void emit(const Globals& g, const std::string& stem) const {
        std::ostringstream body;
        body << "config_hash";
        for (const auto& c : cols_) body << ',' << csv_field(c);
        body << "\r\n";
        for (const auto& r : rows_) {
            body << hash_;
            for (const auto& f : r) body << ',' << csv_field(f);
            body << "\r\n";
        }
        if (g.out_dir.empty()) {
            std::cout << body.str();
            if (!summary_.empty()) std::cerr << summary_.dump(2) << "\n";
            return;
        }
        fs::create_directories(g.out_dir);
        const std::string created = utc_now();
        std::ofstream csv(fs::path(g.out_dir) / (stem + ".csv"), std::ios::binary);
        csv << "# created " << created << "\r\n" << body.str();
        json side;
        side["schema"] = kCsvSchema;
        side["created"] = created;
        side["config_hash"] = hash_;
        side["config"] = config_;
        side["columns"] = cols_;
        side["rows"] = rows_.size();
        side["summary"] = summary_;
        std::ofstream js(fs::path(g.out_dir) / (stem + ".json"));
        js << side.dump(2) << "\n";
        std::cout << "wrote " << (fs::path(g.out_dir) / (stem + ".csv")).string() << "\n";
    }

private:
    std::vector<std::string> cols_;
    std::vector<std::vector<std::string>> rows_;
    json config_;
    json summary_ = json::object();
    std::string hash_;
};

json load_config(const Globals& g) {
    if (g.config_path.empty()) return json::object();
    std::ifstream in(g.config_path);
    if (!in) throw validation_error("config: cannot open " + g.config_path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("config: ") + e.what());
    }
}

sc::RegimeKnobs knobs_from(const json& cfg) {
    sc::RegimeKnobs k;
    if (!cfg.contains("knobs")) return k;
    const json& j = cfg["knobs"];
    auto get = [&](const char* key, double& dst) {
        if (!j.contains(key)) return;
        if (!j[key].is_number()) throw validation_error(std::string("config.knobs.") + key + ": expected a number");
        dst = j[key].get<double>();
    };
    get("c", k.c);
    get("eps", k.eps);
    get("V", k.V);
    get("gap_floor", k.gap_floor);
    double K = k.K;
    get("K", K);
    k.K = static_cast<int>(K);
    if (!(k.c > 0.0 && k.c <= 1.0)) throw validation_error("config.knobs.c: must lie in (0, 1]");
    if (!(k.eps > 0.0 && k.eps < 1.0 / 6.0)) throw validation_error("config.knobs.eps: must lie in (0, 1/6)");
    if (!(k.V > 0.0)) throw validation_error("config.knobs.V: must be positive");
    if (k.K < 0) throw validation_error("config.knobs.K: must be nonnegative");
    return k;
}

struct DomainArgs {
    int d = 2;
    double r = 1.0, R = 2.0;
    sc::ShellDomain domain() const {
        sc::ShellDomain s{r, R, d};
        s.validate();
        return s;
    }
    json to_json() const { return {{"d", d}, {"r", r}, {"R", R}}; }
};

void add_domain(CLI::App* c, DomainArgs& a) {
    c->add_option("--d", a.d, "dimension")->capture_default_str();
    c->add_option("--r", a.r, "inner radius (0: ball)")->capture_default_str();
    c->add_option("--R", a.R, "outer radius")->capture_default_str();
}

std::vector<double> parse_grid(const std::string& spec) {
    // a:b:n, linear
    const auto p1 = spec.find(':'), p2 = spec.rfind(':');
    if (p1 == std::string::npos || p1 == p2) throw validation_error("--grid: expected a:b:n");
    const double a = std::stod(spec.substr(0, p1)), b = std::stod(spec.substr(p1 + 1, p2 - p1 - 1));
    const int n = std::stoi(spec.substr(p2 + 1));
    if (n < 1) throw validation_error("--grid: need n >= 1");
    if (n > 1 && !(b > a)) throw validation_error("--grid: need b > a");
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return g;
}

std::vector<double> grid_from_config(const json& j) {
    std::vector<double> g;
    if (j.is_array()) {
        for (const auto& v : j) {
            if (!v.is_number()) throw validation_error("config.grid: entries must be numbers");
            g.push_back(v.get<double>());
        }
    } else if (j.is_object()) {
        const double a = j.value("start", 0.0), b = j.value("stop", 0.0);
        const int n = j.value("count", 0);
        const std::string sp = j.value("spacing", std::string("linear"));
        if (n < 1) throw validation_error("config.grid.count: grid is empty");
        if (sp != "linear" && sp != "log") throw validation_error("config.grid.spacing: linear or log");
        if (sp == "log" && !(a > 0.0)) throw validation_error("config.grid.start: log spacing needs start > 0");
        for (int i = 0; i < n; ++i) {
            const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            g.push_back(sp == "log" ? a * std::pow(b / a, t) : a + (b - a) * t);
        }
    } else {
        throw validation_error("config.grid: expected an array or {start, stop, count, spacing}");
    }
    if (g.empty()) throw validation_error("config.grid: grid is empty");
    for (std::size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1])) throw validation_error("config.grid: must be strictly increasing");
    if (!(g.front() > 0.0)) throw validation_error("config.grid: mu must be positive");
    return g;
}

sc::CrossProductKind parse_kind(const std::string& kind, double delta) {
    return sc::CrossProductKind{sc::kind_from_string(kind), delta};
}

std::optional<sc::RationalSlope> parse_slope(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const auto p = s.find('/');
    if (p == std::string::npos) throw validation_error("--rational: expected a/q");
    return sc::RationalSlope{std::stol(s.substr(0, p)), std::stol(s.substr(p + 1))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenvalue counts of balls and spherical shells, Bessel cross-product zeros, lattice counts"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "JSON configuration file");
    app.add_option("--out", g.out_dir, "output directory (CSV + JSON sidecar)");
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "seed for randomized checks");

    std::function<int()> action;

    // theta-star
    auto* theta = app.add_subcommand("theta-star", "exponent theta*");
    theta->callback([&] {
        action = [&] {
            const sc::ThetaStar t = sc::solve_theta_star();
            Table tb({"theta_star", "two_theta_star", "residual"}, {{"cmd", "theta-star"}});
            tb.row({num(t.value), num(2.0 * t.value), num(t.residual)});
            tb.emit(g, "theta_star");
            return kExitOk;
        };
    });

    // besseleval
    double b_nu = 0.0, b_x = 1.0, b_delta = 0.0;
    auto* bes = app.add_subcommand("besseleval", "J, Y and derivatives at one point");
    bes->add_option("--nu", b_nu)->required();
    bes->add_option("--x", b_x)->required();
    bes->add_option("--delta", b_delta, "ultraspherical shift");
    bes->callback([&] {
        action = [&] {
            const sc::BesselQuad q = sc::bessel_quad(b_nu, b_x);
            const sc::UltrasphericalQuad u = sc::ultraspherical(b_nu, b_delta, b_x);
            Table tb({"nu", "x", "j", "y", "jp", "yp", "regime", "delta", "j_ultra", "y_ultra", "jp_ultra", "yp_ultra"},
                     {{"cmd", "besseleval"}, {"nu", b_nu}, {"x", b_x}, {"delta", b_delta}});
            tb.row({num(b_nu), num(b_x), num(q.j), num(q.y), num(q.jp), num(q.yp), sc::to_string(q.regime),
                    num(b_delta), num(u.j), num(u.y), num(u.jp), num(u.yp)});
            tb.emit(g, "besseleval");
            return kExitOk;
        };
    });

    // geom
    DomainArgs gd;
    std::optional<double> g_x, g_y, g_nu;
    auto* geo = app.add_subcommand("geom", "phase geometry: G, H, cal_g, F");
    add_domain(geo, gd);
    geo->add_option("--x", g_x, "G(x)");
    geo->add_option("--y", g_y, "H(y), or F(nu, y) with --nu");
    geo->add_option("--nu", g_nu, "cal_g(nu, x) with --x, F(nu, y) with --y");
    geo->callback([&] {
        action = [&] {
            const sc::PhaseGeometry pg(gd.domain());
            Table tb({"quantity", "nu", "arg", "value"}, {{"cmd", "geom"}, {"domain", gd.to_json()}});
            if (g_x) {
                tb.row({"G", "", num(*g_x), num(pg.G(*g_x))});
                if (g_nu) tb.row({"cal_g", num(*g_nu), num(*g_x), num(pg.cal_g(*g_nu, *g_x))});
            }
            if (g_y) {
                if (!gd.domain().is_ball() || *g_y <= pg.G(0.0)) tb.row({"H", "", num(*g_y), num(pg.H(*g_y))});
                if (g_nu) tb.row({"F", num(*g_nu), num(*g_y), num(pg.F(*g_nu, *g_y))});
            }
            tb.row({"area", "", "", num(pg.area())});
            tb.emit(g, "geom");
            return kExitOk;
        };
    });

    // xprod
    DomainArgs xd;
    std::string x_kind = "F";
    double x_nu = 0.0, x_x = 1.0, x_im = 0.0;
    std::optional<double> x_delta_opt;
    auto* xp = app.add_subcommand("xprod", "cross-product value (complex ht with --im)");
    add_domain(xp, xd);
    xp->add_option("--kind", x_kind, "F | G | H | JP | J")->capture_default_str();
    xp->add_option("--nu", x_nu)->required();
    xp->add_option("--x", x_x, "real part")->required();
    xp->add_option("--im", x_im, "imaginary part; evaluates ht");
    xp->add_option("--delta", x_delta_opt, "default d/2 - 1");
    xp->callback([&] {
        action = [&] {
            const sc::CrossProducts c(xd.domain());
            const double x_delta = x_delta_opt.value_or(xd.domain().delta());
            Table tb({"kind", "nu", "delta", "re_z", "im_z", "mantissa", "log_scale", "value_re", "value_im", "condition"},
                     {{"cmd", "xprod"}, {"domain", xd.to_json()}, {"kind", x_kind}, {"nu", x_nu}, {"delta", x_delta},
                      {"x", x_x}, {"im", x_im}});
            if (x_im != 0.0) {
                const sc::ComplexSeriesValue v = c.eval_complex_htilde(x_nu, x_delta, {x_x, x_im});
                tb.row({"htilde", num(x_nu), num(x_delta), num(x_x), num(x_im), "", "", num(v.re), num(v.im),
                        num(v.condition_estimate)});
            } else {
                const sc::ScaledValue v = c.eval_scaled(parse_kind(x_kind, x_delta), x_nu, x_x);
                tb.row({x_kind, num(x_nu), num(x_delta), num(x_x), "0", num(v.mantissa), num(v.log_scale),
                        num(v.value()), "0", ""});
            }
            tb.emit(g, "xprod");
            return kExitOk;
        };
    });

    // zeros
    DomainArgs zd;
    std::string z_kind = "H";
    double z_nu = 0.0, z_xmax = 50.0;
    std::optional<double> z_delta;
    bool z_verify = false;
    auto* zc = app.add_subcommand("zeros", "enumerate zeros with regime and tau tags");
    add_domain(zc, zd);
    zc->add_option("--kind", z_kind, "F | G | H | JP | J")->capture_default_str();
    zc->add_option("--nu", z_nu)->required();
    zc->add_option("--xmax", z_xmax)->capture_default_str();
    zc->add_option("--delta", z_delta, "default d/2 - 1");
    zc->add_flag("--verify", z_verify, "fine-scan completeness check");
    zc->callback([&] {
        action = [&] {
            const json cfg = load_config(g);
            const sc::ShellDomain dom = zd.domain();
            const sc::ZeroFinder zf(dom, knobs_from(cfg));
            const sc::ZeroSequence s = zf.find_zeros(parse_kind(z_kind, z_delta.value_or(dom.delta())), z_nu, z_xmax, z_verify);
            Table tb({"kind", "nu", "k", "x", "regime", "tau", "residual"},
                     {{"cmd", "zeros"}, {"domain", zd.to_json()}, {"kind", z_kind}, {"nu", z_nu}, {"xmax", z_xmax}});
            for (const sc::ZeroEntry& e : s.zeros)
                tb.row({sc::to_string(s.kind.kind), num(z_nu), std::to_string(e.k), num(e.x), sc::to_string(e.regime),
                        num(e.tau), num(e.residual)});
            tb.emit(g, "zeros");
            return kExitOk;
        };
    });

    // count spectrum | lattice
    auto* cnt = app.add_subcommand("count", "eigenvalue or lattice counts");
    cnt->require_subcommand(1);
    DomainArgs sd;
    std::string s_bc = "dirichlet", s_grid;
    double s_mu = 0.0;
    auto* cs = cnt->add_subcommand("spectrum", "N(mu) with main terms and remainder");
    add_domain(cs, sd);
    cs->add_option("--bc", s_bc)->capture_default_str();
    cs->add_option("--mu", s_mu);
    cs->add_option("--grid", s_grid, "a:b:n");
    cs->add_flag("--csv", "CSV output (the default)");
    cs->callback([&] {
        action = [&] {
            const json cfg = load_config(g);
            const std::vector<double> grid = s_grid.empty() ? std::vector<double>{s_mu} : parse_grid(s_grid);
            if (!(grid.front() > 0.0)) throw validation_error("--mu: must be positive");
            const sc::BC bc = sc::bc_from_string(s_bc);
            const sc::SpectrumTable t(sd.domain(), bc, grid.back(), knobs_from(cfg), g.threads);
            Table tb({"mu", "method", "value", "main_d", "main_b", "remainder"},
                     {{"cmd", "count spectrum"}, {"domain", sd.to_json()}, {"bc", s_bc}, {"grid", grid}});
            for (const sc::CountResult& r : t.remainder_series(grid))
                tb.row({num(r.mu), r.method, num(r.value), num(r.main_d), num(r.main_b), num(r.remainder)});
            tb.emit(g, "count_spectrum");
            return kExitOk;
        };
    });

    DomainArgs ld;
    std::string l_bc = "dirichlet", l_method = "direct", l_slope;
    double l_mu = 0.0;
    int l_l = 0;
    std::optional<double> l_c;
    auto* cl = cnt->add_subcommand("lattice", "shifted lattice count Q_l");
    add_domain(cl, ld);
    cl->add_option("--bc", l_bc, "sets c = 1/4 (dirichlet) or 3/4 (neumann)")->capture_default_str();
    cl->add_option("--mu", l_mu)->required();
    cl->add_option("--l", l_l)->capture_default_str();
    cl->add_option("--c", l_c, "explicit shift in [0,1)");
    cl->add_option("--method", l_method, "direct | formula")->check(CLI::IsMember({"direct", "formula"}));
    cl->add_option("--rational", l_slope, "a/q for the line path");
    cl->callback([&] {
        action = [&] {
            const sc::ShellDomain dom = ld.domain();
            const double c = l_c.value_or(sc::shift_for(sc::bc_from_string(l_bc)));
            Table tb({"mu", "method", "value", "area", "linear", "psi_sum", "remainder"},
                     {{"cmd", "count lattice"}, {"domain", ld.to_json()}, {"c", c}, {"l", l_l}, {"mu", l_mu},
                      {"method", l_method}, {"rational", l_slope}});
            const double area = sc::lattice_area(dom, l_mu, l_l);
            if (l_method == "direct") {
                const long long v = sc::q_count_direct(dom, l_mu, c, l_l);
                tb.row({num(l_mu), "direct", std::to_string(v), num(area), "", "", num(v - area)});
            } else {
                const sc::QFormula f = sc::q_count_formula(dom, l_mu, c, l_l, parse_slope(l_slope));
                tb.row({num(l_mu), "formula:" + f.path, std::to_string(f.count), num(f.area), num(f.linear),
                        num(f.psi_sum), num(f.count - f.area)});
            }
            tb.emit(g, "count_lattice");
            return kExitOk;
        };
    });

    // psi-sum
    double p_T = 1e6;
    long long p_M = 1000;
    std::optional<long long> p_M2;
    std::string p_phase = "annulus";
    double p_const = std::numbers::sqrt2;
    auto* ps = app.add_subcommand("psi-sum", "rounding-error sum sum psi((T/M) F(m/M))");
    ps->add_option("--T", p_T)->capture_default_str();
    ps->add_option("--M", p_M)->capture_default_str();
    ps->add_option("--M2", p_M2, "default 2M - 1");
    ps->add_option("--phase", p_phase, "annulus | const")->check(CLI::IsMember({"annulus", "const"}));
    ps->add_option("--const", p_const, "value for the constant phase");
    ps->callback([&] {
        action = [&] {
            const long long M2 = p_M2.value_or(2 * p_M - 1);
            sc::SawtoothSum s;
            if (p_phase == "annulus") {
                const sc::AnnulusHPhase ph(sc::ShellDomain{10.0, 20.0, 2}, p_T, p_M, 0.25);
                s = sc::rounding_error_sum(p_T, p_M, M2, ph, "annulus-H(10,20)");
            } else {
                s = sc::rounding_error_sum(p_T, p_M, M2, [&](double) { return p_const; }, "const");
            }
            Table tb({"T", "M", "M2", "phase", "value", "T_pow_0.35", "in_range"},
                     {{"cmd", "psi-sum"}, {"T", p_T}, {"M", p_M}, {"M2", M2}, {"phase", p_phase}, {"const", p_const}});
            tb.row({num(s.T), std::to_string(s.M), std::to_string(s.M2), s.phase_id, num(s.value),
                    num(std::pow(s.T, 0.35)), s.in_range ? "1" : "0"});
            tb.emit(g, "psi_sum");
            return kExitOk;
        };
    });

    // census
    DomainArgs cd;
    double c_nu = 0.0, c_delta = 0.0;
    int c_s = 2;
    auto* ce = app.add_subcommand("census", "argument-principle zero count of ht");
    add_domain(ce, cd);
    ce->add_option("--nu", c_nu)->capture_default_str();
    ce->add_option("--delta", c_delta)->capture_default_str();
    ce->add_option("--s", c_s)->capture_default_str();
    ce->callback([&] {
        action = [&] {
            const sc::ZeroFinder zf(cd.domain());
            const sc::CensusResult r = zf.census(c_nu, c_delta, c_s);
            Table tb({"nu", "delta", "s", "radius", "winding_number", "winding_count", "real_zero_count", "samples"},
                     {{"cmd", "census"}, {"domain", cd.to_json()}, {"nu", c_nu}, {"delta", c_delta}, {"s", c_s}});
            tb.row({num(c_nu), num(c_delta), std::to_string(r.s), num(r.radius), std::to_string(r.winding_number),
                    std::to_string(r.winding_count), std::to_string(r.real_zero_count), std::to_string(r.samples)});
            tb.emit(g, "census");
            return kExitOk;
        };
    });

    // experiment
    auto* ex = app.add_subcommand("experiment", "remainder sweep from --config, with scaling fits");
    ex->callback([&] {
        action = [&] {
            if (g.config_path.empty()) throw validation_error("experiment: --config is required");
            const json cfg = load_config(g);
            if (!cfg.contains("domain")) throw validation_error("config.domain: missing");
            const json& dj = cfg["domain"];
            DomainArgs da;
            da.d = dj.value("d", 2);
            da.r = dj.value("r", 0.0);
            da.R = dj.value("R", 1.0);
            const sc::ShellDomain dom = da.domain();
            const sc::BC bc = sc::bc_from_string(cfg.value("bc", std::string("dirichlet")));
            if (!cfg.contains("grid")) throw validation_error("config.grid: missing");
            const std::vector<double> grid = grid_from_config(cfg["grid"]);
            const sc::RegimeKnobs knobs = knobs_from(cfg);
            const int bins = cfg.value("fit_bins", 20);
            const bool lattice = cfg.value("lattice", false);
            const std::string stem = cfg.value("stem", std::string("experiment"));

            const sc::SpectrumTable t(dom, bc, grid.back(), knobs, g.threads);
            std::vector<std::string> cols{"mu", "method", "value", "main_d", "main_b", "remainder"};
            json conf = cfg;
            conf["seed"] = g.seed;
            Table tb(cols, conf);
            const std::vector<sc::CountResult> series = t.remainder_series(grid);
            std::vector<double> xs, ys, qx, qy, by;
            for (const sc::CountResult& r : series) {
                tb.row({num(r.mu), r.method, num(r.value), num(r.main_d), num(r.main_b), num(r.remainder)});
                xs.push_back(r.mu);
                ys.push_back(std::fabs(r.remainder));
                if (lattice) {
                    const sc::WeightedTotals w = sc::weighted_totals(t, r.mu);
                    const double main = r.main_d + r.main_b;
                    const sc::WeylTerms qm = sc::q_omega_terms(dom, bc, r.mu);
                    tb.row({num(r.mu), "lattice_Q", std::to_string(w.q_omega), num(qm.main_d), num(qm.main_b),
                            num(w.q_omega - qm.main_d - qm.main_b)});
                    tb.row({num(r.mu), "lattice_P", std::to_string(w.p_omega), num(r.main_d), num(r.main_b),
                            num(w.p_omega - main)});
                    tb.row({num(r.mu), "lattice_Q_minus_band", std::to_string(w.q_omega - w.band_total), num(r.main_d),
                            num(r.main_b), num(w.q_omega - w.band_total - main)});
                    qx.push_back(r.mu);
                    qy.push_back(std::fabs(w.q_omega - qm.main_d - qm.main_b));
                    by.push_back(std::fabs(w.q_omega - w.band_total - main));
                }
            }
            auto fit_json = [](const sc::ScalingFit& f) {
                return json{{"exponent", f.exponent}, {"intercept", f.intercept}, {"r_squared", f.r_squared},
                            {"n_points", f.n_points}};
            };
            json fits = json::object();
            if (series.size() >= 5) {
                fits["remainder_pointwise"] = fit_json(sc::fit_loglog(xs, ys));
                if (series.size() >= static_cast<std::size_t>(bins))
                    fits["remainder_envelope"] = fit_json(sc::fit_envelope(series, bins));
                if (lattice) {
                    fits["lattice_Q_remainder"] = fit_json(sc::fit_loglog(qx, qy));
                    fits["lattice_Q_minus_band_remainder"] = fit_json(sc::fit_loglog(qx, by));
                }
            }
            tb.summary()["fits"] = fits;
            tb.emit(g, stem);
            return kExitOk;
        };
    });

    // acceptance
    std::vector<std::string> a_only;
    std::optional<double> a_V, a_c, a_eps;
    std::optional<int> a_K;
    auto* ac = app.add_subcommand("acceptance", "run the acceptance criteria");
    ac->add_option("--only", a_only, "criterion names or numbers");
    ac->add_option("--V", a_V, "override knob V");
    ac->add_option("--K", a_K, "override knob K");
    ac->add_option("--c", a_c, "override knob c");
    ac->add_option("--eps", a_eps, "override knob eps");
    ac->callback([&] {
        action = [&] {
            const json cfg = load_config(g);
            sc::AcceptanceOptions opt;
            opt.knobs = knobs_from(cfg);
            if (a_V) opt.knobs.V = *a_V;
            if (a_K) opt.knobs.K = *a_K;
            if (a_c) opt.knobs.c = *a_c;
            if (a_eps) opt.knobs.eps = *a_eps;
            opt.seed = g.seed;
            opt.threads = g.threads;
            opt.only.insert(a_only.begin(), a_only.end());
            Table tb({"id", "name", "passed", "seconds", "limit_seconds", "detail"},
                     {{"cmd", "acceptance"},
                      {"knobs", {{"c", opt.knobs.c}, {"eps", opt.knobs.eps}, {"V", opt.knobs.V}, {"K", opt.knobs.K}}},
                      {"seed", g.seed},
                      {"only", a_only}});
            bool all = true;
            const auto results = sc::run_acceptance(opt, [&](const sc::CriterionResult& r) {
                std::printf("[%s] %2d %-14s %9.3fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                            r.detail.c_str());
                std::fflush(stdout);
            });
            json list = json::array();
            for (const auto& r : results) {
                all = all && r.passed;
                tb.row({std::to_string(r.id), r.name, r.passed ? "1" : "0", num(r.seconds), num(r.limit_seconds), r.detail});
                list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"metrics", r.metrics}});
            }
            if (results.empty()) throw validation_error("acceptance: --only matched no criterion");
            tb.summary()["results"] = list;
            tb.summary()["seed"] = g.seed;
            if (!g.out_dir.empty()) tb.emit(g, "acceptance");
            return all ? kExitOk : kExitAcceptance;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }
    try {
        return action ? action() : kExitValidation;
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const sc::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const sc::out_of_regime& e) {
        std::cerr << "out of regime: " << e.what() << "\n";
        return kExitValidation;
    } catch (const sc::cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}
