// Command-line front end: verification suite, point-wise queries,
// sampling, and figure emission.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "ffgraph/checks.hpp"
#include "ffgraph/group.hpp"

using namespace ffgraph;
using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    ModelParams params;
    ToleranceConfig tol;
};

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known) throw ConfigError("unknown key \"" + key + "\" in " + where);
    }
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    reject_unknown(j, {"S", "epsilon", "delta", "samples", "seed", "tolerances"}, "config");
    if (j.contains("S")) {
        reject_unknown(j["S"], {"coeffs"}, "config.S");
        for (const auto& term : j["S"].value("coeffs", json::array())) {
            if (!term.is_array() || term.size() != 3)
                throw ConfigError("config.S.coeffs entries must be [i, j, value]");
            cfg.params.invariant.add_term(term[0].get<int>(), term[1].get<int>(),
                                          term[2].get<double>());
        }
    }
    cfg.params.epsilon = j.value("epsilon", cfg.params.epsilon);
    cfg.params.delta = j.value("delta", cfg.params.delta);
    cfg.tol.samples = j.value("samples", cfg.tol.samples);
    cfg.tol.seed = j.value("seed", cfg.tol.seed);
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        reject_unknown(t, {"fd_step", "form_tol", "alg_tol", "rank_tol"}, "config.tolerances");
        cfg.tol.fd_step = t.value("fd_step", cfg.tol.fd_step);
        cfg.tol.form_tol = t.value("form_tol", cfg.tol.form_tol);
        cfg.tol.alg_tol = t.value("alg_tol", cfg.tol.alg_tol);
        cfg.tol.rank_tol = t.value("rank_tol", cfg.tol.rank_tol);
    }
    return cfg;
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ConfigError("bad number \"" + s + "\"");
    return v;
}

// complex syntax "re,im"
Complex parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ConfigError("complex value must be \"re,im\", got \"" + s + "\"");
    return {parse_real(s.substr(0, comma)), parse_real(s.substr(comma + 1))};
}

// point syntax "re,im;re,im" for (p, q)
PointC2 parse_point(const std::string& s) {
    const auto semi = s.find(';');
    if (semi == std::string::npos)
        throw ConfigError("point must be \"p_re,p_im;q_re,q_im\", got \"" + s + "\"");
    return {parse_complex(s.substr(0, semi)), parse_complex(s.substr(semi + 1))};
}

std::string format_complex(Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", z.real(), z.imag());
    return buf;
}

std::string format_point(const PointC2& pt) {
    return format_complex(pt.p) + ";" + format_complex(pt.q);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    return out;
}

int cmd_verify(const RunConfig& cfg, const std::string& out_path) {
    cfg.params.validate();
    const auto reports = run_suite(cfg.params, cfg.tol);
    json suite = json::array();
    for (const CheckReport& r : reports) {
        suite.push_back({{"check", r.check_id},
                         {"samples", r.samples},
                         {"max_error", r.max_error},
                         {"threshold", r.threshold},
                         {"pass", r.pass},
                         {"worst_input", r.worst_input}});
        std::printf("%-26s %s  max_error=%.3g threshold=%.3g\n", r.check_id.c_str(),
                    r.pass ? "pass" : "FAIL", r.max_error, r.threshold);
    }
    const bool ok = all_pass(reports);
    const json report = {{"suite", suite}, {"pass", ok}};
    if (!out_path.empty())
        open_out(out_path) << report.dump(2) << "\n";
    std::printf("suite: %s\n", ok ? "pass" : "FAIL");
    return ok ? 0 : 1;
}

int cmd_sample(const RunConfig& cfg, std::size_t count, const std::string& out_path) {
    std::mt19937_64 rng(cfg.tol.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file = open_out(out_path);
        os = &file;
    }
    *os << "fiber_re,fiber_im,p_re,p_im,q_re,q_im\n";
    Complex b;
    for (std::size_t n = 0; n < count; ++n) {
        // consecutive rows pair up on the same fiber
        if (n % 2 == 0)
            b = std::polar(cfg.params.epsilon * (0.1 + 0.8 * u01(rng)),
                           kTwoPi * (u01(rng) - 0.5));
        const double period = travel_time(b, cfg.params).t1;
        const TimePair t{-period * (0.05 + 0.9 * u01(rng)), kTwoPi * u01(rng)};
        const PointC2 pt =
            normalize(flow(section(SectionKind::SigmaS, b, cfg.params), t), cfg.params).pt;
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", b.real(),
                      b.imag(), pt.p.real(), pt.p.imag(), pt.q.real(), pt.q.imag());
        *os << buf;
    }
    return 0;
}

int cmd_figure(const RunConfig& cfg, const std::string& kind,
               const std::vector<double>& fibers, const std::string& out_path,
               const std::string& svg_path) {
    if (kind != "pq-projection")
        throw ConfigError("unknown figure kind \"" + kind + "\"");
    const double es1 = std::exp(cfg.params.s1(Complex{}));
    const double ed = std::exp(cfg.params.delta);
    struct Curve {
        std::string id;
        std::vector<std::pair<double, double>> pts;  // (|p|, |q|)
    };
    std::vector<Curve> curves;
    for (double f : fibers) {
        Curve c;
        c.id = "fiber_" + std::to_string(f);
        // level curve |p||q| = f across the X' window
        const double qmin = f / (es1 * ed), qmax = 1.0;
        for (int k = 0; k <= 200; ++k) {
            const double q = qmin * std::pow(qmax / qmin, k / 200.0);
            c.pts.push_back({f / q, q});
        }
        curves.push_back(std::move(c));
    }
    {
        Curve c{"sigma1_boundary", {}};
        for (int k = 0; k <= 100; ++k)
            c.pts.push_back({es1 * ed * k / 100.0, 1.0});  // |q| = 1 segment
        curves.push_back(std::move(c));
    }
    {
        Curve c{"sigma2_boundary", {}};
        for (int k = 0; k <= 100; ++k)
            c.pts.push_back({es1, static_cast<double>(k) / 100.0});  // |p| = e^{S1} arc
        curves.push_back(std::move(c));
    }

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file = open_out(out_path);
        os = &file;
    }
    *os << "curve_id,|p|,|q|\n";
    for (const Curve& c : curves)
        for (const auto& [p, q] : c.pts) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g\n", c.id.c_str(), p, q);
            *os << buf;
        }

    if (!svg_path.empty()) {
        std::ofstream svg = open_out(svg_path);
        const double scale = 300.0, pad = 20.0;
        const double pmax = es1 * ed;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"360\" height=\"360\" "
               "viewBox=\"0 0 360 360\">\n";
        for (const Curve& c : curves) {
            svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
            for (const auto& [p, q] : c.pts)
                svg << pad + scale * q / 1.1 << "," << pad + scale * (1.0 - p / (1.1 * pmax))
                    << " ";
            svg << "\"/>\n";
        }
        svg << "</svg>\n";
    }
    return 0;
}

int cmd_recover(const RunConfig& cfg, int grid, const std::string& out_path) {
    std::ostream* os = nullptr;
    std::ofstream file;
    if (!out_path.empty()) {
        file = open_out(out_path);
        os = &file;
        *os << "b_re,b_im,s1,s2,s1_expected,s2_expected\n";
    }
    double worst = 0.0;
    for (int ir = 1; ir <= grid; ++ir) {
        for (int ia = 0; ia < grid; ++ia) {
            const Complex b = std::polar(0.9 * cfg.params.epsilon * ir / grid,
                                         kTwoPi * ia / grid);
            const auto [s1, s2] = recover_partials(b, cfg.params);
            worst = std::max({worst, std::abs(s1 - cfg.params.s1(b)),
                              std::abs(s2 - cfg.params.s2(b))});
            if (os) {
                char buf[256];
                std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                              b.real(), b.imag(), s1, s2, cfg.params.s1(b),
                              cfg.params.s2(b));
                *os << buf;
            }
        }
    }
    std::printf("max deviation from configured partials: %.3g\n", worst);
    return worst <= 1e-6 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"focus-focus neighborhood model: addition law, graph atlas, verification"};
    app.require_subcommand(1);

    std::string config_path, out_path, svg_path;
    std::optional<std::uint64_t> seed_override;
    app.add_option("--config", config_path, "config JSON path")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run the full check suite");
    verify->add_option("--out", out_path, "report JSON path");
    verify->add_option("--seed", seed_override, "override the config seed");

    std::string xs, ys, zs;
    auto* add_cmd = app.add_subcommand("add", "fiberwise addition of two points");
    add_cmd->add_option("--x", xs, "first point \"p_re,p_im;q_re,q_im\"")->required();
    add_cmd->add_option("--y", ys, "second point")->required();

    auto* inv_cmd = app.add_subcommand("inverse", "fiberwise inverse of a point");
    inv_cmd->add_option("--x", xs, "point \"p_re,p_im;q_re,q_im\"")->required();

    auto* locate_cmd = app.add_subcommand("locate", "charts containing a graph triple");
    locate_cmd->add_option("--x", xs, "first summand")->required();
    locate_cmd->add_option("--y", ys, "second summand")->required();
    locate_cmd->add_option("--z", zs, "sum")->required();

    std::size_t count = 10;
    auto* sample_cmd = app.add_subcommand("sample", "sample canonical points (same-fiber pairs)");
    sample_cmd->add_option("--count", count, "number of points");
    sample_cmd->add_option("--seed", seed_override, "override the config seed");
    sample_cmd->add_option("--out", out_path, "CSV path (default stdout)");

    std::string kind = "pq-projection";
    std::vector<double> fibers;
    auto* figure_cmd = app.add_subcommand("figure", "emit (|p|,|q|)-projection curves");
    figure_cmd->add_option("--kind", kind, "figure kind (pq-projection)");
    figure_cmd->add_option("--fibers", fibers, "fiber moduli for level curves")
        ->delimiter(',');
    figure_cmd->add_option("--out", out_path, "CSV path (default stdout)");
    figure_cmd->add_option("--svg", svg_path, "optional SVG rendering path");

    int grid = 10;
    auto* recover_cmd =
        app.add_subcommand("recover-s", "recover invariant partials from measured periods");
    recover_cmd->add_option("--grid", grid, "grid size per dimension");
    recover_cmd->add_option("--out", out_path, "CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg = load_config(config_path);
        if (seed_override) cfg.tol.seed = *seed_override;

        if (verify->parsed()) return cmd_verify(cfg, out_path);
        if (add_cmd->parsed()) {
            const CanonicalPoint x = normalize(parse_point(xs), cfg.params);
            const CanonicalPoint y = normalize(parse_point(ys), cfg.params);
            std::printf("%s\n", format_point(add(x, y, cfg.params).pt).c_str());
            return 0;
        }
        if (inv_cmd->parsed()) {
            const CanonicalPoint x = normalize(parse_point(xs), cfg.params);
            std::printf("%s\n", format_point(inverse(x, cfg.params).pt).c_str());
            return 0;
        }
        if (locate_cmd->parsed()) {
            const GraphPoint gp{normalize(parse_point(xs), cfg.params),
                                normalize(parse_point(ys), cfg.params),
                                normalize(parse_point(zs), cfg.params)};
            for (const ChartLocation& loc : locate(gp, cfg.params))
                std::printf("%s %s %s %s\n", chart_name(loc.chart),
                            format_complex(loc.coords[0]).c_str(),
                            format_complex(loc.coords[1]).c_str(),
                            format_complex(loc.coords[2]).c_str());
            return 0;
        }
        if (sample_cmd->parsed()) return cmd_sample(cfg, count, out_path);
        if (figure_cmd->parsed()) return cmd_figure(cfg, kind, fibers, out_path, svg_path);
        if (recover_cmd->parsed()) return cmd_recover(cfg, grid, out_path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
