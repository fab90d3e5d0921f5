#include "ffgraph/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ffgraph/verify.hpp"

namespace ffgraph {

namespace {

constexpr double kOracleTol = 1e-9;
constexpr double kTransitionTol = 1e-11;
constexpr double kTubularGlueTol = 1e-12;
constexpr double kSingularLimitTol = 1e-3;
constexpr double kDoublePointSvTol = 1e-12;
constexpr double kInjectivitySeparation = 1e-9;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double unif(double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(rng_);
    }

    double log_unif(double a, double b) {
        return std::exp(unif(std::log(a), std::log(b)));
    }

    Complex on_circle(double r) { return std::polar(r, unif(-kTwoPi / 2.0, kTwoPi / 2.0)); }

    Complex annulus(double rmin, double rmax) { return on_circle(unif(rmin, rmax)); }

    Complex regular_fiber(const ModelParams& params) {
        return annulus(0.1 * params.epsilon, 0.9 * params.epsilon);
    }

    /// Canonical point on the regular fiber b, kept a margin away from
    /// the formal-domain boundaries.
    CanonicalPoint fiber_point(Complex b, const ModelParams& params, double margin = 0.05) {
        const double period = travel_time(b, params).t1;
        const TimePair t{-unif(margin * period, (1.0 - margin) * period),
                         unif(0.0, kTwoPi)};
        return normalize(flow(section(SectionKind::SigmaS, b, params), t), params);
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

struct PartTracker {
    double worst_ratio = 0.0;
    double worst_abs = 0.0;
    std::vector<double> worst_input;
    std::string worst_part;

    void record(const std::string& part, double err, double tol_part,
                const std::vector<double>& input) {
        const double ratio = tol_part > 0.0 ? err / tol_part : (err > 0.0 ? 2.0 : 0.0);
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_abs = err;
            worst_input = input;
            worst_part = part;
        }
    }
};

std::vector<double> point_input(const PointC2& pt) {
    const Vec4 v = to_real(pt);
    return {v[0], v[1], v[2], v[3]};
}

std::vector<double> pair_input(const PointC2& a, const PointC2& b) {
    auto v = point_input(a);
    const auto w = point_input(b);
    v.insert(v.end(), w.begin(), w.end());
    return v;
}

std::vector<double> coords_input(const Coords3& c) {
    return {c[0].real(), c[0].imag(), c[1].real(), c[1].imag(), c[2].real(), c[2].imag()};
}

CheckReport make_report(const std::string& id, std::size_t samples, double max_error,
                        double threshold, const std::vector<double>& worst,
                        const std::string& note = {}) {
    CheckReport r;
    r.check_id = id;
    r.samples = samples;
    r.max_error = max_error;
    r.threshold = threshold;
    r.pass = max_error <= threshold;
    r.worst_input = worst;
    r.note = note;
    return r;
}

Eigen::VectorXd vec12_to_eigen(const Vec12& v) {
    Eigen::VectorXd out(12);
    for (int k = 0; k < 12; ++k) out[k] = v[k];
    return out;
}

Vec12 eigen_to_vec12(const Eigen::VectorXd& v) {
    Vec12 out{};
    for (int k = 0; k < 12; ++k) out[k] = v[k];
    return out;
}

// ---------------------------------------------------------------------
// chart-domain sampling

Coords3 sample_chart(GraphChartId id, Sampler& smp, const ModelParams& params) {
    const double es0 = std::exp(params.s1(Complex{}));
    const double band_lo = -0.85 * params.delta, band_hi = 0.85 * params.delta;
    for (int attempt = 0; attempt < 20000; ++attempt) {
        double ma, mb, mc;
        switch (id) {
            case GraphChartId::E1: {
                ma = smp.log_unif(0.05, 0.85 * std::min(1.0, es0) + 1e-9);
                mb = smp.log_unif(0.05, 0.85 * std::min(1.0, es0) + 1e-9);
                const double cap = std::min(0.85 / es0, 0.8 * params.epsilon / (ma * mb));
                mc = smp.log_unif(0.01 * cap, cap);
                break;
            }
            case GraphChartId::E2: {
                ma = smp.log_unif(0.05, 0.85);
                mb = smp.log_unif(0.05, 0.85);
                const double cap =
                    std::min(0.85 * es0, 0.8 * params.epsilon / (ma * mb));
                mc = smp.log_unif(0.01 * cap, cap);
                break;
            }
            case GraphChartId::E3: {
                ma = es0 * std::exp(smp.unif(band_lo, band_hi));
                mb = es0 * std::exp(smp.unif(band_lo, band_hi));
                const double cap = 0.8 * params.epsilon / (ma * mb);
                mc = smp.log_unif(0.01 * cap, cap);
                break;
            }
            case GraphChartId::E4: {
                mb = es0 * std::exp(smp.unif(band_lo, band_hi));
                ma = smp.log_unif(0.05, std::min(0.85, 0.85 / mb));
                const double cap = std::min({0.85, 0.85 / mb,
                                             0.8 * params.epsilon / (ma * mb)});
                mc = smp.log_unif(0.01 * cap, cap);
                break;
            }
            case GraphChartId::E5: {
                ma = es0 * std::exp(smp.unif(band_lo, band_hi));
                mb = smp.log_unif(0.05, std::min(0.85, 0.85 / ma));
                const double cap = std::min({0.85, 0.85 / ma,
                                             0.8 * params.epsilon / (ma * mb)});
                mc = smp.log_unif(0.01 * cap, cap);
                break;
            }
            case GraphChartId::E6: {
                mc = es0 * std::exp(smp.unif(band_lo, band_hi));
                ma = smp.log_unif(0.05, std::min(0.85, 0.85 * es0 / mc));
                const double cap = std::min({0.85, 0.85 * es0 / mc,
                                             0.8 * params.epsilon / (ma * mc)});
                mb = smp.log_unif(0.01 * cap, cap);
                break;
            }
            default:
                throw ModelError("sample_chart: bad chart");
        }
        const Coords3 coords{smp.on_circle(ma), smp.on_circle(mb), smp.on_circle(mc)};
        if (chart_contains_margin(id, coords, params, 0.1)) return coords;
    }
    throw ModelError("sample_chart: rejection sampling exhausted");
}

/// Sample from the E1/E6 gluing overlap (the printed E_16 region).
Coords3 sample_e16(Sampler& smp, const ModelParams& params) {
    const double es0 = std::exp(params.s1(Complex{}));
    for (int attempt = 0; attempt < 20000; ++attempt) {
        // E1 needs |c| < e^{-S1}; E6 needs 1/|c| in the gluing band
        const double lo = std::exp(-params.delta) * 1.05 / es0;
        const double hi = 0.95 / es0;
        if (lo >= hi) break;
        const double mc = smp.unif(lo, hi);
        const double cap = std::sqrt(0.8 * params.epsilon / mc);
        const double ma = smp.log_unif(0.01 * cap, std::min(cap, 0.6));
        const double mb = smp.log_unif(0.01 * cap, std::min(cap, 0.6));
        const Coords3 coords{smp.on_circle(ma), smp.on_circle(mb), smp.on_circle(mc)};
        if (chart_contains_margin(GraphChartId::E1, coords, params, 0.02) &&
            chart_contains(GraphChartId::E6, tubular_phi(coords), params))
            return coords;
    }
    throw ModelError("sample_e16: rejection sampling exhausted");
}

const std::array<GraphChartId, 6> kAllCharts = {GraphChartId::E1, GraphChartId::E2,
                                                GraphChartId::E3, GraphChartId::E4,
                                                GraphChartId::E5, GraphChartId::E6};

// ---------------------------------------------------------------------
// individual checks

CheckReport check_flow_field(const ModelParams& params, const ToleranceConfig& tol,
                             const CheckKnobs&) {
    Sampler smp(tol.seed ^ fnv1a("flow_field"));
    double worst = 0.0;
    std::vector<double> worst_input;
    for (std::size_t n = 0; n < tol.samples; ++n) {
        const CanonicalPoint x = smp.fiber_point(smp.regular_fiber(params), params);
        for (int dir = 0; dir < 2; ++dir) {
            const Eigen::Vector4d field =
                hamiltonian_vector_field(x.pt, dir, tol.fd_step);
            Vec4 err{};
            const TimePair hi{dir == 0 ? tol.fd_step : 0.0, dir == 1 ? tol.fd_step : 0.0};
            const TimePair lo{-hi.t1, -hi.t2};
            const Vec4 fh = to_real(flow(x.pt, hi));
            const Vec4 fl = to_real(flow(x.pt, lo));
            for (int k = 0; k < 4; ++k)
                err[k] = (fh[k] - fl[k]) / (2.0 * tol.fd_step) - field[k];
            for (int k = 0; k < 4; ++k) {
                if (std::abs(err[k]) > worst) {
                    worst = std::abs(err[k]);
                    worst_input = point_input(x.pt);
                }
            }
        }
    }
    return make_report("flow_field", tol.samples, worst, 1e-6, worst_input);
}

CheckReport check_liouville_pullback(const ModelParams& params, const ToleranceConfig& tol,
                                     const CheckKnobs&) {
    Sampler smp(tol.seed ^ fnv1a("liouville_pullback"));
    const Eigen::Matrix4d target = omega_matrix();  // sum db_i ^ dt_i
    double worst = 0.0;
    std::vector<double> worst_input;
    const RealMap psi = [&](const Eigen::VectorXd& u) {
        const PointC2 pt = liouville(SectionKind::SigmaS, Complex(u[0], u[1]),
                                     TimePair{u[2], u[3]}, params);
        const Vec4 v = to_real(pt);
        return Eigen::Vector4d(v[0], v[1], v[2], v[3]).eval();
    };
    for (std::size_t n = 0; n < tol.samples; ++n) {
        const Complex b = smp.annulus(0.2 * params.epsilon, 0.85 * params.epsilon);
        Eigen::VectorXd u(4);
        u << b.real(), b.imag(), smp.unif(0.0, params.delta), smp.unif(0.0, kTwoPi);
        const Eigen::MatrixXd jac = jacobian(psi, u, tol.fd_step);
        const Eigen::Matrix4d pulled = jac.transpose() * omega_matrix() * jac;
        const double err = (pulled - target).cwiseAbs().maxCoeff();
        if (err > worst) {
            worst = err;
            worst_input = {u[0], u[1], u[2], u[3]};
        }
    }
    return make_report("liouville_pullback", tol.samples, worst, 1e-5, worst_input);
}

CheckReport check_section_lagrangian(const ModelParams& params, const ToleranceConfig& tol,
                                     const CheckKnobs&) {
    Sampler smp(tol.seed ^ fnv1a("section_lagrangian"));
    double worst = 0.0;
    std::vector<double> worst_input;
    const RealMap sec = [&](const Eigen::VectorXd& u) {
        const Vec4 v = to_real(section(SectionKind::Sigma1, Complex(u[0], u[1]), params));
        return Eigen::Vector4d(v[0], v[1], v[2], v[3]).eval();
    };
    for (std::size_t n = 0; n < tol.samples; ++n) {
        const Complex b = smp.annulus(0.0, 0.85 * params.epsilon);
        Eigen::VectorXd u(2);
        u << b.real(), b.imag();
        const Eigen::MatrixXd jac = jacobian(sec, u, tol.fd_step);
        Vec4 c0{}, c1{};
        for (int k = 0; k < 4; ++k) {
            c0[k] = jac(k, 0);
            c1[k] = jac(k, 1);
        }
        const double err = std::abs(omega(c0, c1));
        if (err > worst) {
            worst = err;
            worst_input = {u[0], u[1]};
        }
    }
    return make_report("section_lagrangian", tol.samples, worst, 1e-6, worst_input);
}

CheckReport check_deck_symplectic(const ModelParams& params, const ToleranceConfig& tol,
                                  const CheckKnobs&) {
    Sampler smp(tol.seed ^ fnv1a("deck_symplectic"));
    double worst = 0.0;
    std::vector<double> worst_input;
    const auto deck_map = [&](DeckDirection dir) {
        return RealMap([&params, dir](const Eigen::VectorXd& u) {
            const Vec4 v = to_real(
                deck(from_real({u[0], u[1], u[2], u[3]}), dir, params));
            return Eigen::Vector4d(v[0], v[1], v[2], v[3]).eval();
        });
    };
    for (std::size_t n = 0; n < tol.samples; ++n) {
        const Complex b = smp.regular_fiber(params);
        // a D+ strip point (|q| just below 1) and its U+ partner
        const double period = travel_time(b, params).t1;
        const double t1 = -period + smp.unif(0.05 * params.delta,
                                             std::min(0.9 * params.delta, 0.9 * period));
        const PointC2 x =
            flow(section(SectionKind::SigmaS, b, params), {t1, smp.unif(0.0, kTwoPi)});
        const PointC2 up = deck(x, DeckDirection::Up, params);
        for (const auto& [pt, dir] :
             {std::pair{x, DeckDirection::Up}, std::pair{up, DeckDirection::Down}}) {
            const Vec4 v = to_real(pt);
            Eigen::VectorXd u(4);
            u << v[0], v[1], v[2], v[3];
            const Eigen::MatrixXd jac = jacobian(deck_map(dir), u, tol.fd_step);
            const Eigen::Matrix4d pulled = jac.transpose() * omega_matrix() * jac;
            const double err = (pulled - omega_matrix()).cwiseAbs().maxCoeff();
            if (err > worst) {
                worst = err;
                worst_input = point_input(pt);
            }
        }
    }
    return make_report("deck_symplectic", tol.samples, worst, 1e-5, worst_input);
}

CheckReport check_group_laws(const ModelParams& params, const ToleranceConfig& tol,
                             const CheckKnobs& knobs) {
    Sampler smp(tol.seed ^ fnv1a("group_laws"));
    PartTracker tracker;
    const TrivializationMatrix identity;

    const auto maybe_biased_add = [&](const CanonicalPoint& x, const CanonicalPoint& y) {
        if (knobs.add1_s1_bias == 0.0) return add(x, y, params);
        const SelectionBranch branch = select_branch(x, y, params);
        return normalize(
            detail::add_formal_biased(x, y, branch, params, knobs.add1_s1_bias), params);
    };

    for (std::size_t n = 0; n < tol.samples; ++n) {
        const Complex b = smp.regular_fiber(params);
        const CanonicalPoint x = smp.fiber_point(b, params);
        const CanonicalPoint y = smp.fiber_point(b, params);
        const CanonicalPoint z = smp.fiber_point(b, params);
        const CanonicalPoint id = normalize(section(SectionKind::SigmaS, b, params), params);

        tracker.record("identity", quotient_distance(add(x, id, params).pt, x.pt, params),
                       tol.alg_tol, point_input(x.pt));
        tracker.record("inverse",
                       quotient_distance(add(x, inverse(x, params), params).pt, id.pt, params),
                       tol.alg_tol, point_input(x.pt));
        tracker.record("commutativity",
                       quotient_distance(add(x, y, params).pt, add(y, x, params).pt, params),
                       tol.alg_tol, pair_input(x.pt, y.pt));
        tracker.record(
            "associativity",
            quotient_distance(add(add(x, y, params), z, params).pt,
                              add(x, add(y, z, params), params).pt, params),
            tol.alg_tol, pair_input(x.pt, y.pt));
        tracker.record(
            "oracle",
            quotient_distance(maybe_biased_add(x, y).pt,
                              add_via_liouville(x, y, identity, params).pt, params),
            kOracleTol, pair_input(x.pt, y.pt));
    }

    // singular-fiber regular points via the C* model
    const std::size_t singular_samples = tol.samples / 4;
    for (std::size_t n = 0; n < singular_samples; ++n) {
        const CanonicalPoint x{cstar_to_fiber(smp.annulus(0.2, 5.0), params)};
        const CanonicalPoint y{cstar_to_fiber(smp.annulus(0.2, 5.0), params)};
        const CanonicalPoint z{cstar_to_fiber(smp.annulus(0.2, 5.0), params)};
        tracker.record("singular_commutativity",
                       quotient_distance(add(x, y, params).pt, add(y, x, params).pt, params),
                       tol.alg_tol, pair_input(x.pt, y.pt));
        tracker.record(
            "singular_associativity",
            quotient_distance(add(add(x, y, params), z, params).pt,
                              add(x, add(y, z, params), params).pt, params),
            tol.alg_tol, pair_input(x.pt, y.pt));
        tracker.record("singular_inverse",
                       quotient_distance(add(x, inverse(x, params), params).pt,
                                         cstar_to_fiber(Complex(1.0, 0.0), params), params),
                       tol.alg_tol, point_input(x.pt));
    }

    return make_report("group_laws", tol.samples, tracker.worst_ratio, 1.0,
                       tracker.worst_input, "worst part: " + tracker.worst_part);
}

CheckReport check_selection_exclusive(const ModelParams& params, const ToleranceConfig& tol,
                                      const CheckKnobs&) {
    Sampler smp(tol.seed ^ fnv1a("selection_exclusive"));
    double exceptions = 0.0;
    std::vector<double> worst_input;
    for (std::size_t n = 0; n < tol.samples; ++n) {
        const Complex b = smp.regular_fiber(params);
        const CanonicalPoint x = smp.fiber_point(b, params, 0.02);
        const CanonicalPoint y = smp.fiber_point(b, params, 0.02);
        int in_domain = 0;
        for (SelectionBranch branch : {SelectionBranch::SigmaOne, SelectionBranch::SigmaTwo})
            if (in_formal_domain(add_formal(x, y, branch, params), params)) ++in_domain;
        if (in_domain != 1) {
            exceptions += 1.0;
            worst_input = pair_input(x.pt, y.pt);
        }
    }
    return make_report("selection_exclusive", tol.samples, exceptions, 0.0, worst_input,
                       "exceptions counted as max_error");
}

CheckReport check_singular_continuity(const ModelParams& params, const ToleranceConfig& tol,
                                      const CheckKnobs&) {
    Sampler smp(tol.seed ^ fnv1a("singular_continuity"));
    const double es0 = std::exp(params.s1(Complex{}));
    double worst = 0.0;
    std::vector<double> worst_input;
    const auto p_branch_near = [&](Complex p, Complex b) {
        return CanonicalPoint{PointC2{p, -b / std::conj(p)}};
    };
    const auto q_branch_near = [&](Complex q, Complex b) {
        return CanonicalPoint{PointC2{-std::conj(b) / std::conj(q), q}};
    };
    for (std::size_t n = 0; n < tol.samples; ++n) {
        const Complex b = smp.on_circle(1e-6);
        const Complex p1 = smp.annulus(0.15, 0.8 * es0);
        const Complex p2 = smp.annulus(0.15, 0.8 * es0);
        const Complex q1 = smp.annulus(0.15, 0.8);
        const Complex q2 = smp.annulus(0.15, 0.8);

        // p-branch plus p-branch
        {
            const CanonicalPoint limit =
                add({PointC2{p1, {}}}, {PointC2{p2, {}}}, params);
            const CanonicalPoint near =
                add(p_branch_near(p1, b), p_branch_near(p2, b), params);
            const double err = quotient_distance(limit.pt, near.pt, params);
            if (err > worst) {
                worst = err;
                worst_input = pair_input(PointC2{p1, {}}, PointC2{p2, {}});
            }
        }
        // q-branch plus q-branch
        {
            const CanonicalPoint limit =
                add({PointC2{{}, q1}}, {PointC2{{}, q2}}, params);
            const CanonicalPoint near =
                add(q_branch_near(q1, b), q_branch_near(q2, b), params);
            const double err = quotient_distance(limit.pt, near.pt, params);
            if (err > worst) {
                worst = err;
                worst_input = pair_input(PointC2{{}, q1}, PointC2{{}, q2});
            }
        }
        // mixed branch, kept away from the selection boundary
        {
            const Complex p = p1;
            Complex q = q1;
            if (std::abs(std::abs(p / q) - es0) < 0.1) continue;
            const CanonicalPoint limit = add({PointC2{p, {}}}, {PointC2{{}, q}}, params);
            const CanonicalPoint near =
                add(p_branch_near(p, b), q_branch_near(q, b), params);
            const double err = quotient_distance(limit.pt, near.pt, params);
            if (err > worst) {
                worst = err;
                worst_input = pair_input(PointC2{p, {}}, PointC2{{}, q});
            }
        }
    }
    return make_report("singular_continuity", tol.samples, worst, kSingularLimitTol,
                       worst_input);
}

CheckReport check_period_closure(const ModelParams& params, const ToleranceConfig& tol,
                                 const CheckKnobs&) {
    Sampler smp(tol.seed ^ fnv1a("period_closure"));
    double worst = 0.0;
    std::vector<double> worst_input;
    for (std::size_t n = 0; n < tol.samples; ++n) {
        const Complex b = smp.regular_fiber(params);
        const PointC2 looped =
            flow(section(SectionKind::Sigma2, b, params), travel_time(b, params));
        const PointC2 target = section(SectionKind::Sigma1, b, params);
        const double err = quotient_distance(looped, target, params);
        if (err > worst) {
            worst = err;
            worst_input = {b.real(), b.imag()};
        }
    }
    return make_report("period_closure", tol.samples, worst, 1e-9, worst_input);
}

CheckReport check_graph_lagrangian(const ModelParams& params, const ToleranceConfig& tol,
                                   const CheckKnobs& knobs) {
    Sampler smp(tol.seed ^ fnv1a("graph_lagrangian"));
    const std::size_t per_chart = std::min<std::size_t>(tol.samples, 200);
    double worst = 0.0;
    std::vector<double> worst_input;
    std::string worst_chart;
    for (GraphChartId id : kAllCharts) {
        const RealMap embed = [&](const Eigen::VectorXd& u) {
            const Coords3 c{Complex(u[0], u[1]), Complex(u[2], u[3]), Complex(u[4], u[5])};
            return vec12_to_eigen(chart_embed_raw(id, c, params));
        };
        for (std::size_t n = 0; n < per_chart; ++n) {
            const Coords3 coords = sample_chart(id, smp, params);
            Eigen::VectorXd u(6);
            u << coords[0].real(), coords[0].imag(), coords[1].real(), coords[1].imag(),
                coords[2].real(), coords[2].imag();
            const Eigen::MatrixXd jac = jacobian(embed, u, tol.fd_step);
            for (int i = 0; i < 6; ++i) {
                for (int j = i + 1; j < 6; ++j) {
                    const double err = std::abs(omega_tilde_signed(
                        eigen_to_vec12(jac.col(i)), eigen_to_vec12(jac.col(j)),
                        knobs.wtilde_signs));
                    if (err > worst) {
                        worst = err;
                        worst_input = coords_input(coords);
                        worst_chart = chart_name(id);
                    }
                }
            }
        }
    }
    return make_report("graph_lagrangian", 6 * per_chart, worst, tol.form_tol, worst_input,
                       "worst chart: " + worst_chart);
}

CheckReport check_graph_immersion(const ModelParams& params, const ToleranceConfig& tol,
                                  const CheckKnobs&) {
    Sampler smp(tol.seed ^ fnv1a("graph_immersion"));
    const std::size_t per_chart = std::min<std::size_t>(tol.samples, 200);
    double min_sv = std::numeric_limits<double>::infinity();
    std::vector<double> worst_input;
    for (GraphChartId id : kAllCharts) {
        const RealMap embed = [&](const Eigen::VectorXd& u) {
            const Coords3 c{Complex(u[0], u[1]), Complex(u[2], u[3]), Complex(u[4], u[5])};
            return vec12_to_eigen(chart_embed_raw(id, c, params));
        };
        for (std::size_t n = 0; n < per_chart; ++n) {
            const Coords3 coords = sample_chart(id, smp, params);
            Eigen::VectorXd u(6);
            u << coords[0].real(), coords[0].imag(), coords[1].real(), coords[1].imag(),
                coords[2].real(), coords[2].imag();
            const double sv = min_singular_value(jacobian(embed, u, tol.fd_step));
            if (sv < min_sv) {
                min_sv = sv;
                worst_input = coords_input(coords);
            }
        }
    }
    const double err = min_sv > 0.0 ? tol.rank_tol / min_sv : 2.0;
    return make_report("graph_immersion", 6 * per_chart, err, 1.0, worst_input,
                       "max_error = rank_tol / smallest singular value");
}

CheckReport check_double_point(const ModelParams& params, const ToleranceConfig& tol,
                               const CheckKnobs&) {
    PartTracker tracker;
    const auto embed_map = [&](GraphChartId id) {
        return RealMap([&params, id](const Eigen::VectorXd& u) {
            const Coords3 c{Complex(u[0], u[1]), Complex(u[2], u[3]), Complex(u[4], u[5])};
            return vec12_to_eigen(chart_embed_raw(id, c, params));
        });
    };
    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(6);
    const Eigen::MatrixXd j1 = jacobian(embed_map(GraphChartId::E1), origin, tol.fd_step);
    const Eigen::MatrixXd j2 = jacobian(embed_map(GraphChartId::E2), origin, tol.fd_step);
    Eigen::MatrixXd both(12, 12);
    both << j1, j2;

    const int rank = matrix_rank(both, tol.rank_tol);
    tracker.record("rank", rank == 12 ? 0.0 : 1.0, 0.5, {});
    if (params.invariant.is_zero()) {
        tracker.record("unit_singular_value", std::abs(min_singular_value(both) - 1.0),
                       kDoublePointSvTol, {});
    }

    const CanonicalPoint s{PointC2{}};
    const auto locs = locate(GraphPoint{s, s, s}, params);
    bool locate_ok = locs.size() == 2;
    if (locate_ok) {
        for (const auto& loc : locs) {
            if (loc.chart != GraphChartId::E1 && loc.chart != GraphChartId::E2)
                locate_ok = false;
            for (const Complex& c : loc.coords)
                if (std::abs(c) != 0.0) locate_ok = false;
        }
        if (locs[0].chart == locs[1].chart) locate_ok = false;
    }
    tracker.record("locate_double_point", locate_ok ? 0.0 : 1.0, 0.5, {});

    return make_report("double_point", 1, tracker.worst_ratio, 1.0, tracker.worst_input,
                       "rank([dF1|dF2]) = " + std::to_string(rank) +
                           ", worst part: " + tracker.worst_part);
}

CheckReport check_chart_compatibility(const ModelParams& params, const ToleranceConfig& tol,
                                      const CheckKnobs&) {
    Sampler smp(tol.seed ^ fnv1a("chart_compatibility"));
    const std::size_t per_chart = std::max<std::size_t>(1, tol.samples / 6);
    double worst = 0.0;
    std::vector<double> worst_input;
    std::string worst_pair;

    const auto triple_distance = [&](const GraphPoint& a, const GraphPoint& b) {
        return std::max({quotient_distance(a.x.pt, b.x.pt, params),
                         quotient_distance(a.y.pt, b.y.pt, params),
                         quotient_distance(a.z.pt, b.z.pt, params)});
    };

    // derived transitions via every located overlap
    for (GraphChartId from : kAllCharts) {
        for (std::size_t n = 0; n < per_chart; ++n) {
            const Coords3 coords = sample_chart(from, smp, params);
            const GraphPoint gp = chart_embed(from, coords, params);
            for (const ChartLocation& loc : locate(gp, params)) {
                if (loc.chart == from) continue;
                const Coords3 image = chart_transition(from, loc.chart, coords, params);
                const double err =
                    triple_distance(gp, chart_embed(loc.chart, image, params));
                if (err > worst) {
                    worst = err;
                    worst_input = coords_input(coords);
                    worst_pair = std::string(chart_name(from)) + "->" +
                                 chart_name(loc.chart);
                }
            }
        }
    }

    // printed closed forms on the E1/E6 and E2/E6 overlaps
    for (std::size_t n = 0; n < per_chart; ++n) {
        const Coords3 c16 = sample_e16(smp, params);
        const Coords3 image = chart_transition(GraphChartId::E1, GraphChartId::E6, c16, params);
        double err = triple_distance(chart_embed(GraphChartId::E1, c16, params),
                                     chart_embed(GraphChartId::E6, image, params));
        // involution: back through the printed map
        const Coords3 back = chart_transition(GraphChartId::E6, GraphChartId::E1, image, params);
        for (int k = 0; k < 3; ++k) err = std::max(err, std::abs(back[k] - c16[k]));
        if (err > worst) {
            worst = err;
            worst_input = coords_input(c16);
            worst_pair = "E1<->E6 (closed form)";
        }

        try {
            const Coords3 c26 =
                chart_transition(GraphChartId::E6, GraphChartId::E2, image, params);
            const double err26 =
                triple_distance(chart_embed(GraphChartId::E6, image, params),
                                chart_embed(GraphChartId::E2, c26, params));
            if (err26 > worst) {
                worst = err26;
                worst_input = coords_input(image);
                worst_pair = "E6->E2 (identity)";
            }
        } catch (const NotInOverlap&) {
        }
    }

    return make_report("chart_compatibility", 6 * per_chart, worst, kTransitionTol,
                       worst_input, "worst transition: " + worst_pair);
}

CheckReport check_covering(const ModelParams& params, const ToleranceConfig& tol,
                           const CheckKnobs&) {
    Sampler smp(tol.seed ^ fnv1a("covering"));
    double exceptions = 0.0;
    std::vector<double> worst_input;
    std::string note;

    const auto has_chart = [](const std::vector<ChartLocation>& locs, GraphChartId id) {
        for (const auto& loc : locs)
            if (loc.chart == id) return true;
        return false;
    };

    for (std::size_t n = 0; n < tol.samples; ++n) {
        const Complex b = smp.regular_fiber(params);
        const CanonicalPoint x = smp.fiber_point(b, params);
        const CanonicalPoint y = smp.fiber_point(b, params);
        const GraphPoint gp{x, y, add(x, y, params)};
        if (locate(gp, params).empty()) {
            exceptions += 1.0;
            worst_input = pair_input(x.pt, y.pt);
            note = "uncovered random triple";
        }
    }

    const std::size_t family_samples = std::max<std::size_t>(1, tol.samples / 20);
    for (std::size_t n = 0; n < family_samples; ++n) {
        const Complex b = smp.regular_fiber(params);
        const CanonicalPoint x = smp.fiber_point(b, params);
        const CanonicalPoint sig =
            normalize(section(SectionKind::SigmaS, b, params), params);
        const struct {
            GraphPoint gp;
            GraphChartId expect;
            const char* label;
        } families[] = {
            {{x, sig, x}, GraphChartId::E4, "(x,sigma,x) -> E4"},
            {{sig, x, x}, GraphChartId::E5, "(sigma,x,x) -> E5"},
            {{sig, sig, sig}, GraphChartId::E3, "(sigma,sigma,sigma) -> E3"},
            {{x, inverse(x, params), sig}, GraphChartId::E6, "(x,-x,sigma) -> E6"},
        };
        for (const auto& fam : families) {
            if (!has_chart(locate(fam.gp, params), fam.expect)) {
                exceptions += 1.0;
                worst_input = point_input(x.pt);
                note = std::string("family not covered: ") + fam.label;
            }
        }
    }

    return make_report("covering", tol.samples + 4 * family_samples, exceptions, 0.0,
                       worst_input, note);
}

CheckReport check_tubular(const ModelParams& params, const ToleranceConfig& tol,
                          const CheckKnobs&) {
    Sampler smp(tol.seed ^ fnv1a("tubular"));
    PartTracker tracker;

    for (std::size_t n = 0; n < tol.samples; ++n) {
        // gluing compatibility G2 o phi = G1 on the overlap
        const Coords3 c = sample_e16(smp, params);
        const BundlePoint g1 = tubular_G(TubularChart::Chart1, c, params);
        const BundlePoint g2 = tubular_G(TubularChart::Chart6, tubular_phi(c), params);
        tracker.record("glue", bundle_distance(g1, g2), kTubularGlueTol, coords_input(c));

        // tautological invariants hold exactly
        for (const BundlePoint& bp : {g1, g2}) {
            const double res = std::max(std::abs(bp.taut_residual_first()),
                                        std::abs(bp.taut_residual_second()));
            tracker.record("tautological", res, 0.0, coords_input(c));
        }

        // phi is an involution
        const Coords3 back = tubular_phi(tubular_phi(c));
        double inv_err = 0.0;
        for (int k = 0; k < 3; ++k) inv_err = std::max(inv_err, std::abs(back[k] - c[k]));
        tracker.record("involution", inv_err, 1e-14, coords_input(c));
    }

    // zero section maps to the zero section, exactly
    const double es0 = std::exp(params.s1(Complex{}));
    for (std::size_t n = 0; n < std::min<std::size_t>(tol.samples, 100); ++n) {
        const Complex c = smp.annulus(0.05, 0.8 * std::min(1.0, 1.0 / es0));
        const BundlePoint bp =
            tubular_G(TubularChart::Chart1, Coords3{Complex{}, Complex{}, c}, params);
        double vmax = 0.0;
        for (const Complex& v : bp.v) vmax = std::max(vmax, std::abs(v));
        tracker.record("zero_section", vmax, 0.0, {c.real(), c.imag()});
    }

    // injectivity on sampled pairs within each tubular chart
    const std::size_t pairs = tol.samples;
    const std::pair<TubularChart, GraphChartId> charts[] = {
        {TubularChart::Chart1, GraphChartId::E1},
        {TubularChart::Chart2, GraphChartId::E2},
        {TubularChart::Chart6, GraphChartId::E6}};
    for (std::size_t n = 0; n < pairs; ++n) {
        const auto& [tc, gc] = charts[n % 3];
        const Coords3 ca = sample_chart(gc, smp, params);
        const Coords3 cb = sample_chart(gc, smp, params);
        double sep = 0.0;
        for (int k = 0; k < 3; ++k) sep = std::max(sep, std::abs(ca[k] - cb[k]));
        if (sep < 1e-3) continue;
        const double d = bundle_distance(tubular_G(tc, ca, params), tubular_G(tc, cb, params));
        tracker.record("injectivity", d >= kInjectivitySeparation ? 0.0 : 1.0, 0.5,
                       coords_input(ca));
    }

    return make_report("tubular", tol.samples, tracker.worst_ratio, 1.0, tracker.worst_input,
                       "worst part: " + tracker.worst_part);
}

CheckReport check_trivialization_invariance(const ModelParams& params,
                                            const ToleranceConfig& tol, const CheckKnobs&) {
    Sampler smp(tol.seed ^ fnv1a("trivialization_invariance"));
    const TrivializationMatrix identity;
    double worst = 0.0;
    std::vector<double> worst_input;
    const std::size_t matrices = 10;
    for (std::size_t m = 0; m < matrices; ++m) {
        TrivializationMatrix a;
        do {
            a = {smp.unif(-2.0, 2.0), smp.unif(-2.0, 2.0), smp.unif(-2.0, 2.0),
                 smp.unif(-2.0, 2.0)};
        } while (std::abs(a.det()) < 0.3);
        const std::size_t per_matrix = std::max<std::size_t>(1, tol.samples / matrices);
        for (std::size_t n = 0; n < per_matrix; ++n) {
            const Complex b = smp.regular_fiber(params);
            const CanonicalPoint x = smp.fiber_point(b, params);
            const CanonicalPoint y = smp.fiber_point(b, params);
            const double err = quotient_distance(
                add_via_liouville(x, y, a, params).pt,
                add_via_liouville(x, y, identity, params).pt, params);
            if (err > worst) {
                worst = err;
                worst_input = pair_input(x.pt, y.pt);
            }
        }
    }
    return make_report("trivialization_invariance", tol.samples, worst, 1e-9, worst_input);
}

using CheckFn = CheckReport (*)(const ModelParams&, const ToleranceConfig&, const CheckKnobs&);

const std::vector<std::pair<std::string, CheckFn>>& check_table() {
    static const std::vector<std::pair<std::string, CheckFn>> table = {
        {"flow_field", check_flow_field},
        {"liouville_pullback", check_liouville_pullback},
        {"section_lagrangian", check_section_lagrangian},
        {"deck_symplectic", check_deck_symplectic},
        {"group_laws", check_group_laws},
        {"selection_exclusive", check_selection_exclusive},
        {"singular_continuity", check_singular_continuity},
        {"period_closure", check_period_closure},
        {"graph_lagrangian", check_graph_lagrangian},
        {"graph_immersion", check_graph_immersion},
        {"double_point", check_double_point},
        {"chart_compatibility", check_chart_compatibility},
        {"covering", check_covering},
        {"tubular", check_tubular},
        {"trivialization_invariance", check_trivialization_invariance},
    };
    return table;
}

}  // namespace

void ToleranceConfig::validate() const {
    if (!(fd_step > 0.0 && form_tol > 0.0 && alg_tol > 0.0 && rank_tol > 0.0))
        throw InvalidParams("tolerances must be positive");
}

const std::vector<std::string>& check_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : check_table()) v.push_back(name);
        return v;
    }();
    return ids;
}

CheckReport run_check(const std::string& check_id, const ModelParams& params,
                      const ToleranceConfig& tol) {
    return run_check(check_id, params, tol, CheckKnobs{});
}

CheckReport run_check(const std::string& check_id, const ModelParams& params,
                      const ToleranceConfig& tol, const CheckKnobs& knobs) {
    tol.validate();
    for (const auto& [name, fn] : check_table()) {
        if (name != check_id) continue;
        if (tol.samples == 0)
            return make_report(check_id, 0, 0.0, 1.0, {},
                               "warning: samples = 0, vacuous pass");
        return fn(params, tol, knobs);
    }
    throw UnknownCheckId("unknown check id: " + check_id);
}

std::vector<CheckReport> run_suite(const ModelParams& params, const ToleranceConfig& tol) {
    params.validate();
    std::vector<CheckReport> reports;
    for (const std::string& id : check_ids()) {
        try {
            reports.push_back(run_check(id, params, tol));
        } catch (const std::exception& e) {
            CheckReport r;
            r.check_id = id;
            r.max_error = std::numeric_limits<double>::infinity();
            r.threshold = 0.0;
            r.pass = false;
            r.note = std::string("check aborted: ") + e.what();
            reports.push_back(r);
        }
    }
    return reports;
}

bool all_pass(const std::vector<CheckReport>& reports) {
    for (const CheckReport& r : reports)
        if (!r.pass) return false;
    return !reports.empty();
}

}  // namespace ffgraph
