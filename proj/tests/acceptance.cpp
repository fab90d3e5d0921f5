// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <cmath>
#include <cstdio>
#include <string>

#include "ffgraph/checks.hpp"
#include "ffgraph/group.hpp"

using namespace ffgraph;

namespace {

int failures = 0;

void report(int number, const std::string& label, bool pass, const std::string& detail) {
    std::printf("criterion %2d %-24s %s  (%s)\n", number, label.c_str(),
                pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

std::string err_note(const CheckReport& r) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max_error=%.3g threshold=%.3g over %zu samples",
                  r.max_error, r.threshold, r.samples);
    return buf;
}

ModelParams model_point() { return ModelParams{}; }

ModelParams generic_cubic() {
    ModelParams p;
    p.invariant.add_term(1, 0, 0.3);
    p.invariant.add_term(0, 1, 0.2);
    p.invariant.add_term(1, 1, 0.1);
    p.invariant.add_term(2, 1, 0.05);
    return p;
}

ToleranceConfig with_samples(std::size_t n) {
    ToleranceConfig tol;
    tol.samples = n;
    return tol;
}

}  // namespace

int main() {
    const ModelParams flat = model_point();
    const ModelParams cubic = generic_cubic();
    flat.validate();
    cubic.validate();

    {
        const CheckReport r = run_check("flow_field", flat, with_samples(1000));
        report(1, "flow_field", r.pass && r.max_error <= 1e-6, err_note(r));
    }
    {
        const CheckReport a = run_check("liouville_pullback", flat, with_samples(1000));
        const CheckReport b = run_check("liouville_pullback", cubic, with_samples(1000));
        report(2, "liouville_pullback",
               a.pass && b.pass && a.max_error <= 1e-5 && b.max_error <= 1e-5,
               "flat " + err_note(a) + "; cubic " + err_note(b));
    }
    {
        const CheckReport r = run_check("group_laws", cubic, with_samples(10000));
        report(3, "group_laws", r.pass, err_note(r) + "; " + r.note);
    }
    {
        const CheckReport r = run_check("selection_exclusive", cubic, with_samples(10000));
        report(4, "selection_exclusive", r.pass && r.max_error == 0.0, err_note(r));
    }
    {
        const CheckReport a = run_check("graph_lagrangian", flat, with_samples(200));
        const CheckReport b = run_check("graph_lagrangian", cubic, with_samples(200));
        report(5, "graph_lagrangian", a.pass && b.pass,
               "flat " + err_note(a) + "; cubic " + err_note(b));
    }
    {
        const CheckReport r = run_check("graph_immersion", cubic, with_samples(200));
        report(6, "graph_immersion", r.pass, err_note(r) + "; " + r.note);
    }
    {
        const CheckReport a = run_check("double_point", flat, with_samples(1));
        const CheckReport b = run_check("double_point", cubic, with_samples(1));
        report(7, "double_point", a.pass && b.pass, a.note + "; cubic " + b.note);
    }
    {
        const CheckReport a = run_check("chart_compatibility", cubic, with_samples(1000));
        const CheckReport b = run_check("deck_symplectic", cubic, with_samples(1000));
        report(8, "charts_and_deck", a.pass && b.pass,
               "transitions " + err_note(a) + "; deck " + err_note(b));
    }
    {
        const CheckReport r = run_check("covering", cubic, with_samples(1000));
        report(9, "covering", r.pass && r.max_error == 0.0, err_note(r));
    }
    {
        const CheckReport r = run_check("tubular", cubic, with_samples(1000));
        report(10, "tubular", r.pass, err_note(r) + "; " + r.note);
    }
    {
        const CheckReport r = run_check("period_closure", cubic, with_samples(1000));
        // recover-s round trip on a 10x10 polar fiber grid
        double worst = 0.0;
        for (int ir = 1; ir <= 10; ++ir) {
            for (int ia = 0; ia < 10; ++ia) {
                const Complex b =
                    std::polar(0.09 * cubic.epsilon * ir, kTwoPi * ia / 10.0);
                const auto [s1, s2] = recover_partials(b, cubic);
                worst = std::max(worst, std::abs(s1 - cubic.s1(b)));
                worst = std::max(worst, std::abs(s2 - cubic.s2(b)));
            }
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "grid max deviation %.3g", worst);
        report(11, "period_and_recovery", r.pass && worst <= 1e-6,
               err_note(r) + "; " + buf);
    }
    {
        const CheckReport r = run_check("singular_continuity", cubic, with_samples(1000));
        report(12, "singular_continuity", r.pass && r.max_error <= 1e-3, err_note(r));
    }
    {
        CheckKnobs flipped;
        flipped.wtilde_signs = {1.0, 1.0, 1.0};
        const CheckReport a =
            run_check("graph_lagrangian", flat, with_samples(100), flipped);
        CheckKnobs biased;
        biased.add1_s1_bias = 1e-2;
        const CheckReport b = run_check("group_laws", flat, with_samples(100), biased);
        report(13, "negative_controls", !a.pass && !b.pass,
               "sign flip " + std::string(a.pass ? "passed (bad)" : "failed as intended") +
                   "; Add1 bias " +
                   std::string(b.pass ? "passed (bad)" : "failed as intended"));
    }

    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
    return failures == 0 ? 0 : 1;
}
