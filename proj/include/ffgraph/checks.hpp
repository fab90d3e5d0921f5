#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffgraph/graph.hpp"

namespace ffgraph {

struct ToleranceConfig {
    double fd_step = 1e-6;
    double form_tol = 1e-4;
    double alg_tol = 1e-11;
    double rank_tol = 1e-8;
    std::size_t samples = 1000;
    std::uint64_t seed = 42;

    void validate() const;
};

/// Outcome of one named check. For multi-part checks max_error is the
/// worst part residual divided by that part's tolerance (threshold 1).
struct CheckReport {
    std::string check_id;
    std::size_t samples = 0;
    double max_error = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::vector<double> worst_input;
    std::string note;
};

/// Sabotage hooks for the negative-control tests; defaults are the
/// honest configuration.
struct CheckKnobs {
    std::array<double, 3> wtilde_signs = {-1.0, -1.0, 1.0};
    double add1_s1_bias = 0.0;
};

const std::vector<std::string>& check_ids();

CheckReport run_check(const std::string& check_id, const ModelParams& params,
                      const ToleranceConfig& tol);

CheckReport run_check(const std::string& check_id, const ModelParams& params,
                      const ToleranceConfig& tol, const CheckKnobs& knobs);

std::vector<CheckReport> run_suite(const ModelParams& params, const ToleranceConfig& tol);

bool all_pass(const std::vector<CheckReport>& reports);

}  // namespace ffgraph
