#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ophh/interval.hpp"

namespace ophh {

// Real scalar function on an interval, the object that gets lifted to Hermitian
// operands through the spectral calculus.
//
// `nonnegative` is a declared constraint, not an inference: constructors spot-check
// the rule on a grid and reject the declaration if a sampled value is negative.
// `kinks` lists interior points where the rule is not smooth; integrators use them
// to split panels so piecewise rules still converge.
struct ScalarFunction {
    std::string name;
    std::function<double(double)> rule;
    Interval domain;
    bool nonnegative = false;
    std::vector<double> kinks;

    double operator()(double t) const { return rule(t); }
};

ScalarFunction make_scalar_function(std::string name, std::function<double(double)> rule,
                                    Interval domain, bool nonnegative = false,
                                    std::vector<double> kinks = {});

// Catalogue parser for CLI and config files. Accepted forms:
//   square | identity | exp | neg_abs | neg_square | const:c | affine:a,b |
//   poly:c0,c1,... | table:t0:v0,t1:v1,...
// Throws ConfigError on an unknown name or malformed parameters.
ScalarFunction parse_scalar_function(const std::string& text, Interval domain,
                                     bool require_nonnegative = false);

}  // namespace ophh
