#include "ophh/scalar_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ophh/errors.hpp"

namespace ophh {

namespace {

// Nonnegativity spot-check: 1001 grid points across the domain, open endpoints
// pulled in by a small margin. Values must not be negative.
void spot_check_nonnegative(const ScalarFunction& f) {
    const double margin = 1e-9 * (1.0 + std::max(std::abs(f.domain.lo), std::abs(f.domain.hi)));
    const double lo = f.domain.open_lo ? f.domain.lo + margin : f.domain.lo;
    const double hi = f.domain.open_hi ? f.domain.hi - margin : f.domain.hi;
    if (!(lo <= hi)) return;
    const int grid = 1000;
    for (int i = 0; i <= grid; ++i) {
        const double t = lo + (hi - lo) * (static_cast<double>(i) / grid);
        const double v = f.rule(t);
        if (!(v >= 0.0)) {
            std::ostringstream os;
            os << f.name << " declared nonnegative but " << f.name << "(" << t << ") = " << v;
            throw ConfigError(os.str());
        }
    }
}

std::vector<double> parse_number_list(const std::string& text, char sep) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string piece;
    while (std::getline(is, piece, sep)) {
        try {
            size_t used = 0;
            const double v = std::stod(piece, &used);
            if (used != piece.size()) throw std::invalid_argument(piece);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("bad number '" + piece + "' in scalar function spec");
        }
    }
    return out;
}

}  // namespace

ScalarFunction make_scalar_function(std::string name, std::function<double(double)> rule,
                                    Interval domain, bool nonnegative,
                                    std::vector<double> kinks) {
    ScalarFunction f{std::move(name), std::move(rule), domain, nonnegative, std::move(kinks)};
    if (!f.rule) throw ConfigError("scalar function '" + f.name + "' has no rule");
    if (f.nonnegative) spot_check_nonnegative(f);
    return f;
}

ScalarFunction parse_scalar_function(const std::string& text, Interval domain,
                                     bool require_nonnegative) {
    std::string head = text;
    std::string args;
    if (const size_t colon = text.find(':'); colon != std::string::npos) {
        head = text.substr(0, colon);
        args = text.substr(colon + 1);
    }

    if (head == "square")
        return make_scalar_function("square", [](double t) { return t * t; }, domain,
                                    require_nonnegative);
    if (head == "identity")
        return make_scalar_function("identity", [](double t) { return t; }, domain,
                                    require_nonnegative);
    if (head == "exp")
        return make_scalar_function("exp", [](double t) { return std::exp(t); }, domain,
                                    require_nonnegative);
    if (head == "neg_abs")
        return make_scalar_function("neg_abs", [](double t) { return -std::abs(t); }, domain,
                                    require_nonnegative, {0.0});
    if (head == "neg_square")
        return make_scalar_function("neg_square", [](double t) { return -t * t; }, domain,
                                    require_nonnegative);
    if (head == "const") {
        const std::vector<double> ps = parse_number_list(args, ',');
        if (ps.size() != 1) throw ConfigError("const takes one parameter, e.g. const:2");
        const double c = ps[0];
        return make_scalar_function(text, [c](double) { return c; }, domain,
                                    require_nonnegative);
    }
    if (head == "affine") {
        const std::vector<double> ps = parse_number_list(args, ',');
        if (ps.size() != 2) throw ConfigError("affine takes two parameters, e.g. affine:1,-2");
        const double a = ps[0];
        const double b = ps[1];
        return make_scalar_function(text, [a, b](double t) { return a + b * t; }, domain,
                                    require_nonnegative);
    }
    if (head == "poly") {
        const std::vector<double> cs = parse_number_list(args, ',');
        if (cs.empty()) throw ConfigError("poly takes coefficients c0,c1,...");
        return make_scalar_function(
            text,
            [cs](double t) {
                double v = 0.0;
                for (auto it = cs.rbegin(); it != cs.rend(); ++it) v = v * t + *it;
                return v;
            },
            domain, require_nonnegative);
    }
    if (head == "table") {
        // table:t0:v0,t1:v1,... piecewise linear through the listed points,
        // extended by the end slopes outside [t0, tN].
        std::vector<double> ts;
        std::vector<double> vs;
        std::istringstream is(args);
        std::string piece;
        while (std::getline(is, piece, ',')) {
            const size_t colon = piece.find(':');
            if (colon == std::string::npos)
                throw ConfigError("table entries look like t:v, got '" + piece + "'");
            const std::vector<double> t = parse_number_list(piece.substr(0, colon), ',');
            const std::vector<double> v = parse_number_list(piece.substr(colon + 1), ',');
            if (t.size() != 1 || v.size() != 1)
                throw ConfigError("table entries look like t:v, got '" + piece + "'");
            ts.push_back(t[0]);
            vs.push_back(v[0]);
        }
        if (ts.size() < 2) throw ConfigError("table needs at least two points");
        if (!std::is_sorted(ts.begin(), ts.end()) ||
            std::adjacent_find(ts.begin(), ts.end()) != ts.end())
            throw ConfigError("table abscissas must be strictly increasing");
        std::vector<double> kinks(ts.begin() + 1, ts.end() - 1);
        auto rule = [ts, vs](double t) {
            size_t hi = 1;
            while (hi + 1 < ts.size() && t > ts[hi]) ++hi;
            const double t0 = ts[hi - 1], t1 = ts[hi];
            const double w = (t - t0) / (t1 - t0);
            return vs[hi - 1] + w * (vs[hi] - vs[hi - 1]);
        };
        return make_scalar_function(text, rule, domain, require_nonnegative, kinks);
    }
    throw ConfigError("unknown scalar function '" + text + "'");
}

}  // namespace ophh
