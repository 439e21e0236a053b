#pragma once

#include <stdexcept>
#include <string>

namespace ophh {

// Real interval with independently open or closed endpoints.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool open_lo = false;
    bool open_hi = false;

    static Interval closed(double lo, double hi) { return make(lo, hi, false, false); }
    static Interval open(double lo, double hi) { return make(lo, hi, true, true); }
    static Interval make(double lo, double hi, bool open_lo, bool open_hi) {
        if (!(lo <= hi)) throw std::invalid_argument("interval requires lo <= hi");
        return Interval{lo, hi, open_lo, open_hi};
    }

    // Closed endpoints admit `closed_slack` of rounding leeway, open endpoints stay strict.
    bool contains(double x, double closed_slack = 0.0) const {
        const bool lo_ok = open_lo ? (x > lo) : (x >= lo - closed_slack);
        const bool hi_ok = open_hi ? (x < hi) : (x <= hi + closed_slack);
        return lo_ok && hi_ok;
    }

    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }

    std::string str() const;
};

}  // namespace ophh
