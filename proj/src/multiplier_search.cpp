// SPDX-License-Identifier: Apache-2.0
#include "cogbf/multiplier_search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cogbf/errors.hpp"

namespace cogbf {

namespace {

enum class Which { Power, Interference };

struct Point {
    double multiplier = 0.0;
    double other = 0.0;
    ConstraintLevels levels;

    double level(Which w) const {
        return w == Which::Power ? levels.power : levels.interference;
    }
};

// Smallest multiplier >= start whose level is <= limit, for a level that is
// nonincreasing in the multiplier. Returns the feasible end of the bracket.
// A positive guess seeds the bracket with a narrow step that widens to
// doubling. Wide brackets are cut geometrically; narrow ones use Illinois
// steps, with a plain bisection whenever the bracket fails to halve.
template <typename Probe>
Point bisect_upward(const Probe& probe, double start, double limit, Which which,
                    const MultiplierSearchOptions& opt, double guess = 0.0) {
    const char* name = which == Which::Power ? "power" : "interference";
    Point lo_pt = probe(start);
    if (lo_pt.level(which) <= limit) {
        return lo_pt;
    }
    const bool seeded = guess > start;
    double ratio = seeded ? 1.0625 : 2.0;
    auto widen = [&ratio] { ratio = std::min(ratio * ratio, 2.0); };
    double lo = start;
    double hi = seeded ? guess : std::max(2.0 * start, 1.0);
    Point hi_pt = probe(hi);
    // When the first point is already feasible, walk down to get a positive
    // lower end so the geometric cut applies to small multipliers too.
    for (int halvings = 0; hi_pt.level(which) <= limit && halvings < opt.max_doublings;
         ++halvings) {
        const double below = hi / ratio;
        widen();
        if (below <= start) {
            break;
        }
        Point below_pt = probe(below);
        if (below_pt.level(which) > limit) {
            lo = below;
            lo_pt = below_pt;
            break;
        }
        hi = below;
        hi_pt = below_pt;
    }
    int doublings = 0;
    while (hi_pt.level(which) > limit) {
        if (++doublings > opt.max_doublings) {
            std::ostringstream msg;
            msg << "multiplier search: no bracket for the " << name << " multiplier after "
                << opt.max_doublings << " doublings (bracket [" << lo << ", " << hi
                << "], level " << hi_pt.level(which) << " > " << limit << ")";
            throw NumericalError(msg.str());
        }
        lo = hi;
        lo_pt = hi_pt;
        hi *= ratio;
        widen();
        hi_pt = probe(hi);
    }
    double f_lo = lo_pt.level(which) - limit;  // > 0
    double f_hi = hi_pt.level(which) - limit;  // <= 0
    int kept_side = 0;                         // +1 lo kept last step, -1 hi kept
    double prev_width = hi - lo;
    for (int it = 0; it < opt.max_bisections; ++it) {
        if (hi - lo <= opt.rel_tol * hi || limit - hi_pt.level(which) <= opt.level_tol * limit) {
            break;
        }
        double mid;
        if (lo > 0.0 && hi > 4.0 * lo) {
            mid = std::sqrt(lo * hi);
        } else if (lo == 0.0 && hi > 1.0 && f_lo > 1e6 * limit) {
            mid = 0.5 * (lo + hi);
        } else {
            const double width = hi - lo;
            mid = hi - f_hi * width / (f_hi - f_lo);
            // Keep the step off the ends so a near-root end still collapses
            // the bracket.
            mid = std::clamp(mid, lo + 1e-3 * width, hi - 1e-3 * width);
            if (!std::isfinite(mid) || (it % 3 == 2 && width > 0.5 * prev_width)) {
                mid = 0.5 * (lo + hi);
            }
            if (it % 3 == 2) {
                prev_width = width;
            }
        }
        if (mid <= lo || mid >= hi) {
            break;
        }
        Point mid_pt = probe(mid);
        const double f_mid = mid_pt.level(which) - limit;
        if (f_mid > 0.0) {
            lo = mid;
            f_lo = f_mid;
            if (kept_side == -1) {
                f_hi *= 0.5;
            }
            kept_side = -1;
        } else {
            hi = mid;
            hi_pt = mid_pt;
            f_hi = f_mid;
            if (kept_side == 1) {
                f_lo *= 0.5;
            }
            kept_side = 1;
        }
    }
    return hi_pt;
}

}  // namespace

MultiplierSolution search_two_multipliers(const LevelFunction& levels, double p_max,
                                          double i_max, const MultiplierSearchOptions& opt) {
    int evaluations = 0;

    // The inner root moves smoothly with l1, so each inner search is seeded
    // with the previous one.
    double last_l2 = 0.0;
    auto inner = [&](double l1) {
        auto probe = [&](double l2) {
            ++evaluations;
            Point p;
            p.multiplier = l2;
            p.other = l1;
            p.levels = levels(l1, l2);
            return p;
        };
        const Point p = bisect_upward(probe, 0.0, i_max, Which::Interference, opt, last_l2);
        if (p.multiplier > 0.0) {
            last_l2 = p.multiplier;
        }
        return p;
    };
    auto outer_probe = [&](double l1) {
        const Point in = inner(l1);
        Point p;
        p.multiplier = l1;
        p.other = in.multiplier;
        p.levels = in.levels;
        return p;
    };
    const Point best = bisect_upward(outer_probe, opt.lambda1_floor, p_max, Which::Power, opt);

    MultiplierSolution out;
    out.lambda1 = best.multiplier;
    out.lambda2 = best.other;
    out.levels = best.levels;
    out.evaluations = evaluations;
    return out;
}

}  // namespace cogbf
