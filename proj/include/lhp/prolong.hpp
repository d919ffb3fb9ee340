#pragma once

// RK4 and RKF45 integration of a system and of its diagonal prolongation to m copies.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lhp/errors.hpp"
#include "lhp/geometry.hpp"
#include "lhp/systems.hpp"

namespace lhp {

struct StepControl {
    enum class Mode { fixed, adaptive };
    Mode mode = Mode::adaptive;
    double dt = 1e-2;    // fixed step
    double tol = 1e-10;  // absolute and relative tolerance
    double h0 = 1e-3;    // initial adaptive step
    double hmin = 1e-13;
    long max_steps = 20'000'000;

    static StepControl fixed(double dt) {
        StepControl c;
        c.mode = Mode::fixed;
        c.dt = dt;
        return c;
    }
    static StepControl adaptive(double tol) {
        StepControl c;
        c.mode = Mode::adaptive;
        c.tol = tol;
        return c;
    }
};

/// Rows of (t, x1, y1, ..., xm, ym).
struct Trajectory {
    int m = 1;
    std::vector<double> t;
    std::vector<std::vector<double>> x;
    nlohmann::json meta = nlohmann::json::object();

    std::size_t size() const { return t.size(); }
    Point point(std::size_t row, int copy) const {
        return {x[row][2 * static_cast<std::size_t>(copy)], x[row][2 * static_cast<std::size_t>(copy) + 1]};
    }
    std::vector<Point> points(std::size_t row) const {
        std::vector<Point> out;
        for (int c = 0; c < m; ++c) out.push_back(point(row, c));
        return out;
    }

    /// Single-copy trajectory of copy `c`.
    Trajectory copy(int c) const {
        Trajectory out;
        out.m = 1;
        out.t = t;
        out.meta = meta;
        for (const auto& row : x)
            out.x.push_back({row[2 * static_cast<std::size_t>(c)], row[2 * static_cast<std::size_t>(c) + 1]});
        return out;
    }

    /// Linear interpolation; t outside the covered interval is an error.
    std::vector<double> state_at(double tq) const {
        if (t.empty() || tq < t.front() || tq > t.back()) throw DomainError("time outside trajectory");
        auto it = std::lower_bound(t.begin(), t.end(), tq);
        const std::size_t i = static_cast<std::size_t>(it - t.begin());
        if (t[i] == tq) return x[i];
        const double w = (tq - t[i - 1]) / (t[i] - t[i - 1]);
        std::vector<double> out(x[i].size());
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = (1.0 - w) * x[i - 1][k] + w * x[i][k];
        return out;
    }
};

/// Shortest round-trip decimal form.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string csv_header(int m) {
    std::string h = "t";
    for (int c = 1; c <= m; ++c) h += ",x" + std::to_string(c) + ",y" + std::to_string(c);
    return h;
}

inline void write_csv(std::ostream& os, const Trajectory& tr) {
    os << csv_header(tr.m) << '\n';
    for (std::size_t i = 0; i < tr.size(); ++i) {
        os << format_double(tr.t[i]);
        for (double v : tr.x[i]) os << ',' << format_double(v);
        os << '\n';
    }
}

inline void write_jsonl(std::ostream& os, const Trajectory& tr) {
    for (std::size_t i = 0; i < tr.size(); ++i) {
        nlohmann::json row{{"t", tr.t[i]}, {"x", tr.x[i]}};
        os << row.dump() << '\n';
    }
}

inline Trajectory read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("empty trajectory file");
    const auto cols = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
    if (line.rfind("t,", 0) != 0 || cols < 3 || cols % 2 == 0) throw ConfigError("trajectory header must be t,x1,y1,...");
    Trajectory tr;
    tr.m = (cols - 1) / 2;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> vals;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            double v = 0.0;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc()) throw ConfigError("malformed number '" + cell + "' in trajectory");
            vals.push_back(v);
        }
        if (static_cast<int>(vals.size()) != cols) throw ConfigError("ragged trajectory row");
        tr.t.push_back(vals[0]);
        tr.x.emplace_back(vals.begin() + 1, vals.end());
    }
    return tr;
}

inline Trajectory read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    return read_csv(in);
}

namespace detail {

inline void prolonged_rhs(const LHSystem& sys, double t, const std::vector<double>& s, std::vector<double>& out) {
    const auto b = sys.coefficients(t);
    out.assign(s.size(), 0.0);
    for (std::size_t c = 0; 2 * c < s.size(); ++c) {
        const Point p{s[2 * c], s[2 * c + 1]};
        for (std::size_t i = 0; i < sys.fields.size(); ++i) {
            if (sys.coeffs[i].is_zero()) continue;
            const auto v = sys.fields[i](p);
            out[2 * c] += b[i] * v.x;
            out[2 * c + 1] += b[i] * v.y;
        }
    }
}

inline bool state_ok(const LHSystem& sys, const std::vector<double>& s) {
    for (std::size_t c = 0; 2 * c < s.size(); ++c) {
        if (!std::isfinite(s[2 * c]) || !std::isfinite(s[2 * c + 1])) return false;
        if (!sys.contains({s[2 * c], s[2 * c + 1]})) return false;
    }
    return true;
}

inline std::vector<double> axpy(const std::vector<double>& x, double h, std::initializer_list<double> w,
                                std::initializer_list<const std::vector<double>*> k) {
    std::vector<double> out = x;
    auto wi = w.begin();
    for (const auto* kv : k) {
        const double c = *wi++;
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * c * (*kv)[i];
    }
    return out;
}

inline std::vector<double> rk4_step(const LHSystem& sys, double t, const std::vector<double>& s, double h) {
    std::vector<double> k1, k2, k3, k4;
    prolonged_rhs(sys, t, s, k1);
    prolonged_rhs(sys, t + 0.5 * h, axpy(s, h, {0.5}, {&k1}), k2);
    prolonged_rhs(sys, t + 0.5 * h, axpy(s, h, {0.5}, {&k2}), k3);
    prolonged_rhs(sys, t + h, axpy(s, h, {1.0}, {&k3}), k4);
    return axpy(s, h, {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0}, {&k1, &k2, &k3, &k4});
}

/// Fehlberg 4(5) step; returns the fifth-order solution and the max scaled error.
inline std::pair<std::vector<double>, double> rkf45_step(const LHSystem& sys, double t, const std::vector<double>& s,
                                                         double h, double tol) {
    std::vector<double> k1, k2, k3, k4, k5, k6;
    prolonged_rhs(sys, t, s, k1);
    prolonged_rhs(sys, t + h / 4.0, axpy(s, h, {1.0 / 4.0}, {&k1}), k2);
    prolonged_rhs(sys, t + 3.0 * h / 8.0, axpy(s, h, {3.0 / 32.0, 9.0 / 32.0}, {&k1, &k2}), k3);
    prolonged_rhs(sys, t + 12.0 * h / 13.0,
                  axpy(s, h, {1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0}, {&k1, &k2, &k3}), k4);
    prolonged_rhs(sys, t + h,
                  axpy(s, h, {439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0}, {&k1, &k2, &k3, &k4}), k5);
    prolonged_rhs(sys, t + h / 2.0,
                  axpy(s, h, {-8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0},
                       {&k1, &k2, &k3, &k4, &k5}),
                  k6);
    auto y5 = axpy(s, h, {16.0 / 135.0, 0.0, 6656.0 / 12825.0, 28561.0 / 56430.0, -9.0 / 50.0, 2.0 / 55.0},
                   {&k1, &k2, &k3, &k4, &k5, &k6});
    double err = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double e = h * (1.0 / 360.0 * k1[i] - 128.0 / 4275.0 * k3[i] - 2197.0 / 75240.0 * k4[i] +
                              1.0 / 50.0 * k5[i] + 2.0 / 55.0 * k6[i]);
        err = std::max(err, std::abs(e) / (tol + tol * std::max(std::abs(s[i]), std::abs(y5[i]))));
    }
    return {std::move(y5), err};
}

}  // namespace detail

/// Integrates `m` copies from `init` (length 2m) over [t0, t1]. With `output_times` (increasing,
/// inside [t0, t1]) the rows are exactly those times and steps are clipped to land on them;
/// otherwise every accepted step is a row.
inline Trajectory integrate(const LHSystem& sys, int m, const std::vector<double>& init, double t0, double t1,
                            const StepControl& ctrl, const std::vector<double>& output_times = {}) {
    if (m < 1 || static_cast<int>(init.size()) != 2 * m) throw ConfigError("initial state must have 2m entries");
    if (!(t1 > t0)) throw ConfigError("integration needs t1 > t0");
    if (!detail::state_ok(sys, init)) throw DomainError("initial state outside the system domain");
    if (ctrl.mode == StepControl::Mode::fixed && !(ctrl.dt > 0.0)) throw ConfigError("fixed step needs dt > 0");
    if (ctrl.mode == StepControl::Mode::adaptive && !(ctrl.tol > 0.0)) throw ConfigError("adaptive step needs tol > 0");

    Trajectory tr;
    tr.m = m;
    tr.meta = {{"system", sys.name},
               {"method", ctrl.mode == StepControl::Mode::fixed ? "rk4" : "rkf45"},
               {"dt", ctrl.dt},
               {"tol", ctrl.tol},
               {"t0", t0},
               {"t1", t1}};

    std::vector<double> targets = output_times;
    if (targets.empty() || targets.back() < t1) targets.push_back(t1);
    const bool every_step = output_times.empty();
    auto out_it = targets.begin();
    while (out_it != targets.end() && *out_it <= t0) {
        if (*out_it == t0) {
            tr.t.push_back(t0);
            tr.x.push_back(init);
        }
        ++out_it;
    }
    if (every_step && tr.t.empty()) {
        tr.t.push_back(t0);
        tr.x.push_back(init);
    }

    double t = t0;
    std::vector<double> s = init;
    double h = ctrl.mode == StepControl::Mode::fixed ? ctrl.dt : std::min(ctrl.h0, t1 - t0);
    long steps = 0;
    while (out_it != targets.end()) {
        const double target = *out_it;
        if (++steps > ctrl.max_steps) throw IntegrationError("step limit exceeded", t);
        double step = ctrl.mode == StepControl::Mode::fixed ? ctrl.dt : h;
        bool lands = false;
        if (t + step >= target - 1e-12 * std::max(1.0, std::abs(target))) {
            step = target - t;
            lands = true;
        }
        std::vector<double> next;
        if (ctrl.mode == StepControl::Mode::fixed) {
            try {
                next = detail::rk4_step(sys, t, s, step);
            } catch (const DomainError&) {
                throw IntegrationError("left the system domain", t);
            }
        } else {
            double err = 0.0;
            try {
                std::tie(next, err) = detail::rkf45_step(sys, t, s, step, ctrl.tol);
                if (!std::isfinite(err)) err = 1e10;
            } catch (const DomainError&) {
                err = 1e10;
            }
            if (err > 1.0) {
                h = step * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
                if (h < ctrl.hmin * std::max(1.0, std::abs(t))) throw IntegrationError("step size underflow", t);
                continue;
            }
            const double grow = err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
            if (!lands) h = step * grow;
            else h = std::max(h, step * grow);
        }
        t = lands ? target : t + step;
        s = std::move(next);
        if (!detail::state_ok(sys, s)) throw IntegrationError("left the system domain", t);
        if (lands) {
            tr.t.push_back(t);
            tr.x.push_back(s);
            ++out_it;
        } else if (every_step) {
            tr.t.push_back(t);
            tr.x.push_back(s);
        }
    }
    return tr;
}

/// Uniform grid t0, t0 + (t1 − t0)/n, ..., t1.
inline std::vector<double> uniform_grid(double t0, double t1, int n) {
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = i == n ? t1 : t0 + (t1 - t0) * i / n;
    return g;
}

inline std::vector<double> flatten(const std::vector<Point>& pts) {
    std::vector<double> out;
    for (const auto& p : pts) {
        out.push_back(p.x);
        out.push_back(p.y);
    }
    return out;
}

}  // namespace lhp
