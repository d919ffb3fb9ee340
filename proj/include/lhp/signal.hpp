#pragma once

// Time-dependent coefficients b_i(t) as a small closed grammar with JSON serialization.

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lhp/errors.hpp"
#include "lhp/random.hpp"

namespace lhp {

class Signal {
public:
    enum class Kind { constant, poly, trig, expdec, sum, scaled };

    Signal() : Signal(constant(0.0)) {}

    static Signal constant(double v) { return Signal(Kind::constant, {v}); }
    /// Σ c_k t^k, coefficients ascending.
    static Signal poly(std::vector<double> coeffs) { return Signal(Kind::poly, std::move(coeffs)); }
    /// amp·sin(freq·t + phase) or amp·cos(freq·t + phase).
    static Signal trig(double amp, double freq, double phase, bool sine = true) {
        return Signal(Kind::trig, {amp, freq, phase, sine ? 1.0 : 0.0});
    }
    /// amp·e^{−rate·t}.
    static Signal expdec(double amp, double rate) { return Signal(Kind::expdec, {amp, rate}); }
    static Signal sum(std::vector<Signal> terms) {
        Signal s(Kind::sum, {});
        s.terms_ = std::move(terms);
        return s;
    }
    static Signal scaled(double factor, Signal inner) {
        Signal s(Kind::scaled, {factor});
        s.terms_ = {std::move(inner)};
        return s;
    }

    Kind kind() const { return kind_; }

    double operator()(double t) const {
        switch (kind_) {
            case Kind::constant: return p_[0];
            case Kind::poly: {
                double v = 0.0;
                for (auto it = p_.rbegin(); it != p_.rend(); ++it) v = v * t + *it;
                return v;
            }
            case Kind::trig: {
                const double arg = p_[1] * t + p_[2];
                return p_[0] * (p_[3] != 0.0 ? std::sin(arg) : std::cos(arg));
            }
            case Kind::expdec: return p_[0] * std::exp(-p_[1] * t);
            case Kind::sum: {
                double v = 0.0;
                for (const auto& s : terms_) v += s(t);
                return v;
            }
            case Kind::scaled: return p_[0] * terms_[0](t);
        }
        return 0.0;
    }

    /// Structurally zero for every t (not a numerical test).
    bool is_zero() const {
        switch (kind_) {
            case Kind::constant: return p_[0] == 0.0;
            case Kind::poly:
                for (double c : p_)
                    if (c != 0.0) return false;
                return true;
            case Kind::trig:
            case Kind::expdec: return p_[0] == 0.0;
            case Kind::sum:
                for (const auto& s : terms_)
                    if (!s.is_zero()) return false;
                return true;
            case Kind::scaled: return p_[0] == 0.0 || terms_[0].is_zero();
        }
        return false;
    }

    nlohmann::json to_json() const {
        using nlohmann::json;
        switch (kind_) {
            case Kind::constant: return json{{"kind", "const"}, {"value", p_[0]}};
            case Kind::poly: return json{{"kind", "poly"}, {"coeffs", p_}};
            case Kind::trig:
                return json{{"kind", "trig"},
                            {"amp", p_[0]},
                            {"freq", p_[1]},
                            {"phase", p_[2]},
                            {"kind2", p_[3] != 0.0 ? "sin" : "cos"}};
            case Kind::expdec: return json{{"kind", "expdec"}, {"amp", p_[0]}, {"rate", p_[1]}};
            case Kind::sum: {
                json terms = json::array();
                for (const auto& s : terms_) terms.push_back(s.to_json());
                return json{{"kind", "sum"}, {"terms", terms}};
            }
            case Kind::scaled: return json{{"kind", "scaled"}, {"factor", p_[0]}, {"signal", terms_[0].to_json()}};
        }
        return {};
    }

    /// Accepts a bare number as a constant.
    static Signal from_json(const nlohmann::json& j) {
        if (j.is_number()) return constant(j.get<double>());
        if (!j.is_object() || !j.contains("kind")) throw ConfigError("signal must be a number or an object with 'kind'");
        const std::string k = j.at("kind").get<std::string>();
        try {
            if (k == "const" || k == "constant") return constant(j.at("value").get<double>());
            if (k == "poly") return poly(j.at("coeffs").get<std::vector<double>>());
            if (k == "trig") {
                const std::string k2 = j.value("kind2", std::string("sin"));
                if (k2 != "sin" && k2 != "cos") throw ConfigError("trig kind2 must be sin or cos");
                return trig(j.at("amp").get<double>(), j.at("freq").get<double>(), j.value("phase", 0.0), k2 == "sin");
            }
            if (k == "expdec") return expdec(j.at("amp").get<double>(), j.at("rate").get<double>());
            if (k == "sum") {
                std::vector<Signal> terms;
                for (const auto& t : j.at("terms")) terms.push_back(from_json(t));
                return sum(std::move(terms));
            }
            if (k == "scaled") return scaled(j.at("factor").get<double>(), from_json(j.at("signal")));
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("malformed signal: ") + e.what());
        }
        throw ConfigError("unknown signal kind '" + k + "'");
    }

    std::string str() const { return to_json().dump(); }

private:
    Signal(Kind k, std::vector<double> p) : kind_(k), p_(std::move(p)) {}

    Kind kind_;
    std::vector<double> p_;
    std::vector<Signal> terms_;
};

/// const + trig term with random amplitude, frequency, phase and kind.
inline Signal random_trig_signal(Rng& rng, double amp, double fmin = 0.5, double fmax = 3.0) {
    return Signal::sum({Signal::constant(rng.uniform(-amp, amp)),
                        Signal::trig(rng.uniform(-amp, amp), rng.uniform(fmin, fmax),
                                     rng.uniform(0.0, 2.0 * std::numbers::pi), rng.uniform() < 0.5)});
}

/// Quadratic polynomial with coefficients scaled so that |b(t)| stays O(amp) on [0, 5].
inline Signal random_poly_signal(Rng& rng, double amp) {
    return Signal::poly({rng.uniform(-amp, amp), rng.uniform(-amp, amp) / 5.0, rng.uniform(-amp, amp) / 25.0});
}

}  // namespace lhp
