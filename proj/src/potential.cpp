#include "slet/potential.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "slet/error.hpp"

namespace slet {

namespace {

bool is_nonnegative_integer(double p) { return p >= 0.0 && std::floor(p) == p; }

double term_derivative(const PowerTerm& t, double r, int order) {
    if (is_nonnegative_integer(t.power) && order > t.power) return 0.0;
    double factor = t.coefficient;
    for (int i = 0; i < order; ++i) factor *= (t.power - i);
    if (factor == 0.0) return 0.0;
    return factor * std::pow(r, t.power - order);
}

void check_radius(double r) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw Error(ErrorKind::domain, "radius must be positive and finite, got " + std::to_string(r));
}

void check_order(int order) {
    if (order < 0 || order > kMaxDerivativeOrder)
        throw Error(ErrorKind::unsupported_order,
                    "derivative order " + std::to_string(order) + " outside 0.." +
                        std::to_string(kMaxDerivativeOrder));
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text, std::string_view what) {
    text = trim(text);
    // from_chars rejects an explicit plus sign
    if (text.size() > 1 && text.front() == '+' && text[1] != '-') text.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
        throw Error(ErrorKind::invalid_input,
                    "cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    return value;
}

std::vector<std::pair<std::string, double>> parse_params(std::string_view body) {
    std::vector<std::pair<std::string, double>> out;
    while (!body.empty()) {
        auto comma = body.find(',');
        auto item = trim(body.substr(0, comma));
        body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
        auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorKind::invalid_input, "expected key=value, got '" + std::string(item) + "'");
        auto key = std::string(trim(item.substr(0, eq)));
        out.emplace_back(key, parse_number(item.substr(eq + 1), key));
    }
    return out;
}

double require(const std::vector<std::pair<std::string, double>>& params, std::string_view key,
               std::string_view model) {
    auto it = std::find_if(params.begin(), params.end(), [&](const auto& p) { return p.first == key; });
    if (it == params.end())
        throw Error(ErrorKind::invalid_input,
                    std::string(model) + " potential requires parameter '" + std::string(key) + "'");
    return it->second;
}

void expect_keys(const std::vector<std::pair<std::string, double>>& params,
                 std::initializer_list<std::string_view> keys, std::string_view model) {
    for (const auto& [key, value] : params) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw Error(ErrorKind::invalid_input,
                        "unknown parameter '" + key + "' for " + std::string(model) + " potential");
    }
    if (params.size() != keys.size())
        throw Error(ErrorKind::invalid_input, "wrong parameter count for " + std::string(model) + " potential");
}

// "c*r^p" | "c*r" | "c" | "r^p" | "-r^p"
PowerTerm parse_monomial(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw Error(ErrorKind::invalid_input, "empty term in custom potential");
    auto rpos = text.find('r');
    if (rpos == std::string_view::npos) return {parse_number(text, "coefficient"), 0.0};

    double coefficient = 1.0;
    auto head = trim(text.substr(0, rpos));
    if (!head.empty()) {
        if (head.back() == '*') head = trim(head.substr(0, head.size() - 1));
        if (head == "-") coefficient = -1.0;
        else if (head == "+") coefficient = 1.0;
        else coefficient = parse_number(head, "coefficient");
    }
    auto tail = trim(text.substr(rpos + 1));
    double power = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '^') throw Error(ErrorKind::invalid_input, "malformed term '" + std::string(text) + "'");
        auto exponent = trim(tail.substr(1));
        if (!exponent.empty() && exponent.front() == '(' && exponent.back() == ')')
            exponent = exponent.substr(1, exponent.size() - 2);
        power = parse_number(exponent, "exponent");
    }
    return {coefficient, power};
}

std::vector<PowerTerm> parse_custom(std::string_view body) {
    // Split on '+' and on '-' that starts a new term (not an exponent sign or after 'e').
    std::vector<PowerTerm> terms;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= body.size(); ++i) {
        bool split = i == body.size();
        if (!split && (body[i] == '+' || body[i] == '-')) {
            char prev = body[i - 1];
            std::size_t k = i - 1;
            while (k > 0 && std::isspace(static_cast<unsigned char>(body[k]))) prev = body[--k];
            split = prev != '^' && prev != 'e' && prev != 'E' && prev != '(' && prev != '*';
        }
        if (split) {
            auto piece = trim(body.substr(start, i - start));
            if (!piece.empty() && piece != "+") terms.push_back(parse_monomial(piece));
            start = i;
        }
    }
    if (terms.empty()) throw Error(ErrorKind::invalid_input, "custom potential has no terms");
    return terms;
}

std::string format_number(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

Potential::Potential(Kind kind, std::vector<PowerTerm> terms, std::vector<std::pair<std::string, double>> params)
    : kind_(kind), terms_(std::move(terms)), params_(std::move(params)) {
    for (const auto& t : terms_) {
        if (!std::isfinite(t.coefficient) || !std::isfinite(t.power))
            throw Error(ErrorKind::invalid_input, "potential terms must be finite");
    }
}

Potential Potential::coulomb(double alpha) { return {Kind::coulomb, {{-alpha, -1.0}}, {{"alpha", alpha}}}; }

Potential Potential::oscillator(double k) { return {Kind::oscillator, {{0.5 * k, 2.0}}, {{"k", k}}}; }

Potential Potential::linear(double b) { return {Kind::linear, {{b, 1.0}}, {{"b", b}}}; }

Potential Potential::cornell(double alpha, double b) {
    return {Kind::cornell, {{-alpha, -1.0}, {b, 1.0}}, {{"alpha", alpha}, {"b", b}}};
}

Potential Potential::custom(std::vector<PowerTerm> terms) {
    if (terms.empty()) throw Error(ErrorKind::invalid_input, "custom potential has no terms");
    return {Kind::custom, std::move(terms), {}};
}

Potential Potential::parse(std::string_view spec) {
    spec = trim(spec);
    auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw Error(ErrorKind::invalid_input, "potential spec '" + std::string(spec) + "' lacks 'model:'");
    auto model = trim(spec.substr(0, colon));
    auto body = trim(spec.substr(colon + 1));
    if (model == "custom") return custom(parse_custom(body));

    auto params = parse_params(body);
    if (model == "coulomb") {
        expect_keys(params, {"alpha"}, model);
        return coulomb(require(params, "alpha", model));
    }
    if (model == "oscillator") {
        expect_keys(params, {"k"}, model);
        return oscillator(require(params, "k", model));
    }
    if (model == "linear") {
        expect_keys(params, {"b"}, model);
        return linear(require(params, "b", model));
    }
    if (model == "cornell") {
        expect_keys(params, {"alpha", "b"}, model);
        return cornell(require(params, "alpha", model), require(params, "b", model));
    }
    throw Error(ErrorKind::invalid_input, "unknown potential model '" + std::string(model) + "'");
}

double Potential::value(double r) const {
    check_radius(r);
    double v = 0.0;
    for (const auto& t : terms_) v += term_derivative(t, r, 0);
    return v;
}

double Potential::derivative(double r, int order) const {
    check_order(order);
    check_radius(r);
    double v = 0.0;
    for (const auto& t : terms_) v += term_derivative(t, r, order);
    return v;
}

DerivativeStack Potential::derivatives(double r) const {
    check_radius(r);
    DerivativeStack out{};
    for (int j = 0; j <= kMaxDerivativeOrder; ++j) {
        double v = 0.0;
        for (const auto& t : terms_) v += term_derivative(t, r, j);
        out[j] = v;
    }
    return out;
}

std::string Potential::spec() const {
    std::string out;
    switch (kind_) {
        case Kind::coulomb: out = "coulomb:"; break;
        case Kind::oscillator: out = "oscillator:"; break;
        case Kind::linear: out = "linear:"; break;
        case Kind::cornell: out = "cornell:"; break;
        case Kind::custom: {
            out = "custom:";
            for (std::size_t i = 0; i < terms_.size(); ++i) {
                if (i > 0) out += "+";
                out += format_number(terms_[i].coefficient) + "*r^" + format_number(terms_[i].power);
            }
            return out;
        }
    }
    for (std::size_t i = 0; i < params_.size(); ++i) {
        if (i > 0) out += ",";
        out += params_[i].first + "=" + format_number(params_[i].second);
    }
    return out;
}

double Potential::coulomb_strength() const noexcept {
    double alpha = 0.0;
    for (const auto& t : terms_)
        if (t.power == -1.0) alpha -= t.coefficient;
    return alpha;
}

double Potential::inverse_square_coefficient() const noexcept {
    double c = 0.0;
    for (const auto& t : terms_)
        if (t.power == -2.0) c += t.coefficient;
    return c;
}

double Potential::most_singular_power() const noexcept {
    double p = 0.0;
    for (const auto& t : terms_)
        if (t.coefficient != 0.0) p = std::min(p, t.power);
    return p;
}

bool Potential::confining() const noexcept {
    double top = -std::numeric_limits<double>::infinity();
    double sign = 0.0;
    for (const auto& t : terms_) {
        if (t.coefficient == 0.0) continue;
        if (t.power > top) {
            top = t.power;
            sign = t.coefficient;
        } else if (t.power == top) {
            sign += t.coefficient;
        }
    }
    return top > 0.0 && sign > 0.0;
}

std::optional<Interval> Potential::increasing_domain() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    // Every monomial with c*p > 0 is increasing on the whole half-line.
    bool any_active = false;
    bool all_increasing = true;
    for (const auto& t : terms_) {
        if (t.coefficient == 0.0 || t.power == 0.0) continue;
        any_active = true;
        all_increasing = all_increasing && t.coefficient * t.power > 0.0;
    }
    if (!any_active) return std::nullopt;
    if (all_increasing) return Interval{0.0, inf};

    // Mixed signs: widest (in log r) scanned run with V' > 0.
    constexpr int samples = 2000;
    constexpr double lo = 1e-4, hi = 1e4;
    auto radius = [&](int i) { return lo * std::pow(hi / lo, static_cast<double>(i) / samples); };
    std::optional<Interval> best;
    double best_width = 0.0;
    int run_start = -1;
    for (int i = 0; i <= samples + 1; ++i) {
        bool up = i <= samples && derivative(radius(i), 1) > 0.0;
        if (up && run_start < 0) run_start = i;
        if (!up && run_start >= 0) {
            double width = static_cast<double>(i - run_start);
            if (width > best_width) {
                best_width = width;
                best = Interval{run_start == 0 ? 0.0 : radius(run_start), i > samples ? inf : radius(i)};
            }
            run_start = -1;
        }
    }
    return best;
}

ParticlePair::ParticlePair(double m1, double m2, bool nonrelativistic)
    : m1_(m1), m2_(m2), nonrelativistic_(nonrelativistic) {
    if (!(m1 > 0.0) || !(m2 > 0.0) || !std::isfinite(m1) || !std::isfinite(m2))
        throw Error(ErrorKind::invalid_input, "constituent masses must be positive and finite");
    mu_ = m1 * m2 / (m1 + m2);
    const double c1 = m1 * m1 * m1;
    const double c2 = m2 * m2 * m2;
    nu_ = c1 * c2 / (c1 + c2);
    eta_ = nu_ / (mu_ * mu_);
    inv_eta_ = nonrelativistic ? 0.0 : 1.0 / eta_;
}

double ParticlePair::eta() const noexcept {
    return nonrelativistic_ ? std::numeric_limits<double>::infinity() : eta_;
}

double gamma_derivative(const Potential& potential, const ParticlePair& pair, double r, int order) {
    check_order(order);
    if (pair.nonrelativistic()) return potential.derivative(r, order);
    const auto v = potential.derivatives(r);
    double square = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= order; ++k) {
        square += binom * v[k] * v[order - k];
        binom = binom * (order - k) / (k + 1);
    }
    return v[order] - 0.5 * pair.inv_eta() * square;
}

DerivativeStack gamma_derivatives(const Potential& potential, const ParticlePair& pair, double r) {
    auto v = potential.derivatives(r);
    if (pair.nonrelativistic()) return v;
    DerivativeStack out{};
    for (int j = 0; j <= kMaxDerivativeOrder; ++j) {
        double square = 0.0;
        double binom = 1.0;
        for (int k = 0; k <= j; ++k) {
            square += binom * v[k] * v[j - k];
            binom = binom * (j - k) / (k + 1);
        }
        out[j] = v[j] - 0.5 * pair.inv_eta() * square;
    }
    return out;
}

}  // namespace slet
