#include "sosforge/polynomial.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace sosforge {

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt p(s.substr(0, slash));
        BigInt q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("rational: zero denominator");
        return Rational(p, q);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        bool neg = !digits.empty() && digits[0] == '-';
        if (neg || (!digits.empty() && digits[0] == '+')) digits.erase(0, 1);
        // strip leading zeros so the integer parser cannot read them as octal
        std::size_t nz = digits.find_first_not_of('0');
        digits = nz == std::string::npos ? "0" : digits.substr(nz);
        BigInt p(digits);
        if (neg) p = -p;
        BigInt q = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) q *= 10;
        return Rational(p, q);
    }
    return Rational(BigInt(s));
}

std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

void Polynomial::add_term(const std::vector<int>& exps, const Rational& coef) {
    if (static_cast<int>(exps.size()) != dim_)
        throw std::invalid_argument("polynomial: exponent arity mismatch");
    for (int e : exps)
        if (e < 0) throw std::invalid_argument("polynomial: negative exponent");
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        if (coef != 0) terms_.emplace(exps, coef);
    } else {
        it->second += coef;
        if (it->second == 0) terms_.erase(it);
    }
    // Converting a big rational to double divides big integers; do it once
    // per change, not once per evaluation, and eagerly so that concurrent
    // const evaluations never mutate shared state.
    flat_.clear();
    flat_.reserve(terms_.size());
    for (const auto& [e, c] : terms_) flat_.emplace_back(e, static_cast<double>(c));
}

double Polynomial::eval(std::span<const double> x) const {
    double total = 0.0;
    for (const auto& [exps, coef] : flat_) {
        double t = coef;
        for (int a = 0; a < dim_; ++a)
            for (int i = 0; i < exps[a]; ++i) t *= x[a];
        total += t;
    }
    return total;
}

Rational Polynomial::eval_exact(const std::vector<Rational>& x) const {
    Rational total = 0;
    for (const auto& [exps, coef] : terms_) {
        Rational t = coef;
        for (int a = 0; a < dim_; ++a)
            for (int i = 0; i < exps[a]; ++i) t *= x[a];
        total += t;
    }
    return total;
}

Polynomial Polynomial::derivative(int axis) const {
    Polynomial d(dim_);
    for (const auto& [exps, coef] : terms_) {
        if (exps[axis] == 0) continue;
        std::vector<int> e = exps;
        Rational c = coef * e[axis];
        e[axis] -= 1;
        d.add_term(e, c);
    }
    return d;
}

Polynomial Polynomial::derivative(const MultiIndex& beta) const {
    Polynomial d = *this;
    for (int a = 0; a < dim_; ++a)
        for (int i = 0; i < beta[a]; ++i) d = d.derivative(a);
    return d;
}

std::string Polynomial::to_json(int k, double alpha) const {
    nlohmann::json j;
    j["dim"] = dim_;
    j["k"] = k;
    j["alpha"] = alpha;
    j["terms"] = nlohmann::json::array();
    for (const auto& [exps, coef] : terms_)
        j["terms"].push_back({{"exps", exps}, {"coef", rational_to_string(coef)}});
    return j.dump();
}

std::pair<Polynomial, SmoothnessClass> Polynomial::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int dim = j.at("dim").get<int>();
    SmoothnessClass s(dim, j.at("k").get<int>(), j.at("alpha").get<double>());
    Polynomial p(dim);
    for (const auto& t : j.at("terms"))
        p.add_term(t.at("exps").get<std::vector<int>>(),
                   parse_rational(t.at("coef").get<std::string>()));
    return {p, s};
}

Polynomial Polynomial::from_string_terms(
    int dim, const std::vector<std::pair<std::vector<int>, std::string>>& t) {
    Polynomial p(dim);
    for (const auto& [exps, coef] : t) p.add_term(exps, parse_rational(coef));
    return p;
}

}  // namespace sosforge
