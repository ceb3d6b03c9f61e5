#pragma once

#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "cwm/rational.hpp"

namespace cwm {

// Laurent polynomial in N with exact rational coefficients.
// Zero coefficients are never stored.
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly one() { return monomial(Rational(1), 0); }
    static LaurentPoly monomial(const Rational& c, int exponent) {
        LaurentPoly p;
        p.add(c, exponent);
        return p;
    }

    void add(const Rational& c, int exponent) {
        if (c.is_zero()) return;
        auto it = terms_.find(exponent);
        if (it == terms_.end()) {
            terms_.emplace(exponent, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add(c, e);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add(-c, e);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add(ca * cb, ea + eb);
        return r;
    }

    LaurentPoly& scale(const Rational& c) {
        if (c.is_zero()) { terms_.clear(); return *this; }
        for (auto& [e, coef] : terms_) coef *= c;
        return *this;
    }
    LaurentPoly& shift(int de) {
        std::map<int, Rational> shifted;
        for (const auto& [e, c] : terms_) shifted.emplace(e + de, c);
        terms_ = std::move(shifted);
        return *this;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<int, Rational>& terms() const { return terms_; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    // Printed as `c*N^e` terms sorted by decreasing exponent, e.g. "-1*N^3 + -1*N^2".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) os << " + ";
            os << it->second << "*N^" << it->first;
            first = false;
        }
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
        return os << p.str();
    }

private:
    std::map<int, Rational> terms_;
};

} // namespace cwm
