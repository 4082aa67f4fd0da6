#include "hypersig/rational.hpp"

#include <ostream>

namespace hypersig {

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Int(s));
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (sgn(den) == 0) throw std::invalid_argument("Rational::parse: zero denominator");
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rational::parse: malformed rational '" + s + "'");
    }
}

std::string Rational::str() const {
    std::string out = v_.get_num().get_str();
    if (v_.get_den() != 1) {
        out += "/";
        out += v_.get_den().get_str();
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace hypersig
