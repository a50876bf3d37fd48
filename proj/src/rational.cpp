#include "a2ops/rational.hpp"

namespace a2ops {

Rational Rational::parse(const std::string& text) {
    auto bad = [&] { throw DomainError("cannot parse rational: '" + text + "'"); };
    if (text.empty()) bad();
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text), BigInt(1));
        const std::string n = text.substr(0, slash);
        const std::string d = text.substr(slash + 1);
        if (n.empty() || d.empty()) bad();
        return Rational(BigInt(n), BigInt(d));
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rational();  // unreachable
}

Rational binomial(unsigned n, unsigned k) {
    if (k > n) return Rational(0);
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= BigInt(n - i);
        r /= BigInt(i + 1);  // exact at every step: r is C(n, i+1) * (i+1)! / (i+1)!
    }
    return Rational(r, BigInt(1));
}

}  // namespace a2ops
