#include "a2ops/hypcert.hpp"

#include <array>
#include <map>

#include "a2ops/errors.hpp"

namespace a2ops {
namespace {

// Laurent-free bivariate polynomial in (u, v) with exact coefficients.
using Poly = std::map<std::array<int, 2>, Rational>;

void add_term(Poly& p, std::array<int, 2> e, const Rational& c) {
    auto [it, inserted] = p.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

Poly mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b)
            add_term(out, {ea[0] + eb[0], ea[1] + eb[1]}, ca * cb);
    return out;
}

// A rational function num / (d1^e0 * d2^e1 * d3^e2) where d1 = u^2-1,
// d2 = v^2-1, d3 = (uv)^2-1.
struct ExpRational {
    Poly num;
    std::array<int, 3> den{0, 0, 0};
};

const Poly& denominator_poly(int slot) {
    static const std::array<Poly, 3> d = {
        Poly{{{2, 0}, Rational(1)}, {{0, 0}, Rational(-1)}},
        Poly{{{0, 2}, Rational(1)}, {{0, 0}, Rational(-1)}},
        Poly{{{2, 2}, Rational(1)}, {{0, 0}, Rational(-1)}},
    };
    return d[static_cast<std::size_t>(slot)];
}

// Image of one generator under u = exp(t12), v = exp(t23):
//   beta = 2e^t/(e^{2t}-1), coth = (e^{2t}+1)/(e^{2t}-1),
//   beta' = -2e^t(e^{2t}+1)/(e^{2t}-1)^2,
// with e^{t13} = uv for the coupled pair.
ExpRational generator_image(Pair p, GenKind k) {
    const int du = (p == Pair::T12) ? 1 : (p == Pair::T13) ? 1 : 0;
    const int dv = (p == Pair::T23) ? 1 : (p == Pair::T13) ? 1 : 0;
    const int dslot = (p == Pair::T12) ? 0 : (p == Pair::T23) ? 1 : 2;
    ExpRational r;
    switch (k) {
        case GenKind::Beta:
            r.num = {{{du, dv}, Rational(2)}};
            r.den[static_cast<std::size_t>(dslot)] = 1;
            break;
        case GenKind::Coth:
            r.num = {{{2 * du, 2 * dv}, Rational(1)}, {{0, 0}, Rational(1)}};
            r.den[static_cast<std::size_t>(dslot)] = 1;
            break;
        case GenKind::BetaPrime:
            r.num = {{{3 * du, 3 * dv}, Rational(-2)}, {{du, dv}, Rational(-2)}};
            r.den[static_cast<std::size_t>(dslot)] = 2;
            break;
    }
    return r;
}

ExpRational mul(const ExpRational& a, const ExpRational& b) {
    ExpRational out;
    out.num = mul(a.num, b.num);
    for (int s = 0; s < 3; ++s) out.den[s] = a.den[s] + b.den[s];
    return out;
}

// Brings b onto a's denominator lattice and accumulates.
void accumulate(ExpRational& a, ExpRational b) {
    std::array<int, 3> den;
    for (int s = 0; s < 3; ++s) den[s] = std::max(a.den[s], b.den[s]);
    auto lift = [&](ExpRational& x) {
        for (int s = 0; s < 3; ++s)
            for (int i = x.den[s]; i < den[s]; ++i) x.num = mul(x.num, denominator_poly(s));
        x.den = den;
    };
    lift(a);
    lift(b);
    for (const auto& [e, c] : b.num) add_term(a.num, e, c);
}

}  // namespace

bool hyperbolic_zero_certificate(const DiffPoly& p) {
    if (p.is_zero()) return true;
    if (p.table() == nullptr) return true;
    if (p.table()->id() != GeneratorTable::Id::Hyperbolic)
        throw TableMismatchError("zero certificate requires the hyperbolic generator table");

    // Coefficients of distinct powers of the coupling parameter are
    // independent, so certify each power's bucket separately.
    std::map<int, ExpRational> buckets;
    for (const auto& [m, c] : p.terms()) {
        ExpRational term;
        term.num = {{{0, 0}, c}};
        for (int s = 0; s < kGenSlots; ++s) {
            for (int rep = 0; rep < m.e[static_cast<std::size_t>(s)]; ++rep)
                term = mul(term, generator_image(slot_pair(s), slot_kind(s)));
        }
        const int kdeg = m.e[static_cast<std::size_t>(param_slot(Param::K))];
        accumulate(buckets[kdeg], std::move(term));
    }
    for (const auto& [kdeg, sum] : buckets)
        if (!sum.num.empty()) return false;
    return true;
}

bool hyperbolic_zero_certificate(const MatDiffOp& op) {
    for (const auto& [alpha, mat] : op.terms()) {
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                if (!hyperbolic_zero_certificate(mat.at(r, c))) return false;
    }
    return true;
}

}  // namespace a2ops
