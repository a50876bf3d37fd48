#include "a2ops/diffring.hpp"

#include <cmath>
#include <sstream>

#include "a2ops/elliptic.hpp"

namespace a2ops {

std::string pair_name(Pair p) {
    switch (p) {
        case Pair::T12: return "12";
        case Pair::T13: return "13";
        case Pair::T23: return "23";
    }
    return "?";
}

std::string slot_name(int slot) {
    if (slot < kGenSlots) {
        static const char* kind_names[3] = {"beta", "betap", "coth"};
        return std::string(kind_names[static_cast<int>(slot_kind(slot))]) + "_" +
               pair_name(slot_pair(slot));
    }
    static const char* param_names[3] = {"k", "A", "B"};
    return param_names[slot - kGenSlots];
}

std::string slot_latex(int slot) {
    if (slot < kGenSlots) {
        const std::string arg = "(t_{" + pair_name(slot_pair(slot)) + "})";
        switch (slot_kind(slot)) {
            case GenKind::Beta: return "\\beta" + arg;
            case GenKind::BetaPrime: return "\\beta'" + arg;
            case GenKind::Coth: return "\\coth" + arg;
        }
    }
    static const char* param_names[3] = {"k", "A", "B"};
    return param_names[slot - kGenSlots];
}

// ---------------------------------------------------------------------------
// GeneratorTable

GeneratorTable::GeneratorTable(Id id, std::string name) : id_(id), name_(std::move(name)) {
    deriv_index_.fill(-1);
    params_[static_cast<int>(Param::K)] = true;

    const auto b = [&](Pair p, int e = 1) { return DiffPoly::gen(*this, p, GenKind::Beta, e); };

    switch (id_) {
        case Id::Solution: {
            kinds_[static_cast<int>(GenKind::Beta)] = true;
            kinds_[static_cast<int>(GenKind::BetaPrime)] = true;
            params_[static_cast<int>(Param::A)] = true;
            params_[static_cast<int>(Param::B)] = true;
            const DiffPoly pa = DiffPoly::param(*this, Param::A);
            const DiffPoly pb = DiffPoly::param(*this, Param::B);
            for (Pair p : {Pair::T12, Pair::T13, Pair::T23}) {
                Monomial lhs;
                lhs.e[gen_slot(p, GenKind::BetaPrime)] = 2;
                rules_.emplace_back(lhs, (b(p, 2) + pa) * (b(p, 2) + pb));
            }
            for (Pair p : {Pair::T12, Pair::T13, Pair::T23}) {
                deriv_index_[gen_slot(p, GenKind::Beta)] = static_cast<int>(deriv_store_.size());
                deriv_store_.push_back(DiffPoly::gen(*this, p, GenKind::BetaPrime));
                deriv_index_[gen_slot(p, GenKind::BetaPrime)] = static_cast<int>(deriv_store_.size());
                deriv_store_.push_back(b(p, 3).scaled(2) + (pa + pb) * b(p));
            }
            break;
        }
        case Id::Hyperbolic: {
            kinds_[static_cast<int>(GenKind::Beta)] = true;
            kinds_[static_cast<int>(GenKind::BetaPrime)] = true;
            kinds_[static_cast<int>(GenKind::Coth)] = true;
            for (Pair p : {Pair::T12, Pair::T13, Pair::T23}) {
                Monomial lhs1;
                lhs1.e[gen_slot(p, GenKind::BetaPrime)] = 1;
                rules_.emplace_back(lhs1, -(DiffPoly::gen(*this, p, GenKind::Coth) * b(p)));
                Monomial lhs2;
                lhs2.e[gen_slot(p, GenKind::Coth)] = 2;
                rules_.emplace_back(lhs2, DiffPoly::constant(*this, 1) + b(p, 2));
            }
            for (Pair p : {Pair::T12, Pair::T13, Pair::T23}) {
                deriv_index_[gen_slot(p, GenKind::Beta)] = static_cast<int>(deriv_store_.size());
                deriv_store_.push_back(DiffPoly::gen(*this, p, GenKind::BetaPrime));
                deriv_index_[gen_slot(p, GenKind::BetaPrime)] = static_cast<int>(deriv_store_.size());
                deriv_store_.push_back(b(p, 3).scaled(2) + b(p));
                deriv_index_[gen_slot(p, GenKind::Coth)] = static_cast<int>(deriv_store_.size());
                deriv_store_.push_back(-b(p, 2));
            }
            break;
        }
        case Id::InvCoshControl: {
            kinds_[static_cast<int>(GenKind::Beta)] = true;
            kinds_[static_cast<int>(GenKind::BetaPrime)] = true;
            for (Pair p : {Pair::T12, Pair::T13, Pair::T23}) {
                Monomial lhs;
                lhs.e[gen_slot(p, GenKind::BetaPrime)] = 2;
                rules_.emplace_back(lhs, b(p, 2) - b(p, 4));
            }
            for (Pair p : {Pair::T12, Pair::T13, Pair::T23}) {
                deriv_index_[gen_slot(p, GenKind::Beta)] = static_cast<int>(deriv_store_.size());
                deriv_store_.push_back(DiffPoly::gen(*this, p, GenKind::BetaPrime));
                deriv_index_[gen_slot(p, GenKind::BetaPrime)] = static_cast<int>(deriv_store_.size());
                deriv_store_.push_back(b(p) - b(p, 3).scaled(2));
            }
            break;
        }
    }
}

const GeneratorTable& GeneratorTable::solution() {
    static const GeneratorTable t(Id::Solution, "solution");
    return t;
}
const GeneratorTable& GeneratorTable::hyperbolic() {
    static const GeneratorTable t(Id::Hyperbolic, "hyperbolic");
    return t;
}
const GeneratorTable& GeneratorTable::inv_cosh_control() {
    static const GeneratorTable t(Id::InvCoshControl, "inv_cosh_control");
    return t;
}

const DiffPoly& GeneratorTable::arg_derivative(Pair p, GenKind k) const {
    const int idx = deriv_index_[gen_slot(p, k)];
    if (idx < 0)
        throw DomainError("table '" + name_ + "' has no generator " + slot_name(gen_slot(p, k)));
    return deriv_store_[static_cast<std::size_t>(idx)];
}

std::optional<GeneratorTable::Reduction> GeneratorTable::find_reduction(const Monomial& m) const {
    for (const auto& [lhs, rhs] : rules_) {
        bool divides = true;
        for (int s = 0; s < kNumSlots && divides; ++s) divides = m.e[s] >= lhs.e[s];
        if (divides) return Reduction{lhs, &rhs};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// DiffPoly

DiffPoly DiffPoly::constant(const GeneratorTable& t, const Rational& c) {
    DiffPoly p(&t);
    if (!c.is_zero()) p.terms_.emplace(Monomial{}, c);
    return p;
}

DiffPoly DiffPoly::gen(const GeneratorTable& t, Pair pr, GenKind k, int exp) {
    if (!t.supports(k))
        throw DomainError("table '" + t.name() + "' has no generator kind " +
                          slot_name(gen_slot(pr, k)));
    if (exp < 1 || exp > 200) throw DomainError("generator exponent out of range");
    DiffPoly p(&t);
    Monomial m;
    m.e[gen_slot(pr, k)] = static_cast<std::uint8_t>(exp);
    p.terms_.emplace(m, Rational(1));
    p.canonicalize();
    return p;
}

DiffPoly DiffPoly::param(const GeneratorTable& t, Param pr, int exp) {
    if (!t.supports_param(pr))
        throw DomainError("table '" + t.name() + "' has no parameter " +
                          slot_name(param_slot(pr)));
    if (exp < 1 || exp > 200) throw DomainError("parameter exponent out of range");
    DiffPoly p(&t);
    Monomial m;
    m.e[param_slot(pr)] = static_cast<std::uint8_t>(exp);
    p.terms_.emplace(m, Rational(1));
    return p;
}

void DiffPoly::require_same_table(const DiffPoly& o) const {
    if (table_ && o.table_ && table_ != o.table_)
        throw TableMismatchError("polynomials over tables '" + table_->name() + "' and '" +
                                 o.table_->name() + "' cannot be combined");
}

void DiffPoly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void DiffPoly::accumulate_product(const Monomial& rest, const Rational& c, const DiffPoly& p) {
    for (const auto& [m, pc] : p.terms_) {
        Monomial prod = rest;
        for (int s = 0; s < kNumSlots; ++s) {
            const int e = prod.e[s] + m.e[s];
            if (e > 200) throw DomainError("monomial degree overflow");
            prod.e[s] = static_cast<std::uint8_t>(e);
        }
        add_term(prod, c * pc);
    }
}

void DiffPoly::canonicalize() {
    if (!table_) return;
    bool again = true;
    while (again) {
        again = false;
        for (auto it = terms_.begin(); it != terms_.end(); ++it) {
            auto red = table_->find_reduction(it->first);
            if (!red) continue;
            Monomial rest = it->first;
            for (int s = 0; s < kNumSlots; ++s)
                rest.e[s] = static_cast<std::uint8_t>(rest.e[s] - red->lhs.e[s]);
            const Rational c = it->second;
            terms_.erase(it);
            accumulate_product(rest, c, *red->rhs);
            again = true;
            break;
        }
    }
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    require_same_table(o);
    if (!table_) table_ = o.table_;
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    require_same_table(o);
    if (!table_) table_ = o.table_;
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& o) {
    require_same_table(o);
    if (!table_) table_ = o.table_;
    std::map<Monomial, Rational> lhs;
    lhs.swap(terms_);
    for (const auto& [m1, c1] : lhs) {
        for (const auto& [m2, c2] : o.terms_) {
            Monomial prod = m1;
            for (int s = 0; s < kNumSlots; ++s) {
                const int e = prod.e[s] + m2.e[s];
                if (e > 200) throw DomainError("monomial degree overflow");
                prod.e[s] = static_cast<std::uint8_t>(e);
            }
            add_term(prod, c1 * c2);
        }
    }
    canonicalize();
    return *this;
}

DiffPoly DiffPoly::scaled(const Rational& c) const {
    DiffPoly r(table_);
    if (c.is_zero()) return r;
    for (const auto& [m, tc] : terms_) r.terms_.emplace(m, tc * c);
    return r;
}

DiffPoly DiffPoly::derive(int axis) const {
    if (axis < 0 || axis > 2) throw DomainError("derive axis must be 0, 1, or 2");
    DiffPoly out(table_);
    for (const auto& [m, c] : terms_) {
        for (int slot = 0; slot < kGenSlots; ++slot) {
            if (!m.e[slot]) continue;
            const Pair p = slot_pair(slot);
            const int sign = chain_sign(p, axis);
            if (!sign) continue;
            Monomial rest = m;
            rest.e[slot] -= 1;
            const Rational coef = c * Rational(static_cast<long long>(m.e[slot]) * sign);
            out.accumulate_product(rest, coef, table_->arg_derivative(p, slot_kind(slot)));
        }
    }
    out.canonicalize();
    return out;
}

DiffPoly DiffPoly::substitute_param(Param p, const Rational& value) const {
    const int slot = param_slot(p);
    DiffPoly out(table_);
    for (const auto& [m, c] : terms_) {
        Rational scaled_c = c;
        for (int i = 0; i < m.e[slot]; ++i) scaled_c *= value;
        Monomial stripped = m;
        stripped.e[slot] = 0;
        out.add_term(stripped, scaled_c);
    }
    return out;
}

int DiffPoly::max_param_degree(Param p) const {
    const int slot = param_slot(p);
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.e[slot]));
    return d;
}

namespace {

void check_backend_table(const GeneratorTable* table, const PotentialBackend& backend) {
    if (!table) return;
    switch (table->id()) {
        case GeneratorTable::Id::Solution:
            if (!backend.is_solution())
                throw TableMismatchError("solution-table polynomial evaluated with the '" +
                                         backend.name() + "' backend");
            break;
        case GeneratorTable::Id::Hyperbolic:
            if (backend.family() != Family::Hyperbolic)
                throw TableMismatchError("hyperbolic-table polynomial evaluated with the '" +
                                         backend.name() + "' backend");
            break;
        case GeneratorTable::Id::InvCoshControl:
            if (backend.family() != Family::InvCoshControl)
                throw TableMismatchError("control-table polynomial evaluated with the '" +
                                         backend.name() + "' backend");
            break;
    }
}

struct EvalContext {
    std::array<double, kGenSlots> gen_values;
    double a = 1.0;
    double b = 0.0;
    bool has_ab = false;
};

EvalContext make_eval_context(const std::map<Monomial, Rational>& terms,
                              const PotentialBackend& backend, const std::array<double, 3>& t) {
    std::array<bool, kGenSlots> occurs{};
    for (const auto& [m, c] : terms)
        for (int s = 0; s < kGenSlots; ++s)
            if (m.e[s]) occurs[s] = true;

    EvalContext ctx;
    ctx.gen_values.fill(0.0);
    for (int s = 0; s < kGenSlots; ++s) {
        if (!occurs[s]) continue;
        const Pair p = slot_pair(s);
        const double dt = t[pair_first(p)] - t[pair_second(p)];
        if (backend.singular_distance(dt) < kGuardRadius)
            throw SingularPointError("evaluation within guard radius of a singular argument t_" +
                                     pair_name(p));
        ctx.gen_values[s] = backend.gen_value(slot_kind(s), dt);
    }
    if (auto ab = backend.ab()) {
        ctx.has_ab = true;
        ctx.a = ab->first;
        ctx.b = ab->second;
    }
    return ctx;
}

double eval_term(const Monomial& m, const Rational& c, const EvalContext& ctx,
                 const std::optional<double>& k) {
    double v = c.to_double();
    for (int s = 0; s < kGenSlots; ++s)
        for (int i = 0; i < m.e[s]; ++i) v *= ctx.gen_values[s];
    if (const int ek = m.e[param_slot(Param::K)]; ek > 0) {
        if (!k) throw DomainError("polynomial contains k; a k value is required");
        for (int i = 0; i < ek; ++i) v *= *k;
    }
    if (const int ea = m.e[param_slot(Param::A)]; ea > 0) {
        if (!ctx.has_ab) throw DomainError("backend provides no (A, B) values");
        for (int i = 0; i < ea; ++i) v *= ctx.a;
    }
    if (const int eb = m.e[param_slot(Param::B)]; eb > 0) {
        if (!ctx.has_ab) throw DomainError("backend provides no (A, B) values");
        for (int i = 0; i < eb; ++i) v *= ctx.b;
    }
    return v;
}

}  // namespace

double DiffPoly::eval(const PotentialBackend& backend, const std::array<double, 3>& t,
                      std::optional<double> k) const {
    if (terms_.empty()) return 0.0;
    check_backend_table(table_, backend);
    const EvalContext ctx = make_eval_context(terms_, backend, t);
    double sum = 0.0;
    for (const auto& [m, c] : terms_) sum += eval_term(m, c, ctx, k);
    return sum;
}

double DiffPoly::eval_term_scale(const PotentialBackend& backend, const std::array<double, 3>& t,
                                 std::optional<double> k) const {
    if (terms_.empty()) return 0.0;
    check_backend_table(table_, backend);
    const EvalContext ctx = make_eval_context(terms_, backend, t);
    double scale = 0.0;
    for (const auto& [m, c] : terms_) scale = std::max(scale, std::fabs(eval_term(m, c, ctx, k)));
    return scale;
}

namespace {

std::string coeff_text(const Rational& abs_coeff, bool monomial_is_constant) {
    if (abs_coeff.is_one() && !monomial_is_constant) return "";
    return abs_coeff.str();
}

}  // namespace

std::string DiffPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool neg = c < Rational(0);
        const Rational mag = neg ? -c : c;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        std::vector<std::string> factors;
        if (const std::string ct = coeff_text(mag, m.is_constant()); !ct.empty())
            factors.push_back(ct);
        for (int s = 0; s < kNumSlots; ++s) {
            if (!m.e[s]) continue;
            std::string f = slot_name(s);
            if (m.e[s] > 1) f += "^" + std::to_string(static_cast<int>(m.e[s]));
            factors.push_back(f);
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) os << "*";
            os << factors[i];
        }
    }
    return os.str();
}

std::string DiffPoly::latex() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool neg = c < Rational(0);
        const Rational mag = neg ? -c : c;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        const bool show_coeff = !mag.is_one() || m.is_constant();
        bool printed = false;
        if (show_coeff) {
            if (mag.is_integer())
                os << mag.num().str();
            else
                os << "\\tfrac{" << mag.num().str() << "}{" << mag.den().str() << "}";
            printed = true;
        }
        for (int s = 0; s < kNumSlots; ++s) {
            if (!m.e[s]) continue;
            if (printed) os << " ";
            os << slot_latex(s);
            if (m.e[s] > 1) os << "^{" << static_cast<int>(m.e[s]) << "}";
            printed = true;
        }
    }
    return os.str();
}

}  // namespace a2ops
