#include "a2ops/cli.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "a2ops/catalog.hpp"
#include "a2ops/elliptic.hpp"
#include "a2ops/errors.hpp"
#include "a2ops/opalgebra.hpp"
#include "a2ops/verify.hpp"

namespace a2ops {
namespace {

// Accepts "symbolic" (keep the parameter), integers, fractions like "37/100",
// and plain decimals like "0.37".
std::optional<Rational> parse_coupling(const std::string& text) {
    if (text.empty() || text == "symbolic") return std::nullopt;
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational::parse(text);
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0 || digits.empty()) throw DomainError("malformed coupling value: " + text);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    bool neg = false;
    if (digits[0] == '+' || digits[0] == '-') {
        neg = digits[0] == '-';
        digits = digits.substr(1);
    }
    if (digits.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("malformed coupling value: " + text);
    Rational r(BigInt(digits), den);
    return neg ? -r : r;
}

std::string multi_index_label(const MultiIndex& alpha) {
    std::ostringstream os;
    os << "partial^(" << int(alpha.n[0]) << "," << int(alpha.n[1]) << "," << int(alpha.n[2])
       << ")";
    return os.str();
}

std::string op_text(const MatDiffOp& D) {
    std::ostringstream os;
    if (D.terms().empty()) return "0\n";
    for (const auto& [alpha, m] : D.terms()) {
        os << multi_index_label(alpha) << ":\n";
        for (int r = 0; r < 3; ++r) {
            os << "  [ ";
            for (int c = 0; c < 3; ++c) {
                os << m.at(r, c).str();
                if (c < 2) os << " | ";
            }
            os << " ]\n";
        }
    }
    return os.str();
}

std::string op_latex(const MatDiffOp& D) {
    std::ostringstream os;
    if (D.terms().empty()) return "0\n";
    bool first = true;
    for (const auto& [alpha, m] : D.terms()) {
        if (!first) os << "\n+ ";
        first = false;
        os << "\\begin{pmatrix}\n";
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                os << m.at(r, c).latex();
                if (c < 2) os << " & ";
            }
            if (r < 2) os << " \\\\";
            os << '\n';
        }
        os << "\\end{pmatrix}";
        for (int i = 0; i < 3; ++i) {
            if (alpha.n[i] == 0) continue;
            os << " \\partial_" << (i + 1);
            if (alpha.n[i] > 1) os << "^{" << int(alpha.n[i]) << "}";
        }
    }
    os << '\n';
    return os.str();
}

// Structured form of a coefficient: a list of terms, each an exact
// coefficient with its monomial as (symbol, exponent) pairs.
nlohmann::ordered_json poly_json(const DiffPoly& p) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::ordered_json jt;
        jt["coefficient"] = c.str();
        auto mono = nlohmann::ordered_json::array();
        for (int s = 0; s < kNumSlots; ++s) {
            const int e = m.e[static_cast<std::size_t>(s)];
            if (e) mono.push_back({{"symbol", slot_name(s)}, {"exponent", e}});
        }
        jt["monomial"] = std::move(mono);
        arr.push_back(std::move(jt));
    }
    return arr;
}

std::string op_json(const std::string& name, const MatDiffOp& D) {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [alpha, m] : D.terms()) {
        nlohmann::ordered_json jt;
        jt["alpha"] = {int(alpha.n[0]), int(alpha.n[1]), int(alpha.n[2])};
        auto rows = nlohmann::ordered_json::array();
        for (int r = 0; r < 3; ++r) {
            auto row = nlohmann::ordered_json::array();
            for (int c = 0; c < 3; ++c) row.push_back(poly_json(m.at(r, c)));
            rows.push_back(std::move(row));
        }
        jt["matrix"] = std::move(rows);
        j["terms"].push_back(std::move(jt));
    }
    return j.dump(2) + "\n";
}

std::string symbol_text(const CMat3& s) {
    std::ostringstream os;
    os << std::setprecision(15);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            const std::complex<double> v = s[static_cast<std::size_t>(r * 3 + c)];
            os << "(" << v.real() << "," << v.imag() << ")";
            if (c < 2) os << "  ";
        }
        os << '\n';
    }
    return os.str();
}

std::string symbol_json(const CMat3& s) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int r = 0; r < 3; ++r) {
        auto row = nlohmann::ordered_json::array();
        for (int c = 0; c < 3; ++c) {
            const std::complex<double> v = s[static_cast<std::size_t>(r * 3 + c)];
            row.push_back({v.real(), v.imag()});
        }
        rows.push_back(std::move(row));
    }
    nlohmann::ordered_json j;
    j["symbol"] = std::move(rows);
    return j.dump(2) + "\n";
}

// Writes to the file when a path was given, otherwise to the stream.
int emit(const std::string& content, const std::string& out_path, std::ostream& out,
         std::ostream& err) {
    if (out_path.empty()) {
        out << content;
        return 0;
    }
    std::ofstream f(out_path);
    if (!f) {
        err << "error: cannot open output file: " << out_path << '\n';
        return 2;
    }
    f << content;
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"symbolic-numeric workbench for commuting matrix differential operators"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a key=value config file")
        ->envname("A2OPS_CONFIG");

    const std::vector<std::string> families = {"rational", "hyperbolic", "trig", "elliptic",
                                               "invcosh"};

    // verify -----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->fallthrough();
    std::string suite;
    verify->add_option("suite", suite, "commute|funceq|equivariance|gauge|group|all")
        ->required()
        ->check(CLI::IsMember({"commute", "funceq", "equivariance", "gauge", "group", "all"}));
    VerifyOptions vo;
    std::string v_coupling = "symbolic";
    double v_tol = 0.0;
    std::string v_format = "text";
    std::string v_out;
    std::vector<std::string> v_ops = {"Q1", "P2"};
    verify->add_option("--ops", v_ops, "operator pair for the sampled commutator check")
        ->delimiter(',')
        ->expected(2)
        ->check(CLI::IsMember(catalog_names()));
    verify->add_option("--family", vo.family, "potential family")
        ->check(CLI::IsMember(families))
        ->capture_default_str();
    verify->add_option("--a", vo.a, "elliptic scale")->capture_default_str();
    verify->add_option("--kappa", vo.kappa, "elliptic modulus parameter")
        ->capture_default_str();
    verify->add_option("--k", v_coupling, "coupling value, or 'symbolic' for the sweep")
        ->capture_default_str();
    verify->add_option("--trials", vo.trials, "samples per numeric check")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--seed", vo.seed, "base sampling seed")->capture_default_str();
    verify->add_option("--tol", v_tol, "override the per-check tolerance");
    verify->add_option("--box", vo.box, "sampling box half-width")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--jobs", vo.jobs, "worker threads for sampling")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--format", v_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    verify->add_option("--out", v_out, "write the report to this file");

    // show -------------------------------------------------------------------
    auto* show = app.add_subcommand("show", "print a catalog operator");
    show->fallthrough();
    std::string show_name;
    std::string show_coupling = "symbolic";
    std::string show_format = "text";
    std::string show_out;
    {
        std::string names;
        for (const auto& n : catalog_names()) names += (names.empty() ? "" : "|") + n;
        show->add_option("name", show_name, names)
            ->required()
            ->check(CLI::IsMember(catalog_names()));
    }
    show->add_option("--k", show_coupling, "substitute a coupling value, or 'symbolic'")
        ->capture_default_str();
    show->add_option("--format", show_format, "text|json|latex")
        ->check(CLI::IsMember({"text", "json", "latex"}))
        ->capture_default_str();
    show->add_option("--out", show_out, "write to this file");

    // eval -------------------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "evaluate an operator symbol at a point");
    eval->fallthrough();
    std::string eval_name;
    std::vector<double> point;
    std::vector<double> lambda = {1.0, 0.0, 0.0};
    std::string eval_family = "hyperbolic";
    double eval_a = 1.0;
    double eval_kappa = 0.5;
    std::string eval_coupling = "1";
    bool on_shell = false;
    std::string eval_format = "text";
    std::string eval_out;
    eval->add_option("name", eval_name, "catalog operator")
        ->required()
        ->check(CLI::IsMember(catalog_names()));
    eval->add_option("--point", point, "evaluation point t1,t2,t3")
        ->required()
        ->delimiter(',')
        ->expected(3);
    eval->add_option("--lambda", lambda, "spectral vector l1,l2,l3")
        ->delimiter(',')
        ->expected(3)
        ->capture_default_str();
    eval->add_flag("--on-shell", on_shell,
                   "restrict to l1+l2+l3=0: derives l3 when given as 0, rejects an "
                   "inconsistent nonzero l3");
    eval->add_option("--family", eval_family, "potential family")
        ->check(CLI::IsMember(families))
        ->capture_default_str();
    eval->add_option("--a", eval_a, "elliptic scale")->capture_default_str();
    eval->add_option("--kappa", eval_kappa, "elliptic modulus parameter")
        ->capture_default_str();
    eval->add_option("--k", eval_coupling, "coupling value")->capture_default_str();
    eval->add_option("--format", eval_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    eval->add_option("--out", eval_out, "write to this file");

    try {
        std::vector<const char*> argv;
        argv.push_back("a2ops");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), const_cast<char**>(argv.data()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            vo.coupling = parse_coupling(v_coupling);
            if (verify->count("--tol")) vo.tolerance = v_tol;
            vo.ops = {v_ops[0], v_ops[1]};
            VerificationReport rep;
            if (suite == "commute")
                rep = check_commutativity(vo);
            else if (suite == "funceq")
                rep = check_functional_equation(vo);
            else if (suite == "equivariance")
                rep = check_equivariance(vo);
            else if (suite == "gauge")
                rep = check_gauge(vo);
            else if (suite == "group")
                rep = check_group_consistency(vo);
            else
                rep = run_all(vo);
            const std::string content = v_format == "json" ? rep.json() : rep.text();
            const int rc = emit(content, v_out, out, err);
            if (rc != 0) return rc;
            return rep.all_passed() ? 0 : 1;
        }
        if (show->parsed()) {
            MatDiffOp op = build_catalog(show_name);
            if (const auto k = parse_coupling(show_coupling))
                op = op.substitute_param(Param::K, *k);
            std::string content;
            if (show_format == "json")
                content = op_json(show_name, op);
            else if (show_format == "latex")
                content = op_latex(op);
            else
                content = op_text(op);
            return emit(content, show_out, out, err);
        }
        if (eval->parsed()) {
            MatDiffOp op = build_catalog(eval_name);
            const auto k = parse_coupling(eval_coupling);
            if (!k) throw DomainError("eval requires a numeric coupling value");
            op = op.substitute_param(Param::K, *k);
            const PotentialBackend backend =
                PotentialBackend::from_name(eval_family, eval_a, eval_kappa);
            const Vec3 t{point[0], point[1], point[2]};
            if (on_shell) {
                const double want = -(lambda[0] + lambda[1]);
                if (lambda[2] != 0.0 && std::fabs(lambda[2] - want) > 1e-9)
                    throw ConstraintError("on-shell evaluation requires l3 = -(l1+l2)");
                lambda[2] = want;
            }
            const CVec3 lam{std::complex<double>(lambda[0]), std::complex<double>(lambda[1]),
                            std::complex<double>(lambda[2])};
            const CMat3 s = full_symbol(op, backend, t, lam);
            const std::string content =
                eval_format == "json" ? symbol_json(s) : symbol_text(s);
            return emit(content, eval_out, out, err);
        }
    } catch (const SamplingExhaustedError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const SingularPointError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace a2ops
