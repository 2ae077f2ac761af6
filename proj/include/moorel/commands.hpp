#ifndef MOOREL_COMMANDS_HPP
#define MOOREL_COMMANDS_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "moorel/analytic.hpp"
#include "moorel/bernoulli.hpp"
#include "moorel/dirichlet.hpp"
#include "moorel/homotopy.hpp"
#include "moorel/lvalues.hpp"
#include "moorel/report.hpp"

namespace moorel {

/// Bag of CLI flags shared by the commands; each command reads the subset it
/// documents and ignores the rest.
struct CommandOptions {
    std::uint64_t p = 3;
    unsigned n_max = 8;
    long long n = 2;  // single degree / weight where a command takes one
    double s = 2.0;
    std::uint64_t prime_bound = 100000;
    double tol = 1e-4;
    std::string format = "table";
    std::uint64_t factor_bound = 100000;
    std::uint64_t samples = 0;  // 0 = skip the Monte Carlo row
    std::uint64_t range = 1000000;
    std::uint64_t seed = 1;
    unsigned j_max = 2;
    std::string cache_path;
    unsigned threads = 1;
};

// ---------------------------------------------------------------------------
// Generalized-Bernoulli disk cache: one JSON object mapping "p:logvalue:n" to
// the coefficient strings of B_n^chi at the character's value order. Purely an
// optimization: unreadable files and malformed or wrong-shape entries are
// skipped, and deleting the file never changes any result — everything is
// recomputed from scratch on a cold cache.
// ---------------------------------------------------------------------------

namespace detail {

inline bool parse_cache_key(const std::string& key, std::uint64_t& p, std::uint64_t& log_value,
                            unsigned& n) {
    std::uint64_t fields[3] = {0, 0, 0};
    int i = 0;
    for (std::size_t pos = 0; pos < key.size(); ++pos) {
        const char c = key[pos];
        if (c == ':') {
            if (++i > 2) return false;
        } else if (c >= '0' && c <= '9') {
            fields[i] = fields[i] * 10 + static_cast<std::uint64_t>(c - '0');
            if (fields[i] > (1ULL << 40)) return false;
        } else {
            return false;
        }
    }
    if (i != 2) return false;
    p = fields[0];
    log_value = fields[1];
    n = static_cast<unsigned>(fields[2]);
    return true;
}

}  // namespace detail

/// Loads cached generalized Bernoulli numbers; returns how many entries were
/// accepted. Missing or malformed files are treated as empty.
inline std::size_t load_bernoulli_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) return 0;
    const nlohmann::json doc = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (!doc.is_object()) return 0;
    std::size_t accepted = 0;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        std::uint64_t p = 0, log_value = 0;
        unsigned n = 0;
        if (!detail::parse_cache_key(it.key(), p, log_value, n)) continue;
        if (!it.value().is_array() || !is_odd_prime(p)) continue;
        try {
            const DirichletCharacter chi(p * p, log_value);
            const unsigned d = static_cast<unsigned>(chi.order());
            std::vector<Rational> coeffs;
            coeffs.reserve(it.value().size());
            for (const auto& entry : it.value()) {
                if (!entry.is_string()) throw std::invalid_argument("cache: non-string coefficient");
                coeffs.push_back(Rational::from_string(entry.get<std::string>()));
            }
            if (bernoulli_memo_insert(p * p, chi.log_value(), n, Cyclotomic(d, std::move(coeffs))))
                ++accepted;
        } catch (const std::exception&) {
            // skip the entry: the cache must never be able to break a run
        }
    }
    return accepted;
}

/// Writes every memoized entry for the square moduli of `primes` back to the
/// cache, merged over whatever the file already holds, atomically
/// (write-temp-then-rename).
inline void save_bernoulli_cache(const std::string& path, const std::set<std::uint64_t>& primes) {
    nlohmann::json doc = nlohmann::json::object();
    {
        std::ifstream in(path);
        if (in) {
            nlohmann::json existing = nlohmann::json::parse(in, nullptr, false);
            if (existing.is_object()) doc = std::move(existing);
        }
    }
    for (std::uint64_t p : primes) {
        if (!is_odd_prime(p)) continue;
        for (const auto& [modulus, log_value, n, value] : bernoulli_memo_entries(p * p)) {
            std::ostringstream key;
            key << p << ':' << log_value << ':' << n;
            nlohmann::json coeffs = nlohmann::json::array();
            for (const Rational& c : value.coefficients()) coeffs.push_back(c.to_string());
            doc[key.str()] = std::move(coeffs);
        }
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) return;  // cache is optional; failure to persist is not an error
        out << doc.dump(1) << '\n';
    }
    std::rename(tmp.c_str(), path.c_str());
}

namespace detail {

inline std::string fmt_double(double x, int precision = 12) {
    std::ostringstream os;
    os << std::setprecision(precision) << x;
    return os.str();
}

inline std::string fmt_fixed(double x, int places) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(places) << x;
    return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands. Each returns a ReportDocument whose `pass` already reflects the
// mathematical outcome; the CLI maps it to the exit status.
// ---------------------------------------------------------------------------

/// Table of exact special values L(1-n, S/p) for n = 1..n_max, numerators
/// factored by trial division up to factor_bound.
inline ReportDocument cmd_values(const CommandOptions& o) {
    if (o.n_max < 1) throw std::invalid_argument("values: n-max must be positive");
    ReportDocument doc;
    doc.command = "values";
    doc.parameters = {{"p", o.p}, {"n_max", o.n_max}, {"factor_bound", o.factor_bound}};
    if (!o.cache_path.empty()) load_bernoulli_cache(o.cache_path);
    generalized_bernoulli(torsion_generator(o.p), o.n_max);  // one series pass for all rows

    TableBlock block;
    block.headers = {"n", "1-n", "L(1-n,S/p)", "numerator", "denominator"};
    for (unsigned n = 1; n <= o.n_max; ++n) {
        const Rational value = moore_L_special(o.p, 1 - static_cast<long>(n));
        const Factorization fact = factor_trial(value.numerator(), o.factor_bound);
        block.rows.push_back({std::to_string(n), std::to_string(1 - static_cast<long long>(n)),
                              value.to_string(), factor_string(fact),
                              value.denominator().get_str()});
        doc.rows.push_back({{"n", n},
                            {"argument", 1 - static_cast<long long>(n)},
                            {"value", value.to_string()},
                            {"numerator", value.numerator().get_str()},
                            {"denominator", value.denominator().get_str()},
                            {"numerator_factorization", factorization_json(fact)}});
    }
    doc.tables.push_back(std::move(block));
    if (!o.cache_path.empty()) save_bernoulli_cache(o.cache_path, {o.p});
    return doc;
}

/// Denominator-versus-homotopy-order verification for n = 1..n_max.
inline ReportDocument cmd_verify(const CommandOptions& o) {
    ReportDocument doc;
    doc.command = "verify";
    doc.parameters = {{"p", o.p}, {"n_max", o.n_max}, {"threads", o.threads}};
    if (!o.cache_path.empty()) load_bernoulli_cache(o.cache_path);
    const VerifyReport report = verify_main_theorem(o.p, o.n_max, o.threads);

    TableBlock block;
    block.headers = {"n", "L(1-n,S/p)", "denominator", "|pi_2n|", "|pi_2n-1|", "match"};
    for (const SpecialValueRecord& rec : report.rows) {
        block.rows.push_back({std::to_string(rec.n), rec.value.to_string(),
                              rec.denominator.get_str(), std::to_string(rec.order_pi_2n),
                              std::to_string(rec.order_pi_2n_minus_1),
                              rec.matches ? "yes" : "NO"});
        doc.rows.push_back({{"n", rec.n},
                            {"value", rec.value.to_string()},
                            {"numerator", rec.numerator.get_str()},
                            {"denominator", rec.denominator.get_str()},
                            {"order_pi_2n", rec.order_pi_2n},
                            {"order_pi_2n_minus_1", rec.order_pi_2n_minus_1},
                            {"matches", rec.matches}});
    }
    doc.tables.push_back(std::move(block));
    doc.pass = report.pass;
    if (!report.pass) {
        doc.summary["failure"] = report.failure;
        doc.notes.push_back(report.failure);
    }
    if (!o.cache_path.empty()) save_bernoulli_cache(o.cache_path, {o.p});
    return doc;
}

/// Truncated Euler product for L(s, S/p) over primes up to prime_bound.
inline ReportDocument cmd_euler(const CommandOptions& o) {
    ReportDocument doc;
    doc.command = "euler";
    doc.parameters = {{"p", o.p}, {"s", o.s}, {"prime_bound", o.prime_bound}};
    const RealApprox value = euler_L_moore(o.s, o.p, o.prime_bound);
    std::size_t split = 0, inert = 0;
    for (std::uint64_t ell : sieve_primes(o.prime_bound)) {
        if (ell == o.p) continue;
        (classify_prime(ell, o.p).cls == PrimeClass::split ? split : inert) += 1;
    }
    TableBlock block;
    block.headers = {"s", "L(s,S/p)", "error_bound", "split primes", "inert primes"};
    block.rows.push_back({detail::fmt_double(o.s, 6), detail::fmt_double(value.value),
                          detail::fmt_double(value.error_bound, 3), std::to_string(split),
                          std::to_string(inert)});
    doc.tables.push_back(std::move(block));
    doc.summary = {{"value", value.value},
                   {"error_bound", value.error_bound},
                   {"split_primes", split},
                   {"inert_primes", inert}};
    doc.rows.push_back(doc.summary);
    return doc;
}

/// Functional-equation consistency check at even weight n.
inline ReportDocument cmd_functional(const CommandOptions& o) {
    if (o.n < 2 || o.n > 1000)
        throw std::invalid_argument("functional: n must be an even weight in [2, 1000]");
    ReportDocument doc;
    doc.command = "functional";
    doc.parameters = {
        {"p", o.p}, {"n", o.n}, {"prime_bound", o.prime_bound}, {"tol", o.tol}};
    const FunctionalEquationReport rep = functional_equation_check(
        o.p, static_cast<unsigned>(o.n), o.prime_bound, o.tol);

    TableBlock block;
    block.headers = {"side", "value"};
    block.rows.push_back({"Euler product L(n,S/p)", detail::fmt_double(rep.lhs)});
    block.rows.push_back({"reflected |L(1-n,S/p)|", detail::fmt_double(rep.rhs)});
    block.rows.push_back({"|difference|", detail::fmt_double(std::fabs(rep.lhs - rep.rhs), 3)});
    block.rows.push_back({"allowed", detail::fmt_double(o.tol * std::fabs(rep.rhs) + rep.lhs_error, 3)});
    doc.tables.push_back(std::move(block));
    doc.summary = {{"lhs", rep.lhs},
                   {"lhs_error_bound", rep.lhs_error},
                   {"rhs", rep.rhs},
                   {"reflection_factor", rep.factor},
                   {"exact_value", rep.exact_value.to_string()},
                   {"tolerance", rep.tolerance}};
    doc.rows.push_back(doc.summary);
    doc.pass = rep.pass;
    return doc;
}

/// Coprimality probability 1/((1 - p^{-2}) zeta(2) L(2, S/p)): Euler-product
/// route, the p = 3 closed form, and an optional Monte Carlo estimate.
inline ReportDocument cmd_probability(const CommandOptions& o) {
    ReportDocument doc;
    doc.command = "probability";
    doc.parameters = {{"p", o.p},       {"prime_bound", o.prime_bound}, {"samples", o.samples},
                      {"range", o.range}, {"seed", o.seed},             {"threads", o.threads}};
    const ProbabilityResult prob = coprimality_probability(o.p, o.prime_bound);

    TableBlock block;
    block.headers = {"method", "value", "error"};
    block.rows.push_back({"euler product", detail::fmt_fixed(prob.value, 9),
                          detail::fmt_double(prob.error_bound, 3)});
    doc.rows.push_back({{"method", "euler_product"},
                        {"value", prob.value},
                        {"error_bound", prob.error_bound}});
    doc.summary["euler_product"] = prob.value;
    doc.pass = true;
    if (prob.closed_form) {
        block.rows.push_back({"closed form 59049/(64·π^6)",
                              detail::fmt_fixed(*prob.closed_form, 9), "exact"});
        doc.rows.push_back({{"method", "closed_form"},
                            {"expression", "59049/(64·π^6)"},
                            {"value", *prob.closed_form}});
        doc.summary["closed_form"] = *prob.closed_form;
        doc.pass = doc.pass && prob.closed_form_agrees &&
                   std::fabs(*prob.closed_form - prob.value) < 1e-4;
    }
    if (o.samples > 0) {
        const MonteCarloResult mc =
            monte_carlo_probability(o.p, o.samples, o.range, o.seed, o.threads);
        block.rows.push_back(
            {"monte carlo", detail::fmt_fixed(mc.frequency, 9), detail::fmt_double(mc.std_error, 3)});
        doc.rows.push_back({{"method", "monte_carlo"},
                            {"value", mc.frequency},
                            {"std_error", mc.std_error},
                            {"hits", mc.hits},
                            {"samples", mc.samples},
                            {"range", mc.range},
                            {"seed", mc.seed}});
        doc.summary["monte_carlo"] = mc.frequency;
        doc.summary["monte_carlo_std_error"] = mc.std_error;
        doc.pass = doc.pass && std::fabs(mc.frequency - prob.value) <=
                                   4.0 * mc.std_error + prob.error_bound;
        doc.notes.push_back("monte carlo: sampled range [1, " + std::to_string(o.range) +
                            "]; finite-range bias is reported, not corrected");
    }
    doc.tables.push_back(std::move(block));
    return doc;
}

/// Congruence families: the Carlitz-style checks for n = 1..n_max and the
/// p-adic convergence table for j = 0..j_max.
inline ReportDocument cmd_congruence(const CommandOptions& o) {
    ReportDocument doc;
    doc.command = "congruence";
    doc.parameters = {{"p", o.p}, {"n_max", o.n_max}, {"j_max", o.j_max}};
    if (!o.cache_path.empty()) load_bernoulli_cache(o.cache_path);
    doc.pass = true;

    TableBlock carlitz;
    carlitz.title = "Carlitz congruences (checked against L(1-n, S/p))";
    carlitz.headers = {"n", "branch", "nu_p(L)", "lambda-valuation / integrality", "result"};
    for (unsigned n = 1; n <= o.n_max; ++n) {
        const CarlitzReport rep = carlitz_check(o.p, n);
        std::string middle = rep.divisibility_branch
                                 ? "nu_lambda((1-chi(1+p))^{p-1} pL) = " + rep.lambda_val.to_string()
                                 : std::string(rep.integral ? "integral" : "NOT integral");
        carlitz.rows.push_back({std::to_string(n),
                                rep.divisibility_branch ? "(p-1) | n" : "(p-1) coprime",
                                rep.p_valuation.to_string(), std::move(middle),
                                rep.pass ? "pass" : "FAIL"});
        nlohmann::json row = {{"kind", "carlitz"},
                              {"n", n},
                              {"divisibility_branch", rep.divisibility_branch},
                              {"value", rep.value.to_string()},
                              {"nu_p", rep.p_valuation.to_string()},
                              {"pass", rep.pass}};
        if (rep.divisibility_branch) {
            row["ideal_residues"] = rep.ideal_residues;
            row["unit_residues"] = rep.unit_residues;
            row["aggregate_residue"] = rep.aggregate_residue;
            row["lambda_valuation"] = rep.lambda_val.to_string();
        } else {
            row["integral"] = rep.integral;
        }
        if (!rep.pass) row["detail"] = rep.detail;
        doc.rows.push_back(std::move(row));
        doc.pass = doc.pass && rep.pass;
    }
    doc.tables.push_back(std::move(carlitz));

    const ConvergenceReport conv = padic_convergence_check(o.p, o.j_max);
    TableBlock table;
    table.title = "p-adic convergence of a_j = -n_j (1-p^{n_j-1}) zeta(1-n_j) and c_j = L(1-n_j, S/p)";
    table.headers = {"j", "n_j", "a_j", "c_j", "nu_p(c_j)", "nu_p(a_j - a_{j-1})", "nu_p(c_j - c_{j-1})"};
    for (std::size_t j = 0; j < conv.rows.size(); ++j) {
        const ConvergenceRow& row = conv.rows[j];
        table.rows.push_back({std::to_string(row.j), std::to_string(row.n_j), row.a.to_string(),
                              row.c.to_string(), row.c_valuation.to_string(),
                              j == 0 ? "-" : conv.a_diff_valuations[j - 1].to_string(),
                              j == 0 ? "-" : conv.c_diff_valuations[j - 1].to_string()});
        nlohmann::json jrow = {{"kind", "convergence"},
                               {"j", row.j},
                               {"n_j", row.n_j},
                               {"a", row.a.to_string()},
                               {"c", row.c.to_string()},
                               {"nu_p_c", row.c_valuation.to_string()}};
        if (j > 0) {
            jrow["nu_p_a_diff"] = conv.a_diff_valuations[j - 1].to_string();
            jrow["nu_p_c_diff"] = conv.c_diff_valuations[j - 1].to_string();
        }
        doc.rows.push_back(std::move(jrow));
    }
    doc.tables.push_back(std::move(table));
    doc.summary = {{"a_strictly_increasing", conv.a_strictly_increasing},
                   {"c_strictly_increasing", conv.c_strictly_increasing},
                   {"c_valuation_constant", conv.c_valuation_constant}};
    if (!conv.pass) doc.notes.push_back(conv.detail);
    doc.pass = doc.pass && conv.pass;
    if (!o.cache_path.empty()) save_bernoulli_cache(o.cache_path, {o.p});
    return doc;
}

/// Homotopy-order oracle: the order in one degree plus the periodic pattern.
inline ReportDocument cmd_homotopy(const CommandOptions& o) {
    ReportDocument doc;
    doc.command = "homotopy";
    doc.parameters = {{"p", o.p}, {"n", o.n}, {"j_max", o.j_max}};
    const HomotopyPattern pattern = homotopy_pattern(o.p);
    const std::uint64_t order = homotopy_order(o.p, o.n);

    TableBlock block;
    block.headers = {"degree", "|pi_n(L_KU S/p)|"};
    block.rows.push_back({std::to_string(o.n), std::to_string(order)});
    doc.tables.push_back(std::move(block));
    doc.rows.push_back({{"degree", o.n}, {"order", order}});
    doc.summary = {{"period", pattern.period},
                   {"alpha1_degree", pattern.alpha1_degree},
                   {"v1_degree", pattern.v1_degree},
                   {"periodicity_witness", periodicity_witness(o.p, o.n, 8)}};
    const auto seq = leopoldt_sequence(o.p, o.j_max);
    doc.summary["orders_in_degrees_2(p-1)p^j-1"] = seq;
    std::ostringstream note;
    note << "degrees 2(p-1)p^j - 1, j = 0.." << o.j_max << ": order " << o.p
         << " throughout (all finite)";
    doc.notes.push_back(note.str());
    return doc;
}

}  // namespace moorel

#endif  // MOOREL_COMMANDS_HPP
