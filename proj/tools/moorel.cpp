// Command-line front end: exact special values L(1-n, S/p), their
// denominator-versus-homotopy-order verification, Euler products, the
// functional-equation and congruence checks, and coprimality probabilities.
//
// Exit codes: 0 all checks pass, 1 mathematical mismatch, 2 usage error.
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "moorel/moorel.hpp"

namespace {

void add_cache_and_threads(CLI::App* cmd, moorel::CommandOptions& o) {
    cmd->add_option("--cache-path", o.cache_path,
                    "optional JSON cache of generalized Bernoulli numbers");
    cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 64u));
}

}  // namespace

int main(int argc, char** argv) {
    moorel::CommandOptions o;
    CLI::App app{
        "moorel: exact special values L(1-n, S/p) of the Moore-spectrum L-function,\n"
        "their identification with KU-local stable homotopy orders, and the\n"
        "associated Euler-product, congruence, and probability checks"};
    app.require_subcommand(1);

    CLI::App* values = app.add_subcommand(
        "values", "table of exact L(1-n, S/p) for n = 1..n-max with factored numerators");
    values->add_option("--p", o.p, "odd prime p")->capture_default_str();
    values->add_option("--n-max", o.n_max, "largest n")->check(CLI::PositiveNumber)->capture_default_str();
    values->add_option("--factor-bound", o.factor_bound, "trial-division bound for numerators")
        ->capture_default_str();
    add_cache_and_threads(values, o);

    CLI::App* verify = app.add_subcommand(
        "verify", "check denominator(L(1-n, S/p)) against the homotopy orders for n = 1..n-max");
    verify->add_option("--p", o.p, "odd prime p")->capture_default_str();
    verify->add_option("--n-max", o.n_max, "largest n")->check(CLI::PositiveNumber)->capture_default_str();
    add_cache_and_threads(verify, o);

    CLI::App* euler = app.add_subcommand("euler",
                                         "truncated Euler product for L(s, S/p) at real s > 1");
    euler->add_option("--p", o.p, "odd prime p")->capture_default_str();
    euler->add_option("--s", o.s, "real argument s > 1")->capture_default_str();
    euler->add_option("--prime-bound", o.prime_bound, "include primes up to this bound")
        ->capture_default_str();

    CLI::App* functional = app.add_subcommand(
        "functional", "compare the Euler product at s = n with the reflected exact value at 1-n");
    functional->add_option("--p", o.p, "odd prime p")->capture_default_str();
    o.n = 2;
    functional->add_option("--n", o.n, "even weight n >= 2")->capture_default_str();
    functional->add_option("--prime-bound", o.prime_bound, "Euler-product truncation")
        ->capture_default_str();
    functional->add_option("--tol", o.tol, "relative tolerance")->capture_default_str();

    CLI::App* probability = app.add_subcommand(
        "probability",
        "coprimality probability 1/((1-p^{-2}) zeta(2) L(2, S/p)) with optional Monte Carlo");
    probability->add_option("--p", o.p, "odd prime p")->capture_default_str();
    probability->add_option("--prime-bound", o.prime_bound, "Euler-product truncation")
        ->capture_default_str();
    probability->add_option("--samples", o.samples, "Monte Carlo samples (0 = skip)")
        ->capture_default_str();
    probability->add_option("--range", o.range, "sample integers uniformly from [1, range]")
        ->capture_default_str();
    probability->add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();
    add_cache_and_threads(probability, o);

    CLI::App* congruence = app.add_subcommand(
        "congruence", "Carlitz congruences for n = 1..n-max and p-adic convergence up to j-max");
    congruence->add_option("--p", o.p, "odd prime p")->capture_default_str();
    congruence->add_option("--n-max", o.n_max, "largest n for the congruence sweep")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    congruence->add_option("--j-max", o.j_max, "largest j for the convergence table")
        ->capture_default_str();
    add_cache_and_threads(congruence, o);

    CLI::App* homotopy = app.add_subcommand(
        "homotopy", "order of the n-th KU-local stable homotopy group of the mod-p Moore spectrum");
    homotopy->add_option("--p", o.p, "odd prime p")->capture_default_str();
    o.n = 4;
    homotopy->add_option("--n", o.n, "degree (any integer)")->capture_default_str();
    homotopy->add_option("--j-max", o.j_max, "report degrees 2(p-1)p^j - 1 up to this j")
        ->capture_default_str();

    for (CLI::App* cmd : {values, verify, euler, functional, probability, congruence, homotopy})
        cmd->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"table", "json"}))
            ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit cleanly; everything else is usage
    }

    try {
        moorel::ReportDocument doc;
        if (app.got_subcommand(values)) doc = moorel::cmd_values(o);
        else if (app.got_subcommand(verify)) doc = moorel::cmd_verify(o);
        else if (app.got_subcommand(euler)) doc = moorel::cmd_euler(o);
        else if (app.got_subcommand(functional)) doc = moorel::cmd_functional(o);
        else if (app.got_subcommand(probability)) doc = moorel::cmd_probability(o);
        else if (app.got_subcommand(congruence)) doc = moorel::cmd_congruence(o);
        else doc = moorel::cmd_homotopy(o);
        std::cout << doc.render(o.format);
        return doc.pass ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
