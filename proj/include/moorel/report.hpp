#ifndef MOOREL_REPORT_HPP
#define MOOREL_REPORT_HPP

#include <chrono>
#include <cstdint>
#include <ctime>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "moorel/numutil.hpp"
#include "moorel/rational.hpp"

namespace moorel {

/// Partial factorization by trial division: sign * prod(prime^exponent) * cofactor.
/// `complete` is false exactly when the cofactor exceeds 1 (its primality is
/// then unknown at the chosen bound).
struct Factorization {
    int sign = 1;
    std::vector<std::pair<Int, unsigned>> factors;  // ascending primes
    Int cofactor = Int(1);
    bool complete = true;
};

/// Trial division by every prime up to `bound`. A residual below bound^2 must
/// itself be prime and is kept as a proper factor; anything larger is left as
/// a flagged cofactor.
inline Factorization factor_trial(Int n, std::uint64_t bound) {
    Factorization out;
    if (n < 0) {
        out.sign = -1;
        n = -n;
    }
    if (n == 0) {
        out.cofactor = 0;
        return out;
    }
    for (std::uint64_t q : sieve_primes(bound)) {
        if (Int(q) * Int(q) > n) break;
        if (!mpz_divisible_ui_p(n.get_mpz_t(), q)) continue;
        unsigned e = 0;
        do {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
            ++e;
        } while (mpz_divisible_ui_p(n.get_mpz_t(), q));
        out.factors.emplace_back(Int(q), e);
    }
    if (n > 1) {
        if (n <= Int(bound) * Int(bound)) {
            out.factors.emplace_back(n, 1);
        } else {
            out.cofactor = n;
            out.complete = false;
        }
    }
    return out;
}

/// Renders "2^2·7·43·1171"; an unfactored cofactor C is appended as "·C".
inline std::string factor_string(const Factorization& f) {
    std::ostringstream os;
    if (f.sign < 0) os << '-';
    if (f.cofactor == 0) return "0";
    bool first = true;
    for (const auto& [prime, exponent] : f.factors) {
        if (!first) os << "·";
        first = false;
        os << prime.get_str();
        if (exponent > 1) os << '^' << exponent;
    }
    if (!f.complete) {
        if (!first) os << "·";
        first = false;
        os << f.cofactor.get_str();
    }
    if (first) os << '1';
    return os.str();
}

inline nlohmann::json factorization_json(const Factorization& f) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& [prime, exponent] : f.factors)
        factors.push_back({prime.get_str(), exponent});
    return {{"rendered", factor_string(f)},
            {"sign", f.sign},
            {"factors", std::move(factors)},
            {"cofactor", f.cofactor.get_str()},
            {"complete", f.complete}};
}

inline std::string iso8601_utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// One renderable table: a title, a header row, and string cells.
struct TableBlock {
    std::string title;
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

/// The output of one CLI command: machine-readable rows plus the same content
/// pre-laid-out as text tables. JSON round-trips losslessly; exact rationals
/// appear only as "num/den" strings.
struct ReportDocument {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    std::string timestamp = iso8601_utc_now();
    std::string version = "0.1.0";
    nlohmann::json rows = nlohmann::json::array();
    nlohmann::json summary = nlohmann::json::object();
    bool pass = true;

    std::vector<TableBlock> tables;
    std::vector<std::string> notes;

    nlohmann::json to_json() const {
        return {{"command", command}, {"parameters", parameters}, {"timestamp", timestamp},
                {"version", version}, {"rows", rows},             {"summary", summary},
                {"status", pass ? "pass" : "fail"}};
    }

    std::string render_json() const { return to_json().dump(2) + "\n"; }

    std::string render_table() const {
        std::ostringstream os;
        os << "# " << command;
        for (auto it = parameters.begin(); it != parameters.end(); ++it)
            os << ' ' << it.key() << '=' << (it.value().is_string() ? it.value().get<std::string>()
                                                                    : it.value().dump());
        os << '\n';
        for (const TableBlock& block : tables) {
            if (!block.title.empty()) os << '\n' << block.title << '\n';
            std::vector<std::size_t> width(block.headers.size());
            for (std::size_t c = 0; c < block.headers.size(); ++c) width[c] = cell_width(block.headers[c]);
            for (const auto& row : block.rows)
                for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
                    width[c] = std::max(width[c], cell_width(row[c]));
            print_row(os, block.headers, width);
            std::string rule;
            for (std::size_t c = 0; c < width.size(); ++c) {
                if (c) rule += "-+-";
                rule.append(width[c], '-');
            }
            os << rule << '\n';
            for (const auto& row : block.rows) print_row(os, row, width);
        }
        for (const std::string& note : notes) os << note << '\n';
        os << "status: " << (pass ? "PASS" : "FAIL") << '\n';
        return os.str();
    }

    std::string render(std::string_view format) const {
        if (format == "json") return render_json();
        if (format == "table") return render_table();
        throw std::invalid_argument("ReportDocument::render: format must be 'table' or 'json'");
    }

private:
    // column width in display characters (multi-byte UTF-8 sequences count once)
    static std::size_t cell_width(const std::string& s) {
        std::size_t w = 0;
        for (unsigned char ch : s)
            if ((ch & 0xC0) != 0x80) ++w;
        return w;
    }

    static void print_row(std::ostringstream& os, const std::vector<std::string>& cells,
                          const std::vector<std::size_t>& width) {
        for (std::size_t c = 0; c < width.size(); ++c) {
            if (c) os << " | ";
            const std::string& cell = c < cells.size() ? cells[c] : std::string();
            os << cell;
            if (c + 1 < width.size())  // no trailing whitespace after the last column
                for (std::size_t pad = cell_width(cell); pad < width[c]; ++pad) os << ' ';
        }
        os << '\n';
    }
};

}  // namespace moorel

#endif  // MOOREL_REPORT_HPP
