// Reporting layer: trial-division factorizations and their rendering, report
// documents in table and JSON form, timestamps, and the on-disk cache of
// generalized Bernoulli numbers.
#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "moorel/commands.hpp"

using namespace moorel;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

// display width of the prefix before the first " | " separator
std::size_t first_column_width(const std::string& line) {
    const std::size_t cut = line.find(" | ");
    std::size_t w = 0;
    for (std::size_t i = 0; i < cut && i < line.size(); ++i)
        if ((static_cast<unsigned char>(line[i]) & 0xC0) != 0x80) ++w;
    return w;
}

}  // namespace

TEST_CASE("trial-division factorization") {
    const Factorization f1136 = factor_trial(Int(1136), 1000);
    REQUIRE(factor_string(f1136) == "2^4·71");
    REQUIRE(f1136.complete);
    REQUIRE(f1136.sign == 1);

    // the residual 1171 after removing 2^2, 7, 43 is below 100^2, hence prime
    REQUIRE(factor_string(factor_trial(Int(1409884), 100)) == "2^2·7·43·1171");

    REQUIRE(factor_string(factor_trial(Int(0), 100)) == "0");
    REQUIRE(factor_string(factor_trial(Int(1), 100)) == "1");
    REQUIRE(factor_string(factor_trial(Int(-12), 100)) == "-2^2·3");
    REQUIRE(factor_string(factor_trial(Int(97), 10)) == "97");

    // residual above bound^2: left as an explicit unfactored cofactor
    const Factorization partial = factor_trial(Int(2) * Int(101) * Int(103), 10);
    REQUIRE_FALSE(partial.complete);
    REQUIRE(partial.cofactor == Int(101 * 103));
    REQUIRE(factor_string(partial) == "2·10403");
    const Factorization negative = factor_trial(Int(-2) * Int(101) * Int(103), 10);
    REQUIRE(factor_string(negative) == "-2·10403");

    // boundary: a residual of exactly bound^2 cannot occur unless its root was
    // already divided out, so 13^2 factors at bound 13 but not at bound 12
    REQUIRE(factor_string(factor_trial(Int(169), 13)) == "13^2");
    REQUIRE_FALSE(factor_trial(Int(169), 12).complete);

    const nlohmann::json j = factorization_json(partial);
    REQUIRE(j["rendered"] == "2·10403");
    REQUIRE(j["sign"] == 1);
    REQUIRE(j["complete"] == false);
    REQUIRE(j["cofactor"] == "10403");
    REQUIRE(j["factors"].size() == 1);
    REQUIRE(j["factors"][0][0] == "2");
    REQUIRE(j["factors"][0][1] == 1);
}

TEST_CASE("timestamps are ISO 8601 UTC") {
    const std::regex iso(R"(^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z$)");
    REQUIRE(std::regex_match(iso8601_utc_now(), iso));
}

TEST_CASE("report documents round-trip through JSON") {
    ReportDocument doc;
    doc.command = "values";
    doc.parameters = {{"p", 3}, {"n_max", 2}};
    doc.rows.push_back({{"n", 2}, {"value", "4/3"}});
    doc.summary = {{"rows", 1}};
    doc.pass = false;

    const nlohmann::json parsed = nlohmann::json::parse(doc.render_json());
    REQUIRE(parsed == doc.to_json());
    REQUIRE(parsed["status"] == "fail");
    doc.pass = true;
    REQUIRE(doc.to_json()["status"] == "pass");
    REQUIRE(doc.to_json()["rows"][0]["value"] == "4/3");

    REQUIRE(doc.render("json") == doc.render_json());
    REQUIRE(doc.render("table") == doc.render_table());
    REQUIRE_THROWS_AS(doc.render("yaml"), std::invalid_argument);
}

TEST_CASE("table rendering aligns columns and never pads the last one") {
    ReportDocument doc;
    doc.command = "values";
    doc.parameters = {{"p", 3}};
    TableBlock block;
    block.title = "special values";
    block.headers = {"numerator", "denominator"};
    block.rows = {{"2^2·7·43·1171", "3"}, {"1", "1"}, {"2^2·199", "3"}};
    doc.tables.push_back(block);
    doc.notes.push_back("one note");

    const std::string text = doc.render_table();
    const auto lines = lines_of(text);
    REQUIRE(lines.front() == "# values p=3");
    REQUIRE(lines.back() == "status: PASS");
    for (const std::string& line : lines) {
        REQUIRE((line.empty() || line.back() != ' '));
        REQUIRE((line.empty() || line.back() != '\t'));
    }
    // a horizontal rule made of dashes and a column joint
    bool has_rule = false;
    for (const std::string& line : lines)
        if (line.find("-+-") != std::string::npos) has_rule = true;
    REQUIRE(has_rule);
    // every data/header line's first column has the same display width,
    // regardless of multi-byte characters in the cells
    std::vector<std::size_t> widths;
    for (const std::string& line : lines)
        if (line.find(" | ") != std::string::npos) widths.push_back(first_column_width(line));
    REQUIRE(widths.size() == 4);  // header + three rows
    for (std::size_t w : widths) REQUIRE(w == widths.front());
    // the note is carried through verbatim
    REQUIRE(text.find("one note\n") != std::string::npos);
}

TEST_CASE("cache keys parse strictly") {
    std::uint64_t p = 0, log_value = 0;
    unsigned n = 0;
    REQUIRE(detail::parse_cache_key("3:2:2", p, log_value, n));
    REQUIRE(p == 3);
    REQUIRE(log_value == 2);
    REQUIRE(n == 2);
    REQUIRE(detail::parse_cache_key("13:12:40", p, log_value, n));
    REQUIRE_FALSE(detail::parse_cache_key("", p, log_value, n));
    REQUIRE_FALSE(detail::parse_cache_key("3:2", p, log_value, n));
    REQUIRE_FALSE(detail::parse_cache_key("3:2:2:1", p, log_value, n));
    REQUIRE_FALSE(detail::parse_cache_key("a:1:2", p, log_value, n));
    REQUIRE_FALSE(detail::parse_cache_key("3:-1:2", p, log_value, n));
    REQUIRE_FALSE(detail::parse_cache_key("3:2:2 ", p, log_value, n));
    REQUIRE_FALSE(detail::parse_cache_key("1099511627777:0:1", p, log_value, n));
}

TEST_CASE("bernoulli cache saves, merges, and survives corruption") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "moorel-cache-test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string path = (dir / "cache.json").string();

    // populate the in-process memo, then persist it
    generalized_bernoulli(torsion_generator(3), 4);
    save_bernoulli_cache(path, {3});
    REQUIRE(fs::exists(path));
    REQUIRE_FALSE(fs::exists(path + ".tmp"));
    {
        std::ifstream in(path);
        const nlohmann::json doc = nlohmann::json::parse(in);
        REQUIRE(doc.is_object());
        REQUIRE(doc.contains("3:2:2"));
        REQUIRE(doc["3:2:2"] == nlohmann::json::array({"8/3", "4/3"}));
    }
    // loading re-validates every entry against a freshly built character
    REQUIRE(load_bernoulli_cache(path) >= 4);

    // saving another prime merges instead of clobbering
    generalized_bernoulli(torsion_generator(5), 2);
    save_bernoulli_cache(path, {5});
    {
        std::ifstream in(path);
        const nlohmann::json doc = nlohmann::json::parse(in);
        REQUIRE(doc.contains("3:2:2"));
        REQUIRE(doc.contains("5:4:2"));
    }

    // corrupt file: parse failure means zero entries, not an error
    const std::string broken = (dir / "broken.json").string();
    std::ofstream(broken) << "{ this is not json";
    REQUIRE(load_bernoulli_cache(broken) == 0);
    REQUIRE(load_bernoulli_cache((dir / "missing.json").string()) == 0);

    // an object with malformed members accepts only the well-formed one
    const std::string mixed = (dir / "mixed.json").string();
    std::ofstream(mixed) << R"({"4:1:2": ["1"], "oops": ["1"], "3:2:1": "notarray",
                               "3:2:9": ["wrong-shape"], "3:2:2": ["8/3", "4/3"]})";
    REQUIRE(load_bernoulli_cache(mixed) == 1);

    fs::remove_all(dir);
}
