// SPDX-License-Identifier: Apache-2.0
// rieszq: tightness quantities of exponential systems on finite abelian
// groups. Subcommands: quantities, search, tiling, verify, examples.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rieszq/group.hpp"
#include "rieszq/json_io.hpp"
#include "rieszq/pairs.hpp"
#include "rieszq/search.hpp"
#include "rieszq/tiling.hpp"
#include "rieszq/verify.hpp"

namespace {

using namespace rieszq;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitCapExceeded = 3;

std::string read_subset_argument(const std::string& arg) {
    if (std::filesystem::exists(arg) && std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    return arg;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    // "3,5,7" or "2..4"
    std::vector<std::int64_t> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        std::int64_t lo = std::stoll(text.substr(0, dots));
        std::int64_t hi = std::stoll(text.substr(dots + 2));
        for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoll(item));
    }
    if (out.empty()) throw parse_error("empty integer list: " + text);
    return out;
}

struct CommonOptions {
    std::string group;
    std::string format = "json";
    std::uint64_t seed = 0;
    std::uint64_t cap = 10'000'000;
    std::int64_t subgroup_cap = 64;
    int threads = 0;
    double tol = -1.0;  // spectral-detection override when >= 0
    bool prune = false;
};

SearchOptions make_search_options(const CommonOptions& c) {
    SearchOptions o;
    o.cap = c.cap;
    o.threads = c.threads;
    o.seed = c.seed;
    o.coset_count_filter = c.prune;
    if (c.tol >= 0.0) o.tol.spectral = c.tol;
    return o;
}

Tolerances make_tolerances(const CommonOptions& c) {
    Tolerances t;
    if (c.tol >= 0.0) t.spectral = c.tol;
    return t;
}

void add_common(CLI::App* cmd, CommonOptions& c, bool with_group = true) {
    if (with_group) cmd->add_option("-g,--group", c.group, "group descriptor, e.g. Z4xZ2")->required();
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    cmd->add_option("--seed", c.seed, "seed for randomized strategies");
    cmd->add_option("--cap", c.cap, "search-space cap");
    cmd->add_option("--threads", c.threads, "worker threads (0 = all, 1 = serial)");
    cmd->add_option("--tol", c.tol, "spectral-detection tolerance override");
    cmd->add_option("--prune-coset-counts", c.prune,
                    "skip spectra that cannot be basis partners (see README)");
}

// --- report printing ---

void print_report(const TightnessReport& r, const CommonOptions& c) {
    if (c.format == "json") {
        std::string body = report_to_json(r);
        body.insert(body.size() - 1, ",\"seed\":" + std::to_string(c.seed));
        std::cout << body << "\n";
        return;
    }
    if (c.format == "csv") {
        std::cout << "field,value\n";
        std::cout << "n," << r.n << "\n";
        for (std::size_t i = 0; i < r.sigmas.size(); ++i)
            std::cout << "sigma" << i + 1 << "," << format_number(r.sigmas[i]) << "\n";
        std::cout << "L," << format_number(r.L) << "\nU," << format_number(r.U) << "\nrho,"
                  << format_number(r.rho) << "\nD," << format_number(r.D) << "\nLtil,"
                  << format_number(r.normalized.L) << "\nUtil," << format_number(r.normalized.U)
                  << "\nrhotil," << format_number(r.normalized.rho) << "\nDtil,"
                  << format_number(r.normalized.D) << "\nis_basis," << (r.is_basis ? 1 : 0)
                  << "\nis_spectral," << (r.is_spectral ? 1 : 0) << "\nseed," << c.seed << "\n";
        return;
    }
    std::cout << "n            = " << r.n << "\n";
    std::cout << "sigmas       =";
    for (double s : r.sigmas) std::cout << ' ' << format_number(s);
    std::cout << "\n";
    std::cout << "L            = " << format_number(r.L) << "\n";
    std::cout << "U            = " << format_number(r.U) << "\n";
    std::cout << "rho          = " << format_number(r.rho) << "\n";
    std::cout << "D            = " << format_number(r.D) << "\n";
    std::cout << "Ltil         = " << format_number(r.normalized.L) << "\n";
    std::cout << "Util         = " << format_number(r.normalized.U) << "\n";
    std::cout << "rhotil       = " << format_number(r.normalized.rho) << "\n";
    std::cout << "Dtil         = " << format_number(r.normalized.D) << "\n";
    std::cout << "is_basis     = " << (r.is_basis ? "true" : "false") << "\n";
    std::cout << "is_spectral  = " << (r.is_spectral ? "true" : "false") << "\n";
    std::cout << "seed         = " << c.seed << "\n";
}

void print_search_result(const SearchResult& r, const CommonOptions& c) {
    if (c.format == "json") {
        std::string body = search_result_to_json(r);
        if (!r.seed) body.insert(body.size() - 1, ",\"seed\":" + std::to_string(c.seed));
        std::cout << body << "\n";
        return;
    }
    if (c.format == "csv") {
        std::cout << "field,value\n";
        std::cout << "quantity," << quantity_name(r.quantity) << "\n";
        std::cout << "value," << format_number(r.value) << "\n";
        std::cout << "witness,\"" << format_subset(r.witness) << "\"\n";
        std::cout << "strategy," << strategy_name(r.strategy) << "\n";
        std::cout << "seed," << (r.seed ? *r.seed : c.seed) << "\n";
        for (const auto& [name, value] : r.certificates)
            std::cout << "certificate_" << name << "," << format_number(value) << "\n";
        return;
    }
    std::cout << "quantity = " << quantity_name(r.quantity) << "\n";
    std::cout << "value    = " << format_number(r.value) << "\n";
    std::cout << "witness  = " << format_subset(r.witness) << "\n";
    std::cout << "strategy = " << strategy_name(r.strategy) << "\n";
    std::cout << "seed     = " << (r.seed ? *r.seed : c.seed) << "\n";
    for (const auto& [name, value] : r.certificates)
        std::cout << "bound " << name << " = " << format_number(value) << "\n";
}

// --- subcommands ---

int cmd_quantities(const CommonOptions& c, const std::string& e_text, const std::string& b_text,
                   bool set_mode, const std::string& quantity, const std::string& strategy) {
    GroupSpec g = GroupSpec::parse(c.group);
    std::vector<Element> e = validate_subset(g, parse_subset(g, read_subset_argument(e_text)));
    if (set_mode) {
        SearchResult r = set_quantity(
            g, e, quantity_from_name(quantity),
            strategy == "random-loop" ? Strategy::RandomLoop : Strategy::Exhaustive,
            make_search_options(c));
        print_search_result(r, c);
        return kExitOk;
    }
    if (b_text.empty()) throw parse_error("pair mode needs -B (or pass --set)");
    std::vector<Element> b = validate_subset(g, parse_subset(g, read_subset_argument(b_text)));
    print_report(tightness_report(SubsetPair(g, e, b), make_tolerances(c)), c);
    return kExitOk;
}

int cmd_tiling(const CommonOptions& c, const std::string& e_text, const std::string& h_text,
               bool certify) {
    GroupSpec g = GroupSpec::parse(c.group);
    std::vector<Element> e = validate_subset(g, parse_subset(g, read_subset_argument(e_text)));
    if (h_text.empty() && !certify) {
        auto list = find_multi_tiling_subgroups(g, e, c.subgroup_cap);
        if (c.format == "json") {
            std::cout << "[";
            for (std::size_t i = 0; i < list.size(); ++i) {
                if (i) std::cout << ',';
                std::cout << "{\"H\":" << json_subset(list[i].H.elements())
                          << ",\"level\":" << list[i].level << ",\"k\":" << list[i].distinct_count
                          << "}";
            }
            std::cout << "]\n";
        } else {
            std::cout << "H,level,k\n";
            for (const auto& entry : list)
                std::cout << '"' << format_subset(entry.H.elements()) << "\"," << entry.level << ','
                          << entry.distinct_count << "\n";
        }
        return kExitOk;
    }

    Subgroup h = h_text.empty()
                     ? [&] {
                           // pick the lowest-level multi-tiling subgroup beyond level 1
                           auto list = find_multi_tiling_subgroups(g, e, c.subgroup_cap);
                           for (const auto& entry : list)
                               if (entry.level > 1 && entry.H.order() < g.order()) return entry.H;
                           throw parse_error("no multi-tiling subgroup with level > 1; pass -H");
                       }()
                     : subgroup_closure(g, parse_subset(g, read_subset_argument(h_text)));
    MultiTileAnalysis a = multi_tile_analysis(g, e, h);
    if (!certify) {
        if (c.format == "json") {
            std::cout << analysis_to_json(a) << "\n";
        } else {
            std::cout << "coset_rep,elements,class\n";
            for (const CrossSection& s : a.sections)
                std::cout << '"' << format_element(s.coset_representative) << "\",\""
                          << format_subset(s.elements) << "\"," << s.class_index << "\n";
            std::cout << "level," << (a.level ? std::to_string(*a.level) : "null") << ",\n";
            std::cout << "k," << a.distinct_count << ",\n";
        }
        return kExitOk;
    }
    MainBoundCertificate cert = main_bound_certify(g, e, h, make_search_options(c));
    if (c.format == "json") {
        std::cout << "{\"analysis\":" << analysis_to_json(a)
                  << ",\"certification\":" << certificate_to_json(cert) << "}\n";
    } else {
        std::cout << "level = " << cert.level << "\nk = " << cert.distinct_count << "\n";
        if (!cert.found_simultaneous_basis) {
            std::cout << "simultaneous_basis = NONE\n" << cert.diagnostics << "\n";
        } else {
            std::cout << "B_H = " << format_subset(cert.b_h) << "\ns = " << cert.loop_s << "\n"
                      << "rho = " << format_number(cert.report.rho) << "\n";
            for (const auto& bound : cert.bounds)
                std::cout << bound.name << ": " << format_number(bound.lhs)
                          << (bound.holds ? " <= " : " > ") << format_number(bound.rhs) << "\n";
        }
    }
    return cert.found_simultaneous_basis || !certify ? kExitOk : kExitVerifyFailure;
}

int cmd_verify(const CommonOptions& c, const std::string& only_text, std::int64_t cases) {
    VerifyOptions o;
    o.seed = c.seed;
    o.threads = c.threads;
    o.random_cases = cases;
    if (!only_text.empty()) {
        std::stringstream ss(only_text);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) o.only.push_back(item);
    }
    auto results = run_verify_suite(o);
    std::int64_t failures = 0;
    if (c.format == "json") {
        std::cout << "{\"seed\":" << o.seed << ",\"checks\":[";
        for (std::size_t i = 0; i < results.size(); ++i) {
            const CheckResult& r = results[i];
            failures += r.failures;
            if (i) std::cout << ',';
            std::cout << "{\"name\":\"" << r.name << "\",\"cases\":" << r.cases
                      << ",\"failures\":" << r.failures
                      << ",\"worst_slack\":" << json_number(r.worst_slack) << "}";
        }
        std::cout << "],\"failures\":" << failures << "}\n";
    } else {
        if (c.format == "csv") std::cout << "check,cases,failures,worst_slack\n";
        for (const CheckResult& r : results) {
            failures += r.failures;
            if (c.format == "csv")
                std::cout << r.name << ',' << r.cases << ',' << r.failures << ','
                          << format_number(r.worst_slack) << "\n";
            else
                std::printf("%-26s cases=%-6lld failures=%-4lld worst_slack=%s\n", r.name.c_str(),
                            static_cast<long long>(r.cases), static_cast<long long>(r.failures),
                            format_number(r.worst_slack).c_str());
        }
        if (c.format == "table")
            std::cout << (failures == 0 ? "all checks passed\n" : "FAILURES PRESENT\n");
    }
    return failures == 0 ? kExitOk : kExitVerifyFailure;
}

void emit_rows(const CommonOptions& c, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    if (c.format == "json") {
        std::cout << "[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) std::cout << ',';
            std::cout << "{";
            for (std::size_t j = 0; j < header.size(); ++j) {
                if (j) std::cout << ',';
                std::cout << '"' << header[j] << "\":" << rows[i][j];
            }
            std::cout << "}";
        }
        std::cout << "]\n";
        return;
    }
    for (std::size_t j = 0; j < header.size(); ++j) std::cout << (j ? "," : "") << header[j];
    std::cout << "\n";
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? "," : "") << row[j];
        std::cout << "\n";
    }
}

int cmd_examples(const CommonOptions& c, const std::string& family, const std::string& m_text,
                 const std::string& p_text, const std::string& family_group, std::int64_t size) {
    SearchOptions opts = make_search_options(c);
    std::vector<std::vector<std::string>> rows;
    if (family == "condtoinfty") {
        for (std::int64_t m : parse_int_list(m_text.empty() ? "2..4" : m_text)) {
            GroupSpec g({m, m});
            std::vector<Element> e;
            for (std::int64_t x = 0; x < m; ++x) e.push_back({x, 0});
            e.push_back({0, 1});
            SearchResult rho = set_quantity(g, e, Quantity::Rho, Strategy::Exhaustive, opts);
            rows.push_back({std::to_string(m), format_number(rho.value),
                            format_number((static_cast<double>(m) + 1.0) / 2.0)});
        }
        emit_rows(c, {"m", "rho", "lower_bound"}, rows);
        return kExitOk;
    }
    if (family == "cartclosespec") {
        for (std::int64_t p : parse_int_list(p_text.empty() ? "3,5,7,11" : p_text)) {
            GroupSpec g({p});
            SearchResult rho = set_quantity(g, {{0}, {1}}, Quantity::Rho, Strategy::Exhaustive, opts);
            rows.push_back({std::to_string(p), format_number(rho.value),
                            format_number((rho.value - 1.0) * static_cast<double>(p) / M_PI)});
        }
        emit_rows(c, {"p", "rho", "rho_minus_1_times_p_over_pi"}, rows);
        return kExitOk;
    }
    if (family == "multitile") {
        for (std::int64_t p : parse_int_list(p_text.empty() ? "3" : p_text)) {
            GroupSpec g({p, p});
            std::vector<Element> e;
            for (std::int64_t x : {0, 1})
                for (std::int64_t y = 1; y < p; ++y) e.push_back({x, y});
            e.push_back({1, 0});
            e.push_back({2, 0});
            std::sort(e.begin(), e.end());
            SearchResult rho = set_quantity(g, e, Quantity::Rho, Strategy::Exhaustive, opts);
            GroupSpec zp({p});
            SearchResult base =
                set_quantity(zp, {{0}, {1}}, Quantity::Rho, Strategy::Exhaustive, opts);
            rows.push_back(
                {std::to_string(p), format_number(rho.value), format_number(base.value)});
        }
        emit_rows(c, {"p", "rho", "rho_of_base_pair"}, rows);
        return kExitOk;
    }
    if (family == "q3family") {
        for (std::int64_t p : parse_int_list(p_text.empty() ? "3" : p_text)) {
            GroupSpec g({p, p});
            std::vector<Element> e;
            for (std::int64_t y = 0; y < p; ++y) e.push_back({0, y});
            e.push_back({1, 0});
            for (std::int64_t x = 1; x < p; ++x) e.push_back({x, x});
            std::sort(e.begin(), e.end());
            SearchResult rho = set_quantity(g, e, Quantity::Rho, Strategy::Exhaustive, opts);
            rows.push_back({std::to_string(p), format_number(rho.value)});
        }
        emit_rows(c, {"p", "rho"}, rows);
        return kExitOk;
    }
    if (family == "simulpairs") {
        GroupSpec g = GroupSpec::parse(family_group.empty() ? "Z2^2" : family_group);
        std::vector<std::vector<Element>> sets;
        std::vector<std::int32_t> comb(static_cast<std::size_t>(size));
        for (std::int64_t i = 0; i < size; ++i) comb[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
        bool more = g.order() >= size;
        while (more) {
            std::vector<Element> e;
            for (std::int32_t v : comb) e.push_back(g.element(v));
            sets.push_back(e);
            more = false;
            for (std::int64_t i = size - 1; i >= 0; --i)
                if (comb[static_cast<std::size_t>(i)] < static_cast<std::int32_t>(g.order() - size + i)) {
                    std::int32_t v = ++comb[static_cast<std::size_t>(i)];
                    for (std::int64_t j = i + 1; j < size; ++j)
                        comb[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(v + (j - i));
                    more = true;
                    break;
                }
        }
        std::int64_t pairs = 0, without = 0;
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                ++pairs;
                if (!simultaneous_basis(g, {sets[i], sets[j]}, opts).has_value()) ++without;
            }
        rows.push_back({std::to_string(pairs), std::to_string(without)});
        emit_rows(c, {"pairs", "pairs_without_simultaneous_basis"}, rows);
        return kExitOk;
    }
    throw parse_error("unknown example family: " + family);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tightness quantities of exponential systems on finite abelian groups"};
    app.require_subcommand(1);

    CommonOptions cq, cs, ct, cv, ce;
    std::string e_text, b_text, h_text, quantity = "rho", strategy = "exhaustive";
    bool set_mode = false, certify = false;
    std::string only_text, m_text, p_text, family, family_group;
    std::int64_t verify_cases = 200, family_size = 2;

    CLI::App* quantities = app.add_subcommand("quantities", "tightness report of a pair or set");
    add_common(quantities, cq);
    quantities->add_option("-E", e_text, "subset of the group (literal or file)")->required();
    quantities->add_option("-B", b_text, "spectrum subset (pair mode)");
    quantities->add_flag("--set", set_mode, "optimize over spectra instead of fixing -B");
    quantities->add_option("--q", quantity, "quantity for --set")
        ->check(CLI::IsMember({"L", "U", "rho", "D"}));
    quantities->add_option("--strategy", strategy, "search strategy for --set")
        ->check(CLI::IsMember({"exhaustive", "random-loop"}));

    CLI::App* search_cmd = app.add_subcommand("search", "optimize one quantity over spectra");
    add_common(search_cmd, cs);
    search_cmd->add_option("-E", e_text, "subset of the group (literal or file)")->required();
    search_cmd->add_option("--q", quantity, "quantity to optimize")->required()
        ->check(CLI::IsMember({"L", "U", "rho", "D"}));
    search_cmd->add_option("--strategy", strategy, "search strategy")
        ->check(CLI::IsMember({"exhaustive", "random-loop"}));

    CLI::App* tiling = app.add_subcommand("tiling", "multi-tiling analysis and certification");
    add_common(tiling, ct);
    tiling->add_option("-E", e_text, "subset of the group (literal or file)")->required();
    tiling->add_option("-H", h_text, "generators of the tiling subgroup");
    tiling->add_flag("--certify", certify, "run the level/complexity bound certification");
    tiling->add_option("--subgroup-cap", ct.subgroup_cap, "subgroup enumeration cap");

    CLI::App* verify = app.add_subcommand("verify", "run the property-check suite");
    add_common(verify, cv, /*with_group=*/false);
    verify->add_option("--only", only_text, "comma-separated check names");
    verify->add_option("-n,--cases", verify_cases, "randomized case count per check");

    CLI::App* examples = app.add_subcommand("examples", "reproduce the named families");
    add_common(examples, ce, /*with_group=*/false);
    examples->add_option("family", family, "condtoinfty|cartclosespec|multitile|q3family|simulpairs")
        ->required();
    examples->add_option("--m", m_text, "m values, e.g. 2..4");
    examples->add_option("--p", p_text, "p values, e.g. 3,5,7");
    examples->add_option("-g,--group", family_group, "group for simulpairs");
    examples->add_option("--size", family_size, "subset size for simulpairs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitParseError;
    }

    try {
        if (quantities->parsed())
            return cmd_quantities(cq, e_text, b_text, set_mode, quantity, strategy);
        if (search_cmd->parsed()) return cmd_quantities(cs, e_text, "", true, quantity, strategy);
        if (tiling->parsed()) return cmd_tiling(ct, e_text, h_text, certify);
        if (verify->parsed()) return cmd_verify(cv, only_text, verify_cases);
        if (examples->parsed())
            return cmd_examples(ce, family, m_text, p_text, family_group, family_size);
    } catch (const cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const sampling_exhausted& e) {
        std::cerr << "sampling budget exhausted: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitParseError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailure;
    }
    return kExitParseError;
}
