// SPDX-License-Identifier: Apache-2.0
#include "rieszq/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace rieszq {

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string json_number(double v) {
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    return format_number(v);
}

std::string json_element(const Element& x) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) os << ',';
        os << x[i];
    }
    os << ']';
    return os.str();
}

std::string json_subset(const std::vector<Element>& subset) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) os << ',';
        os << json_element(subset[i]);
    }
    os << ']';
    return os.str();
}

std::string report_to_json(const TightnessReport& r) {
    std::ostringstream os;
    os << "{\"n\":" << r.n << ",\"sigmas\":[";
    for (std::size_t i = 0; i < r.sigmas.size(); ++i) {
        if (i) os << ',';
        os << json_number(r.sigmas[i]);
    }
    os << "],\"L\":" << json_number(r.L) << ",\"U\":" << json_number(r.U)
       << ",\"rho\":" << json_number(r.rho) << ",\"D\":" << json_number(r.D)
       << ",\"normalized\":{\"L\":" << json_number(r.normalized.L)
       << ",\"U\":" << json_number(r.normalized.U)
       << ",\"rho\":" << json_number(r.normalized.rho)
       << ",\"D\":" << json_number(r.normalized.D) << "}"
       << ",\"is_basis\":" << (r.is_basis ? "true" : "false")
       << ",\"is_spectral\":" << (r.is_spectral ? "true" : "false") << "}";
    return os.str();
}

std::string search_result_to_json(const SearchResult& r) {
    std::ostringstream os;
    os << "{\"quantity\":\"" << quantity_name(r.quantity) << "\""
       << ",\"value\":" << json_number(r.value) << ",\"witness\":" << json_subset(r.witness)
       << ",\"strategy\":\"" << strategy_name(r.strategy) << "\"";
    if (r.seed) os << ",\"seed\":" << *r.seed;
    if (!r.certificates.empty()) {
        os << ",\"certificates\":{";
        for (std::size_t i = 0; i < r.certificates.size(); ++i) {
            if (i) os << ',';
            os << '"' << r.certificates[i].first << "\":" << json_number(r.certificates[i].second);
        }
        os << '}';
    }
    os << '}';
    return os.str();
}

std::string analysis_to_json(const MultiTileAnalysis& a) {
    std::ostringstream os;
    os << "{\"H\":" << json_subset(a.H.elements()) << ",\"level\":";
    if (a.level)
        os << *a.level;
    else
        os << "null";
    os << ",\"k\":" << a.distinct_count << ",\"sections\":[";
    for (std::size_t i = 0; i < a.sections.size(); ++i) {
        const CrossSection& s = a.sections[i];
        if (i) os << ',';
        os << "{\"coset_rep\":" << json_element(s.coset_representative)
           << ",\"elements\":" << json_subset(s.elements)
           << ",\"canonical\":" << json_subset(s.translated_canonical)
           << ",\"class\":" << s.class_index << "}";
    }
    os << "]}";
    return os.str();
}

std::string certificate_to_json(const MainBoundCertificate& c) {
    std::ostringstream os;
    os << "{\"level\":" << c.level << ",\"k\":" << c.distinct_count
       << ",\"simultaneous_basis\":";
    if (c.found_simultaneous_basis)
        os << json_subset(c.b_h);
    else
        os << "null";
    os << ",\"loop_s\":" << c.loop_s
       << ",\"distinct_product\":" << json_number(c.distinct_product)
       << ",\"full_product\":" << json_number(c.full_product);
    if (c.found_simultaneous_basis) {
        os << ",\"B\":" << json_subset(c.B) << ",\"report\":" << report_to_json(c.report)
           << ",\"bounds\":[";
        for (std::size_t i = 0; i < c.bounds.size(); ++i) {
            const InequalityCheck& b = c.bounds[i];
            if (i) os << ',';
            os << "{\"name\":\"" << b.name << "\",\"lhs\":" << json_number(b.lhs)
               << ",\"rhs\":" << json_number(b.rhs)
               << ",\"holds\":" << (b.holds ? "true" : "false") << "}";
        }
        os << ']';
    }
    os << ",\"diagnostics\":\"" << c.diagnostics << "\"}";
    return os.str();
}

}  // namespace rieszq
