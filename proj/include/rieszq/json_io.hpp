// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "rieszq/pairs.hpp"
#include "rieszq/search.hpp"
#include "rieszq/tiling.hpp"

namespace rieszq {

// Hand-assembled JSON with fixed key order and 12-significant-digit numbers,
// so identical inputs produce byte-identical output. Infinities print as the
// string "inf".

std::string format_number(double v);  // %.12g, "inf"/"-inf" as bare words
std::string json_number(double v);    // "inf" quoted inside JSON
std::string json_element(const Element& x);
std::string json_subset(const std::vector<Element>& subset);

std::string report_to_json(const TightnessReport& r);
std::string search_result_to_json(const SearchResult& r);
std::string analysis_to_json(const MultiTileAnalysis& a);
std::string certificate_to_json(const MainBoundCertificate& c);

}  // namespace rieszq
