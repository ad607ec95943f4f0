// SPDX-License-Identifier: Apache-2.0
#include "rieszq/group.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rieszq {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

std::int64_t mod_reduce(std::int64_t v, std::int64_t n) {
    std::int64_t r = v % n;
    return r < 0 ? r + n : r;
}

}  // namespace

GroupSpec::GroupSpec(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) throw parse_error("group needs at least one cyclic factor");
    order_ = 1;
    for (std::int64_t n : moduli_) {
        if (n < 1) throw parse_error("modulus must be >= 1");
        // keeps x*b*(M/n) within int64 in the exact phase arithmetic
        if (n > (1LL << 31) || order_ > (1LL << 31) / n)
            throw parse_error("group order too large");
        order_ *= n;
    }
}

GroupSpec GroupSpec::parse(const std::string& text) {
    std::vector<std::int64_t> moduli;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto read_int = [&]() -> std::int64_t {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) throw parse_error("expected integer in group descriptor: " + text);
        return std::stoll(text.substr(start, i - start));
    };
    while (true) {
        skip_ws();
        if (i >= text.size() || (text[i] != 'Z' && text[i] != 'z'))
            throw parse_error("expected 'Z' in group descriptor: " + text);
        ++i;
        std::int64_t m = read_int();
        std::int64_t power = 1;
        skip_ws();
        if (i < text.size() && text[i] == '^') {
            ++i;
            skip_ws();
            power = read_int();
            if (power < 1) throw parse_error("exponent must be >= 1 in: " + text);
        }
        for (std::int64_t p = 0; p < power; ++p) moduli.push_back(m);
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] != 'x' && text[i] != 'X')
            throw parse_error("expected 'x' between factors in: " + text);
        ++i;
    }
    return GroupSpec(std::move(moduli));
}

std::int64_t GroupSpec::exponent() const {
    std::int64_t m = 1;
    for (std::int64_t n : moduli_) m = lcm64(m, n);
    return m;
}

Element GroupSpec::element(std::int64_t index) const {
    if (index < 0 || index >= order_) throw std::out_of_range("element index out of range");
    Element x(moduli_.size());
    for (std::size_t i = moduli_.size(); i-- > 0;) {
        x[i] = index % moduli_[i];
        index /= moduli_[i];
    }
    return x;
}

std::int64_t GroupSpec::index_of(const Element& x) const {
    require_conformant(x);
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) idx = idx * moduli_[i] + x[i];
    return idx;
}

bool GroupSpec::is_zero(const Element& x) const {
    require_conformant(x);
    return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
}

Element GroupSpec::reduce(Element x) const {
    if (x.size() != moduli_.size()) throw std::invalid_argument("element rank mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod_reduce(x[i], moduli_[i]);
    return x;
}

Element GroupSpec::add(const Element& a, const Element& b) const {
    require_conformant(a);
    require_conformant(b);
    Element r(moduli_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_reduce(a[i] + b[i], moduli_[i]);
    return r;
}

Element GroupSpec::sub(const Element& a, const Element& b) const {
    require_conformant(a);
    require_conformant(b);
    Element r(moduli_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_reduce(a[i] - b[i], moduli_[i]);
    return r;
}

Element GroupSpec::negate(const Element& x) const {
    require_conformant(x);
    Element r(moduli_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_reduce(-x[i], moduli_[i]);
    return r;
}

Element GroupSpec::scale(std::int64_t k, const Element& x) const {
    require_conformant(x);
    Element r(moduli_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_reduce(k % moduli_[i] * x[i], moduli_[i]);
    return r;
}

std::int64_t GroupSpec::element_order(const Element& x) const {
    require_conformant(x);
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < moduli_.size(); ++i)
        ord = lcm64(ord, moduli_[i] / std::gcd(x[i], moduli_[i]));
    return ord;
}

void GroupSpec::require_conformant(const Element& x) const {
    if (x.size() != moduli_.size()) throw std::invalid_argument("element rank mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < 0 || x[i] >= moduli_[i]) throw std::invalid_argument("coordinate out of range");
}

std::string GroupSpec::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        if (i) os << 'x';
        os << 'Z' << moduli_[i];
    }
    return os.str();
}

std::int64_t totient(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("totient needs m >= 1");
    std::int64_t result = m;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

std::complex<double> unit_root(std::int64_t num, std::int64_t den) {
    num = mod_reduce(num, den);
    // Exact values on the axes keep downstream integer identities clean.
    if (num == 0) return {1.0, 0.0};
    if (2 * num == den) return {-1.0, 0.0};
    if (4 * num == den) return {0.0, 1.0};
    if (4 * num == 3 * den) return {0.0, -1.0};
    double t = kTwoPi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(t), std::sin(t)};
}

std::int64_t character_phase(const GroupSpec& g, const Element& b, const Element& x) {
    g.require_conformant(b);
    g.require_conformant(x);
    const std::int64_t m = g.exponent();
    std::int64_t p = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::int64_t ni = g.moduli()[i];
        p = mod_reduce(p + x[i] * b[i] % ni * (m / ni), m);
    }
    return p;
}

std::complex<double> character_value(const GroupSpec& g, const Element& b, const Element& x) {
    return unit_root(character_phase(g, b, x), g.exponent());
}

CharacterTable::CharacterTable(const GroupSpec& g) : group_(g), n_(g.order()) {
    const std::int64_t m = g.exponent();
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(m));
    for (std::int64_t r = 0; r < m; ++r) roots[static_cast<std::size_t>(r)] = unit_root(r, m);
    std::vector<Element> elems(static_cast<std::size_t>(n_));
    for (std::int64_t i = 0; i < n_; ++i) elems[static_cast<std::size_t>(i)] = g.element(i);
    values_.resize(static_cast<std::size_t>(n_ * n_));
    phases_.resize(static_cast<std::size_t>(n_ * n_));
    for (std::int64_t x = 0; x < n_; ++x) {
        for (std::int64_t b = 0; b < n_; ++b) {
            std::int64_t p = character_phase(g, elems[static_cast<std::size_t>(b)],
                                             elems[static_cast<std::size_t>(x)]);
            phases_[static_cast<std::size_t>(x * n_ + b)] = p;
            values_[static_cast<std::size_t>(x * n_ + b)] = roots[static_cast<std::size_t>(p)];
        }
    }
}

Subgroup::Subgroup(GroupSpec parent, std::vector<Element> elements, std::vector<Element> generators)
    : parent_(std::move(parent)), elements_(std::move(elements)), generators_(std::move(generators)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    indices_.reserve(elements_.size());
    for (const Element& e : elements_) indices_.push_back(parent_.index_of(e));
    if (elements_.empty() || !parent_.is_zero(elements_.front()))
        throw std::invalid_argument("subgroup must contain zero");
}

bool Subgroup::contains(const Element& x) const {
    std::int64_t idx = parent_.index_of(x);
    return std::binary_search(indices_.begin(), indices_.end(), idx);
}

std::int64_t Subgroup::exponent() const {
    std::int64_t m = 1;
    for (const Element& e : elements_) m = std::lcm(m, parent_.element_order(e));
    return m;
}

bool Subgroup::is_cyclic() const { return exponent() == order(); }

Subgroup subgroup_closure(const GroupSpec& g, const std::vector<Element>& generators) {
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    std::vector<std::int64_t> queue;
    seen[static_cast<std::size_t>(g.index_of(g.zero()))] = 1;
    queue.push_back(g.index_of(g.zero()));
    // Additive closure alone suffices: -x = (ord(x)-1)x is reached.
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Element x = g.element(queue[head]);
        for (const Element& gen : generators) {
            std::int64_t idx = g.index_of(g.add(x, gen));
            if (!seen[static_cast<std::size_t>(idx)]) {
                seen[static_cast<std::size_t>(idx)] = 1;
                queue.push_back(idx);
            }
        }
    }
    std::vector<Element> elems;
    elems.reserve(queue.size());
    std::sort(queue.begin(), queue.end());
    for (std::int64_t idx : queue) elems.push_back(g.element(idx));
    return Subgroup(g, std::move(elems), generators);
}

std::vector<Subgroup> enumerate_subgroups(const GroupSpec& g, std::int64_t cap) {
    if (g.order() > cap)
        throw cap_exceeded("group order " + std::to_string(g.order()) +
                           " exceeds subgroup enumeration cap " + std::to_string(cap));
    std::set<std::vector<std::int64_t>> seen;
    std::vector<std::pair<Subgroup, std::vector<Element>>> found;  // subgroup + its generator set
    Subgroup trivial = subgroup_closure(g, {});
    seen.insert(trivial.element_indices());
    found.emplace_back(trivial, std::vector<Element>{});
    for (std::size_t head = 0; head < found.size(); ++head) {
        const std::vector<std::int64_t> base_indices = found[head].first.element_indices();
        const std::vector<Element> base_gens = found[head].second;
        for (std::int64_t idx = 0; idx < g.order(); ++idx) {
            if (std::binary_search(base_indices.begin(), base_indices.end(), idx)) continue;
            std::vector<Element> gens = base_gens;
            gens.push_back(g.element(idx));
            Subgroup bigger = subgroup_closure(g, gens);
            if (seen.insert(bigger.element_indices()).second)
                found.emplace_back(std::move(bigger), std::move(gens));
        }
    }
    std::vector<Subgroup> result;
    result.reserve(found.size());
    for (auto& entry : found) result.push_back(std::move(entry.first));
    std::sort(result.begin(), result.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.element_indices() < b.element_indices();
    });
    return result;
}

std::vector<Coset> cosets(const GroupSpec& g, const Subgroup& h) {
    if (h.parent() != g) throw std::invalid_argument("subgroup belongs to a different group");
    std::vector<char> assigned(static_cast<std::size_t>(g.order()), 0);
    std::vector<Coset> result;
    for (std::int64_t idx = 0; idx < g.order(); ++idx) {
        if (assigned[static_cast<std::size_t>(idx)]) continue;
        Element rep = g.element(idx);
        Coset c;
        c.representative = rep;
        for (const Element& e : h.elements()) {
            Element member = g.add(rep, e);
            assigned[static_cast<std::size_t>(g.index_of(member))] = 1;
            c.elements.push_back(std::move(member));
        }
        std::sort(c.elements.begin(), c.elements.end());
        result.push_back(std::move(c));
    }
    return result;  // reps appear in increasing index order by construction
}

Subgroup annihilator(const GroupSpec& g, const Subgroup& h) {
    if (h.parent() != g) throw std::invalid_argument("subgroup belongs to a different group");
    const std::vector<Element>& test =
        h.generators().empty() ? h.elements() : h.generators();
    std::vector<Element> ann;
    for (std::int64_t idx = 0; idx < g.order(); ++idx) {
        Element b = g.element(idx);
        bool ok = true;
        for (const Element& x : test) {
            if (character_phase(g, b, x) != 0) {
                ok = false;
                break;
            }
        }
        if (ok) ann.push_back(std::move(b));
    }
    return Subgroup(g, std::move(ann), {});
}

ZLinearMap::ZLinearMap(GroupSpec domain, GroupSpec codomain,
                       std::vector<std::vector<std::int64_t>> matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.size() != codomain_.rank())
        throw std::invalid_argument("matrix row count must equal codomain rank");
    for (std::size_t i = 0; i < matrix_.size(); ++i) {
        if (matrix_[i].size() != domain_.rank())
            throw std::invalid_argument("matrix column count must equal domain rank");
        for (std::size_t j = 0; j < matrix_[i].size(); ++j) {
            std::int64_t ni = codomain_.moduli()[i];
            std::int64_t nj = domain_.moduli()[j];
            if ((matrix_[i][j] % ni * (nj % ni)) % ni != 0)
                throw std::invalid_argument("matrix entry does not respect moduli divisibility");
            matrix_[i][j] = mod_reduce(matrix_[i][j], ni);
        }
    }
}

ZLinearMap ZLinearMap::identity(const GroupSpec& g) {
    std::vector<std::vector<std::int64_t>> m(g.rank(), std::vector<std::int64_t>(g.rank(), 0));
    for (std::size_t i = 0; i < g.rank(); ++i) m[i][i] = 1;
    return ZLinearMap(g, g, std::move(m));
}

ZLinearMap ZLinearMap::scaling(const GroupSpec& g, std::int64_t k) {
    std::vector<std::vector<std::int64_t>> m(g.rank(), std::vector<std::int64_t>(g.rank(), 0));
    for (std::size_t i = 0; i < g.rank(); ++i) m[i][i] = mod_reduce(k, g.moduli()[i]);
    return ZLinearMap(g, g, std::move(m));
}

Element ZLinearMap::apply(const Element& x) const {
    domain_.require_conformant(x);
    Element y(codomain_.rank());
    for (std::size_t i = 0; i < codomain_.rank(); ++i) {
        std::int64_t ni = codomain_.moduli()[i];
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < domain_.rank(); ++j)
            acc = mod_reduce(acc + matrix_[i][j] * (x[j] % ni), ni);
        y[i] = acc;
    }
    return y;
}

bool ZLinearMap::is_invertible() const {
    if (domain_.order() != codomain_.order()) return false;
    std::vector<char> hit(static_cast<std::size_t>(codomain_.order()), 0);
    for (std::int64_t idx = 0; idx < domain_.order(); ++idx) {
        std::int64_t img = codomain_.index_of(apply(domain_.element(idx)));
        if (hit[static_cast<std::size_t>(img)]) return false;
        hit[static_cast<std::size_t>(img)] = 1;
    }
    return true;
}

ZLinearMap ZLinearMap::inverse() const {
    if (domain_.order() != codomain_.order())
        throw std::invalid_argument("map between groups of different order is not invertible");
    std::vector<std::int64_t> preimage(static_cast<std::size_t>(codomain_.order()), -1);
    for (std::int64_t idx = 0; idx < domain_.order(); ++idx) {
        std::int64_t img = codomain_.index_of(apply(domain_.element(idx)));
        if (preimage[static_cast<std::size_t>(img)] != -1)
            throw std::invalid_argument("map is not invertible");
        preimage[static_cast<std::size_t>(img)] = idx;
    }
    // Columns of the inverse are preimages of the unit vectors.
    std::vector<std::vector<std::int64_t>> inv(domain_.rank(),
                                               std::vector<std::int64_t>(codomain_.rank(), 0));
    for (std::size_t j = 0; j < codomain_.rank(); ++j) {
        Element unit = codomain_.zero();
        unit[j] = codomain_.moduli()[j] == 1 ? 0 : 1;
        Element pre = domain_.element(preimage[static_cast<std::size_t>(codomain_.index_of(unit))]);
        for (std::size_t i = 0; i < domain_.rank(); ++i) inv[i][j] = pre[i];
    }
    return ZLinearMap(codomain_, domain_, std::move(inv));
}

ZLinearMap ZLinearMap::dual() const {
    // (A^t b)_j = sum_i a_ij * b_i * n_j/n_i  (mod n_j); integrality is the
    // well-definedness condition of A.
    std::vector<std::vector<std::int64_t>> t(domain_.rank(),
                                             std::vector<std::int64_t>(codomain_.rank(), 0));
    for (std::size_t j = 0; j < domain_.rank(); ++j) {
        std::int64_t nj = domain_.moduli()[j];
        for (std::size_t i = 0; i < codomain_.rank(); ++i) {
            std::int64_t ni = codomain_.moduli()[i];
            t[j][i] = mod_reduce(matrix_[i][j] * nj / ni, nj);
        }
    }
    return ZLinearMap(codomain_, domain_, std::move(t));
}

ZLinearMap ZLinearMap::inverse_dual() const { return inverse().dual(); }

TransformedPair affine_transform_pair(const GroupSpec& g, const std::vector<Element>& E,
                                      const std::vector<Element>& B, const ZLinearMap& a,
                                      const Element& t) {
    if (a.domain() != g || a.codomain() != g)
        throw std::invalid_argument("transform must act on the pair's group");
    if (!a.is_invertible()) throw std::invalid_argument("transform is not invertible");
    ZLinearMap adj = a.inverse_dual();
    TransformedPair out;
    out.E.reserve(E.size());
    out.B.reserve(B.size());
    for (const Element& x : E) out.E.push_back(g.add(a.apply(x), t));
    for (const Element& b : B) out.B.push_back(adj.apply(b));
    std::sort(out.E.begin(), out.E.end());
    std::sort(out.B.begin(), out.B.end());
    return out;
}

std::vector<Element> validate_subset(const GroupSpec& g, std::vector<Element> subset) {
    for (Element& x : subset) x = g.reduce(std::move(x));
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    return subset;
}

namespace {

std::vector<Element> parse_subset_json(const GroupSpec& g, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_array()) throw parse_error("subset JSON must be an array of integer arrays");
    std::vector<Element> out;
    for (const auto& item : j) {
        Element x;
        if (item.is_number_integer()) {
            x.push_back(item.get<std::int64_t>());
        } else if (item.is_array()) {
            for (const auto& v : item) {
                if (!v.is_number_integer()) throw parse_error("subset JSON coordinates must be integers");
                x.push_back(v.get<std::int64_t>());
            }
        } else {
            throw parse_error("subset JSON must be an array of integer arrays");
        }
        if (x.size() != g.rank()) throw parse_error("tuple rank does not match group");
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace

std::vector<Element> parse_subset(const GroupSpec& g, const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw parse_error("empty subset literal");
    if (text[first] == '[') {
        try {
            return parse_subset_json(g, text);
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("bad subset JSON: ") + e.what());
        }
    }
    std::vector<Element> out;
    std::size_t i = first;
    auto skip_ws = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '\n')) ++i;
    };
    auto read_int = [&]() -> std::int64_t {
        skip_ws();
        std::size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) throw parse_error("expected integer in subset literal: " + text);
        return std::stoll(text.substr(start, i - start));
    };
    while (true) {
        skip_ws();
        if (i >= text.size()) break;
        Element x;
        if (text[i] == '(') {
            ++i;
            while (true) {
                x.push_back(read_int());
                skip_ws();
                if (i < text.size() && text[i] == ',') {
                    ++i;
                    continue;
                }
                if (i < text.size() && text[i] == ')') {
                    ++i;
                    break;
                }
                throw parse_error("unterminated tuple in subset literal: " + text);
            }
        } else {
            if (g.rank() != 1) throw parse_error("bare integers are only allowed for rank-1 groups");
            x.push_back(read_int());
        }
        if (x.size() != g.rank()) throw parse_error("tuple rank does not match group");
        out.push_back(std::move(x));
        skip_ws();
        if (i < text.size() && (text[i] == ',' || text[i] == ';')) {
            ++i;
            continue;
        }
    }
    if (out.empty()) throw parse_error("empty subset literal");
    return out;
}

std::string format_element(const Element& x) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) os << ',';
        os << x[i];
    }
    os << ')';
    return os.str();
}

std::string format_subset(const std::vector<Element>& subset) {
    std::ostringstream os;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) os << ',';
        os << format_element(subset[i]);
    }
    return os.str();
}

}  // namespace rieszq
